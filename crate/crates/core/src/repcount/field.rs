//! Small finite fields by lookup table.
//!
//! Elements are `u8` indices `0..q`; for `q = p^k` an index encodes the
//! coefficient vector of a polynomial in `x` base `p`, reduced modulo a
//! fixed Conway polynomial.

use super::RepCountError;

/// Conway polynomials, coefficients ascending, monic leading term omitted.
const CONWAY: [(u32, u32, &[u32]); 3] = [(2, 2, &[1, 1]), (2, 3, &[1, 1, 0]), (3, 2, &[2, 2])];

const MAX_PRIME: u64 = 251;

#[derive(Clone, Debug)]
pub struct Fq {
    q: usize,
    p: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

impl Fq {
    pub fn new(q: u64) -> Result<Self, RepCountError> {
        let (p, k) = prime_power(q).ok_or(RepCountError::NotPrimePower(q))?;
        if k == 1 {
            if p > MAX_PRIME {
                return Err(RepCountError::UnsupportedFieldSize(q));
            }
            return Ok(Self::build(q as usize, p as usize, 1, &[]));
        }
        let modulus = CONWAY
            .iter()
            .find(|(pp, kk, _)| *pp as u64 == p && *kk == k)
            .ok_or(RepCountError::UnsupportedFieldSize(q))?
            .2;
        Ok(Self::build(q as usize, p as usize, k as usize, modulus))
    }

    fn build(q: usize, p: usize, k: usize, modulus: &[u32]) -> Self {
        let digits = |mut a: usize| -> Vec<usize> {
            (0..k)
                .map(|_| {
                    let d = a % p;
                    a /= p;
                    d
                })
                .collect()
        };
        let index = |ds: &[usize]| ds.iter().rev().fold(0, |acc, &d| acc * p + d);
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = index(&sum) as u8;
                // schoolbook product, then reduce x^k = -Σ m_i x^i
                let mut prod = vec![0usize; 2 * k];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (k..2 * k).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (i, &m) in modulus.iter().enumerate() {
                        let t = deg - k + i;
                        prod[t] = (prod[t] + (p - c) * m as usize) % p;
                    }
                }
                mul[a * q + b] = index(&prod[..k]) as u8;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).expect("field") as u8
                }
            })
            .collect();
        Fq {
            q,
            p,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn size(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Panics on zero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }

    /// The element `n · 1`.
    pub fn from_int(&self, n: i64) -> u8 {
        n.rem_euclid(self.p as i64) as u8
    }
}
