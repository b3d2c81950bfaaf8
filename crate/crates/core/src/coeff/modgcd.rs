//! Modular gcd of primitive integer polynomials.
//!
//! Gcds are taken modulo word-size primes and recombined by CRT until the
//! candidate stabilizes and divides both inputs. A prime not dividing the
//! gcd of the leading coefficients never underestimates the degree, so a
//! constant gcd modulo one such prime settles the common case at once.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::dense_div_exact;

/// Primes just below `2^31`, so products fit in `u64`.
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::new();
        let mut n: u64 = (1 << 31) - 1;
        while out.len() < 128 {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

/// Deterministic Miller–Rabin for `n < 2^32`.
fn is_prime(n: u64) -> bool {
    if n < 2 || n.is_multiple_of(2) {
        return n == 2;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    [2, 7, 61].iter().all(|&a| {
        if a % n == 0 {
            return true;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            return true;
        }
        (1..s).any(|_| {
            x = x * x % n;
            x == n - 1
        })
    })
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    if let Some(x) = c.to_i64() {
        return x.rem_euclid(p as i64) as u64;
    }
    let r = (c.magnitude() % p).to_u64().expect("residue fits");
    if c.is_negative() && r != 0 {
        p - r
    } else {
        r
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over `𝔽_p` of dense ascending polynomials.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a ← a mod b
        let db = b.len() - 1;
        let inv = inv_mod(b[db], p);
        while a.len() > db {
            let top = a.len() - 1;
            let f = a[top] * inv % p;
            if f != 0 {
                let shift = top - db;
                for (k, &bk) in b.iter().enumerate() {
                    a[shift + k] = (a[shift + k] + p - f * bk % p) % p;
                }
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lead) = a.last() {
        let inv = inv_mod(lead, p);
        for x in a.iter_mut() {
            *x = *x * inv % p;
        }
    }
    a
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

/// Gcd of two primitive polynomials of positive degree (dense ascending,
/// nonzero leading coefficients) together with the cofactors `a/g`, `b/g`.
/// The gcd is primitive with positive leading coefficient.
pub(super) fn primitive_gcd(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let h = a.last().expect("nonempty").gcd(b.last().expect("nonempty"));
    // a candidate is accepted once it divides both inputs; the quotients
    // are what callers need anyway
    let attempt = |cand: &[BigInt]| {
        let g = primitive(cand.to_vec());
        let qa = dense_div_exact(a, &g)?;
        let qb = dense_div_exact(b, &g)?;
        Some((g, qa, qb))
    };
    // (degree, modulus, image ≡ h·monic gcd, last symmetric candidate)
    let mut state: Option<(usize, BigInt, Vec<BigInt>, Vec<BigInt>)> = None;
    for &p in primes() {
        let hp = reduce(&h, p);
        if hp == 0 {
            continue;
        }
        let ap: Vec<u64> = a.iter().map(|c| reduce(c, p)).collect();
        let bp: Vec<u64> = b.iter().map(|c| reduce(c, p)).collect();
        let g = gcd_mod(ap, bp, p);
        let deg = g.len() - 1;
        if deg == 0 {
            return (vec![BigInt::one()], a.to_vec(), b.to_vec());
        }
        let image: Vec<u64> = g.iter().map(|&x| x * hp % p).collect();
        let pb = BigInt::from(p);
        match &mut state {
            Some((d, _, _, _)) if deg > *d => continue,
            Some((d, m, acc, last)) if deg == *d => {
                // CRT: x ≡ acc (mod m), x ≡ image (mod p)
                let minv = BigInt::from(inv_mod(reduce(m, p), p));
                for (x, &r) in acc.iter_mut().zip(&image) {
                    let diff = (BigInt::from(r) - &*x).mod_floor(&pb);
                    *x += &*m * ((diff * &minv).mod_floor(&pb));
                }
                *m *= &pb;
                let cand: Vec<BigInt> = acc.iter().map(|x| symmetric(x, m)).collect();
                if cand == *last {
                    if let Some(found) = attempt(&cand) {
                        return found;
                    }
                }
                *last = cand;
            }
            _ => {
                let acc: Vec<BigInt> = image.iter().map(|&x| BigInt::from(x)).collect();
                let last: Vec<BigInt> = acc.iter().map(|x| symmetric(x, &pb)).collect();
                // small gcds (the usual case) are already exact modulo one prime
                if let Some(found) = attempt(&last) {
                    return found;
                }
                state = Some((deg, pb, acc, last));
            }
        }
    }
    unreachable!("modular gcd did not stabilize within the prime table")
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let c = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !c.is_one() && !c.is_zero() {
        for x in v.iter_mut() {
            *x /= &c;
        }
    }
    if v.last().is_some_and(|x| x.is_negative()) {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn prime_table() {
        let naive = |n: u64| {
            n >= 2
                && (2..)
                    .take_while(|d| d * d <= n)
                    .all(|d| !n.is_multiple_of(d))
        };
        for n in 0..2000 {
            assert_eq!(is_prime(n), naive(n), "{n}");
        }
        assert!(primes().iter().all(|&p| naive(p)));
        assert_eq!(reduce(&BigInt::from(-1), 7), 6);
        assert_eq!(reduce(&-BigInt::from(7).pow(30u32), 7), 0);
        assert_eq!(reduce(&-(BigInt::from(7).pow(30u32) + BigInt::one()), 7), 6);
    }

    #[test]
    fn common_factor_recovered() {
        // (1 + v)(1 - 2v) and (1 + v)(3 + v^2)
        let a = big(&[1, -1, -2]);
        let b = big(&[3, 3, 1, 1]);
        assert_eq!(
            primitive_gcd(&a, &b),
            (big(&[1, 1]), big(&[1, -2]), big(&[3, 0, 1]))
        );
        assert_eq!(primitive_gcd(&big(&[1, 1]), &big(&[1, -1])).0, big(&[1]));
        // large coefficients: (7^20 + v)^2 and (7^20 + v)(1 - v)
        let c = BigInt::from(7).pow(20u32);
        let f = vec![&c * &c, &c + &c, BigInt::one()];
        let g = vec![c.clone(), BigInt::one() - &c, BigInt::from(-1)];
        assert_eq!(primitive_gcd(&f, &g).0, vec![c, BigInt::one()]);
    }
}
