//! Denominators that factor into cyclotomic polynomials.
//!
//! Every denominator produced by the λ-ring calculus on series built from
//! factors `1 - Lⁿ` is `c·∏ Φ_k(v)^{m_k}`. In that form least common
//! multiples are exponent maxima and cancellation is trial division, so
//! long sums of fractions avoid polynomial gcds altogether.

use std::cell::RefCell;
use std::rc::Rc;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rustc_hash::FxHashMap;

use super::poly::LaurentPoly;

/// Largest `k` tried as a factor `Φ_k`.
const MAX_ORDER: usize = 128;

struct Table {
    /// `phi[k] = Φ_k(v)`, index 0 unused.
    phi: Vec<LaurentPoly>,
    /// A prime `p ≡ 1 (mod k)` and an element of order `k` modulo it.
    root: Vec<(u64, u64)>,
}

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut phi = vec![LaurentPoly::one()];
        let mut root = vec![(0, 0)];
        for k in 1..=MAX_ORDER {
            // v^k - 1 = ∏_{d | k} Φ_d
            let mut p = &LaurentPoly::monomial(BigInt::one(), k as i64) - &LaurentPoly::one();
            for (d, f) in phi.iter().enumerate().skip(1) {
                if k % d == 0 {
                    p = p.div_exact(f).expect("cyclotomic factor");
                }
            }
            phi.push(p);
            root.push(root_of_unity(k as u64));
        }
        Table { phi, root }
    })
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn root_of_unity(k: u64) -> (u64, u64) {
    let mut p = ((1u64 << 30) / k) * k + 1;
    while !is_prime(p) {
        p -= k;
    }
    let rs = prime_factors(k);
    for a in 2.. {
        let z = pow_mod(a, (p - 1) / k, p);
        if rs.iter().all(|r| pow_mod(z, k / r, p) != 1) {
            return (p, z);
        }
    }
    unreachable!()
}

/// `c·∏ Φ_k^{m_k}` with `c > 0`.
#[derive(Debug, PartialEq, Eq)]
pub(super) struct Factored {
    pub content: BigInt,
    pub exps: Vec<(usize, u32)>,
}

/// Value at `z` modulo `p` (the polynomial has lowest exponent 0).
fn eval_mod(poly: &LaurentPoly, z: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for c in poly.coeffs().iter().rev() {
        let cm = match c.to_i64() {
            Some(x) => x.rem_euclid(p as i64) as u64,
            None => c.mod_floor(&BigInt::from(p)).to_u64().expect("residue"),
        };
        acc = (acc * z + cm) % p;
    }
    acc
}

fn factor_uncached(den: &LaurentPoly) -> Option<Factored> {
    if den.lowest() != 0 || den.leading_coeff().is_none_or(|c| !c.is_positive()) {
        return None;
    }
    let t = table();
    let mut rest = den.clone();
    let mut exps = Vec::new();
    for k in 1..=MAX_ORDER {
        if rest.highest() == 0 {
            break;
        }
        let (p, z) = t.root[k];
        let mut m = 0;
        while rest.highest() > 0 && eval_mod(&rest, z, p) == 0 {
            match rest.div_exact(&t.phi[k]) {
                Some(q) => {
                    rest = q;
                    m += 1;
                }
                None => break,
            }
        }
        if m > 0 {
            exps.push((k, m));
        }
    }
    if rest.highest() != 0 {
        return None;
    }
    Some(Factored {
        content: rest.coeff(0),
        exps,
    })
}

thread_local! {
    static CACHE: RefCell<FxHashMap<LaurentPoly, Option<Rc<Factored>>>> = RefCell::new(FxHashMap::default());
}

/// Cyclotomic factorization of a canonical denominator, if it has one.
pub(super) fn factor(den: &LaurentPoly) -> Option<Rc<Factored>> {
    if let Some(hit) = CACHE.with(|c| c.borrow().get(den).cloned()) {
        return hit;
    }
    let f = factor_uncached(den).map(Rc::new);
    CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > 1 << 16 {
            c.clear();
        }
        c.insert(den.clone(), f.clone());
    });
    f
}

pub(super) fn phi(k: usize) -> &'static LaurentPoly {
    &table().phi[k]
}

/// `∏ Φ_k^{m_k}` (without content).
pub(super) fn expand(exps: &[(usize, u32)]) -> LaurentPoly {
    let mut out = LaurentPoly::one();
    for &(k, m) in exps {
        for _ in 0..m {
            out = &out * phi(k);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(0, c)
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(phi(1), &p(&[-1, 1]));
        assert_eq!(phi(2), &p(&[1, 1]));
        assert_eq!(phi(6), &p(&[1, -1, 1]));
        assert_eq!(phi(12), &p(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn factorization() {
        // 3(v^4 - 1)(v^2 - 1) = 3 Φ1² Φ2² Φ4
        let d = (&p(&[-1, 0, 0, 0, 1]) * &p(&[-1, 0, 1])).scale(&BigInt::from(3));
        let f = factor(&d).unwrap();
        assert_eq!(f.content, BigInt::from(3));
        assert_eq!(f.exps, vec![(1, 2), (2, 2), (4, 1)]);
        assert_eq!(expand(&f.exps).scale(&f.content), d);
        assert!(factor(&p(&[1, 1, 1, 1, 1, 1, 1, 0, 1])).is_none());
        assert!(factor(&p(&[2, 1])).is_none());
    }
}
