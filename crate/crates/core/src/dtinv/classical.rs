//! The classical limit `L^½ ↦ 1`: Euler-specialized series, MacMahon
//! functions, and Gopakumar–Vafa invariants.
//!
//! For GV extraction the single variable of [`MotiveScalar`] is reused as
//! the formal variable `q` of the Euler-specialized PT series, so its
//! Adams operations `q ↦ q^n` are the right λ-structure.

use std::cell::RefCell;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use super::{mckay_grading, Convention, DtError, SQSeries};
use crate::coeff::json::bigint_to_json;
use crate::coeff::{LaurentPoly, MotiveScalar};
use crate::roots::{AffineRootSystem, StabilityMode};
use crate::series::{Grading, MSeries};

/// Coefficient-wise Euler specialization; coefficients of the result are
/// rational constants.
pub fn euler_limit(z: &SQSeries) -> Result<SQSeries, DtError> {
    let err = RefCell::new(None);
    let out = z.map_coeffs(|c| match c.euler_value() {
        Ok(r) => MotiveScalar::from_rational(&r),
        Err(e) => {
            err.borrow_mut().get_or_insert(e);
            MotiveScalar::zero()
        }
    });
    match err.into_inner() {
        Some(e) => Err(e.into()),
        None => Ok(out),
    }
}

/// `M(c·y^x, y^q) = ∏_{n≥1} (1 - c·y^{x + nq})^{-n}`, truncated; `x = None`
/// means `y^x = 1`.
pub fn macmahon(
    grading: &Grading,
    c: &MotiveScalar,
    x: Option<&[u32]>,
    q: &[u32],
) -> Result<MSeries, DtError> {
    let mut out = MSeries::one(grading);
    if c.is_zero() {
        return Ok(out);
    }
    let base: Vec<u32> = match x {
        Some(x) => x.to_vec(),
        None => vec![0; q.len()],
    };
    for n in 1u32.. {
        let e: Vec<u32> = base.iter().zip(q).map(|(a, b)| a + n * b).collect();
        if !grading.admits(&e) {
            break;
        }
        out = out.mul_geometric(c, &e, n as i64)?;
    }
    Ok(out)
}

/// The first `n_max + 1` coefficients of `M(q) = ∏ (1 - q^n)^{-n}`.
pub fn macmahon_coefficients(n_max: u32) -> Vec<BigInt> {
    let g = Grading::indexed(1, n_max);
    let m = macmahon(&g, &MotiveScalar::one(), None, &[1]).expect("one variable");
    (0..=n_max)
        .map(|n| {
            m.coeff(&[n])
                .as_laurent_polynomial()
                .map(|p| p.coeff(0))
                .unwrap_or_default()
        })
        .collect()
}

/// The Euler limit predicted for `mode` by MacMahon functions, in the
/// `Z(-q, Q)` convention: `∏_{β∈Δ°₊} M(Q^β, q)` for PT, times `M(q)^{l+1}`
/// for DT; NCDT takes `β` over all of `Δ°`.
pub fn macmahon_product(
    system: &AffineRootSystem,
    mode: StabilityMode,
    n_max: u32,
) -> Result<SQSeries, DtError> {
    let grading = mckay_grading(system, n_max);
    let delta = system.delta().entries().to_vec();
    let one = MotiveScalar::one();
    let mut betas: Vec<Vec<i64>> = system
        .finite_positive_roots()
        .iter()
        .map(|b| b.entries().iter().map(|&x| x as i64).collect())
        .collect();
    if mode == StabilityMode::Ncdt {
        let neg: Vec<Vec<i64>> = betas
            .iter()
            .map(|b| b.iter().map(|x| -x).collect())
            .collect();
        betas.extend(neg);
    }
    let mut out = MSeries::one(&grading);
    for n in 1..=n_max {
        let y = |beta: &[i64]| -> Vec<u32> {
            delta
                .iter()
                .zip(beta)
                .map(|(&d, &b)| (n as i64 * d as i64 - b) as u32)
                .collect()
        };
        for beta in &betas {
            out = out.mul_geometric(&one, &y(beta), n as i64)?;
        }
        if mode != StabilityMode::Pt {
            let e = (system.rank() as i64 + 1) * n as i64;
            out = out.mul_geometric(&one, &y(&vec![0; delta.len()]), e)?;
        }
    }
    Ok(SQSeries::new(
        out,
        delta,
        Some(system.tag()),
        Convention::MinusS,
    ))
}

/// `q/(1-q)²`: the generating function `Σ_{n≥1} n qⁿ` of the number of
/// factors in the Euler-specialized local factor of `nδ - β`.
fn factor_count_series() -> MotiveScalar {
    let one_minus_q = LaurentPoly::from_i64s(0, &[1, -1]);
    MotiveScalar::from_parts(LaurentPoly::from_i64s(1, &[1]), one_minus_q.pow(2))
}

/// `Z̄_PT(-q, Q)` as a series in `Q₁, …, Q_l` with coefficients exact
/// rational functions of `q`.
///
/// At `L^½ = 1` the local factor of a root `nδ - β` with `β ∈ Δ°₊` is
/// `(1 - qⁿQ^β)^{-n} = Exp(n qⁿ Q^β)`; summing over all `n ≥ 1` gives
/// `Exp(Σ_β q/(1-q)² Q^β)`, truncated at total `Q`-degree `q_degree`.
pub fn pt_euler_symbolic(system: &AffineRootSystem, q_degree: u32) -> Result<MSeries, DtError> {
    let l = system.rank();
    let grading = Grading::total_degree((1..=l).map(|i| format!("Q{i}")), q_degree)?;
    let level_one = system.stability_select(crate::roots::StabilityMode::Pt, 1);
    let terms = level_one.iter().map(|r| {
        let beta: Vec<u32> = r.beta.iter().skip(1).map(|&b| (-b) as u32).collect();
        (beta, factor_count_series())
    });
    Ok(MSeries::from_terms(&grading, terms)?.exp_lambda()?)
}

/// `n_{g,β}` keyed by `β`, as the list `[n_{0,β}, n_{1,β}, …]`; only `β`
/// with some nonzero invariant are stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GvTable {
    entries: BTreeMap<Vec<u32>, Vec<BigInt>>,
}

impl GvTable {
    pub fn get(&self, genus: usize, beta: &[u32]) -> BigInt {
        self.entries
            .get(beta)
            .and_then(|v| v.get(genus).cloned())
            .unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &Vec<BigInt>)> {
        self.entries.iter()
    }

    pub fn to_json(&self) -> Value {
        json!(self
            .entries
            .iter()
            .map(|(b, ns)| json!({
                "beta": b,
                "n": ns.iter().map(bigint_to_json).collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>())
    }
}

/// `t = 2 - q - q^{-1}`.
fn gv_t() -> LaurentPoly {
    LaurentPoly::from_i64s(-1, &[-1, 2, -1])
}

/// Reads `n_{g,β}` off `Exp(Σ_{g,β} t^{g-1} n_{g,β} Q^β)`.
pub fn gv_extract(z: &MSeries) -> Result<GvTable, DtError> {
    let log = z.log_lambda()?;
    let t = gv_t();
    let mut table = GvTable::default();
    for (beta, f) in log.terms() {
        let bad = || DtError::NotPolynomialInT(beta.to_vec());
        let tf = f * &MotiveScalar::from_poly(t.clone());
        let mut p = tf.as_laurent_polynomial().ok_or_else(bad)?.clone();
        let mut ns: Vec<BigInt> = Vec::new();
        // peel the top power: t^d = (-1)^d q^d + lower
        while !p.is_zero() {
            let d = p.highest();
            if d < 0 {
                return Err(bad());
            }
            let lead = p.coeff(d);
            let n = if d % 2 == 0 { lead } else { -lead };
            if ns.len() <= d as usize {
                ns.resize(d as usize + 1, BigInt::zero());
            }
            p = &p - &t.pow(d as u32).scale(&n);
            ns[d as usize] = n;
        }
        if ns.iter().any(|n| !n.is_zero()) {
            table.entries.insert(beta.to_vec(), ns);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dtinv::mckay_series;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn macmahon_expansions() {
        assert_eq!(macmahon_coefficients(5), ints(&[1, 1, 3, 6, 13, 24]));
        // M(x, q) = Exp(xq/(1-q)^2): coefficient of x¹ is q + 2q² + 3q³ + …
        let g = Grading::total_degree(["x", "q"], 5).unwrap();
        let m = macmahon(&g, &MotiveScalar::one(), Some(&[1, 0]), &[0, 1]).unwrap();
        for n in 1..=4u32 {
            assert_eq!(m.coeff(&[1, n]), MotiveScalar::from_int(n as i64));
        }
        let arg = MSeries::from_terms(
            &g,
            (1..=4).map(|n| (vec![1, n], MotiveScalar::from_int(n as i64))),
        )
        .unwrap();
        assert_eq!(arg.exp_lambda().unwrap(), m);
        assert_eq!(
            macmahon(&g, &MotiveScalar::zero(), Some(&[1, 0]), &[0, 1]).unwrap(),
            MSeries::one(&g)
        );
    }

    #[test]
    fn gv_of_single_curve_class() {
        let g = Grading::indexed(1, 3);
        // f = 1/(q + 1/q - 2) = q/(1-q)^2
        let z = MSeries::monomial(&g, &[1], factor_count_series())
            .unwrap()
            .exp_lambda()
            .unwrap();
        let table = gv_extract(&z).unwrap();
        assert_eq!(table.get(0, &[1]), BigInt::from(-1));
        assert_eq!(table.iter().count(), 1);
        assert!(gv_extract(&MSeries::one(&g))
            .unwrap()
            .iter()
            .next()
            .is_none());
        // genus one: t^0 n_1 = 1 ⇒ f = 1
        let z = MSeries::monomial(&g, &[1], MotiveScalar::one())
            .unwrap()
            .exp_lambda()
            .unwrap();
        assert_eq!(gv_extract(&z).unwrap().get(1, &[1]), BigInt::from(1));
        // 1/(1 - q) is not of GV form
        let bad = MotiveScalar::from_parts(LaurentPoly::one(), LaurentPoly::from_i64s(0, &[1, -1]));
        let z = MSeries::monomial(&g, &[1], bad)
            .unwrap()
            .exp_lambda()
            .unwrap();
        assert!(matches!(gv_extract(&z), Err(DtError::NotPolynomialInT(_))));
    }

    #[test]
    fn symbolic_matches_truncated_product() {
        for tag in ["A1~", "A2~"] {
            let sys = AffineRootSystem::from_type(tag).unwrap();
            let n_max = 4;
            let pt = euler_limit(&mckay_series(&sys, StabilityMode::Pt, n_max).unwrap()).unwrap();
            let sym = pt_euler_symbolic(&sys, 2 * n_max).unwrap();
            // expand each rational function of q to order n_max and compare
            for (n, qexp, c) in pt.sq_terms() {
                let beta: Vec<u32> = qexp.iter().map(|&b| b as u32).collect();
                let f = sym.coeff(&beta);
                assert_eq!(&series_coeff(&f, n), c, "{tag} s^{n} Q^{qexp:?}");
            }
        }
    }

    #[test]
    fn euler_limits_are_macmahon_products() {
        for tag in ["A1~", "A2~"] {
            let sys = AffineRootSystem::from_type(tag).unwrap();
            for mode in [StabilityMode::Pt, StabilityMode::Dt, StabilityMode::Ncdt] {
                let lim = euler_limit(&mckay_series(&sys, mode, 4).unwrap()).unwrap();
                assert_eq!(
                    lim,
                    macmahon_product(&sys, mode, 4).unwrap(),
                    "{tag} {mode}"
                );
            }
        }
    }

    /// Coefficient of `q^n` in the power-series expansion of a rational
    /// function of `q` with denominator constant term ±1.
    fn series_coeff(f: &MotiveScalar, n: u32) -> MotiveScalar {
        let num = f.numerator();
        let den = f.denominator();
        let d0 = den.coeff(0);
        let mut inv = vec![BigInt::zero(); n as usize + 1];
        inv[0] = BigInt::from(1) / &d0;
        for k in 1..=n as usize {
            let mut s = BigInt::zero();
            for j in 1..=k {
                s += den.coeff(j as i64) * &inv[k - j];
            }
            inv[k] = -s / &d0;
        }
        let mut c = BigInt::zero();
        for (e, a) in num.terms() {
            if e >= 0 && e as u32 <= n {
                c += a * &inv[(n as i64 - e) as usize];
            }
        }
        MotiveScalar::from_bigint(c)
    }
}
