//! Generating functions of motivic DT theory for loop-double quivers: the
//! universal series `A_U`, DT invariants `Ω_α`, framed series `Z_ζ`, McKay
//! products for PT/DT/NCDT, the Hilbert series `Z_Y`, Euler limits and
//! Gopakumar–Vafa invariants.

mod classical;
mod mckay;

pub use classical::{
    euler_limit, gv_extract, macmahon, macmahon_coefficients, macmahon_product, pt_euler_symbolic,
    GvTable,
};
pub use mckay::{
    hilbert_series_zy, local_factor, mckay_grading, mckay_series, Convention, SQSeries,
};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::coeff::{scalar_to_json, CoeffError, LaurentPoly, MotiveScalar};
use crate::quiver::DimVector;
use crate::repcount::KacTable;
use crate::roots::AffineRootSystem;
use crate::series::{Grading, MSeries, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DtError {
    #[error("Kac table has no entry for {0}")]
    MissingKacEntry(DimVector),
    #[error("stability is not generic: ζ·α = 0 for {0}")]
    NotGeneric(DimVector),
    #[error("coefficient of Q^{0:?} is not a polynomial in t = 2 - q - 1/q")]
    NotPolynomialInT(Vec<u32>),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// `1 - L^{-1}`.
pub fn one_minus_inverse_l() -> MotiveScalar {
    &MotiveScalar::one() - &MotiveScalar::v_pow(-2)
}

/// A polynomial in `q` evaluated at `q = L`.
pub fn at_lefschetz(p: &LaurentPoly) -> MotiveScalar {
    MotiveScalar::from_poly(p.substitute_power(2))
}

/// Truncation for `A_U` of an affine quiver up to `α₀ ≤ n_max`: weight on
/// the extending vertex only, caps `(n_max + 1)·δ_i` elsewhere, which
/// admits every root with `α₀ ≤ n_max`.
pub fn affine_grading(system: &AffineRootSystem, n_max: u32) -> Grading {
    let m = system.vertex_count();
    let mut weights = vec![0; m];
    weights[0] = 1;
    let caps = system
        .delta()
        .entries()
        .iter()
        .enumerate()
        .map(|(i, &d)| if i == 0 { n_max } else { (n_max + 1) * d })
        .collect();
    Grading::with_caps((0..m).map(|i| format!("y{i}")), weights, n_max, caps)
        .expect("affine gradings are valid")
}

/// `Ω_α`, absent entries are zero.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct OmegaTable {
    entries: BTreeMap<DimVector, MotiveScalar>,
}

impl OmegaTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `Ω_α = a_α(L)`.
    pub fn from_kac(kac: &KacTable) -> Self {
        let mut t = Self::new();
        for (a, p) in kac.entries() {
            t.insert(a.clone(), at_lefschetz(p));
        }
        t
    }

    pub fn insert(&mut self, alpha: DimVector, value: MotiveScalar) {
        if value.is_zero() {
            self.entries.remove(&alpha);
        } else {
            self.entries.insert(alpha, value);
        }
    }

    pub fn get(&self, alpha: &DimVector) -> MotiveScalar {
        self.entries.get(alpha).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DimVector, &MotiveScalar)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!(self
            .entries
            .iter()
            .map(|(a, c)| json!({"dim": a.entries(), "omega": scalar_to_json(c), "text": c.display_l()}))
            .collect::<Vec<_>>())
    }
}

/// `Σ_α a_α(L) y^α` over every nonzero exponent of the grading.
fn kac_generating_series(kac: &KacTable, grading: &Grading) -> Result<MSeries, DtError> {
    let mut terms = Vec::new();
    for e in grading.admitted_exponents() {
        if e.iter().all(|&x| x == 0) {
            continue;
        }
        let alpha = DimVector(e);
        let p = kac
            .lookup(&alpha)
            .ok_or_else(|| DtError::MissingKacEntry(alpha.clone()))?;
        if !p.is_zero() {
            terms.push((alpha.0, at_lefschetz(&p)));
        }
    }
    Ok(MSeries::from_terms(grading, terms)?)
}

/// `A_U = Exp(Σ_α a_α(L) y^α / (1 - L^{-1}))`.
pub fn universal_series(kac: &KacTable, grading: &Grading) -> Result<MSeries, DtError> {
    let inv = one_minus_inverse_l().inv().expect("nonzero");
    let arg = kac_generating_series(kac, grading)?.scale(&inv);
    Ok(arg.exp_lambda()?)
}

/// `A_U` as `∏_α Pow(Exp(y^α/(1 - L^{-1})), a_α(L))`.
pub fn universal_series_via_pow(kac: &KacTable, grading: &Grading) -> Result<MSeries, DtError> {
    let inv = one_minus_inverse_l().inv().expect("nonzero");
    let gen = kac_generating_series(kac, grading)?;
    let mut out = MSeries::one(grading);
    for (alpha, a) in gen.terms() {
        let base = MSeries::monomial(grading, alpha, inv.clone())?.exp_lambda()?;
        out = out.mul(&base.pow_structure(a)?)?;
    }
    Ok(out)
}

/// `Ω = (1 - L^{-1})·Log(A)`.
pub fn omega_extract(a: &MSeries) -> Result<OmegaTable, DtError> {
    let log = a.log_lambda()?;
    let factor = one_minus_inverse_l();
    let mut t = OmegaTable::new();
    for (e, c) in log.terms() {
        t.insert(DimVector(e.to_vec()), c * &factor);
    }
    Ok(t)
}

/// `Ω(-v)` is a Laurent polynomial with non-negative coefficients.
pub fn is_nonnegative(omega: &MotiveScalar) -> bool {
    omega
        .negate_variable()
        .as_laurent_polynomial()
        .is_some_and(|p| p.coeffs().iter().all(|c| !c.is_negative()))
}

fn dot_rational(zeta: &[BigRational], alpha: &[u32]) -> BigRational {
    zeta.iter()
        .zip(alpha)
        .map(|(z, &a)| z * BigRational::from_integer(BigInt::from(a)))
        .sum()
}

/// `Z_ζ = S_{-w} Exp(Σ_{ζ·α<0} (L^{w·α} - 1)/(1 - L^{-1}) · Ω_α y^α)`.
pub fn framed_series(
    omega: &OmegaTable,
    zeta: &[BigRational],
    w: &[i64],
    grading: &Grading,
) -> Result<MSeries, DtError> {
    let m = grading.nvars();
    for n in [zeta.len(), w.len()] {
        if n != m {
            return Err(SeriesError::Arity {
                expected: m,
                found: n,
            }
            .into());
        }
    }
    let denom = one_minus_inverse_l();
    let mut terms = Vec::new();
    for (alpha, om) in omega.iter() {
        if alpha.len() != m {
            return Err(SeriesError::Arity {
                expected: m,
                found: alpha.len(),
            }
            .into());
        }
        if !grading.admits(alpha.entries()) {
            continue;
        }
        let z = dot_rational(zeta, alpha.entries());
        if z.is_zero() {
            return Err(DtError::NotGeneric(alpha.clone()));
        }
        if z.is_negative() {
            let wa: i64 = w
                .iter()
                .zip(alpha.entries())
                .map(|(&x, &a)| x * a as i64)
                .sum();
            let num = &MotiveScalar::v_pow(2 * wa) - &MotiveScalar::one();
            terms.push((alpha.0.clone(), &(&num / &denom) * om));
        }
    }
    let arg = MSeries::from_terms(grading, terms)?;
    let neg_w: Vec<i64> = w.iter().map(|x| -x).collect();
    Ok(arg.exp_lambda()?.twist_sv(&neg_w)?)
}
