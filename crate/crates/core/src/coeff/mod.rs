//! Exact arithmetic in `ℚ(L^½)`: the coefficient ring of every series in
//! this crate.
//!
//! All values are rational functions in the single formal variable
//! `v = L^½`; a sign-twisted power `(-L^½)^k` is the monomial `(-1)^k v^k`.
//! Besides field arithmetic the module provides the Adams operations of the
//! λ-ring structure (`ψ_n : v ↦ v^n`), `q`-Pochhammer symbols, the motive of
//! `GL_n`, and the two numerical specializations used throughout: the Euler
//! number (`v ↦ 1`) and the point count over `𝔽_q` (`v² ↦ q`).

mod cyclo;
pub(crate) mod json;
mod modgcd;
mod poly;
mod scalar;

pub use json::{poly_from_json, poly_to_json, scalar_from_json, scalar_to_json, JsonError};
pub use poly::LaurentPoly;
pub use scalar::{MotiveScalar, ScalarSum};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("the reduced denominator vanishes at L^1/2 = 1; no Euler specialization")]
    PoleAtOne,
    #[error("odd powers of L^1/2 present; cannot evaluate at L = q")]
    HalfPowerPresent,
    #[error("denominator vanishes at the requested point")]
    DenominatorZero,
}

/// `ψ_n(x)`: substitutes `v ↦ v^n`.
pub fn adams_scalar(x: &MotiveScalar, n: u32) -> MotiveScalar {
    x.adams(n)
}

/// `(x)_n = ∏_{k=1}^{n} (1 - x^k)`, with `(x)_0 = 1`.
pub fn pochhammer(x: &MotiveScalar, n: u32) -> MotiveScalar {
    let one = MotiveScalar::one();
    let mut acc = MotiveScalar::one();
    let mut power = MotiveScalar::one();
    for _ in 0..n {
        power = &power * x;
        acc = &acc * &(&one - &power);
    }
    acc
}

/// `[GL_n] = ∏_{k=0}^{n-1} (L^n - L^k)`.
pub fn gl_motive(n: u32) -> MotiveScalar {
    let n = n as i64;
    let mut acc = LaurentPoly::one();
    for k in 0..n {
        let factor = &LaurentPoly::monomial(BigInt::from(1), 2 * n)
            - &LaurentPoly::monomial(BigInt::from(1), 2 * k);
        acc = &acc * &factor;
    }
    MotiveScalar::from_poly(acc)
}

/// Euler-number specialization `L^½ ↦ 1`.
pub fn euler_value(x: &MotiveScalar) -> Result<BigRational, CoeffError> {
    x.euler_value()
}

/// Exact value at `L = q`.
pub fn evaluate_at_prime_power(x: &MotiveScalar, q: u64) -> Result<BigRational, CoeffError> {
    x.evaluate_at_prime_power(q)
}
