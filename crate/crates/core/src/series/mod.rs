//! Truncated multivariate power series over [`MotiveScalar`] and the λ-ring
//! calculus on them.
//!
//! The Adams operations act on a series by `ψ_n(c·y^e) = ψ_n(c)·y^{ne}`.
//! The plethystic exponential `Exp(f) = exp(Σ ψ_n f / n)` and its inverse
//! `Log(f) = Σ μ(n)/n · ψ_n log f` are computed by push-based recurrences
//! driven by the total degree, which is additive and positive on every
//! nonconstant monomial; intermediate coefficients may have rational
//! constants, final ones are checked to be integral.

mod grading;
mod json;

pub use grading::Grading;
pub use json::{grading_from_json, grading_to_json, series_from_json, series_to_json};

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::coeff::{MotiveScalar, ScalarSum};
use grading::total_degree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series live in different truncations")]
    GradingMismatch,
    #[error("bilinear form is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("Exp needs a series without constant term")]
    NonzeroConstantTerm,
    #[error("Log needs a series with constant term 1")]
    ConstantTermNotOne,
    #[error("exponent vector must be nonzero")]
    ZeroExponentVector,
    #[error("expected {expected} entries, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("variable index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("variable `{0}` has weight 0 and no cap")]
    UnboundedTruncation(String),
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
}

/// A truncated power series `Σ c_e y^e`. Zero coefficients are never stored
/// and every stored exponent is admitted by the grading.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MSeries {
    grading: Grading,
    terms: BTreeMap<Vec<u32>, MotiveScalar>,
}

fn mobius(n: u32) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn add_exp(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn accumulate(map: &mut BTreeMap<Vec<u32>, MotiveScalar>, e: Vec<u32>, c: MotiveScalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(e) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// Coefficient lies in `ℤ((v))`: the reduced denominator has constant
/// term ±1 (Fatou). Exp and Log preserve this class.
fn in_laurent_series_ring(c: &MotiveScalar) -> bool {
    c.denominator().coeff(0).abs().is_one()
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl MSeries {
    pub fn zero(grading: &Grading) -> Self {
        MSeries {
            grading: grading.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(grading: &Grading) -> Self {
        Self::constant(grading, MotiveScalar::one())
    }

    pub fn constant(grading: &Grading, c: MotiveScalar) -> Self {
        let mut s = Self::zero(grading);
        accumulate(&mut s.terms, vec![0; grading.nvars()], c);
        s
    }

    /// `c·y^e`; zero if `e` lies beyond the truncation.
    pub fn monomial(grading: &Grading, e: &[u32], c: MotiveScalar) -> Result<Self, SeriesError> {
        Self::from_terms(grading, [(e.to_vec(), c)])
    }

    /// Sums the given terms, silently dropping those beyond the truncation.
    pub fn from_terms(
        grading: &Grading,
        terms: impl IntoIterator<Item = (Vec<u32>, MotiveScalar)>,
    ) -> Result<Self, SeriesError> {
        let mut s = Self::zero(grading);
        for (e, c) in terms {
            s.check_arity(e.len())?;
            if grading.admits(&e) {
                accumulate(&mut s.terms, e, c);
            }
        }
        Ok(s)
    }

    fn check_arity(&self, n: usize) -> Result<(), SeriesError> {
        let m = self.grading.nvars();
        if n != m {
            return Err(SeriesError::Arity {
                expected: m,
                found: n,
            });
        }
        Ok(())
    }

    fn check_same(&self, other: &Self) -> Result<(), SeriesError> {
        if self.grading != other.grading {
            return Err(SeriesError::GradingMismatch);
        }
        Ok(())
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &MotiveScalar)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> MotiveScalar {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> MotiveScalar {
        self.coeff(&vec![0; self.grading.nvars()])
    }

    /// Same terms under another truncation of the same variables; terms the
    /// new grading does not admit are dropped.
    pub fn regrade(&self, grading: &Grading) -> Result<Self, SeriesError> {
        self.check_arity(grading.nvars())?;
        Self::from_terms(
            grading,
            self.terms.iter().map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&[u32], &MotiveScalar) -> MotiveScalar) -> Self {
        let mut out = Self::zero(&self.grading);
        for (e, c) in &self.terms {
            accumulate(&mut out.terms, e.clone(), f(e, c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            accumulate(&mut out.terms, e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|_, c| -c)
    }

    pub fn scale(&self, c: &MotiveScalar) -> Self {
        self.map_coeffs(|_, x| x * c)
    }

    /// Truncated commutative product.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same(other)?;
        Ok(self.product_with(other, |_, _| None))
    }

    /// Product in the quantum torus: `y^α ∘ y^β = (-v)^{⟨α,β⟩} y^{α+β}` with
    /// `⟨α,β⟩ = αᵀ S β` for the antisymmetric matrix `S`.
    pub fn quantum_mul(&self, other: &Self, skew: &[Vec<i64>]) -> Result<Self, SeriesError> {
        self.check_same(other)?;
        let m = self.grading.nvars();
        self.check_arity(skew.len())?;
        for row in skew {
            self.check_arity(row.len())?;
        }
        for i in 0..m {
            for j in 0..m {
                if skew[i][j] != -skew[j][i] {
                    return Err(SeriesError::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(self.product_with(other, |a, b| {
            let mut k = 0i64;
            for i in 0..m {
                for j in 0..m {
                    k += a[i] as i64 * skew[i][j] * b[j] as i64;
                }
            }
            (k != 0).then(|| MotiveScalar::minus_sqrt_l_pow(k))
        }))
    }

    fn product_with(
        &self,
        other: &Self,
        twist: impl Fn(&[u32], &[u32]) -> Option<MotiveScalar>,
    ) -> Self {
        let mut out = Self::zero(&self.grading);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e = add_exp(a, b);
                if !self.grading.admits(&e) {
                    continue;
                }
                let mut c = ca * cb;
                if let Some(t) = twist(a, b) {
                    c = &c * &t;
                }
                accumulate(&mut out.terms, e, c);
            }
        }
        out
    }

    /// `ψ_n`: coefficients through the Adams operation, exponents times `n`.
    pub fn adams_series(&self, n: u32) -> Self {
        assert!(n >= 1, "Adams operations are indexed by n >= 1");
        let mut out = Self::zero(&self.grading);
        for (e, c) in &self.terms {
            let ne: Vec<u32> = e.iter().map(|a| a * n).collect();
            if self.grading.admits(&ne) {
                accumulate(&mut out.terms, ne, c.adams(n));
            }
        }
        out
    }

    /// `S_w: y^α ↦ (-L^½)^{w·α} y^α`.
    pub fn twist_sv(&self, w: &[i64]) -> Result<Self, SeriesError> {
        self.check_arity(w.len())?;
        Ok(self.map_coeffs(|e, c| {
            let k: i64 = e.iter().zip(w).map(|(&a, &b)| a as i64 * b).sum();
            if k == 0 {
                c.clone()
            } else {
                c * &MotiveScalar::minus_sqrt_l_pow(k)
            }
        }))
    }

    /// `y_i ↦ -y_i`.
    pub fn sign_flip(&self, i: usize) -> Result<Self, SeriesError> {
        if i >= self.grading.nvars() {
            return Err(SeriesError::IndexOutOfRange(i));
        }
        Ok(self.map_coeffs(|e, c| if e[i] % 2 == 1 { -c } else { c.clone() }))
    }

    /// Truncated expansion of `(1 - c·y^α)^{-e}`; a polynomial when `e < 0`.
    pub fn geometric_factor(
        grading: &Grading,
        c: &MotiveScalar,
        alpha: &[u32],
        e: i64,
    ) -> Result<Self, SeriesError> {
        Self::one(grading).mul_geometric(c, alpha, e)
    }

    /// `self · (1 - c·y^α)^{-e}` without materializing the factor.
    pub fn mul_geometric(
        &self,
        c: &MotiveScalar,
        alpha: &[u32],
        e: i64,
    ) -> Result<Self, SeriesError> {
        self.check_arity(alpha.len())?;
        if alpha.iter().all(|&a| a == 0) {
            return Err(SeriesError::ZeroExponentVector);
        }
        if e == 0 || c.is_zero() || !self.grading.admits(alpha) {
            return Ok(self.clone());
        }
        // coefficients of (1 - c t)^{-e} in t, as far as any term can reach
        let reach = alpha
            .iter()
            .zip(self.grading.weights())
            .map(|(&a, &w)| a as u64 * w as u64)
            .sum::<u64>();
        let mut kmax = match reach {
            0 => u64::MAX,
            r => self.grading.bound() as u64 / r,
        };
        if let Some(caps) = self.grading.caps() {
            for (a, cap) in alpha.iter().zip(caps) {
                if *a > 0 {
                    kmax = kmax.min((*cap / *a) as u64);
                }
            }
        }
        if e < 0 {
            kmax = kmax.min(e.unsigned_abs());
        }
        let mut coeffs = Vec::with_capacity(kmax as usize + 1);
        let mut power = MotiveScalar::one();
        for k in 0..=kmax {
            let b = if e > 0 {
                binomial(e as u64 + k - 1, k)
            } else {
                let b = binomial(e.unsigned_abs(), k);
                if k % 2 == 1 {
                    -b
                } else {
                    b
                }
            };
            coeffs.push(power.scale_int(&b));
            power = &power * c;
        }
        let mut out = Self::zero(&self.grading);
        for (base, x) in &self.terms {
            let mut exp = base.clone();
            for ck in &coeffs {
                if !self.grading.admits(&exp) {
                    break;
                }
                accumulate(&mut out.terms, exp.clone(), x * ck);
                exp = add_exp(&exp, alpha);
            }
        }
        Ok(out)
    }

    fn all_in_laurent_series_ring(&self) -> bool {
        self.terms.values().all(in_laurent_series_ring)
    }

    fn assert_integral_result(&self, what: &str) {
        if let Some((e, c)) = self.terms.iter().find(|(_, c)| !in_laurent_series_ring(c)) {
            panic!("{what} produced a non-integral coefficient {c} at {e:?}");
        }
    }

    /// The ordinary exponential of a series without constant term.
    fn exp_plain(g: &Self) -> Self {
        let grading = &g.grading;
        let zero = vec![0; grading.nvars()];
        let mut out = Self::one(grading);
        let gen: Vec<(&Vec<u32>, MotiveScalar)> = g
            .terms
            .iter()
            .map(|(e, c)| (e, c.scale_int(&BigInt::from(total_degree(e)))))
            .collect();
        // pending[(deg k, k)] = Σ deg(j) g_j E_{k-j}
        let mut pending: BTreeMap<(u64, Vec<u32>), ScalarSum> = BTreeMap::new();
        let push =
            |pending: &mut BTreeMap<(u64, Vec<u32>), ScalarSum>, k: &[u32], ek: &MotiveScalar| {
                for (j, dg) in &gen {
                    let e = add_exp(k, j);
                    if grading.admits(&e) {
                        let d = total_degree(&e);
                        pending.entry((d, e)).or_default().add_product(ek, dg);
                    }
                }
            };
        push(&mut pending, &zero, &MotiveScalar::one());
        while let Some(((d, k), s)) = pending.pop_first() {
            let ek = s.finish().div_int(&BigInt::from(d));
            if ek.is_zero() {
                continue;
            }
            push(&mut pending, &k, &ek);
            out.terms.insert(k, ek);
        }
        out
    }

    /// The ordinary logarithm of a series with constant term 1.
    fn log_plain(a: &Self) -> Self {
        let grading = &a.grading;
        let rest: Vec<(&Vec<u32>, &MotiveScalar)> = a
            .terms
            .iter()
            .filter(|(e, _)| e.iter().any(|&x| x > 0))
            .collect();
        // deg(k) A_k = Σ_j deg(j) F_j A_{k-j}
        let mut pending: BTreeMap<(u64, Vec<u32>), ScalarSum> = rest
            .iter()
            .map(|(e, _)| ((total_degree(e), (*e).clone()), ScalarSum::new()))
            .collect();
        let mut out = Self::zero(grading);
        while let Some(((d, k), s)) = pending.pop_first() {
            let ak = a.coeff(&k);
            let fk = &ak - &s.finish().div_int(&BigInt::from(d));
            if fk.is_zero() {
                continue;
            }
            let weighted = fk.scale_int(&BigInt::from(d));
            for (m, am) in &rest {
                let e = add_exp(&k, m);
                if grading.admits(&e) {
                    let key = (total_degree(&e), e);
                    pending.entry(key).or_default().add_product(&weighted, am);
                }
            }
            out.terms.insert(k, fk);
        }
        out
    }

    /// Largest `n` with `ψ_n` of some term still inside the truncation.
    fn adams_range(&self) -> u32 {
        let mut best = 1;
        for e in self.terms.keys() {
            let mut n = best + 1;
            while self
                .grading
                .admits(&e.iter().map(|a| a * n).collect::<Vec<_>>())
            {
                best = n;
                n += 1;
            }
        }
        best
    }

    /// The plethystic exponential `Exp(f) = exp(Σ_{n≥1} ψ_n(f)/n)`.
    pub fn exp_lambda(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let mut g = self.clone();
        for n in 2..=self.adams_range() {
            let term = self
                .adams_series(n)
                .map_coeffs(|_, c| c.div_int(&BigInt::from(n)));
            g = g.add(&term)?;
        }
        let out = Self::exp_plain(&g);
        if self.all_in_laurent_series_ring() {
            out.assert_integral_result("Exp");
        }
        Ok(out)
    }

    /// The plethystic logarithm, inverse to [`MSeries::exp_lambda`].
    pub fn log_lambda(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().is_one() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let l = Self::log_plain(self);
        let mut out = l.clone();
        for n in 2..=l.adams_range() {
            let mu = mobius(n);
            if mu == 0 {
                continue;
            }
            let term = l
                .adams_series(n)
                .map_coeffs(|_, c| c.scale_int(&BigInt::from(mu)).div_int(&BigInt::from(n)));
            out = out.add(&term)?;
        }
        if self.all_in_laurent_series_ring() {
            out.assert_integral_result("Log");
        }
        Ok(out)
    }

    /// The power structure `Pow(f, g) = Exp(g·Log f)`.
    pub fn pow_structure(&self, g: &MotiveScalar) -> Result<Self, SeriesError> {
        self.log_lambda()?.scale(g).exp_lambda()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{pochhammer, LaurentPoly};

    fn l() -> MotiveScalar {
        MotiveScalar::lefschetz()
    }

    fn s(n: i64) -> MotiveScalar {
        MotiveScalar::from_int(n)
    }

    fn one_var(bound: u32) -> Grading {
        Grading::total_degree(["y"], bound).unwrap()
    }

    fn poly(g: &Grading, cs: &[MotiveScalar]) -> MSeries {
        MSeries::from_terms(
            g,
            cs.iter()
                .enumerate()
                .map(|(i, c)| (vec![i as u32], c.clone())),
        )
        .unwrap()
    }

    #[test]
    fn mobius_values() {
        let got: Vec<i64> = (1..=10).map(mobius).collect();
        assert_eq!(got, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }

    #[test]
    fn products() {
        let g = one_var(3);
        let a = poly(&g, &[s(1), s(1)]);
        let b = poly(&g, &[s(1), s(-1)]);
        assert_eq!(a.mul(&b).unwrap(), poly(&g, &[s(1), s(0), s(-1)]));
        assert_eq!(a.mul(&MSeries::one(&g)).unwrap(), a);
        let c = poly(&g, &[s(1), l()]);
        assert_eq!(
            c.mul(&c).unwrap(),
            poly(&g, &[s(1), l().scale_int(&2.into()), l().pow(2)])
        );
        let other = one_var(4);
        assert_eq!(
            a.mul(&MSeries::one(&other)),
            Err(SeriesError::GradingMismatch)
        );
    }

    #[test]
    fn quantum_products() {
        let g = Grading::indexed(2, 4);
        let y1 = MSeries::monomial(&g, &[1, 0], s(1)).unwrap();
        let y2 = MSeries::monomial(&g, &[0, 1], s(1)).unwrap();
        let y12 = |c| MSeries::monomial(&g, &[1, 1], c).unwrap();
        let zero = vec![vec![0, 0], vec![0, 0]];
        assert_eq!(y1.quantum_mul(&y2, &zero).unwrap(), y12(s(1)));
        let one = vec![vec![0, 1], vec![-1, 0]];
        assert_eq!(y1.quantum_mul(&y2, &one).unwrap(), y12(-MotiveScalar::v()));
        let two = vec![vec![0, 2], vec![-2, 0]];
        assert_eq!(
            y1.quantum_mul(&y2, &two).unwrap(),
            y12(MotiveScalar::v_pow(2))
        );
        assert_eq!(
            y2.quantum_mul(&y1, &two).unwrap(),
            y12(MotiveScalar::v_pow(-2))
        );
        let bad = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(
            y1.quantum_mul(&y2, &bad),
            Err(SeriesError::NotAntisymmetric(0, 1))
        );
    }

    #[test]
    fn exp_of_line_element_is_geometric() {
        let g = one_var(6);
        let f = MSeries::monomial(&g, &[1], l()).unwrap();
        let e = f.exp_lambda().unwrap();
        let expected: Vec<MotiveScalar> = (0..=6).map(|n| l().pow(n)).collect();
        assert_eq!(e, poly(&g, &expected));
        assert_eq!(e.log_lambda().unwrap(), f);
        let same = MSeries::geometric_factor(&g, &l(), &[1], 1).unwrap();
        assert_eq!(same, e);
    }

    #[test]
    fn heine_identity() {
        let g = one_var(8);
        let q = MotiveScalar::v_pow(3);
        let arg = (&MotiveScalar::one() - &q).inv().unwrap();
        let lhs = MSeries::monomial(&g, &[1], arg)
            .unwrap()
            .exp_lambda()
            .unwrap();
        let coeffs: Vec<MotiveScalar> = (0..=8).map(|n| pochhammer(&q, n).inv().unwrap()).collect();
        assert_eq!(lhs, poly(&g, &coeffs));
    }

    #[test]
    fn exp_log_basics() {
        let g = one_var(5);
        assert_eq!(MSeries::one(&g).log_lambda().unwrap(), MSeries::zero(&g));
        assert_eq!(MSeries::zero(&g).exp_lambda().unwrap(), MSeries::one(&g));
        assert_eq!(
            MSeries::one(&g).exp_lambda(),
            Err(SeriesError::NonzeroConstantTerm)
        );
        assert_eq!(
            MSeries::zero(&g).log_lambda(),
            Err(SeriesError::ConstantTermNotOne)
        );
    }

    #[test]
    fn pow_structure_identities() {
        let g = one_var(4);
        let f = MSeries::geometric_factor(&g, &s(1), &[1], 1).unwrap();
        assert_eq!(f.pow_structure(&s(1)).unwrap(), f);
        // Pow(1/(1-y), L) = 1/(1-Ly)
        let expected = MSeries::geometric_factor(&g, &l(), &[1], 1).unwrap();
        assert_eq!(f.pow_structure(&l()).unwrap(), expected);
    }

    #[test]
    fn adams_and_twists() {
        let g = Grading::indexed(2, 6);
        let vy = MSeries::monomial(&g, &[1, 0], MotiveScalar::v()).unwrap();
        assert_eq!(
            vy.adams_series(2),
            MSeries::monomial(&g, &[2, 0], MotiveScalar::v_pow(2)).unwrap()
        );
        let sum = MSeries::from_terms(&g, [(vec![1, 0], s(1)), (vec![0, 1], s(1))]).unwrap();
        let cubes = MSeries::from_terms(&g, [(vec![3, 0], s(1)), (vec![0, 3], s(1))]).unwrap();
        assert_eq!(sum.adams_series(3), cubes);
        assert_eq!(sum.adams_series(1), sum);

        let a = MSeries::monomial(&g, &[1, 1], s(1)).unwrap();
        assert_eq!(
            a.twist_sv(&[1, 1]).unwrap(),
            MSeries::monomial(&g, &[1, 1], MotiveScalar::v_pow(2)).unwrap()
        );
        let back = sum.twist_sv(&[3, -1]).unwrap().twist_sv(&[-3, 1]).unwrap();
        assert_eq!(back, sum);
        assert_eq!(sum.twist_sv(&[0, 0]).unwrap(), sum);
    }

    #[test]
    fn geometric_factors() {
        let g = one_var(3);
        let v = MotiveScalar::v();
        let e1 = MSeries::geometric_factor(&g, &v, &[1], 1).unwrap();
        let powers: Vec<MotiveScalar> = (0..=3).map(MotiveScalar::v_pow).collect();
        assert_eq!(e1, poly(&g, &powers));
        let e2 = MSeries::geometric_factor(&g, &v, &[1], 2).unwrap();
        assert_eq!(e2, e1.mul(&e1).unwrap());
        assert_eq!(
            MSeries::geometric_factor(&g, &v, &[1], 0).unwrap(),
            MSeries::one(&g)
        );
        let inv = MSeries::geometric_factor(&g, &v, &[1], -1).unwrap();
        assert_eq!(inv, poly(&g, &[s(1), -v.clone()]));
        assert_eq!(inv.mul(&e1).unwrap(), MSeries::one(&g));
        assert_eq!(
            MSeries::geometric_factor(&g, &v, &[0], 1),
            Err(SeriesError::ZeroExponentVector)
        );
    }

    #[test]
    fn sign_flips() {
        let g = Grading::indexed(2, 4);
        let f = MSeries::from_terms(&g, [(vec![0, 0], s(1)), (vec![1, 2], s(1))]).unwrap();
        let flipped = MSeries::from_terms(&g, [(vec![0, 0], s(1)), (vec![1, 2], s(-1))]).unwrap();
        assert_eq!(f.sign_flip(0).unwrap(), flipped);
        assert_eq!(f.sign_flip(1).unwrap(), f);
        assert_eq!(f.sign_flip(0).unwrap().sign_flip(0).unwrap(), f);
        assert_eq!(f.sign_flip(2), Err(SeriesError::IndexOutOfRange(2)));
    }

    #[test]
    fn capped_grading_exp_log() {
        // s carries the weight, t is only capped
        let g = Grading::with_caps(["s", "t"], vec![1, 0], 2, vec![2, 3]).unwrap();
        let f = MSeries::from_terms(
            &g,
            [
                (vec![0, 1], s(1)),
                (vec![1, 1], l()),
                (
                    vec![1, 0],
                    MotiveScalar::from_poly(LaurentPoly::from_i64s(0, &[1, 1])),
                ),
            ],
        )
        .unwrap();
        let e = f.exp_lambda().unwrap();
        assert!(e.terms().all(|(x, _)| g.admits(x)));
        assert_eq!(e.log_lambda().unwrap(), f);
    }
}
