use std::collections::hash_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::cyclo;
use super::poly::LaurentPoly;
use super::CoeffError;

/// An element of `ℚ(v)`, `v = L^½`, kept as a reduced fraction of integer
/// Laurent polynomials.
///
/// Canonical form: the denominator is an honest polynomial with nonzero
/// constant term and positive leading coefficient, numerator and denominator
/// are coprime in `ℚ[v]`, and the integer contents of numerator and
/// denominator are coprime. Structural equality is therefore mathematical
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MotiveScalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for MotiveScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl MotiveScalar {
    pub fn zero() -> Self {
        MotiveScalar {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(LaurentPoly::constant(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_poly(LaurentPoly::constant(n))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_parts(
            LaurentPoly::constant(r.numer().clone()),
            LaurentPoly::constant(r.denom().clone()),
        )
    }

    /// A Laurent polynomial viewed as a fraction with denominator 1.
    pub fn from_poly(p: LaurentPoly) -> Self {
        MotiveScalar {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// `v = L^½`.
    pub fn v() -> Self {
        Self::v_pow(1)
    }

    /// The Lefschetz motive `L = v²`.
    pub fn lefschetz() -> Self {
        Self::v_pow(2)
    }

    /// `v^k = L^{k/2}`.
    pub fn v_pow(k: i64) -> Self {
        Self::from_poly(LaurentPoly::monomial(BigInt::one(), k))
    }

    /// `(-L^½)^k = (-1)^k v^k`.
    pub fn minus_sqrt_l_pow(k: i64) -> Self {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::from_poly(LaurentPoly::monomial(BigInt::from(sign), k))
    }

    /// Reduces an arbitrary fraction to canonical form.
    ///
    /// Panics if `den` is zero.
    pub fn from_parts(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "MotiveScalar with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let num = num.shift(-den.lowest());
        let den = den.shift(-den.lowest());
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let (g, n1, d1) = num.gcd_cofactors(&den);
            if g.is_constant() {
                (num, den)
            } else {
                (n1, d1)
            }
        };
        Self::normalize_content(num, den)
    }

    /// Content and sign normalization for an already coprime pair whose
    /// denominator has nonzero constant term.
    fn normalize_content(mut num: LaurentPoly, mut den: LaurentPoly) -> Self {
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        if den.leading_coeff().is_some_and(|l| l.is_negative()) {
            num = -num;
            den = -den;
        }
        MotiveScalar { num, den }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value lies in `ℤ[v, v⁻¹]`.
    pub fn is_laurent_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The Laurent polynomial, if the denominator is 1.
    pub fn as_laurent_polynomial(&self) -> Option<&LaurentPoly> {
        self.is_laurent_polynomial().then_some(&self.num)
    }

    /// No stray rational constants: the denominator has content 1. Elements
    /// like `1/(1-L^{-1})` are integral, `v/2` is not.
    pub fn is_integral(&self) -> bool {
        self.den.content().is_one()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::from_parts(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        Some(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        let e = e as u32;
        if self.den.is_one() {
            return Self::from_poly(self.num.pow(e));
        }
        // powers of coprime polynomials stay coprime
        Self::normalize_content(self.num.pow(e), self.den.pow(e))
    }

    /// Adams operation `ψ_n`: `v ↦ v^n`.
    pub fn adams(&self, n: u32) -> Self {
        assert!(n >= 1, "Adams operations are indexed by n >= 1");
        if n == 1 {
            return self.clone();
        }
        // v ↦ v^n keeps coprimality, contents and leading signs
        MotiveScalar {
            num: self.num.substitute_power(n),
            den: self.den.substitute_power(n),
        }
    }

    /// Substitution `v ↦ -v`.
    pub fn negate_variable(&self) -> Self {
        Self::normalize_content(self.num.negate_variable(), self.den.negate_variable())
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() {
            return Self::from_poly(self.num.scale(c));
        }
        Self::normalize_content(self.num.scale(c), self.den.clone())
    }

    pub fn div_int(&self, d: &BigInt) -> Self {
        assert!(!d.is_zero(), "division by zero");
        if d.is_one() {
            return self.clone();
        }
        Self::normalize_content(self.num.clone(), self.den.scale(d))
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        MotiveScalar {
            num: self.num.shift(k),
            den: self.den.clone(),
        }
    }

    /// The Euler-number specialization `L^½ ↦ 1`.
    pub fn euler_value(&self) -> Result<BigRational, CoeffError> {
        let d = self.den.eval_one();
        if d.is_zero() {
            return Err(CoeffError::PoleAtOne);
        }
        Ok(BigRational::new(self.num.eval_one(), d))
    }

    /// The exact value at `L = q`; only integral powers of `L` may occur.
    pub fn evaluate_at_prime_power(&self, q: u64) -> Result<BigRational, CoeffError> {
        if !self.num.is_even() || !self.den.is_even() {
            return Err(CoeffError::HalfPowerPresent);
        }
        let q = BigRational::from_integer(BigInt::from(q));
        let eval_even = |p: &LaurentPoly| {
            let mut acc = BigRational::zero();
            for (e, c) in p.terms() {
                acc += BigRational::from_integer(c.clone()) * super::poly::pow_rational(&q, e / 2);
            }
            acc
        };
        let d = eval_even(&self.den);
        if d.is_zero() {
            return Err(CoeffError::DenominatorZero);
        }
        Ok(eval_even(&self.num) / d)
    }

    /// Renders the value in the variable `L`, half-powers as `L^{k/2}`.
    pub fn display_l(&self) -> String {
        let num = render_in_l(&self.num);
        if self.den.is_one() {
            return num;
        }
        let den = render_in_l(&self.den);
        let wrap = |s: String, p: &LaurentPoly| {
            if p.terms().count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(num, &self.num), wrap(den, &self.den))
    }
}

fn l_monomial(k: i64) -> String {
    match k {
        0 => String::new(),
        2 => "L".to_string(),
        _ if k % 2 == 0 && k > 0 => format!("L^{}", k / 2),
        _ if k % 2 == 0 => format!("L^{{{}}}", k / 2),
        _ => format!("L^{{{k}/2}}"),
    }
}

fn render_in_l(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (e, c) in p.terms().collect::<Vec<_>>().into_iter().rev() {
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = l_monomial(e);
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    out
}

impl fmt::Display for MotiveScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_l())
    }
}

impl From<i64> for MotiveScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<LaurentPoly> for MotiveScalar {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &MotiveScalar {
    type Output = MotiveScalar;
    fn add(self, rhs: &MotiveScalar) -> MotiveScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return MotiveScalar::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            return MotiveScalar::from_parts(num, self.den.clone());
        }
        // a/b + c/d with g = gcd(b, d): only g can share factors with the new numerator
        let (g, b1, d1) = self.den.gcd_cofactors(&rhs.den);
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        if num.is_zero() {
            return MotiveScalar::zero();
        }
        let den = &(&b1 * &d1) * &g;
        if g.is_constant() {
            return MotiveScalar::normalize_content(num, den);
        }
        let (h, num1, g1) = num.gcd_cofactors(&g);
        if h.is_constant() {
            MotiveScalar::normalize_content(num, den)
        } else {
            MotiveScalar::normalize_content(num1, &(&b1 * &d1) * &g1)
        }
    }
}

/// Key of a cyclotomic denominator `c·∏ Φ_k^{m_k}`.
type CycloKey = (Vec<(usize, u32)>, BigInt);

/// A running sum of many scalars and products of scalars.
///
/// Terms whose denominators factor into cyclotomics are kept unreduced,
/// grouped by denominator; [`finish`] brings them to the least common
/// denominator and cancels by trial division, with no polynomial gcds.
/// Other terms are summed the ordinary way.
///
/// [`finish`]: ScalarSum::finish
#[derive(Clone, Debug, Default)]
pub struct ScalarSum {
    cyclotomic: FxHashMap<CycloKey, LaurentPoly>,
    other: FxHashMap<LaurentPoly, LaurentPoly>,
}

fn merge_exps(a: &[(usize, u32)], b: &[(usize, u32)]) -> Vec<(usize, u32)> {
    let mut m: BTreeMap<usize, u32> = a.iter().copied().collect();
    for &(k, e) in b {
        *m.entry(k).or_insert(0) += e;
    }
    m.into_iter().collect()
}

fn add_into<K: std::hash::Hash + Eq>(
    map: &mut FxHashMap<K, LaurentPoly>,
    key: K,
    num: LaurentPoly,
) {
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(num);
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + &num;
            *o.get_mut() = s;
        }
    }
}

impl ScalarSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: MotiveScalar) {
        if x.is_zero() {
            return;
        }
        match cyclo::factor(&x.den) {
            Some(f) => add_into(
                &mut self.cyclotomic,
                (f.exps.clone(), f.content.clone()),
                x.num,
            ),
            None => add_into(&mut self.other, x.den, x.num),
        }
    }

    /// Adds `a·b`.
    pub fn add_product(&mut self, a: &MotiveScalar, b: &MotiveScalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        match (cyclo::factor(&a.den), cyclo::factor(&b.den)) {
            (Some(fa), Some(fb)) => {
                let key = (merge_exps(&fa.exps, &fb.exps), &fa.content * &fb.content);
                add_into(&mut self.cyclotomic, key, &a.num * &b.num);
            }
            _ => self.add(a * b),
        }
    }

    pub fn finish(self) -> MotiveScalar {
        let mut groups: Vec<(CycloKey, LaurentPoly)> = self
            .cyclotomic
            .into_iter()
            .filter(|(_, n)| !n.is_zero())
            .collect();
        groups.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out = cyclotomic_sum(&groups);
        let mut rest: Vec<(LaurentPoly, LaurentPoly)> = self
            .other
            .into_iter()
            .filter(|(_, n)| !n.is_zero())
            .collect();
        // deterministic combination order
        rest.sort_by(|a, b| (a.0.highest(), a.0.coeffs()).cmp(&(b.0.highest(), b.0.coeffs())));
        for (den, num) in rest {
            out = &out + &MotiveScalar::from_parts(num, den);
        }
        out
    }
}

/// `Σ num/den` over cyclotomic denominators, reduced.
fn cyclotomic_sum(groups: &[(CycloKey, LaurentPoly)]) -> MotiveScalar {
    let mut lcm: BTreeMap<usize, u32> = BTreeMap::new();
    let mut content = BigInt::one();
    for ((exps, c), _) in groups {
        content = content.lcm(c);
        for &(k, m) in exps {
            let e = lcm.entry(k).or_insert(0);
            *e = (*e).max(m);
        }
    }
    let mut num = LaurentPoly::zero();
    for ((exps, c), n) in groups {
        let have: BTreeMap<usize, u32> = exps.iter().copied().collect();
        let missing: Vec<(usize, u32)> = lcm
            .iter()
            .map(|(&k, &e)| (k, e - have.get(&k).copied().unwrap_or(0)))
            .filter(|&(_, e)| e > 0)
            .collect();
        let cof = cyclo::expand(&missing).scale(&(&content / c));
        num = &num + &(n * &cof);
    }
    if num.is_zero() {
        return MotiveScalar::zero();
    }
    let mut den = LaurentPoly::constant(content);
    for (k, m) in lcm {
        let mut left = m;
        while left > 0 {
            match num.div_exact(cyclo::phi(k)) {
                Some(q) => {
                    num = q;
                    left -= 1;
                }
                None => break,
            }
        }
        for _ in 0..left {
            den = &den * cyclo::phi(k);
        }
    }
    MotiveScalar::normalize_content(num, den)
}

impl Sub for &MotiveScalar {
    type Output = MotiveScalar;
    fn sub(self, rhs: &MotiveScalar) -> MotiveScalar {
        self + &(-rhs)
    }
}

impl Mul for &MotiveScalar {
    type Output = MotiveScalar;
    fn mul(self, rhs: &MotiveScalar) -> MotiveScalar {
        if self.is_zero() || rhs.is_zero() {
            return MotiveScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return MotiveScalar::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel: gcd(a, d) and gcd(c, b)
        let cancel = |n: &LaurentPoly, d: &LaurentPoly| -> (LaurentPoly, LaurentPoly) {
            if d.is_one() {
                return (n.clone(), d.clone());
            }
            let (g, n1, d1) = n.gcd_cofactors(d);
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n1, d1)
            }
        };
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        MotiveScalar::normalize_content(&a * &c, &b * &d)
    }
}

impl Div for &MotiveScalar {
    type Output = MotiveScalar;
    /// Panics on division by zero.
    fn div(self, rhs: &MotiveScalar) -> MotiveScalar {
        self.checked_div(rhs)
            .expect("division by zero MotiveScalar")
    }
}

impl Neg for &MotiveScalar {
    type Output = MotiveScalar;
    fn neg(self) -> MotiveScalar {
        MotiveScalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for MotiveScalar {
    type Output = MotiveScalar;
    fn neg(self) -> MotiveScalar {
        MotiveScalar {
            num: -self.num,
            den: self.den,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MotiveScalar {
            type Output = MotiveScalar;
            fn $m(self, rhs: MotiveScalar) -> MotiveScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MotiveScalar> for MotiveScalar {
            type Output = MotiveScalar;
            fn $m(self, rhs: &MotiveScalar) -> MotiveScalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Zero for MotiveScalar {
    fn zero() -> Self {
        MotiveScalar::zero()
    }
    fn is_zero(&self) -> bool {
        MotiveScalar::is_zero(self)
    }
}

impl One for MotiveScalar {
    fn one() -> Self {
        MotiveScalar::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(lowest: i64, c: &[i64]) -> MotiveScalar {
        MotiveScalar::from_poly(LaurentPoly::from_i64s(lowest, c))
    }

    fn frac(n: (i64, &[i64]), d: (i64, &[i64])) -> MotiveScalar {
        MotiveScalar::from_parts(
            LaurentPoly::from_i64s(n.0, n.1),
            LaurentPoly::from_i64s(d.0, d.1),
        )
    }

    #[test]
    fn removable_singularity_cancels() {
        // (1 - v^4)/(1 - v^2) = 1 + v^2
        let x = frac((0, &[1, 0, 0, 0, -1]), (0, &[1, 0, -1]));
        assert_eq!(x, poly(0, &[1, 0, 1]));
    }

    #[test]
    fn canonical_form_is_structural() {
        let a = frac((0, &[2]), (0, &[4, -4]));
        // -v^3/(-2v^3 + 2v^4) is the same value
        let b = frac((3, &[-1]), (3, &[-2, 2]));
        assert_eq!(a, b);
        assert!(a.denominator().leading_coeff().unwrap().is_positive());
        assert!(!a.is_integral());
    }

    #[test]
    fn arithmetic_matches_fraction_rules() {
        let a = frac((0, &[1]), (0, &[1, -1])); // 1/(1-v)
        let b = frac((0, &[1]), (0, &[1, 1])); // 1/(1+v)
                                               // 1/(1-v) + 1/(1+v) = 2/(1-v^2)
        assert_eq!(&a + &b, frac((0, &[2]), (0, &[1, 0, -1])));
        // product
        assert_eq!(&a * &b, frac((0, &[1]), (0, &[1, 0, -1])));
        // a - a = 0
        assert!((&a - &a).is_zero());
        // a / a = 1
        assert!((&a / &a).is_one());
    }

    #[test]
    fn adams_on_denominator() {
        let x = frac((0, &[1]), (0, &[1, 0, -1]));
        assert_eq!(x.adams(2), frac((0, &[1]), (0, &[1, 0, 0, 0, -1])));
        assert_eq!(MotiveScalar::v().adams(3), MotiveScalar::v_pow(3));
    }

    #[test]
    fn minus_sqrt_l_powers() {
        assert_eq!(MotiveScalar::minus_sqrt_l_pow(3), poly(3, &[-1]));
        assert_eq!(MotiveScalar::minus_sqrt_l_pow(-2), poly(-2, &[1]));
    }

    #[test]
    fn euler_specialization() {
        let x = frac((0, &[1, 0, 0, 0, -1]), (0, &[1, 0, -1]));
        assert_eq!(
            x.euler_value().unwrap(),
            BigRational::from_integer(2.into())
        );
        let pole = frac((0, &[1]), (0, &[1, 0, -1]));
        assert_eq!(pole.euler_value(), Err(CoeffError::PoleAtOne));
    }

    #[test]
    fn prime_power_evaluation() {
        assert_eq!(
            poly(4, &[1]).evaluate_at_prime_power(3).unwrap(),
            BigRational::from_integer(9.into())
        );
        assert_eq!(
            MotiveScalar::v().evaluate_at_prime_power(2),
            Err(CoeffError::HalfPowerPresent)
        );
        // 1/(L - 2) at q = 2
        let x = frac((0, &[1]), (0, &[-2, 0, 1]));
        assert_eq!(
            x.evaluate_at_prime_power(2),
            Err(CoeffError::DenominatorZero)
        );
    }

    #[test]
    fn l_notation() {
        assert_eq!(poly(0, &[-1, 0, 1]).to_string(), "L - 1");
        assert_eq!(poly(3, &[1]).to_string(), "L^{3/2}");
        assert_eq!(poly(-2, &[2]).to_string(), "2*L^{-1}");
        assert_eq!(frac((4, &[1]), (0, &[-1, 0, 1])).to_string(), "L^2/(L - 1)");
    }
}
