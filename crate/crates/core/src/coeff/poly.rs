//! Integer Laurent polynomials in a single variable.
//!
//! The variable is `v = L^½` when the polynomial is part of a
//! [`MotiveScalar`](super::MotiveScalar), and `q` when it is used as a Kac
//! polynomial. Coefficients are arbitrary precision.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `Σ coeffs[k] · v^(lowest + k)`.
///
/// Normalized: the first and last stored coefficients are nonzero, and the
/// zero polynomial is `lowest = 0, coeffs = []`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentPoly {
    lowest: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: BigInt, exponent: i64) -> Self {
        Self::from_coeffs(exponent, vec![c])
    }

    /// Builds `Σ coeffs[k] v^(lowest+k)`, trimming zero coefficients at both ends.
    pub fn from_coeffs(lowest: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { lowest, coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(lowest: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(lowest, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == self.coeffs.len() {
            self.coeffs.clear();
            self.lowest = 0;
            return;
        }
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.lowest += lead_zeros as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lowest == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True when the polynomial is `c · v^0`.
    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.lowest == 0 && self.coeffs.len() == 1)
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    /// Highest exponent with a nonzero coefficient (`lowest - 1` for zero).
    pub fn highest(&self) -> i64 {
        self.lowest + self.coeffs.len() as i64 - 1
    }

    /// Coefficients in ascending order starting at [`lowest`](Self::lowest).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exponent: i64) -> BigInt {
        let idx = exponent - self.lowest;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.lowest + k as i64, c))
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            lowest: self.lowest + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            lowest: self.lowest,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Non-negative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        dense_content(&self.coeffs)
    }

    /// Divides every coefficient by `d`, which must divide all of them.
    pub fn div_scalar_exact(&self, d: &BigInt) -> Self {
        if d.is_one() {
            return self.clone();
        }
        LaurentPoly {
            lowest: self.lowest,
            coeffs: self.coeffs.iter().map(|x| x / d).collect(),
        }
    }

    /// Substitutes `v ↦ v^n` for `n ≥ 1`.
    pub fn substitute_power(&self, n: u32) -> Self {
        assert!(n >= 1, "substitute_power needs n >= 1");
        if n == 1 || self.is_zero() {
            return self.clone();
        }
        let n = n as usize;
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * n] = c.clone();
        }
        LaurentPoly {
            lowest: self.lowest * n as i64,
            coeffs,
        }
    }

    /// Substitutes `v ↦ -v`.
    pub fn negate_variable(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if (self.lowest + k as i64).rem_euclid(2) == 1 {
                    -c
                } else {
                    c.clone()
                }
            })
            .collect();
        LaurentPoly {
            lowest: self.lowest,
            coeffs,
        }
    }

    /// `p(v)` with `self = p(v²)`, when only even exponents occur. The
    /// arithmetic kernels use it to halve degrees: series over `L = v²`
    /// never see odd powers.
    fn halved(&self) -> Option<LaurentPoly> {
        if self.coeffs.len() < 3
            || self.lowest % 2 != 0
            || self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero())
        {
            return None;
        }
        Some(LaurentPoly {
            lowest: self.lowest / 2,
            coeffs: self.coeffs.iter().step_by(2).cloned().collect(),
        })
    }

    /// True when only even exponents occur.
    pub fn is_even(&self) -> bool {
        self.terms().all(|(e, _)| e.rem_euclid(2) == 0)
    }

    /// Sum of the coefficients, i.e. the value at `v = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Exact value at a nonzero rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc * pow_rational(x, self.lowest)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Polynomial part with the monomial factor removed: `self = v^lowest · p`
    /// with `p(0) ≠ 0`, returned as dense ascending coefficients.
    fn stripped(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Exact division. Returns `None` when `divisor` does not divide `self`
    /// in `ℤ[v, v⁻¹]`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if divisor.is_monomial() {
            let d = &divisor.coeffs[0];
            if self.coeffs.iter().any(|c| !c.is_multiple_of(d)) {
                return None;
            }
            return Some(LaurentPoly {
                lowest: self.lowest - divisor.lowest,
                coeffs: self.coeffs.iter().map(|c| c / d).collect(),
            });
        }
        if let (Some(a), Some(b)) = (self.halved(), divisor.halved()) {
            return Some(a.div_exact(&b)?.substitute_power(2));
        }
        let q = dense_div_exact(self.stripped(), divisor.stripped())?;
        Some(LaurentPoly::from_coeffs(self.lowest - divisor.lowest, q))
    }

    /// Greatest common divisor in `ℤ[v, v⁻¹]`: the content gcd times the
    /// primitive gcd, normalized to `v^0`-based with positive leading coefficient.
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        self.gcd_cofactors(other).0
    }

    /// `(g, self/g, other/g)` with `g = gcd(self, other)`.
    pub fn gcd_cofactors(&self, other: &LaurentPoly) -> (LaurentPoly, LaurentPoly, LaurentPoly) {
        if self.is_zero() || other.is_zero() {
            let g = if self.is_zero() { other } else { self }.normalized_associate();
            if g.is_zero() {
                return (g, Self::zero(), Self::zero());
            }
            let qa = self.div_exact(&g).expect("gcd divides");
            let qb = other.div_exact(&g).expect("gcd divides");
            return (g, qa, qb);
        }
        if let (Some(a), Some(b)) = (self.halved(), other.halved()) {
            let (g, qa, qb) = a.gcd_cofactors(&b);
            return (
                g.substitute_power(2),
                qa.substitute_power(2),
                qb.substitute_power(2),
            );
        }
        let (ca, cb) = (self.content(), other.content());
        let c = ca.gcd(&cb);
        if self.coeffs.len() == 1 || other.coeffs.len() == 1 {
            let g = LaurentPoly::constant(c.clone());
            return (g, self.div_scalar_exact(&c), other.div_scalar_exact(&c));
        }
        let x: Vec<BigInt> = self.coeffs.iter().map(|a| a / &ca).collect();
        let y: Vec<BigInt> = other.coeffs.iter().map(|a| a / &cb).collect();
        let (g, qx, qy) = super::modgcd::primitive_gcd(&x, &y);
        let qa = LaurentPoly::from_coeffs(self.lowest, qx).scale(&(&ca / &c));
        let qb = LaurentPoly::from_coeffs(other.lowest, qy).scale(&(&cb / &c));
        (LaurentPoly::from_coeffs(0, g).scale(&c), qa, qb)
    }

    /// Associate with lowest exponent 0 and positive leading coefficient.
    fn normalized_associate(&self) -> LaurentPoly {
        let mut p = LaurentPoly {
            lowest: 0,
            coeffs: self.coeffs.clone(),
        };
        if p.leading_coeff().is_some_and(|c| c.is_negative()) {
            p = -p;
        }
        p
    }

    /// Renders the polynomial in the given variable name, highest power first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ if e < 0 => format!("{var}^{{{e}}}"),
                _ => format!("{var}^{e}"),
            };
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
}

pub(crate) fn pow_rational(x: &BigRational, e: i64) -> BigRational {
    match e.cmp(&0) {
        Ordering::Equal => BigRational::one(),
        Ordering::Greater => num_traits::pow(x.clone(), e as usize),
        Ordering::Less => num_traits::pow(x.recip(), (-e) as usize),
    }
}

fn dense_content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for (i, c) in v.iter().enumerate() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
        // once the gcd fits a machine word, finish in u64
        if let Some(mut s) = g.to_u64().filter(|&s| s > 0) {
            for c in &v[i + 1..] {
                if s == 1 {
                    break;
                }
                let r = (c.magnitude() % s).to_u64().expect("residue fits");
                s = s.gcd(&r);
            }
            return BigInt::from(s);
        }
    }
    g
}

fn small(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(|c| c.to_i64()).collect()
}

fn max_abs(v: &[i64]) -> u128 {
    v.iter()
        .map(|x| x.unsigned_abs() as u128)
        .max()
        .unwrap_or(0)
}

/// Product of dense ascending coefficient vectors; machine integers when
/// the result provably fits.
fn dense_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if let (Some(x), Some(y)) = (small(a), small(b)) {
        let fits = max_abs(&x)
            .checked_mul(max_abs(&y))
            .and_then(|m| m.checked_mul(x.len().min(y.len()) as u128))
            .is_some_and(|m| m < 1 << 126);
        if fits {
            let mut out = vec![0i128; x.len() + y.len() - 1];
            for (i, &p) in x.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                for (j, &q) in y.iter().enumerate() {
                    out[i + j] += p as i128 * q as i128;
                }
            }
            return out.into_iter().map(BigInt::from).collect();
        }
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, p) in a.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        for (j, q) in b.iter().enumerate() {
            if !q.is_zero() {
                out[i + j] += p * q;
            }
        }
    }
    out
}

/// Exact division in machine integers; `Err(())` on overflow.
fn small_div_exact(a: &[i64], b: &[i64]) -> Result<Option<Vec<BigInt>>, ()> {
    let mut r: Vec<i128> = a.iter().map(|&x| x as i128).collect();
    let db = b.len() - 1;
    let lb = b[db] as i128;
    let mut q = vec![0i128; a.len() - db];
    for i in (0..q.len()).rev() {
        let top = r[i + db];
        if top == 0 {
            continue;
        }
        if top % lb != 0 {
            return Ok(None);
        }
        let qi = top / lb;
        for (k, &bk) in b.iter().enumerate() {
            let t = qi.checked_mul(bk as i128).ok_or(())?;
            r[i + k] = r[i + k].checked_sub(t).ok_or(())?;
        }
        q[i] = qi;
    }
    if r.iter().any(|&c| c != 0) {
        return Ok(None);
    }
    Ok(Some(q.into_iter().map(BigInt::from).collect()))
}

pub(super) fn dense_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if a.len() < b.len() {
        return None;
    }
    if let (Some(x), Some(y)) = (small(a), small(b)) {
        if let Ok(q) = small_div_exact(&x, &y) {
            return q;
        }
    }
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let top = &r[i + db];
        if top.is_zero() {
            continue;
        }
        let (qi, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (k, bk) in b.iter().enumerate() {
            r[i + k] -= &qi * bk;
        }
        q[i] = qi;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(q)
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            lowest: self.lowest,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

fn add_signed(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let lo = a.lowest.min(b.lowest);
    let hi = a.highest().max(b.highest());
    let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (k, c) in a.coeffs.iter().enumerate() {
        coeffs[(a.lowest - lo) as usize + k] += c;
    }
    for (k, c) in b.coeffs.iter().enumerate() {
        let slot = &mut coeffs[(b.lowest - lo) as usize + k];
        if negate_b {
            *slot -= c;
        } else {
            *slot += c;
        }
    }
    LaurentPoly::from_coeffs(lo, coeffs)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_signed(self, rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_signed(self, rhs, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if let (Some(a), Some(b)) = (self.halved(), rhs.halved()) {
            return (&a * &b).substitute_power(2);
        }
        LaurentPoly::from_coeffs(
            self.lowest + rhs.lowest,
            dense_mul(&self.coeffs, &rhs.coeffs),
        )
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("v"))
    }
}
