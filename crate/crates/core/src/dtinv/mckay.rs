//! McKay products: local factors `Z_α`, the series `Z_PT`, `Z_DT`,
//! `Z_NCDT` and `Z_Y`, all computed in `y`-variables and presented in the
//! geometric variables `s = y^δ`, `Q^β = y^{-β}`.
//!
//! Every series here is produced in the `Z(-s, Q)` convention (`y₀ ↦ -y₀`
//! relative to the framed series), and carries a flag saying so.

use rayon::prelude::*;
use serde_json::{json, Value};

use super::DtError;
use crate::coeff::json::{as_array, as_i64, as_object, field};
use crate::coeff::{scalar_from_json, scalar_to_json, JsonError, MotiveScalar};
use crate::roots::{AffineRootSystem, ClassifiedRoot, RootKind, StabilityMode};
use crate::series::{Grading, MSeries};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Convention {
    /// `Z(-s, Q)`: the form of the displayed product formulas.
    MinusS,
    /// `Z(s, Q)`.
    PlusS,
}

impl Convention {
    pub fn tag(self) -> &'static str {
        match self {
            Convention::MinusS => "minus_s",
            Convention::PlusS => "plus_s",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "minus_s" => Some(Convention::MinusS),
            "plus_s" => Some(Convention::PlusS),
            _ => None,
        }
    }
}

/// A series in `(s, Q₁, …, Q_l)` stored natively in `y`-variables, with
/// `y^α = s^{α₀} Q^{α₀δ - α}`. A series without `Q`-variables (`δ = (1)`)
/// is a plain series in `s`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SQSeries {
    series: MSeries,
    delta: Vec<u32>,
    roots_type: Option<String>,
    convention: Convention,
}

/// Truncation for McKay products up to `s`-order `n_max`: weight on `y₀`,
/// caps `2·n_max·δ_i` elsewhere. A product of root monomials with total
/// `α₀ ≤ n_max` never reaches the caps, so nothing but the `s`-order is cut.
pub fn mckay_grading(system: &AffineRootSystem, n_max: u32) -> Grading {
    let m = system.vertex_count();
    let mut weights = vec![0; m];
    weights[0] = 1;
    let caps = system
        .delta()
        .entries()
        .iter()
        .enumerate()
        .map(|(i, &d)| if i == 0 { n_max } else { 2 * n_max * d })
        .collect();
    Grading::with_caps((0..m).map(|i| format!("y{i}")), weights, n_max, caps)
        .expect("McKay gradings are valid")
}

fn s_grading(n_max: u32) -> Grading {
    Grading::total_degree(["s"], n_max).expect("valid")
}

impl SQSeries {
    pub fn new(
        series: MSeries,
        delta: Vec<u32>,
        roots_type: Option<String>,
        convention: Convention,
    ) -> Self {
        SQSeries {
            series,
            delta,
            roots_type,
            convention,
        }
    }

    pub fn y_series(&self) -> &MSeries {
        &self.series
    }

    pub fn delta(&self) -> &[u32] {
        &self.delta
    }

    pub fn roots_type(&self) -> Option<&str> {
        self.roots_type.as_deref()
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn s_order(&self) -> u32 {
        self.series.grading().bound()
    }

    /// The same series in the other sign convention when asked.
    pub fn with_convention(&self, c: Convention) -> Self {
        if c == self.convention {
            return self.clone();
        }
        SQSeries {
            series: self.series.sign_flip(0).expect("y₀ exists"),
            convention: c,
            ..self.clone()
        }
    }

    fn q_exponent(&self, e: &[u32]) -> Vec<i64> {
        let n = e[0];
        e.iter()
            .zip(&self.delta)
            .skip(1)
            .map(|(&a, &d)| (n * d) as i64 - a as i64)
            .collect()
    }

    /// Terms as `(s-degree, Q-exponent, coefficient)`, sorted by `(n, Q)`.
    pub fn sq_terms(&self) -> Vec<(u32, Vec<i64>, &MotiveScalar)> {
        let mut out: Vec<_> = self
            .series
            .terms()
            .map(|(e, c)| (e[0], self.q_exponent(e), c))
            .collect();
        out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        out
    }

    /// The coefficient of `s^n Q^β`.
    pub fn coeff(&self, n: u32, q: &[i64]) -> MotiveScalar {
        if q.len() + 1 != self.delta.len() {
            return MotiveScalar::zero();
        }
        let mut e = vec![n];
        for (&d, &b) in self.delta.iter().skip(1).zip(q) {
            let a = (n * d) as i64 - b;
            if a < 0 {
                return MotiveScalar::zero();
            }
            e.push(a as u32);
        }
        self.series.coeff(&e)
    }

    /// Product; a plain `s`-series is lifted along `s^n ↦ y^{nδ}`.
    pub fn mul(&self, other: &SQSeries) -> Result<SQSeries, DtError> {
        let other = other.with_convention(self.convention);
        let rhs = if other.delta.len() == 1 && self.delta.len() > 1 {
            let lifted = other.series.terms().map(|(e, c)| {
                (
                    self.delta.iter().map(|d| d * e[0]).collect::<Vec<_>>(),
                    c.clone(),
                )
            });
            MSeries::from_terms(self.series.grading(), lifted)?
        } else {
            other.series.clone()
        };
        Ok(SQSeries {
            series: self.series.mul(&rhs)?,
            ..self.clone()
        })
    }

    /// Applies `f` to every coefficient, keeping the presentation.
    pub fn map_coeffs(&self, f: impl Fn(&MotiveScalar) -> MotiveScalar) -> Self {
        SQSeries {
            series: self.series.map_coeffs(|_, c| f(c)),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> Value {
        let g = self.series.grading();
        let vars: Vec<String> = std::iter::once("s".to_string())
            .chain((1..self.delta.len()).map(|i| format!("Q{i}")))
            .collect();
        let mut weights = vec![0; self.delta.len()];
        weights[0] = 1;
        let terms: Vec<Value> = self
            .sq_terms()
            .into_iter()
            .map(|(n, q, c)| {
                let exp: Vec<i64> = std::iter::once(n as i64).chain(q).collect();
                json!({"exp": exp, "coeff": scalar_to_json(c)})
            })
            .collect();
        json!({
            "vars": vars,
            "weights": weights,
            "bound": g.bound(),
            "delta": self.delta,
            "convention": self.convention.tag(),
            "roots_type": self.roots_type,
            "terms": terms,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, JsonError> {
        let obj = as_object(v)?;
        let bound = u32::try_from(as_i64(field(obj, "bound")?)?)
            .map_err(|_| JsonError("bad bound".into()))?;
        let convention = field(obj, "convention")?
            .as_str()
            .and_then(Convention::parse)
            .ok_or_else(|| JsonError("bad convention".into()))?;
        let (grading, delta, roots_type) = match field(obj, "roots_type")? {
            Value::Null => (s_grading(bound), vec![1], None),
            Value::String(tag) => {
                let sys = AffineRootSystem::from_type(tag).map_err(|e| JsonError(e.to_string()))?;
                (
                    mckay_grading(&sys, bound),
                    sys.delta().entries().to_vec(),
                    Some(tag.clone()),
                )
            }
            other => return Err(JsonError(format!("bad roots_type {other}"))),
        };
        let mut terms = Vec::new();
        for t in as_array(field(obj, "terms")?)? {
            let t = as_object(t)?;
            let exp = as_array(field(t, "exp")?)?
                .iter()
                .map(as_i64)
                .collect::<Result<Vec<_>, _>>()?;
            if exp.len() != delta.len() {
                return Err(JsonError(format!("exponent {exp:?} has the wrong length")));
            }
            let n = exp[0];
            let mut e = vec![n];
            for (&d, &b) in delta.iter().skip(1).zip(&exp[1..]) {
                e.push(n * d as i64 - b);
            }
            let e = e
                .into_iter()
                .map(|x| {
                    u32::try_from(x)
                        .map_err(|_| JsonError(format!("exponent {exp:?} is not effective")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if !grading.admits(&e) {
                return Err(JsonError(format!(
                    "exponent {exp:?} outside the truncation"
                )));
            }
            terms.push((e, scalar_from_json(field(t, "coeff")?)?));
        }
        let series = MSeries::from_terms(&grading, terms).map_err(|e| JsonError(e.to_string()))?;
        Ok(SQSeries {
            series,
            delta,
            roots_type,
            convention,
        })
    }
}

/// `(c, e)` pairs with `Z_α = ∏ (1 - c·y^α)^{-e}` in the `(-y₀)` convention.
pub(crate) fn local_factor_terms(root: &ClassifiedRoot, l: usize) -> Vec<(MotiveScalar, i64)> {
    let n = root.n as i64;
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for j in 1..=n {
        // L^{j - n/2} = v^{2j - n}
        match root.kind {
            RootKind::Imaginary => {
                out.push((MotiveScalar::v_pow(2 * j + 2 - n), 1));
                out.push((MotiveScalar::v_pow(2 * j - n), l as i64));
            }
            _ => out.push((MotiveScalar::v_pow(2 * j - n), 1)),
        }
    }
    out
}

/// The local factor `Z_α` after `y₀ ↦ -y₀`.
pub fn local_factor(
    root: &ClassifiedRoot,
    l: usize,
    grading: &Grading,
) -> Result<MSeries, DtError> {
    let mut out = MSeries::one(grading);
    for (c, e) in local_factor_terms(root, l) {
        out = out.mul_geometric(&c, root.alpha.entries(), e)?;
    }
    Ok(out)
}

/// `Z_PT`, `Z_DT` or `Z_NCDT` in the `Z(-s, Q)` convention, as the product
/// of local factors over the selected roots with `α₀ ≤ n_max`.
pub fn mckay_series(
    system: &AffineRootSystem,
    mode: StabilityMode,
    n_max: u32,
) -> Result<SQSeries, DtError> {
    let grading = mckay_grading(system, n_max);
    let l = system.rank();
    let roots = system.stability_select(mode, n_max);
    let factors: Vec<(Vec<u32>, Vec<(MotiveScalar, i64)>)> = roots
        .par_iter()
        .map(|r| (r.alpha.0.clone(), local_factor_terms(r, l)))
        .collect();
    let mut out = MSeries::one(&grading);
    for (alpha, terms) in &factors {
        for (c, e) in terms {
            out = out.mul_geometric(c, alpha, *e)?;
        }
    }
    Ok(SQSeries {
        series: out,
        delta: system.delta().entries().to_vec(),
        roots_type: Some(system.tag()),
        convention: Convention::MinusS,
    })
}

/// `Z_Y(-s) = Pow(Z_{ℂ³}(-s), 1 + l·L^{-1})` with
/// `Z_{ℂ³}(-s) = ∏_{n≥1} ∏_{j=1}^{n} (1 - L^{j+1-n/2} s^n)^{-1}`.
pub fn hilbert_series_zy(l: usize, n_max: u32) -> Result<SQSeries, DtError> {
    let g = s_grading(n_max);
    let mut c3 = MSeries::one(&g);
    for n in 1..=n_max as i64 {
        for j in 1..=n {
            c3 = c3.mul_geometric(&MotiveScalar::v_pow(2 * j + 2 - n), &[n as u32], 1)?;
        }
    }
    let exponent = &MotiveScalar::one() + &MotiveScalar::v_pow(-2).scale_int(&(l as i64).into());
    let series = if l == 0 {
        c3
    } else {
        c3.pow_structure(&exponent)?
    };
    Ok(SQSeries {
        series,
        delta: vec![1],
        roots_type: None,
        convention: Convention::MinusS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(k: i64) -> MotiveScalar {
        MotiveScalar::v_pow(k)
    }

    #[test]
    fn local_factors() {
        let a1 = AffineRootSystem::from_type("A1~").unwrap();
        let g = mckay_grading(&a1, 2);
        let roots = a1.positive_roots_up_to(2);
        let find = |a: &[u32]| roots.iter().find(|r| r.alpha.0 == a).unwrap();
        assert_eq!(
            local_factor(find(&[0, 1]), 1, &g).unwrap(),
            MSeries::one(&g)
        );
        assert_eq!(
            local_factor(find(&[1, 0]), 1, &g).unwrap(),
            MSeries::geometric_factor(&g, &v(1), &[1, 0], 1).unwrap()
        );
        let im = MSeries::geometric_factor(&g, &v(3), &[1, 1], 1)
            .unwrap()
            .mul(&MSeries::geometric_factor(&g, &v(1), &[1, 1], 1).unwrap())
            .unwrap();
        assert_eq!(local_factor(find(&[1, 1]), 1, &g).unwrap(), im);
    }

    #[test]
    fn a1_pt_first_terms() {
        let a1 = AffineRootSystem::from_type("A1~").unwrap();
        let pt = mckay_series(&a1, StabilityMode::Pt, 2).unwrap();
        assert_eq!(pt.coeff(1, &[1]), v(1));
        assert_eq!(pt.coeff(0, &[0]), MotiveScalar::one());
        assert_eq!(pt.convention(), Convention::MinusS);
        let plus = pt.with_convention(Convention::PlusS);
        assert_eq!(plus.coeff(1, &[1]), -v(1));
        assert_eq!(plus.with_convention(Convention::MinusS), pt);
        for tag in ["A1~", "D4~"] {
            let r = AffineRootSystem::from_type(tag).unwrap();
            for mode in [StabilityMode::Pt, StabilityMode::Dt, StabilityMode::Ncdt] {
                let z = mckay_series(&r, mode, 0).unwrap();
                assert_eq!(z.y_series(), &MSeries::one(&mckay_grading(&r, 0)));
            }
        }
    }

    #[test]
    fn zy_closed_forms() {
        let z = hilbert_series_zy(0, 3).unwrap();
        assert_eq!(z.coeff(1, &[]), v(3));
        // Exp((1 + l L^{-1}) Σ_n (L^n - 1)/(L - 1) L^{2-n/2} s^n)
        let n_max = 4;
        let g = s_grading(n_max);
        for l in 0..3i64 {
            let lhs = hilbert_series_zy(l as usize, n_max).unwrap();
            let c = &MotiveScalar::one() + &v(-2).scale_int(&l.into());
            let terms = (1..=n_max as i64).map(|n| {
                let geom = &(&v(2 * n) - &MotiveScalar::one()) / &(&v(2) - &MotiveScalar::one());
                (vec![n as u32], &(&geom * &v(4 - n)) * &c)
            });
            let rhs = MSeries::from_terms(&g, terms)
                .unwrap()
                .exp_lambda()
                .unwrap();
            assert_eq!(lhs.y_series(), &rhs, "l = {l}");
        }
    }

    #[test]
    fn json_round_trip() {
        let a2 = AffineRootSystem::from_type("A2~").unwrap();
        let z = mckay_series(&a2, StabilityMode::Ncdt, 2).unwrap();
        let text = z.to_json().to_string();
        let back = SQSeries::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, z);
        assert_eq!(back.to_json().to_string(), text);
        let zy = hilbert_series_zy(2, 3).unwrap();
        let back = SQSeries::from_json(&zy.to_json()).unwrap();
        assert_eq!(back, zy);
    }
}
