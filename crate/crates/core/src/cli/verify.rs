//! The identity suite behind `verify`.
//!
//! Checks are independent and run concurrently; the report keeps the fixed
//! order of [`suite_names`].

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::coeff::{gl_motive, pochhammer, LaurentPoly, MotiveScalar};
use crate::dtinv::{
    affine_grading, euler_limit, framed_series, gv_extract, hilbert_series_zy,
    macmahon_coefficients, macmahon_product, mckay_grading, mckay_series, omega_extract,
    pt_euler_symbolic, universal_series, universal_series_via_pow, Convention, OmegaTable,
};
use crate::quiver::{DimVector, Quiver};
use crate::repcount::{
    aut_motive, count_preprojective, interpolate_kac, kac_bruteforce, potential_histogram, Fq,
    KacTable,
};
use crate::roots::{AffineRootSystem, StabilityMode};
use crate::series::{Grading, MSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        format!(
            "{} {:<22} {} — {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.title,
            self.detail
        )
    }

    pub fn to_json(&self) -> Value {
        json!({"name": self.name, "title": self.title, "passed": self.passed, "detail": self.detail})
    }
}

type CheckResult = Result<String, String>;

struct Params<'a> {
    qs: Option<&'a [u64]>,
    order: Option<u32>,
}

impl Params<'_> {
    fn qs(&self, default: &[u64]) -> Vec<u64> {
        self.qs.map_or_else(|| default.to_vec(), |q| q.to_vec())
    }

    fn order(&self, default: u32) -> u32 {
        self.order.unwrap_or(default)
    }
}

struct Check {
    name: String,
    title: &'static str,
    run: Box<dyn Fn(&Params) -> CheckResult + Send + Sync>,
}

fn check(
    name: impl Into<String>,
    title: &'static str,
    run: impl Fn(&Params) -> CheckResult + Send + Sync + 'static,
) -> Check {
    Check {
        name: name.into(),
        title,
        run: Box::new(run),
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn l() -> MotiveScalar {
    MotiveScalar::lefschetz()
}

fn int(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

fn d(v: &[u32]) -> DimVector {
    DimVector(v.to_vec())
}

fn heine(p: &Params) -> CheckResult {
    let n = p.order(8);
    let g = Grading::indexed(1, n);
    let arg = MotiveScalar::one()
        .checked_div(&(&MotiveScalar::one() - &l()))
        .ok_or("1 - L is zero")?;
    let lhs = MSeries::monomial(&g, &[1], arg)
        .map_err(err)?
        .exp_lambda()
        .map_err(err)?;
    for k in 0..=n {
        let rhs = pochhammer(&l(), k).inv().ok_or("(L)_k vanishes")?;
        ensure(lhs.coeff(&[k]) == rhs, || format!("coefficient of x^{k}"))?;
    }
    Ok(format!("Exp(x/(1-L)) = Σ x^n/(L)_n to order {n}"))
}

fn roundtrip(p: &Params) -> CheckResult {
    let n = p.order(6);
    let g = Grading::total_degree(["x", "y", "z"], n).map_err(err)?;
    let v = MotiveScalar::v;
    let samples: Vec<Vec<(Vec<u32>, MotiveScalar)>> = vec![
        vec![(vec![1, 0, 0], l())],
        vec![
            (vec![1, 0, 0], v()),
            (vec![0, 1, 1], MotiveScalar::from_int(-3)),
        ],
        vec![
            (vec![0, 0, 1], (&l() + &MotiveScalar::one()).inv().unwrap()),
            (vec![2, 1, 0], MotiveScalar::v_pow(-3)),
            (vec![1, 1, 1], MotiveScalar::from_int(7)),
        ],
    ];
    for terms in samples {
        let f = MSeries::from_terms(&g, terms).map_err(err)?;
        let back = f.exp_lambda().map_err(err)?.log_lambda().map_err(err)?;
        ensure(back == f, || "Log(Exp f) != f".into())?;
        let one_plus = MSeries::one(&g).add(&f).map_err(err)?;
        let again = one_plus
            .log_lambda()
            .map_err(err)?
            .exp_lambda()
            .map_err(err)?;
        ensure(again == one_plus, || "Exp(Log(1+f)) != 1+f".into())?;
    }
    Ok(format!("Log∘Exp and Exp∘Log are identities to order {n}"))
}

fn gl_pochhammer(_: &Params) -> CheckResult {
    let linv = MotiveScalar::v_pow(-2);
    for n in 0..=8u32 {
        let rhs = &MotiveScalar::v_pow(2 * (n * n) as i64) * &pochhammer(&linv, n);
        ensure(gl_motive(n) == rhs, || {
            format!("[GL_{n}] != L^(n²)(L^-1)_n")
        })?;
    }
    for n in 0..=4u32 {
        for q in [2u64, 3, 5] {
            let direct: BigInt = (0..n)
                .map(|k| BigInt::from(q).pow(n) - BigInt::from(q).pow(k))
                .product();
            let val = gl_motive(n).evaluate_at_prime_power(q).map_err(err)?;
            ensure(val == int(&direct), || format!("|GL_{n}(F_{q})|"))?;
        }
    }
    Ok("[GL_n] = L^(n²)(L^-1)_n for n ≤ 8; |GL_n(F_q)| for n ≤ 4".into())
}

/// `|GL_2(𝔽_q)|` and `|𝔽_q^× × 𝔽_q^×|` by enumeration.
fn aut_counts(q: u64) -> Result<(u64, u64), String> {
    let f = Fq::new(q).map_err(err)?;
    let n = q as u8;
    let mut gl2 = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for e in 0..n {
                    if f.sub(f.mul(a, e), f.mul(b, c)) != 0 {
                        gl2 += 1;
                    }
                }
            }
        }
    }
    let units = (1..n).count() as u64;
    Ok((gl2, units * units))
}

fn aut(p: &Params) -> CheckResult {
    for q in p.qs(&[2]) {
        let (gl2, torus) = aut_counts(q)?;
        let s2 = aut_motive(&[2], 4)
            .evaluate_at_prime_power(q)
            .map_err(err)?;
        ensure(s2 == int(&gl2.into()), || format!("Aut(S²) at q = {q}"))?;
        let st = aut_motive(&[1, 1], 2)
            .evaluate_at_prime_power(q)
            .map_err(err)?;
        ensure(st == int(&torus.into()), || format!("Aut(S⊕T) at q = {q}"))?;
    }
    Ok("[Aut X] matches |Aut X| for X = S², S⊕T".into())
}

/// `L^{χ(α,α)} #R(Π,α)/|GL_α|` against the `y^α` coefficient of `A_U`.
fn u_motive_points(quiver: &Quiver, au: &MSeries, cases: &[(DimVector, Vec<u64>)]) -> CheckResult {
    let mut n = 0;
    for (alpha, qs) in cases {
        let chi = quiver.euler_form(alpha, alpha).map_err(err)?;
        let coeff = au.coeff(alpha.entries());
        for &q in qs {
            let count = count_preprojective(quiver, alpha, q).map_err(err)?.count;
            let gl: BigInt = alpha
                .entries()
                .iter()
                .map(|&a| {
                    gl_motive(a)
                        .evaluate_at_prime_power(q)
                        .map(|r| r.to_integer())
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(err)?
                .into_iter()
                .product();
            let lhs = coeff.evaluate_at_prime_power(q).map_err(err)?;
            let rhs =
                int(&count) * BigRational::from_integer(BigInt::from(q)).pow(chi as i32) / int(&gl);
            ensure(lhs == rhs, || {
                format!("α = {alpha}, q = {q}: {lhs} != {rhs}")
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} (α, q) points agree"))
}

fn u_motive_jordan(p: &Params) -> CheckResult {
    let g = Grading::indexed(1, 3);
    let au = universal_series(&KacTable::jordan(&g), &g).map_err(err)?;
    let small = p.qs(&[2, 3, 5, 7]);
    let big = p.qs(&[2, 3]);
    let cases = vec![(d(&[1]), small.clone()), (d(&[2]), small), (d(&[3]), big)];
    u_motive_points(&Quiver::jordan(), &au, &cases)
}

fn u_motive_kronecker(p: &Params) -> CheckResult {
    let quiver = Quiver::kronecker();
    let g = Grading::with_caps(["y0", "y1"], vec![1, 1], 2, vec![1, 1]).map_err(err)?;
    let alphas = [d(&[1, 0]), d(&[0, 1]), d(&[1, 1])];
    let kac = KacTable::from_oracle(&quiver, &alphas, &[2, 3, 4]).map_err(err)?;
    let au = universal_series(&kac, &g).map_err(err)?;
    u_motive_points(&quiver, &au, &[(d(&[1, 1]), p.qs(&[2, 3, 5]))])
}

fn reduction_cases() -> Vec<(Quiver, DimVector)> {
    vec![
        (Quiver::jordan(), d(&[1])),
        (Quiver::jordan(), d(&[2])),
        (Quiver::kronecker(), d(&[1, 1])),
    ]
}

fn reduction(p: &Params) -> CheckResult {
    let mut n = 0;
    for (quiver, alpha) in reduction_cases() {
        let hat = quiver.loop_double();
        for q in p.qs(&[2, 3]) {
            let hist = potential_histogram(&hat, &alpha, q).map_err(err)?;
            let lhs = BigInt::from(hist[0]) - BigInt::from(hist[1]);
            let pre = count_preprojective(&quiver, &alpha, q).map_err(err)?.count;
            let di = hat.cut_degree(&alpha).map_err(err)?;
            let rhs = BigInt::from(q).pow(di as u32) * pre;
            ensure(lhs == rhs, || {
                format!("α = {alpha}, q = {q}: {lhs} != {rhs}")
            })?;
            n += 1;
        }
    }
    Ok(format!("#w⁻¹(0) - #w⁻¹(1) = q^d_I #R(Π) at {n} points"))
}

fn fiber_uniformity(p: &Params) -> CheckResult {
    let mut n = 0;
    for (quiver, alpha) in reduction_cases() {
        for q in p.qs(&[3]) {
            let hist = potential_histogram(&quiver.loop_double(), &alpha, q).map_err(err)?;
            ensure(hist[1..].iter().all(|&c| c == hist[1]), || {
                format!("α = {alpha}, q = {q}: fibers {:?}", &hist[1..])
            })?;
            n += 1;
        }
    }
    Ok(format!("nonzero fibers of tr W agree at {n} points"))
}

/// Brute-force samples equal `expected(q)`; enough samples must
/// interpolate to `expected` exactly.
fn kac_points(
    quiver: &Quiver,
    alpha: &DimVector,
    qs: &[u64],
    expected: &LaurentPoly,
) -> Result<(), String> {
    let mut samples = Vec::new();
    for &q in qs {
        let a = BigInt::from(kac_bruteforce(quiver, alpha, q).map_err(err)?);
        let want = expected.eval(&BigRational::from_integer(q.into()));
        ensure(int(&a) == want, || {
            format!("a_{alpha}({q}) = {a}, expected {want}")
        })?;
        samples.push((q, a));
    }
    let degree = expected.highest().max(0) as usize;
    if samples.len() > degree {
        let poly = interpolate_kac(&samples, degree).map_err(err)?;
        ensure(&poly == expected, || {
            format!("a_{alpha} interpolates to {}", poly.display_in("q"))
        })?;
    }
    Ok(())
}

fn kac_kronecker(p: &Params) -> CheckResult {
    let q_plus_1 = LaurentPoly::from_i64s(0, &[1, 1]);
    let qs = p.qs(&[2, 3, 4, 5]);
    kac_points(&Quiver::kronecker(), &d(&[1, 1]), &qs, &q_plus_1)?;
    kac_points(&Quiver::kronecker().opposite(), &d(&[1, 1]), &qs, &q_plus_1)?;
    Ok("a_(1,1)(q) = q + 1 in both orientations".into())
}

fn kac_jordan(p: &Params) -> CheckResult {
    let q = LaurentPoly::from_i64s(1, &[1]);
    for n in 1..=2 {
        kac_points(&Quiver::jordan(), &d(&[n]), &p.qs(&[2, 3]), &q)?;
    }
    Ok("a_n(q) = q for n = 1, 2".into())
}

fn path_independence(p: &Params) -> CheckResult {
    let n = p.order(4);
    let g = Grading::indexed(1, n);
    let j = KacTable::jordan(&g);
    ensure(
        universal_series(&j, &g).map_err(err)? == universal_series_via_pow(&j, &g).map_err(err)?,
        || "Jordan".into(),
    )?;
    let a1 = AffineRootSystem::from_type("A1~").map_err(err)?;
    let g = affine_grading(&a1, n.min(3));
    let k = KacTable::affine(&a1, &g);
    ensure(
        universal_series(&k, &g).map_err(err)? == universal_series_via_pow(&k, &g).map_err(err)?,
        || "A1~".into(),
    )?;
    Ok("Exp and Pow constructions of A_U agree".into())
}

fn omega(tag: &str, p: &Params) -> CheckResult {
    let n = p.order(3);
    let sys = AffineRootSystem::from_type(tag).map_err(err)?;
    let g = affine_grading(&sys, n);
    let table = omega_extract(&universal_series(&KacTable::affine(&sys, &g), &g).map_err(err)?)
        .map_err(err)?;
    let l_plus = &l() + &MotiveScalar::from_int(sys.rank() as i64);
    let roots = sys.positive_roots_up_to(n);
    let mut checked = 0;
    for e in g.admitted_exponents() {
        if e.iter().all(|&x| x == 0) {
            continue;
        }
        let alpha = DimVector(e);
        let want = match roots.iter().find(|r| r.alpha == alpha) {
            Some(r) if r.kind.is_real() => MotiveScalar::one(),
            Some(_) => l_plus.clone(),
            None => MotiveScalar::zero(),
        };
        let got = table.get(&alpha);
        ensure(got == want, || format!("Ω_{alpha} = {}", got.display_l()))?;
        ensure(got.is_zero() || crate::dtinv::is_nonnegative(&got), || {
            format!("Ω_{alpha} fails positivity")
        })?;
        checked += 1;
    }
    Ok(format!("{checked} coefficients to α₀ ≤ {n}"))
}

fn factorization(tag: &str, p: &Params) -> CheckResult {
    let n = p.order(4);
    let sys = AffineRootSystem::from_type(tag).map_err(err)?;
    let g = mckay_grading(&sys, n);
    let omega = OmegaTable::from_kac(&KacTable::affine(&sys, &g));
    let mut w = vec![0; sys.vertex_count()];
    w[0] = 1;
    for mode in [StabilityMode::Pt, StabilityMode::Dt, StabilityMode::Ncdt] {
        let z = framed_series(&omega, &sys.stability_vector(mode, n), &w, &g).map_err(err)?;
        let product = mckay_series(&sys, mode, n)
            .map_err(err)?
            .with_convention(Convention::PlusS);
        ensure(&z == product.y_series(), || format!("{mode}"))?;
    }
    Ok(format!("Z_ζ = ∏ Z_α for pt, dt, ncdt to s-order {n}"))
}

fn dtpt(tag: &str, p: &Params) -> CheckResult {
    let n = p.order(5);
    let sys = AffineRootSystem::from_type(tag).map_err(err)?;
    let pt = mckay_series(&sys, StabilityMode::Pt, n).map_err(err)?;
    let dt = mckay_series(&sys, StabilityMode::Dt, n).map_err(err)?;
    let zy = hilbert_series_zy(sys.rank(), n).map_err(err)?;
    ensure(pt.mul(&zy).map_err(err)? == dt, || {
        "Z_DT != Z_PT·Z_Y".into()
    })?;
    Ok(format!("Z_DT = Z_PT·Z_Y to s-order {n}"))
}

fn euler(tag: &str, p: &Params) -> CheckResult {
    let n = p.order(5);
    let sys = AffineRootSystem::from_type(tag).map_err(err)?;
    for mode in [StabilityMode::Pt, StabilityMode::Dt, StabilityMode::Ncdt] {
        let lim = euler_limit(&mckay_series(&sys, mode, n).map_err(err)?).map_err(err)?;
        ensure(lim == macmahon_product(&sys, mode, n).map_err(err)?, || {
            format!("{mode}")
        })?;
    }
    Ok(format!("Euler limits are MacMahon products to s-order {n}"))
}

fn macmahon(_: &Params) -> CheckResult {
    let got = macmahon_coefficients(5);
    let want: Vec<BigInt> = [1, 1, 3, 6, 13, 24]
        .iter()
        .map(|&x| BigInt::from(x))
        .collect();
    ensure(got == want, || format!("M(q) = {got:?}"))?;
    Ok("M(q) = 1 + q + 3q² + 6q³ + 13q⁴ + 24q⁵ + …".into())
}

/// Largest `Q`-degree of a finite positive root.
pub(crate) fn max_height(sys: &AffineRootSystem) -> u32 {
    sys.finite_positive_roots()
        .iter()
        .map(|b| b.total())
        .max()
        .unwrap_or(0)
}

fn gv(tag: &str, p: &Params) -> CheckResult {
    let sys = AffineRootSystem::from_type(tag).map_err(err)?;
    let n = p.order(max_height(&sys));
    let table = gv_extract(&pt_euler_symbolic(&sys, n).map_err(err)?).map_err(err)?;
    let finite: Vec<Vec<u32>> = sys
        .finite_positive_roots()
        .iter()
        .map(|b| b.entries()[1..].to_vec())
        .filter(|b| b.iter().sum::<u32>() <= n)
        .collect();
    for beta in &finite {
        ensure(table.get(0, beta) == BigInt::from(-1), || {
            format!("n_0,{beta:?} = {}", table.get(0, beta))
        })?;
    }
    for (beta, ns) in table.iter() {
        for (g, v) in ns.iter().enumerate() {
            let expected = if g == 0 && finite.contains(beta) {
                -BigInt::one()
            } else {
                BigInt::zero()
            };
            ensure(*v == expected, || format!("n_{g},{beta:?} = {v}"))?;
        }
    }
    Ok(format!(
        "n_0,β = -1 on {} finite roots, all else 0",
        finite.len()
    ))
}

fn checks() -> Vec<Check> {
    let mut out = vec![
        check("heine", "q-binomial theorem", heine),
        check("lambda-roundtrip", "Exp/Log inverse", roundtrip),
        check("gl-pochhammer", "motive of GL_n", gl_pochhammer),
        check("aut", "motive of the automorphism group", aut),
        check(
            "u-motive:jordan",
            "universal series vs point counts",
            u_motive_jordan,
        ),
        check(
            "u-motive:kronecker",
            "universal series vs point counts",
            u_motive_kronecker,
        ),
        check("reduction", "First dimensional reduction", reduction),
        check(
            "reduction:fibers",
            "cut scaling: fiber uniformity",
            fiber_uniformity,
        ),
        check("kac:kronecker", "absolutely indecomposables", kac_kronecker),
        check("kac:jordan", "absolutely indecomposables", kac_jordan),
        check(
            "path-independence",
            "Exp vs Pow universal series",
            path_independence,
        ),
    ];
    for tag in ["A1~", "A2~", "D4~"] {
        out.push(check(
            format!("omega:{tag}"),
            "DT invariants of the McKay quiver",
            move |p| omega(tag, p),
        ));
    }
    for tag in ["A1~", "A2~"] {
        out.push(check(
            format!("factorization:{tag}"),
            "framed series factorization",
            move |p| factorization(tag, p),
        ));
    }
    for tag in ["A1~", "A2~", "D4~"] {
        out.push(check(
            format!("dtpt:{tag}"),
            "DT/PT correspondence",
            move |p| dtpt(tag, p),
        ));
    }
    out.push(check("macmahon", "MacMahon function", macmahon));
    for tag in ["A1~", "A2~"] {
        out.push(check(format!("euler:{tag}"), "classical limit", move |p| {
            euler(tag, p)
        }));
    }
    for tag in ["A2~", "D4~"] {
        out.push(check(
            format!("gv:{tag}"),
            "Gopakumar–Vafa invariants",
            move |p| gv(tag, p),
        ));
    }
    out
}

/// Every check name, in report order.
pub fn suite_names() -> Vec<String> {
    checks().into_iter().map(|c| c.name).collect()
}

fn selected(suite: &str, name: &str) -> bool {
    suite == "all" || name == suite || name.starts_with(&format!("{suite}:"))
}

/// Runs the checks selected by `suite` (`all`, a name, or a prefix before
/// `:`); `qs` and `order` override the defaults of every selected check.
pub fn run_suite(
    suite: &str,
    qs: Option<&[u64]>,
    order: Option<u32>,
) -> Result<Vec<CheckOutcome>, String> {
    let chosen: Vec<Check> = checks()
        .into_iter()
        .filter(|c| selected(suite, &c.name))
        .collect();
    if chosen.is_empty() {
        return Err(format!(
            "unknown suite {suite:?}; known checks: {}",
            suite_names().join(", ")
        ));
    }
    let params = Params { qs, order };
    Ok(chosen
        .par_iter()
        .map(|c| {
            let t = Instant::now();
            let r = (c.run)(&params);
            let millis = t.elapsed().as_millis();
            let (passed, detail) = match r {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckOutcome {
                name: c.name.clone(),
                title: c.title,
                passed,
                detail,
                millis,
            }
        })
        .collect())
}
