//! Finite-field oracles: exact point counts of representation varieties,
//! preprojective varieties and fibers of the potential, brute-force Kac
//! polynomials, and the motive of automorphism groups.
//!
//! Matrices of an arrow `a: i → j` are `α_j × α_i`, row-major, so a
//! representation is one flat vector of field elements and the whole
//! variety is enumerated by counting in base `q`.

mod field;
mod kac;
mod linalg;

pub use field::Fq;
pub use kac::{kac_bruteforce, KacCoverage, KacSource, KacTable};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::coeff::json::bigint_to_json;
use crate::coeff::{pochhammer, LaurentPoly, MotiveScalar};
use crate::quiver::{DimVector, LoopDoubleQuiver, Quiver, QuiverError};

pub const PREPROJECTIVE_LIMIT: u128 = 100_000_000;
pub const FIBER_LIMIT: u128 = 100_000_000;
pub const KAC_LIMIT: u128 = 10_000_000;
pub const KAC_MAX_TOTAL: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepCountError {
    #[error("{what}: {size} exceeds the enumeration limit {limit}")]
    TooLarge {
        what: &'static str,
        size: String,
        limit: u128,
    },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("no field table for q = {0} (supported: primes up to 251, and 4, 8, 9)")]
    UnsupportedFieldSize(u64),
    #[error("field element {c} is out of range for q = {q}")]
    InvalidFieldElement { c: u64, q: u64 },
    #[error("{got} samples cannot determine a polynomial of degree {degree}")]
    InsufficientSamples { got: usize, degree: usize },
    #[error("interpolating polynomial has non-integral coefficients")]
    NonIntegerCoefficients,
    #[error("samples are not on one polynomial of degree {degree} (disagreement at q = {q})")]
    SampleMismatch { degree: usize, q: u64 },
    #[error("repeated sample point q = {0}")]
    RepeatedSample(u64),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CountMethod {
    DirectEnumeration,
    LinearFiber,
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMethod::DirectEnumeration => "direct-enumeration",
            CountMethod::LinearFiber => "linear-fiber",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CountReport {
    pub quiver: String,
    pub dim: DimVector,
    pub q: u64,
    pub count: BigInt,
    pub method: CountMethod,
}

impl CountReport {
    pub fn to_json(&self) -> Value {
        json!({
            "quiver": self.quiver,
            "dim": self.dim.entries(),
            "q": self.q,
            "count": bigint_to_json(&self.count),
            "method": self.method.to_string(),
        })
    }
}

/// `q^d`, or `None` past `limit`.
fn bounded_pow(q: u64, d: u64, limit: u128) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..d {
        acc = acc.checked_mul(q as u128)?;
        if acc > limit {
            return None;
        }
    }
    Some(acc)
}

fn guard(what: &'static str, q: u64, d: u64, limit: u128) -> Result<u128, RepCountError> {
    bounded_pow(q, d, limit).ok_or_else(|| RepCountError::TooLarge {
        what,
        size: format!("{q}^{d}"),
        limit,
    })
}

/// Offsets of the arrow matrices inside a flat representation vector.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    /// `(offset, rows, cols)` per arrow.
    pub blocks: Vec<(usize, usize, usize)>,
    pub len: usize,
}

impl Layout {
    pub fn new(q: &Quiver, alpha: &DimVector) -> Self {
        let mut blocks = Vec::with_capacity(q.arrows().len());
        let mut len = 0;
        for &(s, t) in q.arrows() {
            let (r, c) = (alpha.0[t] as usize, alpha.0[s] as usize);
            blocks.push((len, r, c));
            len += r * c;
        }
        Layout { blocks, len }
    }
}

/// Digits of `index` in base `q`, least significant first.
pub(crate) fn decode(mut index: u128, q: usize, out: &mut [u8]) {
    for d in out.iter_mut() {
        *d = (index % q as u128) as u8;
        index /= q as u128;
    }
}

pub(crate) fn encode(digits: &[u8], q: usize) -> u128 {
    digits
        .iter()
        .rev()
        .fold(0u128, |acc, &d| acc * q as u128 + d as u128)
}

/// `#R(Π_Q, α)(𝔽_q)`: for every tuple of unstarred matrices, the
/// preprojective relation is linear in the starred ones, so the fiber has
/// `q^{dim ker}` points.
pub fn count_preprojective(
    quiver: &Quiver,
    alpha: &DimVector,
    q: u64,
) -> Result<CountReport, RepCountError> {
    quiver.check_dim(alpha)?;
    let f = Fq::new(q)?;
    let layout = Layout::new(quiver, alpha);
    let total = guard(
        "preprojective enumeration",
        q,
        layout.len as u64,
        PREPROJECTIVE_LIMIT,
    )?;
    // starred matrices are the transposed shapes, packed in the same order
    let dual = Layout::new(&quiver.opposite(), alpha);
    let m = quiver.vertex_count();
    let mut row_base = vec![0usize; m + 1];
    for k in 0..m {
        row_base[k + 1] = row_base[k] + (alpha.0[k] * alpha.0[k]) as usize;
    }
    let nrows = row_base[m];
    let ncols = dual.len;
    let arrows = quiver.arrows();
    let qq = q as usize;

    let count: u128 = (0..total)
        .into_par_iter()
        .map_init(
            || (vec![0u8; layout.len], vec![vec![0u8; ncols]; nrows]),
            |(a, rel), index| {
                decode(index, qq, a);
                for row in rel.iter_mut() {
                    row.fill(0);
                }
                for (k, &(s, t)) in arrows.iter().enumerate() {
                    let (off, rt, cs) = layout.blocks[k];
                    let (doff, _, _) = dual.blocks[k];
                    let at = |r: usize, c: usize| a[off + r * cs + c];
                    // A* is cs × rt; entry (x, y) at doff + x*rt + y
                    // (A A*)[r][c] at vertex t: coefficient A[r][x] on A*[x][c]
                    for r in 0..rt {
                        for c in 0..rt {
                            let row = row_base[t] + r * rt + c;
                            for x in 0..cs {
                                let col = doff + x * rt + c;
                                rel[row][col] = f.add(rel[row][col], at(r, x));
                            }
                        }
                    }
                    // -(A* A)[r][c] at vertex s: coefficient -A[y][c] on A*[r][y]
                    for r in 0..cs {
                        for c in 0..cs {
                            let row = row_base[s] + r * cs + c;
                            for y in 0..rt {
                                let col = doff + r * rt + y;
                                rel[row][col] = f.sub(rel[row][col], at(y, c));
                            }
                        }
                    }
                }
                let rank = linalg::rank(&f, rel, ncols);
                (q as u128).pow((ncols - rank) as u32)
            },
        )
        .sum();
    Ok(CountReport {
        quiver: String::new(),
        dim: alpha.clone(),
        q,
        count: BigInt::from(count),
        method: CountMethod::LinearFiber,
    })
}

/// Number of points of `R(Q̂, α)(𝔽_q)` on each fiber of `tr W`, indexed by
/// field element.
pub fn potential_histogram(
    hat: &LoopDoubleQuiver,
    alpha: &DimVector,
    q: u64,
) -> Result<Vec<u128>, RepCountError> {
    let quiver = hat.quiver();
    quiver.check_dim(alpha)?;
    let f = Fq::new(q)?;
    let layout = Layout::new(quiver, alpha);
    let total = guard(
        "potential fiber enumeration",
        q,
        layout.len as u64,
        FIBER_LIMIT,
    )?;
    let terms = hat.potential_terms();
    let qq = q as usize;
    let hist = (0..total)
        .into_par_iter()
        .fold(
            || (vec![0u8; layout.len], vec![0u128; qq]),
            |(mut m, mut hist), index| {
                decode(index, qq, &mut m);
                let mut w = 0u8;
                for &(a, b, lt, ls) in &terms {
                    let (ao, rt, cs) = layout.blocks[a];
                    let (bo, _, _) = layout.blocks[b];
                    let (lto, _, _) = layout.blocks[lt];
                    let (lso, _, _) = layout.blocks[ls];
                    let am = |r: usize, c: usize| m[ao + r * cs + c];
                    let bm = |r: usize, c: usize| m[bo + r * rt + c];
                    // tr(A A* L_t) = Σ A[r][x] A*[x][c] L_t[c][r]
                    for r in 0..rt {
                        for c in 0..rt {
                            let mut s = 0u8;
                            for x in 0..cs {
                                s = f.add(s, f.mul(am(r, x), bm(x, c)));
                            }
                            w = f.add(w, f.mul(s, m[lto + c * rt + r]));
                        }
                    }
                    // tr(A* A L_s) = Σ A*[r][y] A[y][c] L_s[c][r]
                    for r in 0..cs {
                        for c in 0..cs {
                            let mut s = 0u8;
                            for y in 0..rt {
                                s = f.add(s, f.mul(bm(r, y), am(y, c)));
                            }
                            w = f.sub(w, f.mul(s, m[lso + c * cs + r]));
                        }
                    }
                }
                hist[w as usize] += 1;
                (m, hist)
            },
        )
        .map(|(_, h)| h)
        .reduce(
            || vec![0u128; qq],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(hist)
}

/// `#{M ∈ R(Q̂, α)(𝔽_q) : tr W(M) = c}`, `c` a field-element index.
pub fn count_potential_fiber(
    hat: &LoopDoubleQuiver,
    alpha: &DimVector,
    q: u64,
    c: u64,
) -> Result<CountReport, RepCountError> {
    if c >= q {
        return Err(RepCountError::InvalidFieldElement { c, q });
    }
    let hist = potential_histogram(hat, alpha, q)?;
    Ok(CountReport {
        quiver: String::new(),
        dim: alpha.clone(),
        q,
        count: BigInt::from(hist[c as usize]),
        method: CountMethod::DirectEnumeration,
    })
}

/// The integer polynomial of degree `≤ degree` through the samples; extra
/// samples must lie on it.
pub fn interpolate_kac(
    samples: &[(u64, BigInt)],
    degree: usize,
) -> Result<LaurentPoly, RepCountError> {
    if samples.len() < degree + 1 {
        return Err(RepCountError::InsufficientSamples {
            got: samples.len(),
            degree,
        });
    }
    for (i, (qi, _)) in samples.iter().enumerate() {
        if samples[..i].iter().any(|(qj, _)| qj == qi) {
            return Err(RepCountError::RepeatedSample(*qi));
        }
    }
    let pts = &samples[..=degree];
    let rat = |n: u64| BigRational::from_integer(BigInt::from(n));
    // Lagrange basis, expanded into monomial coefficients
    let mut coeffs = vec![BigRational::zero(); degree + 1];
    for (i, (qi, yi)) in pts.iter().enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (qj, _)) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * rat(*qj);
            }
            basis = next;
            denom *= rat(*qi) - rat(*qj);
        }
        let scale = BigRational::from_integer(yi.clone()) / denom;
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * &scale;
        }
    }
    if coeffs.iter().any(|c| !c.is_integer()) {
        return Err(RepCountError::NonIntegerCoefficients);
    }
    let poly = LaurentPoly::from_coeffs(0, coeffs.into_iter().map(|c| c.to_integer()).collect());
    for (qk, yk) in &samples[degree + 1..] {
        if poly.eval(&rat(*qk)) != BigRational::from_integer(yk.clone()) {
            return Err(RepCountError::SampleMismatch { degree, q: *qk });
        }
    }
    Ok(poly)
}

/// `[Aut X] = L^{dim End X} · ∏_i (L^{-1})_{n_i}` for `X = ⊕ X_i^{n_i}`.
pub fn aut_motive(multiplicities: &[u32], end_dim: u32) -> MotiveScalar {
    let linv = MotiveScalar::v_pow(-2);
    multiplicities
        .iter()
        .fold(MotiveScalar::v_pow(2 * end_dim as i64), |acc, &n| {
            &acc * &pochhammer(&linv, n)
        })
}
