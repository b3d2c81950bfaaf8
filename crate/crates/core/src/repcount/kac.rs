//! Kac polynomials: brute-force counts of absolutely indecomposable
//! representations, and tables of `a_α(q)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::field::Fq;
use super::linalg;
use super::{decode, encode, guard, Layout, RepCountError, KAC_LIMIT, KAC_MAX_TOTAL};
use crate::coeff::{poly_to_json, LaurentPoly};
use crate::quiver::{DimVector, Quiver};
use crate::roots::AffineRootSystem;
use crate::series::Grading;

/// A generator of `G_α`: an elementary operation at one vertex.
#[derive(Clone, Copy, Debug)]
enum Generator {
    /// `I + c·E_{r,s}`.
    Transvection {
        vertex: usize,
        r: usize,
        s: usize,
        c: u8,
    },
    /// `diag(1, …, d, …, 1)` with `d` in slot `r`.
    Scale { vertex: usize, r: usize, d: u8 },
}

fn generators(f: &Fq, alpha: &DimVector) -> Vec<Generator> {
    let mut gens = Vec::new();
    for (vertex, &n) in alpha.entries().iter().enumerate() {
        let n = n as usize;
        for c in 1..f.size() as u8 {
            for r in 0..n {
                for s in 0..n {
                    if r != s {
                        gens.push(Generator::Transvection { vertex, r, s, c });
                    }
                }
                if c != 1 {
                    gens.push(Generator::Scale { vertex, r, d: c });
                }
            }
        }
    }
    gens
}

/// Applies `A_a ↦ g_t A_a g_s^{-1}` for one generator.
fn act(f: &Fq, quiver: &Quiver, layout: &Layout, g: Generator, m: &mut [u8]) {
    for (k, &(s, t)) in quiver.arrows().iter().enumerate() {
        let (off, rows, cols) = layout.blocks[k];
        let at = |r: usize, c: usize| off + r * cols + c;
        match g {
            Generator::Transvection {
                vertex,
                r,
                s: src,
                c,
            } => {
                if t == vertex {
                    // row r += c · row src
                    for j in 0..cols {
                        let v = f.add(m[at(r, j)], f.mul(c, m[at(src, j)]));
                        m[at(r, j)] = v;
                    }
                }
                if s == vertex {
                    // (I + cE)^{-1} = I - cE: column src -= c · column r
                    for i in 0..rows {
                        let v = f.sub(m[at(i, src)], f.mul(c, m[at(i, r)]));
                        m[at(i, src)] = v;
                    }
                }
            }
            Generator::Scale { vertex, r, d } => {
                if t == vertex {
                    for j in 0..cols {
                        m[at(r, j)] = f.mul(d, m[at(r, j)]);
                    }
                }
                if s == vertex {
                    let di = f.inv(d);
                    for i in 0..rows {
                        m[at(i, r)] = f.mul(di, m[at(i, r)]);
                    }
                }
            }
        }
    }
}

/// The endomorphism algebra of a representation as a basis of tuples
/// `(φ_i)` with `φ_t A_a = A_a φ_s`, flattened vertex by vertex.
fn endomorphisms(
    f: &Fq,
    quiver: &Quiver,
    alpha: &DimVector,
    layout: &Layout,
    m: &[u8],
) -> Vec<Vec<u8>> {
    let dims: Vec<usize> = alpha.entries().iter().map(|&a| a as usize).collect();
    let mut base = vec![0usize; dims.len() + 1];
    for i in 0..dims.len() {
        base[i + 1] = base[i] + dims[i] * dims[i];
    }
    let ncols = base[dims.len()];
    let mut rows = Vec::new();
    for (k, &(s, t)) in quiver.arrows().iter().enumerate() {
        let (off, rt, cs) = layout.blocks[k];
        let a = |r: usize, c: usize| m[off + r * cs + c];
        // (φ_t A - A φ_s)[r][c] = Σ_x φ_t[r][x] A[x][c] - Σ_y A[r][y] φ_s[y][c]
        for r in 0..rt {
            for c in 0..cs {
                let mut row = vec![0u8; ncols];
                for x in 0..rt {
                    let col = base[t] + r * rt + x;
                    row[col] = f.add(row[col], a(x, c));
                }
                for y in 0..cs {
                    let col = base[s] + y * cs + c;
                    row[col] = f.sub(row[col], a(r, y));
                }
                rows.push(row);
            }
        }
    }
    linalg::nullspace(f, &rows, ncols)
}

/// End is local with residue field `𝔽_q`: the non-invertible elements form
/// a subspace of codimension one.
fn is_absolutely_indecomposable(
    f: &Fq,
    alpha: &DimVector,
    basis: &[Vec<u8>],
) -> Result<bool, RepCountError> {
    let e = basis.len();
    let q = f.size() as u64;
    let total = guard("endomorphism enumeration", q, e as u64, KAC_LIMIT)?;
    let dims: Vec<usize> = alpha.entries().iter().map(|&a| a as usize).collect();
    let width = basis.first().map_or(0, Vec::len);
    let mut coeffs = vec![0u8; e];
    let mut non_invertible = Vec::new();
    let expected = total / q as u128;
    for index in 0..total {
        decode(index, f.size(), &mut coeffs);
        let mut phi = vec![0u8; width];
        for (c, b) in coeffs.iter().zip(basis) {
            if *c != 0 {
                for (p, x) in phi.iter_mut().zip(b) {
                    *p = f.add(*p, f.mul(*c, *x));
                }
            }
        }
        let mut off = 0;
        let mut invertible = true;
        for &n in &dims {
            if n > 0 && !linalg::is_invertible(f, &phi[off..off + n * n], n) {
                invertible = false;
                break;
            }
            off += n * n;
        }
        if !invertible {
            non_invertible.push(phi);
            if non_invertible.len() as u128 > expected {
                return Ok(false);
            }
        }
    }
    if non_invertible.len() as u128 != expected {
        return Ok(false);
    }
    Ok(linalg::rank(f, &non_invertible, width) + 1 == e)
}

/// Isomorphism classes of absolutely indecomposable `α`-dimensional
/// representations of `Q` over `𝔽_q`, by explicit orbit enumeration.
pub fn kac_bruteforce(quiver: &Quiver, alpha: &DimVector, q: u64) -> Result<u64, RepCountError> {
    quiver.check_dim(alpha)?;
    let f = Fq::new(q)?;
    if alpha.is_zero() {
        return Ok(0);
    }
    if alpha.total() > KAC_MAX_TOTAL {
        return Err(RepCountError::TooLarge {
            what: "Kac enumeration (total dimension)",
            size: alpha.total().to_string(),
            limit: KAC_MAX_TOTAL as u128,
        });
    }
    let layout = Layout::new(quiver, alpha);
    let total = guard("Kac enumeration", q, layout.len as u64, KAC_LIMIT)?;
    let gens = generators(&f, alpha);
    let qq = f.size();
    let mut seen = vec![false; total as usize];
    let mut count = 0;
    let mut rep = vec![0u8; layout.len];
    let mut next = vec![0u8; layout.len];
    for start in 0..total {
        if seen[start as usize] {
            continue;
        }
        // the whole orbit of `start`
        seen[start as usize] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            decode(x, qq, &mut rep);
            for &g in &gens {
                next.copy_from_slice(&rep);
                act(&f, quiver, &layout, g, &mut next);
                let y = encode(&next, qq);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        decode(start, qq, &mut rep);
        let basis = endomorphisms(&f, quiver, alpha, &layout, &rep);
        if is_absolutely_indecomposable(&f, alpha, &basis)? {
            count += 1;
        }
    }
    Ok(count)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KacSource {
    ClosedForm,
    OracleInterpolated,
}

impl KacSource {
    pub fn tag(self) -> &'static str {
        match self {
            KacSource::ClosedForm => "closed-form",
            KacSource::OracleInterpolated => "oracle-interpolated",
        }
    }
}

/// Which `α` a table speaks for.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum KacCoverage {
    /// Complete on every exponent the grading admits: absent means `a_α = 0`.
    Within(Grading),
    /// Only the listed entries are known.
    Listed,
}

/// `α ↦ a_α(q)`, polynomials in `q` stored as [`LaurentPoly`] in `q`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KacTable {
    entries: BTreeMap<DimVector, LaurentPoly>,
    source: KacSource,
    coverage: KacCoverage,
}

impl KacTable {
    pub fn new(source: KacSource, coverage: KacCoverage) -> Self {
        KacTable {
            entries: BTreeMap::new(),
            source,
            coverage,
        }
    }

    /// Jordan quiver: `a_n(q) = q` for every `n ≥ 1`.
    pub fn jordan(grading: &Grading) -> Self {
        let mut t = Self::new(KacSource::ClosedForm, KacCoverage::Within(grading.clone()));
        for e in grading.admitted_exponents() {
            if e[0] > 0 {
                t.insert(DimVector(e), LaurentPoly::from_i64s(1, &[1]));
            }
        }
        t
    }

    /// Affine ADE quiver: `a_α = 1` on real roots, `q + l` on imaginary ones.
    pub fn affine(system: &AffineRootSystem, grading: &Grading) -> Self {
        let mut t = Self::new(KacSource::ClosedForm, KacCoverage::Within(grading.clone()));
        let n_max = grading
            .admitted_exponents()
            .iter()
            .map(|e| e[0])
            .max()
            .unwrap_or(0);
        let l = system.rank() as i64;
        for root in system.positive_roots_up_to(n_max) {
            if !grading.admits(root.alpha.entries()) {
                continue;
            }
            let p = if root.kind.is_real() {
                LaurentPoly::one()
            } else {
                LaurentPoly::from_i64s(0, &[l, 1])
            };
            t.insert(root.alpha, p);
        }
        t
    }

    /// Brute-force counts at every `q`, interpolated to degree `1 - χ(α,α)`.
    pub fn from_oracle(
        quiver: &Quiver,
        alphas: &[DimVector],
        qs: &[u64],
    ) -> Result<Self, RepCountError> {
        let mut t = Self::new(KacSource::OracleInterpolated, KacCoverage::Listed);
        for alpha in alphas {
            let samples = qs
                .iter()
                .map(|&q| Ok((q, BigInt::from(kac_bruteforce(quiver, alpha, q)?))))
                .collect::<Result<Vec<_>, RepCountError>>()?;
            let chi = quiver.euler_form(alpha, alpha)?;
            let degree = (1 - chi).max(0) as usize;
            t.insert(alpha.clone(), super::interpolate_kac(&samples, degree)?);
        }
        Ok(t)
    }

    /// A listed table remembers zeros, so they stay within its coverage.
    pub fn insert(&mut self, alpha: DimVector, poly: LaurentPoly) {
        if poly.is_zero() && self.coverage != KacCoverage::Listed {
            self.entries.remove(&alpha);
        } else {
            self.entries.insert(alpha, poly);
        }
    }

    pub fn source(&self) -> KacSource {
        self.source
    }

    pub fn coverage(&self) -> &KacCoverage {
        &self.coverage
    }

    pub fn entries(&self) -> impl Iterator<Item = (&DimVector, &LaurentPoly)> {
        self.entries.iter().filter(|(_, p)| !p.is_zero())
    }

    pub fn get(&self, alpha: &DimVector) -> Option<&LaurentPoly> {
        self.entries.get(alpha).filter(|p| !p.is_zero())
    }

    /// `Some(a_α)` when the table speaks for `α` (zero if absent there),
    /// `None` when `α` is outside its coverage.
    pub fn lookup(&self, alpha: &DimVector) -> Option<LaurentPoly> {
        if let Some(p) = self.entries.get(alpha) {
            return Some(p.clone());
        }
        match &self.coverage {
            KacCoverage::Within(g) if g.admits(alpha.entries()) => Some(LaurentPoly::zero()),
            _ => None,
        }
    }

    /// First entry whose degree differs from `1 - χ(α,α)`.
    pub fn degree_violation(&self, quiver: &Quiver) -> Option<DimVector> {
        self.entries()
            .find(|(alpha, p)| {
                let chi = quiver.euler_form(alpha, alpha).unwrap_or(i64::MIN);
                p.lowest() < 0 || p.highest() != 1 - chi
            })
            .map(|(a, _)| a.clone())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source.tag(),
            "entries": self.entries.iter().map(|(a, p)| json!({
                "dim": a.entries(),
                "poly": p.display_in("q"),
                "coeffs": poly_to_json(p),
            })).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: &[u32]) -> DimVector {
        DimVector(v.to_vec())
    }

    #[test]
    fn small_kac_counts() {
        assert_eq!(kac_bruteforce(&Quiver::jordan(), &d(&[1]), 3).unwrap(), 3);
        assert_eq!(kac_bruteforce(&Quiver::jordan(), &d(&[2]), 2).unwrap(), 2);
        assert_eq!(
            kac_bruteforce(&Quiver::kronecker(), &d(&[1, 1]), 2).unwrap(),
            3
        );
        assert_eq!(
            kac_bruteforce(&Quiver::kronecker(), &d(&[0, 0]), 2).unwrap(),
            0
        );
        // simple roots and a non-root
        assert_eq!(
            kac_bruteforce(&Quiver::kronecker(), &d(&[1, 0]), 3).unwrap(),
            1
        );
        let a2 = Quiver::new(2, vec![(0, 1)]).unwrap();
        assert_eq!(kac_bruteforce(&a2, &d(&[1, 1]), 3).unwrap(), 1);
        assert_eq!(kac_bruteforce(&a2, &d(&[2, 1]), 2).unwrap(), 0);
    }

    #[test]
    fn orientation_independence() {
        let k = Quiver::kronecker();
        for q in [2, 3] {
            for alpha in [d(&[1, 1]), d(&[1, 2]), d(&[2, 1])] {
                assert_eq!(
                    kac_bruteforce(&k, &alpha, q).unwrap(),
                    kac_bruteforce(&k.opposite(), &alpha, q).unwrap()
                );
            }
        }
    }

    #[test]
    fn oracle_tables() {
        let t = KacTable::from_oracle(&Quiver::kronecker(), &[d(&[1, 1])], &[2, 3, 4]).unwrap();
        assert_eq!(t.get(&d(&[1, 1])).unwrap().display_in("q"), "q + 1");
        assert_eq!(t.degree_violation(&Quiver::kronecker()), None);
        let j = KacTable::from_oracle(&Quiver::jordan(), &[d(&[1]), d(&[2])], &[2, 3]).unwrap();
        for n in 1..=2 {
            assert_eq!(j.get(&d(&[n])).unwrap(), &LaurentPoly::from_i64s(1, &[1]));
        }
        assert_eq!(j.lookup(&d(&[3])), None);
    }

    #[test]
    fn closed_form_tables() {
        let g = Grading::indexed(1, 3);
        let j = KacTable::jordan(&g);
        assert_eq!(j.entries().count(), 3);
        assert_eq!(j.degree_violation(&Quiver::jordan()), None);
        let a1 = AffineRootSystem::from_type("A1~").unwrap();
        let g = Grading::indexed(2, 2);
        let t = KacTable::affine(&a1, &g);
        assert_eq!(t.get(&d(&[1, 1])).unwrap().display_in("q"), "q + 1");
        assert_eq!(t.get(&d(&[1, 0])), Some(&LaurentPoly::one()));
        assert_eq!(t.lookup(&d(&[2, 0])), Some(LaurentPoly::zero()));
        assert_eq!(t.degree_violation(a1.quiver()), None);
    }
}
