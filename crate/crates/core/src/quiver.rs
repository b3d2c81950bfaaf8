//! Quivers, their Euler–Ringel and skew forms, and the loop-double
//! construction carrying the fixed cubic potential
//! `W = Σ_a (a a* l_{t(a)} - a* a l_{s(a)})`.

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::coeff::json::{as_array, as_i64, as_object, field};
use crate::coeff::JsonError;
use crate::roots::AffineRootSystem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("dimension vector has {found} entries, quiver has {expected} vertices")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("arrow {0}->{1} leaves the vertex range")]
    ArrowOutOfRange(usize, usize),
    #[error("unknown quiver `{0}` (expected jordan, kronecker, affine:<TYPE> or a JSON file)")]
    UnknownQuiver(String),
    #[error(transparent)]
    Json(#[from] JsonError),
}

/// A dimension vector `α ∈ ℕ^{Q₀}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn new(entries: Vec<u32>) -> Self {
        DimVector(entries)
    }

    pub fn zero(m: usize) -> Self {
        DimVector(vec![0; m])
    }

    pub fn unit(m: usize, i: usize) -> Self {
        let mut v = vec![0; m];
        v[i] = 1;
        DimVector(v)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn dot(&self, other: &DimVector) -> i64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a as i64 * b as i64)
            .sum()
    }

    /// Parses `"1,1"`.
    pub fn parse(s: &str) -> Result<Self, std::num::ParseIntError> {
        s.split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map(DimVector)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl From<Vec<u32>> for DimVector {
    fn from(v: Vec<u32>) -> Self {
        DimVector(v)
    }
}

/// A finite quiver. Multi-arrows are repeated pairs; loops are allowed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self, QuiverError> {
        if let Some(&(s, t)) = arrows
            .iter()
            .find(|&&(s, t)| s >= vertices || t >= vertices)
        {
            return Err(QuiverError::ArrowOutOfRange(s, t));
        }
        Ok(Quiver { vertices, arrows })
    }

    /// One vertex, one loop.
    pub fn jordan() -> Self {
        Quiver {
            vertices: 1,
            arrows: vec![(0, 0)],
        }
    }

    /// Two vertices, two arrows `0 → 1`.
    pub fn kronecker() -> Self {
        Quiver {
            vertices: 2,
            arrows: vec![(0, 1), (0, 1)],
        }
    }

    /// Built-in names `jordan`, `kronecker`, `affine:<TYPE>`.
    pub fn from_name(name: &str) -> Result<Self, QuiverError> {
        match name {
            "jordan" => Ok(Self::jordan()),
            "kronecker" => Ok(Self::kronecker()),
            _ => {
                let tag = name
                    .strip_prefix("affine:")
                    .ok_or_else(|| QuiverError::UnknownQuiver(name.to_string()))?;
                AffineRootSystem::from_type(tag)
                    .map(|r| r.quiver().clone())
                    .map_err(|_| QuiverError::UnknownQuiver(name.to_string()))
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// The same quiver with every arrow reversed.
    pub fn opposite(&self) -> Self {
        Quiver {
            vertices: self.vertices,
            arrows: self.arrows.iter().map(|&(s, t)| (t, s)).collect(),
        }
    }

    pub fn check_dim(&self, alpha: &DimVector) -> Result<(), QuiverError> {
        if alpha.len() != self.vertices {
            return Err(QuiverError::DimensionMismatch {
                expected: self.vertices,
                found: alpha.len(),
            });
        }
        Ok(())
    }

    /// `χ(α,β) = Σ α_iβ_i - Σ_{a:i→j} α_iβ_j`.
    pub fn euler_form(&self, alpha: &DimVector, beta: &DimVector) -> Result<i64, QuiverError> {
        self.check_dim(alpha)?;
        self.check_dim(beta)?;
        let arrows: i64 = self
            .arrows
            .iter()
            .map(|&(s, t)| alpha.0[s] as i64 * beta.0[t] as i64)
            .sum();
        Ok(alpha.dot(beta) - arrows)
    }

    /// `⟨α,β⟩ = χ(α,β) - χ(β,α)`.
    pub fn skew_form(&self, alpha: &DimVector, beta: &DimVector) -> Result<i64, QuiverError> {
        Ok(self.euler_form(alpha, beta)? - self.euler_form(beta, alpha)?)
    }

    /// The matrix of the skew form on unit vectors.
    pub fn skew_matrix(&self) -> Vec<Vec<i64>> {
        let m = self.vertices;
        let mut s = vec![vec![0i64; m]; m];
        for &(a, b) in &self.arrows {
            // χ(e_a, e_b) gains -1, χ(e_b, e_a) is untouched
            s[a][b] -= 1;
            s[b][a] += 1;
        }
        s
    }

    /// `dim R(Q,α) = Σ_{a:i→j} α_iα_j`.
    pub fn rep_dimension(&self, alpha: &DimVector) -> Result<u64, QuiverError> {
        self.check_dim(alpha)?;
        Ok(self
            .arrows
            .iter()
            .map(|&(s, t)| alpha.0[s] as u64 * alpha.0[t] as u64)
            .sum())
    }

    /// `dim G_α = Σ α_i²`.
    pub fn group_dimension(&self, alpha: &DimVector) -> Result<u64, QuiverError> {
        self.check_dim(alpha)?;
        Ok(alpha.0.iter().map(|&a| a as u64 * a as u64).sum())
    }

    /// Arrow counts `i → j` agree with `j → i` for all pairs.
    pub fn is_symmetric(&self) -> bool {
        let m = self.vertices;
        let mut count = vec![vec![0usize; m]; m];
        for &(s, t) in &self.arrows {
            count[s][t] += 1;
        }
        (0..m).all(|i| (0..m).all(|j| count[i][j] == count[j][i]))
    }

    pub fn loop_double(&self) -> LoopDoubleQuiver {
        let mut arrows = self.arrows.clone();
        let n = self.arrows.len();
        let originals: Vec<usize> = (0..n).collect();
        let duals: Vec<usize> = (n..2 * n).collect();
        arrows.extend(self.arrows.iter().map(|&(s, t)| (t, s)));
        let loops: Vec<usize> = (2 * n..2 * n + self.vertices).collect();
        arrows.extend((0..self.vertices).map(|i| (i, i)));
        LoopDoubleQuiver {
            base: self.clone(),
            doubled: Quiver {
                vertices: self.vertices,
                arrows,
            },
            originals,
            duals,
            loops,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vertices": self.vertices,
            "arrows": self.arrows.iter().map(|&(s, t)| json!([s, t])).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, QuiverError> {
        let obj = as_object(v)?;
        let m = as_i64(field(obj, "vertices")?)?;
        let m = usize::try_from(m).map_err(|_| JsonError(format!("bad vertex count {m}")))?;
        let mut arrows = Vec::new();
        for a in as_array(field(obj, "arrows")?)? {
            let pair = as_array(a)?;
            if pair.len() != 2 {
                return Err(JsonError(format!("arrow must be [s, t], found {a}")).into());
            }
            let idx = |x: &Value| -> Result<usize, JsonError> {
                let n = as_i64(x)?;
                usize::try_from(n).map_err(|_| JsonError(format!("bad vertex {n}")))
            };
            arrows.push((idx(&pair[0])?, idx(&pair[1])?));
        }
        Self::new(m, arrows)
    }
}

/// `Q̂`: the base arrows `a`, their reverses `a*`, and one loop `l_i` per
/// vertex. The loops form the cut `I`, the reversed arrows the cut `I'`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LoopDoubleQuiver {
    base: Quiver,
    doubled: Quiver,
    originals: Vec<usize>,
    duals: Vec<usize>,
    loops: Vec<usize>,
}

impl LoopDoubleQuiver {
    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn quiver(&self) -> &Quiver {
        &self.doubled
    }

    /// Indices into `quiver().arrows()`.
    pub fn originals(&self) -> &[usize] {
        &self.originals
    }

    /// `duals()[k]` is the reverse of `originals()[k]`.
    pub fn duals(&self) -> &[usize] {
        &self.duals
    }

    /// `loops()[i]` is the loop at vertex `i`.
    pub fn loops(&self) -> &[usize] {
        &self.loops
    }

    /// `d_I(α) = Σ α_i²` for the loop cut.
    pub fn cut_degree(&self, alpha: &DimVector) -> Result<u64, QuiverError> {
        self.doubled.group_dimension(alpha)
    }

    /// The terms of `W` as `(a, a*, l_{t(a)}, l_{s(a)})` index tuples.
    pub fn potential_terms(&self) -> Vec<(usize, usize, usize, usize)> {
        self.originals
            .iter()
            .zip(&self.duals)
            .map(|(&a, &b)| {
                let (s, t) = self.doubled.arrows[a];
                (a, b, self.loops[t], self.loops[s])
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: &[u32]) -> DimVector {
        DimVector(v.to_vec())
    }

    #[test]
    fn euler_forms() {
        let j = Quiver::jordan();
        for n in 0..5 {
            assert_eq!(j.euler_form(&d(&[n]), &d(&[n])).unwrap(), 0);
        }
        let k = Quiver::kronecker();
        assert_eq!(k.euler_form(&d(&[1, 1]), &d(&[1, 1])).unwrap(), 0);
        assert_eq!(k.euler_form(&d(&[1, 0]), &d(&[0, 1])).unwrap(), -2);
        assert_eq!(k.skew_form(&d(&[1, 0]), &d(&[0, 1])).unwrap(), -2);
        assert_eq!(
            k.euler_form(&d(&[1]), &d(&[1, 1])),
            Err(QuiverError::DimensionMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn skew_matrix_matches_form() {
        let k = Quiver::kronecker();
        let s = k.skew_matrix();
        assert_eq!(s, vec![vec![0, -2], vec![2, 0]]);
    }

    #[test]
    fn loop_doubles() {
        let j = Quiver::jordan().loop_double();
        assert_eq!(j.quiver().vertex_count(), 1);
        assert_eq!(j.quiver().arrows(), &[(0, 0), (0, 0), (0, 0)]);
        let k = Quiver::kronecker().loop_double();
        let mut arrows = k.quiver().arrows().to_vec();
        arrows.sort();
        assert_eq!(arrows, vec![(0, 0), (0, 1), (0, 1), (1, 0), (1, 0), (1, 1)]);
        assert!(k.quiver().is_symmetric());
        let bare = Quiver::new(3, vec![]).unwrap().loop_double();
        assert_eq!(bare.quiver().arrows(), &[(0, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn doubled_euler_form() {
        let q = Quiver::new(3, vec![(0, 1), (1, 2), (2, 2), (0, 2)]).unwrap();
        let hat = q.loop_double();
        let a = d(&[1, 2, 0]);
        let b = d(&[2, 1, 3]);
        let lhs = hat.quiver().euler_form(&a, &b).unwrap();
        let rhs = q.euler_form(&a, &b).unwrap() + q.euler_form(&b, &a).unwrap() - 2 * a.dot(&b);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cut_degrees() {
        let j = Quiver::jordan().loop_double();
        assert_eq!(j.cut_degree(&d(&[1])).unwrap(), 1);
        assert_eq!(j.cut_degree(&d(&[3])).unwrap(), 9);
        let k = Quiver::kronecker().loop_double();
        assert_eq!(k.cut_degree(&d(&[1, 1])).unwrap(), 2);
    }

    #[test]
    fn json_round_trip() {
        let k = Quiver::kronecker();
        let v = k.to_json();
        assert_eq!(v.to_string(), r#"{"arrows":[[0,1],[0,1]],"vertices":2}"#);
        assert_eq!(Quiver::from_json(&v).unwrap(), k);
        assert!(matches!(
            Quiver::from_json(&serde_json::json!({"vertices": 1, "arrows": [[0, 1]]})),
            Err(QuiverError::ArrowOutOfRange(0, 1))
        ));
    }

    #[test]
    fn names() {
        assert_eq!(Quiver::from_name("jordan").unwrap(), Quiver::jordan());
        assert_eq!(Quiver::from_name("affine:A1~").unwrap().vertex_count(), 2);
        assert!(Quiver::from_name("nope").is_err());
    }
}
