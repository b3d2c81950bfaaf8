//! Affine ADE root systems.
//!
//! Vertex 0 is the extending vertex. The finite positive roots `Δ°₊` live on
//! vertices `1..=l` and come from closing the simple roots under simple
//! reflections; affine positive roots with `α₀ ≤ N` come from the same
//! closure in the affine Weyl group, cut off at `α₀ ≤ N`. Every positive real
//! root is reached from a simple root by height-increasing reflections, and
//! along such a path each coordinate only grows, so the cutoff loses nothing.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::quiver::{DimVector, Quiver};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootsError {
    #[error("unknown affine type `{0}` (expected A1~, A2~, …, D4~, …, E6~, E7~, E8~)")]
    UnknownType(String),
    #[error("unknown group `{0}` (expected cyclic:n, bindihedral:n, bintet, binoct, binico)")]
    UnknownGroup(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum AffineType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl AffineType {
    pub fn parse(tag: &str) -> Result<Self, RootsError> {
        let bad = || RootsError::UnknownType(tag.to_string());
        let body = tag.strip_suffix('~').ok_or_else(bad)?;
        let (family, rank) =
            body.split_at(body.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        let l: usize = rank.parse().map_err(|_| bad())?;
        match (family, l) {
            ("A", l) if l >= 1 => Ok(AffineType::A(l)),
            ("D", l) if l >= 4 => Ok(AffineType::D(l)),
            ("E", 6) => Ok(AffineType::E6),
            ("E", 7) => Ok(AffineType::E7),
            ("E", 8) => Ok(AffineType::E8),
            _ => Err(bad()),
        }
    }

    /// `l`: vertices other than the extending one.
    pub fn rank(self) -> usize {
        match self {
            AffineType::A(l) | AffineType::D(l) => l,
            AffineType::E6 => 6,
            AffineType::E7 => 7,
            AffineType::E8 => 8,
        }
    }

    /// `|Δ°₊|` of the finite type.
    pub fn finite_positive_count(self) -> usize {
        match self {
            AffineType::A(l) => l * (l + 1) / 2,
            AffineType::D(l) => l * (l - 1),
            AffineType::E6 => 36,
            AffineType::E7 => 63,
            AffineType::E8 => 120,
        }
    }

    /// Oriented edges, pointing away from vertex 0.
    fn arrows(self) -> Vec<(usize, usize)> {
        let edges: Vec<(usize, usize)> = match self {
            AffineType::A(1) => return vec![(0, 1), (0, 1)],
            AffineType::A(l) => {
                let mut a: Vec<_> = (0..l).map(|i| (i, i + 1)).collect();
                a.push((0, l));
                return a;
            }
            AffineType::D(l) => {
                let mut e = vec![(0, 4), (1, 4), (2, l), (3, l)];
                e.extend((4..l).map(|i| (i, i + 1)));
                e
            }
            AffineType::E6 => vec![(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)],
            AffineType::E7 => {
                let mut e: Vec<_> = (0..6).map(|i| (i, i + 1)).collect();
                e.push((3, 7));
                e
            }
            AffineType::E8 => {
                let mut e: Vec<_> = (0..7).map(|i| (i, i + 1)).collect();
                e.push((5, 8));
                e
            }
        };
        orient_from_zero(self.rank() + 1, &edges)
    }

    fn marks(self) -> Vec<u32> {
        match self {
            AffineType::A(l) => vec![1; l + 1],
            AffineType::D(l) => {
                let mut d = vec![1, 1, 1, 1];
                d.extend(std::iter::repeat_n(2, l - 3));
                d
            }
            AffineType::E6 => vec![1, 2, 3, 2, 1, 2, 1],
            AffineType::E7 => vec![1, 2, 3, 4, 3, 2, 1, 2],
            AffineType::E8 => vec![1, 2, 3, 4, 5, 6, 4, 2, 3],
        }
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineType::A(l) => write!(f, "A{l}~"),
            AffineType::D(l) => write!(f, "D{l}~"),
            AffineType::E6 => f.write_str("E6~"),
            AffineType::E7 => f.write_str("E7~"),
            AffineType::E8 => f.write_str("E8~"),
        }
    }
}

/// Orients the edges of a tree along breadth-first distance from vertex 0.
fn orient_from_zero(m: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut dist = vec![usize::MAX; m];
    dist[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == u && dist[y] == usize::MAX {
                    dist[y] = dist[u] + 1;
                    queue.push_back(y);
                }
            }
        }
    }
    edges
        .iter()
        .map(|&(a, b)| if dist[a] <= dist[b] { (a, b) } else { (b, a) })
        .collect()
}

/// Finite subgroups of `SL₂(ℂ)` up to conjugacy.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum McKayGroup {
    /// `ℤ/n`, `n ≥ 2`.
    Cyclic(usize),
    /// Binary dihedral of order `4n`, `n ≥ 2`.
    BinaryDihedral(usize),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

impl McKayGroup {
    pub fn parse(s: &str) -> Result<Self, RootsError> {
        let bad = || RootsError::UnknownGroup(s.to_string());
        let num = |x: &str| x.parse::<usize>().map_err(|_| bad());
        match s {
            "bintet" => Ok(McKayGroup::BinaryTetrahedral),
            "binoct" => Ok(McKayGroup::BinaryOctahedral),
            "binico" => Ok(McKayGroup::BinaryIcosahedral),
            _ => match s.split_once(':') {
                Some(("cyclic", n)) if num(n)? >= 2 => Ok(McKayGroup::Cyclic(num(n)?)),
                Some(("bindihedral", n)) if num(n)? >= 2 => Ok(McKayGroup::BinaryDihedral(num(n)?)),
                _ => Err(bad()),
            },
        }
    }

    pub fn affine_type(self) -> AffineType {
        match self {
            McKayGroup::Cyclic(n) => AffineType::A(n - 1),
            McKayGroup::BinaryDihedral(n) => AffineType::D(n + 2),
            McKayGroup::BinaryTetrahedral => AffineType::E6,
            McKayGroup::BinaryOctahedral => AffineType::E7,
            McKayGroup::BinaryIcosahedral => AffineType::E8,
        }
    }

    pub fn order(self) -> usize {
        match self {
            McKayGroup::Cyclic(n) => n,
            McKayGroup::BinaryDihedral(n) => 4 * n,
            McKayGroup::BinaryTetrahedral => 24,
            McKayGroup::BinaryOctahedral => 48,
            McKayGroup::BinaryIcosahedral => 120,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum RootKind {
    /// `β + nδ`, `β ∈ Δ°₊`, `n ≥ 1`.
    RealPlus,
    /// `β + nδ`, `β ∈ Δ°₋`, `n ≥ 1`.
    RealMinus,
    /// `β ∈ Δ°₊`.
    RealFinite,
    /// `nδ`, `n ≥ 1`.
    Imaginary,
}

impl RootKind {
    pub fn is_real(self) -> bool {
        self != RootKind::Imaginary
    }

    pub fn tag(self) -> &'static str {
        match self {
            RootKind::RealPlus => "re+",
            RootKind::RealMinus => "re-",
            RootKind::RealFinite => "re-finite",
            RootKind::Imaginary => "im",
        }
    }
}

/// A positive root `α = β + nδ` with `n = α₀`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ClassifiedRoot {
    pub alpha: DimVector,
    pub kind: RootKind,
    pub n: u32,
    /// The finite part `β = α - α₀δ`, supported away from vertex 0.
    pub beta: Vec<i64>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum StabilityMode {
    Pt,
    Dt,
    Ncdt,
}

impl StabilityMode {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pt" => Some(StabilityMode::Pt),
            "dt" => Some(StabilityMode::Dt),
            "ncdt" => Some(StabilityMode::Ncdt),
            _ => None,
        }
    }

    /// The roots whose local factors enter the series of this mode.
    pub fn selects(self, root: &ClassifiedRoot) -> bool {
        match self {
            StabilityMode::Pt => root.kind == RootKind::RealMinus,
            StabilityMode::Dt => matches!(root.kind, RootKind::RealMinus | RootKind::Imaginary),
            StabilityMode::Ncdt => true,
        }
    }
}

impl fmt::Display for StabilityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabilityMode::Pt => "pt",
            StabilityMode::Dt => "dt",
            StabilityMode::Ncdt => "ncdt",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineRootSystem {
    ty: AffineType,
    quiver: Quiver,
    delta: DimVector,
    finite_positive: Vec<DimVector>,
}

impl AffineRootSystem {
    pub fn new(ty: AffineType) -> Self {
        let m = ty.rank() + 1;
        let quiver = Quiver::new(m, ty.arrows()).expect("built-in arrows are in range");
        let delta = DimVector(ty.marks());
        let mut sys = AffineRootSystem {
            ty,
            quiver,
            delta,
            finite_positive: Vec::new(),
        };
        let simple: Vec<usize> = (1..m).collect();
        sys.finite_positive = sys
            .reflection_closure(&simple, |_| true)
            .into_iter()
            .map(|r| DimVector(r.into_iter().map(|x| x as u32).collect()))
            .collect();
        sys
    }

    pub fn from_type(tag: &str) -> Result<Self, RootsError> {
        Ok(Self::new(AffineType::parse(tag)?))
    }

    pub fn from_mckay_group(descriptor: &str) -> Result<Self, RootsError> {
        Ok(Self::new(McKayGroup::parse(descriptor)?.affine_type()))
    }

    pub fn affine_type(&self) -> AffineType {
        self.ty
    }

    pub fn tag(&self) -> String {
        self.ty.to_string()
    }

    /// `l`, the number of nontrivial irreducibles on the McKay side.
    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    pub fn vertex_count(&self) -> usize {
        self.ty.rank() + 1
    }

    pub fn delta(&self) -> &DimVector {
        &self.delta
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// `Δ°₊`, sorted.
    pub fn finite_positive_roots(&self) -> &[DimVector] {
        &self.finite_positive
    }

    /// `Δ° = Δ°₊ ∪ -Δ°₊` as signed vectors.
    pub fn finite_roots(&self) -> Vec<Vec<i64>> {
        let pos: Vec<Vec<i64>> = self
            .finite_positive
            .iter()
            .map(|r| r.0.iter().map(|&x| x as i64).collect())
            .collect();
        let neg = pos.iter().map(|r| r.iter().map(|x| -x).collect());
        pos.iter().cloned().chain(neg).collect()
    }

    /// `(α,β) = χ(α,β) + χ(β,α)` on signed vectors.
    pub fn symmetric_form(&self, a: &[i64], b: &[i64]) -> i64 {
        let dot: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        let arrows: i64 = self
            .quiver
            .arrows()
            .iter()
            .map(|&(s, t)| a[s] * b[t] + b[s] * a[t])
            .sum();
        2 * dot - arrows
    }

    /// Positive real roots reachable from the given simple roots through the
    /// given reflections, keeping only those accepted by `keep`.
    fn reflection_closure(&self, simple: &[usize], keep: impl Fn(&[i64]) -> bool) -> Vec<Vec<i64>> {
        let m = self.vertex_count();
        let unit = |i: usize| {
            let mut v = vec![0i64; m];
            v[i] = 1;
            v
        };
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for &i in simple {
            let e = unit(i);
            if keep(&e) && seen.insert(e.clone()) {
                queue.push_back(e);
            }
        }
        while let Some(r) = queue.pop_front() {
            for &i in simple {
                let c = self.symmetric_form(&r, &unit(i));
                if c >= 0 {
                    continue;
                }
                // s_i(r) = r - (r, e_i) e_i, strictly higher
                let mut s = r.clone();
                s[i] -= c;
                if keep(&s) && seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Every positive root with `α₀ ≤ n_max`, classified, sorted by
    /// `(α₀, kind, α)`.
    pub fn positive_roots_up_to(&self, n_max: u32) -> Vec<ClassifiedRoot> {
        let all: Vec<usize> = (0..self.vertex_count()).collect();
        let real = self.reflection_closure(&all, |r| r[0] <= n_max as i64);
        let mut out: Vec<ClassifiedRoot> = real
            .into_iter()
            .map(|r| DimVector(r.into_iter().map(|x| x as u32).collect()))
            .chain((1..=n_max).map(|n| DimVector(self.delta.0.iter().map(|d| d * n).collect())))
            .map(|a| self.classify(&a))
            .collect();
        out.sort_by(|a, b| (a.n, a.kind, &a.alpha).cmp(&(b.n, b.kind, &b.alpha)));
        out
    }

    /// Splits `α` as `β + α₀δ`. Meaningful for roots only.
    pub fn classify(&self, alpha: &DimVector) -> ClassifiedRoot {
        let n = alpha.0[0];
        let beta: Vec<i64> = alpha
            .0
            .iter()
            .zip(&self.delta.0)
            .map(|(&a, &d)| a as i64 - (n * d) as i64)
            .collect();
        let kind = if n == 0 {
            RootKind::RealFinite
        } else if beta.iter().all(|&b| b == 0) {
            RootKind::Imaginary
        } else if beta.iter().all(|&b| b >= 0) {
            RootKind::RealPlus
        } else {
            RootKind::RealMinus
        };
        ClassifiedRoot {
            alpha: alpha.clone(),
            kind,
            n,
            beta,
        }
    }

    /// The roots with `α₀ ≤ n_max` selected by `mode`.
    pub fn stability_select(&self, mode: StabilityMode, n_max: u32) -> Vec<ClassifiedRoot> {
        self.positive_roots_up_to(n_max)
            .into_iter()
            .filter(|r| mode.selects(r))
            .collect()
    }

    /// A stability vector realizing `mode` on all roots with `α₀ ≤ n_max`:
    /// `ζ^± = (-r ± ε, 1, …, 1)` with `r = |δ| - 1`, `ε = 1/(2(n_max+1))`
    /// (`+` for PT, `-` for DT), and `(-1, …, -1)` for NCDT.
    pub fn stability_vector(&self, mode: StabilityMode, n_max: u32) -> Vec<BigRational> {
        let int = |x: i64| BigRational::from_integer(BigInt::from(x));
        let m = self.vertex_count();
        if mode == StabilityMode::Ncdt {
            return vec![int(-1); m];
        }
        let r = self.delta.total() as i64 - 1;
        let eps = BigRational::new(BigInt::from(1), BigInt::from(2 * (n_max as i64 + 1)));
        let z0 = match mode {
            StabilityMode::Pt => int(-r) + eps,
            _ => int(-r) - eps,
        };
        std::iter::once(z0).chain((1..m).map(|_| int(1))).collect()
    }
}
