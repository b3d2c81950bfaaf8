use super::SeriesError;

/// Truncation data shared by every series in a computation.
///
/// A monomial `y^e` is kept iff `weights·e ≤ bound` and, when caps are
/// present, `e_i ≤ caps_i` for every `i`. The admitted set is downward
/// closed, so truncation is a ring quotient and Exp/Log commute with it.
///
/// Every variable must be bounded: either its weight is positive or it is
/// capped. Otherwise the truncated ring would be infinite.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Grading {
    vars: Vec<String>,
    weights: Vec<u32>,
    bound: u32,
    caps: Option<Vec<u32>>,
}

impl Grading {
    pub fn new<S: Into<String>>(
        vars: impl IntoIterator<Item = S>,
        weights: Vec<u32>,
        bound: u32,
    ) -> Result<Self, SeriesError> {
        Self::build(
            vars.into_iter().map(Into::into).collect(),
            weights,
            bound,
            None,
        )
    }

    /// Adds per-variable caps to a weighted truncation.
    pub fn with_caps<S: Into<String>>(
        vars: impl IntoIterator<Item = S>,
        weights: Vec<u32>,
        bound: u32,
        caps: Vec<u32>,
    ) -> Result<Self, SeriesError> {
        Self::build(
            vars.into_iter().map(Into::into).collect(),
            weights,
            bound,
            Some(caps),
        )
    }

    /// Total-degree truncation.
    pub fn total_degree<S: Into<String>>(
        vars: impl IntoIterator<Item = S>,
        bound: u32,
    ) -> Result<Self, SeriesError> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        let weights = vec![1; vars.len()];
        Self::build(vars, weights, bound, None)
    }

    /// Variables named `y0, y1, …` with total-degree truncation.
    pub fn indexed(m: usize, bound: u32) -> Self {
        Self::total_degree((0..m).map(|i| format!("y{i}")), bound)
            .expect("indexed gradings are valid")
    }

    fn build(
        vars: Vec<String>,
        weights: Vec<u32>,
        bound: u32,
        caps: Option<Vec<u32>>,
    ) -> Result<Self, SeriesError> {
        if vars.is_empty() {
            return Err(SeriesError::InvalidGrading("no variables".into()));
        }
        if weights.len() != vars.len() {
            return Err(SeriesError::InvalidGrading(format!(
                "{} weights for {} variables",
                weights.len(),
                vars.len()
            )));
        }
        if weights.iter().all(|&w| w == 0) {
            return Err(SeriesError::InvalidGrading("all weights are zero".into()));
        }
        if let Some(c) = &caps {
            if c.len() != vars.len() {
                return Err(SeriesError::InvalidGrading(format!(
                    "{} caps for {} variables",
                    c.len(),
                    vars.len()
                )));
            }
        }
        if caps.is_none() {
            if let Some(i) = weights.iter().position(|&w| w == 0) {
                return Err(SeriesError::UnboundedTruncation(vars[i].clone()));
            }
        }
        Ok(Grading {
            vars,
            weights,
            bound,
            caps,
        })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn caps(&self) -> Option<&[u32]> {
        self.caps.as_deref()
    }

    pub fn weighted_degree(&self, e: &[u32]) -> u64 {
        e.iter()
            .zip(&self.weights)
            .map(|(&a, &w)| a as u64 * w as u64)
            .sum()
    }

    pub fn admits(&self, e: &[u32]) -> bool {
        if e.len() != self.vars.len() || self.weighted_degree(e) > self.bound as u64 {
            return false;
        }
        match &self.caps {
            Some(c) => e.iter().zip(c).all(|(a, c)| a <= c),
            None => true,
        }
    }

    /// Every admitted exponent vector, in lexicographic order.
    pub fn admitted_exponents(&self) -> Vec<Vec<u32>> {
        let m = self.nvars();
        let mut out = Vec::new();
        let mut cur = vec![0u32; m];
        self.enumerate_from(0, 0, &mut cur, &mut out);
        out
    }

    fn enumerate_from(&self, i: usize, used: u64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        let w = self.weights[i] as u64;
        let mut top = match w {
            0 => u64::MAX,
            _ => (self.bound as u64 - used) / w,
        };
        if let Some(c) = &self.caps {
            top = top.min(c[i] as u64);
        }
        for a in 0..=top {
            cur[i] = a as u32;
            self.enumerate_from(i + 1, used + a * w, cur, out);
        }
        cur[i] = 0;
    }

    /// Everything admitted here is admitted by `other`.
    pub fn is_within(&self, other: &Grading) -> bool {
        self.nvars() == other.nvars() && self.admitted_exponents().iter().all(|e| other.admits(e))
    }

    /// Same variables and weights, different bound.
    pub fn with_bound(&self, bound: u32) -> Self {
        Grading {
            bound,
            ..self.clone()
        }
    }
}

/// Total degree: the additive, strictly positive degree driving the Exp/Log
/// recurrences.
pub(crate) fn total_degree(e: &[u32]) -> u64 {
    e.iter().map(|&a| a as u64).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weighted_truncation() {
        let g = Grading::new(["x", "y"], vec![1, 2], 4).unwrap();
        assert!(g.admits(&[4, 0]));
        assert!(g.admits(&[0, 2]));
        assert!(!g.admits(&[1, 2]));
        assert!(!g.admits(&[1]));
    }

    #[test]
    fn zero_weight_needs_a_cap() {
        assert!(matches!(
            Grading::new(["s", "t"], vec![1, 0], 3),
            Err(SeriesError::UnboundedTruncation(v)) if v == "t"
        ));
        let g = Grading::with_caps(["s", "t"], vec![1, 0], 3, vec![3, 5]).unwrap();
        assert!(g.admits(&[3, 5]));
        assert!(!g.admits(&[0, 6]));
        assert!(Grading::new(["s"], vec![0], 3).is_err());
    }

    #[test]
    fn enumeration() {
        let g = Grading::new(["x", "y"], vec![1, 2], 3).unwrap();
        let all = g.admitted_exponents();
        assert_eq!(
            all,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![1, 0],
                vec![1, 1],
                vec![2, 0],
                vec![3, 0]
            ]
        );
        let capped = Grading::with_caps(["s", "t"], vec![1, 0], 1, vec![1, 2]).unwrap();
        assert_eq!(capped.admitted_exponents().len(), 6);
        assert!(g.with_bound(2).is_within(&g));
        assert!(!g.is_within(&g.with_bound(2)));
    }
}
