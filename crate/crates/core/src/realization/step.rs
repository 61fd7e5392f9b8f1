//! Monotone right-continuous step maps `[0,1] -> {1..N}` and chains of them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, in_unit, one, serde_q_vec, zero, Q};

/// A monotone step function in coordinate form: `f(t) = 1 + #{i : s_i <= t}`.
///
/// Repeated coordinates encode skipped values; `s_i = 0` means the value is
/// exceeded from the start and `s_i = 1` that it is only exceeded at the
/// single point `t = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawStep", into = "RawStep")]
pub struct StepFunction {
    n: usize,
    coords: Vec<Q>,
}

#[derive(Serialize, Deserialize)]
struct RawStep {
    #[serde(rename = "N")]
    n: usize,
    #[serde(with = "serde_q_vec")]
    s: Vec<Q>,
}

impl TryFrom<RawStep> for StepFunction {
    type Error = Error;
    fn try_from(r: RawStep) -> Result<Self> {
        StepFunction::new(r.n, r.s)
    }
}

impl From<StepFunction> for RawStep {
    fn from(f: StepFunction) -> Self {
        RawStep { n: f.n, s: f.coords }
    }
}

impl fmt::Debug for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.coords.iter().map(fmt_q).collect();
        write!(f, "step{}({})", self.n, s.join(","))
    }
}

impl StepFunction {
    pub fn new(n: usize, coords: Vec<Q>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("codomain size must be positive".into()));
        }
        if coords.len() != n - 1 {
            return Err(Error::SizeMismatch(format!(
                "{} coordinates for codomain {n}",
                coords.len()
            )));
        }
        if !coords.iter().all(in_unit) || coords.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParameter(format!(
                "coordinates must be nondecreasing in [0,1]: {:?}",
                coords.iter().map(fmt_q).collect::<Vec<_>>()
            )));
        }
        Ok(StepFunction { n, coords })
    }

    /// The constant function with value `v` (up to the endpoint `t = 1`).
    pub fn constant(n: usize, v: usize) -> Result<Self> {
        if v == 0 || v > n {
            return Err(Error::OutOfRange(format!("value {v} not in 1..={n}")));
        }
        let coords = (1..n).map(|i| if i < v { zero() } else { one() }).collect();
        StepFunction::new(n, coords)
    }

    /// Builds a function from its values on `[0,c_1), [c_1,c_2), ..,
    /// [c_k,1]`. Values must be nondecreasing.
    pub fn from_pieces(n: usize, cuts: &[Q], values: &[usize]) -> Result<Self> {
        if values.len() != cuts.len() + 1 {
            return Err(Error::SizeMismatch(format!(
                "{} values for {} cuts",
                values.len(),
                cuts.len()
            )));
        }
        if cuts.windows(2).any(|w| w[0] > w[1]) || !cuts.iter().all(in_unit) {
            return Err(Error::InvalidParameter("cuts must be nondecreasing in [0,1]".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) || values.iter().any(|&v| v == 0 || v > n) {
            return Err(Error::InvalidParameter(format!(
                "values {values:?} are not monotone in 1..={n}"
            )));
        }
        let coords = (1..n)
            .map(|i| match values.iter().position(|&v| v > i) {
                Some(0) => zero(),
                Some(j) => cuts[j - 1].clone(),
                None => one(),
            })
            .collect();
        StepFunction::new(n, coords)
    }

    /// Normalizes a function given by its values on the open pieces between
    /// cuts and at the cuts themselves: `values` alternates
    /// `[piece, cut, piece, .., cut, piece]`. Values at the cuts are forgotten
    /// (they are topologically indistinguishable from the right-continuous
    /// choice), except that monotonicity is still checked.
    pub fn from_raw(n: usize, cuts: &[Q], values: &[usize]) -> Result<Self> {
        if values.len() != 2 * cuts.len() + 1 {
            return Err(Error::SizeMismatch(format!(
                "{} values for {} cuts",
                values.len(),
                cuts.len()
            )));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParameter(format!("values {values:?} are not monotone")));
        }
        let pieces: Vec<usize> = values.iter().step_by(2).copied().collect();
        StepFunction::from_pieces(n, cuts, &pieces)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn eval(&self, t: &Q) -> usize {
        1 + self.coords.iter().filter(|s| *s <= t).count()
    }

    /// Distinct coordinates, i.e. the points where the function may jump.
    pub fn jumps(&self) -> Vec<Q> {
        let mut v = self.coords.clone();
        v.dedup();
        v
    }

    /// `self <= other` pointwise.
    pub fn le(&self, other: &StepFunction) -> bool {
        self.n == other.n && self.coords.iter().zip(&other.coords).all(|(a, b)| a >= b)
    }

    /// Pointwise maximum.
    pub fn max(&self, other: &StepFunction) -> Result<StepFunction> {
        self.check_same(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.min(b).clone())
            .collect();
        StepFunction::new(self.n, coords)
    }

    /// Pointwise minimum.
    pub fn min(&self, other: &StepFunction) -> Result<StepFunction> {
        self.check_same(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.max(b).clone())
            .collect();
        StepFunction::new(self.n, coords)
    }

    pub fn check_same(&self, other: &StepFunction) -> Result<()> {
        if self.n != other.n {
            return Err(Error::CodomainMismatch(self.n, other.n));
        }
        Ok(())
    }
}

/// Sorted distinct breakpoints of several functions together with `0` and
/// `1`; every function involved is constant on `[x_j, x_{j+1})`.
pub fn merged_grid<'a>(fs: impl IntoIterator<Item = &'a StepFunction>) -> Vec<Q> {
    let mut grid = vec![zero(), one()];
    for f in fs {
        grid.extend(f.coords.iter().cloned());
    }
    grid.sort();
    grid.dedup();
    grid
}

/// An increasing chain `f_1 <= .. <= f_M` of step functions into the same
/// codomain: an `(M-1)`-simplex of the path space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPath", into = "RawPath")]
pub struct PathSimplex {
    chains: Vec<StepFunction>,
}

#[derive(Serialize, Deserialize)]
struct RawPath {
    #[serde(rename = "N")]
    n: usize,
    chains: Vec<RawChain>,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct RawChain(#[serde(with = "serde_q_vec")] Vec<Q>);

impl TryFrom<RawPath> for PathSimplex {
    type Error = Error;
    fn try_from(r: RawPath) -> Result<Self> {
        let chains = r
            .chains
            .into_iter()
            .map(|c| StepFunction::new(r.n, c.0))
            .collect::<Result<Vec<_>>>()?;
        PathSimplex::new(chains)
    }
}

impl From<PathSimplex> for RawPath {
    fn from(p: PathSimplex) -> Self {
        RawPath {
            n: p.n(),
            chains: p.chains.into_iter().map(|f| RawChain(f.coords)).collect(),
        }
    }
}

impl PathSimplex {
    pub fn new(chains: Vec<StepFunction>) -> Result<Self> {
        let Some(first) = chains.first() else {
            return Err(Error::InvalidParameter(
                "a path simplex needs at least one chain".into(),
            ));
        };
        for f in &chains {
            first.check_same(f)?;
        }
        if let Some(i) = chains.windows(2).position(|w| !w[0].le(&w[1])) {
            return Err(Error::InvalidParameter(format!(
                "chains {} and {} are not ordered pointwise",
                i + 1,
                i + 2
            )));
        }
        Ok(PathSimplex { chains })
    }

    pub fn pair(f: StepFunction, g: StepFunction) -> Result<Self> {
        PathSimplex::new(vec![f, g])
    }

    pub fn m(&self) -> usize {
        self.chains.len()
    }

    pub fn n(&self) -> usize {
        self.chains[0].n()
    }

    pub fn chains(&self) -> &[StepFunction] {
        &self.chains
    }

    /// `f_l`, 1-indexed.
    pub fn chain(&self, l: usize) -> &StepFunction {
        &self.chains[l - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn evaluation_is_right_continuous() {
        let f = StepFunction::new(2, vec![q(1, 3)]).unwrap();
        assert_eq!(f.eval(&q(1, 4)), 1);
        assert_eq!(f.eval(&q(1, 3)), 2);
        assert_eq!(f.eval(&one()), 2);
        let g = StepFunction::new(2, vec![one()]).unwrap();
        assert_eq!(g.eval(&q(99, 100)), 1);
        assert_eq!(g.eval(&one()), 2);
    }

    #[test]
    fn pieces_roundtrip() {
        let f = StepFunction::from_pieces(4, &[q(1, 4), q(1, 2)], &[1, 3, 4]).unwrap();
        assert_eq!(f.coords(), &[q(1, 4), q(1, 4), q(1, 2)]);
        let g = StepFunction::from_pieces(3, &[], &[2]).unwrap();
        assert_eq!(g, StepFunction::constant(3, 2).unwrap());
    }

    #[test]
    fn raw_values_at_jumps_are_forgotten() {
        let a = StepFunction::from_raw(2, &[q(1, 2)], &[1, 1, 2]).unwrap();
        let b = StepFunction::from_raw(2, &[q(1, 2)], &[1, 2, 2]).unwrap();
        assert_eq!(a, b);
        assert!(StepFunction::from_raw(2, &[q(1, 2)], &[2, 1, 2]).is_err());
    }

    #[test]
    fn order_and_max() {
        let f = StepFunction::new(2, vec![q(1, 2)]).unwrap();
        let g = StepFunction::new(2, vec![q(1, 3)]).unwrap();
        assert!(f.le(&g));
        assert!(!g.le(&f));
        assert_eq!(f.max(&g).unwrap(), g);
        assert!(PathSimplex::pair(g.clone(), f.clone()).is_err());
        assert!(PathSimplex::pair(f, g).is_ok());
    }

    #[test]
    fn serde_shape() {
        let f = StepFunction::new(3, vec![q(1, 3), q(1, 2)]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"N":3,"s":["1/3","1/2"]}"#);
        assert_eq!(serde_json::from_str::<StepFunction>(&s).unwrap(), f);
        assert!(serde_json::from_str::<StepFunction>(r#"{"N":3,"s":["1/2","1/3"]}"#).is_err());
    }
}
