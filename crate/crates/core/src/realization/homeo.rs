//! Piecewise-linear orientation preserving homeomorphisms of `[0,1]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{in_unit, one, serde_q, zero, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHomeo", into = "RawHomeo")]
pub struct PLHomeo {
    knots: Vec<(Q, Q)>,
}

#[derive(Serialize, Deserialize)]
struct RawHomeo {
    knots: Vec<RawKnot>,
}

#[derive(Serialize, Deserialize)]
struct RawKnot(#[serde(with = "serde_q")] Q, #[serde(with = "serde_q")] Q);

impl TryFrom<RawHomeo> for PLHomeo {
    type Error = Error;
    fn try_from(r: RawHomeo) -> Result<Self> {
        PLHomeo::new(r.knots.into_iter().map(|k| (k.0, k.1)).collect())
    }
}

impl From<PLHomeo> for RawHomeo {
    fn from(h: PLHomeo) -> Self {
        RawHomeo {
            knots: h.knots.into_iter().map(|(x, y)| RawKnot(x, y)).collect(),
        }
    }
}

impl PLHomeo {
    /// Knots must start at `(0,0)`, end at `(1,1)` and increase strictly in
    /// both coordinates.
    pub fn new(knots: Vec<(Q, Q)>) -> Result<Self> {
        let bad = |why: &str| Err(Error::InvalidParameter(format!("homeomorphism knots {why}")));
        if knots.len() < 2 {
            return bad("need at least (0,0) and (1,1)");
        }
        if knots[0] != (zero(), zero()) || knots[knots.len() - 1] != (one(), one()) {
            return bad("must fix 0 and 1");
        }
        if knots.windows(2).any(|w| w[0].0 >= w[1].0 || w[0].1 >= w[1].1) {
            return bad("must increase strictly");
        }
        Ok(PLHomeo::canonical(knots))
    }

    /// Drops knots interior to a linear piece, so equal maps compare equal.
    fn canonical(knots: Vec<(Q, Q)>) -> Self {
        let slope = |a: &(Q, Q), b: &(Q, Q)| (&b.1 - &a.1) / (&b.0 - &a.0);
        let mut out: Vec<(Q, Q)> = Vec::with_capacity(knots.len());
        for k in knots {
            while out.len() >= 2 && slope(&out[out.len() - 2], &out[out.len() - 1]) == slope(&out[out.len() - 1], &k) {
                out.pop();
            }
            out.push(k);
        }
        PLHomeo { knots: out }
    }

    pub fn identity() -> Self {
        PLHomeo {
            knots: vec![(zero(), zero()), (one(), one())],
        }
    }

    pub fn knots(&self) -> &[(Q, Q)] {
        &self.knots
    }

    pub fn apply(&self, t: &Q) -> Result<Q> {
        if !in_unit(t) {
            return Err(Error::OutOfRange(format!("{t} is outside [0,1]")));
        }
        let j = self.knots.partition_point(|(x, _)| x <= t);
        if j == self.knots.len() {
            return Ok(one());
        }
        let (x0, y0) = &self.knots[j - 1];
        let (x1, y1) = &self.knots[j];
        Ok(y0 + (y1 - y0) * (t - x0) / (x1 - x0))
    }

    pub fn inverse(&self) -> PLHomeo {
        PLHomeo {
            knots: self.knots.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PLHomeo) -> PLHomeo {
        let back = inner.inverse();
        let mut xs: Vec<Q> = inner.knots.iter().map(|(x, _)| x.clone()).collect();
        for (x, _) in &self.knots {
            xs.push(back.apply(x).expect("knots lie in [0,1]"));
        }
        xs.sort();
        xs.dedup();
        let knots = xs
            .into_iter()
            .map(|x| {
                let y = self.apply(&inner.apply(&x).expect("in range")).expect("in range");
                (x, y)
            })
            .collect();
        PLHomeo::canonical(knots)
    }

    /// Largest slope of a linear piece (the Lipschitz constant).
    pub fn max_slope(&self) -> Q {
        self.knots
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
            .max()
            .expect("at least one piece")
    }
}
