//! Filter bases on simplex sets and the Skorokhod-type neighbourhood
//! predicates on step-function paths and finite morphisms.
//!
//! Tuple lengths are vertex counts throughout: `X(n)` is the set of
//! simplices with `n` vertices, and a neighbourhood of paths is indexed by a
//! short length `n` and a long length `N >= 2n`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::delta::{all_maps, MonotoneMap};
use crate::error::{Error, Result};
use crate::rational::{in_unit, one, zero, Q};
use crate::realization::{merged_grid, PathSimplex, StepFunction};
use crate::sset::{FinSSet, SSetMorphism, SimplexInstance, Violation};

/// A base given by a finite descending chain of subsets of a finite carrier;
/// the first set is the carrier itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainBase {
    chain: Vec<BTreeSet<SimplexInstance>>,
}

impl ChainBase {
    pub fn new(chain: Vec<BTreeSet<SimplexInstance>>) -> Result<Self> {
        if chain.is_empty() {
            return Err(Error::InvalidParameter("a filter base needs a set".into()));
        }
        if chain.windows(2).any(|w| !w[1].is_subset(&w[0])) {
            return Err(Error::InvalidParameter("chain is not descending".into()));
        }
        Ok(ChainBase { chain })
    }

    pub fn carrier(&self) -> &BTreeSet<SimplexInstance> {
        &self.chain[0]
    }

    pub fn sets(&self) -> &[BTreeSet<SimplexInstance>] {
        &self.chain
    }

    /// The smallest base set; every other one contains it.
    pub fn smallest(&self) -> &BTreeSet<SimplexInstance> {
        self.chain.last().expect("nonempty")
    }

    /// A subset is a neighbourhood iff it contains a base set.
    pub fn is_neighborhood(&self, s: &BTreeSet<SimplexInstance>) -> bool {
        s.is_subset(self.carrier()) && self.chain.iter().any(|b| b.is_subset(s))
    }

    /// A base set inside both `i`-th and `j`-th ones.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        i.max(j)
    }
}

/// Level-wise bases of a simplicial filter.
#[derive(Clone, Debug)]
pub enum FilterBase {
    Chain(ChainBase),
    /// Tuples `t_1 <= .. <= t_n` in `[0,1]` with all gaps below a positive
    /// rational; `P(r) ⊆ P(r')` for `r <= r'`.
    Gaps,
    /// Only the whole (infinite) carrier.
    Antidiscrete(&'static str),
}

impl FilterBase {
    pub fn is_antidiscrete(&self) -> bool {
        match self {
            FilterBase::Chain(c) => c.smallest() == c.carrier(),
            FilterBase::Gaps => false,
            FilterBase::Antidiscrete(_) => true,
        }
    }
}

#[derive(Clone, Debug)]
pub enum SimplicialFilterSpec {
    /// A finite simplicial set with the filter of its main diagonal.
    Diagonal(Arc<FinSSet>),
    /// The thick unit interval with its subdivision filter.
    Interval,
    /// Step-function paths `[0,1] -> {1..n}`; `m` is the chain length of
    /// the simplices considered.
    PathSpace { m: usize, n: usize },
    /// Explicit chains, one per level starting at one vertex.
    Finite(Vec<ChainBase>),
}

impl SimplicialFilterSpec {
    /// The base on simplices with `vertices` vertices.
    pub fn base(&self, vertices: usize) -> Result<FilterBase> {
        if vertices == 0 {
            return Err(Error::OutOfRange("levels start at one vertex".into()));
        }
        match self {
            SimplicialFilterSpec::Diagonal(x) => Ok(FilterBase::Chain(diag_base(x, vertices))),
            SimplicialFilterSpec::Interval if vertices == 1 => Ok(FilterBase::Antidiscrete("all points of [0,1]")),
            SimplicialFilterSpec::Interval => Ok(FilterBase::Gaps),
            SimplicialFilterSpec::PathSpace { .. } => Ok(FilterBase::Antidiscrete(
                "all step functions (Skorokhod neighbourhoods above level one)",
            )),
            SimplicialFilterSpec::Finite(levels) => levels
                .get(vertices - 1)
                .cloned()
                .map(FilterBase::Chain)
                .ok_or_else(|| Error::OutOfRange(format!("no base at level {vertices}"))),
        }
    }

    /// Filter-continuity of the structure maps on a finite presentation:
    /// for every simplicial operator `k -> l` (up to one level above the
    /// materialized dimension) the image of the smallest level-`l` base set
    /// lies in every level-`k` base set.
    pub fn continuity_violations(&self) -> Result<Vec<Violation>> {
        let (x, top) = match self {
            SimplicialFilterSpec::Diagonal(x) => (x.clone(), x.max_dim() + 2),
            _ => return Ok(Vec::new()),
        };
        let mut out = Vec::new();
        for l in 1..=top {
            let small = diag_base(&x, l);
            for k in 1..=top {
                let target = diag_base(&x, k);
                for op in all_maps(k, l) {
                    for s in small.smallest() {
                        let image = x.apply_operator(s, &op)?;
                        if target.sets().iter().any(|b| !b.contains(&image)) {
                            out.push(Violation::new(
                                "continuity",
                                format!("{op} sends {s} outside a base set at level {k}"),
                            ));
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

fn diag_base(x: &FinSSet, vertices: usize) -> ChainBase {
    let all: BTreeSet<SimplexInstance> = x.level(vertices).into_iter().collect();
    let diag: BTreeSet<SimplexInstance> = x.nondegenerate(0).iter().map(|v| x.diagonal(v, vertices)).collect();
    if vertices == 1 || diag == all {
        ChainBase { chain: vec![all] }
    } else {
        ChainBase { chain: vec![all, diag] }
    }
}

pub fn diag_filter(x: Arc<FinSSet>) -> SimplicialFilterSpec {
    SimplicialFilterSpec::Diagonal(x)
}

/// What is left after intersecting all level-one neighbourhoods.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Carrier {
    All(String),
    Finite(BTreeSet<SimplexInstance>),
}

pub fn points_of(spec: &SimplicialFilterSpec) -> Result<Carrier> {
    Ok(match spec.base(1)? {
        FilterBase::Chain(c) => Carrier::Finite(c.smallest().clone()),
        FilterBase::Antidiscrete(what) => Carrier::All(what.to_string()),
        FilterBase::Gaps => unreachable!("the interval is antidiscrete on points"),
    })
}

/// All consecutive gaps strictly below `eps`.
pub fn interval_diag_member(ts: &[Q], eps: &Q) -> Result<bool> {
    if *eps <= zero() {
        return Err(Error::InvalidParameter("ε must be positive".into()));
    }
    if !ts.iter().all(in_unit) || ts.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameter("tuple must be nondecreasing in [0,1]".into()));
    }
    Ok(ts.windows(2).all(|w| &w[1] - &w[0] < *eps))
}

/// Whether `s` is `e[t_1 <= .. <= t_n]` with `t_n <= t_1 + m` for some
/// simplex `e` of the standard simplex having `anchor` as a face.
///
/// Positions between `t_1` and `t_n` in a monotone `e` carry every value of
/// `e` from `s_1` to `s_n`; the cheapest `e` holds each value of `s` once and
/// every strictly interior anchor value as often as the anchor does (end
/// values of the window can keep their extra anchor copies outside it).
pub fn subdivision_member_representable(
    x: &FinSSet,
    s: &SimplexInstance,
    anchor: &SimplexInstance,
    m: usize,
) -> Result<bool> {
    let sv = x.std_values(s)?;
    let av = x.std_values(anchor)?;
    if m == 0 {
        return Err(Error::InvalidParameter("window width must be positive".into()));
    }
    let (lo, hi) = (sv[0], sv[sv.len() - 1]);
    let mut needed = 0;
    for v in lo..=hi {
        let in_s = usize::from(sv.contains(&v));
        let in_anchor = av.iter().filter(|&&a| a == v).count();
        needed += if lo < v && v < hi {
            in_s.max(in_anchor)
        } else {
            in_s.max(in_anchor.min(1))
        };
    }
    Ok(needed - 1 <= m)
}

/// `N >= 2n >= 2`.
pub fn check_params(n: usize, big_n: usize) -> Result<()> {
    if n == 0 || big_n < 2 * n {
        return Err(Error::NTooSmall { n, big_n });
    }
    Ok(())
}

fn check_theta(theta: &MonotoneMap, n: usize, m: usize) -> Result<()> {
    if theta.dom() != n || theta.cod() != m {
        return Err(Error::InvalidParameter(format!("θ = {theta} is not a map {n} -> {m}")));
    }
    Ok(())
}

fn check_positive(x: &Q, what: &str) -> Result<()> {
    if *x <= zero() {
        return Err(Error::InvalidParameter(format!("{what} must be positive")));
    }
    Ok(())
}

/// Does the union of the windows `[lo, hi)` (or `[lo, hi]` when closed)
/// cover `[0,1]`? Every window is nonempty and contains its left end.
fn covers_unit(mut windows: Vec<(Q, Q, bool)>) -> bool {
    windows.sort_by(|a, b| a.0.cmp(&b.0));
    // covered so far: [0, reach), or [0, reach] when `closed`
    let mut reach = zero();
    let mut closed = false;
    for (lo, hi, hi_closed) in windows {
        if lo > reach {
            return false;
        }
        if hi > reach {
            reach = hi;
            closed = hi_closed;
        } else if hi == reach {
            closed |= hi_closed;
        }
    }
    reach > one() || (reach == one() && closed)
}

/// Pieces `[x_j, x_{j+1})` of the merged grid followed by the point `{1}`,
/// each given by its left end; the flag marks the closed final point.
fn pieces(grid: &[Q]) -> impl Iterator<Item = (&Q, &Q, bool)> {
    let last = &grid[grid.len() - 1];
    grid.windows(2)
        .map(|w| (&w[0], &w[1], false))
        .chain(std::iter::once((last, last, true)))
}

/// Membership in the θδ̂-Skorokhod neighbourhood with ε the main diagonal
/// of the codomain.
///
/// With `lo = f_θ(1)` and `hi = f_θ(n)`, a tail `a_1 <= .. <= a_n` works iff
/// `a_n` is a point where `lo` and `hi` agree and `a_1` lies in the same
/// constancy piece of `lo`, at most `(n-1)δ̂` before it (every intermediate
/// chain is sandwiched). The tail must start within `(N-2n+1)δ̂` of `t`, so an
/// agreement piece `[p, q)` whose `lo`-piece starts at `c` serves
/// `t ∈ [max(p - (N-n)δ̂, c - (N-2n+1)δ̂), q)`. The short tuple has
/// arbitrarily small gaps, so only its last entry matters and the
/// existential over the small neighbourhood is vacuous.
pub fn theta_skorokhod_member(
    p: &PathSimplex,
    theta: &MonotoneMap,
    n: usize,
    big_n: usize,
    delta_hat: &Q,
) -> Result<bool> {
    check_params(n, big_n)?;
    check_theta(theta, n, p.m())?;
    check_positive(delta_hat, "δ̂")?;
    let lo = p.chain(theta.at(1));
    let hi = p.chain(theta.at(n));
    if lo == hi {
        return Ok(true);
    }
    let free = delta_hat * Q::from_integer((big_n - 2 * n + 1).into());
    let reach = delta_hat * Q::from_integer((big_n - n).into());
    let grid = merged_grid([lo, hi]);
    let windows = pieces(&grid)
        .filter(|(a, _, _)| lo.eval(a) == hi.eval(a))
        .map(|(a, b, closed)| {
            let c = lo
                .coords()
                .iter()
                .filter(|s| *s <= a)
                .max()
                .cloned()
                .unwrap_or_else(zero);
            let start = (a - &reach).max(c - &free);
            (start, b.clone(), closed)
        })
        .collect();
    Ok(covers_unit(windows))
}

/// For every `t` some `t' ∈ [t, min(1, t+δ)]` has `f_1(t') = .. = f_M(t')`.
/// Chains are ordered, so agreement of all chains is agreement of the
/// first and the last.
pub fn closed_form_member(p: &PathSimplex, delta: &Q) -> Result<bool> {
    check_positive(delta, "δ")?;
    let (f, g) = (p.chain(1), p.chain(p.m()));
    let grid = merged_grid([f, g]);
    let windows = pieces(&grid)
        .filter(|(a, _, _)| f.eval(a) == g.eval(a))
        .map(|(a, b, closed)| (a - delta, b.clone(), closed))
        .collect();
    Ok(covers_unit(windows))
}

/// Whether `f'` lies in the δ̂-neighbourhood of `f`: some `h` above both
/// makes `(f <= h)` and `(f' <= h)` small paths. Larger `h` only shrink the
/// agreement sets, so `h = max(f, f')` decides.
pub fn u_neighborhood_member(f: &StepFunction, g: &StepFunction, delta_hat: &Q) -> Result<bool> {
    let h = f.max(g)?;
    Ok(
        closed_form_member(&PathSimplex::pair(f.clone(), h.clone())?, delta_hat)?
            && closed_form_member(&PathSimplex::pair(g.clone(), h)?, delta_hat)?,
    )
}

/// The Skorokhod filter on `Hom(X, Y)` at the point `φ`, evaluated
/// literally over the diagonal-filter bases: for every `δ ⊆ X(N)` and
/// `ε ⊆ Y(n)` there must be a `δ₀ ⊆ X(n)` such that each `x ∈ δ₀` extends to
/// some `x' ∈ δ` with `x = x'[1..n]` and `φ(x'[N-n+1..N]) ∈ ε`.
pub fn hom_skorokhod_member_finite(phi: &SSetMorphism<'_>, n: usize, big_n: usize) -> Result<bool> {
    check_params(n, big_n)?;
    let x = phi.source;
    let y = phi.target;
    let head = MonotoneMap::new((1..=n).collect(), big_n)?;
    let tail = MonotoneMap::new((big_n - n + 1..=big_n).collect(), big_n)?;
    let deltas = diag_base(x, big_n);
    let epsilons = diag_base(y, n);
    let smalls = diag_base(x, n);
    for delta in deltas.sets() {
        for eps in epsilons.sets() {
            let mut some_small = false;
            for small in smalls.sets() {
                let mut all = true;
                for s in small {
                    let mut found = false;
                    for long in delta {
                        if x.apply_operator(long, &head)? == *s
                            && eps.contains(&phi.apply(&x.apply_operator(long, &tail)?)?)
                        {
                            found = true;
                            break;
                        }
                    }
                    if !found {
                        all = false;
                        break;
                    }
                }
                if all {
                    some_small = true;
                    break;
                }
            }
            if !some_small {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
