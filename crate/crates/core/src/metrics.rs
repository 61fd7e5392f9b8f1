//! Distances on the realization: coordinate sup distance, three
//! Skorokhod-type variants on step functions, the Lebesgue cut-and-drop
//! distance `d_μ`, the literal `d′`, and the `u_A` construction.
//!
//! The codomain `{1..N}` carries the discrete metric, so "values closer than
//! ε" means "equal values" for every ε < 1; all distances are capped at 1.

use crate::delta::MonotoneMap;
use crate::error::{Error, Result};
use crate::rational::{abs_diff, fmt_q, half, one, zero, Q};
use crate::realization::{merged_grid, RealizationPoint, StepFunction};
use crate::sset::SimplexInstance;

/// `[lo, hi)`, or `[lo, hi]` when `closed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Q,
    pub hi: Q,
    pub closed: bool,
}

/// The partition of `[0,1]` into maximal pieces where two step functions
/// agree or disagree. The point `1` always agrees, since every step function
/// into `{1..N}` takes the value `N` there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementSet {
    pub agree: Vec<Interval>,
    pub disagree: Vec<Interval>,
}

impl AgreementSet {
    pub fn of(f: &StepFunction, g: &StepFunction) -> Result<Self> {
        f.check_same(g)?;
        let grid = merged_grid([f, g]);
        let mut agree: Vec<Interval> = Vec::new();
        let mut disagree: Vec<Interval> = Vec::new();
        let push = |list: &mut Vec<Interval>, lo: &Q, hi: &Q, closed: bool| match list.last_mut() {
            Some(last) if last.hi == *lo && !last.closed => {
                last.hi = hi.clone();
                last.closed = closed;
            }
            _ => list.push(Interval {
                lo: lo.clone(),
                hi: hi.clone(),
                closed,
            }),
        };
        for w in grid.windows(2) {
            if f.eval(&w[0]) == g.eval(&w[0]) {
                push(&mut agree, &w[0], &w[1], false);
            } else {
                push(&mut disagree, &w[0], &w[1], false);
            }
        }
        push(&mut agree, &one(), &one(), true);
        Ok(AgreementSet { agree, disagree })
    }

    pub fn disagreement_measure(&self) -> Q {
        self.disagree.iter().map(|i| &i.hi - &i.lo).sum()
    }
}

fn check_len(a: &[Q], b: &[Q]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch(format!(
            "coordinate tuples of length {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(())
}

/// `max_i |s_i - s'_i|`.
pub fn sup_dist(a: &[Q], b: &[Q]) -> Result<Q> {
    check_len(a, b)?;
    Ok(a.iter().zip(b).map(|(x, y)| abs_diff(x, y)).max().unwrap_or_else(zero))
}

pub fn sup_dist_steps(f: &StepFunction, g: &StepFunction) -> Result<Q> {
    f.check_same(g)?;
    sup_dist(f.coords(), g.coords())
}

/// The closure of the level set `f^{-1}(v)`, or `None` when it is empty.
pub fn level_closure(f: &StepFunction, v: usize) -> Option<(Q, Q)> {
    let s = f.coords();
    let n = f.n();
    let lo = if v == 1 { zero() } else { s[v - 2].clone() };
    if v == n {
        return Some((lo, one()));
    }
    let hi = s[v - 1].clone();
    (lo < hi).then_some((lo, hi))
}

/// Infimum ε such that every `t` has an `s` with `|t-s| <= ε` and
/// `f(t) = g(s)`, and symmetrically: the largest Hausdorff distance between
/// closures of corresponding level sets (1 if a value is taken by only one).
pub fn v1_dist(f: &StepFunction, g: &StepFunction) -> Result<Q> {
    f.check_same(g)?;
    let mut worst = zero();
    for v in 1..=f.n() {
        let d = match (level_closure(f, v), level_closure(g, v)) {
            (None, None) => zero(),
            (Some((a, b)), Some((c, d))) => abs_diff(&a, &c).max(abs_diff(&b, &d)),
            _ => one(),
        };
        worst = worst.max(d);
    }
    Ok(worst.min(one()))
}

/// Infimum δ such that every `t` has `t'` with `|t'-t| <= δ` and
/// `f(t') = g(t')`: half of an interior disagreement interval, or its whole
/// length when it starts at 0 (no agreement to the left).
pub fn v2_dist(f: &StepFunction, g: &StepFunction) -> Result<Q> {
    let a = AgreementSet::of(f, g)?;
    let worst = a
        .disagree
        .iter()
        .map(|i| {
            if i.lo == zero() {
                i.hi.clone()
            } else {
                (&i.hi - &i.lo) * half()
            }
        })
        .max()
        .unwrap_or_else(zero);
    Ok(worst.min(one()))
}

/// Infimum δ such that every `t` has `t' ∈ [t, min(1, t+δ)]` with
/// `f(t') = g(t')`: the longest disagreement interval.
pub fn v3_dist(f: &StepFunction, g: &StepFunction) -> Result<Q> {
    let a = AgreementSet::of(f, g)?;
    let worst = a.disagree.iter().map(|i| &i.hi - &i.lo).max().unwrap_or_else(zero);
    Ok(worst.min(one()))
}

/// Same coordinate form, hence the same normal form.
pub fn indistinguishable(f: &StepFunction, g: &StepFunction) -> Result<bool> {
    f.check_same(g)?;
    Ok(f.coords() == g.coords())
}

/// Both points written over the union of their cut sets.
pub fn common_refinement(u: &RealizationPoint, v: &RealizationPoint) -> Result<(RealizationPoint, RealizationPoint)> {
    u.check_same(v)?;
    let mut cuts: Vec<Q> = u.cuts().iter().chain(v.cuts()).cloned().collect();
    cuts.sort();
    cuts.dedup();
    Ok((u.refine(&cuts)?, v.refine(&cuts)?))
}

/// The face of `x` spanned by the components in `a` (sorted, 1-indexed).
pub fn restrict(p: &RealizationPoint, a: &[usize]) -> Result<SimplexInstance> {
    let op = MonotoneMap::new(a.to_vec(), p.cuts().len() + 1)?;
    p.sset().apply_operator(p.simplex(), &op)
}

fn subsets_of(items: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (1u64..(1u64 << items.len())).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &c)| c)
            .collect()
    })
}

/// Component subsets on which the two (commonly refined) points have equal
/// faces, restricted to the maximal candidates: agreement is inherited by
/// subsets, and every agreeing set consists of components whose vertices
/// agree, so when those components agree jointly they are the unique
/// maximal set.
fn maximal_agreeing(u: &RealizationPoint, v: &RealizationPoint) -> Result<Vec<Vec<usize>>> {
    let k = u.cuts().len() + 1;
    let mut vertices = Vec::new();
    for c in 1..=k {
        if restrict(u, &[c])? == restrict(v, &[c])? {
            vertices.push(c);
        }
    }
    if vertices.is_empty() {
        return Ok(Vec::new());
    }
    if restrict(u, &vertices)? == restrict(v, &vertices)? {
        return Ok(vec![vertices]);
    }
    let mut out = Vec::new();
    for a in subsets_of(&vertices) {
        if restrict(u, &a)? == restrict(v, &a)? {
            out.push(a);
        }
    }
    Ok(out)
}

/// The least Lebesgue measure of components one has to drop so that the
/// remaining faces of `u` and `v` coincide (1 when nothing can be kept).
pub fn d_mu(u: &RealizationPoint, v: &RealizationPoint) -> Result<Q> {
    let (u, v) = common_refinement(&u.normalize()?, &v.normalize()?)?;
    let lengths = u.lengths();
    let best = maximal_agreeing(&u, &v)?
        .iter()
        .map(|a| one() - a.iter().map(|&c| &lengths[c - 1]).sum::<Q>())
        .min()
        .unwrap_or_else(one);
    Ok(best)
}

/// Distance from a point to the closure of a component `[lo, hi]`.
fn to_component(x: &Q, lo: &Q, hi: &Q) -> Q {
    if x < lo {
        lo - x
    } else if x > hi {
        x - hi
    } else {
        zero()
    }
}

/// The literal `d′`: over agreeing component sets `A`, the least
/// `max_{x∈F} min_{a∈A} dist(x, a)` with `F` the common cut set. A cut is at
/// distance 0 from both adjacent components, which makes this vanish on
/// distinct points (see the tests).
pub fn d_prime(u: &RealizationPoint, v: &RealizationPoint) -> Result<Q> {
    let (u, v) = common_refinement(&u.normalize()?, &v.normalize()?)?;
    let mut ends = vec![zero()];
    ends.extend(u.cuts().iter().cloned());
    ends.push(one());
    let best = maximal_agreeing(&u, &v)?
        .iter()
        .map(|a| {
            u.cuts()
                .iter()
                .map(|x| {
                    a.iter()
                        .map(|&c| to_component(x, &ends[c - 1], &ends[c]))
                        .min()
                        .expect("A is nonempty")
                })
                .max()
                .unwrap_or_else(zero)
        })
        .min()
        .unwrap_or_else(one);
    Ok(best)
}

/// `max_{x∈F} min_{a∈A} |x - a|` (0 for empty `F`, 1 for empty `A`).
pub fn dist_f_a(f: &[Q], a: &[Q]) -> Q {
    if f.is_empty() {
        return zero();
    }
    if a.is_empty() {
        return one();
    }
    f.iter()
        .map(|x| a.iter().map(|y| abs_diff(x, y)).min().expect("nonempty"))
        .max()
        .expect("nonempty")
}

/// `step_{A,t0}`: the identity up to `t0`, then each `t` snaps right to the
/// nearest point of `A ∪ {1}`. `t0 = None` stands for `max ∅`, snapping
/// everything.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepMap {
    t0: Option<Q>,
    targets: Vec<Q>,
}

pub fn step_map(a: &[Q], t0: Option<Q>) -> Result<StepMap> {
    if let Some(t) = &t0 {
        if !crate::rational::in_unit(t) {
            return Err(Error::OutOfRange(format!("t0 = {} outside [0,1]", fmt_q(t))));
        }
    }
    let mut targets: Vec<Q> = a.iter().filter(|x| crate::rational::in_unit(x)).cloned().collect();
    targets.push(one());
    targets.sort();
    targets.dedup();
    Ok(StepMap { t0, targets })
}

impl StepMap {
    pub fn apply(&self, t: &Q) -> Q {
        if self.t0.as_ref().is_some_and(|t0| t <= t0) {
            return t.clone();
        }
        let j = self.targets.partition_point(|a| a < t);
        self.targets.get(j).cloned().unwrap_or_else(one)
    }

    /// Knots of the map: `(t0, snap points)`.
    pub fn breakpoints(&self) -> (Option<&Q>, &[Q]) {
        (self.t0.as_ref(), &self.targets)
    }
}

/// The 1-simplex `u_A` of the path space: on a chain-indexed tuple
/// `(l_i, t_i)` it evaluates `u` at `step_{A, max{t_i : l_i = 1}}(t_i)`.
pub fn u_a_eval(u: &RealizationPoint, a: &[Q], ls: &[usize], ts: &[Q]) -> Result<SimplexInstance> {
    if ls.len() != ts.len() {
        return Err(Error::SizeMismatch("chain indices vs times".into()));
    }
    let t0 = ls
        .iter()
        .zip(ts)
        .filter(|(l, _)| **l == 1)
        .map(|(_, t)| t.clone())
        .max();
    let snap = step_map(a, t0)?;
    let moved: Vec<Q> = ts.iter().map(|t| snap.apply(t)).collect();
    u.eval(&moved)
}

/// Whether `u_A` lies in the θδ̂-Skorokhod neighbourhood (ε the main
/// diagonal), evaluated literally: every start position needs a continuation
/// with gaps at most δ̂ whose tail `u_A` sends onto the diagonal. Start and
/// tail positions range over the cut points, `A`, the start shifted by
/// multiples of δ̂, and midpoints, which is where the verdict can change.
pub fn u_a_member_check(
    u: &RealizationPoint,
    a: &[Q],
    theta: &MonotoneMap,
    n: usize,
    big_n: usize,
    delta_hat: &Q,
) -> Result<bool> {
    crate::filters::check_params(n, big_n)?;
    if theta.dom() != n || theta.cod() != 2 {
        return Err(Error::InvalidParameter(format!("θ = {theta} is not a map {n} -> 2")));
    }
    if *delta_hat <= zero() {
        return Err(Error::InvalidParameter("δ̂ must be positive".into()));
    }
    let u = u.normalize()?;
    let mut base: Vec<Q> = vec![zero(), one()];
    base.extend(u.cuts().iter().cloned());
    base.extend(a.iter().filter(|x| crate::rational::in_unit(x)).cloned());
    base.sort();
    base.dedup();
    let mut starts = base.clone();
    starts.extend(base.windows(2).map(|w| (&w[0] + &w[1]) * half()));
    starts.sort();
    starts.dedup();

    let free = big_n - 2 * n + 1; // gaps from t_n to the first tail entry
    for t in &starts {
        let reach = t + delta_hat * Q::from_integer(free.into());
        let mut candidates: Vec<Q> = base.iter().filter(|x| *x >= t && *x <= &reach).cloned().collect();
        for j in 0..=big_n {
            let x = t + delta_hat * Q::from_integer(j.into());
            if x <= one() {
                candidates.push(x);
            }
        }
        candidates.sort();
        candidates.dedup();
        if !tail_search(&u, a, theta.values(), t, &candidates, &reach, delta_hat)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn tail_search(
    u: &RealizationPoint,
    a: &[Q],
    ls: &[usize],
    start: &Q,
    candidates: &[Q],
    reach: &Q,
    delta_hat: &Q,
) -> Result<bool> {
    fn rec(
        u: &RealizationPoint,
        a: &[Q],
        ls: &[usize],
        candidates: &[Q],
        delta_hat: &Q,
        tail: &mut Vec<Q>,
    ) -> Result<bool> {
        if tail.len() == ls.len() {
            let x = u_a_eval(u, a, ls, tail)?;
            return Ok(x.is_diagonal());
        }
        let prev = tail.last().cloned().expect("tail starts nonempty");
        for c in candidates.iter().filter(|c| **c >= prev && *c - &prev <= *delta_hat) {
            tail.push(c.clone());
            if rec(u, a, ls, candidates, delta_hat, tail)? {
                return Ok(true);
            }
            tail.pop();
        }
        Ok(false)
    }
    for first in candidates.iter().filter(|c| *c >= start && *c <= reach) {
        let mut tail = vec![first.clone()];
        if rec(u, a, ls, candidates, delta_hat, &mut tail)? {
            return Ok(true);
        }
    }
    Ok(false)
}
