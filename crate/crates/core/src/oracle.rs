//! Brute-force oracles and seeded generators.
//!
//! Every function involved is a step map with rational breakpoints, so all
//! quantifiers over `[0,1]` reduce to finitely many critical points: the
//! breakpoints, their shifts by multiples of the window parameters, and
//! midpoints between consecutive such points. The oracles search those
//! points (or a uniform grid containing them) directly, without the interval
//! bookkeeping used by the closed forms.

use std::sync::Arc;

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::delta::MonotoneMap;
use crate::error::{Error, Result};
use crate::filters::check_params;
use crate::rational::{common_denominator, fmt_q, half, one, q, zero, Q};
use crate::realization::{
    merged_grid, product_merge, product_split, PLHomeo, PathSimplex, RealizationPoint, StepFunction,
};
use crate::sset::ProductSSet;
use crate::sset::{FinSSet, SimplexInstance};

/// Reproducible sample stream.
pub struct Gen {
    rng: ChaCha8Rng,
    pub max_den: i64,
}

impl Gen {
    pub fn new(seed: u64, max_den: i64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_den,
        }
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        xs.choose(&mut self.rng).expect("nonempty choice")
    }

    /// A rational in `[0,1]` with denominator at most `max_den`.
    pub fn unit(&mut self) -> Q {
        let d = self.rng.gen_range(1..=self.max_den);
        q(self.rng.gen_range(0..=d), d)
    }

    /// A rational in `(0,1)`.
    pub fn open_unit(&mut self) -> Q {
        let d = self.rng.gen_range(2..=self.max_den.max(2));
        q(self.rng.gen_range(1..d), d)
    }

    /// Up to `max` distinct sorted points of `(0,1)`.
    pub fn cuts(&mut self, max: usize) -> Vec<Q> {
        let k = self.range(0, max);
        let mut v: Vec<Q> = (0..k).map(|_| self.open_unit()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn tuple(&mut self, len: usize) -> Vec<Q> {
        let mut v: Vec<Q> = (0..len).map(|_| self.unit()).collect();
        v.sort();
        v
    }

    /// Coordinates drawn from `pool ∪ {0, 1}`.
    fn coords_from(&mut self, n: usize, pool: &[Q]) -> Vec<Q> {
        let mut choices = pool.to_vec();
        choices.push(zero());
        choices.push(one());
        let mut s: Vec<Q> = (1..n).map(|_| self.pick(&choices).clone()).collect();
        s.sort();
        s
    }

    /// A step function into `{1..n}` with at most `breaks` distinct
    /// breakpoints.
    pub fn step(&mut self, n: usize, breaks: usize) -> StepFunction {
        let pool: Vec<Q> = (0..self.range(0, breaks)).map(|_| self.unit()).collect();
        let s = self.coords_from(n, &pool);
        StepFunction::new(n, s).expect("sorted unit coordinates")
    }

    /// A chain `f_1 <= .. <= f_m` whose breakpoints come from a common pool
    /// of at most `breaks` points.
    pub fn path(&mut self, m: usize, n: usize, breaks: usize) -> PathSimplex {
        let pool: Vec<Q> = (0..self.range(1, breaks.max(1))).map(|_| self.unit()).collect();
        let mut cols: Vec<Vec<Q>> = (0..m).map(|_| self.coords_from(n, &pool)).collect();
        // sort each coordinate decreasingly across the chain: larger functions jump earlier
        for i in 0..n - 1 {
            let mut c: Vec<Q> = cols.iter().map(|s| s[i].clone()).collect();
            c.sort_by(|a, b| b.cmp(a));
            for (s, x) in cols.iter_mut().zip(c) {
                s[i] = x;
            }
        }
        let chains = cols
            .into_iter()
            .map(|s| StepFunction::new(n, s).expect("coordinates stay sorted"))
            .collect();
        PathSimplex::new(chains).expect("ordered by construction")
    }

    pub fn monotone_map(&mut self, m: usize, n: usize) -> MonotoneMap {
        let mut v: Vec<usize> = (0..m).map(|_| self.range(1, n)).collect();
        v.sort();
        MonotoneMap::new(v, n).expect("sorted values")
    }

    /// A random PL homeomorphism with at most `knots` interior knots.
    pub fn homeo(&mut self, knots: usize) -> PLHomeo {
        let k = self.range(0, knots);
        let mut xs: Vec<Q> = (0..k).map(|_| self.open_unit()).collect();
        let mut ys: Vec<Q> = (0..k).map(|_| self.open_unit()).collect();
        for v in [&mut xs, &mut ys] {
            v.sort();
            v.dedup();
        }
        let k = xs.len().min(ys.len());
        let mut pts = vec![(zero(), zero())];
        pts.extend(xs.into_iter().zip(ys).take(k));
        pts.push((one(), one()));
        PLHomeo::new(pts).expect("strictly increasing knots")
    }

    /// A simplicial set of dimension at most 2 with at most `max_simplices`
    /// nondegenerate simplices: triangles glued along found or fresh edges,
    /// with repeated vertices sometimes spanned by a degenerate edge.
    pub fn sset(&mut self, max_simplices: usize) -> FinSSet {
        let nv = self.range(1, 3);
        let mut x = FinSSet::new(2);
        let vname = |i: usize| format!("v{i}");
        for i in 1..=nv {
            x.add_vertex(vname(i)).expect("fresh vertex");
        }
        let mut edges: Vec<(usize, usize, String)> = Vec::new();
        let mut count = nv;
        let edge = |x: &mut FinSSet,
                    edges: &mut Vec<(usize, usize, String)>,
                    count: &mut usize,
                    a: usize,
                    b: usize,
                    fresh: bool|
         -> SimplexInstance {
            if !fresh {
                if let Some((_, _, e)) = edges.iter().find(|(u, v, _)| (*u, *v) == (a, b)) {
                    return SimplexInstance::nondegenerate(e.clone(), 2);
                }
            }
            let name = format!("e{}", edges.len() + 1);
            x.add_simplex(
                name.clone(),
                1,
                vec![
                    SimplexInstance::nondegenerate(vname(b), 1),
                    SimplexInstance::nondegenerate(vname(a), 1),
                ],
            )
            .expect("fresh edge");
            edges.push((a, b, name.clone()));
            *count += 1;
            SimplexInstance::nondegenerate(name, 2)
        };
        let mut triangles = 0;
        while count < max_simplices {
            if count + 4 <= max_simplices && self.coin(0.5) {
                let (a, b, c) = (self.range(1, nv), self.range(1, nv), self.range(1, nv));
                let side = |g: &mut Gen, x: &mut FinSSet, edges: &mut Vec<_>, count: &mut usize, u: usize, v: usize| {
                    if u == v && g.coin(0.5) {
                        x.diagonal(&vname(u), 2)
                    } else {
                        edge(x, edges, count, u, v, false)
                    }
                };
                let f1 = side(self, &mut x, &mut edges, &mut count, b, c);
                let f2 = side(self, &mut x, &mut edges, &mut count, a, c);
                let f3 = side(self, &mut x, &mut edges, &mut count, a, b);
                triangles += 1;
                x.add_simplex(format!("t{triangles}"), 2, vec![f1, f2, f3])
                    .expect("fresh triangle");
                count += 1;
            } else if self.coin(0.7) {
                let (a, b) = (self.range(1, nv), self.range(1, nv));
                edge(&mut x, &mut edges, &mut count, a, b, true);
            } else {
                break;
            }
        }
        x
    }

    /// A point with at most `max_cuts` cuts and an arbitrary (possibly
    /// degenerate) simplex.
    pub fn point(&mut self, x: &Arc<FinSSet>, max_cuts: usize) -> RealizationPoint {
        let cuts = self.cuts(max_cuts);
        let level = x.level(cuts.len() + 1);
        let s = self.pick(&level).clone();
        RealizationPoint::new(x.clone(), cuts, s).expect("well-formed point")
    }
}

fn ticks(x: &Q, scale: &Q) -> usize {
    (x * scale).to_integer().to_usize().expect("grid position fits")
}

/// Literal evaluation of θδ̂-membership on the uniform grid of step
/// `1/(2L)`, `L` the common denominator of all breakpoints and δ̂. Every
/// constraint of the formula then has grid endpoints, and the grid holds a
/// midpoint of every gap between consecutive critical points.
///
/// Backwards: `ok_i(p)` says a tail entry `i` at `p` with the shared value
/// `f_θ(i)(p)` can be completed; free entries then walk back `δ̂` at a time
/// to the last short-tuple entry. The short tuple is checked for every grid
/// tuple with gaps below `ε₀`, for `ε₀` of one and two grid steps.
pub fn oracle_membership(p: &PathSimplex, theta: &MonotoneMap, n: usize, big_n: usize, delta_hat: &Q) -> Result<bool> {
    check_params(n, big_n)?;
    if theta.dom() != n || theta.cod() != p.m() || *delta_hat <= zero() {
        return Err(Error::InvalidParameter("bad θ or δ̂".into()));
    }
    let mut all: Vec<Q> = p.chains().iter().flat_map(|f| f.coords().to_vec()).collect();
    all.push(delta_hat.clone());
    let scale = Q::from_integer(common_denominator(&all) * 2);
    let g = ticks(&one(), &scale);
    let d = ticks(&delta_hat.clone().min(one()), &scale);
    let at = |l: usize, i: usize| p.chain(l).eval(&(Q::from_integer(i.into()) / &scale));
    let values: Vec<Vec<usize>> = (1..=p.m()).map(|l| (0..=g).map(|i| at(l, i)).collect()).collect();
    let f = |i: usize| &values[theta.at(i) - 1];

    // any true in [i, i+d]
    let window = |ok: &[bool]| -> Vec<bool> {
        let mut pre = vec![0usize; ok.len() + 1];
        for (i, &b) in ok.iter().enumerate() {
            pre[i + 1] = pre[i] + usize::from(b);
        }
        (0..ok.len()).map(|i| pre[(i + d).min(g) + 1] > pre[i]).collect()
    };

    let top = p.n();
    let mut start = vec![false; g + 1];
    for v in 1..=top {
        let mut ok: Vec<bool> = f(n).iter().map(|&x| x == v).collect();
        for i in (1..n).rev() {
            let ahead = window(&ok);
            ok = (0..=g).map(|j| f(i)[j] == v && ahead[j]).collect();
        }
        for j in 0..=g {
            start[j] |= ok[j];
        }
    }
    let mut reach = start;
    for _ in 0..(big_n - 2 * n + 1) {
        reach = window(&reach);
    }

    let mut verdicts = Vec::new();
    for eps0 in [1usize, 2] {
        // every head ending at j with gaps < eps0 (in ticks) is an extension
        // start; its gaps are below δ̂, so only the last entry matters
        let mut all_ok = true;
        for j in 0..=g {
            let heads = heads_ending_at(j, n, eps0 - 1);
            if heads.iter().any(|h| h.windows(2).any(|w| w[1] - w[0] > d)) || !reach[j] {
                all_ok = false;
                break;
            }
        }
        verdicts.push(all_ok);
    }
    Ok(verdicts.into_iter().any(|b| b))
}

fn heads_ending_at(end: usize, n: usize, max_gap: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![end]];
    for _ in 1..n {
        let mut next = Vec::new();
        for h in out {
            for gap in 0..=max_gap.min(h[0]) {
                let mut g = vec![h[0] - gap];
                g.extend(h.iter().copied());
                next.push(g);
            }
        }
        out = next;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistKind {
    V1,
    V2,
    V3,
}

/// Left limit of a step function (its value just before `t`).
fn eval_left(f: &StepFunction, t: &Q) -> usize {
    if *t == zero() {
        return f.eval(t);
    }
    1 + f.coords().iter().filter(|s| *s < t).count()
}

/// Whether the defining condition of `kind` holds at threshold `eps`,
/// checked at grid points and pairwise midpoints.
pub fn dist_condition(kind: DistKind, f: &StepFunction, g: &StepFunction, eps: &Q) -> bool {
    if *eps >= one() {
        return true;
    }
    let grid = merged_grid([f, g]);
    let mut ts = grid.clone();
    for (i, a) in grid.iter().enumerate() {
        for b in &grid[i + 1..] {
            ts.push((a + b) * half());
        }
    }
    let window = |t: &Q, back: bool| -> Vec<Q> {
        let lo = if back { (t - eps).max(zero()) } else { t.clone() };
        let hi = (t + eps).min(one());
        let mut c: Vec<Q> = grid.iter().filter(|x| **x >= lo && **x <= hi).cloned().collect();
        c.extend([lo, hi, t.clone()]);
        c
    };
    match kind {
        DistKind::V3 | DistKind::V2 => ts
            .iter()
            .all(|t| window(t, kind == DistKind::V2).iter().any(|u| f.eval(u) == g.eval(u))),
        DistKind::V1 => {
            let one_way = |a: &StepFunction, b: &StepFunction| {
                ts.iter().all(|t| {
                    [a.eval(t), eval_left(a, t)]
                        .iter()
                        .all(|&w| window(t, true).iter().any(|s| b.eval(s) == w || eval_left(b, s) == w))
                })
            };
            one_way(f, g) && one_way(g, f)
        }
    }
}

/// Least candidate threshold passing the condition; candidates are `0`,
/// `1`, all breakpoint differences and their halves.
pub fn oracle_dist(kind: DistKind, f: &StepFunction, g: &StepFunction) -> Result<Q> {
    f.check_same(g)?;
    let grid = merged_grid([f, g]);
    let mut cands = vec![zero(), one()];
    for a in &grid {
        for b in &grid {
            if a < b {
                cands.push(b - a);
                cands.push((b - a) * half());
            }
        }
    }
    cands.sort();
    cands.dedup();
    // the condition is monotone in the threshold: bisect
    let (mut lo, mut hi) = (0, cands.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if dist_condition(kind, f, g, &cands[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(cands[lo].clone())
}

/// `d_μ` by enumerating every component subset of the common refinement.
pub fn d_mu_enumerate(u: &RealizationPoint, v: &RealizationPoint) -> Result<Q> {
    let (u, v) = crate::metrics::common_refinement(u, v)?;
    let k = u.cuts().len() + 1;
    let lengths = u.lengths();
    let mut best = one();
    for mask in 1u64..(1u64 << k) {
        let a: Vec<usize> = (1..=k).filter(|c| mask >> (c - 1) & 1 == 1).collect();
        let kept: Q = a.iter().map(|&c| &lengths[c - 1]).sum();
        let dropped = one() - kept;
        if dropped < best && crate::metrics::restrict(&u, &a)? == crate::metrics::restrict(&v, &a)? {
            best = dropped;
        }
    }
    Ok(best)
}

/// All points in normal form whose cuts are drawn from `grid`, at most
/// `bound` of them.
pub fn normal_points(x: &Arc<FinSSet>, grid: &[Q], bound: usize) -> Result<Vec<RealizationPoint>> {
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << grid.len()) {
        let cuts: Vec<Q> = (0..grid.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| grid[i].clone())
            .collect();
        if cuts.len() > bound {
            continue;
        }
        for s in x.level(cuts.len() + 1) {
            let p = RealizationPoint::new(x.clone(), cuts.clone(), s)?;
            if p.is_normal() {
                out.push(p);
            }
        }
    }
    Ok(out)
}

pub type MergeFn = fn(&ProductSSet, &RealizationPoint, &RealizationPoint) -> Result<RealizationPoint>;

/// A merge that pads the cut set with `1/2` and skips normalization.
pub fn corrupted_merge(prod: &ProductSSet, p: &RealizationPoint, q_: &RealizationPoint) -> Result<RealizationPoint> {
    let mut cuts: Vec<Q> = p.cuts().iter().chain(q_.cuts()).cloned().collect();
    cuts.push(half());
    cuts.sort();
    cuts.dedup();
    let a = p.refine(&cuts)?;
    let b = q_.refine(&cuts)?;
    let x = prod.pair_normal_form(a.simplex(), b.simplex())?;
    RealizationPoint::new(prod.set().clone(), cuts, x)
}

/// Exhaustive check that merging and splitting points of `|X| × |Y|` and
/// `|X × Y|` are inverse bijections on normal forms and commute with
/// evaluation. Returns one line per failure.
pub fn oracle_product_bijection(
    x: Arc<FinSSet>,
    y: Arc<FinSSet>,
    grid: &[Q],
    bound: usize,
    merge: MergeFn,
) -> Result<Vec<String>> {
    let prod = ProductSSet::new(x.clone(), y.clone(), None)?;
    let px = normal_points(&x, grid, bound)?;
    let py = normal_points(&y, grid, bound)?;
    let pz = normal_points(prod.set(), grid, bound)?;

    let mut probe: Vec<Q> = merged_grid([]);
    probe.extend(grid.iter().cloned());
    probe.sort();
    probe.dedup();
    let mids: Vec<Q> = probe.windows(2).map(|w| (&w[0] + &w[1]) * half()).collect();
    probe.extend(mids);
    probe.sort();
    let mut tuples: Vec<Vec<Q>> = probe.iter().map(|t| vec![t.clone()]).collect();
    for (i, a) in probe.iter().enumerate() {
        for b in &probe[i + 1..] {
            tuples.push(vec![a.clone(), b.clone()]);
        }
    }

    let mut report = Vec::new();
    let show = |p: &RealizationPoint| {
        let cuts: Vec<String> = p.cuts().iter().map(fmt_q).collect();
        format!("({{{}}}, {})", cuts.join(","), p.simplex())
    };
    for p in &px {
        for q_ in &py {
            let r = match merge(&prod, p, q_) {
                Ok(r) => r,
                Err(e) => {
                    report.push(format!("merge {} {}: {e}", show(p), show(q_)));
                    continue;
                }
            };
            if !r.is_normal() {
                report.push(format!("merge {} {} is not normal: {}", show(p), show(q_), show(&r)));
            }
            let (a, b) = product_split(&prod, &r)?;
            if a != *p || b != *q_ {
                report.push(format!("split∘merge moves {} {}", show(p), show(q_)));
            }
            for ts in &tuples {
                let (ea, eb) = prod.split(&r.eval(ts)?)?;
                if ea != p.eval(ts)? || eb != q_.eval(ts)? {
                    let t: Vec<String> = ts.iter().map(fmt_q).collect();
                    report.push(format!(
                        "eval at ({}) differs for {} {}",
                        t.join(","),
                        show(p),
                        show(q_)
                    ));
                }
            }
        }
    }
    for r in &pz {
        let (a, b) = product_split(&prod, r)?;
        match merge(&prod, &a, &b) {
            Ok(back) if back == *r => {}
            Ok(back) => report.push(format!("merge∘split sends {} to {}", show(r), show(&back))),
            Err(e) => report.push(format!("merge∘split of {}: {e}", show(r))),
        }
    }
    Ok(report)
}

/// The default merge, for use as a [`MergeFn`].
pub fn merge(prod: &ProductSSet, p: &RealizationPoint, q_: &RealizationPoint) -> Result<RealizationPoint> {
    product_merge(prod, p, q_)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Membership,
    Dist,
    Product,
}

/// Seeded cross-checks of the closed forms against the oracles; returns one
/// line per discrepancy.
pub fn run_suite(suite: Suite, seed: u64, cases: usize) -> Result<Vec<String>> {
    let mut g = Gen::new(seed, 8);
    let mut report = Vec::new();
    for case in 0..cases {
        match suite {
            Suite::Membership => {
                let m = g.range(1, 3);
                let cod = g.range(2, 4);
                let p = g.path(m, cod, 4);
                let n = g.range(1, 2);
                let big_n = g.range(2 * n, 2 * n + 2);
                let theta = g.monotone_map(n, m);
                let d = g.open_unit();
                let fast = crate::filters::theta_skorokhod_member(&p, &theta, n, big_n, &d)?;
                let slow = oracle_membership(&p, &theta, n, big_n, &d)?;
                if fast != slow {
                    report.push(format!(
                        "case {case}: {p:?} θ={theta} n={n} N={big_n} δ̂={}: closed form {fast}, oracle {slow}",
                        fmt_q(&d)
                    ));
                }
            }
            Suite::Dist => {
                let cod = g.range(2, 5);
                let (f, h) = (g.step(cod, 4), g.step(cod, 4));
                let pairs = [
                    (DistKind::V1, crate::metrics::v1_dist(&f, &h)?),
                    (DistKind::V2, crate::metrics::v2_dist(&f, &h)?),
                    (DistKind::V3, crate::metrics::v3_dist(&f, &h)?),
                ];
                for (kind, value) in pairs {
                    let want = oracle_dist(kind, &f, &h)?;
                    if want != value {
                        report.push(format!(
                            "case {case}: {kind:?}({f:?}, {h:?}) = {}, oracle {}",
                            fmt_q(&value),
                            fmt_q(&want)
                        ));
                    }
                }
            }
            Suite::Product => {
                let x = Arc::new(g.sset(5));
                let y = Arc::new(g.sset(5));
                let grid = [q(1, 3), g.open_unit()];
                let mut grid = grid.to_vec();
                grid.sort();
                grid.dedup();
                for line in oracle_product_bijection(x, y, &grid, 1, merge)? {
                    report.push(format!("case {case}: {line}"));
                }
            }
        }
    }
    Ok(report)
}
