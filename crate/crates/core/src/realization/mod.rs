//! Points of the geometric realization as pairs `(F, x)`: a finite cut set
//! `F ⊂ (0,1)` and a simplex `x` with one vertex per component of
//! `[0,1] \ F`, modulo refinement of `F` and degeneracies of `x`.
//!
//! Convention: a cut point belongs to the component on its right, so the
//! components of `F = {c_1 < .. < c_k}` are `[0,c_1), [c_1,c_2), .., [c_k,1]`
//! and `t` lies in component `1 + #{c ∈ F : c <= t}`.

mod homeo;
mod step;

pub use homeo::PLHomeo;
pub use step::{merged_grid, PathSimplex, StepFunction};

use std::fmt;
use std::sync::Arc;

use crate::delta::MonotoneMap;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, in_unit, one, zero, Q};
use crate::sset::{FinSSet, ProductSSet, SimplexInstance};

#[derive(Clone)]
pub struct RealizationPoint {
    sset: Arc<FinSSet>,
    cuts: Vec<Q>,
    simplex: SimplexInstance,
}

impl PartialEq for RealizationPoint {
    fn eq(&self, other: &Self) -> bool {
        same_sset(&self.sset, &other.sset) && self.cuts == other.cuts && self.simplex == other.simplex
    }
}

impl Eq for RealizationPoint {}

impl fmt::Debug for RealizationPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cuts: Vec<String> = self.cuts.iter().map(fmt_q).collect();
        write!(f, "({{{}}}, {})", cuts.join(","), self.simplex)
    }
}

pub fn same_sset(a: &Arc<FinSSet>, b: &Arc<FinSSet>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Component index of `t` under the right-continuity convention.
pub fn component(cuts: &[Q], t: &Q) -> usize {
    1 + cuts.partition_point(|c| c <= t)
}

fn check_cuts(cuts: &[Q]) -> Result<()> {
    if !cuts.iter().all(in_unit) || cuts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::MalformedPoint(format!(
            "cuts must increase strictly inside [0,1]: {:?}",
            cuts.iter().map(fmt_q).collect::<Vec<_>>()
        )));
    }
    Ok(())
}

fn check_tuple(ts: &[Q]) -> Result<()> {
    if ts.is_empty() || !ts.iter().all(in_unit) || ts.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameter(format!(
            "expected a nonempty nondecreasing tuple in [0,1], got {:?}",
            ts.iter().map(fmt_q).collect::<Vec<_>>()
        )));
    }
    Ok(())
}

impl RealizationPoint {
    /// A point as given; cuts may include `0` or `1` and `x` may be
    /// degenerate. Use [`RealizationPoint::normalize`] for the normal form.
    pub fn new(sset: Arc<FinSSet>, cuts: Vec<Q>, simplex: SimplexInstance) -> Result<Self> {
        check_cuts(&cuts)?;
        if simplex.vertices() != cuts.len() + 1 {
            return Err(Error::MalformedPoint(format!(
                "{} cuts need a simplex with {} vertices, got {simplex}",
                cuts.len(),
                cuts.len() + 1
            )));
        }
        let base = sset
            .simplex(&simplex.base)
            .map_err(|e| Error::MalformedPoint(e.to_string()))?;
        if base.dim + 1 != simplex.surj.cod() {
            return Err(Error::MalformedPoint(format!(
                "{simplex} does not fit its base of dimension {}",
                base.dim
            )));
        }
        Ok(RealizationPoint { sset, cuts, simplex })
    }

    /// A vertex of `X`, as a point with no cuts.
    pub fn vertex(sset: Arc<FinSSet>, name: &str) -> Result<Self> {
        RealizationPoint::new(sset, Vec::new(), SimplexInstance::nondegenerate(name, 1))
    }

    pub fn sset(&self) -> &Arc<FinSSet> {
        &self.sset
    }

    pub fn cuts(&self) -> &[Q] {
        &self.cuts
    }

    pub fn simplex(&self) -> &SimplexInstance {
        &self.simplex
    }

    /// Lebesgue lengths of the components.
    pub fn lengths(&self) -> Vec<Q> {
        let mut ends = vec![zero()];
        ends.extend(self.cuts.iter().cloned());
        ends.push(one());
        ends.windows(2).map(|w| &w[1] - &w[0]).collect()
    }

    pub fn check_same(&self, other: &RealizationPoint) -> Result<()> {
        if !same_sset(&self.sset, &other.sset) {
            return Err(Error::SSetMismatch);
        }
        Ok(())
    }

    /// Removes vacuous cuts and collapses components on which `x` is
    /// degenerate; the result has nondegenerate `x` and cuts in `(0,1)`.
    pub fn normalize(&self) -> Result<Self> {
        let mut cuts = self.cuts.clone();
        let mut x = self.simplex.clone();
        // [0,0) is empty, and {1} is a null set
        while cuts.first().is_some_and(|c| *c == zero()) {
            x = self.sset.face_of(&x, 1)?;
            cuts.remove(0);
        }
        while cuts.last().is_some_and(|c| *c == one()) {
            x = self.sset.face_of(&x, x.vertices())?;
            cuts.pop();
        }
        let surj = x.surj.values();
        let kept = cuts
            .into_iter()
            .enumerate()
            .filter(|(j, _)| surj[*j] != surj[j + 1])
            .map(|(_, c)| c)
            .collect();
        let base = SimplexInstance::nondegenerate(x.base, x.surj.cod());
        RealizationPoint::new(self.sset.clone(), kept, base)
    }

    pub fn is_normal(&self) -> bool {
        self.simplex.is_nondegenerate() && self.cuts.iter().all(|c| *c != zero() && *c != one())
    }

    /// The same point written over the finer cut set `finer ⊇ F`: `x` is
    /// pulled back along the contraction of components.
    pub fn refine(&self, finer: &[Q]) -> Result<Self> {
        check_cuts(finer)?;
        if let Some(c) = self.cuts.iter().find(|c| finer.binary_search(c).is_err()) {
            return Err(Error::InvalidParameter(format!(
                "refinement misses the cut {}",
                fmt_q(c)
            )));
        }
        let mut values = vec![1];
        values.extend(finer.iter().map(|c| component(&self.cuts, c)));
        let contraction = MonotoneMap::new(values, self.cuts.len() + 1)?;
        let x = self.sset.apply_operator(&self.simplex, &contraction)?;
        RealizationPoint::new(self.sset.clone(), finer.to_vec(), x)
    }

    /// The simplex `x[t_1 <= .. <= t_n]`: each `t_i` is sent to its component.
    pub fn eval(&self, ts: &[Q]) -> Result<SimplexInstance> {
        check_tuple(ts)?;
        let values = ts.iter().map(|t| component(&self.cuts, t)).collect();
        let op = MonotoneMap::new(values, self.cuts.len() + 1)?;
        self.sset.apply_operator(&self.simplex, &op)
    }

    /// Reads the step function of a point of `|Δ_{N-1}|`:
    /// `s_i = ` the left end of the first component whose value exceeds `i`.
    pub fn to_step(&self) -> Result<StepFunction> {
        let n = self
            .sset
            .standard_size()
            .ok_or_else(|| Error::NotRepresentable("point is not over a standard simplex".into()))?;
        let p = self.normalize()?;
        let values = p.sset.std_values(&p.simplex)?;
        StepFunction::from_pieces(n, &p.cuts, &values)
    }

    /// The point of `|Δ_{N-1}|` whose step function is `f`.
    pub fn from_step(sset: Arc<FinSSet>, f: &StepFunction) -> Result<Self> {
        let n = sset
            .standard_size()
            .ok_or_else(|| Error::NotRepresentable("target is not a standard simplex".into()))?;
        if f.n() != n {
            return Err(Error::CodomainMismatch(f.n(), n));
        }
        let cuts: Vec<Q> = f.jumps().into_iter().filter(|s| *s != zero() && *s != one()).collect();
        let mut values = vec![f.eval(&zero())];
        values.extend(cuts.iter().map(|c| f.eval(c)));
        let x = sset.std_instance(&values)?;
        RealizationPoint::new(sset, cuts, x)
    }

    /// Moves the cuts along an orientation preserving homeomorphism.
    pub fn homeo_apply(&self, phi: &PLHomeo) -> Result<Self> {
        let cuts = self.cuts.iter().map(|c| phi.apply(c)).collect::<Result<Vec<_>>>()?;
        RealizationPoint::new(self.sset.clone(), cuts, self.simplex.clone())
    }
}

/// The point of `|X × Y|` corresponding to `(p, q)`.
pub fn product_merge(prod: &ProductSSet, p: &RealizationPoint, q: &RealizationPoint) -> Result<RealizationPoint> {
    if !same_sset(p.sset(), prod.left()) || !same_sset(q.sset(), prod.right()) {
        return Err(Error::SSetMismatch);
    }
    let mut cuts: Vec<Q> = p.cuts.iter().chain(&q.cuts).cloned().collect();
    cuts.sort();
    cuts.dedup();
    let a = p.refine(&cuts)?.simplex;
    let b = q.refine(&cuts)?.simplex;
    let x = prod.pair_normal_form(&a, &b)?;
    RealizationPoint::new(prod.set().clone(), cuts, x)?.normalize()
}

/// The two projections of a point of `|X × Y|`, in normal form.
pub fn product_split(prod: &ProductSSet, r: &RealizationPoint) -> Result<(RealizationPoint, RealizationPoint)> {
    if !same_sset(r.sset(), prod.set()) {
        return Err(Error::SSetMismatch);
    }
    let (a, b) = prod.split(&r.simplex)?;
    let p = RealizationPoint::new(prod.left().clone(), r.cuts.clone(), a)?.normalize()?;
    let q = RealizationPoint::new(prod.right().clone(), r.cuts.clone(), b)?.normalize()?;
    Ok((p, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::sset::std_simplex;

    fn delta(n: usize) -> Arc<FinSSet> {
        Arc::new(std_simplex(n).unwrap())
    }

    fn point(x: &Arc<FinSSet>, cuts: Vec<Q>, values: &[usize]) -> RealizationPoint {
        let s = x.std_instance(values).unwrap();
        RealizationPoint::new(x.clone(), cuts, s).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let d1 = delta(2);
        let p = point(&d1, vec![q(1, 2)], &[1, 1]);
        assert_eq!(p.normalize().unwrap(), point(&d1, vec![], &[1]));
        let p = point(&d1, vec![q(1, 4), q(3, 4)], &[1, 2, 2]);
        let n = p.normalize().unwrap();
        assert_eq!(n, point(&d1, vec![q(1, 4)], &[1, 2]));
        assert_eq!(n.normalize().unwrap(), n);
    }

    #[test]
    fn normalize_drops_endpoint_cuts() {
        let d1 = delta(2);
        let p = point(&d1, vec![zero(), q(1, 2)], &[1, 1, 2]);
        assert_eq!(p.normalize().unwrap(), point(&d1, vec![q(1, 2)], &[1, 2]));
        let p = point(&d1, vec![one()], &[1, 2]);
        assert_eq!(p.normalize().unwrap(), point(&d1, vec![], &[1]));
    }

    #[test]
    fn malformed_point() {
        let d1 = delta(2);
        let s = d1.std_instance(&[1, 2]).unwrap();
        let err = RealizationPoint::new(d1, vec![], s).unwrap_err();
        assert!(err.to_string().contains("malformed point"));
    }

    #[test]
    fn refine_examples() {
        let d1 = delta(2);
        let p = point(&d1, vec![q(1, 3)], &[1, 2]);
        assert_eq!(p.refine(&[q(1, 3)]).unwrap(), p);
        let r = p.refine(&[q(1, 4), q(1, 3)]).unwrap();
        assert_eq!(r, point(&d1, vec![q(1, 4), q(1, 3)], &[1, 1, 2]));
        assert_eq!(r.normalize().unwrap(), p);
        assert!(p.refine(&[q(1, 4)]).is_err());
    }

    #[test]
    fn eval_examples() {
        let d1 = delta(2);
        let p = point(&d1, vec![q(1, 3)], &[1, 2]);
        let v = p.eval(&[q(1, 4), q(1, 2)]).unwrap();
        assert_eq!(d1.std_values(&v).unwrap(), vec![1, 2]);
        let v = p.eval(&[q(1, 3)]).unwrap();
        assert_eq!(d1.std_values(&v).unwrap(), vec![2]);
        let c = point(&d1, vec![], &[2]);
        let v = c.eval(&[zero(), q(1, 2), one()]).unwrap();
        assert_eq!(d1.std_values(&v).unwrap(), vec![2, 2, 2]);
    }

    #[test]
    fn step_conversion() {
        let d1 = delta(2);
        let p = point(&d1, vec![q(1, 3)], &[1, 2]);
        let f = p.to_step().unwrap();
        assert_eq!(f.coords(), &[q(1, 3)]);
        assert_eq!(RealizationPoint::from_step(d1.clone(), &f).unwrap(), p);
        let c = StepFunction::new(2, vec![one()]).unwrap();
        assert_eq!(
            RealizationPoint::from_step(d1.clone(), &c).unwrap(),
            point(&d1, vec![], &[1])
        );
        // skipped values are repeated coordinates
        let d3 = delta(4);
        let p = point(&d3, vec![q(1, 2)], &[1, 3]);
        assert_eq!(p.to_step().unwrap().coords(), &[q(1, 2), q(1, 2), one()]);
    }

    #[test]
    fn to_step_needs_a_standard_simplex() {
        let mut x = FinSSet::new(0);
        x.add_vertex("a").unwrap();
        let p = RealizationPoint::vertex(Arc::new(x), "a").unwrap();
        assert!(matches!(p.to_step(), Err(Error::NotRepresentable(_))));
    }

    #[test]
    fn product_examples() {
        let d1 = delta(2);
        let prod = ProductSSet::new(d1.clone(), d1.clone(), None).unwrap();
        let p = point(&d1, vec![q(1, 3)], &[1, 2]);
        let r = point(&d1, vec![q(1, 2)], &[1, 2]);
        let m = product_merge(&prod, &p, &r).unwrap();
        assert_eq!(m.cuts(), &[q(1, 3), q(1, 2)]);
        let (a, b) = prod.split(m.simplex()).unwrap();
        assert_eq!(d1.std_values(&a).unwrap(), vec![1, 2, 2]);
        assert_eq!(d1.std_values(&b).unwrap(), vec![1, 1, 2]);
        assert_eq!(product_split(&prod, &m).unwrap(), (p.clone(), r.clone()));

        let v = point(&d1, vec![], &[1]);
        let w = point(&d1, vec![], &[2]);
        assert!(product_merge(&prod, &v, &w).unwrap().cuts().is_empty());
    }

    #[test]
    fn homeo_examples() {
        let d1 = delta(2);
        let p = point(&d1, vec![q(1, 2)], &[1, 2]);
        assert_eq!(p.homeo_apply(&PLHomeo::identity()).unwrap(), p);
        let phi = PLHomeo::new(vec![(zero(), zero()), (q(1, 2), q(1, 4)), (one(), one())]).unwrap();
        assert_eq!(p.homeo_apply(&phi).unwrap(), point(&d1, vec![q(1, 4)], &[1, 2]));
        let moved = p.homeo_apply(&phi).unwrap();
        for t in [q(1, 8), q(1, 4), q(3, 8), q(9, 10)] {
            let back = phi.inverse().apply(&t).unwrap();
            assert_eq!(moved.eval(&[t]).unwrap(), p.eval(&[back]).unwrap());
        }
    }
}
