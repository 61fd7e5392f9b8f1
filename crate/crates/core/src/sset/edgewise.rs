//! Precomposition with the edgewise endofunctor: `(X∘e)(n) = X(2n)`, with an
//! operator `θ` acting through `e(θ)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{FinSSet, ProductSSet, SimplexInstance};
use crate::delta::MonotoneMap;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct EdgewiseSSet {
    set: Arc<FinSSet>,
    source: Arc<FinSSet>,
    origin: BTreeMap<String, SimplexInstance>,
    index: BTreeMap<SimplexInstance, String>,
}

impl EdgewiseSSet {
    /// Materializes `X∘e` up to `max_dim`. The default is the top dimension
    /// of `X`: the edgewise subdivision has the same realization, so no
    /// nondegenerate simplices live above it.
    pub fn new(source: Arc<FinSSet>, max_dim: Option<usize>) -> Result<Self> {
        let max_dim = max_dim.unwrap_or(source.top_dim());
        let mut e = EdgewiseSSet {
            set: Arc::new(FinSSet::new(max_dim)),
            source,
            origin: BTreeMap::new(),
            index: BTreeMap::new(),
        };
        let mut set = FinSSet::new(max_dim);
        for dim in 0..=max_dim {
            let n = dim + 1;
            for y in e.source.level(2 * n) {
                if !e.degenerate_positions(&y, n)?.is_empty() {
                    continue;
                }
                let faces = if dim == 0 {
                    Vec::new()
                } else {
                    (1..=n)
                        .map(|i| {
                            let d = MonotoneMap::coface(n - 1, i)?;
                            let f = e.source.apply_operator(&y, &d.edgewise())?;
                            e.normal_form(&f)
                        })
                        .collect::<Result<Vec<_>>>()?
                };
                let name = y.to_string();
                set.add_simplex(name.clone(), dim, faces)?;
                e.index.insert(y.clone(), name.clone());
                e.origin.insert(name, y);
            }
        }
        e.set = Arc::new(set);
        Ok(e)
    }

    pub fn set(&self) -> &Arc<FinSSet> {
        &self.set
    }

    pub fn source(&self) -> &Arc<FinSSet> {
        &self.source
    }

    /// The simplex of `X` (with twice the vertices) behind a nondegenerate
    /// simplex of `X∘e`.
    pub fn origin(&self, name: &str) -> Result<&SimplexInstance> {
        self.origin
            .get(name)
            .ok_or_else(|| Error::UnknownSimplex(name.to_string()))
    }

    /// Positions `i` with `y = (y · e(δ_{i+1})) · e(σ_i)`, i.e. where `y`,
    /// viewed as an `n`-vertex simplex of `X∘e`, is degenerate.
    fn degenerate_positions(&self, y: &SimplexInstance, n: usize) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for i in 1..n {
            let delta = MonotoneMap::coface(n - 1, i + 1)?.edgewise();
            let sigma = MonotoneMap::codegeneracy(n - 1, i)?.edgewise();
            let face = self.source.apply_operator(y, &delta)?;
            if self.source.apply_operator(&face, &sigma)? == *y {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// The normal form in `X∘e` of a simplex of `X` with an even number of vertices.
    pub fn normal_form(&self, y: &SimplexInstance) -> Result<SimplexInstance> {
        if y.vertices() % 2 != 0 {
            return Err(Error::SizeMismatch(format!("{y} has an odd number of vertices")));
        }
        let n = y.vertices() / 2;
        let collapsed = self.degenerate_positions(y, n)?;
        let mut values = vec![1];
        for j in 1..n {
            let last = *values.last().expect("nonempty");
            values.push(if collapsed.contains(&j) { last } else { last + 1 });
        }
        let sigma = MonotoneMap::surjection(values)?;
        let core = self.source.apply_operator(y, &sigma.min_section().edgewise())?;
        let name = self.index.get(&core).ok_or_else(|| {
            Error::OutOfRange(format!(
                "{core} lies above the materialized dimension {}",
                self.set.max_dim()
            ))
        })?;
        Ok(SimplexInstance {
            base: name.clone(),
            surj: sigma,
        })
    }

    /// The simplex of `X` represented by a simplex of `X∘e`.
    pub fn unfold(&self, s: &SimplexInstance) -> Result<SimplexInstance> {
        let y = self.origin(&s.base)?;
        self.source.apply_operator(y, &s.surj.edgewise())
    }
}

/// Compares `(X × Y)∘e` with `(X∘e) × (Y∘e)` through the canonical bijection
/// `X(2n) × Y(2n)`; returns the list of discrepancies (empty when the two
/// presentations agree on counts and faces).
pub fn edgewise_product_report(x: Arc<FinSSet>, y: Arc<FinSSet>) -> Result<Vec<String>> {
    let mut report = Vec::new();
    let p = ProductSSet::new(x.clone(), y.clone(), None)?;
    let lhs = EdgewiseSSet::new(p.set().clone(), None)?;
    let ex = EdgewiseSSet::new(x, None)?;
    let ey = EdgewiseSSet::new(y, None)?;
    let rhs = ProductSSet::new(ex.set().clone(), ey.set().clone(), None)?;

    let (lc, rc) = (lhs.set().counts(), rhs.set().counts());
    let dims = lc.len().max(rc.len());
    for d in 0..dims {
        let (a, b) = (lc.get(d).copied().unwrap_or(0), rc.get(d).copied().unwrap_or(0));
        if a != b {
            report.push(format!("dimension {d}: {a} vs {b} nondegenerate simplices"));
        }
    }

    let translate = |s: &SimplexInstance| -> Result<SimplexInstance> {
        let (a, b) = p.split(&lhs.unfold(s)?)?;
        rhs.pair_normal_form(&ex.normal_form(&a)?, &ey.normal_form(&b)?)
    };
    let mut image = BTreeMap::new();
    for (name, simplex) in lhs.set().simplices() {
        let s = SimplexInstance::nondegenerate(name.clone(), simplex.dim + 1);
        let t = translate(&s)?;
        if !t.is_nondegenerate() {
            report.push(format!("{name} goes to degenerate {t}"));
            continue;
        }
        if let Some(prev) = image.insert(t.base.clone(), name.clone()) {
            report.push(format!("{prev} and {name} both go to {}", t.base));
        }
        for i in 1..=simplex.dim.max(1) {
            if simplex.dim == 0 {
                break;
            }
            let lf = translate(&lhs.set().face_of(&s, i)?)?;
            let rf = rhs.set().face_of(&t, i)?;
            if lf != rf {
                report.push(format!("face {i} of {name}: {lf} vs {rf}"));
            }
        }
    }
    Ok(report)
}
