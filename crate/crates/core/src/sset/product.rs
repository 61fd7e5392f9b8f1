//! The shuffle product: nondegenerate simplices of `X × Y` are pairs of
//! simplices of equal dimension whose degeneracies never collapse the same
//! pair of adjacent vertices.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{FinSSet, SSetMorphism, SimplexInstance};
use crate::delta::MonotoneMap;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ProductSSet {
    set: Arc<FinSSet>,
    left: Arc<FinSSet>,
    right: Arc<FinSSet>,
    components: BTreeMap<String, (SimplexInstance, SimplexInstance)>,
    index: BTreeMap<(SimplexInstance, SimplexInstance), String>,
}

/// The collapse shared by two surjections on the same domain.
fn joint_collapse(a: &MonotoneMap, b: &MonotoneMap) -> MonotoneMap {
    let mut values = vec![1];
    for j in 1..a.dom() {
        let shared = a.at(j) == a.at(j + 1) && b.at(j) == b.at(j + 1);
        let last = *values.last().expect("nonempty");
        values.push(if shared { last } else { last + 1 });
    }
    MonotoneMap::surjection(values).expect("a collapse is surjective")
}

fn pair_name(a: &SimplexInstance, b: &SimplexInstance) -> String {
    format!("<{};{}>", a, b)
}

impl ProductSSet {
    /// `X × Y`, materialized up to `max_dim` (default: the sum of the top
    /// dimensions, beyond which there are no nondegenerate pairs).
    pub fn new(left: Arc<FinSSet>, right: Arc<FinSSet>, max_dim: Option<usize>) -> Result<Self> {
        let max_dim = max_dim.unwrap_or(left.top_dim() + right.top_dim());
        let mut p = ProductSSet {
            set: Arc::new(FinSSet::new(max_dim)),
            left,
            right,
            components: BTreeMap::new(),
            index: BTreeMap::new(),
        };
        let mut set = FinSSet::new(max_dim);
        for dim in 0..=max_dim {
            let la = p.left.level(dim + 1);
            let lb = p.right.level(dim + 1);
            for a in &la {
                for b in &lb {
                    if !joint_collapse(&a.surj, &b.surj).is_identity() {
                        continue;
                    }
                    let faces = if dim == 0 {
                        Vec::new()
                    } else {
                        (1..=dim + 1)
                            .map(|i| {
                                let fa = p.left.face_of(a, i)?;
                                let fb = p.right.face_of(b, i)?;
                                p.pair_normal_form(&fa, &fb)
                            })
                            .collect::<Result<Vec<_>>>()?
                    };
                    let name = pair_name(a, b);
                    set.add_simplex(name.clone(), dim, faces)?;
                    p.index.insert((a.clone(), b.clone()), name.clone());
                    p.components.insert(name, (a.clone(), b.clone()));
                }
            }
        }
        p.set = Arc::new(set);
        Ok(p)
    }

    pub fn set(&self) -> &Arc<FinSSet> {
        &self.set
    }

    pub fn left(&self) -> &Arc<FinSSet> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FinSSet> {
        &self.right
    }

    /// The pair of factor simplices behind a nondegenerate product simplex.
    pub fn components(&self, name: &str) -> Result<&(SimplexInstance, SimplexInstance)> {
        self.components
            .get(name)
            .ok_or_else(|| Error::UnknownSimplex(name.to_string()))
    }

    /// The product simplex `(a, b)` in normal form.
    pub fn pair_normal_form(&self, a: &SimplexInstance, b: &SimplexInstance) -> Result<SimplexInstance> {
        if a.vertices() != b.vertices() {
            return Err(Error::SizeMismatch(format!(
                "pairing {}-vertex {a} with {}-vertex {b}",
                a.vertices(),
                b.vertices()
            )));
        }
        let sigma = joint_collapse(&a.surj, &b.surj);
        let section = sigma.min_section();
        let a0 = SimplexInstance::new(a.base.clone(), a.surj.after(&section)?)?;
        let b0 = SimplexInstance::new(b.base.clone(), b.surj.after(&section)?)?;
        let name = self.index.get(&(a0.clone(), b0.clone())).ok_or_else(|| {
            Error::OutOfRange(format!(
                "pair ({a0}, {b0}) lies above the materialized dimension {}",
                self.set.max_dim()
            ))
        })?;
        Ok(SimplexInstance {
            base: name.clone(),
            surj: sigma,
        })
    }

    /// Both projections of a product simplex.
    pub fn split(&self, s: &SimplexInstance) -> Result<(SimplexInstance, SimplexInstance)> {
        let (a, b) = self.components(&s.base)?;
        Ok((
            self.left.apply_operator(a, &s.surj)?,
            self.right.apply_operator(b, &s.surj)?,
        ))
    }

    pub fn projection_left(&self) -> Result<SSetMorphism<'_>> {
        let map = self
            .components
            .iter()
            .map(|(name, (a, _))| (name.clone(), a.clone()))
            .collect();
        SSetMorphism::new(&self.set, &self.left, map)
    }

    pub fn projection_right(&self) -> Result<SSetMorphism<'_>> {
        let map = self
            .components
            .iter()
            .map(|(name, (_, b))| (name.clone(), b.clone()))
            .collect();
        SSetMorphism::new(&self.set, &self.right, map)
    }
}
