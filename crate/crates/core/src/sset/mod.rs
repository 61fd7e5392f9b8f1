//! Finitely presented simplicial sets.
//!
//! A presentation stores only the nondegenerate simplices and, for each of
//! them, its codimension-one faces. Every simplex is then uniquely
//! `base · surj` (Eilenberg–Zilber normal form) with `base` nondegenerate and
//! `surj` a surjection of the simplex category; `apply_operator` rewrites any
//! `s · θ` back into that form.
//!
//! Sizes follow the vertex-count convention: an `n`-dimensional simplex has
//! `n + 1` vertices and is acted on by maps with codomain `n + 1`.

mod edgewise;
mod product;

pub use edgewise::{edgewise_product_report, EdgewiseSSet};
pub use product::ProductSSet;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::delta::{all_surjections, MonotoneMap};
use crate::error::{Error, Result};

/// A simplex in normal form: `surj^*(base)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawInstance", into = "RawInstance")]
pub struct SimplexInstance {
    pub base: String,
    pub surj: MonotoneMap,
}

#[derive(Serialize, Deserialize)]
struct RawInstance {
    base: String,
    surj: Vec<usize>,
}

impl TryFrom<RawInstance> for SimplexInstance {
    type Error = Error;
    fn try_from(r: RawInstance) -> Result<Self> {
        Ok(SimplexInstance {
            base: r.base,
            surj: MonotoneMap::surjection(r.surj)?,
        })
    }
}

impl From<SimplexInstance> for RawInstance {
    fn from(s: SimplexInstance) -> Self {
        RawInstance {
            base: s.base,
            surj: s.surj.values().to_vec(),
        }
    }
}

impl fmt::Debug for SimplexInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for SimplexInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surj.is_identity() {
            write!(f, "{}", self.base)
        } else {
            let v: Vec<String> = self.surj.values().iter().map(|x| x.to_string()).collect();
            write!(f, "{}[{}]", self.base, v.join(","))
        }
    }
}

impl SimplexInstance {
    pub fn new(base: impl Into<String>, surj: MonotoneMap) -> Result<Self> {
        if !surj.is_surjective() {
            return Err(Error::InvalidMap(format!("{surj} is not surjective")));
        }
        Ok(SimplexInstance {
            base: base.into(),
            surj,
        })
    }

    /// The nondegenerate simplex `base` itself, with `vertices` vertices.
    pub fn nondegenerate(base: impl Into<String>, vertices: usize) -> Self {
        SimplexInstance {
            base: base.into(),
            surj: MonotoneMap::identity(vertices),
        }
    }

    pub fn vertices(&self) -> usize {
        self.surj.dom()
    }

    pub fn dim(&self) -> usize {
        self.surj.dom() - 1
    }

    pub fn base_dim(&self) -> usize {
        self.surj.cod() - 1
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.surj.is_identity()
    }

    /// Lies on the main diagonal: a total degeneracy of a vertex.
    pub fn is_diagonal(&self) -> bool {
        self.surj.cod() == 1
    }

    /// A canonical string key, used to name derived simplices.
    pub fn key(&self) -> String {
        let v: Vec<String> = self.surj.values().iter().map(|x| x.to_string()).collect();
        format!("{}[{}]", self.base, v.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NondegSimplex {
    pub dim: usize,
    /// `faces[i - 1]` is the face deleting vertex `i`; empty for vertices.
    pub faces: Vec<SimplexInstance>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SSetKind {
    Presented,
    /// The representable `hom(-, N)`; simplices are named by their strictly
    /// increasing value tuples, e.g. `"(1,3)"`.
    Standard(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSSet {
    max_dim: usize,
    kind: SSetKind,
    simplices: BTreeMap<String, NondegSimplex>,
    by_dim: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: String,
    pub message: String,
}

impl Violation {
    pub fn new(kind: &str, message: String) -> Self {
        Violation {
            kind: kind.into(),
            message,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

pub fn std_name(values: &[usize]) -> String {
    let v: Vec<String> = values.iter().map(|x| x.to_string()).collect();
    format!("({})", v.join(","))
}

fn parse_std_name(name: &str) -> Option<Vec<usize>> {
    let inner = name.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|s| s.parse().ok()).collect()
}

impl FinSSet {
    pub fn new(max_dim: usize) -> Self {
        FinSSet {
            max_dim,
            kind: SSetKind::Presented,
            simplices: BTreeMap::new(),
            by_dim: vec![Vec::new(); max_dim + 1],
        }
    }

    /// Adds a nondegenerate simplex. Faces are stored as given; `validate`
    /// reports dangling or inconsistent entries.
    pub fn add_simplex(&mut self, name: impl Into<String>, dim: usize, faces: Vec<SimplexInstance>) -> Result<()> {
        let name = name.into();
        if dim > self.max_dim {
            return Err(Error::MalformedSSet(format!(
                "{name:?} has dimension {dim} > max_dim {}",
                self.max_dim
            )));
        }
        if self.simplices.contains_key(&name) {
            return Err(Error::MalformedSSet(format!("duplicate simplex {name:?}")));
        }
        let expected = if dim == 0 { 0 } else { dim + 1 };
        if faces.len() != expected {
            return Err(Error::MalformedSSet(format!(
                "{name:?} of dimension {dim} needs {expected} faces, got {}",
                faces.len()
            )));
        }
        self.by_dim[dim].push(name.clone());
        self.simplices.insert(name, NondegSimplex { dim, faces });
        Ok(())
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<()> {
        self.add_simplex(name, 0, Vec::new())
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn kind(&self) -> &SSetKind {
        &self.kind
    }

    /// `Some(N)` for `std_simplex(N)`.
    pub fn standard_size(&self) -> Option<usize> {
        match self.kind {
            SSetKind::Standard(n) => Some(n),
            SSetKind::Presented => None,
        }
    }

    pub fn simplex(&self, name: &str) -> Result<&NondegSimplex> {
        self.simplices
            .get(name)
            .ok_or_else(|| Error::UnknownSimplex(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.simplices.contains_key(name)
    }

    pub fn nondegenerate(&self, dim: usize) -> &[String] {
        self.by_dim.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn simplices(&self) -> impl Iterator<Item = (&String, &NondegSimplex)> {
        self.simplices.iter()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Number of nondegenerate simplices per dimension `0..=max_dim`.
    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    /// Highest dimension that actually has a nondegenerate simplex.
    pub fn top_dim(&self) -> usize {
        self.by_dim.iter().rposition(|v| !v.is_empty()).unwrap_or(0)
    }

    pub fn face(&self, base: &str, i: usize) -> Result<&SimplexInstance> {
        let s = self.simplex(base)?;
        s.faces
            .get(i.wrapping_sub(1))
            .ok_or_else(|| Error::OutOfRange(format!("face {i} of {base:?} (dimension {})", s.dim)))
    }

    /// The normal form of `θ^*(s)`.
    pub fn apply_operator(&self, s: &SimplexInstance, theta: &MonotoneMap) -> Result<SimplexInstance> {
        if theta.cod() != s.vertices() {
            return Err(Error::SizeMismatch(format!(
                "operator {theta} applied to {}-vertex simplex {s}",
                s.vertices()
            )));
        }
        let composite = s.surj.after(theta)?;
        let (epi, mono) = composite.epi_mono_factorize();
        let face = self.restrict_base(&s.base, &mono)?;
        Ok(SimplexInstance {
            base: face.base,
            surj: face.surj.after(&epi)?,
        })
    }

    /// `mono^*(base)` for an injective `mono`, peeling off one deleted vertex
    /// at a time through the face table.
    fn restrict_base(&self, base: &str, mono: &MonotoneMap) -> Result<SimplexInstance> {
        let simplex = self.simplex(base)?;
        if mono.cod() != simplex.dim + 1 {
            return Err(Error::MalformedSSet(format!(
                "operator {mono} does not fit {base:?} of dimension {}",
                simplex.dim
            )));
        }
        if mono.is_identity() {
            return Ok(SimplexInstance::nondegenerate(base, simplex.dim + 1));
        }
        let missing = (1..=mono.cod())
            .find(|v| mono.values().binary_search(v).is_err())
            .expect("a non-identity mono misses a vertex");
        let rest: Vec<usize> = mono
            .values()
            .iter()
            .map(|&v| if v > missing { v - 1 } else { v })
            .collect();
        let rest = MonotoneMap::new(rest, mono.cod() - 1)?;
        let face = self.face(base, missing)?;
        if face.vertices() != simplex.dim {
            return Err(Error::MalformedSSet(format!(
                "face {missing} of {base:?} has {} vertices, expected {}",
                face.vertices(),
                simplex.dim
            )));
        }
        self.apply_operator(face, &rest)
    }

    /// The face deleting vertex `i` of an arbitrary simplex.
    pub fn face_of(&self, s: &SimplexInstance, i: usize) -> Result<SimplexInstance> {
        let delta = MonotoneMap::coface(s.vertices() - 1, i)?;
        self.apply_operator(s, &delta)
    }

    /// The `i`-th vertex of a simplex, as a 1-vertex instance.
    pub fn vertex_of(&self, s: &SimplexInstance, i: usize) -> Result<SimplexInstance> {
        let op = MonotoneMap::new(vec![i], s.vertices())?;
        self.apply_operator(s, &op)
    }

    /// All simplices with `vertices` vertices: `X(vertices≤)`.
    pub fn level(&self, vertices: usize) -> Vec<SimplexInstance> {
        let mut out = Vec::new();
        if vertices == 0 {
            return out;
        }
        for k in 0..vertices.min(self.max_dim + 1) {
            let surjs = all_surjections(vertices, k + 1);
            for name in self.nondegenerate(k) {
                for s in &surjs {
                    out.push(SimplexInstance {
                        base: name.clone(),
                        surj: s.clone(),
                    });
                }
            }
        }
        out.sort();
        out
    }

    /// The total degeneracy of a vertex into `vertices` vertices.
    pub fn diagonal(&self, vertex: &str, vertices: usize) -> SimplexInstance {
        SimplexInstance {
            base: vertex.to_string(),
            surj: MonotoneMap::constant(vertices, 1, 1).expect("constant map"),
        }
    }

    /// Checks reference integrity, face dimensions and the simplicial identities.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (name, s) in &self.simplices {
            if s.dim > self.max_dim {
                out.push(Violation::new(
                    "dimension",
                    format!("{name:?} has dimension {} > max_dim {}", s.dim, self.max_dim),
                ));
            }
            let expected = if s.dim == 0 { 0 } else { s.dim + 1 };
            if s.faces.len() != expected {
                out.push(Violation::new(
                    "face count",
                    format!("{name:?} has {} faces, expected {expected}", s.faces.len()),
                ));
                continue;
            }
            for (i, f) in s.faces.iter().enumerate() {
                match self.simplices.get(&f.base) {
                    None => out.push(Violation::new(
                        "dangling face",
                        format!("face {} of {name:?} refers to missing {:?}", i + 1, f.base),
                    )),
                    Some(b) => {
                        if f.vertices() != s.dim {
                            out.push(Violation::new(
                                "face dimension",
                                format!(
                                    "face {} of {name:?} has {} vertices, expected {}",
                                    i + 1,
                                    f.vertices(),
                                    s.dim
                                ),
                            ));
                        }
                        if b.dim + 1 != f.surj.cod() || b.dim >= s.dim {
                            out.push(Violation::new(
                                "face base",
                                format!(
                                    "face {} of {name:?}: base {:?} of dimension {} with {}",
                                    i + 1,
                                    f.base,
                                    b.dim,
                                    f.surj
                                ),
                            ));
                        }
                    }
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        // d_i d_j = d_{j-1} d_i for i < j (deleting vertices, 1-indexed)
        for (name, s) in &self.simplices {
            if s.dim < 2 {
                continue;
            }
            for j in 2..=s.dim + 1 {
                for i in 1..j {
                    let lhs = self.face(name, j).and_then(|f| self.face_of(f, i));
                    let rhs = self.face(name, i).and_then(|f| self.face_of(f, j - 1));
                    match (lhs, rhs) {
                        (Ok(a), Ok(b)) if a == b => {}
                        (Ok(a), Ok(b)) => out.push(Violation::new(
                            "simplicial identity",
                            format!(
                                "{name:?}: deleting vertices {j} then {i} gives {a}, \
                                 deleting {i} then {} gives {b}",
                                j - 1
                            ),
                        )),
                        (Err(e), _) | (_, Err(e)) => {
                            out.push(Violation::new("simplicial identity", format!("{name:?}: {e}")))
                        }
                    }
                }
            }
        }
        out
    }

    /// Value tuple of a simplex of `std_simplex(N)`.
    pub fn std_values(&self, s: &SimplexInstance) -> Result<Vec<usize>> {
        if self.standard_size().is_none() {
            return Err(Error::NotRepresentable("presented simplicial set".into()));
        }
        let base = parse_std_name(&s.base)
            .filter(|_| self.contains(&s.base))
            .ok_or_else(|| Error::UnknownSimplex(s.base.clone()))?;
        if base.len() != s.surj.cod() {
            return Err(Error::MalformedSSet(format!("{s} does not fit its base")));
        }
        Ok(s.surj.values().iter().map(|&i| base[i - 1]).collect())
    }

    /// The simplex of `std_simplex(N)` with the given nondecreasing value tuple.
    pub fn std_instance(&self, values: &[usize]) -> Result<SimplexInstance> {
        let n = self
            .standard_size()
            .ok_or_else(|| Error::NotRepresentable("presented simplicial set".into()))?;
        MonotoneMap::new(values.to_vec(), n)?;
        let (epi, mono) = MonotoneMap::new(values.to_vec(), n)?.epi_mono_factorize();
        Ok(SimplexInstance {
            base: std_name(mono.values()),
            surj: epi,
        })
    }
}

/// The representable `hom(-, N≤)`: the `(N-1)`-simplex.
pub fn std_simplex(n: usize) -> Result<FinSSet> {
    if n == 0 {
        return Err(Error::InvalidParameter("std_simplex needs N >= 1".into()));
    }
    let mut x = FinSSet::new(n - 1);
    x.kind = SSetKind::Standard(n);
    // strictly increasing tuples, by length
    for k in 1..=n {
        for tuple in increasing_tuples(k, n) {
            let faces = if k == 1 {
                Vec::new()
            } else {
                (0..k)
                    .map(|drop| {
                        let mut t = tuple.clone();
                        t.remove(drop);
                        SimplexInstance::nondegenerate(std_name(&t), k - 1)
                    })
                    .collect()
            };
            x.add_simplex(std_name(&tuple), k - 1, faces)?;
        }
    }
    Ok(x)
}

fn increasing_tuples(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            rec(k, n, v + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, n, 1, &mut Vec::new(), &mut out);
    out
}

/// A simplicial map between presentations, given on nondegenerate simplices.
#[derive(Clone, Debug)]
pub struct SSetMorphism<'a> {
    pub source: &'a FinSSet,
    pub target: &'a FinSSet,
    pub map: BTreeMap<String, SimplexInstance>,
}

impl<'a> SSetMorphism<'a> {
    pub fn new(source: &'a FinSSet, target: &'a FinSSet, map: BTreeMap<String, SimplexInstance>) -> Result<Self> {
        let m = SSetMorphism { source, target, map };
        let problems = m.validate();
        if let Some(p) = problems.first() {
            return Err(Error::MalformedSSet(format!("not a simplicial map: {p}")));
        }
        Ok(m)
    }

    /// The morphism sending every vertex to `vertex` of the target.
    pub fn constant(source: &'a FinSSet, target: &'a FinSSet, vertex: &str) -> Result<Self> {
        let map = source
            .simplices()
            .map(|(name, s)| (name.clone(), target.diagonal(vertex, s.dim + 1)))
            .collect();
        Self::new(source, target, map)
    }

    pub fn identity(x: &'a FinSSet) -> Self {
        let map = x
            .simplices()
            .map(|(name, s)| (name.clone(), SimplexInstance::nondegenerate(name, s.dim + 1)))
            .collect();
        SSetMorphism {
            source: x,
            target: x,
            map,
        }
    }

    pub fn apply(&self, s: &SimplexInstance) -> Result<SimplexInstance> {
        let image = self
            .map
            .get(&s.base)
            .ok_or_else(|| Error::UnknownSimplex(s.base.clone()))?;
        self.target.apply_operator(image, &s.surj)
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (name, s) in self.source.simplices() {
            let Some(image) = self.map.get(name) else {
                out.push(Violation::new("unmapped", format!("{name:?} has no image")));
                continue;
            };
            if image.vertices() != s.dim + 1 || !self.target.contains(&image.base) {
                out.push(Violation::new("image", format!("{name:?} maps to invalid {image}")));
                continue;
            }
            for (i, f) in s.faces.iter().enumerate() {
                let lhs = self.apply(f);
                let rhs = self.target.face_of(image, i + 1);
                if lhs.is_err() || lhs != rhs {
                    out.push(Violation::new(
                        "naturality",
                        format!("face {} of {name:?} not preserved", i + 1),
                    ));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn mm(v: &[usize], n: usize) -> MonotoneMap {
        MonotoneMap::new(v.to_vec(), n).unwrap()
    }

    #[test]
    fn std_simplex_counts_and_faces() {
        assert_eq!(std_simplex(1).unwrap().counts(), vec![1]);
        assert_eq!(std_simplex(3).unwrap().counts(), vec![3, 3, 1]);
        let d1 = std_simplex(2).unwrap();
        let e = d1.simplex("(1,2)").unwrap();
        assert_eq!(e.faces[0], SimplexInstance::nondegenerate("(2)", 1));
        assert_eq!(e.faces[1], SimplexInstance::nondegenerate("(1)", 1));
        assert!(std_simplex(0).is_err());
    }

    #[test]
    fn apply_operator_examples() {
        let d1 = std_simplex(2).unwrap();
        let edge = SimplexInstance::nondegenerate("(1,2)", 2);
        assert_eq!(d1.apply_operator(&edge, &MonotoneMap::identity(2)).unwrap(), edge);

        let degenerate = d1.std_instance(&[1, 1, 2]).unwrap();
        let r = d1.apply_operator(&degenerate, &mm(&[1, 3], 3)).unwrap();
        assert_eq!(r, edge);

        // a surjection only composes with the stored one
        let s = MonotoneMap::surjection(vec![1, 1, 2, 2]).unwrap();
        let r = d1.apply_operator(&edge, &s).unwrap();
        assert_eq!(r.base, "(1,2)");
        assert_eq!(r.surj, s);

        assert!(matches!(
            d1.apply_operator(&edge, &mm(&[1], 3)),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn std_values_roundtrip() {
        let d2 = std_simplex(4).unwrap();
        for tuple in [vec![1, 1, 3], vec![2, 4], vec![3]] {
            let s = d2.std_instance(&tuple).unwrap();
            assert_eq!(d2.std_values(&s).unwrap(), tuple);
        }
    }

    #[test]
    fn yoneda_at_small_scale() {
        // simplices of std_simplex(N) with n vertices are the monotone maps n -> N
        for big_n in 1..=4 {
            let x = std_simplex(big_n).unwrap();
            for n in 1..=4 {
                let level = x.level(n);
                let maps = crate::delta::all_maps(n, big_n);
                assert_eq!(level.len(), maps.len());
                let values: BTreeSet<Vec<usize>> = level.iter().map(|s| x.std_values(s).unwrap()).collect();
                let expected: BTreeSet<Vec<usize>> = maps.iter().map(|m| m.values().to_vec()).collect();
                assert_eq!(values, expected);
            }
        }
    }

    #[test]
    fn validate_std_simplex_is_clean() {
        assert!(std_simplex(4).unwrap().validate().is_empty());
    }

    #[test]
    fn validate_reports_dangling_face() {
        let mut x = FinSSet::new(1);
        x.add_vertex("a").unwrap();
        x.add_simplex(
            "e",
            1,
            vec![
                SimplexInstance::nondegenerate("a", 1),
                SimplexInstance::nondegenerate("missing", 1),
            ],
        )
        .unwrap();
        let report = x.validate();
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].kind, "dangling face");
    }

    #[test]
    fn validate_catches_broken_identity() {
        // a triangle whose edges do not meet
        let mut x = FinSSet::new(2);
        for v in ["a", "b", "c", "d"] {
            x.add_vertex(v).unwrap();
        }
        let v = |n: &str| SimplexInstance::nondegenerate(n, 1);
        let e = |n: &str| SimplexInstance::nondegenerate(n, 2);
        x.add_simplex("ab", 1, vec![v("b"), v("a")]).unwrap();
        x.add_simplex("bc", 1, vec![v("c"), v("b")]).unwrap();
        x.add_simplex("ad", 1, vec![v("d"), v("a")]).unwrap();
        x.add_simplex("t", 2, vec![e("bc"), e("ad"), e("ab")]).unwrap();
        let report = x.validate();
        assert!(!report.is_empty());
        assert!(report.iter().all(|r| r.kind == "simplicial identity"));
    }

    fn two_triangle_sphere() -> FinSSet {
        let mut x = FinSSet::new(2);
        for v in ["a", "b", "c"] {
            x.add_vertex(v).unwrap();
        }
        let v = |n: &str| SimplexInstance::nondegenerate(n, 1);
        let e = |n: &str| SimplexInstance::nondegenerate(n, 2);
        x.add_simplex("ab", 1, vec![v("b"), v("a")]).unwrap();
        x.add_simplex("bc", 1, vec![v("c"), v("b")]).unwrap();
        x.add_simplex("ac", 1, vec![v("c"), v("a")]).unwrap();
        x.add_simplex("upper", 2, vec![e("bc"), e("ac"), e("ab")]).unwrap();
        x.add_simplex("lower", 2, vec![e("bc"), e("ac"), e("ab")]).unwrap();
        x
    }

    #[test]
    fn sphere_presentation_is_valid() {
        let s2 = two_triangle_sphere();
        assert!(s2.validate().is_empty());
        assert_eq!(s2.counts(), vec![3, 3, 2]);
        // one-vertex sphere: a triangle collapsed onto its boundary
        let mut s = FinSSet::new(2);
        s.add_vertex("p").unwrap();
        let deg = SimplexInstance::new("p", MonotoneMap::surjection(vec![1, 1]).unwrap()).unwrap();
        s.add_simplex("t", 2, vec![deg.clone(), deg.clone(), deg]).unwrap();
        assert!(s.validate().is_empty());
    }

    #[test]
    fn operators_compose_contravariantly() {
        let s2 = two_triangle_sphere();
        let top = SimplexInstance::nondegenerate("upper", 3);
        for a in crate::delta::all_maps(3, 3) {
            for b in crate::delta::all_maps(2, 3) {
                let lhs = s2.apply_operator(&s2.apply_operator(&top, &a).unwrap(), &b).unwrap();
                let rhs = s2.apply_operator(&top, &a.after(&b).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn morphisms() {
        let d1 = std_simplex(2).unwrap();
        let pt = std_simplex(1).unwrap();
        let to_point = SSetMorphism::constant(&d1, &pt, "(1)").unwrap();
        let e = SimplexInstance::nondegenerate("(1,2)", 2);
        assert!(to_point.apply(&e).unwrap().is_diagonal());
        let id = SSetMorphism::identity(&d1);
        assert!(id.validate().is_empty());
        let mut bad = BTreeMap::new();
        bad.insert("(1)".to_string(), SimplexInstance::nondegenerate("(1)", 1));
        bad.insert("(2)".to_string(), SimplexInstance::nondegenerate("(1)", 1));
        bad.insert("(1,2)".to_string(), SimplexInstance::nondegenerate("(1,2)", 2));
        assert!(SSetMorphism::new(&d1, &d1, bad).is_err());
    }
}
