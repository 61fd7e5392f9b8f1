//! JSON file formats. Rationals are always `"p/q"` strings.
//!
//! * simplicial set: `{"max_dim": D, "simplices": {"0": ["v0"], "1": ["e0"]},
//!   "faces": {"e0": [{"base": "v1", "surj": [1]}, {"base": "v0", "surj": [1]}]}}`
//! * point: `{"sset": "<file>" | "delta:N", "F": ["1/3"], "x": {"base", "surj"}}`
//! * step function: `{"N": 3, "s": ["1/3", "1/2"]}`
//! * path simplex: `{"N": 3, "chains": [["1/2", "1"], ["1/3", "1"]]}`
//! * homeomorphism: `{"knots": [["0","0"], ["1/2","1/4"], ["1","1"]]}`
//! * morphism: `{"source": .., "target": .., "map": {"e0": {"base", "surj"}}}`

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{serde_q_vec, Q};
use crate::realization::{RealizationPoint, StepFunction};
use crate::sset::{std_simplex, FinSSet, SimplexInstance};

#[derive(Serialize, Deserialize)]
struct SSetFile {
    max_dim: usize,
    simplices: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    faces: BTreeMap<String, Vec<SimplexInstance>>,
}

pub fn sset_from_json(text: &str) -> Result<FinSSet> {
    let file: SSetFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut by_dim: Vec<(usize, &Vec<String>)> = file
        .simplices
        .iter()
        .map(|(d, names)| {
            d.parse::<usize>()
                .map(|d| (d, names))
                .map_err(|_| Error::Parse(format!("dimension key {d:?}")))
        })
        .collect::<Result<_>>()?;
    by_dim.sort();
    let mut x = FinSSet::new(file.max_dim);
    for (dim, names) in by_dim {
        for name in names {
            let faces = file.faces.get(name).cloned().unwrap_or_default();
            x.add_simplex(name.clone(), dim, faces)?;
        }
    }
    if let Some(extra) = file.faces.keys().find(|k| !x.contains(k)) {
        return Err(Error::MalformedSSet(format!("faces given for unknown {extra:?}")));
    }
    Ok(x)
}

pub fn sset_to_json(x: &FinSSet) -> String {
    let mut simplices: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut faces = BTreeMap::new();
    for dim in 0..=x.max_dim() {
        let names = x.nondegenerate(dim);
        if names.is_empty() {
            continue;
        }
        simplices.insert(dim.to_string(), names.to_vec());
        for name in names.iter().filter(|_| dim > 0) {
            let s = x.simplex(name).expect("listed simplex");
            faces.insert(name.clone(), s.faces.clone());
        }
    }
    let file = SSetFile {
        max_dim: x.max_dim(),
        simplices,
        faces,
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn parse<T: DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    parse(&read(path)?, &path.display().to_string())
}

/// `delta:N` names the standard simplex with `N` vertices; anything else is
/// a file path, taken relative to `base` when given.
pub fn load_sset(spec: &str, base: Option<&Path>) -> Result<FinSSet> {
    if let Some(n) = spec.strip_prefix("delta:") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad standard simplex {spec:?}")))?;
        return std_simplex(n);
    }
    let path = match base {
        Some(dir) if Path::new(spec).is_relative() => dir.join(spec),
        _ => PathBuf::from(spec),
    };
    sset_from_json(&read(&path)?)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointFile {
    pub sset: String,
    #[serde(rename = "F", with = "serde_q_vec")]
    pub cuts: Vec<Q>,
    pub x: SimplexInstance,
}

impl PointFile {
    pub fn resolve(&self, base: Option<&Path>) -> Result<RealizationPoint> {
        let x = load_sset(&self.sset, base)?;
        RealizationPoint::new(Arc::new(x), self.cuts.clone(), self.x.clone())
    }

    pub fn of(point: &RealizationPoint, sset: &str) -> Self {
        PointFile {
            sset: sset.to_string(),
            cuts: point.cuts().to_vec(),
            x: point.simplex().clone(),
        }
    }
}

/// Either a realization point or a step function (read as a point of the
/// standard simplex with `N` vertices).
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum PointOrStep {
    Point(PointFile),
    Step(StepFunction),
}

impl PointOrStep {
    pub fn into_point(self, base: Option<&Path>) -> Result<RealizationPoint> {
        match self {
            PointOrStep::Point(p) => p.resolve(base),
            PointOrStep::Step(f) => RealizationPoint::from_step(Arc::new(std_simplex(f.n())?), &f),
        }
    }

    pub fn into_step(self, base: Option<&Path>) -> Result<StepFunction> {
        match self {
            PointOrStep::Point(p) => p.resolve(base)?.to_step(),
            PointOrStep::Step(f) => Ok(f),
        }
    }
}

/// A single point or a list of them.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum PointList {
    Many(Vec<PointOrStep>),
    One(PointOrStep),
}

impl PointList {
    pub fn into_vec(self) -> Vec<PointOrStep> {
        match self {
            PointList::Many(v) => v,
            PointList::One(p) => vec![p],
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorphismFile {
    pub source: String,
    pub target: String,
    pub map: BTreeMap<String, SimplexInstance>,
}

/// The directory holding `path`, for resolving relative references.
pub fn parent_dir(path: &Path) -> Option<&Path> {
    path.parent().filter(|p| !p.as_os_str().is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    const CIRCLE: &str = r#"{"max_dim": 1, "simplices": {"0": ["a", "b"], "1": ["up", "down"]},
        "faces": {"up": [{"base": "b", "surj": [1]}, {"base": "a", "surj": [1]}],
                  "down": [{"base": "b", "surj": [1]}, {"base": "a", "surj": [1]}]}}"#;

    #[test]
    fn sset_roundtrip() {
        let x = sset_from_json(CIRCLE).unwrap();
        assert_eq!(x.counts(), vec![2, 2]);
        assert!(x.validate().is_empty());
        let again = sset_from_json(&sset_to_json(&x)).unwrap();
        assert_eq!(again, x);
        let d2 = std_simplex(3).unwrap();
        let back = sset_from_json(&sset_to_json(&d2)).unwrap();
        assert_eq!(back.counts(), d2.counts());
    }

    #[test]
    fn malformed_sset_files() {
        assert!(sset_from_json("{").is_err());
        let bad =
            r#"{"max_dim": 1, "simplices": {"0": ["a"], "1": ["e"]}, "faces": {"e": [{"base": "a", "surj": [1]}]}}"#;
        assert!(matches!(sset_from_json(bad), Err(Error::MalformedSSet(_))));
        let dangling = r#"{"max_dim": 1, "simplices": {"0": ["a"], "1": ["e"]},
            "faces": {"e": [{"base": "z", "surj": [1]}, {"base": "a", "surj": [1]}]}}"#;
        assert!(!sset_from_json(dangling).unwrap().validate().is_empty());
    }

    #[test]
    fn point_and_step_files() {
        let p: PointOrStep =
            serde_json::from_str(r#"{"sset": "delta:2", "F": ["1/3"], "x": {"base": "(1,2)", "surj": [1, 2]}}"#)
                .unwrap();
        let f = p.clone().into_step(None).unwrap();
        assert_eq!(f.coords(), &[q(1, 3)]);
        let s: PointOrStep = serde_json::from_str(r#"{"N": 2, "s": ["1/3"]}"#).unwrap();
        assert_eq!(s.into_point(None).unwrap(), p.into_point(None).unwrap());
        let list: PointList = serde_json::from_str(r#"[{"N": 2, "s": ["1/3"]}, {"N": 2, "s": ["1"]}]"#).unwrap();
        assert_eq!(list.into_vec().len(), 2);
        assert!(load_sset("delta:x", None).is_err());
    }
}
