//! The simplex category: finite nonempty linear orders `1 < 2 < .. < n` and
//! monotone maps between them.
//!
//! Everything is 1-indexed. A map `m -> n` is stored as its value sequence
//! `v_1 <= .. <= v_m` with every `v_i` in `1..=n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct MonotoneMap {
    cod: usize,
    values: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawMap {
    cod: usize,
    values: Vec<usize>,
}

impl TryFrom<RawMap> for MonotoneMap {
    type Error = Error;
    fn try_from(r: RawMap) -> Result<Self> {
        MonotoneMap::new(r.values, r.cod)
    }
}

impl From<MonotoneMap> for RawMap {
    fn from(m: MonotoneMap) -> Self {
        RawMap {
            cod: m.cod,
            values: m.values,
        }
    }
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}:{}->{}", self.values, self.dom(), self.cod)
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]:{}->{}", vals.join(","), self.dom(), self.cod)
    }
}

impl MonotoneMap {
    pub fn new(values: Vec<usize>, cod: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidMap("empty domain".into()));
        }
        if cod == 0 {
            return Err(Error::InvalidMap("empty codomain".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidMap(format!("{values:?} is not nondecreasing")));
        }
        if values[0] < 1 || values[values.len() - 1] > cod {
            return Err(Error::InvalidMap(format!("{values:?} not within 1..={cod}")));
        }
        Ok(MonotoneMap { cod, values })
    }

    /// A surjection given by its values; the codomain is the largest value.
    pub fn surjection(values: Vec<usize>) -> Result<Self> {
        let cod = values.last().copied().unwrap_or(0);
        let m = Self::new(values, cod)?;
        if !m.is_surjective() {
            return Err(Error::InvalidMap(format!("{m} is not surjective")));
        }
        Ok(m)
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "identity on the empty order");
        MonotoneMap {
            cod: n,
            values: (1..=n).collect(),
        }
    }

    pub fn constant(dom: usize, value: usize, cod: usize) -> Result<Self> {
        Self::new(vec![value; dom], cod)
    }

    /// The coface `n -> n+1` whose image misses `skip`.
    pub fn coface(n: usize, skip: usize) -> Result<Self> {
        if skip < 1 || skip > n + 1 {
            return Err(Error::OutOfRange(format!("coface {skip} into {}", n + 1)));
        }
        let values = (1..=n).map(|i| if i < skip { i } else { i + 1 }).collect();
        Self::new(values, n + 1)
    }

    /// The codegeneracy `n+1 -> n` identifying `i` and `i+1`.
    pub fn codegeneracy(n: usize, i: usize) -> Result<Self> {
        if i < 1 || i > n {
            return Err(Error::OutOfRange(format!("codegeneracy {i} onto {n}")));
        }
        let values = (1..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect();
        Self::new(values, n)
    }

    pub fn dom(&self) -> usize {
        self.values.len()
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `self(i)` for `i` in `1..=dom`.
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.cod == self.dom() && self.values.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 1
            && self.values[self.values.len() - 1] == self.cod
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_constant(&self) -> bool {
        self.values[0] == self.values[self.values.len() - 1]
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &MonotoneMap) -> Result<MonotoneMap> {
        compose(self, f)
    }

    /// The unique factorization `self = mono ∘ epi`.
    pub fn epi_mono_factorize(&self) -> (MonotoneMap, MonotoneMap) {
        epi_mono_factorize(self)
    }

    /// Smallest preimage of each value of a surjection: a section `s` with
    /// `self ∘ s = id`.
    pub fn min_section(&self) -> MonotoneMap {
        debug_assert!(self.is_surjective());
        let mut values = Vec::with_capacity(self.cod);
        for (i, &v) in self.values.iter().enumerate() {
            if values.len() < v {
                values.push(i + 1);
            }
        }
        MonotoneMap {
            cod: self.dom(),
            values,
        }
    }

    pub fn edgewise(&self) -> MonotoneMap {
        edgewise_map(self)
    }

    pub fn shift(&self) -> MonotoneMap {
        shift_map(self)
    }
}

/// `g ∘ f`, defined when `f.cod == g.dom`.
pub fn compose(g: &MonotoneMap, f: &MonotoneMap) -> Result<MonotoneMap> {
    if f.cod != g.dom() {
        return Err(Error::NonComposable {
            cod: f.cod,
            dom: g.dom(),
        });
    }
    Ok(MonotoneMap {
        cod: g.cod,
        values: f.values.iter().map(|&i| g.at(i)).collect(),
    })
}

pub fn epi_mono_factorize(f: &MonotoneMap) -> (MonotoneMap, MonotoneMap) {
    let mut image: Vec<usize> = f.values.clone();
    image.dedup();
    let epi_values = f
        .values
        .iter()
        .map(|v| image.binary_search(v).expect("value lies in the image") + 1)
        .collect();
    let epi = MonotoneMap {
        cod: image.len(),
        values: epi_values,
    };
    let mono = MonotoneMap {
        cod: f.cod,
        values: image,
    };
    (epi, mono)
}

/// The operator `[i_1 <= .. <= i_k] : k -> l`.
pub fn face_operator(indices: &[usize], l: usize) -> Result<MonotoneMap> {
    if let Some(bad) = indices.iter().find(|&&i| i < 1 || i > l) {
        return Err(Error::OutOfRange(format!("index {bad} not in 1..={l}")));
    }
    MonotoneMap::new(indices.to_vec(), l)
}

/// `[i..j]` into `l`.
pub fn interval_operator(i: usize, j: usize, l: usize) -> Result<MonotoneMap> {
    if i > j {
        return Err(Error::OutOfRange(format!("empty range {i}..{j}")));
    }
    face_operator(&(i..=j).collect::<Vec<_>>(), l)
}

/// Edgewise subdivision on morphisms: `f : m -> n` goes to `e(f) : 2m -> 2n`,
/// the reversed copy of `f` followed by `f` itself.
pub fn edgewise_map(f: &MonotoneMap) -> MonotoneMap {
    let (m, n) = (f.dom(), f.cod);
    let mut values = Vec::with_capacity(2 * m);
    for i in 1..=m {
        values.push(n + 1 - f.at(m + 1 - i));
    }
    for i in 1..=m {
        values.push(n + f.at(i));
    }
    MonotoneMap { cod: 2 * n, values }
}

/// Adjoins a new minimal element: `f[+1](1) = 1`, `f[+1](i+1) = f(i) + 1`.
pub fn shift_map(f: &MonotoneMap) -> MonotoneMap {
    let mut values = Vec::with_capacity(f.dom() + 1);
    values.push(1);
    values.extend(f.values.iter().map(|v| v + 1));
    MonotoneMap { cod: f.cod + 1, values }
}

/// All monotone maps `m -> n`, in lexicographic order.
pub fn all_maps(m: usize, n: usize) -> Vec<MonotoneMap> {
    fn rec(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
        if cur.len() == m {
            out.push(MonotoneMap {
                cod: n,
                values: cur.clone(),
            });
            return;
        }
        for v in lo..=n {
            cur.push(v);
            rec(m, n, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m >= 1 && n >= 1 {
        rec(m, n, 1, &mut Vec::new(), &mut out);
    }
    out
}

/// All surjections `m -> n`.
pub fn all_surjections(m: usize, n: usize) -> Vec<MonotoneMap> {
    all_maps(m, n).into_iter().filter(MonotoneMap::is_surjective).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mm(v: &[usize], n: usize) -> MonotoneMap {
        MonotoneMap::new(v.to_vec(), n).unwrap()
    }

    #[test]
    fn construction_rejects_bad_values() {
        assert!(MonotoneMap::new(vec![2, 1], 3).is_err());
        assert!(MonotoneMap::new(vec![0, 1], 3).is_err());
        assert!(MonotoneMap::new(vec![1, 4], 3).is_err());
        assert!(MonotoneMap::new(vec![], 3).is_err());
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose(&mm(&[1, 2], 2), &mm(&[1, 1], 2)).unwrap(), mm(&[1, 1], 2));
        assert_eq!(compose(&mm(&[1, 3], 3), &mm(&[2, 2], 2)).unwrap(), mm(&[3, 3], 3));
        // g: 2 -> 3 after f: 3 -> 2 is fine
        assert!(compose(&mm(&[1, 3], 3), &mm(&[1, 1, 2], 2)).is_ok());
        // f: 2 -> 3 then g: 2 -> 3 is not
        let err = compose(&mm(&[1, 3], 3), &mm(&[1, 3], 3)).unwrap_err();
        assert!(err.to_string().starts_with("non-composable"));
    }

    #[test]
    fn factorization_examples() {
        let (e, m) = epi_mono_factorize(&mm(&[1, 3], 3));
        assert_eq!((e, m), (MonotoneMap::identity(2), mm(&[1, 3], 3)));
        let (e, m) = epi_mono_factorize(&mm(&[1, 1, 2], 2));
        assert_eq!((e, m), (mm(&[1, 1, 2], 2), MonotoneMap::identity(2)));
        let (e, m) = epi_mono_factorize(&mm(&[1, 1, 3], 3));
        assert_eq!((e, m), (mm(&[1, 1, 2], 2), mm(&[1, 3], 3)));
    }

    #[test]
    fn face_operator_examples() {
        assert_eq!(interval_operator(1, 2, 3).unwrap(), mm(&[1, 2], 3));
        assert_eq!(face_operator(&[2, 2], 2).unwrap(), mm(&[2, 2], 2));
        assert_eq!(face_operator(&[1, 3, 3], 4).unwrap(), mm(&[1, 3, 3], 4));
        assert!(matches!(face_operator(&[1, 5], 4), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn edgewise_examples() {
        assert_eq!(edgewise_map(&MonotoneMap::identity(2)), MonotoneMap::identity(4));
        assert_eq!(edgewise_map(&mm(&[1], 2)), mm(&[2, 3], 4));
        assert_eq!(edgewise_map(&mm(&[2], 2)), mm(&[1, 4], 4));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift_map(&MonotoneMap::identity(1)), MonotoneMap::identity(2));
        assert_eq!(shift_map(&mm(&[2], 2)), mm(&[1, 3], 3));
        assert_eq!(shift_map(&mm(&[1, 1], 2)), mm(&[1, 2, 2], 3));
    }

    #[test]
    fn cofaces_and_codegeneracies() {
        assert_eq!(MonotoneMap::coface(2, 1).unwrap(), mm(&[2, 3], 3));
        assert_eq!(MonotoneMap::coface(2, 3).unwrap(), mm(&[1, 2], 3));
        assert_eq!(MonotoneMap::codegeneracy(2, 1).unwrap(), mm(&[1, 1, 2], 2));
        let s = mm(&[1, 1, 2, 3, 3], 3);
        assert_eq!(compose(&s, &s.min_section()).unwrap(), MonotoneMap::identity(3));
    }

    #[test]
    fn enumeration_counts() {
        // monotone maps m -> n: C(m+n-1, m)
        assert_eq!(all_maps(2, 3).len(), 6);
        assert_eq!(all_maps(3, 2).len(), 4);
        // surjections m -> n: C(m-1, n-1)
        assert_eq!(all_surjections(4, 2).len(), 3);
    }

    #[test]
    fn serde_shape() {
        let m = mm(&[1, 3], 3);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"cod":3,"values":[1,3]}"#);
        assert_eq!(serde_json::from_str::<MonotoneMap>(&s).unwrap(), m);
        assert!(serde_json::from_str::<MonotoneMap>(r#"{"cod":2,"values":[1,3]}"#).is_err());
    }
}
