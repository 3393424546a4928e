//! Symmetric quivers and dimension vectors.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// A quiver with a vertex order, an edge multiset and an optional cut.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
    cut: Vec<usize>,
}

impl Quiver {
    /// Builds a quiver, checking symmetry and that the cut indexes edges.
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize)>, cut: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidQuiver("no vertices".into()));
        }
        let n = vertices.len();
        for &(s, t) in &edges {
            if s >= n || t >= n {
                return Err(Error::InvalidQuiver(format!("edge ({s},{t}) out of range")));
            }
        }
        for &c in &cut {
            if c >= edges.len() {
                return Err(Error::InvalidQuiver(format!("cut edge {c} out of range")));
            }
        }
        let mut cut = cut;
        cut.sort_unstable();
        cut.dedup();
        let mut counts: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for &(s, t) in &edges {
            *counts.entry((s, t)).or_default() += 1;
        }
        for (&(s, t), &m) in &counts {
            let back = counts.get(&(t, s)).copied().unwrap_or(0);
            if back != m {
                return Err(Error::NotSymmetric(format!(
                    "{m} edges {} -> {} but {back} edges back",
                    vertices[s], vertices[t]
                )));
            }
        }
        Ok(Self { vertices, edges, cut })
    }

    fn loops(name: &str, count: usize, cut: Vec<usize>) -> Self {
        Self {
            vertices: vec![name.to_string()],
            edges: vec![(0, 0); count],
            cut,
        }
    }

    /// One vertex, one loop.
    pub fn jordan() -> Self {
        Self::loops("0", 1, vec![])
    }

    /// One vertex, two loops.
    pub fn doubled_jordan() -> Self {
        Self::loops("0", 2, vec![])
    }

    /// One vertex, three loops `x, y, z`; the cut is the loop `z`.
    pub fn tripled_jordan() -> Self {
        Self::loops("0", 3, vec![2])
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "jordan" => Some(Self::jordan()),
            "doubled-jordan" => Some(Self::doubled_jordan()),
            "tripled-jordan" => Some(Self::tripled_jordan()),
            _ => None,
        }
    }

    /// Parses `{"vertices":[...], "edges":[[s,t],...], "cut":[...]}`.
    ///
    /// Edge endpoints may be vertex indices or vertex names.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let vertices: Vec<String> = v
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing 'vertices' array".into()))?
            .iter()
            .map(|x| match x {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(Error::Parse("vertex must be a string or number".into())),
            })
            .collect::<Result<_>>()?;
        let lookup = |x: &Value| -> Result<usize> {
            match x {
                Value::Number(n) => n
                    .as_u64()
                    .map(|i| i as usize)
                    .ok_or_else(|| Error::Parse(format!("bad vertex index {n}"))),
                Value::String(s) => vertices
                    .iter()
                    .position(|name| name == s)
                    .ok_or_else(|| Error::Parse(format!("unknown vertex '{s}'"))),
                _ => Err(Error::Parse("edge endpoint must be an index or a name".into())),
            }
        };
        let edges = v
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing 'edges' array".into()))?
            .iter()
            .map(|e| {
                let pair = e
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Error::Parse("edge must be a pair".into()))?;
                Ok((lookup(&pair[0])?, lookup(&pair[1])?))
            })
            .collect::<Result<Vec<_>>>()?;
        let cut = match v.get("cut") {
            None | Some(Value::Null) => vec![],
            Some(c) => c
                .as_array()
                .ok_or_else(|| Error::Parse("'cut' must be an array".into()))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|i| i as usize)
                        .ok_or_else(|| Error::Parse("cut entries are edge indices".into()))
                })
                .collect::<Result<_>>()?,
        };
        Self::new(vertices, edges, cut)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({
            "vertices": self.vertices,
            "edges": self.edges.iter().map(|&(s, t)| [s, t]).collect::<Vec<_>>(),
            "cut": self.cut,
        })
        .to_string()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn cut(&self) -> &[usize] {
        &self.cut
    }

    pub fn has_cut(&self) -> bool {
        !self.cut.is_empty()
    }

    pub fn is_cut(&self, edge: usize) -> bool {
        self.cut.binary_search(&edge).is_ok()
    }

    /// The quiver with the cut edges removed (the `Q` of a cut `Q~ = Q + C`).
    pub fn without_cut(&self) -> Self {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.is_cut(*i))
            .map(|(_, &e)| e)
            .collect();
        Self {
            vertices: self.vertices.clone(),
            edges,
            cut: vec![],
        }
    }

    pub fn check_dims(&self, d: &DimVector) -> Result<()> {
        if d.len() != self.vertex_count() {
            return Err(Error::VertexMismatch {
                expected: self.vertex_count(),
                got: d.len(),
            });
        }
        Ok(())
    }
}

/// A dimension vector `d` in `N^I`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    /// Dimension vector of a one-vertex quiver.
    pub fn single(n: u32) -> Self {
        Self(vec![n])
    }

    pub fn zero(vertices: usize) -> Self {
        Self(vec![0; vertices])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Start offset of each vertex block in the slot order.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.0
            .iter()
            .map(|&x| {
                let o = acc;
                acc += x as usize;
                o
            })
            .collect()
    }

    /// Vertex owning each slot.
    pub fn slot_vertices(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &n)| std::iter::repeat_n(i, n as usize))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
            write!(f, "[{}]", parts.join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_symmetric() {
        for name in ["jordan", "doubled-jordan", "tripled-jordan"] {
            let q = Quiver::builtin(name).unwrap();
            Quiver::new(q.vertices.clone(), q.edges.clone(), q.cut.clone()).unwrap();
        }
        assert!(Quiver::builtin("nope").is_none());
        assert_eq!(Quiver::tripled_jordan().cut(), &[2]);
    }

    #[test]
    fn json_round_trip() {
        let q = Quiver::from_json(r#"{"vertices":["a","b"],"edges":[["a","b"],[1,0],[0,0]],"cut":[2]}"#).unwrap();
        assert_eq!(q.edges(), &[(0, 1), (1, 0), (0, 0)]);
        assert_eq!(Quiver::from_json(&q.to_json()).unwrap(), q);
    }

    #[test]
    fn rejects_asymmetric() {
        let err = Quiver::from_json(r#"{"vertices":["a","b"],"edges":[[0,1]]}"#).unwrap_err();
        assert!(matches!(err, Error::NotSymmetric(_)));
        let err = Quiver::from_json(r#"{"vertices":["a"],"edges":[[0,0]],"cut":[3]}"#).unwrap_err();
        assert!(matches!(err, Error::InvalidQuiver(_)));
    }

    #[test]
    fn slot_layout() {
        let d = DimVector::new(vec![2, 0, 3]);
        assert_eq!(d.offsets(), vec![0, 2, 2]);
        assert_eq!(d.slot_vertices(), vec![0, 0, 2, 2, 2]);
        assert_eq!(d.total(), 5);
    }
}
