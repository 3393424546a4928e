//! Ordered partitions `A = (d_i, w_i)` indexing summands.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::quiver::DimVector;
use crate::rational::{frac, Q};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionA {
    parts: Vec<(DimVector, i64)>,
}

impl PartitionA {
    pub fn new(parts: Vec<(DimVector, i64)>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::ZeroDimension);
        }
        let len = parts[0].0.len();
        if let Some((d, _)) = parts.iter().find(|(d, _)| d.len() != len) {
            return Err(Error::VertexMismatch {
                expected: len,
                got: d.len(),
            });
        }
        if parts.iter().any(|(d, _)| d.is_zero()) {
            return Err(Error::ZeroDimension);
        }
        Ok(Self { parts })
    }

    pub fn single(d: DimVector, w: i64) -> Self {
        Self { parts: vec![(d, w)] }
    }

    /// Shorthand for one-vertex quivers.
    pub fn from_pairs(pairs: &[(u32, i64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(d, w)| (DimVector::single(d), w)).collect())
    }

    pub fn parts(&self) -> &[(DimVector, i64)] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn dims(&self) -> Vec<DimVector> {
        self.parts.iter().map(|(d, _)| d.clone()).collect()
    }

    pub fn weights(&self) -> Vec<i64> {
        self.parts.iter().map(|(_, w)| *w).collect()
    }

    pub fn total_dims(&self) -> DimVector {
        self.parts
            .iter()
            .fold(DimVector::zero(self.parts[0].0.len()), |acc, (d, _)| acc.add(d))
    }

    pub fn total_weight(&self) -> i64 {
        self.parts.iter().map(|(_, w)| w).sum()
    }

    /// `w_i / |d_i|`.
    pub fn slopes(&self) -> Vec<Q> {
        self.parts
            .iter()
            .map(|(d, w)| frac(*w, d.total() as i64))
            .collect()
    }

    pub fn has_decreasing_slopes(&self) -> bool {
        self.slopes().windows(2).all(|s| s[0] > s[1])
    }

    pub fn has_equal_slopes(&self) -> bool {
        self.slopes().windows(2).all(|s| s[0] == s[1])
    }

    fn dim_json(d: &DimVector) -> Value {
        if d.len() == 1 {
            json!(d.entries()[0])
        } else {
            json!(d.entries())
        }
    }

    /// `[[d_1, w_1], ...]`, with `d_i` a plain integer for one-vertex quivers.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.parts
                .iter()
                .map(|(d, w)| json!([Self::dim_json(d), w]))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse(format!("expected [[d, w], ...], got {v}"));
        let arr = v.as_array().ok_or_else(bad)?;
        let mut parts = Vec::new();
        for p in arr {
            let pair = p.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
            let d = match &pair[0] {
                Value::Number(n) => DimVector::single(n.as_u64().ok_or_else(bad)? as u32),
                Value::Array(xs) => DimVector::new(
                    xs.iter()
                        .map(|x| x.as_u64().map(|x| x as u32).ok_or_else(bad))
                        .collect::<Result<_>>()?,
                ),
                _ => return Err(bad()),
            };
            parts.push((d, pair[1].as_i64().ok_or_else(bad)?));
        }
        Self::new(parts)
    }
}

impl fmt::Display for PartitionA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|(d, w)| format!("({d},{w})")).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slopes_and_json() {
        let a = PartitionA::from_pairs(&[(2, 4), (1, -4)]).unwrap();
        assert!(a.has_decreasing_slopes());
        assert!(!a.has_equal_slopes());
        assert_eq!(a.total_weight(), 0);
        assert_eq!(a.total_dims(), DimVector::single(3));
        assert_eq!(a.to_json().to_string(), "[[2,4],[1,-4]]");
        assert_eq!(PartitionA::from_json(&a.to_json()).unwrap(), a);
        assert_eq!(a.to_string(), "((2,4),(1,-4))");
        let u = PartitionA::from_pairs(&[(1, 2), (1, 2)]).unwrap();
        assert!(u.has_equal_slopes() && !u.has_decreasing_slopes());
        assert!(PartitionA::from_pairs(&[(0, 1)]).is_err());
        let m = PartitionA::new(vec![(DimVector::new(vec![1, 0]), 1), (DimVector::new(vec![0, 2]), -1)]).unwrap();
        assert_eq!(PartitionA::from_json(&m.to_json()).unwrap(), m);
    }
}
