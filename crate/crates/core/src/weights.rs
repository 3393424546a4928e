//! Weight and coweight arithmetic for `G(d) = prod GL(d_i)`.
//!
//! Slots are ordered vertex by vertex; within a vertex block, slot `j`
//! carries the `j`-th diagonal torus coordinate. Dominant weights are
//! non-increasing inside each block, antidominant cocharacters are
//! non-decreasing, and `rho = ((n-1)/2, ..., -(n-1)/2)` per block.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver};
use crate::rational::{frac, q, Q};

/// An exact rational weight in `M(d)_R`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight {
    #[serde(with = "crate::rational::vec_as_strings")]
    coords: Vec<Q>,
}

impl Weight {
    pub fn new(coords: Vec<Q>) -> Self {
        Self { coords }
    }

    pub fn zero(slots: usize) -> Self {
        Self {
            coords: vec![Q::zero(); slots],
        }
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Self {
            coords: xs.iter().map(|&x| q(x)).collect(),
        }
    }

    pub fn constant(slots: usize, c: Q) -> Self {
        Self {
            coords: vec![c; slots],
        }
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Q> {
        self.coords
    }

    pub fn slots(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Integer coordinates, when integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(crate::rational::to_i64).collect()
    }

    pub fn sum(&self) -> Q {
        self.coords.iter().sum()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.slots() != other.slots() {
            return Err(Error::SlotMismatch {
                expected: self.slots(),
                got: other.slots(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.slots(), other.slots(), "slot count mismatch");
        Self {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.slots(), other.slots(), "slot count mismatch");
        Self {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self {
            coords: self.coords.iter().map(|a| a * s).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add(other))
    }

    /// Non-increasing inside every vertex block.
    pub fn is_dominant(&self, d: &DimVector) -> bool {
        self.slots() == d.total()
            && vertex_blocks(d)
                .iter()
                .all(|b| b.windows(2).all(|w| self.coords[w[0]] >= self.coords[w[1]]))
    }

    /// Constant inside every vertex block.
    pub fn is_weyl_invariant(&self, d: &DimVector) -> bool {
        self.slots() == d.total()
            && vertex_blocks(d)
                .iter()
                .all(|b| b.windows(2).all(|w| self.coords[w[0]] == self.coords[w[1]]))
    }

    pub fn restrict(&self, slots: &[usize]) -> Self {
        Self {
            coords: slots.iter().map(|&s| self.coords[s].clone()).collect(),
        }
    }

    /// Places `self` at `slots` inside a zero weight with `total` slots.
    pub fn embed(&self, slots: &[usize], total: usize) -> Self {
        let mut out = Self::zero(total);
        for (c, &s) in self.coords.iter().zip(slots) {
            out.coords[s] = c.clone();
        }
        out
    }

    /// Maximum absolute coordinate.
    pub fn max_abs(&self) -> Q {
        self.coords.iter().map(|c| c.abs()).max().unwrap_or_else(Q::zero)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Slot indices of each vertex block.
pub fn vertex_blocks(d: &DimVector) -> Vec<Vec<usize>> {
    d.offsets()
        .into_iter()
        .zip(d.entries())
        .map(|(o, &n)| (o..o + n as usize).collect())
        .collect()
}

/// A consecutive piece of a level partition: its dimension vector and slots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    pub dims: DimVector,
    pub slots: Vec<usize>,
}

/// An integral cocharacter of `G(d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cocharacter {
    coords: Vec<i64>,
}

impl Cocharacter {
    pub fn new(coords: Vec<i64>) -> Self {
        Self { coords }
    }

    pub fn zero(slots: usize) -> Self {
        Self {
            coords: vec![0; slots],
        }
    }

    /// The diagonal cocharacter `1_d`.
    pub fn diagonal(slots: usize) -> Self {
        Self {
            coords: vec![1; slots],
        }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn slots(&self) -> usize {
        self.coords.len()
    }

    pub fn is_sum_zero(&self) -> bool {
        self.coords.iter().sum::<i64>() == 0
    }

    pub fn is_antidominant(&self, d: &DimVector) -> bool {
        self.slots() == d.total()
            && vertex_blocks(d)
                .iter()
                .all(|b| b.windows(2).all(|w| self.coords[w[0]] <= self.coords[w[1]]))
    }

    pub fn neg(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// Slots grouped by coordinate value, in increasing value order.
    pub fn levels(&self) -> Vec<Vec<usize>> {
        let mut values: Vec<i64> = self.coords.clone();
        values.sort_unstable();
        values.dedup();
        values
            .iter()
            .map(|v| (0..self.slots()).filter(|&s| self.coords[s] == *v).collect())
            .collect()
    }

    /// The level partition as blocks with their dimension vectors.
    pub fn blocks(&self, d: &DimVector) -> Vec<Block> {
        let owner = d.slot_vertices();
        self.levels()
            .into_iter()
            .map(|slots| {
                let mut dims = DimVector::zero(d.len());
                for &s in &slots {
                    dims.0[owner[s]] += 1;
                }
                Block { dims, slots }
            })
            .collect()
    }

    /// The ordered partition of `d` attached to the level partition.
    pub fn composition(&self, d: &DimVector) -> Vec<DimVector> {
        self.blocks(d).into_iter().map(|b| b.dims).collect()
    }

    /// Canonical antidominant representative of an ordered partition of `d`:
    /// levels `0, 1, 2, ...` shifted to sum zero and scaled to the smallest
    /// integral multiple.
    pub fn from_composition(d: &DimVector, parts: &[DimVector]) -> Result<Self> {
        let sum = parts
            .iter()
            .fold(DimVector::zero(d.len()), |acc, p| acc.add(p));
        if &sum != d || parts.iter().any(|p| p.len() != d.len()) {
            return Err(Error::TotalMismatch);
        }
        let n = d.total() as i64;
        let mut level = vec![0i64; d.total()];
        let offsets = d.offsets();
        let mut fill = vec![0usize; d.len()];
        for (l, p) in parts.iter().enumerate() {
            for (i, &k) in p.entries().iter().enumerate() {
                for _ in 0..k {
                    level[offsets[i] + fill[i]] = l as i64;
                    fill[i] += 1;
                }
            }
        }
        let total: i64 = level.iter().sum();
        let mut coords: Vec<i64> = level.iter().map(|&l| n * l - total).collect();
        let g = coords.iter().fold(0i64, |g, &c| g.gcd(&c));
        if g > 1 {
            coords.iter_mut().for_each(|c| *c /= g);
        }
        Ok(Self { coords })
    }
}

impl fmt::Display for Cocharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn unit_difference(slots: usize, plus: usize, minus: usize) -> Weight {
    let mut w = Weight::zero(slots);
    w.coords[plus] += q(1);
    w.coords[minus] -= q(1);
    w
}

fn edge_weights<'a>(
    d: &DimVector,
    edges: impl Iterator<Item = &'a (usize, usize)>,
) -> Vec<Weight> {
    let n = d.total();
    let blocks = vertex_blocks(d);
    let mut out = Vec::new();
    for &(s, t) in edges {
        for &l in &blocks[t] {
            for &m in &blocks[s] {
                out.push(unit_difference(n, l, m));
            }
        }
    }
    out
}

/// Weights of `R(d)`: `e^{t(a)}_l - e^{s(a)}_m` for every edge `a` and slot pair.
pub fn rep_weights(quiver: &Quiver, d: &DimVector) -> Result<Vec<Weight>> {
    quiver.check_dims(d)?;
    Ok(edge_weights(d, quiver.edges().iter()))
}

/// Weights of the cut representation `C(d)`.
pub fn cut_weights(quiver: &Quiver, d: &DimVector) -> Result<Vec<Weight>> {
    quiver.check_dims(d)?;
    if !quiver.has_cut() {
        return Err(Error::NoCut);
    }
    let edges: Vec<(usize, usize)> = quiver.cut().iter().map(|&c| quiver.edges()[c]).collect();
    Ok(edge_weights(d, edges.iter()))
}

/// Weights of the adjoint representation `g(d)`, zero weights included.
pub fn adjoint_weights(d: &DimVector) -> Vec<Weight> {
    let loops: Vec<(usize, usize)> = (0..d.len()).map(|i| (i, i)).collect();
    edge_weights(d, loops.iter())
}

/// Half the sum of positive roots.
pub fn rho(d: &DimVector) -> Weight {
    let mut w = Weight::zero(d.total());
    for block in vertex_blocks(d) {
        let n = block.len() as i64;
        for (j, &s) in block.iter().enumerate() {
            w.coords[s] = frac(n - 1 - 2 * j as i64, 2);
        }
    }
    w
}

/// `nu_d`, the all-ones weight.
pub fn nu(d: &DimVector) -> Weight {
    Weight::constant(d.total(), q(1))
}

/// `tau_d = nu_d / <1_d, nu_d>`.
pub fn tau(d: &DimVector) -> Result<Weight> {
    let n = d.total();
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    Ok(Weight::constant(n, frac(1, n as i64)))
}

/// The natural pairing of a cocharacter with a weight.
pub fn pair(lambda: &Cocharacter, chi: &Weight) -> Result<Q> {
    if lambda.slots() != chi.slots() {
        return Err(Error::SlotMismatch {
            expected: lambda.slots(),
            got: chi.slots(),
        });
    }
    Ok(pair_unchecked(lambda, chi))
}

pub(crate) fn pair_unchecked(lambda: &Cocharacter, chi: &Weight) -> Q {
    lambda
        .coords
        .iter()
        .zip(&chi.coords)
        .filter(|(l, _)| **l != 0)
        .map(|(l, c)| c * q(*l))
        .sum()
}

/// Sum of the weights in `rep` pairing positively with `lambda`.
pub fn n_pos(lambda: &Cocharacter, rep: &[Weight]) -> Weight {
    let mut acc = Weight::zero(lambda.slots());
    for beta in rep {
        if pair_unchecked(lambda, beta) > Q::zero() {
            acc = acc.add(beta);
        }
    }
    acc
}

fn positive_pairing_sum(lambda: &Cocharacter, weights: &[Weight]) -> Q {
    weights
        .iter()
        .map(|b| pair_unchecked(lambda, b))
        .filter(|p| *p > Q::zero())
        .sum()
}

/// `n_lambda` from the two-term cotangent complex `R(d)^v -> g(d)^v`.
pub fn n_lambda(quiver: &Quiver, d: &DimVector, lambda: &Cocharacter) -> Result<Q> {
    check_sg(d, lambda)?;
    let rep = rep_weights(quiver, d)?;
    let adj = adjoint_weights(d);
    Ok(positive_pairing_sum(lambda, &rep) - positive_pairing_sum(lambda, &adj))
}

/// `n_lambda` for the Koszul stack of a quiver with cut, whose cotangent
/// class is `[R_Q(d)] - [C(d)] - [g(d)]`.
pub fn n_lambda_koszul(quiver: &Quiver, d: &DimVector, lambda: &Cocharacter) -> Result<Q> {
    check_sg(d, lambda)?;
    let base = rep_weights(&quiver.without_cut(), d)?;
    let cut = cut_weights(quiver, d)?;
    let adj = adjoint_weights(d);
    Ok(positive_pairing_sum(lambda, &base)
        - positive_pairing_sum(lambda, &cut)
        - positive_pairing_sum(lambda, &adj))
}

fn check_sg(d: &DimVector, lambda: &Cocharacter) -> Result<()> {
    if lambda.slots() != d.total() {
        return Err(Error::SlotMismatch {
            expected: d.total(),
            got: lambda.slots(),
        });
    }
    if !lambda.is_sum_zero() {
        return Err(Error::NotSumZero(lambda.coords.iter().sum()));
    }
    Ok(())
}

/// All ordered partitions of `d` into nonzero dimension vectors.
pub fn ordered_partitions(d: &DimVector) -> Vec<Vec<DimVector>> {
    fn rec(rest: &DimVector, prefix: &mut Vec<DimVector>, out: &mut Vec<Vec<DimVector>>) {
        if rest.is_zero() {
            out.push(prefix.clone());
            return;
        }
        // every nonzero sub-vector of `rest`, in lexicographic order
        let mut part = vec![0u32; rest.len()];
        loop {
            let mut i = 0;
            loop {
                if i == part.len() {
                    return;
                }
                if part[i] < rest.0[i] {
                    part[i] += 1;
                    break;
                }
                part[i] = 0;
                i += 1;
            }
            let p = DimVector(part.clone());
            let remaining = DimVector(rest.0.iter().zip(&part).map(|(a, b)| a - b).collect());
            prefix.push(p);
            rec(&remaining, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// One canonical antidominant representative per equivalence class of
/// `SG(d)`-cocharacters, in the order of their ordered partitions.
pub fn cochar_classes(d: &DimVector) -> Vec<Cocharacter> {
    ordered_partitions(d)
        .iter()
        .map(|parts| Cocharacter::from_composition(d, parts).expect("partition of d"))
        .collect()
}

/// Splits `chi` along the level partition of an antidominant `lambda`.
pub fn block_decompose(chi: &Weight, lambda: &Cocharacter, d: &DimVector) -> Result<Vec<Weight>> {
    if chi.slots() != d.total() || lambda.slots() != d.total() {
        return Err(Error::SlotMismatch {
            expected: d.total(),
            got: chi.slots().min(lambda.slots()),
        });
    }
    if !lambda.is_antidominant(d) {
        return Err(Error::NotAntidominant);
    }
    Ok(lambda.levels().iter().map(|slots| chi.restrict(slots)).collect())
}
