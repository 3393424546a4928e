//! Window generators, the partition sets `S`, `T`, `V`, `U`, and the
//! order on summands.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::PartitionA;
use crate::polytope::WPolytope;
use crate::quiver::{DimVector, Quiver};
use crate::rational::{ceil_i64, floor_i64, frac, half, q, Q};
use crate::standard_form::{self, Node, StandardForm};
use crate::weights::{self, vertex_blocks, Cocharacter, Weight};

/// Bounds for the infinite enumerations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    /// Parts satisfy `|w_i/|d_i| - w/|d|| <= slope_bound`.
    pub slope_bound: Q,
    pub max_parts: usize,
}

impl Truncation {
    pub fn new(slope_bound: Q, max_parts: usize) -> Result<Self> {
        if slope_bound.is_negative() {
            return Err(Error::NegativeArgument(format!("slope bound {slope_bound}")));
        }
        Ok(Self { slope_bound, max_parts })
    }

    pub fn slopes(bound: i64) -> Self {
        Self {
            slope_bound: q(bound),
            max_parts: usize::MAX,
        }
    }

    fn admits(&self, a: &PartitionA, d: &DimVector, w: i64) -> bool {
        let center = frac(w, d.total() as i64);
        a.len() <= self.max_parts && a.slopes().iter().all(|s| (s - &center).abs() <= self.slope_bound)
    }
}

/// An enumeration together with whether it is known to be complete inside
/// its bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration<T> {
    pub items: Vec<T>,
    pub complete_within_bounds: bool,
}

/// A member of `S` or `T` with the data that realizes it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexEntry {
    pub partition: PartitionA,
    pub r_sequence: Vec<Q>,
    pub realizing_chi: Option<Weight>,
}

/// All dominant integral weights with total `w` and `lo[s] <= chi_s <= hi[s]`.
pub fn dominant_in_box(d: &DimVector, w: i64, lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let n = d.total();
    assert!(lo.len() == n && hi.len() == n, "box has wrong slot count");
    let mut first = vec![false; n];
    for b in vertex_blocks(d) {
        if let Some(&s) = b.first() {
            first[s] = true;
        }
    }
    // suffix bounds on the remaining sum
    let mut min_rest = vec![0i64; n + 1];
    let mut max_rest = vec![0i64; n + 1];
    for s in (0..n).rev() {
        min_rest[s] = min_rest[s + 1] + lo[s];
        max_rest[s] = max_rest[s + 1] + hi[s];
    }
    struct Scan<'a> {
        first: &'a [bool],
        lo: &'a [i64],
        hi: &'a [i64],
        min_rest: &'a [i64],
        max_rest: &'a [i64],
        w: i64,
    }
    fn rec(s: usize, sum: i64, cur: &mut Vec<i64>, ctx: &Scan, out: &mut Vec<Vec<i64>>) {
        if s == ctx.lo.len() {
            if sum == ctx.w {
                out.push(cur.clone());
            }
            return;
        }
        let need = ctx.w - sum;
        if need < ctx.min_rest[s] || need > ctx.max_rest[s] {
            return;
        }
        let top = if ctx.first[s] { ctx.hi[s] } else { ctx.hi[s].min(cur[s - 1]) };
        let mut x = top;
        while x >= ctx.lo[s] {
            cur.push(x);
            rec(s + 1, sum + x, cur, ctx, out);
            cur.pop();
            x -= 1;
        }
    }
    let ctx = Scan {
        first: &first,
        lo,
        hi,
        min_rest: &min_rest,
        max_rest: &max_rest,
        w,
    };
    let mut out = Vec::new();
    rec(0, 0, &mut Vec::with_capacity(n), &ctx, &mut out);
    out
}

/// Per-slot interval containing every dominant `chi` with total `w` and
/// `chi + rho + delta` in `1/2 W`.
fn window_box(poly: &WPolytope, w: i64, delta: &Weight) -> (Vec<i64>, Vec<i64>) {
    let d = poly.dims();
    let n = d.total();
    let nq = q(n as i64);
    let rho = weights::rho(d);
    let dmean = delta.sum() / &nq;
    let center = frac(w, n as i64);
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for i in 0..n {
        // support of W in the directions +-(e_i - tau_d)
        let mut up = Q::zero();
        let mut down = Q::zero();
        for beta in poly.segments() {
            let v = &beta.coords()[i] - beta.sum() / &nq;
            if v.is_positive() {
                up += v;
            } else {
                down -= v;
            }
        }
        let shift = &rho.coords()[i] + &delta.coords()[i] - &dmean;
        lo.push(floor_i64(&(&center - shift.clone() - half() * down)));
        hi.push(ceil_i64(&(&center - shift + half() * up)));
    }
    (lo, hi)
}

/// Dominant integral `chi` with `<1_d, chi> = w` and `chi + rho + delta` in `1/2 W`.
pub fn window_generators(quiver: &Quiver, d: &DimVector, w: i64, delta: &Weight) -> Result<Vec<Weight>> {
    let poly = WPolytope::new(quiver, d)?;
    window_generators_in(&poly, w, delta)
}

pub fn window_generators_in(poly: &WPolytope, w: i64, delta: &Weight) -> Result<Vec<Weight>> {
    let d = poly.dims();
    if delta.slots() != d.total() {
        return Err(Error::SlotMismatch {
            expected: d.total(),
            got: delta.slots(),
        });
    }
    let (lo, hi) = window_box(poly, w, delta);
    let shift = weights::rho(d).add(delta);
    let mut out = Vec::new();
    for chi in dominant_in_box(d, w, &lo, &hi) {
        let chi = Weight::from_ints(&chi);
        if poly.contains(&chi.add(&shift), &half())? {
            out.push(chi);
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

/// Ordered partitions of `(d, w)` with strictly decreasing slopes, within `trunc`.
pub fn enum_v(d: &DimVector, w: i64, trunc: &Truncation) -> Enumeration<PartitionA> {
    let mut items: Vec<PartitionA> = ordered_weightings(d, w, trunc)
        .into_iter()
        .filter(PartitionA::has_decreasing_slopes)
        .collect();
    items.sort();
    Enumeration {
        items,
        complete_within_bounds: true,
    }
}

/// Every ordered partition of `(d, w)` whose parts obey `trunc`.
fn ordered_weightings(d: &DimVector, w: i64, trunc: &Truncation) -> Vec<PartitionA> {
    let n = d.total() as i64;
    let mut out = Vec::new();
    for comp in weights::ordered_partitions(d) {
        if comp.len() > trunc.max_parts {
            continue;
        }
        let ranges: Vec<(i64, i64)> = comp
            .iter()
            .map(|p| {
                let k = q(p.total() as i64);
                let c = frac(w, n) * &k;
                let b = &trunc.slope_bound * &k;
                (ceil_i64(&(&c - &b)), floor_i64(&(c + b)))
            })
            .collect();
        let mut ws = Vec::with_capacity(comp.len());
        fill(&comp, &ranges, w, &mut ws, &mut out);
    }
    out
}

fn fill(comp: &[DimVector], ranges: &[(i64, i64)], rest: i64, ws: &mut Vec<i64>, out: &mut Vec<PartitionA>) {
    let i = ws.len();
    if i + 1 == comp.len() {
        let (lo, hi) = ranges[i];
        if (lo..=hi).contains(&rest) {
            ws.push(rest);
            let parts = comp.iter().cloned().zip(ws.iter().copied()).collect();
            out.push(PartitionA::new(parts).expect("nonzero parts"));
            ws.pop();
        }
        return;
    }
    let (lo, hi) = ranges[i];
    for x in lo..=hi {
        ws.push(x);
        fill(comp, ranges, rest - x, ws, out);
        ws.pop();
    }
}

fn equal_slope_compositions(d: &DimVector, w: i64) -> Vec<PartitionA> {
    let n = d.total() as i64;
    weights::ordered_partitions(d)
        .into_iter()
        .filter_map(|comp| {
            let ws: Option<Vec<i64>> = comp
                .iter()
                .map(|p| {
                    let k = p.total() as i64;
                    (w * k % n == 0).then_some(w * k / n)
                })
                .collect();
            ws.map(|ws| PartitionA::new(comp.into_iter().zip(ws).collect()).expect("nonzero parts"))
        })
        .collect()
}

/// Equal-slope partitions of `(d, w)` as multisets: parts sorted by
/// dimension, so repeated parts record the multiplicities `l_i`.
pub fn enum_u(d: &DimVector, w: i64) -> Vec<PartitionA> {
    let mut out: Vec<PartitionA> = equal_slope_compositions(d, w)
        .into_iter()
        .filter(|a| a.dims().windows(2).all(|p| p[0] <= p[1]))
        .collect();
    out.sort();
    out
}

/// Equal-slope partitions of `(d, w)` as ordered tuples.
pub fn enum_u_ordered(d: &DimVector, w: i64) -> Vec<PartitionA> {
    let mut out = equal_slope_compositions(d, w);
    out.sort();
    out
}

/// Groups `(part, multiplicity)` of a multiset partition.
pub fn multiplicities(a: &PartitionA) -> Vec<((DimVector, i64), usize)> {
    let mut counts: BTreeMap<(DimVector, i64), usize> = BTreeMap::new();
    for p in a.parts() {
        *counts.entry(p.clone()).or_default() += 1;
    }
    counts.into_iter().collect()
}

/// The same parts sorted into canonical multiset order.
pub fn as_multiset(a: &PartitionA) -> PartitionA {
    let mut parts = a.parts().to_vec();
    parts.sort();
    PartitionA::new(parts).expect("nonempty")
}

fn scan_bound(d: &DimVector, w: i64, trunc: &Truncation) -> i64 {
    let n = d.total() as i64;
    ceil_i64(&(frac(w.abs(), n) + &trunc.slope_bound)) + 3 * n + 2
}

/// Partitions `A_chi` realized by dominant integral `chi` of total `w`,
/// within `trunc`. Each entry keeps its lexicographically largest realizing weight.
pub fn enum_s(
    quiver: &Quiver,
    d: &DimVector,
    w: i64,
    delta: &Weight,
    trunc: &Truncation,
) -> Result<Enumeration<IndexEntry>> {
    quiver.check_dims(d)?;
    let bound = scan_bound(d, w, trunc);
    let n = d.total();
    let mut found: BTreeMap<PartitionA, IndexEntry> = BTreeMap::new();
    let mut complete = true;
    for chi in dominant_in_box(d, w, &vec![-bound; n], &vec![bound; n]) {
        let chi_w = Weight::from_ints(&chi);
        let form = standard_form::decompose(quiver, d, &chi_w, delta)?;
        let a = form.partition();
        if !trunc.admits(&a, d, w) {
            continue;
        }
        if chi.iter().any(|c| c.abs() >= bound - 1) {
            complete = false;
        }
        found.entry(a.clone()).or_insert_with(|| IndexEntry {
            partition: a,
            r_sequence: form.r_sequence(),
            realizing_chi: Some(chi_w),
        });
    }
    Ok(Enumeration {
        items: found.into_values().collect(),
        complete_within_bounds: complete,
    })
}

/// Partitions read off the closed window: weights with `chi + rho + delta`
/// on the boundary of `1/2 W` split along the finest face through them,
/// interior weights give the one-part partition.
pub fn enum_t(
    quiver: &Quiver,
    d: &DimVector,
    w: i64,
    delta: &Weight,
    trunc: &Truncation,
) -> Result<Enumeration<IndexEntry>> {
    let poly = WPolytope::new(quiver, d)?;
    let shift = weights::rho(d).add(delta);
    let mut found: BTreeMap<PartitionA, IndexEntry> = BTreeMap::new();
    for chi in window_generators_in(&poly, w, delta)? {
        let phi = chi.add(&shift);
        let r = poly.r_invariant(&phi)?;
        let parts = if r < half() {
            vec![(d.clone(), w)]
        } else {
            let lambda = poly.face_at(&phi, &half())?;
            lambda
                .blocks(d)
                .into_iter()
                .map(|b| {
                    let s = chi.restrict(&b.slots).sum();
                    (b.dims, crate::rational::to_i64(&s).expect("integral"))
                })
                .collect()
        };
        let a = PartitionA::new(parts)?;
        if !trunc.admits(&a, d, w) {
            continue;
        }
        found.entry(a.clone()).or_insert_with(|| IndexEntry {
            partition: a,
            r_sequence: vec![],
            realizing_chi: Some(chi),
        });
    }
    Ok(Enumeration {
        items: found.into_values().collect(),
        complete_within_bounds: true,
    })
}

/// Verdict of the summand order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equal,
    #[serde(rename = "A_before_B")]
    ABeforeB,
    #[serde(rename = "B_before_A")]
    BBeforeA,
    Both,
}

/// Finer classes rank higher; among equally fine ones the larger composition does.
pub fn compare_cocharacters(a: &Cocharacter, da: &DimVector, b: &Cocharacter, db: &DimVector) -> Ordering {
    let ca = a.composition(da);
    let cb = b.composition(db);
    ca.len().cmp(&cb.len()).then_with(|| ca.cmp(&cb))
}

fn compare_nodes(a: &[Node], b: &[Node]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x
            .r
            .cmp(&y.r)
            .then_with(|| compare_cocharacters(&x.lambda, &x.block.dims, &y.lambda, &y.block.dims));
        if o != Ordering::Equal {
            return o;
        }
    }
    // an exhausted sequence ranks after a continuing one
    a.len().cmp(&b.len())
}

fn verdict(order: Ordering, same: bool) -> Verdict {
    match (order, same) {
        (_, true) => Verdict::Equal,
        (Ordering::Greater, _) => Verdict::ABeforeB,
        (Ordering::Less, _) => Verdict::BBeforeA,
        (Ordering::Equal, _) => Verdict::Both,
    }
}

/// Compares two standard forms by their `(r_c, lambda_c)` sequences.
pub fn compare_forms(a: &StandardForm, b: &StandardForm) -> Verdict {
    verdict(compare_nodes(a.nodes(), b.nodes()), a.partition() == b.partition())
}

/// Compares two slope-decreasing partitions of the tripled Jordan quiver.
pub fn compare_v(a: &PartitionA, b: &PartitionA) -> Result<Verdict> {
    let ta = standard_form::slope_to_tree(a)?;
    let tb = standard_form::slope_to_tree(b)?;
    Ok(verdict(compare_nodes(ta.nodes(), tb.nodes()), a == b))
}

/// Compares two members of `S` for the tripled Jordan quiver.
pub fn compare(a: &PartitionA, b: &PartitionA, quiver: &Quiver) -> Result<Verdict> {
    let va = standard_form::omega_shift(a, quiver)?;
    let vb = standard_form::omega_shift(b, quiver)?;
    compare_v(&va, &vb).map_err(|e| match e {
        Error::NonStrictSlopes(_) | Error::Unrealizable(_) => {
            Error::Unrealizable(format!("{a} or {b} is not in S"))
        }
        other => other,
    })
}

/// Whether consecutive groups of `e` sum to the parts of `d`.
pub fn partition_refines(e: &[DimVector], d: &[DimVector]) -> Result<bool> {
    let sum = |xs: &[DimVector]| -> Option<DimVector> {
        let first = xs.first()?;
        Some(xs[1..].iter().fold(first.clone(), |acc, x| acc.add(x)))
    };
    if sum(e) != sum(d) {
        return Err(Error::TotalMismatch);
    }
    let mut it = e.iter();
    for target in d {
        let mut acc = DimVector::zero(target.len());
        while acc != *target {
            match it.next() {
                Some(x) => acc = acc.add(x),
                None => return Ok(false),
            }
            if acc.entries().iter().zip(target.entries()).any(|(a, t)| a > t) {
                return Ok(false);
            }
        }
    }
    Ok(it.next().is_none())
}
