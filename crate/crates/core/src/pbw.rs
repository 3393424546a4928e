//! Dimension counts: window sizes `m(d, w)`, the primitive dimensions
//! `p(d, w)` solving the symmetric-power recursion, and the weight-level
//! bijection behind the summand decomposition.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::index_sets::{self, multiplicities};
use crate::partition::PartitionA;
use crate::polytope::WPolytope;
use crate::quiver::{DimVector, Quiver};
use crate::standard_form::{self};
use crate::weights::Weight;

/// `m(d, w)` for the tripled Jordan quiver.
pub fn window_count(d: u32, w: i64) -> Result<usize> {
    let dv = DimVector::single(d);
    Ok(index_sets::window_generators(&Quiver::tripled_jordan(), &dv, w, &Weight::zero(d as usize))?.len())
}

/// Dimension of `Sym^l` of a `p`-dimensional space.
pub fn sym_count(p: i64, l: i64) -> Result<i64> {
    if p < 0 || l < 0 {
        return Err(Error::NegativeArgument(format!("sym_count({p}, {l})")));
    }
    if l == 0 {
        return Ok(1);
    }
    // binomial(p + l - 1, l), multiplicative form stays integral at each step
    let mut acc: i128 = 1;
    for i in 0..l as i128 {
        acc = acc * (p as i128 + i) / (i + 1);
    }
    i64::try_from(acc).map_err(|_| Error::Unsupported(format!("sym_count({p}, {l}) overflows")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PbwStatus {
    Ok,
    NegativeP,
    ReconstructionMismatch,
}

impl fmt::Display for PbwStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PbwStatus::Ok => "OK",
            PbwStatus::NegativeP => "NEGATIVE_P",
            PbwStatus::ReconstructionMismatch => "RECONSTRUCTION_MISMATCH",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbwTable {
    pub dmax: u32,
    pub wmax: i64,
    pub m: BTreeMap<(u32, i64), i64>,
    pub p: BTreeMap<(u32, i64), i64>,
}

impl PbwTable {
    pub fn cells(&self) -> impl Iterator<Item = (u32, i64, i64, i64)> + '_ {
        self.m.iter().map(|(&(d, w), &m)| (d, w, m, self.p[&(d, w)]))
    }

    pub fn has_negative(&self) -> bool {
        self.p.values().any(|&p| p < 0)
    }

    /// Recomputes `m` from `p`; cells whose result differs.
    pub fn reconstruction_mismatches(&self) -> Vec<(u32, i64)> {
        self.m
            .iter()
            .filter(|(&(d, w), &m)| reconstruct(&self.p, d, w).ok() != Some(m))
            .map(|(&k, _)| k)
            .collect()
    }

    /// Cells with `m(d, w) != m(d, w + d)`, where both are in range.
    pub fn periodicity_failures(&self) -> Vec<(u32, i64)> {
        self.m
            .iter()
            .filter(|(&(d, w), &m)| self.m.get(&(d, w + d as i64)).is_some_and(|&n| n != m))
            .map(|(&k, _)| k)
            .collect()
    }

    pub fn status(&self) -> PbwStatus {
        if self.has_negative() {
            PbwStatus::NegativeP
        } else if !self.reconstruction_mismatches().is_empty() {
            PbwStatus::ReconstructionMismatch
        } else {
            PbwStatus::Ok
        }
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("d\tw\tm\tp\n");
        for (d, w, m, p) in self.cells() {
            out.push_str(&format!("{d}\t{w}\t{m}\t{p}\n"));
        }
        out.push_str(&format!("{}\n", self.status()));
        out
    }
}

/// `sum_{A in U} prod_i sym_count(p(d_i, w_i), l_i)`, with `p` read from `table`.
fn reconstruct(table: &BTreeMap<(u32, i64), i64>, d: u32, w: i64) -> Result<i64> {
    let mut total = 0;
    for a in index_sets::enum_u(&DimVector::single(d), w) {
        let mut term = 1;
        for ((dv, wi), l) in multiplicities(&a) {
            let p = *table
                .get(&(dv.total() as u32, wi))
                .ok_or_else(|| Error::Unsupported(format!("p({}, {wi}) outside the table", dv.total())))?;
            term *= sym_count(p.max(0), l as i64)?;
        }
        total += term;
    }
    Ok(total)
}

/// Solves `m(d,w) = sum_{A in U^d_w} prod_i sym_count(p(d_i,w_i), l_i)` for
/// `p` by induction on `d`, over `1 <= d <= dmax`, `|w| <= wmax`.
pub fn primitive_dims(dmax: u32, wmax: i64) -> Result<PbwTable> {
    if dmax < 1 || wmax < 0 {
        return Err(Error::NegativeArgument(format!("dmax={dmax}, wmax={wmax}")));
    }
    let mut m = BTreeMap::new();
    let mut p: BTreeMap<(u32, i64), i64> = BTreeMap::new();
    for d in 1..=dmax {
        let poly = WPolytope::new(&Quiver::tripled_jordan(), &DimVector::single(d))?;
        for w in -wmax..=wmax {
            let count = index_sets::window_generators_in(&poly, w, &Weight::zero(d as usize))?.len() as i64;
            m.insert((d, w), count);
            // every term but the single-part one only involves smaller d
            let mut rest = 0;
            for a in index_sets::enum_u(&DimVector::single(d), w) {
                if a.len() == 1 {
                    continue;
                }
                let mut term = 1;
                for ((dv, wi), l) in multiplicities(&a) {
                    term *= sym_count(p[&(dv.total() as u32, wi)].max(0), l as i64)?;
                }
                rest += term;
            }
            p.insert((d, w), count - rest);
        }
    }
    Ok(PbwTable { dmax, wmax, m, p })
}

/// Outcome of the weight-level bijection check.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BijectionReport {
    pub d: u32,
    pub w: i64,
    pub bound: i64,
    /// Dominant weights of total `w` with coordinates in `[-bound, bound]`.
    pub domain_size: usize,
    /// Number of domain weights sent to each partition.
    pub images: BTreeMap<PartitionA, usize>,
    /// Product tuples checked for surjectivity.
    pub tuples_checked: usize,
    pub violations: Vec<String>,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `chi -> (A_chi, (chi_i))` is a bijection from dominant weights
/// onto the disjoint union over `A` of products of block windows, on the
/// box `|chi_s| <= bound`.
pub fn verify_bijection(d: u32, w: i64, bound: i64) -> Result<BijectionReport> {
    if bound < 0 {
        return Err(Error::NegativeArgument(format!("bound {bound}")));
    }
    let quiver = Quiver::tripled_jordan();
    let dv = DimVector::single(d);
    let n = d as usize;
    let zero = Weight::zero(n);
    let mut report = BijectionReport {
        d,
        w,
        bound,
        ..Default::default()
    };
    let mut seen: BTreeSet<(PartitionA, Vec<Vec<i64>>)> = BTreeSet::new();
    let mut realized: BTreeMap<PartitionA, Vec<Weight>> = BTreeMap::new();
    let domain = index_sets::dominant_in_box(&dv, w, &vec![-bound; n], &vec![bound; n]);
    report.domain_size = domain.len();
    for chi in &domain {
        let chi_w = Weight::from_ints(chi);
        let form = standard_form::decompose(&quiver, &dv, &chi_w, &zero)?;
        let a = form.partition();
        let deltas = form.delta_ai();
        let mut blocks = Vec::new();
        for ((leaf, delta), (_, wi)) in form.leaves().iter().zip(&deltas).zip(a.parts()) {
            let block = chi_w.restrict(&leaf.slots);
            let window = index_sets::window_generators(&quiver, &leaf.dims, *wi, delta)?;
            if !window.contains(&block) {
                report
                    .violations
                    .push(format!("{chi_w}: block {block} outside its window for {a}"));
            }
            blocks.push(block.to_ints().expect("integral"));
        }
        match realized.get(&a) {
            Some(known) if *known != deltas => {
                report.violations.push(format!("{a}: delta_Ai depends on the realizing weight"));
            }
            Some(_) => {}
            None => {
                realized.insert(a.clone(), deltas);
            }
        }
        if !seen.insert((a.clone(), blocks)) {
            report.violations.push(format!("{chi_w}: image already hit"));
        }
        *report.images.entry(a).or_default() += 1;
    }
    // every in-box tuple of block windows comes from a dominant weight
    for (a, deltas) in &realized {
        let windows: Vec<Vec<Vec<i64>>> = a
            .parts()
            .iter()
            .zip(deltas)
            .map(|((di, wi), delta)| {
                index_sets::window_generators(&quiver, di, *wi, delta)
                    .map(|ws| ws.iter().map(|c| c.to_ints().expect("integral")).collect())
            })
            .collect::<Result<_>>()?;
        let mut tuple = Vec::new();
        product(&windows, &mut tuple, &mut |blocks: &[Vec<i64>]| {
            let chi: Vec<i64> = blocks.concat();
            if chi.iter().any(|c| c.abs() > bound) {
                return Ok(());
            }
            report.tuples_checked += 1;
            let chi_w = Weight::from_ints(&chi);
            if !chi_w.is_dominant(&dv) {
                report.violations.push(format!("{a}: tuple {chi_w} is not dominant"));
                return Ok(());
            }
            let back = standard_form::decompose(&quiver, &dv, &chi_w, &zero)?.partition();
            if back != *a {
                report.violations.push(format!("{a}: tuple {chi_w} decomposes to {back}"));
            }
            Ok(())
        })?;
    }
    Ok(report)
}

fn product<F>(lists: &[Vec<Vec<i64>>], cur: &mut Vec<Vec<i64>>, f: &mut F) -> Result<()>
where
    F: FnMut(&[Vec<i64>]) -> Result<()>,
{
    if cur.len() == lists.len() {
        return f(cur);
    }
    for item in &lists[cur.len()] {
        cur.push(item.clone());
        product(lists, cur, f)?;
        cur.pop();
    }
    Ok(())
}
