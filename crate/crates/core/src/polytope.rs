//! The polytope `W = sum_beta [0, beta] + R tau_d` and its r-invariant.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lp::{self, LpOutcome};
use crate::quiver::{DimVector, Quiver};
use crate::rational::{q, Q};
use crate::weights::{self, pair_unchecked, Cocharacter, Weight};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WPolytope {
    dims: DimVector,
    segments: Vec<Weight>,
    /// Distinct segments with their multiplicities, fed to the LP.
    merged: Vec<(Weight, i64)>,
    axis: Weight,
}

impl WPolytope {
    pub fn new(quiver: &Quiver, d: &DimVector) -> Result<Self> {
        let rep = weights::rep_weights(quiver, d)?;
        Self::from_weights(d, rep)
    }

    /// Builds the polytope from an explicit weight multiset; zero weights are dropped.
    pub fn from_weights(d: &DimVector, rep: Vec<Weight>) -> Result<Self> {
        let axis = weights::tau(d)?;
        let segments: Vec<Weight> = rep.into_iter().filter(|w| !w.is_zero()).collect();
        if let Some(bad) = segments.iter().find(|w| w.slots() != d.total()) {
            return Err(Error::SlotMismatch {
                expected: d.total(),
                got: bad.slots(),
            });
        }
        let mut sorted = segments.clone();
        sorted.sort();
        let mut merged: Vec<(Weight, i64)> = Vec::new();
        for w in sorted {
            match merged.last_mut() {
                Some((last, m)) if *last == w => *m += 1,
                _ => merged.push((w, 1)),
            }
        }
        Ok(Self {
            dims: d.clone(),
            segments,
            merged,
            axis,
        })
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn segments(&self) -> &[Weight] {
        &self.segments
    }

    pub fn axis(&self) -> &Weight {
        &self.axis
    }

    pub fn slots(&self) -> usize {
        self.dims.total()
    }

    fn check(&self, chi: &Weight) -> Result<()> {
        if chi.slots() != self.slots() {
            return Err(Error::SlotMismatch {
                expected: self.slots(),
                got: chi.slots(),
            });
        }
        Ok(())
    }

    /// Equality rows `sum c_k beta_k + (tp - tm) axis = chi`, with the
    /// column layout `[c_1..c_K, extra.., tp, tm]` where `extra` columns
    /// are zero in these rows.
    fn span_rows(&self, chi: &Weight, extra: usize) -> (Vec<Vec<Q>>, Vec<Q>) {
        let k = self.merged.len();
        let width = k + extra + 2;
        let mut rows = Vec::with_capacity(self.slots());
        for i in 0..self.slots() {
            let mut row = vec![Q::zero(); width];
            for (j, (beta, _)) in self.merged.iter().enumerate() {
                row[j] = beta.coords()[i].clone();
            }
            row[k + extra] = self.axis.coords()[i].clone();
            row[k + extra + 1] = -self.axis.coords()[i].clone();
            rows.push(row);
        }
        (rows, chi.coords().to_vec())
    }

    /// Closed membership `chi in r W`.
    pub fn contains(&self, chi: &Weight, r: &Q) -> Result<bool> {
        self.check(chi)?;
        if r.is_negative() {
            return Err(Error::NegativeRadius(r.to_string()));
        }
        // columns: c_k, s_k, tp, tm
        let k = self.merged.len();
        let (mut a, mut b) = self.span_rows(chi, k);
        let width = 2 * k + 2;
        for (j, (_, m)) in self.merged.iter().enumerate() {
            let mut row = vec![Q::zero(); width];
            row[j] = Q::one();
            row[k + j] = Q::one();
            a.push(row);
            b.push(r * q(*m));
        }
        Ok(lp::feasible(&a, &b, width).is_some())
    }

    /// The least `r >= 0` with `chi in r W`.
    pub fn r_invariant(&self, chi: &Weight) -> Result<Q> {
        self.check(chi)?;
        if self.merged.is_empty() {
            // W is the axis line
            let shifted = chi.sub(&self.axis.scale(&chi.sum()));
            return if shifted.is_zero() { Ok(Q::zero()) } else { Err(Error::NotInSpan) };
        }
        // columns: c_k, r, s_k, tp, tm
        let k = self.merged.len();
        let (mut a, mut b) = self.span_rows(chi, k + 1);
        let width = 2 * k + 3;
        for (j, (_, m)) in self.merged.iter().enumerate() {
            let mut row = vec![Q::zero(); width];
            row[j] = Q::one();
            row[k] = -q(*m);
            row[k + 1 + j] = Q::one();
            a.push(row);
            b.push(Q::zero());
        }
        let mut cost = vec![Q::zero(); width];
        cost[k] = Q::one();
        match lp::solve(&a, &b, &cost) {
            LpOutcome::Optimal { value, .. } => Ok(value),
            LpOutcome::Infeasible => Err(Error::NotInSpan),
            LpOutcome::Unbounded => unreachable!("r is bounded below by zero"),
        }
    }

    /// `N^{lambda>0}`: the sum of the polytope's generators pairing positively with `lambda`.
    pub fn n_pos(&self, lambda: &Cocharacter) -> Weight {
        weights::n_pos(lambda, &self.segments)
    }

    /// Whether `<lambda, chi> = -r <lambda, N^{lambda>0}>`.
    pub fn on_face(&self, lambda: &Cocharacter, chi: &Weight, r: &Q) -> bool {
        pair_unchecked(lambda, chi) == -(r * pair_unchecked(lambda, &self.n_pos(lambda)))
    }

    /// The maximal antidominant cocharacter cutting out the face of `r W`
    /// that contains the dominant weight `chi`, where `r` is its r-invariant.
    /// Maximal means finest level partition, ties broken by the
    /// lexicographically smallest composition.
    pub fn face_cocharacter(&self, chi: &Weight) -> Result<(Cocharacter, Q)> {
        let r = self.r_invariant(chi)?;
        if r.is_zero() {
            return Err(Error::ZeroRadius);
        }
        let lambda = self.face_at(chi, &r)?;
        Ok((lambda, r))
    }

    /// Face cocharacter for a known radius `r > 0`.
    pub fn face_at(&self, chi: &Weight, r: &Q) -> Result<Cocharacter> {
        self.check(chi)?;
        if !chi.is_dominant(&self.dims) {
            return Err(Error::NotDominant);
        }
        let mut best: Option<(usize, Vec<DimVector>, Cocharacter)> = None;
        for lambda in weights::cochar_classes(&self.dims) {
            let comp = lambda.composition(&self.dims);
            if comp.len() < 2 || !self.on_face(&lambda, chi, r) {
                continue;
            }
            let better = match &best {
                None => true,
                Some((len, c, _)) => comp.len() > *len || (comp.len() == *len && comp < *c),
            };
            if better {
                best = Some((comp.len(), comp, lambda));
            }
        }
        best.map(|(_, _, l)| l).ok_or(Error::NoFace)
    }
}
