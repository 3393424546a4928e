//! Standard forms `chi + rho + delta = -sum_j r_j N_j + psi` and the data
//! read off them: the partition `A_chi`, the weights `chi_A`, `delta_Ai`, the
//! `omega_lambda` twist, and the slope/tree correspondence for the tripled
//! Jordan quiver.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::partition::PartitionA;
use crate::polytope::WPolytope;
use crate::quiver::{DimVector, Quiver};
use crate::rational::{fmt_q, frac, half, q, to_i64, Q};
use crate::weights::{self, pair_unchecked, Block, Cocharacter, Weight};

/// One cocharacter of the tree. `lambda` and `n` are local to `block`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub lambda: Cocharacter,
    pub r: Q,
    pub n: Weight,
    pub block: Block,
    pub parent: Option<usize>,
}

impl Node {
    /// `N_j` as a weight on all slots.
    pub fn n_global(&self, slots: usize) -> Weight {
        self.n.embed(&self.block.slots, slots)
    }

    fn to_json(&self, slots: usize) -> Value {
        json!({
            "lambda": self.lambda.coords(),
            "r": fmt_q(&self.r),
            "N": self.n_global(slots).coords().iter().map(fmt_q).collect::<Vec<_>>(),
            "slots": self.block.slots,
            "parent": self.parent,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardForm {
    dims: DimVector,
    nodes: Vec<Node>,
    leaves: Vec<Block>,
    residual: Weight,
    source: Weight,
    chi: Weight,
    delta: Weight,
}

impl StandardForm {
    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    /// Nodes in pre-order; parents precede children.
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// The finest blocks of the tree, in slot order.
    pub fn leaves(&self) -> &[Block] {
        &self.leaves
    }

    pub fn residual(&self) -> &Weight {
        &self.residual
    }

    /// `chi + rho + delta`.
    pub fn source(&self) -> &Weight {
        &self.source
    }

    pub fn chi(&self) -> &Weight {
        &self.chi
    }

    pub fn delta(&self) -> &Weight {
        &self.delta
    }

    pub fn r_sequence(&self) -> Vec<Q> {
        self.nodes.iter().map(|n| n.r.clone()).collect()
    }

    /// `-sum_j r_j N_j + psi`, which must equal the source.
    pub fn reconstruct(&self) -> Weight {
        let total = self.dims.total();
        self.nodes
            .iter()
            .fold(self.residual.clone(), |acc, n| acc.sub(&n.n_global(total).scale(&n.r)))
    }

    /// The partition `A_chi`: leaf blocks with `w_i = <1_{d_i}, chi_i>`.
    pub fn partition(&self) -> PartitionA {
        let parts = self
            .leaves
            .iter()
            .map(|b| {
                let w = self.chi.restrict(&b.slots).sum();
                (b.dims.clone(), to_i64(&w).expect("integral chi"))
            })
            .collect();
        PartitionA::new(parts).expect("leaves partition d")
    }

    /// `chi_A = -sum_j r_j N_j - rho^{lambda<0} - delta`.
    pub fn chi_a(&self) -> Weight {
        chi_a_from_tree(&self.dims, &self.nodes, &self.leaves, &self.delta)
    }

    /// `delta_Ai`: the blocks of `-chi_A`.
    pub fn delta_ai(&self) -> Vec<Weight> {
        let neg = self.chi_a().neg();
        self.leaves.iter().map(|b| neg.restrict(&b.slots)).collect()
    }

    pub fn to_json(&self) -> Value {
        let slots = self.dims.total();
        json!({
            "nodes": self.nodes.iter().map(|n| n.to_json(slots)).collect::<Vec<_>>(),
            "psi": self.residual.coords().iter().map(fmt_q).collect::<Vec<_>>(),
            "A": self.partition().to_json(),
        })
    }
}

/// Runs the face recursion on `chi + rho + delta`.
pub fn decompose(quiver: &Quiver, d: &DimVector, chi: &Weight, delta: &Weight) -> Result<StandardForm> {
    quiver.check_dims(d)?;
    for w in [chi, delta] {
        if w.slots() != d.total() {
            return Err(Error::SlotMismatch {
                expected: d.total(),
                got: w.slots(),
            });
        }
    }
    if d.total() == 0 {
        return Err(Error::ZeroDimension);
    }
    if !chi.is_integral() {
        return Err(Error::NotIntegral);
    }
    if !chi.is_dominant(d) {
        return Err(Error::NotDominant);
    }
    if !delta.is_weyl_invariant(d) {
        return Err(Error::NotWeylInvariant);
    }
    let source = chi.add(&weights::rho(d)).add(delta);
    let mut phi = source.clone();
    let mut nodes = Vec::new();
    let mut leaves = Vec::new();
    let root = Block {
        dims: d.clone(),
        slots: (0..d.total()).collect(),
    };
    descend(quiver, &mut phi, root, None, &mut nodes, &mut leaves)?;
    Ok(StandardForm {
        dims: d.clone(),
        nodes,
        leaves,
        residual: phi,
        source,
        chi: chi.clone(),
        delta: delta.clone(),
    })
}

fn descend(
    quiver: &Quiver,
    phi: &mut Weight,
    block: Block,
    parent: Option<usize>,
    nodes: &mut Vec<Node>,
    leaves: &mut Vec<Block>,
) -> Result<()> {
    let poly = WPolytope::new(quiver, &block.dims)?;
    let local = phi.restrict(&block.slots);
    let r = poly.r_invariant(&local)?;
    if r <= half() {
        leaves.push(block);
        return Ok(());
    }
    let lambda = poly.face_at(&local, &r)?;
    let n = poly.n_pos(&lambda);
    *phi = phi.add(&n.scale(&r).embed(&block.slots, phi.slots()));
    let subs = lambda.blocks(&block.dims);
    let idx = nodes.len();
    let slots = block.slots.clone();
    nodes.push(Node {
        lambda,
        r,
        n,
        block,
        parent,
    });
    for sub in subs {
        let child = Block {
            dims: sub.dims,
            slots: sub.slots.iter().map(|&s| slots[s]).collect(),
        };
        descend(quiver, phi, child, Some(idx), nodes, leaves)?;
    }
    Ok(())
}

/// Convenience wrapper: `A_chi` of a standard form.
pub fn partition_of(form: &StandardForm) -> PartitionA {
    form.partition()
}

/// `rho^{lambda<0}` for the Levi given by `leaves`: half the sum of the
/// positive roots that are not roots of the Levi.
pub fn rho_lambda_neg(d: &DimVector, leaves: &[Block]) -> Weight {
    let levi = leaves.iter().fold(Weight::zero(d.total()), |acc, b| {
        acc.add(&weights::rho(&b.dims).embed(&b.slots, d.total()))
    });
    weights::rho(d).sub(&levi)
}

fn chi_a_from_tree(d: &DimVector, nodes: &[Node], leaves: &[Block], delta: &Weight) -> Weight {
    let total = d.total();
    let sum = nodes
        .iter()
        .fold(Weight::zero(total), |acc, n| acc.add(&n.n_global(total).scale(&n.r)));
    sum.neg().sub(&rho_lambda_neg(d, leaves)).sub(delta)
}

/// The tree, coefficients and constant solving
/// `sum_i v_i tau_{d_i} = -sum_j (3 r_j - 3/2) g_j + c tau_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSkeleton {
    dims: DimVector,
    nodes: Vec<Node>,
    leaves: Vec<Block>,
    c: Q,
}

impl TreeSkeleton {
    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn leaves(&self) -> &[Block] {
        &self.leaves
    }

    pub fn c(&self) -> &Q {
        &self.c
    }

    pub fn r_sequence(&self) -> Vec<Q> {
        self.nodes.iter().map(|n| n.r.clone()).collect()
    }

    /// Rebuilds `psi_A` from the tree and reads off the block weights.
    pub fn read_slopes(&self) -> Result<PartitionA> {
        let total = self.dims.total();
        let three = q(3);
        let mut theta = weights::tau(&self.dims)?.scale(&self.c);
        for n in &self.nodes {
            let g = weights::n_pos(&n.lambda, &weights::adjoint_weights(&n.block.dims));
            let x = &three * &n.r - frac(3, 2);
            theta = theta.sub(&g.embed(&n.block.slots, total).scale(&x));
        }
        let parts = self
            .leaves
            .iter()
            .map(|b| {
                let w = theta.restrict(&b.slots).sum();
                to_i64(&w)
                    .map(|w| (b.dims.clone(), w))
                    .ok_or_else(|| Error::Unrealizable(format!("non-integral block weight {w}")))
            })
            .collect::<Result<_>>()?;
        PartitionA::new(parts)
    }

    /// `chi_A` assembled from the tree, with `N_j` taken over the tripled
    /// Jordan representation.
    pub fn chi_a(&self, delta: &Weight) -> Result<Weight> {
        if delta.slots() != self.dims.total() {
            return Err(Error::SlotMismatch {
                expected: self.dims.total(),
                got: delta.slots(),
            });
        }
        if !delta.is_weyl_invariant(&self.dims) {
            return Err(Error::NotWeylInvariant);
        }
        Ok(chi_a_from_tree(&self.dims, &self.nodes, &self.leaves, delta))
    }
}

fn one_vertex_dims(a: &PartitionA) -> Result<Vec<u32>> {
    a.parts()
        .iter()
        .map(|(d, _)| match d.entries() {
            [n] => Ok(*n),
            _ => Err(Error::Unsupported("slope trees need a one-vertex quiver".into())),
        })
        .collect()
}

/// Solves for the tree of a strictly slope-decreasing partition of the
/// tripled Jordan quiver.
pub fn slope_to_tree(a: &PartitionA) -> Result<TreeSkeleton> {
    let sizes = one_vertex_dims(a)?;
    if !a.has_decreasing_slopes() {
        return Err(Error::NonStrictSlopes(a.to_string()));
    }
    let total: u32 = sizes.iter().sum();
    let d = DimVector::single(total);
    let mut theta = Vec::with_capacity(total as usize);
    let mut expected = Vec::new();
    let mut offset = 0usize;
    for (&n, (_, w)) in sizes.iter().zip(a.parts()) {
        theta.extend(std::iter::repeat_n(frac(*w, n as i64), n as usize));
        expected.push((offset..offset + n as usize).collect::<Vec<_>>());
        offset += n as usize;
    }
    let mut theta = Weight::new(theta);
    let mut nodes = Vec::new();
    let mut leaves = Vec::new();
    let root = Block {
        dims: d.clone(),
        slots: (0..total as usize).collect(),
    };
    solve_tree(&mut theta, root, None, &mut nodes, &mut leaves)?;
    let got: Vec<Vec<usize>> = leaves.iter().map(|b| b.slots.clone()).collect();
    if got != expected {
        return Err(Error::Unrealizable(a.to_string()));
    }
    Ok(TreeSkeleton {
        dims: d,
        nodes,
        leaves,
        c: q(a.total_weight()),
    })
}

fn solve_tree(
    theta: &mut Weight,
    block: Block,
    parent: Option<usize>,
    nodes: &mut Vec<Node>,
    leaves: &mut Vec<Block>,
) -> Result<()> {
    let adj = weights::adjoint_weights(&block.dims);
    let poly = WPolytope::from_weights(&block.dims, adj)?;
    let local = theta.restrict(&block.slots);
    let x = poly.r_invariant(&local)?;
    if x.is_zero() {
        leaves.push(block);
        return Ok(());
    }
    let lambda = poly.face_at(&local, &x)?;
    let g = poly.n_pos(&lambda);
    *theta = theta.add(&g.scale(&x).embed(&block.slots, theta.slots()));
    let r = (x + frac(3, 2)) / q(3);
    let n = weights::n_pos(&lambda, &weights::rep_weights(&Quiver::tripled_jordan(), &block.dims)?);
    let subs = lambda.blocks(&block.dims);
    let idx = nodes.len();
    let slots = block.slots.clone();
    nodes.push(Node {
        lambda,
        r,
        n,
        block,
        parent,
    });
    for sub in subs {
        let child = Block {
            dims: sub.dims,
            slots: sub.slots.iter().map(|&s| slots[s]).collect(),
        };
        solve_tree(theta, child, Some(idx), nodes, leaves)?;
    }
    Ok(())
}

/// `chi_A` for a slope-decreasing partition of the tripled Jordan quiver.
pub fn chi_a(a: &PartitionA, delta: &Weight) -> Result<Weight> {
    slope_to_tree(a)?.chi_a(delta)
}

/// `delta_Ai`, the blocks of `-chi_A`.
pub fn delta_ai(a: &PartitionA, delta: &Weight) -> Result<Vec<Weight>> {
    let tree = slope_to_tree(a)?;
    let neg = tree.chi_a(delta)?.neg();
    Ok(tree.leaves.iter().map(|b| neg.restrict(&b.slots)).collect())
}

/// `omega_lambda`: the sum of the cut weights `alpha` with `<lambda, alpha> > 0`.
pub fn omega(quiver: &Quiver, d: &DimVector, lambda: &Cocharacter) -> Result<Weight> {
    let cut = weights::cut_weights(quiver, d)?;
    if lambda.slots() != d.total() {
        return Err(Error::SlotMismatch {
            expected: d.total(),
            got: lambda.slots(),
        });
    }
    Ok(weights::n_pos(lambda, &cut))
}

/// Per-part integer shifts `<1_{d_i}, omega_lambda>` for `lambda = lambda_{d_1..d_k}`.
fn omega_shifts(quiver: &Quiver, a: &PartitionA) -> Result<Vec<i64>> {
    let d = a.total_dims();
    quiver.check_dims(&d)?;
    if !quiver.has_cut() {
        return Err(Error::NoCut);
    }
    let lambda = Cocharacter::from_composition(&d, &a.dims())?;
    let om = omega(quiver, &d, &lambda)?;
    Ok(lambda
        .blocks(&d)
        .iter()
        .map(|b| to_i64(&om.restrict(&b.slots).sum()).expect("integral cut weights"))
        .collect())
}

/// `A -> A'`: twists the block weights by `omega_lambda`.
pub fn omega_shift(a: &PartitionA, quiver: &Quiver) -> Result<PartitionA> {
    let shifts = omega_shifts(quiver, a)?;
    PartitionA::new(a.parts().iter().zip(shifts).map(|((d, w), s)| (d.clone(), w + s)).collect())
}

/// Inverse of [`omega_shift`].
pub fn omega_unshift(a: &PartitionA, quiver: &Quiver) -> Result<PartitionA> {
    let shifts = omega_shifts(quiver, a)?;
    PartitionA::new(a.parts().iter().zip(shifts).map(|((d, w), s)| (d.clone(), w - s)).collect())
}

/// Both sides of `2 <lambda, omega_lambda> = n_lambda(tripled) - n_lambda(Koszul)`.
pub fn omega_identity(quiver: &Quiver, d: &DimVector, lambda: &Cocharacter) -> Result<(Q, Q)> {
    let lhs = q(2) * pair_unchecked(lambda, &omega(quiver, d, lambda)?);
    let rhs = weights::n_lambda(quiver, d, lambda)? - weights::n_lambda_koszul(quiver, d, lambda)?;
    Ok((lhs, rhs))
}
