//! Exact combinatorics of semiorthogonal decompositions for quotient stacks
//! of symmetric quiver representations, with a shuffle-algebra side for the
//! tripled Jordan quiver.

pub mod cli;
pub mod error;
pub mod index_sets;
pub mod lp;
pub mod partition;
pub mod pbw;
pub mod polytope;
pub mod quiver;
pub mod rational;
pub mod shuffle;
pub mod standard_form;
pub mod weights;

pub use error::{Error, Result};
pub use quiver::{DimVector, Quiver};
pub use rational::Q;
pub use weights::{Cocharacter, Weight};
