//! Stabilizer-formalism tools for entropic uncertainty relations.
//!
//! Exact overlaps and Maassen–Uffink bounds for stabilizer and graph-state
//! bases, entropic relations for anticommuting Pauli observables, and a dense
//! simulator to cross-check all of it. The guide in `book/` walks through each
//! module.

pub mod dyadic;
pub mod entropy;
pub mod error;
pub mod gf2;
pub mod graphstate;
pub mod oracle;
pub mod pauli;
pub mod random;
pub mod stabgroup;
pub mod urelations;

pub use dyadic::Dyadic;
pub use entropy::{EntropySpec, ProbabilityDistribution};
pub use error::{Error, Result};
pub use graphstate::Graph;
pub use oracle::DenseState;
pub use pauli::PauliOperator;
pub use stabgroup::{BasisLabel, StabilizerGroup};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/pauli.md")]
    mod pauli {}
    #[doc = include_str!("../../../book/src/stabilizer-groups.md")]
    mod stabilizer_groups {}
    #[doc = include_str!("../../../book/src/graph-states.md")]
    mod graph_states {}
    #[doc = include_str!("../../../book/src/entropies.md")]
    mod entropies {}
    #[doc = include_str!("../../../book/src/uncertainty-relations.md")]
    mod uncertainty_relations {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
