//! Well-founded and recursive coalgebras for polynomial-style set functors on
//! finite carriers.
//!
//! Functors are built from constants, the identity, sums, products,
//! exponents, the finite powerset and the special functor `R`. On top of
//! them the crate computes next-time operators, well-founded parts,
//! hylomorphisms, the initial-algebra chain and brute-force recursiveness
//! oracles.

pub mod brute;
pub mod catalog;
pub mod coalgebra;
pub mod error;
pub mod finset;
pub mod functor;
pub mod recursion;
pub mod wellfounded;

pub use coalgebra::{
    coalgebra_homs, is_coalgebra_hom, Algebra, CanonicalGraph, Coalgebra, ParaAlgebra, Subcoalgebra,
};
pub use error::{Error, Limits, Result};
pub use finset::{direct_image, inverse_image, pullback, Carrier, FinMap, Pullback, Subobject};
pub use functor::{ConstSet, FValue, FunctorExpr};
pub use recursion::{
    find_homs, find_para_homs, hylo, hylo_with, initial_chain, para_hylo, para_hylo_with,
    parametric_oracle, recursive_oracle, unfold_to_mu, CycleReport, InitialChain, OracleOptions,
    OracleStatus, OracleVerdict, OracleWitness, Term, Unfolding, WitnessAlgebra, WitnessPolicy,
};
pub use wellfounded::{coreflect, is_wellfounded, wf_part, WfPartResult};
