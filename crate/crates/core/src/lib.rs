//! Exact-arithmetic MV-algebras on rational carriers.
//!
//! The crate realizes, at desk scale and in exact rational arithmetic:
//!
//! - rank-1 subgroups and subrings of the rationals with their quotient
//!   field and constructive Archimedean witnesses ([`groups`]);
//! - MV-algebras as interval algebras of those groups, with axiom checking,
//!   finite ideal and radical computation, and homomorphism search ([`mv`],
//!   [`laws`], [`ideal`], [`hom`]);
//! - PMV-algebras and the MV-domain / no-nilpotents quasi-identities
//!   ([`pmv`]);
//! - MV-modules with validated scalar actions and the unit embedding
//!   ([`module`]);
//! - the semisimple tensor product through its group-level realization,
//!   with bimorphism checks and the extension universal property
//!   ([`tensor`]);
//! - the lift to linear spaces over the quotient field and the executable
//!   adjunction between the two functors, including the non-equivalence
//!   witness ([`adjunction`]).
//!
//! Every verdict is surfaced as a report value ([`report`]); law failures
//! are counterexamples in reports, never panics. All values are immutable
//! and all operations pure, so everything here is safe to use from
//! concurrent contexts.

pub mod adjunction;
pub mod error;
pub mod groups;
pub mod hom;
pub mod ideal;
pub mod laws;
pub mod module;
pub mod mv;
pub mod pmv;
pub mod rational;
pub mod report;
pub mod tensor;

pub use error::{MvError, Result};
pub use groups::{
    archimedean_witness, fraction_field, subgroup_generate, subgroup_member, subring_generate,
    subring_member, PrimeSet, Rank1Group, RationalField, RationalSubring,
};
pub use hom::{hom_enumerate, hom_find, is_isomorphic, HomComponent, MvHom};
pub use ideal::{ideals_finite, is_semisimple, radical, semisimple_evidence, Ideal};
pub use laws::{check_axioms, check_axioms_with, MvOps};
pub use module::{
    check_module_axioms, check_module_axioms_with, check_no_zero_divisors, unit_embedding,
    ModuleHom, MvModule, ScalarAction,
};
pub use mv::{DerivedOp, MvAlgebra, MvElement, Rank1Carrier};
pub use pmv::{is_mv_domain, is_pmv_plus, ring_is_integral_domain, PmvAlgebra};
pub use rational::{primes_of, rat, Rational};
pub use report::{Budget, CheckStatus, Counterexample, DomainReport, LawReport, LawResult, Verdict};
pub use tensor::{
    check_bimorphism, check_bimorphism_with, extend_hom, tensor_group, tensor_module_structure,
    tensor_ss, HomExtension, Side, TensorResult,
};
