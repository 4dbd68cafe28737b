//! Fields, n-th products, locality and the state-field correspondence.

pub mod axioms;
pub mod borcherds;
pub mod field;
pub mod locality;
pub mod report;
pub mod state_field;

pub use axioms::{check_vosa_axioms, virasoro_relations, GeneratorSystem, VosaInstance};
pub use borcherds::check_borcherds;
pub use field::{binomial, Expr, Field};
pub use locality::{
    bracket_from_ope, check_bracket_from_ope, graded_commutator, is_local_at, locality_order, ope_singular_part,
    same_action,
    LocalityOrder, OpeTerm,
};
pub use report::{CheckReport, CheckResult, Status};
pub use state_field::{
    generate_closure, module_generators, state_of_field, Closure, ClosureElement, LevelSpan, StateFieldMap,
};
