//! The named vertex algebras built from fermions and affine currents.

mod cocycle;
mod fermion;
mod modules;
mod sugawara;
mod supersym;

pub use cocycle::{cocycle_basis, cocycle_sequence, verify_odd_cocycle, verify_odd_cocycle_with, CocycleBasis};
pub use fermion::{current_states, fermion_omega, fermion_vosa, g_fermion_system, GFermion};
pub use modules::{central_charges, vertex_module, virasoro_submodule_dims, CentralCharges, VertexModule};
pub use sugawara::{boson_sugawara, sugawara_omega};
pub use supersym::{super_construction, super_relations, tau2_coefficient_holds, SuperConstruction, SuperFields};
