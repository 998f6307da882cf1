//! Finitely generated abelian groups: presentations, homomorphisms,
//! subquotients, exactness and change of coefficients.

mod coeff;
mod group;
mod presentation;
mod subgroup;

pub use coeff::{n_primary_part, n_primary_projection, tensor, tensor_zn, tor, tor_zn};
pub(crate) use group::combination;
pub use group::{AbelianGroup, Element, GroupHom};
pub use presentation::{from_presentation, normalize, Presentation};
pub use subgroup::{
    image_subgroup, is_exact, is_exact_cyclic, kernel_subgroup, subquotients, ExactnessReport, NodeReport, Subgroup,
    Subquotients,
};
