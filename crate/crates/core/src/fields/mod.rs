//! Counting machinery for continuous fields of Cuntz algebras: the `~_n`
//! relation on finite nilpotent rings, cohomology counts and the kernel and
//! cokernel pieces of the Pimsner six-term sequence.

mod cohomology;
mod pimsner;
mod random;
mod ring;
mod simn;

pub use cohomology::{dadarlat_count_check, heven_order, CohomologyProfile, CountReport};
pub use pimsner::{pimsner_pieces, PimsnerPieces};
pub use random::filtered_monomial_ring;
pub use ring::{FiniteNilRing, MAX_RING_ORDER};
pub use simn::{lemma_tec_check, sim_n_quotient, LemmaReport};
