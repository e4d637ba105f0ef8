//! Quasi-ordinary polynomials: roots, contacts, characteristic data and
//! factorization.

pub mod character;
pub mod contact;
pub mod factor;
pub mod lattice;
pub mod roots;

pub use character::{
    characteristic, characteristic_with, contact_counts, phi_c, q_invariants, truncation_poly,
    CharData,
};
pub use contact::{contact, contact_with_set};
pub use factor::{factor_qo, Factorization};
pub use lattice::lattice_index;
pub use roots::{qo_roots, roots_to_precision, RootSet};
