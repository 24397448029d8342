//! Weight-2 integral modular symbols for `Gamma_0(N)` via Manin symbols, and
//! the cuspidal divisor class group they determine.

mod cusps;
mod group;
mod p1;
mod space;

pub use cusps::{cusps_equivalent, CuspClass, CuspSet};
pub use group::{
    cuspidal_group, eigenpart_order, eigenpart_order_full, eisenstein_eigenvalue, eisenstein_ideal_index,
    eisenstein_ideal_index_full, eisenstein_lattice, excluded_primes, genus, hecke_family, hecke_operator,
    restrict, CuspidalGroupData, TrivialCompletion,
};
pub use p1::{index_gamma0, P1List};
pub use space::{is_stable, lift_to_sl2, merel_matrices, relation_space, ModularSymbols, RelationSpace};

/// `P^1(Z/NZ)` in canonical order.
pub fn p1_list(n: u64) -> P1List {
    P1List::new(n)
}

/// Cusps of `X_0(N)`.
pub fn cusp_classes(n: u64) -> CuspSet {
    CuspSet::new(n)
}

/// Boundary map from the integral symbol lattice to `Z[cusps]`.
pub fn boundary_matrix(n: u64) -> crate::Result<crate::linalg::IntMatrix> {
    Ok(ModularSymbols::new(n)?.boundary_matrix().clone())
}
