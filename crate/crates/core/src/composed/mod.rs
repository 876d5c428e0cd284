//! Component families of maps between symmetric algebras, the connected
//! diagram formula for their composition, and structure recognizers.

mod connectivity;
mod explicit;
mod family;
mod structure;

pub use connectivity::{
    classified_unshuffles, connectivity, psi, psi_by_connectivity, ConnectivityGraph,
};
pub use explicit::{
    compose_definitional, compose_explicit, compose_explicit_with_stats, length_growth,
    ComposeStats, Enumeration,
};
pub use family::ComponentFamily;
pub use structure::{
    bracket_on, coderivation_check, coderivation_from_brackets, default_probe, element_degree,
    hbar_expansion, ibl_check, is_bv_infinity, is_coderivation, is_ibl_family,
    is_munster_sachs_family, l_infty_brackets, l_infty_relation, munster_sachs_check,
    operator_order, operator_order_witness, phi_n, Phi0,
};
