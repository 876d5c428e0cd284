//! MV-algebras, the convolution algebra on maps between them, exp/log,
//! MV-morphisms and their composition, and the `⊘` product.

mod algebra;
mod chain;
mod congruence;
mod constructors;
mod convolution;
mod oslash;
mod presentation;

pub use algebra::{Flavor, MVAlgebra};
pub(crate) use chain::Coordinates;
pub use chain::{tilde_morphism_space, ChainMapSpace};
pub use congruence::congruence_check_multiplicativity;
pub use constructors::{
    ground, make_supertrivial, make_trivial_coproduct, make_trivial_product, standard_counit,
};
pub use convolution::{
    conv_power, conv_unit, convolution, diamond, exp_map, is_mv_morphism, is_tilde_morphism,
    log_map, map_witness, mv_morphism_check, mv_unit, same_algebra, tilde_morphism_check, ConvMap,
};
pub use oslash::{oslash_algebras, oslash_morphisms, tensor_of_exponentials};
pub use presentation::{algebra_from_json, algebra_to_json, map_from_json, map_to_json, Overrides};
