//! Exact-arithmetic engine for graded multilinear algebra.
//!
//! The crate works over a finite-dimensional graded vector space `V` in
//! characteristic zero and computes, with arbitrary-precision rationals:
//!
//! - Koszul signs, the `eta` shift cocycles, and conversions between
//!   maps on `V` and maps on the shift `V[1]` ([`sign`], [`multilinear`]);
//! - cyclic multilinear forms, the cyclic product, shuffle-vanishing
//!   defects, and symmetrization ([`multilinear`]);
//! - the Pinczon bracket on cyclic forms determined by a nondegenerate
//!   symmetric pairing, the coderivation brackets on the tensor and
//!   symmetric coalgebras, and the dictionary between quadratic maps and
//!   cyclic forms ([`bracket`]);
//! - validation of quadratic associative / commutative / Lie structures
//!   and their up-to-homotopy variants ([`structure`]);
//! - double semidirect products, cochain lifts, the coboundary operators
//!   of Hochschild, Harrison and Chevalley type together with their
//!   bracket-side counterparts, and Betti numbers over the rationals
//!   ([`cohomology`]);
//! - the JSON file formats used by the command line tool ([`format`]).
//!
//! All operations are pure functions of immutable values; results are
//! deterministic, with coefficients kept in lexicographically sorted
//! sparse containers.

pub mod basis;
pub mod bracket;
pub mod cohomology;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod linalg;
pub mod multilinear;
pub mod random;
pub mod scalar;
pub mod sign;
pub mod structure;

pub use basis::GradedBasis;
pub use bracket::{
    dual_basis, form_of_map, map_of_form, pinczon_bracket, pinczon_bracket_sym, BilinearPairing,
    DualBasis,
};
pub use cohomology::{
    classical_differential, cohomology_dims, double_extension, lift_cochain, pinczon_differential,
    verify_phi, Cochain, CochainFlavor, CohomologyDims, DoubleExtension, ModuleData,
};
pub use error::{Error, Result};
pub use linalg::{rank_and_kernel, rational_rank, QMatrix};
pub use multilinear::{shift_map, unshift_map, MultilinearForm, MultilinearMap, VLevelMap};
pub use scalar::{format_rat, parse_rat, Rat};
pub use sign::{eta, koszul_sign, Permutation};
pub use structure::{
    check_invariance, classify, load_structure, structure_equation, validate, validate_homotopy,
    Flavor, QuadraticStructure, ValidationReport,
};
