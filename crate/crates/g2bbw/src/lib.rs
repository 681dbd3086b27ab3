//! Exact-arithmetic engine for equivariant sheaf cohomology over the three
//! projective homogeneous spaces of the semisimple group of type G2: the
//! five-dimensional Grassmannian `G`, the five-dimensional quadric `Q` and the
//! six-dimensional full flag variety `F`, together with the total spaces of
//! the rank-two bundles over `G` and `Q` (`Y+`, `Y-`) and of a line bundle
//! over `F` (`Y`).
//!
//! Everything is integer / rational arithmetic; there is no floating point
//! anywhere. The main layers are:
//!
//! * [`rootdata`] — the G2 root system, Weyl group, dot-action and the
//!   weight-normalization step of the Borel-Bott-Weil theorem;
//! * [`repring`] — bundle descriptors, rank-2 Clebsch-Gordan tensor
//!   decomposition, duals and irreducible-representation dimensions;
//! * [`freudenthal`] — an independent character-theoretic oracle (weight
//!   multiplicities, full tensor decomposition) used by the test suites;
//! * [`cohom`] — cohomology of descriptors on the proper spaces, pushforward
//!   streams on the total spaces, Ext tables, and honest interval propagation
//!   along long exact sequences for filtered sheaves;
//! * [`tiltcert`] — certification of candidate tilting collections and the
//!   claim-by-claim verification report;
//! * [`quiver`] — dimension vectors, King stability parameters and the
//!   strict-semistability search.
//!
//! All operations are pure; with the `parallel` feature (default) the sweeps
//! and tables are evaluated with rayon, with deterministic, sorted assembly
//! so output never depends on thread count.

pub mod cohom;
pub mod freudenthal;
pub mod par;
pub mod quiver;
pub mod repring;
pub mod rootdata;
pub mod tiltcert;

pub use cohom::{
    coh_irreducible, ext_pair, ext_table, euler_char, les_propagate, push_coh_total, CohResult,
    DimValue, ExtOptions, FilteredSheaf, GradedDims, SheafSpace, TotalSpace, Twist,
};
pub use quiver::{
    hom_matrix, karmazyn_data, strict_semistable_exists, DimVector, HomMatrix, StabilityParam,
};
pub use repring::{
    cox_dimension, dim_irrep, dualize, tensor_decompose, BundleDescriptor, BundleSum, IrrepLabel,
    Space,
};
pub use rootdata::{bbw_normalize, dot_apply, weyl_group, BbwNormalForm, Weight, WeylElement};
pub use tiltcert::{certify_tilting, verify_paper, Certificate, Collection, Report, VerifyOptions};

/// Schema tag stamped into every JSON document produced by this crate.
pub const SCHEMA: &str = "g2bbw/1";
