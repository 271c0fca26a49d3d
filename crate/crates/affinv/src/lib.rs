//! Affine-subspace analysis of finite-field inversion.
//!
//! The crate classifies the affine F_p-subspaces of GF(p^n) whose image
//! under the inversion permutation Inv (x -> x^-1, 0 -> 0) is again an
//! affine subspace, certifies S-boxes of the shape A(Inv(x)) + b against
//! nontrivial invariant affine subspaces, and cross-checks every verdict
//! with exhaustive brute-force scanners. The AES S-box is bundled as the
//! flagship case.
//!
//! Scanners are data-parallel with rayon by default; build with
//! `--no-default-features` for a dependency-free sequential fallback.
//!
//! ```
//! use affinv::sbox::build_aes_sbox;
//! use affinv::{scan_invariant, ScanOptions};
//!
//! let sbox = build_aes_sbox();
//! let opts = ScanOptions { dims: Some(vec![0, 1]), ..Default::default() };
//! let report = scan_invariant(&sbox, &opts).unwrap();
//! // No fixed points, but 0x73 and 0x8F swap, spanning a dimension-1
//! // invariant subspace.
//! assert_eq!(report.found.len(), 1);
//! assert_eq!(report.found[0].subspace.dim(), 1);
//! ```

pub mod certify;
pub mod error;
pub mod field;
pub(crate) mod linalg;
pub mod par;
pub(crate) mod poly;
pub mod sbox;
pub mod scan;
pub mod stable;
pub mod subspace;

pub use certify::{
    certify_affine_inverse, certify_from_value, certify_scalar, fixed_points, nonsquare_generator,
    repair_map, trace_one_generator, two_cycles, CertReport, CertifiedForm, LinearMap,
    NontrivialVerdict, OverallVerdict,
};
pub use error::{Error, Result};
pub use field::{ElementRecord, Field, FieldDescription, FieldElement, MAX_EXTENSION_DEGREE};
pub use sbox::{aes_affine_layer, aes_field, build_aes_sbox, SBox, SBoxFormat};
pub use scan::{
    coset_survey, scan_affine_images, scan_invariant, CosetSurvey, CosetSurveyEntry, FoundKind,
    FoundSubspace, ScanOptions, ScanReport,
};
pub use stable::{
    brute_force, classify, hua_closure, inv_coset_sums_vanish, inv_image, scaled_subfields,
    StableSubspaceReport,
};
pub use subspace::{
    enumerate_affine, enumerate_linear, span, subfield_subspace, AffineEnumerator, AffineSubspace,
    LinearEnumerator, LinearSubspace, DEFAULT_SUBSPACE_CAP,
};
