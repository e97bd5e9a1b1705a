//! Pointwise curvature algebra of oriented Riemannian four-manifolds and of
//! their negative twistor spaces.
//!
//! The crate works with algebraic curvature data at a single point, given in an
//! orthonormal coframe, and derives everything that lives over that point on
//! the twistor space `(Z, g_t)`: the curvature of `g_t`, the covariant
//! derivatives of the Atiyah–Hitchin–Singer structure `J` and the
//! Eells–Salamon structure `𝐉`, their Nijenhuis tensors, Kähler-form
//! differentials, the Ricci* tensor and the holomorphic scalar curvature.
//!
//! Wherever a quantity has both a defining contraction and a closed
//! component formula, the contraction is the value returned and the closed
//! formula is evaluated separately as a cross-check (see
//! [`twistor::closed_form_report`]).
//!
//! Indices are 0-based in storage and 1-based in every report and error
//! message.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod classify;
pub mod curvature;
pub mod error;
pub mod lambda2;
pub mod report;
pub mod tensor;
pub mod twistor;
pub mod zoo;

pub use classify::{
    frame_scan, gray_hervella, linear_residual, nijenhuis_quadratic_residual, quadratic_einstein_residual, scalar_gaps,
    theorem_check, Check, ClassificationReport, GrayHervellaClass, LinearCondition, ScanConfig, ScanReport, TheoremId,
    Verdict, VerdictRecord,
};
pub use curvature::{
    decompose_blocks, predicates, q_tables, ricci_scalar, rotate_curvature, transform_blocks, weyl_split,
    AlgebraicCurvature, CurvatureBlocks, Predicates, QTable,
};
pub use error::{Error, Result, Violation};
pub use lambda2::{
    alpha_basis, hodge_star, induced_so3_pair, kulkarni_nomizu, sample_rotation, sd_asd_split, FrameRotation,
    Orientation, Sym2, TwoForm,
};
pub use twistor::{build, Structure, TwistorPointData};
pub use zoo::ZooEntry;
