//! Exact computations for sheaves of logarithmic vector fields along plane
//! cubics: jumping lines and the Cayleyan curve, the jumping-cubic hyperplane
//! `J(f)_3`, stability, Chern data, and recovery of a Hesse cubic from these
//! invariants (which fails exactly when `j = 0`).
//!
//! Everything outside [`involution`] is exact rational arithmetic.

pub mod error;
pub mod form;
pub mod geometry;
pub mod involution;
pub mod logsheaf;
pub mod matrix;
pub mod parse;
pub mod rational;
pub mod resultant;
pub mod sweep;
pub mod torelli;
pub mod univariate;

pub use error::{Error, Result};
pub use form::{BasisOrder, Monomial, Space, TernaryForm};
pub use geometry::{
    conic_singular_point, first_polar, hesse_cubic, hessian_curve, is_smooth_cubic, j_invariant_hesse,
    HesseCubic, ProjectivePoint, SmoothnessStatus, SmoothnessVerdict,
};
pub use involution::{check_involution, involution_s, sample_hessian_points, ComplexPoint, InvolutionReport};
pub use logsheaf::{
    cayleyan_cubic, chern_data, d0_graded_dim, is_jumping_cubic, is_stable, jacobi_degree3, jumping_line_test,
    jumping_matrix, splitting_type, ChernData, HyperplaneNormal, SplittingType,
};
pub use matrix::ExactMatrix;
pub use parse::parse_form;
pub use rational::Rational;
pub use resultant::sylvester_resultant;
pub use torelli::{
    cayleyan_hesse_param, counterexample_check, forward_invariants, reconstruct, reconstruct_candidates,
    CandidateSet, SheafInvariants,
};
pub use univariate::UniPoly;
