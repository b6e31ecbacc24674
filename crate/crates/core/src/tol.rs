//! Numerical tolerances shared across the crate.

/// Hermiticity of 2×2 operators.
pub const EPS_HERM: f64 = 1e-9;
/// `|tr ρ − 1|`.
pub const EPS_TRACE: f64 = 1e-9;
/// Unit-vector length.
pub const EPS_UNIT: f64 = 1e-9;
/// Round trips between equivalent representations.
pub const EPS_RT: f64 = 1e-12;
/// Slack on `|r| ≤ 1`.
pub const EPS_POS: f64 = 1e-9;
/// Symmetry of 3×3 real matrices.
pub const EPS_SYM: f64 = 1e-9;
/// Slack on every complete-positivity inequality, applied after the matrix is
/// normalised to unit Frobenius norm.
pub const EPS_PSD: f64 = 1e-10;
/// Rates at or below this are treated as absent terms.
pub const EPS_ZERO: f64 = 1e-12;
/// Switch-over band between the two Gram-factorisation branches.
pub const EPS_DEG: f64 = 1e-12;
/// Relative singular-value cutoff for the index `ℓ`.
pub const EPS_RANK: f64 = 1e-10;
/// Width of the band around zero in which the inequality verdict and the
/// eigenvalue oracle are allowed to disagree.
pub const EPS_VERDICT_BAND: f64 = 1e-9;
/// Minimum Choi eigenvalue accepted as positive.
pub const EPS_CHOI: f64 = 1e-8;
/// Slack on `|r(t)| ≤ 1` along a trajectory.
pub const EPS_TRAJ: f64 = 1e-9;
/// Per-step entropy decrease attributed to discretisation.
pub const EPS_ENTROPY: f64 = 1e-9;
/// Relative `|h × n| / |h|` below which `h ∥ n`.
pub const EPS_PAR: f64 = 1e-9;
/// `‖G r‖` accepted for a stationary Bloch vector.
pub const EPS_FIX: f64 = 1e-10;
/// Reconstruction accuracy of the constructive factorisations.
pub const EPS_FACT: f64 = 1e-10;
