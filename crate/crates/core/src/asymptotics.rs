//! The `t → ∞` limit of the evolution.
//!
//! With two or three independent projector axes every state relaxes to `½𝟙`.
//! With a single axis `n` the same holds unless `h ∥ n`; then only the
//! transverse Bloch components decay and `ρ → PρP + P⊥ρP⊥`.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::dynamics::{
    build_generator, evolve_expm, generator_spectrum, spectral_gap, Generator,
};
use crate::forms::{b_to_l, reduce_terms, FormB};
use crate::linalg::{self, Vec3};
use crate::qubit::{density_from_bloch, DensityState, Hamiltonian, UnitVector3};
use crate::tol::{EPS_FIX, EPS_PAR};
use crate::{Error, Result};

/// Shape of the asymptotic state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AsymptoticKind {
    MaximallyMixed,
    DecoheredInP(UnitVector3),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticVerdict {
    pub kind: AsymptoticKind,
    /// Index `ℓ` of the dissipator.
    pub ell: usize,
    /// `h ∥ n` (only meaningful for `ℓ = 1`; `false` otherwise).
    pub commuting: bool,
    pub generator: Generator,
    pub eigenvalues: [Complex64; 3],
    /// Decay rate of the slowest non-stationary mode.
    pub spectral_gap: f64,
}

impl AsymptoticVerdict {
    pub fn limit(&self, rho0: &DensityState) -> DensityState {
        asymptotic_state(self, rho0)
    }
}

pub fn classify(h: &Hamiltonian, fb: &FormB) -> Result<AsymptoticVerdict> {
    let (minimal, ell) = reduce_terms(fb)?;
    let generator = build_generator(h, &b_to_l(fb));
    let eigenvalues = generator_spectrum(&generator);
    let spectral_gap = spectral_gap(&eigenvalues, &generator);

    let (kind, commuting) = if ell == 1 {
        let axis = minimal.terms()[0].axis;
        let h_len = linalg::norm(&h.h);
        let off_axis = linalg::norm(&linalg::cross(&h.h, &axis.get()));
        if h_len == 0.0 || off_axis <= EPS_PAR * h_len {
            (AsymptoticKind::DecoheredInP(axis), true)
        } else {
            (AsymptoticKind::MaximallyMixed, false)
        }
    } else {
        (AsymptoticKind::MaximallyMixed, false)
    };
    Ok(AsymptoticVerdict { kind, ell, commuting, generator, eigenvalues, spectral_gap })
}

pub fn asymptotic_state(v: &AsymptoticVerdict, rho0: &DensityState) -> DensityState {
    match v.kind {
        AsymptoticKind::MaximallyMixed => DensityState::maximally_mixed(),
        AsymptoticKind::DecoheredInP(n) => {
            let n = n.get();
            let r = linalg::scale(linalg::dot(&rho0.bloch(), &n), &n);
            // Projection onto an axis never leaves the ball.
            density_from_bloch(r).unwrap_or_else(|_| DensityState::maximally_mixed())
        }
    }
}

/// The set of states with `dρ/dt = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FixedPointSet {
    /// Only `½𝟙`.
    Unique,
    /// `r = s n` for `s ∈ [−1, 1]`, i.e. `μP + (1 − μ)P⊥`.
    Segment(UnitVector3),
}

impl FixedPointSet {
    /// Representative states: the single point, or the two segment ends and
    /// its midpoint.
    pub fn representatives(&self) -> alloc::vec::Vec<Vec3> {
        match *self {
            Self::Unique => alloc::vec![[0.0; 3]],
            Self::Segment(n) => {
                let n = n.get();
                alloc::vec![linalg::scale(-1.0, &n), [0.0; 3], n]
            }
        }
    }
}

pub fn fixed_points(h: &Hamiltonian, fb: &FormB) -> Result<FixedPointSet> {
    let v = classify(h, fb)?;
    let set = match v.kind {
        AsymptoticKind::MaximallyMixed => FixedPointSet::Unique,
        AsymptoticKind::DecoheredInP(n) => FixedPointSet::Segment(n),
    };
    let scale = v.generator.matrix().frobenius().max(1.0);
    for r in set.representatives() {
        let residual = linalg::norm(&v.generator.apply(&r));
        debug_assert!(residual <= EPS_FIX * scale, "stationary residual {residual}");
    }
    Ok(set)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoteReport {
    pub horizon: f64,
    pub final_bloch: Vec3,
    pub limit_bloch: Vec3,
    pub distance: f64,
    pub spectral_gap: f64,
    /// `2 e^{−gT}` plus a round-off floor.
    pub bound: f64,
    pub within_bound: bool,
    pub within_tol: bool,
}

/// Horizon long enough for `e^{−gT}` to fall below double precision.
pub fn default_horizon(gap: f64) -> f64 {
    if gap > 0.0 {
        (40.0 / gap).max(10.0)
    } else {
        10.0
    }
}

const BOUND_PREFACTOR: f64 = 2.0;
const BOUND_FLOOR: f64 = 1e-14;

pub fn verify_asymptote(
    h: &Hamiltonian,
    fb: &FormB,
    rho0: &DensityState,
    horizon: f64,
    tol: f64,
) -> Result<AsymptoteReport> {
    if !(horizon > 0.0) {
        return Err(Error::NegativeHorizon(horizon));
    }
    let v = classify(h, fb)?;
    let final_bloch = evolve_expm(&v.generator, &rho0.bloch(), horizon)?;
    let limit_bloch = asymptotic_state(&v, rho0).bloch();
    let distance = linalg::distance(&final_bloch, &limit_bloch);
    let bound = BOUND_PREFACTOR * (-v.spectral_gap * horizon).exp() + BOUND_FLOOR;
    Ok(AsymptoteReport {
        horizon,
        final_bloch,
        limit_bloch,
        distance,
        spectral_gap: v.spectral_gap,
        bound,
        within_bound: distance <= bound,
        within_tol: distance <= tol,
    })
}
