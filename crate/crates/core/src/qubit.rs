//! Qubit states and operators, and the maps between the 2×2 matrix picture
//! and the Bloch-vector picture.

use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{self, Vec3};
use crate::tol::{EPS_HERM, EPS_POS, EPS_TRACE, EPS_UNIT};
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A 2×2 complex matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexMatrix2(pub [[Complex64; 2]; 2]);

impl ComplexMatrix2 {
    pub const ZERO: Self = Self([[ZERO, ZERO], [ZERO, ZERO]]);
    pub const IDENTITY: Self = Self([[ONE, ZERO], [ZERO, ONE]]);
    pub const SIGMA_X: Self = Self([[ZERO, ONE], [ONE, ZERO]]);
    pub const SIGMA_Y: Self = Self([[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]]);
    pub const SIGMA_Z: Self = Self([[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]]);
    pub const PAULI: [Self; 3] = [Self::SIGMA_X, Self::SIGMA_Y, Self::SIGMA_Z];

    pub fn new(m00: Complex64, m01: Complex64, m10: Complex64, m11: Complex64) -> Self {
        Self([[m00, m01], [m10, m11]])
    }

    pub fn real(m: [[f64; 2]; 2]) -> Self {
        Self::new(m[0][0].into(), m[0][1].into(), m[1][0].into(), m[1][1].into())
    }

    /// `c₀ 𝟙 + c·σ` for complex coefficients.
    pub fn from_pauli(c0: Complex64, c: [Complex64; 3]) -> Self {
        Self::new(c0 + c[2], c[0] - I * c[1], c[0] + I * c[1], c0 - c[2])
    }

    /// Inverse of [`from_pauli`](Self::from_pauli): `(tr m / 2, tr(m σ_α) / 2)`.
    pub fn pauli_coefficients(&self) -> (Complex64, [Complex64; 3]) {
        let m = &self.0;
        let c0 = (m[0][0] + m[1][1]) * 0.5;
        let cx = (m[0][1] + m[1][0]) * 0.5;
        let cy = (m[1][0] - m[0][1]) * (I * -0.5);
        let cz = (m[0][0] - m[1][1]) * 0.5;
        (c0, [cx, cy, cz])
    }

    pub fn dagger(&self) -> Self {
        let m = &self.0;
        Self::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let m = &self.0;
        Self::new(m[0][0] * s, m[0][1] * s, m[1][0] * s, m[1][1] * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    /// `max |m − m†|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        (*self - self.dagger()).max_abs()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Add for ComplexMatrix2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        Self::new(a[0][0] + b[0][0], a[0][1] + b[0][1], a[1][0] + b[1][0], a[1][1] + b[1][1])
    }
}

impl Sub for ComplexMatrix2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for ComplexMatrix2 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale_re(-1.0)
    }
}

impl Mul for ComplexMatrix2 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

/// `½(𝟙 + r·σ)`.
fn half_identity_plus(r: &Vec3) -> ComplexMatrix2 {
    ComplexMatrix2::from_pauli(
        Complex64::new(0.5, 0.0),
        [(0.5 * r[0]).into(), (0.5 * r[1]).into(), (0.5 * r[2]).into()],
    )
}

/// A qubit density matrix together with its Bloch vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityState {
    matrix: ComplexMatrix2,
    bloch: Vec3,
}

impl DensityState {
    pub fn maximally_mixed() -> Self {
        Self { matrix: half_identity_plus(&[0.0; 3]), bloch: [0.0; 3] }
    }

    pub fn matrix(&self) -> &ComplexMatrix2 {
        &self.matrix
    }

    pub fn bloch(&self) -> Vec3 {
        self.bloch
    }

    /// Eigenvalues `(1 ± |r|)/2`, clamped to `[0, 1]`, larger first.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let len = linalg::norm(&self.bloch).min(1.0);
        [0.5 * (1.0 + len), 0.5 * (1.0 - len)]
    }

    pub fn entropy(&self) -> f64 {
        von_neumann_entropy(self)
    }
}

pub fn density_from_bloch(r: Vec3) -> Result<DensityState> {
    let len = linalg::norm(&r);
    if !(len <= 1.0 + EPS_POS) {
        return Err(Error::BlochOutOfBall { norm: len });
    }
    Ok(DensityState { matrix: half_identity_plus(&r), bloch: r })
}

pub fn bloch_from_density(m: &ComplexMatrix2) -> Result<Vec3> {
    let deviation = m.hermiticity_deviation();
    if !(deviation <= EPS_HERM) {
        return Err(Error::NotHermitian { deviation });
    }
    let tr = m.trace();
    if !((tr - ONE).norm() <= EPS_TRACE) {
        return Err(Error::BadTrace { trace: tr.re });
    }
    let (_, c) = m.pauli_coefficients();
    Ok([2.0 * c[0].re, 2.0 * c[1].re, 2.0 * c[2].re])
}

/// Validates a density matrix and pairs it with its Bloch vector.
pub fn density_from_matrix(m: &ComplexMatrix2) -> Result<DensityState> {
    let r = bloch_from_density(m)?;
    density_from_bloch(r)
}

/// `S = −Σ λ ln λ` in nats, with `0 ln 0 = 0`.
pub fn von_neumann_entropy(s: &DensityState) -> f64 {
    entropy_of_bloch_length(linalg::norm(&s.bloch))
}

pub(crate) fn entropy_of_bloch_length(len: f64) -> f64 {
    let len = len.clamp(0.0, 1.0);
    let xlnx = |x: f64| if x <= 0.0 { 0.0 } else { x * x.ln() };
    -(xlnx(0.5 * (1.0 + len)) + xlnx(0.5 * (1.0 - len)))
}

/// `H = ½(h₀ 𝟙 + h·σ)`; only `h` enters the dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Hamiltonian {
    pub h: Vec3,
    pub h0: f64,
}

impl Hamiltonian {
    pub fn new(h: Vec3) -> Self {
        Self { h, h0: 0.0 }
    }

    pub fn with_identity(h: Vec3, h0: f64) -> Self {
        Self { h, h0 }
    }

    pub fn matrix(&self) -> ComplexMatrix2 {
        ComplexMatrix2::from_pauli(
            (0.5 * self.h0).into(),
            [(0.5 * self.h[0]).into(), (0.5 * self.h[1]).into(), (0.5 * self.h[2]).into()],
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVector3(Vec3);

impl UnitVector3 {
    pub const X: Self = Self([1.0, 0.0, 0.0]);
    pub const Y: Self = Self([0.0, 1.0, 0.0]);
    pub const Z: Self = Self([0.0, 0.0, 1.0]);

    /// Accepts `n` if `| |n| − 1 | ≤ ε_unit`; the stored vector is renormalised.
    pub fn new(n: Vec3) -> Result<Self> {
        let len = linalg::norm(&n);
        if !((len - 1.0).abs() <= EPS_UNIT) {
            return Err(Error::NotUnit { norm: len });
        }
        Ok(Self(linalg::scale(1.0 / len, &n)))
    }

    /// Direction of a non-zero vector.
    pub fn normalize(v: Vec3) -> Result<Self> {
        let len = linalg::norm(&v);
        if !(len > 0.0 && len.is_finite()) {
            return Err(Error::NotUnit { norm: len });
        }
        Ok(Self(linalg::scale(1.0 / len, &v)))
    }

    pub fn get(&self) -> Vec3 {
        self.0
    }
}

/// `P = ½(𝟙 + n·σ)`, or its complement `𝟙 − P` when `complement` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projector2 {
    pub axis: UnitVector3,
    pub complement: bool,
}

impl Projector2 {
    pub fn matrix(&self) -> ComplexMatrix2 {
        let n = self.axis.get();
        let sign = if self.complement { -1.0 } else { 1.0 };
        half_identity_plus(&linalg::scale(sign, &n))
    }

    pub fn complement(&self) -> Self {
        Self { axis: self.axis, complement: !self.complement }
    }
}

pub fn projector_from_axis(n: UnitVector3) -> Projector2 {
    Projector2 { axis: n, complement: false }
}
