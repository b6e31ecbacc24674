//! Gorini–Kossakowski–Sudarshan coefficients in the basis `F_k = σ_k/√2`.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::{trace_split, FormA};
use crate::linalg::{self, Mat3};
use crate::qubit::ComplexMatrix2;
use crate::tol::{EPS_HERM, EPS_PSD, EPS_ZERO};
use crate::{Error, Result};

/// Coefficient matrix `c_kl = Σ_j C_kj C_lj*`, hermitian and PSD.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GksMatrix(pub [[Complex64; 3]; 3]);

impl GksMatrix {
    pub fn entries(&self) -> &[[Complex64; 3]; 3] {
        &self.0
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    pub fn max_imag(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |acc, z| acc.max(z.im.abs()))
    }

    pub fn real_part(&self) -> Mat3 {
        let mut m = Mat3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                m[(i, j)] = self.0[i][j].re;
            }
        }
        m
    }
}

fn basis(k: usize) -> ComplexMatrix2 {
    ComplexMatrix2::PAULI[k].scale_re(core::f64::consts::FRAC_1_SQRT_2)
}

/// GKS matrix of arbitrary Lindblad operators (their traceless parts).
pub fn gks_matrix(operators: &[ComplexMatrix2]) -> GksMatrix {
    // C_kj = tr(F_k† B_j)
    let coeffs: Vec<[Complex64; 3]> = operators
        .iter()
        .map(|a| {
            let b = trace_split(a).traceless;
            let mut col = [Complex64::new(0.0, 0.0); 3];
            for (k, ck) in col.iter_mut().enumerate() {
                *ck = (basis(k).dagger() * b).trace();
            }
            col
        })
        .collect();
    let mut c = [[Complex64::new(0.0, 0.0); 3]; 3];
    for col in &coeffs {
        for k in 0..3 {
            for l in 0..3 {
                c[k][l] += col[k] * col[l].conj();
            }
        }
    }
    GksMatrix(c)
}

fn psd_guard(min_eigenvalue: f64, scale: f64) -> Result<()> {
    if min_eigenvalue < -EPS_PSD * scale.max(1.0) {
        return Err(Error::NotPsd { min_eigenvalue });
    }
    Ok(())
}

/// `B_j = Σ_k U_kj √ĉ_j F_k` for every eigenvalue `ĉ_j > ε_zero` of `c`;
/// operators may be non-hermitian when `c` is complex.
pub fn gks_operators(c: &GksMatrix) -> Result<Vec<ComplexMatrix2>> {
    let (vals, u) = linalg::hermitian_eigen(&c.0);
    psd_guard(vals[0], c.max_abs())?;
    let ops = (0..3)
        .filter(|&j| vals[j] > EPS_ZERO)
        .map(|j| {
            let w = vals[j].sqrt();
            (0..3).fold(ComplexMatrix2::ZERO, |acc, k| acc + basis(k).scale(u[k][j] * w))
        })
        .collect();
    Ok(ops)
}

/// At most three hermitian Lindblad operators reproducing a real GKS matrix.
pub fn gks_minimal(c: &GksMatrix) -> Result<FormA> {
    let scale = c.max_abs();
    if c.max_imag() > EPS_HERM * scale.max(1.0) {
        return Err(Error::ComplexGks);
    }
    let (vals, u) = linalg::symmetric_eigen(&c.real_part());
    psd_guard(vals[0], scale)?;
    let ops = (0..3)
        .filter(|&j| vals[j] > EPS_ZERO)
        .map(|j| {
            let w = vals[j].sqrt();
            (0..3).fold(ComplexMatrix2::ZERO, |acc, k| acc + basis(k).scale_re(u[(k, j)] * w))
        })
        .collect();
    FormA::new(ops)
}
