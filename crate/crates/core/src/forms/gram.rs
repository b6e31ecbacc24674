use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::{DissipationMatrix, FormB, Term};
use crate::cpcheck;
use crate::linalg::{self, Mat3, Vec3};
use crate::qubit::UnitVector3;
use crate::tol::{EPS_DEG, EPS_PSD, EPS_RANK, EPS_SYM, EPS_ZERO};
use crate::{Error, Result};

/// Form D: three vectors `q_α ∈ ℝ^r` and `Λ = Σ |q_α|²`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramFactor {
    q: [Vec<f64>; 3],
    lambda: f64,
}

impl GramFactor {
    pub fn new(q: [Vec<f64>; 3]) -> Result<Self> {
        let (r1, r2, r3) = (q[0].len(), q[1].len(), q[2].len());
        if r1 != r2 || r2 != r3 {
            return Err(Error::RaggedGram(r1, r2, r3));
        }
        let lambda = q.iter().flatten().map(|x| x * x).sum();
        Ok(Self { q, lambda })
    }

    pub fn from_columns(q: [Vec3; 3]) -> Self {
        let lambda = q.iter().flatten().map(|x| x * x).sum();
        Self { q: [q[0].to_vec(), q[1].to_vec(), q[2].to_vec()], lambda }
    }

    pub fn vectors(&self) -> &[Vec<f64>; 3] {
        &self.q
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Length `r` of each vector.
    pub fn rank_bound(&self) -> usize {
        self.q[0].len()
    }

    /// `(q_α · q_β)`.
    pub fn gram_matrix(&self) -> SymmetricM {
        let mut m = Mat3::ZERO;
        for a in 0..3 {
            for b in 0..3 {
                m[(a, b)] = self.q[a].iter().zip(&self.q[b]).map(|(x, y)| x * y).sum();
            }
        }
        SymmetricM(m)
    }

    /// `L_αβ = ½(Λ δ_αβ − q_α·q_β)`.
    pub fn dissipation_matrix(&self) -> DissipationMatrix {
        let g = self.gram_matrix().0;
        DissipationMatrix((Mat3::IDENTITY.scaled(self.lambda) - g).scaled(0.5))
    }
}

/// The symmetric matrix `M` with `L = ½(tr M 𝟙₃ − M)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricM(pub(crate) Mat3);

impl SymmetricM {
    pub fn new(m: Mat3) -> Result<Self> {
        let deviation = m.asymmetry();
        if !(deviation <= EPS_SYM) || !m.is_finite() {
            return Err(Error::NotSymmetric { deviation });
        }
        Ok(Self(m.symmetric_part()))
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.0
    }
}

pub fn l_to_m(l: &DissipationMatrix) -> SymmetricM {
    let l = l.matrix();
    SymmetricM(Mat3::IDENTITY.scaled(l.trace()) - l.scaled(2.0))
}

pub fn m_to_l(m: &SymmetricM) -> DissipationMatrix {
    DissipationMatrix((Mat3::IDENTITY.scaled(m.0.trace()) - m.0).scaled(0.5))
}

/// Factors `M = (q_α · q_β)` with `q_α ∈ ℝ³`.
///
/// The largest diagonal entry is moved to the pivot position and, of the
/// other two, the one with the larger Schur complement takes the second slot.
/// When the leading 2×2 minor still vanishes (to within `ε_deg`) the second
/// vector is parallel to the first and the third vector takes the second
/// slot. Pivot residuals below `ε_rank` times the largest diagonal entry are
/// set to zero so that rank-deficient inputs give exactly zero rows.
pub fn gram_decompose(m: &SymmetricM) -> Result<[Vec3; 3]> {
    gram_decompose_with(m, EPS_PSD)
}

/// [`gram_decompose`] with an explicit slack on the CP conditions.
pub fn gram_decompose_with(m: &SymmetricM, eps_psd: f64) -> Result<[Vec3; 3]> {
    if let Some(v) = cpcheck::principal_minor_violation(&m.0, eps_psd) {
        return Err(Error::NotCp(v.to_string()));
    }
    let full = &m.0;
    let pivot = (0..3).fold(0, |best, i| if full[(i, i)] > full[(best, best)] { i } else { best });
    let (mut s, mut t) = match pivot {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let mpp = full[(pivot, pivot)];
    if mpp > 0.0 {
        let schur = |i: usize| full[(i, i)] - full[(pivot, i)] * full[(pivot, i)] / mpp;
        if schur(t) > schur(s) {
            core::mem::swap(&mut s, &mut t);
        }
    }
    let order = [pivot, s, t];
    let at = |i: usize, j: usize| full[(order[i], order[j])];
    let (m11, m22, m33) = (at(0, 0), at(1, 1), at(2, 2));
    let (m12, m13, m23) = (at(0, 1), at(0, 2), at(1, 2));

    let mut permuted = [[0.0; 3]; 3];
    if m11 > 0.0 {
        let cutoff = EPS_RANK * m11;
        let r11 = m11.sqrt();
        let minor = m11 * m22 - m12 * m12;
        if minor > EPS_DEG * m11 * m22.max(1.0) {
            let s2 = (m22 - m12 * m12 / m11).sqrt();
            let x3 = m13 / r11;
            let y3 = (m23 - m12 * m13 / m11) / s2;
            let mut z3sq = m33 - x3 * x3 - y3 * y3;
            if z3sq <= cutoff {
                z3sq = 0.0;
            }
            permuted[0] = [r11, 0.0, 0.0];
            permuted[1] = [m12 / r11, s2, 0.0];
            permuted[2] = [x3, y3, z3sq.max(0.0).sqrt()];
        } else {
            let eta = if m12 < 0.0 { -1.0 } else { 1.0 };
            let x3 = m13 / r11;
            let mut y3sq = m33 - x3 * x3;
            if y3sq <= cutoff {
                y3sq = 0.0;
            }
            permuted[0] = [r11, 0.0, 0.0];
            permuted[1] = [eta * m22.max(0.0).sqrt(), 0.0, 0.0];
            permuted[2] = [x3, y3sq.max(0.0).sqrt(), 0.0];
        }
    }
    let mut q = [[0.0; 3]; 3];
    for (slot, &orig) in order.iter().enumerate() {
        q[orig] = permuted[slot];
    }
    Ok(q)
}

/// Recovers Form B from Form D: `λ_j = Σ_α (q_α)_j²`, `n_j ∝ ((q_1)_j, (q_2)_j, (q_3)_j)`.
pub fn gram_to_b(g: &GramFactor) -> Result<FormB> {
    let q = g.vectors();
    let mut terms = Vec::new();
    for j in 0..g.rank_bound() {
        let v = [q[0][j], q[1][j], q[2][j]];
        let lambda = linalg::dot(&v, &v);
        if lambda <= EPS_ZERO {
            continue;
        }
        terms.push(Term { lambda, axis: UnitVector3::normalize(v)? });
    }
    FormB::new(terms)
}

/// `(q_α)_j = √λ_j (n_j)_α`.
pub fn b_to_gram(fb: &FormB) -> GramFactor {
    let r = fb.len();
    let mut q = [vec![0.0; r], vec![0.0; r], vec![0.0; r]];
    for (j, t) in fb.terms().iter().enumerate() {
        let s = t.lambda.sqrt();
        let n = t.axis.get();
        for a in 0..3 {
            q[a][j] = s * n[a];
        }
    }
    let lambda = fb.terms().iter().map(|t| t.lambda).sum();
    GramFactor { q, lambda }
}

/// Rewrites any Form B with the minimal number of terms. Returns the new
/// form and the index `ℓ`, the rank of the Gram matrix of the input.
///
/// ```
/// use lindblad2_core::cpcheck::is_completely_positive;
/// use lindblad2_core::forms::{b_to_l, reduce_terms};
/// use lindblad2_core::FormB;
///
/// let fb = FormB::from_pairs(&[(1.0, [0.0, 0.0, 1.0]), (3.0, [0.0, 0.0, -1.0])])?;
/// let (minimal, ell) = reduce_terms(&fb)?;
/// assert_eq!((minimal.len(), ell), (1, 1));
/// assert!((minimal.terms()[0].lambda - 4.0).abs() < 1e-12);
/// assert!(is_completely_positive(&b_to_l(&fb))?.is_cp());
/// # Ok::<(), lindblad2_core::Error>(())
/// ```
pub fn reduce_terms(fb: &FormB) -> Result<(FormB, usize)> {
    let m = b_to_gram(fb).gram_matrix();
    let ell = linalg::symmetric_rank(&m.0, EPS_RANK);
    let q = gram_decompose(&m)?;
    let reduced = gram_to_b(&GramFactor::from_columns(q))?;
    Ok((reduced, ell))
}

/// Form B for a completely positive `L`, with its index `ℓ`.
pub fn l_to_b(l: &DissipationMatrix) -> Result<(FormB, usize)> {
    l_to_b_with(l, EPS_PSD)
}

pub fn l_to_b_with(l: &DissipationMatrix, eps_psd: f64) -> Result<(FormB, usize)> {
    let m = l_to_m(l);
    let q = gram_decompose_with(&m, eps_psd)?;
    let fb = gram_to_b(&GramFactor::from_columns(q))?;
    let ell = linalg::symmetric_rank(&m.0, EPS_RANK);
    Ok((fb, ell))
}
