//! The five representations of a hermitian-operator qubit dissipator and
//! the conversions between them.
//!
//! * Form A: `D[ρ] = ½ Σ [A_j, [A_j, ρ]]` with hermitian `A_j`.
//! * Form B: `D[ρ] = ½ Σ λ_j (P_j ρ P_j⊥ + P_j⊥ ρ P_j)`, `P_j = ½(𝟙 + n_j·σ)`.
//! * Form C: the Bloch-space matrix `L = ½ Σ λ_j (𝟙₃ − n_j n_jᵀ)`.
//! * Form D: `L_αβ = ½(Λ δ_αβ − q_α·q_β)` with `q_α ∈ ℝ^r`.
//! * Form E: `L = 2 [[a, b, c], [b, α, β], [c, β, γ]]`.
//!
//! A → B → C are direct. C → D → B goes through the symmetric matrix
//! `M = tr(L) 𝟙₃ − 2L`, which is a Gram matrix exactly when the dissipator is
//! completely positive; see [`gram`].

mod gks;
mod gram;

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{self, Mat3, Vec3};
use crate::qubit::{projector_from_axis, ComplexMatrix2, UnitVector3};
use crate::tol::{EPS_HERM, EPS_SYM, EPS_ZERO};
use crate::{Error, Result};

pub use gks::{gks_matrix, gks_minimal, gks_operators, GksMatrix};
pub use gram::{
    b_to_gram, gram_decompose, gram_decompose_with, gram_to_b, l_to_b, l_to_b_with, l_to_m, m_to_l,
    reduce_terms, GramFactor, SymmetricM,
};

/// Anything that can evaluate `D[m]` on a 2×2 operator.
pub trait Dissipator {
    fn apply(&self, m: &ComplexMatrix2) -> ComplexMatrix2;
}

/// Hermitian Lindblad operators.
#[derive(Debug, Clone, PartialEq)]
pub struct FormA {
    operators: Vec<ComplexMatrix2>,
}

impl FormA {
    /// An empty list is accepted and describes the zero dissipator.
    pub fn new(operators: Vec<ComplexMatrix2>) -> Result<Self> {
        for a in &operators {
            let deviation = a.hermiticity_deviation();
            if !(deviation <= EPS_HERM) {
                return Err(Error::NotHermitian { deviation });
            }
        }
        Ok(Self { operators })
    }

    pub fn operators(&self) -> &[ComplexMatrix2] {
        &self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }
}

impl Dissipator for FormA {
    fn apply(&self, m: &ComplexMatrix2) -> ComplexMatrix2 {
        self.operators.iter().fold(ComplexMatrix2::ZERO, |acc, a| {
            acc + a.commutator(&a.commutator(m)).scale_re(0.5)
        })
    }
}

/// One Form-B term: rate `λ > 0` and projector axis `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub lambda: f64,
    pub axis: UnitVector3,
}

impl Term {
    pub fn new(lambda: f64, axis: UnitVector3) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::BadRate { rate: lambda });
        }
        Ok(Self { lambda, axis })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FormB {
    terms: Vec<Term>,
}

impl FormB {
    pub fn new(terms: Vec<Term>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyDissipator);
        }
        Ok(Self { terms })
    }

    /// Builds from `(λ, n)` pairs, validating each.
    pub fn from_pairs(pairs: &[(f64, Vec3)]) -> Result<Self> {
        let terms = pairs
            .iter()
            .map(|&(lambda, n)| Term::new(lambda, UnitVector3::new(n)?))
            .collect::<Result<Vec<_>>>()?;
        Self::new(terms)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Equivalent Form A with traceless operators `½√λ_j n_j·σ`.
    pub fn to_form_a(&self) -> FormA {
        let operators = self
            .terms
            .iter()
            .map(|t| {
                let s = 0.5 * t.lambda.sqrt();
                let n = t.axis.get();
                ComplexMatrix2::from_pauli(
                    Complex64::new(0.0, 0.0),
                    [(s * n[0]).into(), (s * n[1]).into(), (s * n[2]).into()],
                )
            })
            .collect();
        FormA { operators }
    }
}

impl Dissipator for FormB {
    fn apply(&self, m: &ComplexMatrix2) -> ComplexMatrix2 {
        self.terms.iter().fold(ComplexMatrix2::ZERO, |acc, t| {
            let p = projector_from_axis(t.axis);
            let (pm, qm) = (p.matrix(), p.complement().matrix());
            acc + (pm * *m * qm + qm * *m * pm).scale_re(0.5 * t.lambda)
        })
    }
}

/// The real symmetric matrix `L` of `dr/dt = h × r − L r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DissipationMatrix(Mat3);

impl DissipationMatrix {
    pub const ZERO: Self = Self(Mat3::ZERO);

    /// Accepts `l` if symmetric within `ε_sym`; the stored matrix is the
    /// symmetric part.
    pub fn new(l: Mat3) -> Result<Self> {
        let deviation = l.asymmetry();
        if !(deviation <= EPS_SYM) || !l.is_finite() {
            return Err(Error::NotSymmetric { deviation });
        }
        Ok(Self(l.symmetric_part()))
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.0
    }

    /// Smallest eigenvalue is at least `−tol`.
    pub fn is_psd(&self, tol: f64) -> bool {
        linalg::symmetric_eigen(&self.0).0[0] >= -tol
    }
}

impl Dissipator for DissipationMatrix {
    fn apply(&self, m: &ComplexMatrix2) -> ComplexMatrix2 {
        let (_, v) = m.pauli_coefficients();
        ComplexMatrix2::from_pauli(Complex64::new(0.0, 0.0), self.0.mul_cvec(&v))
    }
}

/// Six-parameter packing of `L`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FormE {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl FormE {
    pub fn pack(l: &DissipationMatrix) -> Self {
        let m = l.matrix();
        Self {
            a: 0.5 * m[(0, 0)],
            b: 0.5 * m[(0, 1)],
            c: 0.5 * m[(0, 2)],
            alpha: 0.5 * m[(1, 1)],
            beta: 0.5 * m[(1, 2)],
            gamma: 0.5 * m[(2, 2)],
        }
    }

    pub fn unpack(&self) -> DissipationMatrix {
        DissipationMatrix(
            Mat3([
                [self.a, self.b, self.c],
                [self.b, self.alpha, self.beta],
                [self.c, self.beta, self.gamma],
            ])
            .scaled(2.0),
        )
    }
}

/// Any of the five representations.
#[derive(Debug, Clone, PartialEq)]
pub enum DissipatorForm {
    A(FormA),
    B(FormB),
    C(DissipationMatrix),
    D(GramFactor),
    E(FormE),
}

impl DissipatorForm {
    pub fn dissipation_matrix(&self) -> DissipationMatrix {
        match self {
            Self::A(fa) => match a_to_b(fa) {
                Ok(fb) => b_to_l(&fb),
                Err(_) => DissipationMatrix::ZERO,
            },
            Self::B(fb) => b_to_l(fb),
            Self::C(l) => *l,
            Self::D(g) => g.dissipation_matrix(),
            Self::E(fe) => fe.unpack(),
        }
    }
}

impl Dissipator for DissipatorForm {
    fn apply(&self, m: &ComplexMatrix2) -> ComplexMatrix2 {
        match self {
            Self::A(fa) => fa.apply(m),
            Self::B(fb) => fb.apply(m),
            Self::C(l) => l.apply(m),
            Self::D(_) | Self::E(_) => self.dissipation_matrix().apply(m),
        }
    }
}

/// `A_j = ½(a_j 𝟙 + √λ_j n_j·σ)`; identity parts are discarded and terms with
/// `λ_j ≤ ε_zero` dropped.
pub fn a_to_b(fa: &FormA) -> Result<FormB> {
    let mut terms = Vec::with_capacity(fa.len());
    for a in fa.operators() {
        let (_, c) = a.pauli_coefficients();
        // tr(A σ_α) = 2 c_α
        let v = [2.0 * c[0].re, 2.0 * c[1].re, 2.0 * c[2].re];
        let lambda = linalg::dot(&v, &v);
        if lambda <= EPS_ZERO {
            continue;
        }
        terms.push(Term { lambda, axis: UnitVector3::normalize(v)? });
    }
    FormB::new(terms)
}

/// `L = ½ Σ λ_j (𝟙₃ − n_j n_jᵀ)`.
pub fn b_to_l(fb: &FormB) -> DissipationMatrix {
    let l = fb.terms().iter().fold(Mat3::ZERO, |acc, t| {
        let n = t.axis.get();
        acc + (Mat3::IDENTITY - Mat3::outer(&n, &n)).scaled(0.5 * t.lambda)
    });
    DissipationMatrix(l)
}

/// General Lindblad form `½ Σ (A†A m + m A†A − 2 A m A†)` for arbitrary
/// (not necessarily hermitian) operators.
pub fn lindblad_apply(operators: &[ComplexMatrix2], m: &ComplexMatrix2) -> ComplexMatrix2 {
    operators.iter().fold(ComplexMatrix2::ZERO, |acc, a| {
        let ad = a.dagger();
        let ada = ad * *a;
        acc + (ada * *m + *m * ada - (*a * *m * ad).scale_re(2.0)).scale_re(0.5)
    })
}

/// `A = B + s 𝟙` with `tr B = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceSplit {
    pub traceless: ComplexMatrix2,
    pub scalar: Complex64,
}

pub fn trace_split(a: &ComplexMatrix2) -> TraceSplit {
    let scalar = a.trace() * 0.5;
    TraceSplit { traceless: *a - ComplexMatrix2::IDENTITY.scale(scalar), scalar }
}

/// `ΔH = (i/2) Σ (s_j B_j† − s_j* B_j)`, the part of a Lindblad term that acts
/// as an extra Hamiltonian.
pub fn delta_hamiltonian(splits: &[TraceSplit]) -> ComplexMatrix2 {
    let half_i = Complex64::new(0.0, 0.5);
    splits.iter().fold(ComplexMatrix2::ZERO, |acc, sp| {
        let x = sp.traceless.dagger().scale(sp.scalar) - sp.traceless.scale(sp.scalar.conj());
        acc + x.scale(half_i)
    })
}
