//! Complete positivity of a dissipation matrix `L`.
//!
//! Two inequality systems decide it: the six-parameter conditions on Form E,
//! and the principal minors of `M = tr(L) 𝟙₃ − 2L`. They are the same
//! statement (`M` is PSD), so [`is_completely_positive`] runs both and treats
//! disagreement as a bug. The minimum eigenvalue of `M` serves as a third,
//! independent oracle, and [`choi_check`] tests the evolution map itself.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::dynamics::{build_generator, propagator};
use crate::forms::{l_to_b_with, l_to_m, DissipationMatrix, FormB, FormE, SymmetricM};
use crate::linalg::{self, Mat3};
use crate::qubit::{ComplexMatrix2, Hamiltonian};
use crate::tol::{EPS_PSD, EPS_VERDICT_BAND};
use crate::{Error, Result};

/// The inequality that failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// Form E (a): `R`, `S` or `T` negative (index 0, 1, 2).
    EA(usize),
    /// Form E (b): `RS ≥ b²` (0), `RT ≥ c²` (1), `ST ≥ β²` (2).
    EB(usize),
    /// Form E (c).
    EC,
    /// (i) `M_αα ≥ 0`.
    MDiagonal(usize),
    /// (ii) `M_αα M_ββ ≥ M_αβ²`.
    MPair(usize, usize),
    /// (iii) `det M ≥ 0`.
    MDet,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::EA(k) => write!(f, "(a) {} < 0", ["R", "S", "T"][k]),
            Self::EB(k) => write!(f, "(b) {}", ["RS < b²", "RT < c²", "ST < β²"][k]),
            Self::EC => write!(f, "(c) RST < 2bcβ + Rβ² + Sc² + Tb²"),
            Self::MDiagonal(a) => write!(f, "(i) M{0}{0} < 0", a + 1),
            Self::MPair(a, b) => {
                write!(f, "(ii) M{0}{0}·M{1}{1} < M{0}{1}²", a + 1, b + 1)
            }
            Self::MDet => write!(f, "(iii) det M < 0"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub condition: Condition,
    /// The failed minor after normalisation, divided by a positive
    /// lower-order minor; negative.
    pub margin: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (margin {:e})", self.condition, self.margin)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CpVerdict {
    Cp,
    NotCp(Violation),
}

impl CpVerdict {
    pub fn is_cp(&self) -> bool {
        matches!(self, Self::Cp)
    }

    fn from_violation(v: Option<Violation>) -> Self {
        v.map_or(Self::Cp, Self::NotCp)
    }
}

/// Which principal minor of a 3×3 matrix failed.
#[derive(Clone, Copy)]
enum Minor {
    Diagonal(usize),
    Pair(usize, usize),
    Det,
}

/// First principal minor of `n / ‖n‖_F` that is negative beyond `eps`.
///
/// Each minor is divided by a positive lower-order one before the
/// comparison: pairs by the larger of their diagonal entries, the
/// determinant by pivoted elimination (`det = d₁ d₂ d₃`, `d₃` compared).
/// The sign is that of the minor; the scale is that of an eigenvalue.
fn minor_violation(n: &Mat3, eps: f64) -> Option<(Minor, f64)> {
    let norm = n.frobenius();
    if norm == 0.0 {
        return None;
    }
    let n = n.scaled(1.0 / norm);
    if let Some(i) = (0..3).find(|&i| !(n[(i, i)] >= -eps)) {
        return Some((Minor::Diagonal(i), n[(i, i)]));
    }
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        let scale = n[(a, a)].max(n[(b, b)]).max(eps);
        let margin = (n[(a, a)] * n[(b, b)] - n[(a, b)] * n[(a, b)]) / scale;
        if !(margin >= -eps) {
            return Some((Minor::Pair(a, b), margin));
        }
    }
    let p = (0..3).fold(0, |best, i| if n[(i, i)] > n[(best, best)] { i } else { best });
    let d1 = n[(p, p)];
    if d1 <= eps {
        return None;
    }
    let (a, b) = match p {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let schur = |i: usize, j: usize| n[(i, j)] - n[(p, i)] * n[(p, j)] / d1;
    let (sa, sb, sab) = (schur(a, a), schur(b, b), schur(a, b));
    let (sq, sr) = if sb > sa { (sb, sa) } else { (sa, sb) };
    let d3 = if sq <= eps { (sq * sr - sab * sab) / eps } else { sr - sab * sab / sq };
    if !(d3 >= -eps) {
        return Some((Minor::Det, d3));
    }
    None
}

/// Inequalities (a), (b), (c) on the Form-E parameters.
pub fn check_form_e(fe: &FormE) -> CpVerdict {
    check_form_e_with(fe, EPS_PSD)
}

/// (a)–(c) are the principal minors of
/// `[[R, −b, −c], [−b, S, −β], [−c, −β, T]]`.
pub fn check_form_e_with(fe: &FormE, eps: f64) -> CpVerdict {
    let (a, b, c) = (fe.a, fe.b, fe.c);
    let (alpha, beta, gamma) = (fe.alpha, fe.beta, fe.gamma);
    let r = 0.5 * (alpha + gamma - a);
    let s = 0.5 * (a + gamma - alpha);
    let t = 0.5 * (a + alpha - gamma);
    let n = Mat3([[r, -b, -c], [-b, s, -beta], [-c, -beta, t]]);
    CpVerdict::from_violation(minor_violation(&n, eps).map(|(minor, margin)| {
        let condition = match minor {
            Minor::Diagonal(k) => Condition::EA(k),
            Minor::Pair(0, 1) => Condition::EB(0),
            Minor::Pair(0, _) => Condition::EB(1),
            Minor::Pair(..) => Condition::EB(2),
            Minor::Det => Condition::EC,
        };
        Violation { condition, margin }
    }))
}

/// First failing principal-minor condition of `m / ‖m‖_F`, if any.
pub fn principal_minor_violation(m: &Mat3, eps: f64) -> Option<Violation> {
    minor_violation(m, eps).map(|(minor, margin)| {
        let condition = match minor {
            Minor::Diagonal(k) => Condition::MDiagonal(k),
            Minor::Pair(a, b) => Condition::MPair(a, b),
            Minor::Det => Condition::MDet,
        };
        Violation { condition, margin }
    })
}

/// Minimum eigenvalue of `m / ‖m‖_F` (zero for `m = 0`).
pub fn normalized_min_eigenvalue(m: &Mat3) -> f64 {
    let norm = m.frobenius();
    if norm == 0.0 {
        return 0.0;
    }
    linalg::symmetric_eigen(&m.scaled(1.0 / norm)).0[0]
}

/// Conditions (i)–(iii) on `M`, cross-checked against its minimum eigenvalue.
pub fn check_m_psd(m: &SymmetricM) -> Result<CpVerdict> {
    check_m_psd_with(m, EPS_PSD)
}

pub fn check_m_psd_with(m: &SymmetricM, eps: f64) -> Result<CpVerdict> {
    let verdict = CpVerdict::from_violation(principal_minor_violation(m.matrix(), eps));
    let min_eig = normalized_min_eigenvalue(m.matrix());
    let oracle_cp = min_eig >= -eps;
    if verdict.is_cp() != oracle_cp && min_eig.abs() > EPS_VERDICT_BAND {
        return Err(Error::VerdictMismatch(format!(
            "principal minors say {}, min eigenvalue of M is {:e}",
            if verdict.is_cp() { "CP" } else { "not CP" },
            min_eig
        )));
    }
    Ok(verdict)
}

/// Outcome of [`is_completely_positive`].
#[derive(Debug, Clone, PartialEq)]
pub struct CpReport {
    /// Principal-minor verdict on `M`.
    pub verdict: CpVerdict,
    /// Form-E verdict.
    pub form_e: CpVerdict,
    /// Minimum eigenvalue of the normalised `M`.
    pub min_eigenvalue: f64,
    /// Projector decomposition and index `ℓ`; `None` when not CP or `L = 0`.
    pub certificate: Option<(FormB, usize)>,
}

impl CpReport {
    pub fn is_cp(&self) -> bool {
        self.verdict.is_cp()
    }
}

pub fn is_completely_positive(l: &DissipationMatrix) -> Result<CpReport> {
    is_completely_positive_with(l, EPS_PSD)
}

pub fn is_completely_positive_with(l: &DissipationMatrix, eps: f64) -> Result<CpReport> {
    let form_e = check_form_e_with(&FormE::pack(l), eps);
    let m = l_to_m(l);
    let verdict = check_m_psd_with(&m, eps)?;
    let min_eigenvalue = normalized_min_eigenvalue(m.matrix());
    if form_e.is_cp() != verdict.is_cp() && min_eigenvalue.abs() > EPS_VERDICT_BAND {
        return Err(Error::VerdictMismatch(format!(
            "form E says {:?}, principal minors say {:?}",
            form_e, verdict
        )));
    }
    let certificate = if verdict.is_cp() {
        match l_to_b_with(l, eps) {
            Ok(c) => Some(c),
            Err(Error::EmptyDissipator) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    Ok(CpReport { verdict, form_e, min_eigenvalue, certificate })
}

/// `γ_t(X)` for an arbitrary 2×2 matrix, using the exact propagator on the
/// Pauli coefficients.
pub fn evolve_operator(propagator: &Mat3, x: &ComplexMatrix2) -> ComplexMatrix2 {
    let (c0, v) = x.pauli_coefficients();
    ComplexMatrix2::from_pauli(c0, propagator.mul_cvec(&v))
}

/// Choi matrix `Σ_ij E_ij ⊗ γ(E_ij)` of the map with the given propagator.
pub fn choi_matrix(propagator: &Mat3) -> [[Complex64; 4]; 4] {
    let mut choi = [[Complex64::new(0.0, 0.0); 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            let mut unit = ComplexMatrix2::ZERO;
            unit.0[i][j] = Complex64::new(1.0, 0.0);
            let image = evolve_operator(propagator, &unit);
            for a in 0..2 {
                for b in 0..2 {
                    choi[2 * i + a][2 * j + b] = image.0[a][b];
                }
            }
        }
    }
    choi
}

/// Minimum Choi eigenvalue of `γ_t` at each requested time.
pub fn choi_check(h: &Hamiltonian, l: &DissipationMatrix, times: &[f64]) -> Result<Vec<f64>> {
    let g = build_generator(h, l);
    times
        .iter()
        .map(|&t| {
            let p = propagator(&g, t)?;
            Ok(linalg::hermitian_eigen(&choi_matrix(&p)).0[0])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{b_to_l, m_to_l};
    use approx::assert_abs_diff_eq;

    fn l_diag(d: [f64; 3]) -> DissipationMatrix {
        DissipationMatrix::new(Mat3::diag(d)).unwrap()
    }

    #[test]
    fn form_e_examples() {
        assert!(check_form_e(&FormE::pack(&l_diag([0.5, 0.5, 0.0]))).is_cp());
        match check_form_e(&FormE::pack(&l_diag([0.45, 0.45, 1.0]))) {
            CpVerdict::NotCp(v) => assert_eq!(v.condition, Condition::EA(2)),
            other => panic!("expected NotCp, got {other:?}"),
        }
        assert!(check_form_e(&FormE::default()).is_cp());
    }

    #[test]
    fn form_e_rst_for_single_dephasing() {
        // M = diag(0, 0, 1) = 4 diag(R, S, T).
        let fe = FormE::pack(&l_diag([0.5, 0.5, 0.0]));
        let r = 0.5 * (fe.alpha + fe.gamma - fe.a);
        let s = 0.5 * (fe.a + fe.gamma - fe.alpha);
        let t = 0.5 * (fe.a + fe.alpha - fe.gamma);
        assert_eq!((r, s, t), (0.0, 0.0, 0.25));
    }

    #[test]
    fn m_psd_examples() {
        let ok = check_m_psd(&SymmetricM::new(Mat3::IDENTITY).unwrap()).unwrap();
        assert!(ok.is_cp());

        let neg = check_m_psd(&SymmetricM::new(Mat3::diag([1.0, 1.0, -0.1])).unwrap()).unwrap();
        assert!(matches!(neg, CpVerdict::NotCp(v) if v.condition == Condition::MDiagonal(2)));

        let o = -0.6;
        let m = Mat3([[1.0, o, o], [o, 1.0, o], [o, o, 1.0]]);
        assert_abs_diff_eq!(m.det(), -0.512, epsilon = 1e-12);
        assert!(linalg::symmetric_eigen(&m).0[0] < 0.0);
        let v = check_m_psd(&SymmetricM::new(m).unwrap()).unwrap();
        assert!(matches!(v, CpVerdict::NotCp(v) if v.condition == Condition::MDet));
    }

    #[test]
    fn small_negative_eigenvalue_with_small_partner() {
        // eigenvalues ≈ 0.52, 1e-6·O(1), -3.5e-7 of M/|M|: det M is far above -ε
        let m = Mat3([
            [0.15170826116516678, -0.22883606155999314, 0.055549559314550453],
            [-0.22883606155999314, 0.34520634009265283, -0.08380873414894859],
            [0.055549559314550453, -0.08380873414894859, 0.0203502296774018],
        ]);
        assert!(normalized_min_eigenvalue(&m) < -3e-7);
        assert!(m.scaled(1.0 / m.frobenius()).det() > -EPS_PSD);
        let sm = SymmetricM::new(m).unwrap();
        let v = check_m_psd(&sm).unwrap();
        assert!(matches!(v, CpVerdict::NotCp(v) if v.margin < -1e-7), "{v:?}");
        let fe = check_form_e(&FormE::pack(&m_to_l(&sm)));
        assert!(matches!(fe, CpVerdict::NotCp(v) if v.margin < -1e-7), "{fe:?}");
    }

    #[test]
    fn full_check_examples() {
        let lam = 0.7;
        let rep = is_completely_positive(&l_diag([lam; 3])).unwrap();
        let (cert, ell) = rep.certificate.clone().unwrap();
        assert_eq!(ell, 3);
        assert!((*b_to_l(&cert).matrix() - Mat3::IDENTITY.scaled(lam)).max_abs() < 1e-12);

        let rep = is_completely_positive(&l_diag([0.5, 0.5, 0.0])).unwrap();
        let (cert, ell) = rep.certificate.unwrap();
        assert_eq!(ell, 1);
        assert_eq!(cert.len(), 1);
        assert_abs_diff_eq!(cert.terms()[0].lambda, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(cert.terms()[0].axis.get()[2].abs(), 1.0, epsilon = 1e-14);

        let rep = is_completely_positive(&l_diag([0.0, 0.0, 1.0])).unwrap();
        assert!(!rep.is_cp());
        assert!(rep.certificate.is_none());
        assert!(matches!(rep.verdict, CpVerdict::NotCp(v) if v.condition == Condition::MDiagonal(2)));
        assert!(matches!(rep.form_e, CpVerdict::NotCp(v) if v.condition == Condition::EA(2)));

        let rep = is_completely_positive(&DissipationMatrix::ZERO).unwrap();
        assert!(rep.is_cp());
        assert!(rep.certificate.is_none());
    }

    #[test]
    fn choi_identity_at_zero() {
        let choi = choi_matrix(&Mat3::IDENTITY);
        let (vals, _) = linalg::hermitian_eigen(&choi);
        assert_abs_diff_eq!(vals[3], 2.0, epsilon = 1e-15);
        for v in &vals[..3] {
            assert_abs_diff_eq!(*v, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn choi_detects_non_cp() {
        let h = Hamiltonian::default();
        let good = choi_check(&h, &l_diag([0.5, 0.5, 0.0]), &[0.1, 1.0, 10.0]).unwrap();
        assert!(good.iter().all(|&e| e >= -1e-10));
        let bad = choi_check(&h, &l_diag([0.0, 0.0, 1.0]), &[0.01]).unwrap();
        // Pauli-diagonal channel with z factor e^{-t}: eigenvalue (e^{-t} - 1)/2.
        assert_abs_diff_eq!(bad[0], (libm::exp(-0.01) - 1.0) / 2.0, epsilon = 1e-14);
    }

    #[test]
    fn scaling_keeps_not_cp() {
        let l = Mat3([[0.2, 0.4, -0.1], [0.4, 0.3, 0.0], [-0.1, 0.0, 0.1]]);
        let base = is_completely_positive(&DissipationMatrix::new(l).unwrap()).unwrap();
        for s in [1e-6, 0.3, 7.0, 1e5] {
            let scaled = is_completely_positive(&DissipationMatrix::new(l.scaled(s)).unwrap());
            assert_eq!(scaled.unwrap().is_cp(), base.is_cp());
        }
    }
}
