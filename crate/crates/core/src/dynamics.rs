//! Time evolution under `dr/dt = h × r − L r` and under the full 2×2 master
//! equation `dρ/dt = −i[H, ρ] − D[ρ]`.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::forms::{DissipationMatrix, Dissipator};
use crate::linalg::{self, Mat3, Vec3};
use crate::qubit::{entropy_of_bloch_length, ComplexMatrix2, DensityState, Hamiltonian};
use crate::{Error, Result};

/// Default fixed step for the integrators.
pub const DEFAULT_DT: f64 = 1e-3;

/// The real 3×3 generator `G = Ω(h) − L` with `Ω(h) x = h × x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Generator {
    matrix: Mat3,
    h: Vec3,
    l: DissipationMatrix,
}

impl Generator {
    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }

    pub fn h(&self) -> Vec3 {
        self.h
    }

    pub fn dissipation(&self) -> &DissipationMatrix {
        &self.l
    }

    pub fn apply(&self, r: &Vec3) -> Vec3 {
        self.matrix.mul_vec(r)
    }
}

pub fn build_generator(h: &Hamiltonian, l: &DissipationMatrix) -> Generator {
    Generator { matrix: Mat3::cross_matrix(&h.h) - *l.matrix(), h: h.h, l: *l }
}

/// `exp(t G)`.
pub fn propagator(g: &Generator, t: f64) -> Result<Mat3> {
    if !(t >= 0.0) {
        return Err(Error::NegativeTime(t));
    }
    Ok(linalg::expm(&g.matrix.scaled(t)))
}

pub fn evolve_expm(g: &Generator, r0: &Vec3, t: f64) -> Result<Vec3> {
    Ok(propagator(g, t)?.mul_vec(r0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Rk4,
    Expm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub r: Vec3,
    pub entropy: f64,
}

impl Sample {
    fn new(t: f64, r: Vec3) -> Self {
        Self { t, r, entropy: entropy_of_bloch_length(linalg::norm(&r)) }
    }
}

/// Time-ordered Bloch-vector samples; the first is at `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub dt: f64,
    pub method: Method,
}

impl Trajectory {
    pub fn last(&self) -> &Sample {
        // Constructors always push the t = 0 sample.
        self.samples.last().expect("trajectory has at least one sample")
    }

    pub fn max_norm(&self) -> f64 {
        self.samples.iter().map(|s| linalg::norm(&s.r)).fold(0.0, f64::max)
    }
}

/// Sample times `0, dt, 2dt, …, t_max`; the final step is shortened when
/// `t_max` is not a multiple of `dt`.
fn sample_times(t_max: f64, dt: f64) -> Result<Vec<f64>> {
    if !(dt > 0.0 && dt <= t_max && t_max.is_finite()) {
        return Err(Error::BadStep { dt, t_max });
    }
    let steps = (t_max / dt - 1e-9).ceil().max(1.0) as usize;
    let mut times: Vec<f64> = (0..steps).map(|k| k as f64 * dt).collect();
    times.push(t_max);
    Ok(times)
}

fn rk4_step<T: Copy>(y: T, h: f64, f: impl Fn(&T) -> T, axpy: impl Fn(&T, f64, &T) -> T) -> T {
    let k1 = f(&y);
    let k2 = f(&axpy(&y, 0.5 * h, &k1));
    let k3 = f(&axpy(&y, 0.5 * h, &k2));
    let k4 = f(&axpy(&y, h, &k3));
    let y = axpy(&y, h / 6.0, &k1);
    let y = axpy(&y, h / 3.0, &k2);
    let y = axpy(&y, h / 3.0, &k3);
    axpy(&y, h / 6.0, &k4)
}

/// Classical fixed-step RK4 on the Bloch vector.
pub fn evolve_rk4(g: &Generator, r0: &Vec3, t_max: f64, dt: f64) -> Result<Trajectory> {
    let times = sample_times(t_max, dt)?;
    let mut samples = Vec::with_capacity(times.len());
    let mut r = *r0;
    samples.push(Sample::new(0.0, r));
    for w in times.windows(2) {
        r = rk4_step(r, w[1] - w[0], |x| g.apply(x), |y, a, k| linalg::add(y, &linalg::scale(a, k)));
        samples.push(Sample::new(w[1], r));
    }
    Ok(Trajectory { samples, dt, method: Method::Rk4 })
}

/// Exact propagation sampled on the same grid as [`evolve_rk4`].
pub fn sample_expm(g: &Generator, r0: &Vec3, t_max: f64, dt: f64) -> Result<Trajectory> {
    let times = sample_times(t_max, dt)?;
    let samples = times
        .iter()
        .map(|&t| Ok(Sample::new(t, evolve_expm(g, r0, t)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Trajectory { samples, dt, method: Method::Expm })
}

/// Density-matrix samples from [`evolve_density`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<ComplexMatrix2>,
    pub dt: f64,
}

impl DensityTrajectory {
    /// Bloch picture: `r_α = tr(ρ σ_α)` (real part).
    pub fn bloch(&self) -> Trajectory {
        let samples = self
            .times
            .iter()
            .zip(&self.states)
            .map(|(&t, rho)| {
                let (_, c) = rho.pauli_coefficients();
                Sample::new(t, [2.0 * c[0].re, 2.0 * c[1].re, 2.0 * c[2].re])
            })
            .collect();
        Trajectory { samples, dt: self.dt, method: Method::Rk4 }
    }
}

/// RK4 on the 2×2 master equation with `D` applied in its native form.
pub fn evolve_density(
    h: &Hamiltonian,
    dissipator: &dyn Dissipator,
    rho0: &DensityState,
    t_max: f64,
    dt: f64,
) -> Result<DensityTrajectory> {
    let times = sample_times(t_max, dt)?;
    let hm = h.matrix();
    let minus_i = Complex64::new(0.0, -1.0);
    let rhs = |rho: &ComplexMatrix2| hm.commutator(rho).scale(minus_i) - dissipator.apply(rho);
    let mut rho = *rho0.matrix();
    let mut states = Vec::with_capacity(times.len());
    states.push(rho);
    for w in times.windows(2) {
        rho = rk4_step(rho, w[1] - w[0], &rhs, |y, a, k| *y + k.scale_re(a));
        states.push(rho);
    }
    Ok(DensityTrajectory { times, states, dt })
}

/// Eigenvalues of `G`.
pub fn generator_spectrum(g: &Generator) -> [Complex64; 3] {
    linalg::eigenvalues(&g.matrix)
}

/// `−max Re λ` over eigenvalues with real part below `−tol · max(1, ‖G‖)`;
/// zero when every eigenvalue is marginal.
pub fn spectral_gap(eigenvalues: &[Complex64; 3], g: &Generator) -> f64 {
    let tol = 1e-12 * g.matrix.frobenius().max(1.0);
    eigenvalues
        .iter()
        .map(|z| z.re)
        .filter(|&re| re < -tol)
        .fold(None, |acc: Option<f64>, re| Some(acc.map_or(re, |a| a.max(re))))
        .map_or(0.0, |re| -re)
}

/// Largest `S(t_k) − S(t_{k+1})` over consecutive samples (zero for fewer
/// than two samples). Non-positive values mean the entropy never decreased.
pub fn entropy_monotonicity_report(traj: &Trajectory) -> f64 {
    traj.samples
        .windows(2)
        .map(|w| w[0].entropy - w[1].entropy)
        .fold(None, |acc: Option<f64>, d| Some(acc.map_or(d, |a| a.max(d))))
        .unwrap_or(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::FormB;
    use crate::qubit::density_from_bloch;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::{FRAC_PI_2, LN_2};

    fn diag_l(d: Vec3) -> DissipationMatrix {
        DissipationMatrix::new(Mat3::diag(d)).unwrap()
    }

    #[test]
    fn generator_examples() {
        let g = build_generator(&Hamiltonian::default(), &diag_l([0.5, 0.5, 0.0]));
        assert_eq!(*g.matrix(), Mat3::diag([-0.5, -0.5, 0.0]));
        let w = 1.7;
        let g = build_generator(&Hamiltonian::new([0.0, 0.0, w]), &DissipationMatrix::ZERO);
        assert_eq!(*g.matrix(), Mat3([[0.0, -w, 0.0], [w, 0.0, 0.0], [0.0, 0.0, 0.0]]));
        let g = build_generator(&Hamiltonian::new([0.0, 0.0, 1.0]), &diag_l([0.5, 0.5, 0.0]));
        assert_eq!(*g.matrix(), Mat3([[-0.5, -1.0, 0.0], [1.0, -0.5, 0.0], [0.0, 0.0, 0.0]]));
        // G e_k = h × e_k − L e_k
        let h = [0.3, -1.2, 0.8];
        let l = Mat3([[0.4, 0.1, 0.0], [0.1, 0.6, -0.2], [0.0, -0.2, 0.5]]);
        let g = build_generator(&Hamiltonian::new(h), &DissipationMatrix::new(l).unwrap());
        for k in 0..3 {
            let mut e = [0.0; 3];
            e[k] = 1.0;
            let expect = linalg::sub(&linalg::cross(&h, &e), &l.mul_vec(&e));
            assert!(linalg::distance(&g.apply(&e), &expect) < 1e-15);
        }
    }

    #[test]
    fn expm_examples() {
        let g0 = build_generator(&Hamiltonian::default(), &DissipationMatrix::ZERO);
        assert_eq!(evolve_expm(&g0, &[0.1, 0.2, 0.3], 5.0).unwrap(), [0.1, 0.2, 0.3]);

        let g = build_generator(&Hamiltonian::default(), &diag_l([0.5, 0.5, 0.0]));
        for t in [0.0, 0.3, 1.0, 7.5] {
            let r = evolve_expm(&g, &[1.0, 0.0, 0.0], t).unwrap();
            assert_abs_diff_eq!(r[0], libm::exp(-t / 2.0), epsilon = 1e-14);
        }

        let g = build_generator(&Hamiltonian::new([0.0, 0.0, 1.0]), &DissipationMatrix::ZERO);
        let r = evolve_expm(&g, &[1.0, 0.0, 0.0], FRAC_PI_2).unwrap();
        assert_abs_diff_eq!(r[0], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r[1], 1.0, epsilon = 1e-14);
        let rk = evolve_rk4(&g, &[1.0, 0.0, 0.0], FRAC_PI_2, 1e-3).unwrap();
        assert!(linalg::distance(&rk.last().r, &r) < 1e-12);

        assert!(matches!(evolve_expm(&g, &[1.0, 0.0, 0.0], -1.0), Err(Error::NegativeTime(_))));
    }

    #[test]
    fn rk4_examples() {
        let g0 = build_generator(&Hamiltonian::default(), &DissipationMatrix::ZERO);
        let traj = evolve_rk4(&g0, &[0.0, 0.6, 0.0], 1.0, 0.1).unwrap();
        assert!(traj.samples.iter().all(|s| s.r == [0.0, 0.6, 0.0]));
        assert_eq!(traj.samples.len(), 11);

        let g = build_generator(&Hamiltonian::default(), &diag_l([0.5, 0.5, 0.0]));
        let traj = evolve_rk4(&g, &[1.0, 0.0, 0.0], 1.0, 1e-3).unwrap();
        assert_abs_diff_eq!(traj.last().t, 1.0);
        assert_abs_diff_eq!(traj.last().r[0], libm::exp(-0.5), epsilon = 1e-10);

        let g = build_generator(&Hamiltonian::new([0.0, 0.0, 1.0]), &DissipationMatrix::ZERO);
        let traj = evolve_rk4(&g, &[1.0, 0.0, 0.0], 100.0, 1e-3).unwrap();
        assert!(traj.samples.iter().all(|s| (linalg::norm(&s.r) - 1.0).abs() < 1e-10));
    }

    #[test]
    fn rk4_rejects_bad_steps() {
        let g = build_generator(&Hamiltonian::default(), &DissipationMatrix::ZERO);
        for (t_max, dt) in [(1.0, 0.0), (1.0, -0.1), (1.0, 2.0), (f64::INFINITY, 0.1)] {
            assert!(matches!(evolve_rk4(&g, &[0.0; 3], t_max, dt), Err(Error::BadStep { .. })));
        }
    }

    #[test]
    fn uneven_final_step() {
        let g = build_generator(&Hamiltonian::default(), &diag_l([1.0, 1.0, 1.0]));
        let traj = evolve_rk4(&g, &[0.5, 0.0, 0.0], 1.05, 0.1).unwrap();
        assert_eq!(traj.samples.len(), 12);
        assert_abs_diff_eq!(traj.last().t, 1.05);
        assert_abs_diff_eq!(traj.last().r[0], 0.5 * libm::exp(-1.05), epsilon = 1e-6);
    }

    #[test]
    fn rk4_error_within_bound() {
        let h = Hamiltonian::new([0.2, -0.4, 0.9]);
        let l = DissipationMatrix::new(Mat3([[0.5, 0.1, 0.0], [0.1, 0.4, 0.05], [0.0, 0.05, 0.3]]))
            .unwrap();
        let g = build_generator(&h, &l);
        let (t_max, dt) = (2.0, 0.05);
        let r0 = [0.3, 0.5, -0.6];
        let err = linalg::distance(
            &evolve_rk4(&g, &r0, t_max, dt).unwrap().last().r,
            &evolve_expm(&g, &r0, t_max).unwrap(),
        );
        let bound = 10.0 * dt.powi(4) * g.matrix().frobenius().powi(5) * t_max;
        assert!(err < bound, "{err} vs {bound}");
    }

    #[test]
    fn density_examples() {
        // D = 0 and [H, ρ0] = 0.
        let fb_free = DissipationMatrix::ZERO;
        let rho0 = density_from_bloch([0.0, 0.0, 0.7]).unwrap();
        let traj =
            evolve_density(&Hamiltonian::new([0.0, 0.0, 2.0]), &fb_free, &rho0, 1.0, 0.01).unwrap();
        assert!(traj.states.iter().all(|s| (*s - *rho0.matrix()).max_abs() < 1e-15));

        let fb = FormB::from_pairs(&[(1.0, [0.0, 0.0, 1.0])]).unwrap();
        let rho0 = density_from_bloch([1.0, 0.0, 0.0]).unwrap();
        let traj = evolve_density(&Hamiltonian::default(), &fb, &rho0, 2.0, 1e-3).unwrap();
        for (t, s) in traj.times.iter().zip(&traj.states) {
            assert_abs_diff_eq!(s.0[0][1].re, 0.5 * libm::exp(-t / 2.0), epsilon = 1e-12);
            assert!(s.hermiticity_deviation() < 1e-12);
        }
    }

    #[test]
    fn spectrum_examples() {
        let sorted = |g: &Generator| {
            let mut e = generator_spectrum(g).to_vec();
            e.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
            e
        };
        let e = sorted(&build_generator(&Hamiltonian::default(), &diag_l([0.5, 0.5, 0.0])));
        for (z, want) in e.iter().zip([-0.5, -0.5, 0.0]) {
            assert_abs_diff_eq!(z.re, want, epsilon = 1e-12);
            assert_abs_diff_eq!(z.im, 0.0, epsilon = 1e-12);
        }

        let g = build_generator(&Hamiltonian::new([0.0, 0.0, 1.0]), &DissipationMatrix::ZERO);
        let e = sorted(&g);
        assert_abs_diff_eq!(e[0].im, -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e[1].im, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e[2].im, 1.0, epsilon = 1e-12);

        let lam = 0.8;
        let g = build_generator(&Hamiltonian::new([0.0, 0.0, 1.0]), &diag_l([lam; 3]));
        let e = generator_spectrum(&g);
        // Characteristic polynomial of −λ𝟙 + Ω(e_z): (x + λ)((x + λ)² + 1).
        for z in e {
            let p = (z + lam) * ((z + lam) * (z + lam) + 1.0);
            assert!(p.norm() < 1e-12);
            assert_abs_diff_eq!(z.re, -lam, epsilon = 1e-12);
        }
        let sum: f64 = e.iter().map(|z| z.re).sum();
        assert_abs_diff_eq!(sum, g.matrix().trace(), epsilon = 1e-12);
        assert_abs_diff_eq!(spectral_gap(&e, &g), lam, epsilon = 1e-12);
    }

    #[test]
    fn entropy_reports() {
        let g = build_generator(&Hamiltonian::new([0.3, 0.0, 1.0]), &DissipationMatrix::ZERO);
        let traj = evolve_rk4(&g, &[0.0, 0.6, 0.0], 20.0, 1e-3).unwrap();
        assert!(entropy_monotonicity_report(&traj) <= 1e-12);

        let g = build_generator(&Hamiltonian::default(), &diag_l([1.0; 3]));
        let traj = evolve_rk4(&g, &[0.0, 0.0, 1.0], 30.0, 1e-3).unwrap();
        assert!(entropy_monotonicity_report(&traj) <= 1e-15);
        let rising = traj.samples.iter().take_while(|s| s.entropy < LN_2 - 1e-6).count();
        assert!(rising > 1000);
        assert!(traj.samples[..rising].windows(2).all(|w| w[1].entropy > w[0].entropy));
        assert_abs_diff_eq!(traj.last().entropy, LN_2, epsilon = 1e-9);

        // ℓ = 1 commuting case started on the axis is stationary.
        let l = crate::forms::b_to_l(&FormB::from_pairs(&[(0.5, [0.0, 0.0, 1.0])]).unwrap());
        let g = build_generator(&Hamiltonian::new([0.0, 0.0, 1.0]), &l);
        let traj = evolve_rk4(&g, &[0.0, 0.0, 0.4], 10.0, 1e-3).unwrap();
        let s0 = traj.samples[0].entropy;
        assert!(traj.samples.iter().all(|s| (s.entropy - s0).abs() < 1e-15));
    }
}
