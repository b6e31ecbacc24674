//! Fixed-size real and complex linear algebra.
//!
//! Everything the dissipator machinery needs lives at sizes 2, 3 and 4, so
//! the matrices here are plain arrays and the eigensolvers are cyclic Jacobi
//! sweeps (symmetric / hermitian) or a closed-form cubic (general real 3×3).

use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

pub type Vec3 = [f64; 3];

pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm(a: &Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn add(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn scale(s: f64, a: &Vec3) -> Vec3 {
    [s * a[0], s * a[1], s * a[2]]
}

pub fn distance(a: &Vec3, b: &Vec3) -> f64 {
    norm(&sub(a, b))
}

/// Real 3×3 matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const ZERO: Mat3 = Mat3([[0.0; 3]; 3]);
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn diag(d: Vec3) -> Self {
        Mat3([[d[0], 0.0, 0.0], [0.0, d[1], 0.0], [0.0, 0.0, d[2]]])
    }

    /// `a bᵀ`.
    pub fn outer(a: &Vec3, b: &Vec3) -> Self {
        let mut m = Mat3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = a[i] * b[j];
            }
        }
        m
    }

    /// The matrix of `x ↦ h × x`.
    pub fn cross_matrix(h: &Vec3) -> Self {
        Mat3([[0.0, -h[2], h[1]], [h[2], 0.0, -h[0]], [-h[1], h[0], 0.0]])
    }

    pub fn from_cols(c: [Vec3; 3]) -> Self {
        let mut m = Mat3::ZERO;
        for (j, col) in c.iter().enumerate() {
            for i in 0..3 {
                m.0[i][j] = col[i];
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> Vec3 {
        [self.0[0][j], self.0[1][j], self.0[2][j]]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Mat3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                t.0[i][j] = self.0[j][i];
            }
        }
        t
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|x| *x *= s);
        m
    }

    pub fn mul_vec(&self, v: &Vec3) -> Vec3 {
        [dot(&self.0[0], v), dot(&self.0[1], v), dot(&self.0[2], v)]
    }

    pub fn mul_cvec(&self, v: &[Complex64; 3]) -> [Complex64; 3] {
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                *o += *vj * self.0[i][j];
            }
        }
        out
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Sum of the three principal 2×2 minors.
    pub fn minor_sum(&self) -> f64 {
        let m = &self.0;
        (m[0][0] * m[1][1] - m[0][1] * m[1][0])
            + (m[0][0] * m[2][2] - m[0][2] * m[2][0])
            + (m[1][1] * m[2][2] - m[1][2] * m[2][1])
    }

    pub fn frobenius(&self) -> f64 {
        self.0.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        self.0
            .iter()
            .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `max |m_ij − m_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..3 {
            for j in (i + 1)..3 {
                dev = dev.max((self.0[i][j] - self.0[j][i]).abs());
            }
        }
        dev
    }

    pub fn symmetric_part(&self) -> Self {
        (*self + self.transpose()).scaled(0.5)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }
}

impl Index<(usize, usize)> for Mat3 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat3 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.0[i][j]
    }
}

impl Add for Mat3 {
    type Output = Mat3;
    fn add(mut self, rhs: Mat3) -> Mat3 {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl Sub for Mat3 {
    type Output = Mat3;
    fn sub(mut self, rhs: Mat3) -> Mat3 {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl Neg for Mat3 {
    type Output = Mat3;
    fn neg(self) -> Mat3 {
        self.scaled(-1.0)
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: Mat3) -> Mat3 {
        let mut out = Mat3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        out
    }
}

const JACOBI_MAX_SWEEPS: usize = 64;

/// Eigen-decomposition of a real symmetric 3×3 matrix.
///
/// Returns eigenvalues in ascending order and the matching orthonormal
/// eigenvectors as the columns of the second component. Only the upper
/// triangle is read.
pub fn symmetric_eigen(m: &Mat3) -> (Vec3, Mat3) {
    let mut a = m.symmetric_part();
    let mut v = Mat3::IDENTITY;
    let scale = a.frobenius();
    if scale == 0.0 {
        return ([0.0; 3], v);
    }
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off = a[(0, 1)].powi(2) + a[(0, 2)].powi(2) + a[(1, 2)].powi(2);
        if off.sqrt() <= f64::EPSILON * 1e-3 * scale {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            let apq = a[(p, q)];
            if apq == 0.0 {
                continue;
            }
            let tau = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
            let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
            let c = 1.0 / (1.0 + t * t).sqrt();
            let s = t * c;
            for k in 0..3 {
                let akp = a[(k, p)];
                let akq = a[(k, q)];
                a[(k, p)] = c * akp - s * akq;
                a[(k, q)] = s * akp + c * akq;
            }
            for k in 0..3 {
                let apk = a[(p, k)];
                let aqk = a[(q, k)];
                a[(p, k)] = c * apk - s * aqk;
                a[(q, k)] = s * apk + c * aqk;
            }
            for k in 0..3 {
                let vkp = v[(k, p)];
                let vkq = v[(k, q)];
                v[(k, p)] = c * vkp - s * vkq;
                v[(k, q)] = s * vkp + c * vkq;
            }
        }
    }
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let vals = [a[(order[0], order[0])], a[(order[1], order[1])], a[(order[2], order[2])]];
    let vecs = Mat3::from_cols([v.col(order[0]), v.col(order[1]), v.col(order[2])]);
    (vals, vecs)
}

/// Number of eigenvalues of a symmetric matrix above `rel_cutoff` times the
/// largest eigenvalue magnitude (the singular values of a PSD matrix).
pub fn symmetric_rank(m: &Mat3, rel_cutoff: f64) -> usize {
    let (vals, _) = symmetric_eigen(m);
    let top = vals.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
    if top == 0.0 {
        return 0;
    }
    vals.iter().filter(|x| x.abs() > rel_cutoff * top).count()
}

/// Eigen-decomposition of an `N×N` hermitian matrix by complex Jacobi
/// rotations.
///
/// Returns eigenvalues ascending with a unitary whose columns are the
/// eigenvectors. The input is hermitised (`(A + A†)/2`) first.
pub fn hermitian_eigen<const N: usize>(
    m: &[[Complex64; N]; N],
) -> ([f64; N], [[Complex64; N]; N]) {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut a = [[zero; N]; N];
    for i in 0..N {
        for j in 0..N {
            a[i][j] = (m[i][j] + m[j][i].conj()) * 0.5;
        }
    }
    let mut v = [[zero; N]; N];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = one;
    }
    let scale = a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt();

    if scale > 0.0 {
        for _ in 0..JACOBI_MAX_SWEEPS {
            let mut off = 0.0;
            for i in 0..N {
                for j in (i + 1)..N {
                    off += a[i][j].norm_sqr();
                }
            }
            if off.sqrt() <= f64::EPSILON * 1e-3 * scale {
                break;
            }
            for p in 0..N {
                for q in (p + 1)..N {
                    let apq = a[p][q];
                    let mag = apq.norm();
                    if mag == 0.0 {
                        continue;
                    }
                    // Phase that makes the (p, q) entry real, then a real rotation.
                    let phase = apq / mag;
                    let app = a[p][p].re;
                    let aqq = a[q][q].re;
                    let tau = (aqq - app) / (2.0 * mag);
                    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let jpp = Complex64::new(c, 0.0);
                    let jpq = Complex64::new(s, 0.0);
                    let jqp = phase.conj() * (-s);
                    let jqq = phase.conj() * c;
                    // A ← A J
                    for row in a.iter_mut() {
                        let x = row[p];
                        let y = row[q];
                        row[p] = x * jpp + y * jqp;
                        row[q] = x * jpq + y * jqq;
                    }
                    // A ← J† A
                    for k in 0..N {
                        let x = a[p][k];
                        let y = a[q][k];
                        a[p][k] = jpp.conj() * x + jqp.conj() * y;
                        a[q][k] = jpq.conj() * x + jqq.conj() * y;
                    }
                    for row in v.iter_mut() {
                        let x = row[p];
                        let y = row[q];
                        row[p] = x * jpp + y * jqp;
                        row[q] = x * jpq + y * jqq;
                    }
                    a[p][q] = zero;
                    a[q][p] = zero;
                }
            }
        }
    }

    let mut order = [0usize; N];
    for (i, o) in order.iter_mut().enumerate() {
        *o = i;
    }
    order.sort_by(|&i, &j| a[i][i].re.total_cmp(&a[j][j].re));
    let mut vals = [0.0; N];
    let mut vecs = [[zero; N]; N];
    for (k, &src) in order.iter().enumerate() {
        vals[k] = a[src][src].re;
        for i in 0..N {
            vecs[i][k] = v[i][src];
        }
    }
    (vals, vecs)
}

/// Eigenvalues of a general real 3×3 matrix.
///
/// Roots of the characteristic cubic: Cardano for one real root, the
/// trigonometric form for three. The real root used for deflation is polished
/// by a Newton step, and the remaining pair comes from the exact sum/product
/// relations, so the three values always sum to `tr m`.
pub fn eigenvalues(m: &Mat3) -> [Complex64; 3] {
    // λ³ + a λ² + b λ + c
    let a = -m.trace();
    let b = m.minor_sum();
    let c = -m.det();
    let poly = |x: f64| ((x + a) * x + b) * x + c;
    let dpoly = |x: f64| (3.0 * x + 2.0 * a) * x + b;

    let shift = -a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);

    let mut root = if disc > 0.0 {
        let u = -q.signum() * (q.abs() / 2.0 + disc.sqrt()).cbrt();
        let v = if u != 0.0 { -p / (3.0 * u) } else { 0.0 };
        u + v + shift
    } else if p == 0.0 {
        shift
    } else {
        let r = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * r)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        let two_pi_3 = 2.0 * core::f64::consts::PI / 3.0;
        let roots = [
            r * theta.cos() + shift,
            r * (theta - two_pi_3).cos() + shift,
            r * (theta - 2.0 * two_pi_3).cos() + shift,
        ];
        // Deflate on the best separated root: it is simple whenever any is.
        let sep = |i: usize| {
            (0..3)
                .filter(|&j| j != i)
                .map(|j| (roots[i] - roots[j]).abs())
                .fold(f64::INFINITY, f64::min)
        };
        let best = (0..3).max_by(|&i, &j| sep(i).total_cmp(&sep(j))).unwrap_or(0);
        roots[best]
    };

    let d = dpoly(root);
    if d != 0.0 {
        let polished = root - poly(root) / d;
        if polished.is_finite() && poly(polished).abs() <= poly(root).abs() {
            root = polished;
        }
    }

    let sum = -a - root;
    let prod = b - root * sum;
    let qdisc = sum * sum - 4.0 * prod;
    let (r1, r2) = if qdisc >= 0.0 {
        let big = (sum + sum.signum() * qdisc.sqrt()) / 2.0;
        let small = if big != 0.0 { prod / big } else { 0.0 };
        (Complex64::new(big, 0.0), Complex64::new(small, 0.0))
    } else {
        let im = (-qdisc).sqrt() / 2.0;
        (Complex64::new(sum / 2.0, im), Complex64::new(sum / 2.0, -im))
    };
    [Complex64::new(root, 0.0), r1, r2]
}

const EXPM_TAYLOR_TERMS: usize = 12;

/// `exp(m)` by scaling and squaring with a degree-12 Taylor polynomial; the
/// scaled matrix has ∞-norm below ½.
pub fn expm(m: &Mat3) -> Mat3 {
    let norm = m.norm_inf();
    let mut squarings = 0u32;
    if norm >= 0.5 {
        squarings = (libm::log2(norm / 0.5).floor() as u32) + 1;
    }
    let scaled = m.scaled(libm::ldexp(1.0, -(squarings as i32)));

    // Horner: I + A(I + A/2(I + A/3(...)))
    let mut acc = Mat3::IDENTITY;
    for k in (1..=EXPM_TAYLOR_TERMS).rev() {
        acc = Mat3::IDENTITY + (scaled * acc).scaled(1.0 / k as f64);
    }
    for _ in 0..squarings {
        acc = acc * acc;
    }
    acc
}

/// Null space of a real 3×3 matrix by Gaussian elimination with full
/// pivoting; pivots below `tol · max|m|` count as zero. Returns the basis
/// size and up to three orthonormal basis vectors.
pub fn null_space(m: &Mat3, tol: f64) -> (usize, [Vec3; 3]) {
    let mut a = *m;
    let mag = a.max_abs();
    let mut basis = [[0.0; 3]; 3];
    if mag == 0.0 {
        return (3, [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
    }
    let mut cols = [0usize, 1, 2];
    let mut rank = 0;
    for k in 0..3 {
        let mut best = (k, k, 0.0);
        for i in k..3 {
            for j in k..3 {
                let v = a[(i, j)].abs();
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        if best.2 <= tol * mag {
            break;
        }
        a.0.swap(k, best.0);
        for row in a.0.iter_mut() {
            row.swap(k, best.1);
        }
        cols.swap(k, best.1);
        for i in 0..3 {
            if i != k {
                let f = a[(i, k)] / a[(k, k)];
                for j in 0..3 {
                    a[(i, j)] -= f * a[(k, j)];
                }
            }
        }
        rank += 1;
    }
    // Reduced form: pivot columns [0, rank), free columns [rank, 3).
    let nullity = 3 - rank;
    for (f, slot) in (rank..3).zip(basis.iter_mut()) {
        let mut x = [0.0; 3];
        x[cols[f]] = 1.0;
        for k in 0..rank {
            x[cols[k]] = -a[(k, f)] / a[(k, k)];
        }
        *slot = x;
    }
    // Orthonormalise.
    for i in 0..nullity {
        for j in 0..i {
            let proj = dot(&basis[i], &basis[j]);
            basis[i] = sub(&basis[i], &scale(proj, &basis[j]));
        }
        let n = norm(&basis[i]);
        basis[i] = scale(1.0 / n, &basis[i]);
    }
    (nullity, basis)
}
