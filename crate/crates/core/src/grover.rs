//! The exact search operators and every noise-free closed form.
//!
//! The search operator is `S = D * U`: a sign flip on the marked record
//! followed by inversion about the mean. One application rotates amplitude
//! toward the target by the angle theta with `cos(theta) = (N-2)/N`, and all
//! noise-free probabilities below are trigonometric in `m * theta`.

use crate::error::{Error, Result};
use crate::{CMat, DENSE_CAP};
use num_complex::Complex64;

/// A search problem: database size `N >= 2` and the marked record's index.
///
/// The rotation angle is derived once at construction. Every probability in
/// this crate is independent of *which* index is marked; the index only
/// decides where the sign flip sits in the dense operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DatabaseSpec {
    size: usize,
    target: usize,
    angle: GroverAngle,
}

impl DatabaseSpec {
    pub fn new(size: usize, target: usize) -> Result<Self> {
        if size < 2 {
            return Err(Error::DatabaseTooSmall(size));
        }
        if target >= size {
            return Err(Error::TargetOutOfRange { target, size });
        }
        Ok(Self {
            size,
            target,
            angle: GroverAngle::for_size(size),
        })
    }

    /// Database size with the marked record at index 0.
    pub fn of_size(size: usize) -> Result<Self> {
        Self::new(size, 0)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn angle(&self) -> GroverAngle {
        self.angle
    }
}

/// The per-iteration rotation angle, in radians, in (0, pi/2].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroverAngle {
    theta: f64,
}

impl GroverAngle {
    /// `theta = arccos((N-2)/N)`. The arcsin branch
    /// `sin(theta) = 2 sqrt(N-1)/N` is exposed through
    /// [`GroverAngle::branch_defect`] so tests can confirm both hold at once.
    fn for_size(size: usize) -> Self {
        let n = size as f64;
        GroverAngle {
            theta: ((n - 2.0) / n).acos(),
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// How far the angle is from satisfying the sine-branch identity,
    /// `|sin(theta) - 2 sqrt(N-1)/N|`.
    pub fn branch_defect(&self, size: usize) -> f64 {
        let n = size as f64;
        (self.theta.sin() - 2.0 * (n - 1.0).sqrt() / n).abs()
    }
}

/// Derive the rotation angle for a search problem.
pub fn grover_angle(db: &DatabaseSpec) -> GroverAngle {
    db.angle()
}

/// An N×N complex matrix expected to be unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    mat: CMat,
}

impl UnitaryMatrix {
    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.mat[(row, col)]
    }

    /// Max entry of `|U·U† - I|`; zero for an exactly unitary matrix.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.dim();
        let prod = &self.mat * self.mat.adjoint();
        crate::numeric::max_abs_diff(&prod, &CMat::identity(n, n))
    }
}

fn check_dense_cap(n: usize) -> Result<()> {
    if n > DENSE_CAP {
        return Err(Error::DenseCapExceeded { n, cap: DENSE_CAP });
    }
    Ok(())
}

/// The sign-flip operator: diagonal, -1 at the marked index, +1 elsewhere.
pub fn build_oracle(db: &DatabaseSpec) -> Result<UnitaryMatrix> {
    let n = db.size();
    check_dense_cap(n)?;
    let mut mat = CMat::identity(n, n);
    mat[(db.target(), db.target())] = Complex64::new(-1.0, 0.0);
    Ok(UnitaryMatrix { mat })
}

/// The inversion-about-the-mean operator, `D_ij = -delta_ij + 2/N`.
pub fn build_diffusion(n: usize) -> Result<UnitaryMatrix> {
    if n < 2 {
        return Err(Error::DatabaseTooSmall(n));
    }
    check_dense_cap(n)?;
    let off = 2.0 / n as f64;
    let mat = CMat::from_fn(n, n, |i, j| {
        let v = if i == j { off - 1.0 } else { off };
        Complex64::new(v, 0.0)
    });
    Ok(UnitaryMatrix { mat })
}

/// One full search iteration, `S = D * U`.
pub fn build_grover_operator(db: &DatabaseSpec) -> Result<UnitaryMatrix> {
    let u = build_oracle(db)?;
    let d = build_diffusion(db.size())?;
    Ok(UnitaryMatrix { mat: d.mat * u.mat })
}

/// The conjugate eigenvalue pair of `S` that is not -1:
/// `(N - 2 -/+ 2i sqrt(N-1)) / N`, i.e. `exp(-/+ i theta)`.
pub fn rotation_eigenvalues(db: &DatabaseSpec) -> (Complex64, Complex64) {
    let n = db.size() as f64;
    let eta = Complex64::new((n - 2.0) / n, -2.0 * (n - 1.0).sqrt() / n);
    (eta, eta.conj())
}

/// Expected eigenvalue multiset of `S`: -1 with multiplicity N-2 plus the
/// rotation pair.
pub fn expected_spectrum(db: &DatabaseSpec) -> Vec<Complex64> {
    let (eta, eta_conj) = rotation_eigenvalues(db);
    let mut eigs = vec![Complex64::new(-1.0, 0.0); db.size() - 2];
    eigs.push(eta);
    eigs.push(eta_conj);
    eigs
}

/// Probability of measuring the marked record after `m` noise-free
/// iterations from the uniform superposition:
/// `(1/N) (cos(m theta) + sqrt(N-1) sin(m theta))^2`.
pub fn noise_free_success_prob(db: &DatabaseSpec, m: u32) -> f64 {
    success_amplitude_sq(db, f64::from(m))
}

/// Probability of measuring one particular unmarked record after `m`
/// noise-free iterations:
/// `(1/N) (cos(m theta) - sin(m theta)/sqrt(N-1))^2`.
pub fn noise_free_other_prob(db: &DatabaseSpec, m: u32) -> f64 {
    other_amplitude_sq(db, f64::from(m))
}

pub(crate) fn success_amplitude_sq(db: &DatabaseSpec, m: f64) -> f64 {
    let n = db.size() as f64;
    let t = m * db.angle().theta();
    let a = t.cos() + (n - 1.0).sqrt() * t.sin();
    (a * a / n).min(1.0)
}

pub(crate) fn other_amplitude_sq(db: &DatabaseSpec, m: f64) -> f64 {
    let n = db.size() as f64;
    let t = m * db.angle().theta();
    let a = t.cos() - t.sin() / (n - 1.0).sqrt();
    (a * a / n).min(1.0)
}

/// Location of the first noise-free maximum with `m` treated as continuous:
/// `(pi - theta) / (2 theta)`. The integer argmax is its floor or ceiling.
pub fn continuous_peak(db: &DatabaseSpec) -> f64 {
    let theta = db.angle().theta();
    (std::f64::consts::PI - theta) / (2.0 * theta)
}
