//! Scalar optimization, root finding, least squares and small dense-matrix
//! helpers shared by the analysis and verification code.

use crate::error::{Error, Result};
use crate::CMat;
use num_complex::Complex64;

/// Maximize a unimodal function on `[lo, hi]` by golden-section search.
///
/// Returns `(x, f(x))` at the located maximum. The search stops once the
/// bracket width falls below `tol`; if the maximum sits on a boundary the
/// returned point converges to that boundary.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    debug_assert!(lo <= hi);
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Find the root of a decreasing function on `[lo, hi]` by bisection.
///
/// Requires `f(lo) >= 0 >= f(hi)`. Bisects until the interval can no longer
/// be split in f64, so the result is accurate to machine precision.
pub fn bisect_decreasing<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> f64 {
    debug_assert!(f(lo) >= 0.0 && f(hi) <= 0.0);
    let (mut a, mut b) = (lo, hi);
    loop {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            return mid;
        }
        if f(mid) > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
}

/// Ordinary least squares for `y = intercept + slope * x`.
///
/// Returns `(intercept, slope)`. Fails on fewer than two points or a
/// degenerate (constant-x) grid.
pub fn linear_fit(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    if points.len() < 2 {
        return Err(Error::DegenerateGrid(points.len()));
    }
    let k = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let denom = k * sxx - sx * sx;
    if denom == 0.0 {
        return Err(Error::DegenerateGrid(points.len()));
    }
    let slope = (k * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / k;
    Ok((intercept, slope))
}

/// Max absolute entry of a complex matrix.
pub fn max_abs_entry(m: &CMat) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Max absolute entrywise difference between two complex matrices.
pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    debug_assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Eigenvalues of a unitary matrix, computed without assuming anything about
/// its spectrum beyond `1` not being an eigenvalue.
///
/// Uses the Cayley transform `H = i (I + U)(I - U)^{-1}`, which is Hermitian
/// exactly when `U` is unitary. The real eigenvalues `h` of `H` come from a
/// Hermitian eigensolver and map back to the unit circle via
/// `lambda = (h - i) / (h + i)`.
pub fn unitary_eigenvalues(u: &CMat) -> Result<Vec<Complex64>> {
    let n = u.nrows();
    if u.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: u.ncols(),
        });
    }
    let id = CMat::identity(n, n);
    let inv = (&id - u).try_inverse().ok_or(Error::SingularCayley)?;
    let h = (&id + u) * inv * Complex64::i();
    let eigs = h.symmetric_eigen().eigenvalues;
    let i = Complex64::i();
    Ok(eigs
        .iter()
        .map(|&hk| {
            let hk = Complex64::new(hk, 0.0);
            (hk - i) / (hk + i)
        })
        .collect())
}

/// Greedily match two eigenvalue multisets and return the largest pairing
/// distance, or `f64::INFINITY` when the lengths differ.
pub fn multiset_distance(computed: &[Complex64], expected: &[Complex64]) -> f64 {
    if computed.len() != expected.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; expected.len()];
    let mut worst: f64 = 0.0;
    for c in computed {
        let mut best = f64::INFINITY;
        let mut best_idx = None;
        for (idx, e) in expected.iter().enumerate() {
            if used[idx] {
                continue;
            }
            let d = (c - e).norm();
            if d < best {
                best = d;
                best_idx = Some(idx);
            }
        }
        match best_idx {
            Some(idx) => used[idx] = true,
            None => return f64::INFINITY,
        }
        worst = worst.max(best);
    }
    worst
}
