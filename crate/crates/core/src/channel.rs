//! The depolarizing channel in both of its forms.
//!
//! The single-qubit Kraus set uses weight `p/3` per Pauli, the only weight
//! for which the completeness sum closes. Summing the Pauli conjugations
//! gives `rho -> (1 - 4p/3) rho + (4p/3) I/2`, so Kraus strength `q` equals
//! the isotropic form at strength `4q/3`; [`equivalent_isotropic_strength`]
//! records that reparametrization and the verification suite enforces it
//! numerically. All quantitative results in this crate use the isotropic
//! N-dimensional form `rho -> p I/N + (1-p) rho`.
//!
//! Note the isotropic form is *not* the tensor product of qubit channels on
//! log2(N) qubits; it mixes directly toward I/N in dimension N.

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::CMat;
use num_complex::Complex64;

/// A finite set of 2×2 Kraus operators with its depolarizing strength.
#[derive(Debug, Clone)]
pub struct KrausSet {
    ops: Vec<CMat>,
    strength: f64,
}

impl KrausSet {
    pub fn operators(&self) -> &[CMat] {
        &self.ops
    }

    pub fn strength(&self) -> f64 {
        self.strength
    }

    /// Max entry of `|sum_mu M_mu† M_mu - I|`.
    pub fn completeness_defect(&self) -> f64 {
        let dim = self.ops[0].nrows();
        let mut sum = CMat::zeros(dim, dim);
        for m in &self.ops {
            sum += m.adjoint() * m;
        }
        crate::numeric::max_abs_diff(&sum, &CMat::identity(dim, dim))
    }
}

/// The qubit depolarizing Kraus set
/// `{sqrt(1-p) I, sqrt(p/3) sx, sqrt(p/3) i sy, sqrt(p/3) sz}`.
pub fn depolarizing_kraus(p: f64) -> Result<KrausSet> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::NoiseOutOfRange(p));
    }
    let zero = Complex64::new(0.0, 0.0);
    let keep = Complex64::new((1.0 - p).sqrt(), 0.0);
    let flip = Complex64::new((p / 3.0).sqrt(), 0.0);

    let m0 = CMat::from_row_slice(2, 2, &[keep, zero, zero, keep]);
    // sqrt(p/3) * sigma_x
    let m1 = CMat::from_row_slice(2, 2, &[zero, flip, flip, zero]);
    // sqrt(p/3) * i sigma_y = [[0, sqrt(p/3)], [-sqrt(p/3), 0]] * ... with the
    // sign convention i*sy = [[0, 1], [-1, 0]]; conjugation by it equals
    // conjugation by sy, so the channel is the usual Pauli mixture.
    let m2 = CMat::from_row_slice(2, 2, &[zero, flip, -flip, zero]);
    // sqrt(p/3) * sigma_z
    let m3 = CMat::from_row_slice(2, 2, &[flip, zero, zero, -flip]);

    Ok(KrausSet {
        ops: vec![m0, m1, m2, m3],
        strength: p,
    })
}

/// Apply a Kraus set to a qubit state: `rho -> sum_mu M_mu rho M_mu†`.
pub fn apply_kraus(rho: &DensityMatrix, kraus: &KrausSet) -> Result<DensityMatrix> {
    let dim = kraus.ops[0].nrows();
    if rho.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: rho.dim(),
        });
    }
    let mut out = CMat::zeros(dim, dim);
    for m in &kraus.ops {
        out += m * rho.matrix() * m.adjoint();
    }
    DensityMatrix::from_matrix(out)
}

/// The isotropic N-dimensional depolarizing map
/// `rho -> p I/N + (1-p) rho`, for any dimension.
pub fn apply_global_depolarizing(rho: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::NoiseOutOfRange(p));
    }
    let n = rho.dim();
    let mixed = Complex64::new(p / n as f64, 0.0);
    let keep = Complex64::new(1.0 - p, 0.0);
    let out = CMat::identity(n, n) * mixed + rho.matrix() * keep;
    DensityMatrix::from_matrix(out)
}

/// Isotropic strength equivalent to the Kraus set at strength `q`:
/// `4q/3`, exact for all qubit states. Meaningful for `q` in [0, 3/4];
/// beyond that the "equivalent" strength exceeds 1.
pub fn equivalent_isotropic_strength(q: f64) -> f64 {
    4.0 * q / 3.0
}

/// Max entrywise difference between the two channel forms on one state:
/// Kraus at strength `q` vs isotropic at strength `4q/3`.
pub fn channel_form_defect(rho: &DensityMatrix, q: f64) -> Result<f64> {
    let kraus = depolarizing_kraus(q)?;
    let via_kraus = apply_kraus(rho, &kraus)?;
    let via_isotropic = apply_global_depolarizing(rho, equivalent_isotropic_strength(q))?;
    Ok(crate::numeric::max_abs_diff(
        via_kraus.matrix(),
        via_isotropic.matrix(),
    ))
}

/// Entrywise completeness defect on a strength grid; used by the
/// verification suite.
pub fn completeness_defect_on_grid(steps: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..=steps {
        let p = i as f64 / steps as f64;
        worst = worst.max(depolarizing_kraus(p)?.completeness_defect());
    }
    Ok(worst)
}
