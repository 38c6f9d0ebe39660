//! Closed-form success probabilities under per-iteration depolarization.
//!
//! After `m` iterations the state is an explicit mixture
//! `rho_m = (1/N)(1 - (1-p)^m) I + (1-p)^m S^m rho_0 S†^m`, so every outcome
//! probability is the matching mixture of `1/N` and the noise-free
//! trigonometric expression. These evaluators are O(1) in `N` and are held
//! to the dense simulator in [`crate::sim`] at 1e-10 by the verification
//! suite.

use crate::error::{Error, Result};
use crate::grover::{self, DatabaseSpec};

/// Per-iteration depolarizing strength `p` in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    p: f64,
}

impl NoiseSpec {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(Error::NoiseOutOfRange(p));
        }
        Ok(Self { p })
    }

    pub fn noise_free() -> Self {
        Self { p: 0.0 }
    }

    pub fn strength(&self) -> f64 {
        self.p
    }
}

/// A symmetric detector-error POVM family: outcome `i` keeps weight
/// `1 - epsilon` on projector `i` and spreads `epsilon/(r-1)` over the rest.
///
/// `outcomes` (`r`) may exceed the database size; outcomes with index `>= N`
/// carry no diagonal weight. Column sums stay 1 whenever `r >= N`, which
/// [`lambda_weight`](PovmSpec::lambda_weight) callers must ensure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PovmSpec {
    epsilon: f64,
    outcomes: usize,
}

impl PovmSpec {
    pub fn new(epsilon: f64, outcomes: usize) -> Result<Self> {
        if !(0.0..1.0).contains(&epsilon) || epsilon.is_nan() {
            return Err(Error::EpsilonOutOfRange(epsilon));
        }
        if outcomes < 2 {
            return Err(Error::TooFewOutcomes(outcomes));
        }
        Ok(Self { epsilon, outcomes })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn outcomes(&self) -> usize {
        self.outcomes
    }

    /// Mixing weight `lambda_ij` from projector `j` into outcome `i`.
    pub fn lambda_weight(&self, outcome: usize, projector: usize) -> f64 {
        if outcome == projector {
            1.0 - self.epsilon
        } else {
            self.epsilon / (self.outcomes as f64 - 1.0)
        }
    }

    /// Fail unless the POVM covers every projector of a `dim`-dimensional
    /// state (`outcomes >= dim`), the condition for column-stochastic mixing.
    pub fn check_covers(&self, dim: usize) -> Result<()> {
        if self.outcomes < dim {
            return Err(Error::PovmTooSmall {
                outcomes: self.outcomes,
                dim,
            });
        }
        Ok(())
    }
}

fn survival(noise: &NoiseSpec, m: u32) -> f64 {
    (1.0 - noise.strength()).powi(m as i32)
}

/// Success probability after `m` noisy iterations under an orthogonal
/// measurement:
/// `(1/N)(1 - (1-p)^m) + (1-p)^m (1/N)(cos(m theta) + sqrt(N-1) sin(m theta))^2`.
pub fn noisy_success_prob(db: &DatabaseSpec, noise: &NoiseSpec, m: u32) -> f64 {
    let n = db.size() as f64;
    let s = survival(noise, m);
    (1.0 - s) / n + s * grover::noise_free_success_prob(db, m)
}

/// Probability of one particular unmarked record after `m` noisy iterations.
/// Satisfies `success + (N-1) * other = 1`.
pub fn noisy_other_prob(db: &DatabaseSpec, noise: &NoiseSpec, m: u32) -> f64 {
    let n = db.size() as f64;
    let s = survival(noise, m);
    (1.0 - s) / n + s * grover::noise_free_other_prob(db, m)
}

/// Success probability under the smeared POVM: the target outcome keeps
/// `1 - epsilon` of the orthogonal success probability and collects
/// `epsilon/(r-1)` of everything else.
pub fn povm_success_prob(
    db: &DatabaseSpec,
    noise: &NoiseSpec,
    povm: &PovmSpec,
    m: u32,
) -> Result<f64> {
    povm.check_covers(db.size())?;
    let ortho = noisy_success_prob(db, noise, m);
    let eps = povm.epsilon();
    let spread = eps / (povm.outcomes() as f64 - 1.0);
    Ok((1.0 - eps) * ortho + spread * (1.0 - ortho))
}

/// Success probability with `m` treated as a continuous variable; used by
/// the peak search in [`crate::analysis`].
pub fn success_prob_real_m(db: &DatabaseSpec, noise: &NoiseSpec, m: f64) -> f64 {
    let n = db.size() as f64;
    let s = (1.0 - noise.strength()).powf(m);
    (1.0 - s) / n + s * grover::success_amplitude_sq(db, m)
}
