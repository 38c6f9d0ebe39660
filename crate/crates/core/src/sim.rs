//! Brute-force dense simulation of the noisy search iteration. This module
//! is the ground truth: it does nothing smarter than full N×N complex
//! conjugations and explicit mixing, so every closed form in the crate can
//! be checked against it.

use crate::analytic::{NoiseSpec, PovmSpec};
use crate::channel::apply_global_depolarizing;
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::grover::{build_grover_operator, DatabaseSpec, UnitaryMatrix};
use crate::{CMat, DENSE_CAP};
use num_complex::Complex64;

/// Whether a step applies the search operator before or after the channel.
/// The two orders produce identical states because the channel's fixed
/// point `I/N` is unitarily invariant; the simulator keeps both so the
/// equality is tested instead of assumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StepOrder {
    #[default]
    GroverThenChannel,
    ChannelThenGrover,
}

/// A stepwise noisy search simulation: owns the current state and the
/// iteration count that produced it.
#[derive(Debug, Clone)]
pub struct SimulationRun {
    db: DatabaseSpec,
    noise: NoiseSpec,
    grover: UnitaryMatrix,
    state: DensityMatrix,
    iterations: u32,
    order: StepOrder,
}

impl SimulationRun {
    pub fn new(db: DatabaseSpec, noise: NoiseSpec) -> Result<Self> {
        Self::with_order(db, noise, StepOrder::default())
    }

    pub fn with_order(db: DatabaseSpec, noise: NoiseSpec, order: StepOrder) -> Result<Self> {
        let grover = build_grover_operator(&db)?;
        let state = uniform_initial_state(db.size())?;
        Ok(Self {
            db,
            noise,
            grover,
            state,
            iterations: 0,
            order,
        })
    }

    pub fn db(&self) -> &DatabaseSpec {
        &self.db
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn iterations(&self) -> u32 {
        self.iterations
    }

    /// Advance one iteration: one conjugation by `S` and one channel
    /// application, in this run's configured order.
    pub fn step(&mut self) {
        let p = self.noise.strength();
        self.state = match self.order {
            StepOrder::GroverThenChannel => {
                let rotated = self.conjugate(&self.state);
                apply_global_depolarizing(&rotated, p).expect("validated strength")
            }
            StepOrder::ChannelThenGrover => {
                let mixed = apply_global_depolarizing(&self.state, p).expect("validated strength");
                self.conjugate(&mixed)
            }
        };
        self.iterations += 1;
    }

    fn conjugate(&self, rho: &DensityMatrix) -> DensityMatrix {
        let s = self.grover.matrix();
        DensityMatrix::from_matrix(s * rho.matrix() * s.adjoint()).expect("square product")
    }
}

/// The uniform superposition as a density matrix: every entry `1/N`.
pub fn uniform_initial_state(n: usize) -> Result<DensityMatrix> {
    if n < 2 {
        return Err(Error::DatabaseTooSmall(n));
    }
    if n > DENSE_CAP {
        return Err(Error::DenseCapExceeded { n, cap: DENSE_CAP });
    }
    let w = Complex64::new(1.0 / n as f64, 0.0);
    DensityMatrix::from_matrix(CMat::from_element(n, n, w))
}

/// Run `m` noisy iterations from the uniform state and return the final
/// density matrix.
pub fn run_noisy_grover(db: &DatabaseSpec, noise: &NoiseSpec, m: u32) -> Result<DensityMatrix> {
    let mut run = SimulationRun::new(*db, *noise)?;
    for _ in 0..m {
        run.step();
    }
    Ok(run.state)
}

/// The same state built in one shot from the induction closed form:
/// `(1/N)(1 - (1-p)^m) I + (1-p)^m S^m rho_0 S†^m`.
pub fn closed_form_state(db: &DatabaseSpec, noise: &NoiseSpec, m: u32) -> Result<DensityMatrix> {
    let n = db.size();
    let s = build_grover_operator(db)?;
    let rho0 = uniform_initial_state(n)?;

    let mut s_m = CMat::identity(n, n);
    for _ in 0..m {
        s_m *= s.matrix();
    }
    let rotated = &s_m * rho0.matrix() * s_m.adjoint();

    let survival = (1.0 - noise.strength()).powi(m as i32);
    let mixed = Complex64::new((1.0 - survival) / n as f64, 0.0);
    let keep = Complex64::new(survival, 0.0);
    DensityMatrix::from_matrix(CMat::identity(n, n) * mixed + rotated * keep)
}

/// Born-rule probability of basis outcome `index`: the real diagonal entry.
pub fn measure_orthogonal(rho: &DensityMatrix, index: usize) -> Result<f64> {
    rho.diagonal_prob(index)
}

/// Probability of POVM outcome `outcome`: `sum_j lambda_{outcome,j} <j|rho|j>`.
pub fn measure_povm(rho: &DensityMatrix, povm: &PovmSpec, outcome: usize) -> Result<f64> {
    povm.check_covers(rho.dim())?;
    if outcome >= povm.outcomes() {
        return Err(Error::IndexOutOfRange {
            index: outcome,
            limit: povm.outcomes(),
        });
    }
    let mut total = 0.0;
    for j in 0..rho.dim() {
        total += povm.lambda_weight(outcome, j) * rho.diagonal_prob(j)?;
    }
    Ok(total)
}

/// The dephased post-measurement mixture `sum_i E_i rho E_i`: the diagonal
/// of `rho`. No result depends on it; it completes the measurement model.
pub fn dephased_state(rho: &DensityMatrix) -> DensityMatrix {
    let n = rho.dim();
    let diag = CMat::from_fn(n, n, |i, j| {
        if i == j {
            rho.entry(i, i)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    DensityMatrix::from_matrix(diag).expect("square")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{noisy_success_prob, povm_success_prob};
    use crate::numeric::max_abs_diff;
    use crate::tol;

    #[test]
    fn uniform_state_small_cases() {
        let rho = uniform_initial_state(2).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((rho.entry(i, j) - Complex64::new(0.5, 0.0)).norm() < 1e-15);
            }
        }
        assert!(uniform_initial_state(1).is_err());
        assert!(uniform_initial_state(DENSE_CAP + 1).is_err());
    }

    #[test]
    fn uniform_state_is_a_rank_one_projector() {
        for n in [2usize, 4, 7] {
            let rho = uniform_initial_state(n).unwrap();
            rho.validate().unwrap();
            let sq = rho.matrix() * rho.matrix();
            assert!(max_abs_diff(&sq, rho.matrix()) < 1e-14, "N={n}");
            assert!((rho.purity() - 1.0).abs() < 1e-13, "N={n}");
        }
        // eigenvalues {1, 0, 0, 0}
        let rho = uniform_initial_state(4).unwrap();
        let eigs = rho.matrix().clone().symmetric_eigen().eigenvalues;
        let mut sorted: Vec<f64> = eigs.iter().copied().collect();
        sorted.sort_by(f64::total_cmp);
        assert!(sorted[3] - 1.0 < 1e-13 && (sorted[3] - 1.0).abs() < 1e-13);
        for &e in &sorted[..3] {
            assert!(e.abs() < 1e-13);
        }
    }

    #[test]
    fn noiseless_step_is_pure_conjugation() {
        let db = DatabaseSpec::of_size(4).unwrap();
        let mut run = SimulationRun::new(db, NoiseSpec::noise_free()).unwrap();
        run.step();
        let s = build_grover_operator(&db).unwrap();
        let rho0 = uniform_initial_state(4).unwrap();
        let direct = s.matrix() * rho0.matrix() * s.matrix().adjoint();
        assert!(max_abs_diff(run.state().matrix(), &direct) < 1e-14);
    }

    #[test]
    fn saturated_step_lands_on_maximally_mixed() {
        let db = DatabaseSpec::of_size(4).unwrap();
        let mut run = SimulationRun::new(db, NoiseSpec::new(1.0).unwrap()).unwrap();
        run.step();
        let mixed = DensityMatrix::maximally_mixed(4).unwrap();
        assert!(max_abs_diff(run.state().matrix(), mixed.matrix()) < 1e-15);
    }

    #[test]
    fn single_step_target_population() {
        let db = DatabaseSpec::of_size(4).unwrap();
        let mut run = SimulationRun::new(db, NoiseSpec::new(0.1).unwrap()).unwrap();
        run.step();
        let p = measure_orthogonal(run.state(), 0).unwrap();
        assert!((p - 0.925).abs() < 1e-12);
    }

    #[test]
    fn stepping_matches_closed_form() {
        let db = DatabaseSpec::of_size(8).unwrap();
        let noise = NoiseSpec::new(0.2).unwrap();
        let stepped = run_noisy_grover(&db, &noise, 5).unwrap();
        let direct = closed_form_state(&db, &noise, 5).unwrap();
        assert!(max_abs_diff(stepped.matrix(), direct.matrix()) < tol::ORACLE_MATCH);
    }

    #[test]
    fn zero_iterations_returns_initial_state() {
        let db = DatabaseSpec::of_size(8).unwrap();
        let noise = NoiseSpec::new(0.7).unwrap();
        let rho = run_noisy_grover(&db, &noise, 0).unwrap();
        let rho0 = uniform_initial_state(8).unwrap();
        assert!(max_abs_diff(rho.matrix(), rho0.matrix()) < 1e-15);
    }

    #[test]
    fn step_order_does_not_matter() {
        let db = DatabaseSpec::of_size(4).unwrap();
        let noise = NoiseSpec::new(0.3).unwrap();
        let mut a = SimulationRun::with_order(db, noise, StepOrder::GroverThenChannel).unwrap();
        let mut b = SimulationRun::with_order(db, noise, StepOrder::ChannelThenGrover).unwrap();
        for _ in 0..7 {
            a.step();
            b.step();
            assert!(
                max_abs_diff(a.state().matrix(), b.state().matrix()) < tol::CHANNEL_EQUIV,
                "diverged at m={}",
                a.iterations()
            );
        }
    }

    #[test]
    fn states_stay_valid_while_stepping() {
        let db = DatabaseSpec::of_size(8).unwrap();
        let mut run = SimulationRun::new(db, NoiseSpec::new(0.1).unwrap()).unwrap();
        for _ in 0..30 {
            run.step();
            run.state().validate().unwrap();
        }
    }

    #[test]
    fn purity_never_increases_under_noise() {
        let db = DatabaseSpec::of_size(8).unwrap();
        let mut run = SimulationRun::new(db, NoiseSpec::new(0.1).unwrap()).unwrap();
        let mut last = run.state().purity();
        for _ in 0..20 {
            run.step();
            let purity = run.state().purity();
            assert!(purity <= last + 1e-13, "m={}", run.iterations());
            last = purity;
        }
    }

    #[test]
    fn orthogonal_measurement_matches_analytic() {
        let db = DatabaseSpec::of_size(16).unwrap();
        let noise = NoiseSpec::new(0.05).unwrap();
        let rho = run_noisy_grover(&db, &noise, 3).unwrap();
        let simulated = measure_orthogonal(&rho, 0).unwrap();
        let analytic = noisy_success_prob(&db, &noise, 3);
        assert!((simulated - analytic).abs() < tol::ORACLE_MATCH);

        let total: f64 = (0..16).map(|i| measure_orthogonal(&rho, i).unwrap()).sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(measure_orthogonal(&rho, 16).is_err());
    }

    #[test]
    fn orthogonal_measurement_on_flat_states() {
        let mixed = DensityMatrix::maximally_mixed(8).unwrap();
        let uniform = uniform_initial_state(8).unwrap();
        for i in 0..8 {
            assert!((measure_orthogonal(&mixed, i).unwrap() - 0.125).abs() < 1e-15);
            assert!((measure_orthogonal(&uniform, i).unwrap() - 0.125).abs() < 1e-15);
        }
    }

    #[test]
    fn povm_measurement_reduces_to_orthogonal_at_zero_epsilon() {
        let db = DatabaseSpec::of_size(8).unwrap();
        let noise = NoiseSpec::new(0.1).unwrap();
        let rho = run_noisy_grover(&db, &noise, 4).unwrap();
        let povm = PovmSpec::new(0.0, 8).unwrap();
        for outcome in 0..8 {
            let a = measure_povm(&rho, &povm, outcome).unwrap();
            let b = measure_orthogonal(&rho, outcome).unwrap();
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn povm_outcomes_total_one_and_match_analytic() {
        let db = DatabaseSpec::of_size(8).unwrap();
        let noise = NoiseSpec::new(0.04).unwrap();
        let povm = PovmSpec::new(0.1, 11).unwrap();
        let rho = run_noisy_grover(&db, &noise, 6).unwrap();

        let total: f64 = (0..11).map(|o| measure_povm(&rho, &povm, o).unwrap()).sum();
        assert!((total - 1.0).abs() < 1e-12);

        let simulated = measure_povm(&rho, &povm, 0).unwrap();
        let analytic = povm_success_prob(&db, &noise, &povm, 6).unwrap();
        assert!((simulated - analytic).abs() < tol::ORACLE_MATCH);
    }

    #[test]
    fn povm_on_mixed_state_examples() {
        let mixed = DensityMatrix::maximally_mixed(4).unwrap();
        // r = N keeps a uniform diagonal uniform.
        let povm = PovmSpec::new(0.1, 4).unwrap();
        assert!((measure_povm(&mixed, &povm, 0).unwrap() - 0.25).abs() < 1e-15);
        // r = N + 1 bleeds weight into the dummy outcome.
        let povm = PovmSpec::new(0.1, 5).unwrap();
        assert!((measure_povm(&mixed, &povm, 0).unwrap() - 0.24375).abs() < 1e-15);
        // the dummy outcome has no diagonal weight of its own
        assert!((measure_povm(&mixed, &povm, 4).unwrap() - 0.025).abs() < 1e-15);
    }

    #[test]
    fn povm_measurement_bounds_checked() {
        let rho = DensityMatrix::maximally_mixed(4).unwrap();
        let povm = PovmSpec::new(0.1, 5).unwrap();
        assert!(measure_povm(&rho, &povm, 5).is_err());
        let small = PovmSpec::new(0.1, 3).unwrap();
        assert!(measure_povm(&rho, &small, 0).is_err());
    }

    #[test]
    fn success_probability_is_target_independent() {
        let noise = NoiseSpec::new(0.08).unwrap();
        let reference = {
            let db = DatabaseSpec::new(8, 0).unwrap();
            let rho = run_noisy_grover(&db, &noise, 5).unwrap();
            measure_orthogonal(&rho, 0).unwrap()
        };
        for target in [2usize, 7] {
            let db = DatabaseSpec::new(8, target).unwrap();
            let rho = run_noisy_grover(&db, &noise, 5).unwrap();
            let p = measure_orthogonal(&rho, target).unwrap();
            assert!((p - reference).abs() < 1e-12, "target={target}");
        }
    }

    #[test]
    fn dephased_state_keeps_the_diagonal() {
        let db = DatabaseSpec::of_size(4).unwrap();
        let noise = NoiseSpec::new(0.2).unwrap();
        let rho = run_noisy_grover(&db, &noise, 2).unwrap();
        let deph = dephased_state(&rho);
        deph.validate().unwrap();
        for i in 0..4 {
            assert!((deph.diagonal_prob(i).unwrap() - rho.diagonal_prob(i).unwrap()).abs() < 1e-15);
            for j in 0..4 {
                if i != j {
                    assert!(deph.entry(i, j).norm() == 0.0);
                }
            }
        }
    }

    #[test]
    fn dense_cap_enforced() {
        let db = DatabaseSpec::of_size(DENSE_CAP + 1).unwrap();
        assert!(SimulationRun::new(db, NoiseSpec::noise_free()).is_err());
        assert!(run_noisy_grover(&db, &NoiseSpec::noise_free(), 1).is_err());
        assert!(closed_form_state(&db, &NoiseSpec::noise_free(), 1).is_err());
    }
}
