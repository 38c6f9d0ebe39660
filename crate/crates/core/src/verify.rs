//! Cross-route verification: every closed form against the dense simulator,
//! every operator against its defining identities, every channel form
//! against the other. Returns counted reports rather than panicking so the
//! command-line `verify` front end can print a summary and exit nonzero on
//! the first broken invariant.

use crate::analytic::{
    noisy_other_prob, noisy_success_prob, povm_success_prob, NoiseSpec, PovmSpec,
};
use crate::channel::{
    apply_global_depolarizing, channel_form_defect, completeness_defect_on_grid, depolarizing_kraus,
};
use crate::density::DensityMatrix;
use crate::grover::{build_diffusion, build_grover_operator, build_oracle, DatabaseSpec};
use crate::numeric::{max_abs_diff, multiset_distance, unitary_eigenvalues};
use crate::sim::{measure_orthogonal, measure_povm, SimulationRun, StepOrder};
use crate::{grover, tol, CMat};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sizes exercised by the structural and equivalence suites.
const SUITE_SIZES: [usize; 5] = [2, 4, 8, 16, 32];
/// Noise strengths exercised by the equivalence suite.
const SUITE_STRENGTHS: [f64; 5] = [0.0, 0.01, 0.1, 0.5, 1.0];
/// Iterations simulated per (N, p) cell.
const SUITE_ITERATIONS: u32 = 50;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Largest database size the dense suites run at.
    pub max_n: usize,
    /// Seed for the randomized channel checks.
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { max_n: 32, seed: 0 }
    }
}

/// Outcome of one suite: how many checks ran, and the first failure if any.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: u64,
    pub failure: Option<String>,
}

impl SuiteReport {
    fn from_result(name: &'static str, result: Result<u64, (u64, String)>) -> Self {
        match result {
            Ok(checks) => SuiteReport {
                name,
                checks,
                failure: None,
            },
            Err((checks, failure)) => SuiteReport {
                name,
                checks,
                failure: Some(failure),
            },
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// All suite reports for one verification run.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn total_checks(&self) -> u64 {
        self.suites.iter().map(|s| s.checks).sum()
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.suites.iter().find_map(|s| s.failure.as_deref())
    }
}

/// Run every suite.
pub fn run_verification(config: &VerifyConfig) -> VerifyReport {
    VerifyReport {
        suites: vec![
            verify_structural(config.max_n),
            verify_channel(config.seed),
            verify_oracle_equivalence(config.max_n),
        ],
    }
}

struct Checker {
    checks: u64,
}

impl Checker {
    fn new() -> Self {
        Self { checks: 0 }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) -> Result<(), (u64, String)> {
        self.checks += 1;
        if ok {
            Ok(())
        } else {
            Err((self.checks, describe()))
        }
    }

    fn check_le(
        &mut self,
        value: f64,
        bound: f64,
        describe: impl FnOnce() -> String,
    ) -> Result<(), (u64, String)> {
        self.check(value <= bound, || {
            format!("{} ({value:.3e} > {bound:.0e})", describe())
        })
    }
}

/// A reproducible random density matrix: `A A† / tr(A A†)` with uniform
/// complex entries.
pub fn random_density_matrix<R: Rng>(n: usize, rng: &mut R) -> DensityMatrix {
    let a = CMat::from_fn(n, n, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let prod = &a * a.adjoint();
    let trace = prod.trace().re;
    DensityMatrix::from_matrix(prod * Complex64::new(1.0 / trace, 0.0)).expect("square")
}

/// Operator identities: involutions, unitarity and the spectrum of the
/// composite search operator.
pub fn verify_structural(max_n: usize) -> SuiteReport {
    SuiteReport::from_result("structural-operators", structural_impl(max_n))
}

fn structural_impl(max_n: usize) -> Result<u64, (u64, String)> {
    let mut c = Checker::new();
    for &n in SUITE_SIZES.iter().filter(|&&n| n <= max_n) {
        let id = CMat::identity(n, n);
        for target in [0, n / 2, n - 1] {
            let db = DatabaseSpec::new(n, target).expect("valid spec");
            let u = build_oracle(&db).expect("within dense cap");
            c.check_le(
                max_abs_diff(&(u.matrix() * u.matrix()), &id),
                tol::UNITARITY,
                || format!("oracle involution N={n} target={target}"),
            )?;
        }

        let d = build_diffusion(n).expect("within dense cap");
        c.check_le(
            max_abs_diff(&(d.matrix() * d.matrix()), &id),
            tol::UNITARITY,
            || format!("diffusion involution N={n}"),
        )?;

        let db = DatabaseSpec::of_size(n).expect("valid spec");
        let s = build_grover_operator(&db).expect("within dense cap");
        c.check_le(s.unitarity_defect(), tol::UNITARITY, || {
            format!("search operator unitarity N={n}")
        })?;

        let eigs = unitary_eigenvalues(s.matrix())
            .map_err(|e| (c.checks, format!("eigendecomposition N={n}: {e}")))?;
        for lambda in &eigs {
            c.check_le((lambda.norm() - 1.0).abs(), tol::UNITARITY, || {
                format!("eigenvalue modulus N={n}")
            })?;
        }
        c.check_le(
            multiset_distance(&eigs, &grover::expected_spectrum(&db)),
            tol::EIGENVALUE,
            || format!("eigenvalue multiset N={n}"),
        )?;
    }
    Ok(c.checks)
}

/// Channel identities: Kraus completeness, the 4/3 reparametrization between
/// the Kraus and isotropic forms, output validity and commutation with the
/// search operator.
pub fn verify_channel(seed: u64) -> SuiteReport {
    SuiteReport::from_result("depolarizing-channel", channel_impl(seed))
}

fn channel_impl(seed: u64) -> Result<u64, (u64, String)> {
    let mut c = Checker::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let defect = completeness_defect_on_grid(10).expect("grid in range");
    c.check_le(defect, tol::KRAUS_COMPLETENESS, || {
        "Kraus completeness on strength grid".into()
    })?;

    for q in [0.0, 0.1, 0.25, 0.5, 0.75] {
        for i in 0..20 {
            let rho = random_density_matrix(2, &mut rng);
            let defect = channel_form_defect(&rho, q).expect("q in range");
            c.check_le(defect, tol::CHANNEL_EQUIV, || {
                format!("Kraus(q)/isotropic(4q/3) equivalence q={q} sample {i}")
            })?;
        }
    }

    for n in [2usize, 4, 8] {
        let db = DatabaseSpec::of_size(n).expect("valid spec");
        let s = build_grover_operator(&db).expect("within dense cap");
        for i in 0..100 {
            let rho = random_density_matrix(n, &mut rng);
            let out = apply_global_depolarizing(&rho, 0.3).expect("p in range");
            c.check(out.validate().is_ok(), || {
                format!(
                    "isotropic output validity N={n} sample {i}: {}",
                    out.validate().unwrap_err()
                )
            })?;
            if n == 2 {
                let kraus = depolarizing_kraus(0.3).expect("p in range");
                let out = crate::channel::apply_kraus(&rho, &kraus).expect("dim 2");
                c.check(out.validate().is_ok(), || {
                    format!(
                        "Kraus output validity sample {i}: {}",
                        out.validate().unwrap_err()
                    )
                })?;
            }

            // V Phi(rho) V† = Phi(V rho V†)
            let lhs = s.matrix() * out.matrix() * s.matrix().adjoint();
            let conj = DensityMatrix::from_matrix(s.matrix() * rho.matrix() * s.matrix().adjoint())
                .expect("square");
            let rhs = apply_global_depolarizing(&conj, 0.3).expect("p in range");
            c.check_le(max_abs_diff(&lhs, rhs.matrix()), 1e-10, || {
                format!("channel/unitary commutation N={n} sample {i}")
            })?;
        }
    }
    Ok(c.checks)
}

/// The headline equivalence: closed-form orthogonal and POVM probabilities
/// against the dense simulator, state invariants after every step, the
/// induction closed form, step-order independence and target-index
/// symmetry.
pub fn verify_oracle_equivalence(max_n: usize) -> SuiteReport {
    SuiteReport::from_result("oracle-equivalence", equivalence_impl(max_n))
}

fn equivalence_impl(max_n: usize) -> Result<u64, (u64, String)> {
    let mut c = Checker::new();
    for &n in SUITE_SIZES.iter().filter(|&&n| n <= max_n) {
        let db = DatabaseSpec::of_size(n).expect("valid spec");
        let povm = PovmSpec::new(0.1, n + 3).expect("valid povm");
        for p in SUITE_STRENGTHS {
            let noise = NoiseSpec::new(p).expect("p in range");
            equivalence_cell(&mut c, &db, &noise, &povm)?;
        }

        // Target-index symmetry: the marked index must not change the curve.
        let noise = NoiseSpec::new(0.1).expect("p in range");
        let mut base = SimulationRun::new(db, noise).expect("within dense cap");
        let shifted_db = DatabaseSpec::new(n, n / 2).expect("valid spec");
        let mut shifted = SimulationRun::new(shifted_db, noise).expect("within dense cap");
        for m in 1..=SUITE_ITERATIONS {
            base.step();
            shifted.step();
            let a = measure_orthogonal(base.state(), base.db().target()).expect("in range");
            let b = measure_orthogonal(shifted.state(), shifted.db().target()).expect("in range");
            c.check_le((a - b).abs(), tol::CHANNEL_EQUIV, || {
                format!("target-index symmetry N={n} m={m}")
            })?;
        }
    }
    Ok(c.checks)
}

fn equivalence_cell(
    c: &mut Checker,
    db: &DatabaseSpec,
    noise: &NoiseSpec,
    povm: &PovmSpec,
) -> Result<(), (u64, String)> {
    let n = db.size();
    let p = noise.strength();
    let target = db.target();
    let other_index = (target + 1) % n;
    let zero_eps = PovmSpec::new(0.0, povm.outcomes()).expect("valid povm");

    let mut run = SimulationRun::new(*db, *noise).expect("within dense cap");
    let mut reversed =
        SimulationRun::with_order(*db, *noise, StepOrder::ChannelThenGrover).expect("cap");

    // Closed-form ingredients, maintained incrementally.
    let s = build_grover_operator(db).expect("within dense cap");
    let rho0 = crate::sim::uniform_initial_state(n).expect("within dense cap");
    let id = CMat::identity(n, n);
    let mut s_power = id.clone();

    let mut last_purity = f64::INFINITY;
    for m in 0..=SUITE_ITERATIONS {
        let state = run.state();
        let label = |what: &str| format!("{what} N={n} p={p} m={m}");

        // State invariants after every step.
        c.check_le(state.trace_defect(), tol::TRACE, || label("trace"))?;
        c.check_le(state.hermiticity_defect(), tol::HERMITICITY, || {
            label("hermiticity")
        })?;
        c.check(state.min_eigenvalue() >= tol::EIG_FLOOR, || {
            format!("{} ({:.3e})", label("positivity"), state.min_eigenvalue())
        })?;

        // Closed-form state from the induction formula.
        let survival = (1.0 - p).powi(m as i32);
        let closed = &id * Complex64::new((1.0 - survival) / n as f64, 0.0)
            + &s_power * rho0.matrix() * s_power.adjoint() * Complex64::new(survival, 0.0);
        c.check_le(
            max_abs_diff(state.matrix(), &closed),
            tol::ORACLE_MATCH,
            || label("closed-form state"),
        )?;

        // Step-order independence.
        c.check_le(
            max_abs_diff(state.matrix(), reversed.state().matrix()),
            tol::CHANNEL_EQUIV,
            || label("step-order independence"),
        )?;

        // Simulated vs analytic probabilities.
        let simulated = measure_orthogonal(state, target).expect("in range");
        let analytic = noisy_success_prob(db, noise, m);
        c.check_le((simulated - analytic).abs(), tol::ORACLE_MATCH, || {
            label("orthogonal success probability")
        })?;

        let simulated = measure_orthogonal(state, other_index).expect("in range");
        let analytic = noisy_other_prob(db, noise, m);
        c.check_le((simulated - analytic).abs(), tol::ORACLE_MATCH, || {
            label("orthogonal non-target probability")
        })?;

        for spec in [&zero_eps, povm] {
            let simulated = measure_povm(state, spec, target).expect("in range");
            let analytic = povm_success_prob(db, noise, spec, m).expect("covers dim");
            c.check_le((simulated - analytic).abs(), tol::ORACLE_MATCH, || {
                format!(
                    "{} eps={}",
                    label("POVM success probability"),
                    spec.epsilon()
                )
            })?;
        }

        // Outcome distributions stay normalized.
        let total: f64 = (0..n)
            .map(|i| measure_orthogonal(state, i).expect("in range"))
            .sum();
        c.check_le((total - 1.0).abs(), 1e-12, || {
            label("orthogonal normalization")
        })?;
        let total: f64 = (0..povm.outcomes())
            .map(|o| measure_povm(state, povm, o).expect("in range"))
            .sum();
        c.check_le((total - 1.0).abs(), 1e-12, || label("POVM normalization"))?;

        // Purity can only decay once noise acts.
        let purity = state.purity();
        if p > 0.0 {
            c.check(purity <= last_purity + 1e-13, || label("purity decay"))?;
        }
        last_purity = purity;

        if m < SUITE_ITERATIONS {
            run.step();
            reversed.step();
            s_power = &s_power * s.matrix();
        }
    }
    Ok(())
}
