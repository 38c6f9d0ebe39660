//! Quantitative analysis of the noisy search: where the success probability
//! peaks, how hard it may be hit by depolarization before the search stops
//! beating a coin flip, and the sweep tables behind all of it.

use crate::analytic::{
    noisy_success_prob, povm_success_prob, success_prob_real_m, NoiseSpec, PovmSpec,
};
use crate::error::{Error, Result};
use crate::grover::{continuous_peak, noise_free_success_prob, DatabaseSpec};
use crate::numeric::{bisect_decreasing, golden_section_max, linear_fit};
use crate::tol;
use std::f64::consts::PI;

/// How the iteration count is fixed when solving for the critical noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IterationRule {
    /// `floor(pi sqrt(N) / 4)`, the large-N rule.
    #[default]
    FloorPiSqrtN,
    /// Exact integer argmax of the noise-free success probability.
    IntegerArgmax,
}

/// First maximum of the noisy success probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakResult {
    /// Maximizer with the iteration count treated as continuous.
    pub m_continuous: f64,
    /// Best integer iteration count near the continuous maximizer.
    pub m_integer: u32,
    /// Success probability at `m_integer`.
    pub peak_prob: f64,
}

/// The largest depolarizing strength at which `m_max` iterations still
/// succeed with probability one half.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalNoise {
    pub size: usize,
    /// Iteration count the threshold was solved at.
    pub m_max: u32,
    pub p_c: f64,
}

impl CriticalNoise {
    /// `log2(N)` when the size is a power of two.
    pub fn log2_exponent(&self) -> Option<u32> {
        self.size
            .is_power_of_two()
            .then(|| self.size.trailing_zeros())
    }
}

/// A sampled success-probability curve and the parameters that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityCurve {
    pub size: usize,
    pub noise: f64,
    pub povm: Option<PovmSpec>,
    /// `(m, probability)` with `m` strictly increasing.
    pub points: Vec<(u32, f64)>,
}

/// One row of the iteration-rule comparison table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuleComparison {
    pub p: f64,
    pub m_fit: u32,
    pub m_pi: u32,
    pub prob_fit: f64,
    pub prob_pi: f64,
    pub abs_diff: f64,
}

/// Noise-free optimal iteration count by the large-N rule,
/// `floor(pi sqrt(N) / 4)`.
pub fn mmax_noise_free(n: usize) -> u32 {
    (PI * (n as f64).sqrt() / 4.0).floor() as u32
}

/// Exact integer argmax of the noise-free success probability around its
/// first maximum. Can differ from [`mmax_noise_free`] by one for small `N`.
pub fn noise_free_integer_argmax(db: &DatabaseSpec) -> u32 {
    let m_star = continuous_peak(db);
    let lo = m_star.floor().max(0.0) as u32;
    let hi = m_star.ceil().max(0.0) as u32;
    if noise_free_success_prob(db, hi) > noise_free_success_prob(db, lo) {
        hi
    } else {
        lo
    }
}

fn iterations_for_rule(db: &DatabaseSpec, rule: IterationRule) -> u32 {
    match rule {
        IterationRule::FloorPiSqrtN => mmax_noise_free(db.size()),
        IterationRule::IntegerArgmax => noise_free_integer_argmax(db),
    }
}

/// Locate the first maximum of the noisy success probability.
///
/// The continuous maximizer comes from a golden-section search on
/// `[1, 1.5 (pi - theta)/(2 theta)]`, which contains the first damped peak
/// and ends before the following trough; the integer result is the better
/// of the two integers bracketing it. Requires `p < 1` (at `p = 1` the
/// probability is flat at `1/N` from the first iteration on).
pub fn mmax_noisy(db: &DatabaseSpec, noise: &NoiseSpec) -> Result<PeakResult> {
    if noise.strength() >= 1.0 {
        return Err(Error::NoiseSaturated(noise.strength()));
    }
    let hi = (1.5 * continuous_peak(db)).max(1.0 + 1e-6);
    let (m_continuous, _) = golden_section_max(
        |m| success_prob_real_m(db, noise, m),
        1.0,
        hi,
        tol::PEAK_SEARCH,
    );

    let lo = m_continuous.floor().max(0.0) as u32;
    let hi = m_continuous.ceil().max(0.0) as u32;
    let p_lo = noisy_success_prob(db, noise, lo);
    let p_hi = noisy_success_prob(db, noise, hi);
    let (m_integer, peak_prob) = if p_hi > p_lo { (hi, p_hi) } else { (lo, p_lo) };

    Ok(PeakResult {
        m_continuous,
        m_integer,
        peak_prob,
    })
}

/// Left-minus-right residual of the stationarity condition quoted for the
/// noisy peak: with `zeta = 2 (2m + 1) theta`,
/// `m/(1-p) (1 - (N/2)(1 - cos zeta)) - (N zeta / (2m + 1)) sin zeta`.
///
/// Exposed as a diagnostic only: the residual at the directly located
/// maximum is reported, never solved for. (It does not vanish there; the
/// direct search is the authority.)
pub fn transcendental_residual(db: &DatabaseSpec, noise: &NoiseSpec, m: f64) -> f64 {
    let n = db.size() as f64;
    let theta = db.angle().theta();
    let zeta = 2.0 * (2.0 * m + 1.0) * theta;
    let lhs = m / (1.0 - noise.strength()) * (1.0 - n / 2.0 * (1.0 - zeta.cos()));
    let rhs = n * zeta / (2.0 * m + 1.0) * zeta.sin();
    lhs - rhs
}

/// Solve `P(m_max; p) = 1/2` for `p`.
///
/// `P(m_max; p)` is strictly decreasing in `p` whenever the noise-free value
/// exceeds `1/N`, so bisection finds the unique root; the interval is
/// bisected until it can no longer split in f64. Fails with
/// [`Error::NoThreshold`] when even the noise-free probability does not
/// exceed one half (e.g. N = 2, where the probability is pinned at 1/2).
pub fn critical_p(n: usize, rule: IterationRule) -> Result<CriticalNoise> {
    let db = DatabaseSpec::of_size(n)?;
    let m_max = iterations_for_rule(&db, rule);
    let goal = |p: f64| {
        let noise = NoiseSpec::new(p).expect("bisection stays in [0, 1]");
        noisy_success_prob(&db, &noise, m_max) - 0.5
    };
    if goal(0.0) <= 1e-12 {
        return Err(Error::NoThreshold);
    }
    let p_c = bisect_decreasing(goal, 0.0, 1.0);
    Ok(CriticalNoise {
        size: n,
        m_max,
        p_c,
    })
}

/// Critical noise for every power of two `N = 2^n` with `n` in
/// `[n_min, n_max]`.
pub fn pc_sweep(n_min: u32, n_max: u32, rule: IterationRule) -> Result<Vec<CriticalNoise>> {
    (n_min..=n_max)
        .map(|expo| critical_p(1usize << expo, rule))
        .collect()
}

/// Log-log slope of `p_c` against `N` over a sweep: the empirical scaling
/// exponent (about -1/2 for large N).
pub fn scaling_exponent(sweep: &[CriticalNoise]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = sweep
        .iter()
        .map(|c| ((c.size as f64).ln(), c.p_c.ln()))
        .collect();
    linear_fit(&pts).map(|(_, slope)| slope)
}

/// `points` evenly spaced noise strengths spanning `[0, p_c(N)]`.
pub fn default_p_grid(n: usize, points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::DegenerateGrid(points));
    }
    let p_c = critical_p(n, IterationRule::FloorPiSqrtN)?.p_c;
    Ok((0..points)
        .map(|i| p_c * i as f64 / (points - 1) as f64)
        .collect())
}

/// Least-squares line through `(p, m_continuous(p))` samples:
/// returns `(intercept, slope)`. The peak location falls off nearly
/// linearly in `p`, with slope about `-1/(2 theta^2)`.
pub fn fit_mmax_vs_p(db: &DatabaseSpec, p_grid: &[f64]) -> Result<(f64, f64)> {
    let mut pts = Vec::with_capacity(p_grid.len());
    for &p in p_grid {
        let noise = NoiseSpec::new(p)?;
        let peak = mmax_noisy(db, &noise)?;
        pts.push((p, peak.m_continuous));
    }
    linear_fit(&pts)
}

/// Evaluate the success probability at every integer `m` in `[0, m_upper]`,
/// under the POVM when one is supplied.
pub fn probability_curve(
    db: &DatabaseSpec,
    noise: &NoiseSpec,
    povm: Option<&PovmSpec>,
    m_upper: u32,
) -> Result<ProbabilityCurve> {
    let mut points = Vec::with_capacity(m_upper as usize + 1);
    for m in 0..=m_upper {
        let prob = match povm {
            Some(spec) => povm_success_prob(db, noise, spec, m)?,
            None => noisy_success_prob(db, noise, m),
        };
        points.push((m, prob));
    }
    Ok(ProbabilityCurve {
        size: db.size(),
        noise: noise.strength(),
        povm: povm.copied(),
        points,
    })
}

/// For each `p` in the grid, success probability with the iteration count
/// from the linear fit vs the `pi sqrt(N)/4` rule. The fit is taken over
/// 50 evenly spaced points in `[0, p_c]`.
pub fn compare_iteration_rules(db: &DatabaseSpec, p_grid: &[f64]) -> Result<Vec<RuleComparison>> {
    let (intercept, slope) = fit_mmax_vs_p(db, &default_p_grid(db.size(), 50)?)?;
    let m_pi = mmax_noise_free(db.size());
    p_grid
        .iter()
        .map(|&p| {
            let noise = NoiseSpec::new(p)?;
            let m_fit = (intercept + slope * p).floor().max(0.0) as u32;
            let prob_fit = noisy_success_prob(db, &noise, m_fit);
            let prob_pi = noisy_success_prob(db, &noise, m_pi);
            Ok(RuleComparison {
                p,
                m_fit,
                m_pi,
                prob_fit,
                prob_pi,
                abs_diff: (prob_fit - prob_pi).abs(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noise_free_rule_values() {
        assert_eq!(mmax_noise_free(4), 1);
        assert_eq!(mmax_noise_free(128), 8);
        assert_eq!(mmax_noise_free(1024), 25);
        assert_eq!(mmax_noise_free(1 << 21), 1137);
    }

    #[test]
    fn floor_rule_tracks_exact_argmax_within_one() {
        for n in [4usize, 5, 8, 10, 16, 100, 128, 500, 1024] {
            let db = DatabaseSpec::of_size(n).unwrap();
            let floor_rule = mmax_noise_free(n) as i64;
            let argmax = noise_free_integer_argmax(&db) as i64;
            assert!(
                (floor_rule - argmax).abs() <= 1,
                "N={n}: floor {floor_rule} vs argmax {argmax}"
            );
        }
    }

    #[test]
    fn noiseless_peak_matches_closed_form() {
        for n in [16usize, 128, 1024] {
            let db = DatabaseSpec::of_size(n).unwrap();
            let peak = mmax_noisy(&db, &NoiseSpec::noise_free()).unwrap();
            let m_star = continuous_peak(&db);
            assert!(
                (peak.m_continuous - m_star).abs() < 1e-6,
                "N={n}: {} vs {m_star}",
                peak.m_continuous
            );
            assert!((peak.m_continuous - peak.m_integer as f64).abs() <= 1.0);
        }
    }

    #[test]
    fn shifted_peak_n1024() {
        let db = DatabaseSpec::of_size(1024).unwrap();
        let noise = NoiseSpec::new(0.0274).unwrap();
        let peak = mmax_noisy(&db, &noise).unwrap();
        assert_eq!(peak.m_integer, 21);
        assert!((peak.m_continuous - 21.133978).abs() < 1e-4);
        assert!((peak.peak_prob - 0.530193319183).abs() < 1e-8);
        // the located integer beats both neighbors
        for m in [20u32, 22] {
            assert!(peak.peak_prob >= noisy_success_prob(&db, &noise, m));
        }
    }

    #[test]
    fn peak_location_decreases_with_noise() {
        let db = DatabaseSpec::of_size(1024).unwrap();
        let mut last = f64::INFINITY;
        for i in 0..=10 {
            let p = 0.0274 * i as f64 / 10.0;
            let peak = mmax_noisy(&db, &NoiseSpec::new(p).unwrap()).unwrap();
            assert!(peak.m_continuous < last + 1e-9, "p={p}");
            last = peak.m_continuous;
        }
    }

    #[test]
    fn peak_search_rejects_saturated_noise() {
        let db = DatabaseSpec::of_size(16).unwrap();
        assert!(mmax_noisy(&db, &NoiseSpec::new(1.0).unwrap()).is_err());
    }

    #[test]
    fn transcendental_residual_exact_anchor() {
        // N=4, p=0, m=1: zeta = 6 theta = 2 pi, so the left side is exactly
        // m and the right side vanishes.
        let db = DatabaseSpec::of_size(4).unwrap();
        let r = transcendental_residual(&db, &NoiseSpec::noise_free(), 1.0);
        assert!((r - 1.0).abs() < 1e-9);
    }

    #[test]
    fn transcendental_residual_does_not_vanish_at_true_peak() {
        // The quoted stationarity condition is checked, not trusted: at the
        // directly located maximum its residual is far from zero.
        let db = DatabaseSpec::of_size(1024).unwrap();

        let m_star = continuous_peak(&db);
        let r0 = transcendental_residual(&db, &NoiseSpec::noise_free(), m_star);
        assert!((r0 - m_star).abs() < 1e-9);

        let noise = NoiseSpec::new(0.014).unwrap();
        let peak = mmax_noisy(&db, &noise).unwrap();
        let r = transcendental_residual(&db, &noise, peak.m_continuous);
        assert!((peak.m_continuous - 22.834).abs() < 1e-2);
        assert!((r - (-1095.28)).abs() < 0.05, "residual {r}");
    }

    #[test]
    fn critical_noise_paper_scale_values() {
        let rule = IterationRule::FloorPiSqrtN;
        let c128 = critical_p(128, rule).unwrap();
        assert_eq!(c128.m_max, 8);
        assert!((c128.p_c - 0.083394856).abs() < 1e-6);

        let c1024 = critical_p(1024, rule).unwrap();
        assert_eq!(c1024.m_max, 25);
        assert!((c1024.p_c - 0.027362115).abs() < 1e-6);

        let big = critical_p(1 << 21, rule).unwrap();
        assert_eq!(big.m_max, 1137);
        assert!((big.p_c - 0.000609443).abs() < 1e-8);
        assert_eq!(big.log2_exponent(), Some(21));
    }

    #[test]
    fn critical_noise_exact_small_case() {
        // N=4: P(1; p) = 1 - 3p/4, so the threshold is exactly 2/3.
        let c = critical_p(4, IterationRule::FloorPiSqrtN).unwrap();
        assert_eq!(c.m_max, 1);
        assert!((c.p_c - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn critical_noise_root_is_a_root() {
        for n in [4usize, 37, 128, 1024, 1 << 21] {
            let c = critical_p(n, IterationRule::FloorPiSqrtN).unwrap();
            let db = DatabaseSpec::of_size(n).unwrap();
            let noise = NoiseSpec::new(c.p_c).unwrap();
            let residual = noisy_success_prob(&db, &noise, c.m_max) - 0.5;
            assert!(residual.abs() < 1e-7, "N={n}: residual {residual}");
        }
    }

    #[test]
    fn success_at_mmax_decreases_in_noise() {
        // Grid check behind the bisection's uniqueness argument. Strict
        // decrease holds until (1-p)^m underflows past the value's ulp,
        // after which the probability sits exactly at 1/N.
        for n in [4usize, 128, 1024] {
            let db = DatabaseSpec::of_size(n).unwrap();
            let m = mmax_noise_free(n);
            let mut last = f64::INFINITY;
            for i in 0..=50 {
                let p = i as f64 / 50.0;
                let value = noisy_success_prob(&db, &NoiseSpec::new(p).unwrap(), m);
                if (1.0 - p).powi(m as i32) > 1e-12 {
                    assert!(value < last, "N={n} p={p}");
                } else {
                    assert!(value <= last, "N={n} p={p}");
                }
                last = value;
            }
        }
    }

    #[test]
    fn no_threshold_for_two_records() {
        // N=2 sits exactly at 1/2 for every m and p.
        assert!(matches!(
            critical_p(2, IterationRule::FloorPiSqrtN),
            Err(Error::NoThreshold)
        ));
    }

    #[test]
    fn three_records_still_have_a_threshold() {
        let c = critical_p(3, IterationRule::FloorPiSqrtN).unwrap();
        assert!(c.p_c > 0.5 && c.p_c < 1.0);
    }

    #[test]
    fn argmax_rule_matches_floor_rule_at_1024() {
        let a = critical_p(1024, IterationRule::FloorPiSqrtN).unwrap();
        let b = critical_p(1024, IterationRule::IntegerArgmax).unwrap();
        assert_eq!(a.m_max, b.m_max);
        assert_eq!(a.p_c, b.p_c);
    }

    #[test]
    fn sweep_is_monotone_and_hits_endpoints() {
        let sweep = pc_sweep(2, 21, IterationRule::FloorPiSqrtN).unwrap();
        assert_eq!(sweep.len(), 20);
        for pair in sweep.windows(2) {
            assert!(pair[1].p_c < pair[0].p_c, "p_c not decreasing in N");
        }
        let by_expo = |e: u32| sweep.iter().find(|c| c.log2_exponent() == Some(e)).unwrap();
        assert!((by_expo(7).p_c - 0.083394856).abs() < 1e-6);
        assert!((by_expo(21).p_c - 0.000609443).abs() < 1e-8);
    }

    #[test]
    fn scaling_exponent_is_about_minus_half() {
        let sweep = pc_sweep(10, 21, IterationRule::FloorPiSqrtN).unwrap();
        let slope = scaling_exponent(&sweep).unwrap();
        assert!((slope - (-0.4997)).abs() < 3e-3, "slope {slope}");
    }

    #[test]
    fn linear_fit_of_peak_location_n1024() {
        let db = DatabaseSpec::of_size(1024).unwrap();
        let grid = default_p_grid(1024, 50).unwrap();
        assert_eq!(grid.len(), 50);
        assert_eq!(grid[0], 0.0);
        let (intercept, slope) = fit_mmax_vs_p(&db, &grid).unwrap();
        assert!((intercept - 24.6254).abs() / 24.6254 < 1e-3, "{intercept}");
        assert!((slope - (-127.735)).abs() / 127.735 < 1e-3, "{slope}");
        // the intercept reproduces the noise-free continuous peak
        assert!((intercept - continuous_peak(&db)).abs() < 0.05);

        // residuals stay tiny relative to the swept range of m
        let mut worst: f64 = 0.0;
        for &p in &grid {
            let m = mmax_noisy(&db, &NoiseSpec::new(p).unwrap())
                .unwrap()
                .m_continuous;
            worst = worst.max((m - (intercept + slope * p)).abs());
        }
        let range = continuous_peak(&db) - (intercept + slope * grid[49]);
        assert!(worst / range < 0.01, "residual ratio {}", worst / range);
    }

    #[test]
    fn default_grid_needs_two_points() {
        assert!(default_p_grid(1024, 1).is_err());
    }

    #[test]
    fn curve_evaluates_the_right_formula() {
        let db = DatabaseSpec::of_size(128).unwrap();
        let noise = NoiseSpec::new(0.04).unwrap();
        let curve = probability_curve(&db, &noise, None, 60).unwrap();
        assert_eq!(curve.points.len(), 61);
        for (i, &(m, prob)) in curve.points.iter().enumerate() {
            assert_eq!(m as usize, i);
            assert!((prob - noisy_success_prob(&db, &noise, m)).abs() < 1e-15);
            assert!((0.0..=1.0).contains(&prob));
        }

        let povm = PovmSpec::new(0.1, 131).unwrap();
        let curve = probability_curve(&db, &noise, Some(&povm), 10).unwrap();
        for &(m, prob) in &curve.points {
            let want = povm_success_prob(&db, &noise, &povm, m).unwrap();
            assert!((prob - want).abs() < 1e-15);
        }
    }

    #[test]
    fn rule_comparison_n1024() {
        let db = DatabaseSpec::of_size(1024).unwrap();
        let grid = default_p_grid(1024, 50).unwrap();
        let rows = compare_iteration_rules(&db, &grid).unwrap();
        assert_eq!(rows.len(), 50);

        // at p = 0 the two rules straddle the continuous peak
        assert_eq!(rows[0].m_fit, 24);
        assert_eq!(rows[0].m_pi, 25);
        assert!((rows[0].abs_diff - 0.0010049).abs() < 1e-5);

        let worst = rows.iter().map(|r| r.abs_diff).fold(0.0, f64::max);
        assert!(worst < 0.05, "worst rule difference {worst}");
    }
}
