//! wasm-bindgen bindings for the browser demo page in `www/`.
//!
//! Three operations back the page: a success-probability curve for the
//! sliders, the critical noise strength for the readout, and a peak-location
//! profile for the iterations-vs-noise plot. Everything here is a thin,
//! allocation-light wrapper over the closed forms in `grover-noise`; no
//! dense matrices are built, so sizes up to 2^20 stay interactive.

use grover_noise::analysis::{critical_p, mmax_noisy, IterationRule};
use grover_noise::analytic::{noisy_success_prob, povm_success_prob};
use grover_noise::{DatabaseSpec, NoiseSpec, PovmSpec};
use wasm_bindgen::prelude::*;

fn curve_impl(n: usize, p: f64, epsilon: f64, m_upper: u32) -> Result<Vec<f64>, String> {
    let db = DatabaseSpec::of_size(n).map_err(|e| e.to_string())?;
    let noise = NoiseSpec::new(p).map_err(|e| e.to_string())?;
    let povm = if epsilon > 0.0 {
        Some(PovmSpec::new(epsilon, n + 3).map_err(|e| e.to_string())?)
    } else {
        None
    };
    (0..=m_upper)
        .map(|m| match &povm {
            Some(spec) => povm_success_prob(&db, &noise, spec, m).map_err(|e| e.to_string()),
            None => Ok(noisy_success_prob(&db, &noise, m)),
        })
        .collect()
}

fn critical_noise_impl(n: usize) -> f64 {
    critical_p(n, IterationRule::FloorPiSqrtN)
        .map(|c| c.p_c)
        .unwrap_or(f64::NAN)
}

fn peak_profile_impl(n: usize, p_max: f64, samples: u32) -> Result<Vec<f64>, String> {
    let db = DatabaseSpec::of_size(n).map_err(|e| e.to_string())?;
    if samples < 2 {
        return Err("need at least 2 samples".into());
    }
    let p_max = p_max.clamp(0.0, 0.999);
    let mut flat = Vec::with_capacity(3 * samples as usize);
    for i in 0..samples {
        let p = p_max * f64::from(i) / f64::from(samples - 1);
        let noise = NoiseSpec::new(p).map_err(|e| e.to_string())?;
        let peak = mmax_noisy(&db, &noise).map_err(|e| e.to_string())?;
        flat.extend_from_slice(&[p, peak.m_continuous, peak.peak_prob]);
    }
    Ok(flat)
}

/// Success probability at every iteration count `0..=m_upper` for database
/// size `n` and noise strength `p`. With `epsilon > 0` the probability is
/// measured through the symmetric detector-error POVM with `n + 3` outcomes.
#[wasm_bindgen]
pub fn success_curve(n: u32, p: f64, epsilon: f64, m_upper: u32) -> Result<Vec<f64>, JsValue> {
    curve_impl(n as usize, p, epsilon, m_upper).map_err(|e| JsValue::from_str(&e))
}

/// Largest noise strength at which `floor(pi sqrt(N)/4)` iterations still
/// reach success probability one half. `NaN` when no threshold exists
/// (N = 2).
#[wasm_bindgen]
pub fn critical_noise(n: u32) -> f64 {
    critical_noise_impl(n as usize)
}

/// Flattened `(p, m_continuous, peak_prob)` triples for `samples` noise
/// strengths evenly spaced on `[0, p_max]`.
#[wasm_bindgen]
pub fn peak_profile(n: u32, p_max: f64, samples: u32) -> Result<Vec<f64>, JsValue> {
    peak_profile_impl(n as usize, p_max, samples).map_err(|e| JsValue::from_str(&e))
}
