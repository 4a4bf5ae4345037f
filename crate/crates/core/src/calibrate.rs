//! Bitwise mutual information and greedy schedule search.
//!
//! The soft output judged after half iteration `h` is the total belief
//! `L^in + α·(L^app − L^in)`, so every `α` on the grid is scored from a
//! single decoding pass per `β`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::ebn0_to_sigma;
use crate::code::{BinaryVector, ProductCode};
use crate::error::{param, Result};
use crate::simulate::{draw_frame, frame_rng};
use crate::tpd::{HalfIterationSchedule, TpdConfig, TurboDecoder};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BmiSample {
    /// Transmitted antipodal symbol, `+1` for bit 0.
    pub x: f64,
    pub l: f64,
}

/// `log₂(1 + e^{−z})` without overflow.
#[inline]
pub fn log2_one_plus_exp_neg(z: f64) -> f64 {
    let u = -z;
    (u.max(0.0) + (-u.abs()).exp().ln_1p()) / std::f64::consts::LN_2
}

/// `1 − mean log₂(1 + exp(−x·l))`.
pub fn estimate_bmi(samples: &[BmiSample]) -> Result<f64> {
    if samples.is_empty() {
        return param("BMI needs at least one sample");
    }
    let loss: f64 = samples.iter().map(|s| log2_one_plus_exp_neg(s.x * s.l)).sum();
    Ok(1.0 - loss / samples.len() as f64)
}

/// BMI estimate with its standard error from per-frame means.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BmiEstimate {
    pub bmi: f64,
    pub std_error: f64,
    pub frames: usize,
}

impl BmiEstimate {
    pub fn from_frame_values(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return param("BMI needs at least one frame");
        }
        let f = values.len() as f64;
        let mean = values.iter().sum::<f64>() / f;
        let var = if values.len() > 1 {
            values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (f - 1.0)
        } else {
            0.0
        };
        Ok(Self {
            bmi: mean,
            std_error: (var / f).sqrt(),
            frames: values.len(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub alpha_grid: Vec<f64>,
    /// Candidate `β` values for decoders that use them.
    pub beta_grid: Vec<f64>,
    pub frames_per_point: usize,
    pub design_ebn0_db: f64,
    /// Optimize only the first this many half iterations; later entries
    /// keep the template's values.
    pub half_iterations: Option<usize>,
}

impl GridSpec {
    pub fn new(design_ebn0_db: f64) -> Self {
        Self {
            alpha_grid: default_alpha_grid(),
            beta_grid: default_beta_grid(),
            frames_per_point: 200,
            design_ebn0_db,
            half_iterations: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha_grid.is_empty() {
            return param("α grid is empty");
        }
        if self.beta_grid.is_empty() {
            return param("β grid is empty");
        }
        if self.frames_per_point == 0 {
            return param("frames_per_point must be at least 1");
        }
        if self.alpha_grid.iter().chain(&self.beta_grid).any(|v| !v.is_finite() || *v < 0.0) {
            return param("grid values must be finite and non-negative");
        }
        Ok(())
    }
}

/// `0.10, 0.12, …, 1.60`.
pub fn default_alpha_grid() -> Vec<f64> {
    (0..=75).map(|i| (10 + 2 * i) as f64 / 100.0).collect()
}

/// Ten points per decade from `1e-10` to `1e1`.
pub fn default_beta_grid() -> Vec<f64> {
    (0..=110).map(|i| 10f64.powf(-10.0 + i as f64 / 10.0)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub half_iteration: usize,
    pub alpha: f64,
    pub beta: Option<f64>,
    pub bmi: BmiEstimate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrationResult {
    pub schedule: HalfIterationSchedule,
    /// Every evaluated grid point, for audit.
    pub table: Vec<GridPoint>,
}

/// Per-frame BMI of `L^in + α·(L^app − L^in)` for each `α`.
fn frame_bmi_per_alpha(l_in: &[f64], l_app: &[f64], codeword: &[BinaryVector], alphas: &[f64]) -> Vec<f64> {
    let n = codeword.len();
    let mut loss = vec![0.0; alphas.len()];
    for (idx, (&li, &la)) in l_in.iter().zip(l_app).enumerate() {
        let x = if codeword[idx / n].get(idx % n) { -1.0 } else { 1.0 };
        let d = la - li;
        for (acc, &a) in loss.iter_mut().zip(alphas) {
            *acc += log2_one_plus_exp_neg(x * (li + a * d));
        }
    }
    let count = l_in.len() as f64;
    loss.into_iter().map(|s| 1.0 - s / count).collect()
}

/// Frames for calibration at half iteration `h`: seeds never coincide with
/// those of [`crate::simulate::run_point`] for the same master seed.
fn calibration_rng(seed: u64, frame: u64) -> rand_chacha::ChaCha8Rng {
    frame_rng(seed ^ 0x5eed_ca11_b7a7_e000, frame)
}

/// BMI after half iteration `h` (0-based) for every `α`, with the schedule
/// of `cfg` used up to and including `h`.
pub fn bmi_after_half_iteration(
    code: &ProductCode,
    cfg: &TpdConfig,
    h: usize,
    alphas: &[f64],
    ebn0_db: f64,
    frames: usize,
    seed: u64,
) -> Result<Vec<BmiEstimate>> {
    let model = ebn0_to_sigma(ebn0_db, code.rate())?;
    let cfg = cfg.clone().with_amplitude_scale(2.0 / model.sigma2);
    let decoder = TurboDecoder::new(code, cfg)?;
    let per_frame: Vec<Vec<f64>> = (0..frames as u64)
        .into_par_iter()
        .map(|f| -> Result<Vec<f64>> {
            let mut rng = calibration_rng(seed, f);
            let frame = draw_frame(code, &model, &mut rng)?;
            let trace = decoder.soft_prefix(&frame.l_ch, h + 1)?;
            let last = trace.last().expect("at least one half iteration");
            Ok(frame_bmi_per_alpha(&last.l_in, &last.l_app, &frame.codeword, alphas))
        })
        .collect::<Result<_>>()?;
    (0..alphas.len())
        .map(|a| BmiEstimate::from_frame_values(&per_frame.iter().map(|v| v[a]).collect::<Vec<_>>()))
        .collect()
}

/// Greedy per-half-iteration search maximizing BMI at the design point.
///
/// Half iterations are optimized in order with earlier ones frozen. Ties
/// go to the smaller `α`, then the smaller `β`.
pub fn optimize_schedule(
    code: &ProductCode,
    template: &TpdConfig,
    grid: &GridSpec,
    seed: u64,
) -> Result<CalibrationResult> {
    grid.validate()?;
    template.validate(code.component())?;
    let count = template.soft_half_iterations();
    let limit = grid.half_iterations.unwrap_or(count).min(count);
    let mut alphas = grid.alpha_grid.clone();
    alphas.sort_by(f64::total_cmp);
    alphas.dedup();
    let betas: Vec<Option<f64>> = if template.kind.uses_beta() {
        let mut b = grid.beta_grid.clone();
        b.sort_by(f64::total_cmp);
        b.dedup();
        b.into_iter().map(Some).collect()
    } else {
        vec![None]
    };

    let mut cfg = template.clone();
    let mut table = Vec::new();
    for h in 0..limit {
        let mut best: Option<(f64, f64, Option<f64>)> = None;
        for &beta in &betas {
            if let (Some(b), Some(sched)) = (beta, cfg.schedule.beta.as_mut()) {
                sched[h] = b;
            }
            let estimates = bmi_after_half_iteration(
                code,
                &cfg,
                h,
                &alphas,
                grid.design_ebn0_db,
                grid.frames_per_point,
                seed,
            )?;
            for (&alpha, est) in alphas.iter().zip(estimates) {
                table.push(GridPoint {
                    half_iteration: h,
                    alpha,
                    beta,
                    bmi: est,
                });
                if best.is_none_or(|(b, _, _)| est.bmi > b) {
                    best = Some((est.bmi, alpha, beta));
                }
            }
        }
        let (_, alpha, beta) = best.expect("non-empty grid");
        cfg.schedule.alpha[h] = alpha;
        if let (Some(b), Some(sched)) = (beta, cfg.schedule.beta.as_mut()) {
            sched[h] = b;
        }
    }
    Ok(CalibrationResult {
        schedule: cfg.schedule,
        table,
    })
}
