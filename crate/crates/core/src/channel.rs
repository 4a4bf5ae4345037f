//! BPSK over the binary-input AWGN channel: noise scaling, sampling, LLRs,
//! per-position reliabilities and vector posteriors.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::code::BinaryVector;
use crate::error::{check_len, param, Result};

/// Magnitude at which every LLR is clipped (natural-log units).
pub const L_MAX: f64 = 30.0;

#[inline]
pub fn clip_llr(l: f64) -> f64 {
    if l.is_nan() {
        0.0
    } else {
        l.clamp(-L_MAX, L_MAX)
    }
}

/// Noise level of a BPSK/AWGN link at a given Eb/N0 and code rate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelModel {
    pub sigma2: f64,
    pub rate: f64,
    pub ebn0_db: f64,
}

impl ChannelModel {
    pub fn sigma(&self) -> f64 {
        self.sigma2.sqrt()
    }
}

/// `σ² = 1 / (2 · R · 10^(Eb/N0 / 10))` for unit-energy BPSK.
pub fn ebn0_to_sigma(ebn0_db: f64, rate: f64) -> Result<ChannelModel> {
    if !(rate > 0.0 && rate <= 1.0) {
        return param(format!("rate must be in (0, 1], got {rate}"));
    }
    if !ebn0_db.is_finite() {
        return param(format!("Eb/N0 must be finite, got {ebn0_db}"));
    }
    let sigma2 = 1.0 / (2.0 * rate * 10f64.powf(ebn0_db / 10.0));
    if sigma2 <= 0.0 || sigma2.is_nan() {
        return param(format!("Eb/N0 {ebn0_db} dB underflows the noise variance"));
    }
    Ok(ChannelModel {
        sigma2,
        rate,
        ebn0_db,
    })
}

/// `y_i = x_i + z_i` with `0 ↦ +1`, `1 ↦ −1` and `z_i ~ N(0, σ²)`.
pub fn transmit<R: Rng + ?Sized>(codeword: &BinaryVector, model: &ChannelModel, rng: &mut R) -> Vec<f64> {
    let sigma = model.sigma();
    (0..codeword.len())
        .map(|i| {
            let x = if codeword.get(i) { -1.0 } else { 1.0 };
            let z: f64 = rng.sample(StandardNormal);
            x + sigma * z
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LlrRole {
    Channel,
    Input,
    Extrinsic,
    APosteriori,
}

/// A vector of LLRs `ln P(0)/P(1)`, clipped to `±L_MAX` on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct LlrVector {
    values: Vec<f64>,
    role: LlrRole,
}

impl LlrVector {
    pub fn new(mut values: Vec<f64>, role: LlrRole) -> Self {
        for v in &mut values {
            *v = clip_llr(*v);
        }
        Self { values, role }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn role(&self) -> LlrRole {
        self.role
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `L_i = (2/σ²) · y_i`, clipped.
pub fn channel_llr(y: &[f64], model: &ChannelModel) -> LlrVector {
    let scale = 2.0 / model.sigma2;
    LlrVector::new(y.iter().map(|v| scale * v).collect(), LlrRole::Channel)
}

/// Hard decisions and their correctness probabilities
/// `γ_i = 1/(1 + exp(−|L_i|))`, with cached logarithms.
#[derive(Clone, Debug)]
pub struct ReliabilityVector {
    pub hard: BinaryVector,
    pub abs_llr: Vec<f64>,
    pub gamma: Vec<f64>,
    pub log_gamma: Vec<f64>,
    pub log_one_minus_gamma: Vec<f64>,
}

impl ReliabilityVector {
    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }

    /// `ln P(ŷ | y) = Σ ln γ_i`.
    pub fn log_hard_posterior(&self) -> f64 {
        self.log_gamma.iter().sum()
    }

    /// `ln P(s | y_i)` for bit value `s`.
    #[inline]
    pub fn log_bit_prior(&self, i: usize, s: bool) -> f64 {
        if s == self.hard.get(i) {
            self.log_gamma[i]
        } else {
            self.log_one_minus_gamma[i]
        }
    }
}

pub fn reliability(llr: &LlrVector) -> ReliabilityVector {
    reliability_from_values(llr.values())
}

pub fn reliability_from_values(values: &[f64]) -> ReliabilityVector {
    let n = values.len();
    let mut hard = BinaryVector::zeros(n);
    let mut abs_llr = Vec::with_capacity(n);
    let mut gamma = Vec::with_capacity(n);
    let mut log_gamma = Vec::with_capacity(n);
    let mut log_one_minus_gamma = Vec::with_capacity(n);
    for (i, &l) in values.iter().enumerate() {
        let l = clip_llr(l);
        if l < 0.0 {
            hard.set(i, true);
        }
        let a = l.abs();
        let e = (-a).exp();
        let lg = -e.ln_1p();
        abs_llr.push(a);
        gamma.push(1.0 / (1.0 + e));
        log_gamma.push(lg);
        log_one_minus_gamma.push(lg - a);
    }
    ReliabilityVector {
        hard,
        abs_llr,
        gamma,
        log_gamma,
        log_one_minus_gamma,
    }
}

/// `ln P(v | y) = Σ_{v_i = ŷ_i} ln γ_i + Σ_{v_i ≠ ŷ_i} ln(1 − γ_i)`.
pub fn log_vector_posterior(v: &BinaryVector, rel: &ReliabilityVector) -> Result<f64> {
    check_len(rel.len(), v.len())?;
    Ok((0..v.len())
        .map(|i| {
            if v.get(i) == rel.hard.get(i) {
                rel.log_gamma[i]
            } else {
                rel.log_one_minus_gamma[i]
            }
        })
        .sum())
}

/// Same quantity through `ln P(ŷ | y) − Σ_{v_i ≠ ŷ_i} |L_i|`.
pub fn log_vector_posterior_by_flips(v: &BinaryVector, rel: &ReliabilityVector) -> Result<f64> {
    let diff = v.xor(&rel.hard)?;
    Ok(rel.log_hard_posterior() - diff.ones().map(|i| rel.abs_llr[i]).sum::<f64>())
}
