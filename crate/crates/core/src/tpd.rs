//! Turbo product decoding: alternating row and column soft-in soft-out
//! half iterations with scaled extrinsic exchange.
//!
//! Matrices are `n × n` and stored row-major, entry `(r, c)` at `r·n + c`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channel::{clip_llr, reliability_from_values};
use crate::chase::{run_chase_relative, run_chase_with, ChaseConfig, ChaseResult};
use crate::code::{BinaryVector, ComponentCode, ProductCode};
use crate::error::{check_len, param, Error, Result};
use crate::softout::{cp_extrinsic, exact_app_llr_with_codebook, socs_llr, CoveredSpaceSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecoderKind {
    /// Chase-Pyndiah with the classic fixed schedule in amplitude units.
    CpClassic,
    /// Chase-Pyndiah with an LLR-domain schedule.
    CpOptimized,
    SocsBeta,
    SocsBallList,
    SocsBallTestwords,
    SocsTestwords,
    /// Exact codebook APP; only for codes with small `k`.
    ExactApp,
}

impl DecoderKind {
    pub const ALL: [DecoderKind; 7] = [
        DecoderKind::CpClassic,
        DecoderKind::CpOptimized,
        DecoderKind::SocsBeta,
        DecoderKind::SocsBallList,
        DecoderKind::SocsBallTestwords,
        DecoderKind::SocsTestwords,
        DecoderKind::ExactApp,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            DecoderKind::CpClassic => "cp-classic",
            DecoderKind::CpOptimized => "cp-optimized",
            DecoderKind::SocsBeta => "socs-beta",
            DecoderKind::SocsBallList => "socs-ball-list",
            DecoderKind::SocsBallTestwords => "socs-ball-testwords",
            DecoderKind::SocsTestwords => "socs-testwords",
            DecoderKind::ExactApp => "exact-app",
        }
    }

    pub fn uses_beta(&self) -> bool {
        matches!(self, DecoderKind::CpClassic | DecoderKind::CpOptimized | DecoderKind::SocsBeta)
    }

    pub fn uses_radius(&self) -> bool {
        matches!(self, DecoderKind::SocsBallList | DecoderKind::SocsBallTestwords)
    }

    pub fn is_chase_pyndiah(&self) -> bool {
        matches!(self, DecoderKind::CpClassic | DecoderKind::CpOptimized)
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DecoderKind::ALL
            .into_iter()
            .find(|k| k.label() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown decoder '{s}'")))
    }
}

/// Per-half-iteration scaling `α` and, for decoders that use it, `β`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfIterationSchedule {
    pub alpha: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<f64>>,
}

impl HalfIterationSchedule {
    pub fn new(alpha: Vec<f64>, beta: Option<Vec<f64>>) -> Result<Self> {
        let s = Self { alpha, beta };
        s.validate()?;
        Ok(s)
    }

    /// Same `α` (and `β`) for every one of `count` half iterations.
    pub fn constant(count: usize, alpha: f64, beta: Option<f64>) -> Self {
        Self {
            alpha: vec![alpha; count],
            beta: beta.map(|b| vec![b; count]),
        }
    }

    pub fn count(&self) -> usize {
        self.alpha.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha.iter().any(|a| !a.is_finite() || *a < 0.0) {
            return param("α values must be finite and non-negative");
        }
        if let Some(beta) = &self.beta {
            if beta.len() != self.alpha.len() {
                return param(format!(
                    "β schedule has {} entries, α schedule has {}",
                    beta.len(),
                    self.alpha.len()
                ));
            }
            if beta.iter().any(|b| !b.is_finite() || *b < 0.0) {
                return param("β values must be finite and non-negative");
            }
        }
        Ok(())
    }

    pub fn beta_at(&self, h: usize) -> Option<f64> {
        self.beta.as_ref().map(|b| b[h])
    }

    /// The classic Chase-Pyndiah schedule for seven soft half iterations,
    /// `β` in amplitude units.
    pub fn cp_classic() -> Self {
        Self {
            alpha: vec![0.2, 0.3, 0.5, 0.7, 0.9, 1.0, 1.0],
            beta: Some(vec![0.2, 0.4, 0.6, 0.8, 1.0, 1.0, 1.0]),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dimension {
    Rows,
    Columns,
}

impl Dimension {
    pub fn other(self) -> Self {
        match self {
            Dimension::Rows => Dimension::Columns,
            Dimension::Columns => Dimension::Rows,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TpdConfig {
    pub kind: DecoderKind,
    /// Full iterations; there are `2·iterations` half iterations, the last
    /// of which makes hard decisions.
    pub iterations: usize,
    pub chase: ChaseConfig,
    pub schedule: HalfIterationSchedule,
    /// Ball radius for the ball-based covered-space variants.
    pub radius: usize,
    /// Dimension decoded in the first half iteration.
    pub first: Dimension,
    /// LLR units per unit of received amplitude, `2/σ²`. Only the classic
    /// Chase-Pyndiah decoder uses it.
    pub amplitude_scale: f64,
    pub keep_trace: bool,
}

impl TpdConfig {
    pub fn new(kind: DecoderKind, iterations: usize, chase_p: usize, schedule: HalfIterationSchedule) -> Result<Self> {
        let cfg = Self {
            kind,
            iterations,
            chase: ChaseConfig::new(chase_p)?,
            schedule,
            radius: 0,
            first: Dimension::Rows,
            amplitude_scale: 1.0,
            keep_trace: false,
        };
        cfg.validate_schedule()?;
        Ok(cfg)
    }

    pub fn with_radius(mut self, r: usize) -> Self {
        self.radius = r;
        self
    }

    pub fn with_first(mut self, first: Dimension) -> Self {
        self.first = first;
        self
    }

    pub fn with_amplitude_scale(mut self, scale: f64) -> Self {
        self.amplitude_scale = scale;
        self
    }

    pub fn with_trace(mut self, keep: bool) -> Self {
        self.keep_trace = keep;
        self
    }

    pub fn soft_half_iterations(&self) -> usize {
        (2 * self.iterations).saturating_sub(1)
    }

    fn validate_schedule(&self) -> Result<()> {
        if self.iterations == 0 {
            return param("at least one iteration is required");
        }
        self.schedule.validate()?;
        if self.schedule.count() != self.soft_half_iterations() {
            return param(format!(
                "{} iterations need {} scheduled half iterations, got {}",
                self.iterations,
                self.soft_half_iterations(),
                self.schedule.count()
            ));
        }
        if self.kind.uses_beta() && self.schedule.beta.is_none() {
            return param(format!("decoder {} needs a β schedule", self.kind));
        }
        Ok(())
    }

    /// Checks the configuration against a component code.
    pub fn validate(&self, code: &ComponentCode) -> Result<()> {
        self.validate_schedule()?;
        if !(self.amplitude_scale.is_finite() && self.amplitude_scale > 0.0) {
            return param("amplitude scale must be positive");
        }
        if self.kind.uses_radius() {
            self.covered_spec(0).validate(code)?;
        }
        if self.kind == DecoderKind::ExactApp && code.k() > crate::code::MAX_ENUMERABLE_K {
            return Err(Error::Refused(format!(
                "exact APP needs k ≤ {}, got {}",
                crate::code::MAX_ENUMERABLE_K,
                code.k()
            )));
        }
        Ok(())
    }

    fn covered_spec(&self, h: usize) -> CoveredSpaceSpec {
        match self.kind {
            DecoderKind::SocsBeta => CoveredSpaceSpec::ConstantBeta(self.schedule.beta_at(h).unwrap_or(0.0)),
            DecoderKind::SocsBallList => CoveredSpaceSpec::BallsAroundList(self.radius),
            DecoderKind::SocsBallTestwords => CoveredSpaceSpec::BallsAroundTestwords(self.radius),
            _ => CoveredSpaceSpec::TestwordsOnly,
        }
    }
}

/// Input and raw a-posteriori LLRs of one soft half iteration, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfIterationTrace {
    pub dimension: Dimension,
    pub l_in: Vec<f64>,
    pub l_app: Vec<f64>,
    /// Extrinsic passed on, `α·(l_app − l_in)` unless the decoder normalizes.
    pub extrinsic: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TpdOutput {
    /// Decided array, `n` rows of length `n`.
    pub hard: Vec<BinaryVector>,
    pub trace: Option<Vec<HalfIterationTrace>>,
    /// Component decodes whose Chase list came back empty.
    pub empty_lists: usize,
}

/// Reusable decoder bound to a product code.
#[derive(Clone, Debug)]
pub struct TurboDecoder {
    code: ProductCode,
    cfg: TpdConfig,
    codebook: Option<Vec<BinaryVector>>,
}

impl TurboDecoder {
    pub fn new(code: &ProductCode, cfg: TpdConfig) -> Result<Self> {
        cfg.validate(code.component())?;
        let codebook = if cfg.kind == DecoderKind::ExactApp {
            Some(code.component().enumerate_codebook()?)
        } else {
            None
        };
        Ok(Self {
            code: code.clone(),
            cfg,
            codebook,
        })
    }

    pub fn config(&self) -> &TpdConfig {
        &self.cfg
    }

    pub fn code(&self) -> &ProductCode {
        &self.code
    }

    /// Full decode: all soft half iterations and the final hard decision.
    pub fn decode(&self, l_ch: &[f64]) -> Result<TpdOutput> {
        self.run(l_ch, self.cfg.soft_half_iterations(), true)
    }

    /// Runs only the first `count` soft half iterations and returns their
    /// traces; no hard decision is made.
    pub fn soft_prefix(&self, l_ch: &[f64], count: usize) -> Result<Vec<HalfIterationTrace>> {
        if count > self.cfg.soft_half_iterations() {
            return param(format!(
                "only {} soft half iterations are configured",
                self.cfg.soft_half_iterations()
            ));
        }
        let mut out = self.run_with_trace(l_ch, count, false, true)?;
        Ok(out.trace.take().unwrap_or_default())
    }

    fn run(&self, l_ch: &[f64], soft: usize, finish: bool) -> Result<TpdOutput> {
        self.run_with_trace(l_ch, soft, finish, self.cfg.keep_trace)
    }

    fn run_with_trace(&self, l_ch: &[f64], soft: usize, finish: bool, keep: bool) -> Result<TpdOutput> {
        let n = self.code.n();
        check_len(n * n, l_ch.len())?;
        let component = self.code.component();
        // Extrinsic produced by the row and by the column decoders.
        let mut ext_rows = vec![0.0; n * n];
        let mut ext_cols = vec![0.0; n * n];
        let mut trace = keep.then(Vec::new);
        let mut empty_lists = 0;
        let mut dim = self.cfg.first;
        let mut l_in = vec![0.0; n];
        let mut l_app_all = vec![0.0; n * n];
        let mut l_in_all = vec![0.0; n * n];

        for h in 0..soft {
            let other = match dim {
                Dimension::Rows => &ext_cols,
                Dimension::Columns => &ext_rows,
            };
            for v in 0..n {
                for (j, slot) in l_in.iter_mut().enumerate() {
                    let idx = index(dim, v, j, n);
                    *slot = clip_llr(l_ch[idx] + other[idx]);
                }
                let (l_app, empty) = self.soft_component(component, &l_in, h)?;
                empty_lists += usize::from(empty);
                for j in 0..n {
                    let idx = index(dim, v, j, n);
                    l_in_all[idx] = l_in[j];
                    l_app_all[idx] = l_app[j];
                }
            }
            let ext = self.extrinsic(&l_in_all, &l_app_all, h);
            if let Some(t) = trace.as_mut() {
                t.push(HalfIterationTrace {
                    dimension: dim,
                    l_in: l_in_all.clone(),
                    l_app: l_app_all.clone(),
                    extrinsic: ext.clone(),
                });
            }
            match dim {
                Dimension::Rows => ext_rows = ext,
                Dimension::Columns => ext_cols = ext,
            }
            dim = dim.other();
        }

        let mut hard = vec![BinaryVector::zeros(n); n];
        if finish {
            let other = match dim {
                Dimension::Rows => &ext_cols,
                Dimension::Columns => &ext_rows,
            };
            for v in 0..n {
                for (j, slot) in l_in.iter_mut().enumerate() {
                    let idx = index(dim, v, j, n);
                    *slot = clip_llr(l_ch[idx] + other[idx]);
                }
                let (word, empty) = self.hard_component(component, &l_in)?;
                empty_lists += usize::from(empty);
                for j in word.ones() {
                    match dim {
                        Dimension::Rows => hard[v].set(j, true),
                        Dimension::Columns => hard[j].set(v, true),
                    }
                }
            }
        }
        Ok(TpdOutput {
            hard,
            trace,
            empty_lists,
        })
    }

    /// Raw a-posteriori LLRs of one component vector and whether its list
    /// was empty.
    fn soft_component(&self, code: &ComponentCode, l_in: &[f64], h: usize) -> Result<(Vec<f64>, bool)> {
        let cfg = &self.cfg;
        let rel = reliability_from_values(l_in);
        match cfg.kind {
            DecoderKind::CpClassic | DecoderKind::CpOptimized => {
                let chase = run_chase_relative(code, &rel.hard, &rel.abs_llr, cfg.chase)?;
                let beta = cfg.schedule.beta_at(h).unwrap_or(0.0);
                let beta = if cfg.kind == DecoderKind::CpClassic {
                    beta * cfg.amplitude_scale
                } else {
                    beta
                };
                let out = cp_extrinsic(&chase, l_in, 1.0, beta)?;
                Ok((out.l_app, out.empty_list))
            }
            DecoderKind::ExactApp => {
                let book = self.codebook.as_ref().expect("codebook built for exact APP");
                Ok((exact_app_llr_with_codebook(book, &rel).into_values(), false))
            }
            _ => {
                let chase = run_chase_with(code, &rel, cfg.chase)?;
                let out = socs_llr(&chase, &rel, cfg.covered_spec(h), code)?;
                Ok((out.l_app, out.empty_list))
            }
        }
    }

    /// Most likely list candidate, `ŷ` on an empty list.
    fn hard_component(&self, code: &ComponentCode, l_in: &[f64]) -> Result<(BinaryVector, bool)> {
        let rel = reliability_from_values(l_in);
        if self.cfg.kind == DecoderKind::ExactApp {
            let book = self.codebook.as_ref().expect("codebook built for exact APP");
            let best = book
                .iter()
                .min_by(|a, b| {
                    flip_metric(a, &rel.hard, &rel.abs_llr)
                        .partial_cmp(&flip_metric(b, &rel.hard, &rel.abs_llr))
                        .expect("finite metric")
                })
                .expect("non-empty codebook");
            return Ok((best.clone(), false));
        }
        let chase: ChaseResult = run_chase_relative(code, &rel.hard, &rel.abs_llr, self.cfg.chase)?;
        Ok(match chase.best() {
            Some(b) => (chase.candidates[b].codeword(&chase.hard), false),
            None => (rel.hard, true),
        })
    }

    fn extrinsic(&self, l_in: &[f64], l_app: &[f64], h: usize) -> Vec<f64> {
        let alpha = self.cfg.schedule.alpha[h];
        l_app.iter().zip(l_in).map(|(a, l)| alpha * (a - l)).collect()
    }
}

fn flip_metric(c: &BinaryVector, hard: &BinaryVector, abs_llr: &[f64]) -> f64 {
    (0..c.len()).filter(|&i| c.get(i) != hard.get(i)).map(|i| abs_llr[i]).sum()
}

#[inline]
fn index(dim: Dimension, v: usize, j: usize, n: usize) -> usize {
    match dim {
        Dimension::Rows => v * n + j,
        Dimension::Columns => j * n + v,
    }
}

/// One-shot turbo product decode.
pub fn tpd_decode(code: &ProductCode, l_ch: &[f64], cfg: &TpdConfig) -> Result<TpdOutput> {
    TurboDecoder::new(code, cfg.clone())?.decode(l_ch)
}

/// Flattens an array of rows into row-major bits.
pub fn flatten(rows: &[BinaryVector]) -> Vec<bool> {
    rows.iter().flat_map(|r| (0..r.len()).map(move |i| r.get(i))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{channel_llr, ebn0_to_sigma, transmit};
    use crate::chase::run_chase_relative;
    use crate::code::transpose;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn eh8() -> ProductCode {
        ProductCode::new(ComponentCode::extended_hamming(3).unwrap())
    }

    fn noisy_frame(code: &ProductCode, ebn0: f64, seed: u64) -> (Vec<BinaryVector>, Vec<f64>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = code.k();
        let msg: Vec<BinaryVector> = (0..k)
            .map(|_| BinaryVector::from_bits(&(0..k).map(|_| rng.random::<bool>() as u8).collect::<Vec<_>>()))
            .collect();
        let cw = code.encode(&msg).unwrap();
        let model = ebn0_to_sigma(ebn0, code.rate()).unwrap();
        let l: Vec<f64> = cw
            .iter()
            .flat_map(|r| channel_llr(&transmit(r, &model, &mut rng), &model).into_values())
            .collect();
        (cw, l)
    }

    fn config(kind: DecoderKind, iterations: usize, alpha: f64) -> TpdConfig {
        let count = 2 * iterations - 1;
        let beta = kind.uses_beta().then_some(0.3);
        let radius = if kind.uses_radius() { 1 } else { 0 };
        TpdConfig::new(kind, iterations, 3, HalfIterationSchedule::constant(count, alpha, beta))
            .unwrap()
            .with_radius(radius)
    }

    #[test]
    fn noiseless_frame_is_returned_after_one_half_iteration() {
        let code = ProductCode::new(ComponentCode::extended_hamming(8).unwrap());
        let (cw, l) = noisy_frame(&code, 80.0, 3);
        let cfg = TpdConfig::new(DecoderKind::SocsBallTestwords, 1, 5, HalfIterationSchedule::constant(1, 0.9, None))
            .unwrap()
            .with_radius(1);
        let out = tpd_decode(&code, &l, &cfg).unwrap();
        assert_eq!(out.hard, cw);
        assert_eq!(out.empty_lists, 0);
    }

    #[test]
    fn decoded_lines_are_codewords_when_lists_are_non_empty() {
        let code = eh8();
        for kind in [DecoderKind::CpOptimized, DecoderKind::SocsBallTestwords, DecoderKind::SocsBeta] {
            for seed in 0..40 {
                let (_, l) = noisy_frame(&code, 3.0, seed);
                let out = tpd_decode(&code, &l, &config(kind, 2, 0.5)).unwrap();
                if out.empty_lists == 0 {
                    // The final half iteration decodes columns.
                    for col in transpose(&out.hard, 8) {
                        assert!(code.component().is_codeword(&col).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn extrinsic_identity_holds_entrywise() {
        let code = eh8();
        let (_, l) = noisy_frame(&code, 2.0, 5);
        for kind in DecoderKind::ALL {
            if kind == DecoderKind::CpClassic {
                continue;
            }
            let cfg = config(kind, 3, 0.6).with_trace(true);
            let out = tpd_decode(&code, &l, &cfg).unwrap();
            let trace = out.trace.unwrap();
            assert_eq!(trace.len(), 5);
            for t in &trace {
                for i in 0..64 {
                    assert_eq!(t.extrinsic[i], 0.6 * (t.l_app[i] - t.l_in[i]));
                }
            }
            assert_eq!(trace[0].l_in, l.iter().map(|&x| clip_llr(x)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn zero_alpha_means_independent_final_decisions() {
        let code = eh8();
        let cfg = config(DecoderKind::SocsBallTestwords, 2, 0.0);
        for seed in 0..20 {
            let (_, l) = noisy_frame(&code, 1.0, seed);
            let out = tpd_decode(&code, &l, &cfg).unwrap();
            let cols = transpose(&out.hard, 8);
            for (c, col) in cols.iter().enumerate() {
                let lin: Vec<f64> = (0..8).map(|r| l[r * 8 + c]).collect();
                let rel = reliability_from_values(&lin);
                let chase = run_chase_relative(code.component(), &rel.hard, &rel.abs_llr, cfg.chase).unwrap();
                let expected = match chase.best() {
                    Some(b) => chase.candidates[b].codeword(&chase.hard),
                    None => rel.hard.clone(),
                };
                assert_eq!(col, &expected);
            }
        }
    }

    #[test]
    fn decoding_is_deterministic() {
        let code = eh8();
        let (_, l) = noisy_frame(&code, 2.0, 9);
        let cfg = config(DecoderKind::SocsBallList, 4, 0.7).with_trace(true);
        assert_eq!(tpd_decode(&code, &l, &cfg).unwrap(), tpd_decode(&code, &l, &cfg).unwrap());
    }

    #[test]
    fn transposed_input_with_swapped_order_transposes_output() {
        let code = eh8();
        for seed in 0..10 {
            let (_, l) = noisy_frame(&code, 2.0, seed);
            let lt: Vec<f64> = (0..64).map(|i| l[(i % 8) * 8 + i / 8]).collect();
            let cfg = config(DecoderKind::CpOptimized, 4, 0.5);
            let a = tpd_decode(&code, &l, &cfg).unwrap();
            let b = tpd_decode(&code, &lt, &cfg.clone().with_first(Dimension::Columns)).unwrap();
            assert_eq!(transpose(&a.hard, 8), b.hard);
        }
    }

    #[test]
    fn exact_app_mode_decodes_small_codes_only() {
        let code = eh8();
        let (cw, l) = noisy_frame(&code, 8.0, 1);
        let out = tpd_decode(&code, &l, &config(DecoderKind::ExactApp, 2, 0.5)).unwrap();
        assert_eq!(out.hard, cw);
        let big = ProductCode::new(ComponentCode::extended_hamming(5).unwrap());
        assert!(matches!(
            TurboDecoder::new(&big, config(DecoderKind::ExactApp, 2, 0.5)),
            Err(Error::Refused(_))
        ));
    }

    #[test]
    fn configuration_errors() {
        let code = eh8();
        assert!(tpd_decode(&code, &[0.0; 63], &config(DecoderKind::SocsTestwords, 1, 0.5)).is_err());
        assert!(TpdConfig::new(DecoderKind::SocsTestwords, 4, 5, HalfIterationSchedule::constant(6, 0.5, None)).is_err());
        assert!(TpdConfig::new(DecoderKind::SocsBeta, 1, 5, HalfIterationSchedule::constant(1, 0.5, None)).is_err());
        let wide = config(DecoderKind::SocsBallList, 1, 0.5).with_radius(2);
        assert!(TurboDecoder::new(&code, wide).is_err());
        assert_eq!("socs-beta".parse::<DecoderKind>().unwrap(), DecoderKind::SocsBeta);
        assert!("nope".parse::<DecoderKind>().is_err());
    }

    #[test]
    fn soft_prefix_matches_full_trace() {
        let code = eh8();
        let (_, l) = noisy_frame(&code, 2.0, 4);
        let cfg = config(DecoderKind::SocsBeta, 4, 0.5).with_trace(true);
        let dec = TurboDecoder::new(&code, cfg).unwrap();
        let full = dec.decode(&l).unwrap().trace.unwrap();
        let prefix = dec.soft_prefix(&l, 3).unwrap();
        assert_eq!(&full[..3], &prefix[..]);
        assert!(dec.soft_prefix(&l, 8).is_err());
    }
}
