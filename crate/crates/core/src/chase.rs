//! Chase-II list decoding of a component code.
//!
//! Candidates are stored as the sorted set of positions where they differ
//! from the hard decision `ŷ`, which is all the soft-output stage needs.

use smallvec::SmallVec;

use crate::channel::{reliability, LlrVector, ReliabilityVector};
use crate::code::{BinaryVector, ComponentCode};
use crate::error::{check_len, param, Result};

/// Positions where a candidate differs from `ŷ`, ascending.
pub type FlipSet = SmallVec<[u16; 8]>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChaseConfig {
    p: usize,
}

impl ChaseConfig {
    pub const MAX_P: usize = 16;

    pub fn new(p: usize) -> Result<Self> {
        if !(1..=Self::MAX_P).contains(&p) {
            return param(format!("Chase parameter p must be in 1..=16, got {p}"));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> usize {
        self.p
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub flips: FlipSet,
    /// `Σ_{i ∈ flips} |L_i|`, the analog weight relative to `ŷ`.
    pub metric: f64,
    /// `ln P(c | y)`.
    pub log_posterior: f64,
}

impl Candidate {
    /// Bit of this candidate at position `i`.
    #[inline]
    pub fn bit(&self, hard: &BinaryVector, i: usize) -> bool {
        hard.get(i) ^ self.flips.binary_search(&(i as u16)).is_ok()
    }

    pub fn codeword(&self, hard: &BinaryVector) -> BinaryVector {
        let mut c = hard.clone();
        for &i in &self.flips {
            c.flip(i as usize);
        }
        c
    }
}

#[derive(Clone, Debug)]
pub struct ChaseResult {
    /// Least reliable positions `I`, ascending.
    pub lrp: Vec<usize>,
    pub hard: BinaryVector,
    /// Unique candidates in discovery order.
    pub candidates: Vec<Candidate>,
    /// Number of testwords that decoded successfully.
    pub origin_count: usize,
}

impl ChaseResult {
    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    /// Index of the most likely candidate; the earliest wins ties.
    pub fn best(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, c) in self.candidates.iter().enumerate() {
            if best.is_none_or(|b| c.metric < self.candidates[b].metric) {
                best = Some(i);
            }
        }
        best
    }

    pub fn codewords(&self) -> Vec<BinaryVector> {
        self.candidates.iter().map(|c| c.codeword(&self.hard)).collect()
    }

    pub fn log_posteriors(&self) -> Vec<f64> {
        self.candidates.iter().map(|c| c.log_posterior).collect()
    }

    /// All `2^p` testwords `ŷ ⊕ 1_K`, `K ⊆ I`, in subset-mask order.
    pub fn testwords(&self) -> Vec<BinaryVector> {
        (0..(1usize << self.lrp.len()))
            .map(|mask| {
                let mut t = self.hard.clone();
                for (b, &i) in self.lrp.iter().enumerate() {
                    if (mask >> b) & 1 == 1 {
                        t.flip(i);
                    }
                }
                t
            })
            .collect()
    }
}

/// The `p` positions of smallest `|L_i|`, ties broken towards the lower
/// index, returned in ascending order.
pub fn least_reliable_positions(llr: &[f64], p: usize) -> Result<Vec<usize>> {
    if p > llr.len() {
        return param(format!("p = {p} exceeds length {}", llr.len()));
    }
    let mut idx: Vec<usize> = (0..llr.len()).collect();
    let key = |&i: &usize| (llr[i].abs(), i);
    if p > 0 && p < idx.len() {
        idx.select_nth_unstable_by(p - 1, |a, b| key(a).partial_cmp(&key(b)).expect("finite LLRs"));
    }
    idx.truncate(p);
    idx.sort_unstable();
    Ok(idx)
}

/// Chase-II decoding from an LLR vector.
pub fn run_chase(code: &ComponentCode, llr: &LlrVector, cfg: ChaseConfig) -> Result<ChaseResult> {
    check_len(code.n(), llr.len())?;
    let rel = reliability(llr);
    run_chase_with(code, &rel, cfg)
}

/// Chase-II decoding on a precomputed reliability vector.
pub fn run_chase_with(
    code: &ComponentCode,
    rel: &ReliabilityVector,
    cfg: ChaseConfig,
) -> Result<ChaseResult> {
    let mut result = chase_core(code, &rel.hard, &rel.abs_llr, cfg)?;
    let log_hard = rel.log_hard_posterior();
    for c in &mut result.candidates {
        c.log_posterior = log_hard - c.metric;
    }
    Ok(result)
}

/// Chase-II decoding that skips the absolute posteriors; only `metric` is
/// filled in and `log_posterior` is `−metric` (posterior relative to `ŷ`).
pub fn run_chase_relative(
    code: &ComponentCode,
    hard: &BinaryVector,
    abs_llr: &[f64],
    cfg: ChaseConfig,
) -> Result<ChaseResult> {
    chase_core(code, hard, abs_llr, cfg)
}

fn chase_core(
    code: &ComponentCode,
    hard: &BinaryVector,
    abs_llr: &[f64],
    cfg: ChaseConfig,
) -> Result<ChaseResult> {
    let n = code.n();
    check_len(n, abs_llr.len())?;
    check_len(n, hard.len())?;
    let p = cfg.p().min(n);
    let lrp = least_reliable_positions(abs_llr, p)?;
    let mut candidates: Vec<Candidate> = Vec::new();
    let mut origin_count = 0;
    let mut syndrome = code.decoder_syndrome(hard);
    let mut mask: u32 = 0;
    // Gray-code sweep: consecutive testwords differ in one position.
    for g in 0u32..(1u32 << p) {
        if g > 0 {
            let b = g.trailing_zeros() as usize;
            mask ^= 1 << b;
            syndrome ^= code.decoder_column(lrp[b]);
        }
        let Some(errors) = code.decode_syndrome(syndrome) else {
            continue;
        };
        origin_count += 1;
        let mut flips: FlipSet = lrp
            .iter()
            .enumerate()
            .filter(|(b, _)| (mask >> b) & 1 == 1)
            .map(|(_, &i)| i as u16)
            .collect();
        for &e in &errors {
            match flips.iter().position(|&f| f == e) {
                Some(pos) => {
                    flips.remove(pos);
                }
                None => flips.push(e),
            }
        }
        flips.sort_unstable();
        if candidates.iter().any(|c| c.flips == flips) {
            continue;
        }
        let metric: f64 = flips.iter().map(|&i| abs_llr[i as usize]).sum();
        candidates.push(Candidate {
            flips,
            metric,
            log_posterior: -metric,
        });
    }
    Ok(ChaseResult {
        lrp,
        hard: hard.clone(),
        candidates,
        origin_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::LlrRole;
    use crate::channel::log_vector_posterior;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn llr(v: &[f64]) -> LlrVector {
        LlrVector::new(v.to_vec(), LlrRole::Input)
    }

    #[test]
    fn lrp_examples() {
        assert_eq!(least_reliable_positions(&[0.1, -2.0, 0.05, 3.0], 2).unwrap(), vec![0, 2]);
        assert_eq!(least_reliable_positions(&[1.0, 1.0, 2.0], 1).unwrap(), vec![0]);
        assert_eq!(least_reliable_positions(&[1.0, -1.0, 1.0, -1.0], 3).unwrap(), vec![0, 1, 2]);
        assert_eq!(least_reliable_positions(&[3.0, 2.0, 1.0], 3).unwrap(), vec![0, 1, 2]);
        assert!(least_reliable_positions(&[1.0], 2).is_err());
    }

    #[test]
    fn config_bounds() {
        assert!(ChaseConfig::new(0).is_err());
        assert!(ChaseConfig::new(17).is_err());
        assert_eq!(ChaseConfig::new(5).unwrap().p(), 5);
    }

    #[test]
    fn repetition_example() {
        let code = ComponentCode::repetition(3).unwrap();
        let r = run_chase(&code, &llr(&[0.1, 0.2, 3.0]), ChaseConfig::new(1).unwrap()).unwrap();
        assert_eq!(r.lrp, vec![0]);
        assert_eq!(r.hard, BinaryVector::parse("000").unwrap());
        assert_eq!(r.testwords().len(), 2);
        assert_eq!(r.codewords(), vec![BinaryVector::parse("000").unwrap()]);
        assert_eq!(r.origin_count, 2);
    }

    #[test]
    fn noiseless_input_tops_the_list() {
        let code = ComponentCode::extended_hamming(4).unwrap();
        let cw = code.encode(&BinaryVector::from_bits(&[1, 0, 1, 1, 0, 0, 1, 0, 1, 1, 1])).unwrap();
        let l: Vec<f64> = (0..16).map(|i| if cw.get(i) { -20.0 } else { 20.0 }).collect();
        let r = run_chase(&code, &llr(&l), ChaseConfig::new(3).unwrap()).unwrap();
        let best = r.best().unwrap();
        assert_eq!(r.candidates[best].codeword(&r.hard), cw);
        assert!(r.candidates[best].flips.is_empty());
    }

    #[test]
    fn candidates_are_codewords_near_testwords() {
        let code = ComponentCode::extended_hamming(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..500 {
            let l: Vec<f64> = (0..8).map(|_| rng.random_range(-3.0..3.0)).collect();
            let r = run_chase(&code, &llr(&l), ChaseConfig::new(5).unwrap()).unwrap();
            let tws = r.testwords();
            let rel = reliability(&llr(&l));
            for c in &r.candidates {
                let cw = c.codeword(&r.hard);
                assert!(code.is_codeword(&cw).unwrap());
                assert!(tws.iter().any(|t| t.distance(&cw).unwrap() <= code.t()));
                let direct = log_vector_posterior(&cw, &rel).unwrap();
                assert!((direct - c.log_posterior).abs() < 1e-9);
            }
            assert!(r.candidates.len() <= 32);
        }
    }
}
