//! Brute-force reference checks for short codes.
//!
//! Each check enumerates vectors of `F₂ⁿ` directly and reports the worst
//! discrepancy against the closed forms used by the decoders.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::{reliability_from_values, ReliabilityVector};
use crate::chase::{run_chase_with, Candidate, ChaseConfig, ChaseResult};
use crate::code::{BinaryVector, ComponentCode};
use crate::error::Result;
use crate::logmath::log_sum_exp;
use crate::softout::{
    ball_factor, exact_app_llr_with_codebook, prob_covered_list_balls, prob_covered_testword_balls,
    socs_llr_with_covered_mass,
};

/// Worst observed discrepancy over a number of cases.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckReport {
    pub cases: usize,
    pub worst: f64,
}

impl CheckReport {
    fn new() -> Self {
        Self { cases: 0, worst: 0.0 }
    }

    fn record(&mut self, err: f64) {
        self.cases += 1;
        if err.is_nan() || err > self.worst {
            self.worst = if err.is_nan() { f64::INFINITY } else { err };
        }
    }
}

/// Every vector of length `n`, `n ≤ 20`.
pub fn all_vectors(n: usize) -> impl Iterator<Item = BinaryVector> {
    assert!(n <= 20, "enumeration limited to n ≤ 20");
    (0u32..(1u32 << n)).map(move |w| {
        let mut v = BinaryVector::zeros(n);
        for i in 0..n {
            if (w >> i) & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    })
}

fn log_posterior(v: &BinaryVector, rel: &ReliabilityVector) -> f64 {
    (0..v.len()).map(|i| rel.log_bit_prior(i, v.get(i))).sum()
}

fn masked_distance(a: &BinaryVector, b: &BinaryVector, mask: &[bool]) -> usize {
    (0..a.len()).filter(|&i| !mask[i] && a.get(i) != b.get(i)).count()
}

fn relative_error(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Uniform LLRs in `[-spread, spread]`.
pub fn random_llrs<R: Rng + ?Sized>(rng: &mut R, n: usize, spread: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-spread..=spread)).collect()
}

/// Chase list replaced by the whole codebook.
pub fn full_codebook_list(code: &ComponentCode, rel: &ReliabilityVector) -> Result<ChaseResult> {
    let book = code.enumerate_codebook()?;
    let candidates = book
        .iter()
        .map(|c| {
            let flips: crate::chase::FlipSet = (0..c.len())
                .filter(|&i| c.get(i) != rel.hard.get(i))
                .map(|i| i as u16)
                .collect();
            let metric = flips.iter().map(|&i| rel.abs_llr[i as usize]).sum::<f64>();
            Candidate {
                flips,
                metric,
                log_posterior: rel.log_hard_posterior() - metric,
            }
        })
        .collect();
    Ok(ChaseResult {
        lrp: Vec::new(),
        hard: rel.hard.clone(),
        candidates,
        origin_count: book.len(),
    })
}

/// Covered-space LLRs with the full codebook as list and `P(V|y) = 1`
/// against the exact APP; reports the largest absolute LLR difference.
pub fn check_full_list_reduces_to_exact_app(code: &ComponentCode, draws: usize, seed: u64) -> Result<CheckReport> {
    let book = code.enumerate_codebook()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new();
    for _ in 0..draws {
        let l = random_llrs(&mut rng, code.n(), 6.0);
        let rel = reliability_from_values(&l);
        let list = full_codebook_list(code, &rel)?;
        let socs = socs_llr_with_covered_mass(&list, &rel, code, 0.0);
        let exact = exact_app_llr_with_codebook(&book, &rel);
        let err = socs
            .l_app
            .iter()
            .zip(exact.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        report.record(err);
    }
    Ok(report)
}

/// `b_r · P(v|y)` against the summed posteriors of the enumerated ball,
/// for each `n` in `lengths` and `r ∈ {1, 2}`; reports the worst relative
/// error.
pub fn check_ball_factors(lengths: std::ops::RangeInclusive<usize>, draws: usize, seed: u64) -> Result<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new();
    for n in lengths {
        let space: Vec<BinaryVector> = all_vectors(n).collect();
        for r in 1..=2 {
            for _ in 0..draws {
                let rel = reliability_from_values(&random_llrs(&mut rng, n, 8.0));
                let v = &space[rng.random_range(0..space.len())];
                let closed = ball_factor(v, &rel, r, &[])? * log_posterior(v, &rel).exp();
                let direct = log_sum_exp(
                    space
                        .iter()
                        .filter(|u| u.distance(v).expect("equal lengths") <= r)
                        .map(|u| log_posterior(u, &rel)),
                )
                .exp();
                report.record(relative_error(closed, direct));
            }
        }
    }
    Ok(report)
}

/// Closed-form `P(B_r(T)|y)` with balls masked on `I` against the direct
/// sum over the union `⋃_τ B_r(τ, I)`; reports the worst relative error.
pub fn check_testword_balls(
    lengths: std::ops::RangeInclusive<usize>,
    max_p: usize,
    draws: usize,
    seed: u64,
) -> Result<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new();
    for n in lengths {
        let space: Vec<BinaryVector> = all_vectors(n).collect();
        for p in 0..=max_p.min(n) {
            for r in 0..=2 {
                for _ in 0..draws {
                    let rel = reliability_from_values(&random_llrs(&mut rng, n, 6.0));
                    let mut idx: Vec<usize> = (0..n).collect();
                    for i in 0..p {
                        let j = rng.random_range(i..n);
                        idx.swap(i, j);
                    }
                    let mut lrp = idx[..p].to_vec();
                    lrp.sort_unstable();
                    let mask: Vec<bool> = (0..n).map(|i| lrp.contains(&i)).collect();
                    let closed = prob_covered_testword_balls(&rel, &lrp, r)?.exp();
                    // Every testword agrees with ŷ outside I; each vector lies in
                    // the ball of the testword that matches it on I.
                    let testwords: Vec<BinaryVector> = (0..(1usize << p))
                        .map(|m| {
                            let mut t = rel.hard.clone();
                            for (b, &i) in lrp.iter().enumerate() {
                                if (m >> b) & 1 == 1 {
                                    t.flip(i);
                                }
                            }
                            t
                        })
                        .collect();
                    let direct = log_sum_exp(
                        space
                            .iter()
                            .filter(|u| {
                                testwords.iter().any(|t| {
                                    lrp.iter().all(|&i| u.get(i) == t.get(i)) && masked_distance(u, t, &mask) <= r
                                })
                            })
                            .map(|u| log_posterior(u, &rel)),
                    )
                    .exp();
                    report.record(relative_error(closed, direct));
                }
            }
        }
    }
    Ok(report)
}

/// `Σ_{K ⊆ I} Π_{i ∈ I∖K} γ_i Π_{i ∈ K} (1 − γ_i)` for random `γ` and
/// `|I| ≤ max_p`; reports the largest deviation from one.
pub fn check_power_set_identity(max_p: usize, draws: usize, seed: u64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new();
    for p in 0..=max_p {
        for _ in 0..draws {
            let gamma: Vec<f64> = (0..p).map(|_| rng.random_range(0.5..1.0)).collect();
            let total: f64 = (0..(1usize << p))
                .map(|k| {
                    (0..p)
                        .map(|i| if (k >> i) & 1 == 1 { 1.0 - gamma[i] } else { gamma[i] })
                        .product::<f64>()
                })
                .sum();
            report.record((total - 1.0).abs());
        }
    }
    report
}

/// Closed-form `P(B_r(L)|y)` against the summed posteriors of the
/// enumerated union of list balls.
pub fn check_list_balls(code: &ComponentCode, r: usize, draws: usize, seed: u64) -> Result<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space: Vec<BinaryVector> = all_vectors(code.n()).collect();
    let mut report = CheckReport::new();
    for _ in 0..draws {
        let rel = reliability_from_values(&random_llrs(&mut rng, code.n(), 6.0));
        let p = rng.random_range(1..=4.min(code.n()));
        let chase = run_chase_with(code, &rel, ChaseConfig::new(p)?)?;
        if chase.is_empty() {
            continue;
        }
        let list = chase.codewords();
        let closed = prob_covered_list_balls(&chase, &rel, r, code)?.exp();
        let direct = log_sum_exp(
            space
                .iter()
                .filter(|u| list.iter().any(|c| c.distance(u).expect("equal lengths") <= r))
                .map(|u| log_posterior(u, &rel)),
        )
        .exp();
        report.record(relative_error(closed, direct));
    }
    Ok(report)
}

/// Outcome of the covered-space validity check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverageReport {
    pub runs: usize,
    /// Runs where `B_{d_min−1}(L) ∩ C ≠ L`.
    pub list_ball_violations: usize,
    /// Runs where `B_t(T) ∩ C ≠ L`.
    pub testword_ball_violations: usize,
    /// Runs where the union fails.
    pub union_violations: usize,
}

impl CoverageReport {
    pub fn passed(&self) -> bool {
        self.list_ball_violations == 0 && self.testword_ball_violations == 0 && self.union_violations == 0
    }
}

/// Random Chase runs with `p ∈ 1..=max_p`; every enumerated covered space
/// must meet the codebook exactly in the list.
pub fn check_covered_space_validity(code: &ComponentCode, runs: usize, max_p: usize, seed: u64) -> Result<CoverageReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let book = code.enumerate_codebook()?;
    let space: Vec<BinaryVector> = all_vectors(code.n()).collect();
    let mut report = CoverageReport {
        runs: 0,
        list_ball_violations: 0,
        testword_ball_violations: 0,
        union_violations: 0,
    };
    for _ in 0..runs {
        let rel = reliability_from_values(&random_llrs(&mut rng, code.n(), 4.0));
        let p = rng.random_range(1..=max_p.min(code.n()));
        let chase = run_chase_with(code, &rel, ChaseConfig::new(p)?)?;
        let list: BTreeSet<BinaryVector> = chase.codewords().into_iter().collect();
        let testwords = chase.testwords();
        let in_list_balls =
            |u: &BinaryVector| list.iter().any(|c| c.distance(u).expect("equal lengths") < code.d_min());
        let in_testword_balls =
            |u: &BinaryVector| testwords.iter().any(|t| t.distance(u).expect("equal lengths") <= code.t());
        let meet = |pred: &dyn Fn(&BinaryVector) -> bool| -> BTreeSet<BinaryVector> {
            space.iter().filter(|u| pred(u)).filter(|u| book.contains(u)).cloned().collect()
        };
        report.runs += 1;
        if meet(&in_list_balls) != list {
            report.list_ball_violations += 1;
        }
        if meet(&in_testword_balls) != list {
            report.testword_ball_violations += 1;
        }
        if meet(&|u: &BinaryVector| in_list_balls(u) || in_testword_balls(u)) != list {
            report.union_violations += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_sizes() {
        assert_eq!(all_vectors(5).count(), 32);
        assert_eq!(all_vectors(0).count(), 1);
    }

    #[test]
    fn quick_oracle_runs() {
        let h = ComponentCode::extended_hamming(3).unwrap();
        assert!(check_full_list_reduces_to_exact_app(&h, 50, 1).unwrap().worst < 1e-9);
        assert!(check_ball_factors(3..=6, 20, 2).unwrap().worst < 1e-10);
        assert!(check_testword_balls(3..=6, 3, 5, 3).unwrap().worst < 1e-10);
        assert!(check_power_set_identity(10, 10, 4).worst < 1e-12);
        assert!(check_list_balls(&h, 1, 50, 5).unwrap().worst < 1e-10);
        assert!(check_covered_space_validity(&h, 50, 4, 6).unwrap().passed());
    }
}
