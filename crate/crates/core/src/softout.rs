//! Soft outputs of a list decoder.
//!
//! The covered-space decoder estimates the total posterior of the codewords
//! missing from the Chase list as `q = 2^{k−n}·(1 − P(V|y))`, where `V` is a
//! set known to contain no other codewords, and splits `q` between the two
//! bit values by the per-position prior. `P(V|y)` comes from Hamming balls
//! around the testwords or around the list candidates, whose mass is a
//! closed-form multiple of the center's posterior. A constant `q = β` and
//! the classic Chase-Pyndiah rule are provided as baselines, and an exact
//! codebook-enumeration APP serves as the reference for small codes.

use crate::channel::{clip_llr, LlrRole, LlrVector, ReliabilityVector, L_MAX};
use crate::chase::ChaseResult;
use crate::code::{BinaryVector, ComponentCode};
use crate::error::{check_len, param, Result};
use crate::logmath::{log_add, log_one_minus_exp, log_sum_exp};

/// Lower bound on the out-of-list mass `q`.
pub const Q_FLOOR: f64 = 1e-300;

/// Which estimate of the covered-space probability a decoder uses.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CoveredSpaceSpec {
    /// `q = β`, no covered-space estimate.
    ConstantBeta(f64),
    /// `V = B_r(L)`, disjoint balls around the list candidates.
    BallsAroundList(usize),
    /// `V = B_r(T)` with balls restricted to the coordinates outside `I`.
    BallsAroundTestwords(usize),
    /// `V = T`.
    TestwordsOnly,
}

impl CoveredSpaceSpec {
    pub fn validate(&self, code: &ComponentCode) -> Result<()> {
        match *self {
            CoveredSpaceSpec::ConstantBeta(b) if !(0.0..1.0).contains(&b) => {
                param(format!("β must lie in [0, 1), got {b}"))
            }
            CoveredSpaceSpec::BallsAroundList(r) if r > code.d_min().saturating_sub(1) / 2 || r > 2 => {
                param(format!(
                    "list-ball radius {r} overlaps for d_min = {} (or exceeds 2)",
                    code.d_min()
                ))
            }
            CoveredSpaceSpec::BallsAroundTestwords(r) if r > 2 => {
                param(format!("testword-ball radius must be 0, 1 or 2, got {r}"))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SoftOutput {
    pub l_app: Vec<f64>,
    /// Unscaled until [`SoftOutput::scale_extrinsic`] is applied.
    pub l_ext: Vec<f64>,
    /// `ln P(V | y)` for covered-space variants.
    pub log_p_covered: Option<f64>,
    /// Both bit values occur among the candidates at this position.
    pub competitors_found: Vec<bool>,
    /// The candidate list was empty and the input was passed through.
    pub empty_list: bool,
}

impl SoftOutput {
    /// Sets `l_ext = α · (l_app − l_in)`.
    pub fn scale_extrinsic(&mut self, alpha: f64, l_in: &[f64]) {
        for ((e, a), l) in self.l_ext.iter_mut().zip(&self.l_app).zip(l_in) {
            *e = alpha * (a - l);
        }
    }

    pub fn app_vector(&self) -> LlrVector {
        LlrVector::new(self.l_app.clone(), LlrRole::APosteriori)
    }

    fn passthrough(l_in: Vec<f64>) -> Self {
        let n = l_in.len();
        Self {
            l_app: l_in,
            l_ext: vec![0.0; n],
            log_p_covered: None,
            competitors_found: vec![false; n],
            empty_list: true,
        }
    }
}

/// Signed input LLRs reconstructed from a reliability vector.
pub fn signed_llr(rel: &ReliabilityVector) -> Vec<f64> {
    rel.abs_llr
        .iter()
        .enumerate()
        .map(|(i, &a)| if rel.hard.get(i) { -a } else { a })
        .collect()
}

fn mask_flags(n: usize, mask: &[usize]) -> Vec<bool> {
    let mut flags = vec![false; n];
    for &i in mask {
        flags[i] = true;
    }
    flags
}

/// First-order ball terms `exp(−|L_i|·(−1)^{v_i ⊕ ŷ_i})` outside `mask`.
fn ball_terms(v: &BinaryVector, rel: &ReliabilityVector, mask: &[usize]) -> Result<Vec<f64>> {
    check_len(rel.len(), v.len())?;
    let masked = mask_flags(rel.len(), mask);
    Ok((0..rel.len())
        .filter(|&i| !masked[i])
        .map(|i| {
            let a = rel.abs_llr[i];
            if v.get(i) == rel.hard.get(i) {
                (-a).exp()
            } else {
                a.exp()
            }
        })
        .collect())
}

/// Hamming ball summand `s_r(v, y) = Σ_{i ∉ mask} exp(−r·|L_i|·(−1)^{v_i ⊕ ŷ_i})`.
pub fn ball_summand(v: &BinaryVector, rel: &ReliabilityVector, r: usize, mask: &[usize]) -> Result<f64> {
    check_len(rel.len(), v.len())?;
    let masked = mask_flags(rel.len(), mask);
    let r = r as f64;
    Ok((0..rel.len())
        .filter(|&i| !masked[i])
        .map(|i| {
            let sign = if v.get(i) == rel.hard.get(i) { 1.0 } else { -1.0 };
            (-r * rel.abs_llr[i] * sign).exp()
        })
        .sum())
}

/// `1 + e1(x) + e2(x)` for `r = 2`, `1 + e1(x)` for `r = 1`, `1` for
/// `r = 0`, where `e_j` are elementary symmetric sums of the ball terms.
/// Equals `1 + s₁ + ½(s₁² − s₂)` without its cancellation.
fn factor_from_terms(terms: &[f64], r: usize) -> f64 {
    match r {
        0 => 1.0,
        1 => 1.0 + terms.iter().sum::<f64>(),
        _ => {
            let mut e1 = 0.0;
            let mut e2 = 0.0;
            for &x in terms {
                e2 += x * e1;
                e1 += x;
            }
            1.0 + e1 + e2
        }
    }
}

/// Hamming ball factor `b_r` with `P(B_r(v, mask) | y) = b_r · P(v | y)`,
/// the ball taken over the coordinates outside `mask`.
pub fn ball_factor(v: &BinaryVector, rel: &ReliabilityVector, r: usize, mask: &[usize]) -> Result<f64> {
    if r > 2 {
        return param(format!("ball radius must be at most 2, got {r}"));
    }
    Ok(factor_from_terms(&ball_terms(v, rel, mask)?, r))
}

/// `ln P(T | y) = Σ_{j ∉ I} ln γ_j`.
pub fn prob_testword_set(rel: &ReliabilityVector, lrp: &[usize]) -> f64 {
    let masked = mask_flags(rel.len(), lrp);
    (0..rel.len())
        .filter(|&i| !masked[i])
        .map(|i| rel.log_gamma[i])
        .sum()
}

/// `ln P(B_r(T) | y) = ln b_r(ŷ, y, I) + Σ_{j ∉ I} ln γ_j`.
pub fn prob_covered_testword_balls(rel: &ReliabilityVector, lrp: &[usize], r: usize) -> Result<f64> {
    if r > 2 {
        return param(format!("testword-ball radius must be 0, 1 or 2, got {r}"));
    }
    let masked = mask_flags(rel.len(), lrp);
    let mut log_t = 0.0;
    let mut terms = Vec::with_capacity(rel.len());
    for i in (0..rel.len()).filter(|&i| !masked[i]) {
        log_t += rel.log_gamma[i];
        terms.push((-rel.abs_llr[i]).exp());
    }
    Ok(factor_from_terms(&terms, r).ln() + log_t)
}

/// `ln P(B_r(L) | y) = ln Σ_{c ∈ L} b_r(c, y) · P(c | y)`; `−∞` for an
/// empty list. Radii that would let the balls overlap are rejected.
pub fn prob_covered_list_balls(
    chase: &ChaseResult,
    rel: &ReliabilityVector,
    r: usize,
    code: &ComponentCode,
) -> Result<f64> {
    if r > (code.d_min().saturating_sub(1)) / 2 || r > 2 {
        return param(format!(
            "radius {r} exceeds ⌊(d_min − 1)/2⌋ = {}",
            code.d_min().saturating_sub(1) / 2
        ));
    }
    check_len(rel.len(), chase.hard.len())?;
    let n = rel.len();
    let terms: Vec<f64> = rel.abs_llr.iter().map(|a| (-a).exp()).collect();
    let (e1, e2) = elementary(&terms);
    let mut parts = Vec::with_capacity(chase.candidates.len());
    for c in &chase.candidates {
        let b = if r == 0 {
            1.0
        } else {
            // Replace the terms at the flipped positions by their inverses.
            let old: smallvec::SmallVec<[f64; 8]> = c.flips.iter().map(|&i| terms[i as usize]).collect();
            let new: smallvec::SmallVec<[f64; 8]> =
                c.flips.iter().map(|&i| rel.abs_llr[i as usize].exp()).collect();
            let (o1, o2) = elementary(&old);
            let (n1, n2) = elementary(&new);
            let rest1 = (e1 - o1).max(0.0);
            let rest2 = (e2 - o2 - o1 * rest1).max(0.0);
            let f1 = rest1 + n1;
            if r == 1 {
                1.0 + f1
            } else {
                1.0 + f1 + rest2 + rest1 * n1 + n2
            }
        };
        parts.push(b.ln() + c.log_posterior);
    }
    debug_assert_eq!(n, chase.hard.len());
    Ok(log_sum_exp(parts))
}

fn elementary(xs: &[f64]) -> (f64, f64) {
    let mut e1 = 0.0;
    let mut e2 = 0.0;
    for &x in xs {
        e2 += x * e1;
        e1 += x;
    }
    (e1, e2)
}

/// `ln P(V | y)` for a covered-space variant, `None` for `ConstantBeta`.
pub fn log_covered_mass(
    chase: &ChaseResult,
    rel: &ReliabilityVector,
    spec: CoveredSpaceSpec,
    code: &ComponentCode,
) -> Result<Option<f64>> {
    Ok(match spec {
        CoveredSpaceSpec::ConstantBeta(_) => None,
        CoveredSpaceSpec::BallsAroundList(r) => Some(prob_covered_list_balls(chase, rel, r, code)?),
        CoveredSpaceSpec::BallsAroundTestwords(r) => Some(prob_covered_testword_balls(rel, &chase.lrp, r)?),
        CoveredSpaceSpec::TestwordsOnly => Some(prob_testword_set(rel, &chase.lrp)),
    })
}

/// `ln q` with `q = 2^{k−n}·(1 − P(V|y))`, floored at [`Q_FLOOR`].
pub fn log_out_of_list_mass(log_p_covered: f64, code: &ComponentCode) -> f64 {
    let log_rest = log_one_minus_exp(log_p_covered.min(0.0));
    let lq = (code.k() as f64 - code.n() as f64) * std::f64::consts::LN_2 + log_rest;
    lq.max(Q_FLOOR.ln())
}

/// Covered-space soft output for the given variant.
pub fn socs_llr(
    chase: &ChaseResult,
    rel: &ReliabilityVector,
    spec: CoveredSpaceSpec,
    code: &ComponentCode,
) -> Result<SoftOutput> {
    spec.validate(code)?;
    check_len(code.n(), rel.len())?;
    let covered = log_covered_mass(chase, rel, spec, code)?;
    let log_q = match (spec, covered) {
        (CoveredSpaceSpec::ConstantBeta(beta), _) => beta.max(Q_FLOOR).ln(),
        (_, Some(lpv)) => log_out_of_list_mass(lpv, code),
        (_, None) => unreachable!("covered-space variants always yield a mass"),
    };
    let mut out = socs_with_log_q(chase, rel, log_q);
    if !out.empty_list {
        out.log_p_covered = covered;
    }
    Ok(out)
}

/// Covered-space soft output for an externally supplied `ln P(V | y)`.
pub fn socs_llr_with_covered_mass(
    chase: &ChaseResult,
    rel: &ReliabilityVector,
    code: &ComponentCode,
    log_p_covered: f64,
) -> SoftOutput {
    let mut out = socs_with_log_q(chase, rel, log_out_of_list_mass(log_p_covered, code));
    out.log_p_covered = Some(log_p_covered);
    out
}

/// `L^app_i = ln[P(L_i⁰|y) + q·P(0|y_i)] − ln[P(L_i¹|y) + q·P(1|y_i)]`.
fn socs_with_log_q(chase: &ChaseResult, rel: &ReliabilityVector, log_q: f64) -> SoftOutput {
    let n = rel.len();
    let l_in = signed_llr(rel);
    if chase.candidates.is_empty() {
        return SoftOutput::passthrough(l_in);
    }
    // Candidate weights relative to the most likely one.
    let lp_max = chase
        .candidates
        .iter()
        .map(|c| c.log_posterior)
        .fold(f64::NEG_INFINITY, f64::max);
    let weights: smallvec::SmallVec<[f64; 32]> = chase
        .candidates
        .iter()
        .map(|c| (c.log_posterior - lp_max).exp())
        .collect();
    let total: f64 = weights.iter().sum();
    let log_total = lp_max + total.ln();

    // Mass of candidates that disagree with ŷ at each touched position.
    let mut disagree = vec![0.0f64; n];
    let mut touched: smallvec::SmallVec<[u16; 64]> = smallvec::SmallVec::new();
    for (c, &w) in chase.candidates.iter().zip(&weights) {
        for &i in &c.flips {
            if disagree[i as usize] == 0.0 {
                touched.push(i);
            }
            disagree[i as usize] += w;
        }
    }

    let mut l_app = vec![0.0; n];
    let mut competitors = vec![false; n];
    let mut is_touched = vec![false; n];
    for &i in &touched {
        is_touched[i as usize] = true;
    }

    // Untouched positions: every candidate agrees with ŷ_i, and
    // L^app = ±(|L_i| + ln(1 + A·(1 + e^{−|L_i|}))) with A = P(L|y)/q.
    let log_a = log_total - log_q;
    for i in 0..n {
        if is_touched[i] {
            continue;
        }
        let a = rel.abs_llr[i];
        let ext = log_add(0.0, log_a + (-a).exp().ln_1p());
        let mag = a + ext;
        l_app[i] = if rel.hard.get(i) { -mag } else { mag };
    }

    for &i in &touched {
        let i = i as usize;
        let dis = disagree[i];
        let agree = if dis <= 0.5 * total {
            total - dis
        } else {
            chase
                .candidates
                .iter()
                .zip(&weights)
                .filter(|(c, _)| c.flips.binary_search(&(i as u16)).is_err())
                .map(|(_, &w)| w)
                .sum()
        };
        competitors[i] = agree > 0.0;
        let log_agree = if agree > 0.0 { lp_max + agree.ln() } else { f64::NEG_INFINITY };
        let log_dis = lp_max + dis.ln();
        // Mass for "bit = ŷ_i" versus "bit ≠ ŷ_i".
        let num = log_add(log_agree, log_q + rel.log_gamma[i]);
        let den = log_add(log_dis, log_q + rel.log_one_minus_gamma[i]);
        let mag = num - den;
        l_app[i] = if rel.hard.get(i) { -mag } else { mag };
    }

    let l_ext = l_app.iter().zip(&l_in).map(|(a, b)| a - b).collect();
    SoftOutput {
        l_app,
        l_ext,
        log_p_covered: None,
        competitors_found: competitors,
        empty_list: false,
    }
}

/// Exact a-posteriori LLRs by enumerating the codebook.
pub fn exact_app_llr(code: &ComponentCode, rel: &ReliabilityVector) -> Result<LlrVector> {
    check_len(code.n(), rel.len())?;
    let book = code.enumerate_codebook()?;
    Ok(exact_app_llr_with_codebook(&book, rel))
}

/// [`exact_app_llr`] on a precomputed codebook.
pub fn exact_app_llr_with_codebook(book: &[BinaryVector], rel: &ReliabilityVector) -> LlrVector {
    let n = rel.len();
    let logp: Vec<f64> = book
        .iter()
        .map(|c| {
            (0..n)
                .map(|i| {
                    if c.get(i) == rel.hard.get(i) {
                        rel.log_gamma[i]
                    } else {
                        rel.log_one_minus_gamma[i]
                    }
                })
                .sum()
        })
        .collect();
    let values = (0..n)
        .map(|i| {
            let zero = log_sum_exp(book.iter().zip(&logp).filter(|(c, _)| !c.get(i)).map(|(_, &l)| l));
            let one = log_sum_exp(book.iter().zip(&logp).filter(|(c, _)| c.get(i)).map(|(_, &l)| l));
            match (zero == f64::NEG_INFINITY, one == f64::NEG_INFINITY) {
                (false, true) => L_MAX,
                (true, false) => -L_MAX,
                _ => clip_llr(zero - one),
            }
        })
        .collect();
    LlrVector::new(values, LlrRole::APosteriori)
}

/// Chase-Pyndiah soft output.
///
/// With `d` the most likely candidate, a position with a competitor `c'`
/// (best candidate with `c'_i ≠ d_i`) gets `L^app_i = (1 − 2d_i)·(M(c') − M(d))`
/// where `M` is the analog weight; otherwise the raw extrinsic is
/// `β·(1 − 2d_i)`. The extrinsic is then scaled by `α`.
pub fn cp_extrinsic(chase: &ChaseResult, llr_in: &[f64], alpha: f64, beta: f64) -> Result<SoftOutput> {
    let n = llr_in.len();
    check_len(chase.hard.len(), n)?;
    let Some(best) = chase.best() else {
        return Ok(SoftOutput::passthrough(llr_in.to_vec()));
    };
    let d = &chase.candidates[best];
    let mut competitor = vec![f64::INFINITY; n];
    for (j, c) in chase.candidates.iter().enumerate() {
        if j == best {
            continue;
        }
        // Positions where c and d differ: symmetric difference of flip sets.
        let (mut a, mut b) = (0, 0);
        let mut visit = |i: u16| {
            let slot = &mut competitor[i as usize];
            if c.metric < *slot {
                *slot = c.metric;
            }
        };
        while a < c.flips.len() || b < d.flips.len() {
            match (c.flips.get(a), d.flips.get(b)) {
                (Some(&x), Some(&y)) if x == y => {
                    a += 1;
                    b += 1;
                }
                (Some(&x), Some(&y)) if x < y => {
                    visit(x);
                    a += 1;
                }
                (Some(_), Some(&y)) => {
                    visit(y);
                    b += 1;
                }
                (Some(&x), None) => {
                    visit(x);
                    a += 1;
                }
                (None, Some(&y)) => {
                    visit(y);
                    b += 1;
                }
                (None, None) => unreachable!(),
            }
        }
    }
    let mut l_app = vec![0.0; n];
    let mut l_ext = vec![0.0; n];
    let mut found = vec![false; n];
    for i in 0..n {
        let sign = if d.bit(&chase.hard, i) { -1.0 } else { 1.0 };
        let raw = if competitor[i].is_finite() {
            found[i] = true;
            sign * (competitor[i] - d.metric) - llr_in[i]
        } else {
            sign * beta
        };
        l_app[i] = llr_in[i] + raw;
        l_ext[i] = alpha * raw;
    }
    Ok(SoftOutput {
        l_app,
        l_ext,
        log_p_covered: None,
        competitors_found: found,
        empty_list: false,
    })
}
