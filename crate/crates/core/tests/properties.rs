use std::collections::BTreeSet;

use proptest::prelude::*;

use socs::channel::{reliability_from_values, LlrRole, LlrVector};
use socs::chase::{run_chase, run_chase_with, ChaseConfig};
use socs::code::{transpose, BinaryVector, ComponentCode, ProductCode};
use socs::oracle::all_vectors;
use socs::softout::{
    ball_factor, exact_app_llr, log_out_of_list_mass, prob_covered_list_balls, prob_covered_testword_balls,
    prob_testword_set, socs_llr, CoveredSpaceSpec,
};
use socs::tpd::{tpd_decode, DecoderKind, Dimension, HalfIterationSchedule, TpdConfig};

fn codes() -> Vec<ComponentCode> {
    vec![
        ComponentCode::extended_hamming(3).unwrap(),
        ComponentCode::extended_hamming(4).unwrap(),
        ComponentCode::extended_bch(4, 2).unwrap(),
    ]
}

fn llrs(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-8.0f64..8.0, n)
}

fn log_post(v: &BinaryVector, l: &[f64]) -> f64 {
    let rel = reliability_from_values(l);
    (0..v.len()).map(|i| rel.log_bit_prior(i, v.get(i))).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn chase_list_is_the_set_of_codewords_near_testwords(
        which in 0usize..3, p in 1usize..=5, seed_l in llrs(16)
    ) {
        let code = &codes()[which];
        let l = &seed_l[..code.n()];
        let book = code.enumerate_codebook().unwrap();
        let chase = run_chase(code, &LlrVector::new(l.to_vec(), LlrRole::Input), ChaseConfig::new(p).unwrap()).unwrap();
        let expected: BTreeSet<BinaryVector> = chase
            .testwords()
            .iter()
            .flat_map(|t| book.iter().filter(|c| c.distance(t).unwrap() <= code.t()).cloned().collect::<Vec<_>>())
            .collect();
        let got: BTreeSet<BinaryVector> = chase.codewords().into_iter().collect();
        prop_assert_eq!(got.len(), chase.candidates.len());
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn positive_scaling_keeps_list_and_argmax(
        which in 0usize..3, scale in 0.05f64..5.0, seed_l in llrs(16)
    ) {
        let code = &codes()[which];
        let l = &seed_l[..code.n()];
        // Clipping at the LLR limit is not scale invariant.
        prop_assume!(l.iter().all(|x| (x * scale).abs() < socs::channel::L_MAX));
        let cfg = ChaseConfig::new(4).unwrap();
        let a = run_chase(code, &LlrVector::new(l.to_vec(), LlrRole::Input), cfg).unwrap();
        let scaled: Vec<f64> = l.iter().map(|x| x * scale).collect();
        let b = run_chase(code, &LlrVector::new(scaled, LlrRole::Input), cfg).unwrap();
        prop_assert_eq!(&a.lrp, &b.lrp);
        prop_assert_eq!(a.codewords(), b.codewords());
        let best = |r: &socs::chase::ChaseResult| r.best().map(|i| r.candidates[i].codeword(&r.hard));
        prop_assert_eq!(best(&a), best(&b));
    }

    #[test]
    fn ball_factor_matches_enumeration(n in 2usize..=10, r in 1usize..=2, seed_l in llrs(10), pick in 0u32..1024) {
        let l = &seed_l[..n];
        let rel = reliability_from_values(l);
        let v = BinaryVector::from_bits(&(0..n).map(|i| ((pick >> i) & 1) as u8).collect::<Vec<_>>());
        let closed = ball_factor(&v, &rel, r, &[]).unwrap() * log_post(&v, l).exp();
        let direct: f64 = all_vectors(n)
            .filter(|u| u.distance(&v).unwrap() <= r)
            .map(|u| log_post(&u, l).exp())
            .sum();
        prop_assert!((closed - direct).abs() <= 1e-10 * direct.max(closed));
    }

    #[test]
    fn covered_masses_are_monotone_and_bounded(which in 0usize..3, p in 1usize..=5, seed_l in llrs(16)) {
        let code = &codes()[which];
        let l = &seed_l[..code.n()];
        let rel = reliability_from_values(l);
        let chase = run_chase_with(code, &rel, ChaseConfig::new(p).unwrap()).unwrap();
        let t0 = prob_testword_set(&rel, &chase.lrp);
        let t1 = prob_covered_testword_balls(&rel, &chase.lrp, 1).unwrap();
        let t2 = prob_covered_testword_balls(&rel, &chase.lrp, 2).unwrap();
        let tol = 1e-12;
        prop_assert!(t0 <= t1 + tol && t1 <= t2 + tol && t2 <= tol);
        for r in 0..=code.t() {
            prop_assert!(prob_covered_list_balls(&chase, &rel, r, code).unwrap() <= tol);
        }
    }

    #[test]
    fn list_ball_mass_matches_enumeration(p in 1usize..=4, seed_l in llrs(8)) {
        let code = ComponentCode::extended_hamming(3).unwrap();
        let rel = reliability_from_values(&seed_l);
        let chase = run_chase_with(&code, &rel, ChaseConfig::new(p).unwrap()).unwrap();
        let list = chase.codewords();
        let closed = prob_covered_list_balls(&chase, &rel, 1, &code).unwrap().exp();
        let direct: f64 = all_vectors(8)
            .filter(|u| list.iter().any(|c| c.distance(u).unwrap() <= 1))
            .map(|u| log_post(&u, &seed_l).exp())
            .sum();
        prop_assert!((closed - direct).abs() <= 1e-10 * direct.max(closed).max(f64::MIN_POSITIVE));
    }

    /// Each SOCS LLR lies within `Σ_s ln(1 + (1 − P(V))/A_s)` of the exact
    /// APP, where `A_s` is the list mass with bit `s`.
    #[test]
    fn socs_stays_within_the_out_of_list_bracket(seed_l in llrs(8)) {
        let code = ComponentCode::extended_hamming(3).unwrap();
        let rel = reliability_from_values(&seed_l);
        let chase = run_chase_with(&code, &rel, ChaseConfig::new(3).unwrap()).unwrap();
        prop_assume!(!chase.is_empty());
        let out = socs_llr(&chase, &rel, CoveredSpaceSpec::BallsAroundTestwords(1), &code).unwrap();
        let exact = exact_app_llr(&code, &rel).unwrap();
        let lpv = out.log_p_covered.unwrap();
        let rest = -lpv.exp_m1();
        prop_assert!(log_out_of_list_mass(lpv, &code) <= rest.max(1e-300).ln() + 1e-12);
        let words = chase.codewords();
        let post = chase.log_posteriors();
        for i in 0..8 {
            let mass = |s: bool| -> f64 {
                words.iter().zip(&post).filter(|(c, _)| c.get(i) == s).map(|(_, lp)| lp.exp()).sum()
            };
            let (a0, a1) = (mass(false), mass(true));
            if a0 > 0.0 && a1 > 0.0 {
                let bound = (1.0 + rest / a0).ln() + (1.0 + rest / a1).ln();
                prop_assert!((out.l_app[i] - exact.values()[i]).abs() <= bound + 1e-9);
            }
        }
    }

    #[test]
    fn transposed_decoding_is_symmetric(seed_l in prop::collection::vec(-6.0f64..6.0, 64), alpha in 0.0f64..1.2) {
        let code = ProductCode::new(ComponentCode::extended_hamming(3).unwrap());
        let lt: Vec<f64> = (0..64).map(|i| seed_l[(i % 8) * 8 + i / 8]).collect();
        let cfg = TpdConfig::new(
            DecoderKind::SocsBallTestwords, 2, 3, HalfIterationSchedule::constant(3, alpha, None),
        ).unwrap().with_radius(1);
        let a = tpd_decode(&code, &seed_l, &cfg).unwrap();
        let b = tpd_decode(&code, &lt, &cfg.clone().with_first(Dimension::Columns)).unwrap();
        prop_assert_eq!(transpose(&a.hard, 8), b.hard);
        prop_assert_eq!(a.clone(), tpd_decode(&code, &seed_l, &cfg).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn large_product_encoding_order_invariance(seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let pc = ProductCode::new(ComponentCode::extended_hamming(8).unwrap());
        let msg: Vec<BinaryVector> = (0..247)
            .map(|_| BinaryVector::from_bits(&(0..247).map(|_| rng.random::<bool>() as u8).collect::<Vec<_>>()))
            .collect();
        let a = pc.encode(&msg).unwrap();
        prop_assert_eq!(&a, &pc.encode_columns_first(&msg).unwrap());
        prop_assert!(pc.is_codeword(&a).unwrap());
    }
}
