use socs::code::ComponentCode;
use socs::simulate::{default_radius, run_point, run_sweep, CodeSelector, EbN0Sweep, SimConfig};
use socs::tpd::{DecoderKind, HalfIterationSchedule};

fn eh8(decoder: DecoderKind) -> SimConfig {
    SimConfig {
        code: CodeSelector::Eh8,
        decoder,
        radius: default_radius(decoder, &ComponentCode::extended_hamming(3).unwrap()),
        iterations: 4,
        chase_p: 3,
        sweep: EbN0Sweep::single(2.0),
        min_frame_errors: 300,
        max_frames: 20_000,
        seed: 5,
        workers: 1,
        schedule: HalfIterationSchedule::constant(7, 0.7, None),
        out: None,
    }
}

#[test]
fn exact_app_mode_is_a_lower_bound_for_socs() {
    let socs = run_point(&eh8(DecoderKind::SocsBallTestwords), 2.0).unwrap();
    let exact = run_point(&eh8(DecoderKind::ExactApp), 2.0).unwrap();
    let margin = 2.0 * (socs.ber_std_error().powi(2) + exact.ber_std_error().powi(2)).sqrt();
    assert!(socs.ber >= exact.ber - margin, "SOCS {} vs exact {} (2σ {margin})", socs.ber, exact.ber);
}

#[test]
fn repeated_sweeps_write_identical_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let mut rows = Vec::new();
    for (i, workers) in [1usize, 3].into_iter().enumerate() {
        let mut cfg = eh8(DecoderKind::SocsBallList);
        cfg.sweep = "1.0:0.5:2.0".parse().unwrap();
        cfg.min_frame_errors = 40;
        cfg.workers = workers;
        let path = dir.path().join(format!("run{i}.csv"));
        cfg.out = Some(path.clone());
        run_sweep(&cfg).unwrap();
        let text = std::fs::read_to_string(path).unwrap();
        // Drop wall_seconds, the only non-deterministic column.
        rows.push(
            text.lines()
                .map(|l| {
                    let mut f: Vec<&str> = l.split(',').collect();
                    f.remove(8);
                    f.join(",")
                })
                .collect::<Vec<_>>(),
        );
    }
    assert_eq!(rows[0], rows[1]);
    assert_eq!(rows[0].len(), 4);
}

#[test]
fn waterfall_ber_does_not_increase_with_snr() {
    let mut cfg =
        SimConfig::standard(CodeSelector::Eh256, DecoderKind::SocsBallTestwords, "4.0:0.1:4.3".parse().unwrap())
            .unwrap();
    cfg.min_frame_errors = 40;
    cfg.max_frames = 5_000;
    let recs = run_sweep(&cfg).unwrap();
    assert_eq!(recs.len(), 4);
    for w in recs.windows(2) {
        let noise = 2.0 * (w[0].ber_std_error().powi(2) + w[1].ber_std_error().powi(2)).sqrt();
        assert!(w[1].ber <= w[0].ber + noise, "{} dB: {} then {}", w[1].ebn0_db, w[0].ber, w[1].ber);
    }
}
