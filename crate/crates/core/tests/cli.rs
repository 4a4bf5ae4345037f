use std::process::Command;

fn socs() -> Command {
    Command::new(env!("CARGO_BIN_EXE_socs"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = socs().args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn selftest_passes() {
    let (code, stdout, _) = run(&["selftest", "--draws", "100"]);
    assert_eq!(code, 0, "{stdout}");
    assert_eq!(stdout.lines().filter(|l| l.starts_with("PASS")).count(), 6);
}

#[test]
fn simulate_writes_csv_and_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ber.csv");
    let args = [
        "simulate", "--code", "eh8", "--decoder", "socs-beta", "--p", "3", "--ebn0", "2:1:3",
        "--min-frame-errors", "10", "--max-frames", "500", "--out", out.to_str().unwrap(),
    ];
    let (code, stdout, stderr) = run(&args);
    assert_eq!(code, 0, "{stderr}");
    assert_eq!(stdout.lines().count(), 3);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("ebn0_db,frames,bit_errors,frame_errors,ber,fer,decoder,code,wall_seconds,seed\n"));
    assert_eq!(text.lines().count(), 3);
    let (_, again, _) = run(&args);
    assert_eq!(again.lines().count(), 1);
}

#[test]
fn decode_returns_the_codeword_of_clean_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("llr.txt");
    // All-zero codeword, strong positive LLRs with one weak flipped bit.
    let mut l = vec!["9.0".to_string(); 64];
    l[10] = "-0.4".into();
    std::fs::write(&input, l.join(" ")).unwrap();
    let (code, stdout, stderr) = run(&[
        "decode", "--code", "eh8", "--decoder", "socs-ball-testwords", "--p", "3", "--input",
        input.to_str().unwrap(), "--trace",
    ]);
    assert_eq!(code, 0, "{stderr}");
    let lines: Vec<&str> = stdout.lines().collect();
    assert!(lines[..8].iter().all(|r| *r == "00000000"));
    assert_eq!(lines.iter().filter(|l| l.starts_with("# half iteration")).count(), 7);
}

#[test]
fn calibrate_writes_a_schedule_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("params.json");
    let (code, _, stderr) = run(&[
        "calibrate", "--code", "eh8", "--decoder", "socs-testwords", "--p", "3", "--iters", "2",
        "--ebn0", "2.0", "--frames", "5", "--alpha-grid", "0.5:0.25:1.0", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{stderr}");
    let p: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(p["decoder"], "socs-testwords");
    assert_eq!(p["alpha"].as_array().unwrap().len(), 3);
}

#[test]
fn bad_arguments_are_rejected() {
    let (code, _, stderr) = run(&["simulate", "--code", "eh8", "--decoder", "socs-beta", "--ebn0", "3:0.1:2"]);
    assert_ne!(code, 0);
    assert!(!stderr.is_empty());
    let (code, _, _) = run(&["simulate", "--code", "nope", "--ebn0", "3"]);
    assert_ne!(code, 0);
}
