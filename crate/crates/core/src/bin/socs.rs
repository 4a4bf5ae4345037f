use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use socs::calibrate::{default_alpha_grid, default_beta_grid, optimize_schedule, GridSpec};
use socs::code::ComponentCode;
use socs::oracle;
use socs::simulate::{default_params, default_radius, run_sweep, CodeSelector, EbN0Sweep, ParamFile, SimConfig};
use socs::tpd::{DecoderKind, HalfIterationSchedule, TpdConfig, TurboDecoder};
use socs::{Error, Result};

#[derive(Parser)]
#[command(name = "socs", version, about = "Soft-output list decoding of product codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo BER/FER sweep.
    Simulate(SimulateArgs),
    /// Greedy per-half-iteration search for α (and β).
    Calibrate(CalibrateArgs),
    /// Decode one frame of channel LLRs read from a file.
    Decode(DecodeArgs),
    /// Run the brute-force oracle checks on short codes.
    Selftest(SelftestArgs),
}

#[derive(Args, Clone)]
struct DecoderArgs {
    /// eh256, ebch256, eh8 or custom:m,t
    #[arg(long, default_value = "eh256")]
    code: CodeSelector,
    /// cp-classic, cp-optimized, socs-beta, socs-ball-list, socs-ball-testwords, socs-testwords, exact-app
    #[arg(long, default_value = "socs-ball-testwords")]
    decoder: DecoderKind,
    /// Ball radius; defaults to t (testword balls) or ⌊(d_min−1)/2⌋ (list balls).
    #[arg(long)]
    radius: Option<usize>,
    #[arg(long, default_value_t = 4)]
    iters: usize,
    #[arg(long, default_value_t = 5)]
    p: usize,
    /// Schedule file with {decoder, design_ebn0_db, alpha, beta}.
    #[arg(long)]
    params: Option<PathBuf>,
}

impl DecoderArgs {
    fn component(&self) -> Result<ComponentCode> {
        self.code.component()
    }

    fn radius(&self, code: &ComponentCode) -> usize {
        self.radius.unwrap_or_else(|| default_radius(self.decoder, code))
    }

    fn param_file(&self) -> Result<Option<ParamFile>> {
        match &self.params {
            Some(path) => {
                let p = ParamFile::load(path)?;
                if p.decoder != self.decoder {
                    return Err(Error::Parameter(format!(
                        "{} holds a {} schedule, but --decoder is {}",
                        path.display(),
                        p.decoder,
                        self.decoder
                    )));
                }
                Ok(Some(p))
            }
            None => Ok(default_params(self.code, self.decoder)),
        }
    }

    /// Explicit or shipped schedule; a flat one when neither exists.
    fn schedule(&self) -> Result<HalfIterationSchedule> {
        let count = (2 * self.iters).saturating_sub(1);
        match self.param_file()? {
            Some(p) if p.alpha.len() == count => p.schedule(),
            Some(p) if self.params.is_some() => Err(Error::Parameter(format!(
                "schedule has {} half iterations, {} iterations need {count}",
                p.alpha.len(),
                self.iters
            ))),
            _ => Ok(HalfIterationSchedule::constant(
                count,
                0.5,
                self.decoder.uses_beta().then_some(0.5),
            )),
        }
    }

    fn tpd_config(&self) -> Result<TpdConfig> {
        let code = self.component()?;
        Ok(TpdConfig::new(self.decoder, self.iters, self.p, self.schedule()?)?.with_radius(self.radius(&code)))
    }
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    decoder: DecoderArgs,
    /// start:step:stop in dB, or a single value.
    #[arg(long)]
    ebn0: EbN0Sweep,
    #[arg(long, default_value_t = 100)]
    min_frame_errors: u64,
    #[arg(long, default_value_t = 10_000_000)]
    max_frames: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// CSV output; completed points are skipped on rerun.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CalibrateArgs {
    #[command(flatten)]
    decoder: DecoderArgs,
    /// Design Eb/N0 in dB; defaults to the shipped schedule's design point.
    #[arg(long)]
    ebn0: Option<f64>,
    #[arg(long, default_value_t = 200)]
    frames: usize,
    /// α grid as start:step:stop.
    #[arg(long)]
    alpha_grid: Option<EbN0Sweep>,
    /// Comma-separated β values.
    #[arg(long, value_delimiter = ',')]
    beta_grid: Option<Vec<f64>>,
    /// Optimize only the first N half iterations.
    #[arg(long)]
    half_iterations: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Where to write the resulting schedule file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where to write the full BMI table as JSON.
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Args)]
struct DecodeArgs {
    #[command(flatten)]
    decoder: DecoderArgs,
    /// Whitespace-separated n² channel LLRs in row-major order.
    #[arg(long)]
    input: PathBuf,
    /// Print the a-posteriori LLRs of every soft half iteration.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct SelftestArgs {
    /// Random draws per oracle check.
    #[arg(long, default_value_t = 1000)]
    draws: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Calibrate(a) => calibrate(a),
        Command::Decode(a) => decode(a),
        Command::Selftest(a) => selftest(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn set_workers(workers: usize) {
    if workers > 0 {
        // Only fails if the global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global();
    }
}

fn simulate(a: SimulateArgs) -> Result<bool> {
    let code = a.decoder.component()?;
    let cfg = SimConfig {
        code: a.decoder.code,
        decoder: a.decoder.decoder,
        radius: a.decoder.radius(&code),
        iterations: a.decoder.iters,
        chase_p: a.decoder.p,
        sweep: a.ebn0,
        min_frame_errors: a.min_frame_errors,
        max_frames: a.max_frames,
        seed: a.seed,
        workers: a.workers,
        schedule: a.decoder.schedule()?,
        out: a.out,
    };
    println!("{}", socs::simulate::CSV_HEADER);
    for rec in run_sweep(&cfg)? {
        println!("{}", rec.to_csv_row());
    }
    Ok(true)
}

fn calibrate(a: CalibrateArgs) -> Result<bool> {
    set_workers(a.workers);
    let code = a.decoder.code.product()?;
    let template = a.decoder.tpd_config()?;
    let design = match a.ebn0 {
        Some(e) => e,
        None => a
            .decoder
            .param_file()?
            .map(|p| p.design_ebn0_db)
            .filter(|e| e.is_finite())
            .ok_or_else(|| Error::Parameter("no design point known; pass --ebn0".into()))?,
    };
    let grid = GridSpec {
        alpha_grid: a.alpha_grid.map(|g| g.points()).unwrap_or_else(default_alpha_grid),
        beta_grid: a.beta_grid.unwrap_or_else(default_beta_grid),
        frames_per_point: a.frames,
        design_ebn0_db: design,
        half_iterations: a.half_iterations,
    };
    let result = optimize_schedule(&code, &template, &grid, a.seed)?;
    let params = ParamFile {
        decoder: a.decoder.decoder,
        design_ebn0_db: design,
        alpha: result.schedule.alpha.clone(),
        beta: result.schedule.beta.clone(),
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&params).map_err(|e| Error::Format(e.to_string()))?
    );
    if let Some(path) = &a.out {
        params.save(path)?;
    }
    if let Some(path) = &a.table {
        let text = serde_json::to_string_pretty(&result.table).map_err(|e| Error::Format(e.to_string()))?;
        std::fs::write(path, text)?;
    }
    Ok(true)
}

fn decode(a: DecodeArgs) -> Result<bool> {
    let code = a.decoder.code.product()?;
    let text = std::fs::read_to_string(&a.input)?;
    let l_ch = text
        .split_whitespace()
        .map(|t| t.parse::<f64>().map_err(|_| Error::Format(format!("bad LLR '{t}'"))))
        .collect::<Result<Vec<_>>>()?;
    let cfg = a.decoder.tpd_config()?.with_trace(a.trace);
    let out = TurboDecoder::new(&code, cfg)?.decode(&l_ch)?;
    for row in &out.hard {
        println!("{row}");
    }
    if let Some(trace) = out.trace {
        for (h, t) in trace.iter().enumerate() {
            println!("# half iteration {} ({:?}) a-posteriori LLRs", h + 1, t.dimension);
            for row in t.l_app.chunks(code.n()) {
                let line: Vec<String> = row.iter().map(|v| format!("{v:.6}")).collect();
                println!("{}", line.join(" "));
            }
        }
    }
    if out.empty_lists > 0 {
        eprintln!("note: {} component lists were empty", out.empty_lists);
    }
    Ok(true)
}

fn selftest(a: SelftestArgs) -> Result<bool> {
    let eh8 = ComponentCode::extended_hamming(3)?;
    let mut ok = true;
    let mut line = |name: &str, pass: bool, detail: String| {
        ok &= pass;
        println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    };
    let r = oracle::check_full_list_reduces_to_exact_app(&eh8, a.draws, a.seed)?;
    line("full-list SOCS equals exact APP", r.worst <= 1e-9, format!("max |ΔL| = {:.3e}", r.worst));
    let r = oracle::check_ball_factors(3..=12, a.draws.div_ceil(10), a.seed)?;
    line("ball factors", r.worst <= 1e-10, format!("max rel err = {:.3e}", r.worst));
    let r = oracle::check_testword_balls(3..=10, 4, a.draws.div_ceil(100), a.seed)?;
    line("testword-ball mass", r.worst <= 1e-10, format!("max rel err = {:.3e}", r.worst));
    let r = oracle::check_power_set_identity(10, a.draws.div_ceil(10), a.seed);
    line("power-set identity", r.worst <= 1e-12, format!("max |Σ − 1| = {:.3e}", r.worst));
    let r = oracle::check_list_balls(&eh8, 1, a.draws, a.seed)?;
    line("list-ball mass", r.worst <= 1e-10, format!("max rel err = {:.3e}", r.worst));
    let r = oracle::check_covered_space_validity(&eh8, a.draws, 4, a.seed)?;
    line("covered-space validity", r.passed(), format!("{r:?}"));
    Ok(ok)
}
