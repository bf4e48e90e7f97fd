use std::ffi::OsString;
use std::path::Path;

use clap::error::ErrorKind as ClapErrorKind;
use clap::Parser;
use fatpoint::bezout::{
    bezout_decompose, bezout_step_scores, check_residual_inequality, confluence_test, reconstruction_holds,
};
use fatpoint::interpolation::FatPointScheme;
use fatpoint::{
    alpha, alpha_sequence, beta_sequence, classify, gen_collinear_plus_point, gen_conic_example, gen_general_points,
    gen_prop42, gen_quasi_star, gen_star, waldschmidt_interval, AlphaSequence, BezoutInput, Configuration, Engine,
    EngineOptions, GeneratorOptions, ReductionOrder,
};
use serde::Serialize;
use serde_json::json;

use crate::args::{Cli, Command, Format, GenKind, GlobalArgs, SequenceArgs};
use crate::output::{emit, timestamp, to_json, CliError, Envelope, ErrorKind, RunManifest};
use crate::reproduce::{plan, reproduce};

/// Environment variable capping the worker threads.
pub const THREADS_VAR: &str = "FATPOINT_THREADS";

/// Parses `args`, runs the command and returns the process exit code.
/// Errors are printed to stderr as a JSON object.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => return fail(&CliError::new(ErrorKind::Usage, e.render().to_string().trim_end())),
    };
    match configure_threads().and_then(|()| dispatch(&cli)) {
        Ok(code) => code,
        Err(e) => fail(&e),
    }
}

fn fail(e: &CliError) -> i32 {
    eprintln!("{}", e.to_json());
    e.exit_code()
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = value.trim().parse().ok().filter(|&n| n >= 1).ok_or_else(|| {
        CliError::new(
            ErrorKind::Precondition,
            format!("{THREADS_VAR} must be a positive integer, got {value:?}"),
        )
    })?;
    // fails only if a pool already exists, which keeps its size
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

fn engine(global: &GlobalArgs) -> Result<Engine, CliError> {
    Ok(Engine::new(engine_options(global))?)
}

fn engine_options(global: &GlobalArgs) -> EngineOptions {
    EngineOptions {
        policy: global.policy.into(),
        prime_bits: global.prime_bits,
        seed: global.seed,
        ..EngineOptions::default()
    }
}

fn read_config(path: &Path) -> Result<Configuration, CliError> {
    Ok(Configuration::read(path)?)
}

fn json_only(global: &GlobalArgs, command: &str) -> Result<(), CliError> {
    if global.format == Format::Csv {
        return Err(CliError::new(
            ErrorKind::Precondition,
            format!("`{command}` has no CSV form; CSV is available for `sequence`"),
        ));
    }
    Ok(())
}

fn envelope<T: Serialize>(global: &GlobalArgs, manifest: &RunManifest, result: &T) -> Result<(), CliError> {
    let env = Envelope {
        command: &manifest.command,
        manifest,
        timestamp: (!global.no_timestamp).then(timestamp),
        result,
    };
    emit(&to_json(&env)?, global.output.as_ref())
}

fn dispatch(cli: &Cli) -> Result<i32, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Gen { kind, bound } => {
            json_only(g, "gen")?;
            cmd_gen(g, kind, *bound)?;
        }
        Command::Alpha { config, m } => {
            json_only(g, "alpha")?;
            let manifest = RunManifest::new("alpha", g).input(config).m_max(*m);
            envelope(g, &manifest, &cmd_alpha(g, config, *m)?)?;
        }
        Command::Sequence(args) => cmd_sequence(g, args)?,
        Command::Waldschmidt(args) => {
            json_only(g, "waldschmidt")?;
            let cfg = read_config(&args.config)?;
            let seq = alpha_sequence(&engine(g)?, &cfg, args.mmax)?;
            let result = json!({
                "alpha": seq.values(),
                "certified": seq.certified(),
                "interval": waldschmidt_interval(&seq)?,
            });
            let manifest = RunManifest::new("waldschmidt", g).input(&args.config).m_max(args.mmax);
            envelope(g, &manifest, &result)?;
        }
        Command::Classify(args) => {
            json_only(g, "classify")?;
            let cfg = read_config(&args.config)?;
            let analysis = classify(&engine(g)?, &cfg, args.mmax)?;
            let manifest = RunManifest::new("classify", g).input(&args.config).m_max(args.mmax);
            envelope(g, &manifest, &analysis)?;
        }
        Command::Bezout {
            input,
            single,
            confluence,
        } => {
            json_only(g, "bezout")?;
            let manifest = RunManifest::new("bezout", g).input(input);
            envelope(g, &manifest, &cmd_bezout(g, input, *single, *confluence)?)?;
        }
        Command::Reproduce(args) => {
            json_only(g, "reproduce")?;
            let p = plan(args);
            let mut manifest = RunManifest::new("reproduce", g);
            manifest.m_max = p.m_max;
            manifest.k_max = p.k_max;
            let report = reproduce(args, &engine_options(g), g.seed)?;
            for c in &report.claims {
                eprintln!(
                    "{}  {} [{}]: expected {}, computed {}",
                    if c.pass { "pass" } else { "FAIL" },
                    c.name,
                    c.source.as_str(),
                    c.expected,
                    c.computed
                );
            }
            envelope(g, &manifest, &report)?;
            if !report.pass {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

/// Writes a configuration file; the label records the generator and seed.
fn cmd_gen(g: &GlobalArgs, kind: &GenKind, bound: i64) -> Result<(), CliError> {
    let opts = GeneratorOptions {
        bound,
        ..GeneratorOptions::default()
    };
    let seed = g.seed;
    let (cfg, label): (Configuration, String) = match kind {
        GenKind::Star { d } => (gen_star(*d, seed, &opts)?, format!("star d={d}")),
        GenKind::QuasiStar { d } => (gen_quasi_star(*d, seed, &opts)?, format!("quasi-star d={d}")),
        GenKind::CollinearPlusPoint { k } => (
            gen_collinear_plus_point(*k, seed, &opts)?,
            format!("collinear-plus-point k={k}"),
        ),
        GenKind::Prop42 => (gen_prop42(seed, &opts)?, "prop42".to_string()),
        GenKind::ConicExample => (gen_conic_example(seed, &opts)?, "conic-example".to_string()),
        GenKind::General { count } => (gen_general_points(*count, seed, &opts)?, format!("general n={count}")),
    };
    let cfg = cfg.with_label(format!("{label} seed={seed} bound={bound}"));
    emit(&cfg.to_json(), g.output.as_ref())
}

fn cmd_alpha(g: &GlobalArgs, config: &Path, m: usize) -> Result<serde_json::Value, CliError> {
    let cfg = read_config(config)?;
    let e = engine(g)?;
    let scheme = FatPointScheme::new(cfg, m)?;
    let a = alpha(&e, &scheme)?;
    let witness = if a.certified {
        e.witness(&scheme, a.value)?
    } else {
        None
    };
    Ok(json!({
        "m": m,
        "alpha": a.value,
        "certified": a.certified,
        "witness": witness.as_ref().map(|w| json!({"form": w, "text": w.to_string()})),
    }))
}

fn betas(seq: &AlphaSequence) -> Result<Vec<usize>, CliError> {
    if seq.len() < 2 {
        return Ok(seq.values().to_vec());
    }
    Ok(beta_sequence(seq)?.full())
}

fn cmd_sequence(g: &GlobalArgs, args: &SequenceArgs) -> Result<(), CliError> {
    let cfg = read_config(&args.config)?;
    let seq = alpha_sequence(&engine(g)?, &cfg, args.mmax)?;
    let beta = betas(&seq)?;
    match g.format {
        Format::Csv => {
            let mut out = String::from("m,alpha,beta,certified");
            for (i, (&a, &c)) in seq.values().iter().zip(seq.certified()).enumerate() {
                out.push_str(&format!("\n{},{a},{},{c}", i + 1, beta[i]));
            }
            emit(&out, g.output.as_ref())
        }
        Format::Json => {
            let result = json!({
                "alpha": seq.values(),
                "certified": seq.certified(),
                "beta0": beta[0],
                "beta": &beta[1..],
            });
            let manifest = RunManifest::new("sequence", g).input(&args.config).m_max(args.mmax);
            envelope(g, &manifest, &result)
        }
    }
}

fn cmd_bezout(
    g: &GlobalArgs,
    input: &Path,
    single: bool,
    confluence: Option<usize>,
) -> Result<serde_json::Value, CliError> {
    let data = BezoutInput::read(input)?;
    Configuration::from_file(&data.config)?;
    let order = if single {
        ReductionOrder::Single { seed: g.seed }
    } else {
        ReductionOrder::Simultaneous
    };
    let scores = bezout_step_scores(&data.divisor, &data.curves)?;
    let dec = bezout_decompose(&data.divisor, &data.curves, order)?;
    let report = confluence
        .map(|trials| confluence_test(&data.divisor, &data.curves, trials, g.seed))
        .transpose()?;
    Ok(json!({
        "order": order,
        "initial_scores": scores.iter().map(|(d, e)| json!({"d": d, "e": e})).collect::<Vec<_>>(),
        "decomposition": dec,
        "reconstruction_holds": reconstruction_holds(&dec, &data.curves),
        "residual_inequality_holds": check_residual_inequality(&dec, &data.curves),
        "confluence": report.map(|r| json!({
            "trials": r.trials,
            "identical": r.identical,
            "counterexamples": r.counterexamples,
        })),
    }))
}
