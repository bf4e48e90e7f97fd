//! Reproduction recipes: regenerate a configuration, recompute its
//! sequences and compare each claim with its expected value.

use fatpoint::geometry::ConfigurationFile;
use fatpoint::scalar::format_rational;
use fatpoint::{
    alpha_sequence, beta_sequence, classify, gen_collinear_plus_point, gen_conic_example, gen_general_points,
    gen_prop42, gen_quasi_star, gen_star, waldschmidt_interval, AlphaSequence, CertaintyPolicy, ClassTag,
    Configuration, Engine, EngineOptions, GeneratorOptions, Rational,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Recipe, ReproduceArgs};
use crate::output::CliError;

/// Where an expected value comes from: a published statement, or a value
/// computed by this tool and pinned as a regression value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Paper,
    Derived,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Paper => "paper",
            Self::Derived => "derived",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub name: String,
    pub source: Source,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
}

impl Claim {
    fn new(name: impl Into<String>, source: Source, expected: Value, computed: Value) -> Self {
        let pass = expected == computed;
        Self {
            name: name.into(),
            source,
            expected,
            computed,
            pass,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Run {
    pub label: String,
    pub configuration: ConfigurationFile,
    pub alpha: Vec<usize>,
    pub certified: Vec<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub recipe: Recipe,
    pub m_max: Option<usize>,
    pub k_max: Option<usize>,
    pub runs: Vec<Run>,
    pub claims: Vec<Claim>,
    pub pass: bool,
}

pub struct Plan {
    pub m_max: Option<usize>,
    pub k_max: Option<usize>,
}

pub const FULL_KMAX: usize = 30;

/// Caps used by a recipe, after defaults.
pub fn plan(args: &ReproduceArgs) -> Plan {
    match args.recipe {
        Recipe::Star4 | Recipe::QuasiStar3 => Plan {
            m_max: Some(args.mmax.unwrap_or(8)),
            k_max: None,
        },
        Recipe::Prop42 => Plan {
            m_max: Some(args.mmax.unwrap_or(6)),
            k_max: None,
        },
        Recipe::SixGeneral => Plan {
            m_max: Some(args.mmax.unwrap_or(10)),
            k_max: None,
        },
        Recipe::CollinearK => Plan {
            m_max: None,
            k_max: Some(args.kmax.unwrap_or(6)),
        },
        Recipe::ConicExample => Plan {
            m_max: None,
            k_max: Some(if args.full { FULL_KMAX } else { args.kmax.unwrap_or(8) }),
        },
    }
}

fn ratio(n: usize, d: usize) -> Rational {
    Rational::new(n.into(), d.into())
}

fn rat(r: &Rational) -> Value {
    json!(format_rational(r))
}

/// `β_0, β_1, …` for a sequence that starts with `head` and then repeats
/// `cycle`.
fn periodic(head: usize, cycle: &[usize], len: usize) -> Vec<usize> {
    std::iter::once(head)
        .chain(cycle.iter().copied().cycle())
        .take(len)
        .collect()
}

fn full_beta(seq: &AlphaSequence) -> Result<Vec<usize>, CliError> {
    if seq.len() < 2 {
        return Ok(seq.values().to_vec());
    }
    Ok(beta_sequence(seq)?.full())
}

fn run_of(label: &str, cfg: &Configuration, seq: &AlphaSequence) -> Run {
    Run {
        label: label.to_string(),
        configuration: cfg.to_file(),
        alpha: seq.values().to_vec(),
        certified: seq.certified().to_vec(),
    }
}

fn need(cond: bool, what: &str) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(CliError::new(crate::output::ErrorKind::Precondition, what))
    }
}

fn tag_value(tag: &ClassTag) -> Value {
    serde_json::to_value(tag).map_or(Value::Null, |v| v["tag"].clone())
}

/// A star-like recipe: periodic β, the class tag, and the known constant
/// inside the interval.
fn periodic_recipe(
    label: &str,
    engine: &Engine,
    cfg: &Configuration,
    m_max: usize,
    head: usize,
    cycle: &[usize],
    tag: ClassTag,
) -> Result<(Run, Vec<Claim>, AlphaSequence), CliError> {
    need(m_max >= 2, "this recipe needs --mmax ≥ 2")?;
    let analysis = classify(engine, cfg, m_max)?;
    let seq = AlphaSequence::new(analysis.alpha.clone(), analysis.certified.clone())?;
    let beta = full_beta(&seq)?;
    let mut claims = vec![Claim::new(
        "beta sequence",
        Source::Paper,
        json!(periodic(head, cycle, m_max)),
        json!(beta),
    )];
    let computed_tag = analysis.classification.as_ref().map(|c| &c.tag);
    claims.push(Claim::new(
        "classification",
        Source::Paper,
        tag_value(&tag),
        computed_tag.map_or(Value::Null, tag_value),
    ));
    let (value, _) = tag.known_value().expect("named classes have a known constant");
    let w = &analysis.waldschmidt;
    claims.push(Claim::new(
        format!("interval contains {}", format_rational(&value)),
        Source::Paper,
        json!(true),
        json!(w.contains(&value)),
    ));
    Ok((run_of(label, cfg, &seq), claims, seq))
}

pub fn reproduce(args: &ReproduceArgs, options: &EngineOptions, seed: u64) -> Result<Report, CliError> {
    let plan = plan(args);
    let gen = GeneratorOptions::default();
    let mut options = options.clone();
    if args.full {
        // a certified lift at k = 30 needs hundreds of primes; stay modular
        options.policy = CertaintyPolicy::Fast;
    }
    let engine = Engine::new(options)?;
    let (runs, claims) = match args.recipe {
        Recipe::Star4 => {
            let cfg = gen_star(4, seed, &gen)?;
            let m_max = plan.m_max.expect("planned");
            let (run, claims, _) = periodic_recipe("4-star", &engine, &cfg, m_max, 3, &[1, 3], ClassTag::FourStar)?;
            (vec![run], claims)
        }
        Recipe::QuasiStar3 => {
            let cfg = gen_quasi_star(3, seed, &gen)?;
            let m_max = plan.m_max.expect("planned");
            need(m_max >= 4, "quasi_star3 needs --mmax ≥ 4")?;
            let (run, mut claims, seq) = periodic_recipe(
                "3-quasi-star",
                &engine,
                &cfg,
                m_max,
                3,
                &[2, 2, 2, 3],
                ClassTag::ThreeQuasiStar,
            )?;
            claims.push(Claim::new("alpha(4Z)", Source::Paper, json!(9), json!(seq.get(4))));
            let w = waldschmidt_interval(&seq)?;
            claims.push(Claim::new(
                "upper bound and where it is attained",
                Source::Paper,
                json!({"upper": "9/4", "at": 4}),
                json!({"upper": format_rational(&w.upper), "at": w.upper_at}),
            ));
            (vec![run], claims)
        }
        Recipe::CollinearK => {
            let k_max = plan.k_max.expect("planned");
            need(k_max >= 2, "collinear_k needs --kmax ≥ 2")?;
            let results: Vec<Result<(Run, Vec<Claim>), CliError>> = (2..=k_max)
                .into_par_iter()
                .map(|k| {
                    let cfg = gen_collinear_plus_point(k, seed.wrapping_add(k as u64), &gen)?;
                    let seq = alpha_sequence(&engine, &cfg, k)?;
                    let w = waldschmidt_interval(&seq)?;
                    let claims = vec![
                        Claim::new(
                            format!("k = {k}: alpha(kZ)"),
                            Source::Paper,
                            json!(2 * k - 1),
                            json!(seq.get(k)),
                        ),
                        Claim::new(
                            format!("k = {k}: upper bound"),
                            Source::Paper,
                            rat(&ratio(2 * k - 1, k)),
                            rat(&w.upper),
                        ),
                    ];
                    Ok((run_of(&format!("k = {k}"), &cfg, &seq), claims))
                })
                .collect();
            let mut runs = Vec::new();
            let mut claims = Vec::new();
            for r in results {
                let (run, c) = r?;
                runs.push(run);
                claims.extend(c);
            }
            (runs, claims)
        }
        Recipe::Prop42 => {
            let cfg = gen_prop42(seed, &gen)?;
            let m_max = plan.m_max.expect("planned");
            let seq = alpha_sequence(&engine, &cfg, m_max)?;
            let mut claims = vec![Claim::new("alpha(Z)", Source::Paper, json!(4), json!(seq.get(1)))];
            if m_max >= 2 {
                claims.push(Claim::new(
                    "alpha(mZ) = 3m for m ≥ 2",
                    Source::Paper,
                    json!((2..=m_max).map(|m| 3 * m).collect::<Vec<_>>()),
                    json!(seq.values()[1..]),
                ));
            }
            (vec![run_of("prop42", &cfg, &seq)], claims)
        }
        Recipe::ConicExample => {
            let cfg = gen_conic_example(seed, &gen)?;
            let k_max = plan.k_max.expect("planned");
            let seq = alpha_sequence(&engine, &cfg, k_max)?;
            let beta = full_beta(&seq)?;
            let mut claims = vec![Claim::new("alpha(Z)", Source::Paper, json!(4), json!(seq.get(1)))];
            let steady = k_max.min(29);
            if steady >= 2 {
                claims.push(Claim::new(
                    format!("increments for k = 2..{steady}"),
                    Source::Paper,
                    json!(vec![3; steady - 1]),
                    json!(beta[1..steady]),
                ));
            }
            if k_max >= 30 {
                claims.push(Claim::new(
                    "alpha(30Z) - alpha(29Z)",
                    Source::Paper,
                    json!(4),
                    json!(beta[29]),
                ));
            }
            (vec![run_of("conic example", &cfg, &seq)], claims)
        }
        Recipe::SixGeneral => {
            let cfg = gen_general_points(6, seed, &gen)?;
            let m_max = plan.m_max.expect("planned");
            need(m_max >= 2, "six_general needs --mmax ≥ 2")?;
            let analysis = classify(&engine, &cfg, m_max)?;
            let seq = AlphaSequence::new(analysis.alpha.clone(), analysis.certified.clone())?;
            let w = &analysis.waldschmidt;
            let nine_quarters = ratio(9, 4);
            let mut claims = vec![
                Claim::new(
                    "classification",
                    Source::Paper,
                    tag_value(&ClassTag::Unclassified),
                    analysis
                        .classification
                        .as_ref()
                        .map_or(Value::Null, |c| tag_value(&c.tag)),
                ),
                Claim::new(
                    format!("lower bound > 9/4 by m = {m_max}"),
                    Source::Paper,
                    json!(true),
                    json!(w.lower > nine_quarters),
                ),
            ];
            if m_max >= 10 {
                claims.push(Claim::new("alpha(10Z)", Source::Derived, json!(24), json!(seq.get(10))));
                claims.push(Claim::new(
                    "lower bound and where it is attained",
                    Source::Derived,
                    json!({"lower": "7/3", "at": 8}),
                    json!({"lower": format_rational(&w.lower), "at": w.lower_at}),
                ));
            }
            (vec![run_of("six general points", &cfg, &seq)], claims)
        }
    };
    let pass = claims.iter().all(|c| c.pass);
    Ok(Report {
        recipe: args.recipe,
        m_max: plan.m_max,
        k_max: plan.k_max,
        runs,
        claims,
        pass,
    })
}
