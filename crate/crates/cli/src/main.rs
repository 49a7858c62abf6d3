mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use avoider_core::codes::{LinearCode, WeightEnumerator};
use avoider_core::constructions::{
    affine_code_based_set, code_based_set, count_independent_sets, flats_avoider, hypergraph_set, predicted_size,
    MAX_INDEPENDENT_SCAN,
};
use avoider_core::formats::{parse_code, parse_flats, parse_hypergraph, parse_set, write_code, write_set};
use avoider_core::geometry::{profile, PointSet, DEFAULT_FLAT_BUDGET};
use avoider_core::spectrum::{spectrum_exhaustive, SpectrumCache};
use avoider_core::transforms::{apply_word, distinct_sizes, enumerator_after_word, v_of_enumerator, word_matrix, TransformWord};
use avoider_core::Error;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};

use output::{render, Format, Report};

#[derive(Parser)]
#[command(name = "avoider", version, about = "Build and verify point sets in F₂ⁿ that avoid [k,t]-flats")]
struct Cli {
    /// Maximum number of flats a verification may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_FLAT_BUDGET)]
    budget: u64,

    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a code file.
    Code {
        #[command(subcommand)]
        action: CodeAction,
    },
    /// Build an avoider and check its size against the predicted one.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Compute the k-profile of a set and decide avoidance or evasiveness.
    Verify(VerifyArgs),
    /// Apply a word over {a, b} to a seed code.
    Transform {
        word: String,
        /// Seed code file; defaults to the trivial code of length 0.
        #[arg(long)]
        seed: Option<PathBuf>,
        /// Write the resulting code here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distinct code-based avoider sizes reachable by words of length r.
    Sizes {
        r: usize,
        /// Restrict to the balanced word family.
        #[arg(long)]
        balanced: bool,
    },
    /// Exhaustive spectrum Sp(n; k, t) for n <= 4.
    Spectrum {
        n: usize,
        k: usize,
        t: usize,
        /// Directory for cached spectra.
        #[arg(long, env = "AVOIDER_CACHE_DIR")]
        cache_dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CodeAction {
    /// Length, dimension, generator, parity check and enumerator.
    Info { file: PathBuf },
    /// The dual code.
    Dual {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weight distribution and W(1,3), W(3,1).
    Weights { file: PathBuf },
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    k: usize,
    /// Write the set file here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ConstructKind {
    /// { x : s(x) ∉ C } from a linear code file.
    CodeBased {
        #[arg(long)]
        code: PathBuf,
        #[command(flatten)]
        build: BuildArgs,
    },
    /// { x : s(x) ∉ L + y₀ } from a code file with an offset line.
    Affine {
        #[arg(long)]
        code: PathBuf,
        #[command(flatten)]
        build: BuildArgs,
    },
    /// Union of the coordinate flats of the edges of a hypergraph.
    Hypergraph {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        build: BuildArgs,
    },
    /// Union over groups of the symmetric difference of each group's flats.
    Flats {
        #[arg(long)]
        flats: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    set: PathBuf,
    #[arg(long)]
    k: usize,
    /// Decide whether no k-flat meets the set in exactly t points.
    #[arg(long, conflicts_with = "evasive", required_unless_present = "evasive")]
    t: Option<usize>,
    /// Decide whether every k-flat meets the set in at most c points.
    #[arg(long)]
    evasive: Option<usize>,
}

enum Failure {
    /// The computation ran but the object failed its check.
    Verification(String),
    Budget(String),
    Input(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Input(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Budget(m) | Failure::Input(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(format!("{e}; raise it with --budget")),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = Result<(Report, Option<Failure>), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn with_path(path: &Path) -> impl Fn(Error) -> Failure + '_ {
    move |e| match Failure::from(e) {
        Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
        other => other,
    }
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn report(value: Value) -> Report {
    match value {
        Value::Object(map) => map,
        _ => unreachable!("reports are objects"),
    }
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|x| x.to_string()).collect()
}

fn enumerator_fields(w: &WeightEnumerator) -> Value {
    json!({
        "weights": strings(w.coeffs()),
        "enumerator": w.to_string(),
        "w13": w.evaluate(1, 3).to_string(),
        "w31": w.evaluate(3, 1).to_string(),
    })
}

fn merge(mut base: Report, extra: Value) -> Report {
    base.extend(report(extra));
    base
}

fn cmd_code(action: CodeAction) -> Outcome {
    let file = match &action {
        CodeAction::Info { file } | CodeAction::Dual { file, .. } | CodeAction::Weights { file } => file,
    };
    let parsed = parse_code(&read(file)?).map_err(with_path(file))?;
    let code = &parsed.code;
    let enumerator = match parsed.affine()? {
        Some(a) => a.weight_enumerator()?,
        None => code.weight_enumerator()?,
    };
    let offset = parsed.offset.as_ref().map(|y| y.to_string());
    let out = match action {
        CodeAction::Info { .. } => merge(
            report(json!({
                "length": code.length(),
                "dim": code.dimension(),
                "generator": strings(code.generator().rows()),
                "parity_check": strings(code.parity_check().rows()),
                "offset": offset,
            })),
            enumerator_fields(&enumerator),
        ),
        CodeAction::Dual { out, .. } => {
            let dual = code.dual();
            if let Some(path) = &out {
                write(path, &write_code(&dual, None))?;
            }
            merge(
                report(json!({"length": dual.length(), "dim": dual.dimension(), "generator": strings(dual.generator().rows())})),
                enumerator_fields(&dual.weight_enumerator()?),
            )
        }
        CodeAction::Weights { .. } => merge(report(json!({"length": code.length(), "offset": offset})), enumerator_fields(&enumerator)),
    };
    Ok((out, None))
}

fn finish_construct(kind: &str, k: usize, set: PointSet, predicted: Option<BigUint>, out: Option<&Path>) -> Outcome {
    if let Some(path) = out {
        write(path, &write_set(&set))?;
    }
    let actual = BigUint::from(set.len());
    let failure = predicted
        .as_ref()
        .filter(|p| **p != actual)
        .map(|p| Failure::Verification(format!("predicted size {p} but the construction has {actual} points")));
    let r = report(json!({
        "construction": kind,
        "n": set.n(),
        "k": k,
        "predicted_size": predicted.map(|p| p.to_string()),
        "actual_size": actual.to_string(),
    }));
    Ok((r, failure))
}

fn cmd_construct(kind: ConstructKind) -> Outcome {
    match kind {
        ConstructKind::CodeBased { code, build } => {
            let parsed = parse_code(&read(&code)?).map_err(with_path(&code))?;
            if parsed.offset.is_some() {
                return Err(Failure::Input(format!("{}: has an offset; use `construct affine`", code.display())));
            }
            let set = code_based_set(&parsed.code, build.k)?;
            let predicted = predicted_size(&parsed.code.weight_enumerator()?, build.k)?;
            finish_construct("code-based", build.k, set, Some(predicted), build.out.as_deref())
        }
        ConstructKind::Affine { code, build } => {
            let parsed = parse_code(&read(&code)?).map_err(with_path(&code))?;
            let affine = parsed
                .affine()?
                .ok_or_else(|| Failure::Input(format!("{}: no offset= line for an affine code", code.display())))?;
            let set = affine_code_based_set(&affine, build.k)?;
            let predicted = predicted_size(&affine.weight_enumerator()?, build.k)?;
            finish_construct("affine", build.k, set, Some(predicted), build.out.as_deref())
        }
        ConstructKind::Hypergraph { graph, build } => {
            let h = parse_hypergraph(&read(&graph)?).map_err(with_path(&graph))?;
            let set = hypergraph_set(&h, build.k)?;
            let predicted = if h.n() <= MAX_INDEPENDENT_SCAN {
                Some((BigUint::from(1u32) << h.n()) - count_independent_sets(&h)?)
            } else {
                None
            };
            finish_construct("hypergraph", build.k, set, predicted, build.out.as_deref())
        }
        ConstructKind::Flats { flats, out } => {
            let f = parse_flats(&read(&flats)?).map_err(with_path(&flats))?;
            let set = flats_avoider(f.n, f.k, &f.groups)?;
            finish_construct("flats", f.k, set, None, out.as_deref())
        }
    }
}

fn cmd_verify(args: VerifyArgs, budget: u64) -> Outcome {
    let set = parse_set(&read(&args.set)?).map_err(with_path(&args.set))?;
    let start = Instant::now();
    let p = profile(&set, args.k, budget)?;
    eprintln!("verified in {:.3} s", start.elapsed().as_secs_f64());
    let (criterion, verdict) = match (args.t, args.evasive) {
        (Some(t), _) => (json!({"t": t}), !p.contains(t)),
        (None, Some(c)) => (json!({"evasive": c}), p.max().is_none_or(|m| m <= c)),
        (None, None) => unreachable!("clap requires one of --t and --evasive"),
    };
    let r = merge(
        report(json!({
            "n": set.n(),
            "k": args.k,
            "size": set.len(),
            "profile": p.sizes.iter().collect::<Vec<_>>(),
            "even_profile": p.is_even(),
            "flats_scanned": p.flats_scanned,
            "verdict": verdict,
        })),
        criterion,
    );
    let failure = (!verdict).then(|| Failure::Verification("the set fails the requested property".into()));
    Ok((r, failure))
}

fn cmd_transform(word: &str, seed: Option<&Path>, out: Option<&Path>) -> Outcome {
    let f: TransformWord = word.parse()?;
    let seed_code = match seed {
        Some(path) => {
            let parsed = parse_code(&read(path)?).map_err(with_path(path))?;
            if parsed.offset.is_some() {
                return Err(Failure::Input(format!("{}: seed must be a linear code", path.display())));
            }
            parsed.code
        }
        None => LinearCode::zero(0),
    };
    let seed_enumerator = seed_code.weight_enumerator()?;
    let code = apply_word(&f, &seed_code);
    if let Some(path) = out {
        write(path, &write_code(&code, None))?;
    }
    let matrix = word_matrix(&f);
    let v = matrix.apply(&v_of_enumerator(&seed_enumerator));
    let enumerator = enumerator_after_word(&f, &seed_enumerator);
    let mut failure = None;
    if v_of_enumerator(&enumerator) != v {
        failure = Some(Failure::Verification("matrix and enumerator recurrences disagree".into()));
    }
    // cross-check against enumeration while that stays cheap
    let small = code.dimension().min(code.length() - code.dimension()) <= 20;
    if small && code.weight_enumerator()? != enumerator {
        failure = Some(Failure::Verification("enumerator recurrence disagrees with direct enumeration".into()));
    }
    let r = merge(
        report(json!({
            "word": f.to_string(),
            "seed_length": seed_code.length(),
            "length": code.length(),
            "dim": code.dimension(),
            "matrix": matrix.to_string(),
        })),
        enumerator_fields(&enumerator),
    );
    Ok((r, failure))
}

fn cmd_spectrum(n: usize, k: usize, t: usize, cache_dir: Option<&Path>) -> Outcome {
    let result = match cache_dir {
        Some(dir) => SpectrumCache::new(dir).get(n, k, t)?,
        None => spectrum_exhaustive(n, k, t)?,
    };
    let value = serde_json::to_value(&result).expect("plain data");
    Ok((report(value), None))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Code { action } => cmd_code(action),
        Command::Construct { kind } => cmd_construct(kind),
        Command::Verify(args) => cmd_verify(args, cli.budget),
        Command::Transform { word, seed, out } => cmd_transform(&word, seed.as_deref(), out.as_deref()),
        Command::Sizes { r, balanced } => Ok((report(distinct_sizes(r, balanced)?.to_json()), None)),
        Command::Spectrum { n, k, t, cache_dir } => cmd_spectrum(n, k, t, cache_dir.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 4 } else { 0 });
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: could not start {threads} worker threads: {e}");
            return ExitCode::from(4);
        }
    }
    let format = cli.format;
    match run(cli) {
        Ok((r, failure)) => {
            print!("{}", render(&r, format));
            match failure {
                None => ExitCode::SUCCESS,
                Some(f) => {
                    eprintln!("error: {}", f.message());
                    ExitCode::from(f.exit_code())
                }
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
