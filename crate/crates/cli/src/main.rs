//! `unilines`: exact universality types of point, line and flat sequences.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use unilines_core::construct::{self, BuildMode, ConstructOptions, StackedSpec};
use unilines_core::continuous::{self, FamilySpec};
use unilines_core::explore::{self, CensusParams, ObjectClass};
use unilines_core::flats::flats_sequence_type_par;
use unilines_core::io::{self, FlatFile, LineFile, Manifest, PointFile};
use unilines_core::lines::{self, format_perm, parse_perm};
use unilines_core::points::{homogeneous_sign_par, radon_partition};
use unilines_core::rimatrix::{self, BuildOptions, RIMatrix, VerifyOptions};
use unilines_core::{Error, ExactScalar, Result};

#[derive(Parser, Debug)]
#[command(name = "unilines", version, about = "Universality types of sequences of points, lines and flats")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the homogeneous type of a sequence, if it has one.
    Classify(ClassifyArgs),
    /// Radon partition of d+2 points.
    Radon {
        #[arg(long)]
        points: PathBuf,
    },
    /// Build an RI matrix.
    BuildRi(BuildRiArgs),
    /// Check an RI matrix against its conditions.
    VerifyRi(VerifyRiArgs),
    /// Build a homogeneous line sequence of a two-sided stacked type.
    Construct(ConstructArgs),
    /// Check that a line sequence is homogeneous.
    VerifySequence {
        #[arg(long)]
        lines: PathBuf,
        /// Required type, e.g. "1 3 2".
        #[arg(long)]
        expect: Option<String>,
    },
    /// Principal and secondary Vandermondians of increasing positive parameters.
    Vandermonde {
        /// Comma-separated parameters t_1 < … < t_{d-1}.
        #[arg(long)]
        t: String,
        /// Comma-separated positive coefficients a_1, …, a_d.
        #[arg(long)]
        a: Option<String>,
    },
    /// Sample a continuous family of lines and report its type.
    Family(FamilyArgs),
    /// Census of homogeneous subsequence types over random trials.
    Census(CensusArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ClassifyArgs {
    #[arg(long)]
    points: Option<PathBuf>,
    #[arg(long)]
    lines: Option<PathBuf>,
    #[arg(long)]
    flats: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BuildRiArgs {
    /// Number of rows.
    #[arg(long)]
    rows: usize,
    /// Number of columns.
    #[arg(short, long)]
    m: usize,
    /// Build by the exact inductive rule with this ε.
    #[arg(long, conflicts_with_all = ["geometric", "stretched"])]
    epsilon: Option<ExactScalar>,
    /// Geometric template "s,t": a(i,j) = 2^(s j t^(i-1)).
    #[arg(long, conflicts_with = "stretched")]
    geometric: Option<String>,
    /// Stretched template with this stretch s; needs an even row count.
    #[arg(long)]
    stretched: Option<u64>,
    #[arg(long, default_value_t = rimatrix::DEFAULT_BUDGET_BITS)]
    budget_bits: u64,
    #[arg(short, long)]
    output: PathBuf,
    /// Also write the binding constraint of each entry.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyRiArgs {
    #[arg(long)]
    matrix: PathBuf,
    /// Defaults to the ε stored in the matrix file.
    #[arg(long)]
    epsilon: Option<ExactScalar>,
    /// Largest submatrix count checked exhaustively.
    #[arg(long, default_value_t = VerifyOptions::default().cap)]
    cap: u64,
    #[arg(long, default_value_t = VerifyOptions::default().samples)]
    samples: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(short)]
    d: usize,
    #[arg(short)]
    n: usize,
    /// Such as "asc:RL" or "desc:LR".
    #[arg(long)]
    spec: String,
    #[arg(long, default_value = "tuned")]
    mode: BuildMode,
    #[arg(long)]
    s: Option<u64>,
    #[arg(long)]
    g: Option<u64>,
    #[arg(long, default_value_t = 8)]
    retries: u32,
    #[arg(long)]
    epsilon: Option<ExactScalar>,
    #[arg(long, default_value_t = rimatrix::DEFAULT_BUDGET_BITS)]
    budget_bits: u64,
    #[arg(short, long)]
    output: PathBuf,
    /// Defaults to the output path with extension ".manifest.json".
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Also write the underlying matrix.
    #[arg(long)]
    matrix: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// FamilySpec JSON file.
    #[arg(long)]
    spec: PathBuf,
    /// Comma-separated parameters; defaults to --count points of the domain.
    #[arg(long, conflicts_with = "count")]
    t: Option<String>,
    #[arg(long, default_value_t = 8)]
    count: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long, default_value = "oriented-lines")]
    class: ObjectClass,
    #[arg(short)]
    d: usize,
    /// Flat dimension.
    #[arg(short, default_value_t = 1)]
    k: usize,
    /// Objects per trial.
    #[arg(short = 'N', long = "count")]
    count: usize,
    /// Length of the homogeneous subsequence sought.
    #[arg(short)]
    n: usize,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Coordinates are drawn from [-bound, bound].
    #[arg(long, default_value_t = 10)]
    bound: i64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::GeneralPosition { .. } | Error::Degenerate(_) => 2,
        Error::VerificationFailed(_) => 3,
        Error::GuardrailRefusal { .. } => 4,
        _ => 1,
    }
}

fn parse_scalars(s: &str) -> Result<Vec<ExactScalar>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

fn read_lines(path: &Path) -> Result<LineFile> {
    let file: LineFile = io::read_json(path)?;
    file.validate()?;
    Ok(file)
}

fn classify(args: &ClassifyArgs, jobs: usize) -> Result<String> {
    if let Some(p) = &args.points {
        let seq = io::read_json::<PointFile>(p)?.into_sequence()?;
        return Ok(match homogeneous_sign_par(&seq, jobs)? {
            Some(s) => format!("type: {s}"),
            None => "type: none".into(),
        });
    }
    if let Some(p) = &args.lines {
        let file = read_lines(p)?;
        if !file.oriented {
            return Ok(match lines::unoriented_sequence_type(&file.lines)? {
                Some(profile) => format!("type: {profile}"),
                None => "type: none".into(),
            });
        }
        return Ok(match lines::sequence_type_par(&file.lines, jobs)? {
            Some(t) => format!("type: {t}"),
            None => "type: none".into(),
        });
    }
    let p = args.flats.as_ref().expect("clap requires one input");
    let file: FlatFile = io::read_json(p)?;
    file.validate()?;
    Ok(match flats_sequence_type_par(&file.flats, jobs)? {
        Some(t) => format!("type: {t}"),
        None => "type: none".into(),
    })
}

fn radon(path: &Path) -> Result<String> {
    let seq = io::read_json::<PointFile>(path)?.into_sequence()?;
    let part = radon_partition(seq.points())?;
    let set = |s: &std::collections::BTreeSet<usize>| {
        s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
    };
    Ok(format!(
        "X: {{{}}}\nY: {{{}}}\ninterlacing: {}",
        set(&part.x),
        set(&part.y),
        part.is_interlacing()
    ))
}

fn build_ri(args: &BuildRiArgs) -> Result<String> {
    let mat = if let Some(eps) = &args.epsilon {
        let opts = BuildOptions {
            budget_bits: args.budget_bits,
            ..BuildOptions::default()
        };
        let (mat, trace) = rimatrix::build_exact_with(args.rows, args.m, eps, &opts)?;
        if let Some(t) = &args.trace {
            io::write_json(t, &trace)?;
        }
        mat
    } else if let Some(g) = &args.geometric {
        let parts: Vec<u64> = g
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad template {g:?}"))))
            .collect::<Result<_>>()?;
        let [s, t] = parts[..] else {
            return Err(Error::Parse(format!("expected \"s,t\", got {g:?}")));
        };
        rimatrix::build_geometric(args.rows, args.m, s, t)?
    } else if let Some(s) = args.stretched {
        if !args.rows.is_multiple_of(2) {
            return Err(Error::InvalidParameter("the stretched template has 2d rows".into()));
        }
        rimatrix::build_stretched(args.rows / 2, args.m, s)?
    } else {
        return Err(Error::InvalidParameter(
            "one of --epsilon, --geometric or --stretched is required".into(),
        ));
    };
    io::write_json(&args.output, &mat)?;
    Ok(format!(
        "{}x{} {} matrix, largest entry {} bits",
        mat.rows,
        mat.m,
        serde_json::to_value(mat.mode).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
        mat.max_bits()
    ))
}

fn verify_ri(args: &VerifyRiArgs, seed: u64, jobs: usize) -> Result<String> {
    let mat: RIMatrix = io::read_json(&args.matrix)?;
    let eps = args
        .epsilon
        .clone()
        .or_else(|| mat.epsilon.clone())
        .ok_or_else(|| Error::InvalidParameter("no ε given and none stored in the matrix".into()))?;
    let opts = VerifyOptions {
        cap: args.cap,
        samples: args.samples,
        seed,
        jobs,
        ..VerifyOptions::default()
    };
    let report = rimatrix::verify_ri_with(&mat, &eps, &opts)?;
    if let Some(o) = &args.output {
        io::write_json(o, &report)?;
    }
    let mut out = format!("epsilon {}, {} submatrices, {:?}\n", report.epsilon, report.submatrices, report.sampling);
    for c in &report.checks {
        let _ = write!(out, "{:<12}{}", c.condition.to_string(), if c.passed { "pass" } else { "FAIL" });
        if let Some(w) = &c.witness {
            let _ = write!(out, "  rows {:?} cols {:?}: {}", w.rows, w.cols, w.detail);
        }
        out.push('\n');
    }
    out.pop();
    if !report.all_pass() {
        eprintln!("{out}");
        return Err(Error::VerificationFailed("matrix violates the RI conditions".into()));
    }
    Ok(out)
}

fn manifest_path(output: &Path) -> PathBuf {
    let stem = output.file_stem().map_or_else(|| "out".into(), |s| s.to_string_lossy().into_owned());
    output.with_file_name(format!("{stem}.manifest.json"))
}

fn run_construct(args: &ConstructArgs, jobs: usize) -> Result<String> {
    let spec = StackedSpec::parse_for(&args.spec, args.d)?;
    let opts = ConstructOptions {
        jobs,
        s: args.s,
        g: args.g,
        retries: args.retries,
        epsilon: args.epsilon.clone(),
        budget_bits: args.budget_bits,
    };
    let seq = construct::build_universal_lines(args.d, args.n, &spec, args.mode, &opts)?;
    io::write_json(&args.output, &LineFile::new(seq.d, seq.lines.clone()))?;
    let manifest = args.manifest.clone().unwrap_or_else(|| manifest_path(&args.output));
    io::write_json(&manifest, &Manifest::of(&seq))?;
    if let Some(m) = &args.matrix {
        io::write_json(m, &seq.matrix)?;
    }
    Ok(format!(
        "{spec}: type {} with {} lines, verified {}",
        format_perm(&seq.target()),
        seq.n,
        seq.verified
    ))
}

fn verify_sequence(path: &Path, expect: Option<&str>, jobs: usize) -> Result<String> {
    let file = read_lines(path)?;
    let expected = expect.map(parse_perm).transpose()?;
    match lines::sequence_type_par(&file.lines, jobs)? {
        None => Err(Error::VerificationFailed("sequence is not homogeneous".into())),
        Some(t) => match expected {
            Some(e) if e != t.sigma => Err(Error::VerificationFailed(format!(
                "sequence has type {t}, expected {}",
                format_perm(&e)
            ))),
            _ => Ok(format!("type: {t}")),
        },
    }
}

fn vandermonde(t: &str, a: Option<&str>) -> Result<String> {
    let ts = parse_scalars(t)?;
    let v0 = continuous::vandermonde(&ts)?;
    let mut out = String::new();
    for j in 0..=ts.len() {
        let vj = continuous::secondary_vandermonde(&ts, j)?;
        let ej = continuous::elem_symmetric(&ts, j);
        let holds = vj == &ej * &v0;
        let _ = writeln!(out, "V_{j} = {vj}  E_{j} = {ej}  V_{j} = E_{j} V_0: {holds}");
    }
    if let Some(a) = a {
        let coeffs = parse_scalars(a)?;
        let det = continuous::det_a(&coeffs, &ts)?;
        let _ = writeln!(out, "det_A = {det}");
    }
    out.pop();
    Ok(out)
}

fn family(args: &FamilyArgs, jobs: usize) -> Result<String> {
    let spec: FamilySpec = io::read_json(&args.spec)?;
    spec.validate()?;
    let ts = match &args.t {
        Some(t) => parse_scalars(t)?,
        None => spec.effective_domain().sample(args.count),
    };
    let ls = continuous::family_lines(&spec, &ts)?;
    if let Some(o) = &args.output {
        io::write_json(o, &LineFile::new(spec.d, ls.clone()))?;
    }
    let mut out = match lines::sequence_type_par(&ls, jobs)? {
        Some(t) => format!("type: {t}"),
        None => "type: none".into(),
    };
    if !continuous::coefficients_positive_increasing_at(&spec, &ts) {
        out.push_str("\nnote: coefficients are not positive and increasing on these parameters");
    }
    Ok(out)
}

fn census(args: &CensusArgs, seed: u64, jobs: usize) -> Result<String> {
    let params = CensusParams {
        class: args.class,
        d: args.d,
        k: args.k,
        count: args.count,
        n: args.n,
        trials: args.trials,
        seed,
        bound: args.bound,
        jobs,
    };
    let c = explore::census(&params)?;
    if let Some(o) = &args.output {
        io::write_json(o, &c)?;
    }
    let mut out = format!("{} trials, seed {}\n", c.trials, c.seed);
    for (ty, count) in &c.histogram {
        let _ = writeln!(out, "{ty:<24}{count}");
    }
    let _ = writeln!(out, "{:<24}{}", "not found", c.not_found);
    let _ = write!(out, "{:<24}{}", "rejected draws", c.failures);
    if c.abandoned > 0 {
        let _ = write!(out, "\n{:<24}{}", "abandoned", c.abandoned);
    }
    for hit in &c.watch_hits {
        let _ = write!(out, "\nwatch-list: trial {} indices {:?} type {}", hit.trial, hit.indices, hit.ty);
    }
    Ok(out)
}

fn run(cli: &Cli) -> Result<String> {
    let (seed, jobs) = (cli.seed, cli.jobs.max(1));
    match &cli.command {
        Command::Classify(a) => classify(a, jobs),
        Command::Radon { points } => radon(points),
        Command::BuildRi(a) => build_ri(a),
        Command::VerifyRi(a) => verify_ri(a, seed, jobs),
        Command::Construct(a) => run_construct(a, jobs),
        Command::VerifySequence { lines, expect } => verify_sequence(lines, expect.as_deref(), jobs),
        Command::Vandermonde { t, a } => vandermonde(t, a.as_deref()),
        Command::Family(a) => family(a, jobs),
        Command::Census(a) => census(a, seed, jobs),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
