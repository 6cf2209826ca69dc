//! Command-line front end binding every module; writes CSV/JSON reports.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::Zero;

use crate::ball::{ball_size, sphere_size};
use crate::bounds::{bounds_table, macwilliams_transform, rational_string, BoundReport};
use crate::channel::{
    coverage_check, gv_experiment, simulate, ChannelSpec, Decoder,
};
use crate::code::{Budgets, LinearCode, MinDistanceMethod, TWeightEnumerator};
use crate::codefile::CodeFile;
use crate::construction::{construction1, construction1_decode, Family};
use crate::error::Error;
use crate::field::Field;
use crate::metric::{optimal_scalings_with_cap, BlockStructure, DEFAULT_SCALING_CAP};

/// An error on its way to an exit code: usage problems exit 2, domain
/// errors exit 1 with their name on stderr.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

type CResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Parser)]
#[command(
    name = "wham",
    version,
    about = "Weighted-Hamming metric toolkit for parallel symmetric channels"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tabulate the five code-size bounds over a distance range.
    Bounds(BoundsArgs),
    /// Ball size of the weighted-Hamming metric.
    Ball(BallArgs),
    /// Minimum weighted distance of a code file.
    #[command(name = "min-distance")]
    MinDistance(MinDistanceArgs),
    /// Guaranteed correction radius of a code file.
    Tau(TauArgs),
    /// T-weight enumerator of a code file.
    Enumerator(EnumeratorArgs),
    /// T-weight enumerator of the dual code.
    Dual(EnumeratorArgs),
    /// Build a two-level code with its decoder data and save it.
    Construct(ConstructArgs),
    /// Decode a received word with a constructed code's syndrome decoder.
    Decode(DecodeArgs),
    /// Monte-Carlo word-error simulation on a parallel symmetric channel.
    Simulate(SimulateArgs),
    /// Check whether every likely error pattern is guaranteed correctable.
    Coverage(CoverageArgs),
    /// Fraction of random codes reaching a target minimum distance.
    #[command(name = "gv-experiment")]
    GvExperiment(GvArgs),
    /// Exact channel decoding weights and their best integer scalings.
    Scalings(ScalingsArgs),
    /// Write the two bound-comparison tables as CSV files.
    Figure1(Figure1Args),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Auto,
    Codebook,
    SupportEnum,
}

impl From<Method> for MinDistanceMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Auto => MinDistanceMethod::Auto,
            Method::Codebook => MinDistanceMethod::Codebook,
            Method::SupportEnum => MinDistanceMethod::SupportEnum,
        }
    }
}

#[derive(Args)]
struct BoundsArgs {
    /// Alphabet size (a prime).
    #[arg(long)]
    q: u32,
    /// Block structure as length:scaling pairs, e.g. 7:1,7:2.
    #[arg(long)]
    blocks: String,
    /// Distance d or inclusive range a..b.
    #[arg(long)]
    d: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BallArgs {
    #[arg(long)]
    q: u32,
    /// Block structure as length:scaling pairs, e.g. 7:1,7:2.
    #[arg(long)]
    blocks: String,
    /// Ball radius in weighted weight.
    #[arg(long)]
    radius: u64,
    /// Emit one CSV row per sphere instead of the single ball size.
    #[arg(long)]
    per_sphere: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MinDistanceArgs {
    /// Path to a JSON code file.
    #[arg(long)]
    code: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    /// Also print a codeword attaining the minimum.
    #[arg(long)]
    witness: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TauArgs {
    #[arg(long)]
    code: PathBuf,
    /// Use the exhaustive coset-leader oracle instead of the formula.
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EnumeratorArgs {
    #[arg(long)]
    code: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConstructArgs {
    /// Code family: binary or mds.
    #[arg(long)]
    family: String,
    #[arg(long)]
    q: u32,
    /// Length of the scaling-1 block.
    #[arg(long)]
    n1: usize,
    /// Length of the scaling-2 block.
    #[arg(long)]
    n2: usize,
    /// Destination code file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct DecodeArgs {
    /// Code file produced by construct (must embed a construction).
    #[arg(long)]
    code: PathBuf,
    /// Received word as comma-separated symbols.
    #[arg(long)]
    word: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    code: PathBuf,
    /// Per-block crossover probabilities, e.g. 0.125,0.02.
    #[arg(long)]
    rho: String,
    /// Decoder: ml, wh-real, or wh-int.
    #[arg(long)]
    decoder: Decoder,
    #[arg(long)]
    trials: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CoverageArgs {
    #[arg(long)]
    code: PathBuf,
    /// Per-block crossover probabilities, e.g. 0.125,0.02.
    #[arg(long)]
    rho: String,
    /// Probability threshold for "likely" error patterns.
    #[arg(long)]
    threshold: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GvArgs {
    #[arg(long)]
    q: u32,
    /// Block structure as length:scaling pairs, e.g. 7:1,7:2.
    #[arg(long)]
    blocks: String,
    /// Dimension of the sampled codes.
    #[arg(long)]
    k: usize,
    /// Target minimum weighted distance.
    #[arg(long)]
    d_target: u64,
    #[arg(long)]
    trials: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScalingsArgs {
    #[arg(long)]
    q: u32,
    /// Per-block crossover probabilities, e.g. 0.125,0.02.
    #[arg(long)]
    rho: String,
    /// Largest integer scaling considered.
    #[arg(long, default_value_t = DEFAULT_SCALING_CAP)]
    cap: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Figure1Args {
    /// Directory receiving fig1a_q2.csv and fig1b_q7.csv.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

/// Runs the CLI on the given argument vector and returns the exit code:
/// 0 on success, 1 on a domain error, 2 on a usage error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    let first = e.to_string();
                    let first = first.lines().next().unwrap_or("error").to_string();
                    eprintln!("UsageError: {first}");
                    2
                }
            };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("UsageError: {msg}");
            2
        }
        Err(CliError::Domain(e)) => {
            eprintln!("{}: {e}", e.name());
            1
        }
    }
}

fn dispatch(cli: Cli) -> CResult<()> {
    match cli.cmd {
        Cmd::Bounds(a) => cmd_bounds(a),
        Cmd::Ball(a) => cmd_ball(a),
        Cmd::MinDistance(a) => cmd_min_distance(a),
        Cmd::Tau(a) => cmd_tau(a),
        Cmd::Enumerator(a) => cmd_enumerator(a, false),
        Cmd::Dual(a) => cmd_enumerator(a, true),
        Cmd::Construct(a) => cmd_construct(a),
        Cmd::Decode(a) => cmd_decode(a),
        Cmd::Simulate(a) => cmd_simulate(a),
        Cmd::Coverage(a) => cmd_coverage(a),
        Cmd::GvExperiment(a) => cmd_gv(a),
        Cmd::Scalings(a) => cmd_scalings(a),
        Cmd::Figure1(a) => cmd_figure1(a),
    }
}

fn parse_blocks(s: &str) -> CResult<BlockStructure> {
    let mut pairs = Vec::new();
    for part in s.split(',') {
        let (n, lambda) = part
            .split_once(':')
            .ok_or_else(|| usage(format!("malformed block {part:?}, expected n:lambda")))?;
        let n: u32 = n
            .trim()
            .parse()
            .map_err(|_| usage(format!("malformed block length {n:?}")))?;
        let lambda: u64 = lambda
            .trim()
            .parse()
            .map_err(|_| usage(format!("malformed block scaling {lambda:?}")))?;
        pairs.push((n, lambda));
    }
    BlockStructure::new(&pairs).map_err(|e| usage(e.to_string()))
}

fn parse_range(s: &str) -> CResult<(u64, u64)> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo = lo
            .trim()
            .parse()
            .map_err(|_| usage(format!("malformed range start {lo:?}")))?;
        let hi = hi
            .trim()
            .parse()
            .map_err(|_| usage(format!("malformed range end {hi:?}")))?;
        Ok((lo, hi))
    } else {
        let d = s
            .trim()
            .parse()
            .map_err(|_| usage(format!("malformed distance {s:?}")))?;
        Ok((d, d))
    }
}

fn parse_rhos(s: &str) -> CResult<Vec<f64>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse()
                .map_err(|_| usage(format!("malformed crossover {part:?}")))
        })
        .collect()
}

fn parse_word(s: &str) -> CResult<Vec<u32>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse()
                .map_err(|_| usage(format!("malformed symbol {part:?}")))
        })
        .collect()
}

/// Loads a code file and converts it; any failure is a usage error because
/// the input file, not the computation, is at fault.
fn load_code(path: &Path) -> CResult<LinearCode> {
    CodeFile::load(path)
        .and_then(|f| f.to_code())
        .map_err(|e| usage(e.to_string()))
}

fn join_u32(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn atomic_write(path: &Path, content: &str) -> CResult<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or_else(|| Path::new("."));
    let write = || -> std::io::Result<()> {
        let tmp = tempfile::NamedTempFile::new_in(dir)?;
        std::fs::write(tmp.path(), content)?;
        tmp.persist(path)?;
        Ok(())
    };
    write().map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, content: &str) -> CResult<()> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => atomic_write(path, content),
    }
}

fn pretty_json(value: &impl serde::Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports always serialize");
    text.push('\n');
    text
}

fn bounds_csv_row(r: &BoundReport) -> String {
    let plotkin = r.plotkin.map(|v| v.to_string()).unwrap_or_default();
    format!(
        "{},{},{},{},{},{}",
        r.d, r.singleton, r.hamming, r.gv, plotkin, r.lp
    )
}

fn cmd_bounds(a: BoundsArgs) -> CResult<()> {
    let bs = parse_blocks(&a.blocks)?;
    let (lo, hi) = parse_range(&a.d)?;
    let rows = bounds_table(a.q, &bs, lo, hi)?;
    let text = match a.format {
        Format::Csv => {
            let mut s = String::from("d,singleton,hamming,gv,plotkin,lp\n");
            for r in &rows {
                s.push_str(&bounds_csv_row(r));
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let arr: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "d": r.d,
                        "singleton": r.singleton,
                        "hamming": r.hamming,
                        "gv": r.gv,
                        "plotkin": r.plotkin,
                        "lp": r.lp,
                        "lp_value": rational_string(&r.lp_value),
                    })
                })
                .collect();
            pretty_json(&arr)
        }
    };
    emit(a.out.as_deref(), &text)
}

fn cmd_ball(a: BallArgs) -> CResult<()> {
    let bs = parse_blocks(&a.blocks)?;
    let text = if a.per_sphere {
        let mut s = String::from("s,sphere,ball\n");
        let mut total = BigUint::zero();
        for r in 0..=a.radius {
            let sphere = sphere_size(a.q, &bs, r)?;
            total += &sphere;
            s.push_str(&format!("{r},{sphere},{total}\n"));
        }
        s
    } else {
        format!("{}\n", ball_size(a.q, &bs, a.radius)?)
    };
    emit(a.out.as_deref(), &text)
}

fn cmd_min_distance(a: MinDistanceArgs) -> CResult<()> {
    let code = load_code(&a.code)?;
    let res = code.min_wh_distance(a.method.into(), &Budgets::default())?;
    let mut text = format!("{}\n", res.d);
    if a.witness {
        text.push_str(&join_u32(&res.witness));
        text.push('\n');
    }
    emit(a.out.as_deref(), &text)
}

fn cmd_tau(a: TauArgs) -> CResult<()> {
    let code = load_code(&a.code)?;
    let budgets = Budgets::default();
    let tau = if a.oracle {
        code.tau_oracle(&budgets)?
    } else {
        code.tau(&budgets)?
    };
    emit(a.out.as_deref(), &format!("{tau}\n"))
}

fn enumerator_text(e: &TWeightEnumerator, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut s: String = (1..=e.bs.m()).map(|i| format!("w{i},")).collect();
            s.push_str("count\n");
            for (w, count) in e.iter() {
                for x in &w.0 {
                    s.push_str(&format!("{x},"));
                }
                s.push_str(&format!("{count}\n"));
            }
            s
        }
        Format::Json => {
            let arr: Vec<serde_json::Value> = e
                .iter()
                .map(|(w, count)| {
                    serde_json::json!({
                        "weights": w.0,
                        "count": count.to_string(),
                    })
                })
                .collect();
            pretty_json(&arr)
        }
    }
}

fn cmd_enumerator(a: EnumeratorArgs, dual: bool) -> CResult<()> {
    let code = load_code(&a.code)?;
    let mut e = code.t_weight_enumerator(&Budgets::default())?;
    if dual {
        e = macwilliams_transform(&e)?;
    }
    emit(a.out.as_deref(), &enumerator_text(&e, a.format))
}

fn cmd_construct(a: ConstructArgs) -> CResult<()> {
    let family: Family = a.family.parse().map_err(|e: Error| usage(e.to_string()))?;
    let field = Field::new(a.q)?;
    let cc = construction1(field, a.n1, a.n2, family)?;
    CodeFile::from_constructed(&cc).save(&a.out)?;
    Ok(())
}

fn cmd_decode(a: DecodeArgs) -> CResult<()> {
    let file = CodeFile::load(&a.code).map_err(|e| usage(e.to_string()))?;
    let cc = file
        .to_constructed()
        .map_err(|e| usage(e.to_string()))?
        .ok_or_else(|| usage("code file has no construction object"))?;
    let word = parse_word(&a.word)?;
    match construction1_decode(&cc, &word) {
        Ok(c) => emit(a.out.as_deref(), &format!("{}\n", join_u32(&c))),
        Err(Error::DecodeFailure) => emit(a.out.as_deref(), "FAIL\n"),
        Err(e) => Err(e.into()),
    }
}

fn cmd_simulate(a: SimulateArgs) -> CResult<()> {
    if a.format != Format::Json {
        return Err(usage("simulate supports only --format json"));
    }
    let code = load_code(&a.code)?;
    let rhos = parse_rhos(&a.rho)?;
    let spec = ChannelSpec::new(code.q(), code.bs().clone(), &rhos)?;
    let stats = simulate(&code, &spec, a.decoder, a.trials, a.seed, &Budgets::default())?;
    emit(a.out.as_deref(), &pretty_json(&stats))
}

fn cmd_coverage(a: CoverageArgs) -> CResult<()> {
    let code = load_code(&a.code)?;
    let rhos = parse_rhos(&a.rho)?;
    let spec = ChannelSpec::new(code.q(), code.bs().clone(), &rhos)?;
    let (holds, witness) = coverage_check(&code, &spec, a.threshold, &Budgets::default())?;
    let report = serde_json::json!({ "holds": holds, "witness": witness });
    emit(a.out.as_deref(), &pretty_json(&report))
}

fn cmd_gv(a: GvArgs) -> CResult<()> {
    let bs = parse_blocks(&a.blocks)?;
    let field = Field::new(a.q)?;
    let res = gv_experiment(
        field,
        &bs,
        a.k,
        a.d_target,
        a.trials,
        a.seed,
        &Budgets::default(),
    )?;
    emit(a.out.as_deref(), &pretty_json(&res))
}

fn cmd_scalings(a: ScalingsArgs) -> CResult<()> {
    let rhos = parse_rhos(&a.rho)?;
    let s = optimal_scalings_with_cap(a.q, &rhos, a.cap)?;
    emit(a.out.as_deref(), &pretty_json(&s))
}

fn figure_csv(q: u32, bs: &BlockStructure, construction_k: usize) -> CResult<String> {
    let rows = bounds_table(q, bs, 1, 21)?;
    let mut text = String::from("d,singleton,hamming,gv,plotkin,lp,construction\n");
    for r in &rows {
        let construction = if r.d == 5 {
            construction_k.to_string()
        } else {
            String::new()
        };
        text.push_str(&format!("{},{construction}\n", bounds_csv_row(r)));
    }
    Ok(text)
}

fn cmd_figure1(a: Figure1Args) -> CResult<()> {
    let bs = BlockStructure::new(&[(7, 1), (7, 2)])?;
    let k2 = construction1(Field::new(2)?, 7, 7, Family::Binary)?.code().k();
    let k7 = construction1(Field::new(7)?, 7, 7, Family::Mds)?.code().k();
    std::fs::create_dir_all(&a.out_dir)
        .map_err(|e| usage(format!("cannot create {}: {e}", a.out_dir.display())))?;
    atomic_write(&a.out_dir.join("fig1a_q2.csv"), &figure_csv(2, &bs, k2)?)?;
    atomic_write(&a.out_dir.join("fig1b_q7.csv"), &figure_csv(7, &bs, k7)?)?;
    Ok(())
}
