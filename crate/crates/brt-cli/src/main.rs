//! `brt` — batch command-line surface over the shuffle machinery.
//!
//! Every table-producing subcommand embeds the tool version, the full
//! argument echo, and the seed (where one applies) as `#`-comments (CSV) or
//! top-level fields (JSON), so identical configs reproduce byte-identical
//! artifacts.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 resource guard.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use brt_core::bounds::{fix_limit_steps, round_steps, zones_report, L2Curve};
use brt_core::chain::{
    empirical_fixed_point_histogram, evolve_exact, numeric_spectrum_oracle, step_measure,
    tv_to_uniform_exact,
};
use brt_core::hives::count_hives;
use brt_core::limits::{
    fix_moment_exact, fix_moment_limit, poisson_lower_bound, PoissonLaw, MOMENT_CSV_HEADER,
    MOMENT_ORDER_LIMIT,
};
use brt_core::partitions::Partition;
use brt_core::spectrum::{full_spectrum, ShuffleParams, SPECTRUM_CSV_HEADER};
use brt_core::tableaux::count_lr;

#[derive(Parser)]
#[command(name = "brt", version, about = "Biased random transposition shuffle toolkit")]
struct Cli {
    /// Cap worker threads (default: all cores; results are thread-count independent)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the full exact spectrum (eigenvalue per triple, with multiplicity)
    Spectrum(SpectrumArgs),
    /// Check the exact spectrum against a numeric eigendecomposition
    VerifySpectrum(VerifyArgs),
    /// Exact mixing curve: TV to uniform, ℓ² upper bound, Poisson lower bound per step
    #[command(alias = "mix-curve")]
    Tv(CurveArgs),
    /// ℓ² upper bound per step
    L2bound(CurveArgs),
    /// One Littlewood–Richardson coefficient
    Lr(LrArgs),
    /// Monte Carlo fixed-point histogram against the Poisson law
    Fixpoints(FixArgs),
    /// Exact fixed-point moments against their Poisson limits
    Moments(MomentsArgs),
    /// Appendix constants, zone sequences, and maxima report (JSON)
    Zones(ZonesArgs),
}

#[derive(Args)]
struct DeckArgs {
    /// Half-deck size of a balanced split (N = 2n)
    #[arg(long, conflicts_with_all = ["na", "nb"])]
    n: Option<usize>,
    /// Size of pile A (use with --nb; needs b = 1 unless equal)
    #[arg(long, requires = "nb")]
    na: Option<usize>,
    /// Size of pile B (use with --na)
    #[arg(long, requires = "na")]
    nb: Option<usize>,
    /// Bias b as a rational "p/q" or a decimal, in (0, 1]
    #[arg(long)]
    b: String,
}

impl DeckArgs {
    fn params(&self) -> Result<ShuffleParams, Fail> {
        let b = parse_bias(&self.b)?;
        match (self.n, self.na, self.nb) {
            (Some(n), None, None) => Ok(ShuffleParams::balanced(n, b)?),
            (None, Some(na), Some(nb)) => Ok(ShuffleParams::new(na, nb, b)?),
            _ => Err(Fail::invalid("give either --n or both --na and --nb")),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    deck: DeckArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output path (stdout when omitted)
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    deck: DeckArgs,
    /// Largest tolerated per-eigenvalue gap after sorting
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Args)]
struct CurveArgs {
    #[command(flatten)]
    deck: DeckArgs,
    /// Last step of the curve (inclusive)
    #[arg(long, default_value_t = 100)]
    t_max: usize,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LrMethod {
    Tableaux,
    Hive,
    Both,
}

#[derive(Args)]
struct LrArgs {
    /// Outer shape, e.g. "4,3,2" ("-" for empty)
    #[arg(long)]
    lambda: String,
    #[arg(long)]
    mu: String,
    #[arg(long)]
    nu: String,
    #[arg(long, value_enum, default_value = "both")]
    method: LrMethod,
}

#[derive(Args)]
struct FixArgs {
    #[command(flatten)]
    deck: DeckArgs,
    /// Number of shuffles (alternative to --c)
    #[arg(long, conflicts_with = "c")]
    t: Option<usize>,
    /// Window offset: runs round((N/2b)(log N − c)) shuffles
    #[arg(long)]
    c: Option<f64>,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MomentsArgs {
    #[command(flatten)]
    deck: DeckArgs,
    /// Window offset c
    #[arg(long, default_value_t = 0.0)]
    c: f64,
    /// Largest moment order (1..=4)
    #[arg(long, default_value_t = 3)]
    p_max: usize,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ZonesArgs {
    /// Bias b as a rational "p/q" or a decimal, in (0, 1]
    #[arg(long)]
    b: String,
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

/// A failure with its process exit code.
struct Fail {
    code: i32,
    msg: String,
}

impl Fail {
    fn invalid(msg: impl Into<String>) -> Self {
        Fail { code: 2, msg: msg.into() }
    }
}

impl From<brt_core::Error> for Fail {
    fn from(e: brt_core::Error) -> Self {
        let code = match &e {
            brt_core::Error::ResourceGuard { .. } | brt_core::Error::NonTermination { .. } => 3,
            _ => 2,
        };
        Fail { code, msg: e.to_string() }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(f) => {
            eprintln!("brt: {}", f.msg);
            std::process::exit(f.code);
        }
    }
}

fn run(command: Command) -> Result<i32, Fail> {
    match command {
        Command::Spectrum(args) => spectrum_cmd(args),
        Command::VerifySpectrum(args) => verify_cmd(args),
        Command::Tv(args) => curve_cmd(args, true),
        Command::L2bound(args) => curve_cmd(args, false),
        Command::Lr(args) => lr_cmd(args),
        Command::Fixpoints(args) => fixpoints_cmd(args),
        Command::Moments(args) => moments_cmd(args),
        Command::Zones(args) => zones_cmd(args),
    }
}

/// Exact rational from "p/q", a decimal literal, or an integer.
fn parse_bias(s: &str) -> Result<BigRational, Fail> {
    let bad = || Fail::invalid(format!("cannot parse bias {s:?}: want \"p/q\" or a decimal"));
    let value = if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        BigRational::new(p, q)
    } else if let Some((int, frac)) = s.split_once('.') {
        if !frac.chars().all(|c| c.is_ascii_digit()) || frac.is_empty() {
            return Err(bad());
        }
        let int: BigInt = if int.is_empty() { BigInt::zero() } else { int.parse().map_err(|_| bad())? };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        BigRational::new(int * &scale + frac, scale)
    } else {
        let int: BigInt = s.trim().parse().map_err(|_| bad())?;
        BigRational::from_integer(int)
    };
    if value <= BigRational::zero() || value > BigRational::one() {
        return Err(Fail::invalid(format!("bias must lie in (0, 1], got {value}")));
    }
    Ok(value)
}

fn parse_partition(s: &str, what: &str) -> Result<Partition, Fail> {
    s.parse()
        .map_err(|e| Fail::invalid(format!("bad {what} {s:?}: {e}")))
}

/// 17 significant digits, fixed exponent form — stable across runs.
fn f17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Argument echo, minus the destination path: two runs of one config are
/// byte-identical wherever they write.
fn config_echo() -> String {
    let mut args = std::env::args().skip(1).peekable();
    let mut kept = Vec::new();
    while let Some(a) = args.next() {
        if a == "-o" || a == "--output" {
            args.next();
        } else if !a.starts_with("--output=") {
            kept.push(a);
        }
    }
    kept.join(" ")
}

fn header_comments(seed: Option<u64>) -> String {
    format!(
        "# brt {}\n# config: {}\n# seed: {}\n",
        env!("CARGO_PKG_VERSION"),
        config_echo(),
        seed.map_or_else(|| "none".to_string(), |s| s.to_string()),
    )
}

fn json_preamble(seed: Option<u64>) -> String {
    format!(
        "\"version\": \"{}\",\n\"config\": \"{}\",\n\"seed\": {}",
        env!("CARGO_PKG_VERSION"),
        config_echo().replace('\\', "\\\\").replace('"', "\\\""),
        seed.map_or_else(|| "null".to_string(), |s| s.to_string()),
    )
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<(), Fail> {
    match output {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Fail::invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn spectrum_cmd(args: SpectrumArgs) -> Result<i32, Fail> {
    let p = args.deck.params()?;
    let entries = full_spectrum(&p)?;
    let mut out = String::new();
    match args.format {
        Format::Csv => {
            out += &header_comments(None);
            out += SPECTRUM_CSV_HEADER;
            out.push('\n');
            for e in &entries {
                out += &e.csv_row();
                out.push('\n');
            }
        }
        Format::Json => {
            out += "{\n";
            out += &json_preamble(None);
            out += ",\n\"entries\": [\n";
            for (i, e) in entries.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{{\"lambda\": \"{}\", \"mu\": \"{}\", \"nu\": \"{}\", \
                     \"eig_num\": \"{}\", \"eig_den\": \"{}\", \"mult\": \"{}\"}}{}",
                    e.lambda,
                    e.mu,
                    e.nu,
                    e.eig.numer(),
                    e.eig.denom(),
                    e.mult,
                    if i + 1 < entries.len() { "," } else { "" },
                );
            }
            out += "]\n}\n";
        }
    }
    emit(&args.output, &out)?;
    Ok(0)
}

fn verify_cmd(args: VerifyArgs) -> Result<i32, Fail> {
    let p = args.deck.params()?;
    let n = p.deck_size();
    let numeric = numeric_spectrum_oracle(&p)?;
    let entries = full_spectrum(&p)?;
    let n_fact: u64 = (2..=n as u64).product::<u64>().max(1);
    let total: num_bigint::BigUint = entries.iter().map(|e| e.mult.clone()).sum();
    let mut exact = Vec::with_capacity(n_fact as usize);
    for e in &entries {
        let v = e.eig.to_f64().expect("eigenvalue fits f64");
        for _ in 0..e.mult.to_usize().expect("multiplicity fits usize") {
            exact.push(v);
        }
    }
    exact.sort_by(|x, y| y.partial_cmp(x).expect("finite"));
    if total != num_bigint::BigUint::from(n_fact) {
        println!("verify-spectrum: FAIL — total multiplicity {total} ≠ {n}! = {n_fact}");
        return Ok(1);
    }
    let worst = exact
        .iter()
        .zip(&numeric)
        .map(|(a, c)| (a - c).abs())
        .fold(0.0f64, f64::max);
    println!(
        "verify-spectrum: N={n} b={} triples={} total_mult={n_fact}",
        p.b(),
        entries.len(),
    );
    println!("worst |exact − numeric| = {} (tol {})", f17(worst), f17(args.tol));
    if worst <= args.tol {
        println!("OK");
        Ok(0)
    } else {
        println!("FAIL");
        Ok(1)
    }
}

fn curve_cmd(args: CurveArgs, with_tv: bool) -> Result<i32, Fail> {
    let p = args.deck.params()?;
    let n = p.deck_size();
    let mut out = header_comments(None);
    out += if with_tv {
        "t,tv_exact,l2_bound,poisson_lower\n"
    } else {
        "t,l2_bound\n"
    };
    let b = p.b().to_f64().expect("bias fits f64");
    let measure = step_measure(&p);
    let curve = L2Curve::new(&p)?;
    let mut probs = if with_tv {
        let states: usize = (2..=n).product::<usize>().max(1);
        let mut v = vec![BigRational::zero(); states];
        v[0] = BigRational::one();
        Some(v)
    } else {
        None
    };
    for t in 0..=args.t_max {
        let bound = curve.bound(t as f64)?;
        if let Some(ref mut probs) = probs {
            let tv = tv_to_uniform_exact(probs).to_f64().expect("tv fits f64");
            // the asymptotic lower-bound curve at this step's window offset
            let c = (n as f64).ln() - 2.0 * b * t as f64 / n as f64;
            let lower = poisson_lower_bound(0.5 * c.exp())?;
            let _ = writeln!(out, "{t},{},{},{}", f17(tv), f17(bound), f17(lower));
            if t < args.t_max {
                *probs = evolve_exact(probs, n, &measure, 1)?;
            }
        } else {
            let _ = writeln!(out, "{t},{}", f17(bound));
        }
    }
    emit(&args.output, &out)?;
    Ok(0)
}

fn lr_cmd(args: LrArgs) -> Result<i32, Fail> {
    let la = parse_partition(&args.lambda, "--lambda")?;
    let mu = parse_partition(&args.mu, "--mu")?;
    let nu = parse_partition(&args.nu, "--nu")?;
    if la.size() != mu.size() + nu.size() {
        return Err(Fail::invalid(format!(
            "|λ| = {} must equal |μ| + |ν| = {}",
            la.size(),
            mu.size() + nu.size()
        )));
    }
    match args.method {
        LrMethod::Tableaux => println!("{}", count_lr(&la, &mu, &nu)),
        LrMethod::Hive => println!("{}", count_hives(&la, &mu, &nu)?),
        LrMethod::Both => {
            println!("{}, {}", count_lr(&la, &mu, &nu), count_hives(&la, &mu, &nu)?)
        }
    }
    Ok(0)
}

fn fixpoints_cmd(args: FixArgs) -> Result<i32, Fail> {
    let p = args.deck.params()?;
    let n = p.deck_size();
    let b = p.b().to_f64().expect("bias fits f64");
    let steps = match (args.t, args.c) {
        (Some(t), None) => t,
        (None, Some(c)) => round_steps(fix_limit_steps(&p, c)),
        (None, None) => return Err(Fail::invalid("give either --t or --c")),
        (Some(_), Some(_)) => unreachable!("clap conflict"),
    };
    // the comparison law lives at this step count's window offset
    let c_eff = args
        .c
        .unwrap_or_else(|| (n as f64).ln() - 2.0 * b * steps as f64 / n as f64);
    let rate = 1.0 + 0.5 * c_eff.exp();
    let poisson = PoissonLaw::new(rate)?;
    let hist = empirical_fixed_point_histogram(&p, steps, args.samples, args.seed);
    let empirical: Vec<f64> = hist
        .iter()
        .map(|&c| c as f64 / args.samples as f64)
        .collect();
    let tv = brt_core::limits::tv_discrete(&empirical, &poisson.pmf_vector());
    let mut out = header_comments(Some(args.seed));
    let _ = writeln!(out, "# steps: {steps}");
    let _ = writeln!(out, "# poisson_rate: {}", f17(rate));
    let _ = writeln!(out, "# tv_to_poisson: {}", f17(tv));
    out += "k,count,empirical_p,poisson_p\n";
    for (k, &count) in hist.iter().enumerate() {
        let _ = writeln!(out, "{k},{count},{},{}", f17(empirical[k]), f17(poisson.pmf(k)));
    }
    emit(&args.output, &out)?;
    Ok(0)
}

fn moments_cmd(args: MomentsArgs) -> Result<i32, Fail> {
    let p = args.deck.params()?;
    if args.p_max < 1 || args.p_max > MOMENT_ORDER_LIMIT {
        return Err(Fail {
            code: 3,
            msg: format!("--p-max must lie in 1..={MOMENT_ORDER_LIMIT}"),
        });
    }
    let steps = round_steps(fix_limit_steps(&p, args.c));
    let mut out = header_comments(None);
    out += MOMENT_CSV_HEADER;
    out.push('\n');
    for order in 1..=args.p_max {
        let exact = fix_moment_exact(order, steps, &p)?;
        let limit = fix_moment_limit(order, args.c);
        let _ = writeln!(
            out,
            "{order},{steps},{},{},{}",
            f17(exact),
            f17(limit),
            f17((exact - limit).abs())
        );
    }
    emit(&args.output, &out)?;
    Ok(0)
}

fn zones_cmd(args: ZonesArgs) -> Result<i32, Fail> {
    let b = parse_bias(&args.b)?.to_f64().expect("bias fits f64");
    let report = zones_report(b, args.epsilon)?;
    let seq = |v: &[f64]| {
        v.iter().map(|x| f17(*x)).collect::<Vec<_>>().join(", ")
    };
    let mut out = String::from("{\n");
    out += &json_preamble(None);
    let _ = write!(
        out,
        ",\n\"b\": {},\n\"epsilon\": {},\n\"epsilon_admissible\": {},\n",
        f17(report.b),
        f17(report.epsilon),
        report.epsilon_admissible
    );
    out += "\"kij\": {";
    let named = report.kij.as_named();
    for (i, (name, v)) in named.iter().enumerate() {
        let _ = write!(out, "\"{name}\": {}{}", f17(*v), if i + 1 < named.len() { ", " } else { "" });
    }
    out += "},\n";
    let _ = writeln!(out, "\"red_sequence\": [{}],", seq(&report.red_sequence));
    let _ = writeln!(out, "\"blue_sequence\": [{}],", seq(&report.blue_sequence));
    out += "\"maxima\": [\n";
    for (i, m) in report.maxima.iter().enumerate() {
        let _ = writeln!(
            out,
            "{{\"name\": \"{}\", \"computed\": {}, \"target\": {}, \"satisfied\": {}}}{}",
            m.name,
            f17(m.computed),
            f17(m.target),
            m.satisfied,
            if i + 1 < report.maxima.len() { "," } else { "" },
        );
    }
    out += "]\n}\n";
    emit(&args.output, &out)?;
    Ok(0)
}
