//! The `qswap` command line. [`run`] returns the process exit code: 0 when every check passes,
//! 1 when any check fails, 2 on usage or I/O errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qswap_core::bell::{bell_state_on, BellOutcome};
use qswap_core::families::{FamilyKind, FamilySpec, QuditStateFamily};
use qswap_core::protocols::{run_secret_sharing, run_summation};
use qswap_core::verify::{
    run_case, verify_chain, CaseDescriptor, PairKind, PairSpec, SweepConfig, SweepMode, Tolerances,
};
use qswap_core::rng::random_residue;
use qswap_core::{Amplitude, Dimension, ModInt, PureState, RandomSeed};

use crate::config::{max_amplitudes, parse_sweep_config, read_secrets};
use crate::report::{format_sig, to_json, write_csv, write_json};
use crate::sweep::{check_size, run_sweep};

const ORTHONORMALITY_TOL: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(name = "qswap", version, about = "Qudit entanglement swapping: closed forms checked against dense simulation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep families, slots, partners and outcomes, comparing closed forms with the oracle.
    Verify(VerifyArgs),
    /// One swap: print the predicted and simulated states.
    DemoSwap(DemoArgs),
    /// A swapping chain of maximally entangled pairs.
    Chain(ChainArgs),
    /// Simulate the multi-party summation protocol.
    Sum(SumArgs),
    /// Simulate the secret sharing protocol.
    Qss(QssArgs),
    /// Check orthonormality of the generalized Bell basis.
    BellTable(BellTableArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PairArg {
    Max,
    Bell,
}

fn parse_dim(s: &str) -> Result<usize, String> {
    let d: usize = s.trim().parse().map_err(|_| format!("{s:?} is not an integer"))?;
    Dimension::new(d).map(Dimension::get).map_err(|e| e.to_string())
}

fn parse_family(s: &str) -> Result<FamilyKind, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = FamilyKind::ALL.iter().map(|k| k.name()).collect();
        format!("unknown family {s:?} (expected one of {})", names.join(", "))
    })
}

fn parse_outcome(s: &str) -> Result<(usize, usize), String> {
    let (u, v) = s
        .split_once(':')
        .ok_or_else(|| format!("{s:?}: expected u:v"))?;
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("{s:?}: expected u:v"));
    Ok((num(u)?, num(v)?))
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Dimensions, comma separated.
    #[arg(long = "d", value_delimiter = ',', value_parser = parse_dim)]
    dimensions: Vec<usize>,
    /// Family kinds, comma separated [default: all].
    #[arg(long, value_delimiter = ',', value_parser = parse_family)]
    families: Vec<FamilyKind>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    /// Partner kinds, comma separated [default: max,bell].
    #[arg(long, value_delimiter = ',', value_enum)]
    pairs: Vec<PairArg>,
    /// Enumerate every case (falls back to sampling above the case limit).
    #[arg(long, conflicts_with = "sampled")]
    exhaustive: bool,
    /// Draw seeded random cases.
    #[arg(long)]
    sampled: bool,
    /// Cases per (dimension, family) when sampling.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    fidelity_tol: Option<f64>,
    #[arg(long)]
    probability_tol: Option<f64>,
    /// key=value sweep config; flags given alongside override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Leave out timing so identical runs give identical reports.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Debug, Args)]
struct DemoArgs {
    #[arg(long = "d", value_parser = parse_dim)]
    d: usize,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, value_parser = parse_family, default_value = "max")]
    family: FamilyKind,
    /// Measured slot, 1-based [default: n].
    #[arg(long)]
    slot: Option<usize>,
    #[arg(long, value_enum, default_value = "max")]
    pair: PairArg,
    /// Partner Bell state as u:v (with --pair bell).
    #[arg(long, value_parser = parse_outcome, default_value = "0:0")]
    pair_state: (usize, usize),
    /// Bell outcome as u:v.
    #[arg(long, value_parser = parse_outcome, default_value = "0:0")]
    outcome: (usize, usize),
    /// Seed for random family parameters.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct ChainArgs {
    #[arg(long = "d", value_parser = parse_dim)]
    d: usize,
    /// Intermediate outcomes as u:v, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_outcome, conflicts_with = "pairs")]
    outcomes: Vec<(usize, usize)>,
    /// Number of pairs, with random outcomes drawn from --seed.
    #[arg(long)]
    pairs: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct SumArgs {
    #[arg(long = "d", value_parser = parse_dim)]
    d: usize,
    /// Secrets, comma separated.
    #[arg(long, value_delimiter = ',', required_unless_present = "secrets_file", conflicts_with = "secrets_file")]
    secrets: Vec<usize>,
    /// One-line CSV of secrets.
    #[arg(long)]
    secrets_file: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct QssArgs {
    #[arg(long = "d", value_parser = parse_dim)]
    d: usize,
    /// Number of Bobs.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct BellTableArgs {
    /// Dimensions, comma separated.
    #[arg(long = "d", value_delimiter = ',', value_parser = parse_dim, default_value = "2,3,4,5,6,7")]
    dimensions: Vec<usize>,
    /// Print the |⟨Ψ(u,v)|Ψ(u′,v′)⟩| grid.
    #[arg(long)]
    grid: bool,
}

enum Failure {
    /// Bad arguments: message plus usage on stderr, exit 2.
    Usage(String),
    /// Anything else that stops a command: exit 2.
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

fn usage(message: impl std::fmt::Display) -> Failure {
    Failure::Usage(message.to_string())
}

/// `true` when every check passed.
type Outcome = Result<bool, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                if !text.contains("Usage:") {
                    let _ = writeln!(stderr, "\n{}", Cli::command().render_usage());
                }
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    let result = match cli.command {
        Command::Verify(a) => verify(a, stdout, stderr),
        Command::DemoSwap(a) => demo_swap(a, stdout),
        Command::Chain(a) => chain(a, stdout),
        Command::Sum(a) => sum(a, stdout),
        Command::Qss(a) => qss(a, stdout),
        Command::BellTable(a) => bell_table(a, stdout),
    };
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Usage(message)) => {
            let usage = Cli::command().render_usage();
            let _ = writeln!(stderr, "error: {message}\n\n{usage}\n\nFor more information, try '--help'.");
            2
        }
        Err(Failure::Runtime(e)) => {
            let _ = writeln!(stderr, "error: {e:#}");
            2
        }
    }
}

fn dim(d: usize) -> Dimension {
    Dimension::new(d).expect("validated by the argument parser")
}

fn guard(d: usize, qudits: usize) -> Result<(), Failure> {
    let max = max_amplitudes().map_err(usage)?;
    match dim(d).pow(qudits) {
        Some(a) if a <= max => Ok(()),
        _ => Err(usage(format!(
            "a {qudits}-qudit register at d={d} exceeds {max} amplitudes (raise QSWAP_MAX_QUDITS)"
        ))),
    }
}

fn sweep_config(a: &VerifyArgs) -> Result<SweepConfig, Failure> {
    let mut config = SweepConfig {
        families: FamilyKind::ALL.to_vec(),
        ..SweepConfig::default()
    };
    if let Some(path) = &a.config {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        config = parse_sweep_config(&text, config).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    if !a.dimensions.is_empty() {
        config.dimensions = a.dimensions.clone();
    }
    if !a.families.is_empty() {
        config.families = a.families.clone();
    }
    if !a.pairs.is_empty() {
        config.pairs = a
            .pairs
            .iter()
            .map(|p| match p {
                PairArg::Max => PairKind::Max,
                PairArg::Bell => PairKind::Bell,
            })
            .collect();
    }
    if let Some(v) = a.n_min {
        config.n_min = v;
    }
    if let Some(v) = a.n_max {
        config.n_max = v;
    }
    if a.exhaustive {
        config.mode = SweepMode::Exhaustive;
    }
    if a.sampled {
        config.mode = SweepMode::Sampled;
    }
    if let Some(v) = a.samples {
        config.samples = v;
    }
    if let Some(v) = a.seed {
        config.seed = v;
    }
    if let Some(v) = a.fidelity_tol {
        config.tolerances.fidelity = v;
    }
    if let Some(v) = a.probability_tol {
        config.tolerances.probability = v;
    }
    config.validate().map_err(usage)?;
    check_size(&config, max_amplitudes().map_err(usage)?).map_err(usage)?;
    Ok(config)
}

fn verify(a: VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    let config = sweep_config(&a)?;
    let mut report = run_sweep(&config).map_err(usage)?;
    if a.no_timing {
        report = report.without_timing();
    }
    let mut buffer = Vec::new();
    match a.format {
        Format::Json => write_json(&report, &mut buffer)?,
        Format::Csv => write_csv(&report, &mut buffer).context("writing CSV")?,
    }
    let t = report.totals;
    let mut summary = format!(
        "total {} passed {} failed {} skipped {} ({})",
        t.total,
        t.passed,
        t.failed,
        t.skipped,
        if report.exhaustive { "exhaustive" } else { "sampled" }
    );
    if let Some(ms) = report.wall_ms {
        summary.push_str(&format!(" in {} ms", format_sig(ms)));
    }
    match &a.out {
        Some(path) => {
            fs::write(path, &buffer).with_context(|| format!("writing {}", path.display()))?;
            writeln!(stdout, "{summary}")?;
        }
        None => {
            stdout.write_all(&buffer)?;
            writeln!(stderr, "{summary}")?;
        }
    }
    Ok(report.all_passed())
}

fn family_spec(kind: FamilyKind, d: usize, n: usize, seed: u64) -> FamilySpec {
    match kind {
        FamilyKind::Max => FamilySpec::Max,
        _ => FamilySpec::random(kind, dim(d), n, &mut RandomSeed(seed).rng()),
    }
}

/// Display cutoff for floating-point noise in printed amplitudes.
const PRINT_EPS: f64 = 1e-14;

fn format_complex(c: Amplitude) -> String {
    let clean = |x: f64| if x.abs() < PRINT_EPS { 0.0 } else { x };
    let c = Amplitude::new(clean(c.re), clean(c.im));
    let im = format_sig(c.im.abs());
    let sign = if c.im < 0.0 { '-' } else { '+' };
    format!("{} {sign} {im}i", format_sig(c.re))
}

fn state_lines(state: &PureState) -> Vec<String> {
    let d = state.dim().get();
    let n = state.num_qudits();
    let mut lines = vec![format!("qudits {:?}", state.labels())];
    for (index, amp) in state.amplitudes().iter().enumerate() {
        if amp.norm() <= 1e-12 {
            continue;
        }
        let mut digits = vec![0; n];
        let mut rest = index;
        for slot in digits.iter_mut().rev() {
            *slot = rest % d;
            rest /= d;
        }
        let ket: Vec<String> = digits.iter().map(|x| x.to_string()).collect();
        lines.push(format!("  ({}) |{}⟩", format_complex(*amp), ket.join(",")));
    }
    lines
}

fn family_lines(family: &QuditStateFamily) -> Vec<String> {
    let shifts: Vec<usize> = family.shifts().iter().map(|s| s.value()).collect();
    let mut lines = vec![format!("shifts {shifts:?}")];
    for (j, c) in family.amplitudes().iter().enumerate() {
        lines.push(format!("  c_{j} = {}", format_complex(*c)));
    }
    lines
}

fn demo_swap(a: DemoArgs, out: &mut dyn Write) -> Outcome {
    if a.n == 0 || !a.family.supports(a.n) {
        return Err(usage(format!("family {} does not exist on {} qudits", a.family, a.n)));
    }
    let slot = a.slot.unwrap_or(a.n);
    if slot == 0 || slot > a.n {
        return Err(usage(format!("--slot must be in 1..={}", a.n)));
    }
    for (name, (u, v)) in [("--pair-state", a.pair_state), ("--outcome", a.outcome)] {
        if u >= a.d || v >= a.d {
            return Err(usage(format!("{name} entries must be below d={}", a.d)));
        }
    }
    guard(a.d, a.n + 2)?;
    let descriptor = CaseDescriptor {
        family: family_spec(a.family, a.d, a.n, a.seed),
        d: a.d,
        n: a.n,
        slot,
        pair: match a.pair {
            PairArg::Max => PairSpec::Max,
            PairArg::Bell => PairSpec::Bell {
                u: a.pair_state.0,
                v: a.pair_state.1,
            },
        },
        outcome: a.outcome,
    };
    let report = run_case(&descriptor, &Tolerances::default());
    if a.json {
        writeln!(out, "{}", to_json(&report).context("serializing report")?)?;
        return Ok(report.pass);
    }
    let (family, step) = descriptor.build().map_err(usage)?;
    writeln!(out, "family {} (d={}, n={})", a.family, a.d, a.n)?;
    for line in family_lines(&family) {
        writeln!(out, "  {line}")?;
    }
    writeln!(out, "partner {}, measured slot {slot}, outcome {:?}", descriptor.pair.name(), a.outcome)?;
    match (
        qswap_core::predict_swap(&family, &step),
        qswap_core::verify::oracle_swap(&family, &step),
    ) {
        (Ok(predicted), Ok((_, post))) => {
            writeln!(out, "predicted family")?;
            for line in family_lines(&predicted) {
                writeln!(out, "  {line}")?;
            }
            writeln!(out, "oracle post-state")?;
            for line in state_lines(&post) {
                writeln!(out, "  {line}")?;
            }
        }
        (Err(e), _) | (_, Err(e)) => writeln!(out, "no post-state: {e}")?,
    }
    writeln!(out, "probability_oracle {}", format_sig(report.probability_oracle))?;
    writeln!(out, "probability_expected {}", format_sig(report.probability_expected))?;
    writeln!(out, "fidelity {}", format_sig(report.fidelity))?;
    writeln!(out, "status {:?}", report.status)?;
    Ok(report.pass)
}

fn chain(a: ChainArgs, out: &mut dyn Write) -> Outcome {
    let d = dim(a.d);
    let outcomes: Vec<BellOutcome> = match a.pairs {
        Some(pairs) if pairs < 2 => return Err(usage("--pairs must be at least 2")),
        Some(pairs) => {
            let mut rng = RandomSeed(a.seed).rng();
            (1..pairs)
                .map(|_| BellOutcome::new(random_residue(&mut rng, d), random_residue(&mut rng, d)).expect("same dimension"))
                .collect()
        }
        None if a.outcomes.is_empty() => return Err(usage("give --outcomes or --pairs")),
        None => a
            .outcomes
            .iter()
            .map(|&(u, v)| BellOutcome::from_values(d, u, v))
            .collect::<Result<_, _>>()
            .map_err(usage)?,
    };
    let pairs = outcomes.len() + 1;
    guard(a.d, 2 * pairs)?;
    let predicted = qswap_core::predict_chain(d, &outcomes).map_err(usage)?;
    let check = verify_chain(d, &outcomes, &Tolerances::default()).map_err(usage)?;
    let listed: Vec<(usize, usize)> = outcomes.iter().map(|o| (o.u.value(), o.v.value())).collect();
    if a.json {
        let value = json!({
            "d": a.d,
            "pairs": pairs,
            "outcomes": listed,
            "amplitudes": predicted.amplitudes().iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
            "shifts": predicted.shifts().iter().map(|s| s.value()).collect::<Vec<_>>(),
            "probability_oracle": check.probability_oracle,
            "probability_expected": check.probability_expected,
            "fidelity_chain_oracle": check.fidelity_chain_oracle,
            "fidelity_multi_oracle": check.fidelity_multi_oracle,
            "fidelity_chain_multi": check.fidelity_chain_multi,
            "pass": check.pass,
        });
        writeln!(out, "{}", to_json(&value).context("serializing chain")?)?;
        return Ok(check.pass);
    }
    writeln!(out, "chain of {pairs} pairs at d={}, outcomes {listed:?}", a.d)?;
    writeln!(out, "end-to-end family on qudits 1 and {}", 2 * pairs)?;
    for line in family_lines(&predicted) {
        writeln!(out, "  {line}")?;
    }
    writeln!(out, "probability_oracle {}", format_sig(check.probability_oracle))?;
    writeln!(out, "probability_expected {}", format_sig(check.probability_expected))?;
    writeln!(out, "fidelity chain/oracle {}", format_sig(check.fidelity_chain_oracle))?;
    writeln!(out, "fidelity swaps/oracle {}", format_sig(check.fidelity_multi_oracle))?;
    writeln!(out, "fidelity chain/swaps {}", format_sig(check.fidelity_chain_multi))?;
    writeln!(out, "{}", if check.pass { "pass" } else { "FAIL" })?;
    Ok(check.pass)
}

fn residues(d: usize, values: &[usize], what: &str) -> Result<Vec<ModInt>, Failure> {
    values
        .iter()
        .map(|&x| ModInt::new(x, dim(d)).map_err(|_| usage(format!("{what} {x} is not below d={d}"))))
        .collect()
}

fn sum(a: SumArgs, out: &mut dyn Write) -> Outcome {
    let raw = match &a.secrets_file {
        Some(path) => read_secrets(path).map_err(usage)?,
        None => a.secrets.clone(),
    };
    if raw.is_empty() {
        return Err(usage("need at least one secret"));
    }
    let secrets = residues(a.d, &raw, "secret")?;
    guard(a.d, raw.len() + 3)?;
    let transcript = run_summation(dim(a.d), &secrets, RandomSeed(a.seed)).map_err(usage)?;
    writeln!(out, "{}", to_json(&transcript).context("serializing transcript")?)?;
    Ok(transcript.succeeded())
}

fn qss(a: QssArgs, out: &mut dyn Write) -> Outcome {
    if a.n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    guard(a.d, a.n + 3)?;
    let transcript = run_secret_sharing(dim(a.d), a.n, RandomSeed(a.seed)).map_err(usage)?;
    writeln!(out, "{}", to_json(&transcript).context("serializing transcript")?)?;
    Ok(transcript.succeeded())
}

fn bell_table(a: BellTableArgs, out: &mut dyn Write) -> Outcome {
    let mut all_ok = true;
    for &d in &a.dimensions {
        let states: Vec<PureState> = BellOutcome::all(dim(d))
            .map(|o| bell_state_on(o, [1, 2]))
            .collect::<Result<_, _>>()
            .context("building Bell states")?;
        let mut worst: f64 = 0.0;
        let mut grid = Vec::new();
        for (i, si) in states.iter().enumerate() {
            let mut row = Vec::new();
            for (j, sj) in states.iter().enumerate() {
                let ip = si.inner_product(sj).context("inner product")?;
                let delta = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((ip - Amplitude::new(delta, 0.0)).norm());
                row.push(ip.norm());
            }
            grid.push(row);
        }
        let ok = worst <= ORTHONORMALITY_TOL;
        all_ok &= ok;
        writeln!(
            out,
            "d={d} pairs={} max_deviation={} {}",
            states.len() * states.len(),
            format_sig(worst),
            if ok { "ok" } else { "FAIL" }
        )?;
        if a.grid {
            for row in grid {
                let cells: Vec<String> = row.iter().map(|x| format_sig(*x)).collect();
                writeln!(out, "  {}", cells.join(" "))?;
            }
        }
    }
    Ok(all_ok)
}
