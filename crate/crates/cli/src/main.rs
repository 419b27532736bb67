use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use morsepeak::io::{self as mio, Document};
use morsepeak::metrics::{morse_distance, wasserstein_any, AnyDiagram, PNorm, Slack};
use morsepeak::stability::{self, GenParams, StabilityReport, Transform, TrialConfig};
use morsepeak::{
    denoise, extract_critical_points, persistence_transformation, reduced_persistence_transformation,
    to_persistence_diagram, validate, DiagramKind, Domain, Error, MorseSet, PdSet, PtSet, RptSet,
};

mod svg;

/// Peak persistence with positions: extraction, transformations, distances
/// and stability checks for one-dimensional signals.
#[derive(Debug, Parser)]
#[command(name = "morsepeak", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Extract critical points from `x,y` samples.
    Extract(ExtractArgs),
    /// Compute PT, RPT or PD from samples, Morse sets or a PT document.
    Transform(TransformArgs),
    /// Distance between two inputs.
    Distance(DistanceArgs),
    /// Randomised check of the stability bounds.
    Stability(StabilityArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SlackArg {
    Diagonal,
    PadOrigin,
}

impl From<SlackArg> for Slack {
    fn from(s: SlackArg) -> Self {
        match s {
            SlackArg::Diagonal => Slack::Diagonal,
            SlackArg::PadOrigin => Slack::PadOrigin,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Pt,
    Rpt,
    Pd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistanceKind {
    /// Morse sets when both inputs are, otherwise the inputs' diagram kind.
    Auto,
    Morse,
    Pt,
    Rpt,
    Pd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TransformArg {
    Pt,
    Rpt,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Input file (CSV samples or JSON); `-` reads standard input.
    input: PathBuf,
    /// Sample runs within this height of their first sample count as one
    /// plateau.
    #[arg(long, default_value_t = 0.0)]
    plateau_eps: f64,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to a file instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExtractArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct TransformArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = KindArg::Pt)]
    kind: KindArg,
    /// Drop features with persistence below this threshold.
    #[arg(long, default_value_t = 0.0)]
    tau: f64,
    /// Give the essential feature a finite persistence (RPT only).
    #[arg(long)]
    clip_essential: bool,
    /// Also write a plot of the result.
    #[arg(long)]
    svg: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct DistanceArgs {
    a: PathBuf,
    b: PathBuf,
    #[arg(long, value_enum, default_value_t = DistanceKind::Auto)]
    kind: DistanceKind,
    /// Exponent in [1, inf]; `inf` gives the bottleneck distance.
    #[arg(long, default_value = "2")]
    p: PNorm,
    #[arg(long, value_enum, default_value_t = SlackArg::Diagonal)]
    slack: SlackArg,
    #[arg(long)]
    clip_essential: bool,
    #[arg(long, default_value_t = 0.0)]
    plateau_eps: f64,
}

#[derive(Debug, Args)]
struct StabilityArgs {
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Exponents to check; repeat for several.
    #[arg(long = "p", default_values = ["1", "2", "inf"])]
    p: Vec<PNorm>,
    #[arg(long, value_enum, default_values = ["pt"])]
    transform: Vec<TransformArg>,
    #[arg(long, value_enum, default_values = ["pad-origin"])]
    slack: Vec<SlackArg>,
    /// Perturbation size.
    #[arg(long, default_value_t = 0.05)]
    epsilon: f64,
    #[arg(long, default_value_t = 1)]
    min_peaks: usize,
    #[arg(long, default_value_t = 20)]
    max_peaks: usize,
    /// Also run ungated trials where one peak is removed from the second set.
    #[arg(long)]
    unequal: bool,
    #[arg(long, default_value = "stability-report.json")]
    out: PathBuf,
    /// Shrink failing gated trials and save them here as JSON fixtures.
    #[arg(long)]
    fixtures: Option<PathBuf>,
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

enum Input {
    Sets(Vec<MorseSet>),
    Diagram(AnyDiagram),
}

/// CSV samples are extracted; JSON documents are recognised by shape and
/// Morse sets in them are validated.
fn load(path: &Path, plateau_eps: f64) -> anyhow::Result<Input> {
    let text = read_input(path)?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        match mio::parse_document(&value)? {
            Document::MorseSets(sets) => {
                for s in &sets {
                    let report = validate(s);
                    if !report.is_valid() {
                        return Err(Error::InvalidMorseSet(report).into());
                    }
                }
                Ok(Input::Sets(sets))
            }
            Document::Diagram(d) => Ok(Input::Diagram(d)),
        }
    } else {
        let series = mio::parse_series_csv(&text)?;
        Ok(Input::Sets(extract_critical_points(&series, plateau_eps)?))
    }
}

fn emit(out: &OutputArgs, json: serde_json::Value, csv: impl FnOnce() -> String) -> anyhow::Result<()> {
    let body = match out.format {
        Format::Json => serde_json::to_string(&json)? + "\n",
        Format::Csv => csv(),
    };
    match &out.output {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            io::stdout().write_all(body.as_bytes())?;
            Ok(())
        }
    }
}

fn cmd_extract(args: &ExtractArgs) -> anyhow::Result<()> {
    let sets = match load(&args.input.input, args.input.plateau_eps)? {
        Input::Sets(s) => s,
        Input::Diagram(d) => bail!(Error::Parse(format!("expected samples or Morse sets, got a {} document", d.kind()))),
    };
    emit(&args.out, mio::morse_sets_to_json(&sets), || mio::morse_sets_to_csv(&sets))
}

fn pt_of(sets: &[MorseSet]) -> anyhow::Result<PtSet> {
    Ok(PtSet::union(sets.iter().map(persistence_transformation).collect::<Result<Vec<_>, _>>()?))
}

fn rpt_of(sets: &[MorseSet], clip: bool) -> anyhow::Result<RptSet> {
    Ok(RptSet::union(
        sets.iter().map(|s| reduced_persistence_transformation(s, clip)).collect::<Result<Vec<_>, _>>()?,
    ))
}

fn cmd_transform(args: &TransformArgs) -> anyhow::Result<()> {
    if args.tau.is_nan() || args.tau < 0.0 {
        bail!(Error::InvalidParameter(format!("tau must be >= 0, got {}", args.tau)));
    }
    let input = load(&args.input.input, args.input.plateau_eps)?;
    let result = match (input, args.kind) {
        (Input::Sets(sets), KindArg::Pt) => AnyDiagram::Pt(denoise(&pt_of(&sets)?, args.tau)),
        (Input::Sets(sets), KindArg::Pd) => AnyDiagram::Pd(to_persistence_diagram(&denoise(&pt_of(&sets)?, args.tau))),
        (Input::Sets(sets), KindArg::Rpt) => {
            let mut rpt = rpt_of(&sets, args.clip_essential)?;
            rpt.features.retain(|f| f.persistence >= args.tau);
            AnyDiagram::Rpt(rpt)
        }
        (Input::Diagram(AnyDiagram::Pt(pt)), KindArg::Pt) => AnyDiagram::Pt(denoise(&pt, args.tau)),
        (Input::Diagram(AnyDiagram::Pt(pt)), KindArg::Pd) => AnyDiagram::Pd(to_persistence_diagram(&denoise(&pt, args.tau))),
        (Input::Diagram(d), kind) => bail!(Error::KindMismatch { left: d.kind(), right: diagram_kind(kind) }),
    };
    if let Some(path) = &args.svg {
        let plot = match &result {
            AnyDiagram::Pt(x) => svg::pt_svg(x),
            AnyDiagram::Rpt(x) => svg::rpt_svg(x),
            AnyDiagram::Pd(x) => svg::pd_svg(x),
        };
        fs::write(path, plot).with_context(|| format!("writing {}", path.display()))?;
    }
    emit(&args.out, mio::diagram_to_json(&result), || match &result {
        AnyDiagram::Pt(x) => mio::pt_to_csv(x),
        AnyDiagram::Rpt(x) => mio::rpt_to_csv(x),
        AnyDiagram::Pd(x) => mio::pd_to_csv(x),
    })
}

fn diagram_kind(k: KindArg) -> DiagramKind {
    match k {
        KindArg::Pt => DiagramKind::Pt,
        KindArg::Rpt => DiagramKind::Rpt,
        KindArg::Pd => DiagramKind::Pd,
    }
}

fn single(sets: Vec<MorseSet>, path: &Path) -> anyhow::Result<MorseSet> {
    let n = sets.len();
    let mut it = sets.into_iter();
    match (it.next(), n) {
        (Some(s), 1) => Ok(s),
        _ => bail!(Error::Parse(format!("{}: expected exactly one Morse set, found {n}", path.display()))),
    }
}

fn as_diagram(input: Input, kind: DiagramKind, clip: bool) -> anyhow::Result<AnyDiagram> {
    Ok(match (input, kind) {
        (Input::Diagram(d), _) => d,
        (Input::Sets(s), DiagramKind::Pt) => AnyDiagram::Pt(pt_of(&s)?),
        (Input::Sets(s), DiagramKind::Rpt) => AnyDiagram::Rpt(rpt_of(&s, clip)?),
        (Input::Sets(s), DiagramKind::Pd) => AnyDiagram::Pd(PdSet {
            points: to_persistence_diagram(&pt_of(&s)?).points,
        }),
    })
}

fn cmd_distance(args: &DistanceArgs) -> anyhow::Result<()> {
    let a = load(&args.a, args.plateau_eps)?;
    let b = load(&args.b, args.plateau_eps)?;
    let kind = match args.kind {
        DistanceKind::Morse => None,
        DistanceKind::Pt => Some(DiagramKind::Pt),
        DistanceKind::Rpt => Some(DiagramKind::Rpt),
        DistanceKind::Pd => Some(DiagramKind::Pd),
        DistanceKind::Auto => match (&a, &b) {
            (Input::Sets(_), Input::Sets(_)) => None,
            (Input::Diagram(d), _) | (_, Input::Diagram(d)) => Some(d.kind()),
        },
    };
    let d = match kind {
        None => match (a, b) {
            (Input::Sets(x), Input::Sets(y)) => morse_distance(&single(x, &args.a)?, &single(y, &args.b)?, args.p)?,
            (Input::Diagram(d), _) | (_, Input::Diagram(d)) => {
                bail!(Error::Parse(format!("Morse-set distance needs Morse sets, got a {} document", d.kind())))
            }
        },
        Some(kind) => {
            let (x, y) = (as_diagram(a, kind, args.clip_essential)?, as_diagram(b, kind, args.clip_essential)?);
            for d in [&x, &y] {
                if d.kind() != kind {
                    bail!(Error::KindMismatch { left: d.kind(), right: kind });
                }
            }
            wasserstein_any(&x, &y, args.p, args.slack.into())?
        }
    };
    println!("{d}");
    Ok(())
}

fn cmd_stability(args: &StabilityArgs) -> anyhow::Result<bool> {
    let config = TrialConfig {
        gen: GenParams {
            peak_count: (args.min_peaks, args.max_peaks),
            domain: Domain::new(0.0, 100.0),
            heights: (0.0, 10.0),
            seed: args.seed,
        },
        trials: args.trials,
        epsilon: args.epsilon,
        norms: args.p.clone(),
        transforms: args
            .transform
            .iter()
            .map(|t| match t {
                TransformArg::Pt => Transform::Pt,
                TransformArg::Rpt => Transform::Rpt,
            })
            .collect(),
        slacks: args.slack.iter().map(|&s| s.into()).collect(),
        unequal: args.unequal,
    };
    config.gen.check()?;
    if !(args.epsilon >= 0.0 && args.epsilon.is_finite()) {
        bail!(Error::InvalidParameter(format!("epsilon must be finite and >= 0, got {}", args.epsilon)));
    }
    let reports = stability::run_trials(&config, args.seed)?;
    let json = serde_json::Value::Array(reports.iter().map(StabilityReport::to_json).collect());
    fs::write(&args.out, serde_json::to_string_pretty(&json)? + "\n")
        .with_context(|| format!("writing {}", args.out.display()))?;

    let failed: Vec<&StabilityReport> = reports.iter().filter(|r| r.gated && !r.holds).collect();
    let gated = reports.iter().filter(|r| r.gated).count();
    println!("{} of {gated} gated checks hold; report written to {}", gated - failed.len(), args.out.display());
    for r in &failed {
        eprintln!(
            "violation: seed {:#018x} {} p={} {}: lhs {} > rhs {}",
            r.seed, r.transform, r.p, r.slack, r.lhs, r.rhs
        );
    }
    if let Some(dir) = &args.fixtures {
        for r in &failed {
            let (k, l) = stability::trial_sets(&config, r.seed, false)?;
            let (k, l) = stability::shrink_counterexample(&k, &l, r.p, r.transform, r.slack);
            let report = stability::check_stability(&k, &l, r.p, r.transform, r.slack)?;
            let report = StabilityReport { seed: r.seed, ..report };
            let path = stability::persist_fixture(dir, &report, &k, &l)?;
            eprintln!("fixture: {}", path.display());
        }
    }
    Ok(failed.is_empty())
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("MORSEPEAK_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| anyhow!(Error::InvalidParameter(format!("MORSEPEAK_THREADS must be a positive integer, got {v:?}"))))?;
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global()?;
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::InvalidMorseSet(_)) => 3,
        Some(Error::KindMismatch { .. }) => 4,
        Some(Error::Parse(_) | Error::EmptyInput(_) | Error::NonMonotoneAbscissa { .. } | Error::InvalidParameter(_)) => 2,
        Some(Error::UnmatchableInfinity | Error::Infeasible) => 1,
        None if err.downcast_ref::<io::Error>().is_some() => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Extract(a) => cmd_extract(a).map(|()| true),
        Command::Transform(a) => cmd_transform(a).map(|()| true),
        Command::Distance(a) => cmd_distance(a).map(|()| true),
        Command::Stability(a) => cmd_stability(a),
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
