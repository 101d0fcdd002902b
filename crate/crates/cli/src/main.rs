use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ropebound_core::config::RunConfig;
use ropebound_core::corpus::{self, CorpusError};
use ropebound_core::diagram::{parse_pd, DiagramError, LinkDiagram};
use ropebound_core::lattice::{
    format_lattice, insert_kink, measure_linking, parse_lattice, project_with, LatticeError, LatticeLink,
    ProjectOptions, DEFAULT_DIRECTION,
};
use ropebound_core::pipeline::{self, Check, KnotInput, PipelineError, VerifyReport};
use ropebound_core::skein::{EngineConfig, SkeinEngine, SkeinError};

mod exit {
    pub const VERIFICATION: u8 = 1;
    pub const INVALID_INPUT: u8 = 2;
    pub const RESOURCE_LIMIT: u8 = 3;
    pub const NOT_A_KNOT: u8 = 4;
    pub const DEGENERATE_PROJECTION: u8 = 5;
    pub const IO: u8 = 6;
}

#[derive(Parser)]
#[command(name = "ropebound", version, about = "Knot polynomials, lattice satellites and ropelength lower bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the HOMFLY-PT or Kauffman polynomial of a PD file.
    Poly {
        kind: PolyKind,
        file: PathBuf,
        #[arg(long, default_value_t = 10_000_000)]
        node_budget: u64,
    },
    /// Print the reverse parallel of a knot with the given linking number.
    Satellite {
        #[arg(long, allow_hyphen_values = true)]
        framing: i64,
        file: PathBuf,
    },
    /// Lattice polygon operations.
    Lattice {
        op: LatticeOp,
        file: PathBuf,
        /// Kink sign.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        sign: i64,
        /// Projection direction as `x,y,z`.
        #[arg(long, value_parser = parse_direction, allow_hyphen_values = true)]
        direction: Option<[f64; 3]>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        retries: usize,
    },
    /// Run a verification over corpus knots and write JSON and CSV reports.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyKind {
    Homfly,
    Kauffman,
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeOp {
    Validate,
    Scale2,
    Pushoff,
    Kink,
    Project,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Congruence,
    Lemma1,
    Theorem,
    Cromwell,
}

impl From<CheckArg> for Check {
    fn from(c: CheckArg) -> Self {
        match c {
            CheckArg::Congruence => Check::Congruence,
            CheckArg::Lemma1 => Check::Lemma1,
            CheckArg::Theorem => Check::Theorem,
            CheckArg::Cromwell => Check::Cromwell,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    check: CheckArg,
    /// Corpus knot id, or `all`.
    #[arg(long, default_value = "all")]
    knot: String,
    /// Lattice embedding overriding the corpus one (single knot only).
    #[arg(long)]
    lattice: Option<PathBuf>,
    /// Directory for the JSON and CSV reports.
    #[arg(long, default_value = "reports")]
    out: PathBuf,
    /// Corpus directory; defaults to $ROPEBOUND_CORPUS or the shipped data.
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    crossing_budget: usize,
    #[arg(long, default_value_t = 10_000_000)]
    node_budget: u64,
    /// Framing window `lo:hi` overriding `[α-2, β+2]`.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    window: Option<(i64, i64)>,
    #[arg(long, default_value_t = 16)]
    retries: usize,
    /// Also report the bounds with the constants 12 and 51.
    #[arg(long)]
    improved_constants: bool,
    /// Disable data parallelism.
    #[arg(long)]
    sequential: bool,
}

fn parse_direction(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<f64> = s.split(',').map(|p| p.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    parts.try_into().map_err(|_| "expected three comma-separated numbers".to_string())
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    Ok((lo.trim().parse().map_err(|e| format!("{e}"))?, hi.trim().parse().map_err(|e| format!("{e}"))?))
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl From<DiagramError> for Failure {
    fn from(e: DiagramError) -> Self {
        let code = if matches!(e, DiagramError::NotAKnot(_)) { exit::NOT_A_KNOT } else { exit::INVALID_INPUT };
        Failure::new(code, e.to_string())
    }
}

impl From<SkeinError> for Failure {
    fn from(e: SkeinError) -> Self {
        Failure::new(exit::RESOURCE_LIMIT, e.to_string())
    }
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        let code = match e {
            LatticeError::DegenerateProjection { .. } | LatticeError::InconsistentLinking(_) => exit::DEGENERATE_PROJECTION,
            LatticeError::NoKinkPath { .. } => exit::VERIFICATION,
            _ => exit::INVALID_INPUT,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<CorpusError> for Failure {
    fn from(e: CorpusError) -> Self {
        let code = match e {
            CorpusError::UnknownKnot(_) => exit::INVALID_INPUT,
            _ => exit::IO,
        };
        Failure::new(code, e.to_string())
    }
}

fn pipeline_code(e: &PipelineError) -> u8 {
    match e {
        PipelineError::Skein(_) => exit::RESOURCE_LIMIT,
        PipelineError::Diagram(d) => Failure::from(d.clone()).code,
        PipelineError::Lattice(l) => Failure::from(l.clone()).code,
        PipelineError::MissingEmbedding => exit::INVALID_INPUT,
        _ => exit::VERIFICATION,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(exit::IO, format!("{}: {e}", path.display())))
}

/// Writes through a temporary file in the same directory and renames it.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, contents)
        .and_then(|_| std::fs::rename(&tmp, path))
        .map_err(|e| Failure::new(exit::IO, format!("{}: {e}", path.display())))
}

fn read_diagram(path: &Path) -> Result<LinkDiagram, Failure> {
    Ok(parse_pd(&read(path)?)?)
}

fn poly(kind: PolyKind, file: &Path, node_budget: u64) -> Result<(), Failure> {
    let d = read_diagram(file)?;
    let engine = SkeinEngine::new(EngineConfig { node_budget, ..EngineConfig::default() });
    let p = match kind {
        PolyKind::Homfly => engine.homfly(&d)?,
        PolyKind::Kauffman => engine.kauffman(&d)?,
    };
    println!("{p}");
    Ok(())
}

fn satellite(framing: i64, file: &Path) -> Result<(), Failure> {
    let d = read_diagram(file)?;
    let link = d.reverse_parallel(framing)?;
    println!("{}", link.to_pd());
    println!("# lk={}", link.linking_number(0, 1)?);
    Ok(())
}

fn single(link: &LatticeLink) -> Result<&ropebound_core::lattice::LatticePolygon, Failure> {
    match link.components() {
        [p] => Ok(p),
        c => Err(Failure::new(exit::NOT_A_KNOT, format!("expected one lattice component, found {}", c.len()))),
    }
}

fn lattice(
    op: LatticeOp,
    file: &Path,
    sign: i64,
    direction: Option<[f64; 3]>,
    opts: ProjectOptions,
) -> Result<(), Failure> {
    let link = parse_lattice(&read(file)?)?;
    match op {
        LatticeOp::Validate => {
            println!("ok components={} length={}", link.components().len(), link.length());
        }
        LatticeOp::Scale2 => {
            print!("{}", format_lattice(&LatticeLink::knot(single(&link)?.scale2())));
        }
        LatticeOp::Pushoff => {
            let pushed = single(&link)?.pushoff_diagonal();
            print!("{}", format_lattice(&pushed));
            println!("# lk={}", measure_linking(&pushed, &opts)?);
        }
        LatticeOp::Kink => {
            if sign != 1 && sign != -1 {
                return Err(Failure::new(exit::INVALID_INPUT, "kink sign must be 1 or -1"));
            }
            let base = match link.components().len() {
                1 => single(&link)?.pushoff_diagonal(),
                2 => link,
                n => return Err(Failure::new(exit::INVALID_INPUT, format!("kink needs 1 or 2 components, found {n}"))),
            };
            let before = measure_linking(&base, &opts)?;
            let kinked = insert_kink(&base, sign)?;
            let after = measure_linking(&kinked.link, &opts)?;
            print!("{}", format_lattice(&kinked.link));
            println!("# Δlength={} Δlk={:+}", kinked.link.length() - base.length(), after - before);
        }
        LatticeOp::Project => {
            let d = project_with(&link, direction.unwrap_or(DEFAULT_DIRECTION), &opts)?;
            println!("{}", d.to_pd());
            if d.component_count() == 2 {
                println!("# lk={}", d.linking_number(0, 1)?);
            }
        }
    }
    Ok(())
}

fn summarize(report: &VerifyReport) {
    for r in &report.reports {
        let id = &r.knot;
        if let (Some(a), Some(b)) = (r.alpha, r.beta) {
            println!("{id}: alpha={a} beta={b} beta-alpha={} (Cr+2 = {})", b - a, r.crossing_number + 2);
        }
        if let Some(c) = &r.cromwell {
            println!("{id}: breadth_v(F mod 2) = {} >= Cr = {}: {}", c.breadth_v_mod2, c.crossing_number, c.holds);
        }
        for f in &r.framings {
            let lemma = f.lemma1_holds.map_or("exempt".to_string(), |b| b.to_string());
            println!(
                "{id}: f={} lk={} crossings={} breadth_v={} mfw={} congruence={} lemma1={lemma}",
                f.framing, f.linking_number, f.crossings, f.breadth_v, f.mfw_bound, f.congruence_holds
            );
        }
        if let Some(c) = &r.chain {
            let l = c.lattice_length;
            println!("{id}: l={l} 4l+6 = {} >= Cr = {}: {}", c.four_l_plus_6, r.crossing_number, c.chain_holds);
            println!(
                "{id}: pushoff lk={} length={} breadth_v={} mfw={}",
                c.pushoff.linking_number, c.pushoff.length, c.pushoff.breadth_v, c.pushoff.mfw_bound
            );
            for k in &c.kinks {
                let s = &k.satellite;
                println!(
                    "{id}: kink {:+} lk={} length={} breadth_v={} mfw bound {} <= 4l+8 = {}",
                    k.sign, s.linking_number, s.length, s.breadth_v, s.mfw_bound, c.kinked_length
                );
            }
            for b in c.lower_bounds.iter().chain(c.improved_lower_bounds.iter().flatten()) {
                println!("{id}: R >= {} = {}", b.expression, b.value);
            }
        }
    }
}

fn verify(args: VerifyArgs) -> Result<(), Failure> {
    let config = RunConfig {
        crossing_budget: args.crossing_budget,
        node_budget: args.node_budget,
        framing_window: args.window,
        projection_retries: args.retries,
        seed: args.seed,
        improved_constants: args.improved_constants,
        parallel: !args.sequential && ropebound_core::par::available(),
    };
    config.validate().map_err(|e| Failure::new(exit::INVALID_INPUT, e.to_string()))?;
    let dir = args.corpus.unwrap_or_else(corpus::default_dir);
    let entries = corpus::load(&dir)?;
    let mut inputs: Vec<KnotInput> = corpus::select(&entries, &args.knot)?.into_iter().map(KnotInput::from).collect();
    let check = Check::from(args.check);
    if let Some(path) = &args.lattice {
        if inputs.len() != 1 {
            return Err(Failure::new(exit::INVALID_INPUT, "--lattice needs a single --knot"));
        }
        inputs[0].lattice = Some(single(&parse_lattice(&read(path)?)?)?.clone());
    }
    if check == Check::Theorem && args.knot == "all" {
        inputs.retain(|i| {
            let keep = i.lattice.is_some();
            if !keep {
                log::warn!("{}: no lattice embedding, skipped", i.id);
            }
            keep
        });
    }

    let (report, errors) = pipeline::run(check, &inputs, &config);
    std::fs::create_dir_all(&args.out).map_err(|e| Failure::new(exit::IO, format!("{}: {e}", args.out.display())))?;
    write_atomic(&args.out.join(format!("{check}.json")), &report.to_json())?;
    write_atomic(&args.out.join(format!("{check}.csv")), &report.to_csv())?;
    summarize(&report);

    if let Some(code) = errors.iter().map(|(_, e)| pipeline_code(e)).max_by_key(|&c| (c == exit::RESOURCE_LIMIT, c)) {
        for (id, e) in &errors {
            eprintln!("{id}: {e}");
        }
        return Err(Failure::new(code, format!("{} knot(s) incomplete; partial report written", errors.len())));
    }
    let violations = report.violations();
    if !violations.is_empty() {
        for v in &violations {
            eprintln!("violation: {v}");
        }
        return Err(Failure::new(exit::VERIFICATION, format!("{} violation(s)", violations.len())));
    }
    println!("{check}: all checks hold for {} knot(s)", report.reports.len());
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Poly { kind, file, node_budget } => poly(kind, &file, node_budget),
        Command::Satellite { framing, file } => satellite(framing, &file),
        Command::Lattice { op, file, sign, direction, seed, retries } => {
            lattice(op, &file, sign, direction, ProjectOptions { retries, seed })
        }
        Command::Verify(args) => verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
