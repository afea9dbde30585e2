use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use revsynth::experiments::{
    self, emit_report, run_cached, run_census, CensusConfig, CensusScope, ReportFormat,
    CACHE_FORMAT_VERSION, REPORT_SCHEMA_VERSION,
};
use revsynth::perm::{parse_spec_text, SpecFormat};
use revsynth::synth::{library_extremes, ss_synthesize, synthesize, CayleyCensus, Objective, StateSpace};
use revsynth::{Circuit, CostModel, Error, GateLibrary, Specification, StabilizerChain};

/// Version of the JSON printed on standard output.
const OUTPUT_SCHEMA_VERSION: u32 = 1;

const EXIT_ERROR: u8 = 1;
const EXIT_NOT_MEMBER: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "revsynth",
    about = "Reversible circuit synthesis over NOT/CNOT/Toffoli gate libraries",
    disable_version_flag = true
)]
struct Cli {
    /// Print the program, output schema and cache format versions.
    #[arg(short = 'V', long)]
    version: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Synthesize one specification.
    Synth(SynthArgs),
    /// Group order, coverage and worst cases of one gate library.
    Library(LibraryArgs),
    /// Census over every non-empty sub-library of the 3-wire NFT library.
    Census(CensusArgs),
}

#[derive(clap::Args, Debug)]
struct CostArgs {
    /// Gate cost by number of controls, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0,1,5")]
    costs: Vec<u32>,
}

impl CostArgs {
    fn model(&self) -> CostModel {
        CostModel::new(self.costs.clone())
    }
}

#[derive(clap::Args, Debug)]
struct SynthArgs {
    /// 0-based image list "(2,6,5,4,7,1,0,3)" or 1-based cycles "((1,7)(2,5))".
    #[arg(long)]
    spec: String,

    #[arg(long, value_enum, default_value_t = SpecFormatArg::Auto)]
    spec_format: SpecFormatArg,

    /// NFT, a 0x-prefixed mask, or comma-separated gate names.
    #[arg(long, visible_alias = "gates", default_value = "NFT")]
    library: String,

    #[arg(long, default_value_t = 3)]
    wires: u8,

    #[arg(long, value_enum, default_value_t = ObjectiveArg::Length)]
    objective: ObjectiveArg,

    /// Search method; exact search for the objective when omitted.
    #[arg(long, value_enum)]
    method: Option<Method>,

    #[command(flatten)]
    cost: CostArgs,
}

#[derive(clap::Args, Debug)]
struct LibraryArgs {
    /// NFT, a 0x-prefixed mask, or comma-separated gate names.
    #[arg(long, visible_alias = "library")]
    gates: String,

    #[arg(long, default_value_t = 3)]
    wires: u8,

    /// Include the stabilizer chain (base, orbits, transversal words).
    #[arg(long)]
    chain: bool,

    #[command(flatten)]
    cost: CostArgs,
}

#[derive(clap::Args, Debug)]
struct CensusArgs {
    /// Worker threads; 0 uses one per core.
    #[arg(long, env = "REVSYNTH_JOBS", default_value_t = 0)]
    jobs: usize,

    /// Directory for report files.
    #[arg(long, default_value = "census-report")]
    out: PathBuf,

    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,

    #[arg(long, value_enum, default_value_t = ScopeArg::Full)]
    scope: ScopeArg,

    /// Per-library JSON-lines cache. Library-scope runs resume from it;
    /// full runs refresh it.
    #[arg(long)]
    cache: Option<PathBuf>,

    /// Abort on a corrupt cache line instead of skipping it.
    #[arg(long)]
    strict: bool,

    /// Restrict the census to these sub-library masks (hexadecimal).
    #[arg(long, value_delimiter = ',', value_parser = parse_mask)]
    masks: Option<Vec<u32>>,

    #[command(flatten)]
    cost: CostArgs,
}

fn parse_mask(text: &str) -> Result<u32, String> {
    let hex = text.trim().trim_start_matches("0x").trim_start_matches("0X");
    u32::from_str_radix(hex, 16).map_err(|_| format!("invalid hexadecimal mask '{text}'"))
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SpecFormatArg {
    Auto,
    Images,
    Cycles,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ObjectiveArg {
    Length,
    Cost,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Method {
    Bfs,
    Dijkstra,
    SchreierSims,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScopeArg {
    Groups,
    Libraries,
    Full,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: EXIT_ERROR,
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Error::from(e).into()
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_ERROR,
        message: message.into(),
    }
}

fn print_json(value: &serde_json::Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)?;
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}").and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::from(e).into()),
        _ => Ok(()),
    }
}

fn library_label(library: &GateLibrary) -> String {
    match library.mask() {
        Some(mask) if library.n_wires() == 3 => format!("{mask:#05x}"),
        _ => library.to_string(),
    }
}

fn circuit_json(circuit: &Circuit, model: &CostModel) -> Result<serde_json::Value, Failure> {
    Ok(json!({
        "gates": circuit.names(),
        "length": circuit.len(),
        "cost": circuit.cost(model)?,
    }))
}

fn cmd_synth(args: &SynthArgs) -> Result<(), Failure> {
    let model = args.cost.model();
    let library = GateLibrary::parse(&args.library, args.wires)?;
    let format = match args.spec_format {
        SpecFormatArg::Auto => SpecFormat::Auto,
        SpecFormatArg::Images => SpecFormat::Images,
        SpecFormatArg::Cycles => SpecFormat::Cycles,
    };
    let spec: Specification = parse_spec_text(&args.spec, library.n_points(), format)?;
    let objective = match args.objective {
        ObjectiveArg::Length => Objective::Length,
        ObjectiveArg::Cost => Objective::Cost,
    };
    let method = match (args.method, objective) {
        (Some(Method::Bfs), Objective::Cost) => {
            return Err(usage("--method bfs minimizes length; use dijkstra for --objective cost"))
        }
        (Some(Method::Dijkstra), Objective::Length) => {
            return Err(usage("--method dijkstra minimizes cost; use bfs for --objective length"))
        }
        (Some(m), _) => m,
        (None, Objective::Length) => Method::Bfs,
        (None, Objective::Cost) => Method::Dijkstra,
    };
    let base = json!({
        "schema_version": OUTPUT_SCHEMA_VERSION,
        "spec": spec.to_string(),
        "cycles": spec.to_perm().format_cycles(),
        "library": library_label(&library),
        "library_gates": library.names(),
        "objective": objective,
        "method": method,
    });
    let mut out = base.as_object().cloned().expect("object");

    let found = if method == Method::SchreierSims {
        let f = ss_synthesize(&library, &spec)?;
        f.member.then(|| {
            let length = f.circuit.len() as u64;
            let cost = f.circuit.cost(&model);
            (f.circuit, length, cost)
        })
    } else {
        let space = StateSpace::shared(library.n_wires())?;
        synthesize(&space, &library, &spec, objective, &model)?.map(|r| {
            let length = r.witness.len() as u64;
            let cost = r.witness.cost(&model);
            (r.witness, length, cost)
        })
    };
    let Some((circuit, length, cost)) = found else {
        out.insert("member".into(), json!(false));
        print_json(&serde_json::Value::Object(out))?;
        return Err(Failure {
            code: EXIT_NOT_MEMBER,
            message: format!(
                "specification {} is not generated by library {}",
                spec,
                library_label(&library)
            ),
        });
    };
    let cost = cost?;
    let (value, companion) = match objective {
        Objective::Length => (length, cost),
        Objective::Cost => (cost, length),
    };
    out.insert("member".into(), json!(true));
    out.insert("optimal".into(), json!(method != Method::SchreierSims));
    out.insert("value".into(), json!(value));
    out.insert("companion".into(), json!(companion));
    out.insert("witness".into(), json!(circuit.names()));
    print_json(&serde_json::Value::Object(out))
}

/// A JSON number, or a decimal string when it does not fit in 64 bits.
fn big(n: u128) -> serde_json::Value {
    u64::try_from(n).map_or_else(|_| n.to_string().into(), Into::into)
}

fn cmd_library(args: &LibraryArgs) -> Result<(), Failure> {
    let model = args.cost.model();
    let library = GateLibrary::parse(&args.gates, args.wires)?;
    let chain = StabilizerChain::from_library(&library);
    let order = chain.order();
    let full_order = (1..=library.n_points() as u128).try_fold(1u128, |a, k| a.checked_mul(k));
    let mut out = json!({
        "schema_version": OUTPUT_SCHEMA_VERSION,
        "library": library_label(&library),
        "gates": library.names(),
        "order": big(order),
        "universal": Some(order) == full_order,
        "coverage": big(order - 1),
    });
    let fields = out.as_object_mut().expect("object");
    match StateSpace::shared(library.n_wires()) {
        Ok(space) => {
            for (key, objective) in [("max_len", Objective::Length), ("max_cost", Objective::Cost)] {
                let census = CayleyCensus::compute(&space, &library, &model, objective, true)?;
                let e = library_extremes(&census);
                let example = match e.arg_indices.first() {
                    Some(&s) => {
                        let circuit = census.witness_at(s)?.expect("reached");
                        json!({
                            "spec": space.perm_at(s).to_spec().to_string(),
                            "circuit": circuit_json(&circuit, &model)?,
                        })
                    }
                    None => serde_json::Value::Null,
                };
                fields.insert(
                    key.into(),
                    json!({
                        "value": e.value,
                        "companion": e.companion,
                        "companion_range": [e.companion_min, e.companion_max],
                        "attained_by": e.arg_indices.len(),
                        "example": example,
                    }),
                );
            }
        }
        Err(Error::Unsupported(reason)) => {
            fields.insert("eccentricity_unavailable".into(), json!(reason));
        }
        Err(e) => return Err(e.into()),
    }
    if args.chain {
        fields.insert("chain".into(), serde_json::to_value(chain.dump())?);
    }
    print_json(&out)
}

fn cmd_census(args: &CensusArgs) -> Result<(), Failure> {
    let model = args.cost.model();
    let scope = match args.scope {
        ScopeArg::Groups => CensusScope::Groups,
        ScopeArg::Libraries => CensusScope::Libraries,
        ScopeArg::Full => CensusScope::Full,
    };
    let format = match args.format {
        FormatArg::Csv => ReportFormat::Csv,
        FormatArg::Json => ReportFormat::Json,
    };
    let config = CensusConfig {
        jobs: args.jobs,
        model: model.clone(),
        scope,
        masks: args.masks.clone(),
    };
    let result = match (&args.cache, scope) {
        (Some(path), CensusScope::Libraries) => {
            let (result, load) = run_cached(&config, path, args.strict)?;
            for (line, message) in &load.skipped {
                eprintln!("warning: skipped cache line {line}: {message}");
            }
            result
        }
        (Some(path), CensusScope::Full) => {
            let result = run_census(&config)?;
            let existing = experiments::load_records(path, &model, args.strict)?;
            let fresh: Vec<_> = result
                .libraries
                .as_deref()
                .unwrap_or_default()
                .iter()
                .filter(|r| !existing.records.contains_key(&r.mask))
                .copied()
                .collect();
            experiments::save_records(path, &model, &fresh)?;
            result
        }
        (Some(_), CensusScope::Groups) => {
            return Err(usage("--cache needs --scope libraries or full"));
        }
        (None, _) => run_census(&config)?,
    };
    emit_report(&result, &model, format, &args.out)?;
    let summary = experiments::report::summarize(&result, &model);
    print_json(&serde_json::to_value(summary)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    if cli.version {
        println!(
            "revsynth {} (output schema {OUTPUT_SCHEMA_VERSION}, report schema {REPORT_SCHEMA_VERSION}, cache format {CACHE_FORMAT_VERSION})",
            env!("CARGO_PKG_VERSION")
        );
        return Ok(());
    }
    match &cli.command {
        Some(Command::Synth(args)) => cmd_synth(args),
        Some(Command::Library(args)) => cmd_library(args),
        Some(Command::Census(args)) => cmd_census(args),
        None => Err(usage("no command given; try `revsynth --help`")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
