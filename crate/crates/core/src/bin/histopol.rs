use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use histopol::experiments::{
    cmd_cond_sweep, cmd_error_sweep, cmd_fit, cmd_lebesgue_sweep, cmd_nodes, cmd_table1,
    parse_int_list, LebesgueConfig, LebesgueFamily, NRule, NodeFamily, OutputFormat, SweepConfig,
};
use histopol::histo::{ErrorInterval, MethodDegrees, QuasiDegreeRule, DEFAULT_EVAL_POINTS};
use histopol::oracle::ingest_averages;
use histopol::{FunctionId, HistoError, Method};

const EXIT_METHOD: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "histopol", version, about = "Histopolation experiments from equispaced segment means")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Output format: csv or json
    #[arg(long, default_value = "csv")]
    format: String,
    /// Write the artifact here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomized steps (logged to stderr)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Points of the equispaced evaluation grid
    #[arg(long, default_value_t = DEFAULT_EVAL_POINTS)]
    grid_points: usize,
}

#[derive(Args, Clone)]
struct MethodArgs {
    /// Methods, comma separated: full, concatenated, quasi-nodal, constrained
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<String>>,
    /// Fixed degree parameter m for every mock method
    #[arg(long)]
    m: Option<usize>,
    /// Quasi-nodal m: mock, max-distinct or an integer (overrides --m)
    #[arg(long)]
    quasi_m: Option<String>,
}

#[derive(Args, Clone)]
struct DataArgs {
    /// Test functions, comma separated (f1..f6)
    #[arg(long, value_delimiter = ',')]
    functions: Option<Vec<String>>,
    /// Error domain: full or right-half
    #[arg(long, default_value = "full")]
    interval: String,
}

#[derive(Subcommand)]
enum Command {
    /// Max errors of every method on f1..f6
    Table1 {
        /// Number of equispaced segments
        #[arg(long, default_value_t = 50)]
        n: usize,
        #[command(flatten)]
        methods: MethodArgs,
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Segmental Lebesgue constants against m
    LebesgueSweep {
        /// m values: list or start:step:stop
        #[arg(long, default_value = "1:1:30")]
        m: String,
        /// Grid size rule: square, theorem, theorem:<alpha> or an integer n
        #[arg(long, default_value = "square")]
        n_rule: String,
        /// Families: chebyshev-lobatto, concatenated, quasi-nodal
        #[arg(long, value_delimiter = ',')]
        families: Option<Vec<String>>,
        #[command(flatten)]
        common: Common,
    },
    /// Condition numbers against n
    CondSweep {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        methods: MethodArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Max errors against n
    ErrorSweep {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        methods: MethodArgs,
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Fit averages from a CSV file with header a,b,mean
    Fit {
        path: PathBuf,
        #[arg(long, default_value = "quasi-nodal")]
        method: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        quasi_m: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump node or segment sets
    Nodes {
        /// equispaced, chebyshev-lobatto, chebyshev-roots, mock,
        /// equispaced-segments, chebyshev-segments, concatenated, quasi-nodal
        #[arg(long, default_value = "mock")]
        family: String,
        #[arg(long, default_value_t = 50)]
        n: usize,
        /// Defaults to floor(pi sqrt(n/2))
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Clone)]
struct GridArgs {
    /// Segment counts n: list or start:step:stop
    #[arg(long, conflicts_with = "nodes")]
    n: Option<String>,
    /// Node counts n+1: list or start:step:stop
    #[arg(long, default_value = "51:50:1001")]
    nodes: String,
}

impl GridArgs {
    fn n_values(&self) -> Result<Vec<usize>, HistoError> {
        match &self.n {
            Some(n) => parse_int_list(n, false),
            None => parse_int_list(&self.nodes, true),
        }
    }
}

impl MethodArgs {
    fn methods(&self, default: &[Method]) -> Result<Vec<Method>, HistoError> {
        match &self.methods {
            Some(v) => v.iter().map(|s| s.parse()).collect(),
            None => Ok(default.to_vec()),
        }
    }

    fn degrees(&self) -> Result<MethodDegrees, HistoError> {
        degrees(self.m, self.quasi_m.as_deref())
    }
}

fn degrees(m: Option<usize>, quasi: Option<&str>) -> Result<MethodDegrees, HistoError> {
    let quasi = match (quasi, m) {
        (Some(q), _) => q.parse()?,
        (None, Some(m)) => QuasiDegreeRule::Fixed(m),
        (None, None) => QuasiDegreeRule::Mock,
    };
    Ok(MethodDegrees {
        concatenated: m,
        quasi,
    })
}

impl DataArgs {
    fn functions(&self) -> Result<Vec<FunctionId>, HistoError> {
        match &self.functions {
            Some(v) => v.iter().map(|s| s.parse()).collect(),
            None => Ok(FunctionId::ALL.to_vec()),
        }
    }

    fn interval(&self) -> Result<ErrorInterval, HistoError> {
        self.interval.parse()
    }
}

fn sweep_config(
    n_values: Vec<usize>,
    methods: &MethodArgs,
    default_methods: &[Method],
    data: Option<&DataArgs>,
    common: &Common,
) -> Result<SweepConfig, HistoError> {
    let mut cfg = SweepConfig {
        n_values,
        methods: methods.methods(default_methods)?,
        format: common.format.parse()?,
        grid_points: common.grid_points,
        degrees: methods.degrees()?,
        seed: common.seed,
        ..SweepConfig::default()
    };
    if let Some(d) = data {
        cfg.functions = d.functions()?;
        cfg.interval = d.interval()?;
    }
    Ok(cfg)
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), HistoError> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

/// Ok(true) when the artifact contains error cells.
fn run(cli: Cli) -> Result<bool, HistoError> {
    match cli.command {
        Command::Table1 {
            n,
            methods,
            data,
            common,
        } => {
            let cfg = sweep_config(vec![n], &methods, &Method::ALL, Some(&data), &common)?;
            let t = cmd_table1(&cfg)?;
            emit(&t.render(cfg.format), common.out.as_ref())?;
            Ok(t.has_errors())
        }
        Command::LebesgueSweep {
            m,
            n_rule,
            families,
            common,
        } => {
            let families = match families {
                Some(v) => v
                    .iter()
                    .map(|s| {
                        LebesgueFamily::ALL
                            .into_iter()
                            .find(|f| f.name() == s)
                            .ok_or_else(|| HistoError::InvalidParameter(format!("unknown family `{s}`")))
                    })
                    .collect::<Result<_, _>>()?,
                None => LebesgueFamily::ALL.to_vec(),
            };
            let cfg = LebesgueConfig {
                m_values: parse_int_list(&m, false)?,
                rule: n_rule.parse::<NRule>()?,
                families,
                grid_points: common.grid_points,
            };
            let format: OutputFormat = common.format.parse()?;
            let t = cmd_lebesgue_sweep(&cfg)?;
            emit(&t.render(format), common.out.as_ref())?;
            Ok(t.has_errors())
        }
        Command::CondSweep {
            grid,
            methods,
            common,
        } => {
            let cfg = sweep_config(grid.n_values()?, &methods, &Method::ALL, None, &common)?;
            let t = cmd_cond_sweep(&cfg)?;
            emit(&t.render(cfg.format), common.out.as_ref())?;
            Ok(t.has_errors())
        }
        Command::ErrorSweep {
            grid,
            methods,
            data,
            common,
        } => {
            let mock = [Method::ConcatenatedMC, Method::QuasiNodalMCF, Method::ConstrainedMCF];
            let cfg = sweep_config(grid.n_values()?, &methods, &mock, Some(&data), &common)?;
            let t = cmd_error_sweep(&cfg)?;
            emit(&t.render(cfg.format), common.out.as_ref())?;
            Ok(t.has_errors())
        }
        Command::Fit {
            path,
            method,
            m,
            quasi_m,
            out,
        } => {
            let method: Method = method.parse()?;
            let (_, data) = ingest_averages(&path)?;
            let fit = cmd_fit(&data, method, degrees(m, quasi_m.as_deref())?)?;
            emit(&fit.to_json(), out.as_ref())?;
            Ok(false)
        }
        Command::Nodes {
            family,
            n,
            m,
            common,
        } => {
            let family: NodeFamily = family.parse()?;
            let m = match m {
                Some(m) => m,
                None => histopol::grid::max_mock_degree(n)?,
            };
            let format: OutputFormat = common.format.parse()?;
            let t = cmd_nodes(family, n, m)?;
            emit(&t.render(format), common.out.as_ref())?;
            Ok(false)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => {
            eprintln!("histopol: some entries failed, see error: markers");
            ExitCode::from(EXIT_METHOD)
        }
        Err(e) => {
            eprintln!("histopol: {e}");
            ExitCode::from(if e.is_input_error() { EXIT_INPUT } else { EXIT_METHOD })
        }
    }
}
