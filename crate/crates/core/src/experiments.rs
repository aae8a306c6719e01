//! Experiment drivers behind the CLI: Table 1, Lebesgue, condition-number
//! and error sweeps, fitting user data and dumping node sets.
//!
//! Every driver returns a [`Table`] whose rows are in canonical order, so
//! the rayon fan-out never changes the rendered artifact.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::basis::ChebPoly;
use crate::error::{HistoError, Result};
use crate::grid::{
    chebyshev_first_kind_roots, chebyshev_lobatto_nodes, chebyshev_lobatto_segments,
    concatenated_mock_segments, equispaced_nodes, equispaced_segments, extract_mock_chebyshev,
    quasi_nodal_segments, SegmentSet,
};
use crate::histo::{
    histopolate_values, lebesgue_constant, poly_means, run_method, AveragesVector, ErrorInterval,
    EvalGrid, Method, MethodDegrees, MethodReport, QuasiDegreeRule, DEFAULT_EVAL_POINTS,
};
use crate::linalg::condition_number_2;
use crate::oracle::{builtin, format_float, segment_means, FunctionId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = HistoError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(HistoError::InvalidParameter(format!("unknown format `{other}`"))),
        }
    }
}

impl FromStr for ErrorInterval {
    type Err = HistoError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(ErrorInterval::Full),
            "right-half" => Ok(ErrorInterval::RightHalf),
            other => Err(HistoError::InvalidParameter(format!("unknown interval `{other}`"))),
        }
    }
}

impl FromStr for QuasiDegreeRule {
    type Err = HistoError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mock" => Ok(QuasiDegreeRule::Mock),
            "max-distinct" => Ok(QuasiDegreeRule::MaxDistinct),
            other => other.parse::<usize>().map(QuasiDegreeRule::Fixed).map_err(|_| {
                HistoError::InvalidParameter(format!("quasi-nodal degree rule `{other}`"))
            }),
        }
    }
}

/// Parses `start:step:stop` or a comma list. With `node_counts`, each value
/// is a node count `n + 1` and is shifted down by one.
pub fn parse_int_list(spec: &str, node_counts: bool) -> Result<Vec<usize>> {
    let bad = || HistoError::InvalidParameter(format!("bad integer list `{spec}`"));
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let raw: Vec<usize> = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let (start, step, stop) = (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
        if step == 0 || start > stop {
            return Err(bad());
        }
        (start..=stop).step_by(step).collect()
    } else {
        spec.split(',').map(parse).collect::<Result<_>>()?
    };
    let vals: Vec<usize> = if node_counts {
        raw.into_iter()
            .map(|v| v.checked_sub(1).filter(|&n| n > 0).ok_or_else(bad))
            .collect::<Result<_>>()?
    } else {
        raw
    };
    validate_increasing(&vals)?;
    Ok(vals)
}

fn validate_increasing(v: &[usize]) -> Result<()> {
    if v.is_empty() || v[0] == 0 || v.windows(2).any(|w| w[0] >= w[1]) {
        return Err(HistoError::InvalidConfiguration(
            "values must be positive, nonempty and strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Shared configuration of the sweep commands.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub n_values: Vec<usize>,
    pub methods: Vec<Method>,
    pub functions: Vec<FunctionId>,
    pub format: OutputFormat,
    pub grid_points: usize,
    pub interval: ErrorInterval,
    pub degrees: MethodDegrees,
    /// Seed for randomized commands; logged, unused by the deterministic ones.
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            n_values: (50..=1000).step_by(50).collect(),
            methods: Method::ALL.to_vec(),
            functions: FunctionId::ALL.to_vec(),
            format: OutputFormat::Csv,
            grid_points: DEFAULT_EVAL_POINTS,
            interval: ErrorInterval::Full,
            degrees: MethodDegrees::default(),
            seed: 0,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        validate_increasing(&self.n_values)?;
        if self.methods.is_empty() || self.functions.is_empty() {
            return Err(HistoError::InvalidConfiguration(
                "at least one method and one function are required".into(),
            ));
        }
        EvalGrid::new(self.grid_points, self.interval)?;
        Ok(())
    }

    fn eval_grid(&self) -> Result<EvalGrid> {
        EvalGrid::new(self.grid_points, self.interval)
    }
}

/// One output field.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(usize),
    Float(f64),
    /// Rendered as `error:<kind>`.
    Error(&'static str),
}

impl Cell {
    fn float_or_error(v: Result<f64>) -> Cell {
        match v {
            Ok(x) if x.is_nan() => Cell::Error("nan"),
            Ok(x) => Cell::Float(x),
            Err(e) => Cell::Error(e.kind()),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Float(v) => Some(*v),
            Cell::Int(v) => Some(*v as f64),
            _ => None,
        }
    }

    pub fn is_error(&self) -> bool {
        matches!(self, Cell::Error(_))
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            Cell::Text(s) => serde_json::Value::String(s.clone()),
            Cell::Int(v) => serde_json::Value::from(*v),
            Cell::Float(v) if v.is_finite() => serde_json::Value::from(*v),
            Cell::Float(v) => serde_json::Value::String(format_float(*v)),
            Cell::Error(k) => serde_json::Value::String(format!("error:{k}")),
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Text(s) => f.write_str(s),
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Float(v) => f.write_str(&format_float(*v)),
            Cell::Error(k) => write!(f, "error:{k}"),
        }
    }
}

/// A rectangular artifact with named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn has_errors(&self) -> bool {
        self.rows.iter().flatten().any(Cell::is_error)
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, serde_json::Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, c)| (k.clone(), c.to_json()))
                    .collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&rows).expect("table serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

/// Table 1 entry for one function and method.
#[derive(Debug, Clone)]
pub struct Table1Entry {
    pub function: FunctionId,
    pub method: Method,
    pub outcome: Result<MethodReport>,
}

/// Runs every configured method on every configured function at `n`.
pub fn table1_entries(n: usize, config: &SweepConfig) -> Result<Vec<Table1Entry>> {
    let grid = config.eval_grid()?;
    let segs = equispaced_segments(n)?;
    let tasks: Vec<(FunctionId, Method)> = config
        .functions
        .iter()
        .flat_map(|&f| config.methods.iter().map(move |&m| (f, m)))
        .collect();
    let entries = tasks
        .par_iter()
        .map(|&(function, method)| {
            let f = builtin(function);
            let outcome = segment_means(&f, &segs)
                .and_then(|data| run_method(method, n, config.degrees, &data))
                .map(|r| r.with_max_error(|x| f.eval(x), &grid));
            Table1Entry {
                function,
                method,
                outcome,
            }
        })
        .collect();
    Ok(entries)
}

/// Long form `function, method, max_error, cond, residual`.
pub fn table1_long(entries: &[Table1Entry]) -> Table {
    let mut t = Table::new(&["function", "method", "max_error", "cond", "residual"]);
    for e in entries {
        let mut row = vec![Cell::Text(e.function.name().into()), Cell::Text(e.method.name().into())];
        match &e.outcome {
            Ok(r) => {
                row.push(Cell::float_or_error(Ok(r.max_err.unwrap_or(f64::NAN))));
                row.push(Cell::float_or_error(Ok(r.cond)));
                row.push(Cell::float_or_error(Ok(r.residual)));
            }
            Err(err) => row.extend(std::iter::repeat_n(Cell::Error(err.kind()), 3)),
        }
        t.rows.push(row);
    }
    t
}

/// Wide form: one row per function, one max-error column per method.
pub fn table1_wide(entries: &[Table1Entry], functions: &[FunctionId], methods: &[Method]) -> Table {
    let mut cols = vec!["function"];
    cols.extend(methods.iter().map(|m| m.name()));
    let mut t = Table::new(&cols);
    for &f in functions {
        let mut row = vec![Cell::Text(f.name().into())];
        for &m in methods {
            let cell = entries
                .iter()
                .find(|e| e.function == f && e.method == m)
                .map(|e| Cell::float_or_error(e.outcome.clone().map(|r| r.max_err.unwrap_or(f64::NAN))))
                .unwrap_or(Cell::Error("missing"));
            row.push(cell);
        }
        t.rows.push(row);
    }
    t
}

/// Table 1 at `config.n_values[0]`. CSV is the wide table, JSON the long
/// one.
pub fn cmd_table1(config: &SweepConfig) -> Result<Table> {
    config.validate()?;
    let entries = table1_entries(config.n_values[0], config)?;
    Ok(match config.format {
        OutputFormat::Csv => table1_wide(&entries, &config.functions, &config.methods),
        OutputFormat::Json => table1_long(&entries),
    })
}

/// How the grid size is chosen for each `m` in the Lebesgue sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NRule {
    /// `n = m^2`
    Square,
    /// The smallest `n` allowed by the log-bound theorems at this `alpha`.
    Theorem { alpha: f64 },
    Explicit(usize),
}

impl NRule {
    pub fn name(self) -> String {
        match self {
            NRule::Square => "square".into(),
            NRule::Theorem { alpha } => format!("theorem(alpha={alpha})"),
            NRule::Explicit(n) => format!("explicit({n})"),
        }
    }
}

impl FromStr for NRule {
    type Err = HistoError;

    fn from_str(s: &str) -> Result<Self> {
        if s == "square" {
            return Ok(NRule::Square);
        }
        if s == "theorem" {
            return Ok(NRule::Theorem { alpha: 0.5 });
        }
        if let Some(a) = s.strip_prefix("theorem:") {
            let alpha: f64 = a
                .parse()
                .map_err(|_| HistoError::InvalidParameter(format!("bad alpha `{a}`")))?;
            if !(alpha > 0.0 && alpha < 1.0) {
                return Err(HistoError::InvalidParameter("alpha must lie in (0, 1)".into()));
            }
            return Ok(NRule::Theorem { alpha });
        }
        s.parse::<usize>()
            .map(NRule::Explicit)
            .map_err(|_| HistoError::InvalidParameter(format!("unknown n rule `{s}`")))
    }
}

/// `n >= (c / alpha) m^2 (log m + pi/2)` with `c = 2`.
pub fn theorem2_n(m: usize, alpha: f64) -> usize {
    let mf = m as f64;
    (2.0 / alpha * mf * mf * (mf.ln() + std::f64::consts::FRAC_PI_2)).ceil() as usize
}

/// `n = (2 / alpha) m^2 ((2/pi) log m + 1)`, rounded up.
pub fn theorem3_n(m: usize, alpha: f64) -> usize {
    let mf = m as f64;
    (2.0 / alpha * mf * mf * (2.0 / std::f64::consts::PI * mf.ln() + 1.0)).ceil() as usize
}

/// `2 (log m + pi/2)`
pub fn chebyshev_lobatto_bound(m: usize) -> f64 {
    2.0 * ((m as f64).ln() + std::f64::consts::FRAC_PI_2)
}

/// `c / (1 - alpha) (log m + pi/2)` with `c = 2`.
pub fn theorem2_bound(m: usize, alpha: f64) -> f64 {
    chebyshev_lobatto_bound(m) / (1.0 - alpha)
}

/// `((2/pi) log m + 1) / (1 - alpha)`.
pub fn theorem3_bound(m: usize, alpha: f64) -> f64 {
    (2.0 / std::f64::consts::PI * (m as f64).ln() + 1.0) / (1.0 - alpha)
}

/// Segment family for the Lebesgue sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LebesgueFamily {
    ChebyshevLobatto,
    Concatenated,
    QuasiNodal,
}

impl LebesgueFamily {
    pub const ALL: [LebesgueFamily; 3] = [
        LebesgueFamily::ChebyshevLobatto,
        LebesgueFamily::Concatenated,
        LebesgueFamily::QuasiNodal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LebesgueFamily::ChebyshevLobatto => "chebyshev-lobatto",
            LebesgueFamily::Concatenated => "concatenated",
            LebesgueFamily::QuasiNodal => "quasi-nodal",
        }
    }

    /// Grid size used for `m` under `rule`; `None` for the reference set.
    pub fn grid_size(self, m: usize, rule: NRule) -> Option<usize> {
        match (self, rule) {
            (LebesgueFamily::ChebyshevLobatto, _) => None,
            (_, NRule::Square) => Some(m * m),
            (_, NRule::Explicit(n)) => Some(n),
            (LebesgueFamily::Concatenated, NRule::Theorem { alpha }) => Some(theorem2_n(m, alpha)),
            (LebesgueFamily::QuasiNodal, NRule::Theorem { alpha }) => Some(theorem3_n(m, alpha)),
        }
    }

    pub fn segments(self, m: usize, n: Option<usize>) -> Result<SegmentSet> {
        match (self, n) {
            (LebesgueFamily::ChebyshevLobatto, _) => chebyshev_lobatto_segments(m),
            (LebesgueFamily::Concatenated, Some(n)) => concatenated_mock_segments(n, m),
            (LebesgueFamily::QuasiNodal, Some(n)) => quasi_nodal_segments(n, m),
            (_, None) => Err(HistoError::InvalidConfiguration("grid size required".into())),
        }
    }
}

/// Configuration of the Lebesgue sweep.
#[derive(Debug, Clone)]
pub struct LebesgueConfig {
    pub m_values: Vec<usize>,
    pub rule: NRule,
    pub families: Vec<LebesgueFamily>,
    pub grid_points: usize,
}

impl Default for LebesgueConfig {
    fn default() -> Self {
        Self {
            m_values: (1..=30).collect(),
            rule: NRule::Square,
            families: LebesgueFamily::ALL.to_vec(),
            grid_points: DEFAULT_EVAL_POINTS,
        }
    }
}

/// Rows `m, n, rule, method, lebesgue`; the reference family has `n = 0`.
pub fn cmd_lebesgue_sweep(config: &LebesgueConfig) -> Result<Table> {
    validate_increasing(&config.m_values)?;
    EvalGrid::full(config.grid_points)?;
    let tasks: Vec<(usize, LebesgueFamily)> = config
        .m_values
        .iter()
        .flat_map(|&m| config.families.iter().map(move |&f| (m, f)))
        .collect();
    let rows: Vec<Vec<Cell>> = tasks
        .par_iter()
        .map(|&(m, family)| {
            let n = family.grid_size(m, config.rule);
            let lebesgue = family
                .segments(m, n)
                .and_then(|s| lebesgue_constant(&s, config.grid_points));
            vec![
                Cell::Int(m),
                Cell::Int(n.unwrap_or(0)),
                Cell::Text(config.rule.name()),
                Cell::Text(family.name().into()),
                Cell::float_or_error(lebesgue),
            ]
        })
        .collect();
    let mut t = Table::new(&["m", "n", "rule", "method", "lebesgue"]);
    t.rows = rows;
    Ok(t)
}

/// Condition number of the matrix a method solves at `n`, without needing
/// data.
pub fn method_condition(method: Method, n: usize, degrees: MethodDegrees) -> Result<f64> {
    // all methods factor the same matrix whatever the data; zeros suffice
    let segs = equispaced_segments(n)?;
    let data = AveragesVector::new(vec![0.0; n], segs, crate::histo::Provenance::Ingested)?;
    run_method(method, n, degrees, &data).map(|r| r.cond)
}

/// Rows `n, method, cond`, plus an identity sanity row at `n = 1`.
pub fn cmd_cond_sweep(config: &SweepConfig) -> Result<Table> {
    config.validate()?;
    let tasks: Vec<(usize, Method)> = config
        .n_values
        .iter()
        .flat_map(|&n| config.methods.iter().map(move |&m| (n, m)))
        .collect();
    let rows: Vec<Vec<Cell>> = tasks
        .par_iter()
        .map(|&(n, method)| {
            vec![
                Cell::Int(n),
                Cell::Text(method.name().into()),
                Cell::float_or_error(method_condition(method, n, config.degrees)),
            ]
        })
        .collect();
    let mut t = Table::new(&["n", "method", "cond"]);
    t.rows = rows;
    Ok(t)
}

/// Spectral condition number of the single-segment Gramian, which is 1.
pub fn identity_condition() -> Result<f64> {
    let h = histopolate_values(&chebyshev_lobatto_segments(1)?, &[1.0])?;
    Ok(condition_number_2(&h.gramian.matrix))
}

/// Max errors of one method on one function for each `n`.
pub fn error_series(
    function: FunctionId,
    method: Method,
    config: &SweepConfig,
) -> Result<Vec<Result<f64>>> {
    let grid = config.eval_grid()?;
    let f = builtin(function);
    Ok(config
        .n_values
        .par_iter()
        .map(|&n| {
            let data = segment_means(&f, &equispaced_segments(n)?)?;
            let r = run_method(method, n, config.degrees, &data)?;
            Ok(grid.max_error(&r.poly, |x| f.eval(x)))
        })
        .collect())
}

/// Rows `function, n, method, max_error`.
pub fn cmd_error_sweep(config: &SweepConfig) -> Result<Table> {
    config.validate()?;
    let grid = config.eval_grid()?;
    let tasks: Vec<(FunctionId, usize)> = config
        .functions
        .iter()
        .flat_map(|&f| config.n_values.iter().map(move |&n| (f, n)))
        .collect();
    let rows: Vec<Vec<Vec<Cell>>> = tasks
        .par_iter()
        .map(|&(function, n)| {
            let f = builtin(function);
            let data = equispaced_segments(n).and_then(|s| segment_means(&f, &s));
            config
                .methods
                .iter()
                .map(|&method| {
                    let err = data.clone().and_then(|d| {
                        let r = run_method(method, n, config.degrees, &d)?;
                        Ok(grid.max_error(&r.poly, |x| f.eval(x)))
                    });
                    vec![
                        Cell::Text(function.name().into()),
                        Cell::Int(n),
                        Cell::Text(method.name().into()),
                        Cell::float_or_error(err),
                    ]
                })
                .collect()
        })
        .collect();
    let mut t = Table::new(&["function", "n", "method", "max_error"]);
    t.rows = rows.into_iter().flatten().collect();
    Ok(t)
}

/// JSON artifact of [`cmd_fit`].
#[derive(Debug, Clone, Serialize)]
pub struct FitOutput {
    pub method: String,
    pub segments: usize,
    pub degree: usize,
    pub coeffs: Vec<f64>,
    pub cond: f64,
    pub residual: f64,
    /// Max deviation between fitted and given means over the matched segments.
    pub max_mean_residual: f64,
    pub matched_segments: Vec<[f64; 2]>,
}

impl FitOutput {
    pub fn to_json(&self) -> String {
        // cond may be infinite; serialize it as the `inf` sentinel
        let mut v = serde_json::to_value(self).expect("fit output serializes");
        if !self.cond.is_finite() {
            v["cond"] = serde_json::Value::String(format_float(self.cond));
        }
        let mut s = serde_json::to_string_pretty(&v).expect("fit output serializes");
        s.push('\n');
        s
    }
}

/// Fits user data. `full` on a non-uniform set histopolates the given
/// segments directly; the mock methods need an equispaced chain.
pub fn cmd_fit(data: &AveragesVector, method: Method, degrees: MethodDegrees) -> Result<FitOutput> {
    let n = data.len();
    let (poly, cond, residual, matched): (ChebPoly, f64, f64, SegmentSet) =
        if method == Method::FullEquispaced && !data.segset.is_equispaced_chain(1e-14) {
            let h = histopolate_values(&data.segset, &data.values)?;
            (h.poly, condition_number_2(&h.gramian.matrix), h.residual, data.segset.clone())
        } else {
            let r = run_method(method, n, degrees, data)?;
            (r.poly, r.cond, r.residual, r.segments)
        };
    let fitted = poly_means(&poly, &matched)?;
    let max_mean_residual = matched
        .iter()
        .zip(&fitted)
        .map(|(seg, v)| {
            let i = data
                .segset
                .iter()
                .position(|s| s == seg)
                .expect("matched segments come from the data");
            (v - data.values[i]).abs()
        })
        .fold(0.0, f64::max);
    Ok(FitOutput {
        method: method.name().into(),
        segments: n,
        degree: poly.degree(),
        coeffs: poly.coeffs,
        cond,
        residual,
        max_mean_residual,
        matched_segments: matched.iter().map(|s| [s.a, s.b]).collect(),
    })
}

/// Node and segment families for `nodes`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeFamily {
    Equispaced,
    ChebyshevLobatto,
    ChebyshevRoots,
    Mock,
    EquispacedSegments,
    ChebyshevSegments,
    ConcatenatedSegments,
    QuasiNodalSegments,
}

impl FromStr for NodeFamily {
    type Err = HistoError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "equispaced" => NodeFamily::Equispaced,
            "chebyshev-lobatto" => NodeFamily::ChebyshevLobatto,
            "chebyshev-roots" => NodeFamily::ChebyshevRoots,
            "mock" => NodeFamily::Mock,
            "equispaced-segments" => NodeFamily::EquispacedSegments,
            "chebyshev-segments" => NodeFamily::ChebyshevSegments,
            "concatenated" => NodeFamily::ConcatenatedSegments,
            "quasi-nodal" => NodeFamily::QuasiNodalSegments,
            other => return Err(HistoError::InvalidParameter(format!("unknown node family `{other}`"))),
        })
    }
}

/// Dumps nodes as `index, x` or segments as `index, a, b`.
pub fn cmd_nodes(family: NodeFamily, n: usize, m: usize) -> Result<Table> {
    let nodes = |values: &[f64]| {
        let mut t = Table::new(&["index", "x"]);
        t.rows = values
            .iter()
            .enumerate()
            .map(|(i, &x)| vec![Cell::Int(i), Cell::Float(x)])
            .collect();
        t
    };
    let segments = |s: SegmentSet| {
        let mut t = Table::new(&["index", "a", "b"]);
        t.rows = s
            .iter()
            .enumerate()
            .map(|(i, seg)| vec![Cell::Int(i), Cell::Float(seg.a), Cell::Float(seg.b)])
            .collect();
        t
    };
    Ok(match family {
        NodeFamily::Equispaced => nodes(equispaced_nodes(n)?.values()),
        NodeFamily::ChebyshevLobatto => nodes(chebyshev_lobatto_nodes(m)?.values()),
        NodeFamily::ChebyshevRoots => nodes(chebyshev_first_kind_roots(m)?.values()),
        NodeFamily::Mock => nodes(extract_mock_chebyshev(&equispaced_nodes(n)?, m)?.values()),
        NodeFamily::EquispacedSegments => segments(equispaced_segments(n)?),
        NodeFamily::ChebyshevSegments => segments(chebyshev_lobatto_segments(m)?),
        NodeFamily::ConcatenatedSegments => segments(concatenated_mock_segments(n, m)?),
        NodeFamily::QuasiNodalSegments => segments(quasi_nodal_segments(n, m)?),
    })
}
