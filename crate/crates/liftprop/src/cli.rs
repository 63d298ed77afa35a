//! Command-line surface over the library: deterministic text, JSON, or DOT
//! reports for every decision procedure.
//!
//! Exit-status convention: 0 when the queried property holds (or the command
//! is purely informational), 1 when it fails to hold, 2 on usage or input
//! errors. Errors are reported as a single `error: ...` line. Output contains
//! no timestamps or wall-clock fields, so identical invocations produce
//! byte-identical reports.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::dsl::{self, Item};
use crate::enumeration::{self, Axiom};
use crate::finspace::{CMap, FinSpace, PointSet};
use crate::interval::{
    canonical_maps, fiber_comparison, is_open_set, FiberVerdict, IntervalPoint, IntervalSet,
    MapCheck, Variant,
};
use crate::lifting::decide_lift;
use crate::separation::{
    catalog, is_hereditarily_normal, is_normal, separation_witness, HereditaryMethod,
    NormalMethod, SeparationInstance,
};
use crate::urysohn::{urysohn, UrysohnOutcome};

/// Largest space `check` will accept for the normality methods.
const MAX_CHECK_NORMAL: usize = 12;
/// Largest space `check` will accept for the hereditary methods, which sweep
/// subspaces and enumerate maps into a four-point target.
const MAX_CHECK_HEREDITARY: usize = 10;
/// Largest space allowed on any corner of a `lift` square; square enumeration
/// is exponential in these sizes.
const MAX_LIFT_SPACE: usize = 8;

#[derive(Parser, Debug)]
#[command(
    name = "liftprop",
    version,
    about = "Decision procedures for finite topological spaces"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a file of space/map statements and re-render it.
    Parse {
        /// Input file; statements, or a single bare `{...}` expression.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, alias = "emit", value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide a separation axiom for one space.
    Check {
        /// Space file: one `space` statement or a bare `{...}` expression.
        #[arg(long)]
        space: PathBuf,
        #[arg(long, value_enum)]
        axiom: AxiomArg,
        /// A single method, `both` (definition plus lifting), or `all`.
        #[arg(long, default_value = "all")]
        method: String,
        #[arg(long, alias = "emit", value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide whether the left map has the lifting property against the
    /// right map.
    Lift {
        /// Map file, or `empty:FILE` for the empty map into FILE's space.
        #[arg(long)]
        left: String,
        /// Map file, or `empty:FILE` for the empty map into FILE's space.
        #[arg(long)]
        right: String,
        /// Report the witness square on failure, or a sample diagonal on
        /// success.
        #[arg(long)]
        witness: bool,
        /// Report search statistics.
        #[arg(long)]
        stats: bool,
        #[arg(long, alias = "emit", value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Separate a disjoint closed pair: chain, function, interval-valued map.
    Urysohn {
        /// Space file: one `space` statement or a bare `{...}` expression.
        #[arg(long)]
        space: PathBuf,
        /// Comma-separated names of the closed set sent to 0.
        #[arg(long, default_value = "")]
        s: String,
        /// Comma-separated names of the closed set sent to 1.
        #[arg(long, default_value = "")]
        t: String,
        #[arg(long, alias = "emit", value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Probe the doubled-endpoint interval model.
    Interval {
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long, value_enum)]
        probe: Probe,
        #[arg(long, alias = "emit", value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Sweep all topologies on N labeled points.
    Enumerate {
        #[arg(long)]
        points: usize,
        /// Keep one representative per homeomorphism class.
        #[arg(long)]
        dedupe: bool,
        /// Comma-separated axioms (`normal`, `hereditarilyNormal`) to decide
        /// through every method, reporting any disagreement.
        #[arg(long, value_name = "AXIOMS")]
        cross_validate: Option<String>,
        /// Worker threads for the sweep; the report is identical regardless.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, alias = "emit", value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the built-in spaces and maps used by the lifting
    /// characterizations.
    Catalog {
        #[arg(long, alias = "emit", value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AxiomArg {
    #[value(name = "normal")]
    Normal,
    #[value(name = "hereditarilyNormal", alias = "hereditarily-normal")]
    HereditarilyNormal,
}

impl AxiomArg {
    fn name(self) -> &'static str {
        match self {
            AxiomArg::Normal => "normal",
            AxiomArg::HereditarilyNormal => "hereditarilyNormal",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Corrected,
    Indistinguishable,
}

impl VariantArg {
    fn variant(self) -> Variant {
        match self {
            VariantArg::Corrected => Variant::Corrected,
            VariantArg::Indistinguishable => Variant::Indistinguishable,
        }
    }

    fn name(self) -> &'static str {
        match self {
            VariantArg::Corrected => "corrected",
            VariantArg::Indistinguishable => "indistinguishable",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Probe {
    UnitIntervalOpen,
    PiContinuity,
    IotaContinuity,
    PiTildeContinuity,
    Fibers,
}

impl Probe {
    fn name(self) -> &'static str {
        match self {
            Probe::UnitIntervalOpen => "unit-interval-open",
            Probe::PiContinuity => "pi-continuity",
            Probe::IotaContinuity => "iota-continuity",
            Probe::PiTildeContinuity => "pi-tilde-continuity",
            Probe::Fibers => "fibers",
        }
    }
}

/// Top-level shape of every JSON report.
#[derive(Serialize)]
struct Envelope {
    command: &'static str,
    inputs: Value,
    verdict: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    data: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stats: Option<Value>,
}

/// Executes one subcommand, writing the report to `out`.
pub fn run(config: RunConfig, out: &mut dyn Write) -> i32 {
    match config.command {
        Command::Parse { input, format } => cmd_parse(out, &input, format),
        Command::Check { space, axiom, method, format } => {
            cmd_check(out, &space, axiom, &method, format)
        }
        Command::Lift { left, right, witness, stats, format } => {
            cmd_lift(out, &left, &right, witness, stats, format)
        }
        Command::Urysohn { space, s, t, format } => cmd_urysohn(out, &space, &s, &t, format),
        Command::Interval { variant, probe, format } => cmd_interval(out, variant, probe, format),
        Command::Enumerate { points, dedupe, cross_validate, jobs, format } => {
            cmd_enumerate(out, points, dedupe, cross_validate.as_deref(), jobs, format)
        }
        Command::Catalog { format } => cmd_catalog(out, format),
    }
}

fn usage(out: &mut dyn Write, msg: &str) -> i32 {
    let _ = writeln!(out, "error: {msg}");
    2
}

fn put(out: &mut dyn Write, line: &str) {
    let _ = writeln!(out, "{line}");
}

fn emit_envelope(out: &mut dyn Write, env: &Envelope) {
    let text = serde_json::to_string_pretty(env).expect("report is serializable");
    let _ = writeln!(out, "{text}");
}

// ---------------------------------------------------------------------------
// input loading

fn read_input(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// First character that is not whitespace or part of a `#` comment line;
/// a `{` here means the file is a bare expression rather than statements.
fn first_significant_char(src: &str) -> Option<char> {
    for line in src.lines() {
        let t = line.trim_start();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        return t.chars().next();
    }
    None
}

fn load_space(path: &Path) -> Result<FinSpace, String> {
    let src = read_input(path)?;
    let at = |e: dsl::ParseError| format!("{}: {e}", path.display());
    if first_significant_char(&src) == Some('{') {
        return dsl::parse_space(&src).map_err(at);
    }
    let items = dsl::parse_file(&src).map_err(at)?;
    match <[Item; 1]>::try_from(items) {
        Ok([Item::Space { space, .. }]) => Ok(space),
        _ => Err(format!(
            "{}: expected exactly one `space` statement (or a bare `{{...}}` expression)",
            path.display()
        )),
    }
}

fn load_map(path: &Path) -> Result<CMap, String> {
    let src = read_input(path)?;
    let at = |e: dsl::ParseError| format!("{}: {e}", path.display());
    if first_significant_char(&src) == Some('{') {
        return dsl::parse_map(&src).map_err(at);
    }
    let items = dsl::parse_file(&src).map_err(at)?;
    match <[Item; 1]>::try_from(items) {
        Ok([Item::Map { map, .. }]) => Ok(map),
        _ => Err(format!(
            "{}: expected exactly one `map` statement (or a bare `{{...}} => {{...}}` expression)",
            path.display()
        )),
    }
}

/// A `lift` side: either a map file or `empty:FILE` for the unique map from
/// the empty space into FILE's space.
fn load_side(arg: &str) -> Result<CMap, String> {
    if let Some(path) = arg.strip_prefix("empty:") {
        let space = load_space(Path::new(path))?;
        Ok(CMap::from_empty(&space))
    } else {
        load_map(Path::new(arg))
    }
}

fn parse_point_list(x: &FinSpace, arg: &str) -> Result<PointSet, String> {
    let names: Vec<&str> = arg.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    x.set_of_names(&names).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------
// structured-data builders

/// `{points, spec}` where `spec` lists the non-reflexive specializations
/// `[x, y]` (`y` in the closure of `{x}`) in row-major order.
fn space_json(x: &FinSpace) -> Value {
    let points: Vec<Value> = x.points().iter().map(|p| Value::String(p.clone())).collect();
    let mut spec = Vec::new();
    for i in 0..x.len() {
        for j in 0..x.len() {
            if i != j && x.specializes(i, j) {
                spec.push(json!([x.name(i), x.name(j)]));
            }
        }
    }
    json!({ "points": points, "spec": spec })
}

/// `{dom, cod, assign, rendered}`; `rendered` is the re-parseable text form.
fn map_json(m: &CMap) -> Value {
    let assign: Vec<Value> = (0..m.dom().len())
        .map(|x| json!([m.dom().name(x), m.cod().name(m.apply(x))]))
        .collect();
    json!({
        "dom": space_json(m.dom()),
        "cod": space_json(m.cod()),
        "assign": assign,
        "rendered": dsl::render_map(m),
    })
}

fn names_json(x: &FinSpace, set: PointSet) -> Value {
    Value::Array(x.names_of(set).into_iter().map(|n| Value::String(n.to_string())).collect())
}

// ---------------------------------------------------------------------------
// parse

fn cmd_parse(out: &mut dyn Write, input: &Path, format: Format) -> i32 {
    let src = match read_input(input) {
        Ok(s) => s,
        Err(e) => return usage(out, &e),
    };
    let at = |e: dsl::ParseError| format!("{}: {e}", input.display());
    // A bare expression is treated as a single anonymous statement.
    let parsed = if first_significant_char(&src) == Some('{') {
        if src.contains("=>") {
            dsl::parse_map(&src).map_err(at).map(|map| vec![Item::Map { name: "f".into(), map }])
        } else {
            dsl::parse_space(&src)
                .map_err(at)
                .map(|space| vec![Item::Space { name: "X".into(), space }])
        }
    } else {
        dsl::parse_file(&src).map_err(at)
    };
    let items = match parsed {
        Ok(items) => items,
        Err(e) => return usage(out, &e),
    };

    match format {
        Format::Text => {
            for item in &items {
                match item {
                    Item::Space { name, space } => {
                        put(out, &format!("space {name} = {}", dsl::render_space(space)));
                    }
                    Item::Map { name, map } => {
                        put(out, &format!("map {name} = {}", dsl::render_map(map)));
                    }
                }
            }
        }
        Format::Dot => {
            for item in &items {
                let graph = match item {
                    Item::Space { space, .. } => dsl::render_dot(space),
                    Item::Map { map, .. } => dsl::render_dot_map(map),
                };
                let _ = write!(out, "{graph}");
            }
        }
        Format::Json => {
            let data: Vec<Value> = items
                .iter()
                .map(|item| match item {
                    Item::Space { name, space } => json!({
                        "kind": "space",
                        "name": name,
                        "space": space_json(space),
                        "rendered": dsl::render_space(space),
                    }),
                    Item::Map { name, map } => json!({
                        "kind": "map",
                        "name": name,
                        "map": map_json(map),
                    }),
                })
                .collect();
            emit_envelope(
                out,
                &Envelope {
                    command: "parse",
                    inputs: json!({ "input": input.display().to_string() }),
                    verdict: json!("ok"),
                    witness: None,
                    data: Some(Value::Array(data)),
                    stats: None,
                },
            );
        }
    }
    0
}

// ---------------------------------------------------------------------------
// check

fn parse_normal_methods(arg: &str) -> Result<Vec<NormalMethod>, String> {
    match arg {
        "brute" => Ok(vec![NormalMethod::Brute]),
        "pairwise" => Ok(vec![NormalMethod::Pairwise]),
        "component" => Ok(vec![NormalMethod::Component]),
        "lifting" => Ok(vec![NormalMethod::Lifting]),
        "both" => Ok(vec![NormalMethod::Brute, NormalMethod::Lifting]),
        "all" => Ok(NormalMethod::ALL.to_vec()),
        other => Err(format!(
            "unknown method `{other}` for axiom normal; expected \
             brute|pairwise|component|lifting|both|all"
        )),
    }
}

fn parse_hereditary_methods(arg: &str) -> Result<Vec<HereditaryMethod>, String> {
    match arg {
        "openSubspaces" => Ok(vec![HereditaryMethod::OpenSubspaces]),
        "allSubspaces" => Ok(vec![HereditaryMethod::AllSubspaces]),
        "lifting" => Ok(vec![HereditaryMethod::Lifting]),
        "both" => Ok(vec![HereditaryMethod::OpenSubspaces, HereditaryMethod::Lifting]),
        "all" => Ok(HereditaryMethod::ALL.to_vec()),
        other => Err(format!(
            "unknown method `{other}` for axiom hereditarilyNormal; expected \
             openSubspaces|allSubspaces|lifting|both|all"
        )),
    }
}

/// Smallest open subspace that is not normal, with its own witness pair;
/// exists exactly when the space is not hereditarily normal.
fn hereditary_witness(x: &FinSpace) -> Option<(PointSet, FinSpace, SeparationInstance)> {
    let mut opens = x.open_family();
    opens.sort_by_key(|o| (o.len(), o.mask()));
    for o in opens {
        let sub = x.subspace(o).expect("open family members are subsets");
        if let Some(w) = separation_witness(&sub) {
            return Some((o, sub, w));
        }
    }
    None
}

fn cmd_check(
    out: &mut dyn Write,
    space_path: &Path,
    axiom: AxiomArg,
    method: &str,
    format: Format,
) -> i32 {
    if format == Format::Dot {
        return usage(out, "check does not support dot output");
    }
    let x = match load_space(space_path) {
        Ok(x) => x,
        Err(e) => return usage(out, &e),
    };
    let cap = match axiom {
        AxiomArg::Normal => MAX_CHECK_NORMAL,
        AxiomArg::HereditarilyNormal => MAX_CHECK_HEREDITARY,
    };
    if x.len() > cap {
        return usage(
            out,
            &format!("space has {} points; {} checks support at most {cap}", x.len(), axiom.name()),
        );
    }

    // (method name, verdict) per requested method, plus the failure evidence.
    let verdicts: Vec<(&'static str, bool)>;
    let witness_text: Option<Vec<String>>;
    let witness_json: Option<Value>;
    match axiom {
        AxiomArg::Normal => {
            let methods = match parse_normal_methods(method) {
                Ok(m) => m,
                Err(e) => return usage(out, &e),
            };
            verdicts = methods.iter().map(|&m| (m.name(), is_normal(&x, m))).collect();
            match separation_witness(&x) {
                Some(w) if verdicts.iter().any(|&(_, v)| !v) => {
                    witness_text =
                        Some(vec![format!("witness: ({}, {})", x.format_set(w.s), x.format_set(w.t))]);
                    witness_json =
                        Some(json!({ "s": names_json(&x, w.s), "t": names_json(&x, w.t) }));
                }
                _ => {
                    witness_text = None;
                    witness_json = None;
                }
            }
        }
        AxiomArg::HereditarilyNormal => {
            let methods = match parse_hereditary_methods(method) {
                Ok(m) => m,
                Err(e) => return usage(out, &e),
            };
            verdicts = methods.iter().map(|&m| (m.name(), is_hereditarily_normal(&x, m))).collect();
            match hereditary_witness(&x) {
                Some((o, sub, w)) if verdicts.iter().any(|&(_, v)| !v) => {
                    witness_text = Some(vec![
                        format!("witness subspace: {}", x.format_set(o)),
                        format!("witness: ({}, {})", sub.format_set(w.s), sub.format_set(w.t)),
                    ]);
                    witness_json = Some(json!({
                        "subspace": names_json(&x, o),
                        "s": names_json(&sub, w.s),
                        "t": names_json(&sub, w.t),
                    }));
                }
                _ => {
                    witness_text = None;
                    witness_json = None;
                }
            }
        }
    }

    let agree = verdicts.windows(2).all(|w| w[0].1 == w[1].1);
    let holds = agree && verdicts[0].1;
    let exit = if holds { 0 } else { 1 };
    let verdict_text = if !agree {
        "methods disagree".to_string()
    } else if holds {
        axiom.name().to_string()
    } else {
        format!("not {}", axiom.name())
    };

    match format {
        Format::Text => {
            put(out, &format!("space: {}", dsl::render_space(&x)));
            put(out, &format!("axiom: {}", axiom.name()));
            for (name, v) in &verdicts {
                put(out, &format!("method {name}: {}", if *v { "holds" } else { "fails" }));
            }
            if let Some(lines) = &witness_text {
                for line in lines {
                    put(out, line);
                }
            }
            put(out, &format!("verdict: {verdict_text}"));
        }
        Format::Json => {
            let methods: serde_json::Map<String, Value> = verdicts
                .iter()
                .map(|&(name, v)| (name.to_string(), Value::Bool(v)))
                .collect();
            emit_envelope(
                out,
                &Envelope {
                    command: "check",
                    inputs: json!({
                        "space": space_path.display().to_string(),
                        "axiom": axiom.name(),
                        "method": method,
                    }),
                    verdict: if agree { Value::Bool(holds) } else { json!("disagree") },
                    witness: witness_json,
                    data: Some(json!({
                        "methods": Value::Object(methods),
                        "space": space_json(&x),
                    })),
                    stats: None,
                },
            );
        }
        Format::Dot => unreachable!("rejected above"),
    }
    exit
}

// ---------------------------------------------------------------------------
// lift

fn cmd_lift(
    out: &mut dyn Write,
    left: &str,
    right: &str,
    witness: bool,
    stats: bool,
    format: Format,
) -> i32 {
    if format == Format::Dot {
        return usage(out, "lift does not support dot output");
    }
    let f = match load_side(left) {
        Ok(m) => m,
        Err(e) => return usage(out, &e),
    };
    let g = match load_side(right) {
        Ok(m) => m,
        Err(e) => return usage(out, &e),
    };
    for (label, space) in [
        ("left domain", f.dom()),
        ("left codomain", f.cod()),
        ("right domain", g.dom()),
        ("right codomain", g.cod()),
    ] {
        if space.len() > MAX_LIFT_SPACE {
            return usage(
                out,
                &format!(
                    "{label} has {} points; lift enumerates squares exhaustively and supports \
                     at most {MAX_LIFT_SPACE}",
                    space.len()
                ),
            );
        }
    }

    let report = match decide_lift(&f, &g) {
        Ok(r) => r,
        Err(e) => return usage(out, &e.to_string()),
    };
    let exit = if report.holds { 0 } else { 1 };

    match format {
        Format::Text => {
            put(out, &format!("left: {}", dsl::render_map(&f)));
            put(out, &format!("right: {}", dsl::render_map(&g)));
            put(out, &format!("verdict: {}", if report.holds { "holds" } else { "does not hold" }));
            if witness {
                if let Some((psi, phi)) = &report.witness {
                    put(out, &format!("witness psi: {}", dsl::render_map(psi)));
                    put(out, &format!("witness phi: {}", dsl::render_map(phi)));
                }
                if report.holds {
                    if let Some(lift) = &report.sample_lift {
                        put(out, &format!("sample lift: {}", dsl::render_map(lift)));
                    }
                }
            }
            if stats {
                put(out, &format!("squares examined: {}", report.stats.squares_examined));
                put(out, &format!("candidates tested: {}", report.stats.candidates_tested));
            }
        }
        Format::Json => {
            let witness_json = if witness {
                report.witness.as_ref().map(|(psi, phi)| {
                    json!({ "psi": map_json(psi), "phi": map_json(phi) })
                })
            } else {
                None
            };
            let data = if witness && report.holds {
                report.sample_lift.as_ref().map(|l| json!({ "sampleLift": map_json(l) }))
            } else {
                None
            };
            let stats_json = stats.then(|| {
                json!({
                    "squaresExamined": report.stats.squares_examined,
                    "candidatesTested": report.stats.candidates_tested,
                })
            });
            emit_envelope(
                out,
                &Envelope {
                    command: "lift",
                    inputs: json!({
                        "left": left,
                        "right": right,
                        "witness": witness,
                        "stats": stats,
                    }),
                    verdict: Value::Bool(report.holds),
                    witness: witness_json,
                    data,
                    stats: stats_json,
                },
            );
        }
        Format::Dot => unreachable!("rejected above"),
    }
    exit
}

// ---------------------------------------------------------------------------
// urysohn

fn cmd_urysohn(
    out: &mut dyn Write,
    space_path: &Path,
    s_arg: &str,
    t_arg: &str,
    format: Format,
) -> i32 {
    if format == Format::Dot {
        return usage(out, "urysohn does not support dot output");
    }
    let x = match load_space(space_path) {
        Ok(x) => x,
        Err(e) => return usage(out, &e),
    };
    let s = match parse_point_list(&x, s_arg) {
        Ok(s) => s,
        Err(e) => return usage(out, &e),
    };
    let t = match parse_point_list(&x, t_arg) {
        Ok(t) => t,
        Err(e) => return usage(out, &e),
    };
    let outcome = match urysohn(&x, s, t) {
        Ok(o) => o,
        Err(e) => return usage(out, &e.to_string()),
    };

    let inputs = json!({
        "space": space_path.display().to_string(),
        "s": s_arg,
        "t": t_arg,
    });
    match outcome {
        UrysohnOutcome::Separated(res) => {
            let all = res.checks.all();
            match format {
                Format::Text => {
                    put(out, &format!("space: {}", dsl::render_space(&x)));
                    put(out, &format!("s: {}", x.format_set(s)));
                    put(out, &format!("t: {}", x.format_set(t)));
                    for (q, u) in res.chain.entries() {
                        put(out, &format!("U[{q}] = {}", x.format_set(u)));
                    }
                    for p in 0..x.len() {
                        put(out, &format!("f({}) = {}", x.name(p), res.f[p]));
                    }
                    for p in 0..x.len() {
                        put(out, &format!("lambda({}) = {}", x.name(p), res.lambda[p]));
                    }
                    put(out, &format!("check fContinuous: {}", res.checks.f_continuous));
                    put(out, &format!("check lambdaContinuous: {}", res.checks.lambda_continuous));
                    put(out, &format!("check piTriangle: {}", res.checks.pi_triangle));
                    put(out, &format!("check iotaTriangle: {}", res.checks.iota_triangle));
                    put(out, &format!("verdict: {}", if all { "separated" } else { "check failed" }));
                }
                Format::Json => {
                    let chain: Vec<Value> = res
                        .chain
                        .entries()
                        .map(|(q, u)| json!([q.to_string(), names_json(&x, u)]))
                        .collect();
                    let f: Vec<Value> = (0..x.len())
                        .map(|p| json!([x.name(p), res.f[p].to_string()]))
                        .collect();
                    let lambda: Vec<Value> = (0..x.len())
                        .map(|p| json!([x.name(p), res.lambda[p].to_string()]))
                        .collect();
                    emit_envelope(
                        out,
                        &Envelope {
                            command: "urysohn",
                            inputs,
                            verdict: Value::Bool(all),
                            witness: None,
                            data: Some(json!({
                                "chain": chain,
                                "f": f,
                                "lambda": lambda,
                                "checks": {
                                    "fContinuous": res.checks.f_continuous,
                                    "lambdaContinuous": res.checks.lambda_continuous,
                                    "piTriangle": res.checks.pi_triangle,
                                    "iotaTriangle": res.checks.iota_triangle,
                                },
                            })),
                            stats: None,
                        },
                    );
                }
                Format::Dot => unreachable!("rejected above"),
            }
            if all {
                0
            } else {
                1
            }
        }
        UrysohnOutcome::Inseparable(fail) => {
            match format {
                Format::Text => {
                    put(out, &format!("space: {}", dsl::render_space(&x)));
                    put(out, &format!("s: {}", x.format_set(s)));
                    put(out, &format!("t: {}", x.format_set(t)));
                    put(
                        out,
                        &format!(
                            "component hull of {} = {}",
                            x.format_set(fail.of),
                            x.format_set(fail.hull)
                        ),
                    );
                    put(out, &format!("hits: {}", x.format_set(fail.hits)));
                    put(out, "verdict: inseparable");
                }
                Format::Json => {
                    emit_envelope(
                        out,
                        &Envelope {
                            command: "urysohn",
                            inputs,
                            verdict: Value::Bool(false),
                            witness: Some(json!({
                                "of": names_json(&x, fail.of),
                                "hull": names_json(&x, fail.hull),
                                "hits": names_json(&x, fail.hits),
                            })),
                            data: None,
                            stats: None,
                        },
                    );
                }
                Format::Dot => unreachable!("rejected above"),
            }
            1
        }
    }
}

// ---------------------------------------------------------------------------
// interval

fn format_point_list(points: &[IntervalPoint]) -> String {
    let names: Vec<String> = points.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", names.join(", "))
}

fn point_list_json(points: &[IntervalPoint]) -> Value {
    Value::Array(points.iter().map(|p| Value::String(p.to_string())).collect())
}

fn map_check_report(
    out: &mut dyn Write,
    variant: VariantArg,
    probe: Probe,
    check: &MapCheck,
    format: Format,
) -> i32 {
    match format {
        Format::Text => {
            put(out, &format!("variant: {}", variant.name()));
            put(out, &format!("probe: {}", probe.name()));
            for (label, open) in &check.probes {
                put(out, &format!("preimage {label}: {}", if *open { "open" } else { "not open" }));
            }
            put(
                out,
                &format!(
                    "verdict: {}",
                    if check.continuous { "continuous" } else { "discontinuous" }
                ),
            );
        }
        Format::Json => {
            let probes: Vec<Value> =
                check.probes.iter().map(|(label, open)| json!([label, open])).collect();
            emit_envelope(
                out,
                &Envelope {
                    command: "interval",
                    inputs: json!({ "variant": variant.name(), "probe": probe.name() }),
                    verdict: Value::Bool(check.continuous),
                    witness: None,
                    data: Some(json!({ "probes": probes })),
                    stats: None,
                },
            );
        }
        Format::Dot => unreachable!("rejected by cmd_interval"),
    }
    if check.continuous {
        0
    } else {
        1
    }
}

fn cmd_interval(out: &mut dyn Write, variant: VariantArg, probe: Probe, format: Format) -> i32 {
    if format == Format::Dot {
        return usage(out, "interval does not support dot output");
    }
    let v = variant.variant();
    match probe {
        Probe::UnitIntervalOpen => {
            let set = IntervalSet::unit_interval();
            let open = is_open_set(&set, v);
            match format {
                Format::Text => {
                    put(out, &format!("variant: {}", variant.name()));
                    put(out, &format!("probe: {}", probe.name()));
                    put(out, &format!("set: {set}"));
                    put(out, &format!("verdict: {}", if open { "open" } else { "not open" }));
                }
                Format::Json => emit_envelope(
                    out,
                    &Envelope {
                        command: "interval",
                        inputs: json!({ "variant": variant.name(), "probe": probe.name() }),
                        verdict: Value::Bool(open),
                        witness: None,
                        data: Some(json!({ "set": set.to_string() })),
                        stats: None,
                    },
                ),
                Format::Dot => unreachable!("rejected above"),
            }
            if open {
                0
            } else {
                1
            }
        }
        Probe::PiContinuity => {
            let maps = canonical_maps(v);
            map_check_report(out, variant, probe, &maps.pi, format)
        }
        Probe::IotaContinuity => {
            let maps = canonical_maps(v);
            map_check_report(out, variant, probe, &maps.iota, format)
        }
        Probe::PiTildeContinuity => {
            let maps = canonical_maps(v);
            match &maps.pi_tilde {
                None => usage(
                    out,
                    "pi-tilde is only defined for the indistinguishable variant",
                ),
                Some(check) => map_check_report(out, variant, probe, check, format),
            }
        }
        Probe::Fibers => {
            let fc = fiber_comparison(v);
            let verdict = match fc.verdict {
                FiberVerdict::Strict => "strict",
                FiberVerdict::Equal => "equal",
            };
            match format {
                Format::Text => {
                    put(out, &format!("variant: {}", variant.name()));
                    put(out, &format!("probe: {}", probe.name()));
                    put(out, &format!("projection fiber over 0': {}", format_point_list(&fc.proj_fiber0)));
                    put(out, &format!("iota fiber over 0: {}", format_point_list(&fc.iota_fiber0)));
                    put(out, &format!("projection fiber over 1': {}", format_point_list(&fc.proj_fiber1)));
                    put(out, &format!("iota fiber over 1: {}", format_point_list(&fc.iota_fiber1)));
                    put(out, &format!("verdict: {verdict}"));
                }
                Format::Json => emit_envelope(
                    out,
                    &Envelope {
                        command: "interval",
                        inputs: json!({ "variant": variant.name(), "probe": probe.name() }),
                        verdict: json!(verdict),
                        witness: None,
                        data: Some(json!({
                            "projFiber0": point_list_json(&fc.proj_fiber0),
                            "iotaFiber0": point_list_json(&fc.iota_fiber0),
                            "projFiber1": point_list_json(&fc.proj_fiber1),
                            "iotaFiber1": point_list_json(&fc.iota_fiber1),
                        })),
                        stats: None,
                    },
                ),
                Format::Dot => unreachable!("rejected above"),
            }
            0
        }
    }
}

// ---------------------------------------------------------------------------
// enumerate

fn parse_axioms(arg: &str) -> Result<Vec<Axiom>, String> {
    let mut axioms = Vec::new();
    for part in arg.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let axiom = match part {
            "normal" => Axiom::Normal,
            "hereditarilyNormal" | "hereditarily-normal" => Axiom::HereditarilyNormal,
            other => {
                return Err(format!(
                    "unknown axiom `{other}`; expected normal|hereditarilyNormal"
                ))
            }
        };
        if !axioms.contains(&axiom) {
            axioms.push(axiom);
        }
    }
    if axioms.is_empty() {
        return Err("--cross-validate needs at least one axiom".to_string());
    }
    Ok(axioms)
}

fn cmd_enumerate(
    out: &mut dyn Write,
    points: usize,
    dedupe: bool,
    cross_validate: Option<&str>,
    jobs: Option<usize>,
    format: Format,
) -> i32 {
    if format == Format::Dot {
        return usage(out, "enumerate does not support dot output");
    }
    let axioms = match cross_validate.map(parse_axioms).transpose() {
        Ok(a) => a,
        Err(e) => return usage(out, &e),
    };

    let inputs = json!({
        "points": points,
        "dedupe": dedupe,
        "crossValidate": cross_validate,
        "jobs": jobs,
    });

    match axioms {
        None => {
            let count = match enumeration::all_spaces(points, dedupe) {
                Ok(iter) => iter.count(),
                Err(e) => return usage(out, &e.to_string()),
            };
            match format {
                Format::Text => {
                    put(out, &format!("points: {points}"));
                    put(
                        out,
                        &format!("{}: {count}", if dedupe { "deduped" } else { "labeled" }),
                    );
                }
                Format::Json => emit_envelope(
                    out,
                    &Envelope {
                        command: "enumerate",
                        inputs,
                        verdict: json!("ok"),
                        witness: None,
                        data: Some(json!({ "n": points, "dedupe": dedupe, "count": count })),
                        stats: None,
                    },
                ),
                Format::Dot => unreachable!("rejected above"),
            }
            0
        }
        Some(axioms) => {
            let sweep = || enumeration::cross_validate(points, &axioms, dedupe);
            let report = match jobs {
                None => sweep(),
                Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                    Ok(pool) => pool.install(sweep),
                    Err(e) => return usage(out, &format!("cannot build thread pool: {e}")),
                },
            };
            let report = match report {
                Ok(r) => r,
                Err(e) => return usage(out, &e.to_string()),
            };
            let agree = report.mismatches.is_empty();
            match format {
                Format::Text => {
                    put(out, &format!("points: {}", report.n));
                    put(out, &format!("labeled: {}", report.total_labeled));
                    if let Some(u) = report.total_unlabeled {
                        put(out, &format!("deduped: {u}"));
                    }
                    for (axiom, tally) in &report.per_axiom {
                        for (method, count) in tally {
                            put(out, &format!("{axiom} via {method}: {count}"));
                        }
                    }
                    put(out, &format!("mismatches: {}", report.mismatches.len()));
                    for m in &report.mismatches {
                        put(out, &format!("mismatch [{}] {}", m.axiom, m.space));
                    }
                    put(out, &format!("verdict: {}", if agree { "agreement" } else { "disagreement" }));
                }
                Format::Json => emit_envelope(
                    out,
                    &Envelope {
                        command: "enumerate",
                        inputs,
                        verdict: Value::Bool(agree),
                        witness: None,
                        data: Some(serde_json::to_value(&report).expect("report serializes")),
                        stats: None,
                    },
                ),
                Format::Dot => unreachable!("rejected above"),
            }
            if agree {
                0
            } else {
                1
            }
        }
    }
}

// ---------------------------------------------------------------------------
// catalog

fn cmd_catalog(out: &mut dyn Write, format: Format) -> i32 {
    let c = catalog();
    let spaces: [(&str, &FinSpace); 6] = [
        ("tau", &c.tau),
        ("tauDagger", &c.tau_dagger),
        ("b3", &c.b3),
        ("t5", &c.t5),
        ("t6", &c.t6),
        ("b4", &c.b4),
    ];
    let maps: [(&str, &CMap); 3] = [("f", &c.f), ("piFin", &c.pi_fin), ("piHer", &c.pi_her)];
    match format {
        Format::Text => {
            for (name, space) in spaces {
                put(out, &format!("space {name} = {}", dsl::render_space(space)));
            }
            for (name, map) in maps {
                put(out, &format!("map {name} = {}", dsl::render_map(map)));
            }
        }
        Format::Dot => {
            for (_, space) in spaces {
                let _ = write!(out, "{}", dsl::render_dot(space));
            }
            for (_, map) in maps {
                let _ = write!(out, "{}", dsl::render_dot_map(map));
            }
        }
        Format::Json => {
            let space_obj: serde_json::Map<String, Value> = spaces
                .iter()
                .map(|(name, space)| (name.to_string(), space_json(space)))
                .collect();
            let map_obj: serde_json::Map<String, Value> =
                maps.iter().map(|(name, map)| (name.to_string(), map_json(map))).collect();
            emit_envelope(
                out,
                &Envelope {
                    command: "catalog",
                    inputs: json!({}),
                    verdict: json!("ok"),
                    witness: None,
                    data: Some(json!({
                        "spaces": Value::Object(space_obj),
                        "maps": Value::Object(map_obj),
                    })),
                    stats: None,
                },
            );
        }
    }
    0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        let config = RunConfig::try_parse_from(args).expect("args parse");
        let mut buf = Vec::new();
        let code = run(config, &mut buf);
        (code, String::from_utf8(buf).expect("utf-8 output"))
    }

    fn write_temp(contents: &str) -> tempfile::NamedTempFile {
        let file = tempfile::NamedTempFile::new().expect("temp file");
        std::fs::write(file.path(), contents).expect("write temp file");
        file
    }

    #[test]
    fn check_reports_witness_and_exit_one() {
        let file = write_temp("{L -> 0 <- M -> 1 <- R}\n");
        let (code, text) =
            run_str(&["liftprop", "check", "--space", file.path().to_str().unwrap(), "--axiom", "normal", "--method", "both"]);
        assert_eq!(code, 1);
        assert!(text.contains("method brute: fails"), "{text}");
        assert!(text.contains("method lifting: fails"), "{text}");
        assert!(text.contains("witness: ({0}, {1})"), "{text}");
        assert!(text.contains("verdict: not normal"), "{text}");
    }

    #[test]
    fn interval_unit_open_follows_variant() {
        let (code, text) =
            run_str(&["liftprop", "interval", "--variant", "corrected", "--probe", "unit-interval-open"]);
        assert_eq!(code, 0);
        assert!(text.contains("verdict: open"), "{text}");

        let (code, text) = run_str(&[
            "liftprop",
            "interval",
            "--variant",
            "indistinguishable",
            "--probe",
            "unit-interval-open",
        ]);
        assert_eq!(code, 1);
        assert!(text.contains("verdict: not open"), "{text}");
    }

    #[test]
    fn pi_tilde_requires_indistinguishable() {
        let (code, text) =
            run_str(&["liftprop", "interval", "--variant", "corrected", "--probe", "pi-tilde-continuity"]);
        assert_eq!(code, 2);
        assert!(text.starts_with("error:"), "{text}");
    }

    #[test]
    fn enumerate_cross_validate_agreement() {
        let (code, text) = run_str(&[
            "liftprop",
            "enumerate",
            "--points",
            "3",
            "--cross-validate",
            "normal,hereditarilyNormal",
        ]);
        assert_eq!(code, 0, "{text}");
        assert!(text.contains("labeled: 29"), "{text}");
        assert!(text.contains("mismatches: 0"), "{text}");
    }

    #[test]
    fn catalog_round_trips_through_parse() {
        let (code, text) = run_str(&["liftprop", "catalog"]);
        assert_eq!(code, 0);
        let items = dsl::parse_file(&text).expect("catalog output re-parses");
        assert_eq!(items.len(), 9);
    }

    #[test]
    fn json_envelope_shape() {
        let file = write_temp("{o -> c}\n");
        let (code, text) = run_str(&[
            "liftprop",
            "check",
            "--space",
            file.path().to_str().unwrap(),
            "--axiom",
            "normal",
            "--method",
            "all",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&text).expect("valid json");
        assert_eq!(v["command"], "check");
        assert_eq!(v["verdict"], Value::Bool(true));
        assert!(v.get("witness").is_none());
        assert_eq!(v["data"]["methods"]["brute"], Value::Bool(true));
    }

    #[test]
    fn lift_empty_prefix_and_witness() {
        let tau = write_temp("{L -> 0 <- M -> 1 <- R}\n");
        let left = format!("empty:{}", tau.path().display());
        let (code, text) = run_str(&[
            "liftprop",
            "lift",
            "--left",
            &left,
            "--right",
            "no-such-file.topo",
        ]);
        assert_eq!(code, 2, "{text}");

        // tau is not normal, so the empty map does not lift against pi_fin;
        // rebuild pi_fin from catalog text to exercise map loading.
        let pi_fin_text = {
            let c = catalog();
            format!("{}\n", dsl::render_map(&c.pi_fin))
        };
        let pi_fin = write_temp(&pi_fin_text);
        let (code, text) = run_str(&[
            "liftprop",
            "lift",
            "--left",
            &left,
            "--right",
            pi_fin.path().to_str().unwrap(),
            "--witness",
        ]);
        assert_eq!(code, 1, "{text}");
        assert!(text.contains("verdict: does not hold"), "{text}");
        assert!(text.contains("witness phi: "), "{text}");
        let phi_line = text
            .lines()
            .find(|l| l.starts_with("witness phi: "))
            .expect("phi line");
        dsl::parse_map(phi_line.trim_start_matches("witness phi: ")).expect("witness re-parses");
    }

    #[test]
    fn urysohn_text_report() {
        let file = write_temp("{a, b}\n");
        let (code, text) = run_str(&[
            "liftprop",
            "urysohn",
            "--space",
            file.path().to_str().unwrap(),
            "--s",
            "a",
            "--t",
            "b",
        ]);
        assert_eq!(code, 0, "{text}");
        assert!(text.contains("U[0] = {a}"), "{text}");
        assert!(text.contains("lambda(a) = 0'"), "{text}");
        assert!(text.contains("verdict: separated"), "{text}");

        // Overlapping sets are an input error.
        let (code, _) = run_str(&[
            "liftprop",
            "urysohn",
            "--space",
            file.path().to_str().unwrap(),
            "--s",
            "a",
            "--t",
            "a",
        ]);
        assert_eq!(code, 2);
    }
}
