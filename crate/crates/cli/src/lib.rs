//! Command-line front end: argument parsing, presentation loading, the slice
//! cache and text/JSON rendering. `run` is the whole program minus process
//! exit, so it can be tested in-process.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gradalg::cache::SliceCache;
use gradalg::constructions::{self, preset, ConstructionError, ParamPoint};
use gradalg::cyclotomic::{CycError, CycNum, FieldCtx};
use gradalg::engine::{intersection_basis, subspace_dims, Engine, EngineConfig, EngineError, Presentation};
use gradalg::freealg::{default_gens, NcPoly, Word};
use gradalg::group::{self, builtin_group, CharacterTable, GroupError, MatAction, BUILTIN_GROUPS};
use gradalg::io::{group_from_json, presentation_from_json, IoError};
use gradalg::points::{next_point, Next, PointError, ProjPoint, TriangleState};
use gradalg::series::guess_rational_series;
use gradalg::verify::{run_check, run_suite, CheckResult, SuiteSelection, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "gradalg", version, about = "Exact computations in graded algebras with finite symmetry")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    pub output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimensions of the graded pieces.
    Hilbert {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long, default_value_t = 8)]
        max_deg: usize,
    },
    /// Character series of each conjugacy class of a group.
    Character {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long, default_value_t = 8)]
        max_deg: usize,
        /// Built-in group name or path to a group file.
        #[arg(long, default_value = "H3")]
        group: String,
    },
    /// Multiplicities of the irreducible H3 representations in one degree.
    Isotypic {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long)]
        degree: usize,
    },
    /// Central elements, degree by degree.
    Center {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long, default_value_t = 7)]
        max_deg: usize,
        /// Only this degree.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Dimensions of W V, V W, their sum and intersection for the relation space W.
    Intersect {
        #[command(flatten)]
        alg: AlgArgs,
        /// Also report the dimension of the fixed part under this group.
        #[arg(long)]
        group: Option<String>,
    },
    /// Point sequences on the coordinate triangle.
    Points {
        /// Parameter t of the twisted rule; omit for the unconstrained rule.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, default_value = "0,1,1", allow_hyphen_values = true)]
        prev: String,
        #[arg(long, default_value = "1,0,0", allow_hyphen_values = true)]
        start: String,
        #[arg(long, default_value_t = 12)]
        steps: usize,
        #[arg(long, default_value_t = 3)]
        field: u32,
    },
    /// Relations from the cyclic derivatives of a superpotential.
    Derive {
        /// Superpotential parameters a,b,c.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "superpotential")]
        params: Option<String>,
        /// Explicit cubic in x, y, z.
        #[arg(long, allow_hyphen_values = true)]
        superpotential: Option<String>,
        #[arg(long, default_value_t = 3)]
        field: u32,
    },
    /// Recompute the bundled verification corpus.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Run a single check.
        #[arg(long)]
        check: Option<u32>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Fast,
    Slow,
}

#[derive(Args, Debug, Clone)]
pub struct AlgArgs {
    /// Named presentation.
    #[arg(long, required_unless_present = "file", conflicts_with = "file")]
    pub preset: Option<String>,
    /// Presentation file (JSON).
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Comma-separated coefficient strings, e.g. `1,2,3` or `1,w`.
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,
    /// Order m of the root of unity adjoined to the rationals.
    #[arg(long, default_value_t = 3)]
    pub field: u32,
    /// Highest degree the engine may build.
    #[arg(long, default_value_t = gradalg::engine::DEFAULT_DEGREE_CAP)]
    pub degree_cap: usize,
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

/// Exit status plus everything written to stdout and stderr.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(msg: impl ToString) -> CliError {
        CliError { code: EXIT_USAGE, message: msg.to_string() }
    }
}

fn engine_code(e: &EngineError) -> i32 {
    match e {
        EngineError::DegreeCap { .. } => EXIT_CAP,
        _ => EXIT_USAGE,
    }
}

fn group_code(e: &GroupError) -> i32 {
    match e {
        GroupError::OrderCap(_) => EXIT_CAP,
        GroupError::Engine(e) => engine_code(e),
        _ => EXIT_USAGE,
    }
}

macro_rules! cli_from {
    ($t:ty, $code:expr) => {
        impl From<$t> for CliError {
            fn from(e: $t) -> CliError {
                #[allow(clippy::redundant_closure_call)]
                let code = ($code)(&e);
                CliError { code, message: e.to_string() }
            }
        }
    };
}

cli_from!(EngineError, engine_code);
cli_from!(GroupError, group_code);
cli_from!(CycError, |_: &CycError| EXIT_USAGE);
cli_from!(PointError, |_: &PointError| EXIT_USAGE);
cli_from!(gradalg::freealg::FreeAlgError, |_: &gradalg::freealg::FreeAlgError| EXIT_USAGE);
cli_from!(ConstructionError, |e: &ConstructionError| match e {
    ConstructionError::Engine(e) => engine_code(e),
    ConstructionError::Group(e) => group_code(e),
    _ => EXIT_USAGE,
});
cli_from!(IoError, |e: &IoError| match e {
    IoError::Engine(e) => engine_code(e),
    IoError::Group(e) => group_code(e),
    _ => EXIT_USAGE,
});

/// A finished command: JSON results plus their text rendering.
struct Report {
    inputs: Value,
    results: Value,
    text: String,
    code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Outcome {
    let name = command_name(&cli.command);
    let start = Instant::now();
    match execute(&cli.command) {
        Ok(r) => {
            let elapsed = start.elapsed().as_secs_f64();
            let stdout = match cli.output {
                Output::Text => r.text,
                Output::Json => {
                    let doc = json!({
                        "command": name,
                        "inputs": r.inputs,
                        "results": r.results,
                        "timings": {"total_s": elapsed},
                    });
                    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
                }
            };
            Outcome { code: r.code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: e.code, stdout: String::new(), stderr: format!("error: {}\n", e.message) },
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Hilbert { .. } => "hilbert",
        Command::Character { .. } => "character",
        Command::Isotypic { .. } => "isotypic",
        Command::Center { .. } => "center",
        Command::Intersect { .. } => "intersect",
        Command::Points { .. } => "points",
        Command::Derive { .. } => "derive",
        Command::Verify { .. } => "verify",
    }
}

fn execute(c: &Command) -> Result<Report, CliError> {
    match c {
        Command::Hilbert { alg, max_deg } => hilbert(alg, *max_deg),
        Command::Character { alg, max_deg, group } => character(alg, *max_deg, group),
        Command::Isotypic { alg, degree } => isotypic(alg, *degree),
        Command::Center { alg, max_deg, degree } => center(alg, *max_deg, *degree),
        Command::Intersect { alg, group } => intersect(alg, group.as_deref()),
        Command::Points { t, prev, start, steps, field } => points(*field, t.as_deref(), prev, start, *steps),
        Command::Derive { params, superpotential, field } => derive(*field, params.as_deref(), superpotential.as_deref()),
        Command::Verify { suite, check } => verify(*suite, *check),
    }
}

fn field(m: u32) -> Result<Arc<FieldCtx>, CliError> {
    Ok(FieldCtx::new(m)?)
}

pub fn parse_params(ctx: &Arc<FieldCtx>, text: &str) -> Result<Vec<CycNum>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| CycNum::parse(ctx, s.trim()).map_err(|e| CliError::usage(format!("parameter {s:?}: {e}"))))
        .collect()
}

fn texts(v: &[CycNum]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

fn list<T: ToString>(v: &[T]) -> String {
    format!("[{}]", v.iter().map(T::to_string).collect::<Vec<_>>().join(","))
}

/// The loaded algebra together with the cache it came from.
struct Loaded {
    engine: Engine,
    cache: Option<SliceCache>,
    inputs: Value,
}

impl Loaded {
    fn new(alg: &AlgArgs) -> Result<Loaded, CliError> {
        let ctx = field(alg.field)?;
        let pres: Presentation = match (&alg.preset, &alg.file) {
            (Some(name), None) => {
                let params = alg.params.as_deref().map(|p| parse_params(&ctx, p)).transpose()?.unwrap_or_default();
                preset(&ctx, name, &params)?
            }
            (None, Some(path)) => {
                if alg.params.is_some() {
                    return Err(CliError::usage("--params only applies to presets"));
                }
                let text = std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
                let p = presentation_from_json(&text)?;
                if p.ctx().m() != alg.field {
                    return Err(CliError::usage(format!("file uses field {} but --field is {}", p.ctx().m(), alg.field)));
                }
                p
            }
            _ => return Err(CliError::usage("give exactly one of --preset and --file")),
        };
        let config = EngineConfig { degree_cap: alg.degree_cap, ..Default::default() };
        let mut engine = Engine::with_config(pres, config);
        let cache = alg.cache_dir.as_ref().map(SliceCache::new);
        if let Some(c) = &cache {
            c.load(&mut engine);
        }
        let inputs = json!({
            "preset": alg.preset,
            "file": alg.file.as_ref().map(|p| p.display().to_string()),
            "params": alg.params,
            "field": alg.field,
        });
        Ok(Loaded { engine, cache, inputs })
    }

    fn ctx(&self) -> Arc<FieldCtx> {
        self.engine.ctx().clone()
    }

    fn gens(&self) -> Vec<String> {
        self.engine.presentation().gens().to_vec()
    }

    fn extend(&mut self, d: usize) -> Result<(), CliError> {
        self.engine.extend_to_degree(d)?;
        if let Some(c) = &self.cache {
            c.store(&self.engine).map_err(|e| CliError::usage(format!("cache: {e}")))?;
        }
        Ok(())
    }

    fn inputs_with(&self, extra: Value) -> Value {
        let mut v = self.inputs.clone();
        if let (Some(o), Value::Object(e)) = (v.as_object_mut(), extra) {
            o.extend(e);
        }
        v
    }
}

fn load_group(ctx: &Arc<FieldCtx>, name: &str) -> Result<MatAction, CliError> {
    if BUILTIN_GROUPS.contains(&name) {
        return Ok(builtin_group(ctx, name)?);
    }
    let text = std::fs::read_to_string(name)
        .map_err(|e| CliError::usage(format!("{name} is neither a built-in group ({}) nor a readable file: {e}", BUILTIN_GROUPS.join(", "))))?;
    Ok(group_from_json(ctx, &text)?)
}

fn hilbert(alg: &AlgArgs, max: usize) -> Result<Report, CliError> {
    let mut l = Loaded::new(alg)?;
    l.extend(max)?;
    let h = l.engine.hilbert(max)?;
    let ints: Vec<i64> = h.iter().map(|&d| d as i64).collect();
    let form = guess_rational_series(&ints).map(|r| r.to_string());
    let mut text = list(&h) + "\n";
    if let Some(f) = &form {
        text += &format!("fits {f}\n");
    }
    Ok(Report {
        inputs: l.inputs_with(json!({"max_deg": max})),
        results: json!({"hilbert": h, "rational_form": form}),
        text,
        code: EXIT_OK,
    })
}

fn word_of(group: &MatAction, i: usize) -> String {
    let w = group.element_word(i);
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|&g| group.generators()[g].0.clone()).collect::<Vec<_>>().join("*")
}

fn character(alg: &AlgArgs, max: usize, group_name: &str) -> Result<Report, CliError> {
    let mut l = Loaded::new(alg)?;
    let ctx = l.ctx();
    let g = load_group(&ctx, group_name)?;
    if g.n() != l.engine.n() {
        return Err(CliError::usage(format!("group acts in dimension {} but there are {} generators", g.n(), l.engine.n())));
    }
    l.extend(max)?;
    let classes = g.conjugacy_classes();
    let nclasses = classes.iter().max().map_or(0, |m| m + 1);
    let mut rows = Vec::new();
    let mut text = String::new();
    for k in 0..nclasses {
        let members: Vec<usize> = (0..g.order()).filter(|&i| classes[i] == k).collect();
        let rep = members[0];
        let series = group::character_series(&mut l.engine, &g.elements()[rep], max)?;
        let name = word_of(&g, rep);
        text += &format!("{name} (class size {}): {}\n", members.len(), texts(&series).join(", "));
        rows.push(json!({"representative": name, "class_size": members.len(), "series": texts(&series)}));
    }
    Ok(Report {
        inputs: l.inputs_with(json!({"max_deg": max, "group": group_name, "group_order": g.order()})),
        results: json!({"classes": rows}),
        text,
        code: EXIT_OK,
    })
}

fn isotypic(alg: &AlgArgs, d: usize) -> Result<Report, CliError> {
    let mut l = Loaded::new(alg)?;
    let ctx = l.ctx();
    if l.engine.n() != 3 {
        return Err(CliError::usage("the H3 decomposition needs three generators"));
    }
    let g = builtin_group(&ctx, "H3")?;
    let table = CharacterTable::h3(&ctx)?;
    l.extend(d)?;
    let m = group::isotypic_multiplicities(&g, &table, &mut l.engine, d)?;
    let text = m.iter().map(|(n, k)| format!("{n}:{k}")).collect::<Vec<_>>().join(" ") + "\n";
    let rows: Vec<Value> = m.iter().map(|(n, k)| json!({"irrep": n, "multiplicity": k})).collect();
    Ok(Report {
        inputs: l.inputs_with(json!({"degree": d, "group": "H3"})),
        results: json!({"dim": l.engine.dim(d)?, "multiplicities": rows}),
        text,
        code: EXIT_OK,
    })
}

fn center(alg: &AlgArgs, max: usize, only: Option<usize>) -> Result<Report, CliError> {
    let mut l = Loaded::new(alg)?;
    let degrees: Vec<usize> = match only {
        Some(k) => vec![k],
        None => (1..=max).collect(),
    };
    let top = degrees.iter().max().copied().unwrap_or(0);
    l.extend(top + 1)?;
    let gens = l.gens();
    let mut rows = Vec::new();
    let mut text = String::new();
    for &k in &degrees {
        let basis: Vec<String> = l.engine.center_basis(k)?.iter().map(|p| p.to_text(&gens)).collect();
        text += &format!("degree {k}: dim {}\n", basis.len());
        for b in &basis {
            text += &format!("  {b}\n");
        }
        rows.push(json!({"degree": k, "dim": basis.len(), "basis": basis}));
    }
    Ok(Report {
        inputs: l.inputs_with(json!({"max_deg": top})),
        results: json!({"degrees": rows}),
        text,
        code: EXIT_OK,
    })
}

fn intersect(alg: &AlgArgs, group_name: Option<&str>) -> Result<Report, CliError> {
    let l = Loaded::new(alg)?;
    let ctx = l.ctx();
    let pres = l.engine.presentation();
    let rels = pres.relations();
    let deg = pres.relation_degrees();
    if rels.is_empty() || deg.iter().any(|&d| d != deg[0]) {
        return Err(CliError::usage("intersect needs a nonempty set of relations of a single degree"));
    }
    let letters: Vec<NcPoly> = (0..pres.n()).map(|i| NcPoly::word(&ctx, Word::letter(i))).collect();
    let mut wv = Vec::new();
    let mut vw = Vec::new();
    for r in rels {
        for x in &letters {
            wv.push(r.mul(x)?);
            vw.push(x.mul(r)?);
        }
    }
    let d = subspace_dims(&wv, &vw)?;
    let basis = intersection_basis(&wv, &vw)?;
    let gens = l.gens();
    let basis_text: Vec<String> = basis.iter().map(|p| p.to_text(&gens)).collect();
    let fixed = match group_name {
        Some(name) => {
            let g = load_group(&ctx, name)?;
            Some(group::invariant_dim(&g, &basis)?)
        }
        None => None,
    };
    let mut text = format!(
        "dim W V = {}\ndim V W = {}\ndim (W V + V W) = {}\ndim (W V ∩ V W) = {}\n",
        d.dim1, d.dim2, d.dim_sum, d.dim_intersection
    );
    for b in &basis_text {
        text += &format!("  {b}\n");
    }
    if let Some(f) = fixed {
        text += &format!("fixed part: dim {f}\n");
    }
    Ok(Report {
        inputs: l.inputs_with(json!({"group": group_name})),
        results: json!({
            "dim_wv": d.dim1,
            "dim_vw": d.dim2,
            "dim_sum": d.dim_sum,
            "dim_intersection": d.dim_intersection,
            "intersection_basis": basis_text,
            "fixed_dim": fixed,
        }),
        text,
        code: EXIT_OK,
    })
}

fn point(ctx: &Arc<FieldCtx>, text: &str) -> Result<ProjPoint, CliError> {
    let c = parse_params(ctx, text)?;
    let arr: [CycNum; 3] = c.try_into().map_err(|_| CliError::usage(format!("{text:?} is not a point with three coordinates")))?;
    Ok(ProjPoint::new(arr)?)
}

fn points(m: u32, t: Option<&str>, prev: &str, start: &str, steps: usize) -> Result<Report, CliError> {
    let ctx = field(m)?;
    let t = t.map(|s| CycNum::parse(&ctx, s).map_err(|e| CliError::usage(format!("t: {e}")))).transpose()?;
    let mut state = TriangleState { prev: Some(point(&ctx, prev)?), cur: point(&ctx, start)? };
    let mut orbit = vec![state.prev.clone().expect("set"), state.cur.clone()];
    let mut free_line = None;
    for _ in 0..steps {
        match next_point(&state, t.as_ref())? {
            Next::Point(p) => {
                orbit.push(p.clone());
                state = TriangleState { prev: Some(state.cur), cur: p };
            }
            Next::FreeChoice { line } => {
                free_line = Some(line);
                break;
            }
        }
    }
    let mut text = String::new();
    for (i, p) in orbit.iter().enumerate() {
        text += &format!("{i:>3}  {p}\n");
    }
    if let Some(line) = free_line {
        text += &format!("next: any point with X{line} = 0\n");
    }
    let coords: Vec<Vec<String>> = orbit.iter().map(|p| texts(p.coords())).collect();
    Ok(Report {
        inputs: json!({"t": t.as_ref().map(|c| c.to_string()), "prev": prev, "start": start, "steps": steps, "field": m}),
        results: json!({"orbit": coords, "free_choice_line": free_line}),
        text,
        code: EXIT_OK,
    })
}

fn derive(m: u32, params: Option<&str>, sp: Option<&str>) -> Result<Report, CliError> {
    let ctx = field(m)?;
    let gens = default_gens(3);
    let (s, point) = match (params, sp) {
        (Some(p), None) => {
            let p = ParamPoint::new(parse_params(&ctx, p)?)?;
            if p.coords().len() != 3 {
                return Err(CliError::usage("--params needs three coordinates a,b,c"));
            }
            (constructions::superpotential(&p), Some(p))
        }
        (None, Some(text)) => (NcPoly::parse(&ctx, &gens, text)?, None),
        _ => return Err(CliError::usage("give --params or --superpotential")),
    };
    let rels: Vec<NcPoly> = (0..3).map(|g| s.cyclic_derivative(g)).collect();
    let rel_text: Vec<String> = rels.iter().map(|r| r.to_text(&gens)).collect();
    let mut text = format!("superpotential: {}\n", s.to_text(&gens));
    for (g, r) in gens.iter().zip(&rel_text) {
        text += &format!("d_{g}: {r}\n");
    }
    let matches = match &point {
        Some(p) => {
            let x = p.coords();
            let sk = constructions::sklyanin_relations(&ctx, &x[0], &x[1], &x[2]);
            let dims = subspace_dims(&rels, &sk)?;
            let same = dims.dim1 == dims.dim2 && dims.dim_sum == dims.dim1;
            text += &format!("spans the Sklyanin relations: {same}\n");
            Some(same)
        }
        None => None,
    };
    Ok(Report {
        inputs: json!({"params": params, "superpotential": sp, "field": m}),
        results: json!({"superpotential": s.to_text(&gens), "relations": rel_text, "matches_sklyanin": matches}),
        text,
        code: EXIT_OK,
    })
}

fn check_text(c: &CheckResult) -> String {
    let mut s = format!(
        "check {:>2}: {} {} ({:.2}s, limit {}s)\n",
        c.id,
        if c.passed { "PASS" } else { "FAIL" },
        c.name,
        c.elapsed_s,
        c.limit_s
    );
    if let Some(e) = &c.error {
        s += &format!("    error: {e}\n");
    }
    for v in &c.values {
        s += &format!(
            "    {} {}: expected {} ({}), computed {}\n",
            if v.passed { "ok  " } else { "FAIL" },
            v.key,
            v.expected,
            v.origin,
            v.computed.as_deref().unwrap_or("-")
        );
    }
    s
}

fn verify(suite: Suite, check: Option<u32>) -> Result<Report, CliError> {
    let report = match check {
        Some(id) => VerifyReport { checks: vec![run_check(id).ok_or_else(|| CliError::usage(format!("no check with id {id}")))?] },
        None => {
            let sel = match suite {
                Suite::All => SuiteSelection::All,
                Suite::Fast => SuiteSelection::Fast,
                Suite::Slow => SuiteSelection::Slow,
            };
            run_suite(sel, Default::default())
        }
    };
    let passed = report.checks.iter().filter(|c| c.passed).count();
    let mut text: String = report.checks.iter().map(check_text).collect();
    text += &format!("{passed}/{} checks passed\n", report.checks.len());
    Ok(Report {
        inputs: json!({"suite": format!("{suite:?}").to_lowercase(), "check": check}),
        results: json!({"passed": report.passed(), "checks": report.checks}),
        text,
        code: if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}
