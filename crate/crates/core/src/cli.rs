//! Command-line entry point.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success, including a `false` verdict from `check` and exhausted bounds |
//! | 1 | parse error in a formula, model, derivation, config file or the arguments |
//! | 2 | formula outside the source language of the translation |
//! | 3 | the model violates a frame or model condition |
//! | 4 | derivation rejected |
//! | 5 | a property suite failed |

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::formula::{parse_with, sort_of_name, Formula, ParseOptions, Signature, Var};
use crate::kripke::{
    eval_intuitionistic, explain_classical, explain_forcing, parse_model, render_model,
    validate_birelational, Assignment, BimodalModel, ModelFile, Value, WorldId,
};
use crate::proofs::{check_derivation, parse_derivation, render_inventories, SystemName, SystemSpec, Verdict};
use crate::search::{
    find_birelational_countermodel, find_countermodel, run_property_suite, FrameRestriction, SearchBounds,
    SearchOutcome, Semantics, SuiteOptions, SUITES,
};
use crate::translate::{normalize, translate, Kind, TranslateError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_LANGUAGE: i32 = 2;
pub const EXIT_INVALID_MODEL: i32 = 3;
pub const EXIT_REJECTED: i32 = 4;
pub const EXIT_SUITE_FAILED: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "bimodal", version, about = "Bimodal logic workbench: translate, evaluate, prove, search")]
struct Cli {
    /// keyword=value file with default bounds and jobs.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Concurrent chunks during search.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Translate a formula and print the result.
    Translate(TranslateArgs),
    /// Evaluate a formula in a model file.
    Check(CheckArgs),
    /// Check a derivation file.
    Prove(ProveArgs),
    /// Search for a countermodel within bounds.
    Countermodel(CountermodelArgs),
    /// Run property suites.
    Properties(PropertiesArgs),
    /// Print the axiom inventory of every system.
    Inventory,
    /// Validate a model file.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
struct TranslateArgs {
    #[arg(long, value_name = "KIND", value_parser = parse_kind)]
    kind: Kind,
    /// Formula text; omit when using --file.
    formula: Option<String>,
    #[arg(long, value_name = "PATH", conflicts_with = "formula")]
    file: Option<PathBuf>,
    /// Plural variable for the reverse translation.
    #[arg(long, value_name = "VAR")]
    anchor: Option<String>,
    /// Simplify the result.
    #[arg(long)]
    normalize: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SemanticsArg {
    Classical,
    Forcing,
    /// Birelational reading: facts persist along leqD, G is the modality.
    Intuitionistic,
}

#[derive(Debug, Args)]
struct CheckArgs {
    model: PathBuf,
    formula: String,
    #[arg(long, value_enum, default_value = "classical")]
    semantics: SemanticsArg,
    /// World name; defaults to the first declared world.
    #[arg(long)]
    world: Option<String>,
    /// Values of free variables, e.g. "x=a XX={a b}".
    #[arg(long, value_name = "BINDINGS", default_value = "")]
    assign: String,
    /// Print the evaluation trace.
    #[arg(long)]
    explain: bool,
}

#[derive(Debug, Args)]
struct ProveArgs {
    derivation: PathBuf,
    /// System to check in; defaults to the file's `# system:` header.
    #[arg(long)]
    system: Option<String>,
    #[arg(long)]
    with_reverse_subsumption: bool,
}

#[derive(Debug, Args, Default)]
struct BoundArgs {
    #[arg(long)]
    max_worlds: Option<usize>,
    /// Universe size: every domain is a nonempty subset of this many individuals.
    #[arg(long)]
    max_domain: Option<usize>,
    #[arg(long)]
    min_worlds: Option<usize>,
    #[arg(long)]
    max_arity: Option<usize>,
    /// Depth of the singular formula pool.
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    plural_depth: Option<usize>,
    #[arg(long, value_enum)]
    frames: Option<FramesArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FramesArg {
    Any,
    GIdentity,
    Identity,
}

impl From<FramesArg> for FrameRestriction {
    fn from(f: FramesArg) -> Self {
        match f {
            FramesArg::Any => FrameRestriction::Any,
            FramesArg::GIdentity => FrameRestriction::GIdentity,
            FramesArg::Identity => FrameRestriction::Identity,
        }
    }
}

#[derive(Debug, Args)]
struct CountermodelArgs {
    formula: String,
    #[arg(long, value_enum, default_value = "classical")]
    semantics: SemanticsArg,
    #[command(flatten)]
    bounds: BoundArgs,
}

#[derive(Debug, Args)]
struct PropertiesArgs {
    /// Suite name, or `all`.
    #[arg(long)]
    suite: String,
    #[command(flatten)]
    bounds: BoundArgs,
    /// Write one JSON record per instance to this file.
    #[arg(long, value_name = "PATH")]
    results: Option<PathBuf>,
    /// Drop the decidable-identity flag from enumerated models.
    #[arg(long)]
    no_decidable_identity: bool,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    model: PathBuf,
    /// Validate as a birelational model instead.
    #[arg(long)]
    intuitionistic: bool,
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    s.parse()
}

/// A failed command: exit code and message for standard error.
#[derive(Debug)]
struct Failure(i32, String);

type CmdResult = Result<i32, Failure>;

fn parse_err(e: impl ToString) -> Failure {
    Failure(EXIT_PARSE, e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(EXIT_PARSE, format!("{}: {e}", path.display())))
}

/// Defaults from a config file.
#[derive(Debug, Default)]
struct Config {
    values: BTreeMap<String, usize>,
    frames: Option<FrameRestriction>,
}

const CONFIG_KEYS: [&str; 7] = ["jobs", "max-worlds", "max-domain", "min-worlds", "max-arity", "depth", "plural-depth"];

fn parse_config(text: &str) -> Result<Config, String> {
    let mut c = Config::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected keyword=value", i + 1))?;
        let (k, v) = (k.trim().replace('_', "-"), v.trim());
        if k == "frames" {
            let f = FramesArg::from_str(v, true).map_err(|_| format!("config line {}: unknown frames '{v}'", i + 1))?;
            c.frames = Some(f.into());
        } else if CONFIG_KEYS.contains(&k.as_str()) {
            let n = v.parse().map_err(|_| format!("config line {}: '{v}' is not a number", i + 1))?;
            c.values.insert(k, n);
        } else {
            return Err(format!("config line {}: unknown keyword '{k}'", i + 1));
        }
    }
    Ok(c)
}

impl Config {
    fn bounds(&self, a: &BoundArgs) -> SearchBounds {
        let d = SearchBounds::default();
        let pick = |flag: Option<usize>, key: &str, default: usize| flag.or(self.values.get(key).copied()).unwrap_or(default);
        SearchBounds {
            max_worlds: pick(a.max_worlds, "max-worlds", d.max_worlds),
            max_domain: pick(a.max_domain, "max-domain", d.max_domain),
            min_worlds: pick(a.min_worlds, "min-worlds", d.min_worlds),
            max_arity: pick(a.max_arity, "max-arity", d.max_arity),
            max_pool_depth: pick(a.depth, "depth", d.max_pool_depth),
            plural_depth: pick(a.plural_depth, "plural-depth", d.plural_depth),
            frames: a.frames.map(Into::into).or(self.frames).unwrap_or(d.frames),
        }
    }
}

/// Run the command line `args` (program name first), writing to `out` and
/// `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_PARSE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> CmdResult {
    let config = match &cli.config {
        Some(p) => parse_config(&read(p)?).map_err(parse_err)?,
        None => Config::default(),
    };
    let jobs = cli.jobs.or(config.values.get("jobs").copied()).unwrap_or(1).max(1);
    match cli.command {
        Command::Translate(a) => cmd_translate(a, out),
        Command::Check(a) => cmd_check(a, out),
        Command::Prove(a) => cmd_prove(a, out),
        Command::Countermodel(a) => cmd_countermodel(a, &config, jobs, out),
        Command::Properties(a) => cmd_properties(a, &config, jobs, out),
        Command::Inventory => {
            emit(out, &render_inventories())?;
            Ok(EXIT_OK)
        }
        Command::Validate(a) => cmd_validate(a, out),
    }
}

fn emit(out: &mut dyn Write, s: &str) -> Result<(), Failure> {
    out.write_all(s.as_bytes()).map_err(|e| Failure(EXIT_PARSE, e.to_string()))
}

/// Parse a formula on its own: unbound singular names are constants and
/// predicates are declared on first use.
fn standalone(text: &str) -> Result<Formula, Failure> {
    let mut sig = Signature::new();
    let opts = ParseOptions { infer_predicates: true, unbound_as_constants: true, ..Default::default() };
    parse_with(text, &mut sig, &opts).map_err(parse_err)
}

fn cmd_translate(a: TranslateArgs, out: &mut dyn Write) -> CmdResult {
    let text = match (&a.formula, &a.file) {
        (Some(t), _) => t.clone(),
        (None, Some(p)) => read(p)?.trim().to_string(),
        (None, None) => return Err(parse_err("give a formula or --file")),
    };
    let f = standalone(&text)?;
    let anchor = match (&a.anchor, a.kind) {
        (Some(x), _) => Var::new(x),
        (None, Kind::Reverse) => return Err(parse_err("reverse translation needs --anchor")),
        (None, _) => Var::new("XX"),
    };
    let t = translate(a.kind, &f, &anchor).map_err(|e| match e {
        TranslateError::WrongLanguage { .. } => Failure(EXIT_LANGUAGE, e.to_string()),
        _ => parse_err(e),
    })?;
    let t = if a.normalize { normalize(&t) } else { t };
    emit(out, &format!("{t}\n"))?;
    Ok(EXIT_OK)
}

fn load_model(path: &Path, intuitionistic: bool) -> Result<ModelFile, Failure> {
    let mf = parse_model(&read(path)?).map_err(|e| parse_err(format!("{}: {e}", path.display())))?;
    let violations: Vec<String> = if intuitionistic {
        validate_birelational(&mf.model)
            .violations
            .iter()
            .map(|v| format!("line {}: {v}", mf.source.locate(v)))
            .collect()
    } else {
        mf.violations()
    };
    if violations.is_empty() {
        Ok(mf)
    } else {
        Err(Failure(EXIT_INVALID_MODEL, format!("invalid model {}:\n{}", path.display(), violations.join("\n"))))
    }
}

fn individual(m: &BimodalModel, name: &str) -> Result<usize, Failure> {
    m.frame().individual_index(name).ok_or_else(|| parse_err(format!("unknown individual '{name}'")))
}

/// `x=a XX={a b}`: whitespace separated bindings, plural values in braces.
pub fn assignment_from_str(m: &BimodalModel, text: &str) -> Result<Assignment, String> {
    parse_assignment(m, text).map_err(|f| f.1)
}

fn parse_assignment(m: &BimodalModel, text: &str) -> Result<Assignment, Failure> {
    let mut a = Assignment::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let (name, after) = rest
            .split_once('=')
            .ok_or_else(|| parse_err(format!("expected var=value in assignment, found '{rest}'")))?;
        let var = Var::new(name.trim());
        let after = after.trim_start();
        let (value, tail) = if let Some(inner) = after.strip_prefix('{') {
            let (body, tail) = inner.split_once('}').ok_or_else(|| parse_err("unclosed '{' in assignment"))?;
            let mut mask = 0u64;
            for n in body.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
                mask |= 1 << individual(m, n)?;
            }
            (Value::Plural(mask), tail)
        } else {
            let end = after.find(|c: char| c.is_whitespace() || c == ',').unwrap_or(after.len());
            (Value::Ind(individual(m, &after[..end])?), &after[end..])
        };
        if value.sort() != sort_of_name(var.name()) {
            return Err(parse_err(format!("{} is {} but was given a value of the other sort", var, var.sort())));
        }
        a.insert(var, value);
        rest = tail.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
    }
    Ok(a)
}

fn world(m: &BimodalModel, name: Option<&str>) -> Result<WorldId, Failure> {
    match name {
        None => Ok(0),
        Some(n) => m.frame().world_index(n).ok_or_else(|| parse_err(format!("unknown world '{n}'"))),
    }
}

fn cmd_check(a: CheckArgs, out: &mut dyn Write) -> CmdResult {
    let intuitionistic = a.semantics == SemanticsArg::Intuitionistic;
    let mf = load_model(&a.model, intuitionistic)?;
    let m = &mf.model;
    let mut sig = m.signature();
    let opts = ParseOptions { infer_predicates: true, ..Default::default() };
    let f = parse_with(&a.formula, &mut sig, &opts).map_err(parse_err)?;
    let w = world(m, a.world.as_deref())?;
    let asg = parse_assignment(m, &a.assign)?;
    let (verdict, trace) = match a.semantics {
        SemanticsArg::Classical => explain_classical(m, w, &asg, &f),
        SemanticsArg::Forcing => explain_forcing(m, w, &asg, &f),
        SemanticsArg::Intuitionistic => eval_intuitionistic(m, w, &asg, &f).map(|b| (b, Vec::new())),
    }
    .map_err(parse_err)?;
    let mut s = format!("{verdict}\n");
    if a.explain {
        if trace.is_empty() && intuitionistic {
            s.push_str("(no trace for the intuitionistic reading)\n");
        }
        for line in trace {
            s.push_str(&line);
            s.push('\n');
        }
    }
    emit(out, &s)?;
    Ok(EXIT_OK)
}

fn cmd_prove(a: ProveArgs, out: &mut dyn Write) -> CmdResult {
    let d = parse_derivation(&read(&a.derivation)?).map_err(|e| parse_err(format!("{}: {e}", a.derivation.display())))?;
    let system = match (&a.system, &d.system) {
        (Some(n), _) => {
            let name: SystemName = n.parse().map_err(parse_err)?;
            SystemSpec::named(name)
        }
        (None, Some(s)) => s.clone(),
        (None, None) => return Err(parse_err("no --system given and no '# system:' header")),
    };
    let system = if a.with_reverse_subsumption { system.with_reverse_subsumption(true) } else { system };
    let v = check_derivation(&d, &system);
    emit(out, &format!("{v}\n"))?;
    Ok(match v {
        Verdict::Accepted => EXIT_OK,
        Verdict::Rejected { .. } => EXIT_REJECTED,
    })
}

fn cmd_countermodel(a: CountermodelArgs, config: &Config, jobs: usize, out: &mut dyn Write) -> CmdResult {
    let f = standalone(&a.formula)?;
    let b = config.bounds(&a.bounds);
    let outcome = match a.semantics {
        SemanticsArg::Classical => find_countermodel(&f, Semantics::Classical, &b, Default::default(), jobs),
        SemanticsArg::Forcing => find_countermodel(&f, Semantics::Forcing, &b, Default::default(), jobs),
        SemanticsArg::Intuitionistic => find_birelational_countermodel(&f, &b),
    }
    .map_err(parse_err)?;
    let semantics = match a.semantics {
        SemanticsArg::Classical => "classical",
        SemanticsArg::Forcing => "forcing",
        SemanticsArg::Intuitionistic => "intuitionistic",
    };
    let s = match outcome {
        SearchOutcome::Found(c) => {
            let mut s = format!("# countermodel to {f} ({semantics})\n# found {}\n", c.describe());
            let w = c.model.frame().world_name(c.world);
            let mut replay = format!("# replay: check --semantics {semantics} --world {w}");
            if !c.assignment.is_empty() {
                replay.push_str(&format!(" --assign \"{}\"", c.assignment.render(&c.model)));
            }
            s.push_str(&replay);
            s.push('\n');
            s.push_str(&render_model(&c.model));
            s
        }
        SearchOutcome::Exhausted { space, models } => {
            format!("exhausted-bounds: no countermodel to {f} ({semantics}) among {models} models; space {space}\n")
        }
    };
    emit(out, &s)?;
    Ok(EXIT_OK)
}

fn cmd_properties(a: PropertiesArgs, config: &Config, jobs: usize, out: &mut dyn Write) -> CmdResult {
    let b = config.bounds(&a.bounds);
    let mut opts = SuiteOptions { jobs, ..Default::default() };
    if a.no_decidable_identity {
        opts.flags.decidable_identity = false;
    }
    let names: Vec<&str> = if a.suite == "all" { SUITES.iter().map(|s| s.as_str()).collect() } else { vec![&a.suite] };
    let mut all_passed = true;
    let mut records = String::new();
    for name in names {
        let r = run_property_suite(name, &b, &opts).map_err(parse_err)?;
        emit(out, &r.render_text())?;
        all_passed &= r.passed;
        records.push_str(&r.to_jsonl());
    }
    if let Some(p) = &a.results {
        fs::write(p, records).map_err(|e| Failure(EXIT_PARSE, format!("{}: {e}", p.display())))?;
    }
    Ok(if all_passed { EXIT_OK } else { EXIT_SUITE_FAILED })
}

fn cmd_validate(a: ValidateArgs, out: &mut dyn Write) -> CmdResult {
    let mf = load_model(&a.model, a.intuitionistic)?;
    let fr = mf.model.frame();
    emit(out, &format!("valid: {} worlds, {} individuals\n", fr.world_count(), fr.individual_count()))?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("bimodal").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn translate_examples() {
        assert_eq!(run_args(&["translate", "--kind", "star", "exists x P(x)"]).1, "<>G exists x []D P(x)\n");
        assert_eq!(run_args(&["translate", "--kind", "godel", "P(a)"]).1, "[]D P(a)\n");
        assert_eq!(run_args(&["translate", "--kind", "ext-godel", "[]D P(a)"]).0, EXIT_LANGUAGE);
        assert_eq!(run_args(&["translate", "--kind", "godel", "P(a"]).0, EXIT_PARSE);
        assert_eq!(run_args(&["translate", "--kind", "reverse", "P(a)"]).0, EXIT_PARSE);
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_args(&["translate", "--kind", "nope", "P(a)"]).0, EXIT_PARSE);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_PARSE);
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn config_file() {
        let c = parse_config("# defaults\nmax-worlds = 2\nmax_domain=1\nframes = g-identity\n").unwrap();
        let b = c.bounds(&BoundArgs { max_worlds: Some(3), ..Default::default() });
        assert_eq!((b.max_worlds, b.max_domain, b.frames), (3, 1, FrameRestriction::GIdentity));
        assert!(parse_config("colour = red").is_err());
        assert!(parse_config("depth = deep").is_err());
    }

    #[test]
    fn assignments() {
        let m = parse_model("worlds: w0\ndom w0: a b\n").unwrap().model;
        let a = parse_assignment(&m, "x=a XX={a b}").unwrap();
        assert_eq!(a.render(&m), "XX={a b} x=a");
        assert_eq!(parse_assignment(&m, &a.render(&m)).unwrap(), a);
        assert!(parse_assignment(&m, "x={a}").is_err());
        assert!(parse_assignment(&m, "x=q").is_err());
    }
}
