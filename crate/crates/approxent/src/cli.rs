//! Batch command-line front end.
//!
//! Subcommands cover the whole toolkit: `parse` echoes canonical syntax,
//! `check` evaluates a model against a theory, `entail` runs the bounded
//! decision procedure, `prove` checks a proof script, `canon` renames a model
//! onto its canonical form, and `fuzz` sweeps random models for schema or law
//! violations.  Exit codes are uniform: 0 for success (parsed, satisfied,
//! entailed, accepted), 1 for a definite refutation (a violated formula, a
//! countermodel, a rejected script, a found violation), 2 for an unknown
//! verdict, and 3 for usage, I/O or validation errors, whose diagnostics go
//! to the separate diagnostics stream.

use crate::decision::{decide_entailment, canonical_space, SearchBounds, Verdict};
use crate::gen::random_model;
use crate::laws::{axiom_instances, chain_law_violations, product_law_violations, s43_violations};
use crate::proofs::check_proof;
use crate::semantics::Model;
use crate::spaces::Space;
use crate::syntax::{parse_outer, LogicCtx, OuterFormula, Signature, Variant, RESERVED};
use crate::textio::{parse_model, parse_scale_spec, parse_theory, write_model, TheoryFile};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Exit status for success (parsed, satisfied, entailed, accepted).
pub const EXIT_OK: i32 = 0;
/// Exit status for a definite refutation (violated, countermodel, rejected).
pub const EXIT_REFUTED: i32 = 1;
/// Exit status for an unknown verdict (bounds refused or exhausted).
pub const EXIT_UNKNOWN: i32 = 2;
/// Exit status for usage, I/O or validation errors.
pub const EXIT_USAGE: i32 = 3;

/// Parsed invocation: one subcommand plus its inputs and flags.
#[derive(Debug, Parser)]
#[command(
    name = "approxent",
    version,
    about = "Reasoning toolkit for graded implications over similarity spaces"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Echo a theory file, or one formula, in canonical syntax.
    Parse(ParseArgs),
    /// Evaluate a model file against a theory file, formula by formula.
    Check(CheckArgs),
    /// Decide whether a theory entails its query.
    Entail(EntailArgs),
    /// Check a proof script against a theory file.
    Prove(ProveArgs),
    /// Rename a model onto its canonical form and report the world map.
    Canon(CanonArgs),
    /// Sweep random models for schema instance or space law violations.
    Fuzz(FuzzArgs),
}

#[derive(Debug, Args)]
pub struct ParseArgs {
    /// Theory file to echo.
    pub theory: Option<PathBuf>,
    /// A single formula to parse instead of a file.
    #[arg(long, conflicts_with = "theory")]
    pub formula: Option<String>,
    /// Logic variant for `--formula` (lae, laec or laepc).
    #[arg(long)]
    pub variant: Option<String>,
    /// Scale for `--formula`, e.g. `godel 0 1/2 1`.
    #[arg(long)]
    pub scale: Option<String>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Theory file providing the context and the formulas.
    pub theory: PathBuf,
    /// Model file to evaluate.
    pub model: PathBuf,
}

#[derive(Debug, Args)]
pub struct EntailArgs {
    /// Theory file with a `query` line.
    pub theory: PathBuf,
    /// Search bounds: `exhaustive` or `worlds=N`.
    #[arg(long)]
    pub bounds: Option<String>,
    /// Worker threads for the sweep (the verdict does not depend on this).
    #[arg(long)]
    pub workers: Option<usize>,
    /// Write any countermodel to this file instead of the report stream.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProveArgs {
    /// Theory file providing the context and the hypotheses.
    pub theory: PathBuf,
    /// Proof script to check.
    pub script: PathBuf,
}

#[derive(Debug, Args)]
pub struct CanonArgs {
    /// Theory file providing the context.
    pub theory: PathBuf,
    /// Model file to canonicalize.
    pub model: PathBuf,
    /// Write the canonical model to this file instead of the report stream.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FuzzArgs {
    /// Logic variant to sweep (lae, laec or laepc).
    #[arg(long, default_value = "lae")]
    pub variant: String,
    /// Scale, e.g. `godel 0 1/2 1`.
    #[arg(long)]
    pub scale: Option<String>,
    /// Seed for the model sampler.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of random models to sample.
    #[arg(long, default_value_t = 200)]
    pub count: usize,
}

/// Runs one invocation, writing the report to `out` and diagnostics to
/// `diag`, and returns the exit status.  The function never panics on bad
/// input and never touches process state, so it can be driven in-process.
pub fn run(config: &RunConfig, out: &mut dyn Write, diag: &mut dyn Write) -> i32 {
    let result = match &config.command {
        Command::Parse(args) => cmd_parse(args, out),
        Command::Check(args) => cmd_check(args, out),
        Command::Entail(args) => cmd_entail(args, out),
        Command::Prove(args) => cmd_prove(args, out),
        Command::Canon(args) => cmd_canon(args, out),
        Command::Fuzz(args) => cmd_fuzz(args, out),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(diag, "error: {msg}");
            EXIT_USAGE
        }
    }
}

type CmdResult = Result<i32, String>;

fn read_file(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn located<E: Display>(path: &Path) -> impl Fn(E) -> String + '_ {
    move |e| format!("{}: {e}", path.display())
}

fn load_theory(path: &Path) -> Result<TheoryFile, String> {
    parse_theory(&read_file(path)?).map_err(located(path))
}

fn load_model(path: &Path, ctx: &LogicCtx) -> Result<Model, String> {
    parse_model(&read_file(path)?, ctx).map_err(located(path))
}

fn emit(out: &mut dyn Write, text: impl Display) {
    let _ = writeln!(out, "{text}");
}

// ---- parse ---------------------------------------------------------------

fn identifiers(text: &str) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    let mut current = String::new();
    for ch in text.chars().chain(std::iter::once(' ')) {
        if ch.is_alphanumeric() || ch == '_' {
            current.push(ch);
            continue;
        }
        if !current.is_empty() {
            let name = std::mem::take(&mut current);
            let starts_alpha = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic());
            if starts_alpha && !RESERVED.contains(&name.as_str()) && !names.contains(&name) {
                names.push(name);
            }
        }
    }
    names
}

fn adhoc_ctx(formula: &str, args: &ParseArgs) -> Result<LogicCtx, String> {
    let variant = match &args.variant {
        Some(name) => Variant::from_name(name).ok_or(format!("unknown variant `{name}`"))?,
        None => Variant::Lae,
    };
    let scale = match &args.scale {
        Some(spec) => parse_scale_spec(spec)?,
        None => crate::grades::GradeScale::godel_three(),
    };
    let names = identifiers(formula);
    if names.is_empty() {
        return Err("the formula mentions no variables".into());
    }
    let sig = Signature::single_sort(&names).map_err(|e| e.to_string())?;
    LogicCtx::new(variant, sig, scale).map_err(|e| e.to_string())
}

fn cmd_parse(args: &ParseArgs, out: &mut dyn Write) -> CmdResult {
    match (&args.theory, &args.formula) {
        (Some(path), None) => {
            let file = load_theory(path)?;
            for f in &file.theory {
                emit(out, file.ctx.print_outer(f));
            }
            if let Some(q) = &file.query {
                emit(out, format!("query {}", file.ctx.print_outer(q)));
            }
            Ok(EXIT_OK)
        }
        (None, Some(text)) => {
            let ctx = adhoc_ctx(text, args)?;
            let f = parse_outer(text, &ctx).map_err(|e| e.to_string())?;
            emit(out, ctx.print_outer(&f));
            Ok(EXIT_OK)
        }
        _ => Err("give a theory file or --formula".into()),
    }
}

// ---- check ---------------------------------------------------------------

fn atom_witness(model: &Model, f: &OuterFormula) -> Option<String> {
    let OuterFormula::Atom(gi) = f else { return None };
    let ctx = model.ctx();
    let strength = model.implication_strength(&gi.lhs, &gi.rhs).ok()?;
    match strength {
        None => {
            let le = model.extension(&gi.lhs).ok()?;
            let re = model.extension(&gi.rhs).ok()?;
            let base = model.space().base();
            let w = le.iter().find(|&w| base.max_sim_into(w, &re).is_none())?;
            Some(format!("world {} reaches no world satisfying the consequent", base.name(w)))
        }
        Some(g) => Some(format!("holds only to grade {}", ctx.scale.level_text(g))),
    }
}

fn report_formula(
    model: &Model,
    label: &str,
    f: &OuterFormula,
    out: &mut dyn Write,
) -> Result<bool, String> {
    let ok = model.satisfies(f).map_err(|e| e.to_string())?;
    if ok {
        emit(out, format!("{label}: satisfied"));
    } else {
        match atom_witness(model, f) {
            Some(w) => emit(out, format!("{label}: violated ({w})")),
            None => emit(out, format!("{label}: violated")),
        }
    }
    Ok(ok)
}

fn cmd_check(args: &CheckArgs, out: &mut dyn Write) -> CmdResult {
    let file = load_theory(&args.theory)?;
    let model = load_model(&args.model, &file.ctx)?;
    let mut all_ok = true;
    for (i, f) in file.theory.iter().enumerate() {
        all_ok &= report_formula(&model, &format!("formula {}", i + 1), f, out)?;
    }
    if let Some(q) = &file.query {
        all_ok &= report_formula(&model, "query", q, out)?;
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_REFUTED })
}

// ---- entail --------------------------------------------------------------

fn parse_bounds(args: &EntailArgs) -> Result<SearchBounds, String> {
    let mut bounds = match args.bounds.as_deref() {
        None => SearchBounds::default(),
        Some("exhaustive") => SearchBounds::exhaustive(),
        Some(spec) => match spec.strip_prefix("worlds=").map(str::parse) {
            Some(Ok(n)) => SearchBounds { max_worlds: Some(n), ..SearchBounds::default() },
            _ => return Err(format!("bad --bounds `{spec}`: use `exhaustive` or `worlds=N`")),
        },
    };
    if let Some(w) = args.workers {
        if w == 0 {
            return Err("--workers must be at least 1".into());
        }
        bounds.workers = w;
    }
    Ok(bounds)
}

fn cmd_entail(args: &EntailArgs, out: &mut dyn Write) -> CmdResult {
    let file = load_theory(&args.theory)?;
    let query = file
        .query
        .as_ref()
        .ok_or_else(|| format!("{}: no `query` line to decide", args.theory.display()))?;
    let bounds = parse_bounds(args)?;
    let verdict = decide_entailment(&file.ctx, &file.theory, query, &bounds)
        .map_err(|e| e.to_string())?;
    match verdict {
        Verdict::Entailed => {
            emit(out, "ENTAILED");
            Ok(EXIT_OK)
        }
        Verdict::Countermodel(model) => {
            emit(out, "COUNTERMODEL");
            let text = write_model(&model);
            match &args.out {
                Some(path) => {
                    std::fs::write(path, &text).map_err(located(path))?;
                    emit(out, format!("countermodel written to {}", path.display()));
                }
                None => {
                    let _ = write!(out, "{text}");
                }
            }
            Ok(EXIT_REFUTED)
        }
        Verdict::Unknown { reason } => {
            emit(out, format!("UNKNOWN: {reason}"));
            Ok(EXIT_UNKNOWN)
        }
    }
}

// ---- prove ---------------------------------------------------------------

fn cmd_prove(args: &ProveArgs, out: &mut dyn Write) -> CmdResult {
    let file = load_theory(&args.theory)?;
    let script = crate::textio::parse_proof(&read_file(&args.script)?, &file.ctx)
        .map_err(located(&args.script))?;
    match check_proof(&file.theory, &script, &file.ctx) {
        Ok(conclusion) => {
            emit(out, format!("ACCEPTED: {}", file.ctx.print_outer(&conclusion)));
            Ok(EXIT_OK)
        }
        Err(rejection) => {
            emit(out, format!("REJECTED {rejection}"));
            Ok(EXIT_REFUTED)
        }
    }
}

// ---- canon ---------------------------------------------------------------

fn cmd_canon(args: &CanonArgs, out: &mut dyn Write) -> CmdResult {
    let file = load_theory(&args.theory)?;
    let model = load_model(&args.model, &file.ctx)?;
    let canon = canonical_space(&model);
    let base = model.space().base();
    let canon_base = canon.model.space().base();
    for u in 0..model.n_worlds() {
        for v in 0..model.n_worlds() {
            if base.sim(u, v) != canon_base.sim(canon.world_map[u], canon.world_map[v]) {
                return Err("canonical renaming failed to preserve similarity".into());
            }
        }
    }
    emit(out, "isomorphic to its canonical form");
    for w in 0..model.n_worlds() {
        emit(
            out,
            format!("  {} -> {}", base.name(w), canon_base.name(canon.world_map[w])),
        );
    }
    let text = write_model(&canon.model);
    match &args.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(located(path))?;
            emit(out, format!("canonical model written to {}", path.display()));
        }
        None => {
            let _ = write!(out, "{text}");
        }
    }
    Ok(EXIT_OK)
}

// ---- fuzz ----------------------------------------------------------------

fn fuzz_ctx(args: &FuzzArgs) -> Result<LogicCtx, String> {
    let variant =
        Variant::from_name(&args.variant).ok_or(format!("unknown variant `{}`", args.variant))?;
    let scale = match &args.scale {
        Some(spec) => parse_scale_spec(spec)?,
        None => crate::grades::GradeScale::godel_three(),
    };
    let sig = match variant {
        Variant::Lae => Signature::single_sort(&["p", "q", "r"]),
        Variant::Laec => Signature::single_sort(&["p", "q"]),
        Variant::Laepc => Signature::new(&[("s", vec!["p", "q"]), ("t", vec!["r"])], &["u"]),
    }
    .map_err(|e| e.to_string())?;
    LogicCtx::new(variant, sig, scale).map_err(|e| e.to_string())
}

fn cmd_fuzz(args: &FuzzArgs, out: &mut dyn Write) -> CmdResult {
    let ctx = fuzz_ctx(args)?;
    let instances = axiom_instances(&ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut schema_checks = 0usize;
    let mut law_sweeps = 0usize;
    let mut violations = 0usize;
    for _ in 0..args.count {
        let model = random_model(&ctx, &mut rng, 4);
        for (id, f) in &instances {
            schema_checks += 1;
            if !model.satisfies(f).map_err(|e| e.to_string())? {
                violations += 1;
                emit(out, format!("schema violation: {id} fails in a sampled model"));
                let _ = write!(out, "{}", write_model(&model));
            }
        }
        if model.n_worlds() <= 6 {
            let broken: Vec<String> = match model.space() {
                Space::Plain(_) => Vec::new(),
                Space::Chain(chain) => {
                    law_sweeps += 1;
                    let mut v = chain_law_violations(chain);
                    v.extend(s43_violations(chain));
                    v
                }
                Space::Product(p) => {
                    law_sweeps += 1;
                    product_law_violations(p)
                }
            };
            for law in broken {
                violations += 1;
                emit(out, format!("law violation: {law}"));
            }
        }
    }
    emit(
        out,
        format!(
            "seed={} models={} instances={} schema-checks={} law-sweeps={} violations={}",
            args.seed,
            args.count,
            instances.len(),
            schema_checks,
            law_sweeps,
            violations
        ),
    );
    Ok(if violations == 0 { EXIT_OK } else { EXIT_REFUTED })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers_skip_keywords_grades_and_duplicates() {
        assert_eq!(
            identifiers("alpha =>{1/2} (dle beta & alpha) | !T"),
            vec!["alpha".to_string(), "beta".to_string()]
        );
        assert!(identifiers("_|_ =>{1} T").is_empty());
    }

    #[test]
    fn bounds_specs_parse_and_reject() {
        let args = |bounds: Option<&str>, workers| EntailArgs {
            theory: PathBuf::new(),
            bounds: bounds.map(String::from),
            workers,
            out: None,
        };
        assert_eq!(parse_bounds(&args(None, None)).unwrap(), SearchBounds::default());
        let exhaustive = parse_bounds(&args(Some("exhaustive"), Some(3))).unwrap();
        assert!(exhaustive.exhaustive);
        assert_eq!(exhaustive.workers, 3);
        assert_eq!(parse_bounds(&args(Some("worlds=5"), None)).unwrap().max_worlds, Some(5));
        assert!(parse_bounds(&args(Some("worlds=x"), None)).is_err());
        assert!(parse_bounds(&args(None, Some(0))).is_err());
    }
}
