//! In-process coverage of the command-line front end: every subcommand,
//! every exit code, the countermodel round-trip, and worker determinism.

use approxent::cli::{
    run, CanonArgs, CheckArgs, Command, EntailArgs, FuzzArgs, ParseArgs, ProveArgs, RunConfig,
    EXIT_OK, EXIT_REFUTED, EXIT_UNKNOWN, EXIT_USAGE,
};
use std::io::Write as _;
use std::path::{Path, PathBuf};

fn samples() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../samples")
}

struct Outcome {
    code: i32,
    report: String,
    diag: String,
}

fn drive(command: Command) -> Outcome {
    let config = RunConfig { command };
    let mut out = Vec::new();
    let mut diag = Vec::new();
    let code = run(&config, &mut out, &mut diag);
    Outcome {
        code,
        report: String::from_utf8(out).unwrap(),
        diag: String::from_utf8(diag).unwrap(),
    }
}

fn temp_file(name: &str, content: &str) -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(content.as_bytes()).unwrap();
    (dir, path)
}

fn parse_args(theory: Option<PathBuf>, formula: Option<&str>) -> ParseArgs {
    ParseArgs {
        theory,
        formula: formula.map(String::from),
        variant: None,
        scale: None,
    }
}

fn entail_args(theory: PathBuf) -> EntailArgs {
    EntailArgs { theory, bounds: None, workers: None, out: None }
}

#[test]
fn parse_echoes_a_theory_file_in_canonical_form() {
    let outcome = drive(Command::Parse(parse_args(Some(samples().join("figure2.thy")), None)));
    assert_eq!(outcome.code, EXIT_OK, "{}", outcome.diag);
    assert!(outcome.report.contains("a =>{1/2} b"));
    assert!(outcome.report.contains("query a =>{1/2} (b & c)"));
}

#[test]
fn parse_handles_a_bare_formula_with_an_inferred_signature() {
    let outcome = drive(Command::Parse(parse_args(None, Some("a =>{1/2} b & c"))));
    assert_eq!(outcome.code, EXIT_OK, "{}", outcome.diag);
    assert_eq!(outcome.report, "a =>{1/2} (b & c)\n");
}

#[test]
fn parse_requires_exactly_one_input() {
    let outcome = drive(Command::Parse(parse_args(None, None)));
    assert_eq!(outcome.code, EXIT_USAGE);
    assert!(outcome.diag.contains("--formula"), "{}", outcome.diag);
}

#[test]
fn parse_reports_syntax_errors_with_their_line() {
    let (_dir, path) = temp_file(
        "broken.thy",
        "logic lae\nscale godel 0 1\nsort w: a\na =>{1/3} a\n",
    );
    let outcome = drive(Command::Parse(parse_args(Some(path), None)));
    assert_eq!(outcome.code, EXIT_USAGE);
    assert!(outcome.diag.contains("line 4"), "{}", outcome.diag);
}

#[test]
fn check_reports_each_formula_and_the_query() {
    let outcome = drive(Command::Check(CheckArgs {
        theory: samples().join("prices.thy"),
        model: samples().join("chain.model"),
    }));
    assert_eq!(outcome.code, EXIT_OK, "{}", outcome.diag);
    assert_eq!(outcome.report.matches(": satisfied").count(), 4);
    assert!(outcome.report.contains("query: satisfied"));
}

#[test]
fn check_flags_violations_with_a_witness() {
    let theory = "logic lae\nscale godel 0 1/2 1\nsort w: a b\n\
                  a =>{1} b\n";
    let model = "worlds u v\nsim u v 1/2\neval a: u\neval b: v\n";
    let (_d1, theory_path) = temp_file("t.thy", theory);
    let (_d2, model_path) = temp_file("m.model", model);
    let outcome =
        drive(Command::Check(CheckArgs { theory: theory_path, model: model_path }));
    assert_eq!(outcome.code, EXIT_REFUTED);
    assert!(
        outcome.report.contains("formula 1: violated (holds only to grade 1/2)"),
        "{}",
        outcome.report
    );
}

#[test]
fn entail_accepts_the_bundled_car_theory() {
    let mut args = entail_args(samples().join("car.thy"));
    args.bounds = Some("exhaustive".into());
    let outcome = drive(Command::Entail(args));
    assert_eq!(outcome.code, EXIT_OK, "{}", outcome.diag);
    assert!(outcome.report.starts_with("ENTAILED"), "{}", outcome.report);
}

#[test]
fn entail_writes_countermodels_that_check_rejects_the_query_on() {
    let dir = tempfile::tempdir().unwrap();
    let countermodel = dir.path().join("counter.model");
    let mut args = entail_args(samples().join("figure2.thy"));
    args.out = Some(countermodel.clone());
    let outcome = drive(Command::Entail(args));
    assert_eq!(outcome.code, EXIT_REFUTED, "{}", outcome.diag);
    assert!(outcome.report.starts_with("COUNTERMODEL"), "{}", outcome.report);

    // Round trip: the written model satisfies the theory, refutes the query.
    let check = drive(Command::Check(CheckArgs {
        theory: samples().join("figure2.thy"),
        model: countermodel,
    }));
    assert_eq!(check.code, EXIT_REFUTED, "{}", check.diag);
    assert_eq!(check.report.matches(": satisfied").count(), 3, "{}", check.report);
    assert!(check.report.contains("query: violated"), "{}", check.report);
}

#[test]
fn entail_is_deterministic_across_worker_counts() {
    let mut single = entail_args(samples().join("figure2.thy"));
    single.workers = Some(1);
    let mut several = entail_args(samples().join("figure2.thy"));
    several.workers = Some(4);
    let first = drive(Command::Entail(single));
    let second = drive(Command::Entail(several));
    assert_eq!(first.code, second.code);
    assert_eq!(first.report, second.report);
}

#[test]
fn entail_reports_unknown_when_bounds_are_too_tight() {
    let mut args = entail_args(samples().join("figure2.thy"));
    args.bounds = Some("worlds=1".into());
    let outcome = drive(Command::Entail(args));
    assert_eq!(outcome.code, EXIT_UNKNOWN, "{}", outcome.report);
    assert!(outcome.report.starts_with("UNKNOWN:"), "{}", outcome.report);
}

#[test]
fn entail_requires_a_query_line() {
    let outcome = drive(Command::Entail(entail_args(samples().join("syllogism.thy"))));
    assert_eq!(outcome.code, EXIT_USAGE);
    assert!(outcome.diag.contains("query"), "{}", outcome.diag);
}

#[test]
fn entail_rejects_malformed_bounds() {
    let mut args = entail_args(samples().join("car.thy"));
    args.bounds = Some("banana".into());
    let outcome = drive(Command::Entail(args));
    assert_eq!(outcome.code, EXIT_USAGE);
    assert!(outcome.diag.contains("banana"), "{}", outcome.diag);
}

#[test]
fn prove_accepts_the_bundled_syllogism() {
    let outcome = drive(Command::Prove(ProveArgs {
        theory: samples().join("syllogism.thy"),
        script: samples().join("transitivity.prf"),
    }));
    assert_eq!(outcome.code, EXIT_OK, "{}", outcome.diag);
    assert_eq!(outcome.report, "ACCEPTED: p =>{1/2} r\n");
}

#[test]
fn prove_rejects_a_corrupted_script_at_its_line() {
    let script = std::fs::read_to_string(samples().join("transitivity.prf"))
        .unwrap()
        .replace("7. p =>{1/2} r", "7. p =>{1} r");
    let (_dir, path) = temp_file("bad.prf", &script);
    let outcome = drive(Command::Prove(ProveArgs {
        theory: samples().join("syllogism.thy"),
        script: path,
    }));
    assert_eq!(outcome.code, EXIT_REFUTED, "{}", outcome.diag);
    assert!(outcome.report.starts_with("REJECTED line 7"), "{}", outcome.report);
}

#[test]
fn canon_prints_the_world_map_and_a_loadable_model() {
    let dir = tempfile::tempdir().unwrap();
    let canonical = dir.path().join("canonical.model");
    let outcome = drive(Command::Canon(CanonArgs {
        theory: samples().join("prices.thy"),
        model: samples().join("chain.model"),
        out: Some(canonical.clone()),
    }));
    assert_eq!(outcome.code, EXIT_OK, "{}", outcome.diag);
    assert!(outcome.report.contains("isomorphic to its canonical form"));
    assert!(outcome.report.contains("p10 -> cheap&!pricey") || outcome.report.contains("p10 -> cheap & !pricey"));

    // The canonical model is itself a model of the theory.
    let check = drive(Command::Check(CheckArgs {
        theory: samples().join("prices.thy"),
        model: canonical,
    }));
    assert_eq!(check.code, EXIT_OK, "{}", check.diag);
}

#[test]
fn fuzz_sweeps_cleanly_for_every_variant() {
    for variant in ["lae", "laec", "laepc"] {
        let outcome = drive(Command::Fuzz(FuzzArgs {
            variant: variant.into(),
            scale: None,
            seed: 9,
            count: 25,
        }));
        assert_eq!(outcome.code, EXIT_OK, "{variant}: {}", outcome.report);
        assert!(outcome.report.contains("violations=0"), "{variant}: {}", outcome.report);
        assert!(outcome.report.contains("seed=9"), "{variant}: {}", outcome.report);
    }
}

#[test]
fn missing_files_exit_with_the_usage_status() {
    let outcome = drive(Command::Entail(entail_args(PathBuf::from("/nonexistent.thy"))));
    assert_eq!(outcome.code, EXIT_USAGE);
    assert!(outcome.diag.contains("/nonexistent.thy"), "{}", outcome.diag);
    assert!(outcome.report.is_empty());
}
