//! Line-oriented text formats: theory files, model files, proof scripts.
//!
//! A theory file opens with a header — `logic`, `scale`, `sort`/`unsorted`
//! declarations — and continues with one outer formula per line, plus an
//! optional `query` line.  A model file names worlds and their similarities
//! in the shape the theory's variant expects (a `worlds` list, an `order`
//! chain, or one `component` block per sort) and lists variable extensions
//! with `eval` lines.  A proof script numbers its lines and justifies each
//! one.  `#` starts a comment anywhere, blank lines are skipped, and every
//! error carries the 1-based line it was detected on (0 for whole-file
//! conditions).

use crate::grades::{GradeScale, Grade, Level};
use crate::proofs::{AxiomId, Justification, ProofLine, ProofScript};
use crate::semantics::{Evaluation, Model};
use crate::spaces::{ChainSpace, ProductSpace, SimilaritySpace, Space, WorldSet};
use crate::syntax::{parse_outer, LogicCtx, OuterFormula, Signature, Theory, Variant};
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

/// A parse or validation failure in a text format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextError {
    /// 1-based line the failure was detected on; 0 for whole-file conditions.
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for TextError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            f.write_str(&self.msg)
        } else {
            write!(f, "line {}: {}", self.line, self.msg)
        }
    }
}

impl std::error::Error for TextError {}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, TextError> {
    Err(TextError { line, msg: msg.into() })
}

/// Lines with comments stripped and blanks dropped, paired with their
/// 1-based numbers.
fn logical_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            None
        } else {
            Some((i + 1, body))
        }
    })
}

fn split_word(body: &str) -> (&str, &str) {
    match body.split_once(char::is_whitespace) {
        Some((head, rest)) => (head, rest.trim()),
        None => (body, ""),
    }
}

// ---- scales --------------------------------------------------------------

fn parse_level(token: &str) -> Result<Level, String> {
    Level::from_str(token).map_err(|_| format!("bad level `{token}`"))
}

/// Parses a scale description: `godel <levels>`, `lukasiewicz <levels>`, or
/// `table <levels> <row-major index table>` — in the table form the level
/// count is recovered from the token count (k levels need k² entries).
pub fn parse_scale_spec(spec: &str) -> Result<GradeScale, String> {
    let mut tokens = spec.split_whitespace();
    let kind = tokens.next().ok_or("empty scale description")?;
    let rest: Vec<&str> = tokens.collect();
    let levels_of = |tokens: &[&str]| -> Result<Vec<Level>, String> {
        tokens.iter().map(|t| parse_level(t)).collect()
    };
    match kind {
        "godel" => GradeScale::godel(levels_of(&rest)?).map_err(|e| e.to_string()),
        "lukasiewicz" => GradeScale::lukasiewicz(levels_of(&rest)?).map_err(|e| e.to_string()),
        "table" => {
            let k = (1..=rest.len())
                .find(|k| k * k + k == rest.len())
                .ok_or("table form needs k levels followed by k*k entries")?;
            let levels = levels_of(&rest[..k])?;
            let entries: Vec<usize> = rest[k..]
                .iter()
                .map(|t| t.parse().map_err(|_| format!("bad table entry `{t}`")))
                .collect::<Result<_, _>>()?;
            GradeScale::from_table(levels, entries).map_err(|e| e.to_string())
        }
        other => Err(format!("unknown scale kind `{other}`")),
    }
}

/// Renders a scale in the form [`parse_scale_spec`] reads back.
pub fn write_scale_spec(scale: &GradeScale) -> String {
    let levels: Vec<String> = scale.grades().map(|g| scale.level_text(g)).collect();
    match scale.kind() {
        crate::grades::ScaleKind::Godel => format!("godel {}", levels.join(" ")),
        crate::grades::ScaleKind::Lukasiewicz => format!("lukasiewicz {}", levels.join(" ")),
        crate::grades::ScaleKind::Table => {
            let entries: Vec<String> = scale
                .grades()
                .flat_map(|a| scale.grades().map(move |b| (a, b)))
                .map(|(a, b)| scale.combine(a, b).0.to_string())
                .collect();
            format!("table {} {}", levels.join(" "), entries.join(" "))
        }
    }
}

fn parse_grade(token: &str, scale: &GradeScale, line: usize) -> Result<Grade, TextError> {
    let level = parse_level(token).map_err(|msg| TextError { line, msg })?;
    scale
        .grade_of(level)
        .map_err(|_| TextError { line, msg: format!("grade `{token}` is not on the scale") })
}

// ---- theory files --------------------------------------------------------

/// A parsed theory file: the logic context, the hypotheses in file order,
/// and the optional query.
#[derive(Debug, Clone)]
pub struct TheoryFile {
    pub ctx: LogicCtx,
    pub theory: Theory,
    pub query: Option<OuterFormula>,
}

/// Parses a theory file.  The header (`logic`, `scale`, `sort`, `unsorted`)
/// must be complete before the first formula or `query` line; at most one
/// query is allowed.
pub fn parse_theory(text: &str) -> Result<TheoryFile, TextError> {
    let mut variant: Option<Variant> = None;
    let mut scale: Option<GradeScale> = None;
    let mut sorts: Vec<(String, Vec<String>)> = Vec::new();
    let mut unsorted: Vec<String> = Vec::new();
    let mut ctx: Option<LogicCtx> = None;
    let mut theory: Theory = Vec::new();
    let mut query: Option<OuterFormula> = None;

    let freeze = |variant: &Option<Variant>,
                  scale: &mut Option<GradeScale>,
                  sorts: &[(String, Vec<String>)],
                  unsorted: &[String],
                  line: usize|
     -> Result<LogicCtx, TextError> {
        let v = (*variant).ok_or(TextError { line, msg: "missing `logic` line".into() })?;
        let s = scale.take().ok_or(TextError { line, msg: "missing `scale` line".into() })?;
        let sig = Signature::new(sorts, unsorted)
            .map_err(|e| TextError { line, msg: e.to_string() })?;
        LogicCtx::new(v, sig, s).map_err(|e| TextError { line, msg: e.to_string() })
    };

    for (ln, body) in logical_lines(text) {
        let (head, rest) = split_word(body);
        let header_done = ctx.is_some();
        match head.trim_end_matches(':') {
            "logic" | "scale" | "sort" | "unsorted" if header_done => {
                return err(ln, format!("`{}` must come before the first formula", head));
            }
            "logic" => {
                if variant.is_some() {
                    return err(ln, "duplicate `logic` line");
                }
                variant = Some(Variant::from_name(rest).ok_or(TextError {
                    line: ln,
                    msg: format!("unknown logic `{rest}`"),
                })?);
            }
            "scale" => {
                if scale.is_some() {
                    return err(ln, "duplicate `scale` line");
                }
                scale = Some(parse_scale_spec(rest).map_err(|msg| TextError { line: ln, msg })?);
            }
            "sort" => {
                let (name, vars) = rest
                    .split_once(':')
                    .ok_or(TextError { line: ln, msg: "expected `sort <name>: <variables>`".into() })?;
                let vars: Vec<String> = vars.split_whitespace().map(String::from).collect();
                if vars.is_empty() {
                    return err(ln, "a sort needs at least one variable");
                }
                sorts.push((name.trim().to_string(), vars));
            }
            "unsorted" => {
                let rest = rest.strip_prefix(':').unwrap_or(rest);
                if !unsorted.is_empty() {
                    return err(ln, "duplicate `unsorted` line");
                }
                unsorted = rest.split_whitespace().map(String::from).collect();
                if unsorted.is_empty() {
                    return err(ln, "expected `unsorted: <variables>`");
                }
            }
            "query" => {
                if ctx.is_none() {
                    ctx = Some(freeze(&variant, &mut scale, &sorts, &unsorted, ln)?);
                }
                if query.is_some() {
                    return err(ln, "a file carries at most one `query` line");
                }
                let c = ctx.as_ref().unwrap();
                let f = parse_outer(rest, c).map_err(|e| TextError { line: ln, msg: e.to_string() })?;
                f.validate(c).map_err(|e| TextError { line: ln, msg: e.to_string() })?;
                query = Some(f);
            }
            _ => {
                if ctx.is_none() {
                    ctx = Some(freeze(&variant, &mut scale, &sorts, &unsorted, ln)?);
                }
                let c = ctx.as_ref().unwrap();
                let f =
                    parse_outer(body, c).map_err(|e| TextError { line: ln, msg: e.to_string() })?;
                f.validate(c).map_err(|e| TextError { line: ln, msg: e.to_string() })?;
                theory.push(f);
            }
        }
    }
    let ctx = match ctx {
        Some(c) => c,
        None => freeze(&variant, &mut scale, &sorts, &unsorted, 0)?,
    };
    Ok(TheoryFile { ctx, theory, query })
}

/// Renders a theory file in the form [`parse_theory`] reads back.
pub fn write_theory(file: &TheoryFile) -> String {
    let ctx = &file.ctx;
    let mut out = String::new();
    let _ = writeln!(out, "logic {}", ctx.variant.name());
    let _ = writeln!(out, "scale {}", write_scale_spec(&ctx.scale));
    for s in ctx.sig.sort_ids() {
        let vars: Vec<&str> =
            ctx.sig.vars_of_sort(s).iter().map(|&v| ctx.sig.var_name(v)).collect();
        let _ = writeln!(out, "sort {}: {}", ctx.sig.sort_name(s), vars.join(" "));
    }
    let unsorted: Vec<&str> = ctx.sig.unsorted_vars().map(|v| ctx.sig.var_name(v)).collect();
    if !unsorted.is_empty() {
        let _ = writeln!(out, "unsorted: {}", unsorted.join(" "));
    }
    for f in &file.theory {
        let _ = writeln!(out, "{}", ctx.print_outer(f));
    }
    if let Some(q) = &file.query {
        let _ = writeln!(out, "query {}", ctx.print_outer(q));
    }
    out
}

// ---- model files ---------------------------------------------------------

#[derive(Default)]
struct RawModel {
    worlds: Option<(usize, Vec<String>)>,
    order: Option<(usize, Vec<String>)>,
    sims: Vec<(usize, String, String, String)>,
    components: Vec<(usize, String, RawComponent)>,
    evals: Vec<(usize, String, Vec<String>)>,
}

#[derive(Default)]
struct RawComponent {
    order: Option<(usize, Vec<String>)>,
    sims: Vec<(usize, String, String, String)>,
}

fn parse_order(rest: &str, line: usize) -> Result<Vec<String>, TextError> {
    let names: Vec<String> = rest
        .split('<')
        .map(|part| part.trim().to_string())
        .collect();
    if names.iter().any(|n| n.is_empty() || n.split_whitespace().count() != 1) {
        return err(line, "expected `order w1 < w2 < …`");
    }
    Ok(names)
}

fn parse_sim(rest: &str, line: usize) -> Result<(String, String, String), TextError> {
    let tokens: Vec<&str> = rest.split_whitespace().collect();
    match tokens.as_slice() {
        [a, b, g] => Ok((a.to_string(), b.to_string(), g.to_string())),
        _ => err(line, "expected `sim <world> <world> <grade>`"),
    }
}

fn collect_raw(text: &str) -> Result<RawModel, TextError> {
    let mut raw = RawModel::default();
    let mut block: Option<(usize, String, RawComponent)> = None;
    for (ln, body) in logical_lines(text) {
        if body == "}" {
            match block.take() {
                Some(done) => raw.components.push(done),
                None => return err(ln, "unmatched `}`"),
            }
            continue;
        }
        let (head, rest) = split_word(body);
        if let Some((_, _, comp)) = block.as_mut() {
            match head {
                "order" => {
                    if comp.order.is_some() {
                        return err(ln, "duplicate `order` line in component");
                    }
                    comp.order = Some((ln, parse_order(rest, ln)?));
                }
                "sim" => {
                    let (a, b, g) = parse_sim(rest, ln)?;
                    comp.sims.push((ln, a, b, g));
                }
                _ => return err(ln, format!("unexpected `{head}` inside a component block")),
            }
            continue;
        }
        match head.trim_end_matches(':') {
            "worlds" => {
                if raw.worlds.is_some() {
                    return err(ln, "duplicate `worlds` line");
                }
                let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
                if names.is_empty() {
                    return err(ln, "expected `worlds <names>`");
                }
                raw.worlds = Some((ln, names));
            }
            "order" => {
                if raw.order.is_some() {
                    return err(ln, "duplicate `order` line");
                }
                raw.order = Some((ln, parse_order(rest, ln)?));
            }
            "sim" => {
                let (a, b, g) = parse_sim(rest, ln)?;
                raw.sims.push((ln, a, b, g));
            }
            "component" => {
                let name = rest
                    .strip_suffix('{')
                    .map(str::trim)
                    .filter(|n| !n.is_empty() && n.split_whitespace().count() == 1)
                    .ok_or(TextError {
                        line: ln,
                        msg: "expected `component <sort> {`".into(),
                    })?;
                block = Some((ln, name.to_string(), RawComponent::default()));
            }
            "eval" => {
                let (name, worlds) = rest
                    .split_once(':')
                    .ok_or(TextError { line: ln, msg: "expected `eval <var>: <worlds>`".into() })?;
                raw.evals.push((
                    ln,
                    name.trim().to_string(),
                    worlds.split_whitespace().map(String::from).collect(),
                ));
            }
            other => return err(ln, format!("unknown directive `{other}`")),
        }
    }
    if let Some((ln, _, _)) = block {
        return err(ln, "component block is never closed");
    }
    Ok(raw)
}

fn resolve_pairs(
    names: &[String],
    sims: &[(usize, String, String, String)],
    scale: &GradeScale,
) -> Result<Vec<(usize, usize, Grade)>, TextError> {
    let index = |name: &str, line: usize| -> Result<usize, TextError> {
        names.iter().position(|n| n == name).ok_or(TextError {
            line,
            msg: format!("unknown world `{name}`"),
        })
    };
    let mut pairs = Vec::new();
    for (ln, a, b, g) in sims {
        let (i, j) = (index(a, *ln)?, index(b, *ln)?);
        let grade = parse_grade(g, scale, *ln)?;
        if i == j {
            if grade != scale.top() {
                return err(*ln, format!("`{a}` must be fully similar to itself"));
            }
            continue;
        }
        pairs.push((i, j, grade));
    }
    Ok(pairs)
}

fn check_distinct(names: &[String], line: usize) -> Result<(), TextError> {
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return err(line, format!("world `{n}` is listed twice"));
        }
    }
    Ok(())
}

/// Parses a model file against a theory's context.  The variant picks the
/// expected shape: a `worlds` list, an `order` chain, or one `component`
/// block per sort (product worlds are then the generated `(a,b)` tuples).
/// Unlisted similarities default to the bottom grade, the diagonal is fixed
/// at the top, and `eval` lines list each variable's worlds (missing
/// variables get the empty extension).  All similarity, shape and evaluation
/// laws are enforced.
pub fn parse_model(text: &str, ctx: &LogicCtx) -> Result<Model, TextError> {
    let raw = collect_raw(text)?;
    let scale = &ctx.scale;
    let reject = |part: &Option<(usize, Vec<String>)>, what: &str| -> Result<(), TextError> {
        match part {
            Some((ln, _)) => err(*ln, format!("{what} does not belong in this variant's models")),
            None => Ok(()),
        }
    };
    let space = match ctx.variant {
        Variant::Lae => {
            reject(&raw.order, "an `order` line")?;
            if let Some((ln, _, _)) = raw.components.first() {
                return err(*ln, "component blocks belong to product models only");
            }
            let (ln, names) =
                raw.worlds.ok_or(TextError { line: 0, msg: "missing `worlds` line".into() })?;
            check_distinct(&names, ln)?;
            let pairs = resolve_pairs(&names, &raw.sims, scale)?;
            let sp = SimilaritySpace::from_pairs(names, scale.clone(), &pairs)
                .map_err(|e| TextError { line: 0, msg: e.to_string() })?;
            Space::Plain(sp)
        }
        Variant::Laec => {
            reject(&raw.worlds, "a `worlds` line")?;
            if let Some((ln, _, _)) = raw.components.first() {
                return err(*ln, "component blocks belong to product models only");
            }
            let (ln, names) =
                raw.order.ok_or(TextError { line: 0, msg: "missing `order` line".into() })?;
            check_distinct(&names, ln)?;
            let pairs = resolve_pairs(&names, &raw.sims, scale)?;
            let ch = ChainSpace::from_pairs(names, scale.clone(), &pairs)
                .map_err(|e| TextError { line: 0, msg: e.to_string() })?;
            Space::Chain(ch)
        }
        Variant::Laepc => {
            reject(&raw.worlds, "a `worlds` line")?;
            reject(&raw.order, "a top-level `order` line")?;
            if let Some((ln, _, _, _)) = raw.sims.first() {
                return err(*ln, "product similarities are derived; put `sim` lines in component blocks");
            }
            let mut comps: Vec<Option<(usize, RawComponent)>> =
                ctx.sig.sort_ids().map(|_| None).collect();
            for (ln, name, comp) in raw.components {
                let sort = ctx.sig.sort_by_name(&name).ok_or(TextError {
                    line: ln,
                    msg: format!("unknown sort `{name}`"),
                })?;
                let slot = &mut comps[sort.0 as usize];
                if slot.is_some() {
                    return err(ln, format!("duplicate component block for sort `{name}`"));
                }
                *slot = Some((ln, comp));
            }
            let mut chains = Vec::new();
            for (sort, slot) in ctx.sig.sort_ids().zip(comps) {
                let Some((ln, comp)) = slot else {
                    return err(
                        0,
                        format!("missing component block for sort `{}`", ctx.sig.sort_name(sort)),
                    );
                };
                let (oln, names) = comp.order.ok_or(TextError {
                    line: ln,
                    msg: format!(
                        "component `{}` needs an `order` line",
                        ctx.sig.sort_name(sort)
                    ),
                })?;
                check_distinct(&names, oln)?;
                let pairs = resolve_pairs(&names, &comp.sims, scale)?;
                chains.push(
                    ChainSpace::from_pairs(names, scale.clone(), &pairs)
                        .map_err(|e| TextError { line: ln, msg: e.to_string() })?,
                );
            }
            let p = ProductSpace::new(chains)
                .map_err(|e| TextError { line: 0, msg: e.to_string() })?;
            Space::Product(p)
        }
    };

    let base = space.base();
    let n = base.n_worlds();
    let mut eval = Evaluation::empty(ctx.sig.n_vars(), n);
    let mut seen = vec![false; ctx.sig.n_vars()];
    for (ln, name, worlds) in &raw.evals {
        let v = ctx.sig.var_by_name(name).ok_or(TextError {
            line: *ln,
            msg: format!("unknown variable `{name}`"),
        })?;
        if std::mem::replace(&mut seen[v.0 as usize], true) {
            return err(*ln, format!("duplicate `eval` line for `{name}`"));
        }
        let mut set = WorldSet::empty(n);
        for w in worlds {
            let i = base.index_of(w).ok_or(TextError {
                line: *ln,
                msg: format!("unknown world `{w}`"),
            })?;
            set.insert(i);
        }
        eval.set_var(v, set);
    }
    Model::new(ctx.clone(), space, eval).map_err(|e| TextError { line: 0, msg: e.to_string() })
}

/// Whitespace-free tokens for world names, so generated names (which may
/// print with spaces) survive the trip through a model file.  Falls back to
/// positional `w0 w1 …` names if stripping spaces makes anything collide.
fn name_tokens(names: &[String]) -> Vec<String> {
    let stripped: Vec<String> = names
        .iter()
        .map(|n| n.chars().filter(|c| !c.is_whitespace() && !"#{}".contains(*c)).collect())
        .collect();
    let clean = stripped.iter().all(|n| !n.is_empty())
        && (1..stripped.len()).all(|i| !stripped[..i].contains(&stripped[i]));
    if clean {
        stripped
    } else {
        (0..names.len()).map(|i| format!("w{i}")).collect()
    }
}

fn write_sims(out: &mut String, indent: &str, base: &SimilaritySpace, tokens: &[String]) {
    let scale = base.scale();
    for u in 0..base.n_worlds() {
        for v in u + 1..base.n_worlds() {
            let g = base.sim(u, v);
            if g != scale.bot() {
                let _ = writeln!(
                    out,
                    "{indent}sim {} {} {}",
                    tokens[u],
                    tokens[v],
                    scale.level_text(g)
                );
            }
        }
    }
}

/// Renders a model in the form [`parse_model`] reads back.
pub fn write_model(model: &Model) -> String {
    let ctx = model.ctx();
    let mut out = String::new();
    let world_tokens: Vec<String>;
    match model.space() {
        Space::Plain(sp) => {
            world_tokens = name_tokens(sp.names());
            let _ = writeln!(out, "worlds {}", world_tokens.join(" "));
            write_sims(&mut out, "", sp, &world_tokens);
        }
        Space::Chain(ch) => {
            world_tokens = name_tokens(ch.base().names());
            let _ = writeln!(out, "order {}", world_tokens.join(" < "));
            write_sims(&mut out, "", ch.base(), &world_tokens);
        }
        Space::Product(p) => {
            let comp_tokens: Vec<Vec<String>> =
                p.components().iter().map(|c| name_tokens(c.base().names())).collect();
            for (sort, (comp, tokens)) in
                ctx.sig.sort_ids().zip(p.components().iter().zip(&comp_tokens))
            {
                let _ = writeln!(out, "component {} {{", ctx.sig.sort_name(sort));
                let _ = writeln!(out, "  order {}", tokens.join(" < "));
                write_sims(&mut out, "  ", comp.base(), tokens);
                let _ = writeln!(out, "}}");
            }
            world_tokens = (0..p.n_worlds())
                .map(|w| {
                    let parts: Vec<&str> = p
                        .tuple_of(w)
                        .iter()
                        .zip(&comp_tokens)
                        .map(|(&j, tokens)| tokens[j].as_str())
                        .collect();
                    format!("({})", parts.join(","))
                })
                .collect();
        }
    }
    for v in ctx.sig.vars() {
        let set = model.eval().var(v);
        if set.is_empty() {
            continue;
        }
        let worlds: Vec<&str> = set.iter().map(|w| world_tokens[w].as_str()).collect();
        let _ = writeln!(out, "eval {}: {}", ctx.sig.var_name(v), worlds.join(" "));
    }
    out
}

// ---- proof scripts -------------------------------------------------------

/// Parses a proof script: numbered lines `n. <formula> ; <justification>`
/// with the numbers running 1, 2, … in order, and justifications of the
/// forms `axiom A9`, `hyp 2`, `mp 3 5`.
pub fn parse_proof(text: &str, ctx: &LogicCtx) -> Result<ProofScript, TextError> {
    let mut script = ProofScript::default();
    for (ln, body) in logical_lines(text) {
        let (front, just_text) = body
            .rsplit_once(';')
            .ok_or(TextError { line: ln, msg: "expected `<n>. <formula> ; <justification>`".into() })?;
        let (number, formula_text) = front
            .split_once('.')
            .ok_or(TextError { line: ln, msg: "expected a line number like `3.`".into() })?;
        let expect = script.lines.len() + 1;
        match number.trim().parse::<usize>() {
            Ok(n) if n == expect => {}
            Ok(n) => return err(ln, format!("line is numbered {n} but {expect} comes next")),
            Err(_) => return err(ln, format!("bad line number `{}`", number.trim())),
        }
        let formula = parse_outer(formula_text.trim(), ctx)
            .map_err(|e| TextError { line: ln, msg: e.to_string() })?;
        let tokens: Vec<&str> = just_text.split_whitespace().collect();
        let parse_ref = |t: &str| -> Result<usize, TextError> {
            t.parse().map_err(|_| TextError { line: ln, msg: format!("bad line reference `{t}`") })
        };
        let just = match tokens.as_slice() {
            ["axiom", id] => Justification::Axiom(
                AxiomId::from_str(id).map_err(|e| TextError { line: ln, msg: e.to_string() })?,
            ),
            ["hyp", k] => Justification::Hyp(parse_ref(k)?),
            ["mp", i, j] => Justification::Mp(parse_ref(i)?, parse_ref(j)?),
            _ => return err(ln, "justification must be `axiom <id>`, `hyp <n>` or `mp <n> <m>`"),
        };
        script.lines.push(ProofLine::new(formula, just));
    }
    Ok(script)
}

/// Renders a proof script in the form [`parse_proof`] reads back.
pub fn write_proof(script: &ProofScript, ctx: &LogicCtx) -> String {
    let mut out = String::new();
    for (i, line) in script.lines.iter().enumerate() {
        let _ = write!(out, "{}. {} ; {}", i + 1, ctx.print_outer(&line.formula), line.just);
        if let Some(note) = &line.note {
            let _ = write!(out, "  # {note}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::random_model;
    use crate::proofs::check_proof;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const CAR: &str = "\
# a small two-sort catalogue
logic laepc
scale godel 0 1/2 1
sort price: p20k
sort fuel: c6l
unsorted: p110

p110 =>{1/2} dge p20k
!(dge p20k =>{1} _|_)
query p110 =>{1/2} (dge p20k & dge c6l)
";

    #[test]
    fn theory_files_round_trip() {
        let file = parse_theory(CAR).unwrap();
        assert_eq!(file.ctx.variant, Variant::Laepc);
        assert_eq!(file.theory.len(), 2);
        assert!(file.query.is_some());
        let again = parse_theory(&write_theory(&file)).unwrap();
        assert_eq!(again.theory, file.theory);
        assert_eq!(again.query, file.query);
        assert_eq!(again.ctx.sig, file.ctx.sig);
    }

    #[test]
    fn header_errors_carry_their_line() {
        let missing = parse_theory("logic lae\nsort w: p\np =>{1} p\n").unwrap_err();
        assert_eq!(missing.line, 3);
        assert!(missing.msg.contains("scale"), "{missing}");
        let late = parse_theory(
            "logic lae\nscale godel 0 1\nsort w: p\np =>{1} p\nsort s: q\n",
        )
        .unwrap_err();
        assert_eq!(late.line, 5);
        let dup = parse_theory(&format!("{CAR}query p110 =>{{0}} _|_\n")).unwrap_err();
        assert!(dup.msg.contains("at most one"), "{dup}");
        let bad = parse_theory("logic lae\nscale godel 0 1\nsort w: p\np =>{1/2} p\n").unwrap_err();
        assert_eq!(bad.line, 4);
        assert!(bad.msg.contains("1/2"), "{bad}");
    }

    #[test]
    fn scale_specs_round_trip() {
        for scale in [
            GradeScale::godel_three(),
            GradeScale::lukasiewicz_three(),
            GradeScale::from_table(
                vec![Level::new(0, 1), Level::new(1, 1)],
                vec![0, 0, 0, 1],
            )
            .unwrap(),
        ] {
            let spec = write_scale_spec(&scale);
            let back = parse_scale_spec(&spec).unwrap();
            assert_eq!(back.kind(), scale.kind());
            assert_eq!(back.len(), scale.len());
            for a in scale.grades() {
                for b in scale.grades() {
                    assert_eq!(back.combine(a, b), scale.combine(a, b));
                }
            }
        }
        assert!(parse_scale_spec("godel 0 2 1").is_err());
        assert!(parse_scale_spec("table 0 1 0 0 0").is_err());
        assert!(parse_scale_spec("fancy 0 1").is_err());
    }

    fn ctx_for(variant: Variant) -> LogicCtx {
        let text = match variant {
            Variant::Lae => "logic lae\nscale godel 0 1/2 1\nsort w: a b\n",
            Variant::Laec => "logic laec\nscale godel 0 1/2 1\nsort w: a b\n",
            Variant::Laepc => {
                "logic laepc\nscale godel 0 1/2 1\nsort s: a\nsort t: b\nunsorted: u\n"
            }
        };
        parse_theory(text).unwrap().ctx
    }

    #[test]
    fn hand_written_models_parse_in_every_shape() {
        let plain = "worlds u v w\nsim u v 1/2\neval a: u v\neval b: v w\n";
        let m = parse_model(plain, &ctx_for(Variant::Lae)).unwrap();
        assert_eq!(m.n_worlds(), 3);

        let chain = "order lo < mid < hi\nsim lo mid 1/2\nsim mid hi 1/2\nsim lo hi 1/2\n\
                     eval a: lo mid\neval b: mid hi\n";
        let m = parse_model(chain, &ctx_for(Variant::Laec)).unwrap();
        assert_eq!(m.n_worlds(), 3);

        let product = "component s {\n  order s0 < s1\n  sim s0 s1 1/2\n}\n\
                       component t {\n  order t0 < t1\n}\n\
                       eval a: (s1,t0) (s1,t1)\neval b: (s0,t1) (s1,t1)\neval u: (s0,t0)\n";
        let m = parse_model(product, &ctx_for(Variant::Laepc)).unwrap();
        assert_eq!(m.n_worlds(), 4);
    }

    #[test]
    fn model_errors_carry_their_line() {
        let ctx = ctx_for(Variant::Lae);
        let bad_world = parse_model("worlds u v\nsim u x 1/2\n", &ctx).unwrap_err();
        assert_eq!(bad_world.line, 2);
        assert!(bad_world.msg.contains("x"), "{bad_world}");
        let bad_grade = parse_model("worlds u v\nsim u v 1/3\n", &ctx).unwrap_err();
        assert_eq!(bad_grade.line, 2);
        let dup = parse_model("worlds u v\neval a: u\neval a: v\n", &ctx).unwrap_err();
        assert_eq!(dup.line, 3);
        let wrong_shape = parse_model("order u < v\n", &ctx).unwrap_err();
        assert_eq!(wrong_shape.line, 1);
        let top_sim = parse_model("worlds u v\nsim u v 1\n", &ctx).unwrap_err();
        assert!(top_sim.msg.contains("distinct"), "{top_sim}");
    }

    #[test]
    fn random_models_round_trip_through_text() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for variant in [Variant::Lae, Variant::Laec, Variant::Laepc] {
            let ctx = ctx_for(variant);
            for _ in 0..25 {
                let model = random_model(&ctx, &mut rng, 3);
                let text = write_model(&model);
                let back = parse_model(&text, &ctx).unwrap_or_else(|e| {
                    panic!("reparse failed for {variant:?}: {e}\n{text}")
                });
                assert_eq!(back.n_worlds(), model.n_worlds());
                let base = model.space().base();
                let back_base = back.space().base();
                for u in 0..model.n_worlds() {
                    for v in 0..model.n_worlds() {
                        assert_eq!(base.sim(u, v), back_base.sim(u, v));
                    }
                }
                for v in ctx.sig.vars() {
                    assert_eq!(model.eval().var(v), back.eval().var(v));
                }
            }
        }
    }

    #[test]
    fn proof_scripts_round_trip_and_check() {
        let theory_text = "logic lae\nscale godel 0 1/2 1\nsort w: p q r\n\
                           p =>{1/2} q\nq =>{1} r\n";
        let file = parse_theory(theory_text).unwrap();
        let script_text = "\
# transitivity, spelled out
1. p =>{1/2} q ; hyp 1
2. q =>{1} r ; hyp 2
3. (p =>{1/2} q) & (q =>{1} r) -> (p =>{1/2} r) ; axiom A9
4. (p =>{1/2} q) -> ((q =>{1} r) -> ((p =>{1/2} q) & (q =>{1} r))) ; axiom A11
5. (q =>{1} r) -> ((p =>{1/2} q) & (q =>{1} r)) ; mp 1 4
6. (p =>{1/2} q) & (q =>{1} r) ; mp 2 5
7. p =>{1/2} r ; mp 6 3
";
        let script = parse_proof(script_text, &file.ctx).unwrap();
        let conclusion = check_proof(&file.theory, &script, &file.ctx).unwrap();
        assert_eq!(file.ctx.print_outer(&conclusion), "p =>{1/2} r");
        let again = parse_proof(&write_proof(&script, &file.ctx), &file.ctx).unwrap();
        assert_eq!(again, script);

        let bad_number = parse_proof("2. p =>{1} p ; axiom A1\n", &file.ctx).unwrap_err();
        assert_eq!(bad_number.line, 1);
        let bad_just = parse_proof("1. p =>{1} p ; because\n", &file.ctx).unwrap_err();
        assert!(bad_just.msg.contains("justification"), "{bad_just}");
        let bad_axiom = parse_proof("1. p =>{1} p ; axiom A99\n", &file.ctx).unwrap_err();
        assert!(bad_axiom.msg.contains("A99"), "{bad_axiom}");
    }
}
