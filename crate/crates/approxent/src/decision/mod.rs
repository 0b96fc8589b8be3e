//! Bounded decision procedure for graded entailment.
//!
//! A theory entails a formula when every model of the theory satisfies the
//! formula. Thanks to separation, every model's worlds carry pairwise
//! distinct maximal elementary conjunctions, so models over a fixed
//! signature and scale form a *finite* family up to renaming — the canonical
//! family — and entailment is decided by sweeping it.
//!
//! [`decide_entailment`] sweeps candidates in a deterministic rank order,
//! under caps ([`SearchBounds`]) that keep the sweep affordable:
//!
//! - a found countermodel yields [`Verdict::Countermodel`] with the
//!   least-ranked witness (re-verified through the public model API, not
//!   just the search's own fast evaluator);
//! - a sweep that provably covered the whole family yields
//!   [`Verdict::Entailed`];
//! - a sweep cut short by a cap yields [`Verdict::Unknown`] — never a
//!   guess.
//!
//! [`for_each_canonical_model`] exposes the same family as real models, and
//! [`canonical_space`] renames an arbitrary model onto its canonical twin.

mod enumerate;

use crate::grades::Grade;
use crate::semantics::{Evaluation, Model};
use crate::spaces::{ChainSpace, ProductSpace, SimilaritySpace, Space, WorldSet};
use crate::syntax::{
    mec_from_pattern, outer_skeleton, GradedImplication, LogicCtx, OuterFormula, Prop,
    SyntaxError, VarId,
};
use enumerate::{block_arrangements, candidate_model, Arrangement, Candidate, Plan};
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, Ordering};

/// Caps on the canonical sweep. `Default` gives bounds that cover small
/// signatures completely and degrade to honest `Unknown` answers beyond.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBounds {
    /// Cap on worlds per similarity block (the whole space in the plain and
    /// chain variants, each component in the product variant). `None` uses 8
    /// for plain blocks and 4 for chain blocks.
    pub max_worlds: Option<usize>,
    /// Cap on world structures (ordered m.e.c. arrangements, multiplied
    /// across blocks) examined in one sweep.
    pub max_world_subsets: usize,
    /// Cap on fill-ins (similarity matrices × unsorted extensions) examined
    /// per structure.
    pub max_sim_assignments: usize,
    /// Lift the numeric caps and refuse upfront when the family is too big
    /// to sweep, instead of truncating silently.
    pub exhaustive: bool,
    /// Worker threads for the sweep; results do not depend on this.
    pub workers: usize,
}

impl Default for SearchBounds {
    fn default() -> SearchBounds {
        SearchBounds {
            max_worlds: None,
            max_world_subsets: 20_000,
            max_sim_assignments: 20_000,
            exhaustive: false,
            workers: 1,
        }
    }
}

impl SearchBounds {
    /// Bounds that sweep the whole canonical family or refuse; see
    /// [`SearchBounds::exhaustive`].
    pub fn exhaustive() -> SearchBounds {
        SearchBounds { exhaustive: true, ..SearchBounds::default() }
    }
}

/// Outcome of a bounded entailment check.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    /// The whole canonical family was covered and no countermodel exists.
    Entailed,
    /// A model of the theory that refutes the query — the least-ranked one
    /// in the canonical order.
    Countermodel(Box<Model>),
    /// The sweep was refused or cut short before covering the family.
    Unknown { reason: String },
}

impl Verdict {
    pub fn is_entailed(&self) -> bool {
        matches!(self, Verdict::Entailed)
    }

    pub fn countermodel(&self) -> Option<&Model> {
        match self {
            Verdict::Countermodel(m) => Some(m),
            _ => None,
        }
    }
}

/// How much of the canonical family a sweep visited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coverage {
    /// True when every canonical model was visited.
    pub complete: bool,
    /// Why coverage is incomplete, when it is.
    pub reason: Option<String>,
}

/// Decides whether `theory` entails `query` by sweeping the canonical
/// family under `bounds`. Errors only on malformed input (a formula that is
/// not well-formed for the context, or more than 32 distinct graded
/// implications).
pub fn decide_entailment(
    ctx: &LogicCtx,
    theory: &[OuterFormula],
    query: &OuterFormula,
    bounds: &SearchBounds,
) -> Result<Verdict, SyntaxError> {
    for f in theory {
        f.validate(ctx)?;
    }
    query.validate(ctx)?;
    let plan = match enumerate::plan(ctx, bounds) {
        Ok(p) => p,
        Err(reason) => return Ok(Verdict::Unknown { reason }),
    };
    let mut atoms: Vec<GradedImplication> = Vec::new();
    let theory_props: Vec<Prop> = theory.iter().map(|f| outer_skeleton(f, &mut atoms)).collect();
    let query_prop = outer_skeleton(query, &mut atoms);
    if atoms.len() > 32 {
        return Err(SyntaxError::ResourceLimit {
            what: "distinct graded implications per entailment query",
            limit: 32,
            unit: "implications",
        });
    }
    let (lists, lists_truncated) = arrangement_lists(&plan);
    let workers = bounds.workers.clamp(1, 64) as u64;
    let best = AtomicU64::new(u64::MAX);
    let results: Vec<(Option<(u64, Model)>, bool)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let plan = &plan;
                let lists = &lists;
                let atoms = &atoms;
                let theory_props = &theory_props;
                let query_prop = &query_prop;
                let best = &best;
                s.spawn(move || {
                    sweep_worker(
                        ctx,
                        plan,
                        lists,
                        atoms,
                        theory_props,
                        query_prop,
                        theory,
                        query,
                        best,
                        w,
                        workers,
                    )
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
    });
    let truncated =
        lists_truncated || plan.world_capped || results.iter().any(|(_, trunc)| *trunc);
    let found = results.into_iter().filter_map(|(f, _)| f).min_by_key(|(rank, _)| *rank);
    Ok(match found {
        Some((_, model)) => Verdict::Countermodel(Box::new(model)),
        None if !truncated => Verdict::Entailed,
        None => Verdict::Unknown {
            reason: "search bounds were exceeded before the canonical family was covered".into(),
        },
    })
}

fn arrangement_lists(plan: &Plan) -> (Vec<Vec<Arrangement>>, bool) {
    let mut lists = Vec::with_capacity(plan.blocks.len());
    let mut truncated = false;
    for b in &plan.blocks {
        let (l, t) = block_arrangements(b, plan.max_structures);
        lists.push(l);
        truncated |= t;
    }
    (lists, truncated)
}

#[allow(clippy::too_many_arguments)]
fn sweep_worker(
    ctx: &LogicCtx,
    plan: &Plan,
    lists: &[Vec<Arrangement>],
    atoms: &[GradedImplication],
    theory_props: &[Prop],
    query_prop: &Prop,
    theory: &[OuterFormula],
    query: &OuterFormula,
    best: &AtomicU64,
    offset: u64,
    stride: u64,
) -> (Option<(u64, Model)>, bool) {
    let mut found: Option<(u64, Model)> = None;
    let mut visit = |cand: &Candidate| -> ControlFlow<()> {
        // Another worker already holds a countermodel ranked below
        // everything this worker still has to offer.
        if cand.structure_rank > best.load(Ordering::Relaxed) {
            return ControlFlow::Break(());
        }
        let mut truth: u32 = 0;
        for (i, gi) in atoms.iter().enumerate() {
            let lhs = cand.basic_mask(&gi.lhs);
            let rhs = cand.basic_mask(&gi.rhs);
            if cand.gimp_holds(lhs, gi.grade, rhs) {
                truth |= 1 << i;
            }
        }
        let refutes = theory_props.iter().all(|p| p.eval(truth)) && !query_prop.eval(truth);
        if !refutes {
            return ControlFlow::Continue(());
        }
        // Dual route: the countermodel must hold up under the ordinary
        // model semantics, not just the sweep's mask evaluator.
        let model = candidate_model(ctx, cand);
        let holds_theory = model.satisfies_all(theory).expect("validated theory evaluates");
        let holds_query = model.satisfies(query).expect("validated query evaluates");
        assert!(
            holds_theory && !holds_query,
            "mask evaluator and model semantics disagree on candidate (structure {}, fill {})",
            cand.structure_rank,
            cand.fill_rank
        );
        best.fetch_min(cand.structure_rank, Ordering::Relaxed);
        found = Some((cand.structure_rank, model));
        ControlFlow::Break(())
    };
    let truncated = enumerate::enumerate(ctx, plan, lists, offset, stride, &mut visit);
    (found, truncated)
}

/// Visits every canonical model under `bounds` in rank order. The returned
/// [`Coverage`] says whether that was the whole family.
pub fn for_each_canonical_model(
    ctx: &LogicCtx,
    bounds: &SearchBounds,
    f: &mut dyn FnMut(&Model) -> ControlFlow<()>,
) -> Coverage {
    let plan = match enumerate::plan(ctx, bounds) {
        Ok(p) => p,
        Err(reason) => return Coverage { complete: false, reason: Some(reason) },
    };
    let (lists, lists_truncated) = arrangement_lists(&plan);
    let mut stopped = false;
    let mut visit = |cand: &Candidate| -> ControlFlow<()> {
        let model = candidate_model(ctx, cand);
        match f(&model) {
            ControlFlow::Continue(()) => ControlFlow::Continue(()),
            ControlFlow::Break(()) => {
                stopped = true;
                ControlFlow::Break(())
            }
        }
    };
    let enum_truncated = enumerate::enumerate(ctx, &plan, &lists, 0, 1, &mut visit);
    let truncated = lists_truncated || plan.world_capped || enum_truncated;
    Coverage {
        complete: !truncated && !stopped,
        reason: if stopped {
            Some("stopped by the caller".into())
        } else if truncated {
            Some("search bounds were exceeded before the canonical family was covered".into())
        } else {
            None
        },
    }
}

/// A model renamed onto its canonical twin, with the world translation.
#[derive(Debug, Clone, PartialEq)]
pub struct Canonicalized {
    pub model: Model,
    /// `world_map[w]` is the canonical index of the original world `w`.
    pub world_map: Vec<usize>,
}

/// Renames an arbitrary model onto the member of the canonical family it is
/// isomorphic to: worlds become their maximal elementary conjunctions, plain
/// worlds are sorted into canonical pattern order, and chain orders are kept
/// (they carry meaning).
pub fn canonical_space(model: &Model) -> Canonicalized {
    let ctx = model.ctx();
    match model.space() {
        Space::Plain(sp) => {
            let vars: Vec<VarId> = ctx.sig.vars().collect();
            let n = sp.n_worlds();
            let patterns: Vec<u64> = (0..n).map(|w| pattern_of(model, &vars, w)).collect();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&w| patterns[w]);
            let mut world_map = vec![0usize; n];
            for (c, &orig) in order.iter().enumerate() {
                world_map[orig] = c;
            }
            let names: Vec<String> = order
                .iter()
                .map(|&w| ctx.print_basic(&mec_from_pattern(&vars, patterns[w])))
                .collect();
            let mut sim: Vec<Grade> = Vec::with_capacity(n * n);
            for &u in &order {
                for &v in &order {
                    sim.push(sp.sim(u, v));
                }
            }
            let space = Space::Plain(
                SimilaritySpace::from_matrix(names, ctx.scale.clone(), sim)
                    .expect("renaming preserves the similarity laws"),
            );
            let eval = remap_eval(model, &world_map, n);
            Canonicalized {
                model: Model::new(ctx.clone(), space, eval)
                    .expect("renaming preserves the evaluation laws"),
                world_map,
            }
        }
        Space::Chain(chain) => {
            let vars: Vec<VarId> = ctx.sig.vars().collect();
            let n = chain.n_worlds();
            let names: Vec<String> = (0..n)
                .map(|w| ctx.print_basic(&mec_from_pattern(&vars, pattern_of(model, &vars, w))))
                .collect();
            let space = Space::Chain(
                ChainSpace::from_matrix(names, ctx.scale.clone(), matrix_of(chain.base()))
                    .expect("renaming preserves the chain laws"),
            );
            let world_map: Vec<usize> = (0..n).collect();
            let eval = model.eval().clone();
            Canonicalized {
                model: Model::new(ctx.clone(), space, eval)
                    .expect("renaming preserves the evaluation laws"),
                world_map,
            }
        }
        Space::Product(p) => {
            let n = p.n_worlds();
            let comps: Vec<ChainSpace> = ctx
                .sig
                .sort_ids()
                .enumerate()
                .map(|(b, sort)| {
                    let comp = &p.components()[b];
                    let vars = ctx.sig.vars_of_sort(sort).to_vec();
                    let names: Vec<String> = (0..comp.n_worlds())
                        .map(|j| {
                            let pattern = component_pattern(model, p, b, &vars, j);
                            ctx.print_basic(&mec_from_pattern(&vars, pattern))
                        })
                        .collect();
                    ChainSpace::from_matrix(names, ctx.scale.clone(), matrix_of(comp.base()))
                        .expect("renaming preserves the chain laws")
                })
                .collect();
            let space = Space::Product(
                ProductSpace::new(comps).expect("renaming preserves the product shape"),
            );
            let world_map: Vec<usize> = (0..n).collect();
            let eval = model.eval().clone();
            Canonicalized {
                model: Model::new(ctx.clone(), space, eval)
                    .expect("renaming preserves the evaluation laws"),
                world_map,
            }
        }
    }
}

/// Sign pattern of world `w` over `vars` (set bit = negative literal).
fn pattern_of(model: &Model, vars: &[VarId], w: usize) -> u64 {
    let k = vars.len();
    vars.iter()
        .enumerate()
        .fold(0u64, |acc, (j, v)| {
            if model.eval().var(*v).contains(w) {
                acc
            } else {
                acc | (1 << (k - 1 - j))
            }
        })
}

/// Sign pattern of component world `j` of block `b` over that sort's
/// variables, read off any product world lying over it (the cylinder law
/// makes them all agree).
fn component_pattern(model: &Model, p: &ProductSpace, b: usize, vars: &[VarId], j: usize) -> u64 {
    let witness = (0..p.n_worlds())
        .find(|&w| p.tuple_of(w)[b] == j)
        .expect("every component world underlies some product world");
    pattern_of(model, vars, witness)
}

fn matrix_of(sp: &SimilaritySpace) -> Vec<Grade> {
    let n = sp.n_worlds();
    let mut m = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            m.push(sp.sim(u, v));
        }
    }
    m
}

fn remap_eval(model: &Model, world_map: &[usize], n: usize) -> Evaluation {
    let ctx = model.ctx();
    let mut eval = Evaluation::empty(ctx.sig.n_vars(), n);
    for v in ctx.sig.vars() {
        let set = model.eval().var(v);
        eval.set_var(v, WorldSet::from_indices(n, set.iter().map(|w| world_map[w])));
    }
    eval
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::grades::GradeScale;
    use crate::reference;
    use crate::syntax::{parse_outer, Signature, Variant};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn lae2() -> LogicCtx {
        LogicCtx::new(
            Variant::Lae,
            Signature::single_sort(&["p", "q"]).unwrap(),
            GradeScale::godel_three(),
        )
        .unwrap()
    }

    fn laec2() -> LogicCtx {
        LogicCtx::new(
            Variant::Laec,
            Signature::single_sort(&["p", "q"]).unwrap(),
            GradeScale::godel_three(),
        )
        .unwrap()
    }

    fn laepc11() -> LogicCtx {
        LogicCtx::new(
            Variant::Laepc,
            Signature::new(&[("s", vec!["b"]), ("t", vec!["g"])], &[]).unwrap(),
            GradeScale::godel_three(),
        )
        .unwrap()
    }

    fn outer(ctx: &LogicCtx, s: &str) -> OuterFormula {
        parse_outer(s, ctx).unwrap()
    }

    fn reference_countermodel_exists(
        ctx: &LogicCtx,
        theory: &[OuterFormula],
        query: &OuterFormula,
        max_worlds: usize,
    ) -> bool {
        let mut found = false;
        let _ = reference::for_each_model(ctx, max_worlds, &mut |m| {
            if m.satisfies_all(theory).unwrap() && !m.satisfies(query).unwrap() {
                found = true;
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        found
    }

    #[test]
    fn entailment_micro_verdicts() {
        let ctx = lae2();
        let bounds = SearchBounds::exhaustive();
        let entailed = [
            (vec![], "p =>{1/2} p"),
            (vec![], "p =>{0} T"),
            (vec!["p =>{1/2} q"], "p & q =>{1/2} q"),
            (vec!["p =>{1} _|_"], "p =>{1} q"),
            (vec!["p =>{1} q"], "p =>{1/2} q"),
            (vec!["!(p =>{1/2} q)"], "!(p =>{1} q)"),
        ];
        for (th, q) in entailed {
            let theory: Vec<OuterFormula> = th.iter().map(|s| outer(&ctx, s)).collect();
            let v = decide_entailment(&ctx, &theory, &outer(&ctx, q), &bounds).unwrap();
            assert_eq!(v, Verdict::Entailed, "{th:?} should entail {q}");
        }
        let refuted = [
            (vec![], "T =>{1} p"),
            (vec![], "q =>{1/2} p"),
            (vec!["p =>{1/2} q"], "p =>{1} q"),
        ];
        for (th, q) in refuted {
            let theory: Vec<OuterFormula> = th.iter().map(|s| outer(&ctx, s)).collect();
            let query = outer(&ctx, q);
            let v = decide_entailment(&ctx, &theory, &query, &bounds).unwrap();
            let m = v.countermodel().unwrap_or_else(|| panic!("{th:?} vs {q}: got {v:?}"));
            assert!(m.satisfies_all(&theory).unwrap());
            assert!(!m.satisfies(&query).unwrap());
        }
    }

    #[test]
    fn least_ranked_countermodel_is_pinned() {
        let ctx = LogicCtx::new(
            Variant::Lae,
            Signature::single_sort(&["p"]).unwrap(),
            GradeScale::godel_three(),
        )
        .unwrap();
        let v = decide_entailment(
            &ctx,
            &[],
            &outer(&ctx, "p =>{1} _|_"),
            &SearchBounds::exhaustive(),
        )
        .unwrap();
        let m = v.countermodel().expect("p =>{1} _|_ is refutable");
        // The first canonical structure is the single world `p`.
        assert_eq!(m.n_worlds(), 1);
        assert_eq!(m.space().base().name(0), "p");
        assert!(m.eval().var(VarId(0)).contains(0));
    }

    #[test]
    fn agrees_with_reference_enumeration() {
        let cases: Vec<(LogicCtx, usize, Vec<(Vec<&str>, &str)>)> = vec![
            (
                lae2(),
                4,
                vec![
                    (vec![], "p =>{1/2} p"),
                    (vec![], "T =>{1} p"),
                    (vec![], "q =>{1/2} p"),
                    (vec!["p =>{1/2} q"], "p & q =>{1/2} q"),
                    (vec!["p =>{1/2} q", "q =>{1/2} p"], "p | q =>{1/2} (p & q)"),
                    (vec!["(p =>{1} q) | (q =>{1} p)"], "(p =>{1/2} q) | (q =>{1/2} p)"),
                    (vec!["p =>{1} q"], "p =>{1/2} q"),
                    (vec!["p =>{1/2} q"], "p =>{1} q"),
                ],
            ),
            (
                laec2(),
                4,
                vec![
                    (vec![], "dle p =>{1} dle p"),
                    (vec![], "p =>{1/2} dge p"),
                    (vec![], "dle p =>{1} p"),
                    (vec!["p =>{1} dle q"], "dle p =>{1} dle q"),
                    (vec![], "dge (p & q) =>{1} dge p"),
                    (vec!["dle p =>{1/2} q"], "p =>{1/2} q"),
                ],
            ),
            (
                laepc11(),
                2,
                vec![
                    (vec![], "b =>{1/2} dle b"),
                    (vec!["b =>{1} dle g"], "b =>{1/2} dle g"),
                    (vec![], "dle b =>{1} b"),
                    (vec![], "b & g =>{1} dge b & dle g"),
                ],
            ),
        ];
        let bounds = SearchBounds::exhaustive();
        for (ctx, ref_worlds, catalog) in cases {
            for (th, q) in catalog {
                let theory: Vec<OuterFormula> = th.iter().map(|s| outer(&ctx, s)).collect();
                let query = outer(&ctx, q);
                let verdict = decide_entailment(&ctx, &theory, &query, &bounds).unwrap();
                assert!(
                    !matches!(verdict, Verdict::Unknown { .. }),
                    "exhaustive sweep must settle {th:?} vs {q}"
                );
                let ref_counter = reference_countermodel_exists(&ctx, &theory, &query, ref_worlds);
                assert_eq!(
                    verdict.is_entailed(),
                    !ref_counter,
                    "canonical and reference disagree on {th:?} vs {q} ({})",
                    ctx.variant
                );
            }
        }
    }

    #[test]
    fn canonical_family_counts_are_pinned() {
        // 1 variable, 3 levels, plain: structures {p}, {!p}, {p, !p}; the
        // two-world structure takes 2 similarity values (0 or 1/2).
        let lae1 = LogicCtx::new(
            Variant::Lae,
            Signature::single_sort(&["p"]).unwrap(),
            GradeScale::godel_three(),
        )
        .unwrap();
        // Chain, same signature: the two-world subset comes in both orders.
        let laec1 = LogicCtx::new(
            Variant::Laec,
            Signature::single_sort(&["p"]).unwrap(),
            GradeScale::godel_three(),
        )
        .unwrap();
        for (ctx, expect) in [(lae1, 4usize), (laec1, 6usize)] {
            let mut n = 0usize;
            let cov = for_each_canonical_model(&ctx, &SearchBounds::exhaustive(), &mut |_| {
                n += 1;
                ControlFlow::Continue(())
            });
            assert!(cov.complete, "{:?}", cov.reason);
            assert_eq!(n, expect, "{}", ctx.variant);
        }
        // Two one-variable sorts: per sort 2 singleton arrangements and 2
        // orders of the two-world subset; a two-world component has 2
        // matrices. Totals per (size_s, size_t): (1,1) 4 structures × 1,
        // (1,2) and (2,1) 4 structures × 2 each, (2,2) 4 structures × 4.
        let mut n = 0usize;
        let cov = for_each_canonical_model(&laepc11(), &SearchBounds::exhaustive(), &mut |m| {
            assert!(m.n_worlds() <= 4);
            n += 1;
            ControlFlow::Continue(())
        });
        assert!(cov.complete, "{:?}", cov.reason);
        assert_eq!(n, 4 + 8 + 8 + 16);
    }

    #[test]
    fn bounded_sweep_reports_unknown_not_entailed() {
        let ctx = LogicCtx::new(
            Variant::Lae,
            Signature::single_sort(&["p", "q", "r"]).unwrap(),
            GradeScale::godel_three(),
        )
        .unwrap();
        let tight = SearchBounds { max_world_subsets: 3, ..SearchBounds::default() };
        let v = decide_entailment(&ctx, &[], &outer(&ctx, "p =>{1} p"), &tight).unwrap();
        assert!(matches!(v, Verdict::Unknown { .. }), "got {v:?}");
        let full = decide_entailment(&ctx, &[], &outer(&ctx, "p =>{1} p"), &SearchBounds::exhaustive())
            .unwrap();
        assert_eq!(full, Verdict::Entailed);
    }

    #[test]
    fn workers_do_not_change_the_answer() {
        let ctx = lae2();
        let catalog = [
            (vec![], "q =>{1/2} p"),
            (vec!["p =>{1/2} q"], "p =>{1} q"),
            (vec![], "p =>{1/2} p"),
        ];
        for (th, q) in catalog {
            let theory: Vec<OuterFormula> = th.iter().map(|s| outer(&ctx, s)).collect();
            let query = outer(&ctx, q);
            let one = decide_entailment(&ctx, &theory, &query, &SearchBounds::exhaustive())
                .unwrap();
            let many = decide_entailment(
                &ctx,
                &theory,
                &query,
                &SearchBounds { workers: 3, ..SearchBounds::exhaustive() },
            )
            .unwrap();
            assert_eq!(one, many, "{th:?} vs {q}");
        }
    }

    #[test]
    fn canonical_space_round_trips() {
        let ctxs = [
            LogicCtx::new(
                Variant::Lae,
                Signature::single_sort(&["p", "q"]).unwrap(),
                GradeScale::lukasiewicz_three(),
            )
            .unwrap(),
            laec2(),
            LogicCtx::new(
                Variant::Laepc,
                Signature::new(&[("s", vec!["b"]), ("t", vec!["g"])], &["u"]).unwrap(),
                GradeScale::godel_three(),
            )
            .unwrap(),
        ];
        for ctx in ctxs {
            let mut rng = ChaCha8Rng::seed_from_u64(23);
            for _ in 0..30 {
                let m = gen::random_model(&ctx, &mut rng, 3);
                let c = canonical_space(&m);
                assert_eq!(c.model.n_worlds(), m.n_worlds());
                let n = m.n_worlds();
                for u in 0..n {
                    for v in 0..n {
                        assert_eq!(
                            m.space().base().sim(u, v),
                            c.model.space().base().sim(c.world_map[u], c.world_map[v]),
                            "similarity must survive renaming"
                        );
                    }
                }
                for var in ctx.sig.vars() {
                    for w in 0..n {
                        assert_eq!(
                            m.eval().var(var).contains(w),
                            c.model.eval().var(var).contains(c.world_map[w]),
                            "extensions must survive renaming"
                        );
                    }
                }
                for _ in 0..10 {
                    let f = gen::random_outer(&ctx, &mut rng, 2);
                    assert_eq!(
                        m.satisfies(&f).unwrap(),
                        c.model.satisfies(&f).unwrap(),
                        "satisfaction must survive renaming"
                    );
                }
            }
        }
    }
}
