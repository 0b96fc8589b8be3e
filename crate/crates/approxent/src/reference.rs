//! Naive reference enumeration of models, straight from the definitions.
//!
//! This module exists to cross-check the decision procedure: it generates
//! every candidate space and evaluation over labeled worlds by brute force
//! (counting through all similarity matrices and all variable extensions) and
//! keeps exactly those that the public constructors validate. No canonical-
//! family reasoning, no pruning, no sharing — just generate and filter. Every
//! model with at most the requested number of worlds appears up to renaming
//! of worlds, which is all that countermodel existence cares about.
//!
//! The combinatorics are doubly exponential, so the enumerators enforce tiny
//! hard caps and are meant for micro-instances in tests and sweeps only.

use crate::grades::Grade;
use crate::semantics::{Evaluation, Model};
use crate::spaces::{ChainSpace, ProductSpace, SimilaritySpace, Space, WorldSet};
use crate::syntax::{LogicCtx, Variant};
use std::ops::ControlFlow;

/// Caps for the reference enumerators: worlds per block (the whole space for
/// the plain and chain variants, each component for products), and declared
/// variables.
pub const MAX_REFERENCE_WORLDS: usize = 4;
pub const MAX_REFERENCE_VARS: usize = 5;

/// Visits every valid model of the context's variant whose world blocks have
/// at most `max_worlds` worlds each. The callback may stop the walk early.
///
/// Worlds are labeled `w0, w1, …` (components `s<i>w<j>`); chain and
/// component orders are the index orders.
pub fn for_each_model(
    ctx: &LogicCtx,
    max_worlds: usize,
    f: &mut dyn FnMut(&Model) -> ControlFlow<()>,
) -> ControlFlow<()> {
    assert!(
        max_worlds >= 1 && max_worlds <= MAX_REFERENCE_WORLDS,
        "reference enumeration supports 1..={MAX_REFERENCE_WORLDS} worlds per block"
    );
    assert!(
        ctx.sig.n_vars() <= MAX_REFERENCE_VARS,
        "reference enumeration supports at most {MAX_REFERENCE_VARS} variables"
    );
    match ctx.variant {
        Variant::Lae => plain_models(ctx, max_worlds, false, f),
        Variant::Laec => plain_models(ctx, max_worlds, true, f),
        Variant::Laepc => product_models(ctx, max_worlds, f),
    }
}

/// Counts the models [`for_each_model`] visits.
pub fn count_models(ctx: &LogicCtx, max_worlds: usize) -> usize {
    let mut count = 0;
    let _ = for_each_model(ctx, max_worlds, &mut |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

/// Mixed-radix counter: visits every digit vector with `digits[i] <
/// radixes[i]`, first digit slowest.
fn for_each_assignment(
    radixes: &[usize],
    f: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let mut digits = vec![0usize; radixes.len()];
    loop {
        f(&digits)?;
        let mut i = radixes.len();
        loop {
            if i == 0 {
                return ControlFlow::Continue(());
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < radixes[i] {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// All candidate similarity matrices on `n` labeled worlds: diagonal top,
/// symmetric, off-diagonal grades below top, counted exhaustively. Validity
/// is left to the space constructors.
fn for_each_matrix(
    ctx: &LogicCtx,
    n: usize,
    f: &mut dyn FnMut(Vec<Grade>) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let below_top: Vec<Grade> = ctx.scale.grades().filter(|g| *g != ctx.scale.top()).collect();
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    for_each_assignment(&vec![below_top.len(); pairs.len()], &mut |digits| {
        let mut sim = vec![ctx.scale.top(); n * n];
        for (k, (i, j)) in pairs.iter().enumerate() {
            let g = below_top[digits[k]];
            sim[i * n + j] = g;
            sim[j * n + i] = g;
        }
        f(sim)
    })
}

/// All evaluations (arbitrary extensions per variable) on `n` worlds.
fn for_each_evaluation(
    ctx: &LogicCtx,
    n: usize,
    f: &mut dyn FnMut(Evaluation) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let n_vars = ctx.sig.n_vars();
    for_each_assignment(&vec![1usize << n; n_vars], &mut |digits| {
        let mut eval = Evaluation::empty(n_vars, n);
        for (j, mask) in digits.iter().enumerate() {
            eval.set_var(
                crate::syntax::VarId(j as u32),
                WorldSet::from_indices(n, (0..n).filter(|w| mask & (1 << w) != 0)),
            );
        }
        f(eval)
    })
}

fn plain_models(
    ctx: &LogicCtx,
    max_worlds: usize,
    chain: bool,
    f: &mut dyn FnMut(&Model) -> ControlFlow<()>,
) -> ControlFlow<()> {
    for n in 1..=max_worlds {
        let names: Vec<String> = (0..n).map(|w| format!("w{w}")).collect();
        for_each_matrix(ctx, n, &mut |sim| {
            let space = match SimilaritySpace::from_matrix(names.clone(), ctx.scale.clone(), sim)
            {
                Ok(space) => space,
                Err(_) => return ControlFlow::Continue(()),
            };
            let space = if chain {
                match ChainSpace::promote(space) {
                    Ok(c) => Space::Chain(c),
                    Err(_) => return ControlFlow::Continue(()),
                }
            } else {
                Space::Plain(space)
            };
            for_each_evaluation(ctx, n, &mut |eval| {
                match Model::new(ctx.clone(), space.clone(), eval) {
                    Ok(model) => f(&model),
                    Err(_) => ControlFlow::Continue(()),
                }
            })
        })?;
    }
    ControlFlow::Continue(())
}

fn product_models(
    ctx: &LogicCtx,
    max_worlds: usize,
    f: &mut dyn FnMut(&Model) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let n_sorts = ctx.sig.n_sorts();
    // Component sizes, then per-component matrices, then evaluations.
    for_each_assignment(&vec![max_worlds; n_sorts], &mut |size_digits| {
        let sizes: Vec<usize> = size_digits.iter().map(|d| d + 1).collect();
        for_each_component_spaces(ctx, &sizes, 0, &mut Vec::new(), f)
    })
}

fn for_each_component_spaces(
    ctx: &LogicCtx,
    sizes: &[usize],
    i: usize,
    acc: &mut Vec<ChainSpace>,
    f: &mut dyn FnMut(&Model) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if i == sizes.len() {
        let product = match ProductSpace::new(acc.clone()) {
            Ok(p) => p,
            Err(_) => return ControlFlow::Continue(()),
        };
        let n = product.n_worlds();
        let space = Space::Product(product);
        return for_each_evaluation(ctx, n, &mut |eval| {
            match Model::new(ctx.clone(), space.clone(), eval) {
                Ok(model) => f(&model),
                Err(_) => ControlFlow::Continue(()),
            }
        });
    }
    let n = sizes[i];
    let names: Vec<String> = (0..n).map(|w| format!("s{i}w{w}")).collect();
    for_each_matrix(ctx, n, &mut |sim| {
        let space = match ChainSpace::from_matrix(names.clone(), ctx.scale.clone(), sim) {
            Ok(space) => space,
            Err(_) => return ControlFlow::Continue(()),
        };
        acc.push(space);
        let out = for_each_component_spaces(ctx, sizes, i + 1, acc, f);
        acc.pop();
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grades::GradeScale;
    use crate::syntax::{parse_outer, Signature};

    fn ctx(variant: Variant, vars: &[&str]) -> LogicCtx {
        LogicCtx::new(
            variant,
            Signature::single_sort(vars).unwrap(),
            GradeScale::godel_three(),
        )
        .unwrap()
    }

    #[test]
    fn one_variable_counts_match_hand_enumeration() {
        // One world: two extensions (empty / the world), similarity trivial.
        // Two worlds: separation forces e(p) to be one of the two
        // singletons, and the single off-diagonal grade has two choices
        // (0 or 1/2), both valid. Total: 2 + 2*2 = 6.
        let lae = ctx(Variant::Lae, &["p"]);
        assert_eq!(count_models(&lae, 2), 6);
        // Chains on <= 2 worlds add no order constraint: same count.
        let laec = ctx(Variant::Laec, &["p"]);
        assert_eq!(count_models(&laec, 2), 6);
        // A one-sort product of one chain is the chain, as a product space.
        let laepc = LogicCtx::new(
            Variant::Laepc,
            Signature::new(&[("s", vec!["p"])], &[]).unwrap(),
            GradeScale::godel_three(),
        )
        .unwrap();
        assert_eq!(count_models(&laepc, 2), 6);
    }

    #[test]
    fn three_world_chains_prune_order_incompatible_matrices() {
        // On 3 worlds with grades {0, 1/2} off-diagonal there are 8
        // matrices. Under min-combination, transitivity kills exactly the
        // three with two 1/2-edges and one 0-edge; chains additionally kill
        // the matrix S(0,2)=1/2, S(0,1)=S(1,2)=0 and its one-edge siblings
        // where the far pair beats a near pair.
        let lae = ctx(Variant::Lae, &["p", "q"]);
        let mut plain_sims = std::collections::BTreeSet::new();
        let _ = for_each_model(&lae, 3, &mut |m| {
            if m.n_worlds() == 3 {
                let s = m.space().base();
                plain_sims.insert((s.sim(0, 1), s.sim(0, 2), s.sim(1, 2)));
            }
            ControlFlow::Continue(())
        });
        // Valid under transitivity: all-0, all-1/2, and the three with a
        // single 1/2 edge.
        assert_eq!(plain_sims.len(), 5);

        let laec = ctx(Variant::Laec, &["p", "q"]);
        let mut chain_sims = std::collections::BTreeSet::new();
        let _ = for_each_model(&laec, 3, &mut |m| {
            if m.n_worlds() == 3 {
                let s = m.space().base();
                chain_sims.insert((s.sim(0, 1), s.sim(0, 2), s.sim(1, 2)));
            }
            ControlFlow::Continue(())
        });
        // Chain compatibility additionally requires S(0,2) <= S(0,1) and
        // S(0,2) <= S(1,2): kills the single-edge matrix where the 1/2
        // sits on the far pair. Remaining: all-0, all-1/2, 1/2 on (0,1)
        // only, 1/2 on (1,2) only.
        assert_eq!(chain_sims.len(), 4);
        let g = Grade(1);
        assert!(!chain_sims.contains(&(Grade(0), g, Grade(0))));
    }

    #[test]
    fn early_exit_stops_the_walk() {
        let lae = ctx(Variant::Lae, &["p"]);
        let mut seen = 0;
        let out = for_each_model(&lae, 2, &mut |_| {
            seen += 1;
            if seen == 3 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        assert_eq!(out, ControlFlow::Break(()));
        assert_eq!(seen, 3);
    }

    #[test]
    fn streams_support_countermodel_searches() {
        let lae = ctx(Variant::Lae, &["p", "q"]);
        // `p =>{1} q` has countermodels; `p =>{1} p` does not.
        let theory = vec![parse_outer("p =>{1} q", &lae).unwrap()];
        let valid = parse_outer("p =>{1} p", &lae).unwrap();
        let mut counterexample = false;
        let mut found_theory_model = false;
        let _ = for_each_model(&lae, 2, &mut |m| {
            if m.satisfies_all(&theory).unwrap() {
                found_theory_model = true;
                if !m.satisfies(&valid).unwrap() {
                    counterexample = true;
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        });
        assert!(found_theory_model);
        assert!(!counterexample);
    }

    #[test]
    fn product_streams_respect_the_evaluation_laws() {
        let ctx = LogicCtx::new(
            Variant::Laepc,
            Signature::new(&[("a", vec!["p"]), ("b", vec!["q"])], &["u"]).unwrap(),
            GradeScale::godel_three(),
        )
        .unwrap();
        let mut total = 0;
        let _ = for_each_model(&ctx, 2, &mut |m| {
            total += 1;
            assert!(m.violations().is_empty());
            ControlFlow::Continue(())
        });
        // Hand count. Sizes (1,1): 2*2*2 evaluations, one matrix: 8.
        // Sizes (2,1) and (1,2): 2 matrices; the size-2 sort's variable must
        // take one of the 2 separating cylinders, the size-1 sort's variable
        // one of its 2 cylinders, the unsorted variable any of 4 subsets:
        // 2 * 2*2*4 = 32 each. Sizes (2,2): 4 matrix combinations, each
        // sorted variable one of 2 separating cylinders, the unsorted
        // variable any of 16 subsets: 4 * 2*2*16 = 256.
        assert_eq!(total, 8 + 32 + 32 + 256);
    }
}
