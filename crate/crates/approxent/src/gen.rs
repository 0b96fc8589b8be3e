//! Seeded random generation of valid models and well-formed formulas.
//!
//! Models come out valid by construction:
//!
//! - plain similarity matrices are sampled freely and then repaired to
//!   transitivity by closure (`S(u,w) := max(S(u,w), S(u,v) (.) S(v,w))` to a
//!   fixpoint), which keeps the diagonal and symmetry intact and never lifts
//!   an off-diagonal entry to the top grade;
//! - chain matrices take sampled adjacent similarities and define the far
//!   entries as the combination along the path, which satisfies both
//!   transitivity and order compatibility outright (not every valid chain
//!   arises this way — exhaustive coverage is the reference enumerator's
//!   job, variety is enough here);
//! - evaluations give worlds pairwise distinct membership profiles (per
//!   component, in the product variant), so separation and the cylinder
//!   condition hold by construction, and unsorted variables take arbitrary
//!   sets.
//!
//! All sampling is driven by a caller-provided RNG, so a fixed seed
//! reproduces the exact stream.

use crate::grades::Grade;
use crate::semantics::{Evaluation, Model};
use crate::spaces::{ChainSpace, ProductSpace, SimilaritySpace, Space, WorldSet};
use crate::syntax::{
    BasicExpr, DiamondDir, GradedImplication, LogicCtx, OuterFormula, VarId, Variant,
};
use rand::seq::SliceRandom;
use rand::Rng;

/// Samples a valid model whose blocks (the whole space, or each product
/// component) have at most `max_worlds` worlds. Block sizes are additionally
/// clamped so that the block's variables can separate the worlds.
pub fn random_model(ctx: &LogicCtx, rng: &mut impl Rng, max_worlds: usize) -> Model {
    assert!(max_worlds >= 1);
    match ctx.variant {
        Variant::Lae => {
            let n = block_size(rng, max_worlds, ctx.sig.n_vars());
            let space = Space::Plain(random_plain_space(ctx, rng, n));
            let eval = separated_eval(ctx, rng, n);
            Model::new(ctx.clone(), space, eval).expect("generated plain model is valid")
        }
        Variant::Laec => {
            let n = block_size(rng, max_worlds, ctx.sig.n_vars());
            let space = Space::Chain(random_chain_space(ctx, rng, n, None));
            let eval = separated_eval(ctx, rng, n);
            Model::new(ctx.clone(), space, eval).expect("generated chain model is valid")
        }
        Variant::Laepc => random_product_model(ctx, rng, max_worlds),
    }
}

fn block_size(rng: &mut impl Rng, max_worlds: usize, n_vars: usize) -> usize {
    let cap = max_worlds.min(1usize << n_vars.min(16));
    rng.gen_range(1..=cap)
}

fn below_top(ctx: &LogicCtx) -> Vec<Grade> {
    ctx.scale.grades().filter(|g| *g != ctx.scale.top()).collect()
}

fn random_plain_space(ctx: &LogicCtx, rng: &mut impl Rng, n: usize) -> SimilaritySpace {
    let choices = below_top(ctx);
    let mut sim = vec![ctx.scale.top(); n * n];
    for i in 0..n {
        for j in i + 1..n {
            let g = *choices.choose(rng).expect("scale has at least two levels");
            sim[i * n + j] = g;
            sim[j * n + i] = g;
        }
    }
    // Transitive-closure repair.
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let via = ctx.scale.combine(sim[i * n + k], sim[k * n + j]);
                    if via > sim[i * n + j] {
                        sim[i * n + j] = via;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    SimilaritySpace::from_matrix(world_names(n, None), ctx.scale.clone(), sim)
        .expect("repaired matrix satisfies the similarity laws")
}

fn random_chain_space(
    ctx: &LogicCtx,
    rng: &mut impl Rng,
    n: usize,
    sort: Option<usize>,
) -> ChainSpace {
    let choices = below_top(ctx);
    let adjacent: Vec<Grade> = (0..n.saturating_sub(1))
        .map(|_| *choices.choose(rng).expect("scale has at least two levels"))
        .collect();
    let mut sim = vec![ctx.scale.top(); n * n];
    for i in 0..n {
        for j in i + 1..n {
            let g = adjacent[i..j]
                .iter()
                .copied()
                .reduce(|a, b| ctx.scale.combine(a, b))
                .expect("non-empty path");
            sim[i * n + j] = g;
            sim[j * n + i] = g;
        }
    }
    ChainSpace::from_matrix(world_names(n, sort), ctx.scale.clone(), sim)
        .expect("path-combined matrix is a valid chain")
}

fn world_names(n: usize, sort: Option<usize>) -> Vec<String> {
    (0..n)
        .map(|w| match sort {
            None => format!("w{w}"),
            Some(s) => format!("s{s}w{w}"),
        })
        .collect()
}

/// Distinct random membership profiles over all variables (plain and chain
/// variants).
fn separated_eval(ctx: &LogicCtx, rng: &mut impl Rng, n: usize) -> Evaluation {
    let n_vars = ctx.sig.n_vars();
    let profiles = distinct_masks(rng, n, n_vars);
    let mut eval = Evaluation::empty(n_vars, n);
    for (j, v) in ctx.sig.vars().enumerate() {
        eval.set_var(
            v,
            WorldSet::from_indices(n, (0..n).filter(|w| profiles[*w] & (1 << j) != 0)),
        );
    }
    eval
}

/// `n` distinct masks over `bits` bits, uniformly without replacement.
fn distinct_masks(rng: &mut impl Rng, n: usize, bits: usize) -> Vec<u64> {
    let space = 1u64 << bits.min(16);
    assert!(n as u64 <= space, "not enough profiles to separate {n} worlds");
    let mut all: Vec<u64> = (0..space).collect();
    let (chosen, _) = all.partial_shuffle(rng, n);
    chosen.to_vec()
}

fn random_product_model(ctx: &LogicCtx, rng: &mut impl Rng, max_worlds: usize) -> Model {
    let mut components = Vec::new();
    let mut component_profiles: Vec<Vec<u64>> = Vec::new();
    for sort in ctx.sig.sort_ids() {
        let vars_here = ctx.sig.vars_of_sort(sort).len();
        let n = block_size(rng, max_worlds, vars_here);
        components.push(random_chain_space(ctx, rng, n, Some(sort.0 as usize)));
        component_profiles.push(distinct_masks(rng, n, vars_here));
    }
    let product = ProductSpace::new(components).expect("components share the scale");
    let n = product.n_worlds();
    let mut eval = Evaluation::empty(ctx.sig.n_vars(), n);
    for sort in ctx.sig.sort_ids() {
        let i = sort.0 as usize;
        for (j, v) in ctx.sig.vars_of_sort(sort).iter().enumerate() {
            let comp = &product.components()[i];
            let members = WorldSet::from_indices(
                comp.n_worlds(),
                (0..comp.n_worlds()).filter(|w| component_profiles[i][*w] & (1 << j) != 0),
            );
            eval.set_var(*v, product.cylinder(i, &members));
        }
    }
    for v in ctx.sig.vars() {
        if ctx.sig.sort_of(v).is_none() {
            let members: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            eval.set_var(v, WorldSet::from_indices(n, members));
        }
    }
    Model::new(ctx.clone(), Space::Product(product), eval)
        .expect("generated product model is valid")
}

/// Samples a basic expression of bounded depth. Closure operators appear only
/// in the ordered variants.
pub fn random_basic(ctx: &LogicCtx, rng: &mut impl Rng, depth: usize) -> BasicExpr {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        match rng.gen_range(0..8u32) {
            0 => BasicExpr::Top,
            1 => BasicExpr::Bot,
            _ => {
                let v = rng.gen_range(0..ctx.sig.n_vars() as u32);
                BasicExpr::var(VarId(v))
            }
        }
    } else {
        let top = if ctx.variant.has_diamonds() { 5u32 } else { 3u32 };
        match rng.gen_range(0..top) {
            0 => random_basic(ctx, rng, depth - 1).not(),
            1 => random_basic(ctx, rng, depth - 1).and(random_basic(ctx, rng, depth - 1)),
            2 => random_basic(ctx, rng, depth - 1).or(random_basic(ctx, rng, depth - 1)),
            3 => random_basic(ctx, rng, depth - 1).diamond(DiamondDir::Le),
            _ => random_basic(ctx, rng, depth - 1).diamond(DiamondDir::Ge),
        }
    }
}

/// Samples a graded implication with uniformly chosen grade.
pub fn random_implication(ctx: &LogicCtx, rng: &mut impl Rng, depth: usize) -> GradedImplication {
    let grade = Grade(rng.gen_range(0..ctx.scale.len() as u8));
    GradedImplication::new(
        random_basic(ctx, rng, depth),
        grade,
        random_basic(ctx, rng, depth),
    )
}

/// Samples an outer formula of bounded outer depth.
pub fn random_outer(ctx: &LogicCtx, rng: &mut impl Rng, depth: usize) -> OuterFormula {
    if depth == 0 || rng.gen_bool(0.4) {
        OuterFormula::atom(random_implication(ctx, rng, 2))
    } else {
        match rng.gen_range(0..5u32) {
            0 => random_outer(ctx, rng, depth - 1).not(),
            1 => random_outer(ctx, rng, depth - 1).and(random_outer(ctx, rng, depth - 1)),
            2 => random_outer(ctx, rng, depth - 1).or(random_outer(ctx, rng, depth - 1)),
            3 => random_outer(ctx, rng, depth - 1).implies(random_outer(ctx, rng, depth - 1)),
            _ => random_outer(ctx, rng, depth - 1).iff(random_outer(ctx, rng, depth - 1)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grades::GradeScale;
    use crate::syntax::{parse, parse_outer, Parsed, Signature};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn contexts() -> Vec<LogicCtx> {
        vec![
            LogicCtx::new(
                Variant::Lae,
                Signature::single_sort(&["p", "q", "r"]).unwrap(),
                GradeScale::godel_three(),
            )
            .unwrap(),
            LogicCtx::new(
                Variant::Laec,
                Signature::single_sort(&["p", "q"]).unwrap(),
                GradeScale::lukasiewicz_three(),
            )
            .unwrap(),
            LogicCtx::new(
                Variant::Laepc,
                Signature::new(&[("a", vec!["p1", "p2"]), ("b", vec!["q"])], &["u"]).unwrap(),
                GradeScale::godel_three(),
            )
            .unwrap(),
        ]
    }

    #[test]
    fn sampled_models_are_valid_and_reproducible() {
        for ctx in contexts() {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let models: Vec<Model> =
                (0..40).map(|_| random_model(&ctx, &mut rng, 4)).collect();
            // Validity is asserted inside random_model via Model::new; check
            // reproducibility and variety here.
            let mut rng2 = ChaCha8Rng::seed_from_u64(7);
            let again: Vec<Model> =
                (0..40).map(|_| random_model(&ctx, &mut rng2, 4)).collect();
            assert_eq!(models, again, "same seed, same models ({})", ctx.variant);
            let sizes: std::collections::BTreeSet<usize> =
                models.iter().map(|m| m.n_worlds()).collect();
            assert!(sizes.len() > 1, "sizes should vary ({})", ctx.variant);
        }
    }

    #[test]
    fn sampled_formulas_round_trip_and_evaluate() {
        for ctx in contexts() {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            for _ in 0..200 {
                let f = random_outer(&ctx, &mut rng, 3);
                let printed = ctx.print_outer(&f);
                let back = parse_outer(&printed, &ctx)
                    .unwrap_or_else(|e| panic!("reparse `{printed}`: {e}"));
                assert_eq!(back, f, "round trip of `{printed}`");
            }
            // Auto-detection agrees on basic expressions too.
            for _ in 0..200 {
                let e = random_basic(&ctx, &mut rng, 3);
                let printed = ctx.print_basic(&e);
                match parse(&printed, &ctx).unwrap() {
                    Parsed::Basic(back) => assert_eq!(back, e, "round trip of `{printed}`"),
                    Parsed::Outer(_) => panic!("basic `{printed}` detected as outer"),
                }
            }
            // Random formulas evaluate without error on random models.
            let mut rng_m = ChaCha8Rng::seed_from_u64(13);
            for _ in 0..50 {
                let m = random_model(&ctx, &mut rng_m, 3);
                let f = random_outer(&ctx, &mut rng_m, 2);
                let _ = m.satisfies(&f).unwrap();
            }
        }
    }
}
