//! Instance pools and order-theoretic laws behind the soundness sweeps.
//!
//! [`axiom_instances`] turns every axiom schema available in a context into a
//! bundle of concrete formulas over that context's signature, so model
//! families can be swept for counterexamples.  The `*_law_violations`
//! functions check, directly at the level of world sets, the closure and
//! neighborhood algebra those schemas lean on; each returns a list of
//! violation descriptions, empty when the space is lawful.  The fuzz command
//! and the acceptance suites share both halves.

use crate::grades::Grade;
use crate::proofs::AxiomId;
use crate::spaces::{ChainSpace, ProductSpace, WorldSet};
use crate::syntax::{
    basic_implies_tautology, enumerate_mecs, BasicExpr, DiamondDir, GradedImplication, LogicCtx,
    MecScope, OuterFormula, Variant,
};

const DIRS: [DiamondDir; 2] = [DiamondDir::Le, DiamondDir::Ge];

// ---- schema instance pools -----------------------------------------------

fn gi(lhs: &BasicExpr, g: Grade, rhs: &BasicExpr) -> OuterFormula {
    OuterFormula::atom(GradedImplication::new(lhs.clone(), g, rhs.clone()))
}

fn dia(dir: DiamondDir, e: &BasicExpr) -> BasicExpr {
    e.clone().diamond(dir)
}

/// Expression pools drawn from a signature: `any` mixes freely, `blocks`
/// holds per-sort literals (two blocks when two sorts exist), `unsorted` a
/// plain unsorted variable, `mecs` the maximal elementary conjunctions.
struct Pools {
    any: Vec<BasicExpr>,
    blocks: Vec<Vec<BasicExpr>>,
    unsorted: Option<BasicExpr>,
    mecs: Vec<BasicExpr>,
    sort_mecs: Vec<BasicExpr>,
}

fn pools(ctx: &LogicCtx) -> Pools {
    let sig = &ctx.sig;
    let vars: Vec<BasicExpr> = sig.vars().map(BasicExpr::var).collect();
    let mut any = vec![BasicExpr::Bot, BasicExpr::Top];
    any.extend(vars.iter().cloned());
    if let [p, q, ..] = vars.as_slice() {
        any.push(p.clone().not());
        any.push(p.clone().and(q.clone()));
        any.push(p.clone().or(q.clone().not()));
    }
    let blocks: Vec<Vec<BasicExpr>> = sig
        .sort_ids()
        .map(|s| {
            let vs = sig.vars_of_sort(s);
            let mut pool: Vec<BasicExpr> = vs.iter().map(|&v| BasicExpr::var(v)).collect();
            pool.push(BasicExpr::var(vs[0]).not());
            if let [a, b, ..] = vs {
                pool.push(BasicExpr::var(*a).and(BasicExpr::var(*b)));
            }
            pool
        })
        .collect();
    let unsorted = sig.unsorted_vars().next().map(BasicExpr::var);
    let mecs = enumerate_mecs(ctx, MecScope::AllSorted).unwrap_or_default();
    let sort_mecs = match ctx.variant {
        Variant::Laepc => sig
            .sort_ids()
            .flat_map(|s| enumerate_mecs(ctx, MecScope::Sort(s)).unwrap_or_default())
            .collect(),
        _ => mecs.clone(),
    };
    Pools { any, blocks, unsorted, mecs, sort_mecs }
}

/// Builds concrete instances of every axiom schema available in the
/// context's variant, from small pools over its signature.  Every returned
/// formula matches its paired identifier under
/// [`crate::proofs::matches_axiom`] and is well-formed for the context.
///
/// The pools want at least two variables to bite — in the product variant,
/// two sorts with a variable each; without an unsorted variable the
/// case-split schema over one simply contributes nothing.
pub fn axiom_instances(ctx: &LogicCtx) -> Vec<(AxiomId, OuterFormula)> {
    let scale = &ctx.scale;
    let top = scale.top();
    let bot = scale.bot();
    let grades: Vec<Grade> = scale.grades().collect();
    let po = pools(ctx);
    let small: Vec<&BasicExpr> = po.any.iter().skip(2).take(4).collect();
    let mut out: Vec<(AxiomId, OuterFormula)> = Vec::new();
    let mut push = |id: AxiomId, f: OuterFormula| {
        if id.available(ctx.variant) {
            out.push((id, f));
        }
    };

    // A1: tautological implications at the top grade, kept when the
    // propositional oracle certifies them.
    let mut a1 = 0;
    'a1: for l in &po.any {
        for r in &po.any {
            if basic_implies_tautology(l, r).unwrap_or(false) {
                push(AxiomId::A1, gi(l, top, r));
                a1 += 1;
                if a1 >= 20 {
                    break 'a1;
                }
            }
        }
    }
    if ctx.variant.has_diamonds() {
        for d in DIRS {
            let e = dia(d, small[0]);
            push(AxiomId::A1, gi(&e, top, &e));
        }
    }

    for l in &small {
        for r in &small {
            push(
                AxiomId::A2,
                gi(l, top, r).implies(gi(&(*l).clone().and((*r).clone().not()), top, &BasicExpr::Bot)),
            );
            for &c in &grades {
                for &d in &grades {
                    if d <= c {
                        push(AxiomId::A3, gi(l, c, r).implies(gi(l, d, r)));
                    }
                }
            }
        }
        for r in &small {
            push(
                AxiomId::A4,
                gi(r, top, &BasicExpr::Bot).not().implies(gi(l, bot, r)),
            );
        }
        for &c in &grades {
            push(AxiomId::A5, gi(l, c, &BasicExpr::Bot).implies(gi(l, top, &BasicExpr::Bot)));
        }
    }

    for delta in po.mecs.iter().take(4) {
        for eps in po.mecs.iter().take(4) {
            for &c in &grades {
                push(
                    AxiomId::A6,
                    gi(delta, top, &BasicExpr::Bot)
                        .not()
                        .and(gi(delta, c, eps))
                        .implies(gi(eps, c, delta)),
                );
            }
        }
    }

    for l in small.iter().take(2) {
        for m in small.iter().take(2) {
            for r in small.iter().skip(1).take(2) {
                for &c in &grades {
                    push(
                        AxiomId::A7,
                        gi(l, c, r)
                            .and(gi(m, c, r))
                            .implies(gi(&(*l).clone().or((*m).clone()), c, r)),
                    );
                    push(
                        AxiomId::A9,
                        gi(l, c, m)
                            .and(gi(m, top, r))
                            .implies(gi(l, scale.combine(c, top), r)),
                    );
                    push(
                        AxiomId::A9,
                        gi(l, c, m).and(gi(m, c, r)).implies(gi(l, scale.combine(c, c), r)),
                    );
                }
            }
        }
    }

    for eps in po.mecs.iter().take(4) {
        for l in small.iter().take(2) {
            for r in small.iter().skip(1).take(2) {
                for &c in &grades {
                    push(
                        AxiomId::A8,
                        gi(eps, c, &(*l).clone().or((*r).clone()))
                            .implies(gi(eps, c, l).or(gi(eps, c, r))),
                    );
                }
            }
        }
    }

    push(AxiomId::A10, gi(&BasicExpr::Top, top, &BasicExpr::Bot).not());

    // A11: outer-propositional tautologies over a couple of atoms.
    let x = gi(small[0], grades[grades.len() / 2], small[1]);
    let y = gi(small[1], top, &BasicExpr::Bot);
    push(AxiomId::A11, x.clone().or(x.clone().not()));
    push(AxiomId::A11, x.clone().implies(y.clone().implies(x.clone())));
    push(
        AxiomId::A11,
        x.clone().implies(y.clone()).implies(y.clone().not().implies(x.clone().not())),
    );
    push(AxiomId::A11, x.clone().and(y.clone()).implies(x.clone()));
    push(AxiomId::A11, x.clone().implies(x.clone().or(y.clone())));
    push(AxiomId::A11, x.clone().iff(x.clone()));

    if !ctx.variant.has_diamonds() {
        return out;
    }

    // Ordered schemas.  Where the product variant restricts a slot to one
    // sort, draw from the per-sort blocks.
    let one_sorted: Vec<&BasicExpr> = po.blocks.iter().flat_map(|b| b.iter().take(2)).collect();
    let dia_pool: Vec<&BasicExpr> = if ctx.variant == Variant::Laepc {
        one_sorted.clone()
    } else {
        small.clone()
    };

    for d in DIRS {
        for e in &po.any {
            push(AxiomId::a12(d), gi(e, top, &dia(d, e)));
            push(AxiomId::a13(d), gi(&dia(d, &dia(d, e)), top, &dia(d, e)));
        }
        push(AxiomId::a14(d), gi(&dia(d, &BasicExpr::Bot), top, &BasicExpr::Bot));

        // A15: in the product variant both slots must share one sort.
        let pairs: Vec<(&BasicExpr, &BasicExpr)> = if ctx.variant == Variant::Laepc {
            po.blocks
                .iter()
                .flat_map(|b| b.iter().zip(b.iter().skip(1)))
                .collect()
        } else {
            small.iter().map(|&l| (l, *small.last().unwrap())).collect()
        };
        for (l, r) in pairs {
            let (dl, dr) = (dia(d, l), dia(d, r));
            push(AxiomId::a15(d), gi(&dl, top, &dr).or(gi(&dr, top, &dl)));
        }

        for l in &dia_pool {
            for r in small.iter().take(2) {
                for &c in &grades {
                    push(
                        AxiomId::a17(d),
                        gi(l, c, r).implies(gi(&dia(d, l), c, &dia(d, r))),
                    );
                }
                let body = (*l).clone().and(dia(d, r));
                let flipped = dia(d.flip(), l).and(dia(d, r));
                push(
                    AxiomId::a18(d),
                    gi(&body, top, &BasicExpr::Bot).implies(gi(&flipped, top, &BasicExpr::Bot)),
                );
            }
        }
    }

    for eps in &po.sort_mecs {
        push(
            AxiomId::A16,
            gi(&dia(DiamondDir::Le, eps).and(dia(DiamondDir::Ge, eps)), top, eps),
        );
    }

    // A19: consistency-driven conjunction introduction, with
    // diamond-conjunction slots.
    let mut djc: Vec<BasicExpr> = Vec::new();
    for e in dia_pool.iter().take(2) {
        djc.push(dia(DiamondDir::Le, e));
        djc.push(dia(DiamondDir::Ge, e));
        djc.push(dia(DiamondDir::Le, e).and(dia(DiamondDir::Ge, e)));
    }
    for rho in djc.iter().take(4) {
        for sigma in djc.iter().rev().take(3) {
            for phi in small.iter().take(2) {
                for &c in &grades {
                    let both = rho.clone().and(sigma.clone());
                    push(
                        AxiomId::A19,
                        gi(&both, top, &BasicExpr::Bot)
                            .not()
                            .and(gi(phi, c, rho))
                            .and(gi(phi, c, sigma))
                            .implies(gi(phi, c, &both)),
                    );
                }
            }
        }
    }

    if ctx.variant != Variant::Laepc || po.blocks.len() < 2 {
        return out;
    }

    // Schemas that need two sorts (and, for the case split, an unsorted
    // variable).
    let (b0, b1) = (&po.blocks[0], &po.blocks[1]);
    for phi in b0.iter().take(2) {
        for psi in b0.iter().take(2) {
            for phi2 in b1.iter().take(2) {
                for psi2 in b1.iter().take(2) {
                    for &c in &grades {
                        let ante = phi.clone().and(phi2.clone());
                        push(
                            AxiomId::A20,
                            gi(&ante, top, &BasicExpr::Bot).not().implies(
                                gi(phi, c, psi)
                                    .and(gi(phi2, c, psi2))
                                    .iff(gi(&ante, c, &psi.clone().and(psi2.clone()))),
                            ),
                        );
                    }
                }
            }
        }
    }

    let mut free: Vec<BasicExpr> = vec![b0[0].clone(), b0[0].clone().and(b1[0].clone())];
    if let Some(u) = &po.unsorted {
        free.push(u.clone());
        free.push(u.clone().not());
    }
    for d in DIRS {
        for phi in &free {
            for chi in b0.iter().take(2) {
                for psi in b1.iter().take(2) {
                    let dphi = dia(d, phi);
                    let with_chi = dphi.clone().and(chi.clone());
                    let all = with_chi.clone().and(psi.clone());
                    let with_psi = dphi.clone().and(psi.clone());
                    push(
                        AxiomId::A21,
                        gi(&all, top, &BasicExpr::Bot).implies(
                            gi(&with_chi, top, &BasicExpr::Bot)
                                .or(gi(&with_psi, top, &BasicExpr::Bot)),
                        ),
                    );
                }
            }
        }
    }

    if let Some(u) = &po.unsorted {
        for eps in &po.mecs {
            push(
                AxiomId::A22,
                gi(eps, top, u).or(gi(eps, top, &u.clone().not())),
            );
        }
    }

    out
}

// ---- closure and neighborhood laws ---------------------------------------

fn subsets(n: usize) -> Vec<WorldSet> {
    (0..1u64 << n)
        .map(|bits| WorldSet::from_indices(n, (0..n).filter(|&w| bits >> w & 1 == 1)))
        .collect()
}

fn set_text(a: &WorldSet, names: &[String]) -> String {
    let mut items: Vec<&str> = a.iter().map(|w| names[w].as_str()).collect();
    if items.is_empty() {
        items.push("-");
    }
    format!("{{{}}}", items.join(" "))
}

/// Checks the laws every totally ordered space obeys, exhaustively over all
/// subsets: closures are inclusive, idempotent, strict on the empty set and
/// nested; they preserve neighborhood inclusion at every grade; up- and
/// down-closures of a point meet in exactly that point; a set disjoint from a
/// closure stays disjoint after closing it the opposite way; closing both
/// ways cuts out the spanned interval; and neighborhoods distribute over
/// overlapping intersections of intervals.  Intended for small spaces — the
/// sweep is quadratic in the number of subsets.
pub fn chain_law_violations(chain: &ChainSpace) -> Vec<String> {
    let mut out = Vec::new();
    let n = chain.n_worlds();
    let base = chain.base();
    let names = base.names();
    let grades: Vec<Grade> = base.scale().grades().collect();
    let sets = subsets(n);
    let mut report = |law: &str, detail: String| out.push(format!("{law}: {detail}"));

    for dir in DIRS {
        let d = dir.keyword();
        if !chain.closure(dir, &WorldSet::empty(n)).is_empty() {
            report("empty closure", format!("{d} of the empty set is non-empty"));
        }
        let closed: Vec<WorldSet> = sets.iter().map(|a| chain.closure(dir, a)).collect();
        for (a, ca) in sets.iter().zip(&closed) {
            if !a.is_subset(ca) {
                report("inclusive", format!("{} not within {d} of itself", set_text(a, names)));
            }
            if chain.closure(dir, ca) != *ca {
                report("idempotent", format!("{d} of {} moved again", set_text(a, names)));
            }
            for (b, cb) in sets.iter().zip(&closed) {
                if !ca.is_subset(cb) && !cb.is_subset(ca) {
                    report(
                        "nested",
                        format!(
                            "{d} of {} and of {} are incomparable",
                            set_text(a, names),
                            set_text(b, names)
                        ),
                    );
                }
                for &c in &grades {
                    if a.is_subset(&base.neighborhood(c, b))
                        && !ca.is_subset(&base.neighborhood(c, cb))
                    {
                        report(
                            "neighborhood-monotone",
                            format!(
                                "{d} broke inclusion of {} in the {}-neighborhood of {}",
                                set_text(a, names),
                                base.scale().level_text(c),
                                set_text(b, names)
                            ),
                        );
                    }
                }
                if a.intersect(cb).is_empty()
                    && !chain.closure(dir.flip(), a).intersect(cb).is_empty()
                {
                    report(
                        "opposite-closure disjointness",
                        format!(
                            "{} is disjoint from {d} of {} but its opposite closure is not",
                            set_text(a, names),
                            set_text(b, names)
                        ),
                    );
                }
            }
        }
    }
    for w in 0..n {
        let point = WorldSet::singleton(n, w);
        let meet = chain
            .closure(DiamondDir::Le, &point)
            .intersect(&chain.closure(DiamondDir::Ge, &point));
        if meet != point {
            report("point meet", format!("both closures of {} meet beyond it", names[w]));
        }
    }
    for a in &sets {
        let (Some(lo), Some(hi)) = (a.min(), a.max()) else { continue };
        let both = chain
            .closure(DiamondDir::Le, a)
            .intersect(&chain.closure(DiamondDir::Ge, a));
        if both != chain.interval(lo, hi) {
            report(
                "spanned interval",
                format!("both closures of {} miss the spanned interval", set_text(a, names)),
            );
        }
    }
    let intervals: Vec<WorldSet> =
        (0..n).flat_map(|lo| (lo..n).map(move |hi| (lo, hi))).map(|(lo, hi)| chain.interval(lo, hi)).collect();
    for a in &intervals {
        for b in &intervals {
            let meet = a.intersect(b);
            if meet.is_empty() {
                continue;
            }
            for &c in &grades {
                if base.neighborhood(c, &meet)
                    != base.neighborhood(c, a).intersect(&base.neighborhood(c, b))
                {
                    report(
                        "interval neighborhoods",
                        format!(
                            "{}-neighborhood does not distribute over {} and {}",
                            base.scale().level_text(c),
                            set_text(a, names),
                            set_text(b, names)
                        ),
                    );
                }
            }
        }
    }
    out
}

/// Checks the laws of componentwise-ordered products, exhaustively over all
/// subsets: closures are inclusive, idempotent and strict on the empty set;
/// they preserve neighborhood inclusion at every grade; closing both ways
/// cuts out the spanned orthotope; and neighborhoods distribute over
/// overlapping intersections of orthotopes.  With exactly two components the
/// block laws are checked too: neighborhood inclusion splits across disjoint
/// blocks, a closure meets an intersection of cylinders from the two blocks
/// only if it meets one of them, and a one-component cylinder disjoint from a
/// closure stays disjoint after closing it the opposite way.  Intended for
/// small spaces.
pub fn product_law_violations(product: &ProductSpace) -> Vec<String> {
    let mut out = Vec::new();
    let n = product.n_worlds();
    let base = product.base();
    let names = base.names();
    let grades: Vec<Grade> = base.scale().grades().collect();
    let sets = subsets(n);
    let mut report = |law: &str, detail: String| out.push(format!("{law}: {detail}"));

    for dir in DIRS {
        let d = dir.keyword();
        if !product.closure(dir, &WorldSet::empty(n)).is_empty() {
            report("empty closure", format!("{d} of the empty set is non-empty"));
        }
        for a in &sets {
            let ca = product.closure(dir, a);
            if !a.is_subset(&ca) {
                report("inclusive", format!("{} not within {d} of itself", set_text(a, names)));
            }
            if product.closure(dir, &ca) != ca {
                report("idempotent", format!("{d} of {} moved again", set_text(a, names)));
            }
            for b in &sets {
                for &c in &grades {
                    if a.is_subset(&base.neighborhood(c, b))
                        && !ca.is_subset(&base.neighborhood(c, &product.closure(dir, b)))
                    {
                        report(
                            "neighborhood-monotone",
                            format!(
                                "{d} broke inclusion of {} in the {}-neighborhood of {}",
                                set_text(a, names),
                                base.scale().level_text(c),
                                set_text(b, names)
                            ),
                        );
                    }
                }
            }
        }
    }

    for a in &sets {
        if a.is_empty() {
            continue;
        }
        let spans: Vec<(usize, usize)> = (0..product.components().len())
            .map(|i| {
                let proj: Vec<usize> = a.iter().map(|w| product.tuple_of(w)[i]).collect();
                (*proj.iter().min().unwrap(), *proj.iter().max().unwrap())
            })
            .collect();
        let both = product
            .closure(DiamondDir::Le, a)
            .intersect(&product.closure(DiamondDir::Ge, a));
        if both != product.orthotope(&spans) {
            report(
                "spanned orthotope",
                format!("both closures of {} miss the spanned orthotope", set_text(a, names)),
            );
        }
    }

    let mut orthotopes: Vec<WorldSet> = Vec::new();
    let mut stack: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for comp in product.components() {
        let m = comp.n_worlds();
        stack = stack
            .into_iter()
            .flat_map(|prefix| {
                (0..m).flat_map(move |lo| (lo..m).map(move |hi| (lo, hi))).map(move |iv| {
                    let mut next = prefix.clone();
                    next.push(iv);
                    next
                })
            })
            .collect();
    }
    for ivs in stack {
        orthotopes.push(product.orthotope(&ivs));
    }
    for a in &orthotopes {
        for b in &orthotopes {
            let meet = a.intersect(b);
            if meet.is_empty() {
                continue;
            }
            for &c in &grades {
                if base.neighborhood(c, &meet)
                    != base.neighborhood(c, a).intersect(&base.neighborhood(c, b))
                {
                    report(
                        "orthotope neighborhoods",
                        format!(
                            "{}-neighborhood does not distribute over {} and {}",
                            base.scale().level_text(c),
                            set_text(a, names),
                            set_text(b, names)
                        ),
                    );
                }
            }
        }
    }

    if product.components().len() != 2 {
        return out;
    }
    let comp_sets: Vec<Vec<WorldSet>> =
        product.components().iter().map(|c| subsets(c.n_worlds())).collect();

    for a in &comp_sets[0] {
        for b in &comp_sets[1] {
            for c2 in &comp_sets[0] {
                for d2 in &comp_sets[1] {
                    if a.is_empty() || b.is_empty() || c2.is_empty() || d2.is_empty() {
                        continue;
                    }
                    let (ca, cb) = (product.cylinder(0, a), product.cylinder(1, b));
                    let (cc, cd) = (product.cylinder(0, c2), product.cylinder(1, d2));
                    for &g in &grades {
                        let split = ca.is_subset(&base.neighborhood(g, &cc))
                            && cb.is_subset(&base.neighborhood(g, &cd));
                        let joint = ca
                            .intersect(&cb)
                            .is_subset(&base.neighborhood(g, &cc.intersect(&cd)));
                        if split != joint {
                            report(
                                "block neighborhoods",
                                format!(
                                    "inclusion at grade {} splits differently across blocks for {} x {} vs {} x {}",
                                    base.scale().level_text(g),
                                    set_text(a, product.components()[0].base().names()),
                                    set_text(b, product.components()[1].base().names()),
                                    set_text(c2, product.components()[0].base().names()),
                                    set_text(d2, product.components()[1].base().names()),
                                ),
                            );
                        }
                    }
                }
            }
        }
    }

    for dir in DIRS {
        for a in &sets {
            let ca = product.closure(dir, a);
            for b in &comp_sets[0] {
                let cb = product.cylinder(0, b);
                for c2 in &comp_sets[1] {
                    let cc = product.cylinder(1, c2);
                    let all_empty = ca.intersect(&cb).intersect(&cc).is_empty();
                    let either_empty =
                        ca.intersect(&cb).is_empty() || ca.intersect(&cc).is_empty();
                    if all_empty != either_empty {
                        report(
                            "closure meets blocks",
                            format!(
                                "{} of {} meets the cylinder meet without meeting a factor",
                                dir.keyword(),
                                set_text(a, names)
                            ),
                        );
                    }
                }
            }
        }
        for (i, comp_subs) in comp_sets.iter().enumerate() {
            for a in comp_subs {
                let cyl = product.cylinder(i, a);
                for b in &sets {
                    let cb = product.closure(dir, b);
                    if cyl.intersect(&cb).is_empty()
                        && !product.closure(dir.flip(), &cyl).intersect(&cb).is_empty()
                    {
                        report(
                            "opposite-closure disjointness",
                            format!(
                                "cylinder over component {i} of {} is disjoint from {} of {} but its opposite closure is not",
                                set_text(a, product.components()[i].base().names()),
                                dir.keyword(),
                                set_text(b, names)
                            ),
                        );
                    }
                }
            }
        }
    }
    out
}

/// Checks, over all pairs of subsets and both closure directions, the four
/// modal validities of totally ordered closure frames: the normality law for
/// the box, reflexivity, transitivity, and the connectedness law that pins
/// the logic down to linear orders.
pub fn s43_violations(chain: &ChainSpace) -> Vec<String> {
    let mut out = Vec::new();
    let n = chain.n_worlds();
    let names = chain.base().names();
    let sets = subsets(n);
    for dir in DIRS {
        let d = dir.keyword();
        let dia = |x: &WorldSet| chain.closure(dir, x);
        let boxed = |x: &WorldSet| dia(&x.complement()).complement();
        for p in &sets {
            if !boxed(p).is_subset(p) {
                out.push(format!("reflexivity ({d}): box of {} leaks", set_text(p, names)));
            }
            if !boxed(p).is_subset(&boxed(&boxed(p))) {
                out.push(format!("transitivity ({d}): box of {} is not boxed twice", set_text(p, names)));
            }
            for q in &sets {
                let implies = |x: &WorldSet, y: &WorldSet| x.complement().union(y);
                if !boxed(&implies(p, q)).intersect(&boxed(p)).is_subset(&boxed(q)) {
                    out.push(format!(
                        "normality ({d}): box fails to distribute from {} to {}",
                        set_text(p, names),
                        set_text(q, names)
                    ));
                }
                if !dia(&p.difference(&dia(q))).intersect(&dia(&q.difference(&dia(p)))).is_empty()
                {
                    out.push(format!(
                        "connectedness ({d}): {} and {} overhang each other",
                        set_text(p, names),
                        set_text(q, names)
                    ));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grades::GradeScale;
    use crate::proofs::matches_axiom;
    use crate::syntax::Signature;
    use std::collections::BTreeSet;

    fn lae3() -> LogicCtx {
        LogicCtx::new(
            Variant::Lae,
            Signature::single_sort(&["p", "q", "r"]).unwrap(),
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

    fn laepc21u() -> LogicCtx {
        LogicCtx::new(
            Variant::Laepc,
            Signature::new(&[("s", vec!["p", "q"]), ("t", vec!["r"])], &["u"]).unwrap(),
            GradeScale::godel_three(),
        )
        .unwrap()
    }

    #[test]
    fn instances_match_their_claimed_schemas() {
        for ctx in [lae3(), laec2(), laepc21u()] {
            let instances = axiom_instances(&ctx);
            assert!(!instances.is_empty());
            for (id, f) in &instances {
                f.validate(&ctx).unwrap();
                assert!(
                    matches_axiom(*id, f, &ctx).unwrap(),
                    "{} instance rejected in {}: {}",
                    id,
                    ctx.variant.name(),
                    ctx.print_outer(f)
                );
            }
        }
    }

    #[test]
    fn every_available_schema_contributes_instances() {
        for ctx in [lae3(), laec2(), laepc21u()] {
            let seen: BTreeSet<AxiomId> =
                axiom_instances(&ctx).into_iter().map(|(id, _)| id).collect();
            for id in AxiomId::ALL {
                if id.available(ctx.variant) {
                    assert!(seen.contains(&id), "no {} instances in {}", id, ctx.variant.name());
                }
            }
        }
    }

    fn chain4() -> ChainSpace {
        let s = GradeScale::godel_three();
        let g = |i: usize| Grade(i as u8);
        ChainSpace::from_pairs(
            (0..4).map(|i| format!("w{i}")).collect(),
            s,
            &[(0, 1, g(1)), (2, 3, g(1))],
        )
        .unwrap()
    }

    #[test]
    fn sample_chain_is_lawful() {
        assert_eq!(chain_law_violations(&chain4()), Vec::<String>::new());
        assert_eq!(s43_violations(&chain4()), Vec::<String>::new());
    }

    #[test]
    fn sample_product_is_lawful() {
        let s = GradeScale::godel_three();
        let c0 = ChainSpace::from_pairs(
            vec!["a".into(), "b".into(), "c".into()],
            s.clone(),
            &[(0, 1, Grade(1)), (1, 2, Grade(1)), (0, 2, Grade(1))],
        )
        .unwrap();
        let c1 =
            ChainSpace::from_pairs(vec!["x".into(), "y".into()], s, &[(0, 1, Grade(1))]).unwrap();
        let p = ProductSpace::new(vec![c0, c1]).unwrap();
        assert_eq!(product_law_violations(&p), Vec::<String>::new());
    }
}
