//! Maximal elementary conjunctions (m.e.c.s) and sort predicates.
//!
//! An m.e.c. over a block of variables is a conjunction of literals that
//! mentions each variable of the block exactly once. M.e.c.s are the atoms of
//! model construction: their extensions partition the worlds that realise
//! them, so enumerations of models and worlds are phrased in terms of them.
//!
//! Recognition is order-insensitive (any bracketing and literal order is
//! accepted), while the canonical form produced here always lists literals in
//! declaration order, conjoined to the left. A canonical m.e.c. is identified
//! by a bit pattern: with `k` variables `v_0 < … < v_{k-1}`, variable `v_j`
//! appears negated exactly when bit `k-1-j` of the pattern is set, so pattern
//! `0` is the all-positive conjunction and patterns count up the way the
//! printed truth-table rows do (`p & q`, `p & !q`, `!p & q`, `!p & !q`).

use super::{BasicExpr, LogicCtx, Signature, SortId, SyntaxError, VarId, Variant};
use std::collections::BTreeSet;

/// Upper bound on the number of variables a single m.e.c. block may have;
/// beyond this, enumerations (2^k patterns) stop being tractable.
pub const MAX_MEC_VARS: usize = 16;

/// Which block of variables an m.e.c. ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MecScope {
    /// Every sorted variable of the signature (in the one-sort variants:
    /// every variable).
    AllSorted,
    /// The variables of a single sort.
    Sort(SortId),
}

/// A recognised m.e.c. in canonical form: the covered variables in
/// declaration order plus the sign pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mec {
    pub vars: Vec<VarId>,
    pub pattern: u64,
}

impl Mec {
    /// True if the `j`-th covered variable occurs positively.
    pub fn positive(&self, j: usize) -> bool {
        self.pattern & (1 << (self.vars.len() - 1 - j)) == 0
    }

    /// The canonical expression: literals in declaration order, conjoined to
    /// the left.
    pub fn expr(&self) -> BasicExpr {
        mec_from_pattern(&self.vars, self.pattern)
    }
}

/// Builds the canonical m.e.c. with the given sign pattern over a block of
/// variables (see the module docs for the bit convention).
pub fn mec_from_pattern(vars: &[VarId], pattern: u64) -> BasicExpr {
    assert!(!vars.is_empty() && vars.len() <= MAX_MEC_VARS);
    let k = vars.len();
    let mut e: Option<BasicExpr> = None;
    for (j, v) in vars.iter().enumerate() {
        let positive = pattern & (1 << (k - 1 - j)) == 0;
        let lit = BasicExpr::literal(*v, positive);
        e = Some(match e {
            None => lit,
            Some(acc) => acc.and(lit),
        });
    }
    e.unwrap()
}

/// Flattens a conjunction tree into literals, in order of appearance.
/// `None` if the expression is not a conjunction of variable literals.
fn literals(e: &BasicExpr, acc: &mut Vec<(VarId, bool)>) -> Option<()> {
    match e {
        BasicExpr::Var(v) => {
            acc.push((*v, true));
            Some(())
        }
        BasicExpr::Not(inner) => match inner.as_ref() {
            BasicExpr::Var(v) => {
                acc.push((*v, false));
                Some(())
            }
            _ => None,
        },
        BasicExpr::And(l, r) => {
            literals(l, acc)?;
            literals(r, acc)
        }
        _ => None,
    }
}

fn to_mec(lits: &[(VarId, bool)], block: &[VarId]) -> Option<Mec> {
    if lits.len() != block.len() {
        return None;
    }
    let k = block.len();
    let mut pattern = 0u64;
    let mut seen = 0u64;
    for (v, positive) in lits {
        let j = block.iter().position(|b| b == v)?;
        if seen & (1 << j) != 0 {
            return None;
        }
        seen |= 1 << j;
        if !positive {
            pattern |= 1 << (k - 1 - j);
        }
    }
    Some(Mec { vars: block.to_vec(), pattern })
}

/// Recognises an m.e.c. over the variant's full block: all variables in the
/// one-sort variants, all *sorted* variables in the product variant (where an
/// expression mentioning an unsorted variable is never an m.e.c.).
pub fn is_mec(e: &BasicExpr, ctx: &LogicCtx) -> Option<Mec> {
    let mut lits = Vec::new();
    literals(e, &mut lits)?;
    let block: Vec<VarId> = match ctx.variant {
        Variant::Laepc => ctx.sig.sorted_vars().collect(),
        _ => ctx.sig.vars().collect(),
    };
    to_mec(&lits, &block)
}

/// Recognises an m.e.c. over the variables of one single sort, returning the
/// sort alongside the canonical form.
pub fn is_one_sorted_mec(e: &BasicExpr, ctx: &LogicCtx) -> Option<(SortId, Mec)> {
    let mut lits = Vec::new();
    literals(e, &mut lits)?;
    let sort = ctx.sig.sort_of(lits.first()?.0)?;
    let mec = to_mec(&lits, ctx.sig.vars_of_sort(sort))?;
    Some((sort, mec))
}

/// Enumerates the canonical m.e.c.s over a block, pattern `0` (all positive)
/// first, counting up.
pub fn enumerate_mecs(ctx: &LogicCtx, scope: MecScope) -> Result<Vec<BasicExpr>, SyntaxError> {
    let block: Vec<VarId> = match scope {
        MecScope::AllSorted => ctx.sig.sorted_vars().collect(),
        MecScope::Sort(s) => ctx.sig.vars_of_sort(s).to_vec(),
    };
    if block.len() > MAX_MEC_VARS {
        return Err(SyntaxError::ResourceLimit {
            what: "m.e.c. enumeration",
            limit: MAX_MEC_VARS,
            unit: "variables",
        });
    }
    Ok((0..1u64 << block.len())
        .map(|pattern| mec_from_pattern(&block, pattern))
        .collect())
}

// ---- sort predicates -----------------------------------------------------

/// The set of sorts whose variables occur in the expression; `None` if an
/// unsorted variable occurs (such expressions fail every sort predicate).
pub fn sorts_of(e: &BasicExpr, sig: &Signature) -> Option<BTreeSet<SortId>> {
    let mut sorts = BTreeSet::new();
    for v in e.vars() {
        sorts.insert(sig.sort_of(v)?);
    }
    Some(sorts)
}

/// True if every variable of the expression belongs to one single sort.
/// Variable-free expressions qualify vacuously.
pub fn one_sorted(e: &BasicExpr, sig: &Signature) -> bool {
    sorts_of(e, sig).is_some_and(|s| s.len() <= 1)
}

/// True if the two expressions draw their variables from one common sort
/// (again vacuously for variable-free expressions).
pub fn same_sort(a: &BasicExpr, b: &BasicExpr, sig: &Signature) -> bool {
    match (sorts_of(a, sig), sorts_of(b, sig)) {
        (Some(sa), Some(sb)) => sa.union(&sb).count() <= 1,
        _ => false,
    }
}

/// True if the two expressions are each fully sorted and share no sort.
pub fn disjoint_sorted(a: &BasicExpr, b: &BasicExpr, sig: &Signature) -> bool {
    match (sorts_of(a, sig), sorts_of(b, sig)) {
        (Some(sa), Some(sb)) => sa.intersection(&sb).next().is_none(),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grades::GradeScale;
    use crate::syntax::{parse_basic, print_basic};

    fn one_sort_ctx() -> LogicCtx {
        let sig = Signature::single_sort(&["p", "q"]).unwrap();
        LogicCtx::new(Variant::Lae, sig, GradeScale::godel_three()).unwrap()
    }

    fn product_ctx() -> LogicCtx {
        let sig =
            Signature::new(&[("price", vec!["b1", "b2"]), ("fuel", vec!["g"])], &["u"]).unwrap();
        LogicCtx::new(Variant::Laepc, sig, GradeScale::godel_three()).unwrap()
    }

    #[test]
    fn enumeration_counts_patterns_in_truth_table_order() {
        let ctx = one_sort_ctx();
        let mecs = enumerate_mecs(&ctx, MecScope::AllSorted).unwrap();
        let printed: Vec<String> = mecs.iter().map(|m| print_basic(m, &ctx.sig)).collect();
        assert_eq!(printed, vec!["p & q", "p & !q", "!p & q", "!p & !q"]);
    }

    #[test]
    fn recognition_ignores_order_and_bracketing() {
        let ctx = one_sort_ctx();
        for (text, pattern) in [
            ("p & q", 0b00),
            ("q & p", 0b00),
            ("!q & p", 0b01),
            ("p & !q", 0b01),
            ("(!p) & q", 0b10),
            ("!p & !q", 0b11),
        ] {
            let e = parse_basic(text, &ctx).unwrap();
            let mec = is_mec(&e, &ctx).unwrap_or_else(|| panic!("`{text}` not an m.e.c."));
            assert_eq!(mec.pattern, pattern, "pattern of `{text}`");
        }
        // Canonical form is declaration order regardless of input order.
        let e = parse_basic("!q & p", &ctx).unwrap();
        let canonical = is_mec(&e, &ctx).unwrap().expr();
        assert_eq!(print_basic(&canonical, &ctx.sig), "p & !q");
    }

    #[test]
    fn recognition_rejects_non_mecs() {
        let ctx = one_sort_ctx();
        for text in ["p", "p & p", "p & !p", "p & (q | q)", "!(p & q)", "p & T"] {
            let e = parse_basic(text, &ctx).unwrap();
            assert!(is_mec(&e, &ctx).is_none(), "`{text}` wrongly accepted");
        }
    }

    #[test]
    fn product_mecs_cover_all_sorted_variables_and_exclude_unsorted() {
        let ctx = product_ctx();
        let full = parse_basic("b1 & !b2 & g", &ctx).unwrap();
        assert_eq!(is_mec(&full, &ctx).unwrap().pattern, 0b010);
        let with_unsorted = parse_basic("b1 & !b2 & g & u", &ctx).unwrap();
        assert!(is_mec(&with_unsorted, &ctx).is_none());
        let partial = parse_basic("b1 & !b2", &ctx).unwrap();
        assert!(is_mec(&partial, &ctx).is_none());
    }

    #[test]
    fn one_sorted_mecs_pick_their_sort() {
        let ctx = product_ctx();
        let e = parse_basic("!b2 & b1", &ctx).unwrap();
        let (sort, mec) = is_one_sorted_mec(&e, &ctx).unwrap();
        assert_eq!(ctx.sig.sort_name(sort), "price");
        assert_eq!(print_basic(&mec.expr(), &ctx.sig), "b1 & !b2");

        let e = parse_basic("g", &ctx).unwrap();
        let (sort, _) = is_one_sorted_mec(&e, &ctx).unwrap();
        assert_eq!(ctx.sig.sort_name(sort), "fuel");

        // Mixed sorts and unsorted variables are not one-sorted m.e.c.s.
        for text in ["b1 & b2 & g", "u", "b1"] {
            let e = parse_basic(text, &ctx).unwrap();
            assert!(is_one_sorted_mec(&e, &ctx).is_none(), "`{text}` wrongly accepted");
        }
    }

    #[test]
    fn per_sort_enumeration_matches_block_sizes() {
        let ctx = product_ctx();
        let price = enumerate_mecs(&ctx, MecScope::Sort(SortId(0))).unwrap();
        assert_eq!(price.len(), 4);
        let fuel = enumerate_mecs(&ctx, MecScope::Sort(SortId(1))).unwrap();
        let printed: Vec<String> = fuel.iter().map(|m| print_basic(m, &ctx.sig)).collect();
        assert_eq!(printed, vec!["g", "!g"]);
        let all = enumerate_mecs(&ctx, MecScope::AllSorted).unwrap();
        assert_eq!(all.len(), 8);
    }

    #[test]
    fn sort_predicates_follow_variable_occurrences() {
        let ctx = product_ctx();
        let sig = &ctx.sig;
        let p = |t: &str| parse_basic(t, &ctx).unwrap();

        assert!(one_sorted(&p("b1 & !b2"), sig));
        assert!(one_sorted(&p("T"), sig));
        assert!(!one_sorted(&p("b1 & g"), sig));
        assert!(!one_sorted(&p("u"), sig));

        assert!(same_sort(&p("b1"), &p("b2 | b1"), sig));
        assert!(same_sort(&p("b1"), &p("T"), sig));
        assert!(same_sort(&p("_|_"), &p("T"), sig));
        assert!(!same_sort(&p("b1"), &p("g"), sig));
        assert!(!same_sort(&p("b1"), &p("u"), sig));

        assert!(disjoint_sorted(&p("b1 & b2"), &p("g"), sig));
        assert!(disjoint_sorted(&p("T"), &p("g"), sig));
        assert!(!disjoint_sorted(&p("b1 & g"), &p("g"), sig));
        assert!(!disjoint_sorted(&p("u"), &p("g"), sig));
    }
}
