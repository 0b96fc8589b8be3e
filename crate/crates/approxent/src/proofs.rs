//! Hilbert-style proof checking.
//!
//! Each of the three logics comes with a fixed axiom system and modus ponens
//! as its only rule.  This module recognises axiom instances — including the
//! grade arithmetic and the sort and m.e.c. side conditions — and verifies
//! proof scripts line by line against a theory.  There is no proof search:
//! every line carries a claimed justification, and the checker confirms or
//! refutes exactly that claim.
//!
//! Matching is structural.  Two occurrences of the same schema slot must be
//! written identically; in particular an m.e.c. may list its literals in any
//! order, but every occurrence must use the same order.  Matching modulo
//! classical equivalence is deliberately out of scope — rewriting by
//! equivalents must be spelled out as explicit tautology and syllogism steps.

use std::fmt;
use std::str::FromStr;

use crate::syntax::{
    basic_implies_tautology, disjoint_sorted, is_mec, is_one_sorted_mec, one_sorted,
    outer_tautology, same_sort, sorts_of, BasicExpr, DiamondDir, GradedImplication, LogicCtx,
    OuterFormula, SyntaxError, Variant,
};

// ---- axiom identifiers ---------------------------------------------------

/// Identifier of an axiom schema.  The `a`/`b` suffixes distinguish the two
/// mirror images of the schemas that come in downward/upward pairs.
///
/// `A1` covers both the plain reading — a one-implication whose two sides
/// form a classical tautology over variables — and its generalisation to the
/// ordered variants, where the sides may be built by substituting arbitrary
/// basic expressions (diamonds included) into a classical tautology.  The
/// two readings need no separate ids because the check is the same: the
/// implication of the atomised sides, with diamond subexpressions treated as
/// opaque units, must be a tautology.  [`AxiomId::from_str`] accepts `A1'`
/// as an alias.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomId {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
    A9,
    A10,
    A11,
    A12a,
    A12b,
    A13a,
    A13b,
    A14a,
    A14b,
    A15a,
    A15b,
    A16,
    A17a,
    A17b,
    A18a,
    A18b,
    A19,
    A20,
    A21,
    A22,
}

impl AxiomId {
    /// Every identifier, in the fixed priority order used by
    /// [`recognize_axiom`].
    pub const ALL: [AxiomId; 28] = [
        AxiomId::A1,
        AxiomId::A2,
        AxiomId::A3,
        AxiomId::A4,
        AxiomId::A5,
        AxiomId::A6,
        AxiomId::A7,
        AxiomId::A8,
        AxiomId::A9,
        AxiomId::A10,
        AxiomId::A11,
        AxiomId::A12a,
        AxiomId::A12b,
        AxiomId::A13a,
        AxiomId::A13b,
        AxiomId::A14a,
        AxiomId::A14b,
        AxiomId::A15a,
        AxiomId::A15b,
        AxiomId::A16,
        AxiomId::A17a,
        AxiomId::A17b,
        AxiomId::A18a,
        AxiomId::A18b,
        AxiomId::A19,
        AxiomId::A20,
        AxiomId::A21,
        AxiomId::A22,
    ];

    /// The display name, `"A1"` … `"A22"` with `a`/`b` suffixes.
    pub fn name(self) -> &'static str {
        match self {
            AxiomId::A1 => "A1",
            AxiomId::A2 => "A2",
            AxiomId::A3 => "A3",
            AxiomId::A4 => "A4",
            AxiomId::A5 => "A5",
            AxiomId::A6 => "A6",
            AxiomId::A7 => "A7",
            AxiomId::A8 => "A8",
            AxiomId::A9 => "A9",
            AxiomId::A10 => "A10",
            AxiomId::A11 => "A11",
            AxiomId::A12a => "A12a",
            AxiomId::A12b => "A12b",
            AxiomId::A13a => "A13a",
            AxiomId::A13b => "A13b",
            AxiomId::A14a => "A14a",
            AxiomId::A14b => "A14b",
            AxiomId::A15a => "A15a",
            AxiomId::A15b => "A15b",
            AxiomId::A16 => "A16",
            AxiomId::A17a => "A17a",
            AxiomId::A17b => "A17b",
            AxiomId::A18a => "A18a",
            AxiomId::A18b => "A18b",
            AxiomId::A19 => "A19",
            AxiomId::A20 => "A20",
            AxiomId::A21 => "A21",
            AxiomId::A22 => "A22",
        }
    }

    /// True if the schema belongs to the variant's axiom system.  The plain
    /// variant uses A1–A11; the chain variant adds A12–A19; the product
    /// variant has all of A1–A22, with extra sort side conditions on A15,
    /// A16 and A18 enforced by [`matches_axiom`].
    pub fn available(self, variant: Variant) -> bool {
        match variant {
            Variant::Lae => self <= AxiomId::A11,
            Variant::Laec => self <= AxiomId::A19,
            Variant::Laepc => true,
        }
    }

    /// The reflexive-closure schema along `dir`.
    pub fn a12(dir: DiamondDir) -> AxiomId {
        match dir {
            DiamondDir::Le => AxiomId::A12a,
            DiamondDir::Ge => AxiomId::A12b,
        }
    }

    /// The idempotence schema along `dir`.
    pub fn a13(dir: DiamondDir) -> AxiomId {
        match dir {
            DiamondDir::Le => AxiomId::A13a,
            DiamondDir::Ge => AxiomId::A13b,
        }
    }

    /// The strictness schema along `dir`.
    pub fn a14(dir: DiamondDir) -> AxiomId {
        match dir {
            DiamondDir::Le => AxiomId::A14a,
            DiamondDir::Ge => AxiomId::A14b,
        }
    }

    /// The comparability schema along `dir`.
    pub fn a15(dir: DiamondDir) -> AxiomId {
        match dir {
            DiamondDir::Le => AxiomId::A15a,
            DiamondDir::Ge => AxiomId::A15b,
        }
    }

    /// The monotonicity schema along `dir`.
    pub fn a17(dir: DiamondDir) -> AxiomId {
        match dir {
            DiamondDir::Le => AxiomId::A17a,
            DiamondDir::Ge => AxiomId::A17b,
        }
    }

    /// The mirror-closure schema whose named diamond is along `dir`.
    pub fn a18(dir: DiamondDir) -> AxiomId {
        match dir {
            DiamondDir::Le => AxiomId::A18a,
            DiamondDir::Ge => AxiomId::A18b,
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Error for an axiom id that names no schema.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown axiom id `{0}`")]
pub struct UnknownAxiom(pub String);

impl FromStr for AxiomId {
    type Err = UnknownAxiom;

    fn from_str(s: &str) -> Result<AxiomId, UnknownAxiom> {
        if s == "A1'" {
            return Ok(AxiomId::A1);
        }
        AxiomId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| UnknownAxiom(s.to_string()))
    }
}

// ---- formula decomposition helpers ---------------------------------------

fn check(cond: bool) -> Option<()> {
    cond.then_some(())
}

fn atom(f: &OuterFormula) -> Option<&GradedImplication> {
    match f {
        OuterFormula::Atom(gi) => Some(gi),
        _ => None,
    }
}

fn o_not(f: &OuterFormula) -> Option<&OuterFormula> {
    match f {
        OuterFormula::Not(g) => Some(g),
        _ => None,
    }
}

fn o_and(f: &OuterFormula) -> Option<(&OuterFormula, &OuterFormula)> {
    match f {
        OuterFormula::And(l, r) => Some((l, r)),
        _ => None,
    }
}

fn o_or(f: &OuterFormula) -> Option<(&OuterFormula, &OuterFormula)> {
    match f {
        OuterFormula::Or(l, r) => Some((l, r)),
        _ => None,
    }
}

fn o_implies(f: &OuterFormula) -> Option<(&OuterFormula, &OuterFormula)> {
    match f {
        OuterFormula::Implies(l, r) => Some((l, r)),
        _ => None,
    }
}

fn o_iff(f: &OuterFormula) -> Option<(&OuterFormula, &OuterFormula)> {
    match f {
        OuterFormula::Iff(l, r) => Some((l, r)),
        _ => None,
    }
}

fn b_not(e: &BasicExpr) -> Option<&BasicExpr> {
    match e {
        BasicExpr::Not(inner) => Some(inner),
        _ => None,
    }
}

fn b_and(e: &BasicExpr) -> Option<(&BasicExpr, &BasicExpr)> {
    match e {
        BasicExpr::And(l, r) => Some((l, r)),
        _ => None,
    }
}

fn b_or(e: &BasicExpr) -> Option<(&BasicExpr, &BasicExpr)> {
    match e {
        BasicExpr::Or(l, r) => Some((l, r)),
        _ => None,
    }
}

fn b_dia(e: &BasicExpr) -> Option<(DiamondDir, &BasicExpr)> {
    match e {
        BasicExpr::Diamond(dir, inner) => Some((*dir, inner)),
        _ => None,
    }
}

/// For `φ ⇒₁ ⊥` returns `φ`.
fn impossible<'a>(gi: &'a GradedImplication, ctx: &LogicCtx) -> Option<&'a BasicExpr> {
    check(gi.grade == ctx.scale.top() && gi.rhs == BasicExpr::Bot)?;
    Some(&gi.lhs)
}

/// True for a conjunction tree whose leaves are all diamond expressions;
/// a single diamond counts as the one-element conjunction.
fn diamond_conjunction(e: &BasicExpr) -> bool {
    match e {
        BasicExpr::Diamond(..) => true,
        BasicExpr::And(l, r) => diamond_conjunction(l) && diamond_conjunction(r),
        _ => false,
    }
}

// ---- per-schema matchers -------------------------------------------------
//
// Each matcher returns `Some(())` exactly when the formula instantiates the
// schema.  Shared slots are compared structurally; grades are compared on
// the context's scale.

/// A1: `φ ⇒₁ ψ` where the atomised `φ → ψ` is a classical tautology.
fn m_a1(f: &OuterFormula, ctx: &LogicCtx) -> Result<bool, SyntaxError> {
    let Some(gi) = atom(f) else { return Ok(false) };
    if gi.grade != ctx.scale.top() {
        return Ok(false);
    }
    basic_implies_tautology(&gi.lhs, &gi.rhs)
}

/// A2: `(φ ⇒₁ ψ) → (φ ∧ ¬ψ ⇒₁ ⊥)`.
fn m_a2(f: &OuterFormula, ctx: &LogicCtx) -> Option<()> {
    let (p, q) = o_implies(f)?;
    let (p, q) = (atom(p)?, atom(q)?);
    check(p.grade == ctx.scale.top())?;
    let body = impossible(q, ctx)?;
    let (l, r) = b_and(body)?;
    check(*l == p.lhs && b_not(r) == Some(&p.rhs))
}

/// A3: `(φ ⇒c ψ) → (φ ⇒d ψ)` with `d ≤ c`.
fn m_a3(f: &OuterFormula) -> Option<()> {
    let (a, b) = o_implies(f)?;
    let (a, b) = (atom(a)?, atom(b)?);
    check(a.lhs == b.lhs && a.rhs == b.rhs && b.grade <= a.grade)
}

/// A4: `¬(ψ ⇒₁ ⊥) → (φ ⇒₀ ψ)`.
fn m_a4(f: &OuterFormula, ctx: &LogicCtx) -> Option<()> {
    let (n, b) = o_implies(f)?;
    let a = atom(o_not(n)?)?;
    let psi = impossible(a, ctx)?;
    let b = atom(b)?;
    check(b.grade == ctx.scale.bot() && b.rhs == *psi)
}

/// A5: `(φ ⇒c ⊥) → (φ ⇒₁ ⊥)`.
fn m_a5(f: &OuterFormula, ctx: &LogicCtx) -> Option<()> {
    let (a, b) = o_implies(f)?;
    let (a, b) = (atom(a)?, atom(b)?);
    let phi = impossible(b, ctx)?;
    check(a.rhs == BasicExpr::Bot && a.lhs == *phi)
}

/// A6: `¬(δ ⇒₁ ⊥) ∧ (δ ⇒c ε) → (ε ⇒c δ)` for m.e.c.s `δ`, `ε`.
fn m_a6(f: &OuterFormula, ctx: &LogicCtx) -> Option<()> {
    let (ante, c) = o_implies(f)?;
    let (n, a) = o_and(ante)?;
    let n = atom(o_not(n)?)?;
    let (a, c) = (atom(a)?, atom(c)?);
    let delta = impossible(n, ctx)?;
    check(a.lhs == *delta && c.lhs == a.rhs && c.rhs == *delta && c.grade == a.grade)?;
    check(is_mec(delta, ctx).is_some() && is_mec(&a.rhs, ctx).is_some())
}

/// A7: `(φ ⇒c χ) ∧ (ψ ⇒c χ) → (φ ∨ ψ ⇒c χ)`.
fn m_a7(f: &OuterFormula) -> Option<()> {
    let (ante, c) = o_implies(f)?;
    let (a, b) = o_and(ante)?;
    let (a, b, c) = (atom(a)?, atom(b)?, atom(c)?);
    check(a.rhs == b.rhs && a.grade == b.grade)?;
    check(c.rhs == a.rhs && c.grade == a.grade)?;
    let (l, r) = b_or(&c.lhs)?;
    check(*l == a.lhs && *r == b.lhs)
}

/// A8: `(ε ⇒c φ ∨ ψ) → (ε ⇒c φ) ∨ (ε ⇒c ψ)` for an m.e.c. `ε`.
fn m_a8(f: &OuterFormula, ctx: &LogicCtx) -> Option<()> {
    let (a, disj) = o_implies(f)?;
    let a = atom(a)?;
    let (b, c) = o_or(disj)?;
    let (b, c) = (atom(b)?, atom(c)?);
    let (phi, psi) = b_or(&a.rhs)?;
    check(b.lhs == a.lhs && c.lhs == a.lhs)?;
    check(b.grade == a.grade && c.grade == a.grade)?;
    check(b.rhs == *phi && c.rhs == *psi)?;
    check(is_mec(&a.lhs, ctx).is_some())
}

/// A9: `(φ ⇒c ψ) ∧ (ψ ⇒d χ) → (φ ⇒{c⊙d} χ)`.
fn m_a9(f: &OuterFormula, ctx: &LogicCtx) -> Option<()> {
    let (ante, c) = o_implies(f)?;
    let (a, b) = o_and(ante)?;
    let (a, b, c) = (atom(a)?, atom(b)?, atom(c)?);
    check(b.lhs == a.rhs && c.lhs == a.lhs && c.rhs == b.rhs)?;
    check(c.grade == ctx.scale.combine(a.grade, b.grade))
}

/// A10: `¬(⊤ ⇒₁ ⊥)`.
fn m_a10(f: &OuterFormula, ctx: &LogicCtx) -> Option<()> {
    let gi = atom(o_not(f)?)?;
    let top = impossible(gi, ctx)?;
    check(*top == BasicExpr::Top)
}

/// A12: `φ ⇒₁ ◇φ`.
fn m_a12(f: &OuterFormula, ctx: &LogicCtx, dir: DiamondDir) -> Option<()> {
    let gi = atom(f)?;
    check(gi.grade == ctx.scale.top())?;
    let (d, inner) = b_dia(&gi.rhs)?;
    check(d == dir && *inner == gi.lhs)
}

/// A13: `◇◇φ ⇒₁ ◇φ` (same direction throughout).
fn m_a13(f: &OuterFormula, ctx: &LogicCtx, dir: DiamondDir) -> Option<()> {
    let gi = atom(f)?;
    check(gi.grade == ctx.scale.top())?;
    let (d_outer, inner) = b_dia(&gi.lhs)?;
    let (d_rhs, _) = b_dia(&gi.rhs)?;
    check(d_outer == dir && d_rhs == dir && *inner == gi.rhs)
}

/// A14: `◇⊥ ⇒₁ ⊥`.
fn m_a14(f: &OuterFormula, ctx: &LogicCtx, dir: DiamondDir) -> Option<()> {
    let gi = atom(f)?;
    let body = impossible(gi, ctx)?;
    check(b_dia(body) == Some((dir, &BasicExpr::Bot)))
}

/// A15: `(◇φ ⇒₁ ◇ψ) ∨ (◇ψ ⇒₁ ◇φ)` (same direction throughout).  In the
/// product variant `φ` and `ψ` must share one single sort.
fn m_a15(f: &OuterFormula, ctx: &LogicCtx, dir: DiamondDir) -> Option<()> {
    let (a, b) = o_or(f)?;
    let (a, b) = (atom(a)?, atom(b)?);
    check(a.grade == ctx.scale.top() && b.grade == ctx.scale.top())?;
    let (dl, phi) = b_dia(&a.lhs)?;
    let (dr, psi) = b_dia(&a.rhs)?;
    check(dl == dir && dr == dir)?;
    check(b.lhs == a.rhs && b.rhs == a.lhs)?;
    check(ctx.variant != Variant::Laepc || same_sort(phi, psi, &ctx.sig))
}

/// A16: `◇≤ε ∧ ◇≥ε ⇒₁ ε` for an m.e.c. `ε` — one-sorted in the product
/// variant, full otherwise.
fn m_a16(f: &OuterFormula, ctx: &LogicCtx) -> Option<()> {
    let gi = atom(f)?;
    check(gi.grade == ctx.scale.top())?;
    let (l, r) = b_and(&gi.lhs)?;
    check(b_dia(l) == Some((DiamondDir::Le, &gi.rhs)))?;
    check(b_dia(r) == Some((DiamondDir::Ge, &gi.rhs)))?;
    match ctx.variant {
        Variant::Laepc => check(is_one_sorted_mec(&gi.rhs, ctx).is_some()),
        _ => check(is_mec(&gi.rhs, ctx).is_some()),
    }
}

/// A17: `(φ ⇒c ψ) → (◇φ ⇒c ◇ψ)` (same direction on both sides).
fn m_a17(f: &OuterFormula, dir: DiamondDir) -> Option<()> {
    let (a, b) = o_implies(f)?;
    let (a, b) = (atom(a)?, atom(b)?);
    check(b.grade == a.grade)?;
    check(b_dia(&b.lhs) == Some((dir, &a.lhs)))?;
    check(b_dia(&b.rhs) == Some((dir, &a.rhs)))
}

/// A18: `(φ ∧ ◇ψ ⇒₁ ⊥) → (◇'φ ∧ ◇ψ ⇒₁ ⊥)` where `◇'` is the mirror image
/// of `◇`; `dir` is the diamond on `ψ`.  In the product variant `φ` must be
/// one-sorted.
fn m_a18(f: &OuterFormula, ctx: &LogicCtx, dir: DiamondDir) -> Option<()> {
    let (a, b) = o_implies(f)?;
    let (a, b) = (atom(a)?, atom(b)?);
    let ante = impossible(a, ctx)?;
    let cons = impossible(b, ctx)?;
    let (phi, dpsi) = b_and(ante)?;
    let (d, _) = b_dia(dpsi)?;
    check(d == dir)?;
    let (dphi, dpsi2) = b_and(cons)?;
    check(b_dia(dphi) == Some((dir.flip(), phi)) && dpsi2 == dpsi)?;
    check(ctx.variant != Variant::Laepc || one_sorted(phi, &ctx.sig))
}

/// A19: `¬(ρ ∧ σ ⇒₁ ⊥) ∧ (φ ⇒c ρ) ∧ (φ ⇒c σ) → (φ ⇒c ρ ∧ σ)` where `ρ`
/// and `σ` are conjunctions of diamond expressions.
fn m_a19(f: &OuterFormula, ctx: &LogicCtx) -> Option<()> {
    let (ante, c) = o_implies(f)?;
    let (na, b) = o_and(ante)?;
    let (n, a) = o_and(na)?;
    let n = atom(o_not(n)?)?;
    let (a, b, c) = (atom(a)?, atom(b)?, atom(c)?);
    let body = impossible(n, ctx)?;
    let (rho, sigma) = b_and(body)?;
    check(a.rhs == *rho && b.rhs == *sigma)?;
    check(b.lhs == a.lhs && b.grade == a.grade)?;
    check(c.lhs == a.lhs && c.grade == a.grade && c.rhs == *body)?;
    check(diamond_conjunction(rho) && diamond_conjunction(sigma))
}

/// A20: `¬(φ ∧ φ′ ⇒₁ ⊥) → ((φ ⇒c ψ) ∧ (φ′ ⇒c ψ′) ↔ (φ ∧ φ′ ⇒c ψ ∧ ψ′))`
/// where `φ ∧ ψ` and `φ′ ∧ ψ′` are disjoint-sorted.
fn m_a20(f: &OuterFormula, ctx: &LogicCtx) -> Option<()> {
    let (n, iff) = o_implies(f)?;
    let n = atom(o_not(n)?)?;
    let body = impossible(n, ctx)?;
    let (phi, phi2) = b_and(body)?;
    let (conj, c) = o_iff(iff)?;
    let (a, b) = o_and(conj)?;
    let (a, b, c) = (atom(a)?, atom(b)?, atom(c)?);
    check(a.lhs == *phi && b.lhs == *phi2 && b.grade == a.grade)?;
    check(c.lhs == *body && c.grade == a.grade)?;
    let (psi, psi2) = b_and(&c.rhs)?;
    check(*psi == a.rhs && *psi2 == b.rhs)?;
    let mut left = sorts_of(phi, &ctx.sig)?;
    left.extend(sorts_of(&a.rhs, &ctx.sig)?);
    let mut right = sorts_of(phi2, &ctx.sig)?;
    right.extend(sorts_of(&b.rhs, &ctx.sig)?);
    check(left.is_disjoint(&right))
}

/// A21: `(◇φ ∧ χ ∧ ψ ⇒₁ ⊥) → (◇φ ∧ χ ⇒₁ ⊥) ∨ (◇φ ∧ ψ ⇒₁ ⊥)` in either
/// diamond direction, where `χ` and `ψ` are disjoint-sorted.
fn m_a21(f: &OuterFormula, ctx: &LogicCtx) -> Option<()> {
    let (n, disj) = o_implies(f)?;
    let n = atom(n)?;
    let (p, q) = o_or(disj)?;
    let (p, q) = (atom(p)?, atom(q)?);
    let body = impossible(n, ctx)?;
    let (dchi, psi) = b_and(body)?;
    let (dphi, chi) = b_and(dchi)?;
    b_dia(dphi)?;
    check(impossible(p, ctx)? == dchi)?;
    let (qd, qpsi) = b_and(impossible(q, ctx)?)?;
    check(qd == dphi && qpsi == psi)?;
    check(disjoint_sorted(chi, psi, &ctx.sig))
}

/// A22: `(ε ⇒₁ α) ∨ (ε ⇒₁ ¬α)` for an m.e.c. `ε` and an unsorted
/// variable `α`.
fn m_a22(f: &OuterFormula, ctx: &LogicCtx) -> Option<()> {
    let (a, b) = o_or(f)?;
    let (a, b) = (atom(a)?, atom(b)?);
    let top = ctx.scale.top();
    check(a.grade == top && b.grade == top && a.lhs == b.lhs)?;
    check(b_not(&b.rhs) == Some(&a.rhs))?;
    let BasicExpr::Var(v) = a.rhs else {
        return None;
    };
    check(ctx.sig.sort_of(v).is_none())?;
    check(is_mec(&a.lhs, ctx).is_some())
}

// ---- recognition ---------------------------------------------------------

/// Tests whether `f` instantiates the schema `id` under the context's
/// variant, scale and signature.  A schema outside the variant's axiom
/// system never matches.  The formula is assumed well-formed for the
/// context (see [`OuterFormula::validate`]).
///
/// # Errors
///
/// Propagates the tautology oracle's resource limit (`A1` and `A11` count
/// distinct atoms).
pub fn matches_axiom(id: AxiomId, f: &OuterFormula, ctx: &LogicCtx) -> Result<bool, SyntaxError> {
    if !id.available(ctx.variant) {
        return Ok(false);
    }
    use DiamondDir::{Ge, Le};
    let hit = match id {
        AxiomId::A1 => return m_a1(f, ctx),
        AxiomId::A11 => return outer_tautology(f),
        AxiomId::A2 => m_a2(f, ctx),
        AxiomId::A3 => m_a3(f),
        AxiomId::A4 => m_a4(f, ctx),
        AxiomId::A5 => m_a5(f, ctx),
        AxiomId::A6 => m_a6(f, ctx),
        AxiomId::A7 => m_a7(f),
        AxiomId::A8 => m_a8(f, ctx),
        AxiomId::A9 => m_a9(f, ctx),
        AxiomId::A10 => m_a10(f, ctx),
        AxiomId::A12a => m_a12(f, ctx, Le),
        AxiomId::A12b => m_a12(f, ctx, Ge),
        AxiomId::A13a => m_a13(f, ctx, Le),
        AxiomId::A13b => m_a13(f, ctx, Ge),
        AxiomId::A14a => m_a14(f, ctx, Le),
        AxiomId::A14b => m_a14(f, ctx, Ge),
        AxiomId::A15a => m_a15(f, ctx, Le),
        AxiomId::A15b => m_a15(f, ctx, Ge),
        AxiomId::A16 => m_a16(f, ctx),
        AxiomId::A17a => m_a17(f, Le),
        AxiomId::A17b => m_a17(f, Ge),
        AxiomId::A18a => m_a18(f, ctx, Le),
        AxiomId::A18b => m_a18(f, ctx, Ge),
        AxiomId::A19 => m_a19(f, ctx),
        AxiomId::A20 => m_a20(f, ctx),
        AxiomId::A21 => m_a21(f, ctx),
        AxiomId::A22 => m_a22(f, ctx),
    };
    Ok(hit.is_some())
}

/// Classifies `f` as the first schema it instantiates, scanning
/// [`AxiomId::ALL`] in order, so the answer is deterministic even for
/// formulas that instantiate several schemas (for example, an `A3` instance
/// with equal grades is also an `A11` instance).  Returns `None` when no
/// schema of the variant's system matches.
///
/// # Errors
///
/// Propagates the tautology oracle's resource limit.
pub fn recognize_axiom(f: &OuterFormula, ctx: &LogicCtx) -> Result<Option<AxiomId>, SyntaxError> {
    for id in AxiomId::ALL {
        if matches_axiom(id, f, ctx)? {
            return Ok(Some(id));
        }
    }
    Ok(None)
}

// ---- proof scripts -------------------------------------------------------

/// The claimed ground for one proof line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    /// An instance of the named schema.
    Axiom(AxiomId),
    /// Copy of a theory member; the index is 1-based, matching the way
    /// hypotheses are numbered in proof files.
    Hyp(usize),
    /// Modus ponens from two earlier lines (1-based), in either order: one
    /// names the implication, the other its antecedent.
    Mp(usize, usize),
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom(id) => write!(f, "axiom {id}"),
            Justification::Hyp(k) => write!(f, "hyp {k}"),
            Justification::Mp(i, j) => write!(f, "mp {i} {j}"),
        }
    }
}

/// One numbered line of a proof script.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub formula: OuterFormula,
    pub just: Justification,
    /// Free-text instantiation note; carried for display, never checked.
    pub note: Option<String>,
}

impl ProofLine {
    pub fn new(formula: OuterFormula, just: Justification) -> ProofLine {
        ProofLine { formula, just, note: None }
    }
}

/// A Hilbert-style proof script: lines numbered from 1, each carrying its
/// claimed justification.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProofScript {
    pub lines: Vec<ProofLine>,
}

/// Why and where a script was rejected; `line` is 1-based, with 0 standing
/// for the script as a whole.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {reason}")]
pub struct ProofRejection {
    pub line: usize,
    pub reason: String,
}

fn reject(line: usize, reason: impl Into<String>) -> ProofRejection {
    ProofRejection { line, reason: reason.into() }
}

/// Verifies a proof script against a theory, returning the conclusion (the
/// last line's formula) on success.
///
/// Every line must be well-formed for the context, and its claimed
/// justification must hold: an axiom line must instantiate exactly the
/// schema it names, a hypothesis line must copy the named theory member
/// verbatim, and a modus ponens line must follow from two strictly earlier
/// lines, one of which is an outer implication whose antecedent is the
/// other and whose consequent is this line.  Oracle resource limits are
/// reported as rejections rather than errors.
pub fn check_proof(
    theory: &[OuterFormula],
    script: &ProofScript,
    ctx: &LogicCtx,
) -> Result<OuterFormula, ProofRejection> {
    if script.lines.is_empty() {
        return Err(reject(0, "a proof needs at least one line"));
    }
    for (idx, line) in script.lines.iter().enumerate() {
        let n = idx + 1;
        line.formula
            .validate(ctx)
            .map_err(|e| reject(n, e.to_string()))?;
        match line.just {
            Justification::Axiom(id) => {
                if !id.available(ctx.variant) {
                    return Err(reject(
                        n,
                        format!("axiom {id} is not part of the {} system", ctx.variant),
                    ));
                }
                match matches_axiom(id, &line.formula, ctx) {
                    Ok(true) => {}
                    Ok(false) => return Err(reject(n, format!("not an {id} instance"))),
                    Err(e) => return Err(reject(n, format!("cannot certify {id}: {e}"))),
                }
            }
            Justification::Hyp(k) => {
                let Some(expected) = k.checked_sub(1).and_then(|k| theory.get(k)) else {
                    return Err(reject(
                        n,
                        format!(
                            "hypothesis {k} is out of range (the theory has {} formulas)",
                            theory.len()
                        ),
                    ));
                };
                if line.formula != *expected {
                    return Err(reject(n, format!("line differs from hypothesis {k}")));
                }
            }
            Justification::Mp(i, j) => {
                for k in [i, j] {
                    if k == 0 || k >= n {
                        return Err(reject(
                            n,
                            format!("modus ponens must cite strictly earlier lines, got {k}"),
                        ));
                    }
                }
                let fi = &script.lines[i - 1].formula;
                let fj = &script.lines[j - 1].formula;
                let applies = |major: &OuterFormula, minor: &OuterFormula| {
                    o_implies(major)
                        .is_some_and(|(l, r)| l == minor && *r == line.formula)
                };
                if !applies(fj, fi) && !applies(fi, fj) {
                    return Err(reject(
                        n,
                        format!("line does not follow from lines {i} and {j} by modus ponens"),
                    ));
                }
            }
        }
    }
    Ok(script.lines.last().expect("non-empty").formula.clone())
}
