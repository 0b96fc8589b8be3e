//! Finite similarity spaces: plain, chain-ordered, and products of chains.
//!
//! A space is a finite set of named worlds with a graded similarity `S`
//! drawn from a [`GradeScale`]. `S` is total (1 exactly on the diagonal),
//! symmetric, and transitive with respect to the scale's combining operation:
//! `S(u,v) ⊙ S(v,w) ≤ S(u,w)` for all worlds. Chain spaces additionally carry
//! a total order (the world index order) with which `S` is compatible: among
//! worlds on the same side, similarity never increases with distance. Product
//! spaces are componentwise products of chains, ordered componentwise and
//! with similarity the minimum over components.
//!
//! Sets of worlds are bit sets ([`WorldSet`]); the graded neighborhood
//! operator and the up/downward closure operators (`dle`/`dge` at the syntax
//! level) act on them.

use crate::grades::{Grade, GradeScale};
use crate::syntax::DiamondDir;
use std::fmt;
use thiserror::Error;

/// Hard cap on materialized product-space worlds.
pub const MAX_PRODUCT_WORLDS: usize = 4096;

// ---- world sets ----------------------------------------------------------

/// A set of worlds of one space, as a bit set over world indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WorldSet {
    n: usize,
    bits: Box<[u64]>,
}

impl WorldSet {
    pub fn empty(n: usize) -> WorldSet {
        WorldSet { n, bits: vec![0; n.div_ceil(64)].into_boxed_slice() }
    }

    pub fn full(n: usize) -> WorldSet {
        let mut s = WorldSet::empty(n);
        for w in 0..n {
            s.insert(w);
        }
        s
    }

    pub fn singleton(n: usize, w: usize) -> WorldSet {
        let mut s = WorldSet::empty(n);
        s.insert(w);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, indices: I) -> WorldSet {
        let mut s = WorldSet::empty(n);
        for w in indices {
            s.insert(w);
        }
        s
    }

    /// Size of the universe this set draws from (not the cardinality).
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, w: usize) {
        assert!(w < self.n);
        self.bits[w / 64] |= 1 << (w % 64);
    }

    pub fn remove(&mut self, w: usize) {
        assert!(w < self.n);
        self.bits[w / 64] &= !(1 << (w % 64));
    }

    pub fn contains(&self, w: usize) -> bool {
        w < self.n && self.bits[w / 64] & (1 << (w % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|w| *w == 0)
    }

    fn zip_check(&self, other: &WorldSet) {
        assert_eq!(self.n, other.n, "world sets of different spaces");
    }

    pub fn union(&self, other: &WorldSet) -> WorldSet {
        self.zip_check(other);
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(other.bits.iter()) {
            *a |= b;
        }
        out
    }

    pub fn intersect(&self, other: &WorldSet) -> WorldSet {
        self.zip_check(other);
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(other.bits.iter()) {
            *a &= b;
        }
        out
    }

    pub fn difference(&self, other: &WorldSet) -> WorldSet {
        self.zip_check(other);
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(other.bits.iter()) {
            *a &= !b;
        }
        out
    }

    pub fn complement(&self) -> WorldSet {
        let mut out = WorldSet::full(self.n);
        for (a, b) in out.bits.iter_mut().zip(self.bits.iter()) {
            *a &= !b;
        }
        out
    }

    pub fn is_subset(&self, other: &WorldSet) -> bool {
        self.zip_check(other);
        self.bits.iter().zip(other.bits.iter()).all(|(a, b)| a & !b == 0)
    }

    /// Ascending world indices.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|w| self.contains(*w))
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn max(&self) -> Option<usize> {
        (0..self.n).rev().find(|w| self.contains(*w))
    }

    /// The low 64 bits — the whole set for spaces of up to 64 worlds.
    pub fn low_mask(&self) -> u64 {
        self.bits.first().copied().unwrap_or(0)
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

// ---- validation ----------------------------------------------------------

/// One law violation found while validating a similarity matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceViolation {
    /// `S(w,w)` is not the top grade.
    DiagonalNotTop { world: usize },
    /// `S(u,v) = 1` for distinct worlds: worlds must be separated.
    TopOffDiagonal { u: usize, v: usize },
    /// `S(u,v) != S(v,u)`.
    NotSymmetric { u: usize, v: usize },
    /// `S(u,v) ⊙ S(v,w) > S(u,w)`.
    NotTransitive { u: usize, v: usize, w: usize },
    /// On a chain with `u <= v <= w`: `S(u,w) > S(u,v)` or `S(u,w) > S(v,w)`
    /// — similarity increased with distance.
    NotChainCompatible { u: usize, v: usize, w: usize },
}

impl fmt::Display for SpaceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceViolation::DiagonalNotTop { world } => {
                write!(f, "S(w{world},w{world}) is not 1")
            }
            SpaceViolation::TopOffDiagonal { u, v } => {
                write!(f, "S(w{u},w{v}) = 1 for distinct worlds")
            }
            SpaceViolation::NotSymmetric { u, v } => {
                write!(f, "S(w{u},w{v}) != S(w{v},w{u})")
            }
            SpaceViolation::NotTransitive { u, v, w } => {
                write!(f, "S(w{u},w{v}) (.) S(w{v},w{w}) > S(w{u},w{w})")
            }
            SpaceViolation::NotChainCompatible { u, v, w } => {
                write!(f, "similarity increases with distance across w{u} <= w{v} <= w{w}")
            }
        }
    }
}

/// Errors raised while building a space.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("a space needs at least one world")]
    Empty,
    #[error("expected {expected} similarity entries, got {got}")]
    BadMatrix { expected: usize, got: usize },
    #[error("world index {index} out of range (have {n} worlds)")]
    WorldOutOfRange { index: usize, n: usize },
    #[error("similarity laws violated: {}", list_violations(.violations))]
    Invalid { violations: Vec<SpaceViolation> },
    #[error("product components use different grade scales")]
    ScaleMismatch,
    #[error("product has {got} worlds, more than the supported {cap}")]
    TooManyWorlds { got: usize, cap: usize },
}

fn list_violations(violations: &[SpaceViolation]) -> String {
    let shown: Vec<String> = violations.iter().take(4).map(|v| v.to_string()).collect();
    let mut text = shown.join("; ");
    if violations.len() > 4 {
        text.push_str(&format!("; … plus {} more", violations.len() - 4));
    }
    text
}

// ---- plain spaces --------------------------------------------------------

/// A finite similarity space: named worlds plus a validated similarity
/// matrix over a grade scale.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilaritySpace {
    names: Vec<String>,
    scale: GradeScale,
    sim: Vec<Grade>,
}

impl SimilaritySpace {
    /// Builds a space from a full row-major similarity matrix, validating
    /// every law and reporting all violations found.
    pub fn from_matrix(
        names: Vec<String>,
        scale: GradeScale,
        sim: Vec<Grade>,
    ) -> Result<SimilaritySpace, SpaceError> {
        let n = names.len();
        if n == 0 {
            return Err(SpaceError::Empty);
        }
        if sim.len() != n * n {
            return Err(SpaceError::BadMatrix { expected: n * n, got: sim.len() });
        }
        let space = SimilaritySpace { names, scale, sim };
        let violations = space.violations();
        if violations.is_empty() {
            Ok(space)
        } else {
            Err(SpaceError::Invalid { violations })
        }
    }

    /// Builds a space from off-diagonal entries; unlisted pairs get grade 0,
    /// the diagonal grade 1, and symmetry is filled in (listing both
    /// directions with different grades is caught by validation).
    pub fn from_pairs(
        names: Vec<String>,
        scale: GradeScale,
        pairs: &[(usize, usize, Grade)],
    ) -> Result<SimilaritySpace, SpaceError> {
        let n = names.len();
        if n == 0 {
            return Err(SpaceError::Empty);
        }
        let mut sim = vec![scale.bot(); n * n];
        let mut given = vec![false; n * n];
        for w in 0..n {
            sim[w * n + w] = scale.top();
        }
        for &(u, v, g) in pairs {
            for index in [u, v] {
                if index >= n {
                    return Err(SpaceError::WorldOutOfRange { index, n });
                }
            }
            sim[u * n + v] = g;
            given[u * n + v] = true;
            if !given[v * n + u] {
                sim[v * n + u] = g;
            }
        }
        SimilaritySpace::from_matrix(names, scale, sim)
    }

    /// Builds without validating — for enumerators whose construction already
    /// guarantees the laws. Debug builds still assert them on small spaces
    /// (the check is cubic in the world count).
    pub(crate) fn trusted(names: Vec<String>, scale: GradeScale, sim: Vec<Grade>) -> SimilaritySpace {
        let space = SimilaritySpace { names, scale, sim };
        debug_assert!(
            space.n_worlds() > 64 || space.violations().is_empty(),
            "{:?}",
            space.violations()
        );
        space
    }

    /// All similarity-law violations of the matrix (empty when valid).
    pub fn violations(&self) -> Vec<SpaceViolation> {
        let n = self.n_worlds();
        let mut out = Vec::new();
        for u in 0..n {
            if self.sim(u, u) != self.scale.top() {
                out.push(SpaceViolation::DiagonalNotTop { world: u });
            }
            for v in 0..n {
                if u != v && self.sim(u, v) == self.scale.top() {
                    if u < v {
                        out.push(SpaceViolation::TopOffDiagonal { u, v });
                    }
                    continue;
                }
                if u < v && self.sim(u, v) != self.sim(v, u) {
                    out.push(SpaceViolation::NotSymmetric { u, v });
                }
                for w in 0..n {
                    let via = self.scale.combine(self.sim(u, v), self.sim(v, w));
                    if via > self.sim(u, w) {
                        out.push(SpaceViolation::NotTransitive { u, v, w });
                    }
                }
            }
        }
        out
    }

    pub fn n_worlds(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, w: usize) -> &str {
        &self.names[w]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn scale(&self) -> &GradeScale {
        &self.scale
    }

    pub fn sim(&self, u: usize, v: usize) -> Grade {
        self.sim[u * self.n_worlds() + v]
    }

    /// The graded neighborhood: all worlds at least `c`-similar to some
    /// member of `a`. Always empty for empty `a`; the whole space at grade 0.
    pub fn neighborhood(&self, c: Grade, a: &WorldSet) -> WorldSet {
        let n = self.n_worlds();
        let mut out = WorldSet::empty(n);
        for w in 0..n {
            if a.iter().any(|x| self.sim(w, x) >= c) {
                out.insert(w);
            }
        }
        out
    }

    /// The greatest similarity from `w` into `a`, or `None` for empty `a`.
    pub fn max_sim_into(&self, w: usize, a: &WorldSet) -> Option<Grade> {
        a.iter().map(|x| self.sim(w, x)).max()
    }
}

// ---- chain spaces --------------------------------------------------------

/// A totally ordered similarity space: the world order *is* the index order,
/// and similarity is compatible with it (no increase with distance).
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpace {
    base: SimilaritySpace,
}

impl ChainSpace {
    pub fn from_matrix(
        names: Vec<String>,
        scale: GradeScale,
        sim: Vec<Grade>,
    ) -> Result<ChainSpace, SpaceError> {
        ChainSpace::promote(SimilaritySpace::from_matrix(names, scale, sim)?)
    }

    pub fn from_pairs(
        names: Vec<String>,
        scale: GradeScale,
        pairs: &[(usize, usize, Grade)],
    ) -> Result<ChainSpace, SpaceError> {
        ChainSpace::promote(SimilaritySpace::from_pairs(names, scale, pairs)?)
    }

    /// Imposes the index order on an already valid similarity space.
    pub fn promote(base: SimilaritySpace) -> Result<ChainSpace, SpaceError> {
        let violations = chain_violations(&base);
        if violations.is_empty() {
            Ok(ChainSpace { base })
        } else {
            Err(SpaceError::Invalid { violations })
        }
    }

    pub fn base(&self) -> &SimilaritySpace {
        &self.base
    }

    pub fn n_worlds(&self) -> usize {
        self.base.n_worlds()
    }

    /// Worlds at or below / at or above some member of `a`: a prefix up to
    /// `max a`, or a suffix from `min a`. Empty input, empty output.
    pub fn closure(&self, dir: DiamondDir, a: &WorldSet) -> WorldSet {
        let n = self.n_worlds();
        match dir {
            DiamondDir::Le => match a.max() {
                None => WorldSet::empty(n),
                Some(hi) => WorldSet::from_indices(n, 0..=hi),
            },
            DiamondDir::Ge => match a.min() {
                None => WorldSet::empty(n),
                Some(lo) => WorldSet::from_indices(n, lo..n),
            },
        }
    }

    /// The closed interval of chain positions, as a set.
    pub fn interval(&self, lo: usize, hi: usize) -> WorldSet {
        let n = self.n_worlds();
        WorldSet::from_indices(n, lo..=hi.min(n.saturating_sub(1)))
    }
}

fn chain_violations(base: &SimilaritySpace) -> Vec<SpaceViolation> {
    let n = base.n_worlds();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u..n {
            for w in v..n {
                let far = base.sim(u, w);
                if far > base.sim(u, v) || far > base.sim(v, w) {
                    out.push(SpaceViolation::NotChainCompatible { u, v, w });
                }
            }
        }
    }
    out
}

// ---- product spaces ------------------------------------------------------

/// A product of chain spaces: worlds are tuples of component worlds, ordered
/// componentwise, with similarity the minimum of componentwise similarities.
/// The full product is materialized up front (capped at
/// [`MAX_PRODUCT_WORLDS`]).
#[derive(Debug, Clone, PartialEq)]
pub struct ProductSpace {
    components: Vec<ChainSpace>,
    /// Strides into the materialized world list; the last component varies
    /// fastest.
    strides: Vec<usize>,
    base: SimilaritySpace,
}

impl ProductSpace {
    pub fn new(components: Vec<ChainSpace>) -> Result<ProductSpace, SpaceError> {
        if components.is_empty() {
            return Err(SpaceError::Empty);
        }
        let scale = components[0].base().scale().clone();
        if components.iter().any(|c| c.base().scale() != &scale) {
            return Err(SpaceError::ScaleMismatch);
        }
        let mut total = 1usize;
        for c in &components {
            total = total.saturating_mul(c.n_worlds());
            if total > MAX_PRODUCT_WORLDS {
                return Err(SpaceError::TooManyWorlds { got: total, cap: MAX_PRODUCT_WORLDS });
            }
        }
        let k = components.len();
        let mut strides = vec![1usize; k];
        for i in (0..k.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * components[i + 1].n_worlds();
        }
        let mut names = Vec::with_capacity(total);
        let mut tuples = Vec::with_capacity(total);
        for index in 0..total {
            let mut tuple = vec![0usize; k];
            Self::decode(&components, &strides, index, &mut tuple);
            let parts: Vec<&str> =
                tuple.iter().zip(&components).map(|(w, c)| c.base().name(*w)).collect();
            names.push(format!("({})", parts.join(",")));
            tuples.push(tuple);
        }
        let mut sim = vec![scale.top(); total * total];
        for u in 0..total {
            for v in 0..total {
                let g = tuples[u]
                    .iter()
                    .zip(&tuples[v])
                    .zip(&components)
                    .map(|((a, b), c)| c.base().sim(*a, *b))
                    .min()
                    .expect("at least one component");
                sim[u * total + v] = g;
            }
        }
        // The componentwise construction preserves every similarity law, so
        // the base can be trusted; debug builds re-check.
        Ok(ProductSpace { components, strides, base: SimilaritySpace::trusted(names, scale, sim) })
    }

    fn decode(components: &[ChainSpace], strides: &[usize], index: usize, out: &mut [usize]) {
        for (i, stride) in strides.iter().enumerate() {
            out[i] = (index / stride) % components[i].n_worlds();
        }
    }

    pub fn base(&self) -> &SimilaritySpace {
        &self.base
    }

    pub fn components(&self) -> &[ChainSpace] {
        &self.components
    }

    pub fn n_worlds(&self) -> usize {
        self.base.n_worlds()
    }

    /// The world index of a tuple of component world indices.
    pub fn index_of_tuple(&self, tuple: &[usize]) -> usize {
        assert_eq!(tuple.len(), self.components.len());
        tuple
            .iter()
            .zip(&self.strides)
            .zip(&self.components)
            .map(|((w, stride), c)| {
                assert!(*w < c.n_worlds());
                w * stride
            })
            .sum()
    }

    /// The tuple of component world indices behind a world index.
    pub fn tuple_of(&self, index: usize) -> Vec<usize> {
        let mut out = vec![0; self.components.len()];
        Self::decode(&self.components, &self.strides, index, &mut out);
        out
    }

    /// All worlds whose `i`-th component lies in `b` (a set of component-`i`
    /// worlds).
    pub fn cylinder(&self, i: usize, b: &WorldSet) -> WorldSet {
        assert_eq!(b.universe(), self.components[i].n_worlds());
        let mut out = WorldSet::empty(self.n_worlds());
        for w in 0..self.n_worlds() {
            if b.contains(self.component_of(w, i)) {
                out.insert(w);
            }
        }
        out
    }

    fn component_of(&self, index: usize, i: usize) -> usize {
        (index / self.strides[i]) % self.components[i].n_worlds()
    }

    /// The orthotope with the given closed component intervals.
    pub fn orthotope(&self, intervals: &[(usize, usize)]) -> WorldSet {
        assert_eq!(intervals.len(), self.components.len());
        let mut out = WorldSet::full(self.n_worlds());
        for (i, (lo, hi)) in intervals.iter().enumerate() {
            out = out.intersect(&self.cylinder(i, &self.components[i].interval(*lo, *hi)));
        }
        out
    }

    /// Componentwise up/downward closure: a world belongs to the closure of
    /// `a` when *each* of its components is at-or-below (`Le`) respectively
    /// at-or-above (`Ge`) that component of *some* member of `a` — the
    /// members covering the components may differ.  The result is the
    /// orthotope spanned by the componentwise extrema of `a`'s projections.
    pub fn closure(&self, dir: DiamondDir, a: &WorldSet) -> WorldSet {
        if a.is_empty() {
            return WorldSet::empty(self.n_worlds());
        }
        let intervals: Vec<(usize, usize)> = (0..self.components.len())
            .map(|i| {
                let proj = a.iter().map(|w| self.component_of(w, i));
                match dir {
                    DiamondDir::Le => (0, proj.max().expect("non-empty")),
                    DiamondDir::Ge => {
                        (proj.min().expect("non-empty"), self.components[i].n_worlds() - 1)
                    }
                }
            })
            .collect();
        self.orthotope(&intervals)
    }
}

// ---- unified view --------------------------------------------------------

/// Any of the three space shapes, with shared dispatch for the operations
/// the satisfaction relation needs.
#[derive(Debug, Clone, PartialEq)]
pub enum Space {
    Plain(SimilaritySpace),
    Chain(ChainSpace),
    Product(ProductSpace),
}

impl Space {
    pub fn base(&self) -> &SimilaritySpace {
        match self {
            Space::Plain(s) => s,
            Space::Chain(c) => c.base(),
            Space::Product(p) => p.base(),
        }
    }

    pub fn n_worlds(&self) -> usize {
        self.base().n_worlds()
    }

    pub fn scale(&self) -> &GradeScale {
        self.base().scale()
    }

    pub fn neighborhood(&self, c: Grade, a: &WorldSet) -> WorldSet {
        self.base().neighborhood(c, a)
    }

    /// The ordered closure operator, if the space carries an order.
    pub fn closure(&self, dir: DiamondDir, a: &WorldSet) -> Option<WorldSet> {
        match self {
            Space::Plain(_) => None,
            Space::Chain(c) => Some(c.closure(dir, a)),
            Space::Product(p) => Some(p.closure(dir, a)),
        }
    }

    /// A short label for error messages.
    pub fn kind_name(&self) -> &'static str {
        match self {
            Space::Plain(_) => "plain",
            Space::Chain(_) => "chain",
            Space::Product(_) => "product",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grades::GradeScale;

    fn g(i: u8) -> Grade {
        Grade(i)
    }

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn world_set_operations() {
        let mut a = WorldSet::empty(70);
        a.insert(0);
        a.insert(65);
        assert!(a.contains(65) && !a.contains(64));
        assert_eq!(a.len(), 2);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 65]);
        assert_eq!(a.min(), Some(0));
        assert_eq!(a.max(), Some(65));
        let b = WorldSet::from_indices(70, [0, 3]);
        assert_eq!(a.union(&b).len(), 3);
        assert_eq!(a.intersect(&b).iter().collect::<Vec<_>>(), vec![0]);
        assert_eq!(a.difference(&b).iter().collect::<Vec<_>>(), vec![65]);
        assert!(a.intersect(&b).is_subset(&b));
        assert_eq!(a.complement().len(), 68);
        assert_eq!(WorldSet::full(70).len(), 70);
        assert!(WorldSet::empty(70).is_empty());
        a.remove(65);
        assert_eq!(a.len(), 1);
    }

    /// A valid 3-world space over the Łukasiewicz fixture:
    /// S(0,1) = 1/2, S(0,2) = 0, S(1,2) = 1/2 (fine there since
    /// 1/2 (.) 1/2 = 0; min combination would force S(0,2) >= 1/2).
    fn triangle() -> SimilaritySpace {
        SimilaritySpace::from_pairs(
            names(&["u", "v", "w"]),
            GradeScale::lukasiewicz_three(),
            &[(0, 1, g(1)), (1, 2, g(1))],
        )
        .unwrap()
    }

    #[test]
    fn neighborhoods_follow_the_definition() {
        let s = triangle();
        let n = s.n_worlds();
        let a = WorldSet::singleton(n, 0);
        assert_eq!(s.neighborhood(g(2), &a).iter().collect::<Vec<_>>(), vec![0]);
        assert_eq!(s.neighborhood(g(1), &a).iter().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(s.neighborhood(g(0), &a).len(), 3);
        assert!(s.neighborhood(g(0), &WorldSet::empty(n)).is_empty());
        let both = WorldSet::from_indices(n, [0, 2]);
        assert_eq!(s.neighborhood(g(1), &both).len(), 3);
        assert_eq!(s.max_sim_into(2, &a), Some(g(0)));
        assert_eq!(s.max_sim_into(2, &both), Some(g(2)));
        assert_eq!(s.max_sim_into(0, &WorldSet::empty(n)), None);
    }

    #[test]
    fn neighborhood_laws_hold_on_the_fixture() {
        let s = triangle();
        let n = s.n_worlds();
        // Monotone in the set, antitone in the grade, and increasing.
        let sets: Vec<WorldSet> = (0..8u32)
            .map(|mask| WorldSet::from_indices(n, (0..3).filter(|i| mask & (1 << i) != 0)))
            .collect();
        for a in &sets {
            for b in &sets {
                if a.is_subset(b) {
                    for c in s.scale().grades() {
                        assert!(s.neighborhood(c, a).is_subset(&s.neighborhood(c, b)));
                    }
                }
            }
            for c in s.scale().grades() {
                let at_c = s.neighborhood(c, a);
                if !a.is_empty() {
                    assert!(a.is_subset(&at_c), "neighborhoods contain their set");
                }
                for d in s.scale().grades().filter(|d| *d <= c) {
                    assert!(at_c.is_subset(&s.neighborhood(d, a)));
                }
            }
        }
    }

    #[test]
    fn validation_reports_each_broken_law() {
        let scale = GradeScale::godel_three();
        let top = scale.top();
        let bot = scale.bot();
        // Diagonal broken at world 1; top off-diagonal between 0 and 2.
        let sim = vec![top, bot, top, bot, g(1), bot, top, bot, top];
        let err = SimilaritySpace::from_matrix(names(&["a", "b", "c"]), scale.clone(), sim)
            .unwrap_err();
        match err {
            SpaceError::Invalid { violations } => {
                assert!(violations.contains(&SpaceViolation::DiagonalNotTop { world: 1 }));
                assert!(violations.contains(&SpaceViolation::TopOffDiagonal { u: 0, v: 2 }));
            }
            other => panic!("unexpected error {other:?}"),
        }
        // Symmetry broken.
        let sim = vec![top, g(1), bot, top, bot, top];
        let err = SimilaritySpace::from_matrix(names(&["a", "b"]), scale.clone(), sim);
        assert!(matches!(err, Err(SpaceError::BadMatrix { expected: 4, got: 6 })));
        let sim = vec![top, g(1), bot, top];
        let err =
            SimilaritySpace::from_matrix(names(&["a", "b"]), scale.clone(), sim).unwrap_err();
        match err {
            SpaceError::Invalid { violations } => {
                assert_eq!(violations, vec![SpaceViolation::NotSymmetric { u: 0, v: 1 }]);
            }
            other => panic!("unexpected error {other:?}"),
        }
        // Transitivity broken: S(0,1)=S(1,2)=1/2 but S(0,2)=0 under min
        // combination fails, since 1/2 (.) 1/2 = 1/2 > 0.
        let err = SimilaritySpace::from_pairs(
            names(&["a", "b", "c"]),
            scale,
            &[(0, 1, g(1)), (1, 2, g(1)), (0, 2, g(0))],
        );
        match err.unwrap_err() {
            SpaceError::Invalid { violations } => {
                assert!(violations
                    .iter()
                    .any(|v| matches!(v, SpaceViolation::NotTransitive { .. })));
            }
            other => panic!("unexpected error {other:?}"),
        }
        // The same distances are fine under Łukasiewicz combination, where
        // 1/2 (.) 1/2 = 0.
        let ok = SimilaritySpace::from_pairs(
            names(&["a", "b", "c"]),
            GradeScale::lukasiewicz_three(),
            &[(0, 1, g(1)), (1, 2, g(1))],
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn chain_closures_are_prefixes_and_suffixes() {
        // Four positions with Łukasiewicz similarity so that neighbors sit at
        // 1/2 and everything farther at 0.
        let chain = ChainSpace::from_pairs(
            names(&["w0", "w1", "w2", "w3"]),
            GradeScale::lukasiewicz_three(),
            &[(0, 1, g(1)), (1, 2, g(1)), (2, 3, g(1))],
        )
        .unwrap();
        let n = chain.n_worlds();
        let a = WorldSet::from_indices(n, [1, 2]);
        assert_eq!(chain.closure(DiamondDir::Le, &a).iter().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(chain.closure(DiamondDir::Ge, &a).iter().collect::<Vec<_>>(), vec![1, 2, 3]);
        assert!(chain.closure(DiamondDir::Le, &WorldSet::empty(n)).is_empty());
        assert_eq!(chain.interval(1, 2).len(), 2);

        // An order-incompatible matrix: endpoints more similar than
        // neighbors.
        let err = ChainSpace::from_pairs(
            names(&["w0", "w1", "w2"]),
            GradeScale::lukasiewicz_three(),
            &[(0, 2, g(1))],
        );
        match err.unwrap_err() {
            SpaceError::Invalid { violations } => {
                assert!(violations
                    .iter()
                    .any(|v| matches!(v, SpaceViolation::NotChainCompatible { .. })));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    fn two_by_three() -> ProductSpace {
        let scale = GradeScale::godel_three();
        let c0 = ChainSpace::from_pairs(names(&["a0", "a1"]), scale.clone(), &[(0, 1, g(1))])
            .unwrap();
        let c1 = ChainSpace::from_pairs(
            names(&["b0", "b1", "b2"]),
            scale,
            &[(0, 1, g(1)), (1, 2, g(1)), (0, 2, g(1))],
        )
        .unwrap();
        ProductSpace::new(vec![c0, c1]).unwrap()
    }

    #[test]
    fn product_materialization_and_indexing() {
        let p = two_by_three();
        assert_eq!(p.n_worlds(), 6);
        assert_eq!(p.base().name(0), "(a0,b0)");
        assert_eq!(p.base().name(5), "(a1,b2)");
        for w in 0..p.n_worlds() {
            assert_eq!(p.index_of_tuple(&p.tuple_of(w)), w);
        }
        // Similarity is the component minimum.
        let u = p.index_of_tuple(&[0, 0]);
        let v = p.index_of_tuple(&[1, 2]);
        assert_eq!(p.base().sim(u, v), g(1));
        assert_eq!(p.base().sim(u, u), g(2));
    }

    #[test]
    fn product_closures_match_the_cylinder_intersection_form() {
        let p = two_by_three();
        let n = p.n_worlds();
        // The closure of a non-empty set is the intersection over components
        // of the cylinders of the component closures of its projections; in
        // particular it need not be a union of pointwise closures (a two
        // point diagonal spans a full box).
        for mask in 0..1u32 << n {
            let a = WorldSet::from_indices(n, (0..n).filter(|i| mask & (1 << i) != 0));
            for dir in [DiamondDir::Le, DiamondDir::Ge] {
                let direct = p.closure(dir, &a);
                if a.is_empty() {
                    assert!(direct.is_empty());
                    continue;
                }
                let mut via_cylinders = WorldSet::full(n);
                for (i, ci) in p.components().iter().enumerate() {
                    let mut proj = WorldSet::empty(ci.n_worlds());
                    for x in a.iter() {
                        proj.insert(p.tuple_of(x)[i]);
                    }
                    via_cylinders =
                        via_cylinders.intersect(&p.cylinder(i, &ci.closure(dir, &proj)));
                }
                assert_eq!(direct, via_cylinders, "dir {dir:?} mask {mask:#b}");
            }
        }
        let diag = WorldSet::from_indices(
            n,
            [p.index_of_tuple(&[1, 0]), p.index_of_tuple(&[0, 2])],
        );
        assert_eq!(p.closure(DiamondDir::Le, &diag).len(), n);
    }

    #[test]
    fn orthotopes_are_interval_products() {
        let p = two_by_three();
        let box_all = p.orthotope(&[(0, 1), (0, 2)]);
        assert_eq!(box_all.len(), 6);
        let thin = p.orthotope(&[(1, 1), (0, 1)]);
        let expect: Vec<usize> =
            vec![p.index_of_tuple(&[1, 0]), p.index_of_tuple(&[1, 1])];
        assert_eq!(thin.iter().collect::<Vec<_>>(), expect);
    }

    #[test]
    fn product_cap_is_enforced() {
        let scale = GradeScale::lukasiewicz_three();
        let mk = |k: usize| {
            let ns: Vec<String> = (0..k).map(|i| format!("w{i}")).collect();
            let pairs: Vec<(usize, usize, Grade)> =
                (0..k - 1).map(|i| (i, i + 1, g(1))).collect();
            ChainSpace::from_pairs(ns, scale.clone(), &pairs).unwrap()
        };
        // 64^2 = 4096 is allowed, 64^2 * 2 is not.
        let ok = ProductSpace::new(vec![mk(64), mk(64)]);
        assert!(ok.is_ok());
        let err = ProductSpace::new(vec![mk(64), mk(64), mk(2)]);
        assert!(matches!(err, Err(SpaceError::TooManyWorlds { .. })));
    }
}
