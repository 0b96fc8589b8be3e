//! Candidate enumeration for the canonical-model search.
//!
//! Every model is isomorphic (up to world renaming) to one whose worlds are
//! pairwise distinct maximal elementary conjunctions: separation forces
//! distinct membership profiles, and a profile *is* an m.e.c. sign pattern.
//! The search therefore ranges over
//!
//! 1. **world structures** — for each similarity block (the whole space in
//!    the plain and chain variants, one component per sort in the product
//!    variant) an ordered list of distinct m.e.c. patterns; plain blocks use
//!    ascending pattern order (order carries no meaning there), chain blocks
//!    enumerate every permutation because the index order is the chain
//!    order;
//! 2. **fill-ins per structure** — per-block similarity matrices found by a
//!    depth-first search over the off-diagonal entries with incremental
//!    pruning (triangle transitivity, and nested-interval compatibility on
//!    chains), followed by one extension per unsorted variable.
//!
//! Structures are ranked in generation order and fill-ins ranked
//! lexicographically inside each structure, which gives every candidate a
//! deterministic rank that parallel workers can agree on.

use crate::grades::{Grade, GradeScale};
use crate::semantics::{Evaluation, Model};
use crate::spaces::{ChainSpace, ProductSpace, SimilaritySpace, Space, WorldSet};
use crate::syntax::{mec_from_pattern, BasicExpr, DiamondDir, LogicCtx, VarId, Variant};
use std::ops::ControlFlow;

/// The mask-based fast path covers at most this many worlds per candidate;
/// larger structures are skipped and reported as lost coverage.
pub(crate) const MAX_FAST_WORLDS: usize = 64;

const SENTINEL: Grade = Grade(u8::MAX);

/// One independent similarity block of the candidate space.
pub(crate) struct Block {
    /// Variables whose sign pattern names a world of this block.
    pub vars: Vec<VarId>,
    /// Chain blocks enumerate world orders and chain-compatible matrices.
    pub chain: bool,
    /// Largest block size searched (≤ 2^vars).
    pub max_worlds: usize,
}

/// Where a variable's extension comes from during evaluation.
pub(crate) enum VarLoc {
    Sorted { block: usize, pos: usize },
    Unsorted { idx: usize },
}

/// The search plan: blocks, caps, and variable locations.
pub(crate) struct Plan {
    pub blocks: Vec<Block>,
    pub unsorted: Vec<VarId>,
    pub var_locs: Vec<VarLoc>,
    /// True when a block's world cap cuts below 2^vars, so some canonical
    /// structures are out of reach from the start.
    pub world_capped: bool,
    pub max_structures: u64,
    pub max_fills: u64,
}

pub(crate) fn plan(ctx: &LogicCtx, bounds: &super::SearchBounds) -> Result<Plan, String> {
    let mut raw: Vec<(Vec<VarId>, bool)> = Vec::new();
    match ctx.variant {
        Variant::Lae => raw.push((ctx.sig.vars().collect(), false)),
        Variant::Laec => raw.push((ctx.sig.vars().collect(), true)),
        Variant::Laepc => {
            for s in ctx.sig.sort_ids() {
                raw.push((ctx.sig.vars_of_sort(s).to_vec(), true));
            }
        }
    }
    if raw.iter().any(|(v, _)| v.is_empty()) {
        return Err("a sort without variables admits no canonical world names".into());
    }
    if raw.iter().any(|(v, _)| v.len() > 16) {
        return Err("more than 16 variables per block exceeds the m.e.c. pattern width".into());
    }
    let unsorted: Vec<VarId> = ctx.sig.unsorted_vars().collect();
    if bounds.exhaustive {
        if raw.len() > 2 {
            return Err("exhaustive search supports at most 2 sorts".into());
        }
        if raw.iter().any(|(v, _)| v.len() > 3) {
            return Err("exhaustive search supports at most 3 variables per block".into());
        }
        if ctx.scale.len() > 4 {
            return Err("exhaustive search supports at most 4 grade levels".into());
        }
        if !unsorted.is_empty() {
            let wmax: usize = raw.iter().map(|(v, _)| 1usize << v.len()).product();
            if unsorted.len() * wmax > 20 {
                return Err(
                    "exhaustive search over unsorted extensions needs at most 2^20 of them"
                        .into(),
                );
            }
        }
    }
    let mut world_capped = false;
    let blocks: Vec<Block> = raw
        .into_iter()
        .map(|(vars, chain)| {
            let full = 1usize << vars.len();
            let cap = if bounds.exhaustive {
                full
            } else {
                let asked = bounds.max_worlds.unwrap_or(if chain { 4 } else { 8 });
                if asked < full {
                    world_capped = true;
                }
                asked.min(full)
            };
            Block { vars, chain, max_worlds: cap }
        })
        .collect();
    let mut var_locs: Vec<VarLoc> = Vec::with_capacity(ctx.sig.n_vars());
    for v in ctx.sig.vars() {
        let loc = blocks
            .iter()
            .enumerate()
            .find_map(|(b, blk)| {
                blk.vars.iter().position(|bv| *bv == v).map(|pos| VarLoc::Sorted { block: b, pos })
            })
            .or_else(|| {
                unsorted.iter().position(|uv| *uv == v).map(|idx| VarLoc::Unsorted { idx })
            })
            .expect("every variable is in a block or unsorted");
        var_locs.push(loc);
    }
    let (max_structures, max_fills) = if bounds.exhaustive {
        (u64::MAX, u64::MAX)
    } else {
        (bounds.max_world_subsets as u64, bounds.max_sim_assignments as u64)
    };
    Ok(Plan { blocks, unsorted, var_locs, world_capped, max_structures, max_fills })
}

/// An ordered list of distinct m.e.c. patterns for one block.
pub(crate) type Arrangement = Vec<u16>;

/// Generates a block's arrangements in rank order: ascending cardinality,
/// then lexicographic subsets; chain blocks expand each subset into its
/// permutations in lexicographic order. At most `cap` entries are kept; the
/// flag reports whether more existed.
pub(crate) fn block_arrangements(block: &Block, cap: u64) -> (Vec<Arrangement>, bool) {
    let n_mecs = 1usize << block.vars.len();
    let mut out: Vec<Arrangement> = Vec::new();
    let mut truncated = false;
    'outer: for size in 1..=block.max_worlds.min(n_mecs) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if block.chain {
                let mut perm: Vec<u16> = idx.iter().map(|&p| p as u16).collect();
                loop {
                    if out.len() as u64 >= cap {
                        truncated = true;
                        break 'outer;
                    }
                    out.push(perm.clone());
                    if !next_permutation(&mut perm) {
                        break;
                    }
                }
            } else {
                if out.len() as u64 >= cap {
                    truncated = true;
                    break 'outer;
                }
                out.push(idx.iter().map(|&p| p as u16).collect());
            }
            if !next_combination(&mut idx, n_mecs) {
                break;
            }
        }
    }
    (out, truncated)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] != i + n - k {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn next_permutation(a: &mut [u16]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Shape of a product structure: block sizes and world-index arithmetic,
/// with the last block varying fastest (matching product-space strides).
pub(crate) struct Layout {
    pub block_sizes: Vec<usize>,
    pub strides: Vec<usize>,
    pub n_worlds: usize,
}

impl Layout {
    fn new(block_sizes: Vec<usize>) -> Layout {
        let mut strides = vec![1usize; block_sizes.len()];
        for b in (0..block_sizes.len().saturating_sub(1)).rev() {
            strides[b] = strides[b + 1] * block_sizes[b + 1];
        }
        let n_worlds = block_sizes.iter().product();
        Layout { block_sizes, strides, n_worlds }
    }

    /// Component index of world `w` in block `b`.
    pub fn comp(&self, w: usize, b: usize) -> usize {
        (w / self.strides[b]) % self.block_sizes[b]
    }
}

/// A complete candidate: structure, per-block similarity matrices, and
/// unsorted-variable extensions, with its deterministic rank.
pub(crate) struct Candidate<'a> {
    pub structure_rank: u64,
    pub fill_rank: u64,
    pub plan: &'a Plan,
    pub layout: &'a Layout,
    pub arrangements: &'a [&'a Arrangement],
    pub sims: &'a [Vec<Grade>],
    pub unsorted_sets: &'a [u64],
}

impl Candidate<'_> {
    pub fn full_mask(&self) -> u64 {
        let n = self.layout.n_worlds;
        if n == 64 {
            !0
        } else {
            (1u64 << n) - 1
        }
    }

    pub fn var_mask(&self, v: VarId) -> u64 {
        match self.plan.var_locs[v.0 as usize] {
            VarLoc::Unsorted { idx } => self.unsorted_sets[idx],
            VarLoc::Sorted { block, pos } => {
                let k = self.plan.blocks[block].vars.len();
                let mut mask = 0u64;
                for w in 0..self.layout.n_worlds {
                    let pattern = self.arrangements[block][self.layout.comp(w, block)];
                    if pattern & (1 << (k - 1 - pos)) == 0 {
                        mask |= 1 << w;
                    }
                }
                mask
            }
        }
    }

    pub fn basic_mask(&self, e: &BasicExpr) -> u64 {
        match e {
            BasicExpr::Var(v) => self.var_mask(*v),
            BasicExpr::Top => self.full_mask(),
            BasicExpr::Bot => 0,
            BasicExpr::Not(inner) => self.full_mask() & !self.basic_mask(inner),
            BasicExpr::And(l, r) => self.basic_mask(l) & self.basic_mask(r),
            BasicExpr::Or(l, r) => self.basic_mask(l) | self.basic_mask(r),
            BasicExpr::Diamond(dir, inner) => self.diamond_mask(*dir, self.basic_mask(inner)),
        }
    }

    /// Worlds each of whose components lies below (`dle`) or above (`dge`)
    /// that component of some member of `a` — the covering members may
    /// differ per component, so the result is the orthotope spanned by the
    /// componentwise extrema of `a`'s projections.
    fn diamond_mask(&self, dir: DiamondDir, a: u64) -> u64 {
        if a == 0 {
            return 0;
        }
        let blocks = self.layout.block_sizes.len();
        let bound: Vec<usize> = (0..blocks)
            .map(|b| {
                let mut rest = a;
                let mut best = None;
                while rest != 0 {
                    let x = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    let c = self.layout.comp(x, b);
                    best = Some(match (best, dir) {
                        (None, _) => c,
                        (Some(p), DiamondDir::Le) => c.max(p),
                        (Some(p), DiamondDir::Ge) => c.min(p),
                    });
                }
                best.expect("a is non-empty")
            })
            .collect();
        let mut out = 0u64;
        for w in 0..self.layout.n_worlds {
            let covered = (0..blocks).all(|b| {
                let cw = self.layout.comp(w, b);
                match dir {
                    DiamondDir::Le => cw <= bound[b],
                    DiamondDir::Ge => cw >= bound[b],
                }
            });
            if covered {
                out |= 1 << w;
            }
        }
        out
    }

    /// Similarity of two worlds: the componentwise minimum.
    pub fn sim(&self, u: usize, w: usize) -> Grade {
        (0..self.layout.block_sizes.len())
            .map(|b| {
                let n = self.layout.block_sizes[b];
                self.sims[b][self.layout.comp(u, b) * n + self.layout.comp(w, b)]
            })
            .min()
            .expect("at least one block")
    }

    /// Whether every `lhs` world has a `rhs` world at similarity ≥ `grade`.
    pub fn gimp_holds(&self, lhs: u64, grade: Grade, rhs: u64) -> bool {
        let mut l = lhs;
        while l != 0 {
            let w = l.trailing_zeros() as usize;
            l &= l - 1;
            let mut best: Option<Grade> = None;
            let mut r = rhs;
            while r != 0 {
                let x = r.trailing_zeros() as usize;
                r &= r - 1;
                let s = self.sim(w, x);
                if best.map_or(true, |b| s > b) {
                    best = Some(s);
                }
            }
            match best {
                None => return false,
                Some(b) if b < grade => return false,
                Some(_) => {}
            }
        }
        true
    }
}

/// Builds the candidate as a real model through the public constructors.
/// This is the slow, validating route: the mask evaluator and this model
/// must agree, and countermodel verification leans on that.
pub(crate) fn candidate_model(ctx: &LogicCtx, cand: &Candidate) -> Model {
    let plan = cand.plan;
    let names = |b: usize| -> Vec<String> {
        cand.arrangements[b]
            .iter()
            .map(|&pat| ctx.print_basic(&mec_from_pattern(&plan.blocks[b].vars, u64::from(pat))))
            .collect()
    };
    let space = match ctx.variant {
        Variant::Lae => Space::Plain(
            SimilaritySpace::from_matrix(names(0), ctx.scale.clone(), cand.sims[0].clone())
                .expect("canonical plain matrix is valid"),
        ),
        Variant::Laec => Space::Chain(
            ChainSpace::from_matrix(names(0), ctx.scale.clone(), cand.sims[0].clone())
                .expect("canonical chain matrix is valid"),
        ),
        Variant::Laepc => {
            let comps: Vec<ChainSpace> = (0..plan.blocks.len())
                .map(|b| {
                    ChainSpace::from_matrix(names(b), ctx.scale.clone(), cand.sims[b].clone())
                        .expect("canonical component matrix is valid")
                })
                .collect();
            Space::Product(ProductSpace::new(comps).expect("components share the scale"))
        }
    };
    let n = cand.layout.n_worlds;
    let mut eval = Evaluation::empty(ctx.sig.n_vars(), n);
    for v in ctx.sig.vars() {
        let mask = cand.var_mask(v);
        eval.set_var(v, WorldSet::from_indices(n, (0..n).filter(|w| mask & (1 << w) != 0)));
    }
    Model::new(ctx.clone(), space, eval).expect("canonical candidate forms a valid model")
}

/// Visits every candidate whose structure rank is `offset` modulo `stride`,
/// in ascending rank order. Returns whether candidates were skipped because
/// of a cap (structures, fills, or the fast-path world limit).
pub(crate) fn enumerate(
    ctx: &LogicCtx,
    plan: &Plan,
    lists: &[Vec<Arrangement>],
    offset: u64,
    stride: u64,
    visit: &mut dyn FnMut(&Candidate) -> ControlFlow<()>,
) -> bool {
    let mut truncated = false;
    if lists.iter().any(|l| l.is_empty()) {
        return truncated;
    }
    let mut odometer: Vec<usize> = vec![0; lists.len()];
    let mut rank: u64 = 0;
    'structures: loop {
        if rank >= plan.max_structures {
            truncated = true;
            break;
        }
        if rank % stride == offset {
            let arrangement: Vec<&Arrangement> =
                odometer.iter().enumerate().map(|(b, &i)| &lists[b][i]).collect();
            match run_structure(ctx, plan, rank, &arrangement, visit) {
                Flow::Go => {}
                Flow::Cut => truncated = true,
                Flow::Abort => return truncated,
            }
        }
        rank += 1;
        let mut b = lists.len();
        loop {
            if b == 0 {
                break 'structures;
            }
            b -= 1;
            odometer[b] += 1;
            if odometer[b] < lists[b].len() {
                break;
            }
            odometer[b] = 0;
        }
    }
    truncated
}

enum Flow {
    Go,
    /// The structure's fill cap was hit; move to the next structure.
    Cut,
    /// The visitor asked to stop everything.
    Abort,
}

fn run_structure(
    ctx: &LogicCtx,
    plan: &Plan,
    structure_rank: u64,
    arrangement: &[&Arrangement],
    visit: &mut dyn FnMut(&Candidate) -> ControlFlow<()>,
) -> Flow {
    let layout = Layout::new(arrangement.iter().map(|a| a.len()).collect());
    if layout.n_worlds > MAX_FAST_WORLDS {
        return Flow::Cut;
    }
    let mut run = StructureRun {
        scale: &ctx.scale,
        plan,
        layout,
        arrangement,
        pairs: Vec::new(),
        sims: Vec::new(),
        unsorted_sets: vec![0u64; plan.unsorted.len()],
        structure_rank,
        fill_rank: 0,
    };
    for b in 0..plan.blocks.len() {
        let n = run.layout.block_sizes[b];
        run.pairs.push(pairs_by_distance(n));
        let mut m = vec![SENTINEL; n * n];
        for i in 0..n {
            m[i * n + i] = ctx.scale.top();
        }
        run.sims.push(m);
    }
    run.fill_block(0, visit)
}

/// Off-diagonal pairs ordered by distance then left endpoint, so that when
/// `(i, j)` is assigned every strictly shorter pair inside `[i, j]` already
/// is — which is what the chain-compatibility pruning needs.
fn pairs_by_distance(n: usize) -> Vec<(usize, usize)> {
    let mut ps = Vec::new();
    for d in 1..n {
        for i in 0..n - d {
            ps.push((i, i + d));
        }
    }
    ps
}

struct StructureRun<'a> {
    scale: &'a GradeScale,
    plan: &'a Plan,
    layout: Layout,
    arrangement: &'a [&'a Arrangement],
    pairs: Vec<Vec<(usize, usize)>>,
    sims: Vec<Vec<Grade>>,
    unsorted_sets: Vec<u64>,
    structure_rank: u64,
    fill_rank: u64,
}

impl StructureRun<'_> {
    fn fill_block(&mut self, b: usize, visit: &mut dyn FnMut(&Candidate) -> ControlFlow<()>) -> Flow {
        if b == self.plan.blocks.len() {
            return self.fill_unsorted(0, visit);
        }
        self.fill_pair(b, 0, visit)
    }

    fn fill_pair(
        &mut self,
        b: usize,
        p: usize,
        visit: &mut dyn FnMut(&Candidate) -> ControlFlow<()>,
    ) -> Flow {
        if p == self.pairs[b].len() {
            return self.fill_block(b + 1, visit);
        }
        let (i, j) = self.pairs[b][p];
        let n = self.layout.block_sizes[b];
        for v in 0..self.scale.len() - 1 {
            let g = Grade(v as u8);
            if !self.admissible(b, i, j, g) {
                continue;
            }
            self.sims[b][i * n + j] = g;
            self.sims[b][j * n + i] = g;
            match self.fill_pair(b, p + 1, visit) {
                Flow::Go => {}
                f => {
                    self.sims[b][i * n + j] = SENTINEL;
                    self.sims[b][j * n + i] = SENTINEL;
                    return f;
                }
            }
        }
        self.sims[b][i * n + j] = SENTINEL;
        self.sims[b][j * n + i] = SENTINEL;
        Flow::Go
    }

    /// Incremental pruning: triangle transitivity against every third world
    /// whose two other sides are assigned, and on chains the requirement
    /// that a longer interval never exceed the nested intervals one step
    /// shorter.
    fn admissible(&self, b: usize, i: usize, j: usize, g: Grade) -> bool {
        let n = self.layout.block_sizes[b];
        let m = &self.sims[b];
        if self.plan.blocks[b].chain && j > i + 1 && (g > m[i * n + j - 1] || g > m[(i + 1) * n + j])
        {
            return false;
        }
        for k in 0..n {
            if k == i || k == j {
                continue;
            }
            let a = m[i * n + k];
            let c = m[k * n + j];
            if a == SENTINEL || c == SENTINEL {
                continue;
            }
            if g < self.scale.combine(a, c) {
                return false;
            }
            if a < self.scale.combine(g, c) {
                return false;
            }
            if c < self.scale.combine(a, g) {
                return false;
            }
        }
        true
    }

    fn fill_unsorted(
        &mut self,
        u: usize,
        visit: &mut dyn FnMut(&Candidate) -> ControlFlow<()>,
    ) -> Flow {
        if u == self.plan.unsorted.len() {
            return self.leaf(visit);
        }
        let count: u128 = 1u128 << self.layout.n_worlds;
        let mut mask: u128 = 0;
        while mask < count {
            self.unsorted_sets[u] = mask as u64;
            match self.fill_unsorted(u + 1, visit) {
                Flow::Go => {}
                f => return f,
            }
            mask += 1;
        }
        Flow::Go
    }

    fn leaf(&mut self, visit: &mut dyn FnMut(&Candidate) -> ControlFlow<()>) -> Flow {
        if self.fill_rank >= self.plan.max_fills {
            return Flow::Cut;
        }
        let cand = Candidate {
            structure_rank: self.structure_rank,
            fill_rank: self.fill_rank,
            plan: self.plan,
            layout: &self.layout,
            arrangements: self.arrangement,
            sims: &self.sims,
            unsorted_sets: &self.unsorted_sets,
        };
        let flow = visit(&cand);
        self.fill_rank += 1;
        match flow {
            ControlFlow::Continue(()) => Flow::Go,
            ControlFlow::Break(()) => Flow::Abort,
        }
    }
}
