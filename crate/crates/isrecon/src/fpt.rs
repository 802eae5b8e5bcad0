//! Constraint-propagation solver for shortest token sliding and token
//! jumping, parameterized by tokens + length + degeneracy.
//!
//! The solver guesses a sequence `⟨J_0 … J_ℓ'⟩` of covering-family members
//! with `J_0 = S` and `J_ℓ' = T`, then propagates sets of budget
//! constraints `(X, b)` ("the configuration holds exactly `b` tokens inside
//! `X`") forward along the guess. A guess is accepted when T satisfies one
//! of the surviving constraint sets; a witness is then reconstructed by
//! walking parent links backward.

use crate::bits::BitSet;
use crate::covering::CoveringFamily;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::sequence::{validate_sequence, Instance, ReconfigSequence, Rule};
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

pub const DEFAULT_GUESS_CAP: u64 = 10_000_000;

/// A budget constraint: the configuration must contain exactly `budget`
/// tokens inside `support`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    pub support: BitSet,
    pub budget: usize,
}

/// A set of budget constraints, kept in canonical sorted order so equal
/// sets deduplicate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstraintSet {
    pub constraints: Vec<Constraint>,
}

impl ConstraintSet {
    fn canonical(mut constraints: Vec<Constraint>) -> Self {
        constraints.sort();
        ConstraintSet { constraints }
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    fn budget_sum(&self) -> usize {
        self.constraints.iter().map(|c| c.budget).sum()
    }

    fn support_union(&self) -> BitSet {
        let mut u = self.constraints[0].support.clone();
        for c in &self.constraints[1..] {
            u.or_assign(&c.support);
        }
        u
    }
}

/// True iff `|z ∩ X| = b` for every constraint in the set.
pub fn satisfies(z: &VertexSet, cs: &ConstraintSet, n: usize) -> bool {
    let zb = BitSet::from_vertex_set(n, z);
    satisfies_bits(&zb, cs)
}

fn satisfies_bits(z: &BitSet, cs: &ConstraintSet) -> bool {
    cs.constraints.iter().all(|c| c.support.and_count(z) == c.budget)
}

/// Which step-procedure branch spawned a constraint set; drives witness
/// reconstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Slide split of the parent constraint at this index.
    SlideSplit { c_idx: usize },
    /// Token jumps within one of the parent supports; budgets unchanged.
    JumpWithin,
    /// Token jumps out of the indexed support to a fresh vertex.
    JumpFresh { c_idx: usize },
    /// Token jumps from support `from` into support `to`.
    JumpTransfer { from: usize, to: usize },
}

#[derive(Debug, Clone, Copy)]
pub struct ParentLink {
    pub parent: usize,
    pub branch: Branch,
}

#[derive(Debug, Clone)]
pub struct FrontierNode {
    pub cs: ConstraintSet,
    /// All links are retained when duplicate sets merge; reconstruction
    /// uses the first.
    pub parents: Vec<ParentLink>,
}

/// The alternatives alive after step `step`: every constraint set that some
/// reachable configuration inside `J_step` could satisfy.
#[derive(Debug, Clone)]
pub struct Frontier {
    pub step: usize,
    pub nodes: Vec<FrontierNode>,
    /// Constraints generated at this step before infeasibility pruning and
    /// deduplication; the growth-law checks run against this number.
    pub pre_prune_constraints: usize,
}

impl Frontier {
    pub fn total_constraints(&self) -> usize {
        self.nodes.iter().map(|n| n.cs.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Per-run counters for the structural invariants.
#[derive(Debug, Clone, Copy, Default)]
pub struct InvariantStats {
    /// Constraint sets checked against: supports ⊆ J_i, budgets sum to k,
    /// supports pairwise disjoint.
    pub set_checks: u64,
    pub set_violations: u64,
    /// Steps checked against the pre-pruning growth law.
    pub growth_checks: u64,
    pub growth_violations: u64,
}

impl InvariantStats {
    pub fn merge(&mut self, other: &InvariantStats) {
        self.set_checks += other.set_checks;
        self.set_violations += other.set_violations;
        self.growth_checks += other.growth_checks;
        self.growth_violations += other.growth_violations;
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveStats {
    /// Complete guesses evaluated to their final frontier.
    pub guesses: u64,
    /// Frontier step computations (the work measure the budget cap bounds).
    pub steps: u64,
    pub frontier_peak: usize,
    pub invariants: InvariantStats,
}

#[derive(Debug, Clone)]
pub enum OptOutcome {
    Yes(ReconfigSequence),
    No,
    /// The guess budget ran out before the search space was exhausted;
    /// deliberately distinct from `No`.
    BudgetExceeded,
}

#[derive(Debug, Clone)]
pub struct OptReport {
    pub outcome: OptOutcome,
    pub stats: SolveStats,
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Cap on frontier step computations across the whole search.
    pub guess_cap: u64,
    pub threads: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { guess_cap: DEFAULT_GUESS_CAP, threads: 1 }
    }
}

/// Precomputed per-graph masks shared by the step functions.
struct StepContext {
    n: usize,
    k: usize,
    nbr: Vec<BitSet>,
}

impl StepContext {
    fn new(g: &Graph, k: usize) -> Self {
        let n = g.vertex_count();
        let nbr = (0..n).map(|v| BitSet::from_slice(n, g.neighbors(v))).collect();
        StepContext { n, k, nbr }
    }

    /// Open neighborhood of a support as a mask.
    fn neighborhood(&self, support: &BitSet) -> BitSet {
        let mut out = BitSet::empty(self.n);
        for v in support.iter() {
            out.or_assign(&self.nbr[v]);
        }
        out.minus(support)
    }
}

/// Accumulates candidate constraint sets for one step, pruning infeasible
/// ones and merging duplicates.
struct FrontierBuilder {
    nodes: Vec<FrontierNode>,
    index: HashMap<ConstraintSet, usize>,
    pre_prune: usize,
}

impl FrontierBuilder {
    fn new() -> Self {
        FrontierBuilder { nodes: Vec::new(), index: HashMap::new(), pre_prune: 0 }
    }

    fn offer(&mut self, constraints: Vec<Constraint>, link: ParentLink) {
        self.pre_prune += constraints.len();
        // a constraint whose support cannot carry its budget admits no
        // satisfying configuration: drop the whole set now
        if constraints.iter().any(|c| c.support.count() < c.budget) {
            return;
        }
        let cs = ConstraintSet::canonical(constraints);
        match self.index.get(&cs) {
            Some(&i) => self.nodes[i].parents.push(link),
            None => {
                self.index.insert(cs.clone(), self.nodes.len());
                self.nodes.push(FrontierNode { cs, parents: vec![link] });
            }
        }
    }

    fn finish(self, step: usize) -> Frontier {
        Frontier { step, nodes: self.nodes, pre_prune_constraints: self.pre_prune }
    }
}

/// One token-sliding propagation step: for each parent constraint `(X, b)`,
/// the moved token lands in `N(X) ∩ J_i`, `X` keeps budget `b - 1` when
/// positive, and every other constraint is intersected with `J_i`.
pub fn slide_step(g: &Graph, k: usize, prev: &Frontier, j: &VertexSet) -> Result<Frontier> {
    let ctx = StepContext::new(g, k);
    let jb = BitSet::from_vertex_set(ctx.n, j);
    Ok(slide_step_ctx(&ctx, prev, &jb))
}

fn slide_step_ctx(ctx: &StepContext, prev: &Frontier, j: &BitSet) -> Frontier {
    let mut builder = FrontierBuilder::new();
    for (pidx, node) in prev.nodes.iter().enumerate() {
        for (cidx, con) in node.cs.constraints.iter().enumerate() {
            let mut cons = Vec::with_capacity(node.cs.len() + 1);
            if con.budget > 1 {
                cons.push(Constraint { support: con.support.and(j), budget: con.budget - 1 });
            }
            cons.push(Constraint { support: ctx.neighborhood(&con.support).and(j), budget: 1 });
            for (oidx, other) in node.cs.constraints.iter().enumerate() {
                if oidx != cidx {
                    cons.push(Constraint { support: other.support.and(j), budget: other.budget });
                }
            }
            builder.offer(cons, ParentLink { parent: pidx, branch: Branch::SlideSplit { c_idx: cidx } });
        }
    }
    builder.finish(prev.step + 1)
}

/// One token-jumping propagation step. Three families of children per
/// parent set: same-set jumps (all supports intersected, budgets kept),
/// jumps to a fresh vertex of `J_i`, and cross-set transfers moving one
/// budget unit between two supports.
pub fn jump_step(g: &Graph, k: usize, prev: &Frontier, j: &VertexSet) -> Result<Frontier> {
    let ctx = StepContext::new(g, k);
    let jb = BitSet::from_vertex_set(ctx.n, j);
    Ok(jump_step_ctx(&ctx, prev, &jb))
}

fn jump_step_ctx(ctx: &StepContext, prev: &Frontier, j: &BitSet) -> Frontier {
    let mut builder = FrontierBuilder::new();
    for (pidx, node) in prev.nodes.iter().enumerate() {
        let cs = &node.cs;
        let union_all = cs.support_union();

        // same-set jumps
        let c1: Vec<Constraint> = cs
            .constraints
            .iter()
            .map(|c| Constraint { support: c.support.and(j), budget: c.budget })
            .collect();
        builder.offer(c1, ParentLink { parent: pidx, branch: Branch::JumpWithin });

        for (cidx, con) in cs.constraints.iter().enumerate() {
            // jump out of X to a fresh vertex: adjacent to X inside J_i, or
            // anywhere in J_i outside all current supports
            let fresh = ctx.neighborhood(&con.support).and(j).or(&j.minus(&union_all));
            let mut c2 = Vec::with_capacity(cs.len() + 1);
            if con.budget > 1 {
                c2.push(Constraint { support: con.support.and(j), budget: con.budget - 1 });
            }
            c2.push(Constraint { support: fresh, budget: 1 });
            for (oidx, other) in cs.constraints.iter().enumerate() {
                if oidx != cidx {
                    c2.push(Constraint { support: other.support.and(j), budget: other.budget });
                }
            }
            builder.offer(c2, ParentLink { parent: pidx, branch: Branch::JumpFresh { c_idx: cidx } });

            // cross-set transfers
            if cs.len() > 1 {
                for (oidx, other) in cs.constraints.iter().enumerate() {
                    if oidx == cidx {
                        continue;
                    }
                    let mut c3 = Vec::with_capacity(cs.len());
                    for (i, c) in cs.constraints.iter().enumerate() {
                        let budget = if i == cidx {
                            con.budget - 1
                        } else if i == oidx {
                            other.budget + 1
                        } else {
                            c.budget
                        };
                        if budget > 0 {
                            c3.push(Constraint { support: c.support.and(j), budget });
                        }
                    }
                    builder.offer(
                        c3,
                        ParentLink { parent: pidx, branch: Branch::JumpTransfer { from: cidx, to: oidx } },
                    );
                }
            }
        }
    }
    builder.finish(prev.step + 1)
}

fn initial_frontier(ctx: &StepContext, source: &BitSet) -> Frontier {
    Frontier {
        step: 0,
        nodes: vec![FrontierNode {
            cs: ConstraintSet::canonical(vec![Constraint { support: source.clone(), budget: ctx.k }]),
            parents: Vec::new(),
        }],
        pre_prune_constraints: 1,
    }
}

/// Pre-pruning growth factor the step procedures obey: `i + 1` for slides
/// (each parent constraint spawns one child set, sets hold at most `i + 1`
/// constraints) and `i² + 2` for jumps (same-set and transfer children add
/// a per-set and per-pair term).
pub fn growth_factor(rule: Rule, step: usize) -> usize {
    match rule {
        Rule::Slide => step + 1,
        Rule::Jump => step * step + 2,
    }
}

fn check_step_invariants(
    frontier: &Frontier,
    prev_total: usize,
    j: &BitSet,
    k: usize,
    rule: Rule,
    stats: &mut InvariantStats,
) {
    stats.growth_checks += 1;
    if frontier.pre_prune_constraints > growth_factor(rule, frontier.step) * prev_total {
        stats.growth_violations += 1;
        debug_assert!(false, "frontier growth law violated at step {}", frontier.step);
    }
    for node in &frontier.nodes {
        stats.set_checks += 1;
        let ok = check_constraint_set(&node.cs, j, k);
        if !ok {
            stats.set_violations += 1;
            debug_assert!(false, "constraint-set invariant violated at step {}", frontier.step);
        }
    }
}

/// Supports pairwise disjoint, budgets sum to `k`, and the support union
/// lies inside `J_i`.
fn check_constraint_set(cs: &ConstraintSet, j: &BitSet, k: usize) -> bool {
    if cs.budget_sum() != k {
        return false;
    }
    if !cs.support_union().is_subset(j) {
        return false;
    }
    for (i, a) in cs.constraints.iter().enumerate() {
        for b in &cs.constraints[i + 1..] {
            if a.support.intersects(&b.support) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug)]
pub struct GuessRun {
    pub accepted: bool,
    pub frontiers: Vec<Frontier>,
    pub invariants: InvariantStats,
}

/// Propagates a full guess `⟨J_0 … J_m⟩` (with `J_0 = S`, `J_m = T`) and
/// reports whether T satisfies a surviving constraint set.
pub fn run_guess(inst: &Instance, guess: &[VertexSet], rule: Rule) -> Result<GuessRun> {
    if guess.is_empty() {
        return Err(Error::invalid_input("guess must contain at least J_0 = S"));
    }
    if guess[0] != inst.source || guess[guess.len() - 1] != inst.target {
        return Err(Error::invalid_input("guess must start at S and end at T"));
    }
    if rule == Rule::Slide && guess.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid_input("slide guesses cannot repeat consecutive sets"));
    }
    let ctx = StepContext::new(&inst.graph, inst.k);
    let source = BitSet::from_vertex_set(ctx.n, &inst.source);
    let target = BitSet::from_vertex_set(ctx.n, &inst.target);

    let mut invariants = InvariantStats::default();
    let mut frontiers = vec![initial_frontier(&ctx, &source)];
    for step in guess.iter().skip(1) {
        let jb = BitSet::from_vertex_set(ctx.n, step);
        let prev = frontiers.last().unwrap();
        let prev_total = prev.total_constraints();
        let next = match rule {
            Rule::Slide => slide_step_ctx(&ctx, prev, &jb),
            Rule::Jump => jump_step_ctx(&ctx, prev, &jb),
        };
        check_step_invariants(&next, prev_total, &jb, ctx.k, rule, &mut invariants);
        frontiers.push(next);
        if frontiers.last().unwrap().is_empty() {
            break;
        }
    }
    let accepted = frontiers.len() == guess.len()
        && frontiers.last().unwrap().nodes.iter().any(|n| satisfies_bits(&target, &n.cs));
    Ok(GuessRun { accepted, frontiers, invariants })
}

/// Reconstructs a witness from accepted frontiers by walking parent links
/// backwards from `Z_m = T`, undoing one move per step.
pub fn extract_witness(
    frontiers: &[Frontier],
    guess: &[VertexSet],
    g: &Graph,
    rule: Rule,
) -> Result<ReconfigSequence> {
    let n = g.vertex_count();
    let ctx = StepContext::new(g, 0);
    let target = BitSet::from_vertex_set(n, guess.last().ok_or_else(|| Error::invalid_input("empty guess"))?);
    let last = frontiers
        .last()
        .ok_or_else(|| Error::invalid_input("no frontiers"))?;
    let accepted = last
        .nodes
        .iter()
        .position(|node| satisfies_bits(&target, &node.cs))
        .ok_or_else(|| Error::Internal("extract_witness called on a rejected run".into()))?;

    let mut steps_rev: Vec<BitSet> = vec![target.clone()];
    let mut z = target;
    let mut node = &last.nodes[accepted];
    for i in (1..frontiers.len()).rev() {
        let link = node
            .parents
            .first()
            .ok_or_else(|| Error::Internal("frontier node is missing its parent link".into()))?;
        let parent = &frontiers[i - 1].nodes[link.parent];
        let j = BitSet::from_vertex_set(n, &guess[i]);
        let moved = undo_move(&ctx, &z, &parent.cs, link.branch, &j, rule)?;
        if let Some(prev_cfg) = moved {
            debug_assert!(satisfies_bits(&prev_cfg, &parent.cs), "reconstructed configuration violates parent");
            steps_rev.push(prev_cfg.clone());
            z = prev_cfg;
        } else {
            // degenerate same-set branch with every support exactly full:
            // the configuration already satisfies the parent, no move needed
            debug_assert!(satisfies_bits(&z, &parent.cs));
        }
        node = parent;
    }
    steps_rev.reverse();
    let seq = ReconfigSequence::new(steps_rev.iter().map(|b| b.to_vertex_set()).collect());
    if seq.steps[0] != guess[0] {
        return Err(Error::Internal("witness reconstruction did not reach S".into()));
    }
    Ok(seq)
}

/// Computes the configuration one move earlier, or `None` when the step
/// collapses to no move.
fn undo_move(
    ctx: &StepContext,
    z: &BitSet,
    parent: &ConstraintSet,
    branch: Branch,
    j: &BitSet,
    rule: Rule,
) -> Result<Option<BitSet>> {
    let swap = |v: usize, u: usize| {
        let mut out = z.clone();
        out.remove(v);
        out.insert(u);
        out
    };
    match (branch, rule) {
        (Branch::SlideSplit { c_idx }, Rule::Slide) => {
            let x = &parent.constraints[c_idx].support;
            let landing = ctx.neighborhood(x).and(j);
            let v = z
                .and(&landing)
                .first()
                .ok_or_else(|| Error::Internal("slide landing set is unoccupied".into()))?;
            let u = ctx.nbr[v]
                .and(x)
                .first()
                .ok_or_else(|| Error::Internal("slid token has no origin in its support".into()))?;
            Ok(Some(swap(v, u)))
        }
        (Branch::JumpFresh { c_idx }, Rule::Jump) => {
            let x = &parent.constraints[c_idx].support;
            let fresh = ctx.neighborhood(x).and(j).or(&j.minus(&parent.support_union()));
            let v = z
                .and(&fresh)
                .first()
                .ok_or_else(|| Error::Internal("fresh landing set is unoccupied".into()))?;
            let u = x
                .minus(z)
                .first()
                .ok_or_else(|| Error::Internal("jumped token has no origin in its support".into()))?;
            Ok(Some(swap(v, u)))
        }
        (Branch::JumpWithin, Rule::Jump) => {
            for con in &parent.constraints {
                let vpool = z.and(&con.support);
                let upool = con.support.minus(z);
                if let (Some(v), Some(u)) = (vpool.first(), upool.first()) {
                    return Ok(Some(swap(v, u)));
                }
            }
            Ok(None)
        }
        (Branch::JumpTransfer { from, to }, Rule::Jump) => {
            let x = &parent.constraints[from].support;
            let x2 = &parent.constraints[to].support;
            let v = z
                .and(x2)
                .first()
                .ok_or_else(|| Error::Internal("transfer target support is unoccupied".into()))?;
            let u = x
                .minus(z)
                .first()
                .ok_or_else(|| Error::Internal("transfer source support is full".into()))?;
            Ok(Some(swap(v, u)))
        }
        _ => Err(Error::Internal("branch tag does not match the rule".into())),
    }
}

/// Shared mutable search state for one `solve_opt` call.
struct SearchShared {
    steps: AtomicU64,
    guesses: AtomicU64,
    budget_hit: AtomicBool,
    guess_cap: u64,
}

struct SearchLocal {
    stats: SolveStats,
}

/// Shortest-transformation decision with witness extraction. Enumerates
/// guesses in order of increasing length, lexicographically over family
/// indices within a length, sharing common prefixes, so the first accepted
/// witness has minimum length among guessed lengths.
pub fn solve_opt(
    inst: &Instance,
    fam: &CoveringFamily,
    rule: Rule,
    opts: &SolveOptions,
) -> Result<OptReport> {
    let fam = fam.with_members(&inst.graph, &[inst.source.clone(), inst.target.clone()])?;
    let ctx = StepContext::new(&inst.graph, inst.k);
    let n = ctx.n;
    let members: Vec<&VertexSet> = fam.sets().iter().collect();
    let member_bits: Vec<BitSet> = members.iter().map(|m| BitSet::from_vertex_set(n, m)).collect();
    let source = BitSet::from_vertex_set(n, &inst.source);
    let target = BitSet::from_vertex_set(n, &inst.target);

    let shared = SearchShared {
        steps: AtomicU64::new(0),
        guesses: AtomicU64::new(0),
        budget_hit: AtomicBool::new(false),
        guess_cap: opts.guess_cap,
    };
    let mut local = SearchLocal { stats: SolveStats::default() };

    for length in 0..=inst.ell {
        if length == 0 {
            local.stats.guesses += 1;
            if inst.source == inst.target {
                let seq = ReconfigSequence::trivial(inst.source.clone());
                return finish_yes(inst, rule, seq, local.stats, &shared);
            }
            continue;
        }
        let found = if opts.threads > 1 && length >= 2 {
            search_length_parallel(
                inst, &ctx, rule, opts, &shared, &mut local, &members, &member_bits, &source, &target, length,
            )?
        } else {
            let init = initial_frontier(&ctx, &source);
            let mut frontiers = vec![init];
            let mut guess: Vec<usize> = Vec::new();
            dfs(
                inst, &ctx, rule, &shared, &mut local, &members, &member_bits, &source, &target, length,
                &mut frontiers, &mut guess,
            )?
        };
        if let Some(seq) = found {
            return finish_yes(inst, rule, seq, local.stats, &shared);
        }
        if shared.budget_hit.load(Ordering::Relaxed) {
            sync_stats(&mut local.stats, &shared);
            return Ok(OptReport { outcome: OptOutcome::BudgetExceeded, stats: local.stats });
        }
    }
    sync_stats(&mut local.stats, &shared);
    Ok(OptReport { outcome: OptOutcome::No, stats: local.stats })
}

fn finish_yes(
    inst: &Instance,
    rule: Rule,
    seq: ReconfigSequence,
    mut stats: SolveStats,
    shared: &SearchShared,
) -> Result<OptReport> {
    sync_stats(&mut stats, shared);
    // every yes answer ships a validator-accepted sequence
    if let Err(v) = validate_sequence(inst, &seq, rule) {
        return Err(Error::Internal(format!("extracted witness failed validation: {v}")));
    }
    Ok(OptReport { outcome: OptOutcome::Yes(seq), stats })
}

fn sync_stats(stats: &mut SolveStats, shared: &SearchShared) {
    stats.steps = shared.steps.load(Ordering::Relaxed);
    stats.guesses += shared.guesses.load(Ordering::Relaxed);
}

/// Depth-first enumeration of interior guess positions, sharing frontier
/// prefixes. `frontiers[d]` corresponds to the guess prefix of length `d`.
#[allow(clippy::too_many_arguments)]
fn dfs(
    inst: &Instance,
    ctx: &StepContext,
    rule: Rule,
    shared: &SearchShared,
    local: &mut SearchLocal,
    members: &[&VertexSet],
    member_bits: &[BitSet],
    source: &BitSet,
    target: &BitSet,
    length: usize,
    frontiers: &mut Vec<Frontier>,
    guess: &mut Vec<usize>,
) -> Result<Option<ReconfigSequence>> {
    let depth = guess.len() + 1; // index of the next J to place
    let last_bits = if depth == 1 { source } else { &member_bits[guess[depth - 2]] };

    let choices: Vec<Option<usize>> = if depth == length {
        vec![None] // final position is pinned to T
    } else {
        (0..members.len()).map(Some).collect()
    };

    for choice in choices {
        let jb = match choice {
            Some(idx) => &member_bits[idx],
            None => target,
        };
        if rule == Rule::Slide && jb == last_bits {
            continue;
        }
        if shared.steps.fetch_add(1, Ordering::Relaxed) >= shared.guess_cap {
            shared.budget_hit.store(true, Ordering::Relaxed);
            return Ok(None);
        }
        let prev = frontiers.last().unwrap();
        let prev_total = prev.total_constraints();
        let next = match rule {
            Rule::Slide => slide_step_ctx(ctx, prev, jb),
            Rule::Jump => jump_step_ctx(ctx, prev, jb),
        };
        check_step_invariants(&next, prev_total, jb, ctx.k, rule, &mut local.stats.invariants);
        local.stats.frontier_peak = local.stats.frontier_peak.max(next.nodes.len());
        if next.is_empty() {
            continue;
        }
        frontiers.push(next);
        if depth == length {
            shared.guesses.fetch_add(1, Ordering::Relaxed);
            let accepted = frontiers.last().unwrap().nodes.iter().any(|n| satisfies_bits(target, &n.cs));
            if accepted {
                let mut guess_sets: Vec<VertexSet> = Vec::with_capacity(length + 1);
                guess_sets.push(source.to_vertex_set());
                guess_sets.extend(guess.iter().map(|&i| members[i].clone()));
                guess_sets.push(target.to_vertex_set());
                let seq = extract_witness(frontiers, &guess_sets, &inst.graph, rule)?;
                frontiers.pop();
                return Ok(Some(seq));
            }
            frontiers.pop();
        } else {
            guess.push(choice.expect("interior choice"));
            let found = dfs(
                inst, ctx, rule, shared, local, members, member_bits, source, target, length, frontiers, guess,
            )?;
            guess.pop();
            frontiers.pop();
            if found.is_some() {
                return Ok(found);
            }
            if shared.budget_hit.load(Ordering::Relaxed) {
                return Ok(None);
            }
        }
    }
    Ok(None)
}

/// Parallel variant: branch on the first interior position, running each
/// subtree sequentially and taking the lowest-index acceptance, so the
/// answer matches the sequential search.
#[allow(clippy::too_many_arguments)]
fn search_length_parallel(
    inst: &Instance,
    ctx: &StepContext,
    rule: Rule,
    opts: &SolveOptions,
    shared: &SearchShared,
    local: &mut SearchLocal,
    members: &[&VertexSet],
    member_bits: &[BitSet],
    source: &BitSet,
    target: &BitSet,
    length: usize,
) -> Result<Option<ReconfigSequence>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let results: Vec<(SolveStats, Option<ReconfigSequence>)> = pool.install(|| {
        (0..members.len())
            .into_par_iter()
            .map(|first| -> (SolveStats, Option<ReconfigSequence>) {
                if rule == Rule::Slide && member_bits[first] == *source {
                    return (SolveStats::default(), None);
                }
                let mut branch_local = SearchLocal { stats: SolveStats::default() };
                let init = initial_frontier(ctx, source);
                let mut frontiers = vec![init];
                let mut guess = vec![first];
                shared.steps.fetch_add(1, Ordering::Relaxed);
                let prev_total = frontiers[0].total_constraints();
                let next = match rule {
                    Rule::Slide => slide_step_ctx(ctx, &frontiers[0], &member_bits[first]),
                    Rule::Jump => jump_step_ctx(ctx, &frontiers[0], &member_bits[first]),
                };
                check_step_invariants(
                    &next,
                    prev_total,
                    &member_bits[first],
                    ctx.k,
                    rule,
                    &mut branch_local.stats.invariants,
                );
                if next.is_empty() {
                    return (branch_local.stats, None);
                }
                frontiers.push(next);
                let found = dfs(
                    inst, ctx, rule, shared, &mut branch_local, members, member_bits, source, target, length,
                    &mut frontiers, &mut guess,
                )
                .unwrap_or(None);
                (branch_local.stats, found)
            })
            .collect()
    });
    let mut hit = None;
    for (stats, found) in results {
        local.stats.invariants.merge(&stats.invariants);
        local.stats.frontier_peak = local.stats.frontier_peak.max(stats.frontier_peak);
        if hit.is_none() {
            hit = found;
        }
    }
    Ok(hit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::exact_family;
    use crate::oracle::{bfs_distance, BfsOutcome, OracleOptions};

    fn vs(ids: &[usize]) -> VertexSet {
        VertexSet::new(ids.to_vec())
    }

    fn p3() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn c4() -> Graph {
        Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn cs(n: usize, parts: &[(&[usize], usize)]) -> ConstraintSet {
        ConstraintSet::canonical(
            parts
                .iter()
                .map(|(sup, b)| Constraint { support: BitSet::from_slice(n, sup), budget: *b })
                .collect(),
        )
    }

    #[test]
    fn satisfies_counts_intersections() {
        assert!(satisfies(&vs(&[0, 2]), &cs(6, &[(&[0, 2], 2)]), 6));
        assert!(!satisfies(&vs(&[0, 2]), &cs(6, &[(&[0], 1), (&[5], 1)]), 6));
        // base case: S satisfies {(S, k)}
        assert!(satisfies(&vs(&[0, 2]), &cs(6, &[(&[0, 2], 2)]), 6));
    }

    fn root(n: usize, source: &[usize], k: usize) -> Frontier {
        Frontier {
            step: 0,
            nodes: vec![FrontierNode {
                cs: cs(n, &[(source, k)]),
                parents: Vec::new(),
            }],
            pre_prune_constraints: 1,
        }
    }

    #[test]
    fn slide_step_on_path() {
        let g = p3();
        let frontier = slide_step(&g, 1, &root(3, &[0], 1), &vs(&[1])).unwrap();
        assert_eq!(frontier.nodes.len(), 1);
        assert_eq!(frontier.nodes[0].cs, cs(3, &[(&[1], 1)]));
    }

    #[test]
    fn slide_step_respects_growth_law() {
        // two tokens on a 6-cycle, stepped through a full-cycle cover
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let mut frontier = root(6, &[0, 3], 2);
        for (i, j) in [vs(&[1, 4]), vs(&[2, 5]), vs(&[1, 3])].iter().enumerate() {
            let prev_total = frontier.total_constraints();
            let next = slide_step(&g, 2, &frontier, j).unwrap();
            assert!(next.pre_prune_constraints <= (i + 2) * prev_total);
            for node in &next.nodes {
                assert_eq!(node.cs.budget_sum(), 2);
            }
            frontier = next;
        }
    }

    #[test]
    fn jump_step_reaches_fresh_vertices() {
        // two isolated vertices: the only child is the fresh-vertex jump
        let g = Graph::empty(2);
        let frontier = jump_step(&g, 1, &root(2, &[0], 1), &vs(&[1])).unwrap();
        assert_eq!(frontier.nodes.len(), 1);
        assert_eq!(frontier.nodes[0].cs, cs(2, &[(&[1], 1)]));
        assert!(matches!(frontier.nodes[0].parents[0].branch, Branch::JumpFresh { .. }));
    }

    #[test]
    fn jump_step_same_set_keeps_budgets() {
        let g = Graph::empty(4);
        let frontier = jump_step(&g, 2, &root(4, &[0, 1, 2], 2), &vs(&[0, 1, 2])).unwrap();
        let within = frontier
            .nodes
            .iter()
            .find(|n| n.parents.iter().any(|p| p.branch == Branch::JumpWithin))
            .expect("same-set child");
        assert_eq!(within.cs, cs(4, &[(&[0, 1, 2], 2)]));
    }

    #[test]
    fn jump_step_single_constraint_has_no_transfers() {
        let g = Graph::empty(4);
        let frontier = jump_step(&g, 2, &root(4, &[0, 1], 2), &vs(&[0, 1, 2])).unwrap();
        for node in &frontier.nodes {
            for link in &node.parents {
                assert!(!matches!(link.branch, Branch::JumpTransfer { .. }));
            }
        }
    }

    #[test]
    fn run_guess_accepts_path_walk() {
        let inst = Instance::new(p3(), vs(&[0]), vs(&[2]), 1, 2, None).unwrap();
        let run = run_guess(&inst, &[vs(&[0]), vs(&[1]), vs(&[2])], Rule::Slide).unwrap();
        assert!(run.accepted);
        assert_eq!(run.frontiers.len(), 3);
        let witness =
            extract_witness(&run.frontiers, &[vs(&[0]), vs(&[1]), vs(&[2])], &inst.graph, Rule::Slide)
                .unwrap();
        assert_eq!(witness.steps, vec![vs(&[0]), vs(&[1]), vs(&[2])]);
    }

    #[test]
    fn run_guess_rejects_when_frontier_dies() {
        let inst = Instance::new(p3(), vs(&[0]), vs(&[2]), 1, 2, None).unwrap();
        // {2} is not adjacent to {0}, so the slide frontier empties
        let run = run_guess(&inst, &[vs(&[0]), vs(&[2])], Rule::Slide).unwrap();
        assert!(!run.accepted);
    }

    #[test]
    fn run_guess_trivial_when_source_is_target() {
        let g = Graph::empty(2);
        let inst = Instance::new(g, vs(&[0]), vs(&[0]), 1, 0, None).unwrap();
        let run = run_guess(&inst, &[vs(&[0])], Rule::Jump).unwrap();
        assert!(run.accepted);
        let w = extract_witness(&run.frontiers, &[vs(&[0])], &inst.graph, Rule::Jump).unwrap();
        assert_eq!(w.steps, vec![vs(&[0])]);
    }

    fn solve(inst: &Instance, rule: Rule) -> OptReport {
        let fam = exact_family(&inst.graph, inst.k, 10_000).unwrap();
        solve_opt(inst, &fam, rule, &SolveOptions::default()).unwrap()
    }

    #[test]
    fn solve_opt_finds_shortest_slide_on_path() {
        let inst = Instance::new(p3(), vs(&[0]), vs(&[2]), 1, 2, None).unwrap();
        match solve(&inst, Rule::Slide).outcome {
            OptOutcome::Yes(seq) => assert_eq!(seq.steps, vec![vs(&[0]), vs(&[1]), vs(&[2])]),
            other => panic!("expected yes, got {other:?}"),
        }
    }

    #[test]
    fn solve_opt_rejects_frozen_c4_both_rules() {
        let inst = Instance::new(c4(), vs(&[0, 2]), vs(&[1, 3]), 2, 5, None).unwrap();
        assert!(matches!(solve(&inst, Rule::Slide).outcome, OptOutcome::No));
        assert!(matches!(solve(&inst, Rule::Jump).outcome, OptOutcome::No));
    }

    #[test]
    fn solve_opt_jump_uses_single_jump() {
        let inst = Instance::new(p3(), vs(&[0]), vs(&[2]), 1, 2, None).unwrap();
        match solve(&inst, Rule::Jump).outcome {
            OptOutcome::Yes(seq) => assert_eq!(seq.move_count(), 1),
            other => panic!("expected yes, got {other:?}"),
        }
    }

    #[test]
    fn solve_opt_budget_cap_is_distinct_from_no() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let inst = Instance::new(g, vs(&[0, 2]), vs(&[3, 5]), 2, 5, None).unwrap();
        let fam = exact_family(&inst.graph, 2, 10_000).unwrap();
        let opts = SolveOptions { guess_cap: 1, ..Default::default() };
        let report = solve_opt(&inst, &fam, Rule::Slide, &opts).unwrap();
        assert!(matches!(report.outcome, OptOutcome::BudgetExceeded));
    }

    #[test]
    fn solve_opt_matches_oracle_on_random_instances() {
        use crate::gen::{random_instance, rng_from, InstanceGenConfig};
        let cfg = InstanceGenConfig { n_max: 8, ..Default::default() };
        let mut rng = rng_from(77);
        for _ in 0..30 {
            let inst = random_instance(&cfg, &mut rng);
            for rule in [Rule::Slide, Rule::Jump] {
                let report = solve(&inst, rule);
                let opts = OracleOptions { max_depth: Some(inst.ell), ..Default::default() };
                let oracle_yes = matches!(
                    bfs_distance(&inst, rule, &opts).unwrap().outcome,
                    BfsOutcome::Reached { .. }
                );
                match report.outcome {
                    OptOutcome::Yes(seq) => {
                        assert!(oracle_yes, "solver yes but oracle no");
                        assert_eq!(validate_sequence(&inst, &seq, rule), Ok(()));
                    }
                    OptOutcome::No => assert!(!oracle_yes, "solver no but oracle yes"),
                    OptOutcome::BudgetExceeded => panic!("unexpected budget hit"),
                }
                assert_eq!(report.stats.invariants.set_violations, 0);
                assert_eq!(report.stats.invariants.growth_violations, 0);
            }
        }
    }

    #[test]
    fn solve_opt_is_deterministic() {
        let inst = Instance::new(c4(), vs(&[0, 2]), vs(&[0, 2]), 2, 4, None).unwrap();
        let a = solve(&inst, Rule::Jump);
        let b = solve(&inst, Rule::Jump);
        match (a.outcome, b.outcome) {
            (OptOutcome::Yes(x), OptOutcome::Yes(y)) => assert_eq!(x, y),
            (OptOutcome::No, OptOutcome::No) => {}
            other => panic!("outcomes diverged: {other:?}"),
        }
    }

    #[test]
    fn parallel_search_agrees_with_sequential() {
        use crate::gen::{random_instance, rng_from, InstanceGenConfig};
        let cfg = InstanceGenConfig { n_max: 7, ell_max: 4, ..Default::default() };
        let mut rng = rng_from(13);
        for _ in 0..10 {
            let inst = random_instance(&cfg, &mut rng);
            let fam = exact_family(&inst.graph, inst.k, 10_000).unwrap();
            let seq_report = solve_opt(&inst, &fam, Rule::Slide, &SolveOptions::default()).unwrap();
            let par_opts = SolveOptions { threads: 2, ..Default::default() };
            let par_report = solve_opt(&inst, &fam, Rule::Slide, &par_opts).unwrap();
            match (&seq_report.outcome, &par_report.outcome) {
                (OptOutcome::Yes(a), OptOutcome::Yes(b)) => {
                    assert_eq!(a.move_count(), b.move_count())
                }
                (OptOutcome::No, OptOutcome::No) => {}
                other => panic!("parallel/sequential mismatch: {other:?}"),
            }
        }
    }
}
