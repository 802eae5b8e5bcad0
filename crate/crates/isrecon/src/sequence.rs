//! Problem instances and the universal sequence validator.
//!
//! Every solver in the crate funnels its "yes" answers through
//! [`validate_sequence`]; a reconfiguration sequence is the one witness
//! format that is always independently checkable.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use serde::{Deserialize, Serialize};

/// Reconfiguration move rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    /// Move one token along an edge to an unoccupied endpoint.
    Slide,
    /// Move one token to any unoccupied vertex.
    Jump,
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rule::Slide => write!(f, "slide"),
            Rule::Jump => write!(f, "jump"),
        }
    }
}

/// A reconfiguration instance `(G, S, T, k, ℓ)` with an optional modulator.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub source: VertexSet,
    pub target: VertexSet,
    pub k: usize,
    pub ell: usize,
    pub modulator: Option<VertexSet>,
}

impl Instance {
    /// Validates the instance-level invariants: sources and targets have
    /// size `k`, are independent, and everything is in range. Inputs where
    /// S or T is not independent are rejected here, never inside a solver.
    pub fn new(
        graph: Graph,
        source: VertexSet,
        target: VertexSet,
        k: usize,
        ell: usize,
        modulator: Option<VertexSet>,
    ) -> Result<Self> {
        let n = graph.vertex_count();
        source.check_range(n)?;
        target.check_range(n)?;
        if source.len() != k || target.len() != k {
            return Err(Error::InvalidInstance(format!(
                "|S| = {} and |T| = {} must both equal k = {}",
                source.len(),
                target.len(),
                k
            )));
        }
        if !graph.is_independent(&source)? {
            return Err(Error::InvalidInstance("S is not independent".into()));
        }
        if !graph.is_independent(&target)? {
            return Err(Error::InvalidInstance("T is not independent".into()));
        }
        if let Some(m) = &modulator {
            m.check_range(n)?;
        }
        Ok(Instance { graph, source, target, k, ell, modulator })
    }

    /// The trivial answer when no moves are allowed: with `ℓ = 0` the
    /// instance is a yes iff `S = T`. Callers dispatch this before handing
    /// the instance to any solver.
    pub fn trivial_answer(&self) -> Option<bool> {
        if self.source == self.target {
            Some(true)
        } else if self.ell == 0 {
            Some(false)
        } else {
            None
        }
    }
}

/// An ordered list of token configurations; a sequence with `steps.len() ==
/// m + 1` performs `m` moves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReconfigSequence {
    pub steps: Vec<VertexSet>,
}

impl ReconfigSequence {
    pub fn new(steps: Vec<VertexSet>) -> Self {
        ReconfigSequence { steps }
    }

    pub fn trivial(start: VertexSet) -> Self {
        ReconfigSequence { steps: vec![start] }
    }

    /// Number of moves performed.
    pub fn move_count(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }
}

/// First violation found when checking a sequence; `Display` renders a
/// human-readable report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceViolation {
    Empty,
    WrongStart,
    WrongEnd,
    TooLong { moves: usize, ell: usize },
    OutOfRange { step: usize },
    WrongSize { step: usize, size: usize, k: usize },
    NotIndependent { step: usize },
    NotSingleMove { step: usize },
    NotAdjacent { step: usize, from: usize, to: usize },
}

impl std::fmt::Display for SequenceViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use SequenceViolation::*;
        match self {
            Empty => write!(f, "sequence has no configurations"),
            WrongStart => write!(f, "first configuration differs from S"),
            WrongEnd => write!(f, "last configuration differs from T"),
            TooLong { moves, ell } => write!(f, "{moves} moves exceed the budget ell = {ell}"),
            OutOfRange { step } => write!(f, "configuration {step} has an out-of-range vertex"),
            WrongSize { step, size, k } => {
                write!(f, "configuration {step} has {size} tokens, expected {k}")
            }
            NotIndependent { step } => write!(f, "configuration {step} is not independent"),
            NotSingleMove { step } => {
                write!(f, "configurations {} and {step} do not differ in exactly one vertex", step - 1)
            }
            NotAdjacent { step, from, to } => {
                write!(f, "move into configuration {step} slides {from} -> {to} without an edge")
            }
        }
    }
}

/// Length budget for validation. Optimization variants check against the
/// instance's `ℓ`; reachability variants place no bound.
#[derive(Debug, Clone, Copy)]
pub enum LengthBound {
    AtMost(usize),
    Unbounded,
}

/// Checks a sequence against an instance under the given rule, reporting
/// the first violation. `Ok(())` means the sequence transforms S into T
/// within the bound, every configuration is an independent set of size `k`,
/// and every step moves exactly one token (along an edge, for slides).
pub fn validate_sequence(inst: &Instance, seq: &ReconfigSequence, rule: Rule) -> std::result::Result<(), SequenceViolation> {
    validate_sequence_bounded(inst, seq, rule, LengthBound::AtMost(inst.ell))
}

pub fn validate_sequence_bounded(
    inst: &Instance,
    seq: &ReconfigSequence,
    rule: Rule,
    bound: LengthBound,
) -> std::result::Result<(), SequenceViolation> {
    let steps = &seq.steps;
    if steps.is_empty() {
        return Err(SequenceViolation::Empty);
    }
    if steps[0] != inst.source {
        return Err(SequenceViolation::WrongStart);
    }
    if steps[steps.len() - 1] != inst.target {
        return Err(SequenceViolation::WrongEnd);
    }
    if let LengthBound::AtMost(ell) = bound {
        if seq.move_count() > ell {
            return Err(SequenceViolation::TooLong { moves: seq.move_count(), ell });
        }
    }
    for (i, cfg) in steps.iter().enumerate() {
        if cfg.check_range(inst.graph.vertex_count()).is_err() {
            return Err(SequenceViolation::OutOfRange { step: i });
        }
        if cfg.len() != inst.k {
            return Err(SequenceViolation::WrongSize { step: i, size: cfg.len(), k: inst.k });
        }
        if !inst.graph.is_independent(cfg).expect("range checked") {
            return Err(SequenceViolation::NotIndependent { step: i });
        }
    }
    for i in 1..steps.len() {
        let (out, into) = steps[i - 1].exchanged(&steps[i]);
        if out.len() != 1 || into.len() != 1 {
            return Err(SequenceViolation::NotSingleMove { step: i });
        }
        if rule == Rule::Slide {
            let (from, to) = (out.as_slice()[0], into.as_slice()[0]);
            if !inst.graph.has_edge(from, to) {
                return Err(SequenceViolation::NotAdjacent { step: i, from, to });
            }
        }
    }
    Ok(())
}
