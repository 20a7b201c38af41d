//! Finite probability spaces: states, events, partitions and measures.
//!
//! A [`FiniteSpace`] fixes a canonical ordering of state labels. Events and
//! partitions refer to states by index into that ordering, and every
//! set-valued output is sorted by it. The event algebra is the full power
//! set of the space.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// An ordered, nonempty list of distinct state labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    states: Vec<String>,
}

impl FiniteSpace {
    pub fn new<I, S>(labels: I) -> Result<Arc<FiniteSpace>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let states: Vec<String> = labels.into_iter().map(Into::into).collect();
        if states.is_empty() {
            return Err(Error::InvalidSpace("state space is empty".into()));
        }
        let mut seen = HashSet::new();
        for s in &states {
            if s.is_empty() {
                return Err(Error::InvalidSpace("empty state label".into()));
            }
            if !seen.insert(s.as_str()) {
                return Err(Error::InvalidSpace(format!("duplicate state label {s:?}")));
            }
        }
        Ok(Arc::new(FiniteSpace { states }))
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn label(&self, index: usize) -> &str {
        &self.states[index]
    }

    pub fn labels(&self) -> &[String] {
        &self.states
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|s| s == label)
    }

    pub fn full_event(&self) -> Event {
        Event::new(0..self.len())
    }
}

pub(crate) fn same_space(a: &Arc<FiniteSpace>, b: &Arc<FiniteSpace>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A set of state indices, kept sorted and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Event {
    members: Vec<usize>,
}

impl Event {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Event {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Event { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, state: usize) -> bool {
        self.members.binary_search(&state).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn intersection(&self, other: &Event) -> Event {
        Event {
            members: self
                .members
                .iter()
                .copied()
                .filter(|s| other.contains(*s))
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &Event) -> bool {
        self.members.iter().all(|s| other.contains(*s))
    }

    pub fn labels<'a>(&self, space: &'a FiniteSpace) -> Vec<&'a str> {
        self.members.iter().map(|&s| space.label(s)).collect()
    }
}

/// A partition of a finite space into nonempty, pairwise disjoint blocks.
///
/// Blocks are ordered by their smallest state index.
#[derive(Debug, Clone)]
pub struct Partition {
    space: Arc<FiniteSpace>,
    blocks: Vec<Event>,
    block_of: Vec<usize>,
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.blocks == other.blocks
    }
}

impl Eq for Partition {}

impl Partition {
    pub fn new(space: Arc<FiniteSpace>, blocks: Vec<Vec<usize>>) -> Result<Partition> {
        let n = space.len();
        let mut owner: Vec<Option<usize>> = vec![None; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {b} is empty")));
            }
            for &s in block {
                if s >= n {
                    return Err(Error::InvalidPartition(format!(
                        "block {b} refers to state index {s} outside the space"
                    )));
                }
                match owner[s] {
                    Some(prev) if prev == b => {
                        return Err(Error::InvalidPartition(format!(
                            "state {:?} repeated in block {b}",
                            space.label(s)
                        )))
                    }
                    Some(prev) => {
                        return Err(Error::InvalidPartition(format!(
                            "state {:?} lies in blocks {prev} and {b}",
                            space.label(s)
                        )))
                    }
                    None => owner[s] = Some(b),
                }
            }
        }
        if let Some(s) = owner.iter().position(Option::is_none) {
            return Err(Error::InvalidPartition(format!(
                "state {:?} is not covered",
                space.label(s)
            )));
        }
        Ok(Self::from_events(space, blocks.into_iter().map(Event::new).collect()))
    }

    /// Builds a partition from blocks of state labels.
    pub fn from_labels<S: AsRef<str>>(space: Arc<FiniteSpace>, blocks: &[Vec<S>]) -> Result<Partition> {
        let mut idx = Vec::with_capacity(blocks.len());
        for block in blocks {
            let mut b = Vec::with_capacity(block.len());
            for label in block {
                let label = label.as_ref();
                b.push(space.index_of(label).ok_or_else(|| {
                    Error::InvalidPartition(format!("unknown state {label:?}"))
                })?);
            }
            idx.push(b);
        }
        Partition::new(space, idx)
    }

    /// The one-block partition `{Ω}`.
    pub fn trivial(space: Arc<FiniteSpace>) -> Partition {
        let full = space.full_event();
        Self::from_events(space, vec![full])
    }

    /// The partition into singletons.
    pub fn discrete(space: Arc<FiniteSpace>) -> Partition {
        let blocks = (0..space.len()).map(|s| Event::new([s])).collect();
        Self::from_events(space, blocks)
    }

    fn from_events(space: Arc<FiniteSpace>, mut blocks: Vec<Event>) -> Partition {
        blocks.sort_by_key(|b| b.members[0]);
        let mut block_of = vec![0; space.len()];
        for (b, block) in blocks.iter().enumerate() {
            for &s in &block.members {
                block_of[s] = b;
            }
        }
        Partition {
            space,
            blocks,
            block_of,
        }
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn blocks(&self) -> &[Event] {
        &self.blocks
    }

    pub fn block(&self, index: usize) -> &Event {
        &self.blocks[index]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing `state`.
    pub fn block_of(&self, state: usize) -> usize {
        self.block_of[state]
    }

    /// Position of `event` among the blocks, if it is one.
    pub fn position(&self, event: &Event) -> Option<usize> {
        self.blocks.iter().position(|b| b == event)
    }

    /// True iff every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        same_space(&self.space, &coarser.space)
            && self
                .blocks
                .iter()
                .all(|b| b.members.iter().all(|&s| coarser.block_of(s) == coarser.block_of(b.members[0])))
    }

    pub fn labels(&self) -> Vec<Vec<&str>> {
        self.blocks.iter().map(|b| b.labels(&self.space)).collect()
    }
}

/// Coarsest common refinement of `parts`.
pub fn join(parts: &[Partition]) -> Result<Partition> {
    let first = parts
        .first()
        .ok_or_else(|| Error::InvalidArgument("join of an empty list of partitions".into()))?;
    if parts.iter().any(|p| !same_space(&p.space, &first.space)) {
        return Err(Error::MixedSpaces);
    }
    // States sharing the same tuple of block indices form one block.
    let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for s in 0..first.space.len() {
        let key: Vec<usize> = parts.iter().map(|p| p.block_of(s)).collect();
        groups.entry(key).or_default().push(s);
    }
    let blocks = groups.into_values().map(Event::new).collect();
    Ok(Partition::from_events(first.space.clone(), blocks))
}

/// True iff `f` (indexed by state) is constant on every block of `part`.
pub fn is_measurable<T: PartialEq>(f: &[T], part: &Partition) -> bool {
    f.len() == part.space.len()
        && part.blocks.iter().all(|b| {
            let head = &f[b.members[0]];
            b.members.iter().all(|&s| &f[s] == head)
        })
}

/// A probability measure on a finite space.
#[derive(Debug, Clone)]
pub struct Measure {
    space: Arc<FiniteSpace>,
    weights: Vec<Rational>,
}

impl PartialEq for Measure {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.weights == other.weights
    }
}

impl Eq for Measure {}

impl Measure {
    pub fn new(space: Arc<FiniteSpace>, weights: Vec<Rational>) -> Result<Measure> {
        if weights.len() != space.len() {
            return Err(Error::InvalidMeasure(format!(
                "{} weights for {} states",
                weights.len(),
                space.len()
            )));
        }
        if let Some(s) = weights.iter().position(Rational::is_negative) {
            return Err(Error::InvalidMeasure(format!(
                "negative weight {} on state {:?}",
                weights[s],
                space.label(s)
            )));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidMeasure(format!("weights sum to {total}, not 1")));
        }
        Ok(Measure { space, weights })
    }

    pub fn uniform(space: Arc<FiniteSpace>) -> Measure {
        let w = Rational::new(1, space.len() as i64);
        let weights = vec![w; space.len()];
        Measure { space, weights }
    }

    /// Point mass on `state`.
    pub fn dirac(space: Arc<FiniteSpace>, state: usize) -> Measure {
        let mut weights = vec![Rational::zero(); space.len()];
        weights[state] = Rational::one();
        Measure { space, weights }
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, state: usize) -> &Rational {
        &self.weights[state]
    }

    pub fn prob(&self, event: &Event) -> Rational {
        event.members.iter().map(|&s| &self.weights[s]).sum()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.weights.iter().all(Rational::is_positive)
    }

    pub fn null_states(&self) -> Vec<usize> {
        (0..self.weights.len()).filter(|&s| self.weights[s].is_zero()).collect()
    }

    /// Conditional measure given `event`.
    pub fn posterior(&self, event: &Event) -> Result<Measure> {
        let mass = self.prob(event);
        if mass.is_zero() {
            return Err(Error::NullConditioningEvent);
        }
        let weights = (0..self.weights.len())
            .map(|s| {
                if event.contains(s) {
                    &self.weights[s] / &mass
                } else {
                    Rational::zero()
                }
            })
            .collect();
        Ok(Measure {
            space: self.space.clone(),
            weights,
        })
    }

    /// True iff both measures have the same null states.
    pub fn equivalent(&self, other: &Measure) -> Result<bool> {
        if !same_space(&self.space, &other.space) {
            return Err(Error::MixedSpaces);
        }
        Ok(self.null_states() == other.null_states())
    }

    /// `Σ_ω m(ω) f(ω)`.
    pub fn expectation(&self, f: &[Rational]) -> Result<Rational> {
        if f.len() != self.weights.len() {
            return Err(Error::DimensionMismatch(format!(
                "function has {} values for {} states",
                f.len(),
                self.weights.len()
            )));
        }
        Ok(self.weights.iter().zip(f).map(|(w, v)| w * v).sum())
    }
}

/// Both sides of the law of total expectation over a partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TotalExpectation {
    pub lhs: Rational,
    pub rhs: Rational,
    pub equal: bool,
}

/// Compares `E f` with `Σ_B m(B) E(f | B)`; null blocks are skipped.
pub fn total_expectation_check(f: &[Rational], m: &Measure, part: &Partition) -> Result<TotalExpectation> {
    if !same_space(&m.space, &part.space) {
        return Err(Error::MixedSpaces);
    }
    let lhs = m.expectation(f)?;
    let mut rhs = Rational::zero();
    for block in &part.blocks {
        let mass = m.prob(block);
        if mass.is_zero() {
            continue;
        }
        let conditional = m.posterior(block)?.expectation(f)?;
        rhs += mass * conditional;
    }
    let equal = lhs == rhs;
    Ok(TotalExpectation { lhs, rhs, equal })
}
