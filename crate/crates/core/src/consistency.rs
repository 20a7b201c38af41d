//! Exhaustive search for action-level conjecture scenarios that are always
//! correct, the two impossibility checks built on it, and the per-cell
//! decomposition test for single decision makers.
//!
//! For an ordered pair `(i, j)` a scenario gives, for every cell of `i` and
//! every action there, the strategy of `j` that `i` expects in response; and
//! the same from `j`'s side. A scenario is consistent when:
//!
//! * (C1) the response of `j` to a strategy of `i` does not depend on the
//!   cell of `i` it is read from; call it `R(s_i)`;
//! * (C2) for every strategy `s_i` and every cell of `j`, `j`'s conjecture
//!   at the action `R(s_i)` plays there is `s_i` itself;
//!
//! and both conditions also hold with the roles of `i` and `j` swapped.
//! With `require_inv`, each conjecture must ignore the own action.
//!
//! The search is a complete backtracking over scenario entries in
//! scenario-index order, so witnesses come out in that order. The cap
//! bounds the number of entries tried; the exact scenario-space size is
//! always reported.

use num_bigint::BigUint;
use serde::Serialize;

use crate::certainty::ResponseMap;
use crate::error::{Error, Result};
use crate::game::{EpistemicGame, Strategy};
use crate::rational::Rational;

/// `psi_i[cell][action]` is a strategy index of `j`; `psi_j` likewise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ResponseScenario {
    pub pair: (usize, usize),
    pub psi_i: Vec<Vec<usize>>,
    pub psi_j: Vec<Vec<usize>>,
}

impl ResponseScenario {
    /// The strategy-level maps the scenario induces, when each side's
    /// response is the same whichever cell it is read from.
    pub fn induced_maps(&self, g: &EpistemicGame) -> Option<(ResponseMap, ResponseMap)> {
        let (i, j) = self.pair;
        Some((
            induced(g, i, j, &self.psi_i)?,
            induced(g, j, i, &self.psi_j)?,
        ))
    }
}

fn induced(g: &EpistemicGame, from: usize, to: usize, psi: &[Vec<usize>]) -> Option<ResponseMap> {
    let count = g.strategy_count_capped(from).ok()?;
    let mapping = (0..count)
        .map(|k| {
            let s = g.strategy_from_index(from, k);
            let r = psi[0][s.action_at(0)];
            (1..psi.len()).all(|c| psi[c][s.action_at(c)] == r).then_some(r)
        })
        .collect::<Option<Vec<usize>>>()?;
    Some(ResponseMap::new(from, to, mapping))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ConsistencyConstraints {
    pub require_inv: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub pair: (usize, usize),
    pub require_inv: bool,
    pub witnesses: Vec<ResponseScenario>,
    pub exhausted: bool,
    /// Exact number of scenarios in the space.
    pub size: BigUint,
    /// Scenario entries tried by the backtracking.
    pub nodes: u64,
}

/// Exact scenario-space size for the pair.
pub fn scenario_space_size(g: &EpistemicGame, pair: (usize, usize), constraints: ConsistencyConstraints) -> BigUint {
    let (i, j) = pair;
    let side = |me: usize, other: usize| {
        let p = g.player(me);
        let per_cell = if constraints.require_inv { 1 } else { p.actions.len() };
        g.strategy_count(other).pow((p.partition.len() * per_cell) as u32)
    };
    side(i, j) * side(j, i)
}

/// One side of the pair during the search.
struct Side {
    cells: usize,
    actions: usize,
    /// Values in `0..domain` are strategy indices of the other player.
    domain: usize,
    /// Own strategies as action vectors, by index.
    strategies: Vec<Vec<usize>>,
}

impl Side {
    fn new(g: &EpistemicGame, me: usize, other: usize) -> Result<Side> {
        let p = g.player(me);
        Ok(Side {
            cells: p.partition.len(),
            actions: p.actions.len(),
            domain: g.strategy_count_capped(other)?,
            strategies: g.enumerate_strategies(me)?.into_iter().map(|s| s.actions).collect(),
        })
    }
}

struct Search<'a> {
    sides: [Side; 2],
    other_strategies: [&'a [Vec<usize>]; 2],
    inv: bool,
    /// Assigned entries, side by side, cell-major.
    psi: [Vec<Vec<Option<usize>>>; 2],
    cap: u64,
    nodes: u64,
    aborted: bool,
    witnesses: Vec<[Vec<Vec<usize>>; 2]>,
}

impl Search<'_> {
    /// Entries of one side, in assignment order: (cell, action), or (cell, 0)
    /// standing for the whole cell under INV.
    fn entries(&self, side: usize) -> Vec<(usize, usize)> {
        let s = &self.sides[side];
        let per_cell = if self.inv { 1 } else { s.actions };
        (0..s.cells).flat_map(|c| (0..per_cell).map(move |a| (c, a))).collect()
    }

    fn get(&self, side: usize, cell: usize, action: usize) -> Option<usize> {
        self.psi[side][cell][if self.inv { 0 } else { action }]
    }

    /// C1 for `side`: across distinct cells, every entry agrees.
    fn c1_ok(&self, side: usize, cell: usize, value: usize) -> bool {
        self.psi[side]
            .iter()
            .enumerate()
            .filter(|&(c, _)| c != cell)
            .all(|(_, row)| row.iter().flatten().all(|&v| v == value))
    }

    /// Response of the other player to own strategy `k`, once C1 holds.
    fn response(&self, side: usize, k: usize) -> Option<usize> {
        let s = &self.sides[side].strategies[k];
        self.get(side, 0, s[0])
    }

    /// C2 from `side`'s point of view, for a fully assigned scenario.
    fn c2_ok(&self, side: usize) -> bool {
        let other = 1 - side;
        (0..self.sides[side].strategies.len()).all(|k| {
            let r = self.response(side, k).expect("assigned");
            let rs = &self.other_strategies[side][r];
            (0..self.sides[other].cells).all(|d| self.get(other, d, rs[d]) == Some(k))
        })
    }

    fn run(&mut self) {
        let order: Vec<(usize, usize, usize)> = (0..2)
            .flat_map(|side| self.entries(side).into_iter().map(move |(c, a)| (side, c, a)))
            .collect();
        self.descend(&order, 0);
    }

    fn descend(&mut self, order: &[(usize, usize, usize)], depth: usize) {
        if self.aborted {
            return;
        }
        let Some(&(side, cell, action)) = order.get(depth) else {
            if self.c2_ok(0) && self.c2_ok(1) {
                let full = |side: usize| -> Vec<Vec<usize>> {
                    let s = &self.sides[side];
                    (0..s.cells)
                        .map(|c| (0..s.actions).map(|a| self.get(side, c, a).expect("assigned")).collect())
                        .collect()
                };
                self.witnesses.push([full(0), full(1)]);
            }
            return;
        };
        for value in 0..self.sides[side].domain {
            if self.nodes >= self.cap {
                self.aborted = true;
                return;
            }
            self.nodes += 1;
            if !self.c1_ok(side, cell, value) || !self.c2_forced_ok(side, cell, action, value) {
                continue;
            }
            self.psi[side][cell][action] = Some(value);
            self.descend(order, depth + 1);
            self.psi[side][cell][action] = None;
        }
    }

    /// Early C2 check for the second side: once the first side is fully
    /// assigned, entries of the second side are forced.
    fn c2_forced_ok(&self, side: usize, cell: usize, action: usize, value: usize) -> bool {
        if side == 0 {
            return true;
        }
        (0..self.sides[0].strategies.len()).all(|k| {
            let r = self.response(0, k).expect("first side assigned");
            let b = self.other_strategies[0][r][cell];
            (!self.inv && b != action) || k == value
        })
    }
}

pub fn search_bay_scenarios(
    g: &EpistemicGame,
    pair: (usize, usize),
    constraints: ConsistencyConstraints,
    cap: u64,
) -> Result<SearchReport> {
    let (i, j) = pair;
    if i == j || i >= g.num_players() || j >= g.num_players() {
        return Err(Error::InvalidArgument(format!("invalid player pair ({i}, {j})")));
    }
    let sides = [Side::new(g, i, j)?, Side::new(g, j, i)?];
    let strategies_i = sides[0].strategies.clone();
    let strategies_j = sides[1].strategies.clone();
    let per_cell = |s: &Side| if constraints.require_inv { 1 } else { s.actions };
    let psi = [
        vec![vec![None; per_cell(&sides[0])]; sides[0].cells],
        vec![vec![None; per_cell(&sides[1])]; sides[1].cells],
    ];
    let mut search = Search {
        other_strategies: [&strategies_j, &strategies_i],
        sides,
        inv: constraints.require_inv,
        psi,
        cap,
        nodes: 0,
        aborted: false,
        witnesses: Vec::new(),
    };
    search.run();
    Ok(SearchReport {
        pair,
        require_inv: constraints.require_inv,
        witnesses: search
            .witnesses
            .into_iter()
            .map(|[psi_i, psi_j]| ResponseScenario { pair, psi_i, psi_j })
            .collect(),
        exhausted: !search.aborted,
        size: scenario_space_size(g, pair, constraints),
        nodes: search.nodes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub theorem: u8,
    pub holds: bool,
    pub searches: Vec<SearchReport>,
}

impl TheoremReport {
    pub fn pairs_checked(&self) -> Vec<(usize, usize)> {
        self.searches.iter().map(|s| s.pair).collect()
    }
}

fn run_searches(g: &EpistemicGame, theorem: u8, pairs: Vec<(usize, usize)>, constraints: ConsistencyConstraints, cap: u64) -> Result<TheoremReport> {
    let mut searches = Vec::with_capacity(pairs.len());
    for pair in pairs {
        let report = search_bay_scenarios(g, pair, constraints, cap)?;
        if !report.exhausted {
            return Err(Error::ScenarioSpaceTooLarge { size: report.size, cap });
        }
        searches.push(report);
    }
    Ok(TheoremReport {
        theorem,
        holds: searches.iter().all(|s| s.witnesses.is_empty()),
        searches,
    })
}

/// No ordered pair admits an always-correct scenario that ignores own actions.
pub fn check_theorem1(g: &EpistemicGame, cap: u64) -> Result<TheoremReport> {
    g.require_strategic()?;
    let n = g.num_players();
    let pairs = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    run_searches(g, 1, pairs, ConsistencyConstraints { require_inv: true }, cap)
}

/// No pair with imperfect information admits an always-correct scenario.
pub fn check_theorem2(g: &EpistemicGame, cap: u64) -> Result<TheoremReport> {
    g.require_strategic()?;
    let mut pairs: Vec<(usize, usize)> = g
        .info_report()
        .players
        .iter()
        .flat_map(|p| p.witnesses.iter().map(move |w| (p.player, w.other_player)))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    if pairs.is_empty() {
        return Err(Error::NotImperfectInformation);
    }
    run_searches(g, 2, pairs, ConsistencyConstraints { require_inv: false }, cap)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub optima: Vec<Strategy>,
    pub value: Rational,
    /// Per cell, the first action that never lowers expected utility when
    /// substituted into any strategy.
    pub dominant: Vec<Option<usize>>,
    pub cellwise_consistent: bool,
}

/// Whether a single decision maker's problem separates across cells.
pub fn decomposition_check(g: &EpistemicGame) -> Result<DecompositionReport> {
    if g.num_players() != 1 {
        return Err(Error::WrongPlayerCount(format!(
            "decomposition needs exactly 1 player, game has {}",
            g.num_players()
        )));
    }
    let strategies = g.enumerate_strategies(0)?;
    let eu: Vec<Rational> = strategies
        .iter()
        .map(|s| g.expected_utility(&g.profile_from_indices(&[g.strategy_index(s)]), 0, None))
        .collect();
    let value = eu.iter().max().expect("at least one strategy").clone();
    let optima = strategies.iter().zip(&eu).filter(|(_, v)| **v == value).map(|(s, _)| s.clone()).collect();
    let p = g.player(0);
    let dominant: Vec<Option<usize>> = (0..p.partition.len())
        .map(|c| {
            (0..p.actions.len()).find(|&a| {
                strategies.iter().zip(&eu).all(|(s, v)| {
                    let mut t = s.clone();
                    t.actions[c] = a;
                    eu[g.strategy_index(&t)] >= *v
                })
            })
        })
        .collect();
    Ok(DecompositionReport {
        optima,
        value,
        cellwise_consistent: dominant.iter().all(Option::is_some),
        dominant,
    })
}
