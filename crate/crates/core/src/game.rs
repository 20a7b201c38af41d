//! The epistemic game: players with priors, information partitions, action
//! sets and utilities, plus strategy enumeration and expected utility.
//!
//! A strategy assigns one action to each block of its player's partition, so
//! every strategy is measurable with respect to that partition by
//! construction. Strategies of a player are enumerated lexicographically by
//! (block, action index), block 0 being the most significant position.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measure::{same_space, Event, FiniteSpace, Measure, Partition};
use crate::rational::Rational;

/// Default bound on materialized strategy and profile spaces.
pub const DEFAULT_CAP: u64 = 1_000_000;

/// Characters reserved by the label syntax of strategies and profiles.
pub const RESERVED_LABEL_CHARS: [char; 2] = [',', '|'];

/// One action index per player.
pub type ActionProfile = Vec<usize>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum UtilityKind {
    /// Utility depends on the state and the realized action profile.
    Action,
    /// Utility depends on the state and the full strategy profile.
    Strategy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Player {
    pub name: String,
    pub actions: Vec<String>,
    pub partition: Partition,
    pub prior: Measure,
}

impl Player {
    pub fn new(
        name: impl Into<String>,
        actions: impl IntoIterator<Item = impl Into<String>>,
        partition: Partition,
        prior: Measure,
    ) -> Player {
        Player {
            name: name.into(),
            actions: actions.into_iter().map(Into::into).collect(),
            partition,
            prior,
        }
    }

    pub fn action_index(&self, label: &str) -> Option<usize> {
        self.actions.iter().position(|a| a == label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Strategy {
    pub player: usize,
    /// Action index chosen on each block of the player's partition.
    pub actions: Vec<usize>,
}

impl Strategy {
    pub fn new(player: usize, actions: Vec<usize>) -> Strategy {
        Strategy { player, actions }
    }

    /// Action index taken at `block`.
    pub fn action_at(&self, block: usize) -> usize {
        self.actions[block]
    }

    pub fn is_constant(&self) -> bool {
        self.actions.windows(2).all(|w| w[0] == w[1])
    }
}

/// One strategy per player, in player order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrategyProfile {
    pub strategies: Vec<Strategy>,
}

impl StrategyProfile {
    pub fn new(strategies: Vec<Strategy>) -> StrategyProfile {
        StrategyProfile { strategies }
    }

    pub fn strategy(&self, player: usize) -> &Strategy {
        &self.strategies[player]
    }

    pub fn len(&self) -> usize {
        self.strategies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strategies.is_empty()
    }

    /// Copy of `self` with `player`'s strategy replaced.
    pub fn with_strategy(&self, strategy: Strategy) -> StrategyProfile {
        let mut next = self.clone();
        let player = strategy.player;
        next.strategies[player] = strategy;
        next
    }
}

/// Mixed-radix indexing with position 0 most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct MixedRadix {
    radices: Vec<usize>,
}

impl MixedRadix {
    pub(crate) fn new(radices: Vec<usize>) -> MixedRadix {
        MixedRadix { radices }
    }

    pub(crate) fn size(&self) -> usize {
        self.radices.iter().product()
    }

    pub(crate) fn radices(&self) -> &[usize] {
        &self.radices
    }

    pub(crate) fn index(&self, digits: &[usize]) -> usize {
        debug_assert_eq!(digits.len(), self.radices.len());
        digits
            .iter()
            .zip(&self.radices)
            .fold(0, |acc, (&d, &r)| acc * r + d)
    }

    pub(crate) fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.radices.len()];
        for (slot, &r) in out.iter_mut().zip(&self.radices).rev() {
            *slot = index % r;
            index /= r;
        }
        out
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.size()).map(|i| self.digits(i))
    }
}

/// Dense utility values, `values[player][state][profile index]`.
///
/// For [`UtilityKind::Action`] the profile index runs over action profiles;
/// for [`UtilityKind::Strategy`] it runs over strategy profiles. In both
/// cases player 0 is the most significant digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtilityTable {
    kind: UtilityKind,
    values: Vec<Vec<Vec<Rational>>>,
}

impl UtilityTable {
    pub fn new(kind: UtilityKind, values: Vec<Vec<Vec<Rational>>>) -> UtilityTable {
        UtilityTable { kind, values }
    }

    pub fn kind(&self) -> UtilityKind {
        self.kind
    }

    pub(crate) fn values(&self) -> &[Vec<Vec<Rational>>] {
        &self.values
    }
}

#[derive(Debug, Clone)]
pub struct EpistemicGame {
    space: Arc<FiniteSpace>,
    players: Vec<Player>,
    utilities: UtilityTable,
    action_radix: MixedRadix,
    description: Option<String>,
    cap: u64,
}

impl PartialEq for EpistemicGame {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space)
            && self.players == other.players
            && self.utilities == other.utilities
            && self.description == other.description
    }
}

impl EpistemicGame {
    pub fn new(space: Arc<FiniteSpace>, players: Vec<Player>, utilities: UtilityTable) -> Result<EpistemicGame> {
        validate_players(&space, &players)?;
        let action_radix = MixedRadix::new(players.iter().map(|p| p.actions.len()).collect());
        let game = EpistemicGame {
            space,
            players,
            utilities,
            action_radix,
            description: None,
            cap: DEFAULT_CAP,
        };
        game.validate_utilities()?;
        Ok(game)
    }

    /// Builds an action-kind game from a utility function
    /// `(player, state, action profile) -> value`.
    pub fn from_action_utilities(
        space: Arc<FiniteSpace>,
        players: Vec<Player>,
        utility: impl Fn(usize, usize, &[usize]) -> Rational,
    ) -> Result<EpistemicGame> {
        validate_players(&space, &players)?;
        let radix = MixedRadix::new(players.iter().map(|p| p.actions.len()).collect());
        let values = (0..players.len())
            .map(|i| {
                (0..space.len())
                    .map(|w| radix.iter().map(|a| utility(i, w, &a)).collect())
                    .collect()
            })
            .collect();
        EpistemicGame::new(space, players, UtilityTable::new(UtilityKind::Action, values))
    }

    /// Builds a strategy-kind game from a utility function
    /// `(player, state, per-player cell actions) -> value`.
    pub fn from_strategy_utilities(
        space: Arc<FiniteSpace>,
        players: Vec<Player>,
        utility: impl Fn(usize, usize, &[Strategy]) -> Rational,
    ) -> Result<EpistemicGame> {
        validate_players(&space, &players)?;
        let mut counts = Vec::with_capacity(players.len());
        for p in &players {
            counts.push(checked_count(&strategy_count_of(p), DEFAULT_CAP)?);
        }
        let profile_radix = MixedRadix::new(counts);
        checked_count(&BigUint::from(profile_radix.size()), DEFAULT_CAP)?;
        let values = (0..players.len())
            .map(|i| {
                (0..space.len())
                    .map(|w| {
                        profile_radix
                            .iter()
                            .map(|digits| {
                                let strategies: Vec<Strategy> = digits
                                    .iter()
                                    .enumerate()
                                    .map(|(j, &k)| strategy_from_index_of(&players[j], j, k))
                                    .collect();
                                utility(i, w, &strategies)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        EpistemicGame::new(space, players, UtilityTable::new(UtilityKind::Strategy, values))
    }

    pub fn with_description(mut self, description: impl Into<String>) -> EpistemicGame {
        self.description = Some(description.into());
        self
    }

    /// Replaces the enumeration cap (default [`DEFAULT_CAP`]).
    pub fn with_cap(mut self, cap: u64) -> EpistemicGame {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn description(&self) -> Option<&str> {
        self.description.as_deref()
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn players(&self) -> &[Player] {
        &self.players
    }

    pub fn player(&self, i: usize) -> &Player {
        &self.players[i]
    }

    pub fn num_players(&self) -> usize {
        self.players.len()
    }

    pub fn player_index(&self, name: &str) -> Option<usize> {
        self.players.iter().position(|p| p.name == name)
    }

    pub fn utility_kind(&self) -> UtilityKind {
        self.utilities.kind
    }

    pub fn utilities(&self) -> &UtilityTable {
        &self.utilities
    }

    pub(crate) fn require_action_kind(&self) -> Result<()> {
        match self.utilities.kind {
            UtilityKind::Action => Ok(()),
            UtilityKind::Strategy => Err(Error::WrongUtilityKind),
        }
    }

    pub(crate) fn require_strategic(&self) -> Result<()> {
        if self.players.len() < 2 {
            return Err(Error::WrongPlayerCount(format!(
                "strategic analysis needs at least 2 players, game has {}",
                self.players.len()
            )));
        }
        Ok(())
    }

    /// Exact number of strategies of `player`: `|A|^(number of blocks)`.
    pub fn strategy_count(&self, player: usize) -> BigUint {
        strategy_count_of(&self.players[player])
    }

    /// Exact number of strategy profiles.
    pub fn profile_count(&self) -> BigUint {
        (0..self.players.len()).map(|i| self.strategy_count(i)).product()
    }

    pub(crate) fn strategy_count_capped(&self, player: usize) -> Result<usize> {
        checked_count(&self.strategy_count(player), self.cap)
    }

    pub(crate) fn strategy_radix(&self) -> Result<MixedRadix> {
        let counts = (0..self.players.len())
            .map(|i| self.strategy_count_capped(i))
            .collect::<Result<Vec<_>>>()?;
        checked_count(&self.profile_count(), self.cap)?;
        Ok(MixedRadix::new(counts))
    }

    /// All strategies of `player` in lexicographic order.
    pub fn enumerate_strategies(&self, player: usize) -> Result<Vec<Strategy>> {
        let count = self.strategy_count_capped(player)?;
        Ok((0..count).map(|k| self.strategy_from_index(player, k)).collect())
    }

    /// All strategy profiles, player 0 most significant.
    pub fn enumerate_profiles(&self) -> Result<Vec<StrategyProfile>> {
        let radix = self.strategy_radix()?;
        Ok(radix.iter().map(|digits| self.profile_from_indices(&digits)).collect())
    }

    pub fn strategy_from_index(&self, player: usize, index: usize) -> Strategy {
        strategy_from_index_of(&self.players[player], player, index)
    }

    pub fn strategy_index(&self, strategy: &Strategy) -> usize {
        let p = &self.players[strategy.player];
        MixedRadix::new(vec![p.actions.len(); p.partition.len()]).index(&strategy.actions)
    }

    pub fn profile_from_indices(&self, indices: &[usize]) -> StrategyProfile {
        StrategyProfile::new(
            indices
                .iter()
                .enumerate()
                .map(|(i, &k)| self.strategy_from_index(i, k))
                .collect(),
        )
    }

    pub fn profile_indices(&self, profile: &StrategyProfile) -> Vec<usize> {
        profile.strategies.iter().map(|s| self.strategy_index(s)).collect()
    }

    /// The strategy that plays `action` on every block.
    pub fn constant_strategy(&self, player: usize, action: usize) -> Strategy {
        Strategy::new(player, vec![action; self.players[player].partition.len()])
    }

    /// Checks that `profile` has one well-formed strategy per player.
    pub fn check_profile(&self, profile: &StrategyProfile) -> Result<()> {
        if profile.strategies.len() != self.players.len() {
            return Err(Error::DimensionMismatch(format!(
                "profile has {} strategies for {} players",
                profile.strategies.len(),
                self.players.len()
            )));
        }
        for (i, s) in profile.strategies.iter().enumerate() {
            self.check_strategy(i, s)?;
        }
        Ok(())
    }

    pub fn check_strategy(&self, player: usize, s: &Strategy) -> Result<()> {
        let p = &self.players[player];
        if s.player != player
            || s.actions.len() != p.partition.len()
            || s.actions.iter().any(|&a| a >= p.actions.len())
        {
            return Err(Error::DimensionMismatch(format!(
                "strategy does not fit player {:?}",
                p.name
            )));
        }
        Ok(())
    }

    /// The action profile realized at `state`.
    pub fn consequence(&self, profile: &StrategyProfile, state: usize) -> ActionProfile {
        profile
            .strategies
            .iter()
            .zip(&self.players)
            .map(|(s, p)| s.actions[p.partition.block_of(state)])
            .collect()
    }

    pub(crate) fn action_profile_index(&self, actions: &[usize]) -> usize {
        self.action_radix.index(actions)
    }

    pub(crate) fn action_radix(&self) -> &MixedRadix {
        &self.action_radix
    }

    /// `u_player(state, ·)` evaluated at `profile`.
    pub fn utility(&self, player: usize, state: usize, profile: &StrategyProfile) -> &Rational {
        let table = &self.utilities.values[player][state];
        match self.utilities.kind {
            UtilityKind::Action => &table[self.action_profile_index(&self.consequence(profile, state))],
            UtilityKind::Strategy => {
                let radix = MixedRadix::new(
                    (0..self.players.len())
                        .map(|i| self.strategy_count(i).to_usize().unwrap_or(usize::MAX))
                        .collect(),
                );
                &table[radix.index(&self.profile_indices(profile))]
            }
        }
    }

    /// Utility of an action profile at a state, for action-kind games.
    pub fn action_utility(&self, player: usize, state: usize, actions: &[usize]) -> Result<&Rational> {
        self.require_action_kind()?;
        Ok(&self.utilities.values[player][state][self.action_profile_index(actions)])
    }

    /// Per-state utilities of `player` under `profile`.
    pub fn utility_vector(&self, profile: &StrategyProfile, player: usize) -> Vec<Rational> {
        (0..self.space.len())
            .map(|w| self.utility(player, w, profile).clone())
            .collect()
    }

    /// Expected utility of `player`; `measure` defaults to the player's prior.
    pub fn expected_utility(&self, profile: &StrategyProfile, player: usize, measure: Option<&Measure>) -> Rational {
        let m = measure.unwrap_or(&self.players[player].prior);
        (0..self.space.len())
            .filter(|&w| !m.weight(w).is_zero())
            .map(|w| m.weight(w) * self.utility(player, w, profile))
            .sum()
    }

    /// Expected utility of `player` under the posterior of their prior given `cell`.
    pub fn conditional_expected_utility(&self, profile: &StrategyProfile, player: usize, cell: &Event) -> Result<Rational> {
        let posterior = self.players[player].prior.posterior(cell)?;
        Ok(self.expected_utility(profile, player, Some(&posterior)))
    }

    /// True iff every player's utilities ignore the state.
    pub fn is_state_independent(&self) -> bool {
        self.utilities
            .values
            .iter()
            .all(|per_state| per_state.windows(2).all(|w| w[0] == w[1]))
    }

    /// The shared prior, if all players have the same one.
    pub fn common_prior(&self) -> Option<&Measure> {
        let first = &self.players.first()?.prior;
        self.players.iter().all(|p| &p.prior == first).then_some(first)
    }

    /// Perfect/imperfect information classification of every player.
    pub fn info_report(&self) -> InfoReport {
        let players = (0..self.players.len())
            .map(|i| {
                let me = &self.players[i];
                let mut witnesses = Vec::new();
                for (c, cell) in me.partition.blocks().iter().enumerate() {
                    let Ok(post) = me.prior.posterior(cell) else { continue };
                    for (j, other) in self.players.iter().enumerate() {
                        if j == i {
                            continue;
                        }
                        for (oc, other_cell) in other.partition.blocks().iter().enumerate() {
                            let p = post.prob(other_cell);
                            if p.is_positive() && !p.is_one() {
                                witnesses.push(InfoWitness {
                                    cell: c,
                                    other_player: j,
                                    other_cell: oc,
                                    probability: p,
                                });
                            }
                        }
                    }
                }
                PlayerInfo {
                    player: i,
                    perfect: witnesses.is_empty(),
                    witnesses,
                }
            })
            .collect();
        InfoReport { players }
    }

    /// Renders a strategy as its cell actions joined by `|`.
    pub fn strategy_label(&self, s: &Strategy) -> String {
        let p = &self.players[s.player];
        s.actions
            .iter()
            .map(|&a| p.actions[a].as_str())
            .collect::<Vec<_>>()
            .join("|")
    }

    pub fn profile_labels(&self, profile: &StrategyProfile) -> Vec<String> {
        profile.strategies.iter().map(|s| self.strategy_label(s)).collect()
    }

    /// Inverse of [`EpistemicGame::strategy_label`].
    pub fn parse_strategy(&self, player: usize, label: &str) -> Result<Strategy> {
        let p = &self.players[player];
        let parts: Vec<&str> = label.split('|').collect();
        let actions = if parts.len() == 1 && p.partition.len() > 1 {
            // A single action label stands for the constant strategy.
            vec![parts[0]; p.partition.len()]
        } else {
            parts
        };
        if actions.len() != p.partition.len() {
            return Err(Error::InvalidArgument(format!(
                "strategy {label:?} for player {:?} needs {} cell actions",
                p.name,
                p.partition.len()
            )));
        }
        let actions = actions
            .iter()
            .map(|a| {
                p.action_index(a).ok_or_else(|| {
                    Error::InvalidArgument(format!("unknown action {a:?} for player {:?}", p.name))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Strategy::new(player, actions))
    }

    pub fn parse_profile(&self, labels: &[impl AsRef<str>]) -> Result<StrategyProfile> {
        if labels.len() != self.players.len() {
            return Err(Error::InvalidArgument(format!(
                "profile needs {} strategies, got {}",
                self.players.len(),
                labels.len()
            )));
        }
        labels
            .iter()
            .enumerate()
            .map(|(i, l)| self.parse_strategy(i, l.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(StrategyProfile::new)
    }

    fn validate_utilities(&self) -> Result<()> {
        let values = &self.utilities.values;
        let expected = match self.utilities.kind {
            UtilityKind::Action => self.action_radix.size(),
            UtilityKind::Strategy => checked_count(&self.profile_count(), self.cap)
                .map_err(|_| Error::validation("utilities", "strategy profile space exceeds the cap"))?,
        };
        if values.len() != self.players.len() {
            return Err(Error::validation(
                "utilities",
                format!("{} utility tables for {} players", values.len(), self.players.len()),
            ));
        }
        for (i, per_state) in values.iter().enumerate() {
            if per_state.len() != self.space.len() || per_state.iter().any(|row| row.len() != expected) {
                return Err(Error::validation(
                    format!("utilities[{}]", self.players[i].name),
                    "utility table is not total over its domain",
                ));
            }
        }
        Ok(())
    }
}

fn strategy_count_of(p: &Player) -> BigUint {
    BigUint::from(p.actions.len()).pow(p.partition.len() as u32)
}

fn strategy_from_index_of(p: &Player, player: usize, index: usize) -> Strategy {
    let radix = MixedRadix::new(vec![p.actions.len(); p.partition.len()]);
    Strategy::new(player, radix.digits(index))
}

pub(crate) fn checked_count(count: &BigUint, cap: u64) -> Result<usize> {
    match count.to_u64() {
        Some(c) if c <= cap => Ok(c as usize),
        _ => Err(Error::StrategySpaceTooLarge {
            count: count.clone(),
            cap,
        }),
    }
}

pub(crate) fn factorial(m: usize) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

pub(crate) fn validate_players(space: &Arc<FiniteSpace>, players: &[Player]) -> Result<()> {
    if players.is_empty() {
        return Err(Error::validation("players", "a game needs at least one player"));
    }
    let mut names = HashSet::new();
    for p in players {
        let field = |f: &str| format!("players[{}].{f}", p.name);
        if p.name.is_empty() {
            return Err(Error::validation("players", "empty player name"));
        }
        if !names.insert(p.name.as_str()) {
            return Err(Error::validation("players", format!("duplicate player name {:?}", p.name)));
        }
        if p.actions.len() < 2 {
            return Err(Error::validation(field("actions"), "at least 2 actions are required"));
        }
        let mut seen = HashSet::new();
        for a in &p.actions {
            if a.is_empty() || a.contains(RESERVED_LABEL_CHARS) {
                return Err(Error::validation(
                    field("actions"),
                    format!("action label {a:?} is empty or contains ',' or '|'"),
                ));
            }
            if !seen.insert(a.as_str()) {
                return Err(Error::validation(field("actions"), format!("duplicate action {a:?}")));
            }
        }
        if !same_space(p.partition.space(), space) {
            return Err(Error::validation(field("partition"), "partition is over a different space"));
        }
        if !same_space(p.prior.space(), space) {
            return Err(Error::validation(field("prior"), "prior is over a different space"));
        }
        if let Some(&s) = p.prior.null_states().first() {
            return Err(Error::validation(
                field("prior"),
                format!("state {:?} has zero prior probability; priors must be strictly positive", space.label(s)),
            ));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfoWitness {
    /// Block of the reporting player's partition.
    pub cell: usize,
    pub other_player: usize,
    pub other_cell: usize,
    /// `p_i(other cell | cell)`, strictly between 0 and 1.
    pub probability: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlayerInfo {
    pub player: usize,
    pub perfect: bool,
    pub witnesses: Vec<InfoWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfoReport {
    pub players: Vec<PlayerInfo>,
}

impl InfoReport {
    pub fn any_imperfect(&self) -> bool {
        self.players.iter().any(|p| !p.perfect)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples_builtin::{figure1, prisoners_dilemma};
    use crate::measure::is_measurable;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn pd_profile(g: &EpistemicGame, a: &str, b: &str) -> StrategyProfile {
        g.parse_profile(&[a, b]).unwrap()
    }

    #[test]
    fn pd_strategies() {
        let g = prisoners_dilemma();
        let s = g.enumerate_strategies(0).unwrap();
        let labels: Vec<String> = s.iter().map(|s| g.strategy_label(s)).collect();
        assert_eq!(labels, ["deny", "confess"]);
    }

    #[test]
    fn strategy_counts_are_powers() {
        let g = figure1();
        assert_eq!(g.enumerate_strategies(0).unwrap().len(), 4);
        let sp = FiniteSpace::new(["a", "b", "c"]).unwrap();
        let p = Player::new(
            "x",
            ["1", "2", "3"],
            Partition::discrete(sp.clone()),
            Measure::uniform(sp.clone()),
        );
        let q = Player::new("y", ["1", "2"], Partition::trivial(sp.clone()), Measure::uniform(sp.clone()));
        let g = EpistemicGame::from_action_utilities(sp, vec![p, q], |_, _, _| Rational::zero()).unwrap();
        let all = g.enumerate_strategies(0).unwrap();
        assert_eq!(all.len(), 27);
        let distinct: HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), 27);
        for s in &all {
            let f: Vec<usize> = (0..3).map(|w| s.actions[g.player(0).partition.block_of(w)]).collect();
            assert!(is_measurable(&f, &g.player(0).partition));
        }
        // lexicographic: block 0 most significant
        assert_eq!(all[1].actions, vec![0, 0, 1]);
        assert_eq!(all[3].actions, vec![0, 1, 0]);
    }

    #[test]
    fn strategy_cap_reports_exact_count() {
        let g = figure1().with_cap(3);
        match g.enumerate_strategies(0) {
            Err(Error::StrategySpaceTooLarge { count, cap }) => {
                assert_eq!(count, BigUint::from(4u32));
                assert_eq!(cap, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn pd_expected_utilities() {
        let g = prisoners_dilemma();
        let dd = pd_profile(&g, "deny", "deny");
        let cc = pd_profile(&g, "confess", "confess");
        for i in 0..2 {
            assert_eq!(g.expected_utility(&dd, i, None), r(-1, 1));
            assert_eq!(g.expected_utility(&cc, i, None), r(-4, 1));
        }
    }

    #[test]
    fn conditional_expected_utility_on_figure1() {
        let g = figure1();
        let profile = g.parse_profile(&["3|4", "2|1"]).unwrap();
        let i1 = g.player(0).partition.block(0).clone();
        // posterior 1/2 on (3,2) worth 2 and 1/2 on (3,1) worth 0
        assert_eq!(g.conditional_expected_utility(&profile, 0, &i1).unwrap(), r(1, 1));
        assert_eq!(g.expected_utility(&profile, 0, None), r(3, 4));
        let whole = g.space().full_event();
        assert_eq!(
            g.conditional_expected_utility(&profile, 0, &whole).unwrap(),
            g.expected_utility(&profile, 0, None)
        );
    }

    #[test]
    fn info_reports() {
        assert!(prisoners_dilemma().info_report().players.iter().all(|p| p.perfect));
        let report = figure1().info_report();
        for p in &report.players {
            assert!(!p.perfect);
            assert!(p.witnesses.iter().all(|w| w.probability == r(1, 2)));
        }
        let w = &report.players[0].witnesses[0];
        assert_eq!((w.cell, w.other_player, w.other_cell), (0, 1, 0));

        let sp = FiniteSpace::new(["a", "b"]).unwrap();
        let part = Partition::discrete(sp.clone());
        let players = (0..2)
            .map(|i| Player::new(format!("p{i}"), ["x", "y"], part.clone(), Measure::uniform(sp.clone())))
            .collect();
        let g = EpistemicGame::from_action_utilities(sp, players, |_, _, _| Rational::zero()).unwrap();
        assert!(g.info_report().players.iter().all(|p| p.perfect));
    }

    #[test]
    fn validation_rejects_bad_players() {
        let sp = FiniteSpace::new(["a", "b"]).unwrap();
        let ok = || Player::new("p", ["x", "y"], Partition::trivial(sp.clone()), Measure::uniform(sp.clone()));
        let zero = |_: usize, _: usize, _: &[usize]| Rational::zero();

        let mut one_action = ok();
        one_action.actions.truncate(1);
        assert!(matches!(
            EpistemicGame::from_action_utilities(sp.clone(), vec![one_action], zero),
            Err(Error::Validation { .. })
        ));

        let mut null_prior = ok();
        null_prior.prior = Measure::dirac(sp.clone(), 0);
        let err = EpistemicGame::from_action_utilities(sp.clone(), vec![null_prior], zero).unwrap_err();
        assert!(err.to_string().contains("zero prior"), "{err}");

        let mut reserved = ok();
        reserved.actions[0] = "x,1".into();
        assert!(EpistemicGame::from_action_utilities(sp.clone(), vec![reserved], zero).is_err());

        assert!(EpistemicGame::from_action_utilities(sp.clone(), vec![ok(), ok()], zero).is_err());
    }

    #[test]
    fn missing_utility_entries_fail_validation() {
        let sp = FiniteSpace::new(["a"]).unwrap();
        let p = Player::new("p", ["x", "y"], Partition::trivial(sp.clone()), Measure::uniform(sp.clone()));
        let table = UtilityTable::new(UtilityKind::Action, vec![vec![vec![Rational::zero()]]]);
        assert!(matches!(EpistemicGame::new(sp, vec![p], table), Err(Error::Validation { .. })));
    }

    #[test]
    fn strategy_labels_round_trip() {
        let g = figure1();
        for i in 0..2 {
            for s in g.enumerate_strategies(i).unwrap() {
                assert_eq!(g.parse_strategy(i, &g.strategy_label(&s)).unwrap(), s);
            }
        }
        assert_eq!(g.parse_strategy(0, "3").unwrap().actions, vec![0, 0]);
        assert!(g.parse_strategy(0, "3|5").is_err());
        assert!(g.parse_strategy(0, "3|4|3").is_err());
    }

    #[test]
    fn mixed_radix_round_trip() {
        let m = MixedRadix::new(vec![2, 3, 4]);
        for i in 0..m.size() {
            assert_eq!(m.index(&m.digits(i)), i);
        }
        assert_eq!(m.digits(5), vec![0, 1, 1]);
    }
}
