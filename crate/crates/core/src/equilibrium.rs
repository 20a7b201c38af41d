//! Bayes rationality, induced profile distributions and correlated
//! equilibria.
//!
//! Bayes rationality is evaluated with the other players' strategies held
//! fixed while one player varies the action taken on one cell. Correlated
//! equilibria are checked in action-swap form: for each player `i` and
//! choices `a`, `a'`,
//!
//! ```text
//!   Σ_{a⁻ⁱ} d(a, a⁻ⁱ) · [uᵢ(a, a⁻ⁱ) − uᵢ(a', a⁻ⁱ)] ≥ 0
//! ```
//!
//! and computed as an exact linear program over the simplex of profile
//! distributions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{checked_count, EpistemicGame, MixedRadix, StrategyProfile};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::measure::{same_space, Measure};
use crate::rational::Rational;

/// Largest profile space handed to the LP solver by default.
pub const DEFAULT_LP_CAP: u64 = 10_000;

/// A finite game in strategic form with exact payoffs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormGame {
    players: Vec<String>,
    choices: Vec<Vec<String>>,
    /// `payoffs[profile index][player]`.
    payoffs: Vec<Vec<Rational>>,
    radix: MixedRadix,
}

impl NormalFormGame {
    /// Builds a game from a payoff function `profile -> per-player payoffs`.
    pub fn new(
        players: Vec<String>,
        choices: Vec<Vec<String>>,
        payoff: impl Fn(&[usize]) -> Vec<Rational>,
    ) -> Result<NormalFormGame> {
        if players.len() != choices.len() || players.is_empty() {
            return Err(Error::DimensionMismatch(format!(
                "{} players with {} choice lists",
                players.len(),
                choices.len()
            )));
        }
        if let Some(i) = choices.iter().position(|c| c.len() < 2) {
            return Err(Error::validation(
                format!("choices[{}]", players[i]),
                "at least 2 choices are required",
            ));
        }
        let radix = MixedRadix::new(choices.iter().map(Vec::len).collect());
        let payoffs: Vec<Vec<Rational>> = radix.iter().map(|p| payoff(&p)).collect();
        if payoffs.iter().any(|row| row.len() != players.len()) {
            return Err(Error::DimensionMismatch("payoff row width differs from player count".into()));
        }
        Ok(NormalFormGame {
            players,
            choices,
            payoffs,
            radix,
        })
    }

    pub fn players(&self) -> &[String] {
        &self.players
    }

    pub fn choices(&self, player: usize) -> &[String] {
        &self.choices[player]
    }

    pub fn num_players(&self) -> usize {
        self.players.len()
    }

    pub fn dims(&self) -> &[usize] {
        self.radix.radices()
    }

    pub fn profile_count(&self) -> usize {
        self.radix.size()
    }

    pub fn profile(&self, index: usize) -> Vec<usize> {
        self.radix.digits(index)
    }

    pub fn profile_index(&self, profile: &[usize]) -> usize {
        self.radix.index(profile)
    }

    pub fn payoff(&self, player: usize, profile: &[usize]) -> &Rational {
        &self.payoffs[self.radix.index(profile)][player]
    }

    pub fn profile_labels(&self, index: usize) -> Vec<String> {
        self.profile(index)
            .iter()
            .enumerate()
            .map(|(i, &c)| self.choices[i][c].clone())
            .collect()
    }

    pub fn parse_profile(&self, labels: &[impl AsRef<str>]) -> Result<Vec<usize>> {
        if labels.len() != self.players.len() {
            return Err(Error::DimensionMismatch(format!(
                "profile has {} entries for {} players",
                labels.len(),
                self.players.len()
            )));
        }
        labels
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let l = l.as_ref();
                self.choices[i].iter().position(|c| c == l).ok_or_else(|| {
                    Error::InvalidArgument(format!("unknown choice {l:?} for player {:?}", self.players[i]))
                })
            })
            .collect()
    }

    pub fn player_index(&self, name: &str) -> Option<usize> {
        self.players.iter().position(|p| p == name)
    }
}

/// An exact probability distribution over profiles, indexed like the
/// profiles of the game it belongs to (player 0 most significant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionDistribution {
    radix: MixedRadix,
    weights: Vec<Rational>,
}

impl ActionDistribution {
    pub fn new(dims: Vec<usize>, weights: Vec<Rational>) -> Result<ActionDistribution> {
        let radix = MixedRadix::new(dims);
        if weights.len() != radix.size() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {} profiles",
                weights.len(),
                radix.size()
            )));
        }
        if weights.iter().any(Rational::is_negative) {
            return Err(Error::InvalidMeasure("negative profile weight".into()));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidMeasure(format!("profile weights sum to {total}, not 1")));
        }
        Ok(ActionDistribution { radix, weights })
    }

    pub fn point_mass(dims: Vec<usize>, profile: &[usize]) -> ActionDistribution {
        let radix = MixedRadix::new(dims);
        let mut weights = vec![Rational::zero(); radix.size()];
        weights[radix.index(profile)] = Rational::one();
        ActionDistribution { radix, weights }
    }

    /// Uniform weight over the listed profiles.
    pub fn uniform_over(dims: Vec<usize>, profiles: &[Vec<usize>]) -> Result<ActionDistribution> {
        let radix = MixedRadix::new(dims);
        let mut weights = vec![Rational::zero(); radix.size()];
        let w = Rational::new(1, profiles.len().max(1) as i64);
        for p in profiles {
            weights[radix.index(p)] += &w;
        }
        ActionDistribution::new(radix.radices().to_vec(), weights)
    }

    pub fn dims(&self) -> &[usize] {
        self.radix.radices()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, profile: &[usize]) -> &Rational {
        &self.weights[self.radix.index(profile)]
    }

    /// Profiles with positive weight, in profile order.
    pub fn support(&self) -> Vec<(Vec<usize>, Rational)> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| w.is_positive())
            .map(|(i, w)| (self.radix.digits(i), w.clone()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BayesViolation {
    pub player: usize,
    pub cell: usize,
    pub current: usize,
    pub better: usize,
    /// Conditional expected-utility gain of `better` over `current`.
    pub gain: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BayesReport {
    pub ok: bool,
    pub violations: Vec<BayesViolation>,
}

/// Checks that every player's action on every cell maximizes conditional
/// expected utility against the others' fixed strategies.
pub fn is_bayes_rational(g: &EpistemicGame, profile: &StrategyProfile) -> Result<BayesReport> {
    g.require_action_kind()?;
    g.check_profile(profile)?;
    let mut violations = Vec::new();
    for (i, player) in g.players().iter().enumerate() {
        let own = profile.strategy(i);
        for (c, cell) in player.partition.blocks().iter().enumerate() {
            let current = own.action_at(c);
            let base = g.conditional_expected_utility(profile, i, cell)?;
            for alt in 0..player.actions.len() {
                if alt == current {
                    continue;
                }
                let mut deviated = own.clone();
                deviated.actions[c] = alt;
                let value = g.conditional_expected_utility(&profile.with_strategy(deviated), i, cell)?;
                let gain = value - &base;
                if gain.is_positive() {
                    violations.push(BayesViolation {
                        player: i,
                        cell: c,
                        current,
                        better: alt,
                        gain,
                    });
                }
            }
        }
    }
    Ok(BayesReport {
        ok: violations.is_empty(),
        violations,
    })
}

/// Every Bayes-rational profile, in profile order.
pub fn enumerate_bayes_rational(g: &EpistemicGame) -> Result<Vec<StrategyProfile>> {
    g.require_action_kind()?;
    let mut out = Vec::new();
    for profile in g.enumerate_profiles()? {
        if is_bayes_rational(g, &profile)?.ok {
            out.push(profile);
        }
    }
    Ok(out)
}

/// Pushforward of `m` through the profile's state-wise action map.
pub fn induced_distribution(g: &EpistemicGame, profile: &StrategyProfile, m: &Measure) -> Result<ActionDistribution> {
    g.require_action_kind()?;
    g.check_profile(profile)?;
    if !same_space(m.space(), g.space()) {
        return Err(Error::MixedSpaces);
    }
    let radix = g.action_radix();
    let mut weights = vec![Rational::zero(); radix.size()];
    for w in 0..g.space().len() {
        weights[g.action_profile_index(&g.consequence(profile, w))] += m.weight(w);
    }
    ActionDistribution::new(radix.radices().to_vec(), weights)
}

/// Strategic form with strategies as choices and common-prior expected
/// utilities as payoffs.
pub fn to_normal_form(g: &EpistemicGame) -> Result<NormalFormGame> {
    g.require_action_kind()?;
    g.require_strategic()?;
    let prior = g.common_prior().ok_or(Error::NoCommonPrior)?.clone();
    g.strategy_radix()?;
    let players = g.players().iter().map(|p| p.name.clone()).collect();
    let choices = (0..g.num_players())
        .map(|i| {
            g.enumerate_strategies(i)
                .map(|ss| ss.iter().map(|s| g.strategy_label(s)).collect())
        })
        .collect::<Result<Vec<Vec<String>>>>()?;
    NormalFormGame::new(players, choices, |digits| {
        let profile = g.profile_from_indices(digits);
        (0..g.num_players())
            .map(|i| g.expected_utility(&profile, i, Some(&prior)))
            .collect()
    })
}

/// Strategic form over action profiles, for games whose utilities do not
/// depend on the state.
pub fn action_normal_form(g: &EpistemicGame) -> Result<NormalFormGame> {
    g.require_action_kind()?;
    g.require_strategic()?;
    if !g.is_state_independent() {
        return Err(Error::StateDependentUtilities);
    }
    let players = g.players().iter().map(|p| p.name.clone()).collect();
    let choices = g.players().iter().map(|p| p.actions.clone()).collect();
    NormalFormGame::new(players, choices, |a| {
        (0..g.num_players())
            .map(|i| g.action_utility(i, 0, a).expect("action kind").clone())
            .collect()
    })
}

/// One action-swap constraint and its value under a distribution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SwapConstraint {
    pub player: usize,
    pub told: usize,
    pub deviation: usize,
    /// Left-hand side of the constraint; must be nonnegative.
    pub slack: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CeReport {
    pub ok: bool,
    pub violated: Vec<SwapConstraint>,
}

/// Coefficient vector (over profile indices) of each swap constraint.
fn constraint_rows(nf: &NormalFormGame) -> Vec<((usize, usize, usize), Vec<Rational>)> {
    let mut rows = Vec::new();
    for i in 0..nf.num_players() {
        let k = nf.choices[i].len();
        for told in 0..k {
            for deviation in 0..k {
                if deviation == told {
                    continue;
                }
                let mut row = vec![Rational::zero(); nf.profile_count()];
                for (idx, coeff) in row.iter_mut().enumerate() {
                    let profile = nf.profile(idx);
                    if profile[i] != told {
                        continue;
                    }
                    let mut swapped = profile.clone();
                    swapped[i] = deviation;
                    *coeff = nf.payoff(i, &profile) - nf.payoff(i, &swapped);
                }
                rows.push(((i, told, deviation), row));
            }
        }
    }
    rows
}

/// Values of all swap constraints under `d`, ordered by (player, told, deviation).
pub fn swap_constraints(nf: &NormalFormGame, d: &ActionDistribution) -> Result<Vec<SwapConstraint>> {
    if d.dims() != nf.dims() {
        return Err(Error::DimensionMismatch(format!(
            "distribution over {:?} profiles, game has {:?}",
            d.dims(),
            nf.dims()
        )));
    }
    Ok(constraint_rows(nf)
        .into_iter()
        .map(|((player, told, deviation), row)| SwapConstraint {
            player,
            told,
            deviation,
            slack: row.iter().zip(d.weights()).map(|(c, w)| c * w).sum(),
        })
        .collect())
}

pub fn is_correlated_equilibrium(nf: &NormalFormGame, d: &ActionDistribution) -> Result<CeReport> {
    let violated: Vec<SwapConstraint> = swap_constraints(nf, d)?
        .into_iter()
        .filter(|c| c.slack.is_negative())
        .collect();
    Ok(CeReport {
        ok: violated.is_empty(),
        violated,
    })
}

/// Linear objective over profile distributions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Objective {
    /// Sum of all players' expected payoffs.
    SumOfUtilities,
    /// One player's expected payoff.
    Player(usize),
    /// Explicit coefficient per profile index.
    Custom(Vec<Rational>),
}

impl Objective {
    pub fn coefficients(&self, nf: &NormalFormGame) -> Result<Vec<Rational>> {
        let n = nf.profile_count();
        match self {
            Objective::SumOfUtilities => Ok((0..n).map(|p| nf.payoffs[p].iter().sum()).collect()),
            Objective::Player(i) if *i < nf.num_players() => Ok((0..n).map(|p| nf.payoffs[p][*i].clone()).collect()),
            Objective::Player(i) => Err(Error::InvalidArgument(format!("no player with index {i}"))),
            Objective::Custom(c) if c.len() == n => Ok(c.clone()),
            Objective::Custom(c) => Err(Error::DimensionMismatch(format!(
                "objective has {} coefficients for {n} profiles",
                c.len()
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CeResult {
    pub distribution: ActionDistribution,
    pub objective: Rational,
    /// Value of every swap constraint at the optimum.
    pub certificate: Vec<SwapConstraint>,
}

/// Maximizes `objective` over the correlated-equilibrium polytope.
pub fn find_correlated_equilibrium(nf: &NormalFormGame, objective: &Objective) -> Result<CeResult> {
    find_correlated_equilibrium_with_cap(nf, objective, DEFAULT_LP_CAP)
}

pub fn find_correlated_equilibrium_with_cap(nf: &NormalFormGame, objective: &Objective, cap: u64) -> Result<CeResult> {
    checked_count(&nf.profile_count().into(), cap)?;
    let c = objective.coefficients(nf)?;
    let n = nf.profile_count();
    let mut lp = LinearProgram::new(c);
    lp.add(vec![Rational::one(); n], Relation::Eq, Rational::one());
    for (_, row) in constraint_rows(nf) {
        lp.add(row, Relation::Ge, Rational::zero());
    }
    match lp.solve() {
        LpOutcome::Optimal { x, value } => {
            let distribution = ActionDistribution::new(nf.dims().to_vec(), x)?;
            let certificate = swap_constraints(nf, &distribution)?;
            Ok(CeResult {
                distribution,
                objective: value,
                certificate,
            })
        }
        // The polytope contains every Nash equilibrium and the simplex is bounded.
        LpOutcome::Infeasible | LpOutcome::Unbounded => {
            unreachable!("correlated-equilibrium polytope is a nonempty polytope")
        }
    }
}
