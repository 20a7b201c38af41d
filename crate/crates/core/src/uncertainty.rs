//! Strategic uncertainty: conjectures that may be wrong, subjective
//! rationality and classification of solutions.
//!
//! A conjecture of player `i` maps each of their own strategies to the
//! strategies they expect from everyone else. It is fixed when the map
//! ignores the own strategy.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{EpistemicGame, Strategy, StrategyProfile};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conjecture {
    /// Others' strategy indices, in player order with the owner skipped.
    Fixed(Vec<usize>),
    /// One entry per own strategy index.
    Map(Vec<Vec<usize>>),
}

impl Conjecture {
    pub fn target(&self, own: usize) -> &[usize] {
        match self {
            Conjecture::Fixed(t) => t,
            Conjecture::Map(m) => &m[own],
        }
    }

    pub fn is_fixed(&self) -> bool {
        match self {
            Conjecture::Fixed(_) => true,
            Conjecture::Map(m) => m.windows(2).all(|w| w[0] == w[1]),
        }
    }

    /// The profile player `owner` expects when playing `own`.
    pub fn conjectured_profile(&self, g: &EpistemicGame, owner: usize, own: &Strategy) -> StrategyProfile {
        let target = self.target(g.strategy_index(own));
        let mut others = target.iter();
        let indices: Vec<usize> = (0..g.num_players())
            .map(|j| if j == owner { 0 } else { *others.next().expect("target per other player") })
            .collect();
        g.profile_from_indices(&indices).with_strategy(own.clone())
    }

    fn check(&self, g: &EpistemicGame, owner: usize) -> Result<()> {
        let name = &g.player(owner).name;
        let others: Vec<usize> = (0..g.num_players()).filter(|&j| j != owner).collect();
        let check_target = |t: &[usize]| -> Result<()> {
            if t.len() != others.len() {
                return Err(Error::validation(
                    format!("conjectures.{name}"),
                    format!("expected strategies for {} other players, got {}", others.len(), t.len()),
                ));
            }
            for (&j, &s) in others.iter().zip(t) {
                if g.strategy_count(j) <= s.into() {
                    return Err(Error::validation(
                        format!("conjectures.{name}"),
                        format!("strategy index {s} out of range for {}", g.player(j).name),
                    ));
                }
            }
            Ok(())
        };
        match self {
            Conjecture::Fixed(t) => check_target(t),
            Conjecture::Map(m) => {
                let count = g.strategy_count_capped(owner)?;
                if m.len() != count {
                    return Err(Error::validation(
                        format!("conjectures.{name}"),
                        format!("map covers {} of {count} strategies", m.len()),
                    ));
                }
                m.iter().try_for_each(|t| check_target(t))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureProfile {
    conjectures: Vec<Conjecture>,
}

impl ConjectureProfile {
    pub fn new(g: &EpistemicGame, conjectures: Vec<Conjecture>) -> Result<ConjectureProfile> {
        if conjectures.len() != g.num_players() {
            return Err(Error::DimensionMismatch(format!(
                "{} conjectures for {} players",
                conjectures.len(),
                g.num_players()
            )));
        }
        for (i, c) in conjectures.iter().enumerate() {
            c.check(g, i)?;
        }
        Ok(ConjectureProfile { conjectures })
    }

    /// Every player expects the others to play their part of `profile`,
    /// whatever they do themselves.
    pub fn fixed_at(g: &EpistemicGame, profile: &StrategyProfile) -> ConjectureProfile {
        let idx = g.profile_indices(profile);
        let conjectures = (0..g.num_players())
            .map(|i| {
                Conjecture::Fixed(idx.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &s)| s).collect())
            })
            .collect();
        ConjectureProfile { conjectures }
    }

    pub fn conjecture(&self, player: usize) -> &Conjecture {
        &self.conjectures[player]
    }

    pub fn conjectures(&self) -> &[Conjecture] {
        &self.conjectures
    }

    pub fn is_fixed(&self) -> bool {
        self.conjectures.iter().all(Conjecture::is_fixed)
    }
}

/// Expected utility of `own` against what `conj` predicts, under the
/// player's own prior.
pub fn conjectured_value(g: &EpistemicGame, player: usize, conj: &Conjecture, own: &Strategy) -> Rational {
    g.expected_utility(&conj.conjectured_profile(g, player, own), player, None)
}

/// All strategies maximizing the conjectured value, with that value.
fn best_with_value(g: &EpistemicGame, player: usize, conj: &Conjecture) -> Result<(Vec<Strategy>, Rational)> {
    let mut best: Vec<Strategy> = Vec::new();
    let mut value: Option<Rational> = None;
    for s in g.enumerate_strategies(player)? {
        let v = conjectured_value(g, player, conj, &s);
        match &value {
            Some(b) if v < *b => {}
            Some(b) if v == *b => best.push(s),
            _ => {
                best = vec![s];
                value = Some(v);
            }
        }
    }
    Ok((best, value.expect("at least one strategy")))
}

pub fn best_responses_to_conjecture(g: &EpistemicGame, player: usize, conj: &Conjecture) -> Result<Vec<Strategy>> {
    Ok(best_with_value(g, player, conj)?.0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubjectiveViolation {
    pub player: usize,
    pub value: Rational,
    pub best_value: Rational,
    /// Strategy indices of the best responses.
    pub best: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubjectiveReport {
    pub ok: bool,
    pub violations: Vec<SubjectiveViolation>,
}

pub fn subjectively_rational(g: &EpistemicGame, conj: &ConjectureProfile, profile: &StrategyProfile) -> Result<SubjectiveReport> {
    g.check_profile(profile)?;
    let mut violations = Vec::new();
    for i in 0..g.num_players() {
        let c = conj.conjecture(i);
        let (best, best_value) = best_with_value(g, i, c)?;
        let own = profile.strategy(i);
        if !best.contains(own) {
            violations.push(SubjectiveViolation {
                player: i,
                value: conjectured_value(g, i, c, own),
                best_value,
                best: best.iter().map(|s| g.strategy_index(s)).collect(),
            });
        }
    }
    Ok(SubjectiveReport {
        ok: violations.is_empty(),
        violations,
    })
}

pub fn conjectures_correct(g: &EpistemicGame, conj: &ConjectureProfile, profile: &StrategyProfile) -> bool {
    (0..g.num_players()).all(|i| conj.conjecture(i).conjectured_profile(g, i, profile.strategy(i)) == *profile)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    SubjectiveCorrelatedEquilibrium,
    RationalIncorrectConjectures,
    Irrational,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::SubjectiveCorrelatedEquilibrium => "subjective_correlated_equilibrium",
            Classification::RationalIncorrectConjectures => "rational_incorrect_conjectures",
            Classification::Irrational => "irrational",
        }
    }
}

pub fn classify_solution(g: &EpistemicGame, conj: &ConjectureProfile, profile: &StrategyProfile) -> Result<Classification> {
    Ok(if !subjectively_rational(g, conj, profile)?.ok {
        Classification::Irrational
    } else if conjectures_correct(g, conj, profile) {
        Classification::SubjectiveCorrelatedEquilibrium
    } else {
        Classification::RationalIncorrectConjectures
    })
}

/// For two players with equally many strategies: each expects the other to
/// play the strategy with the same index as their own.
pub fn matching_conjectures(g: &EpistemicGame) -> Result<ConjectureProfile> {
    if g.num_players() != 2 {
        return Err(Error::WrongPlayerCount(format!("matching conjectures need 2 players, got {}", g.num_players())));
    }
    let m = g.strategy_count_capped(0)?;
    if g.strategy_count(1) != m.into() {
        return Err(Error::DimensionMismatch("players have different strategy counts".into()));
    }
    let map: Vec<Vec<usize>> = (0..m).map(|k| vec![k]).collect();
    ConjectureProfile::new(g, vec![Conjecture::Map(map.clone()), Conjecture::Map(map)])
}
