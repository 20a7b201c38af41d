//! Built-in example games.

use crate::error::{Error, Result};
use crate::game::{EpistemicGame, Player};
use crate::measure::{FiniteSpace, Measure, Partition};
use crate::rational::Rational;

/// Names accepted by [`example`].
pub const EXAMPLE_NAMES: [&str; 4] = ["angels-demons", "figure1", "prisoners-dilemma", "rendezvous"];

pub fn example(name: &str) -> Result<EpistemicGame> {
    match name {
        "angels-demons" => Ok(angels_demons()),
        "figure1" => Ok(figure1()),
        "prisoners-dilemma" => Ok(prisoners_dilemma()),
        "rendezvous" => Ok(rendezvous()),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

/// Two prisoners who may deny or confess; utilities are negated years in prison.
pub fn prisoners_dilemma() -> EpistemicGame {
    let space = FiniteSpace::new(["0"]).expect("valid space");
    let players = ["prisoner1", "prisoner2"]
        .into_iter()
        .map(|name| {
            Player::new(
                name,
                ["deny", "confess"],
                Partition::trivial(space.clone()),
                Measure::uniform(space.clone()),
            )
        })
        .collect();
    // years[own][other], action 0 = deny, 1 = confess
    let years = [[1, 5], [0, 4]];
    EpistemicGame::from_action_utilities(space, players, |i, _, a| {
        Rational::from_integer(-years[a[i]][a[1 - i]])
    })
    .expect("valid game")
    .with_description("Prisoner's dilemma: deny or confess; utilities are negated years in prison")
}

/// Four states with crossing two-block partitions and a uniform prior.
pub fn figure1() -> EpistemicGame {
    let space = FiniteSpace::new(["I1_I2", "I1_J2", "J1_I2", "J1_J2"]).expect("valid space");
    let p1 = Partition::from_labels(space.clone(), &[vec!["I1_I2", "I1_J2"], vec!["J1_I2", "J1_J2"]])
        .expect("valid partition");
    let p2 = Partition::from_labels(space.clone(), &[vec!["I1_I2", "J1_I2"], vec!["I1_J2", "J1_J2"]])
        .expect("valid partition");
    let players = vec![
        Player::new("player1", ["3", "4"], p1, Measure::uniform(space.clone())),
        Player::new("player2", ["1", "2"], p2, Measure::uniform(space.clone())),
    ];
    // Battle-of-the-sexes payoffs: (3,2) favours player1, (4,1) favours player2.
    EpistemicGame::from_action_utilities(space, players, |i, _, a| {
        let v = match (a[0], a[1], i) {
            (0, 1, 0) => 2,
            (0, 1, 1) => 1,
            (1, 0, 0) => 1,
            (1, 0, 1) => 2,
            _ => 0,
        };
        Rational::from_integer(v)
    })
    .expect("valid game")
    .with_description(
        "Four states with crossing information partitions; the prior is uniform (any strictly positive prior fits the example); illustrative battle-of-the-sexes payoffs",
    )
}

/// A single decision maker facing an omniscient being who pays according to
/// the choice that would have been made in the other coin outcome as well.
pub fn angels_demons() -> EpistemicGame {
    let space = FiniteSpace::new(["heads", "tails"]).expect("valid space");
    let players = vec![Player::new(
        "decision_maker",
        ["honest", "dishonest"],
        Partition::discrete(space.clone()),
        Measure::uniform(space.clone()),
    )];
    const HONEST: usize = 0;
    const DISHONEST: usize = 1;
    EpistemicGame::from_strategy_utilities(space, players, |_, state, profile| {
        let s = &profile[0];
        let (heads, tails) = (s.action_at(0), s.action_at(1));
        let paid = match state {
            0 => heads == HONEST && tails == HONEST,
            _ => tails == DISHONEST && heads == DISHONEST,
        };
        Rational::from_integer(paid as i64)
    })
    .expect("valid game")
    .with_description("Angels and demons: fair coin, a fortune normalized to utility 1")
}

/// Two players who want to meet at the same restaurant.
pub fn rendezvous() -> EpistemicGame {
    let space = FiniteSpace::new(["0"]).expect("valid space");
    let players = ["Mary", "Joe"]
        .into_iter()
        .map(|name| {
            Player::new(
                name,
                ["luigi", "harry"],
                Partition::trivial(space.clone()),
                Measure::uniform(space.clone()),
            )
        })
        .collect();
    EpistemicGame::from_action_utilities(space, players, |_, _, a| Rational::from_integer((a[0] == a[1]) as i64))
        .expect("valid game")
        .with_description("Rendezvous: utility 1 when both pick the same restaurant, else 0")
}
