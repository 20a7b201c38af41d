//! Strategic certainty: response maps, congruence, coherent systems of
//! strategy profiles and their rational solutions.
//!
//! A coherent system is a set of profiles whose projection onto every
//! player is a bijection onto that player's strategies. If some player's
//! strategy changes, every other player's strategy changes too. Systems are
//! stored extensionally; the pairwise response maps can be read back with
//! [`CoherentSystem::response_map`].

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{factorial, EpistemicGame, StrategyProfile};
use crate::rational::Rational;

/// A map from the strategies of `from` to the strategies of `to`,
/// by strategy index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResponseMap {
    pub from: usize,
    pub to: usize,
    pub mapping: Vec<usize>,
}

impl ResponseMap {
    pub fn new(from: usize, to: usize, mapping: Vec<usize>) -> ResponseMap {
        ResponseMap { from, to, mapping }
    }

    pub fn apply(&self, strategy: usize) -> usize {
        self.mapping[strategy]
    }

    pub fn is_constant(&self) -> bool {
        self.mapping.windows(2).all(|w| w[0] == w[1])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceCounterexample {
    pub player: usize,
    pub strategy: usize,
    /// Where the round trip through the other player lands instead.
    pub round_trip: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub ok: bool,
    pub counterexample: Option<CongruenceCounterexample>,
}

/// Checks that `back ∘ forth` and `forth ∘ back` are identities.
pub fn check_congruence(forth: &ResponseMap, back: &ResponseMap) -> Result<CongruenceReport> {
    let (ni, nj) = (forth.mapping.len(), back.mapping.len());
    if forth.from != back.to
        || forth.to != back.from
        || forth.mapping.iter().any(|&t| t >= nj)
        || back.mapping.iter().any(|&s| s >= ni)
    {
        return Err(Error::DimensionMismatch("response maps are not over matching strategy lists".into()));
    }
    let first_failure = |f: &ResponseMap, g: &ResponseMap| {
        (0..f.mapping.len()).find_map(|s| {
            let round_trip = g.apply(f.apply(s));
            (round_trip != s).then_some(CongruenceCounterexample {
                player: f.from,
                strategy: s,
                round_trip,
            })
        })
    };
    let counterexample = first_failure(forth, back).or_else(|| first_failure(back, forth));
    Ok(CongruenceReport {
        ok: counterexample.is_none(),
        counterexample,
    })
}

/// Profiles by strategy index, ordered by the first player's strategy.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoherentSystem {
    profiles: Vec<Vec<usize>>,
}

impl CoherentSystem {
    /// Builds a system, checking that every projection is a bijection onto
    /// `0..m`.
    pub fn new(mut profiles: Vec<Vec<usize>>) -> Result<CoherentSystem> {
        let m = profiles.len();
        let n = profiles.first().map_or(0, Vec::len);
        for i in 0..n {
            let mut seen = vec![false; m];
            for p in &profiles {
                if p.len() != n || p[i] >= m || std::mem::replace(&mut seen[p[i]], true) {
                    return Err(Error::InvalidArgument(format!(
                        "projection onto player {i} is not a bijection"
                    )));
                }
            }
        }
        profiles.sort();
        Ok(CoherentSystem { profiles })
    }

    pub fn profiles(&self) -> &[Vec<usize>] {
        &self.profiles
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    pub fn strategy_profiles(&self, g: &EpistemicGame) -> Vec<StrategyProfile> {
        self.profiles.iter().map(|p| g.profile_from_indices(p)).collect()
    }

    pub fn contains(&self, indices: &[usize]) -> bool {
        self.profiles.iter().any(|p| p == indices)
    }

    /// The response of `to` to each strategy of `from` within the system.
    pub fn response_map(&self, from: usize, to: usize) -> ResponseMap {
        let mut mapping = vec![0; self.profiles.len()];
        for p in &self.profiles {
            mapping[p[from]] = p[to];
        }
        ResponseMap::new(from, to, mapping)
    }

    /// True iff distinct members differ in every coordinate.
    pub fn is_coherent(&self) -> bool {
        self.profiles.iter().enumerate().all(|(a, s)| {
            self.profiles[a + 1..]
                .iter()
                .all(|t| s.iter().zip(t).all(|(x, y)| x != y))
        })
    }
}

/// Lazy enumeration of all coherent systems of a game.
///
/// The first player's strategies are listed in order; every other player
/// runs through all permutations of their strategies, in lexicographic
/// order, the second player being the slowest.
#[derive(Debug, Clone)]
pub struct CoherentSystems {
    perms: Vec<Vec<usize>>,
    total: BigUint,
    done: bool,
}

impl CoherentSystems {
    fn new(num_players: usize, m: Option<usize>) -> CoherentSystems {
        match m {
            Some(m) => CoherentSystems {
                perms: vec![(0..m).collect(); num_players - 1],
                total: factorial(m).pow(num_players as u32 - 1),
                done: false,
            },
            None => CoherentSystems {
                perms: Vec::new(),
                total: BigUint::zero(),
                done: true,
            },
        }
    }

    /// Exact number of systems the full enumeration yields.
    pub fn total(&self) -> &BigUint {
        &self.total
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

impl Iterator for CoherentSystems {
    type Item = CoherentSystem;

    fn next(&mut self) -> Option<CoherentSystem> {
        if self.done {
            return None;
        }
        let m = self.perms.first().map_or(0, Vec::len);
        let profiles = (0..m)
            .map(|k| std::iter::once(k).chain(self.perms.iter().map(|p| p[k])).collect())
            .collect();
        // Odometer over the permutations, last player fastest.
        self.done = !self.perms.iter_mut().rev().any(|p| {
            if next_permutation(p) {
                true
            } else {
                p.sort_unstable();
                false
            }
        });
        Some(CoherentSystem { profiles })
    }
}

/// The common strategy count, or `None` when players' counts differ.
fn common_strategy_count(g: &EpistemicGame) -> Result<Option<usize>> {
    let counts: Vec<BigUint> = (0..g.num_players()).map(|i| g.strategy_count(i)).collect();
    if counts.windows(2).any(|w| w[0] != w[1]) {
        return Ok(None);
    }
    g.strategy_count_capped(0).map(Some)
}

/// Streams every coherent system without a total-count cap.
pub fn coherent_systems(g: &EpistemicGame) -> Result<CoherentSystems> {
    g.require_strategic()?;
    Ok(CoherentSystems::new(g.num_players(), common_strategy_count(g)?))
}

/// Every coherent system, refusing when there are more than `cap`.
pub fn enumerate_coherent_systems(g: &EpistemicGame, cap: u64) -> Result<CoherentSystems> {
    let systems = coherent_systems(g)?;
    match systems.total.to_u64() {
        Some(t) if t <= cap => Ok(systems),
        _ => Err(Error::EnumerationCapExceeded {
            total: systems.total.clone(),
            cap,
        }),
    }
}

/// Expected utilities of every member of a system, `utilities[k][player]`
/// under each player's own prior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemUtilities {
    pub utilities: Vec<Vec<Rational>>,
}

impl SystemUtilities {
    pub fn new(g: &EpistemicGame, sys: &CoherentSystem) -> SystemUtilities {
        let utilities = sys
            .profiles
            .iter()
            .map(|p| {
                let profile = g.profile_from_indices(p);
                (0..g.num_players()).map(|i| g.expected_utility(&profile, i, None)).collect()
            })
            .collect();
        SystemUtilities { utilities }
    }

    /// Members that maximize every player's expected utility over the system.
    pub fn rational(&self) -> Vec<usize> {
        let Some(first) = self.utilities.first() else {
            return Vec::new();
        };
        let best: Vec<&Rational> = (0..first.len())
            .map(|i| self.utilities.iter().map(|u| &u[i]).max().expect("nonempty"))
            .collect();
        (0..self.utilities.len())
            .filter(|&k| self.utilities[k].iter().zip(&best).all(|(u, b)| u == *b))
            .collect()
    }

    /// True iff no member weakly improves everyone and strictly improves someone.
    pub fn is_pareto(&self, k: usize) -> bool {
        let s = &self.utilities[k];
        !self.utilities.iter().any(|t| {
            t.iter().zip(s).all(|(a, b)| a >= b) && t.iter().zip(s).any(|(a, b)| a > b)
        })
    }

    pub fn essentially_unique(&self, members: &[usize]) -> bool {
        members.windows(2).all(|w| self.utilities[w[0]] == self.utilities[w[1]])
    }
}

/// Members of `sys` that are optimal for every player within the system.
pub fn rational_solutions(g: &EpistemicGame, sys: &CoherentSystem) -> Vec<StrategyProfile> {
    SystemUtilities::new(g, sys)
        .rational()
        .into_iter()
        .map(|k| g.profile_from_indices(&sys.profiles[k]))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EfficiencyReport {
    /// One flag per member of the queried subset.
    pub pareto: Vec<bool>,
    pub essentially_unique: bool,
}

pub fn efficiency_report(g: &EpistemicGame, sys: &CoherentSystem, subset: &[StrategyProfile]) -> Result<EfficiencyReport> {
    let eval = SystemUtilities::new(g, sys);
    let members = subset
        .iter()
        .map(|p| {
            let idx = g.profile_indices(p);
            sys.profiles
                .iter()
                .position(|q| *q == idx)
                .ok_or_else(|| Error::InvalidArgument("subset is not contained in the system".into()))
        })
        .collect::<Result<Vec<usize>>>()?;
    Ok(EfficiencyReport {
        pareto: members.iter().map(|&k| eval.is_pareto(k)).collect(),
        essentially_unique: eval.essentially_unique(&members),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleSystem {
    pub system: CoherentSystem,
    pub solutions: Vec<StrategyProfile>,
}

/// Systems with at least one rational solution, paired with their solutions.
pub fn admissible_systems(g: &EpistemicGame, cap: u64) -> Result<Vec<AdmissibleSystem>> {
    Ok(enumerate_coherent_systems(g, cap)?
        .filter_map(|system| {
            let solutions = rational_solutions(g, &system);
            (!solutions.is_empty()).then_some(AdmissibleSystem { system, solutions })
        })
        .collect())
}
