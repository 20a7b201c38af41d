//! JSON file formats: game files, conjecture files and profile
//! distributions.
//!
//! Output is canonical: sorted keys, two-space indentation, LF line endings
//! and a trailing newline, so identical inputs give identical bytes.
//! Rationals are written as `"p/q"` strings, or `"k"` for integers.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::equilibrium::{ActionDistribution, NormalFormGame};
use crate::error::{Error, Result};
use crate::game::{checked_count, validate_players, EpistemicGame, MixedRadix, Player, UtilityKind, UtilityTable, DEFAULT_CAP};
use crate::measure::{FiniteSpace, Measure, Partition};
use crate::rational::Rational;
use crate::uncertainty::{Conjecture, ConjectureProfile};

/// Pretty-prints with sorted keys and a trailing newline.
pub fn canonical_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values always serialize");
    s.push('\n');
    s
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGame {
    #[serde(default)]
    comment: Option<String>,
    states: Vec<String>,
    utility_kind: String,
    players: Vec<RawPlayer>,
    utilities: Vec<RawUtility>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPlayer {
    name: String,
    actions: Vec<String>,
    partition: Vec<Vec<String>>,
    prior: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawUtility {
    player: String,
    state: String,
    #[serde(default)]
    profile: Option<Vec<String>>,
    #[serde(default)]
    strategies: Option<Vec<Vec<String>>>,
    value: String,
}

fn parse_rational(field: &str, s: &str) -> Result<Rational> {
    s.parse()
        .map_err(|e: crate::rational::ParseRationalError| Error::validation(field, e.to_string()))
}

fn action_index(p: &Player, field: &str, label: &str) -> Result<usize> {
    p.action_index(label)
        .ok_or_else(|| Error::validation(field, format!("unknown action {label:?} for player {:?}", p.name)))
}

/// Parses and validates a game file.
pub fn parse_game(bytes: &[u8]) -> Result<EpistemicGame> {
    let raw: RawGame = serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))?;
    let kind = match raw.utility_kind.as_str() {
        "action" => UtilityKind::Action,
        "strategy" => UtilityKind::Strategy,
        other => {
            return Err(Error::validation(
                "utility_kind",
                format!("expected \"action\" or \"strategy\", got {other:?}"),
            ))
        }
    };
    let space = FiniteSpace::new(&raw.states).map_err(|e| Error::validation("states", e.to_string()))?;

    let mut players = Vec::with_capacity(raw.players.len());
    for rp in &raw.players {
        let field = |f: &str| format!("players[{}].{f}", rp.name);
        let partition = Partition::from_labels(space.clone(), &rp.partition)
            .map_err(|e| Error::validation(field("partition"), e.to_string()))?;
        if let Some(unknown) = rp.prior.keys().find(|s| space.index_of(s).is_none()) {
            return Err(Error::validation(field("prior"), format!("unknown state {unknown:?}")));
        }
        let weights = space
            .labels()
            .iter()
            .map(|s| match rp.prior.get(s) {
                Some(v) => parse_rational(&field(&format!("prior.{s}")), v),
                None => Err(Error::validation(field("prior"), format!("missing state {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let prior = Measure::new(space.clone(), weights).map_err(|e| Error::validation(field("prior"), e.to_string()))?;
        players.push(Player::new(rp.name.clone(), rp.actions.clone(), partition, prior));
    }
    validate_players(&space, &players)?;

    let width = match kind {
        UtilityKind::Action => players.iter().map(|p| p.actions.len()).product::<usize>(),
        UtilityKind::Strategy => {
            let counts: Vec<usize> = players
                .iter()
                .map(|p| checked_count(&num_bigint::BigUint::from(p.actions.len()).pow(p.partition.len() as u32), DEFAULT_CAP))
                .collect::<Result<_>>()?;
            checked_count(&counts.iter().product::<usize>().into(), DEFAULT_CAP)?
        }
    };
    let mut table: Vec<Vec<Vec<Option<Rational>>>> = vec![vec![vec![None; width]; space.len()]; players.len()];
    for (k, u) in raw.utilities.iter().enumerate() {
        let field = format!("utilities[{k}]");
        let i = players
            .iter()
            .position(|p| p.name == u.player)
            .ok_or_else(|| Error::validation(&field, format!("unknown player {:?}", u.player)))?;
        let states: Vec<usize> = if u.state == "*" {
            (0..space.len()).collect()
        } else {
            vec![space
                .index_of(&u.state)
                .ok_or_else(|| Error::validation(&field, format!("unknown state {:?}", u.state)))?]
        };
        let column = match (kind, &u.profile, &u.strategies) {
            (UtilityKind::Action, Some(profile), None) => {
                if profile.len() != players.len() {
                    return Err(Error::validation(&field, format!("profile needs {} actions", players.len())));
                }
                let digits = players
                    .iter()
                    .zip(profile)
                    .map(|(p, a)| action_index(p, &field, a))
                    .collect::<Result<Vec<_>>>()?;
                MixedRadix::new(players.iter().map(|p| p.actions.len()).collect()).index(&digits)
            }
            (UtilityKind::Strategy, None, Some(strategies)) => {
                if strategies.len() != players.len() {
                    return Err(Error::validation(&field, format!("strategies needs {} entries", players.len())));
                }
                let mut digits = Vec::with_capacity(players.len());
                for (p, s) in players.iter().zip(strategies) {
                    if s.len() != p.partition.len() {
                        return Err(Error::validation(
                            &field,
                            format!("strategy of {:?} needs {} cell actions", p.name, p.partition.len()),
                        ));
                    }
                    let cells = s.iter().map(|a| action_index(p, &field, a)).collect::<Result<Vec<_>>>()?;
                    digits.push(MixedRadix::new(vec![p.actions.len(); p.partition.len()]).index(&cells));
                }
                let counts = players
                    .iter()
                    .map(|p| p.actions.len().pow(p.partition.len() as u32))
                    .collect();
                MixedRadix::new(counts).index(&digits)
            }
            (UtilityKind::Action, _, _) => {
                return Err(Error::validation(&field, "action-kind entries need \"profile\" and no \"strategies\""))
            }
            (UtilityKind::Strategy, _, _) => {
                return Err(Error::validation(&field, "strategy-kind entries need \"strategies\" and no \"profile\""))
            }
        };
        let value = parse_rational(&format!("{field}.value"), &u.value)?;
        for w in states {
            let slot = &mut table[i][w][column];
            if slot.is_some() {
                return Err(Error::validation(
                    &field,
                    format!("duplicate entry for player {:?} in state {:?}", u.player, space.label(w)),
                ));
            }
            *slot = Some(value.clone());
        }
    }
    let mut values = Vec::with_capacity(players.len());
    for (i, per_state) in table.into_iter().enumerate() {
        let mut rows = Vec::with_capacity(space.len());
        for (w, row) in per_state.into_iter().enumerate() {
            if let Some(col) = row.iter().position(Option::is_none) {
                return Err(Error::validation(
                    "utilities",
                    format!(
                        "missing utility entry for player {:?} in state {:?} at {}",
                        players[i].name,
                        space.label(w),
                        describe_column(&players, kind, col)
                    ),
                ));
            }
            rows.push(row.into_iter().map(Option::unwrap).collect());
        }
        values.push(rows);
    }
    let game = EpistemicGame::new(space, players, UtilityTable::new(kind, values))?;
    Ok(match raw.comment {
        Some(c) => game.with_description(c),
        None => game,
    })
}

fn describe_column(players: &[Player], kind: UtilityKind, col: usize) -> String {
    match kind {
        UtilityKind::Action => {
            let digits = MixedRadix::new(players.iter().map(|p| p.actions.len()).collect()).digits(col);
            let labels: Vec<&str> = players.iter().zip(digits).map(|(p, a)| p.actions[a].as_str()).collect();
            format!("profile {labels:?}")
        }
        UtilityKind::Strategy => format!("strategy profile index {col}"),
    }
}

/// Canonical game file: utilities ordered by player, then profile, then
/// state, with `"*"` standing for a value shared by all states.
pub fn serialize_game(g: &EpistemicGame) -> String {
    let space = g.space();
    let players: Vec<Value> = g
        .players()
        .iter()
        .map(|p| {
            let prior: Map<String, Value> = space
                .labels()
                .iter()
                .enumerate()
                .map(|(w, s)| (s.clone(), Value::String(p.prior.weight(w).to_string())))
                .collect();
            json!({
                "name": p.name,
                "actions": p.actions,
                "partition": p.partition.labels(),
                "prior": prior,
            })
        })
        .collect();
    let kind = g.utility_kind();
    let columns: Vec<Value> = match kind {
        UtilityKind::Action => g
            .action_radix()
            .iter()
            .map(|digits| {
                let labels: Vec<&str> = digits.iter().enumerate().map(|(i, &a)| g.player(i).actions[a].as_str()).collect();
                json!(labels)
            })
            .collect(),
        UtilityKind::Strategy => g
            .enumerate_profiles()
            .expect("validated games have enumerable profiles")
            .iter()
            .map(|profile| {
                let cells: Vec<Vec<&str>> = profile
                    .strategies
                    .iter()
                    .map(|s| s.actions.iter().map(|&a| g.player(s.player).actions[a].as_str()).collect())
                    .collect();
                json!(cells)
            })
            .collect(),
    };
    let key = match kind {
        UtilityKind::Action => "profile",
        UtilityKind::Strategy => "strategies",
    };
    let values = g.utilities().values();
    let mut utilities = Vec::new();
    for (i, p) in g.players().iter().enumerate() {
        for (col, labels) in columns.iter().enumerate() {
            let first = &values[i][0][col];
            let entry = |state: &str, v: &Rational| {
                let mut m = Map::new();
                m.insert("player".into(), json!(p.name));
                m.insert("state".into(), json!(state));
                m.insert(key.into(), labels.clone());
                m.insert("value".into(), json!(v.to_string()));
                Value::Object(m)
            };
            if values[i].iter().all(|row| row[col] == *first) {
                utilities.push(entry("*", first));
            } else {
                for (w, row) in values[i].iter().enumerate() {
                    utilities.push(entry(space.label(w), &row[col]));
                }
            }
        }
    }
    let mut doc = Map::new();
    if let Some(c) = g.description() {
        doc.insert("comment".into(), json!(c));
    }
    doc.insert("states".into(), json!(space.labels()));
    doc.insert(
        "utility_kind".into(),
        json!(match kind {
            UtilityKind::Action => "action",
            UtilityKind::Strategy => "strategy",
        }),
    );
    doc.insert("players".into(), Value::Array(players));
    doc.insert("utilities".into(), Value::Array(utilities));
    canonical_json(&Value::Object(doc))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConjecture {
    #[serde(default)]
    fixed: Option<Vec<String>>,
    #[serde(default)]
    map: Option<Vec<RawMapEntry>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMapEntry {
    from: String,
    to: Vec<String>,
}

fn others_indices(g: &EpistemicGame, owner: usize, field: &str, labels: &[String]) -> Result<Vec<usize>> {
    let others: Vec<usize> = (0..g.num_players()).filter(|&j| j != owner).collect();
    if labels.len() != others.len() {
        return Err(Error::validation(field, format!("expected strategies for {} other players", others.len())));
    }
    others
        .iter()
        .zip(labels)
        .map(|(&j, l)| {
            g.parse_strategy(j, l)
                .map(|s| g.strategy_index(&s))
                .map_err(|e| Error::validation(field, e.to_string()))
        })
        .collect()
}

/// Parses a conjecture file: player name to `{"fixed": [...]}` or
/// `{"map": [{"from": ..., "to": [...]}, ...]}`, listing the other players'
/// strategies in player order.
pub fn parse_conjectures(g: &EpistemicGame, bytes: &[u8]) -> Result<ConjectureProfile> {
    let raw: BTreeMap<String, RawConjecture> = serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))?;
    if let Some(unknown) = raw.keys().find(|k| g.player_index(k).is_none()) {
        return Err(Error::validation("conjectures", format!("unknown player {unknown:?}")));
    }
    let mut conjectures = Vec::with_capacity(g.num_players());
    for (i, p) in g.players().iter().enumerate() {
        let field = format!("conjectures.{}", p.name);
        let rc = raw
            .get(&p.name)
            .ok_or_else(|| Error::validation("conjectures", format!("missing player {:?}", p.name)))?;
        let c = match (&rc.fixed, &rc.map) {
            (Some(t), None) => Conjecture::Fixed(others_indices(g, i, &field, t)?),
            (None, Some(entries)) => {
                let count = g.enumerate_strategies(i)?.len();
                let mut map: Vec<Option<Vec<usize>>> = vec![None; count];
                for (k, e) in entries.iter().enumerate() {
                    let f = format!("{field}.map[{k}]");
                    let from = g.parse_strategy(i, &e.from).map_err(|err| Error::validation(&f, err.to_string()))?;
                    let slot = &mut map[g.strategy_index(&from)];
                    if slot.is_some() {
                        return Err(Error::validation(&f, format!("strategy {:?} mapped twice", e.from)));
                    }
                    *slot = Some(others_indices(g, i, &f, &e.to)?);
                }
                let map = map
                    .into_iter()
                    .enumerate()
                    .map(|(k, t)| {
                        t.ok_or_else(|| {
                            Error::validation(
                                &field,
                                format!("strategy {:?} is not mapped", g.strategy_label(&g.strategy_from_index(i, k))),
                            )
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Conjecture::Map(map)
            }
            _ => return Err(Error::validation(&field, "expected exactly one of \"fixed\" or \"map\"")),
        };
        conjectures.push(c);
    }
    ConjectureProfile::new(g, conjectures)
}

fn others_labels(g: &EpistemicGame, owner: usize, target: &[usize]) -> Vec<String> {
    let mut t = target.iter();
    (0..g.num_players())
        .filter(|&j| j != owner)
        .map(|j| g.strategy_label(&g.strategy_from_index(j, *t.next().expect("one per other player"))))
        .collect()
}

pub fn serialize_conjectures(g: &EpistemicGame, conj: &ConjectureProfile) -> String {
    let mut doc = Map::new();
    for (i, p) in g.players().iter().enumerate() {
        let v = match conj.conjecture(i) {
            Conjecture::Fixed(t) => json!({ "fixed": others_labels(g, i, t) }),
            Conjecture::Map(m) => {
                let entries: Vec<Value> = m
                    .iter()
                    .enumerate()
                    .map(|(k, t)| {
                        json!({
                            "from": g.strategy_label(&g.strategy_from_index(i, k)),
                            "to": others_labels(g, i, t),
                        })
                    })
                    .collect();
                json!({ "map": entries })
            }
        };
        doc.insert(p.name.clone(), v);
    }
    canonical_json(&Value::Object(doc))
}

fn profile_key(labels: &[String]) -> String {
    labels.join(",")
}

/// Parses a distribution file: comma-joined choice labels to weights.
/// Profiles that are not listed get weight 0.
pub fn parse_distribution(nf: &NormalFormGame, bytes: &[u8]) -> Result<ActionDistribution> {
    let raw: BTreeMap<String, String> = serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))?;
    let mut weights = vec![Rational::zero(); nf.profile_count()];
    for (key, v) in &raw {
        let labels: Vec<&str> = key.split(',').collect();
        let profile = nf
            .parse_profile(&labels)
            .map_err(|e| Error::validation(format!("distribution[{key:?}]"), e.to_string()))?;
        weights[nf.profile_index(&profile)] = parse_rational(&format!("distribution[{key:?}]"), v)?;
    }
    ActionDistribution::new(nf.dims().to_vec(), weights).map_err(|e| Error::validation("distribution", e.to_string()))
}

/// Nonzero weights as a JSON object keyed like [`parse_distribution`].
pub fn distribution_value(nf: &NormalFormGame, d: &ActionDistribution) -> Value {
    let m: Map<String, Value> = d
        .support()
        .into_iter()
        .map(|(p, w)| (profile_key(&nf.profile_labels(nf.profile_index(&p))), json!(w.to_string())))
        .collect();
    Value::Object(m)
}

pub fn serialize_distribution(nf: &NormalFormGame, d: &ActionDistribution) -> String {
    canonical_json(&distribution_value(nf, d))
}
