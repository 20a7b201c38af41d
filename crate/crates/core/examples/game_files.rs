//! Reading and writing game files.

use epigame::equilibrium::enumerate_bayes_rational;
use epigame::format::{parse_game, serialize_game};

const MATCHING: &str = r#"{
  "states": ["h", "t"],
  "utility_kind": "action",
  "players": [
    {"name": "guesser", "actions": ["heads", "tails"], "partition": [["h", "t"]], "prior": {"h": "1/3", "t": "2/3"}}
  ],
  "utilities": [
    {"player": "guesser", "state": "h", "profile": ["heads"], "value": "1"},
    {"player": "guesser", "state": "t", "profile": ["heads"], "value": "0"},
    {"player": "guesser", "state": "h", "profile": ["tails"], "value": "0"},
    {"player": "guesser", "state": "t", "profile": ["tails"], "value": "1"}
  ]
}"#;

fn main() -> epigame::Result<()> {
    let g = parse_game(MATCHING.as_bytes())?;
    for p in enumerate_bayes_rational(&g)? {
        println!("Bayes rational: {}", g.profile_labels(&p).join(" / "));
    }
    let canonical = serialize_game(&g);
    assert_eq!(serialize_game(&parse_game(canonical.as_bytes())?), canonical);
    println!("canonical form ({} bytes) round-trips", canonical.len());

    match parse_game(MATCHING.replace("2/3", "1/2").as_bytes()) {
        Ok(_) => println!("unexpectedly valid"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
