//! Conjectures that track the other player's choice.

use epigame::examples_builtin::rendezvous;
use epigame::uncertainty::{
    best_responses_to_conjecture, classify_solution, matching_conjectures, ConjectureProfile,
};

fn main() -> epigame::Result<()> {
    let g = rendezvous();
    let conj = matching_conjectures(&g)?;
    for i in 0..g.num_players() {
        let best: Vec<String> = best_responses_to_conjecture(&g, i, conj.conjecture(i))?
            .iter()
            .map(|s| g.strategy_label(s))
            .collect();
        println!("{} best responses under matching beliefs: {}", g.player(i).name, best.join(" "));
    }
    for labels in [["luigi", "luigi"], ["luigi", "harry"]] {
        let p = g.parse_profile(&labels)?;
        println!("{:?}: {}", labels, classify_solution(&g, &conj, &p)?.as_str());
    }

    // Each side best-responds to a belief about the other that turns out wrong.
    let miss = g.parse_profile(&["luigi", "harry"])?;
    let fixed = ConjectureProfile::fixed_at(&g, &g.parse_profile(&["harry", "luigi"])?);
    println!("fixed beliefs, {:?}: {}", ["luigi", "harry"], classify_solution(&g, &fixed, &miss)?.as_str());
    Ok(())
}
