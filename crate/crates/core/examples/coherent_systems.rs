//! Enumerates coherent systems and keeps those with a rational solution.

use epigame::certainty::{admissible_systems, coherent_systems};
use epigame::examples_builtin::{figure1, prisoners_dilemma};

fn main() -> epigame::Result<()> {
    let g = figure1();
    let systems = coherent_systems(&g)?;
    println!("figure1: {} coherent systems", systems.total());

    let admissible = admissible_systems(&g, 10_000)?;
    println!("{} of them have a nonempty rational-solution set", admissible.len());
    if let Some(first) = admissible.first() {
        for p in &first.solutions {
            println!("  e.g. {}", g.profile_labels(p).join(" / "));
        }
    }

    let pd = prisoners_dilemma();
    for sys in coherent_systems(&pd)? {
        let f = sys.response_map(0, 1);
        println!("pd response map of player 0 to player 1: {:?}", f.mapping);
    }
    Ok(())
}
