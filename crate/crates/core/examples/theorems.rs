//! Exhaustive search for response scenarios that are always correct.

use epigame::consistency::{check_theorem1, check_theorem2, search_bay_scenarios, ConsistencyConstraints};
use epigame::examples_builtin::{figure1, prisoners_dilemma};

fn main() -> epigame::Result<()> {
    let g = figure1();
    for p in &g.info_report().players {
        for w in &p.witnesses {
            println!(
                "{} cell {} puts {} on cell {} of {}",
                g.player(p.player).name,
                w.cell,
                w.probability,
                w.other_cell,
                g.player(w.other_player).name
            );
        }
    }
    for rep in [check_theorem1(&g, 10_000_000)?, check_theorem2(&g, 10_000_000)?] {
        for s in &rep.searches {
            println!(
                "kind {} pair {:?}: space {}, {} nodes, {} witnesses",
                rep.theorem,
                s.pair,
                s.size,
                s.nodes,
                s.witnesses.len()
            );
        }
        println!("holds: {}", rep.holds);
    }

    // Perfect information: without the action-independence requirement the
    // prisoner's dilemma has consistent scenarios.
    let pd = prisoners_dilemma();
    let free = search_bay_scenarios(&pd, (0, 1), ConsistencyConstraints { require_inv: false }, 1_000)?;
    println!("pd without INV: {} witnesses out of {}", free.witnesses.len(), free.size);
    Ok(())
}
