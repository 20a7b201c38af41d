//! A single decision maker whose payoff depends on the whole strategy.

use epigame::consistency::decomposition_check;
use epigame::examples_builtin::angels_demons;

fn main() -> epigame::Result<()> {
    let g = angels_demons();
    let rep = decomposition_check(&g)?;
    let optima: Vec<String> = rep.optima.iter().map(|s| g.strategy_label(s)).collect();
    println!("global optima {} with value {}", optima.join(", "), rep.value);
    for (cell, best) in rep.dominant.iter().enumerate() {
        match best {
            Some(a) => println!("cell {cell}: {} is best whatever else is done", g.player(0).actions[*a]),
            None => println!("cell {cell}: no action is best regardless of the other cell"),
        }
    }
    println!("cell-by-cell optimisation recovers the optima: {}", rep.cellwise_consistent);
    Ok(())
}
