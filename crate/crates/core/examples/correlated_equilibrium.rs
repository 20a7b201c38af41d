//! Correlated equilibria of Chicken by exact simplex.

use epigame::equilibrium::{
    find_correlated_equilibrium, is_correlated_equilibrium, ActionDistribution, NormalFormGame, Objective,
};
use epigame::Rational;

fn main() -> epigame::Result<()> {
    let nf = NormalFormGame::new(
        vec!["row".into(), "col".into()],
        vec![vec!["dare".into(), "chicken".into()]; 2],
        |p| {
            let v = match (p[0], p[1]) {
                (0, 0) => [0, 0],
                (0, 1) => [7, 2],
                (1, 0) => [2, 7],
                _ => [6, 6],
            };
            v.map(Rational::from_integer).to_vec()
        },
    )?;

    let traffic_light = ActionDistribution::uniform_over(nf.dims().to_vec(), &[vec![1, 1], vec![0, 1], vec![1, 0]])?;
    let rep = is_correlated_equilibrium(&nf, &traffic_light)?;
    println!("uniform over the three non-crash outcomes is a CE: {}", rep.ok);

    for (name, obj) in [("welfare", Objective::SumOfUtilities), ("row payoff", Objective::Player(0))] {
        let best = find_correlated_equilibrium(&nf, &obj)?;
        println!("max {name} = {}", best.objective);
        for (p, w) in best.distribution.support() {
            println!("  {} : {w}", nf.profile_labels(nf.profile_index(&p)).join(","));
        }
    }
    Ok(())
}
