//! Finite spaces, partitions, conditioning and the tower property.

use epigame::measure::{join, total_expectation_check};
use epigame::{FiniteSpace, Measure, Partition, Rational};

fn main() -> epigame::Result<()> {
    let space = FiniteSpace::new(["a", "b", "c", "d"])?;
    let m = Measure::new(
        space.clone(),
        ["1/8", "3/8", "1/4", "1/4"].iter().map(|s| s.parse().unwrap()).collect(),
    )?;
    let alice = Partition::from_labels(space.clone(), &[vec!["a", "b"], vec!["c", "d"]])?;
    let bob = Partition::from_labels(space.clone(), &[vec!["a", "c"], vec!["b"], vec!["d"]])?;

    let common = join(&[alice.clone(), bob.clone()])?;
    println!("join of the two partitions: {:?}", common.labels());

    for cell in alice.blocks() {
        let post = m.posterior(cell)?;
        let shown: Vec<String> = post.weights().iter().map(Rational::to_string).collect();
        println!("posterior given {:?}: {}", cell.labels(&space), shown.join(" "));
    }

    // A payoff that differs by state; its mean equals the mean of cell means.
    let f: Vec<Rational> = [4, -2, 0, 6].into_iter().map(Rational::from_integer).collect();
    let t = total_expectation_check(&f, &m, &alice)?;
    println!("E f = {}  sum of cell means = {}  equal: {}", t.lhs, t.rhs, t.equal);
    Ok(())
}
