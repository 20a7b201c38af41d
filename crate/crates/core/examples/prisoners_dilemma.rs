//! The prisoner's dilemma read three ways: Bayes rationality, coherent
//! systems under certainty, and conjectures under uncertainty.

use epigame::certainty::{coherent_systems, rational_solutions, SystemUtilities};
use epigame::equilibrium::enumerate_bayes_rational;
use epigame::examples_builtin::prisoners_dilemma;
use epigame::uncertainty::{classify_solution, ConjectureProfile};

fn main() -> epigame::Result<()> {
    let g = prisoners_dilemma();

    for p in enumerate_bayes_rational(&g)? {
        println!("Bayes rational: ({})", g.profile_labels(&p).join(","));
    }

    for (k, sys) in coherent_systems(&g)?.enumerate() {
        let utils = SystemUtilities::new(&g, &sys);
        println!("system {k}:");
        for (p, u) in sys.strategy_profiles(&g).iter().zip(&utils.utilities) {
            let u: Vec<String> = u.iter().map(|x| x.to_string()).collect();
            println!("  ({}) -> ({})", g.profile_labels(p).join(","), u.join(","));
        }
        let sols: Vec<String> = rational_solutions(&g, &sys)
            .iter()
            .map(|p| format!("({})", g.profile_labels(p).join(",")))
            .collect();
        println!("  rational solutions: {{{}}}", sols.join(", "));
    }

    let cc = g.parse_profile(&["confess", "confess"])?;
    for expect in [["confess", "confess"], ["deny", "deny"]] {
        let conj = ConjectureProfile::fixed_at(&g, &g.parse_profile(&expect)?);
        let class = classify_solution(&g, &conj, &cc)?;
        println!("expecting {} and playing confess: {}", expect[0], class.as_str());
    }
    Ok(())
}
