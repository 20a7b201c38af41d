//! End-to-end acceptance checks. Runs without the libtest harness so every
//! criterion prints exactly one PASS/FAIL line.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use epigame::certainty::{admissible_systems, coherent_systems, efficiency_report, rational_solutions};
use epigame::cli::{execute, export_files};
use epigame::consistency::{check_theorem2, decomposition_check, search_bay_scenarios, ConsistencyConstraints};
use epigame::equilibrium::{
    action_normal_form, enumerate_bayes_rational, find_correlated_equilibrium, induced_distribution, is_bayes_rational,
    is_correlated_equilibrium, ActionDistribution, NormalFormGame, Objective,
};
use epigame::examples_builtin::{angels_demons, figure1, prisoners_dilemma, EXAMPLE_NAMES};
use epigame::format::{parse_conjectures, parse_game, serialize_conjectures, serialize_game};
use epigame::measure::total_expectation_check;
use epigame::uncertainty::{classify_solution, Classification, ConjectureProfile};
use epigame::{EpistemicGame, FiniteSpace, Partition, Rational};
use rand::Rng;
use serde_json::Value;

use common::*;

type Check = Result<String, String>;

const NODE_CAP: u64 = 50_000_000;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

fn game_path(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("games").join(name).display().to_string()
}

fn run(args: &[&str]) -> epigame::cli::Outcome {
    execute(std::iter::once("epigame").chain(args.iter().copied()))
}

fn run_json(args: &[&str]) -> Result<Value, String> {
    let mut argv = vec!["--json"];
    argv.extend_from_slice(args);
    let out = run(&argv);
    serde_json::from_str(&out.stdout).map_err(|e| format!("{args:?}: bad JSON ({e}): {}", out.stderr))
}

fn labels(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

fn criterion1() -> Check {
    let v = run_json(&["solve", "coherent", &game_path("prisoners-dilemma.json")])?;
    let systems = v["result"]["systems"].as_array().ok_or("no systems array")?;
    ensure(systems.len() == 2 && v["result"]["total"] == "2", format!("{} systems", systems.len()))?;
    let mut tft = None;
    let mut anti = None;
    for s in systems {
        let members: Vec<Vec<String>> = s["members"].as_array().unwrap().iter().map(|m| labels(&m["profile"])).collect();
        if members.iter().any(|m| m == &["deny", "deny"]) {
            tft = Some(s);
        } else if members.iter().any(|m| m == &["deny", "confess"]) {
            anti = Some(s);
        }
    }
    let (tft, anti) = (tft.ok_or("no tit-for-tat system")?, anti.ok_or("no anti-diagonal system")?);
    let sols: Vec<Vec<String>> = tft["rational_solutions"].as_array().unwrap().iter().map(labels).collect();
    ensure(sols == vec![vec!["deny".to_string(), "deny".to_string()]], format!("tit-for-tat S* = {sols:?}"))?;
    let dd = tft["members"].as_array().unwrap().iter().find(|m| labels(&m["profile"]) == ["deny", "deny"]).unwrap();
    ensure(labels(&dd["utilities"]) == ["-1", "-1"], "utilities of (deny,deny)")?;
    ensure(anti["rational_solutions"].as_array().unwrap().is_empty(), "anti-diagonal S* nonempty")?;
    Ok("2 systems; tit-for-tat S* = {(deny,deny)} at (-1,-1); anti-diagonal S* empty".into())
}

fn criterion2() -> Check {
    let g = prisoners_dilemma();
    let bayes = enumerate_bayes_rational(&g).map_err(|e| e.to_string())?;
    let cc = g.parse_profile(&["confess", "confess"]).unwrap();
    let dd = g.parse_profile(&["deny", "deny"]).unwrap();
    ensure(bayes == vec![cc.clone()], "library Bayes set")?;
    let v = run_json(&["solve", "bayes", &game_path("prisoners-dilemma.json")])?;
    let cli: Vec<Vec<String>> = v["result"]["profiles"].as_array().unwrap().iter().map(labels).collect();
    ensure(cli == vec![vec!["confess".to_string(), "confess".to_string()]], format!("CLI Bayes set {cli:?}"))?;
    let c1 = classify_solution(&g, &ConjectureProfile::fixed_at(&g, &cc), &cc).map_err(|e| e.to_string())?;
    ensure(c1 == Classification::SubjectiveCorrelatedEquilibrium, format!("confess conjectures: {}", c1.as_str()))?;
    let c2 = classify_solution(&g, &ConjectureProfile::fixed_at(&g, &dd), &cc).map_err(|e| e.to_string())?;
    ensure(c2 == Classification::RationalIncorrectConjectures, format!("deny conjectures: {}", c2.as_str()))?;
    Ok("Bayes set [(confess,confess)]; classifications subjective_correlated_equilibrium / rational_incorrect_conjectures".into())
}

fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect()
}

fn criterion3() -> Check {
    let inv = ConsistencyConstraints { require_inv: true };
    let mut sizes = Vec::new();
    for (name, g) in [("prisoners-dilemma", prisoners_dilemma()), ("figure1", figure1())] {
        for pair in ordered_pairs(g.num_players()) {
            let rep = search_bay_scenarios(&g, pair, inv, NODE_CAP).map_err(|e| e.to_string())?;
            ensure(rep.exhausted && rep.witnesses.is_empty(), format!("{name} {pair:?}: witnesses or not exhausted"))?;
            if name == "prisoners-dilemma" {
                ensure(rep.size == 4u32.into(), format!("PD space {}", rep.size))?;
            }
            sizes.push(format!("{name}{pair:?}={}", rep.size));
        }
    }
    Ok(format!("no witnesses, all exhausted; sizes {}", sizes.join(" ")))
}

fn criterion4() -> Check {
    let g = figure1();
    let info = g.info_report();
    let half = Rational::new(1, 2);
    ensure(
        info.players.iter().any(|p| !p.perfect && p.witnesses.iter().any(|w| w.probability == half)),
        "no imperfect-information witness at 1/2",
    )?;
    let free = ConsistencyConstraints { require_inv: false };
    let mut sizes = Vec::new();
    for pair in ordered_pairs(g.num_players()) {
        let rep = search_bay_scenarios(&g, pair, free, NODE_CAP).map_err(|e| e.to_string())?;
        ensure(rep.exhausted && rep.witnesses.is_empty(), format!("{pair:?}: witnesses or not exhausted"))?;
        sizes.push(format!("{pair:?}={}", rep.size));
    }
    let t2 = check_theorem2(&g, NODE_CAP).map_err(|e| e.to_string())?;
    ensure(t2.holds, "theorem check does not hold")?;
    Ok(format!("witness probability 1/2; no witnesses, all exhausted; sizes {}", sizes.join(" ")))
}

fn chicken() -> NormalFormGame {
    NormalFormGame::new(
        vec!["row".into(), "col".into()],
        vec![vec!["D".into(), "C".into()], vec!["D".into(), "C".into()]],
        |p| {
            let (a, b) = match (p[0], p[1]) {
                (0, 0) => (0, 0),
                (0, 1) => (7, 2),
                (1, 0) => (2, 7),
                _ => (6, 6),
            };
            vec![Rational::from_integer(a), Rational::from_integer(b)]
        },
    )
    .unwrap()
}

fn criterion5() -> Check {
    let nf = action_normal_form(&prisoners_dilemma()).map_err(|e| e.to_string())?;
    let dims = nf.dims().to_vec();
    let cc = ActionDistribution::point_mass(dims.clone(), &[1, 1]);
    let dd = ActionDistribution::point_mass(dims.clone(), &[0, 0]);
    ensure(is_correlated_equilibrium(&nf, &cc).unwrap().ok, "(confess,confess) rejected")?;
    let rep = is_correlated_equilibrium(&nf, &dd).unwrap();
    ensure(!rep.ok && rep.violated.iter().any(|v| v.slack == Rational::from_integer(-1)), "(deny,deny) slack")?;
    let best = find_correlated_equilibrium(&nf, &Objective::SumOfUtilities).unwrap();
    ensure(best.distribution == cc, "LP optimum is not the (confess,confess) point mass")?;
    let ch = chicken();
    let third = ActionDistribution::uniform_over(ch.dims().to_vec(), &[vec![1, 1], vec![1, 0], vec![0, 1]]).unwrap();
    ensure(is_correlated_equilibrium(&ch, &third).unwrap().ok, "Chicken 1/3-1/3-1/3 rejected")?;
    let opt = find_correlated_equilibrium(&ch, &Objective::SumOfUtilities).unwrap();
    let oracle = ce_optimum_by_vertices(&ch, &Objective::SumOfUtilities.coefficients(&ch).unwrap());
    ensure(opt.objective == oracle && opt.objective >= Rational::from_integer(10), "Chicken optimum")?;
    Ok(format!("PD checks exact (slack -1); Chicken uniform-3 accepted; Chicken sum optimum {}", opt.objective))
}

fn criterion6() -> Check {
    let mut rng = rng(6);
    let mut profiles = 0usize;
    for trial in 0..1000 {
        let shape = GameShape {
            states: rng.gen_range(1..=3),
            actions: vec![rng.gen_range(2..=3), rng.gen_range(2..=3)],
            common_prior: true,
            state_independent: true,
            partition: None,
        };
        let g = random_game(&mut rng, &shape);
        let nf = action_normal_form(&g).map_err(|e| e.to_string())?;
        let prior = g.common_prior().ok_or("no common prior")?;
        for p in g.enumerate_profiles().unwrap() {
            let ok = is_bayes_rational(&g, &p).unwrap().ok;
            ensure(ok == bayes_oracle(&g, &p), format!("trial {trial}: Bayes check disagrees with oracle"))?;
            if ok {
                profiles += 1;
                let d = induced_distribution(&g, &p, prior).unwrap();
                ensure(is_correlated_equilibrium(&nf, &d).unwrap().ok, format!("trial {trial}: induced distribution not CE"))?;
                ensure(ce_oracle(&nf, d.weights()), format!("trial {trial}: oracle rejects induced distribution"))?;
            }
        }
    }
    Ok(format!("1000 games, {profiles} Bayes-rational profiles, 0 failures"))
}

/// A random game whose players all have `m` strategies, for `m <= 4`.
fn equal_count_game(rng: &mut rand_chacha::ChaCha8Rng) -> EpistemicGame {
    let players = if rng.gen_bool(0.25) { 3 } else { 2 };
    // (states, actions, cells): 2, 3 or 4 strategies.
    let (states, k, cells) = match rng.gen_range(0..if players == 3 { 3 } else { 4 }) {
        0 => (1, 2, 1),
        1 => (rng.gen_range(1..=3), 2, 1),
        2 => (rng.gen_range(1..=3), 3, 1),
        _ => (2, 2, 2),
    };
    let shape = GameShape {
        states,
        actions: vec![k; players],
        common_prior: false,
        state_independent: false,
        partition: Some(if cells == 2 { Partition::discrete } else { Partition::trivial }),
    };
    random_game(rng, &shape)
}

fn criterion7() -> Check {
    let mut rng = rng(7);
    let (mut systems, mut solutions) = (0usize, 0usize);
    for trial in 0..1000 {
        let g = equal_count_game(&mut rng);
        for sys in coherent_systems(&g).unwrap() {
            systems += 1;
            let sols = rational_solutions(&g, &sys);
            solutions += sols.len();
            let oracle = rational_solutions_oracle(&g, sys.profiles());
            let got: Vec<Vec<usize>> = sols.iter().map(|p| g.profile_indices(p)).collect();
            ensure(got == oracle, format!("trial {trial}: S* disagrees with oracle"))?;
            let rep = efficiency_report(&g, &sys, &sols).unwrap();
            ensure(rep.pareto.iter().all(|&p| p), format!("trial {trial}: rational solution not Pareto"))?;
            ensure(rep.essentially_unique, format!("trial {trial}: S* not essentially unique"))?;
        }
    }
    Ok(format!("1000 games, {systems} systems, {solutions} rational solutions, 0 failures"))
}

fn criterion8() -> Check {
    let mut rng = rng(8);
    for trial in 0..1000 {
        let space = FiniteSpace::new((0..rng.gen_range(1..=6)).map(|w| format!("s{w}"))).unwrap();
        let m = random_measure(&mut rng, &space);
        let part = random_partition(&mut rng, &space);
        let f: Vec<Rational> = (0..space.len()).map(|_| small_rational(&mut rng)).collect();
        ensure(total_expectation_check(&f, &m, &part).unwrap().equal, format!("trial {trial}: total expectation"))?;
        for block in part.blocks() {
            if m.prob(block).is_zero() {
                continue;
            }
            let post = m.posterior(block).unwrap();
            ensure(post.weights().iter().sum::<Rational>().is_one(), format!("trial {trial}: posterior sum"))?;
        }
    }
    let scales = ["1/2", "1", "2", "3", "7/3"];
    for trial in 0..200 {
        let g = equal_count_game(&mut rng);
        let n = g.num_players();
        let scale: Vec<Rational> = (0..n).map(|_| r(scales[rng.gen_range(0..scales.len())])).collect();
        let shift: Vec<Rational> = (0..n).map(|_| small_rational(&mut rng)).collect();
        let h = rescale(&g, &scale, &shift);
        for p in g.enumerate_profiles().unwrap() {
            ensure(
                is_bayes_rational(&g, &p).unwrap().ok == is_bayes_rational(&h, &p).unwrap().ok,
                format!("trial {trial}: Bayes flag changed"),
            )?;
        }
        for (a, b) in coherent_systems(&g).unwrap().zip(coherent_systems(&h).unwrap()) {
            ensure(rational_solutions(&g, &a) == rational_solutions(&h, &b), format!("trial {trial}: S* changed"))?;
        }
        let adm_g: Vec<_> = admissible_systems(&g, 10_000).unwrap().into_iter().map(|a| (a.system, a.solutions)).collect();
        let adm_h: Vec<_> = admissible_systems(&h, 10_000).unwrap().into_iter().map(|a| (a.system, a.solutions)).collect();
        ensure(adm_g == adm_h, format!("trial {trial}: admissible list changed"))?;
    }
    Ok("1000 total-expectation triples, posteriors sum to 1, 200 rescaled games unchanged".into())
}

fn criterion9() -> Check {
    let g = angels_demons();
    let rep = decomposition_check(&g).map_err(|e| e.to_string())?;
    let optima: Vec<String> = rep.optima.iter().map(|s| g.strategy_label(s)).collect();
    let mut sorted = optima.clone();
    sorted.sort();
    ensure(sorted == ["dishonest|dishonest", "honest|honest"], format!("optima {optima:?}"))?;
    ensure(rep.value == Rational::new(1, 2) && !rep.cellwise_consistent, "value or consistency flag")?;
    let mut rng = rng(9);
    for trial in 0..200 {
        let shape = GameShape {
            states: rng.gen_range(1..=4),
            actions: vec![rng.gen_range(2..=3)],
            common_prior: true,
            state_independent: false,
            partition: None,
        };
        let c = random_game(&mut rng, &shape);
        let rep = decomposition_check(&c).map_err(|e| e.to_string())?;
        ensure(rep.cellwise_consistent, format!("control {trial} inconsistent"))?;
    }
    Ok(format!("optima {} at 1/2, not cellwise consistent; 200 controls consistent", optima.join(" ")))
}

fn criterion10() -> Check {
    let dir = std::env::temp_dir().join(format!("epigame-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dist = dir.join("dd.json");
    std::fs::write(&dist, "{\n  \"deny,deny\": \"1\"\n}\n").unwrap();
    let dist = dist.display().to_string();
    let (pd, fig, ad, rv, rvc) = (
        game_path("prisoners-dilemma.json"),
        game_path("figure1.json"),
        game_path("angels-demons.json"),
        game_path("rendezvous.json"),
        game_path("rendezvous.conjectures.json"),
    );
    let commands: Vec<Vec<&str>> = vec![
        vec!["validate", &pd],
        vec!["info", &fig],
        vec!["solve", "bayes", &pd],
        vec!["solve", "ce", &pd],
        vec!["ce-check", &pd, &dist],
        vec!["solve", "coherent", &pd],
        vec!["solve", "conjecture", &rv, &rvc],
        vec!["verify", "theorems", &fig],
        vec!["decompose", &ad],
        vec!["export", "rendezvous"],
    ];
    let mut runs = 0;
    for cmd in &commands {
        for json in [false, true] {
            let mut argv = if json { vec!["--json"] } else { vec![] };
            argv.extend(cmd.iter().copied());
            let (a, b) = (run(&argv), run(&argv));
            ensure(a == b, format!("{argv:?} differs between runs"))?;
            ensure(!a.stdout.is_empty(), format!("{argv:?} printed nothing"))?;
            runs += 1;
        }
    }
    for name in EXAMPLE_NAMES {
        let files = export_files(name).unwrap();
        let g = parse_game(files[0].1.as_bytes()).map_err(|e| e.to_string())?;
        ensure(serialize_game(&g) == files[0].1, format!("{name}: game round trip"))?;
        let committed = std::fs::read_to_string(game_path(&files[0].0)).unwrap();
        ensure(committed == files[0].1, format!("{name}: committed file differs from export"))?;
        if let Some((_, conj)) = files.get(1) {
            let c = parse_conjectures(&g, conj.as_bytes()).map_err(|e| e.to_string())?;
            ensure(serialize_conjectures(&g, &c) == *conj, format!("{name}: conjecture round trip"))?;
        }
    }
    std::fs::remove_dir_all(&dir).ok();
    Ok(format!("{runs} command runs byte-identical; {} examples round-trip", EXAMPLE_NAMES.len()))
}

fn main() {
    let criteria: [(u32, fn() -> Check); 10] = [
        (1, criterion1),
        (2, criterion2),
        (3, criterion3),
        (4, criterion4),
        (5, criterion5),
        (6, criterion6),
        (7, criterion7),
        (8, criterion8),
        (9, criterion9),
        (10, criterion10),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, f) in criteria {
        let start = std::time::Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS ({secs:.2}s) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n}: FAIL ({secs:.2}s) {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
