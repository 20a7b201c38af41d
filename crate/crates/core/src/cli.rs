//! Command-line driver. [`execute`] parses arguments, runs one analysis and
//! renders the report, without touching the process; the `epigame` binary
//! only prints what it returns.
//!
//! Exit codes: 0 on success, 1 when a check reports a negative result
//! (`verify theorems` failing, `ce-check` rejecting), 2 on any error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::certainty::{coherent_systems, efficiency_report, enumerate_coherent_systems, CoherentSystem, SystemUtilities};
use crate::consistency::{check_theorem1, check_theorem2, decomposition_check, SearchReport, TheoremReport};
use crate::equilibrium::{
    action_normal_form, enumerate_bayes_rational, find_correlated_equilibrium_with_cap, is_correlated_equilibrium,
    to_normal_form, NormalFormGame, Objective, SwapConstraint, DEFAULT_LP_CAP,
};
use crate::error::{Error, Result};
use crate::examples_builtin::{example, EXAMPLE_NAMES};
use crate::format::{
    canonical_json, distribution_value, parse_conjectures, parse_distribution, parse_game, serialize_conjectures,
    serialize_game,
};
use crate::game::{EpistemicGame, StrategyProfile, DEFAULT_CAP};
use crate::measure::join;
use crate::rational::Rational;
use crate::uncertainty::{
    best_responses_to_conjecture, classify_solution, conjectured_value, matching_conjectures, ConjectureProfile,
};

#[derive(Parser, Debug)]
#[command(name = "epigame", version, about = "Exact analysis of finite epistemic games")]
struct Cli {
    /// Print the canonical JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a game file.
    Validate { file: PathBuf },
    /// Strategy counts, joint information partition and information report.
    Info { file: PathBuf },
    #[command(subcommand)]
    Solve(Solve),
    /// Check a profile distribution against the correlated-equilibrium constraints.
    CeCheck {
        file: PathBuf,
        dist: PathBuf,
        #[command(flatten)]
        form: FormArg,
    },
    #[command(subcommand)]
    Verify(Verify),
    /// Global optima and per-cell separability of a single-player problem.
    Decompose { file: PathBuf },
    /// Write a built-in example as a game file.
    Export {
        name: String,
        /// Directory to write into; prints to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum Solve {
    /// All Bayes-rational profiles.
    Bayes { file: PathBuf },
    /// A correlated equilibrium maximizing an objective.
    Ce {
        file: PathBuf,
        /// `sum` or `player:NAME`.
        #[arg(long, default_value = "sum")]
        objective: String,
        #[command(flatten)]
        form: FormArg,
        /// Largest profile count handed to the LP solver.
        #[arg(long, default_value_t = DEFAULT_LP_CAP)]
        lp_cap: u64,
    },
    /// Coherent systems and their rational solutions.
    Coherent {
        file: PathBuf,
        /// Refuse when the game has more coherent systems than this.
        #[arg(long, default_value_t = 10_000)]
        max_systems: u64,
        #[arg(long)]
        admissible_only: bool,
    },
    /// Best responses and classification under a conjecture file.
    Conjecture {
        file: PathBuf,
        conj: PathBuf,
        /// Classify this profile (comma-separated strategy labels) as well.
        #[arg(long)]
        profile: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Exhaustive instance checks of the two impossibility results.
    Theorems {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = TheoremArg::All)]
        theorem: TheoremArg,
        /// Search-node budget per player pair.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
}

#[derive(Args, Debug)]
struct FormArg {
    /// Normal form to use; defaults to `action` for state-independent
    /// utilities and `strategy` otherwise.
    #[arg(long, value_enum)]
    form: Option<Form>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Form {
    Action,
    Strategy,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum TheoremArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    All,
}

/// What a run produced: exit code and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    command: &'static str,
    inputs: Vec<(String, String)>,
    result: Value,
    text: String,
    code: i32,
}

pub fn execute<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match run(&cli.command) {
        Ok(report) => {
            let stdout = if cli.json {
                let inputs: Vec<Value> = report
                    .inputs
                    .iter()
                    .map(|(path, digest)| json!({ "path": path, "sha256": digest }))
                    .collect();
                canonical_json(&json!({
                    "command": report.command,
                    "inputs": inputs,
                    "result": report.result,
                }))
            } else {
                report.text
            };
            Outcome { code: report.code, stdout, stderr: String::new() }
        }
        Err(e) => {
            let stdout = if cli.json {
                canonical_json(&json!({ "error": { "code": e.code(), "message": e.to_string() } }))
            } else {
                String::new()
            };
            Outcome {
                code: 2,
                stdout,
                stderr: format!("error[{}]: {e}\n", e.code()),
            }
        }
    }
}

fn read(path: &Path) -> Result<(Vec<u8>, (String, String))> {
    let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let digest = hex::encode(Sha256::digest(&bytes));
    Ok((bytes, (path.display().to_string(), digest)))
}

fn load_game(path: &Path) -> Result<(EpistemicGame, (String, String))> {
    let (bytes, input) = read(path)?;
    Ok((parse_game(&bytes)?, input))
}

fn run(command: &Command) -> Result<Report> {
    match command {
        Command::Validate { file } => validate(file),
        Command::Info { file } => info(file),
        Command::Solve(Solve::Bayes { file }) => solve_bayes(file),
        Command::Solve(Solve::Ce { file, objective, form, lp_cap }) => solve_ce(file, objective, form.form, *lp_cap),
        Command::Solve(Solve::Coherent { file, max_systems, admissible_only }) => {
            solve_coherent(file, *max_systems, *admissible_only)
        }
        Command::Solve(Solve::Conjecture { file, conj, profile }) => solve_conjecture(file, conj, profile.as_deref()),
        Command::CeCheck { file, dist, form } => ce_check(file, dist, form.form),
        Command::Verify(Verify::Theorems { file, theorem, cap }) => verify_theorems(file, *theorem, *cap),
        Command::Decompose { file } => decompose(file),
        Command::Export { name, out } => export(name, out.as_deref()),
    }
}

fn tuple(labels: &[String]) -> String {
    format!("({})", labels.join(", "))
}

fn profile_value(g: &EpistemicGame, p: &StrategyProfile) -> Value {
    json!(g.profile_labels(p))
}

fn validate(file: &Path) -> Result<Report> {
    let (g, input) = load_game(file)?;
    let kind = match g.utility_kind() {
        crate::game::UtilityKind::Action => "action",
        crate::game::UtilityKind::Strategy => "strategy",
    };
    Ok(Report {
        command: "validate",
        inputs: vec![input],
        result: json!({
            "valid": true,
            "players": g.num_players(),
            "states": g.space().len(),
            "utility_kind": kind,
        }),
        text: format!(
            "valid: {} players, {} states, {kind} utilities\n",
            g.num_players(),
            g.space().len()
        ),
        code: 0,
    })
}

fn info(file: &Path) -> Result<Report> {
    let (g, input) = load_game(file)?;
    let mut text = String::new();
    let mut players = Vec::new();
    for (i, p) in g.players().iter().enumerate() {
        let count = g.strategy_count(i);
        writeln!(text, "{}: {} actions, {} cells, {count} strategies", p.name, p.actions.len(), p.partition.len()).unwrap();
        players.push(json!({
            "name": p.name,
            "actions": p.actions.len(),
            "cells": p.partition.len(),
            "strategies": count.to_string(),
        }));
    }
    let joint = join(&g.players().iter().map(|p| p.partition.clone()).collect::<Vec<_>>())?;
    writeln!(text, "joint partition: {:?}", joint.labels()).unwrap();
    let report = g.info_report();
    let mut info = Vec::new();
    for pi in &report.players {
        let me = g.player(pi.player);
        let witnesses: Vec<Value> = pi
            .witnesses
            .iter()
            .map(|w| {
                let other = g.player(w.other_player);
                json!({
                    "cell": me.partition.block(w.cell).labels(g.space()),
                    "other_player": other.name,
                    "other_cell": other.partition.block(w.other_cell).labels(g.space()),
                    "probability": w.probability.to_string(),
                })
            })
            .collect();
        if pi.perfect {
            writeln!(text, "{}: perfect information", me.name).unwrap();
        } else {
            writeln!(text, "{}: imperfect information", me.name).unwrap();
            for w in &pi.witnesses {
                let other = g.player(w.other_player);
                writeln!(
                    text,
                    "  p({:?} of {} | {:?}) = {}",
                    other.partition.block(w.other_cell).labels(g.space()),
                    other.name,
                    me.partition.block(w.cell).labels(g.space()),
                    w.probability
                )
                .unwrap();
            }
        }
        info.push(json!({ "player": me.name, "perfect": pi.perfect, "witnesses": witnesses }));
    }
    let common = g.common_prior().is_some();
    let independent = g.is_state_independent();
    writeln!(text, "common prior: {common}").unwrap();
    writeln!(text, "state-independent utilities: {independent}").unwrap();
    Ok(Report {
        command: "info",
        inputs: vec![input],
        result: json!({
            "players": players,
            "profiles": g.profile_count().to_string(),
            "joint_partition": joint.labels(),
            "information": info,
            "common_prior": common,
            "state_independent": independent,
        }),
        text,
        code: 0,
    })
}

fn solve_bayes(file: &Path) -> Result<Report> {
    let (g, input) = load_game(file)?;
    let profiles = enumerate_bayes_rational(&g)?;
    let mut text = format!("{} Bayes-rational profiles\n", profiles.len());
    for p in &profiles {
        writeln!(text, "  {}", tuple(&g.profile_labels(p))).unwrap();
    }
    Ok(Report {
        command: "solve bayes",
        inputs: vec![input],
        result: json!({ "profiles": profiles.iter().map(|p| profile_value(&g, p)).collect::<Vec<_>>() }),
        text,
        code: 0,
    })
}

fn normal_form(g: &EpistemicGame, form: Option<Form>) -> Result<(NormalFormGame, Form)> {
    let form = form.unwrap_or(if g.is_state_independent() { Form::Action } else { Form::Strategy });
    let nf = match form {
        Form::Action => action_normal_form(g)?,
        Form::Strategy => to_normal_form(g)?,
    };
    Ok((nf, form))
}

fn form_name(form: Form) -> &'static str {
    match form {
        Form::Action => "action",
        Form::Strategy => "strategy",
    }
}

fn constraint_value(nf: &NormalFormGame, c: &SwapConstraint) -> Value {
    json!({
        "player": nf.players()[c.player],
        "told": nf.choices(c.player)[c.told],
        "deviation": nf.choices(c.player)[c.deviation],
        "slack": c.slack.to_string(),
    })
}

fn constraint_text(nf: &NormalFormGame, c: &SwapConstraint) -> String {
    format!(
        "{}: told {} vs {}: {}",
        nf.players()[c.player],
        nf.choices(c.player)[c.told],
        nf.choices(c.player)[c.deviation],
        c.slack
    )
}

fn solve_ce(file: &Path, objective: &str, form: Option<Form>, lp_cap: u64) -> Result<Report> {
    let (g, input) = load_game(file)?;
    let (nf, form) = normal_form(&g, form)?;
    let obj = match objective {
        "sum" => Objective::SumOfUtilities,
        other => match other.strip_prefix("player:") {
            Some(name) => Objective::Player(
                nf.player_index(name)
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown player {name:?}")))?,
            ),
            None => return Err(Error::InvalidArgument(format!("objective must be sum or player:NAME, got {other:?}"))),
        },
    };
    let ce = find_correlated_equilibrium_with_cap(&nf, &obj, lp_cap)?;
    let mut text = format!("form: {}\nobjective value: {}\ndistribution:\n", form_name(form), ce.objective);
    for (p, w) in ce.distribution.support() {
        writeln!(text, "  {}: {w}", tuple(&nf.profile_labels(nf.profile_index(&p)))).unwrap();
    }
    Ok(Report {
        command: "solve ce",
        inputs: vec![input],
        result: json!({
            "form": form_name(form),
            "objective": objective,
            "value": ce.objective.to_string(),
            "distribution": distribution_value(&nf, &ce.distribution),
            "constraints": ce.certificate.iter().map(|c| constraint_value(&nf, c)).collect::<Vec<_>>(),
        }),
        text,
        code: 0,
    })
}

fn ce_check(file: &Path, dist: &Path, form: Option<Form>) -> Result<Report> {
    let (g, game_input) = load_game(file)?;
    let (nf, form) = normal_form(&g, form)?;
    let (bytes, dist_input) = read(dist)?;
    let d = parse_distribution(&nf, &bytes)?;
    let report = is_correlated_equilibrium(&nf, &d)?;
    let mut text = format!(
        "form: {}\n{}\n",
        form_name(form),
        if report.ok { "correlated equilibrium" } else { "not a correlated equilibrium" }
    );
    for c in &report.violated {
        writeln!(text, "  violated {}", constraint_text(&nf, c)).unwrap();
    }
    Ok(Report {
        command: "ce-check",
        inputs: vec![game_input, dist_input],
        result: json!({
            "form": form_name(form),
            "ok": report.ok,
            "violated": report.violated.iter().map(|c| constraint_value(&nf, c)).collect::<Vec<_>>(),
        }),
        text,
        code: if report.ok { 0 } else { 1 },
    })
}

fn solve_coherent(file: &Path, max_systems: u64, admissible_only: bool) -> Result<Report> {
    let (g, input) = load_game(file)?;
    let total = coherent_systems(&g)?.total().clone();
    let mut text = format!("{total} coherent systems\n");
    let systems: Vec<CoherentSystem> = enumerate_coherent_systems(&g, max_systems)?.collect();
    let mut listed = Vec::new();
    for (k, sys) in systems.iter().enumerate() {
        let eval = SystemUtilities::new(&g, sys);
        let rational = eval.rational();
        if admissible_only && rational.is_empty() {
            continue;
        }
        let profiles = sys.strategy_profiles(&g);
        let solutions: Vec<StrategyProfile> = rational.iter().map(|&m| profiles[m].clone()).collect();
        let eff = efficiency_report(&g, sys, &solutions)?;
        writeln!(text, "system {k}:").unwrap();
        let mut members = Vec::new();
        for (m, p) in profiles.iter().enumerate() {
            let utilities: Vec<String> = eval.utilities[m].iter().map(Rational::to_string).collect();
            let mark = if rational.contains(&m) { " *" } else { "" };
            writeln!(text, "  {} -> ({}){mark}", tuple(&g.profile_labels(p)), utilities.join(", ")).unwrap();
            members.push(json!({ "profile": profile_value(&g, p), "utilities": utilities, "pareto": eval.is_pareto(m) }));
        }
        if solutions.is_empty() {
            writeln!(text, "  no rational solution").unwrap();
        } else {
            writeln!(text, "  essentially unique: {}", eff.essentially_unique).unwrap();
        }
        listed.push(json!({
            "index": k,
            "members": members,
            "rational_solutions": solutions.iter().map(|p| profile_value(&g, p)).collect::<Vec<_>>(),
            "essentially_unique": eff.essentially_unique,
        }));
    }
    Ok(Report {
        command: "solve coherent",
        inputs: vec![input],
        result: json!({
            "total": total.to_string(),
            "admissible_only": admissible_only,
            "systems": listed,
        }),
        text,
        code: 0,
    })
}

fn solve_conjecture(file: &Path, conj: &Path, profile: Option<&str>) -> Result<Report> {
    let (g, game_input) = load_game(file)?;
    let (bytes, conj_input) = read(conj)?;
    let conjectures = parse_conjectures(&g, &bytes)?;
    let mut text = String::new();
    let mut best = Vec::new();
    let mut players = Vec::new();
    for (i, p) in g.players().iter().enumerate() {
        let c = conjectures.conjecture(i);
        let br = best_responses_to_conjecture(&g, i, c)?;
        let value = conjectured_value(&g, i, c, &br[0]);
        let labels: Vec<String> = br.iter().map(|s| g.strategy_label(s)).collect();
        writeln!(
            text,
            "{}: {} conjecture, best responses {} with value {value}",
            p.name,
            if c.is_fixed() { "fixed" } else { "non-fixed" },
            labels.join(", ")
        )
        .unwrap();
        players.push(json!({
            "player": p.name,
            "fixed": c.is_fixed(),
            "best_responses": labels,
            "value": value.to_string(),
        }));
        best.push(br);
    }
    // Subjectively rational profiles are exactly the products of best responses.
    let mut solutions = Vec::new();
    let mut combos: Vec<Vec<usize>> = vec![Vec::new()];
    for br in &best {
        combos = combos
            .into_iter()
            .flat_map(|c| (0..br.len()).map(move |k| [c.clone(), vec![k]].concat()))
            .collect();
    }
    for combo in combos {
        let sp = StrategyProfile::new(combo.iter().enumerate().map(|(i, &k)| best[i][k].clone()).collect());
        let class = classify_solution(&g, &conjectures, &sp)?;
        writeln!(text, "  {}: {}", tuple(&g.profile_labels(&sp)), class.as_str()).unwrap();
        solutions.push(json!({ "profile": profile_value(&g, &sp), "classification": class.as_str() }));
    }
    let mut result = Map::new();
    result.insert("players".into(), json!(players));
    result.insert("rational_profiles".into(), json!(solutions));
    if let Some(labels) = profile {
        let labels: Vec<&str> = labels.split(',').collect();
        let sp = g.parse_profile(&labels)?;
        let class = classify_solution(&g, &conjectures, &sp)?;
        writeln!(text, "profile {}: {}", tuple(&g.profile_labels(&sp)), class.as_str()).unwrap();
        result.insert(
            "profile".into(),
            json!({ "profile": profile_value(&g, &sp), "classification": class.as_str() }),
        );
    }
    Ok(Report {
        command: "solve conjecture",
        inputs: vec![game_input, conj_input],
        result: Value::Object(result),
        text,
        code: 0,
    })
}

fn search_value(g: &EpistemicGame, s: &SearchReport) -> Value {
    let (i, j) = s.pair;
    // Entries name strategies of the other player of the pair.
    let side = |other: usize, psi: &[Vec<usize>]| -> Value {
        let labels: Vec<Vec<String>> = psi
            .iter()
            .map(|row| row.iter().map(|&k| g.strategy_label(&g.strategy_from_index(other, k))).collect())
            .collect();
        json!(labels)
    };
    json!({
        "pair": [g.player(i).name, g.player(j).name],
        "size": s.size.to_string(),
        "exhausted": s.exhausted,
        "nodes": s.nodes,
        "witnesses": s.witnesses.iter().map(|w| json!({
            "psi_i": side(j, &w.psi_i),
            "psi_j": side(i, &w.psi_j),
        })).collect::<Vec<_>>(),
    })
}

fn theorem_value(g: &EpistemicGame, t: &TheoremReport) -> Value {
    json!({
        "theorem": t.theorem,
        "holds": t.holds,
        "searches": t.searches.iter().map(|s| search_value(g, s)).collect::<Vec<_>>(),
    })
}

fn theorem_text(g: &EpistemicGame, t: &TheoremReport, text: &mut String) {
    writeln!(text, "theorem {}: {}", t.theorem, if t.holds { "holds" } else { "FAILS" }).unwrap();
    for s in &t.searches {
        writeln!(
            text,
            "  pair ({}, {}): {} witnesses, space {}, exhausted {}",
            g.player(s.pair.0).name,
            g.player(s.pair.1).name,
            s.witnesses.len(),
            s.size,
            s.exhausted
        )
        .unwrap();
    }
}

fn verify_theorems(file: &Path, which: TheoremArg, cap: u64) -> Result<Report> {
    let (g, input) = load_game(file)?;
    let mut text = String::new();
    let mut results = Vec::new();
    let mut holds = true;
    if which != TheoremArg::Two {
        let t = check_theorem1(&g, cap)?;
        theorem_text(&g, &t, &mut text);
        holds &= t.holds;
        results.push(theorem_value(&g, &t));
    }
    if which != TheoremArg::One {
        match check_theorem2(&g, cap) {
            Ok(t) => {
                theorem_text(&g, &t, &mut text);
                holds &= t.holds;
                results.push(theorem_value(&g, &t));
            }
            Err(Error::NotImperfectInformation) if which == TheoremArg::All => {
                writeln!(text, "theorem 2: skipped, no player has imperfect information").unwrap();
                results.push(json!({ "theorem": 2, "skipped": "no player has imperfect information" }));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Report {
        command: "verify theorems",
        inputs: vec![input],
        result: json!({ "holds": holds, "theorems": results }),
        text,
        code: if holds { 0 } else { 1 },
    })
}

fn decompose(file: &Path) -> Result<Report> {
    let (g, input) = load_game(file)?;
    let r = decomposition_check(&g)?;
    let p = g.player(0);
    let optima: Vec<String> = r.optima.iter().map(|s| g.strategy_label(s)).collect();
    let dominant: Vec<Value> = r
        .dominant
        .iter()
        .map(|d| d.map_or(Value::Null, |a| json!(p.actions[a])))
        .collect();
    let mut text = format!("global optima (value {}): {}\n", r.value, optima.join(", "));
    for (c, d) in r.dominant.iter().enumerate() {
        let cell = p.partition.block(c).labels(g.space());
        match d {
            Some(a) => writeln!(text, "  cell {cell:?}: dominant action {}", p.actions[*a]).unwrap(),
            None => writeln!(text, "  cell {cell:?}: no dominant action").unwrap(),
        }
    }
    writeln!(text, "cellwise consistent: {}", r.cellwise_consistent).unwrap();
    Ok(Report {
        command: "decompose",
        inputs: vec![input],
        result: json!({
            "optima": optima,
            "value": r.value.to_string(),
            "dominant": dominant,
            "cellwise_consistent": r.cellwise_consistent,
        }),
        text,
        code: 0,
    })
}

/// Canonical files for a built-in example: the game and, for the
/// rendezvous, its matching conjectures.
pub fn export_files(name: &str) -> Result<Vec<(String, String)>> {
    let g = example(name)?;
    let mut files = vec![(format!("{name}.json"), serialize_game(&g))];
    if name == "rendezvous" {
        let conj: ConjectureProfile = matching_conjectures(&g)?;
        files.push((format!("{name}.conjectures.json"), serialize_conjectures(&g, &conj)));
    }
    Ok(files)
}

fn export(name: &str, out: Option<&Path>) -> Result<Report> {
    let files = export_files(name).map_err(|e| match e {
        Error::UnknownExample(n) => Error::UnknownExample(format!("{n} (known: {})", EXAMPLE_NAMES.join(", "))),
        other => other,
    })?;
    let Some(dir) = out else {
        return Ok(Report {
            command: "export",
            inputs: Vec::new(),
            result: serde_json::from_str(&files[0].1).expect("exported files are JSON"),
            text: files[0].1.clone(),
            code: 0,
        });
    };
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut text = String::new();
    let mut written = Vec::new();
    for (file, content) in &files {
        let path = dir.join(file);
        std::fs::write(&path, content).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        writeln!(text, "wrote {}", path.display()).unwrap();
        written.push(json!(path.display().to_string()));
    }
    Ok(Report {
        command: "export",
        inputs: Vec::new(),
        result: json!({ "written": written }),
        text,
        code: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_example_is_an_input_error() {
        let out = execute(["epigame", "export", "unknown"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("unknown_example"), "{}", out.stderr);
    }

    #[test]
    fn export_to_stdout_is_the_canonical_file() {
        let out = execute(["epigame", "export", "prisoners-dilemma"]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, export_files("prisoners-dilemma").unwrap()[0].1);
    }

    #[test]
    fn bad_arguments_exit_2() {
        assert_eq!(execute(["epigame", "frobnicate"]).code, 2);
        assert_eq!(execute(["epigame", "validate", "/nonexistent/game.json"]).code, 2);
        assert_eq!(execute(["epigame", "--help"]).code, 0);
    }
}
