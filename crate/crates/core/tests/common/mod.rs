//! Random game generators and brute-force oracles shared by the
//! integration tests. The oracles deliberately avoid the library's own
//! search and solver code paths.

#![allow(dead_code)]

use std::collections::BTreeSet;

use epigame::equilibrium::NormalFormGame;
use epigame::{EpistemicGame, FiniteSpace, Measure, Partition, Player, Rational, StrategyProfile};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational with numerator in `-4..=4` and denominator in `1..=3`.
pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn random_partition(rng: &mut ChaCha8Rng, space: &std::sync::Arc<FiniteSpace>) -> Partition {
    let n = space.len();
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    let blocks: Vec<Vec<usize>> = labels
        .iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .map(|&l| (0..n).filter(|&w| labels[w] == l).collect())
        .collect();
    Partition::new(space.clone(), blocks).unwrap()
}

pub fn random_positive_measure(rng: &mut ChaCha8Rng, space: &std::sync::Arc<FiniteSpace>) -> Measure {
    let raw: Vec<i64> = (0..space.len()).map(|_| rng.gen_range(1..=4)).collect();
    let total: i64 = raw.iter().sum();
    Measure::new(space.clone(), raw.iter().map(|&w| Rational::new(w, total)).collect()).unwrap()
}

pub fn random_measure(rng: &mut ChaCha8Rng, space: &std::sync::Arc<FiniteSpace>) -> Measure {
    loop {
        let raw: Vec<i64> = (0..space.len()).map(|_| rng.gen_range(0..=3)).collect();
        let total: i64 = raw.iter().sum();
        if total > 0 {
            return Measure::new(space.clone(), raw.iter().map(|&w| Rational::new(w, total)).collect()).unwrap();
        }
    }
}

pub struct GameShape {
    pub states: usize,
    pub actions: Vec<usize>,
    pub common_prior: bool,
    pub state_independent: bool,
    /// Force every player's partition to this one.
    pub partition: Option<fn(std::sync::Arc<FiniteSpace>) -> Partition>,
}

/// A random action-kind game following `shape`.
pub fn random_game(rng: &mut ChaCha8Rng, shape: &GameShape) -> EpistemicGame {
    let space = FiniteSpace::new((0..shape.states).map(|w| format!("w{w}"))).unwrap();
    let common = random_positive_measure(rng, &space);
    let players: Vec<Player> = shape
        .actions
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let partition = match shape.partition {
                Some(f) => f(space.clone()),
                None => random_partition(rng, &space),
            };
            let prior = if shape.common_prior { common.clone() } else { random_positive_measure(rng, &space) };
            Player::new(format!("p{i}"), (0..k).map(|a| format!("a{a}")), partition, prior)
        })
        .collect();
    let profiles: usize = shape.actions.iter().product();
    let per_state = if shape.state_independent { 1 } else { shape.states };
    let table: Vec<Vec<Vec<Rational>>> = (0..shape.actions.len())
        .map(|_| (0..per_state).map(|_| (0..profiles).map(|_| small_rational(rng)).collect()).collect())
        .collect();
    let radix: Vec<usize> = shape.actions.clone();
    EpistemicGame::from_action_utilities(space, players, |i, w, a| {
        let idx = a.iter().zip(&radix).fold(0, |acc, (&d, &r)| acc * r + d);
        table[i][if shape.state_independent { 0 } else { w }][idx].clone()
    })
    .unwrap()
}

/// Rescales every player's utilities by `scale[i] * u + shift[i]`.
pub fn rescale(g: &EpistemicGame, scale: &[Rational], shift: &[Rational]) -> EpistemicGame {
    EpistemicGame::from_action_utilities(g.space().clone(), g.players().to_vec(), |i, w, a| {
        &scale[i] * g.action_utility(i, w, a).unwrap() + &shift[i]
    })
    .unwrap()
}

/// Digits of `index` in the mixed radix, first digit most significant.
pub fn digits(mut index: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for (d, &r) in out.iter_mut().zip(radices).rev() {
        *d = index % r;
        index /= r;
    }
    out
}

pub fn undigits(ds: &[usize], radices: &[usize]) -> usize {
    ds.iter().zip(radices).fold(0, |acc, (&d, &r)| acc * r + d)
}

/// Strategies of a player as cell-action vectors, in index order.
pub fn strategies(g: &EpistemicGame, i: usize) -> Vec<Vec<usize>> {
    let p = g.player(i);
    let radices = vec![p.actions.len(); p.partition.len()];
    let count: usize = radices.iter().product();
    (0..count).map(|k| digits(k, &radices)).collect()
}

/// Direct Bayes-rationality test: on every cell, no other action raises the
/// prior-weighted sum of utilities over that cell.
pub fn bayes_oracle(g: &EpistemicGame, profile: &StrategyProfile) -> bool {
    let n = g.num_players();
    let action_at = |actions: &[Vec<usize>], j: usize, w: usize| actions[j][g.player(j).partition.block_of(w)];
    let base: Vec<Vec<usize>> = (0..n).map(|j| profile.strategy(j).actions.clone()).collect();
    for i in 0..n {
        let p = g.player(i);
        for (c, cell) in p.partition.blocks().iter().enumerate() {
            let score = |acts: &[Vec<usize>]| -> Rational {
                cell.members()
                    .iter()
                    .map(|&w| {
                        let a: Vec<usize> = (0..n).map(|j| action_at(acts, j, w)).collect();
                        p.prior.weight(w) * g.action_utility(i, w, &a).unwrap()
                    })
                    .sum()
            };
            let current = score(&base);
            for alt in 0..p.actions.len() {
                let mut dev = base.clone();
                dev[i][c] = alt;
                if score(&dev) > current {
                    return false;
                }
            }
        }
    }
    true
}

/// Direct CE test: for each player, told choice and deviation, the weighted
/// payoff difference is nonnegative.
pub fn ce_oracle(nf: &NormalFormGame, weights: &[Rational]) -> bool {
    let dims = nf.dims().to_vec();
    for i in 0..dims.len() {
        for told in 0..dims[i] {
            for dev in 0..dims[i] {
                let mut total = Rational::zero();
                for (k, w) in weights.iter().enumerate() {
                    let p = digits(k, &dims);
                    if p[i] != told {
                        continue;
                    }
                    let mut q = p.clone();
                    q[i] = dev;
                    total += w * (nf.payoff(i, &p) - nf.payoff(i, &q));
                }
                if total.is_negative() {
                    return false;
                }
            }
        }
    }
    true
}

/// Solves a square system by Gaussian elimination; `None` when singular.
pub fn solve_linear(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            let pivot_row = a[col].clone();
            for (x, y) in a[r].iter_mut().zip(&pivot_row).skip(col) {
                *x -= &(&f * y);
            }
            let v = &f * &b[col];
            b[r] -= &v;
        }
    }
    Some((0..n).map(|r| &b[r] / &a[r][r]).collect())
}

fn combinations(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::new(), f);
}

/// Maximum of `objective` over the CE polytope by enumerating every vertex:
/// each choice of `n - 1` tight inequalities together with `Σ x = 1`.
pub fn ce_optimum_by_vertices(nf: &NormalFormGame, objective: &[Rational]) -> Rational {
    let dims = nf.dims().to_vec();
    let n: usize = dims.iter().product();
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|k| (0..n).map(|j| if j == k { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    for i in 0..dims.len() {
        for told in 0..dims[i] {
            for dev in (0..dims[i]).filter(|&d| d != told) {
                rows.push(
                    (0..n)
                        .map(|k| {
                            let p = digits(k, &dims);
                            if p[i] != told {
                                return Rational::zero();
                            }
                            let mut q = p.clone();
                            q[i] = dev;
                            nf.payoff(i, &p) - nf.payoff(i, &q)
                        })
                        .collect(),
                );
            }
        }
    }
    let mut best: Option<Rational> = None;
    combinations(rows.len(), n - 1, &mut |tight| {
        let mut a = vec![vec![Rational::one(); n]];
        let mut b = vec![Rational::one()];
        for &t in tight {
            a.push(rows[t].clone());
            b.push(Rational::zero());
        }
        let Some(x) = solve_linear(a, b) else { return };
        let feasible = rows
            .iter()
            .all(|r| !r.iter().zip(&x).map(|(c, v)| c * v).sum::<Rational>().is_negative());
        if feasible {
            let v: Rational = objective.iter().zip(&x).map(|(c, v)| c * v).sum();
            if best.as_ref().is_none_or(|b| v > *b) {
                best = Some(v);
            }
        }
    });
    best.expect("the CE polytope has a vertex")
}

/// An enumerated scenario: `psi_i[cell][action]`, `psi_j[cell][action]`.
pub type Scenario = (Vec<Vec<usize>>, Vec<Vec<usize>>);

/// Every scenario of the full space satisfying the consistency conditions in
/// both directions (and INV when asked), in scenario-index order.
pub fn scenarios_by_enumeration(g: &EpistemicGame, i: usize, j: usize, inv: bool) -> Vec<Scenario> {
    let si = strategies(g, i);
    let sj = strategies(g, j);
    let (pi, pj) = (g.player(i), g.player(j));
    let per = |k: usize| if inv { 1 } else { k };
    let ni = pi.partition.len() * per(pi.actions.len());
    let nj = pj.partition.len() * per(pj.actions.len());
    let radices: Vec<usize> = std::iter::repeat_n(sj.len(), ni).chain(std::iter::repeat_n(si.len(), nj)).collect();
    let total: usize = radices.iter().product();
    let expand = |vals: &[usize], cells: usize, actions: usize| -> Vec<Vec<usize>> {
        (0..cells)
            .map(|c| (0..actions).map(|a| if inv { vals[c] } else { vals[c * actions + a] }).collect())
            .collect()
    };
    let consistent = |psi_a: &[Vec<usize>], sa: &[Vec<usize>], psi_b: &[Vec<usize>], sb: &[Vec<usize>]| {
        sa.iter().enumerate().all(|(k, s)| {
            let r = psi_a[0][s[0]];
            (0..s.len()).all(|c| psi_a[c][s[c]] == r) && (0..sb[r].len()).all(|d| psi_b[d][sb[r][d]] == k)
        })
    };
    let mut out = Vec::new();
    for idx in 0..total {
        let ds = digits(idx, &radices);
        let psi_i = expand(&ds[..ni], pi.partition.len(), pi.actions.len());
        let psi_j = expand(&ds[ni..], pj.partition.len(), pj.actions.len());
        if consistent(&psi_i, &si, &psi_j, &sj) && consistent(&psi_j, &sj, &psi_i, &si) {
            out.push((psi_i, psi_j));
        }
    }
    out
}

/// Coherent systems as sorted profile-index vectors, by testing every
/// `m`-subset of the profile space for bijective projections.
pub fn coherent_systems_by_subsets(g: &EpistemicGame) -> BTreeSet<Vec<Vec<usize>>> {
    let counts: Vec<usize> = (0..g.num_players()).map(|i| strategies(g, i).len()).collect();
    let mut out = BTreeSet::new();
    if counts.windows(2).any(|w| w[0] != w[1]) {
        return out;
    }
    let m = counts[0];
    let total: usize = counts.iter().product();
    combinations(total, m, &mut |subset| {
        let profiles: Vec<Vec<usize>> = subset.iter().map(|&k| digits(k, &counts)).collect();
        let bijective = (0..counts.len()).all(|i| profiles.iter().map(|p| p[i]).collect::<BTreeSet<_>>().len() == m);
        if bijective {
            out.insert(profiles);
        }
    });
    out
}

/// Rational solutions of a system straight from the definition.
pub fn rational_solutions_oracle(g: &EpistemicGame, system: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let eu = |p: &[usize], i: usize| -> Rational {
        let profile = g.profile_from_indices(p);
        g.space()
            .labels()
            .iter()
            .enumerate()
            .map(|(w, _)| g.player(i).prior.weight(w) * g.utility(i, w, &profile))
            .sum()
    };
    system
        .iter()
        .filter(|s| (0..g.num_players()).all(|i| system.iter().all(|t| eu(s, i) >= eu(t, i))))
        .cloned()
        .collect()
}
