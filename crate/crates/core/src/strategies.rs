//! Run-level strategies built on the engine.
//!
//! * [`run_static`] posts one symmetry-breaking set and searches.
//! * [`run_model_restarts`] restarts under a backtrack cutoff, posting the
//!   image of the canonical set under a freshly sampled group element each
//!   time. With a deterministic value heuristic the posted set is the only
//!   thing that changes between restarts, so a pathological interaction
//!   between the heuristic and one particular set cannot dominate: some
//!   other image of the set gets its turn.
//! * [`run_sbds`] posts nothing and instead prunes symmetric images of
//!   refuted branches during a single search.
//!
//! [`expected_restart_cost`] turns measured per-variant backtrack counts
//! into the expected total cost of the restart scheme at a given cutoff.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::csp::{Assignment, Csp};
use crate::perm::SymmetryGroup;
use crate::rng::restart_seed;
use crate::search::{
    self, Outcome, SearchConfig, SearchStats, ValHeuristic,
};
use crate::symbreak::SymBreakSet;

#[derive(Clone, Debug)]
pub struct RestartConfig {
    /// Backtrack budget per restart.
    pub cutoff: u64,
    pub max_restarts: usize,
    /// Seeds both the group sampling and the per-restart value orders.
    pub master_seed: u64,
}

impl Default for RestartConfig {
    fn default() -> Self {
        RestartConfig {
            cutoff: 1000,
            max_restarts: 1000,
            master_seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RestartLogEntry {
    pub restart: usize,
    /// Label of the sampled group element whose set image was posted.
    pub symmetry: String,
    pub backtracks: u64,
    pub outcome: String,
}

impl RestartLogEntry {
    pub fn line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}",
            self.restart, self.symmetry, self.backtracks, self.outcome
        )
    }
}

#[derive(Clone, Debug)]
pub struct StrategyReport {
    /// For decision problems: first solution or exhaustion. For
    /// optimization: `Solution` carries the incumbent, `proved_optimal`
    /// says whether it was proved best.
    pub outcome: Outcome,
    pub best: Option<(Assignment, i64)>,
    pub proved_optimal: bool,
    pub stats: SearchStats,
    pub restarts: Vec<RestartLogEntry>,
    /// The symmetry-breaking set in force when the run concluded, if any
    /// set was posted.
    pub posted: Option<SymBreakSet>,
}

fn merge(total: &mut SearchStats, s: &SearchStats) {
    total.nodes += s.nodes;
    total.backtracks += s.backtracks;
    total.solutions += s.solutions;
}

/// Posts `sbc` and runs to completion (or budget) once. Optimizes when the
/// problem has an objective, otherwise looks for one solution.
pub fn run_static(csp: &Csp, sbc: &SymBreakSet, cfg: &SearchConfig) -> StrategyReport {
    let posted_csp = csp.with_constraints(&sbc.constraints);
    if csp.objective.is_some() {
        let res = search::optimize(&posted_csp, cfg, None);
        let outcome = match (&res.best, res.proved_optimal, res.timed_out) {
            (Some((a, _)), _, _) => Outcome::Solution(a.clone()),
            (None, true, _) => Outcome::Exhausted,
            (None, false, true) => Outcome::TimedOut,
            (None, false, false) => Outcome::CutoffReached,
        };
        StrategyReport {
            outcome,
            best: res.best,
            proved_optimal: res.proved_optimal,
            stats: res.stats,
            restarts: Vec::new(),
            posted: Some(sbc.clone()),
        }
    } else {
        let res = search::solve(&posted_csp, cfg);
        StrategyReport {
            outcome: res.outcome,
            best: None,
            proved_optimal: false,
            stats: res.stats,
            restarts: Vec::new(),
            posted: Some(sbc.clone()),
        }
    }
}

/// Restarts with a fresh random image of `canonical` posted each time.
/// Conclusive restarts (solution found, space exhausted, time out) end the
/// run; cutoffs are logged and trigger the next restart. Optimization
/// carries the incumbent bound across restarts. When every restart is cut
/// off the report says `CutoffReached` (or the incumbent, if any).
pub fn run_model_restarts(
    csp: &Csp,
    canonical: &SymBreakSet,
    group: &SymmetryGroup,
    base: &SearchConfig,
    rcfg: &RestartConfig,
) -> StrategyReport {
    let mut sample_rng = ChaCha8Rng::seed_from_u64(rcfg.master_seed);
    let mut stats = SearchStats::default();
    let mut log = Vec::new();
    let mut best: Option<(Assignment, i64)> = None;
    let mut bound: Option<i64> = None;

    for r in 0..rcfg.max_restarts {
        let (g, label) = group.random_element(&mut sample_rng);
        let posted = canonical
            .transformed(&g, &label)
            .simplified(csp.value_offset, csp.n_values);
        let posted_csp = csp.with_constraints(&posted.constraints);
        let cfg = SearchConfig {
            cutoff: Some(rcfg.cutoff),
            val_heuristic: match base.val_heuristic {
                ValHeuristic::LexMin => ValHeuristic::LexMin,
                ValHeuristic::RandomOrder(_) => {
                    ValHeuristic::RandomOrder(restart_seed(rcfg.master_seed, r as u64))
                }
            },
            generators: Vec::new(),
            ..base.clone()
        };

        if csp.objective.is_some() {
            let res = search::optimize(&posted_csp, &cfg, bound);
            merge(&mut stats, &res.stats);
            if let Some((a, v)) = res.best {
                best = Some((a, v));
                bound = Some(v);
            }
            let outcome_str = if res.proved_optimal {
                "optimal"
            } else if res.timed_out {
                "timeout"
            } else {
                "cutoff"
            };
            log.push(RestartLogEntry {
                restart: r,
                symmetry: label,
                backtracks: res.stats.backtracks,
                outcome: outcome_str.into(),
            });
            if res.proved_optimal || res.timed_out {
                let outcome = match &best {
                    Some((a, _)) => Outcome::Solution(a.clone()),
                    None if res.proved_optimal => Outcome::Exhausted,
                    None => Outcome::TimedOut,
                };
                return StrategyReport {
                    outcome,
                    best,
                    proved_optimal: res.proved_optimal,
                    stats,
                    restarts: log,
                    posted: Some(posted),
                };
            }
        } else {
            let res = search::solve(&posted_csp, &cfg);
            merge(&mut stats, &res.stats);
            let outcome_str = match &res.outcome {
                Outcome::Solution(_) => "solution",
                Outcome::Exhausted => "exhausted",
                Outcome::CutoffReached => "cutoff",
                Outcome::TimedOut => "timeout",
            };
            log.push(RestartLogEntry {
                restart: r,
                symmetry: label,
                backtracks: res.stats.backtracks,
                outcome: outcome_str.into(),
            });
            match res.outcome {
                Outcome::CutoffReached => {}
                other => {
                    return StrategyReport {
                        outcome: other,
                        best: None,
                        proved_optimal: false,
                        stats,
                        restarts: log,
                        posted: Some(posted),
                    }
                }
            }
        }
    }

    let outcome = match &best {
        Some((a, _)) => Outcome::Solution(a.clone()),
        None => Outcome::CutoffReached,
    };
    StrategyReport {
        outcome,
        best,
        proved_optimal: false,
        stats,
        restarts: log,
        posted: None,
    }
}

/// Single search with the group's generators pruning symmetric images of
/// refuted branches. No constraints are posted.
pub fn run_sbds(csp: &Csp, group: &SymmetryGroup, base: &SearchConfig) -> StrategyReport {
    let cfg = SearchConfig {
        generators: group.generators.iter().map(|(_, g)| g.clone()).collect(),
        ..base.clone()
    };
    if csp.objective.is_some() {
        let res = search::optimize(csp, &cfg, None);
        let outcome = match (&res.best, res.proved_optimal, res.timed_out) {
            (Some((a, _)), _, _) => Outcome::Solution(a.clone()),
            (None, true, _) => Outcome::Exhausted,
            (None, false, true) => Outcome::TimedOut,
            (None, false, false) => Outcome::CutoffReached,
        };
        StrategyReport {
            outcome,
            best: res.best,
            proved_optimal: res.proved_optimal,
            stats: res.stats,
            restarts: Vec::new(),
            posted: None,
        }
    } else {
        let res = search::solve(csp, &cfg);
        StrategyReport {
            outcome: res.outcome,
            best: None,
            proved_optimal: false,
            stats: res.stats,
            restarts: Vec::new(),
            posted: None,
        }
    }
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum CostError {
    #[error("no measured runs")]
    Empty,
    #[error("every measured run exceeds the cutoff")]
    AllExceed,
}

/// Expected total backtracks of the restart scheme: each restart draws a
/// variant uniformly from the measured pool, pays `cutoff` if the variant
/// needs more than that, and otherwise finishes at the variant's own cost.
///
/// With `k` variants of which `m` exceed the cutoff `c`, the success
/// probability per restart is `(k-m)/k`, failures cost `c` each, and the
/// conditional cost of a success averages the surviving counts:
/// `E = (Σ_{b≤c} b + m·c) / (k-m)`.
pub fn expected_restart_cost(counts: &[u64], cutoff: u64) -> Result<f64, CostError> {
    if counts.is_empty() {
        return Err(CostError::Empty);
    }
    let k = counts.len();
    let m = counts.iter().filter(|&&b| b > cutoff).count();
    if m == k {
        return Err(CostError::AllExceed);
    }
    let survivor_sum: u64 = counts.iter().filter(|&&b| b <= cutoff).sum();
    Ok((survivor_sum as f64 + m as f64 * cutoff as f64) / (k - m) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::{Constraint, View};
    use crate::csp::Objective;
    use crate::perm::GroupFactor;

    fn pigeonhole() -> Csp {
        let mut csp = Csp::new(4, 3, 0);
        csp.constraints
            .push(Constraint::AllDifferent((0..4).map(View::of_var).collect()));
        csp
    }

    fn value_group(n_vars: usize, n_values: usize) -> SymmetryGroup {
        SymmetryGroup::product(
            n_vars,
            n_values,
            0,
            vec![GroupFactor::ValueSet((0..n_values).collect())],
        )
    }

    #[test]
    fn expected_cost_matches_hand_calculations() {
        let counts = [658u64, 17_143, 315_267, 18_808_974];
        assert_eq!(expected_restart_cost(&counts, 1000), Ok(3658.0));
        assert_eq!(expected_restart_cost(&counts, 20_000), Ok(28_900.5));
        assert_eq!(expected_restart_cost(&[], 10), Err(CostError::Empty));
        assert_eq!(
            expected_restart_cost(&[5, 6], 4),
            Err(CostError::AllExceed)
        );
    }

    #[test]
    fn static_run_solves_and_reports_posted_set() {
        let mut csp = Csp::new(2, 3, 0);
        csp.constraints
            .push(Constraint::AllDifferent(vec![View::of_var(0), View::of_var(1)]));
        let sbc = SymBreakSet::new(
            "order",
            vec![Constraint::Less(View::of_var(0), View::of_var(1))],
        );
        let rep = run_static(&csp, &sbc, &SearchConfig::default());
        match rep.outcome {
            Outcome::Solution(a) => assert!(a.get(0) < a.get(1)),
            other => panic!("expected a solution, got {other:?}"),
        }
        assert_eq!(rep.posted.unwrap().label, "order");
    }

    #[test]
    fn restarts_log_cutoffs_and_then_conclude() {
        let csp = pigeonhole();
        let group = value_group(4, 3);
        let sbc = SymBreakSet::new("empty", vec![]);
        // Zero budget: every restart is cut off.
        let rcfg = RestartConfig {
            cutoff: 0,
            max_restarts: 3,
            master_seed: 11,
        };
        let rep = run_model_restarts(&csp, &sbc, &group, &SearchConfig::default(), &rcfg);
        assert_eq!(rep.outcome, Outcome::CutoffReached);
        assert_eq!(rep.restarts.len(), 3);
        assert!(rep.restarts.iter().all(|e| e.outcome == "cutoff"));
        assert!(rep.restarts.iter().all(|e| e.backtracks == 0));
        assert!(rep.posted.is_none());

        // Generous budget: the first restart proves infeasibility.
        let rcfg = RestartConfig {
            cutoff: 10_000,
            max_restarts: 3,
            master_seed: 11,
        };
        let rep = run_model_restarts(&csp, &sbc, &group, &SearchConfig::default(), &rcfg);
        assert_eq!(rep.outcome, Outcome::Exhausted);
        assert_eq!(rep.restarts.len(), 1);
        assert_eq!(rep.restarts[0].outcome, "exhausted");
    }

    #[test]
    fn restart_reports_replay_deterministically() {
        let csp = pigeonhole();
        let group = value_group(4, 3);
        let sbc = SymBreakSet::new("empty", vec![]);
        let base = SearchConfig {
            val_heuristic: ValHeuristic::RandomOrder(0),
            ..SearchConfig::default()
        };
        let rcfg = RestartConfig {
            cutoff: 1,
            max_restarts: 4,
            master_seed: 5,
        };
        let a = run_model_restarts(&csp, &sbc, &group, &base, &rcfg);
        let b = run_model_restarts(&csp, &sbc, &group, &base, &rcfg);
        let lines = |r: &StrategyReport| {
            r.restarts.iter().map(|e| e.line()).collect::<Vec<_>>()
        };
        assert_eq!(lines(&a), lines(&b));
        assert_eq!(a.stats.nodes, b.stats.nodes);

        let other = run_model_restarts(
            &csp,
            &sbc,
            &group,
            &base,
            &RestartConfig {
                master_seed: 6,
                ..rcfg
            },
        );
        assert_ne!(
            lines(&a),
            lines(&other),
            "different master seeds should sample differently"
        );
    }

    #[test]
    fn restart_optimization_carries_incumbent() {
        // Minimize x1 subject to x0 < x1; optimum 1.
        let mut csp = Csp::new(2, 4, 0);
        csp.constraints
            .push(Constraint::Less(View::of_var(0), View::of_var(1)));
        csp.objective = Some(Objective::Variable(1));
        let group = SymmetryGroup::product(2, 4, 0, vec![GroupFactor::VarBlock(vec![0])]);
        let sbc = SymBreakSet::new("empty", vec![]);

        // Zero budget: first dive still finds the lex-least solution, the
        // proof dive is cut off, and later restarts inherit the bound.
        let rcfg = RestartConfig {
            cutoff: 0,
            max_restarts: 2,
            master_seed: 1,
        };
        let rep = run_model_restarts(&csp, &sbc, &group, &SearchConfig::default(), &rcfg);
        let (_, v) = rep.best.clone().unwrap();
        assert_eq!(v, 1);
        assert!(!rep.proved_optimal);
        assert!(matches!(rep.outcome, Outcome::Solution(_)));

        let rcfg = RestartConfig {
            cutoff: 100,
            ..rcfg
        };
        let rep = run_model_restarts(&csp, &sbc, &group, &SearchConfig::default(), &rcfg);
        assert_eq!(rep.best.unwrap().1, 1);
        assert!(rep.proved_optimal);
    }

    #[test]
    fn sbds_run_solves_symmetric_problem() {
        let csp = pigeonhole();
        let group = value_group(4, 3);
        let rep = run_sbds(&csp, &group, &SearchConfig::default());
        assert_eq!(rep.outcome, Outcome::Exhausted);

        let mut sat = Csp::new(3, 3, 0);
        sat.constraints
            .push(Constraint::AllDifferent((0..3).map(View::of_var).collect()));
        let rep = run_sbds(&sat, &value_group(3, 3), &SearchConfig::default());
        match rep.outcome {
            Outcome::Solution(a) => assert!(sat.is_solution(&a)),
            other => panic!("expected a solution, got {other:?}"),
        }
    }
}
