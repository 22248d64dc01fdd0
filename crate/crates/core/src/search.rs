//! Backtracking search: propagation to fixpoint, binary branching,
//! backtrack cutoffs, branch-and-bound optimization and symmetric
//! refutation.
//!
//! Branching is binary: try `x = v`, and on exhaustion of that subtree try
//! `x ≠ v`. A backtrack is one refutation (a wipeout or a rejected leaf).
//! When a cutoff of `c` backtracks is set, a run aborts on the refutation
//! that would exceed `c`, so an aborted run has consumed exactly `c`
//! backtracks and a completed run at most `c`. Restart cost models depend
//! on that accounting.
//!
//! With symmetry generators supplied, refuting `x = v` under decisions `A`
//! also rules out each generator image `g(A) → g(x) ≠ g(v)` inside the
//! right subtree: whatever held in the refuted subtree holds for its
//! symmetric copies. With generators the search returns one representative
//! per symmetry class reachable from the generators, not every solution.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constraints::Wipeout;
use crate::csp::{Assignment, Csp, Domain, Objective};
use crate::perm::Symmetry;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VarHeuristic {
    /// Lowest-index undecided variable.
    FixedOrder,
    /// Smallest remaining domain, lowest index on ties.
    MinDomain,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ValHeuristic {
    /// Smallest value first.
    LexMin,
    /// Uniform random value each time, from the seeded generator.
    RandomOrder(u64),
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub var_heuristic: VarHeuristic,
    pub val_heuristic: ValHeuristic,
    /// Abort after this many backtracks.
    pub cutoff: Option<u64>,
    pub deadline: Option<Instant>,
    /// Symmetry generators for symmetric refutation; empty disables it.
    pub generators: Vec<Symmetry>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            var_heuristic: VarHeuristic::FixedOrder,
            val_heuristic: ValHeuristic::LexMin,
            cutoff: None,
            deadline: None,
            generators: Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Default, Debug)]
pub struct SearchStats {
    pub nodes: u64,
    pub backtracks: u64,
    pub solutions: u64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Outcome {
    Solution(Assignment),
    /// Search space exhausted without (further) solutions.
    Exhausted,
    CutoffReached,
    TimedOut,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub outcome: Outcome,
    pub stats: SearchStats,
}

#[derive(Clone, Debug)]
pub struct EnumerateResult {
    pub solutions: Vec<Assignment>,
    /// Whether the solution list is provably the whole solution set (no
    /// cutoff, timeout or limit intervened).
    pub complete: bool,
    pub stats: SearchStats,
}

#[derive(Clone, Debug)]
pub struct OptimizeResult {
    pub best: Option<(Assignment, i64)>,
    pub proved_optimal: bool,
    pub timed_out: bool,
    pub stats: SearchStats,
}

/// First solution, or proof there is none within the budget.
pub fn solve(csp: &Csp, cfg: &SearchConfig) -> SearchResult {
    let engine = Engine::new(csp, cfg, None, Some(1), SearchStats::default());
    let (mut sols, end, stats) = engine.run();
    let outcome = match end {
        RunEnd::Enough => Outcome::Solution(sols.pop().expect("limit hit with a solution")),
        RunEnd::Exhausted => Outcome::Exhausted,
        RunEnd::Cutoff => Outcome::CutoffReached,
        RunEnd::Timeout => Outcome::TimedOut,
    };
    SearchResult { outcome, stats }
}

/// All solutions, up to an optional count limit.
pub fn enumerate(csp: &Csp, cfg: &SearchConfig, limit: Option<usize>) -> EnumerateResult {
    let engine = Engine::new(csp, cfg, None, limit, SearchStats::default());
    let (solutions, end, stats) = engine.run();
    EnumerateResult {
        solutions,
        complete: end == RunEnd::Exhausted,
        stats,
    }
}

/// Branch-and-bound minimization of the problem's objective. Each
/// incumbent tightens the bound; `initial_bound` (exclusive) seeds it, for
/// example from an earlier run's incumbent. The cutoff budget spans the
/// whole minimization, not each dive.
pub fn optimize(csp: &Csp, cfg: &SearchConfig, initial_bound: Option<i64>) -> OptimizeResult {
    assert!(csp.objective.is_some(), "optimize needs an objective");
    let mut stats = SearchStats::default();
    let mut best: Option<(Assignment, i64)> = None;
    let mut bound = initial_bound;
    loop {
        let engine = Engine::new(csp, cfg, bound, Some(1), stats);
        let (sols, end, new_stats) = engine.run();
        stats = new_stats;
        match end {
            RunEnd::Enough => {
                let a = sols.into_iter().next().expect("limit hit with a solution");
                let v = csp.objective_value(&a).expect("objective present");
                best = Some((a, v));
                bound = Some(v);
            }
            RunEnd::Exhausted => {
                return OptimizeResult {
                    best,
                    proved_optimal: true,
                    timed_out: false,
                    stats,
                }
            }
            RunEnd::Cutoff => {
                return OptimizeResult {
                    best,
                    proved_optimal: false,
                    timed_out: false,
                    stats,
                }
            }
            RunEnd::Timeout => {
                return OptimizeResult {
                    best,
                    proved_optimal: false,
                    timed_out: true,
                    stats,
                }
            }
        }
    }
}

#[derive(PartialEq, Eq, Clone, Copy, Debug)]
enum RunEnd {
    Exhausted,
    Enough,
    Cutoff,
    Timeout,
}

enum Step {
    /// Subtree fully explored (solutions, if any, recorded).
    Done,
    Abort(RunEnd),
}

struct Nogood {
    /// Fires only when every pair is decided exactly so.
    cond: Vec<(usize, usize)>,
    forbid: (usize, usize),
}

struct Engine<'a> {
    csp: &'a Csp,
    cfg: &'a SearchConfig,
    /// Exclusive upper bound on the objective.
    bound: Option<i64>,
    limit: Option<usize>,
    rng: Option<ChaCha8Rng>,
    decisions: Vec<(usize, usize)>,
    nogoods: Vec<Nogood>,
    solutions: Vec<Assignment>,
    stats: SearchStats,
}

impl<'a> Engine<'a> {
    fn new(
        csp: &'a Csp,
        cfg: &'a SearchConfig,
        bound: Option<i64>,
        limit: Option<usize>,
        stats: SearchStats,
    ) -> Self {
        let rng = match cfg.val_heuristic {
            ValHeuristic::LexMin => None,
            ValHeuristic::RandomOrder(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        };
        Engine {
            csp,
            cfg,
            bound,
            limit,
            rng,
            decisions: Vec::new(),
            nogoods: Vec::new(),
            solutions: Vec::new(),
            stats,
        }
    }

    fn run(mut self) -> (Vec<Assignment>, RunEnd, SearchStats) {
        let domains = self.csp.domains.clone();
        let end = match self.dfs(domains) {
            Step::Done => RunEnd::Exhausted,
            Step::Abort(e) => e,
        };
        (self.solutions, end, self.stats)
    }

    fn dfs(&mut self, mut domains: Vec<Domain>) -> Step {
        self.stats.nodes += 1;
        if self.stats.nodes & 0xFF == 1 {
            if let Some(dl) = self.cfg.deadline {
                if Instant::now() >= dl {
                    return Step::Abort(RunEnd::Timeout);
                }
            }
        }
        if self.propagate(&mut domains).is_err() {
            return self.fail();
        }
        if let Some(asg) = Assignment::from_domains(&domains) {
            // Propagators are checkers on decided stores for almost every
            // shape; the final evaluation makes it unconditional.
            if !self.csp.satisfies(&asg) {
                return self.fail();
            }
            self.stats.solutions += 1;
            self.solutions.push(asg);
            if let Some(limit) = self.limit {
                if self.solutions.len() >= limit {
                    return Step::Abort(RunEnd::Enough);
                }
            }
            return Step::Done;
        }

        let var = self.choose_var(&domains);
        let val = self.choose_val(&domains[var]);

        let mut left = domains.clone();
        left[var].fix(val);
        self.decisions.push((var, val));
        let step = self.dfs(left);
        self.decisions.pop();
        if !matches!(step, Step::Done) {
            return step;
        }

        let mark = self.nogoods.len();
        self.post_nogoods(&domains, var, val);
        domains[var].remove(val);
        let step = self.dfs(domains);
        self.nogoods.truncate(mark);
        step
    }

    fn fail(&mut self) -> Step {
        if let Some(c) = self.cfg.cutoff {
            if self.stats.backtracks >= c {
                return Step::Abort(RunEnd::Cutoff);
            }
        }
        self.stats.backtracks += 1;
        Step::Done
    }

    fn propagate(&mut self, domains: &mut [Domain]) -> Result<(), Wipeout> {
        if domains.iter().any(|d| d.is_empty()) {
            return Err(Wipeout);
        }
        let offset = self.csp.value_offset;
        loop {
            let mut changed = false;
            for c in &self.csp.constraints {
                changed |= c.propagate(domains, offset)?;
            }
            changed |= self.apply_nogoods(domains)?;
            changed |= self.apply_bound(domains)?;
            if !changed {
                return Ok(());
            }
        }
    }

    fn apply_nogoods(&self, domains: &mut [Domain]) -> Result<bool, Wipeout> {
        let mut changed = false;
        for ng in &self.nogoods {
            let active = ng
                .cond
                .iter()
                .all(|&(var, val)| domains[var].fixed_value() == Some(val));
            if active {
                let (var, val) = ng.forbid;
                changed |= domains[var].remove(val);
                if domains[var].is_empty() {
                    return Err(Wipeout);
                }
            }
        }
        Ok(changed)
    }

    /// Prunes toward `objective < bound`.
    fn apply_bound(&self, domains: &mut [Domain]) -> Result<bool, Wipeout> {
        let (Some(bound), Some(objective)) = (self.bound, self.csp.objective.as_ref()) else {
            return Ok(false);
        };
        match objective {
            Objective::Variable(v) => {
                let changed = domains[*v].remove_above(bound - 1 - self.csp.value_offset);
                if domains[*v].is_empty() {
                    return Err(Wipeout);
                }
                Ok(changed)
            }
            Objective::CountDistinct(vars) => {
                let mut used = 0u64;
                let mut unfixed = Vec::new();
                for &v in vars {
                    match domains[v].fixed_value() {
                        Some(k) => used |= 1 << k,
                        None => unfixed.push(v),
                    }
                }
                let k = used.count_ones() as i64;
                // The decided variables alone already use k distinct
                // values, a lower bound on the final count.
                if k >= bound {
                    return Err(Wipeout);
                }
                let mut changed = false;
                if k == bound - 1 {
                    let mask = Domain::from_bits(used);
                    for &v in &unfixed {
                        changed |= domains[v].intersect(mask);
                        if domains[v].is_empty() {
                            return Err(Wipeout);
                        }
                    }
                }
                Ok(changed)
            }
        }
    }

    fn post_nogoods(&mut self, domains: &[Domain], var: usize, val: usize) {
        let cfg = self.cfg;
        for g in &cfg.generators {
            let forbid = (g.var_perm.apply(var), g.val_perm.apply(val));
            if !domains[forbid.0].contains(forbid.1) {
                continue;
            }
            let mut cond = Vec::with_capacity(self.decisions.len());
            let mut dead = false;
            for &(dv, dk) in &self.decisions {
                let pair = (g.var_perm.apply(dv), g.val_perm.apply(dk));
                // Domains only shrink down the subtree, so a pair that is
                // impossible here keeps this nogood inert forever.
                if !domains[pair.0].contains(pair.1) {
                    dead = true;
                    break;
                }
                cond.push(pair);
            }
            if !dead {
                self.nogoods.push(Nogood { cond, forbid });
            }
        }
    }

    fn choose_var(&self, domains: &[Domain]) -> usize {
        match self.cfg.var_heuristic {
            VarHeuristic::FixedOrder => domains
                .iter()
                .position(|d| d.fixed_value().is_none())
                .expect("some variable undecided"),
            VarHeuristic::MinDomain => domains
                .iter()
                .enumerate()
                .filter(|(_, d)| d.fixed_value().is_none())
                .min_by_key(|(i, d)| (d.len(), *i))
                .expect("some variable undecided")
                .0,
        }
    }

    fn choose_val(&mut self, domain: &Domain) -> usize {
        match self.rng.as_mut() {
            None => domain.min().expect("nonempty domain"),
            Some(rng) => {
                let vals: Vec<usize> = domain.iter().collect();
                vals[rng.gen_range(0..vals.len())]
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::{Constraint, View};
    use crate::perm::Permutation;
    use std::time::Duration;

    fn chain_csp() -> Csp {
        let mut csp = Csp::new(3, 5, 0);
        csp.constraints
            .push(Constraint::Less(View::of_var(0), View::of_var(1)));
        csp.constraints
            .push(Constraint::Less(View::of_var(1), View::of_var(2)));
        csp
    }

    fn alldiff_csp(n: usize) -> Csp {
        let mut csp = Csp::new(n, n, 0);
        csp.constraints
            .push(Constraint::AllDifferent((0..n).map(View::of_var).collect()));
        csp
    }

    #[test]
    fn solve_finds_lex_least_solution() {
        let res = solve(&chain_csp(), &SearchConfig::default());
        assert_eq!(res.outcome, Outcome::Solution(Assignment(vec![0, 1, 2])));
        assert!(res.stats.backtracks <= res.stats.nodes);
    }

    #[test]
    fn enumerate_is_complete_and_limit_stops_early() {
        let res = enumerate(&alldiff_csp(3), &SearchConfig::default(), None);
        assert_eq!(res.solutions.len(), 6);
        assert!(res.complete);
        assert_eq!(res.stats.solutions, 6);

        let res = enumerate(&alldiff_csp(3), &SearchConfig::default(), Some(4));
        assert_eq!(res.solutions.len(), 4);
        assert!(!res.complete);
    }

    #[test]
    fn infeasible_is_exhausted_and_cutoff_caps_backtracks() {
        // 4 variables, 3 values, all different: impossible.
        let mut csp = Csp::new(4, 3, 0);
        csp.constraints
            .push(Constraint::AllDifferent((0..4).map(View::of_var).collect()));
        let full = solve(&csp, &SearchConfig::default());
        assert_eq!(full.outcome, Outcome::Exhausted);
        let needed = full.stats.backtracks;
        assert!(needed >= 2);

        for cutoff in [0u64, 1, needed - 1] {
            let res = solve(
                &csp,
                &SearchConfig {
                    cutoff: Some(cutoff),
                    ..SearchConfig::default()
                },
            );
            assert_eq!(res.outcome, Outcome::CutoffReached);
            // An aborted run consumes exactly its cutoff.
            assert_eq!(res.stats.backtracks, cutoff);
        }

        let res = solve(
            &csp,
            &SearchConfig {
                cutoff: Some(needed),
                ..SearchConfig::default()
            },
        );
        assert_eq!(res.outcome, Outcome::Exhausted);
    }

    #[test]
    fn root_wipeout_counts_one_backtrack() {
        let mut csp = Csp::new(1, 3, 0);
        csp.constraints
            .push(Constraint::Less(View::of_var(0), View::of_var(0)));
        let res = solve(&csp, &SearchConfig::default());
        assert_eq!(res.outcome, Outcome::Exhausted);
        assert_eq!(res.stats.nodes, 1);
        assert_eq!(res.stats.backtracks, 1);
    }

    #[test]
    fn random_value_order_is_deterministic_per_seed() {
        let cfg = |seed| SearchConfig {
            val_heuristic: ValHeuristic::RandomOrder(seed),
            ..SearchConfig::default()
        };
        let a = solve(&alldiff_csp(5), &cfg(7));
        let b = solve(&alldiff_csp(5), &cfg(7));
        assert_eq!(a.outcome, b.outcome);
        assert_eq!(a.stats.nodes, b.stats.nodes);
        let seeds_differ = (0..20).any(|s| solve(&alldiff_csp(5), &cfg(s)).outcome != a.outcome);
        assert!(seeds_differ, "20 seeds all produced the same permutation");
    }

    #[test]
    fn min_domain_agrees_with_fixed_order_on_solution_sets() {
        let mut csp = alldiff_csp(4);
        csp.domains[2].remove(0);
        csp.domains[2].remove(1);
        let fixed = enumerate(&csp, &SearchConfig::default(), None);
        let mindom = enumerate(
            &csp,
            &SearchConfig {
                var_heuristic: VarHeuristic::MinDomain,
                ..SearchConfig::default()
            },
            None,
        );
        let mut a = fixed.solutions.clone();
        let mut b = mindom.solutions.clone();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert!(fixed.complete && mindom.complete);
    }

    #[test]
    fn symmetric_refutation_keeps_one_representative_per_class() {
        // Two interchangeable variables over two values.
        let csp = Csp::new(2, 2, 0);
        let swap = Symmetry::var_only(
            Permutation::from_image(vec![1, 0]).unwrap(),
            2,
            0,
        );
        let plain = enumerate(&csp, &SearchConfig::default(), None);
        assert_eq!(plain.solutions.len(), 4);

        let cfg = SearchConfig {
            generators: vec![swap],
            ..SearchConfig::default()
        };
        let reduced = enumerate(&csp, &cfg, None);
        let mut sols = reduced.solutions.clone();
        sols.sort();
        assert_eq!(
            sols,
            vec![
                Assignment(vec![0, 0]),
                Assignment(vec![0, 1]),
                Assignment(vec![1, 1]),
            ]
        );
    }

    #[test]
    fn symmetric_refutation_never_loses_satisfiability() {
        // Value reversal symmetry of a parity-style problem.
        let mut csp = Csp::new(3, 4, 0);
        csp.constraints.push(Constraint::AllDifferent(
            (0..3).map(View::of_var).collect(),
        ));
        let rev = Symmetry::val_only(3, Permutation::reversal(4), 0);
        let cfg = SearchConfig {
            generators: vec![rev.clone()],
            ..SearchConfig::default()
        };
        let res = solve(&csp, &cfg);
        assert!(matches!(res.outcome, Outcome::Solution(_)));
        // Every returned representative really solves the problem.
        let reps = enumerate(&csp, &cfg, None);
        for s in &reps.solutions {
            assert!(csp.is_solution(s));
        }
        // Each dropped solution is a symmetric image of a kept one.
        let all = enumerate(&csp, &SearchConfig::default(), None);
        for s in &all.solutions {
            let image = rev.apply_assignment(s);
            assert!(
                reps.solutions.contains(s) || reps.solutions.contains(&image),
                "{s:?} lost without a kept image"
            );
        }
    }

    #[test]
    fn optimize_variable_objective() {
        let mut csp = chain_csp();
        csp.objective = Some(Objective::Variable(2));
        let res = optimize(&csp, &SearchConfig::default(), None);
        let (_, val) = res.best.unwrap();
        assert_eq!(val, 2);
        assert!(res.proved_optimal);
        assert!(!res.timed_out);
    }

    #[test]
    fn optimize_count_distinct_objective() {
        // A path x0-x1-x2 needs two colors.
        let mut csp = Csp::new(3, 3, 0);
        for (u, v) in [(0, 1), (1, 2)] {
            csp.constraints.push(Constraint::Occurrence {
                views: vec![View::of_var(u), View::of_var(v)],
                value: -1,
                count: 0,
            });
        }
        // Difference via a cleaner constraint: pairwise all-different.
        csp.constraints.clear();
        for (u, v) in [(0, 1), (1, 2)] {
            csp.constraints
                .push(Constraint::AllDifferent(vec![View::of_var(u), View::of_var(v)]));
        }
        csp.objective = Some(Objective::CountDistinct(vec![0, 1, 2]));
        let res = optimize(&csp, &SearchConfig::default(), None);
        let (asg, val) = res.best.unwrap();
        assert_eq!(val, 2);
        assert!(res.proved_optimal);
        assert_eq!(csp.objective_value(&asg), Some(2));

        // A seeded exclusive bound of 2 leaves nothing to find.
        let res = optimize(&csp, &SearchConfig::default(), Some(2));
        assert!(res.best.is_none());
        assert!(res.proved_optimal);
    }

    #[test]
    fn past_deadline_times_out() {
        let cfg = SearchConfig {
            deadline: Some(Instant::now() - Duration::from_millis(1)),
            ..SearchConfig::default()
        };
        let res = solve(&alldiff_csp(6), &cfg);
        assert_eq!(res.outcome, Outcome::TimedOut);
    }

    #[test]
    fn leaf_check_rejects_unpropagated_violations() {
        // Implication with a guard shape the propagator does not reason
        // about; the leaf evaluation must still reject violating stores.
        let mut csp = Csp::new(2, 2, 0);
        csp.constraints.push(Constraint::Implies {
            guard: Box::new(Constraint::AllDifferent(vec![
                View::of_var(0),
                View::of_var(1),
            ])),
            body: Box::new(Constraint::Less(View::of_var(0), View::of_var(1))),
        });
        let res = enumerate(&csp, &SearchConfig::default(), None);
        let mut sols = res.solutions.clone();
        sols.sort();
        assert_eq!(
            sols,
            vec![
                Assignment(vec![0, 0]),
                Assignment(vec![0, 1]),
                Assignment(vec![1, 1]),
            ]
        );
    }
}
