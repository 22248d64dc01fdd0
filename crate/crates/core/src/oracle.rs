//! Ground truth by brute force. Everything here is deliberately separate
//! from the propagation engine: solutions come from nested loops with
//! plain constraint tests, so the two code paths can only agree if both
//! are right. On top of the enumerator sit orbit partitioning and the
//! empirical checks of every claimed property of transformed constraint
//! sets.

use std::collections::HashMap;

use thiserror::Error;

use crate::constraints::Constraint;
use crate::csp::{Assignment, Csp};
use crate::models::{GraphInstance, ModelBundle};
use crate::perm::{GroupError, GroupStructure, Permutation, Symmetry};
use crate::symbreak::{apply_to_constraints, Classification};

/// Default cap on explored assignments per enumeration.
pub const DEFAULT_LEAF_BOUND: u64 = 100_000_000;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum OracleError {
    #[error("explored {bound} assignments without finishing")]
    BoundExceeded { bound: u64 },
    #[error(transparent)]
    Group(#[from] GroupError),
}

struct Gen<'a> {
    csp: &'a Csp,
    checks: &'a [Constraint],
    order: &'a [usize],
    schedule: &'a [Vec<usize>],
    bound: u64,
    nodes: u64,
    scratch: Assignment,
    out: Vec<Assignment>,
}

impl Gen<'_> {
    fn dfs(&mut self, depth: usize) -> Result<(), OracleError> {
        if depth == self.order.len() {
            self.out.push(self.scratch.clone());
            return Ok(());
        }
        let var = self.order[depth];
        let domain = self.csp.domains[var];
        for val in domain.iter() {
            self.nodes += 1;
            if self.nodes > self.bound {
                return Err(OracleError::BoundExceeded { bound: self.bound });
            }
            self.scratch.0[var] = val as u8;
            let ok = self.schedule[depth]
                .iter()
                .all(|&ci| self.checks[ci].eval(&self.scratch, self.csp.value_offset));
            if ok {
                self.dfs(depth + 1)?;
            }
        }
        Ok(())
    }
}

/// Every solution of `csp`, found generate-and-test style: nested loops
/// over the variables in a static order, testing each constraint the
/// moment its last variable receives a value. No propagation. Wide
/// `AllDifferent`s are tested as their pairwise decomposition so clashes
/// surface as early as possible, and the variable order greedily finishes
/// the constraint closest to fully assigned. Every value tried counts
/// against `bound`. The result is sorted.
pub fn enumerate_solutions(csp: &Csp, bound: u64) -> Result<Vec<Assignment>, OracleError> {
    let n = csp.n_vars();
    if n == 0 {
        return Ok(vec![Assignment(Vec::new())]);
    }
    let mut checks: Vec<Constraint> = Vec::new();
    for c in &csp.constraints {
        match c {
            Constraint::AllDifferent(views) if views.len() > 2 => {
                for i in 0..views.len() {
                    for j in i + 1..views.len() {
                        checks.push(Constraint::AllDifferent(vec![
                            views[i].clone(),
                            views[j].clone(),
                        ]));
                    }
                }
            }
            other => checks.push(other.clone()),
        }
    }
    let scopes: Vec<Vec<usize>> = checks
        .iter()
        .map(|c| {
            let mut s: Vec<usize> = c.views().iter().map(|v| v.var).collect();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for _ in 0..n {
        let mut best: Option<(usize, usize)> = None;
        for s in &scopes {
            let rem = s.iter().filter(|&&v| !placed[v]).count();
            if rem == 0 {
                continue;
            }
            let var = *s.iter().find(|&&v| !placed[v]).unwrap();
            if best.is_none_or(|b| (rem, var) < b) {
                best = Some((rem, var));
            }
        }
        let var = match best {
            Some((_, var)) => var,
            None => (0..n).find(|&v| !placed[v]).unwrap(),
        };
        placed[var] = true;
        order.push(var);
    }
    let mut pos_of = vec![0usize; n];
    for (k, &v) in order.iter().enumerate() {
        pos_of[v] = k;
    }
    let mut schedule: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (ci, s) in scopes.iter().enumerate() {
        match s.iter().map(|&v| pos_of[v]).max() {
            Some(last) => schedule[last].push(ci),
            // no variables at all: the constraint is a constant
            None => {
                if !checks[ci].eval(&Assignment(vec![0; n]), csp.value_offset) {
                    return Ok(Vec::new());
                }
            }
        }
    }
    let mut gen = Gen {
        csp,
        checks: &checks,
        order: &order,
        schedule: &schedule,
        bound,
        nodes: 0,
        scratch: Assignment(vec![0u8; n]),
        out: Vec::new(),
    };
    gen.dfs(0)?;
    let mut out = gen.out;
    out.sort_unstable();
    Ok(out)
}

/// Orbits of `solutions` under the group: each orbit sorted, orbits
/// ordered by least member, so the result is independent of input order.
/// An image that falls outside the input set is simply absent from the
/// orbit, which keeps this total even for corrupted groups.
pub fn orbit_partition(
    solutions: &[Assignment],
    group: &crate::perm::SymmetryGroup,
    group_bound: usize,
) -> Result<Vec<Vec<Assignment>>, OracleError> {
    let elements = group.enumerate(group_bound)?;
    let mut sols: Vec<Assignment> = solutions.to_vec();
    sols.sort_unstable();
    sols.dedup();
    let index: HashMap<&Assignment, usize> = sols.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut visited = vec![false; sols.len()];
    let mut orbits = Vec::new();
    for i in 0..sols.len() {
        if visited[i] {
            continue;
        }
        let mut members = vec![i];
        for g in &elements {
            let img = g.apply_assignment(&sols[i]);
            if let Some(&j) = index.get(&img) {
                if !visited[j] {
                    visited[j] = true;
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        members.dedup();
        orbits.push(members.into_iter().map(|j| sols[j].clone()).collect());
    }
    Ok(orbits)
}

/// Orbit-level verdict for an admitted-solution mask. Precedence when
/// orbits are degenerate: rejecting nothing reads as not breaking even if
/// every orbit is a singleton.
pub fn classify_on_orbits(admitted: &[bool], orbits: &[Vec<usize>]) -> Classification {
    let mut all_kept = true;
    let mut all_single = true;
    let mut sound = true;
    for orbit in orbits {
        let kept = orbit.iter().filter(|&&i| admitted[i]).count();
        if kept == 0 {
            sound = false;
        }
        if kept != orbit.len() {
            all_kept = false;
        }
        if kept != 1 {
            all_single = false;
        }
    }
    if all_kept {
        Classification::DoesNotBreak
    } else if !sound {
        Classification::Unsound
    } else if all_single {
        Classification::Eliminates
    } else {
        Classification::BreaksNotEliminates
    }
}

/// Smallest color count that properly colors the graph, by plain branch
/// enumeration capped at one fresh color per step (sound for existence).
pub fn min_colors(g: &GraphInstance) -> usize {
    if g.n == 0 {
        return 0;
    }
    let mut earlier = vec![Vec::new(); g.n];
    for &(u, w) in &g.edges {
        earlier[w].push(u);
    }
    fn go(earlier: &[Vec<usize>], colors: &mut [usize], v: usize, k: usize, used: usize) -> bool {
        if v == earlier.len() {
            return true;
        }
        for c in 0..(used + 1).min(k) {
            if earlier[v].iter().any(|&u| colors[u] == c) {
                continue;
            }
            colors[v] = c;
            if go(earlier, colors, v + 1, k, used.max(c + 1)) {
                return true;
            }
        }
        false
    }
    for k in 1..g.n {
        if go(&earlier, &mut vec![0; g.n], 0, k, 0) {
            return k;
        }
    }
    g.n
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckKind {
    /// The model and each of its transforms are equisatisfiable.
    Satisfiability,
    /// Solutions of a transformed model are exactly the images of the
    /// original solutions.
    SolutionImage,
    /// Each group element maps the solution set onto itself.
    FixedSolutions,
    /// The group is still a symmetry group of every transformed model.
    GroupPreservation,
    /// Every transformed set keeps at least one solution per orbit.
    Soundness,
    /// If the base set keeps exactly one solution per orbit, so does every
    /// transformed set.
    Completeness,
    /// Every solution is admitted by some transformed set.
    Representatives,
    /// The orbit-level classification of the set survives transformation.
    BreaksEliminates,
    /// Admission commutes with each element's action, and every element the
    /// set breaks changes the admitted subset.
    NoSymmetryInGroup,
}

pub const ALL_CHECKS: [CheckKind; 9] = [
    CheckKind::Satisfiability,
    CheckKind::SolutionImage,
    CheckKind::FixedSolutions,
    CheckKind::GroupPreservation,
    CheckKind::Soundness,
    CheckKind::Completeness,
    CheckKind::Representatives,
    CheckKind::BreaksEliminates,
    CheckKind::NoSymmetryInGroup,
];

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Satisfiability => "satisfiability",
            CheckKind::SolutionImage => "solution-image",
            CheckKind::FixedSolutions => "fixed-solutions",
            CheckKind::GroupPreservation => "group-preservation",
            CheckKind::Soundness => "soundness",
            CheckKind::Completeness => "completeness",
            CheckKind::Representatives => "representatives",
            CheckKind::BreaksEliminates => "breaks-eliminates",
            CheckKind::NoSymmetryInGroup => "no-symmetry-in-group",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub pass: bool,
    pub detail: String,
    /// Offending (element label, solution) for a failed check.
    pub counterexample: Option<(String, Assignment)>,
}

impl CheckResult {
    fn pass(detail: impl Into<String>) -> CheckResult {
        CheckResult {
            pass: true,
            detail: detail.into(),
            counterexample: None,
        }
    }

    fn fail(detail: impl Into<String>, label: &str, a: &Assignment) -> CheckResult {
        CheckResult {
            pass: false,
            detail: detail.into(),
            counterexample: Some((label.to_string(), a.clone())),
        }
    }
}

/// Exhaustive verification state for one model: the full solution set, the
/// enumerated group, the orbit partition, and per-element survivor masks of
/// the transformed symmetry-breaking set.
pub struct Verifier {
    name: String,
    solutions: Vec<Assignment>,
    elements: Vec<(String, Symmetry)>,
    orbits: Vec<Vec<usize>>,
    /// `maps[e][i]`: index of element `e`'s image of solution `i`, if that
    /// image is itself a solution.
    maps: Vec<Option<Vec<usize>>>,
    /// First missing image per element, for counterexamples.
    misses: Vec<Option<usize>>,
    survivors: Vec<Vec<bool>>,
    /// Independent enumeration of each transformed model, shared between
    /// elements whose transformed constraint lists coincide.
    transformed_sols: Vec<usize>,
    enums: Vec<Vec<Assignment>>,
    identity_at: usize,
}

impl Verifier {
    pub fn new(
        bundle: &ModelBundle,
        leaf_bound: u64,
        group_bound: usize,
    ) -> Result<Verifier, OracleError> {
        let csp = &bundle.csp;
        let solutions = enumerate_solutions(csp, leaf_bound)?;
        let index: HashMap<&Assignment, usize> = solutions
            .iter()
            .enumerate()
            .map(|(i, a)| (a, i))
            .collect();
        let elements: Vec<(String, Symmetry)> = bundle
            .group
            .enumerate(group_bound)?
            .into_iter()
            .map(|g| (bundle.group.label_of(&g), g))
            .collect();
        let identity_at = elements
            .iter()
            .position(|(_, g)| g.is_identity())
            .expect("a group contains the identity");
        let mut maps = Vec::with_capacity(elements.len());
        let mut misses = Vec::with_capacity(elements.len());
        for (_, g) in &elements {
            let mut map = Vec::with_capacity(solutions.len());
            let mut miss = None;
            for (i, a) in solutions.iter().enumerate() {
                match index.get(&g.apply_assignment(a)) {
                    Some(&j) => map.push(j),
                    None => {
                        miss = Some(i);
                        break;
                    }
                }
            }
            misses.push(miss);
            maps.push(if miss.is_none() { Some(map) } else { None });
        }
        let mut visited = vec![false; solutions.len()];
        let mut orbits = Vec::new();
        for i in 0..solutions.len() {
            if visited[i] {
                continue;
            }
            let mut members = vec![i];
            for (_, g) in &elements {
                if let Some(&j) = index.get(&g.apply_assignment(&solutions[i])) {
                    if !visited[j] {
                        visited[j] = true;
                        members.push(j);
                    }
                }
            }
            members.sort_unstable();
            members.dedup();
            orbits.push(members);
        }
        let mut survivors = Vec::with_capacity(elements.len());
        for (_, g) in &elements {
            let moved = apply_to_constraints(g, &bundle.sbc.constraints);
            survivors.push(
                solutions
                    .iter()
                    .map(|a| moved.iter().all(|c| c.eval(a, csp.value_offset)))
                    .collect(),
            );
        }
        let mut keys: HashMap<Vec<Constraint>, usize> = HashMap::new();
        let mut enums: Vec<Vec<Assignment>> = Vec::new();
        let mut transformed_sols = Vec::with_capacity(elements.len());
        for (_, g) in &elements {
            let mut moved = apply_to_constraints(g, &csp.constraints);
            moved.sort_unstable();
            let next = enums.len();
            match keys.entry(moved) {
                std::collections::hash_map::Entry::Occupied(e) => transformed_sols.push(*e.get()),
                std::collections::hash_map::Entry::Vacant(e) => {
                    let mut t = csp.clone();
                    t.constraints = apply_to_constraints(g, &csp.constraints);
                    enums.push(enumerate_solutions(&t, leaf_bound)?);
                    e.insert(next);
                    transformed_sols.push(next);
                }
            }
        }
        Ok(Verifier {
            name: format!("{} {}", bundle.name, bundle.params),
            solutions,
            elements,
            orbits,
            maps,
            misses,
            survivors,
            transformed_sols,
            enums,
            identity_at,
        })
    }

    pub fn solutions(&self) -> &[Assignment] {
        &self.solutions
    }

    pub fn elements(&self) -> &[(String, Symmetry)] {
        &self.elements
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// Solution indices admitted by the set transformed by the named
    /// element.
    pub fn survivors_of(&self, label: &str) -> Option<Vec<usize>> {
        let e = self.elements.iter().position(|(name, _)| name == label)?;
        Some(
            (0..self.solutions.len())
                .filter(|&i| self.survivors[e][i])
                .collect(),
        )
    }

    fn base_classification(&self) -> Classification {
        classify_on_orbits(&self.survivors[self.identity_at], &self.orbits)
    }

    pub fn check(&self, kind: CheckKind) -> CheckResult {
        match kind {
            CheckKind::Satisfiability => {
                let base_sat = !self.solutions.is_empty();
                for (e, (label, _)) in self.elements.iter().enumerate() {
                    let sat = !self.enums[self.transformed_sols[e]].is_empty();
                    if sat != base_sat {
                        return CheckResult {
                            pass: false,
                            detail: format!(
                                "transform by {label} changes satisfiability ({base_sat} to {sat})"
                            ),
                            counterexample: None,
                        };
                    }
                }
                CheckResult::pass(format!(
                    "all {} transformed models agree (satisfiable: {base_sat})",
                    self.elements.len()
                ))
            }
            CheckKind::SolutionImage => {
                for (e, (label, g)) in self.elements.iter().enumerate() {
                    let mut image: Vec<Assignment> = self
                        .solutions
                        .iter()
                        .map(|a| g.apply_assignment(a))
                        .collect();
                    image.sort_unstable();
                    let actual = &self.enums[self.transformed_sols[e]];
                    if &image != actual {
                        let bad = image
                            .iter()
                            .find(|a| !actual.contains(a))
                            .or_else(|| actual.iter().find(|a| !image.contains(a)))
                            .unwrap();
                        return CheckResult::fail(
                            format!("solution set of the {label}-transform is not the {label}-image"),
                            label,
                            bad,
                        );
                    }
                }
                CheckResult::pass("transformed solution sets are exactly the image sets")
            }
            CheckKind::FixedSolutions => {
                for (e, (label, _)) in self.elements.iter().enumerate() {
                    if let Some(i) = self.misses[e] {
                        return CheckResult::fail(
                            format!("{label} maps a solution outside the solution set"),
                            label,
                            &self.solutions[i],
                        );
                    }
                }
                CheckResult::pass(format!(
                    "{} solutions closed under all {} elements",
                    self.solutions.len(),
                    self.elements.len()
                ))
            }
            CheckKind::GroupPreservation => {
                for (e, (label, _)) in self.elements.iter().enumerate() {
                    if self.enums[self.transformed_sols[e]] != self.solutions {
                        let actual = &self.enums[self.transformed_sols[e]];
                        let bad = self
                            .solutions
                            .iter()
                            .find(|a| !actual.contains(a))
                            .or_else(|| actual.iter().find(|a| !self.solutions.contains(a)))
                            .unwrap();
                        return CheckResult::fail(
                            format!("the {label}-transform has a different solution set"),
                            label,
                            bad,
                        );
                    }
                }
                for (e, (label, _)) in self.elements.iter().enumerate() {
                    if let Some(i) = self.misses[e] {
                        return CheckResult::fail(
                            format!("{label} is not a symmetry of the transformed models"),
                            label,
                            &self.solutions[i],
                        );
                    }
                }
                CheckResult::pass(
                    "every transformed model keeps the solution set each element maps onto itself",
                )
            }
            CheckKind::Soundness => {
                for (e, (label, _)) in self.elements.iter().enumerate() {
                    for orbit in &self.orbits {
                        if !orbit.iter().any(|&i| self.survivors[e][i]) {
                            return CheckResult::fail(
                                format!("set transformed by {label} empties an orbit"),
                                label,
                                &self.solutions[orbit[0]],
                            );
                        }
                    }
                }
                CheckResult::pass(format!(
                    "each of {} transformed sets keeps a solution in all {} orbits",
                    self.elements.len(),
                    self.orbits.len()
                ))
            }
            CheckKind::Completeness => {
                if self.base_classification() != Classification::Eliminates {
                    return CheckResult::pass(
                        "base set does not keep exactly one solution per orbit; nothing to preserve",
                    );
                }
                for (e, (label, _)) in self.elements.iter().enumerate() {
                    let c = classify_on_orbits(&self.survivors[e], &self.orbits);
                    if c != Classification::Eliminates {
                        let orbit = self
                            .orbits
                            .iter()
                            .find(|o| o.iter().filter(|&&i| self.survivors[e][i]).count() != 1)
                            .unwrap();
                        return CheckResult::fail(
                            format!("set transformed by {label} no longer eliminates ({c:?})"),
                            label,
                            &self.solutions[orbit[0]],
                        );
                    }
                }
                CheckResult::pass("every transformed set keeps exactly one solution per orbit")
            }
            CheckKind::Representatives => {
                for (i, a) in self.solutions.iter().enumerate() {
                    if !(0..self.elements.len()).any(|e| self.survivors[e][i]) {
                        return CheckResult::fail(
                            "a solution is admitted by no transformed set",
                            "<none>",
                            a,
                        );
                    }
                }
                CheckResult::pass(format!(
                    "each of {} solutions is admitted by some transformed set",
                    self.solutions.len()
                ))
            }
            CheckKind::BreaksEliminates => {
                let base = self.base_classification();
                for (e, (label, _)) in self.elements.iter().enumerate() {
                    let c = classify_on_orbits(&self.survivors[e], &self.orbits);
                    if c != base {
                        return CheckResult {
                            pass: false,
                            detail: format!(
                                "classification changes under {label}: {base:?} to {c:?}"
                            ),
                            counterexample: Some((label.clone(), self.solutions[0].clone())),
                        };
                    }
                }
                CheckResult::pass(format!("classification {base:?} stable across the group"))
            }
            CheckKind::NoSymmetryInGroup => {
                if self.elements.len() == 1 {
                    return CheckResult::pass("group is trivial; holds vacuously");
                }
                let base = self.survivors[self.identity_at].clone();
                let mut broken = 0usize;
                let mut unbroken = 0usize;
                for (e, (label, g)) in self.elements.iter().enumerate() {
                    if g.is_identity() {
                        continue;
                    }
                    let Some(map) = &self.maps[e] else {
                        let i = self.misses[e].unwrap_or(0);
                        return CheckResult::fail(
                            format!("{label} maps some solution outside the solution set"),
                            label,
                            &self.solutions[i],
                        );
                    };
                    // admission by the transformed set must commute with the
                    // element's action on solutions
                    for i in 0..base.len() {
                        if self.survivors[e][map[i]] != base[i] {
                            return CheckResult::fail(
                                format!("admission under {label} disagrees with its action"),
                                label,
                                &self.solutions[i],
                            );
                        }
                    }
                    // an element the set breaks must change the admitted subset
                    if (0..base.len()).any(|i| base[i] && !base[map[i]]) {
                        broken += 1;
                        if self.survivors[e] == base {
                            let i = base.iter().position(|&s| s).unwrap();
                            return CheckResult::fail(
                                format!("{label} is broken yet leaves the set unchanged"),
                                label,
                                &self.solutions[i],
                            );
                        }
                    } else {
                        unbroken += 1;
                    }
                }
                CheckResult::pass(format!(
                    "{broken} broken element(s) each alter the admitted subset; {unbroken} unbroken"
                ))
            }
        }
    }

    pub fn check_all(&self) -> Vec<(CheckKind, CheckResult)> {
        ALL_CHECKS.iter().map(|&k| (k, self.check(k))).collect()
    }

    /// Structured text report over all checks.
    pub fn report(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("instance: {}\n", self.name));
        out.push_str(&format!("group size: {}\n", self.elements.len()));
        out.push_str(&format!("solutions: {}\n", self.solutions.len()));
        out.push_str(&format!("orbits: {}\n", self.orbits.len()));
        let mut all = true;
        for (kind, res) in self.check_all() {
            let verdict = if res.pass { "pass" } else { "fail" };
            out.push_str(&format!("{}: {} ({})\n", kind.name(), verdict, res.detail));
            all &= res.pass;
        }
        out.push_str(&format!("overall: {}\n", if all { "pass" } else { "fail" }));
        out
    }

    pub fn all_pass(&self) -> bool {
        self.check_all().iter().all(|(_, r)| r.pass)
    }
}

/// Runs one named check against a model.
pub fn check_proposition(
    kind: CheckKind,
    bundle: &ModelBundle,
    leaf_bound: u64,
    group_bound: usize,
) -> Result<CheckResult, OracleError> {
    Ok(Verifier::new(bundle, leaf_bound, group_bound)?.check(kind))
}

/// Corrupts the model's group with a swap of the first and last variable,
/// which none of the shipped models admits as a symmetry. Verification is
/// expected to fail afterwards.
pub fn inject_bad_generator(bundle: &mut ModelBundle) {
    let n = bundle.csp.n_vars();
    let p = Permutation::transposition(n, 0, n - 1);
    let bad = Symmetry::var_only(p, bundle.csp.n_values, bundle.csp.value_offset);
    bundle.group.generators.push(("bad".into(), bad.clone()));
    match &mut bundle.group.structure {
        GroupStructure::Elements(els) => els.push(("bad".into(), bad)),
        other => *other = GroupStructure::Generators,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{efpa, magic_square, most_perfect_magic_square};
    use crate::perm::fixtures::{asg, SQ_A, SQ_B, SQ_C, SQ_D};
    use crate::perm::{SymmetryGroup, DEFAULT_GROUP_BOUND};
    use crate::search::{enumerate, SearchConfig};

    #[test]
    fn unconstrained_variable_has_all_assignments() {
        let csp = Csp::new(1, 2, 1);
        let sols = enumerate_solutions(&csp, 100).unwrap();
        assert_eq!(
            sols,
            vec![Assignment(vec![0]), Assignment(vec![1])]
        );
    }

    #[test]
    fn bound_is_enforced() {
        let csp = Csp::new(10, 8, 0);
        assert_eq!(
            enumerate_solutions(&csp, 1000),
            Err(OracleError::BoundExceeded { bound: 1000 })
        );
    }

    #[test]
    fn order_three_square_agrees_with_search_engine() {
        let bundle = magic_square(3).unwrap();
        let oracle = enumerate_solutions(&bundle.csp, DEFAULT_LEAF_BOUND).unwrap();
        assert_eq!(oracle.len(), 8);
        let mut engine = enumerate(&bundle.csp, &SearchConfig::default(), None).solutions;
        engine.sort_unstable();
        assert_eq!(oracle, engine);
        let orbits = orbit_partition(&oracle, &bundle.group, DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].len(), 8);
    }

    #[test]
    fn most_perfect_solutions_contain_known_squares_in_one_orbit() {
        let bundle = most_perfect_magic_square(4).unwrap();
        let sols = enumerate_solutions(&bundle.csp, DEFAULT_LEAF_BOUND).unwrap();
        assert_eq!(sols.len(), 384);
        for sq in [&SQ_A, &SQ_B, &SQ_C, &SQ_D] {
            assert!(sols.contains(&asg(&sq[..])));
        }
        let orbits = orbit_partition(&sols, &bundle.group, DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(orbits.len(), 24);
        assert!(orbits.iter().all(|o| o.len() == 16));
        let home = orbits
            .iter()
            .position(|o| o.contains(&asg(&SQ_A[..])))
            .unwrap();
        for sq in [&SQ_B, &SQ_C, &SQ_D] {
            assert!(orbits[home].contains(&asg(&sq[..])));
        }
    }

    #[test]
    fn orbit_partition_ignores_input_order_and_singleton_group() {
        let bundle = magic_square(3).unwrap();
        let sols = enumerate_solutions(&bundle.csp, DEFAULT_LEAF_BOUND).unwrap();
        let mut reversed = sols.clone();
        reversed.reverse();
        let a = orbit_partition(&sols, &bundle.group, DEFAULT_GROUP_BOUND).unwrap();
        let b = orbit_partition(&reversed, &bundle.group, DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(a, b);
        let trivial = SymmetryGroup::from_elements(
            9,
            9,
            1,
            vec![("id".into(), Symmetry::identity(9, 9, 1))],
            vec![],
        );
        let singles = orbit_partition(&sols, &trivial, DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(singles.len(), sols.len());
        assert!(singles.iter().all(|o| o.len() == 1));
    }

    #[test]
    fn classification_cases() {
        let orbits = vec![vec![0, 1], vec![2, 3]];
        assert_eq!(
            classify_on_orbits(&[true, true, true, true], &orbits),
            Classification::DoesNotBreak
        );
        assert_eq!(
            classify_on_orbits(&[true, false, false, true], &orbits),
            Classification::Eliminates
        );
        assert_eq!(
            classify_on_orbits(&[true, true, true, false], &orbits),
            Classification::BreaksNotEliminates
        );
        assert_eq!(
            classify_on_orbits(&[false, false, true, true], &orbits),
            Classification::Unsound
        );
        assert_eq!(classify_on_orbits(&[], &[]), Classification::DoesNotBreak);
    }

    #[test]
    fn minimum_colors_on_small_graphs() {
        let triangle = GraphInstance {
            n: 3,
            edges: vec![(0, 1), (0, 2), (1, 2)],
            blocks: vec![vec![0, 1, 2]],
        };
        assert_eq!(min_colors(&triangle), 3);
        let path = GraphInstance {
            n: 3,
            edges: vec![(0, 1), (1, 2)],
            blocks: vec![vec![0], vec![1], vec![2]],
        };
        assert_eq!(min_colors(&path), 2);
        let edgeless = GraphInstance {
            n: 4,
            edges: vec![],
            blocks: vec![vec![0, 1, 2, 3]],
        };
        assert_eq!(min_colors(&edgeless), 1);
    }

    #[test]
    fn verifier_passes_on_order_three_square() {
        let bundle = magic_square(3).unwrap();
        let v = Verifier::new(&bundle, DEFAULT_LEAF_BOUND, DEFAULT_GROUP_BOUND).unwrap();
        for (kind, res) in v.check_all() {
            assert!(res.pass, "{} failed: {}", kind.name(), res.detail);
        }
        assert_eq!(v.survivors_of("id").unwrap().len(), 1);
        let report = v.report();
        assert!(report.contains("group size: 8"));
        assert!(report.contains("overall: pass"));
    }

    #[test]
    fn verifier_passes_on_small_code() {
        let bundle = efpa(3, 2, 2, 2).unwrap();
        let v = Verifier::new(&bundle, DEFAULT_LEAF_BOUND, DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(v.elements().len(), 144);
        for (kind, res) in v.check_all() {
            assert!(res.pass, "{} failed: {}", kind.name(), res.detail);
        }
    }

    #[test]
    fn corrupted_group_is_caught_with_counterexample() {
        let mut bundle = magic_square(3).unwrap();
        inject_bad_generator(&mut bundle);
        let v = Verifier::new(&bundle, DEFAULT_LEAF_BOUND, DEFAULT_GROUP_BOUND).unwrap();
        let fixed = v.check(CheckKind::FixedSolutions);
        assert!(!fixed.pass);
        let (label, witness) = fixed.counterexample.unwrap();
        assert_eq!(label, "bad");
        assert!(bundle.csp.is_solution(&witness));
        assert!(!v.check(CheckKind::GroupPreservation).pass);
        assert!(v.report().contains("overall: fail"));
    }

}
