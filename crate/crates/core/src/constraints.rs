//! Constraint catalog: evaluation on total assignments and sound domain
//! propagation.
//!
//! Constraints range over [`View`]s rather than bare variables. A view
//! wraps a variable with a value map, so `x`, `17 - x` and "x with its
//! values renamed by a permutation" are all usable wherever a variable is.
//! That keeps the catalog closed under the symmetry transformations in
//! [`crate::symbreak`]: pushing a value permutation through a constraint
//! only rewrites maps, never the constraint shape.
//!
//! Propagators are sound (they never remove a value that appears in some
//! solution of their constraint) but deliberately not all domain-complete;
//! search handles the rest.

use crate::csp::{Assignment, Domain};

/// Search hit an empty domain: the current subproblem has no solution.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Wipeout;

/// How a view turns the internal value of its variable into the external
/// integer the constraint sees.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ValueMap {
    /// External value unchanged: `offset + k`.
    Identity,
    /// `a · (offset + k) + b` with `a` in `{-1, 1}`.
    Affine { a: i64, b: i64 },
    /// Arbitrary per-value table, indexed by internal value.
    Table(Vec<i64>),
}

impl ValueMap {
    pub fn eval(&self, k: usize, offset: i64) -> i64 {
        match self {
            ValueMap::Identity => offset + k as i64,
            ValueMap::Affine { a, b } => a * (offset + k as i64) + b,
            ValueMap::Table(t) => t[k],
        }
    }

    /// Collapses a table that happens to be an identity or affine map back
    /// to the structured form.
    pub fn normalize(self, offset: i64) -> ValueMap {
        let ValueMap::Table(t) = &self else {
            if let ValueMap::Affine { a: 1, b: 0 } = self {
                return ValueMap::Identity;
            }
            return self;
        };
        if t.is_empty() {
            return self;
        }
        for a in [1i64, -1] {
            let b = t[0] - a * offset;
            if t.iter()
                .enumerate()
                .all(|(k, &v)| v == a * (offset + k as i64) + b)
            {
                return ValueMap::Affine { a, b }.normalize(offset);
            }
        }
        self
    }

    /// Map that first renames the internal value by `q`, then applies
    /// `self`: the result evaluates `self.eval(q(k))`.
    pub fn pre_compose(&self, q: &crate::perm::Permutation, offset: i64) -> ValueMap {
        let t: Vec<i64> = (0..q.n()).map(|k| self.eval(q.apply(k), offset)).collect();
        ValueMap::Table(t).normalize(offset)
    }

    /// Map evaluating `a · self.eval(k) + b`.
    pub fn compose_outer(&self, a: i64, b: i64, offset: i64, n_values: usize) -> ValueMap {
        match self {
            ValueMap::Identity => ValueMap::Affine { a, b }.normalize(offset),
            ValueMap::Affine { a: a2, b: b2 } => ValueMap::Affine {
                a: a * a2,
                b: a * b2 + b,
            }
            .normalize(offset),
            ValueMap::Table(t) => {
                debug_assert_eq!(t.len(), n_values);
                ValueMap::Table(t.iter().map(|&v| a * v + b).collect()).normalize(offset)
            }
        }
    }
}

/// A variable seen through a value map.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct View {
    pub var: usize,
    pub map: ValueMap,
}

impl View {
    pub fn of_var(var: usize) -> View {
        View {
            var,
            map: ValueMap::Identity,
        }
    }

    pub fn affine(var: usize, a: i64, b: i64) -> View {
        View {
            var,
            map: ValueMap::Affine { a, b },
        }
    }

    pub fn eval(&self, a: &Assignment, offset: i64) -> i64 {
        self.map.eval(a.get(self.var), offset)
    }

    fn min(&self, domains: &[Domain], offset: i64) -> Result<i64, Wipeout> {
        self.bound(domains, offset, true)
    }

    fn max(&self, domains: &[Domain], offset: i64) -> Result<i64, Wipeout> {
        self.bound(domains, offset, false)
    }

    fn bound(&self, domains: &[Domain], offset: i64, lower: bool) -> Result<i64, Wipeout> {
        let d = &domains[self.var];
        let (dmin, dmax) = match (d.min(), d.max()) {
            (Some(a), Some(b)) => (a as i64, b as i64),
            _ => return Err(Wipeout),
        };
        Ok(match &self.map {
            ValueMap::Identity => offset + if lower { dmin } else { dmax },
            ValueMap::Affine { a: 1, b } => offset + b + if lower { dmin } else { dmax },
            ValueMap::Affine { a: -1, b } => b - offset - if lower { dmax } else { dmin },
            ValueMap::Affine { .. } => unreachable!("affine factor is ±1"),
            ValueMap::Table(_) => {
                let vals = d.iter().map(|k| self.map.eval(k, offset));
                if lower {
                    vals.min().unwrap()
                } else {
                    vals.max().unwrap()
                }
            }
        })
    }

    /// Removes every value whose image under the view is `< bound`.
    fn remove_lt(
        &self,
        domains: &mut [Domain],
        offset: i64,
        bound: i64,
    ) -> Result<bool, Wipeout> {
        let d = &mut domains[self.var];
        let changed = match &self.map {
            ValueMap::Identity => d.remove_below(bound - offset),
            ValueMap::Affine { a: 1, b } => d.remove_below(bound - b - offset),
            ValueMap::Affine { a: -1, b } => d.remove_above(b - bound - offset),
            ValueMap::Affine { .. } => unreachable!("affine factor is ±1"),
            ValueMap::Table(_) => {
                let doomed: Vec<usize> =
                    d.iter().filter(|&k| self.map.eval(k, offset) < bound).collect();
                let mut any = false;
                for k in doomed {
                    any |= d.remove(k);
                }
                any
            }
        };
        if d.is_empty() {
            return Err(Wipeout);
        }
        Ok(changed)
    }

    /// Removes every value whose image under the view is `> bound`.
    fn remove_gt(
        &self,
        domains: &mut [Domain],
        offset: i64,
        bound: i64,
    ) -> Result<bool, Wipeout> {
        let d = &mut domains[self.var];
        let changed = match &self.map {
            ValueMap::Identity => d.remove_above(bound - offset),
            ValueMap::Affine { a: 1, b } => d.remove_above(bound - b - offset),
            ValueMap::Affine { a: -1, b } => d.remove_below(b - bound - offset),
            ValueMap::Affine { .. } => unreachable!("affine factor is ±1"),
            ValueMap::Table(_) => {
                let doomed: Vec<usize> =
                    d.iter().filter(|&k| self.map.eval(k, offset) > bound).collect();
                let mut any = false;
                for k in doomed {
                    any |= d.remove(k);
                }
                any
            }
        };
        if d.is_empty() {
            return Err(Wipeout);
        }
        Ok(changed)
    }

    /// Removes every value whose image under the view equals `value`.
    fn remove_value(
        &self,
        domains: &mut [Domain],
        offset: i64,
        value: i64,
    ) -> Result<bool, Wipeout> {
        let d = &mut domains[self.var];
        let doomed: Vec<usize> = d
            .iter()
            .filter(|&k| self.map.eval(k, offset) == value)
            .collect();
        let mut any = false;
        for k in doomed {
            any |= d.remove(k);
        }
        if d.is_empty() {
            return Err(Wipeout);
        }
        Ok(any)
    }

    /// Keeps only values whose image under the view equals `value`.
    fn keep_value(
        &self,
        domains: &mut [Domain],
        offset: i64,
        value: i64,
    ) -> Result<bool, Wipeout> {
        let d = &mut domains[self.var];
        let doomed: Vec<usize> = d
            .iter()
            .filter(|&k| self.map.eval(k, offset) != value)
            .collect();
        let mut any = false;
        for k in doomed {
            any |= d.remove(k);
        }
        if d.is_empty() {
            return Err(Wipeout);
        }
        Ok(any)
    }

    /// External value if the variable is decided.
    fn fixed(&self, domains: &[Domain], offset: i64) -> Option<i64> {
        domains[self.var].fixed_value().map(|k| self.map.eval(k, offset))
    }
}

/// Division rounding toward negative infinity.
pub fn floor_div(a: i64, b: i64) -> i64 {
    let q = a / b;
    if a % b != 0 && (a < 0) != (b < 0) {
        q - 1
    } else {
        q
    }
}

/// Division rounding toward positive infinity.
pub fn ceil_div(a: i64, b: i64) -> i64 {
    let q = a / b;
    if a % b != 0 && (a < 0) == (b < 0) {
        q + 1
    } else {
        q
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Constraint {
    /// `Σ coeffs[i] · views[i] = rhs`
    LinearEq {
        views: Vec<View>,
        coeffs: Vec<i64>,
        rhs: i64,
    },
    /// `Σ coeffs[i] · views[i] ≤ rhs`
    LinearLe {
        views: Vec<View>,
        coeffs: Vec<i64>,
        rhs: i64,
    },
    Less(View, View),
    LessEq(View, View),
    /// `v < min(set)`, or `v ≤ min(set)` when not strict.
    LessThanMin {
        v: View,
        set: Vec<View>,
        strict: bool,
    },
    /// `v > max(set)`, or `v ≥ max(set)` when not strict.
    GreaterThanMax {
        v: View,
        set: Vec<View>,
        strict: bool,
    },
    AllDifferent(Vec<View>),
    /// `a` lexicographically before `b`; ties allowed unless strict.
    Lex {
        a: Vec<View>,
        b: Vec<View>,
        strict: bool,
    },
    /// Exactly `count` of the views equal `value`.
    Occurrence {
        views: Vec<View>,
        value: i64,
        count: usize,
    },
    /// `a` and `b` differ in exactly `distance` positions.
    HammingEq {
        a: Vec<View>,
        b: Vec<View>,
        distance: usize,
    },
    Implies {
        guard: Box<Constraint>,
        body: Box<Constraint>,
    },
}

fn lex_holds(xs: &[i64], ys: &[i64], strict: bool) -> bool {
    for (x, y) in xs.iter().zip(ys) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    !strict
}

impl Constraint {
    pub fn eval(&self, asg: &Assignment, offset: i64) -> bool {
        match self {
            Constraint::LinearEq { views, coeffs, rhs } => {
                let sum: i64 = views
                    .iter()
                    .zip(coeffs)
                    .map(|(v, c)| c * v.eval(asg, offset))
                    .sum();
                sum == *rhs
            }
            Constraint::LinearLe { views, coeffs, rhs } => {
                let sum: i64 = views
                    .iter()
                    .zip(coeffs)
                    .map(|(v, c)| c * v.eval(asg, offset))
                    .sum();
                sum <= *rhs
            }
            Constraint::Less(u, v) => u.eval(asg, offset) < v.eval(asg, offset),
            Constraint::LessEq(u, v) => u.eval(asg, offset) <= v.eval(asg, offset),
            Constraint::LessThanMin { v, set, strict } => {
                let x = v.eval(asg, offset);
                let m = set.iter().map(|s| s.eval(asg, offset)).min().unwrap();
                if *strict {
                    x < m
                } else {
                    x <= m
                }
            }
            Constraint::GreaterThanMax { v, set, strict } => {
                let x = v.eval(asg, offset);
                let m = set.iter().map(|s| s.eval(asg, offset)).max().unwrap();
                if *strict {
                    x > m
                } else {
                    x >= m
                }
            }
            Constraint::AllDifferent(views) => {
                let mut vals: Vec<i64> = views.iter().map(|v| v.eval(asg, offset)).collect();
                vals.sort_unstable();
                vals.windows(2).all(|w| w[0] != w[1])
            }
            Constraint::Lex { a, b, strict } => {
                let xs: Vec<i64> = a.iter().map(|v| v.eval(asg, offset)).collect();
                let ys: Vec<i64> = b.iter().map(|v| v.eval(asg, offset)).collect();
                lex_holds(&xs, &ys, *strict)
            }
            Constraint::Occurrence {
                views,
                value,
                count,
            } => {
                views
                    .iter()
                    .filter(|v| v.eval(asg, offset) == *value)
                    .count()
                    == *count
            }
            Constraint::HammingEq { a, b, distance } => {
                a.iter()
                    .zip(b)
                    .filter(|(x, y)| x.eval(asg, offset) != y.eval(asg, offset))
                    .count()
                    == *distance
            }
            Constraint::Implies { guard, body } => {
                !guard.eval(asg, offset) || body.eval(asg, offset)
            }
        }
    }

    /// All views the constraint mentions, guards included.
    pub fn views(&self) -> Vec<&View> {
        match self {
            Constraint::LinearEq { views, .. }
            | Constraint::LinearLe { views, .. }
            | Constraint::AllDifferent(views)
            | Constraint::Occurrence { views, .. } => views.iter().collect(),
            Constraint::Less(u, v) | Constraint::LessEq(u, v) => vec![u, v],
            Constraint::LessThanMin { v, set, .. }
            | Constraint::GreaterThanMax { v, set, .. } => {
                let mut out = vec![v];
                out.extend(set.iter());
                out
            }
            Constraint::Lex { a, b, .. } | Constraint::HammingEq { a, b, .. } => {
                a.iter().chain(b.iter()).collect()
            }
            Constraint::Implies { guard, body } => {
                let mut out = guard.views();
                out.extend(body.views());
                out
            }
        }
    }

    /// One sound pruning pass; `Ok(true)` means some domain changed.
    pub fn propagate(&self, domains: &mut [Domain], offset: i64) -> Result<bool, Wipeout> {
        match self {
            Constraint::LinearEq { views, coeffs, rhs } => {
                let up = prune_linear_le(domains, offset, views, coeffs, *rhs)?;
                let neg: Vec<i64> = coeffs.iter().map(|c| -c).collect();
                let down = prune_linear_le(domains, offset, views, &neg, -rhs)?;
                Ok(up | down)
            }
            Constraint::LinearLe { views, coeffs, rhs } => {
                prune_linear_le(domains, offset, views, coeffs, *rhs)
            }
            Constraint::Less(u, v) => prune_less(domains, offset, u, v, true),
            Constraint::LessEq(u, v) => prune_less(domains, offset, u, v, false),
            Constraint::LessThanMin { v, set, strict } => {
                let s = *strict as i64;
                let mut changed = false;
                let cap = set
                    .iter()
                    .map(|m| m.max(domains, offset))
                    .collect::<Result<Vec<_>, _>>()?
                    .into_iter()
                    .min()
                    .unwrap();
                changed |= v.remove_gt(domains, offset, cap - s)?;
                let lo = v.min(domains, offset)?;
                for m in set {
                    changed |= m.remove_lt(domains, offset, lo + s)?;
                }
                Ok(changed)
            }
            Constraint::GreaterThanMax { v, set, strict } => {
                let s = *strict as i64;
                let mut changed = false;
                let floor = set
                    .iter()
                    .map(|m| m.min(domains, offset))
                    .collect::<Result<Vec<_>, _>>()?
                    .into_iter()
                    .max()
                    .unwrap();
                changed |= v.remove_lt(domains, offset, floor + s)?;
                let hi = v.max(domains, offset)?;
                for m in set {
                    changed |= m.remove_gt(domains, offset, hi - s)?;
                }
                Ok(changed)
            }
            Constraint::AllDifferent(views) => {
                let mut changed = false;
                for i in 0..views.len() {
                    if let Some(val) = views[i].fixed(domains, offset) {
                        for (j, other) in views.iter().enumerate() {
                            if j != i {
                                changed |= other.remove_value(domains, offset, val)?;
                            }
                        }
                    }
                }
                Ok(changed)
            }
            Constraint::Lex { a, b, strict } => prune_lex(domains, offset, a, b, *strict),
            Constraint::Occurrence {
                views,
                value,
                count,
            } => prune_occurrence(domains, offset, views, *value, *count),
            Constraint::HammingEq { a, b, distance } => {
                prune_hamming(domains, offset, a, b, *distance)
            }
            Constraint::Implies { guard, body } => prune_implies(domains, offset, guard, body),
        }
    }

    /// `Some(true)` if every assignment within the domains satisfies the
    /// constraint, `Some(false)` if none does, `None` if undecided. Only
    /// implemented for the shapes allowed as implication guards.
    fn entailed(&self, domains: &[Domain], offset: i64) -> Option<bool> {
        match self {
            Constraint::Less(u, v) => {
                let (umin, umax) = (u.min(domains, offset).ok()?, u.max(domains, offset).ok()?);
                let (vmin, vmax) = (v.min(domains, offset).ok()?, v.max(domains, offset).ok()?);
                if umax < vmin {
                    Some(true)
                } else if umin >= vmax {
                    Some(false)
                } else {
                    None
                }
            }
            Constraint::LessEq(u, v) => {
                let (umin, umax) = (u.min(domains, offset).ok()?, u.max(domains, offset).ok()?);
                let (vmin, vmax) = (v.min(domains, offset).ok()?, v.max(domains, offset).ok()?);
                if umax <= vmin {
                    Some(true)
                } else if umin > vmax {
                    Some(false)
                } else {
                    None
                }
            }
            Constraint::LinearEq { views, coeffs, rhs } => {
                let mut lo = 0i64;
                let mut hi = 0i64;
                for (v, &c) in views.iter().zip(coeffs) {
                    let (a, b) = (v.min(domains, offset).ok()?, v.max(domains, offset).ok()?);
                    if c >= 0 {
                        lo += c * a;
                        hi += c * b;
                    } else {
                        lo += c * b;
                        hi += c * a;
                    }
                }
                if lo == hi {
                    Some(lo == *rhs)
                } else if *rhs < lo || *rhs > hi {
                    Some(false)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Runs this constraint's propagator alone to fixpoint.
    pub fn propagate_to_own_fixpoint(
        &self,
        domains: &mut [Domain],
        offset: i64,
    ) -> Result<(), Wipeout> {
        while self.propagate(domains, offset)? {}
        Ok(())
    }
}

fn prune_less(
    domains: &mut [Domain],
    offset: i64,
    u: &View,
    v: &View,
    strict: bool,
) -> Result<bool, Wipeout> {
    let s = strict as i64;
    let mut changed = false;
    changed |= u.remove_gt(domains, offset, v.max(domains, offset)? - s)?;
    changed |= v.remove_lt(domains, offset, u.min(domains, offset)? + s)?;
    Ok(changed)
}

fn prune_linear_le(
    domains: &mut [Domain],
    offset: i64,
    views: &[View],
    coeffs: &[i64],
    rhs: i64,
) -> Result<bool, Wipeout> {
    // Σ c·x ≤ rhs: each term is bounded by rhs minus the other terms'
    // minima.
    let mut term_min = Vec::with_capacity(views.len());
    let mut sum_min = 0i64;
    for (v, &c) in views.iter().zip(coeffs) {
        let t = if c >= 0 {
            c * v.min(domains, offset)?
        } else {
            c * v.max(domains, offset)?
        };
        term_min.push(t);
        sum_min += t;
    }
    if sum_min > rhs {
        return Err(Wipeout);
    }
    let mut changed = false;
    for ((v, &c), &t) in views.iter().zip(coeffs).zip(&term_min) {
        if c == 0 {
            continue;
        }
        let budget = rhs - (sum_min - t);
        if c > 0 {
            changed |= v.remove_gt(domains, offset, floor_div(budget, c))?;
        } else {
            changed |= v.remove_lt(domains, offset, ceil_div(budget, c))?;
        }
    }
    Ok(changed)
}

fn prune_lex(
    domains: &mut [Domain],
    offset: i64,
    a: &[View],
    b: &[View],
    strict: bool,
) -> Result<bool, Wipeout> {
    let n = a.len();
    let mut changed = false;
    let mut i = 0;
    loop {
        if i == n {
            // Every position is decided and equal.
            return if strict { Err(Wipeout) } else { Ok(changed) };
        }
        let s = strict && i == n - 1;
        changed |= prune_less(domains, offset, &a[i], &b[i], s)?;
        match (a[i].fixed(domains, offset), b[i].fixed(domains, offset)) {
            (Some(x), Some(y)) if x == y => i += 1,
            _ => return Ok(changed),
        }
    }
}

fn prune_occurrence(
    domains: &mut [Domain],
    offset: i64,
    views: &[View],
    value: i64,
    count: usize,
) -> Result<bool, Wipeout> {
    let mut must = Vec::new();
    let mut can = Vec::new();
    for (i, v) in views.iter().enumerate() {
        let possible = domains[v.var].iter().any(|k| v.map.eval(k, offset) == value);
        if possible {
            can.push(i);
            if v.fixed(domains, offset) == Some(value) {
                must.push(i);
            }
        }
    }
    if must.len() > count || can.len() < count {
        return Err(Wipeout);
    }
    let mut changed = false;
    if must.len() == count {
        for (i, v) in views.iter().enumerate() {
            if !must.contains(&i) {
                changed |= v.remove_value(domains, offset, value)?;
            }
        }
    } else if can.len() == count {
        for &i in &can {
            changed |= views[i].keep_value(domains, offset, value)?;
        }
    }
    Ok(changed)
}

fn prune_hamming(
    domains: &mut [Domain],
    offset: i64,
    a: &[View],
    b: &[View],
    distance: usize,
) -> Result<bool, Wipeout> {
    let n = a.len();
    let mut must_diff = 0usize;
    let mut undecided = Vec::new();
    for i in 0..n {
        match (a[i].fixed(domains, offset), b[i].fixed(domains, offset)) {
            (Some(x), Some(y)) if x != y => must_diff += 1,
            (Some(_), Some(_)) => {}
            _ => undecided.push(i),
        }
    }
    if must_diff > distance || must_diff + undecided.len() < distance {
        return Err(Wipeout);
    }
    let mut changed = false;
    if must_diff == distance {
        // Remaining pairs must agree: keep only values the partner can
        // still produce.
        for &i in &undecided {
            for (x, y) in [(&a[i], &b[i]), (&b[i], &a[i])] {
                let reachable: Vec<i64> = domains[y.var]
                    .iter()
                    .map(|k| y.map.eval(k, offset))
                    .collect();
                let doomed: Vec<usize> = domains[x.var]
                    .iter()
                    .filter(|&k| !reachable.contains(&x.map.eval(k, offset)))
                    .collect();
                for k in doomed {
                    changed |= domains[x.var].remove(k);
                }
                if domains[x.var].is_empty() {
                    return Err(Wipeout);
                }
            }
        }
    } else if must_diff + undecided.len() == distance {
        // Remaining pairs must differ.
        for &i in &undecided {
            if let Some(x) = a[i].fixed(domains, offset) {
                changed |= b[i].remove_value(domains, offset, x)?;
            } else if let Some(y) = b[i].fixed(domains, offset) {
                changed |= a[i].remove_value(domains, offset, y)?;
            }
        }
    }
    Ok(changed)
}

fn prune_implies(
    domains: &mut [Domain],
    offset: i64,
    guard: &Constraint,
    body: &Constraint,
) -> Result<bool, Wipeout> {
    match guard.entailed(domains, offset) {
        Some(false) => Ok(false),
        Some(true) => body.propagate(domains, offset),
        None => {
            let mut probe = domains.to_vec();
            if body.propagate_to_own_fixpoint(&mut probe, offset).is_ok() {
                return Ok(false);
            }
            // Body impossible, so the guard must fail.
            match guard {
                Constraint::Less(u, v) => {
                    Constraint::LessEq(v.clone(), u.clone()).propagate(domains, offset)
                }
                Constraint::LessEq(u, v) => {
                    Constraint::Less(v.clone(), u.clone()).propagate(domains, offset)
                }
                Constraint::LinearEq { views, coeffs, rhs } => {
                    let free: Vec<usize> = (0..views.len())
                        .filter(|&i| {
                            coeffs[i] != 0 && views[i].fixed(domains, offset).is_none()
                        })
                        .collect();
                    if free.len() != 1 {
                        return Ok(false);
                    }
                    let f = free[0];
                    let fixed_sum: i64 = (0..views.len())
                        .filter(|&i| i != f)
                        .map(|i| coeffs[i] * views[i].fixed(domains, offset).unwrap_or(0))
                        .sum();
                    let rest = rhs - fixed_sum;
                    if rest % coeffs[f] == 0 {
                        views[f].remove_value(domains, offset, rest / coeffs[f])
                    } else {
                        Ok(false)
                    }
                }
                _ => Ok(false),
            }
        }
    }
}

/// Runs all constraints' propagators round-robin until nothing changes.
pub fn propagate_to_fixpoint(
    domains: &mut [Domain],
    constraints: &[Constraint],
    offset: i64,
) -> Result<(), Wipeout> {
    if domains.iter().any(|d| d.is_empty()) {
        return Err(Wipeout);
    }
    loop {
        let mut changed = false;
        for c in constraints {
            changed |= c.propagate(domains, offset)?;
        }
        if !changed {
            return Ok(());
        }
    }
}
