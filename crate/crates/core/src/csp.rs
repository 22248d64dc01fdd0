//! Problem representation: variables over small finite integer domains.
//!
//! Domains hold *internal* values `0..n_values`; a per-problem offset maps
//! them to the external integers that constraints and reports use. A domain
//! fits in one machine word, which caps `n_values` at 64 and makes copying
//! domain stores during search cheap.

use crate::constraints::Constraint;

/// Set of still-possible internal values for one variable.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Domain {
    bits: u64,
}

impl Domain {
    /// Full domain over internal values `0..n`. Panics if `n > 64`.
    pub fn full(n: usize) -> Self {
        assert!((1..=64).contains(&n), "domain size {n} outside 1..=64");
        let bits = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Domain { bits }
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn contains(&self, v: usize) -> bool {
        v < 64 && self.bits & (1 << v) != 0
    }

    /// Removes `v`; returns whether the domain changed.
    pub fn remove(&mut self, v: usize) -> bool {
        if self.contains(v) {
            self.bits &= !(1 << v);
            true
        } else {
            false
        }
    }

    /// Collapses the domain to `{v}`. Collapses to the empty set if `v` was
    /// not present.
    pub fn fix(&mut self, v: usize) {
        self.bits &= if v < 64 { 1 << v } else { 0 };
    }

    /// Removes every value strictly below `lo` (internal scale).
    pub fn remove_below(&mut self, lo: i64) -> bool {
        let old = self.bits;
        if lo >= 64 {
            self.bits = 0;
        } else if lo > 0 {
            self.bits &= u64::MAX << lo;
        }
        self.bits != old
    }

    /// Removes every value strictly above `hi` (internal scale).
    pub fn remove_above(&mut self, hi: i64) -> bool {
        let old = self.bits;
        if hi < 0 {
            self.bits = 0;
        } else if hi < 63 {
            self.bits &= (1u64 << (hi + 1)) - 1;
        }
        self.bits != old
    }

    pub fn intersect(&mut self, other: Domain) -> bool {
        let old = self.bits;
        self.bits &= other.bits;
        self.bits != old
    }

    pub fn min(&self) -> Option<usize> {
        if self.bits == 0 {
            None
        } else {
            Some(self.bits.trailing_zeros() as usize)
        }
    }

    pub fn max(&self) -> Option<usize> {
        if self.bits == 0 {
            None
        } else {
            Some(63 - self.bits.leading_zeros() as usize)
        }
    }

    /// Single remaining value, if the variable is decided.
    pub fn fixed_value(&self) -> Option<usize> {
        if self.bits != 0 && self.bits & (self.bits - 1) == 0 {
            Some(self.bits.trailing_zeros() as usize)
        } else {
            None
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (0..64).filter(move |v| bits & (1 << v) != 0)
    }

    pub(crate) fn from_bits(bits: u64) -> Self {
        Domain { bits }
    }

    /// Domain containing exactly the given internal values.
    pub fn from_values(values: &[usize]) -> Self {
        let mut bits = 0u64;
        for &v in values {
            assert!(v < 64);
            bits |= 1 << v;
        }
        Domain { bits }
    }
}

/// Total assignment of internal values, indexed by variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Assignment(pub Vec<u8>);

impl Assignment {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Internal value of variable `var`.
    pub fn get(&self, var: usize) -> usize {
        self.0[var] as usize
    }

    /// External value of variable `var` under the given offset.
    pub fn external(&self, var: usize, offset: i64) -> i64 {
        offset + self.0[var] as i64
    }

    /// Reads a total assignment out of a fully decided domain store.
    pub fn from_domains(domains: &[Domain]) -> Option<Assignment> {
        let mut vals = Vec::with_capacity(domains.len());
        for d in domains {
            vals.push(d.fixed_value()? as u8);
        }
        Some(Assignment(vals))
    }
}

/// What to minimize, when the problem is an optimization problem.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Objective {
    /// External value of one variable.
    Variable(usize),
    /// Number of distinct values taken by the listed variables. Invariant
    /// under permutations of both variables and values, so it stays
    /// meaningful when the model is transformed by a symmetry.
    CountDistinct(Vec<usize>),
}

/// A finite-domain problem: uniform domains, a constraint list and an
/// optional objective.
#[derive(Clone, Debug)]
pub struct Csp {
    pub domains: Vec<Domain>,
    pub n_values: usize,
    pub value_offset: i64,
    pub constraints: Vec<Constraint>,
    pub objective: Option<Objective>,
}

impl Csp {
    pub fn new(n_vars: usize, n_values: usize, value_offset: i64) -> Self {
        Csp {
            domains: vec![Domain::full(n_values); n_vars],
            n_values,
            value_offset,
            constraints: Vec::new(),
            objective: None,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.domains.len()
    }

    /// True iff `a` satisfies every constraint.
    pub fn satisfies(&self, a: &Assignment) -> bool {
        self.constraints
            .iter()
            .all(|c| c.eval(a, self.value_offset))
    }

    /// True iff `a` is total over the variables, in range, and satisfies
    /// every constraint.
    pub fn is_solution(&self, a: &Assignment) -> bool {
        a.len() == self.n_vars()
            && a.0.iter().all(|&v| (v as usize) < self.n_values)
            && self.satisfies(a)
    }

    pub fn objective_value(&self, a: &Assignment) -> Option<i64> {
        match &self.objective {
            None => None,
            Some(Objective::Variable(v)) => Some(a.external(*v, self.value_offset)),
            Some(Objective::CountDistinct(vars)) => {
                let mut seen = 0u64;
                for &v in vars {
                    seen |= 1 << a.get(v);
                }
                Some(seen.count_ones() as i64)
            }
        }
    }

    /// Copy of the problem with extra constraints appended.
    pub fn with_constraints(&self, extra: &[Constraint]) -> Csp {
        let mut csp = self.clone();
        csp.constraints.extend_from_slice(extra);
        csp
    }
}
