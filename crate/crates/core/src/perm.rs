//! Permutations, problem symmetries and symmetry groups.
//!
//! A [`Symmetry`] pairs a variable permutation with a value permutation
//! (internal scale). Acting on a total assignment `A` it produces `B` with
//! `B[var(i)] = val(A[i])`: the value of a variable is relocated and
//! renamed at once. Groups carry optional structure so that uniform random
//! elements can be drawn exactly where the structure allows it, with a
//! random-word fallback otherwise.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashSet, VecDeque};
use std::hash::{Hash, Hasher};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::csp::Assignment;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum PermError {
    #[error("image of length {n} is not a bijection on 0..{n}")]
    NotABijection { n: usize },
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("value offset mismatch: {left} vs {right}")]
    OffsetMismatch { left: i64, right: i64 },
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum GroupError {
    #[error("group exceeds {bound} elements")]
    TooLarge { bound: usize },
}

#[derive(Error, Debug)]
pub enum GroupParseError {
    #[error("bad group JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Bijection on `0..n`, stored as its image table.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// Validates that `image` is a bijection on `0..image.len()`.
    pub fn from_image(image: Vec<usize>) -> Result<Self, PermError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || seen[v] {
                return Err(PermError::NotABijection { n });
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    /// Swaps `a` and `b`, fixing everything else.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(a, b);
        Permutation { image }
    }

    /// Maps `k` to `n-1-k`.
    pub fn reversal(n: usize) -> Self {
        Permutation {
            image: (0..n).rev().collect(),
        }
    }

    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut image: Vec<usize> = (0..n).collect();
        image.shuffle(rng);
        Permutation { image }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self.compose(q)` applies `q` first: `(p∘q)(i) = p(q(i))`.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation, PermError> {
        if self.n() != q.n() {
            return Err(PermError::SizeMismatch {
                left: self.n(),
                right: q.n(),
            });
        }
        Ok(Permutation {
            image: q.image.iter().map(|&i| self.image[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.n()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v] = i;
        }
        Permutation { image }
    }
}

/// Flat index of grid cell in column `i`, row `j` (both 1-based) of an
/// `n × n` grid stored row-major.
pub fn grid_cell(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i <= n && 1 <= j && j <= n);
    (j - 1) * n + (i - 1)
}

/// Reflection of the grid through its vertical axis: cell `(i, j)` moves to
/// `(n+1-i, j)`.
pub fn grid_reflection_vertical(n: usize) -> Permutation {
    let mut image = vec![0; n * n];
    for j in 1..=n {
        for i in 1..=n {
            image[grid_cell(n, i, j)] = grid_cell(n, n + 1 - i, j);
        }
    }
    Permutation { image }
}

/// Quarter-turn of the grid: cell `(i, j)` moves to `(n+1-j, i)`.
pub fn grid_rotation_90(n: usize) -> Permutation {
    let mut image = vec![0; n * n];
    for j in 1..=n {
        for i in 1..=n {
            image[grid_cell(n, i, j)] = grid_cell(n, n + 1 - j, i);
        }
    }
    Permutation { image }
}

/// One symmetry: relocate variables and rename values simultaneously.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Symmetry {
    pub var_perm: Permutation,
    pub val_perm: Permutation,
    pub value_offset: i64,
}

impl Symmetry {
    pub fn identity(n_vars: usize, n_values: usize, value_offset: i64) -> Self {
        Symmetry {
            var_perm: Permutation::identity(n_vars),
            val_perm: Permutation::identity(n_values),
            value_offset,
        }
    }

    pub fn var_only(var_perm: Permutation, n_values: usize, value_offset: i64) -> Self {
        Symmetry {
            var_perm,
            val_perm: Permutation::identity(n_values),
            value_offset,
        }
    }

    pub fn val_only(n_vars: usize, val_perm: Permutation, value_offset: i64) -> Self {
        Symmetry {
            var_perm: Permutation::identity(n_vars),
            val_perm,
            value_offset,
        }
    }

    /// Reverses the value scale: external `v` becomes `2·offset + m - 1 - v`
    /// where `m` is the number of values.
    pub fn value_inversion(n_vars: usize, n_values: usize, value_offset: i64) -> Self {
        Symmetry::val_only(n_vars, Permutation::reversal(n_values), value_offset)
    }

    pub fn is_identity(&self) -> bool {
        self.var_perm.is_identity() && self.val_perm.is_identity()
    }

    /// `g.compose(h)` acts as `h` followed by `g`.
    pub fn compose(&self, h: &Symmetry) -> Result<Symmetry, PermError> {
        if self.value_offset != h.value_offset {
            return Err(PermError::OffsetMismatch {
                left: self.value_offset,
                right: h.value_offset,
            });
        }
        Ok(Symmetry {
            var_perm: self.var_perm.compose(&h.var_perm)?,
            val_perm: self.val_perm.compose(&h.val_perm)?,
            value_offset: self.value_offset,
        })
    }

    pub fn inverse(&self) -> Symmetry {
        Symmetry {
            var_perm: self.var_perm.inverse(),
            val_perm: self.val_perm.inverse(),
            value_offset: self.value_offset,
        }
    }

    /// Image of a total assignment: `out[var(i)] = val(a[i])`.
    pub fn apply_assignment(&self, a: &Assignment) -> Assignment {
        let mut out = vec![0u8; a.len()];
        for i in 0..a.len() {
            out[self.var_perm.apply(i)] = self.val_perm.apply(a.get(i)) as u8;
        }
        Assignment(out)
    }

    /// Image of a set of `(var, internal value)` pairs.
    pub fn apply_partial(&self, pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
        pairs
            .iter()
            .map(|&(var, val)| (self.var_perm.apply(var), self.val_perm.apply(val)))
            .collect()
    }
}

/// Deterministic content-derived label for unnamed group elements.
pub fn hash_label(sym: &Symmetry) -> String {
    let mut h = DefaultHasher::new();
    sym.hash(&mut h);
    format!("g{:016x}", h.finish())
}

/// One independent factor of a product-structured group.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum GroupFactor {
    /// All permutations of a block of mutually interchangeable variables.
    VarBlock(Vec<usize>),
    /// All permutations of a set of mutually interchangeable internal values.
    ValueSet(Vec<usize>),
    /// All row and column permutations of a variable matrix laid out
    /// row-major starting at `var_base`.
    MatrixRowCol {
        var_base: usize,
        rows: usize,
        cols: usize,
    },
}

/// How much is known about the group beyond a generating set.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum GroupStructure {
    /// Small group listed in full; sampling picks a listed element uniformly.
    Elements(Vec<(String, Symmetry)>),
    /// Direct product of independent factors; sampling draws one uniform
    /// element per factor and composes them, which is uniform over the
    /// whole group.
    Product(Vec<GroupFactor>),
    /// Generators only; sampling walks a fixed-length random word, which
    /// approaches but does not reach uniformity.
    Generators,
}

pub const DEFAULT_GROUP_BOUND: usize = 10_000;

/// Random-word length used when a group has no sampling structure.
const RANDOM_WORD_LENGTH: usize = 50;

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct SymmetryGroup {
    pub n_vars: usize,
    pub n_values: usize,
    pub value_offset: i64,
    pub generators: Vec<(String, Symmetry)>,
    pub structure: GroupStructure,
}

impl SymmetryGroup {
    /// Group given in full, with a generating subset for search-time use.
    pub fn from_elements(
        n_vars: usize,
        n_values: usize,
        value_offset: i64,
        elements: Vec<(String, Symmetry)>,
        generators: Vec<(String, Symmetry)>,
    ) -> Self {
        assert!(!elements.is_empty());
        SymmetryGroup {
            n_vars,
            n_values,
            value_offset,
            generators,
            structure: GroupStructure::Elements(elements),
        }
    }

    pub fn from_generators(
        n_vars: usize,
        n_values: usize,
        value_offset: i64,
        generators: Vec<(String, Symmetry)>,
    ) -> Self {
        assert!(!generators.is_empty());
        SymmetryGroup {
            n_vars,
            n_values,
            value_offset,
            generators,
            structure: GroupStructure::Generators,
        }
    }

    /// Direct product of independent factors; a generating set is derived
    /// from the factors.
    pub fn product(
        n_vars: usize,
        n_values: usize,
        value_offset: i64,
        factors: Vec<GroupFactor>,
    ) -> Self {
        let mut generators = Vec::new();
        for f in &factors {
            match f {
                GroupFactor::VarBlock(vars) => {
                    for w in vars.windows(2) {
                        let p = Permutation::transposition(n_vars, w[0], w[1]);
                        generators.push(Symmetry::var_only(p, n_values, value_offset));
                    }
                }
                GroupFactor::ValueSet(vals) => {
                    for w in vals.windows(2) {
                        let p = Permutation::transposition(n_values, w[0], w[1]);
                        generators.push(Symmetry::val_only(n_vars, p, value_offset));
                    }
                }
                GroupFactor::MatrixRowCol {
                    var_base,
                    rows,
                    cols,
                } => {
                    let cell = |r: usize, c: usize| var_base + r * cols + c;
                    for r in 0..rows.saturating_sub(1) {
                        let mut image: Vec<usize> = (0..n_vars).collect();
                        for c in 0..*cols {
                            image.swap(cell(r, c), cell(r + 1, c));
                        }
                        let p = Permutation { image };
                        generators.push(Symmetry::var_only(p, n_values, value_offset));
                    }
                    for c in 0..cols.saturating_sub(1) {
                        let mut image: Vec<usize> = (0..n_vars).collect();
                        for r in 0..*rows {
                            image.swap(cell(r, c), cell(r, c + 1));
                        }
                        let p = Permutation { image };
                        generators.push(Symmetry::var_only(p, n_values, value_offset));
                    }
                }
            }
        }
        let generators = generators
            .into_iter()
            .map(|g| (hash_label(&g), g))
            .collect();
        SymmetryGroup {
            n_vars,
            n_values,
            value_offset,
            generators,
            structure: GroupStructure::Product(factors),
        }
    }

    pub fn identity(&self) -> Symmetry {
        Symmetry::identity(self.n_vars, self.n_values, self.value_offset)
    }

    /// Draws one group element with a label for logs. Uniform for listed
    /// and product-structured groups, random-word otherwise.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> (Symmetry, String) {
        match &self.structure {
            GroupStructure::Elements(elems) => {
                let (name, sym) = &elems[rng.gen_range(0..elems.len())];
                (sym.clone(), name.clone())
            }
            GroupStructure::Product(factors) => {
                let mut acc = self.identity();
                for f in factors {
                    let g = self.sample_factor(f, rng);
                    acc = g.compose(&acc).expect("factors share shape");
                }
                let label = hash_label(&acc);
                (acc, label)
            }
            GroupStructure::Generators => {
                let mut pool: Vec<Symmetry> =
                    self.generators.iter().map(|(_, g)| g.clone()).collect();
                pool.extend(self.generators.iter().map(|(_, g)| g.inverse()));
                let mut acc = self.identity();
                for _ in 0..RANDOM_WORD_LENGTH {
                    let g = &pool[rng.gen_range(0..pool.len())];
                    acc = g.compose(&acc).expect("generators share shape");
                }
                let label = hash_label(&acc);
                (acc, label)
            }
        }
    }

    fn sample_factor<R: Rng>(&self, f: &GroupFactor, rng: &mut R) -> Symmetry {
        match f {
            GroupFactor::VarBlock(vars) => {
                let mut dst = vars.clone();
                dst.shuffle(rng);
                let mut image: Vec<usize> = (0..self.n_vars).collect();
                for (src, d) in vars.iter().zip(&dst) {
                    image[*src] = *d;
                }
                Symmetry::var_only(Permutation { image }, self.n_values, self.value_offset)
            }
            GroupFactor::ValueSet(vals) => {
                let mut dst = vals.clone();
                dst.shuffle(rng);
                let mut image: Vec<usize> = (0..self.n_values).collect();
                for (src, d) in vals.iter().zip(&dst) {
                    image[*src] = *d;
                }
                Symmetry::val_only(self.n_vars, Permutation { image }, self.value_offset)
            }
            GroupFactor::MatrixRowCol {
                var_base,
                rows,
                cols,
            } => {
                let rp = Permutation::random(*rows, rng);
                let cp = Permutation::random(*cols, rng);
                let mut image: Vec<usize> = (0..self.n_vars).collect();
                for r in 0..*rows {
                    for c in 0..*cols {
                        image[var_base + r * cols + c] =
                            var_base + rp.apply(r) * cols + cp.apply(c);
                    }
                }
                Symmetry::var_only(Permutation { image }, self.n_values, self.value_offset)
            }
        }
    }

    /// Lists every group element, in deterministic discovery order. Listed
    /// groups are returned as given; otherwise the closure of the
    /// generators is computed breadth-first up to `bound` elements.
    pub fn enumerate(&self, bound: usize) -> Result<Vec<Symmetry>, GroupError> {
        if let GroupStructure::Elements(elems) = &self.structure {
            if elems.len() > bound {
                return Err(GroupError::TooLarge { bound });
            }
            return Ok(elems.iter().map(|(_, g)| g.clone()).collect());
        }
        let gens: Vec<&Symmetry> = self.generators.iter().map(|(_, g)| g).collect();
        let id = self.identity();
        let mut seen: HashSet<Symmetry> = HashSet::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        order.push(id.clone());
        queue.push_back(id);
        while let Some(g) = queue.pop_front() {
            for gen in &gens {
                let next = gen.compose(&g).expect("generators share shape");
                if seen.insert(next.clone()) {
                    if order.len() >= bound {
                        return Err(GroupError::TooLarge { bound });
                    }
                    order.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(order)
    }

    /// Name of an element if the group lists it, content hash otherwise.
    pub fn label_of(&self, sym: &Symmetry) -> String {
        if let GroupStructure::Elements(elems) = &self.structure {
            for (name, g) in elems {
                if g == sym {
                    return name.clone();
                }
            }
        }
        hash_label(sym)
    }

    /// Orbit of an assignment under the group, in discovery order.
    pub fn orbit(&self, a: &Assignment, bound: usize) -> Result<Vec<Assignment>, GroupError> {
        let gens: Vec<Symmetry> = match &self.structure {
            GroupStructure::Elements(elems) => elems.iter().map(|(_, g)| g.clone()).collect(),
            _ => self.generators.iter().map(|(_, g)| g.clone()).collect(),
        };
        let mut seen: HashSet<Assignment> = HashSet::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(a.clone());
        order.push(a.clone());
        queue.push_back(a.clone());
        while let Some(cur) = queue.pop_front() {
            for g in &gens {
                let next = g.apply_assignment(&cur);
                if seen.insert(next.clone()) {
                    if order.len() >= bound {
                        return Err(GroupError::TooLarge { bound });
                    }
                    order.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(order)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("group serializes")
    }

    /// Parses and validates a group: every permutation must be a bijection
    /// of the right size, every offset must match the group's.
    pub fn from_json(s: &str) -> Result<SymmetryGroup, GroupParseError> {
        let group: SymmetryGroup = serde_json::from_str(s)?;
        group.validate()?;
        Ok(group)
    }

    pub fn validate(&self) -> Result<(), PermError> {
        let mut all: Vec<&Symmetry> = self.generators.iter().map(|(_, g)| g).collect();
        if let GroupStructure::Elements(elems) = &self.structure {
            all.extend(elems.iter().map(|(_, g)| g));
        }
        for sym in all {
            Permutation::from_image(sym.var_perm.image.clone())?;
            Permutation::from_image(sym.val_perm.image.clone())?;
            if sym.var_perm.n() != self.n_vars {
                return Err(PermError::SizeMismatch {
                    left: sym.var_perm.n(),
                    right: self.n_vars,
                });
            }
            if sym.val_perm.n() != self.n_values {
                return Err(PermError::SizeMismatch {
                    left: sym.val_perm.n(),
                    right: self.n_values,
                });
            }
            if sym.value_offset != self.value_offset {
                return Err(PermError::OffsetMismatch {
                    left: sym.value_offset,
                    right: self.value_offset,
                });
            }
        }
        Ok(())
    }
}

/// Hand-checked 4×4 grid fixtures used across the crate's tests. `SQ_A` is
/// a pandiagonal magic square; the others are its images under the vertical
/// reflection, the value reversal `v -> 17 - v`, and both together.
#[cfg(test)]
pub(crate) mod fixtures {
    use crate::csp::Assignment;

    pub const SQ_A: [i64; 16] = [14, 11, 5, 4, 1, 8, 10, 15, 12, 13, 3, 6, 7, 2, 16, 9];
    pub const SQ_B: [i64; 16] = [4, 5, 11, 14, 15, 10, 8, 1, 6, 3, 13, 12, 9, 16, 2, 7];
    pub const SQ_C: [i64; 16] = [3, 6, 12, 13, 16, 9, 7, 2, 5, 4, 14, 11, 10, 15, 1, 8];
    pub const SQ_D: [i64; 16] = [13, 12, 6, 3, 2, 7, 9, 16, 11, 14, 4, 5, 8, 1, 15, 10];

    /// External 1-based cell values to an internal assignment.
    pub fn asg(cells: &[i64]) -> Assignment {
        Assignment(cells.iter().map(|&v| (v - 1) as u8).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn from_image_validates() {
        assert!(Permutation::from_image(vec![2, 0, 1]).is_ok());
        assert_eq!(
            Permutation::from_image(vec![0, 0, 1]),
            Err(PermError::NotABijection { n: 3 })
        );
        assert_eq!(
            Permutation::from_image(vec![0, 3]),
            Err(PermError::NotABijection { n: 2 })
        );
    }

    #[test]
    fn compose_and_inverse_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let p = Permutation::random(9, &mut rng);
            let q = Permutation::random(9, &mut rng);
            let pq = p.compose(&q).unwrap();
            for i in 0..9 {
                assert_eq!(pq.apply(i), p.apply(q.apply(i)));
            }
            assert!(p.compose(&p.inverse()).unwrap().is_identity());
            assert!(p.inverse().compose(&p).unwrap().is_identity());
        }
        assert_eq!(
            Permutation::identity(3).compose(&Permutation::identity(4)),
            Err(PermError::SizeMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn grid_cell_corners() {
        assert_eq!(grid_cell(4, 1, 1), 0);
        assert_eq!(grid_cell(4, 4, 1), 3);
        assert_eq!(grid_cell(4, 1, 4), 12);
        assert_eq!(grid_cell(4, 4, 4), 15);
    }

    #[test]
    fn rotation_has_order_four() {
        let r = grid_rotation_90(4);
        let r2 = r.compose(&r).unwrap();
        let r4 = r2.compose(&r2).unwrap();
        assert!(!r2.is_identity());
        assert!(r4.is_identity());
    }

    #[test]
    fn reflection_then_rotation_is_transpose() {
        // The composite maps (i, j) to (j, i): fixes the main diagonal and
        // swaps the off-diagonal corners.
        let t = grid_reflection_vertical(4).compose(&grid_rotation_90(4)).unwrap();
        assert_eq!(t.apply(grid_cell(4, 1, 1)), grid_cell(4, 1, 1));
        assert_eq!(t.apply(grid_cell(4, 4, 4)), grid_cell(4, 4, 4));
        assert_eq!(t.apply(grid_cell(4, 4, 1)), grid_cell(4, 1, 4));
        assert_eq!(t.apply(grid_cell(4, 1, 4)), grid_cell(4, 4, 1));
        assert!(t.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn grid_fixture_images() {
        let refl = Symmetry::var_only(grid_reflection_vertical(4), 16, 1);
        let inv = Symmetry::value_inversion(16, 16, 1);
        let a = asg(&SQ_A);
        assert_eq!(refl.apply_assignment(&a), asg(&SQ_B));
        assert_eq!(inv.apply_assignment(&a), asg(&SQ_C));
        let both = inv.compose(&refl).unwrap();
        assert_eq!(both.apply_assignment(&a), asg(&SQ_D));
    }

    #[test]
    fn apply_assignment_matches_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = Assignment(vec![0, 3, 1, 2, 2]);
        for _ in 0..20 {
            let g = Symmetry {
                var_perm: Permutation::random(5, &mut rng),
                val_perm: Permutation::random(4, &mut rng),
                value_offset: 0,
            };
            let h = Symmetry {
                var_perm: Permutation::random(5, &mut rng),
                val_perm: Permutation::random(4, &mut rng),
                value_offset: 0,
            };
            let gh = g.compose(&h).unwrap();
            assert_eq!(
                gh.apply_assignment(&a),
                g.apply_assignment(&h.apply_assignment(&a))
            );
            assert_eq!(g.inverse().apply_assignment(&g.apply_assignment(&a)), a);
        }
    }

    #[test]
    fn apply_partial_relocates_pairs() {
        let g = Symmetry {
            var_perm: Permutation::from_image(vec![1, 2, 0]).unwrap(),
            val_perm: Permutation::from_image(vec![0, 2, 1]).unwrap(),
            value_offset: 0,
        };
        assert_eq!(g.apply_partial(&[(0, 1), (2, 2)]), vec![(1, 2), (0, 1)]);
    }

    fn value_shift_group() -> SymmetryGroup {
        // Cyclic shifts of 8 values on one variable.
        let elems: Vec<(String, Symmetry)> = (0..8)
            .map(|k| {
                let image: Vec<usize> = (0..8).map(|v| (v + k) % 8).collect();
                let sym = Symmetry::val_only(1, Permutation::from_image(image).unwrap(), 0);
                (format!("shift{k}"), sym)
            })
            .collect();
        let gens = vec![elems[1].clone()];
        SymmetryGroup::from_elements(1, 8, 0, elems, gens)
    }

    #[test]
    fn listed_group_sampling_is_uniform() {
        let group = value_shift_group();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut counts = [0u32; 8];
        for _ in 0..10_000 {
            let (sym, label) = group.random_element(&mut rng);
            assert_eq!(group.label_of(&sym), label);
            let k: usize = label.strip_prefix("shift").unwrap().parse().unwrap();
            counts[k] += 1;
        }
        let expected = 10_000.0 / 8.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // 0.999 quantile of chi-squared with 7 degrees of freedom.
        assert!(chi2 < 24.32, "chi2 = {chi2}");
    }

    #[test]
    fn product_group_enumerates_fully() {
        let group = SymmetryGroup::product(
            4,
            3,
            0,
            vec![
                GroupFactor::VarBlock(vec![0, 1, 2, 3]),
                GroupFactor::ValueSet(vec![0, 1, 2]),
            ],
        );
        let elems = group.enumerate(DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(elems.len(), 144);
        let set: HashSet<&Symmetry> = elems.iter().collect();
        assert_eq!(set.len(), 144);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let (sym, _) = group.random_element(&mut rng);
            assert!(set.contains(&sym));
        }
    }

    #[test]
    fn matrix_factor_enumerates_row_col_perms() {
        let group = SymmetryGroup::product(
            6,
            2,
            0,
            vec![GroupFactor::MatrixRowCol {
                var_base: 0,
                rows: 2,
                cols: 3,
            }],
        );
        let elems = group.enumerate(DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(elems.len(), 12);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let set: HashSet<Symmetry> = elems.into_iter().collect();
        for _ in 0..30 {
            assert!(set.contains(&group.random_element(&mut rng).0));
        }
    }

    #[test]
    fn enumerate_respects_bound() {
        let group = SymmetryGroup::product(
            8,
            2,
            0,
            vec![GroupFactor::VarBlock((0..8).collect())],
        );
        assert_eq!(
            group.enumerate(100),
            Err(GroupError::TooLarge { bound: 100 })
        );
    }

    #[test]
    fn orbit_of_assignment() {
        let group = SymmetryGroup::product(2, 3, 0, vec![GroupFactor::VarBlock(vec![0, 1])]);
        let orbit = group.orbit(&Assignment(vec![0, 1]), 100).unwrap();
        assert_eq!(orbit.len(), 2);
        assert!(orbit.contains(&Assignment(vec![1, 0])));
        let fixed = group.orbit(&Assignment(vec![2, 2]), 100).unwrap();
        assert_eq!(fixed.len(), 1);
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let group = SymmetryGroup::product(
            4,
            3,
            1,
            vec![
                GroupFactor::VarBlock(vec![0, 1, 2, 3]),
                GroupFactor::ValueSet(vec![0, 1, 2]),
            ],
        );
        let parsed = SymmetryGroup::from_json(&group.to_json()).unwrap();
        assert_eq!(parsed, group);

        let bad = r#"{
            "n_vars": 2, "n_values": 2, "value_offset": 0,
            "generators": [["g", {
                "var_perm": [0, 0], "val_perm": [0, 1], "value_offset": 0
            }]],
            "structure": "Generators"
        }"#;
        match SymmetryGroup::from_json(bad) {
            Err(GroupParseError::Perm(PermError::NotABijection { n: 2 })) => {}
            other => panic!("expected bijection error, got {other:?}"),
        }
    }

    #[test]
    fn hash_labels_are_stable() {
        let g = Symmetry::value_inversion(4, 4, 0);
        assert_eq!(hash_label(&g), hash_label(&g.clone()));
        assert_ne!(hash_label(&g), hash_label(&Symmetry::identity(4, 4, 0)));
    }
}
