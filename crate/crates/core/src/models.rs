//! Benchmark families. Each builder returns a [`ModelBundle`]: the problem,
//! its symmetry group, and a canonical symmetry-breaking set, so callers can
//! transform the set by group elements or hand generators to the search.
//!
//! Grid models use the convention of [`grid_cell`]: `X[i,j]` is column `i`,
//! row `j`, both 1-based, stored row-major.

use crate::constraints::{Constraint, View};
use crate::csp::{Csp, Objective};
use crate::perm::{
    grid_cell, grid_reflection_vertical, grid_rotation_90, GroupFactor, Permutation, Symmetry,
    SymmetryGroup,
};
use crate::rng::SplitMix64;
use crate::symbreak::SymBreakSet;
use crate::Assignment;
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum ModelError {
    #[error("{model}: parameters must all be at least 1")]
    ZeroParameter { model: &'static str },
    #[error("{model}: order {n} is not divisible by 4")]
    NotDoublyEven { model: &'static str, n: usize },
    #[error("{model}: needs {needed} distinct values, above the 64-value limit")]
    TooManyValues { model: &'static str, needed: usize },
}

/// How to print a variable of a model.
#[derive(Clone, Debug)]
pub enum VarNaming {
    /// `n × n` grid: `X[i,j]` with `i` the column and `j` the row.
    Grid(usize),
    /// Row-major matrix: `R{r}C{c}`.
    Matrix { rows: usize, cols: usize },
    Plain,
}

impl VarNaming {
    pub fn name(&self, var: usize) -> String {
        match self {
            VarNaming::Grid(n) => format!("X[{},{}]", var % n + 1, var / n + 1),
            VarNaming::Matrix { cols, .. } => format!("R{}C{}", var / cols + 1, var % cols + 1),
            VarNaming::Plain => format!("x{}", var),
        }
    }

    pub fn namer(&self) -> impl Fn(usize) -> String + '_ {
        move |v| self.name(v)
    }
}

/// A problem together with its symmetry group and canonical
/// symmetry-breaking set.
#[derive(Clone, Debug)]
pub struct ModelBundle {
    pub name: &'static str,
    pub params: String,
    pub csp: Csp,
    pub group: SymmetryGroup,
    pub sbc: SymBreakSet,
    pub naming: VarNaming,
}

fn magic_constraints(n: usize) -> Vec<Constraint> {
    let cells = n * n;
    let line_sum = (n * (cells + 1) / 2) as i64;
    let line = |cs: Vec<usize>| Constraint::LinearEq {
        views: cs.into_iter().map(View::of_var).collect(),
        coeffs: vec![1; n],
        rhs: line_sum,
    };
    let mut out = vec![Constraint::AllDifferent(
        (0..cells).map(View::of_var).collect(),
    )];
    for j in 1..=n {
        out.push(line((1..=n).map(|i| grid_cell(n, i, j)).collect()));
    }
    for i in 1..=n {
        out.push(line((1..=n).map(|j| grid_cell(n, i, j)).collect()));
    }
    out.push(line((1..=n).map(|k| grid_cell(n, k, k)).collect()));
    out.push(line((1..=n).map(|k| grid_cell(n, k, n + 1 - k)).collect()));
    out
}

/// Canonical corner ordering for square grids: the top-left corner is the
/// strict minimum of the corners, the bottom-left beats the top-right, and
/// the top-left stays minimal after reversing the value scale (strictly or
/// not, per `strict_inversion`).
fn corner_constraints(n: usize, strict_inversion: bool) -> Vec<Constraint> {
    let m = (n * n) as i64;
    let x11 = grid_cell(n, 1, 1);
    let x1n = grid_cell(n, 1, n);
    let xn1 = grid_cell(n, n, 1);
    let xnn = grid_cell(n, n, n);
    vec![
        Constraint::LessThanMin {
            v: View::of_var(x11),
            set: vec![View::of_var(x1n), View::of_var(xn1), View::of_var(xnn)],
            strict: true,
        },
        Constraint::Less(View::of_var(x1n), View::of_var(xn1)),
        Constraint::LessThanMin {
            v: View::of_var(x11),
            set: [x11, x1n, xn1, xnn]
                .iter()
                .map(|&c| View::affine(c, -1, m + 1))
                .collect(),
            strict: strict_inversion,
        },
    ]
}

/// The eight grid placements: four rotations and four reflections.
/// Collapses to the identity alone at `n = 1`.
fn dihedral_elements(n: usize, n_values: usize, offset: i64) -> Vec<(String, Symmetry)> {
    let cells = n * n;
    let r90 = grid_rotation_90(n);
    let r180 = r90.compose(&r90).unwrap();
    let r270 = r180.compose(&r90).unwrap();
    let v = grid_reflection_vertical(n);
    let sym = |p: Permutation| Symmetry::var_only(p, n_values, offset);
    let mut els: Vec<(String, Symmetry)> = vec![
        ("id".into(), Symmetry::identity(cells, n_values, offset)),
        ("r90".into(), sym(r90.clone())),
        ("r180".into(), sym(r180.clone())),
        ("r270".into(), sym(r270.clone())),
        ("v".into(), sym(v.clone())),
        ("h".into(), sym(v.compose(&r180).unwrap())),
        ("d".into(), sym(v.compose(&r90).unwrap())),
        ("a".into(), sym(v.compose(&r270).unwrap())),
    ];
    let mut seen: Vec<Symmetry> = Vec::new();
    els.retain(|(_, g)| {
        if seen.contains(g) {
            false
        } else {
            seen.push(g.clone());
            true
        }
    });
    els
}

fn named_generators(els: &[(String, Symmetry)], names: &[&str]) -> Vec<(String, Symmetry)> {
    els.iter()
        .filter(|(name, g)| names.contains(&name.as_str()) && !g.is_identity())
        .cloned()
        .collect()
}

/// Plain magic square of order `n`: every cell value distinct, all rows,
/// columns and both diagonals summing to `n(n² + 1)/2`. The group is the
/// eight grid placements; the canonical set orders the corners, with the
/// value-reversal clause non-strict so complement-symmetric squares keep a
/// representative.
pub fn magic_square(n: usize) -> Result<ModelBundle, ModelError> {
    const NAME: &str = "magic";
    if n == 0 {
        return Err(ModelError::ZeroParameter { model: NAME });
    }
    let cells = n * n;
    if cells > 64 {
        return Err(ModelError::TooManyValues {
            model: NAME,
            needed: cells,
        });
    }
    let mut csp = Csp::new(cells, cells, 1);
    csp.constraints = magic_constraints(n);
    let els = dihedral_elements(n, cells, 1);
    let gens = named_generators(&els, &["r90", "v"]);
    let group = SymmetryGroup::from_elements(cells, cells, 1, els, gens);
    let sbc_cs = if n >= 2 {
        corner_constraints(n, false)
    } else {
        Vec::new()
    };
    Ok(ModelBundle {
        name: NAME,
        params: format!("n={}", n),
        csp,
        group,
        sbc: SymBreakSet::new("corner", sbc_cs),
        naming: VarNaming::Grid(n),
    })
}

/// The four grid rotations only, over the same variables and values as
/// [`magic_square`] of order `n`. Lets experiments swap in a coarser group.
pub fn square_rotations(n: usize) -> SymmetryGroup {
    let cells = n * n;
    let mut els = dihedral_elements(n, cells, 1);
    els.retain(|(name, _)| matches!(name.as_str(), "id" | "r90" | "r180" | "r270"));
    let gens = named_generators(&els, &["r90"]);
    SymmetryGroup::from_elements(cells, cells, 1, els, gens)
}

/// Most-perfect magic square of order `n` (`n` divisible by 4): a magic
/// square where every 2×2 block, wrapping around both edges, sums to
/// `2(n² + 1)`, and cells half a period apart along a diagonal are
/// complementary. The group adds value reversal to the eight grid
/// placements, giving 16 elements; the canonical set orders the corners
/// with the value-reversal clause strict.
pub fn most_perfect_magic_square(n: usize) -> Result<ModelBundle, ModelError> {
    const NAME: &str = "most-perfect";
    if n == 0 {
        return Err(ModelError::ZeroParameter { model: NAME });
    }
    if !n.is_multiple_of(4) {
        return Err(ModelError::NotDoublyEven { model: NAME, n });
    }
    let cells = n * n;
    if cells > 64 {
        return Err(ModelError::TooManyValues {
            model: NAME,
            needed: cells,
        });
    }
    let m = cells as i64;
    let mut csp = Csp::new(cells, cells, 1);
    csp.constraints = magic_constraints(n);
    let wrap = |k: usize| k % n + 1;
    for j in 1..=n {
        for i in 1..=n {
            let quad = [
                grid_cell(n, i, j),
                grid_cell(n, wrap(i), j),
                grid_cell(n, i, wrap(j)),
                grid_cell(n, wrap(i), wrap(j)),
            ];
            csp.constraints.push(Constraint::LinearEq {
                views: quad.iter().map(|&c| View::of_var(c)).collect(),
                coeffs: vec![1; 4],
                rhs: 2 * (m + 1),
            });
        }
    }
    let h = n / 2;
    for j in 1..=n {
        for i in 1..=n {
            let a = grid_cell(n, i, j);
            let b = grid_cell(n, (i + h - 1) % n + 1, (j + h - 1) % n + 1);
            if a < b {
                csp.constraints.push(Constraint::LinearEq {
                    views: vec![View::of_var(a), View::of_var(b)],
                    coeffs: vec![1, 1],
                    rhs: m + 1,
                });
            }
        }
    }
    let dihedral = dihedral_elements(n, cells, 1);
    let inv = Symmetry::value_inversion(cells, cells, 1);
    let mut els = dihedral.clone();
    for (name, g) in &dihedral {
        let label = if name == "id" {
            "inv".to_string()
        } else {
            format!("inv.{}", name)
        };
        els.push((label, inv.compose(g).unwrap()));
    }
    let mut gens = named_generators(&dihedral, &["r90", "v"]);
    gens.push(("inv".into(), inv));
    let group = SymmetryGroup::from_elements(cells, cells, 1, els, gens);
    Ok(ModelBundle {
        name: NAME,
        params: format!("n={}", n),
        csp,
        group,
        sbc: SymBreakSet::new("corner", corner_constraints(n, true)),
        naming: VarNaming::Grid(n),
    })
}

/// A graph plus the vertex blocks known to be interchangeable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GraphInstance {
    pub n: usize,
    /// 0-based, `u < v`, sorted, no duplicates.
    pub edges: Vec<(usize, usize)>,
    /// Partition of the vertices; within a block all vertices have
    /// identical adjacency, so any permutation of a block is an
    /// automorphism.
    pub blocks: Vec<Vec<usize>>,
}

/// Deterministic random graph. Vertices split into consecutive blocks of
/// size `1 + next_below(max_block)` (clamped to what is left); each block
/// is made a clique or left empty on a coin flip; each block pair is
/// joined by a full biclique or not on a coin flip. All draws come from
/// one splitmix64 stream seeded with `seed`, in exactly that order, so
/// `(v, max_block, seed)` pins the instance on every platform.
pub fn generate_graph(v: usize, max_block: usize, seed: u64) -> GraphInstance {
    let mut rng = SplitMix64::new(seed);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    while next < v {
        let size = (1 + rng.next_below(max_block as u64) as usize).min(v - next);
        blocks.push((next..next + size).collect());
        next += size;
    }
    let mut edges = Vec::new();
    for b in &blocks {
        if rng.coin() {
            for i in 0..b.len() {
                for j in i + 1..b.len() {
                    edges.push((b[i], b[j]));
                }
            }
        }
    }
    for bi in 0..blocks.len() {
        for bj in bi + 1..blocks.len() {
            if rng.coin() {
                for &u in &blocks[bi] {
                    for &w in &blocks[bj] {
                        edges.push((u.min(w), u.max(w)));
                    }
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    GraphInstance {
        n: v,
        edges,
        blocks,
    }
}

/// Coloring model over an explicit graph: adjacent vertices differ,
/// minimizing the number of colors used. The group permutes each
/// interchangeable block and the whole color range; the canonical set caps
/// vertex `i` at color `i` and sorts colors within blocks, which keeps one
/// minimum-cost member of every orbit.
pub fn coloring_from_graph(g: &GraphInstance, colors: usize) -> Result<ModelBundle, ModelError> {
    const NAME: &str = "coloring";
    if g.n == 0 || colors == 0 {
        return Err(ModelError::ZeroParameter { model: NAME });
    }
    if colors > 64 {
        return Err(ModelError::TooManyValues {
            model: NAME,
            needed: colors,
        });
    }
    let mut csp = Csp::new(g.n, colors, 0);
    for &(u, w) in &g.edges {
        csp.constraints.push(Constraint::AllDifferent(vec![
            View::of_var(u),
            View::of_var(w),
        ]));
    }
    csp.objective = Some(Objective::CountDistinct((0..g.n).collect()));
    let mut factors: Vec<GroupFactor> = g
        .blocks
        .iter()
        .filter(|b| b.len() > 1)
        .cloned()
        .map(GroupFactor::VarBlock)
        .collect();
    if colors > 1 {
        factors.push(GroupFactor::ValueSet((0..colors).collect()));
    }
    let group = SymmetryGroup::product(g.n, colors, 0, factors);
    let mut sbc_cs = Vec::new();
    for i in 0..g.n.min(colors - 1) {
        sbc_cs.push(Constraint::LinearLe {
            views: vec![View::of_var(i)],
            coeffs: vec![1],
            rhs: i as i64,
        });
    }
    for b in &g.blocks {
        for w in b.windows(2) {
            sbc_cs.push(Constraint::LessEq(View::of_var(w[0]), View::of_var(w[1])));
        }
    }
    Ok(ModelBundle {
        name: NAME,
        params: format!("v={} colors={}", g.n, colors),
        csp,
        group,
        sbc: SymBreakSet::new("precedence", sbc_cs),
        naming: VarNaming::Plain,
    })
}

/// Seeded coloring instance with as many colors available as vertices.
pub fn graph_coloring(v: usize, max_block: usize, seed: u64) -> Result<ModelBundle, ModelError> {
    graph_coloring_with_colors(v, max_block, seed, v)
}

pub fn graph_coloring_with_colors(
    v: usize,
    max_block: usize,
    seed: u64,
    colors: usize,
) -> Result<ModelBundle, ModelError> {
    if v == 0 || max_block == 0 {
        return Err(ModelError::ZeroParameter { model: "coloring" });
    }
    let graph = generate_graph(v, max_block, seed);
    let mut bundle = coloring_from_graph(&graph, colors)?;
    bundle.params = format!("v={} maxBlock={} seed={} colors={}", v, max_block, seed, colors);
    Ok(bundle)
}

/// Fixed-length code search: `v` rows of length `q·lambda` over symbols
/// `0..q`, each symbol appearing exactly `lambda` times per row, and every
/// row pair at Hamming distance exactly `d`. The group permutes rows and
/// columns; the canonical set orders both adjacent rows and adjacent
/// columns lexicographically.
pub fn efpa(v: usize, q: usize, lambda: usize, d: usize) -> Result<ModelBundle, ModelError> {
    const NAME: &str = "efpa";
    if v == 0 || q == 0 || lambda == 0 {
        return Err(ModelError::ZeroParameter { model: NAME });
    }
    if q > 64 {
        return Err(ModelError::TooManyValues {
            model: NAME,
            needed: q,
        });
    }
    let cols = q * lambda;
    let n_vars = v * cols;
    let row = |r: usize| -> Vec<View> { (0..cols).map(|c| View::of_var(r * cols + c)).collect() };
    let col = |c: usize| -> Vec<View> { (0..v).map(|r| View::of_var(r * cols + c)).collect() };
    let mut csp = Csp::new(n_vars, q, 0);
    for r in 0..v {
        for s in 0..q {
            csp.constraints.push(Constraint::Occurrence {
                views: row(r),
                value: s as i64,
                count: lambda,
            });
        }
    }
    for r1 in 0..v {
        for r2 in r1 + 1..v {
            csp.constraints.push(Constraint::HammingEq {
                a: row(r1),
                b: row(r2),
                distance: d,
            });
        }
    }
    let group = SymmetryGroup::product(
        n_vars,
        q,
        0,
        vec![GroupFactor::MatrixRowCol {
            var_base: 0,
            rows: v,
            cols,
        }],
    );
    let mut sbc_cs = Vec::new();
    for r in 0..v - 1 {
        sbc_cs.push(Constraint::Lex {
            a: row(r),
            b: row(r + 1),
            strict: false,
        });
    }
    for c in 0..cols - 1 {
        sbc_cs.push(Constraint::Lex {
            a: col(c),
            b: col(c + 1),
            strict: false,
        });
    }
    Ok(ModelBundle {
        name: NAME,
        params: format!("v={} q={} lambda={} d={}", v, q, lambda, d),
        csp,
        group,
        sbc: SymBreakSet::new("double-lex", sbc_cs),
        naming: VarNaming::Matrix { rows: v, cols },
    })
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum DimacsError {
    #[error("missing 'p edge' header")]
    MissingHeader,
    #[error("line {0}: {1}")]
    Bad(usize, String),
    #[error("block comments do not partition the vertices")]
    BadBlocks,
}

impl GraphInstance {
    /// DIMACS edge format, vertices 1-based. Blocks go into `c block ...`
    /// comment lines so an exported instance round-trips.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for b in &self.blocks {
            out.push_str("c block");
            for &v in b {
                out.push_str(&format!(" {}", v + 1));
            }
            out.push('\n');
        }
        out.push_str(&format!("p edge {} {}\n", self.n, self.edges.len()));
        for &(u, w) in &self.edges {
            out.push_str(&format!("e {} {}\n", u + 1, w + 1));
        }
        out
    }

    pub fn from_dimacs(s: &str) -> Result<GraphInstance, DimacsError> {
        let mut n: Option<usize> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let bad = |lineno: usize, msg: &str| DimacsError::Bad(lineno, msg.to_string());
        for (idx, line) in s.lines().enumerate() {
            let lineno = idx + 1;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.first() {
                None => {}
                Some(&"c") => {
                    if tokens.get(1) == Some(&"block") {
                        let mut b = Vec::new();
                        for t in &tokens[2..] {
                            let v: usize =
                                t.parse().map_err(|_| bad(lineno, "bad vertex number"))?;
                            if v == 0 {
                                return Err(bad(lineno, "vertices are 1-based"));
                            }
                            b.push(v - 1);
                        }
                        blocks.push(b);
                    }
                }
                Some(&"p") => {
                    if n.is_some() {
                        return Err(bad(lineno, "duplicate header"));
                    }
                    if tokens.len() != 4 || tokens[1] != "edge" {
                        return Err(bad(lineno, "header must be 'p edge <n> <m>'"));
                    }
                    n = Some(
                        tokens[2]
                            .parse()
                            .map_err(|_| bad(lineno, "bad vertex count"))?,
                    );
                }
                Some(&"e") => {
                    let n = n.ok_or(DimacsError::MissingHeader)?;
                    if tokens.len() != 3 {
                        return Err(bad(lineno, "edge line must be 'e <u> <v>'"));
                    }
                    let u: usize = tokens[1].parse().map_err(|_| bad(lineno, "bad endpoint"))?;
                    let w: usize = tokens[2].parse().map_err(|_| bad(lineno, "bad endpoint"))?;
                    if u == 0 || w == 0 || u > n || w > n {
                        return Err(bad(lineno, "endpoint out of range"));
                    }
                    if u == w {
                        return Err(bad(lineno, "self-loop"));
                    }
                    edges.push(((u - 1).min(w - 1), (u - 1).max(w - 1)));
                }
                Some(other) => {
                    return Err(bad(lineno, &format!("unrecognized line type '{}'", other)));
                }
            }
        }
        let n = n.ok_or(DimacsError::MissingHeader)?;
        edges.sort_unstable();
        edges.dedup();
        if blocks.is_empty() {
            blocks = (0..n).map(|v| vec![v]).collect();
        } else {
            let mut all: Vec<usize> = blocks.iter().flatten().copied().collect();
            all.sort_unstable();
            if all != (0..n).collect::<Vec<_>>() {
                return Err(DimacsError::BadBlocks);
            }
        }
        Ok(GraphInstance { n, edges, blocks })
    }
}

/// Renders a square assignment as a bordered grid, row by row.
pub fn format_grid(a: &Assignment, n: usize, offset: i64) -> String {
    let width = (0..a.len())
        .map(|v| a.external(v, offset).to_string().len())
        .max()
        .unwrap_or(1);
    let rule: String = {
        let mut s = String::from("+");
        for _ in 0..n {
            s.push_str(&"-".repeat(width + 2));
            s.push('+');
        }
        s
    };
    let mut out = String::new();
    out.push_str(&rule);
    out.push('\n');
    for j in 0..n {
        out.push('|');
        for i in 0..n {
            out.push_str(&format!(" {:>w$} |", a.external(j * n + i, offset), w = width));
        }
        out.push('\n');
        out.push_str(&rule);
        out.push('\n');
    }
    out
}

/// Renders a row-major matrix assignment as aligned space-separated values.
pub fn format_matrix(a: &Assignment, rows: usize, cols: usize, offset: i64) -> String {
    let width = (0..a.len())
        .map(|v| a.external(v, offset).to_string().len())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for r in 0..rows {
        for c in 0..cols {
            if c > 0 {
                out.push(' ');
            }
            out.push_str(&format!("{:>w$}", a.external(r * cols + c, offset), w = width));
        }
        out.push('\n');
    }
    out
}
