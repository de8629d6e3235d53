//! Combinatorial germs: bounded-length paths from a base vertex, modulo
//! bounded-area homotopy, with arcs oriented by a direction.
//!
//! For a budget `m`, the germ at `p` has one node per class of simplicial
//! paths of length at most `m` starting at `p`. Two paths with the same
//! endpoint are identified when the loop `π₁·π₂⁻¹` bounds a simplicial disk
//! of area at most `m`, and the relation is closed transitively. Extending a
//! path by one edge gives an arc between classes, oriented like that edge.
//! A germ *has an oriented loop* when this arc digraph has a directed cycle.
//!
//! Paths are undirected walks; a walk and its free reduction (backtracks
//! removed) are the same path, so nodes are built from reduced paths.
//!
//! Area is measured on closed edge loops as the number of *face moves* needed
//! to reach the trivial loop, where a face move replaces one edge of a
//! triangle by the other two or two consecutive edges by the third, and
//! backtracks cancel for free. [`AreaFiller`] answers "area ≤ b?" by
//! breadth-first search over cyclically reduced words, pruned by two sound
//! lower bounds: a loop that is nonzero in rational homology never fills, and
//! a loop of length `L` needs at least `⌈L/3⌉` moves.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::direction::Direction;
use crate::graph::{find_cycle, UnionFind};
use crate::triangulation::{face, Triangulation, VertexId};
use crate::Rational;

/// Largest budget accepted by default.
pub const DEFAULT_BUDGET_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermError {
    #[error("vertex {0} is not in the triangulation")]
    UnknownVertex(VertexId),
    #[error("budget {m} exceeds the cap {cap}")]
    BudgetTooLarge { m: usize, cap: usize },
    #[error("loop is not closed along edges: {0}")]
    NotClosed(String),
}

/// Best known bounds on the area of one canonical word.
#[derive(Debug, Clone, Copy)]
struct Bounds {
    /// Area is at least this.
    lo: usize,
    /// Area is at most this, when known.
    hi: Option<usize>,
}

/// Bounded-area disk filling with memoized bounds.
#[derive(Debug, Clone)]
pub struct AreaFiller<'t> {
    t: &'t Triangulation,
    faces: HashSet<[VertexId; 3]>,
    /// Third vertices of the faces on each edge.
    apexes: HashMap<[VertexId; 2], Vec<VertexId>>,
    /// Integer basis of the weights satisfying every face equation, used to
    /// reject loops that are nonzero in rational homology.
    cocycles: Vec<Vec<i64>>,
    pruning: bool,
    memo: HashMap<Vec<VertexId>, Bounds>,
}

impl<'t> AreaFiller<'t> {
    pub fn new(t: &'t Triangulation) -> Self {
        let faces: HashSet<[VertexId; 3]> = t.faces().iter().copied().collect();
        let mut apexes: HashMap<[VertexId; 2], Vec<VertexId>> = HashMap::new();
        for &[a, b, c] in t.faces() {
            apexes.entry([a, b]).or_default().push(c);
            apexes.entry([a, c]).or_default().push(b);
            apexes.entry([b, c]).or_default().push(a);
        }
        for list in apexes.values_mut() {
            list.sort_unstable();
        }
        Self {
            t,
            faces,
            apexes,
            cocycles: cocycle_basis(t),
            pruning: true,
            memo: HashMap::new(),
        }
    }

    /// Plain breadth-first search without lower-bound pruning or memoized
    /// shortcuts; exponentially slower, useful as a reference.
    pub fn without_pruning(t: &'t Triangulation) -> Self {
        Self {
            pruning: false,
            ..Self::new(t)
        }
    }

    /// Whether the closed vertex sequence `closed` (first vertex repeated at
    /// the end) bounds a disk of area at most `budget`.
    pub fn fill_area_at_most(&mut self, closed: &[VertexId], budget: usize) -> Result<bool, GermError> {
        let word = self.cyclic_word(closed)?;
        Ok(self.fills(word, budget))
    }

    /// Minimum area if it is at most `max`.
    pub fn area(&mut self, closed: &[VertexId], max: usize) -> Result<Option<usize>, GermError> {
        let word = self.cyclic_word(closed)?;
        Ok((0..=max).find(|&b| self.fills(word.clone(), b)))
    }

    fn cyclic_word(&self, closed: &[VertexId]) -> Result<Vec<VertexId>, GermError> {
        if closed.is_empty() {
            return Ok(Vec::new());
        }
        if closed.first() != closed.last() {
            return Err(GermError::NotClosed(format!("{closed:?} does not return to its start")));
        }
        for w in closed.windows(2) {
            if self.t.edge_index(w[0], w[1]).is_none() {
                return Err(GermError::NotClosed(format!("{}-{} is not an edge", w[0], w[1])));
            }
        }
        Ok(canonical(&reduce_cyclic(&closed[..closed.len() - 1])))
    }

    /// `true` if the loop is zero in rational homology.
    fn null_homologous(&self, word: &[VertexId]) -> bool {
        let n = word.len();
        self.cocycles.iter().all(|y| {
            (0..n)
                .map(|i| self.signed_edge_value(y, word[i], word[(i + 1) % n]))
                .sum::<i64>()
                == 0
        })
    }

    fn signed_edge_value(&self, y: &[i64], a: VertexId, b: VertexId) -> i64 {
        let v = y[self.t.edge_index(a, b).expect("loop follows edges")];
        if a < b {
            v
        } else {
            -v
        }
    }

    fn bounds(&mut self, word: &[VertexId]) -> Bounds {
        if let Some(b) = self.memo.get(word) {
            return *b;
        }
        let b = if word.is_empty() {
            Bounds { lo: 0, hi: Some(0) }
        } else if !self.pruning {
            Bounds { lo: 1, hi: None }
        } else if !self.null_homologous(word) {
            Bounds { lo: usize::MAX, hi: None }
        } else {
            Bounds {
                lo: word.len().div_ceil(3),
                hi: None,
            }
        };
        if self.pruning {
            self.memo.insert(word.to_vec(), b);
        }
        b
    }

    fn record(&mut self, word: &[VertexId], f: impl FnOnce(&mut Bounds)) {
        if self.pruning {
            if let Some(b) = self.memo.get_mut(word) {
                f(b);
            }
        }
    }

    fn fills(&mut self, start: Vec<VertexId>, budget: usize) -> bool {
        let b0 = self.bounds(&start);
        if b0.hi.is_some_and(|hi| hi <= budget) {
            return true;
        }
        if b0.lo > budget {
            return false;
        }
        let mut seen: HashSet<Vec<VertexId>> = HashSet::from([start.clone()]);
        let mut frontier = vec![start.clone()];
        for depth in 0..budget {
            let mut next = Vec::new();
            for word in &frontier {
                let remaining = budget - depth - 1;
                // Each move shortens a word by at most three letters.
                let max_len = if self.pruning { 3 * remaining } else { usize::MAX };
                for child in self.moves(word, max_len) {
                    let cb = self.bounds(&child);
                    if let Some(hi) = cb.hi {
                        if hi <= remaining {
                            let found = depth + 1 + hi;
                            self.record(&start, |b| b.hi = Some(b.hi.map_or(found, |h| h.min(found))));
                            return true;
                        }
                    }
                    if cb.lo > remaining || !seen.insert(child.clone()) {
                        continue;
                    }
                    next.push(child);
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        self.record(&start, |b| b.lo = b.lo.max(budget + 1));
        false
    }

    /// Canonical words one face move away, skipping those longer than
    /// `max_len` after reduction.
    fn moves(&self, word: &[VertexId], max_len: usize) -> Vec<Vec<VertexId>> {
        let n = word.len();
        let mut out = Vec::new();
        let mut w = Vec::with_capacity(n + 1);
        let keep = |w: &[VertexId], out: &mut Vec<Vec<VertexId>>| {
            let r = reduce_cyclic(w);
            if r.len() <= max_len {
                out.push(canonical(&r));
            }
        };
        for i in 0..n {
            let (a, b) = (word[i], word[(i + 1) % n]);
            let key = if a < b { [a, b] } else { [b, a] };
            for &c in self.apexes.get(&key).map(Vec::as_slice).unwrap_or(&[]) {
                w.clear();
                w.extend_from_slice(&word[..=i]);
                w.push(c);
                w.extend_from_slice(&word[i + 1..]);
                keep(&w, &mut out);
            }
            let (prev, next) = (word[(i + n - 1) % n], word[(i + 1) % n]);
            if prev != next && self.faces.contains(&face(prev, word[i], next)) {
                w.clear();
                w.extend_from_slice(&word[..i]);
                w.extend_from_slice(&word[i + 1..]);
                keep(&w, &mut out);
            }
        }
        out
    }
}

/// One-shot form of [`AreaFiller::fill_area_at_most`].
pub fn fill_area_at_most(t: &Triangulation, closed: &[VertexId], budget: usize) -> Result<bool, GermError> {
    AreaFiller::new(t).fill_area_at_most(closed, budget)
}

/// Free reduction of a path given as a vertex sequence.
pub fn reduce_path(path: &[VertexId]) -> Vec<VertexId> {
    let mut stack: Vec<VertexId> = Vec::with_capacity(path.len());
    for &v in path {
        if stack.len() >= 2 && stack[stack.len() - 2] == v {
            stack.pop();
        } else if stack.last() != Some(&v) {
            stack.push(v);
        }
    }
    stack
}

/// Cyclic free reduction of a cyclic word (vertex `i` joined to `i + 1` and
/// the last to the first). The trivial loop is the empty word.
pub fn reduce_cyclic(word: &[VertexId]) -> Vec<VertexId> {
    if word.is_empty() {
        return Vec::new();
    }
    let mut closed = word.to_vec();
    closed.push(word[0]);
    let mut s = reduce_path(&closed);
    // s starts and ends at word[0]; trim backtracks across the base point.
    while s.len() >= 3 && s[1] == s[s.len() - 2] {
        s.pop();
        s.remove(0);
    }
    s.pop();
    if s.len() < 3 {
        Vec::new()
    } else {
        s
    }
}

/// Least rotation of the word or of its reversal.
pub fn canonical(word: &[VertexId]) -> Vec<VertexId> {
    let n = word.len();
    if n == 0 {
        return Vec::new();
    }
    // Letter k of the rotation starting at `start`, read backwards if `rev`.
    let letter = |rev: bool, start: usize, k: usize| {
        if rev {
            word[(start + n - k % n) % n]
        } else {
            word[(start + k) % n]
        }
    };
    let mut best = (false, 0usize);
    for rev in [false, true] {
        for start in 0..n {
            let less = (0..n)
                .map(|k| letter(rev, start, k).cmp(&letter(best.0, best.1, k)))
                .find(|o| o.is_ne())
                .is_some_and(|o| o.is_lt());
            if less {
                best = (rev, start);
            }
        }
    }
    (0..n).map(|k| letter(best.0, best.1, k)).collect()
}

/// Integer basis of `{ y : y_ab + y_bc - y_ac = 0 for every face a<b<c }`.
fn cocycle_basis(t: &Triangulation) -> Vec<Vec<i64>> {
    let cols = t.edges().len();
    let mut rows: Vec<Vec<Rational>> = t
        .faces()
        .iter()
        .map(|&[a, b, c]| {
            let mut r = vec![Rational::zero(); cols];
            r[t.edge_index(a, b).unwrap()] += Rational::one();
            r[t.edge_index(b, c).unwrap()] += Rational::one();
            r[t.edge_index(a, c).unwrap()] -= Rational::one();
            r
        })
        .collect();
    // Reduced row echelon form.
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut y = vec![Rational::zero(); cols];
            y[f] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                y[pc] = -rows[i][f].clone();
            }
            let lcm = y.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
            y.iter()
                .map(|v| (v * Rational::from_integer(lcm.clone())).to_integer().to_i64().expect("small cocycle"))
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GermNode {
    /// Least member of the class (vertex sequence starting at the base).
    pub representative: Vec<VertexId>,
    pub endpoint: VertexId,
    /// Number of reduced paths in the class.
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GermComplex {
    pub base: VertexId,
    pub budget: usize,
    /// Ordered by representative; node 0 is the class of the empty path.
    pub nodes: Vec<GermNode>,
    /// `(from, to)` node indices, sorted and without repeats.
    pub arcs: Vec<(usize, usize)>,
}

impl GermComplex {
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.arcs {
            adj[a].push(b);
        }
        adj
    }

    /// Text dump with one `node` line per class and one `arc` line per arc.
    pub fn to_dot(&self) -> String {
        let mut out = format!("# germ base={} m={}\n", self.base, self.budget);
        for (i, n) in self.nodes.iter().enumerate() {
            let path: Vec<String> = n.representative.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "node {i} end={} size={} path={}", n.endpoint, n.size, path.join("-"));
        }
        for (a, b) in &self.arcs {
            let _ = writeln!(out, "arc {a} {b}");
        }
        out
    }
}

/// Limits for [`build_germ_with`].
#[derive(Debug, Clone, Copy)]
pub struct GermOptions {
    pub cap: usize,
}

impl Default for GermOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_BUDGET_CAP,
        }
    }
}

pub fn build_germ(t: &Triangulation, d: &Direction, p: VertexId, m: usize) -> Result<GermComplex, GermError> {
    build_germ_with(&mut AreaFiller::new(t), d, p, m, GermOptions::default())
}

/// Builds the germ reusing `filler`'s memo (which must belong to the same
/// triangulation).
pub fn build_germ_with(
    filler: &mut AreaFiller<'_>,
    d: &Direction,
    p: VertexId,
    m: usize,
    options: GermOptions,
) -> Result<GermComplex, GermError> {
    let t = filler.t;
    if !t.contains_vertex(p) {
        return Err(GermError::UnknownVertex(p));
    }
    if m > options.cap {
        return Err(GermError::BudgetTooLarge { m, cap: options.cap });
    }

    // All reduced paths of length <= m, in lexicographic order.
    let mut paths: BTreeSet<Vec<VertexId>> = BTreeSet::new();
    let mut stack = vec![vec![p]];
    while let Some(path) = stack.pop() {
        if path.len() <= m {
            let last = *path.last().unwrap();
            let prev = path.len().checked_sub(2).map(|i| path[i]);
            for &x in t.neighbors(last) {
                if Some(x) != prev {
                    let mut longer = path.clone();
                    longer.push(x);
                    stack.push(longer);
                }
            }
        }
        paths.insert(path);
    }
    let paths: Vec<Vec<VertexId>> = paths.into_iter().collect();
    let index: HashMap<&[VertexId], usize> = paths.iter().enumerate().map(|(i, q)| (q.as_slice(), i)).collect();

    // Paths can only be identified when they end at the same vertex and
    // differ by a loop that vanishes in rational homology.
    let mut groups: BTreeMap<(VertexId, Vec<i64>), Vec<usize>> = BTreeMap::new();
    for (i, path) in paths.iter().enumerate() {
        let signature: Vec<i64> = filler
            .cocycles
            .iter()
            .map(|y| path.windows(2).map(|w| filler.signed_edge_value(y, w[0], w[1])).sum())
            .collect();
        groups.entry((*path.last().unwrap(), signature)).or_default().push(i);
    }
    // The classes are the components of the "fills within m" graph. Pairs
    // are tried shortest loop first, so most pairs are already joined by the
    // time they come up and need no search.
    let mut uf = UnionFind::new(paths.len());
    for members in groups.values() {
        let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
        for (x, &i) in members.iter().enumerate() {
            for &j in &members[x + 1..] {
                pairs.push((loop_through(&paths[i], &paths[j]).len(), i, j));
            }
        }
        pairs.sort_unstable();
        for (_, i, j) in pairs {
            if !uf.same(i, j) && filler.fill_area_at_most(&loop_through(&paths[i], &paths[j]), m)? {
                uf.union(i, j);
            }
        }
    }

    // Classes numbered by their least member; paths are already sorted.
    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    let mut nodes: Vec<GermNode> = Vec::new();
    let mut class = vec![0usize; paths.len()];
    for (i, path) in paths.iter().enumerate() {
        let root = uf.find(i);
        let c = *class_of_root.entry(root).or_insert_with(|| {
            nodes.push(GermNode {
                representative: path.clone(),
                endpoint: *path.last().unwrap(),
                size: 0,
            });
            nodes.len() - 1
        });
        nodes[c].size += 1;
        class[i] = c;
    }

    let mut arcs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, path) in paths.iter().enumerate() {
        if path.len() > m {
            continue;
        }
        let last = *path.last().unwrap();
        for &x in t.neighbors(last) {
            let mut longer = path.clone();
            longer.push(x);
            let j = index[reduce_path(&longer).as_slice()];
            let (a, b) = (class[i], class[j]);
            if a == b {
                continue;
            }
            if d.points(last, x) == Some(true) {
                arcs.insert((a, b));
            } else {
                arcs.insert((b, a));
            }
        }
    }
    Ok(GermComplex {
        base: p,
        budget: m,
        nodes,
        arcs: arcs.into_iter().collect(),
    })
}

/// The closed path `a · b⁻¹` for two paths with common start and end.
fn loop_through(a: &[VertexId], b: &[VertexId]) -> Vec<VertexId> {
    let common = a.iter().zip(b).take_while(|(x, y)| x == y).count().max(1);
    let mut closed = a[common - 1..].to_vec();
    closed.extend(b[common - 1..].iter().rev().skip(1));
    closed
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GermLoop {
    /// Node indices; the last has an arc back to the first.
    pub nodes: Vec<usize>,
    /// Endpoint vertex of each node.
    pub vertices: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GermAcyclicity {
    pub acyclic: bool,
    pub witness: Option<GermLoop>,
}

/// Whether the germ's arcs form a directed acyclic graph; otherwise a
/// directed loop of classes.
pub fn germ_acyclic(g: &GermComplex) -> GermAcyclicity {
    match find_cycle(&g.adjacency()) {
        None => GermAcyclicity {
            acyclic: true,
            witness: None,
        },
        Some(nodes) => GermAcyclicity {
            acyclic: false,
            witness: Some(GermLoop {
                vertices: nodes.iter().map(|&n| g.nodes[n].endpoint).collect(),
                nodes,
            }),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{pentachoron, product, ClosedSurface};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn flipped() -> (Triangulation, Direction) {
        let t = pentachoron();
        let d = Direction::global_order(&t).flipped(0, 1).unwrap().flipped(1, 2).unwrap();
        (t, d)
    }

    #[test]
    fn word_reduction() {
        assert_eq!(reduce_path(&[0, 1, 0, 2]), vec![0, 2]);
        assert_eq!(reduce_cyclic(&[0, 1]), Vec::<u32>::new());
        assert_eq!(reduce_cyclic(&[1, 0, 2, 3, 2, 0]), Vec::<u32>::new());
        assert_eq!(reduce_cyclic(&[4, 0, 1, 2, 0]), vec![0, 1, 2]);
        assert_eq!(canonical(&[2, 0, 1]), vec![0, 1, 2]);
        assert_eq!(canonical(&[2, 1, 0]), vec![0, 1, 2]);
    }

    #[test]
    fn face_and_backtrack_fills() {
        let t = pentachoron();
        assert!(fill_area_at_most(&t, &[0, 1, 2, 0], 1).unwrap());
        assert!(!fill_area_at_most(&t, &[0, 1, 2, 0], 0).unwrap());
        assert!(fill_area_at_most(&t, &[0, 3, 0], 0).unwrap());
        assert!(fill_area_at_most(&t, &[], 0).unwrap());
        assert!(matches!(fill_area_at_most(&t, &[0, 1, 2], 3), Err(GermError::NotClosed(_))));
    }

    #[test]
    fn vertical_loop_never_fills() {
        let b = product(&ClosedSurface::tetrahedron_boundary(), 3).unwrap();
        let v = |k| b.vertex(0, k);
        let closed = [v(0), v(1), v(2), v(0)];
        assert!(!fill_area_at_most(&b.triangulation, &closed, 10).unwrap());
    }

    #[test]
    fn square_needs_two_moves() {
        let t = pentachoron();
        let mut f = AreaFiller::without_pruning(&t);
        assert_eq!(f.area(&[0, 1, 2, 3, 0], 4).unwrap(), Some(2));
    }

    #[test]
    fn pruned_search_agrees_with_plain_search() {
        let t = pentachoron();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut fast = AreaFiller::new(&t);
        for _ in 0..40 {
            let len = rng.gen_range(3..=5);
            let mut closed = vec![rng.gen_range(0..5u32)];
            for _ in 1..len {
                let last = *closed.last().unwrap();
                let nb = t.neighbors(last);
                closed.push(nb[rng.gen_range(0..nb.len())]);
            }
            // Every pair of pentachoron vertices spans an edge.
            closed.push(closed[0]);
            if closed.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            let mut slow = AreaFiller::without_pruning(&t);
            for b in 0..=3 {
                assert_eq!(
                    fast.fill_area_at_most(&closed, b).unwrap(),
                    slow.fill_area_at_most(&closed, b).unwrap(),
                    "{closed:?} at {b}"
                );
            }
        }
    }

    #[test]
    fn empty_budget_gives_one_node() {
        let t = pentachoron();
        let g = build_germ(&t, &Direction::global_order(&t), 2, 0).unwrap();
        assert_eq!(g.nodes.len(), 1);
        assert!(g.arcs.is_empty());
    }

    #[test]
    fn global_order_germs_are_acyclic() {
        let t = pentachoron();
        let d = Direction::global_order(&t);
        for m in 1..=3 {
            let g = build_germ(&t, &d, 0, m).unwrap();
            assert!(germ_acyclic(&g).acyclic);
            for &(a, b) in &g.arcs {
                assert!(g.nodes[a].endpoint < g.nodes[b].endpoint);
            }
        }
    }

    #[test]
    fn flipped_germ_has_a_loop() {
        let (t, d) = flipped();
        let g = build_germ(&t, &d, 1, 3).unwrap();
        let verdict = germ_acyclic(&g);
        assert!(!verdict.acyclic);
        let w = verdict.witness.unwrap();
        let arcs: HashSet<(usize, usize)> = g.arcs.iter().copied().collect();
        for i in 0..w.nodes.len() {
            let (a, b) = (w.nodes[i], w.nodes[(i + 1) % w.nodes.len()]);
            assert!(arcs.contains(&(a, b)));
            assert_eq!(d.points(g.nodes[a].endpoint, g.nodes[b].endpoint), Some(true));
        }
    }

    #[test]
    fn budget_and_vertex_errors() {
        let t = pentachoron();
        let d = Direction::global_order(&t);
        assert_eq!(
            build_germ(&t, &d, 0, 99).unwrap_err(),
            GermError::BudgetTooLarge { m: 99, cap: 6 }
        );
        assert_eq!(build_germ(&t, &d, 7, 1).unwrap_err(), GermError::UnknownVertex(7));
    }
}
