//! Orthogonal-pair form of a transversal representation pair, its orthogonal
//! array, the three-class incidence graph of the array, and a canonical
//! certificate for that graph (colour refinement with individualization).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::square::Square;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EquivalenceError {
    #[error("squares must be Latin")]
    NotLatin,
    #[error("squares have different orders {0} and {1}")]
    OrderMismatch(usize, usize),
    #[error("not a transversal representation pair")]
    NotTrp,
    #[error("squares are not orthogonal")]
    NotOrthogonal,
}

/// `(p⁻¹q, q)`, which is an orthogonal pair whenever `(p, q)` is a transversal
/// representation pair of Latin squares.
pub fn to_orthogonal_pair(p: &Square, q: &Square) -> Result<(Square, Square), EquivalenceError> {
    if p.order() != q.order() {
        return Err(EquivalenceError::OrderMismatch(p.order(), q.order()));
    }
    if !p.is_latin() || !q.is_latin() {
        return Err(EquivalenceError::NotLatin);
    }
    if !p.is_trp(q).unwrap_or(false) {
        return Err(EquivalenceError::NotTrp);
    }
    let z = p
        .column_inverse()
        .and_then(|inv| inv.compose(q))
        .map_err(|_| EquivalenceError::NotTrp)?;
    Ok((z, q.clone()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthogonalArray {
    pub n: usize,
    pub k: usize,
    pub rows: Vec<Vec<u8>>,
}

impl OrthogonalArray {
    /// Columns: row index, column index, symbol of `a`, symbol of `b`.
    pub fn from_pair(a: &Square, b: &Square) -> Result<Self, EquivalenceError> {
        if a.order() != b.order() {
            return Err(EquivalenceError::OrderMismatch(a.order(), b.order()));
        }
        if !a.is_latin() || !b.is_latin() {
            return Err(EquivalenceError::NotLatin);
        }
        if !a.is_orthogonal(b).unwrap_or(false) {
            return Err(EquivalenceError::NotOrthogonal);
        }
        Ok(Self::from_pair_unchecked(a, b))
    }

    /// The same four-column table without requiring orthogonality.
    pub fn from_pair_unchecked(a: &Square, b: &Square) -> Self {
        let n = a.order();
        let rows = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| vec![i as u8, j as u8, a.get(i, j) as u8, b.get(i, j) as u8])
            .collect();
        OrthogonalArray { n, k: 4, rows }
    }

    /// Every pair of columns shows each ordered symbol pair exactly once.
    pub fn is_orthogonal_array(&self) -> bool {
        let n = self.n;
        if self.rows.len() != n * n {
            return false;
        }
        for c1 in 0..self.k {
            for c2 in c1 + 1..self.k {
                let mut seen = vec![false; n * n];
                for r in &self.rows {
                    let idx = r[c1] as usize * n + r[c2] as usize;
                    if seen[idx] {
                        return false;
                    }
                    seen[idx] = true;
                }
            }
        }
        true
    }
}

/// Vertex-coloured undirected graph. For a graph built from an array the
/// colours are 1 (columns), 2 (column-symbol pairs) and 3 (rows).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairGraph {
    colours: Vec<u8>,
    adj: Vec<Vec<u32>>,
}

impl PairGraph {
    pub fn from_array(o: &OrthogonalArray) -> Self {
        let (n, k) = (o.n, o.k);
        let type2 = |c: usize, s: usize| k + c * n + s;
        let first3 = k + k * n;
        let v = first3 + o.rows.len();
        let mut colours = vec![1u8; k];
        colours.extend(std::iter::repeat_n(2u8, k * n));
        colours.extend(std::iter::repeat_n(3u8, o.rows.len()));
        let mut edges = Vec::new();
        for c in 0..k {
            for s in 0..n {
                edges.push((c, type2(c, s)));
            }
        }
        for (r, row) in o.rows.iter().enumerate() {
            for (c, &s) in row.iter().enumerate() {
                edges.push((first3 + r, type2(c, s as usize)));
            }
        }
        Self::from_edges(colours, &edges, v)
    }

    pub fn from_edges(colours: Vec<u8>, edges: &[(usize, usize)], num_vertices: usize) -> Self {
        assert_eq!(colours.len(), num_vertices);
        let mut adj = vec![Vec::new(); num_vertices];
        for &(u, w) in edges {
            assert!(u != w, "loop at {u}");
            adj[u].push(w as u32);
            adj[w].push(u as u32);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        PairGraph { colours, adj }
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn colour(&self, v: usize) -> u8 {
        self.colours[v]
    }

    pub fn neighbours(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        self.adj[u].binary_search(&(w as u32)).is_ok()
    }

    /// Number of vertices of each colour, by ascending colour.
    pub fn class_sizes(&self) -> Vec<(u8, usize)> {
        let mut sizes: Vec<(u8, usize)> = Vec::new();
        let mut sorted = self.colours.clone();
        sorted.sort_unstable();
        for c in sorted {
            match sizes.last_mut() {
                Some((last, count)) if *last == c => *count += 1,
                _ => sizes.push((c, 1)),
            }
        }
        sizes
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.num_edges());
        for (u, list) in self.adj.iter().enumerate() {
            for &w in list {
                if u < w as usize {
                    out.push((u, w as usize));
                }
            }
        }
        out
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> PairGraph {
        let v = self.num_vertices();
        let mut colours = vec![0u8; v];
        for (old, &new) in perm.iter().enumerate() {
            colours[new] = self.colours[old];
        }
        let edges: Vec<(usize, usize)> = self.edges().into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
        PairGraph::from_edges(colours, &edges, v)
    }

    /// `p edge V E` header, one `e u v` line per edge (1-based) and one
    /// `c colour <class> <vertices>` line per colour class.
    pub fn to_dimacs_graph(&self) -> String {
        let mut out = String::new();
        for (c, _) in self.class_sizes() {
            let members: Vec<String> = (0..self.num_vertices())
                .filter(|&v| self.colours[v] == c)
                .map(|v| (v + 1).to_string())
                .collect();
            writeln!(out, "c colour {c} {}", members.join(" ")).unwrap();
        }
        writeln!(out, "p edge {} {}", self.num_vertices(), self.num_edges()).unwrap();
        for (u, w) in self.edges() {
            writeln!(out, "e {} {}", u + 1, w + 1).unwrap();
        }
        out
    }
}

/// Class sizes followed by the canonical adjacency bitmap. Two graphs have
/// equal certificates exactly when a colour-preserving isomorphism exists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Certificate(pub Vec<u8>);

impl Certificate {
    pub fn to_hex(&self) -> String {
        self.0.iter().fold(String::with_capacity(self.0.len() * 2), |mut s, b| {
            write!(s, "{b:02x}").unwrap();
            s
        })
    }
}

/// Ordered partition of the vertices; `cell[v]` is the position of the first
/// vertex of v's cell in the ordering, so equal cells share a value.
type Cells = Vec<u32>;

struct Canonizer<'g> {
    g: &'g PairGraph,
    best: Option<(Vec<u64>, Vec<u32>)>,
    first_leaf: Option<(Vec<u64>, Vec<u32>)>,
    generators: Vec<Vec<u32>>,
}

impl<'g> Canonizer<'g> {
    fn refine(&self, cells: &mut Cells) {
        let v = self.g.num_vertices();
        let mut count = distinct(cells);
        loop {
            let mut keyed: Vec<(u32, Vec<u32>, usize)> = (0..v)
                .map(|x| {
                    let mut sig: Vec<u32> = self.g.adj[x].iter().map(|&w| cells[w as usize]).collect();
                    sig.sort_unstable();
                    (cells[x], sig, x)
                })
                .collect();
            keyed.sort_unstable();
            let mut pos = 0;
            for idx in 0..v {
                if idx > 0 && (keyed[idx].0 != keyed[idx - 1].0 || keyed[idx].1 != keyed[idx - 1].1) {
                    pos = idx;
                }
                cells[keyed[idx].2] = pos as u32;
            }
            let next = distinct(cells);
            if next == count {
                return;
            }
            count = next;
        }
    }

    fn target_cell(&self, cells: &Cells) -> Option<u32> {
        let v = cells.len();
        let mut size = vec![0usize; v];
        for &c in cells {
            size[c as usize] += 1;
        }
        let mut best: Option<(usize, u32)> = None;
        for (c, &s) in size.iter().enumerate() {
            if s > 1 && best.is_none_or(|(bs, _)| s > bs) {
                best = Some((s, c as u32));
            }
        }
        best.map(|(_, c)| c)
    }

    fn leaf_matrix(&self, cells: &Cells) -> Vec<u64> {
        let v = self.g.num_vertices();
        let words = v.div_ceil(64);
        let mut m = vec![0u64; v * words];
        for x in 0..v {
            let rx = cells[x] as usize;
            for &w in &self.g.adj[x] {
                let cw = cells[w as usize] as usize;
                m[rx * words + cw / 64] |= 1 << (cw % 64);
            }
        }
        m
    }

    fn search(&mut self, mut cells: Cells, prefix: &mut Vec<u32>) {
        self.refine(&mut cells);
        let Some(target) = self.target_cell(&cells) else {
            self.leaf(cells);
            return;
        };
        let members: Vec<u32> = (0..cells.len() as u32).filter(|&x| cells[x as usize] == target).collect();
        let mut explored: Vec<u32> = Vec::new();
        for &x in &members {
            if !explored.is_empty() {
                let orbits = self.orbits_fixing(prefix);
                if explored.iter().any(|&y| find(&orbits, y) == find(&orbits, x)) {
                    continue;
                }
            }
            explored.push(x);
            let mut child = cells.clone();
            for &y in &members {
                if y != x {
                    child[y as usize] = target + 1;
                }
            }
            prefix.push(x);
            self.search(child, prefix);
            prefix.pop();
        }
    }

    fn leaf(&mut self, cells: Cells) {
        let m = self.leaf_matrix(&cells);
        for reference in [&self.first_leaf, &self.best].into_iter().flatten() {
            if reference.0 == m {
                // vertex x here sits where vertex y sat at the reference leaf
                let mut at = vec![0u32; cells.len()];
                for (y, &pos) in reference.1.iter().enumerate() {
                    at[pos as usize] = y as u32;
                }
                let gamma: Vec<u32> = cells.iter().map(|&pos| at[pos as usize]).collect();
                if gamma.iter().enumerate().any(|(x, &y)| x as u32 != y) {
                    self.generators.push(gamma);
                }
                return;
            }
        }
        if self.first_leaf.is_none() {
            self.first_leaf = Some((m.clone(), cells.clone()));
        }
        if self.best.as_ref().is_none_or(|(b, _)| m < *b) {
            self.best = Some((m, cells));
        }
    }

    fn orbits_fixing(&self, prefix: &[u32]) -> Vec<u32> {
        let mut parent: Vec<u32> = (0..self.g.num_vertices() as u32).collect();
        for gamma in &self.generators {
            if prefix.iter().any(|&p| gamma[p as usize] != p) {
                continue;
            }
            for (x, &y) in gamma.iter().enumerate() {
                let (a, b) = (find(&parent, x as u32), find(&parent, y));
                if a != b {
                    parent[a.max(b) as usize] = a.min(b);
                }
            }
        }
        parent
    }
}

fn find(parent: &[u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        x = parent[x as usize];
    }
    x
}

fn distinct(cells: &Cells) -> usize {
    let mut seen = vec![false; cells.len()];
    cells.iter().filter(|&&c| !std::mem::replace(&mut seen[c as usize], true)).count()
}

/// Canonical certificate of a vertex-coloured graph.
pub fn canonicalize(g: &PairGraph) -> Certificate {
    let v = g.num_vertices();
    let mut order: Vec<usize> = (0..v).collect();
    order.sort_by_key(|&x| g.colours[x]);
    let mut cells = vec![0u32; v];
    for (idx, &x) in order.iter().enumerate() {
        cells[x] = if idx > 0 && g.colours[order[idx - 1]] == g.colours[x] {
            cells[order[idx - 1]]
        } else {
            idx as u32
        };
    }
    let mut c = Canonizer {
        g,
        best: None,
        first_leaf: None,
        generators: Vec::new(),
    };
    if v > 0 {
        c.search(cells, &mut Vec::new());
    }

    let mut bytes = Vec::new();
    let sizes = g.class_sizes();
    bytes.extend((sizes.len() as u32).to_le_bytes());
    for (colour, size) in sizes {
        bytes.push(colour);
        bytes.extend((size as u32).to_le_bytes());
    }
    if let Some((m, _)) = c.best {
        for word in m {
            bytes.extend(word.to_le_bytes());
        }
    }
    Certificate(bytes)
}

/// Certificate of the orthogonal-pair form of a transversal representation pair.
pub fn pair_certificate(p: &Square, q: &Square) -> Result<Certificate, EquivalenceError> {
    let (a, b) = to_orthogonal_pair(p, q)?;
    let o = OrthogonalArray::from_pair(&a, &b)?;
    Ok(canonicalize(&PairGraph::from_array(&o)))
}

/// Groups indices by equal certificate; classes appear in order of first
/// member, members in input order.
pub fn group_by_certificate(certs: &[Certificate]) -> Vec<Vec<usize>> {
    let mut classes: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut index: std::collections::HashMap<&Certificate, usize> = std::collections::HashMap::new();
    for (i, c) in certs.iter().enumerate() {
        match index.get(c) {
            Some(&k) => classes[k].1.push(i),
            None => {
                index.insert(c, classes.len());
                classes.push((i, vec![i]));
            }
        }
    }
    classes.into_iter().map(|(_, m)| m).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> Square {
        Square::cyclic(3)
    }

    fn c3p() -> Square {
        Square::from_fn(3, |i, j| (i + 2 * j) % 3)
    }

    #[test]
    fn orthogonal_pair_of_small_trp() {
        let q = c3().compose(&c3()).unwrap();
        assert_eq!(q, c3p());
        let (a, b) = to_orthogonal_pair(&c3(), &q).unwrap();
        assert_eq!(a, c3());
        assert_eq!(b, c3p());
        assert!(a.is_orthogonal(&b).unwrap());
        // c3 composed with c3p has constant rows
        let flat = c3().compose(&c3p()).unwrap();
        assert_eq!(flat, Square::identity(3));
        assert_eq!(to_orthogonal_pair(&c3(), &flat), Err(EquivalenceError::NotLatin));
    }

    #[test]
    fn array_and_graph_shape() {
        let o = OrthogonalArray::from_pair(&c3(), &c3p()).unwrap();
        assert_eq!(o.rows.len(), 9);
        assert!(o.is_orthogonal_array());
        assert_eq!(OrthogonalArray::from_pair(&c3(), &c3()), Err(EquivalenceError::NotOrthogonal));
        let g = PairGraph::from_array(&o);
        assert_eq!(g.num_vertices(), 25);
        assert_eq!(g.num_edges(), 12 + 36);
        for v in 0..4 {
            assert_eq!(g.degree(v), 3);
        }
        for v in 16..25 {
            assert_eq!(g.degree(v), 4);
        }
        assert_eq!(g.class_sizes(), vec![(1, 4), (2, 12), (3, 9)]);
    }

    #[test]
    fn relabel_invariance_small() {
        let g = PairGraph::from_array(&OrthogonalArray::from_pair(&c3(), &c3p()).unwrap());
        let cert = canonicalize(&g);
        let v = g.num_vertices();
        let perm: Vec<usize> = (0..v).map(|x| (x * 7 + 3) % v).collect();
        assert_eq!(canonicalize(&g.relabeled(&perm)), cert);
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        // path a-b-c versus triangle-free star with the same colours
        let path = PairGraph::from_edges(vec![1, 1, 1, 1], &[(0, 1), (1, 2), (2, 3)], 4);
        let star = PairGraph::from_edges(vec![1, 1, 1, 1], &[(0, 1), (0, 2), (0, 3)], 4);
        assert_ne!(canonicalize(&path), canonicalize(&star));
        let recoloured = PairGraph::from_edges(vec![1, 2, 1, 1], &[(0, 1), (1, 2), (2, 3)], 4);
        assert_ne!(canonicalize(&path), canonicalize(&recoloured));
    }

    #[test]
    fn export_format() {
        let g = PairGraph::from_edges(vec![1, 2], &[(0, 1)], 2);
        assert_eq!(g.to_dimacs_graph(), "c colour 1 1\nc colour 2 2\np edge 2 1\ne 1 2\n");
    }

    #[test]
    fn grouping() {
        let a = Certificate(vec![1]);
        let b = Certificate(vec![2]);
        assert_eq!(group_by_certificate(&[a.clone(), b, a]), vec![vec![0, 2], vec![1]]);
    }
}
