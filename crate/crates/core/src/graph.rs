//! Undirected unweighted graphs, random instance generation, cut/energy
//! evaluation, and an exact brute-force MaxCut solver for small instances.
//!
//! Nodes are spins; every edge carries an antiferromagnetic coupling of -1,
//! so the Ising energy of an assignment is `sum over edges of s_u * s_v`
//! and `cut = (|E| - energy) / 2` holds exactly.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest node count accepted by [`brute_force_maxcut`].
pub const EXACT_SOLVER_MAX_NODES: usize = 24;

/// Undirected unweighted graph with 0-indexed nodes.
///
/// Edges are stored canonically: `u < v`, sorted, no duplicates, no
/// self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Build a graph from an edge list, canonicalizing and validating it.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        if n < 1 {
            return Err(Error::NodeCount { got: n, min: 1 });
        }
        let mut canon: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if v >= n {
                return Err(Error::EndpointOutOfRange { u: a, v: b, n });
            }
            canon.push((u, v));
        }
        canon.sort_unstable();
        for w in canon.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        Ok(Graph { n, edges: canon })
    }

    /// The cycle graph C_n.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::NodeCount { got: n, min: 3 });
        }
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// The complete graph K_n.
    pub fn complete(n: usize) -> Result<Graph> {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonicalized edge list (`u < v`, sorted).
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, node: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| u == node || v == node)
            .count()
    }

    /// Per-node neighbor lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Read a graph from the plain-text format written by [`Graph::save`].
    ///
    /// First non-comment line is `n m`, followed by `m` lines `u v`
    /// (0-indexed). Lines starting with `#` are comments.
    pub fn load(path: impl AsRef<Path>) -> Result<Graph> {
        let path = path.as_ref();
        let file = File::open(path)?;
        let reader = BufReader::new(file);

        let mut header: Option<(usize, usize)> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut graph: Option<Graph> = None;
        let mut seen = std::collections::HashSet::new();

        for (idx, line) in reader.lines().enumerate() {
            let lineno = idx + 1;
            let line = line?;
            let text = line.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            match header {
                None => {
                    let mut it = text.split_whitespace();
                    let n: usize = it
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| {
                            Error::MalformedHeader(format!("expected `n m`, got {text:?}"))
                                .in_file(path, lineno)
                        })?;
                    let m: usize = it
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| {
                            Error::MalformedHeader(format!("expected `n m`, got {text:?}"))
                                .in_file(path, lineno)
                        })?;
                    if it.next().is_some() {
                        return Err(Error::MalformedHeader(format!(
                            "trailing tokens in header {text:?}"
                        ))
                        .in_file(path, lineno));
                    }
                    if n < 1 {
                        return Err(Error::NodeCount { got: n, min: 1 }.in_file(path, lineno));
                    }
                    header = Some((n, m));
                    graph = Some(Graph { n, edges: Vec::new() });
                }
                Some((n, m)) => {
                    let mut it = text.split_whitespace();
                    let parse = |tok: Option<&str>| -> Result<usize> {
                        tok.and_then(|t| t.parse().ok()).ok_or_else(|| {
                            Error::MalformedHeader(format!("expected `u v`, got {text:?}"))
                        })
                    };
                    let a = parse(it.next()).map_err(|e| e.in_file(path, lineno))?;
                    let b = parse(it.next()).map_err(|e| e.in_file(path, lineno))?;
                    if it.next().is_some() {
                        return Err(Error::MalformedHeader(format!(
                            "trailing tokens in edge line {text:?}"
                        ))
                        .in_file(path, lineno));
                    }
                    if a == b {
                        return Err(Error::SelfLoop(a).in_file(path, lineno));
                    }
                    let (u, v) = if a < b { (a, b) } else { (b, a) };
                    if v >= n {
                        return Err(
                            Error::EndpointOutOfRange { u: a, v: b, n }.in_file(path, lineno)
                        );
                    }
                    if !seen.insert((u, v)) {
                        return Err(Error::DuplicateEdge(u, v).in_file(path, lineno));
                    }
                    edges.push((u, v));
                    if edges.len() > m {
                        return Err(Error::EdgeCountMismatch {
                            expected: m,
                            got: edges.len(),
                        }
                        .in_file(path, lineno));
                    }
                }
            }
        }

        let (n, m) = header.ok_or_else(|| {
            Error::MalformedHeader("empty file".to_string()).in_file(path, 0)
        })?;
        if edges.len() != m {
            return Err(Error::EdgeCountMismatch {
                expected: m,
                got: edges.len(),
            });
        }
        let mut g = graph.take().unwrap_or(Graph { n, edges: Vec::new() });
        edges.sort_unstable();
        g.edges = edges;
        Ok(g)
    }

    /// Write the graph in the plain-text `n m` / `u v` format.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = File::create(path.as_ref())?;
        let mut w = BufWriter::new(file);
        writeln!(w, "{} {}", self.n, self.edges.len())?;
        for &(u, v) in &self.edges {
            writeln!(w, "{u} {v}")?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Random graph with an exact edge count of `round(eta * n(n-1)/2)`,
/// sampled uniformly without replacement, deterministic in `seed`.
pub fn gen_random(n: usize, eta: f64, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::NodeCount { got: n, min: 2 });
    }
    if !(0.0..=1.0).contains(&eta) || !eta.is_finite() {
        return Err(Error::EdgeDensity(eta));
    }
    let total = n * (n - 1) / 2;
    let m = (eta * total as f64).round() as usize;

    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(total);
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    // Partial Fisher-Yates: the first m slots end up holding the sample.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..m {
        let j = rng.random_range(i..total);
        pairs.swap(i, j);
    }
    pairs.truncate(m);
    pairs.sort_unstable();
    Ok(Graph { n, edges: pairs })
}

/// Spin assignment over the nodes of a graph: one value in {+1, -1} per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinAssignment(Vec<i8>);

impl SpinAssignment {
    pub fn new(spins: Vec<i8>) -> Result<SpinAssignment> {
        for &s in &spins {
            if s != 1 && s != -1 {
                return Err(Error::BadSpin(s));
            }
        }
        Ok(SpinAssignment(spins))
    }

    pub fn all_up(n: usize) -> SpinAssignment {
        SpinAssignment(vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn spins(&self) -> &[i8] {
        &self.0
    }

    /// Flip every spin in place.
    pub fn flip_all(&mut self) {
        for s in &mut self.0 {
            *s = -*s;
        }
    }
}

impl std::ops::Index<usize> for SpinAssignment {
    type Output = i8;
    fn index(&self, i: usize) -> &i8 {
        &self.0[i]
    }
}

/// A cut together with its assignment and Ising energy.
#[derive(Debug, Clone, PartialEq)]
pub struct CutResult {
    pub spins: SpinAssignment,
    pub cut: usize,
    pub ising_energy: i64,
    /// Bipartition-quality residual in degrees; 0 when the result was
    /// computed directly from spins rather than from oscillator phases.
    pub residual_deg: f64,
}

impl CutResult {
    /// Evaluate an assignment on a graph.
    pub fn from_spins(g: &Graph, spins: SpinAssignment) -> Result<CutResult> {
        let cut = cut_value(g, &spins)?;
        let ising_energy = ising_energy(g, &spins)?;
        Ok(CutResult {
            spins,
            cut,
            ising_energy,
            residual_deg: 0.0,
        })
    }
}

fn check_len(g: &Graph, a: &SpinAssignment) -> Result<()> {
    if a.len() != g.node_count() {
        return Err(Error::LengthMismatch {
            expected: g.node_count(),
            got: a.len(),
        });
    }
    Ok(())
}

/// Number of edges whose endpoints carry opposite spins.
pub fn cut_value(g: &Graph, a: &SpinAssignment) -> Result<usize> {
    check_len(g, a)?;
    Ok(g.edges().iter().filter(|&&(u, v)| a[u] != a[v]).count())
}

/// Ising energy `sum over edges of s_u * s_v`.
///
/// Satisfies `cut = (|E| - energy) / 2` exactly.
pub fn ising_energy(g: &Graph, a: &SpinAssignment) -> Result<i64> {
    check_len(g, a)?;
    Ok(g.edges()
        .iter()
        .map(|&(u, v)| (a[u] as i64) * (a[v] as i64))
        .sum())
}

/// Exact MaxCut by enumeration of the 2^(n-1) assignments with
/// `spins[0] = +1` (global spin flip leaves the cut unchanged).
///
/// Ties are broken toward the lexicographically smallest assignment,
/// reading spins from node 0 with +1 ordered before -1. Enumerating masks
/// in ascending numeric order with node 1 as the most significant bit
/// visits assignments in exactly that order, so keeping only strict
/// improvements realizes the tie-break for free.
pub fn brute_force_maxcut(g: &Graph) -> Result<CutResult> {
    let n = g.node_count();
    if n > EXACT_SOLVER_MAX_NODES {
        return Err(Error::TooLargeForExact {
            n,
            limit: EXACT_SOLVER_MAX_NODES,
        });
    }
    let adj = g.adjacency();

    // spins[0] fixed to +1; bit j of the mask (LSB = j 0) holds node n-1-j.
    let mut spins: Vec<i8> = vec![1; n];
    let mut cut: usize = 0;
    let mut best_cut = cut;
    let mut best_spins = spins.clone();

    let steps: u64 = if n == 1 { 0 } else { (1u64 << (n - 1)) - 1 };
    let flip = |u: usize, spins: &mut Vec<i8>, cut: &mut usize| {
        for &w in &adj[u] {
            if spins[u] == spins[w] {
                *cut += 1;
            } else {
                *cut -= 1;
            }
        }
        spins[u] = -spins[u];
    };

    for mask in 0..steps {
        // Increment mask -> mask+1: trailing ones clear, next zero sets.
        // Either way each changed bit is one spin flip.
        let changed = mask ^ (mask + 1);
        let mut bits = changed;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            flip(n - 1 - j, &mut spins, &mut cut);
            bits &= bits - 1;
        }
        if cut > best_cut {
            best_cut = cut;
            best_spins.copy_from_slice(&spins);
        }
    }

    let spins = SpinAssignment(best_spins);
    let ising_energy = g.edge_count() as i64 - 2 * best_cut as i64;
    Ok(CutResult {
        spins,
        cut: best_cut,
        ising_energy,
        residual_deg: 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spins(v: &[i8]) -> SpinAssignment {
        SpinAssignment::new(v.to_vec()).unwrap()
    }

    #[test]
    fn c4_alternating_cut_is_4() {
        let g = Graph::cycle(4).unwrap();
        let a = spins(&[1, -1, 1, -1]);
        assert_eq!(cut_value(&g, &a).unwrap(), 4);
        assert_eq!(ising_energy(&g, &a).unwrap(), -4);
    }

    #[test]
    fn c4_uniform_cut_is_0() {
        let g = Graph::cycle(4).unwrap();
        let a = SpinAssignment::all_up(4);
        assert_eq!(cut_value(&g, &a).unwrap(), 0);
        assert_eq!(ising_energy(&g, &a).unwrap(), 4);
    }

    #[test]
    fn k3_mixed() {
        let g = Graph::complete(3).unwrap();
        let a = spins(&[1, 1, -1]);
        assert_eq!(cut_value(&g, &a).unwrap(), 2);
        assert_eq!(ising_energy(&g, &a).unwrap(), -1);
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let g = Graph::cycle(4).unwrap();
        let a = spins(&[1, -1]);
        assert!(matches!(
            cut_value(&g, &a),
            Err(Error::LengthMismatch { expected: 4, got: 2 })
        ));
        assert!(matches!(
            ising_energy(&g, &a),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn gen_random_edge_counts() {
        let g = gen_random(32, 0.2, 7).unwrap();
        assert_eq!(g.edge_count(), 99); // round(0.2 * 496)
        let g = gen_random(4, 1.0, 7).unwrap();
        assert_eq!(g.edge_count(), 6);
        let g = gen_random(16, 0.0, 7).unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn gen_random_is_deterministic() {
        let a = gen_random(20, 0.4, 99).unwrap();
        let b = gen_random(20, 0.4, 99).unwrap();
        assert_eq!(a, b);
        let c = gen_random(20, 0.4, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn gen_random_rejects_bad_args() {
        assert!(matches!(gen_random(1, 0.5, 0), Err(Error::NodeCount { .. })));
        assert!(matches!(gen_random(8, -0.1, 0), Err(Error::EdgeDensity(_))));
        assert!(matches!(gen_random(8, 1.1, 0), Err(Error::EdgeDensity(_))));
    }

    #[test]
    fn gen_random_edges_are_canonical() {
        let g = gen_random(12, 0.7, 3).unwrap();
        for &(u, v) in g.edges() {
            assert!(u < v && v < 12);
        }
        for w in g.edges().windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn brute_force_c4() {
        let g = Graph::cycle(4).unwrap();
        let r = brute_force_maxcut(&g).unwrap();
        assert_eq!(r.cut, 4);
        assert_eq!(r.ising_energy, -4);
        assert_eq!(r.spins.spins(), &[1, -1, 1, -1]);
    }

    #[test]
    fn brute_force_k2() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let r = brute_force_maxcut(&g).unwrap();
        assert_eq!(r.cut, 1);
    }

    #[test]
    fn brute_force_k4() {
        let g = Graph::complete(4).unwrap();
        let r = brute_force_maxcut(&g).unwrap();
        assert_eq!(r.cut, 4);
        // Lexicographically smallest optimum with +1 before -1: (+,+,-,-).
        assert_eq!(r.spins.spins(), &[1, 1, -1, -1]);
    }

    #[test]
    fn brute_force_rejects_large_graphs() {
        let g = gen_random(25, 0.1, 0).unwrap();
        assert!(matches!(
            brute_force_maxcut(&g),
            Err(Error::TooLargeForExact { n: 25, .. })
        ));
    }

    #[test]
    fn save_load_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c4.txt");
        let g = Graph::cycle(4).unwrap();
        g.save(&path).unwrap();
        let back = Graph::load(&path).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn load_rejects_out_of_range_endpoint() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.txt");
        std::fs::write(&path, "4 1\n4 1\n").unwrap();
        let err = Graph::load(&path).unwrap_err();
        match err {
            Error::InFile { source, .. } => {
                assert!(matches!(*source, Error::EndpointOutOfRange { .. }))
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn load_rejects_duplicate_edge() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("dup.txt");
        std::fs::write(&path, "# comment\n4 2\n0 1\n0 1\n").unwrap();
        let err = Graph::load(&path).unwrap_err();
        match err {
            Error::InFile { source, line, .. } => {
                assert_eq!(line, 4);
                assert!(matches!(*source, Error::DuplicateEdge(0, 1)));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn load_rejects_malformed_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("hdr.txt");
        std::fs::write(&path, "four six\n").unwrap();
        let err = Graph::load(&path).unwrap_err();
        match err {
            Error::InFile { source, .. } => {
                assert!(matches!(*source, Error::MalformedHeader(_)))
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn load_accepts_comments_and_unordered_edges() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.txt");
        std::fs::write(&path, "# a graph\n3 2\n2 0\n# middle\n1 0\n").unwrap();
        let g = Graph::load(&path).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2)]);
    }
}
