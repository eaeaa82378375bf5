//! Immutable undirected multigraph in compressed adjacency form.
//!
//! Vertices are dense ids `0..n`. Each vertex stores its neighbours sorted
//! by id together with the multiplicity `c(u, v)` of the parallel edges
//! between them; the degree of a vertex is the sum of those multiplicities.
//! Self-loops are never stored.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::io::BufRead;

use log::warn;

use crate::error::{Error, Result};

/// Dense vertex index in `0..n`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn new(index: usize) -> Self {
        VertexId(u32::try_from(index).expect("vertex index exceeds u32"))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
    multiplicities: Vec<u32>,
    degrees: Vec<u64>,
    edge_count: usize,
    /// Original dataset label of each vertex; strictly increasing.
    labels: Vec<u64>,
}

impl Graph {
    /// Builds a graph on vertices `0..n` from undirected edges. Self-loops
    /// are dropped and repeated pairs accumulate multiplicity.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut pairs = Vec::new();
        for (u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::InvalidVertex { id, n });
                }
            }
            if u != v {
                pairs.push((u.min(v), u.max(v)));
            }
        }
        Ok(Self::assemble(n, pairs, (0..n as u64).collect()))
    }

    /// `pairs` must hold `(lo, hi)` with `lo < hi < n`.
    fn assemble(n: usize, mut pairs: Vec<(usize, usize)>, labels: Vec<u64>) -> Graph {
        debug_assert_eq!(labels.len(), n);
        let edge_count = pairs.len();
        pairs.sort_unstable();

        // collapse runs into (lo, hi, multiplicity)
        let mut unique: Vec<(usize, usize, u32)> = Vec::new();
        for (u, v) in pairs {
            match unique.last_mut() {
                Some(last) if last.0 == u && last.1 == v => last.2 += 1,
                _ => unique.push((u, v, 1)),
            }
        }

        let mut counts = vec![0usize; n];
        for &(u, v, _) in &unique {
            counts[u] += 1;
            counts[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for c in &counts {
            offsets.push(offsets.last().unwrap() + c);
        }

        let total = *offsets.last().unwrap();
        let mut targets = vec![VertexId(0); total];
        let mut multiplicities = vec![0u32; total];
        let mut cursor = offsets[..n].to_vec();
        // `unique` is sorted by (lo, hi), so each row receives its smaller
        // neighbours first (ascending lo) and then its larger ones
        // (ascending hi): rows come out sorted without a second pass.
        for &(u, v, c) in &unique {
            targets[cursor[u]] = VertexId::new(v);
            multiplicities[cursor[u]] = c;
            cursor[u] += 1;
            targets[cursor[v]] = VertexId::new(u);
            multiplicities[cursor[v]] = c;
            cursor[v] += 1;
        }

        let degrees = (0..n)
            .map(|v| {
                multiplicities[offsets[v]..offsets[v + 1]]
                    .iter()
                    .map(|&c| u64::from(c))
                    .sum()
            })
            .collect();

        Graph {
            offsets,
            targets,
            multiplicities,
            degrees,
            edge_count,
            labels,
        }
    }

    /// Number of vertices.
    #[inline]
    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    /// Number of edges, counting parallel edges separately.
    #[inline]
    pub fn m(&self) -> usize {
        self.edge_count
    }

    /// Multiplicity-weighted degree.
    #[inline]
    pub fn degree(&self, u: VertexId) -> u64 {
        self.degrees[u.index()]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// Distinct neighbours of `u`, sorted by id.
    #[inline]
    pub fn neighbor_ids(&self, u: VertexId) -> &[VertexId] {
        let i = u.index();
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    /// Multiplicities parallel to [`Graph::neighbor_ids`].
    #[inline]
    pub fn neighbor_multiplicities(&self, u: VertexId) -> &[u32] {
        let i = u.index();
        &self.multiplicities[self.offsets[i]..self.offsets[i + 1]]
    }

    /// `(neighbour, multiplicity)` pairs of `u`, sorted by neighbour id.
    pub fn adjacency(&self, u: VertexId) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.neighbor_ids(u)
            .iter()
            .copied()
            .zip(self.neighbor_multiplicities(u).iter().copied())
    }

    /// Number of parallel edges between `u` and `v`; zero when not adjacent.
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> u32 {
        match self.neighbor_ids(u).binary_search(&v) {
            Ok(pos) => self.neighbor_multiplicities(u)[pos],
            Err(_) => 0,
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n() as u32).map(VertexId)
    }

    /// Every undirected edge once as `(lo, hi, multiplicity)` with `lo < hi`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, u32)> + '_ {
        self.vertices().flat_map(move |u| {
            self.adjacency(u)
                .filter(move |&(v, _)| u < v)
                .map(move |(v, c)| (u, v, c))
        })
    }

    pub fn label(&self, u: VertexId) -> u64 {
        self.labels[u.index()]
    }

    pub fn vertex_by_label(&self, label: u64) -> Option<VertexId> {
        self.labels.binary_search(&label).ok().map(VertexId::new)
    }

    pub fn contains(&self, u: VertexId) -> bool {
        u.index() < self.n()
    }

    pub fn check_vertex(&self, u: VertexId) -> Result<()> {
        if self.contains(u) {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                id: u.index(),
                n: self.n(),
            })
        }
    }

    /// The set `N_h(u)` of vertices at hop distance at most `h` from `u`,
    /// including `u` itself, sorted by id.
    pub fn neighbors_within(&self, u: VertexId, h: u32) -> Vec<VertexId> {
        let mut bfs = HopBfs::new(self.n());
        let mut out = Vec::new();
        bfs.run(self, u, h, |v| out.push(v));
        out.sort_unstable();
        out
    }

    /// Checks every structural invariant: adjacency symmetry with equal
    /// multiplicities, sorted rows, no self-loops, degree sum equal to `2m`.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let mut degree_sum = 0u64;
        for u in self.vertices() {
            let ids = self.neighbor_ids(u);
            if ids.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("adjacency of {u} is not strictly sorted"));
            }
            for (v, c) in self.adjacency(u) {
                if v == u {
                    return Err(format!("self-loop at {u}"));
                }
                if c == 0 || self.multiplicity(v, u) != c {
                    return Err(format!("asymmetric edge {u}-{v}"));
                }
            }
            degree_sum += self.degree(u);
        }
        if degree_sum != 2 * self.m() as u64 {
            return Err(format!(
                "degree sum {degree_sum} differs from 2m = {}",
                2 * self.m()
            ));
        }
        if self.labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err("label table is not strictly increasing".into());
        }
        Ok(())
    }
}

/// Reusable breadth-first search bounded by hop count. Visited marks are
/// epoch-stamped so repeated searches cost only what they touch.
#[derive(Debug)]
pub struct HopBfs {
    stamp: Vec<u32>,
    epoch: u32,
    queue: VecDeque<(VertexId, u32)>,
}

impl HopBfs {
    pub fn new(n: usize) -> Self {
        HopBfs {
            stamp: vec![0; n],
            epoch: 0,
            queue: VecDeque::new(),
        }
    }

    fn next_epoch(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
    }

    /// Calls `visit` once for every vertex within `h` hops of `source`,
    /// in BFS order starting with `source`.
    pub fn run<F: FnMut(VertexId)>(&mut self, g: &Graph, source: VertexId, h: u32, mut visit: F) {
        self.next_epoch();
        self.queue.clear();
        self.stamp[source.index()] = self.epoch;
        self.queue.push_back((source, 0));
        while let Some((v, dist)) = self.queue.pop_front() {
            visit(v);
            if dist == h {
                continue;
            }
            for &w in g.neighbor_ids(v) {
                if self.stamp[w.index()] != self.epoch {
                    self.stamp[w.index()] = self.epoch;
                    self.queue.push_back((w, dist + 1));
                }
            }
        }
    }
}

/// Edge-list dialects understood by [`load_edge_list`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Format {
    /// One whitespace-separated pair per line.
    Plain,
    /// Like `Plain`, preceded by an `n m` line.
    Header,
    /// SNAP: `#` comment lines, directed pairs read as undirected.
    Snap,
    /// Pick one of the above from the content.
    Auto,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Format::Plain),
            "header" => Ok(Format::Header),
            "snap" => Ok(Format::Snap),
            "auto" => Ok(Format::Auto),
            other => Err(Error::InvalidParameter(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Copy, Clone, Debug)]
pub struct LoadOptions {
    pub format: Format,
    /// Collapse parallel edges to multiplicity 1. `None` uses the format
    /// default: on for SNAP, off otherwise.
    pub dedup: Option<bool>,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            format: Format::Auto,
            dedup: None,
        }
    }
}

#[derive(Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// Format actually used after auto-detection.
    pub format: Format,
    pub warnings: Vec<String>,
}

struct Line {
    number: usize,
    tokens: Vec<String>,
}

fn parse_label(line: &Line, token: &str) -> Result<u64> {
    token.parse::<u64>().map_err(|_| Error::Parse {
        line: line.number,
        message: format!("expected a non-negative integer, found `{token}`"),
    })
}

fn detect_format(lines: &[Line]) -> Format {
    let Some(first) = lines.first() else {
        return Format::Plain;
    };
    if first.tokens[0].starts_with('#') {
        return Format::Snap;
    }
    if first.tokens.len() == 2 {
        if let (Ok(n), Ok(m)) = (
            first.tokens[0].parse::<u64>(),
            first.tokens[1].parse::<u64>(),
        ) {
            if n >= 1 && m == (lines.len() - 1) as u64 {
                return Format::Header;
            }
        }
    }
    Format::Plain
}

/// Reads an edge list and builds a graph with dense ids. Vertex labels are
/// remapped in increasing label order; the original labels stay available
/// through [`Graph::label`].
pub fn load_edge_list<R: BufRead>(source: R, options: LoadOptions) -> Result<LoadedGraph> {
    let mut lines = Vec::new();
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        let tokens: Vec<String> = line.split_whitespace().map(str::to_owned).collect();
        if !tokens.is_empty() {
            lines.push(Line {
                number: i + 1,
                tokens,
            });
        }
    }

    let format = match options.format {
        Format::Auto => detect_format(&lines),
        f => f,
    };
    let dedup = options.dedup.unwrap_or(format == Format::Snap);

    let mut warnings = Vec::new();
    let mut header = None;
    let mut body = &lines[..];
    if format == Format::Header {
        let first = lines.first().ok_or(Error::EmptyInput)?;
        if first.tokens.len() != 2 {
            return Err(Error::Parse {
                line: first.number,
                message: "header must be `n m`".into(),
            });
        }
        header = Some((
            parse_label(first, &first.tokens[0])?,
            parse_label(first, &first.tokens[1])?,
        ));
        body = &lines[1..];
    }

    let mut raw = Vec::with_capacity(body.len());
    for line in body {
        if line.tokens[0].starts_with('#') {
            if format == Format::Snap {
                continue;
            }
            return Err(Error::Parse {
                line: line.number,
                message: "comment lines are only allowed in snap format".into(),
            });
        }
        if line.tokens.len() < 2 {
            return Err(Error::Parse {
                line: line.number,
                message: "expected two vertex labels".into(),
            });
        }
        let u = parse_label(line, &line.tokens[0])?;
        let v = parse_label(line, &line.tokens[1])?;
        raw.push((u, v));
    }
    if raw.is_empty() {
        return Err(Error::EmptyInput);
    }

    let mut labels: Vec<u64> = raw.iter().flat_map(|&(u, v)| [u, v]).collect();
    labels.sort_unstable();
    labels.dedup();
    let dense = |l: u64| labels.binary_search(&l).unwrap();

    let self_loops = raw.iter().filter(|(u, v)| u == v).count();
    let mut pairs: Vec<(usize, usize)> = raw
        .iter()
        .filter(|(u, v)| u != v)
        .map(|&(u, v)| {
            let (a, b) = (dense(u), dense(v));
            (a.min(b), a.max(b))
        })
        .collect();
    if self_loops > 0 {
        warnings.push(format!("dropped {self_loops} self-loop(s)"));
    }
    if dedup {
        pairs.sort_unstable();
        pairs.dedup();
    }

    if let Some((hn, hm)) = header {
        if hn != labels.len() as u64 || hm != raw.len() as u64 {
            warnings.push(format!(
                "header declares n={hn} m={hm} but input has n={} m={}; using actual counts",
                labels.len(),
                raw.len()
            ));
        }
    }
    for w in &warnings {
        warn!("{w}");
    }

    let n = labels.len();
    let graph = Graph::assemble(n, pairs, labels);
    graph
        .validate()
        .map_err(|message| Error::Parse { line: 0, message })?;
    Ok(LoadedGraph {
        graph,
        format,
        warnings,
    })
}

/// Connected-component sizes keyed by smallest member; used by tests and
/// reports.
pub fn component_sizes(g: &Graph) -> BTreeMap<VertexId, usize> {
    let mut seen = vec![false; g.n()];
    let mut out = BTreeMap::new();
    let mut stack = Vec::new();
    for s in g.vertices() {
        if seen[s.index()] {
            continue;
        }
        seen[s.index()] = true;
        stack.push(s);
        let mut size = 0;
        while let Some(v) = stack.pop() {
            size += 1;
            for &w in g.neighbor_ids(v) {
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    stack.push(w);
                }
            }
        }
        out.insert(s, size);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str, format: Format) -> Result<LoadedGraph> {
        load_edge_list(
            text.as_bytes(),
            LoadOptions {
                format,
                dedup: None,
            },
        )
    }

    fn v(i: usize) -> VertexId {
        VertexId::new(i)
    }

    #[test]
    fn plain_counts_parallel_edges() {
        let g = load("0 1\n1 2\n0 1\n", Format::Plain).unwrap().graph;
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
        assert_eq!(g.multiplicity(v(0), v(1)), 2);
        assert_eq!(g.multiplicity(v(1), v(0)), 2);
        assert_eq!(g.degree(v(1)), 3);
    }

    #[test]
    fn header_format() {
        let loaded = load("2 1\n0 1\n", Format::Header).unwrap();
        assert_eq!((loaded.graph.n(), loaded.graph.m()), (2, 1));
        assert!(loaded.warnings.is_empty());
    }

    #[test]
    fn header_mismatch_warns_and_uses_actual_counts() {
        let loaded = load("10 7\n0 1\n1 2\n", Format::Header).unwrap();
        assert_eq!((loaded.graph.n(), loaded.graph.m()), (3, 2));
        assert_eq!(loaded.warnings.len(), 1);
    }

    #[test]
    fn auto_detection() {
        assert_eq!(
            load("2 1\n0 1\n", Format::Auto).unwrap().format,
            Format::Header
        );
        assert_eq!(
            load("0 1\n1 2\n0 1\n", Format::Auto).unwrap().format,
            Format::Plain
        );
        assert_eq!(
            load("# c\n0 1\n", Format::Auto).unwrap().format,
            Format::Snap
        );
    }

    #[test]
    fn snap_symmetrises_and_dedups_by_default() {
        let text = "# Directed graph\n# FromNodeId\tToNodeId\n10 20\n20 10\n20 30\n";
        let g = load(text, Format::Snap).unwrap().graph;
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(g.multiplicity(v(0), v(1)), 1);
        assert_eq!(g.label(v(2)), 30);
        assert_eq!(g.vertex_by_label(20), Some(v(1)));

        let kept = load_edge_list(
            text.as_bytes(),
            LoadOptions {
                format: Format::Snap,
                dedup: Some(false),
            },
        )
        .unwrap()
        .graph;
        assert_eq!(kept.multiplicity(v(0), v(1)), 2);
    }

    #[test]
    fn self_loops_dropped() {
        let loaded = load("0 0\n0 1\n", Format::Plain).unwrap();
        assert_eq!(loaded.graph.m(), 1);
        assert_eq!(loaded.graph.degree(v(0)), 1);
        assert_eq!(loaded.warnings.len(), 1);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        match load("0 1\n\n1 x\n", Format::Plain) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            load("0\n", Format::Plain),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            load("# x\n0 1\n", Format::Plain),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn empty_input_rejected() {
        assert!(matches!(load("", Format::Auto), Err(Error::EmptyInput)));
        assert!(matches!(
            load("# only comments\n", Format::Snap),
            Err(Error::EmptyInput)
        ));
    }

    #[test]
    fn degree_examples() {
        let triangle = Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(triangle.vertices().all(|u| triangle.degree(u) == 2));
        let star = Graph::from_edges(6, (1..6).map(|i| (0, i))).unwrap();
        assert_eq!(star.degree(v(0)), 5);
        let double = Graph::from_edges(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(double.degree(v(0)), 2);
    }

    #[test]
    fn neighbors_within_path() {
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.neighbors_within(v(0), 0), vec![v(0)]);
        assert_eq!(path.neighbors_within(v(0), 1), vec![v(0), v(1)]);
        assert_eq!(path.neighbors_within(v(0), 2), vec![v(0), v(1), v(2)]);
    }

    #[test]
    fn from_edges_rejects_out_of_range() {
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(Error::InvalidVertex { id: 2, n: 2 })
        ));
    }
}
