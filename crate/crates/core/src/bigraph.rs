//! Bipartite graphs with a fixed black/white bipartition, vertex orderings,
//! the forbidden-pattern check and interval models.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::{self, BitMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    #[serde(rename = "B")]
    Black,
    #[serde(rename = "W")]
    White,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Black => 'B',
            Color::White => 'W',
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A bipartite graph on vertices `0..n` with a fixed coloring.
///
/// Adjacency is held twice: sorted neighbor lists for enumeration and a bit
/// matrix for constant-time edge tests and word-wide neighborhood algebra.
#[derive(Clone, Debug)]
pub struct Bigraph {
    colors: Vec<Color>,
    adj: Vec<Vec<usize>>,
    bits: BitMatrix,
    m: usize,
    name: Option<String>,
}

impl PartialEq for Bigraph {
    fn eq(&self, other: &Self) -> bool {
        self.colors == other.colors && self.adj == other.adj
    }
}

impl Eq for Bigraph {}

impl Bigraph {
    /// Builds a graph from declared colors and an edge list.
    pub fn new(colors: Vec<Color>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = colors.len();
        let mut adj = vec![Vec::new(); n];
        let mut bits = BitMatrix::new(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::malformed(0, format!("edge {u}-{v} out of range")));
            }
            if colors[u] == colors[v] {
                return Err(Error::ColorConflict(u, v));
            }
            if !bits.set(u, v) {
                return Err(Error::malformed(0, format!("parallel edge {u}-{v}")));
            }
            bits.set(v, u);
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Bigraph {
            colors,
            adj,
            bits,
            m: edges.len(),
            name: None,
        })
    }

    /// Builds a graph without declared colors; colors come from a BFS
    /// layering of each connected component (lowest id of a component is black).
    pub fn from_uncolored(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let colors = two_color(n, edges)?;
        Bigraph::new(colors, edges)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.colors.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    #[inline]
    pub fn same_color(&self, u: usize, v: usize) -> bool {
        self.colors[u] == self.colors[v]
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.bits.get(u, v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Neighborhood of `v` as a bit row.
    #[inline]
    pub fn neighbor_bits(&self, v: usize) -> &[u64] {
        self.bits.row(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertices_of(&self, c: Color) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&v| self.colors[v] == c)
    }

    /// Subgraph induced by `keep` (in the given order), with dense ids.
    pub fn induced(&self, keep: &[usize]) -> Bigraph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            local[v] = i;
        }
        let colors = keep.iter().map(|&v| self.colors[v]).collect();
        let mut edges = Vec::new();
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        Bigraph::new(colors, &edges).expect("induced subgraph of a valid bigraph")
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || connected_components(self).len() == 1
    }

    /// Parses the line-oriented `p ibg` format.
    pub fn parse(text: &str) -> Result<Self> {
        parse_bigraph(text)
    }

    /// Serializes to the line-oriented `p ibg` format (always with the vertex block).
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(name) = &self.name {
            s.push_str(&format!("c name {name}\n"));
        }
        s.push_str(&format!("p ibg {} {}\n", self.n(), self.m));
        for v in 0..self.n() {
            s.push_str(&format!("v {} {}\n", v, self.colors[v]));
        }
        for (u, v) in self.edges() {
            s.push_str(&format!("e {u} {v}\n"));
        }
        s
    }
}

fn two_color(n: usize, edges: &[(usize, usize)]) -> Result<Vec<Color>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(Error::malformed(0, format!("edge {u}-{v} out of range")));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut color: Vec<Option<Color>> = vec![None; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(Color::Black);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for &w in &adj[u] {
                match color[w] {
                    None => {
                        color[w] = Some(cu.opposite());
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => return Err(Error::NotBipartite(w)),
                    _ => {}
                }
            }
        }
    }
    Ok(color.into_iter().map(|c| c.unwrap()).collect())
}

/// Parses graph-file content into a validated [`Bigraph`].
pub fn parse_bigraph(text: &str) -> Result<Bigraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut name = None;
    let mut declared: Vec<Option<Color>> = Vec::new();
    let mut declared_count = 0usize;
    let mut edges = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut tok = line.split_whitespace();
        let kind = tok.next().unwrap();
        match kind {
            "c" => {
                let rest: Vec<&str> = tok.collect();
                if rest.first() == Some(&"name") && rest.len() > 1 && name.is_none() {
                    name = Some(rest[1..].join(" "));
                }
            }
            "p" => {
                if header.is_some() {
                    return Err(Error::malformed(line_no, "duplicate header"));
                }
                if tok.next() != Some("ibg") {
                    return Err(Error::malformed(line_no, "expected `p ibg <n> <m>`"));
                }
                let n = parse_num(tok.next(), line_no)?;
                let m = parse_num(tok.next(), line_no)?;
                if tok.next().is_some() {
                    return Err(Error::malformed(line_no, "trailing tokens in header"));
                }
                header = Some((n, m));
                declared = vec![None; n];
            }
            "v" => {
                let (n, _) = header.ok_or_else(|| Error::malformed(line_no, "vertex line before header"))?;
                let id = parse_num(tok.next(), line_no)?;
                if id >= n {
                    return Err(Error::malformed(line_no, format!("vertex id {id} out of range")));
                }
                let c = match tok.next() {
                    Some("B") => Color::Black,
                    Some("W") => Color::White,
                    _ => return Err(Error::malformed(line_no, "vertex color must be B or W")),
                };
                if tok.next().is_some() {
                    return Err(Error::malformed(line_no, "trailing tokens in vertex line"));
                }
                if declared[id].replace(c).is_some() {
                    return Err(Error::malformed(line_no, format!("vertex {id} declared twice")));
                }
                declared_count += 1;
            }
            "e" => {
                let (n, _) = header.ok_or_else(|| Error::malformed(line_no, "edge line before header"))?;
                let u = parse_num(tok.next(), line_no)?;
                let v = parse_num(tok.next(), line_no)?;
                if tok.next().is_some() {
                    return Err(Error::malformed(line_no, "trailing tokens in edge line"));
                }
                if u >= n || v >= n {
                    return Err(Error::malformed(line_no, format!("edge {u}-{v} out of range")));
                }
                if u == v {
                    return Err(Error::malformed(line_no, format!("self-loop at {u}")));
                }
                edges.push((u, v));
            }
            other => {
                return Err(Error::malformed(line_no, format!("unknown line kind `{other}`")));
            }
        }
    }

    let (n, m) = header.ok_or_else(|| Error::malformed(0, "missing `p ibg` header"))?;
    if edges.len() != m {
        return Err(Error::malformed(
            0,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    let mut seen = std::collections::HashSet::with_capacity(edges.len());
    for &(u, v) in &edges {
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::malformed(0, format!("parallel edge {u}-{v}")));
        }
    }
    let g = if declared_count == 0 {
        Bigraph::from_uncolored(n, &edges)?
    } else if declared_count == n {
        let colors = declared.into_iter().map(|c| c.unwrap()).collect();
        Bigraph::new(colors, &edges)?
    } else {
        return Err(Error::malformed(
            0,
            format!("colors declared for {declared_count} of {n} vertices"),
        ));
    };
    Ok(match name {
        Some(nm) => g.with_name(nm),
        None => g,
    })
}

fn parse_num(tok: Option<&str>, line: usize) -> Result<usize> {
    tok.ok_or_else(|| Error::malformed(line, "missing number"))?
        .parse()
        .map_err(|_| Error::malformed(line, "expected a non-negative integer"))
}

/// A connected piece of a larger graph, with ids mapped back to the parent.
#[derive(Clone, Debug)]
pub struct Part {
    pub graph: Bigraph,
    /// `original_ids[local] = parent id`.
    pub original_ids: Vec<usize>,
}

/// Splits `g` into connected induced subgraphs, ordered by least original id.
pub fn connected_components(g: &Bigraph) -> Vec<Part> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut parts = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut members = vec![s];
        let mut head = 0;
        while head < members.len() {
            let u = members[head];
            head += 1;
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    members.push(w);
                }
            }
        }
        members.sort_unstable();
        parts.push(Part {
            graph: g.induced(&members),
            original_ids: members,
        });
    }
    parts
}

/// A total order of the vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ordering {
    order: Vec<usize>,
}

impl Ordering {
    /// `order[i]` is the vertex with rank `i + 1`.
    pub fn from_sequence(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || seen[v] {
                return Err(Error::InvalidOrdering(format!("not a permutation of 0..{n}")));
            }
            seen[v] = true;
        }
        Ok(Ordering { order })
    }

    pub fn identity(n: usize) -> Self {
        Ordering {
            order: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn sequence(&self) -> &[usize] {
        &self.order
    }

    /// 1-based rank of every vertex.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            r[v] = i + 1;
        }
        r
    }
}

/// Three vertices `a < b < c` with `a`, `b` of one color, `c` of the other,
/// `ac` an edge and `bc` not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternViolation {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

/// Returns the rank-lexicographically least forbidden triple, or `None` if
/// the ordering is pattern-free.
pub fn check_ordering(g: &Bigraph, ord: &Ordering) -> Result<Option<PatternViolation>> {
    let n = g.n();
    if ord.len() != n {
        return Err(Error::InvalidOrdering(format!(
            "ordering covers {} vertices, graph has {n}",
            ord.len()
        )));
    }
    let seq = ord.sequence();
    let ranks = ord.ranks();
    // Adjacency re-indexed by rank (0-based).
    let mut radj = BitMatrix::new(n);
    for (i, &v) in seq.iter().enumerate() {
        for &w in g.neighbors(v) {
            radj.set(i, ranks[w] - 1);
        }
    }
    let words = radj.words_per_row();
    let mut scratch = vec![0u64; words];
    for ai in 0..n {
        let a = seq[ai];
        if radj.row_is_empty(ai) {
            continue;
        }
        for bi in ai + 1..n {
            let b = seq[bi];
            if !g.same_color(a, b) {
                continue;
            }
            let ra = radj.row(ai);
            let rb = radj.row(bi);
            for wi in 0..words {
                scratch[wi] = ra[wi] & !rb[wi];
            }
            if let Some(ci) = bits::next_one(&scratch, bi + 1) {
                return Ok(Some(PatternViolation { a, b, c: seq[ci] }));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub left: i64,
    pub right: i64,
}

impl Interval {
    pub fn intersects(&self, other: &Interval) -> bool {
        self.left <= other.right && other.left <= self.right
    }
}

/// Closed integer interval per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalModel {
    pub intervals: Vec<Interval>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalRecord {
    pub vertex: usize,
    pub color: Color,
    pub left: i64,
    pub right: i64,
}

impl IntervalModel {
    pub fn to_records(&self, g: &Bigraph) -> Vec<IntervalRecord> {
        self.intervals
            .iter()
            .enumerate()
            .map(|(v, iv)| IntervalRecord {
                vertex: v,
                color: g.color(v),
                left: iv.left,
                right: iv.right,
            })
            .collect()
    }

    pub fn from_records(n: usize, recs: &[IntervalRecord]) -> Result<Self> {
        let mut out: Vec<Option<Interval>> = vec![None; n];
        for r in recs {
            if r.vertex >= n || out[r.vertex].is_some() {
                return Err(Error::malformed(0, format!("bad interval record for vertex {}", r.vertex)));
            }
            out[r.vertex] = Some(Interval {
                left: r.left,
                right: r.right,
            });
        }
        let intervals = out
            .into_iter()
            .enumerate()
            .map(|(v, iv)| iv.ok_or_else(|| Error::malformed(0, format!("no interval for vertex {v}"))))
            .collect::<Result<_>>()?;
        Ok(IntervalModel { intervals })
    }
}

/// `I_v = [s(v), p(v)]` where `p(v)` is the rank of `v` and `s(v)` the least
/// rank of an earlier neighbor (or `p(v)` when there is none).
pub fn build_intervals(g: &Bigraph, ord: &Ordering) -> Result<IntervalModel> {
    if let Some(viol) = check_ordering(g, ord)? {
        return Err(Error::InvalidOrdering(format!(
            "forbidden pattern at ({}, {}, {})",
            viol.a, viol.b, viol.c
        )));
    }
    let ranks = ord.ranks();
    let intervals: Vec<Interval> = (0..g.n())
        .map(|v| {
            let p = ranks[v];
            let s = g
                .neighbors(v)
                .iter()
                .map(|&u| ranks[u])
                .filter(|&r| r < p)
                .min()
                .unwrap_or(p);
            Interval {
                left: s as i64,
                right: p as i64,
            }
        })
        .collect();
    let model = IntervalModel { intervals };
    if !validate_intervals(g, &model) {
        return Err(Error::ModelValidationFailed);
    }
    Ok(model)
}

/// True iff black/white intersections coincide exactly with edges.
pub fn validate_intervals(g: &Bigraph, model: &IntervalModel) -> bool {
    if model.intervals.len() != g.n() {
        return false;
    }
    if model.intervals.iter().any(|iv| iv.left > iv.right) {
        return false;
    }
    for x in g.vertices_of(Color::Black) {
        for y in g.vertices_of(Color::White) {
            let meet = model.intervals[x].intersects(&model.intervals[y]);
            if meet != g.adjacent(x, y) {
                return false;
            }
        }
    }
    true
}

/// Merges per-part orderings and models into one for the parent graph.
/// Each part's coordinates are shifted past the previous parts' ranges.
pub fn merge_parts(n: usize, parts: &[(&Part, Ordering, IntervalModel)]) -> (Ordering, IntervalModel) {
    let mut order = Vec::with_capacity(n);
    let mut intervals = vec![Interval { left: 0, right: 0 }; n];
    let mut offset = 0i64;
    for (part, ord, model) in parts {
        for &local in ord.sequence() {
            order.push(part.original_ids[local]);
        }
        for (local, iv) in model.intervals.iter().enumerate() {
            intervals[part.original_ids[local]] = Interval {
                left: iv.left + offset,
                right: iv.right + offset,
            };
        }
        offset += part.graph.n() as i64;
    }
    (Ordering { order }, IntervalModel { intervals })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4() -> Bigraph {
        // b1=0, w1=1, b2=2, w2=3
        Bigraph::new(
            vec![Color::Black, Color::White, Color::Black, Color::White],
            &[(0, 1), (1, 2), (2, 3)],
        )
        .unwrap()
    }

    fn c6() -> Bigraph {
        // b1 w1 b2 w2 b3 w3 around the cycle: ids 0..6 alternate colors
        let colors = (0..6)
            .map(|i| if i % 2 == 0 { Color::Black } else { Color::White })
            .collect();
        Bigraph::new(colors, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap()
    }

    #[test]
    fn parse_k2() {
        let g = parse_bigraph("p ibg 2 1\nv 0 B\nv 1 W\ne 0 1\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.m(), 1);
        assert!(g.adjacent(0, 1));
        assert_eq!(g.color(0), Color::Black);
    }

    #[test]
    fn parse_c6_and_roundtrip_text() {
        let g = c6();
        let back = parse_bigraph(&g.to_text()).unwrap();
        assert_eq!(back, g);
        assert_eq!((back.n(), back.m()), (6, 6));
    }

    #[test]
    fn parse_rejects_same_color_edge() {
        let err = parse_bigraph("p ibg 2 1\nv 0 B\nv 1 B\ne 0 1\n").unwrap_err();
        assert!(matches!(err, Error::ColorConflict(0, 1)));
    }

    #[test]
    fn parse_computes_colors_and_detects_odd_cycles() {
        let g = parse_bigraph("c a path\np ibg 3 2\ne 0 1\ne 1 2\n").unwrap();
        assert_eq!(g.color(0), Color::Black);
        assert_eq!(g.color(1), Color::White);
        assert_eq!(g.color(2), Color::Black);
        let err = parse_bigraph("p ibg 3 3\ne 0 1\ne 1 2\ne 2 0\n").unwrap_err();
        assert!(matches!(err, Error::NotBipartite(_)));
    }

    #[test]
    fn parse_malformed_inputs() {
        for bad in [
            "",
            "e 0 1\n",
            "p ibg 2\n",
            "p ibg 2 1\ne 0 5\n",
            "p ibg 2 2\ne 0 1\n",
            "p ibg 2 2\ne 0 1\ne 1 0\n",
            "p ibg 2 1\nv 0 B\ne 0 1\n",
            "p ibg 2 1\nv 0 X\nv 1 W\ne 0 1\n",
            "q 1 2\n",
        ] {
            assert!(
                matches!(parse_bigraph(bad), Err(Error::MalformedInput { .. })),
                "accepted {bad:?}"
            );
        }
    }

    #[test]
    fn components_of_small_graphs() {
        let g = Bigraph::from_uncolored(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let parts = connected_components(&g);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].graph, g);

        let two = Bigraph::from_uncolored(4, &[(0, 1), (2, 3)]).unwrap();
        let parts = connected_components(&two);
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|p| p.graph.n() == 2 && p.graph.m() == 1));
        assert_eq!(parts[1].original_ids, vec![2, 3]);

        let iso = Bigraph::from_uncolored(3, &[]).unwrap();
        assert_eq!(connected_components(&iso).len(), 3);
    }

    #[test]
    fn check_ordering_examples() {
        let k2 = Bigraph::new(vec![Color::Black, Color::White], &[(0, 1)]).unwrap();
        assert_eq!(check_ordering(&k2, &Ordering::identity(2)).unwrap(), None);

        assert_eq!(check_ordering(&p4(), &Ordering::identity(4)).unwrap(), None);

        // b1<b2<b3<w1<w2<w3 with b1=0,w1=1,b2=2,w2=3,b3=4,w3=5
        let ord = Ordering::from_sequence(vec![0, 2, 4, 1, 3, 5]).unwrap();
        let v = check_ordering(&c6(), &ord).unwrap().unwrap();
        assert_eq!(v, PatternViolation { a: 0, b: 2, c: 5 });
    }

    #[test]
    fn build_intervals_examples() {
        let k2 = Bigraph::new(vec![Color::Black, Color::White], &[(0, 1)]).unwrap();
        let m = build_intervals(&k2, &Ordering::identity(2)).unwrap();
        assert_eq!(m.intervals, vec![Interval { left: 1, right: 1 }, Interval { left: 1, right: 2 }]);

        // x(B) < y(W) < w(W), single edge xw
        let g = Bigraph::new(vec![Color::Black, Color::White, Color::White], &[(0, 2)]).unwrap();
        let m = build_intervals(&g, &Ordering::identity(3)).unwrap();
        assert_eq!(
            m.intervals,
            vec![
                Interval { left: 1, right: 1 },
                Interval { left: 2, right: 2 },
                Interval { left: 1, right: 3 }
            ]
        );
        assert!(validate_intervals(&g, &m));

        let m = build_intervals(&p4(), &Ordering::identity(4)).unwrap();
        assert_eq!(
            m.intervals,
            vec![
                Interval { left: 1, right: 1 },
                Interval { left: 1, right: 2 },
                Interval { left: 2, right: 3 },
                Interval { left: 3, right: 4 }
            ]
        );
    }

    #[test]
    fn build_intervals_rejects_bad_ordering() {
        let ord = Ordering::from_sequence(vec![0, 2, 4, 1, 3, 5]).unwrap();
        assert!(matches!(build_intervals(&c6(), &ord), Err(Error::InvalidOrdering(_))));
    }

    #[test]
    fn validate_intervals_examples() {
        let k22 = Bigraph::new(
            vec![Color::Black, Color::Black, Color::White, Color::White],
            &[(0, 2), (0, 3), (1, 2), (1, 3)],
        )
        .unwrap();
        let all = IntervalModel {
            intervals: vec![Interval { left: 0, right: 1 }; 4],
        };
        assert!(validate_intervals(&k22, &all));

        let k2 = Bigraph::new(vec![Color::Black, Color::White], &[(0, 1)]).unwrap();
        let apart = IntervalModel {
            intervals: vec![Interval { left: 0, right: 1 }, Interval { left: 2, right: 3 }],
        };
        assert!(!validate_intervals(&k2, &apart));
    }
}
