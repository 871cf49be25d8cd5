//! The evolving pair relation `D`: component selection, envelope levels,
//! dictator codes, original pairs and circuit bookkeeping.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::bigraph::{Bigraph, Color};
use crate::bits::{self, BitMatrix};
use crate::error::{Error, Result};
use crate::pair_digraph::{ComponentSet, PairDigraph, PairId, PairVertex};
use crate::par::{self, Exec};

/// Dict value of pairs that carry no dictator code (completion pairs).
pub const NO_DICT: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Derivation {
    /// Member of a selected component.
    Base(u32),
    /// Head of an arc of `H+` whose tail is already in `D`.
    Implied(PairVertex),
    /// Composition of `(x, via)` and `(via, y)`.
    Transitive(usize),
    /// Added during completion as the pair of a sink component.
    Sink,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairMeta {
    pub level: u32,
    pub dict: u32,
    pub derivation: Derivation,
    pub original: bool,
}

const K_ABSENT: u8 = 0;
const K_BASE: u8 = 1;
const K_IMPLIED: u8 = 2;
const K_TRANSITIVE: u8 = 3;
const K_SINK: u8 = 4;

/// Incremental transitive closure with cycle rejection and optional undo.
///
/// `reach[a]` holds every vertex reachable from `a` by a nonempty path.
/// Inserting `(x, y)` updates exactly the rows of `x` and its ancestors that
/// did not already reach `y`, so each bit is set at most once per run.
#[derive(Clone, Debug)]
pub struct Closure {
    reach: BitMatrix,
    reach_t: BitMatrix,
    log: Option<Vec<(u32, u32)>>,
}

impl Closure {
    pub fn new(n: usize) -> Self {
        Closure {
            reach: BitMatrix::new(n),
            reach_t: BitMatrix::new(n),
            log: None,
        }
    }

    #[inline]
    pub fn reaches(&self, x: usize, y: usize) -> bool {
        self.reach.get(x, y)
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.reach
    }

    /// Inserts arc `(x, y)`. Returns `false`, leaving the closure unchanged,
    /// when the arc would close a directed cycle.
    pub fn insert(&mut self, x: usize, y: usize) -> bool {
        self.insert_with(x, y, |_, _| {})
    }

    /// Like [`Closure::insert`], reporting every newly reachable `(a, b)`.
    pub fn insert_with(&mut self, x: usize, y: usize, mut on_new: impl FnMut(usize, usize)) -> bool {
        if x == y || self.reach.get(y, x) {
            return false;
        }
        if self.reach.get(x, y) {
            return true;
        }
        let mut target: Vec<u64> = self.reach.row(y).to_vec();
        target[y / 64] |= 1u64 << (y % 64);
        let mut sources = self.reach_t.ones_in_row(x);
        sources.push(x);
        for a in sources {
            if self.reach.get(a, y) {
                continue;
            }
            for (wi, &tw) in target.iter().enumerate() {
                let fresh = tw & !self.reach.word(a, wi);
                if fresh == 0 {
                    continue;
                }
                self.reach.set_word(a, wi, self.reach.word(a, wi) | fresh);
                let mut f = fresh;
                while f != 0 {
                    let b = wi * 64 + f.trailing_zeros() as usize;
                    f &= f - 1;
                    self.reach_t.set(b, a);
                    if let Some(log) = self.log.as_mut() {
                        log.push((a as u32, b as u32));
                    }
                    on_new(a, b);
                }
            }
        }
        true
    }

    pub fn begin_undo(&mut self) {
        self.log = Some(Vec::new());
    }

    pub fn commit(&mut self) {
        self.log = None;
    }

    pub fn rollback(&mut self) {
        if let Some(log) = self.log.take() {
            for (a, b) in log {
                self.reach.clear(a as usize, b as usize);
                self.reach_t.clear(b as usize, a as usize);
            }
        }
    }
}

/// Which pairs feed the cycle detector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Track {
    /// Every pair; the first circuit stops the caller.
    All,
    /// Only original pairs; circuits are recorded and the pair closing one
    /// loses its original flag.
    Original,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Added {
    Present,
    Fresh,
    /// Fresh, and closed a circuit among the tracked pairs.
    Circuit,
}

/// The relation `D` on `V(H)` with per-pair metadata.
#[derive(Clone, Debug)]
pub struct OrderRelation {
    n: usize,
    d: BitMatrix,
    dt: BitMatrix,
    orig: BitMatrix,
    level: Vec<u32>,
    dict: Vec<u32>,
    kind: Vec<u8>,
    arg: Vec<u32>,
    order: Vec<PairId>,
    reach: Closure,
    track: Track,
    journal: Option<usize>,
}

impl OrderRelation {
    pub fn new(n: usize, track: Track) -> Self {
        OrderRelation {
            n,
            d: BitMatrix::new(n),
            dt: BitMatrix::new(n),
            orig: BitMatrix::new(n),
            level: vec![0; n * n],
            dict: vec![NO_DICT; n * n],
            kind: vec![K_ABSENT; n * n],
            arg: vec![0; n * n],
            order: Vec::new(),
            reach: Closure::new(n),
            track,
            journal: None,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn track(&self) -> Track {
        self.track
    }

    pub fn set_track(&mut self, track: Track) {
        self.track = track;
    }

    #[inline]
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.d.get(x, y)
    }

    pub fn contains_pair(&self, p: PairVertex) -> bool {
        self.d.get(p.first, p.second)
    }

    /// Neither `(x, y)` nor `(y, x)` is present.
    #[inline]
    pub fn undecided(&self, x: usize, y: usize) -> bool {
        !self.d.get(x, y) && !self.d.get(y, x)
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.d
    }

    pub fn closure(&self) -> &Closure {
        &self.reach
    }

    pub fn is_original(&self, x: usize, y: usize) -> bool {
        self.orig.get(x, y)
    }

    /// Pairs in insertion order.
    pub fn pairs(&self) -> impl Iterator<Item = PairVertex> + '_ {
        self.order.iter().map(move |&id| self.pair_of(id))
    }

    #[inline]
    fn pair_of(&self, id: PairId) -> PairVertex {
        PairVertex::new(id as usize / self.n, id as usize % self.n)
    }

    #[inline]
    fn idx(&self, x: usize, y: usize) -> usize {
        x * self.n + y
    }

    pub fn meta(&self, p: PairVertex) -> Option<PairMeta> {
        let i = self.idx(p.first, p.second);
        let derivation = match self.kind[i] {
            K_ABSENT => return None,
            K_BASE => Derivation::Base(self.arg[i]),
            K_IMPLIED => Derivation::Implied(self.pair_of(self.arg[i])),
            K_TRANSITIVE => Derivation::Transitive(self.arg[i] as usize),
            _ => Derivation::Sink,
        };
        Some(PairMeta {
            level: self.level[i],
            dict: self.dict[i],
            derivation,
            original: self.orig.get(p.first, p.second),
        })
    }

    pub fn dict_of(&self, p: PairVertex) -> Result<u32> {
        if p.first >= self.n || p.second >= self.n || !self.contains_pair(p) {
            return Err(Error::UnknownPair(p.first, p.second));
        }
        Ok(self.dict[self.idx(p.first, p.second)])
    }

    #[inline]
    fn level_at(&self, x: usize, y: usize) -> u32 {
        self.level[self.idx(x, y)]
    }

    #[inline]
    fn kind_at(&self, x: usize, y: usize) -> u8 {
        self.kind[self.idx(x, y)]
    }

    /// Inserts a pair. It is original when its sources are; a pair that
    /// closes a circuit among original pairs is demoted.
    pub fn add(&mut self, p: PairVertex, level: u32, dict: u32, derivation: Derivation, sources_original: bool) -> Added {
        self.add_with(p, level, dict, derivation, sources_original, |_, _| {})
    }

    fn add_with(
        &mut self,
        p: PairVertex,
        level: u32,
        dict: u32,
        derivation: Derivation,
        sources_original: bool,
        on_new: impl FnMut(usize, usize),
    ) -> Added {
        let (x, y) = (p.first, p.second);
        debug_assert!(x != y);
        if self.d.get(x, y) {
            return Added::Present;
        }
        let original = sources_original;
        let i = self.idx(x, y);
        self.d.set(x, y);
        self.dt.set(y, x);
        self.level[i] = level;
        self.dict[i] = dict;
        let (k, a) = match derivation {
            Derivation::Base(c) => (K_BASE, c),
            Derivation::Implied(q) => (K_IMPLIED, (q.first * self.n + q.second) as u32),
            Derivation::Transitive(w) => (K_TRANSITIVE, w as u32),
            Derivation::Sink => (K_SINK, 0),
        };
        self.kind[i] = k;
        self.arg[i] = a;
        self.order.push(i as PairId);
        if original {
            self.orig.set(x, y);
        }
        let tracked = match self.track {
            Track::All => true,
            Track::Original => original,
        };
        if tracked && !self.reach.insert_with(x, y, on_new) {
            if self.track == Track::Original {
                self.orig.clear(x, y);
            }
            return Added::Circuit;
        }
        Added::Fresh
    }

    /// Starts recording insertions so they can be undone.
    pub fn checkpoint(&mut self) {
        self.journal = Some(self.order.len());
        self.reach.begin_undo();
    }

    pub fn commit(&mut self) {
        self.journal = None;
        self.reach.commit();
    }

    pub fn rollback(&mut self) {
        let Some(mark) = self.journal.take() else {
            return;
        };
        for id in self.order.drain(mark..) {
            let (x, y) = (id as usize / self.n, id as usize % self.n);
            self.d.clear(x, y);
            self.dt.clear(y, x);
            self.orig.clear(x, y);
            self.kind[id as usize] = K_ABSENT;
            self.dict[id as usize] = NO_DICT;
        }
        self.reach.rollback();
    }

    /// One line per pair in insertion order: `level pair derivation dict original`.
    pub fn trace_lines(&self, cs: &ComponentSet) -> Vec<String> {
        self.pairs()
            .map(|p| {
                let m = self.meta(p).expect("listed pair is present");
                let name = |c: u32| {
                    let id = cs.least_member(c) as usize;
                    PairVertex::new(id / self.n, id % self.n)
                };
                let der = match m.derivation {
                    Derivation::Base(c) => format!("base:{}", name(c)),
                    Derivation::Implied(q) => format!("implied:{q}"),
                    Derivation::Transitive(w) => format!("transitive:{w}"),
                    Derivation::Sink => "sink".to_string(),
                };
                let dict = if m.dict == NO_DICT {
                    "-".to_string()
                } else {
                    format!("{}", name(m.dict))
                };
                format!("{} {} {} {} {}", m.level, p, der, dict, u8::from(m.original))
            })
            .collect()
    }

    /// Shortest path `from ~> to` over present pairs accepted by `keep`.
    fn shortest_path(&self, from: usize, to: usize, keep: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
        let n = self.n;
        let mut prev = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        prev[from] = from;
        queue.push_back(from);
        while let Some(u) = queue.pop_front() {
            let mut hit = false;
            bits::for_each_one(self.d.row(u), |v| {
                if hit || prev[v] != usize::MAX || !keep(u, v) {
                    return;
                }
                prev[v] = u;
                if v == to {
                    hit = true;
                } else {
                    queue.push_back(v);
                }
            });
            if hit {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
        }
        None
    }

    /// The circuit closed by `(x, y)`: the pair followed by a shortest
    /// tracked path from `y` back to `x`.
    fn circuit_through(&self, x: usize, y: usize) -> Vec<PairVertex> {
        let path = match self.track {
            Track::All => self.shortest_path(y, x, |a, b| !(a == x && b == y)),
            Track::Original => self.shortest_path(y, x, |a, b| {
                self.orig.get(a, b) && self.kind_at(a, b) != K_TRANSITIVE
            }),
        }
        .expect("cycle detector and path search disagree");
        let mut pairs = vec![PairVertex::new(x, y)];
        for w in path.windows(2) {
            pairs.push(PairVertex::new(w[0], w[1]));
        }
        pairs
    }

    /// Derivation records for `pairs` and everything they depend on,
    /// dependencies first.
    pub fn derivation_records(&self, pairs: &[PairVertex], cs: &ComponentSet, pd: &PairDigraph<'_>) -> Vec<DerivationRecord> {
        let mut seen = vec![false; self.n * self.n];
        let mut out = Vec::new();
        for &p in pairs {
            let mut stack = vec![(p, false)];
            while let Some((q, expanded)) = stack.pop() {
                let i = self.idx(q.first, q.second);
                if seen[i] {
                    continue;
                }
                let m = self.meta(q).expect("derivation source must be present");
                if expanded {
                    seen[i] = true;
                    out.push(DerivationRecord::from_meta(q, m, cs, pd));
                    continue;
                }
                stack.push((q, true));
                match m.derivation {
                    Derivation::Implied(src) => stack.push((src, false)),
                    Derivation::Transitive(w) => {
                        stack.push((PairVertex::new(w, q.second), false));
                        stack.push((PairVertex::new(q.first, w), false));
                    }
                    _ => {}
                }
            }
        }
        out
    }

    fn trace_for(&self, pairs: Vec<PairVertex>, cs: &ComponentSet, pd: &PairDigraph<'_>) -> CircuitTrace {
        let closing = pairs[0];
        let dict = self.dict[self.idx(closing.first, closing.second)];
        let derivations = self.derivation_records(&pairs, cs, pd);
        CircuitTrace {
            pairs,
            closing,
            dictator: (dict != NO_DICT).then(|| pd.pair(cs.least_member(dict))),
            dictator_id: (dict != NO_DICT).then_some(dict),
            derivations,
        }
    }
}

/// How a pair entered `D`, with components named by their least member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum DerivationRef {
    Base { component: PairVertex },
    Implied { from: PairVertex },
    Transitive { via: usize },
    Sink,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationRecord {
    pub pair: PairVertex,
    pub level: u32,
    pub dict: Option<PairVertex>,
    pub original: bool,
    pub derivation: DerivationRef,
}

impl DerivationRecord {
    fn from_meta(p: PairVertex, m: PairMeta, cs: &ComponentSet, pd: &PairDigraph<'_>) -> Self {
        let rep = |c: u32| pd.pair(cs.least_member(c));
        DerivationRecord {
            pair: p,
            level: m.level,
            dict: (m.dict != NO_DICT).then(|| rep(m.dict)),
            original: m.original,
            derivation: match m.derivation {
                Derivation::Base(c) => DerivationRef::Base { component: rep(c) },
                Derivation::Implied(q) => DerivationRef::Implied { from: q },
                Derivation::Transitive(w) => DerivationRef::Transitive { via: w },
                Derivation::Sink => DerivationRef::Sink,
            },
        }
    }
}

/// A directed cycle of pairs on `V(H)` together with the derivations of its
/// pairs back to selected components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitTrace {
    /// `(x0,x1), (x1,x2), ..., (xk,x0)`.
    pub pairs: Vec<PairVertex>,
    /// The pair whose insertion closed the circuit.
    pub closing: PairVertex,
    /// Dict of the closing pair, as the least member of that component.
    pub dictator: Option<PairVertex>,
    #[serde(skip)]
    pub dictator_id: Option<u32>,
    pub derivations: Vec<DerivationRecord>,
}

impl CircuitTrace {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Vertices `x0, x1, ...` in circuit order.
    pub fn vertices(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.first).collect()
    }

    /// Whether consecutive pairs chain and the last returns to the start.
    pub fn closes(&self) -> bool {
        let k = self.pairs.len();
        k >= 2 && (0..k).all(|i| self.pairs[i].second == self.pairs[(i + 1) % k].first)
    }
}

pub type DictatorSet = BTreeSet<u32>;

/// Cycle check for a plain pair set: a shortest directed cycle, if any.
pub fn detect_circuit(pairs: &[PairVertex]) -> Option<Vec<PairVertex>> {
    let n = pairs.iter().map(|p| p.first.max(p.second) + 1).max().unwrap_or(0);
    let mut adj = vec![Vec::new(); n];
    for p in pairs {
        adj[p.first].push(p.second);
    }
    for a in adj.iter_mut() {
        a.sort_unstable();
        a.dedup();
    }
    let mut best: Option<Vec<usize>> = None;
    for s in 0..n {
        let mut prev = vec![usize::MAX; n];
        let mut queue = VecDeque::from([s]);
        let mut found = None;
        'bfs: while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if v == s {
                    found = Some(u);
                    break 'bfs;
                }
                if prev[v] == usize::MAX {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if let Some(last) = found {
            let mut cyc = vec![last];
            let mut cur = last;
            while cur != s {
                cur = prev[cur];
                cyc.push(cur);
            }
            cyc.reverse();
            if best.as_ref().is_none_or(|b| cyc.len() < b.len()) {
                best = Some(cyc);
            }
        }
    }
    best.map(|c| {
        let k = c.len();
        (0..k).map(|i| PairVertex::new(c[i], c[(i + 1) % k])).collect()
    })
}

/// Adds `S*` (members as base pairs, then their heads as implied pairs).
/// Returns the trace of the first circuit met; the caller rolls back.
pub fn insert_component_closure(
    rel: &mut OrderRelation,
    pd: &PairDigraph<'_>,
    cs: &ComponentSet,
    c: u32,
) -> std::result::Result<(), CircuitTrace> {
    for &m in cs.members(c) {
        let p = pd.pair(m);
        if rel.add(p, 0, c, Derivation::Base(c), true) == Added::Circuit {
            let pairs = rel.circuit_through(p.first, p.second);
            return Err(rel.trace_for(pairs, cs, pd));
        }
    }
    for &m in cs.members(c) {
        let from = pd.pair(m);
        let mut heads = Vec::new();
        pd.for_each_successor(m, |q| heads.push(pd.pair(q)));
        for q in heads {
            if rel.add(q, 0, c, Derivation::Implied(from), true) == Added::Circuit {
                let pairs = rel.circuit_through(q.first, q.second);
                return Err(rel.trace_for(pairs, cs, pd));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct Step2Selection {
    pub relation: OrderRelation,
    /// Selected components in processing order.
    pub chosen: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct Step2Failure {
    /// The component tried first (lower id of the couple).
    pub component: u32,
    pub with_component: CircuitTrace,
    pub with_couple: CircuitTrace,
    /// Components selected before the failing couple.
    pub chosen: Vec<u32>,
}

/// Greedy selection of one component per couple of nontrivial components.
pub fn step2_select(cs: &ComponentSet, pd: &PairDigraph<'_>) -> std::result::Result<Step2Selection, Box<Step2Failure>> {
    let mut rel = OrderRelation::new(pd.n(), Track::All);
    let mut chosen = Vec::new();
    for c in cs.nontrivial() {
        let cc = cs.couple(c);
        if cc < c {
            continue;
        }
        rel.checkpoint();
        let first = insert_component_closure(&mut rel, pd, cs, c);
        match first {
            Ok(()) => {
                rel.commit();
                chosen.push(c);
            }
            Err(t1) => {
                rel.rollback();
                rel.checkpoint();
                match insert_component_closure(&mut rel, pd, cs, cc) {
                    Ok(()) => {
                        rel.commit();
                        chosen.push(cc);
                    }
                    Err(t2) => {
                        rel.rollback();
                        return Err(Box::new(Step2Failure {
                            component: c,
                            with_component: t1,
                            with_couple: t2,
                            chosen,
                        }));
                    }
                }
            }
        }
    }
    Ok(Step2Selection { relation: rel, chosen })
}

#[derive(Clone, Debug, Default)]
pub struct EnvelopeReport {
    pub circuits: Vec<CircuitTrace>,
    pub dictators: DictatorSet,
    pub levels: u32,
    pub inserted: usize,
    /// Set when tracking all pairs and a circuit ended the computation.
    pub stopped: bool,
}

/// Pair sets whose traces are kept in full; later circuits only contribute
/// their Dict.
const MAX_RECORDED_CIRCUITS: usize = 64;

/// Closes `rel` under implication and transitivity, level by level.
///
/// Level 0 is the implication closure of the current pairs. Level `k`
/// composes pairs of levels `< k` where at least one of the two is of level
/// `k - 1`, then closes the new pairs under implication; implied pairs share
/// the level of their source.
pub fn compute_envelope(rel: &mut OrderRelation, pd: &PairDigraph<'_>, cs: &ComponentSet, exec: Exec) -> EnvelopeReport {
    let mut report = EnvelopeReport::default();
    let start_len = rel.len();
    let queue: VecDeque<PairId> = rel.order.iter().copied().collect();
    let mut level_start = 0usize;
    if close_implications(rel, pd, cs, queue, 0, &mut report) {
        report.inserted = rel.len() - start_len;
        return report;
    }
    let n = rel.n;
    let g = pd.base();
    let mut k = 1u32;
    loop {
        let level_end = rel.len();
        if level_start == level_end {
            break;
        }
        let mut delta = BitMatrix::new(n);
        let mut delta_rows = vec![false; n];
        for &id in &rel.order[level_start..level_end] {
            let (x, y) = (id as usize / n, id as usize % n);
            delta.set(x, y);
            delta_rows[x] = true;
        }
        level_start = level_end;
        let d = &rel.d;
        let rows: Vec<Vec<u32>> = par::map_range(exec, n, |x| {
            let words = d.words_per_row();
            let mut cand = vec![0u64; words];
            bits::for_each_one(delta.row(x), |w| {
                for (c, &r) in cand.iter_mut().zip(d.row(w)) {
                    *c |= r;
                }
            });
            bits::for_each_one(d.row(x), |w| {
                if delta_rows[w] {
                    for (c, &r) in cand.iter_mut().zip(delta.row(w)) {
                        *c |= r;
                    }
                }
            });
            for (c, &r) in cand.iter_mut().zip(d.row(x)) {
                *c &= !r;
            }
            cand[x / 64] &= !(1u64 << (x % 64));
            let mut out = Vec::new();
            bits::for_each_one(&cand, |y| out.push(y as u32));
            out
        });
        let mut fresh = VecDeque::new();
        for (x, ys) in rows.into_iter().enumerate() {
            for y in ys {
                let y = y as usize;
                let w = pick_via(rel, x, y, k);
                let dict = if g.same_color(x, y) {
                    rel.dict[rel.idx(w, y)]
                } else {
                    rel.dict[rel.idx(x, w)]
                };
                let src_orig = rel.orig.get(x, w) && rel.orig.get(w, y);
                let p = PairVertex::new(x, y);
                match rel.add(p, k, dict, Derivation::Transitive(w), src_orig) {
                    Added::Present => continue,
                    Added::Fresh => {}
                    Added::Circuit => {
                        if record_circuit(rel, pd, cs, p, &mut report) {
                            report.levels = k;
                            report.inserted = rel.len() - start_len;
                            return report;
                        }
                    }
                }
                fresh.push_back(rel.idx(x, y) as PairId);
            }
        }
        if close_implications(rel, pd, cs, fresh, k, &mut report) {
            report.levels = k;
            report.inserted = rel.len() - start_len;
            return report;
        }
        if rel.len() == level_end {
            break;
        }
        k += 1;
    }
    report.levels = k;
    report.inserted = rel.len() - start_len;
    report
}

/// A witness `w` for the composition `(x, w), (w, y)` with both sources
/// below level `k`, preferring two original sources.
fn pick_via(rel: &OrderRelation, x: usize, y: usize, k: u32) -> usize {
    let ok = |w: usize, need_orig: bool| {
        w != x
            && w != y
            && rel.d.get(w, y)
            && rel.level_at(x, w) < k
            && rel.level_at(w, y) < k
            && (!need_orig || (rel.orig.get(x, w) && rel.orig.get(w, y)))
    };
    let mut found = None;
    let mut from = 0;
    while let Some(w) = bits::next_one(rel.orig.row(x), from) {
        if ok(w, true) {
            found = Some(w);
            break;
        }
        from = w + 1;
    }
    if let Some(w) = found {
        return w;
    }
    from = 0;
    while let Some(w) = bits::next_one(rel.d.row(x), from) {
        if ok(w, false) {
            return w;
        }
        from = w + 1;
    }
    unreachable!("composition candidate ({x},{y}) without a witness")
}

/// Records a circuit closed by `p`; returns whether the caller must stop.
fn record_circuit(
    rel: &OrderRelation,
    pd: &PairDigraph<'_>,
    cs: &ComponentSet,
    p: PairVertex,
    report: &mut EnvelopeReport,
) -> bool {
    let dict = rel.dict[rel.idx(p.first, p.second)];
    if dict != NO_DICT {
        report.dictators.insert(dict);
    }
    if rel.track == Track::All || report.circuits.len() < MAX_RECORDED_CIRCUITS {
        let pairs = rel.circuit_through(p.first, p.second);
        report.circuits.push(rel.trace_for(pairs, cs, pd));
    }
    if rel.track == Track::All {
        report.stopped = true;
        return true;
    }
    false
}

/// Implication closure to a fixpoint starting from `queue`; new pairs take
/// `level`. Returns whether a circuit stopped the computation.
fn close_implications(
    rel: &mut OrderRelation,
    pd: &PairDigraph<'_>,
    cs: &ComponentSet,
    mut queue: VecDeque<PairId>,
    level: u32,
    report: &mut EnvelopeReport,
) -> bool {
    let g = pd.base();
    let n = rel.n;
    let mut heads: Vec<usize> = Vec::new();
    while let Some(id) = queue.pop_front() {
        let (x, y) = (id as usize / n, id as usize % n);
        let src = PairVertex::new(x, y);
        let dict = rel.dict[id as usize];
        let orig = rel.orig.get(x, y);
        heads.clear();
        let same = g.same_color(x, y);
        if same {
            // (x, y) -> (u, y) for u in N(x) \ N(y), skipping present pairs
            let (nx, ny, col) = (g.neighbor_bits(x), g.neighbor_bits(y), rel.dt.row(y));
            for wi in 0..nx.len() {
                let mut w = nx[wi] & !ny[wi] & !col[wi];
                while w != 0 {
                    heads.push(wi * 64 + w.trailing_zeros() as usize);
                    w &= w - 1;
                }
            }
        } else if !g.adjacent(x, y) {
            let (ny, row) = (g.neighbor_bits(y), rel.d.row(x));
            for wi in 0..ny.len() {
                let mut w = ny[wi] & !row[wi];
                while w != 0 {
                    heads.push(wi * 64 + w.trailing_zeros() as usize);
                    w &= w - 1;
                }
            }
        }
        for &h in &heads {
            let q = if same { PairVertex::new(h, y) } else { PairVertex::new(x, h) };
            match rel.add(q, level, dict, Derivation::Implied(src), orig) {
                Added::Present => continue,
                Added::Fresh => {}
                Added::Circuit => {
                    if record_circuit(rel, pd, cs, q, report) {
                        return true;
                    }
                }
            }
            queue.push_back(rel.idx(q.first, q.second) as PairId);
        }
    }
    false
}

/// Adds `p` as a completion pair and restores closure under implication and
/// transitivity. Requires `rel` to track all pairs and to be transitively
/// closed. Returns the offending pair if a circuit forms.
pub fn complete_with(
    rel: &mut OrderRelation,
    pd: &PairDigraph<'_>,
    p: PairVertex,
    level: u32,
) -> std::result::Result<usize, PairVertex> {
    debug_assert_eq!(rel.track, Track::All);
    let g = pd.base();
    let n = rel.n;
    let before = rel.len();
    let mut pending: Vec<(usize, usize, usize)> = Vec::new();
    let mut queue: VecDeque<PairId> = VecDeque::new();

    let mut new_bits = Vec::new();
    match rel.add_with(p, level, NO_DICT, Derivation::Sink, false, |a, b| new_bits.push((a, b))) {
        Added::Circuit => return Err(p),
        Added::Present => return Ok(0),
        Added::Fresh => {}
    }
    let via_of = |a: usize, b: usize, x: usize, y: usize| if a != x { x } else if b != y { y } else { x };
    pending.extend(new_bits.drain(..).map(|(a, b)| (a, b, via_of(a, b, p.first, p.second))));
    queue.push_back(rel.idx(p.first, p.second) as PairId);

    loop {
        while let Some((a, b, w)) = pending.pop() {
            if rel.d.get(a, b) {
                continue;
            }
            // Already reachable: register in D without touching the closure.
            let i = rel.idx(a, b);
            rel.d.set(a, b);
            rel.dt.set(b, a);
            rel.level[i] = level;
            rel.dict[i] = NO_DICT;
            rel.kind[i] = K_TRANSITIVE;
            rel.arg[i] = w as u32;
            rel.order.push(i as PairId);
            queue.push_back(i as PairId);
        }
        let Some(id) = queue.pop_front() else {
            break;
        };
        let (x, y) = (id as usize / n, id as usize % n);
        let src = PairVertex::new(x, y);
        let mut heads = Vec::new();
        if g.same_color(x, y) {
            let (nx, ny, col) = (g.neighbor_bits(x), g.neighbor_bits(y), rel.dt.row(y));
            for wi in 0..nx.len() {
                let mut w = nx[wi] & !ny[wi] & !col[wi];
                while w != 0 {
                    heads.push(PairVertex::new(wi * 64 + w.trailing_zeros() as usize, y));
                    w &= w - 1;
                }
            }
        } else if !g.adjacent(x, y) {
            let (ny, row) = (g.neighbor_bits(y), rel.d.row(x));
            for wi in 0..ny.len() {
                let mut w = ny[wi] & !row[wi];
                while w != 0 {
                    heads.push(PairVertex::new(x, wi * 64 + w.trailing_zeros() as usize));
                    w &= w - 1;
                }
            }
        }
        for q in heads {
            let mut nb = Vec::new();
            match rel.add_with(q, level, NO_DICT, Derivation::Implied(src), false, |a, b| nb.push((a, b))) {
                Added::Circuit => return Err(q),
                Added::Present => continue,
                Added::Fresh => {}
            }
            pending.extend(nb.into_iter().map(|(a, b)| (a, b, via_of(a, b, q.first, q.second))));
            queue.push_back(rel.idx(q.first, q.second) as PairId);
        }
    }
    Ok(rel.len() - before)
}

/// Rotates a 4-pair circuit so that its vertices read white, black, black,
/// white. Returns `None` when the circuit has another length or pattern.
pub fn canonical_four_circuit(g: &Bigraph, c: &CircuitTrace) -> Option<CircuitTrace> {
    if c.pairs.len() != 4 || !c.closes() {
        return None;
    }
    let vs = c.vertices();
    let want = [Color::White, Color::Black, Color::Black, Color::White];
    (0..4)
        .find(|&r| (0..4).all(|i| g.color(vs[(r + i) % 4]) == want[i]))
        .map(|r| {
            let mut out = c.clone();
            out.pairs.rotate_left(r);
            out
        })
}

/// The earliest recorded circuit, which must have four pairs in the
/// white/black/black/white arrangement.
pub fn extract_minimal_circuit(g: &Bigraph, traces: &[CircuitTrace]) -> std::result::Result<CircuitTrace, String> {
    let first = traces.first().ok_or_else(|| "no circuit recorded".to_string())?;
    canonical_four_circuit(g, first).ok_or_else(|| {
        let colors: String = first.vertices().iter().map(|&v| g.color(v).letter()).collect();
        format!(
            "first recorded circuit has {} pairs with colors {colors}; expected 4 pairs colored WBBW",
            first.pairs.len()
        )
    })
}
