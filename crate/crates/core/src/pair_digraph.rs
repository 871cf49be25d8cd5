//! The pair-digraph `H+` of a bigraph and its strong components.
//!
//! Vertices are ordered pairs `(u, v)`, `u != v`. Arcs:
//!
//! * same color: `(u, v) -> (u', v)` whenever `uu'` is an edge and `vu'` is not;
//! * different colors: `(u, v) -> (u, v')` whenever `vv'` is an edge and `uv` is not.
//!
//! Arcs are never stored by default; they are enumerated from the bigraph's
//! adjacency rows on demand.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bigraph::Bigraph;
use crate::bits;
use crate::par::{self, Exec};

/// Dense index of a pair: `first * n + second`.
pub type PairId = u32;

pub const NO_COMPONENT: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairVertex {
    pub first: usize,
    pub second: usize,
}

impl PairVertex {
    pub fn new(first: usize, second: usize) -> Self {
        PairVertex { first, second }
    }

    pub fn skew(self) -> Self {
        skew(self)
    }
}

impl std::fmt::Display for PairVertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.first, self.second)
    }
}

/// `(u, v) -> (v, u)`.
pub fn skew(p: PairVertex) -> PairVertex {
    PairVertex {
        first: p.second,
        second: p.first,
    }
}

/// Largest `n` whose pair space fits in a `u32` index.
pub const MAX_VERTICES: usize = 65_535;

#[derive(Clone, Copy, Debug)]
pub struct PairDigraph<'g> {
    g: &'g Bigraph,
    n: usize,
}

impl<'g> PairDigraph<'g> {
    pub fn new(g: &'g Bigraph) -> Self {
        assert!(g.n() <= MAX_VERTICES, "pair space exceeds u32 index range");
        PairDigraph { g, n: g.n() }
    }

    #[inline]
    pub fn base(&self) -> &'g Bigraph {
        self.g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Size of the index space (`n * n`, diagonal included but unused).
    #[inline]
    pub fn id_space(&self) -> usize {
        self.n * self.n
    }

    #[inline]
    pub fn id(&self, p: PairVertex) -> PairId {
        (p.first * self.n + p.second) as PairId
    }

    #[inline]
    pub fn id_of(&self, u: usize, v: usize) -> PairId {
        (u * self.n + v) as PairId
    }

    #[inline]
    pub fn pair(&self, id: PairId) -> PairVertex {
        let id = id as usize;
        PairVertex {
            first: id / self.n,
            second: id % self.n,
        }
    }

    #[inline]
    pub fn skew_id(&self, id: PairId) -> PairId {
        let id = id as usize;
        ((id % self.n) * self.n + id / self.n) as PairId
    }

    #[inline]
    pub fn is_diagonal(&self, id: PairId) -> bool {
        let id = id as usize;
        id / self.n == id % self.n
    }

    /// Resumable successor enumeration. `cursor` starts at 0; successors come
    /// out in lexicographic order of the target pair.
    #[inline]
    pub fn next_successor(&self, id: PairId, cursor: &mut u32) -> Option<PairId> {
        let id = id as usize;
        let (u, v) = (id / self.n, id % self.n);
        if self.g.same_color(u, v) {
            // (u, v) -> (u', v), u' in N(u) \ N(v)
            let a = self.g.neighbor_bits(u);
            let b = self.g.neighbor_bits(v);
            let up = next_diff_one(a, b, *cursor as usize)?;
            *cursor = up as u32 + 1;
            Some((up * self.n + v) as PairId)
        } else {
            // (u, v) -> (u, v'), v' in N(v), provided uv is a non-edge
            if self.g.adjacent(u, v) {
                return None;
            }
            let nv = self.g.neighbors(v);
            let i = *cursor as usize;
            if i >= nv.len() {
                return None;
            }
            *cursor += 1;
            Some((u * self.n + nv[i]) as PairId)
        }
    }

    pub fn for_each_successor(&self, id: PairId, mut f: impl FnMut(PairId)) {
        let mut cur = 0;
        while let Some(q) = self.next_successor(id, &mut cur) {
            f(q);
        }
    }

    pub fn successors(&self, p: PairVertex) -> Vec<PairVertex> {
        let mut out = Vec::new();
        self.for_each_successor(self.id(p), |q| out.push(self.pair(q)));
        out
    }

    /// Predecessors via skew-symmetry: `q -> p` iff `skew(p) -> skew(q)`.
    pub fn for_each_predecessor(&self, id: PairId, mut f: impl FnMut(PairId)) {
        self.for_each_successor(self.skew_id(id), |q| f(self.skew_id(q)));
    }

    pub fn has_successor(&self, id: PairId) -> bool {
        let mut cur = 0;
        self.next_successor(id, &mut cur).is_some()
    }

    pub fn out_degree(&self, id: PairId) -> usize {
        let (u, v) = (id as usize / self.n, id as usize % self.n);
        if u == v {
            return 0;
        }
        if self.g.same_color(u, v) {
            let a = self.g.neighbor_bits(u);
            let b = self.g.neighbor_bits(v);
            a.iter().zip(b).map(|(x, y)| (x & !y).count_ones() as usize).sum()
        } else if self.g.adjacent(u, v) {
            0
        } else {
            self.g.degree(v)
        }
    }

    pub fn has_arc(&self, p: PairVertex, q: PairVertex) -> bool {
        let g = self.g;
        if p.first == p.second || q.first == q.second {
            return false;
        }
        if g.same_color(p.first, p.second) {
            q.second == p.second && g.adjacent(p.first, q.first) && !g.adjacent(p.second, q.first)
        } else {
            q.first == p.first && g.adjacent(p.second, q.second) && !g.adjacent(p.first, p.second)
        }
    }

    /// Total number of arcs of `H+`.
    pub fn arc_count(&self, exec: Exec) -> u64 {
        let n = self.n;
        par::sum_range(exec, n, |u| {
            (0..n)
                .filter(|&v| v != u)
                .map(|v| self.out_degree(self.id_of(u, v)) as u64)
                .sum()
        })
    }

    /// Every pair id except the diagonal, in increasing order.
    pub fn pair_ids(&self) -> impl Iterator<Item = PairId> + '_ {
        (0..self.id_space() as PairId).filter(move |&id| !self.is_diagonal(id))
    }
}

/// First index `>= from` set in `a` and clear in `b`.
#[inline]
fn next_diff_one(a: &[u64], b: &[u64], from: usize) -> Option<usize> {
    let mut wi = from / 64;
    if wi >= a.len() {
        return None;
    }
    let mut w = (a[wi] & !b[wi]) & (!0u64 << (from % 64));
    loop {
        if w != 0 {
            return Some(wi * 64 + w.trailing_zeros() as usize);
        }
        wi += 1;
        if wi == a.len() {
            return None;
        }
        w = a[wi] & !b[wi];
    }
}

/// Builds the implicit pair-digraph view.
pub fn build_pair_digraph(g: &Bigraph) -> PairDigraph<'_> {
    PairDigraph::new(g)
}

/// Compressed adjacency of `H+`, built only when it fits a memory budget.
#[derive(Clone, Debug)]
pub struct MaterializedArcs {
    pub offsets: Vec<u64>,
    pub targets: Vec<PairId>,
}

impl MaterializedArcs {
    /// Returns `None` when the arc array would exceed `budget_bytes`.
    pub fn build(pd: &PairDigraph<'_>, budget_bytes: usize, exec: Exec) -> Option<Self> {
        let arcs = pd.arc_count(exec) as usize;
        let need = arcs * std::mem::size_of::<PairId>() + (pd.id_space() + 1) * 8;
        if need > budget_bytes {
            return None;
        }
        let mut offsets = Vec::with_capacity(pd.id_space() + 1);
        let mut targets = Vec::with_capacity(arcs);
        offsets.push(0);
        for id in 0..pd.id_space() as PairId {
            if !pd.is_diagonal(id) {
                pd.for_each_successor(id, |q| targets.push(q));
            }
            offsets.push(targets.len() as u64);
        }
        Some(MaterializedArcs { offsets, targets })
    }

    pub fn successors(&self, id: PairId) -> &[PairId] {
        &self.targets[self.offsets[id as usize] as usize..self.offsets[id as usize + 1] as usize]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    Source,
    Sink,
    Internal,
    Nontrivial,
}

/// Strong components of `H+` with coupling and condensation data.
///
/// Component ids are assigned in increasing order of each component's least
/// member pair, so they are stable across runs.
#[derive(Clone, Debug)]
pub struct ComponentSet {
    n: usize,
    comp_of: Vec<u32>,
    /// Members grouped by component: `members[start[c]..start[c + 1]]`, sorted.
    members: Vec<PairId>,
    start: Vec<u32>,
    role: Vec<Role>,
    depth: Vec<u8>,
    self_coupled: Option<u32>,
}

/// Read-only view of one component.
#[derive(Clone, Copy, Debug)]
pub struct Component<'a> {
    pub id: u32,
    pub members: &'a [PairId],
    pub couple_id: u32,
    pub role: Role,
}

impl Component<'_> {
    pub fn trivial(&self) -> bool {
        self.members.len() == 1
    }
}

impl ComponentSet {
    pub fn len(&self) -> usize {
        self.start.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn comp_of(&self, id: PairId) -> u32 {
        self.comp_of[id as usize]
    }

    pub fn comp_of_pair(&self, p: PairVertex) -> u32 {
        self.comp_of[p.first * self.n + p.second]
    }

    #[inline]
    pub fn members(&self, c: u32) -> &[PairId] {
        &self.members[self.start[c as usize] as usize..self.start[c as usize + 1] as usize]
    }

    #[inline]
    pub fn size(&self, c: u32) -> usize {
        (self.start[c as usize + 1] - self.start[c as usize]) as usize
    }

    #[inline]
    pub fn is_trivial(&self, c: u32) -> bool {
        self.size(c) == 1
    }

    #[inline]
    pub fn least_member(&self, c: u32) -> PairId {
        self.members[self.start[c as usize] as usize]
    }

    pub fn couple(&self, c: u32) -> u32 {
        let p = self.least_member(c) as usize;
        let sk = (p % self.n) * self.n + p / self.n;
        self.comp_of[sk]
    }

    pub fn role(&self, c: u32) -> Role {
        self.role[c as usize]
    }

    /// Vertex count of the longest condensation path starting at `c`.
    pub fn depth_from(&self, c: u32) -> usize {
        self.depth[c as usize] as usize
    }

    pub fn self_coupled(&self) -> Option<u32> {
        self.self_coupled
    }

    pub fn component(&self, c: u32) -> Component<'_> {
        Component {
            id: c,
            members: self.members(c),
            couple_id: self.couple(c),
            role: self.role(c),
        }
    }

    /// Ids of nontrivial components in increasing order.
    pub fn nontrivial(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.len() as u32).filter(move |&c| !self.is_trivial(c))
    }

    pub fn same_component(&self, p: PairVertex, q: PairVertex) -> bool {
        self.comp_of_pair(p) == self.comp_of_pair(q)
    }
}

/// Exact SCC partition of `H+` by an iterative Tarjan traversal over the
/// implicit arc oracle. Also computes coupling, trivial roles and
/// longest-path depth in the condensation.
pub fn strong_components(pd: &PairDigraph<'_>) -> ComponentSet {
    let n = pd.n();
    let space = pd.id_space();
    const UNSEEN: u32 = 0;
    let mut index = vec![UNSEEN; space];
    let mut low = vec![0u32; space];
    let mut temp_comp = vec![NO_COMPONENT; space];
    let mut best = vec![0u8; space];
    let mut temp_depth: Vec<u8> = Vec::new();
    let mut stack: Vec<PairId> = Vec::new();
    let mut call: Vec<(PairId, u32)> = Vec::new();
    let mut counter: u32 = 0;

    for root in 0..space as PairId {
        if pd.is_diagonal(root) || index[root as usize] != UNSEEN {
            continue;
        }
        counter += 1;
        index[root as usize] = counter;
        low[root as usize] = counter;
        stack.push(root);
        call.push((root, 0));

        while let Some(&mut (v, ref mut cursor)) = call.last_mut() {
            if let Some(w) = pd.next_successor(v, cursor) {
                let wu = w as usize;
                if index[wu] == UNSEEN {
                    counter += 1;
                    index[wu] = counter;
                    low[wu] = counter;
                    stack.push(w);
                    call.push((w, 0));
                } else if temp_comp[wu] == NO_COMPONENT {
                    let vu = v as usize;
                    low[vu] = low[vu].min(index[wu]);
                } else {
                    let d = temp_depth[temp_comp[wu] as usize];
                    let vu = v as usize;
                    best[vu] = best[vu].max(d);
                }
                continue;
            }
            call.pop();
            let vu = v as usize;
            if low[vu] == index[vu] {
                let cid = temp_depth.len() as u32;
                let mut deepest = 0u8;
                loop {
                    let x = stack.pop().expect("tarjan stack underflow");
                    temp_comp[x as usize] = cid;
                    deepest = deepest.max(best[x as usize]);
                    if x == v {
                        break;
                    }
                }
                temp_depth.push(deepest.saturating_add(1));
            }
            if let Some(&(parent, _)) = call.last() {
                let pu = parent as usize;
                if temp_comp[vu] == NO_COMPONENT {
                    low[pu] = low[pu].min(low[vu]);
                } else {
                    let d = temp_depth[temp_comp[vu] as usize];
                    best[pu] = best[pu].max(d);
                    if low[vu] != index[vu] {
                        low[pu] = low[pu].min(low[vu]);
                    }
                }
            }
        }
    }
    drop(index);
    drop(low);
    drop(best);

    // Renumber by least member pair.
    let temp_count = temp_depth.len();
    let mut remap = vec![NO_COMPONENT; temp_count];
    let mut next = 0u32;
    let mut sizes: Vec<u32> = Vec::with_capacity(temp_count);
    let mut comp_of = temp_comp;
    for slot in comp_of.iter_mut().take(space) {
        let t = *slot;
        if t == NO_COMPONENT {
            continue;
        }
        let r = &mut remap[t as usize];
        if *r == NO_COMPONENT {
            *r = next;
            next += 1;
            sizes.push(0);
        }
        *slot = *r;
        sizes[*r as usize] += 1;
    }
    let count = next as usize;
    let mut depth = vec![0u8; count];
    for (t, &r) in remap.iter().enumerate() {
        depth[r as usize] = temp_depth[t];
    }
    let mut start = Vec::with_capacity(count + 1);
    start.push(0u32);
    for c in 0..count {
        start.push(start[c] + sizes[c]);
    }
    let mut fill: Vec<u32> = start[..count].to_vec();
    let mut members = vec![0 as PairId; start[count] as usize];
    for (id, &c) in comp_of.iter().enumerate().take(space) {
        if c != NO_COMPONENT {
            members[fill[c as usize] as usize] = id as PairId;
            fill[c as usize] += 1;
        }
    }

    let mut role = vec![Role::Nontrivial; count];
    let mut self_coupled = None;
    for c in 0..count {
        let p = members[start[c] as usize];
        let sk = pd.skew_id(p);
        if comp_of[sk as usize] == c as u32 && self_coupled.is_none() {
            self_coupled = Some(c as u32);
        }
        if start[c + 1] - start[c] == 1 {
            let out = pd.has_successor(p);
            let inn = pd.has_successor(sk);
            role[c] = if !out {
                Role::Sink
            } else if !inn {
                Role::Source
            } else {
                Role::Internal
            };
        }
    }

    ComponentSet {
        n,
        comp_of,
        members,
        start,
        role,
        depth,
        self_coupled,
    }
}

/// Recomputes the trivial-component roles from the arc oracle. Roles are
/// already filled by [`strong_components`]; this is the standalone form.
pub fn classify_trivial(mut cs: ComponentSet, pd: &PairDigraph<'_>) -> ComponentSet {
    for c in 0..cs.len() as u32 {
        if !cs.is_trivial(c) {
            cs.role[c as usize] = Role::Nontrivial;
            continue;
        }
        let p = cs.least_member(c);
        let out = pd.has_successor(p);
        let inn = pd.has_successor(pd.skew_id(p));
        cs.role[c as usize] = if !out {
            Role::Sink
        } else if !inn {
            Role::Source
        } else {
            Role::Internal
        };
    }
    cs
}

/// One implication step: `R* = R ∪ out-neighbors(R)`.
pub fn implication_closure(pd: &PairDigraph<'_>, r: &BTreeSet<PairVertex>) -> BTreeSet<PairVertex> {
    let mut out = r.clone();
    for &p in r {
        pd.for_each_successor(pd.id(p), |q| {
            out.insert(pd.pair(q));
        });
    }
    out
}

/// Whether `p` is dominated by a member of a nontrivial component it does not belong to.
pub fn implied_by_nontrivial(pd: &PairDigraph<'_>, cs: &ComponentSet, p: PairVertex) -> bool {
    let id = pd.id(p);
    let own = cs.comp_of(id);
    let mut found = false;
    pd.for_each_predecessor(id, |q| {
        let c = cs.comp_of(q);
        if c != own && !cs.is_trivial(c) {
            found = true;
        }
    });
    found
}

/// An induced path `a, b, c, d, e` with `N(a) ⊂ N(c)` witnessing that
/// `p = (a, c)` is implied by a nontrivial component; `None` when `p` is not.
pub fn implied_witness(g: &Bigraph, cs: &ComponentSet, p: PairVertex) -> Option<[usize; 5]> {
    let (a, c) = (p.first, p.second);
    if a == c || !g.same_color(a, c) {
        return None;
    }
    let pd = PairDigraph::new(g);
    if !implied_by_nontrivial(&pd, cs, p) {
        return None;
    }
    find_p5_witness(g, a, c)
}

/// Searches for an induced path `a, b, c, d, e` with `N(a) ⊆ N(c)`.
pub fn find_p5_witness(g: &Bigraph, a: usize, c: usize) -> Option<[usize; 5]> {
    if a == c || !g.same_color(a, c) {
        return None;
    }
    if g.neighbors(a).iter().any(|&x| !g.adjacent(x, c)) {
        return None;
    }
    for &b in g.neighbors(a) {
        for &d in g.neighbors(c) {
            if g.adjacent(a, d) {
                continue;
            }
            for &e in g.neighbors(d) {
                if e != c && !g.adjacent(b, e) {
                    return Some([a, b, c, d, e]);
                }
            }
        }
    }
    None
}

/// Two independent edges `uu'`, `vv'` through the endpoints of `(u, v)`.
pub fn independent_edges_through(g: &Bigraph, p: PairVertex) -> Option<(usize, usize)> {
    let (u, v) = (p.first, p.second);
    if u == v || g.adjacent(u, v) {
        return None;
    }
    for &up in g.neighbors(u) {
        if up == v || g.adjacent(up, v) {
            continue;
        }
        for &vp in g.neighbors(v) {
            if vp == u || vp == up || g.adjacent(u, vp) || g.adjacent(up, vp) {
                continue;
            }
            return Some((up, vp));
        }
    }
    None
}

/// True iff `ab` and `cd` are edges and `{a,b,c,d}` induces nothing else.
pub fn are_independent(g: &Bigraph, a: usize, b: usize, c: usize, d: usize) -> bool {
    let vs = [a, b, c, d];
    for i in 0..4 {
        for j in i + 1..4 {
            if vs[i] == vs[j] {
                return false;
            }
        }
    }
    g.adjacent(a, b)
        && g.adjacent(c, d)
        && !g.adjacent(a, c)
        && !g.adjacent(a, d)
        && !g.adjacent(b, c)
        && !g.adjacent(b, d)
}

/// Vertex count of the longest directed path in the condensation.
pub fn condensation_depth(cs: &ComponentSet, _pd: &PairDigraph<'_>) -> usize {
    (0..cs.len() as u32).map(|c| cs.depth_from(c)).max().unwrap_or(0)
}

/// The structure of the six components on three vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleCase {
    /// All six components pairwise distinct.
    Distinct,
    /// Two of the forward components coincide (and so do their couples).
    TwoMerged,
    /// The three forward components coincide.
    AllMerged,
}

/// Classifies `S_uv, S_vu, S_vw, S_wv, S_uw, S_wu` up to a permutation of
/// `u, v, w`. Requires `S_uv` and `S_vw` to be nontrivial; returns `None`
/// when that fails or no case matches.
pub fn classify_triple(pd: &PairDigraph<'_>, cs: &ComponentSet, u: usize, v: usize, w: usize) -> Option<TripleCase> {
    let s = |a: usize, b: usize| cs.comp_of(pd.id_of(a, b));
    if cs.is_trivial(s(u, v)) || cs.is_trivial(s(v, w)) || cs.is_trivial(s(u, w)) {
        return None;
    }
    let six = [s(u, v), s(v, u), s(v, w), s(w, v), s(u, w), s(w, u)];
    let distinct = |xs: &[u32]| {
        let set: BTreeSet<u32> = xs.iter().copied().collect();
        set.len() == xs.len()
    };
    if distinct(&six) {
        return Some(TripleCase::Distinct);
    }
    let perms = [
        [u, v, w],
        [u, w, v],
        [v, u, w],
        [v, w, u],
        [w, u, v],
        [w, v, u],
    ];
    for [a, b, c] in perms {
        if s(a, b) == s(b, c) && s(a, b) == s(a, c) && s(b, a) == s(c, b) && s(b, a) == s(c, a) && s(a, b) != s(b, a) {
            return Some(TripleCase::AllMerged);
        }
    }
    for [a, b, c] in perms {
        if s(a, b) == s(a, c) && s(c, a) == s(b, a) && distinct(&[s(a, b), s(c, a), s(b, c), s(c, b)]) {
            return Some(TripleCase::TwoMerged);
        }
    }
    None
}

/// DOT rendering of the nontrivial part of the condensation plus the trivial
/// components adjacent to it. Couples are joined by dashed edges.
pub fn condensation_dot(pd: &PairDigraph<'_>, cs: &ComponentSet) -> String {
    let mut out = String::from("digraph condensation {\n");
    let mut shown = BTreeSet::new();
    let mut arcs = BTreeSet::new();
    for c in cs.nontrivial() {
        shown.insert(c);
        for &p in cs.members(c) {
            pd.for_each_successor(p, |q| {
                let d = cs.comp_of(q);
                if d != c {
                    shown.insert(d);
                    arcs.insert((c, d));
                }
            });
            pd.for_each_predecessor(p, |q| {
                let d = cs.comp_of(q);
                if d != c {
                    shown.insert(d);
                    arcs.insert((d, c));
                }
            });
        }
    }
    for &c in &shown {
        let p = pd.pair(cs.least_member(c));
        let _ = writeln!(
            out,
            "  c{c} [label=\"S{c} {p} x{}\"{}];",
            cs.size(c),
            if cs.is_trivial(c) { ", shape=box" } else { "" }
        );
    }
    for (a, b) in &arcs {
        let _ = writeln!(out, "  c{a} -> c{b};");
    }
    for &c in &shown {
        let d = cs.couple(c);
        if c < d && shown.contains(&d) {
            let _ = writeln!(out, "  c{c} -> c{d} [style=dashed, dir=none];");
        }
    }
    out.push_str("}\n");
    out
}

/// Shortest arc path from `from` to `to` staying inside `allowed`.
pub fn shortest_path_within(
    pd: &PairDigraph<'_>,
    from: PairId,
    to: PairId,
    allowed: impl Fn(PairId) -> bool,
) -> Option<Vec<PairId>> {
    let mut prev: std::collections::HashMap<PairId, PairId> = std::collections::HashMap::new();
    let mut queue = VecDeque::new();
    prev.insert(from, from);
    queue.push_back(from);
    while let Some(x) = queue.pop_front() {
        if x == to && x != from {
            break;
        }
        let mut next = Vec::new();
        pd.for_each_successor(x, |y| next.push(y));
        for y in next {
            if !allowed(y) || prev.contains_key(&y) {
                continue;
            }
            prev.insert(y, x);
            if y == to {
                queue.clear();
                break;
            }
            queue.push_back(y);
        }
    }
    if !prev.contains_key(&to) {
        return None;
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[&cur];
        path.push(cur);
    }
    path.reverse();
    Some(path)
}

#[doc(hidden)]
pub fn row_diff_count(a: &[u64], b: &[u64]) -> usize {
    let mut c = 0;
    bits::for_each_one(a, |i| {
        if b[i / 64] >> (i % 64) & 1 == 0 {
            c += 1
        }
    });
    c
}
