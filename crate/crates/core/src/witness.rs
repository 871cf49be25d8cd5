//! Independent checks: certificate verification, exobicliques, pre-insect
//! decomposition, and an exact exponential oracle.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bigraph::{check_ordering, validate_intervals, Bigraph, Color, IntervalModel, Ordering};
use crate::engine::{CircuitTrace, DerivationRef, Step2Failure};
use crate::error::{Error, Result};
use crate::pair_digraph::{
    are_independent, build_pair_digraph, strong_components, ComponentSet, PairDigraph, PairVertex,
};
use crate::recognizer::{Certificate, Witness};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExoBiclique {
    /// Black side of the biclique.
    pub m: Vec<usize>,
    /// White side of the biclique.
    pub n: Vec<usize>,
    pub black_triple: [usize; 3],
    pub white_triple: [usize; 3],
}

impl ExoBiclique {
    pub fn relabel(&self, ids: &[usize]) -> ExoBiclique {
        let map = |v: &Vec<usize>| v.iter().map(|&x| ids[x]).collect();
        ExoBiclique {
            m: map(&self.m),
            n: map(&self.n),
            black_triple: self.black_triple.map(|x| ids[x]),
            white_triple: self.white_triple.map(|x| ids[x]),
        }
    }
}

/// Whether the neighborhoods of `t` restricted to `within` are pairwise incomparable.
fn incomparable_within(g: &Bigraph, t: &[usize; 3], within: &[usize]) -> bool {
    let nbhd = |v: usize| -> BTreeSet<usize> { within.iter().copied().filter(|&u| g.adjacent(v, u)).collect() };
    let sets: Vec<BTreeSet<usize>> = t.iter().map(|&v| nbhd(v)).collect();
    for i in 0..3 {
        for j in 0..3 {
            if i != j && sets[i].is_subset(&sets[j]) {
                return false;
            }
        }
    }
    true
}

pub fn check_exobiclique(g: &Bigraph, e: &ExoBiclique) -> bool {
    let n = g.n();
    let all: Vec<usize> = e
        .m
        .iter()
        .chain(&e.n)
        .chain(&e.black_triple)
        .chain(&e.white_triple)
        .copied()
        .collect();
    if all.iter().any(|&v| v >= n) || e.m.is_empty() || e.n.is_empty() {
        return false;
    }
    let distinct: BTreeSet<usize> = all.iter().copied().collect();
    if distinct.len() != all.len() {
        return false;
    }
    let colored = |vs: &[usize], c: Color| vs.iter().all(|&v| g.color(v) == c);
    if !colored(&e.m, Color::Black)
        || !colored(&e.black_triple, Color::Black)
        || !colored(&e.n, Color::White)
        || !colored(&e.white_triple, Color::White)
    {
        return false;
    }
    if !e.m.iter().all(|&x| e.n.iter().all(|&y| g.adjacent(x, y))) {
        return false;
    }
    incomparable_within(g, &e.black_triple, &e.n) && incomparable_within(g, &e.white_triple, &e.m)
}

fn triples(vs: &[usize]) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            for k in j + 1..vs.len() {
                out.push([vs[i], vs[j], vs[k]]);
            }
        }
    }
    out
}

/// Searches `pool` for an exobiclique, giving up after `budget` steps.
///
/// For fixed triples the biclique sides are assembled from incomparability
/// witnesses: for every ordered pair `(i, j)` of a triple, a vertex adjacent
/// to the `i`-th but not the `j`-th member. All witnesses together must form
/// a biclique.
pub fn find_exobiclique(g: &Bigraph, pool: &[usize], budget: usize) -> Option<ExoBiclique> {
    let blacks: Vec<usize> = pool.iter().copied().filter(|&v| g.color(v) == Color::Black).collect();
    let whites: Vec<usize> = pool.iter().copied().filter(|&v| g.color(v) == Color::White).collect();
    let mut steps = 0usize;
    for tb in triples(&blacks) {
        for tw in triples(&whites) {
            let mut slots: Vec<(Color, usize, usize)> = Vec::new();
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        slots.push((Color::White, tb[i], tb[j]));
                        slots.push((Color::Black, tw[i], tw[j]));
                    }
                }
            }
            let cands: Vec<Vec<usize>> = slots
                .iter()
                .map(|&(c, a, b)| {
                    let side = if c == Color::White { &whites } else { &blacks };
                    side.iter()
                        .copied()
                        .filter(|&x| !tb.contains(&x) && !tw.contains(&x) && g.adjacent(a, x) && !g.adjacent(b, x))
                        .collect()
                })
                .collect();
            if cands.iter().any(|c| c.is_empty()) {
                continue;
            }
            let mut m = Vec::new();
            let mut nn = Vec::new();
            if assign(g, &slots, &cands, 0, &mut m, &mut nn, &mut steps, budget) {
                m.sort_unstable();
                m.dedup();
                nn.sort_unstable();
                nn.dedup();
                let e = ExoBiclique {
                    m,
                    n: nn,
                    black_triple: tb,
                    white_triple: tw,
                };
                if check_exobiclique(g, &e) {
                    return Some(e);
                }
            }
            if steps > budget {
                return None;
            }
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn assign(
    g: &Bigraph,
    slots: &[(Color, usize, usize)],
    cands: &[Vec<usize>],
    i: usize,
    m: &mut Vec<usize>,
    n: &mut Vec<usize>,
    steps: &mut usize,
    budget: usize,
) -> bool {
    if i == slots.len() {
        return true;
    }
    *steps += 1;
    if *steps > budget {
        return false;
    }
    let white = slots[i].0 == Color::White;
    // Reuse an already chosen vertex when it serves this slot.
    let chosen = if white { &*n } else { &*m };
    if chosen.iter().any(|x| cands[i].contains(x)) {
        return assign(g, slots, cands, i + 1, m, n, steps, budget);
    }
    for &x in &cands[i] {
        let other = if white { &*m } else { &*n };
        if !other.iter().all(|&o| g.adjacent(o, x)) {
            continue;
        }
        if white {
            n.push(x);
        } else {
            m.push(x);
        }
        if assign(g, slots, cands, i + 1, m, n, steps, budget) {
            return true;
        }
        if white {
            n.pop();
        } else {
            m.pop();
        }
    }
    false
}

/// Best-effort exobiclique from a Step-2 conflict: first among the vertices
/// the two circuits touch, then in the whole graph when it is small.
pub fn extract_exobiclique(g: &Bigraph, f: &Step2Failure) -> Option<ExoBiclique> {
    let mut pool = BTreeSet::new();
    for t in [&f.with_component, &f.with_couple] {
        for r in &t.derivations {
            pool.insert(r.pair.first);
            pool.insert(r.pair.second);
        }
    }
    let near: Vec<usize> = pool.iter().copied().collect();
    let mut wide = pool.clone();
    for &v in &near {
        wide.extend(g.neighbors(v).iter().copied());
    }
    let budget = 200_000;
    if let Some(e) = find_exobiclique(g, &near, budget) {
        return Some(e);
    }
    let wide: Vec<usize> = wide.into_iter().collect();
    if wide.len() <= 24 {
        if let Some(e) = find_exobiclique(g, &wide, budget) {
            return Some(e);
        }
    }
    if g.n() <= 16 {
        let all: Vec<usize> = (0..g.n()).collect();
        return find_exobiclique(g, &all, budget);
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreInsect {
    /// `H_1, H_2, H_3` grown from the three independent edges, then the
    /// components of `T`.
    pub parts: Vec<Vec<usize>>,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
    /// Index of the part in special position when `Z` is nonempty.
    pub special: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    PreInsect(PreInsect),
    /// The construction ran but condition number `condition` failed.
    Failed { condition: u8 },
}

fn completely_adjacent(g: &Bigraph, v: usize, set: &[usize]) -> bool {
    set.iter().all(|&u| g.same_color(u, v) || g.adjacent(u, v))
}

fn completely_nonadjacent(g: &Bigraph, v: usize, set: &[usize]) -> bool {
    set.iter().all(|&u| !g.adjacent(u, v))
}

/// Three pairwise independent edges through (the color-normalized) `u, v, w`.
fn three_independent(g: &Bigraph, u: usize, v: usize, w: usize) -> Option<[(usize, usize); 3]> {
    // Either endpoint of each edge may carry the name; try all.
    let ends = |a: usize| -> Vec<(usize, usize)> { g.neighbors(a).iter().map(|&b| (a, b)).collect() };
    let eu = ends(u);
    let ev = ends(v);
    let ew = ends(w);
    for &a in &eu {
        for &b in &ev {
            if !are_independent(g, a.0, a.1, b.0, b.1) {
                continue;
            }
            for &c in &ew {
                if are_independent(g, a.0, a.1, c.0, c.1) && are_independent(g, b.0, b.1, c.0, c.1) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// Builds the decomposition `H_1..H_k, X, Y, Z` around `u, v, w` and checks
/// conditions (1) to (7).
pub fn pre_insect_decompose(g: &Bigraph, u: usize, v: usize, w: usize, cs: &ComponentSet) -> Result<Decomposition> {
    let pd = build_pair_digraph(g);
    if cs.self_coupled().is_some() {
        return Err(Error::PreconditionViolated("a component is self-coupled".into()));
    }
    if u == v || v == w || u == w {
        return Err(Error::PreconditionViolated("u, v, w must be distinct".into()));
    }
    let s = |a: usize, b: usize| cs.comp_of(pd.id_of(a, b));
    if cs.is_trivial(s(u, v)) || cs.is_trivial(s(v, w)) {
        return Err(Error::PreconditionViolated("S_uv and S_vw must be nontrivial".into()));
    }
    if s(u, v) == s(v, w) || s(u, v) == s(w, v) {
        return Err(Error::PreconditionViolated("S_uv must differ from S_vw and S_wv".into()));
    }
    let edges = three_independent(g, u, v, w)
        .or_else(|| three_independent(g, w, v, u).map(|[a, b, c]| [c, b, a]))
        .ok_or_else(|| Error::PreconditionViolated("no three pairwise independent edges".into()))?;

    let n = g.n();
    // Grow three components greedily; a vertex joins H_i when its only
    // neighbors among the grown parts lie in H_i.
    let mut owner = vec![usize::MAX; n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        owner[a] = i;
        owner[b] = i;
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            if owner[x] != usize::MAX {
                continue;
            }
            let touched: BTreeSet<usize> = g
                .neighbors(x)
                .iter()
                .filter(|&&y| owner[y] != usize::MAX)
                .map(|&y| owner[y])
                .collect();
            if touched.len() == 1 {
                owner[x] = *touched.iter().next().unwrap();
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut parts: Vec<Vec<usize>> = (0..3).map(|i| (0..n).filter(|&x| owner[x] == i).collect()).collect();
    let union: Vec<usize> = parts.iter().flatten().copied().collect();
    let rest: Vec<usize> = (0..n).filter(|&x| owner[x] == usize::MAX).collect();
    let x_set: Vec<usize> = rest.iter().copied().filter(|&x| completely_adjacent(g, x, &union)).collect();
    let y_prime: Vec<usize> = rest
        .iter()
        .copied()
        .filter(|&x| !x_set.contains(&x) && completely_nonadjacent(g, x, &union))
        .collect();
    let t: Vec<usize> = y_prime.iter().copied().filter(|&x| completely_adjacent(g, x, &x_set)).collect();
    // Components of T become further parts.
    let t_graph = g.induced(&t);
    for comp in crate::bigraph::connected_components(&t_graph) {
        parts.push(comp.original_ids.iter().map(|&i| t[i]).collect());
    }
    let y_set: Vec<usize> = y_prime.iter().copied().filter(|x| !t.contains(x)).collect();
    let z_set: Vec<usize> = rest
        .iter()
        .copied()
        .filter(|x| !x_set.contains(x) && !y_prime.contains(x))
        .collect();
    let h_prime: Vec<usize> = parts.iter().flatten().copied().collect();

    let fail = |c: u8| Ok(Decomposition::Failed { condition: c });
    // (1) the parts are exactly the connected components of H'.
    let hp = g.induced(&h_prime);
    let mut comps: Vec<BTreeSet<usize>> = crate::bigraph::connected_components(&hp)
        .into_iter()
        .map(|c| c.original_ids.iter().map(|&i| h_prime[i]).collect())
        .collect();
    let mut want: Vec<BTreeSet<usize>> = parts.iter().map(|p| p.iter().copied().collect()).collect();
    comps.sort();
    want.sort();
    if comps != want || parts.len() < 3 {
        return fail(1);
    }
    // (2) X is complete bipartite.
    if !x_set.iter().all(|&a| completely_adjacent(g, a, &x_set)) {
        return fail(2);
    }
    // (3) X is completely adjacent to H'.
    if !x_set.iter().all(|&a| completely_adjacent(g, a, &h_prime)) {
        return fail(3);
    }
    // (4) no Y-H' edges.
    if !y_set.iter().all(|&a| completely_nonadjacent(g, a, &h_prime)) {
        return fail(4);
    }
    // (5) no Y edge with both ends completely adjacent to X.
    for &a in &y_set {
        for &b in g.neighbors(a) {
            if y_set.contains(&b) && completely_adjacent(g, a, &x_set) && completely_adjacent(g, b, &x_set) {
                return fail(5);
            }
        }
    }
    // (6) some part is in special position.
    let mut special = None;
    if !z_set.is_empty() {
        for sp in 0..parts.len() {
            let others: Vec<&Vec<usize>> = parts.iter().enumerate().filter(|&(i, _)| i != sp).map(|(_, p)| p).collect();
            let case_i = z_set.iter().all(|&z| others.iter().all(|p| completely_adjacent(g, z, p)));
            let case_ii = z_set.iter().all(|&z| {
                others
                    .iter()
                    .all(|p| p.iter().any(|&a| g.adjacent(a, z)) || p.iter().all(|&a| g.same_color(a, z)))
                    && completely_nonadjacent(g, z, &parts[sp])
            });
            if case_i || case_ii {
                special = Some(sp);
                break;
            }
        }
        if special.is_none() {
            return fail(6);
        }
    }
    // (7) Z is completely adjacent to X and Z.
    let xz: Vec<usize> = x_set.iter().chain(&z_set).copied().collect();
    if !z_set.iter().all(|&z| completely_adjacent(g, z, &xz)) {
        return fail(7);
    }
    Ok(Decomposition::PreInsect(PreInsect {
        parts,
        x: x_set,
        y: y_set,
        z: z_set,
        special,
    }))
}

/// Whether every cross pair between two fixed parts lies in one component.
///
/// Single-vertex parts are skipped: with `H_i = {y}` and `H_j = {a, a'}`,
/// the pairs `(a, y)` and `(a', y)` are joined by one arc only and sit in
/// distinct trivial components.
pub fn parts_share_components(pd: &PairDigraph<'_>, cs: &ComponentSet, p: &PreInsect) -> bool {
    for (i, a) in p.parts.iter().enumerate() {
        for (j, b) in p.parts.iter().enumerate() {
            if i == j || a.len() < 2 || b.len() < 2 {
                continue;
            }
            let first = cs.comp_of(pd.id_of(a[0], b[0]));
            if !a.iter().all(|&x| b.iter().all(|&y| cs.comp_of(pd.id_of(x, y)) == first)) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub is_interval_bigraph: bool,
    pub ordering: Option<Ordering>,
}

pub const ORACLE_DEFAULT_LIMIT: usize = 16;
const ORACLE_HARD_LIMIT: usize = 26;

/// Exact decision by search over ordering prefixes.
///
/// A prefix is extended by `v` only if no unplaced vertex `c` of the other
/// color already has a neighbor in the prefix while `v` is not adjacent to
/// it: that would fix a forbidden triple `(a, v, c)` for every completion.
/// Every forbidden triple is caught this way when its middle vertex is
/// placed, so pruning is exact; and because the test only looks at which
/// vertices are placed, not their order, each placed set is explored once.
pub fn oracle_recognize(g: &Bigraph, limit_n: usize) -> Result<OracleResult> {
    let n = g.n();
    if n > limit_n || n > ORACLE_HARD_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: limit_n.min(ORACLE_HARD_LIMIT),
        });
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect();
    let black = (0..n).filter(|&v| g.color(v) == Color::Black).fold(0u32, |m, v| m | 1 << v);
    let full: u32 = (1u32 << n) - 1;
    let mut s = Search {
        nbr,
        black,
        full,
        dead: vec![false; 1usize << n],
        order: Vec::with_capacity(n),
    };
    let ok = s.extend(0);
    Ok(OracleResult {
        is_interval_bigraph: ok,
        ordering: if ok { Some(Ordering::from_sequence(s.order)?) } else { None },
    })
}

struct Search {
    nbr: Vec<u32>,
    black: u32,
    full: u32,
    dead: Vec<bool>,
    order: Vec<usize>,
}

impl Search {
    fn extend(&mut self, placed: u32) -> bool {
        if placed == self.full {
            return true;
        }
        if self.dead[placed as usize] {
            return false;
        }
        let n = self.nbr.len();
        for v in 0..n {
            if placed >> v & 1 == 1 {
                continue;
            }
            // Unplaced vertices of the other color, not adjacent to v, that
            // already see a placed vertex (necessarily of v's color).
            let other = if self.black >> v & 1 == 1 { !self.black } else { self.black };
            let open = other & self.full & !placed & !self.nbr[v];
            let mut rest = open;
            let mut blocked = false;
            while rest != 0 {
                let c = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if self.nbr[c] & placed != 0 {
                    blocked = true;
                    break;
                }
            }
            if blocked {
                continue;
            }
            self.order.push(v);
            if self.extend(placed | 1 << v) {
                return true;
            }
            self.order.pop();
        }
        self.dead[placed as usize] = true;
        false
    }
}

/// All connected bigraphs on `2..=n` vertices over fixed labelings: for
/// each vertex count and each black/white split (blacks first), every edge
/// subset of the complete bipartite graph, keeping the connected ones.
pub fn enumerate_bigraphs(n: usize) -> Result<Vec<Bigraph>> {
    if n > 8 {
        return Err(Error::TooLarge { n, limit: 8 });
    }
    let mut out = Vec::new();
    for total in 2..=n {
        for nb in 1..total {
            let colors: Vec<Color> = (0..total).map(|v| if v < nb { Color::Black } else { Color::White }).collect();
            let slots: Vec<(usize, usize)> = (0..nb).flat_map(|x| (nb..total).map(move |y| (x, y))).collect();
            for mask in 0u64..(1u64 << slots.len()) {
                let edges: Vec<(usize, usize)> = slots
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                if edges.len() + 1 < total {
                    continue;
                }
                let g = Bigraph::new(colors.clone(), &edges)?;
                if g.is_connected() {
                    out.push(g);
                }
            }
        }
    }
    Ok(out)
}

/// Writes a divergent instance and both outputs under `dir/<name>/`.
pub fn persist_counterexample(dir: &Path, name: &str, g: &Bigraph, recognizer: &str, oracle: &str) -> Result<PathBuf> {
    let case = dir.join(name);
    std::fs::create_dir_all(&case)?;
    std::fs::write(case.join("graph.ibg"), g.to_text())?;
    std::fs::write(case.join("recognizer.txt"), recognizer)?;
    std::fs::write(case.join("oracle.txt"), oracle)?;
    Ok(case)
}

/// Checks a certificate against `g` without rerunning recognition.
pub fn verify_certificate(g: &Bigraph, c: &Certificate) -> bool {
    match c {
        Certificate::Yes { ordering, intervals } => {
            if ordering.len() != g.n() || Ordering::from_sequence(ordering.sequence().to_vec()).is_err() {
                return false;
            }
            if !matches!(check_ordering(g, ordering), Ok(None)) {
                return false;
            }
            if intervals.iter().any(|r| r.vertex >= g.n() || r.color != g.color(r.vertex)) {
                return false;
            }
            match IntervalModel::from_records(g.n(), intervals) {
                Ok(model) => validate_intervals(g, &model),
                Err(_) => false,
            }
        }
        Certificate::No { witness } => verify_witness(g, witness),
    }
}

fn pair_ok(g: &Bigraph, p: PairVertex) -> bool {
    p.first < g.n() && p.second < g.n() && p.first != p.second
}

fn path_ok(pd: &PairDigraph<'_>, path: &[PairVertex], from: PairVertex, to: PairVertex) -> bool {
    path.first() == Some(&from)
        && path.last() == Some(&to)
        && path.len() >= 2
        && path.iter().all(|&p| pair_ok(pd.base(), p))
        && path.windows(2).all(|w| pd.has_arc(w[0], w[1]))
}

fn verify_witness(g: &Bigraph, w: &Witness) -> bool {
    match w {
        Witness::SelfCoupled { pair, forward, backward } => {
            if !pair_ok(g, *pair) {
                return false;
            }
            let pd = build_pair_digraph(g);
            path_ok(&pd, forward, *pair, pair.skew()) && path_ok(&pd, backward, pair.skew(), *pair)
        }
        Witness::Step2Conflict {
            component,
            couple,
            circuit,
            couple_circuit,
            exobiclique,
        } => {
            if let Some(e) = exobiclique {
                if !check_exobiclique(g, e) {
                    return false;
                }
            }
            if !pair_ok(g, *component) || !pair_ok(g, *couple) {
                return false;
            }
            let pd = build_pair_digraph(g);
            let cs = strong_components(&pd);
            let s = cs.comp_of_pair(*component);
            let s2 = cs.comp_of_pair(*couple);
            if cs.couple(s) != s2 || s == s2 || cs.is_trivial(s) {
                return false;
            }
            let (Some(b1), Some(b2)) = (replay(&pd, &cs, circuit, false), replay(&pd, &cs, couple_circuit, false))
            else {
                return false;
            };
            if !b1.contains(&s) || b1.contains(&s2) || !b2.contains(&s2) || b2.contains(&s) {
                return false;
            }
            let mut others: BTreeSet<u32> = b1.union(&b2).copied().collect();
            others.remove(&s);
            others.remove(&s2);
            others.iter().all(|&c| !others.contains(&cs.couple(c)))
        }
        Witness::EnvelopeCircuit { circuit, .. } => {
            let pd = build_pair_digraph(g);
            let cs = strong_components(&pd);
            replay(&pd, &cs, circuit, true).is_some()
        }
    }
}

/// Replays a circuit's derivations. Returns the set of base components used,
/// or `None` if any step fails. Base components must be nontrivial and
/// mutually uncoupled.
fn replay(pd: &PairDigraph<'_>, cs: &ComponentSet, t: &CircuitTrace, allow_transitive: bool) -> Option<BTreeSet<u32>> {
    let g = pd.base();
    if !t.closes() || t.pairs.iter().any(|&p| !pair_ok(g, p)) {
        return None;
    }
    let mut known: BTreeMap<PairVertex, ()> = BTreeMap::new();
    let mut bases = BTreeSet::new();
    for r in &t.derivations {
        if !pair_ok(g, r.pair) {
            return None;
        }
        let ok = match &r.derivation {
            DerivationRef::Base { component } => {
                if !pair_ok(g, *component) {
                    return None;
                }
                let c = cs.comp_of_pair(*component);
                bases.insert(c);
                !cs.is_trivial(c) && cs.comp_of_pair(r.pair) == c
            }
            DerivationRef::Implied { from } => known.contains_key(from) && pd.has_arc(*from, r.pair),
            DerivationRef::Transitive { via } => {
                allow_transitive
                    && *via < g.n()
                    && known.contains_key(&PairVertex::new(r.pair.first, *via))
                    && known.contains_key(&PairVertex::new(*via, r.pair.second))
            }
            DerivationRef::Sink => false,
        };
        if !ok {
            return None;
        }
        known.insert(r.pair, ());
    }
    if !t.pairs.iter().all(|p| known.contains_key(p)) {
        return None;
    }
    if bases.iter().any(|&c| bases.contains(&cs.couple(c))) {
        return None;
    }
    Some(bases)
}
