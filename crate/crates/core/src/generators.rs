//! Instance families: interval models, cycles, exobicliques, the obstruction
//! ladder, random bigraphs, paths and bicliques.
//!
//! Randomized generators take a `u64` seed and use ChaCha8, so output is
//! identical across platforms and runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bigraph::{Bigraph, Color, Interval, IntervalModel};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn build(colors: Vec<Color>, edges: &[(usize, usize)]) -> Bigraph {
    Bigraph::new(colors, edges).expect("generator produced an invalid bigraph")
}

/// Random integer intervals with endpoints in `[0, 4(nb + nw)]`; blacks are
/// `0..nb`, whites `nb..nb + nw`. Edges are exactly the black/white
/// intersections.
pub fn gen_from_intervals(nb: usize, nw: usize, seed: u64) -> (Bigraph, IntervalModel) {
    assert!(nb >= 1 && nw >= 1);
    let mut r = rng(seed);
    let hi = 4 * (nb + nw) as i64;
    let intervals: Vec<Interval> = (0..nb + nw)
        .map(|_| {
            let a = r.gen_range(0..=hi);
            let b = r.gen_range(0..=hi);
            Interval {
                left: a.min(b),
                right: a.max(b),
            }
        })
        .collect();
    let g = graph_of_intervals(nb, &intervals);
    (g, IntervalModel { intervals })
}

/// The bigraph of a model whose first `nb` intervals are black.
pub fn graph_of_intervals(nb: usize, intervals: &[Interval]) -> Bigraph {
    let n = intervals.len();
    let colors = (0..n).map(|v| if v < nb { Color::Black } else { Color::White }).collect();
    let mut edges = Vec::new();
    for x in 0..nb {
        for y in nb..n {
            if intervals[x].intersects(&intervals[y]) {
                edges.push((x, y));
            }
        }
    }
    build(colors, &edges)
}

fn alternating(n: usize) -> Vec<Color> {
    (0..n).map(|i| if i % 2 == 0 { Color::Black } else { Color::White }).collect()
}

/// The cycle `C_{2k}`; vertex `i` is black for even `i`.
pub fn gen_cycle(k: usize) -> Bigraph {
    assert!(k >= 2);
    let n = 2 * k;
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build(alternating(n), &edges).with_name(format!("C{n}"))
}

/// The path on `n` vertices; vertex `i` is black for even `i`.
pub fn gen_path(n: usize) -> Bigraph {
    assert!(n >= 2);
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    build(alternating(n), &edges).with_name(format!("P{n}"))
}

/// `K_{a,b}` with blacks `0..a` and whites `a..a + b`.
pub fn gen_biclique(a: usize, b: usize) -> Bigraph {
    assert!(a >= 1 && b >= 1);
    let colors = (0..a + b).map(|v| if v < a { Color::Black } else { Color::White }).collect();
    let mut edges = Vec::new();
    for x in 0..a {
        for y in a..a + b {
            edges.push((x, y));
        }
    }
    build(colors, &edges).with_name(format!("K{a},{b}"))
}

/// Splits `0..len` into `k` nonempty consecutive groups.
fn groups(len: usize, k: usize) -> Vec<std::ops::Range<usize>> {
    (0..k).map(|i| i * len / k..(i + 1) * len / k).collect()
}

/// Biclique `M x N` plus three external vertices per side whose
/// neighborhoods in the opposite biclique side cover two of three groups
/// each: `{1,2}`, `{2,3}`, `{1,3}`.
///
/// Layout: `M = 0..mb` (black), `N = mb..mb + mw` (white), then the three
/// external blacks, then the three external whites.
pub fn gen_exobiclique(mb: usize, mw: usize) -> Bigraph {
    assert!(mb >= 3 && mw >= 3);
    exobiclique_with(mb, mw, 3, &[[0, 1], [1, 2], [0, 2]]).with_name(format!("exobiclique{mb}x{mw}"))
}

/// Same layout as [`gen_exobiclique`], but each side is cut into four groups
/// and the external neighborhoods are `{1,2}`, `{2,3}`, `{3,4}`. The
/// external vertices then induce no long cycle, so the obstruction is not
/// visible from the components alone.
pub fn gen_chain_exobiclique(mb: usize, mw: usize) -> Bigraph {
    assert!(mb >= 4 && mw >= 4);
    exobiclique_with(mb, mw, 4, &[[0, 1], [1, 2], [2, 3]]).with_name(format!("chain-exobiclique{mb}x{mw}"))
}

fn exobiclique_with(mb: usize, mw: usize, k: usize, pattern: &[[usize; 2]; 3]) -> Bigraph {
    let mut colors = vec![Color::Black; mb];
    colors.extend(std::iter::repeat_n(Color::White, mw));
    colors.extend(std::iter::repeat_n(Color::Black, 3));
    colors.extend(std::iter::repeat_n(Color::White, 3));
    let mut edges = Vec::new();
    for x in 0..mb {
        for y in mb..mb + mw {
            edges.push((x, y));
        }
    }
    let gw = groups(mw, k);
    let gb = groups(mb, k);
    for (i, pair) in pattern.iter().enumerate() {
        let xb = mb + mw + i;
        let xw = mb + mw + 3 + i;
        for &gi in pair {
            for y in gw[gi].clone() {
                edges.push((xb, mb + y));
            }
            for x in gb[gi].clone() {
                edges.push((x, xw));
            }
        }
    }
    build(colors, &edges)
}

/// Each black/white pair is an edge independently with probability `p`.
/// Blacks are `0..nb`. Connectivity is not guaranteed.
pub fn gen_random_bipartite(nb: usize, nw: usize, p: f64, seed: u64) -> Bigraph {
    assert!((0.0..=1.0).contains(&p));
    let mut r = rng(seed);
    let colors = (0..nb + nw).map(|v| if v < nb { Color::Black } else { Color::White }).collect();
    let mut edges = Vec::new();
    for x in 0..nb {
        for y in nb..nb + nw {
            if r.gen_bool(p) {
                edges.push((x, y));
            }
        }
    }
    build(colors, &edges)
}

/// Incremental builder used by the obstruction family.
struct Builder {
    colors: Vec<Color>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn vertex(&mut self, c: Color) -> usize {
        self.colors.push(c);
        self.colors.len() - 1
    }

    fn edge(&mut self, a: usize, b: usize) {
        if !self.edges.contains(&(a, b)) && !self.edges.contains(&(b, a)) {
            self.edges.push((a, b));
        }
    }

    fn finish(self, name: String) -> Bigraph {
        build(self.colors, &self.edges).with_name(name)
    }
}

/// Named vertices of an obstruction-family instance, for tests.
#[derive(Clone, Debug)]
pub struct ObstructionLayout {
    pub x: [usize; 4],
    pub v: usize,
    pub q: usize,
    /// `[u, u_1, u_2]` per rung.
    pub ladder: Vec<[usize; 3]>,
    /// The vertex closing the ladder, adjacent to the last `u_2`.
    pub top: usize,
}

/// The obstruction ladder with `steps` rungs, without the dual gadget.
pub fn gen_obstruction_family(steps: usize) -> Bigraph {
    obstruction_family(steps, false).0
}

/// The obstruction ladder together with the positions of its named vertices.
///
/// Colors follow from the stated adjacencies once `x0, x3` are white: `v`
/// sees `x0`, so it is black and the `v_i` are white. Open attachment
/// details are resolved as marked inline.
///
/// With `dual` the gadget around `x'` is attached as well. Its required
/// edges close the cycle `x2 x0 v v_3 x' z'_1 u_2 ... u^1 x2`, which has no
/// chord, so that variant already contains an induced cycle of length
/// `2 * steps + 8` and never gets past the component check. Without it the
/// graph is still not an interval bigraph and the circuit through
/// `x0 x1 x2 x3` shows up while the envelope is computed.
pub fn obstruction_family(steps: usize, dual: bool) -> (Bigraph, ObstructionLayout) {
    assert!(steps >= 1);
    use Color::{Black as B, White as W};
    let mut b = Builder {
        colors: Vec::new(),
        edges: Vec::new(),
    };
    let x0 = b.vertex(W);
    let x1 = b.vertex(B);
    let x2 = b.vertex(B);
    let x3 = b.vertex(W);
    let y0 = b.vertex(B);
    let y1 = b.vertex(W);
    let z1 = b.vertex(W);
    let z2 = b.vertex(B);
    b.edge(y0, x0);
    b.edge(x1, y1);
    b.edge(z1, z2);
    b.edge(x2, y1);
    b.edge(x2, z1);
    b.edge(x2, x0);

    let v = b.vertex(B);
    let mut vs = [0; 3];
    let mut qs = [0; 3];
    for i in 0..3 {
        vs[i] = b.vertex(W);
        qs[i] = b.vertex(B);
        b.edge(vs[i], qs[i]);
        b.edge(v, vs[i]);
    }
    for t in [x0, y1, z1] {
        b.edge(v, t);
    }
    // z is the partner of x3 in the edge x3 z; it is given no neighbors
    // beyond the v_i and what the x3 rule adds. p is a fresh vertex whose
    // only neighbor is q.
    let z = b.vertex(B);
    b.edge(x3, z);
    let p = b.vertex(W);
    let q = b.vertex(B);
    b.edge(p, q);
    for &vi in &vs {
        b.edge(q, vi);
        b.edge(z, vi);
    }

    // Rungs 1..=steps; `top` plays the final u^n, joined only to the last
    // u_2. The rung vertex u_1 hangs off w_1, the only edge the text gives it.
    let mut ladder: Vec<[usize; 3]> = Vec::new();
    for _ in 0..steps {
        let u = b.vertex(W);
        let u1 = b.vertex(B);
        let u2 = b.vertex(B);
        let w = b.vertex(B);
        let w1 = b.vertex(W);
        let zi1 = b.vertex(W);
        let zi = b.vertex(B);
        b.edge(u, w);
        b.edge(u1, w1);
        b.edge(zi1, zi);
        b.edge(u, u2);
        b.edge(u2, w1);
        b.edge(u2, zi1);
        match ladder.last() {
            Some(prev) => b.edge(u, prev[2]),
            None => b.edge(u, x2),
        }
        ladder.push([u, u1, u2]);
    }
    let last_u2 = ladder.last().expect("at least one rung")[2];
    let top = b.vertex(W);
    b.edge(top, last_u2);

    if dual {
        let xp0 = b.vertex(W);
        let xp1 = b.vertex(B);
        let yp0 = b.vertex(B);
        let yp1 = b.vertex(W);
        let zp1 = b.vertex(W);
        let zp2 = b.vertex(B);
        b.edge(xp0, yp0);
        b.edge(xp1, yp1);
        b.edge(zp1, zp2);
        for t in [xp0, yp1, zp1] {
            b.edge(last_u2, t);
        }
        let xp = b.vertex(B);
        for t in [xp0, zp1, yp1, vs[0], vs[1], vs[2]] {
            b.edge(xp, t);
        }
    }

    // Every neighbor of x3 sees x0, z1 and y1; taken over the final graph.
    let x3_nbrs: Vec<usize> = b
        .edges
        .iter()
        .filter_map(|&(a, c)| if a == x3 { Some(c) } else if c == x3 { Some(a) } else { None })
        .collect();
    for nb in x3_nbrs {
        for t in [x0, z1, y1] {
            b.edge(nb, t);
        }
    }

    let layout = ObstructionLayout {
        x: [x0, x1, x2, x3],
        v,
        q,
        ladder,
        top,
    };
    let name = if dual { format!("obstruction{steps}-dual") } else { format!("obstruction{steps}") };
    (b.finish(name), layout)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::validate_intervals;

    #[test]
    fn interval_generator_is_seeded_and_consistent() {
        let (g1, m1) = gen_from_intervals(5, 6, 42);
        let (g2, _) = gen_from_intervals(5, 6, 42);
        assert_eq!(g1, g2);
        assert!(validate_intervals(&g1, &m1));
        let same = vec![Interval { left: 0, right: 1 }; 5];
        let k = graph_of_intervals(2, &same);
        assert_eq!(k.m(), 6);
    }

    #[test]
    fn small_families() {
        assert_eq!(gen_cycle(2).m(), 4);
        assert_eq!(gen_path(5).m(), 4);
        assert_eq!(gen_biclique(3, 3).m(), 9);
        let e = gen_exobiclique(3, 3);
        assert_eq!(e.n(), 12);
        assert!(e.is_connected());
        let c = gen_chain_exobiclique(4, 4);
        assert_eq!((c.n(), c.m()), (14, 16 + 12));
        assert!(c.is_connected());
    }

    #[test]
    fn random_bipartite_extremes() {
        assert_eq!(gen_random_bipartite(3, 4, 1.0, 7).m(), 12);
        assert_eq!(gen_random_bipartite(3, 4, 0.0, 7).m(), 0);
        assert_eq!(gen_random_bipartite(4, 4, 0.5, 9), gen_random_bipartite(4, 4, 0.5, 9));
    }
}
