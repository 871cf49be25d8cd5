//! End-to-end recognition: split into connected parts, run the seven steps
//! on each, and assemble a certificate.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bigraph::{
    build_intervals, check_ordering, connected_components, merge_parts, validate_intervals, Bigraph, IntervalModel,
    IntervalRecord, Ordering, Part,
};
use crate::bits::BitMatrix;
use crate::engine::{
    complete_with, compute_envelope, extract_minimal_circuit, insert_component_closure, step2_select, CircuitTrace,
    DerivationRef, DictatorSet, OrderRelation, Step2Failure, Track,
};
use crate::error::{Error, Result};
use crate::pair_digraph::{
    build_pair_digraph, condensation_depth, shortest_path_within, strong_components, ComponentSet, PairDigraph,
    PairVertex,
};
use crate::par::Exec;
use crate::witness::{extract_exobiclique, ExoBiclique};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Step3,
    Step5,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum Witness {
    /// `pair` and its reverse lie in one strong component.
    SelfCoupled {
        pair: PairVertex,
        /// Arc path from `pair` to its reverse.
        forward: Vec<PairVertex>,
        /// Arc path from the reverse back to `pair`.
        backward: Vec<PairVertex>,
    },
    /// Neither member of a couple could be added without a circuit.
    Step2Conflict {
        component: PairVertex,
        couple: PairVertex,
        circuit: CircuitTrace,
        couple_circuit: CircuitTrace,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        exobiclique: Option<ExoBiclique>,
    },
    EnvelopeCircuit { phase: Phase, circuit: CircuitTrace },
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::SelfCoupled { .. } => "self_coupled",
            Witness::Step2Conflict { .. } => "step2_conflict",
            Witness::EnvelopeCircuit { .. } => "envelope_circuit",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
#[allow(clippy::large_enum_variant)]
pub enum Certificate {
    Yes {
        ordering: Ordering,
        intervals: Vec<IntervalRecord>,
    },
    No {
        witness: Witness,
    },
}

impl Certificate {
    pub fn is_yes(&self) -> bool {
        matches!(self, Certificate::Yes { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Certificate::No { witness } => Some(witness),
            Certificate::Yes { .. } => None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct StepTimings {
    pub build: f64,
    pub scc: f64,
    pub step2: f64,
    pub step3: f64,
    pub step5: f64,
    pub step6: f64,
    pub step7: f64,
}

impl StepTimings {
    pub fn total(&self) -> f64 {
        self.build + self.scc + self.step2 + self.step3 + self.step5 + self.step6 + self.step7
    }

    fn add(&mut self, o: &StepTimings) {
        self.build += o.build;
        self.scc += o.scc;
        self.step2 += o.step2;
        self.step3 += o.step3;
        self.step5 += o.step5;
        self.step6 += o.step6;
        self.step7 += o.step7;
    }
}

/// Counters and timings collected during one recognition (summed over parts).
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RecognitionTrace {
    pub n: usize,
    pub m: usize,
    pub parts: usize,
    pub pair_vertices: u64,
    pub arcs: u64,
    pub components: usize,
    pub nontrivial: usize,
    pub max_depth: usize,
    pub selected: usize,
    pub step3_insertions: usize,
    pub step3_levels: u32,
    pub step3_circuits: Vec<CircuitTrace>,
    pub dictators: Vec<PairVertex>,
    pub step5_insertions: usize,
    pub step5_levels: u32,
    pub step6_insertions: usize,
    /// Largest order relation held by any part.
    pub peak_pairs: usize,
    pub timings: StepTimings,
    /// Insertion log lines, when requested.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub log: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub exec: Exec,
    /// Keep the per-insertion log of the final relation.
    pub log: bool,
}

#[derive(Clone, Debug)]
pub struct Recognition {
    pub certificate: Certificate,
    pub trace: RecognitionTrace,
}

/// Decides whether `g` is an interval bigraph.
pub fn recognize(g: &Bigraph) -> Result<Certificate> {
    recognize_with(g, &Options::default()).map(|r| r.certificate)
}

pub fn recognize_with(g: &Bigraph, opts: &Options) -> Result<Recognition> {
    let mut trace = RecognitionTrace {
        n: g.n(),
        m: g.m(),
        ..Default::default()
    };
    let parts = connected_components(g);
    trace.parts = parts.len();
    let mut accepted: Vec<(&Part, Ordering, IntervalModel)> = Vec::with_capacity(parts.len());
    for part in &parts {
        match recognize_connected(&part.graph, opts, &mut trace)? {
            PartOutcome::Yes(ord, model) => accepted.push((part, ord, model)),
            PartOutcome::No(w) => {
                let witness = map_witness(w, &part.original_ids);
                return Ok(Recognition {
                    certificate: Certificate::No { witness },
                    trace,
                });
            }
        }
    }
    let (ordering, model) = merge_parts(g.n(), &accepted);
    let guard = check_ordering(g, &ordering)?;
    if guard.is_some() || !validate_intervals(g, &model) {
        return Err(inconsistency("merged ordering or model failed validation", trace));
    }
    Ok(Recognition {
        certificate: Certificate::Yes {
            ordering,
            intervals: model.to_records(g),
        },
        trace,
    })
}

#[allow(clippy::large_enum_variant)]
enum PartOutcome {
    Yes(Ordering, IntervalModel),
    No(Witness),
}

fn inconsistency(reason: impl Into<String>, trace: RecognitionTrace) -> Error {
    Error::InternalInconsistency {
        reason: reason.into(),
        trace: Box::new(trace),
    }
}

fn secs(t: Instant) -> f64 {
    t.elapsed().as_secs_f64()
}

fn recognize_connected(g: &Bigraph, opts: &Options, trace: &mut RecognitionTrace) -> Result<PartOutcome> {
    let n = g.n();
    if n <= 1 {
        let ord = Ordering::identity(n);
        let model = build_intervals(g, &ord)?;
        return Ok(PartOutcome::Yes(ord, model));
    }
    let mut times = StepTimings::default();

    // Step 1: H+, strong components, self-coupling.
    let t = Instant::now();
    let pd = build_pair_digraph(g);
    trace.pair_vertices += (n * (n - 1)) as u64;
    trace.arcs += pd.arc_count(opts.exec);
    times.build = secs(t);
    let t = Instant::now();
    let cs = strong_components(&pd);
    times.scc = secs(t);
    trace.components += cs.len();
    trace.nontrivial += cs.nontrivial().count();
    trace.max_depth = trace.max_depth.max(condensation_depth(&cs, &pd));
    if let Some(c) = cs.self_coupled() {
        trace.timings.add(&times);
        return Ok(PartOutcome::No(self_coupled_witness(&pd, &cs, c)));
    }

    // Step 2: one component per couple.
    let t = Instant::now();
    let selection = step2_select(&cs, &pd);
    times.step2 = secs(t);
    let selection = match selection {
        Ok(s) => s,
        Err(f) => {
            trace.timings.add(&times);
            return Ok(PartOutcome::No(step2_witness(g, &pd, &cs, &f)));
        }
    };
    trace.selected += selection.chosen.len();
    let chosen = selection.chosen;

    // Step 3: envelope over original pairs, collecting dictators.
    let t = Instant::now();
    let mut rel = selection.relation;
    rel.set_track(Track::Original);
    let env3 = compute_envelope(&mut rel, &pd, &cs, opts.exec);
    times.step3 = secs(t);
    trace.step3_insertions += env3.inserted;
    trace.step3_levels = trace.step3_levels.max(env3.levels);
    trace.peak_pairs = trace.peak_pairs.max(rel.len());
    trace.step3_circuits.extend(env3.circuits.iter().cloned());
    trace
        .dictators
        .extend(env3.dictators.iter().map(|&c| pd.pair(cs.least_member(c))));
    if !env3.circuits.is_empty() {
        if let Err(reason) = extract_minimal_circuit(g, &env3.circuits) {
            trace.timings.add(&times);
            return Err(inconsistency(reason, trace.clone()));
        }
    }

    // Steps 4 and 5: reverse dictators, envelope over all pairs.
    let t = Instant::now();
    let reuse = env3.dictators.is_empty() && is_antisymmetric(rel.matrix());
    let mut d1 = if reuse {
        rel.set_track(Track::All);
        rel
    } else {
        drop(rel);
        match step4_rebuild(&cs, &chosen, &env3.dictators, &pd) {
            Ok(d1) => d1,
            Err(reason) => {
                trace.timings.add(&times);
                return Err(inconsistency(reason, trace.clone()));
            }
        }
    };
    if !reuse {
        let env5 = compute_envelope(&mut d1, &pd, &cs, opts.exec);
        trace.step5_insertions += env5.inserted;
        trace.step5_levels = trace.step5_levels.max(env5.levels);
        trace.peak_pairs = trace.peak_pairs.max(d1.len());
        if env5.stopped {
            times.step5 = secs(t);
            trace.timings.add(&times);
            let circuit = env5.circuits.into_iter().next().expect("stopped envelope records its circuit");
            return Ok(PartOutcome::No(Witness::EnvelopeCircuit {
                phase: Phase::Step5,
                circuit,
            }));
        }
    }
    times.step5 = secs(t);

    // Step 6: sink completion.
    let t = Instant::now();
    let before = d1.len();
    if let Err(p) = step6_complete(&mut d1, &pd, trace.step5_levels + 1) {
        trace.timings.add(&times);
        return Err(inconsistency(format!("completion pair {p} closed a circuit"), trace.clone()));
    }
    trace.step6_insertions += d1.len() - before;
    trace.peak_pairs = trace.peak_pairs.max(d1.len());
    times.step6 = secs(t);
    if opts.log {
        trace.log.extend(d1.trace_lines(&cs));
    }

    // Step 7: ordering and intervals.
    let t = Instant::now();
    let ord = match extract_ordering(d1.matrix()) {
        Ok(o) => o,
        Err(e) => {
            trace.timings.add(&times);
            return Err(inconsistency(format!("final relation: {e}"), trace.clone()));
        }
    };
    if let Some(v) = check_ordering(g, &ord)? {
        trace.timings.add(&times);
        return Err(inconsistency(
            format!("ordering has forbidden pattern ({}, {}, {})", v.a, v.b, v.c),
            trace.clone(),
        ));
    }
    let model = match build_intervals(g, &ord) {
        Ok(m) => m,
        Err(e) => {
            trace.timings.add(&times);
            return Err(inconsistency(format!("interval construction: {e}"), trace.clone()));
        }
    };
    times.step7 = secs(t);
    trace.timings.add(&times);
    Ok(PartOutcome::Yes(ord, model))
}

fn is_antisymmetric(d: &BitMatrix) -> bool {
    let n = d.dim();
    (0..n).all(|x| {
        let mut ok = true;
        crate::bits::for_each_one(d.row(x), |y| ok &= !d.get(y, x));
        ok
    })
}

fn self_coupled_witness(pd: &PairDigraph<'_>, cs: &ComponentSet, c: u32) -> Witness {
    let p = cs.least_member(c);
    let q = pd.skew_id(p);
    let inside = |id| cs.comp_of(id) == c;
    let to_pairs = |v: Vec<u32>| v.into_iter().map(|id| pd.pair(id)).collect::<Vec<_>>();
    let forward = shortest_path_within(pd, p, q, inside).expect("component is strongly connected");
    let backward = shortest_path_within(pd, q, p, inside).expect("component is strongly connected");
    Witness::SelfCoupled {
        pair: pd.pair(p),
        forward: to_pairs(forward),
        backward: to_pairs(backward),
    }
}

fn step2_witness(g: &Bigraph, pd: &PairDigraph<'_>, cs: &ComponentSet, f: &Step2Failure) -> Witness {
    let exobiclique = extract_exobiclique(g, f);
    Witness::Step2Conflict {
        component: pd.pair(cs.least_member(f.component)),
        couple: pd.pair(cs.least_member(cs.couple(f.component))),
        circuit: f.with_component.clone(),
        couple_circuit: f.with_couple.clone(),
        exobiclique,
    }
}

/// `D1`: the couple of every dictator, every other selected component as is,
/// each with one implication layer. A circuit here is reported as an error.
pub fn step4_rebuild(
    cs: &ComponentSet,
    chosen: &[u32],
    dt: &DictatorSet,
    pd: &PairDigraph<'_>,
) -> std::result::Result<OrderRelation, String> {
    let mut rel = OrderRelation::new(pd.n(), Track::All);
    for &r in chosen {
        let c = if dt.contains(&r) { cs.couple(r) } else { r };
        if let Err(t) = insert_component_closure(&mut rel, pd, cs, c) {
            return Err(format!(
                "circuit of {} pairs while rebuilding with component S{c}",
                t.pairs.len()
            ));
        }
    }
    Ok(rel)
}

/// Adds sink pairs until every pair is decided. Returns the pair that closed
/// a circuit, if any.
pub fn step6_complete(rel: &mut OrderRelation, pd: &PairDigraph<'_>, level: u32) -> std::result::Result<(), PairVertex> {
    let n = pd.n();
    for x in 0..n {
        for y in x + 1..n {
            while rel.undecided(x, y) {
                let mut cur = pd.id_of(x, y);
                loop {
                    let mut cursor = 0;
                    let mut next = None;
                    while let Some(q) = pd.next_successor(cur, &mut cursor) {
                        let qp = pd.pair(q);
                        if rel.undecided(qp.first, qp.second) {
                            next = Some(q);
                            break;
                        }
                    }
                    match next {
                        Some(q) => cur = q,
                        None => break,
                    }
                }
                complete_with(rel, pd, pd.pair(cur), level)?;
            }
        }
    }
    Ok(())
}

/// Reads a transitive tournament as a total order: `u < v` iff `(u, v)` is present.
pub fn extract_ordering(d: &BitMatrix) -> Result<Ordering> {
    let n = d.dim();
    for u in 0..n {
        for v in u + 1..n {
            if d.get(u, v) == d.get(v, u) {
                return Err(Error::NotTotal(u, v));
            }
        }
    }
    let mut seq: Vec<usize> = (0..n).collect();
    seq.sort_by_key(|&v| std::cmp::Reverse(d.row_count(v)));
    for i in 0..n {
        for j in i + 1..n {
            if !d.get(seq[i], seq[j]) {
                let (a, b) = (seq[j], seq[i]);
                let c = (0..n)
                    .find(|&c| d.get(b, c) && d.get(c, a))
                    .expect("a tournament that is not transitive has a 3-cycle through any back arc");
                return Err(Error::NotTransitive(a, b, c));
            }
        }
    }
    Ordering::from_sequence(seq)
}

fn map_pair(p: PairVertex, ids: &[usize]) -> PairVertex {
    PairVertex::new(ids[p.first], ids[p.second])
}

fn map_trace(mut t: CircuitTrace, ids: &[usize]) -> CircuitTrace {
    for p in t.pairs.iter_mut() {
        *p = map_pair(*p, ids);
    }
    t.closing = map_pair(t.closing, ids);
    t.dictator = t.dictator.map(|p| map_pair(p, ids));
    for r in t.derivations.iter_mut() {
        r.pair = map_pair(r.pair, ids);
        r.dict = r.dict.map(|p| map_pair(p, ids));
        r.derivation = match r.derivation.clone() {
            DerivationRef::Base { component } => DerivationRef::Base {
                component: map_pair(component, ids),
            },
            DerivationRef::Implied { from } => DerivationRef::Implied {
                from: map_pair(from, ids),
            },
            DerivationRef::Transitive { via } => DerivationRef::Transitive { via: ids[via] },
            DerivationRef::Sink => DerivationRef::Sink,
        };
    }
    t
}

/// Rewrites a part-local witness in terms of parent ids.
///
/// Component representatives are least members within the part; after
/// relabeling they still name the same component, though not necessarily by
/// its least member in the parent's numbering.
fn map_witness(w: Witness, ids: &[usize]) -> Witness {
    match w {
        Witness::SelfCoupled { pair, forward, backward } => Witness::SelfCoupled {
            pair: map_pair(pair, ids),
            forward: forward.into_iter().map(|p| map_pair(p, ids)).collect(),
            backward: backward.into_iter().map(|p| map_pair(p, ids)).collect(),
        },
        Witness::Step2Conflict {
            component,
            couple,
            circuit,
            couple_circuit,
            exobiclique,
        } => Witness::Step2Conflict {
            component: map_pair(component, ids),
            couple: map_pair(couple, ids),
            circuit: map_trace(circuit, ids),
            couple_circuit: map_trace(couple_circuit, ids),
            exobiclique: exobiclique.map(|e| e.relabel(ids)),
        },
        Witness::EnvelopeCircuit { phase, circuit } => Witness::EnvelopeCircuit {
            phase,
            circuit: map_trace(circuit, ids),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::Color;
    use crate::generators::{gen_biclique, gen_cycle, gen_path};

    #[test]
    fn k2_and_k33_are_accepted() {
        for g in [gen_biclique(1, 1), gen_biclique(3, 3)] {
            let c = recognize(&g).unwrap();
            let Certificate::Yes { ordering, intervals } = c else {
                panic!("expected yes")
            };
            assert_eq!(check_ordering(&g, &ordering).unwrap(), None);
            let model = IntervalModel::from_records(g.n(), &intervals).unwrap();
            assert!(validate_intervals(&g, &model));
        }
    }

    #[test]
    fn c6_is_rejected_as_self_coupled() {
        let c = recognize(&gen_cycle(3)).unwrap();
        assert_eq!(c.witness().map(Witness::kind), Some("self_coupled"));
    }

    #[test]
    fn paths_are_accepted() {
        for n in 2..9 {
            assert!(recognize(&gen_path(n)).unwrap().is_yes(), "P{n}");
        }
    }

    #[test]
    fn extract_ordering_examples() {
        let mut d = BitMatrix::new(3);
        d.set(0, 1);
        d.set(1, 2);
        d.set(0, 2);
        assert_eq!(extract_ordering(&d).unwrap().sequence(), &[0, 1, 2]);
        let mut c = BitMatrix::new(3);
        c.set(0, 1);
        c.set(1, 2);
        c.set(2, 0);
        assert!(matches!(extract_ordering(&c), Err(Error::NotTransitive(..))));
        let e = BitMatrix::new(2);
        assert!(matches!(extract_ordering(&e), Err(Error::NotTotal(0, 1))));
    }

    #[test]
    fn disconnected_input_is_merged() {
        let g = Bigraph::new(
            vec![Color::Black, Color::White, Color::Black, Color::White, Color::Black],
            &[(0, 1), (2, 3)],
        )
        .unwrap();
        let c = recognize(&g).unwrap();
        assert!(c.is_yes());
    }

    #[test]
    fn certificate_json_round_trips() {
        let g = gen_cycle(3);
        let c = recognize(&g).unwrap();
        let back = Certificate::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        let v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(v["verdict"], "no");
        assert_eq!(v["witness"]["kind"], "self_coupled");
    }
}
