//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use ibg::generators::{
    gen_chain_exobiclique, gen_cycle, gen_exobiclique, gen_from_intervals, gen_obstruction_family,
    gen_random_bipartite,
};
use ibg::recognizer::Recognition;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ibg::witness::persist_counterexample;
use ibg::{
    build_pair_digraph, check_ordering, enumerate_bigraphs, oracle_recognize, recognize_with, strong_components,
    validate_intervals, verify_certificate, Bigraph, Certificate, Color, IntervalModel, Options, PairVertex,
    Witness,
};

/// Oracle size limit used throughout.
const ORACLE_LIMIT: usize = 16;
/// Exhaustive enumeration bound for criterion 1.
const EXHAUSTIVE_N: usize = 7;
/// Sample counts for criteria 2, 3 and 5.
const RANDOM_SAMPLES: u64 = 10_000;
const INTERVAL_SAMPLES: u64 = 10_000;
const STRUCTURAL_SAMPLES: u64 = 1_000;
/// Arc-count constant: |arcs(H+)| <= ARC_CONSTANT * n * m.
const ARC_CONSTANT: f64 = 1.0;
/// Wall-clock ceiling for n = 2000.
const TIME_LIMIT_2000_SECS: f64 = 60.0;
/// Allowed factor between the measured time ratio and the n*m ratio per doubling.
const GROWTH_TOLERANCE: f64 = 2.0;
const PERF_SIZES: [usize; 4] = [250, 500, 1000, 2000];

struct Run {
    graph: Bigraph,
    certificate: Certificate,
}

#[derive(Default)]
struct Shared {
    /// Every recognition from criteria 1-4, for criterion 6.
    runs: Vec<Run>,
    internal: Vec<String>,
    recognitions: usize,
}

fn artifact_dir() -> PathBuf {
    std::env::var_os("IBG_TRACE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance"))
}

impl Shared {
    /// Recognizes `g`, archiving internal inconsistencies.
    fn recognize(&mut self, tag: &str, g: &Bigraph) -> Option<Recognition> {
        self.recognitions += 1;
        match recognize_with(g, &Options::default()) {
            Ok(r) => {
                self.runs.push(Run {
                    graph: g.clone(),
                    certificate: r.certificate.clone(),
                });
                Some(r)
            }
            Err(e) => {
                if e.is_internal() {
                    let name = format!("internal-{tag}-{}", self.internal.len());
                    let _ = persist_counterexample(&artifact_dir(), &name, g, &format!("{e:?}"), "-");
                    self.internal.push(name);
                }
                None
            }
        }
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Compares against the oracle; divergences are persisted.
fn oracle_compare(shared: &mut Shared, tag: &str, graphs: &[Bigraph]) -> (usize, Vec<String>) {
    let mut agree = 0;
    let mut bad = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        let oracle = oracle_recognize(g, ORACLE_LIMIT).expect("corpus within oracle limit");
        let verdict = shared.recognize(tag, g).map(|r| r.certificate.is_yes());
        if verdict == Some(oracle.is_interval_bigraph) {
            agree += 1;
        } else {
            let name = format!("{tag}-{i}");
            let _ = persist_counterexample(
                &artifact_dir(),
                &name,
                g,
                &format!("{verdict:?}"),
                &format!("{}", oracle.is_interval_bigraph),
            );
            bad.push(name);
        }
    }
    (agree, bad)
}

fn criterion1(shared: &mut Shared) -> Outcome {
    let graphs = enumerate_bigraphs(EXHAUSTIVE_N).unwrap();
    let (agree, bad) = oracle_compare(shared, "exhaustive", &graphs);
    outcome(
        bad.is_empty(),
        format!("{agree}/{} connected bigraphs on <= {EXHAUSTIVE_N} vertices agree; divergent: {:?}", graphs.len(), bad),
    )
}

fn random_corpus() -> Vec<Bigraph> {
    (0..RANDOM_SAMPLES)
        .map(|i| {
            let n = 2 + (i % 9) as usize;
            let nb = 1 + (i as usize / 9) % (n - 1);
            let p = [0.2, 0.5, 0.8][(i % 3) as usize];
            gen_random_bipartite(nb, n - nb, p, i)
        })
        .collect()
}

fn criterion2(shared: &mut Shared) -> Outcome {
    let graphs = random_corpus();
    let (agree, bad) = oracle_compare(shared, "random", &graphs);
    outcome(
        bad.is_empty(),
        format!("{agree}/{} sampled graphs (n <= 10) agree; divergent: {:?}", graphs.len(), bad),
    )
}

fn criterion3(shared: &mut Shared) -> Outcome {
    let (mut accepted, mut ordered, mut modeled) = (0, 0, 0);
    for i in 0..INTERVAL_SAMPLES {
        let n = 2 + (i % 199) as usize;
        let nb = 1 + (i as usize * 7) % (n - 1);
        let (g, _) = gen_from_intervals(nb, n - nb, i);
        let Some(r) = shared.recognize("interval", &g) else {
            continue;
        };
        if let Certificate::Yes { ordering, intervals } = &r.certificate {
            accepted += 1;
            if matches!(check_ordering(&g, ordering), Ok(None)) {
                ordered += 1;
            }
            if IntervalModel::from_records(g.n(), intervals).is_ok_and(|m| validate_intervals(&g, &m)) {
                modeled += 1;
            }
        }
    }
    let total = INTERVAL_SAMPLES as usize;
    outcome(
        accepted == total && ordered == total && modeled == total,
        format!("{accepted}/{total} accepted, {ordered} orderings pattern-free, {modeled} models valid"),
    )
}

fn wbbw(g: &Bigraph, vs: &[usize]) -> bool {
    use Color::{Black as B, White as W};
    vs.len() == 4
        && (0..4).any(|r| (0..4).map(|i| g.color(vs[(i + r) % 4])).eq([W, B, B, W]))
}

fn criterion4(shared: &mut Shared) -> Outcome {
    let mut failures = Vec::new();
    let mut check = |shared: &mut Shared, name: String, g: Bigraph, want_yes: bool, extra: &dyn Fn(&Recognition) -> bool| {
        match shared.recognize("canonical", &g) {
            Some(r) if r.certificate.is_yes() == want_yes && extra(&r) => {}
            Some(r) => failures.push(format!("{name}: got {}", r.certificate.witness().map_or("yes", |w| w.kind()))),
            None => failures.push(format!("{name}: error")),
        }
    };
    let any = |_: &Recognition| true;
    check(shared, "C4".into(), gen_cycle(2), true, &any);
    for k in 3..=8 {
        check(shared, format!("C{}", 2 * k), gen_cycle(k), false, &any);
    }
    check(shared, "exobiclique 3x3".into(), gen_exobiclique(3, 3), false, &any);
    let step2 = |r: &Recognition| matches!(r.certificate.witness(), Some(Witness::Step2Conflict { .. }));
    check(shared, "chain exobiclique 4x4".into(), gen_chain_exobiclique(4, 4), false, &step2);
    for steps in 1..=4 {
        let g = gen_obstruction_family(steps);
        let gc = g.clone();
        let circuit = move |r: &Recognition| {
            r.trace
                .step3_circuits
                .iter()
                .any(|c| c.len() == 4 && wbbw(&gc, &c.vertices()))
        };
        check(shared, format!("obstruction family steps={steps}"), g, false, &circuit);
    }
    outcome(
        failures.is_empty(),
        format!("C4 accepted, C6..C16, both exobicliques and family steps 1..4 rejected with W/B/B/W step-3 circuits; failures: {failures:?}"),
    )
}

/// Arc rule written out from the definition, independent of the library.
fn arc(g: &Bigraph, (u, v): (usize, usize), (a, b): (usize, usize)) -> bool {
    if u == v || a == b {
        return false;
    }
    if g.same_color(u, v) {
        b == v && g.adjacent(u, a) && !g.adjacent(v, a)
    } else {
        a == u && !g.adjacent(u, v) && g.adjacent(v, b)
    }
}

fn induced_p5(g: &Bigraph, a: usize, c: usize) -> bool {
    let na = g.neighbors(a);
    let nc = g.neighbors(c);
    if !g.same_color(a, c) || a == c || !na.iter().all(|x| nc.contains(x)) || na.len() == nc.len() {
        return false;
    }
    na.iter().any(|&b| {
        nc.iter()
            .filter(|&&d| !g.adjacent(a, d))
            .any(|&d| g.neighbors(d).iter().any(|&e| e != c && !g.adjacent(b, e)))
    })
}

#[derive(Default)]
struct Coverage {
    arcs: usize,
    components: usize,
    implied: usize,
    deepest: usize,
    dictators: usize,
}

/// Returns violation descriptions for one graph.
fn structural_violations(g: &Bigraph, shared: &mut Shared, cov: &mut Coverage) -> Vec<String> {
    let mut out = Vec::new();
    let n = g.n();
    let pd = build_pair_digraph(g);
    // Skew symmetry, and agreement of successor lists with the definition.
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let succ = pd.successors(PairVertex::new(u, v));
            let mut want = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if arc(g, (u, v), (a, b)) {
                        cov.arcs += 1;
                        want.push(PairVertex::new(a, b));
                        if !arc(g, (b, a), (v, u)) {
                            out.push(format!("skew: ({u},{v})->({a},{b})"));
                        }
                    }
                }
            }
            let mut got = succ.clone();
            got.sort();
            if got != want {
                out.push(format!("successors of ({u},{v})"));
            }
        }
    }
    let cs = strong_components(&pd);
    let id = |a: usize, b: usize| cs.comp_of_pair(PairVertex::new(a, b));
    for c in cs.nontrivial() {
        cov.components += 1;
        if cs.size(c) < 4 {
            out.push(format!("component {c} has {} pairs", cs.size(c)));
        }
        for &m in cs.members(c) {
            let p = pd.pair(m);
            let (u, v) = (p.first, p.second);
            let found = g.neighbors(u).iter().any(|&up| {
                g.neighbors(v).iter().any(|&vp| {
                    ibg::pair_digraph::are_independent(g, u, up, v, vp)
                        && id(u, vp) == c
                        && id(up, v) == c
                        && id(up, vp) == c
                })
            });
            if !found {
                out.push(format!("no independent edges for ({u},{v})"));
            }
        }
    }
    // Implied by a nontrivial component other than its own <=> induced P5.
    for a in 0..n {
        for c in 0..n {
            if a == c {
                continue;
            }
            let own = id(a, c);
            let mut implied = false;
            for x in 0..n {
                for y in 0..n {
                    if x != y && arc(g, (x, y), (a, c)) && id(x, y) != own && !cs.is_trivial(id(x, y)) {
                        implied = true;
                    }
                }
            }
            cov.implied += usize::from(implied);
            if implied != induced_p5(g, a, c) {
                out.push(format!("implied ({a},{c}) = {implied}, P5 = {}", !implied));
            }
        }
    }
    // Longest path in the condensation, counted in vertices.
    let k = cs.len();
    let mut succ: Vec<Vec<u32>> = vec![Vec::new(); k];
    for p in pd.pair_ids() {
        pd.for_each_successor(p, |q| {
            let (a, b) = (cs.comp_of(p), cs.comp_of(q));
            if a != b {
                succ[a as usize].push(b);
            }
        });
    }
    let mut depth = vec![0usize; k];
    fn longest(c: usize, succ: &[Vec<u32>], depth: &mut [usize]) -> usize {
        if depth[c] == 0 {
            depth[c] = 1 + succ[c].iter().map(|&d| longest(d as usize, succ, depth)).max().unwrap_or(0);
        }
        depth[c]
    }
    let deepest = (0..k).map(|c| longest(c, &succ, &mut depth)).max().unwrap_or(0);
    cov.deepest = cov.deepest.max(deepest);
    if deepest > 3 {
        out.push(format!("condensation path with {deepest} components"));
    }
    if let Some(r) = shared.recognize("structural", g) {
        cov.dictators = cov.dictators.max(r.trace.dictators.len());
        if r.trace.dictators.len() > 2 * n {
            out.push(format!("{} dictators for n = {n}", r.trace.dictators.len()));
        }
    }
    out
}

/// Toggles one to three black/white pairs; these graphs reach the envelope
/// with circuits far more often than uniform samples do.
fn flipped(g: &Bigraph, seed: u64) -> Bigraph {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let blacks: Vec<usize> = (0..g.n()).filter(|&v| g.color(v) == Color::Black).collect();
    let whites: Vec<usize> = (0..g.n()).filter(|&v| g.color(v) == Color::White).collect();
    let mut edges = g.edges();
    for _ in 0..r.gen_range(1..=3) {
        let (x, y) = (blacks[r.gen_range(0..blacks.len())], whites[r.gen_range(0..whites.len())]);
        let e = (x.min(y), x.max(y));
        match edges.iter().position(|&f| f == e) {
            Some(i) => {
                edges.remove(i);
            }
            None => edges.push(e),
        }
    }
    Bigraph::new(g.colors().to_vec(), &edges).unwrap()
}

fn criterion5(shared: &mut Shared) -> Outcome {
    let mut graphs = enumerate_bigraphs(EXHAUSTIVE_N).unwrap();
    for i in 0..STRUCTURAL_SAMPLES {
        if i % 10 < 7 {
            let n = 8 + (i % 9) as usize;
            let nb = 2 + (i as usize / 9) % (n - 3);
            graphs.push(gen_random_bipartite(nb, n - nb, [0.3, 0.5, 0.7][(i % 3) as usize], 1_000_000 + i));
        } else {
            graphs.push(flipped(&gen_obstruction_family(1), i));
        }
    }
    // Shared::recognize would double-count criterion-6 runs; use a scratch.
    let mut scratch = Shared::default();
    let mut violations = Vec::new();
    let mut cov = Coverage::default();
    for g in &graphs {
        for v in structural_violations(g, &mut scratch, &mut cov) {
            violations.push(format!("{v} in\n{}", g.to_text()));
        }
    }
    shared.internal.extend(scratch.internal);
    outcome(
        violations.is_empty(),
        format!(
            "{} graphs ({} arcs, {} nontrivial components, {} implied pairs, max depth {}, max |DT| {}), {} violations{}",
            graphs.len(),
            cov.arcs,
            cov.components,
            cov.implied,
            cov.deepest,
            cov.dictators,
            violations.len(),
            violations.first().map(|v| format!("; first: {v}")).unwrap_or_default()
        ),
    )
}

/// One mutation per certificate kind, each guaranteed to break the certificate.
fn mutate(g: &Bigraph, c: &Certificate) -> Option<Certificate> {
    let mut m = c.clone();
    match &mut m {
        Certificate::Yes { intervals, .. } => {
            let far = intervals.iter().map(|r| r.right).max()? + 10;
            let edges = g.edges();
            if let Some(&(x, _)) = edges.first() {
                // Move x right of every interval: the edge is lost.
                let r = intervals.iter_mut().find(|r| r.vertex == x)?;
                r.left = far;
                r.right = far;
            } else {
                let x = (0..g.n()).find(|&v| g.color(v) == Color::Black)?;
                let y = (0..g.n()).find(|&v| g.color(v) == Color::White)?;
                let iy = intervals.iter().find(|r| r.vertex == y)?.clone();
                let r = intervals.iter_mut().find(|r| r.vertex == x)?;
                r.left = iy.left;
                r.right = iy.right;
            }
        }
        Certificate::No { witness } => match witness {
            Witness::SelfCoupled { forward, .. } => {
                forward.pop();
            }
            Witness::Step2Conflict { component, couple, .. } => *couple = *component,
            Witness::EnvelopeCircuit { circuit, .. } => {
                let first = circuit.pairs[0];
                circuit.derivations.retain(|r| r.pair != first);
            }
        },
    }
    Some(m)
}

fn criterion6(shared: &Shared) -> Outcome {
    let mut per_kind: BTreeMap<&'static str, (usize, usize, usize)> = BTreeMap::new();
    for run in &shared.runs {
        let kind = run.certificate.witness().map_or("yes", |w| w.kind());
        let e = per_kind.entry(kind).or_default();
        e.0 += 1;
        if verify_certificate(&run.graph, &run.certificate) {
            e.1 += 1;
        }
        if let Some(m) = mutate(&run.graph, &run.certificate) {
            if !verify_certificate(&run.graph, &m) {
                e.2 += 1;
            }
        }
    }
    let all_kinds = ["envelope_circuit", "self_coupled", "step2_conflict", "yes"]
        .iter()
        .all(|k| per_kind.contains_key(k));
    let sound = per_kind.values().all(|&(n, ok, rejected)| n == ok && n == rejected);
    let summary: Vec<String> = per_kind
        .iter()
        .map(|(k, (n, ok, rej))| format!("{k}: {ok}/{n} verified, {rej}/{n} mutants rejected"))
        .collect();
    outcome(all_kinds && sound, summary.join("; "))
}

fn time_recognition(g: &Bigraph, reps: usize) -> (f64, u64) {
    let mut best = f64::INFINITY;
    let mut arcs = 0;
    for _ in 0..reps {
        let t = Instant::now();
        let r = recognize_with(g, &Options::default()).expect("interval instance");
        best = best.min(t.elapsed().as_secs_f64());
        assert!(r.certificate.is_yes());
        arcs = r.trace.arcs;
    }
    (best, arcs)
}

fn criterion7() -> Outcome {
    let mut rows = Vec::new();
    for &n in &PERF_SIZES {
        let (g, _) = gen_from_intervals(n / 2, n - n / 2, 7);
        let reps = if n >= 2000 { 1 } else { 3 };
        let (secs, arcs) = time_recognition(&g, reps);
        rows.push((n, g.m(), arcs, secs));
    }
    let mut pass = true;
    let mut detail = Vec::new();
    for &(n, m, arcs, secs) in &rows {
        let c = arcs as f64 / (n as f64 * m as f64);
        pass &= c <= ARC_CONSTANT;
        detail.push(format!("n={n} m={m} arcs/(nm)={c:.3} t={secs:.2}s"));
        if n == 2000 {
            pass &= secs < TIME_LIMIT_2000_SECS;
        }
    }
    for w in rows.windows(2) {
        let (n1, m1, _, t1) = w[0];
        let (n2, m2, _, t2) = w[1];
        let work = (n2 * m2) as f64 / (n1 * m1) as f64;
        let ratio = t2 / t1;
        pass &= ratio <= GROWTH_TOLERANCE * work;
        detail.push(format!("{n1}->{n2}: time x{ratio:.2} vs nm x{work:.2}"));
    }
    outcome(pass, detail.join(", "))
}

fn criterion8(shared: &Shared) -> Outcome {
    outcome(
        shared.internal.is_empty(),
        format!(
            "{} internal inconsistencies in {} recognitions; archived: {:?}",
            shared.internal.len(),
            shared.recognitions,
            shared.internal
        ),
    )
}

fn main() {
    // libtest flags such as --list or a filter are not meaningful here.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut shared = Shared::default();
    let mut results: Vec<(u8, &str, Outcome, f64)> = Vec::new();
    let mut run = |id: u8, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let o = f();
        let secs = t.elapsed().as_secs_f64();
        println!("criterion {id} [{name}]: {} ({secs:.1}s) {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        results.push((id, name, o, secs));
    };
    run(1, "oracle equivalence, exhaustive", &mut || criterion1(&mut shared));
    run(2, "oracle equivalence, sampled", &mut || criterion2(&mut shared));
    run(3, "positive round-trip", &mut || criterion3(&mut shared));
    run(4, "canonical negatives", &mut || criterion4(&mut shared));
    run(5, "structural invariants", &mut || criterion5(&mut shared));
    run(6, "certificate soundness", &mut || criterion6(&shared));
    run(7, "performance", &mut criterion7);
    run(8, "internal inconsistency rate", &mut || criterion8(&shared));
    let failed: Vec<u8> = results.iter().filter(|r| !r.2.pass).map(|r| r.0).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", results.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
