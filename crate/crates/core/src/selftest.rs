//! The acceptance checks, runnable from the library, the CLI and the test
//! suite.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::construct::{fill_branch, label_graph, Mode, Strategy};
use crate::generators::{dissection_codes, gen_gl, random_outerplanar};
use crate::graph::Graph;
use crate::labeling::windows::{
    apply_pattern, is_attachable, is_cycle_extendable, is_path_extendable, sequence_is_valid, CycleType, Label,
    PatternTriple, Window4, MAX_LABEL,
};
use crate::labeling::{is_valid_l21, Labeling};
use crate::oracle::{lambda_naive, path_extendable_by_enumeration};
use crate::solver::lambda_exact;

/// Windows that must never be judged extendable.
pub const BAD_WINDOWS: [[Label; 4]; 5] = [[4, 1, 3, 0], [0, 2, 4, 6], [4, 1, 6, 3], [5, 1, 4, 6], [6, 1, 4, 2]];

/// Instance sizes for the checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SelftestConfig {
    /// Largest polygon in the exhaustive labeling corpus.
    pub corpus_max_n: usize,
    /// Largest polygon for exact λ comparisons.
    pub lambda_max_n: usize,
    /// Random longer paths compared against the enumeration oracle.
    pub random_paths: usize,
    /// Random branch instances.
    pub branch_trials: usize,
    /// Random graphs of sizes `step, 2·step, …`.
    pub random_graphs: usize,
    pub random_step: usize,
    pub seed: u64,
}

impl SelftestConfig {
    pub fn full() -> Self {
        SelftestConfig {
            corpus_max_n: 12,
            lambda_max_n: 10,
            random_paths: 100_000,
            branch_trials: 100_000,
            random_graphs: 100,
            random_step: 10,
            seed: 0,
        }
    }

    pub fn quick() -> Self {
        SelftestConfig {
            corpus_max_n: 9,
            lambda_max_n: 8,
            random_paths: 5_000,
            branch_trials: 10_000,
            random_graphs: 20,
            random_step: 10,
            seed: 0,
        }
    }
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig::full()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {} [{verdict}] {}: {}", self.id, self.title, self.detail)
    }
}

fn report(id: u8, title: &'static str, failures: &[String], summary: String) -> CriterionReport {
    let detail = if failures.is_empty() {
        summary
    } else {
        let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
        format!("{summary}; {} failure(s): {}", failures.len(), shown.join("; "))
    };
    CriterionReport { id, title, passed: failures.is_empty(), detail }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

/// λ(G(l)) = 6 for l ∈ {4, 5, 7, 8}, with a proof that 5 labels do not suffice.
pub fn criterion_1(_cfg: &SelftestConfig) -> CriterionReport {
    let mut failures = Vec::new();
    let mut times = Vec::new();
    for l in [4, 5, 7, 8] {
        let gl = gen_gl(l).expect("l >= 3");
        let start = Instant::now();
        let res = lambda_exact(&gl.graph);
        let took = start.elapsed();
        times.push(format!("G({l}) {}", secs(took)));
        match res {
            Ok(r) => {
                let cert = r.infeasibility_certificate.as_ref();
                if r.lambda != 6 {
                    failures.push(format!("G({l}): λ = {}", r.lambda));
                }
                if cert.map(|c| c.k_tested) != Some(5) {
                    failures.push(format!("G({l}): no exhaustion certificate for k = 5"));
                }
                if !is_valid_l21(&gl.graph, &r.witness) || r.witness.max_label() > Some(6) {
                    failures.push(format!("G({l}): witness fails verification"));
                }
            }
            Err(e) => failures.push(format!("G({l}): {e}")),
        }
        if took > Duration::from_secs(60) {
            failures.push(format!("G({l}) took {}", secs(took)));
        }
    }
    report(1, "extremal ladders need 6", &failures, times.join(", "))
}

fn corpus(max_n: usize) -> impl Iterator<Item = (usize, Graph)> {
    (3..=max_n).flat_map(|n| dissection_codes(n).expect("size within cap").into_iter().map(move |c| (n, c.to_graph())))
}

/// Every 2-connected corpus graph is labeled with span at most 6 without
/// escalation.
pub fn criterion_2(cfg: &SelftestConfig) -> CriterionReport {
    let mut failures = Vec::new();
    let mut count = 0;
    let mut table_hits = 0;
    let mut table_misses = 0;
    let start = Instant::now();
    for (n, g) in corpus(cfg.corpus_max_n) {
        count += 1;
        match label_graph(&g, &Strategy::default()) {
            Ok(out) => {
                let t = &out.telemetry;
                if !is_valid_l21(&g, &out.labeling) || out.labeling.span() > 6 {
                    failures.push(format!("n={n} {}: bad labeling", g.to_edge_list().replace('\n', " ")));
                }
                if t.face_escalations + t.solver_escalations > 0 {
                    failures.push(format!("n={n}: escalated ({t:?})"));
                }
                table_hits += t.fast_path_hits;
                table_misses += t.divergences + t.fallbacks;
            }
            Err(e) => failures.push(format!("n={n}: {e}")),
        }
    }
    let summary = format!(
        "{count} graphs (n 3..={}), case-table hits {table_hits}, misses {table_misses}, {}",
        cfg.corpus_max_n,
        secs(start.elapsed())
    );
    report(2, "constructive span ≤ 6 on the corpus", &failures, summary)
}

/// Exact λ is at most 6 and at most the constructed span.
pub fn criterion_3(cfg: &SelftestConfig) -> CriterionReport {
    let mut failures = Vec::new();
    let mut count = 0;
    let mut hist = [0usize; 8];
    for (n, g) in corpus(cfg.lambda_max_n) {
        count += 1;
        let span = label_graph(&g, &Strategy::default()).map(|o| o.labeling.span());
        match (lambda_exact(&g), span) {
            (Ok(r), Ok(span)) => {
                hist[(r.lambda as usize).min(7)] += 1;
                if r.lambda > 6 || r.lambda > span {
                    failures.push(format!("n={n}: λ = {}, span = {span}", r.lambda));
                }
            }
            (Err(e), _) => failures.push(format!("n={n}: solver {e}")),
            (_, Err(e)) => failures.push(format!("n={n}: labeler {e}")),
        }
    }
    let spread: Vec<String> = (0..8).filter(|&k| hist[k] > 0).map(|k| format!("λ={k}: {}", hist[k])).collect();
    report(3, "exact λ bounded by 6 and by the span", &failures, format!("{count} graphs, {}", spread.join(", ")))
}

/// Pattern labelings of a path, a cycle of length `3k`, and a cycle of
/// length `3k + 1` with the odd vertex out.
pub fn criterion_4(_cfg: &SelftestConfig) -> CriterionReport {
    let mut failures = Vec::new();
    for w in BAD_WINDOWS {
        if !matches!(is_path_extendable(Some(w[0]), &w[1..3], Some(w[3])), Ok(false)) {
            failures.push(format!("window {w:?} accepted"));
        }
    }

    let triples = PatternTriple::all();
    let (mut path_ok, mut type1_ok, mut type2_ok, mut type2_some) = (0, 0, 0, 0);
    let mut pendant_rejections = 0;
    let mut type2_bad: Vec<String> = Vec::new();
    for t in &triples {
        let [a, b, c] = t.labels();
        let mut path_pass = true;
        for k in 1..=5 {
            let inner = apply_pattern(3 * k, *t);
            path_pass &= is_path_extendable(None, &inner, None) == Ok(true);
            // With pendants the verdict must come down to the two end windows.
            for u in 0..=MAX_LABEL {
                for v in 0..=MAX_LABEL {
                    let mut seq = vec![Some(u)];
                    seq.extend(inner.iter().map(|&x| Some(x)));
                    seq.push(Some(v));
                    if !sequence_is_valid(&seq, false) {
                        continue;
                    }
                    let got = is_path_extendable(Some(u), &inner, Some(v)) == Ok(true);
                    let n = seq.len();
                    let ends = is_attachable(Window4([seq[0], seq[1], seq[2], seq[3]]))
                        && is_attachable(Window4([
                            seq[n - 4],
                            seq[n - 3],
                            seq[n - 2],
                            seq[n - 1],
                        ]));
                    if got != ends {
                        failures.push(format!("pattern {a}{b}{c} with pendants {u},{v}: inner windows rejected"));
                    }
                    if !got && k == 1 {
                        pendant_rejections += 1;
                    }
                }
            }
        }
        if path_pass {
            path_ok += 1;
        } else {
            failures.push(format!("path pattern {a}{b}{c} rejected"));
        }

        let type1 = (1..=5).all(|k| {
            is_cycle_extendable(&apply_pattern(3 * k, *t), CycleType::One) == Ok(true)
        });
        if type1 {
            type1_ok += 1;
        } else {
            failures.push(format!("type-1 cycle pattern {a}{b}{c} rejected"));
        }

        // Cycle u1 … u_{3k+1}: u3 … u_{3k+1}, u1 follow the pattern and u2
        // takes every label that keeps the cycle proper.
        let mut every_u2 = true;
        let mut some_u2 = true;
        for k in 1..=5 {
            let pat = apply_pattern(3 * k, *t);
            let mut any = false;
            for x in 0..=MAX_LABEL {
                let mut cyc = vec![pat[3 * k - 1], x];
                cyc.extend(&pat[..3 * k - 1]);
                let opt: Vec<Option<Label>> = cyc.iter().map(|&y| Some(y)).collect();
                if !sequence_is_valid(&opt, true) {
                    continue;
                }
                if is_cycle_extendable(&cyc, CycleType::Two) == Ok(true) {
                    any = true;
                } else {
                    every_u2 = false;
                }
            }
            some_u2 &= any;
        }
        if every_u2 {
            type2_ok += 1;
        } else {
            type2_bad.push(format!("{a}{b}{c}"));
        }
        type2_some += usize::from(some_u2);
    }
    if !type2_bad.is_empty() {
        failures.push(format!("type-2 cycle patterns rejected: {}", type2_bad.join(" ")));
    }
    let summary = format!(
        "bad windows rejected; path {path_ok}/24, type 1 {type1_ok}/24, type 2 {type2_ok}/24 \
         (some u2 works for {type2_some}/24); \
         {pendant_rejections} valid pendant pairs on 3-vertex patterns rejected at an end window",
    );
    report(4, "extendability of the pattern labelings", &failures, summary)
}

/// A uniformly random proper labeling of `len` positions, by restarts.
fn random_proper_sequence(rng: &mut ChaCha8Rng, len: usize) -> Vec<Label> {
    loop {
        let mut seq: Vec<Label> = Vec::with_capacity(len);
        let ok = (0..len).all(|i| {
            let choices: Vec<Label> = (0..=MAX_LABEL)
                .filter(|&x| (i < 1 || seq[i - 1].abs_diff(x) >= 2) && (i < 2 || seq[i - 2] != x))
                .collect();
            if choices.is_empty() {
                return false;
            }
            seq.push(choices[rng.gen_range(0..choices.len())]);
            true
        });
        if ok {
            return seq;
        }
    }
}

/// The window predicate agrees with the enumeration oracle.
pub fn criterion_5(cfg: &SelftestConfig) -> CriterionReport {
    let mut failures = Vec::new();
    let mut accepted = 0;
    let start = Instant::now();
    for code in 0..7usize.pow(5) {
        let digits: Vec<Label> = (0..5).map(|i| (code / 7usize.pow(i) % 7) as Label).collect();
        let fast = is_path_extendable(Some(digits[0]), &digits[1..4], Some(digits[4])) == Ok(true);
        let slow = path_extendable_by_enumeration(Some(digits[0]), &digits[1..4], Some(digits[4]));
        accepted += usize::from(fast);
        if fast != slow {
            failures.push(format!("{digits:?}: predicate {fast}, oracle {slow}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 5);
    let mut random_accepted = 0;
    for _ in 0..cfg.random_paths {
        let inner_len = rng.gen_range(4..=8);
        let with_u = rng.gen_bool(0.8);
        let with_v = rng.gen_bool(0.8);
        let total = inner_len + usize::from(with_u) + usize::from(with_v);
        let seq: Vec<Label> = if rng.gen_bool(0.9) {
            random_proper_sequence(&mut rng, total)
        } else {
            (0..total).map(|_| rng.gen_range(0..=MAX_LABEL)).collect()
        };
        let u = with_u.then(|| seq[0]);
        let v = with_v.then(|| seq[total - 1]);
        let inner = &seq[usize::from(with_u)..usize::from(with_u) + inner_len];
        let fast = is_path_extendable(u, inner, v) == Ok(true);
        let slow = path_extendable_by_enumeration(u, inner, v);
        random_accepted += usize::from(fast);
        if fast != slow {
            failures.push(format!("{u:?} {inner:?} {v:?}: predicate {fast}, oracle {slow}"));
        }
    }
    let summary = format!(
        "7^5 exhaustive ({accepted} extendable) + {} random ({random_accepted} extendable), {}",
        cfg.random_paths,
        secs(start.elapsed())
    );
    report(5, "window predicate matches the enumeration oracle", &failures, summary)
}

/// The branch greedy never runs out of labels.
pub fn criterion_6(cfg: &SelftestConfig) -> CriterionReport {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 6);
    let mut trials = 0;
    while trials < cfg.branch_trials {
        let (a1, a2, b) = (rng.gen_range(0..=MAX_LABEL), rng.gen_range(0..=MAX_LABEL), rng.gen_range(0..=MAX_LABEL));
        if a1 == a2 || a1.abs_diff(b) < 2 || a2.abs_diff(b) < 2 {
            continue;
        }
        trials += 1;
        let q = rng.gen_range(1..=50);
        let out = match std::panic::catch_unwind(|| fill_branch(a1, a2, b, q)) {
            Ok(out) => out,
            Err(_) => {
                failures.push(format!("({a1},{a2},{b},{q}) panicked"));
                continue;
            }
        };
        // a1 = 0, a2 = 1, b = 2, branch 3, 4, ….
        let n = 3 + out.len();
        let mut g = Graph::new(n);
        g.add_edge(0, 2).unwrap();
        g.add_edge(1, 2).unwrap();
        for v in 3..n {
            g.add_edge(v - 1, v).unwrap();
        }
        let mut labels = vec![u32::from(a1), u32::from(a2), u32::from(b)];
        labels.extend(out.iter().map(|&x| u32::from(x)));
        if out.len() != q - 1 || !is_valid_l21(&g, &Labeling::from_total(6, &labels)) {
            failures.push(format!("({a1},{a2},{b},{q}) -> {out:?}"));
        }
    }
    report(6, "branch greedy is total", &failures, format!("{} instances", cfg.branch_trials))
}

/// Random graphs up to a thousand vertices, with timings.
pub fn criterion_7(cfg: &SelftestConfig) -> CriterionReport {
    let mut failures = Vec::new();
    let mut timings: Vec<(usize, Duration)> = Vec::new();
    for i in 0..cfg.random_graphs {
        let n = cfg.random_step * (i + 1);
        let g = random_outerplanar(n, cfg.seed + i as u64);
        let start = Instant::now();
        let res = label_graph(&g, &Strategy::default());
        timings.push((n, start.elapsed()));
        match res {
            Ok(out) if is_valid_l21(&g, &out.labeling) && out.labeling.span() <= 6 => {}
            Ok(_) => failures.push(format!("n={n} seed={i}: bad labeling")),
            Err(e) => failures.push(format!("n={n} seed={i}: {e}")),
        }
    }
    let pick: Vec<String> = timings
        .iter()
        .filter(|(n, _)| timings.len() < 10 || n % (cfg.random_step * (timings.len() / 5).max(1)) == 0)
        .map(|(n, t)| format!("n={n} {:.1}ms", t.as_secs_f64() * 1e3))
        .collect();
    let total: Duration = timings.iter().map(|(_, t)| *t).sum();
    let summary = format!("{} graphs in {}; {}", timings.len(), secs(total), pick.join(", "));
    report(7, "random graphs labeled at scale", &failures, summary)
}

/// λ of an edge, a triangle and K4 minus an edge.
pub fn criterion_8(_cfg: &SelftestConfig) -> CriterionReport {
    let mut failures = Vec::new();
    let k4e = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]).unwrap();
    let cases = [("edge", Graph::path(2), 2), ("C3", Graph::complete(3), 4), ("K4-e", k4e, 5)];
    for (name, g, want) in &cases {
        let naive = lambda_naive(g);
        match lambda_exact(g) {
            Ok(r) if r.lambda == *want && naive == *want && is_valid_l21(g, &r.witness) => {}
            Ok(r) => failures.push(format!("{name}: solver {}, naive {naive}, expected {want}", r.lambda)),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    report(8, "small exact values", &failures, "edge 2, C3 4, K4-e 5".into())
}

pub fn run_all(cfg: &SelftestConfig) -> Vec<CriterionReport> {
    let checks: [fn(&SelftestConfig) -> CriterionReport; 8] =
        [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8];
    checks.iter().map(|c| c(cfg)).collect()
}

/// Case-table statistics over the corpus in the given mode.
pub fn corpus_telemetry(max_n: usize, mode: Mode) -> crate::construct::Telemetry {
    let mut total = crate::construct::Telemetry::default();
    for (_, g) in corpus(max_n) {
        if let Ok(out) = label_graph(&g, &Strategy { mode, strict: false }) {
            total.absorb(&out.telemetry);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_small_criteria() {
        let cfg = SelftestConfig::quick();
        for r in [criterion_6(&cfg), criterion_8(&cfg)] {
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn report_line_format() {
        let r = report(3, "x", &[], "ok".into());
        assert_eq!(r.to_string(), "criterion 3 [PASS] x: ok");
        let r = report(3, "x", &["a".into()], "ok".into());
        assert_eq!(r.to_string(), "criterion 3 [FAIL] x: ok; 1 failure(s): a");
    }
}
