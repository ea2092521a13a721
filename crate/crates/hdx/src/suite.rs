//! The acceptance battery: one check per criterion, each returning a
//! pass/fail verdict and a JSON detail record.
//!
//! Quick mode replaces the two expensive instances (the full `p = 2` KO
//! complex and the `p = 5` KO links) with smaller ones and says so in the
//! detail record.

use std::cell::OnceCell;
use std::time::{Duration, Instant};

use anyhow::Result;
use hdx_core::cohomology::{expansion_h0, expansion_h1_exact, h1_trivial, quotient_h1, H1Mode};
use hdx_core::complex::{quotient_pair, verify_quotient_proposition, SimplicialComplex};
use hdx_core::fixtures;
use hdx_core::ko::{ko_complex, ko_link, ko_spectral_report, KoComplex, KoParams};
use hdx_core::matgroup::{check_kernel_orders, IndexedGroup, TableGroup};
use hdx_core::relations::{presentation_sl, sample_commutator_power, verify_in_matrices};
use hdx_core::rootsys::{
    consecutive_root_counterexamples, gamma1_boundary_mismatches, gamma_family_counterexamples,
    shared_index_counterexamples, verify_propagation,
};
use hdx_core::spectral::{eigenvalues_dense, second_eigenvalue, walk_matrix};
use hdx_core::Rational;
use serde_json::{json, Value};

use crate::report::{opt_rational, peak_rss_bytes, rational};

/// Absolute tolerance for eigenvalues from the dense solver.
pub const DENSE_EIG_TOL: f64 = 1e-9;
/// Slack on the link eigenvalue threshold.
pub const SPECTRAL_SLACK: f64 = 1e-6;
pub const PROPAGATION_TIME_LIMIT: Duration = Duration::from_secs(10);
pub const RELATIONS_TIME_LIMIT: Duration = Duration::from_secs(60);
pub const KO_TIME_LIMIT: Duration = Duration::from_secs(30 * 60);
pub const KO_MEMORY_LIMIT: u64 = 16 << 30;
pub const COMMUTATOR_SAMPLES: u64 = 1000;
pub const QUOTIENT_INSTANCES: usize = 10;
/// Default cap on enumerated cochain spaces and backtracking nodes.
pub const COHOMOLOGY_CAP: u64 = 1 << 24;
const GROUP_CAP: usize = 1 << 24;

pub const CRITERIA: [(u32, &str); 11] = [
    (1, "chamber propagation covers all non-opposite pairs at stage 2"),
    (2, "root-pair lemma families have no counterexamples"),
    (3, "Steinberg relations hold in SL_4(F_p[t]/t^4)"),
    (4, "[x,y]^p = [x^p,y] on elementary pairs with [x,[x,y]] = e"),
    (5, "quotient of a coset complex is the coset complex of the quotient"),
    (6, "face weights sum to 1 in every dimension"),
    (7, "H^1 gauge and brute modes agree; sphere and torus fixtures"),
    (8, "expansion constants: triangle, Cheeger oracle, torus"),
    (9, "KO complex counts and quotient H^1 vanishing"),
    (10, "congruence-kernel elements have order p"),
    (11, "link spectra of the KO complex and fixture spectra"),
];

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub quick: bool,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub summary: String,
    pub detail: Value,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn to_json(&self, timing: bool) -> Value {
        let mut v = json!({
            "id": self.id,
            "name": self.name,
            "pass": self.pass,
            "summary": self.summary,
            "detail": self.detail,
        });
        if timing {
            v["elapsed_ms"] = json!(self.elapsed.as_millis());
        }
        v
    }

    pub fn line(&self) -> String {
        format!("{} {:>2} {}: {}", if self.pass { "PASS" } else { "FAIL" }, self.id, self.name, self.summary)
    }
}

/// Shared state so the expensive KO complex is built at most once.
pub struct Suite {
    pub opts: SuiteOptions,
    ko: OnceCell<(Result<KoComplex, String>, Duration, Option<u64>)>,
}

fn ko_main_params() -> KoParams {
    KoParams::new(2, 2, 3, 1).expect("valid parameters")
}

fn ko_quick_params() -> KoParams {
    KoParams::new(1, 2, 3, 1).expect("valid parameters")
}

struct Verdict {
    pass: bool,
    summary: String,
    detail: Value,
}

impl Suite {
    pub fn new(opts: SuiteOptions) -> Self {
        Suite { opts, ko: OnceCell::new() }
    }

    fn ko(&self) -> &(Result<KoComplex, String>, Duration, Option<u64>) {
        self.ko.get_or_init(|| {
            let params = if self.opts.quick { ko_quick_params() } else { ko_main_params() };
            let t = Instant::now();
            let ko = ko_complex(params, GROUP_CAP).map_err(|e| e.to_string());
            (ko, t.elapsed(), peak_rss_bytes())
        })
    }

    pub fn run(&self, id: u32) -> CriterionResult {
        let name = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown criterion", |c| c.1);
        let t = Instant::now();
        let verdict = match id {
            1 => self.propagation(),
            2 => self.lemmas(),
            3 => self.steinberg(),
            4 => self.commutator_power(),
            5 => self.quotient_proposition(),
            6 => self.weights(),
            7 => self.h1_cross_validation(),
            8 => self.expansion(),
            9 => self.vanishing(),
            10 => self.kernel_orders(),
            11 => self.spectral(),
            _ => Err(anyhow::anyhow!("no criterion {id}")),
        };
        let verdict = verdict.unwrap_or_else(|e| Verdict { pass: false, summary: format!("error: {e:#}"), detail: Value::Null });
        CriterionResult { id, name, pass: verdict.pass, summary: verdict.summary, detail: verdict.detail, elapsed: t.elapsed() }
    }

    pub fn run_all(&self) -> Vec<CriterionResult> {
        CRITERIA.iter().map(|&(id, _)| self.run(id)).collect()
    }

    fn propagation(&self) -> Result<Verdict> {
        let t = Instant::now();
        let mut per_n = Vec::new();
        let mut ok = true;
        for n in 3..=5 {
            let rep = verify_propagation(n, 2)?;
            let covered = rep.fully_covered_at(2);
            ok &= covered && rep.monotonicity_violations.is_empty() && rep.invariance_violations.is_empty();
            per_n.push(json!({
                "n": n,
                "pairs": rep.total_pairs,
                "chambers_per_stage": rep.stages.iter().map(|s| s.chambers).collect::<Vec<_>>(),
                "covered_per_stage": rep.stages.iter().map(|s| s.covered).collect::<Vec<_>>(),
            }));
        }
        let fast = t.elapsed() < PROPAGATION_TIME_LIMIT;
        Ok(Verdict {
            pass: ok && fast,
            summary: format!("n = 3..5 fully covered at stage 2: {ok}; under {}s: {fast}", PROPAGATION_TIME_LIMIT.as_secs()),
            detail: json!({"instances": per_n, "within_time_limit": fast}),
        })
    }

    fn lemmas(&self) -> Result<Verdict> {
        let mut total = 0usize;
        let mut rows = Vec::new();
        for n in 3..=6 {
            let counts = [
                shared_index_counterexamples(n).len(),
                consecutive_root_counterexamples(n).len(),
                gamma1_boundary_mismatches(n).len(),
                gamma_family_counterexamples(n).len(),
            ];
            total += counts.iter().sum::<usize>();
            rows.push(json!({"n": n, "shared_index": counts[0], "consecutive": counts[1], "gamma1_boundary": counts[2], "gamma_family": counts[3]}));
        }
        Ok(Verdict { pass: total == 0, summary: format!("{total} counterexamples for n = 3..6"), detail: json!(rows) })
    }

    fn steinberg(&self) -> Result<Verdict> {
        let t = Instant::now();
        let mut rows = Vec::new();
        let mut violations = 0;
        for p in [3, 5] {
            let pres = presentation_sl(3, p, 1)?;
            let rep = verify_in_matrices(&pres, 4)?;
            violations += rep.violations.len();
            rows.push(json!({"p": p, "relations": rep.checked, "violations": rep.violations.len()}));
        }
        let fast = t.elapsed() < RELATIONS_TIME_LIMIT;
        Ok(Verdict {
            pass: violations == 0 && fast,
            summary: format!("{violations} violations; under {}s: {fast}", RELATIONS_TIME_LIMIT.as_secs()),
            detail: json!({"instances": rows, "within_time_limit": fast}),
        })
    }

    fn commutator_power(&self) -> Result<Verdict> {
        let mut rows = Vec::new();
        let (mut qualifying, mut violations) = (0, 0);
        for (k, (n, p, s)) in [(3usize, 3u32, 4usize), (3, 5, 4), (2, 2, 3)].into_iter().enumerate() {
            let rep = sample_commutator_power(n, p, s, COMMUTATOR_SAMPLES, self.opts.seed.wrapping_add(k as u64))?;
            qualifying += rep.qualifying;
            violations += rep.violations;
            rows.push(json!({"n": n, "p": p, "s": s, "sampled": rep.sampled, "qualifying": rep.qualifying, "violations": rep.violations}));
        }
        Ok(Verdict {
            pass: violations == 0 && rows.iter().all(|r| r["qualifying"].as_u64() >= Some(COMMUTATOR_SAMPLES)),
            summary: format!("{qualifying} qualifying pairs, {violations} violations"),
            detail: json!(rows),
        })
    }

    fn quotient_proposition(&self) -> Result<Verdict> {
        let mut rows = Vec::new();
        let mut failures = 0;
        for inst in fixtures::coset_zoo()? {
            for n in &inst.normals {
                let ok = verify_quotient_proposition(&inst.group, &inst.subgroups, &n.subgroup)?;
                failures += usize::from(!ok);
                rows.push(json!({"instance": inst.label(n), "group_order": inst.group.order(), "normal_order": n.subgroup.order(), "isomorphic": ok}));
            }
        }
        Ok(Verdict {
            pass: failures == 0 && rows.len() >= QUOTIENT_INSTANCES,
            summary: format!("{} instances, {failures} failures", rows.len()),
            detail: json!(rows),
        })
    }

    fn weights(&self) -> Result<Verdict> {
        let mut complexes: Vec<(String, SimplicialComplex)> = Vec::new();
        for (name, x) in fixtures::small_zoo().into_iter().chain(fixtures::cheeger_graphs()) {
            complexes.push((name.to_owned(), x));
        }
        complexes.push(("torus7".into(), fixtures::torus7()));
        complexes.push(("annulus".into(), fixtures::annulus()));
        for inst in fixtures::coset_zoo()? {
            let x = inst.complex()?.complex;
            for k in 0..x.dim().saturating_sub(1) {
                for f in x.faces(k).iter().take(4) {
                    complexes.push((format!("{} link {f:?}", inst.name), x.link(f)?.0));
                }
            }
            for n in &inst.normals {
                let (left, right) = quotient_pair(&inst.group, &inst.subgroups, &n.subgroup)?;
                complexes.push((format!("{} quotient", inst.label(n)), left));
                complexes.push((format!("{} projected", inst.label(n)), right));
            }
            complexes.push((inst.name.clone(), x));
        }
        let link_params = ko_main_params();
        for ty in [vec![0], vec![1], vec![2]] {
            complexes.push((format!("ko(2,2,3,1) link {ty:?}"), ko_link(link_params, &ty, GROUP_CAP)?.complex));
        }
        let mut bad: Vec<String> = complexes.iter().filter(|(_, x)| !x.weights().normalized()).map(|(n, _)| n.clone()).collect();
        let mut count = complexes.len();
        let (ko, _, _) = self.ko();
        match ko {
            Ok(ko) => {
                count += 1;
                if !ko.complex.complex.weights().normalized() {
                    bad.push("ko complex".into());
                }
            }
            Err(e) => bad.push(format!("ko complex: {e}")),
        }
        Ok(Verdict {
            pass: bad.is_empty(),
            summary: format!("{count} complexes, {} with a dimension not summing to 1", bad.len()),
            detail: json!({"complexes": count, "failures": bad}),
        })
    }

    fn h1_cross_validation(&self) -> Result<Verdict> {
        let lams = [TableGroup::cyclic(1)?, TableGroup::cyclic(2)?, TableGroup::cyclic(3)?];
        let mut disagreements = Vec::new();
        let mut compared = 0;
        for (name, x) in fixtures::small_zoo() {
            for lam in &lams {
                let g = h1_trivial(&x, lam, H1Mode::Gauge, COHOMOLOGY_CAP)?;
                let b = h1_trivial(&x, lam, H1Mode::Brute, COHOMOLOGY_CAP)?;
                compared += 1;
                if g.trivial != b.trivial {
                    disagreements.push(format!("{name} with Z/{}", lam.order()));
                }
            }
        }
        let sphere = fixtures::tetrahedron_boundary();
        let mut sphere_rows = Vec::new();
        let mut sphere_ok = true;
        for (label, lam) in [("zmod:2", TableGroup::cyclic(2)?), ("zmod:3", TableGroup::cyclic(3)?), ("sym:3", TableGroup::symmetric(3)?)] {
            let g = h1_trivial(&sphere, &lam, H1Mode::Gauge, COHOMOLOGY_CAP)?.trivial;
            let b = h1_trivial(&sphere, &lam, H1Mode::Brute, COHOMOLOGY_CAP)?.trivial;
            sphere_ok &= g && b;
            sphere_rows.push(json!({"lambda": label, "gauge_trivial": g, "brute_trivial": b}));
        }
        let torus = h1_trivial(&fixtures::torus7(), &TableGroup::cyclic(2)?, H1Mode::Brute, COHOMOLOGY_CAP)?;
        let nontrivial_classes = torus.classes.map(|c| c - 1);
        let torus_ok = !torus.trivial && nontrivial_classes == Some(3);
        Ok(Verdict {
            pass: disagreements.is_empty() && sphere_ok && torus_ok,
            summary: format!(
                "{compared} comparisons, {} disagreements; sphere trivial: {sphere_ok}; torus non-trivial classes: {}",
                disagreements.len(),
                nontrivial_classes.map_or("?".into(), |c| c.to_string())
            ),
            detail: json!({"disagreements": disagreements, "sphere": sphere_rows, "torus_nontrivial_classes": nontrivial_classes}),
        })
    }

    fn expansion(&self) -> Result<Verdict> {
        let z2 = TableGroup::cyclic(2)?;
        let tri = expansion_h0(&fixtures::triangle(), &z2, COHOMOLOGY_CAP)?;
        let tri_ok = tri == Some(Rational::from_integer(2));
        let mut rows = Vec::new();
        let mut mismatches = 0;
        for (name, x) in fixtures::cheeger_graphs() {
            let h0 = expansion_h0(&x, &z2, COHOMOLOGY_CAP)?;
            let oracle = weighted_cheeger(&x);
            mismatches += usize::from(h0 != Some(oracle));
            rows.push(json!({"graph": name, "vertices": x.vertex_count(), "h0": opt_rational(h0), "cheeger": rational(oracle)}));
        }
        let torus = expansion_h1_exact(&fixtures::torus7(), &z2, COHOMOLOGY_CAP)?;
        let torus_ok = torus.cobound == Some(Rational::from_integer(0));
        Ok(Verdict {
            pass: tri_ok && mismatches == 0 && rows.len() >= 10 && torus_ok,
            summary: format!(
                "triangle h0 = {}; {} graphs, {mismatches} Cheeger mismatches; torus h1_cobound = {}",
                tri.map_or("none".into(), |r| r.to_string()),
                rows.len(),
                torus.cobound.map_or("none".into(), |r| r.to_string())
            ),
            detail: json!({"triangle_h0": opt_rational(tri), "graphs": rows, "torus": {"cobound": opt_rational(torus.cobound), "cosys": opt_rational(torus.cosys), "systole": opt_rational(torus.systole)}}),
        })
    }

    fn vanishing(&self) -> Result<Verdict> {
        let (ko, elapsed, rss) = self.ko();
        let (counts_ok, ko_detail) = match ko {
            Ok(ko) => {
                let built: Vec<u64> = ko.complex.complex.face_counts().iter().map(|&c| c as u64).collect();
                let ok = built == ko.prediction.per_dim;
                let p = ko.setup.params;
                (ok, json!({
                    "params": {"n": p.n, "p": p.p, "s": p.s, "d": p.d},
                    "group_order": ko.prediction.group_order,
                    "face_counts": built,
                    "predicted": ko.prediction.per_dim,
                }))
            }
            Err(e) => (false, json!({"error": e})),
        };
        let fast = *elapsed < KO_TIME_LIMIT;
        let small = rss.is_none_or(|b| b < KO_MEMORY_LIMIT);
        let mut checked = 0;
        let mut non_vacuous = 0;
        let mut failures = Vec::new();
        for inst in fixtures::coset_zoo()? {
            for n in &inst.normals {
                let Some(p) = n.prime else { continue };
                for m in [2usize, 3, 4, 5].into_iter().filter(|&m| !(m as u64).is_multiple_of(p)) {
                    let lam = TableGroup::cyclic(m)?;
                    let r = quotient_h1(&inst.group, &inst.subgroups, &n.subgroup, &lam, COHOMOLOGY_CAP)?;
                    checked += 1;
                    if r.cover_trivial {
                        non_vacuous += 1;
                        if !r.quotient_trivial {
                            failures.push(format!("{} with Z/{m}", inst.label(n)));
                        }
                    }
                }
            }
        }
        let mode = if self.opts.quick { "quick: KO (n=1, p=2, s=3, d=1)" } else { "full: KO (n=2, p=2, s=3, d=1)" };
        Ok(Verdict {
            pass: counts_ok && fast && small && failures.is_empty() && non_vacuous > 0,
            summary: format!(
                "{mode} counts match: {counts_ok}; quotient H^1: {checked} cases, {non_vacuous} with trivial cover, {} failures",
                failures.len()
            ),
            detail: json!({
                "ko": ko_detail,
                "within_time_limit": fast,
                "within_memory_limit": small,
                "quotient_cases": checked,
                "quotient_cases_with_trivial_cover": non_vacuous,
                "quotient_failures": failures,
            }),
        })
    }

    fn kernel_orders(&self) -> Result<Verdict> {
        let (cap, samples) = if self.opts.quick { (1 << 14, 200) } else { (1 << 20, 2000) };
        let mut rows = Vec::new();
        let mut violations = 0;
        for n in 1..=2 {
            for p in [2u32, 3, 5] {
                for s_hi in 2..=4 {
                    for s_lo in 1..s_hi {
                        let rep = check_kernel_orders(n, p, s_hi, s_lo, cap, samples, self.opts.seed)?;
                        violations += rep.violations;
                        rows.push(json!({
                            "n": n, "p": p, "s_hi": s_hi, "s_lo": s_lo,
                            "checked": rep.checked,
                            "exhaustive": rep.exhaustive,
                            "violations": rep.violations,
                            "first_violation_order": rep.first_violation.as_ref().map(|(_, o)| *o),
                        }));
                    }
                }
            }
        }
        let failing = rows.iter().filter(|r| r["violations"].as_u64() > Some(0)).count();
        Ok(Verdict {
            pass: violations == 0,
            summary: format!("{} parameter sets, {failing} with elements of order other than p ({violations} elements)", rows.len()),
            detail: json!(rows),
        })
    }

    fn spectral(&self) -> Result<Verdict> {
        let mut fixture_ok = true;
        let mut rows = Vec::new();
        for m in 3..=8u32 {
            let ev = eigenvalues_dense(&walk_matrix(&fixtures::complete_graph(m))?);
            let want = -1.0 / (m - 1) as f64;
            let ok = ev[1..].iter().all(|e| (e - want).abs() < DENSE_EIG_TOL);
            fixture_ok &= ok;
            rows.push(json!({"fixture": format!("K_{m}"), "lambda2": ev[1], "expected": want, "ok": ok}));
        }
        let c6 = second_eigenvalue(&walk_matrix(&fixtures::cycle(6))?)?;
        let c6_ok = (c6 - 0.5).abs() < DENSE_EIG_TOL;
        fixture_ok &= c6_ok;
        rows.push(json!({"fixture": "C_6", "lambda2": c6, "expected": 0.5, "ok": c6_ok}));

        let (params, threshold) = if self.opts.quick {
            (ko_main_params(), None)
        } else {
            let p = KoParams::new(2, 5, 3, 1)?;
            (p, Some(1.0 / ((p.p as f64).sqrt() - p.n as f64)))
        };
        let rep = ko_spectral_report(params, threshold.unwrap_or(1.0), GROUP_CAP)?;
        let links: Vec<Value> = rep
            .entries
            .iter()
            .map(|e| json!({"type": e.face, "vertices": e.vertices, "edges": e.edges, "connected": e.connected, "lambda2": e.lambda2}))
            .collect();
        let links_ok = match threshold {
            Some(t) => rep.entries.iter().all(|e| e.connected && e.lambda2.is_some_and(|l| l <= t + SPECTRAL_SLACK)),
            None => rep.entries.iter().all(|e| e.connected),
        };
        let label = format!("KO (n={}, p={}, s={}, d={})", params.n, params.p, params.s, params.d);
        Ok(Verdict {
            pass: fixture_ok && links_ok,
            summary: format!(
                "fixtures within {DENSE_EIG_TOL:e}: {fixture_ok}; {label} max link lambda2 = {} vs threshold {}",
                rep.max_lambda2.map_or("none".into(), |l| format!("{l:.6}")),
                threshold.map_or("none (quick mode checks connectivity only)".into(), |t| format!("{t:.6}"))
            ),
            detail: json!({"fixtures": rows, "ko": {"params": label, "threshold": threshold, "links": links, "max_lambda2": rep.max_lambda2}}),
        })
    }
}

/// Weighted Cheeger constant of the 1-skeleton by subset enumeration, with
/// weights counted directly from the facets.
pub fn weighted_cheeger(x: &SimplicialComplex) -> Rational {
    let nv = x.vertex_count();
    let n = x.dim() as i128;
    let facets: Vec<&[u32]> = x.facets().iter().collect();
    let weight = |f: &[u32]| -> Rational {
        let k = f.len() as i128;
        let binom = (0..k).fold(1i128, |acc, i| acc * (n + 1 - i) / (i + 1));
        let c = facets.iter().filter(|g| f.iter().all(|v| g.contains(v))).count() as i128;
        Rational::new(c, binom * facets.len() as i128)
    };
    let wv: Vec<Rational> = (0..nv as u32).map(|v| weight(&[v])).collect();
    let we: Vec<(u32, u32, Rational)> = x.faces(1).iter().map(|e| (e[0], e[1], weight(e))).collect();
    // integer numerators over a common denominator; it cancels in the ratio
    let lcm = wv.iter().chain(we.iter().map(|e| &e.2)).fold(1i128, |l, r| {
        let d = *r.denom();
        l / gcd(l, d) * d
    });
    let num = |r: &Rational| r.numer() * (lcm / r.denom());
    let wv: Vec<i128> = wv.iter().map(num).collect();
    let we: Vec<(u32, u32, i128)> = we.iter().map(|(a, b, r)| (*a, *b, num(r))).collect();
    let total: i128 = wv.iter().sum();
    let mut best: Option<Rational> = None;
    for mask in 1u64..(1u64 << nv) - 1 {
        let inside = |v: u32| mask >> v & 1 == 1;
        let ws: i128 = (0..nv as u32).filter(|&v| inside(v)).map(|v| wv[v as usize]).sum();
        let cut: i128 = we.iter().filter(|(a, b, _)| inside(*a) != inside(*b)).map(|e| e.2).sum();
        let r = Rational::new(cut, ws.min(total - ws));
        best = Some(best.map_or(r, |b| b.min(r)));
    }
    best.unwrap_or(Rational::from_integer(0))
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Runs every criterion and assembles the report body.
pub fn suite_result(results: &[CriterionResult], timing: bool) -> Value {
    let passed = results.iter().filter(|r| r.pass).count();
    json!({
        "criteria": results.iter().map(|r| r.to_json(timing)).collect::<Vec<_>>(),
        "passed": passed,
        "failed": results.len() - passed,
        "table": results.iter().map(CriterionResult::line).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheeger_of_small_graphs() {
        // triangle: a single vertex has weight 1/3 and cut weight 2/3
        assert_eq!(weighted_cheeger(&fixtures::triangle()), Rational::from_integer(2));
        // 4-cycle: two adjacent vertices cut 2 of 4 edges
        assert_eq!(weighted_cheeger(&fixtures::cycle(4)), Rational::from_integer(1));
    }

    #[test]
    fn cheap_criteria_pass_in_quick_mode() {
        let s = Suite::new(SuiteOptions { quick: true, seed: 1 });
        for id in [1, 2, 5] {
            let r = s.run(id);
            assert!(r.pass, "{}", r.line());
        }
    }
}
