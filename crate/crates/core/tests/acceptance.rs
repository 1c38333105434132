//! Acceptance run: one line per criterion, exit status 1 if any criterion fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use qca::ffrep::{Bounds, Catalog};
use qca::quiver::{a2_valued, kronecker, QuiverContext};
use qca::verify::{kronecker_example, CheckConfig, Report, Suite, Verifier};

type Check = std::result::Result<String, String>;

fn verifier(ctx: QuiverContext, cap: usize, total_cap: Option<usize>) -> Verifier {
    let cat = Arc::new(Catalog::new(Arc::new(ctx), Bounds::default()).expect("catalog"));
    let cfg = CheckConfig {
        cap,
        total_cap,
        ..CheckConfig::default()
    };
    Verifier::new(cat, cfg)
}

fn contexts() -> [(&'static str, QuiverContext); 2] {
    [("K2", kronecker(2)), ("A2v", a2_valued(2))]
}

/// Every instance passes; nothing skipped.
fn exhaustive(label: &str, r: &Report) -> Check {
    if r.failed > 0 {
        return Err(format!("{label}: {} failed, first {}", r.failed, r.counterexamples[0]));
    }
    if r.skipped > 0 {
        return Err(format!("{label}: {} skipped {:?}", r.skipped, r.skip_reasons));
    }
    if r.instances == 0 {
        return Err(format!("{label}: no instances"));
    }
    Ok(format!("{label} {}/{}", r.passed, r.instances))
}

/// Every instance passes; skips only where a hypothesis fails.
fn on_hypotheses(label: &str, r: &Report) -> Check {
    if r.failed > 0 {
        return Err(format!("{label}: {} failed, first {}", r.failed, r.counterexamples[0]));
    }
    if let Some(why) = r.skip_reasons.keys().find(|w| w.contains("resource")) {
        return Err(format!("{label}: skipped for resources: {why}"));
    }
    if r.passed == 0 {
        return Err(format!("{label}: no instance satisfies the hypotheses"));
    }
    Ok(format!("{label} {}/{} ({} outside hypotheses)", r.passed, r.instances, r.skipped))
}

fn within(label: &str, t: Duration, limit: Duration) -> Check {
    if t > limit {
        Err(format!("{label} took {t:.1?}, limit {limit:?}"))
    } else {
        Ok(format!("{label} {t:.1?}"))
    }
}

fn join(parts: Vec<Check>) -> Check {
    let mut ok = Vec::new();
    for p in parts {
        ok.push(p?);
    }
    Ok(ok.join("; "))
}

fn kronecker_reproduction() -> Check {
    let mut parts = Vec::new();
    for q0 in [2, 3] {
        let t = Instant::now();
        let k = kronecker_example(q0, Bounds::default()).map_err(|e| e.to_string())?;
        parts.push(exhaustive(&format!("q0={q0}"), &k.report));
        parts.push(within(&format!("q0={q0}"), t.elapsed(), Duration::from_secs(30)));
    }
    join(parts)
}

fn theorem_suite_all_pairs() -> Check {
    let mut parts = Vec::new();
    for (name, ctx) in contexts() {
        let ver = verifier(ctx, 1, None);
        let t = Instant::now();
        let r = ver.check(Suite::ThmDdlz);
        let n = ver.catalog().classes_up_to(1, None).map_err(|e| e.to_string())?.len() as u64;
        if r.instances != n * n {
            return Err(format!("{name}: {} instances, expected {} ordered pairs", r.instances, n * n));
        }
        parts.push(exhaustive(name, &r));
        parts.push(within(name, t.elapsed(), Duration::from_secs(300)));
    }
    join(parts)
}

fn injective_projective_theorem() -> Check {
    let ver = verifier(kronecker(2), 2, None);
    let t = Instant::now();
    let r = ver.check(Suite::ThmDyggs);
    let n = ver.catalog().classes_up_to(2, None).map_err(|e| e.to_string())?.len() as u64;
    let m = ver.hall().context().m as u64;
    if r.instances != n * m {
        return Err(format!("{} instances, expected {} modules × {m} vertices", r.instances, n));
    }
    join(vec![exhaustive("K2 cap 2", &r), within("K2", t.elapsed(), Duration::from_secs(300))])
}

fn green_formula() -> Check {
    let ver = verifier(kronecker(2), 2, Some(2));
    let t = Instant::now();
    let r = ver.check(Suite::Green);
    join(vec![exhaustive("K2 total ≤ 2", &r), within("K2", t.elapsed(), Duration::from_secs(300))])
}

fn per_context(suites: &[Suite], hypotheses: &[Suite]) -> Check {
    let mut parts = Vec::new();
    for (name, ctx) in contexts() {
        let ver = verifier(ctx, 1, None);
        for &s in suites {
            parts.push(exhaustive(&format!("{name} {s}"), &ver.check(s)));
        }
        for &s in hypotheses {
            parts.push(on_hypotheses(&format!("{name} {s}"), &ver.check(s)));
        }
    }
    join(parts)
}

fn matrix_suites() -> Check {
    let mut parts = Vec::new();
    for (name, ctx) in contexts() {
        let ver = verifier(ctx, 1, None);
        for s in [Suite::Lemma42, Suite::Lemma72, Suite::ArLemma] {
            let r = ver.check(s);
            if r.instances < 200 {
                return Err(format!("{name} {s}: only {} vectors", r.instances));
            }
            parts.push(exhaustive(&format!("{name} {s}"), &r));
        }
        parts.push(exhaustive(&format!("{name} lemma73"), &ver.check(Suite::Lemma73)));
    }
    join(parts)
}

fn determinism() -> Check {
    let mut parts = Vec::new();
    for (name, ctx) in contexts() {
        let run = |jobs: usize| {
            let cat = Arc::new(Catalog::new(Arc::new(ctx.clone()), Bounds::default()).expect("catalog"));
            let cfg = CheckConfig {
                seed: 7,
                jobs,
                ..CheckConfig::default()
            };
            serde_json::to_string(&Verifier::new(cat, cfg).check(Suite::All)).expect("report serializes")
        };
        let (a, b) = (run(1), run(3));
        if a != b {
            return Err(format!("{name}: reports differ between runs"));
        }
        parts.push(Ok(format!("{name} identical ({} bytes)", a.len())));
    }
    join(parts)
}

fn main() {
    let criteria: Vec<(&str, fn() -> Check)> = vec![
        ("Kronecker example at q0 = 2 and 3", kronecker_reproduction),
        ("multiplication theorem on all pairs", theorem_suite_all_pairs),
        ("injective/projective theorem, cap 2", injective_projective_theorem),
        ("Green's formula, total dimension ≤ 2", green_formula),
        ("integration map is multiplicative", || per_context(&[Suite::PsiHom], &[])),
        ("closed and composed integration agree", || per_context(&[Suite::PsiFactor], &[])),
        ("defining relations in Hall algebra and torus", || {
            per_context(&[Suite::Prop41, Suite::Cor49], &[Suite::Cor410, Suite::Cor411])
        }),
        ("counting cross-checks", || {
            per_context(
                &[
                    Suite::Riedtmann,
                    Suite::HallAssoc,
                    Suite::HallMulAssoc,
                    Suite::SplitSum,
                    Suite::ArFormula,
                    Suite::Orbit,
                ],
                &[],
            )
        }),
        ("matrix identities", matrix_suites),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = run();
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {:>2} PASS  {name} [{secs:.1}s]  {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [{secs:.1}s]  {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
