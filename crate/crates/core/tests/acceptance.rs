//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use halfhex::analysis::{self, QuadratureSpec};
use halfhex::counting::{self, build_matrix};
use halfhex::exactnum::{int, rat, to_f64, Integer, Rational};
use halfhex::oracle::{count_matchings, count_nilp};
use halfhex::pfaffian::{
    cor10_pfaffian_identity, mehta_wang_lhs, mehta_wang_rhs, pf_by_definition, pfaffian, prop9_pfaffian_identity,
};
use halfhex::region::{build_region, HoleSpec, RegionSpec};
use halfhex::verify::{random_rational, random_skew};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const SEED: u64 = 2024;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tilings(n: u32, x: u32, hole: HoleSpec) -> Integer {
    count_matchings(&build_region(RegionSpec::new(n, x, hole)).unwrap()).unwrap()
}

fn integer(v: Rational) -> Result<Integer, String> {
    counting::closed_as_integer(&v).map_err(|e| e.to_string())
}

fn sci(v: &[f64]) -> String {
    v.iter().map(|d| format!("{d:.3e}")).collect::<Vec<_>>().join(" > ")
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

fn three_routes() -> Outcome {
    let mut cases = 0;
    for n in 1..=3 {
        for x in 1..=3 {
            for k in 0..n {
                let closed = integer(counting::count_gap_closed(n, k, x).map_err(|e| e.to_string())?)?;
                let pf = counting::count_gap_pfaffian(n, k, x).map_err(|e| e.to_string())?;
                let m = tilings(n, x, HoleSpec::Triangle2(k));
                let p = count_nilp(n, x, k).map_err(|e| e.to_string())?;
                ensure(closed == pf && pf == m && m == p, || {
                    format!("({n},{x},{k}): closed {closed}, pfaffian {pf}, matchings {m}, paths {p}")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} parameter triples agree"))
}

fn macmahon_anchor() -> Outcome {
    ensure(counting::macmahon(1, 1) == int(10), || "macmahon(1,1) != 10".into())?;
    ensure(counting::macmahon(2, 1) == int(126), || "macmahon(2,1) != 126".into())?;
    ensure(tilings(1, 1, HoleSpec::NoHole) == Integer::from(10), || "F(1,1) tilings != 10".into())?;
    ensure(tilings(2, 1, HoleSpec::NoHole) == Integer::from(126), || "F(2,1) tilings != 126".into())?;
    for n in 1..=6 {
        ensure(counting::macmahon(n, 0) == int(1), || format!("macmahon({n},0) != 1"))?;
    }
    Ok("10, 126 and x = 0".into())
}

fn lozenge_formula() -> Outcome {
    let mut cases = 0;
    for n in 1..=3 {
        for x in 1..=3 {
            for k in 0..n {
                let f = integer(counting::count_lozenge_closed(n, k, x).map_err(|e| e.to_string())?)?;
                let m = tilings(n, x, HoleSpec::HorizontalLozenge(k));
                ensure(f == m, || format!("({n},{x},{k}): formula {f}, matchings {m}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} parameter triples agree"))
}

fn remark4() -> Outcome {
    for n in 1..=6 {
        for x in 1..=6 {
            let lhs = counting::count_gap_closed(n + 1, n, x - 1).map_err(|e| e.to_string())?;
            ensure(lhs == counting::macmahon(n, x), || format!("n={n} x={x}"))?;
        }
    }
    Ok("36 pairs".into())
}

fn det(n: u32, k: u32, x: &Rational) -> Rational {
    build_matrix(n, k, x).unwrap().determinant()
}

fn step1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cases = 0;
    for n in 1..=3 {
        for k in 0..n {
            for _ in 0..5 {
                let x = random_rational(&mut rng);
                let mirror = int(-2 * n as i64) - &x;
                ensure(det(n, k, &x) == det(n, k, &mirror), || format!("n={n} k={k} x={x}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} random points"))
}

fn vanishing() -> Outcome {
    let mut cases = 0;
    for n in 1..=3u32 {
        for k in 0..n {
            for s in 1..(n - k) as i64 {
                ensure(det(n, k, &int(-s)).is_zero(), || format!("n={n} k={k} x=-{s}"))?;
                cases += 1;
            }
            for s in 1..n as i64 {
                ensure(det(n, k, &rat(-2 * s - 1, 2)).is_zero(), || format!("n={n} k={k} x=-{s}-1/2"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} zeros"))
}

fn identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in 1..=6 {
        for _ in 0..20 {
            let (a, b) = (random_rational(&mut rng), random_rational(&mut rng));
            ensure(mehta_wang_lhs(&a, &b, n) == mehta_wang_rhs(&a, &b, n), || format!("determinant n={n} a={a} b={b}"))?;
        }
    }
    let mut recip = 0;
    for n in [2, 4, 6] {
        for _ in 0..10 {
            let b = random_rational(&mut rng);
            let (l, r) = prop9_pfaffian_identity(&b, n).map_err(|e| e.to_string())?;
            ensure(l == r, || format!("Pochhammer Pfaffian n={n} b={b}: {l} vs {r}"))?;
            if let Ok((l, r)) = cor10_pfaffian_identity(&b, n) {
                ensure(l == r, || format!("reciprocal Pfaffian n={n} b={b}: {l} vs {r}"))?;
                recip += 1;
            }
        }
        // A generic point, so the reciprocal identity is exercised even if
        // every random b hit a pole.
        let (l, r) = cor10_pfaffian_identity(&rat(7, 3), n).map_err(|e| e.to_string())?;
        ensure(l == r, || format!("reciprocal Pfaffian n={n} b=7/3"))?;
    }
    for n in [1, 3, 5] {
        for _ in 0..10 {
            let b = random_rational(&mut rng);
            ensure(mehta_wang_lhs(&int(0), &b, n).is_zero(), || format!("odd order n={n} b={b}"))?;
        }
    }
    Ok(format!("120 determinant cases, {recip} random reciprocal cases"))
}

fn pfaffian_engine() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for t in 0..100 {
        let size = 2 * (t % 4 + 1);
        let m = random_skew(&mut rng, size);
        let pf = pfaffian(&m).map_err(|e| e.to_string())?;
        let def = pf_by_definition(&m).map_err(|e| e.to_string())?;
        ensure(pf == def, || format!("matrix {t}: {pf} vs {def}"))?;
        ensure(&pf * &pf == m.determinant(), || format!("matrix {t}: Pf^2 != det"))?;
    }
    Ok("100 matrices".into())
}

fn lemma14() -> Outcome {
    let q = QuadratureSpec::default();
    let mut devs = Vec::new();
    for k in [50u64, 100, 200] {
        let v = analysis::integral_i(1.0, k, &q).map_err(|e| e.to_string())?.value;
        devs.push((v * (8.0 * k as f64 / PI).sqrt() - 1.0).abs());
    }
    ensure(devs[2] < 0.05, || format!("deviation at k=200 is {}", devs[2]))?;
    ensure(strictly_decreasing(&devs), || format!("deviations {devs:?}"))?;
    Ok(format!("deviations {}", sci(&devs)))
}

fn theorem1() -> Outcome {
    let q = QuadratureSpec::default();
    let mut devs = Vec::new();
    for k in [32u64, 64, 128, 256] {
        devs.push((analysis::theorem1_check(k, &q).map_err(|e| e.to_string())? - 1.0).abs());
    }
    ensure(devs[3] < 0.10, || format!("deviation at k=256 is {}", devs[3]))?;
    ensure(strictly_decreasing(&devs), || format!("deviations {devs:?}"))?;
    Ok(format!("deviations {}", sci(&devs)))
}

fn theorem2() -> Outcome {
    let q = QuadratureSpec::default();
    let mut devs = Vec::new();
    for k in [32u64, 64, 128, 256] {
        devs.push((analysis::theorem2_check(k, &q).map_err(|e| e.to_string())? + 1.0).abs());
    }
    ensure(devs[3] < 0.10, || format!("deviation at k=256 is {}", devs[3]))?;
    ensure(strictly_decreasing(&devs), || format!("deviations {devs:?}"))?;
    Ok(format!("deviations {}", sci(&devs)))
}

fn theorem15() -> Outcome {
    let q = QuadratureSpec::default();
    let mut out = Vec::new();
    for xi in [0.5, 2.0] {
        let a = analysis::omega_f(200, xi, &q).map_err(|e| e.to_string())?;
        let b = analysis::omega_f(201, xi, &q).map_err(|e| e.to_string())?;
        let inc = b.log_value - a.log_value;
        let target = 4.0 * (2.0 / (1.0 + xi)).ln();
        let rel = ((inc - target) / target).abs();
        ensure(rel < 0.01, || format!("xi={xi}: increment {inc}, target {target}"))?;
        out.push(format!("xi={xi}: rel {rel:.2e}"));
    }
    Ok(out.join(", "))
}

fn finite_convergence() -> Outcome {
    let q = QuadratureSpec::default();
    let mut out = Vec::new();
    for k in [0u32, 1] {
        let w = analysis::omega_f(k as u64, 1.0, &q).map_err(|e| e.to_string())?.value;
        let dev = |n: u32| -> Result<f64, String> {
            let r = counting::finite_ratio(n, k, n, HoleSpec::Triangle2(k)).map_err(|e| e.to_string())?;
            Ok((to_f64(&r) - w).abs())
        };
        let (d64, d512) = (dev(64)?, dev(512)?);
        ensure(d512 < d64, || format!("k={k}: deviation {d512} at n=512 vs {d64} at n=64"))?;
        out.push(format!("k={k}: {d64:.2e} -> {d512:.2e}"));
    }
    Ok(out.join(", "))
}

fn lemma12() -> Outcome {
    let q = QuadratureSpec::default();
    let limit = analysis::lemma12_limit(1.0, 0, &q).map_err(|e| e.to_string())?;
    let mut devs = Vec::new();
    for n in [256u64, 1024, 4096] {
        let s = analysis::f5_4_partial(n, 0, &int(1)).map_err(|e| e.to_string())?;
        devs.push((to_f64(&s) / (n as f64).sqrt() - limit).abs());
    }
    ensure(strictly_decreasing(&devs), || format!("deviations {devs:?}"))?;
    Ok(format!("deviations {}", sci(&devs)))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("three-route exact agreement", three_routes),
        ("symmetric hexagon anchor", macmahon_anchor),
        ("fixed-lozenge formula", lozenge_formula),
        ("gap formula specializes to the symmetric count", remark4),
        ("determinant reflection symmetry", step1),
        ("determinant vanishing loci", vanishing),
        ("determinant and Pfaffian identities", identities),
        ("Pfaffian engine", pfaffian_engine),
        ("integral asymptotic", lemma14),
        ("inverse-distance law", theorem1),
        ("ratio law", theorem2),
        ("exponential law off the symmetric point", theorem15),
        ("finite-size convergence", finite_convergence),
        ("hypergeometric limit", lemma12),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
