//! Invariant suites behind `halfhex verify`.
//!
//! Every suite is deterministic given its seed: random corpora come from a
//! `ChaCha8Rng` seeded with [`VerifyConfig::seed`], and checks run in a fixed order.

use std::fmt::Write as _;
use std::ops::Range;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{self, QuadratureSpec};
use crate::counting::{self, build_matrix};
use crate::exactnum::{binomial, int, pochhammer, rat, signed_sum, to_f64, Integer, Rational};
use crate::oracle::{count_matchings, count_nilp};
use crate::pfaffian::{
    block_factorization, cor10_pfaffian_identity, mehta_wang_lhs, mehta_wang_rhs, pf_by_definition, pfaffian,
    prop9_pfaffian_identity, SkewMatrix,
};
use crate::region::{build_region, HoleSpec, RegionSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Arith,
    Pfaffian,
    Counting,
    Identities,
    Analysis,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Arith => "arith",
            Suite::Pfaffian => "pfaffian",
            Suite::Counting => "counting",
            Suite::Identities => "identities",
            Suite::Analysis => "analysis",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Upper bound on `n` for the exact counting checks (at most 3 is
    /// meaningful; the brute-force oracles refuse larger instances).
    pub max_n: u32,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_n: 3, seed: 42 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// One line per check, plus the first failure detail of failing checks.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{status} {}/{} ({} cases, {} failed)", c.suite, c.name, c.cases, c.failures.len());
            if let Some(first) = c.failures.first() {
                let _ = writeln!(out, "    {first}");
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        let _ = writeln!(out, "{} checks, {} failed", self.checks.len(), failed);
        out
    }
}

/// Accumulates cases for one check.
struct Recorder {
    suite: &'static str,
    name: String,
    cases: usize,
    failures: Vec<String>,
}

impl Recorder {
    fn new(suite: &'static str, name: &str) -> Self {
        Recorder { suite, name: name.to_string(), cases: 0, failures: Vec::new() }
    }

    fn case(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(detail());
        }
    }

    fn finish(self) -> Check {
        Check { suite: self.suite, name: self.name, cases: self.cases, failures: self.failures }
    }
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-20..=20), rng.gen_range(1..=9))
}

/// Random skew matrix with integer entries in `[-9, 9]`.
pub fn random_skew(rng: &mut ChaCha8Rng, size: usize) -> SkewMatrix {
    SkewMatrix::from_upper(size, |_, _| int(rng.gen_range(-9..=9)))
}

pub fn run(suite: Suite, config: &VerifyConfig) -> Report {
    let mut report = Report::default();
    let all = suite == Suite::All;
    if all || suite == Suite::Arith {
        report.checks.extend(arith(config));
    }
    if all || suite == Suite::Pfaffian {
        report.checks.extend(pfaffian_engine(config));
    }
    if all || suite == Suite::Counting {
        report.checks.extend(counting_checks(config));
    }
    if all || suite == Suite::Identities {
        report.checks.extend(identities(config));
    }
    if all || suite == Suite::Analysis {
        report.checks.extend(analysis_checks());
    }
    report
}

fn arith(config: &VerifyConfig) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut step = Recorder::new("arith", "pochhammer-step");
    let mut pascal = Recorder::new("arith", "pascal-rule");
    let mut orient = Recorder::new("arith", "signed-sum-antisymmetry");
    for _ in 0..200 {
        let a = random_rational(&mut rng);
        let m = rng.gen_range(0..12u64);
        step.case(pochhammer(&a, m + 1) == pochhammer(&a, m) * (&a + int(m as i64)), || format!("a = {a}, m = {m}"));
        let j = rng.gen_range(1..10i64);
        let r1 = &a - int(1);
        pascal.case(binomial(&a, j) == binomial(&r1, j) + binomial(&r1, j - 1), || format!("r = {a}, j = {j}"));
        let (lo, hi) = (rng.gen_range(-15..15i64), rng.gen_range(-15..15i64));
        let f = |t: i64| rat(t * t + 1, t.abs() + 2);
        orient.case((signed_sum(lo, hi, f) + signed_sum(hi, lo, f)).is_zero(), || format!("({lo}, {hi})"));
    }
    vec![step.finish(), pascal.finish(), orient.finish()]
}

fn pfaffian_engine(config: &VerifyConfig) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut agree = Recorder::new("pfaffian", "elimination-equals-definition");
    let mut square = Recorder::new("pfaffian", "pf-squared-equals-det");
    for t in 0..100 {
        let size = 2 * (t % 4 + 1);
        let m = random_skew(&mut rng, size);
        let pf = pfaffian(&m).expect("even size");
        let def = pf_by_definition(&m).expect("small size");
        agree.case(pf == def, || format!("size {size}: {pf} vs {def}"));
        square.case(&pf * &pf == m.determinant(), || format!("size {size}"));
    }
    vec![agree.finish(), square.finish()]
}

fn tilings(n: u32, x: u32, hole: HoleSpec) -> Option<Integer> {
    count_matchings(&build_region(RegionSpec::new(n, x, hole)).ok()?).ok()
}

fn counting_checks(config: &VerifyConfig) -> Vec<Check> {
    let max_n = config.max_n.min(3);
    let mut routes = Recorder::new("counting", "route-agreement");
    let mut lozenge = Recorder::new("counting", "lozenge-formula");
    for n in 1..=max_n {
        for x in 1..=3 {
            for k in 0..n {
                let closed = counting::count_gap_closed(n, k, x).ok().and_then(|v| counting::closed_as_integer(&v).ok());
                let pf = counting::count_gap_pfaffian(n, k, x).ok();
                let matchings = tilings(n, x, HoleSpec::Triangle2(k));
                let nilp = count_nilp(n, x, k).ok();
                let ok = closed.is_some() && closed == pf && pf == matchings && matchings == nilp;
                routes.case(ok, || format!("(n,x,k) = ({n},{x},{k}): {closed:?} {pf:?} {matchings:?} {nilp:?}"));
                let formula = counting::count_lozenge_closed(n, k, x).ok().and_then(|v| counting::closed_as_integer(&v).ok());
                let brute = tilings(n, x, HoleSpec::HorizontalLozenge(k));
                lozenge.case(formula.is_some() && formula == brute, || format!("({n},{x},{k}): {formula:?} {brute:?}"));
            }
        }
    }

    let mut qforms = Recorder::new("counting", "q-form-equivalence");
    for n in 1..=max_n {
        for x in -5..=5i64 {
            for i in 1..=2 * n {
                for j in 1..=2 * n {
                    let a = counting::q_entry(i, j, n, &int(x));
                    let b = counting::q_entry_sumform(i, j, n, x);
                    qforms.case(a == b, || format!("Q({i},{j}) n={n} x={x}"));
                }
            }
        }
    }

    let mut remark = Recorder::new("counting", "macmahon-specialization");
    for n in 1..=6 {
        for x in 1..=6 {
            let lhs = counting::count_gap_closed(n + 1, n, x - 1).ok();
            remark.case(lhs == Some(counting::macmahon(n, x)), || format!("n={n} x={x}"));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut symmetry = Recorder::new("counting", "det-reflection-symmetry");
    let mut vanish = Recorder::new("counting", "det-vanishing-loci");
    for n in 1..=max_n {
        for k in 0..n {
            let det = |x: &Rational| build_matrix(n, k, x).expect("valid hole").determinant();
            for _ in 0..5 {
                let x = random_rational(&mut rng);
                let mirror = int(-2 * n as i64) - &x;
                symmetry.case(det(&x) == det(&mirror), || format!("n={n} k={k} x={x}"));
            }
            for s in 1..(n - k) as i64 {
                vanish.case(det(&int(-s)).is_zero(), || format!("n={n} k={k} x=-{s}"));
            }
            for s in 1..n as i64 {
                vanish.case(det(&rat(-2 * s - 1, 2)).is_zero(), || format!("n={n} k={k} x=-{s}-1/2"));
            }
        }
    }

    let mut blocks = Recorder::new("counting", "block-factorization");
    for n in 2..=max_n {
        for k in 0..n {
            for s in 1..(n - k) {
                let (lhs, rhs) = gap_block_factorization(n, k, s);
                blocks.case(lhs == rhs, || format!("n={n} k={k} s={s}: {lhs} vs {rhs}"));
            }
        }
    }

    vec![routes.finish(), lozenge.finish(), qforms.finish(), remark.finish(), symmetry.finish(), vanish.finish(), blocks.finish()]
}

/// Both sides of the factorization of `Pf M_n(x) / (x+s)^s` at `x = -s`,
/// splitting off rows `2n-2s+1 ..= 2n`.
pub fn gap_block_factorization(n: u32, k: u32, s: u32) -> (Rational, Rational) {
    let size = 2 * n as usize;
    let block: Range<usize> = size - 2 * s as usize..size;
    let degree = 4 * size;
    block_factorization(
        |x| build_matrix(n, k, x).expect("valid hole").body,
        block,
        &int(-(s as i64)),
        degree * (n as usize + 1),
        degree,
    )
    .expect("rows divisible by x + s")
}

fn identities(config: &VerifyConfig) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut mw = Recorder::new("identities", "mehta-wang-determinant");
    for n in 1..=6 {
        for _ in 0..20 {
            let (a, b) = (random_rational(&mut rng), random_rational(&mut rng));
            mw.case(mehta_wang_lhs(&a, &b, n) == mehta_wang_rhs(&a, &b, n), || format!("n={n} a={a} b={b}"));
        }
    }
    let mut odd = Recorder::new("identities", "odd-order-vanishing");
    for n in [1, 3, 5] {
        for _ in 0..20 {
            let b = random_rational(&mut rng);
            odd.case(mehta_wang_lhs(&int(0), &b, n).is_zero(), || format!("n={n} b={b}"));
        }
    }
    let mut prop = Recorder::new("identities", "pochhammer-pfaffian");
    let mut recip = Recorder::new("identities", "reciprocal-pochhammer-pfaffian");
    for n in [2, 4, 6] {
        for _ in 0..10 {
            let b = random_rational(&mut rng);
            let (l, r) = prop9_pfaffian_identity(&b, n).expect("even size");
            prop.case(l == r, || format!("n={n} b={b}: {l} vs {r}"));
            match cor10_pfaffian_identity(&b, n) {
                Ok((l, r)) => recip.case(l == r, || format!("n={n} b={b}: {l} vs {r}")),
                Err(_) => continue,
            }
        }
    }
    vec![mw.finish(), odd.finish(), prop.finish(), recip.finish()]
}

fn analysis_checks() -> Vec<Check> {
    let q = QuadratureSpec::default();
    let mut forms = Recorder::new("analysis", "correlation-forms-agree");
    for xi in [0.5, 1.0, 2.0] {
        for k in (0..=50).step_by(5) {
            let one = analysis::omega_f(k, xi, &q);
            let two = analysis::omega_f_two_integral(k, xi, &q);
            let ok = match (&one, &two) {
                (Ok(a), Ok(b)) => ((a.log_value - b.log_value).exp_m1()).abs() < 1e-10,
                _ => false,
            };
            forms.case(ok, || format!("k={k} xi={xi}"));
        }
    }

    let mut lemma14 = Recorder::new("analysis", "integral-rate");
    let devs: Vec<f64> = [50u64, 100, 200]
        .iter()
        .map(|&k| match analysis::integral_i(1.0, k, &q) {
            Ok(v) => (v.value * (8.0 * k as f64 / std::f64::consts::PI).sqrt() - 1.0).abs(),
            Err(_) => f64::NAN,
        })
        .collect();
    lemma14.case(devs[2] < 0.05, || format!("deviation at k=200: {}", devs[2]));
    lemma14.case(devs[0] > devs[1] && devs[1] > devs[2], || format!("deviations {devs:?}"));

    let mut thm1 = Recorder::new("analysis", "inverse-distance-law");
    let ks = [32u64, 64, 128, 256];
    let d1: Vec<f64> = ks.iter().map(|&k| analysis::theorem1_check(k, &q).map_or(f64::NAN, |v| (v - 1.0).abs())).collect();
    thm1.case(d1[3] < 0.1, || format!("deviation at k=256: {}", d1[3]));
    thm1.case(d1.windows(2).all(|w| w[1] < w[0]), || format!("deviations {d1:?}"));

    let mut thm2 = Recorder::new("analysis", "ratio-law");
    let d2: Vec<f64> =
        [64u64, 128, 256].iter().map(|&k| analysis::theorem2_check(k, &q).map_or(f64::NAN, |v| (v + 1.0).abs())).collect();
    thm2.case(d2[2] < 0.1, || format!("deviation at k=256: {}", d2[2]));
    thm2.case(d2.windows(2).all(|w| w[1] < w[0]), || format!("deviations {d2:?}"));

    let mut expo = Recorder::new("analysis", "exponential-law");
    for xi in [0.5, 2.0] {
        let inc = match (analysis::omega_f(200, xi, &q), analysis::omega_f(201, xi, &q)) {
            (Ok(a), Ok(b)) => b.log_value - a.log_value,
            _ => f64::NAN,
        };
        let target = 4.0 * (2.0 / (1.0 + xi)).ln();
        expo.case(((inc - target) / target).abs() < 0.01, || format!("xi={xi}: {inc} vs {target}"));
    }

    let mut mono = Recorder::new("analysis", "hypergeometric-summand-decreasing");
    let (n, b) = (100i64, int(100));
    let mut prev: Option<Rational> = None;
    let mut f = Rational::from_integer(1.into());
    for l in 0..n {
        if let Some(p) = &prev {
            mono.case(&f < p, || format!("l = {l}"));
        }
        prev = Some(f.clone());
        let m = n - l - 1;
        f = f * int((2 * n - l) * m * m) * rat(2 * l + 1, 2) * (&b + int(l))
            / (rat(4 * n - 2 * l - 1, 2) * int((n - l) * (n - l) * (l + 1)) * (&b + int(l + 1)));
        if f.is_zero() {
            break;
        }
    }

    let mut lemma12 = Recorder::new("analysis", "hypergeometric-limit");
    let limit = analysis::lemma12_limit(1.0, 0, &q).unwrap_or(f64::NAN);
    let devs: Vec<f64> = [64u64, 256, 1024]
        .iter()
        .map(|&n| {
            let v = analysis::f5_4_partial(n, 0, &int(1)).map_or(f64::NAN, |s| to_f64(&s));
            (v / (n as f64).sqrt() - limit).abs()
        })
        .collect();
    lemma12.case(devs.windows(2).all(|w| w[1] < w[0]), || format!("deviations {devs:?}"));

    vec![forms.finish(), lemma14.finish(), thm1.finish(), thm2.finish(), expo.finish(), mono.finish(), lemma12.finish()]
}
