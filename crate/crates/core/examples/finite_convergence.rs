//! Exact finite-size ratios M(F minus gap)/M(F) at x = xi n, approaching
//! the correlation as n grows, plus the terminating 5F4 sum.
//!
//!     cargo run --release --example finite_convergence

use halfhex::analysis::{f5_4_partial, lemma12_limit, omega_f, QuadratureSpec};
use halfhex::counting::finite_ratio;
use halfhex::exactnum::{int, to_f64};
use halfhex::region::HoleSpec;

fn main() {
    let q = QuadratureSpec::default();
    for (xi, num, den) in [(1.0, 1, 1), (2.0, 2, 1), (0.5, 1, 2)] {
        for k in [0u32, 2] {
            let w = omega_f(k as u64, xi, &q).unwrap().value;
            println!("xi = {xi}, k = {k}: omega = {w:.12}");
            for n in [16u32, 64, 256] {
                let r = to_f64(&finite_ratio(n, k, n * num / den, HoleSpec::Triangle2(k)).unwrap());
                println!("  n = {n:>4}: ratio {r:.12}  n * rel.err {:.4}", n as f64 * (r / w - 1.0));
            }
        }
    }

    let limit = lemma12_limit(1.0, 0, &q).unwrap();
    println!("\n5F4 / sqrt(n) -> {limit:.12}");
    for n in [64u64, 256, 1024, 4096] {
        let v = to_f64(&f5_4_partial(n, 0, &int(1)).unwrap()) / (n as f64).sqrt();
        println!("  n = {n:>5}: {v:.12}  deviation {:.3e}", v - limit);
    }
}
