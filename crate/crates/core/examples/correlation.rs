//! Tabulates omega_f(k; xi) against its large-k asymptotic.
//!
//!     cargo run --release --example correlation

use halfhex::analysis::{ln_omega_asymptotic, omega_f, QuadratureSpec};

fn main() {
    let q = QuadratureSpec::default();
    for xi in [0.5, 1.0, 2.0] {
        println!("xi = {xi}");
        println!("{:>6} {:>24} {:>12} {:>12}", "k", "log omega", "err", "vs asym");
        for k in [1u64, 4, 16, 64, 256, 1024] {
            let w = omega_f(k, xi, &q).unwrap();
            let ratio = (w.log_value - ln_omega_asymptotic(k, xi)).exp();
            println!("{k:>6} {:>24.15} {:>12.2e} {:>12.8}", w.log_value, w.rel_err_estimate, ratio);
        }
    }
}
