//! The limit laws at the symmetric point: the inverse-distance law, the
//! ratio law, D_k and the integral asymptotic.
//!
//!     cargo run --release --example asymptotics

use std::f64::consts::PI;

use halfhex::analysis::{d_sequence, integral_i, theorem1_check, theorem2_check, QuadratureSpec};
use halfhex::region::gap_distance;

fn main() {
    let q = QuadratureSpec::default();
    println!("{:>6} {:>10} {:>14} {:>14} {:>14} {:>14}", "k", "d", "4pi d omega", "k(ratio-1)", "D_k sqrt(2k/pi)", "I_1 sqrt(8k/pi)");
    let mut k = 1u64;
    while k <= 4096 {
        let t1 = theorem1_check(k, &q).unwrap();
        let t2 = theorem2_check(k, &q).unwrap();
        let d = d_sequence(k, &q).unwrap() * (2.0 * k as f64 / PI).sqrt();
        let i = integral_i(1.0, k, &q).unwrap().value * (8.0 * k as f64 / PI).sqrt();
        println!("{k:>6} {:>10.3} {t1:>14.10} {t2:>14.10} {d:>14.10} {i:>14.10}", gap_distance(k as u32));
        k *= 2;
    }
}
