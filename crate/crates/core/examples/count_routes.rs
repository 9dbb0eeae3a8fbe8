//! Counts tilings of F(n, x) minus the triangular gap by every available
//! route and prints them side by side.
//!
//!     cargo run --release --example count_routes

use halfhex::counting::{closed_as_integer, count_gap_closed, count_gap_pfaffian, count_lozenge_closed, macmahon};
use halfhex::oracle::{count_matchings, count_nilp};
use halfhex::region::{build_region, HoleSpec, RegionSpec};

fn main() {
    println!("{:>2} {:>2} {:>2} {:>10} {:>10} {:>10} {:>10}", "n", "x", "k", "closed", "pfaffian", "matchings", "paths");
    for n in 1..=3 {
        for x in 1..=3 {
            for k in 0..n {
                let closed = closed_as_integer(&count_gap_closed(n, k, x).unwrap()).unwrap();
                let pf = count_gap_pfaffian(n, k, x).unwrap();
                let region = build_region(RegionSpec::new(n, x, HoleSpec::Triangle2(k))).unwrap();
                let m = count_matchings(&region).unwrap();
                let p = count_nilp(n, x, k).unwrap();
                println!("{n:>2} {x:>2} {k:>2} {closed:>10} {pf:>10} {m:>10} {p:>10}");
            }
        }
    }

    println!("\nhole-free and fixed-lozenge counts at n = 3, x = 2");
    println!("no hole: {}", macmahon(3, 2));
    for k in 0..3 {
        println!("lozenge at k = {k}: {}", count_lozenge_closed(3, k, 2).unwrap());
    }

    // The closed form has no size limit beyond its guard.
    let big = count_gap_closed(60, 10, 60).unwrap();
    println!("\nF(60, 60) minus gap at k = 10 has {} digits", big.to_string().len());
}
