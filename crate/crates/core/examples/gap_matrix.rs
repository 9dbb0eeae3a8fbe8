//! Assembles M_n(x), evaluates its Pfaffian, and shows the symmetry and
//! zeros of its determinant.
//!
//!     cargo run --release --example gap_matrix

use halfhex::counting::{build_matrix, count_gap_closed_at, negated_pfaffian_at};
use halfhex::exactnum::{int, rat};
use halfhex::verify::gap_block_factorization;

fn main() {
    let m = build_matrix(1, 0, &int(1)).unwrap();
    println!("M_1(1):");
    for row in m.body.rows() {
        println!("  {}", row.iter().map(|v| format!("{v:>4}")).collect::<Vec<_>>().join(" "));
    }
    println!("Pf = {}, det = {}", m.pfaffian(), m.determinant());

    let (n, k) = (3, 1);
    println!("\nn = {n}, k = {k}");
    for x in [rat(1, 3), rat(-5, 2), rat(7, 1)] {
        let mirror = int(-2 * n as i64) - &x;
        let d = build_matrix(n, k, &x).unwrap().determinant();
        let dm = build_matrix(n, k, &mirror).unwrap().determinant();
        println!("det M({x}) = {d}, det M({mirror}) = {dm}");
        println!("  -Pf = {}, closed form = {}", negated_pfaffian_at(n, k, &x).unwrap(), count_gap_closed_at(n, k, &x));
    }
    for s in 1..n as i64 {
        let at = rat(-2 * s - 1, 2);
        println!("det M({at}) = {}", build_matrix(n, k, &at).unwrap().determinant());
    }
    let d = build_matrix(n, k, &int(-1)).unwrap().determinant();
    println!("det M(-1) = {d}");

    let (lhs, rhs) = gap_block_factorization(3, 0, 2);
    println!("\nblock split at x = -2 for n = 3, k = 0: {lhs} = {rhs}");
}
