//! Evaluates the Pochhammer determinant and Pfaffian identities at a few
//! rational parameters.
//!
//!     cargo run --example pfaffian_identities

use halfhex::exactnum::{int, rat};
use halfhex::pfaffian::{
    cor10_pfaffian_identity, mehta_wang_lhs, mehta_wang_rhs, pf_by_definition, pfaffian, prop9_pfaffian_identity,
    SkewMatrix,
};

fn main() {
    let (a, b) = (rat(3, 2), rat(-7, 3));
    for n in 1..=5 {
        let l = mehta_wang_lhs(&a, &b, n);
        let r = mehta_wang_rhs(&a, &b, n);
        println!("det n={n}: {l} {} {r}", if l == r { "=" } else { "!=" });
    }
    for n in [1, 3, 5] {
        println!("det at a = 0, n = {n}: {}", mehta_wang_lhs(&int(0), &b, n));
    }
    for n in [2, 4, 6] {
        let (l, r) = prop9_pfaffian_identity(&rat(5, 4), n).unwrap();
        println!("Pf((j-i)(b)_(i+j)) n={n}: {l} = {r}");
        let (l, r) = cor10_pfaffian_identity(&rat(5, 4), n).unwrap();
        println!("Pf((j-i)/(b)_(i+j)) n={n}: {l} = {r}");
    }

    let m = SkewMatrix::from_upper(6, |i, j| int((i * 7 + j * 3) as i64 % 5 - 2));
    println!("\nPf by elimination {}, by matchings {}", pfaffian(&m).unwrap(), pf_by_definition(&m).unwrap());
}
