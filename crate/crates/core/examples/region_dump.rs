//! Builds a region, prints its cell list and the path endpoints, and reads
//! the list back.
//!
//!     cargo run --example region_dump -- 2 1 0

use halfhex::region::{build_region, nilp_endpoints, CellList, HoleSpec, Orientation, RegionSpec};

fn main() {
    let args: Vec<u32> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (n, x, k) = match args.as_slice() {
        [n, x, k] => (*n, *x, *k),
        [] => (2, 1, 0),
        _ => panic!("usage: region_dump N X K"),
    };
    let spec = RegionSpec::new(n, x, HoleSpec::Triangle2(k));
    let g = build_region(spec).unwrap_or_else(|e| panic!("{e}"));
    println!(
        "F({n},{x}) minus gap at k = {k}: {} cells ({} left, {} right), {} free",
        g.len(),
        g.count(Orientation::Left),
        g.count(Orientation::Right),
        g.free_count()
    );
    let text = g.to_cell_list();
    print!("{text}");
    let back: CellList = text.parse().unwrap();
    assert_eq!(back.0.len(), g.len());

    let ends = nilp_endpoints(n, x, k).unwrap();
    let fmt = |p: &halfhex::region::LatticePoint| format!("({}, {})", p.x, p.y);
    println!("starts:  {}", ends.starts.iter().map(fmt).collect::<Vec<_>>().join(" "));
    println!("forced:  {} {}", fmt(&ends.forced_targets[0]), fmt(&ends.forced_targets[1]));
    println!("free on x = -1, y = 1..={}", ends.free_targets.len());
}
