//! Post's correspondence problem as an intersection of two one-way machines.

use mta::asyncalg::taped_witness;
use mta::intersect::intersect;
use mta::zoo::{pcp_encode, pcp_solve_bounded};

fn main() -> mta::Result<()> {
    let instances: [&[(&str, &str)]; 3] = [&[("a", "a")], &[("ab", "a"), ("c", "bc")], &[("a", "b")]];
    for inst in instances {
        let pairs: Vec<(String, String)> = inst.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect();
        let (xs, ys) = pcp_encode(&pairs)?;
        let r = intersect(&xs, &ys, 5000, 6)?;
        println!(
            "{inst:?}: {} witness {:?}, index search {:?}",
            r.status,
            taped_witness(&r.automaton).map(|w| w.to_string()),
            pcp_solve_bounded(&pairs, 8)
        );
    }
    Ok(())
}
