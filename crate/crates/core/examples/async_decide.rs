//! Emptiness and finiteness of one-way machines.

use mta::asyncalg::{decide_empty_async, decide_finite_async};
use mta::simulate::accepts;
use mta::zoo::{zoo_build, CATALOG};

fn main() -> mta::Result<()> {
    for e in CATALOG.iter().filter(|e| e.one_way) {
        let m = zoo_build(e.name)?;
        let d = decide_empty_async(&m)?;
        let finite = decide_finite_async(&m)?;
        match d.witness {
            Some(w) => println!("{:<12} member {w} (replays: {}), finite: {finite}", e.name, accepts(&m, &w)?),
            None => println!("{:<12} empty", e.name),
        }
    }
    Ok(())
}
