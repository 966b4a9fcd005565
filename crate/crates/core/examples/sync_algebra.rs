//! Boolean algebra and decisions on synchronous machines.

use mta::sync::{decide, sync_boolean, sync_regular, BoolOp, DecisionKind, RegularOp};
use mta::zoo::{brute_force_language, zoo_build};

fn main() -> mta::Result<()> {
    let lxx = zoo_build("L_xx")?;
    let univ = zoo_build("universe")?;

    let not_lxx = sync_boolean(BoolOp::Complement, &lxx, None)?;
    let both = sync_boolean(BoolOp::Union, &lxx, Some(&not_lxx))?;
    let d = decide(DecisionKind::Equiv, &both, Some(&univ))?;
    println!("L_xx or not L_xx == universe: {}", d.holds);

    let d = decide(DecisionKind::Subset, &univ, Some(&lxx))?;
    println!("universe subset of L_xx: {} (counterexample {})", d.holds, d.witness.unwrap());

    // projection of the equality relation is everything on one tape
    let p = sync_regular(RegularOp::Project(1), &lxx, None)?;
    println!("project tape 2 away, up to length 2:");
    for w in brute_force_language(&p, 2)? {
        println!("  {w}");
    }
    Ok(())
}
