//! Concatenation, star, reversal and projection of one-way machines.

use mta::asyncalg::{async_closure, project_tape, ClosureOp};
use mta::zoo::{brute_force_language, zoo_build};

fn main() -> mta::Result<()> {
    let e = zoo_build("E")?;
    let g = zoo_build("G")?;
    let eg = async_closure(ClosureOp::Concat, &e, Some(&g))?;
    let star = async_closure(ClosureOp::Star, &eg, None)?;
    println!("(E G)* up to length 4:");
    for w in brute_force_language(&star, 4)? {
        println!("  {w}");
    }

    let b = zoo_build("B")?;
    let rev = async_closure(ClosureOp::Reverse, &b, None)?;
    println!("rev B up to length 2: {:?}", brute_force_language(&rev, 2)?.iter().map(ToString::to_string).collect::<Vec<_>>());

    let p = project_tape(&zoo_build("L_n2n")?, 0)?;
    println!("second component of L_n2n up to length 6: {:?}",
        brute_force_language(&p, 6)?.iter().map(ToString::to_string).collect::<Vec<_>>());
    Ok(())
}
