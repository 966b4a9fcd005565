//! Bounded intersection of two one-way machines sharing both tapes. The
//! exact intersection <a^m b a^m, a^m b a^m> is not one-way recognizable, so
//! the construction never completes; what it keeps is still sound.

use mta::intersect::{intersect, intersect_report};
use mta::lanes::LaneNfa;
use mta::words::enumerate_nwords;
use mta::zoo::zoo_taped;

fn main() -> mta::Result<()> {
    let a = zoo_taped("L_m")?;
    let b = zoo_taped("L_xx")?;
    let r = intersect(&a, &b, 1000, 8)?;
    print!("{}", intersect_report(&r));

    let lanes = LaneNfa::from_taped(&r.automaton);
    println!("accepted up to length 5:");
    for w in enumerate_nwords(a.alphabet(), 2, 5) {
        if lanes.accepts(&w) {
            println!("  {w}");
        }
    }
    Ok(())
}
