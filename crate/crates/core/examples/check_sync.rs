//! The <a^n, a^2n> machine lets its heads drift apart without bound; the
//! checker returns a run that exceeds any given s.

use mta::synctransform::{check_synchronized, check_synchronized_det, head_spread};
use mta::zoo::zoo_build;

fn main() -> mta::Result<()> {
    let m = zoo_build("L_n2n")?;
    for s in 0..3 {
        let r = check_synchronized(&m, s)?;
        let w = r.witness.unwrap();
        let last = w.run.last().unwrap();
        println!("s={s}: input {}, final spread {}", w.input, head_spread(&w.input, &last.heads));
    }
    println!("least s: {:?}", check_synchronized_det(&m)?);
    println!("L_xx least s: {:?}", check_synchronized_det(&zoo_build("L_xx")?)?);
    Ok(())
}
