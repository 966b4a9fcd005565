//! A machine whose first head runs ahead by up to two cells, turned into a
//! lockstep machine.

use mta::synctransform::{check_synchronized, check_synchronized_det, synchronize, synchronize_size_bound};
use mta::zoo::{brute_force_language, zoo_build};

fn main() -> mta::Result<()> {
    let m = zoo_build("lag2_xx")?;
    let s = check_synchronized_det(&m)?.expect("bounded delay");
    println!("least s: {s}");

    let out = synchronize(&m, s)?;
    println!(
        "states: {} -> {} (bound {})",
        m.states().len(),
        out.states().len(),
        synchronize_size_bound(m.states().len(), 2, 2, s)
    );
    println!("deterministic: {}", out.is_deterministic());
    println!("0-synchronized: {}", check_synchronized(&out, 0)?.synchronized);
    println!("same language to length 4: {}", brute_force_language(&m, 4)? == brute_force_language(&out, 4)?);
    Ok(())
}
