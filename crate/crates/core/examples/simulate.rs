//! Runs the <a^n, a^2n> machine on a few inputs and prints an accepting run.

use mta::simulate::simulate;
use mta::zoo::zoo_build;
use mta::NWord;

fn main() -> mta::Result<()> {
    let m = zoo_build("L_n2n")?;
    for (x, y) in [("a", "aa"), ("aa", "aaa"), ("aaa", "aaaaaa")] {
        let w = NWord::from_strs(&[x, y]);
        let v = simulate(&m, &w)?;
        println!("{w}: {}", if v.accepted { "accept" } else { "reject" });
    }

    let v = simulate(&m, &NWord::from_strs(&["aa", "aaaa"]))?;
    for c in v.trace.unwrap() {
        println!("  {:<7} heads {:?}", c.state, c.heads);
    }
    Ok(())
}
