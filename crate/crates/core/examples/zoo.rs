//! The catalog, with a few members of each language.

use mta::zoo::{brute_force_language, zoo_build, CATALOG};

fn main() -> mta::Result<()> {
    for e in CATALOG {
        let m = zoo_build(e.name)?;
        let members: Vec<String> = brute_force_language(&m, 3)?.iter().take(4).map(ToString::to_string).collect();
        println!("{:<12} {:<34} {}", e.name, e.language, members.join(" "));
    }
    Ok(())
}
