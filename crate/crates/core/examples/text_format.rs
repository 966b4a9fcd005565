//! Reading and writing `.mta` documents.

use mta::format::{parse_automaton, serialize_automaton, Machine};
use mta::zoo::zoo_taped;

const DOC: &str = "
model: def1
tapes: 2
alphabet: a b
states: s p f
initial: s
accepting: f
s (>,>) -> p (1,1)
p (a,a) -> p (1,1)
p (b,b) -> p (1,1)
p (<,<) -> f (0,0)   # both tapes end together
";

fn main() -> mta::Result<()> {
    let m = parse_automaton(DOC)?;
    print!("{}", serialize_automaton(&m));
    println!();
    print!("{}", serialize_automaton(&Machine::Taped(zoo_taped("L_xx")?)));

    let broken = DOC.replace("p (b,b)", "p (b,c)");
    println!("\n{}", parse_automaton(&broken).unwrap_err());
    Ok(())
}
