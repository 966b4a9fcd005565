//! Catalog of small witness languages, the PCP encoding, and the brute-force
//! language oracle.

use std::collections::BTreeSet;

use crate::automaton::MultiTapeAutomaton;
use crate::error::{Error, Result};
use crate::lanes::{default_tape_ids, from_taped_model, to_taped_model};
use crate::simulate::Simulator;
use crate::symbol::{Alphabet, NWord, Sym};
use crate::taped::TapedAutomaton;
use crate::words::enumerate_nwords;

/// Largest component length accepted by [`brute_force_language`].
pub const BRUTE_FORCE_MAX_LEN: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZooEntry {
    pub name: &'static str,
    pub language: &'static str,
    /// Whether the machine reads all tapes in lockstep.
    pub synchronous: bool,
    pub one_way: bool,
}

pub const CATALOG: &[ZooEntry] = &[
    ZooEntry { name: "L_n2n", language: "<a^n, a^2n>", synchronous: false, one_way: true },
    ZooEntry { name: "L_xx", language: "<x, x>, x in {a,b}*", synchronous: true, one_way: true },
    ZooEntry { name: "L_m", language: "<a^m b a^h, a^k b a^m>", synchronous: false, one_way: true },
    ZooEntry { name: "E", language: "{<a,a>, <b,b>}", synchronous: true, one_way: true },
    ZooEntry { name: "G", language: "{<c,c>}", synchronous: true, one_way: true },
    ZooEntry { name: "H", language: "{<a,e>, <b,e>}", synchronous: true, one_way: true },
    ZooEntry { name: "EstarGHstar", language: "<xcy, xc>, x,y in {a,b}*", synchronous: true, one_way: true },
    ZooEntry { name: "B", language: "<xa, e>, x in {a,b}*", synchronous: true, one_way: true },
    ZooEntry { name: "C", language: "<b^m, b^m>", synchronous: true, one_way: true },
    ZooEntry { name: "D", language: "<b^m c, b^m>", synchronous: true, one_way: true },
    ZooEntry { name: "L_rho", language: "<x, rev x>, x in {0,1}*", synchronous: false, one_way: false },
    ZooEntry { name: "universe", language: "all 2-words over {a,b}", synchronous: true, one_way: true },
    ZooEntry { name: "empty", language: "no 2-word over {a,b}", synchronous: true, one_way: true },
    ZooEntry { name: "lag1_xx", language: "<x, x>, tape 1 read up to 1 ahead", synchronous: false, one_way: true },
    ZooEntry { name: "lag2_xx", language: "<x, x>, tape 1 read up to 2 ahead", synchronous: false, one_way: true },
];

fn alphabet(s: &str) -> Alphabet {
    Alphabet::from_str_chars(s).expect("catalog alphabet")
}

fn letters(x: &[char]) -> String {
    x.iter().collect()
}

pub fn zoo_entry(name: &str) -> Result<&'static ZooEntry> {
    CATALOG
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

/// Builds a catalog machine as a two-tape automaton. `lag{s}_xx` accepts any
/// lag `s` from 1 to 9.
pub fn zoo_build(name: &str) -> Result<MultiTapeAutomaton> {
    use Sym::*;
    let l = Letter;
    let m = match name {
        "L_n2n" => {
            let a = l('a');
            let mut m = MultiTapeAutomaton::new(alphabet("a"), 2, "init");
            m.add_transition("init", vec![Start, Start], "read2n", vec![1, 1]);
            m.add_transition("read2n", vec![a, a], "readn", vec![0, 1]);
            m.add_transition("readn", vec![a, a], "read2n", vec![1, 1]);
            m.add_transition("read2n", vec![End, End], "done", vec![0, 0]);
            m.set_accepting("done");
            m
        }
        "L_xx" => {
            let mut m = lockstep("ab", &[('a', 'a'), ('b', 'b')]);
            m.add_transition("p", vec![End, End], "f", vec![0, 0]);
            m.set_accepting("f");
            m
        }
        "C" => {
            let mut m = lockstep("ab", &[('b', 'b')]);
            m.add_transition("p", vec![End, End], "f", vec![0, 0]);
            m.set_accepting("f");
            m
        }
        "L_m" => from_taped_model(&zoo_taped(name)?),
        "EstarGHstar" => {
            let mut m = lockstep("abc", &[('a', 'a'), ('b', 'b')]);
            m.add_transition("p", vec![l('c'), l('c')], "r", vec![1, 1]);
            m.add_transition("r", vec![l('a'), End], "r", vec![1, 0]);
            m.add_transition("r", vec![l('b'), End], "r", vec![1, 0]);
            m.add_transition("r", vec![End, End], "f", vec![0, 0]);
            m.set_accepting("f");
            m
        }
        "E" | "G" | "H" => {
            let pairs: &[(char, Sym)] = match name {
                "E" => &[('a', l('a')), ('b', l('b'))],
                "G" => &[('c', l('c'))],
                _ => &[('a', End), ('b', End)],
            };
            let mut m = MultiTapeAutomaton::new(alphabet("abc"), 2, "s");
            m.add_transition("s", vec![Start, Start], "p", vec![1, 1]);
            for &(c, y) in pairs {
                let d = if y == End { 0 } else { 1 };
                m.add_transition("p", vec![l(c), y], "r", vec![1, d]);
            }
            m.add_transition("r", vec![End, End], "f", vec![0, 0]);
            m.set_accepting("f");
            m
        }
        "B" => {
            let mut m = MultiTapeAutomaton::new(alphabet("ab"), 2, "s");
            m.add_transition("s", vec![Start, Start], "p", vec![1, 1]);
            m.add_transition("p", vec![l('a'), End], "p", vec![1, 0]);
            m.add_transition("p", vec![l('b'), End], "p", vec![1, 0]);
            m.add_transition("p", vec![l('a'), End], "r", vec![1, 0]);
            m.add_transition("r", vec![End, End], "f", vec![0, 0]);
            m.set_accepting("f");
            m
        }
        "D" => {
            let mut m = lockstep("bc", &[('b', 'b')]);
            m.add_transition("p", vec![l('c'), End], "r", vec![1, 0]);
            m.add_transition("r", vec![End, End], "f", vec![0, 0]);
            m.set_accepting("f");
            m
        }
        "L_rho" => {
            // tape 1 runs to its end, walks back comparing against tape 2,
            // then returns to its end unchecked
            let mut m = MultiTapeAutomaton::new(alphabet("01"), 2, "s");
            m.add_transition("s", vec![Start, Start], "fwd", vec![1, 1]);
            let ys = [l('0'), l('1'), End];
            for c in ['0', '1'] {
                for &y in &ys {
                    m.add_transition("fwd", vec![l(c), y], "fwd", vec![1, 0]);
                }
                m.add_transition("back", vec![l(c), l(c)], "back", vec![-1, 1]);
                m.add_transition("ret", vec![l(c), End], "ret", vec![1, 0]);
            }
            for &y in &ys {
                m.add_transition("fwd", vec![End, y], "back", vec![-1, 0]);
            }
            m.add_transition("back", vec![Start, End], "ret", vec![1, 0]);
            m.add_transition("ret", vec![End, End], "f", vec![0, 0]);
            m.set_accepting("f");
            m
        }
        "universe" => {
            let mut m = MultiTapeAutomaton::new(alphabet("ab"), 2, "s");
            m.add_transition("s", vec![Start, Start], "p", vec![1, 1]);
            let ext = m.alphabet().extended();
            for &x in &ext {
                for &y in &ext {
                    if x == End && y == End {
                        m.add_transition("p", vec![x, y], "f", vec![0, 0]);
                    } else {
                        let mv = |s: Sym| if s == End { 0 } else { 1 };
                        m.add_transition("p", vec![x, y], "p", vec![mv(x), mv(y)]);
                    }
                }
            }
            m.set_accepting("f");
            m
        }
        "empty" => MultiTapeAutomaton::new(alphabet("ab"), 2, "s"),
        _ => match lag_of(name) {
            Some(s) => lag_xx(s)?,
            None => return Err(Error::UnknownFixture(name.to_string())),
        },
    };
    Ok(m)
}

fn lag_of(name: &str) -> Option<&str> {
    name.strip_prefix("lag")?.strip_suffix("_xx")
}

/// `s > (>,>) -> p`, plus a lockstep loop on `p` for each column.
fn lockstep(sigma: &str, cols: &[(char, char)]) -> MultiTapeAutomaton {
    let mut m = MultiTapeAutomaton::new(alphabet(sigma), 2, "s");
    m.add_transition("s", vec![Sym::Start, Sym::Start], "p", vec![1, 1]);
    for &(x, y) in cols {
        m.add_transition("p", vec![Sym::Letter(x), Sym::Letter(y)], "p", vec![1, 1]);
    }
    m
}

/// Deterministic equality machine whose first head runs up to `s` cells ahead
/// of the second. State `w<buf>` remembers the letters read on tape 1 and not
/// yet matched; `e<buf>` drains them once tape 1 is exhausted.
fn lag_xx(s: &str) -> Result<MultiTapeAutomaton> {
    use Sym::*;
    let s: usize = match s.parse() {
        Ok(v) if (1..=9).contains(&v) => v,
        _ => return Err(Error::Param(format!("lag must be 1..9, got {s:?}"))),
    };
    let sigma = ['a', 'b'];
    let mut m = MultiTapeAutomaton::new(alphabet("ab"), 2, "s");
    m.add_transition("s", vec![Start, Start], "w", vec![1, 1]);
    let mut bufs: Vec<String> = vec![String::new()];
    let mut i = 0;
    while i < bufs.len() {
        let buf = bufs[i].clone();
        i += 1;
        let w = format!("w{buf}");
        let head = buf.chars().next();
        match head {
            None => {
                m.add_transition(w.clone(), vec![End, End], "f", vec![0, 0]);
            }
            Some(h) => {
                let rest = &buf[1..];
                m.add_transition(w.clone(), vec![End, Letter(h)], format!("e{rest}"), vec![0, 1]);
            }
        }
        if buf.len() < s {
            for c in sigma {
                let ys: Vec<Sym> = match head {
                    Some(h) => vec![Letter(h)],
                    None => sigma.iter().map(|&y| Letter(y)).chain([End]).collect(),
                };
                let next = format!("{buf}{c}");
                for y in ys {
                    m.add_transition(w.clone(), vec![Letter(c), y], format!("w{next}"), vec![1, 0]);
                }
                bufs.push(next);
            }
        } else {
            let h = head.unwrap();
            for c in sigma {
                let next = format!("{}{c}", &buf[1..]);
                m.add_transition(w.clone(), vec![Letter(c), Letter(h)], format!("w{next}"), vec![1, 1]);
            }
        }
    }
    // drain states
    let drains: BTreeSet<String> = m
        .states()
        .iter()
        .filter_map(|q| q.strip_prefix('e').map(str::to_string))
        .collect();
    for buf in drains {
        let e = format!("e{buf}");
        match buf.chars().next() {
            None => m.add_transition(e, vec![End, End], "f", vec![0, 0]),
            Some(h) => m.add_transition(e, vec![End, Letter(h)], format!("e{}", &buf[1..]), vec![0, 1]),
        }
    }
    m.set_accepting("f");
    Ok(m)
}

/// Taped form of a one-way catalog machine. `L_xx`, `L_m` and `EstarGHstar`
/// are written by hand, the rest are converted.
pub fn zoo_taped(name: &str) -> Result<TapedAutomaton> {
    let l = Sym::Letter;
    let tapes = default_tape_ids(2);
    match name {
        "L_xx" => {
            let mut t = TapedAutomaton::new(alphabet("ab"), tapes);
            t.add_state("r0", "t1")?;
            t.add_state("ra", "t2")?;
            t.add_state("rb", "t2")?;
            t.add_transition("r0", l('a'), "ra")?;
            t.add_transition("r0", l('b'), "rb")?;
            t.add_transition("ra", l('a'), "r0")?;
            t.add_transition("rb", l('b'), "r0")?;
            t.set_initial("r0")?;
            t.set_accepting("r0")?;
            Ok(t)
        }
        "L_m" => {
            // a^k b on tape 2, then a^m on both alternately, then the rest
            let mut t = TapedAutomaton::new(alphabet("ab"), tapes);
            for (q, tape) in [("q0", "t2"), ("q1", "t1"), ("q2", "t2"), ("q3", "t2"), ("q4", "t1")] {
                t.add_state(q, tape)?;
            }
            t.add_transition("q0", l('a'), "q0")?;
            t.add_transition("q0", l('b'), "q1")?;
            t.add_transition("q1", l('a'), "q2")?;
            t.add_transition("q2", l('a'), "q1")?;
            t.add_transition("q1", l('b'), "q3")?;
            t.add_transition("q3", Sym::End, "q4")?;
            t.add_transition("q4", l('a'), "q4")?;
            t.set_initial("q0")?;
            t.set_accepting("q4")?;
            Ok(t)
        }
        "EstarGHstar" => {
            let mut t = TapedAutomaton::new(alphabet("abc"), tapes);
            for (q, tape) in [("x", "t1"), ("ya", "t2"), ("yb", "t2"), ("yc", "t2"), ("h", "t1")] {
                t.add_state(q, tape)?;
            }
            for c in ['a', 'b', 'c'] {
                t.add_transition("x", l(c), &format!("y{c}"))?;
            }
            t.add_transition("ya", l('a'), "x")?;
            t.add_transition("yb", l('b'), "x")?;
            t.add_transition("yc", l('c'), "h")?;
            t.add_transition("h", l('a'), "h")?;
            t.add_transition("h", l('b'), "h")?;
            t.set_initial("x")?;
            t.set_accepting("h")?;
            Ok(t)
        }
        _ => {
            let m = zoo_build(name)?;
            if !m.is_one_way() {
                return Err(Error::NotOneWay);
            }
            to_taped_model(&m, &tapes)
        }
    }
}

/// One-tape machine for `c*` on the given tape.
pub fn star_on_tape(sigma: &Alphabet, c: char, tape: &str) -> Result<TapedAutomaton> {
    let mut t = TapedAutomaton::new(sigma.clone(), [tape]);
    t.add_state("s", tape)?;
    t.add_transition("s", Sym::Letter(c), "s")?;
    t.set_initial("s")?;
    t.set_accepting("s")?;
    Ok(t)
}

/// Set-definition membership for a catalog language.
pub fn zoo_member(name: &str, x: &NWord) -> Result<bool> {
    if lag_of(name).is_none() {
        zoo_entry(name)?;
    }
    if x.arity() != 2 {
        return Ok(false);
    }
    let (u, v) = (letters(x.component(0)), letters(x.component(1)));
    let ab = |w: &str| w.chars().all(|c| c == 'a' || c == 'b');
    let only = |w: &str, c: char| w.chars().all(|d| d == c);
    Ok(match name {
        "L_n2n" => only(&u, 'a') && only(&v, 'a') && v.len() == 2 * u.len(),
        "L_xx" => ab(&u) && u == v,
        "L_m" => match (split_b(&u), split_b(&v)) {
            (Some((m, _)), Some((_, m2))) => m == m2,
            _ => false,
        },
        "E" => (u == "a" || u == "b") && u == v,
        "G" => u == "c" && v == "c",
        "H" => (u == "a" || u == "b") && v.is_empty(),
        "EstarGHstar" => match u.find('c') {
            Some(i) => {
                let (x, y) = (&u[..i], &u[i + 1..]);
                ab(x) && ab(y) && v == format!("{x}c")
            }
            None => false,
        },
        "B" => ab(&u) && u.ends_with('a') && v.is_empty(),
        "C" => only(&u, 'b') && u == v,
        "D" => u.strip_suffix('c').is_some_and(|p| only(p, 'b') && p == v),
        "L_rho" => {
            u.chars().all(|c| c == '0' || c == '1') && u.chars().rev().eq(v.chars())
        }
        "universe" => ab(&u) && ab(&v),
        "empty" => false,
        _ => ab(&u) && u == v,
    })
}

/// `a^m b a^h` as `(m, h)`.
fn split_b(w: &str) -> Option<(usize, usize)> {
    let (l, r) = w.split_once('b')?;
    (l.chars().all(|c| c == 'a') && r.chars().all(|c| c == 'a')).then_some((l.len(), r.len()))
}

/// Every n-word with components up to `max_len` accepted by `a`.
pub fn brute_force_language(a: &MultiTapeAutomaton, max_len: usize) -> Result<BTreeSet<NWord>> {
    if max_len > BRUTE_FORCE_MAX_LEN {
        return Err(Error::Bound(format!(
            "brute force is limited to length {BRUTE_FORCE_MAX_LEN}, got {max_len}"
        )));
    }
    let sim = Simulator::new(a);
    let mut out = BTreeSet::new();
    for x in enumerate_nwords(a.alphabet(), a.tapes(), max_len) {
        if sim.accepts(&x)? {
            out.insert(x);
        }
    }
    Ok(out)
}

/// Encodes a PCP instance as two taped automata over tapes `t1` (words) and
/// `t2` (indices written as digits `1..=9`). The first accepts the nonempty
/// concatenations of `<x_i, i>`, the second those of `<y_i, i>`; they share
/// an accepted 2-word iff the instance has a solution.
pub fn pcp_encode(pairs: &[(String, String)]) -> Result<(TapedAutomaton, TapedAutomaton)> {
    if pairs.is_empty() {
        return Err(Error::Param("a PCP instance needs at least one pair".into()));
    }
    if pairs.len() > 9 {
        return Err(Error::Param(format!(
            "at most 9 pairs fit single-digit indices, got {}",
            pairs.len()
        )));
    }
    let mut chars: BTreeSet<char> = BTreeSet::new();
    for (x, y) in pairs {
        for c in x.chars().chain(y.chars()) {
            if c.is_ascii_digit() {
                return Err(Error::Param(format!("digit {c:?} is reserved for indices")));
            }
            chars.insert(c);
        }
    }
    for i in 1..=pairs.len() {
        chars.insert(char::from_digit(i as u32, 10).unwrap());
    }
    let sigma = Alphabet::new(chars)?;
    let side = |pick: fn(&(String, String)) -> &String| -> Result<TapedAutomaton> {
        let mut t = TapedAutomaton::new(sigma.clone(), default_tape_ids(2));
        t.add_state("s", "t2")?;
        t.add_state("h", "t2")?;
        t.set_initial("s")?;
        t.set_accepting("h")?;
        for (i, pair) in pairs.iter().enumerate() {
            let word: Vec<char> = pick(pair).chars().collect();
            let digit = Sym::Letter(char::from_digit(i as u32 + 1, 10).unwrap());
            let chain: Vec<String> = (0..word.len()).map(|j| format!("w{}_{j}", i + 1)).collect();
            for q in &chain {
                t.add_state(q.clone(), "t1")?;
            }
            let first = chain.first().map_or("h", String::as_str);
            t.add_transition("s", digit, first)?;
            t.add_transition("h", digit, first)?;
            for (j, &c) in word.iter().enumerate() {
                let to = chain.get(j + 1).map_or("h", String::as_str);
                t.add_transition(&chain[j], Sym::Letter(c), to)?;
            }
        }
        Ok(t)
    };
    Ok((side(|p| &p.0)?, side(|p| &p.1)?))
}

/// Index sequences of length 1 to `max_len` (shortest first, then
/// lexicographic) solving the PCP instance; the first one found.
pub fn pcp_solve_bounded(pairs: &[(String, String)], max_len: usize) -> Option<Vec<usize>> {
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for seq in &layer {
            for i in 0..pairs.len() {
                let mut s = seq.clone();
                s.push(i);
                let x: String = s.iter().map(|&k| pairs[k].0.as_str()).collect();
                let y: String = s.iter().map(|&k| pairs[k].1.as_str()).collect();
                if x == y {
                    return Some(s.into_iter().map(|k| k + 1).collect());
                }
                if x.starts_with(&y) || y.starts_with(&x) {
                    next.push(s);
                }
            }
        }
        layer = next;
    }
    None
}
