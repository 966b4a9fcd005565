//! Line-oriented text format for automata (`.mta` files).
//!
//! ```text
//! model: def1
//! tapes: 2
//! alphabet: a
//! one-way: yes
//! states: init read2n readn done
//! initial: init
//! accepting: done
//! init (>,>) -> read2n (1,1)
//! read2n (a,a) -> readn (0,1)
//! ```
//!
//! Taped machines use `model: taped`, list tape ids after `tapes:`, assign
//! states with `tape-of: q=t1 ...`, and write transitions as `q a -> p`.
//! A lone `#` starts a comment; `#q0` is an ordinary state id.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::automaton::{MultiTapeAutomaton, StateId};
use crate::error::{Error, Result};
use crate::symbol::{Alphabet, Sym};
use crate::taped::TapedAutomaton;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Machine {
    Def1(MultiTapeAutomaton),
    Taped(TapedAutomaton),
}

impl From<MultiTapeAutomaton> for Machine {
    fn from(m: MultiTapeAutomaton) -> Self {
        Machine::Def1(m)
    }
}

impl From<TapedAutomaton> for Machine {
    fn from(m: TapedAutomaton) -> Self {
        Machine::Taped(m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Token {
    text: String,
    line: usize,
    column: usize,
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Syntax {
        line,
        column,
        message: message.into(),
    })
}

fn at<T>(t: &Token, message: impl Into<String>) -> Result<T> {
    err(t.line, t.column, message)
}

/// Splits a line into words and the punctuation `( ) ,`. A word `#` ends the
/// line.
fn tokenize(line: &str, lineno: usize) -> Vec<Token> {
    let mut out: Vec<Token> = Vec::new();
    let mut cur: Option<Token> = None;
    for (i, c) in line.chars().enumerate() {
        let col = i + 1;
        if c.is_whitespace() || matches!(c, '(' | ')' | ',') {
            if let Some(t) = cur.take() {
                if t.text == "#" {
                    return out;
                }
                out.push(t);
            }
            if !c.is_whitespace() {
                out.push(Token {
                    text: c.to_string(),
                    line: lineno,
                    column: col,
                });
            }
        } else {
            cur.get_or_insert_with(|| Token {
                text: String::new(),
                line: lineno,
                column: col,
            })
            .text
            .push(c);
        }
    }
    if let Some(t) = cur {
        if t.text != "#" {
            out.push(t);
        }
    }
    out
}

const KEYS: &[&str] = &["model", "tapes", "alphabet", "one-way", "states", "initial", "accepting", "tape-of"];

struct Doc {
    /// `(key, key token, values)` in file order.
    headers: Vec<(String, Token, Vec<Token>)>,
    transitions: Vec<Vec<Token>>,
}

fn split_doc(text: &str) -> Result<Doc> {
    let mut doc = Doc {
        headers: Vec::new(),
        transitions: Vec::new(),
    };
    for (i, line) in text.lines().enumerate() {
        let toks = tokenize(line, i + 1);
        let Some(first) = toks.first() else { continue };
        match first.text.strip_suffix(':') {
            Some(key) if KEYS.contains(&key) => {
                doc.headers.push((key.to_string(), first.clone(), toks[1..].to_vec()));
            }
            Some(_) => return at(first, format!("unknown header {:?}", first.text)),
            _ => doc.transitions.push(toks),
        }
    }
    if doc.headers.is_empty() && doc.transitions.is_empty() {
        return err(1, 1, "empty document");
    }
    Ok(doc)
}

impl Doc {
    fn single(&self, key: &str) -> Result<Option<(&Token, &[Token])>> {
        let mut found = None;
        for (k, t, v) in &self.headers {
            if k == key {
                if found.is_some() {
                    return at(t, format!("duplicate header {key:?}"));
                }
                found = Some((t, v.as_slice()));
            }
        }
        Ok(found)
    }

    fn required(&self, key: &str) -> Result<(&Token, &[Token])> {
        match self.single(key)? {
            Some(x) => Ok(x),
            None => err(1, 1, format!("missing header {key:?}")),
        }
    }

    /// Values of a header that may be repeated.
    fn all(&self, key: &str) -> Vec<&Token> {
        self.headers
            .iter()
            .filter(|(k, _, _)| k == key)
            .flat_map(|(_, _, v)| v)
            .collect()
    }
}

fn parse_alphabet(doc: &Doc) -> Result<Alphabet> {
    let (key, vals) = doc.required("alphabet")?;
    let mut chars = Vec::new();
    for t in vals {
        let mut it = t.text.chars();
        match (it.next(), it.next()) {
            (Some(c), None) => chars.push(c),
            _ => return at(t, "alphabet symbols are single characters"),
        }
    }
    Alphabet::new(chars).or_else(|e| at(vals.first().unwrap_or(key), e.to_string()))
}

fn valid_state(t: &Token) -> Result<()> {
    if t.text == "->" || t.text.contains('=') || t.text.ends_with(':') {
        return at(t, format!("{:?} is not a state id", t.text));
    }
    Ok(())
}

/// State declarations, rejecting duplicates.
fn parse_states(doc: &Doc) -> Result<BTreeSet<StateId>> {
    let mut states = BTreeSet::new();
    for t in doc.all("states") {
        valid_state(t)?;
        if !states.insert(t.text.clone()) {
            return at(t, format!("duplicate state declaration {:?}", t.text));
        }
    }
    Ok(states)
}

fn declared<'a>(states: &BTreeSet<StateId>, t: &'a Token) -> Result<&'a str> {
    if !states.contains(&t.text) {
        return at(t, format!("undeclared state {:?}", t.text));
    }
    Ok(&t.text)
}

fn parse_sym(alphabet: &Alphabet, t: &Token, allow_start: bool) -> Result<Sym> {
    let mut it = t.text.chars();
    let (Some(c), None) = (it.next(), it.next()) else {
        return at(t, format!("expected a symbol, found {:?}", t.text));
    };
    let s = Sym::from_char(c);
    match s {
        Sym::Start if !allow_start => at(t, "taped transitions cannot read the left marker"),
        Sym::Letter(c) if !alphabet.contains(c) => at(t, format!("symbol {c:?} is not in the alphabet")),
        _ => Ok(s),
    }
}

pub fn parse_automaton(text: &str) -> Result<Machine> {
    let doc = split_doc(text)?;
    let (key, model) = doc.required("model")?;
    match model {
        [m] if m.text == "def1" => parse_def1(&doc).map(Machine::Def1),
        [m] if m.text == "taped" => parse_taped(&doc).map(Machine::Taped),
        [m, ..] => at(m, format!("unknown model {:?}", m.text)),
        [] => at(key, "model needs a value (def1 or taped)"),
    }
}

/// `( a , b , ... )` starting at `toks[*i]`.
fn parse_tuple<'a>(toks: &'a [Token], i: &mut usize, anchor: &Token) -> Result<Vec<&'a Token>> {
    let open = toks.get(*i).ok_or(()).or_else(|_| at(anchor, "expected '('"))?;
    if open.text != "(" {
        return at(open, "expected '('");
    }
    *i += 1;
    let mut items = Vec::new();
    loop {
        let Some(t) = toks.get(*i) else {
            return at(anchor, "unterminated tuple");
        };
        if matches!(t.text.as_str(), "(" | ")" | ",") {
            return at(t, "expected a tuple item");
        }
        items.push(t);
        *i += 1;
        match toks.get(*i).map(|t| t.text.as_str()) {
            Some(",") => *i += 1,
            Some(")") => {
                *i += 1;
                return Ok(items);
            }
            Some(_) => return at(&toks[*i], "expected ',' or ')'"),
            None => return at(anchor, "unterminated tuple"),
        }
    }
}

fn parse_def1(doc: &Doc) -> Result<MultiTapeAutomaton> {
    let (key, tapes) = doc.required("tapes")?;
    let n: usize = match tapes {
        [t] => t.text.parse().or_else(|_| at(t, "tapes must be a positive count"))?,
        _ => return at(key, "tapes takes one count"),
    };
    if n == 0 {
        return at(&tapes[0], "tapes must be a positive count");
    }
    let alphabet = parse_alphabet(doc)?;
    let states = parse_states(doc)?;
    let (key, init) = doc.required("initial")?;
    let initial = match init {
        [t] => declared(&states, t)?,
        _ => return at(key, "exactly one initial state"),
    };
    let mut m = MultiTapeAutomaton::new(alphabet.clone(), n, initial);
    for q in &states {
        m.add_state(q.clone());
    }
    if let Some((_, acc)) = doc.single("accepting")? {
        for t in acc {
            m.set_accepting(declared(&states, t)?);
        }
    }
    if let Some((t, _)) = doc.single("tape-of")? {
        return at(t, "tape-of belongs to taped machines");
    }
    for toks in &doc.transitions {
        let head = &toks[0];
        let from = declared(&states, head)?;
        let mut i = 1;
        let reads = parse_tuple(toks, &mut i, head)?;
        match toks.get(i) {
            Some(t) if t.text == "->" => i += 1,
            Some(t) => return at(t, "expected '->'"),
            None => return at(head, "expected '->'"),
        }
        let to_tok = toks.get(i).ok_or(()).or_else(|_| at(head, "missing target state"))?;
        let to = declared(&states, to_tok)?;
        i += 1;
        let moves = parse_tuple(toks, &mut i, head)?;
        if let Some(t) = toks.get(i) {
            return at(t, "unexpected text after transition");
        }
        if reads.len() != n {
            return at(head, format!("expected {n} read symbols, found {}", reads.len()));
        }
        if moves.len() != n {
            return at(head, format!("expected {n} moves, found {}", moves.len()));
        }
        let reads = reads
            .iter()
            .map(|t| parse_sym(&alphabet, t, true))
            .collect::<Result<Vec<_>>>()?;
        let moves = moves
            .iter()
            .map(|t| match t.text.as_str() {
                "-1" => Ok(-1),
                "0" => Ok(0),
                "1" | "+1" => Ok(1),
                _ => at(t, format!("move must be -1, 0 or 1, found {:?}", t.text)),
            })
            .collect::<Result<Vec<i8>>>()?;
        m.add_transition(from, reads, to, moves);
    }
    if let Some((key, v)) = doc.single("one-way")? {
        match v {
            [t] if t.text == "yes" => m.declare_one_way(true),
            [t] if t.text == "no" => m.declare_one_way(false),
            _ => return at(key, "one-way takes yes or no"),
        }
    }
    if let Some(d) = m.validate().first() {
        return err(1, 1, d.to_string());
    }
    Ok(m)
}

fn parse_taped(doc: &Doc) -> Result<TapedAutomaton> {
    let (key, tapes) = doc.required("tapes")?;
    if tapes.is_empty() {
        return at(key, "list at least one tape id");
    }
    let mut ids: Vec<String> = Vec::new();
    for t in tapes {
        if ids.contains(&t.text) {
            return at(t, format!("duplicate tape {:?}", t.text));
        }
        ids.push(t.text.clone());
    }
    let alphabet = parse_alphabet(doc)?;
    let states = parse_states(doc)?;
    if let Some((t, _)) = doc.single("one-way")? {
        return at(t, "taped machines are always one-way");
    }
    let mut m = TapedAutomaton::new(alphabet.clone(), ids.clone());
    let mut assigned = BTreeSet::new();
    for t in doc.all("tape-of") {
        let Some((q, tape)) = t.text.split_once('=') else {
            return at(t, "expected state=tape");
        };
        if !states.contains(q) {
            return at(t, format!("undeclared state {q:?}"));
        }
        if !ids.iter().any(|x| x == tape) {
            return at(t, format!("unknown tape {tape:?}"));
        }
        if !assigned.insert(q.to_string()) {
            return at(t, format!("state {q:?} already has a tape"));
        }
        m.add_state(q, tape)?;
    }
    if let Some(q) = states.iter().find(|q| !assigned.contains(*q)) {
        return err(1, 1, format!("state {q:?} has no tape-of entry"));
    }
    for t in doc.all("initial") {
        m.set_initial(declared(&states, t)?)?;
    }
    for t in doc.all("accepting") {
        m.set_accepting(declared(&states, t)?)?;
    }
    for toks in &doc.transitions {
        let head = &toks[0];
        let from = declared(&states, head)?;
        let [_, s, arrow, to] = toks.as_slice() else {
            let t = toks.get(4).unwrap_or(toks.last().unwrap());
            return at(t, "expected `state symbol -> state`");
        };
        if arrow.text != "->" {
            return at(arrow, "expected '->'");
        }
        let sym = parse_sym(&alphabet, s, false)?;
        let to = declared(&states, to)?;
        m.add_transition(from, sym, to)?;
    }
    if let Some(d) = m.validate().first() {
        return err(1, 1, d.clone());
    }
    Ok(m)
}

fn join<'a, I: IntoIterator<Item = &'a StateId>>(it: I) -> String {
    it.into_iter().map(String::as_str).collect::<Vec<_>>().join(" ")
}

fn alphabet_line(a: &Alphabet) -> String {
    let s: Vec<String> = a.symbols().iter().map(char::to_string).collect();
    s.join(" ")
}

pub fn serialize_def1(m: &MultiTapeAutomaton) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "model: def1");
    let _ = writeln!(s, "tapes: {}", m.tapes());
    let _ = writeln!(s, "alphabet: {}", alphabet_line(m.alphabet()));
    let _ = writeln!(s, "one-way: {}", if m.declared_one_way() { "yes" } else { "no" });
    let _ = writeln!(s, "states: {}", join(m.states()));
    let _ = writeln!(s, "initial: {}", m.initial());
    let _ = writeln!(s, "accepting: {}", join(m.accepting()));
    for (q, reads, p, moves) in m.transitions() {
        let r: Vec<String> = reads.iter().map(|x| x.to_char().to_string()).collect();
        let d: Vec<String> = moves.iter().map(i8::to_string).collect();
        let _ = writeln!(s, "{q} ({}) -> {p} ({})", r.join(","), d.join(","));
    }
    s
}

pub fn serialize_taped(m: &TapedAutomaton) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "model: taped");
    let _ = writeln!(s, "tapes: {}", m.tapes().join(" "));
    let _ = writeln!(s, "alphabet: {}", alphabet_line(m.alphabet()));
    let _ = writeln!(s, "states: {}", join(m.states()));
    let _ = writeln!(s, "initial: {}", join(m.initial()));
    let _ = writeln!(s, "accepting: {}", join(m.accepting()));
    let tape_of: Vec<String> = m.tape_map().iter().map(|(q, t)| format!("{q}={t}")).collect();
    let _ = writeln!(s, "tape-of: {}", tape_of.join(" "));
    for (q, sym, p) in m.transitions() {
        let _ = writeln!(s, "{q} {} -> {p}", sym.to_char());
    }
    s
}

/// Canonical text: headers first, states and transitions sorted.
pub fn serialize_automaton(m: &Machine) -> String {
    match m {
        Machine::Def1(a) => serialize_def1(a),
        Machine::Taped(b) => serialize_taped(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{zoo_build, zoo_taped, CATALOG};

    const N2N: &str = "\
# <a^n, a^2n>
model: def1
tapes: 2
alphabet: a
states: init read2n readn done
initial: init
accepting: done
init (>,>) -> read2n (1,1)
read2n (a,a) -> readn (0,1)
readn (a,a) -> read2n (1,1)
read2n (<,<) -> done (0,0)   # end of both tapes
";

    #[test]
    fn parses_n2n() {
        let Machine::Def1(m) = parse_automaton(N2N).unwrap() else { panic!() };
        assert_eq!(m, zoo_build("L_n2n").unwrap());
    }

    #[test]
    fn catalog_round_trips() {
        for e in CATALOG {
            let m = Machine::Def1(zoo_build(e.name).unwrap());
            let text = serialize_automaton(&m);
            assert_eq!(parse_automaton(&text).unwrap(), m, "{}", e.name);
            if e.one_way {
                let t = Machine::Taped(zoo_taped(e.name).unwrap());
                assert_eq!(parse_automaton(&serialize_automaton(&t)).unwrap(), t, "{}", e.name);
            }
        }
    }

    #[test]
    fn generated_ids_are_not_comments() {
        let text = "model: def1\ntapes: 1\nalphabet: a\nstates: #q0 #q1\ninitial: #q0\naccepting: #q1 # trailing\n#q0 (>) -> #q1 (1)\n";
        let Machine::Def1(m) = parse_automaton(text).unwrap() else { panic!() };
        assert!(m.is_accepting("#q1"));
        assert_eq!(m.transition_count(), 1);
    }

    fn syntax(text: &str) -> (usize, usize, String) {
        match parse_automaton(text) {
            Err(Error::Syntax { line, column, message }) => (line, column, message),
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(syntax("").0, 1);
        let (line, _, msg) = syntax("model: def1\ntapes: 1\nalphabet: a\nstates: s\nstates: s\ninitial: s\n");
        assert_eq!(line, 5);
        assert!(msg.contains("duplicate"));
        let (line, col, _) = syntax("model: def1\ntapes: 1\nalphabet: a\nstates: s\ninitial: s\ns (b) -> s (1)\n");
        assert_eq!((line, col), (6, 4));
        let (line, col, _) = syntax("model: def1\ntapes: 1\nalphabet: a\nstates: s\ninitial: s\ns (a) -> t (1)\n");
        assert_eq!((line, col), (6, 10));
        assert!(syntax("model: nfa\n").2.contains("unknown model"));
        assert!(syntax("model: def1\ntapes: 2\nalphabet: a\nstates: s\ninitial: s\ns (a) -> s (1,1)\n").2.contains("read symbols"));
    }

    #[test]
    fn one_way_flag_is_checked() {
        let text = "model: def1\ntapes: 1\nalphabet: a\none-way: yes\nstates: s\ninitial: s\ns (a) -> s (-1)\n";
        assert!(parse_automaton(text).is_err());
    }
}
