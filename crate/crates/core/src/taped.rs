//! Automata in which every state owns one tape and every transition reads a
//! single symbol from the tape of its source state.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::automaton::StateId;
use crate::error::{Error, Result};
use crate::symbol::{Alphabet, NWord, Sym};

pub type TapeId = String;

/// A taped-state automaton.
///
/// A transition on a letter consumes one symbol from the tape of its source
/// state. A transition on the right marker is enabled only when that tape has
/// been consumed entirely and does not move the head. A run accepts when it
/// ends in an accepting state with every tape consumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TapedAutomaton {
    alphabet: Alphabet,
    tapes: Vec<TapeId>,
    states: BTreeSet<StateId>,
    tape_of: BTreeMap<StateId, TapeId>,
    delta: BTreeSet<(StateId, Sym, StateId)>,
    initial: BTreeSet<StateId>,
    accepting: BTreeSet<StateId>,
}

impl TapedAutomaton {
    pub fn new<I, T>(alphabet: Alphabet, tapes: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<TapeId>,
    {
        TapedAutomaton {
            alphabet,
            tapes: tapes.into_iter().map(Into::into).collect(),
            states: BTreeSet::new(),
            tape_of: BTreeMap::new(),
            delta: BTreeSet::new(),
            initial: BTreeSet::new(),
            accepting: BTreeSet::new(),
        }
    }

    pub fn add_state(&mut self, q: impl Into<StateId>, tape: impl Into<TapeId>) -> Result<()> {
        let q = q.into();
        let tape = tape.into();
        if !self.tapes.contains(&tape) {
            return Err(Error::UnknownTape(tape));
        }
        self.states.insert(q.clone());
        self.tape_of.insert(q, tape);
        Ok(())
    }

    pub fn set_initial(&mut self, q: &str) -> Result<()> {
        self.require(q)?;
        self.initial.insert(q.to_string());
        Ok(())
    }

    pub fn set_accepting(&mut self, q: &str) -> Result<()> {
        self.require(q)?;
        self.accepting.insert(q.to_string());
        Ok(())
    }

    pub fn add_transition(&mut self, from: &str, sym: Sym, to: &str) -> Result<()> {
        self.require(from)?;
        self.require(to)?;
        match sym {
            Sym::Start => {
                return Err(Error::Invalid(
                    "taped transitions cannot read the left marker".into(),
                ))
            }
            Sym::Letter(c) if !self.alphabet.contains(c) => {
                return Err(Error::ForeignSymbol { symbol: c })
            }
            _ => {}
        }
        self.delta.insert((from.to_string(), sym, to.to_string()));
        Ok(())
    }

    fn require(&self, q: &str) -> Result<()> {
        if self.states.contains(q) {
            Ok(())
        } else {
            Err(Error::UnknownState(q.to_string()))
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn tapes(&self) -> &[TapeId] {
        &self.tapes
    }

    pub fn tape_index(&self, t: &str) -> Option<usize> {
        self.tapes.iter().position(|x| x == t)
    }

    pub fn states(&self) -> &BTreeSet<StateId> {
        &self.states
    }

    pub fn tape_of(&self, q: &str) -> Option<&TapeId> {
        self.tape_of.get(q)
    }

    pub fn tape_map(&self) -> &BTreeMap<StateId, TapeId> {
        &self.tape_of
    }

    pub fn transitions(&self) -> &BTreeSet<(StateId, Sym, StateId)> {
        &self.delta
    }

    pub fn initial(&self) -> &BTreeSet<StateId> {
        &self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<StateId> {
        &self.accepting
    }

    pub fn is_accepting(&self, q: &str) -> bool {
        self.accepting.contains(q)
    }

    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.tapes.is_empty() {
            out.push("machine has no tapes".to_string());
        }
        let distinct: BTreeSet<&TapeId> = self.tapes.iter().collect();
        if distinct.len() != self.tapes.len() {
            out.push("duplicate tape id".to_string());
        }
        for q in &self.states {
            if !self.tape_of.contains_key(q) {
                out.push(format!("state {q} has no tape"));
            }
        }
        for q in self.initial.iter().chain(&self.accepting) {
            if !self.states.contains(q) {
                out.push(format!("state {q} is used but not declared"));
            }
        }
        for (q, _, p) in &self.delta {
            for s in [q, p] {
                if !self.states.contains(s) {
                    out.push(format!("state {s} is used but not declared"));
                }
            }
        }
        out
    }

    /// Membership by search over (state, consumed-prefix lengths).
    pub fn accepts(&self, x: &NWord) -> Result<bool> {
        if x.arity() != self.tapes.len() {
            return Err(Error::Arity {
                expected: self.tapes.len(),
                found: x.arity(),
            });
        }
        x.check_alphabet(&self.alphabet)?;
        let names: Vec<&StateId> = self.states.iter().collect();
        let index: HashMap<&str, usize> =
            names.iter().enumerate().map(|(i, q)| (q.as_str(), i)).collect();
        let tape: Vec<usize> = names
            .iter()
            .map(|q| self.tape_index(&self.tape_of[*q]).unwrap())
            .collect();
        let mut out: Vec<Vec<(Sym, usize)>> = vec![Vec::new(); names.len()];
        for (q, s, p) in &self.delta {
            out[index[q.as_str()]].push((*s, index[p.as_str()]));
        }
        let lens: Vec<usize> = x.components().iter().map(Vec::len).collect();
        let mut seen: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for q in &self.initial {
            let node = (index[q.as_str()], vec![0; lens.len()]);
            if seen.insert(node.clone()) {
                queue.push_back(node);
            }
        }
        while let Some((q, heads)) = queue.pop_front() {
            if self.accepting.contains(names[q]) && heads == lens {
                return Ok(true);
            }
            let t = tape[q];
            for &(s, p) in &out[q] {
                let mut next = heads.clone();
                match s {
                    Sym::End if heads[t] == lens[t] => {}
                    Sym::Letter(c) if heads[t] < lens[t] && x.component(t)[heads[t]] == c => {
                        next[t] += 1
                    }
                    _ => continue,
                }
                let node = (p, next);
                if seen.insert(node.clone()) {
                    queue.push_back(node);
                }
            }
        }
        Ok(false)
    }

    /// Copy with every state renamed by `f`.
    pub fn rename_states<F: Fn(&str) -> String>(&self, f: F) -> TapedAutomaton {
        let mut m = TapedAutomaton::new(self.alphabet.clone(), self.tapes.clone());
        for (q, t) in &self.tape_of {
            m.states.insert(f(q));
            m.tape_of.insert(f(q), t.clone());
        }
        m.initial = self.initial.iter().map(|q| f(q)).collect();
        m.accepting = self.accepting.iter().map(|q| f(q)).collect();
        m.delta = self.delta.iter().map(|(q, s, p)| (f(q), *s, f(p))).collect();
        m
    }
}

/// Membership for taped automata.
pub fn simulate_taped(b: &TapedAutomaton, x: &NWord) -> Result<bool> {
    b.accepts(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a_star() -> TapedAutomaton {
        let mut b = TapedAutomaton::new(Alphabet::from_str_chars("ab").unwrap(), ["t1"]);
        b.add_state("q", "t1").unwrap();
        b.set_initial("q").unwrap();
        b.set_accepting("q").unwrap();
        b.add_transition("q", Sym::Letter('a'), "q").unwrap();
        b.add_transition("q", Sym::End, "q").unwrap();
        b
    }

    fn equal_pairs() -> TapedAutomaton {
        let mut b = TapedAutomaton::new(Alphabet::from_str_chars("ab").unwrap(), ["t1", "t2"]);
        b.add_state("r0", "t1").unwrap();
        b.add_state("ra", "t2").unwrap();
        b.add_state("rb", "t2").unwrap();
        b.set_initial("r0").unwrap();
        b.set_accepting("r0").unwrap();
        b.add_transition("r0", Sym::Letter('a'), "ra").unwrap();
        b.add_transition("r0", Sym::Letter('b'), "rb").unwrap();
        b.add_transition("ra", Sym::Letter('a'), "r0").unwrap();
        b.add_transition("rb", Sym::Letter('b'), "r0").unwrap();
        b
    }

    #[test]
    fn single_tape_star() {
        let b = a_star();
        assert!(simulate_taped(&b, &NWord::from_strs(&["aaa"])).unwrap());
        assert!(!simulate_taped(&b, &NWord::from_strs(&["ab"])).unwrap());
    }

    #[test]
    fn equality_language_matches_string_equality() {
        let b = equal_pairs();
        let ab = Alphabet::from_str_chars("ab").unwrap();
        for x in crate::words::enumerate_nwords(&ab, 2, 3) {
            let expected = x.component(0) == x.component(1);
            assert_eq!(simulate_taped(&b, &x).unwrap(), expected, "{x}");
        }
    }

    #[test]
    fn unknown_tape_and_state_are_errors() {
        let mut b = a_star();
        assert!(b.add_state("z", "t9").is_err());
        assert!(b.add_transition("q", Sym::Letter('a'), "nope").is_err());
        assert!(b.accepts(&NWord::from_strs(&["a", "a"])).is_err());
    }
}
