//! The n-tape two-way nondeterministic automaton and its structural checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::symbol::{Alphabet, Sym};

pub type StateId = String;

/// Head displacement: -1, 0 or +1.
pub type Move = i8;

/// Symbols read, one per tape.
pub type Reads = Vec<Sym>;
/// Head moves, one per tape.
pub type Moves = Vec<Move>;

/// Prefix reserved for states introduced by constructions.
pub const GENERATED_PREFIX: char = '#';

/// An n-tape automaton whose transition function maps a state and the
/// symbols under the heads to a set of (next state, head moves).
///
/// Transitions are stored sparsely: an absent `(state, reads)` entry means the
/// branch halts and rejects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiTapeAutomaton {
    alphabet: Alphabet,
    tapes: usize,
    states: BTreeSet<StateId>,
    delta: BTreeMap<(StateId, Reads), BTreeSet<(StateId, Moves)>>,
    initial: StateId,
    accepting: BTreeSet<StateId>,
    one_way: bool,
}

impl MultiTapeAutomaton {
    /// Creates a machine with a single (initial) state and no transitions.
    /// The one-way flag starts set and is cleared by the first left move.
    pub fn new(alphabet: Alphabet, tapes: usize, initial: impl Into<StateId>) -> Self {
        let initial = initial.into();
        let mut states = BTreeSet::new();
        states.insert(initial.clone());
        MultiTapeAutomaton {
            alphabet,
            tapes,
            states,
            delta: BTreeMap::new(),
            initial,
            accepting: BTreeSet::new(),
            one_way: true,
        }
    }

    pub fn add_state(&mut self, q: impl Into<StateId>) {
        self.states.insert(q.into());
    }

    pub fn set_accepting(&mut self, q: impl Into<StateId>) {
        let q = q.into();
        self.states.insert(q.clone());
        self.accepting.insert(q);
    }

    pub fn set_initial(&mut self, q: impl Into<StateId>) {
        let q = q.into();
        self.states.insert(q.clone());
        self.initial = q;
    }

    /// Adds a transition; endpoints are registered as states.
    pub fn add_transition(
        &mut self,
        from: impl Into<StateId>,
        reads: Reads,
        to: impl Into<StateId>,
        moves: Moves,
    ) {
        let from = from.into();
        let to = to.into();
        if moves.iter().any(|&d| d < 0) {
            self.one_way = false;
        }
        self.states.insert(from.clone());
        self.states.insert(to.clone());
        self.delta
            .entry((from, reads))
            .or_default()
            .insert((to, moves));
    }

    /// Overrides the one-way declaration (used by the text format, which
    /// stores it explicitly so that a wrong declaration can be diagnosed).
    pub fn declare_one_way(&mut self, one_way: bool) {
        self.one_way = one_way;
    }

    /// Registers a transition without touching the one-way flag.
    pub(crate) fn insert_raw(&mut self, from: StateId, reads: Reads, to: StateId, moves: Moves) {
        self.delta
            .entry((from, reads))
            .or_default()
            .insert((to, moves));
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn tapes(&self) -> usize {
        self.tapes
    }

    pub fn states(&self) -> &BTreeSet<StateId> {
        &self.states
    }

    pub fn initial(&self) -> &StateId {
        &self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<StateId> {
        &self.accepting
    }

    pub fn is_accepting(&self, q: &str) -> bool {
        self.accepting.contains(q)
    }

    pub fn declared_one_way(&self) -> bool {
        self.one_way
    }

    /// True when no transition moves a head left, regardless of the flag.
    pub fn is_one_way(&self) -> bool {
        self.transitions().all(|(_, _, _, d)| d.iter().all(|&m| m >= 0))
    }

    pub fn is_deterministic(&self) -> bool {
        self.delta.values().all(|targets| targets.len() <= 1)
    }

    pub fn delta(&self) -> &BTreeMap<(StateId, Reads), BTreeSet<(StateId, Moves)>> {
        &self.delta
    }

    pub fn targets(&self, q: &str, reads: &[Sym]) -> Option<&BTreeSet<(StateId, Moves)>> {
        self.delta.get(&(q.to_string(), reads.to_vec()))
    }

    /// Iterates over all transitions as `(from, reads, to, moves)`.
    pub fn transitions(&self) -> impl Iterator<Item = (&StateId, &Reads, &StateId, &Moves)> {
        self.delta
            .iter()
            .flat_map(|((q, r), ts)| ts.iter().map(move |(p, d)| (q, r, p, d)))
    }

    pub fn transition_count(&self) -> usize {
        self.delta.values().map(BTreeSet::len).sum()
    }

    /// Structural checks; the empty list means the machine is well formed.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if self.tapes == 0 {
            out.push(Diagnostic::NoTapes);
        }
        if !self.states.contains(&self.initial) {
            out.push(Diagnostic::DanglingState(self.initial.clone()));
        }
        for q in &self.accepting {
            if !self.states.contains(q) {
                out.push(Diagnostic::DanglingState(q.clone()));
            }
        }
        for (q, reads, p, moves) in self.transitions() {
            for s in [q, p] {
                if !self.states.contains(s) {
                    out.push(Diagnostic::DanglingState(s.clone()));
                }
            }
            if reads.len() != self.tapes || moves.len() != self.tapes {
                out.push(Diagnostic::WrongArity { state: q.clone() });
                continue;
            }
            for (k, (&sym, &d)) in reads.iter().zip(moves).enumerate() {
                if let Sym::Letter(c) = sym {
                    if !self.alphabet.contains(c) {
                        out.push(Diagnostic::ForeignSymbol {
                            state: q.clone(),
                            symbol: c,
                        });
                    }
                }
                if !(-1..=1).contains(&d) {
                    out.push(Diagnostic::BadMove {
                        state: q.clone(),
                        tape: k + 1,
                        delta: d,
                    });
                }
                let crossing = (sym == Sym::Start && d < 0) || (sym == Sym::End && d > 0);
                if crossing {
                    out.push(Diagnostic::MarkerCrossing {
                        state: q.clone(),
                        tape: k + 1,
                    });
                }
                if self.one_way && d < 0 {
                    out.push(Diagnostic::OneWayViolation {
                        state: q.clone(),
                        tape: k + 1,
                    });
                }
            }
        }
        out.dedup();
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        match self.validate().first() {
            None => Ok(()),
            Some(d) => Err(Error::Invalid(d.to_string())),
        }
    }

    /// Renames every state with `f`; used by isomorphism tests and by
    /// constructions that embed one machine into another.
    pub fn rename_states<F: Fn(&str) -> String>(&self, f: F) -> MultiTapeAutomaton {
        let mut m = MultiTapeAutomaton::new(self.alphabet.clone(), self.tapes, f(&self.initial));
        for q in &self.states {
            m.add_state(f(q));
        }
        for q in &self.accepting {
            m.set_accepting(f(q));
        }
        for (q, r, p, d) in self.transitions() {
            m.insert_raw(f(q), r.clone(), f(p), d.clone());
        }
        m.one_way = self.one_way;
        m
    }

    /// Replaces the set of accepting states.
    pub fn with_accepting<I: IntoIterator<Item = StateId>>(&self, acc: I) -> MultiTapeAutomaton {
        let mut m = self.clone();
        m.accepting.clear();
        for q in acc {
            m.set_accepting(q);
        }
        m
    }
}

/// One violated invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    NoTapes,
    DanglingState(StateId),
    WrongArity { state: StateId },
    ForeignSymbol { state: StateId, symbol: char },
    BadMove { state: StateId, tape: usize, delta: Move },
    MarkerCrossing { state: StateId, tape: usize },
    OneWayViolation { state: StateId, tape: usize },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::NoTapes => write!(f, "machine has no tapes"),
            Diagnostic::DanglingState(q) => write!(f, "state {q} is used but not declared"),
            Diagnostic::WrongArity { state } => {
                write!(f, "transition from {state} has the wrong number of tapes")
            }
            Diagnostic::ForeignSymbol { state, symbol } => {
                write!(f, "transition from {state} reads {symbol:?}, not in the alphabet")
            }
            Diagnostic::BadMove { state, tape, delta } => {
                write!(f, "transition from {state} moves tape {tape} by {delta}")
            }
            Diagnostic::MarkerCrossing { state, tape } => {
                write!(f, "marker-crossing at {state}: tape {tape} moves past an end marker")
            }
            Diagnostic::OneWayViolation { state, tape } => write!(
                f,
                "one-way flag violation at {state}: tape {tape} moves left"
            ),
        }
    }
}
