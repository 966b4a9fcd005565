//! One-way machines as ε-NFAs whose edges read one symbol from a named tape.
//!
//! This is the working representation for every one-way construction: the
//! conversions between the two one-way models, and the rational closures.
//! Semantics match [`TapedAutomaton`]: a letter edge consumes one symbol of its
//! tape, a right-marker edge is enabled only when its tape is exhausted, and ε
//! edges read nothing.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::automaton::{MultiTapeAutomaton, StateId, GENERATED_PREFIX};
use crate::error::{Error, Result};
use crate::symbol::{Alphabet, NWord, Sym};
use crate::taped::{TapeId, TapedAutomaton};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Eps,
    /// Zero-based tape index and a letter or the right marker.
    Read(usize, Sym),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaneNfa {
    pub alphabet: Alphabet,
    pub tapes: usize,
    pub names: Vec<String>,
    pub initial: Vec<usize>,
    pub accepting: Vec<bool>,
    pub edges: Vec<Vec<(Label, usize)>>,
}

impl LaneNfa {
    pub fn new(alphabet: Alphabet, tapes: usize) -> Self {
        LaneNfa {
            alphabet,
            tapes,
            names: Vec::new(),
            initial: Vec::new(),
            accepting: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn add_state(&mut self, name: impl Into<String>, accepting: bool) -> usize {
        self.names.push(name.into());
        self.accepting.push(accepting);
        self.edges.push(Vec::new());
        self.names.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, label: Label, to: usize) {
        if !self.edges[from].contains(&(label, to)) {
            self.edges[from].push((label, to));
        }
    }

    /// Membership by search over (state, consumed lengths).
    pub fn accepts(&self, x: &NWord) -> bool {
        let lens: Vec<usize> = x.components().iter().map(Vec::len).collect();
        let mut seen: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for &q in &self.initial {
            let node = (q, vec![0; self.tapes]);
            if seen.insert(node.clone()) {
                queue.push_back(node);
            }
        }
        while let Some((q, heads)) = queue.pop_front() {
            if self.accepting[q] && heads == lens {
                return true;
            }
            for &(label, p) in &self.edges[q] {
                let mut next = heads.clone();
                match label {
                    Label::Eps => {}
                    Label::Read(t, Sym::End) if heads[t] == lens[t] => {}
                    Label::Read(t, Sym::Letter(c))
                        if heads[t] < lens[t] && x.component(t)[heads[t]] == c =>
                    {
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
        false
    }

    fn eps_closure(&self, q: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![q];
        let mut out = Vec::new();
        seen[q] = true;
        while let Some(u) = stack.pop() {
            out.push(u);
            for &(l, v) in &self.edges[u] {
                if l == Label::Eps && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Equivalent machine without ε edges.
    pub fn eps_free(&self) -> LaneNfa {
        let mut m = LaneNfa::new(self.alphabet.clone(), self.tapes);
        m.names = self.names.clone();
        m.initial = self.initial.clone();
        m.edges = vec![Vec::new(); self.len()];
        m.accepting = vec![false; self.len()];
        for q in 0..self.len() {
            for u in self.eps_closure(q) {
                if self.accepting[u] {
                    m.accepting[q] = true;
                }
                for &(l, v) in &self.edges[u] {
                    if l != Label::Eps {
                        m.add_edge(q, l, v);
                    }
                }
            }
        }
        m
    }

    /// Drops states that are unreachable or cannot reach acceptance.
    pub fn trim(&self) -> LaneNfa {
        let n = self.len();
        let mut fwd = vec![false; n];
        let mut stack: Vec<usize> = self.initial.clone();
        for &q in &self.initial {
            fwd[q] = true;
        }
        while let Some(u) = stack.pop() {
            for &(_, v) in &self.edges[u] {
                if !fwd[v] {
                    fwd[v] = true;
                    stack.push(v);
                }
            }
        }
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for u in 0..n {
            for &(_, v) in &self.edges[u] {
                rev[v].push(u);
            }
        }
        let mut bwd = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&q| self.accepting[q]).collect();
        for &q in &stack {
            bwd[q] = true;
        }
        while let Some(v) = stack.pop() {
            for &u in &rev[v] {
                if !bwd[u] {
                    bwd[u] = true;
                    stack.push(u);
                }
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&q| fwd[q] && bwd[q]).collect();
        let remap: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &q)| (q, i)).collect();
        let mut m = LaneNfa::new(self.alphabet.clone(), self.tapes);
        for &q in &keep {
            m.add_state(self.names[q].clone(), self.accepting[q]);
        }
        for &q in &keep {
            for &(l, v) in &self.edges[q] {
                if let Some(&w) = remap.get(&v) {
                    m.add_edge(remap[&q], l, w);
                }
            }
        }
        m.initial = self.initial.iter().filter_map(|q| remap.get(q).copied()).collect();
        m.initial.sort_unstable();
        m.initial.dedup();
        m
    }

    pub fn from_taped(b: &TapedAutomaton) -> LaneNfa {
        let mut m = LaneNfa::new(b.alphabet().clone(), b.tapes().len());
        let mut index = HashMap::new();
        for q in b.states() {
            index.insert(q.clone(), m.add_state(q.clone(), b.is_accepting(q)));
        }
        for (q, s, p) in b.transitions() {
            let t = b.tape_index(b.tape_of(q).unwrap()).unwrap();
            m.add_edge(index[q], Label::Read(t, *s), index[p]);
        }
        m.initial = b.initial().iter().map(|q| index[q]).collect();
        m
    }

    /// Taped form: ε edges are removed, and a state whose outgoing edges use
    /// several tapes is split into one copy per tape.
    pub fn to_taped(&self, tape_ids: &[TapeId]) -> Result<TapedAutomaton> {
        if tape_ids.len() != self.tapes {
            return Err(Error::Arity {
                expected: self.tapes,
                found: tape_ids.len(),
            });
        }
        let m = self.eps_free().trim();
        let mut b = TapedAutomaton::new(m.alphabet.clone(), tape_ids.to_vec());
        let mut copies: Vec<Vec<(usize, String)>> = Vec::with_capacity(m.len());
        for q in 0..m.len() {
            let tapes: BTreeSet<usize> = m.edges[q]
                .iter()
                .map(|&(l, _)| match l {
                    Label::Read(t, _) => t,
                    Label::Eps => unreachable!("ε edges were removed"),
                })
                .collect();
            let tapes: Vec<usize> = if tapes.is_empty() {
                vec![0]
            } else {
                tapes.into_iter().collect()
            };
            let mut cs = Vec::new();
            for &t in &tapes {
                let name = if tapes.len() == 1 {
                    m.names[q].clone()
                } else {
                    format!("{}@{}", m.names[q], tape_ids[t])
                };
                b.add_state(name.clone(), tape_ids[t].clone())?;
                if m.accepting[q] {
                    b.set_accepting(&name)?;
                }
                cs.push((t, name));
            }
            copies.push(cs);
        }
        for &q in &m.initial {
            for (_, name) in &copies[q] {
                b.set_initial(name)?;
            }
        }
        for q in 0..m.len() {
            for &(l, v) in &m.edges[q] {
                let Label::Read(t, s) = l else { unreachable!() };
                let src = &copies[q].iter().find(|(tt, _)| *tt == t).unwrap().1;
                for (_, dst) in &copies[v] {
                    b.add_transition(src, s, dst)?;
                }
            }
        }
        Ok(b)
    }

    /// Guess-and-verify decomposition of a one-way machine. Product states
    /// record, per tape, whether the head has left the left marker and which
    /// symbol it is known to be sitting on without having consumed it.
    pub fn from_def1(a: &MultiTapeAutomaton) -> Result<LaneNfa> {
        if !a.is_one_way() {
            return Err(Error::NotOneWay);
        }
        let n = a.tapes();
        #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
        struct Key {
            q: StateId,
            started: Vec<bool>,
            under: Vec<Option<Sym>>,
        }
        let name_of = |k: &Key| -> String {
            let mut s = format!("{GENERATED_PREFIX}[{}|", k.q);
            for t in 0..n {
                s.push(if !k.started[t] {
                    '>'
                } else {
                    k.under[t].map(Sym::to_char).unwrap_or('.')
                });
            }
            s.push(']');
            s
        };
        let mut by_state: BTreeMap<&StateId, Vec<(&Vec<Sym>, &StateId, &Vec<i8>)>> = BTreeMap::new();
        for (q, r, p, d) in a.transitions() {
            by_state.entry(q).or_default().push((r, p, d));
        }

        let mut m = LaneNfa::new(a.alphabet().clone(), n);
        let mut index: HashMap<Key, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let accepting_key = |k: &Key| {
            a.is_accepting(&k.q)
                && k.started.iter().all(|&s| s)
                && k.under.iter().all(|u| matches!(u, None | Some(Sym::End)))
        };
        let start = Key {
            q: a.initial().clone(),
            started: vec![false; n],
            under: vec![None; n],
        };
        index.insert(start.clone(), m.add_state(name_of(&start), accepting_key(&start)));
        m.initial.push(0);
        queue.push_back(start);
        let mut fresh = 0usize;

        while let Some(key) = queue.pop_front() {
            let src = index[&key];
            let Some(ts) = by_state.get(&key.q) else {
                continue;
            };
            for &(reads, to, moves) in ts {
                let mut next = Key {
                    q: to.clone(),
                    started: key.started.clone(),
                    under: key.under.clone(),
                };
                let mut steps: Vec<Label> = Vec::new();
                let mut ok = true;
                for t in 0..n {
                    let sym = reads[t];
                    let d = moves[t];
                    if !key.started[t] {
                        if sym != Sym::Start {
                            ok = false;
                            break;
                        }
                        if d == 1 {
                            next.started[t] = true;
                        }
                        continue;
                    }
                    if sym == Sym::Start {
                        ok = false;
                        break;
                    }
                    if let Some(u) = key.under[t] {
                        if u != sym {
                            ok = false;
                            break;
                        }
                    }
                    match (sym, d) {
                        (Sym::End, _) => {
                            if key.under[t].is_none() {
                                steps.push(Label::Read(t, Sym::End));
                            }
                            next.under[t] = Some(Sym::End);
                        }
                        (Sym::Letter(_), 1) => {
                            steps.push(Label::Read(t, sym));
                            next.under[t] = None;
                        }
                        (Sym::Letter(_), _) => next.under[t] = Some(sym),
                        (Sym::Start, _) => unreachable!(),
                    }
                }
                if !ok {
                    continue;
                }
                let dst = match index.get(&next) {
                    Some(&i) => i,
                    None => {
                        let i = m.add_state(name_of(&next), accepting_key(&next));
                        index.insert(next.clone(), i);
                        queue.push_back(next);
                        i
                    }
                };
                if steps.is_empty() {
                    m.add_edge(src, Label::Eps, dst);
                    continue;
                }
                let mut cur = src;
                for (i, &l) in steps.iter().enumerate() {
                    let tgt = if i + 1 == steps.len() {
                        dst
                    } else {
                        fresh += 1;
                        m.add_state(format!("{}~{fresh}", m.names[src]), false)
                    };
                    m.add_edge(cur, l, tgt);
                    cur = tgt;
                }
            }
        }
        Ok(m)
    }

    /// Back to a one-way n-tape machine through the taped form.
    pub fn to_def1(&self) -> Result<MultiTapeAutomaton> {
        let ids = default_tape_ids(self.tapes);
        let b = self.to_taped(&ids)?;
        Ok(from_taped_model(&b))
    }
}

/// `t1, ..., tn`.
pub fn default_tape_ids(n: usize) -> Vec<TapeId> {
    (1..=n).map(|i| format!("t{i}")).collect()
}

/// Converts a one-way n-tape machine into an equivalent taped automaton.
pub fn to_taped_model(a: &MultiTapeAutomaton, tape_ids: &[TapeId]) -> Result<TapedAutomaton> {
    LaneNfa::from_def1(a)?.to_taped(tape_ids)
}

/// Converts a taped automaton into an equivalent one-way n-tape machine. Each
/// transition on tape k reads its symbol on k and anything on the other tapes.
pub fn from_taped_model(b: &TapedAutomaton) -> MultiTapeAutomaton {
    let n = b.tapes().len();
    let mut start = format!("{GENERATED_PREFIX}start");
    while b.states().contains(&start) {
        start.push('\'');
    }
    let mut a = MultiTapeAutomaton::new(b.alphabet().clone(), n, start.clone());
    for q in b.states() {
        a.add_state(q.clone());
    }
    for q in b.accepting() {
        a.set_accepting(q.clone());
    }
    for q in b.initial() {
        a.add_transition(start.clone(), vec![Sym::Start; n], q.clone(), vec![1; n]);
    }
    let ext = b.alphabet().extended();
    for (q, s, p) in b.transitions() {
        let k = b.tape_index(b.tape_of(q).unwrap()).unwrap();
        let mut moves = vec![0i8; n];
        if matches!(s, Sym::Letter(_)) {
            moves[k] = 1;
        }
        for reads in wildcard_reads(&ext, n, k, *s) {
            a.add_transition(q.clone(), reads, p.clone(), moves.clone());
        }
    }
    a
}

/// Every read tuple with `sym` on tape `k` and any extended symbol elsewhere.
fn wildcard_reads(ext: &[Sym], n: usize, k: usize, sym: Sym) -> Vec<Vec<Sym>> {
    let mut out = vec![Vec::with_capacity(n)];
    for t in 0..n {
        let choices: &[Sym] = if t == k { std::slice::from_ref(&sym) } else { ext };
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for prefix in &out {
            for &c in choices {
                let mut v = prefix.clone();
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out
}
