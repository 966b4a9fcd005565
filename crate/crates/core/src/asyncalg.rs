//! Closure constructions and decision procedures for one-way machines without
//! any synchrony assumption.
//!
//! Every construction goes through [`LaneNfa`]. Right-marker tests are first
//! replaced by per-tape "closed" bits (a closed tape may not be read again),
//! which is equivalent because acceptance requires every tape to be consumed.
//! After that, machines can be sequenced, looped and reversed like ordinary
//! finite automata.

use std::collections::{HashMap, VecDeque};

use crate::automaton::{MultiTapeAutomaton, GENERATED_PREFIX};
use crate::error::{Error, Result};
use crate::lanes::{Label, LaneNfa};
use crate::symbol::{NWord, Sym};
use crate::taped::TapedAutomaton;
use crate::sync::Decision;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureOp {
    Union,
    Concat,
    Star,
    Reverse,
}

fn require_compatible(a: &MultiTapeAutomaton, b: &MultiTapeAutomaton) -> Result<()> {
    if a.tapes() != b.tapes() {
        return Err(Error::Arity {
            expected: a.tapes(),
            found: b.tapes(),
        });
    }
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    Ok(())
}

fn mask_name(mask: u64, n: usize) -> String {
    (0..n).map(|k| if mask & (1 << k) != 0 { '1' } else { '0' }).collect()
}

/// Equivalent machine without right-marker reads: each state carries the set
/// of tapes already tested for their end, and those tapes are never read again.
pub(crate) fn close_markers(m: &LaneNfa) -> LaneNfa {
    let n = m.tapes;
    let mut out = LaneNfa::new(m.alphabet.clone(), n);
    let mut index: HashMap<(usize, u64), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut intern = |q: usize, mask: u64, out: &mut LaneNfa, queue: &mut VecDeque<(usize, u64)>| {
        *index.entry((q, mask)).or_insert_with(|| {
            queue.push_back((q, mask));
            out.add_state(format!("{}/{}", m.names[q], mask_name(mask, n)), m.accepting[q])
        })
    };
    for &q in &m.initial {
        let i = intern(q, 0, &mut out, &mut queue);
        out.initial.push(i);
    }
    while let Some((q, mask)) = queue.pop_front() {
        let src = intern(q, mask, &mut out, &mut queue);
        for &(label, p) in &m.edges[q] {
            match label {
                Label::Eps => {
                    let dst = intern(p, mask, &mut out, &mut queue);
                    out.add_edge(src, Label::Eps, dst);
                }
                Label::Read(k, Sym::End) => {
                    let dst = intern(p, mask | 1 << k, &mut out, &mut queue);
                    out.add_edge(src, Label::Eps, dst);
                }
                Label::Read(k, s) => {
                    if mask & (1 << k) == 0 {
                        let dst = intern(p, mask, &mut out, &mut queue);
                        out.add_edge(src, Label::Read(k, s), dst);
                    }
                }
            }
        }
    }
    out
}

/// Appends the states of `b` to `a`, returning the offset of `b`'s states.
fn append(a: &mut LaneNfa, b: &LaneNfa) -> usize {
    let off = a.len();
    for q in 0..b.len() {
        a.add_state(b.names[q].clone(), b.accepting[q]);
    }
    for q in 0..b.len() {
        for &(l, p) in &b.edges[q] {
            a.add_edge(q + off, l, p + off);
        }
    }
    off
}

fn union_lanes(a: &LaneNfa, b: &LaneNfa) -> LaneNfa {
    let mut m = a.clone();
    let off = append(&mut m, b);
    m.initial.extend(b.initial.iter().map(|q| q + off));
    m
}

fn concat_lanes(a: &LaneNfa, b: &LaneNfa) -> LaneNfa {
    let mut m = close_markers(a);
    let finals: Vec<usize> = (0..m.len()).filter(|&q| m.accepting[q]).collect();
    for f in &finals {
        m.accepting[*f] = false;
    }
    let off = append(&mut m, b);
    for f in finals {
        for &q in &b.initial {
            m.add_edge(f, Label::Eps, q + off);
        }
    }
    m
}

fn star_lanes(a: &LaneNfa) -> LaneNfa {
    let inner = close_markers(a);
    let mut m = LaneNfa::new(a.alphabet.clone(), a.tapes);
    let hub = m.add_state(format!("{GENERATED_PREFIX}star"), true);
    m.initial = vec![hub];
    let off = append(&mut m, &inner);
    for &q in &inner.initial {
        m.add_edge(hub, Label::Eps, q + off);
    }
    for q in 0..inner.len() {
        if inner.accepting[q] {
            m.accepting[q + off] = false;
            m.add_edge(q + off, Label::Eps, hub);
        }
    }
    m
}

fn reverse_lanes(a: &LaneNfa) -> LaneNfa {
    let inner = close_markers(a);
    let mut m = LaneNfa::new(a.alphabet.clone(), a.tapes);
    for q in 0..inner.len() {
        m.add_state(inner.names[q].clone(), inner.initial.contains(&q));
    }
    for q in 0..inner.len() {
        for &(l, p) in &inner.edges[q] {
            m.add_edge(p, l, q);
        }
    }
    m.initial = (0..inner.len()).filter(|&q| inner.accepting[q]).collect();
    m
}

/// Drops tape `k`: its reads become silent guesses.
fn project_lanes(a: &LaneNfa, k: usize) -> LaneNfa {
    let inner = close_markers(a);
    let mut m = LaneNfa::new(a.alphabet.clone(), a.tapes - 1);
    for q in 0..inner.len() {
        m.add_state(inner.names[q].clone(), inner.accepting[q]);
    }
    for q in 0..inner.len() {
        for &(l, p) in &inner.edges[q] {
            let l = match l {
                Label::Read(t, _) if t == k => Label::Eps,
                Label::Read(t, s) if t > k => Label::Read(t - 1, s),
                other => other,
            };
            m.add_edge(q, l, p);
        }
    }
    m.initial = inner.initial.clone();
    m
}

/// Renames states to `#q0, #q1, ...` and converts back to an n-tape machine.
fn finish(m: LaneNfa) -> Result<MultiTapeAutomaton> {
    let mut m = m.eps_free().trim();
    for (i, name) in m.names.iter_mut().enumerate() {
        *name = format!("{GENERATED_PREFIX}q{i}");
    }
    let mut out = m.to_def1()?;
    out.declare_one_way(true);
    Ok(out)
}

/// Union, componentwise concatenation, Kleene star and componentwise
/// reversal of one-way machines.
pub fn async_closure(
    op: ClosureOp,
    a: &MultiTapeAutomaton,
    b: Option<&MultiTapeAutomaton>,
) -> Result<MultiTapeAutomaton> {
    let la = LaneNfa::from_def1(a)?;
    let m = match op {
        ClosureOp::Union | ClosureOp::Concat => {
            let b = b.ok_or_else(|| Error::Param("operation needs two operands".into()))?;
            require_compatible(a, b)?;
            let lb = LaneNfa::from_def1(b)?;
            if op == ClosureOp::Union {
                union_lanes(&la, &lb)
            } else {
                concat_lanes(&la, &lb)
            }
        }
        ClosureOp::Star => star_lanes(&la),
        ClosureOp::Reverse => reverse_lanes(&la),
    };
    finish(m)
}

/// Existential projection of component `k` (zero-based).
pub fn project_tape(a: &MultiTapeAutomaton, k: usize) -> Result<MultiTapeAutomaton> {
    if a.tapes() < 2 || k >= a.tapes() {
        return Err(Error::Param(format!(
            "cannot project tape {} of a {}-tape machine",
            k + 1,
            a.tapes()
        )));
    }
    finish(project_lanes(&LaneNfa::from_def1(a)?, k))
}

/// Complement of a deterministic one-way machine.
///
/// Runs of zero-move transitions are collapsed first, so that every step of
/// the normalized machine moves a head and every run ends with all heads on
/// the right marker. Missing transitions go to the sink `#sink`, which
/// consumes the rest of the input. Acceptance is then swapped.
pub fn complement_det(a: &MultiTapeAutomaton) -> Result<MultiTapeAutomaton> {
    if !a.is_one_way() {
        return Err(Error::NotOneWay);
    }
    if !a.is_deterministic() {
        return Err(Error::NotDeterministic);
    }
    let n = a.tapes();
    let ext = a.alphabet().extended();
    let sink = format!("{GENERATED_PREFIX}sink");
    let mut tuples: Vec<Vec<Sym>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for t in &tuples {
            for &x in &ext {
                let mut v = t.clone();
                v.push(x);
                next.push(v);
            }
        }
        tuples = next;
    }
    let step = |q: &str, r: &[Sym]| a.targets(q, r).and_then(|ts| ts.iter().next().cloned());
    let mut out = MultiTapeAutomaton::new(a.alphabet().clone(), n, a.initial().clone());
    for q in a.states() {
        out.add_state(q.clone());
    }
    out.add_state(sink.clone());
    out.set_accepting(sink.clone());
    for r in &tuples {
        let all_end = r.iter().all(|&x| x == Sym::End);
        let sink_moves: Vec<i8> = r.iter().map(|&x| if x == Sym::End { 0 } else { 1 }).collect();
        if !all_end {
            out.add_transition(sink.clone(), r.clone(), sink.clone(), sink_moves.clone());
        }
        for q in a.states() {
            // follow zero-move steps under the fixed reads
            let mut cur = q.clone();
            let mut visited = vec![cur.clone()];
            let mut hits_final = a.is_accepting(&cur);
            let outcome = loop {
                match step(&cur, r) {
                    None => break None,
                    Some((p, d)) if d.iter().any(|&x| x != 0) => break Some((p, d)),
                    Some((p, _)) => {
                        if visited.contains(&p) {
                            break None;
                        }
                        hits_final |= a.is_accepting(&p);
                        visited.push(p.clone());
                        cur = p;
                    }
                }
            };
            if all_end {
                if !hits_final {
                    out.set_accepting(q.clone());
                }
                continue;
            }
            match outcome {
                Some((p, d)) => out.add_transition(q.clone(), r.clone(), p, d),
                None => out.add_transition(q.clone(), r.clone(), sink.clone(), sink_moves.clone()),
            }
        }
    }
    Ok(out)
}

/// A shortest accepted n-word of a taped automaton, if any.
pub fn taped_witness(b: &TapedAutomaton) -> Option<NWord> {
    lane_witness(&close_markers(&LaneNfa::from_taped(b)))
}

/// Breadth-first search for an accepted n-word over a marker-free machine.
fn lane_witness(m: &LaneNfa) -> Option<NWord> {
    let mut parent: Vec<Option<(usize, Label)>> = vec![None; m.len()];
    let mut seen = vec![false; m.len()];
    let mut queue = VecDeque::new();
    for &q in &m.initial {
        if !seen[q] {
            seen[q] = true;
            queue.push_back(q);
        }
    }
    while let Some(q) = queue.pop_front() {
        if m.accepting[q] {
            let mut labels = Vec::new();
            let mut cur = q;
            while let Some((p, l)) = parent[cur] {
                labels.push(l);
                cur = p;
            }
            labels.reverse();
            let mut comps = vec![Vec::new(); m.tapes];
            for l in labels {
                if let Label::Read(k, Sym::Letter(c)) = l {
                    comps[k].push(c);
                }
            }
            return Some(NWord::new(comps));
        }
        for &(l, p) in &m.edges[q] {
            if !seen[p] {
                seen[p] = true;
                parent[p] = Some((q, l));
                queue.push_back(p);
            }
        }
    }
    None
}

/// Emptiness of a one-way machine: tapes are projected away from the highest
/// index down to a single tape, whose emptiness is a reachability question.
/// A witness (an accepted n-word) is found by searching the machine itself.
pub fn decide_empty_async(a: &MultiTapeAutomaton) -> Result<Decision> {
    let mut m = LaneNfa::from_def1(a)?;
    while m.tapes > 1 {
        let k = m.tapes - 1;
        m = project_lanes(&m, k).eps_free().trim();
    }
    let empty = close_markers(&m).trim().initial.is_empty();
    let witness = if empty {
        None
    } else {
        let w = lane_witness(&close_markers(&LaneNfa::from_def1(a)?));
        debug_assert!(w.is_some());
        w
    };
    Ok(Decision {
        holds: empty,
        witness,
    })
}

/// Finiteness of a one-way machine: each component projection must be
/// finite, i.e. no cycle of useful states reads a letter.
pub fn decide_finite_async(a: &MultiTapeAutomaton) -> Result<bool> {
    let m = LaneNfa::from_def1(a)?;
    for k in 0..m.tapes {
        let mut p = m.clone();
        // drop every tape except k, highest index first
        for t in (0..m.tapes).rev() {
            if t != k {
                p = project_lanes(&p, t);
            }
        }
        if reads_on_cycle(&close_markers(&p).trim()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True when some cycle of the (trimmed) machine contains a letter read.
fn reads_on_cycle(m: &LaneNfa) -> bool {
    let scc = strongly_connected(m);
    (0..m.len()).any(|q| {
        m.edges[q]
            .iter()
            .any(|&(l, p)| matches!(l, Label::Read(_, Sym::Letter(_))) && scc[q] == scc[p])
    })
}

/// Component index per state (Tarjan, iterative).
fn strongly_connected(m: &LaneNfa) -> Vec<usize> {
    let n = m.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut counter = 0;
    let mut comps = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut work: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = work.last_mut() {
            if *i < m.edges[v].len() {
                let w = m.edges[v][*i].1;
                *i += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                work.pop();
                if let Some(&(u, _)) = work.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = comps;
                        if w == v {
                            break;
                        }
                    }
                    comps += 1;
                }
            }
        }
    }
    comp
}
