#![allow(dead_code)]
// Brute-force oracles shared by the integration tests. None of these call
// the constructions they are used to check.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use mta::nfa::Nfa;
use mta::sync::{encode_column, TrackAutomaton};
use mta::{Alphabet, MultiTapeAutomaton, NWord, Sym};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn sym_at(x: &NWord, k: usize, i: usize) -> Sym {
    let w = x.component(k);
    if i == 0 {
        Sym::Start
    } else if i == w.len() + 1 {
        Sym::End
    } else {
        Sym::Letter(w[i - 1])
    }
}

/// A random track automaton with at most `max_states` states.
pub fn random_track(alphabet: &Alphabet, arity: usize, max_states: usize, seed: u64) -> TrackAutomaton {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let symbols = mta::sync::column_count(alphabet, arity);
    let mut nfa = Nfa::new(symbols);
    let k = rng.gen_range(1..=max_states);
    for _ in 0..k {
        nfa.add_state(rng.gen_bool(0.5));
    }
    nfa.initial = vec![0];
    for q in 0..k {
        for a in 0..symbols {
            if rng.gen_bool(0.45) {
                nfa.add_edge(q, a, rng.gen_range(0..k));
            }
        }
    }
    TrackAutomaton::new(alphabet.clone(), arity, nfa).unwrap()
}

fn column(t: &TrackAutomaton, x: &NWord, i: usize, k: usize, c: Option<char>) -> u32 {
    let mut col: Vec<Option<char>> = x.components().iter().map(|w| w.get(i).copied()).collect();
    col.insert(k, c);
    encode_column(t.alphabet(), &col).unwrap()
}

fn choices(t: &TrackAutomaton, ended: bool, at_end: bool) -> Vec<(Option<char>, bool)> {
    let mut out = Vec::new();
    if !ended {
        out.extend(t.alphabet().symbols().iter().map(|&c| (Some(c), false)));
    }
    if !at_end {
        out.push((None, true));
    }
    out
}

/// Is there some w with x (w inserted at track k) accepted by t?
pub fn exists_completion(t: &TrackAutomaton, x: &NWord, k: usize) -> bool {
    let nfa = t.nfa();
    let l = x.max_len();
    let mut seen = HashSet::new();
    let mut queue: VecDeque<(usize, usize, bool)> = nfa.initial.iter().map(|&q| (0, q, false)).collect();
    while let Some((i, q, ended)) = queue.pop_front() {
        if !seen.insert((i, q, ended)) {
            continue;
        }
        if i >= l && nfa.accepting[q] {
            return true;
        }
        if i >= l && ended {
            continue;
        }
        for (c, e) in choices(t, ended, i >= l) {
            let code = column(t, x, i, k, c);
            for &(a, p) in &nfa.delta[q] {
                if a == code {
                    queue.push_back(((i + 1).min(l), p, e));
                }
            }
        }
    }
    false
}

/// Is x (w inserted at track k) accepted by t for every w?
pub fn forall_completion(t: &TrackAutomaton, x: &NWord, k: usize) -> bool {
    let nfa = t.nfa();
    let l = x.max_len();
    let start: BTreeSet<usize> = nfa.initial.iter().copied().collect();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([(0usize, start, false)]);
    while let Some((i, set, ended)) = queue.pop_front() {
        if !seen.insert((i, set.clone(), ended)) {
            continue;
        }
        if i >= l && !set.iter().any(|&q| nfa.accepting[q]) {
            return false;
        }
        if i >= l && ended {
            continue;
        }
        for (c, e) in choices(t, ended, i >= l) {
            let code = column(t, x, i, k, c);
            let next: BTreeSet<usize> = set
                .iter()
                .flat_map(|&q| nfa.delta[q].iter().filter(|&&(a, _)| a == code).map(|&(_, p)| p))
                .collect();
            queue.push_back(((i + 1).min(l), next, e));
        }
    }
    true
}

fn splits(x: &NWord) -> Vec<(NWord, NWord)> {
    let mut out = vec![(Vec::new(), Vec::new())];
    for w in x.components() {
        let mut next = Vec::new();
        for (u, v) in &out {
            for i in 0..=w.len() {
                let mut u2: Vec<Vec<char>> = u.clone();
                let mut v2: Vec<Vec<char>> = v.clone();
                u2.push(w[..i].to_vec());
                v2.push(w[i..].to_vec());
                next.push((u2, v2));
            }
        }
        out = next;
    }
    out.into_iter().map(|(u, v)| (NWord::new(u), NWord::new(v))).collect()
}

pub fn concat_member(l1: &HashSet<NWord>, l2: &HashSet<NWord>, x: &NWord) -> bool {
    splits(x).iter().any(|(u, v)| l1.contains(u) && l2.contains(v))
}

pub fn star_member(l: &HashSet<NWord>, x: &NWord, memo: &mut HashMap<NWord, bool>) -> bool {
    if x.max_len() == 0 {
        return true;
    }
    if let Some(&b) = memo.get(x) {
        return b;
    }
    let r = splits(x)
        .into_iter()
        .any(|(u, v)| u.max_len() > 0 && l.contains(&u) && star_member(l, &v, memo));
    memo.insert(x.clone(), r);
    r
}

/// Searches the runs of `m`, guessing each input cell when a head first
/// reaches it, for an accepted n-word with components of length at most
/// `bound` satisfying `goal`.
pub fn guided_search(m: &MultiTapeAutomaton, bound: usize, goal: impl Fn(&NWord) -> bool) -> Option<NWord> {
    let n = m.tapes();
    type Node = (String, Vec<usize>, Vec<Vec<char>>, Vec<bool>);
    let start: Node = (m.initial().clone(), vec![0; n], vec![Vec::new(); n], vec![false; n]);
    let mut seen: HashSet<Node> = HashSet::new();
    let mut stack = vec![start];
    while let Some(node) = stack.pop() {
        if !seen.insert(node.clone()) {
            continue;
        }
        let (q, heads, words, closed) = node;
        if m.is_accepting(&q) && (0..n).all(|k| heads[k] == words[k].len() + 1) {
            let x = NWord::new(words.clone());
            if goal(&x) {
                return Some(x);
            }
        }
        for (from, reads, to, moves) in m.transitions() {
            if *from != q {
                continue;
            }
            let mut w2 = words.clone();
            let mut c2 = closed.clone();
            let mut ok = true;
            for k in 0..n {
                let h = heads[k];
                let len = w2[k].len();
                let r = reads[k];
                ok = if h == 0 {
                    r == Sym::Start
                } else if h <= len {
                    r == Sym::Letter(w2[k][h - 1])
                } else if c2[k] {
                    r == Sym::End
                } else {
                    match r {
                        Sym::End => {
                            c2[k] = true;
                            true
                        }
                        Sym::Letter(c) if len < bound => {
                            w2[k].push(c);
                            true
                        }
                        _ => false,
                    }
                };
                if !ok {
                    break;
                }
            }
            if !ok {
                continue;
            }
            let h2: Vec<usize> = (0..n).map(|k| (heads[k] as i64 + moves[k] as i64) as usize).collect();
            stack.push((to.clone(), h2, w2, c2));
        }
    }
    None
}

/// Every configuration reachable on x keeps the heads not on the right
/// marker in the same column.
pub fn lockstep_on(m: &MultiTapeAutomaton, x: &NWord) -> bool {
    let n = m.tapes();
    let spread = |heads: &[usize]| {
        let live: Vec<usize> = (0..n).filter(|&k| heads[k] != x.component(k).len() + 1).map(|k| heads[k]).collect();
        live.iter().max().unwrap_or(&0) - live.iter().min().unwrap_or(&0)
    };
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([(m.initial().clone(), vec![0usize; n])]);
    while let Some((q, heads)) = queue.pop_front() {
        if !seen.insert((q.clone(), heads.clone())) {
            continue;
        }
        if spread(&heads) != 0 {
            return false;
        }
        let reads: Vec<Sym> = (0..n).map(|k| sym_at(x, k, heads[k])).collect();
        if let Some(ts) = m.targets(&q, &reads) {
            for (p, moves) in ts {
                let h2 = (0..n).map(|k| (heads[k] as i64 + moves[k] as i64) as usize).collect();
                queue.push_back((p.clone(), h2));
            }
        }
    }
    true
}
