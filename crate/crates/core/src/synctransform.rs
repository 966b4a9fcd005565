//! Bounded-delay machines: checking s-synchrony and converting to the
//! synchronous form.

use std::collections::{HashMap, VecDeque};

use crate::automaton::{MultiTapeAutomaton, StateId, GENERATED_PREFIX};
use crate::error::{Error, Result};
use crate::simulate::Configuration;
use crate::symbol::{NWord, Sym};

/// A state of the synchronized machine: a source state plus, per tape, the
/// symbols between the simulated head and the common head column.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BufferedState {
    pub base: StateId,
    pub buffers: Vec<Vec<Sym>>,
}

impl BufferedState {
    pub fn name(&self) -> String {
        let mut s = format!("{GENERATED_PREFIX}[{}", self.base);
        for b in &self.buffers {
            s.push('|');
            s.extend(b.iter().map(|x| x.to_char()));
        }
        s.push(']');
        s
    }
}

/// The largest number of states `synchronize` may produce for a machine
/// with `states` states, `tapes` tapes, `letters` letters and delay `s`:
/// `C * |Q| * |Σ_ext|^(n*s) * max(s,1) * |Σ_ext|` with `C` =
/// [`SYNCHRONIZE_SIZE_CONSTANT`].
pub fn synchronize_size_bound(states: usize, tapes: usize, letters: usize, s: usize) -> u128 {
    let ext = letters as u128 + 2;
    SYNCHRONIZE_SIZE_CONSTANT as u128
        * states as u128
        * ext.pow((tapes * s) as u32)
        * s.max(1) as u128
        * ext
}

/// Constant factor in [`synchronize_size_bound`]; buffers hold up to s+1
/// symbols rather than s, which the constant absorbs for small alphabets.
pub const SYNCHRONIZE_SIZE_CONSTANT: u64 = 4;

/// Converts an s-synchronized one-way machine into an equivalent synchronous
/// one.
///
/// All heads of the result share one column (except heads parked on the right
/// marker). The source heads trail behind it by at most s+1 cells; the cells
/// in between are kept in per-tape buffers. When a source head that is level
/// with the column moves, every head of the result advances and the symbols
/// it leaves behind are appended to the buffers of trailing tapes. Runs whose
/// delay exceeds the buffer size are dropped, so the result accepts a subset
/// of L(A) in general and exactly L(A) when A is s-synchronized. Determinism
/// is preserved.
pub fn synchronize(a: &MultiTapeAutomaton, s: usize) -> Result<MultiTapeAutomaton> {
    if a.tapes() == 0 {
        return Err(Error::Param("machine has no tapes".into()));
    }
    if !a.is_one_way() {
        return Err(Error::NotOneWay);
    }
    let n = a.tapes();
    let window = s + 1;
    let ext = a.alphabet().extended();
    let letters_and_end: Vec<Sym> = ext.iter().copied().filter(|&x| x != Sym::Start).collect();

    let start = BufferedState {
        base: a.initial().clone(),
        buffers: vec![Vec::new(); n],
    };
    let mut out = MultiTapeAutomaton::new(a.alphabet().clone(), n, start.name());
    let mut seen: HashMap<BufferedState, ()> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone(), ());
    queue.push_back(start);

    // column reads: all left markers at the start, otherwise letters and ends
    let mut columns: Vec<Vec<Sym>> = vec![vec![Sym::Start; n]];
    let mut partial: Vec<Vec<Sym>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &partial {
            for &x in &letters_and_end {
                let mut v = p.clone();
                v.push(x);
                next.push(v);
            }
        }
        partial = next;
    }
    columns.extend(partial);

    while let Some(st) = queue.pop_front() {
        let from = st.name();
        if a.is_accepting(&st.base) && st.buffers.iter().all(Vec::is_empty) {
            out.set_accepting(from.clone());
        }
        let at_start = st.buffers.iter().all(Vec::is_empty);
        for col in &columns {
            if col[0] == Sym::Start && !at_start {
                // left markers are only under the heads before the first move
                continue;
            }
            let reads: Vec<Sym> = (0..n)
                .map(|k| st.buffers[k].first().copied().unwrap_or(col[k]))
                .collect();
            let Some(targets) = a.targets(&st.base, &reads) else {
                continue;
            };
            for (p, d) in targets {
                let leader_moved = (0..n).any(|k| d[k] == 1 && st.buffers[k].is_empty());
                let mut buffers = st.buffers.clone();
                for k in 0..n {
                    if d[k] == 1 && !buffers[k].is_empty() {
                        buffers[k].remove(0);
                    }
                }
                let mut moves = vec![0i8; n];
                if leader_moved {
                    for k in 0..n {
                        if col[k] == Sym::End {
                            continue;
                        }
                        moves[k] = 1;
                        let level = st.buffers[k].is_empty();
                        if !(level && d[k] == 1) {
                            buffers[k].push(col[k]);
                        }
                    }
                }
                if buffers.iter().any(|b| b.len() > window) {
                    continue;
                }
                let next = BufferedState {
                    base: p.clone(),
                    buffers,
                };
                out.add_transition(from.clone(), col.clone(), next.name(), moves);
                if seen.insert(next.clone(), ()).is_none() {
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(out)
}

/// Result of an s-synchrony check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyncCheck {
    pub synchronized: bool,
    pub witness: Option<SyncWitness>,
}

/// An input and a run prefix on it whose last configuration has two heads,
/// neither on the right marker, more than s cells apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyncWitness {
    pub input: NWord,
    pub run: Vec<Configuration>,
}

/// Distance between the furthest-apart heads not on the right marker.
pub fn head_spread(x: &NWord, heads: &[usize]) -> usize {
    let live: Vec<usize> = heads
        .iter()
        .enumerate()
        .filter(|&(k, &i)| i != x.component(k).len() + 1)
        .map(|(_, &i)| i)
        .collect();
    match (live.iter().min(), live.iter().max()) {
        (Some(lo), Some(hi)) => hi - lo,
        _ => 0,
    }
}

/// Decides whether every run of the one-way machine `a`, on every input,
/// keeps the heads not on the right marker within `s` cells of each other.
///
/// The search runs over the source state, the symbol under each head (guessed
/// when the head moves onto a new cell) and the head offsets relative to the
/// rearmost live head. The first offset beyond `s` found in breadth-first
/// order yields a shortest violating run.
pub fn check_synchronized(a: &MultiTapeAutomaton, s: usize) -> Result<SyncCheck> {
    if !a.is_one_way() {
        return Err(Error::NotOneWay);
    }
    let n = a.tapes();
    let fresh: Vec<Sym> = a
        .alphabet()
        .extended()
        .into_iter()
        .filter(|&x| x != Sym::Start)
        .collect();

    // per node: parent index, transition moves, symbols guessed on arrival
    let mut parent: Vec<Option<(usize, Vec<i8>)>> = Vec::new();
    let mut nodes: Vec<Node> = Vec::new();
    let mut index: HashMap<Node, usize> = HashMap::new();
    let start = Node {
        q: a.initial().clone(),
        under: vec![Sym::Start; n],
        offset: vec![0; n],
    };
    index.insert(start.clone(), 0);
    nodes.push(start);
    parent.push(None);
    let mut queue = VecDeque::from([0usize]);

    while let Some(i) = queue.pop_front() {
        let node = nodes[i].clone();
        let Some(targets) = a.targets(&node.q, &node.under) else {
            continue;
        };
        for (p, d) in targets {
            let moved: Vec<usize> = (0..n).filter(|&k| d[k] == 1).collect();
            if moved.iter().any(|&k| node.under[k] == Sym::End) {
                continue;
            }
            // every assignment of fresh symbols to the moved heads
            let mut choices: Vec<Vec<Sym>> = vec![node.under.clone()];
            for &k in &moved {
                let mut next = Vec::new();
                for c in &choices {
                    for &x in &fresh {
                        let mut v = c.clone();
                        v[k] = x;
                        next.push(v);
                    }
                }
                choices = next;
            }
            for under in choices {
                let pos: Vec<usize> = (0..n).map(|k| node.offset[k] + d[k] as usize).collect();
                let live: Vec<usize> = (0..n).filter(|&k| under[k] != Sym::End).collect();
                let lo = live.iter().map(|&k| pos[k]).min().unwrap_or(0);
                let hi = live.iter().map(|&k| pos[k]).max().unwrap_or(0);
                let offset: Vec<usize> = (0..n)
                    .map(|k| if under[k] == Sym::End { 0 } else { pos[k] - lo })
                    .collect();
                let next = Node {
                    q: p.clone(),
                    under,
                    offset,
                };
                if index.contains_key(&next) {
                    continue;
                }
                let j = nodes.len();
                index.insert(next.clone(), j);
                nodes.push(next);
                parent.push(Some((i, d.clone())));
                if hi - lo > s {
                    let witness = rebuild_witness(a, &nodes, &parent, j);
                    return Ok(SyncCheck {
                        synchronized: false,
                        witness: Some(witness),
                    });
                }
                queue.push_back(j);
            }
        }
    }
    Ok(SyncCheck {
        synchronized: true,
        witness: None,
    })
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Node {
    q: StateId,
    under: Vec<Sym>,
    offset: Vec<usize>,
}

fn rebuild_witness(
    a: &MultiTapeAutomaton,
    nodes: &[Node],
    parent: &[Option<(usize, Vec<i8>)>],
    last: usize,
) -> SyncWitness {
    let n = a.tapes();
    let mut path = vec![last];
    while let Some((p, _)) = &parent[*path.last().unwrap()] {
        path.push(*p);
    }
    path.reverse();
    let mut heads = vec![0usize; n];
    let mut comps: Vec<Vec<char>> = vec![Vec::new(); n];
    let mut run = vec![Configuration {
        state: nodes[path[0]].q.clone(),
        heads: heads.clone(),
    }];
    for &j in &path[1..] {
        let (_, d) = parent[j].as_ref().unwrap();
        for k in 0..n {
            if d[k] == 1 {
                heads[k] += 1;
                if let Sym::Letter(c) = nodes[j].under[k] {
                    comps[k].push(c);
                }
            }
        }
        run.push(Configuration {
            state: nodes[j].q.clone(),
            heads: heads.clone(),
        });
    }
    SyncWitness {
        input: NWord::new(comps),
        run,
    }
}

/// Least s (at most |Q|-1) for which the deterministic one-way machine is
/// s-synchronized, or `None` when it is asynchronous.
pub fn check_synchronized_det(a: &MultiTapeAutomaton) -> Result<Option<usize>> {
    if !a.is_deterministic() {
        return Err(Error::NotDeterministic);
    }
    if !a.is_one_way() {
        return Err(Error::NotOneWay);
    }
    let q = a.states().len();
    for s in 0..q.max(1) {
        if check_synchronized(a, s)?.synchronized {
            return Ok(Some(s));
        }
    }
    Ok(None)
}
