//! Exact membership for two-way machines by search over the configuration
//! graph of a fixed input.

use std::collections::{HashMap, VecDeque};

use crate::automaton::{MultiTapeAutomaton, StateId};
use crate::error::{Error, Result};
use crate::symbol::{NWord, Sym};

/// A machine state plus one head position per tape. Position 0 is the left
/// marker and `|x_k| + 1` the right marker.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub state: StateId,
    pub heads: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub accepted: bool,
    /// A shortest accepting run, present iff `accepted`.
    pub trace: Option<Vec<Configuration>>,
}

type Edge = (u32, Vec<i8>);

/// A machine compiled to dense state indices, reusable across many inputs.
#[derive(Debug, Clone)]
pub struct Simulator<'a> {
    machine: &'a MultiTapeAutomaton,
    names: Vec<&'a StateId>,
    initial: u32,
    accepting: Vec<bool>,
    delta: Vec<HashMap<Vec<Sym>, Vec<Edge>>>,
}

impl<'a> Simulator<'a> {
    pub fn new(machine: &'a MultiTapeAutomaton) -> Self {
        let names: Vec<&StateId> = machine.states().iter().collect();
        let index: HashMap<&str, u32> = names
            .iter()
            .enumerate()
            .map(|(i, q)| (q.as_str(), i as u32))
            .collect();
        let mut delta: Vec<HashMap<Vec<Sym>, Vec<Edge>>> = vec![HashMap::new(); names.len()];
        for (q, reads, p, moves) in machine.transitions() {
            delta[index[q.as_str()] as usize]
                .entry(reads.clone())
                .or_default()
                .push((index[p.as_str()], moves.clone()));
        }
        let accepting = names.iter().map(|q| machine.is_accepting(q)).collect();
        Simulator {
            machine,
            initial: index[machine.initial().as_str()],
            names,
            accepting,
            delta,
        }
    }

    fn check_input(&self, x: &NWord) -> Result<()> {
        if x.arity() != self.machine.tapes() {
            return Err(Error::Arity {
                expected: self.machine.tapes(),
                found: x.arity(),
            });
        }
        x.check_alphabet(self.machine.alphabet())
    }

    pub fn accepts(&self, x: &NWord) -> Result<bool> {
        self.check_input(x)?;
        Ok(self.search(x, false).is_some())
    }

    pub fn run(&self, x: &NWord) -> Result<Verdict> {
        self.check_input(x)?;
        let trace = self.search(x, true);
        Ok(Verdict {
            accepted: trace.is_some(),
            trace,
        })
    }

    /// Breadth-first search; returns the accepting run when one exists (empty
    /// vector when `want_trace` is false).
    fn search(&self, x: &NWord, want_trace: bool) -> Option<Vec<Configuration>> {
        let n = x.arity();
        let radix: Vec<usize> = x.components().iter().map(|w| w.len() + 2).collect();
        let per_state: usize = radix.iter().product();
        let total = per_state * self.names.len();
        let encode = |q: u32, heads: &[usize]| -> usize {
            let mut code = 0usize;
            for k in (0..n).rev() {
                code = code * radix[k] + heads[k];
            }
            q as usize * per_state + code
        };
        let symbol_at = |k: usize, i: usize| -> Sym {
            if i == 0 {
                Sym::Start
            } else if i == radix[k] - 1 {
                Sym::End
            } else {
                Sym::Letter(x.component(k)[i - 1])
            }
        };

        const UNSEEN: u32 = u32::MAX;
        let mut parent: Vec<u32> = vec![UNSEEN; total];
        let mut queue: VecDeque<(u32, Vec<usize>)> = VecDeque::new();
        let start = vec![0usize; n];
        let start_code = encode(self.initial, &start);
        parent[start_code] = start_code as u32;
        queue.push_back((self.initial, start));

        let mut reads = vec![Sym::Start; n];
        while let Some((q, heads)) = queue.pop_front() {
            let code = encode(q, &heads);
            let at_end = heads.iter().enumerate().all(|(k, &i)| i == radix[k] - 1);
            if at_end && self.accepting[q as usize] {
                if !want_trace {
                    return Some(Vec::new());
                }
                return Some(self.rebuild(code, &parent, per_state, &radix));
            }
            for k in 0..n {
                reads[k] = symbol_at(k, heads[k]);
            }
            let Some(edges) = self.delta[q as usize].get(&reads) else {
                continue;
            };
            for (p, moves) in edges {
                let mut next = heads.clone();
                let mut ok = true;
                for k in 0..n {
                    let i = next[k] as isize + moves[k] as isize;
                    if i < 0 || i >= radix[k] as isize {
                        ok = false;
                        break;
                    }
                    next[k] = i as usize;
                }
                if !ok {
                    continue;
                }
                let c = encode(*p, &next);
                if parent[c] == UNSEEN {
                    parent[c] = code as u32;
                    queue.push_back((*p, next));
                }
            }
        }
        None
    }

    fn rebuild(
        &self,
        mut code: usize,
        parent: &[u32],
        per_state: usize,
        radix: &[usize],
    ) -> Vec<Configuration> {
        let decode = |code: usize| -> Configuration {
            let q = code / per_state;
            let mut rest = code % per_state;
            let mut heads = Vec::with_capacity(radix.len());
            for &r in radix {
                heads.push(rest % r);
                rest /= r;
            }
            Configuration {
                state: self.names[q].clone(),
                heads,
            }
        };
        let mut out = vec![decode(code)];
        while parent[code] as usize != code {
            code = parent[code] as usize;
            out.push(decode(code));
        }
        out.reverse();
        out
    }
}

/// Accept/reject plus a shortest accepting trace.
pub fn simulate(machine: &MultiTapeAutomaton, x: &NWord) -> Result<Verdict> {
    Simulator::new(machine).run(x)
}

pub fn accepts(machine: &MultiTapeAutomaton, x: &NWord) -> Result<bool> {
    Simulator::new(machine).accepts(x)
}

/// Checks that `trace` is a run of `machine` on `x` ending in acceptance.
pub fn replay(machine: &MultiTapeAutomaton, x: &NWord, trace: &[Configuration]) -> bool {
    let Some(first) = trace.first() else {
        return false;
    };
    if first.state != *machine.initial() || first.heads.iter().any(|&i| i != 0) {
        return false;
    }
    for pair in trace.windows(2) {
        if !step_allowed(machine, x, &pair[0], &pair[1]) {
            return false;
        }
    }
    let last = trace.last().unwrap();
    machine.is_accepting(&last.state)
        && last
            .heads
            .iter()
            .enumerate()
            .all(|(k, &i)| i == x.component(k).len() + 1)
}

/// True when `to` follows from `from` by one transition on input `x`.
pub fn step_allowed(
    machine: &MultiTapeAutomaton,
    x: &NWord,
    from: &Configuration,
    to: &Configuration,
) -> bool {
    let reads: Vec<Sym> = from
        .heads
        .iter()
        .enumerate()
        .map(|(k, &i)| {
            let w = x.component(k);
            if i == 0 {
                Sym::Start
            } else if i == w.len() + 1 {
                Sym::End
            } else {
                Sym::Letter(w[i - 1])
            }
        })
        .collect();
    machine
        .targets(&from.state, &reads)
        .map(|ts| {
            ts.iter().any(|(p, d)| {
                *p == to.state
                    && from
                        .heads
                        .iter()
                        .zip(d)
                        .zip(&to.heads)
                        .all(|((&i, &m), &j)| i as isize + m as isize == j as isize)
            })
        })
        .unwrap_or(false)
}
