//! Plain finite automata over a dense symbol range `0..symbols`.

use std::collections::{BTreeMap, HashMap, VecDeque};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    pub symbols: u32,
    pub initial: Vec<usize>,
    pub accepting: Vec<bool>,
    pub delta: Vec<Vec<(u32, usize)>>,
}

/// A complete deterministic automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    pub symbols: u32,
    pub initial: usize,
    pub accepting: Vec<bool>,
    /// `next[q * symbols + a]`
    pub next: Vec<usize>,
}

impl Nfa {
    pub fn new(symbols: u32) -> Self {
        Nfa {
            symbols,
            initial: Vec::new(),
            accepting: Vec::new(),
            delta: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.accepting.len()
    }

    pub fn is_empty_machine(&self) -> bool {
        self.accepting.is_empty()
    }

    pub fn add_state(&mut self, accepting: bool) -> usize {
        self.accepting.push(accepting);
        self.delta.push(Vec::new());
        self.accepting.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, a: u32, to: usize) {
        if !self.delta[from].contains(&(a, to)) {
            self.delta[from].push((a, to));
        }
    }

    pub fn edge_count(&self) -> usize {
        self.delta.iter().map(Vec::len).sum()
    }

    pub fn accepts(&self, word: &[u32]) -> bool {
        let mut cur = vec![false; self.len()];
        for &q in &self.initial {
            cur[q] = true;
        }
        for &a in word {
            let mut next = vec![false; self.len()];
            for q in 0..self.len() {
                if cur[q] {
                    for &(b, p) in &self.delta[q] {
                        if b == a {
                            next[p] = true;
                        }
                    }
                }
            }
            cur = next;
        }
        (0..self.len()).any(|q| cur[q] && self.accepting[q])
    }

    /// Subset construction over reachable subsets; the empty subset is kept
    /// as a sink so the result is complete.
    pub fn determinize(&self) -> Dfa {
        let k = self.symbols as usize;
        let mut start: Vec<usize> = self.initial.clone();
        start.sort_unstable();
        start.dedup();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        let mut next: Vec<usize> = Vec::new();
        index.insert(start.clone(), 0);
        subsets.push(start);
        let mut i = 0;
        while i < subsets.len() {
            let mut by_sym: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
            for &q in &subsets[i] {
                for &(a, p) in &self.delta[q] {
                    by_sym.entry(a).or_default().push(p);
                }
            }
            for a in 0..self.symbols {
                let mut t = by_sym.remove(&a).unwrap_or_default();
                t.sort_unstable();
                t.dedup();
                let j = match index.get(&t) {
                    Some(&j) => j,
                    None => {
                        index.insert(t.clone(), subsets.len());
                        subsets.push(t);
                        subsets.len() - 1
                    }
                };
                next.push(j);
            }
            i += 1;
        }
        debug_assert_eq!(next.len(), subsets.len() * k);
        let accepting = subsets
            .iter()
            .map(|s| s.iter().any(|&q| self.accepting[q]))
            .collect();
        Dfa {
            symbols: self.symbols,
            initial: 0,
            accepting,
            next,
        }
    }

    /// Disjoint union.
    pub fn union(&self, other: &Nfa) -> Nfa {
        assert_eq!(self.symbols, other.symbols);
        let off = self.len();
        let mut m = self.clone();
        m.accepting.extend(&other.accepting);
        for edges in &other.delta {
            m.delta.push(edges.iter().map(|&(a, p)| (a, p + off)).collect());
        }
        m.initial.extend(other.initial.iter().map(|q| q + off));
        m
    }

    /// Reachable part of the product automaton.
    pub fn intersect(&self, other: &Nfa) -> Nfa {
        assert_eq!(self.symbols, other.symbols);
        let mut m = Nfa::new(self.symbols);
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for &p in &self.initial {
            for &q in &other.initial {
                if !index.contains_key(&(p, q)) {
                    let i = m.add_state(self.accepting[p] && other.accepting[q]);
                    index.insert((p, q), i);
                    m.initial.push(i);
                    queue.push_back((p, q));
                }
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            let src = index[&(p, q)];
            for &(a, p2) in &self.delta[p] {
                for &(b, q2) in &other.delta[q] {
                    if a != b {
                        continue;
                    }
                    let dst = match index.get(&(p2, q2)) {
                        Some(&i) => i,
                        None => {
                            let i = m.add_state(self.accepting[p2] && other.accepting[q2]);
                            index.insert((p2, q2), i);
                            queue.push_back((p2, q2));
                            i
                        }
                    };
                    m.add_edge(src, a, dst);
                }
            }
        }
        m
    }

    /// A shortest accepted word, by breadth-first search.
    pub fn shortest_accepted(&self) -> Option<Vec<u32>> {
        let mut parent: Vec<Option<(usize, u32)>> = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::new();
        for &q in &self.initial {
            if !seen[q] {
                seen[q] = true;
                queue.push_back(q);
            }
        }
        while let Some(q) = queue.pop_front() {
            if self.accepting[q] {
                let mut word = Vec::new();
                let mut cur = q;
                while let Some((p, a)) = parent[cur] {
                    word.push(a);
                    cur = p;
                }
                word.reverse();
                return Some(word);
            }
            let mut edges = self.delta[q].clone();
            edges.sort_unstable();
            for (a, p) in edges {
                if !seen[p] {
                    seen[p] = true;
                    parent[p] = Some((q, a));
                    queue.push_back(p);
                }
            }
        }
        None
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_accepted().is_none()
    }

    /// States that are reachable and co-reachable.
    pub fn useful(&self) -> Vec<bool> {
        let n = self.len();
        let mut fwd = vec![false; n];
        let mut stack: Vec<usize> = self.initial.clone();
        for &q in &stack {
            fwd[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &(_, p) in &self.delta[q] {
                if !fwd[p] {
                    fwd[p] = true;
                    stack.push(p);
                }
            }
        }
        let mut rev = vec![Vec::new(); n];
        for q in 0..n {
            for &(_, p) in &self.delta[q] {
                rev[p].push(q);
            }
        }
        let mut bwd = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&q| self.accepting[q]).collect();
        for &q in &stack {
            bwd[q] = true;
        }
        while let Some(p) = stack.pop() {
            for &q in &rev[p] {
                if !bwd[q] {
                    bwd[q] = true;
                    stack.push(q);
                }
            }
        }
        (0..n).map(|q| fwd[q] && bwd[q]).collect()
    }

    /// Finite iff no cycle passes through a useful state.
    pub fn is_finite(&self) -> bool {
        let useful = self.useful();
        let n = self.len();
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut color = vec![0u8; n];
        for root in 0..n {
            if !useful[root] || color[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            color[root] = 1;
            while let Some(&mut (q, ref mut i)) = stack.last_mut() {
                if *i < self.delta[q].len() {
                    let p = self.delta[q][*i].1;
                    *i += 1;
                    if !useful[p] {
                        continue;
                    }
                    match color[p] {
                        0 => {
                            color[p] = 1;
                            stack.push((p, 0));
                        }
                        1 => return false,
                        _ => {}
                    }
                } else {
                    color[q] = 2;
                    stack.pop();
                }
            }
        }
        true
    }

    /// Restriction to useful states, renumbered in order.
    pub fn trim(&self) -> Nfa {
        let useful = self.useful();
        let mut map = vec![usize::MAX; self.len()];
        let mut m = Nfa::new(self.symbols);
        for q in 0..self.len() {
            if useful[q] {
                map[q] = m.add_state(self.accepting[q]);
            }
        }
        for q in 0..self.len() {
            if !useful[q] {
                continue;
            }
            for &(a, p) in &self.delta[q] {
                if useful[p] {
                    m.add_edge(map[q], a, map[p]);
                }
            }
        }
        m.initial = self
            .initial
            .iter()
            .filter(|&&q| useful[q])
            .map(|&q| map[q])
            .collect();
        m.initial.sort_unstable();
        m.initial.dedup();
        m
    }

    /// Automaton for the reversed language.
    pub fn reverse(&self) -> Nfa {
        let mut m = Nfa::new(self.symbols);
        for q in 0..self.len() {
            m.add_state(self.initial.contains(&q));
        }
        for q in 0..self.len() {
            for &(a, p) in &self.delta[q] {
                m.add_edge(p, a, q);
            }
        }
        m.initial = (0..self.len()).filter(|&q| self.accepting[q]).collect();
        m
    }
}

impl Dfa {
    pub fn len(&self) -> usize {
        self.accepting.len()
    }

    pub fn is_empty_machine(&self) -> bool {
        self.accepting.is_empty()
    }

    pub fn step(&self, q: usize, a: u32) -> usize {
        self.next[q * self.symbols as usize + a as usize]
    }

    pub fn accepts(&self, word: &[u32]) -> bool {
        let q = word.iter().fold(self.initial, |q, &a| self.step(q, a));
        self.accepting[q]
    }

    pub fn complement(&self) -> Dfa {
        let mut d = self.clone();
        for f in d.accepting.iter_mut() {
            *f = !*f;
        }
        d
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut m = Nfa::new(self.symbols);
        for &f in &self.accepting {
            m.add_state(f);
        }
        for q in 0..self.len() {
            for a in 0..self.symbols {
                m.add_edge(q, a, self.step(q, a));
            }
        }
        m.initial = vec![self.initial];
        m
    }
}
