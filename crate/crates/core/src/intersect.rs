//! Bounded intersection of one-way taped automata that may share some tapes.
//!
//! Each machine is advanced through *delayed states*: a state plus, per tape,
//! transitions already taken but whose symbols the composite has not yet
//! read. A composite state pairs one delayed state of each machine, requires
//! their delays on shared tapes to agree, and names the tape the composite
//! reads next. The construction need not terminate, so it is bounded by a
//! number of states and by a delay length.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::automaton::{StateId, GENERATED_PREFIX};
use crate::error::{Error, Result};
use crate::symbol::Sym;
use crate::taped::{TapeId, TapedAutomaton};

/// A transition `(source, symbol, target)` of a taped automaton.
pub type Transition = (StateId, Sym, StateId);

/// Transitions awaiting consumption on one tape, oldest first.
pub type Delay = Vec<Transition>;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DelayedState {
    pub state: StateId,
    /// One delay per tape of the machine, in tape order.
    pub delays: Vec<Delay>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompositeState {
    pub p: StateId,
    pub q: StateId,
    /// Index into the composite tape list.
    pub tape: usize,
    pub a_delays: Vec<Delay>,
    pub b_delays: Vec<Delay>,
}

impl CompositeState {
    pub fn max_delay(&self) -> usize {
        self.a_delays
            .iter()
            .chain(&self.b_delays)
            .map(Vec::len)
            .max()
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntersectStatus {
    Complete,
    TruncatedStates,
    TruncatedDelay,
}

impl fmt::Display for IntersectStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IntersectStatus::Complete => "complete",
            IntersectStatus::TruncatedStates => "truncated_states",
            IntersectStatus::TruncatedDelay => "truncated_delay",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IntersectStats {
    /// Distinct composite states generated, processed or not.
    pub states_created: usize,
    /// Composite states kept in the result.
    pub states_processed: usize,
    /// Longest delay (in transitions) of any generated composite.
    pub max_delay_observed: usize,
    /// Composite states dropped for exceeding the delay bound.
    pub skipped_delay: usize,
}

#[derive(Debug, Clone)]
pub struct IntersectionResult {
    pub automaton: TapedAutomaton,
    pub status: IntersectStatus,
    pub stats: IntersectStats,
    /// The composite behind each result state `#c{i}`.
    pub composites: Vec<CompositeState>,
    pub max_states: usize,
    pub max_delay: usize,
}

/// True when the symbols of one delay are a prefix of the other's.
pub fn cons(h: &[Transition], k: &[Transition]) -> bool {
    h.iter().zip(k).all(|(x, y)| x.1 == y.1)
}

/// Delayed states reachable from `q`: `q` itself with no delay, and for every
/// other tape, the endpoints of all shortest paths that stop at the first
/// state owned by that tape. The path's transitions are filed under the tape
/// of their source state.
pub fn async_next(d: &TapedAutomaton, q: &str) -> Result<BTreeSet<DelayedState>> {
    let tau = |x: &str| d.tape_index(d.tape_of(x).unwrap()).unwrap();
    if !d.states().contains(q) {
        return Err(Error::UnknownState(q.to_string()));
    }
    let t = d.tapes().len();
    let mut out = BTreeSet::new();
    out.insert(DelayedState {
        state: q.to_string(),
        delays: vec![Vec::new(); t],
    });
    let mut succ: BTreeMap<&str, Vec<(&Sym, &str)>> = BTreeMap::new();
    for (x, s, y) in d.transitions() {
        succ.entry(x.as_str()).or_default().push((s, y.as_str()));
    }
    let own = tau(q);
    for ti in 0..t {
        if ti == own {
            continue;
        }
        // breadth-first layers; states on tape ti end a path
        let mut dist: HashMap<&str, usize> = HashMap::new();
        let mut preds: HashMap<&str, Vec<Transition>> = HashMap::new();
        let mut queue = VecDeque::new();
        dist.insert(q, 0);
        queue.push_back(q);
        while let Some(x) = queue.pop_front() {
            if x != q && tau(x) == ti {
                continue;
            }
            let dx = dist[x];
            for &(s, y) in succ.get(x).map(Vec::as_slice).unwrap_or(&[]) {
                match dist.get(y) {
                    None => {
                        dist.insert(y, dx + 1);
                        preds.entry(y).or_default().push((x.to_string(), *s, y.to_string()));
                        queue.push_back(y);
                    }
                    Some(&dy) if dy == dx + 1 => {
                        preds.entry(y).or_default().push((x.to_string(), *s, y.to_string()));
                    }
                    _ => {}
                }
            }
        }
        let mut targets: Vec<&str> = dist
            .keys()
            .copied()
            .filter(|&y| y != q && tau(y) == ti)
            .collect();
        targets.sort_unstable();
        for target in targets {
            for path in shortest_paths(q, target, &preds) {
                let mut delays = vec![Vec::new(); t];
                for e in path {
                    delays[tau(&e.0)].push(e);
                }
                out.insert(DelayedState {
                    state: target.to_string(),
                    delays,
                });
            }
        }
    }
    Ok(out)
}

fn shortest_paths(
    from: &str,
    to: &str,
    preds: &HashMap<&str, Vec<Transition>>,
) -> Vec<Vec<Transition>> {
    if to == from {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for e in preds.get(to).map(Vec::as_slice).unwrap_or(&[]) {
        for mut p in shortest_paths(from, &e.0, preds) {
            p.push(e.clone());
            out.push(p);
        }
    }
    out
}

struct Ctx<'a> {
    a: &'a TapedAutomaton,
    b: &'a TapedAutomaton,
    tapes: Vec<TapeId>,
    /// Per composite tape: its index in A and in B, if any.
    in_a: Vec<Option<usize>>,
    in_b: Vec<Option<usize>>,
    next_a: HashMap<StateId, BTreeSet<DelayedState>>,
    next_b: HashMap<StateId, BTreeSet<DelayedState>>,
    seen: BTreeSet<CompositeState>,
    processed: BTreeMap<CompositeState, usize>,
    stack: Vec<CompositeState>,
    delta: BTreeSet<(CompositeState, Sym, CompositeState)>,
    stats: IntersectStats,
}

impl<'a> Ctx<'a> {
    fn next_a(&mut self, q: &str) -> BTreeSet<DelayedState> {
        if !self.next_a.contains_key(q) {
            let v = async_next(self.a, q).expect("state of A");
            self.next_a.insert(q.to_string(), v);
        }
        self.next_a[q].clone()
    }

    fn next_b(&mut self, q: &str) -> BTreeSet<DelayedState> {
        if !self.next_b.contains_key(q) {
            let v = async_next(self.b, q).expect("state of B");
            self.next_b.insert(q.to_string(), v);
        }
        self.next_b[q].clone()
    }

    /// Consistent compositions, one per composite tape; unseen ones are
    /// pushed on the work stack.
    fn new_states(
        &mut self,
        p_set: &BTreeSet<DelayedState>,
        q_set: &BTreeSet<DelayedState>,
    ) -> BTreeSet<CompositeState> {
        let mut s = BTreeSet::new();
        for x in p_set {
            for y in q_set {
                let consistent = (0..self.tapes.len()).all(|t| match (self.in_a[t], self.in_b[t]) {
                    (Some(i), Some(j)) => cons(&x.delays[i], &y.delays[j]),
                    _ => true,
                });
                if !consistent {
                    continue;
                }
                for t in 0..self.tapes.len() {
                    s.insert(CompositeState {
                        p: x.state.clone(),
                        q: y.state.clone(),
                        tape: t,
                        a_delays: x.delays.clone(),
                        b_delays: y.delays.clone(),
                    });
                }
            }
        }
        for r in &s {
            if !self.processed.contains_key(r) {
                if self.seen.insert(r.clone()) {
                    self.stats.states_created += 1;
                    self.stats.max_delay_observed =
                        self.stats.max_delay_observed.max(r.max_delay());
                }
                self.stack.push(r.clone());
            }
        }
        s
    }

    #[allow(clippy::too_many_arguments)]
    fn compose_transition(
        &mut self,
        p_set: &BTreeSet<DelayedState>,
        q_set: &BTreeSet<DelayedState>,
        dh: &[Delay],
        dk: &[Delay],
        sigma: Sym,
        r: &CompositeState,
    ) {
        let prefix = |set: &BTreeSet<DelayedState>, d: &[Delay]| -> BTreeSet<DelayedState> {
            set.iter()
                .map(|x| DelayedState {
                    state: x.state.clone(),
                    delays: d
                        .iter()
                        .zip(&x.delays)
                        .map(|(pre, rest)| pre.iter().chain(rest).cloned().collect())
                        .collect(),
                })
                .collect()
        };
        let ja = prefix(p_set, dh);
        let jb = prefix(q_set, dk);
        for r2 in self.new_states(&ja, &jb) {
            self.delta.insert((r.clone(), sigma, r2));
        }
    }

    /// Sets of next delayed states after a normal transition on `sym` from
    /// `q` on tape `t` of machine A (`side_a`) or B.
    fn normal(&mut self, side_a: bool, q: &str, t: usize, sym: Sym) -> BTreeSet<DelayedState> {
        let d = if side_a { self.a } else { self.b };
        if d.tape_index(d.tape_of(q).unwrap()) != Some(t) {
            return BTreeSet::new();
        }
        let targets: Vec<StateId> = d
            .transitions()
            .iter()
            .filter(|(x, s, _)| x == q && *s == sym)
            .map(|(_, _, y)| y.clone())
            .collect();
        let mut out = BTreeSet::new();
        for y in targets {
            let next = if side_a { self.next_a(&y) } else { self.next_b(&y) };
            out.extend(next);
        }
        out
    }

    fn step(&mut self, r: &CompositeState) {
        let t = r.tape;
        let mut symbols: Vec<Sym> = self
            .a
            .alphabet()
            .symbols()
            .iter()
            .map(|&c| Sym::Letter(c))
            .collect();
        symbols.push(Sym::End);
        let stay_a = || {
            BTreeSet::from([DelayedState {
                state: r.p.clone(),
                delays: vec![Vec::new(); r.a_delays.len()],
            }])
        };
        let stay_b = || {
            BTreeSet::from([DelayedState {
                state: r.q.clone(),
                delays: vec![Vec::new(); r.b_delays.len()],
            }])
        };
        match (self.in_a[t], self.in_b[t]) {
            (Some(i), Some(j)) => {
                let h = &r.a_delays[i];
                let k = &r.b_delays[j];
                match (h.first(), k.first()) {
                    (Some(x), Some(y)) if x.1 == y.1 => {
                        let p = self.next_a(&r.p);
                        let q = self.next_b(&r.q);
                        let mut dh = r.a_delays.clone();
                        dh[i].remove(0);
                        let mut dk = r.b_delays.clone();
                        dk[j].remove(0);
                        self.compose_transition(&p, &q, &dh, &dk, x.1, r);
                    }
                    (Some(x), None) => {
                        let p = self.next_a(&r.p);
                        let q = self.normal(false, &r.q, j, x.1);
                        let mut dh = r.a_delays.clone();
                        dh[i].remove(0);
                        self.compose_transition(&p, &q, &dh, &r.b_delays, x.1, r);
                    }
                    (None, Some(y)) => {
                        let q = self.next_b(&r.q);
                        let p = self.normal(true, &r.p, i, y.1);
                        let mut dk = r.b_delays.clone();
                        dk[j].remove(0);
                        self.compose_transition(&p, &q, &r.a_delays, &dk, y.1, r);
                    }
                    (None, None) => {
                        for &sigma in &symbols {
                            let p = self.normal(true, &r.p, i, sigma);
                            let q = self.normal(false, &r.q, j, sigma);
                            self.compose_transition(&p, &q, &r.a_delays, &r.b_delays, sigma, r);
                        }
                    }
                    _ => {}
                }
            }
            (Some(i), None) => {
                let q = stay_b();
                if let Some(x) = r.a_delays[i].first() {
                    let p = self.next_a(&r.p);
                    let mut dh = r.a_delays.clone();
                    let sigma = x.1;
                    dh[i].remove(0);
                    self.compose_transition(&p, &q, &dh, &r.b_delays, sigma, r);
                } else {
                    for &sigma in &symbols {
                        let p = self.normal(true, &r.p, i, sigma);
                        self.compose_transition(&p, &q, &r.a_delays, &r.b_delays, sigma, r);
                    }
                }
            }
            (None, Some(j)) => {
                let p = stay_a();
                if let Some(y) = r.b_delays[j].first() {
                    let q = self.next_b(&r.q);
                    let mut dk = r.b_delays.clone();
                    let sigma = y.1;
                    dk[j].remove(0);
                    self.compose_transition(&p, &q, &r.a_delays, &dk, sigma, r);
                } else {
                    for &sigma in &symbols {
                        let q = self.normal(false, &r.q, j, sigma);
                        self.compose_transition(&p, &q, &r.a_delays, &r.b_delays, sigma, r);
                    }
                }
            }
            (None, None) => unreachable!("composite tapes come from A or B"),
        }
    }
}

/// A composite accepts when both components accept and every pending delay
/// only tests for the end of its tape.
fn is_accepting(a: &TapedAutomaton, b: &TapedAutomaton, r: &CompositeState) -> bool {
    a.is_accepting(&r.p)
        && b.is_accepting(&r.q)
        && r.a_delays
            .iter()
            .chain(&r.b_delays)
            .flatten()
            .all(|e| e.1 == Sym::End)
}

/// Intersects two taped automata. The composite reads the union of their
/// tapes (A's tapes first, then B's remaining ones). Work proceeds from a
/// stack; a popped state whose delays exceed `max_delay` is dropped, and the
/// loop stops once `max_states` states have been processed. The result always
/// accepts a subset of L(A) ∩ L(B), and all of it when the status is
/// complete.
pub fn intersect(
    a: &TapedAutomaton,
    b: &TapedAutomaton,
    max_states: usize,
    max_delay: usize,
) -> Result<IntersectionResult> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if max_states == 0 {
        return Err(Error::Bound("max_states must be at least 1".into()));
    }
    let mut tapes: Vec<TapeId> = a.tapes().to_vec();
    for t in b.tapes() {
        if !tapes.contains(t) {
            tapes.push(t.clone());
        }
    }
    let in_a = tapes.iter().map(|t| a.tape_index(t)).collect();
    let in_b = tapes.iter().map(|t| b.tape_index(t)).collect();
    let mut ctx = Ctx {
        a,
        b,
        tapes: tapes.clone(),
        in_a,
        in_b,
        next_a: HashMap::new(),
        next_b: HashMap::new(),
        seen: BTreeSet::new(),
        processed: BTreeMap::new(),
        stack: Vec::new(),
        delta: BTreeSet::new(),
        stats: IntersectStats::default(),
    };

    let mut ja = BTreeSet::new();
    for i in a.initial() {
        ja.extend(ctx.next_a(i));
    }
    let mut jb = BTreeSet::new();
    for i in b.initial() {
        jb.extend(ctx.next_b(i));
    }
    let initial = ctx.new_states(&ja, &jb);

    let mut order: Vec<CompositeState> = Vec::new();
    while !ctx.stack.is_empty() && order.len() < max_states {
        let r = ctx.stack.pop().unwrap();
        if ctx.processed.contains_key(&r) {
            continue;
        }
        if r.max_delay() > max_delay {
            ctx.stats.skipped_delay += 1;
            continue;
        }
        ctx.processed.insert(r.clone(), order.len());
        order.push(r.clone());
        ctx.step(&r);
    }
    // stale stack entries may already have been processed
    ctx.stack.retain(|r| !ctx.processed.contains_key(r));
    let status = if !ctx.stack.is_empty() {
        IntersectStatus::TruncatedStates
    } else if ctx.stats.skipped_delay > 0 {
        IntersectStatus::TruncatedDelay
    } else {
        IntersectStatus::Complete
    };
    ctx.stats.states_processed = order.len();

    let name = |i: usize| format!("{GENERATED_PREFIX}c{i}");
    let mut c = TapedAutomaton::new(a.alphabet().clone(), tapes.clone());
    for (i, r) in order.iter().enumerate() {
        c.add_state(name(i), tapes[r.tape].clone())?;
        if is_accepting(a, b, r) {
            c.set_accepting(&name(i))?;
        }
        if initial.contains(r) {
            c.set_initial(&name(i))?;
        }
    }
    for (r, s, r2) in &ctx.delta {
        if let (Some(&i), Some(&j)) = (ctx.processed.get(r), ctx.processed.get(r2)) {
            c.add_transition(&name(i), *s, &name(j))?;
        }
    }
    Ok(IntersectionResult {
        automaton: c,
        status,
        stats: ctx.stats,
        composites: order,
        max_states,
        max_delay,
    })
}

/// Human-readable summary of an intersection run.
pub fn intersect_report(r: &IntersectionResult) -> String {
    let mut s = String::new();
    s.push_str(&format!("status: {}\n", r.status));
    match r.status {
        IntersectStatus::Complete => {
            s.push_str("the result accepts exactly the intersection\n");
        }
        IntersectStatus::TruncatedStates => s.push_str(&format!(
            "stopped at the state bound ({}); the result accepts a subset of the intersection\n",
            r.max_states
        )),
        IntersectStatus::TruncatedDelay => s.push_str(&format!(
            "{} states exceeded the delay bound ({}); the result accepts a subset of the intersection\n",
            r.stats.skipped_delay, r.max_delay
        )),
    }
    s.push_str(&format!("states created: {}\n", r.stats.states_created));
    s.push_str(&format!("states kept: {}\n", r.stats.states_processed));
    s.push_str(&format!("max delay observed: {}\n", r.stats.max_delay_observed));
    s.push_str(&format!(
        "transitions: {}\n",
        r.automaton.transitions().len()
    ));
    if r.automaton.accepting().is_empty() {
        s.push_str("no accepting state: the computed language is empty\n");
    }
    s
}
