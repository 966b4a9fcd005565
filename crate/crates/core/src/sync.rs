//! Synchronous machines as single-tape automata over the padded n-track
//! alphabet, and the closure operations and decision procedures that follow.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use crate::asyncalg::{async_closure, ClosureOp};
use crate::automaton::{MultiTapeAutomaton, GENERATED_PREFIX};
use crate::error::{Error, Result};
use crate::nfa::{Dfa, Nfa};
use crate::symbol::{Alphabet, NWord, Sym};
use crate::synctransform::check_synchronized;
use crate::words::{convolve, deconvolve, Column, PaddedWord};

/// A one-way single-tape automaton over (Σ∪{□})^n. Its language never
/// contains ill-padded words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackAutomaton {
    alphabet: Alphabet,
    arity: usize,
    nfa: Nfa,
}

/// Number of column symbols, including the ill-formed all-pad column.
pub fn column_count(alphabet: &Alphabet, arity: usize) -> u32 {
    ((alphabet.len() + 1) as u32).pow(arity as u32)
}

/// Columns are numbered in mixed radix with track 1 most significant; the pad
/// is digit 0 and letter i is digit i+1.
pub fn encode_column(alphabet: &Alphabet, col: &[Option<char>]) -> Result<u32> {
    let base = alphabet.len() as u32 + 1;
    let mut code = 0u32;
    for s in col {
        let digit = match s {
            None => 0,
            Some(c) => match alphabet.symbols().iter().position(|x| x == c) {
                Some(i) => i as u32 + 1,
                None => return Err(Error::ForeignSymbol { symbol: *c }),
            },
        };
        code = code * base + digit;
    }
    Ok(code)
}

pub fn decode_column(alphabet: &Alphabet, arity: usize, mut code: u32) -> Column {
    let base = alphabet.len() as u32 + 1;
    let mut col = vec![None; arity];
    for k in (0..arity).rev() {
        let d = code % base;
        code /= base;
        col[k] = if d == 0 {
            None
        } else {
            Some(alphabet.symbols()[d as usize - 1])
        };
    }
    col
}

type CacheKey = (Alphabet, usize);

/// The padding-validity automaton, built once per (Σ, n).
pub fn padding_validity(alphabet: &Alphabet, arity: usize) -> Arc<Dfa> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<Dfa>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (alphabet.clone(), arity);
    if let Some(d) = cache.lock().unwrap().get(&key) {
        return d.clone();
    }
    let d = Arc::new(build_validity(alphabet, arity));
    cache.lock().unwrap().entry(key).or_insert(d).clone()
}

fn build_validity(alphabet: &Alphabet, arity: usize) -> Dfa {
    // state = bitmask of padded tracks; 2^n is the dead state
    let masks = 1usize << arity;
    let symbols = column_count(alphabet, arity);
    let dead = masks;
    let mut next = Vec::with_capacity((masks + 1) * symbols as usize);
    for mask in 0..=masks {
        for a in 0..symbols {
            if mask == dead {
                next.push(dead);
                continue;
            }
            let col = decode_column(alphabet, arity, a);
            let mut m = mask;
            let mut ok = col.iter().any(Option::is_some);
            for (k, s) in col.iter().enumerate() {
                match s {
                    None => m |= 1 << k,
                    Some(_) if mask & (1 << k) != 0 => ok = false,
                    Some(_) => {}
                }
            }
            next.push(if ok { m } else { dead });
        }
    }
    let mut accepting = vec![true; masks + 1];
    accepting[dead] = false;
    Dfa {
        symbols,
        initial: 0,
        accepting,
        next,
    }
}

impl TrackAutomaton {
    /// Wraps `nfa`, discarding every ill-padded word from its language.
    pub fn new(alphabet: Alphabet, arity: usize, nfa: Nfa) -> Result<Self> {
        let symbols = column_count(&alphabet, arity);
        if nfa.symbols != symbols {
            return Err(Error::Invalid(format!(
                "track automaton has {} column symbols, expected {symbols}",
                nfa.symbols
            )));
        }
        let valid = padding_validity(&alphabet, arity).to_nfa();
        Ok(TrackAutomaton {
            nfa: nfa.intersect(&valid).trim(),
            alphabet,
            arity,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn nfa(&self) -> &Nfa {
        &self.nfa
    }

    pub fn states(&self) -> usize {
        self.nfa.len()
    }

    pub fn encode(&self, w: &PaddedWord) -> Result<Vec<u32>> {
        w.columns()
            .iter()
            .map(|c| encode_column(&self.alphabet, c))
            .collect()
    }

    pub fn decode(&self, word: &[u32]) -> PaddedWord {
        PaddedWord::new(
            self.arity,
            word.iter()
                .map(|&a| decode_column(&self.alphabet, self.arity, a))
                .collect(),
        )
    }

    pub fn accepts_padded(&self, w: &PaddedWord) -> Result<bool> {
        if w.arity() != self.arity {
            return Err(Error::Arity {
                expected: self.arity,
                found: w.arity(),
            });
        }
        Ok(self.nfa.accepts(&self.encode(w)?))
    }

    /// Membership of `x` in the relation, i.e. of its convolution.
    pub fn accepts(&self, x: &NWord) -> Result<bool> {
        x.check_alphabet(&self.alphabet)?;
        self.accepts_padded(&convolve(x))
    }

    pub fn is_empty(&self) -> bool {
        self.nfa.is_empty()
    }

    /// A member with shortest convolution.
    pub fn shortest_member(&self) -> Option<NWord> {
        let w = self.nfa.shortest_accepted()?;
        Some(deconvolve(&self.decode(&w)).expect("track automata accept only valid paddings"))
    }

    pub fn complement(&self) -> TrackAutomaton {
        let nfa = self.nfa.determinize().complement().to_nfa();
        TrackAutomaton::new(self.alphabet.clone(), self.arity, nfa).unwrap()
    }

    pub fn intersect(&self, other: &TrackAutomaton) -> TrackAutomaton {
        TrackAutomaton {
            alphabet: self.alphabet.clone(),
            arity: self.arity,
            nfa: self.nfa.intersect(&other.nfa).trim(),
        }
    }

    pub fn union(&self, other: &TrackAutomaton) -> TrackAutomaton {
        TrackAutomaton {
            alphabet: self.alphabet.clone(),
            arity: self.arity,
            nfa: self.nfa.union(&other.nfa).trim(),
        }
    }

    pub fn determinize(&self) -> TrackAutomaton {
        TrackAutomaton {
            alphabet: self.alphabet.clone(),
            arity: self.arity,
            nfa: self.nfa.determinize().to_nfa().trim(),
        }
    }

    /// Drops track `k` (zero-based). Columns left with only pads form a suffix
    /// and are folded into acceptance.
    pub fn project(&self, k: usize) -> Result<TrackAutomaton> {
        if self.arity < 2 || k >= self.arity {
            return Err(Error::Param(format!(
                "cannot project track {} of a {}-track automaton",
                k + 1,
                self.arity
            )));
        }
        let n = self.arity;
        let mut m = Nfa::new(column_count(&self.alphabet, n - 1));
        for &f in &self.nfa.accepting {
            m.add_state(f);
        }
        let mut pad_edges: Vec<Vec<usize>> = vec![Vec::new(); self.nfa.len()];
        for q in 0..self.nfa.len() {
            for &(a, p) in &self.nfa.delta[q] {
                let mut col = decode_column(&self.alphabet, n, a);
                col.remove(k);
                if col.iter().all(Option::is_none) {
                    pad_edges[q].push(p);
                } else {
                    m.add_edge(q, encode_column(&self.alphabet, &col)?, p);
                }
            }
        }
        // backward closure of acceptance along pad-only edges
        let mut changed = true;
        while changed {
            changed = false;
            for q in 0..m.len() {
                if !m.accepting[q] && pad_edges[q].iter().any(|&p| m.accepting[p]) {
                    m.accepting[q] = true;
                    changed = true;
                }
            }
        }
        m.initial = self.nfa.initial.clone();
        TrackAutomaton::new(self.alphabet.clone(), n - 1, m)
    }
}

/// True when every non-marker head of `a` moves in lockstep, as certified by
/// the 0-synchrony checker on one-way machines.
pub fn is_synchronous(a: &MultiTapeAutomaton) -> bool {
    a.is_one_way()
        && check_synchronized(a, 0)
            .map(|r| r.synchronized)
            .unwrap_or(false)
}

fn require_synchronous(a: &MultiTapeAutomaton) -> Result<()> {
    if !a.is_one_way() {
        return Err(Error::NotOneWay);
    }
    if !check_synchronized(a, 0)?.synchronized {
        return Err(Error::NotSynchronous(
            "the machine is not 0-synchronized".into(),
        ));
    }
    Ok(())
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

/// The automaton accepting exactly the convolutions of L(A).
///
/// Between columns the state is (q, P) where P holds the tapes whose heads
/// already sit on the right marker. Inside a column, a head that moves while
/// others stay must land on the right marker, so its track is pad from the
/// next column on.
pub fn conv_automaton(a: &MultiTapeAutomaton) -> Result<TrackAutomaton> {
    require_synchronous(a)?;
    let n = a.tapes();
    let alphabet = a.alphabet().clone();
    let symbols = column_count(&alphabet, n);
    let full: u32 = (1u32 << n) - 1;

    let mut m = Nfa::new(symbols);
    let mut index: HashMap<(String, u32), usize> = HashMap::new();
    let mut queue: VecDeque<(String, u32)> = VecDeque::new();

    // column reads: None means the virtual column of left markers
    let column_step = |q: &str, col: Option<&Column>, start_mask: u32| -> BTreeSet<(String, u32)> {
        let mut out = BTreeSet::new();
        let mut seen: BTreeSet<(String, u32)> = BTreeSet::new();
        let mut stack = vec![(q.to_string(), start_mask)];
        seen.insert((q.to_string(), start_mask));
        while let Some((q, e)) = stack.pop() {
            let reads: Vec<Sym> = (0..n)
                .map(|k| {
                    if e & (1 << k) != 0 {
                        Sym::End
                    } else {
                        match col {
                            None => Sym::Start,
                            Some(c) => Sym::Letter(c[k].unwrap()),
                        }
                    }
                })
                .collect();
            let Some(ts) = a.targets(&q, &reads) else {
                continue;
            };
            for (p, d) in ts {
                let mut moved = 0u32;
                let mut ok = true;
                for k in 0..n {
                    match d[k] {
                        0 => {}
                        1 if e & (1 << k) == 0 => moved |= 1 << k,
                        _ => ok = false,
                    }
                }
                if !ok {
                    continue;
                }
                if moved != 0 && moved == full & !e {
                    out.insert((p.clone(), e));
                    continue;
                }
                let node = (p.clone(), e | moved);
                if seen.insert(node.clone()) {
                    stack.push(node);
                }
            }
        }
        out
    };

    let accepts_at_end = |q: &str| -> bool {
        let reads = vec![Sym::End; n];
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let mut stack = vec![q.to_string()];
        seen.insert(q.to_string());
        while let Some(q) = stack.pop() {
            if a.is_accepting(&q) {
                return true;
            }
            if let Some(ts) = a.targets(&q, &reads) {
                for (p, d) in ts {
                    if d.iter().all(|&x| x == 0) && seen.insert(p.clone()) {
                        stack.push(p.clone());
                    }
                }
            }
        }
        false
    };

    let mut intern = |key: (String, u32), m: &mut Nfa, queue: &mut VecDeque<(String, u32)>| -> usize {
        if let Some(&i) = index.get(&key) {
            return i;
        }
        let i = m.add_state(accepts_at_end(&key.0));
        index.insert(key.clone(), i);
        queue.push_back(key);
        i
    };

    for key in column_step(a.initial(), None, 0) {
        let i = intern(key, &mut m, &mut queue);
        m.initial.push(i);
    }
    let columns: Vec<(u32, Column, u32)> = (0..symbols)
        .map(|c| {
            let col = decode_column(&alphabet, n, c);
            let pads = (0..n).filter(|&k| col[k].is_none()).fold(0u32, |acc, k| acc | 1 << k);
            (c, col, pads)
        })
        .filter(|(_, _, pads)| *pads != full)
        .collect();
    while let Some((q, p)) = queue.pop_front() {
        let src = intern((q.clone(), p), &mut m, &mut queue);
        for (c, col, pads) in &columns {
            if pads & p != p {
                continue;
            }
            for key in column_step(&q, Some(col), *pads) {
                let dst = intern(key, &mut m, &mut queue);
                m.add_edge(src, *c, dst);
            }
        }
    }
    TrackAutomaton::new(alphabet, n, m)
}

/// The synchronous machine reading one column per step: a pad track reads the
/// right marker and does not move.
pub fn deconv_automaton(t: &TrackAutomaton) -> MultiTapeAutomaton {
    let n = t.arity();
    let name = |i: usize| format!("{GENERATED_PREFIX}t{i}");
    let start = format!("{GENERATED_PREFIX}start");
    let mut a = MultiTapeAutomaton::new(t.alphabet().clone(), n, start.clone());
    let nfa = t.nfa();
    for q in 0..nfa.len() {
        a.add_state(name(q));
        if nfa.accepting[q] {
            a.set_accepting(name(q));
        }
    }
    for &q in &nfa.initial {
        a.add_transition(start.clone(), vec![Sym::Start; n], name(q), vec![1; n]);
    }
    for q in 0..nfa.len() {
        for &(c, p) in &nfa.delta[q] {
            let col = decode_column(t.alphabet(), n, c);
            if col.iter().all(Option::is_none) {
                continue;
            }
            let reads = col
                .iter()
                .map(|s| s.map(Sym::Letter).unwrap_or(Sym::End))
                .collect();
            let moves = col.iter().map(|s| if s.is_some() { 1 } else { 0 }).collect();
            a.add_transition(name(q), reads, name(p), moves);
        }
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    Complement,
    Intersect,
    Union,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegularOp {
    Concat,
    Star,
    Reverse,
    /// Zero-based component index.
    Project(usize),
    /// Zero-based component index.
    Generalize(usize),
}

fn second<'a>(b: Option<&'a MultiTapeAutomaton>) -> Result<&'a MultiTapeAutomaton> {
    b.ok_or_else(|| Error::Param("operation needs two operands".into()))
}

pub fn sync_boolean(
    op: BoolOp,
    a: &MultiTapeAutomaton,
    b: Option<&MultiTapeAutomaton>,
) -> Result<MultiTapeAutomaton> {
    let ta = conv_automaton(a)?;
    let t = match op {
        BoolOp::Complement => ta.complement(),
        BoolOp::Intersect | BoolOp::Union => {
            let b = second(b)?;
            require_compatible(a, b)?;
            let tb = conv_automaton(b)?;
            if op == BoolOp::Intersect {
                ta.intersect(&tb)
            } else {
                ta.union(&tb)
            }
        }
    };
    Ok(deconv_automaton(&t))
}

/// Componentwise concatenation, star and reversal leave the synchronous class
/// in general; they are computed by the one-way constructions and the result
/// is only guaranteed to be one-way. Projection and generalization stay
/// synchronous.
pub fn sync_regular(
    op: RegularOp,
    a: &MultiTapeAutomaton,
    b: Option<&MultiTapeAutomaton>,
) -> Result<MultiTapeAutomaton> {
    require_synchronous(a)?;
    match op {
        RegularOp::Concat => {
            let b = second(b)?;
            require_compatible(a, b)?;
            require_synchronous(b)?;
            async_closure(ClosureOp::Concat, a, Some(b))
        }
        RegularOp::Star => async_closure(ClosureOp::Star, a, None),
        RegularOp::Reverse => async_closure(ClosureOp::Reverse, a, None),
        RegularOp::Project(k) => Ok(deconv_automaton(&conv_automaton(a)?.project(k)?)),
        RegularOp::Generalize(k) => {
            let t = conv_automaton(a)?.complement().project(k)?.complement();
            Ok(deconv_automaton(&t))
        }
    }
}

/// Equivalent deterministic synchronous machine, via the subset construction.
pub fn determinize_sync(a: &MultiTapeAutomaton) -> Result<MultiTapeAutomaton> {
    Ok(deconv_automaton(&conv_automaton(a)?.determinize()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecisionKind {
    Empty,
    Universal,
    Finite,
    Disjoint,
    Subset,
    Equiv,
}

impl DecisionKind {
    pub fn binary(self) -> bool {
        matches!(self, DecisionKind::Disjoint | DecisionKind::Subset | DecisionKind::Equiv)
    }
}

impl FromStr for DecisionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "empty" => DecisionKind::Empty,
            "universal" => DecisionKind::Universal,
            "finite" => DecisionKind::Finite,
            "disjoint" => DecisionKind::Disjoint,
            "subset" => DecisionKind::Subset,
            "equiv" => DecisionKind::Equiv,
            _ => return Err(Error::Param(format!("unknown decision {s:?}"))),
        })
    }
}

impl fmt::Display for DecisionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DecisionKind::Empty => "empty",
            DecisionKind::Universal => "universal",
            DecisionKind::Finite => "finite",
            DecisionKind::Disjoint => "disjoint",
            DecisionKind::Subset => "subset",
            DecisionKind::Equiv => "equiv",
        };
        write!(f, "{s}")
    }
}

/// Answer of a decision procedure. The witness, when present, shows why the
/// property fails (or, for emptiness, a member).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub holds: bool,
    pub witness: Option<NWord>,
}

pub fn decide(
    kind: DecisionKind,
    a: &MultiTapeAutomaton,
    b: Option<&MultiTapeAutomaton>,
) -> Result<Decision> {
    let ta = conv_automaton(a)?;
    let tb = if kind.binary() {
        let b = second(b)?;
        require_compatible(a, b)?;
        Some(conv_automaton(b)?)
    } else {
        None
    };
    let empty_check = |t: &TrackAutomaton| {
        let w = t.shortest_member();
        Decision {
            holds: w.is_none(),
            witness: w,
        }
    };
    Ok(match kind {
        DecisionKind::Empty => empty_check(&ta),
        DecisionKind::Universal => empty_check(&ta.complement()),
        DecisionKind::Finite => Decision {
            holds: ta.nfa().is_finite(),
            witness: None,
        },
        DecisionKind::Disjoint => empty_check(&ta.intersect(tb.as_ref().unwrap())),
        DecisionKind::Subset => empty_check(&ta.intersect(&tb.unwrap().complement())),
        DecisionKind::Equiv => {
            let tb = tb.unwrap();
            let diff = ta.intersect(&tb.complement()).union(&tb.intersect(&ta.complement()));
            empty_check(&diff)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulate::accepts;
    use crate::words::enumerate_nwords;

    fn ab() -> Alphabet {
        Alphabet::from_str_chars("ab").unwrap()
    }

    fn lxx() -> MultiTapeAutomaton {
        use Sym::*;
        let mut m = MultiTapeAutomaton::new(ab(), 2, "s");
        m.add_transition("s", vec![Start, Start], "p", vec![1, 1]);
        for c in ['a', 'b'] {
            m.add_transition("p", vec![Letter(c), Letter(c)], "p", vec![1, 1]);
        }
        m.add_transition("p", vec![End, End], "f", vec![0, 0]);
        m.set_accepting("f");
        m
    }

    /// Pairs where the second component is the first with one extra `a`
    /// appended, read with heads moving onto the marker at different times.
    fn append_a() -> MultiTapeAutomaton {
        use Sym::*;
        let mut m = MultiTapeAutomaton::new(ab(), 2, "s");
        m.add_transition("s", vec![Start, Start], "p", vec![1, 1]);
        for c in ['a', 'b'] {
            m.add_transition("p", vec![Letter(c), Letter(c)], "p", vec![1, 1]);
        }
        m.add_transition("p", vec![End, Letter('a')], "q", vec![0, 1]);
        m.add_transition("q", vec![End, End], "f", vec![0, 0]);
        m.set_accepting("f");
        m
    }

    #[test]
    fn conv_of_equality_is_diagonal() {
        let t = conv_automaton(&lxx()).unwrap();
        for x in enumerate_nwords(&ab(), 2, 4) {
            let e = x.component(0) == x.component(1);
            assert_eq!(t.accepts(&x).unwrap(), e, "{x}");
        }
        let back = deconv_automaton(&t);
        for x in enumerate_nwords(&ab(), 2, 4) {
            assert_eq!(accepts(&back, &x).unwrap(), x.component(0) == x.component(1));
        }
    }

    #[test]
    fn conv_handles_uneven_lengths() {
        let a = append_a();
        let t = conv_automaton(&a).unwrap();
        for x in enumerate_nwords(&ab(), 2, 4) {
            let mut w = x.component(0).to_vec();
            w.push('a');
            let e = x.component(1) == w.as_slice();
            assert_eq!(accepts(&a, &x).unwrap(), e, "{x}");
            assert_eq!(t.accepts(&x).unwrap(), e, "{x}");
        }
    }

    #[test]
    fn ill_padded_words_are_filtered() {
        let n = 2;
        let symbols = column_count(&ab(), n);
        let mut nfa = Nfa::new(symbols);
        let s = nfa.add_state(false);
        let m1 = nfa.add_state(false);
        let f = nfa.add_state(true);
        nfa.initial = vec![s];
        // (_,a)(b,a) is ill padded
        nfa.add_edge(s, encode_column(&ab(), &[None, Some('a')]).unwrap(), m1);
        nfa.add_edge(m1, encode_column(&ab(), &[Some('b'), Some('a')]).unwrap(), f);
        let t = TrackAutomaton::new(ab(), n, nfa).unwrap();
        assert!(t.is_empty());
        assert!(accepts(&deconv_automaton(&t), &NWord::from_strs(&["b", "aa"])).is_ok_and(|x| !x));
    }

    #[test]
    fn boolean_operations() {
        let a = lxx();
        let c = sync_boolean(BoolOp::Complement, &a, None).unwrap();
        let u = sync_boolean(BoolOp::Union, &a, Some(&append_a())).unwrap();
        let i = sync_boolean(BoolOp::Intersect, &a, Some(&a)).unwrap();
        for x in enumerate_nwords(&ab(), 2, 3) {
            let e = x.component(0) == x.component(1);
            let mut w = x.component(0).to_vec();
            w.push('a');
            let f = x.component(1) == w.as_slice();
            assert_eq!(accepts(&c, &x).unwrap(), !e, "{x}");
            assert_eq!(accepts(&u, &x).unwrap(), e || f, "{x}");
            assert_eq!(accepts(&i, &x).unwrap(), e, "{x}");
        }
    }

    #[test]
    fn projection_and_generalization() {
        let p = sync_regular(RegularOp::Project(0), &lxx(), None).unwrap();
        assert_eq!(p.tapes(), 1);
        for x in enumerate_nwords(&ab(), 1, 4) {
            assert!(accepts(&p, &x).unwrap());
        }
        // every first component has some second with second = first + a,
        // but not every first component works for all seconds
        let g = sync_regular(RegularOp::Generalize(1), &append_a(), None).unwrap();
        for x in enumerate_nwords(&ab(), 1, 3) {
            assert!(!accepts(&g, &x).unwrap());
        }
        let p2 = sync_regular(RegularOp::Project(0), &append_a(), None).unwrap();
        for x in enumerate_nwords(&ab(), 1, 4) {
            let w = x.component(0);
            assert_eq!(accepts(&p2, &x).unwrap(), w.last() == Some(&'a'), "{x}");
        }
    }

    #[test]
    fn determinization() {
        let d = determinize_sync(&sync_boolean(BoolOp::Union, &lxx(), Some(&lxx())).unwrap()).unwrap();
        assert!(d.is_deterministic());
        assert!(decide(DecisionKind::Equiv, &d, Some(&lxx())).unwrap().holds);
    }

    #[test]
    fn decisions() {
        let a = lxx();
        let c = sync_boolean(BoolOp::Complement, &a, None).unwrap();
        assert!(decide(DecisionKind::Disjoint, &a, Some(&c)).unwrap().holds);
        let u = sync_boolean(BoolOp::Union, &a, Some(&c)).unwrap();
        assert!(decide(DecisionKind::Universal, &u, None).unwrap().holds);
        let e = decide(DecisionKind::Empty, &a, None).unwrap();
        assert!(!e.holds);
        assert_eq!(e.witness, Some(NWord::from_strs(&["", ""])));
        assert!(!decide(DecisionKind::Finite, &a, None).unwrap().holds);
        let s = decide(DecisionKind::Subset, &a, Some(&append_a())).unwrap();
        assert!(!s.holds);
        assert_eq!(s.witness, Some(NWord::from_strs(&["", ""])));
        let eq = decide(DecisionKind::Equiv, &a, Some(&append_a())).unwrap();
        assert!(!eq.holds);
        assert!(eq.witness.is_some());
    }

    #[test]
    fn validity_cache_is_shared() {
        let x = padding_validity(&ab(), 2);
        let y = padding_validity(&ab(), 2);
        assert!(Arc::ptr_eq(&x, &y));
        assert_eq!(x.len(), 5);
    }
}
