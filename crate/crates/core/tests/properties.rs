mod common;

use mta::format::{parse_automaton, serialize_def1, Machine};
use mta::lanes::{default_tape_ids, from_taped_model, to_taped_model};
use mta::simulate::{replay, simulate, Simulator};
use mta::sync::{conv_automaton, deconv_automaton};
use mta::words::{convolve, deconvolve, enumerate_nwords};
use mta::zoo::{zoo_build, CATALOG};
use mta::{Alphabet, NWord};
use proptest::prelude::*;

fn nword(n: usize, max_len: usize) -> impl Strategy<Value = NWord> {
    prop::collection::vec(prop::collection::vec(prop::sample::select(vec!['a', 'b', 'c']), 0..=max_len), n)
        .prop_map(NWord::new)
}

proptest! {
    #[test]
    fn convolution_inverts(x in (1usize..=4).prop_flat_map(|n| nword(n, 8))) {
        let w = convolve(&x);
        prop_assert_eq!(w.len(), x.max_len());
        prop_assert!(w.padding_violation().is_none());
        prop_assert_eq!(deconvolve(&w).unwrap(), x);
    }

    #[test]
    fn reversal_is_an_involution(x in nword(3, 6)) {
        prop_assert_eq!(x.reversed().reversed(), x);
    }

    #[test]
    fn random_track_round_trip(seed in 0u64..500, x in nword(2, 4)) {
        let ab = Alphabet::from_str_chars("abc").unwrap();
        let t = common::random_track(&ab, 2, 4, seed);
        let m = deconv_automaton(&t);
        let back = conv_automaton(&m).unwrap();
        let want = t.accepts(&x).unwrap();
        prop_assert_eq!(Simulator::new(&m).accepts(&x).unwrap(), want);
        prop_assert_eq!(back.accepts(&x).unwrap(), want);
    }

    #[test]
    fn accepting_runs_replay(x in nword(2, 4)) {
        let m = zoo_build("EstarGHstar").unwrap();
        let v = simulate(&m, &x).unwrap();
        if let Some(trace) = v.trace {
            prop_assert!(replay(&m, &x, &trace));
        }
    }
}

#[test]
fn taped_model_conversion_preserves_language() {
    for e in CATALOG.iter().filter(|e| e.one_way) {
        let m = zoo_build(e.name).unwrap();
        let back = from_taped_model(&to_taped_model(&m, &default_tape_ids(m.tapes())).unwrap());
        let (s1, s2) = (Simulator::new(&m), Simulator::new(&back));
        for x in enumerate_nwords(m.alphabet(), m.tapes(), 4) {
            assert_eq!(s1.accepts(&x).unwrap(), s2.accepts(&x).unwrap(), "{} {x}", e.name);
        }
    }
}

#[test]
fn serialization_round_trips() {
    for e in CATALOG {
        let m = zoo_build(e.name).unwrap();
        match parse_automaton(&serialize_def1(&m)).unwrap() {
            Machine::Def1(back) => assert_eq!(back, m, "{}", e.name),
            Machine::Taped(_) => panic!("{} came back taped", e.name),
        }
    }
}
