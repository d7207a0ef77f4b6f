//! Small hand-built families used by tests and examples.

use crate::automata::{Dfa, TransitionSystem};
use crate::family::Fdfa;
use crate::word::Alphabet;

fn trivial(alphabet: Alphabet, d: Dfa) -> Fdfa {
    Fdfa::new(TransitionSystem::trivial(alphabet), vec![d]).expect("well-formed fixture")
}

fn table(alphabet: &Alphabet, t: &[&[usize]], acc: &[usize]) -> Dfa {
    Dfa::new(alphabet.clone(), t.len(), 0, |q, a| Some(t[q][a]), acc).expect("well-formed fixture")
}

/// Trivial leading system over {a,b}, progress b·a*.
pub fn ba_star() -> Fdfa {
    let ab = Alphabet::from_chars("ab");
    trivial(ab.clone(), table(&ab, &[&[2, 1], &[1, 2], &[2, 2]], &[1]))
}

/// Trivial leading system over {a}, progress accepting odd powers of a.
pub fn odd() -> Fdfa {
    let a = Alphabet::from_chars("a");
    trivial(a.clone(), table(&a, &[&[1], &[0]], &[1]))
}

/// Progress {a^i b a^j | i+j ≥ 1}.
pub fn one_a() -> Fdfa {
    let ab = Alphabet::from_chars("ab");
    // 0: start, 1: a's before b, 2: b read first, 3: accept, 4: sink
    trivial(
        ab.clone(),
        table(&ab, &[&[1, 2], &[1, 3], &[3, 4], &[3, 4], &[4, 4]], &[3]),
    )
}

/// Progress {b^i a b^j}.
pub fn bi_ab() -> Fdfa {
    let ab = Alphabet::from_chars("ab");
    trivial(ab.clone(), table(&ab, &[&[1, 0], &[2, 1], &[2, 2]], &[1]))
}

/// Leading system counting length mod 2 over {a}, universal progress.
pub fn mod2_universal() -> Fdfa {
    let a = Alphabet::from_chars("a");
    let t = TransitionSystem::new(a.clone(), 2, 0, |q, _| Some(1 - q)).unwrap();
    Fdfa::new(t, vec![Dfa::universal(a.clone()), Dfa::universal(a)]).unwrap()
}

/// Saturated FDFA of Σ*(ab)^ω over {a,b}.
pub fn ab_omega_saturated() -> Fdfa {
    let ab = Alphabet::from_chars("ab");
    // 0 start, 1 a, 2 ab (acc), 3 b, 4 ba (acc), 5 sink
    trivial(
        ab.clone(),
        table(
            &ab,
            &[&[1, 3], &[5, 2], &[1, 5], &[4, 5], &[5, 3], &[5, 5]],
            &[2, 4],
        ),
    )
}

pub fn empty_fdfa(alphabet: Alphabet) -> Fdfa {
    trivial(alphabet.clone(), Dfa::empty(alphabet))
}

pub fn universal_fdfa(alphabet: Alphabet) -> Fdfa {
    trivial(alphabet.clone(), Dfa::universal(alphabet))
}

/// Progress DFA over {a,b} for the given table and accepting states, with a trivial leading system.
fn trivial_ab(t: &[&[usize]], acc: &[usize]) -> Fdfa {
    let ab = Alphabet::from_chars("ab");
    trivial(ab.clone(), table(&ab, t, acc))
}

/// Leading system over {a,b} splitting on the first letter: 0 start, 1 after a, 2 after b.
fn first_letter(d_start: Dfa, d_a: Dfa) -> Fdfa {
    let ab = Alphabet::from_chars("ab");
    let t = TransitionSystem::new(ab.clone(), 3, 0, |q, a| Some(if q == 0 { 1 + a } else { q })).unwrap();
    Fdfa::new(t, vec![d_start, d_a, Dfa::empty(ab)]).unwrap()
}

/// Fully saturated targets with small `$`-DFAs, for the active learner.
pub fn learning_targets() -> Vec<(&'static str, Fdfa)> {
    let ab = Alphabet::from_chars("ab");
    // x contains an a
    let some_a: &[&[usize]] = &[&[1, 0], &[1, 1]];
    let contains_b = table(&ab, &[&[0, 1], &[1, 1]], &[1]);
    let a_then_b = table(&ab, &[&[1, 3], &[1, 2], &[2, 2], &[3, 3]], &[2]);
    // the first letter is b and the rest has infinitely many a
    let first_b = {
        let t = TransitionSystem::new(ab.clone(), 3, 0, |q, a| Some(if q == 0 { 1 + a } else { q })).unwrap();
        let start = table(&ab, &[&[3, 1], &[2, 1], &[2, 2], &[3, 3]], &[2]);
        let rest = table(&ab, some_a, &[1]);
        Fdfa::new(t, vec![start, Dfa::empty(ab.clone()), rest]).unwrap()
    };
    vec![
        ("empty", empty_fdfa(ab.clone())),
        ("universal", universal_fdfa(ab.clone())),
        ("infinitely-many-a", trivial_ab(some_a, &[1])),
        ("finitely-many-a", trivial_ab(&[&[2, 1], &[2, 1], &[2, 2]], &[1])),
        ("eventually-a", trivial_ab(&[&[1, 2], &[1, 2], &[2, 2]], &[1])),
        ("b-then-infinitely-many-a", first_b),
        ("both-letters", trivial_ab(&[&[1, 2], &[1, 3], &[3, 2], &[3, 3]], &[3])),
        ("starts-with-a", first_letter(table(&ab, &[&[1, 2], &[1, 1], &[2, 2]], &[1]), Dfa::universal(ab.clone()))),
        ("a-then-infinitely-many-b", first_letter(a_then_b, contains_b)),
        ("unary-universal", universal_fdfa(Alphabet::from_chars("a"))),
    ]
}
