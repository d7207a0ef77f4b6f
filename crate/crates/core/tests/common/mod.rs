#![allow(dead_code)]

use fdfa::{Alphabet, Dfa, Fdfa, Fdwa, TransitionSystem, WeakDba};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_dfa(rng: &mut impl Rng, alphabet: &Alphabet, max_states: usize) -> Dfa {
    let n = rng.gen_range(1..=max_states);
    let table: Vec<Vec<usize>> = (0..n).map(|_| (0..alphabet.len()).map(|_| rng.gen_range(0..n)).collect()).collect();
    let acc: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    Dfa::new(alphabet.clone(), n, 0, |q, a| Some(table[q][a]), &acc).unwrap()
}

pub fn random_ts(rng: &mut impl Rng, alphabet: &Alphabet, max_states: usize) -> TransitionSystem {
    let n = rng.gen_range(1..=max_states);
    let table: Vec<Vec<usize>> = (0..n).map(|_| (0..alphabet.len()).map(|_| rng.gen_range(0..n)).collect()).collect();
    TransitionSystem::new(alphabet.clone(), n, 0, |q, a| Some(table[q][a])).unwrap()
}

pub fn random_fdfa(rng: &mut impl Rng, alphabet: &Alphabet, max_lead: usize, max_prog: usize) -> Fdfa {
    let t = random_ts(rng, alphabet, max_lead);
    let progress = (0..t.size()).map(|_| random_dfa(rng, alphabet, max_prog)).collect();
    Fdfa::new(t, progress).unwrap()
}

/// A random weak DFA: transitions never go to a lower state, and each state
/// with a self-loop on every letter picks its own acceptance.
pub fn random_weak_dfa(rng: &mut impl Rng, alphabet: &Alphabet, max_states: usize) -> WeakDba {
    loop {
        let n = rng.gen_range(1..=max_states);
        let table: Vec<Vec<usize>> =
            (0..n).map(|q| (0..alphabet.len()).map(|_| rng.gen_range(q..n)).collect()).collect();
        let acc: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        let d = Dfa::new(alphabet.clone(), n, 0, |q, a| Some(table[q][a]), &acc).unwrap();
        if let Ok(w) = WeakDba::new(d) {
            return w;
        }
    }
}

pub fn random_fdwa(rng: &mut impl Rng, alphabet: &Alphabet, max_lead: usize, max_prog: usize) -> Fdwa {
    let t = random_ts(rng, alphabet, max_lead);
    let progress = (0..t.size()).map(|_| random_weak_dfa(rng, alphabet, max_prog)).collect();
    Fdwa::new(t, progress).unwrap()
}
