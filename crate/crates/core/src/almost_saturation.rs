//! Almost saturation by exhaustive search of the transformation monoid, and the
//! DFA-intersection instance generator.

use std::collections::{HashSet, VecDeque};

use crate::automata::{Dfa, TransitionSystem};
use crate::counterexample::AlmostWitness;
use crate::error::{input, Error, Result};
use crate::family::Fdfa;
use crate::word::{Alphabet, Word};

pub const DEFAULT_CAP: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlmostStatus {
    AlmostSaturated,
    NotAlmostSaturated,
    CapExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostVerdict {
    pub status: AlmostStatus,
    pub witness: Option<AlmostWitness>,
}

/// The effect of a word on one progress DFA, with the leading state it reaches.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transformation {
    pub map: Vec<u32>,
    pub leading: usize,
}

impl Transformation {
    pub fn identity(n: usize, leading: usize) -> Self {
        Transformation { map: (0..n as u32).collect(), leading }
    }

    fn then_symbol(&self, d: &Dfa, t: &TransitionSystem, a: usize) -> Self {
        Transformation {
            map: self.map.iter().map(|&s| d.succ(s as usize, a) as u32).collect(),
            leading: t.succ(self.leading, a),
        }
    }
}

pub fn check_almost_saturated(f: &Fdfa, cap: usize) -> Result<AlmostVerdict> {
    if cap == 0 {
        return input("cap must be positive");
    }
    let t = f.leading();
    let k = f.alphabet().len();
    let mut explored = 0usize;
    for q in 0..t.size() {
        let d = f.progress(q);
        let id = Transformation::identity(d.size(), q);
        let mut seen: HashSet<Transformation> = HashSet::new();
        let mut queue: VecDeque<(Transformation, Word)> = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back((id, Vec::new()));
        while let Some((m, w)) = queue.pop_front() {
            for a in 0..k {
                let m2 = m.then_symbol(d, t, a);
                if seen.contains(&m2) {
                    continue;
                }
                explored += 1;
                if explored > cap {
                    return Ok(AlmostVerdict { status: AlmostStatus::CapExceeded, witness: None });
                }
                let mut w2 = w.clone();
                w2.push(a);
                if m2.leading == q {
                    let first = m2.map[0] as usize;
                    if d.is_accepting(first) {
                        let mut cur = first;
                        for i in 2..=d.size() {
                            cur = m2.map[cur] as usize;
                            if !d.is_accepting(cur) {
                                return Ok(AlmostVerdict {
                                    status: AlmostStatus::NotAlmostSaturated,
                                    witness: Some(AlmostWitness {
                                        spoke: t.access(q).clone(),
                                        cycle: w2,
                                        power: i,
                                    }),
                                });
                            }
                        }
                    }
                }
                seen.insert(m2.clone());
                queue.push_back((m2, w2));
            }
        }
    }
    Ok(AlmostVerdict { status: AlmostStatus::AlmostSaturated, witness: None })
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Least prime `≥ n`, and at least 2.
pub fn next_prime(n: usize) -> usize {
    (n.max(2)..).find(|&p| is_prime(p)).expect("primes are unbounded")
}

/// Σ⁺ with a non-accepting initial state.
pub(crate) fn padding_dfa(alphabet: &Alphabet) -> Dfa {
    Dfa::new(alphabet.clone(), 2, 0, |_, _| Some(1), &[1]).expect("well-formed")
}

/// Pad a DFA list to prime length with Σ⁺ automata.
pub(crate) fn pad_to_prime(dfas: &[Dfa]) -> Result<Vec<Dfa>> {
    let first = dfas.first().ok_or_else(|| Error::Input("empty DFA list".into()))?;
    let alphabet = first.alphabet().clone();
    for (i, d) in dfas.iter().enumerate() {
        if d.alphabet() != &alphabet {
            return input("DFAs over different alphabets");
        }
        if d.is_accepting(0) {
            return input(format!("DFA {i} accepts the empty word"));
        }
    }
    let mut out = dfas.to_vec();
    while !is_prime(out.len()) {
        out.push(padding_dfa(&alphabet));
    }
    Ok(out)
}

/// Trivial-leading FDFA over Σ ∪ {#} whose progress DFA accepts
/// Σ_#⁺ minus #L(D_1)#L(D_2)…#L(D_p).
pub fn gen_intersection_fdfa(dfas: &[Dfa]) -> Result<Fdfa> {
    let dfas = pad_to_prime(dfas)?;
    let sigma = dfas[0].alphabet().clone();
    let alphabet = sigma.extended("#")?;
    let hash = sigma.len();
    let p = dfas.len();
    // 0 = fresh initial, 1 = accepting sink, then the copies of D_1..D_p
    let mut offset = vec![2];
    for d in &dfas {
        offset.push(offset.last().unwrap() + d.size());
    }
    let n = offset[p];
    let owner = |s: usize| (0..p).find(|&i| s < offset[i + 1]).expect("copy state");
    let succ = |s: usize, a: usize| -> Option<usize> {
        Some(match s {
            0 if a == hash => offset[0],
            0 | 1 => 1,
            _ => {
                let i = owner(s);
                let local = s - offset[i];
                if a != hash {
                    offset[i] + dfas[i].succ(local, a)
                } else if !dfas[i].is_accepting(local) || i == p - 1 {
                    1
                } else {
                    offset[i + 1]
                }
            }
        })
    };
    let accepting: Vec<usize> = (0..n)
        .filter(|&s| s < 2 || owner(s) != p - 1 || !dfas[p - 1].is_accepting(s - offset[p - 1]))
        .collect();
    let d = Dfa::new(alphabet.clone(), n, 0, succ, &accepting)?;
    Fdfa::new(TransitionSystem::trivial(alphabet), vec![d])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::word::words_up_to;

    pub(crate) fn plus_of(alphabet: &Alphabet, sym: usize) -> Dfa {
        Dfa::new(alphabet.clone(), 2, 0, |q, a| if a == sym { Some(1) } else { None }.filter(|_| q <= 1), &[1]).unwrap()
    }

    #[test]
    fn paper_examples() {
        let v = check_almost_saturated(&fixtures::ba_star(), DEFAULT_CAP).unwrap();
        assert_eq!(v.witness, Some(AlmostWitness { spoke: vec![], cycle: vec![1], power: 2 }));
        let v = check_almost_saturated(&fixtures::odd(), DEFAULT_CAP).unwrap();
        assert_eq!(v.witness, Some(AlmostWitness { spoke: vec![], cycle: vec![0], power: 2 }));
        assert!(check_almost_saturated(&fixtures::odd(), 0).is_err());
    }

    #[test]
    fn intersection_examples() {
        let ab = Alphabet::from_chars("ab");
        let a_plus = plus_of(&ab, 0);
        let b_plus = plus_of(&ab, 1);
        let f = gen_intersection_fdfa(&[a_plus.clone(), a_plus.clone()]).unwrap();
        let v = check_almost_saturated(&f, DEFAULT_CAP).unwrap();
        assert_eq!(v.status, AlmostStatus::NotAlmostSaturated);
        let w = v.witness.unwrap();
        assert_eq!(f.alphabet().format(&w.cycle), "#a");
        assert!(w.replays(&f));
        let f = gen_intersection_fdfa(&[a_plus, b_plus]).unwrap();
        assert_eq!(check_almost_saturated(&f, DEFAULT_CAP).unwrap().status, AlmostStatus::AlmostSaturated);
        let f = gen_intersection_fdfa(&[padding_dfa(&ab)]).unwrap();
        assert_eq!(check_almost_saturated(&f, DEFAULT_CAP).unwrap().status, AlmostStatus::NotAlmostSaturated);
        assert!(gen_intersection_fdfa(&[Dfa::universal(ab)]).is_err());
    }

    #[test]
    fn rejected_words_are_blocked() {
        // every rejected word has the form #u_1#…#u_p with blocks in the D_i
        let ab = Alphabet::from_chars("ab");
        let f = gen_intersection_fdfa(&[plus_of(&ab, 0), padding_dfa(&ab), plus_of(&ab, 1)]).unwrap();
        let d = f.progress(0);
        let hash = 2;
        for w in words_up_to(3, 8).into_iter().skip(1) {
            if !d.accepts(&w) {
                assert_eq!(w[0], hash);
                assert_eq!(w.iter().filter(|&&s| s == hash).count(), 3);
            }
        }
    }

    #[test]
    fn primes() {
        assert_eq!(next_prime(1), 2);
        assert_eq!(next_prime(4), 5);
        assert!(is_prime(7) && !is_prime(9));
    }
}
