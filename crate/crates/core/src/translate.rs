//! Translations between FDWAs, Büchi automata and duo-normalized FDFAs, and
//! generators for the lower-bound families.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::automata::{scc_ids, Dfa, Nba, Nfa, TransitionSystem, WeakDba};
use crate::error::{Error, Result};
use crate::family::{AnyFamily, DuoFdfa, Fdfa, Fdwa};
use crate::saturation::check_fdwa_saturated;
use crate::word::Alphabet;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum NbaState {
    Prefix(usize),
    /// Leading state, progress state from ι, progress state from `p`, for the guess `(q, p)`.
    Block { q: usize, p: usize, lead: usize, from_init: usize, from_p: usize },
    Boundary { q: usize, p: usize },
}

/// Büchi automaton for the normalized UP-language of an FDWA.
///
/// A run reads a spoke in the leading system, then guesses a leading state `q`
/// and an accepting progress state `p`, and splits the rest into blocks that
/// loop on `q`, lead from ι to `p` and from `p` back to `p`. Block ends pass
/// through an accepting boundary state.
pub fn fdwa_to_nba(w: &Fdwa) -> Nba {
    let t = w.leading();
    let alphabet = w.alphabet().clone();
    let k = alphabet.len();
    let mut index: HashMap<NbaState, usize> = HashMap::new();
    let mut states: Vec<NbaState> = Vec::new();
    let mut trans: Vec<(usize, usize, usize)> = Vec::new();
    let mut intern = |s: NbaState, states: &mut Vec<NbaState>| -> usize {
        *index.entry(s).or_insert_with(|| {
            states.push(s);
            states.len() - 1
        })
    };
    let init = intern(NbaState::Prefix(t.initial()), &mut states);

    // successors of a block start, shared by the prefix and boundary states
    let block_step = |q: usize, p: usize, lead: usize, s1: usize, s2: usize, a: usize| {
        let d = w.progress(q).dfa();
        let next = NbaState::Block { q, p, lead: t.succ(lead, a), from_init: d.succ(s1, a), from_p: d.succ(s2, a) };
        let done = t.succ(lead, a) == q && d.succ(s1, a) == p && d.succ(s2, a) == p;
        (next, done.then_some(NbaState::Boundary { q, p }))
    };
    let mut i = 0;
    while i < states.len() {
        let s = states[i];
        for a in 0..k {
            let mut targets: Vec<NbaState> = Vec::new();
            let start_block = |q: usize, targets: &mut Vec<NbaState>| {
                let d = w.progress(q).dfa();
                for p in (0..d.size()).filter(|&p| d.is_accepting(p)) {
                    let (next, done) = block_step(q, p, q, 0, p, a);
                    targets.push(next);
                    targets.extend(done);
                }
            };
            match s {
                NbaState::Prefix(r) => {
                    targets.push(NbaState::Prefix(t.succ(r, a)));
                    start_block(r, &mut targets);
                }
                NbaState::Block { q, p, lead, from_init, from_p } => {
                    let (next, done) = block_step(q, p, lead, from_init, from_p, a);
                    targets.push(next);
                    targets.extend(done);
                }
                NbaState::Boundary { q, p } => {
                    let (next, done) = block_step(q, p, q, 0, p, a);
                    targets.push(next);
                    targets.extend(done);
                }
            }
            for target in targets {
                let j = intern(target, &mut states);
                trans.push((i, a, j));
            }
        }
        i += 1;
    }
    let accepting: Vec<usize> =
        (0..states.len()).filter(|&i| matches!(states[i], NbaState::Boundary { .. })).collect();
    Nba(Nfa::new(alphabet, states.len(), &[init], &trans, &accepting).expect("well-formed product"))
}

/// Swap accepting and rejecting progress states of a saturated FDWA.
pub fn complement_saturated_fdwa(w: &Fdwa) -> Result<Fdwa> {
    let v = check_fdwa_saturated(w);
    if !v.is_saturated() {
        return Err(Error::Precondition("FDWA is not saturated".into()));
    }
    let progress = w
        .progress_all()
        .iter()
        .map(|b| WeakDba::new(b.dfa().complement()))
        .collect::<Result<Vec<_>>>()?;
    Fdwa::new(w.leading().clone(), progress)
}

/// A saturated FDWA read as an FDFA with duo-normalized acceptance.
pub fn fdwa_to_duo(w: &Fdwa) -> Result<DuoFdfa> {
    if !check_fdwa_saturated(w).is_saturated() {
        return Err(Error::Precondition("FDWA is not saturated".into()));
    }
    Ok(DuoFdfa(w.as_fdfa()))
}

/// States `s` of `D_q` reached by a duo-normalized loop: some non-empty `x` with
/// `T(q, x) = q`, `D_q(x) = s` and `D_q(s, x) = s`.
fn duo_reachable(f: &Fdfa, q: usize) -> Vec<bool> {
    let t = f.leading();
    let d = f.progress(q);
    let k = f.alphabet().len();
    let mut out = vec![false; d.size()];
    for (s, hit) in out.iter_mut().enumerate() {
        let mut seen = std::collections::HashSet::new();
        let mut queue = VecDeque::new();
        for a in 0..k {
            let n = (t.succ(q, a), d.succ(0, a), d.succ(s, a));
            if seen.insert(n) {
                queue.push_back(n);
            }
        }
        while let Some(n) = queue.pop_front() {
            if n == (q, s, s) {
                *hit = true;
                break;
            }
            for a in 0..k {
                let m = (t.succ(n.0, a), d.succ(n.1, a), d.succ(n.2, a));
                if seen.insert(m) {
                    queue.push_back(m);
                }
            }
        }
    }
    out
}

/// Read a duo-saturated FDFA as an FDWA: an SCC accepts iff it contains an
/// accepting state reached by a duo-normalized loop.
pub fn duo_to_fdwa(f: &DuoFdfa) -> Result<Fdwa> {
    let f = &f.0;
    let k = f.alphabet().len();
    let mut progress = Vec::new();
    for q in 0..f.leading().size() {
        let d = f.progress(q);
        let n = d.size();
        let ids = scc_ids(n, (0..n).flat_map(|s| (0..k).map(move |a| (s, d.succ(s, a)))));
        let reach = duo_reachable(f, q);
        let mut verdict: HashMap<usize, bool> = HashMap::new();
        for s in (0..n).filter(|&s| reach[s]) {
            let acc = d.is_accepting(s);
            if *verdict.entry(ids[s]).or_insert(acc) != acc {
                return Err(Error::Precondition(format!(
                    "input is not duo-saturated: progress automaton {q} mixes acceptance in one SCC"
                )));
            }
        }
        let acc = (0..n).map(|s| verdict.get(&ids[s]).copied().unwrap_or(false)).collect();
        let b = WeakDba::new(d.with_accepting(acc))
            .map_err(|e| Error::Precondition(format!("input is not duo-saturated: {e}")))?;
        progress.push(b);
    }
    Fdwa::new(f.leading().clone(), progress)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyName {
    FixpointFdwa,
    FixpointAlsat,
    SubsetOccurrence,
    ZeroUZeroFdfa,
    ZeroUZeroFdwa,
    SyntacticGap,
}

impl FamilyName {
    pub const ALL: [FamilyName; 6] = [
        FamilyName::FixpointFdwa,
        FamilyName::FixpointAlsat,
        FamilyName::SubsetOccurrence,
        FamilyName::ZeroUZeroFdfa,
        FamilyName::ZeroUZeroFdwa,
        FamilyName::SyntacticGap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyName::FixpointFdwa => "fixpoint-fdwa",
            FamilyName::FixpointAlsat => "fixpoint-alsat",
            FamilyName::SubsetOccurrence => "subset-occurrence",
            FamilyName::ZeroUZeroFdfa => "zero-u-zero-fdfa",
            FamilyName::ZeroUZeroFdwa => "zero-u-zero-fdwa",
            FamilyName::SyntacticGap => "syntactic-gap",
        }
    }

    /// The stated size for parameter `n`.
    pub fn expected_size(self, n: usize) -> (usize, usize) {
        match self {
            FamilyName::FixpointFdwa | FamilyName::FixpointAlsat => (1, n + 2),
            FamilyName::SubsetOccurrence => (1, 2 * n + 1),
            FamilyName::ZeroUZeroFdfa | FamilyName::ZeroUZeroFdwa => (1, n + 3),
            FamilyName::SyntacticGap => (n, 2 * n),
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyName::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown family {s:?}")))
    }
}

/// Largest `n` for the subset alphabet, which has `2^{2n} - 1` symbols.
pub const SUBSET_MAX_N: usize = 3;

pub fn gen_family(name: &str, n: usize) -> Result<AnyFamily> {
    let which: FamilyName = name.parse()?;
    if n == 0 {
        return Err(Error::Input("n must be at least 1".into()));
    }
    Ok(match which {
        FamilyName::FixpointFdwa => AnyFamily::Fdwa(weak(fixpoint_progress(n))),
        FamilyName::FixpointAlsat => AnyFamily::Fdfa(trivial(fixpoint_progress(n))),
        FamilyName::SubsetOccurrence => AnyFamily::Fdwa(weak(subset_progress(n)?)),
        FamilyName::ZeroUZeroFdfa => AnyFamily::Fdfa(trivial(zero_u_zero_progress(n))),
        FamilyName::ZeroUZeroFdwa => AnyFamily::Fdwa(weak(zero_u_zero_progress(n))),
        FamilyName::SyntacticGap => AnyFamily::Fdfa(syntactic_gap(n)),
    })
}

fn trivial(d: Dfa) -> Fdfa {
    Fdfa::new(TransitionSystem::trivial(d.alphabet().clone()), vec![d]).expect("one progress DFA")
}

fn weak(d: Dfa) -> Fdwa {
    Fdwa::from_fdfa(&trivial(d)).expect("generated progress automata are weak")
}

fn mapping_alphabet() -> Alphabet {
    Alphabet::new(&["σ", "τ", "γ", "#"]).expect("valid")
}

/// The image of `i ∈ 1..=n` under the letter `a` (σ rotates, τ swaps 1 and 2, γ merges 1 and 2).
fn apply(n: usize, a: usize, i: usize) -> usize {
    match a {
        0 => i % n + 1,
        1 if n >= 2 && i <= 2 => 3 - i,
        2 if i <= 2 => 1,
        _ => i,
    }
}

/// States: 0 waits for `#`, `i ∈ 1..=n` tracks the image of 1, `n+1` is the accepting sink.
fn fixpoint_progress(n: usize) -> Dfa {
    let top = n + 1;
    let succ = |s: usize, a: usize| {
        Some(match (s, a) {
            (0, 3) => 1,
            (0, _) => 0,
            (s, _) if s == top => top,
            (1, 3) => top,
            (_, 3) => 1,
            (s, a) => apply(n, a, s),
        })
    };
    Dfa::new(mapping_alphabet(), n + 2, 0, succ, &[top]).expect("well-formed")
}

fn subset_alphabet(n: usize) -> Result<Alphabet> {
    if n > SUBSET_MAX_N {
        return Err(Error::Input(format!("subset-occurrence supports n ≤ {SUBSET_MAX_N}")));
    }
    let names: Vec<String> = (1u32..1 << (2 * n))
        .map(|mask| {
            let items: Vec<String> = (0..2 * n).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
            format!("{{{}}}", items.join(","))
        })
        .collect();
    Alphabet::new(&names)
}

/// Chain `0..2n-1` waiting for each number in turn, then the rejecting sink `2n`.
fn subset_progress(n: usize) -> Result<Dfa> {
    let alphabet = subset_alphabet(n)?;
    let bot = 2 * n;
    // symbol `a` is the bitmask `a + 1`
    let succ = |s: usize, a: usize| Some(if s < bot && (a + 1) >> s & 1 == 1 { s + 1 } else { s });
    let accepting: Vec<usize> = (0..bot).collect();
    Dfa::new(alphabet, 2 * n + 1, 0, succ, &accepting)
}

/// `0` start, `1..=n` count the infix, `n+1` accepting sink, `n+2` rejecting sink.
fn zero_u_zero_progress(n: usize) -> Dfa {
    let (top, bot) = (n + 1, n + 2);
    let succ = |s: usize, a: usize| {
        Some(match (s, a) {
            (0, 0) => 1,
            (0, _) => bot,
            (s, 0) if s == n => top,
            (s, _) if s == n => bot,
            (s, _) if s >= top => s,
            (s, _) => s + 1,
        })
    };
    Dfa::new(Alphabet::from_chars("01"), n + 3, 0, succ, &[top]).expect("well-formed")
}

/// Leading system tracks the image of 1 since the last `#`; the progress DFA for
/// `i` checks that some block of the loop fixes 1.
fn syntactic_gap(n: usize) -> Fdfa {
    let alphabet = mapping_alphabet();
    // leading state i - 1 tracks the value i
    let t = TransitionSystem::new(alphabet.clone(), n, 0, |s, a| Some(if a == 3 { 0 } else { apply(n, a, s + 1) - 1 }))
        .expect("well-formed");
    let progress: Vec<Dfa> = (1..=n)
        .map(|i| {
            // states j - 1 are "no fixpoint block yet" at j, n + j - 1 are "seen one" at j
            let succ = |s: usize, a: usize| {
                let (found, j) = (s >= n, s % n + 1);
                Some(if a == 3 {
                    if found || j == 1 { n } else { 0 }
                } else {
                    usize::from(found) * n + apply(n, a, j) - 1
                })
            };
            Dfa::new(alphabet.clone(), 2 * n, i - 1, succ, &[n + i - 1]).expect("well-formed")
        })
        .collect();
    // σ^{i-1} sends 1 to i
    let mut by_state: Vec<Option<Dfa>> = vec![None; n];
    for (i, d) in progress.into_iter().enumerate() {
        by_state[t.reach(&vec![0; i])] = Some(d);
    }
    Fdfa::new(t, by_state.into_iter().map(|d| d.expect("every value is reachable")).collect()).expect("well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::almost_saturation::{check_almost_saturated, AlmostStatus, DEFAULT_CAP};
    use crate::family::ReferenceSet;
    use crate::oracle::{fdwa_up_membership, nba_lasso_accepts};
    use crate::saturation::{check_saturated, SaturationMode};
    use crate::word::{words_up_to, Representation};

    fn fdwa(name: &str, n: usize) -> Fdwa {
        match gen_family(name, n).unwrap() {
            AnyFamily::Fdwa(w) => w,
            _ => panic!("not an FDWA"),
        }
    }

    fn fdfa(name: &str, n: usize) -> Fdfa {
        match gen_family(name, n).unwrap() {
            AnyFamily::Fdfa(f) => f,
            _ => panic!("not an FDFA"),
        }
    }

    fn lassos(k: usize, max_u: usize, max_x: usize) -> Vec<Representation> {
        let loops: Vec<_> = words_up_to(k, max_x).into_iter().skip(1).collect();
        words_up_to(k, max_u)
            .into_iter()
            .flat_map(|u| loops.iter().map(move |x| Representation { spoke: u.clone(), cycle: x.clone() }))
            .collect()
    }

    #[test]
    fn sizes() {
        for n in 1..=3 {
            for name in FamilyName::ALL {
                let f = gen_family(name.name(), n).unwrap();
                assert_eq!(f.size(), name.expected_size(n), "{name} {n}");
            }
        }
        assert!(gen_family("nope", 2).is_err());
        assert!(gen_family("fixpoint-fdwa", 0).is_err());
        assert!(gen_family("subset-occurrence", 4).is_err());
    }

    #[test]
    fn saturation_claims() {
        for n in 1..=3 {
            assert!(check_fdwa_saturated(&fdwa("fixpoint-fdwa", n)).is_saturated());
            assert!(check_fdwa_saturated(&fdwa("subset-occurrence", n)).is_saturated());
            for name in ["fixpoint-alsat", "zero-u-zero-fdfa"] {
                let f = fdfa(name, n);
                assert_eq!(check_almost_saturated(&f, DEFAULT_CAP).unwrap().status, AlmostStatus::AlmostSaturated);
                assert!(!check_saturated(&f, SaturationMode::Saturated).is_saturated(), "{name} {n}");
            }
            assert!(check_saturated(&fdfa("syntactic-gap", n), SaturationMode::Saturated).is_saturated());
        }
    }

    #[test]
    fn fixpoint_language() {
        let w = fdwa("fixpoint-fdwa", 2);
        let a = w.alphabet().clone();
        let rep = |u: &str, x: &str| Representation::new(a.parse(u).unwrap(), a.parse(x).unwrap()).unwrap();
        // σ swaps 1 and 2 for n = 2, so the block σσ fixes 1 and σ does not
        assert!(w.accepts(&rep("", "#σσ"), ReferenceSet::Normalized));
        assert!(!w.accepts(&rep("", "#σ"), ReferenceSet::Normalized));
        assert!(w.accepts(&rep("", "#γσ"), ReferenceSet::Normalized) == w.accepts(&rep("", "σ#γ"), ReferenceSet::Normalized));
    }

    #[test]
    fn nba_examples() {
        let ab = Alphabet::from_chars("ab");
        let empty = Fdwa::from_fdfa(&crate::fixtures::empty_fdfa(ab.clone())).unwrap();
        let nba = fdwa_to_nba(&empty);
        assert_eq!(nba.size(), 1);
        assert!(!nba_lasso_accepts(&nba, &[], &[0]));
        let all = Fdwa::from_fdfa(&crate::fixtures::universal_fdfa(ab.clone())).unwrap();
        let nba = fdwa_to_nba(&all);
        for r in lassos(2, 3, 3) {
            assert!(nba_lasso_accepts(&nba, &r.spoke, &r.cycle));
        }
    }

    #[test]
    fn nba_agrees_on_generated_families() {
        for w in [fdwa("subset-occurrence", 1), fdwa("zero-u-zero-fdwa", 2), fdwa("fixpoint-fdwa", 2)] {
            let nba = fdwa_to_nba(&w);
            for r in lassos(w.alphabet().len(), 3, 4) {
                assert_eq!(nba_lasso_accepts(&nba, &r.spoke, &r.cycle), fdwa_up_membership(&w, &r), "{r}");
            }
        }
    }

    #[test]
    fn complement_examples() {
        let w = fdwa("subset-occurrence", 1);
        let c = complement_saturated_fdwa(&w).unwrap();
        assert_eq!(complement_saturated_fdwa(&c).unwrap(), w);
        for r in lassos(3, 5, 5) {
            assert_ne!(fdwa_up_membership(&w, &r), fdwa_up_membership(&c, &r), "{r}");
        }
        let ab = Alphabet::from_chars("ab");
        let all = Fdwa::from_fdfa(&crate::fixtures::universal_fdfa(ab.clone())).unwrap();
        let none = complement_saturated_fdwa(&all).unwrap();
        assert!(!none.progress(0).dfa().is_accepting(0));
        assert!(complement_saturated_fdwa(&fdwa("zero-u-zero-fdwa", 1)).is_err());
    }

    #[test]
    fn duo_round_trip() {
        for w in [fdwa("subset-occurrence", 1), fdwa("fixpoint-fdwa", 2), fdwa("fixpoint-fdwa", 1)] {
            let duo = fdwa_to_duo(&w).unwrap();
            assert_eq!(duo.0, w.as_fdfa());
            for r in lassos(w.alphabet().len(), 3, 4) {
                if duo.is_duo_normalized(&r) {
                    assert_eq!(duo.accepts(&r), w.accepts(&r, ReferenceSet::Normalized), "{r}");
                }
            }
            let back = duo_to_fdwa(&duo).unwrap();
            for r in lassos(w.alphabet().len(), 3, 4) {
                assert_eq!(fdwa_up_membership(&back, &r), fdwa_up_membership(&w, &r), "{r}");
            }
        }
        assert!(fdwa_to_duo(&fdwa("zero-u-zero-fdwa", 1)).is_err());
        let ab = Alphabet::from_chars("ab");
        let e = duo_to_fdwa(&DuoFdfa(crate::fixtures::empty_fdfa(ab.clone()))).unwrap();
        assert!(!e.progress(0).dfa().is_accepting(0));
        let u = duo_to_fdwa(&DuoFdfa(crate::fixtures::universal_fdfa(ab))).unwrap();
        assert!(u.progress(0).dfa().is_accepting(0));
    }

    #[test]
    fn duo_rejects_mixed_scc() {
        // a and b both loop duo-normally, on states of one SCC with different acceptance
        let ab = Alphabet::from_chars("ab");
        let t = [[1, 2], [1, 2], [1, 2]];
        let d = Dfa::new(ab.clone(), 3, 0, |q, a| Some(t[q][a]), &[1]).unwrap();
        let f = DuoFdfa(Fdfa::new(TransitionSystem::trivial(ab), vec![d]).unwrap());
        assert!(matches!(duo_to_fdwa(&f), Err(Error::Precondition(_))));
        // FIX-ODD only reaches its even state duo-normally
        let w = duo_to_fdwa(&DuoFdfa(crate::fixtures::odd())).unwrap();
        assert!(w.progress(0).dfa().accepting().iter().all(|&b| !b));
    }
}
