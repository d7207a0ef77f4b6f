//! Polynomial checks for saturation and full saturation of FDFAs, and for
//! saturation of FDWAs.

use std::collections::{HashMap, VecDeque};

use crate::automata::{explore, Dfa};
use crate::counterexample::{Counterexample, Variant};
use crate::error::{Error, Result};
use crate::family::{Fdfa, Fdwa, ReferenceSet};
use crate::word::{Representation, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaturationStatus {
    Saturated,
    NotSaturated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Loopshift,
    Power,
    FdwaWitness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaturationMode {
    Saturated,
    FullySaturated,
}

impl SaturationMode {
    pub fn reference_set(self) -> ReferenceSet {
        match self {
            SaturationMode::Saturated => ReferenceSet::Normalized,
            SaturationMode::FullySaturated => ReferenceSet::All,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationVerdict {
    pub status: SaturationStatus,
    pub witness: Option<Counterexample>,
    pub stage: Option<Stage>,
}

impl SaturationVerdict {
    fn holds() -> Self {
        SaturationVerdict { status: SaturationStatus::Saturated, witness: None, stage: None }
    }

    fn refuted(stage: Stage, c: Counterexample) -> Self {
        SaturationVerdict { status: SaturationStatus::NotSaturated, witness: Some(c), stage: Some(stage) }
    }

    pub fn is_saturated(&self) -> bool {
        self.status == SaturationStatus::Saturated
    }
}

/// For a refined family, the leading state reached alongside every progress state.
/// `None` if some progress state is paired with two leading states.
pub(crate) fn leading_tracks(f: &Fdfa) -> Option<Vec<Vec<usize>>> {
    let t = f.leading();
    let k = f.alphabet().len();
    let mut out = Vec::new();
    for q in 0..t.size() {
        let d = f.progress(q);
        let mut track = vec![usize::MAX; d.size()];
        track[0] = q;
        let mut stack = vec![0];
        while let Some(s) = stack.pop() {
            for a in 0..k {
                let (s2, t2) = (d.succ(s, a), t.succ(track[s], a));
                if track[s2] == usize::MAX {
                    track[s2] = t2;
                    stack.push(s2);
                } else if track[s2] != t2 {
                    return None;
                }
            }
        }
        out.push(track);
    }
    Some(out)
}

fn require_refined(f: &Fdfa) -> Result<Vec<Vec<usize>>> {
    leading_tracks(f).ok_or_else(|| Error::Precondition("family is not refined".into()))
}

/// Search, for every leading state `u` and symbol `a`, a word `w` with
/// `(u, aw)` in the reference set and differing acceptance of `(u, aw)` and `(ua, wa)`.
/// Witnesses with `(u, aw)` accepted are preferred.
pub fn check_loopshift_stable(f: &Fdfa, ref_set: ReferenceSet) -> Result<SaturationVerdict> {
    let tracks = require_refined(f)?;
    let t = f.leading();
    let k = f.alphabet().len();
    for want_left in [true, false] {
        for q in 0..t.size() {
            for a in 0..k {
                let d1 = f.progress(q);
                let qa = t.succ(q, a);
                let d2 = f.progress(qa);
                let start = (d1.succ(0, a), 0usize);
                let (states, access, _) = explore(k, start, |&(s1, s2), b| (d1.succ(s1, b), d2.succ(s2, b)));
                let hit = states.iter().zip(&access).find(|&(&(s1, s2), _)| {
                    let in_ref = ref_set == ReferenceSet::All || tracks[q][s1] == q;
                    let acc1 = d1.is_accepting(s1);
                    let acc2 = d2.is_accepting(d2.succ(s2, a));
                    in_ref && acc1 == want_left && acc2 != want_left
                });
                if let Some((_, w)) = hit {
                    let u = t.access(q).clone();
                    let left = Representation { spoke: u.clone(), cycle: [vec![a], w.clone()].concat() };
                    let right = Representation {
                        spoke: [u, vec![a]].concat(),
                        cycle: [w.clone(), vec![a]].concat(),
                    };
                    return Ok(SaturationVerdict::refuted(
                        Stage::Loopshift,
                        Counterexample {
                            variant: Variant::Loopshift,
                            left,
                            right,
                            left_accepted: want_left,
                            right_accepted: !want_left,
                        },
                    ));
                }
            }
        }
    }
    Ok(SaturationVerdict::holds())
}

/// Progress DFA of `q` restricted to loops in the reference set, then minimized.
fn restricted_minimal(f: &Fdfa, tracks: &[Vec<usize>], q: usize, ref_set: ReferenceSet) -> Dfa {
    let d = f.progress(q);
    let acc = (0..d.size())
        .map(|s| d.is_accepting(s) && (ref_set == ReferenceSet::All || tracks[q][s] == q))
        .collect();
    d.with_accepting(acc).minimize()
}

/// For each state of the restricted minimal progress DFA, take its least non-empty
/// reference-set representative and look for a power flipping acceptance.
pub fn check_power_stable(f: &Fdfa, ref_set: ReferenceSet) -> Result<SaturationVerdict> {
    let tracks = require_refined(f)?;
    let t = f.leading();
    let k = f.alphabet().len();
    for q in 0..t.size() {
        let m = restricted_minimal(f, &tracks, q, ref_set);
        // BFS over (minimal state, leading state) to find representatives
        let mut rep: Vec<Option<Word>> = vec![None; m.size()];
        let mut seen = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert((0usize, q), ());
        queue.push_back((0usize, q, Vec::new()));
        while let Some((s, l, w)) = queue.pop_front() {
            for a in 0..k {
                let (s2, l2) = (m.succ(s, a), t.succ(l, a));
                let mut w2 = w.clone();
                w2.push(a);
                if rep[s2].is_none() && (ref_set == ReferenceSet::All || l2 == q) {
                    rep[s2] = Some(w2.clone());
                }
                if seen.insert((s2, l2), ()).is_none() {
                    queue.push_back((s2, l2, w2));
                }
            }
        }
        let bound = m.size().max(f.progress(q).size()) + 1;
        for x in rep.into_iter().flatten() {
            let mut first_acc = None;
            let mut first_rej = None;
            let mut s = 0;
            for i in 1..=bound {
                s = m.run(s, &x);
                let slot = if m.is_accepting(s) { &mut first_acc } else { &mut first_rej };
                slot.get_or_insert(i);
            }
            if let (Some(i), Some(j)) = (first_acc, first_rej) {
                let u = t.access(q).clone();
                return Ok(SaturationVerdict::refuted(
                    Stage::Power,
                    Counterexample {
                        variant: Variant::Power,
                        left: Representation { spoke: u.clone(), cycle: x.repeat(i) },
                        right: Representation { spoke: u, cycle: x.repeat(j) },
                        left_accepted: true,
                        right_accepted: false,
                    },
                ));
            }
        }
    }
    Ok(SaturationVerdict::holds())
}

/// Refine, then run the loopshift and power stages against the reference set of `mode`.
/// Witnesses are words, so they replay unchanged on the input family.
pub fn check_saturated(f: &Fdfa, mode: SaturationMode) -> SaturationVerdict {
    let ref_set = mode.reference_set();
    let refined = f.refine();
    let v = check_loopshift_stable(&refined, ref_set).expect("refined");
    if !v.is_saturated() {
        return v;
    }
    check_power_stable(&refined, ref_set).expect("refined")
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    /// Reading `x`: B_u from ι, B_u from q, B_v from r, leading state.
    First(usize, usize, usize, usize),
    /// Reading `y`: B_u from p, B_v from ι, B_v continuing from r, leading state.
    Second(usize, usize, usize, usize),
}

/// Saturation of an FDWA: look for `u, p, q, r` and words `x, y` such that `(u, xy)`
/// is normalized, `x` leads to `p` from the initial state and from `q`, `y` leads
/// from `p` to `q` and to `r` in `B_v`, `xy` loops on `r`, and `p`, `r` differ in
/// acceptance. Then `(u, xy)` and `(ux, yx)` are a witness.
pub fn check_fdwa_saturated(w: &Fdwa) -> SaturationVerdict {
    let refined = w.refine().as_fdfa();
    let tracks = leading_tracks(&refined).expect("refined");
    let t = refined.leading();
    let k = refined.alphabet().len();
    for u in 0..t.size() {
        let b = refined.progress(u);
        for p in 0..b.size() {
            let v = tracks[u][p];
            let bv = refined.progress(v);
            for q in 0..b.size() {
                if b.is_accepting(p) != b.is_accepting(q) {
                    continue;
                }
                for r in 0..bv.size() {
                    if bv.is_accepting(r) == b.is_accepting(p) {
                        continue;
                    }
                    if let Some((x, y)) = search_pair(&refined, u, p, q, v, r, k) {
                        let spoke = t.access(u).clone();
                        let left = Representation { spoke: spoke.clone(), cycle: [x.clone(), y.clone()].concat() };
                        let right = Representation { spoke: [spoke, x.clone()].concat(), cycle: [y, x].concat() };
                        return SaturationVerdict::refuted(
                            Stage::FdwaWitness,
                            Counterexample {
                                variant: Variant::Pair,
                                left,
                                right,
                                left_accepted: b.is_accepting(p),
                                right_accepted: bv.is_accepting(r),
                            },
                        );
                    }
                }
            }
        }
    }
    SaturationVerdict::holds()
}

/// Llex-least split word `xy` for one combination, by BFS with the split as an ε-move.
fn search_pair(f: &Fdfa, u: usize, p: usize, q: usize, v: usize, r: usize, k: usize) -> Option<(Word, Word)> {
    let t = f.leading();
    let b = f.progress(u);
    let bv = f.progress(v);
    let mut parent: HashMap<Node, Option<(Node, Option<usize>)>> = HashMap::new();
    let mut queue = VecDeque::new();
    let split = |n: Node| match n {
        Node::First(b1, b2, c, l) if b1 == p && b2 == p => Some(Node::Second(p, 0, c, l)),
        _ => None,
    };
    let goal = |n: Node, nonempty: bool| {
        matches!(n, Node::Second(d, e, c, l) if nonempty && d == q && e == r && c == r && l == u)
    };
    let start = Node::First(0, q, r, u);
    let mut discover = |n: Node, from: Option<(Node, Option<usize>)>, queue: &mut VecDeque<Node>| {
        if parent.contains_key(&n) {
            return false;
        }
        parent.insert(n, from);
        queue.push_back(n);
        true
    };
    discover(start, None, &mut queue);
    if let Some(s) = split(start) {
        discover(s, Some((start, None)), &mut queue);
    }
    let mut found = None;
    let mut depth: HashMap<Node, usize> = HashMap::new();
    depth.insert(start, 0);
    if let Some(s) = split(start) {
        depth.insert(s, 0);
    }
    'bfs: while let Some(n) = queue.pop_front() {
        for a in 0..k {
            let next = match n {
                Node::First(b1, b2, c, l) => {
                    Node::First(b.succ(b1, a), b.succ(b2, a), bv.succ(c, a), t.succ(l, a))
                }
                Node::Second(d, e, c, l) => {
                    Node::Second(b.succ(d, a), bv.succ(e, a), bv.succ(c, a), t.succ(l, a))
                }
            };
            let dn = depth[&n] + 1;
            if discover(next, Some((n, Some(a))), &mut queue) {
                depth.insert(next, dn);
                if goal(next, true) {
                    found = Some(next);
                    break 'bfs;
                }
                if let Some(s) = split(next) {
                    if discover(s, Some((next, None)), &mut queue) {
                        depth.insert(s, dn);
                        if goal(s, true) {
                            found = Some(s);
                            break 'bfs;
                        }
                    }
                }
            }
        }
    }
    // rebuild, recording where the split happened
    let mut cur = found?;
    let mut letters = Vec::new();
    let mut split_at = None;
    while let Some(Some((prev, sym))) = parent.get(&cur).cloned() {
        match sym {
            Some(a) => letters.push(a),
            None => split_at = Some(letters.len()),
        }
        cur = prev;
    }
    letters.reverse();
    let cut = letters.len() - split_at.expect("goal lies after the split");
    Some((letters[..cut].to_vec(), letters[cut..].to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle::brute_saturation;
    use crate::word::Alphabet;

    fn rep(a: &Alphabet, u: &str, x: &str) -> Representation {
        Representation::new(a.parse(u).unwrap(), a.parse(x).unwrap()).unwrap()
    }

    #[test]
    fn loopshift_examples() {
        let f = fixtures::ba_star();
        let ab = f.alphabet().clone();
        let v = check_loopshift_stable(&f, ReferenceSet::Normalized).unwrap();
        let c = v.witness.unwrap();
        assert_eq!((c.left, c.right), (rep(&ab, "", "ba"), rep(&ab, "b", "ab")));
        assert!(c.left_accepted && !c.right_accepted);
        assert!(check_loopshift_stable(&fixtures::odd(), ReferenceSet::Normalized).unwrap().is_saturated());
        assert!(check_loopshift_stable(&fixtures::bi_ab(), ReferenceSet::Normalized).unwrap().is_saturated());
        assert!(check_loopshift_stable(&fixtures::mod2_universal(), ReferenceSet::Normalized).is_err());
    }

    #[test]
    fn power_examples() {
        let odd = fixtures::odd();
        let a = odd.alphabet().clone();
        let c = check_power_stable(&odd, ReferenceSet::Normalized).unwrap().witness.unwrap();
        assert_eq!((c.left, c.right), (rep(&a, "", "a"), rep(&a, "", "aa")));
        let ab = Alphabet::from_chars("ab");
        assert!(check_power_stable(&fixtures::universal_fdfa(ab.clone()), ReferenceSet::Normalized)
            .unwrap()
            .is_saturated());
        // words containing an a
        let d = Dfa::new(ab.clone(), 2, 0, |q, a| Some(if a == 0 { 1 } else { q }), &[1]).unwrap();
        let f = Fdfa::new(crate::TransitionSystem::trivial(ab), vec![d]).unwrap();
        assert!(check_power_stable(&f, ReferenceSet::Normalized).unwrap().is_saturated());
    }

    #[test]
    fn pipeline_examples() {
        let v = check_saturated(&fixtures::ba_star(), SaturationMode::Saturated);
        assert_eq!(v.stage, Some(Stage::Loopshift));
        let v = check_saturated(&fixtures::odd(), SaturationMode::Saturated);
        assert_eq!(v.stage, Some(Stage::Power));
        let f = fixtures::ab_omega_saturated();
        assert!(check_saturated(&f, SaturationMode::Saturated).is_saturated());
        assert!(check_saturated(&f, SaturationMode::FullySaturated).is_saturated());
        assert!(brute_saturation(&f, ReferenceSet::Normalized, 6, 6).is_none());
    }

    #[test]
    fn fdwa_examples() {
        let ab = Alphabet::from_chars("ab");
        let univ = Fdwa::from_fdfa(&fixtures::universal_fdfa(ab)).unwrap();
        assert!(check_fdwa_saturated(&univ).is_saturated());
        // the first letter decides: a leads to an accepting sink, b to a rejecting one
        let d = Dfa::new(Alphabet::from_chars("ab"), 3, 0, |q, a| Some(if q == 0 { 1 + a } else { q }), &[1]).unwrap();
        let w = Fdwa::from_fdfa(&Fdfa::new(crate::TransitionSystem::trivial(Alphabet::from_chars("ab")), vec![d]).unwrap()).unwrap();
        let v = check_fdwa_saturated(&w);
        assert_eq!(v.stage, Some(Stage::FdwaWitness));
        let c = v.witness.unwrap();
        assert!(c.replays(&w, ReferenceSet::Normalized));
    }
}
