//! Bounded brute-force reference implementations.
//!
//! Everything here works by enumerating words and replaying them; nothing
//! reuses the symbolic constructions of the checkers.

use std::collections::HashMap;

use crate::automata::{scc_ids, Nba};
use crate::counterexample::{AlmostWitness, Counterexample, Variant};
use crate::family::{Family, Fdfa, Fdwa, Progress, ReferenceSet};
use crate::word::{canonical_rep, words_up_to, Representation, Symbol};

fn all_pairs(k: usize, max_u: usize, max_x: usize) -> Vec<Representation> {
    let loops: Vec<_> = words_up_to(k, max_x).into_iter().skip(1).collect();
    let mut out = Vec::new();
    for u in words_up_to(k, max_u) {
        for x in &loops {
            out.push(Representation { spoke: u.clone(), cycle: x.clone() });
        }
    }
    out.sort();
    out
}

/// Normalized pairs within the bounds, in llex order of `u$x`.
pub fn enumerate_normalized<P: Progress>(f: &Family<P>, max_u: usize, max_x: usize) -> Vec<Representation> {
    all_pairs(f.alphabet().len(), max_u, max_x)
        .into_iter()
        .filter(|r| f.is_normalized(r))
        .collect()
}

/// Group the reference-set pairs by UP-word and report a group with mixed acceptance.
/// Groups are ordered by their least accepted member; the witness pairs that
/// member with the least rejected one.
pub fn brute_saturation<P: Progress>(
    f: &Family<P>,
    ref_set: ReferenceSet,
    max_u: usize,
    max_x: usize,
) -> Option<Counterexample> {
    let mut groups: HashMap<Representation, (Option<Representation>, Option<Representation>)> = HashMap::new();
    for r in all_pairs(f.alphabet().len(), max_u, max_x) {
        if !f.in_reference_set(&r, ref_set) {
            continue;
        }
        let acc = f.accepts(&r, ref_set);
        let e = groups.entry(canonical_rep(&r)).or_default();
        let slot = if acc { &mut e.0 } else { &mut e.1 };
        // pairs arrive in increasing order, so the first one is the least
        if slot.is_none() {
            *slot = Some(r);
        }
    }
    groups
        .into_values()
        .filter_map(|(a, r)| Some((a?, r?)))
        .min()
        .map(|(a, r)| Counterexample {
            variant: Variant::Pair,
            left: a,
            right: r,
            left_accepted: true,
            right_accepted: false,
        })
}

/// First normalized accepted `(u, x)` with some power `2 ≤ i ≤ max_power` rejected.
/// Spokes range over the access words of the leading states.
pub fn brute_almost_saturation(f: &Fdfa, max_x: usize, max_power: usize) -> Option<AlmostWitness> {
    let t = f.leading();
    let mut cands: Vec<Representation> = Vec::new();
    for q in 0..t.size() {
        for x in words_up_to(f.alphabet().len(), max_x).into_iter().skip(1) {
            cands.push(Representation { spoke: t.access(q).clone(), cycle: x });
        }
    }
    cands.sort();
    for r in cands {
        if !f.is_normalized(&r) || !f.accepts(&r, ReferenceSet::Normalized) {
            continue;
        }
        for i in 2..=max_power {
            let p = Representation { spoke: r.spoke.clone(), cycle: r.cycle.repeat(i) };
            if !f.accepts(&p, ReferenceSet::Normalized) {
                return Some(AlmostWitness { spoke: r.spoke, cycle: r.cycle, power: i });
            }
        }
    }
    None
}

/// Whether `u·x^ω` has some normalized representation accepted by the FDWA.
///
/// Every such representation is `(w[..m], r^j)` for a prefix length `m` and a
/// rotation `r` of the primitive loop; since the weak reading of `r^j` only
/// depends on `r^ω`, it suffices to try `m` over enough periods to repeat the
/// leading state, and `j ≤ |T|`.
pub fn fdwa_up_membership(w: &Fdwa, r: &Representation) -> bool {
    let t = w.leading();
    let c = canonical_rep(r);
    let (u0, x0) = (c.spoke, c.cycle);
    let p = x0.len();
    let word = |i: usize| if i < u0.len() { u0[i] } else { x0[(i - u0.len()) % p] };
    for m in u0.len()..=u0.len() + p * (t.size() + 1) {
        let spoke: Vec<Symbol> = (0..m).map(word).collect();
        let rot: Vec<Symbol> = (m..m + p).map(word).collect();
        let q = t.reach(&spoke);
        let mut s = q;
        for _ in 0..t.size() {
            s = t.run(s, &rot);
            if s == q {
                if w.progress(q).accepts_omega(&rot) {
                    return true;
                }
                break;
            }
        }
    }
    false
}

/// Whether some run of the Büchi automaton on `u·x^ω` visits accepting states infinitely often.
pub fn nba_lasso_accepts(a: &Nba, u: &[Symbol], x: &[Symbol]) -> bool {
    assert!(!x.is_empty(), "loop must be non-empty");
    let n = a.nfa();
    let m = x.len();
    let size = n.size() * m;
    let start = n.run_set(u);
    let node = |s: usize, i: usize| s * m + i;
    let mut reach = vec![false; size];
    let mut stack: Vec<usize> = (0..n.size()).filter(|&s| start[s]).map(|s| node(s, 0)).collect();
    for &v in &stack {
        reach[v] = true;
    }
    let mut edges = Vec::new();
    while let Some(v) = stack.pop() {
        let (s, i) = (v / m, v % m);
        for &t in n.succ(s, x[i]) {
            let w = node(t, (i + 1) % m);
            edges.push((v, w));
            if !reach[w] {
                reach[w] = true;
                stack.push(w);
            }
        }
    }
    let ids = scc_ids(size, edges.iter().copied());
    let mut nontrivial = vec![false; size];
    let mut count: HashMap<usize, usize> = HashMap::new();
    for v in (0..size).filter(|&v| reach[v]) {
        *count.entry(ids[v]).or_default() += 1;
    }
    for &(v, w) in &edges {
        if v == w || count[&ids[v]] > 1 {
            nontrivial[v] = true;
        }
    }
    (0..size).any(|v| reach[v] && nontrivial[v] && n.is_accepting(v / m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Nfa;
    use crate::fixtures;
    use crate::word::Alphabet;
    use proptest::prelude::*;

    fn rep(a: &Alphabet, u: &str, x: &str) -> Representation {
        Representation::new(a.parse(u).unwrap(), a.parse(x).unwrap()).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let a = Alphabet::from_chars("a");
        let f = fixtures::empty_fdfa(a.clone());
        assert_eq!(enumerate_normalized(&f, 1, 1), vec![rep(&a, "", "a"), rep(&a, "a", "a")]);
        let m = fixtures::mod2_universal();
        assert_eq!(enumerate_normalized(&m, 0, 2), vec![rep(&a, "", "aa")]);
        // trivial leading system: every pair is normalized
        let ab = fixtures::ba_star();
        let expected: usize = (0..=3).map(|l| 2usize.pow(l)).sum::<usize>() * (1..=3).map(|l| 2usize.pow(l)).sum::<usize>();
        assert_eq!(enumerate_normalized(&ab, 3, 3).len(), expected);
    }

    #[test]
    fn brute_saturation_examples() {
        let f = fixtures::ba_star();
        let ab = f.alphabet().clone();
        // the least mixed group is b^ω; the (ba)^ω group is mixed as well
        let c = brute_saturation(&f, ReferenceSet::Normalized, 4, 4).unwrap();
        assert_eq!(c.left, rep(&ab, "", "b"));
        assert_eq!(c.right, rep(&ab, "", "bb"));
        assert!(c.replays(&f, ReferenceSet::Normalized));
        assert!(f.accepts(&rep(&ab, "", "ba"), ReferenceSet::Normalized));
        assert!(!f.accepts(&rep(&ab, "b", "ab"), ReferenceSet::Normalized));
        assert!(brute_saturation(&fixtures::ab_omega_saturated(), ReferenceSet::Normalized, 5, 5).is_none());
        let odd = fixtures::odd();
        let a = odd.alphabet().clone();
        let c = brute_saturation(&odd, ReferenceSet::Normalized, 2, 2).unwrap();
        assert_eq!((c.left, c.right), (rep(&a, "", "a"), rep(&a, "", "aa")));
    }

    #[test]
    fn brute_almost_examples() {
        let w = brute_almost_saturation(&fixtures::odd(), 3, 4).unwrap();
        assert_eq!((w.spoke.len(), w.cycle.clone(), w.power), (0, vec![0], 2));
        assert!(brute_almost_saturation(&fixtures::universal_fdfa(Alphabet::from_chars("ab")), 4, 4).is_none());
    }

    fn inf_a() -> Nba {
        // state 1 is entered by reading a
        Nba(Nfa::new(Alphabet::from_chars("ab"), 2, &[0], &[(0, 0, 1), (0, 1, 0), (1, 0, 1), (1, 1, 0)], &[1]).unwrap())
    }

    #[test]
    fn lasso_examples() {
        let ab = Alphabet::from_chars("ab");
        let univ = Nba(Nfa::new(ab.clone(), 1, &[0], &[(0, 0, 0), (0, 1, 0)], &[0]).unwrap());
        assert!(nba_lasso_accepts(&univ, &[1], &[0, 1]));
        let empty = Nba(Nfa::new(ab.clone(), 1, &[0], &[], &[]).unwrap());
        assert!(!nba_lasso_accepts(&empty, &[], &[0]));
        assert!(nba_lasso_accepts(&inf_a(), &[], &[0, 1]));
        assert!(!nba_lasso_accepts(&inf_a(), &[], &[1]));
        assert!(!nba_lasso_accepts(&inf_a(), &[0, 0], &[1]));
    }

    #[test]
    fn all_finds_whenever_normalized_does() {
        for f in [fixtures::ba_star(), fixtures::odd(), fixtures::mod2_universal()] {
            if brute_saturation(&f, ReferenceSet::Normalized, 3, 3).is_some() {
                assert!(brute_saturation(&f, ReferenceSet::All, 3, 3).is_some());
            }
        }
    }

    proptest! {
        #[test]
        fn lasso_invariances(u in prop::collection::vec(0usize..2, 0..4), x in prop::collection::vec(0usize..2, 1..4)) {
            let a = inf_a();
            let base = nba_lasso_accepts(&a, &u, &x);
            let ux = [u.clone(), x.clone()].concat();
            prop_assert_eq!(nba_lasso_accepts(&a, &ux, &x), base);
            prop_assert_eq!(nba_lasso_accepts(&a, &u, &x.repeat(2)), base);
        }
    }
}
