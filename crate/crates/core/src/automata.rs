//! Transition systems, DFAs, NFAs and weak Büchi automata.
//!
//! Deterministic structures are always complete and trimmed, with states
//! numbered in llex order of their minimal access words (state 0 is initial).

use std::collections::HashMap;
use std::hash::Hash;

use petgraph::graph::DiGraph;

use crate::error::{input, Result};
use crate::word::{Alphabet, Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransitionSystem {
    alphabet: Alphabet,
    delta: Vec<usize>,
    access: Vec<Word>,
}

/// BFS over an implicit deterministic system in llex order.
/// Returns the discovered states, their access words and the dense transition table.
pub(crate) fn explore<S, F>(k: usize, init: S, mut step: F) -> (Vec<S>, Vec<Word>, Vec<usize>)
where
    S: Clone + Eq + Hash,
    F: FnMut(&S, Symbol) -> S,
{
    let mut index: HashMap<S, usize> = HashMap::new();
    let mut states = vec![init.clone()];
    let mut access = vec![Vec::new()];
    let mut delta = Vec::new();
    index.insert(init, 0);
    let mut i = 0;
    while i < states.len() {
        for a in 0..k {
            let t = step(&states[i], a);
            let j = match index.get(&t) {
                Some(&j) => j,
                None => {
                    let j = states.len();
                    index.insert(t.clone(), j);
                    states.push(t);
                    let mut w = access[i].clone();
                    w.push(a);
                    access.push(w);
                    j
                }
            };
            delta.push(j);
        }
        i += 1;
    }
    (states, access, delta)
}

impl TransitionSystem {
    /// Build from a possibly partial transition function; missing transitions go to a sink.
    pub fn new(
        alphabet: Alphabet,
        n: usize,
        initial: usize,
        succ: impl Fn(usize, Symbol) -> Option<usize>,
    ) -> Result<Self> {
        let (ts, _) = Self::build(alphabet, n, initial, succ)?;
        Ok(ts)
    }

    /// Like [`TransitionSystem::new`], also returning for each reachable input state its new index.
    pub(crate) fn build(
        alphabet: Alphabet,
        n: usize,
        initial: usize,
        succ: impl Fn(usize, Symbol) -> Option<usize>,
    ) -> Result<(Self, Vec<Option<usize>>)> {
        if initial >= n {
            return input(format!("initial state {initial} out of range"));
        }
        for q in 0..n {
            for a in 0..alphabet.len() {
                if let Some(t) = succ(q, a) {
                    if t >= n {
                        return input(format!("successor {t} of state {q} out of range"));
                    }
                }
            }
        }
        let k = alphabet.len();
        // `n` encodes the completion sink
        let (states, access, delta) = explore(k, initial, |&q, a| {
            if q == n {
                n
            } else {
                succ(q, a).unwrap_or(n)
            }
        });
        let mut map = vec![None; n];
        for (i, &q) in states.iter().enumerate() {
            if q < n {
                map[q] = Some(i);
            }
        }
        Ok((TransitionSystem { alphabet, delta, access }, map))
    }

    /// The one-state system looping on every symbol.
    pub fn trivial(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        TransitionSystem { alphabet, delta: vec![0; k], access: vec![Vec::new()] }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn size(&self) -> usize {
        self.access.len()
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn succ(&self, q: usize, a: Symbol) -> usize {
        self.delta[q * self.alphabet.len() + a]
    }

    pub fn run(&self, q: usize, w: &[Symbol]) -> usize {
        w.iter().fold(q, |q, &a| self.succ(q, a))
    }

    /// The state reached from the initial state.
    pub fn reach(&self, w: &[Symbol]) -> usize {
        self.run(0, w)
    }

    /// Run on a word given by name, checking the symbols.
    pub fn ts_run(&self, q: usize, w: &[Symbol]) -> Result<usize> {
        if q >= self.size() {
            return input(format!("state {q} out of range"));
        }
        if let Some(&a) = w.iter().find(|&&a| a >= self.alphabet.len()) {
            return input(format!("unknown symbol index {a}"));
        }
        Ok(self.run(q, w))
    }

    pub fn access(&self, q: usize) -> &Word {
        &self.access[q]
    }

    /// The same transition structure explored from another state.
    pub fn rooted_at(&self, q: usize) -> (TransitionSystem, Vec<usize>) {
        let k = self.alphabet.len();
        let (states, access, delta) = explore(k, q, |&s, a| self.succ(s, a));
        (TransitionSystem { alphabet: self.alphabet.clone(), delta, access }, states)
    }
}

/// Strongly connected component id of every state.
pub(crate) fn scc_ids(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut g: DiGraph<(), ()> = DiGraph::new();
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for (s, t) in edges {
        g.add_edge(nodes[s], nodes[t], ());
    }
    let mut id = vec![0; n];
    for (c, comp) in petgraph::algo::tarjan_scc(&g).into_iter().enumerate() {
        for v in comp {
            id[v.index()] = c;
        }
    }
    id
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    ts: TransitionSystem,
    accepting: Vec<bool>,
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        n: usize,
        initial: usize,
        succ: impl Fn(usize, Symbol) -> Option<usize>,
        accepting: &[usize],
    ) -> Result<Self> {
        if let Some(&f) = accepting.iter().find(|&&f| f >= n) {
            return input(format!("accepting state {f} out of range"));
        }
        let (ts, map) = TransitionSystem::build(alphabet, n, initial, succ)?;
        let mut acc = vec![false; ts.size()];
        for &f in accepting {
            if let Some(i) = map[f] {
                acc[i] = true;
            }
        }
        Ok(Dfa { ts, accepting: acc })
    }

    /// Build by exploring an implicit automaton from `init`.
    pub fn explore<S: Clone + Eq + Hash>(
        alphabet: Alphabet,
        init: S,
        step: impl FnMut(&S, Symbol) -> S,
        accept: impl Fn(&S) -> bool,
    ) -> (Dfa, Vec<S>) {
        let (states, access, delta) = explore(alphabet.len(), init, step);
        let accepting = states.iter().map(accept).collect();
        (Dfa { ts: TransitionSystem { alphabet, delta, access }, accepting }, states)
    }

    /// DFA accepting every word (including ε).
    pub fn universal(alphabet: Alphabet) -> Self {
        Dfa { ts: TransitionSystem::trivial(alphabet), accepting: vec![true] }
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Dfa { ts: TransitionSystem::trivial(alphabet), accepting: vec![false] }
    }

    pub fn ts(&self) -> &TransitionSystem {
        &self.ts
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.ts.alphabet()
    }

    pub fn size(&self) -> usize {
        self.ts.size()
    }

    pub fn succ(&self, q: usize, a: Symbol) -> usize {
        self.ts.succ(q, a)
    }

    pub fn run(&self, q: usize, w: &[Symbol]) -> usize {
        self.ts.run(q, w)
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting(&self) -> &[bool] {
        &self.accepting
    }

    pub fn accepts(&self, w: &[Symbol]) -> bool {
        self.accepting[self.ts.reach(w)]
    }

    pub fn with_accepting(&self, accepting: Vec<bool>) -> Dfa {
        assert_eq!(accepting.len(), self.size());
        Dfa { ts: self.ts.clone(), accepting }
    }

    pub fn complement(&self) -> Dfa {
        self.with_accepting(self.accepting.iter().map(|b| !b).collect())
    }

    /// The same automaton with another initial state, trimmed.
    pub fn rooted_at(&self, q: usize) -> Dfa {
        let (ts, states) = self.ts.rooted_at(q);
        let accepting = states.iter().map(|&s| self.accepting[s]).collect();
        Dfa { ts, accepting }
    }

    /// Minimal DFA for the same language.
    pub fn minimize(&self) -> Dfa {
        let labels: Vec<usize> = self.accepting.iter().map(|&b| b as usize).collect();
        self.minimize_with_labels(&labels).0
    }

    /// Coarsest congruence refining `labels` (which must refine acceptance),
    /// returned as a quotient DFA plus the class of every original state.
    pub fn minimize_with_labels(&self, labels: &[usize]) -> (Dfa, Vec<usize>) {
        let n = self.size();
        let k = self.alphabet().len();
        let mut class = renumber(labels.iter().map(|&l| vec![l]).collect());
        loop {
            let sigs: Vec<Vec<usize>> = (0..n)
                .map(|q| {
                    let mut s = Vec::with_capacity(k + 1);
                    s.push(class[q]);
                    s.extend((0..k).map(|a| class[self.succ(q, a)]));
                    s
                })
                .collect();
            let next = renumber(sigs);
            let stable = next.iter().max() == class.iter().max();
            class = next;
            if stable {
                break;
            }
        }
        // pick a representative per class, then explore the quotient
        let mut rep = HashMap::new();
        for q in 0..n {
            rep.entry(class[q]).or_insert(q);
        }
        let (dfa, states) = Dfa::explore(
            self.alphabet().clone(),
            class[0],
            |&c, a| class[self.succ(rep[&c], a)],
            |&c| self.accepting[rep[&c]],
        );
        let pos: HashMap<usize, usize> = states.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        (dfa, class.iter().map(|c| pos[c]).collect())
    }

    /// Shortest, then lexicographically least, accepted word.
    pub fn shortest_accepted(&self) -> Option<Word> {
        // states are numbered in llex order of access words
        (0..self.size()).find(|&q| self.accepting[q]).map(|q| self.ts.access(q).clone())
    }

    pub fn is_empty_language(&self) -> bool {
        !self.accepting.iter().any(|&b| b)
    }

    pub fn intersect(&self, other: &Dfa) -> Dfa {
        Dfa::explore(
            self.alphabet().clone(),
            (0usize, 0usize),
            |&(p, q), a| (self.succ(p, a), other.succ(q, a)),
            |&(p, q)| self.accepting[p] && other.accepting[q],
        )
        .0
    }

    pub fn to_nfa(&self) -> Nfa {
        let k = self.alphabet().len();
        Nfa {
            alphabet: self.alphabet().clone(),
            initials: vec![0],
            delta: (0..self.size() * k).map(|i| vec![self.ts.delta[i]]).collect(),
            accepting: self.accepting.clone(),
        }
    }
}

fn renumber(sigs: Vec<Vec<usize>>) -> Vec<usize> {
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    sigs.into_iter()
        .map(|s| {
            let next = ids.len();
            *ids.entry(s).or_insert(next)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Nfa {
    alphabet: Alphabet,
    initials: Vec<usize>,
    delta: Vec<Vec<usize>>,
    accepting: Vec<bool>,
}

impl Nfa {
    pub fn new(
        alphabet: Alphabet,
        n: usize,
        initials: &[usize],
        transitions: &[(usize, Symbol, usize)],
        accepting: &[usize],
    ) -> Result<Self> {
        if initials.is_empty() {
            return input("an NFA needs at least one initial state");
        }
        let k = alphabet.len();
        let mut delta = vec![Vec::new(); n * k];
        for &(s, a, t) in transitions {
            if s >= n || t >= n || a >= k {
                return input(format!("transition ({s}, {a}, {t}) out of range"));
            }
            delta[s * k + a].push(t);
        }
        for d in &mut delta {
            d.sort_unstable();
            d.dedup();
        }
        let mut acc = vec![false; n];
        for &f in accepting {
            if f >= n {
                return input(format!("accepting state {f} out of range"));
            }
            acc[f] = true;
        }
        let mut init = initials.to_vec();
        if let Some(&i) = init.iter().find(|&&i| i >= n) {
            return input(format!("initial state {i} out of range"));
        }
        init.sort_unstable();
        init.dedup();
        Ok(Nfa { alphabet, initials: init, delta, accepting: acc }.trim())
    }

    /// Build from an automaton with ε-moves, eliminating them by closure.
    pub fn with_epsilon(
        alphabet: Alphabet,
        n: usize,
        initials: &[usize],
        transitions: &[(usize, Symbol, usize)],
        epsilon: &[(usize, usize)],
        accepting: &[usize],
    ) -> Result<Self> {
        let base = Nfa::new_untrimmed(alphabet, n, initials, transitions, accepting)?;
        let mut eps = vec![Vec::new(); n];
        for &(s, t) in epsilon {
            eps[s].push(t);
        }
        let closure: Vec<Vec<usize>> = (0..n)
            .map(|s| {
                let mut seen = vec![false; n];
                let mut stack = vec![s];
                seen[s] = true;
                while let Some(q) = stack.pop() {
                    for &t in &eps[q] {
                        if !seen[t] {
                            seen[t] = true;
                            stack.push(t);
                        }
                    }
                }
                (0..n).filter(|&q| seen[q]).collect()
            })
            .collect();
        let k = base.alphabet.len();
        let close = |set: &mut Vec<usize>| {
            let mut out: Vec<usize> = set.iter().flat_map(|&q| closure[q].iter().copied()).collect();
            out.sort_unstable();
            out.dedup();
            *set = out;
        };
        let mut delta = vec![Vec::new(); n * k];
        for s in 0..n {
            for a in 0..k {
                let mut succ: Vec<usize> =
                    closure[s].iter().flat_map(|&e| base.delta[e * k + a].iter().copied()).collect();
                close(&mut succ);
                delta[s * k + a] = succ;
            }
        }
        let mut init = base.initials.clone();
        close(&mut init);
        let accepting = (0..n).map(|s| closure[s].iter().any(|&e| base.accepting[e])).collect();
        Ok(Nfa { alphabet: base.alphabet, initials: init, delta, accepting }.trim())
    }

    fn new_untrimmed(
        alphabet: Alphabet,
        n: usize,
        initials: &[usize],
        transitions: &[(usize, Symbol, usize)],
        accepting: &[usize],
    ) -> Result<Self> {
        let k = alphabet.len();
        let mut delta = vec![Vec::new(); n * k];
        for &(s, a, t) in transitions {
            if s >= n || t >= n || a >= k {
                return input(format!("transition ({s}, {a}, {t}) out of range"));
            }
            delta[s * k + a].push(t);
        }
        let mut acc = vec![false; n];
        for &f in accepting {
            acc[f] = true;
        }
        Ok(Nfa { alphabet, initials: initials.to_vec(), delta, accepting: acc })
    }

    /// Keep the states that are reachable and can reach an accepting state.
    /// The result always keeps at least one initial state.
    pub fn trim(&self) -> Nfa {
        let n = self.size();
        let k = self.alphabet.len();
        let mut fwd = vec![false; n];
        let mut stack: Vec<usize> = self.initials.clone();
        for &i in &stack {
            fwd[i] = true;
        }
        while let Some(q) = stack.pop() {
            for a in 0..k {
                for &t in &self.delta[q * k + a] {
                    if !fwd[t] {
                        fwd[t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        let mut pred = vec![Vec::new(); n];
        for q in 0..n {
            for a in 0..k {
                for &t in &self.delta[q * k + a] {
                    pred[t].push(q);
                }
            }
        }
        let mut bwd = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&q| self.accepting[q]).collect();
        for &q in &stack {
            bwd[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &p in &pred[q] {
                if !bwd[p] {
                    bwd[p] = true;
                    stack.push(p);
                }
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&q| fwd[q] && bwd[q]).collect();
        if keep.is_empty() {
            // empty language: a single rejecting initial state
            return Nfa {
                alphabet: self.alphabet.clone(),
                initials: vec![0],
                delta: vec![Vec::new(); k],
                accepting: vec![false],
            };
        }
        let mut map = vec![usize::MAX; n];
        for (i, &q) in keep.iter().enumerate() {
            map[q] = i;
        }
        let m = keep.len();
        let mut delta = vec![Vec::new(); m * k];
        for (i, &q) in keep.iter().enumerate() {
            for a in 0..k {
                delta[i * k + a] = self.delta[q * k + a]
                    .iter()
                    .filter(|&&t| map[t] != usize::MAX)
                    .map(|&t| map[t])
                    .collect();
            }
        }
        let mut initials: Vec<usize> =
            self.initials.iter().filter(|&&q| map[q] != usize::MAX).map(|&q| map[q]).collect();
        initials.dedup();
        if initials.is_empty() {
            // no initial state is productive: language is empty
            return Nfa {
                alphabet: self.alphabet.clone(),
                initials: vec![0],
                delta: vec![Vec::new(); k],
                accepting: vec![false],
            };
        }
        Nfa {
            alphabet: self.alphabet.clone(),
            initials,
            delta,
            accepting: keep.iter().map(|&q| self.accepting[q]).collect(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn size(&self) -> usize {
        self.accepting.len()
    }

    pub fn initials(&self) -> &[usize] {
        &self.initials
    }

    pub fn succ(&self, q: usize, a: Symbol) -> &[usize] {
        &self.delta[q * self.alphabet.len() + a]
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting(&self) -> &[bool] {
        &self.accepting
    }

    pub fn transitions(&self) -> Vec<(usize, Symbol, usize)> {
        let k = self.alphabet.len();
        let mut out = Vec::new();
        for q in 0..self.size() {
            for a in 0..k {
                for &t in &self.delta[q * k + a] {
                    out.push((q, a, t));
                }
            }
        }
        out
    }

    pub fn step(&self, set: &[bool], a: Symbol) -> Vec<bool> {
        let mut out = vec![false; self.size()];
        for q in 0..self.size() {
            if set[q] {
                for &t in self.succ(q, a) {
                    out[t] = true;
                }
            }
        }
        out
    }

    pub fn run_set(&self, w: &[Symbol]) -> Vec<bool> {
        let mut cur = vec![false; self.size()];
        for &i in &self.initials {
            cur[i] = true;
        }
        for &a in w {
            cur = self.step(&cur, a);
        }
        cur
    }

    pub fn accepts(&self, w: &[Symbol]) -> bool {
        self.run_set(w).iter().zip(&self.accepting).any(|(&r, &f)| r && f)
    }

    /// Subset construction.
    pub fn determinize(&self) -> Dfa {
        let init = self.run_set(&[]);
        let acc = |set: &Vec<bool>| set.iter().zip(&self.accepting).any(|(&r, &f)| r && f);
        Dfa::explore(self.alphabet.clone(), init, |set, a| self.step(set, a), acc).0
    }

    /// Disjoint union of automata over the same alphabet.
    pub fn union(parts: &[Nfa]) -> Result<Nfa> {
        let first = parts.first().ok_or_else(|| crate::Error::Input("empty union".into()))?;
        let alphabet = first.alphabet.clone();
        let mut n = 0;
        let mut initials = Vec::new();
        let mut trans = Vec::new();
        let mut acc = Vec::new();
        for p in parts {
            if p.alphabet != alphabet {
                return input("union of automata over different alphabets");
            }
            initials.extend(p.initials.iter().map(|&i| i + n));
            trans.extend(p.transitions().into_iter().map(|(s, a, t)| (s + n, a, t + n)));
            acc.extend((0..p.size()).filter(|&q| p.accepting[q]).map(|q| q + n));
            n += p.size();
        }
        Nfa::new(alphabet, n, &initials, &trans, &acc)
    }
}

/// A DFA read with Büchi acceptance whose SCCs are uniformly accepting or rejecting.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeakDba {
    dfa: Dfa,
}

impl WeakDba {
    pub fn new(dfa: Dfa) -> Result<Self> {
        let k = dfa.alphabet().len();
        let n = dfa.size();
        let ids = scc_ids(n, (0..n).flat_map(|q| (0..k).map(move |a| (q, a))).map(|(q, a)| (q, dfa.succ(q, a))));
        for q in 0..n {
            for a in 0..k {
                let t = dfa.succ(q, a);
                if ids[q] == ids[t] && dfa.is_accepting(q) != dfa.is_accepting(t) {
                    return input(format!(
                        "automaton is not weak: states {q} and {t} share an SCC but differ in acceptance"
                    ));
                }
            }
        }
        Ok(WeakDba { dfa })
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn into_dfa(self) -> Dfa {
        self.dfa
    }

    pub fn size(&self) -> usize {
        self.dfa.size()
    }

    /// Whether `x^ω` is accepted.
    pub fn accepts_omega(&self, x: &[Symbol]) -> bool {
        weak_omega_accepts_from(&self.dfa, 0, x)
    }
}

/// Büchi acceptance of `x^ω` from state `q`: find the state cycle of whole
/// iterations of `x` and ask whether it visits an accepting state.
/// Weakness is not needed for this reading.
pub fn buchi_loop_accepts(d: &Dfa, x: &[Symbol]) -> bool {
    weak_omega_accepts_from(d, 0, x)
}

pub(crate) fn weak_omega_accepts_from(d: &Dfa, q: usize, x: &[Symbol]) -> bool {
    assert!(!x.is_empty());
    let mut seen = vec![usize::MAX; d.size()];
    let mut cur = q;
    let mut i = 0;
    while seen[cur] == usize::MAX {
        seen[cur] = i;
        cur = d.run(cur, x);
        i += 1;
    }
    // cur starts the cycle; walk it once letter by letter
    let start = cur;
    loop {
        for &a in x {
            if d.is_accepting(cur) {
                return true;
            }
            cur = d.succ(cur, a);
        }
        if cur == start {
            return false;
        }
    }
}

pub fn weak_omega_accepts(b: &WeakDba, x: &[Symbol]) -> bool {
    b.accepts_omega(x)
}

/// An NFA read with Büchi acceptance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Nba(pub Nfa);

impl Nba {
    pub fn nfa(&self) -> &Nfa {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::words_up_to;
    use proptest::prelude::*;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab")
    }

    /// Minimal DFA of b·a*: 0 initial, 1 accepting, 2 sink.
    pub(crate) fn ba_star() -> Dfa {
        let t = [[2, 1], [1, 2], [2, 2]];
        Dfa::new(ab(), 3, 0, |q, a| Some(t[q][a]), &[1]).unwrap()
    }

    #[test]
    fn run_examples() {
        let d = ba_star();
        let q = d.run(0, &[1, 0]);
        assert!(d.is_accepting(q));
        let odd = Dfa::new(Alphabet::from_chars("a"), 2, 0, |q, _| Some(1 - q), &[1]).unwrap();
        assert_eq!(odd.run(0, &[0, 0]), 0);
        assert_eq!(odd.ts().ts_run(0, &[]).unwrap(), 0);
        assert!(odd.ts().ts_run(0, &[3]).is_err());
    }

    #[test]
    fn completion_and_trimming() {
        // partial DFA for b·a* without the sink; state 3 unreachable
        let d = Dfa::new(ab(), 4, 0, |q, a| match (q, a) {
            (0, 1) => Some(1),
            (1, 0) => Some(1),
            (3, _) => Some(3),
            _ => None,
        }, &[1, 3])
        .unwrap();
        assert_eq!(d.size(), 3);
        assert!(d.accepts(&[1, 0, 0]));
        assert!(!d.accepts(&[0]));
    }

    #[test]
    fn minimization_examples() {
        // b·a* with the accepting state duplicated
        let t = [[3, 1], [2, 3], [1, 3], [3, 3]];
        let d = Dfa::new(ab(), 4, 0, |q, a| Some(t[q][a]), &[1, 2]).unwrap();
        assert_eq!(d.size(), 4);
        let m = d.minimize();
        assert_eq!(m, ba_star());
        let odd = Dfa::new(Alphabet::from_chars("a"), 2, 0, |q, _| Some(1 - q), &[1]).unwrap();
        assert_eq!(odd.minimize(), odd);
        let empty = Dfa::new(ab(), 4, 0, |q, a| Some((q + a + 1) % 4), &[]).unwrap();
        assert_eq!(empty.minimize().size(), 1);
    }

    #[test]
    fn weak_acceptance() {
        // the parity automaton is not weak, but its loop reading is still defined
        let odd = Dfa::new(Alphabet::from_chars("a"), 2, 0, |q, _| Some(1 - q), &[1]).unwrap();
        assert!(WeakDba::new(odd.clone()).is_err());
        assert!(buchi_loop_accepts(&odd, &[0]));
        assert!(buchi_loop_accepts(&odd, &[0, 0]));
        let univ = WeakDba::new(Dfa::universal(ab())).unwrap();
        assert!(univ.accepts_omega(&[0, 1]));
        let unreachable_acc = Dfa::new(ab(), 2, 0, |q, _| Some(q), &[1]).unwrap();
        assert!(!WeakDba::new(unreachable_acc).unwrap().accepts_omega(&[1]));
        // b·a* is weak (sink, a-loop, initial transient)
        assert!(WeakDba::new(ba_star()).is_ok());
        // a 2-cycle with one accepting state is not weak
        let t = [[1, 1], [0, 0]];
        let bad = Dfa::new(ab(), 2, 0, |q, a| Some(t[q][a]), &[1]).unwrap();
        assert!(WeakDba::new(bad).is_err());
    }

    #[test]
    fn epsilon_elimination() {
        // a then ε then b
        let n = Nfa::with_epsilon(ab(), 4, &[0], &[(0, 0, 1), (2, 1, 3)], &[(1, 2)], &[3]).unwrap();
        assert!(n.accepts(&[0, 1]));
        assert!(!n.accepts(&[0]));
        assert!(!n.accepts(&[1]));
    }

    fn arb_dfa() -> impl Strategy<Value = Dfa> {
        (1usize..=6)
            .prop_flat_map(|n| {
                (
                    Just(n),
                    prop::collection::vec(0..n, n * 2),
                    prop::collection::vec(any::<bool>(), n),
                )
            })
            .prop_map(|(n, t, acc)| {
                let accepting: Vec<usize> = (0..n).filter(|&q| acc[q]).collect();
                Dfa::new(Alphabet::from_chars("ab"), n, 0, |q, a| Some(t[q * 2 + a]), &accepting).unwrap()
            })
    }

    proptest! {
        #[test]
        fn minimize_preserves_language(d in arb_dfa()) {
            let m = d.minimize();
            prop_assert!(m.size() <= d.size());
            prop_assert_eq!(m.minimize(), m.clone());
            for w in words_up_to(2, 10) {
                prop_assert_eq!(d.accepts(&w), m.accepts(&w));
            }
        }

        #[test]
        fn weak_acceptance_is_power_invariant(d in arb_dfa(), x in prop::collection::vec(0usize..2, 1..5)) {
            // make every state accepting or not by SCC majority to obtain a weak automaton
            let k = 2;
            let n = d.size();
            let ids = scc_ids(n, (0..n).flat_map(|q| (0..k).map(move |a| (q, a))).map(|(q, a)| (q, d.succ(q, a))));
            let acc = (0..n).map(|q| d.is_accepting((0..n).find(|&p| ids[p] == ids[q]).unwrap())).collect();
            let w = WeakDba::new(d.with_accepting(acc)).unwrap();
            let base = w.accepts_omega(&x);
            for k in 1..=4 {
                prop_assert_eq!(w.accepts_omega(&x.repeat(k)), base);
            }
        }
    }
}
