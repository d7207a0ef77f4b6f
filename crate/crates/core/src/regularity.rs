//! UP-regularity of the language of a family under normalized semantics:
//! stabilization, relabeling by leading states, transition profiles and the
//! search for good witnesses.

use std::collections::{HashMap, VecDeque};

use crate::almost_saturation::pad_to_prime;
use crate::automata::{scc_ids, Dfa, Nfa, TransitionSystem};
use crate::error::{input, Error, Result};
use crate::family::{AnyFamily, Family, Fnfa};
use crate::word::{root, words_up_to, Alphabet, Symbol, Word};

pub const DEFAULT_PROFILE_CAP: usize = 100_000;

/// The relation `q ↦ δ*(q, x)` of a word, one bit row per state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransitionProfile {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

fn stride(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl TransitionProfile {
    pub fn identity(n: usize) -> Self {
        let mut p = Self::empty(n);
        for q in 0..n {
            p.set(q, q);
        }
        p
    }

    fn empty(n: usize) -> Self {
        TransitionProfile { n, stride: stride(n), bits: vec![0; n * stride(n)] }
    }

    pub fn letter(a: &Nfa, sym: Symbol) -> Self {
        let mut p = Self::empty(a.size());
        for q in 0..a.size() {
            for &t in a.succ(q, sym) {
                p.set(q, t);
            }
        }
        p
    }

    pub fn size(&self) -> usize {
        self.n
    }

    fn set(&mut self, q: usize, t: usize) {
        self.bits[q * self.stride + t / 64] |= 1 << (t % 64);
    }

    fn row(&self, q: usize) -> &[u64] {
        &self.bits[q * self.stride..(q + 1) * self.stride]
    }

    pub fn contains(&self, q: usize, t: usize) -> bool {
        self.row(q)[t / 64] >> (t % 64) & 1 == 1
    }

    pub fn successors(&self, q: usize) -> Vec<usize> {
        (0..self.n).filter(|&t| self.contains(q, t)).collect()
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "profiles over different state sets");
        let mut out = Self::empty(self.n);
        for q in 0..self.n {
            let dst = q * self.stride;
            for t in self.successors(q) {
                for (i, w) in other.row(t).iter().enumerate() {
                    out.bits[dst + i] |= w;
                }
            }
        }
        out
    }

    pub fn power(&self, i: usize) -> Self {
        let mut out = Self::identity(self.n);
        for _ in 0..i {
            out = out.compose(self);
        }
        out
    }

    /// Whether the profile maps some initial state of `a` to an accepting one.
    pub fn hits(&self, a: &Nfa) -> bool {
        a.initials().iter().any(|&q| (0..self.n).any(|t| a.is_accepting(t) && self.contains(q, t)))
    }
}

pub fn profile_of(a: &Nfa, x: &[Symbol]) -> Result<TransitionProfile> {
    if x.is_empty() {
        return input("transition profiles are defined for non-empty words");
    }
    Ok(profile_of_word(a, x))
}

fn profile_of_word(a: &Nfa, x: &[Symbol]) -> TransitionProfile {
    x.iter().fold(TransitionProfile::identity(a.size()), |p, &s| p.compose(&TransitionProfile::letter(a, s)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    Accepting,
    Rejecting,
    Terminal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProfileClass {
    pub kind: ProfileKind,
    /// Least `j` with `τ^j` mapping an initial state to an accepting one.
    pub accepting_power: Option<usize>,
    /// Least `i` with every power of `τ^i` missing the accepting states.
    pub rejecting_power: Option<usize>,
}

pub fn classify_profile(a: &Nfa, tau: &TransitionProfile, cap: usize) -> Result<ProfileClass> {
    // powers τ^1..τ^len are distinct and τ^(len+1) = τ^start
    let mut powers = vec![tau.clone()];
    let mut index: HashMap<TransitionProfile, usize> = HashMap::from([(tau.clone(), 1)]);
    let start = loop {
        let next = powers.last().unwrap().compose(tau);
        if let Some(&s) = index.get(&next) {
            break s;
        }
        if powers.len() >= cap {
            return Err(Error::CapExceeded(cap));
        }
        powers.push(next.clone());
        index.insert(next, powers.len());
    };
    let len = powers.len();
    let period = len + 1 - start;
    let norm = |m: usize| if m <= len { m } else { start + (m - start) % period };
    let hits: Vec<bool> = powers.iter().map(|p| p.hits(a)).collect();
    let hit = |m: usize| hits[m - 1];
    let accepting_power = (1..=len).find(|&m| hit(m));
    if accepting_power.is_none() {
        return Ok(ProfileClass { kind: ProfileKind::Rejecting, accepting_power: None, rejecting_power: Some(1) });
    }
    let rejecting = |i: usize| {
        let mut seen = vec![false; len + 1];
        let mut m = i;
        while !seen[m] {
            if hit(m) {
                return false;
            }
            seen[m] = true;
            m = norm(m + i);
        }
        true
    };
    let rejecting_power = (2..=len).find(|&i| rejecting(i));
    let kind = if rejecting_power.is_some() { ProfileKind::Terminal } else { ProfileKind::Accepting };
    Ok(ProfileClass { kind, accepting_power, rejecting_power })
}

/// Reachable profiles of an NFA; node 0 is the profile of ε.
struct ProfileGraph {
    k: usize,
    profiles: Vec<TransitionProfile>,
    access: Vec<Word>,
    succ: Vec<usize>,
}

impl ProfileGraph {
    fn build(a: &Nfa, cap: usize) -> Result<Self> {
        let k = a.alphabet().len();
        let letters: Vec<TransitionProfile> = (0..k).map(|s| TransitionProfile::letter(a, s)).collect();
        let id = TransitionProfile::identity(a.size());
        let mut index = HashMap::from([(id.clone(), 0)]);
        let mut g = ProfileGraph { k, profiles: vec![id], access: vec![Vec::new()], succ: Vec::new() };
        let mut i = 0;
        while i < g.profiles.len() {
            for (s, l) in letters.iter().enumerate() {
                let next = g.profiles[i].compose(l);
                let j = match index.get(&next) {
                    Some(&j) => j,
                    None => {
                        if g.profiles.len() >= cap {
                            return Err(Error::CapExceeded(cap));
                        }
                        let j = g.profiles.len();
                        let mut w = g.access[i].clone();
                        w.push(s);
                        g.profiles.push(next.clone());
                        g.access.push(w);
                        index.insert(next, j);
                        j
                    }
                };
                g.succ.push(j);
            }
            i += 1;
        }
        Ok(g)
    }
}

/// How many non-empty paths lead from a source to a target without passing
/// through the target in between.
#[derive(Debug, Clone, PartialEq, Eq)]
enum PathCount {
    Zero,
    One(Word),
    Two(Word, Word),
    /// `prefix · cycle^k · suffix` is such a path for every `k`.
    Infinite { prefix: Word, cycle: Word, suffix: Word },
}

fn count_paths(g: &ProfileGraph, src: usize, target: usize, cap: usize) -> Result<PathCount> {
    let n = g.profiles.len();
    let (sink, start) = (n, n + 1);
    let k = g.k;
    // the target keeps no edges of its own; `start` copies the source's edges
    let mut edges: Vec<Vec<usize>> = vec![Vec::new(); n + 2];
    for v in (0..n).filter(|&v| v != target).chain([start]) {
        let orig = if v == start { src } else { v };
        edges[v] = (0..k)
            .map(|a| {
                let w = g.succ[orig * k + a];
                if w == target { sink } else { w }
            })
            .collect();
    }
    let mut fwd = vec![false; n + 2];
    let mut stack = vec![start];
    fwd[start] = true;
    while let Some(v) = stack.pop() {
        for &w in &edges[v] {
            if !fwd[w] {
                fwd[w] = true;
                stack.push(w);
            }
        }
    }
    let mut back = vec![false; n + 2];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n + 2];
    for (v, es) in edges.iter().enumerate() {
        for &w in es {
            preds[w].push(v);
        }
    }
    back[sink] = true;
    stack.push(sink);
    while let Some(v) = stack.pop() {
        for &w in &preds[v] {
            if !back[w] {
                back[w] = true;
                stack.push(w);
            }
        }
    }
    let live: Vec<bool> = (0..n + 2).map(|v| fwd[v] && back[v]).collect();
    if !live[start] {
        return Ok(PathCount::Zero);
    }
    let next = |v: usize, a: usize| -> Option<usize> { edges[v].get(a).copied().filter(|&w| live[w]) };
    let live_edges: Vec<(usize, usize)> =
        (0..n + 2).filter(|&v| live[v]).flat_map(|v| (0..k).filter_map(move |a| next(v, a).map(|w| (v, w)))).collect();
    let ids = scc_ids(n + 2, live_edges.iter().copied());
    let mut members: HashMap<usize, usize> = HashMap::new();
    for v in (0..n + 2).filter(|&v| live[v]) {
        *members.entry(ids[v]).or_default() += 1;
    }
    let on_cycle = live_edges.iter().find(|&&(v, w)| v == w || (ids[v] == ids[w] && members[&ids[v]] > 1));
    if let Some(&(c, _)) = on_cycle {
        let path = |from: usize, to: usize| shortest_path(from, to, k, &next).expect("live nodes are connected");
        return Ok(PathCount::Infinite { prefix: path(start, c), cycle: path(c, c), suffix: path(c, sink) });
    }
    // acyclic: enumerate paths by increasing length, letters in order
    let mut found = Vec::new();
    let mut queue = VecDeque::from([(start, Vec::new())]);
    let mut steps = 0;
    while let Some((v, w)) = queue.pop_front() {
        steps += 1;
        if steps > cap {
            return Err(Error::CapExceeded(cap));
        }
        for a in 0..k {
            if let Some(t) = next(v, a) {
                let mut w2 = w.clone();
                w2.push(a);
                if t == sink {
                    found.push(w2);
                    if found.len() == 2 {
                        let y = found.pop().unwrap();
                        return Ok(PathCount::Two(found.pop().unwrap(), y));
                    }
                } else {
                    queue.push_back((t, w2));
                }
            }
        }
    }
    Ok(PathCount::One(found.pop().expect("a live start reaches the sink")))
}

/// Llex-least non-empty path from `from` to `to`.
fn shortest_path(from: usize, to: usize, k: usize, next: &impl Fn(usize, usize) -> Option<usize>) -> Option<Word> {
    let mut parent: HashMap<usize, (usize, Symbol)> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for a in 0..k {
            let Some(t) = next(v, a) else { continue };
            if t == to {
                let mut w = vec![a];
                let mut cur = v;
                while cur != from {
                    let (p, s) = parent[&cur];
                    w.push(s);
                    cur = p;
                }
                w.reverse();
                return Some(w);
            }
            if t != from && !parent.contains_key(&t) {
                parent.insert(t, (v, a));
                queue.push_back(t);
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoodCase {
    /// Every `prefix · cycle^k · suffix` visits the profile first.
    InfinitelyManyFirstVisitors { prefix: Word, cycle: Word, suffix: Word },
    TwoFirstVisitors { x: Word, y: Word, u: Word },
    TwoRecurring { x: Word, u: Word, v: Word },
    DistinctRoots { x: Word, u: Word },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodWitness {
    pub profile: TransitionProfile,
    /// Llex-least word with this profile.
    pub access: Word,
    pub class: ProfileClass,
    pub case: GoodCase,
}

fn visits_first(a: &Nfa, x: &[Symbol], tau: &TransitionProfile) -> bool {
    let mut p = TransitionProfile::identity(a.size());
    for (i, &s) in x.iter().enumerate() {
        if &p == tau {
            return false;
        }
        p = p.compose(&TransitionProfile::letter(a, s));
        if i + 1 < x.len() && &p == tau {
            return false;
        }
    }
    &p == tau
}

fn recurs(a: &Nfa, x: &[Symbol], u: &[Symbol], tau: &TransitionProfile) -> bool {
    let mut p = profile_of_word(a, x);
    for (i, &s) in u.iter().enumerate() {
        p = p.compose(&TransitionProfile::letter(a, s));
        if i + 1 < u.len() && &p == tau {
            return false;
        }
    }
    !u.is_empty() && &p == tau
}

impl GoodWitness {
    /// Recheck the evidence against the automaton.
    pub fn replays(&self, a: &Nfa) -> bool {
        let tau = &self.profile;
        if profile_of_word(a, &self.access) != *tau {
            return false;
        }
        match classify_profile(a, tau, DEFAULT_PROFILE_CAP) {
            Ok(c) if c.kind == ProfileKind::Terminal => {}
            _ => return false,
        }
        match &self.case {
            GoodCase::InfinitelyManyFirstVisitors { prefix, cycle, suffix } => {
                !cycle.is_empty()
                    && (0..4).all(|i| visits_first(a, &[prefix.clone(), cycle.repeat(i), suffix.clone()].concat(), tau))
            }
            GoodCase::TwoFirstVisitors { x, y, u } => {
                x != y && visits_first(a, x, tau) && visits_first(a, y, tau) && recurs(a, x, u, tau)
            }
            GoodCase::TwoRecurring { x, u, v } => {
                u != v && visits_first(a, x, tau) && recurs(a, x, u, tau) && recurs(a, x, v, tau)
            }
            GoodCase::DistinctRoots { x, u } => {
                !x.is_empty() && visits_first(a, x, tau) && recurs(a, x, u, tau) && root(x).ok() != root(u).ok()
            }
        }
    }
}

/// First good witness among the reachable profiles, in llex order of their access words.
pub fn find_good_witness(a: &Nfa, cap: usize) -> Result<Option<GoodWitness>> {
    if cap == 0 {
        return input("cap must be positive");
    }
    let g = ProfileGraph::build(a, cap)?;
    for t in 0..g.profiles.len() {
        let class = classify_profile(a, &g.profiles[t], cap)?;
        if class.kind != ProfileKind::Terminal {
            continue;
        }
        // the identity profile is visited first by ε alone
        let first = if t == 0 { PathCount::One(Vec::new()) } else { count_paths(&g, 0, t, cap)? };
        let case = match first {
            PathCount::Zero => None,
            PathCount::Infinite { prefix, cycle, suffix } => {
                Some(GoodCase::InfinitelyManyFirstVisitors { prefix, cycle, suffix })
            }
            PathCount::One(x) => match count_paths(&g, t, t, cap)? {
                PathCount::Zero => None,
                PathCount::One(u) => {
                    (!x.is_empty() && root(&x)? != root(&u)?).then_some(GoodCase::DistinctRoots { x, u })
                }
                PathCount::Two(u, v) => Some(GoodCase::TwoRecurring { x, u, v }),
                PathCount::Infinite { prefix, cycle, suffix } => {
                    let v = [prefix.clone(), cycle, suffix.clone()].concat();
                    Some(GoodCase::TwoRecurring { x, u: [prefix, suffix].concat(), v })
                }
            },
            PathCount::Two(x, y) => match count_paths(&g, t, t, cap)? {
                PathCount::Zero => None,
                PathCount::One(u) | PathCount::Two(u, _) => Some(GoodCase::TwoFirstVisitors { x, y, u }),
                PathCount::Infinite { prefix, suffix, .. } => {
                    Some(GoodCase::TwoFirstVisitors { x, y, u: [prefix, suffix].concat() })
                }
            },
        };
        if let Some(case) = case {
            return Ok(Some(GoodWitness { profile: g.profiles[t].clone(), access: g.access[t].clone(), class, case }));
        }
    }
    Ok(None)
}

/// Rotation closure of every progress language: `v₁v₂` is accepted from `q` when
/// `(u·v₁, v₂v₁)` is accepted for `u` reaching `q`.
pub fn stabilize(f: &Fnfa) -> Fnfa {
    let t = f.leading();
    let k = f.alphabet().len();
    let nt = t.size();
    let progress = (0..nt)
        .map(|q| {
            let mut n = 0;
            let (mut initials, mut trans, mut eps, mut acc) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
            for qp in 0..nt {
                let a = f.progress(qp);
                let m = a.size();
                for p in 0..m {
                    // state (r, s, copy) of the component for the guess (qp, p)
                    let id = |r: usize, s: usize, c: usize| n + (c * nt + r) * m + s;
                    initials.push(id(q, p, 0));
                    acc.push(id(q, p, 1));
                    for c in 0..2 {
                        for r in 0..nt {
                            for s in 0..m {
                                for sym in 0..k {
                                    for &s2 in a.succ(s, sym) {
                                        trans.push((id(r, s, c), sym, id(t.succ(r, sym), s2, c)));
                                    }
                                }
                            }
                        }
                    }
                    for s in (0..m).filter(|&s| a.is_accepting(s)) {
                        for &i in a.initials() {
                            eps.push((id(qp, s, 0), id(qp, i, 1)));
                        }
                    }
                    n += 2 * nt * m;
                }
            }
            Nfa::with_epsilon(f.alphabet().clone(), n.max(1), &initials_or_zero(&initials), &trans, &eps, &acc)
                .expect("indices in range")
        })
        .collect();
    Family::new(t.clone(), progress).expect("same leading system")
}

fn initials_or_zero(initials: &[usize]) -> Vec<usize> {
    if initials.is_empty() {
        vec![0]
    } else {
        initials.to_vec()
    }
}

/// Relabel loops by the leading states they pass and merge all progress
/// automata into one over a trivial leading system. Letters are `a@q` unless
/// the leading system is already trivial.
pub fn label_by_leading(f: &Fnfa) -> Result<Fnfa> {
    let t = f.leading();
    let k = f.alphabet().len();
    let nt = t.size();
    let alphabet = if nt == 1 {
        f.alphabet().clone()
    } else {
        let names: Vec<String> =
            (0..nt).flat_map(|q| f.alphabet().names().iter().map(move |a| format!("{a}@{q}"))).collect();
        Alphabet::new(&names)?
    };
    let mut parts = Vec::new();
    for q in 0..nt {
        let a = f.progress(q);
        let m = a.size();
        let id = |s: usize, r: usize| s * nt + r;
        let mut trans = Vec::new();
        for s in 0..m {
            for r in 0..nt {
                for sym in 0..k {
                    for &s2 in a.succ(s, sym) {
                        trans.push((id(s, r), r * k + sym, id(s2, t.succ(r, sym))));
                    }
                }
            }
        }
        let initials: Vec<usize> = a.initials().iter().map(|&s| id(s, q)).collect();
        let acc: Vec<usize> = (0..m).filter(|&s| a.is_accepting(s)).map(|s| id(s, q)).collect();
        parts.push(Nfa::new(alphabet.clone(), m * nt, &initials, &trans, &acc)?);
    }
    let union = Nfa::union(&parts)?;
    Family::new(TransitionSystem::trivial(alphabet), vec![union])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegularityStatus {
    Regular,
    NotRegular,
    CapExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityVerdict {
    pub status: RegularityStatus,
    pub evidence: Option<GoodWitness>,
    /// Alphabet of the evidence words and the automaton its profile lives on.
    pub labeled: Option<(Alphabet, Nfa)>,
}

impl RegularityVerdict {
    fn regular() -> Self {
        RegularityVerdict { status: RegularityStatus::Regular, evidence: None, labeled: None }
    }
}

/// The single progress NFA whose profiles decide regularity, made deterministic and minimal.
pub fn regularity_automaton(f: &Fnfa) -> Result<Nfa> {
    let labeled = label_by_leading(&stabilize(f))?;
    Ok(labeled.progress(0).determinize().minimize().to_nfa())
}

pub fn check_regular(f: &AnyFamily, cap: usize) -> Result<RegularityVerdict> {
    if cap == 0 {
        return input("cap must be positive");
    }
    let fnfa = match f {
        AnyFamily::Fdwa(_) => return Ok(RegularityVerdict::regular()),
        AnyFamily::Fdfa(f) => f.to_fnfa(),
        AnyFamily::Fnfa(f) => f.clone(),
        AnyFamily::Duo(_) => {
            return Err(Error::Precondition("regularity is decided for normalized semantics only".into()))
        }
    };
    let n = regularity_automaton(&fnfa)?;
    match find_good_witness(&n, cap) {
        Ok(None) => Ok(RegularityVerdict::regular()),
        Ok(Some(w)) => Ok(RegularityVerdict {
            status: RegularityStatus::NotRegular,
            evidence: Some(w),
            labeled: Some((n.alphabet().clone(), n)),
        }),
        Err(Error::CapExceeded(_)) => {
            Ok(RegularityVerdict { status: RegularityStatus::CapExceeded, evidence: None, labeled: None })
        }
        Err(e) => Err(e),
    }
}

/// All roots of length at most `bound` whose profile is terminal.
pub fn brute_ter_roots(a: &Nfa, bound: usize) -> Result<Vec<Word>> {
    if bound == 0 {
        return input("length bound must be positive");
    }
    let mut out = Vec::new();
    for w in words_up_to(a.alphabet().len(), bound).into_iter().skip(1) {
        if root(&w)? != w {
            continue;
        }
        if classify_profile(a, &profile_of_word(a, &w), DEFAULT_PROFILE_CAP)?.kind == ProfileKind::Terminal {
            out.push(w);
        }
    }
    Ok(out)
}

/// DFA over `Σ ∪ {#}` whose terminal words have infinitely many roots exactly
/// when the inputs have a common word.
///
/// A word starting with `#` splits into maximal `Σ`-blocks; it is accepted when
/// the number of blocks is not a multiple of `p`, or when some block `t` is
/// rejected by `D_(t mod p)`.
pub fn gen_ter_hardness(dfas: &[Dfa]) -> Result<Dfa> {
    let dfas = pad_to_prime(dfas)?;
    let p = dfas.len();
    let alphabet = dfas[0].alphabet().extended("#")?;
    let hash = alphabet.len() - 1;
    #[derive(Clone, PartialEq, Eq, Hash)]
    enum S {
        Start,
        Dead,
        /// `done` blocks so far, modulo p
        Hash { done: usize, bad: bool },
        Block { index: usize, state: usize, bad: bool },
    }
    let close = |index: usize, state: usize, bad: bool| bad || !dfas[index].is_accepting(state);
    let step = |s: &S, a: Symbol| match *s {
        S::Start if a == hash => S::Hash { done: 0, bad: false },
        S::Start | S::Dead => S::Dead,
        S::Hash { done, bad } if a == hash => S::Hash { done, bad },
        S::Hash { done, bad } => S::Block { index: done, state: dfas[done].succ(0, a), bad },
        S::Block { index, state, bad } if a == hash => S::Hash { done: (index + 1) % p, bad: close(index, state, bad) },
        S::Block { index, state, bad } => S::Block { index, state: dfas[index].succ(state, a), bad },
    };
    let accept = |s: &S| match *s {
        S::Start | S::Dead => false,
        S::Hash { done, bad } => done != 0 || bad,
        S::Block { index, state, bad } => (index + 1) % p != 0 || close(index, state, bad),
    };
    Ok(Dfa::explore(alphabet, S::Start, step, accept).0.minimize())
}
