//! Active learning of fully saturated FDFAs through a DFA learner for the
//! `$`-language, and passive learning of syntactic FDFAs from samples.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::automata::{explore, Dfa, TransitionSystem};
use crate::error::{Error, Result};
use crate::family::{up_membership, Fdfa, ReferenceSet};
use crate::saturation::{check_saturated, SaturationMode};
use crate::word::{canonical_rep, Alphabet, Representation, Symbol, Word};

pub const DOLLAR: &str = "$";

fn dollar_alphabet(sigma: &Alphabet) -> Result<Alphabet> {
    if sigma.contains(DOLLAR) {
        return Err(Error::Input("'$' is already a symbol of the alphabet".into()));
    }
    sigma.extended(DOLLAR)
}

/// Minimal DFA over Σ ∪ {$} accepting `u$v` for every pair `(u, v)` the FDFA
/// accepts under all-pairs semantics.
pub fn fdfa_to_dollar_dfa(f: &Fdfa) -> Result<Dfa> {
    let alphabet = dollar_alphabet(f.alphabet())?;
    let dollar = f.alphabet().len();
    let t = f.leading();
    #[derive(Clone, PartialEq, Eq, Hash)]
    enum S {
        Lead(usize),
        // leading state, progress state, whether a letter was read
        Prog(usize, usize, bool),
        Dead,
    }
    let step = |s: &S, a: Symbol| match *s {
        S::Lead(q) if a == dollar => S::Prog(q, 0, false),
        S::Lead(q) => S::Lead(t.succ(q, a)),
        S::Prog(q, p, _) if a != dollar => S::Prog(q, f.progress(q).succ(p, a), true),
        _ => S::Dead,
    };
    let accept = |s: &S| matches!(*s, S::Prog(q, p, true) if f.progress(q).is_accepting(p));
    Ok(Dfa::explore(alphabet, S::Lead(t.initial()), step, accept).0.minimize())
}

/// The FDFA read off a DFA over Σ ∪ {$}: the leading system is the `$`-free
/// reachable part, and the progress DFA of `q` starts at the `$`-successor of `q`.
pub fn dollar_dfa_to_fdfa(a: &Dfa) -> Result<Fdfa> {
    let full = a.alphabet();
    let dollar = full.symbol(DOLLAR).ok_or_else(|| Error::Input("alphabet has no '$'".into()))?;
    let names: Vec<&String> = full.names().iter().filter(|n| n.as_str() != DOLLAR).collect();
    let sigma = Alphabet::new(&names)?;
    let map: Vec<Symbol> = (0..full.len()).filter(|&s| s != dollar).collect();
    let (lead, states) = Dfa::explore(sigma.clone(), 0usize, |&q, s| a.succ(q, map[s]), |_| false);
    let progress = states
        .iter()
        .map(|&q| {
            let start = a.succ(q, dollar);
            Dfa::explore(sigma.clone(), start, |&p, s| a.succ(p, map[s]), |&p| a.is_accepting(p)).0
        })
        .collect();
    Fdfa::new(lead.ts().clone(), progress)
}

/// A minimally adequate teacher for a UP-language.
pub trait Teacher {
    fn alphabet(&self) -> &Alphabet;
    /// Whether `u·x^ω` belongs to the target.
    fn membership(&mut self, r: &Representation) -> bool;
    /// `None` if the hypothesis is equivalent, else a representation in the symmetric difference.
    fn equivalence(&mut self, hypothesis: &Fdfa) -> Option<Representation>;
}

/// Teacher answering from a fully saturated target FDFA.
#[derive(Debug, Clone)]
pub struct FdfaTeacher {
    target: Fdfa,
    target_dollar: Dfa,
    pub membership_queries: usize,
    pub equivalence_queries: usize,
    /// Equivalence queries whose hypothesis was not fully saturated.
    pub unsaturated_hypotheses: usize,
}

pub fn make_teacher(target: &Fdfa) -> Result<FdfaTeacher> {
    if !check_saturated(target, SaturationMode::FullySaturated).is_saturated() {
        return Err(Error::Precondition("target is not fully saturated".into()));
    }
    Ok(FdfaTeacher {
        target: target.clone(),
        target_dollar: fdfa_to_dollar_dfa(target)?,
        membership_queries: 0,
        equivalence_queries: 0,
        unsaturated_hypotheses: 0,
    })
}

impl FdfaTeacher {
    pub fn target(&self) -> &Fdfa {
        &self.target
    }
}

/// Llex-least `u$v` with `v` non-empty on which the two `$`-DFAs disagree.
fn dollar_difference(a: &Dfa, b: &Dfa) -> Option<Representation> {
    let dollar = a.alphabet().len() - 1;
    // phase: 0 before '$', 1 right after it, 2 inside the loop, 3 malformed
    let (states, access, _) = explore(a.alphabet().len(), (0usize, 0usize, 0u8), |&(p, q, ph), s| {
        let ph = match (ph, s == dollar) {
            (0, true) => 1,
            (0, false) => 0,
            (1 | 2, false) => 2,
            _ => 3,
        };
        (a.succ(p, s), b.succ(q, s), ph)
    });
    let i = states.iter().position(|&(p, q, ph)| ph == 2 && a.is_accepting(p) != b.is_accepting(q))?;
    let w = &access[i];
    let cut = w.iter().position(|&s| s == dollar).expect("one '$'");
    Some(Representation { spoke: w[..cut].to_vec(), cycle: w[cut + 1..].to_vec() })
}

impl Teacher for FdfaTeacher {
    fn alphabet(&self) -> &Alphabet {
        self.target.alphabet()
    }

    fn membership(&mut self, r: &Representation) -> bool {
        self.membership_queries += 1;
        self.target.accepts(r, ReferenceSet::All)
    }

    fn equivalence(&mut self, hypothesis: &Fdfa) -> Option<Representation> {
        self.equivalence_queries += 1;
        if !check_saturated(hypothesis, SaturationMode::FullySaturated).is_saturated() {
            self.unsaturated_hypotheses += 1;
        }
        let h = fdfa_to_dollar_dfa(hypothesis).expect("hypothesis over the target alphabet");
        dollar_difference(&self.target_dollar, &h)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LearnLog {
    pub membership_queries: usize,
    pub equivalence_queries: usize,
    pub saturation_checks: usize,
    pub rounds: usize,
    /// Length of the longest counterexample fed to the DFA learner.
    pub max_counterexample: usize,
}

/// Observation table over Σ ∪ {$} with Rivest–Schapire counterexample handling.
struct Table<'a, T: Teacher> {
    teacher: &'a mut T,
    dollar: Symbol,
    k: usize,
    cache: HashMap<Word, bool>,
    answers: HashMap<Representation, bool>,
    states: Vec<Word>,
    suffixes: Vec<Word>,
    rows: HashMap<Vec<bool>, usize>,
    delta: Vec<usize>,
    log: LearnLog,
}

impl<T: Teacher> Table<'_, T> {
    fn split(&self, w: &[Symbol]) -> Option<Representation> {
        let mut it = w.iter().enumerate().filter(|&(_, &s)| s == self.dollar);
        let (cut, _) = it.next()?;
        if it.next().is_some() || cut + 1 == w.len() {
            return None;
        }
        Some(Representation { spoke: w[..cut].to_vec(), cycle: w[cut + 1..].to_vec() })
    }

    /// Membership of a word in the `$`-language, checking the teacher stays consistent on UP-words.
    fn mem(&mut self, w: &[Symbol]) -> Result<bool> {
        if let Some(&b) = self.cache.get(w) {
            return Ok(b);
        }
        let b = match self.split(w) {
            None => false,
            Some(r) => {
                self.log.membership_queries += 1;
                let b = self.teacher.membership(&r);
                let key = canonical_rep(&r);
                if *self.answers.entry(key).or_insert(b) != b {
                    return Err(Error::Protocol(format!("teacher answered {r} inconsistently")));
                }
                b
            }
        };
        self.cache.insert(w.to_vec(), b);
        Ok(b)
    }

    fn row(&mut self, w: &[Symbol]) -> Result<Vec<bool>> {
        let suffixes = self.suffixes.clone();
        suffixes.iter().map(|e| self.mem(&[w, e].concat())).collect()
    }

    /// Recompute rows and add states until the table is closed.
    fn close(&mut self) -> Result<()> {
        self.rows.clear();
        for i in 0..self.states.len() {
            let w = self.states[i].clone();
            let r = self.row(&w)?;
            self.rows.insert(r, i);
        }
        self.delta.clear();
        let mut i = 0;
        while i < self.states.len() {
            for a in 0..self.k {
                let mut w = self.states[i].clone();
                w.push(a);
                let r = self.row(&w)?;
                let j = match self.rows.get(&r) {
                    Some(&j) => j,
                    None => {
                        let j = self.states.len();
                        self.states.push(w);
                        self.rows.insert(r, j);
                        j
                    }
                };
                self.delta.push(j);
            }
            i += 1;
        }
        Ok(())
    }

    fn run(&self, w: &[Symbol]) -> usize {
        w.iter().fold(0, |q, &a| self.delta[q * self.k + a])
    }

    fn hypothesis(&mut self, alphabet: &Alphabet) -> Result<Dfa> {
        let acc: Vec<usize> = (0..self.states.len())
            .filter(|&i| self.cache[&self.states[i]])
            .collect();
        Dfa::new(alphabet.clone(), self.states.len(), 0, |q, a| Some(self.delta[q * self.k + a]), &acc)
    }

    /// Add the distinguishing suffix of a counterexample.
    fn refine(&mut self, w: &[Symbol]) -> Result<()> {
        self.log.max_counterexample = self.log.max_counterexample.max(w.len());
        let alpha = |t: &mut Self, i: usize| -> Result<bool> {
            let s = t.states[t.run(&w[..i])].clone();
            t.mem(&[&s[..], &w[i..]].concat())
        };
        let (mut lo, mut hi) = (0, w.len());
        let first = alpha(self, lo)?;
        if first == alpha(self, hi)? {
            return Err(Error::Protocol("equivalence counterexample is not a counterexample".into()));
        }
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if alpha(self, mid)? == first {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let suffix = w[hi..].to_vec();
        if self.suffixes.contains(&suffix) {
            return Err(Error::Protocol("counterexample yields no new distinction".into()));
        }
        self.suffixes.push(suffix);
        Ok(())
    }
}

/// Learn a fully saturated FDFA for the teacher's language.
pub fn learn_active<T: Teacher>(teacher: &mut T) -> Result<(Fdfa, LearnLog)> {
    let sigma = teacher.alphabet().clone();
    let alphabet = dollar_alphabet(&sigma)?;
    let mut table = Table {
        teacher,
        dollar: sigma.len(),
        k: alphabet.len(),
        cache: HashMap::new(),
        answers: HashMap::new(),
        states: vec![Vec::new()],
        suffixes: vec![Vec::new()],
        rows: HashMap::new(),
        delta: Vec::new(),
        log: LearnLog::default(),
    };
    loop {
        table.close()?;
        table.log.rounds += 1;
        let a = table.hypothesis(&alphabet)?;
        let f = dollar_dfa_to_fdfa(&a)?;
        table.log.saturation_checks += 1;
        let v = check_saturated(&f, SaturationMode::FullySaturated);
        let cex = match v.witness {
            Some(c) => {
                let (acc, rej) = if c.left_accepted { (c.left, c.right) } else { (c.right, c.left) };
                let m = table.mem(&dollar_word(&acc, table.dollar))?;
                if !m {
                    acc
                } else if table.mem(&dollar_word(&rej, table.dollar))? {
                    rej
                } else {
                    return Err(Error::Protocol(format!("teacher separates {acc} and {rej}, which denote one UP-word")));
                }
            }
            None => {
                table.log.equivalence_queries += 1;
                match table.teacher.equivalence(&f) {
                    None => return Ok((f, table.log)),
                    Some(r) => r,
                }
            }
        };
        table.refine(&dollar_word(&cex, table.dollar))?;
    }
}

fn dollar_word(r: &Representation, dollar: Symbol) -> Word {
    let mut w = r.spoke.clone();
    w.push(dollar);
    w.extend_from_slice(&r.cycle);
    w
}

/// Labelled representations; no UP-word is labelled both ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    pub alphabet: Alphabet,
    pub positive: BTreeSet<Representation>,
    pub negative: BTreeSet<Representation>,
}

impl Sample {
    pub fn empty(alphabet: Alphabet) -> Self {
        Sample { alphabet, positive: BTreeSet::new(), negative: BTreeSet::new() }
    }

    pub fn new(
        alphabet: Alphabet,
        positive: impl IntoIterator<Item = Representation>,
        negative: impl IntoIterator<Item = Representation>,
    ) -> Result<Self> {
        let s = Sample { alphabet, positive: positive.into_iter().collect(), negative: negative.into_iter().collect() };
        s.check()?;
        Ok(s)
    }

    /// Symbols in range and no UP-word labelled both ways.
    pub fn check(&self) -> Result<()> {
        let k = self.alphabet.len();
        if let Some((r, _)) = self.examples().find(|(r, _)| r.spoke.iter().chain(&r.cycle).any(|&s| s >= k)) {
            return Err(Error::Input(format!("example {r} uses a symbol outside the alphabet")));
        }
        let pos: HashSet<Representation> = self.positive.iter().map(canonical_rep).collect();
        if let Some(r) = self.negative.iter().find(|r| pos.contains(&canonical_rep(r))) {
            return Err(Error::Input(format!("inconsistent sample: {r} is labelled both ways")));
        }
        Ok(())
    }

    /// Add an example, failing if it contradicts the sample.
    pub fn insert(&mut self, r: Representation, label: bool) -> Result<()> {
        if self.label_of(&r) == Some(!label) {
            return Err(Error::Input(format!("inconsistent example {r}")));
        }
        if label {
            self.positive.insert(r);
        } else {
            self.negative.insert(r);
        }
        Ok(())
    }

    /// Label of the UP-word of `r`, if the sample has one.
    pub fn label_of(&self, r: &Representation) -> Option<bool> {
        let c = canonical_rep(r);
        if self.positive.iter().any(|p| canonical_rep(p) == c) {
            Some(true)
        } else if self.negative.iter().any(|p| canonical_rep(p) == c) {
            Some(false)
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.positive.len() + self.negative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn examples(&self) -> impl Iterator<Item = (&Representation, bool)> {
        self.positive.iter().map(|r| (r, true)).chain(self.negative.iter().map(|r| (r, false)))
    }
}

/// Indexed view of a sample for separation queries.
struct Evidence {
    exact: HashMap<Representation, bool>,
    up: HashMap<Representation, bool>,
}

impl Evidence {
    fn new(s: &Sample) -> Self {
        Evidence {
            exact: s.examples().map(|(r, b)| (r.clone(), b)).collect(),
            up: s.examples().map(|(r, b)| (canonical_rep(r), b)).collect(),
        }
    }

    /// Examples `(u·z, x)` and `(v·z, x)` with opposite labels.
    fn leading_separated(&self, u: &[Symbol], v: &[Symbol]) -> bool {
        let half = |a: &[Symbol], b: &[Symbol]| {
            self.exact.iter().any(|(r, &l)| {
                r.spoke.starts_with(a) && {
                    let other = Representation { spoke: [b, &r.spoke[a.len()..]].concat(), cycle: r.cycle.clone() };
                    self.exact.get(&other) == Some(&!l)
                }
            })
        };
        half(u, v) || half(v, u)
    }

    /// Examples `(u, x·z)` and `(u, y·z)` with opposite labels and `x·z` looping on
    /// `u` in the leading system; an empty loop counts as rejected.
    fn progress_separated(&self, t: &TransitionSystem, u: &[Symbol], x: &[Symbol], y: &[Symbol]) -> bool {
        if self.leading_separated(&[u, x].concat(), &[u, y].concat()) {
            return true;
        }
        let q = t.reach(u);
        let half = |a: &[Symbol], b: &[Symbol]| {
            self.exact.iter().any(|(r, &l)| {
                if r.spoke != u || !r.cycle.starts_with(a) || t.run(q, &r.cycle) != q {
                    return false;
                }
                let other: Word = [b, &r.cycle[a.len()..]].concat();
                if other.is_empty() {
                    return l;
                }
                self.exact.get(&Representation { spoke: u.to_vec(), cycle: other }) == Some(&!l)
            })
        };
        half(x, y) || half(y, x)
    }
}

fn prefixes(w: &[Symbol]) -> impl Iterator<Item = Word> + '_ {
    (0..=w.len()).map(|i| w[..i].to_vec())
}

/// Grow llex-least pairwise separated representatives, then wire each
/// `r·a` to the least representative it is not separated from.
fn infer_congruence(
    k: usize,
    base: BTreeSet<Word>,
    separated: impl Fn(&[Symbol], &[Symbol]) -> bool,
) -> (Vec<Word>, Vec<usize>) {
    let llex = |a: &Word, b: &Word| crate::word::llex_cmp(a, b);
    let mut reps: Vec<Word> = vec![Vec::new()];
    loop {
        let mut cands: Vec<Word> = base.iter().cloned().collect();
        for r in &reps {
            cands.extend((0..k).map(|a| [&r[..], &[a]].concat()));
        }
        cands.sort_by(llex);
        cands.dedup();
        let next = cands
            .into_iter()
            .filter(|c| !reps.contains(c))
            .find(|c| reps.iter().all(|r| separated(c, r)));
        match next {
            Some(c) => reps.push(c),
            None => break,
        }
    }
    let mut delta = Vec::with_capacity(reps.len() * k);
    for r in &reps {
        for a in 0..k {
            let w = [&r[..], &[a]].concat();
            let j = reps.iter().position(|s| !separated(&w, s)).expect("closed by construction");
            delta.push(j);
        }
    }
    (reps, delta)
}

/// Infer the syntactic FDFA consistent with the sample, or fall back to the
/// FDFA of exactly the positive UP-words.
pub fn learn_passive(sample: &Sample) -> Result<Fdfa> {
    sample.check()?;
    let alphabet = &sample.alphabet;
    Ok(infer_syntactic(sample, alphabet).unwrap_or_else(|| default_fdfa(alphabet, sample.positive.iter())))
}

fn infer_syntactic(sample: &Sample, alphabet: &Alphabet) -> Option<Fdfa> {
    let k = alphabet.len();
    let ev = Evidence::new(sample);
    let spoke_prefixes: BTreeSet<Word> = sample.examples().flat_map(|(r, _)| prefixes(&r.spoke).collect::<Vec<_>>()).collect();
    let (reps, delta) = infer_congruence(k, spoke_prefixes.clone(), |u, v| ev.leading_separated(u, v));
    let t = TransitionSystem::new(alphabet.clone(), reps.len(), 0, |q, a| Some(delta[q * k + a])).ok()?;
    let mut progress: Vec<Option<Dfa>> = vec![None; t.size()];
    for u in &reps {
        let q = t.reach(u);
        let mut base: BTreeSet<Word> = BTreeSet::new();
        for (r, _) in sample.examples() {
            if &r.spoke == u {
                base.extend(prefixes(&r.cycle));
            }
        }
        for p in &spoke_prefixes {
            if p.starts_with(u) {
                base.insert(p[u.len()..].to_vec());
            }
        }
        let (xs, pdelta) = infer_congruence(k, base, |x, y| ev.progress_separated(&t, u, x, y));
        let accepting: Vec<usize> = (0..xs.len())
            .filter(|&i| {
                let x = &xs[i];
                !x.is_empty()
                    && t.run(q, x) == q
                    && ev.up.get(&canonical_rep(&Representation { spoke: u.clone(), cycle: x.clone() })) == Some(&true)
            })
            .collect();
        let d = Dfa::new(alphabet.clone(), xs.len(), 0, |s, a| Some(pdelta[s * k + a]), &accepting).ok()?;
        progress[q] = Some(d);
    }
    let f = Fdfa::new(t, progress.into_iter().collect::<Option<Vec<_>>>()?).ok()?;
    let consistent = sample.examples().all(|(r, l)| up_membership(&f, r) == l);
    (consistent && check_saturated(&f, SaturationMode::Saturated).is_saturated()).then_some(f)
}

/// Saturated FDFA whose normalized representations are exactly those of the given UP-words.
///
/// The leading system runs one lasso tracker per word (its position in
/// `u·x^ω`, or diverged); the progress DFA of `s` accepts `x` when `x` loops
/// on `s` without every tracker diverging.
pub fn default_fdfa<'a>(alphabet: &Alphabet, positives: impl IntoIterator<Item = &'a Representation>) -> Fdfa {
    let mut words: Vec<Representation> = positives.into_iter().map(canonical_rep).collect();
    words.sort();
    words.dedup();
    const DIVERGED: usize = usize::MAX;
    let step = |s: &Vec<usize>, a: Symbol| -> Vec<usize> {
        s.iter()
            .zip(&words)
            .map(|(&p, w)| {
                if p == DIVERGED || w.letter(p) != a {
                    DIVERGED
                } else if p + 1 == w.spoke.len() + w.cycle.len() {
                    w.spoke.len()
                } else {
                    p + 1
                }
            })
            .collect()
    };
    let init = vec![0; words.len()];
    let (lead, states) = Dfa::explore(alphabet.clone(), init, step, |_| false);
    let progress = states
        .iter()
        .map(|s| {
            let live = s.iter().any(|&p| p != DIVERGED);
            // `None` is the start, so the empty loop is rejected
            Dfa::explore(
                alphabet.clone(),
                None::<Vec<usize>>,
                |c, a| Some(step(c.as_ref().unwrap_or(s), a)),
                |c| live && c.as_ref() == Some(s),
            )
            .0
            .minimize()
        })
        .collect();
    Fdfa::new(lead.ts().clone(), progress).expect("one progress DFA per leading state")
}

/// Transformation of a word on the leading system and on every progress DFA.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Elem {
    lead: Vec<u32>,
    prog: Vec<Vec<u32>>,
}

/// The transformation monoid of a saturated FDFA, used to decide UP-membership
/// of `q·x^ω` for every leading state `q` and loop class `x`.
struct Monoid<'a> {
    f: &'a Fdfa,
    elems: Vec<Elem>,
    access: Vec<Word>,
    delta: Vec<usize>,
}

impl<'a> Monoid<'a> {
    fn new(f: &'a Fdfa) -> Self {
        let t = f.leading();
        let id = Elem {
            lead: (0..t.size() as u32).collect(),
            prog: f.progress_all().iter().map(|d| (0..d.size() as u32).collect()).collect(),
        };
        let (elems, access, delta) = explore(f.alphabet().len(), id, |e, a| Elem {
            lead: e.lead.iter().map(|&q| t.succ(q as usize, a) as u32).collect(),
            prog: e
                .prog
                .iter()
                .enumerate()
                .map(|(q, m)| m.iter().map(|&s| f.progress(q).succ(s as usize, a) as u32).collect())
                .collect(),
        });
        Monoid { f, elems, access, delta }
    }

    fn step(&self, e: usize, a: Symbol) -> usize {
        self.delta[e * self.f.alphabet().len() + a]
    }

    /// Whether `q·x^ω` is in the language, for `x` of class `e ≠ identity`.
    fn member(&self, q: usize, e: usize) -> bool {
        let el = &self.elems[e];
        let n = self.f.leading().size();
        let mut seen = vec![usize::MAX; n];
        let (mut cur, mut i) = (q, 0);
        while seen[cur] == usize::MAX {
            seen[cur] = i;
            cur = el.lead[cur] as usize;
            i += 1;
        }
        let period = i - seen[cur];
        let m = &el.prog[cur];
        let s = (0..period).fold(0usize, |s, _| m[s] as usize);
        self.f.progress(cur).is_accepting(s)
    }
}

/// The syntactic FDFA of the language of a saturated FDFA: the leading system
/// is the right congruence of the language and the progress DFA of `u` is
/// the congruence `x ≈ y` iff `ux ~ uy` and `u(xz)^ω`, `u(yz)^ω` agree for all
/// `z` with `uxz ~ u`.
pub fn syntactic_fdfa(f: &Fdfa) -> Result<Fdfa> {
    if !check_saturated(f, SaturationMode::Saturated).is_saturated() {
        return Err(Error::Precondition("FDFA is not saturated".into()));
    }
    let mon = Monoid::new(f);
    let t = f.leading();
    let lead_dfa = Dfa::new(f.alphabet().clone(), t.size(), 0, |q, a| Some(t.succ(q, a)), &[])?;
    let sigs: Vec<Vec<bool>> = (0..t.size()).map(|q| (1..mon.elems.len()).map(|e| mon.member(q, e)).collect()).collect();
    let mut ids: HashMap<&Vec<bool>, usize> = HashMap::new();
    let labels: Vec<usize> = sigs.iter().map(|s| { let n = ids.len(); *ids.entry(s).or_insert(n) }).collect();
    let (quot, _) = lead_dfa.minimize_with_labels(&labels);
    let lead = quot.ts().clone();
    let mut progress = Vec::new();
    for c in 0..lead.size() {
        let u = lead.access(c);
        let q = t.reach(u);
        // state: (leading class, monoid element), `None` before the first letter
        let step = |s: &Option<(usize, usize)>, a: Symbol| {
            let (cl, e) = s.unwrap_or((c, 0));
            Some((lead.succ(cl, a), mon.step(e, a)))
        };
        let accept = |s: &Option<(usize, usize)>| matches!(*s, Some((cl, e)) if cl == c && mon.member(q, e));
        let (d, states) = Dfa::explore(f.alphabet().clone(), None, step, accept);
        let labels: Vec<usize> = states
            .iter()
            .map(|s| {
                let cl = s.map_or(c, |(cl, _)| cl);
                2 * cl + usize::from(accept(s))
            })
            .collect();
        progress.push(d.minimize_with_labels(&labels).0);
    }
    Fdfa::new(lead, progress)
}

/// A sample from which [`learn_passive`] recovers the syntactic FDFA of `target`.
pub fn gen_char_sample(target: &Fdfa) -> Result<Sample> {
    let s = syntactic_fdfa(target)?;
    let mon = Monoid::new(&s);
    let t = s.leading();
    let k = s.alphabet().len();
    let mut sample = Sample::empty(s.alphabet().clone());
    let label = |r: &Representation| up_membership(&s, r);

    // llex-least (v, x) separating the leading states of two words
    let leading_sep = |sample: &mut Sample, w1: &[Symbol], w2: &[Symbol]| -> Result<()> {
        let (pairs, access, _) = explore(k, (t.reach(w1), t.reach(w2)), |&(p, q), a| (t.succ(p, a), t.succ(q, a)));
        for (i, &(p, q)) in pairs.iter().enumerate() {
            if let Some(e) = (1..mon.elems.len()).find(|&e| mon.member(p, e) != mon.member(q, e)) {
                let x = mon.access[e].clone();
                for w in [w1, w2] {
                    let r = Representation { spoke: [w, &access[i][..]].concat(), cycle: x.clone() };
                    let l = label(&r);
                    sample.insert(r, l)?;
                }
                return Ok(());
            }
        }
        Err(Error::Precondition("leading states are not separable".into()))
    };

    let reps: Vec<Word> = (0..t.size()).map(|q| t.access(q).clone()).collect();
    for (i, u) in reps.iter().enumerate() {
        for (j, v) in reps.iter().enumerate() {
            if i < j {
                leading_sep(&mut sample, u, v)?;
            }
            for a in 0..k {
                let ua = [&u[..], &[a]].concat();
                if t.reach(&ua) != j {
                    leading_sep(&mut sample, &ua, v)?;
                }
            }
        }
    }

    for (q, u) in reps.iter().enumerate() {
        let d = s.progress(q);
        let xs: Vec<Word> = (0..d.size()).map(|p| d.ts().access(p).clone()).collect();
        let progress_sep = |sample: &mut Sample, x: &[Symbol], y: &[Symbol]| -> Result<()> {
            let (ux, uy) = ([&u[..], x].concat(), [&u[..], y].concat());
            if t.reach(&ux) != t.reach(&uy) {
                return leading_sep(sample, &ux, &uy);
            }
            let (pairs, access, _) = explore(k, (d.run(0, x), d.run(0, y)), |&(p, r), a| (d.succ(p, a), d.succ(r, a)));
            let i = pairs
                .iter()
                .position(|&(p, r)| d.is_accepting(p) != d.is_accepting(r))
                .ok_or_else(|| Error::Precondition("progress states are not separable".into()))?;
            for w in [x, y] {
                let cycle: Word = [w, &access[i][..]].concat();
                if !cycle.is_empty() {
                    let r = Representation { spoke: u.clone(), cycle };
                    let l = label(&r);
                    sample.insert(r, l)?;
                }
            }
            Ok(())
        };
        for (i, x) in xs.iter().enumerate() {
            for (j, y) in xs.iter().enumerate() {
                if i < j {
                    progress_sep(&mut sample, x, y)?;
                }
                for a in 0..k {
                    let xa = [&x[..], &[a]].concat();
                    if d.run(0, &xa) != j {
                        progress_sep(&mut sample, &xa, y)?;
                    }
                }
            }
            if d.is_accepting(i) {
                sample.insert(Representation { spoke: u.clone(), cycle: x.clone() }, true)?;
            }
        }
    }
    Ok(sample)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::word::words_up_to;

    fn rep(a: &Alphabet, u: &str, x: &str) -> Representation {
        Representation::new(a.parse(u).unwrap(), a.parse(x).unwrap()).unwrap()
    }

    fn dollar_lang(d: &Dfa, max: usize) -> Vec<String> {
        words_up_to(d.alphabet().len(), max).into_iter().filter(|w| d.accepts(w)).map(|w| d.alphabet().format(&w)).collect()
    }

    #[test]
    fn dollar_examples() {
        let ab = Alphabet::from_chars("ab");
        let u = fdfa_to_dollar_dfa(&fixtures::universal_fdfa(ab.clone())).unwrap();
        for w in words_up_to(3, 5) {
            let ok = w.iter().filter(|&&s| s == 2).count() == 1 && w.last() != Some(&2);
            assert_eq!(u.accepts(&w), ok);
        }
        let b = fdfa_to_dollar_dfa(&fixtures::ba_star()).unwrap();
        let l = dollar_lang(&b, 4);
        assert!(l.contains(&"$baa".to_string()) && l.contains(&"ab$b".to_string()));
        assert!(l.iter().all(|w| w.split('$').nth(1).unwrap().starts_with('b')));
        assert!(fdfa_to_dollar_dfa(&fixtures::empty_fdfa(Alphabet::new(&["$", "a"]).unwrap())).is_err());
    }

    #[test]
    fn dollar_round_trip() {
        for f in [fixtures::ba_star(), fixtures::ab_omega_saturated(), fixtures::mod2_universal()] {
            let g = dollar_dfa_to_fdfa(&fdfa_to_dollar_dfa(&f).unwrap()).unwrap();
            let k = f.alphabet().len();
            for u in words_up_to(k, 4) {
                for x in words_up_to(k, 4).into_iter().skip(1) {
                    let r = Representation { spoke: u.clone(), cycle: x };
                    assert_eq!(g.accepts(&r, ReferenceSet::All), f.accepts(&r, ReferenceSet::All));
                }
            }
        }
        let a_dollar_b = {
            let al = Alphabet::new(&["a", "b", "$"]).unwrap();
            let t = [[0, 3, 1], [3, 2, 3], [3, 2, 3], [3, 3, 3]];
            Dfa::new(al, 4, 0, |q, s| Some(t[q][s]), &[2]).unwrap()
        };
        let f = dollar_dfa_to_fdfa(&a_dollar_b).unwrap();
        assert_eq!(f.leading().size(), 2);
        let ab = f.alphabet().clone();
        assert!(f.accepts(&rep(&ab, "aa", "bb"), ReferenceSet::All));
        assert!(!f.accepts(&rep(&ab, "b", "b"), ReferenceSet::All));
    }

    #[test]
    fn teacher_examples() {
        let f = fixtures::ab_omega_saturated();
        let ab = f.alphabet().clone();
        assert!(make_teacher(&fixtures::ba_star()).is_err());
        let mut t = make_teacher(&f).unwrap();
        assert!(t.equivalence(&f).is_none());
        assert_eq!(t.equivalence(&fixtures::empty_fdfa(ab.clone())), Some(rep(&ab, "", "ab")));
        assert!(t.membership(&rep(&ab, "a", "ba")));
        assert_eq!((t.membership_queries, t.equivalence_queries), (1, 2));
    }

    #[test]
    fn active_examples() {
        let ab = Alphabet::from_chars("ab");
        for target in [fixtures::ab_omega_saturated(), fixtures::empty_fdfa(ab.clone()), fixtures::universal_fdfa(ab)] {
            let mut t = make_teacher(&target).unwrap();
            let (h, log) = learn_active(&mut t).unwrap();
            assert!(check_saturated(&h, SaturationMode::FullySaturated).is_saturated());
            assert!(t.equivalence(&h).is_none());
            assert_eq!(t.unsaturated_hypotheses, 0);
            assert!(log.rounds >= 1);
        }
        let mut t = make_teacher(&fixtures::empty_fdfa(Alphabet::from_chars("ab"))).unwrap();
        assert_eq!(learn_active(&mut t).unwrap().1.equivalence_queries, 1);
    }

    struct Liar(Alphabet);
    impl Teacher for Liar {
        fn alphabet(&self) -> &Alphabet {
            &self.0
        }
        fn membership(&mut self, r: &Representation) -> bool {
            r.cycle.len() == 1
        }
        fn equivalence(&mut self, _: &Fdfa) -> Option<Representation> {
            Some(Representation { spoke: vec![], cycle: vec![0] })
        }
    }

    #[test]
    fn inconsistent_teacher() {
        let r = learn_active(&mut Liar(Alphabet::from_chars("a")));
        assert!(matches!(r, Err(Error::Protocol(_))));
    }

    #[test]
    fn default_examples() {
        let ab = Alphabet::from_chars("ab");
        let f = default_fdfa(&ab, [&rep(&ab, "", "a")]);
        for r in crate::oracle::enumerate_normalized(&f, 4, 4) {
            let expected = r.spoke.iter().chain(&r.cycle).all(|&s| s == 0);
            assert_eq!(f.accepts(&r, ReferenceSet::Normalized), expected, "{r}");
        }
        let e = default_fdfa(&ab, []);
        assert_eq!(e.size(), (1, 1));
        let target = rep(&ab, "", "ab");
        let f = default_fdfa(&ab, [&target]);
        for r in crate::oracle::enumerate_normalized(&f, 6, 6) {
            assert_eq!(f.accepts(&r, ReferenceSet::Normalized), crate::word::up_equal(&r, &target), "{r}");
        }
        assert!(check_saturated(&f, SaturationMode::Saturated).is_saturated());
    }

    #[test]
    fn sample_consistency() {
        let ab = Alphabet::from_chars("ab");
        assert!(Sample::new(ab.clone(), [rep(&ab, "", "ab")], [rep(&ab, "a", "ba")]).is_err());
        let s = Sample::new(ab.clone(), [rep(&ab, "", "ab")], [rep(&ab, "", "a")]).unwrap();
        assert_eq!(s.label_of(&rep(&ab, "ab", "abab")), Some(true));
    }

    #[test]
    fn syntactic_examples() {
        let f = fixtures::ab_omega_saturated();
        let s = syntactic_fdfa(&f).unwrap();
        assert_eq!(s.leading().size(), 1);
        assert_eq!(syntactic_fdfa(&s).unwrap(), s);
        assert!(syntactic_fdfa(&fixtures::ba_star()).is_err());
        // the syntactic FDFA of a^ω over {a,b} separates ε from b
        let ab = Alphabet::from_chars("ab");
        let a_omega = default_fdfa(&ab, [&rep(&ab, "", "a")]);
        let s = syntactic_fdfa(&a_omega).unwrap();
        assert_eq!(s.leading().size(), 2);
    }

    #[test]
    fn passive_examples() {
        let ab = Alphabet::from_chars("ab");
        assert_eq!(learn_passive(&Sample::empty(ab.clone())).unwrap().progress(0).size(), 1);
        for target in [fixtures::ab_omega_saturated(), default_fdfa(&ab, [&rep(&ab, "", "a")])] {
            let s = syntactic_fdfa(&target).unwrap();
            let sample = gen_char_sample(&target).unwrap();
            assert_eq!(learn_passive(&sample).unwrap(), s);
        }
        let s = Sample::new(ab.clone(), [rep(&ab, "", "a")], []).unwrap();
        let f = learn_passive(&s).unwrap();
        for r in crate::oracle::enumerate_normalized(&f, 3, 3) {
            let is_a = r.spoke.iter().chain(&r.cycle).all(|&c| c == 0);
            assert_eq!(up_membership(&f, &r), is_a, "{r}");
        }
    }
}
