//! Families of automata: a leading transition system with one progress automaton per state.

use crate::automata::{Dfa, Nfa, TransitionSystem, WeakDba};
use crate::error::{input, Result};
use crate::word::{Alphabet, Representation, Symbol, Word};

/// Progress automata read a finite loop word.
pub trait Progress: Clone {
    fn alphabet(&self) -> &Alphabet;
    fn size(&self) -> usize;
    /// Whether the progress automaton accepts the loop `x`.
    fn accepts_loop(&self, x: &[Symbol]) -> bool;
}

impl Progress for Dfa {
    fn alphabet(&self) -> &Alphabet {
        Dfa::alphabet(self)
    }
    fn size(&self) -> usize {
        Dfa::size(self)
    }
    fn accepts_loop(&self, x: &[Symbol]) -> bool {
        self.accepts(x)
    }
}

impl Progress for WeakDba {
    fn alphabet(&self) -> &Alphabet {
        self.dfa().alphabet()
    }
    fn size(&self) -> usize {
        WeakDba::size(self)
    }
    fn accepts_loop(&self, x: &[Symbol]) -> bool {
        self.accepts_omega(x)
    }
}

impl Progress for Nfa {
    fn alphabet(&self) -> &Alphabet {
        Nfa::alphabet(self)
    }
    fn size(&self) -> usize {
        Nfa::size(self)
    }
    fn accepts_loop(&self, x: &[Symbol]) -> bool {
        self.accepts(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReferenceSet {
    /// Pairs `(u, x)` with `leading(u) = leading(ux)`.
    Normalized,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Family<P> {
    leading: TransitionSystem,
    progress: Vec<P>,
}

pub type Fdfa = Family<Dfa>;
pub type Fdwa = Family<WeakDba>;
pub type Fnfa = Family<Nfa>;

impl<P: Progress> Family<P> {
    pub fn new(leading: TransitionSystem, progress: Vec<P>) -> Result<Self> {
        if progress.len() != leading.size() {
            return input(format!(
                "{} progress automata for {} leading states",
                progress.len(),
                leading.size()
            ));
        }
        if progress.iter().any(|p| p.alphabet() != leading.alphabet()) {
            return input("progress alphabet differs from leading alphabet");
        }
        Ok(Family { leading, progress })
    }

    pub fn leading(&self) -> &TransitionSystem {
        &self.leading
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.leading.alphabet()
    }

    pub fn progress(&self, q: usize) -> &P {
        &self.progress[q]
    }

    pub fn progress_all(&self) -> &[P] {
        &self.progress
    }

    /// `(|leading|, max |progress|)`.
    pub fn size(&self) -> (usize, usize) {
        (self.leading.size(), self.progress.iter().map(P::size).max().unwrap_or(0))
    }

    pub fn is_normalized(&self, r: &Representation) -> bool {
        let q = self.leading.reach(&r.spoke);
        self.leading.run(q, &r.cycle) == q
    }

    pub fn in_reference_set(&self, r: &Representation, ref_set: ReferenceSet) -> bool {
        match ref_set {
            ReferenceSet::All => true,
            ReferenceSet::Normalized => self.is_normalized(r),
        }
    }

    pub fn accepts(&self, r: &Representation, ref_set: ReferenceSet) -> bool {
        self.in_reference_set(r, ref_set)
            && self.progress[self.leading.reach(&r.spoke)].accepts_loop(&r.cycle)
    }
}

pub fn is_normalized<P: Progress>(f: &Family<P>, r: &Representation) -> bool {
    f.is_normalized(r)
}

pub fn family_accepts<P: Progress>(f: &Family<P>, r: &Representation, ref_set: ReferenceSet) -> bool {
    f.accepts(r, ref_set)
}

impl Fdfa {
    /// Product of every progress DFA with the leading system started at its owner.
    /// Also returns, per leading state, the leading component of each refined progress state.
    pub fn refine_tracking(&self) -> (Fdfa, Vec<Vec<usize>>) {
        let mut progress = Vec::new();
        let mut tracks = Vec::new();
        for (q, d) in self.progress.iter().enumerate() {
            let (p, states) = Dfa::explore(
                self.alphabet().clone(),
                (0usize, q),
                |&(s, t), a| (d.succ(s, a), self.leading.succ(t, a)),
                |&(s, _)| d.is_accepting(s),
            );
            progress.push(p);
            tracks.push(states.into_iter().map(|(_, t)| t).collect());
        }
        (Family { leading: self.leading.clone(), progress }, tracks)
    }

    pub fn refine(&self) -> Fdfa {
        self.refine_tracking().0
    }

    pub fn map_progress(&self, f: impl Fn(usize, &Dfa) -> Dfa) -> Fdfa {
        Family {
            leading: self.leading.clone(),
            progress: self.progress.iter().enumerate().map(|(q, d)| f(q, d)).collect(),
        }
    }

    pub fn to_fnfa(&self) -> Fnfa {
        Family {
            leading: self.leading.clone(),
            progress: self.progress.iter().map(Dfa::to_nfa).collect(),
        }
    }
}

impl Fdwa {
    pub fn refine(&self) -> Fdwa {
        let as_fdfa = self.as_fdfa().refine();
        // products of weak automata with a transition system stay weak
        Family {
            leading: as_fdfa.leading,
            progress: as_fdfa
                .progress
                .into_iter()
                .map(|d| WeakDba::new(d).expect("refinement preserves weakness"))
                .collect(),
        }
    }

    /// The same structure read with finite-word acceptance.
    pub fn as_fdfa(&self) -> Fdfa {
        Family {
            leading: self.leading.clone(),
            progress: self.progress.iter().map(|b| b.dfa().clone()).collect(),
        }
    }

    pub fn from_fdfa(f: &Fdfa) -> Result<Fdwa> {
        let progress = f.progress.iter().cloned().map(WeakDba::new).collect::<Result<Vec<_>>>()?;
        Family::new(f.leading.clone(), progress)
    }
}

pub fn refine_family(f: &Fdfa) -> Fdfa {
    f.refine()
}

/// An FDFA read with duo-normalized acceptance: `(u, x)` normalized,
/// `D_u(x) = D_u(xx)` and `x` accepted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DuoFdfa(pub Fdfa);

impl DuoFdfa {
    pub fn is_duo_normalized(&self, r: &Representation) -> bool {
        let f = &self.0;
        if !f.is_normalized(r) {
            return false;
        }
        let d = f.progress(f.leading().reach(&r.spoke));
        let s = d.run(0, &r.cycle);
        d.run(s, &r.cycle) == s
    }

    pub fn accepts(&self, r: &Representation) -> bool {
        self.is_duo_normalized(r) && self.0.accepts(r, ReferenceSet::Normalized)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Fdfa,
    Fdwa,
    Fnfa,
    DuoFdfa,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Fdfa => "fdfa",
            FamilyKind::Fdwa => "fdwa",
            FamilyKind::Fnfa => "fnfa",
            FamilyKind::DuoFdfa => "fdfa-duo",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyFamily {
    Fdfa(Fdfa),
    Fdwa(Fdwa),
    Fnfa(Fnfa),
    Duo(DuoFdfa),
}

impl AnyFamily {
    pub fn kind(&self) -> FamilyKind {
        match self {
            AnyFamily::Fdfa(_) => FamilyKind::Fdfa,
            AnyFamily::Fdwa(_) => FamilyKind::Fdwa,
            AnyFamily::Fnfa(_) => FamilyKind::Fnfa,
            AnyFamily::Duo(_) => FamilyKind::DuoFdfa,
        }
    }

    pub fn leading(&self) -> &TransitionSystem {
        match self {
            AnyFamily::Fdfa(f) => f.leading(),
            AnyFamily::Fdwa(f) => f.leading(),
            AnyFamily::Fnfa(f) => f.leading(),
            AnyFamily::Duo(f) => f.0.leading(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.leading().alphabet()
    }

    pub fn size(&self) -> (usize, usize) {
        match self {
            AnyFamily::Fdfa(f) => f.size(),
            AnyFamily::Fdwa(f) => f.size(),
            AnyFamily::Fnfa(f) => f.size(),
            AnyFamily::Duo(f) => f.0.size(),
        }
    }

    pub fn is_normalized(&self, r: &Representation) -> bool {
        let t = self.leading();
        let q = t.reach(&r.spoke);
        t.run(q, &r.cycle) == q
    }

    /// Acceptance under the family's own semantics; duo families ignore `ref_set`.
    pub fn accepts(&self, r: &Representation, ref_set: ReferenceSet) -> bool {
        match self {
            AnyFamily::Fdfa(f) => f.accepts(r, ref_set),
            AnyFamily::Fdwa(f) => f.accepts(r, ref_set),
            AnyFamily::Fnfa(f) => f.accepts(r, ref_set),
            AnyFamily::Duo(f) => f.accepts(r),
        }
    }
}

/// Membership of `u·x^ω` in the UP-language of a saturated FDFA.
pub fn up_membership(f: &Fdfa, r: &Representation) -> bool {
    let t = f.leading();
    let n = t.size();
    let mut seen = vec![usize::MAX; n];
    let mut q = t.reach(&r.spoke);
    let mut i = 0;
    while seen[q] == usize::MAX {
        seen[q] = i;
        q = t.run(q, &r.cycle);
        i += 1;
    }
    let (a, b) = (seen[q], i);
    let spoke: Word = [r.spoke.clone(), r.cycle.repeat(a)].concat();
    let rep = Representation { spoke, cycle: r.cycle.repeat(b - a) };
    debug_assert!(f.is_normalized(&rep));
    f.accepts(&rep, ReferenceSet::Normalized)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::word::words_up_to;

    fn rep(f: &Alphabet, u: &str, x: &str) -> Representation {
        Representation::new(f.parse(u).unwrap(), f.parse(x).unwrap()).unwrap()
    }

    #[test]
    fn acceptance_examples() {
        let f = fixtures::ba_star();
        let ab = f.alphabet().clone();
        assert!(f.accepts(&rep(&ab, "", "ba"), ReferenceSet::Normalized));
        assert!(!f.accepts(&rep(&ab, "", "ab"), ReferenceSet::Normalized));
        // FIX-ODD's parity automaton is not weak; its Büchi loop reading accepts a and aa
        assert!(Fdwa::from_fdfa(&fixtures::odd()).is_err());
        let d = fixtures::odd().progress(0).clone();
        assert!(crate::automata::buchi_loop_accepts(&d, &[0]));
        assert!(crate::automata::buchi_loop_accepts(&d, &[0, 0]));
    }

    #[test]
    fn normalization_examples() {
        let f = fixtures::ba_star();
        let ab = f.alphabet().clone();
        assert!(f.is_normalized(&rep(&ab, "ab", "b")));
        let m = fixtures::mod2_universal();
        let a = m.alphabet().clone();
        assert!(!m.is_normalized(&rep(&a, "", "a")));
        assert!(m.is_normalized(&rep(&a, "", "aa")));
        assert!(m.is_normalized(&rep(&a, "a", "aa")));
    }

    #[test]
    fn refinement_examples() {
        let f = fixtures::ba_star();
        assert_eq!(f.refine(), f);
        let m = fixtures::mod2_universal();
        let r = m.refine();
        assert!(r.size().1 <= 2);
        let rr = r.refine();
        for u in words_up_to(1, 6) {
            for x in words_up_to(1, 6).into_iter().skip(1) {
                let p = Representation::new(u.clone(), x).unwrap();
                let acc = m.accepts(&p, ReferenceSet::Normalized);
                assert_eq!(r.accepts(&p, ReferenceSet::Normalized), acc);
                assert_eq!(rr.accepts(&p, ReferenceSet::Normalized), acc);
            }
        }
    }

    #[test]
    fn refinement_invariant_holds() {
        let f = fixtures::ab_omega_saturated();
        let (r, tracks) = f.refine_tracking();
        for q in 0..r.leading().size() {
            let d = r.progress(q);
            for x in words_up_to(2, 5) {
                assert_eq!(tracks[q][d.run(0, &x)], f.leading().run(q, &x));
            }
        }
    }

    #[test]
    fn up_membership_examples() {
        let f = fixtures::ab_omega_saturated();
        let ab = f.alphabet().clone();
        assert!(up_membership(&f, &rep(&ab, "ba", "ba")));
        assert!(up_membership(&f, &rep(&ab, "", "ab")));
        assert!(!up_membership(&f, &rep(&ab, "", "a")));
        let e = fixtures::empty_fdfa(ab.clone());
        assert!(!up_membership(&e, &rep(&ab, "a", "b")));
        let u = fixtures::universal_fdfa(ab.clone());
        assert!(up_membership(&u, &rep(&ab, "a", "b")));
    }
}
