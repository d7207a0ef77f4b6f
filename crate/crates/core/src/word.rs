//! Alphabets, finite words and lasso representations of ultimately periodic words.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{input, Result};

pub type Symbol = usize;
pub type Word = Vec<Symbol>;

/// Ordered list of symbol names. Symbol `i` is the `i`-th name.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.is_empty() {
            return input("alphabet is empty");
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.chars().any(char::is_whitespace) || n == "_" {
                return input(format!("invalid symbol name {n:?}"));
            }
            if names[..i].contains(n) {
                return input(format!("duplicate symbol {n:?}"));
            }
        }
        Ok(Alphabet { names })
    }

    /// Alphabet of single characters, in the given order.
    pub fn from_chars(chars: &str) -> Self {
        let names: Vec<String> = chars.chars().map(String::from).collect();
        Alphabet::new(&names).expect("valid character alphabet")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.names[s]
    }

    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        self.names.iter().position(|n| n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.symbol(name).is_some()
    }

    /// Words are written by juxtaposition when every symbol is one character,
    /// and dot-separated otherwise.
    pub fn compact(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1 && n != ".")
    }

    pub fn format(&self, w: &[Symbol]) -> String {
        let sep = if self.compact() { "" } else { "." };
        w.iter().map(|&s| self.names[s].as_str()).collect::<Vec<_>>().join(sep)
    }

    /// Inverse of [`Alphabet::format`]; the empty string is ε.
    pub fn parse(&self, text: &str) -> Result<Word> {
        if text.is_empty() {
            return Ok(Vec::new());
        }
        if self.compact() {
            text.chars()
                .map(|c| {
                    self.symbol(c.encode_utf8(&mut [0; 4]))
                        .ok_or_else(|| crate::Error::Input(format!("unknown symbol {c:?}")))
                })
                .collect()
        } else {
            text.split('.')
                .map(|t| {
                    self.symbol(t)
                        .ok_or_else(|| crate::Error::Input(format!("unknown symbol {t:?}")))
                })
                .collect()
        }
    }

    /// This alphabet extended by a fresh symbol, which becomes the largest.
    pub fn extended(&self, name: &str) -> Result<Alphabet> {
        if self.contains(name) {
            return input(format!("symbol {name:?} already in alphabet"));
        }
        let mut names = self.names.clone();
        names.push(name.to_string());
        Alphabet::new(&names)
    }
}

/// Length-lexicographic order.
pub fn llex_cmp(a: &[Symbol], b: &[Symbol]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// All words of length exactly `n` over `k` symbols, in lexicographic order.
pub fn words_of_len(k: usize, n: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * k);
        for w in &out {
            for a in 0..k {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// All words of length at most `n`, in llex order.
pub fn words_up_to(k: usize, n: usize) -> Vec<Word> {
    (0..=n).flat_map(|l| words_of_len(k, l)).collect()
}

pub fn power(x: &[Symbol], i: usize) -> Word {
    x.repeat(i)
}

/// Shortest `r` with `r^ω = x^ω`: the shortest period of `x` dividing `|x|`.
pub fn root(x: &[Symbol]) -> Result<Word> {
    if x.is_empty() {
        return input("root of the empty word");
    }
    let n = x.len();
    for d in 1..=n {
        if n % d == 0 && (d..n).all(|i| x[i] == x[i - d]) {
            return Ok(x[..d].to_vec());
        }
    }
    unreachable!()
}

/// A lasso `u·x^ω` with non-empty loop.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    pub spoke: Word,
    pub cycle: Word,
}

impl Representation {
    pub fn new(spoke: Word, cycle: Word) -> Result<Self> {
        if cycle.is_empty() {
            return input("loop of a representation must be non-empty");
        }
        Ok(Representation { spoke, cycle })
    }

    /// Letter at position `i` of the ω-word.
    pub fn letter(&self, i: usize) -> Symbol {
        if i < self.spoke.len() {
            self.spoke[i]
        } else {
            self.cycle[(i - self.spoke.len()) % self.cycle.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Word {
        (0..n).map(|i| self.letter(i)).collect()
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        let u = alphabet.format(&self.spoke);
        format!(
            "({}, {})",
            if u.is_empty() { "ε".to_string() } else { u },
            alphabet.format(&self.cycle)
        )
    }
}

impl Ord for Representation {
    /// Length-lexicographic order on the encoding `u$x`, with `$` below every symbol.
    fn cmp(&self, other: &Self) -> Ordering {
        let la = self.spoke.len() + self.cycle.len();
        let lb = other.spoke.len() + other.cycle.len();
        la.cmp(&lb).then_with(|| {
            let enc = |r: &Representation| {
                r.spoke
                    .iter()
                    .map(|&s| s + 1)
                    .chain(std::iter::once(0))
                    .chain(r.cycle.iter().map(|&s| s + 1))
                    .collect::<Vec<_>>()
            };
            enc(self).cmp(&enc(other))
        })
    }
}

impl PartialOrd for Representation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.spoke, self.cycle)
    }
}

/// Shift the spoke into the loop as far as possible, then reduce the loop to its root.
pub fn canonical_rep(r: &Representation) -> Representation {
    let mut u = r.spoke.clone();
    let mut x = r.cycle.clone();
    while let (Some(&a), Some(&b)) = (u.last(), x.last()) {
        if a != b {
            break;
        }
        u.pop();
        x.rotate_right(1);
    }
    let x = root(&x).expect("loop is non-empty");
    Representation { spoke: u, cycle: x }
}

pub fn up_equal(r1: &Representation, r2: &Representation) -> bool {
    canonical_rep(r1) == canonical_rep(r2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Alphabet::from_chars("ab").parse(s).unwrap()
    }

    fn rep(u: &str, x: &str) -> Representation {
        Representation::new(w(u), w(x)).unwrap()
    }

    #[test]
    fn roots() {
        assert_eq!(root(&w("abab")).unwrap(), w("ab"));
        assert_eq!(root(&w("aba")).unwrap(), w("aba"));
        let x = [w("ab"), w("ba").repeat(4)].concat();
        assert_eq!(root(&x).unwrap(), x);
        assert!(root(&[]).is_err());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonical_rep(&rep("a", "ba")), rep("", "ab"));
        assert_eq!(canonical_rep(&rep("", "abab")), rep("", "ab"));
        assert_eq!(canonical_rep(&rep("ab", "ba")), rep("ab", "ba"));
        assert!(up_equal(&rep("a", "ba"), &rep("", "ab")));
        assert!(up_equal(&rep("", "a"), &rep("", "aa")));
        assert!(!up_equal(&rep("", "ab"), &rep("", "ba")));
    }

    #[test]
    fn representation_order() {
        assert!(rep("", "ba") < rep("a", "ba"));
        assert!(rep("b", "ab") < rep("", "baba"));
        assert!(rep("", "a") < rep("", "aa"));
    }

    #[test]
    fn root_power_identity_exhaustive() {
        for x in words_up_to(2, 12).into_iter().skip(1) {
            let r = root(&x).unwrap();
            assert_eq!(power(&r, x.len() / r.len()), x);
        }
    }

    #[test]
    fn up_equal_is_equivalence() {
        let mut reps = Vec::new();
        for u in words_up_to(2, 4) {
            for x in words_up_to(2, 4).into_iter().skip(1) {
                reps.push(Representation::new(u.clone(), x).unwrap());
            }
        }
        let keys: Vec<_> = reps.iter().map(canonical_rep).collect();
        for (i, a) in reps.iter().enumerate() {
            assert!(up_equal(a, a));
            for (j, b) in reps.iter().enumerate() {
                assert_eq!(up_equal(a, b), up_equal(b, a));
                assert_eq!(up_equal(a, b), keys[i] == keys[j]);
            }
        }
    }

    #[test]
    fn word_io() {
        let ab = Alphabet::from_chars("ab");
        assert_eq!(ab.format(&ab.parse("abba").unwrap()), "abba");
        let multi = Alphabet::new(&["m1", "m2"]).unwrap();
        assert_eq!(multi.parse("m2.m1").unwrap(), vec![1, 0]);
        assert_eq!(multi.format(&[1, 0]), "m2.m1");
        assert!(ab.parse("c").is_err());
    }

    proptest! {
        #[test]
        fn canonical_is_idempotent_and_preserves_word(
            u in prop::collection::vec(0usize..2, 0..=8),
            x in prop::collection::vec(0usize..2, 1..=8),
        ) {
            let r = Representation::new(u.clone(), x.clone()).unwrap();
            let c = canonical_rep(&r);
            prop_assert_eq!(canonical_rep(&c), c.clone());
            let n = u.len() + 8 * x.len();
            prop_assert_eq!(r.prefix(n), c.prefix(n));
        }
    }
}
