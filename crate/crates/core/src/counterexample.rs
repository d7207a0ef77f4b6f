//! Evidence that a family treats one UP-word inconsistently.

use serde::{Deserialize, Serialize};

use crate::family::{Family, Progress, ReferenceSet};
use crate::word::{up_equal, Alphabet, Representation, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `(u, ax)` against `(ua, xa)`.
    Loopshift,
    /// `(u, x^i)` against `(u, x^j)`.
    Power,
    /// Any two representations of one UP-word.
    Pair,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Counterexample {
    pub variant: Variant,
    pub left: Representation,
    pub right: Representation,
    pub left_accepted: bool,
    pub right_accepted: bool,
}

impl Counterexample {
    /// Both sides denote the same UP-word, lie in `ref_set`, and the recorded
    /// acceptance bits are reproduced and differ.
    pub fn replays<P: Progress>(&self, f: &Family<P>, ref_set: ReferenceSet) -> bool {
        up_equal(&self.left, &self.right)
            && self.left_accepted != self.right_accepted
            && f.in_reference_set(&self.left, ref_set)
            && f.in_reference_set(&self.right, ref_set)
            && f.accepts(&self.left, ref_set) == self.left_accepted
            && f.accepts(&self.right, ref_set) == self.right_accepted
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> serde_json::Value {
        let side = |r: &Representation| {
            serde_json::json!({"u": alphabet.format(&r.spoke), "x": alphabet.format(&r.cycle)})
        };
        serde_json::json!({
            "variant": self.variant,
            "left": side(&self.left),
            "right": side(&self.right),
            "left_accepted": self.left_accepted,
            "right_accepted": self.right_accepted,
        })
    }

    pub fn from_json(v: &serde_json::Value, alphabet: &Alphabet) -> crate::Result<Self> {
        let bad = |m: &str| crate::Error::Input(format!("counterexample JSON: {m}"));
        let variant: Variant = serde_json::from_value(v["variant"].clone()).map_err(|e| bad(&e.to_string()))?;
        let side = |key: &str| -> crate::Result<Representation> {
            let u = v[key]["u"].as_str().ok_or_else(|| bad("missing u"))?;
            let x = v[key]["x"].as_str().ok_or_else(|| bad("missing x"))?;
            Representation::new(alphabet.parse(u)?, alphabet.parse(x)?)
        };
        Ok(Counterexample {
            variant,
            left: side("left")?,
            right: side("right")?,
            left_accepted: v["left_accepted"].as_bool().ok_or_else(|| bad("missing left_accepted"))?,
            right_accepted: v["right_accepted"].as_bool().ok_or_else(|| bad("missing right_accepted"))?,
        })
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        let tag = |b: bool| if b { "accepted" } else { "rejected" };
        format!(
            "{} {} / {} {}",
            self.left.display(alphabet),
            tag(self.left_accepted),
            self.right.display(alphabet),
            tag(self.right_accepted)
        )
    }
}

/// `(u, x)` accepted and normalized while `(u, x^power)` is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlmostWitness {
    pub spoke: Word,
    pub cycle: Word,
    pub power: usize,
}

impl AlmostWitness {
    pub fn replays(&self, f: &crate::family::Fdfa) -> bool {
        let Ok(base) = Representation::new(self.spoke.clone(), self.cycle.clone()) else {
            return false;
        };
        let pow = Representation { spoke: self.spoke.clone(), cycle: self.cycle.repeat(self.power) };
        self.power >= 2
            && f.is_normalized(&base)
            && f.accepts(&base, ReferenceSet::Normalized)
            && !f.accepts(&pow, ReferenceSet::Normalized)
    }

    pub fn as_counterexample(&self) -> Counterexample {
        Counterexample {
            variant: Variant::Power,
            left: Representation { spoke: self.spoke.clone(), cycle: self.cycle.clone() },
            right: Representation { spoke: self.spoke.clone(), cycle: self.cycle.repeat(self.power) },
            left_accepted: true,
            right_accepted: false,
        }
    }
}
