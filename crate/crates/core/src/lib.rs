//! Families of automata over ultimately periodic words.

pub mod almost_saturation;
pub mod automata;
pub mod counterexample;
pub mod error;
pub mod faf;
pub mod family;
pub mod fixtures;
pub mod learning;
pub mod oracle;
pub mod regularity;
pub mod saturation;
pub mod translate;
pub mod word;

pub use almost_saturation::{check_almost_saturated, gen_intersection_fdfa, AlmostStatus, AlmostVerdict};
pub use automata::{weak_omega_accepts, Dfa, Nba, Nfa, TransitionSystem, WeakDba};
pub use counterexample::{AlmostWitness, Counterexample, Variant};
pub use error::{Error, Result};
pub use faf::{parse_document, parse_faf, serialize_document, serialize_faf, to_dot, Document};
pub use family::{
    family_accepts, is_normalized, refine_family, up_membership, AnyFamily, DuoFdfa, Family,
    FamilyKind, Fdfa, Fdwa, Fnfa, Progress, ReferenceSet,
};
pub use word::{canonical_rep, root, up_equal, Alphabet, Representation, Symbol, Word};
pub use saturation::{
    check_fdwa_saturated, check_loopshift_stable, check_power_stable, check_saturated,
    SaturationMode, SaturationStatus, SaturationVerdict, Stage,
};
pub use regularity::{check_regular, gen_ter_hardness, RegularityStatus, RegularityVerdict};
pub use translate::{
    complement_saturated_fdwa, duo_to_fdwa, fdwa_to_duo, fdwa_to_nba, gen_family, FamilyName,
};
