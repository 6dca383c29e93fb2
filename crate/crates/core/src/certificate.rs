//! Verdicts, theorem tags, and relation witnesses.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::rational::Rational;
use crate::word::TwistWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    CertifiedFree,
    CertifiedNotFree,
    CertifiedRelPA,
    CertifiedNotRelPA,
    Unknown,
}

impl Verdict {
    pub fn is_certified(self) -> bool {
        self != Verdict::Unknown
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Verdict::CertifiedFree | Verdict::CertifiedRelPA)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::CertifiedFree => "CertifiedFree",
            Verdict::CertifiedNotFree => "CertifiedNotFree",
            Verdict::CertifiedRelPA => "CertifiedRelPA",
            Verdict::CertifiedNotRelPA => "CertifiedNotRelPA",
            Verdict::Unknown => "Unknown",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Regime of the four-way sufficient condition for relative pseudo-Anosov.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    I,
    II,
    III,
    IV,
}

/// The result that justifies a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Thm3_2,
    Thm3_4,
    Thm3_5,
    Thm3_7(Regime),
    Thm3_9,
    Thm3_10,
    Prop4_1,
    Prop5_1,
    Prop5_2,
    Cor5_3,
    Thm6_1,
    Thm6_3,
    Thm7_2,
    Lem7_1PingPong,
    Sl2zBfs,
    Sl2zTrace,
}

impl Basis {
    pub fn tag(self) -> &'static str {
        match self {
            Basis::Thm3_2 => "Thm3.2",
            Basis::Thm3_4 => "Thm3.4",
            Basis::Thm3_5 => "Thm3.5",
            Basis::Thm3_7(Regime::I) => "Thm3.7(i)",
            Basis::Thm3_7(Regime::II) => "Thm3.7(ii)",
            Basis::Thm3_7(Regime::III) => "Thm3.7(iii)",
            Basis::Thm3_7(Regime::IV) => "Thm3.7(iv)",
            Basis::Thm3_9 => "Thm3.9",
            Basis::Thm3_10 => "Thm3.10",
            Basis::Prop4_1 => "Prop4.1",
            Basis::Prop5_1 => "Prop5.1",
            Basis::Prop5_2 => "Prop5.2",
            Basis::Cor5_3 => "Cor5.3",
            Basis::Thm6_1 => "Thm6.1",
            Basis::Thm6_3 => "Thm6.3",
            Basis::Thm7_2 => "Thm7.2",
            Basis::Lem7_1PingPong => "Lem7.1+Lem2.3",
            Basis::Sl2zBfs => "SL2Z-BFS",
            Basis::Sl2zTrace => "SL2Z-trace",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationName {
    Chain6,
    Braid,
    Pow2Chain,
    Pow3Chain,
    Lantern,
    TbtaSquared,
    Torus,
}

impl RelationName {
    pub const ALL: [RelationName; 7] = [
        RelationName::Chain6,
        RelationName::Braid,
        RelationName::Pow2Chain,
        RelationName::Pow3Chain,
        RelationName::Lantern,
        RelationName::TbtaSquared,
        RelationName::Torus,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RelationName::Chain6 => "chain6",
            RelationName::Braid => "braid",
            RelationName::Pow2Chain => "pow2_chain",
            RelationName::Pow3Chain => "pow3_chain",
            RelationName::Lantern => "lantern",
            RelationName::TbtaSquared => "tbta_squared",
            RelationName::Torus => "torus",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.as_str() == s)
    }
}

impl fmt::Display for RelationName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A relation `lhs = rhs` with a word in the two generators on the left and a
/// multi-twist about named curves on the right.
///
/// `lhs` uses family 0 for `A` and family 1 for `B`. With `swapped` set the
/// roles of the two generators are exchanged when rendering, which is how
/// `(BA^2)^4` style witnesses for `m > n` are expressed. The right-hand side
/// labels are opaque names; for `braid` they name generator letters rather
/// than boundary curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationInstance {
    pub name: RelationName,
    pub lhs: TwistWord,
    pub rhs: Vec<(String, i64)>,
    pub swapped: bool,
}

impl RelationInstance {
    pub fn new(name: RelationName, lhs: TwistWord, rhs: &[(&str, i64)]) -> Self {
        Self {
            name,
            lhs,
            rhs: rhs.iter().map(|&(c, e)| (String::from(c), e)).collect(),
            swapped: false,
        }
    }

    /// Exchanges the roles of `A` and `B`.
    pub fn swap(mut self) -> Self {
        self.swapped = !self.swapped;
        self
    }

    /// Left-hand side with families relabelled if swapped.
    pub fn lhs_in_system(&self) -> TwistWord {
        if self.swapped {
            TwistWord::new(
                self.lhs
                    .letters()
                    .iter()
                    .map(|l| crate::word::Letter::new(1 - l.family.min(1), l.exp)),
            )
        } else {
            self.lhs.clone()
        }
    }

    /// Compact human-readable statement, e.g. `(AB^3)^3=(AB)^6`.
    pub fn statement(&self) -> String {
        let s = match self.name {
            RelationName::Chain6 => "(AB)^6=T_delta",
            RelationName::Braid => "ABA=BAB",
            RelationName::Pow2Chain => "(AB^2)^4=(AB)^6",
            RelationName::Pow3Chain => "(AB^3)^3=(AB)^6",
            RelationName::Lantern => "AB=T_d1T_d2T_d3T_d4T_c^-1",
            RelationName::TbtaSquared => "(BA)^2=T_d1T_d2T_gamma^-4T_gamma'^-4",
            RelationName::Torus => "(AB)^4=T_delta1T_delta2",
        };
        if self.swapped {
            s.chars()
                .map(|c| match c {
                    'A' => 'B',
                    'B' => 'A',
                    c => c,
                })
                .collect()
        } else {
            String::from(s)
        }
    }

    /// Right-hand side rendered as `T_x^e` factors.
    pub fn rhs_string(&self) -> String {
        let mut out = String::new();
        for (c, e) in &self.rhs {
            if *e == 1 {
                out.push_str(&format!("T_{c}"));
            } else {
                out.push_str(&format!("T_{c}^{e}"));
            }
        }
        out
    }
}

/// Evidence attached to a negative (or reducible) verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A catalog relation.
    Relation(RelationInstance),
    /// A word whose torus-model image has trace `±2`, hence is reducible.
    ReducibleWord {
        word: TwistWord,
        trace: BigInt,
        m: u64,
        n: u64,
    },
    /// A nonempty reduced word evaluating to the identity matrix.
    IdentityWord { word: TwistWord, m: u64, n: u64 },
}

impl Witness {
    pub fn relation(&self) -> Option<&RelationInstance> {
        match self {
            Witness::Relation(r) => Some(r),
            _ => None,
        }
    }

    pub fn statement(&self) -> String {
        match self {
            Witness::Relation(r) => r.statement(),
            Witness::ReducibleWord { word, trace, .. } => format!("tr({word})={trace}"),
            Witness::IdentityWord { word, .. } => format!("{word}=I"),
        }
    }
}

/// Error raised when a certificate would break its own invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error("a certified verdict needs a basis")]
    MissingBasis,
    #[error("an Unknown verdict cannot carry a witness")]
    WitnessOnUnknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    verdict: Verdict,
    basis: Option<Basis>,
    parameters: BTreeMap<String, Rational>,
    witness: Option<Witness>,
    notes: Vec<String>,
}

impl Certificate {
    pub fn certified(verdict: Verdict, basis: Basis) -> Self {
        debug_assert!(verdict.is_certified());
        Self {
            verdict,
            basis: Some(basis),
            parameters: BTreeMap::new(),
            witness: None,
            notes: Vec::new(),
        }
    }

    pub fn unknown() -> Self {
        Self {
            verdict: Verdict::Unknown,
            basis: None,
            parameters: BTreeMap::new(),
            witness: None,
            notes: Vec::new(),
        }
    }

    /// General constructor enforcing the invariants.
    pub fn try_new(
        verdict: Verdict,
        basis: Option<Basis>,
        witness: Option<Witness>,
    ) -> Result<Self, CertificateError> {
        if verdict.is_certified() && basis.is_none() {
            return Err(CertificateError::MissingBasis);
        }
        if verdict == Verdict::Unknown && witness.is_some() {
            return Err(CertificateError::WitnessOnUnknown);
        }
        Ok(Self {
            verdict,
            basis,
            parameters: BTreeMap::new(),
            witness,
            notes: Vec::new(),
        })
    }

    /// Attaches a witness. Ignored on Unknown certificates.
    pub fn with_witness(mut self, w: Witness) -> Self {
        if self.verdict.is_certified() {
            self.witness = Some(w);
        }
        self
    }

    pub fn with_param(mut self, key: &str, value: Rational) -> Self {
        self.parameters.insert(String::from(key), value);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    pub fn basis(&self) -> Option<Basis> {
        self.basis
    }

    pub fn parameters(&self) -> &BTreeMap<String, Rational> {
        &self.parameters
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }
}
