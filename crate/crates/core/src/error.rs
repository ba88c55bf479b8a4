use thiserror::Error;

/// How an error should be reported to a caller that only sees an exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Bad input, unsupported request or internal limit.
    Usage,
    /// The claim was checked and is false.
    Refuted,
    /// The search ran out of budget before settling the claim.
    NotProven,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Usage => 1,
            Outcome::Refuted => 2,
            Outcome::NotProven => 3,
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("operands belong to different rings ({0} vs {1})")]
    MixedRings(String, String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("unknown ring spec `{0}`")]
    UnknownRing(String),
    #[error("{0} is not a Bezout ring")]
    NotBezout(String),
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("zero ideal not allowed here")]
    ZeroIdeal,
    #[error("element {element} is not in {ideal}")]
    NotInIdeal { element: String, ideal: String },
    #[error("unsupported ideal shape: {0}")]
    UnsupportedIdealShape(String),
    #[error("not prime: {reason}")]
    NotPrime { reason: String, witness: Option<String> },
    #[error("irreducibility of {0} could not be decided within the search bound")]
    IrreducibilityUndecided(String),
    #[error("no principal power of the ideal found up to m = {0}")]
    TorsionBoundExceeded(u32),
    #[error("characteristic zero: no Frobenius descent exists, see the normality obstruction (`obstruct`)")]
    CharacteristicZero,
    #[error("characteristic p: use certify (Frobenius path)")]
    CharacteristicP,
    #[error("{0} is normal; the obstruction needs a non-normal ring")]
    RingIsNormal(String),
    #[error("coefficient {0} escapes the subring")]
    SubringEscape(String),
    #[error("{0} already lies in the ring, no obstruction exists")]
    ElementActuallyInRing(String),
    #[error("degree obstruction: {0}")]
    DegreeObstruction(String),
    #[error("radicals differ: {0}")]
    NotRadicalEqual(String),
    #[error("verification failed ({direction}): {detail}")]
    VerificationFailed { direction: String, detail: String },
    #[error("not proven within bound {bound}: {detail}")]
    NotProven { bound: u32, detail: String },
    #[error("enumeration of {needed} candidates exceeds the budget of {budget}")]
    CapTooLarge { needed: u128, budget: u128 },
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown verb `{0}`")]
    UnknownVerb(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    pub fn outcome(&self) -> Outcome {
        match self {
            Error::NotPrime { .. }
            | Error::VerificationFailed { .. }
            | Error::DegreeObstruction(_)
            | Error::NotRadicalEqual(_)
            | Error::NotInIdeal { .. }
            | Error::CharacteristicZero
            | Error::ElementActuallyInRing(_) => Outcome::Refuted,
            Error::NotProven { .. } | Error::IrreducibilityUndecided(_) => Outcome::NotProven,
            _ => Outcome::Usage,
        }
    }

    pub(crate) fn mixed(a: impl std::fmt::Display, b: impl std::fmt::Display) -> Self {
        Error::MixedRings(a.to_string(), b.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
