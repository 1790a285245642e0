use std::fmt;

use serde::Serialize;

use crate::algebra::Element;
use crate::scalar::Scalar;

/// Where a failing check was observed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessPoint {
    /// Indices into the algebra's basis, one per argument slot.
    Basis(Vec<usize>),
    /// Explicit arguments (random trials).
    Elements(Vec<Element>),
    /// Parameter values of a family, with the verdict found there.
    Parameters(Vec<Scalar>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub at: WitnessPoint,
    pub lhs: Element,
    pub rhs: Element,
}

/// Outcome of an exact check. A failure always carries the arguments and the
/// two sides that differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail(Box<Witness>),
}

impl Verdict {
    pub fn fail(at: WitnessPoint, lhs: Element, rhs: Element) -> Self {
        Verdict::Fail(Box::new(Witness { at, lhs, rhs }))
    }

    /// `Pass` when the two sides agree, otherwise a failure at `at`.
    pub fn compare(at: impl FnOnce() -> WitnessPoint, lhs: Element, rhs: Element) -> Self {
        if lhs == rhs {
            Verdict::Pass
        } else {
            Verdict::fail(at(), lhs, rhs)
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }

    /// Conjunction keeping the first failure.
    pub fn and(self, other: impl FnOnce() -> Verdict) -> Verdict {
        match self {
            Verdict::Pass => other(),
            fail => fail,
        }
    }
}

impl fmt::Display for WitnessPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessPoint::Basis(ix) => {
                let parts: Vec<String> = ix.iter().map(|i| format!("e{i}")).collect();
                write!(f, "basis ({})", parts.join(", "))
            }
            WitnessPoint::Elements(xs) => {
                let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
                write!(f, "elements ({})", parts.join(", "))
            }
            WitnessPoint::Parameters(ps) => {
                let parts: Vec<String> = ps.iter().map(ToString::to_string).collect();
                write!(f, "parameters ({})", parts.join(", "))
            }
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail(w) => write!(f, "fail at {}: lhs = {}, rhs = {}", w.at, w.lhs, w.rhs),
        }
    }
}
