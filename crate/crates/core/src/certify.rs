//! Exact certificates for identities that depend polynomially on parameters.
//!
//! Suppose the family member at parameter point `t` has structure constants and
//! operator entries polynomial in `t`, so that every coordinate of the residual
//! of an exhaustive basis check is a polynomial in `t` of degree at most `d_i`
//! in `t_i` (after multiplying through by a monomial when some `t_i` occurs in
//! a denominator). A polynomial of that shape vanishing on a product grid with
//! at least `d_i + 1` distinct values on axis `i` is the zero polynomial. So a
//! pass on such a grid proves the identity for every parameter value, and any
//! failing grid point is a concrete counterexample.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::identity::Cartesian;
use crate::scalar::Scalar;
use crate::verdict::{Verdict, WitnessPoint};

/// One family parameter with a bound on how the residual depends on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Parameter {
    pub name: String,
    /// Bound on the residual's degree in this parameter. For a parameter that
    /// also appears with negative powers, the width of the exponent range.
    pub degree: u32,
    /// The family is undefined at 0 (the parameter appears in a denominator).
    pub nonzero: bool,
}

impl Parameter {
    pub fn polynomial(name: &str, degree: u32) -> Self {
        Parameter {
            name: name.to_string(),
            degree,
            nonzero: false,
        }
    }

    pub fn laurent(name: &str, span: u32) -> Self {
        Parameter {
            name: name.to_string(),
            degree: span,
            nonzero: true,
        }
    }

    /// Smallest grid axis that decides the residual.
    pub fn needed_points(&self) -> usize {
        self.degree as usize + 1
    }

    /// The default axis `1, 2, ..` when nonzero, else `0, 1, ..`.
    pub fn default_axis(&self) -> Vec<Scalar> {
        let start = i64::from(self.nonzero);
        (0..self.needed_points() as i64)
            .map(|k| Scalar::from_int(start + k))
            .collect()
    }
}

/// Outcome of a certification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Certificate {
    /// The identity holds identically in the parameters.
    Holds { points: usize },
    /// The identity fails at `point` with the given member-level verdict.
    FailsAt {
        point: Vec<Scalar>,
        verdict: Verdict,
    },
}

impl Certificate {
    pub fn holds(&self) -> bool {
        matches!(self, Certificate::Holds { .. })
    }

    /// Flatten into a verdict whose witness location is the parameter point.
    pub fn verdict(&self) -> Verdict {
        match self {
            Certificate::Holds { .. } => Verdict::Pass,
            Certificate::FailsAt { point, verdict } => {
                let w = verdict
                    .witness()
                    .expect("failing certificate carries a failure");
                Verdict::fail(
                    WitnessPoint::Parameters(point.clone()),
                    w.lhs.clone(),
                    w.rhs.clone(),
                )
            }
        }
    }
}

/// Validate `grid` against the degree bounds, deduplicating each axis.
pub fn validate_grid(params: &[Parameter], grid: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    if grid.len() != params.len() {
        return Err(Error::GridArity {
            expected: params.len(),
            found: grid.len(),
        });
    }
    let mut axes = Vec::with_capacity(grid.len());
    for (p, axis) in params.iter().zip(grid) {
        let mut values = axis.clone();
        values.sort();
        values.dedup();
        if p.nonzero && values.iter().any(Scalar::is_zero) {
            return Err(Error::GridHitsExcluded {
                param: p.name.clone(),
            });
        }
        if values.len() < p.needed_points() {
            return Err(Error::GridTooSmall {
                param: p.name.clone(),
                points: values.len(),
                degree: p.degree,
                needed: p.needed_points(),
            });
        }
        axes.push(values);
    }
    Ok(axes)
}

/// Run `check` at every point of the product grid and stop at the first
/// failure. `check` must be an exact, exhaustive check of one family member.
pub fn certify_parametric(
    params: &[Parameter],
    grid: &[Vec<Scalar>],
    mut check: impl FnMut(&[Scalar]) -> Result<Verdict>,
) -> Result<Certificate> {
    let axes = validate_grid(params, grid)?;
    let mut points = 0;
    for ix in Cartesian::new(axes.iter().map(Vec::len).collect()) {
        let point: Vec<Scalar> = ix
            .iter()
            .zip(&axes)
            .map(|(&k, axis)| axis[k].clone())
            .collect();
        let verdict = check(&point)?;
        points += 1;
        if !verdict.passed() {
            return Ok(Certificate::FailsAt { point, verdict });
        }
    }
    Ok(Certificate::Holds { points })
}

/// Each parameter's default axis.
pub fn default_grid(params: &[Parameter]) -> Vec<Vec<Scalar>> {
    params.iter().map(Parameter::default_axis).collect()
}
