//! Elements `u` of an ambient algebra whose left multiplication restricts to a
//! useful operator on a subalgebra.
//!
//! Linear side conditions on `u` are solved exactly. A quadratic condition,
//! always of the form `u² + κu + c = 0`, is resolved either by substituting
//! candidate points or by reducing to one free parameter and solving the
//! resulting quadratic over the rationals.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, Element, Embedding};
use crate::certify::Parameter;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::operator::parse_call;
use crate::scalar::Scalar;
use crate::verdict::{Verdict, WitnessPoint};

/// A condition on `u` that is linear in its ambient coordinates. Each applies
/// to every basis element `x` of the subalgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LinearConstraint {
    /// `x·u = x`
    RightIdentity,
    /// `x·u = 0`
    RightAnnihilator,
    /// `x·u = u·x`
    Centralize,
    /// `u·x` lies in the subalgebra
    Stabilize,
}

impl LinearConstraint {
    pub const ALL: [LinearConstraint; 4] = [
        LinearConstraint::RightIdentity,
        LinearConstraint::RightAnnihilator,
        LinearConstraint::Centralize,
        LinearConstraint::Stabilize,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LinearConstraint::RightIdentity => "right_identity",
            LinearConstraint::RightAnnihilator => "right_annihilator",
            LinearConstraint::Centralize => "centralize",
            LinearConstraint::Stabilize => "stabilize",
        }
    }

    /// Rows `M` and right-hand side `r` with `M u = r` for the basis element `x`.
    fn system(self, emb: &Embedding, x: &Element) -> (Matrix, Vec<Scalar>) {
        let a = emb.ambient();
        let n = a.dim();
        match self {
            LinearConstraint::RightIdentity => (a.left_multiplication(x), x.coords().to_vec()),
            LinearConstraint::RightAnnihilator => {
                (a.left_multiplication(x), vec![Scalar::zero(); n])
            }
            LinearConstraint::Centralize => {
                let m = a
                    .left_multiplication(x)
                    .add(&a.right_multiplication(x).scale(&Scalar::from_int(-1)));
                (m, vec![Scalar::zero(); n])
            }
            LinearConstraint::Stabilize => {
                let m = emb.annihilator().mul(&a.right_multiplication(x));
                let rows = m.rows();
                (m, vec![Scalar::zero(); rows])
            }
        }
    }

    /// Exact check at every subalgebra basis element; the first failing index
    /// is the witness.
    pub fn verify(self, emb: &Embedding, u: &Element) -> Verdict {
        let a = emb.ambient();
        for (j, x) in emb.basis().iter().enumerate() {
            let at = || WitnessPoint::Basis(vec![j]);
            let verdict = match self {
                LinearConstraint::RightIdentity => Verdict::compare(at, a.mul(x, u), x.clone()),
                LinearConstraint::RightAnnihilator => {
                    Verdict::compare(at, a.mul(x, u), Element::zero(a.dim()))
                }
                LinearConstraint::Centralize => Verdict::compare(at, a.mul(x, u), a.mul(u, x)),
                LinearConstraint::Stabilize => {
                    let ux = a.mul(u, x);
                    match emb.coordinates(&ux) {
                        Ok(_) => Verdict::Pass,
                        // rhs is the part of u·x inside the span
                        Err(residual) => {
                            let inside = &ux - &residual;
                            Verdict::fail(at(), ux, inside)
                        }
                    }
                }
            };
            if !verdict.passed() {
                return verdict;
            }
        }
        Verdict::Pass
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LinearConstraint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LinearConstraint::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::UnknownConstraint(s.to_string()))
    }
}

/// Parse a comma-separated list such as `right_identity,stabilize`.
pub fn parse_linear_list(s: &str) -> Result<Vec<LinearConstraint>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// A quadratic condition on `u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuadraticConstraint {
    /// `u² = u`
    Idempotent,
    /// `u² = -u`
    SkewIdempotent,
    /// `u² = 0`
    Nilpotent2,
    /// `u² = -λu - β·1`; the ambient unit is used when `unit` is absent.
    RbWeighted {
        lambda: Scalar,
        beta: Scalar,
        unit: Option<Element>,
    },
    /// `u² = γu`
    Scaled { gamma: Scalar },
}

impl QuadraticConstraint {
    pub fn name(&self) -> &'static str {
        match self {
            QuadraticConstraint::Idempotent => "idempotent",
            QuadraticConstraint::SkewIdempotent => "skew_idempotent",
            QuadraticConstraint::Nilpotent2 => "nilpotent2",
            QuadraticConstraint::RbWeighted { .. } => "rb_weighted",
            QuadraticConstraint::Scaled { .. } => "scaled",
        }
    }

    /// `(κ, c)` with the condition equivalent to `u² + κu + c = 0`.
    pub fn normal_form(&self, a: &Algebra) -> Result<(Scalar, Element)> {
        let zero = Element::zero(a.dim());
        Ok(match self {
            QuadraticConstraint::Idempotent => (Scalar::from_int(-1), zero),
            QuadraticConstraint::SkewIdempotent => (Scalar::one(), zero),
            QuadraticConstraint::Nilpotent2 => (Scalar::zero(), zero),
            QuadraticConstraint::Scaled { gamma } => (-gamma, zero),
            QuadraticConstraint::RbWeighted { lambda, beta, unit } => {
                let unit = match unit {
                    Some(u) => {
                        a.check_element(u)?;
                        u.clone()
                    }
                    None => a.unit().ok_or_else(|| {
                        Error::Strategy("rb_weighted needs a unit and the ambient has none".into())
                    })?,
                };
                (lambda.clone(), unit.scale(beta))
            }
        })
    }

    /// Exact check; the witness holds `u`, `u²` and the required value.
    pub fn verify(&self, a: &Algebra, u: &Element) -> Result<Verdict> {
        let (kappa, c) = self.normal_form(a)?;
        let square = a.mul(u, u);
        let mut target = u.scale(&-&kappa);
        target.add_scaled(&Scalar::from_int(-1), &c);
        Ok(Verdict::compare(
            || WitnessPoint::Elements(vec![u.clone()]),
            square,
            target,
        ))
    }
}

impl fmt::Display for QuadraticConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadraticConstraint::RbWeighted { lambda, beta, .. } => {
                write!(f, "rb_weighted({lambda},{beta})")
            }
            QuadraticConstraint::Scaled { gamma } => write!(f, "scaled({gamma})"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for QuadraticConstraint {
    type Err = Error;

    /// `idempotent`, `skew_idempotent`, `nilpotent2`, `scaled(γ)`,
    /// `rb_weighted(λ,β)`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = parse_call(s).map_err(|_| Error::UnknownConstraint(s.to_string()))?;
        let arity = |k: usize| {
            if args.len() == k {
                Ok(())
            } else {
                Err(Error::UnknownConstraint(s.to_string()))
            }
        };
        match name.as_str() {
            "idempotent" => arity(0).map(|_| QuadraticConstraint::Idempotent),
            "skew_idempotent" => arity(0).map(|_| QuadraticConstraint::SkewIdempotent),
            "nilpotent2" => arity(0).map(|_| QuadraticConstraint::Nilpotent2),
            "scaled" => arity(1).map(|_| QuadraticConstraint::Scaled {
                gamma: args[0].clone(),
            }),
            "rb_weighted" => arity(2).map(|_| QuadraticConstraint::RbWeighted {
                lambda: args[0].clone(),
                beta: args[1].clone(),
                unit: None,
            }),
            _ => Err(Error::UnknownConstraint(s.to_string())),
        }
    }
}

/// `offset + Σ tᵢ·directionᵢ`, or the empty set when `offset` is absent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineSpace {
    pub offset: Option<Element>,
    pub directions: Vec<Element>,
}

impl AffineSpace {
    pub fn is_empty(&self) -> bool {
        self.offset.is_none()
    }

    /// Number of free parameters; `None` for the empty set.
    pub fn dim(&self) -> Option<usize> {
        self.offset.as_ref().map(|_| self.directions.len())
    }

    pub fn point(&self, t: &[Scalar]) -> Result<Element> {
        let offset = self
            .offset
            .as_ref()
            .ok_or_else(|| Error::Strategy("the linear constraints have no solution".into()))?;
        if t.len() != self.directions.len() {
            return Err(Error::GridArity {
                expected: self.directions.len(),
                found: t.len(),
            });
        }
        let mut u = offset.clone();
        for (ti, d) in t.iter().zip(&self.directions) {
            u.add_scaled(ti, d);
        }
        Ok(u)
    }

    /// Parameters of `u` if it lies in the space.
    pub fn locate(&self, u: &Element) -> Option<Vec<Scalar>> {
        let offset = self.offset.as_ref()?;
        let shifted = u - offset;
        if self.directions.is_empty() {
            return shifted.is_zero().then(Vec::new);
        }
        let cols: Vec<Vec<Scalar>> = self
            .directions
            .iter()
            .map(|d| d.coords().to_vec())
            .collect();
        let m = Matrix::from_columns(u.dim(), &cols);
        m.solve(shifted.coords()).map(|(t, _)| t)
    }
}

/// Exact solution set of the linear constraints, all relative to `emb`.
pub fn solve_linear(emb: &Embedding, constraints: &[LinearConstraint]) -> AffineSpace {
    let n = emb.ambient().dim();
    let mut system = Matrix::zeros(0, n);
    let mut rhs = Vec::new();
    for &c in constraints {
        for x in emb.basis() {
            let (m, r) = c.system(emb, x);
            system.vstack(&m);
            rhs.extend(r);
        }
    }
    match system.solve(&rhs) {
        Some((particular, homogeneous)) => AffineSpace {
            offset: Some(Element::new(particular)),
            directions: homogeneous.into_iter().map(Element::new).collect(),
        },
        None => AffineSpace {
            offset: None,
            directions: Vec::new(),
        },
    }
}

type Eval = Arc<dyn Fn(&[Scalar]) -> Element + Send + Sync>;

/// A polynomial parametrization of candidate elements.
#[derive(Clone)]
pub struct ElementFamily {
    pub params: Vec<Parameter>,
    eval: Eval,
}

impl ElementFamily {
    pub fn new(
        params: Vec<Parameter>,
        eval: impl Fn(&[Scalar]) -> Element + Send + Sync + 'static,
    ) -> Self {
        ElementFamily {
            params,
            eval: Arc::new(eval),
        }
    }

    pub fn at(&self, t: &[Scalar]) -> Result<Element> {
        if t.len() != self.params.len() {
            return Err(Error::GridArity {
                expected: self.params.len(),
                found: t.len(),
            });
        }
        if let Some(p) = self
            .params
            .iter()
            .zip(t)
            .find(|(p, v)| p.nonzero && v.is_zero())
        {
            return Err(Error::GridHitsExcluded {
                param: p.0.name.clone(),
            });
        }
        Ok((self.eval)(t))
    }

    pub fn names(&self) -> Vec<&str> {
        self.params.iter().map(|p| p.name.as_str()).collect()
    }
}

impl fmt::Debug for ElementFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ElementFamily")
            .field("params", &self.params)
            .finish_non_exhaustive()
    }
}

/// How to resolve the quadratic condition.
#[derive(Clone, Debug)]
pub enum Strategy {
    /// Points in the parameters of the affine solution space.
    Grid(Vec<Vec<Scalar>>),
    /// Points substituted into an explicit parametrization; candidates must
    /// still satisfy the linear constraints.
    Family {
        family: ElementFamily,
        points: Vec<Vec<Scalar>>,
    },
    /// Pin all affine parameters but one (`None`) and solve for it.
    Univariate(Vec<Option<Scalar>>),
}

/// Solutions `offset + t·direction` with `t` a root of the irreducible
/// rational quadratic `t² + b·t + c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrrationalLine {
    pub offset: Element,
    pub direction: Element,
    /// `[c, b, 1]`, lowest degree first.
    pub min_poly: [Scalar; 3],
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    /// Rational solutions in discovery order, without duplicates.
    pub elements: Vec<Element>,
    /// Solutions that exist only outside the rationals.
    pub irrational: Option<IrrationalLine>,
    /// `(offset, direction)` when the whole searched line solves the system.
    pub line: Option<(Element, Element)>,
}

impl SearchResult {
    fn push(&mut self, u: Element) {
        if !self.elements.contains(&u) {
            self.elements.push(u);
        }
    }
}

/// Elements satisfying every linear constraint and the quadratic one.
pub fn find_special(
    emb: &Embedding,
    lin: &[LinearConstraint],
    quad: &QuadraticConstraint,
    strategy: &Strategy,
) -> Result<SearchResult> {
    let a = emb.ambient();
    let space = solve_linear(emb, lin);
    let (kappa, c) = quad.normal_form(a)?;
    let residual = |u: &Element| {
        let mut r = a.mul(u, u);
        r.add_scaled(&kappa, u);
        r.add_scaled(&Scalar::one(), &c);
        r
    };
    let mut out = SearchResult::default();
    match strategy {
        Strategy::Grid(points) => {
            if space.is_empty() {
                return Ok(out);
            }
            let candidates = points
                .iter()
                .map(|t| space.point(t))
                .collect::<Result<Vec<_>>>()?;
            let hits: Vec<Option<Element>> = candidates
                .into_par_iter()
                .map(|u| residual(&u).is_zero().then_some(u))
                .collect();
            hits.into_iter().flatten().for_each(|u| out.push(u));
        }
        Strategy::Family { family, points } => {
            let candidates = points
                .iter()
                .map(|t| family.at(t))
                .collect::<Result<Vec<_>>>()?;
            for u in &candidates {
                a.check_element(u)?;
            }
            let hits: Vec<Option<Element>> = candidates
                .into_par_iter()
                .map(|u| {
                    let ok =
                        residual(&u).is_zero() && lin.iter().all(|l| l.verify(emb, &u).passed());
                    ok.then_some(u)
                })
                .collect();
            hits.into_iter().flatten().for_each(|u| out.push(u));
        }
        Strategy::Univariate(pinned) => {
            if space.is_empty() {
                return Ok(out);
            }
            if pinned.len() != space.directions.len() {
                return Err(Error::GridArity {
                    expected: space.directions.len(),
                    found: pinned.len(),
                });
            }
            let free: Vec<usize> = (0..pinned.len()).filter(|&i| pinned[i].is_none()).collect();
            let base_params: Vec<Scalar> = pinned
                .iter()
                .map(|p| p.clone().unwrap_or_else(Scalar::zero))
                .collect();
            let p = space.point(&base_params)?;
            match free.as_slice() {
                [] => {
                    if residual(&p).is_zero() {
                        out.push(p);
                    }
                }
                [k] => solve_line(a, &kappa, &c, p, space.directions[*k].clone(), &mut out),
                _ => {
                    return Err(Error::Strategy(format!(
                        "univariate search needs at most one free parameter, found {}",
                        free.len()
                    )))
                }
            }
        }
    }
    Ok(out)
}

/// Solve `(p + t·d)² + κ(p + t·d) + c = 0` for rational `t`.
fn solve_line(
    a: &Algebra,
    kappa: &Scalar,
    c: &Element,
    p: Element,
    d: Element,
    out: &mut SearchResult,
) {
    // Coefficients of t², t, 1, coordinatewise.
    let q2 = a.mul(&d, &d);
    let mut q1 = &a.mul(&p, &d) + &a.mul(&d, &p);
    q1.add_scaled(kappa, &d);
    let mut q0 = a.mul(&p, &p);
    q0.add_scaled(kappa, &p);
    q0.add_scaled(&Scalar::one(), c);
    let polys: Vec<[Scalar; 3]> = (0..a.dim())
        .map(|i| [q0[i].clone(), q1[i].clone(), q2[i].clone()])
        .filter(|q| q.iter().any(|x| !x.is_zero()))
        .collect();
    let Some(first) = polys.first() else {
        out.line = Some((p, d));
        return;
    };
    let at = |t: &Scalar| {
        let mut u = p.clone();
        u.add_scaled(t, &d);
        u
    };
    let vanishes = |q: &[Scalar; 3], t: &Scalar| (&(&q[2] * t + &q[1]) * t + &q[0]).is_zero();
    match rational_roots(first) {
        Roots::Rational(ts) => {
            for t in ts.iter().filter(|t| polys.iter().all(|q| vanishes(q, t))) {
                out.push(at(t));
            }
        }
        Roots::Irrational(monic) => {
            // An irreducible quadratic shares a root with another polynomial of
            // degree ≤ 2 only when it divides it.
            if polys.iter().all(|q| is_multiple(q, &monic)) {
                out.irrational = Some(IrrationalLine {
                    offset: p,
                    direction: d,
                    min_poly: monic,
                });
            }
        }
    }
}

enum Roots {
    Rational(Vec<Scalar>),
    Irrational([Scalar; 3]),
}

/// Roots of a nonzero `q0 + q1·t + q2·t²`.
fn rational_roots(q: &[Scalar; 3]) -> Roots {
    let [q0, q1, q2] = q;
    if q2.is_zero() {
        if q1.is_zero() {
            return Roots::Rational(Vec::new());
        }
        return Roots::Rational(vec![-&(q0 / q1)]);
    }
    let b = q1 / q2;
    let c = q0 / q2;
    let disc = &(&b * &b) - &(&Scalar::from_int(4) * &c);
    match disc.sqrt() {
        Some(r) => {
            let half = Scalar::frac(1, 2);
            let mut ts = vec![&half * &(&-&b - &r), &half * &(&-&b + &r)];
            ts.dedup();
            Roots::Rational(ts)
        }
        None => Roots::Irrational([c, b, Scalar::one()]),
    }
}

fn is_multiple(q: &[Scalar; 3], monic: &[Scalar; 3]) -> bool {
    let k = &q[2];
    (0..3).all(|i| q[i] == k * &monic[i])
}

/// Itemized outcome of checking one element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementReport {
    pub items: Vec<(String, Verdict)>,
}

impl ElementReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|(_, v)| v.passed())
    }
}

/// Check `u` against each constraint separately.
pub fn verify_element(
    emb: &Embedding,
    u: &Element,
    lin: &[LinearConstraint],
    quad: Option<&QuadraticConstraint>,
) -> Result<ElementReport> {
    emb.ambient().check_element(u)?;
    let mut items: Vec<(String, Verdict)> = lin
        .iter()
        .map(|l| (l.to_string(), l.verify(emb, u)))
        .collect();
    if let Some(q) = quad {
        items.push((q.to_string(), q.verify(emb.ambient(), u)?));
    }
    Ok(ElementReport { items })
}
