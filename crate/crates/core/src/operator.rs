//! Linear operators on an algebra and the operator identities they may satisfy.

use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::algebra::{hex_prefix, Algebra, Element, Embedding};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::verdict::{Verdict, WitnessPoint};

/// A linear map `A -> A`; column `j` of the matrix is the image of `e_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearOperator {
    matrix: Matrix,
}

impl LinearOperator {
    /// Wrap a square matrix acting on `algebra`.
    pub fn new(algebra: &Algebra, matrix: Matrix) -> Result<Self> {
        Self::with_dim(algebra.dim(), matrix)
    }

    pub fn with_dim(dim: usize, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: matrix.rows(),
            });
        }
        if matrix.cols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: matrix.cols(),
            });
        }
        Ok(LinearOperator { matrix })
    }

    /// Operator with the given images of the basis vectors.
    pub fn from_images(images: &[Element]) -> Result<Self> {
        let dim = images.len();
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let cols: Vec<Vec<Scalar>> = images
            .iter()
            .map(|e| {
                if e.dim() == dim {
                    Ok(e.coords().to_vec())
                } else {
                    Err(Error::DimensionMismatch {
                        expected: dim,
                        found: e.dim(),
                    })
                }
            })
            .collect::<Result<_>>()?;
        Ok(LinearOperator {
            matrix: Matrix::from_columns(dim, &cols),
        })
    }

    pub fn identity(dim: usize) -> Self {
        LinearOperator {
            matrix: Matrix::identity(dim),
        }
    }

    pub fn zero(dim: usize) -> Self {
        LinearOperator {
            matrix: Matrix::zeros(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &Element) -> Element {
        Element::new(self.matrix.mul_vec(x.coords()))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &LinearOperator) -> LinearOperator {
        LinearOperator {
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn add(&self, other: &LinearOperator) -> LinearOperator {
        LinearOperator {
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn scale(&self, c: &Scalar) -> LinearOperator {
        LinearOperator {
            matrix: self.matrix.scale(c),
        }
    }

    /// Conjugate by a change of basis: `p⁻¹ R p`, where the columns of `p`
    /// are the new basis written in the old one.
    pub fn conjugate(&self, p: &Matrix, p_inv: &Matrix) -> LinearOperator {
        LinearOperator {
            matrix: p_inv.mul(&self.matrix).mul(p),
        }
    }

    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.dim().to_le_bytes());
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                h.update(format!("{};", self.matrix[(i, j)]).as_bytes());
            }
        }
        hex_prefix(&h.finalize())
    }
}

/// `R(x) = u·x` restricted to a subalgebra; every image must stay in the span.
pub fn left_multiplication_operator(emb: &Embedding, u: &Element) -> Result<LinearOperator> {
    emb.ambient().check_element(u)?;
    let images = emb
        .basis()
        .iter()
        .enumerate()
        .map(|(index, b)| {
            emb.coordinates(&emb.ambient().mul(u, b))
                .map_err(|residual| Error::ImageEscapes { index, residual })
        })
        .collect::<Result<Vec<_>>>()?;
    LinearOperator::from_images(&images)
}

/// Named operator identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorProperty {
    /// `R(x)R(y) = R(xy)`
    Endomorphism,
    /// `R² = R`
    IdempotentOp,
    /// `R² = id`
    InvolutionOp,
    /// `R² = γR`
    ScaledIdempotentOp(Scalar),
    /// `R² = α·id`
    ScaledInvolutionOp(Scalar),
    /// `R(x)y + xR(y) = R(xy)`
    Derivation,
    /// `R(x)R(y) = R(R(x)y)`
    LeftAveraging,
    /// `R(x)R(y) = R(R(x)y + xR(y) + λxy)`
    RotaBaxter(Scalar),
    /// `R(x)R(y) = R(R(x)y + yR(x) + λxy)`, the operand order with `y` on the left.
    RotaBaxterSwapped(Scalar),
    /// `R(x)R(y) = R(R(x)y + xR(y) + λxy) + βxy`
    RotaBaxterWeighted { lambda: Scalar, beta: Scalar },
}

impl OperatorProperty {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Endomorphism => "endomorphism",
            Self::IdempotentOp => "idempotent_op",
            Self::InvolutionOp => "involution_op",
            Self::ScaledIdempotentOp(_) => "scaled_idempotent_op",
            Self::ScaledInvolutionOp(_) => "scaled_involution_op",
            Self::Derivation => "derivation",
            Self::LeftAveraging => "left_averaging",
            Self::RotaBaxter(_) => "rota_baxter",
            Self::RotaBaxterSwapped(_) => "rota_baxter_swapped",
            Self::RotaBaxterWeighted { .. } => "rota_baxter_weighted",
        }
    }

    fn params(&self) -> Vec<&Scalar> {
        match self {
            Self::ScaledIdempotentOp(a)
            | Self::ScaledInvolutionOp(a)
            | Self::RotaBaxter(a)
            | Self::RotaBaxterSwapped(a) => vec![a],
            Self::RotaBaxterWeighted { lambda, beta } => vec![lambda, beta],
            _ => vec![],
        }
    }
}

impl fmt::Display for OperatorProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = self.params();
        if params.is_empty() {
            f.write_str(self.name())
        } else {
            let ps: Vec<String> = params.iter().map(ToString::to_string).collect();
            write!(f, "{}({})", self.name(), ps.join(","))
        }
    }
}

/// Split `name(p1, p2, ..)` into the name and its rational arguments. A bare
/// `name` has no arguments.
pub(crate) fn parse_call(s: &str) -> Result<(String, Vec<Scalar>)> {
    let s = s.trim();
    match s.split_once('(') {
        Some((name, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::MalformedProperty(s.to_string()))?;
            let args = inner
                .split(',')
                .map(|p| p.trim().parse::<Scalar>())
                .collect::<Result<Vec<_>>>()?;
            Ok((name.trim().to_string(), args))
        }
        None => Ok((s.to_string(), Vec::new())),
    }
}

/// Parses `name` or `name(p1,p2)`, e.g. `rota_baxter(1)`,
/// `rota_baxter_weighted(1,2)`.
impl FromStr for OperatorProperty {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedProperty(s.to_string());
        let (name, params) = parse_call(s).map_err(|_| bad())?;
        let name = name.as_str();
        let mut ps = params.into_iter();
        let prop = match (name, ps.len()) {
            ("endomorphism", 0) => Self::Endomorphism,
            ("idempotent_op", 0) => Self::IdempotentOp,
            ("involution_op", 0) => Self::InvolutionOp,
            ("scaled_idempotent_op", 1) => Self::ScaledIdempotentOp(ps.next().unwrap()),
            ("scaled_involution_op", 1) => Self::ScaledInvolutionOp(ps.next().unwrap()),
            ("derivation", 0) => Self::Derivation,
            ("left_averaging", 0) => Self::LeftAveraging,
            ("rota_baxter", 1) => Self::RotaBaxter(ps.next().unwrap()),
            ("rota_baxter_swapped", 1) => Self::RotaBaxterSwapped(ps.next().unwrap()),
            ("rota_baxter_weighted", 2) => Self::RotaBaxterWeighted {
                lambda: ps.next().unwrap(),
                beta: ps.next().unwrap(),
            },
            _ => return Err(bad()),
        };
        Ok(prop)
    }
}

/// Both sides of `prop` at `(x, y)`. Single-argument properties ignore `y`.
pub fn operator_identity_sides(
    a: &Algebra,
    r: &LinearOperator,
    prop: &OperatorProperty,
    x: &Element,
    y: &Element,
) -> (Element, Element) {
    use OperatorProperty::*;
    let rr = |v: &Element| r.apply(v);
    let m = |p: &Element, q: &Element| a.mul(p, q);
    match prop {
        Endomorphism => (m(&rr(x), &rr(y)), rr(&m(x, y))),
        Derivation => (&m(&rr(x), y) + &m(x, &rr(y)), rr(&m(x, y))),
        LeftAveraging => (m(&rr(x), &rr(y)), rr(&m(&rr(x), y))),
        RotaBaxter(lambda) => {
            let inner = &(&m(&rr(x), y) + &m(x, &rr(y))) + &m(x, y).scale(lambda);
            (m(&rr(x), &rr(y)), rr(&inner))
        }
        RotaBaxterSwapped(lambda) => {
            let inner = &(&m(&rr(x), y) + &m(y, &rr(x))) + &m(x, y).scale(lambda);
            (m(&rr(x), &rr(y)), rr(&inner))
        }
        RotaBaxterWeighted { lambda, beta } => {
            let xy = m(x, y);
            let inner = &(&m(&rr(x), y) + &m(x, &rr(y))) + &xy.scale(lambda);
            (m(&rr(x), &rr(y)), &rr(&inner) + &xy.scale(beta))
        }
        IdempotentOp => (rr(&rr(x)), rr(x)),
        InvolutionOp => (rr(&rr(x)), x.clone()),
        ScaledIdempotentOp(g) => (rr(&rr(x)), rr(x).scale(g)),
        ScaledInvolutionOp(alpha) => (rr(&rr(x)), x.scale(alpha)),
    }
}

fn is_unary(prop: &OperatorProperty) -> bool {
    use OperatorProperty::*;
    matches!(
        prop,
        IdempotentOp | InvolutionOp | ScaledIdempotentOp(_) | ScaledInvolutionOp(_)
    )
}

/// Exact check on basis vectors (pairs for the bilinear identities, single
/// vectors for the `R²` conditions). Every identity here is linear in each
/// argument, so basis checking is complete.
pub fn check_operator_property(
    a: &Algebra,
    r: &LinearOperator,
    prop: &OperatorProperty,
) -> Result<Verdict> {
    if r.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: r.dim(),
        });
    }
    let n = a.dim();
    let e = |i| Element::basis(n, i);
    if is_unary(prop) {
        for i in 0..n {
            let (lhs, rhs) = operator_identity_sides(a, r, prop, &e(i), &e(i));
            if lhs != rhs {
                return Ok(Verdict::fail(WitnessPoint::Basis(vec![i]), lhs, rhs));
            }
        }
        return Ok(Verdict::Pass);
    }
    for i in 0..n {
        for j in 0..n {
            let (lhs, rhs) = operator_identity_sides(a, r, prop, &e(i), &e(j));
            if lhs != rhs {
                return Ok(Verdict::fail(WitnessPoint::Basis(vec![i, j]), lhs, rhs));
            }
        }
    }
    Ok(Verdict::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::induce_subalgebra;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn m3(rows: [[i64; 3]; 3]) -> Element {
        Element::from_ints(&rows.concat())
    }

    fn f1_embedding() -> (Algebra, Embedding) {
        let basis = vec![
            m3([[1, 1, 0], [0, 0, 0], [0, 0, 0]]),
            m3([[0, 0, 0], [1, 1, 0], [0, 0, 0]]),
            m3([[0, 0, 0], [0, 0, 0], [1, 1, 0]]),
        ];
        induce_subalgebra(&Algebra::matrix_algebra(3).unwrap(), basis).unwrap()
    }

    /// Oracle: columns computed by hand from u·(E11+E12) etc. at b = 2.
    /// u e1 = first column of u times (1,1,0) row = (1,0,0) -> e1
    /// u e2 = second column (2,-1,1) -> 2e1 - e2 + e3
    /// u e3 = third column (2,-2,2) -> 2e1 - 2e2 + 2e3
    fn f1b_operator_b2() -> LinearOperator {
        LinearOperator::from_images(&[
            Element::from_ints(&[1, 0, 0]),
            Element::from_ints(&[2, -1, 1]),
            Element::from_ints(&[2, -2, 2]),
        ])
        .unwrap()
    }

    #[test]
    fn make_operator_checks_shape() {
        let a = Algebra::matrix_algebra(2).unwrap();
        assert!(LinearOperator::new(&a, Matrix::identity(4)).is_ok());
        assert!(matches!(
            LinearOperator::new(&a, Matrix::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(LinearOperator::new(&a, Matrix::zeros(4, 3)).is_err());
    }

    #[test]
    fn identity_operator_properties() {
        let a = Algebra::matrix_algebra(2).unwrap();
        let id = LinearOperator::identity(4);
        for p in [
            OperatorProperty::Endomorphism,
            OperatorProperty::IdempotentOp,
            OperatorProperty::InvolutionOp,
        ] {
            assert!(
                check_operator_property(&a, &id, &p).unwrap().passed(),
                "{p}"
            );
        }
        assert!(
            !check_operator_property(&a, &id, &OperatorProperty::Derivation)
                .unwrap()
                .passed()
        );
    }

    #[test]
    fn zero_operator_is_derivation_of_null_algebra() {
        let a = Algebra::null(3).unwrap();
        let z = LinearOperator::zero(3);
        assert!(
            check_operator_property(&a, &z, &OperatorProperty::Derivation)
                .unwrap()
                .passed()
        );
    }

    #[test]
    fn left_multiplication_matches_hand_computed_operator() {
        let (_, emb) = f1_embedding();
        let u = m3([[1, 2, 2], [0, -1, -2], [0, 1, 2]]);
        let r = left_multiplication_operator(&emb, &u).unwrap();
        assert_eq!(r, f1b_operator_b2());
    }

    #[test]
    fn f1b_operator_is_idempotent_endomorphism() {
        let (a, _) = f1_embedding();
        let r = f1b_operator_b2();
        assert!(
            check_operator_property(&a, &r, &OperatorProperty::Endomorphism)
                .unwrap()
                .passed()
        );
        assert!(
            check_operator_property(&a, &r, &OperatorProperty::IdempotentOp)
                .unwrap()
                .passed()
        );
    }

    #[test]
    fn permutation_u_swaps_rows() {
        // span of [[x,y,y],[w,k,k],[m,n,n]]
        let m3e = |i: usize, j: usize| Element::basis(9, 3 * i + j);
        let mut basis = Vec::new();
        for i in 0..3 {
            basis.push(m3e(i, 0));
            basis.push(&m3e(i, 1) + &m3e(i, 2));
        }
        let (a, emb) = induce_subalgebra(&Algebra::matrix_algebra(3).unwrap(), basis).unwrap();
        let u = m3([[1, 0, 0], [0, 0, 1], [0, 1, 0]]);
        let r = left_multiplication_operator(&emb, &u).unwrap();
        // rows 2 and 3 swap: basis pairs (2,3) <-> (4,5)
        let expected = LinearOperator::from_images(&[
            Element::basis(6, 0),
            Element::basis(6, 1),
            Element::basis(6, 4),
            Element::basis(6, 5),
            Element::basis(6, 2),
            Element::basis(6, 3),
        ])
        .unwrap();
        assert_eq!(r, expected);
        assert!(
            check_operator_property(&a, &r, &OperatorProperty::InvolutionOp)
                .unwrap()
                .passed()
        );
        assert!(
            check_operator_property(&a, &r, &OperatorProperty::Endomorphism)
                .unwrap()
                .passed()
        );
    }

    #[test]
    fn escaping_image_is_reported() {
        // The F1 span is a left ideal of M3, so no u can escape it; E13 is accepted.
        let (_, emb) = f1_embedding();
        assert!(left_multiplication_operator(&emb, &Element::basis(9, 2)).is_ok());
        // span{E11} is not a left ideal: E21 * E11 = E21.
        let m2 = Algebra::matrix_algebra(2).unwrap();
        let (_, emb2) = induce_subalgebra(&m2, vec![Element::from_ints(&[1, 0, 0, 0])]).unwrap();
        let e21 = Element::from_ints(&[0, 0, 1, 0]);
        match left_multiplication_operator(&emb2, &e21) {
            Err(Error::ImageEscapes { index: 0, residual }) => {
                assert_eq!(residual, Element::from_ints(&[0, 0, 1, 0]))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn weight_zero_rota_baxter_from_square_zero_u() {
        // A = span{E12, E22}, u = [[1,-1],[1,-1]]
        let m2 = Algebra::matrix_algebra(2).unwrap();
        let (a, emb) = induce_subalgebra(
            &m2,
            vec![
                Element::from_ints(&[0, 1, 0, 0]),
                Element::from_ints(&[0, 0, 0, 1]),
            ],
        )
        .unwrap();
        let u = Element::from_ints(&[1, -1, 1, -1]);
        let r = left_multiplication_operator(&emb, &u).unwrap();
        let rb0 = OperatorProperty::RotaBaxter(s(0));
        assert!(check_operator_property(&a, &r, &rb0).unwrap().passed());

        // R + id breaks it; the witness must reproduce.
        let bad = r.add(&LinearOperator::identity(2));
        let v = check_operator_property(&a, &bad, &rb0).unwrap();
        let w = v.witness().expect("perturbed operator fails");
        let WitnessPoint::Basis(ix) = &w.at else {
            panic!()
        };
        let (lhs, rhs) = operator_identity_sides(
            &a,
            &bad,
            &rb0,
            &Element::basis(2, ix[0]),
            &Element::basis(2, ix[1]),
        );
        assert_eq!((&lhs, &rhs), (&w.lhs, &w.rhs));
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn property_parsing() {
        assert_eq!(
            "endomorphism".parse::<OperatorProperty>().unwrap(),
            OperatorProperty::Endomorphism
        );
        assert_eq!(
            "rota_baxter_weighted(1, -2/3)"
                .parse::<OperatorProperty>()
                .unwrap(),
            OperatorProperty::RotaBaxterWeighted {
                lambda: s(1),
                beta: Scalar::frac(-2, 3)
            }
        );
        assert_eq!(
            "rota_baxter(0)"
                .parse::<OperatorProperty>()
                .unwrap()
                .to_string(),
            "rota_baxter(0)"
        );
        for bad in [
            "rota_baxter",
            "endomorphism(1)",
            "rota_baxter(1",
            "nope",
            "rota_baxter_weighted(1)",
        ] {
            assert!(bad.parse::<OperatorProperty>().is_err(), "{bad}");
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = Algebra::matrix_algebra(2).unwrap();
        let r = LinearOperator::identity(3);
        assert!(check_operator_property(&a, &r, &OperatorProperty::Endomorphism).is_err());
    }
}
