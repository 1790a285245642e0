//! Derived products built from an algebra and, optionally, a linear operator.
//! Each result is materialized as a new structure-constant tensor.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{Algebra, Element, Provenance};
use crate::error::{Error, Result};
use crate::operator::LinearOperator;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// `[x,y] = xy - yx`
    Commutator,
    /// `[x,y] = x·R(y) - y·R(x)`
    LieEndo,
    /// `[x,y] = R(x)·y - R(y)·x`
    LieEndoAlt,
    /// `x*y = xy + yx`
    JordanPlus,
    /// `x∘y = R(x)·y`
    JordanEndoLeft,
    /// `x∘y = x·R(y)`
    JordanEndoRight,
    /// `x∘y = R(x)·R(y)`
    JordanEndoBoth,
    /// `[a,b] = R(a)·b - b·R(a)`
    LeibnizComm,
    /// `[x,y] = R(x)·y - R(y)·R(x)`
    LeibnizEndo,
    /// `x∘y = R(x)·R(y) - y·R(x)`
    PrelieEndo,
    /// `x∘y = R(x)·y - R(y)·R(x)`
    PrelieEndoAlt,
    /// `x∘y = R(x)·y`
    PrelieDiff,
    /// `x*y = x·D(y) + a·xy`
    NovikovAffine(Scalar),
    /// `x*y = R(x)·y - y·R(x) - xy`
    PrelieRb1,
    /// `x∘y = R(xy)`
    FlexibleAvg,
}

impl Construction {
    pub const NAMES: [&'static str; 15] = [
        "commutator",
        "lie_endo",
        "lie_endo_alt",
        "jordan_plus",
        "jordan_endo_left",
        "jordan_endo_right",
        "jordan_endo_both",
        "leibniz_comm",
        "leibniz_endo",
        "prelie_endo",
        "prelie_endo_alt",
        "prelie_diff",
        "novikov_affine",
        "prelie_rb1",
        "flexible_avg",
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Commutator => "commutator",
            Self::LieEndo => "lie_endo",
            Self::LieEndoAlt => "lie_endo_alt",
            Self::JordanPlus => "jordan_plus",
            Self::JordanEndoLeft => "jordan_endo_left",
            Self::JordanEndoRight => "jordan_endo_right",
            Self::JordanEndoBoth => "jordan_endo_both",
            Self::LeibnizComm => "leibniz_comm",
            Self::LeibnizEndo => "leibniz_endo",
            Self::PrelieEndo => "prelie_endo",
            Self::PrelieEndoAlt => "prelie_endo_alt",
            Self::PrelieDiff => "prelie_diff",
            Self::NovikovAffine(_) => "novikov_affine",
            Self::PrelieRb1 => "prelie_rb1",
            Self::FlexibleAvg => "flexible_avg",
        }
    }

    /// Build from a catalog name; `novikov_affine` needs the parameter `a`.
    pub fn from_name(name: &str, a: Option<Scalar>) -> Result<Self> {
        Ok(match name {
            "commutator" => Self::Commutator,
            "lie_endo" => Self::LieEndo,
            "lie_endo_alt" => Self::LieEndoAlt,
            "jordan_plus" => Self::JordanPlus,
            "jordan_endo_left" => Self::JordanEndoLeft,
            "jordan_endo_right" => Self::JordanEndoRight,
            "jordan_endo_both" => Self::JordanEndoBoth,
            "leibniz_comm" => Self::LeibnizComm,
            "leibniz_endo" => Self::LeibnizEndo,
            "prelie_endo" => Self::PrelieEndo,
            "prelie_endo_alt" => Self::PrelieEndoAlt,
            "prelie_diff" => Self::PrelieDiff,
            "novikov_affine" => Self::NovikovAffine(a.ok_or(Error::MissingParameter {
                name: "novikov_affine",
                param: "a",
            })?),
            "prelie_rb1" => Self::PrelieRb1,
            "flexible_avg" => Self::FlexibleAvg,
            other => return Err(Error::UnknownConstruction(other.to_string())),
        })
    }

    pub fn needs_operator(&self) -> bool {
        !matches!(self, Self::Commutator | Self::JordanPlus)
    }

    fn params(&self) -> Vec<(String, Scalar)> {
        match self {
            Self::NovikovAffine(a) => vec![("a".to_string(), a.clone())],
            _ => vec![],
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NovikovAffine(a) => write!(f, "novikov_affine(a={a})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Accepts `name` or `novikov_affine(a=p/q)`.
impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once('(') {
            None => Self::from_name(s, None),
            Some((name, rest)) => {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::UnknownConstruction(s.to_string()))?;
                let value = inner.trim().strip_prefix("a=").unwrap_or(inner);
                Self::from_name(name.trim(), Some(value.parse()?))
            }
        }
    }
}

/// The product of `construction` on `a`, evaluated on basis pairs.
pub fn derive(
    a: &Algebra,
    r: Option<&LinearOperator>,
    construction: &Construction,
) -> Result<Algebra> {
    let n = a.dim();
    let r = match (r, construction.needs_operator()) {
        (Some(r), _) => {
            if r.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: r.dim(),
                });
            }
            Some(r)
        }
        (None, true) => return Err(Error::MissingOperator(construction.name())),
        (None, false) => None,
    };
    let images: Vec<Element> = match r {
        Some(r) => (0..n).map(|i| r.apply(&Element::basis(n, i))).collect(),
        None => Vec::new(),
    };
    let rr = |v: &Element| r.expect("operator present").apply(v);
    let e = |i: usize| Element::basis(n, i);

    let derived = Algebra::from_products(n, |i, j| {
        let (x, y) = (e(i), e(j));
        let m = |p: &Element, q: &Element| a.mul(p, q);
        match construction {
            Construction::Commutator => &a.basis_product(i, j) - &a.basis_product(j, i),
            Construction::JordanPlus => &a.basis_product(i, j) + &a.basis_product(j, i),
            Construction::LieEndo => &m(&x, &images[j]) - &m(&y, &images[i]),
            Construction::LieEndoAlt => &m(&images[i], &y) - &m(&images[j], &x),
            Construction::JordanEndoLeft => m(&images[i], &y),
            Construction::JordanEndoRight => m(&x, &images[j]),
            Construction::JordanEndoBoth => m(&images[i], &images[j]),
            Construction::LeibnizComm => &m(&images[i], &y) - &m(&y, &images[i]),
            Construction::LeibnizEndo | Construction::PrelieEndoAlt => {
                &m(&images[i], &y) - &m(&images[j], &images[i])
            }
            Construction::PrelieEndo => &m(&images[i], &images[j]) - &m(&y, &images[i]),
            Construction::PrelieDiff => m(&images[i], &y),
            Construction::NovikovAffine(coef) => {
                let mut p = m(&x, &images[j]);
                p.add_scaled(coef, &a.basis_product(i, j));
                p
            }
            Construction::PrelieRb1 => {
                &(&m(&images[i], &y) - &m(&y, &images[i])) - &a.basis_product(i, j)
            }
            Construction::FlexibleAvg => rr(&a.basis_product(i, j)),
        }
    });
    let provenance = Provenance {
        construction: construction.name().to_string(),
        source: a.content_hash(),
        operator: r.map(LinearOperator::content_hash),
        params: construction.params(),
    };
    Ok(derived.with_provenance(provenance))
}

/// Matrices of size `rows × cols` under the entrywise product
/// `E_ij ∘ E_kl = δ_ik δ_jl E_ij`, basis in row-major order.
pub fn hadamard_algebra(rows: usize, cols: usize) -> Result<Algebra> {
    if rows == 0 || cols == 0 {
        return Err(Error::ZeroDimension);
    }
    let dim = rows * cols;
    let labels = (0..dim)
        .map(|a| format!("E{}{}", a / cols + 1, a % cols + 1))
        .collect();
    Ok(Algebra::new(dim, (0..dim).map(|a| (a, a, a, Scalar::one())))?.with_labels(labels))
}
