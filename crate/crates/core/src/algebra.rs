//! Finite-dimensional algebras given by structure constants, their elements,
//! and subalgebras spanned inside an ambient algebra.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SpanProjector};
use crate::scalar::{common_denominator, Scalar};
use crate::verdict::{Verdict, WitnessPoint};

/// Coordinate vector relative to an algebra's ordered basis.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(Vec<Scalar>);

impl Element {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Element(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Element(coords.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Element(vec![Scalar::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.0[i] = Scalar::one();
        e
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element(self.0.iter().map(|x| x * c).collect())
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Scalar, other: &Element) {
        if c.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += &(c * b);
            }
        }
    }
}

impl std::ops::Index<usize> for Element {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "element dimension");
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "element dimension");
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Records how a derived algebra was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub construction: String,
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operator: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<(String, Scalar)>,
}

/// A bilinear product on `Q^dim`, `e_i * e_j = sum_k sc[i][j][k] e_k`.
/// No axioms are assumed.
#[derive(Clone)]
pub struct Algebra {
    dim: usize,
    sc: Vec<Scalar>,
    labels: Option<Vec<String>>,
    provenance: Option<Provenance>,
    associative: OnceLock<Verdict>,
    commutative: OnceLock<Verdict>,
    scaled: OnceLock<Scaled>,
}

/// Integer vector `v` with `values = v / den`; `small` when every entry fits
/// in an `i64`.
#[derive(Clone, Debug)]
struct Scaled {
    den: BigInt,
    big: Vec<BigInt>,
    small: Option<Vec<i64>>,
}

impl Scaled {
    fn new(values: &[Scalar]) -> Self {
        let den = common_denominator(values);
        let big: Vec<BigInt> = values
            .iter()
            .map(|v| v.numer() * (&den / v.denom()))
            .collect();
        let small = big.iter().map(ToPrimitive::to_i64).collect();
        Scaled { den, big, small }
    }
}

/// `sum_{i,j,k} x_i y_j c_ijk e_k` over `i128`, `None` on overflow.
fn mul_small(n: usize, x: &[i64], y: &[i64], c: &[i64]) -> Option<Vec<i128>> {
    let mut out = vec![0i128; n];
    for (i, &xi) in x.iter().enumerate().filter(|(_, v)| **v != 0) {
        for (j, &yj) in y.iter().enumerate().filter(|(_, v)| **v != 0) {
            let w = i128::from(xi).checked_mul(i128::from(yj))?;
            let row = &c[(i * n + j) * n..(i * n + j + 1) * n];
            for (o, &ck) in out.iter_mut().zip(row) {
                if ck != 0 {
                    *o = o.checked_add(w.checked_mul(i128::from(ck))?)?;
                }
            }
        }
    }
    Some(out)
}

fn mul_big(n: usize, x: &[BigInt], y: &[BigInt], c: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n];
    for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            let w = xi * yj;
            let row = &c[(i * n + j) * n..(i * n + j + 1) * n];
            for (o, ck) in out.iter_mut().zip(row) {
                if !ck.is_zero() {
                    *o += &w * ck;
                }
            }
        }
    }
    out
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.sc == other.sc
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("dim", &self.dim)
            .field("entries", &self.entries())
            .finish()
    }
}

impl Algebra {
    /// Build from sparse entries `(i, j, k, c)`; unlisted constants are zero.
    pub fn new(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut sc = vec![Scalar::zero(); dim * dim * dim];
        let mut seen = HashSet::new();
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::IndexOutOfRange { i, j, k, dim });
            }
            if !seen.insert((i, j, k)) {
                return Err(Error::DuplicateEntry { i, j, k });
            }
            sc[(i * dim + j) * dim + k] = c;
        }
        Ok(Self::from_dense(dim, sc))
    }

    pub(crate) fn from_dense(dim: usize, sc: Vec<Scalar>) -> Self {
        debug_assert_eq!(sc.len(), dim * dim * dim);
        Algebra {
            dim,
            sc,
            labels: None,
            provenance: None,
            associative: OnceLock::new(),
            commutative: OnceLock::new(),
            scaled: OnceLock::new(),
        }
    }

    /// Build from the products of basis pairs.
    pub fn from_products(dim: usize, mut product: impl FnMut(usize, usize) -> Element) -> Self {
        let mut sc = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let p = product(i, j);
                assert_eq!(p.dim(), dim, "product dimension");
                sc.extend(p.into_coords());
            }
        }
        Self::from_dense(dim, sc)
    }

    /// The algebra with identically zero product.
    pub fn null(dim: usize) -> Result<Self> {
        Self::new(dim, [])
    }

    /// Full matrix algebra `M_n` with basis `E_ij` in row-major order.
    pub fn matrix_algebra(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let dim = n * n;
        let mut entries = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    // E_ij E_jl = E_il
                    entries.push((i * n + j, j * n + l, i * n + l, Scalar::one()));
                }
            }
        }
        let labels = (0..dim)
            .map(|a| format!("E{}{}", a / n + 1, a % n + 1))
            .collect();
        Ok(Self::new(dim, entries)?.with_labels(labels))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim, "label count");
        self.labels = Some(labels);
        self
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.sc[(i * self.dim + j) * self.dim + k]
    }

    /// Dense structure constants, index `(i * dim + j) * dim + k`.
    pub fn constants(&self) -> &[Scalar] {
        &self.sc
    }

    /// Nonzero structure constants in index order.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim;
        self.sc
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, c)| (idx / (n * n), (idx / n) % n, idx % n, c.clone()))
            .collect()
    }

    /// `e_i * e_j`
    pub fn basis_product(&self, i: usize, j: usize) -> Element {
        let start = (i * self.dim + j) * self.dim;
        Element::new(self.sc[start..start + self.dim].to_vec())
    }

    pub fn check_element(&self, x: &Element) -> Result<()> {
        if x.dim() == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            })
        }
    }

    /// Product by bilinear extension of the structure constants.
    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.mul(x, y))
    }

    /// [`Algebra::multiply`] for arguments already known to fit.
    ///
    /// Works over integers after clearing denominators, so only the final
    /// division normalizes.
    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let n = self.dim;
        debug_assert!(x.dim() == n && y.dim() == n);
        let c = self.scaled.get_or_init(|| Scaled::new(&self.sc));
        let (xs, ys) = (Scaled::new(x.coords()), Scaled::new(y.coords()));
        let den = &(&xs.den * &ys.den) * &c.den;
        let fast = match (&xs.small, &ys.small, &c.small) {
            (Some(xv), Some(yv), Some(cv)) => mul_small(n, xv, yv, cv),
            _ => None,
        };
        let numers = match fast {
            Some(v) => v.into_iter().map(BigInt::from).collect(),
            None => mul_big(n, &xs.big, &ys.big, &c.big),
        };
        Element::new(
            numers
                .into_iter()
                .map(|num| Scalar::from_big(num, den.clone()).expect("nonzero denominator"))
                .collect(),
        )
    }

    /// Matrix of `y -> x * y` (column `j` is `x * e_j`).
    pub fn left_multiplication(&self, x: &Element) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.mul(x, &Element::basis(self.dim, j)).into_coords())
            .collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// Matrix of `y -> y * x`.
    pub fn right_multiplication(&self, x: &Element) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.mul(&Element::basis(self.dim, j), x).into_coords())
            .collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// Exhaustive check of `(e_i e_j) e_k = e_i (e_j e_k)`; the first failing
    /// triple in lexicographic order is the witness. Cached.
    pub fn is_associative(&self) -> Verdict {
        self.associative
            .get_or_init(|| {
                let n = self.dim;
                let products: Vec<Element> = (0..n * n)
                    .map(|ij| self.basis_product(ij / n, ij % n))
                    .collect();
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            let lhs = self.mul(&products[i * n + j], &Element::basis(n, k));
                            let rhs = self.mul(&Element::basis(n, i), &products[j * n + k]);
                            if lhs != rhs {
                                return Verdict::fail(WitnessPoint::Basis(vec![i, j, k]), lhs, rhs);
                            }
                        }
                    }
                }
                Verdict::Pass
            })
            .clone()
    }

    /// Check of `e_i e_j = e_j e_i` over basis pairs. Cached.
    pub fn is_commutative(&self) -> Verdict {
        self.commutative
            .get_or_init(|| {
                for i in 0..self.dim {
                    for j in i + 1..self.dim {
                        let lhs = self.basis_product(i, j);
                        let rhs = self.basis_product(j, i);
                        if lhs != rhs {
                            return Verdict::fail(WitnessPoint::Basis(vec![i, j]), lhs, rhs);
                        }
                    }
                }
                Verdict::Pass
            })
            .clone()
    }

    /// The two-sided identity element, if one exists.
    pub fn unit(&self) -> Option<Element> {
        let n = self.dim;
        // u e_j = e_j and e_j u = e_j for all j, linear in u.
        let mut system = Matrix::zeros(2 * n * n, n);
        let mut rhs = vec![Scalar::zero(); 2 * n * n];
        for j in 0..n {
            for k in 0..n {
                for a in 0..n {
                    system[(j * n + k, a)] = self.constant(a, j, k).clone();
                    system[(n * n + j * n + k, a)] = self.constant(j, a, k).clone();
                }
                if j == k {
                    rhs[j * n + k] = Scalar::one();
                    rhs[n * n + j * n + k] = Scalar::one();
                }
            }
        }
        system.solve(&rhs).map(|(u, _)| Element::new(u))
    }

    /// Short content hash of the structure constants and dimension.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.dim.to_le_bytes());
        for (i, j, k, c) in self.entries() {
            h.update(format!("{i},{j},{k},{c};").as_bytes());
        }
        hex_prefix(&h.finalize())
    }
}

pub(crate) fn hex_prefix(bytes: &[u8]) -> String {
    bytes[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// A subalgebra presented by a basis of ambient elements.
#[derive(Clone, Debug)]
pub struct Embedding {
    ambient: Algebra,
    basis: Vec<Element>,
    projector: SpanProjector,
}

impl Embedding {
    /// Checks independence only; closure is checked by [`induce_subalgebra`].
    pub fn new(ambient: Algebra, basis: Vec<Element>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::EmptyBasis);
        }
        for b in &basis {
            ambient.check_element(b)?;
        }
        let cols: Vec<Vec<Scalar>> = basis.iter().map(|b| b.coords().to_vec()).collect();
        let projector =
            SpanProjector::new(Matrix::from_columns(ambient.dim(), &cols)).map_err(|rank| {
                Error::DependentBasis {
                    rank,
                    len: basis.len(),
                }
            })?;
        Ok(Embedding {
            ambient,
            basis,
            projector,
        })
    }

    pub fn ambient(&self) -> &Algebra {
        &self.ambient
    }

    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Ambient element with the given subalgebra coordinates.
    pub fn to_ambient(&self, x: &Element) -> Element {
        Element::new(self.projector.combine(x.coords()))
    }

    /// Subalgebra coordinates of an ambient element, or its residual off the span.
    pub fn coordinates(&self, v: &Element) -> std::result::Result<Element, Element> {
        self.projector
            .coordinates(v.coords())
            .map(Element::new)
            .map_err(Element::new)
    }

    /// Rows of linear functionals vanishing exactly on the span.
    pub fn annihilator(&self) -> &Matrix {
        self.projector.annihilator()
    }
}

/// Structure constants of the span of `basis` in that basis.
pub fn induce_subalgebra(ambient: &Algebra, basis: Vec<Element>) -> Result<(Algebra, Embedding)> {
    let emb = Embedding::new(ambient.clone(), basis)?;
    let m = emb.dim();
    let mut sc = Vec::with_capacity(m * m * m);
    for i in 0..m {
        for j in 0..m {
            let p = ambient.mul(&emb.basis[i], &emb.basis[j]);
            match emb.coordinates(&p) {
                Ok(c) => sc.extend(c.into_coords()),
                Err(residual) => return Err(Error::NotClosed { i, j, residual }),
            }
        }
    }
    Ok((Algebra::from_dense(m, sc), emb))
}
