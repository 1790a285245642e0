//! Random instances of operator hypotheses.
//!
//! Random structure constants almost never admit an endomorphism, derivation
//! or averaging operator beyond the trivial ones, so instances are assembled
//! from structural recipes (direct products, truncated polynomial rings,
//! left ideals of matrix algebras) and then hidden behind a random change of
//! basis, which leaves every operator identity invariant.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::algebra::{induce_subalgebra, Algebra, Element, Embedding};
use crate::identity::random_scalar;
use crate::linalg::Matrix;
use crate::operator::{left_multiplication_operator, LinearOperator};
use crate::scalar::Scalar;

/// A random algebra with an operator. `embedding` and `u` are set when the
/// operator is `x ↦ u·x` on a subalgebra of a matrix algebra.
#[derive(Clone, Debug)]
pub struct RandomInstance {
    pub algebra: Algebra,
    pub operator: LinearOperator,
    pub embedding: Option<Embedding>,
    pub u: Option<Element>,
    /// Human-readable description of how the instance was built.
    pub recipe: String,
}

impl RandomInstance {
    fn plain(algebra: Algebra, operator: LinearOperator, recipe: String) -> Self {
        RandomInstance {
            algebra,
            operator,
            embedding: None,
            u: None,
            recipe,
        }
    }
}

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn nonzero_scalar(rng: &mut impl Rng) -> Scalar {
    loop {
        let c = random_scalar(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// An invertible `n×n` matrix with small integer entries, and its inverse.
pub fn random_invertible(n: usize, rng: &mut impl Rng) -> (Matrix, Matrix) {
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| s(rng.random_range(-2..=2))).collect())
            .collect();
        let p = Matrix::from_rows(rows);
        if let Some(inv) = p.inverse() {
            return (p, inv);
        }
    }
}

/// The same algebra in the basis given by the columns of `p`.
pub fn change_basis(a: &Algebra, p: &Matrix) -> Algebra {
    let basis = (0..p.cols()).map(|j| Element::new(p.column(j))).collect();
    induce_subalgebra(a, basis)
        .expect("columns of an invertible matrix span the algebra")
        .0
}

/// Apply a random change of basis to the algebra and conjugate the operator.
pub fn hide(inst: RandomInstance, rng: &mut impl Rng) -> RandomInstance {
    let (p, p_inv) = random_invertible(inst.algebra.dim(), rng);
    RandomInstance {
        algebra: change_basis(&inst.algebra, &p),
        operator: inst.operator.conjugate(&p, &p_inv),
        embedding: None,
        u: None,
        recipe: inst.recipe + ", random basis",
    }
}

/// Block-diagonal structure constants.
pub fn direct_product(parts: &[&Algebra]) -> Algebra {
    let mut entries = Vec::new();
    let mut offset = 0;
    for part in parts {
        entries.extend(
            part.entries()
                .into_iter()
                .map(|(i, j, k, c)| (i + offset, j + offset, k + offset, c)),
        );
        offset += part.dim();
    }
    Algebra::new(offset, entries).expect("indices are in range")
}

/// `k[t]/(t^m)` on the basis `1, t, .., t^{m-1}`.
pub fn truncated_polynomial(m: usize) -> Algebra {
    let entries = (0..m).flat_map(|i| {
        (0..m)
            .filter(move |j| i + j < m)
            .map(move |j| (i, j, i + j, s(1)))
    });
    Algebra::new(m, entries).expect("indices are in range")
}

/// `k ⊕ V` with unit `e_0` and `V·V = 0`, `dim V = v`.
pub fn trivial_extension(v: usize) -> Algebra {
    let n = v + 1;
    let entries = (0..n)
        .flat_map(|i| [(0, i, i, s(1)), (i, 0, i, s(1))])
        .collect::<Vec<_>>();
    // (0,0,0) appears twice with the same value
    Algebra::new(n, entries.into_iter().skip(1)).expect("indices are in range")
}

/// Upper triangular `2×2` matrices on `E11, E12, E22`.
pub fn upper_triangular_2() -> (Algebra, Embedding) {
    let m2 = Algebra::matrix_algebra(2).expect("positive size");
    induce_subalgebra(
        &m2,
        vec![
            Element::basis(4, 0),
            Element::basis(4, 1),
            Element::basis(4, 3),
        ],
    )
    .expect("closed under products")
}

fn random_structure(dim: usize, symmetric: Option<bool>, rng: &mut impl Rng) -> Algebra {
    let mut entries = Vec::new();
    for i in 0..dim {
        for j in i..dim {
            for k in 0..dim {
                let c = random_scalar(rng);
                match symmetric {
                    Some(true) => {
                        entries.push((i, j, k, c.clone()));
                        if i != j {
                            entries.push((j, i, k, c));
                        }
                    }
                    Some(false) if i != j => {
                        entries.push((j, i, k, -&c));
                        entries.push((i, j, k, c));
                    }
                    Some(false) => {}
                    None => {
                        entries.push((i, j, k, c));
                        if i != j {
                            entries.push((j, i, k, random_scalar(rng)));
                        }
                    }
                }
            }
        }
    }
    Algebra::new(dim, entries).expect("indices are in range")
}

/// Random commutative structure constants (commutative algebras are flexible).
pub fn random_commutative(dim: usize, rng: &mut impl Rng) -> Algebra {
    random_structure(dim, Some(true), rng)
}

/// Random anticommutative structure constants (also flexible).
pub fn random_anticommutative(dim: usize, rng: &mut impl Rng) -> Algebra {
    random_structure(dim, Some(false), rng)
}

/// Random structure constants with no symmetry.
pub fn random_algebra(dim: usize, rng: &mut impl Rng) -> Algebra {
    random_structure(dim, None, rng)
}

/// A small associative algebra with an automorphism (as a matrix whose
/// columns are images of basis vectors).
struct Piece {
    algebra: Algebra,
    auto: Matrix,
    name: String,
}

fn piece(max_dim: usize, commutative: bool, rng: &mut impl Rng) -> Piece {
    let mut kinds = vec!["k", "k2", "dual", "cubic"];
    if !commutative {
        kinds.push("t2");
        kinds.push("t2");
    }
    let kinds: Vec<_> = kinds
        .into_iter()
        .filter(|k| match *k {
            "k" => true,
            "k2" | "dual" => max_dim >= 2,
            _ => max_dim >= 3,
        })
        .collect();
    let kind = *kinds.choose(rng).expect("k always fits");
    let (algebra, auto) = match kind {
        "k" => (truncated_polynomial(1), Matrix::identity(1)),
        "k2" => {
            let k = truncated_polynomial(1);
            let swap = Matrix::from_rows(vec![vec![s(0), s(1)], vec![s(1), s(0)]]);
            let auto = if rng.random_bool(0.5) {
                swap
            } else {
                Matrix::identity(2)
            };
            (direct_product(&[&k, &k]), auto)
        }
        "dual" => {
            // t ↦ c t
            let c = nonzero_scalar(rng);
            (
                truncated_polynomial(2),
                Matrix::from_rows(vec![vec![s(1), s(0)], vec![s(0), c]]),
            )
        }
        "cubic" => {
            // t ↦ c t + d t², so t² ↦ c² t²
            let (c, d) = (nonzero_scalar(rng), random_scalar(rng));
            let c2 = &c * &c;
            let auto = Matrix::from_rows(vec![
                vec![s(1), s(0), s(0)],
                vec![s(0), c, s(0)],
                vec![s(0), d, c2],
            ]);
            (truncated_polynomial(3), auto)
        }
        _ => {
            // conjugation by an invertible upper triangular g
            let (t2, emb) = upper_triangular_2();
            let m2 = emb.ambient();
            let (x, y) = (random_scalar(rng), nonzero_scalar(rng));
            let g = Element::new(vec![s(1), x.clone(), s(0), y.clone()]);
            let yi = y.recip().expect("nonzero");
            let g_inv = Element::new(vec![s(1), -&(&x * &yi), s(0), yi]);
            let columns: Vec<Vec<Scalar>> = emb
                .basis()
                .iter()
                .map(|e| {
                    let image = m2.mul(&m2.mul(&g, e), &g_inv);
                    emb.coordinates(&image).expect("T2 is stable").into_coords()
                })
                .collect();
            (t2, Matrix::from_columns(3, &columns))
        }
    };
    Piece {
        algebra,
        auto,
        name: kind.to_string(),
    }
}

/// `A = B × B × C` with `R(b, b', c) = (b, σb, 0)`: an idempotent
/// endomorphism whenever `σ` is an automorphism of `B`.
fn doubled(b: Piece, c: Option<Algebra>) -> RandomInstance {
    let bd = b.algebra.dim();
    let cd = c.as_ref().map_or(0, Algebra::dim);
    let n = 2 * bd + cd;
    let images: Vec<Element> = (0..n)
        .map(|i| {
            let mut image = vec![Scalar::zero(); n];
            if i < bd {
                image[i] = s(1);
                for (k, v) in b.auto.column(i).into_iter().enumerate() {
                    image[bd + k] = v;
                }
            }
            Element::new(image)
        })
        .collect();
    let mut parts = vec![&b.algebra, &b.algebra];
    if let Some(c) = &c {
        parts.push(c);
    }
    let algebra = direct_product(&parts);
    let recipe = format!("{0}×{0}×C(dim {cd}) with R(b,b',c) = (b,σb,0)", b.name);
    RandomInstance::plain(
        algebra,
        LinearOperator::from_images(&images).expect("square"),
        recipe,
    )
}

fn matrix_unit(n: usize, i: usize, j: usize) -> Element {
    Element::basis(n * n, i * n + j)
}

fn matrix_element(m: &Matrix) -> Element {
    Element::new((0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect())
}

/// Left ideal `{x : x·F = x}` of `M_n` for the rank-`r` projection
/// `F = Q diag(1..1, 0..0) Q⁻¹`, on the basis `Q E_ij Q⁻¹` with `j < r`.
fn left_ideal(n: usize, r: usize, q: &Matrix, q_inv: &Matrix) -> Vec<Element> {
    let mut basis = Vec::new();
    for i in 0..n {
        for j in 0..r {
            let mut e = Matrix::zeros(n, n);
            let mut rows: Vec<Vec<Scalar>> = (0..n).map(|k| e.row(k).to_vec()).collect();
            rows[i][j] = s(1);
            e = Matrix::from_rows(rows);
            basis.push(matrix_element(&q.mul(&e).mul(q_inv)));
        }
    }
    basis
}

fn u_instance(ambient: Algebra, basis: Vec<Element>, u: Element, recipe: String) -> RandomInstance {
    let (algebra, embedding) =
        induce_subalgebra(&ambient, basis).expect("recipe yields a subalgebra");
    let operator =
        left_multiplication_operator(&embedding, &u).expect("u stabilizes the subalgebra");
    RandomInstance {
        algebra,
        operator,
        embedding: Some(embedding),
        u: Some(u),
        recipe,
    }
}

/// Pick `(n, r)` with `n·r` in `2..=6`.
fn ideal_shape(rng: &mut impl Rng) -> (usize, usize) {
    *[(2, 1), (2, 2), (3, 1), (3, 2)]
        .choose(rng)
        .expect("nonempty")
}

/// Associative `A` (dim 2 to 6) with an idempotent endomorphism.
pub fn associative_idempotent_endomorphism(rng: &mut impl Rng) -> RandomInstance {
    if rng.random_bool(0.4) {
        // u = Q [[I_r, 0], [C, 0]] Q⁻¹ on the left ideal of Q E Q⁻¹: x·u = x, u² = u
        let (n, r) = ideal_shape(rng);
        let (q, q_inv) = random_invertible(n, rng);
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match (i < r, j < r) {
                        (true, true) => s(i64::from(i == j)),
                        (false, true) => random_scalar(rng),
                        _ => s(0),
                    })
                    .collect()
            })
            .collect();
        let u = matrix_element(&q.mul(&Matrix::from_rows(rows)).mul(&q_inv));
        let basis = left_ideal(n, r, &q, &q_inv);
        let m = Algebra::matrix_algebra(n).expect("positive size");
        return u_instance(
            m,
            basis,
            u,
            format!("left ideal of rank {r} in M{n}, idempotent right identity"),
        );
    }
    let b = piece(3, false, rng);
    let room = 6 - 2 * b.algebra.dim();
    let c = (room > 0 && rng.random_bool(0.5)).then(|| piece(room, false, rng).algebra);
    hide(doubled(b, c), rng)
}

/// Commutative associative `A` (dim 2 to 6) with an idempotent endomorphism.
pub fn commutative_idempotent_endomorphism(rng: &mut impl Rng) -> RandomInstance {
    if rng.random_bool(0.4) {
        // multiplication by an idempotent of a product of truncated polynomial rings
        let mut parts = Vec::new();
        let mut dim = 0;
        let target = rng.random_range(2..=6);
        while dim < target {
            let m = rng.random_range(1..=(target - dim).min(3));
            parts.push(truncated_polynomial(m));
            dim += m;
        }
        let mut e = vec![Scalar::zero(); dim];
        let mut offset = 0;
        for p in &parts {
            if rng.random_bool(0.5) {
                e[offset] = s(1);
            }
            offset += p.dim();
        }
        let refs: Vec<&Algebra> = parts.iter().collect();
        let a = direct_product(&refs);
        let r = LinearOperator::new(&a, a.left_multiplication(&Element::new(e))).expect("square");
        let inst = RandomInstance::plain(
            a,
            r,
            format!(
                "product of {} truncated polynomial rings, multiplication by an idempotent",
                parts.len()
            ),
        );
        return hide(inst, rng);
    }
    let b = piece(3, true, rng);
    let room = 6 - 2 * b.algebra.dim();
    let c = (room > 0 && rng.random_bool(0.5)).then(|| piece(room, true, rng).algebra);
    hide(doubled(b, c), rng)
}

/// Commutative associative `A` (dim 2 to 6) with a derivation `D` such that
/// `D² = α·id`; returns `α`. A nonzero `α` forces the product to vanish (the
/// eigenspaces of `D` would multiply into eigenvalues `2μ` and `0`), so the
/// nonzero case is the rare null-algebra recipe.
pub fn commutative_derivation_square_scalar(rng: &mut impl Rng) -> (RandomInstance, Scalar) {
    let choice = rng.random_range(0..6);
    let (inst, alpha) = if choice == 0 {
        let n = 2 * rng.random_range(1..=3);
        let alpha = nonzero_scalar(rng);
        // block diagonal [[0, α], [1, 0]]
        let images: Vec<Element> = (0..n)
            .map(|i| {
                let mut v = vec![Scalar::zero(); n];
                if i % 2 == 0 {
                    v[i + 1] = s(1);
                } else {
                    v[i - 1] = alpha.clone();
                }
                Element::new(v)
            })
            .collect();
        let a = Algebra::null(n).expect("positive size");
        let r = LinearOperator::from_images(&images).expect("square");
        (
            RandomInstance::plain(a, r, format!("null algebra of dim {n}, R² = α")),
            alpha,
        )
    } else if choice <= 3 {
        // k ⊕ V, D = 0 ⊕ M with M² = 0 mapping a random complement into a subspace
        let v = rng.random_range(1..=5);
        let split = rng.random_range(0..=v);
        let a = trivial_extension(v);
        let images: Vec<Element> = (0..=v)
            .map(|i| {
                let mut image = vec![Scalar::zero(); v + 1];
                if i > split {
                    for slot in image.iter_mut().take(split + 1).skip(1) {
                        *slot = random_scalar(rng);
                    }
                }
                Element::new(image)
            })
            .collect();
        let r = LinearOperator::from_images(&images).expect("square");
        (
            RandomInstance::plain(a, r, format!("k ⊕ V with dim V = {v}, square-zero D on V")),
            Scalar::zero(),
        )
    } else {
        // k[t]/(t³) with D = c t² d/dt, times k ⊕ V with a square-zero D
        let c = nonzero_scalar(rng);
        let cubic = truncated_polynomial(3);
        let v = rng.random_range(0..=2);
        let ext = trivial_extension(v);
        let n = 3 + v + 1;
        let mut images: Vec<Element> = (0..n).map(|_| Element::zero(n)).collect();
        // D(t) = c t²
        images[1] = Element::basis(n, 2).scale(&c);
        if v == 2 {
            images[5] = Element::basis(n, 4).scale(&random_scalar(rng));
        }
        let a = direct_product(&[&cubic, &ext]);
        let r = LinearOperator::from_images(&images).expect("square");
        (
            RandomInstance::plain(a, r, format!("k[t]/(t³) × (k ⊕ V) with D(t) = {c} t²")),
            Scalar::zero(),
        )
    };
    (hide(inst, rng), alpha)
}

/// Flexible `A = B × B × C` (dim 2 to 6) with `R(b, b', c) = (b, b, 0)`, which
/// satisfies `R² = R` and `R(x)R(y) = R(R(x)y) = R(xy)`.
pub fn flexible_with_averaging_endomorphism(rng: &mut impl Rng) -> RandomInstance {
    let bd = rng.random_range(1..=3);
    let (b, kind) = match rng.random_range(0..3) {
        0 => (random_commutative(bd, rng), "commutative"),
        1 => (random_anticommutative(bd, rng), "anticommutative"),
        _ => (piece(bd, false, rng).algebra, "associative"),
    };
    let room = 6 - 2 * bd;
    let c = (room > 0 && rng.random_bool(0.5)).then(|| {
        let cd = rng.random_range(1..=room);
        random_commutative(cd, rng)
    });
    let b = Piece {
        name: format!("{kind} B(dim {})", b.dim()),
        auto: Matrix::identity(b.dim()),
        algebra: b,
    };
    hide(doubled(b, c), rng)
}

/// Which quadratic relation `u` satisfies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadraticKind {
    /// `u² = -u`
    SkewIdempotent,
    /// `u² = 0`
    SquareZero,
    /// `u² = -λu - β`
    Weighted { lambda: Scalar, beta: Scalar },
}

/// `u` in `M_n` (n = 2, 3) with the requested relation, and a subalgebra of
/// dim 2 to 6 that `u` stabilizes from the left: a conjugated left ideal,
/// upper triangular matrices, or all of `M2`.
pub fn quadratic_element(kind_seed: u8, rng: &mut impl Rng) -> (RandomInstance, QuadraticKind) {
    let kind = match kind_seed % 3 {
        0 => QuadraticKind::SkewIdempotent,
        1 => QuadraticKind::SquareZero,
        _ => QuadraticKind::Weighted {
            lambda: random_scalar(rng),
            beta: random_scalar(rng),
        },
    };
    let (n, r) = ideal_shape(rng);
    // the companion block is not triangular, so weighted kinds use left ideals
    let triangular = !matches!(kind, QuadraticKind::Weighted { .. }) && rng.random_bool(0.3);
    let (q, q_inv) = if triangular {
        // upper triangular with unit diagonal keeps T_n stable under conjugation
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            s(1)
                        } else if i < j {
                            random_scalar(rng)
                        } else {
                            s(0)
                        }
                    })
                    .collect()
            })
            .collect();
        let q = Matrix::from_rows(rows);
        let q_inv = q.inverse().expect("unit triangular");
        (q, q_inv)
    } else {
        random_invertible(n, rng)
    };
    // core relation in normal form, then conjugated
    let core = match &kind {
        QuadraticKind::SkewIdempotent => {
            let diag: Vec<i64> = (0..n).map(|_| -i64::from(rng.random_bool(0.6))).collect();
            Matrix::from_rows(
                (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| s(if i == j { diag[i] } else { 0 }))
                            .collect()
                    })
                    .collect(),
            )
        }
        QuadraticKind::SquareZero => {
            let mut rows = vec![vec![s(0); n]; n];
            rows[0][n - 1] = nonzero_scalar(rng);
            Matrix::from_rows(rows)
        }
        QuadraticKind::Weighted { lambda, beta } => {
            // companion block of t² + λt + β, padded by a rational root when one exists
            let mut rows = vec![vec![s(0); n]; n];
            rows[0][1] = -beta;
            rows[1][0] = s(1);
            rows[1][1] = -lambda;
            if n == 3 {
                let disc = &(lambda * lambda) - &(beta * &s(4));
                match disc.sqrt() {
                    Some(d) => rows[2][2] = &(&-lambda + &d) / &s(2),
                    None => return quadratic_element(kind_seed, rng),
                }
            }
            Matrix::from_rows(rows)
        }
    };
    let u = matrix_element(&q.mul(&core).mul(&q_inv));
    let m = Algebra::matrix_algebra(n).expect("positive size");
    let (basis, shape) = if triangular {
        let basis = (0..n)
            .flat_map(|i| (i..n).map(move |j| matrix_unit(n, i, j)))
            .collect();
        (basis, format!("upper triangular T{n}"))
    } else {
        (
            left_ideal(n, r, &q, &q_inv),
            format!("left ideal of rank {r} in M{n}"),
        )
    };
    (
        u_instance(m, basis, u, format!("{shape}, u with {kind:?}")),
        kind,
    )
}
