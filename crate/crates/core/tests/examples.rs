//! Known-answer examples for each module. Expected values come from plain
//! integer matrix products computed here, not from the library.

use nonassoc::certify::{certify_parametric, Parameter};
use nonassoc::fixtures::{load_fixture, verify_bundle, verify_rows, Row};
use nonassoc::identity::check_identity_exhaustive;
use nonassoc::search::{ElementFamily, Strategy};
use nonassoc::{
    check_identity, check_identity_random, check_operator_property, derive, find_special,
    hadamard_algebra, induce_subalgebra, left_multiplication_operator, solve_linear,
    verify_element, Algebra, Construction, Element, Error, IdentityName, LinearConstraint,
    LinearOperator, Matrix, OperatorProperty, QuadraticConstraint, Scalar, Verdict, WitnessPoint,
};

type M = Vec<Vec<i64>>;

fn matmul(a: &M, b: &M) -> M {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn flat(m: &M) -> Element {
    Element::from_ints(&m.iter().flatten().copied().collect::<Vec<_>>())
}

fn unit(n: usize, i: usize, j: usize) -> M {
    let mut m = vec![vec![0; n]; n];
    m[i - 1][j - 1] = 1;
    m
}

fn add(a: &M, b: &M) -> M {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn f1_matrices() -> Vec<M> {
    vec![
        add(&unit(3, 1, 1), &unit(3, 1, 2)),
        add(&unit(3, 2, 1), &unit(3, 2, 2)),
        add(&unit(3, 3, 1), &unit(3, 3, 2)),
    ]
}

fn f1() -> (Algebra, nonassoc::Embedding) {
    let m3 = Algebra::matrix_algebra(3).unwrap();
    induce_subalgebra(&m3, f1_matrices().iter().map(flat).collect()).unwrap()
}

/// Coordinates of `m` in a basis of matrices with disjoint supports.
fn coords_in(basis: &[M], m: &M) -> Vec<i64> {
    basis
        .iter()
        .map(|b| {
            let (i, j) = (0..b.len())
                .flat_map(|i| (0..b.len()).map(move |j| (i, j)))
                .find(|&(i, j)| b[i][j] != 0)
                .unwrap();
            m[i][j] / b[i][j]
        })
        .collect()
}

#[test]
fn make_algebra_small_cases() {
    let field = Algebra::new(1, [(0, 0, 0, s(1))]).unwrap();
    assert_eq!(
        field.mul(&Element::from_ints(&[3]), &Element::from_ints(&[5])),
        Element::from_ints(&[15])
    );
    let null = Algebra::null(2).unwrap();
    assert!(null
        .mul(&Element::from_ints(&[1, 2]), &Element::from_ints(&[3, 4]))
        .is_zero());
    assert!(matches!(Algebra::new(0, []), Err(Error::ZeroDimension)));
}

#[test]
fn f1_constants_from_matrix_products() {
    let (a, _) = f1();
    let basis = f1_matrices();
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let expect = coords_in(&basis, &matmul(x, y));
            assert_eq!(
                a.basis_product(i, j),
                Element::from_ints(&expect),
                "e{i} e{j}"
            );
        }
    }
    assert!(a.is_associative().passed());
    // e1 e2 = e1 but e2 e1 = e2
    let v = a.is_commutative();
    assert_eq!(v.witness().unwrap().at, WitnessPoint::Basis(vec![0, 1]));
    assert_eq!(
        a.mul(&Element::basis(3, 0), &Element::basis(3, 1)),
        Element::basis(3, 0)
    );
}

#[test]
fn matrix_algebra_delta_rule() {
    let m1 = Algebra::matrix_algebra(1).unwrap();
    assert_eq!(m1.unit(), Some(Element::from_ints(&[1])));
    let m2 = Algebra::matrix_algebra(2).unwrap();
    for (i, j, k, l) in [(1, 2, 2, 1), (1, 1, 1, 2), (2, 1, 1, 2), (1, 2, 1, 2)] {
        let expect = flat(&matmul(&unit(2, i, j), &unit(2, k, l)));
        assert_eq!(m2.mul(&flat(&unit(2, i, j)), &flat(&unit(2, k, l))), expect);
    }
    assert!(Algebra::matrix_algebra(3)
        .unwrap()
        .is_associative()
        .passed());
}

#[test]
fn second_column_subalgebra() {
    let m2 = Algebra::matrix_algebra(2).unwrap();
    let (a, _) = induce_subalgebra(&m2, vec![flat(&unit(2, 1, 2)), flat(&unit(2, 2, 2))]).unwrap();
    // E12 E22 = E12, E22 E22 = E22, E12 E12 = 0, E22 E12 = 0
    assert_eq!(a.basis_product(0, 1), Element::from_ints(&[1, 0]));
    assert_eq!(a.basis_product(1, 1), Element::from_ints(&[0, 1]));
    assert!(a.basis_product(0, 0).is_zero());
    assert!(a.basis_product(1, 0).is_zero());
    // {E11, E12} is closed as well
    assert!(induce_subalgebra(&m2, vec![flat(&unit(2, 1, 1)), flat(&unit(2, 1, 2))]).is_ok());
    // E12 + E21 squares to the identity, outside its span
    let err = induce_subalgebra(&m2, vec![flat(&add(&unit(2, 1, 2), &unit(2, 2, 1)))]).unwrap_err();
    assert!(matches!(err, Error::NotClosed { .. }), "{err:?}");
}

#[test]
fn symmetrized_product_is_not_associative() {
    let b = load_fixture("F3").unwrap();
    let v = b.instance.algebra.is_associative();
    assert!(!v.passed());
    let w = v.witness().unwrap();
    let WitnessPoint::Basis(ix) = &w.at else {
        panic!("basis witness")
    };
    let a = &b.instance.algebra;
    let e = |i: usize| Element::basis(3, i);
    assert_eq!(w.lhs, a.mul(&a.mul(&e(ix[0]), &e(ix[1])), &e(ix[2])));
    assert_eq!(w.rhs, a.mul(&e(ix[0]), &a.mul(&e(ix[1]), &e(ix[2]))));
    assert_ne!(w.lhs, w.rhs);
    assert!(!check_identity_random(a, IdentityName::Associativity, 100, 3).passed());
}

#[test]
fn hadamard_algebras() {
    let h = hadamard_algebra(2, 2).unwrap();
    assert!(h.is_commutative().passed() && h.is_associative().passed());
    assert_eq!(h.unit(), Some(Element::from_ints(&[1, 1, 1, 1])));
    assert_eq!(
        hadamard_algebra(1, 1).unwrap(),
        Algebra::new(1, [(0, 0, 0, s(1))]).unwrap()
    );
    let h21 = hadamard_algebra(2, 1).unwrap();
    assert_eq!(h21.dim(), 2);
    assert!(h21.basis_product(0, 1).is_zero());
}

#[test]
fn operator_from_u_at_b2() {
    let (a, emb) = f1();
    let u = vec![vec![1, 2, 2], vec![0, -1, -2], vec![0, 1, 2]];
    let r = left_multiplication_operator(&emb, &flat(&u)).unwrap();
    let basis = f1_matrices();
    for (j, x) in basis.iter().enumerate() {
        let expect = coords_in(&basis, &matmul(&u, x));
        assert_eq!(r.apply(&Element::basis(3, j)), Element::from_ints(&expect));
    }
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
    let lie = derive(&a, Some(&r), &Construction::LieEndo).unwrap();
    assert!(check_identity(&lie, IdentityName::Antisymmetry).passed());
    assert!(check_identity(&lie, IdentityName::Jacobi).passed());
}

#[test]
fn permutation_swaps_rows() {
    let b = load_fixture("F2").unwrap();
    let inst = &b.instance;
    let r = inst.operator.as_ref().unwrap();
    let p = vec![vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]];
    // basis order E11, E21, E31, E12+E13, E22+E23, E32+E33
    let basis: Vec<M> = vec![
        unit(3, 1, 1),
        unit(3, 2, 1),
        unit(3, 3, 1),
        add(&unit(3, 1, 2), &unit(3, 1, 3)),
        add(&unit(3, 2, 2), &unit(3, 2, 3)),
        add(&unit(3, 3, 2), &unit(3, 3, 3)),
    ];
    for (j, x) in basis.iter().enumerate() {
        assert_eq!(
            r.apply(&Element::basis(6, j)),
            Element::from_ints(&coords_in(&basis, &matmul(&p, x)))
        );
    }
    assert_eq!(r.compose(r), LinearOperator::identity(6));
}

#[test]
fn left_ideal_never_escapes_but_other_subalgebras_can() {
    let (_, emb) = f1();
    // F1 is a left ideal: even E13 maps it into itself
    let r = left_multiplication_operator(&emb, &flat(&unit(3, 1, 3))).unwrap();
    assert!(r.apply(&Element::basis(3, 0)).is_zero());
    assert_eq!(r.apply(&Element::basis(3, 2)), Element::basis(3, 0));
    // span{I2 ⊕ 0, E12, E33}: E13 · E33 = E13 is outside
    let m3 = Algebra::matrix_algebra(3).unwrap();
    let basis = vec![
        flat(&add(&unit(3, 1, 1), &unit(3, 2, 2))),
        flat(&unit(3, 1, 2)),
        flat(&unit(3, 3, 3)),
    ];
    let (_, emb8) = induce_subalgebra(&m3, basis).unwrap();
    assert!(matches!(
        left_multiplication_operator(&emb8, &flat(&unit(3, 1, 3))),
        Err(Error::ImageEscapes { .. })
    ));
}

#[test]
fn trivial_operators() {
    let m2 = Algebra::matrix_algebra(2).unwrap();
    let id = LinearOperator::new(&m2, Matrix::identity(4)).unwrap();
    for p in [
        OperatorProperty::Endomorphism,
        OperatorProperty::IdempotentOp,
    ] {
        assert!(check_operator_property(&m2, &id, &p).unwrap().passed());
    }
    let null = Algebra::null(3).unwrap();
    let zero = LinearOperator::new(&null, Matrix::zeros(3, 3)).unwrap();
    assert!(
        check_operator_property(&null, &zero, &OperatorProperty::Derivation)
            .unwrap()
            .passed()
    );
}

#[test]
fn weight_zero_and_its_perturbation() {
    let b = load_fixture("F9").unwrap();
    let inst = &b.instance;
    assert_eq!(inst.u, Element::from_ints(&[1, -1, 1, -1]));
    let r = inst.operator.as_ref().unwrap();
    let rb0 = OperatorProperty::RotaBaxter(s(0));
    assert!(check_operator_property(&inst.algebra, r, &rb0)
        .unwrap()
        .passed());
    let bumped = r.add(&LinearOperator::identity(2));
    let v = check_operator_property(&inst.algebra, &bumped, &rb0).unwrap();
    let w = v.witness().expect("fails");
    // direct evaluation at the witness pair
    let WitnessPoint::Basis(ix) = &w.at else {
        panic!("basis witness")
    };
    let (x, y) = (Element::basis(2, ix[0]), Element::basis(2, ix[1]));
    let a = &inst.algebra;
    let (rx, ry) = (bumped.apply(&x), bumped.apply(&y));
    let lhs = a.mul(&rx, &ry);
    let rhs = bumped.apply(&(&a.mul(&rx, &y) + &a.mul(&x, &ry)));
    assert_ne!(lhs, rhs);
    assert_eq!((w.lhs.clone(), w.rhs.clone()), (lhs, rhs));
}

#[test]
fn construction_examples() {
    let m2 = Algebra::matrix_algebra(2).unwrap();
    let c = derive(&m2, None, &Construction::Commutator).unwrap();
    // [E11, E12] = E12
    assert_eq!(c.basis_product(0, 1), Element::basis(4, 1));
    assert!(check_identity(&c, IdentityName::Jacobi).passed());
    assert!(check_identity(&c, IdentityName::Antisymmetry).passed());

    let zero = LinearOperator::zero(4);
    let neg = derive(&m2, Some(&zero), &Construction::PrelieRb1).unwrap();
    assert_eq!(
        neg.mul(&Element::basis(4, 1), &Element::basis(4, 2)),
        Element::basis(4, 0).scale(&s(-1))
    );
    assert!(check_identity(&neg, IdentityName::LeftPrelie).passed());
    // a nonassociative algebra whose sign flip is not pre-Lie
    let a = Algebra::new(2, [(0, 0, 1, s(1)), (0, 1, 0, s(1))]).unwrap();
    assert!(!a.is_associative().passed());
    let neg = derive(&a, Some(&LinearOperator::zero(2)), &Construction::PrelieRb1).unwrap();
    assert!(!check_identity(&neg, IdentityName::LeftPrelie).passed());
}

#[test]
fn identity_examples() {
    let f4 = load_fixture("F4").unwrap();
    let inst = &f4.instance;
    let leib = derive(
        &inst.algebra,
        inst.operator.as_ref(),
        &Construction::LeibnizEndo,
    )
    .unwrap();
    assert!(check_identity(&leib, IdentityName::LeftLeibniz).passed());
    // recorded: the bracket vanishes on this subalgebra, so antisymmetry holds
    assert!(check_identity(&leib, IdentityName::Antisymmetry).passed());
    assert!(leib.entries().is_empty());
    let f8 = load_fixture("F8").unwrap();
    let lie = derive(
        &f8.instance.algebra,
        f8.instance.operator.as_ref(),
        &Construction::LieEndo,
    )
    .unwrap();
    assert!(lie.entries().is_empty());

    let f3 = load_fixture("F3").unwrap();
    assert!(check_identity(&f3.instance.algebra, IdentityName::JordanMain).passed());

    let null = Algebra::null(3).unwrap();
    for id in IdentityName::ALL {
        assert!(check_identity(&null, id).passed(), "{id}");
    }
    let (a, _) = f1();
    for seed in 0..5 {
        assert!(check_identity_random(&a, IdentityName::Associativity, 50, seed).passed());
    }
}

#[test]
fn f1b_certified_for_every_b() {
    let b = load_fixture("F1b").unwrap();
    assert_eq!(b.params()[0].name, "b");
    assert_eq!(
        b.grid.as_ref().unwrap()[0],
        (0..8).map(s).collect::<Vec<_>>()
    );
    let cert = nonassoc::fixtures::certify_fixture(&b).unwrap().unwrap();
    assert!(cert.holds());
}

#[test]
fn skew_idempotent_family_on_small_grid() {
    // u² = -u alone: residual has degree 2 in x and y-span 2, so {0,1,2}×{1,2,3} decides it
    let f10 = load_fixture("F10").unwrap();
    let params = [Parameter::polynomial("x", 2), Parameter::laurent("y", 2)];
    let grid = [vec![s(0), s(1), s(2)], vec![s(1), s(2), s(3)]];
    let m2 = f10.instance.ambient().clone();
    let cert = certify_parametric(&params, &grid, |t| {
        let u = f10.u_family.at(t)?;
        QuadraticConstraint::SkewIdempotent.verify(&m2, &u)
    })
    .unwrap();
    assert!(cert.holds());
    // the same grid is too small for the fixture's full degree declaration
    assert!(matches!(
        nonassoc::fixtures::certify_fixture_on(&f10, &grid),
        Err(Error::GridTooSmall { .. })
    ));
    // a single point cannot certify a degree-2 claim
    let single = [vec![s(1)]];
    assert!(matches!(
        certify_parametric(&[Parameter::polynomial("t", 2)], &single, |_| Ok(
            Verdict::Pass
        )),
        Err(Error::GridTooSmall { .. })
    ));
}

#[test]
fn f11_parameters_and_guard() {
    let b = load_fixture("F11").unwrap();
    let names: Vec<&str> = b.params().iter().map(|p| p.name.as_str()).collect();
    assert_eq!(names, ["x", "y", "lambda", "beta"]);
    assert!(b.params()[1].nonzero);
    assert!(b.u_family.at(&[s(0), s(0), s(1), s(2)]).is_err());
}

#[test]
fn solve_linear_dimensions() {
    let (_, emb) = f1();
    let both = [LinearConstraint::RightIdentity, LinearConstraint::Stabilize];
    let space = solve_linear(&emb, &both);
    // a, b, c, e, f, g free; second row = (1,1,0) - first row
    assert_eq!(space.dim(), Some(6));
    let general_form = |a: i64, b: i64, c: i64, e: i64, f: i64, g: i64| {
        flat(&vec![vec![a, b, c], vec![1 - a, 1 - b, -c], vec![e, f, g]])
    };
    for u in [general_form(0, 0, 0, 0, 0, 0), general_form(2, -1, 3, 1, 4, -2)] {
        assert!(space.locate(&u).is_some());
        assert!(LinearConstraint::RightIdentity.verify(&emb, &u).passed());
    }
    let annihilators = solve_linear(&emb, &[LinearConstraint::RightAnnihilator]);
    assert_eq!(annihilators.dim(), Some(6));
    assert!(annihilators
        .locate(&flat(&vec![
            vec![2, -1, 3],
            vec![-2, 1, -3],
            vec![1, 4, -2]
        ]))
        .is_some());
    let contradiction = solve_linear(
        &emb,
        &[
            LinearConstraint::RightIdentity,
            LinearConstraint::RightAnnihilator,
        ],
    );
    assert!(contradiction.is_empty());
}

#[test]
fn find_special_on_second_column_examples() {
    let f9 = load_fixture("F9").unwrap();
    let emb = &f9.instance.embedding;
    let stab = [LinearConstraint::Stabilize];

    let at = |name: &str, point: Vec<Scalar>| {
        let b = load_fixture(name).unwrap();
        Strategy::Family {
            family: b.u_family.clone(),
            points: vec![point],
        }
    };
    let found = find_special(
        emb,
        &stab,
        &QuadraticConstraint::Nilpotent2,
        &at("F9", vec![s(1), s(1)]),
    )
    .unwrap();
    assert_eq!(found.elements, [flat(&vec![vec![1, -1], vec![1, -1]])]);

    let found = find_special(
        emb,
        &stab,
        &QuadraticConstraint::SkewIdempotent,
        &at("F10", vec![s(0), s(1)]),
    )
    .unwrap();
    let u = vec![vec![0, 1], vec![0, -1]];
    assert_eq!(matmul(&u, &u), vec![vec![0, -1], vec![0, 1]]);
    assert_eq!(found.elements, [flat(&u)]);

    let weighted = QuadraticConstraint::RbWeighted {
        lambda: s(1),
        beta: s(2),
        unit: Some(flat(&vec![vec![1, 0], vec![0, 1]])),
    };
    let found = find_special(
        emb,
        &stab,
        &weighted,
        &at("F11", vec![s(0), s(1), s(1), s(2)]),
    )
    .unwrap();
    let u = vec![vec![0, 1], vec![-2, -1]];
    assert_eq!(matmul(&u, &u), vec![vec![-2, -1], vec![2, -1]]);
    assert_eq!(found.elements, [flat(&u)]);

    // a family point that fails the quadratic is dropped
    let miss = find_special(
        emb,
        &stab,
        &QuadraticConstraint::Idempotent,
        &at("F9", vec![s(1), s(1)]),
    )
    .unwrap();
    assert!(miss.elements.is_empty());
    let _ = ElementFamily::new(vec![], |_| Element::zero(4));
}

#[test]
fn verify_element_examples() {
    let f3 = load_fixture("F3").unwrap();
    let inst = &f3.instance;
    let lin = [LinearConstraint::RightIdentity, LinearConstraint::Stabilize];
    let report = verify_element(
        &inst.embedding,
        &inst.u,
        &lin,
        Some(&QuadraticConstraint::Idempotent),
    )
    .unwrap();
    assert!(report.passed());

    let f7 = load_fixture("F7").unwrap();
    let inst = &f7.instance;
    // u = (a,b,1)ᵀ(1,β,λβ) with a=-2, b=1, β=2, λ=3
    let u = vec![vec![-2, -4, -12], vec![1, 2, 6], vec![1, 2, 6]];
    assert_eq!(
        matmul(&u, &u),
        u.iter()
            .map(|r| r.iter().map(|x| 6 * x).collect())
            .collect::<M>()
    );
    assert_eq!(inst.u, flat(&u));
    let lin = [
        LinearConstraint::RightAnnihilator,
        LinearConstraint::Stabilize,
    ];
    let report = verify_element(
        &inst.embedding,
        &inst.u,
        &lin,
        Some(&QuadraticConstraint::Scaled { gamma: s(6) }),
    )
    .unwrap();
    assert!(report.passed());

    let (_, emb) = f1();
    let report = verify_element(
        &emb,
        &Element::zero(9),
        &[LinearConstraint::RightIdentity],
        None,
    )
    .unwrap();
    assert!(!report.passed());
}

#[test]
fn fixture_reports() {
    let f1b = nonassoc::fixtures::verify_fixture("F1b").unwrap();
    assert!(f1b.pass);
    let f8 = nonassoc::fixtures::verify_fixture("F8").unwrap();
    for check in ["derived:flexible_avg:flexible", "derived:lie_endo:jacobi"] {
        assert!(
            f8.rows
                .iter()
                .any(|r| r.check == check && r.actual == "pass"),
            "{check}"
        );
    }
    // corrupt one expectation of F9
    let f9 = load_fixture("F9").unwrap();
    let mut rows: Vec<Row> = f9.instance.rows.clone();
    rows[3].expect = "fail".into();
    let report = verify_rows("F9", &f9.instance, &rows);
    assert!(!report.pass);
    let bad: Vec<&str> = report.failures().map(|r| r.check.as_str()).collect();
    assert_eq!(bad, [rows[3].check.as_str()]);
    assert!(verify_bundle(&f9).pass);
    assert!(matches!(
        nonassoc::fixtures::verify_fixture("F99"),
        Err(Error::UnknownFixture(_))
    ));
    assert_eq!(
        nonassoc::fixtures::list_fixtures(),
        nonassoc::fixtures::list_fixtures()
    );
}

#[test]
fn exhaustive_route_agrees_on_examples() {
    for name in ["F3", "F5", "F8"] {
        let b = load_fixture(name).unwrap();
        for id in IdentityName::ALL {
            let a = &b.instance.algebra;
            assert_eq!(
                check_identity(a, id).passed(),
                check_identity_exhaustive(a, id).passed(),
                "{name} {id}"
            );
        }
    }
}
