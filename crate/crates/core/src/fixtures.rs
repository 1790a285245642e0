//! Worked examples with expected verdicts.
//!
//! A fixture is a family of instances indexed by rational parameters. Each
//! instance fixes an ambient matrix algebra, a subalgebra, the algebra the
//! operator acts on (usually the induced one), an element `u`, the operator
//! `R(x) = u·x`, and a list of expectation rows. Rows are strings:
//!
//! * `algebra:<identity>`
//! * `element:<linear or quadratic constraint>`
//! * `operator:<property>`
//! * `operator@<c1/c2/..>:<property>`: the property on a derived algebra
//! * `derived:<c1/c2/..>:<identity>`: constructions applied in turn, all
//!   with the same operator
//! * `solve:<lin,..>`: dimension of the affine solution space, `dim=none`
//!   when empty
//!
//! Expectations are `pass`, `fail` or `dim=N`.

use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{induce_subalgebra, Algebra, Element, Embedding};
use crate::certify::{certify_parametric, Certificate, Parameter};
use crate::construct::{derive, hadamard_algebra, Construction};
use crate::error::{Error, Result};
use crate::identity::{check_identity, IdentityName};
use crate::io;
use crate::operator::{
    check_operator_property, left_multiplication_operator, LinearOperator, OperatorProperty,
};
use crate::scalar::Scalar;
use crate::search::{
    parse_linear_list, solve_linear, ElementFamily, LinearConstraint, QuadraticConstraint,
};
use crate::verdict::Verdict;

/// Catalog order.
pub const FIXTURE_NAMES: [&str; 13] = [
    "F1", "F1b", "F2", "F3", "F3b", "F4", "F5", "F6", "F7", "F8", "F9", "F10", "F11",
];

pub fn list_fixtures() -> Vec<&'static str> {
    FIXTURE_NAMES.to_vec()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub check: String,
    pub expect: String,
}

fn row(check: impl Into<String>, expect: &str) -> Row {
    Row {
        check: check.into(),
        expect: expect.to_string(),
    }
}

fn pass(check: impl Into<String>) -> Row {
    row(check, "pass")
}

fn fail(check: impl Into<String>) -> Row {
    row(check, "fail")
}

/// The expectation file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectations {
    pub fixture: String,
    /// Parameter names and the point the other files were generated at.
    #[serde(default)]
    pub parameters: Vec<(String, Scalar)>,
    pub rows: Vec<Row>,
}

/// One member of a fixture family.
#[derive(Clone, Debug)]
pub struct Instance {
    pub embedding: Embedding,
    /// The algebra structure on the subalgebra that the operator acts on.
    pub algebra: Algebra,
    pub u: Element,
    /// `None` when `u·x` leaves the subalgebra for some basis element `x`.
    pub operator: Option<LinearOperator>,
    pub rows: Vec<Row>,
}

impl Instance {
    pub fn ambient(&self) -> &Algebra {
        self.embedding.ambient()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Perturbation {
    /// Replace `u` by `u + E11` and rebuild the operator.
    UPlusE11,
    /// Replace `R` by `R + id`.
    OperatorPlusIdentity,
}

/// A perturbation and the rows it must flip from their expected verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NegativeControl {
    pub perturbation: Perturbation,
    pub flips: Vec<String>,
}

type Builder = Arc<dyn Fn(&[Scalar], Element) -> Result<Instance> + Send + Sync>;

#[derive(Clone)]
pub struct FixtureBundle {
    pub name: &'static str,
    /// What the example shows, in one sentence.
    pub anchor: &'static str,
    /// Caveats, such as a derived product that vanishes identically.
    pub note: Option<&'static str>,
    pub u_family: ElementFamily,
    pub sample: Vec<Scalar>,
    /// Product grid that certifies every `pass` row for all parameter values;
    /// absent when the family is not certified.
    pub grid: Option<Vec<Vec<Scalar>>>,
    pub negative: NegativeControl,
    /// The instance at `sample`.
    pub instance: Instance,
    build: Builder,
}

impl fmt::Debug for FixtureBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FixtureBundle")
            .field("name", &self.name)
            .field("params", &self.u_family.params)
            .field("sample", &self.sample)
            .finish_non_exhaustive()
    }
}

impl FixtureBundle {
    pub fn params(&self) -> &[Parameter] {
        &self.u_family.params
    }

    /// The instance at another parameter point.
    pub fn instance_at(&self, point: &[Scalar]) -> Result<Instance> {
        let u = self.u_family.at(point)?;
        (self.build)(point, u)
    }

    /// The instance at `point` built around a replacement element.
    pub fn instance_with_u(&self, point: &[Scalar], u: Element) -> Result<Instance> {
        (self.build)(point, u)
    }

    pub fn expectations(&self) -> Expectations {
        Expectations {
            fixture: self.name.to_string(),
            parameters: self
                .u_family
                .names()
                .into_iter()
                .map(String::from)
                .zip(self.sample.iter().cloned())
                .collect(),
            rows: self.instance.rows.clone(),
        }
    }

    /// File name and contents of the on-disk form of the sample instance.
    pub fn files(&self) -> Vec<(&'static str, String)> {
        let inst = &self.instance;
        let mut files = vec![
            ("algebra.json", io::algebra_to_json(&inst.algebra)),
            ("embedding.json", io::embedding_to_json(&inst.embedding)),
            (
                "u.json",
                serde_json::to_string_pretty(&inst.u.coords()).expect("serializable"),
            ),
        ];
        if let Some(r) = &inst.operator {
            files.push(("operator.json", io::operator_to_json(r)));
        }
        files.push((
            "expect.json",
            serde_json::to_string_pretty(&self.expectations()).expect("serializable"),
        ));
        files
            .into_iter()
            .map(|(name, body)| (name, body + "\n"))
            .collect()
    }
}

/// Load an instance from a directory holding the files of
/// [`FixtureBundle::files`]. `operator.json` is optional.
pub fn read_fixture_dir(dir: &Path) -> Result<(Expectations, Instance)> {
    let expect: Expectations = serde_json::from_str(&fs::read_to_string(dir.join("expect.json"))?)?;
    let embedding = io::read_embedding(&dir.join("embedding.json"), None)?;
    let algebra = io::read_algebra(&dir.join("algebra.json"))?;
    if algebra.dim() != embedding.dim() {
        return Err(Error::Format(format!(
            "algebra has dimension {} but the embedding spans {}",
            algebra.dim(),
            embedding.dim()
        )));
    }
    let u = io::read_element(&dir.join("u.json"))?;
    embedding.ambient().check_element(&u)?;
    let op_path = dir.join("operator.json");
    let operator = if op_path.exists() {
        let r = io::read_operator(&op_path)?;
        if r.dim() != algebra.dim() {
            return Err(Error::Format(
                "operator and algebra dimensions differ".into(),
            ));
        }
        Some(r)
    } else {
        None
    };
    let rows = expect.rows.clone();
    Ok((
        expect,
        Instance {
            embedding,
            algebra,
            u,
            operator,
            rows,
        },
    ))
}

/// Verify the rows stored in a fixture directory against its files.
pub fn verify_fixture_dir(dir: &Path) -> Result<Report> {
    let (expect, inst) = read_fixture_dir(dir)?;
    Ok(verify_rows(&expect.fixture, &inst, &expect.rows))
}

/// Outcome of one row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowReport {
    pub check: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub fixture: String,
    pub rows: Vec<RowReport>,
    pub pass: bool,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &RowReport> {
        self.rows.iter().filter(|r| !r.ok)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.rows.iter().map(|r| r.check.len()).max().unwrap_or(0);
        writeln!(f, "fixture {}", self.fixture)?;
        for r in &self.rows {
            let mark = if r.ok { "ok" } else { "MISMATCH" };
            write!(
                f,
                "  {:<width$}  expect {:<8} got {:<8} {mark}",
                r.check, r.expected, r.actual
            )?;
            if let Some(d) = r.detail.as_ref().filter(|_| !r.ok || r.actual == "fail") {
                write!(f, "  [{d}]")?;
            }
            writeln!(f)?;
        }
        write!(f, "{}", if self.pass { "PASS" } else { "FAIL" })
    }
}

/// The actual result of a row, with the verdict when there is one.
#[derive(Clone, Debug)]
pub struct RowOutcome {
    pub actual: String,
    pub verdict: Option<Verdict>,
}

impl RowOutcome {
    fn from_verdict(v: Verdict) -> Self {
        let actual = if v.passed() { "pass" } else { "fail" }.to_string();
        RowOutcome {
            actual,
            verdict: Some(v),
        }
    }

    fn error(e: &Error) -> Self {
        RowOutcome {
            actual: format!("error: {e}"),
            verdict: None,
        }
    }
}

/// Split a construction chain on `/` outside parentheses, so fractions in
/// arguments survive.
fn split_chain(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0usize, 0usize);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '/' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn derive_chain(inst: &Instance, chain: &str) -> Result<Algebra> {
    let mut a = inst.algebra.clone();
    for step in split_chain(chain) {
        let c: Construction = step.parse()?;
        a = derive(&a, inst.operator.as_ref(), &c)?;
    }
    Ok(a)
}

fn operator_of(inst: &Instance) -> Result<&LinearOperator> {
    inst.operator.as_ref().ok_or_else(|| {
        Error::Strategy("u·x leaves the subalgebra, so no operator is induced".into())
    })
}

/// Evaluate one row against an instance.
pub fn evaluate_row(inst: &Instance, check: &str) -> RowOutcome {
    match evaluate_row_inner(inst, check) {
        Ok(o) => o,
        Err(e) => RowOutcome::error(&e),
    }
}

fn evaluate_row_inner(inst: &Instance, check: &str) -> Result<RowOutcome> {
    let malformed = || Error::Format(format!("malformed check {check:?}"));
    let (kind, rest) = check.split_once(':').ok_or_else(malformed)?;
    match kind {
        "algebra" => Ok(RowOutcome::from_verdict(check_identity(
            &inst.algebra,
            rest.parse()?,
        ))),
        "element" => {
            let v = match rest.parse::<LinearConstraint>() {
                Ok(l) => l.verify(&inst.embedding, &inst.u),
                Err(_) => rest
                    .parse::<QuadraticConstraint>()?
                    .verify(inst.ambient(), &inst.u)?,
            };
            Ok(RowOutcome::from_verdict(v))
        }
        "operator" => {
            let prop: OperatorProperty = rest.parse()?;
            Ok(RowOutcome::from_verdict(check_operator_property(
                &inst.algebra,
                operator_of(inst)?,
                &prop,
            )?))
        }
        "derived" => {
            let (chain, id) = rest.rsplit_once(':').ok_or_else(malformed)?;
            let id: IdentityName = id.parse()?;
            let a = derive_chain(inst, chain)?;
            Ok(RowOutcome::from_verdict(check_identity(&a, id)))
        }
        k if k.starts_with("operator@") => {
            let chain = &k["operator@".len()..];
            let prop: OperatorProperty = rest.parse()?;
            let a = derive_chain(inst, chain)?;
            Ok(RowOutcome::from_verdict(check_operator_property(
                &a,
                operator_of(inst)?,
                &prop,
            )?))
        }
        "solve" => {
            let space = solve_linear(&inst.embedding, &parse_linear_list(rest)?);
            let actual = match space.dim() {
                Some(d) => format!("dim={d}"),
                None => "dim=none".to_string(),
            };
            Ok(RowOutcome {
                actual,
                verdict: None,
            })
        }
        _ => Err(malformed()),
    }
}

/// Run rows against an instance.
pub fn verify_rows(fixture: &str, inst: &Instance, rows: &[Row]) -> Report {
    let rows: Vec<RowReport> = rows
        .iter()
        .map(|r| {
            let out = evaluate_row(inst, &r.check);
            let detail = out
                .verdict
                .as_ref()
                .filter(|v| !v.passed())
                .map(ToString::to_string);
            RowReport {
                check: r.check.clone(),
                expected: r.expect.clone(),
                ok: out.actual == r.expect,
                actual: out.actual,
                detail,
            }
        })
        .collect();
    let pass = rows.iter().all(|r| r.ok);
    Report {
        fixture: fixture.to_string(),
        rows,
        pass,
    }
}

/// Run a bundle's own rows at its sample point.
pub fn verify_bundle(bundle: &FixtureBundle) -> Report {
    verify_rows(bundle.name, &bundle.instance, &bundle.instance.rows)
}

pub fn verify_fixture(name: &str) -> Result<Report> {
    Ok(verify_bundle(&load_fixture(name)?))
}

/// Apply the bundle's perturbation and report, per targeted row, the outcome
/// after perturbing and whether it differs from the expectation.
pub fn run_negative_control(bundle: &FixtureBundle) -> Result<Vec<(String, String, bool)>> {
    let neg = &bundle.negative;
    let perturbed = match neg.perturbation {
        Perturbation::UPlusE11 => {
            let mut u = bundle.instance.u.clone();
            u.add_scaled(&Scalar::one(), &Element::basis(u.dim(), 0));
            bundle.instance_with_u(&bundle.sample, u)?
        }
        Perturbation::OperatorPlusIdentity => {
            let mut inst = bundle.instance.clone();
            let r = operator_of(&inst)?;
            inst.operator = Some(r.add(&LinearOperator::identity(r.dim())));
            inst
        }
    };
    neg.flips
        .iter()
        .map(|check| {
            let expected = bundle
                .instance
                .rows
                .iter()
                .find(|r| &r.check == check)
                .map(|r| r.expect.clone())
                .ok_or_else(|| {
                    Error::Format(format!("negative control targets unknown row {check:?}"))
                })?;
            let actual = evaluate_row(&perturbed, check).actual;
            let flipped = actual != expected;
            Ok((check.clone(), actual, flipped))
        })
        .collect()
}

/// Certify every `pass` row over the bundle's grid. `None` when the fixture
/// declares no grid.
pub fn certify_fixture(bundle: &FixtureBundle) -> Result<Option<Certificate>> {
    let Some(grid) = &bundle.grid else {
        return Ok(None);
    };
    certify_fixture_on(bundle, grid).map(Some)
}

/// [`certify_fixture`] on an explicit grid.
pub fn certify_fixture_on(bundle: &FixtureBundle, grid: &[Vec<Scalar>]) -> Result<Certificate> {
    certify_parametric(bundle.params(), grid, |point| {
        let inst = bundle.instance_at(point)?;
        for r in inst.rows.iter().filter(|r| r.expect == "pass") {
            let out = evaluate_row(&inst, &r.check);
            match out.verdict {
                Some(v) if !v.passed() => return Ok(v),
                Some(_) => {}
                None => {
                    return Err(Error::Strategy(format!(
                        "row {} gave {} during certification",
                        r.check, out.actual
                    )))
                }
            }
        }
        Ok(Verdict::Pass)
    })
}

pub fn load_fixture(name: &str) -> Result<FixtureBundle> {
    let def = match name {
        "F1" => f1(),
        "F1b" => f1b(),
        "F2" => f2(),
        "F3" => f3(),
        "F3b" => f3b(),
        "F4" => f4(),
        "F5" => f5(),
        "F6" => f6(),
        "F7" => f7(),
        "F8" => f8(),
        "F9" => f9(),
        "F10" => f10(),
        "F11" => f11(),
        other => return Err(Error::UnknownFixture(other.to_string())),
    };
    let instance = (def.build)(&def.sample, def.u_family.at(&def.sample)?)?;
    Ok(FixtureBundle {
        name: def.name,
        anchor: def.anchor,
        note: def.note,
        u_family: def.u_family,
        sample: def.sample,
        grid: def.grid,
        negative: def.negative,
        instance,
        build: def.build,
    })
}

struct Definition {
    name: &'static str,
    anchor: &'static str,
    note: Option<&'static str>,
    u_family: ElementFamily,
    sample: Vec<Scalar>,
    grid: Option<Vec<Vec<Scalar>>>,
    negative: NegativeControl,
    build: Builder,
}

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn ints(ns: &[i64]) -> Vec<Scalar> {
    ns.iter().map(|&n| s(n)).collect()
}

fn range(lo: i64, hi: i64) -> Vec<Scalar> {
    (lo..=hi).map(s).collect()
}

/// Row-major square matrix as an element of `M_n`.
fn mat(rows: Vec<Vec<Scalar>>) -> Element {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "square matrix");
    Element::new(rows.into_iter().flatten().collect())
}

fn imat(rows: &[&[i64]]) -> Element {
    mat(rows.iter().map(|r| ints(r)).collect())
}

/// `E_ij` in `M_n`, 1-based as in matrix notation.
fn unit(n: usize, i: usize, j: usize) -> Element {
    Element::basis(n * n, (i - 1) * n + (j - 1))
}

/// `column · row^T` in `M_n`.
fn outer(column: &[Scalar], row: &[Scalar]) -> Element {
    mat(column
        .iter()
        .map(|c| row.iter().map(|r| c * r).collect())
        .collect())
}

fn negative(perturbation: Perturbation, flips: &[&str]) -> NegativeControl {
    NegativeControl {
        perturbation,
        flips: flips.iter().map(ToString::to_string).collect(),
    }
}

/// Instance over the subalgebra spanned by `basis`, with the operator acting
/// on `shape(induced algebra)`.
fn instance(
    ambient: Algebra,
    basis: Vec<Element>,
    shape: impl FnOnce(Algebra) -> Result<Algebra>,
    u: Element,
    rows: Vec<Row>,
) -> Result<Instance> {
    let (induced, embedding) = induce_subalgebra(&ambient, basis)?;
    let algebra = shape(induced)?;
    let operator = left_multiplication_operator(&embedding, &u).ok();
    Ok(Instance {
        embedding,
        algebra,
        u,
        operator,
        rows,
    })
}

fn m3() -> Algebra {
    Algebra::matrix_algebra(3).expect("positive size")
}

fn m2() -> Algebra {
    Algebra::matrix_algebra(2).expect("positive size")
}

/// Matrices whose rows are multiples of `w`: the span of `e_i w^T`.
fn rows_proportional_to(w: &[i64]) -> Vec<Element> {
    let w = ints(w);
    (0..3)
        .map(|i| {
            let mut e = vec![Scalar::zero(); 3];
            e[i] = Scalar::one();
            outer(&e, &w)
        })
        .collect()
}

/// Equal first two columns and zero third column.
fn f1_basis() -> Vec<Element> {
    rows_proportional_to(&[1, 1, 0])
}

fn f1_family_u(t: &[Scalar], sign: bool) -> Element {
    // sign = true: second row 1 - first row; false: second row = -first row
    let (a, b, c, e, f, g) = (&t[0], &t[1], &t[2], &t[3], &t[4], &t[5]);
    let second = |x: &Scalar, shift: bool| if shift { &s(1) - x } else { -x };
    mat(vec![
        vec![a.clone(), b.clone(), c.clone()],
        vec![second(a, sign), second(b, sign), -c],
        vec![e.clone(), f.clone(), g.clone()],
    ])
}

fn six_params() -> Vec<Parameter> {
    ["a", "b", "c", "e", "f", "g"]
        .iter()
        .map(|n| Parameter::polynomial(n, 2))
        .collect()
}

fn f1() -> Definition {
    Definition {
        name: "F1",
        anchor: "General right identity of the 3-dim subalgebra of M3 with equal first two columns; left multiplication is an endomorphism.",
        note: None,
        u_family: ElementFamily::new(six_params(), |t| f1_family_u(t, true)),
        sample: ints(&[2, -1, 3, 1, 4, -2]),
        grid: Some(vec![range(0, 2); 6]),
        negative: negative(Perturbation::UPlusE11, &["element:right_identity", "operator:endomorphism"]),
        build: Arc::new(|_, u| {
            let rows = vec![
                pass("algebra:associativity"),
                fail("algebra:commutativity"),
                pass("element:right_identity"),
                pass("element:stabilize"),
                pass("operator:endomorphism"),
                row("solve:right_identity,stabilize", "dim=6"),
                row("solve:right_identity,right_annihilator", "dim=none"),
            ];
            instance(m3(), f1_basis(), Ok, u, rows)
        }),
    }
}

fn f1b_u(t: &[Scalar]) -> Element {
    let b = &t[0];
    let one = s(1);
    mat(vec![
        vec![one.clone(), b.clone(), b.clone()],
        vec![s(0), &one - b, -b],
        vec![s(0), b - &one, b.clone()],
    ])
}

fn f1b() -> Definition {
    Definition {
        name: "F1b",
        anchor: "One-parameter idempotent right identity on the F1 subalgebra; the operator is an idempotent endomorphism and its bracket is Lie.",
        note: None,
        u_family: ElementFamily::new(vec![Parameter::polynomial("b", 2)], f1b_u),
        sample: ints(&[2]),
        grid: Some(vec![range(0, 7)]),
        negative: negative(Perturbation::UPlusE11, &["element:idempotent", "operator:idempotent_op"]),
        build: Arc::new(|_, u| {
            let rows = vec![
                pass("element:right_identity"),
                pass("element:stabilize"),
                pass("element:idempotent"),
                pass("operator:endomorphism"),
                pass("operator:idempotent_op"),
                pass("derived:lie_endo:antisymmetry"),
                pass("derived:lie_endo:jacobi"),
            ];
            instance(m3(), f1_basis(), Ok, u, rows)
        }),
    }
}

fn f2() -> Definition {
    Definition {
        name: "F2",
        anchor: "Permutation matrix swapping the last two coordinates is an involutive right identity of the 6-dim subalgebra of M3 with equal last two columns.",
        note: None,
        u_family: ElementFamily::new(vec![], |_| imat(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]])),
        sample: vec![],
        grid: None,
        negative: negative(Perturbation::UPlusE11, &["element:rb_weighted(0,-1)", "operator:involution_op"]),
        build: Arc::new(|_, u| {
            let basis = vec![
                unit(3, 1, 1),
                unit(3, 2, 1),
                unit(3, 3, 1),
                &unit(3, 1, 2) + &unit(3, 1, 3),
                &unit(3, 2, 2) + &unit(3, 2, 3),
                &unit(3, 3, 2) + &unit(3, 3, 3),
            ];
            let rows = vec![
                pass("element:right_identity"),
                pass("element:stabilize"),
                // u² = 1
                pass("element:rb_weighted(0,-1)"),
                fail("element:idempotent"),
                pass("operator:endomorphism"),
                pass("operator:involution_op"),
                fail("operator:idempotent_op"),
                row("solve:right_identity,stabilize", "dim=3"),
            ];
            instance(m3(), basis, Ok, u, rows)
        }),
    }
}

fn jordan_plus(a: Algebra) -> Result<Algebra> {
    derive(&a, None, &Construction::JordanPlus)
}

fn f3() -> Definition {
    Definition {
        name: "F3",
        anchor: "Rank-one idempotent right identity on the symmetrized product of a 3-dim matrix subalgebra; the induced operator yields Jordan products.",
        note: Some("x∘₂y = R(x)∘y coincides with x∘y because R is idempotent."),
        u_family: ElementFamily::new(vec![], |_| imat(&[&[1, -1, 1], &[1, -1, 1], &[1, -1, 1]])),
        sample: vec![],
        grid: None,
        negative: negative(Perturbation::UPlusE11, &["element:idempotent", "operator:idempotent_op"]),
        build: Arc::new(|_, u| {
            let rows = vec![
                fail("algebra:associativity"),
                pass("algebra:commutativity"),
                pass("algebra:jordan_flex"),
                pass("algebra:jordan_main"),
                pass("element:idempotent"),
                pass("element:right_identity"),
                pass("element:stabilize"),
                pass("operator:idempotent_op"),
                pass("operator:endomorphism"),
                pass("derived:jordan_endo_both:jordan_flex"),
                pass("derived:jordan_endo_both:jordan_main"),
                pass("operator@jordan_endo_both:endomorphism"),
                pass("derived:jordan_endo_both/jordan_endo_left:jordan_flex"),
                pass("derived:jordan_endo_both/jordan_endo_left:jordan_main"),
            ];
            instance(m3(), rows_proportional_to(&[1, -1, 1]), jordan_plus, u, rows)
        }),
    }
}

fn f3b() -> Definition {
    Definition {
        name: "F3b",
        anchor: "The F1b family acting on the symmetrized product of the F1 subalgebra; R(x)∗R(y) is a Jordan product.",
        note: None,
        // jordan_main on x∘y = R(x)∗R(y): three products, each quadratic in b
        u_family: ElementFamily::new(vec![Parameter::polynomial("b", 6)], f1b_u),
        sample: ints(&[2]),
        grid: Some(vec![range(0, 7)]),
        negative: negative(Perturbation::UPlusE11, &["element:idempotent", "operator:idempotent_op"]),
        build: Arc::new(|_, u| {
            let rows = vec![
                fail("algebra:associativity"),
                pass("algebra:commutativity"),
                pass("element:idempotent"),
                pass("element:right_identity"),
                pass("element:stabilize"),
                pass("operator:idempotent_op"),
                pass("operator:endomorphism"),
                pass("derived:jordan_endo_both:jordan_flex"),
                pass("derived:jordan_endo_both:jordan_main"),
            ];
            instance(m3(), f1_basis(), jordan_plus, u, rows)
        }),
    }
}

fn f4() -> Definition {
    Definition {
        name: "F4",
        anchor: "Rank-one idempotent right identity on the 3-dim subalgebra of M3 with rows proportional to (-1,1,1); two Leibniz brackets.",
        note: Some("The bracket R(x)y - R(y)R(x) vanishes identically on this subalgebra; R(a)b - bR(a) does not."),
        u_family: ElementFamily::new(vec![], |_| imat(&[&[-1, 1, 1], &[-1, 1, 1], &[-1, 1, 1]])),
        sample: vec![],
        grid: None,
        negative: negative(Perturbation::UPlusE11, &["element:idempotent", "operator:idempotent_op"]),
        build: Arc::new(|_, u| {
            let rows = vec![
                pass("algebra:associativity"),
                pass("element:idempotent"),
                pass("element:right_identity"),
                pass("element:stabilize"),
                pass("operator:idempotent_op"),
                pass("operator:endomorphism"),
                pass("derived:leibniz_endo:left_leibniz"),
                pass("derived:leibniz_endo:antisymmetry"),
                pass("derived:leibniz_comm:left_leibniz"),
                fail("derived:leibniz_comm:antisymmetry"),
            ];
            instance(m3(), rows_proportional_to(&[-1, 1, 1]), Ok, u, rows)
        }),
    }
}

fn f5() -> Definition {
    Definition {
        name: "F5",
        anchor: "First-column matrices under the entrywise product; left multiplication by E11 in the usual product is an idempotent endomorphism, giving pre-Lie products.",
        note: None,
        u_family: ElementFamily::new(vec![], |_| unit(2, 1, 1)),
        sample: vec![],
        grid: None,
        negative: negative(Perturbation::UPlusE11, &["operator:idempotent_op", "operator:endomorphism"]),
        build: Arc::new(|_, u| {
            let rows = vec![
                pass("algebra:associativity"),
                pass("algebra:commutativity"),
                pass("element:idempotent"),
                pass("element:right_identity"),
                pass("element:stabilize"),
                pass("operator:idempotent_op"),
                pass("operator:endomorphism"),
                pass("derived:prelie_endo:left_prelie"),
                pass("derived:prelie_endo_alt:left_prelie"),
            ];
            // basis E11, E21 matches the 2×1 entrywise algebra's order
            instance(m2(), vec![unit(2, 1, 1), unit(2, 2, 1)], |_| hadamard_algebra(2, 1), u, rows)
        }),
    }
}

fn f6() -> Definition {
    Definition {
        name: "F6",
        anchor:
            "General right annihilator of the F1 subalgebra; left multiplication is a derivation.",
        note: None,
        u_family: ElementFamily::new(six_params(), |t| f1_family_u(t, false)),
        sample: ints(&[2, -1, 3, 1, 4, -2]),
        grid: Some(vec![range(0, 2); 6]),
        negative: negative(
            Perturbation::UPlusE11,
            &["element:right_annihilator", "operator:derivation"],
        ),
        build: Arc::new(|_, u| {
            let rows = vec![
                pass("element:right_annihilator"),
                pass("element:stabilize"),
                pass("operator:derivation"),
                row("solve:right_annihilator", "dim=6"),
                row("solve:right_annihilator,stabilize", "dim=6"),
            ];
            instance(m3(), f1_basis(), Ok, u, rows)
        }),
    }
}

/// Parameters `(b, β, λ, n, p)`; `a = -βb` and `q = -an - bp`.
fn f7_vectors(t: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>, Vec<Scalar>) {
    let (b, beta, lambda, n, p) = (&t[0], &t[1], &t[2], &t[3], &t[4]);
    let a = -&(beta * b);
    let q = -&(&(&a * n) + &(b * p));
    let column = vec![a, b.clone(), s(1)];
    let row_u = vec![s(1), beta.clone(), lambda * beta];
    let row_x = vec![n.clone(), p.clone(), q];
    (column, row_u, row_x)
}

fn f7() -> Definition {
    let params = ["b", "beta", "lambda", "n", "p"]
        .iter()
        .map(|n| Parameter::polynomial(n, 2))
        .collect();
    Definition {
        name: "F7",
        anchor: "Rank-one u with u² = λβ·u annihilating a 1-dim subalgebra of M3 from the right; R = λβ·id.",
        note: Some("The subalgebra product is identically zero, so every identity and the derivation rule hold vacuously; the negative control targets R² = λβR instead."),
        u_family: ElementFamily::new(params, |t| {
            let (column, row_u, _) = f7_vectors(t);
            outer(&column, &row_u)
        }),
        sample: ints(&[1, 2, 3, 1, 1]),
        grid: None,
        negative: negative(Perturbation::OperatorPlusIdentity, &["operator:scaled_idempotent_op(6)"]),
        build: Arc::new(|t, u| {
            let (column, _, row_x) = f7_vectors(t);
            let gamma = &t[2] * &t[1];
            let rows = vec![
                pass("algebra:associativity"),
                pass("algebra:commutativity"),
                pass(format!("element:scaled({gamma})")),
                pass("element:right_annihilator"),
                pass("element:stabilize"),
                pass(format!("operator:scaled_idempotent_op({gamma})")),
                pass("operator:derivation"),
                pass("derived:prelie_diff:left_prelie"),
            ];
            instance(m3(), vec![outer(&column, &row_x)], Ok, u, rows)
        }),
    }
}

fn f8() -> Definition {
    Definition {
        name: "F8",
        anchor: "diag(1,1,0) commutes with the subalgebra of M3 spanned by I₂ ⊕ 0, E12 and E33; left multiplication is an averaging endomorphism.",
        note: Some("The subalgebra is commutative, so the bracket xR(y) - yR(x) vanishes identically and its identities hold trivially."),
        u_family: ElementFamily::new(vec![], |_| imat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]])),
        sample: vec![],
        grid: None,
        // E11 does not commute with E12, and E11·(I₂ ⊕ 0) leaves the span
        negative: negative(Perturbation::UPlusE11, &["element:idempotent", "element:centralize", "element:stabilize"]),
        build: Arc::new(|_, u| {
            let basis = vec![&unit(3, 1, 1) + &unit(3, 2, 2), unit(3, 1, 2), unit(3, 3, 3)];
            let rows = vec![
                pass("algebra:associativity"),
                pass("algebra:commutativity"),
                pass("element:idempotent"),
                pass("element:centralize"),
                pass("element:stabilize"),
                pass("operator:left_averaging"),
                pass("operator:endomorphism"),
                pass("operator:idempotent_op"),
                pass("derived:flexible_avg:flexible"),
                pass("derived:lie_endo:jacobi"),
                pass("derived:lie_endo:flexible"),
            ];
            instance(m3(), basis, Ok, u, rows)
        }),
    }
}

/// `[[0, a], [0, b]]` inside `M2`.
fn second_column() -> Vec<Element> {
    vec![unit(2, 1, 2), unit(2, 2, 2)]
}

fn f9() -> Definition {
    let params = vec![Parameter::polynomial("x", 4), Parameter::polynomial("y", 4)];
    Definition {
        name: "F9",
        anchor: "Square-zero u = [[xy, -x²], [y², -xy]] gives a weight-0 Rota–Baxter operator on second-column 2×2 matrices.",
        note: Some("Both operand orders of the weight-0 identity hold for this family."),
        u_family: ElementFamily::new(params, |t| {
            let (x, y) = (&t[0], &t[1]);
            mat(vec![vec![x * y, -&(x * x)], vec![y * y, -&(x * y)]])
        }),
        sample: ints(&[1, 1]),
        grid: Some(vec![range(0, 4), range(0, 4)]),
        negative: negative(Perturbation::UPlusE11, &["element:nilpotent2", "operator:rota_baxter(0)"]),
        build: Arc::new(|_, u| {
            let rows = vec![
                pass("algebra:associativity"),
                pass("element:nilpotent2"),
                pass("element:stabilize"),
                pass("operator:rota_baxter(0)"),
                pass("operator:rota_baxter_swapped(0)"),
            ];
            instance(m2(), second_column(), Ok, u, rows)
        }),
    }
}

fn f10() -> Definition {
    let params = vec![Parameter::polynomial("x", 4), Parameter::laurent("y", 4)];
    Definition {
        name: "F10",
        anchor: "Skew-idempotent u = [[x, y], [-(x²+x)/y, -x-1]] gives a weight-1 Rota–Baxter operator on second-column 2×2 matrices.",
        note: None,
        u_family: ElementFamily::new(params, |t| {
            let (x, y) = (&t[0], &t[1]);
            let lower = &(&-&(x * x) - x) / y;
            mat(vec![vec![x.clone(), y.clone()], vec![lower, &-x - &s(1)]])
        }),
        sample: ints(&[0, 1]),
        grid: Some(vec![range(0, 4), range(1, 5)]),
        negative: negative(Perturbation::UPlusE11, &["element:skew_idempotent", "operator:rota_baxter(1)"]),
        build: Arc::new(|_, u| {
            let rows = vec![
                pass("element:skew_idempotent"),
                pass("element:stabilize"),
                pass("operator:rota_baxter(1)"),
            ];
            instance(m2(), second_column(), Ok, u, rows)
        }),
    }
}

fn f11() -> Definition {
    let params = vec![
        Parameter::polynomial("x", 4),
        Parameter::laurent("y", 4),
        Parameter::polynomial("lambda", 2),
        Parameter::polynomial("beta", 2),
    ];
    Definition {
        name: "F11",
        anchor: "u = [[x, y], [-(x²+λx+β)/y, -x-λ]] satisfies u² = -λu - β and gives a Rota–Baxter operator of weight (λ, β).",
        note: None,
        u_family: ElementFamily::new(params, |t| {
            let (x, y, lambda, beta) = (&t[0], &t[1], &t[2], &t[3]);
            let lower = &(&(&-&(x * x) - &(lambda * x)) - beta) / y;
            mat(vec![vec![x.clone(), y.clone()], vec![lower, &-x - lambda]])
        }),
        sample: ints(&[0, 1, 1, 2]),
        grid: Some(vec![range(0, 4), range(1, 5), range(0, 2), range(0, 2)]),
        negative: negative(
            Perturbation::UPlusE11,
            &["element:rb_weighted(1,2)", "operator:rota_baxter_weighted(1,2)"],
        ),
        build: Arc::new(|t, u| {
            let (lambda, beta) = (&t[2], &t[3]);
            let rows = vec![
                pass(format!("element:rb_weighted({lambda},{beta})")),
                pass("element:stabilize"),
                pass(format!("operator:rota_baxter_weighted({lambda},{beta})")),
            ];
            instance(m2(), second_column(), Ok, u, rows)
        }),
    }
}
