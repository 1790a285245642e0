//! Acceptance run: one line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use nonassoc::fixtures::{
    certify_fixture, list_fixtures, load_fixture, run_negative_control, verify_fixture,
    FixtureBundle,
};
use nonassoc::identity::{check_identity_exhaustive, witness_reproduces};
use nonassoc::random::{
    associative_idempotent_endomorphism, commutative_derivation_square_scalar,
    commutative_idempotent_endomorphism, flexible_with_averaging_endomorphism, quadratic_element,
    random_algebra, QuadraticKind, RandomInstance,
};
use nonassoc::{
    check_identity, check_identity_random, check_operator_property, derive, Algebra, Construction,
    IdentityName, LinearConstraint, OperatorProperty, QuadraticConstraint, Scalar, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CASES: usize = 100;

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn main() {
    let criteria: [(&str, Criterion); 6] = [
        ("fixture suite", fixture_suite),
        ("proposition chains", proposition_chains),
        ("polarization soundness", polarization_soundness),
        ("negative controls", negative_controls),
        ("parametric certification", parametric_certification),
        ("dim-16 identity suite", dim16_performance),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {elapsed:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail}; {elapsed:.2}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture_suite() -> Outcome {
    let mut rows = 0;
    for name in list_fixtures() {
        let report = verify_fixture(name).map_err(|e| e.to_string())?;
        ensure(report.pass, || format!("{report}"))?;
        rows += report.rows.len();
    }
    Ok(format!("13 fixtures, {rows} rows exact"))
}

/// Fail unless `v` passed; `what` names the check for the message.
fn holds(v: Verdict, what: &str, inst: &RandomInstance) -> Result<(), String> {
    ensure(v.passed(), || {
        format!("{what} failed on [{}]: {v}", inst.recipe)
    })
}

fn prop(inst: &RandomInstance, p: OperatorProperty) -> Result<(), String> {
    let what = format!("hypothesis {p}");
    let v =
        check_operator_property(&inst.algebra, &inst.operator, &p).map_err(|e| e.to_string())?;
    holds(v, &what, inst)
}

/// The conclusion, with the direct evaluation route as an independent check
/// on the polarized one.
fn derived_identity(
    inst: &RandomInstance,
    c: &Construction,
    id: IdentityName,
) -> Result<(), String> {
    let a = derive(&inst.algebra, Some(&inst.operator), c).map_err(|e| e.to_string())?;
    let polarized = check_identity(&a, id);
    let direct = check_identity_exhaustive(&a, id);
    ensure(polarized.passed() == direct.passed(), || {
        format!("routes disagree on {c}:{id} for [{}]", inst.recipe)
    })?;
    holds(polarized, &format!("{c}:{id}"), inst)
}

struct Chain {
    dims: BTreeSet<usize>,
}

impl Chain {
    fn run(
        seed: u64,
        mut case: impl FnMut(&mut ChaCha8Rng) -> Result<usize, String>,
    ) -> Result<Chain, String> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut dims = BTreeSet::new();
        for k in 0..CASES {
            let dim = case(&mut rng).map_err(|e| format!("case {k}: {e}"))?;
            dims.insert(dim);
        }
        Ok(Chain { dims })
    }

    fn summary(&self, label: char) -> String {
        let dims: Vec<String> = self.dims.iter().map(ToString::to_string).collect();
        format!("{label}: {CASES} cases dims {{{}}}", dims.join(","))
    }
}

fn associative_hypotheses(inst: &RandomInstance) -> Result<(), String> {
    holds(inst.algebra.is_associative(), "associativity", inst)?;
    prop(inst, OperatorProperty::Endomorphism)?;
    prop(inst, OperatorProperty::IdempotentOp)
}

fn proposition_chains() -> Outcome {
    let c = |s: &str| s.parse::<Construction>().expect("catalog name");
    let mut lines = Vec::new();

    let a = Chain::run(0xa, |rng| {
        let inst = associative_idempotent_endomorphism(rng);
        associative_hypotheses(&inst)?;
        derived_identity(&inst, &c("lie_endo"), IdentityName::Antisymmetry)?;
        derived_identity(&inst, &c("lie_endo"), IdentityName::Jacobi)?;
        Ok(inst.algebra.dim())
    })?;
    lines.push(a.summary('a'));

    let b = Chain::run(0xb, |rng| {
        let inst = associative_idempotent_endomorphism(rng);
        associative_hypotheses(&inst)?;
        derived_identity(&inst, &c("leibniz_endo"), IdentityName::LeftLeibniz)?;
        derived_identity(&inst, &c("leibniz_comm"), IdentityName::LeftLeibniz)?;
        Ok(inst.algebra.dim())
    })?;
    lines.push(b.summary('b'));

    let cc = Chain::run(0xc, |rng| {
        let inst = commutative_idempotent_endomorphism(rng);
        associative_hypotheses(&inst)?;
        holds(inst.algebra.is_commutative(), "commutativity", &inst)?;
        derived_identity(&inst, &c("prelie_endo"), IdentityName::LeftPrelie)?;
        derived_identity(&inst, &c("prelie_endo_alt"), IdentityName::LeftPrelie)?;
        Ok(inst.algebra.dim())
    })?;
    lines.push(cc.summary('c'));

    let mut nonzero_alpha = 0;
    let d = Chain::run(0xd, |rng| {
        let (inst, alpha) = commutative_derivation_square_scalar(rng);
        holds(inst.algebra.is_associative(), "associativity", &inst)?;
        holds(inst.algebra.is_commutative(), "commutativity", &inst)?;
        prop(&inst, OperatorProperty::Derivation)?;
        prop(&inst, OperatorProperty::ScaledInvolutionOp(alpha.clone()))?;
        if !alpha.is_zero() {
            nonzero_alpha += 1;
        }
        derived_identity(&inst, &c("prelie_diff"), IdentityName::LeftPrelie)?;
        let shift = Scalar::frac(rng.random_range(-6..=6), rng.random_range(1..=3));
        let novikov = Construction::NovikovAffine(shift);
        derived_identity(&inst, &novikov, IdentityName::LeftPrelie)?;
        derived_identity(&inst, &novikov, IdentityName::NovikovRightComm)?;
        Ok(inst.algebra.dim())
    })?;
    lines.push(format!(
        "{} ({nonzero_alpha} with α≠0, null product)",
        d.summary('d')
    ));

    let e = Chain::run(0xe, |rng| {
        let inst = flexible_with_averaging_endomorphism(rng);
        holds(
            check_identity(&inst.algebra, IdentityName::Flexible),
            "flexible",
            &inst,
        )?;
        prop(&inst, OperatorProperty::IdempotentOp)?;
        prop(&inst, OperatorProperty::Endomorphism)?;
        prop(&inst, OperatorProperty::LeftAveraging)?;
        derived_identity(&inst, &c("flexible_avg"), IdentityName::Flexible)?;
        Ok(inst.algebra.dim())
    })?;
    lines.push(e.summary('e'));

    let mut kinds = [0usize; 3];
    let f = Chain::run(0xf, |rng| {
        let kind_seed: u8 = rng.random_range(0..3);
        let (inst, kind) = quadratic_element(kind_seed, rng);
        let (emb, u) = (
            inst.embedding.as_ref().expect("u-induced"),
            inst.u.as_ref().expect("u-induced"),
        );
        let (quad, conclusion) = match &kind {
            QuadraticKind::SkewIdempotent => (
                QuadraticConstraint::SkewIdempotent,
                OperatorProperty::RotaBaxter(Scalar::one()),
            ),
            QuadraticKind::SquareZero => (
                QuadraticConstraint::Nilpotent2,
                OperatorProperty::RotaBaxter(Scalar::zero()),
            ),
            QuadraticKind::Weighted { lambda, beta } => (
                QuadraticConstraint::RbWeighted {
                    lambda: lambda.clone(),
                    beta: beta.clone(),
                    unit: None,
                },
                OperatorProperty::RotaBaxterWeighted {
                    lambda: lambda.clone(),
                    beta: beta.clone(),
                },
            ),
        };
        kinds[usize::from(kind_seed)] += 1;
        holds(
            quad.verify(emb.ambient(), u).map_err(|e| e.to_string())?,
            &format!("element {quad}"),
            &inst,
        )?;
        holds(
            LinearConstraint::Stabilize.verify(emb, u),
            "element stabilize",
            &inst,
        )?;
        // the operator is rebuilt from u, not taken from the generator
        let r = nonassoc::left_multiplication_operator(emb, u).map_err(|e| e.to_string())?;
        ensure(r == inst.operator, || {
            "generator operator differs from u·x".into()
        })?;
        prop(&inst, conclusion)?;
        Ok(inst.algebra.dim())
    })?;
    lines.push(format!(
        "{} (u²=-u: {}, u²=0: {}, weighted: {})",
        f.summary('f'),
        kinds[0],
        kinds[1],
        kinds[2]
    ));

    for chain in [&a, &b, &cc, &d, &e, &f] {
        ensure(
            chain.dims.contains(&2) && chain.dims.iter().all(|d| (2..=6).contains(d)),
            || format!("dimension coverage {:?}", chain.dims),
        )?;
    }
    Ok(format!("all non-fixture generators; {}", lines.join("; ")))
}

/// The operator's algebra, the ambient and every derived algebra a row names.
fn fixture_algebras(bundle: &FixtureBundle) -> Vec<(String, Algebra)> {
    let inst = &bundle.instance;
    let mut out = vec![
        (format!("{} algebra", bundle.name), inst.algebra.clone()),
        (format!("{} ambient", bundle.name), inst.ambient().clone()),
    ];
    let mut seen = BTreeSet::new();
    for row in &inst.rows {
        let chain = row
            .check
            .strip_prefix("derived:")
            .and_then(|r| r.rsplit_once(':'))
            .map(|(c, _)| c)
            .or_else(|| {
                row.check
                    .strip_prefix("operator@")
                    .and_then(|r| r.split_once(':'))
                    .map(|(c, _)| c)
            });
        let Some(chain) = chain else { continue };
        if !seen.insert(chain.to_string()) {
            continue;
        }
        let mut a = inst.algebra.clone();
        for step in chain.split('/') {
            let c: Construction = step.parse().expect("fixture chains parse");
            a = derive(&a, inst.operator.as_ref(), &c).expect("fixture chains derive");
        }
        out.push((format!("{} {chain}", bundle.name), a));
    }
    out
}

fn polarization_soundness() -> Outcome {
    let mut algebras = 0;
    let mut comparisons = 0;
    let mut failing = 0;
    for name in list_fixtures() {
        let bundle = load_fixture(name).map_err(|e| e.to_string())?;
        for (label, a) in fixture_algebras(&bundle) {
            algebras += 1;
            for id in IdentityName::ALL {
                let exact = check_identity(&a, id);
                if !exact.passed() {
                    failing += 1;
                    ensure(witness_reproduces(&a, id, &exact), || {
                        format!("{label} {id}: witness does not reproduce")
                    })?;
                }
                for seed in 0..10 {
                    let random = check_identity_random(&a, id, 100, seed);
                    comparisons += 1;
                    ensure(random.passed() == exact.passed(), || {
                        format!("{label} {id} seed {seed}: exhaustive {exact} vs random {random}")
                    })?;
                    if !random.passed() {
                        ensure(witness_reproduces(&a, id, &random), || {
                            format!("{label} {id}: random witness")
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{algebras} algebras × 10 identities, {comparisons} seed comparisons agree, {failing} failing pairs with reproducing witnesses"
    ))
}

fn negative_controls() -> Outcome {
    let mut flips = 0;
    for name in list_fixtures() {
        let bundle = load_fixture(name).map_err(|e| e.to_string())?;
        let results = run_negative_control(&bundle).map_err(|e| e.to_string())?;
        ensure(!results.is_empty(), || {
            format!("{name} has no targeted rows")
        })?;
        for (check, actual, flipped) in results {
            ensure(flipped, || {
                format!("{name} {check} still {actual} after perturbation")
            })?;
            flips += 1;
        }
    }
    Ok(format!("13 fixtures, {flips} targeted rows flipped"))
}

fn parametric_certification() -> Outcome {
    let mut parts = Vec::new();
    for name in ["F1b", "F10", "F11"] {
        let bundle = load_fixture(name).map_err(|e| e.to_string())?;
        let grid = bundle
            .grid
            .as_ref()
            .ok_or_else(|| format!("{name} declares no grid"))?;
        if name == "F1b" {
            ensure(grid[0].len() == 8, || "F1b grid must have 8 points".into())?;
        }
        for (p, axis) in bundle.params().iter().zip(grid) {
            ensure(!p.nonzero || axis.iter().all(|v| !v.is_zero()), || {
                format!("{name} grid hits {}=0", p.name)
            })?;
        }
        let cert = certify_fixture(&bundle)
            .map_err(|e| e.to_string())?
            .expect("grid present");
        ensure(cert.holds(), || format!("{name}: {}", cert.verdict()))?;
        let nonassoc::Certificate::Holds { points } = cert else {
            unreachable!()
        };
        parts.push(format!("{name} {points} points"));
    }
    Ok(parts.join(", "))
}

fn dim16_performance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let m4 = Algebra::matrix_algebra(4).map_err(|e| e.to_string())?;
    let dense = random_algebra(16, &mut rng);
    let mut total = Duration::ZERO;
    let mut results = Vec::new();
    for (label, a) in [("M4", &m4), ("random dense", &dense)] {
        let start = Instant::now();
        let verdicts: Vec<(IdentityName, Verdict)> = IdentityName::ALL
            .iter()
            .map(|&id| (id, check_identity(a, id)))
            .collect();
        let elapsed = start.elapsed();
        total += elapsed;
        ensure(elapsed < Duration::from_secs(5), || {
            format!("{label} took {elapsed:?}")
        })?;
        let passed: Vec<&str> = verdicts
            .iter()
            .filter(|(_, v)| v.passed())
            .map(|(id, _)| id.name())
            .collect();
        results.push(format!(
            "{label} {:.2}s passes [{}]",
            elapsed.as_secs_f64(),
            passed.join(",")
        ));
        if label == "M4" {
            // associative and noncommutative: the associative-forced identities
            // must pass, the symmetric ones must not
            for (id, v) in &verdicts {
                let expect = matches!(
                    id,
                    IdentityName::Associativity
                        | IdentityName::LeftPrelie
                        | IdentityName::Flexible
                        | IdentityName::JordanFlex
                        | IdentityName::JordanMain
                );
                ensure(v.passed() == expect, || format!("M4 {id}: {v}"))?;
            }
        } else {
            ensure(passed.is_empty(), || {
                format!("random dense algebra passes {passed:?}")
            })?;
        }
    }
    Ok(format!(
        "{}; total {:.2}s",
        results.join("; "),
        total.as_secs_f64()
    ))
}
