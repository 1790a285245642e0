use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use nonassoc::fixtures::{
    certify_fixture, list_fixtures, load_fixture, verify_fixture, verify_fixture_dir,
};
use nonassoc::io::{
    algebra_to_json, read_algebra, read_element, read_embedding, read_grid, read_operator,
};
use nonassoc::search::parse_linear_list;
use nonassoc::{
    check_identity, check_identity_random, check_operator_property, derive, find_special,
    induce_subalgebra, left_multiplication_operator, Algebra, Construction, Embedding,
    IdentityName, LinearOperator, OperatorProperty, QuadraticConstraint, Scalar, Strategy, Verdict,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "nonassoc",
    version,
    about = "Exact checks on finite-dimensional algebras over the rationals"
)]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Basic properties of an algebra, and of an operator on it.
    Props(PropsArgs),
    /// Decide polynomial identities.
    Check(CheckArgs),
    /// Build a new algebra from an algebra and an operator.
    Derive(DeriveArgs),
    /// Find elements satisfying linear and quadratic side conditions.
    SearchElement(SearchArgs),
    /// Re-check a fixture against its recorded expectations.
    VerifyFixture(VerifyArgs),
    /// Print the names of the built-in fixtures.
    ListFixtures,
}

/// Where the algebra comes from: a structure-constant file, or the
/// subalgebra spanned by an embedding.
#[derive(Args)]
struct Source {
    /// Algebra file.
    #[arg(
        long,
        conflicts_with = "embedding",
        required_unless_present = "embedding"
    )]
    algebra: Option<PathBuf>,
    /// Embedding file; the algebra is the span of its basis.
    #[arg(long)]
    embedding: Option<PathBuf>,
    /// Ambient algebra file, overriding the one named in the embedding.
    #[arg(long, requires = "embedding")]
    ambient: Option<PathBuf>,
}

#[derive(Args)]
struct OperatorSource {
    /// Operator file.
    #[arg(long, conflicts_with = "from_u")]
    operator: Option<PathBuf>,
    /// Ambient element file; the operator is left multiplication by it.
    #[arg(long, requires = "embedding")]
    from_u: Option<PathBuf>,
}

#[derive(Args)]
struct PropsArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    op: OperatorSource,
    /// Operator property to check, e.g. `rota_baxter(1)`; repeatable. Without
    /// it every parameter-free property is reported and the exit code is 0.
    #[arg(long = "property")]
    properties: Vec<String>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    source: Source,
    /// Identity name, a comma-separated list, or `all`.
    #[arg(long)]
    identity: String,
    /// Random evaluation instead of the exact check: `trials=100,seed=7`.
    #[arg(long)]
    random: Option<String>,
}

#[derive(Args)]
struct DeriveArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    op: OperatorSource,
    #[arg(long)]
    construction: String,
    /// Construction parameter, `a=p/q`.
    #[arg(long)]
    param: Option<String>,
    /// Output algebra file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Ambient algebra file, overriding the one named in the embedding.
    #[arg(long)]
    ambient: Option<PathBuf>,
    #[arg(long)]
    embedding: PathBuf,
    /// Comma-separated linear constraints.
    #[arg(long, default_value = "")]
    lin: String,
    /// Quadratic constraint, e.g. `idempotent` or `rb_weighted(1,2)`.
    #[arg(long)]
    quad: String,
    /// Ambient element used as `1` in `rb_weighted`; defaults to the ambient unit.
    #[arg(long)]
    unit: Option<PathBuf>,
    /// Grid file of parameter points in the affine solution space.
    #[arg(
        long,
        conflicts_with = "univariate",
        required_unless_present = "univariate"
    )]
    grid: Option<PathBuf>,
    /// Pinned parameters with exactly one `?`, e.g. `1,?,0`.
    #[arg(long)]
    univariate: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Built-in fixture name or a fixture directory.
    target: String,
    /// Also certify the built-in fixture for every parameter value.
    #[arg(long)]
    certify: bool,
}

/// A rendered report and whether it counts as a pass.
struct Outcome {
    text: String,
    json: Value,
    pass: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("serializable")
                );
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Props(args) => props(args),
        Command::Check(args) => check(args),
        Command::Derive(args) => derive_cmd(args),
        Command::SearchElement(args) => search(args),
        Command::VerifyFixture(args) => verify(args),
        Command::ListFixtures => Ok(list()),
    }
}

fn load_source(source: &Source) -> Result<(Algebra, Option<Embedding>)> {
    if let Some(path) = &source.algebra {
        let a = read_algebra(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok((a, None));
    }
    let path = source.embedding.as_ref().expect("clap requires one source");
    let emb = load_embedding(path, source.ambient.as_deref())?;
    let (a, emb) = induce_subalgebra(emb.ambient(), emb.basis().to_vec())?;
    Ok((a, Some(emb)))
}

fn load_embedding(path: &Path, ambient: Option<&Path>) -> Result<Embedding> {
    let ambient = ambient
        .map(|p| read_algebra(p).with_context(|| format!("reading {}", p.display())))
        .transpose()?;
    read_embedding(path, ambient).with_context(|| format!("reading {}", path.display()))
}

fn load_operator(
    op: &OperatorSource,
    a: &Algebra,
    emb: Option<&Embedding>,
) -> Result<Option<LinearOperator>> {
    let r = match (&op.operator, &op.from_u) {
        (Some(path), _) => {
            read_operator(path).with_context(|| format!("reading {}", path.display()))?
        }
        (None, Some(path)) => {
            let u = read_element(path).with_context(|| format!("reading {}", path.display()))?;
            left_multiplication_operator(emb.expect("clap requires an embedding"), &u)?
        }
        (None, None) => return Ok(None),
    };
    if r.dim() != a.dim() {
        bail!(
            "operator has dimension {} but the algebra has dimension {}",
            r.dim(),
            a.dim()
        );
    }
    Ok(Some(r))
}

fn verdict_line(out: &mut String, label: &str, v: &Verdict) {
    writeln!(out, "{label}: {v}").expect("write to string");
}

fn props(args: PropsArgs) -> Result<Outcome> {
    let (a, emb) = load_source(&args.source)?;
    let r = load_operator(&args.op, &a, emb.as_ref())?;
    let requested: Vec<OperatorProperty> = args
        .properties
        .iter()
        .map(|p| p.parse())
        .collect::<nonassoc::Result<_>>()?;
    if !requested.is_empty() && r.is_none() {
        bail!("--property needs --operator or --from-u");
    }

    let assoc = a.is_associative();
    let comm = a.is_commutative();
    let unit = a.unit();
    let mut text = String::new();
    writeln!(text, "dim: {}", a.dim())?;
    verdict_line(&mut text, "associative", &assoc);
    verdict_line(&mut text, "commutative", &comm);
    writeln!(
        text,
        "unit: {}",
        unit.as_ref()
            .map_or("none".to_string(), ToString::to_string)
    )?;

    let mut pass = true;
    let mut ops = Vec::new();
    if let Some(r) = &r {
        let (props, strict) = if requested.is_empty() {
            let all = [
                "endomorphism",
                "idempotent_op",
                "involution_op",
                "derivation",
                "left_averaging",
            ];
            (
                all.iter()
                    .map(|p| p.parse().expect("known property"))
                    .collect(),
                false,
            )
        } else {
            (requested, true)
        };
        for p in props {
            let v = check_operator_property(&a, r, &p)?;
            verdict_line(&mut text, &format!("operator {p}"), &v);
            pass &= !strict || v.passed();
            ops.push(json!({ "property": p.to_string(), "result": v }));
        }
    }
    let json = json!({
        "dim": a.dim(),
        "associative": assoc,
        "commutative": comm,
        "unit": unit,
        "operator": ops,
    });
    Ok(Outcome { text, json, pass })
}

/// `trials=100,seed=7`, either key optional.
fn parse_random(s: &str) -> Result<(usize, u64)> {
    let (mut trials, mut seed) = (100, 0);
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("expected key=value in --random, got `{part}`"))?;
        match k.trim() {
            "trials" => trials = v.trim().parse().context("trials")?,
            "seed" => seed = v.trim().parse().context("seed")?,
            other => bail!("unknown --random key `{other}`"),
        }
    }
    Ok((trials, seed))
}

fn check(args: CheckArgs) -> Result<Outcome> {
    let (a, _) = load_source(&args.source)?;
    let ids: Vec<IdentityName> = if args.identity.trim() == "all" {
        IdentityName::ALL.to_vec()
    } else {
        args.identity
            .split(',')
            .map(|s| s.trim().parse())
            .collect::<nonassoc::Result<_>>()?
    };
    let random = args.random.as_deref().map(parse_random).transpose()?;

    let mut text = String::new();
    let mut results = Vec::new();
    let mut pass = true;
    for id in ids {
        let v = match random {
            Some((trials, seed)) => check_identity_random(&a, id, trials, seed),
            None => check_identity(&a, id),
        };
        verdict_line(&mut text, id.name(), &v);
        pass &= v.passed();
        results.push(json!({ "identity": id.name(), "result": v }));
    }
    let method = match random {
        Some((trials, seed)) => json!({ "random": { "trials": trials, "seed": seed } }),
        None => json!("exact"),
    };
    Ok(Outcome {
        text,
        json: json!({ "method": method, "results": results }),
        pass,
    })
}

fn derive_cmd(args: DeriveArgs) -> Result<Outcome> {
    let (a, emb) = load_source(&args.source)?;
    let r = load_operator(&args.op, &a, emb.as_ref())?;
    let param = args
        .param
        .as_deref()
        .map(|p| {
            let value = p
                .trim()
                .strip_prefix("a=")
                .ok_or_else(|| anyhow!("expected --param a=p/q, got `{p}`"))?;
            value.parse::<Scalar>().map_err(anyhow::Error::from)
        })
        .transpose()?;
    let construction = Construction::from_name(args.construction.trim(), param)?;
    let derived = derive(&a, r.as_ref(), &construction)?;
    let doc = algebra_to_json(&derived);
    let text = match &args.out {
        Some(path) => {
            fs::write(path, format!("{doc}\n"))
                .with_context(|| format!("writing {}", path.display()))?;
            format!(
                "wrote {} ({construction}, dim {})\n",
                path.display(),
                derived.dim()
            )
        }
        None => format!("{doc}\n"),
    };
    let algebra: Value = serde_json::from_str(&doc)?;
    Ok(Outcome {
        text,
        json: json!({ "construction": construction.to_string(), "algebra": algebra }),
        pass: true,
    })
}

fn parse_univariate(s: &str) -> Result<Vec<Option<Scalar>>> {
    s.split(',')
        .map(|p| match p.trim() {
            "?" => Ok(None),
            v => v.parse().map(Some).map_err(anyhow::Error::from),
        })
        .collect()
}

fn search(args: SearchArgs) -> Result<Outcome> {
    let emb = load_embedding(&args.embedding, args.ambient.as_deref())?;
    let lin = parse_linear_list(&args.lin)?;
    let mut quad: QuadraticConstraint = args.quad.parse()?;
    if let Some(path) = &args.unit {
        let u = read_element(path).with_context(|| format!("reading {}", path.display()))?;
        match &mut quad {
            QuadraticConstraint::RbWeighted { unit, .. } => *unit = Some(u),
            _ => bail!("--unit only applies to rb_weighted"),
        }
    }
    let strategy = match (&args.grid, &args.univariate) {
        (Some(path), _) => {
            Strategy::Grid(read_grid(path).with_context(|| format!("reading {}", path.display()))?)
        }
        (None, Some(pins)) => Strategy::Univariate(parse_univariate(pins)?),
        (None, None) => unreachable!("clap requires a strategy"),
    };
    let found = find_special(&emb, &lin, &quad, &strategy)?;

    let mut text = String::new();
    writeln!(text, "found {} element(s)", found.elements.len())?;
    for u in &found.elements {
        writeln!(text, "  {u}")?;
    }
    if let Some(line) = &found.irrational {
        let [c, b, _] = &line.min_poly;
        writeln!(
            text,
            "irrational solutions: {} + t·{} with t² + ({b})t + ({c}) = 0",
            line.offset, line.direction
        )?;
    }
    if let Some((offset, direction)) = &found.line {
        writeln!(text, "every point solves: {offset} + t·{direction}")?;
    }
    let pass = !found.elements.is_empty() || found.irrational.is_some() || found.line.is_some();
    Ok(Outcome {
        text,
        json: serde_json::to_value(&found)?,
        pass,
    })
}

fn verify(args: VerifyArgs) -> Result<Outcome> {
    let dir = Path::new(&args.target);
    let report = if dir.is_dir() {
        if args.certify {
            bail!("--certify needs a built-in fixture name");
        }
        verify_fixture_dir(dir)?
    } else {
        verify_fixture(&args.target)?
    };
    let mut text = format!("{report}\n");
    let mut pass = report.pass;
    let mut json = json!({ "report": report });
    if args.certify {
        let bundle = load_fixture(&args.target)?;
        match certify_fixture(&bundle)? {
            Some(cert) => {
                let names: Vec<&str> = bundle.params().iter().map(|p| p.name.as_str()).collect();
                match &cert {
                    nonassoc::Certificate::Holds { points } => writeln!(
                        text,
                        "certified for all ({}): {points} grid points",
                        names.join(", ")
                    )?,
                    nonassoc::Certificate::FailsAt { .. } => {
                        writeln!(text, "certification failed: {}", cert.verdict())?
                    }
                }
                pass &= cert.holds();
                json["certificate"] = serde_json::to_value(&cert)?;
            }
            None => writeln!(text, "no certification grid for {}", bundle.name)?,
        }
    }
    Ok(Outcome { text, json, pass })
}

fn list() -> Outcome {
    let mut text = String::new();
    let mut rows = Vec::new();
    for name in list_fixtures() {
        let bundle = load_fixture(name).expect("catalog fixtures load");
        let params: Vec<&str> = bundle.params().iter().map(|p| p.name.as_str()).collect();
        writeln!(text, "{name:<4} {}", bundle.anchor).expect("write to string");
        rows.push(json!({ "name": name, "anchor": bundle.anchor, "parameters": params, "note": bundle.note }));
    }
    Outcome {
        text,
        json: Value::Array(rows),
        pass: true,
    }
}
