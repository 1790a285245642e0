//! Polynomial identities of a single binary product.
//!
//! Each identity is stored as two signed sums of product trees. Identities that
//! repeat a variable are checked through their full polarization, which is
//! multilinear and therefore vanishes on an algebra exactly when it vanishes on
//! every tuple of basis vectors (characteristic zero). Basis evaluation runs on
//! integer tensors: the structure constants are scaled by their common
//! denominator `D`, and since every term of a catalog identity has the same
//! number `p` of products, both sides scale by the same `D^p`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::kernel::{Coeff, Kernel};
use crate::scalar::{common_denominator, Scalar};
use crate::verdict::{Verdict, WitnessPoint};

/// A product tree over argument slots.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(usize),
    Mul(Box<Term>, Box<Term>),
}

/// Shorthand for building trees.
pub fn v(i: usize) -> Term {
    Term::Var(i)
}

pub fn mul(l: Term, r: Term) -> Term {
    Term::Mul(Box::new(l), Box::new(r))
}

impl Term {
    /// Slots in left-to-right leaf order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Term::Var(i) => out.push(*i),
            Term::Mul(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    pub fn products(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Mul(l, r) => 1 + l.products() + r.products(),
        }
    }

    /// Replace the `k`-th leaf (left to right) by `slots[k]`.
    fn relabel_leaves(&self, slots: &[usize], next: &mut usize) -> Term {
        match self {
            Term::Var(_) => {
                let t = Term::Var(slots[*next]);
                *next += 1;
                t
            }
            Term::Mul(l, r) => {
                let l = l.relabel_leaves(slots, next);
                let r = r.relabel_leaves(slots, next);
                mul(l, r)
            }
        }
    }

    /// The tree with leaves renumbered `0, 1, ..` left to right, and the
    /// original slot of each leaf.
    pub(crate) fn canonical_shape(&self) -> (Term, Vec<usize>) {
        let leaves = self.leaves();
        let ordinal: Vec<usize> = (0..leaves.len()).collect();
        (self.relabel_leaves(&ordinal, &mut 0), leaves)
    }

    pub fn eval(&self, a: &Algebra, args: &[Element]) -> Element {
        match self {
            Term::Var(i) => args[*i].clone(),
            Term::Mul(l, r) => a.mul(&l.eval(a, args), &r.eval(a, args)),
        }
    }

    fn fmt_with(
        &self,
        f: &mut fmt::Formatter<'_>,
        names: &dyn Fn(usize) -> String,
        top: bool,
    ) -> fmt::Result {
        match self {
            Term::Var(i) => f.write_str(&names(*i)),
            Term::Mul(l, r) => {
                if !top {
                    f.write_str("(")?;
                }
                l.fmt_with(f, names, false)?;
                r.fmt_with(f, names, false)?;
                if !top {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

/// A signed sum of product trees.
pub type Side = Vec<(i64, Term)>;

fn eval_side(a: &Algebra, side: &[(i64, Term)], args: &[Element]) -> Element {
    let mut acc = Element::zero(a.dim());
    for (c, t) in side {
        acc.add_scaled(&Scalar::from_int(*c), &t.eval(a, args));
    }
    acc
}

/// `lhs = rhs` in the variables `0..vars.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalIdentity {
    pub vars: Vec<&'static str>,
    pub lhs: Side,
    pub rhs: Side,
}

impl FormalIdentity {
    /// Occurrences of each variable in a single term (all terms agree).
    pub fn degrees(&self) -> Vec<usize> {
        let (_, t) = self
            .lhs
            .first()
            .or(self.rhs.first())
            .expect("nonempty identity");
        let mut deg = vec![0; self.vars.len()];
        for leaf in t.leaves() {
            deg[leaf] += 1;
        }
        deg
    }

    /// Product count shared by every term.
    pub fn products(&self) -> usize {
        let mut counts = self.lhs.iter().chain(&self.rhs).map(|(_, t)| t.products());
        let p = counts.next().expect("nonempty identity");
        assert!(
            counts.all(|q| q == p),
            "identity terms must have equal product count"
        );
        p
    }

    pub fn sides(&self, a: &Algebra, args: &[Element]) -> (Element, Element) {
        assert_eq!(args.len(), self.vars.len(), "argument count");
        (eval_side(a, &self.lhs, args), eval_side(a, &self.rhs, args))
    }

    pub fn is_multilinear(&self) -> bool {
        self.degrees().iter().all(|&d| d == 1)
    }
}

impl fmt::Display for FormalIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |i: usize| {
            self.vars
                .get(i)
                .map_or_else(|| format!("x{i}"), |s| s.to_string())
        };
        let write_side = |f: &mut fmt::Formatter<'_>, side: &Side| -> fmt::Result {
            if side.is_empty() {
                return f.write_str("0");
            }
            for (k, (c, t)) in side.iter().enumerate() {
                match (k, c.signum()) {
                    (0, -1) => f.write_str("-")?,
                    (_, -1) => f.write_str(" - ")?,
                    (0, _) => {}
                    _ => f.write_str(" + ")?,
                }
                if c.abs() != 1 {
                    write!(f, "{}", c.abs())?;
                }
                t.fmt_with(f, &names, c.abs() == 1)?;
            }
            Ok(())
        };
        write_side(f, &self.lhs)?;
        f.write_str(" = ")?;
        write_side(f, &self.rhs)
    }
}

/// The identities the engine knows by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityName {
    Antisymmetry,
    Jacobi,
    LeftLeibniz,
    LeftPrelie,
    Flexible,
    JordanFlex,
    JordanMain,
    NovikovRightComm,
    Associativity,
    Commutativity,
}

impl IdentityName {
    pub const ALL: [IdentityName; 10] = [
        IdentityName::Antisymmetry,
        IdentityName::Jacobi,
        IdentityName::LeftLeibniz,
        IdentityName::LeftPrelie,
        IdentityName::Flexible,
        IdentityName::JordanFlex,
        IdentityName::JordanMain,
        IdentityName::NovikovRightComm,
        IdentityName::Associativity,
        IdentityName::Commutativity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityName::Antisymmetry => "antisymmetry",
            IdentityName::Jacobi => "jacobi",
            IdentityName::LeftLeibniz => "left_leibniz",
            IdentityName::LeftPrelie => "left_prelie",
            IdentityName::Flexible => "flexible",
            IdentityName::JordanFlex => "jordan_flex",
            IdentityName::JordanMain => "jordan_main",
            IdentityName::NovikovRightComm => "novikov_right_comm",
            IdentityName::Associativity => "associativity",
            IdentityName::Commutativity => "commutativity",
        }
    }

    pub fn formal(self) -> FormalIdentity {
        let (x, y, z) = (|| v(0), || v(1), || v(2));
        let xy = ["x", "y"].to_vec();
        let xyz = ["x", "y", "z"].to_vec();
        match self {
            IdentityName::Antisymmetry => FormalIdentity {
                vars: xy,
                lhs: vec![(1, mul(x(), y()))],
                rhs: vec![(-1, mul(y(), x()))],
            },
            IdentityName::Commutativity => FormalIdentity {
                vars: xy,
                lhs: vec![(1, mul(x(), y()))],
                rhs: vec![(1, mul(y(), x()))],
            },
            // The product is the bracket: x(yz) + z(xy) + y(zx) = 0.
            IdentityName::Jacobi => FormalIdentity {
                vars: xyz,
                lhs: vec![
                    (1, mul(x(), mul(y(), z()))),
                    (1, mul(z(), mul(x(), y()))),
                    (1, mul(y(), mul(z(), x()))),
                ],
                rhs: Vec::new(),
            },
            IdentityName::LeftLeibniz => FormalIdentity {
                vars: xyz,
                lhs: vec![(1, mul(x(), mul(y(), z())))],
                rhs: vec![(1, mul(mul(x(), y()), z())), (1, mul(y(), mul(x(), z())))],
            },
            IdentityName::LeftPrelie => FormalIdentity {
                vars: xyz,
                lhs: vec![(1, mul(mul(x(), y()), z())), (-1, mul(x(), mul(y(), z())))],
                rhs: vec![(1, mul(mul(y(), x()), z())), (-1, mul(y(), mul(x(), z())))],
            },
            IdentityName::Flexible | IdentityName::JordanFlex => FormalIdentity {
                vars: xy,
                lhs: vec![(1, mul(mul(x(), y()), x()))],
                rhs: vec![(1, mul(x(), mul(y(), x())))],
            },
            IdentityName::JordanMain => FormalIdentity {
                vars: xy,
                lhs: vec![(1, mul(mul(mul(x(), x()), y()), x()))],
                rhs: vec![(1, mul(mul(x(), x()), mul(y(), x())))],
            },
            IdentityName::NovikovRightComm => FormalIdentity {
                vars: xyz,
                lhs: vec![(1, mul(mul(x(), y()), z()))],
                rhs: vec![(1, mul(mul(x(), z()), y()))],
            },
            IdentityName::Associativity => FormalIdentity {
                vars: xyz,
                lhs: vec![(1, mul(mul(x(), y()), z()))],
                rhs: vec![(1, mul(x(), mul(y(), z())))],
            },
        }
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityName::ALL
            .into_iter()
            .find(|id| id.name() == s.trim())
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

/// Full polarization of an identity: variable `v` of degree `d` becomes `d`
/// fresh slots, and each term is summed over every assignment of its `d`
/// occurrences of `v` to those slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarization {
    /// Variable each slot came from.
    pub owner: Vec<usize>,
    pub lhs: Side,
    pub rhs: Side,
    pub products: usize,
}

impl Polarization {
    pub fn new(id: &FormalIdentity) -> Self {
        let degrees = id.degrees();
        let mut first_slot = Vec::with_capacity(degrees.len());
        let mut owner = Vec::new();
        for (var, &d) in degrees.iter().enumerate() {
            first_slot.push(owner.len());
            owner.extend(std::iter::repeat_n(var, d));
        }
        let perms: Vec<Vec<Vec<usize>>> = degrees.iter().map(|&d| permutations(d)).collect();
        let side = |terms: &Side| -> Side {
            let mut merged: BTreeMap<Term, i64> = BTreeMap::new();
            for (c, t) in terms {
                let leaves = t.leaves();
                for choice in Cartesian::new(perms.iter().map(Vec::len).collect()) {
                    let mut seen = vec![0usize; degrees.len()];
                    let slots: Vec<usize> = leaves
                        .iter()
                        .map(|&var| {
                            let k = seen[var];
                            seen[var] += 1;
                            first_slot[var] + perms[var][choice[var]][k]
                        })
                        .collect();
                    *merged.entry(t.relabel_leaves(&slots, &mut 0)).or_insert(0) += c;
                }
            }
            merged
                .into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|(t, c)| (c, t))
                .collect()
        };
        Polarization {
            owner,
            lhs: side(&id.lhs),
            rhs: side(&id.rhs),
            products: id.products(),
        }
    }

    pub fn arity(&self) -> usize {
        self.owner.len()
    }

    pub fn sides(&self, a: &Algebra, args: &[Element]) -> (Element, Element) {
        assert_eq!(args.len(), self.arity(), "argument count");
        (eval_side(a, &self.lhs, args), eval_side(a, &self.rhs, args))
    }
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(d - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, d - 1);
            out.push(q);
        }
    }
    out
}

/// Mixed-radix counter over `0..radix[0] × 0..radix[1] × ..`, last digit fastest.
pub(crate) struct Cartesian {
    radix: Vec<usize>,
    cur: Option<Vec<usize>>,
}

impl Cartesian {
    pub(crate) fn new(radix: Vec<usize>) -> Self {
        let cur = if radix.contains(&0) {
            None
        } else {
            Some(vec![0; radix.len()])
        };
        Cartesian { radix, cur }
    }
}

impl Iterator for Cartesian {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let cur = self.cur.as_mut().expect("checked");
        let mut k = cur.len();
        loop {
            if k == 0 {
                self.cur = None;
                break;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < self.radix[k] {
                break;
            }
            cur[k] = 0;
        }
        Some(out)
    }
}

fn basis_tuple(mut t: usize, n: usize, arity: usize) -> Vec<usize> {
    let mut ix = vec![0; arity];
    for slot in (0..arity).rev() {
        ix[slot] = t % n;
        t /= n;
    }
    ix
}

/// Integer tensors of both polarized sides, or `None` when `i128` overflowed.
fn side_tensors<T: Coeff>(n: usize, sc: &[T], pol: &Polarization) -> Option<(Vec<T>, Vec<T>)> {
    let k = Kernel::new(n, sc);
    let lhs = k.evaluate_side(pol.arity(), &pol.lhs).ok()?;
    let rhs = k.evaluate_side(pol.arity(), &pol.rhs).ok()?;
    Some((lhs, rhs))
}

fn first_difference<T: Coeff>(n: usize, lhs: &[T], rhs: &[T]) -> Option<usize> {
    (0..lhs.len() / n)
        .into_par_iter()
        .find_first(|&t| lhs[t * n..(t + 1) * n] != rhs[t * n..(t + 1) * n])
}

/// Check the polarized identity on every basis tuple. Returns the first
/// failing tuple in lexicographic order with both sides.
pub fn check_polarization(
    a: &Algebra,
    pol: &Polarization,
) -> Option<(Vec<usize>, Element, Element)> {
    let n = a.dim();
    let denom = common_denominator(a.constants().iter());
    let big: Vec<BigInt> = a
        .constants()
        .iter()
        .map(|c| c.numer() * (&denom / c.denom()))
        .collect();
    let small: Option<Vec<i128>> = big.iter().map(ToPrimitive::to_i128).collect();

    let scale = Scalar::from_integer(denom.pow(pol.products as u32));
    let to_element = |xs: Vec<BigInt>| {
        Element::new(
            xs.into_iter()
                .map(|x| &Scalar::from_integer(x) / &scale)
                .collect(),
        )
    };

    if let Some((l, r)) = small.as_deref().and_then(|sc| side_tensors(n, sc, pol)) {
        let t = first_difference(n, &l, &r)?;
        let grab = |v: &[i128]| {
            v[t * n..(t + 1) * n]
                .iter()
                .map(|&x| BigInt::from(x))
                .collect()
        };
        return Some((
            basis_tuple(t, n, pol.arity()),
            to_element(grab(&l)),
            to_element(grab(&r)),
        ));
    }
    let (l, r) = side_tensors(n, &big, pol).expect("arbitrary precision does not overflow");
    let t = first_difference(n, &l, &r)?;
    let grab = |v: &[BigInt]| v[t * n..(t + 1) * n].to_vec();
    Some((
        basis_tuple(t, n, pol.arity()),
        to_element(grab(&l)),
        to_element(grab(&r)),
    ))
}

/// Decide an identity exactly.
///
/// A multilinear identity fails with a basis-tuple witness. A non-multilinear
/// one fails with explicit arguments: each variable is set to a sum of a
/// subset of the basis vectors at which its polarization failed. Such a subset
/// always exists, because the polarization is the alternating sum of the
/// identity over all those subset sums.
pub fn check_identity(a: &Algebra, id: IdentityName) -> Verdict {
    check_formal(a, &id.formal())
}

pub fn check_formal(a: &Algebra, id: &FormalIdentity) -> Verdict {
    let pol = Polarization::new(id);
    let Some((tuple, lhs, rhs)) = check_polarization(a, &pol) else {
        return Verdict::Pass;
    };
    if id.is_multilinear() {
        return Verdict::fail(WitnessPoint::Basis(tuple), lhs, rhs);
    }
    let witness =
        unpolarize(a, id, &pol, &tuple).expect("a failing polarization has a failing subset sum");
    let (l, r) = id.sides(a, &witness);
    Verdict::fail(WitnessPoint::Elements(witness), l, r)
}

fn unpolarize(
    a: &Algebra,
    id: &FormalIdentity,
    pol: &Polarization,
    tuple: &[usize],
) -> Option<Vec<Element>> {
    let slots_of: Vec<Vec<usize>> = (0..id.vars.len())
        .map(|var| (0..pol.arity()).filter(|&s| pol.owner[s] == var).collect())
        .collect();
    let radix: Vec<usize> = slots_of.iter().map(|s| 1 << s.len()).collect();
    for masks in Cartesian::new(radix) {
        let args: Vec<Element> = slots_of
            .iter()
            .zip(&masks)
            .map(|(slots, &mask)| {
                let mut x = Element::zero(a.dim());
                for (bit, &s) in slots.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        x.add_scaled(&Scalar::one(), &Element::basis(a.dim(), tuple[s]));
                    }
                }
                x
            })
            .collect();
        let (l, r) = id.sides(a, &args);
        if l != r {
            return Some(args);
        }
    }
    None
}

/// Reference route: evaluate the polarized identity on every basis tuple with
/// exact rationals and the algebra's own product. Slow, but shares no code
/// with the tensor kernel.
pub fn check_identity_exhaustive(a: &Algebra, id: IdentityName) -> Verdict {
    let pol = Polarization::new(&id.formal());
    let n = a.dim();
    for tuple in Cartesian::new(vec![n; pol.arity()]) {
        let args: Vec<Element> = tuple.iter().map(|&i| Element::basis(n, i)).collect();
        let (l, r) = pol.sides(a, &args);
        if l != r {
            return Verdict::fail(WitnessPoint::Basis(tuple), l, r);
        }
    }
    Verdict::Pass
}

/// A random rational with numerator in `-4..=4` and denominator in `1..=3`.
pub fn random_scalar(rng: &mut impl Rng) -> Scalar {
    Scalar::frac(rng.random_range(-4..=4), rng.random_range(1..=3))
}

pub fn random_element(dim: usize, rng: &mut impl Rng) -> Element {
    Element::new((0..dim).map(|_| random_scalar(rng)).collect())
}

/// Evaluate the identity itself (not its polarization) at `trials` random
/// points. Passing is evidence, not proof; a failure is a genuine witness.
pub fn check_identity_random(a: &Algebra, id: IdentityName, trials: usize, seed: u64) -> Verdict {
    let formal = id.formal();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // draw every trial up front so the reported witness does not depend on
    // thread scheduling
    let draws: Vec<Vec<Element>> = (0..trials)
        .map(|_| {
            (0..formal.vars.len())
                .map(|_| random_element(a.dim(), &mut rng))
                .collect()
        })
        .collect();
    let first = draws.into_par_iter().find_map_first(|args| {
        let (l, r) = formal.sides(a, &args);
        (l != r).then_some((args, l, r))
    });
    match first {
        Some((args, l, r)) => Verdict::fail(WitnessPoint::Elements(args), l, r),
        None => Verdict::Pass,
    }
}

/// Re-evaluate a failure witness of `check_identity` and report whether the
/// recorded sides are reproduced and differ.
pub fn witness_reproduces(a: &Algebra, id: IdentityName, verdict: &Verdict) -> bool {
    let Some(w) = verdict.witness() else {
        return false;
    };
    let formal = id.formal();
    let args: Vec<Element> = match &w.at {
        WitnessPoint::Basis(ix) => ix.iter().map(|&i| Element::basis(a.dim(), i)).collect(),
        WitnessPoint::Elements(xs) => xs.clone(),
        WitnessPoint::Parameters(_) => return false,
    };
    if args.len() != formal.vars.len() {
        return false;
    }
    let (l, r) = formal.sides(a, &args);
    l == w.lhs && r == w.rhs && l != r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polarization_sizes() {
        let flex = Polarization::new(&IdentityName::Flexible.formal());
        assert_eq!(flex.owner, vec![0, 0, 1]);
        // (x1 y) x2 + (x2 y) x1
        assert_eq!(flex.lhs.len(), 2);
        let jm = Polarization::new(&IdentityName::JordanMain.formal());
        assert_eq!(jm.arity(), 4);
        // 3! assignments; x1x2 and x2x1 inner squares stay distinct trees
        assert_eq!(jm.lhs.iter().map(|(c, _)| c.abs()).sum::<i64>(), 6);
        let assoc = Polarization::new(&IdentityName::Associativity.formal());
        assert_eq!(assoc.lhs, IdentityName::Associativity.formal().lhs);
    }

    #[test]
    fn display_forms() {
        assert_eq!(
            IdentityName::JordanMain.formal().to_string(),
            "((xx)y)x = (xx)(yx)"
        );
        assert_eq!(
            IdentityName::LeftLeibniz.formal().to_string(),
            "x(yz) = (xy)z + y(xz)"
        );
        assert_eq!(IdentityName::Antisymmetry.formal().to_string(), "xy = -yx");
    }

    #[test]
    fn names_round_trip() {
        for id in IdentityName::ALL {
            assert_eq!(id.name().parse::<IdentityName>().unwrap(), id);
        }
        assert!("lie".parse::<IdentityName>().is_err());
    }

    #[test]
    fn matrices_are_associative_not_commutative() {
        let m2 = Algebra::matrix_algebra(2).unwrap();
        assert!(check_identity(&m2, IdentityName::Associativity).passed());
        assert!(check_identity(&m2, IdentityName::Flexible).passed());
        assert!(check_identity(&m2, IdentityName::JordanMain).passed());
        let v = check_identity(&m2, IdentityName::Commutativity);
        assert!(witness_reproduces(&m2, IdentityName::Commutativity, &v));
        // E11 E12 = E12 but E12 E11 = 0
        assert_eq!(v.witness().unwrap().at, WitnessPoint::Basis(vec![0, 1]));
        // Jacobi is on the product itself, not on its commutator: 3·E11 ≠ 0
        let j = check_identity(&m2, IdentityName::Jacobi);
        assert_eq!(j.witness().unwrap().at, WitnessPoint::Basis(vec![0, 0, 0]));
    }

    #[test]
    fn commutator_of_matrices_is_lie() {
        let m2 = Algebra::matrix_algebra(2).unwrap();
        let lie = Algebra::from_products(4, |i, j| {
            let (ei, ej) = (Element::basis(4, i), Element::basis(4, j));
            &m2.mul(&ei, &ej) - &m2.mul(&ej, &ei)
        });
        assert!(check_identity(&lie, IdentityName::Jacobi).passed());
        assert!(check_identity(&lie, IdentityName::Antisymmetry).passed());
        assert!(check_identity(&lie, IdentityName::LeftLeibniz).passed());
        assert!(!check_identity(&lie, IdentityName::Associativity).passed());
    }

    #[test]
    fn nonlinear_failure_gives_element_witness() {
        // (e0 e1) e0 = e0 e0 = e1, while e0 (e1 e0) = 0
        let a = Algebra::from_products(2, |i, j| match (i, j) {
            (0, 0) => Element::from_ints(&[0, 1]),
            (0, 1) => Element::from_ints(&[1, 0]),
            _ => Element::zero(2),
        });
        let v = check_identity(&a, IdentityName::Flexible);
        assert!(!v.passed());
        assert!(matches!(v.witness().unwrap().at, WitnessPoint::Elements(_)));
        assert!(witness_reproduces(&a, IdentityName::Flexible, &v));
        assert_eq!(
            v.passed(),
            check_identity_exhaustive(&a, IdentityName::Flexible).passed()
        );
    }

    #[test]
    fn fractional_constants_scale_back() {
        let a = Algebra::from_products(2, |i, j| {
            Element::new(vec![
                Scalar::frac((i + 2 * j) as i64, 3),
                Scalar::frac(1, (i + j + 1) as i64),
            ])
        });
        let v = check_identity(&a, IdentityName::Associativity);
        let e = check_identity_exhaustive(&a, IdentityName::Associativity);
        assert_eq!(v, e);
        assert!(witness_reproduces(&a, IdentityName::Associativity, &v));
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let huge = 1i64 << 62;
        let a = Algebra::from_products(2, |i, j| {
            Element::new(vec![
                Scalar::from_int(huge - (i as i64)),
                Scalar::from_int(huge - (j as i64) * 3),
            ])
        });
        for id in [IdentityName::Associativity, IdentityName::JordanMain] {
            assert_eq!(
                check_identity(&a, id).passed(),
                check_identity_exhaustive(&a, id).passed()
            );
        }
        let v = check_identity(&a, IdentityName::Associativity);
        assert_eq!(
            v,
            check_identity_exhaustive(&a, IdentityName::Associativity)
        );
    }

    #[test]
    fn random_route_finds_commutativity_failure() {
        let m2 = Algebra::matrix_algebra(2).unwrap();
        let v = check_identity_random(&m2, IdentityName::Commutativity, 20, 7);
        assert!(!v.passed());
        assert_eq!(
            check_identity_random(&m2, IdentityName::Associativity, 20, 7),
            Verdict::Pass
        );
    }
}
