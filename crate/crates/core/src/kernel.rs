//! Tensor contraction of multilinear product trees over basis vectors.
//!
//! A multilinear term with `k` argument slots, evaluated on every basis tuple,
//! is a tensor of shape `n^k × n`. Terms are contracted bottom-up against the
//! structure constants, so a tree with `p` products costs at most
//! `O(n^(k+2))` multiply-adds instead of `O(n^k · p · n^3)` for per-tuple
//! evaluation. The arithmetic is generic: `i128` with overflow detection
//! first, arbitrary-precision integers as the fallback.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::identity::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Overflow;

pub(crate) trait Coeff: Clone + Send + Sync + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) -> Result<(), Overflow>;
    /// `self += c * a`
    fn add_scaled(&mut self, a: &Self, c: i64) -> Result<(), Overflow>;
}

impl Coeff for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn add_mul(&mut self, a: &Self, b: &Self) -> Result<(), Overflow> {
        let p = a.checked_mul(*b).ok_or(Overflow)?;
        *self = self.checked_add(p).ok_or(Overflow)?;
        Ok(())
    }
    #[inline]
    fn add_scaled(&mut self, a: &Self, c: i64) -> Result<(), Overflow> {
        self.add_mul(a, &(c as i128))
    }
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_mul(&mut self, a: &Self, b: &Self) -> Result<(), Overflow> {
        *self += a * b;
        Ok(())
    }
    fn add_scaled(&mut self, a: &Self, c: i64) -> Result<(), Overflow> {
        *self += a * c;
        Ok(())
    }
}

/// Values of a term on all basis tuples; index `(t * n) + o` where `t`
/// enumerates the slot tuple in leaf order, most significant first.
#[derive(Debug)]
struct Dense<T> {
    arity: usize,
    data: Vec<T>,
}

enum Node<T> {
    Leaf,
    Dense(Dense<T>),
}

pub(crate) struct Kernel<'a, T> {
    n: usize,
    sc: &'a [T],
}

impl<'a, T: Coeff> Kernel<'a, T> {
    pub(crate) fn new(n: usize, sc: &'a [T]) -> Self {
        assert_eq!(sc.len(), n * n * n);
        Kernel { n, sc }
    }

    fn eval(&self, term: &Term) -> Result<Node<T>, Overflow> {
        match term {
            Term::Var(_) => Ok(Node::Leaf),
            Term::Mul(l, r) => {
                let l = self.eval(l)?;
                let r = self.eval(r)?;
                self.mul(l, r).map(Node::Dense)
            }
        }
    }

    /// Multilinear term with leaves in slot order `0..k` (the canonical shape).
    fn contract(&self, term: &Term) -> Result<Dense<T>, Overflow> {
        match self.eval(term)? {
            Node::Dense(d) => Ok(d),
            Node::Leaf => {
                // A bare variable: the identity tensor.
                let n = self.n;
                let mut data = vec![T::zero(); n * n];
                let one = T::one();
                for i in 0..n {
                    data[i * n + i] = one.clone();
                }
                Ok(Dense { arity: 1, data })
            }
        }
    }

    fn mul(&self, l: Node<T>, r: Node<T>) -> Result<Dense<T>, Overflow> {
        let n = self.n;
        let sc = self.sc;
        match (l, r) {
            (Node::Leaf, Node::Leaf) => Ok(Dense {
                arity: 2,
                data: sc.to_vec(),
            }),
            (Node::Dense(l), Node::Leaf) => self.right_leaf(&l),
            (Node::Leaf, Node::Dense(r)) => {
                let nr = n.pow(r.arity as u32);
                let mut out = vec![T::zero(); n * nr * n];
                out.par_chunks_mut(n)
                    .enumerate()
                    .try_for_each(|(idx, chunk)| {
                        let (a, ir) = (idx / nr, idx % nr);
                        for m in 0..n {
                            let rv = &r.data[ir * n + m];
                            if rv.is_zero() {
                                continue;
                            }
                            let row = &sc[(a * n + m) * n..(a * n + m + 1) * n];
                            for (o, c) in chunk.iter_mut().zip(row) {
                                if !c.is_zero() {
                                    o.add_mul(rv, c)?;
                                }
                            }
                        }
                        Ok(())
                    })?;
                Ok(Dense {
                    arity: r.arity + 1,
                    data: out,
                })
            }
            (Node::Dense(l), Node::Dense(r)) => {
                // M[iL][m][o] = sum_k L[iL][k] sc[k][m][o], then contract m with R.
                let m_t = self.right_leaf(&l)?;
                let nl = n.pow(l.arity as u32);
                let nr = n.pow(r.arity as u32);
                let mut out = vec![T::zero(); nl * nr * n];
                out.par_chunks_mut(n)
                    .enumerate()
                    .try_for_each(|(idx, chunk)| {
                        let (il, ir) = (idx / nr, idx % nr);
                        for m in 0..n {
                            let rv = &r.data[ir * n + m];
                            if rv.is_zero() {
                                continue;
                            }
                            let row = &m_t.data[(il * n + m) * n..(il * n + m + 1) * n];
                            for (o, c) in chunk.iter_mut().zip(row) {
                                if !c.is_zero() {
                                    o.add_mul(rv, c)?;
                                }
                            }
                        }
                        Ok(())
                    })?;
                Ok(Dense {
                    arity: l.arity + r.arity,
                    data: out,
                })
            }
        }
    }

    /// `out[iL][r][o] = sum_k L[iL][k] sc[k][r][o]`
    fn right_leaf(&self, l: &Dense<T>) -> Result<Dense<T>, Overflow> {
        let n = self.n;
        let sc = self.sc;
        let mut out = vec![T::zero(); l.data.len() * n];
        out.par_chunks_mut(n * n)
            .enumerate()
            .try_for_each(|(il, block)| {
                for k in 0..n {
                    let lv = &l.data[il * n + k];
                    if lv.is_zero() {
                        continue;
                    }
                    let slab = &sc[k * n * n..(k + 1) * n * n];
                    for (o, c) in block.iter_mut().zip(slab) {
                        if !c.is_zero() {
                            o.add_mul(lv, c)?;
                        }
                    }
                }
                Ok(())
            })?;
        Ok(Dense {
            arity: l.arity + 1,
            data: out,
        })
    }

    /// Evaluate `sum coef * term` over all basis tuples of `arity` slots.
    /// Terms must be multilinear in the slots `0..arity`.
    pub(crate) fn evaluate_side(
        &self,
        arity: usize,
        terms: &[(i64, Term)],
    ) -> Result<Vec<T>, Overflow> {
        let n = self.n;
        let tuples = n.pow(arity as u32);
        let mut total = vec![T::zero(); tuples * n];
        let mut cache: Vec<(Term, Dense<T>)> = Vec::new();
        for (coef, term) in terms {
            let (shape, leaf_slots) = term.canonical_shape();
            debug_assert_eq!(leaf_slots.len(), arity);
            let pos = match cache.iter().position(|(s, _)| *s == shape) {
                Some(p) => p,
                None => {
                    let dense = self.contract(&shape)?;
                    cache.push((shape, dense));
                    cache.len() - 1
                }
            };
            let dense = &cache[pos].1;
            // stride of each slot inside the term's leaf-ordered tensor
            let mut stride = vec![0usize; arity];
            for (p, &slot) in leaf_slots.iter().enumerate() {
                stride[slot] = n.pow((arity - 1 - p) as u32);
            }
            let coef = *coef;
            total
                .par_chunks_mut(n)
                .enumerate()
                .try_for_each(|(t, chunk)| {
                    let mut rest = t;
                    let mut src = 0;
                    for slot in (0..arity).rev() {
                        src += (rest % n) * stride[slot];
                        rest /= n;
                    }
                    for (o, v) in chunk.iter_mut().zip(&dense.data[src * n..(src + 1) * n]) {
                        if !v.is_zero() {
                            o.add_scaled(v, coef)?;
                        }
                    }
                    Ok(())
                })?;
        }
        Ok(total)
    }
}
