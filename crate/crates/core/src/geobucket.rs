//! Geometric buckets for long reductions: a polynomial kept as a sum of
//! sorted term lists of geometrically growing length, so that each
//! reduction step only merges into a short list.

use std::cmp::Ordering;

use crate::field::Scalar;
use crate::monomial::Monomial;
use crate::poly::Term;
use crate::ring::Ring;

const BASE: usize = 4;

fn capacity(k: usize) -> usize {
    BASE.pow(k as u32 + 1)
}

/// Buckets hold terms in increasing order, so the leading term is last.
pub(crate) struct GeoBucket {
    buckets: Vec<Vec<Term>>,
}

/// Merges two increasing term lists, adding equal monomials.
fn merge_asc(ring: &Ring, a: Vec<Term>, b: Vec<Term>) -> Vec<Term> {
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut a = a.into_iter().peekable();
    let mut b = b.into_iter().peekable();
    loop {
        let ord = match (a.peek(), b.peek()) {
            (Some(x), Some(y)) => ring.cmp(&x.monomial, &y.monomial),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => break,
        };
        match ord {
            Ordering::Less => out.push(a.next().expect("peeked")),
            Ordering::Greater => out.push(b.next().expect("peeked")),
            Ordering::Equal => {
                let x = a.next().expect("peeked");
                let y = b.next().expect("peeked");
                let s = ring.add(x.coeff, y.coeff);
                if !s.is_zero() {
                    out.push(Term {
                        coeff: s,
                        monomial: x.monomial,
                    });
                }
            }
        }
    }
    out
}

impl GeoBucket {
    /// Takes terms in decreasing order (canonical polynomial order).
    pub(crate) fn new(ring: &Ring, mut terms: Vec<Term>) -> GeoBucket {
        terms.reverse();
        let mut g = GeoBucket { buckets: Vec::new() };
        g.add_asc(ring, terms);
        g
    }

    fn add_asc(&mut self, ring: &Ring, mut terms: Vec<Term>) {
        let mut k = 0;
        while capacity(k) < terms.len() {
            k += 1;
        }
        loop {
            if self.buckets.len() <= k {
                self.buckets.resize_with(k + 1, Vec::new);
            }
            let old = std::mem::take(&mut self.buckets[k]);
            terms = merge_asc(ring, old, terms);
            if terms.len() <= capacity(k) {
                self.buckets[k] = terms;
                return;
            }
            k += 1;
        }
    }

    /// Adds `c * m * g`, skipping the first `skip` terms of `g` (given in
    /// decreasing order).
    pub(crate) fn add_mul_term(&mut self, ring: &Ring, c: Scalar, m: &Monomial, g: &[Term], skip: usize) {
        if c.is_zero() || g.len() <= skip {
            return;
        }
        let terms: Vec<Term> = g[skip..]
            .iter()
            .rev()
            .map(|t| Term {
                coeff: ring.mul(c, t.coeff),
                monomial: t.monomial.mul(m),
            })
            .collect();
        self.add_asc(ring, terms);
    }

    /// Removes and returns the leading term, or `None` when zero.
    pub(crate) fn pop_leading(&mut self, ring: &Ring) -> Option<Term> {
        loop {
            let mut best: Option<usize> = None;
            for (k, b) in self.buckets.iter().enumerate() {
                let Some(t) = b.last() else { continue };
                best = match best {
                    Some(j)
                        if ring.cmp(&t.monomial, &self.buckets[j].last().expect("nonempty").monomial)
                            != Ordering::Greater =>
                    {
                        Some(j)
                    }
                    _ => Some(k),
                };
            }
            let j = best?;
            let mut lead = self.buckets[j].pop().expect("nonempty");
            for k in 0..self.buckets.len() {
                if k == j {
                    continue;
                }
                if let Some(t) = self.buckets[k].pop_if(|t| t.monomial == lead.monomial) {
                    lead.coeff = ring.add(lead.coeff, t.coeff);
                }
            }
            if !lead.coeff.is_zero() {
                return Some(lead);
            }
        }
    }

    /// Collapses everything into one decreasing term list.
    pub(crate) fn into_terms(self, ring: &Ring) -> Vec<Term> {
        let mut acc = Vec::new();
        for b in self.buckets {
            acc = merge_asc(ring, acc, b);
        }
        acc.reverse();
        acc
    }
}
