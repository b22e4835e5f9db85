//! Sparse polynomials over Z/p in canonical sorted form.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::field::Scalar;
use crate::geobucket::GeoBucket;
use crate::monomial::{Exponent, Monomial};
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Scalar,
    pub monomial: Monomial,
}

/// A polynomial: nonzero terms with strictly decreasing monomials in the
/// order of the ring it was built in. The empty term list is zero.
///
/// Polynomials do not carry their ring; every operation that depends on the
/// order or the field takes it explicitly.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial { terms: Vec::new() }
    }

    pub fn term(coeff: Scalar, monomial: Monomial) -> Polynomial {
        if coeff.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![Term { coeff, monomial }],
            }
        }
    }

    /// Builds a canonical polynomial from arbitrary terms (any order,
    /// repeated monomials, zero coefficients).
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Scalar, Monomial)>) -> Polynomial {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (c, m) in terms {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(v) => *v = ring.add(*v, c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Polynomial::from_map(ring, acc)
    }

    fn from_map(ring: &Ring, acc: HashMap<Monomial, Scalar>) -> Polynomial {
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(monomial, coeff)| Term { coeff, monomial })
            .collect();
        terms.sort_by(|a, b| ring.cmp(&b.monomial, &a.monomial));
        Polynomial { terms }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Leading monomial. Panics on zero.
    #[inline]
    pub fn lm(&self) -> &Monomial {
        &self.terms[0].monomial
    }

    /// Leading coefficient. Panics on zero.
    #[inline]
    pub fn lc(&self) -> Scalar {
        self.terms[0].coeff
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].monomial.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.is_unit()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.monomial.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms
            .windows(2)
            .all(|w| w[0].monomial.degree() == w[1].monomial.degree())
    }

    /// True when some term involves variable `i`.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.iter().any(|t| t.monomial.exponent(i) > 0)
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|t| &t.monomial == m)
            .map(|t| t.coeff)
            .unwrap_or(Scalar::ZERO)
    }

    fn merge(&self, ring: &Ring, other: &Polynomial, negate_other: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let fix = |c: Scalar| if negate_other { ring.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match ring.cmp(&a[i].monomial, &b[j].monomial) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        coeff: fix(b[j].coeff),
                        monomial: b[j].monomial.clone(),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        ring.sub(a[i].coeff, b[j].coeff)
                    } else {
                        ring.add(a[i].coeff, b[j].coeff)
                    };
                    if !c.is_zero() {
                        out.push(Term {
                            coeff: c,
                            monomial: a[i].monomial.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|t| Term {
            coeff: fix(t.coeff),
            monomial: t.monomial.clone(),
        }));
        Polynomial { terms: out }
    }

    pub fn add(&self, ring: &Ring, other: &Polynomial) -> Polynomial {
        self.merge(ring, other, false)
    }

    pub fn sub(&self, ring: &Ring, other: &Polynomial) -> Polynomial {
        self.merge(ring, other, true)
    }

    pub fn neg(&self, ring: &Ring) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: ring.neg(t.coeff),
                    monomial: t.monomial.clone(),
                })
                .collect(),
        }
    }

    pub fn scale(&self, ring: &Ring, c: Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        if c == Scalar::ONE {
            return self.clone();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: ring.mul(c, t.coeff),
                    monomial: t.monomial.clone(),
                })
                .collect(),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, ring: &Ring, c: Scalar, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: if c == Scalar::ONE {
                        t.coeff
                    } else {
                        ring.mul(c, t.coeff)
                    },
                    monomial: t.monomial.mul(m),
                })
                .collect(),
        }
    }

    pub fn mul(&self, ring: &Ring, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        if other.len() == 1 {
            return self.mul_term(ring, other.terms[0].coeff, &other.terms[0].monomial);
        }
        if self.len() == 1 {
            return other.mul_term(ring, self.terms[0].coeff, &self.terms[0].monomial);
        }
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                let c = ring.mul(a.coeff, b.coeff);
                let m = a.monomial.mul(&b.monomial);
                match acc.get_mut(&m) {
                    Some(v) => *v = ring.add(*v, c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Polynomial::from_map(ring, acc)
    }

    pub fn pow(&self, ring: &Ring, e: u32) -> Polynomial {
        let mut acc = ring.one();
        for _ in 0..e {
            acc = acc.mul(ring, self);
        }
        acc
    }

    /// `self - c * m * g`, the elementary reduction step.
    pub fn sub_mul_term(&self, ring: &Ring, c: Scalar, m: &Monomial, g: &Polynomial) -> Polynomial {
        if c.is_zero() || g.is_zero() {
            return self.clone();
        }
        self.clone().into_sub_mul_term(ring, c, m, g)
    }

    /// `self - c * m * g`, reusing the terms of `self`.
    pub fn into_sub_mul_term(self, ring: &Ring, c: Scalar, m: &Monomial, g: &Polynomial) -> Polynomial {
        if c.is_zero() || g.is_zero() {
            return self;
        }
        let negc = ring.neg(c);
        let mut out = Vec::with_capacity(self.terms.len() + g.len());
        let mut a = self.terms.into_iter().peekable();
        for t in &g.terms {
            let gm = t.monomial.mul(m);
            let gc = ring.mul(negc, t.coeff);
            loop {
                if let Some(head) = a.peek() {
                    match ring.cmp(&head.monomial, &gm) {
                        Ordering::Greater => {
                            out.push(a.next().expect("peeked"));
                            continue;
                        }
                        Ordering::Equal => {
                            let head = a.next().expect("peeked");
                            let s = ring.add(head.coeff, gc);
                            if !s.is_zero() {
                                out.push(Term {
                                    coeff: s,
                                    monomial: head.monomial,
                                });
                            }
                            break;
                        }
                        Ordering::Less => {}
                    }
                }
                out.push(Term {
                    coeff: gc,
                    monomial: gm,
                });
                break;
            }
        }
        out.extend(a);
        Polynomial { terms: out }
    }

    /// Scales to leading coefficient one; returns the polynomial and the
    /// factor used.
    pub fn monic_with_factor(&self, ring: &Ring) -> (Polynomial, Scalar) {
        if self.is_zero() || self.lc() == Scalar::ONE {
            return (self.clone(), Scalar::ONE);
        }
        let inv = ring.inv(self.lc());
        (self.scale(ring, inv), inv)
    }

    pub fn monic(&self, ring: &Ring) -> Polynomial {
        self.monic_with_factor(ring).0
    }

    /// Full multivariate division remainder. The first divisor (in slice
    /// order) whose leading monomial divides the current term is used.
    pub fn normal_form(&self, ring: &Ring, divisors: &[Polynomial]) -> Polynomial {
        let divisors: Vec<&Polynomial> = divisors.iter().filter(|d| !d.is_zero()).collect();
        self.clone().reduce_by(ring, &divisors, true)
    }

    /// Reduces by nonzero `divisors`, first matching divisor first. With
    /// `full` unset only the leading term is reduced.
    pub(crate) fn reduce_by(self, ring: &Ring, divisors: &[&Polynomial], full: bool) -> Polynomial {
        if self.is_zero() {
            return self;
        }
        let mut bucket = GeoBucket::new(ring, self.terms);
        let mut rem: Vec<Term> = Vec::new();
        while let Some(lt) = bucket.pop_leading(ring) {
            match divisors.iter().find(|d| d.lm().divides(&lt.monomial)) {
                Some(d) => {
                    let m = lt.monomial.div(d.lm());
                    let c = if d.lc() == Scalar::ONE {
                        lt.coeff
                    } else {
                        ring.mul(lt.coeff, ring.inv(d.lc()))
                    };
                    bucket.add_mul_term(ring, ring.neg(c), &m, &d.terms, 1);
                }
                None => {
                    rem.push(lt);
                    if !full {
                        rem.extend(bucket.into_terms(ring));
                        break;
                    }
                }
            }
        }
        Polynomial { terms: rem }
    }

    /// Wraps terms already in canonical decreasing order.
    pub(crate) fn from_sorted_terms(terms: Vec<Term>) -> Polynomial {
        Polynomial { terms }
    }

    pub(crate) fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    /// Exact quotient `self / g`, or `None` if `g` does not divide `self`.
    pub fn exact_div(&self, ring: &Ring, g: &Polynomial) -> Option<Polynomial> {
        assert!(!g.is_zero(), "division by the zero polynomial");
        let inv = ring.inv(g.lc());
        let mut f = self.clone();
        let mut q: Vec<Term> = Vec::new();
        while !f.is_zero() {
            let m = f.lm().checked_div(g.lm())?;
            let c = ring.mul(f.lc(), inv);
            f = f.into_sub_mul_term(ring, c, &m, g);
            q.push(Term { coeff: c, monomial: m });
        }
        Some(Polynomial { terms: q })
    }

    pub fn partial_derivative(&self, ring: &Ring, j: usize) -> Polynomial {
        let terms = self.terms.iter().filter_map(|t| {
            let e = t.monomial.exponent(j);
            if e == 0 {
                return None;
            }
            let c = ring.mul(t.coeff, ring.scalar(e as i64));
            Some((c, t.monomial.with_exponent(j, e - 1)))
        });
        Polynomial::from_terms(ring, terms)
    }

    pub fn evaluate(&self, ring: &Ring, point: &[Scalar]) -> Scalar {
        let field = ring.field();
        let mut acc = Scalar::ZERO;
        for t in &self.terms {
            let mut v = t.coeff;
            for (i, &e) in t.monomial.exponents().iter().enumerate() {
                if e > 0 {
                    v = ring.mul(v, field.pow(point[i], e as u64));
                }
            }
            acc = ring.add(acc, v);
        }
        acc
    }

    /// Re-expresses the polynomial in `to`, whose variables are a prefix or
    /// an extension of the current ones. Returns `None` if a dropped
    /// variable occurs.
    pub fn change_ring(&self, to: &Ring) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(self.len());
        for t in &self.terms {
            terms.push(Term {
                coeff: t.coeff,
                monomial: t.monomial.resize(to.nvars())?,
            });
        }
        terms.sort_by(|a, b| to.cmp(&b.monomial, &a.monomial));
        Some(Polynomial { terms })
    }

    /// Maps variable `i` to variable `map[i]` of `to`.
    pub fn rename_vars(&self, to: &Ring, map: &[usize]) -> Polynomial {
        let terms = self.terms.iter().map(|t| {
            let mut e: Vec<Exponent> = vec![0; to.nvars()];
            for (i, &x) in t.monomial.exponents().iter().enumerate() {
                e[map[i]] += x;
            }
            (t.coeff, Monomial::from_exponents(&e))
        });
        Polynomial::from_terms(to, terms)
    }

    pub fn display<'a>(&'a self, ring: &'a Ring) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, ring }
    }
}

/// Canonical text form: decreasing terms, residues in `[0, p)`, explicit `*`.
pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    ring: &'a Ring,
}

pub(crate) fn write_monomial(f: &mut impl fmt::Write, ring: &Ring, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_char('*')?;
        }
        first = false;
        f.write_str(&ring.var_names()[i])?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    if first {
        f.write_char('1')?;
    }
    Ok(())
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (k, t) in self.poly.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if t.monomial.is_one() {
                write!(f, "{}", t.coeff)?;
            } else {
                if t.coeff != Scalar::ONE {
                    write!(f, "{}*", t.coeff)?;
                }
                write_monomial(f, self.ring, &t.monomial)?;
            }
        }
        Ok(())
    }
}

/// Wrapper to print monomials with variable names.
pub struct MonomialDisplay<'a>(pub &'a Ring, pub &'a Monomial);

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, self.0, self.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;

    fn ring3() -> Ring {
        Ring::with_vars(["x", "y", "z"])
    }

    #[test]
    fn cancellation_to_constant() {
        let r = ring3();
        let x = r.var(0);
        let f = x.add(&r, &r.one());
        let g = f.add(&r, &x.neg(&r));
        assert_eq!(g, r.one());
        assert!(f.mul(&r, &Polynomial::zero()).is_zero());
        assert!(Polynomial::zero().mul(&r, &f).is_zero());
    }

    #[test]
    fn difference_of_squares_mod_7() {
        let r = Ring::new(7, ["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let (x, y) = (r.var(0), r.var(1));
        let p = x.add(&r, &y).mul(&r, &x.sub(&r, &y));
        assert_eq!(p.display(&r).to_string(), "x^2 + 6*y^2");
    }

    #[test]
    fn normal_form_examples() {
        let r = ring3();
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let f = x.mul(&r, &y).add(&r, &z);
        assert!(f.normal_form(&r, std::slice::from_ref(&f)).is_zero());
        let xy = x.mul(&r, &y);
        let xz = x.mul(&r, &z);
        assert_eq!(z.normal_form(&r, &[xy, xz]), z);

        let lex = Ring::new(65521, ["x", "y"], MonomialOrder::Lex).unwrap();
        let (x, y) = (lex.var(0), lex.var(1));
        let x2 = x.mul(&lex, &x);
        let g = x.sub(&lex, &y);
        assert_eq!(x2.normal_form(&lex, &[g]), y.mul(&lex, &y));
    }

    #[test]
    fn exact_division() {
        let r = ring3();
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let a = x.add(&r, &y);
        let b = y.sub(&r, &z).add(&r, &r.constant(3));
        let p = a.mul(&r, &b);
        assert_eq!(p.exact_div(&r, &a).unwrap(), b);
        assert!(p.add(&r, &r.one()).exact_div(&r, &a).is_none());
    }

    #[test]
    fn derivatives() {
        let r = Ring::new(5, ["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let x = r.var(0);
        assert_eq!(x.mul(&r, &x).partial_derivative(&r, 0), x.scale(&r, r.scalar(2)));
        assert!(r.var(1).partial_derivative(&r, 0).is_zero());
        assert!(x.pow(&r, 5).partial_derivative(&r, 0).is_zero());
    }

    #[test]
    fn display_forms() {
        let r = ring3();
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let p = x
            .mul(&r, &x)
            .mul(&r, &y)
            .scale(&r, r.scalar(3))
            .add(&r, &z)
            .sub(&r, &r.one());
        assert_eq!(p.display(&r).to_string(), "3*x^2*y + z + 65520");
        assert_eq!(Polynomial::zero().display(&r).to_string(), "0");
    }
}
