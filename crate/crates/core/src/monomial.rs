//! Exponent-vector monomials and the monomial orders used by the engines.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub type Exponent = u16;

type ExpVec = SmallVec<[Exponent; 16]>;

/// A power product `x_0^e_0 * ... * x_{n-1}^e_{n-1}` with cached total degree.
#[derive(PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: ExpVec,
    degree: u32,
}

impl Clone for Monomial {
    #[inline]
    fn clone(&self) -> Monomial {
        Monomial {
            exps: ExpVec::from_slice(&self.exps),
            degree: self.degree,
        }
    }
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[Exponent]) -> Monomial {
        Monomial {
            exps: SmallVec::from_slice(exps),
            degree: exps.iter().map(|&e| e as u32).sum(),
        }
    }

    #[inline]
    pub fn exponents(&self) -> &[Exponent] {
        &self.exps
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> Exponent {
        self.exps[i]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    #[inline]
    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps = ExpVec::from_slice(&self.exps);
        let mut overflow = false;
        for (a, b) in exps.iter_mut().zip(&other.exps) {
            let (s, o) = a.overflowing_add(*b);
            *a = s;
            overflow |= o;
        }
        if overflow {
            return None;
        }
        Some(Monomial {
            exps,
            degree: self.degree + other.degree,
        })
    }

    /// Product of two monomials.
    ///
    /// Panics if an exponent leaves the `u16` range.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other)
            .unwrap_or_else(|| panic!("exponent overflow multiplying {self:?} by {other:?}"))
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut exps = ExpVec::from_slice(&self.exps);
        for (a, b) in exps.iter_mut().zip(&other.exps) {
            *a -= *b;
        }
        Some(Monomial {
            exps,
            degree: self.degree - other.degree,
        })
    }

    /// Exact quotient. Panics when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        self.checked_div(other)
            .unwrap_or_else(|| panic!("{other:?} does not divide {self:?}"))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = ExpVec::from_slice(&self.exps);
        for (a, b) in exps.iter_mut().zip(&other.exps) {
            *a = (*a).max(*b);
        }
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut exps = ExpVec::from_slice(&self.exps);
        for (a, b) in exps.iter_mut().zip(&other.exps) {
            *a = (*a).min(*b);
        }
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// Reinterprets the monomial in a ring with `nvars` variables: extra
    /// trailing variables get exponent zero, dropped ones must be zero.
    pub fn resize(&self, nvars: usize) -> Option<Monomial> {
        if nvars < self.nvars() && self.exps[nvars..].iter().any(|&e| e != 0) {
            return None;
        }
        let mut exps = ExpVec::from_slice(&self.exps);
        exps.resize(nvars, 0);
        Some(Monomial {
            exps,
            degree: self.degree,
        })
    }

    pub(crate) fn with_exponent(&self, i: usize, e: Exponent) -> Monomial {
        let mut m = self.clone();
        m.degree = m.degree - m.exps[i] as u32 + e as u32;
        m.exps[i] = e;
        m
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// Monomial orders.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic; `x_0 > x_1 > ... > x_{n-1}`.
    #[default]
    DegRevLex,
    /// Lexicographic; `x_0 > x_1 > ...`.
    Lex,
    /// Elimination order for the last `k` variables: compares those
    /// variables first, then the remaining ones, DegRevLex inside each block.
    Block(usize),
}

#[inline]
fn drl_slice(a: &[Exponent], b: &[Exponent], da: u32, db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            // smaller exponent in the last differing variable wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

fn block_degree(m: &[Exponent]) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

impl MonomialOrder {
    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match *self {
            MonomialOrder::DegRevLex => drl_slice(&a.exps, &b.exps, a.degree, b.degree),
            MonomialOrder::Lex => a.exps.as_slice().cmp(b.exps.as_slice()),
            MonomialOrder::Block(k) => {
                let split = a.nvars() - k.min(a.nvars());
                let (ah, at) = a.exps.split_at(split);
                let (bh, bt) = b.exps.split_at(split);
                drl_slice(at, bt, block_degree(at), block_degree(bt)).then_with(|| {
                    let dah = a.degree - block_degree(at);
                    let dbh = b.degree - block_degree(bt);
                    drl_slice(ah, bh, dah, dbh)
                })
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::DegRevLex => "drl".to_string(),
            MonomialOrder::Lex => "lex".to_string(),
            MonomialOrder::Block(k) => format!("block({k})"),
        }
    }
}
