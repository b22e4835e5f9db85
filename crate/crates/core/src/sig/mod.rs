//! Signatures, extended sig-poly pairs, S-pairs, regular reduction and the
//! rewritability criterion.
//!
//! Indices are plain integers. How two indices compare is supplied by an
//! [`IndexOrder`]: the flat engines order them as integers, the sGB tree by
//! ancestry, where some indices are incomparable.

mod engine;

pub use engine::{buchberger_sig, sgb, EngineStats, Entry, Outcome, SigError, SigResult, SigState, TraceRecord};

use std::cmp::Ordering;

use crate::field::Scalar;
use crate::geobucket::GeoBucket;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::Ring;

pub type Index = usize;

/// Partial order on indices. Smaller indices come first; `None` means
/// incomparable (or outside the view).
pub trait IndexOrder {
    fn compare(&self, a: Index, b: Index) -> Option<Ordering>;
}

/// Integer order, used by the flat engines.
#[derive(Clone, Copy, Debug, Default)]
pub struct Linear;

impl IndexOrder for Linear {
    fn compare(&self, a: Index, b: Index) -> Option<Ordering> {
        Some(a.cmp(&b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub index: Index,
    pub monomial: Monomial,
}

impl Signature {
    pub fn unit(index: Index, nvars: usize) -> Signature {
        Signature {
            index,
            monomial: Monomial::one(nvars),
        }
    }

    pub fn mul(&self, m: &Monomial) -> Signature {
        Signature {
            index: self.index,
            monomial: self.monomial.mul(m),
        }
    }

    /// Same index and dividing monomial.
    pub fn divides(&self, other: &Signature) -> bool {
        self.index == other.index && self.monomial.divides(&other.monomial)
    }

    /// Index first, then monomial.
    pub fn compare(&self, other: &Signature, ring: &Ring, order: &dyn IndexOrder) -> Option<Ordering> {
        if self.index == other.index {
            return Some(ring.cmp(&self.monomial, &other.monomial));
        }
        order.compare(self.index, other.index)
    }
}

/// An extended sig-poly pair: `poly - quo * f_index` lies in the ideal of
/// the indices below `sig.index`, and `lm(quo)` is the signature monomial.
#[derive(Clone, Debug)]
pub struct SigPoly {
    pub poly: Polynomial,
    pub sig: Signature,
    pub quo: Polynomial,
    /// Position in the basis, i.e. insertion time.
    pub stamp: usize,
}

/// A regular S-pair. `left` is the element whose multiple carries the
/// larger signature.
#[derive(Clone, Debug)]
pub struct SPair {
    pub left: usize,
    pub right: usize,
    /// Multiplier of the left element's leading monomial.
    pub a: Monomial,
    pub b: Monomial,
    pub sig: Signature,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Criterion {
    Singular,
    Syzygy,
    Koszul,
}

impl Criterion {
    pub fn name(self) -> &'static str {
        match self {
            Criterion::Singular => "singular",
            Criterion::Syzygy => "syzygy",
            Criterion::Koszul => "koszul",
        }
    }
}

/// Builds the S-pair of `g[i]` and `g[j]`, or `None` when either poly is
/// zero, their indices are incomparable or the multiplied signatures agree.
pub fn make_spair(ring: &Ring, order: &dyn IndexOrder, g: &[SigPoly], i: usize, j: usize) -> Option<SPair> {
    let (x, y) = (&g[i], &g[j]);
    if x.poly.is_zero() || y.poly.is_zero() {
        return None;
    }
    let c = x.poly.lm().lcm(y.poly.lm());
    let a = c.div(x.poly.lm());
    let b = c.div(y.poly.lm());
    let sa = x.sig.mul(&a);
    let sb = y.sig.mul(&b);
    match sa.compare(&sb, ring, order)? {
        Ordering::Equal => None,
        Ordering::Greater => Some(SPair {
            left: i,
            right: j,
            a,
            b,
            sig: sa,
        }),
        Ordering::Less => Some(SPair {
            left: j,
            right: i,
            a: b,
            b: a,
            sig: sb,
        }),
    }
}

/// Polynomial and quotient parts of an S-pair.
pub fn spair_parts(ring: &Ring, g: &[SigPoly], p: &SPair) -> (Polynomial, Polynomial) {
    let (x, y) = (&g[p.left], &g[p.right]);
    let ca = ring.inv(x.poly.lc());
    let cb = ring.inv(y.poly.lc());
    let poly = x
        .poly
        .mul_term(ring, ca, &p.a)
        .into_sub_mul_term(ring, cb, &p.b, &y.poly);
    let mut quo = x.quo.mul_term(ring, ca, &p.a);
    if x.sig.index == y.sig.index {
        quo = quo.into_sub_mul_term(ring, cb, &p.b, &y.quo);
    }
    (poly, quo)
}

/// Whether `b * s(beta) < sig`, with `b = m / lm(beta)` already computed.
fn reducer_allowed(ring: &Ring, order: &dyn IndexOrder, beta: &SigPoly, b: &Monomial, sig: &Signature) -> bool {
    if beta.sig.index == sig.index {
        ring.cmp(&beta.sig.monomial.mul(b), &sig.monomial) == Ordering::Less
    } else {
        order.compare(beta.sig.index, sig.index) == Some(Ordering::Less)
    }
}

/// Regular top reduction of `(poly, sig, quo)` by `g`. Among the eligible
/// reducers the earliest inserted one is used. Returns the reduced poly and
/// quotient together with the number of reduction steps.
pub fn regular_reduce(
    ring: &Ring,
    order: &dyn IndexOrder,
    g: &[SigPoly],
    poly: Polynomial,
    sig: &Signature,
    mut quo: Polynomial,
) -> (Polynomial, Polynomial, u64) {
    let mut steps = 0;
    if poly.is_zero() {
        return (poly, quo, 0);
    }
    let mut bucket = GeoBucket::new(ring, poly.into_terms());
    let mut head = None;
    'outer: while let Some(lt) = bucket.pop_leading(ring) {
        for beta in g {
            if beta.poly.is_zero() || !beta.poly.lm().divides(&lt.monomial) {
                continue;
            }
            let b = lt.monomial.div(beta.poly.lm());
            if !reducer_allowed(ring, order, beta, &b, sig) {
                continue;
            }
            let c = if beta.poly.lc() == Scalar::ONE {
                lt.coeff
            } else {
                ring.mul(lt.coeff, ring.inv(beta.poly.lc()))
            };
            bucket.add_mul_term(ring, ring.neg(c), &b, beta.poly.terms(), 1);
            if beta.sig.index == sig.index {
                quo = quo.into_sub_mul_term(ring, c, &b, &beta.quo);
            }
            steps += 1;
            continue 'outer;
        }
        head = Some(lt);
        break;
    }
    let poly = match head {
        None => Polynomial::zero(),
        Some(lt) => {
            let mut terms = vec![lt];
            terms.extend(bucket.into_terms(ring));
            Polynomial::from_sorted_terms(terms)
        }
    };
    (poly, quo, steps)
}

/// Rewritability of a multiple with signature `sig` of an element with
/// stamp `alpha` (`None` skips the singular test).
pub fn rewritable_sig(
    order: &dyn IndexOrder,
    g: &[SigPoly],
    sig: &Signature,
    alpha: Option<usize>,
) -> Option<Criterion> {
    for delta in g {
        if delta.sig.divides(sig) {
            if alpha.is_some_and(|a| delta.stamp > a) {
                return Some(Criterion::Singular);
            }
            if delta.poly.is_zero() {
                return Some(Criterion::Syzygy);
            }
        } else if !delta.poly.is_zero()
            && order.compare(delta.sig.index, sig.index) == Some(Ordering::Less)
            && delta.poly.lm().divides(&sig.monomial)
        {
            return Some(Criterion::Koszul);
        }
    }
    None
}

/// Whether `m * alpha` is rewritable with respect to `g`.
pub fn rewritable(order: &dyn IndexOrder, g: &[SigPoly], alpha: &SigPoly, m: &Monomial) -> Option<Criterion> {
    rewritable_sig(order, g, &alpha.sig.mul(m), Some(alpha.stamp))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_pair(r: &Ring, f: Polynomial, index: Index, stamp: usize) -> SigPoly {
        SigPoly {
            poly: f,
            sig: Signature::unit(index, r.nvars()),
            quo: r.one(),
            stamp,
        }
    }

    fn example() -> (Ring, Vec<SigPoly>) {
        let r = Ring::with_vars(["x", "y", "z"]);
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let g = vec![unit_pair(&r, x.mul(&r, &y), 1, 0), unit_pair(&r, x.mul(&r, &z), 2, 1)];
        (r, g)
    }

    #[test]
    fn spair_of_example() {
        let (r, g) = example();
        let p = make_spair(&r, &Linear, &g, 0, 1).unwrap();
        assert_eq!(p.left, 1);
        assert_eq!(p.sig.index, 2);
        assert_eq!(p.sig.monomial, r.monomial(&[0, 1, 0]));
        let (poly, quo) = spair_parts(&r, &g, &p);
        assert!(poly.is_zero());
        assert_eq!(quo, r.var(1));
        let (poly, quo, steps) = regular_reduce(&r, &Linear, &g, poly, &p.sig, quo);
        assert!(poly.is_zero() && steps == 0);
        assert_eq!(quo, r.var(1));
    }

    #[test]
    fn singular_pairs_are_dropped() {
        let r = Ring::with_vars(["x", "y"]);
        let x = r.var(0);
        let g = vec![unit_pair(&r, x.clone(), 1, 0), unit_pair(&r, x, 1, 1)];
        assert!(make_spair(&r, &Linear, &g, 0, 1).is_none());
    }

    #[test]
    fn coprime_pair_distinct_indices() {
        let r = Ring::with_vars(["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let g = vec![unit_pair(&r, x, 1, 0), unit_pair(&r, y, 2, 1)];
        let p = make_spair(&r, &Linear, &g, 0, 1).unwrap();
        let (_, quo) = spair_parts(&r, &g, &p);
        assert_eq!(quo, r.var(0));
    }

    #[test]
    fn signature_blocks_reduction() {
        let r = Ring::with_vars(["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        // reducer of the same index with a larger multiplied signature
        let g = vec![SigPoly {
            poly: x.clone(),
            sig: Signature {
                index: 1,
                monomial: r.monomial(&[0, 2]),
            },
            quo: y.pow(&r, 2),
            stamp: 0,
        }];
        let f = x.mul(&r, &y);
        let sig = Signature {
            index: 1,
            monomial: r.monomial(&[0, 1]),
        };
        let (poly, _, steps) = regular_reduce(&r, &Linear, &g, f.clone(), &sig, y);
        assert_eq!(poly, f);
        assert_eq!(steps, 0);
    }

    #[test]
    fn rewritable_branches() {
        let (r, g) = example();
        let alone = &g[..1];
        assert_eq!(rewritable(&Linear, alone, &g[0], &r.monomial(&[1, 0, 0])), None);

        let y = r.monomial(&[0, 1, 0]);
        let syz = SigPoly {
            poly: Polynomial::zero(),
            sig: Signature {
                index: 2,
                monomial: y.clone(),
            },
            quo: r.var(1),
            stamp: 0,
        };
        let alpha = SigPoly {
            poly: r.var(2),
            sig: Signature { index: 2, monomial: y },
            quo: r.var(1),
            stamp: 1,
        };
        let gs = vec![syz, alpha.clone()];
        assert_eq!(
            rewritable(&Linear, &gs, &alpha, &r.monomial(&[1, 0, 0])),
            Some(Criterion::Syzygy)
        );

        let delta = unit_pair(&r, r.var(0), 1, 0);
        let beta = SigPoly {
            poly: r.var(1),
            sig: Signature {
                index: 2,
                monomial: r.monomial(&[1, 0, 0]),
            },
            quo: r.var(0),
            stamp: 1,
        };
        let gk = vec![delta, beta.clone()];
        assert_eq!(
            rewritable(&Linear, &gk, &beta, &Monomial::one(3)),
            Some(Criterion::Koszul)
        );

        let later = SigPoly {
            stamp: 2,
            ..beta.clone()
        };
        let gl = [gk[0].clone(), beta.clone(), later];
        assert_eq!(
            rewritable(&Linear, &gl[1..], &beta, &r.monomial(&[0, 0, 1])),
            Some(Criterion::Singular)
        );
    }
}
