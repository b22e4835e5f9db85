//! Intersection, quotients, saturation, radical membership and dimension,
//! all via one auxiliary variable and classical Gröbner bases.

use std::fmt;

use thiserror::Error;

use super::buchberger::{groebner_basis, reduce_basis};
use super::Ideal;
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::rng::SeededRng;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("quotient or saturation by the zero polynomial")]
    ZeroPolynomial,
    #[error("saturation by the zero ideal")]
    ZeroIdeal,
}

/// How `saturate_by_ideal` treats an ideal with several generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SaturationMode {
    /// Saturate by one random combination of the generators, coefficients
    /// drawn from `[1, p)` with the given seed.
    Random(u64),
    /// Intersect the saturations by each generator.
    Deterministic,
}

/// Codimension of `V(I)`; `Empty` stands for the unit ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Codimension {
    Empty,
    Finite(usize),
}

impl fmt::Display for Codimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Codimension::Empty => f.write_str("empty"),
            Codimension::Finite(c) => write!(f, "{c}"),
        }
    }
}

fn embed(p: &Polynomial, ext: &Ring) -> Polynomial {
    p.change_ring(ext).expect("embedding into an extension")
}

/// Gröbner basis in `ext` (whose last variable is auxiliary and eliminated
/// by its order), intersected with the base ring.
fn eliminate_last(ring: &Ring, ext: &Ring, gens: &[Polynomial]) -> Ideal {
    let gb = groebner_basis(ext, gens);
    ring.absorb_ops(ext);
    let t = ext.nvars() - 1;
    let kept: Vec<Polynomial> = gb
        .iter()
        .filter(|g| !g.involves(t))
        .map(|g| g.change_ring(ring).expect("free of the auxiliary variable"))
        .collect();
    if ring.order() == MonomialOrder::DegRevLex {
        // Block(1) restricted to t-free monomials is DegRevLex already
        Ideal {
            gens: reduce_basis(ring, &kept),
            is_groebner: true,
        }
    } else {
        Ideal::groebner(ring, &kept)
    }
}

pub fn intersect(ring: &Ring, i: &Ideal, j: &Ideal) -> Ideal {
    if i.is_zero_ideal() || j.is_zero_ideal() {
        return Ideal::zero();
    }
    let ext = ring.elimination_ring("t");
    let t = ext.var(ext.nvars() - 1);
    let one_minus_t = ext.one().sub(&ext, &t);
    let mut gens: Vec<Polynomial> = i.gens.iter().map(|f| t.mul(&ext, &embed(f, &ext))).collect();
    gens.extend(j.gens.iter().map(|g| one_minus_t.mul(&ext, &embed(g, &ext))));
    eliminate_last(ring, &ext, &gens)
}

/// `I : f`.
pub fn quotient(ring: &Ring, i: &Ideal, f: &Polynomial) -> Result<Ideal, IdealError> {
    if f.is_zero() {
        return Err(IdealError::ZeroPolynomial);
    }
    if f.is_unit() || i.is_zero_ideal() {
        return Ok(i.reduced(ring));
    }
    let inter = intersect(ring, i, &Ideal::new([f.clone()]));
    let gens: Vec<Polynomial> = inter
        .gens
        .iter()
        .map(|g| g.exact_div(ring, f).expect("element of <f> is divisible by f"))
        .collect();
    Ok(Ideal::groebner(ring, &gens))
}

/// `I : K`, the intersection of `I : k` over the generators of `K`.
/// The zero ideal gives the unit ideal.
pub fn quotient_ideal(ring: &Ring, i: &Ideal, k: &Ideal) -> Ideal {
    let mut acc: Option<Ideal> = None;
    for g in &k.gens {
        let q = quotient(ring, i, g).expect("generators are nonzero");
        if q.is_unit_ideal(ring) {
            continue;
        }
        acc = Some(match acc {
            None => q,
            Some(a) => intersect(ring, &a, &q),
        });
    }
    acc.unwrap_or_else(|| Ideal::unit(ring))
}

/// `I : f^∞` by the Rabinowitsch construction.
pub fn saturate(ring: &Ring, i: &Ideal, f: &Polynomial) -> Result<Ideal, IdealError> {
    if f.is_zero() {
        return Err(IdealError::ZeroPolynomial);
    }
    if f.is_unit() || i.is_zero_ideal() {
        return Ok(i.reduced(ring));
    }
    let ext = ring.elimination_ring("t");
    let t = ext.var(ext.nvars() - 1);
    let mut gens: Vec<Polynomial> = i.gens.iter().map(|g| embed(g, &ext)).collect();
    gens.push(t.mul(&ext, &embed(f, &ext)).sub(&ext, &ext.one()));
    Ok(eliminate_last(ring, &ext, &gens))
}

/// `I : K^∞`. The random mode agrees with the deterministic one for a
/// generic choice of coefficients.
pub fn saturate_by_ideal(ring: &Ring, i: &Ideal, k: &Ideal, mode: SaturationMode) -> Result<Ideal, IdealError> {
    if k.is_zero_ideal() {
        return Err(IdealError::ZeroIdeal);
    }
    if k.gens.len() == 1 {
        return saturate(ring, i, &k.gens[0]);
    }
    if let SaturationMode::Random(seed) = mode {
        let mut rng = SeededRng::new(seed);
        let mut g = Polynomial::zero();
        for h in &k.gens {
            g = g.add(ring, &h.scale(ring, rng.nonzero_scalar(ring)));
        }
        if !g.is_zero() {
            return saturate(ring, i, &g);
        }
    }
    let mut acc: Option<Ideal> = None;
    for g in &k.gens {
        let s = saturate(ring, i, g)?;
        acc = Some(match acc {
            None => s,
            Some(a) => intersect(ring, &a, &s),
        });
    }
    Ok(acc.expect("nonempty generator list"))
}

/// Whether `f` lies in the radical of `I`.
pub fn radical_member(ring: &Ring, f: &Polynomial, i: &Ideal) -> bool {
    if f.is_zero() {
        return true;
    }
    let r = i.reduced(ring);
    if f.normal_form(ring, &r.gens).is_zero() {
        return true;
    }
    if r.is_zero_ideal() {
        return false;
    }
    let ext = ring.extended("t", MonomialOrder::DegRevLex);
    let t = ext.var(ext.nvars() - 1);
    let mut gens: Vec<Polynomial> = r.gens.iter().map(|g| embed(g, &ext)).collect();
    gens.push(t.mul(&ext, &embed(f, &ext)).sub(&ext, &ext.one()));
    let gb = groebner_basis(&ext, &gens);
    ring.absorb_ops(&ext);
    gb.len() == 1 && gb[0].is_unit()
}

pub fn ideals_equal_up_to_radical(ring: &Ring, i: &Ideal, j: &Ideal) -> bool {
    let (ri, rj) = (i.reduced(ring), j.reduced(ring));
    ri.gens.iter().all(|g| radical_member(ring, g, &rj)) && rj.gens.iter().all(|g| radical_member(ring, g, &ri))
}

/// `n` minus the size of a largest set of variables containing the
/// support of no leading monomial of the reduced Gröbner basis.
pub fn codimension(ring: &Ring, i: &Ideal) -> Codimension {
    let r = i.reduced(ring);
    if r.is_zero_ideal() {
        return Codimension::Finite(0);
    }
    if r.gens.len() == 1 && r.gens[0].is_unit() {
        return Codimension::Empty;
    }
    let n = ring.nvars();
    assert!(n < 64, "codimension supports fewer than 64 variables");
    let supports: Vec<u64> = r
        .gens
        .iter()
        .map(|g| g.lm().support().fold(0u64, |acc, v| acc | (1 << v)))
        .collect();
    let mut best = 0u32;
    for set in 0u64..(1u64 << n) {
        if set.count_ones() <= best {
            continue;
        }
        if supports.iter().all(|s| s & !set != 0) {
            best = set.count_ones();
        }
    }
    Codimension::Finite(n - best as usize)
}
