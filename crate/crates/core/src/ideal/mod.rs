//! Ideals and the elimination-based ideal operations used as a reference
//! implementation.

mod buchberger;
mod ops;

pub use buchberger::{groebner_basis, is_groebner_basis, minimal_monomials, reduce_basis};
pub use ops::{
    codimension, ideals_equal_up_to_radical, intersect, quotient, quotient_ideal, radical_member, saturate,
    saturate_by_ideal, Codimension, IdealError, SaturationMode,
};

use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::Ring;

/// A finite generating set. When `is_groebner` holds the generators form
/// the reduced Gröbner basis (monic, sorted by increasing leading monomial).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    gens: Vec<Polynomial>,
    is_groebner: bool,
}

impl Ideal {
    pub fn new(gens: impl IntoIterator<Item = Polynomial>) -> Ideal {
        Ideal {
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            is_groebner: false,
        }
    }

    pub fn zero() -> Ideal {
        Ideal {
            gens: Vec::new(),
            is_groebner: true,
        }
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal {
            gens: vec![ring.one()],
            is_groebner: true,
        }
    }

    /// Computes the reduced Gröbner basis of `gens`.
    pub fn groebner(ring: &Ring, gens: &[Polynomial]) -> Ideal {
        Ideal {
            gens: groebner_basis(ring, gens),
            is_groebner: true,
        }
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn into_gens(self) -> Vec<Polynomial> {
        self.gens
    }

    pub fn is_groebner(&self) -> bool {
        self.is_groebner
    }

    /// The reduced Gröbner basis form of this ideal.
    pub fn reduced(&self, ring: &Ring) -> Ideal {
        if self.is_groebner {
            self.clone()
        } else {
            Ideal::groebner(ring, &self.gens)
        }
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit_ideal(&self, ring: &Ring) -> bool {
        let r = self.reduced(ring);
        r.gens.len() == 1 && r.gens[0].is_unit()
    }

    pub fn contains(&self, ring: &Ring, f: &Polynomial) -> bool {
        let r = self.reduced(ring);
        f.normal_form(ring, &r.gens).is_zero()
    }

    pub fn contains_ideal(&self, ring: &Ring, other: &Ideal) -> bool {
        let r = self.reduced(ring);
        other.gens.iter().all(|g| g.normal_form(ring, &r.gens).is_zero())
    }

    /// Exact equality of ideals, decided on reduced Gröbner bases.
    pub fn equals(&self, ring: &Ring, other: &Ideal) -> bool {
        self.reduced(ring).gens == other.reduced(ring).gens
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        Ideal::new(self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn with(&self, f: &Polynomial) -> Ideal {
        Ideal::new(self.gens.iter().chain(std::iter::once(f)).cloned())
    }

    /// Leading monomials of the reduced Gröbner basis.
    pub fn leading_monomials(&self, ring: &Ring) -> Vec<Monomial> {
        self.reduced(ring).gens.iter().map(|g| g.lm().clone()).collect()
    }
}
