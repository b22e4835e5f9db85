//! Computation contexts: coefficient field, variables, order and op counter.

use std::cmp::Ordering;

use thiserror::Error;

use crate::field::{OpCounter, OpCounts, PrimeField, Scalar};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

pub const DEFAULT_PRIME: u32 = 65521;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("characteristic {0} is not an odd prime below 2^31")]
    NotPrime(u64),
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),
}

/// A polynomial ring `Z/p[x_0..x_{n-1}]` with a fixed monomial order.
///
/// Every arithmetic operation performed through a ring is tallied in its
/// [`OpCounter`]. Rings are cheap to clone; a clone carries a copy of the
/// current counts.
#[derive(Debug, Clone)]
pub struct Ring {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
    ops: OpCounter,
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: Into<String>>(
        prime: u64,
        vars: impl IntoIterator<Item = S>,
        order: MonomialOrder,
    ) -> Result<Ring, RingError> {
        let field = PrimeField::new(prime).ok_or(RingError::NotPrime(prime))?;
        let mut names: Vec<String> = Vec::new();
        for v in vars {
            let v = v.into();
            if !valid_identifier(&v) {
                return Err(RingError::InvalidVariable(v));
            }
            if names.contains(&v) {
                return Err(RingError::DuplicateVariable(v));
            }
            names.push(v);
        }
        Ok(Ring {
            field,
            vars: names,
            order,
            ops: OpCounter::default(),
        })
    }

    /// Ring over the default prime with DegRevLex.
    pub fn with_vars<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Ring {
        Ring::new(DEFAULT_PRIME as u64, vars, MonomialOrder::DegRevLex).expect("default prime is valid")
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn prime(&self) -> u32 {
        self.field.characteristic()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Same variables and field, different order, fresh counter.
    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Ring {
            field: self.field,
            vars: self.vars.clone(),
            order,
            ops: OpCounter::default(),
        }
    }

    /// Appends one variable (the new last variable) and uses `order`.
    /// The new ring has a fresh counter.
    pub fn extended(&self, name: &str, order: MonomialOrder) -> Ring {
        let mut vars = self.vars.clone();
        let mut fresh = name.to_string();
        while vars.contains(&fresh) {
            fresh.push('_');
        }
        vars.push(fresh);
        Ring {
            field: self.field,
            vars,
            order,
            ops: OpCounter::default(),
        }
    }

    /// Ring for eliminating one auxiliary trailing variable.
    pub fn elimination_ring(&self, name: &str) -> Ring {
        self.extended(name, MonomialOrder::Block(1))
    }

    pub fn ops(&self) -> OpCounts {
        self.ops.snapshot()
    }

    pub fn counter(&self) -> &OpCounter {
        &self.ops
    }

    /// Adds the counts accumulated in `other` (typically an auxiliary ring
    /// derived from this one) to this ring's counter.
    pub fn absorb_ops(&self, other: &Ring) {
        self.ops.add_counts(other.ops());
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b)
    }

    // Counted scalar arithmetic.

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        self.ops.count_addsub(1);
        self.field.add(a, b)
    }

    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.ops.count_addsub(1);
        self.field.sub(a, b)
    }

    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        self.field.neg(a)
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        self.ops.count_mul(1);
        self.field.mul(a, b)
    }

    pub fn inv(&self, a: Scalar) -> Scalar {
        self.ops.count_inv(1);
        self.field.inv(a)
    }

    pub fn scalar(&self, v: i64) -> Scalar {
        self.field.from_i64(v)
    }

    // Convenience constructors.

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero()
    }

    pub fn one(&self) -> Polynomial {
        self.constant(1)
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        Polynomial::term(self.scalar(c), Monomial::one(self.nvars()))
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::term(Scalar::ONE, Monomial::var(self.nvars(), i))
    }

    pub fn var_by_name(&self, name: &str) -> Option<Polynomial> {
        self.var_index(name).map(|i| self.var(i))
    }

    pub fn monomial(&self, exps: &[u16]) -> Monomial {
        assert_eq!(exps.len(), self.nvars());
        Monomial::from_exponents(exps)
    }
}
