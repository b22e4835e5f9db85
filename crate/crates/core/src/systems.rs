//! Seeded generators for the benchmark families Cyclic, Pseudo, Sos and
//! Sing, plus small random systems for property tests.
//!
//! Random coefficients come from [`SeededRng`] (ChaCha8 seeded with the
//! given `u64`), drawn uniformly from `[0, p)`. A dense quadric in a list of
//! variables `v_0..v_{k-1}` draws its coefficients in this order: the
//! constant, then `v_0..v_{k-1}`, then `v_i*v_j` for `i <= j` in
//! lexicographic order of `(i, j)`.

use std::fmt;

use thiserror::Error;

use crate::monomial::{Exponent, Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::{Ring, RingError};
use crate::rng::SeededRng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Cyclic(usize),
    Pseudo(usize),
    /// `Sos(s, n)`: `s` squares in `n` variables.
    Sos(usize, usize),
    Sing(usize),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cyclic(n) => write!(f, "cyclic({n})"),
            Family::Pseudo(n) => write!(f, "pseudo({n})"),
            Family::Sos(s, n) => write!(f, "sos({s},{n})"),
            Family::Sing(n) => write!(f, "sing({n})"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SystemError {
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameter { family: String, reason: String },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A polynomial system together with its ring.
#[derive(Clone, Debug)]
pub struct System {
    pub ring: Ring,
    pub polys: Vec<Polynomial>,
}

/// A family with the seed and characteristic used to draw it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SystemSpec {
    pub family: Family,
    pub seed: u64,
    pub prime: u64,
}

impl SystemSpec {
    pub fn generate(&self) -> Result<System, SystemError> {
        generate(self.family, self.seed, self.prime)
    }
}

fn invalid(family: &str, reason: &str) -> SystemError {
    SystemError::InvalidParameter {
        family: family.to_string(),
        reason: reason.to_string(),
    }
}

pub fn generate(family: Family, seed: u64, prime: u64) -> Result<System, SystemError> {
    match family {
        Family::Cyclic(n) => gen_cyclic(n, prime),
        Family::Pseudo(n) => gen_pseudo(n, seed, prime),
        Family::Sos(s, n) => gen_sos(s, n, seed, prime),
        Family::Sing(n) => gen_sing(n, seed, prime),
    }
}

pub fn gen_cyclic(n: usize, prime: u64) -> Result<System, SystemError> {
    if n < 2 {
        return Err(invalid("cyclic", "n must be at least 2"));
    }
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let ring = Ring::new(prime, names, MonomialOrder::DegRevLex)?;
    let mut polys = Vec::with_capacity(n);
    for d in 1..n {
        let terms = (0..n).map(|start| {
            let mut e = vec![0 as Exponent; n];
            for k in 0..d {
                e[(start + k) % n] += 1;
            }
            (ring.scalar(1), Monomial::from_exponents(&e))
        });
        polys.push(Polynomial::from_terms(&ring, terms));
    }
    let all = Monomial::from_exponents(&vec![1; n]);
    polys.push(Polynomial::from_terms(
        &ring,
        [(ring.scalar(1), all), (ring.scalar(-1), Monomial::one(n))],
    ));
    Ok(System { ring, polys })
}

/// Dense quadric in the given variables, coefficients uniform in `[0, p)`.
pub fn random_dense_quadric(ring: &Ring, vars: &[usize], rng: &mut SeededRng) -> Polynomial {
    let n = ring.nvars();
    let mut terms = Vec::new();
    terms.push((rng.scalar(ring), Monomial::one(n)));
    for &v in vars {
        terms.push((rng.scalar(ring), Monomial::var(n, v)));
    }
    for (a, &i) in vars.iter().enumerate() {
        for &j in &vars[a..] {
            let m = Monomial::var(n, i).mul(&Monomial::var(n, j));
            terms.push((rng.scalar(ring), m));
        }
    }
    Polynomial::from_terms(ring, terms)
}

pub fn gen_pseudo(n: usize, seed: u64, prime: u64) -> Result<System, SystemError> {
    if n < 3 {
        return Err(invalid("pseudo", "n must be at least 3"));
    }
    let m = n - 2;
    let mut names: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
    names.extend((1..=m).map(|i| format!("y{i}")));
    names.push("z1".to_string());
    names.push("z2".to_string());
    let ring = Ring::new(prime, names, MonomialOrder::DegRevLex)?;
    let nv = ring.nvars();
    let xz: Vec<usize> = (0..m).chain([nv - 2, nv - 1]).collect();
    // x_j -> y_j, z fixed
    let swap: Vec<usize> = (0..nv)
        .map(|i| {
            if i < m {
                i + m
            } else if i < 2 * m {
                i - m
            } else {
                i
            }
        })
        .collect();
    let mut rng = SeededRng::new(seed);
    let fs: Vec<Polynomial> = (0..n - 1).map(|_| random_dense_quadric(&ring, &xz, &mut rng)).collect();
    let gs: Vec<Polynomial> = fs.iter().map(|f| f.rename_vars(&ring, &swap)).collect();
    let polys = fs.into_iter().chain(gs).collect();
    Ok(System { ring, polys })
}

fn numbered_ring(prime: u64, n: usize) -> Result<Ring, RingError> {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    Ring::new(prime, names, MonomialOrder::DegRevLex)
}

/// `f` followed by its partial derivatives in all variables but the first.
fn with_derivatives(ring: &Ring, f: Polynomial) -> Vec<Polynomial> {
    let mut out = Vec::with_capacity(ring.nvars());
    for j in 1..ring.nvars() {
        out.push(f.partial_derivative(ring, j));
    }
    out.insert(0, f);
    out
}

pub fn gen_sos(s: usize, n: usize, seed: u64, prime: u64) -> Result<System, SystemError> {
    if s < 1 || n < 2 {
        return Err(invalid("sos", "need s >= 1 and n >= 2"));
    }
    let ring = numbered_ring(prime, n)?;
    let vars: Vec<usize> = (0..n).collect();
    let mut rng = SeededRng::new(seed);
    let mut f = Polynomial::zero();
    for _ in 0..s {
        let g = random_dense_quadric(&ring, &vars, &mut rng);
        f = f.add(&ring, &g.mul(&ring, &g));
    }
    let polys = with_derivatives(&ring, f);
    Ok(System { ring, polys })
}

/// Coefficients `[c0, c1, c2]` of `p` as a polynomial in the last variable
/// of `big`, expressed in `small` (the first `nvars - 1` variables).
pub fn split_last_variable(big: &Ring, small: &Ring, p: &Polynomial) -> Vec<Polynomial> {
    let t = big.nvars() - 1;
    let deg = p.terms().iter().map(|x| x.monomial.exponent(t)).max().unwrap_or(0) as usize;
    let mut parts: Vec<Vec<(crate::Scalar, Monomial)>> = vec![Vec::new(); deg + 1];
    for term in p.terms() {
        let e = term.monomial.exponent(t) as usize;
        let m = term
            .monomial
            .with_exponent(t, 0)
            .resize(small.nvars())
            .expect("t removed");
        parts[e].push((term.coeff, m));
    }
    parts.into_iter().map(|ts| Polynomial::from_terms(small, ts)).collect()
}

fn det(ring: &Ring, m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Polynomial::zero();
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != col)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = m[0][col].mul(ring, &det(ring, &minor));
        acc = if col % 2 == 0 {
            acc.add(ring, &term)
        } else {
            acc.sub(ring, &term)
        };
    }
    acc
}

/// Resultant of `a2 t^2 + a1 t + a0` and `b2 t^2 + b1 t + b0` as the 4x4
/// Sylvester determinant. Arguments are `[a0, a1, a2]`, `[b0, b1, b2]`.
pub fn resultant_quadratic(ring: &Ring, a: &[Polynomial; 3], b: &[Polynomial; 3]) -> Polynomial {
    let z = Polynomial::zero;
    let m = vec![
        vec![a[2].clone(), a[1].clone(), a[0].clone(), z()],
        vec![z(), a[2].clone(), a[1].clone(), a[0].clone()],
        vec![b[2].clone(), b[1].clone(), b[0].clone(), z()],
        vec![z(), b[2].clone(), b[1].clone(), b[0].clone()],
    ];
    det(ring, &m)
}

pub fn gen_sing(n: usize, seed: u64, prime: u64) -> Result<System, SystemError> {
    if n < 2 {
        return Err(invalid("sing", "n must be at least 2"));
    }
    let ring = numbered_ring(prime, n)?;
    let big = numbered_ring(prime, n + 1)?;
    let vars: Vec<usize> = (0..=n).collect();
    let mut rng = SeededRng::new(seed);
    let mut draw = || loop {
        let q = random_dense_quadric(&big, &vars, &mut rng);
        let c = split_last_variable(&big, &ring, &q);
        if c.len() == 3 && c[2].is_unit() {
            return [c[0].clone(), c[1].clone(), c[2].clone()];
        }
    };
    let a = draw();
    let b = draw();
    let f = resultant_quadratic(&ring, &a, &b);
    let polys = with_derivatives(&ring, f);
    Ok(System { ring, polys })
}

/// Random polynomial of degree at most `max_degree`: each monomial is kept
/// with probability one half and gets a nonzero coefficient. Never zero.
pub fn random_polynomial(ring: &Ring, max_degree: u32, rng: &mut SeededRng) -> Polynomial {
    let n = ring.nvars();
    let mut monomials = vec![Monomial::one(n)];
    let mut frontier = vec![Monomial::one(n)];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for m in &frontier {
            for v in 0..n {
                let p = m.mul(&Monomial::var(n, v));
                if !next.contains(&p) {
                    next.push(p);
                }
            }
        }
        monomials.extend(next.iter().cloned());
        frontier = next;
    }
    loop {
        let mut terms = Vec::new();
        for m in &monomials {
            if rng.below(2) == 1 {
                terms.push((rng.nonzero_scalar(ring), m.clone()));
            }
        }
        let p = Polynomial::from_terms(ring, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A small random system: 1 to 3 variables (`x, y, z`), 1 to 3 generators
/// of degree at most 2.
pub fn random_small_system(seed: u64, prime: u64) -> Result<System, SystemError> {
    let mut rng = SeededRng::new(seed);
    let nvars = 1 + rng.below(3) as usize;
    let ngens = 1 + rng.below(3) as usize;
    let ring = Ring::new(prime, ["x", "y", "z"].into_iter().take(nvars), MonomialOrder::DegRevLex)?;
    let polys = (0..ngens).map(|_| random_polynomial(&ring, 2, &mut rng)).collect();
    Ok(System { ring, polys })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_PRIME;

    const P: u64 = DEFAULT_PRIME as u64;

    #[test]
    fn cyclic_small_cases() {
        let s = gen_cyclic(3, P).unwrap();
        let shown: Vec<String> = s.polys.iter().map(|p| p.display(&s.ring).to_string()).collect();
        assert_eq!(shown, ["x0 + x1 + x2", "x0*x1 + x0*x2 + x1*x2", "x0*x1*x2 + 65520"]);
        let s = gen_cyclic(2, P).unwrap();
        let shown: Vec<String> = s.polys.iter().map(|p| p.display(&s.ring).to_string()).collect();
        assert_eq!(shown, ["x0 + x1", "x0*x1 + 65520"]);
        let s = gen_cyclic(5, P).unwrap();
        for (d, p) in s.polys[..4].iter().enumerate() {
            assert!(p.is_homogeneous() && p.total_degree() == d as u32 + 1);
        }
        assert!(gen_cyclic(1, P).is_err());
    }

    #[test]
    fn pseudo_structure() {
        let s = gen_pseudo(3, 11, P).unwrap();
        assert_eq!(s.ring.var_names(), &["x1", "y1", "z1", "z2"]);
        assert_eq!(s.polys.len(), 4);
        let swap = [1, 0, 2, 3];
        for i in 0..2 {
            assert_eq!(s.polys[i + 2].rename_vars(&s.ring, &swap), s.polys[i]);
            assert!(!s.polys[i].involves(1));
        }
        let again = gen_pseudo(3, 11, P).unwrap();
        assert_eq!(again.polys, s.polys);
        assert_ne!(gen_pseudo(3, 12, P).unwrap().polys, s.polys);
        let s5 = gen_pseudo(5, 1, P).unwrap();
        assert_eq!((s5.polys.len(), s5.ring.nvars()), (8, 8));
    }

    #[test]
    fn sos_structure() {
        let s = gen_sos(2, 3, 5, P).unwrap();
        assert_eq!(s.polys.len(), 3);
        // rebuild the squares and check the chain rule
        let r = &s.ring;
        let mut rng = SeededRng::new(5);
        let gs: Vec<Polynomial> = (0..2).map(|_| random_dense_quadric(r, &[0, 1, 2], &mut rng)).collect();
        for j in 1..3 {
            let mut expected = Polynomial::zero();
            for g in &gs {
                expected = expected.add(r, &g.mul(r, &g.partial_derivative(r, j)).scale(r, r.scalar(2)));
            }
            assert_eq!(s.polys[j], expected);
        }
        assert_eq!(gen_sos(2, 3, 5, P).unwrap().polys, s.polys);
    }

    #[test]
    fn resultant_examples() {
        let r = Ring::with_vars(["a", "b"]);
        let (a, b) = (r.var(0), r.var(1));
        let one = r.one();
        let z = Polynomial::zero();
        let res = resultant_quadratic(
            &r,
            &[a.neg(&r), z.clone(), one.clone()],
            &[b.neg(&r), z.clone(), one.clone()],
        );
        assert_eq!(res, a.sub(&r, &b).pow(&r, 2));
        let q = [a.clone(), b.clone(), one];
        assert!(resultant_quadratic(&r, &q, &q).is_zero());
    }

    #[test]
    fn resultant_matches_closed_form() {
        let r = Ring::with_vars(["a", "b"]);
        let mut rng = SeededRng::new(9);
        for _ in 0..5 {
            let mut draw = || [0u32, 1, 2].map(|d| random_polynomial(&r, d, &mut rng));
            let (a, b) = (draw(), draw());
            let m = |p: &Polynomial, q: &Polynomial| p.mul(&r, q);
            let u = m(&a[2], &b[0]).sub(&r, &m(&a[0], &b[2]));
            let v = m(&a[2], &b[1]).sub(&r, &m(&a[1], &b[2]));
            let w = m(&a[1], &b[0]).sub(&r, &m(&a[0], &b[1]));
            let closed = m(&u, &u).sub(&r, &m(&v, &w));
            assert_eq!(resultant_quadratic(&r, &a, &b), closed);
        }
    }

    #[test]
    fn sing_structure() {
        let s = gen_sing(3, 2, P).unwrap();
        assert_eq!(s.polys.len(), 3);
        assert_eq!(s.ring.nvars(), 3);
        assert!(s.polys[0].total_degree() <= 4);
        assert_eq!(s.polys[1], s.polys[0].partial_derivative(&s.ring, 1));
    }

    #[test]
    fn resultant_vanishes_at_common_roots() {
        let small = numbered_ring(P, 2).unwrap();
        let big = numbered_ring(P, 3).unwrap();
        let mut rng = SeededRng::new(11);
        for _ in 0..20 {
            let point: Vec<crate::Scalar> = (0..3).map(|_| rng.scalar(&big)).collect();
            let mut through_point = || {
                let q = random_dense_quadric(&big, &[0, 1, 2], &mut rng);
                let c = Polynomial::term(q.evaluate(&big, &point), Monomial::one(3));
                let mut c = split_last_variable(&big, &small, &q.sub(&big, &c));
                c.resize(3, Polynomial::zero());
                [c[0].clone(), c[1].clone(), c[2].clone()]
            };
            let (a, b) = (through_point(), through_point());
            let f = resultant_quadratic(&small, &a, &b);
            assert!(f.evaluate(&small, &point[..2]).is_zero());
        }
    }

    #[test]
    fn small_systems_are_reproducible() {
        for seed in 0..20 {
            let a = random_small_system(seed, P).unwrap();
            let b = random_small_system(seed, P).unwrap();
            assert_eq!(a.polys, b.polys);
            assert!(a.ring.nvars() <= 3 && a.polys.len() <= 3);
            assert!(a.polys.iter().all(|p| !p.is_zero() && p.total_degree() <= 2));
        }
    }
}
