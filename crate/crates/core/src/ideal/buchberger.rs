//! Classical Buchberger algorithm with the sugar strategy and the
//! Gebauer–Möller pair update.

use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::Ring;

struct CriticalPair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct State<'r> {
    ring: &'r Ring,
    basis: Vec<Polynomial>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<CriticalPair>,
}

impl<'r> State<'r> {
    fn active_polys(&self) -> Vec<&Polynomial> {
        self.basis
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(g, _)| g)
            .collect()
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let si = self.sugar[i] + lcm.degree() - self.basis[i].lm().degree();
        let sj = self.sugar[j] + lcm.degree() - self.basis[j].lm().degree();
        si.max(sj)
    }

    /// Adds the monic polynomial `h` and updates the pair set.
    fn insert(&mut self, h: Polynomial, sugar: u32) {
        let k = self.basis.len();
        let hk = h.lm().clone();
        self.basis.push(h);
        self.sugar.push(sugar);
        self.active.push(true);

        let cand: Vec<(usize, Monomial)> = (0..k)
            .filter(|&i| self.active[i])
            .map(|i| (i, self.basis[i].lm().lcm(&hk)))
            .collect();

        // chain criterion among the new pairs
        let survivors: Vec<&(usize, Monomial)> = cand
            .iter()
            .filter(|(_, l)| !cand.iter().any(|(_, l2)| l2 != l && l2.divides(l)))
            .collect();

        // one pair per lcm, none if some pair with that lcm is coprime
        let mut fresh: Vec<(usize, Monomial)> = Vec::new();
        let mut seen: Vec<&Monomial> = Vec::new();
        for (i, l) in &survivors {
            if seen.contains(&l) {
                continue;
            }
            seen.push(l);
            let group_coprime = survivors
                .iter()
                .filter(|(_, l2)| l2 == l)
                .any(|(j, _)| self.basis[*j].lm().is_coprime(&hk));
            if !group_coprime {
                fresh.push((*i, l.clone()));
            }
        }

        let basis = &self.basis;
        self.pairs.retain(|p| {
            !(hk.divides(&p.lcm) && basis[p.i].lm().lcm(&hk) != p.lcm && basis[p.j].lm().lcm(&hk) != p.lcm)
        });

        for (i, l) in fresh {
            let sugar = self.pair_sugar(i, k, &l);
            self.pairs.push(CriticalPair { i, j: k, lcm: l, sugar });
        }

        for i in 0..k {
            if self.active[i] && hk.divides(self.basis[i].lm()) {
                self.active[i] = false;
            }
        }
    }

    fn select(&mut self) -> Option<CriticalPair> {
        let ring = self.ring;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.sugar
                .cmp(&pb.sugar)
                .then_with(|| ring.cmp(&pa.lcm, &pb.lcm))
                .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &CriticalPair) -> Polynomial {
        let (f, g) = (&self.basis[p.i], &self.basis[p.j]);
        let mf = p.lcm.div(f.lm());
        let mg = p.lcm.div(g.lm());
        // both are monic
        f.mul_term(self.ring, crate::Scalar::ONE, &mf)
            .into_sub_mul_term(self.ring, crate::Scalar::ONE, &mg, g)
    }
}

/// Keeps generators whose leading monomial is not divisible by another's,
/// reduces tails, makes everything monic and sorts by increasing leading
/// monomial.
pub fn reduce_basis(ring: &Ring, gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut g: Vec<Polynomial> = gens.iter().filter(|p| !p.is_zero()).map(|p| p.monic(ring)).collect();
    if g.iter().any(|p| p.is_unit()) {
        return vec![ring.one()];
    }
    g.sort_by(|a, b| ring.cmp(a.lm(), b.lm()));
    g.dedup_by(|a, b| a.lm() == b.lm());
    let minimal: Vec<Polynomial> = g
        .iter()
        .enumerate()
        .filter(|(i, p)| !g.iter().enumerate().any(|(j, q)| j != *i && q.lm().divides(p.lm())))
        .map(|(_, p)| p.clone())
        .collect();
    let mut out = Vec::with_capacity(minimal.len());
    for (i, p) in minimal.iter().enumerate() {
        let others: Vec<&Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q)
            .collect();
        out.push(p.clone().reduce_by(ring, &others, true));
    }
    out
}

/// Reduced Gröbner basis of the ideal generated by `gens`, in the order of
/// `ring`. The zero ideal gives the empty list and the unit ideal `[1]`.
pub fn groebner_basis(ring: &Ring, gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut st = State {
        ring,
        basis: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    let mut input: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    input.sort_by(|a, b| ring.cmp(a.lm(), b.lm()));
    for g in input {
        let s = g.total_degree();
        let h = g.reduce_by(ring, &st.active_polys(), true);
        if h.is_zero() {
            continue;
        }
        if h.is_unit() {
            return vec![ring.one()];
        }
        st.insert(h.monic(ring), s);
    }
    while let Some(p) = st.select() {
        let s = st.spoly(&p);
        let h = s.reduce_by(ring, &st.active_polys(), true);
        if h.is_zero() {
            continue;
        }
        if h.is_unit() {
            return vec![ring.one()];
        }
        st.insert(h.monic(ring), p.sugar);
    }
    let active: Vec<Polynomial> = st.active_polys().into_iter().cloned().collect();
    reduce_basis(ring, &active)
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis(ring: &Ring, gens: &[Polynomial]) -> bool {
    let g: Vec<Polynomial> = gens.iter().filter(|p| !p.is_zero()).cloned().collect();
    for i in 0..g.len() {
        for j in (i + 1)..g.len() {
            let l = g[i].lm().lcm(g[j].lm());
            let ci = ring.inv(g[i].lc());
            let cj = ring.inv(g[j].lc());
            let s = g[i]
                .mul_term(ring, ci, &l.div(g[i].lm()))
                .into_sub_mul_term(ring, cj, &l.div(g[j].lm()), &g[j]);
            if !s.normal_form(ring, &g).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Minimal generators of the monomial ideal spanned by `lms`, sorted.
pub fn minimal_monomials(ring: &Ring, lms: impl IntoIterator<Item = Monomial>) -> Vec<Monomial> {
    let mut v: Vec<Monomial> = lms.into_iter().collect();
    v.sort_by(|a, b| ring.cmp(a, b));
    v.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in v {
        if !out.iter().any(|d| d.divides(&m)) {
            out.push(m);
        }
    }
    out
}
