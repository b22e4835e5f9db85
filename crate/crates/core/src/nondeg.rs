//! Nondegenerate locus drivers: the saturation loop on classical ideal
//! operations, and the sGB-tree algorithm with random or slack-variable
//! combinations of syzygies.

use thiserror::Error;

use crate::field::OpCounts;
use crate::ideal::{quotient_ideal, reduce_basis, saturate, saturate_by_ideal, Ideal, SaturationMode};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::rng::SeededRng;
use crate::sig::{EngineStats, TraceRecord};
use crate::tree::{Position, SgbTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Naive,
    SgbTreeRandom(u64),
    SgbTreeDeterministic,
}

impl Mode {
    pub fn name(&self) -> String {
        match self {
            Mode::Naive => "naive".to_string(),
            Mode::SgbTreeRandom(seed) => format!("sgbtree-random(seed={seed})"),
            Mode::SgbTreeDeterministic => "sgbtree-deterministic".to_string(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NondegError {
    #[error("{c} equations in {n} variables: the codimension-{c} locus is empty for c > n")]
    TooManyEquations { c: usize, n: usize },
    #[error("input polynomial {0} is zero")]
    ZeroInput(usize),
    #[error("the slack-variable variant needs a DegRevLex or Lex order, got {0}")]
    UnsupportedOrder(String),
}

/// Per-equation counters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IterationStats {
    /// Elements of the saturation quotient found for this equation.
    pub syzygies: usize,
    /// Combined syzygy leaves inserted.
    pub leaves: usize,
    /// Polynomials inserted by the cleaning loop.
    pub cleaning: usize,
    pub nodes_inserted: usize,
    pub ops: OpCounts,
}

#[derive(Clone, Debug)]
pub struct NondegResult {
    pub mode: Mode,
    /// Reduced Gröbner basis of the output ideal; `⟨1⟩` for an empty locus.
    pub basis: Ideal,
    /// Naive mode: the ideal `H + ⟨f_k⟩` of each iteration, before cleaning.
    pub pre_cleaning: Vec<Ideal>,
    pub iterations: Vec<IterationStats>,
    /// Engine counters (sGB-tree modes only).
    pub engine: Option<EngineStats>,
    pub ops: OpCounts,
    /// Set when the slack variable survived in the tree output and had to
    /// be eliminated.
    pub slack_eliminated: bool,
    pub trace: Vec<TraceRecord>,
}

impl NondegResult {
    pub fn is_empty_locus(&self, ring: &Ring) -> bool {
        self.basis.is_unit_ideal(ring)
    }
}

const OWN_LABEL: &str = "labels come from the tree itself";

fn check_input(ring: &Ring, fs: &[Polynomial]) -> Result<(), NondegError> {
    if fs.len() > ring.nvars() {
        return Err(NondegError::TooManyEquations {
            c: fs.len(),
            n: ring.nvars(),
        });
    }
    if let Some(i) = fs.iter().position(Polynomial::is_zero) {
        return Err(NondegError::ZeroInput(i));
    }
    Ok(())
}

/// `t * h_prev + h_new`, with `t` a nonzero constant or the slack variable.
pub fn combine_syzygies(ring: &Ring, h_prev: &Polynomial, h_new: &Polynomial, t: &Polynomial) -> Polynomial {
    t.mul(ring, h_prev).add(ring, h_new)
}

pub fn nondeg(ring: &Ring, fs: &[Polynomial], mode: Mode, trace: bool) -> Result<NondegResult, NondegError> {
    match mode {
        Mode::Naive => nondeg_naive(ring, fs),
        _ => nondeg_sgbtree(ring, fs, mode, trace),
    }
}

/// The saturation loop on classical Gröbner bases.
pub fn nondeg_naive(ring: &Ring, fs: &[Polynomial]) -> Result<NondegResult, NondegError> {
    check_input(ring, fs)?;
    let start = ring.ops();
    let mut j = Ideal::zero();
    let mut ks: Vec<Ideal> = Vec::new();
    let mut pre_cleaning = Vec::new();
    let mut iterations = Vec::new();
    for f in fs {
        let before = ring.ops();
        let h = saturate(ring, &j, f).expect("inputs are nonzero");
        ks.push(quotient_ideal(ring, &j, &h));
        j = h.with(f).reduced(ring);
        pre_cleaning.push(j.clone());
        let mut stats = IterationStats::default();
        if !j.is_unit_ideal(ring) {
            for k in &ks {
                if k.is_unit_ideal(ring) {
                    continue;
                }
                j = saturate_by_ideal(ring, &j, k, SaturationMode::Deterministic)
                    .expect("quotients of a nonzero ideal are nonzero");
                stats.cleaning += 1;
                if j.is_unit_ideal(ring) {
                    break;
                }
            }
        }
        stats.ops = ring.ops() - before;
        iterations.push(stats);
        if j.is_unit_ideal(ring) {
            j = Ideal::unit(ring);
            break;
        }
    }
    Ok(NondegResult {
        mode: Mode::Naive,
        basis: j.reduced(ring),
        pre_cleaning,
        iterations,
        engine: None,
        ops: ring.ops() - start,
        slack_eliminated: false,
        trace: Vec::new(),
    })
}

/// The sGB-tree algorithm. `mode` chooses random scalars (seeded) or a
/// slack variable for combining syzygies.
pub fn nondeg_sgbtree(ring: &Ring, fs: &[Polynomial], mode: Mode, trace: bool) -> Result<NondegResult, NondegError> {
    check_input(ring, fs)?;
    let start = ring.ops();
    let (work, seed) = match mode {
        Mode::SgbTreeRandom(seed) => (ring.clone(), Some(seed)),
        Mode::SgbTreeDeterministic => match ring.order() {
            MonomialOrder::DegRevLex | MonomialOrder::Lex => (ring.extended("s", ring.order()), None),
            o => return Err(NondegError::UnsupportedOrder(o.name())),
        },
        Mode::Naive => return nondeg_naive(ring, fs),
    };
    work.counter().reset();
    let fs: Vec<Polynomial> = fs
        .iter()
        .map(|f| f.change_ring(&work).expect("same or extended ring"))
        .collect();
    let slack = seed.is_none().then(|| work.var(work.nvars() - 1));
    let mut rng = SeededRng::new(seed.unwrap_or(0));

    let mut tree = SgbTree::new(&work);
    if trace {
        tree.enable_trace();
    }
    let nu = tree.insert_node(&Polynomial::zero(), Position::Root).expect(OWN_LABEL);
    let mut iterations = Vec::new();
    let mut unit = false;
    for f in &fs {
        let before = work.ops();
        let nodes_before = tree.len();
        let mut stats = IterationStats::default();
        let mu = tree.insert_node(f, Position::Above(nu)).expect(OWN_LABEL);
        loop {
            let g = tree.get_syzygy(mu).expect(OWN_LABEL);
            if g.is_zero() {
                break;
            }
            stats.syzygies += 1;
            unit |= g.is_unit();
            tree.reseed(mu).expect(OWN_LABEL);
            let gamma = tree.insert_node(&g, Position::Above(mu)).expect(OWN_LABEL);
            let t = match &slack {
                Some(s) => s.clone(),
                None => Polynomial::term(rng.nonzero_scalar(&work), work.monomial(&vec![0; work.nvars()])),
            };
            let mut h = Polynomial::zero();
            loop {
                let hp = tree.get_syzygy(gamma).expect(OWN_LABEL);
                if hp.is_zero() {
                    break;
                }
                h = combine_syzygies(&work, &h, &hp, &t);
            }
            if !h.is_zero() {
                tree.insert_node(&h, Position::ChildOf(nu)).expect(OWN_LABEL);
                stats.leaves += 1;
            }
            if unit {
                break;
            }
        }
        if !unit {
            let children: Vec<_> = tree.children(nu).to_vec();
            'clean: for beta in children {
                loop {
                    let b = tree.get_syzygy(beta).expect(OWN_LABEL);
                    if b.is_zero() {
                        break;
                    }
                    stats.cleaning += 1;
                    tree.insert_node(&b, Position::Above(nu)).expect(OWN_LABEL);
                    if b.is_unit() {
                        unit = true;
                        break 'clean;
                    }
                }
            }
        }
        stats.nodes_inserted = tree.len() - nodes_before;
        stats.ops = work.ops() - before;
        iterations.push(stats);
        if unit {
            break;
        }
    }
    let engine = Some(tree.stats());
    let trace_records = tree.state().trace().to_vec();
    let (basis, slack_eliminated) = if unit {
        ring.absorb_ops(&work);
        (Ideal::unit(ring), false)
    } else {
        let b = tree.basis(nu).expect(OWN_LABEL);
        let b = reduce_basis(&work, &b);
        map_back(ring, &work, b, slack.is_some())
    };
    Ok(NondegResult {
        mode,
        basis,
        pre_cleaning: Vec::new(),
        iterations,
        engine,
        ops: ring.ops() - start,
        slack_eliminated,
        trace: trace_records,
    })
}

/// Brings a basis over the working ring back to `ring`, eliminating the
/// slack variable if it survived.
fn map_back(ring: &Ring, work: &Ring, b: Vec<Polynomial>, has_slack: bool) -> (Ideal, bool) {
    ring.absorb_ops(work);
    if !has_slack {
        return (Ideal::new(b).reduced(ring), false);
    }
    let s = work.nvars() - 1;
    if b.iter().all(|g| !g.involves(s)) {
        let gens = b.iter().map(|g| g.change_ring(ring).expect("slack-free"));
        return (Ideal::new(gens).reduced(ring), false);
    }
    let elim = work.with_order(MonomialOrder::Block(1));
    let gb = crate::ideal::groebner_basis(&elim, &b);
    ring.absorb_ops(&elim);
    let gens = gb
        .iter()
        .filter(|g| !g.involves(s))
        .map(|g| g.change_ring(ring).expect("slack-free"));
    (Ideal::new(gens).reduced(ring), true)
}
