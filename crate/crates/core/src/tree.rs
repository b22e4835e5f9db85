//! The sGB tree: a rooted tree of polynomial nodes sharing one signature
//! basis, with node labels as signature indices ordered by ancestry.

use std::cmp::Ordering;
use std::fmt::Write as _;

use thiserror::Error;

use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::sig::{EngineStats, Index, IndexOrder, Outcome, SigPoly, SigState};

pub type Label = Index;

/// Where [`SgbTree::insert_node`] puts the new node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Position {
    /// Only valid on an empty tree.
    Root,
    /// New leaf under the given node.
    ChildOf(Label),
    /// On the edge just above the given node; the new node takes its place
    /// under the old parent (or becomes the root).
    Above(Label),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("no node with label {0}")]
    UnknownNode(Label),
    #[error("the tree already has a root")]
    RootExists,
    #[error("the tree is empty")]
    Empty,
}

#[derive(Clone, Debug)]
struct Node {
    parent: Option<Label>,
    children: Vec<Label>,
    poly: Polynomial,
}

/// Orders labels by ancestry: ancestors are smaller.
struct Ancestry<'a> {
    nodes: &'a [Node],
}

impl Ancestry<'_> {
    fn is_ancestor(&self, a: Label, mut b: Label) -> bool {
        while let Some(p) = self.nodes[b].parent {
            if p == a {
                return true;
            }
            b = p;
        }
        false
    }
}

impl IndexOrder for Ancestry<'_> {
    fn compare(&self, a: Index, b: Index) -> Option<Ordering> {
        if a == b {
            Some(Ordering::Equal)
        } else if self.is_ancestor(a, b) {
            Some(Ordering::Less)
        } else if self.is_ancestor(b, a) {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

/// The root path of one node, as depths; labels off the path are outside.
struct PathView {
    depth: Vec<Option<u32>>,
}

impl IndexOrder for PathView {
    fn compare(&self, a: Index, b: Index) -> Option<Ordering> {
        Some(self.depth.get(a).copied()??.cmp(&self.depth.get(b).copied()??))
    }
}

pub struct SgbTree<'r> {
    ring: &'r Ring,
    nodes: Vec<Node>,
    root: Option<Label>,
    state: SigState,
}

impl<'r> SgbTree<'r> {
    pub fn new(ring: &'r Ring) -> SgbTree<'r> {
        SgbTree {
            ring,
            nodes: Vec::new(),
            root: None,
            state: SigState::new(true),
        }
    }

    pub fn enable_trace(&mut self) {
        self.state.enable_trace();
    }

    pub fn ring(&self) -> &'r Ring {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> Option<Label> {
        self.root
    }

    fn check(&self, l: Label) -> Result<(), TreeError> {
        if l < self.nodes.len() {
            Ok(())
        } else {
            Err(TreeError::UnknownNode(l))
        }
    }

    pub fn parent(&self, l: Label) -> Option<Label> {
        self.nodes[l].parent
    }

    pub fn children(&self, l: Label) -> &[Label] {
        &self.nodes[l].children
    }

    pub fn poly(&self, l: Label) -> &Polynomial {
        &self.nodes[l].poly
    }

    /// Labels from the root down to `l`.
    pub fn path(&self, l: Label) -> Vec<Label> {
        let mut p = vec![l];
        let mut cur = l;
        while let Some(q) = self.nodes[cur].parent {
            p.push(q);
            cur = q;
        }
        p.reverse();
        p
    }

    pub fn is_ancestor(&self, a: Label, b: Label) -> bool {
        Ancestry { nodes: &self.nodes }.is_ancestor(a, b)
    }

    pub fn elements(&self) -> &[SigPoly] {
        self.state.elements()
    }

    pub fn stats(&self) -> EngineStats {
        self.state.stats()
    }

    pub fn state(&self) -> &SigState {
        &self.state
    }

    fn view(&self, l: Label) -> PathView {
        let mut depth = vec![None; self.nodes.len()];
        for (d, n) in self.path(l).into_iter().enumerate() {
            depth[n] = Some(d as u32);
        }
        PathView { depth }
    }

    /// Inserts a node holding `f` (made monic) with a fresh label and adds
    /// its unit-signature element and S-pairs.
    pub fn insert_node(&mut self, f: &Polynomial, pos: Position) -> Result<Label, TreeError> {
        let label = self.nodes.len();
        let mut node = Node {
            parent: None,
            children: Vec::new(),
            poly: f.monic(self.ring),
        };
        match pos {
            Position::Root => {
                if self.root.is_some() {
                    return Err(TreeError::RootExists);
                }
                self.root = Some(label);
                self.nodes.push(node);
            }
            Position::ChildOf(p) => {
                self.check(p)?;
                node.parent = Some(p);
                self.nodes.push(node);
                self.nodes[p].children.push(label);
            }
            Position::Above(v) => {
                self.check(v)?;
                let old_parent = self.nodes[v].parent;
                node.parent = old_parent;
                node.children.push(v);
                self.nodes.push(node);
                self.nodes[v].parent = Some(label);
                match old_parent {
                    Some(p) => {
                        for c in self.nodes[p].children.iter_mut() {
                            if *c == v {
                                *c = label;
                            }
                        }
                    }
                    None => self.root = Some(label),
                }
            }
        }
        let full = Ancestry { nodes: &self.nodes };
        let f = self.nodes[label].poly.clone();
        self.state.push_generator(self.ring, &full, label, &f);
        Ok(label)
    }

    /// Queues a fresh `(poly(l), (l, 1), 1)` entry.
    pub fn reseed(&mut self, l: Label) -> Result<(), TreeError> {
        self.check(l)?;
        let f = self.nodes[l].poly.clone();
        self.state.add_seed(self.ring, l, &f);
        Ok(())
    }

    fn step(&mut self, view: &PathView) -> Option<Outcome> {
        let full = Ancestry { nodes: &self.nodes };
        self.state.process_next(self.ring, view, &full)
    }

    /// Processes the minimal-signature pending entry whose index lies on the
    /// root path of `l`. Returns `None` if there is none.
    pub fn process_spair(&mut self, l: Label) -> Result<Option<Outcome>, TreeError> {
        self.check(l)?;
        let view = self.view(l);
        Ok(self.step(&view))
    }

    /// A Gröbner basis of the ideal of the nodes on the root path of `l`.
    pub fn basis(&mut self, l: Label) -> Result<Vec<Polynomial>, TreeError> {
        self.check(l)?;
        let view = self.view(l);
        while self.step(&view).is_some() {}
        Ok(self
            .state
            .elements()
            .iter()
            .filter(|e| !e.poly.is_zero() && view.compare(e.sig.index, e.sig.index).is_some())
            .map(|e| e.poly.clone())
            .collect())
    }

    /// An element of `I_{<l} : poly(l)` not yet implied by earlier outputs,
    /// or zero once the quotient is generated.
    pub fn get_syzygy(&mut self, l: Label) -> Result<Polynomial, TreeError> {
        self.check(l)?;
        let view = self.view(l);
        while self.state.queued(l) == 0 && self.step(&view).is_some() {}
        Ok(self.state.pop_syzygy(l).unwrap_or_else(Polynomial::zero))
    }

    /// Text dump: one line per node with its parent, syzygy count and poly.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (l, n) in self.nodes.iter().enumerate() {
            let parent = n.parent.map_or("-".to_string(), |p| p.to_string());
            let _ = writeln!(
                out,
                "node {l} parent {parent} children {:?} syzygies {} poly {}",
                n.children,
                self.state.queued(l),
                n.poly.display(self.ring)
            );
        }
        out
    }
}
