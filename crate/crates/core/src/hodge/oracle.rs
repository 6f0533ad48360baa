//! First homology of the cover from an explicit cell structure.
//!
//! The quotient minus the branch points and one further regular point
//! retracts onto a bouquet of `2 g0 + n` circles `a_j, b_j, t_i`. Its
//! preimage in the cover is the Schreier graph: vertices are the elements of
//! `G`, and edge `(h, s)` runs from `h` to `h * p(s)`. The closed cover's
//! first homology is the cycle space of this graph modulo the boundaries of
//! the filled punctures: the lifts of the surface relation word from every
//! vertex and the lifts of `t_i^(d_i)` around every branch point.
//!
//! Cycles are recorded in edge coordinates; in the coordinates of the
//! non-tree edges of a spanning tree they are the Reidemeister–Schreier
//! rewriting of the lifted words.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use num_traits::{ToPrimitive, Zero};

use super::IsotypicalVector;
use crate::cover::CoverDatum;
use crate::error::{Error, Result};
use crate::group::{CharacterTable, FiniteGroup};
use crate::linalg::{int, Cyclotomic, RatMatrix, Rational, RowEchelon};

pub const DEFAULT_ORACLE_CAP: usize = 24;

/// A letter of the free group on `a_1, b_1, .., t_n` with exponent `+1` or `-1`.
pub type Letter = (usize, i64);

/// A sparse integral 1-chain on the edges of the Schreier graph.
pub type Chain = BTreeMap<usize, i64>;

/// Homology of the closed cover with its left `G`-action.
#[derive(Clone, Debug)]
pub struct CoverHomology {
    group: Arc<FiniteGroup>,
    images: Vec<usize>,
    letters: usize,
    base_genus: usize,
    tree: Vec<bool>,
    /// Edge into each vertex on the tree path from the identity, with the
    /// sign of its traversal.
    parent: Vec<Option<(usize, i64)>>,
    nontree: Vec<usize>,
    nt_index: Vec<Option<usize>>,
    rel_edges: RowEchelon,
    rel_nontree: RowEchelon,
    free: Vec<usize>,
    relations: Vec<Chain>,
}

impl CoverHomology {
    pub fn new(datum: &CoverDatum, cap: usize) -> Result<Self> {
        let group = datum.group().clone();
        let n = group.order();
        if n > cap {
            return Err(Error::CapExceeded { what: "group order for the homology model", size: n, cap });
        }
        let images = datum.generator_images();
        let letters = images.len();
        let edges = n * letters;

        let mut tree = vec![false; edges];
        let mut parent: Vec<Option<(usize, i64)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for (s, &x) in images.iter().enumerate() {
                let w = group.mul(u, x);
                if !seen[w] {
                    seen[w] = true;
                    tree[u * letters + s] = true;
                    parent[w] = Some((u * letters + s, 1));
                    queue.push_back(w);
                }
                let v = group.mul(u, group.inv(x));
                if !seen[v] {
                    seen[v] = true;
                    tree[v * letters + s] = true;
                    parent[v] = Some((v * letters + s, -1));
                    queue.push_back(v);
                }
            }
        }
        if seen.iter().any(|&b| !b) {
            return Err(Error::invariant("Schreier graph of a generating datum is disconnected"));
        }
        let nontree: Vec<usize> = (0..edges).filter(|&e| !tree[e]).collect();
        let mut nt_index = vec![None; edges];
        for (i, &e) in nontree.iter().enumerate() {
            nt_index[e] = Some(i);
        }

        let mut model = CoverHomology {
            group,
            images,
            letters,
            base_genus: datum.base_genus(),
            tree,
            parent,
            nontree,
            nt_index,
            rel_edges: RowEchelon::new(edges),
            rel_nontree: RowEchelon::new(0),
            free: Vec::new(),
            relations: Vec::new(),
        };
        model.rel_nontree = RowEchelon::new(model.nontree.len());

        let relator = model.relation_word();
        for h in 0..n {
            let (chain, end) = model.lift_word(h, &relator);
            debug_assert_eq!(end, h);
            model.add_relation(chain);
        }
        for (i, &x) in datum.branch().iter().enumerate() {
            let d = model.group.element_order(x);
            let letter = 2 * model.base_genus + i;
            let word = vec![(letter, 1); d];
            let mut done = vec![false; n];
            for h in 0..n {
                if done[h] {
                    continue;
                }
                let mut y = h;
                for _ in 0..d {
                    done[y] = true;
                    y = model.group.mul(y, x);
                }
                let (chain, end) = model.lift_word(h, &word);
                debug_assert_eq!(end, h);
                model.add_relation(chain);
            }
        }
        if model.rel_edges.rank() != model.rel_nontree.rank() {
            return Err(Error::invariant("relation rank differs between edge and Schreier coordinates"));
        }
        model.free = model.rel_nontree.free_columns();
        if model.free.len() != 2 * datum.total_genus() {
            return Err(Error::invariant(format!(
                "homology model has rank {} but the cover has genus {}",
                model.free.len(),
                datum.total_genus()
            )));
        }
        Ok(model)
    }

    fn add_relation(&mut self, chain: Chain) {
        self.rel_edges.insert(self.dense(&chain));
        self.rel_nontree.insert(self.restrict(&chain));
        self.relations.push(chain);
    }

    /// `a_1 b_1 a_1^-1 b_1^-1 .. t_1 .. t_n`.
    pub fn relation_word(&self) -> Vec<Letter> {
        let mut w = Vec::new();
        for j in 0..self.base_genus {
            let (a, b) = (2 * j, 2 * j + 1);
            w.extend([(a, 1), (b, 1), (a, -1), (b, -1)]);
        }
        for i in 2 * self.base_genus..self.letters {
            w.push((i, 1));
        }
        w
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn num_edges(&self) -> usize {
        self.group.order() * self.letters
    }

    /// Edge id of `(h, s)`.
    pub fn edge(&self, h: usize, s: usize) -> usize {
        h * self.letters + s
    }

    /// `(h, s)` for an edge id.
    pub fn edge_parts(&self, e: usize) -> (usize, usize) {
        (e / self.letters, e % self.letters)
    }

    pub fn edge_target(&self, e: usize) -> usize {
        let (h, s) = self.edge_parts(e);
        self.group.mul(h, self.images[s])
    }

    /// Monodromy of a word.
    pub fn monodromy(&self, word: &[Letter]) -> usize {
        word.iter().fold(0, |acc, &(s, sign)| {
            let x = if sign > 0 { self.images[s] } else { self.group.inv(self.images[s]) };
            self.group.mul(acc, x)
        })
    }

    /// Lift a word starting at vertex `start`; returns the traversed chain
    /// and the end vertex.
    pub fn lift_word(&self, start: usize, word: &[Letter]) -> (Chain, usize) {
        let mut chain = Chain::new();
        let mut cur = start;
        for &(s, sign) in word {
            let x = self.images[s];
            if sign > 0 {
                *chain.entry(self.edge(cur, s)).or_insert(0) += 1;
                cur = self.group.mul(cur, x);
            } else {
                cur = self.group.mul(cur, self.group.inv(x));
                *chain.entry(self.edge(cur, s)).or_insert(0) -= 1;
            }
        }
        chain.retain(|_, c| *c != 0);
        (chain, cur)
    }

    /// Tree path from the identity to `v`.
    pub fn tree_path(&self, mut v: usize) -> Chain {
        let mut chain = Chain::new();
        while let Some((e, sign)) = self.parent[v] {
            *chain.entry(e).or_insert(0) += sign;
            let (h, _) = self.edge_parts(e);
            v = if sign > 0 { h } else { self.edge_target(e) };
        }
        chain
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.tree[e]
    }

    /// The cycle made of a non-tree edge closed up through the tree.
    pub fn fundamental_cycle(&self, e: usize) -> Chain {
        let (h, _) = self.edge_parts(e);
        let mut chain = self.tree_path(h);
        *chain.entry(e).or_insert(0) += 1;
        for (k, c) in self.tree_path(self.edge_target(e)) {
            *chain.entry(k).or_insert(0) -= c;
        }
        chain.retain(|_, c| *c != 0);
        chain
    }

    /// `g` acting on a chain: edge `(h, s)` goes to `(g h, s)`.
    pub fn act(&self, g: usize, chain: &Chain) -> Chain {
        chain
            .iter()
            .map(|(&e, &c)| {
                let (h, s) = self.edge_parts(e);
                (self.edge(self.group.mul(g, h), s), c)
            })
            .collect()
    }

    /// Boundary of a chain, as vertex multiplicities; zero for cycles.
    pub fn boundary(&self, chain: &Chain) -> BTreeMap<usize, i64> {
        let mut b = BTreeMap::new();
        for (&e, &c) in chain {
            let (h, _) = self.edge_parts(e);
            *b.entry(self.edge_target(e)).or_insert(0) += c;
            *b.entry(h).or_insert(0) -= c;
        }
        b.retain(|_, c| *c != 0);
        b
    }

    fn dense(&self, chain: &Chain) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.num_edges()];
        for (&e, &c) in chain {
            v[e] = int(c);
        }
        v
    }

    fn restrict(&self, chain: &Chain) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.nontree.len()];
        for (&e, &c) in chain {
            if let Some(i) = self.nt_index[e] {
                v[i] += int(c);
            }
        }
        v
    }

    /// `2 g`, the rank of the closed cover's first homology.
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Boundary chains of the filled punctures.
    pub fn relations(&self) -> &[Chain] {
        &self.relations
    }

    /// Coordinates of a cycle in the basis of [`Self::basis_cycle`].
    pub fn coordinates(&self, cycle: &Chain) -> Vec<Rational> {
        let mut v = self.restrict(cycle);
        self.rel_nontree.reduce(&mut v);
        self.free.iter().map(|&f| v[f].clone()).collect()
    }

    /// The `i`-th basis cycle: a fundamental cycle of a non-tree edge not
    /// eliminated by the relations.
    pub fn basis_cycle(&self, i: usize) -> Chain {
        self.fundamental_cycle(self.nontree[self.free[i]])
    }

    /// Whether a cycle bounds in the closed cover.
    pub fn is_null_homologous(&self, cycle: &Chain) -> bool {
        self.coordinates(cycle).iter().all(|c| c.is_zero())
    }

    /// Matrix of `g` on the closed cover's homology; column `i` is the image
    /// of basis cycle `i`.
    pub fn action_matrix(&self, g: usize) -> RatMatrix {
        let cols: Vec<Vec<Rational>> = (0..self.dim()).map(|i| self.coordinates(&self.act(g, &self.basis_cycle(i)))).collect();
        RatMatrix::from_columns(self.dim(), &cols)
    }

    /// Trace of `g` on the closed cover's homology, computed without a basis:
    /// the Lefschetz trace on the cycle space minus the trace on the span of
    /// the relations.
    pub fn trace(&self, g: usize) -> Result<i64> {
        let n = self.group.order() as i64;
        let edges = self.num_edges() as i64;
        let cycle_trace = if g == 0 { edges - n + 1 } else { 1 };
        let ginv = self.group.inv(g);
        let mut rel_trace = Rational::zero();
        for (row, &p) in self.rel_edges.basis().iter().zip(self.rel_edges.pivots()) {
            let (h, s) = self.edge_parts(p);
            rel_trace += &row[self.edge(self.group.mul(ginv, h), s)];
        }
        if !rel_trace.is_integer() {
            return Err(Error::invariant("trace on the relation span is not an integer"));
        }
        Ok(cycle_trace - rel_trace.to_integer().to_i64().unwrap_or(i64::MAX))
    }

    /// Trace on each conjugacy class representative.
    pub fn class_traces(&self) -> Result<Vec<i64>> {
        self.group.classes().representatives.iter().map(|&r| self.trace(r)).collect()
    }

    /// Multiplicity of each irreducible in the homology: `<trace, chi>`.
    pub fn multiplicities(&self, table: &CharacterTable) -> Result<IsotypicalVector> {
        let traces = self.class_traces()?;
        let field = table.field();
        let f: Vec<Cyclotomic> = traces.iter().map(|&t| Cyclotomic::from_int(field, t)).collect();
        let mut out = Vec::with_capacity(table.len());
        for r in 0..table.len() {
            let ip = table.inner_product(&f, &table.row(r).values);
            let m = ip
                .to_rational()
                .filter(|q| q.is_integer())
                .and_then(|q| q.to_integer().to_u64())
                .ok_or_else(|| Error::invariant(format!("homology multiplicity {} of row {} is not a count", ip, r)))?;
            out.push(m);
        }
        Ok(IsotypicalVector::new(out))
    }
}

/// Multiplicities of the irreducibles in `H^1(S; Q)` from the explicit
/// homology model (homology and cohomology have the same character).
pub fn h1_chain_complex_oracle(datum: &CoverDatum, table: &CharacterTable, cap: usize) -> Result<IsotypicalVector> {
    CoverHomology::new(datum, cap)?.multiplicities(table)
}
