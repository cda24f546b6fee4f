//! Orbit enumeration, the three partial orders and the constructive chain
//! from a rank comparison to a sequence of elementary moves.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::bracket::{rank_leq, rank_vector, RankVector, Verdict};
use crate::error::{Error, Result};
use crate::quiver::{Catalog, DimVector, FlagObject, Shape};
use crate::regions::{apply_move, is_minimal_admissible, is_weak_move, regions_between, Region, RegionCatalog};

/// All objects of dimension vector `dv`, sorted by canonical key.
pub fn enumerate_objects(shape: Shape, dv: &DimVector) -> Result<Vec<FlagObject>> {
    if dv.shape()? != shape {
        return Err(Error::ShapeMismatch { left: shape, right: dv.shape()? });
    }
    dv.validate()?;
    let target = dv.jumps().expect("validated");
    let cat = Catalog::of(shape);
    let mut out = Vec::new();
    let mut mults = vec![0usize; cat.len()];
    let mut remaining = target;
    dfs(&cat, 0, &mut remaining, &mut mults, &mut out);
    let mut objects: Vec<FlagObject> = out
        .into_iter()
        .map(|m| FlagObject::from_summands(shape, cat.ids().iter().copied().zip(m)).expect("catalog ids"))
        .collect();
    objects.sort_by_cached_key(FlagObject::canonical_key);
    Ok(objects)
}

fn dfs(cat: &Catalog, k: usize, remaining: &mut [usize], mults: &mut [usize], out: &mut Vec<Vec<usize>>) {
    if remaining.iter().all(|&r| r == 0) {
        out.push(mults.to_vec());
        return;
    }
    if k == cat.len() {
        return;
    }
    let jumps = cat.jumps_at(k);
    let max = jumps.iter().zip(remaining.iter()).filter(|(j, _)| **j > 0).map(|(j, r)| r / j).min().unwrap_or(0);
    for m in (0..=max).rev() {
        for (r, j) in remaining.iter_mut().zip(jumps) {
            *r -= m * j;
        }
        mults[k] = m;
        dfs(cat, k + 1, remaining, mults, out);
        for (r, j) in remaining.iter_mut().zip(jumps) {
            *r += m * j;
        }
    }
    mults[k] = 0;
}

/// Square boolean matrix stored as bit rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Relation {
    pub fn new(n: usize) -> Relation {
        let words = n.div_ceil(64).max(1);
        Relation { n, words, bits: vec![0; n * words] }
    }

    pub fn identity(n: usize) -> Relation {
        let mut r = Relation::new(n);
        for x in 0..n {
            r.set(x, x);
        }
        r
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[x * self.words + y / 64] >> (y % 64) & 1 == 1
    }

    pub fn set(&mut self, x: usize, y: usize) {
        self.bits[x * self.words + y / 64] |= 1 << (y % 64);
    }

    fn row(&self, x: usize) -> &[u64] {
        &self.bits[x * self.words..(x + 1) * self.words]
    }

    /// Reflexive-transitive closure (Warshall on bit rows).
    pub fn closure(&self) -> Relation {
        let mut r = self.clone();
        for x in 0..self.n {
            r.set(x, x);
        }
        for k in 0..self.n {
            let krow = r.row(k).to_vec();
            for x in 0..self.n {
                if r.get(x, k) {
                    for (w, kw) in r.bits[x * self.words..(x + 1) * self.words].iter_mut().zip(&krow) {
                        *w |= kw;
                    }
                }
            }
        }
        r
    }

    /// Pairs `x != y` with `x R y`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if x != y && self.get(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn is_partial_order(&self) -> bool {
        self.check_partial_order().is_ok()
    }

    fn check_partial_order(&self) -> Result<()> {
        for x in 0..self.n {
            if !self.get(x, x) {
                return Err(Error::InvalidConfig(format!("relation is not reflexive at {x}")));
            }
            for y in (x + 1)..self.n {
                if self.get(x, y) && self.get(y, x) {
                    return Err(Error::Cyclic(x, y));
                }
            }
        }
        if self.closure() != *self {
            return Err(Error::InvalidConfig("relation is not transitive".into()));
        }
        Ok(())
    }

    /// Row `x` as little-endian bytes (bit `y` of the row is bit `y % 8` of byte `y / 8`).
    pub fn row_bytes(&self, x: usize) -> Vec<u8> {
        let nbytes = self.n.div_ceil(8);
        self.row(x).iter().flat_map(|w| w.to_le_bytes()).take(nbytes).collect()
    }

    pub fn from_row_bytes(rows: &[Vec<u8>]) -> Relation {
        let n = rows.len();
        let mut r = Relation::new(n);
        for (x, row) in rows.iter().enumerate() {
            for y in 0..n {
                if row.get(y / 8).is_some_and(|b| b >> (y % 8) & 1 == 1) {
                    r.set(x, y);
                }
            }
        }
        r
    }
}

/// Cover pairs of a partial order, in row-major order.
pub fn transitive_reduction(rel: &Relation) -> Result<Vec<(usize, usize)>> {
    rel.check_partial_order()?;
    let n = rel.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x == y || !rel.get(x, y) {
                continue;
            }
            let covered = (0..n).any(|z| z != x && z != y && rel.get(x, z) && rel.get(z, y));
            if !covered {
                out.push((x, y));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveEdge {
    pub from: usize,
    pub to: usize,
    pub region: Region,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Move,
    Rank,
    Weak,
}

impl OrderKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            OrderKind::Move => "move",
            OrderKind::Rank => "rank",
            OrderKind::Weak => "weak",
        }
    }
}

/// Objects of one dimension vector with a partial order on them.
#[derive(Clone, Debug)]
pub struct OrbitPoset {
    pub shape: Shape,
    pub dv: DimVector,
    pub order: OrderKind,
    pub nodes: Vec<FlagObject>,
    /// Generating move edges (empty for the rank order).
    pub edges: Vec<MoveEdge>,
    pub relation: Relation,
}

impl OrbitPoset {
    pub fn index_of(&self, f: &FlagObject) -> Option<usize> {
        let key = f.canonical_key();
        self.nodes.binary_search_by(|n| n.canonical_key().cmp(&key)).ok()
    }

    /// Move edges with parallel copies collapsed, sorted.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        let set: BTreeSet<_> = self.edges.iter().map(|e| (e.from, e.to)).collect();
        set.into_iter().collect()
    }

    pub fn hasse(&self) -> Result<Vec<(usize, usize)>> {
        transitive_reduction(&self.relation)
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&x| (0..self.nodes.len()).all(|y| y == x || !self.relation.get(x, y)))
            .collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&x| (0..self.nodes.len()).all(|y| y == x || !self.relation.get(y, x)))
            .collect()
    }

    pub fn compare(&self, x: usize, y: usize) -> Verdict {
        Verdict::from_leq(self.relation.get(x, y), self.relation.get(y, x))
    }
}

/// All elementary moves out of `f`, in deterministic order.
pub fn moves_from(f: &FlagObject) -> Vec<(Region, FlagObject)> {
    let summands = f.summands();
    let mut out = Vec::new();
    for (a, &(x, _)) in summands.iter().enumerate() {
        for &(y, _) in &summands[a + 1..] {
            for r in regions_between(f.shape, x, y) {
                if is_minimal_admissible(&r, f) {
                    let g = apply_move(f, &r).expect("minimal admissible");
                    out.push((r, g));
                }
            }
        }
    }
    out
}

fn move_edges(nodes: &[FlagObject]) -> Vec<MoveEdge> {
    let index: HashMap<_, _> = nodes.iter().enumerate().map(|(k, f)| (f.canonical_key(), k)).collect();
    nodes
        .par_iter()
        .enumerate()
        .map(|(from, f)| {
            moves_from(f)
                .into_iter()
                .map(|(region, g)| MoveEdge { from, to: index[&g.canonical_key()], region })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn closure_of(n: usize, edges: &[MoveEdge]) -> Relation {
    let mut r = Relation::identity(n);
    for e in edges {
        r.set(e.from, e.to);
    }
    r.closure()
}

pub fn move_poset(shape: Shape, dv: &DimVector) -> Result<OrbitPoset> {
    let nodes = enumerate_objects(shape, dv)?;
    let edges = move_edges(&nodes);
    let relation = closure_of(nodes.len(), &edges);
    Ok(OrbitPoset { shape, dv: dv.clone(), order: OrderKind::Move, nodes, edges, relation })
}

pub fn rank_poset(shape: Shape, dv: &DimVector) -> Result<OrbitPoset> {
    let nodes = enumerate_objects(shape, dv)?;
    let ranks: Vec<RankVector> = nodes.par_iter().map(rank_vector).collect();
    let n = nodes.len();
    let rows: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|x| (0..n).filter(|&y| ranks[x].dominates(&ranks[y])).collect())
        .collect();
    let mut relation = Relation::new(n);
    for (x, row) in rows.into_iter().enumerate() {
        for y in row {
            relation.set(x, y);
        }
    }
    Ok(OrbitPoset { shape, dv: dv.clone(), order: OrderKind::Rank, nodes, edges: Vec::new(), relation })
}

/// Suborder generated by the moves that sweep along a minimal parabolic.
pub fn weak_poset(shape: Shape, dv: &DimVector) -> Result<OrbitPoset> {
    if !shape.is_type_d() {
        return Err(Error::RequiresTypeD);
    }
    let nodes = enumerate_objects(shape, dv)?;
    let mut edges = Vec::new();
    for e in move_edges(&nodes) {
        if is_weak_move(&e.region)? {
            edges.push(e);
        }
    }
    let relation = closure_of(nodes.len(), &edges);
    Ok(OrbitPoset { shape, dv: dv.clone(), order: OrderKind::Weak, nodes, edges, relation })
}

pub fn poset(shape: Shape, dv: &DimVector, order: OrderKind) -> Result<OrbitPoset> {
    match order {
        OrderKind::Move => move_poset(shape, dv),
        OrderKind::Rank => rank_poset(shape, dv),
        OrderKind::Weak => weak_poset(shape, dv),
    }
}

/// A region dominant for `(F, F')`: every interior rank gap is at least 1
/// and every nucleus gap at least 2.
pub fn is_dominant(r: &Region, rf: &RankVector, rg: &RankVector) -> bool {
    let gap = rf.diff(rg);
    r.drop_profile().iter().zip(gap).all(|(&d, g)| d <= 0 || g >= d)
}

/// One step of the chain from `F` towards `F'`: a minimal admissible,
/// dominant region, preferring the rightmost sink where the rank vectors
/// differ. When every region into that sink is blocked by another summand
/// of `F`, the next differing vertex is tried as sink, and so on.
pub fn find_dominant_move(f: &FlagObject, g: &FlagObject) -> Result<(Region, FlagObject)> {
    if !rank_leq(f, g)? {
        return Err(Error::NotComparable);
    }
    let (rf, rg) = (rank_vector(f), rank_vector(g));
    let cat = Catalog::of(f.shape);
    let regions = RegionCatalog::of(f.shape);
    // catalog order is descending column, ascending first index
    let sinks = (0..cat.len()).filter(|&k| rf.values()[k] != rg.values()[k]).map(|k| cat.ids()[k]);
    for sink in sinks.filter(|&s| f.mult(s) > 0) {
        for (source, _) in f.summands() {
            for r in regions.with_sink(sink).filter(|r| r.source == source) {
                if is_minimal_admissible(r, f) && is_dominant(r, &rf, &rg) {
                    let next = apply_move(f, r)?;
                    debug_assert!(rank_vector(&next).dominates(&rg));
                    return Ok((r.clone(), next));
                }
            }
        }
    }
    Err(Error::NoDominantMove { from: f.label(), to: g.label() })
}

/// Repeats [`find_dominant_move`] until `F'` is reached.
pub fn move_chain(f: &FlagObject, g: &FlagObject) -> Result<Vec<(Region, FlagObject)>> {
    if !rank_leq(f, g)? {
        return Err(Error::NotComparable);
    }
    let target = rank_vector(g);
    let mut chain = Vec::new();
    let mut cur = f.clone();
    while rank_vector(&cur) != target {
        let (r, next) = find_dominant_move(&cur, g)?;
        chain.push((r, next.clone()));
        cur = next;
    }
    debug_assert_eq!(&cur, g);
    Ok(chain)
}
