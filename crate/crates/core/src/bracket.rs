//! The pairing `⟨I,J⟩ = dim Hom` between indecomposables, rank vectors of
//! objects and the (reversed) rank order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::quiver::{object_dim, Catalog, FlagObject, IndecId, Shape};

/// `⟨I,J⟩`: the rank number indexed by `i` evaluated on the standard
/// representative of `j`. The fake vertex pairs to zero with everything.
pub fn bracket(shape: Shape, i: IndecId, j: IndecId) -> Result<usize> {
    for id in [i, j] {
        if !shape.contains(id) {
            return Err(Error::ForeignId { id, shape });
        }
    }
    if shape.is_fake(i) || shape.is_fake(j) {
        return Ok(0);
    }
    Ok(match shape {
        Shape::A { .. } => bracket_a(i, j),
        Shape::D { p } => bracket_d(p, i, j),
    })
}

fn ge(x: usize, y: usize) -> usize {
    usize::from(x >= y)
}

fn bracket_a(i: IndecId, j: IndecId) -> usize {
    let (IndecId::A { i: x, j: y }, IndecId::A { i: m, j: m2 }) = (i, j) else {
        unreachable!()
    };
    ge(x, m) * ge(y, m2)
}

fn bracket_d(p: usize, i: IndecId, j: IndecId) -> usize {
    let inf = p + 1;
    match j {
        // two-dimensional block (one-dimensional when m = 0); U and W are
        // distinct lines unless m = 0
        IndecId::Pair { i: m, j: m2 } if m2 <= p => match i {
            IndecId::Pair { i: x, j: y } if y == inf => usize::from(m >= 1) * ge(x, m) + ge(x, m2),
            IndecId::Plus(x) | IndecId::Minus(x) => ge(x, m2),
            IndecId::Pair { i: 0, j: y } => usize::from(m == 0) * ge(y, m2),
            IndecId::Pair { i: x, j: y } => ge(y, m2) * (ge(x, m) + ge(x, m2)),
            IndecId::A { .. } => unreachable!(),
        },
        // a bare flag vector: only the flag dimension sees it
        IndecId::Pair { i: m, .. } => match i {
            IndecId::Pair { i: x, j: y } if y == inf => ge(x, m),
            _ => 0,
        },
        IndecId::Plus(m) => match i {
            IndecId::Pair { i: x, j: y } if y == inf => ge(x, m),
            IndecId::Plus(x) => ge(x, m),
            IndecId::Pair { i: x, .. } if x >= 1 => ge(x, m),
            _ => 0,
        },
        IndecId::Minus(m) => match i {
            IndecId::Pair { i: x, j: y } if y == inf => ge(x, m),
            IndecId::Minus(x) => ge(x, m),
            IndecId::Pair { i: x, .. } if x >= 1 => ge(x, m),
            _ => 0,
        },
        IndecId::A { .. } => unreachable!(),
    }
}

/// `⟨I,J⟩` for all non-fake ids of one shape, rows indexed by `I`, in
/// catalog order. Lower unitriangular in that order.
#[derive(Debug)]
pub struct BracketTable {
    pub shape: Shape,
    size: usize,
    values: Vec<u32>,
}

impl BracketTable {
    /// Cached table for `shape`.
    pub fn of(shape: Shape) -> Arc<BracketTable> {
        static CACHE: OnceLock<Mutex<HashMap<Shape, Arc<BracketTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.lock().unwrap().get(&shape) {
            return t.clone();
        }
        let built = Arc::new(BracketTable::build(shape));
        cache.lock().unwrap().entry(shape).or_insert(built).clone()
    }

    fn build(shape: Shape) -> BracketTable {
        let cat = Catalog::of(shape);
        let ids = cat.ids();
        let size = ids.len();
        let mut values = Vec::with_capacity(size * size);
        for &i in ids {
            for &j in ids {
                values.push(bracket(shape, i, j).expect("catalog ids belong to the shape") as u32);
            }
        }
        BracketTable { shape, size, values }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Entry at catalog positions (row `i`, column `j`).
    pub fn at(&self, i: usize, j: usize) -> usize {
        self.values[i * self.size + j] as usize
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.values[i * self.size..(i + 1) * self.size]
    }
}

/// `⟨I,F⟩` for every non-fake `I`, aligned with the catalog order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankVector {
    pub shape: Shape,
    values: Vec<usize>,
}

impl RankVector {
    pub fn new(shape: Shape, values: Vec<usize>) -> Result<RankVector> {
        let len = Catalog::of(shape).len();
        if values.len() != len {
            return Err(Error::NotARankVector(format!("expected {len} entries, got {}", values.len())));
        }
        Ok(RankVector { shape, values })
    }

    pub fn zero(shape: Shape) -> RankVector {
        RankVector { shape, values: vec![0; Catalog::of(shape).len()] }
    }

    /// Entry at `id`; the fake vertex reads as 0.
    pub fn get(&self, id: IndecId) -> usize {
        match Catalog::of(self.shape).try_position(id) {
            Some(k) => self.values[k],
            None => 0,
        }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn ids(&self) -> Vec<IndecId> {
        Catalog::of(self.shape).ids().to_vec()
    }

    pub fn sum(&self) -> usize {
        self.values.iter().sum()
    }

    /// Entrywise `self >= other`.
    pub fn dominates(&self, other: &RankVector) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a >= b)
    }

    /// Entrywise difference `self - other` (may be negative).
    pub fn diff(&self, other: &RankVector) -> Vec<i64> {
        self.values.iter().zip(&other.values).map(|(&a, &b)| a as i64 - b as i64).collect()
    }

    pub fn add(&self, other: &RankVector) -> RankVector {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        RankVector { shape: self.shape, values }
    }
}

impl fmt::Display for RankVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn rank_vector(f: &FlagObject) -> RankVector {
    let table = BracketTable::of(f.shape);
    let mults = f.mult_vector();
    let values = (0..table.size())
        .map(|i| table.row(i).iter().zip(&mults).map(|(&b, &m)| b as usize * m).sum())
        .collect();
    RankVector { shape: f.shape, values }
}

fn same_dim(f: &FlagObject, g: &FlagObject) -> Result<()> {
    if f.shape != g.shape {
        return Err(Error::ShapeMismatch { left: f.shape, right: g.shape });
    }
    let (a, b) = (object_dim(f), object_dim(g));
    if a != b {
        return Err(Error::DimMismatch { left: a.to_string(), right: b.to_string() });
    }
    Ok(())
}

/// `F <=rk F'`: every rank number of `F` is at least the one of `F'`.
pub fn rank_leq(f: &FlagObject, g: &FlagObject) -> Result<bool> {
    same_dim(f, g)?;
    Ok(rank_vector(f).dominates(&rank_vector(g)))
}

/// Four-way verdict of a partial order comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Eq,
    Lt,
    Gt,
    Incomparable,
}

impl Verdict {
    pub fn from_leq(leq: bool, geq: bool) -> Verdict {
        match (leq, geq) {
            (true, true) => Verdict::Eq,
            (true, false) => Verdict::Lt,
            (false, true) => Verdict::Gt,
            (false, false) => Verdict::Incomparable,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Eq => "eq",
            Verdict::Lt => "lt",
            Verdict::Gt => "gt",
            Verdict::Incomparable => "incomparable",
        }
    }

    pub fn to_ordering(self) -> Option<Ordering> {
        match self {
            Verdict::Eq => Some(Ordering::Equal),
            Verdict::Lt => Some(Ordering::Less),
            Verdict::Gt => Some(Ordering::Greater),
            Verdict::Incomparable => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn rank_compare(f: &FlagObject, g: &FlagObject) -> Result<Verdict> {
    same_dim(f, g)?;
    let (a, b) = (rank_vector(f), rank_vector(g));
    Ok(Verdict::from_leq(a.dominates(&b), b.dominates(&a)))
}

/// Inverts [`rank_vector`]. The table is unitriangular, so forward
/// substitution over the integers is exact; the solution must then be
/// nonnegative.
pub fn object_from_ranks(shape: Shape, rv: &RankVector) -> Result<FlagObject> {
    if rv.shape != shape {
        return Err(Error::ShapeMismatch { left: shape, right: rv.shape });
    }
    let table = BracketTable::of(shape);
    let cat = Catalog::of(shape);
    let n = table.size();
    let mut mults = vec![0i64; n];
    for k in 0..n {
        let row = table.row(k);
        let acc: i64 = (0..k).map(|t| row[t] as i64 * mults[t]).sum();
        debug_assert_eq!(row[k], 1);
        let m = rv.values[k] as i64 - acc;
        if m < 0 {
            return Err(Error::NotARankVector(format!(
                "{rv}: negative multiplicity {m} for {}",
                cat.ids()[k].label(shape)
            )));
        }
        mults[k] = m;
    }
    FlagObject::from_summands(shape, cat.ids().iter().zip(mults).map(|(&id, m)| (id, m as usize)))
}
