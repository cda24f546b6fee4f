//! Quiver shapes, the catalog of indecomposable objects and the layout of
//! their Auslander–Reiten quiver.
//!
//! Two families are supported: `Q_{p,q,1}` (type A, two partial flags) and
//! `Q_{p,2,2}` (type D, two subspaces and a partial flag). In type D the
//! index `0` and the index `∞` are encoded as `0` and `p + 1`, so
//! `Pair { i: 0, j: p + 1 }` is the zero object `I(0,∞)` (the "fake"
//! vertex). It may be named by regions but never occurs as a summand.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    /// Two flags with arm lengths `p` and `q`.
    A { p: usize, q: usize },
    /// Two subspaces and a flag with arm length `p`.
    D { p: usize },
}

impl Shape {
    pub fn type_a(p: usize, q: usize) -> Result<Shape> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidShape(format!("type A needs p, q >= 1 (got {p}, {q})")));
        }
        Ok(Shape::A { p, q })
    }

    pub fn type_d(p: usize) -> Result<Shape> {
        if p == 0 {
            return Err(Error::InvalidShape("type D needs p >= 1".into()));
        }
        Ok(Shape::D { p })
    }

    pub fn p(&self) -> usize {
        match *self {
            Shape::A { p, .. } | Shape::D { p } => p,
        }
    }

    pub fn is_type_d(&self) -> bool {
        matches!(self, Shape::D { .. })
    }

    /// The encoding of `∞` (type D only; `p + 1`).
    pub fn inf(&self) -> usize {
        self.p() + 1
    }

    pub fn fake(&self) -> Option<IndecId> {
        match self {
            Shape::D { p } => Some(IndecId::Pair { i: 0, j: p + 1 }),
            Shape::A { .. } => None,
        }
    }

    pub fn is_fake(&self, id: IndecId) -> bool {
        self.fake() == Some(id)
    }

    /// True for every id of the extended quiver (the fake vertex included).
    pub fn contains(&self, id: IndecId) -> bool {
        match (*self, id) {
            (Shape::A { p, q }, IndecId::A { i, j }) => (1..=p).contains(&i) && (1..=q).contains(&j),
            (Shape::D { p }, IndecId::Pair { i, j }) => i < j && j <= p + 1,
            (Shape::D { p }, IndecId::Plus(i) | IndecId::Minus(i)) => (1..=p).contains(&i),
            _ => false,
        }
    }

    /// Number of coordinates of a dimension vector in jump form.
    fn jump_len(&self) -> usize {
        match *self {
            Shape::A { p, q } => p + q,
            Shape::D { p } => p + 2,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::A { p, q } => write!(f, "A(p={p},q={q})"),
            Shape::D { p } => write!(f, "D(p={p})"),
        }
    }
}

/// One vertex of the AR-quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndecId {
    /// Type A `I(i,j)`, `1 <= i <= p`, `1 <= j <= q`.
    A { i: usize, j: usize },
    /// Type D `I(i,j)` with `0 <= i < j <= p + 1` (`p + 1` standing for `∞`).
    Pair { i: usize, j: usize },
    Plus(usize),
    Minus(usize),
}

impl IndecId {
    /// The index used for tie-breaking and road bookkeeping.
    pub fn first_index(&self) -> usize {
        match *self {
            IndecId::A { i, .. } | IndecId::Pair { i, .. } | IndecId::Plus(i) | IndecId::Minus(i) => i,
        }
    }

    pub fn label(&self, shape: Shape) -> String {
        let idx = |t: usize| {
            if shape.is_type_d() && t == shape.inf() {
                "inf".to_string()
            } else {
                t.to_string()
            }
        };
        match *self {
            IndecId::A { i, j } => format!("I({i},{j})"),
            IndecId::Pair { i, j } => format!("I({},{})", idx(i), idx(j)),
            IndecId::Plus(i) => format!("I+({i})"),
            IndecId::Minus(i) => format!("I-({i})"),
        }
    }
}

/// Dimension vector of an object.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DimVector {
    A { a: Vec<usize>, b: Vec<usize> },
    D { a: Vec<usize>, k: usize, l: usize },
}

impl DimVector {
    pub fn zero(shape: Shape) -> DimVector {
        match shape {
            Shape::A { p, q } => DimVector::A { a: vec![0; p], b: vec![0; q] },
            Shape::D { p } => DimVector::D { a: vec![0; p], k: 0, l: 0 },
        }
    }

    pub fn shape(&self) -> Result<Shape> {
        match self {
            DimVector::A { a, b } => Shape::type_a(a.len(), b.len()),
            DimVector::D { a, .. } => Shape::type_d(a.len()),
        }
    }

    /// Ambient dimension `n`.
    pub fn n(&self) -> usize {
        match self {
            DimVector::A { a, .. } | DimVector::D { a, .. } => a.last().copied().unwrap_or(0),
        }
    }

    /// Checks monotonicity per arm, `a_p = b_q` (type A) and `k, l <= n` (type D).
    pub fn validate(&self) -> Result<()> {
        let monotone = |v: &[usize]| v.windows(2).all(|w| w[0] <= w[1]);
        match self {
            DimVector::A { a, b } => {
                self.shape()?;
                if !monotone(a) || !monotone(b) {
                    return Err(Error::InvalidDimVector(format!("{self}: arms must be nondecreasing")));
                }
                if a.last() != b.last() {
                    return Err(Error::InvalidDimVector(format!("{self}: a_p must equal b_q")));
                }
            }
            DimVector::D { a, k, l } => {
                self.shape()?;
                if !monotone(a) {
                    return Err(Error::InvalidDimVector(format!("{self}: flag dimensions must be nondecreasing")));
                }
                let n = self.n();
                if *k > n || *l > n {
                    return Err(Error::InvalidDimVector(format!("{self}: k and l must not exceed n = {n}")));
                }
            }
        }
        Ok(())
    }

    /// Parses `a_1,..,a_p;k;l` (type D) or `a_1,..,a_p;b_1,..,b_q` (type A).
    pub fn parse(type_d: bool, text: &str) -> Result<DimVector> {
        let parts: Vec<&str> = text.split(';').map(str::trim).collect();
        let list = |s: &str| -> Result<Vec<usize>> {
            s.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad number {x:?} in {text:?}"))))
                .collect()
        };
        let scalar = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad number {s:?} in {text:?}")));
        if type_d {
            if parts.len() != 3 {
                return Err(Error::Parse(format!("type D dimension vector needs a;k;l, got {text:?}")));
            }
            Ok(DimVector::D { a: list(parts[0])?, k: scalar(parts[1])?, l: scalar(parts[2])? })
        } else {
            if parts.len() != 2 {
                return Err(Error::Parse(format!("type A dimension vector needs a;b, got {text:?}")));
            }
            Ok(DimVector::A { a: list(parts[0])?, b: list(parts[1])? })
        }
    }

    /// Successive differences `a_t - a_{t-1}` (then `b`, or `k`, `l`).
    pub(crate) fn jumps(&self) -> Option<Vec<usize>> {
        let diffs = |v: &[usize]| -> Option<Vec<usize>> {
            let mut prev = 0;
            v.iter()
                .map(|&x| {
                    let d = x.checked_sub(prev)?;
                    prev = x;
                    Some(d)
                })
                .collect()
        };
        match self {
            DimVector::A { a, b } => {
                let mut out = diffs(a)?;
                out.extend(diffs(b)?);
                Some(out)
            }
            DimVector::D { a, k, l } => {
                let mut out = diffs(a)?;
                out.push(*k);
                out.push(*l);
                Some(out)
            }
        }
    }

    fn from_jumps(shape: Shape, jumps: &[usize]) -> DimVector {
        let cumulative = |v: &[usize]| {
            v.iter()
                .scan(0, |acc, &x| {
                    *acc += x;
                    Some(*acc)
                })
                .collect::<Vec<_>>()
        };
        match shape {
            Shape::A { p, .. } => DimVector::A { a: cumulative(&jumps[..p]), b: cumulative(&jumps[p..]) },
            Shape::D { p } => DimVector::D { a: cumulative(&jumps[..p]), k: jumps[p], l: jumps[p + 1] },
        }
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        match self {
            DimVector::A { a, b } => write!(f, "{};{}", join(a), join(b)),
            DimVector::D { a, k, l } => write!(f, "{};{};{}", join(a), k, l),
        }
    }
}

/// A direct sum of indecomposables, i.e. one GL(V)-orbit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagObject {
    pub shape: Shape,
    summands: BTreeMap<IndecId, usize>,
}

impl FlagObject {
    pub fn empty(shape: Shape) -> FlagObject {
        FlagObject { shape, summands: BTreeMap::new() }
    }

    pub fn from_summands<I>(shape: Shape, summands: I) -> Result<FlagObject>
    where
        I: IntoIterator<Item = (IndecId, usize)>,
    {
        let mut obj = FlagObject::empty(shape);
        for (id, mult) in summands {
            obj.add(id, mult)?;
        }
        Ok(obj)
    }

    /// Adds `mult` copies of `id`.
    pub fn add(&mut self, id: IndecId, mult: usize) -> Result<()> {
        if !self.shape.contains(id) {
            return Err(Error::ForeignId { id, shape: self.shape });
        }
        if self.shape.is_fake(id) {
            return Err(Error::FakeSummand);
        }
        if mult > 0 {
            *self.summands.entry(id).or_insert(0) += mult;
        }
        Ok(())
    }

    /// Removes one copy of `id`; returns false when it does not occur.
    pub(crate) fn remove_one(&mut self, id: IndecId) -> bool {
        match self.summands.get_mut(&id) {
            Some(m) if *m > 1 => {
                *m -= 1;
                true
            }
            Some(_) => {
                self.summands.remove(&id);
                true
            }
            None => false,
        }
    }

    pub fn mult(&self, id: IndecId) -> usize {
        self.summands.get(&id).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Summands with multiplicities, in catalog order.
    pub fn summands(&self) -> Vec<(IndecId, usize)> {
        let cat = Catalog::of(self.shape);
        let mut out: Vec<_> = self.summands.iter().map(|(&id, &m)| (id, m)).collect();
        out.sort_by_key(|(id, _)| cat.position(*id));
        out
    }

    /// Total number of summands counted with multiplicity.
    pub fn len(&self) -> usize {
        self.summands.values().sum()
    }

    pub fn direct_sum(&self, other: &FlagObject) -> Result<FlagObject> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch { left: self.shape, right: other.shape });
        }
        let mut out = self.clone();
        for (&id, &m) in &other.summands {
            out.add(id, m)?;
        }
        Ok(out)
    }

    /// Multiplicity vector aligned with [`list_indecomposables`].
    pub fn mult_vector(&self) -> Vec<usize> {
        let cat = Catalog::of(self.shape);
        let mut v = vec![0; cat.len()];
        for (&id, &m) in &self.summands {
            v[cat.position(id)] = m;
        }
        v
    }

    /// Canonical key: (catalog position, multiplicity) pairs in catalog order.
    pub fn canonical_key(&self) -> Vec<(usize, usize)> {
        let cat = Catalog::of(self.shape);
        let mut key: Vec<_> = self.summands.iter().map(|(&id, &m)| (cat.position(id), m)).collect();
        key.sort_unstable();
        key
    }

    pub fn label(&self) -> String {
        if self.summands.is_empty() {
            return "0".into();
        }
        self.summands()
            .into_iter()
            .map(|(id, m)| if m == 1 { id.label(self.shape) } else { format!("{m}*{}", id.label(self.shape)) })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for FlagObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Grid column of a vertex; every arrow raises it by one.
pub fn col(shape: Shape, id: IndecId) -> usize {
    match (shape, id) {
        (Shape::A { p, q }, IndecId::A { i, j }) => (p - i) + (q - j),
        (Shape::D { p }, IndecId::Pair { i, j }) => 2 * p + 1 - i - j,
        (Shape::D { p }, IndecId::Plus(i) | IndecId::Minus(i)) => 2 * p + 1 - 2 * i,
        _ => panic!("{id:?} does not belong to {shape}"),
    }
}

fn variant_rank(id: IndecId) -> u8 {
    match id {
        IndecId::A { .. } | IndecId::Pair { .. } => 0,
        IndecId::Plus(_) => 1,
        IndecId::Minus(_) => 2,
    }
}

/// All indecomposables (fake vertex excluded), by descending column then
/// ascending first index.
pub fn list_indecomposables(shape: Shape) -> Vec<IndecId> {
    let mut ids = Vec::new();
    match shape {
        Shape::A { p, q } => {
            for i in 1..=p {
                for j in 1..=q {
                    ids.push(IndecId::A { i, j });
                }
            }
        }
        Shape::D { p } => {
            for i in 1..=p {
                ids.push(IndecId::Plus(i));
                ids.push(IndecId::Minus(i));
            }
            for i in 0..=p {
                for j in (i + 1)..=(p + 1) {
                    if !(i == 0 && j == p + 1) {
                        ids.push(IndecId::Pair { i, j });
                    }
                }
            }
        }
    }
    ids.sort_by_key(|&id| (std::cmp::Reverse(col(shape, id)), id.first_index(), variant_rank(id)));
    ids
}

/// Dimension vector of one indecomposable (the fake vertex gives zero).
pub fn indec_dim(shape: Shape, id: IndecId) -> Result<DimVector> {
    Ok(DimVector::from_jumps(shape, &indec_jumps(shape, id)?))
}

pub(crate) fn indec_jumps(shape: Shape, id: IndecId) -> Result<Vec<usize>> {
    if !shape.contains(id) {
        return Err(Error::ForeignId { id, shape });
    }
    let mut v = vec![0; shape.jump_len()];
    match (shape, id) {
        (Shape::A { p, .. }, IndecId::A { i, j }) => {
            v[i - 1] = 1;
            v[p + j - 1] = 1;
        }
        (Shape::D { p }, IndecId::Pair { i, j }) => {
            if i >= 1 {
                v[i - 1] += 1;
            }
            if j <= p {
                v[j - 1] += 1;
                v[p] = 1;
                v[p + 1] = 1;
            }
        }
        (Shape::D { p }, IndecId::Plus(i)) => {
            v[i - 1] = 1;
            v[p] = 1;
        }
        (Shape::D { p }, IndecId::Minus(i)) => {
            v[i - 1] = 1;
            v[p + 1] = 1;
        }
        _ => unreachable!(),
    }
    Ok(v)
}

/// Multiplicity-weighted sum of summand dimension vectors.
pub fn object_dim(f: &FlagObject) -> DimVector {
    let mut acc = vec![0; f.shape.jump_len()];
    for (&id, &m) in &f.summands {
        let j = indec_jumps(f.shape, id).expect("summands belong to the shape");
        for (a, x) in acc.iter_mut().zip(j) {
            *a += m * x;
        }
    }
    DimVector::from_jumps(f.shape, &acc)
}

/// Roads (type D) through a vertex.
pub fn roads_of(shape: Shape, id: IndecId) -> Result<BTreeSet<usize>> {
    let Shape::D { p } = shape else {
        return Err(Error::RequiresTypeD);
    };
    if !shape.contains(id) {
        return Err(Error::ForeignId { id, shape });
    }
    Ok(match id {
        IndecId::Pair { i, j } => [i, j].into_iter().filter(|t| (1..=p).contains(t)).collect(),
        IndecId::Plus(i) | IndecId::Minus(i) => BTreeSet::from([i]),
        IndecId::A { .. } => unreachable!(),
    })
}

/// Arrows of the (extended) AR-quiver leaving `id`.
pub fn successors(shape: Shape, id: IndecId) -> Vec<IndecId> {
    let mut out = Vec::new();
    match (shape, id) {
        (Shape::A { .. }, IndecId::A { i, j }) => {
            if i > 1 {
                out.push(IndecId::A { i: i - 1, j });
            }
            if j > 1 {
                out.push(IndecId::A { i, j: j - 1 });
            }
        }
        (Shape::D { .. }, IndecId::Pair { i, j }) => {
            if j == i + 1 {
                if i >= 1 {
                    out.push(IndecId::Plus(i));
                    out.push(IndecId::Minus(i));
                }
            } else {
                out.push(IndecId::Pair { i, j: j - 1 });
            }
            if i >= 1 {
                out.push(IndecId::Pair { i: i - 1, j });
            }
        }
        (Shape::D { .. }, IndecId::Plus(i) | IndecId::Minus(i)) => out.push(IndecId::Pair { i: i - 1, j: i }),
        _ => {}
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineCount {
    pub line: String,
    pub found: usize,
    pub expected: usize,
}

/// Outcome of [`validate`]: per-road (type D) or per-path (type A) summand
/// counts, plus the `k`/`l` counts in type D.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub counts: Vec<LineCount>,
    pub dim_matches: bool,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.dim_matches
    }

    pub fn counts_ok(&self) -> bool {
        self.counts.iter().all(|c| c.found == c.expected)
    }

    pub fn violations(&self) -> impl Iterator<Item = &LineCount> {
        self.counts.iter().filter(|c| c.found != c.expected)
    }
}

/// Checks `object_dim(f) == dv` and reports the road/path counts.
pub fn validate(f: &FlagObject, dv: &DimVector) -> Result<ValidationReport> {
    let shape = dv.shape()?;
    if shape != f.shape {
        return Err(Error::ShapeMismatch { left: f.shape, right: shape });
    }
    let expected = dv
        .jumps()
        .ok_or_else(|| Error::InvalidDimVector(format!("{dv}: not monotone")))?;
    let mut counts = Vec::new();
    match shape {
        Shape::A { p, q } => {
            for t in 1..=p {
                let found = f.summands.iter().filter(|(id, _)| matches!(id, IndecId::A { i, .. } if *i == t)).map(|(_, m)| m).sum();
                counts.push(LineCount { line: format!("path i={t}"), found, expected: expected[t - 1] });
            }
            for t in 1..=q {
                let found = f.summands.iter().filter(|(id, _)| matches!(id, IndecId::A { j, .. } if *j == t)).map(|(_, m)| m).sum();
                counts.push(LineCount { line: format!("path j={t}"), found, expected: expected[p + t - 1] });
            }
        }
        Shape::D { p } => {
            for t in 1..=p {
                let found = f
                    .summands
                    .iter()
                    .filter(|(id, _)| roads_of(shape, **id).map(|r| r.contains(&t)).unwrap_or(false))
                    .map(|(_, m)| m)
                    .sum();
                counts.push(LineCount { line: format!("road {t}"), found, expected: expected[t - 1] });
            }
            let k_found = f
                .summands
                .iter()
                .filter(|(id, _)| matches!(id, IndecId::Plus(_)) || matches!(id, IndecId::Pair { j, .. } if *j <= p))
                .map(|(_, m)| m)
                .sum();
            let l_found = f
                .summands
                .iter()
                .filter(|(id, _)| matches!(id, IndecId::Minus(_)) || matches!(id, IndecId::Pair { j, .. } if *j <= p))
                .map(|(_, m)| m)
                .sum();
            counts.push(LineCount { line: "k".into(), found: k_found, expected: expected[p] });
            counts.push(LineCount { line: "l".into(), found: l_found, expected: expected[p + 1] });
        }
    }
    Ok(ValidationReport { counts, dim_matches: object_dim(f) == *dv })
}

/// Per-shape lookup data: the ordered id list, positions, columns, jump
/// vectors and reachability in the extended quiver.
#[derive(Debug)]
pub struct Catalog {
    pub shape: Shape,
    ids: Vec<IndecId>,
    index: HashMap<IndecId, usize>,
    cols: Vec<usize>,
    jumps: Vec<Vec<usize>>,
    /// Vertices of the extended quiver: `ids` followed by the fake vertex.
    ext: Vec<IndecId>,
    /// `reach[x][y]`: there is an oriented path (possibly empty) from x to y.
    reach: Vec<Vec<bool>>,
}

impl Catalog {
    /// Cached catalog for `shape`.
    pub fn of(shape: Shape) -> Arc<Catalog> {
        static CACHE: OnceLock<Mutex<HashMap<Shape, Arc<Catalog>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(c) = cache.lock().unwrap().get(&shape) {
            return c.clone();
        }
        let built = Arc::new(Catalog::build(shape));
        cache.lock().unwrap().entry(shape).or_insert(built).clone()
    }

    fn build(shape: Shape) -> Catalog {
        let ids = list_indecomposables(shape);
        let index: HashMap<_, _> = ids.iter().enumerate().map(|(k, &id)| (id, k)).collect();
        let cols = ids.iter().map(|&id| col(shape, id)).collect();
        let jumps = ids.iter().map(|&id| indec_jumps(shape, id).unwrap()).collect();
        let mut ext = ids.clone();
        ext.extend(shape.fake());
        let ext_index: HashMap<_, _> = ext.iter().enumerate().map(|(k, &id)| (id, k)).collect();
        let m = ext.len();
        let mut reach = vec![vec![false; m]; m];
        // Columns strictly increase along arrows, so sweeping by descending
        // column visits every successor before its predecessors.
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&x| std::cmp::Reverse(col(shape, ext[x])));
        for &x in &order {
            reach[x][x] = true;
            for s in successors(shape, ext[x]) {
                let y = ext_index[&s];
                let row = reach[y].clone();
                for (r, v) in reach[x].iter_mut().zip(row) {
                    *r |= v;
                }
            }
        }
        Catalog { shape, ids, index, cols, jumps, ext, reach }
    }

    pub fn ids(&self) -> &[IndecId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Position in [`list_indecomposables`] order; the fake vertex maps to `len()`.
    pub fn position(&self, id: IndecId) -> usize {
        match self.index.get(&id) {
            Some(&k) => k,
            None if self.shape.is_fake(id) => self.ids.len(),
            None => panic!("{id:?} does not belong to {}", self.shape),
        }
    }

    pub fn try_position(&self, id: IndecId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn col_at(&self, k: usize) -> usize {
        self.cols[k]
    }

    pub(crate) fn jumps_at(&self, k: usize) -> &[usize] {
        &self.jumps[k]
    }

    /// Path from `x` to `y` in the extended quiver (reflexive).
    pub fn reaches(&self, x: IndecId, y: IndecId) -> bool {
        self.reach[self.position(x)][self.position(y)]
    }

    /// Vertices of the extended quiver lying on a path from `x` to `y`.
    pub fn between(&self, x: IndecId, y: IndecId) -> BTreeSet<IndecId> {
        let (a, b) = (self.position(x), self.position(y));
        (0..self.ext.len()).filter(|&z| self.reach[a][z] && self.reach[z][b]).map(|z| self.ext[z]).collect()
    }
}
