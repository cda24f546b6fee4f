//! Regions of the AR-quiver and the elementary moves they define.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::bracket::BracketTable;
use crate::error::{Error, Result};
use crate::quiver::{col, roads_of, Catalog, FlagObject, IndecId, Shape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegionKind {
    RectA,
    Ia,
    IbPlus,
    IbMinus,
    IcPlus,
    IcMinus,
    IdPlus,
    IdMinus,
    Ie,
    II,
}

impl RegionKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegionKind::RectA => "RectA",
            RegionKind::Ia => "Ia",
            RegionKind::IbPlus => "IbPlus",
            RegionKind::IbMinus => "IbMinus",
            RegionKind::IcPlus => "IcPlus",
            RegionKind::IcMinus => "IcMinus",
            RegionKind::IdPlus => "IdPlus",
            RegionKind::IdMinus => "IdMinus",
            RegionKind::Ie => "Ie",
            RegionKind::II => "II",
        }
    }

    pub fn parse(s: &str) -> Option<RegionKind> {
        use RegionKind::*;
        [RectA, Ia, IbPlus, IbMinus, IcPlus, IcMinus, IdPlus, IdMinus, Ie, II].into_iter().find(|k| k.as_str() == s)
    }

    /// Kinds whose moves can drop a rank number by two.
    pub fn max_drop(&self) -> usize {
        if *self == RegionKind::II {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for RegionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Index parameters of a region. For type D `i, j` belong to the sink and
/// `i2, j2` (primed) to the source, with `p + 1` standing for `∞`. For
/// rectangles `(i, j)` is the source corner and `(i2, j2)` the sink corner.
/// Unused slots are `None`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct RegionParams {
    pub i: Option<usize>,
    pub j: Option<usize>,
    pub i2: Option<usize>,
    pub j2: Option<usize>,
}

impl RegionParams {
    fn new(i: Option<usize>, j: Option<usize>, i2: Option<usize>, j2: Option<usize>) -> RegionParams {
        RegionParams { i, j, i2, j2 }
    }

    /// Named entries in `i, j, i', j'` order.
    pub fn entries(&self) -> Vec<(&'static str, usize)> {
        [("i", self.i), ("j", self.j), ("i'", self.i2), ("j'", self.j2)]
            .into_iter()
            .filter_map(|(k, v)| v.map(|v| (k, v)))
            .collect()
    }
}

/// A region: its kind, the initial vertices (source, sink), the terminal
/// vertices with the fake vertex removed, and the vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub shape: Shape,
    pub kind: RegionKind,
    pub params: RegionParams,
    pub source: IndecId,
    pub sink: IndecId,
    term: Vec<IndecId>,
    members: BTreeSet<IndecId>,
    blockers: BTreeSet<IndecId>,
}

impl Region {
    fn new(shape: Shape, kind: RegionKind, params: RegionParams, source: IndecId, sink: IndecId, term: Vec<IndecId>) -> Region {
        let members = Catalog::of(shape).between(source, sink);
        let term = term.into_iter().filter(|&t| !shape.is_fake(t)).collect();
        let mut r = Region { shape, kind, params, source, sink, term, members, blockers: BTreeSet::new() };
        r.blockers = match kind {
            RegionKind::RectA => r.members.iter().copied().filter(|&m| inside_rectangle(&r, m)).collect(),
            _ => r.members.iter().copied().filter(|&m| blocks_d(&r, m)).collect(),
        };
        r
    }

    pub fn init(&self) -> [IndecId; 2] {
        [self.source, self.sink]
    }

    pub fn term(&self) -> &[IndecId] {
        &self.term
    }

    /// Vertices on oriented paths from the source to the sink (the fake
    /// vertex included when it lies on such a path).
    pub fn members(&self) -> &BTreeSet<IndecId> {
        &self.members
    }

    /// Drop of every rank number under the move, in catalog order:
    /// `Σ_init ⟨I,·⟩ - Σ_term ⟨I,·⟩`.
    pub fn drop_profile(&self) -> Vec<i64> {
        let table = BracketTable::of(self.shape);
        let cat = Catalog::of(self.shape);
        let init: Vec<usize> = self.init().iter().map(|&x| cat.position(x)).collect();
        let term: Vec<usize> = self.term.iter().map(|&x| cat.position(x)).collect();
        (0..table.size())
            .map(|r| {
                let gain: i64 = init.iter().map(|&c| table.at(r, c) as i64).sum();
                let loss: i64 = term.iter().map(|&c| table.at(r, c) as i64).sum();
                gain - loss
            })
            .collect()
    }

    /// Vertices that must not occur in `F` for the move to be elementary:
    /// members other than initial, terminal or fake vertices, minus the
    /// corner block of a kind II region cut off by its terminals. In type A
    /// this is the closed rectangle minus its four corners.
    pub fn blockers(&self) -> &BTreeSet<IndecId> {
        &self.blockers
    }

    pub fn interior(&self) -> BTreeSet<IndecId> {
        self.ids_with_drop(|d| d > 0)
    }

    pub fn nucleus(&self) -> BTreeSet<IndecId> {
        self.ids_with_drop(|d| d == 2)
    }

    fn ids_with_drop(&self, keep: impl Fn(i64) -> bool) -> BTreeSet<IndecId> {
        let cat = Catalog::of(self.shape);
        self.drop_profile().into_iter().zip(cat.ids()).filter(|(d, _)| keep(*d)).map(|(_, &id)| id).collect()
    }

    pub fn label(&self) -> String {
        let ids = |v: &[IndecId]| v.iter().map(|id| id.label(self.shape)).collect::<Vec<_>>().join(", ");
        format!("{} [{}] -> [{}]", self.kind, ids(&self.init()), ids(&self.term))
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// All regions with initial vertices `{a, b}`; the vertex with the smaller
/// column is the source.
pub fn regions_between(shape: Shape, a: IndecId, b: IndecId) -> Vec<Region> {
    if a == b || !shape.contains(a) || !shape.contains(b) || shape.is_fake(a) || shape.is_fake(b) {
        return Vec::new();
    }
    let (source, sink) = match col(shape, a).cmp(&col(shape, b)) {
        std::cmp::Ordering::Less => (a, b),
        std::cmp::Ordering::Greater => (b, a),
        std::cmp::Ordering::Equal => return Vec::new(),
    };
    RegionCatalog::of(shape).by_init.get(&(source, sink)).cloned().unwrap_or_default()
}

/// Every region of a shape, grouped by (source, sink).
#[derive(Debug)]
pub struct RegionCatalog {
    pub shape: Shape,
    all: Vec<Region>,
    by_init: HashMap<(IndecId, IndecId), Vec<Region>>,
}

impl RegionCatalog {
    pub fn of(shape: Shape) -> Arc<RegionCatalog> {
        static CACHE: OnceLock<Mutex<HashMap<Shape, Arc<RegionCatalog>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(c) = cache.lock().unwrap().get(&shape) {
            return c.clone();
        }
        let built = Arc::new(RegionCatalog::build(shape));
        cache.lock().unwrap().entry(shape).or_insert(built).clone()
    }

    fn build(shape: Shape) -> RegionCatalog {
        let all = match shape {
            Shape::A { p, q } => regions_a(shape, p, q),
            Shape::D { p } => regions_d(shape, p),
        };
        let mut by_init: HashMap<_, Vec<Region>> = HashMap::new();
        for r in &all {
            by_init.entry((r.source, r.sink)).or_default().push(r.clone());
        }
        RegionCatalog { shape, all, by_init }
    }

    pub fn all(&self) -> &[Region] {
        &self.all
    }

    pub fn with_sink(&self, sink: IndecId) -> impl Iterator<Item = &Region> {
        self.all.iter().filter(move |r| r.sink == sink)
    }
}

fn regions_a(shape: Shape, p: usize, q: usize) -> Vec<Region> {
    let mut out = Vec::new();
    for i in 1..=p {
        for j in 1..=q {
            for i2 in 1..i {
                for j2 in 1..j {
                    out.push(Region::new(
                        shape,
                        RegionKind::RectA,
                        RegionParams::new(Some(i), Some(j), Some(i2), Some(j2)),
                        IndecId::A { i, j },
                        IndecId::A { i: i2, j: j2 },
                        vec![IndecId::A { i, j: j2 }, IndecId::A { i: i2, j }],
                    ));
                }
            }
        }
    }
    out
}

fn regions_d(shape: Shape, p: usize) -> Vec<Region> {
    use IndecId::{Minus, Pair, Plus};
    let inf = p + 1;
    let mut out = Vec::new();
    let mut push = |kind, params, source, sink, term| out.push(Region::new(shape, kind, params, source, sink, term));
    let all4 = |i, j, i2, j2| RegionParams::new(Some(i), Some(j), Some(i2), Some(j2));

    // source I(i',j'), sink I(i,j)
    for i in 0..=inf {
        for j in (i + 1)..=inf {
            for i2 in (i + 1)..=inf {
                for j2 in (i2 + 1)..=inf {
                    if j2 <= j {
                        continue;
                    }
                    let source = Pair { i: i2, j: j2 };
                    let sink = Pair { i, j };
                    if shape.is_fake(source) || shape.is_fake(sink) {
                        continue;
                    }
                    let params = all4(i, j, i2, j2);
                    if i2 < j {
                        push(RegionKind::Ia, params, source, sink, vec![Pair { i, j: j2 }, Pair { i: i2, j }]);
                    } else {
                        push(
                            RegionKind::IbPlus,
                            params,
                            source,
                            sink,
                            vec![Pair { i, j: j2 }, Plus(j), Minus(i2)],
                        );
                        push(
                            RegionKind::IbMinus,
                            params,
                            source,
                            sink,
                            vec![Pair { i, j: j2 }, Minus(j), Plus(i2)],
                        );
                        if j < i2 {
                            push(RegionKind::II, params, source, sink, vec![Pair { i, j: i2 }, Pair { i: j, j: j2 }]);
                        }
                    }
                }
            }
        }
    }
    // source I(i',j'), sink I±(i)
    for i in 1..=p {
        for i2 in (i + 1)..=p {
            for j2 in (i2 + 1)..=inf {
                let params = RegionParams::new(Some(i), None, Some(i2), Some(j2));
                let source = Pair { i: i2, j: j2 };
                push(RegionKind::IcPlus, params, source, Plus(i), vec![Plus(i2), Pair { i, j: j2 }]);
                push(RegionKind::IcMinus, params, source, Minus(i), vec![Minus(i2), Pair { i, j: j2 }]);
            }
        }
    }
    // source I±(j'), sink I(i,j)
    for i in 0..=p {
        for j in (i + 1)..=p {
            for j2 in (j + 1)..=p {
                let params = RegionParams::new(Some(i), Some(j), None, Some(j2));
                let sink = Pair { i, j };
                push(RegionKind::IdPlus, params, Plus(j2), sink, vec![Plus(j), Pair { i, j: j2 }]);
                push(RegionKind::IdMinus, params, Minus(j2), sink, vec![Minus(j), Pair { i, j: j2 }]);
            }
        }
    }
    // source I±(i'), sink I∓(i)
    for i in 1..=p {
        for i2 in (i + 1)..=p {
            let params = RegionParams::new(Some(i), None, Some(i2), None);
            push(RegionKind::Ie, params, Plus(i2), Minus(i), vec![Pair { i, j: i2 }]);
            push(RegionKind::Ie, params, Minus(i2), Plus(i), vec![Pair { i, j: i2 }]);
        }
    }
    out
}

/// Both initial vertices occur in `f`.
pub fn is_admissible(r: &Region, f: &FlagObject) -> bool {
    r.shape == f.shape && f.mult(r.source) >= 1 && f.mult(r.sink) >= 1
}

/// Admissible, and no other summand of `f` blocks the region (see
/// [`Region::blockers`]). Initial and terminal vertices never block.
pub fn is_minimal_admissible(r: &Region, f: &FlagObject) -> bool {
    is_admissible(r, f) && r.blockers.iter().all(|&m| f.mult(m) == 0)
}

fn blocks_d(r: &Region, m: IndecId) -> bool {
    if m == r.source || m == r.sink || r.term.contains(&m) || r.shape.is_fake(m) {
        return false;
    }
    // a kind II move lands on I(i,i') + I(j,j'), so the corner block past
    // both terminals, i <= x < j and i' < y <= j', lies outside the move
    match (r.kind, r.source, r.sink, m) {
        (RegionKind::II, IndecId::Pair { i: i2, j: j2 }, IndecId::Pair { i, j }, IndecId::Pair { i: x, j: y }) => {
            !(i <= x && x < j && i2 < y && y <= j2)
        }
        _ => true,
    }
}

fn inside_rectangle(r: &Region, m: IndecId) -> bool {
    match (r.source, r.sink, m) {
        (IndecId::A { i, j }, IndecId::A { i: i2, j: j2 }, IndecId::A { i: x, j: y }) => {
            i2 <= x && x <= i && j2 <= y && y <= j && m != r.source && m != r.sink && !r.term.contains(&m)
        }
        _ => false,
    }
}

/// Replaces one copy of each initial vertex by the terminal vertices.
pub fn apply_move(f: &FlagObject, r: &Region) -> Result<FlagObject> {
    if !is_minimal_admissible(r, f) {
        return Err(Error::NotMinimalAdmissible { kind: r.kind.to_string() });
    }
    let mut out = f.clone();
    out.remove_one(r.source);
    out.remove_one(r.sink);
    for &t in &r.term {
        out.add(t, 1)?;
    }
    Ok(out)
}

/// Roads `(r, s)` with `r = s + 1` carrying the source and the sink; the
/// move then comes from the one-parameter group `E + τE_{rs}` of `P_s`.
/// `None` for the Ib kinds and when no such pair of roads exists.
pub fn weak_move_roads(r: &Region) -> Result<Option<(usize, usize)>> {
    if matches!(r.kind, RegionKind::IbPlus | RegionKind::IbMinus) {
        return Ok(None);
    }
    let from = roads_of(r.shape, r.source)?;
    let to = roads_of(r.shape, r.sink)?;
    Ok(to.iter().find(|&&s| from.contains(&(s + 1))).map(|&s| (s + 1, s)))
}

/// The move is a step of the weak order.
pub fn is_weak_move(r: &Region) -> Result<bool> {
    Ok(weak_move_roads(r)?.is_some())
}
