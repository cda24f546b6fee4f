//! Ground truth by linear algebra: explicit configurations `(U, W, V_•)`
//! over `GF(q)`, their rank numbers, classification back to objects, and
//! the one-parameter curves realising elementary moves.

pub mod linalg;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bracket::{object_from_ranks, RankVector};
use crate::error::{Error, Result};
use crate::quiver::{Catalog, DimVector, FlagObject, IndecId, Shape};
use crate::regions::{is_minimal_admissible, Region, RegionKind};
pub use linalg::{Fp, Row};

/// Two subspaces `U`, `W` of `K^n` (row generators) and the standard
/// coordinate flag `V_{a_t} = ⟨e_1, .., e_{a_t}⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceConfig {
    pub field: Fp,
    pub n: usize,
    pub a: Vec<usize>,
    pub u: Vec<Row>,
    pub w: Vec<Row>,
}

impl SubspaceConfig {
    pub fn new(q: u32, a: Vec<usize>, u: Vec<Row>, w: Vec<Row>) -> Result<SubspaceConfig> {
        let field = Fp::new(q)?;
        if a.is_empty() || !a.windows(2).all(|x| x[0] <= x[1]) {
            return Err(Error::InvalidConfig(format!("flag dimensions {a:?} must be a nonempty nondecreasing list")));
        }
        let n = *a.last().unwrap();
        let reduce = |m: Vec<Row>| -> Result<Vec<Row>> {
            m.into_iter()
                .map(|r| {
                    if r.len() != n {
                        Err(Error::InvalidConfig(format!("row of length {} in ambient dimension {n}", r.len())))
                    } else {
                        Ok(r.into_iter().map(|x| x % q).collect())
                    }
                })
                .collect()
        };
        let (u, w) = (reduce(u)?, reduce(w)?);
        for (name, m) in [("U", &u), ("W", &w)] {
            if field.rank(m) != m.len() {
                return Err(Error::InvalidConfig(format!("rows of {name} are linearly dependent")));
            }
        }
        Ok(SubspaceConfig { field, n, a, u, w })
    }

    /// Normalises a configuration given with an arbitrary flag: `flag` is an
    /// invertible `n × n` matrix whose first `a_t` rows span `V_{a_t}`.
    pub fn with_flag(q: u32, a: Vec<usize>, flag: Vec<Row>, u: Vec<Row>, w: Vec<Row>) -> Result<SubspaceConfig> {
        let field = Fp::new(q)?;
        let n = a.last().copied().unwrap_or(0);
        if flag.len() != n || flag.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidConfig(format!("flag matrix must be {n} x {n}")));
        }
        let flag: Vec<Row> = flag.into_iter().map(|r| r.into_iter().map(|x| x % q).collect()).collect();
        let inv = field.inverse(&flag).ok_or_else(|| Error::InvalidConfig("flag matrix is singular".into()))?;
        // coordinates with respect to the flag basis: v ↦ v · flag⁻¹
        let to_flag = |m: Vec<Row>| -> Result<Vec<Row>> {
            if m.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidConfig(format!("rows must have length {n}")));
            }
            Ok(field.mul_mat(&m, &inv, n))
        };
        SubspaceConfig::new(q, a, to_flag(u)?, to_flag(w)?)
    }

    pub fn p(&self) -> usize {
        self.a.len()
    }

    pub fn shape(&self) -> Shape {
        Shape::D { p: self.p() }
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector::D { a: self.a.clone(), k: self.u.len(), l: self.w.len() }
    }

    /// `V_{a_t}` for `t` in `0..=p` (`V_0 = 0`).
    fn flag_space(&self, t: usize) -> Vec<Row> {
        let d = if t == 0 { 0 } else { self.a[t - 1] };
        self.field.coordinate_span(self.n, d)
    }

    fn meet(&self, x: &[Row], y: &[Row]) -> Vec<Row> {
        self.field.intersect(x, y, self.n)
    }

    /// Applies `g` (acting on column vectors) to `U` and `W`.
    pub fn act(&self, g: &[Row]) -> SubspaceConfig {
        let gt = self.field.transpose(g, self.n);
        let map = |m: &[Row]| self.field.mul_mat(m, &gt, self.n);
        SubspaceConfig { u: map(&self.u), w: map(&self.w), ..self.clone() }
    }
}

/// `⟨I, c⟩` for every non-fake `I`, computed by elimination.
pub fn config_ranks(c: &SubspaceConfig) -> RankVector {
    let shape = c.shape();
    let p = c.p();
    let values = Catalog::of(shape)
        .ids()
        .iter()
        .map(|&id| match id {
            IndecId::Pair { i, j } if j == p + 1 => c.a[i - 1],
            IndecId::Plus(i) => c.meet(&c.flag_space(i), &c.u).len(),
            IndecId::Minus(i) => c.meet(&c.flag_space(i), &c.w).len(),
            IndecId::Pair { i, j } => {
                let vj = c.flag_space(j);
                let uj = c.meet(&vj, &c.u);
                let wj = c.meet(&vj, &c.w);
                let triple = c.meet(&uj, &wj).len();
                if i == 0 {
                    triple
                } else {
                    triple + c.meet(&c.flag_space(i), &c.field.sum(&uj, &wj)).len()
                }
            }
            IndecId::A { .. } => unreachable!(),
        })
        .collect();
    RankVector::new(shape, values).expect("one value per catalog id")
}

/// `dim ker φ` for `φ: (U ∩ V_{a_j}) × (W ∩ V_{a_j}) → V_{a_j} / V_{a_i}`,
/// `(u, w) ↦ u + w`, with `0 <= i < j <= p`.
pub fn phi_kernel_dim(c: &SubspaceConfig, i: usize, j: usize) -> Result<usize> {
    if i >= j || j > c.p() {
        return Err(Error::InvalidConfig(format!("need 0 <= i < j <= p, got i={i}, j={j}")));
    }
    let vj = c.flag_space(j);
    let uj = c.meet(&vj, &c.u);
    let wj = c.meet(&vj, &c.w);
    let lo = if i == 0 { 0 } else { c.a[i - 1] };
    let hi = c.a[j - 1];
    // the quotient V_{a_j}/V_{a_i} reads the coordinates lo..hi
    let images: Vec<Row> = uj.iter().chain(&wj).map(|r| r[lo..hi].to_vec()).collect();
    let rank = if hi > lo { c.field.rank(&images) } else { 0 };
    Ok(uj.len() + wj.len() - rank)
}

pub fn classify(c: &SubspaceConfig) -> Result<FlagObject> {
    object_from_ranks(c.shape(), &config_ranks(c))
}

/// Position of one summand's basis vectors and generators inside a
/// standard representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub id: IndecId,
    /// Global coordinates of the block's basis vectors, lower flag index first.
    pub coords: Vec<usize>,
    pub u_row: Option<usize>,
    pub w_row: Option<usize>,
}

/// A standard representative together with its block layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StdLayout {
    pub config: SubspaceConfig,
    pub blocks: Vec<Block>,
}

impl StdLayout {
    pub fn block_of(&self, id: IndecId) -> Option<&Block> {
        self.blocks.iter().find(|b| b.id == id)
    }
}

/// Direct sum of the per-summand standard representatives. Inside the
/// block of `I(i,j)`, `U = ⟨e_j⟩` and `W = ⟨e_i + e_j⟩`, with `e_0 = 0` and
/// every generator involving `e_∞` dropped; `I+` spans `U`, `I-` spans `W`.
pub fn std_layout(f: &FlagObject, q: u32) -> Result<StdLayout> {
    let Shape::D { p } = f.shape else {
        return Err(Error::RequiresTypeD);
    };
    let field = Fp::new(q)?;
    // (flag level, block) per basis vector, and generators as local index lists
    struct Local {
        id: IndecId,
        levels: Vec<usize>,
        u: Option<Vec<usize>>,
        w: Option<Vec<usize>>,
    }
    let mut locals = Vec::new();
    for (id, m) in f.summands() {
        for _ in 0..m {
            locals.push(match id {
                IndecId::Pair { i, j } if j == p + 1 => Local { id, levels: vec![i], u: None, w: None },
                IndecId::Pair { i: 0, j } => Local { id, levels: vec![j], u: Some(vec![0]), w: Some(vec![0]) },
                IndecId::Pair { i, j } => Local { id, levels: vec![i, j], u: Some(vec![1]), w: Some(vec![0, 1]) },
                IndecId::Plus(i) => Local { id, levels: vec![i], u: Some(vec![0]), w: None },
                IndecId::Minus(i) => Local { id, levels: vec![i], u: None, w: Some(vec![0]) },
                IndecId::A { .. } => unreachable!(),
            });
        }
    }
    let mut vectors: Vec<(usize, usize, usize)> = Vec::new();
    for (b, l) in locals.iter().enumerate() {
        for (k, &lev) in l.levels.iter().enumerate() {
            vectors.push((lev, b, k));
        }
    }
    vectors.sort();
    let n = vectors.len();
    let mut coord: Vec<Vec<usize>> = locals.iter().map(|l| vec![0; l.levels.len()]).collect();
    for (g, &(_, b, k)) in vectors.iter().enumerate() {
        coord[b][k] = g;
    }
    let mut u = Vec::new();
    let mut w = Vec::new();
    let mut blocks = Vec::new();
    for (b, l) in locals.iter().enumerate() {
        let row = |idx: &Vec<usize>| {
            let mut r = vec![0u32; n];
            for &k in idx {
                r[coord[b][k]] = 1;
            }
            r
        };
        let u_row = l.u.as_ref().map(|idx| {
            u.push(row(idx));
            u.len() - 1
        });
        let w_row = l.w.as_ref().map(|idx| {
            w.push(row(idx));
            w.len() - 1
        });
        blocks.push(Block { id: l.id, coords: coord[b].clone(), u_row, w_row });
    }
    let dv = crate::quiver::object_dim(f);
    let DimVector::D { a, .. } = dv else { unreachable!() };
    let config = SubspaceConfig { field, n, a, u, w };
    Ok(StdLayout { config, blocks })
}

pub fn std_config(f: &FlagObject, q: u32) -> Result<SubspaceConfig> {
    Ok(std_layout(f, q)?.config)
}

/// Which generator of the sink block gets the `τ`-term, and which basis
/// vector of the source block it adds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    U,
    W,
    Both,
}

/// The standard representative of `f` with the sink generator of `r`
/// perturbed by `τ` times a basis vector of the source block. At `τ = 0`
/// this is `std_config(f)`; for `τ ≠ 0` it lies in the orbit of the moved
/// object.
pub fn curve(f: &FlagObject, r: &Region, tau: u32, q: u32) -> Result<SubspaceConfig> {
    if !is_minimal_admissible(r, f) {
        return Err(Error::NotMinimalAdmissible { kind: r.kind.to_string() });
    }
    let Shape::D { p } = f.shape else {
        return Err(Error::RequiresTypeD);
    };
    let layout = std_layout(f, q)?;
    let src = layout.block_of(r.source).expect("admissible");
    let snk = layout.block_of(r.sink).expect("admissible");
    let lower = src.coords[0];
    let (target, vector) = match r.kind {
        RegionKind::Ia => {
            if r.params.j2 == Some(p + 1) {
                return Err(Error::UnsupportedCurve(r.label()));
            }
            (Target::W, src.coords[1])
        }
        RegionKind::IbPlus => (Target::W, lower),
        RegionKind::IbMinus => (Target::U, lower),
        RegionKind::IcPlus => (Target::U, lower),
        RegionKind::IcMinus => (Target::W, lower),
        RegionKind::IdPlus => (Target::W, lower),
        RegionKind::IdMinus => (Target::U, lower),
        RegionKind::Ie => match r.sink {
            IndecId::Plus(_) => (Target::U, lower),
            _ => (Target::W, lower),
        },
        RegionKind::II => (Target::Both, lower),
        RegionKind::RectA => return Err(Error::RequiresTypeD),
    };
    let mut c = layout.config.clone();
    let t = tau % q;
    let bump = |rows: &mut Vec<Row>, idx: Option<usize>| {
        let k = idx.expect("sink block carries the perturbed generator");
        rows[k][vector] = c.field.add(rows[k][vector], t);
    };
    if matches!(target, Target::U | Target::Both) {
        bump(&mut c.u, snk.u_row);
    }
    if matches!(target, Target::W | Target::Both) {
        bump(&mut c.w, snk.w_row);
    }
    Ok(c)
}

/// Uniformly random full-rank `U` (k × n) and `W` (l × n) with the
/// standard flag of dimensions `a`.
pub fn random_config(a: &[usize], k: usize, l: usize, q: u32, seed: u64) -> Result<SubspaceConfig> {
    let field = Fp::new(q)?;
    let dv = DimVector::D { a: a.to_vec(), k, l };
    dv.validate()?;
    let n = dv.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample = |rows: usize| loop {
        let m: Vec<Row> = (0..rows).map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect()).collect();
        if field.rank(&m) == rows {
            break m;
        }
    };
    let u = sample(k);
    let w = sample(l);
    SubspaceConfig::new(q, a.to_vec(), u, w)
}

/// A random invertible matrix preserving the standard flag of dimensions
/// `a` (block upper triangular).
pub fn random_flag_automorphism(a: &[usize], q: u32, rng: &mut impl Rng) -> Result<Vec<Row>> {
    let field = Fp::new(q)?;
    let n = a.last().copied().unwrap_or(0);
    let level = |c: usize| a.iter().position(|&d| d > c).unwrap();
    loop {
        let g: Vec<Row> = (0..n)
            .map(|r| (0..n).map(|c| if level(r) <= level(c) { rng.gen_range(0..q) } else { 0 }).collect())
            .collect();
        if field.rank(&g) == n {
            return Ok(g);
        }
    }
}

/// Two flags in `K^n`: the standard one with dimensions `a`, and one whose
/// subspace of dimension `b_j` is spanned by the first `b_j` rows of `second`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagPairConfig {
    pub field: Fp,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub second: Vec<Row>,
}

impl FlagPairConfig {
    pub fn shape(&self) -> Shape {
        Shape::A { p: self.a.len(), q: self.b.len() }
    }
}

/// One basis vector per summand `I(i,j)`, placed at step `i` of the first
/// flag and step `j` of the second.
pub fn std_flag_pair(f: &FlagObject, q: u32) -> Result<FlagPairConfig> {
    let Shape::A { .. } = f.shape else {
        return Err(Error::InvalidShape("expected a type A object".into()));
    };
    let field = Fp::new(q)?;
    let mut vectors: Vec<(usize, usize)> = Vec::new();
    for (id, m) in f.summands() {
        let IndecId::A { i, j } = id else { unreachable!() };
        vectors.extend(std::iter::repeat((i, j)).take(m));
    }
    vectors.sort();
    let n = vectors.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&c| (vectors[c].1, c));
    let second = order.iter().map(|&c| (0..n).map(|x| u32::from(x == c)).collect()).collect();
    let DimVector::A { a, b } = crate::quiver::object_dim(f) else { unreachable!() };
    Ok(FlagPairConfig { field, a, b, second })
}

/// `dim V_{a_i} ∩ V'_{b_j}` for every `I(i,j)`.
pub fn flag_pair_ranks(c: &FlagPairConfig) -> RankVector {
    let shape = c.shape();
    let n = c.a.last().copied().unwrap_or(0);
    let values = Catalog::of(shape)
        .ids()
        .iter()
        .map(|&id| {
            let IndecId::A { i, j } = id else { unreachable!() };
            let v = c.field.coordinate_span(n, c.a[i - 1]);
            let w = &c.second[..c.b[j - 1]];
            c.field.intersect(&v, w, n).len()
        })
        .collect();
    RankVector::new(shape, values).expect("one value per catalog id")
}

pub fn classify_flag_pair(c: &FlagPairConfig) -> Result<FlagObject> {
    object_from_ranks(c.shape(), &flag_pair_ranks(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::rank_vector;
    use crate::order::enumerate_objects;
    use crate::regions::{apply_move, regions_between};

    fn pair(i: usize, j: usize) -> IndecId {
        IndecId::Pair { i, j }
    }

    fn obj(shape: Shape, ids: &[IndecId]) -> FlagObject {
        FlagObject::from_summands(shape, ids.iter().map(|&id| (id, 1))).unwrap()
    }

    const D2: Shape = Shape::D { p: 2 };

    #[test]
    fn standard_representatives() {
        let c = std_config(&obj(D2, &[pair(1, 2)]), 5).unwrap();
        assert_eq!((c.n, c.a.clone()), (2, vec![1, 2]));
        assert_eq!(c.u, vec![vec![0, 1]]);
        assert_eq!(c.w, vec![vec![1, 1]]);

        let c = std_config(&obj(D2, &[pair(0, 2), pair(1, 3)]), 5).unwrap();
        assert_eq!(c.a, vec![1, 2]);
        assert_eq!(c.u, vec![vec![0, 1]]);
        assert_eq!(c.w, vec![vec![0, 1]]);

        let c = std_config(&FlagObject::empty(D2), 5).unwrap();
        assert_eq!(c.n, 0);
        assert_eq!(config_ranks(&c), RankVector::zero(D2));
    }

    #[test]
    fn ranks_of_standard_representatives() {
        let c = std_config(&obj(D2, &[pair(1, 2)]), 5).unwrap();
        assert_eq!(config_ranks(&c).get(pair(0, 2)), 0);
        for p in 1..=3 {
            let shape = Shape::D { p };
            for id in Catalog::of(shape).ids() {
                let f = obj(shape, &[*id]);
                for q in [2, 5] {
                    assert_eq!(config_ranks(&std_config(&f, q).unwrap()), rank_vector(&f), "{f} q={q}");
                }
            }
        }
    }

    #[test]
    fn phi_kernel() {
        let c = std_config(&obj(D2, &[pair(1, 2)]), 5).unwrap();
        assert_eq!(phi_kernel_dim(&c, 1, 2).unwrap(), 1);
        let zero = SubspaceConfig::new(5, vec![1, 2], vec![], vec![]).unwrap();
        assert_eq!(phi_kernel_dim(&zero, 1, 2).unwrap(), 0);
        assert!(phi_kernel_dim(&c, 2, 2).is_err());
        for seed in 0..20 {
            let c = random_config(&[1, 2, 3], 2, 2, 5, seed).unwrap();
            let ranks = config_ranks(&c);
            for (i, j) in [(1, 2), (1, 3), (2, 3), (0, 2)] {
                assert_eq!(phi_kernel_dim(&c, i, j).unwrap(), ranks.get(pair(i, j)));
            }
        }
    }

    #[test]
    fn classification_examples() {
        let c = SubspaceConfig::new(5, vec![1, 2], vec![vec![1, 0]], vec![vec![0, 1]]).unwrap();
        assert_eq!(classify(&c).unwrap(), obj(D2, &[IndecId::Plus(1), IndecId::Minus(2)]));
        let c = SubspaceConfig::new(5, vec![1], vec![vec![1]], vec![vec![1]]).unwrap();
        assert_eq!(classify(&c).unwrap(), obj(Shape::D { p: 1 }, &[pair(0, 1)]));
    }

    #[test]
    fn general_flag_is_normalised() {
        // flag line spanned by e_2; U on that line, W = e_1
        let c = SubspaceConfig::with_flag(5, vec![1, 2], vec![vec![0, 1], vec![1, 0]], vec![vec![0, 1]], vec![vec![1, 0]]).unwrap();
        assert_eq!(classify(&c).unwrap(), obj(D2, &[IndecId::Plus(1), IndecId::Minus(2)]));
        assert!(SubspaceConfig::with_flag(5, vec![1, 2], vec![vec![1, 1], vec![1, 1]], vec![], vec![]).is_err());
    }

    #[test]
    fn invalid_configs() {
        assert!(SubspaceConfig::new(5, vec![2, 1], vec![], vec![]).is_err());
        assert!(SubspaceConfig::new(5, vec![2], vec![vec![1, 1], vec![2, 2]], vec![]).is_err());
        assert!(SubspaceConfig::new(6, vec![1], vec![], vec![]).is_err());
        assert!(random_config(&[1, 2], 3, 0, 5, 0).is_err());
    }

    #[test]
    fn curves_on_the_small_instance() {
        let pm = obj(D2, &[IndecId::Plus(1), IndecId::Minus(2)]);
        let ie = &regions_between(D2, IndecId::Plus(1), IndecId::Minus(2))[0];
        let c = curve(&pm, ie, 1, 5).unwrap();
        assert_eq!(c.u, vec![vec![1, 1]]);
        assert_eq!(classify(&c).unwrap(), obj(D2, &[pair(1, 2)]));
        assert_eq!(classify(&curve(&pm, ie, 0, 5).unwrap()).unwrap(), pm);

        let bottom = obj(D2, &[pair(0, 1), pair(2, 3)]);
        let ii = regions_between(D2, pair(2, 3), pair(0, 1)).pop().unwrap();
        assert_eq!(classify(&curve(&bottom, &ii, 1, 5).unwrap()).unwrap(), obj(D2, &[pair(0, 2), pair(1, 3)]));

        let mid = obj(D2, &[pair(0, 2), pair(1, 3)]);
        let ia = regions_between(D2, pair(1, 3), pair(0, 2)).pop().unwrap();
        assert!(matches!(curve(&mid, &ia, 1, 5), Err(Error::UnsupportedCurve(_))));
    }

    #[test]
    fn random_configs_are_deterministic_and_complete() {
        assert_eq!(random_config(&[1, 2], 1, 1, 5, 7).unwrap(), random_config(&[1, 2], 1, 1, 5, 7).unwrap());
        let objs = enumerate_objects(D2, &DimVector::D { a: vec![1, 2], k: 1, l: 1 }).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for seed in 0..200 {
            let f = classify(&random_config(&[1, 2], 1, 1, 2, seed).unwrap()).unwrap();
            assert!(objs.contains(&f));
            seen.insert(f.canonical_key());
        }
        assert_eq!(seen.len(), 5);
    }

    #[test]
    fn automorphisms_preserve_the_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for seed in 0..20 {
            let c = random_config(&[1, 3, 4], 2, 1, 5, seed).unwrap();
            let g = random_flag_automorphism(&c.a, 5, &mut rng).unwrap();
            assert_eq!(classify(&c.act(&g)).unwrap(), classify(&c).unwrap());
        }
    }

    #[test]
    fn flag_pairs() {
        let shape = Shape::A { p: 3, q: 3 };
        let dv = DimVector::A { a: vec![1, 2, 3], b: vec![1, 2, 3] };
        for f in enumerate_objects(shape, &dv).unwrap() {
            let c = std_flag_pair(&f, 5).unwrap();
            assert_eq!(flag_pair_ranks(&c), rank_vector(&f));
            assert_eq!(classify_flag_pair(&c).unwrap(), f);
        }
    }

    #[test]
    fn curve_needs_minimal_admissible() {
        let top = obj(D2, &[pair(1, 2)]);
        let ii = regions_between(D2, pair(2, 3), pair(0, 1)).pop().unwrap();
        assert!(matches!(curve(&top, &ii, 1, 5), Err(Error::NotMinimalAdmissible { .. })));
        let bottom = obj(D2, &[pair(0, 1), pair(2, 3)]);
        let _ = apply_move(&bottom, &ii).unwrap();
    }
}
