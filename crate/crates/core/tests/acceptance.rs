//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use flagdeg::oracle::{classify, config_ranks, curve, phi_kernel_dim, random_config, std_config, SubspaceConfig};
use flagdeg::order::{is_dominant, moves_from};
use flagdeg::regions::is_minimal_admissible;
use flagdeg::{
    enumerate_objects, move_chain, move_poset, rank_leq, rank_poset, rank_vector, weak_poset, DimVector, Error,
    FlagObject, IndecId, RegionKind, Shape,
};
use rayon::prelude::*;

const Q_WITNESS: u32 = 5;
const RANDOM_SEEDS: u64 = 100;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

/// Type D dimension vectors with `p <= 3`, `n <= 4`, `0 <= k, l <= n`.
fn sweep() -> Vec<(Shape, DimVector)> {
    let mut out = Vec::new();
    for p in 1..=3usize {
        for n in 0..=4usize {
            let mut flags = Vec::new();
            nondecreasing(p - 1, 0, n, &mut vec![], &mut flags);
            for mut a in flags {
                a.push(n);
                for k in 0..=n {
                    for l in 0..=n {
                        out.push((Shape::D { p }, DimVector::D { a: a.clone(), k, l }));
                    }
                }
            }
        }
    }
    out
}

fn nondecreasing(len: usize, lo: usize, hi: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    for x in lo..=hi {
        cur.push(x);
        nondecreasing(len, x, hi, cur, out);
        cur.pop();
    }
}

fn full_flags(n: usize) -> (Shape, DimVector) {
    let v: Vec<usize> = (1..=n).collect();
    (Shape::A { p: n, q: n }, DimVector::A { a: v.clone(), b: v })
}

fn obj(shape: Shape, ids: &[IndecId]) -> FlagObject {
    FlagObject::from_summands(shape, ids.iter().map(|&id| (id, 1))).unwrap()
}

fn first_error<T>(results: Vec<Result<(), T>>) -> Option<T> {
    results.into_iter().find_map(Result::err)
}

fn criterion_1() -> Outcome {
    let expect = [(2, 2), (3, 6), (4, 24), (5, 120)];
    for (n, count) in expect {
        let (shape, dv) = full_flags(n);
        let got = enumerate_objects(shape, &dv).unwrap().len();
        if got != count {
            return fail(format!("n={n}: {got} objects, expected {count}"));
        }
    }
    pass("n! objects for n = 2..5")
}

/// Independent count: B-orbits of pairs of lines in GF(2)^2 under the
/// upper triangular group, by direct action.
fn gf2_orbit_count() -> usize {
    let lines = [[1u8, 0], [0, 1], [1, 1]];
    let norm = |v: [u8; 2]| lines.iter().position(|l| *l == v).unwrap();
    let act = |x: u8, v: [u8; 2]| [(v[0] + x * v[1]) % 2, v[1]];
    let mut seen = BTreeSet::new();
    let mut orbits = 0;
    for u in 0..3 {
        for w in 0..3 {
            if seen.contains(&(u, w)) {
                continue;
            }
            orbits += 1;
            for x in 0..2 {
                seen.insert((norm(act(x, lines[u])), norm(act(x, lines[w]))));
            }
        }
    }
    orbits
}

fn criterion_2() -> Outcome {
    let shape = Shape::D { p: 2 };
    let dv = DimVector::D { a: vec![1, 2], k: 1, l: 1 };
    let mv = move_poset(shape, &dv).unwrap();
    let wk = weak_poset(shape, &dv).unwrap();
    let bottom = obj(shape, &[IndecId::Pair { i: 0, j: 1 }, IndecId::Pair { i: 2, j: 3 }]);
    let top = obj(shape, &[IndecId::Pair { i: 1, j: 2 }]);
    let mut problems = Vec::new();
    let gf2 = gf2_orbit_count();
    if mv.nodes.len() != 5 || gf2 != 5 {
        problems.push(format!("{} objects ({} GF(2) orbits), expected 5", mv.nodes.len(), gf2));
    }
    let hasse = mv.hasse().unwrap();
    if hasse.len() != 6 {
        problems.push(format!("move Hasse has {} edges, expected 6", hasse.len()));
    }
    if mv.minimal().iter().map(|&k| &mv.nodes[k]).collect::<Vec<_>>() != vec![&bottom] {
        problems.push("bottom is not I(0,1) + I(2,inf)".into());
    }
    if mv.maximal().iter().map(|&k| &mv.nodes[k]).collect::<Vec<_>>() != vec![&top] {
        problems.push("top is not I(1,2)".into());
    }
    if wk.edges.len() != 1 {
        let kinds: Vec<_> = wk.edges.iter().map(|e| e.region.kind.as_str()).collect();
        problems.push(format!("weak order has {} edges {:?}, expected 1", wk.edges.len(), kinds));
    }
    if wk.maximal().len() != 2 {
        problems.push(format!("weak order has {} maximal elements, expected 2", wk.maximal().len()));
    }
    if problems.is_empty() {
        pass("5 objects, 6 move covers, 1 weak edge, 2 weak-maximal")
    } else {
        fail(problems.join("; "))
    }
}

fn criterion_3(dvs: &[(Shape, DimVector)]) -> Outcome {
    let results: Vec<Result<(), String>> = dvs
        .par_iter()
        .map(|(shape, dv)| {
            let mv = move_poset(*shape, dv).map_err(|e| e.to_string())?;
            let rk = rank_poset(*shape, dv).map_err(|e| e.to_string())?;
            if mv.relation != rk.relation {
                let bad = (0..mv.nodes.len())
                    .flat_map(|x| (0..mv.nodes.len()).map(move |y| (x, y)))
                    .find(|&(x, y)| mv.relation.get(x, y) != rk.relation.get(x, y))
                    .unwrap();
                return Err(format!(
                    "dv {dv}: move and rank disagree on {} vs {}",
                    mv.nodes[bad.0], mv.nodes[bad.1]
                ));
            }
            let covers = rk.hasse().map_err(|e| e.to_string())?;
            if covers != mv.edge_pairs() {
                return Err(format!("dv {dv}: rank covers differ from move edges"));
            }
            Ok(())
        })
        .collect();
    match first_error(results) {
        None => pass(format!("{} dimension vectors", dvs.len())),
        Some(e) => fail(e),
    }
}

fn criterion_4(dvs: &[(Shape, DimVector)]) -> Outcome {
    let results: Vec<Result<usize, String>> = dvs
        .par_iter()
        .map(|(shape, dv)| {
            let objs = enumerate_objects(*shape, dv).map_err(|e| e.to_string())?;
            for f in &objs {
                let rv = rank_vector(f);
                for q in [2, 5] {
                    if config_ranks(&std_config(f, q).unwrap()) != rv {
                        return Err(format!("q={q}: oracle ranks differ for {f}"));
                    }
                }
            }
            Ok(objs.len())
        })
        .collect();
    let mut objects = 0;
    for r in results {
        match r {
            Ok(n) => objects += n,
            Err(e) => return fail(e),
        }
    }
    let mut checked = 0;
    for n in 1..=4usize {
        let a: Vec<usize> = (1..=n).collect();
        for k in 0..=2.min(n) {
            for l in 0..=2.min(n) {
                for seed in 0..RANDOM_SEEDS {
                    let c = random_config(&a, k, l, Q_WITNESS, seed).unwrap();
                    let ranks = config_ranks(&c);
                    for j in 1..=n {
                        for i in 0..j {
                            let phi = phi_kernel_dim(&c, i, j).unwrap();
                            if phi != ranks.get(IndecId::Pair { i, j }) {
                                return fail(format!("phi identity fails: n={n} k={k} l={l} seed={seed} i={i} j={j}"));
                            }
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    pass(format!("{objects} objects at q=2,5; {checked} kernel identities"))
}

fn criterion_5(dvs: &[(Shape, DimVector)]) -> Outcome {
    let results: Vec<Result<(usize, usize), String>> = dvs
        .par_iter()
        .map(|(shape, dv)| {
            let mv = move_poset(*shape, dv).map_err(|e| e.to_string())?;
            let (mut supported, mut unsupported) = (0, 0);
            for e in &mv.edges {
                let (from, to) = (&mv.nodes[e.from], &mv.nodes[e.to]);
                match curve(from, &e.region, 0, Q_WITNESS) {
                    Err(Error::UnsupportedCurve(_)) => {
                        unsupported += 1;
                        if !rank_leq(from, to).unwrap() {
                            return Err(format!("unsupported edge {} fails the rank criterion", e.region));
                        }
                        continue;
                    }
                    Err(err) => return Err(err.to_string()),
                    Ok(c) => {
                        if classify(&c).unwrap() != *from {
                            return Err(format!("curve at 0 leaves {from} for {}", e.region));
                        }
                    }
                }
                for tau in 1..Q_WITNESS {
                    let c: SubspaceConfig = curve(from, &e.region, tau, Q_WITNESS).unwrap();
                    let got = classify(&c).unwrap();
                    if got != *to {
                        return Err(format!("{from} via {} at tau={tau}: got {got}, expected {to}", e.region));
                    }
                }
                supported += 1;
            }
            Ok((supported, unsupported))
        })
        .collect();
    let (mut s, mut u) = (0, 0);
    for r in results {
        match r {
            Ok((a, b)) => {
                s += a;
                u += b;
            }
            Err(e) => return fail(e),
        }
    }
    pass(format!("{s} curves witnessed, {u} unsupported edges covered by the rank criterion"))
}

fn criterion_6(dvs: &[(Shape, DimVector)]) -> Outcome {
    let results: Vec<Result<(usize, bool), String>> = dvs
        .par_iter()
        .map(|(shape, dv)| {
            let objs = enumerate_objects(*shape, dv).map_err(|e| e.to_string())?;
            let mut count = 0;
            let mut saw_two = false;
            for f in &objs {
                let rf = rank_vector(f);
                for (r, g) in moves_from(f) {
                    let drop = rf.diff(&rank_vector(&g));
                    let int = r.interior();
                    let nuc = r.nucleus();
                    let ids = rf.ids();
                    for (k, &d) in drop.iter().enumerate() {
                        let expected = if nuc.contains(&ids[k]) {
                            2
                        } else if int.contains(&ids[k]) {
                            1
                        } else {
                            0
                        };
                        if d != expected {
                            return Err(format!("{f} via {r}: drop {d} at {} (expected {expected})", ids[k].label(*shape)));
                        }
                        if d == 2 && r.kind != RegionKind::II {
                            return Err(format!("drop 2 for kind {}", r.kind));
                        }
                        saw_two |= d == 2;
                    }
                    count += 1;
                }
            }
            Ok((count, saw_two))
        })
        .collect();
    let (mut moves, mut twos) = (0, false);
    for r in results {
        match r {
            Ok((c, t)) => {
                moves += c;
                twos |= t;
            }
            Err(e) => return fail(e),
        }
    }
    pass(format!("{moves} moves; drop 2 observed: {twos}"))
}

fn criterion_7(dvs: &[(Shape, DimVector)]) -> Outcome {
    let results: Vec<Result<usize, String>> = dvs
        .par_iter()
        .map(|(shape, dv)| {
            let objs = enumerate_objects(*shape, dv).map_err(|e| e.to_string())?;
            let ranks: Vec<_> = objs.iter().map(rank_vector).collect();
            let mut pairs = 0;
            for (x, f) in objs.iter().enumerate() {
                for (y, g) in objs.iter().enumerate() {
                    if !ranks[x].dominates(&ranks[y]) {
                        continue;
                    }
                    let chain = move_chain(f, g).map_err(|e| format!("{f} -> {g}: {e}"))?;
                    let bound = ranks[x].sum() - ranks[y].sum();
                    if chain.len() > bound {
                        return Err(format!("{f} -> {g}: chain of {} exceeds {bound}", chain.len()));
                    }
                    let mut cur = f.clone();
                    for (r, next) in &chain {
                        if !is_minimal_admissible(r, &cur) || !is_dominant(r, &rank_vector(&cur), &ranks[y]) {
                            return Err(format!("{f} -> {g}: step {r} is not minimal dominant"));
                        }
                        cur = next.clone();
                    }
                    if cur != *g {
                        return Err(format!("{f} -> {g}: chain ends at {cur}"));
                    }
                    pairs += 1;
                }
            }
            Ok(pairs)
        })
        .collect();
    let mut total = 0;
    for r in results {
        match r {
            Ok(n) => total += n,
            Err(e) => return fail(e),
        }
    }
    pass(format!("{total} comparable pairs"))
}

/// Bruhat order on `S_n`: closure of `w < w t` for transpositions `t`
/// raising the inversion count.
fn bruhat(n: usize) -> (Vec<Vec<usize>>, Vec<Vec<bool>>) {
    let mut perms = Vec::new();
    permutations(&mut (1..=n).collect(), 0, &mut perms);
    perms.sort();
    let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
    let inv = |w: &Vec<usize>| (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| w[a] > w[b]).count();
    let m = perms.len();
    let mut rel = vec![vec![false; m]; m];
    for (x, w) in perms.iter().enumerate() {
        rel[x][x] = true;
        for a in 0..n {
            for b in a + 1..n {
                let mut v = w.clone();
                v.swap(a, b);
                if inv(&v) > inv(w) {
                    rel[x][index[&v]] = true;
                }
            }
        }
    }
    for k in 0..m {
        for x in 0..m {
            if rel[x][k] {
                for y in 0..m {
                    if rel[k][y] {
                        rel[x][y] = true;
                    }
                }
            }
        }
    }
    (perms, rel)
}

fn permutations(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for t in k..v.len() {
        v.swap(k, t);
        permutations(v, k + 1, out);
        v.swap(k, t);
    }
}

fn criterion_8() -> Outcome {
    for n in 1..=5 {
        let (shape, dv) = full_flags(n);
        let mv = move_poset(shape, &dv).unwrap();
        let rk = rank_poset(shape, &dv).unwrap();
        let (perms, rel) = bruhat(n);
        let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
        let as_perm = |f: &FlagObject| {
            let mut w = vec![0; n];
            for (id, _) in f.summands() {
                let IndecId::A { i, j } = id else { unreachable!() };
                w[i - 1] = j;
            }
            index[&w]
        };
        let map: Vec<usize> = mv.nodes.iter().map(as_perm).collect();
        if map.iter().collect::<BTreeSet<_>>().len() != perms.len() {
            return fail(format!("n={n}: objects do not biject with permutations"));
        }
        for x in 0..mv.nodes.len() {
            for y in 0..mv.nodes.len() {
                let b = rel[map[x]][map[y]];
                if mv.relation.get(x, y) != b || rk.relation.get(x, y) != b {
                    return fail(format!("n={n}: {} vs {} disagrees with Bruhat order", mv.nodes[x], mv.nodes[y]));
                }
            }
        }
    }
    pass("move and rank orders equal Bruhat order for n <= 5")
}

fn run(number: usize, name: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    if out.ok && elapsed > budget {
        out = fail(format!("{} (took {:.2?}, budget {:.0?})", out.detail, elapsed, budget));
    }
    println!(
        "criterion {number} [{}] {name} ({elapsed:.2?}): {}",
        if out.ok { "PASS" } else { "FAIL" },
        out.detail
    );
    out.ok
}

fn main() {
    // `cargo test` passes harness flags such as `--nocapture`; a name filter
    // that matches nothing here skips the suite.
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !filters.is_empty() && !filters.iter().any(|f| "acceptance".contains(f.as_str())) {
        return;
    }
    let dvs = sweep();
    let secs = Duration::from_secs;
    let results = [
        run(1, "orbit counts for full flags", secs(5), criterion_1),
        run(2, "worked instance p=2, dv=(1,2;1;1)", secs(1), criterion_2),
        run(3, "move order equals rank order", secs(600), || criterion_3(&dvs)),
        run(4, "rank formulas against the oracle", secs(300), || criterion_4(&dvs)),
        run(5, "degeneration curves", secs(300), || criterion_5(&dvs)),
        run(6, "drop equals interior/nucleus indicator", secs(600), || criterion_6(&dvs)),
        run(7, "constructive move chains", secs(600), || criterion_7(&dvs)),
        run(8, "type A Bruhat regression", secs(30), criterion_8),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
