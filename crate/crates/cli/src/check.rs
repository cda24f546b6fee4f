//! `oracle check`: formulas and moves against exact linear algebra.

use clap::Args;
use flagdeg::json::{config_to_json, object_to_json, region_to_json};
use flagdeg::oracle::{
    classify, config_ranks, curve, phi_kernel_dim, random_config, random_flag_automorphism, std_config,
};
use flagdeg::{enumerate_objects, move_poset, rank_leq, rank_vector, DimVector, Error, IndecId, Shape};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::{Failure, Outcome};

#[derive(Args)]
pub struct CheckArgs {
    /// Largest flag length.
    #[arg(long, default_value_t = 3)]
    p: usize,
    /// Largest ambient dimension.
    #[arg(long, default_value_t = 4)]
    nmax: usize,
    /// Prime field size.
    #[arg(long, default_value_t = 5)]
    q: u32,
    /// Random configurations per dimension vector.
    #[arg(long, default_value_t = 100)]
    seeds: u64,
    /// Worker threads; all cores when omitted.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Default)]
struct Tally {
    ranks: usize,
    phi: usize,
    curves: usize,
    unsupported: usize,
    invariance: usize,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        self.ranks += o.ranks;
        self.phi += o.phi;
        self.curves += o.curves;
        self.unsupported += o.unsupported;
        self.invariance += o.invariance;
        self
    }
}

fn sweep(pmax: usize, nmax: usize) -> Vec<(Shape, DimVector)> {
    let mut out = Vec::new();
    for p in 1..=pmax {
        let shape = Shape::D { p };
        for n in 0..=nmax {
            let mut flags = vec![Vec::new()];
            for _ in 1..p {
                flags = flags
                    .into_iter()
                    .flat_map(|a: Vec<usize>| {
                        let lo = a.last().copied().unwrap_or(0);
                        (lo..=n).map(move |x| {
                            let mut b = a.clone();
                            b.push(x);
                            b
                        })
                    })
                    .collect();
            }
            for mut a in flags {
                a.push(n);
                for k in 0..=n {
                    for l in 0..=n {
                        out.push((shape, DimVector::D { a: a.clone(), k, l }));
                    }
                }
            }
        }
    }
    out
}

fn bundle(suite: &str, detail: Value) -> Failure {
    Failure::Mismatch(json!({"suite": suite, "detail": detail}))
}

fn check_dv(shape: Shape, dv: &DimVector, q: u32, seeds: u64, base: u64) -> Result<Tally, Failure> {
    let mut t = Tally::default();
    let DimVector::D { a, k, l } = dv else { unreachable!("sweep is type D") };
    let p = shape.p();

    for f in enumerate_objects(shape, dv)? {
        let c = std_config(&f, q)?;
        if config_ranks(&c) != rank_vector(&f) || classify(&c)? != f {
            return Err(bundle("ranks", json!({"object": object_to_json(&f), "q": q})));
        }
        t.ranks += 1;
    }

    for s in 0..seeds {
        let seed = base.wrapping_add(s);
        let c = random_config(a, *k, *l, q, seed)?;
        let ranks = config_ranks(&c);
        for j in 1..=p {
            for i in 0..j {
                if phi_kernel_dim(&c, i, j)? != ranks.get(IndecId::Pair { i, j }) {
                    return Err(bundle("phi", json!({"config": config_to_json(&c), "seed": seed, "i": i, "j": j})));
                }
                t.phi += 1;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_flag_automorphism(a, q, &mut rng)?;
        if classify(&c.act(&g))? != classify(&c)? {
            return Err(bundle("invariance", json!({"config": config_to_json(&c), "seed": seed})));
        }
        t.invariance += 1;
    }

    let mv = move_poset(shape, dv)?;
    for e in &mv.edges {
        let (from, to) = (&mv.nodes[e.from], &mv.nodes[e.to]);
        let fail = |tau: u32| {
            bundle("curves", json!({"from": object_to_json(from), "region": region_to_json(&e.region), "tau": tau}))
        };
        match curve(from, &e.region, 0, q) {
            Err(Error::UnsupportedCurve(_)) => {
                if !rank_leq(from, to)? {
                    return Err(fail(0));
                }
                t.unsupported += 1;
                continue;
            }
            Err(err) => return Err(err.into()),
            Ok(c) if classify(&c)? != *from => return Err(fail(0)),
            Ok(_) => {}
        }
        for tau in 1..q {
            if classify(&curve(from, &e.region, tau, q)?)? != *to {
                return Err(fail(tau));
            }
        }
        t.curves += 1;
    }
    Ok(t)
}

pub fn run(args: &CheckArgs, seed: u64) -> Outcome {
    if args.p == 0 {
        return Err(Failure::Usage("--p must be at least 1".into()));
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = args.jobs {
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| Failure::Usage(e.to_string()))?;
    flagdeg::oracle::linalg::Fp::new(args.q)?;
    let dvs = sweep(args.p, args.nmax);
    let results: Vec<Result<Tally, Failure>> = pool.install(|| {
        dvs.par_iter().map(|(shape, dv)| check_dv(*shape, dv, args.q, args.seeds, seed)).collect()
    });
    let mut total = Tally::default();
    for r in results {
        total = total.merge(r?);
    }
    println!("dimension vectors: {}", dvs.len());
    println!("ranks: {} objects pass", total.ranks);
    println!("phi: {} kernel identities pass", total.phi);
    println!("invariance: {} configurations pass", total.invariance);
    println!("curves: {} witnessed, {} unsupported and rank-checked", total.curves, total.unsupported);
    println!("all pass");
    Ok(())
}
