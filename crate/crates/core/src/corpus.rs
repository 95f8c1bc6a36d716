//! Seeded random instances: posets as index categories, small fibers, and
//! strict diagrams found by search over functors.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagram::{BiDiagram, CatDiagram};
use crate::error::{Error, Result};
use crate::fincat::{mor, ob, FinCat, Limits, Mor, Ob};
use crate::functor::{compose_functors, enumerate_functors, Functor};
use crate::product::product_category;

pub type CorpusRng = ChaCha8Rng;

pub fn rng(seed: u64) -> CorpusRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Whether a random index poset must have a top element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FinalMode {
    Force,
    Forbid,
    Any,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusOptions {
    pub max_i_objects: usize,
    pub max_j_objects: usize,
    pub max_fiber_objects: usize,
    pub max_fiber_morphisms: usize,
    pub final_mode: FinalMode,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions {
            max_i_objects: 3,
            max_j_objects: 3,
            max_fiber_objects: 3,
            max_fiber_morphisms: 6,
            final_mode: FinalMode::Force,
        }
    }
}

fn random_relation<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<bool>> {
    let mut leq = vec![vec![false; n]; n];
    for (a, row) in leq.iter_mut().enumerate() {
        row[a] = true;
        for cell in &mut row[a + 1..] {
            *cell = rng.gen_bool(0.5);
        }
    }
    // Warshall closure
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                if leq[a][k] && leq[k][b] {
                    leq[a][b] = true;
                }
            }
        }
    }
    leq
}

fn has_top(leq: &[Vec<bool>]) -> bool {
    let n = leq.len();
    (0..n).any(|t| (0..n).all(|a| leq[a][t]))
}

/// A random poset on `1..=max_objects` objects whose relation only goes up
/// in index order.
pub fn random_poset<R: Rng>(rng: &mut R, max_objects: usize, mode: FinalMode) -> Result<FinCat> {
    let low = if mode == FinalMode::Forbid { 2 } else { 1 };
    if max_objects < low {
        return Err(Error::InvalidParameter(
            "too few objects for the requested index".into(),
        ));
    }
    loop {
        let n = rng.gen_range(low..=max_objects);
        let mut leq = random_relation(rng, n);
        match mode {
            FinalMode::Force => (0..n).for_each(|a| leq[a][n - 1] = true),
            FinalMode::Forbid if has_top(&leq) => continue,
            _ => {}
        }
        return FinCat::poset(n, |a, b| leq[a][b]);
    }
}

/// A random fiber: a poset, optionally with one arrow doubled or one
/// idempotent adjoined, within the given bounds.
pub fn random_fiber<R: Rng>(
    rng: &mut R,
    max_objects: usize,
    max_morphisms: usize,
) -> Result<FinCat> {
    loop {
        let n = rng.gen_range(1..=max_objects);
        let leq = random_relation(rng, n);
        let cat = match rng.gen_range(0..4) {
            0 => doubled_arrow(rng, &leq),
            1 => with_idempotent(rng, &leq),
            _ => FinCat::poset(n, |a, b| leq[a][b]),
        }?;
        if cat.morphism_count() <= max_morphisms {
            return Ok(cat);
        }
    }
}

fn poset_arrows(leq: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = leq.len();
    (0..n)
        .flat_map(|a| (0..n).filter(move |&b| leq[a][b]).map(move |b| (a, b)))
        .collect()
}

/// The poset with a second copy `u'` of some arrow `u: a -> b`. Every
/// composite that lands in `hom(a, b)` without being `u' . id` or `id . u'`
/// is `u`.
fn doubled_arrow<R: Rng>(rng: &mut R, leq: &[Vec<bool>]) -> Result<FinCat> {
    let n = leq.len();
    let arrows = poset_arrows(leq);
    let proper: Vec<(usize, usize)> = arrows.iter().copied().filter(|(a, b)| a != b).collect();
    let Some(&(da, db)) = proper.choose(rng) else {
        return FinCat::poset(n, |a, b| leq[a][b]);
    };
    let mut ends: Vec<(usize, usize)> = arrows.clone();
    ends.push((da, db));
    let extra = arrows.len();
    let find = |a: usize, b: usize| arrows.iter().position(|&e| e == (a, b)).map(mor);
    let labels = (0..n).map(|i| i.to_string()).collect();
    let mors = ends
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| {
            let name = match (a == b, k == extra) {
                (true, _) => format!("id_{a}"),
                (false, false) => format!("{a}->{b}"),
                (false, true) => format!("{a}->{b}'"),
            };
            (ob(a), ob(b), name)
        })
        .collect();
    let ids = (0..n).map(|a| find(a, a).expect("reflexive")).collect();
    FinCat::from_fn(labels, mors, ids, |g, f| {
        let ((a, _), (_, c)) = (ends[f.idx()], ends[g.idx()]);
        let (gi, fi) = (ends[g.idx()], ends[f.idx()]);
        if f.idx() == extra && gi.0 == gi.1 || g.idx() == extra && fi.0 == fi.1 {
            return Some(mor(extra));
        }
        find(a, c)
    })
}

/// The poset with an idempotent `z` on some object `a`: `z . z = z`,
/// `f . z = f` and `z . h = h` for arrows `f` out of and `h` into `a`.
fn with_idempotent<R: Rng>(rng: &mut R, leq: &[Vec<bool>]) -> Result<FinCat> {
    let n = leq.len();
    let arrows = poset_arrows(leq);
    let a0 = rng.gen_range(0..n);
    let mut ends = arrows.clone();
    ends.push((a0, a0));
    let z = arrows.len();
    let find = |a: usize, b: usize| arrows.iter().position(|&e| e == (a, b)).map(mor);
    let id_a = find(a0, a0).expect("reflexive");
    let labels = (0..n).map(|i| i.to_string()).collect();
    let mors = ends
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| {
            let name = if k == z {
                format!("z{a}")
            } else if a == b {
                format!("id_{a}")
            } else {
                format!("{a}->{b}")
            };
            (ob(a), ob(b), name)
        })
        .collect();
    let ids = (0..n).map(|a| find(a, a).expect("reflexive")).collect();
    FinCat::from_fn(labels, mors, ids, |g, f| {
        let (gz, fz) = (g.idx() == z, f.idx() == z);
        match (gz, fz) {
            (true, true) => Some(mor(z)),
            (true, false) if f == id_a => Some(mor(z)),
            (false, true) if g == id_a => Some(mor(z)),
            (true, false) => Some(f),
            (false, true) => Some(g),
            (false, false) => find(ends[f.idx()].0, ends[g.idx()].1),
        }
    })
}

// Index morphisms u -> v with u != v that do not factor through a third
// object.
fn is_cover(index: &FinCat, a: Mor) -> bool {
    let (u, v) = (index.dom(a), index.cod(a));
    u != v
        && !index
            .objects()
            .any(|w| w != u && w != v && !index.hom(u, w).is_empty() && !index.hom(w, v).is_empty())
}

/// A strict diagram over a poset-shaped index whose arrows go up in index
/// order. Transports into each object are chosen on covering arrows from a
/// shuffled list of all functors, backtracking until every composite
/// agrees; constant functors always succeed, so this terminates.
pub fn random_diagram<R: Rng>(
    rng: &mut R,
    index: &Arc<FinCat>,
    fibers: Vec<Arc<FinCat>>,
    limits: &Limits,
) -> Result<CatDiagram> {
    for a in index.morphisms() {
        if index.dom(a) > index.cod(a) || index.hom(index.dom(a), index.cod(a)).len() != 1 {
            return Err(Error::InvalidParameter(
                "index must be a poset ordered upward".into(),
            ));
        }
    }
    let mut transports: Vec<Option<Functor>> = vec![None; index.morphism_count()];
    for v in index.objects() {
        transports[index.id(v).idx()] = Some(Functor::identity(&fibers[v.idx()]));
        let covers: Vec<Mor> = index
            .incoming(v)
            .iter()
            .copied()
            .filter(|&a| is_cover(index, a))
            .collect();
        let mut options = Vec::with_capacity(covers.len());
        for &a in &covers {
            let u = index.dom(a);
            let mut all = enumerate_functors(&fibers[u.idx()], &fibers[v.idx()], limits)?;
            all.shuffle(rng);
            options.push(all);
        }
        if !assign_into(index, v, &covers, &options, 0, &mut transports)? {
            return Err(Error::ConstructionMismatch(
                "no consistent transports found".into(),
            ));
        }
    }
    let transports = transports
        .into_iter()
        .map(|t| t.expect("every arrow assigned"))
        .collect();
    CatDiagram::new(index.clone(), fibers, transports)
}

// Tries cover choices for object v; on a full assignment fills every
// non-cover arrow into v by composing and checks all factorizations.
fn assign_into(
    index: &FinCat,
    v: Ob,
    covers: &[Mor],
    options: &[Vec<Functor>],
    k: usize,
    transports: &mut [Option<Functor>],
) -> Result<bool> {
    if k < covers.len() {
        for t in &options[k] {
            transports[covers[k].idx()] = Some(t.clone());
            if assign_into(index, v, covers, options, k + 1, transports)? {
                return Ok(true);
            }
        }
        transports[covers[k].idx()] = None;
        return Ok(false);
    }
    // arrows into v in increasing domain order; each non-cover factors as
    // cover . (earlier arrow) or through objects already finished
    let mut incoming: Vec<Mor> = index.incoming(v).to_vec();
    incoming.sort_by_key(|&a| std::cmp::Reverse(index.dom(a)));
    for &a in &incoming {
        if index.is_identity(a) || covers.contains(&a) {
            continue;
        }
        transports[a.idx()] = None;
    }
    for &a in &incoming {
        if index.is_identity(a) {
            continue;
        }
        let u = index.dom(a);
        for w in index.objects() {
            if w == u || w == v {
                continue;
            }
            let (Some(&f), Some(&g)) = (index.hom(u, w).first(), index.hom(w, v).first()) else {
                continue;
            };
            let (Some(tf), Some(tg)) = (&transports[f.idx()], &transports[g.idx()]) else {
                continue;
            };
            let composite = compose_functors(tg, tf)?;
            match &transports[a.idx()] {
                None => transports[a.idx()] = Some(composite),
                Some(t) if *t != composite => return Ok(false),
                Some(_) => {}
            }
        }
    }
    Ok(incoming.iter().all(|a| transports[a.idx()].is_some()))
}

/// Random fibers for every object of `index`.
pub fn random_fibers<R: Rng>(
    rng: &mut R,
    index: &FinCat,
    opts: &CorpusOptions,
) -> Result<Vec<Arc<FinCat>>> {
    index
        .objects()
        .map(|_| random_fiber(rng, opts.max_fiber_objects, opts.max_fiber_morphisms).map(Arc::new))
        .collect()
}

/// A random bidiagram: `I` per `opts.final_mode`, `J` unconstrained.
pub fn random_bidiagram<R: Rng>(
    rng: &mut R,
    opts: &CorpusOptions,
    limits: &Limits,
) -> Result<BiDiagram> {
    let i_cat = Arc::new(random_poset(rng, opts.max_i_objects, opts.final_mode)?);
    let j_cat = Arc::new(random_poset(rng, opts.max_j_objects, FinalMode::Any)?);
    let product = product_category(&i_cat, &j_cat, limits)?;
    let fibers = random_fibers(rng, &product.cat, opts)?;
    let underlying = random_diagram(rng, &product.cat, fibers, limits)?;
    BiDiagram::new(product, underlying)
}

/// A random diagram over a random index poset.
pub fn random_cat_diagram<R: Rng>(
    rng: &mut R,
    opts: &CorpusOptions,
    limits: &Limits,
) -> Result<CatDiagram> {
    let index = Arc::new(random_poset(rng, opts.max_i_objects, opts.final_mode)?);
    let fibers = random_fibers(rng, &index, opts)?;
    random_diagram(rng, &index, fibers, limits)
}
