//! Shared oracles and the law audit for the integration tests.
//!
//! Everything here recomputes from the raw bidiagram data with plain loops,
//! without going through the library's constructions.

#![allow(dead_code)]

use std::cell::RefCell;
use std::collections::BTreeSet;

use catlim_core::diagram::BiDiagram;
use catlim_core::fincat::validate_category;
use catlim_core::functor::{check_functor, check_nat_trans};
use catlim_core::interchange::{AMorphism, AObject, BMorphism, BObject, InterchangePair};
use catlim_core::{FinCat, Functor, Limits, Mor, NatTrans, Ob};

/// Caps large enough for the desk-scale corpus.
pub fn corpus_limits() -> Limits {
    Limits::new(2048, 32768)
}

/// Records every category, functor and transformation a test produces and
/// re-checks each one from scratch.
#[derive(Default)]
pub struct Audit {
    inner: RefCell<AuditState>,
}

#[derive(Default)]
struct AuditState {
    categories: usize,
    functors: usize,
    transformations: usize,
    failures: Vec<String>,
}

impl Audit {
    pub fn category(&self, what: &str, c: &FinCat) {
        let mut s = self.inner.borrow_mut();
        s.categories += 1;
        match validate_category(&c.to_raw()) {
            Ok(again) if again.same_shape(c) => {}
            Ok(_) => s
                .failures
                .push(format!("{what}: re-validated category changed shape")),
            Err(e) => s.failures.push(format!("{what}: {e}")),
        }
    }

    pub fn functor(&self, what: &str, f: &Functor) {
        let mut s = self.inner.borrow_mut();
        s.functors += 1;
        if let Err(v) = check_functor(f) {
            s.failures.push(format!("{what}: {v}"));
        }
    }

    pub fn nat_trans(&self, what: &str, eta: &NatTrans) {
        let mut s = self.inner.borrow_mut();
        s.transformations += 1;
        if let Err(v) = check_nat_trans(eta) {
            s.failures.push(format!("{what}: {v}"));
        }
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let s = self.inner.borrow();
        (s.categories, s.functors, s.transformations)
    }

    pub fn failures(&self) -> Vec<String> {
        self.inner.borrow().failures.clone()
    }
}

fn product<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for options in choices {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for o in options {
                let mut v = prefix.clone();
                v.push(o.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// All B-objects by brute force over `j`, `x`, `beta`, `rho`, filtered by
/// unit, functoriality of `beta`, and the cocycle law.
pub fn brute_b_objects(bd: &BiDiagram) -> BTreeSet<BObject> {
    let (ic, jc) = (bd.i_cat(), bd.j_cat());
    let mut out = BTreeSet::new();
    let js = product(&vec![jc.objects().collect::<Vec<Ob>>(); ic.object_count()]);
    for j in js {
        let xs = product(
            &ic.objects()
                .map(|i| bd.fiber(i, j[i.idx()]).objects().collect())
                .collect::<Vec<Vec<Ob>>>(),
        );
        let betas = product(
            &ic.morphisms()
                .map(|a| jc.hom(j[ic.dom(a).idx()], j[ic.cod(a).idx()]).to_vec())
                .collect::<Vec<Vec<Mor>>>(),
        );
        for x in &xs {
            for beta in &betas {
                let rhos = product(
                    &ic.morphisms()
                        .map(|a| {
                            let (s, t) = (ic.dom(a), ic.cod(a));
                            let start = bd.transport(a, beta[a.idx()]).ob(x[s.idx()]);
                            bd.fiber(t, j[t.idx()]).hom(start, x[t.idx()]).to_vec()
                        })
                        .collect::<Vec<Vec<Mor>>>(),
                );
                for rho in rhos {
                    let o = BObject {
                        j: j.clone(),
                        x: x.clone(),
                        beta: beta.clone(),
                        rho,
                    };
                    if b_object_ok(bd, &o) {
                        out.insert(o);
                    }
                }
            }
        }
    }
    out
}

fn b_object_ok(bd: &BiDiagram, o: &BObject) -> bool {
    let (ic, jc) = (bd.i_cat(), bd.j_cat());
    for i in ic.objects() {
        let id = ic.id(i);
        if o.beta[id.idx()] != jc.id(o.j[i.idx()])
            || o.rho[id.idx()] != bd.fiber(i, o.j[i.idx()]).id(o.x[i.idx()])
        {
            return false;
        }
    }
    for (a2, a1) in ic.composable_pairs() {
        let a21 = ic.composite(a2, a1);
        let b2 = o.beta[a2.idx()];
        if o.beta[a21.idx()] != jc.composite(b2, o.beta[a1.idx()]) {
            return false;
        }
        let t = ic.cod(a2);
        let fiber = bd.fiber(t, o.j[t.idx()]);
        if o.rho[a21.idx()]
            != fiber.composite(o.rho[a2.idx()], bd.transport(a2, b2).mor(o.rho[a1.idx()]))
        {
            return false;
        }
    }
    true
}

/// All B-morphisms `x -> y` by brute force over `beta_i` and `f_i`.
pub fn brute_b_morphisms(bd: &BiDiagram, x: &BObject, y: &BObject) -> BTreeSet<BMorphism> {
    let (ic, jc) = (bd.i_cat(), bd.j_cat());
    let mut out = BTreeSet::new();
    let betas = product(
        &ic.objects()
            .map(|i| jc.hom(x.j[i.idx()], y.j[i.idx()]).to_vec())
            .collect::<Vec<Vec<Mor>>>(),
    );
    for beta in betas {
        let fs = product(
            &ic.objects()
                .map(|i| {
                    let start = bd.transport(ic.id(i), beta[i.idx()]).ob(x.x[i.idx()]);
                    bd.fiber(i, y.j[i.idx()]).hom(start, y.x[i.idx()]).to_vec()
                })
                .collect::<Vec<Vec<Mor>>>(),
        );
        'f: for f in fs {
            for a in ic.morphisms() {
                let (s, t) = (ic.dom(a), ic.cod(a));
                let (xb, yb) = (x.beta[a.idx()], y.beta[a.idx()]);
                if jc.composite(yb, beta[s.idx()]) != jc.composite(beta[t.idx()], xb) {
                    continue 'f;
                }
                let fiber = bd.fiber(t, y.j[t.idx()]);
                let lhs = fiber.composite(y.rho[a.idx()], bd.transport(a, yb).mor(f[s.idx()]));
                let rhs = fiber.composite(
                    f[t.idx()],
                    bd.transport(ic.id(t), beta[t.idx()]).mor(x.rho[a.idx()]),
                );
                if lhs != rhs {
                    continue 'f;
                }
            }
            out.insert(BMorphism {
                beta: beta.clone(),
                f,
            });
        }
    }
    out
}

/// All A-objects by brute force over `j`, `x`, `rho`.
pub fn brute_a_objects(bd: &BiDiagram) -> BTreeSet<AObject> {
    let (ic, jc) = (bd.i_cat(), bd.j_cat());
    let mut out = BTreeSet::new();
    for j in jc.objects() {
        let xs = product(
            &ic.objects()
                .map(|i| bd.fiber(i, j).objects().collect())
                .collect::<Vec<Vec<Ob>>>(),
        );
        for x in xs {
            let rhos = product(
                &ic.morphisms()
                    .map(|a| {
                        let (s, t) = (ic.dom(a), ic.cod(a));
                        let start = bd.transport(a, jc.id(j)).ob(x[s.idx()]);
                        bd.fiber(t, j).hom(start, x[t.idx()]).to_vec()
                    })
                    .collect::<Vec<Vec<Mor>>>(),
            );
            for rho in rhos {
                let o = BObject {
                    j: vec![j; ic.object_count()],
                    x: x.clone(),
                    beta: vec![jc.id(j); ic.morphism_count()],
                    rho: rho.clone(),
                };
                // an A-object is exactly a flat B-object
                if b_object_ok(bd, &o) {
                    out.insert(AObject {
                        j,
                        x: x.clone(),
                        rho,
                    });
                }
            }
        }
    }
    out
}

/// All A-morphisms `x -> y` by brute force over `f_i` for every `b: j -> k`.
pub fn brute_a_morphisms(bd: &BiDiagram, x: &AObject, y: &AObject) -> BTreeSet<AMorphism> {
    let (ic, jc) = (bd.i_cat(), bd.j_cat());
    let mut out = BTreeSet::new();
    for &b in jc.hom(x.j, y.j) {
        let fs = product(
            &ic.objects()
                .map(|i| {
                    let start = bd.transport(ic.id(i), b).ob(x.x[i.idx()]);
                    bd.fiber(i, y.j).hom(start, y.x[i.idx()]).to_vec()
                })
                .collect::<Vec<Vec<Mor>>>(),
        );
        for f in fs {
            let ok = ic.morphisms().all(|a| {
                let (s, t) = (ic.dom(a), ic.cod(a));
                let fiber = bd.fiber(t, y.j);
                let lhs =
                    fiber.composite(y.rho[a.idx()], bd.transport(a, jc.id(y.j)).mor(f[s.idx()]));
                let rhs =
                    fiber.composite(f[t.idx()], bd.transport(ic.id(t), b).mor(x.rho[a.idx()]));
                lhs == rhs
            });
            if ok {
                out.insert(AMorphism { beta: b, f });
            }
        }
    }
    out
}

/// Compares the generic build of both sides with the brute-force
/// enumerations. Returns the first disagreement.
pub fn compare_with_brute_force(pair: &InterchangePair) -> Result<(), String> {
    let bd = pair.bidiagram();
    let (ac, bc) = (pair.a_cat(), pair.b_cat());
    let built_b: Vec<BObject> = bc.objects().map(|x| pair.b_object(x)).collect();
    let brute_b = brute_b_objects(bd);
    if built_b.iter().cloned().collect::<BTreeSet<_>>() != brute_b || built_b.len() != brute_b.len()
    {
        return Err(format!(
            "B objects: built {} brute {}",
            built_b.len(),
            brute_b.len()
        ));
    }
    for s in bc.objects() {
        for t in bc.objects() {
            let built: BTreeSet<BMorphism> =
                bc.hom(s, t).iter().map(|&f| pair.b_morphism(f)).collect();
            let brute = brute_b_morphisms(bd, &built_b[s.idx()], &built_b[t.idx()]);
            if built != brute || built.len() != bc.hom(s, t).len() {
                return Err(format!(
                    "B hom({s}, {t}): built {} brute {}",
                    built.len(),
                    brute.len()
                ));
            }
        }
    }
    let built_a: Vec<AObject> = ac.objects().map(|x| pair.a_object(x)).collect();
    let brute_a = brute_a_objects(bd);
    if built_a.iter().cloned().collect::<BTreeSet<_>>() != brute_a || built_a.len() != brute_a.len()
    {
        return Err(format!(
            "A objects: built {} brute {}",
            built_a.len(),
            brute_a.len()
        ));
    }
    for s in ac.objects() {
        for t in ac.objects() {
            let built: BTreeSet<AMorphism> =
                ac.hom(s, t).iter().map(|&f| pair.a_morphism(f)).collect();
            let brute = brute_a_morphisms(bd, &built_a[s.idx()], &built_a[t.idx()]);
            if built != brute || built.len() != ac.hom(s, t).len() {
                return Err(format!(
                    "A hom({s}, {t}): built {} brute {}",
                    built.len(),
                    brute.len()
                ));
            }
        }
    }
    Ok(())
}

/// `|hom(p^{n1-n0} a = b mod p^m)|` computed with plain integers.
pub fn padic_closed_form(p: u64, m: u32, n0: u32, a: u64, n1: u32, b: u64) -> usize {
    if n0 > n1 {
        return 0;
    }
    let modulus = p.pow(m);
    let mut v = a % modulus;
    for _ in n0..n1 {
        v = v * p % modulus;
    }
    usize::from(v == b % modulus)
}

/// Components of `L_m` truncated at `N`, by flood fill over the closed form.
pub fn padic_components(p: u64, m: u32, cols: u32) -> usize {
    let modulus = p.pow(m);
    let nodes: Vec<(u32, u64)> = (0..=cols)
        .flat_map(|n| (0..modulus).map(move |a| (n, a)))
        .collect();
    let mut seen = vec![false; nodes.len()];
    let mut count = 0;
    for start in 0..nodes.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for v in 0..nodes.len() {
                let ((n0, a), (n1, b)) = (nodes[u], nodes[v]);
                let linked = padic_closed_form(p, m, n0, a, n1, b)
                    + padic_closed_form(p, m, n1, b, n0, a)
                    > 0;
                if linked && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    count
}

/// Compatible families `x_m` in `Z/p^m`, `m = 1..=rows`, counted directly.
pub fn padic_column_families(p: u64, rows: u32) -> usize {
    let mut families: Vec<Vec<u64>> = (0..p).map(|a| vec![a]).collect();
    for m in 2..=rows {
        let modulus = p.pow(m);
        let below = p.pow(m - 1);
        families = families
            .into_iter()
            .flat_map(|f| {
                let last = *f.last().unwrap();
                (0..modulus)
                    .filter(move |&a| a % below == last)
                    .map(move |a| {
                        let mut g = f.clone();
                        g.push(a);
                        g
                    })
            })
            .collect();
    }
    families.len()
}
