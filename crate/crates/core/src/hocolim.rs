//! Homotopy colimit of a diagram of categories: the Grothendieck
//! construction with its projection to the index.
//!
//! Objects are pairs `(i, x)` with `x` in `C_i`. A morphism `(i, x) -> (j, y)`
//! is a pair `(a, r)` with `a: i -> j` and `r: C(a)(x) -> y` in `C_j`. For
//! `(b, m): (k, w) -> (i, x)` followed by `(a, r): (i, x) -> (j, y)` the
//! composite is `(a . b, r . C(a)(m))`; this is the only typed reading of the
//! semidirect-product law.

use std::sync::Arc;

use serde::Serialize;

use crate::diagram::{CatDiagram, DiagramMap};
use crate::error::{Error, Result};
use crate::fincat::{ob, FinCat, Limits, Mor, Ob};
use crate::functor::Functor;
use crate::presented::{Builder, Presented};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GrothObject {
    pub i: Ob,
    pub x: Ob,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GrothMorphism {
    pub alpha: Mor,
    pub rho: Mor,
}

/// `hocolim_I C` together with `pi: hocolim_I C -> I`.
#[derive(Clone, Debug)]
pub struct Hocolim {
    diagram: CatDiagram,
    presented: Presented<GrothObject, GrothMorphism>,
    projection: Functor,
}

impl Hocolim {
    pub fn cat(&self) -> &Arc<FinCat> {
        self.presented.cat()
    }

    pub fn diagram(&self) -> &CatDiagram {
        &self.diagram
    }

    pub fn projection(&self) -> &Functor {
        &self.projection
    }

    pub fn object(&self, x: Ob) -> GrothObject {
        *self.presented.object(x)
    }

    pub fn morphism(&self, f: Mor) -> GrothMorphism {
        *self.presented.morphism(f)
    }

    pub fn object_of(&self, o: GrothObject) -> Option<Ob> {
        self.presented.object_of(&o)
    }

    pub fn morphism_of(&self, dom: Ob, cod: Ob, m: GrothMorphism) -> Option<Mor> {
        self.presented.morphism_of(dom, cod, &m)
    }
}

pub fn hocolim(d: &CatDiagram, limits: &Limits) -> Result<Hocolim> {
    let index = d.index();
    let mut offsets = Vec::with_capacity(index.object_count());
    let mut b: Builder<GrothObject, GrothMorphism> = Builder::new("hocolim", limits);
    for i in index.objects() {
        offsets.push(b.object_count());
        for x in d.fiber(i).objects() {
            b.add_object(GrothObject { i, x })?;
        }
    }
    // per domain, sort by (cod, alpha, rho) into canonical order
    let mut row: Vec<(Ob, GrothMorphism)> = Vec::new();
    for src in 0..b.object_count() {
        let GrothObject { i, x } = *b.object(ob(src));
        row.clear();
        for &a in index.outgoing(i) {
            let j = index.cod(a);
            let fiber = d.fiber(j);
            let ax = d.transport(a).ob(x);
            for &r in fiber.outgoing(ax) {
                let y = fiber.cod(r);
                row.push((
                    ob(offsets[j.idx()] + y.idx()),
                    GrothMorphism { alpha: a, rho: r },
                ));
            }
        }
        row.sort();
        for &(cod, m) in &row {
            b.add_morphism(ob(src), cod, m)?;
        }
    }
    let presented = b.finish(
        |o| {
            format!(
                "({},{})",
                index.object_label(o.i),
                d.fiber(o.i).object_label(o.x)
            )
        },
        |m| {
            let j = index.cod(m.alpha);
            format!(
                "({},{})",
                index.morphism_label(m.alpha),
                d.fiber(j).morphism_label(m.rho)
            )
        },
        |o| GrothMorphism {
            alpha: index.id(o.i),
            rho: d.fiber(o.i).id(o.x),
        },
        |g, f| {
            let alpha = index.compose(g.alpha, f.alpha)?;
            let fiber = d.fiber(index.cod(g.alpha));
            let moved = d.transport(g.alpha).mor(f.rho);
            Some(GrothMorphism {
                alpha,
                rho: fiber.compose(g.rho, moved)?,
            })
        },
    )?;
    let cat = presented.cat().clone();
    let projection = Functor::new(
        cat.clone(),
        index.clone(),
        presented.objects().iter().map(|o| o.i).collect(),
        presented.morphisms().iter().map(|m| m.alpha).collect(),
    )?;
    Ok(Hocolim {
        diagram: d.clone(),
        presented,
        projection,
    })
}

/// The functor `(i, x) |-> (i, t_i x)`, `(a, r) |-> (a, t_{cod a}(r))`.
pub fn hocolim_induced(t: &DiagramMap, source: &Hocolim, target: &Hocolim) -> Result<Functor> {
    if **t.from() != source.diagram || **t.to() != target.diagram {
        return Err(Error::ShapeMismatch(
            "diagram map does not run between these hocolims".into(),
        ));
    }
    let index = source.diagram.index();
    let missing = || Error::ConstructionMismatch("induced hocolim map leaves the target".into());
    let obj_map = source
        .presented
        .objects()
        .iter()
        .map(|o| {
            target
                .object_of(GrothObject {
                    i: o.i,
                    x: t.component(o.i).ob(o.x),
                })
                .ok_or_else(missing)
        })
        .collect::<Result<Vec<Ob>>>()?;
    let src_cat = source.cat();
    let mor_map = src_cat
        .morphisms()
        .map(|f| {
            let m = source.morphism(f);
            let image = GrothMorphism {
                alpha: m.alpha,
                rho: t.component(index.cod(m.alpha)).mor(m.rho),
            };
            target
                .morphism_of(
                    obj_map[src_cat.dom(f).idx()],
                    obj_map[src_cat.cod(f).idx()],
                    image,
                )
                .ok_or_else(missing)
        })
        .collect::<Result<Vec<Mor>>>()?;
    Functor::new(src_cat.clone(), target.cat().clone(), obj_map, mor_map)
}
