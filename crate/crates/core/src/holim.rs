//! Homotopy limit of a diagram of categories.
//!
//! [`holim_explicit`] searches for families `(x, rho)`: one object `x_i` per
//! fiber and, for each `a: i -> j`, a morphism `rho_a: C(a)(x_i) -> x_j`,
//! subject to
//!
//! * unit: `rho_{id} = id`
//! * cocycle: `rho_{a . b} = rho_a . C(a)(rho_b)`
//!
//! A morphism `(x, rho) -> (y, s)` is a family `f_i: x_i -> y_i` with
//! `s_a . C(a)(f_i) = f_j . rho_a` for every `a: i -> j`.
//!
//! [`holim_pullback`] instead cuts the sections of `pi: hocolim -> I` out of
//! the functor category `HOM(I, hocolim)`. [`canonical_iso`] matches the two.

use std::sync::Arc;

use serde::Serialize;

use crate::diagram::{CatDiagram, DiagramMap};
use crate::error::{Error, Result};
use crate::fincat::{ob, FinCat, Limits, Mor, Ob};
use crate::functor::{check_functor, compose_functors, Functor, NatTrans, Violation};
use crate::functor_category::{functor_category, FunctorCategory};
use crate::hocolim::{hocolim, GrothMorphism, GrothObject, Hocolim};
use crate::presented::{Builder, Presented};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HolimObject {
    pub x: Vec<Ob>,
    pub rho: Vec<Mor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HolimMorphism {
    pub f: Vec<Mor>,
}

#[derive(Clone, Debug)]
pub struct Holim {
    diagram: CatDiagram,
    presented: Presented<HolimObject, HolimMorphism>,
}

impl Holim {
    pub fn cat(&self) -> &Arc<FinCat> {
        self.presented.cat()
    }

    pub fn diagram(&self) -> &CatDiagram {
        &self.diagram
    }

    pub fn object(&self, x: Ob) -> &HolimObject {
        self.presented.object(x)
    }

    pub fn morphism(&self, f: Mor) -> &HolimMorphism {
        self.presented.morphism(f)
    }

    pub fn objects(&self) -> &[HolimObject] {
        self.presented.objects()
    }

    pub fn object_of(&self, o: &HolimObject) -> Option<Ob> {
        self.presented.object_of(o)
    }

    pub fn morphism_of(&self, dom: Ob, cod: Ob, m: &HolimMorphism) -> Option<Mor> {
        self.presented.morphism_of(dom, cod, m)
    }
}

/// Checks typing, unit and cocycle for a candidate family.
pub fn check_holim_object(d: &CatDiagram, o: &HolimObject) -> std::result::Result<(), Violation> {
    let index = d.index();
    if o.x.len() != index.object_count() || o.rho.len() != index.morphism_count() {
        return Err(Violation::ComponentTyping { obj: Ob(0) });
    }
    for (i, &x) in o.x.iter().enumerate() {
        if x.idx() >= d.fiber(ob(i)).object_count() {
            return Err(Violation::ComponentTyping { obj: ob(i) });
        }
    }
    for a in index.morphisms() {
        let (i, j) = (index.dom(a), index.cod(a));
        let fiber = d.fiber(j);
        let r = o.rho[a.idx()];
        if r.idx() >= fiber.morphism_count()
            || fiber.dom(r) != d.transport(a).ob(o.x[i.idx()])
            || fiber.cod(r) != o.x[j.idx()]
        {
            return Err(Violation::DomCod { mor: a });
        }
    }
    for i in index.objects() {
        if o.rho[index.id(i).idx()] != d.fiber(i).id(o.x[i.idx()]) {
            return Err(Violation::Identity { obj: i });
        }
    }
    for (a, b) in index.composable_pairs() {
        let ab = index.composite(a, b);
        let fiber = d.fiber(index.cod(a));
        let rhs = fiber.composite(o.rho[a.idx()], d.transport(a).mor(o.rho[b.idx()]));
        if o.rho[ab.idx()] != rhs {
            return Err(Violation::Composite { g: a, f: b });
        }
    }
    Ok(())
}

/// Checks typing and every square for a candidate morphism `x -> y`.
pub fn check_holim_morphism(
    d: &CatDiagram,
    x: &HolimObject,
    y: &HolimObject,
    m: &HolimMorphism,
) -> std::result::Result<(), Violation> {
    let index = d.index();
    if m.f.len() != index.object_count() {
        return Err(Violation::ComponentTyping { obj: Ob(0) });
    }
    for i in index.objects() {
        let fiber = d.fiber(i);
        let f = m.f[i.idx()];
        if f.idx() >= fiber.morphism_count()
            || fiber.dom(f) != x.x[i.idx()]
            || fiber.cod(f) != y.x[i.idx()]
        {
            return Err(Violation::ComponentTyping { obj: i });
        }
    }
    for a in index.morphisms() {
        let (i, j) = (index.dom(a), index.cod(a));
        let fiber = d.fiber(j);
        let lhs = fiber.composite(y.rho[a.idx()], d.transport(a).mor(m.f[i.idx()]));
        let rhs = fiber.composite(m.f[j.idx()], x.rho[a.idx()]);
        if lhs != rhs {
            return Err(Violation::Naturality { alpha: a });
        }
    }
    Ok(())
}

struct ObjectSearch<'a> {
    d: &'a CatDiagram,
    index: &'a FinCat,
    cap: usize,
    // morphisms whose later endpoint is the given object
    obj_checks: Vec<Vec<Mor>>,
    // cocycle triples (a, b, a.b) whose largest index is the given morphism
    mor_checks: Vec<Vec<(Mor, Mor, Mor)>>,
    x: Vec<Ob>,
    rho: Vec<Mor>,
    out: Vec<HolimObject>,
}

impl<'a> ObjectSearch<'a> {
    fn new(d: &'a CatDiagram, cap: usize) -> Self {
        let index = &**d.index();
        let mut obj_checks = vec![Vec::new(); index.object_count()];
        for a in index.morphisms() {
            let last = index.dom(a).max(index.cod(a));
            obj_checks[last.idx()].push(a);
        }
        let mut mor_checks = vec![Vec::new(); index.morphism_count()];
        for (a, b) in index.composable_pairs() {
            let ab = index.composite(a, b);
            mor_checks[a.max(b).max(ab).idx()].push((a, b, ab));
        }
        ObjectSearch {
            d,
            index,
            cap,
            obj_checks,
            mor_checks,
            x: Vec::with_capacity(index.object_count()),
            rho: Vec::with_capacity(index.morphism_count()),
            out: Vec::new(),
        }
    }

    fn objects(&mut self) -> Result<()> {
        let i = self.x.len();
        if i == self.index.object_count() {
            return self.morphisms();
        }
        for x in self.d.fiber(ob(i)).objects() {
            self.x.push(x);
            let ok = self.obj_checks[i].iter().all(|&a| {
                let (s, t) = (self.index.dom(a), self.index.cod(a));
                let start = self.d.transport(a).ob(self.x[s.idx()]);
                !self.d.fiber(t).hom(start, self.x[t.idx()]).is_empty()
            });
            if ok {
                self.objects()?;
            }
            self.x.pop();
        }
        Ok(())
    }

    fn morphisms(&mut self) -> Result<()> {
        let k = self.rho.len();
        if k == self.index.morphism_count() {
            if self.out.len() == self.cap {
                return Err(Error::SizeCapExceeded {
                    stage: "holim".into(),
                    detail: format!("more than {} objects", self.cap),
                });
            }
            self.out.push(HolimObject {
                x: self.x.clone(),
                rho: self.rho.clone(),
            });
            return Ok(());
        }
        let a = Mor(k as u32);
        let (i, j) = (self.index.dom(a), self.index.cod(a));
        let fiber = self.d.fiber(j);
        let candidates: Vec<Mor> = if self.index.is_identity(a) {
            vec![fiber.id(self.x[j.idx()])]
        } else {
            let start = self.d.transport(a).ob(self.x[i.idx()]);
            fiber.hom(start, self.x[j.idx()]).to_vec()
        };
        for r in candidates {
            self.rho.push(r);
            let ok = self.mor_checks[k].iter().all(|&(g, f, gf)| {
                let fib = self.d.fiber(self.index.cod(g));
                let moved = self.d.transport(g).mor(self.rho[f.idx()]);
                self.rho[gf.idx()] == fib.composite(self.rho[g.idx()], moved)
            });
            if ok {
                self.morphisms()?;
            }
            self.rho.pop();
        }
        Ok(())
    }
}

struct MorphismSearch<'a> {
    d: &'a CatDiagram,
    index: &'a FinCat,
    obj_checks: &'a [Vec<Mor>],
    src: &'a HolimObject,
    tgt: &'a HolimObject,
    f: Vec<Mor>,
    out: Vec<HolimMorphism>,
}

impl MorphismSearch<'_> {
    fn run(&mut self) {
        let i = self.f.len();
        if i == self.index.object_count() {
            self.out.push(HolimMorphism { f: self.f.clone() });
            return;
        }
        let fiber = self.d.fiber(ob(i));
        for &c in fiber.hom(self.src.x[i], self.tgt.x[i]) {
            self.f.push(c);
            let ok = self.obj_checks[i].iter().all(|&a| {
                let (s, t) = (self.index.dom(a), self.index.cod(a));
                let fib = self.d.fiber(t);
                let lhs = fib.composite(
                    self.tgt.rho[a.idx()],
                    self.d.transport(a).mor(self.f[s.idx()]),
                );
                let rhs = fib.composite(self.f[t.idx()], self.src.rho[a.idx()]);
                lhs == rhs
            });
            if ok {
                self.run();
            }
            self.f.pop();
        }
    }
}

fn family_label(d: &CatDiagram, o: &HolimObject) -> String {
    let index = d.index();
    let xs: Vec<&str> = index
        .objects()
        .map(|i| d.fiber(i).object_label(o.x[i.idx()]))
        .collect();
    let rs: Vec<&str> = index
        .morphisms()
        .filter(|&a| !index.is_identity(a))
        .map(|a| d.fiber(index.cod(a)).morphism_label(o.rho[a.idx()]))
        .collect();
    format!("({};{})", xs.join(","), rs.join(","))
}

/// The category of families `(x, rho)`, objects in lexicographic order of
/// `(x, rho)` and morphisms by `(dom, cod, f)`.
pub fn holim_explicit(d: &CatDiagram, limits: &Limits) -> Result<Holim> {
    let mut search = ObjectSearch::new(d, limits.max_objects);
    search.objects()?;
    let ObjectSearch {
        obj_checks, out, ..
    } = search;
    let mut b: Builder<HolimObject, HolimMorphism> = Builder::new("holim", limits);
    for o in &out {
        b.add_object(o.clone())?;
    }
    for (s, src) in out.iter().enumerate() {
        for (t, tgt) in out.iter().enumerate() {
            let mut ms = MorphismSearch {
                d,
                index: d.index(),
                obj_checks: &obj_checks,
                src,
                tgt,
                f: Vec::new(),
                out: Vec::new(),
            };
            ms.run();
            for m in ms.out {
                b.add_morphism(ob(s), ob(t), m)?;
            }
        }
    }
    let index = d.index();
    let presented = b.finish(
        |o| family_label(d, o),
        |m| {
            let parts: Vec<&str> = index
                .objects()
                .map(|i| d.fiber(i).morphism_label(m.f[i.idx()]))
                .collect();
            format!("[{}]", parts.join(","))
        },
        |o| HolimMorphism {
            f: index
                .objects()
                .map(|i| d.fiber(i).id(o.x[i.idx()]))
                .collect(),
        },
        |g, f| {
            let comps = index
                .objects()
                .map(|i| d.fiber(i).compose(g.f[i.idx()], f.f[i.idx()]))
                .collect::<Option<Vec<Mor>>>()?;
            Some(HolimMorphism { f: comps })
        },
    )?;
    Ok(Holim {
        diagram: d.clone(),
        presented,
    })
}

/// The fiber of `HOM(I, hocolim) -> HOM(I, I)` over the identity functor:
/// sections of `pi` and transformations between them lying over identities.
#[derive(Clone, Debug)]
pub struct HolimPullback {
    hocolim: Hocolim,
    functors: FunctorCategory,
    cat: Arc<FinCat>,
    objects: Vec<Ob>,
    morphisms: Vec<Mor>,
    object_pos: Vec<Option<Ob>>,
    morphism_pos: Vec<Option<Mor>>,
}

impl HolimPullback {
    pub fn cat(&self) -> &Arc<FinCat> {
        &self.cat
    }

    pub fn hocolim(&self) -> &Hocolim {
        &self.hocolim
    }

    pub fn functor_category(&self) -> &FunctorCategory {
        &self.functors
    }

    pub fn section(&self, x: Ob) -> Functor {
        self.functors.functor(self.objects[x.idx()])
    }

    pub fn transformation(&self, m: Mor) -> NatTrans {
        self.functors.nat_trans(self.morphisms[m.idx()])
    }

    pub fn object_of(&self, f: &Functor) -> Option<Ob> {
        self.object_pos[self.functors.object_of(f)?.idx()]
    }

    pub fn morphism_of(&self, eta: &NatTrans) -> Option<Mor> {
        self.morphism_pos[self.functors.morphism_of(eta)?.idx()]
    }
}

pub fn holim_pullback(d: &CatDiagram, limits: &Limits) -> Result<HolimPullback> {
    let h = hocolim(d, limits)?;
    let index = d.index();
    let fc = functor_category(index, h.cat(), limits)?;
    let pi = h.projection();
    let fcat = fc.cat().clone();
    let objects: Vec<Ob> = fcat
        .objects()
        .filter(|&x| {
            let f = fc.functor(x);
            index.objects().all(|i| pi.ob(f.ob(i)) == i)
                && index.morphisms().all(|a| pi.mor(f.mor(a)) == a)
        })
        .collect();
    let mut object_pos = vec![None; fcat.object_count()];
    for (k, &x) in objects.iter().enumerate() {
        object_pos[x.idx()] = Some(ob(k));
    }
    let morphisms: Vec<Mor> = fcat
        .morphisms()
        .filter(|&m| {
            object_pos[fcat.dom(m).idx()].is_some()
                && object_pos[fcat.cod(m).idx()].is_some()
                && fc
                    .components(m)
                    .iter()
                    .zip(index.objects())
                    .all(|(&c, i)| pi.mor(c) == index.id(i))
        })
        .collect();
    let mut morphism_pos = vec![None; fcat.morphism_count()];
    for (k, &m) in morphisms.iter().enumerate() {
        morphism_pos[m.idx()] = Some(Mor(k as u32));
    }
    let cat = Arc::new(fcat.subcategory(&objects, &morphisms)?);
    Ok(HolimPullback {
        hocolim: h,
        functors: fc,
        cat,
        objects,
        morphisms,
        object_pos,
        morphism_pos,
    })
}

/// The mutually inverse functors between the two holim constructions.
/// Fails with `ConstructionMismatch` if either is not a functor or the
/// round trips are not strict identities.
pub fn canonical_iso(h: &Holim, hp: &HolimPullback) -> Result<(Functor, Functor)> {
    let d = &h.diagram;
    let index = d.index();
    let g = &hp.hocolim;
    let mismatch = |what: &str| Error::ConstructionMismatch(format!("canonical holim iso: {what}"));
    let gob = |i: Ob, x: Ob| {
        g.object_of(GrothObject { i, x })
            .ok_or_else(|| mismatch("object outside hocolim"))
    };

    let mut fwd_obj = Vec::with_capacity(h.cat().object_count());
    for o in h.objects() {
        let obj_map = index
            .objects()
            .map(|i| gob(i, o.x[i.idx()]))
            .collect::<Result<Vec<Ob>>>()?;
        let mor_map = index
            .morphisms()
            .map(|a| {
                let m = GrothMorphism {
                    alpha: a,
                    rho: o.rho[a.idx()],
                };
                g.morphism_of(obj_map[index.dom(a).idx()], obj_map[index.cod(a).idx()], m)
                    .ok_or_else(|| mismatch("family arrow outside hocolim"))
            })
            .collect::<Result<Vec<Mor>>>()?;
        let section = Functor::new(index.clone(), g.cat().clone(), obj_map, mor_map)?;
        fwd_obj.push(
            hp.object_of(&section)
                .ok_or_else(|| mismatch("family is not a section"))?,
        );
    }
    let hc = h.cat();
    let mut fwd_mor = Vec::with_capacity(hc.morphism_count());
    for f in hc.morphisms() {
        let m = h.morphism(f);
        let (s, t) = (
            hp.section(fwd_obj[hc.dom(f).idx()]),
            hp.section(fwd_obj[hc.cod(f).idx()]),
        );
        let comps = index
            .objects()
            .map(|i| {
                let gm = GrothMorphism {
                    alpha: index.id(i),
                    rho: m.f[i.idx()],
                };
                g.morphism_of(s.ob(i), t.ob(i), gm)
                    .ok_or_else(|| mismatch("component outside hocolim"))
            })
            .collect::<Result<Vec<Mor>>>()?;
        let eta = NatTrans::new(s, t, comps)?;
        fwd_mor.push(
            hp.morphism_of(&eta)
                .ok_or_else(|| mismatch("family map is not vertical"))?,
        );
    }
    let forward = Functor::new(hc.clone(), hp.cat.clone(), fwd_obj, fwd_mor)?;

    let pc = &hp.cat;
    let mut back_obj = Vec::with_capacity(pc.object_count());
    for x in pc.objects() {
        let s = hp.section(x);
        let o = HolimObject {
            x: index.objects().map(|i| g.object(s.ob(i)).x).collect(),
            rho: index
                .morphisms()
                .map(|a| g.morphism(s.mor(a)).rho)
                .collect(),
        };
        back_obj.push(
            h.object_of(&o)
                .ok_or_else(|| mismatch("section is not a family"))?,
        );
    }
    let mut back_mor = Vec::with_capacity(pc.morphism_count());
    for m in pc.morphisms() {
        let eta = hp.transformation(m);
        let hm = HolimMorphism {
            f: eta
                .components()
                .iter()
                .map(|&c| g.morphism(c).rho)
                .collect(),
        };
        back_mor.push(
            h.morphism_of(back_obj[pc.dom(m).idx()], back_obj[pc.cod(m).idx()], &hm)
                .ok_or_else(|| mismatch("transformation is not a family map"))?,
        );
    }
    let backward = Functor::new(pc.clone(), hc.clone(), back_obj, back_mor)?;

    check_functor(&forward).map_err(|v| mismatch(&format!("forward map: {v}")))?;
    check_functor(&backward).map_err(|v| mismatch(&format!("backward map: {v}")))?;
    if !compose_functors(&backward, &forward)?.is_identity()
        || !compose_functors(&forward, &backward)?.is_identity()
    {
        return Err(mismatch("round trip is not the identity"));
    }
    Ok((forward, backward))
}

/// The functor `(x, rho) |-> (t x, t rho)`, `f |-> t f`.
pub fn holim_induced(t: &DiagramMap, source: &Holim, target: &Holim) -> Result<Functor> {
    if **t.from() != source.diagram || **t.to() != target.diagram {
        return Err(Error::ShapeMismatch(
            "diagram map does not run between these holims".into(),
        ));
    }
    let index = source.diagram.index();
    let missing = || Error::ConstructionMismatch("induced holim map leaves the target".into());
    let obj_map = source
        .objects()
        .iter()
        .map(|o| {
            let image = HolimObject {
                x: index
                    .objects()
                    .map(|i| t.component(i).ob(o.x[i.idx()]))
                    .collect(),
                rho: index
                    .morphisms()
                    .map(|a| t.component(index.cod(a)).mor(o.rho[a.idx()]))
                    .collect(),
            };
            target.object_of(&image).ok_or_else(missing)
        })
        .collect::<Result<Vec<Ob>>>()?;
    let sc = source.cat();
    let mor_map = sc
        .morphisms()
        .map(|f| {
            let m = source.morphism(f);
            let image = HolimMorphism {
                f: index
                    .objects()
                    .map(|i| t.component(i).mor(m.f[i.idx()]))
                    .collect(),
            };
            target
                .morphism_of(obj_map[sc.dom(f).idx()], obj_map[sc.cod(f).idx()], &image)
                .ok_or_else(missing)
        })
        .collect::<Result<Vec<Mor>>>()?;
    Functor::new(sc.clone(), target.cat().clone(), obj_map, mor_map)
}
