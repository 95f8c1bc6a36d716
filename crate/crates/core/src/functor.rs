//! Functors and natural transformations between finite categories, with
//! exhaustive law checks and backtracking enumeration.

use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{ob, FinCat, Limits, Mor, Ob};

/// First law violation found by a checker.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// The image of a morphism has the wrong endpoints.
    DomCod { mor: Mor },
    /// The identity of an object is not sent to an identity.
    Identity { obj: Ob },
    /// `F(g . f) != F(g) . F(f)`.
    Composite { g: Mor, f: Mor },
    /// A component has the wrong endpoints.
    ComponentTyping { obj: Ob },
    /// The naturality square at a morphism does not commute.
    Naturality { alpha: Mor },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DomCod { mor } => write!(f, "image of {mor} has the wrong endpoints"),
            Violation::Identity { obj } => write!(f, "identity of {obj} is not preserved"),
            Violation::Composite { g, f: m } => write!(f, "composite {g} . {m} is not preserved"),
            Violation::ComponentTyping { obj } => {
                write!(f, "component at {obj} has the wrong endpoints")
            }
            Violation::Naturality { alpha } => {
                write!(f, "naturality square at {alpha} does not commute")
            }
        }
    }
}

/// `true` if the two handles denote the same category.
pub fn same_category(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A map of finite categories given by explicit object and morphism tables.
///
/// Equality is extensional: same source, same target, same tables.
#[derive(Clone, Debug)]
pub struct Functor {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    obj_map: Vec<Ob>,
    mor_map: Vec<Mor>,
}

impl PartialEq for Functor {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
            && same_category(&self.source, &other.source)
            && same_category(&self.target, &other.target)
    }
}

impl Eq for Functor {}

impl Functor {
    /// Wraps the tables after checking that they are total and in range.
    /// Functor laws are not checked here; see [`check_functor`].
    pub fn new(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        obj_map: Vec<Ob>,
        mor_map: Vec<Mor>,
    ) -> Result<Functor> {
        if obj_map.len() != source.object_count() || mor_map.len() != source.morphism_count() {
            return Err(Error::SourceTargetMismatch(
                "maps are not total on the source".into(),
            ));
        }
        if obj_map.iter().any(|x| x.idx() >= target.object_count())
            || mor_map.iter().any(|m| m.idx() >= target.morphism_count())
        {
            return Err(Error::SourceTargetMismatch("maps leave the target".into()));
        }
        Ok(Functor {
            source,
            target,
            obj_map,
            mor_map,
        })
    }

    /// Like [`Functor::new`], additionally requiring the functor laws.
    pub fn checked(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        obj_map: Vec<Ob>,
        mor_map: Vec<Mor>,
    ) -> Result<Functor> {
        let f = Functor::new(source, target, obj_map, mor_map)?;
        check_functor(&f)
            .map_err(|v| Error::ConstructionMismatch(format!("not a functor: {v}")))?;
        Ok(f)
    }

    pub fn identity(cat: &Arc<FinCat>) -> Functor {
        Functor {
            source: cat.clone(),
            target: cat.clone(),
            obj_map: cat.objects().collect(),
            mor_map: cat.morphisms().collect(),
        }
    }

    pub fn constant(source: &Arc<FinCat>, target: &Arc<FinCat>, x: Ob) -> Functor {
        Functor {
            source: source.clone(),
            target: target.clone(),
            obj_map: vec![x; source.object_count()],
            mor_map: vec![target.id(x); source.morphism_count()],
        }
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn obj_map(&self) -> &[Ob] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[Mor] {
        &self.mor_map
    }

    #[inline]
    pub fn ob(&self, x: Ob) -> Ob {
        self.obj_map[x.idx()]
    }

    #[inline]
    pub fn mor(&self, f: Mor) -> Mor {
        self.mor_map[f.idx()]
    }

    pub fn is_identity(&self) -> bool {
        same_category(&self.source, &self.target)
            && self.obj_map.iter().enumerate().all(|(i, x)| x.idx() == i)
            && self.mor_map.iter().enumerate().all(|(i, m)| m.idx() == i)
    }

    /// Bijective on objects and on morphisms.
    pub fn is_bijective(&self) -> bool {
        fn bij<T: Copy>(map: &[T], n: usize, idx: impl Fn(T) -> usize) -> bool {
            if map.len() != n {
                return false;
            }
            let mut seen = vec![false; n];
            map.iter()
                .all(|&t| !std::mem::replace(&mut seen[idx(t)], true))
        }
        bij(&self.obj_map, self.target.object_count(), Ob::idx)
            && bij(&self.mor_map, self.target.morphism_count(), Mor::idx)
    }

    /// The inverse of a bijective functor.
    pub fn inverse(&self) -> Option<Functor> {
        if !self.is_bijective() {
            return None;
        }
        let mut obj_map = vec![Ob(0); self.obj_map.len()];
        for (i, x) in self.obj_map.iter().enumerate() {
            obj_map[x.idx()] = ob(i);
        }
        let mut mor_map = vec![Mor(0); self.mor_map.len()];
        for (i, m) in self.mor_map.iter().enumerate() {
            mor_map[m.idx()] = crate::fincat::mor(i);
        }
        Some(Functor {
            source: self.target.clone(),
            target: self.source.clone(),
            obj_map,
            mor_map,
        })
    }

    /// Injective on every hom-set.
    pub fn is_faithful(&self) -> std::result::Result<(), (Mor, Mor)> {
        let src = &self.source;
        for a in src.objects() {
            for b in src.objects() {
                let hom = src.hom(a, b);
                for (k, &g) in hom.iter().enumerate() {
                    for &h in &hom[k + 1..] {
                        if self.mor(g) == self.mor(h) {
                            return Err((g, h));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Exhaustive check of the functor laws: endpoints, identities, composites.
pub fn check_functor(f: &Functor) -> std::result::Result<(), Violation> {
    let (s, t) = (&*f.source, &*f.target);
    for m in s.morphisms() {
        let fm = f.mor(m);
        if t.dom(fm) != f.ob(s.dom(m)) || t.cod(fm) != f.ob(s.cod(m)) {
            return Err(Violation::DomCod { mor: m });
        }
    }
    for x in s.objects() {
        if f.mor(s.id(x)) != t.id(f.ob(x)) {
            return Err(Violation::Identity { obj: x });
        }
    }
    for (g, h) in s.composable_pairs() {
        if f.mor(s.composite(g, h)) != t.composite(f.mor(g), f.mor(h)) {
            return Err(Violation::Composite { g, f: h });
        }
    }
    Ok(())
}

/// `g . f`.
pub fn compose_functors(g: &Functor, f: &Functor) -> Result<Functor> {
    if !same_category(&f.target, &g.source) {
        return Err(Error::SourceTargetMismatch(
            "target of F is not the source of G".into(),
        ));
    }
    Ok(Functor {
        source: f.source.clone(),
        target: g.target.clone(),
        obj_map: f.obj_map.iter().map(|&x| g.ob(x)).collect(),
        mor_map: f.mor_map.iter().map(|&m| g.mor(m)).collect(),
    })
}

/// A family of target morphisms `components[i]: F(i) -> G(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTrans {
    from: Functor,
    to: Functor,
    components: Vec<Mor>,
}

impl NatTrans {
    pub fn new(from: Functor, to: Functor, components: Vec<Mor>) -> Result<NatTrans> {
        if !same_category(&from.source, &to.source) || !same_category(&from.target, &to.target) {
            return Err(Error::ShapeMismatch(
                "functors do not share source and target".into(),
            ));
        }
        if components.len() != from.source.object_count() {
            return Err(Error::ShapeMismatch(
                "one component per source object required".into(),
            ));
        }
        if components
            .iter()
            .any(|m| m.idx() >= from.target.morphism_count())
        {
            return Err(Error::ShapeMismatch("component outside the target".into()));
        }
        Ok(NatTrans {
            from,
            to,
            components,
        })
    }

    pub fn identity(f: &Functor) -> NatTrans {
        let t = &f.target;
        NatTrans {
            from: f.clone(),
            to: f.clone(),
            components: f.obj_map.iter().map(|&x| t.id(x)).collect(),
        }
    }

    pub fn from(&self) -> &Functor {
        &self.from
    }

    pub fn to(&self) -> &Functor {
        &self.to
    }

    pub fn components(&self) -> &[Mor] {
        &self.components
    }

    pub fn component(&self, x: Ob) -> Mor {
        self.components[x.idx()]
    }

    /// Vertical composite `self . eta`.
    pub fn vertical(&self, eta: &NatTrans) -> Result<NatTrans> {
        if eta.to != self.from {
            return Err(Error::ShapeMismatch(
                "transformations are not composable".into(),
            ));
        }
        let t = &self.from.target;
        let components = self
            .components
            .iter()
            .zip(&eta.components)
            .map(|(&s, &e)| t.composite(s, e))
            .collect();
        Ok(NatTrans {
            from: eta.from.clone(),
            to: self.to.clone(),
            components,
        })
    }
}

/// Checks every component's endpoints and every naturality square.
pub fn check_nat_trans(eta: &NatTrans) -> std::result::Result<(), Violation> {
    let (s, t) = (&*eta.from.source, &*eta.from.target);
    for x in s.objects() {
        let c = eta.component(x);
        if t.dom(c) != eta.from.ob(x) || t.cod(c) != eta.to.ob(x) {
            return Err(Violation::ComponentTyping { obj: x });
        }
    }
    for a in s.morphisms() {
        let (i, j) = (s.dom(a), s.cod(a));
        if t.composite(eta.to.mor(a), eta.component(i))
            != t.composite(eta.component(j), eta.from.mor(a))
        {
            return Err(Violation::Naturality { alpha: a });
        }
    }
    Ok(())
}

/// Called once per functor found; `Break` stops the search.
type Visit<'v> = dyn FnMut(&[Ob], &[Mor]) -> ControlFlow<()> + 'v;

/// Backtracking search for functors `source -> target`.
///
/// Objects are assigned first, in order, then morphisms in order, with
/// candidates tried in increasing index, so solutions come out
/// lexicographically by object map then morphism map. In bijective mode only
/// isomorphisms are produced.
struct FunctorSearch<'a> {
    src: &'a FinCat,
    tgt: &'a FinCat,
    bijective: bool,
    // morphisms whose later endpoint is the given object
    obj_checks: Vec<Vec<Mor>>,
    // composable (g, f, g.f) whose largest index is the given morphism
    mor_checks: Vec<Vec<(Mor, Mor, Mor)>>,
    obj_map: Vec<Ob>,
    mor_map: Vec<Mor>,
    used_obj: Vec<bool>,
    used_mor: Vec<bool>,
}

impl<'a> FunctorSearch<'a> {
    fn new(src: &'a FinCat, tgt: &'a FinCat, bijective: bool) -> Self {
        let mut obj_checks = vec![Vec::new(); src.object_count()];
        for a in src.morphisms() {
            obj_checks[src.dom(a).max(src.cod(a)).idx()].push(a);
        }
        let mut mor_checks = vec![Vec::new(); src.morphism_count()];
        for (g, f) in src.composable_pairs() {
            let gf = src.composite(g, f);
            mor_checks[g.max(f).max(gf).idx()].push((g, f, gf));
        }
        FunctorSearch {
            src,
            tgt,
            bijective,
            obj_checks,
            mor_checks,
            obj_map: Vec::with_capacity(src.object_count()),
            mor_map: Vec::with_capacity(src.morphism_count()),
            used_obj: vec![false; tgt.object_count()],
            used_mor: vec![false; tgt.morphism_count()],
        }
    }

    fn run(&mut self, visit: &mut Visit) -> ControlFlow<()> {
        if self.bijective
            && (self.src.object_count() != self.tgt.object_count()
                || self.src.morphism_count() != self.tgt.morphism_count())
        {
            return ControlFlow::Continue(());
        }
        self.objects(visit)
    }

    fn objects(&mut self, visit: &mut Visit) -> ControlFlow<()> {
        let x = self.obj_map.len();
        if x == self.src.object_count() {
            return self.morphisms(visit);
        }
        for y in self.tgt.objects() {
            if self.bijective && self.used_obj[y.idx()] {
                continue;
            }
            self.obj_map.push(y);
            let ok = self.obj_checks[x].iter().all(|&a| {
                let (d, c) = (self.src.dom(a), self.src.cod(a));
                let n = self
                    .tgt
                    .hom(self.obj_map[d.idx()], self.obj_map[c.idx()])
                    .len();
                if self.bijective {
                    n == self.src.hom(d, c).len()
                } else {
                    n > 0
                }
            });
            if ok {
                self.used_obj[y.idx()] = true;
                let flow = self.objects(visit);
                self.used_obj[y.idx()] = false;
                if flow.is_break() {
                    self.obj_map.pop();
                    return flow;
                }
            }
            self.obj_map.pop();
        }
        ControlFlow::Continue(())
    }

    fn morphisms(&mut self, visit: &mut Visit) -> ControlFlow<()> {
        let k = self.mor_map.len();
        if k == self.src.morphism_count() {
            return visit(&self.obj_map, &self.mor_map);
        }
        let m = crate::fincat::mor(k);
        let (d, c) = (
            self.obj_map[self.src.dom(m).idx()],
            self.obj_map[self.src.cod(m).idx()],
        );
        let forced;
        let candidates: &[Mor] = if self.src.is_identity(m) {
            forced = [self.tgt.id(d)];
            &forced
        } else {
            self.tgt.hom(d, c)
        };
        for &cand in candidates {
            if self.bijective && self.used_mor[cand.idx()] {
                continue;
            }
            self.mor_map.push(cand);
            let ok = self.mor_checks[k].iter().all(|&(g, f, gf)| {
                self.tgt
                    .composite(self.mor_map[g.idx()], self.mor_map[f.idx()])
                    == self.mor_map[gf.idx()]
            });
            if ok {
                self.used_mor[cand.idx()] = true;
                let flow = self.morphisms(visit);
                self.used_mor[cand.idx()] = false;
                if flow.is_break() {
                    self.mor_map.pop();
                    return flow;
                }
            }
            self.mor_map.pop();
        }
        ControlFlow::Continue(())
    }
}

/// All functors `source -> target`, lexicographic in (object map, morphism map).
pub fn enumerate_functors(
    source: &Arc<FinCat>,
    target: &Arc<FinCat>,
    limits: &Limits,
) -> Result<Vec<Functor>> {
    let mut out = Vec::new();
    let mut overflow = false;
    let mut search = FunctorSearch::new(source, target, false);
    let _ = search.run(&mut |o, m| {
        if out.len() >= limits.max_objects {
            overflow = true;
            return ControlFlow::Break(());
        }
        out.push(Functor {
            source: source.clone(),
            target: target.clone(),
            obj_map: o.to_vec(),
            mor_map: m.to_vec(),
        });
        ControlFlow::Continue(())
    });
    if overflow {
        return Err(Error::SizeCapExceeded {
            stage: "functor enumeration".into(),
            detail: format!("more than {} functors", limits.max_objects),
        });
    }
    Ok(out)
}

/// Exhaustive isomorphism search; returns the first isomorphism found.
pub fn find_isomorphism(a: &Arc<FinCat>, b: &Arc<FinCat>) -> Option<Functor> {
    let mut found = None;
    let mut search = FunctorSearch::new(a, b, true);
    let _ = search.run(&mut |o, m| {
        found = Some(Functor {
            source: a.clone(),
            target: b.clone(),
            obj_map: o.to_vec(),
            mor_map: m.to_vec(),
        });
        ControlFlow::Break(())
    });
    found
}

/// All component families of natural transformations `f => g`, lexicographic.
pub fn enumerate_nat_trans(f: &Functor, g: &Functor) -> Result<Vec<Vec<Mor>>> {
    if !same_category(&f.source, &g.source) || !same_category(&f.target, &g.target) {
        return Err(Error::ShapeMismatch(
            "functors do not share source and target".into(),
        ));
    }
    let (s, t) = (&*f.source, &*f.target);
    let mut checks = vec![Vec::new(); s.object_count()];
    for a in s.morphisms() {
        checks[s.dom(a).max(s.cod(a)).idx()].push(a);
    }
    let mut out = Vec::new();
    let mut comps = Vec::with_capacity(s.object_count());
    fn go(
        s: &FinCat,
        t: &FinCat,
        f: &Functor,
        g: &Functor,
        checks: &[Vec<Mor>],
        comps: &mut Vec<Mor>,
        out: &mut Vec<Vec<Mor>>,
    ) {
        let x = comps.len();
        if x == s.object_count() {
            out.push(comps.clone());
            return;
        }
        for &c in t.hom(f.ob(ob(x)), g.ob(ob(x))) {
            comps.push(c);
            let ok = checks[x].iter().all(|&a| {
                let (i, j) = (s.dom(a), s.cod(a));
                t.composite(g.mor(a), comps[i.idx()]) == t.composite(comps[j.idx()], f.mor(a))
            });
            if ok {
                go(s, t, f, g, checks, comps, out);
            }
            comps.pop();
        }
    }
    go(s, t, f, g, &checks, &mut comps, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::product::product_category;

    fn arc(c: FinCat) -> Arc<FinCat> {
        Arc::new(c)
    }

    #[test]
    fn identity_functor_passes() {
        let c = arc(FinCat::chain(2).unwrap());
        assert_eq!(check_functor(&Functor::identity(&c)), Ok(()));
    }

    #[test]
    fn generator_to_identity_breaks_endpoints() {
        let c = arc(FinCat::chain(1).unwrap());
        let gen = c.find_morphism("0->1").unwrap();
        let mut mors: Vec<Mor> = c.morphisms().collect();
        mors[gen.idx()] = c.id(Ob(0));
        let f = Functor::new(c.clone(), c.clone(), c.objects().collect(), mors).unwrap();
        assert_eq!(check_functor(&f), Err(Violation::DomCod { mor: gen }));
    }

    #[test]
    fn projections_are_functors() {
        let c = arc(FinCat::chain(1).unwrap());
        let d = arc(FinCat::discrete(2).unwrap());
        let p = product_category(&c, &d, &Limits::default()).unwrap();
        assert_eq!(check_functor(&p.pr1), Ok(()));
        assert_eq!(check_functor(&p.pr2), Ok(()));
    }

    #[test]
    fn maps_must_be_total() {
        let c = arc(FinCat::chain(1).unwrap());
        let e = Functor::new(c.clone(), c.clone(), vec![Ob(0)], vec![]).unwrap_err();
        assert!(matches!(e, Error::SourceTargetMismatch(_)));
    }

    #[test]
    fn composition_with_identities() {
        let c = arc(FinCat::chain(2).unwrap());
        let fs = enumerate_functors(&c, &c, &Limits::default()).unwrap();
        let id = Functor::identity(&c);
        for f in &fs {
            assert_eq!(&compose_functors(f, &id).unwrap(), f);
            assert_eq!(&compose_functors(&id, f).unwrap(), f);
        }
    }

    #[test]
    fn compose_rejects_mismatch() {
        let a = arc(FinCat::chain(1).unwrap());
        let b = arc(FinCat::discrete(2).unwrap());
        let e = compose_functors(&Functor::identity(&a), &Functor::identity(&b)).unwrap_err();
        assert!(matches!(e, Error::SourceTargetMismatch(_)));
    }

    #[test]
    fn monotone_maps_of_arrow() {
        // functors [1] -> [1] are the three monotone maps
        let c = arc(FinCat::chain(1).unwrap());
        let fs = enumerate_functors(&c, &c, &Limits::default()).unwrap();
        let objs: Vec<Vec<Ob>> = fs.iter().map(|f| f.obj_map().to_vec()).collect();
        assert_eq!(
            objs,
            vec![vec![Ob(0), Ob(0)], vec![Ob(0), Ob(1)], vec![Ob(1), Ob(1)]]
        );
        assert!(fs.iter().all(|f| check_functor(f).is_ok()));
    }

    #[test]
    fn component_typing_reported() {
        let c = arc(FinCat::chain(1).unwrap());
        let id = Functor::identity(&c);
        let gen = c.find_morphism("0->1").unwrap();
        let top = Functor::constant(&c, &c, Ob(1));
        let good = NatTrans::new(id.clone(), top.clone(), vec![gen, c.id(Ob(1))]).unwrap();
        assert_eq!(check_nat_trans(&good), Ok(()));
        assert_eq!(check_nat_trans(&NatTrans::identity(&id)), Ok(()));
        let wrong = NatTrans::new(id, top, vec![c.id(Ob(0)), c.id(Ob(1))]).unwrap();
        assert_eq!(
            check_nat_trans(&wrong),
            Err(Violation::ComponentTyping { obj: Ob(0) })
        );
    }

    #[test]
    fn naturality_failure_reported() {
        let m = arc(FinCat::monoid(&[vec![0, 1], vec![1, 1]]).unwrap());
        let c = arc(FinCat::chain(1).unwrap());
        let gen = c.find_morphism("0->1").unwrap();
        let mut mors = vec![Mor(0); 3];
        mors[gen.idx()] = Mor(1);
        let f = Functor::new(c.clone(), m.clone(), vec![Ob(0), Ob(0)], mors).unwrap();
        assert_eq!(check_functor(&f), Ok(()));
        let g = Functor::constant(&c, &m, Ob(0));
        // F(gen) = z, G(gen) = 1: components (1, 1) give 1.1 vs 1.z
        let eta = NatTrans::new(f.clone(), g.clone(), vec![Mor(0), Mor(0)]).unwrap();
        assert_eq!(
            check_nat_trans(&eta),
            Err(Violation::Naturality { alpha: gen })
        );
        let fam = enumerate_nat_trans(&f, &g).unwrap();
        for comps in &fam {
            assert!(
                check_nat_trans(&NatTrans::new(f.clone(), g.clone(), comps.clone()).unwrap())
                    .is_ok()
            );
        }
        // the square forces the component at 0 to be z
        assert_eq!(fam, vec![vec![Mor(1), Mor(0)], vec![Mor(1), Mor(1)]]);
    }

    #[test]
    fn isomorphism_search() {
        let c = arc(FinCat::chain(2).unwrap());
        let op = arc(c.opposite());
        let iso = find_isomorphism(&c, &op).unwrap();
        assert!(iso.is_bijective());
        assert_eq!(check_functor(&iso), Ok(()));
        assert_eq!(iso.ob(Ob(0)), Ob(2));
        let d = arc(FinCat::discrete(3).unwrap());
        assert!(find_isomorphism(&c, &d).is_none());
    }

    #[test]
    fn inverse_composes_to_identity() {
        let c = arc(FinCat::chain(2).unwrap());
        let op = arc(c.opposite());
        let iso = find_isomorphism(&c, &op).unwrap();
        let inv = iso.inverse().unwrap();
        assert!(compose_functors(&inv, &iso).unwrap().is_identity());
        assert!(compose_functors(&iso, &inv).unwrap().is_identity());
    }
}
