//! Strict diagrams of finite categories and strict maps between them.

mod raw;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{FinCat, Limits, Mor, Ob};
use crate::functor::{check_functor, compose_functors, same_category, Functor, Violation};
use crate::product::{product_category, Product};

pub use raw::{
    bidiagram_from_raw, diagram_from_raw, load_bidiagram, load_diagram, CategoryRef, RawBiDiagram,
    RawBiTransport, RawDiagram, RawFunctorMap, RawTransport,
};

/// A strict functor `I -> CAT`: one fiber per object of the index and one
/// transport functor per morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatDiagram {
    index: Arc<FinCat>,
    fibers: Vec<Arc<FinCat>>,
    transports: Vec<Functor>,
}

/// Checks fiber typing and strict functoriality of the transports.
pub fn validate_diagram(
    index: Arc<FinCat>,
    fibers: Vec<Arc<FinCat>>,
    transports: Vec<Functor>,
) -> Result<CatDiagram> {
    if fibers.len() != index.object_count() {
        return Err(Error::FiberMismatch(format!(
            "{} fibers for {} index objects",
            fibers.len(),
            index.object_count()
        )));
    }
    if transports.len() != index.morphism_count() {
        return Err(Error::FiberMismatch(format!(
            "{} transports for {} index morphisms",
            transports.len(),
            index.morphism_count()
        )));
    }
    for a in index.morphisms() {
        let t = &transports[a.idx()];
        if !same_category(t.source(), &fibers[index.dom(a).idx()])
            || !same_category(t.target(), &fibers[index.cod(a).idx()])
        {
            return Err(Error::FiberMismatch(format!(
                "transport at {} does not run between its fibers",
                index.morphism_label(a)
            )));
        }
        if let Err(v) = check_functor(t) {
            return Err(Error::FiberMismatch(format!(
                "transport at {} is not a functor: {v}",
                index.morphism_label(a)
            )));
        }
    }
    for x in index.objects() {
        if !transports[index.id(x).idx()].is_identity() {
            let l = index.morphism_label(index.id(x)).to_string();
            return Err(Error::FunctorialityViolation {
                alpha: l.clone(),
                beta: l,
            });
        }
    }
    for (b, a) in index.composable_pairs() {
        let ba = &transports[index.composite(b, a).idx()];
        let composed = compose_functors(&transports[b.idx()], &transports[a.idx()])?;
        if *ba != composed {
            return Err(Error::FunctorialityViolation {
                alpha: index.morphism_label(a).to_string(),
                beta: index.morphism_label(b).to_string(),
            });
        }
    }
    Ok(CatDiagram {
        index,
        fibers,
        transports,
    })
}

impl CatDiagram {
    pub fn new(
        index: Arc<FinCat>,
        fibers: Vec<Arc<FinCat>>,
        transports: Vec<Functor>,
    ) -> Result<CatDiagram> {
        validate_diagram(index, fibers, transports)
    }

    /// Every fiber is `c`, every transport the identity.
    pub fn constant(index: &Arc<FinCat>, c: &Arc<FinCat>) -> CatDiagram {
        let id = Functor::identity(c);
        CatDiagram {
            index: index.clone(),
            fibers: vec![c.clone(); index.object_count()],
            transports: vec![id; index.morphism_count()],
        }
    }

    pub fn index(&self) -> &Arc<FinCat> {
        &self.index
    }

    pub fn fiber(&self, i: Ob) -> &Arc<FinCat> {
        &self.fibers[i.idx()]
    }

    pub fn fibers(&self) -> &[Arc<FinCat>] {
        &self.fibers
    }

    pub fn transport(&self, a: Mor) -> &Functor {
        &self.transports[a.idx()]
    }

    pub fn transports(&self) -> &[Functor] {
        &self.transports
    }
}

/// Components t_i: D_i -> D'_i with strict squares against the transports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramMap {
    from: Arc<CatDiagram>,
    to: Arc<CatDiagram>,
    components: Vec<Functor>,
}

/// Which part of a diagram map fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapViolation {
    Component { obj: Ob, violation: Violation },
    Square { alpha: Mor },
}

impl std::fmt::Display for MapViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MapViolation::Component { obj, violation } => {
                write!(f, "component at {obj}: {violation}")
            }
            MapViolation::Square { alpha } => write!(f, "square at {alpha} does not commute"),
        }
    }
}

impl DiagramMap {
    /// Checks shapes only; see [`check_diagram_map`] for the laws.
    pub fn new(
        from: Arc<CatDiagram>,
        to: Arc<CatDiagram>,
        components: Vec<Functor>,
    ) -> Result<DiagramMap> {
        if !same_category(&from.index, &to.index) {
            return Err(Error::ShapeMismatch(
                "diagrams have different index categories".into(),
            ));
        }
        if components.len() != from.index.object_count() {
            return Err(Error::ShapeMismatch(
                "one component per index object required".into(),
            ));
        }
        for (i, c) in components.iter().enumerate() {
            if !same_category(c.source(), &from.fibers[i])
                || !same_category(c.target(), &to.fibers[i])
            {
                return Err(Error::ShapeMismatch(format!(
                    "component {i} does not run between the fibers"
                )));
            }
        }
        Ok(DiagramMap {
            from,
            to,
            components,
        })
    }

    pub fn identity(d: &Arc<CatDiagram>) -> DiagramMap {
        DiagramMap {
            from: d.clone(),
            to: d.clone(),
            components: d.fibers.iter().map(Functor::identity).collect(),
        }
    }

    /// `self . t`.
    pub fn compose(&self, t: &DiagramMap) -> Result<DiagramMap> {
        if *t.to != *self.from {
            return Err(Error::ShapeMismatch(
                "diagram maps are not composable".into(),
            ));
        }
        let components = self
            .components
            .iter()
            .zip(&t.components)
            .map(|(s, t)| compose_functors(s, t))
            .collect::<Result<_>>()?;
        Ok(DiagramMap {
            from: t.from.clone(),
            to: self.to.clone(),
            components,
        })
    }

    pub fn from(&self) -> &Arc<CatDiagram> {
        &self.from
    }

    pub fn to(&self) -> &Arc<CatDiagram> {
        &self.to
    }

    pub fn component(&self, i: Ob) -> &Functor {
        &self.components[i.idx()]
    }

    pub fn components(&self) -> &[Functor] {
        &self.components
    }
}

/// Functor laws for every component, then every strict square
/// `t_{i'} . D(a) = D'(a) . t_i`.
pub fn check_diagram_map(t: &DiagramMap) -> std::result::Result<(), MapViolation> {
    let index = &t.from.index;
    for i in index.objects() {
        check_functor(t.component(i))
            .map_err(|violation| MapViolation::Component { obj: i, violation })?;
    }
    for a in index.morphisms() {
        let left = compose_functors(t.component(index.cod(a)), t.from.transport(a));
        let right = compose_functors(t.to.transport(a), t.component(index.dom(a)));
        match (left, right) {
            (Ok(l), Ok(r)) if l == r => {}
            _ => return Err(MapViolation::Square { alpha: a }),
        }
    }
    Ok(())
}

/// A diagram indexed by `I x J`.
#[derive(Clone, Debug)]
pub struct BiDiagram {
    product: Product,
    underlying: CatDiagram,
}

/// Which variable to hold fixed when currying.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Curry {
    /// `j |-> C(i, j)` over `J`, transports `C(id_i, b)`.
    FixI(Ob),
    /// `i |-> C(i, j)` over `I`, transports `C(a, id_j)`.
    FixJ(Ob),
}

impl BiDiagram {
    /// Wraps a diagram whose index is the product `I x J`.
    pub fn new(product: Product, underlying: CatDiagram) -> Result<BiDiagram> {
        if !same_category(&product.cat, &underlying.index) {
            return Err(Error::ShapeMismatch(
                "diagram is not indexed by I x J".into(),
            ));
        }
        Ok(BiDiagram {
            product,
            underlying,
        })
    }

    /// Builds from fibers `fibers[i][j]` and a transport for every product
    /// morphism `(a, b)`.
    pub fn from_parts(
        i_cat: &Arc<FinCat>,
        j_cat: &Arc<FinCat>,
        fibers: Vec<Vec<Arc<FinCat>>>,
        mut transport: impl FnMut(Mor, Mor) -> Result<Functor>,
        limits: &Limits,
    ) -> Result<BiDiagram> {
        let product = product_category(i_cat, j_cat, limits)?;
        if fibers.len() != i_cat.object_count()
            || fibers.iter().any(|r| r.len() != j_cat.object_count())
        {
            return Err(Error::FiberMismatch(
                "fiber grid does not match I x J".into(),
            ));
        }
        let flat: Vec<Arc<FinCat>> = fibers.into_iter().flatten().collect();
        let mut transports = Vec::with_capacity(product.cat.morphism_count());
        for m in product.cat.morphisms() {
            let (a, b) = product.split_mor(m);
            transports.push(transport(a, b)?);
        }
        let underlying = CatDiagram::new(product.cat.clone(), flat, transports)?;
        BiDiagram::new(product, underlying)
    }

    pub fn i_cat(&self) -> &Arc<FinCat> {
        &self.product.left
    }

    pub fn j_cat(&self) -> &Arc<FinCat> {
        &self.product.right
    }

    pub fn product(&self) -> &Product {
        &self.product
    }

    pub fn underlying(&self) -> &CatDiagram {
        &self.underlying
    }

    pub fn fiber(&self, i: Ob, j: Ob) -> &Arc<FinCat> {
        self.underlying.fiber(self.product.pair_ob(i, j))
    }

    pub fn transport(&self, a: Mor, b: Mor) -> &Functor {
        self.underlying.transport(self.product.pair_mor(a, b))
    }

    pub fn curry(&self, which: Curry) -> Result<CatDiagram> {
        let (ic, jc) = (self.i_cat(), self.j_cat());
        match which {
            Curry::FixI(i) => {
                if i.idx() >= ic.object_count() {
                    return Err(Error::IndexOutOfRange(format!("row {i}")));
                }
                let fibers = jc.objects().map(|j| self.fiber(i, j).clone()).collect();
                let transports = jc
                    .morphisms()
                    .map(|b| self.transport(ic.id(i), b).clone())
                    .collect();
                CatDiagram::new(jc.clone(), fibers, transports)
            }
            Curry::FixJ(j) => {
                if j.idx() >= jc.object_count() {
                    return Err(Error::IndexOutOfRange(format!("column {j}")));
                }
                let fibers = ic.objects().map(|i| self.fiber(i, j).clone()).collect();
                let transports = ic
                    .morphisms()
                    .map(|a| self.transport(a, jc.id(j)).clone())
                    .collect();
                CatDiagram::new(ic.clone(), fibers, transports)
            }
        }
    }

    /// The map `C(a, -)` between curried diagrams over `J`, for `a: i -> i'`.
    pub fn row_map(
        &self,
        a: Mor,
        from: &Arc<CatDiagram>,
        to: &Arc<CatDiagram>,
    ) -> Result<DiagramMap> {
        let jc = self.j_cat();
        let comps = jc
            .objects()
            .map(|j| self.transport(a, jc.id(j)).clone())
            .collect();
        DiagramMap::new(from.clone(), to.clone(), comps)
    }

    /// The map `C(-, b)` between curried diagrams over `I`, for `b: j -> j'`.
    pub fn column_map(
        &self,
        b: Mor,
        from: &Arc<CatDiagram>,
        to: &Arc<CatDiagram>,
    ) -> Result<DiagramMap> {
        let ic = self.i_cat();
        let comps = ic
            .objects()
            .map(|i| self.transport(ic.id(i), b).clone())
            .collect();
        DiagramMap::new(from.clone(), to.clone(), comps)
    }
}
