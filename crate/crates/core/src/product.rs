use std::sync::Arc;

use crate::error::Result;
use crate::fincat::{mor, ob, FinCat, Limits, Mor, Ob};
use crate::functor::Functor;

/// `C x D` with its projections. Object `(a, b)` has index
/// `a * |obj D| + b`, morphism `(f, g)` has index `f * |mor D| + g`.
#[derive(Clone, Debug)]
pub struct Product {
    pub cat: Arc<FinCat>,
    pub left: Arc<FinCat>,
    pub right: Arc<FinCat>,
    pub pr1: Functor,
    pub pr2: Functor,
}

impl Product {
    pub fn pair_ob(&self, a: Ob, b: Ob) -> Ob {
        ob(a.idx() * self.right.object_count() + b.idx())
    }

    pub fn pair_mor(&self, f: Mor, g: Mor) -> Mor {
        mor(f.idx() * self.right.morphism_count() + g.idx())
    }

    pub fn split_ob(&self, x: Ob) -> (Ob, Ob) {
        let n = self.right.object_count();
        (ob(x.idx() / n), ob(x.idx() % n))
    }

    pub fn split_mor(&self, m: Mor) -> (Mor, Mor) {
        let n = self.right.morphism_count();
        (mor(m.idx() / n), mor(m.idx() % n))
    }
}

pub fn product_category(c: &Arc<FinCat>, d: &Arc<FinCat>, limits: &Limits) -> Result<Product> {
    let (no, nm) = (
        c.object_count() * d.object_count(),
        c.morphism_count() * d.morphism_count(),
    );
    limits.check("product", no, nm)?;
    let mut labels = Vec::with_capacity(no);
    for a in c.objects() {
        for b in d.objects() {
            labels.push(format!("({},{})", c.object_label(a), d.object_label(b)));
        }
    }
    let dn = d.object_count();
    let dm = d.morphism_count();
    let mut mors = Vec::with_capacity(nm);
    for f in c.morphisms() {
        for g in d.morphisms() {
            mors.push((
                ob(c.dom(f).idx() * dn + d.dom(g).idx()),
                ob(c.cod(f).idx() * dn + d.cod(g).idx()),
                format!("({},{})", c.morphism_label(f), d.morphism_label(g)),
            ));
        }
    }
    let ids = c
        .objects()
        .flat_map(|a| d.objects().map(move |b| (a, b)))
        .map(|(a, b)| mor(c.id(a).idx() * dm + d.id(b).idx()))
        .collect();
    let cat = Arc::new(FinCat::from_fn(labels, mors, ids, |x, y| {
        let (x1, x2) = (mor(x.idx() / dm), mor(x.idx() % dm));
        let (y1, y2) = (mor(y.idx() / dm), mor(y.idx() % dm));
        Some(mor(c.compose(x1, y1)?.idx() * dm + d.compose(x2, y2)?.idx()))
    })?);
    let pr1 = Functor::new(
        cat.clone(),
        c.clone(),
        cat.objects().map(|x| ob(x.idx() / dn)).collect(),
        cat.morphisms().map(|m| mor(m.idx() / dm)).collect(),
    )?;
    let pr2 = Functor::new(
        cat.clone(),
        d.clone(),
        cat.objects().map(|x| ob(x.idx() % dn)).collect(),
        cat.morphisms().map(|m| mor(m.idx() % dm)).collect(),
    )?;
    Ok(Product {
        cat,
        left: c.clone(),
        right: d.clone(),
        pr1,
        pr2,
    })
}
