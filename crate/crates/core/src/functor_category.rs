//! The functor category `HOM(I, D)`.

use std::sync::Arc;

use crate::error::Result;
use crate::fincat::{FinCat, Limits, Mor, Ob};
use crate::functor::{enumerate_functors, enumerate_nat_trans, Functor, NatTrans};
use crate::presented::{Builder, Presented};

type FunctorKey = (Vec<Ob>, Vec<Mor>);

/// `HOM(I, D)`: objects are all functors, morphisms all natural
/// transformations, composition is vertical.
#[derive(Clone, Debug)]
pub struct FunctorCategory {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    presented: Presented<FunctorKey, Vec<Mor>>,
}

impl FunctorCategory {
    pub fn cat(&self) -> &Arc<FinCat> {
        self.presented.cat()
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn functor(&self, x: Ob) -> Functor {
        let (o, m) = self.presented.object(x).clone();
        Functor::new(self.source.clone(), self.target.clone(), o, m)
            .expect("stored functor is well-shaped")
    }

    pub fn nat_trans(&self, m: Mor) -> NatTrans {
        let cat = self.cat();
        NatTrans::new(
            self.functor(cat.dom(m)),
            self.functor(cat.cod(m)),
            self.presented.morphism(m).clone(),
        )
        .expect("stored transformation is well-shaped")
    }

    /// Raw component family of a morphism.
    pub fn components(&self, m: Mor) -> &[Mor] {
        self.presented.morphism(m)
    }

    pub fn object_of(&self, f: &Functor) -> Option<Ob> {
        self.presented
            .object_of(&(f.obj_map().to_vec(), f.mor_map().to_vec()))
    }

    pub fn morphism_of(&self, eta: &NatTrans) -> Option<Mor> {
        let d = self.object_of(eta.from())?;
        let c = self.object_of(eta.to())?;
        self.presented.morphism_of(d, c, &eta.components().to_vec())
    }
}

pub fn functor_category(
    source: &Arc<FinCat>,
    target: &Arc<FinCat>,
    limits: &Limits,
) -> Result<FunctorCategory> {
    let functors = enumerate_functors(source, target, limits)?;
    let mut b: Builder<FunctorKey, Vec<Mor>> = Builder::new("functor category", limits);
    for f in &functors {
        b.add_object((f.obj_map().to_vec(), f.mor_map().to_vec()))?;
    }
    for (i, f) in functors.iter().enumerate() {
        for (j, g) in functors.iter().enumerate() {
            for comps in enumerate_nat_trans(f, g)? {
                b.add_morphism(Ob(i as u32), Ob(j as u32), comps)?;
            }
        }
    }
    let t = target.clone();
    let t2 = target.clone();
    let t3 = target.clone();
    let presented = b.finish(
        |(o, m)| {
            let objs: Vec<&str> = o.iter().map(|&x| t.object_label(x)).collect();
            let mors: Vec<&str> = m.iter().map(|&f| t.morphism_label(f)).collect();
            format!("<{}|{}>", objs.join(","), mors.join(","))
        },
        |c| {
            let parts: Vec<&str> = c.iter().map(|&f| t2.morphism_label(f)).collect();
            format!("[{}]", parts.join(","))
        },
        |(o, _)| o.iter().map(|&x| t3.id(x)).collect(),
        |g, f| {
            Some(
                g.iter()
                    .zip(f)
                    .map(|(&a, &b)| target.composite(a, b))
                    .collect(),
            )
        },
    )?;
    Ok(FunctorCategory {
        source: source.clone(),
        target: target.clone(),
        presented,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor::{check_functor, check_nat_trans, find_isomorphism};
    use crate::product::product_category;

    fn arc(c: FinCat) -> Arc<FinCat> {
        Arc::new(c)
    }

    #[test]
    fn over_terminal_is_target() {
        let t = arc(FinCat::terminal().unwrap());
        let d = arc(FinCat::chain(2).unwrap());
        let fc = functor_category(&t, &d, &Limits::default()).unwrap();
        assert!(find_isomorphism(fc.cat(), &d).is_some());
    }

    #[test]
    fn over_discrete_pair_is_square() {
        let two = arc(FinCat::discrete(2).unwrap());
        let d = arc(FinCat::chain(1).unwrap());
        let fc = functor_category(&two, &d, &Limits::default()).unwrap();
        let sq = product_category(&d, &d, &Limits::default()).unwrap();
        assert!(find_isomorphism(fc.cat(), &sq.cat).is_some());
    }

    #[test]
    fn arrow_to_arrow() {
        let a = arc(FinCat::chain(1).unwrap());
        let fc = functor_category(&a, &a, &Limits::default()).unwrap();
        assert_eq!(fc.cat().object_count(), 3);
        // brute force: every component pair checked by hand-rolled squares
        let mut expect = 0;
        for x in fc.cat().objects() {
            for y in fc.cat().objects() {
                let (f, g) = (fc.functor(x), fc.functor(y));
                for c0 in a.morphisms() {
                    for c1 in a.morphisms() {
                        if let Ok(eta) = NatTrans::new(f.clone(), g.clone(), vec![c0, c1]) {
                            if check_nat_trans(&eta).is_ok() {
                                expect += 1;
                            }
                        }
                    }
                }
                assert_eq!(
                    fc.cat().hom(x, y).len(),
                    enumerate_nat_trans(&f, &g).unwrap().len()
                );
            }
        }
        assert_eq!(fc.cat().morphism_count(), expect);
        // poset of the three monotone maps ordered pointwise: 0 <= id <= 1
        assert_eq!(expect, 6);
    }

    #[test]
    fn codec_roundtrip() {
        let a = arc(FinCat::chain(1).unwrap());
        let m = arc(FinCat::monoid(&[vec![0, 1], vec![1, 1]]).unwrap());
        let fc = functor_category(&a, &m, &Limits::default()).unwrap();
        for x in fc.cat().objects() {
            let f = fc.functor(x);
            assert!(check_functor(&f).is_ok());
            assert_eq!(fc.object_of(&f), Some(x));
        }
        for k in fc.cat().morphisms() {
            let eta = fc.nat_trans(k);
            assert!(check_nat_trans(&eta).is_ok());
            assert_eq!(fc.morphism_of(&eta), Some(k));
        }
    }

    #[test]
    fn power_of_discrete() {
        let three = arc(FinCat::discrete(3).unwrap());
        let d = arc(FinCat::chain(1).unwrap());
        let fc = functor_category(&three, &d, &Limits::default()).unwrap();
        assert_eq!(fc.cat().object_count(), 8);
    }
}
