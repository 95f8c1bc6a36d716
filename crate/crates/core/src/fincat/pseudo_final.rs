use serde::{Deserialize, Serialize};

use super::{FinCat, Mor, Ob};
use crate::error::{Error, Result};

/// An object `e` with a natural map from the identity functor to the
/// constant functor at `e`: one `eps[i]: i -> e` per object, with
/// `eps[cod a] . a = eps[dom a]` for every morphism `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoFinal {
    pub e: Ob,
    pub eps: Vec<Mor>,
}

impl PseudoFinal {
    /// Checks typing and naturality against every morphism of `cat`.
    pub fn verify(&self, cat: &FinCat) -> Result<()> {
        if self.e.idx() >= cat.object_count() || self.eps.len() != cat.object_count() {
            return Err(Error::NotPseudoFinal(
                "shape does not match the category".into(),
            ));
        }
        for x in cat.objects() {
            let m = self.eps[x.idx()];
            if m.idx() >= cat.morphism_count() || cat.dom(m) != x || cat.cod(m) != self.e {
                return Err(Error::NotPseudoFinal(format!(
                    "component at {} is not a map into {}",
                    cat.object_label(x),
                    cat.object_label(self.e)
                )));
            }
        }
        for a in cat.morphisms() {
            if cat.composite(self.eps[cat.cod(a).idx()], a) != self.eps[cat.dom(a).idx()] {
                return Err(Error::NotPseudoFinal(format!(
                    "naturality fails at {}",
                    cat.morphism_label(a)
                )));
            }
        }
        Ok(())
    }
}

/// Every pseudo-final structure on `cat`, ordered by `e` and then
/// lexicographically by the components.
pub fn find_pseudo_finals(cat: &FinCat) -> Vec<PseudoFinal> {
    let n = cat.object_count();
    // morphisms whose later endpoint (in object order) is x
    let mut checks: Vec<Vec<Mor>> = vec![Vec::new(); n];
    for a in cat.morphisms() {
        let last = cat.dom(a).max(cat.cod(a));
        checks[last.idx()].push(a);
    }
    let mut out = Vec::new();
    for e in cat.objects() {
        let mut eps = Vec::with_capacity(n);
        search(cat, e, &checks, &mut eps, &mut out);
    }
    out
}

fn search(
    cat: &FinCat,
    e: Ob,
    checks: &[Vec<Mor>],
    eps: &mut Vec<Mor>,
    out: &mut Vec<PseudoFinal>,
) {
    let x = eps.len();
    if x == cat.object_count() {
        out.push(PseudoFinal {
            e,
            eps: eps.clone(),
        });
        return;
    }
    for &m in cat.hom(Ob(x as u32), e) {
        eps.push(m);
        let ok = checks[x]
            .iter()
            .all(|&a| cat.composite(eps[cat.cod(a).idx()], a) == eps[cat.dom(a).idx()]);
        if ok {
            search(cat, e, checks, eps, out);
        }
        eps.pop();
    }
}
