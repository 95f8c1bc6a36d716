//! Finite categories presented by a composition table.
//!
//! Morphisms are indexed globally and carry their own domain and codomain.
//! Composition is stored densely over composable pairs only: for every `g`
//! there is one slot per morphism ending at `dom g`, so lookup is O(1) and
//! memory is exactly the number of composable pairs.

mod pseudo_final;
mod raw;
mod standard;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use pseudo_final::{find_pseudo_finals, PseudoFinal};
pub(crate) use raw::unique_names;
pub use raw::{validate_category, RawCategory, RawMorphism};
pub use standard::{standard_category, Standard};

/// Index of an object.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ob(pub u32);

/// Index of a morphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mor(pub u32);

impl Ob {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl Mor {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Ob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "o{}", self.0)
    }
}

impl fmt::Display for Mor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.0)
    }
}

pub(crate) fn ob(i: usize) -> Ob {
    Ob(u32::try_from(i).expect("object index fits in u32"))
}

pub(crate) fn mor(i: usize) -> Mor {
    Mor(u32::try_from(i).expect("morphism index fits in u32"))
}

/// Size caps applied to every construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_objects: usize,
    pub max_morphisms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_objects: 64,
            max_morphisms: 512,
        }
    }
}

impl Limits {
    pub fn new(max_objects: usize, max_morphisms: usize) -> Self {
        Limits {
            max_objects,
            max_morphisms,
        }
    }

    pub fn check(&self, stage: &str, objects: usize, morphisms: usize) -> Result<()> {
        if objects > self.max_objects {
            return Err(Error::SizeCapExceeded {
                stage: stage.to_string(),
                detail: format!("{objects} objects > cap {}", self.max_objects),
            });
        }
        if morphisms > self.max_morphisms {
            return Err(Error::SizeCapExceeded {
                stage: stage.to_string(),
                detail: format!("{morphisms} morphisms > cap {}", self.max_morphisms),
            });
        }
        Ok(())
    }
}

/// A validated finite category.
///
/// Values are immutable once built; every constructor runs the full law
/// check (identities and associativity) before returning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    object_labels: Vec<String>,
    morphism_labels: Vec<String>,
    ends: Vec<(Ob, Ob)>,
    identities: Vec<Mor>,
    incoming: Vec<Vec<Mor>>,
    // sorted by (cod, index) so that hom-sets are contiguous runs
    outgoing: Vec<Vec<Mor>>,
    in_pos: Vec<u32>,
    offsets: Vec<usize>,
    table: Vec<Mor>,
}

impl FinCat {
    /// Builds a category from its morphism list and a composition oracle,
    /// then validates it. `compose(g, f)` is queried exactly once for every
    /// pair with `cod f = dom g`.
    pub fn from_fn(
        object_labels: Vec<String>,
        morphisms: Vec<(Ob, Ob, String)>,
        identities: Vec<Mor>,
        compose: impl FnMut(Mor, Mor) -> Option<Mor>,
    ) -> Result<FinCat> {
        let cat = Self::assemble(object_labels, morphisms, identities, compose)?;
        cat.validate()?;
        Ok(cat)
    }

    fn assemble(
        object_labels: Vec<String>,
        morphisms: Vec<(Ob, Ob, String)>,
        identities: Vec<Mor>,
        mut compose: impl FnMut(Mor, Mor) -> Option<Mor>,
    ) -> Result<FinCat> {
        let n_obj = object_labels.len();
        let n_mor = morphisms.len();
        if identities.len() != n_obj {
            return Err(Error::DanglingIndex(format!(
                "{} identities for {} objects",
                identities.len(),
                n_obj
            )));
        }
        let mut ends = Vec::with_capacity(n_mor);
        let mut morphism_labels = Vec::with_capacity(n_mor);
        for (d, c, label) in morphisms {
            if d.idx() >= n_obj || c.idx() >= n_obj {
                return Err(Error::DanglingIndex(format!(
                    "morphism {label} has an endpoint out of range"
                )));
            }
            ends.push((d, c));
            morphism_labels.push(label);
        }
        for (x, &m) in identities.iter().enumerate() {
            if m.idx() >= n_mor {
                return Err(Error::DanglingIndex(format!(
                    "identity of object {x} is out of range"
                )));
            }
            if ends[m.idx()] != (ob(x), ob(x)) {
                return Err(Error::IdentityViolation {
                    f: morphism_labels[m.idx()].clone(),
                });
            }
        }
        let mut incoming = vec![Vec::new(); n_obj];
        let mut outgoing = vec![Vec::new(); n_obj];
        let mut in_pos = vec![0u32; n_mor];
        for (i, &(d, c)) in ends.iter().enumerate() {
            in_pos[i] = incoming[c.idx()].len() as u32;
            incoming[c.idx()].push(mor(i));
            outgoing[d.idx()].push(mor(i));
        }
        for out in &mut outgoing {
            out.sort_by_key(|m| (ends[m.idx()].1, *m));
        }
        let mut offsets = Vec::with_capacity(n_mor + 1);
        let mut total = 0usize;
        for &(d, _) in &ends {
            offsets.push(total);
            total += incoming[d.idx()].len();
        }
        offsets.push(total);
        let mut table = Vec::with_capacity(total);
        for g in 0..n_mor {
            let (gd, gc) = ends[g];
            for &f in &incoming[gd.idx()] {
                let gf = compose(mor(g), f).ok_or_else(|| Error::MissingComposite {
                    g: morphism_labels[g].clone(),
                    f: morphism_labels[f.idx()].clone(),
                })?;
                if gf.idx() >= n_mor {
                    return Err(Error::DanglingIndex(format!(
                        "composite of {} . {} is out of range",
                        morphism_labels[g],
                        morphism_labels[f.idx()]
                    )));
                }
                if ends[gf.idx()] != (ends[f.idx()].0, gc) {
                    return Err(Error::CompositeTyping {
                        g: morphism_labels[g].clone(),
                        f: morphism_labels[f.idx()].clone(),
                        gf: morphism_labels[gf.idx()].clone(),
                    });
                }
                table.push(gf);
            }
        }
        Ok(FinCat {
            object_labels,
            morphism_labels,
            ends,
            identities,
            incoming,
            outgoing,
            in_pos,
            offsets,
            table,
        })
    }

    /// Exhaustive check of the identity and associativity laws.
    pub fn validate(&self) -> Result<()> {
        for f in self.morphisms() {
            let (d, c) = self.ends[f.idx()];
            if self.compose(self.id(c), f) != Some(f) || self.compose(f, self.id(d)) != Some(f) {
                return Err(Error::IdentityViolation {
                    f: self.morphism_label(f).to_string(),
                });
            }
        }
        for f in self.morphisms() {
            let mid = self.cod(f);
            for &g in &self.outgoing[mid.idx()] {
                let gf = self.composite(g, f);
                for &h in &self.outgoing[self.cod(g).idx()] {
                    let hg = self.composite(h, g);
                    if self.composite(h, gf) != self.composite(hg, f) {
                        return Err(Error::AssociativityViolation {
                            h: self.morphism_label(h).to_string(),
                            g: self.morphism_label(g).to_string(),
                            f: self.morphism_label(f).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.object_labels.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.ends.len()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = Ob> + Clone {
        (0..self.object_count()).map(ob)
    }

    pub fn morphisms(&self) -> impl ExactSizeIterator<Item = Mor> + Clone {
        (0..self.morphism_count()).map(mor)
    }

    #[inline]
    pub fn dom(&self, f: Mor) -> Ob {
        self.ends[f.idx()].0
    }

    #[inline]
    pub fn cod(&self, f: Mor) -> Ob {
        self.ends[f.idx()].1
    }

    #[inline]
    pub fn id(&self, x: Ob) -> Mor {
        self.identities[x.idx()]
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        let (d, c) = self.ends[f.idx()];
        d == c && self.identities[d.idx()] == f
    }

    /// `g . f`, defined exactly when `cod f = dom g`.
    #[inline]
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        if self.cod(f) != self.dom(g) {
            return None;
        }
        Some(self.table[self.offsets[g.idx()] + self.in_pos[f.idx()] as usize])
    }

    /// `g . f` for a pair the caller knows is composable.
    #[inline]
    pub fn composite(&self, g: Mor, f: Mor) -> Mor {
        debug_assert_eq!(self.cod(f), self.dom(g));
        self.table[self.offsets[g.idx()] + self.in_pos[f.idx()] as usize]
    }

    /// Morphisms `a -> b` in declaration order.
    pub fn hom(&self, a: Ob, b: Ob) -> &[Mor] {
        let out = &self.outgoing[a.idx()];
        let lo = out.partition_point(|m| self.cod(*m) < b);
        let hi = lo + out[lo..].partition_point(|m| self.cod(*m) <= b);
        &out[lo..hi]
    }

    /// Range-checked variant of [`FinCat::hom`].
    pub fn hom_set(&self, a: Ob, b: Ob) -> Result<&[Mor]> {
        let n = self.object_count();
        if a.idx() >= n || b.idx() >= n {
            return Err(Error::IndexOutOfRange(format!(
                "hom({a}, {b}) in a category with {n} objects"
            )));
        }
        Ok(self.hom(a, b))
    }

    /// Morphisms with codomain `b`, in declaration order.
    pub fn incoming(&self, b: Ob) -> &[Mor] {
        &self.incoming[b.idx()]
    }

    /// Morphisms with domain `a`, grouped by codomain.
    pub fn outgoing(&self, a: Ob) -> &[Mor] {
        &self.outgoing[a.idx()]
    }

    /// All composable pairs `(g, f)` with `cod f = dom g`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (Mor, Mor)> + '_ {
        self.morphisms().flat_map(move |g| {
            self.incoming[self.dom(g).idx()]
                .iter()
                .map(move |&f| (g, f))
        })
    }

    pub fn object_label(&self, x: Ob) -> &str {
        &self.object_labels[x.idx()]
    }

    pub fn morphism_label(&self, f: Mor) -> &str {
        &self.morphism_labels[f.idx()]
    }

    pub fn object_labels(&self) -> &[String] {
        &self.object_labels
    }

    pub fn morphism_labels(&self) -> &[String] {
        &self.morphism_labels
    }

    pub fn find_object(&self, label: &str) -> Option<Ob> {
        self.object_labels.iter().position(|l| l == label).map(ob)
    }

    pub fn find_morphism(&self, label: &str) -> Option<Mor> {
        self.morphism_labels
            .iter()
            .position(|l| l == label)
            .map(mor)
    }

    /// Structural equality ignoring labels.
    pub fn same_shape(&self, other: &FinCat) -> bool {
        self.object_count() == other.object_count()
            && self.ends == other.ends
            && self.identities == other.identities
            && self.table == other.table
    }

    /// Copy of this category with new labels. Lengths must match.
    pub fn relabeled(
        &self,
        object_labels: Vec<String>,
        morphism_labels: Vec<String>,
    ) -> Result<FinCat> {
        if object_labels.len() != self.object_count()
            || morphism_labels.len() != self.morphism_count()
        {
            return Err(Error::InvalidParameter(
                "label count does not match the category".into(),
            ));
        }
        let mut out = self.clone();
        out.object_labels = object_labels;
        out.morphism_labels = morphism_labels;
        Ok(out)
    }

    /// The subcategory on the given objects and morphisms, in the given
    /// order. Fails if the selection is not closed under identities and
    /// composition.
    pub fn subcategory(&self, objects: &[Ob], morphisms: &[Mor]) -> Result<FinCat> {
        let mut obj_pos = vec![u32::MAX; self.object_count()];
        for (k, &x) in objects.iter().enumerate() {
            obj_pos[x.idx()] = k as u32;
        }
        let mut mor_pos = vec![u32::MAX; self.morphism_count()];
        for (k, &f) in morphisms.iter().enumerate() {
            mor_pos[f.idx()] = k as u32;
        }
        let mut mors = Vec::with_capacity(morphisms.len());
        for &f in morphisms {
            let (d, c) = self.ends[f.idx()];
            if obj_pos[d.idx()] == u32::MAX || obj_pos[c.idx()] == u32::MAX {
                return Err(Error::DanglingIndex(format!(
                    "morphism {} leaves the selected objects",
                    self.morphism_label(f)
                )));
            }
            mors.push((
                Ob(obj_pos[d.idx()]),
                Ob(obj_pos[c.idx()]),
                self.morphism_label(f).to_string(),
            ));
        }
        let mut ids = Vec::with_capacity(objects.len());
        for &x in objects {
            let m = mor_pos[self.id(x).idx()];
            if m == u32::MAX {
                return Err(Error::IdentityViolation {
                    f: self.morphism_label(self.id(x)).to_string(),
                });
            }
            ids.push(Mor(m));
        }
        let labels = objects
            .iter()
            .map(|&x| self.object_label(x).to_string())
            .collect();
        FinCat::from_fn(labels, mors, ids, |g, f| {
            let gf = self.compose(morphisms[g.idx()], morphisms[f.idx()])?;
            let k = mor_pos[gf.idx()];
            (k != u32::MAX).then_some(Mor(k))
        })
    }
}
