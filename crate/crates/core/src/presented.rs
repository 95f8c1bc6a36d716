//! Categories whose objects and morphisms carry structured data, with a
//! codec between indices and that data.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{mor, ob, FinCat, Limits, Mor, Ob};

/// A finite category together with the data each object and morphism
/// stands for. Morphism data is keyed together with its endpoints.
#[derive(Clone, Debug)]
pub struct Presented<O, M> {
    cat: Arc<FinCat>,
    objects: Vec<O>,
    morphisms: Vec<M>,
    object_index: HashMap<O, Ob>,
    morphism_index: HashMap<(Ob, Ob, M), Mor>,
}

impl<O: Clone + Eq + Hash, M: Clone + Eq + Hash> Presented<O, M> {
    pub fn cat(&self) -> &Arc<FinCat> {
        &self.cat
    }

    pub fn object(&self, x: Ob) -> &O {
        &self.objects[x.idx()]
    }

    pub fn morphism(&self, f: Mor) -> &M {
        &self.morphisms[f.idx()]
    }

    pub fn objects(&self) -> &[O] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[M] {
        &self.morphisms
    }

    pub fn object_of(&self, o: &O) -> Option<Ob> {
        self.object_index.get(o).copied()
    }

    pub fn morphism_of(&self, dom: Ob, cod: Ob, m: &M) -> Option<Mor> {
        self.morphism_index.get(&(dom, cod, m.clone())).copied()
    }
}

pub(crate) struct Builder<O, M> {
    stage: &'static str,
    limits: Limits,
    objects: Vec<O>,
    object_index: HashMap<O, Ob>,
    morphisms: Vec<(Ob, Ob, M)>,
    morphism_index: HashMap<(Ob, Ob, M), Mor>,
}

impl<O: Clone + Eq + Hash, M: Clone + Eq + Hash> Builder<O, M> {
    pub(crate) fn new(stage: &'static str, limits: &Limits) -> Self {
        Builder {
            stage,
            limits: *limits,
            objects: Vec::new(),
            object_index: HashMap::new(),
            morphisms: Vec::new(),
            morphism_index: HashMap::new(),
        }
    }

    pub(crate) fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub(crate) fn object(&self, x: Ob) -> &O {
        &self.objects[x.idx()]
    }

    pub(crate) fn add_object(&mut self, o: O) -> Result<Ob> {
        let x = ob(self.objects.len());
        if self.object_index.insert(o.clone(), x).is_some() {
            return Err(Error::ConstructionMismatch(format!(
                "{}: duplicate object",
                self.stage
            )));
        }
        self.objects.push(o);
        self.limits
            .check(self.stage, self.objects.len(), self.morphisms.len())?;
        Ok(x)
    }

    pub(crate) fn add_morphism(&mut self, dom: Ob, cod: Ob, m: M) -> Result<Mor> {
        let f = mor(self.morphisms.len());
        if self
            .morphism_index
            .insert((dom, cod, m.clone()), f)
            .is_some()
        {
            return Err(Error::ConstructionMismatch(format!(
                "{}: duplicate morphism",
                self.stage
            )));
        }
        self.morphisms.push((dom, cod, m));
        self.limits
            .check(self.stage, self.objects.len(), self.morphisms.len())?;
        Ok(f)
    }

    /// Assembles and validates the category. `compose(g, f)` returns the data
    /// of `g . f`, which must already be a registered morphism.
    pub(crate) fn finish(
        self,
        object_label: impl Fn(&O) -> String,
        morphism_label: impl Fn(&M) -> String,
        identity: impl Fn(&O) -> M,
        compose: impl Fn(&M, &M) -> Option<M>,
    ) -> Result<Presented<O, M>> {
        let Builder {
            stage,
            objects,
            object_index,
            morphisms,
            morphism_index,
            ..
        } = self;
        let mut ids = Vec::with_capacity(objects.len());
        for (i, o) in objects.iter().enumerate() {
            let x = ob(i);
            let m = morphism_index
                .get(&(x, x, identity(o)))
                .copied()
                .ok_or_else(|| Error::ConstructionMismatch(format!("{stage}: identity missing")))?;
            ids.push(m);
        }
        let labels = objects.iter().map(&object_label).collect();
        let mors = morphisms
            .iter()
            .map(|(d, c, m)| (*d, *c, morphism_label(m)))
            .collect();
        let cat = FinCat::from_fn(labels, mors, ids, |g, f| {
            let (_, gc, gm) = &morphisms[g.idx()];
            let (fd, _, fm) = &morphisms[f.idx()];
            let gf = compose(gm, fm)?;
            morphism_index.get(&(*fd, *gc, gf)).copied()
        })?;
        Ok(Presented {
            cat: Arc::new(cat),
            objects,
            morphisms: morphisms.into_iter().map(|(_, _, m)| m).collect(),
            object_index,
            morphism_index,
        })
    }
}
