//! JSON formats for diagrams and bidiagrams.
//!
//! Categories are given inline or as a path (relative to the diagram file).
//! Transports are listed for generating morphisms only; identities and
//! composites are filled in and the result is validated.
//!
//! ```json
//! {"index": "tower.json",
//!  "fibers": [{"objects": ["0", "1"]}, {"objects": ["0"]}],
//!  "transports": [{"morphism": "f", "objects": {"0": "0", "1": "0"}}]}
//! ```
//!
//! A bidiagram lists `I`, `J`, a grid `fibers[i][j]` and transports keyed by
//! a pair of morphism names `{"i": ..., "j": ...}`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{BiDiagram, CatDiagram};
use crate::error::{Error, Result};
use crate::fincat::{unique_names, validate_category, FinCat, Limits, Mor, Ob, RawCategory};
use crate::functor::{compose_functors, Functor};
use crate::product::product_category;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategoryRef {
    Path(String),
    Inline(RawCategory),
}

/// Object and morphism assignments by name. Identity morphisms may be omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFunctorMap {
    pub objects: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawTransport {
    pub morphism: String,
    #[serde(flatten)]
    pub map: RawFunctorMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDiagram {
    pub index: CategoryRef,
    pub fibers: Vec<CategoryRef>,
    #[serde(default)]
    pub transports: Vec<RawTransport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawBiTransport {
    pub i: String,
    pub j: String,
    #[serde(flatten)]
    pub map: RawFunctorMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawBiDiagram {
    #[serde(rename = "I")]
    pub i: CategoryRef,
    #[serde(rename = "J")]
    pub j: CategoryRef,
    pub fibers: Vec<Vec<CategoryRef>>,
    #[serde(default)]
    pub transports: Vec<RawBiTransport>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn resolve(r: &CategoryRef, base: Option<&Path>) -> Result<Arc<FinCat>> {
    let raw = match r {
        CategoryRef::Inline(raw) => raw.clone(),
        CategoryRef::Path(p) => {
            let path: PathBuf = match base {
                Some(b) => b.join(p),
                None => PathBuf::from(p),
            };
            read_json(&path)?
        }
    };
    Ok(Arc::new(validate_category(&raw)?))
}

fn functor_from_names(
    src: &Arc<FinCat>,
    tgt: &Arc<FinCat>,
    map: &RawFunctorMap,
    what: &str,
) -> Result<Functor> {
    let obj = |n: &str, c: &FinCat| {
        c.find_object(n)
            .ok_or_else(|| Error::DanglingIndex(format!("{what}: unknown object {n}")))
    };
    let morph = |n: &str, c: &FinCat| {
        c.find_morphism(n)
            .ok_or_else(|| Error::DanglingIndex(format!("{what}: unknown morphism {n}")))
    };
    for k in map.objects.keys() {
        obj(k, src)?;
    }
    for k in map.morphisms.keys() {
        morph(k, src)?;
    }
    let obj_map = src
        .objects()
        .map(|x| {
            let name = map.objects.get(src.object_label(x)).ok_or_else(|| {
                Error::DanglingIndex(format!(
                    "{what}: object {} is not mapped",
                    src.object_label(x)
                ))
            })?;
            obj(name, tgt)
        })
        .collect::<Result<Vec<Ob>>>()?;
    let mor_map = src
        .morphisms()
        .map(|m| match map.morphisms.get(src.morphism_label(m)) {
            Some(name) => morph(name, tgt),
            None if src.is_identity(m) => Ok(tgt.id(obj_map[src.dom(m).idx()])),
            None => Err(Error::DanglingIndex(format!(
                "{what}: morphism {} is not mapped",
                src.morphism_label(m)
            ))),
        })
        .collect::<Result<Vec<Mor>>>()?;
    Functor::new(src.clone(), tgt.clone(), obj_map, mor_map)
}

/// Fills identity and composite transports from the given ones.
fn complete_transports(
    index: &FinCat,
    fibers: &[Arc<FinCat>],
    mut partial: Vec<Option<Functor>>,
) -> Result<Vec<Functor>> {
    for x in index.objects() {
        let id = index.id(x);
        if partial[id.idx()].is_none() {
            partial[id.idx()] = Some(Functor::identity(&fibers[x.idx()]));
        }
    }
    loop {
        let mut changed = false;
        for (g, f) in index.composable_pairs() {
            let gf = index.composite(g, f);
            if partial[gf.idx()].is_some() {
                continue;
            }
            if let (Some(tg), Some(tf)) = (&partial[g.idx()], &partial[f.idx()]) {
                partial[gf.idx()] = Some(compose_functors(tg, tf)?);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    partial
        .into_iter()
        .enumerate()
        .map(|(k, t)| {
            t.ok_or_else(|| {
                Error::FiberMismatch(format!(
                    "no transport given or derivable for {}",
                    index.morphism_label(crate::fincat::mor(k))
                ))
            })
        })
        .collect()
}

pub fn diagram_from_raw(raw: &RawDiagram, base: Option<&Path>) -> Result<CatDiagram> {
    let index = resolve(&raw.index, base)?;
    if raw.fibers.len() != index.object_count() {
        return Err(Error::FiberMismatch(format!(
            "{} fibers for {} index objects",
            raw.fibers.len(),
            index.object_count()
        )));
    }
    let fibers = raw
        .fibers
        .iter()
        .map(|f| resolve(f, base))
        .collect::<Result<Vec<_>>>()?;
    let mut partial: Vec<Option<Functor>> = vec![None; index.morphism_count()];
    for t in &raw.transports {
        let a = index.find_morphism(&t.morphism).ok_or_else(|| {
            Error::DanglingIndex(format!("unknown index morphism {}", t.morphism))
        })?;
        if partial[a.idx()].is_some() {
            return Err(Error::InvalidParameter(format!(
                "transport for {} given twice",
                t.morphism
            )));
        }
        let f = functor_from_names(
            &fibers[index.dom(a).idx()],
            &fibers[index.cod(a).idx()],
            &t.map,
            &format!("transport {}", t.morphism),
        )?;
        partial[a.idx()] = Some(f);
    }
    let transports = complete_transports(&index, &fibers, partial)?;
    CatDiagram::new(index, fibers, transports)
}

pub fn bidiagram_from_raw(
    raw: &RawBiDiagram,
    base: Option<&Path>,
    limits: &Limits,
) -> Result<BiDiagram> {
    let i_cat = resolve(&raw.i, base)?;
    let j_cat = resolve(&raw.j, base)?;
    if raw.fibers.len() != i_cat.object_count()
        || raw.fibers.iter().any(|r| r.len() != j_cat.object_count())
    {
        return Err(Error::FiberMismatch(
            "fiber grid does not match I x J".into(),
        ));
    }
    let product = product_category(&i_cat, &j_cat, limits)?;
    let fibers = raw
        .fibers
        .iter()
        .flatten()
        .map(|f| resolve(f, base))
        .collect::<Result<Vec<_>>>()?;
    let index = product.cat.clone();
    let mut partial: Vec<Option<Functor>> = vec![None; index.morphism_count()];
    for t in &raw.transports {
        let a = i_cat
            .find_morphism(&t.i)
            .ok_or_else(|| Error::DanglingIndex(format!("unknown morphism {} of I", t.i)))?;
        let b = j_cat
            .find_morphism(&t.j)
            .ok_or_else(|| Error::DanglingIndex(format!("unknown morphism {} of J", t.j)))?;
        let m = product.pair_mor(a, b);
        if partial[m.idx()].is_some() {
            return Err(Error::InvalidParameter(format!(
                "transport for ({}, {}) given twice",
                t.i, t.j
            )));
        }
        let f = functor_from_names(
            &fibers[index.dom(m).idx()],
            &fibers[index.cod(m).idx()],
            &t.map,
            &format!("transport ({}, {})", t.i, t.j),
        )?;
        partial[m.idx()] = Some(f);
    }
    let transports = complete_transports(&index, &fibers, partial)?;
    BiDiagram::new(product, CatDiagram::new(index, fibers, transports)?)
}

pub fn load_diagram(path: &Path) -> Result<CatDiagram> {
    let raw: RawDiagram = read_json(path)?;
    diagram_from_raw(&raw, path.parent())
}

pub fn load_bidiagram(path: &Path, limits: &Limits) -> Result<BiDiagram> {
    let raw: RawBiDiagram = read_json(path)?;
    bidiagram_from_raw(&raw, path.parent(), limits)
}

fn raw_map(f: &Functor) -> RawFunctorMap {
    let (s, t) = (f.source(), f.target());
    let (so, sm) = (
        unique_names(s.object_labels()),
        unique_names(s.morphism_labels()),
    );
    let (to, tm) = (
        unique_names(t.object_labels()),
        unique_names(t.morphism_labels()),
    );
    RawFunctorMap {
        objects: s
            .objects()
            .map(|x| (so[x.idx()].clone(), to[f.ob(x).idx()].clone()))
            .collect(),
        morphisms: s
            .morphisms()
            .filter(|&m| !s.is_identity(m))
            .map(|m| (sm[m.idx()].clone(), tm[f.mor(m).idx()].clone()))
            .collect(),
    }
}

impl CatDiagram {
    /// Inline serialization; transports for every non-identity morphism.
    pub fn to_raw(&self) -> RawDiagram {
        let names = unique_names(self.index().morphism_labels());
        RawDiagram {
            index: CategoryRef::Inline(self.index().to_raw()),
            fibers: self
                .fibers()
                .iter()
                .map(|c| CategoryRef::Inline(c.to_raw()))
                .collect(),
            transports: self
                .index()
                .morphisms()
                .filter(|&a| !self.index().is_identity(a))
                .map(|a| RawTransport {
                    morphism: names[a.idx()].clone(),
                    map: raw_map(self.transport(a)),
                })
                .collect(),
        }
    }
}

impl BiDiagram {
    /// Inline serialization; transports for the generators `(a, id)` and
    /// `(id, b)` only.
    pub fn to_raw(&self) -> RawBiDiagram {
        let (ic, jc) = (self.i_cat(), self.j_cat());
        let (inames, jnames) = (
            unique_names(ic.morphism_labels()),
            unique_names(jc.morphism_labels()),
        );
        let mut transports = Vec::new();
        for a in ic.morphisms() {
            for b in jc.morphisms() {
                if ic.is_identity(a) == jc.is_identity(b) {
                    continue;
                }
                transports.push(RawBiTransport {
                    i: inames[a.idx()].clone(),
                    j: jnames[b.idx()].clone(),
                    map: raw_map(self.transport(a, b)),
                });
            }
        }
        RawBiDiagram {
            i: CategoryRef::Inline(ic.to_raw()),
            j: CategoryRef::Inline(jc.to_raw()),
            fibers: ic
                .objects()
                .map(|i| {
                    jc.objects()
                        .map(|j| CategoryRef::Inline(self.fiber(i, j).to_raw()))
                        .collect()
                })
                .collect(),
            transports,
        }
    }
}
