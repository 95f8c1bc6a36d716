//! The JSON category format.
//!
//! ```json
//! {"objects": ["a", "b"],
//!  "morphisms": [{"name": "f", "dom": "a", "cod": "b"}],
//!  "identities": {"a": "1a", "b": "1b"},
//!  "composition": [["g", "f", "gf"]]}
//! ```
//!
//! When `identities` is omitted, identities named `id_<object>` are added in
//! front of the declared morphisms. Composites involving an identity may be
//! left out of `composition` and are filled in by the unit laws.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{mor, ob, FinCat, Mor};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMorphism {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCategory {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<RawMorphism>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identities: Option<BTreeMap<String, String>>,
    #[serde(default)]
    pub composition: Vec<(String, String, String)>,
}

fn index_names(kind: &str, names: &[String]) -> Result<HashMap<String, usize>> {
    let mut out = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if out.insert(n.clone(), i).is_some() {
            return Err(Error::DuplicateName(format!("{kind} {n}")));
        }
    }
    Ok(out)
}

/// Parses and exhaustively validates a raw category description.
pub fn validate_category(raw: &RawCategory) -> Result<FinCat> {
    let objects = index_names("object", &raw.objects)?;
    let mut morphisms: Vec<RawMorphism> = Vec::new();
    if raw.identities.is_none() {
        for o in &raw.objects {
            morphisms.push(RawMorphism {
                name: format!("id_{o}"),
                dom: o.clone(),
                cod: o.clone(),
            });
        }
    }
    morphisms.extend(raw.morphisms.iter().cloned());
    let names: Vec<String> = morphisms.iter().map(|m| m.name.clone()).collect();
    let mor_index = index_names("morphism", &names)?;
    let lookup_obj = |n: &str| {
        objects
            .get(n)
            .copied()
            .ok_or_else(|| Error::DanglingIndex(format!("unknown object {n}")))
    };
    let lookup_mor = |n: &str| {
        mor_index
            .get(n)
            .copied()
            .ok_or_else(|| Error::DanglingIndex(format!("unknown morphism {n}")))
    };
    let mut ends = Vec::with_capacity(morphisms.len());
    for m in &morphisms {
        ends.push((lookup_obj(&m.dom)?, lookup_obj(&m.cod)?));
    }
    let identities: Vec<usize> = match &raw.identities {
        None => (0..raw.objects.len()).collect(),
        Some(map) => {
            for k in map.keys() {
                lookup_obj(k)?;
            }
            raw.objects
                .iter()
                .map(|o| {
                    let name = map.get(o).ok_or_else(|| {
                        Error::DanglingIndex(format!("no identity given for object {o}"))
                    })?;
                    lookup_mor(name)
                })
                .collect::<Result<_>>()?
        }
    };
    let mut is_identity = vec![false; morphisms.len()];
    for &i in &identities {
        is_identity[i] = true;
    }
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for (g, f, gf) in &raw.composition {
        let (g, f, gf) = (lookup_mor(g)?, lookup_mor(f)?, lookup_mor(gf)?);
        if ends[f].1 != ends[g].0 {
            return Err(Error::CompositeTyping {
                g: names[g].clone(),
                f: names[f].clone(),
                gf: names[gf].clone(),
            });
        }
        if let Some(prev) = table.insert((g, f), gf) {
            if prev != gf {
                return Err(Error::InvalidParameter(format!(
                    "conflicting composites for {} . {}",
                    names[g], names[f]
                )));
            }
        }
    }
    let mors = morphisms
        .iter()
        .zip(&ends)
        .map(|(m, &(d, c))| (ob(d), ob(c), m.name.clone()))
        .collect();
    FinCat::from_fn(
        raw.objects.clone(),
        mors,
        identities.iter().map(|&i| mor(i)).collect(),
        |g, f| {
            if let Some(&gf) = table.get(&(g.idx(), f.idx())) {
                return Some(mor(gf));
            }
            if is_identity[g.idx()] {
                Some(f)
            } else if is_identity[f.idx()] {
                Some(g)
            } else {
                None
            }
        },
    )
}

/// Makes labels unique by suffixing repeats with `#index`.
pub(crate) fn unique_names(labels: &[String]) -> Vec<String> {
    let mut seen: HashMap<&str, usize> = HashMap::new();
    for l in labels {
        *seen.entry(l.as_str()).or_default() += 1;
    }
    labels
        .iter()
        .enumerate()
        .map(|(i, l)| {
            if seen[l.as_str()] > 1 {
                format!("{l}#{i}")
            } else {
                l.clone()
            }
        })
        .collect()
}

impl FinCat {
    /// Serializes in the JSON category format. Duplicate labels are made
    /// unique; composites with an identity factor are omitted.
    pub fn to_raw(&self) -> RawCategory {
        let objects = unique_names(self.object_labels());
        let names = unique_names(self.morphism_labels());
        let morphisms = self
            .morphisms()
            .map(|m| RawMorphism {
                name: names[m.idx()].clone(),
                dom: objects[self.dom(m).idx()].clone(),
                cod: objects[self.cod(m).idx()].clone(),
            })
            .collect();
        let identities = self
            .objects()
            .map(|x| (objects[x.idx()].clone(), names[self.id(x).idx()].clone()))
            .collect();
        let composition = self
            .composable_pairs()
            .filter(|&(g, f)| !self.is_identity(g) && !self.is_identity(f))
            .map(|(g, f)| {
                let gf: Mor = self.composite(g, f);
                (
                    names[g.idx()].clone(),
                    names[f.idx()].clone(),
                    names[gf.idx()].clone(),
                )
            })
            .collect();
        RawCategory {
            objects,
            morphisms,
            identities: Some(identities),
            composition,
        }
    }

    pub fn from_json_str(s: &str) -> Result<FinCat> {
        let raw: RawCategory = serde_json::from_str(s).map_err(|e| Error::Parse {
            path: "<string>".into(),
            message: e.to_string(),
        })?;
        validate_category(&raw)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("category serializes")
    }
}
