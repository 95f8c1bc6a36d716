//! Interchange of hocolim and holim for a bidiagram `C: I x J -> Cat`.
//!
//! `A = hocolim_J holim_I C` and `B = holim_I hocolim_J C` are assembled
//! from the generic constructions only. The codecs below read their objects
//! and morphisms back as nested data:
//!
//! * an A-object is `(j, x, rho)` with `x_i` in `C(i,j)` and
//!   `rho_a: C(a, j)(x_i) -> x_i'`;
//! * an A-morphism is `(b, f)` with `b: j -> k`, `f_i: C(i, b)(x_i) -> y_i`;
//! * a B-object is `(j, x, beta, rho)` with `x_i` in `C(i, j(i))`,
//!   `beta_a: j(i) -> j(i')` and `rho_a: C(a, beta_a)(x_i) -> x_i'`;
//! * a B-morphism is `(beta, f)` with `beta_i: j(i) -> j'(i)` and
//!   `f_i: C(i, beta_i)(x_i) -> y_i`.
//!
//! [`iota`] embeds A into B as the families with constant `j` and identity
//! `beta`. Given a pseudo-final `(e, eps)` of I, [`retraction_p`] pushes
//! every family forward to column `j(e)`, and [`theta`] is the comparison
//! `1 -> iota . p` with components `(beta_{eps_i}, id)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::diagram::{BiDiagram, CatDiagram, Curry, DiagramMap};
use crate::error::{Error, Result};
use crate::fincat::{find_pseudo_finals, ob, FinCat, Limits, Mor, Ob, PseudoFinal};
use crate::functor::{
    check_functor, check_nat_trans, compose_functors, Functor, NatTrans, Violation,
};
use crate::hocolim::{hocolim, hocolim_induced, GrothMorphism, GrothObject, Hocolim};
use crate::holim::{holim_explicit, holim_induced, Holim, HolimMorphism, HolimObject};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AObject {
    pub j: Ob,
    pub x: Vec<Ob>,
    pub rho: Vec<Mor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AMorphism {
    pub beta: Mor,
    pub f: Vec<Mor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BObject {
    pub j: Vec<Ob>,
    pub x: Vec<Ob>,
    pub beta: Vec<Mor>,
    pub rho: Vec<Mor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BMorphism {
    pub beta: Vec<Mor>,
    pub f: Vec<Mor>,
}

/// Both sides of the interchange together with every intermediate stage.
#[derive(Clone, Debug)]
pub struct InterchangePair {
    bd: BiDiagram,
    column_diagrams: Vec<Arc<CatDiagram>>,
    columns: Vec<Holim>,
    row_diagrams: Vec<Arc<CatDiagram>>,
    rows: Vec<Hocolim>,
    a_diagram: Arc<CatDiagram>,
    b_diagram: Arc<CatDiagram>,
    a: Hocolim,
    b: Holim,
}

pub fn inner_outer(bd: &BiDiagram, limits: &Limits) -> Result<InterchangePair> {
    let (ic, jc) = (bd.i_cat().clone(), bd.j_cat().clone());

    let column_diagrams = jc
        .objects()
        .map(|j| bd.curry(Curry::FixJ(j)).map(Arc::new))
        .collect::<Result<Vec<_>>>()?;
    let columns = column_diagrams
        .iter()
        .map(|d| holim_explicit(d, limits))
        .collect::<Result<Vec<_>>>()?;
    let a_transports = jc
        .morphisms()
        .map(|b| {
            let (s, t) = (jc.dom(b).idx(), jc.cod(b).idx());
            let m = bd.column_map(b, &column_diagrams[s], &column_diagrams[t])?;
            holim_induced(&m, &columns[s], &columns[t])
        })
        .collect::<Result<Vec<_>>>()?;
    let a_diagram = Arc::new(CatDiagram::new(
        jc.clone(),
        columns.iter().map(|h| h.cat().clone()).collect(),
        a_transports,
    )?);
    let a = hocolim(&a_diagram, limits)?;

    let row_diagrams = ic
        .objects()
        .map(|i| bd.curry(Curry::FixI(i)).map(Arc::new))
        .collect::<Result<Vec<_>>>()?;
    let rows = row_diagrams
        .iter()
        .map(|d| hocolim(d, limits))
        .collect::<Result<Vec<_>>>()?;
    let b_transports = ic
        .morphisms()
        .map(|a| {
            let (s, t) = (ic.dom(a).idx(), ic.cod(a).idx());
            let m = bd.row_map(a, &row_diagrams[s], &row_diagrams[t])?;
            hocolim_induced(&m, &rows[s], &rows[t])
        })
        .collect::<Result<Vec<_>>>()?;
    let b_diagram = Arc::new(CatDiagram::new(
        ic.clone(),
        rows.iter().map(|h| h.cat().clone()).collect(),
        b_transports,
    )?);
    let b = holim_explicit(&b_diagram, limits)?;

    Ok(InterchangePair {
        bd: bd.clone(),
        column_diagrams,
        columns,
        row_diagrams,
        rows,
        a_diagram,
        b_diagram,
        a,
        b,
    })
}

fn mismatch(what: impl Into<String>) -> Error {
    Error::ConstructionMismatch(what.into())
}

impl InterchangePair {
    pub fn bidiagram(&self) -> &BiDiagram {
        &self.bd
    }

    /// `hocolim_J holim_I C`.
    pub fn a(&self) -> &Hocolim {
        &self.a
    }

    /// `holim_I hocolim_J C`.
    pub fn b(&self) -> &Holim {
        &self.b
    }

    pub fn a_cat(&self) -> &Arc<FinCat> {
        self.a.cat()
    }

    pub fn b_cat(&self) -> &Arc<FinCat> {
        self.b.cat()
    }

    pub fn column(&self, j: Ob) -> &Holim {
        &self.columns[j.idx()]
    }

    pub fn row(&self, i: Ob) -> &Hocolim {
        &self.rows[i.idx()]
    }

    pub fn a_diagram(&self) -> &Arc<CatDiagram> {
        &self.a_diagram
    }

    pub fn b_diagram(&self) -> &Arc<CatDiagram> {
        &self.b_diagram
    }

    pub fn a_object(&self, x: Ob) -> AObject {
        let g = self.a.object(x);
        let h = self.columns[g.i.idx()].object(g.x);
        AObject {
            j: g.i,
            x: h.x.clone(),
            rho: h.rho.clone(),
        }
    }

    pub fn a_morphism(&self, f: Mor) -> AMorphism {
        let g = self.a.morphism(f);
        let k = self.a_diagram.index().cod(g.alpha);
        AMorphism {
            beta: g.alpha,
            f: self.columns[k.idx()].morphism(g.rho).f.clone(),
        }
    }

    pub fn a_object_of(&self, o: &AObject) -> Option<Ob> {
        let col = self.columns.get(o.j.idx())?;
        let x = col.object_of(&HolimObject {
            x: o.x.clone(),
            rho: o.rho.clone(),
        })?;
        self.a.object_of(GrothObject { i: o.j, x })
    }

    pub fn a_morphism_of(&self, dom: Ob, cod: Ob, m: &AMorphism) -> Option<Mor> {
        let (s, t) = (self.a.object(dom), self.a.object(cod));
        let start = self.a_diagram.transport(m.beta).ob(s.x);
        let f =
            self.columns[t.i.idx()].morphism_of(start, t.x, &HolimMorphism { f: m.f.clone() })?;
        self.a.morphism_of(
            dom,
            cod,
            GrothMorphism {
                alpha: m.beta,
                rho: f,
            },
        )
    }

    pub fn b_object(&self, x: Ob) -> BObject {
        let h = self.b.object(x);
        let ic = self.bd.i_cat();
        let cells: Vec<GrothObject> = ic
            .objects()
            .map(|i| self.rows[i.idx()].object(h.x[i.idx()]))
            .collect();
        let arrows: Vec<GrothMorphism> = ic
            .morphisms()
            .map(|a| self.rows[ic.cod(a).idx()].morphism(h.rho[a.idx()]))
            .collect();
        BObject {
            j: cells.iter().map(|g| g.i).collect(),
            x: cells.iter().map(|g| g.x).collect(),
            beta: arrows.iter().map(|g| g.alpha).collect(),
            rho: arrows.iter().map(|g| g.rho).collect(),
        }
    }

    pub fn b_morphism(&self, f: Mor) -> BMorphism {
        let h = self.b.morphism(f);
        let ic = self.bd.i_cat();
        let comps: Vec<GrothMorphism> = ic
            .objects()
            .map(|i| self.rows[i.idx()].morphism(h.f[i.idx()]))
            .collect();
        BMorphism {
            beta: comps.iter().map(|g| g.alpha).collect(),
            f: comps.iter().map(|g| g.rho).collect(),
        }
    }

    pub fn b_object_of(&self, o: &BObject) -> Option<Ob> {
        let ic = self.bd.i_cat();
        if o.j.len() != ic.object_count() || o.beta.len() != ic.morphism_count() {
            return None;
        }
        let x = ic
            .objects()
            .map(|i| {
                self.rows[i.idx()].object_of(GrothObject {
                    i: o.j[i.idx()],
                    x: o.x[i.idx()],
                })
            })
            .collect::<Option<Vec<Ob>>>()?;
        let rho = ic
            .morphisms()
            .map(|a| {
                let (s, t) = (ic.dom(a), ic.cod(a));
                let start = self.b_diagram.transport(a).ob(x[s.idx()]);
                let m = GrothMorphism {
                    alpha: o.beta[a.idx()],
                    rho: o.rho[a.idx()],
                };
                self.rows[t.idx()].morphism_of(start, x[t.idx()], m)
            })
            .collect::<Option<Vec<Mor>>>()?;
        self.b.object_of(&HolimObject { x, rho })
    }

    pub fn b_morphism_of(&self, dom: Ob, cod: Ob, m: &BMorphism) -> Option<Mor> {
        let ic = self.bd.i_cat();
        let (s, t) = (self.b.object(dom), self.b.object(cod));
        let f = ic
            .objects()
            .map(|i| {
                let g = GrothMorphism {
                    alpha: m.beta[i.idx()],
                    rho: m.f[i.idx()],
                };
                self.rows[i.idx()].morphism_of(s.x[i.idx()], t.x[i.idx()], g)
            })
            .collect::<Option<Vec<Mor>>>()?;
        self.b.morphism_of(dom, cod, &HolimMorphism { f })
    }

    fn a_label(&self, x: Ob) -> &str {
        self.a_cat().object_label(x)
    }

    fn b_label(&self, x: Ob) -> &str {
        self.b_cat().object_label(x)
    }
}

/// `iota: A -> B`, `(j, x, rho) |-> (const j, x, id, rho)` and
/// `(b, f) |-> (const b, f)`.
pub fn iota(pair: &InterchangePair) -> Result<Functor> {
    let (ni, na) = (
        pair.bd.i_cat().object_count(),
        pair.bd.i_cat().morphism_count(),
    );
    let jc = pair.bd.j_cat();
    let ac = pair.a_cat();
    let obj_map = ac
        .objects()
        .map(|x| {
            let o = pair.a_object(x);
            let image = BObject {
                j: vec![o.j; ni],
                x: o.x,
                beta: vec![jc.id(o.j); na],
                rho: o.rho,
            };
            pair.b_object_of(&image).ok_or_else(|| {
                mismatch(format!(
                    "iota: image of {} is not a B-object",
                    pair.a_label(x)
                ))
            })
        })
        .collect::<Result<Vec<Ob>>>()?;
    let mor_map = ac
        .morphisms()
        .map(|f| {
            let m = pair.a_morphism(f);
            let image = BMorphism {
                beta: vec![m.beta; ni],
                f: m.f,
            };
            pair.b_morphism_of(obj_map[ac.dom(f).idx()], obj_map[ac.cod(f).idx()], &image)
                .ok_or_else(|| {
                    mismatch(format!(
                        "iota: image of {} is not a B-morphism",
                        ac.morphism_label(f)
                    ))
                })
        })
        .collect::<Result<Vec<Mor>>>()?;
    Functor::new(ac.clone(), pair.b_cat().clone(), obj_map, mor_map)
}

fn checked_pseudo_final(pair: &InterchangePair, pf: &PseudoFinal) -> Result<()> {
    pf.verify(pair.bd.i_cat())
}

/// The push-forward of a B-object to column `j(e)`.
fn collapse(pair: &InterchangePair, pf: &PseudoFinal, o: &BObject) -> AObject {
    let ic = pair.bd.i_cat();
    let toward_e = |i: Ob| o.beta[pf.eps[i.idx()].idx()];
    AObject {
        j: o.j[pf.e.idx()],
        x: ic
            .objects()
            .map(|i| pair.bd.transport(ic.id(i), toward_e(i)).ob(o.x[i.idx()]))
            .collect(),
        rho: ic
            .morphisms()
            .map(|a| {
                let t = ic.cod(a);
                pair.bd.transport(ic.id(t), toward_e(t)).mor(o.rho[a.idx()])
            })
            .collect(),
    }
}

/// `p: B -> A` for a pseudo-final `(e, eps)` of I.
pub fn retraction_p(pair: &InterchangePair, pf: &PseudoFinal) -> Result<Functor> {
    checked_pseudo_final(pair, pf)?;
    let ic = pair.bd.i_cat();
    let bc = pair.b_cat();
    let decoded: Vec<BObject> = bc.objects().map(|x| pair.b_object(x)).collect();
    let obj_map = bc
        .objects()
        .map(|x| {
            pair.a_object_of(&collapse(pair, pf, &decoded[x.idx()]))
                .ok_or_else(|| {
                    mismatch(format!(
                        "p: image of {} is not an A-object",
                        pair.b_label(x)
                    ))
                })
        })
        .collect::<Result<Vec<Ob>>>()?;
    let mor_map = bc
        .morphisms()
        .map(|f| {
            let m = pair.b_morphism(f);
            let y = &decoded[bc.cod(f).idx()];
            let image = AMorphism {
                beta: m.beta[pf.e.idx()],
                f: ic
                    .objects()
                    .map(|i| {
                        let toward_e = y.beta[pf.eps[i.idx()].idx()];
                        pair.bd.transport(ic.id(i), toward_e).mor(m.f[i.idx()])
                    })
                    .collect(),
            };
            pair.a_morphism_of(obj_map[bc.dom(f).idx()], obj_map[bc.cod(f).idx()], &image)
                .ok_or_else(|| {
                    mismatch(format!(
                        "p: image of {} is not an A-morphism",
                        bc.morphism_label(f)
                    ))
                })
        })
        .collect::<Result<Vec<Mor>>>()?;
    Functor::new(bc.clone(), pair.a_cat().clone(), obj_map, mor_map)
}

/// `theta: 1_B -> iota . p` with components `(beta_{eps_i}, id)`.
pub fn theta(pair: &InterchangePair, pf: &PseudoFinal) -> Result<NatTrans> {
    let i_fn = iota(pair)?;
    let p_fn = retraction_p(pair, pf)?;
    theta_from(pair, pf, &i_fn, &p_fn)
}

fn theta_from(
    pair: &InterchangePair,
    pf: &PseudoFinal,
    i_fn: &Functor,
    p_fn: &Functor,
) -> Result<NatTrans> {
    let ic = pair.bd.i_cat();
    let ip = compose_functors(i_fn, p_fn)?;
    let bc = pair.b_cat();
    let comps = bc
        .objects()
        .map(|x| {
            let o = pair.b_object(x);
            let c = collapse(pair, pf, &o);
            let je = c.j;
            let m = BMorphism {
                beta: ic
                    .objects()
                    .map(|i| o.beta[pf.eps[i.idx()].idx()])
                    .collect(),
                f: ic
                    .objects()
                    .map(|i| pair.bd.fiber(i, je).id(c.x[i.idx()]))
                    .collect(),
            };
            pair.b_morphism_of(x, ip.ob(x), &m).ok_or_else(|| {
                mismatch(format!(
                    "theta: component at {} is not a B-morphism",
                    pair.b_label(x)
                ))
            })
        })
        .collect::<Result<Vec<Mor>>>()?;
    NatTrans::new(Functor::identity(bc), ip, comps)
}

/// One entry of a [`RetractReport`]. `pass` is `None` when the check did
/// not run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pseudo_final: Option<String>,
    pub pass: Option<bool>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub skipped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    fn outcome(name: &str, pf: Option<String>, r: std::result::Result<(), String>) -> Check {
        Check {
            name: name.into(),
            pseudo_final: pf,
            pass: Some(r.is_ok()),
            skipped: false,
            witness: r.err(),
        }
    }

    fn skipped(name: &str) -> Check {
        Check {
            name: name.into(),
            pseudo_final: None,
            pass: None,
            skipped: true,
            witness: Some("index category has no pseudo-final object".into()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sizes {
    #[serde(rename = "A_objects")]
    pub a_objects: usize,
    #[serde(rename = "A_morphisms")]
    pub a_morphisms: usize,
    #[serde(rename = "B_objects")]
    pub b_objects: usize,
    #[serde(rename = "B_morphisms")]
    pub b_morphisms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RetractReport {
    pub checks: Vec<Check>,
    pub sizes: Sizes,
}

impl RetractReport {
    /// `true` if no check that ran failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass != Some(false))
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

const RETRACT_CHECKS: [&str; 4] = [
    "p_functor",
    "p_iota_identity",
    "theta_natural",
    "theta_iota_identity",
];

/// Runs every check on the pair: the two unpacked descriptions, functoriality,
/// faithfulness and image of `iota`, and for each pseudo-final of I (or the
/// given ones) the retraction checks.
pub fn verify_retract(
    pair: &InterchangePair,
    pseudo_finals: Option<&[PseudoFinal]>,
) -> RetractReport {
    let mut checks = vec![
        Check::outcome("a_description", None, check_a_description(pair)),
        Check::outcome("b_description", None, check_b_description(pair)),
    ];
    let found;
    let pfs = match pseudo_finals {
        Some(p) => p,
        None => {
            found = find_pseudo_finals(pair.bd.i_cat());
            &found[..]
        }
    };
    match iota(pair) {
        Err(e) => {
            for name in ["iota_functor", "iota_faithful", "iota_image"] {
                checks.push(Check::outcome(name, None, Err(e.to_string())));
            }
        }
        Ok(i_fn) => {
            checks.push(Check::outcome(
                "iota_functor",
                None,
                check_functor(&i_fn).map_err(|v| v.to_string()),
            ));
            let faithful = i_fn.is_faithful().map_err(|(g, h)| {
                let ac = pair.a_cat();
                format!(
                    "{} and {} have equal images",
                    ac.morphism_label(g),
                    ac.morphism_label(h)
                )
            });
            checks.push(Check::outcome("iota_faithful", None, faithful));
            checks.push(Check::outcome(
                "iota_image",
                None,
                check_iota_image(pair, &i_fn),
            ));
            if pfs.is_empty() {
                checks.extend(RETRACT_CHECKS.iter().map(|n| Check::skipped(n)));
            }
            for pf in pfs {
                let tag = Some(pair.bd.i_cat().object_label(pf.e).to_string());
                checks.extend(retract_checks(pair, pf, &i_fn, tag));
            }
        }
    }
    RetractReport {
        checks,
        sizes: Sizes {
            a_objects: pair.a_cat().object_count(),
            a_morphisms: pair.a_cat().morphism_count(),
            b_objects: pair.b_cat().object_count(),
            b_morphisms: pair.b_cat().morphism_count(),
        },
    }
}

fn retract_checks(
    pair: &InterchangePair,
    pf: &PseudoFinal,
    i_fn: &Functor,
    tag: Option<String>,
) -> Vec<Check> {
    let p_fn = match retraction_p(pair, pf) {
        Ok(p) => p,
        Err(e) => {
            return RETRACT_CHECKS
                .iter()
                .map(|n| Check::outcome(n, tag.clone(), Err(e.to_string())))
                .collect();
        }
    };
    let mut out = vec![Check::outcome(
        "p_functor",
        tag.clone(),
        check_functor(&p_fn).map_err(|v| v.to_string()),
    )];
    let p_iota = compose_functors(&p_fn, i_fn)
        .map_err(|e| e.to_string())
        .and_then(|pi| {
            let ac = pair.a_cat();
            if let Some(x) = ac.objects().find(|&x| pi.ob(x) != x) {
                return Err(format!(
                    "p(iota({})) = {}",
                    pair.a_label(x),
                    pair.a_label(pi.ob(x))
                ));
            }
            if let Some(f) = ac.morphisms().find(|&f| pi.mor(f) != f) {
                return Err(format!(
                    "p(iota({})) = {}",
                    ac.morphism_label(f),
                    ac.morphism_label(pi.mor(f))
                ));
            }
            Ok(())
        });
    out.push(Check::outcome("p_iota_identity", tag.clone(), p_iota));
    match theta_from(pair, pf, i_fn, &p_fn) {
        Err(e) => {
            for n in &RETRACT_CHECKS[2..] {
                out.push(Check::outcome(n, tag.clone(), Err(e.to_string())));
            }
        }
        Ok(th) => {
            let natural = check_nat_trans(&th).map_err(|v| {
                let witness = match &v {
                    Violation::Naturality { alpha } => {
                        pair.b_cat().morphism_label(*alpha).to_string()
                    }
                    Violation::ComponentTyping { obj } => pair.b_label(*obj).to_string(),
                    other => other.to_string(),
                };
                format!("{v}: {witness}")
            });
            out.push(Check::outcome("theta_natural", tag.clone(), natural));
            let bc = pair.b_cat();
            let at_image = pair
                .a_cat()
                .objects()
                .find(|&a| {
                    let c = th.component(i_fn.ob(a));
                    c != bc.id(bc.dom(c))
                })
                .map_or(Ok(()), |a| {
                    Err(format!(
                        "component at iota({}) is not an identity",
                        pair.a_label(a)
                    ))
                });
            out.push(Check::outcome("theta_iota_identity", tag, at_image));
        }
    }
    out
}

/// The image of `iota` is exactly the families with constant `j` and
/// identity `beta`, with the morphisms of constant `beta` between them, and
/// `iota` is injective onto it.
fn check_iota_image(pair: &InterchangePair, i_fn: &Functor) -> std::result::Result<(), String> {
    let (ac, bc) = (pair.a_cat(), pair.b_cat());
    let jc = pair.bd.j_cat();
    let obj_image: BTreeSet<Ob> = i_fn.obj_map().iter().copied().collect();
    if obj_image.len() != ac.object_count() {
        return Err("iota identifies two objects".into());
    }
    let is_flat = |x: Ob| {
        let o = pair.b_object(x);
        o.j.iter().all(|&j| j == o.j[0]) && o.beta.iter().all(|&b| jc.is_identity(b))
    };
    let flat: BTreeSet<Ob> = bc.objects().filter(|&x| is_flat(x)).collect();
    if let Some(x) = flat.symmetric_difference(&obj_image).next() {
        return Err(format!(
            "object {} is flat xor in the image",
            pair.b_label(*x)
        ));
    }
    let mor_image: BTreeSet<Mor> = i_fn.mor_map().iter().copied().collect();
    if mor_image.len() != ac.morphism_count() {
        return Err("iota identifies two morphisms".into());
    }
    let flat_mors: BTreeSet<Mor> = bc
        .morphisms()
        .filter(|&f| {
            flat.contains(&bc.dom(f)) && flat.contains(&bc.cod(f)) && {
                let m = pair.b_morphism(f);
                m.beta.iter().all(|&b| b == m.beta[0])
            }
        })
        .collect();
    if let Some(f) = flat_mors.symmetric_difference(&mor_image).next() {
        return Err(format!(
            "morphism {} is flat xor in the image",
            bc.morphism_label(*f)
        ));
    }
    Ok(())
}

/// Reads every A-object and A-morphism through the codec and checks it
/// against the unpacked description, including identities, composition and
/// the codec round trip.
pub fn check_a_description(pair: &InterchangePair) -> std::result::Result<(), String> {
    let bd = &pair.bd;
    let (ic, jc) = (bd.i_cat(), bd.j_cat());
    let ac = pair.a_cat();
    let objs: Vec<AObject> = ac.objects().map(|x| pair.a_object(x)).collect();
    for (k, o) in objs.iter().enumerate() {
        let name = pair.a_label(ob(k));
        if pair.a_object_of(o) != Some(ob(k)) {
            return Err(format!("A-object {name} does not round-trip"));
        }
        let j = o.j;
        for a in ic.morphisms() {
            let (s, t) = (ic.dom(a), ic.cod(a));
            let fiber = bd.fiber(t, j);
            let r = o.rho[a.idx()];
            if fiber.dom(r) != bd.transport(a, jc.id(j)).ob(o.x[s.idx()])
                || fiber.cod(r) != o.x[t.idx()]
            {
                return Err(format!(
                    "A-object {name}: rho at {} is mistyped",
                    ic.morphism_label(a)
                ));
            }
            if ic.is_identity(a) && !fiber.is_identity(r) {
                return Err(format!("A-object {name}: unit fails"));
            }
        }
        for (a2, a1) in ic.composable_pairs() {
            let fiber = bd.fiber(ic.cod(a2), j);
            let rhs = fiber.composite(
                o.rho[a2.idx()],
                bd.transport(a2, jc.id(j)).mor(o.rho[a1.idx()]),
            );
            if o.rho[ic.composite(a2, a1).idx()] != rhs {
                return Err(format!("A-object {name}: cocycle fails"));
            }
        }
    }
    for f in ac.morphisms() {
        let m = pair.a_morphism(f);
        let (x, y) = (&objs[ac.dom(f).idx()], &objs[ac.cod(f).idx()]);
        let name = ac.morphism_label(f);
        if pair.a_morphism_of(ac.dom(f), ac.cod(f), &m) != Some(f) {
            return Err(format!("A-morphism {name} does not round-trip"));
        }
        if jc.dom(m.beta) != x.j || jc.cod(m.beta) != y.j {
            return Err(format!("A-morphism {name}: beta is mistyped"));
        }
        let k = y.j;
        for i in ic.objects() {
            let fiber = bd.fiber(i, k);
            let c = m.f[i.idx()];
            if fiber.dom(c) != bd.transport(ic.id(i), m.beta).ob(x.x[i.idx()])
                || fiber.cod(c) != y.x[i.idx()]
            {
                return Err(format!(
                    "A-morphism {name}: component at {} is mistyped",
                    ic.object_label(i)
                ));
            }
        }
        for a in ic.morphisms() {
            let (s, t) = (ic.dom(a), ic.cod(a));
            let fiber = bd.fiber(t, k);
            let lhs = fiber.composite(y.rho[a.idx()], bd.transport(a, jc.id(k)).mor(m.f[s.idx()]));
            let rhs = fiber.composite(
                m.f[t.idx()],
                bd.transport(ic.id(t), m.beta).mor(x.rho[a.idx()]),
            );
            if lhs != rhs {
                return Err(format!(
                    "A-morphism {name}: square at {} fails",
                    ic.morphism_label(a)
                ));
            }
        }
        if f == ac.id(ac.dom(f))
            && (!jc.is_identity(m.beta)
                || m.f
                    .iter()
                    .zip(ic.objects())
                    .any(|(&c, i)| !bd.fiber(i, k).is_identity(c)))
        {
            return Err(format!("A-identity {name} is not (id, id)"));
        }
    }
    for (g, f) in ac.composable_pairs() {
        let (mg, mf) = (pair.a_morphism(g), pair.a_morphism(f));
        let l = jc.cod(mg.beta);
        let expect = AMorphism {
            beta: jc.composite(mg.beta, mf.beta),
            f: ic
                .objects()
                .map(|i| {
                    let pushed = bd.transport(ic.id(i), mg.beta).mor(mf.f[i.idx()]);
                    bd.fiber(i, l).composite(mg.f[i.idx()], pushed)
                })
                .collect(),
        };
        if pair.a_morphism(ac.composite(g, f)) != expect {
            return Err(format!(
                "A-composite {} . {} disagrees with the unpacked law",
                ac.morphism_label(g),
                ac.morphism_label(f)
            ));
        }
    }
    Ok(())
}

/// As [`check_a_description`], for B.
pub fn check_b_description(pair: &InterchangePair) -> std::result::Result<(), String> {
    let bd = &pair.bd;
    let (ic, jc) = (bd.i_cat(), bd.j_cat());
    let bc = pair.b_cat();
    let objs: Vec<BObject> = bc.objects().map(|x| pair.b_object(x)).collect();
    for (k, o) in objs.iter().enumerate() {
        let name = pair.b_label(ob(k));
        if pair.b_object_of(o) != Some(ob(k)) {
            return Err(format!("B-object {name} does not round-trip"));
        }
        for a in ic.morphisms() {
            let (s, t) = (ic.dom(a), ic.cod(a));
            let b = o.beta[a.idx()];
            if jc.dom(b) != o.j[s.idx()] || jc.cod(b) != o.j[t.idx()] {
                return Err(format!(
                    "B-object {name}: beta at {} is mistyped",
                    ic.morphism_label(a)
                ));
            }
            let fiber = bd.fiber(t, o.j[t.idx()]);
            let r = o.rho[a.idx()];
            if fiber.dom(r) != bd.transport(a, b).ob(o.x[s.idx()]) || fiber.cod(r) != o.x[t.idx()] {
                return Err(format!(
                    "B-object {name}: rho at {} is mistyped",
                    ic.morphism_label(a)
                ));
            }
            if ic.is_identity(a) && (!jc.is_identity(b) || !fiber.is_identity(r)) {
                return Err(format!("B-object {name}: unit fails"));
            }
        }
        for (a2, a1) in ic.composable_pairs() {
            let a21 = ic.composite(a2, a1);
            let (b2, b1) = (o.beta[a2.idx()], o.beta[a1.idx()]);
            if o.beta[a21.idx()] != jc.composite(b2, b1) {
                return Err(format!("B-object {name}: beta is not functorial"));
            }
            let t = ic.cod(a2);
            let fiber = bd.fiber(t, o.j[t.idx()]);
            let rhs = fiber.composite(o.rho[a2.idx()], bd.transport(a2, b2).mor(o.rho[a1.idx()]));
            if o.rho[a21.idx()] != rhs {
                return Err(format!("B-object {name}: cocycle fails"));
            }
        }
    }
    for f in bc.morphisms() {
        let m = pair.b_morphism(f);
        let (x, y) = (&objs[bc.dom(f).idx()], &objs[bc.cod(f).idx()]);
        let name = bc.morphism_label(f);
        if pair.b_morphism_of(bc.dom(f), bc.cod(f), &m) != Some(f) {
            return Err(format!("B-morphism {name} does not round-trip"));
        }
        for i in ic.objects() {
            let b = m.beta[i.idx()];
            if jc.dom(b) != x.j[i.idx()] || jc.cod(b) != y.j[i.idx()] {
                return Err(format!(
                    "B-morphism {name}: beta at {} is mistyped",
                    ic.object_label(i)
                ));
            }
            let fiber = bd.fiber(i, y.j[i.idx()]);
            let c = m.f[i.idx()];
            if fiber.dom(c) != bd.transport(ic.id(i), b).ob(x.x[i.idx()])
                || fiber.cod(c) != y.x[i.idx()]
            {
                return Err(format!(
                    "B-morphism {name}: component at {} is mistyped",
                    ic.object_label(i)
                ));
            }
        }
        for a in ic.morphisms() {
            let (s, t) = (ic.dom(a), ic.cod(a));
            let (bs, bt) = (m.beta[s.idx()], m.beta[t.idx()]);
            let (xb, yb) = (x.beta[a.idx()], y.beta[a.idx()]);
            if jc.composite(yb, bs) != jc.composite(bt, xb) {
                return Err(format!(
                    "B-morphism {name}: beta square at {} fails",
                    ic.morphism_label(a)
                ));
            }
            let fiber = bd.fiber(t, y.j[t.idx()]);
            let lhs = fiber.composite(y.rho[a.idx()], bd.transport(a, yb).mor(m.f[s.idx()]));
            let rhs = fiber.composite(m.f[t.idx()], bd.transport(ic.id(t), bt).mor(x.rho[a.idx()]));
            if lhs != rhs {
                return Err(format!(
                    "B-morphism {name}: square at {} fails",
                    ic.morphism_label(a)
                ));
            }
        }
    }
    for (g, f) in bc.composable_pairs() {
        let (mg, mf) = (pair.b_morphism(g), pair.b_morphism(f));
        let z = &objs[bc.cod(g).idx()];
        let expect = BMorphism {
            beta: ic
                .objects()
                .map(|i| jc.composite(mg.beta[i.idx()], mf.beta[i.idx()]))
                .collect(),
            f: ic
                .objects()
                .map(|i| {
                    let pushed = bd.transport(ic.id(i), mg.beta[i.idx()]).mor(mf.f[i.idx()]);
                    bd.fiber(i, z.j[i.idx()]).composite(mg.f[i.idx()], pushed)
                })
                .collect(),
        };
        if pair.b_morphism(bc.composite(g, f)) != expect {
            return Err(format!(
                "B-composite {} . {} disagrees with the unpacked law",
                bc.morphism_label(g),
                bc.morphism_label(f)
            ));
        }
    }
    Ok(())
}

fn restrict_map(
    t: &DiagramMap,
    src: &BiDiagram,
    from: &Arc<CatDiagram>,
    to: &Arc<CatDiagram>,
    cells: impl Iterator<Item = (Ob, Ob)>,
) -> Result<DiagramMap> {
    let comps = cells
        .map(|(i, j)| t.component(src.product().pair_ob(i, j)).clone())
        .collect();
    DiagramMap::new(from.clone(), to.clone(), comps)
}

fn check_bidiagram_map(t: &DiagramMap, src: &InterchangePair, tgt: &InterchangePair) -> Result<()> {
    if **t.from() != *src.bd.underlying() || **t.to() != *tgt.bd.underlying() {
        return Err(Error::ShapeMismatch(
            "map does not run between these bidiagrams".into(),
        ));
    }
    Ok(())
}

/// The functor `A(C) -> A(C')` induced by a map of bidiagrams.
pub fn induced_a(t: &DiagramMap, src: &InterchangePair, tgt: &InterchangePair) -> Result<Functor> {
    check_bidiagram_map(t, src, tgt)?;
    let (ic, jc) = (src.bd.i_cat(), src.bd.j_cat());
    let comps = jc
        .objects()
        .map(|j| {
            let k = j.idx();
            let m = restrict_map(
                t,
                &src.bd,
                &src.column_diagrams[k],
                &tgt.column_diagrams[k],
                ic.objects().map(|i| (i, j)),
            )?;
            holim_induced(&m, &src.columns[k], &tgt.columns[k])
        })
        .collect::<Result<Vec<_>>>()?;
    let outer = DiagramMap::new(src.a_diagram.clone(), tgt.a_diagram.clone(), comps)?;
    hocolim_induced(&outer, &src.a, &tgt.a)
}

/// The functor `B(C) -> B(C')` induced by a map of bidiagrams.
pub fn induced_b(t: &DiagramMap, src: &InterchangePair, tgt: &InterchangePair) -> Result<Functor> {
    check_bidiagram_map(t, src, tgt)?;
    let (ic, jc) = (src.bd.i_cat(), src.bd.j_cat());
    let comps = ic
        .objects()
        .map(|i| {
            let k = i.idx();
            let m = restrict_map(
                t,
                &src.bd,
                &src.row_diagrams[k],
                &tgt.row_diagrams[k],
                jc.objects().map(|j| (i, j)),
            )?;
            hocolim_induced(&m, &src.rows[k], &tgt.rows[k])
        })
        .collect::<Result<Vec<_>>>()?;
    let outer = DiagramMap::new(src.b_diagram.clone(), tgt.b_diagram.clone(), comps)?;
    holim_induced(&outer, &src.b, &tgt.b)
}

/// `iota(C') . A(t) == B(t) . iota(C)`.
pub fn iota_natural(t: &DiagramMap, src: &InterchangePair, tgt: &InterchangePair) -> Result<bool> {
    let left = compose_functors(&iota(tgt)?, &induced_a(t, src, tgt)?)?;
    let right = compose_functors(&induced_b(t, src, tgt)?, &iota(src)?)?;
    Ok(left == right)
}
