//! DOT rendering and JSON views of constructed categories and their codecs.

use std::fmt::Write;

use serde_json::{json, Map, Value};

use crate::fincat::FinCat;
use crate::functor::{Functor, NatTrans};
use crate::hocolim::Hocolim;
use crate::holim::Holim;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn edges(out: &mut String, c: &FinCat) {
    for f in c.morphisms().filter(|&f| !c.is_identity(f)) {
        let _ = writeln!(
            out,
            "  n{} -> n{} [label={}];",
            c.dom(f).0,
            c.cod(f).0,
            quote(c.morphism_label(f))
        );
    }
}

/// One node per object, one edge per non-identity morphism.
pub fn dot(c: &FinCat, name: &str) -> String {
    let mut out = format!("digraph {} {{\n", quote(name));
    for x in c.objects() {
        let _ = writeln!(out, "  n{} [label={}];", x.0, quote(c.object_label(x)));
    }
    edges(&mut out, c);
    out.push_str("}\n");
    out
}

/// As [`dot`], with the objects over each index object grouped in a cluster.
pub fn hocolim_dot(h: &Hocolim, name: &str) -> String {
    let c = h.cat();
    let index = h.diagram().index();
    let mut out = format!("digraph {} {{\n", quote(name));
    for i in index.objects() {
        let _ = writeln!(out, "  subgraph cluster_{} {{", i.0);
        let _ = writeln!(out, "    label={};", quote(index.object_label(i)));
        for x in c.objects().filter(|&x| h.object(x).i == i) {
            let _ = writeln!(out, "    n{} [label={}];", x.0, quote(c.object_label(x)));
        }
        out.push_str("  }\n");
    }
    edges(&mut out, c);
    out.push_str("}\n");
    out
}

/// Objects as `(i, x)` and morphisms as `(alpha, rho)`, by index and label.
pub fn hocolim_codec(h: &Hocolim) -> Value {
    let c = h.cat();
    let d = h.diagram();
    let index = d.index();
    let objects: Vec<Value> = c
        .objects()
        .map(|x| {
            let o = h.object(x);
            json!({
                "index": x.0,
                "label": c.object_label(x),
                "i": index.object_label(o.i),
                "x": d.fiber(o.i).object_label(o.x),
            })
        })
        .collect();
    let morphisms: Vec<Value> = c
        .morphisms()
        .map(|f| {
            let m = h.morphism(f);
            json!({
                "index": f.0,
                "dom": c.dom(f).0,
                "cod": c.cod(f).0,
                "alpha": index.morphism_label(m.alpha),
                "rho": d.fiber(index.cod(m.alpha)).morphism_label(m.rho),
            })
        })
        .collect();
    json!({ "objects": objects, "morphisms": morphisms })
}

/// Objects as families `(x, rho)` and morphisms as families `f`, keyed by
/// index labels.
pub fn holim_codec(h: &Holim) -> Value {
    let c = h.cat();
    let d = h.diagram();
    let index = d.index();
    let objects: Vec<Value> = c
        .objects()
        .map(|x| {
            let o = h.object(x);
            let xs: Map<String, Value> = index
                .objects()
                .map(|i| {
                    (
                        index.object_label(i).to_string(),
                        json!(d.fiber(i).object_label(o.x[i.idx()])),
                    )
                })
                .collect();
            let rs: Map<String, Value> = index
                .morphisms()
                .map(|a| {
                    let label = d.fiber(index.cod(a)).morphism_label(o.rho[a.idx()]);
                    (index.morphism_label(a).to_string(), json!(label))
                })
                .collect();
            json!({ "index": x.0, "label": c.object_label(x), "x": xs, "rho": rs })
        })
        .collect();
    let morphisms: Vec<Value> = c
        .morphisms()
        .map(|f| {
            let m = h.morphism(f);
            let fs: Map<String, Value> = index
                .objects()
                .map(|i| {
                    (
                        index.object_label(i).to_string(),
                        json!(d.fiber(i).morphism_label(m.f[i.idx()])),
                    )
                })
                .collect();
            json!({ "index": f.0, "dom": c.dom(f).0, "cod": c.cod(f).0, "f": fs })
        })
        .collect();
    json!({ "objects": objects, "morphisms": morphisms })
}

/// Explicit index tables.
pub fn functor_json(f: &Functor) -> Value {
    json!({ "obj_map": f.obj_map(), "mor_map": f.mor_map() })
}

pub fn nat_trans_json(eta: &NatTrans) -> Value {
    json!({
        "from": functor_json(eta.from()),
        "to": functor_json(eta.to()),
        "components": eta.components(),
    })
}
