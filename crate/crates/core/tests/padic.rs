//! The truncated p-adic grid: its towers, rows, columns and interchange.

mod common;

use std::sync::Arc;

use catlim_core::diagnostics::{initial_final, is_groupoid, nerve_counts, pi0, InitialFinal};
use catlim_core::diagram::{check_diagram_map, Curry};
use catlim_core::hocolim::{hocolim, hocolim_induced, GrothObject};
use catlim_core::holim::{holim_explicit, holim_induced};
use catlim_core::interchange::{inner_outer, iota, retraction_p, theta, verify_retract};
use catlim_core::padic::{
    closed_form_hom, padic_bidiagram, row_category, row_hocolim_homset_check, PadicParams,
};
use catlim_core::{find_pseudo_finals, BiDiagram, Limits, Ob};

use common::{padic_closed_form, padic_column_families, padic_components};

fn grid(p: u64, rows: u32, cols: u32) -> (PadicParams, BiDiagram) {
    let params = PadicParams::new(p, rows, cols).unwrap();
    let bd = padic_bidiagram(&params, &Limits::default()).unwrap();
    (params, bd)
}

#[test]
fn squares_commute_by_arithmetic() {
    let (_, bd) = grid(3, 2, 2);
    let (ic, jc) = (bd.i_cat(), bd.j_cat());
    let down = ic.hom(Ob(1), Ob(0))[0];
    for b in jc.morphisms() {
        let shift = jc.cod(b).0 - jc.dom(b).0;
        let t = bd.transport(down, b);
        for a in 0..9u32 {
            assert_eq!(t.ob(Ob(a)).0 as u64, (3u64.pow(shift) * (a as u64 % 3)) % 3);
            assert_eq!(t.ob(Ob(a)).0 as u64, (3u64.pow(shift) * a as u64) % 3);
        }
    }
}

#[test]
fn rows_multiply_and_columns_reduce() {
    let (params, bd) = grid(2, 2, 2);
    let (ic, jc) = (bd.i_cat(), bd.j_cat());
    for i in ic.objects() {
        let row = bd.curry(Curry::FixI(i)).unwrap();
        let modulus = params.modulus(i.0 + 1);
        for b in jc.morphisms() {
            let shift = jc.cod(b).0 - jc.dom(b).0;
            for a in row.fiber(jc.dom(b)).objects() {
                assert_eq!(
                    row.transport(b).ob(a).0 as u64,
                    (a.0 as u64) * 2u64.pow(shift) % modulus
                );
            }
        }
    }
    for j in jc.objects() {
        let col = bd.curry(Curry::FixJ(j)).unwrap();
        let down = ic.hom(Ob(1), Ob(0))[0];
        for a in 0..4u32 {
            assert_eq!(col.transport(down).ob(Ob(a)), Ob(a % 2));
        }
    }
}

#[test]
fn columns_are_discrete_on_the_top_fiber() {
    for (p, rows) in [(2u64, 2u32), (3, 2), (2, 3)] {
        let (params, bd) = grid(p, rows, 1);
        let col = bd.curry(Curry::FixJ(Ob(0))).unwrap();
        let h = holim_explicit(&col, &Limits::default()).unwrap();
        assert_eq!(h.cat().object_count() as u64, params.modulus(rows));
        assert_eq!(h.cat().object_count(), padic_column_families(p, rows));
        assert!(h.cat().morphisms().all(|f| h.cat().is_identity(f)));
    }
}

#[test]
fn projection_between_rows_is_a_map_and_induces_reduction() {
    let (_, bd) = grid(2, 2, 1);
    let rows: Vec<Arc<_>> = bd
        .i_cat()
        .objects()
        .map(|i| Arc::new(bd.curry(Curry::FixI(i)).unwrap()))
        .collect();
    let down = bd.i_cat().hom(Ob(1), Ob(0))[0];
    let t = bd.row_map(down, &rows[1], &rows[0]).unwrap();
    assert!(check_diagram_map(&t).is_ok());
    let limits = Limits::default();
    let (top, bottom) = (
        hocolim(&rows[1], &limits).unwrap(),
        hocolim(&rows[0], &limits).unwrap(),
    );
    let f = hocolim_induced(&t, &top, &bottom).unwrap();
    for x in top.cat().objects() {
        let o = top.object(x);
        let image = bottom.object(f.ob(x));
        assert_eq!(
            image,
            GrothObject {
                i: o.i,
                x: Ob(o.x.0 % 2)
            }
        );
    }
}

#[test]
fn multiplication_between_columns_multiplies_families() {
    let (_, bd) = grid(2, 2, 1);
    let cols: Vec<Arc<_>> = bd
        .j_cat()
        .objects()
        .map(|j| Arc::new(bd.curry(Curry::FixJ(j)).unwrap()))
        .collect();
    let right = bd.j_cat().hom(Ob(0), Ob(1))[0];
    let t = bd.column_map(right, &cols[0], &cols[1]).unwrap();
    let limits = Limits::default();
    let (h0, h1) = (
        holim_explicit(&cols[0], &limits).unwrap(),
        holim_explicit(&cols[1], &limits).unwrap(),
    );
    let f = holim_induced(&t, &h0, &h1).unwrap();
    for x in h0.cat().objects() {
        let src = h0.object(x);
        let dst = h1.object(f.ob(x));
        for (k, (a, b)) in src.x.iter().zip(&dst.x).enumerate() {
            let modulus = 2u32.pow(k as u32 + 1);
            assert_eq!(b.0, 2 * a.0 % modulus);
        }
    }
}

#[test]
fn row_hom_sets_follow_the_closed_form() {
    let params = PadicParams::new(2, 2, 2).unwrap();
    assert_eq!(closed_form_hom(&params, 1, (0, 1), (2, 0)), 1);
    assert_eq!(closed_form_hom(&params, 2, (0, 1), (2, 0)), 1);
    let p11 = PadicParams::new(2, 1, 1).unwrap();
    assert_eq!(closed_form_hom(&p11, 1, (1, 1), (0, 1)), 0);
    for p in [2u64, 3, 5] {
        for cols in 1..=3 {
            let params = PadicParams::new(p, 2, cols).unwrap();
            for m in 1..=2 {
                let report = row_hocolim_homset_check(&params, m, &Limits::new(256, 8192)).unwrap();
                assert!(report.passed(), "{report:?}");
                let l = row_category(&params, m, &Limits::new(256, 8192)).unwrap();
                for s in l.cat().objects() {
                    for t in l.cat().objects() {
                        let (a, b) = (l.object(s), l.object(t));
                        let want =
                            padic_closed_form(p, m, a.i.0, a.x.0 as u64, b.i.0, b.x.0 as u64);
                        assert_eq!(l.cat().hom(s, t).len(), want);
                        assert!(want <= 1);
                    }
                }
            }
        }
    }
}

#[test]
fn rows_are_neither_groupoids_nor_bounded() {
    for p in [2u64, 3] {
        for cols in 1..=3 {
            let params = PadicParams::new(p, 2, cols).unwrap();
            for m in 1..=2 {
                let l = row_category(&params, m, &Limits::new(256, 8192)).unwrap();
                assert!(!is_groupoid(l.cat()));
                assert_eq!(
                    initial_final(l.cat()),
                    InitialFinal {
                        initial: None,
                        terminal: None
                    }
                );
                assert_eq!(pi0(l.cat()).len(), padic_components(p, m, cols));
            }
        }
    }
}

#[test]
fn truncation_isolates_the_last_column_units() {
    let params = PadicParams::new(2, 1, 2).unwrap();
    let l = row_category(&params, 1, &Limits::default()).unwrap();
    let classes = pi0(l.cat());
    assert_eq!(classes.len(), 2);
    let lonely = l.object_of(GrothObject { i: Ob(2), x: Ob(1) }).unwrap();
    assert!(classes.contains(&vec![lonely]));
}

#[test]
fn nerve_of_the_first_row() {
    let params = PadicParams::new(2, 1, 1).unwrap();
    let l = row_category(&params, 1, &Limits::default()).unwrap();
    let c = l.cat();
    let nerve = nerve_counts(c, 2).unwrap();
    // two non-identity arrows (0,a) -> (1,0); nothing composes
    assert_eq!(nerve.nondegenerate, vec![4, 2, 0]);
    let pairs = c.composable_pairs().count() as u64;
    assert_eq!(nerve.chains, vec![4, c.morphism_count() as u64, pairs]);
}

#[test]
fn interchange_on_the_grid() {
    let limits = Limits::default();
    let (_, bd) = grid(2, 2, 1);
    let pair = inner_outer(&bd, &limits).unwrap();
    assert_eq!(pair.a_cat().object_count(), 8);
    let report = verify_retract(&pair, None);
    assert!(
        report.passed() && report.checks.iter().all(|c| !c.skipped),
        "{report:?}"
    );

    let i = iota(&pair).unwrap();
    assert!(i.is_faithful().is_ok());
    for s in pair.a_cat().objects() {
        for t in pair.a_cat().objects() {
            assert!(pair.a_cat().hom(s, t).len() <= 1);
        }
    }

    let pfs = find_pseudo_finals(bd.i_cat());
    assert_eq!(pfs.len(), 1);
    let pf = &pfs[0];
    assert_eq!(pf.e, Ob(0));
    let p = retraction_p(&pair, pf).unwrap();
    let th = theta(&pair, pf).unwrap();
    let (ic, jc) = (bd.i_cat(), bd.j_cat());
    let mut non_constant = 0;
    for x in pair.b_cat().objects() {
        let b = pair.b_object(x);
        let a = pair.a_object(p.ob(x));
        // p collapses onto the value over e
        assert_eq!(a.j, b.j[pf.e.idx()]);
        for k in ic.objects() {
            let moved = bd
                .transport(ic.id(k), b.beta[pf.eps[k.idx()].idx()])
                .ob(b.x[k.idx()]);
            assert_eq!(a.x[k.idx()], moved);
        }
        let comp = pair.b_morphism(th.component(x));
        for k in ic.objects() {
            assert_eq!(comp.beta[k.idx()], b.beta[pf.eps[k.idx()].idx()]);
            assert!(bd.fiber(k, b.j[pf.e.idx()]).is_identity(comp.f[k.idx()]));
        }
        if b.j.iter().any(|&j| j != b.j[0]) {
            non_constant += 1;
            assert!(comp.beta.iter().any(|&m| !jc.is_identity(m)));
        }
    }
    assert!(non_constant > 0);
}
