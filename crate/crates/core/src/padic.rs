//! The truncated p-adic grid.
//!
//! Rows are indexed by `m = 1..=M` through `I`, a poset with `m -> m'` iff
//! `m >= m'` (so row 1 is final), and columns by `n = 0..=N` through
//! `J = chain(N)`. The cell `(m, n)` is the discrete category on `Z/p^m`;
//! along a column the transport reduces modulo `p^m'`, along a row it
//! multiplies by `p`.

use std::sync::Arc;

use serde::Serialize;

use crate::diagram::{BiDiagram, Curry};
use crate::error::{Error, Result};
use crate::fincat::{FinCat, Limits, Mor, Ob};
use crate::functor::Functor;
use crate::hocolim::{hocolim, Hocolim};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PadicParams {
    pub p: u64,
    pub rows: u32,
    pub cols: u32,
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

impl PadicParams {
    pub fn new(p: u64, rows: u32, cols: u32) -> Result<PadicParams> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("p = {p} is not prime")));
        }
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParameter("M and N must be at least 1".into()));
        }
        p.checked_pow(rows)
            .ok_or_else(|| Error::InvalidParameter("p^M overflows".into()))?;
        Ok(PadicParams { p, rows, cols })
    }

    /// `p^m`.
    pub fn modulus(&self, m: u32) -> u64 {
        self.p.pow(m)
    }
}

/// The grid as a bidiagram over `I x J`.
pub fn padic_bidiagram(params: &PadicParams, limits: &Limits) -> Result<BiDiagram> {
    let top = params.modulus(params.rows);
    if top > limits.max_objects as u64 {
        return Err(Error::SizeCapExceeded {
            stage: "padic".into(),
            detail: format!("p^M = {top} objects per top fiber"),
        });
    }
    let rows = params.rows as usize;
    let i_cat = Arc::new(FinCat::poset_labeled(
        (1..=rows).map(|m| m.to_string()).collect(),
        |a, b| a >= b,
    )?);
    let j_cat = Arc::new(FinCat::chain(params.cols as usize)?);
    let row_fibers: Vec<Arc<FinCat>> = (1..=params.rows)
        .map(|m| FinCat::discrete(params.modulus(m) as usize).map(Arc::new))
        .collect::<Result<_>>()?;
    let fibers = (0..rows)
        .map(|k| vec![row_fibers[k].clone(); params.cols as usize + 1])
        .collect();
    let (ic, jc) = (i_cat.clone(), j_cat.clone());
    BiDiagram::from_parts(
        &i_cat,
        &j_cat,
        fibers,
        |a, b| {
            let (src, tgt) = (ic.dom(a).idx(), ic.cod(a).idx());
            let shift = (jc.cod(b).idx() - jc.dom(b).idx()) as u32;
            let modulus = params.modulus(tgt as u32 + 1);
            let factor = params.p.pow(shift) % modulus;
            let (fs, ft) = (&row_fibers[src], &row_fibers[tgt]);
            let obj_map: Vec<Ob> = fs
                .objects()
                .map(|x| Ob(((x.0 as u64 * factor) % modulus) as u32))
                .collect();
            let mor_map: Vec<Mor> = obj_map.iter().map(|&x| ft.id(x)).collect();
            Functor::new(fs.clone(), ft.clone(), obj_map, mor_map)
        },
        limits,
    )
}

/// `L_m`: the hocolim of row `m` over `J`.
pub fn row_category(params: &PadicParams, m: u32, limits: &Limits) -> Result<Hocolim> {
    if m == 0 || m > params.rows {
        return Err(Error::IndexOutOfRange(format!(
            "row {m} of {}",
            params.rows
        )));
    }
    let bd = padic_bidiagram(params, limits)?;
    let row = bd.curry(Curry::FixI(Ob(m - 1)))?;
    hocolim(&row, limits)
}

/// `|hom((n0, a), (n1, b))|` as given by the closed form for `L_m`.
pub fn closed_form_hom(
    params: &PadicParams,
    m: u32,
    (n0, a): (u32, u64),
    (n1, b): (u32, u64),
) -> usize {
    if n0 > n1 {
        return 0;
    }
    let modulus = params.modulus(m);
    let factor = (0..n1 - n0).fold(1 % modulus, |acc, _| acc * params.p % modulus);
    usize::from(factor * a % modulus == b % modulus)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomsetMismatch {
    pub from: (u32, u64),
    pub to: (u32, u64),
    pub expected: usize,
    pub found: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomsetReport {
    pub p: u64,
    pub m: u32,
    #[serde(rename = "N")]
    pub n: u32,
    pub objects: usize,
    pub pairs_checked: usize,
    pub mismatches: Vec<HomsetMismatch>,
}

impl HomsetReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares every hom-set of `L_m` with the closed form.
pub fn row_hocolim_homset_check(
    params: &PadicParams,
    m: u32,
    limits: &Limits,
) -> Result<HomsetReport> {
    let l = row_category(params, m, limits)?;
    let c = l.cat();
    let coords = |x: Ob| {
        let g = l.object(x);
        (g.i.0, g.x.0 as u64)
    };
    let mut mismatches = Vec::new();
    for s in c.objects() {
        for t in c.objects() {
            let (from, to) = (coords(s), coords(t));
            let expected = closed_form_hom(params, m, from, to);
            let found = c.hom(s, t).len();
            if expected != found {
                mismatches.push(HomsetMismatch {
                    from,
                    to,
                    expected,
                    found,
                });
            }
        }
    }
    Ok(HomsetReport {
        p: params.p,
        m,
        n: params.cols,
        objects: c.object_count(),
        pairs_checked: c.object_count() * c.object_count(),
        mismatches,
    })
}
