//! Invariants over seeded random instances.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use catlim_core::corpus::{
    self, random_bidiagram, random_cat_diagram, random_fiber, random_poset, CorpusOptions,
    FinalMode,
};
use catlim_core::diagnostics::{is_groupoid, nerve_counts, pi0};
use catlim_core::diagram::Curry;
use catlim_core::fincat::validate_category;
use catlim_core::functor::{check_functor, check_nat_trans, compose_functors, enumerate_nat_trans};
use catlim_core::functor_category::functor_category;
use catlim_core::hocolim::hocolim;
use catlim_core::holim::{
    check_holim_morphism, check_holim_object, holim_explicit, holim_pullback, HolimMorphism,
};
use catlim_core::{find_pseudo_finals, FinCat, Limits, Mor, Ob};

use common::corpus_limits;

fn fiber(seed: u64) -> Arc<FinCat> {
    Arc::new(random_fiber(&mut corpus::rng(seed), 3, 6).unwrap())
}

fn poset(seed: u64, mode: FinalMode) -> Arc<FinCat> {
    Arc::new(random_poset(&mut corpus::rng(seed), 3, mode).unwrap())
}

/// All pseudo-final structures by trying every choice of components.
fn brute_pseudo_finals(c: &FinCat) -> BTreeSet<(Ob, Vec<Mor>)> {
    let mut out = BTreeSet::new();
    for e in c.objects() {
        let mut choices: Vec<Vec<Mor>> = vec![Vec::new()];
        for x in c.objects() {
            let mut next = Vec::new();
            for prefix in &choices {
                for &m in c.hom(x, e) {
                    let mut v = prefix.clone();
                    v.push(m);
                    next.push(v);
                }
            }
            choices = next;
        }
        for eps in choices {
            let natural = c
                .morphisms()
                .all(|a| c.compose(eps[c.cod(a).idx()], a) == Some(eps[c.dom(a).idx()]));
            if natural {
                out.insert((e, eps));
            }
        }
    }
    out
}

/// Composable strings of `n` morphisms, by recursion on the first arrow.
fn brute_chains(c: &FinCat, n: usize, skip_identities: bool) -> u64 {
    fn extend(c: &FinCat, at: Ob, left: usize, skip: bool) -> u64 {
        if left == 0 {
            return 1;
        }
        c.outgoing(at)
            .iter()
            .filter(|&&f| !(skip && c.is_identity(f)))
            .map(|&f| extend(c, c.cod(f), left - 1, skip))
            .sum()
    }
    c.objects().map(|x| extend(c, x, n, skip_identities)).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn revalidation_is_idempotent(seed in any::<u64>()) {
        let c = fiber(seed);
        let again = validate_category(&c.to_raw()).unwrap();
        prop_assert!(again.same_shape(&c));
        let twice = validate_category(&again.to_raw()).unwrap();
        prop_assert_eq!(&twice, &again);
        prop_assert_eq!(&c.opposite().opposite(), c.as_ref());
    }

    #[test]
    fn pseudo_finals_match_exhaustive_search(seed in any::<u64>()) {
        let c = fiber(seed);
        let found = find_pseudo_finals(&c);
        for pf in &found {
            prop_assert!(pf.verify(&c).is_ok());
        }
        let got: BTreeSet<(Ob, Vec<Mor>)> = found.iter().map(|pf| (pf.e, pf.eps.clone())).collect();
        prop_assert_eq!(got.len(), found.len());
        prop_assert_eq!(got, brute_pseudo_finals(&c));
    }

    #[test]
    fn genuine_final_objects_are_found(seed in any::<u64>()) {
        let i = poset(seed, FinalMode::Force);
        let finals: Vec<Ob> = i.objects().filter(|&e| i.objects().all(|x| i.hom(x, e).len() == 1)).collect();
        prop_assert!(!finals.is_empty());
        let found = find_pseudo_finals(&i);
        for e in finals {
            prop_assert!(found.iter().any(|pf| pf.e == e));
        }
    }

    #[test]
    fn functor_category_codec_round_trips(a in any::<u64>(), b in any::<u64>()) {
        let limits = corpus_limits();
        let (i, d) = (poset(a, FinalMode::Any), fiber(b));
        let fc = functor_category(&i, &d, &limits).unwrap();
        for x in fc.cat().objects() {
            let f = fc.functor(x);
            prop_assert!(check_functor(&f).is_ok());
            prop_assert_eq!(fc.object_of(&f), Some(x));
        }
        for m in fc.cat().morphisms() {
            let eta = fc.nat_trans(m);
            prop_assert!(check_nat_trans(&eta).is_ok());
            prop_assert_eq!(fc.morphism_of(&eta), Some(m));
        }
        for (s, t) in fc.cat().composable_pairs() {
            let st = fc.cat().composite(s, t);
            for x in i.objects() {
                let want = d.composite(fc.components(s)[x.idx()], fc.components(t)[x.idx()]);
                prop_assert_eq!(fc.components(st)[x.idx()], want);
            }
        }
        for x in fc.cat().objects() {
            for y in fc.cat().objects() {
                let all = enumerate_nat_trans(&fc.functor(x), &fc.functor(y)).unwrap();
                prop_assert_eq!(all.len(), fc.cat().hom(x, y).len());
            }
        }
    }

    #[test]
    fn functor_category_of_discrete_index(n in 1usize..=3, b in any::<u64>()) {
        let d = fiber(b);
        let i = Arc::new(FinCat::discrete(n).unwrap());
        let fc = functor_category(&i, &d, &corpus_limits()).unwrap();
        prop_assert_eq!(fc.cat().object_count(), d.object_count().pow(n as u32));
    }

    #[test]
    fn bidiagram_transports_interchange(seed in any::<u64>()) {
        let limits = corpus_limits();
        let bd = random_bidiagram(&mut corpus::rng(seed), &CorpusOptions::default(), &limits).unwrap();
        let (ic, jc) = (bd.i_cat(), bd.j_cat());
        for a in ic.morphisms() {
            for b in jc.morphisms() {
                let (i, i2) = (ic.dom(a), ic.cod(a));
                let (j, j2) = (jc.dom(b), jc.cod(b));
                let row_first = compose_functors(bd.transport(a, jc.id(j2)), bd.transport(ic.id(i), b)).unwrap();
                let col_first = compose_functors(bd.transport(ic.id(i2), b), bd.transport(a, jc.id(j))).unwrap();
                prop_assert_eq!(&row_first, bd.transport(a, b));
                prop_assert_eq!(&col_first, bd.transport(a, b));
            }
        }
        for j in jc.objects() {
            let col = bd.curry(Curry::FixJ(j)).unwrap();
            for i in ic.objects() {
                prop_assert_eq!(col.fiber(i), bd.fiber(i, j));
            }
            for a in ic.morphisms() {
                prop_assert_eq!(col.transport(a), bd.transport(a, jc.id(j)));
            }
        }
        for i in ic.objects() {
            let row = bd.curry(Curry::FixI(i)).unwrap();
            for b in jc.morphisms() {
                prop_assert_eq!(row.transport(b), bd.transport(ic.id(i), b));
            }
        }
    }

    #[test]
    fn hocolim_hom_cardinalities(seed in any::<u64>()) {
        let limits = corpus_limits();
        let opts = CorpusOptions { final_mode: FinalMode::Any, ..CorpusOptions::default() };
        let d = random_cat_diagram(&mut corpus::rng(seed), &opts, &limits).unwrap();
        let g = hocolim(&d, &limits).unwrap();
        let (c, index) = (g.cat(), d.index());
        prop_assert!(check_functor(g.projection()).is_ok());
        for f in c.morphisms() {
            prop_assert_eq!(g.projection().mor(f), g.morphism(f).alpha);
        }
        for s in c.objects() {
            for t in c.objects() {
                let (a, b) = (g.object(s), g.object(t));
                let want: usize = index
                    .hom(a.i, b.i)
                    .iter()
                    .map(|&alpha| d.fiber(b.i).hom(d.transport(alpha).ob(a.x), b.x).len())
                    .sum();
                prop_assert_eq!(c.hom(s, t).len(), want);
            }
        }
    }

    #[test]
    fn holim_families_pass_post_checks(seed in any::<u64>()) {
        let limits = corpus_limits();
        let opts = CorpusOptions { final_mode: FinalMode::Any, ..CorpusOptions::default() };
        let d = random_cat_diagram(&mut corpus::rng(seed), &opts, &limits).unwrap();
        let h = holim_explicit(&d, &limits).unwrap();
        let c = h.cat();
        for x in c.objects() {
            prop_assert!(check_holim_object(&d, h.object(x)).is_ok());
        }
        for f in c.morphisms() {
            prop_assert!(check_holim_morphism(&d, h.object(c.dom(f)), h.object(c.cod(f)), h.morphism(f)).is_ok());
        }
        for (g, f) in c.composable_pairs() {
            let comp = HolimMorphism {
                f: d.index()
                    .objects()
                    .map(|i| d.fiber(i).composite(h.morphism(g).f[i.idx()], h.morphism(f).f[i.idx()]))
                    .collect(),
            };
            let (x, z) = (h.object(c.dom(f)), h.object(c.cod(g)));
            prop_assert!(check_holim_morphism(&d, x, z, &comp).is_ok());
            prop_assert_eq!(h.morphism(c.composite(g, f)), &comp);
        }
        if d.index().object_count() <= 2 {
            let hp = holim_pullback(&d, &limits).unwrap();
            prop_assert_eq!(hp.cat().object_count(), c.object_count());
            prop_assert_eq!(hp.cat().morphism_count(), c.morphism_count());
        }
    }

    #[test]
    fn diagnostics_invariants(seed in any::<u64>()) {
        let c = fiber(seed);
        prop_assert_eq!(pi0(&c), pi0(&c.opposite()));
        if is_groupoid(&c) {
            for a in c.objects() {
                for b in c.objects() {
                    prop_assert_eq!(c.hom(a, b).is_empty(), c.hom(b, a).is_empty());
                }
            }
        }
        let nerve = nerve_counts(&c, 3).unwrap();
        for n in 0..=3 {
            prop_assert_eq!(nerve.chains[n], brute_chains(&c, n, false));
            prop_assert_eq!(nerve.nondegenerate[n], brute_chains(&c, n, true));
        }
    }
}

#[test]
fn default_caps_stop_blow_ups() {
    let i = Arc::new(FinCat::discrete(3).unwrap());
    let d = Arc::new(FinCat::discrete(5).unwrap());
    let err = functor_category(&i, &d, &Limits::default()).unwrap_err();
    assert!(matches!(err, catlim_core::Error::SizeCapExceeded { .. }));
}
