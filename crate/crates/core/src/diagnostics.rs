//! Finite probes: truncated nerve counts, groupoid test, initial and final
//! objects, connected components.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{FinCat, Mor, Ob};

/// Chain counts of the nerve in dimensions `0..=max_dim`. `chains[n]` counts
/// composable strings of `n` morphisms, `nondegenerate[n]` those without an
/// identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NerveTruncation {
    pub max_dim: usize,
    pub chains: Vec<u64>,
    pub nondegenerate: Vec<u64>,
}

fn count_chains(c: &FinCat, k: usize, skip_identities: bool) -> Result<Vec<u64>> {
    let overflow = || Error::SizeCapExceeded {
        stage: "nerve".into(),
        detail: format!("chain count overflows in dimension <= {k}"),
    };
    // ending[x] = number of chains of the current length ending at x
    let mut ending = vec![1u64; c.object_count()];
    let mut out = vec![c.object_count() as u64];
    for _ in 0..k {
        let mut next = vec![0u64; c.object_count()];
        for f in c.morphisms() {
            if skip_identities && c.is_identity(f) {
                continue;
            }
            let slot = &mut next[c.cod(f).idx()];
            *slot = slot
                .checked_add(ending[c.dom(f).idx()])
                .ok_or_else(overflow)?;
        }
        let total = next
            .iter()
            .try_fold(0u64, |acc, &n| acc.checked_add(n))
            .ok_or_else(overflow)?;
        out.push(total);
        ending = next;
    }
    Ok(out)
}

pub fn nerve_counts(c: &FinCat, k: usize) -> Result<NerveTruncation> {
    Ok(NerveTruncation {
        max_dim: k,
        chains: count_chains(c, k, false)?,
        nondegenerate: count_chains(c, k, true)?,
    })
}

/// First morphism without a two-sided inverse, if any.
pub fn non_invertible(c: &FinCat) -> Option<Mor> {
    c.morphisms().find(|&f| {
        let (a, b) = (c.dom(f), c.cod(f));
        !c.hom(b, a)
            .iter()
            .any(|&g| c.composite(g, f) == c.id(a) && c.composite(f, g) == c.id(b))
    })
}

pub fn is_groupoid(c: &FinCat) -> bool {
    non_invertible(c).is_none()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InitialFinal {
    pub initial: Option<Ob>,
    #[serde(rename = "final")]
    pub terminal: Option<Ob>,
}

/// The first initial and the first final object in canonical order.
pub fn initial_final(c: &FinCat) -> InitialFinal {
    InitialFinal {
        initial: c
            .objects()
            .find(|&a| c.objects().all(|b| c.hom(a, b).len() == 1)),
        terminal: c
            .objects()
            .find(|&b| c.objects().all(|a| c.hom(a, b).len() == 1)),
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Connected components under zigzags, each sorted, ordered by least member.
pub fn pi0(c: &FinCat) -> Vec<Vec<Ob>> {
    let mut parent: Vec<usize> = (0..c.object_count()).collect();
    for f in c.morphisms() {
        let (a, b) = (
            find(&mut parent, c.dom(f).idx()),
            find(&mut parent, c.cod(f).idx()),
        );
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut classes: Vec<Vec<Ob>> = Vec::new();
    let mut slot = vec![usize::MAX; c.object_count()];
    for x in c.objects() {
        let r = find(&mut parent, x.idx());
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(x);
    }
    classes
}

/// The serializable summary used by the CLI, with labels in place of indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagnosticReport {
    pub groupoid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial: Option<String>,
    #[serde(rename = "final", skip_serializing_if = "Option::is_none")]
    pub terminal: Option<String>,
    pub pi0: Vec<Vec<String>>,
    pub nerve: NerveTruncation,
}

pub fn diagnose(c: &FinCat, nerve_dim: usize) -> Result<DiagnosticReport> {
    let witness = non_invertible(c);
    let ends = initial_final(c);
    let label = |x: Ob| c.object_label(x).to_string();
    Ok(DiagnosticReport {
        groupoid: witness.is_none(),
        witness: witness.map(|f| c.morphism_label(f).to_string()),
        initial: ends.initial.map(label),
        terminal: ends.terminal.map(label),
        pi0: pi0(c)
            .into_iter()
            .map(|cls| cls.into_iter().map(label).collect())
            .collect(),
        nerve: nerve_counts(c, nerve_dim)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // independent recursive walk over all strings of morphisms
    fn walk(c: &FinCat, n: usize, skip_identities: bool) -> u64 {
        fn go(c: &FinCat, at: Ob, left: usize, skip: bool) -> u64 {
            if left == 0 {
                return 1;
            }
            c.outgoing(at)
                .iter()
                .filter(|&&f| !(skip && c.is_identity(f)))
                .map(|&f| go(c, c.cod(f), left - 1, skip))
                .sum()
        }
        c.objects().map(|x| go(c, x, n, skip_identities)).sum()
    }

    #[test]
    fn nerve_of_terminal_and_arrow() {
        let t = FinCat::terminal().unwrap();
        assert_eq!(nerve_counts(&t, 3).unwrap().nondegenerate, vec![1, 0, 0, 0]);
        let a = FinCat::chain(1).unwrap();
        let n = nerve_counts(&a, 2).unwrap();
        assert_eq!(n.nondegenerate, vec![2, 1, 0]);
        assert_eq!(n.chains, vec![2, 3, 4]);
    }

    #[test]
    fn nerve_matches_walk() {
        let m = FinCat::monoid(&[vec![0, 1], vec![1, 1]]).unwrap();
        let c = FinCat::chain(3).unwrap();
        for cat in [&m, &c] {
            let n = nerve_counts(cat, 3).unwrap();
            for d in 0..=3 {
                assert_eq!(n.chains[d], walk(cat, d, false));
                assert_eq!(n.nondegenerate[d], walk(cat, d, true));
            }
        }
    }

    #[test]
    fn groupoid_probe() {
        assert!(is_groupoid(&FinCat::discrete(3).unwrap()));
        let a = FinCat::chain(1).unwrap();
        assert_eq!(non_invertible(&a), Some(Mor(1)));
        let z2 = FinCat::monoid(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(is_groupoid(&z2));
    }

    #[test]
    fn ends_of_simple_categories() {
        let c = FinCat::chain(2).unwrap();
        assert_eq!(
            initial_final(&c),
            InitialFinal {
                initial: Some(Ob(0)),
                terminal: Some(Ob(2)),
            }
        );
        let d = FinCat::discrete(2).unwrap();
        assert_eq!(
            initial_final(&d),
            InitialFinal {
                initial: None,
                terminal: None
            }
        );
    }

    #[test]
    fn components() {
        assert_eq!(pi0(&FinCat::discrete(3).unwrap()).len(), 3);
        assert_eq!(pi0(&FinCat::chain(2).unwrap()).len(), 1);
        // 0 <- 1 -> 2 and an isolated 3
        let v = FinCat::poset(4, |a, b| a == b || (a == 1 && b != 3)).unwrap();
        assert_eq!(pi0(&v), vec![vec![Ob(0), Ob(1), Ob(2)], vec![Ob(3)]]);
        assert_eq!(pi0(&v.opposite()), pi0(&v));
    }

    #[test]
    fn overflow_is_a_cap() {
        let m = FinCat::monoid(&[vec![0, 1], vec![1, 1]]).unwrap();
        assert!(matches!(
            nerve_counts(&m, 70),
            Err(Error::SizeCapExceeded { .. })
        ));
    }
}
