use super::{mor, ob, FinCat, Mor, Ob};
use crate::error::{Error, Result};

/// Named constructors for small categories.
#[derive(Clone, Debug)]
pub enum Standard {
    /// One object, one morphism.
    Terminal,
    /// `n` objects, identities only.
    Discrete(usize),
    /// The poset `0 -> 1 -> ... -> n`.
    Chain(usize),
    Opposite(FinCat),
    /// One-object category from a multiplication table; element 0 is the unit
    /// and `table[g][f]` is `g . f`.
    Monoid(Vec<Vec<usize>>),
}

pub fn standard_category(kind: Standard) -> Result<FinCat> {
    match kind {
        Standard::Terminal => FinCat::terminal(),
        Standard::Discrete(n) => FinCat::discrete(n),
        Standard::Chain(n) => FinCat::chain(n),
        Standard::Opposite(c) => Ok(c.opposite()),
        Standard::Monoid(table) => FinCat::monoid(&table),
    }
}

impl FinCat {
    pub fn terminal() -> Result<FinCat> {
        FinCat::from_fn(
            vec!["*".into()],
            vec![(Ob(0), Ob(0), "id_*".into())],
            vec![Mor(0)],
            |_, _| Some(Mor(0)),
        )
    }

    pub fn discrete(n: usize) -> Result<FinCat> {
        Self::discrete_labeled((0..n).map(|i| i.to_string()).collect())
    }

    pub fn discrete_labeled(labels: Vec<String>) -> Result<FinCat> {
        let mors = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (ob(i), ob(i), format!("id_{l}")))
            .collect();
        let ids = (0..labels.len()).map(mor).collect();
        FinCat::from_fn(labels, mors, ids, |g, _| Some(g))
    }

    pub fn chain(n: usize) -> Result<FinCat> {
        Self::poset(n + 1, |a, b| a <= b)
    }

    /// The preorder on `0..n` given by `leq`, which must be reflexive and
    /// transitive. Morphisms are listed in lexicographic `(dom, cod)` order.
    pub fn poset(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<FinCat> {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        Self::poset_labeled(labels, leq)
    }

    pub fn poset_labeled(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<FinCat> {
        let n = labels.len();
        for a in 0..n {
            if !leq(a, a) {
                return Err(Error::InvalidParameter(format!(
                    "relation is not reflexive at {a}"
                )));
            }
            for b in 0..n {
                for c in 0..n {
                    if leq(a, b) && leq(b, c) && !leq(a, c) {
                        return Err(Error::InvalidParameter(format!(
                            "relation is not transitive at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut index = vec![vec![None; n]; n];
        let mut mors = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    index[a][b] = Some(mor(mors.len()));
                    let name = if a == b {
                        format!("id_{}", labels[a])
                    } else {
                        format!("{}->{}", labels[a], labels[b])
                    };
                    mors.push((ob(a), ob(b), name));
                }
            }
        }
        let ends: Vec<(usize, usize)> = mors.iter().map(|(d, c, _)| (d.idx(), c.idx())).collect();
        let ids = (0..n).map(|a| index[a][a].unwrap()).collect();
        FinCat::from_fn(labels, mors, ids, |g, f| {
            let (a, _) = ends[f.idx()];
            let (_, c) = ends[g.idx()];
            index[a][c]
        })
    }

    pub fn monoid(table: &[Vec<usize>]) -> Result<FinCat> {
        let k = table.len();
        if k == 0 {
            return Err(Error::InvalidParameter("empty monoid table".into()));
        }
        if table
            .iter()
            .any(|row| row.len() != k || row.iter().any(|&v| v >= k))
        {
            return Err(Error::InvalidParameter(
                "monoid table is not a square table over its elements".into(),
            ));
        }
        let labels: Vec<String> = (0..k)
            .map(|i| if i == 0 { "1".into() } else { format!("m{i}") })
            .collect();
        let mors = labels.into_iter().map(|l| (Ob(0), Ob(0), l)).collect();
        FinCat::from_fn(vec!["*".into()], mors, vec![Mor(0)], |g, f| {
            Some(mor(table[g.idx()][f.idx()]))
        })
    }

    /// Same objects and morphisms with domain and codomain swapped.
    pub fn opposite(&self) -> FinCat {
        let mors = self
            .morphisms()
            .map(|m| (self.cod(m), self.dom(m), self.morphism_label(m).to_string()))
            .collect();
        let ids = self.objects().map(|x| self.id(x)).collect();
        FinCat::from_fn(self.object_labels.clone(), mors, ids, |g, f| {
            self.compose(f, g)
        })
        .expect("opposite of a valid category is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_counts() {
        let t = standard_category(Standard::Terminal).unwrap();
        assert_eq!((t.object_count(), t.morphism_count()), (1, 1));
    }

    #[test]
    fn discrete_counts() {
        let d = standard_category(Standard::Discrete(4)).unwrap();
        assert_eq!((d.object_count(), d.morphism_count()), (4, 4));
        assert!(d.morphisms().all(|m| d.is_identity(m)));
        assert_eq!(d.composable_pairs().count(), 4);
    }

    #[test]
    fn chain_counts() {
        let c = standard_category(Standard::Chain(2)).unwrap();
        assert_eq!((c.object_count(), c.morphism_count()), (3, 6));
    }

    #[test]
    fn opposite_swaps() {
        let c = FinCat::chain(2).unwrap();
        let op = standard_category(Standard::Opposite(c.clone())).unwrap();
        assert_eq!(op.object_count(), c.object_count());
        assert_eq!(op.morphism_count(), c.morphism_count());
        for m in c.morphisms() {
            assert_eq!((op.dom(m), op.cod(m)), (c.cod(m), c.dom(m)));
        }
        assert_eq!(op.opposite(), c);
    }

    #[test]
    fn non_associative_monoid_rejected() {
        // z.z = w, z.w = z, w.z = w, w.w = w
        let table = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 2, 2]];
        assert!(matches!(
            FinCat::monoid(&table),
            Err(Error::AssociativityViolation { .. })
        ));
    }

    #[test]
    fn bad_unit_rejected() {
        let table = vec![vec![0, 1], vec![0, 1]];
        assert!(matches!(
            FinCat::monoid(&table),
            Err(Error::IdentityViolation { .. })
        ));
    }

    #[test]
    fn non_transitive_relation_rejected() {
        let r = FinCat::poset(3, |a, b| a == b || (a, b) == (0, 1) || (a, b) == (1, 2));
        assert!(matches!(r, Err(Error::InvalidParameter(_))));
    }
}
