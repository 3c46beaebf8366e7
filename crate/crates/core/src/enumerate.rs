//! Enumeration of weak cotorsion pairs as the fixpoints of `ncnc`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hom::HomModel;
use crate::pairs::{ncnc, WeakCotorsionPair};
use crate::set::ObjectSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Test every subset; limited to [`BRUTE_FORCE_MAX_OBJECTS`].
    BruteForce,
    /// Ganter's next-closure in lectic order over the canonical object order.
    NextClosure,
}

pub const BRUTE_FORCE_MAX_OBJECTS: usize = 25;

/// Every ordered weak cotorsion pair `(X, nc X)`, sorted canonically by `X`.
pub fn enumerate_weak_cotorsion_pairs(
    model: &HomModel,
    strategy: Strategy,
) -> Result<Vec<WeakCotorsionPair>> {
    let mut closed = match strategy {
        Strategy::BruteForce => closed_sets_brute_force(model)?,
        Strategy::NextClosure => closed_sets_next_closure(model),
    };
    closed.par_sort_unstable();
    Ok(closed
        .into_iter()
        .map(|x| WeakCotorsionPair::from_closed(x, model))
        .collect())
}

pub fn closed_sets_brute_force(model: &HomModel) -> Result<Vec<ObjectSet>> {
    let n = model.len();
    if n > BRUTE_FORCE_MAX_OBJECTS {
        return Err(Error::Capacity(format!(
            "brute force over 2^{n} subsets exceeds the {BRUTE_FORCE_MAX_OBJECTS}-object limit; use next-closure"
        )));
    }
    Ok((0..1u64 << n)
        .into_par_iter()
        .map(ObjectSet::from_bits)
        .filter(|&s| ncnc(s, model) == s)
        .collect())
}

/// Closed sets in lectic order.
pub fn closed_sets_next_closure(model: &HomModel) -> Vec<ObjectSet> {
    NextClosure::new(model).collect()
}

/// Iterator over `ncnc`-closed sets in lectic order, starting from `ncnc(∅)`.
pub struct NextClosure<'a> {
    model: &'a HomModel,
    next: Option<ObjectSet>,
}

impl<'a> NextClosure<'a> {
    pub fn new(model: &'a HomModel) -> Self {
        NextClosure {
            model,
            next: Some(ncnc(ObjectSet::EMPTY, model)),
        }
    }

    fn successor(&self, current: ObjectSet) -> Option<ObjectSet> {
        for i in (0..self.model.len()).rev() {
            if current.contains(i) {
                continue;
            }
            let candidate = ncnc(current.below(i).with(i), self.model);
            if candidate.difference(current).below(i).is_empty() {
                return Some(candidate);
            }
        }
        None
    }
}

impl Iterator for NextClosure<'_> {
    type Item = ObjectSet;

    fn next(&mut self) -> Option<ObjectSet> {
        let current = self.next?;
        self.next = self.successor(current);
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::four_angulated_hexagon;
    use crate::model::ModelParams;

    fn model(n: u32, d: u32) -> HomModel {
        HomModel::type_a(ModelParams::new(n, d).unwrap()).unwrap()
    }

    #[test]
    fn square_model_pairs() {
        let m = model(1, 1);
        let pairs = enumerate_weak_cotorsion_pairs(&m, Strategy::BruteForce).unwrap();
        let shown: Vec<(String, String)> = pairs
            .iter()
            .map(|p| (m.format_set(p.x), m.format_set(p.y)))
            .collect();
        assert_eq!(
            shown,
            [
                ("".to_string(), "1-3,2-4".to_string()),
                ("1-3".to_string(), "1-3".to_string()),
                ("1-3,2-4".to_string(), "".to_string()),
                ("2-4".to_string(), "2-4".to_string()),
            ]
        );
    }

    #[test]
    fn fixture_has_only_trivial_pairs() {
        let fx = four_angulated_hexagon();
        for strategy in [Strategy::BruteForce, Strategy::NextClosure] {
            let pairs = enumerate_weak_cotorsion_pairs(&fx, strategy).unwrap();
            let xy: Vec<_> = pairs.iter().map(|p| (p.x, p.y)).collect();
            assert_eq!(
                xy,
                [(ObjectSet::EMPTY, fx.all()), (fx.all(), ObjectSet::EMPTY)]
            );
        }
    }

    #[test]
    fn strategies_agree() {
        for (n, d) in [
            (1, 1),
            (2, 1),
            (3, 1),
            (4, 1),
            (2, 2),
            (3, 2),
            (2, 3),
            (1, 5),
            (2, 5),
        ] {
            let m = model(n, d);
            assert_eq!(
                enumerate_weak_cotorsion_pairs(&m, Strategy::BruteForce).unwrap(),
                enumerate_weak_cotorsion_pairs(&m, Strategy::NextClosure).unwrap(),
                "({n},{d})"
            );
        }
    }

    #[test]
    fn next_closure_is_lectic() {
        let m = model(3, 1);
        let sets = closed_sets_next_closure(&m);
        // Lectic order: compare bitmasks read with index 0 as the most significant position.
        let key = |s: &ObjectSet| s.bits().reverse_bits();
        assert!(sets.windows(2).all(|w| key(&w[0]) < key(&w[1])));
    }

    #[test]
    fn frozen_pair_counts() {
        // Independent brute-force counts of ncnc-closed sets.
        for (n, d, count) in [
            (1, 1, 4),
            (2, 1, 17),
            (3, 1, 82),
            (4, 1, 422),
            (2, 2, 51),
            (2, 3, 158),
            (3, 2, 1646),
            (2, 4, 486),
        ] {
            let m = model(n, d);
            assert_eq!(closed_sets_next_closure(&m).len(), count, "({n},{d})");
        }
    }

    #[test]
    fn brute_force_capacity_guard() {
        // (4,2) has 30 objects.
        let big = model(4, 2);
        assert!(matches!(
            enumerate_weak_cotorsion_pairs(&big, Strategy::BruteForce),
            Err(Error::Capacity(_))
        ));
    }
}
