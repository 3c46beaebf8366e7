//! The nc calculus: perpendicular sets, rigidity, weak cotorsion pairs and the
//! classification of self-paired sets.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::hom::HomModel;
use crate::report::CheckReport;
use crate::set::ObjectSet;

/// Objects with vanishing `ext` against every member of `set`, in both directions.
pub fn nc(set: ObjectSet, model: &HomModel) -> ObjectSet {
    set.iter()
        .fold(model.all(), |acc, s| acc.intersection(model.compatible(s)))
}

pub fn ncnc(set: ObjectSet, model: &HomModel) -> ObjectSet {
    nc(nc(set, model), model)
}

/// `ext` vanishes on every ordered pair of members, diagonal included.
pub fn is_rigid(set: ObjectSet, model: &HomModel) -> bool {
    set.iter().all(|a| set.is_subset(model.compatible(a)))
}

pub fn is_closed(set: ObjectSet, model: &HomModel) -> bool {
    ncnc(set, model) == set
}

pub fn is_weak_cotorsion(x: ObjectSet, y: ObjectSet, model: &HomModel) -> bool {
    nc(y, model) == x && nc(x, model) == y
}

pub fn core(x: ObjectSet, y: ObjectSet) -> ObjectSet {
    x.intersection(y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeakCotorsionPair {
    pub x: ObjectSet,
    pub y: ObjectSet,
    pub core: ObjectSet,
}

impl WeakCotorsionPair {
    /// The pair generated by an ncnc-closed `x`.
    pub fn from_closed(x: ObjectSet, model: &HomModel) -> Self {
        let y = nc(x, model);
        WeakCotorsionPair {
            x,
            y,
            core: core(x, y),
        }
    }

    pub fn swapped(self) -> Self {
        WeakCotorsionPair {
            x: self.y,
            y: self.x,
            core: self.core,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SelfPairClass {
    ClusterTilting,
    MaximalRigidOnly,
    NotSelfDual,
}

/// Label used in pair listings: self-paired sets get their [`SelfPairClass`], the rest are `Mixed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairClass {
    ClusterTilting,
    MaximalRigidOnly,
    Mixed,
}

/// Size of a largest rigid set, by branch and bound over the compatibility graph.
pub fn max_rigid_cardinality(model: &HomModel) -> usize {
    max_rigid_set(model).len()
}

/// One rigid set of maximum size; the lexicographically first one the search meets.
pub fn max_rigid_set(model: &HomModel) -> ObjectSet {
    fn search(model: &HomModel, chosen: ObjectSet, cands: ObjectSet, best: &mut ObjectSet) {
        if chosen.len() + cands.len() <= best.len() {
            return;
        }
        let Some(v) = cands.first() else {
            *best = chosen;
            return;
        };
        let rest = cands.difference(ObjectSet::singleton(v));
        search(
            model,
            chosen.with(v),
            rest.intersection(model.compatible(v)),
            best,
        );
        search(model, chosen, rest, best);
    }
    let self_rigid: ObjectSet = (0..model.len()).filter(|&i| !model.ext(i, i)).collect();
    let mut best = ObjectSet::EMPTY;
    if !self_rigid.is_empty() {
        search(model, ObjectSet::EMPTY, self_rigid, &mut best);
    }
    best
}

/// Rigid and of maximum possible size.
pub fn is_cluster_tilting(set: ObjectSet, model: &HomModel) -> bool {
    is_rigid(set, model) && set.len() == max_rigid_cardinality(model)
}

pub fn classify_self_pair(set: ObjectSet, model: &HomModel) -> SelfPairClass {
    if nc(set, model) != set {
        SelfPairClass::NotSelfDual
    } else if is_cluster_tilting(set, model) {
        SelfPairClass::ClusterTilting
    } else {
        SelfPairClass::MaximalRigidOnly
    }
}

/// Like [`classify_self_pair`] with the maximum rigid size precomputed.
pub fn pair_class(pair: &WeakCotorsionPair, max_rigid: usize) -> PairClass {
    if pair.x != pair.y {
        PairClass::Mixed
    } else if pair.x.len() == max_rigid {
        PairClass::ClusterTilting
    } else {
        PairClass::MaximalRigidOnly
    }
}

/// Table of `nc(S)` for every subset `S`, indexed by bitmask.
pub(crate) fn nc_table(model: &HomModel) -> Vec<u64> {
    let n = model.len();
    let mut table = vec![0u64; 1usize << n];
    table[0] = model.all().bits();
    for s in 1..table.len() {
        let low = s.trailing_zeros() as usize;
        table[s] = table[s & (s - 1)] & model.compatible(low).bits();
    }
    table
}

/// Largest model [`check_pair_equivalence`] accepts.
pub const EQUIVALENCE_MAX_OBJECTS: usize = 20;
const LITERAL_MAX_OBJECTS: usize = 12;

/// For every pair of subsets `(X, Y)`, the three nc characterizations of a weak
/// cotorsion pair agree and the relation is symmetric in `(X, Y)`:
///
/// * `X = nc Y` and `Y = nc X`
/// * `Y = nc X` and `X = ncnc X`
/// * `X = nc Y` and `Y = ncnc Y`
///
/// Up to 12 objects every pair is evaluated literally. Beyond that only the
/// pairs `(X, nc X)` and `(nc Y, Y)` are evaluated: each condition (and its
/// swap) contains `Y = nc X` or `X = nc Y` as a conjunct, so all of them are
/// false on every other pair and agreement there is automatic.
pub fn check_pair_equivalence(model: &HomModel) -> Result<CheckReport> {
    let n = model.len();
    if n > EQUIVALENCE_MAX_OBJECTS {
        return Err(Error::Capacity(format!(
            "pair equivalence check enumerates all subset pairs; {n} objects exceeds {EQUIVALENCE_MAX_OBJECTS}"
        )));
    }
    Ok(equivalence_check(model, n <= LITERAL_MAX_OBJECTS))
}

fn equivalence_check(model: &HomModel, literal: bool) -> CheckReport {
    let n = model.len();
    let table = nc_table(model);
    let nc_of = |s: u64| table[s as usize];
    let verdict = |x: u64, y: u64| -> Option<[bool; 4]> {
        let c2 = x == nc_of(y) && y == nc_of(x);
        let c4 = y == nc_of(x) && x == nc_of(nc_of(x));
        let c5 = x == nc_of(y) && y == nc_of(nc_of(y));
        let swapped = y == nc_of(x) && x == nc_of(y);
        (c2 != c4 || c2 != c5 || c2 != swapped).then_some([c2, c4, c5, swapped])
    };
    let size = 1u64 << n;
    let total = size * size;
    let first = if literal {
        (0..size)
            .into_par_iter()
            .find_map_first(|x| (0..size).find_map(|y| verdict(x, y).map(|v| (x, y, v))))
    } else {
        let mut candidates: Vec<(u64, u64)> = (0..size)
            .flat_map(|s| [(s, nc_of(s)), (nc_of(s), s)])
            .collect();
        candidates.par_sort_unstable();
        candidates.dedup();
        candidates
            .par_iter()
            .find_map_first(|&(x, y)| verdict(x, y).map(|v| (x, y, v)))
    };
    match first {
        None => CheckReport::pass("3.14", total),
        Some((x, y, [c2, c4, c5, swapped])) => CheckReport::fail(
            "3.14",
            total,
            json!({
                "x": model.set_labels(ObjectSet::from_bits(x)),
                "y": model.set_labels(ObjectSet::from_bits(y)),
                "nc_pair": c2,
                "y_nc_x_closed": c4,
                "x_nc_y_closed": c5,
                "swapped": swapped,
            }),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::four_angulated_hexagon;
    use crate::model::ModelParams;
    use proptest::prelude::*;

    fn model(n: u32, d: u32) -> HomModel {
        HomModel::type_a(ModelParams::new(n, d).unwrap()).unwrap()
    }

    fn set(m: &HomModel, s: &str) -> ObjectSet {
        m.parse_set(s).unwrap()
    }

    #[test]
    fn nc_examples() {
        let m = model(2, 2);
        assert_eq!(
            m.format_set(nc(set(&m, "135"), &m)),
            "1-3-5,1-3-6,1-4-6,2-5-7,3-5-7"
        );
        assert_eq!(nc(ObjectSet::EMPTY, &m), m.all());
        assert_eq!(
            m.format_set(nc(set(&m, "135,246"), &m)),
            "1-3-6,1-4-6,2-5-7"
        );
    }

    #[test]
    fn rigidity_examples() {
        let t = model(2, 3);
        assert!(is_rigid(set(&t, "1357,1468,2479"), &t));
        let fx = four_angulated_hexagon();
        assert!(!is_rigid(set(&fx, "13"), &fx));
        assert!(is_rigid(ObjectSet::EMPTY, &fx));
    }

    #[test]
    fn closure_examples() {
        let m = model(2, 2);
        assert_eq!(ncnc(set(&m, "135"), &m), set(&m, "135"));
        // Every diagonal of (2,2) has an intertwining partner.
        assert!((0..m.len()).all(|i| !m.ext_row(i).is_empty()));
        assert_eq!(ncnc(ObjectSet::EMPTY, &m), ObjectSet::EMPTY);
        assert_eq!(ncnc(m.all(), &m), m.all());
    }

    #[test]
    fn weak_cotorsion_examples() {
        let m = model(2, 2);
        assert!(is_weak_cotorsion(
            set(&m, "135"),
            set(&m, "135,136,146,257,357"),
            &m
        ));
        assert!(is_weak_cotorsion(m.all(), ObjectSet::EMPTY, &m));
        assert!(is_weak_cotorsion(ObjectSet::EMPTY, m.all(), &m));
        assert!(!is_weak_cotorsion(set(&m, "135"), set(&m, "136"), &m));
    }

    #[test]
    fn core_examples() {
        let m = model(2, 2);
        assert_eq!(
            core(set(&m, "135"), set(&m, "135,136,146,257,357")),
            set(&m, "135")
        );
        assert_eq!(core(m.all(), ObjectSet::EMPTY), ObjectSet::EMPTY);
        let ct = set(&m, "135,136,146");
        assert_eq!(core(ct, ct), ct);
    }

    #[test]
    fn max_rigid_examples() {
        assert_eq!(max_rigid_cardinality(&model(2, 2)), 3);
        assert_eq!(max_rigid_cardinality(&model(2, 3)), 4);
        assert_eq!(max_rigid_cardinality(&model(1, 1)), 1);
        assert_eq!(max_rigid_cardinality(&four_angulated_hexagon()), 0);
    }

    #[test]
    fn max_rigid_matches_brute_force() {
        for (n, d) in [
            (1, 1),
            (2, 1),
            (3, 1),
            (4, 1),
            (2, 2),
            (3, 2),
            (2, 3),
            (1, 4),
        ] {
            let m = model(n, d);
            let brute = m
                .all()
                .subsets()
                .filter(|&s| is_rigid(s, &m))
                .map(ObjectSet::len)
                .max()
                .unwrap();
            assert_eq!(max_rigid_cardinality(&m), brute, "({n},{d})");
            assert!(is_rigid(max_rigid_set(&m), &m));
        }
    }

    #[test]
    fn cluster_tilting_examples() {
        let t = model(2, 3);
        assert!(is_cluster_tilting(set(&t, "1357,1358,1368,1468"), &t));
        assert!(!is_cluster_tilting(set(&t, "1357,1468,2479"), &t));
        let m = model(2, 2);
        assert!(is_cluster_tilting(set(&m, "135,136,146"), &m));
    }

    #[test]
    fn classification_examples() {
        let t = model(2, 3);
        assert_eq!(
            classify_self_pair(set(&t, "1357,1358,1368,1468"), &t),
            SelfPairClass::ClusterTilting
        );
        let big_m = set(&t, "1357,1468,2479");
        assert_eq!(
            classify_self_pair(big_m, &t),
            SelfPairClass::MaximalRigidOnly
        );
        assert!(is_weak_cotorsion(big_m, big_m, &t));
        let m = model(2, 2);
        assert_eq!(
            classify_self_pair(set(&m, "135"), &m),
            SelfPairClass::NotSelfDual
        );
    }

    #[test]
    fn pair_equivalence_examples() {
        for m in [model(2, 2), model(2, 3), four_angulated_hexagon()] {
            let r = check_pair_equivalence(&m).unwrap();
            assert!(r.passed, "{r:?}");
        }
        assert_eq!(
            check_pair_equivalence(&model(2, 2))
                .unwrap()
                .instances_checked,
            1 << 14
        );
        // (3,3): m = 10, 25 objects.
        assert!(matches!(
            check_pair_equivalence(&model(3, 3)),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn reduced_and_literal_equivalence_checks_agree() {
        for m in [
            model(1, 1),
            model(3, 1),
            model(2, 2),
            four_angulated_hexagon(),
        ] {
            let literal = equivalence_check(&m, true);
            let reduced = equivalence_check(&m, false);
            assert_eq!(literal, reduced);
            assert!(literal.passed);
        }
    }

    fn models() -> Vec<HomModel> {
        vec![
            model(1, 1),
            model(3, 1),
            model(4, 1),
            model(2, 2),
            model(2, 3),
            model(3, 2),
        ]
    }

    proptest! {
        #[test]
        fn nc_is_antitone(which in 0usize..6, a in any::<u64>(), b in any::<u64>()) {
            let m = &models()[which];
            let s = ObjectSet::from_bits(a).intersection(m.all());
            let t = s.union(ObjectSet::from_bits(b).intersection(m.all()));
            prop_assert!(nc(t, m).is_subset(nc(s, m)));
        }

        #[test]
        fn ncnc_is_a_closure(which in 0usize..6, a in any::<u64>()) {
            let m = &models()[which];
            let s = ObjectSet::from_bits(a).intersection(m.all());
            let c = ncnc(s, m);
            prop_assert!(s.is_subset(c));
            prop_assert_eq!(ncnc(c, m), c);
            prop_assert_eq!(nc(c, m), nc(s, m));
        }

        #[test]
        fn self_fixed_sets_are_rigid(which in 0usize..6, a in any::<u64>()) {
            let m = &models()[which];
            let s = ObjectSet::from_bits(a).intersection(m.all());
            if nc(s, m) == s {
                prop_assert!(is_rigid(s, m));
            }
        }

        #[test]
        fn weak_cotorsion_is_symmetric(which in 0usize..6, a in any::<u64>(), b in any::<u64>()) {
            let m = &models()[which];
            let x = ObjectSet::from_bits(a).intersection(m.all());
            let y = ObjectSet::from_bits(b).intersection(m.all());
            prop_assert_eq!(is_weak_cotorsion(x, y, m), is_weak_cotorsion(y, x, m));
            let y = nc(x, m);
            prop_assert_eq!(is_weak_cotorsion(x, y, m), is_weak_cotorsion(y, x, m));
        }
    }

    #[test]
    fn nc_table_matches_direct_nc() {
        let m = model(3, 1);
        let table = nc_table(&m);
        for s in m.all().subsets() {
            assert_eq!(table[s.bits() as usize], nc(s, &m).bits());
        }
    }
}
