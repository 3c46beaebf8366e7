//! The subfactor `Z/D` of a polygon model, `Z = nc(D)`, realized as a
//! product of smaller polygon models, one per cell of the polygon cut along `D`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::enumerate::{enumerate_weak_cotorsion_pairs, Strategy};
use crate::error::{Error, Result};
use crate::hom::{ExplicitModelFile, HomModel};
use crate::model::{Diagonal, DiagonalSet, ModelParams};
use crate::mutation::{CellDecomposition, MutationContext};
use crate::pairs::{is_weak_cotorsion, nc};
use crate::report::CheckReport;
use crate::set::ObjectSet;

/// Largest polygon on which [`check_subfactor_bijection`] runs.
pub const SUBFACTOR_MAX_VERTICES: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubfactorObject {
    /// Index in the parent model.
    pub parent: usize,
    /// Index into [`SubfactorModel::cells`].
    pub cell: usize,
    /// The diagonal after renumbering the cell's vertices `1..=k`.
    pub local: Diagonal,
}

#[derive(Debug, Clone)]
pub struct SubfactorModel {
    parent: HomModel,
    dset: ObjectSet,
    cells: CellDecomposition,
    /// Local polygon model of each cell; `None` for triangles.
    local_params: Vec<Option<ModelParams>>,
    objects: Vec<SubfactorObject>,
}

impl SubfactorModel {
    pub fn build(params: ModelParams, dset: &DiagonalSet) -> Result<Self> {
        if params.d() != 1 {
            return Err(Error::Unsupported(format!(
                "subfactor models need d = 1, got d = {}",
                params.d()
            )));
        }
        let parent = HomModel::type_a(params)?;
        let dmask = parent.set_from_diagonals(dset)?;
        Self::from_parent(parent, dmask)
    }

    pub fn from_parent(parent: HomModel, dset: ObjectSet) -> Result<Self> {
        let (cells, z) = {
            let ctx = MutationContext::new(&parent, dset)?;
            (ctx.cells()?, ctx.z())
        };
        let local_params = cells
            .cells()
            .iter()
            .map(|c| match c.len() {
                0..=3 => Ok(None),
                k => ModelParams::polygon(k as u32).map(Some),
            })
            .collect::<Result<Vec<_>>>()?;
        let objects = z
            .difference(dset)
            .iter()
            .map(|u| {
                let d = &parent.diagonals()[u];
                let cell = cells
                    .cell_of(d)
                    .expect("every free diagonal lies in exactly one cell");
                let verts = &cells.cells()[cell];
                let renumber = |v: u32| verts.iter().position(|&x| x == v).unwrap() as u32 + 1;
                let local = Diagonal::new(
                    d.vertices().iter().map(|&v| renumber(v)).collect(),
                    local_params[cell]
                        .as_ref()
                        .expect("cells with chords have >= 4 vertices"),
                )
                .expect("renumbering preserves non-adjacency");
                SubfactorObject {
                    parent: u,
                    cell,
                    local,
                }
            })
            .collect();
        Ok(SubfactorModel {
            parent,
            dset,
            cells,
            local_params,
            objects,
        })
    }

    pub fn parent(&self) -> &HomModel {
        &self.parent
    }

    pub fn dset(&self) -> ObjectSet {
        self.dset
    }

    pub fn cells(&self) -> &[Vec<u32>] {
        self.cells.cells()
    }

    pub fn local_params(&self, cell: usize) -> Option<&ModelParams> {
        self.local_params[cell].as_ref()
    }

    /// Objects of `Z \ D` in parent order.
    pub fn objects(&self) -> &[SubfactorObject] {
        &self.objects
    }

    fn position(&self, parent: usize) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o.parent == parent)
            .ok_or_else(|| {
                Error::Domain(format!(
                    "{} is not an object of Z \\ D",
                    self.parent.label(parent)
                ))
            })
    }

    /// Subfactor object index of a parent diagonal.
    pub fn local_index(&self, d: &Diagonal) -> Result<usize> {
        let u = self
            .parent
            .index_of_diagonal(d)
            .ok_or_else(|| Error::UnknownObject(d.to_string()))?;
        self.position(u)
    }

    /// `ext` in `Z/D`: crossing of the local images when both lie in one cell, else zero.
    pub fn local_ext(&self, u: &Diagonal, v: &Diagonal) -> Result<bool> {
        let a = &self.objects[self.local_index(u)?];
        let b = &self.objects[self.local_index(v)?];
        Ok(a.cell == b.cell && a.local.ext(&b.local))
    }

    /// Per-cell `Σ` (local rotation), as a permutation of subfactor objects.
    fn local_shift(&self) -> Vec<usize> {
        self.objects
            .iter()
            .map(|o| {
                let p = self.local_params[o.cell].as_ref().unwrap();
                let target = o.local.shift(p, 1);
                self.objects
                    .iter()
                    .position(|x| x.cell == o.cell && x.local == target)
                    .unwrap()
            })
            .collect()
    }

    /// The extensional model of `Z/D`: objects of `Z \ D`, `ext` from [`Self::local_ext`].
    pub fn to_hom_model(&self) -> HomModel {
        let n = self.objects.len();
        let ext = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let (a, b) = (&self.objects[i], &self.objects[j]);
                        a.cell == b.cell && a.local.ext(&b.local)
                    })
                    .collect()
            })
            .collect();
        HomModel::explicit(ExplicitModelFile {
            d: 1,
            objects: self
                .objects
                .iter()
                .map(|o| self.parent.label(o.parent).to_string())
                .collect(),
            ext,
            shift: self.local_shift(),
        })
        .expect("subfactor table is well formed")
    }

    /// Subfactor object set to parent object set.
    pub fn lift(&self, set: ObjectSet) -> ObjectSet {
        set.iter().map(|i| self.objects[i].parent).collect()
    }

    /// Parent object set (inside `Z \ D`) to subfactor object set.
    pub fn restrict(&self, set: ObjectSet) -> ObjectSet {
        self.objects
            .iter()
            .enumerate()
            .filter(|(_, o)| set.contains(o.parent))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn to_json(&self) -> SubfactorJson {
        let params = self.parent.params().expect("subfactor parent is type A");
        SubfactorJson {
            parent: ParamsJson {
                n: params.n(),
                d: params.d(),
            },
            dset: self.parent.set_labels(self.dset),
            cells: self.cells.cells().to_vec(),
            objects: self
                .objects
                .iter()
                .map(|o| SubfactorObjectJson {
                    parent: self.parent.label(o.parent).to_string(),
                    cell: o.cell,
                    local: o.local.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub n: u32,
    pub d: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubfactorObjectJson {
    pub parent: String,
    pub cell: usize,
    pub local: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubfactorJson {
    pub parent: ParamsJson,
    pub dset: Vec<String>,
    pub cells: Vec<Vec<u32>>,
    pub objects: Vec<SubfactorObjectJson>,
}

/// Subfactor pairs assembled cell by cell from independent local polygon models.
fn product_pairs(sub: &SubfactorModel) -> Result<BTreeSet<(ObjectSet, ObjectSet)>> {
    let mut acc: Vec<(ObjectSet, ObjectSet)> = vec![(ObjectSet::EMPTY, ObjectSet::EMPTY)];
    for (cell, params) in sub.local_params.iter().enumerate() {
        let Some(params) = params else { continue };
        let local = HomModel::type_a(*params)?;
        // Local diagonal index -> subfactor object index.
        let embed: Vec<usize> = local
            .diagonals()
            .iter()
            .map(|ld| {
                sub.objects
                    .iter()
                    .position(|o| o.cell == cell && &o.local == ld)
                    .expect("every local diagonal comes from a parent diagonal")
            })
            .collect();
        let to_sub = |s: ObjectSet| s.iter().map(|i| embed[i]).collect::<ObjectSet>();
        let local_pairs = enumerate_weak_cotorsion_pairs(&local, Strategy::BruteForce)?;
        acc = acc
            .iter()
            .flat_map(|&(x, y)| {
                local_pairs
                    .iter()
                    .map(move |p| (x.union(to_sub(p.x)), y.union(to_sub(p.y))))
            })
            .collect();
    }
    Ok(acc.into_iter().collect())
}

/// Weak cotorsion pairs of the parent whose core contains `D` correspond,
/// via `(X, Y) ↦ (X \ D, Y \ D)`, bijectively to weak cotorsion pairs of `Z/D`.
///
/// The subfactor side is computed twice, by direct enumeration over
/// [`SubfactorModel::local_ext`] and as a product of per-cell pair lists, and
/// the two must agree before the map is checked.
pub fn check_subfactor_bijection(params: ModelParams, dset: &DiagonalSet) -> Result<CheckReport> {
    if params.m() > SUBFACTOR_MAX_VERTICES {
        return Err(Error::Capacity(format!(
            "subfactor bijection check is exhaustive; m = {} exceeds {SUBFACTOR_MAX_VERTICES}",
            params.m()
        )));
    }
    let sub = SubfactorModel::build(params, dset)?;
    let parent = sub.parent();
    let d = sub.dset();
    let fail = |n: u64, why: String, extra: serde_json::Value| {
        CheckReport::fail(
            "4.11",
            n,
            json!({ "D": parent.set_labels(d), "reason": why, "detail": extra }),
        )
    };

    let parent_pairs: Vec<(ObjectSet, ObjectSet)> =
        enumerate_weak_cotorsion_pairs(parent, Strategy::NextClosure)?
            .into_iter()
            .filter(|p| d.is_subset(p.core))
            .map(|p| (p.x, p.y))
            .collect();

    let local_model = sub.to_hom_model();
    let direct: BTreeSet<(ObjectSet, ObjectSet)> =
        enumerate_weak_cotorsion_pairs(&local_model, Strategy::NextClosure)?
            .into_iter()
            .map(|p| (p.x, p.y))
            .collect();
    let product = product_pairs(&sub)?;
    let checked = parent_pairs.len() as u64;
    if direct != product {
        return Ok(fail(
            checked,
            "direct and per-cell subfactor enumerations differ".into(),
            json!({ "direct": direct.len(), "product": product.len() }),
        ));
    }

    let mut image = BTreeSet::new();
    for &(x, y) in &parent_pairs {
        let mapped = (sub.restrict(x.difference(d)), sub.restrict(y.difference(d)));
        if !direct.contains(&mapped) {
            return Ok(fail(
                checked,
                "image is not a subfactor pair".into(),
                json!({ "x": parent.set_labels(x), "y": parent.set_labels(y) }),
            ));
        }
        if !image.insert(mapped) {
            return Ok(fail(
                checked,
                "map is not injective".into(),
                json!({ "x": parent.set_labels(x), "y": parent.set_labels(y) }),
            ));
        }
        let (bx, by) = (sub.lift(mapped.0).union(d), sub.lift(mapped.1).union(d));
        if (bx, by) != (x, y) {
            return Ok(fail(
                checked,
                "roundtrip does not return the parent pair".into(),
                json!({ "x": parent.set_labels(x), "y": parent.set_labels(y) }),
            ));
        }
    }
    if image.len() != direct.len() {
        let missing = direct.difference(&image).next().copied().unwrap();
        let (lx, ly) = (sub.lift(missing.0).union(d), sub.lift(missing.1).union(d));
        return Ok(fail(
            checked,
            "map is not surjective".into(),
            json!({
                "x": parent.set_labels(lx),
                "y": parent.set_labels(ly),
                "lift_is_pair": is_weak_cotorsion(lx, ly, parent),
                "nc_of_lift": parent.set_labels(nc(lx, parent)),
            }),
        ));
    }
    Ok(CheckReport::pass("4.11", checked))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::Strategy;

    fn polygon(m: u32) -> ModelParams {
        ModelParams::polygon(m).unwrap()
    }

    fn dset(s: &str, p: &ModelParams) -> DiagonalSet {
        DiagonalSet::parse(s, p).unwrap()
    }

    #[test]
    fn hexagon_cut_once() {
        let p = polygon(6);
        let sub = SubfactorModel::build(p, &dset("1-3", &p)).unwrap();
        assert_eq!(sub.cells(), &[vec![1, 2, 3], vec![1, 3, 4, 5, 6]]);
        let shown: Vec<(String, usize, String)> = sub
            .objects()
            .iter()
            .map(|o| {
                (
                    sub.parent().label(o.parent).to_string(),
                    o.cell,
                    o.local.to_string(),
                )
            })
            .collect();
        assert_eq!(
            shown,
            [
                ("1-4".to_string(), 1, "1-3".to_string()),
                ("1-5".to_string(), 1, "1-4".to_string()),
                ("3-5".to_string(), 1, "2-4".to_string()),
                ("3-6".to_string(), 1, "2-5".to_string()),
                ("4-6".to_string(), 1, "3-5".to_string()),
            ]
        );
        let d = |s: &str| Diagonal::parse(s, &p).unwrap();
        assert!(sub.local_ext(&d("1-4"), &d("3-5")).unwrap());
        assert!(!sub.local_ext(&d("1-4"), &d("1-4")).unwrap());
        assert!(matches!(
            sub.local_ext(&d("1-3"), &d("1-4")),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            sub.local_ext(&d("2-4"), &d("1-4")),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn empty_dset_is_identity() {
        let p = polygon(6);
        let sub = SubfactorModel::build(p, &DiagonalSet::new()).unwrap();
        assert_eq!(sub.cells(), &[vec![1, 2, 3, 4, 5, 6]]);
        assert_eq!(sub.objects().len(), 9);
        assert!(sub
            .objects()
            .iter()
            .all(|o| o.local == sub.parent().diagonals()[o.parent]));
    }

    #[test]
    fn octagon_three_squares() {
        let p = polygon(8);
        let sub = SubfactorModel::build(p, &dset("1-4,4-7", &p)).unwrap();
        let mut cells = sub.cells().to_vec();
        cells.sort();
        assert_eq!(
            cells,
            [vec![1, 2, 3, 4], vec![1, 4, 7, 8], vec![4, 5, 6, 7]]
        );
        // Each square cell carries its two diagonals.
        assert_eq!(sub.objects().len(), 6);
        let z = nc(sub.dset(), sub.parent());
        assert_eq!(sub.objects().len(), z.len() - 2);
        let d = |s: &str| Diagonal::parse(s, &p).unwrap();
        let (a, b) = (
            &sub.parent().diagonals()[sub.objects()[0].parent],
            &sub.parent().diagonals()[sub.objects()[1].parent],
        );
        assert!(!sub.local_ext(a, b).unwrap());
        assert!(sub.local_ext(&d("1-3"), &d("2-4")).unwrap());
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = polygon(6);
        assert!(matches!(
            SubfactorModel::build(p, &dset("1-4,2-5", &p)),
            Err(Error::Precondition(_))
        ));
        let q = ModelParams::new(2, 2).unwrap();
        assert!(matches!(
            SubfactorModel::build(q, &DiagonalSet::new()),
            Err(Error::Unsupported(_))
        ));
        let big = polygon(9);
        assert!(matches!(
            check_subfactor_bijection(big, &DiagonalSet::new()),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn direct_and_product_agree() {
        let p = polygon(8);
        let sub = SubfactorModel::build(p, &dset("1-4,4-7", &p)).unwrap();
        let direct: BTreeSet<_> =
            enumerate_weak_cotorsion_pairs(&sub.to_hom_model(), Strategy::BruteForce)
                .unwrap()
                .into_iter()
                .map(|p| (p.x, p.y))
                .collect();
        assert_eq!(direct, product_pairs(&sub).unwrap());
        assert_eq!(direct.len(), 64);
    }

    #[test]
    fn correspondence_round_trips() {
        let p = polygon(8);
        let sub = SubfactorModel::build(p, &dset("1-4", &p)).unwrap();
        let all = ObjectSet::full(sub.objects().len());
        assert_eq!(sub.restrict(sub.lift(all)), all);
        for (i, o) in sub.objects().iter().enumerate() {
            assert_eq!(
                sub.local_index(&sub.parent().diagonals()[o.parent])
                    .unwrap(),
                i
            );
        }
    }

    #[test]
    fn bijection_examples() {
        let hex = polygon(6);
        let r = check_subfactor_bijection(hex, &dset("1-3", &hex)).unwrap();
        assert!(r.passed, "{r:?}");
        // Pentagon model pair count.
        assert_eq!(r.instances_checked, 17);

        let r = check_subfactor_bijection(hex, &DiagonalSet::new()).unwrap();
        assert!(r.passed);
        assert_eq!(r.instances_checked, 82);

        let oct = polygon(8);
        let r = check_subfactor_bijection(oct, &dset("1-4,4-7", &oct)).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.instances_checked, 64);
    }
}
