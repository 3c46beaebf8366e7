//! Mutation of subcategories with respect to a rigid set `D`.
//!
//! Two regimes are realized combinatorially: `D = ∅` in any model, where
//! forward mutation is `Σ^d`, and arbitrary non-crossing `D` in polygon models,
//! where mutation rotates each diagonal inside the cell of the polygon cut
//! along `D` that contains it.

use std::fmt;

use rayon::prelude::*;
use serde_json::json;

use crate::enumerate::{closed_sets_next_closure, enumerate_weak_cotorsion_pairs, Strategy};
use crate::error::{Error, Result};
use crate::hom::{HomModel, ModelSource};
use crate::model::{Diagonal, ModelParams};
use crate::pairs::{core, is_rigid, is_weak_cotorsion, nc, WeakCotorsionPair};
use crate::report::CheckReport;
use crate::set::ObjectSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `μ_D^{-1}`; equals `Σ^d` when `D = ∅`.
    Forward,
    /// `μ_D`; equals `Σ^{-d}` when `D = ∅`.
    Backward,
}

impl Direction {
    pub fn inverse(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    fn steps(self) -> i64 {
        match self {
            Direction::Forward => 1,
            Direction::Backward => -1,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "fwd",
            Direction::Backward => "bwd",
        })
    }
}

/// `Σ^d S` (forward) or `Σ^{-d} S` (backward).
pub fn mutate_set_zero(set: ObjectSet, model: &HomModel, direction: Direction) -> ObjectSet {
    model.shift_set(set, direction.steps())
}

/// A rigid `D` together with `Z = nc(D)`.
#[derive(Debug, Clone)]
pub struct MutationContext<'a> {
    model: &'a HomModel,
    dset: ObjectSet,
    z: ObjectSet,
    cells: Option<CellDecomposition>,
}

impl<'a> MutationContext<'a> {
    pub fn new(model: &'a HomModel, dset: ObjectSet) -> Result<Self> {
        if !dset.is_subset(model.all()) {
            return Err(Error::Precondition("D contains unknown objects".into()));
        }
        if !is_rigid(dset, model) {
            return Err(Error::Precondition(format!(
                "D = {{{}}} is not rigid",
                model.format_set(dset)
            )));
        }
        // ⊥(Σ^d D) and (Σ^{-d} D)^⊥ must agree; automatic for symmetric tables.
        let left = dset
            .iter()
            .fold(model.all(), |acc, x| acc.difference(model.ext_col(x)));
        let right = dset
            .iter()
            .fold(model.all(), |acc, x| acc.difference(model.ext_row(x)));
        if left != right {
            return Err(Error::Hypothesis(format!(
                "left and right perpendiculars of D = {{{}}} differ",
                model.format_set(dset)
            )));
        }
        let z = nc(dset, model);
        let cells = match model.source() {
            ModelSource::TypeA(p) if p.d() == 1 && !dset.is_empty() => {
                let chords: Vec<&Diagonal> = dset.iter().map(|i| &model.diagonals()[i]).collect();
                Some(CellDecomposition::cut(p, &chords)?)
            }
            _ => None,
        };
        Ok(MutationContext {
            model,
            dset,
            z,
            cells,
        })
    }

    pub fn model(&self) -> &'a HomModel {
        self.model
    }

    pub fn dset(&self) -> ObjectSet {
        self.dset
    }

    pub fn z(&self) -> ObjectSet {
        self.z
    }

    /// The cell decomposition of the polygon cut along `D`; polygon models only.
    pub fn cells(&self) -> Result<CellDecomposition> {
        let params = polygon_params(self.model)?;
        match &self.cells {
            Some(c) => Ok(c.clone()),
            None => CellDecomposition::cut(params, &[]),
        }
    }

    /// Mutation of a single object of `Z`.
    pub fn mutate_object(&self, u: usize, direction: Direction) -> Result<usize> {
        if !self.z.contains(u) {
            return Err(Error::Domain(format!(
                "{} is not in Z = nc(D)",
                self.model.label(u)
            )));
        }
        if self.dset.contains(u) {
            return Ok(u);
        }
        if self.dset.is_empty() {
            return Ok(self.model.shift(u, direction.steps()));
        }
        let cells = self
            .cells
            .as_ref()
            .ok_or_else(|| unsupported_regime(self.model))?;
        let d = &self.model.diagonals()[u];
        let image = cells
            .rotate(d, direction)
            .ok_or_else(|| Error::Domain(format!("{d} lies in no cell of the decomposition")))?;
        Ok(self
            .model
            .index_of_diagonal(&image)
            .expect("cell rotation yields a diagonal of the model"))
    }

    /// `{μ(s) : s ∈ S} ∪ D` for `D ⊆ S ⊆ Z`.
    pub fn mutate_set(&self, set: ObjectSet, direction: Direction) -> Result<ObjectSet> {
        if !set.is_subset(self.z) {
            return Err(Error::Precondition(format!(
                "{{{}}} is not contained in Z = nc(D)",
                self.model.format_set(set)
            )));
        }
        if !self.dset.is_subset(set) {
            return Err(Error::Precondition(format!(
                "D = {{{}}} is not contained in {{{}}}",
                self.model.format_set(self.dset),
                self.model.format_set(set)
            )));
        }
        if !self.dset.is_empty() && self.cells.is_none() {
            return Err(unsupported_regime(self.model));
        }
        set.iter()
            .map(|u| self.mutate_object(u, direction))
            .collect::<Result<ObjectSet>>()
            .map(|s| s.union(self.dset))
    }
}

fn unsupported_regime(model: &HomModel) -> Error {
    Error::Unsupported(format!(
        "mutation with nonzero D has no combinatorial rule for d = {} (only D = 0, or d = 1 polygon models)",
        model.d()
    ))
}

fn polygon_params(model: &HomModel) -> Result<&ModelParams> {
    match model.params() {
        Some(p) if p.d() == 1 => Ok(p),
        Some(p) => Err(Error::Unsupported(format!(
            "cell decompositions need d = 1, got d = {}",
            p.d()
        ))),
        None => Err(Error::Unsupported(
            "cell decompositions need a type-A polygon model".into(),
        )),
    }
}

/// Mutation of a single polygon diagonal.
pub fn mutate_diagonal_d1(
    u: &Diagonal,
    ctx: &MutationContext<'_>,
    direction: Direction,
) -> Result<Diagonal> {
    polygon_params(ctx.model)?;
    let i = ctx
        .model
        .index_of_diagonal(u)
        .ok_or_else(|| Error::UnknownObject(u.to_string()))?;
    let j = ctx.mutate_object(i, direction)?;
    Ok(ctx.model.diagonals()[j].clone())
}

/// Faces of a polygon cut along pairwise non-crossing chords.
///
/// Each cell lists its vertices in ascending order; cells are sorted by
/// smallest vertex, then size, then vertex list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellDecomposition {
    cells: Vec<Vec<u32>>,
}

impl CellDecomposition {
    pub fn cut(params: &ModelParams, chords: &[&Diagonal]) -> Result<Self> {
        if params.d() != 1 {
            return Err(Error::Unsupported(format!(
                "cell decompositions need d = 1, got d = {}",
                params.d()
            )));
        }
        let mut cells: Vec<Vec<u32>> = vec![(1..=params.m()).collect()];
        for (k, chord) in chords.iter().enumerate() {
            let (a, b) = (chord.vertices()[0], chord.vertices()[1]);
            if chords[..k].iter().any(|c| c.ext(chord)) {
                return Err(Error::Precondition(format!(
                    "chord {chord} crosses another chord"
                )));
            }
            let pos = cells
                .iter()
                .position(|c| c.contains(&a) && c.contains(&b))
                .ok_or_else(|| Error::Precondition(format!("chord {chord} lies in no cell")))?;
            let cell = cells.swap_remove(pos);
            let inner = cell.iter().copied().filter(|&v| a <= v && v <= b).collect();
            let outer = cell.iter().copied().filter(|&v| v <= a || v >= b).collect();
            cells.push(inner);
            cells.push(outer);
        }
        cells.sort_by(|x, y| (x[0], x.len(), x).cmp(&(y[0], y.len(), y)));
        Ok(CellDecomposition { cells })
    }

    pub fn cells(&self) -> &[Vec<u32>] {
        &self.cells
    }

    /// Index of the cell in which `d` is a chord between non-adjacent cell vertices.
    pub fn cell_of(&self, d: &Diagonal) -> Option<usize> {
        let (a, b) = (d.vertices()[0], d.vertices()[1]);
        self.cells.iter().position(|c| {
            let (Some(i), Some(j)) = (
                c.iter().position(|&v| v == a),
                c.iter().position(|&v| v == b),
            ) else {
                return false;
            };
            let gap = j.abs_diff(i);
            gap >= 2 && gap + 2 <= c.len()
        })
    }

    /// Move both endpoints of `d` to the previous (forward) or next (backward)
    /// vertex of its cell.
    pub fn rotate(&self, d: &Diagonal, direction: Direction) -> Option<Diagonal> {
        let cell = &self.cells[self.cell_of(d)?];
        let k = cell.len();
        let step = |v: u32| {
            let i = cell.iter().position(|&x| x == v).unwrap();
            match direction {
                Direction::Forward => cell[(i + k - 1) % k],
                Direction::Backward => cell[(i + 1) % k],
            }
        };
        let mut v: Vec<u32> = d.vertices().iter().map(|&x| step(x)).collect();
        v.sort_unstable();
        Some(Diagonal::from_sorted_unchecked(v))
    }
}

/// Which subsets `D` of each pair's core a mutation check ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoreSubsets {
    /// Only `D = ∅`.
    Zero,
    /// Every subset of the core where supported (polygon models), otherwise `∅`.
    All,
    /// One fixed `D`, applied to the pairs whose core contains it.
    Fixed(ObjectSet),
}

/// For every weak cotorsion pair `(X, Y)` and every admissible `D ⊆ core(X, Y)`,
/// in both directions: `(μX, μY)` is again a weak cotorsion pair and
/// `core(μX, μY) = μ(core(X, Y))`.
pub fn check_mutation_closure(model: &HomModel, subsets: CoreSubsets) -> Result<CheckReport> {
    let polygon = matches!(model.params(), Some(p) if p.d() == 1);
    if let CoreSubsets::Fixed(d) = subsets {
        if !d.is_empty() && !polygon {
            return Err(unsupported_regime(model));
        }
        MutationContext::new(model, d)?;
    }
    let pairs = enumerate_weak_cotorsion_pairs(model, Strategy::NextClosure)?;
    let per_pair: Vec<(u64, Option<serde_json::Value>)> = pairs
        .par_iter()
        .map(|pair| {
            let dsets: Vec<ObjectSet> = match subsets {
                CoreSubsets::Zero => vec![ObjectSet::EMPTY],
                CoreSubsets::All if polygon => pair.core.subsets().collect(),
                CoreSubsets::All => vec![ObjectSet::EMPTY],
                CoreSubsets::Fixed(d) if d.is_subset(pair.core) => vec![d],
                CoreSubsets::Fixed(_) => vec![],
            };
            let mut checked = 0u64;
            for dset in dsets {
                for direction in [Direction::Forward, Direction::Backward] {
                    checked += 1;
                    if let Some(failure) = mutation_failure(model, pair, dset, direction) {
                        return (checked, Some(failure));
                    }
                }
            }
            (checked, None)
        })
        .collect();
    let total = per_pair.iter().map(|(c, _)| c).sum();
    Ok(match per_pair.into_iter().find_map(|(_, f)| f) {
        None => CheckReport::pass("4.13", total),
        Some(f) => CheckReport::fail("4.13", total, f),
    })
}

fn mutation_failure(
    model: &HomModel,
    pair: &WeakCotorsionPair,
    dset: ObjectSet,
    direction: Direction,
) -> Option<serde_json::Value> {
    let describe = |reason: String| {
        json!({
            "x": model.set_labels(pair.x),
            "y": model.set_labels(pair.y),
            "D": model.set_labels(dset),
            "direction": direction.to_string(),
            "reason": reason,
        })
    };
    let outcome = (|| -> Result<Option<String>> {
        let ctx = MutationContext::new(model, dset)?;
        let mx = ctx.mutate_set(pair.x, direction)?;
        let my = ctx.mutate_set(pair.y, direction)?;
        let mcore = ctx.mutate_set(pair.core, direction)?;
        if !is_weak_cotorsion(mx, my, model) {
            return Ok(Some(format!(
                "image ({{{}}}, {{{}}}) is not a weak cotorsion pair",
                model.format_set(mx),
                model.format_set(my)
            )));
        }
        if core(mx, my) != mcore {
            return Ok(Some(format!(
                "core of image is {{{}}}, mutated core is {{{}}}",
                model.format_set(core(mx, my)),
                model.format_set(mcore)
            )));
        }
        Ok(None)
    })();
    match outcome {
        Ok(None) => None,
        Ok(Some(reason)) => Some(describe(reason)),
        Err(e) => Some(describe(e.to_string())),
    }
}

/// Largest `|Z \ D|` for which [`check_mutation_inverse`] enumerates all admissible sets.
pub const INVERSE_MAX_FREE: usize = 25;

/// Forward and backward mutation are mutually inverse on every `S` with `D ⊆ S ⊆ Z`.
pub fn check_mutation_inverse(ctx: &MutationContext<'_>) -> Result<CheckReport> {
    let free = ctx.z.difference(ctx.dset);
    if free.len() > INVERSE_MAX_FREE {
        return Err(Error::Capacity(format!(
            "{} free objects in Z \\ D exceeds {INVERSE_MAX_FREE}",
            free.len()
        )));
    }
    let model = ctx.model;
    let admissible: Vec<ObjectSet> = free.subsets().map(|s| s.union(ctx.dset)).collect();
    let failures: Result<Vec<Option<serde_json::Value>>> = admissible
        .par_iter()
        .map(|&s| {
            for direction in [Direction::Forward, Direction::Backward] {
                let there = ctx.mutate_set(s, direction)?;
                let back = ctx.mutate_set(there, direction.inverse())?;
                if back != s {
                    return Ok(Some(json!({
                        "set": model.set_labels(s),
                        "D": model.set_labels(ctx.dset),
                        "direction": direction.to_string(),
                        "image": model.set_labels(there),
                        "returned": model.set_labels(back),
                    })));
                }
            }
            Ok(None)
        })
        .collect();
    let total = admissible.len() as u64;
    Ok(match failures?.into_iter().flatten().next() {
        None => CheckReport::pass("4.12", total),
        Some(f) => CheckReport::fail("4.12", total, f),
    })
}

/// Every non-crossing `D` of a polygon model (all rigid sets), in subset order.
pub fn rigid_sets(model: &HomModel) -> Vec<ObjectSet> {
    // Rigid sets are exactly the subsets of the nc-fixed (maximal rigid) sets.
    let mut out: Vec<ObjectSet> = closed_sets_next_closure(model)
        .into_iter()
        .filter(|&s| nc(s, model) == s)
        .flat_map(ObjectSet::subsets)
        .collect();
    out.sort_unstable_by_key(|s| s.bits());
    out.dedup();
    out
}
