//! The common query surface for all pair calculus: objects, `ext`, and the
//! `Σ^d` permutation, backed either by a type-A diagonal model or by an
//! explicit table.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{enumerate_diagonals, Diagonal, DiagonalSet, ModelParams};
use crate::set::{ObjectSet, MAX_OBJECTS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelSource {
    TypeA(ModelParams),
    Explicit,
}

/// On-disk form of an explicit model. `shift[i]` is the index of `Σ^d(objects[i])`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitModelFile {
    pub d: u32,
    pub objects: Vec<String>,
    pub ext: Vec<Vec<bool>>,
    pub shift: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct HomModel {
    source: ModelSource,
    d: u32,
    labels: Vec<String>,
    diagonals: Vec<Diagonal>,
    /// Bit `j` of `ext_out[i]` is `ext(i, j)`.
    ext_out: Vec<u64>,
    /// Bit `i` of `ext_in[j]` is `ext(i, j)`.
    ext_in: Vec<u64>,
    shift: Vec<usize>,
    unshift: Vec<usize>,
}

impl HomModel {
    pub fn type_a(params: ModelParams) -> Result<Self> {
        let diagonals = enumerate_diagonals(&params);
        let count = diagonals.len();
        if count > MAX_OBJECTS {
            return Err(Error::Capacity(format!(
                "model {params} has {count} objects; at most {MAX_OBJECTS} are supported"
            )));
        }
        let mut ext_out = vec![0u64; count];
        for (i, x) in diagonals.iter().enumerate() {
            for (j, y) in diagonals.iter().enumerate() {
                if x.ext(y) {
                    ext_out[i] |= 1 << j;
                }
            }
        }
        let ext_in = transpose(&ext_out);
        let index = |d: &Diagonal| {
            diagonals
                .binary_search(d)
                .expect("shift preserves the index set")
        };
        let shift: Vec<usize> = diagonals
            .iter()
            .map(|x| index(&x.shift(&params, 1)))
            .collect();
        let unshift = invert(&shift);
        Ok(HomModel {
            source: ModelSource::TypeA(params),
            d: params.d(),
            labels: diagonals.iter().map(Diagonal::to_string).collect(),
            diagonals,
            ext_out,
            ext_in,
            shift,
            unshift,
        })
    }

    pub fn explicit(file: ExplicitModelFile) -> Result<Self> {
        let ExplicitModelFile {
            d,
            objects,
            ext,
            shift,
        } = file;
        let count = objects.len();
        if d < 1 {
            return Err(Error::InvalidModel(format!("d must be >= 1, got {d}")));
        }
        if count > MAX_OBJECTS {
            return Err(Error::Capacity(format!(
                "explicit model has {count} objects; at most {MAX_OBJECTS} are supported"
            )));
        }
        for (i, label) in objects.iter().enumerate() {
            if label.trim().is_empty() || label.contains(',') || label.trim() != label {
                return Err(Error::InvalidModel(format!(
                    "object label `{label}` must be non-empty, trimmed, and comma-free"
                )));
            }
            if objects[..i].contains(label) {
                return Err(Error::InvalidModel(format!(
                    "duplicate object label `{label}`"
                )));
            }
        }
        if ext.len() != count || ext.iter().any(|row| row.len() != count) {
            return Err(Error::InvalidModel(format!(
                "ext table must be {count}x{count}"
            )));
        }
        if shift.len() != count {
            return Err(Error::InvalidModel(format!(
                "shift must have {count} entries, got {}",
                shift.len()
            )));
        }
        let mut seen = vec![false; count];
        for &t in &shift {
            if t >= count || std::mem::replace(&mut seen[t], true) {
                return Err(Error::InvalidModel("shift is not a permutation".into()));
            }
        }
        let ext_out: Vec<u64> = ext
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .fold(0u64, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        let ext_in = transpose(&ext_out);
        let unshift = invert(&shift);
        Ok(HomModel {
            source: ModelSource::Explicit,
            d,
            labels: objects,
            diagonals: Vec::new(),
            ext_out,
            ext_in,
            shift,
            unshift,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::explicit(serde_json::from_str(text)?)
    }

    pub fn to_explicit_file(&self) -> ExplicitModelFile {
        let n = self.len();
        ExplicitModelFile {
            d: self.d,
            objects: self.labels.clone(),
            ext: (0..n)
                .map(|i| (0..n).map(|j| self.ext(i, j)).collect())
                .collect(),
            shift: self.shift.clone(),
        }
    }

    pub fn source(&self) -> &ModelSource {
        &self.source
    }

    pub fn params(&self) -> Option<&ModelParams> {
        match &self.source {
            ModelSource::TypeA(p) => Some(p),
            ModelSource::Explicit => None,
        }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn all(&self) -> ObjectSet {
        ObjectSet::full(self.len())
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Diagonals in object order; empty for explicit models.
    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    pub fn diagonal(&self, i: usize) -> Option<&Diagonal> {
        self.diagonals.get(i)
    }

    pub fn index_of_diagonal(&self, d: &Diagonal) -> Option<usize> {
        self.diagonals.binary_search(d).ok()
    }

    /// Resolve an object by its text form (any accepted diagonal syntax for type-A models).
    pub fn index_of(&self, text: &str) -> Result<usize> {
        let text = text.trim();
        match &self.source {
            ModelSource::TypeA(params) => {
                let d = Diagonal::parse(text, params)?;
                self.index_of_diagonal(&d)
                    .ok_or_else(|| Error::UnknownObject(text.to_string()))
            }
            ModelSource::Explicit => self
                .labels
                .iter()
                .position(|l| l == text)
                .ok_or_else(|| Error::UnknownObject(text.to_string())),
        }
    }

    /// Parse a comma-separated object list; whitespace is ignored.
    pub fn parse_set(&self, text: &str) -> Result<ObjectSet> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Ok(ObjectSet::EMPTY);
        }
        cleaned.split(',').map(|p| self.index_of(p)).collect()
    }

    pub fn set_from_diagonals(&self, set: &DiagonalSet) -> Result<ObjectSet> {
        set.iter()
            .map(|d| {
                self.index_of_diagonal(d)
                    .ok_or_else(|| Error::UnknownObject(d.to_string()))
            })
            .collect()
    }

    pub fn set_labels(&self, set: ObjectSet) -> Vec<String> {
        set.iter().map(|i| self.labels[i].clone()).collect()
    }

    pub fn format_set(&self, set: ObjectSet) -> String {
        self.set_labels(set).join(",")
    }

    /// `dim Hom(X, Σ^d Y) != 0`.
    pub fn ext(&self, i: usize, j: usize) -> bool {
        self.ext_out[i] >> j & 1 == 1
    }

    /// `{j : ext(i, j)}`
    pub fn ext_row(&self, i: usize) -> ObjectSet {
        ObjectSet::from_bits(self.ext_out[i])
    }

    /// `{i : ext(i, j)}`
    pub fn ext_col(&self, j: usize) -> ObjectSet {
        ObjectSet::from_bits(self.ext_in[j])
    }

    /// Objects with no `ext` against `i` in either direction.
    pub fn compatible(&self, i: usize) -> ObjectSet {
        ObjectSet::from_bits(!(self.ext_out[i] | self.ext_in[i])).intersection(self.all())
    }

    pub fn is_symmetric(&self) -> bool {
        self.ext_out == self.ext_in
    }

    /// `Σ^{d·steps}` on an object index.
    pub fn shift(&self, i: usize, steps: i64) -> usize {
        let perm = if steps >= 0 {
            &self.shift
        } else {
            &self.unshift
        };
        let mut i = i;
        for _ in 0..steps.unsigned_abs() {
            i = perm[i];
        }
        i
    }

    pub fn shift_set(&self, set: ObjectSet, steps: i64) -> ObjectSet {
        set.iter().map(|i| self.shift(i, steps)).collect()
    }

    /// `dim Hom(X, Y) != 0`, read off as `ext(X, Σ^{-d} Y)`.
    pub fn hom_nonzero(&self, i: usize, j: usize) -> bool {
        self.ext(i, self.unshift[j])
    }
}

fn transpose(rows: &[u64]) -> Vec<u64> {
    let mut cols = vec![0u64; rows.len()];
    for (i, &row) in rows.iter().enumerate() {
        for j in ObjectSet::from_bits(row) {
            cols[j] |= 1 << i;
        }
    }
    cols
}

fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &t) in perm.iter().enumerate() {
        inv[t] = i;
    }
    inv
}

/// Name under which [`four_angulated_hexagon`] is registered.
pub const EXAMPLE_FIXTURE: &str = "example-3-10";

pub fn fixture_names() -> &'static [&'static str] {
    &[EXAMPLE_FIXTURE]
}

pub fn fixture(name: &str) -> Result<HomModel> {
    match name {
        EXAMPLE_FIXTURE => Ok(four_angulated_hexagon()),
        _ => Err(Error::Domain(format!(
            "unknown fixture `{name}` (known: {})",
            fixture_names().join(", ")
        ))),
    }
}

/// The 2-cluster tilting subcategory `add(13 ⊕ 15 ⊕ 35)` of the type `A_3`
/// cluster category, a 4-angulated category with `Σ^2 = [2]`.
///
/// `ext(a, b)` is the crossing of arcs `a` and `τb` in the hexagon, with `τ`
/// rotating one vertex backwards; `Σ^2 = τ^2` cycles `13 → 15 → 35 → 13`.
pub fn four_angulated_hexagon() -> HomModel {
    HomModel::explicit(ExplicitModelFile {
        d: 2,
        objects: vec!["13".into(), "15".into(), "35".into()],
        ext: vec![
            vec![true, false, true],
            vec![true, true, false],
            vec![false, true, true],
        ],
        shift: vec![1, 2, 0],
    })
    .expect("fixture is well formed")
}
