//! Ptolemy diagrams: the polygon-geometric description of ncnc-closed sets when `d = 1`.
//!
//! This module deliberately avoids the intertwining relation and the `ext`
//! tables of [`HomModel`] so that it can serve as an independent check on them.

use crate::error::{Error, Result};
use crate::hom::HomModel;
use crate::model::{Diagonal, DiagonalSet, ModelParams};
use crate::set::ObjectSet;

fn require_polygon(params: &ModelParams) -> Result<()> {
    if params.d() != 1 {
        return Err(Error::Unsupported(format!(
            "Ptolemy diagrams are defined for polygon models (d = 1), got d = {}",
            params.d()
        )));
    }
    Ok(())
}

/// Chords `(a, b)` and `(c, d)` cross iff exactly one of `c`, `d` lies strictly between `a` and `b`.
pub fn chords_cross(a: (u32, u32), b: (u32, u32)) -> bool {
    let (lo, hi) = (a.0.min(a.1), a.0.max(a.1));
    let inside = |v: u32| lo < v && v < hi;
    let touches = [b.0, b.1].iter().any(|&v| v == lo || v == hi);
    !touches && inside(b.0) != inside(b.1)
}

fn is_polygon_diagonal(a: u32, b: u32, m: u32) -> bool {
    let (lo, hi) = (a.min(b), a.max(b));
    hi - lo >= 2 && hi + 2 <= lo + m
}

fn endpoints(d: &Diagonal) -> (u32, u32) {
    let v = d.vertices();
    (v[0], v[1])
}

/// Diagonals joining two endpoints of a crossing pair.
fn connectors(a: (u32, u32), b: (u32, u32), m: u32) -> Vec<(u32, u32)> {
    let mut ends = [a.0, a.1, b.0, b.1];
    ends.sort_unstable();
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            if is_polygon_diagonal(ends[i], ends[j], m) {
                out.push((ends[i], ends[j]));
            }
        }
    }
    out
}

/// Whenever two members cross, every diagonal between their endpoints is also a member.
pub fn is_ptolemy(set: &DiagonalSet, params: &ModelParams) -> Result<bool> {
    require_polygon(params)?;
    let members: Vec<(u32, u32)> = set.iter().map(endpoints).collect();
    let contains = |c: (u32, u32)| members.contains(&c);
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if chords_cross(a, b) && !connectors(a, b, params.m()).into_iter().all(contains) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Precomputed crossing and connector masks for testing many subsets of one polygon model.
pub struct PtolemyOracle {
    crossing: Vec<u64>,
    /// `connectors[i][j]` for crossing `i < j`.
    connectors: Vec<Vec<u64>>,
}

impl PtolemyOracle {
    pub fn new(model: &HomModel) -> Result<Self> {
        let params = model
            .params()
            .ok_or_else(|| Error::Unsupported("Ptolemy oracle needs a type-A model".into()))?;
        require_polygon(params)?;
        let chords: Vec<(u32, u32)> = model.diagonals().iter().map(endpoints).collect();
        let index = |c: (u32, u32)| {
            chords
                .iter()
                .position(|&x| x == c)
                .expect("connector is a diagonal of the model")
        };
        let n = chords.len();
        let mut crossing = vec![0u64; n];
        let mut conn = vec![vec![0u64; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j && chords_cross(chords[i], chords[j]) {
                    crossing[i] |= 1 << j;
                    conn[i][j] = connectors(chords[i], chords[j], params.m())
                        .into_iter()
                        .fold(0, |acc, c| acc | 1 << index(c));
                }
            }
        }
        Ok(PtolemyOracle {
            crossing,
            connectors: conn,
        })
    }

    pub fn is_ptolemy(&self, set: ObjectSet) -> bool {
        let bits = set.bits();
        set.iter().all(|i| {
            ObjectSet::from_bits(self.crossing[i] & bits)
                .iter()
                .filter(|&j| j > i)
                .all(|j| self.connectors[i][j] & !bits == 0)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::enumerate_diagonals;
    use crate::pairs::is_closed;

    #[test]
    fn small_examples() {
        let sq = ModelParams::polygon(4).unwrap();
        assert!(is_ptolemy(&DiagonalSet::new(), &sq).unwrap());
        let all: DiagonalSet = enumerate_diagonals(&sq).into_iter().collect();
        assert!(is_ptolemy(&all, &sq).unwrap());
        // 1-3 and 2-4 cross but their endpoints only span polygon edges.
        assert!(is_ptolemy(&DiagonalSet::parse("1-3,2-4", &sq).unwrap(), &sq).unwrap());

        let hex = ModelParams::polygon(6).unwrap();
        let full = enumerate_diagonals(&hex).into_iter().collect();
        assert!(is_ptolemy(&full, &hex).unwrap());
        // 1-4 and 2-5 cross; their connectors are 1-4, 1-5, 2-4, 2-5.
        let s = DiagonalSet::parse("1-4,2-5", &hex).unwrap();
        assert!(!is_ptolemy(&s, &hex).unwrap());
        let s = DiagonalSet::parse("1-4,2-5,2-4,1-5", &hex).unwrap();
        assert!(is_ptolemy(&s, &hex).unwrap());
    }

    #[test]
    fn rejects_higher_dimension() {
        let p = ModelParams::new(2, 2).unwrap();
        assert!(matches!(
            is_ptolemy(&DiagonalSet::new(), &p),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn mask_oracle_matches_direct_form() {
        let m = HomModel::type_a(ModelParams::polygon(6).unwrap()).unwrap();
        let oracle = PtolemyOracle::new(&m).unwrap();
        let params = *m.params().unwrap();
        for s in m.all().subsets() {
            let ds: DiagonalSet = s.iter().map(|i| m.diagonals()[i].clone()).collect();
            assert_eq!(oracle.is_ptolemy(s), is_ptolemy(&ds, &params).unwrap());
        }
    }

    #[test]
    fn ptolemy_iff_closed_up_to_heptagon() {
        for mm in 4..=7 {
            let m = HomModel::type_a(ModelParams::polygon(mm).unwrap()).unwrap();
            let oracle = PtolemyOracle::new(&m).unwrap();
            for s in m.all().subsets() {
                assert_eq!(
                    is_closed(s, &m),
                    oracle.is_ptolemy(s),
                    "m={mm} {}",
                    m.format_set(s)
                );
            }
        }
    }
}
