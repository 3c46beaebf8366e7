//! Index sets of cyclic polytope diagonals.
//!
//! A type-A model is fixed by a rank `n` and a dimension `d`; its polygon has
//! `m = n + 2d + 1` vertices and its indecomposable objects are the increasing
//! `(d+1)`-tuples with cyclic gaps of at least two.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModelParams {
    n: u32,
    d: u32,
    m: u32,
}

impl ModelParams {
    pub fn new(n: u32, d: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain(format!("rank n must be >= 1, got {n}")));
        }
        if d < 1 {
            return Err(Error::Domain(format!("dimension d must be >= 1, got {d}")));
        }
        Ok(ModelParams {
            n,
            d,
            m: n + 2 * d + 1,
        })
    }

    /// Polygon model with `m` vertices (`d = 1`, `n = m - 3`).
    pub fn polygon(m: u32) -> Result<Self> {
        if m < 4 {
            return Err(Error::Domain(format!(
                "a polygon model needs m >= 4, got {m}"
            )));
        }
        Self::new(m - 3, 1)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of vertices of a diagonal.
    pub fn arity(&self) -> usize {
        self.d as usize + 1
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, d={}, m={})", self.n, self.d, self.m)
    }
}

/// True iff `vertices` is an element of the cyclic index set for `params`.
pub fn is_diagonal(vertices: &[u32], params: &ModelParams) -> bool {
    gap_violation(vertices, params).is_none()
}

fn gap_violation(vertices: &[u32], params: &ModelParams) -> Option<String> {
    if vertices.len() != params.arity() {
        return Some(format!("expected {} vertices", params.arity()));
    }
    if let Some(v) = vertices.iter().find(|&&v| v < 1 || v > params.m) {
        return Some(format!("vertex {v} outside 1..={}", params.m));
    }
    for w in vertices.windows(2) {
        if w[0] + 2 > w[1] {
            return Some(format!("{} + 2 > {}", w[0], w[1]));
        }
    }
    let (first, last) = (vertices[0], vertices[vertices.len() - 1]);
    if last + 2 > first + params.m {
        return Some(format!("{last} + 2 > {first} + {}", params.m));
    }
    None
}

/// An increasing tuple `(i_0, ..., i_d)` naming one indecomposable object.
///
/// Ordering is lexicographic on the vertex tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagonal(Vec<u32>);

impl Diagonal {
    pub fn new(vertices: Vec<u32>, params: &ModelParams) -> Result<Self> {
        match gap_violation(&vertices, params) {
            None => Ok(Diagonal(vertices)),
            Some(reason) => Err(ParseError::Gap {
                text: join_dash(&vertices),
                reason,
            }
            .into()),
        }
    }

    pub(crate) fn from_sorted_unchecked(vertices: Vec<u32>) -> Self {
        Diagonal(vertices)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    /// Strict alternation `x_0 < y_0 < x_1 < y_1 < ... < x_d < y_d`.
    pub fn intertwines(&self, other: &Diagonal) -> bool {
        debug_assert_eq!(self.0.len(), other.0.len());
        let mut prev = None;
        for (&x, &y) in self.0.iter().zip(&other.0) {
            if prev.is_some_and(|p| p >= x) || x >= y {
                return false;
            }
            prev = Some(y);
        }
        true
    }

    /// `dim Hom(X, Σ^d Y) != 0` in the type-A model: intertwining in either order.
    pub fn ext(&self, other: &Diagonal) -> bool {
        self.intertwines(other) || other.intertwines(self)
    }

    /// Apply `Σ^d` `steps` times: every vertex moves by `-steps` modulo `m`.
    pub fn shift(&self, params: &ModelParams, steps: i64) -> Diagonal {
        let m = params.m as i64;
        let mut v: Vec<u32> = self
            .0
            .iter()
            .map(|&x| ((x as i64 - 1 - steps).rem_euclid(m) + 1) as u32)
            .collect();
        v.sort_unstable();
        Diagonal(v)
    }

    /// Parse `1-3-5`, or `135` when every vertex is a single digit (`m <= 9`).
    pub fn parse(text: &str, params: &ModelParams) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(ParseError::Malformed(text.to_string()).into());
        }
        let vertices: Vec<u32> = if text.contains('-') {
            text.split('-')
                .map(|p| p.trim().parse::<u32>())
                .collect::<Result<_, _>>()
                .map_err(|_| ParseError::Malformed(text.to_string()))?
        } else if text.chars().all(|c| c.is_ascii_digit()) {
            if text.len() == 1 && params.arity() == 1 {
                vec![text
                    .parse()
                    .map_err(|_| ParseError::Malformed(text.to_string()))?]
            } else {
                if params.m > 9 {
                    return Err(ParseError::DigitsNeedSmallModel(text.to_string()).into());
                }
                text.chars().map(|c| c.to_digit(10).unwrap()).collect()
            }
        } else {
            return Err(ParseError::Malformed(text.to_string()).into());
        };
        if vertices.len() != params.arity() {
            return Err(ParseError::Arity {
                text: text.to_string(),
                expected: params.arity(),
                found: vertices.len(),
            }
            .into());
        }
        if let Some(reason) = gap_violation(&vertices, params) {
            return Err(ParseError::Gap {
                text: text.to_string(),
                reason,
            }
            .into());
        }
        Ok(Diagonal(vertices))
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_dash(&self.0))
    }
}

fn join_dash(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join("-")
}

/// Every diagonal of the model, in lexicographic order.
pub fn enumerate_diagonals(params: &ModelParams) -> Vec<Diagonal> {
    fn extend(params: &ModelParams, prefix: &mut Vec<u32>, out: &mut Vec<Diagonal>) {
        if prefix.len() == params.arity() {
            if prefix[prefix.len() - 1] + 2 <= prefix[0] + params.m {
                out.push(Diagonal(prefix.clone()));
            }
            return;
        }
        let start = prefix.last().map_or(1, |&v| v + 2);
        for v in start..=params.m {
            prefix.push(v);
            extend(params, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(params, &mut Vec::with_capacity(params.arity()), &mut out);
    out
}

/// A set of diagonals, kept in canonical lexicographic order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagonalSet(std::collections::BTreeSet<Diagonal>);

impl DiagonalSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parse `d1,d2,...`; whitespace is ignored and the empty string is the empty set.
    pub fn parse(text: &str, params: &ModelParams) -> Result<Self> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Ok(Self::new());
        }
        cleaned
            .split(',')
            .map(|p| Diagonal::parse(p, params))
            .collect()
    }

    pub fn insert(&mut self, d: Diagonal) -> bool {
        self.0.insert(d)
    }

    pub fn contains(&self, d: &Diagonal) -> bool {
        self.0.contains(d)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Diagonal> + '_ {
        self.0.iter()
    }
}

impl FromIterator<Diagonal> for DiagonalSet {
    fn from_iter<I: IntoIterator<Item = Diagonal>>(iter: I) -> Self {
        DiagonalSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a DiagonalSet {
    type Item = &'a Diagonal;
    type IntoIter = std::collections::btree_set::Iter<'a, Diagonal>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for DiagonalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Diagonal::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for ModelParams {
    type Err = Error;

    /// `n,d`
    fn from_str(s: &str) -> Result<Self> {
        let (n, d) = s
            .split_once(',')
            .ok_or_else(|| Error::Domain(format!("expected `n,d`, got `{s}`")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Domain(format!("not an integer: `{t}`")))
        };
        ModelParams::new(parse(n)?, parse(d)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32, d: u32) -> ModelParams {
        ModelParams::new(n, d).unwrap()
    }

    fn dg(s: &str, params: &ModelParams) -> Diagonal {
        Diagonal::parse(s, params).unwrap()
    }

    fn labels(params: &ModelParams) -> Vec<String> {
        enumerate_diagonals(params)
            .iter()
            .map(|d| d.vertices().iter().map(u32::to_string).collect())
            .collect()
    }

    #[test]
    fn params_vertex_count() {
        assert_eq!(p(2, 2).m(), 7);
        assert_eq!(p(2, 3).m(), 9);
        assert_eq!(p(1, 1).m(), 4);
        assert!(matches!(ModelParams::new(0, 1), Err(Error::Domain(_))));
        assert!(matches!(ModelParams::new(1, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn enumerates_worked_examples() {
        assert_eq!(
            labels(&p(2, 2)),
            ["135", "136", "146", "246", "247", "257", "357"]
        );
        assert_eq!(
            labels(&p(2, 3)),
            ["1357", "1358", "1368", "1468", "2468", "2469", "2479", "2579", "3579"]
        );
        assert_eq!(labels(&p(1, 1)), ["13", "24"]);
    }

    #[test]
    fn intertwining_examples() {
        let q = p(2, 2);
        assert!(dg("135", &q).intertwines(&dg("246", &q)));
        assert!(!dg("135", &q).intertwines(&dg("136", &q)));
        let r = p(2, 3);
        assert!(dg("1358", &r).intertwines(&dg("2479", &r)));
        assert!(!dg("2479", &r).intertwines(&dg("1358", &r)));
    }

    #[test]
    fn shift_examples() {
        let q = p(2, 2);
        assert_eq!(dg("246", &q).shift(&q, 1), dg("135", &q));
        assert_eq!(dg("135", &q).shift(&q, 1), dg("247", &q));
        let s = p(1, 1);
        assert_eq!(dg("13", &s).shift(&s, 1), dg("24", &s));
        assert_eq!(dg("135", &q).shift(&q, 7), dg("135", &q));
        assert_eq!(dg("135", &q).shift(&q, -1).shift(&q, 1), dg("135", &q));
    }

    #[test]
    fn parse_forms_and_errors() {
        let q = p(2, 2);
        assert_eq!(dg("1-3-5", &q).vertices(), &[1, 3, 5]);
        assert_eq!(dg("135", &q), dg(" 1-3-5 ", &q));
        assert_eq!(dg("135", &q).to_string(), "1-3-5");

        let s = p(1, 1);
        assert!(matches!(
            Diagonal::parse("1-4", &s),
            Err(Error::Parse(ParseError::Gap { .. }))
        ));
        assert!(matches!(
            Diagonal::parse("1-3-5", &s),
            Err(Error::Parse(ParseError::Arity { .. }))
        ));
        assert!(matches!(
            Diagonal::parse("1-x", &s),
            Err(Error::Parse(ParseError::Malformed(_)))
        ));
        let big = p(5, 2);
        assert!(matches!(
            Diagonal::parse("135", &big),
            Err(Error::Parse(ParseError::DigitsNeedSmallModel(_)))
        ));
        assert_eq!(dg("1-3-9", &big).to_string(), "1-3-9");
    }

    #[test]
    fn set_parse_sorts_and_ignores_whitespace() {
        let q = p(2, 2);
        let s = DiagonalSet::parse(" 2-4-6 , 135", &q).unwrap();
        assert_eq!(s.to_string(), "1-3-5,2-4-6");
        assert!(DiagonalSet::parse("", &q).unwrap().is_empty());
    }
}
