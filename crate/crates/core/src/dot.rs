//! Graphviz output for the Hom and ext structure of a model.

use std::fmt::Write;

use crate::hom::HomModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuiverKind {
    /// Arrow `X -> Y` iff `Hom(X, Y) != 0` and `X != Y`.
    Hom,
    /// Edge `X -- Y` iff `ext(X, Y)` or `ext(Y, X)`; loops for self-extensions.
    Ext,
}

/// Byte-stable DOT text: nodes and edges in canonical object order.
pub fn emit_quiver(model: &HomModel, kind: QuiverKind) -> String {
    let n = model.len();
    let (header, arrow) = match kind {
        QuiverKind::Hom => ("digraph hom", "->"),
        QuiverKind::Ext => ("graph ext", "--"),
    };
    let mut out = String::new();
    writeln!(out, "{header} {{").unwrap();
    for i in 0..n {
        writeln!(out, "  \"{}\";", model.label(i)).unwrap();
    }
    for i in 0..n {
        for j in 0..n {
            let edge = match kind {
                QuiverKind::Hom => i != j && model.hom_nonzero(i, j),
                QuiverKind::Ext => i <= j && (model.ext(i, j) || model.ext(j, i)),
            };
            if edge {
                writeln!(
                    out,
                    "  \"{}\" {arrow} \"{}\";",
                    model.label(i),
                    model.label(j)
                )
                .unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}
