//! JSON documents exchanged by the command-line front end.

use serde::{Deserialize, Serialize};

use crate::hom::HomModel;
use crate::pairs::{pair_class, PairClass, WeakCotorsionPair};

/// How the model of a document was selected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModelRef {
    Params { n: u32, d: u32 },
    Fixture { fixture: String },
    File { file: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub core: Vec<String>,
    pub class: PairClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairListJson {
    pub model: ModelRef,
    pub ordered_pairs: Vec<PairJson>,
}

impl PairListJson {
    pub fn new(model_ref: ModelRef, model: &HomModel, pairs: &[WeakCotorsionPair]) -> Self {
        let max_rigid = crate::pairs::max_rigid_cardinality(model);
        PairListJson {
            model: model_ref,
            ordered_pairs: pairs
                .iter()
                .map(|p| PairJson {
                    x: model.set_labels(p.x),
                    y: model.set_labels(p.y),
                    core: model.set_labels(p.core),
                    class: pair_class(p, max_rigid),
                })
                .collect(),
        }
    }
}
