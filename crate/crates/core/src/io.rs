//! JSON files for presentations and matrix groups.
//!
//! Presentation:
//! `{"field": 3, "generators": ["x","y","z"], "order": ["x","y","z"],
//!   "relations": [[["yz","1"], ["zy","2"], ["xx","3"]], ...]}`
//!
//! Group:
//! `{"field": 3, "dimension": 3, "generators": [{"name": "e1", "matrix": [["0","1","0"], ...]}]}`
//!
//! `order` is optional and lists generators from largest to smallest.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{CycError, CycNum, FieldCtx};
use crate::engine::{EngineError, Presentation};
use crate::freealg::{FreeAlgError, NcPoly, Word};
use crate::group::{GroupError, Mat, MatAction, DEFAULT_ORDER_CAP};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Field(#[from] CycError),
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub field: u32,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<String>>,
    pub relations: Vec<Vec<(String, String)>>,
}

impl PresentationFile {
    pub fn from_presentation(p: &Presentation) -> PresentationFile {
        let gens = p.gens().to_vec();
        let order: Vec<usize> = p.order();
        let natural = order.iter().enumerate().all(|(i, &l)| i == l);
        PresentationFile {
            field: p.ctx().m(),
            generators: gens.clone(),
            order: (!natural).then(|| order.iter().map(|&l| gens[l].clone()).collect()),
            relations: p
                .relations()
                .iter()
                .map(|r| r.terms().iter().map(|(w, c)| (w.to_text(&gens), c.to_string())).collect())
                .collect(),
        }
    }

    pub fn to_presentation(&self) -> Result<Presentation, IoError> {
        let ctx = FieldCtx::new(self.field)?;
        let gens = self.generators.clone();
        if gens.iter().any(|g| g.chars().count() != 1) {
            return Err(FreeAlgError::NonCharGenerator(gens.join(",")).into());
        }
        let mut rels = Vec::new();
        for (i, terms) in self.relations.iter().enumerate() {
            let first = terms.first().ok_or_else(|| IoError::Invalid(format!("relation {i} has no terms")))?;
            let degree = first.0.chars().count();
            let parsed = terms
                .iter()
                .map(|(w, c)| Ok((Word::parse(w, &gens)?, CycNum::parse(&ctx, c)?)))
                .collect::<Result<Vec<_>, IoError>>()?;
            rels.push(NcPoly::from_terms(&ctx, degree, parsed)?);
        }
        let mut p = Presentation::new(&ctx, gens.clone(), rels)?;
        if let Some(order) = &self.order {
            let idx = order
                .iter()
                .map(|name| gens.iter().position(|g| g == name).ok_or_else(|| IoError::Invalid(format!("unknown generator {name} in order"))))
                .collect::<Result<Vec<_>, _>>()?;
            p = p.with_order(&idx)?;
        }
        Ok(p)
    }
}

pub fn presentation_to_json(p: &Presentation) -> String {
    serde_json::to_string_pretty(&PresentationFile::from_presentation(p)).expect("serializable")
}

pub fn presentation_from_json(text: &str) -> Result<Presentation, IoError> {
    serde_json::from_str::<PresentationFile>(text)?.to_presentation()
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GroupGenerator {
    pub name: String,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub field: u32,
    pub dimension: usize,
    pub generators: Vec<GroupGenerator>,
}

impl GroupFile {
    pub fn from_action(g: &MatAction) -> GroupFile {
        GroupFile {
            field: g.ctx().m(),
            dimension: g.n(),
            generators: g
                .generators()
                .iter()
                .map(|(name, m)| GroupGenerator {
                    name: name.clone(),
                    matrix: m.rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect(),
                })
                .collect(),
        }
    }

    pub fn to_action(&self, ctx: &Arc<FieldCtx>) -> Result<MatAction, IoError> {
        if ctx.m() != self.field {
            return Err(CycError::ContextMismatch(ctx.m(), self.field).into());
        }
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let rows = g
                    .matrix
                    .iter()
                    .map(|r| r.iter().map(|c| CycNum::parse(ctx, c)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                if rows.len() != self.dimension {
                    return Err(IoError::Invalid(format!("matrix {} is not {}x{}", g.name, self.dimension, self.dimension)));
                }
                Ok((g.name.clone(), Mat::from_rows(rows)?))
            })
            .collect::<Result<Vec<_>, IoError>>()?;
        Ok(MatAction::close(ctx, self.dimension, gens, DEFAULT_ORDER_CAP)?)
    }
}

pub fn group_to_json(g: &MatAction) -> String {
    serde_json::to_string_pretty(&GroupFile::from_action(g)).expect("serializable")
}

pub fn group_from_json(ctx: &Arc<FieldCtx>, text: &str) -> Result<MatAction, IoError> {
    serde_json::from_str::<GroupFile>(text)?.to_action(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{preset, PRESET_NAMES};
    use crate::group::builtin_group;

    fn params(ctx: &Arc<FieldCtx>, name: &str) -> Vec<CycNum> {
        let n = |v| CycNum::from_int(ctx, v);
        match name {
            "sklyanin" => vec![n(1), n(2), n(3)],
            "degenerate" => vec![n(0), n(0), n(1)],
            "T" | "M" => vec![n(1), CycNum::omega(ctx).unwrap()],
            "zhang" => vec![n(2)],
            _ => vec![],
        }
    }

    #[test]
    fn presets_round_trip_bit_exactly() {
        let ctx = FieldCtx::new(3).unwrap();
        for name in PRESET_NAMES {
            let p = preset(&ctx, name, &params(&ctx, name)).unwrap();
            let text = presentation_to_json(&p);
            let back = presentation_from_json(&text).unwrap();
            assert_eq!(back, p, "{name}");
            assert_eq!(presentation_to_json(&back), text);
        }
    }

    #[test]
    fn order_is_kept() {
        let ctx = FieldCtx::new(3).unwrap();
        let p = preset(&ctx, "poly", &[]).unwrap().with_order(&[2, 0, 1]).unwrap();
        let text = presentation_to_json(&p);
        assert!(text.contains("\"order\""));
        assert_eq!(presentation_from_json(&text).unwrap(), p);
    }

    #[test]
    fn rejects_bad_files() {
        let bad = [
            r#"{"field":3,"generators":["x","y"],"relations":[[["xz","1"]]]}"#,
            r#"{"field":3,"generators":["x","y"],"relations":[[["xy","1"],["x","1"]]]}"#,
            r#"{"field":3,"generators":["x","y"],"relations":[[["xy","1/0"]]]}"#,
            r#"{"field":3,"generators":["x","y"],"relations":[[]]}"#,
            r#"{"field":3,"generators":["xx","y"],"relations":[]}"#,
            r#"{"field":3,"generators":["x","y"]"#,
        ];
        for b in bad {
            assert!(presentation_from_json(b).is_err(), "{b}");
        }
    }

    #[test]
    fn group_round_trip() {
        let ctx = FieldCtx::new(3).unwrap();
        let h = builtin_group(&ctx, "H3").unwrap();
        let text = group_to_json(&h);
        let back = group_from_json(&ctx, &text).unwrap();
        assert_eq!(back.order(), 27);
        assert_eq!(group_to_json(&back), text);
    }
}
