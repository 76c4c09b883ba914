//! JSON form of a representation. Integers are decimal strings so large
//! coordinates survive any JSON reader.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexOrdering;
use crate::graph6;
use crate::solver::OrthogonalRepresentation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub graph6: String,
    pub order: Vec<usize>,
    pub dimension: usize,
    pub vectors: Vec<Vec<String>>,
}

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

impl RepresentationFile {
    pub fn from_representation(rep: &OrthogonalRepresentation) -> Result<Self> {
        Ok(RepresentationFile {
            graph6: graph6::encode(&rep.graph)?,
            order: rep.order.as_slice().to_vec(),
            dimension: rep.dimension,
            vectors: rep
                .vectors
                .iter()
                .map(|v| v.iter().map(BigInt::to_string).collect())
                .collect(),
        })
    }

    pub fn to_representation(&self) -> Result<OrthogonalRepresentation> {
        let graph = graph6::decode(&self.graph6)?;
        let order = VertexOrdering::new(self.order.clone())
            .map_err(|e| format_err(format!("order: {e}")))?;
        if order.len() != graph.order() {
            return Err(format_err(format!(
                "order lists {} vertices, graph has {}",
                order.len(),
                graph.order()
            )));
        }
        if self.vectors.len() != graph.order() {
            return Err(format_err(format!(
                "{} vectors for {} vertices",
                self.vectors.len(),
                graph.order()
            )));
        }
        let vectors = self
            .vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if v.len() != self.dimension {
                    return Err(format_err(format!(
                        "vector {} has {} entries, dimension is {}",
                        i + 1,
                        v.len(),
                        self.dimension
                    )));
                }
                v.iter()
                    .map(|s| {
                        s.trim().parse::<BigInt>().map_err(|_| {
                            format_err(format!("vector {}: {s:?} is not an integer", i + 1))
                        })
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<BigInt>>>>()?;
        Ok(OrthogonalRepresentation {
            graph,
            order,
            dimension: self.dimension,
            vectors,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| format_err(format!("representation JSON: {e}")))
    }
}

pub fn to_json(rep: &OrthogonalRepresentation) -> Result<String> {
    Ok(RepresentationFile::from_representation(rep)?.to_json())
}

pub fn from_json(text: &str) -> Result<OrthogonalRepresentation> {
    RepresentationFile::from_json(text)?.to_representation()
}
