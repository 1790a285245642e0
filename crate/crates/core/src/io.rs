//! JSON file formats.
//!
//! * Algebra: `{"dim": n, "labels": [..], "sc": [[i, j, k, "p/q"], ..]}` with
//!   0-based indices; omitted triples are zero.
//! * Embedding: `{"ambient": <algebra object or path>, "basis": [[..], ..]}`.
//! * Operator: `{"dim": n, "layout": "column-major", "matrix": [[..], ..]}`
//!   where `matrix[j]` is the image of `e_j`.
//! * Element: a bare coordinate array or `{"element": [..]}`.
//! * Grid: a bare array of points or `{"points": [[..], ..]}`.
//!
//! Scalars are written as canonical strings and read from strings or integers.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element, Embedding, Provenance};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::operator::LinearOperator;
use crate::scalar::Scalar;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub sc: Vec<(usize, usize, usize, Scalar)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl AlgebraFile {
    pub fn from_algebra(a: &Algebra) -> Self {
        AlgebraFile {
            dim: a.dim(),
            labels: a.labels().map(<[String]>::to_vec),
            sc: a.entries(),
            provenance: a.provenance().cloned(),
        }
    }

    pub fn into_algebra(self) -> Result<Algebra> {
        let mut a = Algebra::new(self.dim, self.sc)?;
        if let Some(labels) = self.labels {
            if labels.len() != self.dim {
                return Err(Error::Format(format!(
                    "{} labels for an algebra of dimension {}",
                    labels.len(),
                    self.dim
                )));
            }
            a = a.with_labels(labels);
        }
        if let Some(p) = self.provenance {
            a = a.with_provenance(p);
        }
        Ok(a)
    }
}

pub fn algebra_to_json(a: &Algebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(a)).expect("serializable")
}

pub fn algebra_from_json(s: &str) -> Result<Algebra> {
    serde_json::from_str::<AlgebraFile>(s)?.into_algebra()
}

pub fn read_algebra(path: &Path) -> Result<Algebra> {
    algebra_from_json(&fs::read_to_string(path)?)
}

/// The `ambient` field of an embedding file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AmbientRef {
    Path(PathBuf),
    Inline(AlgebraFile),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EmbeddingFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<AmbientRef>,
    pub basis: Vec<Vec<Scalar>>,
}

pub fn embedding_to_json(emb: &Embedding) -> String {
    let file = EmbeddingFile {
        ambient: Some(AmbientRef::Inline(AlgebraFile::from_algebra(emb.ambient()))),
        basis: emb.basis().iter().map(|b| b.coords().to_vec()).collect(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

/// Parse an embedding. A path-valued `ambient` is resolved against
/// `base_dir`; `ambient_override` replaces or supplies the ambient algebra.
pub fn embedding_from_json(
    s: &str,
    base_dir: Option<&Path>,
    ambient_override: Option<Algebra>,
) -> Result<Embedding> {
    let file: EmbeddingFile = serde_json::from_str(s)?;
    let ambient = match (ambient_override, file.ambient) {
        (Some(a), _) => a,
        (None, Some(AmbientRef::Inline(a))) => a.into_algebra()?,
        (None, Some(AmbientRef::Path(p))) => {
            let p = match base_dir {
                Some(dir) if p.is_relative() => dir.join(p),
                _ => p,
            };
            read_algebra(&p)?
        }
        (None, None) => return Err(Error::Format("embedding has no ambient algebra".into())),
    };
    let basis = file.basis.into_iter().map(Element::new).collect();
    Embedding::new(ambient, basis)
}

pub fn read_embedding(path: &Path, ambient_override: Option<Algebra>) -> Result<Embedding> {
    embedding_from_json(&fs::read_to_string(path)?, path.parent(), ambient_override)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OperatorFile {
    pub dim: usize,
    #[serde(default = "column_major")]
    pub layout: String,
    pub matrix: Vec<Vec<Scalar>>,
}

fn column_major() -> String {
    "column-major".to_string()
}

pub fn operator_to_json(r: &LinearOperator) -> String {
    let n = r.dim();
    let file = OperatorFile {
        dim: n,
        layout: column_major(),
        matrix: (0..n).map(|j| r.matrix().column(j)).collect(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

pub fn operator_from_json(s: &str) -> Result<LinearOperator> {
    let file: OperatorFile = serde_json::from_str(s)?;
    let columns = match file.layout.as_str() {
        "column-major" => file.matrix,
        "row-major" => {
            let rows = Matrix::from_rows(file.matrix);
            (0..rows.cols()).map(|j| rows.column(j)).collect()
        }
        other => return Err(Error::Format(format!("unknown operator layout {other:?}"))),
    };
    if columns.len() != file.dim || columns.iter().any(|c| c.len() != file.dim) {
        return Err(Error::Format(format!(
            "operator matrix is not {0}×{0}",
            file.dim
        )));
    }
    LinearOperator::with_dim(file.dim, Matrix::from_columns(file.dim, &columns))
}

pub fn read_operator(path: &Path) -> Result<LinearOperator> {
    operator_from_json(&fs::read_to_string(path)?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ElementFile {
    Bare(Vec<Scalar>),
    Wrapped { element: Vec<Scalar> },
}

pub fn element_from_json(s: &str) -> Result<Element> {
    Ok(match serde_json::from_str::<ElementFile>(s)? {
        ElementFile::Bare(c) | ElementFile::Wrapped { element: c } => Element::new(c),
    })
}

pub fn read_element(path: &Path) -> Result<Element> {
    element_from_json(&fs::read_to_string(path)?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GridFile {
    Bare(Vec<Vec<Scalar>>),
    Wrapped { points: Vec<Vec<Scalar>> },
}

pub fn grid_from_json(s: &str) -> Result<Vec<Vec<Scalar>>> {
    Ok(match serde_json::from_str::<GridFile>(s)? {
        GridFile::Bare(p) | GridFile::Wrapped { points: p } => p,
    })
}

pub fn read_grid(path: &Path) -> Result<Vec<Vec<Scalar>>> {
    grid_from_json(&fs::read_to_string(path)?)
}
