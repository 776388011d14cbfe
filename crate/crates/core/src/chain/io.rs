//! JSON file formats for complexes.
//!
//! Chain complex: `{"ranks":[r0,...,rn],"boundaries":[B1,...,Bn]}`, with `B_k`
//! a row-major grid of shape `r_{k-1} x r_k`.
//! Simplicial complex: `{"vertices":v,"maximal":[[...],...]}`.

use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::{ChainComplex, ChainError, Result, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialFile {
    pub vertices: usize,
    pub maximal: Vec<Vec<usize>>,
}

/// Either accepted input format.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum InputFile {
    Chain(ComplexFile),
    Simplicial(SimplicialFile),
}

impl InputFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| ChainError::Format(e.to_string()))
    }

    pub fn into_complex(self) -> Result<ChainComplex> {
        match self {
            InputFile::Chain(f) => f.into_complex(),
            InputFile::Simplicial(f) => super::from_simplicial(&f.into_complex()?),
        }
    }
}

impl ComplexFile {
    pub fn into_complex(self) -> Result<ChainComplex> {
        if self.ranks.is_empty() {
            return Err(ChainError::Format("ranks must be nonempty".into()));
        }
        if self.boundaries.len() + 1 != self.ranks.len() {
            return Err(ChainError::Format(format!(
                "{} ranks need {} boundaries",
                self.ranks.len(),
                self.ranks.len() - 1
            )));
        }
        let mut mats = Vec::with_capacity(self.boundaries.len());
        for (i, grid) in self.boundaries.iter().enumerate() {
            let k = i + 1;
            if grid.len() != self.ranks[k - 1] {
                return Err(ChainError::Format(format!(
                    "boundary {k} has {} rows, expected {}",
                    grid.len(),
                    self.ranks[k - 1]
                )));
            }
            mats.push(IntMatrix::from_rows(grid, self.ranks[k])?);
        }
        ChainComplex::new(self.ranks, mats)
    }
}

impl From<&ChainComplex> for ComplexFile {
    fn from(c: &ChainComplex) -> Self {
        ComplexFile { ranks: c.ranks().to_vec(), boundaries: c.boundaries().iter().map(IntMatrix::to_rows).collect() }
    }
}

impl SimplicialFile {
    pub fn into_complex(self) -> Result<SimplicialComplex> {
        SimplicialComplex::new(self.vertices, self.maximal)
    }
}

impl From<&SimplicialComplex> for SimplicialFile {
    fn from(k: &SimplicialComplex) -> Self {
        SimplicialFile { vertices: k.vertex_count(), maximal: k.maximal().to_vec() }
    }
}

impl ChainComplex {
    /// Compact JSON in the complex file format.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ComplexFile::from(self)).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ComplexFile = serde_json::from_str(text).map_err(|e| ChainError::Format(e.to_string()))?;
        file.into_complex()
    }
}

impl SimplicialComplex {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&SimplicialFile::from(self)).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SimplicialFile = serde_json::from_str(text).map_err(|e| ChainError::Format(e.to_string()))?;
        file.into_complex()
    }
}
