//! JSON dump of the structure constants, Killing matrix and (optionally) the
//! orthonormal-basis change of coordinates.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::exact::Q;
use crate::lie_core::Algebra;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketTerm {
    pub m: usize,
    pub num: i64,
    pub den: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<BracketTerm>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisVector {
    pub name: String,
    /// Exact coordinates over the root basis, as "num/den" strings.
    pub coeffs: Vec<String>,
}

/// Serializable image of an [`Algebra`], plus the orthonormal basis when the
/// caller attaches one.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StructureDump {
    pub n: usize,
    pub labels: Vec<String>,
    pub brackets: Vec<BracketEntry>,
    /// Killing matrix entries as exact "num/den" strings.
    pub killing: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_basis: Option<Vec<BasisVector>>,
}

fn rat_str(v: &Q) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

fn rat_parts(v: &Q) -> (i64, i64) {
    (
        v.numer().to_i64().expect("structure constant numerator fits i64"),
        v.denom().to_i64().expect("structure constant denominator fits i64"),
    )
}

impl StructureDump {
    pub fn new(alg: &Algebra) -> Self {
        let dim = alg.dim;
        let mut brackets = Vec::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let terms = alg.bracket_terms_q(i, j);
                if terms.is_empty() {
                    continue;
                }
                brackets.push(BracketEntry {
                    i,
                    j,
                    terms: terms
                        .iter()
                        .map(|(m, c)| {
                            let (num, den) = rat_parts(c);
                            BracketTerm { m: *m, num, den }
                        })
                        .collect(),
                });
            }
        }
        let km = alg.killing_matrix();
        let killing =
            (0..dim).map(|i| (0..dim).map(|j| rat_str(&km[(i, j)])).collect()).collect();
        StructureDump {
            n: alg.n,
            labels: alg.labels.iter().map(ToString::to_string).collect(),
            brackets,
            killing,
            b_basis: None,
        }
    }

    pub fn with_b_basis(mut self, vectors: Vec<(String, Vec<Q>)>) -> Self {
        self.b_basis = Some(
            vectors
                .into_iter()
                .map(|(name, coeffs)| BasisVector {
                    name,
                    coeffs: coeffs.iter().map(rat_str).collect(),
                })
                .collect(),
        );
        self
    }
}
