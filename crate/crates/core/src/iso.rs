//! The action of `G(ℓ2, ℓ3)` on lattices, driven from TOML files.
//!
//! ```toml
//! # group element
//! l2 = 2
//! l3 = 0
//! matrix = [["2", "0"], ["0", "1"]]
//! ```
//!
//! ```toml
//! # lattice; `dim` is only needed when there are no generators
//! generators = [["1", "0"], ["0", "1"]]
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{BlockMatrix, CanonicalJson, Lattice};
use crate::rational::{parse_rationals, RatVector};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    l2: usize,
    l3: usize,
    matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeFile {
    dim: Option<usize>,
    #[serde(default)]
    generators: Vec<Vec<String>>,
}

fn toml_err(e: toml::de::Error) -> Error {
    Error::SpecFile(e.to_string())
}

/// Parses a group element; shape and invertibility violations come back as
/// [`Error::Shape`] or [`Error::Singular`].
pub fn parse_group(text: &str) -> Result<BlockMatrix> {
    let g: GroupFile = toml::from_str(text).map_err(toml_err)?;
    let m = g
        .matrix
        .iter()
        .map(|r| parse_rationals(r))
        .collect::<Result<Vec<_>>>()?;
    BlockMatrix::check(m, g.l2, g.l3)
}

pub fn parse_lattice(text: &str) -> Result<Lattice> {
    let l: LatticeFile = toml::from_str(text).map_err(toml_err)?;
    let dim = match (l.dim, l.generators.first()) {
        (Some(d), _) => d,
        (None, Some(g)) => g.len(),
        (None, None) => {
            return Err(Error::SpecFile(
                "a lattice without generators needs `dim`".into(),
            ))
        }
    };
    let gens = l
        .generators
        .iter()
        .map(|g| parse_rationals(g).map(RatVector))
        .collect::<Result<Vec<_>>>()?;
    Lattice::new(gens, dim)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub image: CanonicalJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<CanonicalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equal: Option<bool>,
}

/// `g(Γ)`, and whether it equals `Γ'` when one is given.
pub fn iso_act(g: &BlockMatrix, gamma: &Lattice, target: Option<&Lattice>) -> Result<IsoReport> {
    let image = g.act_lattice(gamma)?;
    let equal = target.map(|t| image.equals(t)).transpose()?;
    Ok(IsoReport {
        image: image.to_json(),
        target: target.map(Lattice::to_json),
        equal,
    })
}
