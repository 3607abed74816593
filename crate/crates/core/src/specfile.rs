//! TOML spec files. A file names a `family` and either a `preset` (with
//! optional integer parameters `k`, `m`, `n`) or the explicit keys of that
//! family. Rationals are always quoted strings such as `"-3/2"`.
//!
//! ```toml
//! family = "block1"
//! gamma_generators = [["1", "0"]]
//! j = ["nat", "nat"]
//! ```

use serde::Deserialize;

use crate::block::{BlockISpec, BlockIISpec, SuperSpec};
use crate::error::{Error, Result};
use crate::family::{Family, WeylKind};
use crate::grpalg::{AlgebraSpec, JFlag};
use crate::ham_contact::{ContactSpec, HamSpec};
use crate::lattice::Lattice;
use crate::linalg::RatMatrix;
use crate::rational::{parse_rationals, RatVector};
use crate::weyl::{IdealPattern, WeylAlgebra};
use crate::witt::WittSpec;

pub const PRESETS: &[&str] = &[
    "example-2-19",
    "example-3-1",
    "example-3-2",
    "example-3-3",
    "super-virasoro",
    "classical-ham",
    "classical-contact",
];

/// Raw file contents; every key is optional at this stage.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub family: Option<String>,
    pub preset: Option<String>,
    pub k: Option<i64>,
    pub m: Option<i64>,
    pub n: Option<i64>,
    pub l1: Option<usize>,
    pub l2: Option<usize>,
    pub l3: Option<usize>,
    pub gamma_generators: Option<Vec<Vec<String>>>,
    pub j: Option<Vec<String>>,
    pub rho: Option<Vec<String>>,
    pub kappa: Option<Vec<String>>,
    pub k1: Option<usize>,
    pub d0: Option<usize>,
    pub gamma0_generators: Option<Vec<Vec<String>>>,
    pub gamma1_generators: Option<Vec<Vec<String>>>,
    pub phi: Option<Vec<Vec<String>>>,
    pub sigma: Option<Vec<Vec<String>>>,
    pub sigma0: Option<Vec<String>>,
    pub ell_prime: Option<usize>,
    pub ideal_m: Option<Vec<Vec<u32>>>,
    pub ideal_n: Option<Vec<Vec<u32>>>,
}

fn missing(key: &str, family: &str) -> Error {
    Error::SpecFile(format!("family `{family}` needs key `{key}`"))
}

fn vector(v: &[String], dim: usize, what: &str) -> Result<RatVector> {
    let r = RatVector(parse_rationals(v)?);
    if r.dim() != dim {
        return Err(Error::SpecFile(format!(
            "`{what}` needs {dim} entries, found {}",
            r.dim()
        )));
    }
    Ok(r)
}

fn lattice(gens: Option<&Vec<Vec<String>>>, dim: usize, what: &str) -> Result<Lattice> {
    let gens = gens
        .map(|g| g.iter().map(|v| vector(v, dim, what)).collect::<Result<Vec<_>>>())
        .transpose()?
        .unwrap_or_default();
    Lattice::new(gens, dim)
}

fn flags(j: Option<&Vec<String>>, dim: usize, family: &str) -> Result<Vec<JFlag>> {
    let j = j.ok_or_else(|| missing("j", family))?;
    if j.len() != dim {
        return Err(Error::SpecFile(format!(
            "`j` needs {dim} entries, found {}",
            j.len()
        )));
    }
    j.iter()
        .map(|s| match s.as_str() {
            "nat" | "N" => Ok(JFlag::Nat),
            "zero" | "0" => Ok(JFlag::Zero),
            other => Err(Error::SpecFile(format!(
                "J flags are \"nat\" or \"zero\", found {other:?}"
            ))),
        })
        .collect()
}

fn matrix(rows: &[Vec<String>], n: usize, what: &str) -> Result<RatMatrix> {
    if rows.len() != n {
        return Err(Error::SpecFile(format!("`{what}` needs {n} rows")));
    }
    rows.iter().map(|r| vector(r, n, what).map(|v| v.0)).collect()
}

fn positive(x: Option<i64>, default: i64, key: &str) -> Result<i64> {
    let v = x.unwrap_or(default);
    if v <= 0 {
        return Err(Error::SpecFile(format!("`{key}` must be positive")));
    }
    Ok(v)
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::SpecFile(e.to_string()))
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    fn has_explicit_keys(&self) -> bool {
        self.l1.is_some()
            || self.l2.is_some()
            || self.l3.is_some()
            || self.gamma_generators.is_some()
            || self.j.is_some()
            || self.rho.is_some()
            || self.kappa.is_some()
            || self.k1.is_some()
            || self.d0.is_some()
            || self.gamma0_generators.is_some()
            || self.gamma1_generators.is_some()
            || self.phi.is_some()
            || self.sigma.is_some()
            || self.sigma0.is_some()
            || self.ell_prime.is_some()
            || self.ideal_m.is_some()
            || self.ideal_n.is_some()
    }

    /// Builds the family. Structural problems are errors; side conditions
    /// are left to [`Family::validate`].
    pub fn build(&self) -> Result<Family> {
        match &self.preset {
            Some(p) => {
                if self.has_explicit_keys() {
                    return Err(Error::SpecFile(
                        "a preset cannot be combined with explicit family keys".into(),
                    ));
                }
                let fam = self.preset(p)?;
                if let Some(f) = &self.family {
                    if f != fam.name() {
                        return Err(Error::SpecFile(format!(
                            "preset `{p}` belongs to family `{}`, not `{f}`",
                            fam.name()
                        )));
                    }
                }
                Ok(fam)
            }
            None => self.explicit(),
        }
    }

    fn preset(&self, name: &str) -> Result<Family> {
        let fam = match name {
            "example-2-19" => Family::Witt(WittSpec::example_2_19(positive(self.k, 2, "k")? as usize)?),
            "example-3-1" => Family::Block1(BlockISpec::example_3_1(positive(self.m, 2, "m")?)?),
            "example-3-2" => Family::Block2(BlockIISpec::example_3_2(
                positive(self.m, 1, "m")?,
                self.n.unwrap_or(1),
            )?),
            "example-3-3" => Family::Block3(SuperSpec::example_3_3(
                positive(self.k, 2, "k")?,
                self.m.unwrap_or(1),
                self.n.unwrap_or(1),
            )?),
            "super-virasoro" => Family::Block3(SuperSpec::super_virasoro()?),
            "classical-ham" => Family::Ham(HamSpec::classical(positive(self.k, 2, "k")? as usize)?),
            "classical-contact" => {
                Family::Contact(ContactSpec::classical(positive(self.k, 1, "k")? as usize)?)
            }
            other => {
                return Err(Error::SpecFile(format!(
                    "unknown preset `{other}`; known presets: {}",
                    PRESETS.join(", ")
                )))
            }
        };
        Ok(fam)
    }

    fn witt(&self, family: &str) -> Result<WittSpec> {
        let l1 = self.l1.unwrap_or(0);
        let l2 = self.l2.unwrap_or(0);
        let l3 = self.l3.unwrap_or(0);
        if self.l1.is_none() && self.l2.is_none() && self.l3.is_none() {
            return Err(missing("l1/l2/l3", family));
        }
        let gamma = lattice(self.gamma_generators.as_ref(), l2 + l3, "gamma_generators")?;
        WittSpec::new(l1, l2, l3, gamma)
    }

    fn block_base(&self, family: &str, d: usize) -> Result<AlgebraSpec> {
        let gamma = lattice(self.gamma_generators.as_ref(), d, "gamma_generators")?;
        AlgebraSpec::new(gamma, flags(self.j.as_ref(), d, family)?, 0)
    }

    fn kappa(&self, family: &str, d: usize) -> Result<RatVector> {
        vector(self.kappa.as_ref().ok_or_else(|| missing("kappa", family))?, d, "kappa")
    }

    fn explicit(&self) -> Result<Family> {
        let family = self
            .family
            .as_deref()
            .ok_or_else(|| Error::SpecFile("missing `family` (or `preset`)".into()))?;
        let fam = match family {
            "witt" => Family::Witt(self.witt(family)?),
            "s" => {
                let witt = self.witt(family)?;
                let dim = witt.l2() + witt.l3();
                let rho = match &self.rho {
                    Some(r) => vector(r, dim, "rho")?,
                    None => RatVector::zeros(dim),
                };
                Family::S { witt, rho }
            }
            "block1" => Family::Block1(BlockISpec::new(self.block_base(family, 2)?)?),
            "block2" => Family::Block2(BlockIISpec::new(
                self.block_base(family, 4)?,
                self.kappa(family, 4)?,
            )?),
            "block3" => Family::Block3(SuperSpec::new(
                self.block_base(family, 2)?,
                self.kappa(family, 2)?,
            )?),
            "ham" => Family::Ham(self.ham()?),
            "contact" => Family::Contact(self.contact()?),
            "weyl-gl" | "weyl-sl" | "weyl-o" | "weyl-sp" => {
                let kind = match family {
                    "weyl-gl" => WeylKind::Gl,
                    "weyl-sl" => WeylKind::Sl,
                    "weyl-o" => WeylKind::O,
                    _ => WeylKind::Sp,
                };
                let alg = WeylAlgebra::new(self.witt(family)?);
                let ell_prime = self.ell_prime.unwrap_or(alg.witt().l1());
                let pattern = match (&self.ideal_m, &self.ideal_n) {
                    (Some(m), Some(n)) => IdealPattern::new(&alg, ell_prime, m.clone(), n.clone())?,
                    (None, None) => {
                        let k = positive(self.k, 2, "k")? as usize;
                        IdealPattern::trivial(&alg, ell_prime, k)?
                    }
                    _ => {
                        return Err(Error::SpecFile(
                            "`ideal_m` and `ideal_n` must be given together".into(),
                        ))
                    }
                };
                Family::Weyl {
                    kind,
                    alg,
                    pattern,
                }
            }
            other => return Err(Error::SpecFile(format!("unknown family `{other}`"))),
        };
        Ok(fam)
    }

    fn ham(&self) -> Result<HamSpec> {
        let family = "ham";
        let k = self.k.ok_or_else(|| missing("k", family))?;
        let k = usize::try_from(k).map_err(|_| Error::SpecFile("`k` must be positive".into()))?;
        let d0 = self
            .d0
            .or_else(|| self.gamma0_generators.as_ref().and_then(|g| g.first()).map(Vec::len))
            .unwrap_or(0);
        let gamma0 = lattice(self.gamma0_generators.as_ref(), d0, "gamma0_generators")?;
        let gamma1 = lattice(self.gamma1_generators.as_ref(), 2 * k, "gamma1_generators")?;
        let n = d0 + 2 * k;
        let phi = match &self.phi {
            Some(rows) => matrix(rows, n, "phi")?,
            None => vec![vec![num_traits::Zero::zero(); n]; n],
        };
        let sigma = match &self.sigma {
            Some(s) => s.iter().map(|v| vector(v, n, "sigma")).collect::<Result<Vec<_>>>()?,
            None => vec![RatVector::zeros(n); k],
        };
        HamSpec::new(
            k,
            self.k1.unwrap_or(0),
            gamma0,
            gamma1,
            flags(self.j.as_ref(), 2 * k, family)?,
            phi,
            sigma,
        )
    }

    fn contact(&self) -> Result<ContactSpec> {
        let family = "contact";
        let k = self.k.ok_or_else(|| missing("k", family))?;
        let k = usize::try_from(k).map_err(|_| Error::SpecFile("`k` must be positive".into()))?;
        let n = 2 * k + 1;
        let gamma0 = lattice(self.gamma0_generators.as_ref(), 1, "gamma0_generators")?;
        let gamma1 = lattice(self.gamma1_generators.as_ref(), 2 * k, "gamma1_generators")?;
        let sigma0 = match &self.sigma0 {
            Some(v) => vector(v, n, "sigma0")?,
            None => RatVector::zeros(n),
        };
        let sigma = self
            .sigma
            .as_ref()
            .ok_or_else(|| missing("sigma", family))?
            .iter()
            .map(|v| vector(v, n, "sigma"))
            .collect::<Result<Vec<_>>>()?;
        ContactSpec::new(
            k,
            gamma0,
            gamma1,
            flags(self.j.as_ref(), n, family)?,
            sigma0,
            sigma,
        )
    }
}

/// Reads and builds a spec file.
pub fn load(path: &std::path::Path) -> Result<Family> {
    SpecFile::read(path)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(text: &str) -> Result<Family> {
        SpecFile::parse(text)?.build()
    }

    #[test]
    fn presets_validate() {
        for p in PRESETS {
            let fam = build(&format!("preset = \"{p}\"")).unwrap();
            assert_eq!(fam.validate(), vec![], "{p}");
        }
    }

    #[test]
    fn preset_excludes_explicit_keys() {
        assert!(build("preset = \"example-3-1\"\nj = [\"nat\", \"nat\"]").is_err());
        assert!(build("preset = \"example-3-1\"\nfamily = \"witt\"").is_err());
        assert!(build("preset = \"example-3-1\"\nm = 3").is_ok());
        assert!(build("preset = \"nope\"").is_err());
    }

    #[test]
    fn explicit_block1() {
        let fam = build(
            "family = \"block1\"\ngamma_generators = [[\"1\", \"0\"]]\nj = [\"nat\", \"nat\"]",
        )
        .unwrap();
        assert_eq!(fam.validate(), vec![]);
        let bad = build("family = \"block1\"\ngamma_generators = [[\"1\", \"0\"]]\nj = [\"nat\", \"zero\"]")
            .unwrap();
        assert_eq!(bad.validate()[0].code, "3.5");
    }

    #[test]
    fn malformed_files() {
        assert!(matches!(build("family = "), Err(Error::SpecFile(_))));
        assert!(matches!(build("family = \"block1\"\nbogus = 1"), Err(Error::SpecFile(_))));
        assert!(build("family = \"block1\"\ngamma_generators = [[\"1\"]]\nj = [\"nat\", \"nat\"]").is_err());
        assert!(build("family = \"block1\"\ngamma_generators = [[1, 0]]\nj = [\"nat\", \"nat\"]").is_err());
    }

    #[test]
    fn explicit_ham_and_contact() {
        let ham = build(
            r#"
family = "ham"
k = 1
k1 = 0
gamma0_generators = [["1"]]
gamma1_generators = [["1", "0"]]
j = ["nat", "nat"]
phi = [["0", "1", "0"], ["-1", "0", "0"], ["0", "0", "0"]]
"#,
        )
        .unwrap();
        assert_eq!(ham.validate(), vec![]);
        let contact = build(
            r#"
family = "contact"
k = 1
gamma1_generators = [["1", "0"]]
j = ["nat", "nat", "nat"]
sigma = [["0", "-1", "0"]]
"#,
        )
        .unwrap();
        assert_eq!(contact.validate(), vec![]);
    }

    #[test]
    fn explicit_weyl() {
        let fam = build(
            r#"
family = "weyl-o"
l1 = 1
l2 = 1
gamma_generators = [["1"]]
ell_prime = 1
ideal_m = [[1], [0]]
ideal_n = [[0], [1]]
"#,
        )
        .unwrap();
        assert_eq!(fam.name(), "weyl-o");
        let odd = build(
            r#"
family = "weyl-o"
l1 = 1
l2 = 1
gamma_generators = [["1"]]
ideal_m = [[1], [0]]
ideal_n = [[0], [0]]
"#,
        );
        assert!(odd.is_err());
    }
}
