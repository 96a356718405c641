//! JSON fixtures describing complexes.
//!
//! ```json
//! {
//!   "name": "p2m37_n3",
//!   "n": 3,
//!   "ring": "equivariant",
//!   "modules": { "-1": [-2], "0": [-6, -4] },
//!   "differentials": { "-1": [["3*x^2 + 2*a2*x + a1"], ["6*x + 2*a2"]] }
//! }
//! ```
//!
//! Modules map a homological degree to the q-labels of its generators.
//! Matrices are row-major with one row per target generator. Specialized
//! fixtures use `"ring": "specialized"` and give the potential.

use std::collections::BTreeMap;
use std::path::Path;

use gimel_core::chain::{GradedFreeComplex, PolyMatrix};
use gimel_core::poly::{Potential, RingCtx, RingKind};
use serde::{Deserialize, Serialize};

use crate::error::{read, write, CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Equivariant,
    Specialized,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub ring: Ring,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub potential: Option<String>,
    pub modules: BTreeMap<String, Vec<i64>>,
    #[serde(default)]
    pub differentials: BTreeMap<String, Vec<Vec<String>>>,
}

fn schema(path: &Path, field: impl Into<String>, msg: impl Into<String>) -> CliError {
    CliError::Schema { path: path.to_path_buf(), field: field.into(), msg: msg.into() }
}

fn degree_key(path: &Path, field: &str, key: &str) -> Result<i32> {
    key.parse()
        .map_err(|_| schema(path, format!("{field}.{key}"), "degree keys must be integers"))
}

impl Fixture {
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Json { path: path.to_path_buf(), msg: e.to_string() })
    }

    pub fn ctx(&self, path: &Path) -> Result<RingCtx> {
        match (self.ring, &self.potential) {
            (Ring::Equivariant, None) => Ok(RingCtx::equivariant(self.n)?),
            (Ring::Equivariant, Some(_)) => Err(schema(path, "potential", "only specialized fixtures carry a potential")),
            (Ring::Specialized, None) => Err(schema(path, "potential", "specialized fixtures need a potential")),
            (Ring::Specialized, Some(p)) => {
                let pot = Potential::parse(p)?;
                if pot.degree() != self.n {
                    return Err(schema(path, "potential", format!("degree {} but n = {}", pot.degree(), self.n)));
                }
                Ok(RingCtx::specialized(pot))
            }
        }
    }

    /// Builds and validates the complex.
    pub fn to_complex(&self, path: &Path) -> Result<GradedFreeComplex> {
        let ctx = self.ctx(path)?;
        let mut modules = BTreeMap::new();
        for (k, labels) in &self.modules {
            modules.insert(degree_key(path, "modules", k)?, labels.clone());
        }
        let rank = |i: i32| modules.get(&i).map_or(0, Vec::len);
        let mut diffs = BTreeMap::new();
        for (k, rows) in &self.differentials {
            let i = degree_key(path, "differentials", k)?;
            let field = format!("differentials.{k}");
            if rows.len() != rank(i + 1) {
                return Err(schema(path, field, format!("{} rows, expected {}", rows.len(), rank(i + 1))));
            }
            let mut parsed = Vec::with_capacity(rows.len());
            for (r, row) in rows.iter().enumerate() {
                if row.len() != rank(i) {
                    return Err(schema(path, format!("{field}[{r}]"), format!("{} entries, expected {}", row.len(), rank(i))));
                }
                let entries = row
                    .iter()
                    .enumerate()
                    .map(|(s, e)| ctx.parse(e).map_err(|err| schema(path, format!("{field}[{r}][{s}]"), err.to_string())))
                    .collect::<Result<Vec<_>>>()?;
                parsed.push(entries);
            }
            diffs.insert(i, PolyMatrix::from_rows(parsed, rank(i))?);
        }
        let c = GradedFreeComplex::new(ctx, modules, diffs)?;
        c.check_valid()?;
        Ok(c)
    }

    pub fn from_complex(c: &GradedFreeComplex, name: Option<String>) -> Self {
        let ctx = c.ctx();
        let (ring, potential) = match ctx.kind() {
            RingKind::Equivariant => (Ring::Equivariant, None),
            RingKind::Specialized(p) => (Ring::Specialized, Some(p.to_string())),
        };
        let modules = c.modules().iter().map(|(i, l)| (i.to_string(), l.clone())).collect();
        let differentials = c
            .differentials()
            .iter()
            .map(|(i, d)| {
                let rows = (0..d.rows())
                    .map(|r| (0..d.cols()).map(|s| d.entry(r, s).to_string()).collect())
                    .collect();
                (i.to_string(), rows)
            })
            .collect();
        Fixture { name, n: c.n(), ring, potential, modules, differentials }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fixture serializes") + "\n"
    }
}

/// Reads a fixture file; the name defaults to the file stem.
pub fn load_fixture(path: &Path) -> Result<(Fixture, GradedFreeComplex)> {
    let mut f = Fixture::parse(&read(path)?, path)?;
    if f.name.is_none() {
        f.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    }
    let c = f.to_complex(path)?;
    Ok((f, c))
}

pub fn save_fixture(c: &GradedFreeComplex, name: Option<String>, path: &Path) -> Result<()> {
    write(path, &Fixture::from_complex(c, name).to_json())
}
