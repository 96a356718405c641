//! Report serialization. Rationals are written as `"p/q"` strings.

use std::path::Path;

use gimel_core::filtration::GimelReport;
use gimel_core::pl::PiecewiseLinear;
use gimel_core::poly::{parse_rational, Q};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{read, CliError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlJson {
    pub breakpoints: Vec<String>,
    pub values: Vec<String>,
}

impl PlJson {
    pub fn from_pl(f: &PiecewiseLinear) -> Self {
        PlJson {
            breakpoints: f.breakpoints().iter().map(Q::to_string).collect(),
            values: f.values().iter().map(Q::to_string).collect(),
        }
    }

    pub fn to_pl(&self) -> gimel_core::Result<PiecewiseLinear> {
        let parse = |v: &[String]| v.iter().map(|s| parse_rational(s)).collect::<gimel_core::Result<Vec<_>>>();
        PiecewiseLinear::new(parse(&self.breakpoints)?, parse(&self.values)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub n: usize,
    pub name: Option<String>,
    pub gimel: PlJson,
    pub gamma: PlJson,
    pub r: String,
    pub u: String,
    pub slope0: String,
    pub value1: String,
    pub s: String,
    pub genus_bound: String,
    pub genus_bound_ceil: String,
}

impl ReportJson {
    pub fn new(rep: &GimelReport, name: Option<String>) -> Self {
        ReportJson {
            n: rep.n,
            name,
            gimel: PlJson::from_pl(&rep.gimel),
            gamma: PlJson::from_pl(&rep.gamma),
            r: rep.r.to_string(),
            u: rep.u.to_string(),
            slope0: rep.slope0.to_string(),
            value1: rep.value1.to_string(),
            s: rep.s_invariant.to_string(),
            genus_bound: rep.genus_bound.to_string(),
            genus_bound_ceil: rep.genus_bound_ceil.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        serde_json::from_str(&read(path)?).map_err(|e| CliError::Json { path: path.to_path_buf(), msg: e.to_string() })
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| "unnamed".into())
    }
}

/// `t,value` rows at the breakpoints and 100 evenly spaced points, decimals
/// rounded to 12 digits.
pub fn plot_csv(f: &PiecewiseLinear) -> String {
    let mut ts: Vec<Q> = (0..100).map(|k| Q::new(k.into(), 99.into())).collect();
    ts.extend(f.breakpoints().iter().cloned());
    ts.sort();
    ts.dedup();
    let mut out = String::from("t,value\n");
    for t in ts {
        let v = f.eval(&t);
        out.push_str(&format!("{:.12},{:.12}\n", t.to_f64().unwrap_or(f64::NAN), v.to_f64().unwrap_or(f64::NAN)));
    }
    out
}
