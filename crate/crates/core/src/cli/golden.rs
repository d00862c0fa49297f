//! Versioned golden documents: constituent tables, Δ(k), wave tables.
//!
//! Every exact value is a "num/den" string.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::envelope::rat_string;
use crate::exactnum::{parse_rat, Rat};
use crate::quasipoly::QuasiPoly;
use crate::waves::{Wave, WaveDecomp};
use crate::{Error, Result};

pub const GOLDEN_SCHEMA: &str = "kparts-golden";
pub const GOLDEN_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenDoc {
    pub schema: String,
    pub version: u32,
    pub k: u64,
    #[serde(flatten)]
    pub body: GoldenBody,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GoldenBody {
    /// table[v-1][m] = coefficient of n^m for n ≡ v (mod period), v in 1..=period.
    Constituents {
        period: u64,
        table: Vec<Vec<String>>,
    },
    Delta {
        value: String,
    },
    /// waves["j"][r][m] = coefficient of n^m of W_j for n ≡ r (mod j).
    Waves {
        waves: BTreeMap<String, Vec<Vec<String>>>,
    },
}

fn strings(row: &[Rat]) -> Vec<String> {
    row.iter().map(rat_string).collect()
}

fn parse_row(row: &[String]) -> Result<Vec<Rat>> {
    row.iter()
        .map(|s| parse_rat(s).ok_or_else(|| Error::Domain(format!("bad fraction string {s:?}"))))
        .collect()
}

impl GoldenDoc {
    fn new(k: u64, body: GoldenBody) -> Self {
        Self {
            schema: GOLDEN_SCHEMA.to_string(),
            version: GOLDEN_VERSION,
            k,
            body,
        }
    }

    pub fn constituents(qp: &QuasiPoly) -> Self {
        let table = qp.constituents().iter().map(|c| strings(c)).collect();
        Self::new(
            qp.k(),
            GoldenBody::Constituents {
                period: qp.period(),
                table,
            },
        )
    }

    pub fn delta(k: u64, value: &Rat) -> Self {
        Self::new(
            k,
            GoldenBody::Delta {
                value: rat_string(value),
            },
        )
    }

    pub fn waves(decomp: &WaveDecomp) -> Self {
        let waves = decomp
            .waves()
            .iter()
            .map(|w| {
                (
                    w.j.to_string(),
                    w.residues.iter().map(|r| strings(r)).collect(),
                )
            })
            .collect();
        Self::new(decomp.k(), GoldenBody::Waves { waves })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("golden document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: Self =
            serde_json::from_str(s).map_err(|e| Error::Domain(format!("golden document: {e}")))?;
        if doc.schema != GOLDEN_SCHEMA || doc.version != GOLDEN_VERSION {
            return Err(Error::Domain(format!(
                "unsupported golden schema {} v{}",
                doc.schema, doc.version
            )));
        }
        Ok(doc)
    }

    pub fn to_quasipoly(&self) -> Result<QuasiPoly> {
        match &self.body {
            GoldenBody::Constituents { period, table } => {
                let rows = table.iter().map(|r| parse_row(r)).collect::<Result<_>>()?;
                QuasiPoly::from_constituents(self.k, *period, rows)
            }
            _ => Err(Error::Domain(
                "golden document does not hold constituents".into(),
            )),
        }
    }

    pub fn to_delta(&self) -> Result<Rat> {
        match &self.body {
            GoldenBody::Delta { value } => parse_rat(value)
                .ok_or_else(|| Error::Domain(format!("bad fraction string {value:?}"))),
            _ => Err(Error::Domain(
                "golden document does not hold a determinant".into(),
            )),
        }
    }

    pub fn to_waves(&self) -> Result<WaveDecomp> {
        match &self.body {
            GoldenBody::Waves { waves } => {
                let mut list = waves
                    .iter()
                    .map(|(j, rows)| {
                        let j: u64 = j
                            .parse()
                            .map_err(|_| Error::Domain(format!("bad wave order {j:?}")))?;
                        let residues = rows.iter().map(|r| parse_row(r)).collect::<Result<_>>()?;
                        Ok(Wave { j, residues })
                    })
                    .collect::<Result<Vec<_>>>()?;
                list.sort_by_key(|w| w.j);
                WaveDecomp::from_waves(self.k, list)
            }
            _ => Err(Error::Domain("golden document does not hold waves".into())),
        }
    }
}
