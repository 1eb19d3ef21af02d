//! JSON wire formats for shift matrices and weight tables.

use serde::{Deserialize, Serialize};

use crate::symbol::RatJson;

use super::shifts::ShiftFamily;
use super::weights::WeightTable;

/// `{"n", "N", "dim", "order":"graded-lex", "shifts":[{"j", "entries":
/// [[row, col, re, im], ..]}, ..]}` with 0-based basis indices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ShiftExport {
    pub n: usize,
    #[serde(rename = "N")]
    pub level: usize,
    pub dim: usize,
    pub order: String,
    pub shifts: Vec<ShiftEntries>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ShiftEntries {
    pub j: usize,
    pub entries: Vec<(usize, usize, f64, f64)>,
}

impl ShiftExport {
    pub fn from_family(family: &ShiftFamily) -> ShiftExport {
        let shifts = (1..=family.arity() as u32)
            .map(|j| {
                let m = family.shift(j);
                let entries = (0..m.dim())
                    .filter_map(|col| {
                        m.entry(col).map(|(row, v)| (row, col, v.re, v.im))
                    })
                    .collect();
                ShiftEntries {
                    j: j as usize,
                    entries,
                }
            })
            .collect();
        ShiftExport {
            n: family.arity(),
            level: family.index().level_cap(),
            dim: family.dim(),
            order: "graded-lex".to_string(),
            shifts,
        }
    }
}

/// `{"weights":[{"word":[..], "num":"..", "den":".."}, ..]}`; numerator and
/// denominator are decimal strings, so arbitrary precision survives.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightExport {
    pub weights: Vec<WeightEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightEntry {
    pub word: Vec<u32>,
    pub num: String,
    pub den: String,
}

impl WeightExport {
    pub fn from_table(table: &WeightTable) -> WeightExport {
        let weights = table
            .iter()
            .map(|(word, b)| {
                let r = RatJson::from(b);
                WeightEntry {
                    word: word.letters().to_vec(),
                    num: r.num,
                    den: r.den,
                }
            })
            .collect();
        WeightExport { weights }
    }
}
