//! Module Gröbner bases over the polynomial ring and what is built on them:
//! syzygies, minimal generators, minimal free resolutions, Artinian tests,
//! and an independent linear-algebra oracle for graded kernels.

mod artinian;
mod buchberger;
pub mod linalg;
mod module;
mod oracle;
mod resolution;
mod syzygy;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use artinian::is_artinian_quotient;
pub use buchberger::{buchberger, normal_form, GroebnerBasis};
pub use module::{FreeModuleElement, GradedModuleMap};
pub use oracle::{
    graded_kernel_oracle, row_kernel_oracle, OracleEntry, OracleTable, DEFAULT_CELL_BUDGET,
};
pub use resolution::{
    cokernel_hilbert_function, minimal_free_resolution, minimal_generators, prune_presentation,
    resolve_image, Resolution,
};
pub use syzygy::{syzygy_module, syzygy_module_truncated};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("twist mismatch: {0}")]
    TwistMismatch(String),
    #[error("elements live over different rings")]
    RingMismatch,
    #[error("input is not homogeneous")]
    NotHomogeneous,
    #[error("empty generator list")]
    EmptyInput,
    #[error("resolution did not terminate within {max_length} steps")]
    ResolutionTooLong {
        max_length: usize,
        partial: BettiTable,
    },
    #[error("linear system needs {needed} cells, budget is {budget}")]
    CellBudgetExceeded { needed: u64, budget: u64 },
    #[error("internal check failed: {0}")]
    Internal(String),
}

/// Weakly increasing list of generator degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(mut degrees: Vec<i64>) -> ExponentVector {
        degrees.sort_unstable();
        ExponentVector(degrees)
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// (degree, multiplicity) runs in increasing order.
    pub fn runs(&self) -> Vec<(i64, usize)> {
        let mut out: Vec<(i64, usize)> = Vec::new();
        for &d in &self.0 {
            match out.last_mut() {
                Some((last, k)) if *last == d => *k += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    }

    /// Compact form such as `(7)_3(8)_4`; `()` when empty.
    pub fn notation(&self) -> String {
        if self.0.is_empty() {
            return "()".to_string();
        }
        self.runs()
            .iter()
            .map(|(d, k)| format!("({d})_{k}"))
            .collect()
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        ExponentVector::new(v)
    }
}

/// One JSON row of a Betti table; `twist` is the shift `a` in `S(a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub stage: usize,
    pub twist: i64,
    pub multiplicity: usize,
}

/// Graded Betti numbers: `(stage, degree) -> multiplicity`, where stage `i`
/// of the resolution is `sum S(-degree)^multiplicity`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
}

impl BettiTable {
    pub fn new() -> BettiTable {
        BettiTable::default()
    }

    /// Table whose stage `i` consists of the generator degrees `stages[i]`.
    pub fn from_stages(stages: &[Vec<i64>]) -> BettiTable {
        let mut t = BettiTable::new();
        for (i, degs) in stages.iter().enumerate() {
            for &d in degs {
                t.add(i, d, 1);
            }
        }
        t
    }

    pub fn add(&mut self, stage: usize, degree: i64, multiplicity: usize) {
        if multiplicity > 0 {
            *self.entries.entry((stage, degree)).or_insert(0) += multiplicity;
        }
    }

    pub fn get(&self, stage: usize, degree: i64) -> usize {
        self.entries.get(&(stage, degree)).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Index of the last nonzero stage, `None` for the empty table.
    pub fn length(&self) -> Option<usize> {
        self.entries.keys().map(|k| k.0).max()
    }

    /// (degree, multiplicity) pairs of one stage, by increasing degree.
    pub fn stage(&self, stage: usize) -> Vec<(i64, usize)> {
        self.entries
            .iter()
            .filter(|(k, _)| k.0 == stage)
            .map(|(k, &v)| (k.1, v))
            .collect()
    }

    /// Generator degrees of one stage, with repetition.
    pub fn stage_degrees(&self, stage: usize) -> Vec<i64> {
        self.stage(stage)
            .into_iter()
            .flat_map(|(d, k)| std::iter::repeat_n(d, k))
            .collect()
    }

    pub fn rank(&self, stage: usize) -> usize {
        self.stage(stage).iter().map(|p| p.1).sum()
    }

    /// The same table with every degree raised by `delta` and stages moved
    /// up by `stage_offset`.
    pub fn shifted(&self, stage_offset: usize, delta: i64) -> BettiTable {
        let mut t = BettiTable::new();
        for (&(s, d), &k) in &self.entries {
            t.add(s + stage_offset, d + delta, k);
        }
        t
    }

    /// Alternating sum `sum_i (-1)^i sum_j b_ij dim S_{k-j}`: the Hilbert
    /// function in degree `k` of the module the table resolves.
    pub fn euler_characteristic(&self, num_vars: usize, k: i64) -> i64 {
        self.entries
            .iter()
            .map(|(&(s, d), &m)| {
                let sign = if s % 2 == 0 { 1 } else { -1 };
                sign * m as i64 * crate::polyring::count_monomials(num_vars, k - d) as i64
            })
            .sum()
    }

    pub fn json_entries(&self) -> Vec<BettiEntry> {
        self.entries
            .iter()
            .map(|(&(stage, d), &multiplicity)| BettiEntry {
                stage,
                twist: -d,
                multiplicity,
            })
            .collect()
    }

    pub fn from_json_entries(entries: &[BettiEntry]) -> BettiTable {
        let mut t = BettiTable::new();
        for e in entries {
            t.add(e.stage, -e.twist, e.multiplicity);
        }
        t
    }

    /// Chain notation, highest stage first: `0 → S(-9) → S(-7)^3 → S(-4)^3 → S`.
    pub fn chain_string(&self) -> String {
        let Some(len) = self.length() else {
            return "0".to_string();
        };
        let mut parts = vec!["0".to_string()];
        for s in (0..=len).rev() {
            let summands: Vec<String> = self
                .stage(s)
                .iter()
                .map(|&(d, k)| free_module_name(d, k))
                .collect();
            parts.push(if summands.is_empty() {
                "0".to_string()
            } else {
                summands.join(" ⊕ ")
            });
        }
        parts.join(" → ")
    }

    /// Staircase layout: column `i` is the stage, row `r` holds `b_{i,i+r}`.
    pub fn staircase(&self) -> String {
        let Some(len) = self.length() else {
            return "(zero module)\n".to_string();
        };
        let rows: Vec<i64> = {
            let mut r: Vec<i64> = self.entries.keys().map(|&(s, d)| d - s as i64).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        let (lo, hi) = (rows[0], *rows.last().unwrap());
        let mut cells: Vec<Vec<String>> = Vec::new();
        cells.push(
            std::iter::once(String::new())
                .chain((0..=len).map(|s| s.to_string()))
                .collect(),
        );
        cells.push(
            std::iter::once("total:".to_string())
                .chain((0..=len).map(|s| self.rank(s).to_string()))
                .collect(),
        );
        for r in lo..=hi {
            let mut row = vec![format!("{r}:")];
            for s in 0..=len {
                let v = self.get(s, r + s as i64);
                row.push(if v == 0 {
                    ".".to_string()
                } else {
                    v.to_string()
                });
            }
            cells.push(row);
        }
        let ncols = len + 2;
        let widths: Vec<usize> = (0..ncols)
            .map(|c| {
                cells
                    .iter()
                    .map(|row| row[c].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for row in &cells {
            let line: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(c, cell)| format!("{:>w$}", cell, w = widths[c]))
                .collect();
            out.push_str(line.join(" ").trim_end());
            out.push('\n');
        }
        out
    }
}

fn free_module_name(degree: i64, multiplicity: usize) -> String {
    let base = match degree {
        0 => "S".to_string(),
        d if d > 0 => format!("S(-{d})"),
        d => format!("S({})", -d),
    };
    if multiplicity == 1 {
        base
    } else {
        format!("{base}^{multiplicity}")
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.chain_string())
    }
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.json_entries().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(BettiTable::from_json_entries(
            &Vec::<BettiEntry>::deserialize(d)?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_notation() {
        assert_eq!(ExponentVector::new(vec![3, 3, 3]).notation(), "(3)_3");
        assert_eq!(
            ExponentVector::new(vec![8, 7, 8, 7, 8, 7, 8]).notation(),
            "(7)_3(8)_4"
        );
        assert_eq!(ExponentVector::default().notation(), "()");
    }

    #[test]
    fn chain_and_staircase() {
        let t = BettiTable::from_stages(&[vec![0], vec![4, 4, 4], vec![7, 7, 7], vec![9]]);
        assert_eq!(t.chain_string(), "0 → S(-9) → S(-7)^3 → S(-4)^3 → S");
        let stair = t.staircase();
        assert!(stair.starts_with("       0 1 2 3\n"), "{stair}");
        assert!(stair.contains("total: 1 3 3 1"));
        assert!(stair.contains("3: . 3 . ."));
        assert!(stair.contains("5: . . 3 ."));
        assert!(stair.contains("6: . . . 1"));
        assert_eq!(BettiTable::new().chain_string(), "0");
        let mixed = BettiTable::from_stages(&[vec![6, 6, 6, 7, 7, 7], vec![8, 8, 8, 8]]);
        assert_eq!(mixed.chain_string(), "0 → S(-8)^4 → S(-6)^3 ⊕ S(-7)^3");
    }

    #[test]
    fn json_uses_negative_twists() {
        let t = BettiTable::from_stages(&[vec![3, 3, 3], vec![5]]);
        let e = t.json_entries();
        assert_eq!(
            e[0],
            BettiEntry {
                stage: 0,
                twist: -3,
                multiplicity: 3
            }
        );
        let text = serde_json::to_string(&t).unwrap();
        let back: BettiTable = serde_json::from_str(&text).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn euler_characteristic_of_koszul_complex() {
        // Koszul resolution of the residue field in three variables.
        let t = BettiTable::from_stages(&[vec![0], vec![1; 3], vec![2; 3], vec![3]]);
        assert_eq!(t.euler_characteristic(3, 0), 1);
        for k in 1..6 {
            assert_eq!(t.euler_characteristic(3, k), 0);
        }
    }
}
