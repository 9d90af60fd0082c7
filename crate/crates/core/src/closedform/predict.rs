//! Predicted generators, exponents and Betti tables, by number of lines.

use serde::Serialize;

use crate::arrangement::{Arrangement, GenericityReport};
use crate::groebner::{BettiTable, ExponentVector};
use crate::polyring::VAR_NAMES;

use super::ClosedFormError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Case {
    #[serde(rename = "l=0")]
    NoLines,
    #[serde(rename = "l=1")]
    OneLine,
    #[serde(rename = "l=2")]
    TwoLines,
    #[serde(rename = "l>=3")]
    ThreeLines,
}

impl Case {
    pub fn from_line_count(lines: usize) -> Case {
        match lines {
            0 => Case::NoLines,
            1 => Case::OneLine,
            2 => Case::TwoLines,
            _ => Case::ThreeLines,
        }
    }

    /// Lines that replace a Koszul form `omega^u` in the generator roster.
    pub fn axis_lines(self) -> usize {
        match self {
            Case::NoLines => 0,
            Case::OneLine => 1,
            Case::TwoLines => 2,
            Case::ThreeLines => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Case::NoLines => "l=0",
            Case::OneLine => "l=1",
            Case::TwoLines => "l=2",
            Case::ThreeLines => "l>=3",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CasePrediction {
    pub case: Case,
    /// Names of the generators: `omega_1 .. omega_{m-1}` then `omega^u`.
    pub roster: Vec<String>,
    pub generator_count: usize,
    pub exponents: ExponentVector,
    pub d0_betti: BettiTable,
    pub milnor_betti: BettiTable,
    /// Degrees of the relations among the roster.
    pub relation_degrees: Vec<i64>,
    /// Degree corrections of the last resolution step, only without lines.
    pub epsilon: Option<Vec<i64>>,
    /// Four lines: the smallest all-line case, reported rather than asserted.
    pub boundary: bool,
}

/// `s` from the line count: `m + 2 - l` up to two lines, `m - 1` beyond.
pub fn generator_count(m: usize, lines: usize) -> usize {
    if lines <= 2 {
        m + 2 - lines
    } else {
        m - 1
    }
}

/// Prediction from degrees alone; `degrees` in any order.
pub fn predict_from_degrees(degrees: &[u32]) -> CasePrediction {
    let m = degrees.len();
    let d: i64 = degrees.iter().map(|&e| e as i64).sum();
    let lines = degrees.iter().filter(|&&e| e == 1).count();
    let case = Case::from_line_count(lines);
    let k = case.axis_lines();

    let mut roster: Vec<String> = (1..m).map(|j| format!("omega_{j}")).collect();
    roster.extend((k..3).map(|u| format!("omega^{}", VAR_NAMES[u])));

    let mut exps = vec![d - 2; m - 1];
    exps.extend(std::iter::repeat_n(d - 1, 3 - k));
    let exponents = ExponentVector::new(exps);

    // lines first; the first k of them do not contribute a relation
    let mut ordered: Vec<i64> = degrees.iter().map(|&e| e as i64).collect();
    ordered.sort_by_key(|&e| (e != 1, e));
    let mut relation_degrees: Vec<i64> = ordered[k..].iter().map(|e| d - 2 + e).collect();
    relation_degrees.sort();

    let d0_betti =
        BettiTable::from_stages(&[exponents.degrees().to_vec(), relation_degrees.clone()]);
    let milnor_betti = BettiTable::from_stages(&[
        vec![0],
        vec![d - 1; 3],
        exponents.degrees().iter().map(|e| e + d - 1).collect(),
        relation_degrees.iter().map(|c| c + d - 1).collect(),
    ]);

    let epsilon = (lines == 0).then(|| {
        let mut e: Vec<i64> = degrees.iter().map(|&e| e as i64).collect();
        e.sort();
        e.iter()
            .enumerate()
            .map(|(j, &ej)| if j + 3 < m { ej } else { ej - 1 })
            .collect()
    });

    CasePrediction {
        case,
        generator_count: roster.len(),
        roster,
        exponents,
        d0_betti,
        milnor_betti,
        relation_degrees,
        epsilon,
        boundary: m == 4 && lines == 4,
    }
}

/// Prediction for a validated plane arrangement.
pub fn predict(
    a: &Arrangement,
    report: &GenericityReport,
) -> Result<CasePrediction, ClosedFormError> {
    if a.num_vars() != 3 {
        return Err(ClosedFormError::VariableCount(a.num_vars()));
    }
    if !report.overall {
        return Err(ClosedFormError::NotApplicable(report.failures()));
    }
    Ok(predict_from_degrees(&a.degrees()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_conics() {
        let p = predict_from_degrees(&[2, 2, 2, 2, 2]);
        assert_eq!(p.case, Case::NoLines);
        assert_eq!(p.exponents.degrees(), &[8, 8, 8, 8, 9, 9, 9]);
        assert_eq!(p.generator_count, 7);
        assert_eq!(p.epsilon, Some(vec![2, 2, 1, 1, 1]));
    }

    #[test]
    fn axes_and_conic() {
        let p = predict_from_degrees(&[1, 1, 1, 2]);
        assert_eq!(p.case, Case::ThreeLines);
        assert_eq!(p.exponents.notation(), "(3)_3");
        assert_eq!(
            p.milnor_betti.chain_string(),
            "0 → S(-9) → S(-7)^3 → S(-4)^3 → S"
        );
        assert_eq!(p.d0_betti.chain_string(), "0 → S(-5) → S(-3)^3");
        assert_eq!(p.roster, vec!["omega_1", "omega_2", "omega_3"]);
    }

    #[test]
    fn two_lines() {
        let p = predict_from_degrees(&[2, 1, 2, 1]);
        assert_eq!(p.exponents.degrees(), &[4, 4, 4, 5]);
        assert_eq!(p.roster.last().unwrap(), "omega^z");
        assert_eq!(p.relation_degrees, vec![6, 6]);
    }

    #[test]
    fn four_conics() {
        let p = predict_from_degrees(&[2, 2, 2, 2]);
        assert_eq!(p.d0_betti.chain_string(), "0 → S(-8)^4 → S(-6)^3 ⊕ S(-7)^3");
    }

    #[test]
    fn generator_count_agrees_with_roster() {
        for degrees in [
            vec![1, 2, 2, 3],
            vec![1, 1, 3, 3, 2],
            vec![1, 1, 1, 1],
            vec![3, 3, 3, 3, 3, 3],
        ] {
            let l = degrees.iter().filter(|&&e| e == 1).count();
            let p = predict_from_degrees(&degrees);
            assert_eq!(p.generator_count, generator_count(degrees.len(), l));
            if let Some(eps) = &p.epsilon {
                let d: i64 = degrees.iter().map(|&e| e as i64).sum();
                assert_eq!(eps.iter().sum::<i64>(), d - 3);
            }
        }
    }
}
