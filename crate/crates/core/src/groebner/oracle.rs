//! Graded kernels of `(a_1..a_n) -> sum a_i g_i` by dense row reduction.
//!
//! This is the cross-check for the Gröbner engine: in each degree `e` it
//! builds the matrix of `S_e^n -> S_{e+k}` and takes its kernel `K_e`.
//! Generators in degree `e` are counted as `dim K_e - dim(S_1 K_{e-1})`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::polyring::{monomials_of_degree, Field, Monomial, Polynomial};

use super::linalg::{kernel_in, rref_in, ModP, Rationals, Scalars};
use super::{ExponentVector, GroebnerError};

pub const DEFAULT_CELL_BUDGET: u64 = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleEntry {
    pub dimension: usize,
    pub generators: usize,
}

/// Kernel dimensions and generator counts by degree. `exhausted` is set
/// when the cell budget stopped the computation before the cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleTable {
    pub entries: BTreeMap<i64, OracleEntry>,
    pub degree_cap: i64,
    pub exhausted: Option<(i64, u64)>,
}

impl OracleTable {
    pub fn dimension(&self, degree: i64) -> Option<usize> {
        self.entries.get(&degree).map(|e| e.dimension)
    }

    pub fn generators(&self, degree: i64) -> Option<usize> {
        self.entries.get(&degree).map(|e| e.generators)
    }

    /// Generator degrees found up to the last degree computed.
    pub fn exponents(&self) -> ExponentVector {
        ExponentVector::new(
            self.entries
                .iter()
                .flat_map(|(&d, e)| std::iter::repeat_n(d, e.generators))
                .collect(),
        )
    }

    pub fn is_partial(&self) -> bool {
        self.exhausted.is_some()
    }

    /// The table, or the budget error if it is partial.
    pub fn into_complete(self, budget: u64) -> Result<OracleTable, GroebnerError> {
        match self.exhausted {
            Some((_, needed)) => Err(GroebnerError::CellBudgetExceeded { needed, budget }),
            None => Ok(self),
        }
    }
}

/// Oracle for the syzygies of the gradient of a homogeneous `f`, in
/// triple-degrees `0..=degree_cap`.
pub fn graded_kernel_oracle(
    f: &Polynomial,
    degree_cap: i64,
    cell_budget: u64,
) -> Result<OracleTable, GroebnerError> {
    let d = f
        .homogeneous_degree()
        .ok_or(GroebnerError::NotHomogeneous)?;
    if d == 0 {
        return Err(GroebnerError::NotHomogeneous);
    }
    row_kernel_oracle(&f.gradient(), d - 1, degree_cap, cell_budget)
}

/// Oracle for the kernel of `(a_i) -> sum a_i g_i`, where every `g_i` is
/// zero or homogeneous of degree `entry_degree`.
pub fn row_kernel_oracle(
    entries: &[Polynomial],
    entry_degree: u32,
    degree_cap: i64,
    cell_budget: u64,
) -> Result<OracleTable, GroebnerError> {
    let Some(first) = entries.first() else {
        return Err(GroebnerError::EmptyInput);
    };
    let (n, field) = (first.num_vars(), first.field());
    for g in entries {
        if g.num_vars() != n || g.field() != field {
            return Err(GroebnerError::RingMismatch);
        }
        if !g.is_zero() && g.homogeneous_degree() != Some(entry_degree) {
            return Err(GroebnerError::NotHomogeneous);
        }
    }
    let job = Job {
        entries,
        entry_degree,
        n,
        cap: degree_cap,
        budget: cell_budget,
    };
    Ok(match field {
        Field::Prime(p) => job.run(&ModP(p as u64)),
        Field::Rational => job.run(&Rationals),
    })
}

struct Job<'a> {
    entries: &'a [Polynomial],
    entry_degree: u32,
    n: usize,
    cap: i64,
    budget: u64,
}

fn index_of(monos: &[Monomial]) -> HashMap<Monomial, usize> {
    monos.iter().enumerate().map(|(i, m)| (*m, i)).collect()
}

impl Job<'_> {
    fn run<S: Scalars>(&self, s: &S) -> OracleTable {
        let k = self.entries.len();
        let mut table = OracleTable {
            entries: BTreeMap::new(),
            degree_cap: self.cap,
            exhausted: None,
        };
        let mut previous: Vec<Vec<S::E>> = Vec::new();
        let mut previous_monos: Vec<Monomial> = Vec::new();
        for e in 0..=self.cap.max(-1) {
            let src = monomials_of_degree(self.n, e as u32);
            let tgt = monomials_of_degree(self.n, e as u32 + self.entry_degree);
            let ncols = k * src.len();
            let lifted_rows = (self.n * previous.len()) as u64;
            let needed = (tgt.len() as u64).max(lifted_rows) * ncols as u64;
            if needed > self.budget {
                table.exhausted = Some((e, needed));
                break;
            }
            let tgt_index = index_of(&tgt);
            let mut a: Vec<Vec<S::E>> = vec![vec![s.zero(); ncols]; tgt.len()];
            for (i, g) in self.entries.iter().enumerate() {
                let lifted: Vec<(Monomial, S::E)> =
                    g.terms().iter().map(|(m, c)| (*m, s.lift(c))).collect();
                for (j, m) in src.iter().enumerate() {
                    for (gm, c) in &lifted {
                        a[tgt_index[&gm.mul(m)]][i * src.len() + j] = c.clone();
                    }
                }
            }
            let kernel = kernel_in(s, a, ncols);

            // The part of K_e coming from S_1 * K_{e-1}.
            let src_index = index_of(&src);
            let mut lifted_span: Vec<Vec<S::E>> = Vec::with_capacity(self.n * previous.len());
            for v in &previous {
                for var in 0..self.n {
                    let x = Monomial::var(var);
                    let mut w = vec![s.zero(); ncols];
                    for (idx, c) in v.iter().enumerate() {
                        if s.is_zero(c) {
                            continue;
                        }
                        let (i, j) = (idx / previous_monos.len(), idx % previous_monos.len());
                        w[i * src.len() + src_index[&previous_monos[j].mul(&x)]] = c.clone();
                    }
                    lifted_span.push(w);
                }
            }
            let old = rref_in(s, &mut lifted_span, ncols).len();
            table.entries.insert(
                e,
                OracleEntry {
                    dimension: kernel.len(),
                    generators: kernel.len() - old,
                },
            );
            previous = kernel;
            previous_monos = src;
        }
        table
    }
}
