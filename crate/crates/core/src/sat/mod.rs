//! CNF formulas compiled into single-set 4-OV instances by split-and-list.
//!
//! Variables are split into four groups. Each partial assignment of a group
//! becomes one vector with a coordinate per clause: 0 if the partial
//! assignment already satisfies the clause, 1 otherwise. Four vectors, one
//! per group, are orthogonal exactly when their union satisfies every
//! clause. [`merge_groups`] folds the four lists into a single set by
//! appending four group-marker coordinates.

mod dimacs;

use thiserror::Error;

use crate::ov::{BitVector, OvError, OvInstance};

pub use dimacs::parse_dimacs;

/// Largest formula accepted by the exhaustive routines.
pub const MAX_SAT_VARS: usize = 24;

pub const GROUPS: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SatError {
    #[error("line {line}: malformed header: {msg}")]
    Header { line: usize, msg: String },
    #[error("line {line}: empty clause")]
    EmptyClause { line: usize },
    #[error("line {line}: literal {lit} out of range 1..={num_vars}")]
    LiteralRange {
        line: usize,
        lit: i64,
        num_vars: usize,
    },
    #[error("line {line}: invalid token {token:?}")]
    Token { line: usize, token: String },
    #[error("line {line}: header declares {declared} clauses, found {found}")]
    ClauseCount {
        line: usize,
        declared: usize,
        found: usize,
    },
    #[error("{num_vars} variables exceed the cap of {cap}")]
    TooManyVars { num_vars: usize, cap: usize },
    #[error(transparent)]
    Ov(#[from] OvError),
}

/// A CNF formula over variables `1..=num_vars`; literals are signed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self, SatError> {
        for clause in &clauses {
            if clause.is_empty() {
                return Err(SatError::EmptyClause { line: 0 });
            }
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > num_vars {
                    return Err(SatError::LiteralRange {
                        line: 0,
                        lit: lit as i64,
                        num_vars,
                    });
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                out.push_str(&lit.to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }

    fn check_cap(&self) -> Result<(), SatError> {
        if self.num_vars > MAX_SAT_VARS {
            return Err(SatError::TooManyVars {
                num_vars: self.num_vars,
                cap: MAX_SAT_VARS,
            });
        }
        Ok(())
    }
}

/// `(positive, negative)` variable masks of a clause; bit `v - 1` stands
/// for variable `v`.
fn clause_masks(clause: &[i32]) -> (u32, u32) {
    clause.iter().fold((0, 0), |(pos, neg), &lit| {
        let bit = 1u32 << (lit.unsigned_abs() - 1);
        if lit > 0 {
            (pos | bit, neg)
        } else {
            (pos, neg | bit)
        }
    })
}

/// Exhaustive satisfiability check over all `2^num_vars` assignments.
pub fn brute_force_sat(formula: &CnfFormula) -> Result<bool, SatError> {
    formula.check_cap()?;
    let masks: Vec<(u32, u32)> = formula.clauses.iter().map(|c| clause_masks(c)).collect();
    Ok((0u32..1 << formula.num_vars).any(|assign| {
        masks
            .iter()
            .all(|&(pos, neg)| assign & pos != 0 || !assign & neg != 0)
    }))
}

/// Group sizes: `ceil(V/4)` for the first `V mod 4` groups, `floor(V/4)`
/// for the rest. Variables fill the groups in index order.
pub fn group_sizes(num_vars: usize) -> [usize; GROUPS] {
    std::array::from_fn(|g| num_vars / GROUPS + usize::from(g < num_vars % GROUPS))
}

/// One list per group; vector `x` of group `g` encodes the partial
/// assignment in which the group's `t`-th variable is true iff bit `t` of
/// `x` is set.
pub fn split_and_list(formula: &CnfFormula) -> Result<[Vec<BitVector>; GROUPS], SatError> {
    formula.check_cap()?;
    let masks: Vec<(u32, u32)> = formula.clauses.iter().map(|c| clause_masks(c)).collect();
    let sizes = group_sizes(formula.num_vars);
    let mut start = 0;
    Ok(std::array::from_fn(|g| {
        let size = sizes[g];
        let group_mask = ((1u32 << size) - 1) << start;
        let list = (0u32..1 << size)
            .map(|x| {
                let assign = x << start;
                BitVector::from_bits(masks.iter().map(|&(pos, neg)| {
                    let satisfied = assign & pos != 0 || !assign & neg & group_mask != 0;
                    !satisfied
                }))
            })
            .collect();
        start += size;
        list
    }))
}

/// Appends coordinate `m + g` (0 for group `g`, 1 for the other groups) to
/// every vector and concatenates the lists. Any orthogonal quadruple of the
/// result takes exactly one vector from each group.
pub fn merge_groups(lists: &[Vec<BitVector>; GROUPS]) -> Result<OvInstance, OvError> {
    let dim = lists
        .iter()
        .flatten()
        .map(BitVector::len)
        .next()
        .ok_or(OvError::EmptyInstance)?;
    let mut merged = Vec::with_capacity(lists.iter().map(Vec::len).sum());
    for (g, list) in lists.iter().enumerate() {
        for v in list {
            if v.len() != dim {
                return Err(OvError::Dimension {
                    expected: dim,
                    found: v.len(),
                });
            }
            let mut out = BitVector::ones(dim + GROUPS);
            for i in 0..dim {
                out.set(i, v.get(i));
            }
            out.set(dim + g, false);
            merged.push(out);
        }
    }
    OvInstance::new(merged)
}

/// `parse -> split -> merge` in one call.
pub fn formula_to_ov(formula: &CnfFormula) -> Result<OvInstance, SatError> {
    Ok(merge_groups(&split_and_list(formula)?)?)
}
