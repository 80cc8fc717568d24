use super::{CnfFormula, SatError};

/// Parses DIMACS CNF: `c` comment lines, one `p cnf <vars> <clauses>`
/// header, then 0-terminated clauses that may span lines. A final clause
/// missing its terminating 0 is accepted, and a `%` line ends the input.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, SatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(SatError::Header {
                    line: line_no,
                    msg: "duplicate header".into(),
                });
            }
            header = Some(parse_header(line, line_no)?);
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(SatError::Header {
                line: line_no,
                msg: "clause before \"p cnf\" header".into(),
            });
        };
        for token in line.split_whitespace() {
            let lit: i64 = token.parse().map_err(|_| SatError::Token {
                line: line_no,
                token: token.to_string(),
            })?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(SatError::EmptyClause { line: line_no });
                }
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > num_vars {
                return Err(SatError::LiteralRange {
                    line: line_no,
                    lit,
                    num_vars,
                });
            } else {
                current.push(lit as i32);
            }
        }
    }

    let (num_vars, declared) = header.ok_or(SatError::Header {
        line: last_line,
        msg: "missing \"p cnf\" header".into(),
    })?;
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != declared {
        return Err(SatError::ClauseCount {
            line: last_line,
            declared,
            found: clauses.len(),
        });
    }
    CnfFormula::new(num_vars, clauses)
}

fn parse_header(line: &str, line_no: usize) -> Result<(usize, usize), SatError> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let bad = |msg: &str| SatError::Header {
        line: line_no,
        msg: msg.to_string(),
    };
    match fields.as_slice() {
        ["p", "cnf", vars, clauses] => {
            let vars = vars
                .parse()
                .map_err(|_| bad("variable count is not a number"))?;
            let clauses = clauses
                .parse()
                .map_err(|_| bad("clause count is not a number"))?;
            if vars > i32::MAX as usize {
                return Err(bad("variable count too large"));
            }
            Ok((vars, clauses))
        }
        _ => Err(bad("expected \"p cnf <vars> <clauses>\"")),
    }
}
