//! Extended DIMACS reading and writing.
//!
//! On top of the standard `p cnf V C` format, comment lines of the form
//! `c inputs v1 v2 …` declare the input variables (several such lines are
//! concatenated). Without any declaration every variable is an input.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::cnf::{Clause, CnfError, Encoding, Formula, Lit, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid header: {0}")]
    InvalidHeader(String),
    #[error("line {line}: variable {var} exceeds the declared {declared} variables")]
    UndeclaredVariable { line: usize, var: u32, declared: usize },
    #[error(transparent)]
    Encoding(#[from] CnfError),
}

fn parse_error(line: usize, message: impl Into<String>) -> DimacsError {
    DimacsError::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_dimacs(text: &str) -> Result<Encoding, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut inputs: Vec<Var> = Vec::new();
    let mut declared_inputs = false;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut pending: Vec<i32> = Vec::new();
    let mut pending_line = 0;

    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            let mut words = rest.split_whitespace();
            if rest.starts_with(char::is_whitespace) && words.next() == Some("inputs") {
                declared_inputs = true;
                for w in words {
                    let id: u32 = w
                        .parse()
                        .ok()
                        .filter(|&id| id > 0)
                        .ok_or_else(|| parse_error(line_no, format!("bad input variable `{w}`")))?;
                    let v = Var::new(id);
                    if !inputs.contains(&v) {
                        inputs.push(v);
                    }
                }
            }
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::InvalidHeader(format!("second header on line {line_no}")));
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            let parsed = match words.as_slice() {
                ["p", "cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or_else(|| DimacsError::InvalidHeader(line.to_string()))?);
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(DimacsError::InvalidHeader(format!(
                "clause on line {line_no} before the `p cnf` header"
            )));
        };
        for w in line.split_whitespace() {
            let value: i32 = w
                .parse()
                .map_err(|_| parse_error(line_no, format!("bad literal `{w}`")))?;
            if value == 0 {
                let clause =
                    Clause::from_dimacs(&pending).map_err(|e| parse_error(pending_line.max(line_no), e.to_string()))?;
                clauses.push(clause);
                pending.clear();
                continue;
            }
            if value.unsigned_abs() as usize > num_vars {
                return Err(DimacsError::UndeclaredVariable {
                    line: line_no,
                    var: value.unsigned_abs(),
                    declared: num_vars,
                });
            }
            if pending.is_empty() {
                pending_line = line_no;
            }
            pending.push(value);
        }
    }
    let Some((num_vars, num_clauses)) = header else {
        return Err(DimacsError::InvalidHeader("missing `p cnf` header".into()));
    };
    if !pending.is_empty() {
        return Err(parse_error(pending_line, "clause is not terminated by 0"));
    }
    if clauses.len() != num_clauses {
        return Err(DimacsError::InvalidHeader(format!(
            "header announces {num_clauses} clauses, found {}",
            clauses.len()
        )));
    }
    if let Some(v) = inputs.iter().find(|v| v.index() > num_vars) {
        return Err(DimacsError::UndeclaredVariable {
            line: 0,
            var: v.id(),
            declared: num_vars,
        });
    }
    if !declared_inputs {
        inputs = (1..=num_vars as u32).map(Var::new).collect();
    }
    let input_set: BTreeSet<Var> = inputs.iter().copied().collect();
    let aux = (1..=num_vars as u32)
        .map(Var::new)
        .filter(|v| !input_set.contains(v))
        .collect();
    Ok(Encoding::new(Formula::new(clauses), inputs, aux)?)
}

/// Writes the compacted encoding: the inputs line first, then the header and
/// the clauses in canonical order.
pub fn serialize_dimacs(enc: &Encoding) -> String {
    let enc = enc.compact();
    let mut out = String::from("c inputs");
    for v in enc.inputs() {
        let _ = write!(out, " {v}");
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "p cnf {} {}", enc.num_vars(), enc.size());
    for clause in enc.formula() {
        for l in clause {
            let _ = write!(out, "{} ", l.to_dimacs());
        }
        out.push_str("0\n");
    }
    out
}

/// Formats a lone formula (all variables treated as inputs).
pub fn formula_to_dimacs(formula: &Formula) -> String {
    let mut out = String::new();
    let vars = formula.max_var().map_or(0, Var::index);
    let _ = writeln!(out, "p cnf {vars} {}", formula.len());
    for clause in formula {
        let lits: Vec<String> = clause.iter().map(Lit::to_string).collect();
        let _ = writeln!(out, "{} 0", lits.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_all_inputs() {
        let e = parse_dimacs("p cnf 2 1\n-1 -2 0").unwrap();
        assert_eq!(e.inputs(), &[Var::new(1), Var::new(2)]);
        assert!(e.auxiliaries().is_empty());
    }

    #[test]
    fn duplicate_literals_collapse() {
        let e = parse_dimacs("p cnf 1 1\n1 1 0").unwrap();
        assert_eq!(e.formula(), &Formula::from_dimacs(&[&[1]]));
    }

    #[test]
    fn inputs_lines_union() {
        let e = parse_dimacs("c inputs 1\nc inputs 2 1\np cnf 3 1\n-1 3 0\n").unwrap();
        assert_eq!(e.inputs(), &[Var::new(1), Var::new(2)]);
        assert_eq!(e.auxiliaries().iter().copied().collect::<Vec<_>>(), vec![Var::new(3)]);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_dimacs("-1 0"), Err(DimacsError::InvalidHeader(_))));
        assert!(matches!(
            parse_dimacs("p cnf x 1\n1 0"),
            Err(DimacsError::InvalidHeader(_))
        ));
        assert!(matches!(
            parse_dimacs("p cnf 1 1\n2 0"),
            Err(DimacsError::UndeclaredVariable { line: 2, var: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n1 a 0"),
            Err(DimacsError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n1 -1 0"),
            Err(DimacsError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n1 2"),
            Err(DimacsError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn clauses_may_span_lines() {
        let e = parse_dimacs("p cnf 3 2\n1 2\n3 0 -1\n-2 0\n").unwrap();
        assert_eq!(e.formula(), &Formula::from_dimacs(&[&[1, 2, 3], &[-1, -2]]));
    }

    #[test]
    fn round_trip() {
        let text = "c inputs 1 2\np cnf 3 3\n-1 3 0\n-2 3 0\n-3 -1 0\n";
        let e = parse_dimacs(text).unwrap();
        assert_eq!(parse_dimacs(&serialize_dimacs(&e)).unwrap(), e.compact());
    }
}
