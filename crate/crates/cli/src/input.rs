//! Matrix documents: `{"n": 2, "matrices": [[["0","1"],["-1","0"]]]}` with
//! every entry a quoted exact rational.

use forge_core::arith::parse_rational;
use forge_core::linalg::MatrixQ;
use forge_core::Error;
use serde::{Deserialize, Serialize};

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct Document {
    n: usize,
    matrices: Vec<Vec<Vec<String>>>,
}

/// Reads the matrices of a document, checking every one is `n×n`.
pub fn parse_matrices(text: &str) -> Result<(usize, Vec<MatrixQ>), Error> {
    let doc: Document = serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
    let n = doc.n;
    if n == 0 {
        return Err(Error::parse("n", "matrix size must be positive"));
    }
    let mut out = Vec::with_capacity(doc.matrices.len());
    for (k, m) in doc.matrices.iter().enumerate() {
        if m.len() != n {
            return Err(Error::parse(format!("matrices[{k}]"), format!("expected {n} rows, found {}", m.len())));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in m.iter().enumerate() {
            if row.len() != n {
                return Err(Error::parse(format!("matrices[{k}][{i}]"), format!("expected {n} entries, found {}", row.len())));
            }
            for (j, entry) in row.iter().enumerate() {
                let q = parse_rational(entry).map_err(|_| {
                    Error::parse(format!("matrices[{k}][{i}][{j}]"), format!("malformed rational {entry:?}"))
                })?;
                flat.push(q);
            }
        }
        out.push(MatrixQ::from_flat(n, n, flat));
    }
    Ok((n, out))
}

/// The inverse of [`parse_matrices`], one matrix per line.
pub fn format_matrices(n: usize, matrices: &[MatrixQ]) -> String {
    let render = |m: &MatrixQ| {
        let rows: Vec<String> = m
            .to_rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| format!("\"{x}\"")).collect::<Vec<_>>().join(",")))
            .collect();
        format!("[{}]", rows.join(","))
    };
    if matrices.is_empty() {
        return format!("{{\"n\":{n},\"matrices\":[]}}\n");
    }
    let body: Vec<String> = matrices.iter().map(|m| format!("  {}", render(m))).collect();
    format!("{{\"n\":{n},\"matrices\":[\n{}\n]}}\n", body.join(",\n"))
}
