//! WebAssembly bindings for the browser demo. Matrices are typed as plain
//! text: one row per line, entries separated by spaces or commas, and
//! several matrices separated by a blank line.

use forge_core::arith::parse_rational;
use forge_core::group::{nilpotent_group, semisimple_group, Limits};
use forge_core::linalg::{jordan_decomposition, MatrixQ};
use forge_core::Error;
use wasm_bindgen::prelude::*;

/// Caps tuned so a runaway input fails in seconds rather than hanging the tab.
fn demo_limits() -> Limits {
    let mut l = Limits::default();
    l.groebner.max_spairs = 20_000;
    l.degree_cap = 24;
    l
}

pub fn parse_matrices(text: &str) -> Result<Vec<MatrixQ>, Error> {
    let mut blocks: Vec<Vec<Vec<String>>> = vec![Vec::new()];
    for (line_no, line) in text.lines().enumerate() {
        let entries: Vec<String> =
            line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(str::to_string).collect();
        if entries.is_empty() {
            if !blocks.last().unwrap().is_empty() {
                blocks.push(Vec::new());
            }
            continue;
        }
        if let Some(bad) = entries.iter().find(|e| parse_rational(e).is_err()) {
            return Err(Error::parse(format!("line {}", line_no + 1), format!("malformed rational {bad:?}")));
        }
        blocks.last_mut().unwrap().push(entries);
    }
    blocks.retain(|b| !b.is_empty());
    if blocks.is_empty() {
        return Err(Error::parse("input", "no matrix given"));
    }
    blocks
        .iter()
        .enumerate()
        .map(|(k, rows)| {
            let n = rows.len();
            if rows.iter().any(|r| r.len() != n) {
                return Err(Error::parse(format!("matrix {}", k + 1), format!("expected {n} entries in every row")));
            }
            let flat = rows.iter().flatten().map(|e| parse_rational(e)).collect::<Result<Vec<_>, _>>()?;
            Ok(MatrixQ::from_flat(n, n, flat))
        })
        .collect()
}

fn format_matrix(m: &MatrixQ) -> String {
    let cells: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells
        .iter()
        .map(|r| r.iter().map(|c| format!("{c:>width$}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn single(text: &str) -> Result<MatrixQ, Error> {
    let mut ms = parse_matrices(text)?;
    if ms.len() != 1 {
        return Err(Error::parse("input", format!("expected one matrix, found {}", ms.len())));
    }
    Ok(ms.remove(0))
}

pub fn semisimple_text(text: &str) -> Result<String, Error> {
    Ok(semisimple_group(&single(text)?, &demo_limits())?.serialize())
}

pub fn nilpotent_text(text: &str) -> Result<String, Error> {
    let basis = parse_matrices(text)?;
    let n = basis[0].rows();
    if basis.iter().any(|m| m.rows() != n) {
        return Err(Error::parse("input", "matrices of different sizes"));
    }
    Ok(nilpotent_group(n, &basis, &demo_limits())?.serialize())
}

pub fn jordan_text(text: &str) -> Result<String, Error> {
    let j = jordan_decomposition(&single(text)?)?;
    Ok(format!("semisimple part\n{}\n\nnilpotent part\n{}\n", format_matrix(&j.semisimple), format_matrix(&j.nilpotent)))
}

fn js(r: Result<String, Error>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e.to_string()))
}

/// Equations of the smallest algebraic group containing `exp(tX)`.
#[wasm_bindgen(js_name = semisimpleGroup)]
pub fn semisimple_group_js(text: &str) -> Result<String, JsValue> {
    js(semisimple_text(text))
}

/// Equations of the unipotent group of a nilpotent Lie algebra.
#[wasm_bindgen(js_name = nilpotentGroup)]
pub fn nilpotent_group_js(text: &str) -> Result<String, JsValue> {
    js(nilpotent_text(text))
}

/// Semisimple and nilpotent parts of one matrix.
#[wasm_bindgen(js_name = jordanDecomposition)]
pub fn jordan_decomposition_js(text: &str) -> Result<String, JsValue> {
    js(jordan_text(text))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_blocks() {
        let ms = parse_matrices("0 1\n0 0\n\n\n0, 0\n1, 0\n").unwrap();
        assert_eq!(ms, vec![MatrixQ::unit(2, 0, 1), MatrixQ::unit(2, 1, 0)]);
        assert!(parse_matrices("1 2\n3").is_err());
        assert!(parse_matrices("1 x\n0 1").is_err());
        assert!(parse_matrices("  \n").is_err());
    }

    #[test]
    fn formats_aligned() {
        assert_eq!(format_matrix(&MatrixQ::from_ints(&[&[1, -10], &[0, 2]])), "  1 -10\n  0   2");
    }
}
