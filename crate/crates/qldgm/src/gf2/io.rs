//! Matrix import/export: MacKay alist and dense 0/1 text.

use super::BitMatrix;
use crate::{Error, Result};
use std::io::{BufRead, Write};

/// Writes a matrix in the classical alist format (1-based indices, entries
/// padded with zeros up to the maximum weight).
pub fn write_alist<W: Write>(m: &BitMatrix, mut w: W) -> Result<()> {
    let cols = m.cols();
    let rows = m.rows();
    let col_weights: Vec<usize> = (0..cols).map(|c| m.col_weight(c)).collect();
    let row_weights: Vec<usize> = (0..rows).map(|r| m.row_weight(r)).collect();
    let max_col = col_weights.iter().copied().max().unwrap_or(0);
    let max_row = row_weights.iter().copied().max().unwrap_or(0);
    writeln!(w, "{cols} {rows}")?;
    writeln!(w, "{max_col} {max_row}")?;
    writeln!(w, "{}", join(&col_weights))?;
    writeln!(w, "{}", join(&row_weights))?;
    for c in 0..cols {
        let mut entries: Vec<usize> = (0..rows).filter(|&r| m.get(r, c)).map(|r| r + 1).collect();
        entries.resize(max_col, 0);
        writeln!(w, "{}", join(&entries))?;
    }
    for r in 0..rows {
        let mut entries: Vec<usize> = m.iter_row_ones(r).map(|c| c + 1).collect();
        entries.resize(max_row, 0);
        writeln!(w, "{}", join(&entries))?;
    }
    Ok(())
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Reads an alist matrix written by [`write_alist`] (padding zeros are
/// ignored, so unpadded column/row lists parse as well when line breaks
/// are preserved).
pub fn read_alist<R: BufRead>(r: R) -> Result<BitMatrix> {
    let mut lines = r.lines();
    let mut next_line = || -> Result<Vec<usize>> {
        loop {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("alist: unexpected end of file".into()))??;
            if line.trim().is_empty() {
                continue;
            }
            return line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("alist: bad integer '{t}'")))
                })
                .collect();
        }
    };
    let header = next_line()?;
    if header.len() != 2 {
        return Err(Error::Parse("alist: first line must be 'N M'".into()));
    }
    let (cols, rows) = (header[0], header[1]);
    let _max = next_line()?;
    let col_weights = next_line()?;
    let row_weights = next_line()?;
    if col_weights.len() != cols || row_weights.len() != rows {
        return Err(Error::Parse("alist: weight list length mismatch".into()));
    }
    let mut m = BitMatrix::zeros(rows, cols);
    for c in 0..cols {
        for idx in next_line()? {
            if idx == 0 {
                continue;
            }
            if idx > rows {
                return Err(Error::Parse(format!("alist: row index {idx} out of range")));
            }
            m.set(idx - 1, c, true);
        }
    }
    // The per-row lists are redundant; read them if present to validate.
    for r in 0..rows {
        match next_line() {
            Ok(entries) => {
                for idx in entries {
                    if idx == 0 {
                        continue;
                    }
                    if idx > cols || !m.get(r, idx - 1) {
                        return Err(Error::Parse(format!(
                            "alist: row list disagrees with column list at row {r}"
                        )));
                    }
                }
            }
            Err(_) => break,
        }
    }
    Ok(m)
}

/// Writes one row per line as 0/1 characters.
pub fn write_dense<W: Write>(m: &BitMatrix, mut w: W) -> Result<()> {
    for r in 0..m.rows() {
        let line: String = (0..m.cols()).map(|c| if m.get(r, c) { '1' } else { '0' }).collect();
        writeln!(w, "{line}")?;
    }
    Ok(())
}

/// Reads a dense 0/1 text matrix; whitespace between digits is tolerated.
pub fn read_dense<R: BufRead>(r: R) -> Result<BitMatrix> {
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for line in r.lines() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let bits: Vec<u8> = trimmed
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Parse(format!("dense: invalid character '{other}'"))),
            })
            .collect::<Result<_>>()?;
        rows.push(bits);
    }
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse("dense: ragged rows".into()));
    }
    let mut m = BitMatrix::zeros(rows.len(), cols);
    for (i, bits) in rows.iter().enumerate() {
        for (j, &b) in bits.iter().enumerate() {
            if b == 1 {
                m.set(i, j, true);
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn random(rows: usize, cols: usize, seed: u64) -> BitMatrix {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut m = BitMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, rng.random_bool(0.2));
            }
        }
        m
    }

    #[test]
    fn alist_round_trip() {
        for seed in 0..5 {
            let m = random(11, 17, seed);
            let mut buf = Vec::new();
            write_alist(&m, &mut buf).unwrap();
            let back = read_alist(&buf[..]).unwrap();
            assert_eq!(m, back);
        }
    }

    #[test]
    fn dense_round_trip() {
        let m = random(7, 70, 42);
        let mut buf = Vec::new();
        write_dense(&m, &mut buf).unwrap();
        let back = read_dense(&buf[..]).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn dense_rejects_garbage() {
        assert!(read_dense("01\n0a\n".as_bytes()).is_err());
        assert!(read_dense("01\n011\n".as_bytes()).is_err());
    }
}
