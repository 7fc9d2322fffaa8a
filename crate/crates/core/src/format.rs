//! Text formats for algebras (`.lie`) and modules (`.mod`).
//!
//! ```text
//! # the two-dimensional non-abelian algebra
//! p 2
//! dim 2
//! bracket 1 2 : 0 1
//! pmap 1 : 1 0
//! pmap 2 : 0 0
//! ```
//!
//! Indices are 1-based. Omitted brackets are zero; `pmap` lines are
//! optional but must cover every basis vector when present. Scalars may be
//! any integers and are reduced mod `p`. Emission is canonical: header
//! first, then nonzero brackets sorted by `(i, j)`, then `pmap` lines.
//!
//! ```text
//! p 2
//! algdim 2
//! moddim 2
//! summands 2
//! action 1 :
//! 0 0
//! 1 1
//! action 2 :
//! 1 1
//! 0 1
//! ```
//!
//! The optional `summands` line lists the block sizes of a block-diagonal
//! decomposition into irreducible summands.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::lie::LieAlgebra;
use crate::matrix::FpMatrix;
use crate::module::LieModule;
use crate::restricted::{PMap, RestrictedAlgebra};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieFile {
    pub algebra: LieAlgebra,
    pub pmap: Option<PMap>,
}

impl LieFile {
    /// The restricted algebra, when the file carries a p-map.
    pub fn restricted(&self) -> Option<RestrictedAlgebra> {
        self.pmap.as_ref().map(|pm| RestrictedAlgebra::new_unchecked(self.algebra.clone(), pm.clone()))
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_usize(line: usize, tok: Option<&str>, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| perr(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| perr(line, format!("{what} `{tok}` is not a non-negative integer")))
}

fn parse_scalars(line: usize, f: Fp, toks: &[&str], expected: usize) -> Result<Vec<u32>> {
    if toks.len() != expected {
        return Err(perr(line, format!("expected {expected} scalars, found {}", toks.len())));
    }
    toks.iter()
        .map(|t| t.parse::<i64>().map(|v| f.from_i64(v)).map_err(|_| perr(line, format!("`{t}` is not an integer"))))
        .collect()
}

/// Splits `head : tail` into whitespace-separated tokens.
fn split_colon(line: usize, s: &str) -> Result<(Vec<&str>, Vec<&str>)> {
    let (head, tail) = s.split_once(':').ok_or_else(|| perr(line, "missing `:`"))?;
    Ok((head.split_whitespace().collect(), tail.split_whitespace().collect()))
}

/// Reads `p` from a `p <prime>` line.
fn parse_modulus(line: usize, toks: &[&str]) -> Result<Fp> {
    if toks.len() != 2 {
        return Err(perr(line, "expected `p <prime>`"));
    }
    let p: u64 = toks[1].parse().map_err(|_| perr(line, format!("`{}` is not an integer", toks[1])))?;
    if p > u32::MAX as u64 {
        return Err(Error::ModulusTooLarge(p));
    }
    Fp::new(p as u32)
}

pub fn parse_lie(text: &str) -> Result<LieFile> {
    let mut field: Option<Fp> = None;
    let mut dim: Option<usize> = None;
    let mut brackets: Vec<(usize, usize, usize, Vec<u32>)> = Vec::new();
    let mut pmap_lines: Vec<(usize, usize, Vec<u32>)> = Vec::new();
    for (ln, line) in content_lines(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "p" => {
                if field.is_some() {
                    return Err(perr(ln, "duplicate `p` line"));
                }
                field = Some(parse_modulus(ln, &toks)?);
            }
            "dim" => {
                if dim.is_some() {
                    return Err(perr(ln, "duplicate `dim` line"));
                }
                if toks.len() != 2 {
                    return Err(perr(ln, "expected `dim <n>`"));
                }
                dim = Some(parse_usize(ln, toks.get(1).copied(), "dimension")?);
            }
            "bracket" | "pmap" => {
                let f = field.ok_or_else(|| perr(ln, "`p` must come before brackets and p-map lines"))?;
                let n = dim.ok_or_else(|| perr(ln, "`dim` must come before brackets and p-map lines"))?;
                let (head, tail) = split_colon(ln, line)?;
                let coeffs = parse_scalars(ln, f, &tail, n)?;
                let index = |t: Option<&str>| -> Result<usize> {
                    let i = parse_usize(ln, t, "index")?;
                    if i == 0 || i > n {
                        return Err(perr(ln, format!("index {i} outside 1..={n}")));
                    }
                    Ok(i - 1)
                };
                if toks[0] == "bracket" {
                    if head.len() != 3 {
                        return Err(perr(ln, "expected `bracket i j : c1 ... cn`"));
                    }
                    let (i, j) = (index(Some(head[1]))?, index(Some(head[2]))?);
                    if i >= j {
                        return Err(perr(ln, "bracket indices must satisfy i < j"));
                    }
                    if brackets.iter().any(|b| (b.1, b.2) == (i, j)) {
                        return Err(perr(ln, format!("bracket {} {} given twice", i + 1, j + 1)));
                    }
                    brackets.push((ln, i, j, coeffs));
                } else {
                    if head.len() != 2 {
                        return Err(perr(ln, "expected `pmap i : c1 ... cn`"));
                    }
                    let i = index(Some(head[1]))?;
                    if pmap_lines.iter().any(|b| b.1 == i) {
                        return Err(perr(ln, format!("pmap {} given twice", i + 1)));
                    }
                    pmap_lines.push((ln, i, coeffs));
                }
            }
            other => return Err(perr(ln, format!("unknown keyword `{other}`"))),
        }
    }
    let f = field.ok_or_else(|| perr(0, "missing `p` line"))?;
    let n = dim.ok_or_else(|| perr(0, "missing `dim` line"))?;
    let mut alg = LieAlgebra::abelian(f, n);
    for (_, i, j, v) in &brackets {
        alg.set_bracket(*i, *j, v)?;
    }
    alg.check_jacobi()?;
    let pmap = if pmap_lines.is_empty() {
        None
    } else {
        if pmap_lines.len() != n {
            let last = pmap_lines.last().map(|l| l.0).unwrap_or(0);
            return Err(perr(last, format!("p-map given for {} of {n} basis vectors", pmap_lines.len())));
        }
        let mut images = vec![Vec::new(); n];
        for (_, i, v) in pmap_lines {
            images[i] = v;
        }
        let pm = PMap::new(images);
        RestrictedAlgebra::new(alg.clone(), pm.clone())?;
        Some(pm)
    };
    Ok(LieFile { algebra: alg, pmap })
}

fn join_scalars(v: &[u32]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn emit_lie(alg: &LieAlgebra, pmap: Option<&PMap>) -> String {
    let n = alg.dim();
    let mut out = format!("p {}\ndim {}\n", alg.p(), n);
    for i in 0..n {
        for j in i + 1..n {
            let v = alg.basis_bracket(i, j);
            if v.iter().any(|&c| c != 0) {
                let _ = writeln!(out, "bracket {} {} : {}", i + 1, j + 1, join_scalars(v));
            }
        }
    }
    if let Some(pm) = pmap {
        for (i, v) in pm.images().iter().enumerate() {
            let _ = writeln!(out, "pmap {} : {}", i + 1, join_scalars(v));
        }
    }
    out
}

/// Hex SHA-256 of the canonical text.
pub fn input_hash(alg: &LieAlgebra, pmap: Option<&PMap>) -> String {
    let digest = Sha256::digest(emit_lie(alg, pmap).as_bytes());
    digest.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModFile {
    pub module: LieModule,
    pub summands: Option<Vec<usize>>,
}

pub fn parse_mod(text: &str) -> Result<ModFile> {
    let mut lines = content_lines(text).peekable();
    let mut field: Option<Fp> = None;
    let mut algdim: Option<usize> = None;
    let mut moddim: Option<usize> = None;
    let mut summands: Option<Vec<usize>> = None;
    let mut action: Vec<Option<FpMatrix>> = Vec::new();
    while let Some((ln, line)) = lines.next() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "p" => field = Some(parse_modulus(ln, &toks)?),
            "algdim" => {
                let n = parse_usize(ln, toks.get(1).copied(), "algdim")?;
                algdim = Some(n);
                action = vec![None; n];
            }
            "moddim" => moddim = Some(parse_usize(ln, toks.get(1).copied(), "moddim")?),
            "summands" => {
                let dims = toks[1..]
                    .iter()
                    .map(|t| parse_usize(ln, Some(t), "summand dimension"))
                    .collect::<Result<Vec<_>>>()?;
                summands = Some(dims);
            }
            "action" => {
                let f = field.ok_or_else(|| perr(ln, "`p` must come before actions"))?;
                let n = algdim.ok_or_else(|| perr(ln, "`algdim` must come before actions"))?;
                let m = moddim.ok_or_else(|| perr(ln, "`moddim` must come before actions"))?;
                let (head, tail) = split_colon(ln, line)?;
                if head.len() != 2 || !tail.is_empty() {
                    return Err(perr(ln, "expected `action i :`"));
                }
                let i = parse_usize(ln, Some(head[1]), "index")?;
                if i == 0 || i > n {
                    return Err(perr(ln, format!("index {i} outside 1..={n}")));
                }
                if action[i - 1].is_some() {
                    return Err(perr(ln, format!("action {i} given twice")));
                }
                let mut rows = Vec::with_capacity(m);
                for _ in 0..m {
                    let (rl, row) = lines.next().ok_or_else(|| perr(ln, "matrix ends early"))?;
                    let toks: Vec<&str> = row.split_whitespace().collect();
                    rows.push(parse_scalars(rl, f, &toks, m)?);
                }
                action[i - 1] = Some(FpMatrix::from_rows(f, m, &rows));
            }
            other => return Err(perr(ln, format!("unknown keyword `{other}`"))),
        }
    }
    let f = field.ok_or_else(|| perr(0, "missing `p` line"))?;
    let m = moddim.ok_or_else(|| perr(0, "missing `moddim` line"))?;
    let n = algdim.ok_or_else(|| perr(0, "missing `algdim` line"))?;
    let action = action
        .into_iter()
        .enumerate()
        .map(|(i, a)| a.ok_or_else(|| perr(0, format!("missing action {}", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    if let Some(dims) = &summands {
        if dims.iter().sum::<usize>() != m {
            return Err(perr(0, format!("summand dimensions add up to {}, not {m}", dims.iter().sum::<usize>())));
        }
    }
    Ok(ModFile { module: LieModule::new(f, n, m, action), summands })
}

pub fn emit_mod(module: &LieModule, summands: Option<&[usize]>) -> String {
    let mut out = format!("p {}\nalgdim {}\nmoddim {}\n", module.p(), module.algdim(), module.dim());
    if let Some(dims) = summands {
        let _ = writeln!(out, "summands {}", join_scalars(&dims.iter().map(|&d| d as u32).collect::<Vec<_>>()));
    }
    for (i, a) in module.action().iter().enumerate() {
        let _ = writeln!(out, "action {} :", i + 1);
        for r in 0..a.rows() {
            let _ = writeln!(out, "{}", join_scalars(a.row(r)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn parses_na2() {
        let lf = parse_lie("p 2\ndim 2\nbracket 1 2 : 0 1").unwrap();
        assert_eq!(lf.algebra, corpus::na2(2));
        assert!(lf.pmap.is_none());
    }

    #[test]
    fn parses_sl2_with_negative_scalars() {
        let text = "# sl2\np 5\ndim 3\nbracket 1 2 : 0 2 0\nbracket 1 3 : 0 0 -2\nbracket 2 3 : 1 0 0\n";
        assert_eq!(parse_lie(text).unwrap().algebra, corpus::sl2(5));
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(parse_lie("p 4\ndim 1\n").unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_lie("p 2\ndim 2\n\nbracket 2 1 : 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err:?}");
        let err = parse_lie("p 2\ndim 2\nbracket 1 2 : 0 1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn reports_jacobi_triple() {
        let text = "p 5\ndim 3\nbracket 1 2 : 0 2 0\nbracket 1 3 : 0 0 3\nbracket 2 3 : 1 1 0\n";
        assert!(matches!(parse_lie(text).unwrap_err(), Error::Jacobi(..)));
    }

    #[test]
    fn pmap_lines_are_checked() {
        let ok = "p 2\ndim 2\nbracket 1 2 : 0 1\npmap 1 : 1 0\npmap 2 : 0 0\n";
        assert!(parse_lie(ok).unwrap().pmap.is_some());
        let bad = "p 2\ndim 2\nbracket 1 2 : 0 1\npmap 1 : 0 1\npmap 2 : 0 0\n";
        assert!(matches!(parse_lie(bad).unwrap_err(), Error::InvalidPMap(_)));
        let partial = "p 2\ndim 2\nbracket 1 2 : 0 1\npmap 1 : 1 0\n";
        assert!(matches!(parse_lie(partial).unwrap_err(), Error::Parse { .. }));
    }

    #[test]
    fn canonical_emission_sorts_lines() {
        let text = "dim 3\np 5\nbracket 2 3 : 6 0 0\nbracket 1 3 : 0 0 3\nbracket 1 2 : 0 2 0\n";
        let lf = parse_lie(text).unwrap();
        assert_eq!(
            emit_lie(&lf.algebra, None),
            "p 5\ndim 3\nbracket 1 2 : 0 2 0\nbracket 1 3 : 0 0 3\nbracket 2 3 : 1 0 0\n"
        );
    }

    #[test]
    fn module_round_trip() {
        let m = corpus::sl2(5).adjoint_module();
        let text = emit_mod(&m, Some(&[3]));
        let back = parse_mod(&text).unwrap();
        assert_eq!(back.module, m);
        assert_eq!(back.summands, Some(vec![3]));
        assert_eq!(emit_mod(&back.module, Some(&[3])), text);
    }

    #[test]
    fn hash_is_stable() {
        let a = input_hash(&corpus::na2(2), None);
        assert_eq!(a.len(), 64);
        assert_eq!(a, input_hash(&parse_lie("p 2\ndim 2\nbracket 1 2 : 0 1\n").unwrap().algebra, None));
        assert_ne!(a, input_hash(&corpus::na2(3), None));
    }
}
