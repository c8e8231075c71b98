//! Input files: polynomials one per line, or a matrix with a header.

use hessrank::normform::{Bezout, DomainKind, Mat, UniPoly};
use hessrank::polyring::{parse_polynomial, parse_polynomial_at};
use hessrank::{Error, Polynomial, Result};
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyInput {
    pub vars: Option<usize>,
    pub main: Option<usize>,
    /// `(line number, source text, polynomial)`.
    pub polys: Vec<(usize, String, Polynomial)>,
}

fn parse_directive(line: &str, lineno: usize) -> Result<Option<(usize, Option<usize>)>> {
    let words: Vec<&str> = line.split_whitespace().collect();
    if words.first() != Some(&"vars") {
        return Ok(None);
    }
    let num = |w: Option<&&str>, col: usize| -> Result<usize> {
        w.and_then(|s| s.parse().ok()).ok_or_else(|| Error::Parse { line: lineno, col, msg: "expected a count".into() })
    };
    let vars = num(words.get(1), 6)?;
    let main = match words.get(2) {
        None => None,
        Some(&"main") => Some(num(words.get(3), line.find("main").unwrap_or(0) + 6)?),
        Some(_) => return Err(Error::Parse { line: lineno, col: 1, msg: "expected 'vars N main M'".into() }),
    };
    Ok(Some((vars, main)))
}

/// Skips blank lines and `#` comments; the first remaining line may be the
/// directive `vars N main M`. `vars_override` wins over the directive.
pub fn parse_poly_file(text: &str, vars_override: Option<usize>) -> Result<PolyInput> {
    let mut input = PolyInput { vars: None, main: None, polys: Vec::new() };
    let mut first = true;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if first {
            first = false;
            if let Some((v, m)) = parse_directive(line, i + 1)? {
                input.vars = Some(v);
                input.main = m;
                continue;
            }
        }
        let vars = vars_override.or(input.vars);
        input.polys.push((i + 1, line.to_string(), parse_polynomial_at(line, vars, i + 1)?));
    }
    if vars_override.is_some() {
        input.vars = vars_override;
    }
    if input.polys.is_empty() {
        return Err(Error::Parse { line: 1, col: 1, msg: "no polynomial in input".into() });
    }
    Ok(input)
}

/// Matrix entries in one of the two domains.
#[derive(Clone, Debug, PartialEq)]
pub enum MatrixInput {
    Int(Mat<BigInt>),
    Polyt(Mat<UniPoly>),
}

impl MatrixInput {
    pub fn kind(&self) -> DomainKind {
        match self {
            MatrixInput::Int(_) => DomainKind::Integer,
            MatrixInput::Polyt(_) => DomainKind::UnivariatePoly,
        }
    }
}

fn entry<S: Bezout>(s: &str, line: usize) -> Result<S> {
    let p = parse_polynomial(s, Some(0)).map_err(|e| match e {
        Error::Parse { col, msg, .. } => Error::Parse { line, col, msg },
        other => other,
    })?;
    S::from_polynomial(&p).ok_or_else(|| Error::Parse {
        line,
        col: 1,
        msg: format!("entry '{s}' is not in the {} domain", S::KIND.name()),
    })
}

fn rows<S: Bezout>(lines: &[(usize, &str)], m: usize, n: usize) -> Result<Mat<S>> {
    if lines.len() != m {
        return Err(Error::Parse { line: lines.last().map(|l| l.0).unwrap_or(1), col: 1, msg: format!("expected {m} rows") });
    }
    lines
        .iter()
        .map(|&(ln, text)| {
            let items: Vec<&str> = text.split_whitespace().collect();
            if items.len() != n {
                return Err(Error::Parse { line: ln, col: 1, msg: format!("expected {n} entries, found {}", items.len()) });
            }
            items.iter().map(|s| entry::<S>(s, ln)).collect()
        })
        .collect()
}

/// Header `m n domain`, then `m` rows of `n` entries.
pub fn parse_matrix_file(text: &str) -> Result<MatrixInput> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let Some(&(hl, header)) = lines.first() else {
        return Err(Error::Parse { line: 1, col: 1, msg: "empty matrix file".into() });
    };
    let h: Vec<&str> = header.split_whitespace().collect();
    let bad = || Error::Parse { line: hl, col: 1, msg: "header must be 'm n int|polyt'".into() };
    if h.len() != 3 {
        return Err(bad());
    }
    let m: usize = h[0].parse().map_err(|_| bad())?;
    let n: usize = h[1].parse().map_err(|_| bad())?;
    match h[2] {
        "int" => Ok(MatrixInput::Int(rows(&lines[1..], m, n)?)),
        "polyt" => Ok(MatrixInput::Polyt(rows(&lines[1..], m, n)?)),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn directive_and_comments() {
        let f = parse_poly_file("# fixture\nvars 5 main 3\nx1^2 + x4\n\nx2*x5\n", None).unwrap();
        assert_eq!((f.vars, f.main), (Some(5), Some(3)));
        assert_eq!(f.polys.len(), 2);
        assert_eq!(f.polys[1].0, 5);
        assert_eq!(f.polys[0].2.arity(), 5);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = parse_poly_file("x1 +\n", None).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = parse_poly_file("# c\nx1\nx0\n", None).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn matrices() {
        let m = parse_matrix_file("2 2 polyt\nt t^2\n1 t\n").unwrap();
        assert_eq!(m.kind(), DomainKind::UnivariatePoly);
        let m = parse_matrix_file("1 2 int\n2 -4\n").unwrap();
        assert_eq!(m, MatrixInput::Int(vec![vec![BigInt::from(2), BigInt::from(-4)]]));
        assert!(parse_matrix_file("1 1 int\n1/2\n").is_err());
        assert!(parse_matrix_file("1 2 int\n1\n").is_err());
    }
}
