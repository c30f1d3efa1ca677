//! Line-oriented PFA text format.
//!
//! ```text
//! pfa v1
//! states 2
//! alphabet a
//! initial 1 0
//! final 0 1
//! matrix a
//! 1/2 1/2
//! 0 1
//! ```
//!
//! `#` starts a comment. Numbers are exact rationals (`p` or `p/q`); floats are rejected.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use pfakit::linalg::{RMatrix, Rational};
use pfakit::pfa::Pfa;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError { line, message: message.into() }
}

/// Parses `p` or `p/q` with integer `p`, `q` (`q ≠ 0`), reduced on the way in.
pub fn parse_rational(token: &str) -> Result<Rational, String> {
    let int = |s: &str| -> Result<BigInt, String> {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("malformed rational `{token}`"));
        }
        s.parse().map_err(|_| format!("malformed rational `{token}`"))
    };
    match token.split_once('/') {
        None => Ok(Rational::from_integer(int(token)?)),
        Some((p, q)) => {
            let q = int(q)?;
            if q.is_zero() {
                return Err(format!("zero denominator in `{token}`"));
            }
            Ok(Rational::new(int(p)?, q))
        }
    }
}

/// `p/q` in lowest terms, or `p` when `q = 1`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

struct Lines<'a> {
    items: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items: Vec<_> = text
            .lines()
            .enumerate()
            .filter_map(|(i, l)| {
                let l = l.split('#').next().unwrap_or("");
                let toks: Vec<&str> = l.split_whitespace().collect();
                (!toks.is_empty()).then_some((i + 1, toks))
            })
            .collect();
        let last = text.lines().count().max(1);
        Lines { items, pos: 0, last }
    }

    fn next(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), FormatError> {
        let item = self.items.get(self.pos).cloned().ok_or_else(|| err(self.last, format!("expected {what}, found end of file")))?;
        self.pos += 1;
        Ok(item)
    }

    /// Next line, which must start with `keyword`; returns the remaining tokens.
    fn keyword(&mut self, keyword: &str) -> Result<(usize, Vec<&'a str>), FormatError> {
        let (line, toks) = self.next(&format!("`{keyword}`"))?;
        if toks[0] != keyword {
            return Err(err(line, format!("expected `{keyword}`, found `{}`", toks[0])));
        }
        Ok((line, toks[1..].to_vec()))
    }
}

fn rationals(line: usize, toks: &[&str], n: usize, what: &str) -> Result<Vec<Rational>, FormatError> {
    if toks.len() != n {
        return Err(err(line, format!("{what} has {} entries, expected {n}", toks.len())));
    }
    toks.iter().map(|t| parse_rational(t).map_err(|m| err(line, m))).collect()
}

fn sum(xs: &[Rational]) -> Rational {
    xs.iter().fold(Rational::zero(), |acc, x| acc + x)
}

pub fn read_pfa(text: &str) -> Result<Pfa, FormatError> {
    let mut lines = Lines::new(text);
    let (line, toks) = lines.keyword("pfa")?;
    if toks != ["v1"] {
        return Err(err(line, "unsupported format version, expected `pfa v1`"));
    }
    let (line, toks) = lines.keyword("states")?;
    let n: usize = match toks.as_slice() {
        [t] => t.parse().map_err(|_| err(line, format!("malformed state count `{t}`")))?,
        _ => return Err(err(line, "expected `states <n>`")),
    };
    if n == 0 {
        return Err(err(line, "automaton needs at least one state"));
    }
    let (line, toks) = lines.keyword("alphabet")?;
    if toks.is_empty() {
        return Err(err(line, "alphabet is empty"));
    }
    let alphabet: Vec<String> = toks.iter().map(|s| s.to_string()).collect();
    for (i, a) in alphabet.iter().enumerate() {
        if alphabet[..i].contains(a) || a.contains('^') {
            return Err(err(line, format!("invalid or repeated letter `{a}`")));
        }
    }

    let (line, toks) = lines.keyword("initial")?;
    let initial = rationals(line, &toks, n, "initial vector")?;
    if initial.iter().any(|x| x < &Rational::zero()) || !sum(&initial).is_one() {
        return Err(err(line, format!("initial vector sums to {}, expected 1", fmt_rational(&sum(&initial)))));
    }
    let (line, toks) = lines.keyword("final")?;
    if toks.len() != n {
        return Err(err(line, format!("final vector has {} entries, expected {n}", toks.len())));
    }
    let finals = toks
        .iter()
        .map(|t| match *t {
            "0" => Ok(false),
            "1" => Ok(true),
            _ => Err(err(line, format!("final entry `{t}` is not 0 or 1"))),
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut matrices: Vec<Option<RMatrix>> = vec![None; alphabet.len()];
    for _ in 0..alphabet.len() {
        let (line, toks) = lines.keyword("matrix")?;
        let letter = match toks.as_slice() {
            [l] => *l,
            _ => return Err(err(line, "expected `matrix <letter>`")),
        };
        let idx = alphabet
            .iter()
            .position(|a| a == letter)
            .ok_or_else(|| err(line, format!("matrix for unknown letter `{letter}`")))?;
        if matrices[idx].is_some() {
            return Err(err(line, format!("second matrix for `{letter}`")));
        }
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let (line, toks) = lines.next(&format!("row {i} of matrix `{letter}`"))?;
            let row = rationals(line, &toks, n, &format!("row {i} of matrix `{letter}`"))?;
            if row.iter().any(|x| x < &Rational::zero()) {
                return Err(err(line, format!("row {i} of matrix `{letter}` has a negative entry")));
            }
            let s = sum(&row);
            if !s.is_one() {
                return Err(err(line, format!("row {i} of matrix `{letter}` sums to {}, expected 1", fmt_rational(&s))));
            }
            rows.push(row);
        }
        matrices[idx] = Some(RMatrix::from_rows(rows).expect("rows have equal length"));
    }
    if let Some((line, toks)) = lines.items.get(lines.pos) {
        return Err(err(*line, format!("unexpected `{}` after the last matrix", toks[0])));
    }
    let transitions = matrices.into_iter().map(|m| m.expect("every letter read")).collect();
    Pfa::new(alphabet, initial, transitions, finals).map_err(|e| err(lines.last, e.to_string()))
}

pub fn write_pfa(pfa: &Pfa) -> String {
    let n = pfa.states();
    let join = |xs: &mut dyn Iterator<Item = String>| xs.collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    writeln!(out, "pfa v1").unwrap();
    writeln!(out, "states {n}").unwrap();
    writeln!(out, "alphabet {}", pfa.alphabet().join(" ")).unwrap();
    writeln!(out, "initial {}", join(&mut pfa.initial().iter().map(fmt_rational))).unwrap();
    writeln!(out, "final {}", join(&mut pfa.finals().iter().map(|&f| if f { "1" } else { "0" }.to_string()))).unwrap();
    for (letter, m) in pfa.alphabet().iter().zip(pfa.transitions()) {
        writeln!(out, "matrix {letter}").unwrap();
        for i in 0..n {
            writeln!(out, "{}", join(&mut m.row(i).iter().map(fmt_rational))).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const HALVING: &str = "\
# 1 - 2^-k
pfa v1
states 2
alphabet a
initial 1 0
final 0 1   # second state accepts
matrix a
1/2 1/2
0 1
";

    #[test]
    fn reads_and_writes() {
        let pfa = read_pfa(HALVING).unwrap();
        assert_eq!(pfa.states(), 2);
        let text = write_pfa(&pfa);
        assert_eq!(text, "pfa v1\nstates 2\nalphabet a\ninitial 1 0\nfinal 0 1\nmatrix a\n1/2 1/2\n0 1\n");
        assert_eq!(read_pfa(&text).unwrap(), pfa);
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3/6").unwrap(), Rational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("-4/2").unwrap(), Rational::from_integer((-2).into()));
        for bad in ["0.5", "1/0", "", "1/", "/2", "1e3", "--1", "1/-"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
        assert_eq!(fmt_rational(&parse_rational("6/3").unwrap()), "2");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad_row = HALVING.replace("1/2 1/2", "1/2 2/5");
        let e = read_pfa(&bad_row).unwrap_err();
        assert_eq!(e.line, 8);
        assert!(e.message.contains("row 0 of matrix `a` sums to 9/10"), "{e}");

        let e = read_pfa(&HALVING.replace("final 0 1", "final 0 2")).unwrap_err();
        assert_eq!(e.line, 6);
        let e = read_pfa(&HALVING.replace("0 1\n", "0 1 0\n")).unwrap_err();
        assert_eq!(e.line, 9);
        let e = read_pfa(&HALVING.replace("initial 1 0", "initial 0.5 0.5")).unwrap_err();
        assert!(e.message.contains("malformed rational `0.5`"), "{e}");
        let e = read_pfa("pfa v1\nstates 2\n").unwrap_err();
        assert!(e.message.contains("end of file"), "{e}");
        let e = read_pfa(&format!("{HALVING}matrix a\n")).unwrap_err();
        assert_eq!(e.line, 10);
    }
}
