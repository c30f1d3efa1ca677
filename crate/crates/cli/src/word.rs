//! Words on the command line: `h h g`, `hhg`, `h^2 g^1`, `a^100000000000000000000`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use pfakit::pfa::Pfa;

/// A word as runs `(letter, exponent)`; exponents may be huge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub runs: Vec<(usize, BigUint)>,
}

impl Word {
    pub fn from_letters(letters: &[usize]) -> Self {
        let mut runs: Vec<(usize, BigUint)> = Vec::new();
        for &a in letters {
            match runs.last_mut() {
                Some((b, e)) if *b == a => *e += 1u32,
                _ => runs.push((a, BigUint::one())),
            }
        }
        Word { runs }
    }

    pub fn len(&self) -> BigUint {
        self.runs.iter().map(|(_, e)| e).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.iter().all(|(_, e)| e.is_zero())
    }

    /// Letter names joined by spaces, with `x^k` for runs longer than 3;
    /// `ε` for the empty word. Always re-parses to the same word.
    pub fn render(&self, pfa: &Pfa) -> String {
        let names = pfa.alphabet();
        let mut parts = Vec::new();
        for (a, e) in &self.runs {
            if e.is_zero() {
                continue;
            }
            match u8::try_from(e) {
                Ok(k) if k <= 3 => parts.extend(std::iter::repeat_n(names[*a].clone(), k as usize)),
                _ => parts.push(format!("{}^{e}", names[*a])),
            }
        }
        if parts.is_empty() {
            "ε".to_string()
        } else {
            parts.join(" ")
        }
    }
}

pub fn parse_word(text: &str, pfa: &Pfa) -> Result<Word, String> {
    let names = pfa.alphabet();
    let letter = |s: &str| names.iter().position(|n| n == s).ok_or_else(|| format!("unknown letter `{s}`"));
    let mut runs = Vec::new();
    for tok in text.split_whitespace() {
        if tok == "ε" {
            continue;
        }
        if let Some((name, exp)) = tok.split_once('^') {
            let e: BigUint = exp.parse().map_err(|_| format!("malformed exponent in `{tok}`"))?;
            runs.push((letter(name)?, e));
        } else if let Ok(a) = letter(tok) {
            runs.push((a, BigUint::one()));
        } else {
            // Concatenated single-character letters such as `hhg`.
            for ch in tok.chars() {
                runs.push((letter(ch.encode_utf8(&mut [0; 4]))?, BigUint::one()));
            }
        }
    }
    Ok(Word { runs })
}
