//! Text notation for elements.
//!
//! The parser accepts right-associated words like `xxxxy` (meaning
//! `[x,[x,[x,[x,y]]]]`) and explicit bracket trees like `[x1,[x2,x1]]`,
//! plus rational linear combinations of either. Letters `x, y, z, w` name
//! the first four generators; `x1`, `x2`, ... work for any rank.
//!
//! The printer emits the Lyndon normal form. Each basis element is shown as
//! its Lyndon word; note that this names the standard bracketing of the word,
//! not its right-associated reading. `print_element_brackets` prints fully
//! parenthesized bracket trees, which reparse to the same element.

use crate::error::{Error, Result};
use crate::exact::Scalar;

use super::{FreeLie, LieElement, WordId};

/// A raw bracket expression over the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Gen(usize),
    Bracket(Box<Expr>, Box<Expr>),
}

impl FreeLie {
    /// Normalizes a bracket tree into the Lyndon basis.
    pub fn normalize(&self, e: &Expr) -> Result<LieElement> {
        match e {
            Expr::Gen(i) => self.gen_el(*i),
            Expr::Bracket(l, r) => {
                let a = self.normalize(l)?;
                let b = self.normalize(r)?;
                self.bracket(&a, &b)
            }
        }
    }

    /// Right-associated monomial over generator indices:
    /// `[i0, [i1, [... , i_last]]]`.
    pub fn word_expr(&self, indices: &[usize]) -> Result<Expr> {
        if indices.is_empty() {
            return Err(Error::Input("empty word".into()));
        }
        for &i in indices {
            if i >= self.generators() {
                return Err(Error::UnknownGenerator {
                    index: i,
                    count: self.generators(),
                });
            }
        }
        let mut it = indices.iter().rev();
        let mut acc = Expr::Gen(*it.next().unwrap());
        for &i in it {
            acc = Expr::Bracket(Box::new(Expr::Gen(i)), Box::new(acc));
        }
        Ok(acc)
    }

    /// Normalizes a right-associated word given by generator indices.
    pub fn normalize_word(&self, indices: &[usize]) -> Result<LieElement> {
        self.normalize(&self.word_expr(indices)?)
    }

    pub fn parse_element(&self, input: &str) -> Result<LieElement> {
        Parser {
            s: input.as_bytes(),
            pos: 0,
            alg: self,
        }
        .parse_sum()
    }

    /// Lyndon normal form, e.g. `xxy - 2*xyy`. Words name basis elements
    /// (standard bracketings), with Q(i) coefficients in parentheses.
    pub fn print_element(&self, v: &LieElement) -> String {
        self.print_with(v, |w| self.print_word(w))
    }

    /// Fully parenthesized form, e.g. `[x,[x,y]] - 2*[[x,y],y]`; reparsing
    /// yields the same element.
    pub fn print_element_brackets(&self, v: &LieElement) -> String {
        self.print_with(v, |w| self.print_word_brackets(w))
    }

    fn print_with(&self, v: &LieElement, word_fmt: impl Fn(WordId) -> String) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (w, c)) in v.terms().enumerate() {
            let word = word_fmt(w);
            let neg = c.is_rational() && c.to_string().starts_with('-');
            let mag = if neg {
                (-c.clone()).to_string()
            } else {
                c.to_string()
            };
            let mag = if c.is_rational() {
                mag
            } else {
                format!("({mag})")
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag == "1" {
                out.push_str(&word);
            } else {
                out.push_str(&mag);
                out.push('*');
                out.push_str(&word);
            }
        }
        out
    }

    pub fn print_word(&self, w: WordId) -> String {
        let letters = self.word_letters(w);
        if self.generators() <= 4 {
            letters
                .iter()
                .map(|&c| (b"xyzw"[c as usize]) as char)
                .collect()
        } else {
            letters
                .iter()
                .map(|&c| format!("x{}", c + 1))
                .collect::<Vec<_>>()
                .join("")
        }
    }

    pub fn print_word_brackets(&self, w: WordId) -> String {
        match self.word_factors(w) {
            None => self.print_word(w),
            Some((l, r)) => {
                format!(
                    "[{},{}]",
                    self.print_word_brackets(l),
                    self.print_word_brackets(r)
                )
            }
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    alg: &'a FreeLie,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn parse_sum(&mut self) -> Result<LieElement> {
        let mut acc = self.alg.zero_el();
        let mut sign = Scalar::one();
        self.skip_ws();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -Scalar::one();
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        if self.peek() == Some(b'0') && self.pos + 1 == self.s.len() {
            return Ok(acc);
        }
        loop {
            let term = self.parse_term()?;
            acc = self.alg.add(&acc, &self.alg.scale(&sign, &term))?;
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = Scalar::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -Scalar::one();
                }
                None => return Ok(acc),
                Some(c) => {
                    return Err(Error::Input(format!(
                        "unexpected character {:?} at position {}",
                        c as char, self.pos
                    )))
                }
            }
        }
    }

    fn parse_term(&mut self) -> Result<LieElement> {
        self.skip_ws();
        let coeff = self.parse_coeff()?;
        self.skip_ws();
        let factor = self.parse_factor()?;
        Ok(self.alg.scale(&coeff, &factor))
    }

    fn parse_coeff(&mut self) -> Result<Scalar> {
        let start = self.pos;
        if self.peek() == Some(b'(') {
            let close = self.s[self.pos..]
                .iter()
                .position(|&c| c == b')')
                .ok_or_else(|| Error::Input("unbalanced parenthesis".into()))?;
            let inner = std::str::from_utf8(&self.s[self.pos + 1..self.pos + close]).unwrap();
            let val: Scalar = inner.parse()?;
            self.pos += close + 1;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            }
            return Ok(val);
        }
        let mut end = self.pos;
        while end < self.s.len() && (self.s[end].is_ascii_digit() || self.s[end] == b'/') {
            end += 1;
        }
        if end == self.pos {
            return Ok(Scalar::one());
        }
        let text = std::str::from_utf8(&self.s[self.pos..end]).unwrap();
        self.pos = end;
        self.skip_ws();
        if self.peek() == Some(b'*') {
            self.pos += 1;
        }
        text.parse()
            .map_err(|_| Error::Input(format!("bad coefficient at {start}")))
    }

    fn parse_factor(&mut self) -> Result<LieElement> {
        self.skip_ws();
        if self.peek() == Some(b'[') {
            let expr = self.parse_bracket()?;
            return self.alg.normalize(&expr);
        }
        let indices = self.parse_word_indices()?;
        self.alg.normalize_word(&indices)
    }

    fn parse_bracket(&mut self) -> Result<Expr> {
        self.skip_ws();
        if self.peek() == Some(b'[') {
            self.pos += 1;
            let l = self.parse_bracket()?;
            self.skip_ws();
            if self.peek() != Some(b',') {
                return Err(Error::Input("expected ',' in bracket".into()));
            }
            self.pos += 1;
            let r = self.parse_bracket()?;
            self.skip_ws();
            if self.peek() != Some(b']') {
                return Err(Error::Input("expected ']'".into()));
            }
            self.pos += 1;
            return Ok(Expr::Bracket(Box::new(l), Box::new(r)));
        }
        let indices = self.parse_word_indices()?;
        self.alg.word_expr(&indices)
    }

    fn parse_word_indices(&mut self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                Some(b'x') if self.s.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit()) => {
                    self.pos += 1;
                    let mut n = 0usize;
                    while let Some(c) = self.peek() {
                        if c.is_ascii_digit() {
                            n = n * 10 + (c - b'0') as usize;
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                    if n == 0 {
                        return Err(Error::Input("generator indices start at 1".into()));
                    }
                    out.push(n - 1);
                }
                Some(c @ (b'x' | b'y' | b'z' | b'w')) => {
                    out.push(match c {
                        b'x' => 0,
                        b'y' => 1,
                        b'z' => 2,
                        _ => 3,
                    });
                    self.pos += 1;
                }
                _ => break,
            }
        }
        if out.is_empty() {
            return Err(Error::Input(format!(
                "expected a word at position {}",
                self.pos
            )));
        }
        for &i in &out {
            if i >= self.alg.generators() {
                return Err(Error::UnknownGenerator {
                    index: i,
                    count: self.alg.generators(),
                });
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_bracket_normalizes_to_zero() {
        let alg = FreeLie::shared(2, 4).unwrap();
        assert!(alg.parse_element("[x,x]").unwrap().is_zero());
    }

    #[test]
    fn jacobi_combination_is_zero() {
        let alg = FreeLie::shared(3, 4).unwrap();
        let v = alg
            .parse_element("[x1,[x2,x3]] + [x2,[x3,x1]] + [x3,[x1,x2]]")
            .unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn word_xxxxy_has_multidegree_4_1() {
        let alg = FreeLie::shared(2, 5).unwrap();
        let v = alg.parse_element("xxxxy").unwrap();
        assert!(!v.is_zero());
        for (w, _) in v.terms() {
            assert_eq!(alg.word_multidegree(w), &[4, 1]);
        }
    }

    #[test]
    fn bracket_print_roundtrips() {
        let alg = FreeLie::shared(2, 6).unwrap();
        let v = alg
            .parse_element("xxy - 2*xyxyy + 1/3*[x,[x,[x,y]]]")
            .unwrap();
        let printed = alg.print_element_brackets(&v);
        let reparsed = alg.parse_element(&printed).unwrap();
        assert_eq!(v, reparsed);
    }

    #[test]
    fn right_associated_and_standard_bracketing_agree_on_power_words() {
        // x...xy right-associated IS the standard bracketing.
        let alg = FreeLie::shared(2, 6).unwrap();
        let v = alg.parse_element("xxxxxy").unwrap();
        assert_eq!(v.num_terms(), 1);
        let (w, c) = v.terms().next().unwrap();
        assert_eq!(alg.print_word(w), "xxxxxy");
        assert!(c.is_one());
    }

    #[test]
    fn gaussian_coefficients_parse() {
        let alg = FreeLie::shared(2, 3).unwrap();
        let v = alg.parse_element("(1+i)*xy - (i)*xxy").unwrap();
        assert_eq!(v.num_terms(), 2);
        let printed = alg.print_element(&v);
        assert!(printed.contains("(1+i)"));
    }
}
