//! Entry expressions: sums and differences of terms `coeff`, `coeff*Z^k`,
//! or `Z^k`. Whitespace is insignificant; coefficients are reduced mod p
//! and `-` takes the additive inverse mod p.

use std::fmt;

use mlca::algebra::LaurentPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub token: String,
    pub expected: &'static str,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: found {} where {} was expected",
            self.line, self.column, self.token, self.expected
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Z,
    Plus,
    Minus,
    Star,
    Caret,
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

impl Spanned {
    fn describe(&self) -> String {
        match self.tok {
            Tok::Int(v) => format!("'{v}'"),
            Tok::Z => "'Z'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::End => "the end of the entry".into(),
        }
    }

    fn error(&self, expected: &'static str) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            token: self.describe(),
            expected,
        }
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut column = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tok_line, tok_column) = (line, column);
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            'Z' => Some(Tok::Z),
            _ => None,
        };
        if let Some(tok) = simple {
            chars.next();
            column += 1;
            out.push(Spanned {
                tok,
                line: tok_line,
                column: tok_column,
            });
        } else if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
        } else if c.is_whitespace() {
            chars.next();
            column += 1;
        } else if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                digits.push(d);
                chars.next();
                column += 1;
            }
            let value = digits.parse::<u64>().map_err(|_| ParseError {
                line: tok_line,
                column: tok_column,
                token: format!("'{digits}'"),
                expected: "a number below 2^64",
            })?;
            out.push(Spanned {
                tok: Tok::Int(value),
                line: tok_line,
                column: tok_column,
            });
        } else {
            return Err(ParseError {
                line: tok_line,
                column: tok_column,
                token: format!("'{c}'"),
                expected: "a coefficient, 'Z', '+', '-', '*', or '^'",
            });
        }
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

/// Parses one matrix entry over F_p.
pub fn parse_entry(text: &str, p: u64) -> Result<LaurentPoly, ParseError> {
    let toks = lex(text)?;
    let mut pos = 0usize;
    let mut acc = LaurentPoly::zero(p);
    let mut negate = false;
    loop {
        let (coeff, exponent) = parse_term(&toks, &mut pos)?;
        let mono = LaurentPoly::monomial(p, coeff % p, exponent);
        acc = if negate {
            acc.sub_ref(&mono)
        } else {
            acc.add_ref(&mono)
        };
        match toks[pos].tok {
            Tok::Plus => {
                negate = false;
                pos += 1;
            }
            Tok::Minus => {
                negate = true;
                pos += 1;
            }
            Tok::End => return Ok(acc),
            _ => return Err(toks[pos].error("'+', '-', or the end of the entry")),
        }
    }
}

fn parse_term(toks: &[Spanned], pos: &mut usize) -> Result<(u64, i64), ParseError> {
    match toks[*pos].tok {
        Tok::Int(v) => {
            *pos += 1;
            if toks[*pos].tok == Tok::Star {
                *pos += 1;
                Ok((v, parse_zpow(toks, pos)?))
            } else {
                Ok((v, 0))
            }
        }
        Tok::Z => Ok((1, parse_zpow(toks, pos)?)),
        _ => Err(toks[*pos].error("a coefficient or 'Z'")),
    }
}

fn parse_zpow(toks: &[Spanned], pos: &mut usize) -> Result<i64, ParseError> {
    if toks[*pos].tok != Tok::Z {
        return Err(toks[*pos].error("'Z'"));
    }
    *pos += 1;
    if toks[*pos].tok != Tok::Caret {
        return Ok(1);
    }
    *pos += 1;
    parse_int(toks, pos)
}

fn parse_int(toks: &[Spanned], pos: &mut usize) -> Result<i64, ParseError> {
    let negative = if toks[*pos].tok == Tok::Minus {
        *pos += 1;
        true
    } else {
        false
    };
    match toks[*pos].tok {
        Tok::Int(v) => {
            let magnitude =
                i64::try_from(v).map_err(|_| toks[*pos].error("an exponent that fits in 64 bits"))?;
            *pos += 1;
            Ok(if negative { -magnitude } else { magnitude })
        }
        _ => Err(toks[*pos].error("an exponent")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(p: u64, terms: &[(i64, u64)]) -> LaurentPoly {
        LaurentPoly::from_terms(p, terms)
    }

    #[test]
    fn sums_and_scaled_powers() {
        assert_eq!(parse_entry("1 + Z", 2).unwrap(), lp(2, &[(0, 1), (1, 1)]));
        assert_eq!(
            parse_entry("Z^-1 + 2*Z^3", 3).unwrap(),
            lp(3, &[(-1, 1), (3, 2)])
        );
        assert_eq!(parse_entry("0", 5).unwrap(), LaurentPoly::zero(5));
        assert_eq!(parse_entry("Z ^ 4", 2).unwrap(), lp(2, &[(4, 1)]));
    }

    #[test]
    fn coefficients_reduce_and_minus_negates() {
        assert_eq!(parse_entry("3", 2).unwrap(), lp(2, &[(0, 1)]));
        assert_eq!(parse_entry("1 - Z", 3).unwrap(), lp(3, &[(0, 1), (1, 2)]));
        assert_eq!(parse_entry("Z - Z", 5).unwrap(), LaurentPoly::zero(5));
    }

    #[test]
    fn dangling_caret_reports_its_position() {
        let err = parse_entry("Z^", 2).unwrap_err();
        assert_eq!((err.line, err.column), (1, 3));
        assert_eq!(err.token, "the end of the entry");
    }

    #[test]
    fn grammar_violations_report_the_token() {
        let err = parse_entry("- 1", 2).unwrap_err();
        assert_eq!((err.line, err.column, err.token.as_str()), (1, 1, "'-'"));

        let err = parse_entry("2 Z", 2).unwrap_err();
        assert_eq!((err.line, err.column, err.token.as_str()), (1, 3, "'Z'"));

        let err = parse_entry("1 + (Z)", 2).unwrap_err();
        assert_eq!((err.line, err.column, err.token.as_str()), (1, 5, "'('"));

        let err = parse_entry("1 +\n^", 2).unwrap_err();
        assert_eq!((err.line, err.column, err.token.as_str()), (2, 1, "'^'"));
    }

    #[test]
    fn oversized_numbers_are_rejected() {
        let err = parse_entry("99999999999999999999999", 2).unwrap_err();
        assert_eq!(err.expected, "a number below 2^64");
    }
}
