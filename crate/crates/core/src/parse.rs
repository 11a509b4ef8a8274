//! Text syntax for forms: terms joined by `+`/`-`, monomial factors joined
//! by `*`, exponents by `^`. Variables are `x1..xn`, with `x`, `y`, `z`
//! accepted as aliases for `x1..x3` when the form has at most three
//! variables. Printing uses the same syntax in graded-lex term order, so
//! `parse(print(p)) == p`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::form::{Exponents, Form};
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                tokens.push((i, Token::Plus));
                i += 1;
            }
            b'-' => {
                tokens.push((i, Token::Minus));
                i += 1;
            }
            b'*' => {
                tokens.push((i, Token::Star));
                i += 1;
            }
            b'^' => {
                tokens.push((i, Token::Caret));
                i += 1;
            }
            b'/' => {
                tokens.push((i, Token::Slash));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits parse");
                tokens.push((start, Token::Number(n)));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = i;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                tokens.push((start, Token::Ident(text[start..i].to_string())));
            }
            _ => {
                return Err(Error::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{}`", b as char),
                })
            }
        }
    }
    Ok(tokens)
}

fn variable_index(name: &str, pos: usize, n_vars: usize) -> Result<usize> {
    let idx = match name {
        "x" if n_vars <= 3 => Some(0),
        "y" if n_vars <= 3 => Some(1),
        "z" if n_vars <= 3 => Some(2),
        _ => name
            .strip_prefix('x')
            .and_then(|rest| rest.parse::<usize>().ok())
            .and_then(|k| k.checked_sub(1)),
    };
    match idx {
        Some(i) if i < n_vars => Ok(i),
        _ => Err(Error::UnknownVariable {
            name: name.to_string(),
            pos,
            n_vars,
        }),
    }
}

/// Parse a form in `n_vars` variables from text.
pub fn parse_form(text: &str, n_vars: usize) -> Result<Form> {
    if n_vars == 0 {
        return Err(Error::InvalidParameter(
            "a form needs at least one variable".into(),
        ));
    }
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Syntax {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let mut terms: Vec<(Exponents, Rat)> = Vec::new();
    let mut i = 0;
    let end = tokens.len();
    let mut first = true;
    while i < end {
        // Sign.
        let mut sign = Rat::one();
        match &tokens[i].1 {
            Token::Plus => i += 1,
            Token::Minus => {
                sign = -sign;
                i += 1;
            }
            _ if first => {}
            _ => {
                return Err(Error::Syntax {
                    pos: tokens[i].0,
                    msg: "expected `+` or `-` between terms".into(),
                })
            }
        }
        first = false;
        // One term: factors joined by `*`.
        let mut coeff = sign;
        let mut exps = vec![0u32; n_vars];
        let mut want_factor = true;
        while want_factor {
            if i >= end {
                return Err(Error::Syntax {
                    pos: text.len(),
                    msg: "expected a factor".into(),
                });
            }
            let (pos, tok) = &tokens[i];
            match tok {
                Token::Number(n) => {
                    i += 1;
                    let mut value = Rat::from_integer(n.clone());
                    if i < end && tokens[i].1 == Token::Slash {
                        i += 1;
                        match tokens.get(i) {
                            Some((_, Token::Number(d))) if !d.is_zero() => {
                                value /= Rat::from_integer(d.clone());
                                i += 1;
                            }
                            Some((p, _)) => {
                                return Err(Error::Syntax {
                                    pos: *p,
                                    msg: "expected a non-zero denominator".into(),
                                })
                            }
                            None => {
                                return Err(Error::Syntax {
                                    pos: text.len(),
                                    msg: "expected a denominator".into(),
                                })
                            }
                        }
                    }
                    coeff *= value;
                }
                Token::Ident(name) => {
                    let var = variable_index(name, *pos, n_vars)?;
                    i += 1;
                    let mut exp: u32 = 1;
                    if i < end && tokens[i].1 == Token::Caret {
                        i += 1;
                        match tokens.get(i) {
                            Some((_, Token::Number(e))) => {
                                exp = u32::try_from(e.clone()).map_err(|_| Error::Syntax {
                                    pos: tokens[i].0,
                                    msg: "exponent too large".into(),
                                })?;
                                i += 1;
                            }
                            other => {
                                let p = other.map(|(p, _)| *p).unwrap_or(text.len());
                                return Err(Error::Syntax {
                                    pos: p,
                                    msg: "expected an integer exponent after `^`".into(),
                                });
                            }
                        }
                    }
                    exps[var] += exp;
                }
                _ => {
                    return Err(Error::Syntax {
                        pos: *pos,
                        msg: "expected a coefficient or variable".into(),
                    })
                }
            }
            want_factor = i < end && tokens[i].1 == Token::Star;
            if want_factor {
                i += 1;
            }
        }
        terms.push((Exponents(exps), coeff));
    }
    Form::new(n_vars, terms)
}

fn variable_name(index: usize, n_vars: usize) -> String {
    if n_vars <= 3 {
        ["x", "y", "z"][index].to_string()
    } else {
        format!("x{}", index + 1)
    }
}

pub(crate) fn format_form(form: &Form, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if form.is_zero() {
        return write!(f, "0");
    }
    let n = form.n_vars();
    // Descending graded-lex: highest powers of the earliest variables first.
    let mut terms: Vec<(&Exponents, &Rat)> = form.terms().collect();
    terms.sort_by(|(a, _), (b, _)| b.cmp(a));
    for (k, (exp, coeff)) in terms.iter().enumerate() {
        let neg = coeff.is_negative();
        let mag = if neg { -(*coeff).clone() } else { (*coeff).clone() };
        if k == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let mut factors: Vec<String> = Vec::new();
        let is_constant = exp.degree() == 0;
        if !mag.is_one() || is_constant {
            if mag.denom().is_one() {
                factors.push(mag.numer().to_string());
            } else {
                factors.push(format!("{}/{}", mag.numer(), mag.denom()));
            }
        }
        for (i, &e) in exp.0.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(variable_name(i, n)),
                _ => factors.push(format!("{}^{}", variable_name(i, n), e)),
            }
        }
        write!(f, "{}", factors.join("*"))?;
    }
    Ok(())
}
