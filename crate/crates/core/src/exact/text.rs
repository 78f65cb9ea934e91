//! Textual scalar format shared by the CLI, JSON output and the C ABI.
//!
//! Rationals are written `a/b` or `a`. Complex values are `a/b+c/di`,
//! `a/b-c/di`, `a/b` (imaginary part zero) or `c/di` (real part zero).
//! [`ComplexQ`]'s `Display` emits exactly this grammar, so printing and
//! parsing round-trip bit-exactly. The parser also accepts a bare `i`
//! (`1+i`, `-i`) for convenience.

use std::str::FromStr;

use num_bigint::BigInt;

use super::{ComplexQ, Poly, Rational};
use crate::error::{Error, Result};

fn parse_err(s: &str, why: &str) -> Error {
    Error::Parse(format!("{why}: {s:?}"))
}

fn parse_int(s: &str, whole: &str) -> Result<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(whole, "expected an integer"));
    }
    BigInt::from_str(s).map_err(|_| parse_err(whole, "expected an integer"))
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once('/') {
            None => Ok(Rational::integer(parse_int(s, s)?)),
            Some((n, d)) => {
                let n = parse_int(n, s)?;
                let d = parse_int(d, s)?;
                if d.sign() == num_bigint::Sign::Minus {
                    return Err(parse_err(s, "denominator must be positive"));
                }
                Rational::ratio(n, d).map_err(|_| parse_err(s, "zero denominator"))
            }
        }
    }
}

fn parse_imag(s: &str, whole: &str) -> Result<Rational> {
    match s {
        "" | "+" => Ok(Rational::one()),
        "-" => Ok(-Rational::one()),
        _ => s.parse::<Rational>().map_err(|_| parse_err(whole, "bad imaginary part")),
    }
}

impl FromStr for ComplexQ {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(parse_err(s, "empty scalar"));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(ComplexQ::real(s.parse()?));
        };
        // Split at the last sign that is not the leading one.
        let split = body.char_indices().skip(1).filter(|&(_, ch)| ch == '+' || ch == '-').map(|(j, _)| j).last();
        match split {
            None => Ok(ComplexQ::new(Rational::zero(), parse_imag(body, s)?)),
            Some(j) => {
                let re = body[..j].parse::<Rational>().map_err(|_| parse_err(s, "bad real part"))?;
                let im = parse_imag(&body[j..], s)?;
                Ok(ComplexQ::new(re, im))
            }
        }
    }
}

/// Parses a comma-separated ascending coefficient list such as `"0,1"` or `"1,-1/2i"`.
pub fn parse_poly(s: &str) -> Result<Poly> {
    let s = s.trim();
    if s.is_empty() {
        return Err(parse_err(s, "empty coefficient list"));
    }
    let coeffs = s.split(',').map(str::parse::<ComplexQ>).collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(coeffs))
}

/// Parses `root^mult;root^mult;...`; a missing `^mult` means multiplicity 1.
pub fn parse_roots(s: &str) -> Result<Vec<(ComplexQ, usize)>> {
    s.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|part| {
            let (root, mult) = match part.rsplit_once('^') {
                Some((r, m)) => {
                    let m = m.trim().parse::<usize>().map_err(|_| parse_err(part, "bad multiplicity"))?;
                    if m == 0 {
                        return Err(parse_err(part, "multiplicity must be positive"));
                    }
                    (r, m)
                }
                None => (part, 1),
            };
            Ok((root.parse::<ComplexQ>()?, mult))
        })
        .collect()
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl serde::Serialize for ComplexQ {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
