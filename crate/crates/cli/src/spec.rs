//! Number specifications accepted on the command line.
//!
//! ```text
//! rat:P/Q                 exact rational (P or P/Q)
//! sqrt:D                  positive square root of D
//! cbrt:M                  real cube root of M
//! root:c_d,...,c_0:lo:hi  root of the polynomial in (lo, hi); lo, hi as a/b or integers
//! ```

use std::fmt;
use std::str::FromStr;

use cfladder_core::{AlgebraicNumber, BigInt, BigRational};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Form {
    Rational(BigRational),
    Sqrt(BigInt),
    Cbrt(BigInt),
    Root {
        coeffs: Vec<BigInt>,
        lo: BigRational,
        hi: BigRational,
    },
}

/// A parsed number specification and the number it denotes.
#[derive(Clone, Debug)]
pub struct NumberSpec {
    raw: String,
    form: Form,
    value: AlgebraicNumber,
}

impl NumberSpec {
    pub fn raw(&self) -> &str {
        &self.raw
    }

    pub fn value(&self) -> &AlgebraicNumber {
        &self.value
    }

    pub fn into_value(self) -> AlgebraicNumber {
        self.value
    }

    /// Canonical spelling; parsing it yields an equal spec.
    pub fn canonical(&self) -> String {
        self.form.to_string()
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Form::Rational(r) => write!(f, "rat:{}/{}", r.numer(), r.denom()),
            Form::Sqrt(d) => write!(f, "sqrt:{d}"),
            Form::Cbrt(m) => write!(f, "cbrt:{m}"),
            Form::Root { coeffs, lo, hi } => {
                let list: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
                write!(f, "root:{}:{lo}:{hi}", list.join(","))
            }
        }
    }
}

fn parse_int(text: &str, what: &str) -> Result<BigInt, CliError> {
    BigInt::from_str(text.trim())
        .map_err(|_| CliError::Parse(format!("invalid integer {text:?} in {what}")))
}

fn parse_rational(text: &str, what: &str) -> Result<BigRational, CliError> {
    match text.split_once('/') {
        Some((num, den)) => {
            let num = parse_int(num, what)?;
            let den = parse_int(den, what)?;
            match AlgebraicNumber::rational(num, den)? {
                AlgebraicNumber::Rational(r) => Ok(r),
                AlgebraicNumber::Root(_) => unreachable!("rational constructor"),
            }
        }
        None => Ok(BigRational::from_integer(parse_int(text, what)?)),
    }
}

fn parse_form(text: &str) -> Result<Form, CliError> {
    let (kind, body) = text
        .split_once(':')
        .ok_or_else(|| CliError::Parse(format!("missing ':' in number spec {text:?}")))?;
    match kind {
        "rat" => Ok(Form::Rational(parse_rational(body, text)?)),
        "sqrt" => Ok(Form::Sqrt(parse_int(body, text)?)),
        "cbrt" => Ok(Form::Cbrt(parse_int(body, text)?)),
        "root" => {
            let parts: Vec<&str> = body.split(':').collect();
            let [list, lo, hi] = parts.as_slice() else {
                return Err(CliError::Parse(format!(
                    "expected root:COEFFS:LO:HI, got {text:?}"
                )));
            };
            let coeffs = list
                .split(',')
                .map(|c| parse_int(c, text))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Form::Root {
                coeffs,
                lo: parse_rational(lo, text)?,
                hi: parse_rational(hi, text)?,
            })
        }
        other => Err(CliError::Parse(format!("unknown number kind {other:?} in {text:?}"))),
    }
}

/// Parses `text`; grammar problems are parse errors, impossible numbers are
/// domain errors.
pub fn parse_number_spec(text: &str) -> Result<NumberSpec, CliError> {
    let form = parse_form(text)?;
    let value = match &form {
        Form::Rational(r) => AlgebraicNumber::Rational(r.clone()),
        Form::Sqrt(d) => AlgebraicNumber::nth_root(d, 2)?,
        Form::Cbrt(m) => {
            // the real cube root of a negative number is minus that of its negation
            if m < &BigInt::from(0) {
                let pos = AlgebraicNumber::nth_root(&-m.clone(), 3)?;
                match pos {
                    AlgebraicNumber::Rational(r) => AlgebraicNumber::Rational(-r),
                    AlgebraicNumber::Root(root) => {
                        let i = root.interval();
                        let coeffs = vec![1.into(), 0.into(), 0.into(), -m.clone()];
                        AlgebraicNumber::root(coeffs, -i.hi().clone(), -i.lo().clone())?
                    }
                }
            } else {
                AlgebraicNumber::nth_root(m, 3)?
            }
        }
        Form::Root { coeffs, lo, hi } => {
            AlgebraicNumber::root(coeffs.clone(), lo.clone(), hi.clone())?
        }
    };
    Ok(NumberSpec {
        raw: text.to_string(),
        form,
        value,
    })
}

impl FromStr for NumberSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_number_spec(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn grammar_examples() {
        let c = parse_number_spec("cbrt:2").unwrap();
        let root = c.value().as_root().unwrap();
        assert_eq!(root.poly().to_string(), "x^3 - 2");
        assert_eq!((root.interval().lo(), root.interval().hi()), (&q(1, 1), &q(2, 1)));

        let r = parse_number_spec("root:1,0,-2:1:2").unwrap();
        assert_eq!(r.value().as_root().unwrap().poly().to_string(), "x^2 - 2");

        assert_eq!(
            parse_number_spec("cbrt:27").unwrap().value(),
            &AlgebraicNumber::integer(3)
        );
        assert!(matches!(parse_number_spec("sqrt:-1"), Err(CliError::Domain(_))));
    }

    #[test]
    fn rationals() {
        let r = parse_number_spec("rat:710/226").unwrap();
        assert_eq!(r.value(), &AlgebraicNumber::Rational(q(355, 113)));
        assert_eq!(r.canonical(), "rat:355/113");
        assert_eq!(parse_number_spec("rat:7").unwrap().canonical(), "rat:7/1");
        assert!(matches!(parse_number_spec("rat:3/0"), Err(CliError::Domain(_))));
    }

    #[test]
    fn malformed_specs_are_parse_errors() {
        for bad in ["", "cbrt", "cbrt:x", "pi:3", "root:1,0,-2:1", "root:1,a:1:2", "rat:1/2/3"] {
            assert!(
                matches!(parse_number_spec(bad), Err(CliError::Parse(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn invalid_roots_are_domain_errors() {
        for bad in ["root:1,0,-2:-2:2", "root:1,0,-4,0,4:1:2", "root:5:1:2", "root:1,0,-2:2:1"] {
            assert!(
                matches!(parse_number_spec(bad), Err(CliError::Domain(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn fractional_endpoints_and_negative_cube_root() {
        let r = parse_number_spec("root:1,-1,-1:3/2:5/3").unwrap();
        assert_eq!(r.canonical(), "root:1,-1,-1:3/2:5/3");
        let neg = parse_number_spec("cbrt:-2").unwrap();
        assert_eq!(neg.value().floor(), BigInt::from(-2));
    }

    #[test]
    fn canonical_round_trip() {
        for text in ["cbrt:2", "sqrt:3", "rat:6/4", "root:2,0,-4:1:2", "root:1,-1,-1:1:2"] {
            let a = parse_number_spec(text).unwrap();
            let b = parse_number_spec(&a.canonical()).unwrap();
            assert_eq!(a.canonical(), b.canonical());
            assert!(a.value().same_value(b.value()));
        }
    }
}
