//! Surface file format.
//!
//! ```text
//! domain gf 2 1
//! degree 3
//! 2 1 0 0 [1]      # one term per line: e0 e1 e2 e3 coefficient
//! ```
//!
//! Coefficients are decimal integers (`int`), coefficient vectors such as
//! `[1,1]` (`gf p m`, lowest degree first), or residues (`padic N`), where an
//! element a + bθ of the quadratic extension is written `[a,b]`.

use std::fmt::Write as _;

use num_bigint::BigInt;

use super::field::make_field;
use super::form::{format_scalar, Domain, Form, Monomial, Scalar};
use super::AlgebraError;
use crate::padic::{PadicScalar, QuadExtScalar, MAX_PRECISION};

fn parse_err(line: usize, msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse { line, message: msg.into() }
}

fn parse_domain(words: &[&str], line: usize) -> Result<Domain, AlgebraError> {
    match words {
        ["int"] => Ok(Domain::Int),
        ["gf", p, m] => {
            let p: u32 = p.parse().map_err(|_| parse_err(line, "bad characteristic"))?;
            let m: u32 = m.parse().map_err(|_| parse_err(line, "bad degree"))?;
            Ok(Domain::Field(make_field(p, m)?))
        }
        ["padic", n] => {
            let n: u32 = n.parse().map_err(|_| parse_err(line, "bad precision"))?;
            if n == 0 || n > MAX_PRECISION {
                return Err(parse_err(line, format!("precision must be in 1..={MAX_PRECISION}")));
            }
            Ok(Domain::Padic(n))
        }
        _ => Err(AlgebraError::UnknownDomain(words.join(" "))),
    }
}

fn parse_i128_residue(s: &str, precision: u32) -> Option<PadicScalar> {
    let v: i128 = s.trim().parse().ok()?;
    Some(PadicScalar::new(v as u64, precision))
}

fn parse_coeff(domain: &Domain, s: &str) -> Result<Scalar, AlgebraError> {
    let bad = || AlgebraError::MalformedCoefficient(s.to_string());
    match domain {
        Domain::Int => s.parse::<BigInt>().map(Scalar::Int).map_err(|_| bad()),
        Domain::Field(f) => {
            let inner = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
            let coeffs: Vec<u32> =
                inner.split(',').map(|c| c.trim().parse::<u32>()).collect::<Result<_, _>>().map_err(|_| bad())?;
            f.from_coefficients(&coeffs).map(Scalar::Field).map_err(|_| bad())
        }
        Domain::Padic(n) => {
            if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
                let parts: Vec<&str> = inner.split(',').collect();
                if parts.len() != 2 {
                    return Err(bad());
                }
                let a = parse_i128_residue(parts[0], *n).ok_or_else(bad)?;
                let b = parse_i128_residue(parts[1], *n).ok_or_else(bad)?;
                Ok(Scalar::Padic(QuadExtScalar::new(a, b)))
            } else {
                let a = parse_i128_residue(s, *n).ok_or_else(bad)?;
                Ok(Scalar::Padic(QuadExtScalar::base(a)))
            }
        }
    }
}

/// Parses a surface file. Terms may appear in any order; repeated exponent
/// tuples are rejected.
pub fn parse_form(text: &str) -> Result<Form, AlgebraError> {
    let mut domain: Option<Domain> = None;
    let mut degree: Option<u32> = None;
    let mut form: Option<Form> = None;
    let mut seen = std::collections::BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        if domain.is_none() {
            if words[0] != "domain" {
                return Err(parse_err(line_no, "expected `domain` header"));
            }
            domain = Some(parse_domain(&words[1..], line_no)?);
            continue;
        }
        if degree.is_none() {
            if words.len() != 2 || words[0] != "degree" {
                return Err(parse_err(line_no, "expected `degree <d>` header"));
            }
            let d: u32 = words[1].parse().map_err(|_| parse_err(line_no, "bad degree"))?;
            degree = Some(d);
            form = Some(Form::zero(domain.clone().unwrap(), d));
            continue;
        }
        if words.len() < 5 {
            return Err(parse_err(line_no, "expected `e0 e1 e2 e3 coeff`"));
        }
        let mut mono: Monomial = [0; 4];
        for (i, w) in words[..4].iter().enumerate() {
            mono[i] = w.parse().map_err(|_| parse_err(line_no, "bad exponent"))?;
        }
        let coeff_text = words[4..].join("");
        let f = form.as_mut().unwrap();
        let c = parse_coeff(f.domain(), &coeff_text)?;
        if !seen.insert(mono) {
            return Err(parse_err(line_no, "duplicate exponent tuple"));
        }
        f.add_term(mono, c)?;
    }
    let form = form.ok_or_else(|| parse_err(0, "missing header"))?;
    if form.is_zero() {
        return Err(AlgebraError::ZeroForm);
    }
    Ok(form)
}

/// Emits a form in canonical (ascending lexicographic) term order.
pub fn emit_form(f: &Form) -> String {
    let mut out = String::new();
    let header = match f.domain() {
        Domain::Int => "int".to_string(),
        Domain::Field(g) => format!("gf {} {}", g.characteristic(), g.degree()),
        Domain::Padic(n) => format!("padic {n}"),
    };
    writeln!(out, "domain {header}").unwrap();
    writeln!(out, "degree {}", f.degree()).unwrap();
    for (m, c) in f.terms() {
        writeln!(out, "{} {} {} {} {}", m[0], m[1], m[2], m[3], format_scalar(f.domain(), c)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const V1: &str = "\
domain gf 2 1
degree 3
# tilde V_1
2 1 0 0 [1]
1 0 2 0 [1]
1 0 1 1 [1]
1 0 0 2 [1]
0 0 3 0 [1]
0 0 2 1 [1]
0 0 0 3 [1]
";

    #[test]
    fn parses_and_round_trips() {
        let f = parse_form(V1).unwrap();
        assert_eq!(f.degree(), 3);
        assert_eq!(f.len(), 7);
        let emitted = emit_form(&f);
        assert_eq!(parse_form(&emitted).unwrap(), f);
        assert_eq!(emit_form(&parse_form(&emitted).unwrap()), emitted);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_form("domain int\ndegree 3\n"), Err(AlgebraError::ZeroForm)));
        assert!(matches!(parse_form("domain int\ndegree 3\n1 1 0 0 5\n"), Err(AlgebraError::ExponentSum { .. })));
        assert!(matches!(parse_form("domain reals\ndegree 3\n"), Err(AlgebraError::UnknownDomain(_))));
        assert!(matches!(
            parse_form("domain gf 2 2\ndegree 3\n3 0 0 0 [1,2]\n"),
            Err(AlgebraError::MalformedCoefficient(_))
        ));
        assert!(matches!(parse_form("domain int\ndegree 3\n3 0 0 0 x\n"), Err(AlgebraError::MalformedCoefficient(_))));
        assert!(parse_form("domain int\ndegree 3\n3 0 0 0 1\n3 0 0 0 2\n").is_err());
    }

    #[test]
    fn padic_coefficients() {
        let f = parse_form("domain padic 64\ndegree 3\n0 0 0 3 [0,1]\n3 0 0 0 -1\n").unwrap();
        let e = emit_form(&f);
        assert!(e.contains("0 0 0 3 [0,1]"));
        assert!(e.contains("3 0 0 0 18446744073709551615"));
        assert_eq!(parse_form(&e).unwrap(), f);
    }
}
