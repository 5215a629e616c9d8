//! Built-in surfaces, so scenarios never depend on user files.

use crate::algebra::{parse_form, AlgebraError, Form};

/// 2-adic precision used for the built-in Manin cubic.
pub const MANIN_PRECISION: u32 = 64;

/// Integer cubic with an Eckardt point of one-point reduction, for
/// coefficients (b₀, b₁, b₂) of the binary quadratic in T₂, T₃.
pub fn eq2_text(b: [i64; 3]) -> String {
    format!(
        "domain int\ndegree 3\n\
         2 1 0 0 1\n1 2 0 0 1\n1 0 2 0 {}\n1 0 1 1 {}\n1 0 0 2 {}\n\
         0 3 0 0 1\n0 1 2 0 1\n0 1 1 1 1\n0 1 0 2 1\n0 0 3 0 1\n0 0 2 1 1\n0 0 0 3 1\n",
        2 * b[0],
        2 * b[1],
        2 * b[2]
    )
}

/// Reduction of the transformed cubic: four points, no lines.
pub const V1: &str = "domain gf 2 1\ndegree 3\n\
    2 1 0 0 [1]\n1 0 2 0 [1]\n1 0 1 1 [1]\n1 0 0 2 [1]\n0 0 3 0 [1]\n0 0 2 1 [1]\n0 0 0 3 [1]\n";

/// X²T + X(Y² + YZ + Z²) + Y³ + Y²Z + Z³ over GF(2).
pub const W: &str = "domain gf 2 1\ndegree 3\n\
    2 0 0 1 [1]\n1 2 0 0 [1]\n1 1 1 0 [1]\n1 0 2 0 [1]\n0 3 0 0 [1]\n0 2 1 0 [1]\n0 0 3 0 [1]\n";

pub const FERMAT_INT: &str = "domain int\ndegree 3\n3 0 0 0 1\n0 3 0 0 1\n0 0 3 0 1\n0 0 0 3 1\n";

pub const FERMAT_GF2: &str = "domain gf 2 1\ndegree 3\n3 0 0 0 [1]\n0 3 0 0 [1]\n0 0 3 0 [1]\n0 0 0 3 [1]\n";

/// X³ + Y³ + Z³ + θT³ over GF(4).
pub const MANIN_GF4: &str = "domain gf 2 2\ndegree 3\n3 0 0 0 [1]\n0 3 0 0 [1]\n0 0 3 0 [1]\n0 0 0 3 [0,1]\n";

/// The same cubic over Z₂[θ].
pub const MANIN_PADIC: &str = "domain padic 64\ndegree 3\n3 0 0 0 1\n0 3 0 0 1\n0 0 3 0 1\n0 0 0 3 [0,1]\n";

pub const NAMES: [&str; 7] = ["eq2", "v1", "w", "fermat", "fermat-gf2", "manin", "manin-padic"];

pub fn builtin_text(name: &str) -> Option<String> {
    Some(match name {
        "eq2" => eq2_text([1, 1, 1]),
        "v1" => V1.into(),
        "w" => W.into(),
        "fermat" => FERMAT_INT.into(),
        "fermat-gf2" => FERMAT_GF2.into(),
        "manin" => MANIN_GF4.into(),
        "manin-padic" => MANIN_PADIC.into(),
        _ => return None,
    })
}

pub fn builtin(name: &str) -> Option<Result<Form, AlgebraError>> {
    builtin_text(name).map(|t| parse_form(&t))
}

pub fn eq2(b: [i64; 3]) -> Form {
    parse_form(&eq2_text(b)).expect("valid built-in")
}

pub fn v1() -> Form {
    parse_form(V1).expect("valid built-in")
}

pub fn w() -> Form {
    parse_form(W).expect("valid built-in")
}

pub fn fermat_int() -> Form {
    parse_form(FERMAT_INT).expect("valid built-in")
}

pub fn fermat_gf2() -> Form {
    parse_form(FERMAT_GF2).expect("valid built-in")
}

pub fn manin_gf4() -> Form {
    parse_form(MANIN_GF4).expect("valid built-in")
}

pub fn manin_padic() -> Form {
    parse_form(MANIN_PADIC).expect("valid built-in")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::emit_form;

    #[test]
    fn all_builtins_parse_and_round_trip() {
        for name in NAMES {
            let f = builtin(name).unwrap().unwrap();
            assert_eq!(parse_form(&emit_form(&f)).unwrap(), f, "{name}");
        }
        assert!(builtin("nope").is_none());
    }

    #[test]
    fn eq2_has_doubled_quadratic() {
        let f = eq2([1, 1, 1]);
        assert_eq!(f.len(), 12);
        assert_eq!(f.coefficient(&[1, 0, 1, 1]), crate::algebra::Scalar::Int(2.into()));
    }
}
