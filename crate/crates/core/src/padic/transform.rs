use std::fmt;

use num_bigint::BigInt;

use crate::algebra::{make_field, Domain, Form, Scalar};
use crate::geometry::Surface;

use super::cubic::PadicPoint;
use super::PadicError;

/// Substitutes (T₀, T₁, T₂, T₃) → (T₀, 8T₁, 2T₂, 2T₃) and divides the
/// result by 8, which must be exact.
pub fn phi1_transform(f: &Form) -> Result<Form, PadicError> {
    if *f.domain() != Domain::Int || f.degree() != 3 {
        return Err(PadicError::UnsupportedForm);
    }
    let d = [1, 8, 2, 2];
    let m: [[Scalar; 4]; 4] =
        std::array::from_fn(|i| std::array::from_fn(|j| Scalar::Int(BigInt::from(if i == j { d[i] } else { 0 }))));
    Ok(f.substitute_linear(&m)?.divide_exact(&BigInt::from(8))?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassTag {
    X0,
    X1,
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassTag::X0 => "X0",
            ClassTag::X1 => "X1",
        })
    }
}

/// Class of a point of the transformed surface from its reduction: X0 when
/// ∂F₁/∂T₀ vanishes there (on the reduction this is the binary quadratic in
/// T₂, T₃), X1 otherwise.
pub fn classify_a(f1: &Form, p: &PadicPoint) -> Result<ClassTag, PadicError> {
    if !p.is_base() {
        return Err(PadicError::NotBaseRational);
    }
    let field = make_field(2, 1)?;
    let reduced = f1.reduce(&field)?;
    let s = Surface::new(reduced.clone())?;
    let r = p.reduce();
    if !s.contains(&r) {
        return Err(PadicError::NotOnReduction(r.to_string()));
    }
    if s.is_singular_point(&r) {
        return Err(PadicError::SingularReduction(r.to_string()));
    }
    let q = reduced.partial(0).eval(&r.0.map(Scalar::Field))?;
    Ok(if q == Scalar::Field(0) { ClassTag::X0 } else { ClassTag::X1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{emit_form, parse_form};
    use crate::geometry::ProjPoint;
    use crate::padic::{hensel_lift_point, PadicCubic};

    fn eq2(b: [i64; 3]) -> Form {
        let text = format!(
            "domain int\ndegree 3\n2 1 0 0 1\n1 2 0 0 1\n0 0 3 0 1\n0 0 2 1 1\n0 0 0 3 1\n0 3 0 0 1\n\
             0 1 1 1 1\n0 1 2 0 1\n0 1 0 2 1\n1 0 2 0 {}\n1 0 1 1 {}\n1 0 0 2 {}\n",
            2 * b[0],
            2 * b[1],
            2 * b[2]
        );
        parse_form(&text).unwrap()
    }

    const V1: &str = "domain gf 2 1\ndegree 3\n2 1 0 0 [1]\n1 0 2 0 [1]\n1 0 1 1 [1]\n1 0 0 2 [1]\n\
                      0 0 3 0 [1]\n0 0 2 1 [1]\n0 0 0 3 [1]\n";

    #[test]
    fn phi1_reduces_to_v1() {
        let field = make_field(2, 1).unwrap();
        for b in [[1, 1, 1], [3, 1, 1], [-1, 5, 7]] {
            let f1 = phi1_transform(&eq2(b)).unwrap();
            assert_eq!(emit_form(&f1.reduce(&field).unwrap()), emit_form(&parse_form(V1).unwrap()));
            assert_eq!(f1.coefficient(&[2, 1, 0, 0]), Scalar::Int(BigInt::from(1)));
        }
    }

    #[test]
    fn phi1_rejects_wrong_shape() {
        let f = parse_form("domain int\ndegree 3\n3 0 0 0 1\n0 0 3 0 1\n").unwrap();
        assert!(phi1_transform(&f).is_err());
    }

    #[test]
    fn classes_of_lifted_points() {
        let f1 = phi1_transform(&eq2([1, 1, 1])).unwrap();
        let c = PadicCubic::new(&f1, 64).unwrap();
        let lift = |p: [u32; 4]| hensel_lift_point(&c, &ProjPoint(p), None).unwrap().point;
        assert_eq!(classify_a(&f1, &lift([1, 0, 0, 0])).unwrap(), ClassTag::X0);
        for p in [[1, 0, 0, 1], [1, 0, 1, 0], [1, 0, 1, 1]] {
            assert_eq!(classify_a(&f1, &lift(p)).unwrap(), ClassTag::X1);
        }
        let off = PadicPoint::lift(&ProjPoint([1, 1, 1, 1]), 64);
        assert!(matches!(classify_a(&f1, &off), Err(PadicError::NotOnReduction(_))));
    }
}
