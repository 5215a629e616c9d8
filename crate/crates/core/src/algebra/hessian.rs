//! The normalized Hessian H* = ¼·det(∂²f/∂xᵢ∂xⱼ) of a cubic form.

use num_bigint::BigInt;

use super::form::{Domain, Form, Scalar};
use super::AlgebraError;

/// Matrix of second partials; entries are linear forms for a cubic.
pub fn hessian_matrix(f: &Form) -> [[Form; 4]; 4] {
    let grad = f.gradient();
    std::array::from_fn(|i| std::array::from_fn(|j| grad[i].partial(j)))
}

/// Determinant by the Leibniz permutation sum.
pub fn determinant(m: &[[Form; 4]; 4]) -> Result<Form, AlgebraError> {
    let domain = m[0][0].domain().clone();
    let degree: u32 = (0..4).map(|i| m[i][i].degree()).sum();
    let mut det = Form::zero(domain, degree);
    for (perm, sign) in permutations4() {
        let mut term = m[0][perm[0]].clone();
        for (row, &col) in perm.iter().enumerate().skip(1) {
            term = term.mul(&m[row][col])?;
            if term.is_zero() {
                break;
            }
        }
        if term.is_zero() {
            continue;
        }
        det = if sign > 0 { det.add(&term)? } else { det.sub(&term)? };
    }
    Ok(det)
}

fn permutations4() -> Vec<([usize; 4], i32)> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    if p.iter().any(|&x| std::mem::replace(&mut seen[x], true)) {
                        continue;
                    }
                    let mut inversions = 0;
                    for i in 0..4 {
                        for j in i + 1..4 {
                            if p[i] > p[j] {
                                inversions += 1;
                            }
                        }
                    }
                    out.push((p, if inversions % 2 == 0 { 1 } else { -1 }));
                }
            }
        }
    }
    out
}

/// H* of an integer (exact) or 2-adic (two bits of precision lost) cubic.
///
/// Division by 4 is always exact for integral cubics; a failure here means
/// the determinant was computed wrongly.
pub fn hessian_star(f: &Form) -> Result<Form, AlgebraError> {
    if f.degree() != 3 {
        return Err(AlgebraError::NotCubic(f.degree()));
    }
    let det = determinant(&hessian_matrix(f))?;
    match f.domain() {
        Domain::Int => det.divide_exact(&BigInt::from(4)),
        Domain::Padic(n) => {
            let out_domain = Domain::Padic(n.saturating_sub(2));
            let mut out = Form::zero(out_domain, det.degree());
            for (m, c) in det.terms() {
                let Scalar::Padic(x) = c else { unreachable!() };
                let q =
                    x.shr_exact(2).map_err(|_| AlgebraError::InexactDivision { monomial: *m, divisor: "4".into() })?;
                out.add_term(*m, Scalar::Padic(q.with_precision(n.saturating_sub(2))))?;
            }
            Ok(out)
        }
        Domain::Field(_) => Err(AlgebraError::DomainMismatch),
    }
}

/// Whether H* reduces to the zero form modulo 2.
///
/// Prime-field and GF(4) forms are first lifted canonically (coefficients
/// 0/1, θ ↦ θ).
pub fn hessian_vanishes_mod2(f: &Form) -> Result<bool, AlgebraError> {
    let lifted = match f.domain() {
        Domain::Int | Domain::Padic(_) => f.clone(),
        Domain::Field(field) if field.characteristic() == 2 && field.degree() <= 2 => f.to_padic(64)?,
        Domain::Field(_) => return Err(AlgebraError::DomainMismatch),
    };
    let h = hessian_star(&lifted)?;
    let gf = super::make_field(2, if matches!(lifted.domain(), Domain::Int) { 1 } else { 2 })?;
    Ok(h.reduce(&gf)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Laplace expansion along the first row; independent of the Leibniz sum.
    fn cofactor_det(m: &[Vec<Form>]) -> Form {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc: Option<Form> = None;
        for col in 0..n {
            let minor: Vec<Vec<Form>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = m[0][col].mul(&cofactor_det(&minor)).unwrap();
            let term = if col % 2 == 1 { term.neg() } else { term };
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term).unwrap(),
            });
        }
        acc.unwrap()
    }

    #[test]
    fn diagonal_cubic() {
        for c in [1i64, 2, -3, 7] {
            let f = Form::from_int_terms(
                Domain::Int,
                3,
                &[([3, 0, 0, 0], 1), ([0, 3, 0, 0], 1), ([0, 0, 3, 0], 1), ([0, 0, 0, 3], c)],
            )
            .unwrap();
            let m = hessian_matrix(&f);
            let rows: Vec<Vec<Form>> = m.iter().map(|r| r.to_vec()).collect();
            let det = determinant(&m).unwrap();
            assert_eq!(det, cofactor_det(&rows));
            assert_eq!(det, Form::from_int_terms(Domain::Int, 4, &[([1, 1, 1, 1], 1296 * c)]).unwrap());
            let h = hessian_star(&f).unwrap();
            assert_eq!(h, Form::from_int_terms(Domain::Int, 4, &[([1, 1, 1, 1], 324 * c)]).unwrap());
            assert!(h.reduce(&crate::algebra::make_field(2, 1).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn leibniz_matches_cofactor_on_dense_cubic() {
        let terms: Vec<_> =
            crate::algebra::monomials(3).into_iter().enumerate().map(|(i, m)| (m, (i as i64 * 7) % 11 - 5)).collect();
        let f = Form::from_int_terms(Domain::Int, 3, &terms).unwrap();
        let m = hessian_matrix(&f);
        let rows: Vec<Vec<Form>> = m.iter().map(|r| r.to_vec()).collect();
        assert_eq!(determinant(&m).unwrap(), cofactor_det(&rows));
        assert_eq!(hessian_star(&f).unwrap().degree(), 4);
    }

    #[test]
    fn rejects_non_cubic() {
        let q = Form::from_int_terms(Domain::Int, 2, &[([2, 0, 0, 0], 1)]).unwrap();
        assert!(matches!(hessian_star(&q), Err(AlgebraError::NotCubic(2))));
    }
}
