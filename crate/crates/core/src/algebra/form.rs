use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{Embedding, FieldSpec};
use super::AlgebraError;
use crate::padic::{PadicScalar, QuadExtScalar};

/// Exponent tuple (e₀, e₁, e₂, e₃).
pub type Monomial = [u8; 4];

/// Coefficient domain of a [`Form`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    /// Arbitrary-precision integers.
    Int,
    /// A finite field; scalars are element encodings.
    Field(FieldSpec),
    /// Z₂[θ] truncated at the given absolute precision.
    Padic(u32),
}

/// A coefficient or evaluation point component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Int(BigInt),
    Field(u32),
    Padic(QuadExtScalar),
}

impl Domain {
    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Domain::Int => Scalar::Int(BigInt::from(v)),
            Domain::Field(f) => Scalar::Field(f.from_int(v)),
            Domain::Padic(n) => Scalar::Padic(QuadExtScalar::from_i64(v, *n)),
        }
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Int(v) => v.is_zero(),
            Scalar::Field(v) => *v == 0,
            Scalar::Padic(v) => v.is_zero(),
        }
    }

    /// Verifies that `s` belongs to this domain.
    pub fn check(&self, s: &Scalar) -> Result<(), AlgebraError> {
        match (self, s) {
            (Domain::Int, Scalar::Int(_)) => Ok(()),
            (Domain::Field(f), Scalar::Field(v)) if *v < f.order() => Ok(()),
            (Domain::Padic(_), Scalar::Padic(_)) => Ok(()),
            _ => Err(AlgebraError::DomainMismatch),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (_, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x + y),
            (Domain::Field(f), Scalar::Field(x), Scalar::Field(y)) => Scalar::Field(f.add(*x, *y)),
            (_, Scalar::Padic(x), Scalar::Padic(y)) => Scalar::Padic(x.add(*y)),
            _ => panic!("scalar domain mismatch"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (_, Scalar::Int(x)) => Scalar::Int(-x),
            (Domain::Field(f), Scalar::Field(x)) => Scalar::Field(f.neg(*x)),
            (_, Scalar::Padic(x)) => Scalar::Padic(x.neg()),
            _ => panic!("scalar domain mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (_, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x * y),
            (Domain::Field(f), Scalar::Field(x), Scalar::Field(y)) => Scalar::Field(f.mul(*x, *y)),
            (_, Scalar::Padic(x), Scalar::Padic(y)) => Scalar::Padic(x.mul(*y)),
            _ => panic!("scalar domain mismatch"),
        }
    }

    /// Multiplies by a small non-negative integer.
    pub fn mul_small(&self, a: &Scalar, k: u32) -> Scalar {
        self.mul(a, &self.from_i64(k as i64))
    }
}

/// A homogeneous form in four variables, stored sparsely in lexicographic
/// order of exponent tuples. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    domain: Domain,
    degree: u32,
    terms: BTreeMap<Monomial, Scalar>,
}

/// All exponent tuples of total degree `d`, in ascending lexicographic order.
pub fn monomials(d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for e0 in 0..=d {
        for e1 in 0..=d - e0 {
            for e2 in 0..=d - e0 - e1 {
                let e3 = d - e0 - e1 - e2;
                out.push([e0 as u8, e1 as u8, e2 as u8, e3 as u8]);
            }
        }
    }
    out
}

fn mono_degree(m: &Monomial) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

impl Form {
    pub fn zero(domain: Domain, degree: u32) -> Self {
        Self { domain, degree, terms: BTreeMap::new() }
    }

    pub fn from_terms<I>(domain: Domain, degree: u32, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut f = Self::zero(domain, degree);
        for (m, c) in terms {
            f.add_term(m, c)?;
        }
        Ok(f)
    }

    /// Convenience constructor from small integer coefficients.
    pub fn from_int_terms(domain: Domain, degree: u32, terms: &[(Monomial, i64)]) -> Result<Self, AlgebraError> {
        let d = domain.clone();
        Self::from_terms(domain, degree, terms.iter().map(|(m, c)| (*m, d.from_i64(*c))))
    }

    /// The linear form Σ cᵢ Xᵢ.
    pub fn linear(domain: Domain, coeffs: [Scalar; 4]) -> Result<Self, AlgebraError> {
        let terms = coeffs.into_iter().enumerate().map(|(i, c)| {
            let mut m = [0u8; 4];
            m[i] = 1;
            (m, c)
        });
        Self::from_terms(domain, 1, terms)
    }

    /// Adds `c·x^m` into the form.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) -> Result<(), AlgebraError> {
        let sum = mono_degree(&m);
        if sum != self.degree {
            return Err(AlgebraError::ExponentSum { expected: self.degree, found: sum });
        }
        self.domain.check(&c)?;
        let entry = self.terms.remove(&m);
        let value = match entry {
            Some(old) => self.domain.add(&old, &c),
            None => c,
        };
        if !self.domain.is_zero(&value) {
            self.terms.insert(m, value);
        }
        Ok(())
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.domain.zero())
    }

    fn same_domain(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.domain != other.domain {
            return Err(AlgebraError::DomainMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_domain(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.degree != other.degree {
            return Err(AlgebraError::ExponentSum { expected: self.degree, found: other.degree });
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            domain: self.domain.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (*m, self.domain.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Result<Self, AlgebraError> {
        self.domain.check(s)?;
        let mut out = Self::zero(self.domain.clone(), self.degree);
        for (m, c) in &self.terms {
            out.add_term(*m, self.domain.mul(c, s))?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_domain(other)?;
        let mut out = Self::zero(self.domain.clone(), self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3]];
                out.add_term(m, self.domain.mul(ca, cb))?;
            }
        }
        Ok(out)
    }

    fn pow(&self, e: u32) -> Result<Self, AlgebraError> {
        let mut acc = Self::from_terms(self.domain.clone(), 0, [([0; 4], self.domain.one())])?;
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Exact value at `x`.
    pub fn eval(&self, x: &[Scalar; 4]) -> Result<Scalar, AlgebraError> {
        for s in x {
            self.domain.check(s)?;
        }
        let d = &self.domain;
        let mut acc = d.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t = d.mul(&t, &x[i]);
                }
            }
            acc = d.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        assert!(i < 4, "variable index out of range");
        let mut out = Self::zero(self.domain.clone(), self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m[i];
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm[i] -= 1;
            let dc = self.domain.mul_small(c, e as u32);
            // exponent sums match by construction
            out.add_term(dm, dc).expect("derivative keeps homogeneity");
        }
        out
    }

    pub fn gradient(&self) -> [Form; 4] {
        [self.partial(0), self.partial(1), self.partial(2), self.partial(3)]
    }

    /// First polar form Σ Pᵢ ∂f/∂Xᵢ.
    pub fn polar(&self, p: &[Scalar; 4]) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(self.domain.clone(), self.degree.saturating_sub(1));
        for (i, pi) in p.iter().enumerate() {
            out = out.add(&self.partial(i).scale(pi)?)?;
        }
        Ok(out)
    }

    /// f(Mx): variable i is replaced by Σⱼ M[i][j] xⱼ.
    pub fn substitute_linear(&self, m: &[[Scalar; 4]; 4]) -> Result<Self, AlgebraError> {
        let mut lin = Vec::with_capacity(4);
        for row in m {
            lin.push(Self::linear(self.domain.clone(), row.clone())?);
        }
        let mut powers: Vec<Vec<Form>> = Vec::with_capacity(4);
        for l in &lin {
            let mut ps = Vec::with_capacity(self.degree as usize + 1);
            for e in 0..=self.degree {
                ps.push(l.pow(e)?);
            }
            powers.push(ps);
        }
        let mut out = Self::zero(self.domain.clone(), self.degree);
        for (mono, c) in &self.terms {
            let mut t = Self::from_terms(self.domain.clone(), 0, [([0; 4], c.clone())])?;
            for i in 0..4 {
                t = t.mul(&powers[i][mono[i] as usize])?;
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Divides every integer coefficient by `k`, failing unless exact.
    pub fn divide_exact(&self, k: &BigInt) -> Result<Self, AlgebraError> {
        if self.domain != Domain::Int {
            return Err(AlgebraError::DomainMismatch);
        }
        let mut out = Self::zero(Domain::Int, self.degree);
        for (m, c) in &self.terms {
            let Scalar::Int(v) = c else { unreachable!() };
            let (q, r) = v.div_rem(k);
            if !r.is_zero() {
                return Err(AlgebraError::InexactDivision { monomial: *m, divisor: k.to_string() });
            }
            out.add_term(*m, Scalar::Int(q))?;
        }
        Ok(out)
    }

    /// Reduction of an integer or 2-adic form into a finite field.
    ///
    /// Integers map through the prime subfield; 2-adic coefficients a + bθ
    /// map to a + bθ̄ with θ̄ the canonical generator of GF(4), embedded into
    /// `field` when it is larger.
    pub fn reduce(&self, field: &FieldSpec) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(Domain::Field(field.clone()), self.degree);
        match &self.domain {
            Domain::Int => {
                let p = BigInt::from(field.characteristic());
                for (m, c) in &self.terms {
                    let Scalar::Int(v) = c else { unreachable!() };
                    let r = v.mod_floor(&p).to_u32().unwrap();
                    out.add_term(*m, Scalar::Field(r))?;
                }
            }
            Domain::Padic(_) => {
                if field.characteristic() != 2 {
                    return Err(AlgebraError::DomainMismatch);
                }
                let needs_theta = self.terms.values().any(|c| matches!(c, Scalar::Padic(x) if x.reduce_mod2() > 1));
                let embed = if field.degree() == 1 {
                    if needs_theta {
                        return Err(AlgebraError::NoEmbedding { from: "GF(4)".into(), to: format!("{field:?}") });
                    }
                    None
                } else {
                    Some(Embedding::new(&super::make_field(2, 2)?, field)?)
                };
                for (m, c) in &self.terms {
                    let Scalar::Padic(x) = c else { unreachable!() };
                    let r = x.reduce_mod2();
                    let v = match &embed {
                        Some(e) => e.apply(r),
                        None => r,
                    };
                    out.add_term(*m, Scalar::Field(v))?;
                }
            }
            Domain::Field(src) => {
                let e = Embedding::new(src, field)?;
                for (m, c) in &self.terms {
                    let Scalar::Field(v) = c else { unreachable!() };
                    out.add_term(*m, Scalar::Field(e.apply(*v)))?;
                }
            }
        }
        Ok(out)
    }

    /// Integer form → 2-adic form at the given precision.
    pub fn to_padic(&self, precision: u32) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(Domain::Padic(precision), self.degree);
        match &self.domain {
            Domain::Int => {
                let modulus = BigInt::one() << 64;
                for (m, c) in &self.terms {
                    let Scalar::Int(v) = c else { unreachable!() };
                    let r = v.mod_floor(&modulus).to_u64().unwrap();
                    out.add_term(*m, Scalar::Padic(QuadExtScalar::base(PadicScalar::new(r, precision))))?;
                }
            }
            Domain::Padic(_) => {
                for (m, c) in &self.terms {
                    let Scalar::Padic(x) = c else { unreachable!() };
                    out.add_term(*m, Scalar::Padic(x.with_precision(precision)))?;
                }
            }
            Domain::Field(f) => {
                if f.characteristic() != 2 || f.degree() > 2 {
                    return Err(AlgebraError::DomainMismatch);
                }
                for (m, c) in &self.terms {
                    let Scalar::Field(v) = c else { unreachable!() };
                    out.add_term(*m, Scalar::Padic(QuadExtScalar::lift_gf4(*v, precision)))?;
                }
            }
        }
        Ok(out)
    }

    /// Lift of a prime-field form to integers with coefficients in [0, p).
    pub fn lift_to_int(&self) -> Result<Self, AlgebraError> {
        match &self.domain {
            Domain::Int => Ok(self.clone()),
            Domain::Field(f) if f.degree() == 1 => {
                let mut out = Self::zero(Domain::Int, self.degree);
                for (m, c) in &self.terms {
                    let Scalar::Field(v) = c else { unreachable!() };
                    out.add_term(*m, Scalar::Int(BigInt::from(*v)))?;
                }
                Ok(out)
            }
            _ => Err(AlgebraError::DomainMismatch),
        }
    }

    /// Field-domain coefficients as raw element encodings.
    pub fn field_terms(&self) -> Result<Vec<(Monomial, u32)>, AlgebraError> {
        self.terms
            .iter()
            .map(|(m, c)| match c {
                Scalar::Field(v) => Ok((*m, *v)),
                _ => Err(AlgebraError::DomainMismatch),
            })
            .collect()
    }

    pub fn field(&self) -> Option<&FieldSpec> {
        match &self.domain {
            Domain::Field(f) => Some(f),
            _ => None,
        }
    }
}

pub(crate) fn format_scalar(domain: &Domain, c: &Scalar) -> String {
    match (domain, c) {
        (_, Scalar::Int(v)) => v.to_string(),
        (Domain::Field(f), Scalar::Field(v)) => {
            let cs: Vec<String> = f.coefficients(*v).iter().map(|c| c.to_string()).collect();
            format!("[{}]", cs.join(","))
        }
        (_, Scalar::Padic(x)) => x.to_string(),
        _ => "?".into(),
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let unit = matches!(c, Scalar::Int(v) if v.is_one())
                || matches!(c, Scalar::Field(1))
                || matches!(c, Scalar::Padic(x) if *x == QuadExtScalar::one(x.precision()));
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("T{i}") } else { format!("T{i}^{e}") })
                .collect();
            let neg = matches!(c, Scalar::Int(v) if v.is_negative());
            if vars.is_empty() {
                write!(f, "{}", format_scalar(&self.domain, c))?;
            } else if unit {
                write!(f, "{}", vars.join("*"))?;
            } else if neg {
                write!(f, "({})*{}", format_scalar(&self.domain, c), vars.join("*"))?;
            } else {
                write!(f, "{}*{}", format_scalar(&self.domain, c), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_field;

    fn gf2() -> Domain {
        Domain::Field(make_field(2, 1).unwrap())
    }

    /// T0²T1 + T0(T2²+T2T3+T3²) + T2³ + T2²T3 + T3³
    fn v1() -> Form {
        Form::from_int_terms(
            gf2(),
            3,
            &[
                ([2, 1, 0, 0], 1),
                ([1, 0, 2, 0], 1),
                ([1, 0, 1, 1], 1),
                ([1, 0, 0, 2], 1),
                ([0, 0, 3, 0], 1),
                ([0, 0, 2, 1], 1),
                ([0, 0, 0, 3], 1),
            ],
        )
        .unwrap()
    }

    fn pt(d: &Domain, c: [i64; 4]) -> [Scalar; 4] {
        c.map(|v| d.from_i64(v))
    }

    #[test]
    fn monomial_count() {
        assert_eq!(monomials(3).len(), 20);
        assert_eq!(monomials(2).len(), 10);
        let m = monomials(3);
        assert!(m.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn evaluation_examples() {
        let f = v1();
        let d = gf2();
        assert_eq!(f.eval(&pt(&d, [1, 0, 1, 0])).unwrap(), Scalar::Field(0));
        assert_eq!(f.eval(&pt(&d, [0, 0, 1, 1])).unwrap(), Scalar::Field(1));
        assert_eq!(f.eval(&pt(&d, [0, 0, 0, 0])).unwrap(), Scalar::Field(0));
        assert!(matches!(f.eval(&pt(&Domain::Int, [1, 0, 0, 0])), Err(AlgebraError::DomainMismatch)));
    }

    #[test]
    fn partial_derivatives() {
        let f = v1();
        let d = gf2();
        assert_eq!(f.partial(1), Form::from_int_terms(d.clone(), 2, &[([2, 0, 0, 0], 1)]).unwrap());
        // the 2·T0T1 term vanishes in characteristic 2
        let q = Form::from_int_terms(d, 2, &[([0, 0, 2, 0], 1), ([0, 0, 1, 1], 1), ([0, 0, 0, 2], 1)]).unwrap();
        assert_eq!(f.partial(0), q);
        let cube = Form::from_int_terms(Domain::Int, 3, &[([3, 0, 0, 0], 1)]).unwrap();
        assert_eq!(cube.partial(0), Form::from_int_terms(Domain::Int, 2, &[([2, 0, 0, 0], 3)]).unwrap());
    }

    #[test]
    fn polar_quadrics() {
        let f = v1();
        let d = gf2();
        assert_eq!(f.polar(&pt(&d, [1, 0, 0, 0])).unwrap(), f.partial(0));
        assert_eq!(f.polar(&pt(&d, [0, 1, 0, 0])).unwrap(), f.partial(1));
        for p in [[1, 0, 1, 0], [1, 0, 1, 1], [1, 0, 0, 1]] {
            let x = pt(&d, p);
            assert_eq!(f.polar(&x).unwrap().eval(&x).unwrap(), Scalar::Field(0));
        }
    }

    #[test]
    fn linear_substitution() {
        let id: [[Scalar; 4]; 4] =
            std::array::from_fn(|i| std::array::from_fn(|j| Domain::Int.from_i64((i == j) as i64)));
        let f = Form::from_int_terms(Domain::Int, 3, &[([1, 1, 1, 0], 5), ([0, 0, 0, 3], -2)]).unwrap();
        assert_eq!(f.substitute_linear(&id).unwrap(), f);

        let d = gf2();
        let q = Form::from_int_terms(d.clone(), 2, &[([0, 0, 2, 0], 1), ([0, 0, 1, 1], 1), ([0, 0, 0, 2], 1)]).unwrap();
        let mut swap: [[Scalar; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| d.from_i64((i == j) as i64)));
        swap[2] = pt(&d, [0, 0, 0, 1]);
        swap[3] = pt(&d, [0, 0, 1, 0]);
        assert_eq!(q.substitute_linear(&swap).unwrap(), q);
    }

    #[test]
    fn reduction_commutes_with_ring_operations() {
        let f = Form::from_int_terms(Domain::Int, 1, &[([1, 0, 0, 0], 3), ([0, 1, 0, 0], -5)]).unwrap();
        let g = Form::from_int_terms(Domain::Int, 1, &[([1, 0, 0, 0], 7), ([0, 0, 0, 1], 2)]).unwrap();
        let f3 = make_field(3, 1).unwrap();
        let r = |x: &Form| x.reduce(&f3).unwrap();
        assert_eq!(r(&f.add(&g).unwrap()), r(&f).add(&r(&g)).unwrap());
        assert_eq!(r(&f.mul(&g).unwrap()), r(&f).mul(&r(&g)).unwrap());
    }

    #[test]
    fn exponent_sum_checked() {
        let mut f = Form::zero(Domain::Int, 3);
        assert!(matches!(
            f.add_term([1, 1, 0, 0], Scalar::Int(BigInt::from(1))),
            Err(AlgebraError::ExponentSum { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn padic_reduction_to_gf4() {
        let f = Form::from_terms(
            Domain::Padic(64),
            3,
            [
                ([3, 0, 0, 0], Scalar::Padic(QuadExtScalar::one(64))),
                ([0, 0, 0, 3], Scalar::Padic(QuadExtScalar::theta(64))),
            ],
        )
        .unwrap();
        let f4 = make_field(2, 2).unwrap();
        let r = f.reduce(&f4).unwrap();
        assert_eq!(r.coefficient(&[0, 0, 0, 3]), Scalar::Field(2));
        assert!(f.reduce(&make_field(2, 1).unwrap()).is_err());
    }
}
