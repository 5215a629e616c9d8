use std::fmt;

use crate::algebra::{make_field, Domain, FieldSpec, Form, Monomial, Scalar};
use crate::geometry::{ProjPoint, Surface};

use super::scalar::{QuadExtScalar as Ext, Valuation, MAX_PRECISION};
use super::PadicError;

/// A cubic form over Z₂[θ] at fixed absolute precision, stored densely for
/// fast evaluation.
#[derive(Clone, Debug)]
pub struct PadicCubic {
    terms: Vec<(Monomial, Ext)>,
    precision: u32,
    form: Form,
}

impl PadicCubic {
    /// Accepts integer or 2-adic cubic forms.
    pub fn new(form: &Form, precision: u32) -> Result<Self, PadicError> {
        if precision == 0 || precision > MAX_PRECISION {
            return Err(PadicError::BadPrecision(precision));
        }
        if form.degree() != 3 || !matches!(form.domain(), Domain::Int | Domain::Padic(_)) {
            return Err(PadicError::UnsupportedForm);
        }
        let form = form.to_padic(precision)?;
        let terms = form
            .terms()
            .map(|(m, c)| match c {
                Scalar::Padic(x) => (*m, *x),
                _ => unreachable!("to_padic yields 2-adic scalars"),
            })
            .collect();
        Ok(Self { terms, precision, form })
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn terms(&self) -> &[(Monomial, Ext)] {
        &self.terms
    }

    /// Whether some coefficient has a θ-component mod 2.
    pub fn needs_extension(&self) -> bool {
        self.terms.iter().any(|(_, c)| c.reduce_mod2() > 1)
    }

    /// GF(2), or GF(4) when the coefficients need θ.
    pub fn residue_field(&self) -> FieldSpec {
        make_field(2, if self.needs_extension() { 2 } else { 1 }).unwrap()
    }

    /// The reduction mod 2 as a surface over `field` (GF(2) or an extension).
    pub fn reduction(&self, field: &FieldSpec) -> Result<Surface, PadicError> {
        Ok(Surface::new(self.form.reduce(field)?)?)
    }

    pub fn zero(&self) -> Ext {
        Ext::zero(self.precision)
    }

    pub fn eval(&self, x: &[Ext; 4]) -> Ext {
        let mut acc = self.zero();
        for (m, c) in &self.terms {
            let mut t = *c;
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(x[i]);
                }
            }
            acc = acc.add(t);
        }
        acc
    }

    /// ∂F/∂xᵢ at x.
    pub fn partial_at(&self, i: usize, x: &[Ext; 4]) -> Ext {
        let mut acc = self.zero();
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut t = c.mul(Ext::from_i64(m[i] as i64, self.precision));
            t = (1..m[i]).fold(t, |t, _| t.mul(x[i]));
            for (k, &e) in m.iter().enumerate() {
                if k != i {
                    for _ in 0..e {
                        t = t.mul(x[k]);
                    }
                }
            }
            acc = acc.add(t);
        }
        acc
    }

    pub fn gradient_at(&self, x: &[Ext; 4]) -> [Ext; 4] {
        std::array::from_fn(|i| self.partial_at(i, x))
    }

    /// Coefficients (s³, s²t, st², t³) of F(s·a + t·b).
    pub fn restrict(&self, a: &[Ext; 4], b: &[Ext; 4]) -> [Ext; 4] {
        let mut out = [self.zero(); 4];
        for (m, c) in &self.terms {
            // binary polynomial in (s, t), index = power of t
            let mut poly = vec![*c];
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    let mut next = vec![self.zero(); poly.len() + 1];
                    for (k, &p) in poly.iter().enumerate() {
                        next[k] = next[k].add(p.mul(a[i]));
                        next[k + 1] = next[k + 1].add(p.mul(b[i]));
                    }
                    poly = next;
                }
            }
            for k in 0..4 {
                out[k] = out[k].add(poly[k]);
            }
        }
        out
    }

    /// Coefficients (s², st, t²) of ∂F/∂xᵢ(s·a + t·b).
    pub fn restrict_partial(&self, i: usize, a: &[Ext; 4], b: &[Ext; 4]) -> [Ext; 3] {
        let mut out = [self.zero(); 3];
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut dm = *m;
            dm[i] -= 1;
            let mut poly = vec![c.mul(Ext::from_i64(m[i] as i64, self.precision))];
            for (k, &e) in dm.iter().enumerate() {
                for _ in 0..e {
                    let mut next = vec![self.zero(); poly.len() + 1];
                    for (j, &p) in poly.iter().enumerate() {
                        next[j] = next[j].add(p.mul(a[k]));
                        next[j + 1] = next[j + 1].add(p.mul(b[k]));
                    }
                    poly = next;
                }
            }
            for k in 0..3 {
                out[k] = out[k].add(poly[k]);
            }
        }
        out
    }
}

/// A projective point over Z₂[θ] normalized so that coordinate `chart` is 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicPoint {
    pub coords: [Ext; 4],
    pub chart: usize,
}

impl PadicPoint {
    /// Scales a nonzero vector to a primitive one with a coordinate equal
    /// to 1. Returns the point and the number of bits lost dividing out a
    /// common power of 2.
    pub fn normalize(v: [Ext; 4]) -> Result<(Self, u32), PadicError> {
        let w = v
            .iter()
            .filter_map(|c| match c.valuation() {
                Valuation::Exact(e) => Some(e),
                Valuation::AtLeast(_) => None,
            })
            .min()
            .ok_or(PadicError::ZeroPoint)?;
        let mut v = v;
        for c in v.iter_mut() {
            *c = c.shr_exact(w)?;
        }
        let chart = v.iter().position(|c| c.is_unit()).ok_or(PadicError::ZeroPoint)?;
        let inv = v[chart].inv()?;
        let coords = v.map(|c| c.mul(inv));
        Ok((Self { coords, chart }, w))
    }

    /// Canonical lift of a reduced point (GF(2) or GF(4) encodings).
    pub fn lift(p: &ProjPoint, precision: u32) -> Self {
        let coords = p.0.map(|c| Ext::lift_gf4(c, precision));
        let chart = p.0.iter().position(|&c| c == 1).expect("normalized projective point");
        Self { coords, chart }
    }

    /// Reduction mod 2 as GF(4) encodings (GF(2) points when base).
    pub fn reduce(&self) -> ProjPoint {
        ProjPoint(self.coords.map(|c| c.reduce_mod2()))
    }

    pub fn conj(&self) -> Self {
        Self { coords: self.coords.map(|c| c.conj()), chart: self.chart }
    }

    pub fn is_base(&self) -> bool {
        self.coords.iter().all(|c| c.is_base())
    }

    pub fn precision(&self) -> u32 {
        self.coords.iter().map(|c| c.precision()).min().unwrap()
    }

    pub fn with_precision(&self, precision: u32) -> Self {
        Self { coords: self.coords.map(|c| c.with_precision(precision)), chart: self.chart }
    }

    /// Minimum valuation of the coordinate differences after scaling
    /// `other` into this point's chart.
    pub fn distance_valuation(&self, other: &Self) -> Result<Valuation, PadicError> {
        let scale = other.coords[self.chart].inv()?;
        let o = other.coords.map(|c| c.mul(scale));
        Ok((0..4).map(|k| self.coords[k].sub(o[k]).valuation()).reduce(Valuation::min).unwrap())
    }
}

impl fmt::Display for PadicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.coords;
        write!(f, "({},{},{},{})", c[0], c[1], c[2], c[3])
    }
}

impl fmt::Debug for PadicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} mod 2^{}", self.precision())
    }
}

/// Reduces a 2-adic point onto the residue field of `s`, checking that
/// the coordinates live there.
pub(crate) fn reduce_onto(s: &Surface, p: &PadicPoint) -> Result<ProjPoint, PadicError> {
    let r = p.reduce();
    let fits = s.field().degree() >= 2 || r.0.iter().all(|&c| c <= 1);
    if !fits || s.field().degree() > 2 {
        return Err(PadicError::NotOnReduction(r.to_string()));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_form;

    fn fermat() -> PadicCubic {
        let f = parse_form("domain int\ndegree 3\n3 0 0 0 1\n0 3 0 0 1\n0 0 3 0 1\n0 0 0 3 1\n").unwrap();
        PadicCubic::new(&f, 64).unwrap()
    }

    fn ints(v: [i64; 4]) -> [Ext; 4] {
        v.map(|x| Ext::from_i64(x, 64))
    }

    #[test]
    fn eval_and_partials() {
        let f = fermat();
        assert!(f.eval(&ints([1, -1, 2, -2])).is_zero());
        assert_eq!(f.eval(&ints([1, 1, 1, 1])), Ext::from_i64(4, 64));
        let g = f.gradient_at(&ints([1, 2, 3, 4]));
        assert_eq!(g, ints([3, 12, 27, 48]));
    }

    #[test]
    fn restriction_matches_evaluation() {
        let f = fermat();
        let a = ints([1, 2, 0, 5]);
        let b = ints([3, -1, 7, 2]);
        let r = f.restrict(&a, &b);
        for (s, t) in [(1i64, 0i64), (0, 1), (1, 1), (2, -3), (5, 7)] {
            let x: [Ext; 4] =
                std::array::from_fn(|k| a[k].mul(Ext::from_i64(s, 64)).add(b[k].mul(Ext::from_i64(t, 64))));
            let (s, t) = (Ext::from_i64(s, 64), Ext::from_i64(t, 64));
            let direct = r[0]
                .mul(s.mul(s).mul(s))
                .add(r[1].mul(s.mul(s).mul(t)))
                .add(r[2].mul(s.mul(t).mul(t)))
                .add(r[3].mul(t.mul(t).mul(t)));
            assert_eq!(f.eval(&x), direct);
            for i in 0..4 {
                let q = f.restrict_partial(i, &a, &b);
                let direct = q[0].mul(s.mul(s)).add(q[1].mul(s.mul(t))).add(q[2].mul(t.mul(t)));
                assert_eq!(f.partial_at(i, &x), direct);
            }
        }
    }

    #[test]
    fn normalization() {
        let (p, loss) = PadicPoint::normalize(ints([4, 8, 12, 0])).unwrap();
        assert_eq!(loss, 2);
        assert_eq!(p.chart, 0);
        assert_eq!(p.coords[1].a.residue(), 2);
        assert_eq!(p.precision(), 62);
        assert!(PadicPoint::normalize(ints([0; 4])).is_err());
    }

    #[test]
    fn manin_needs_gf4() {
        let f = parse_form("domain padic 64\ndegree 3\n3 0 0 0 1\n0 3 0 0 1\n0 0 3 0 1\n0 0 0 3 [0,1]\n").unwrap();
        let c = PadicCubic::new(&f, 64).unwrap();
        assert!(c.needs_extension());
        assert_eq!(c.residue_field().order(), 4);
        assert_eq!(c.reduction(&c.residue_field()).unwrap().points().len(), 9);
    }
}
