//! Binary cubics c₀s³ + c₁s²t + c₂st² + c₃t³ arising from restricting a
//! cubic surface to a line, and the intersection cycles they describe.

use crate::algebra::{FieldSpec, Monomial};

use super::point::ProjPoint;

/// Coefficients of s³, s²t, st², t³.
pub type BinaryCubic = [u32; 4];

/// F(sA + tB) for a cubic given as field terms.
pub fn restrict(field: &FieldSpec, terms: &[(Monomial, u32)], a: &[u32; 4], b: &[u32; 4]) -> BinaryCubic {
    let mut out = [0u32; 4];
    for (m, c) in terms {
        // poly[k] = coefficient of t^k in the partial product
        let mut poly = [*c, 0, 0, 0];
        let mut deg = 0;
        for i in 0..4 {
            for _ in 0..m[i] {
                let mut next = [0u32; 4];
                for k in 0..=deg {
                    next[k] = field.add(next[k], field.mul(poly[k], a[i]));
                    next[k + 1] = field.add(next[k + 1], field.mul(poly[k], b[i]));
                }
                poly = next;
                deg += 1;
            }
        }
        for k in 0..4 {
            out[k] = field.add(out[k], poly[k]);
        }
    }
    out
}

/// Evaluates at (s:t).
pub fn eval_binary(field: &FieldSpec, c: &BinaryCubic, s: u32, t: u32) -> u32 {
    let mut acc = 0;
    let mut sp = [1u32; 4];
    let mut tp = [1u32; 4];
    for k in 1..4 {
        sp[k] = field.mul(sp[k - 1], s);
        tp[k] = field.mul(tp[k - 1], t);
    }
    for k in 0..4 {
        acc = field.add(acc, field.mul(c[k], field.mul(sp[3 - k], tp[k])));
    }
    acc
}

/// Rational roots on P¹ with multiplicities, as ((s, t), m) with (s:t)
/// normalized to (1:0) or (x:1). Empty for the zero cubic.
pub fn rational_roots(field: &FieldSpec, c: &BinaryCubic) -> Vec<((u32, u32), u32)> {
    if c.iter().all(|&x| x == 0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    // multiplicity of (1:0) is the number of vanishing leading coefficients
    let lead = c.iter().position(|&x| x != 0).unwrap() as u32;
    if lead > 0 {
        out.push(((1, 0), lead));
    }
    // affine part g(x) = c₀x³ + c₁x² + c₂x + c₃, highest degree first
    let mut g: Vec<u32> = c[lead as usize..].to_vec();
    for x in field.elements() {
        let mut mult = 0;
        loop {
            if g.len() <= 1 {
                break;
            }
            let (quot, rem) = synthetic_division(field, &g, x);
            if rem != 0 {
                break;
            }
            g = quot;
            mult += 1;
        }
        if mult > 0 {
            out.push(((x, 1), mult));
        }
    }
    out
}

fn synthetic_division(field: &FieldSpec, g: &[u32], x: u32) -> (Vec<u32>, u32) {
    let mut quot = Vec::with_capacity(g.len() - 1);
    let mut acc = 0;
    for (i, &c) in g.iter().enumerate() {
        acc = field.add(field.mul(acc, x), c);
        if i + 1 < g.len() {
            quot.push(acc);
        }
    }
    (quot, acc)
}

/// Formal discriminant b²c² − 4ac³ − 4b³d − 27a²d² + 18abcd.
pub fn discriminant(field: &FieldSpec, c: &BinaryCubic) -> u32 {
    let [a, b, cc, d] = *c;
    let m = |xs: &[u32]| xs.iter().fold(1, |acc, &x| field.mul(acc, x));
    let k = |v: i64| field.from_int(v);
    let terms = [
        m(&[b, b, cc, cc]),
        m(&[k(-4), a, cc, cc, cc]),
        m(&[k(-4), b, b, b, d]),
        m(&[k(-27), a, a, d, d]),
        m(&[k(18), a, b, cc, d]),
    ];
    terms.iter().fold(0, |acc, &x| field.add(acc, x))
}

/// Whether a binary quadratic ax² + bxy + cy² has a rational zero on P¹.
pub fn quadratic_has_rational_root(field: &FieldSpec, q: [u32; 3]) -> bool {
    let [a, b, c] = q;
    if a == 0 {
        return true;
    }
    field.elements().any(|x| field.add(field.add(field.mul(a, field.mul(x, x)), field.mul(b, x)), c) == 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CycleTag {
    LineInSurface,
    Transversal3Rational,
    Tangent,
    Triple,
    PartialRational,
}

impl CycleTag {
    pub fn name(self) -> &'static str {
        match self {
            CycleTag::LineInSurface => "line-in-surface",
            CycleTag::Transversal3Rational => "transversal-3-rational",
            CycleTag::Tangent => "tangent",
            CycleTag::Triple => "triple",
            CycleTag::PartialRational => "partial-rational",
        }
    }
}

/// The cycle V·L: restriction cubic, rational points with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionCycle {
    pub restriction: BinaryCubic,
    pub points: Vec<(ProjPoint, u32)>,
    pub tag: CycleTag,
}

impl IntersectionCycle {
    pub fn rational_degree(&self) -> u32 {
        self.points.iter().map(|(_, m)| m).sum()
    }

    /// The points repeated by multiplicity.
    pub fn multiset(&self) -> Vec<ProjPoint> {
        self.points.iter().flat_map(|(p, m)| std::iter::repeat(*p).take(*m as usize)).collect()
    }
}

pub(crate) fn classify(restriction: BinaryCubic, points: Vec<(ProjPoint, u32)>) -> IntersectionCycle {
    let tag = if restriction.iter().all(|&x| x == 0) {
        CycleTag::LineInSurface
    } else {
        let total: u32 = points.iter().map(|(_, m)| m).sum();
        match (total, points.len()) {
            (3, 3) => CycleTag::Transversal3Rational,
            (3, 2) => CycleTag::Tangent,
            (3, 1) => CycleTag::Triple,
            _ => CycleTag::PartialRational,
        }
    };
    IntersectionCycle { restriction, points, tag }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_field;

    #[test]
    fn roots_and_multiplicities() {
        let f = make_field(2, 1).unwrap();
        // s²t: (0:1) double, (1:0) simple
        let r = rational_roots(&f, &[0, 1, 0, 0]);
        assert_eq!(r, vec![((1, 0), 1), ((0, 1), 2)]);
        // s³ + s²t + t³ has no root over GF(2)
        assert!(rational_roots(&f, &[1, 1, 0, 1]).is_empty());
        // t³
        assert_eq!(rational_roots(&f, &[0, 0, 0, 1]), vec![((1, 0), 3)]);
        let f7 = make_field(7, 1).unwrap();
        // (s - t)(s - 2t)(s - 3t) = s³ - 6s²t + 11st² - 6t³
        let c = [1, f7.from_int(-6), f7.from_int(11), f7.from_int(-6)];
        let roots: Vec<_> = rational_roots(&f7, &c).into_iter().map(|(p, m)| (p.0, m)).collect();
        assert_eq!(roots, vec![(1, 1), (2, 1), (3, 1)]);
    }

    #[test]
    fn discriminant_detects_repeated_roots() {
        let f7 = make_field(7, 1).unwrap();
        assert_ne!(discriminant(&f7, &[1, f7.from_int(-6), f7.from_int(11), f7.from_int(-6)]), 0);
        // s²t has a double root
        assert_eq!(discriminant(&f7, &[0, 1, 0, 0]), 0);
        let f2 = make_field(2, 1).unwrap();
        // x³ + x²y + y³ is separable over GF(2)
        assert_ne!(discriminant(&f2, &[1, 1, 0, 1]), 0);
        // x³ + xy² = x(x + y)² is not
        assert_eq!(discriminant(&f2, &[1, 0, 1, 0]), 0);
    }

    #[test]
    fn restriction_matches_pointwise_evaluation() {
        let f = make_field(2, 2).unwrap();
        let terms = vec![([3, 0, 0, 0], 1), ([0, 3, 0, 0], 1), ([0, 0, 3, 0], 1), ([0, 0, 0, 3], 2)];
        let a = [1, 2, 0, 3];
        let b = [0, 1, 1, 1];
        let c = restrict(&f, &terms, &a, &b);
        for s in f.elements() {
            for t in f.elements() {
                let x: [u32; 4] = std::array::from_fn(|k| f.add(f.mul(s, a[k]), f.mul(t, b[k])));
                let direct = terms.iter().fold(0, |acc, (m, c)| {
                    let v = (0..4).fold(*c, |v, i| f.mul(v, f.pow(x[i], m[i] as u64)));
                    f.add(acc, v)
                });
                assert_eq!(eval_binary(&f, &c, s, t), direct);
            }
        }
    }
}
