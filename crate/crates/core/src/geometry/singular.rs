//! Singular points over extension fields, found fiber by fiber: on each line
//! {(a:b:c:t)} through the vertex (0:0:0:1) the surface equation and its
//! partials become polynomials in t whose common roots are the singular
//! points on that line.

use std::fmt;

use num_integer::Integer;

use crate::algebra::{make_field, Embedding, FieldSpec, Monomial, MAX_ORDER};

use super::point::ProjPoint;
use super::surface::{eval_terms, Surface, Terms};
use super::GeometryError;

/// Largest extension degree accepted by [`singular_points_up_to`].
pub const MAX_SINGULAR_BOUND: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    /// Degree over the base field of the field generated by the coordinates.
    pub degree: u32,
    /// The extension the coordinates are encoded in.
    pub field: FieldSpec,
    pub point: ProjPoint,
}

impl fmt::Display for SingularPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {} over GF({}): {}", self.degree, self.field.order(), self.point)
    }
}

/// Result of a bounded smoothness search.
#[derive(Clone, Debug)]
pub struct SmoothnessReport {
    pub bound: u32,
    pub singular: Vec<SingularPoint>,
}

impl SmoothnessReport {
    pub fn is_smooth(&self) -> bool {
        self.singular.is_empty()
    }
}

/// Largest extension degree e ≤ 6 with q^e ≤ 256, at least 1.
pub fn default_smoothness_bound(q: u32) -> u32 {
    let mut e = 1;
    while e < 6 && (q as u64).pow(e + 1) <= 256 {
        e += 1;
    }
    e
}

fn trim(p: &mut Vec<u32>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn poly_rem(k: &FieldSpec, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let lead_inv = k.inv(*b.last().unwrap()).unwrap();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = k.mul(*r.last().unwrap(), lead_inv);
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = k.sub(r[shift + i], k.mul(f, bi));
        }
        trim(&mut r);
    }
    r
}

fn poly_gcd(k: &FieldSpec, a: Vec<u32>, b: Vec<u32>) -> Vec<u32> {
    let (mut a, mut b) = (a, b);
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(k, &a, &b);
        a = b;
        b = r;
    }
    a
}

fn eval_poly(k: &FieldSpec, p: &[u32], t: u32) -> u32 {
    p.iter().rev().fold(0, |acc, &c| k.add(k.mul(acc, t), c))
}

/// Degree over GF(p^m) of the field generated by the point's coordinates.
fn point_degree(k: &FieldSpec, base_degree: u32, p: &ProjPoint) -> u32 {
    let d = p.0.iter().map(|&c| k.minimal_degree(c)).fold(1u32, |acc, x| acc.lcm(&x));
    d.lcm(&base_degree) / base_degree
}

/// All singular points over GF(q^e) for 1 ≤ e ≤ `bound`, each reported once
/// at its minimal degree. An empty list certifies smoothness up to `bound`.
pub fn singular_points_up_to(s: &Surface, bound: u32) -> Result<SmoothnessReport, GeometryError> {
    if bound == 0 || bound > MAX_SINGULAR_BOUND {
        return Err(GeometryError::BoundTooLarge { bound, cap: MAX_SINGULAR_BOUND });
    }
    let base = s.field();
    let (p, m) = (base.characteristic(), base.degree());
    if (base.order() as u64).pow(bound) > MAX_ORDER {
        return Err(GeometryError::BoundTooLarge { bound, cap: MAX_SINGULAR_BOUND });
    }
    let mut equations: Vec<Terms> = vec![s.terms().to_vec()];
    for i in 0..4 {
        equations.push(s.form().partial(i).field_terms()?);
    }
    let mut singular = Vec::new();
    for e in 1..=bound {
        let k = make_field(p, m * e)?;
        let emb = Embedding::new(base, &k)?;
        let eqs: Vec<Terms> =
            equations.iter().map(|t| t.iter().map(|(mo, c)| (*mo, emb.apply(*c))).collect()).collect();
        let mut found = scan_extension(&k, &eqs);
        found.retain(|pt| point_degree(&k, m, pt) == e);
        found.sort();
        singular.extend(found.into_iter().map(|point| SingularPoint { degree: e, field: k.clone(), point }));
    }
    Ok(SmoothnessReport { bound, singular })
}

fn scan_extension(k: &FieldSpec, eqs: &[Terms]) -> Vec<ProjPoint> {
    let mut out = Vec::new();
    let vertex = [0, 0, 0, 1];
    if eqs.iter().all(|t| eval_terms(k, t, &vertex) == 0) {
        out.push(ProjPoint(vertex));
    }
    let q = k.order();
    // fibers over normalized (a:b:c)
    let mut bases: Vec<[u32; 3]> = vec![[0, 0, 1]];
    bases.extend((0..q).map(|c| [0, 1, c]));
    for b in 0..q {
        for c in 0..q {
            bases.push([1, b, c]);
        }
    }
    for abc in bases {
        // most fibers reach a constant gcd after two or three equations
        let mut g = Vec::new();
        for t in eqs {
            g = poly_gcd(k, g, fiber_poly(k, t, &abc));
            if g.len() == 1 {
                break;
            }
        }
        if g.len() == 1 {
            continue;
        }
        for t in 0..q {
            if g.is_empty() || eval_poly(k, &g, t) == 0 {
                out.push(ProjPoint([abc[0], abc[1], abc[2], t]));
            }
        }
    }
    out
}

/// Coefficients in t (low to high) of the form restricted to (a, b, c, t).
fn fiber_poly(k: &FieldSpec, terms: &[(Monomial, u32)], abc: &[u32; 3]) -> Vec<u32> {
    let mut pw = [[1u32; 4]; 3];
    for i in 0..3 {
        for e in 1..4 {
            pw[i][e] = k.mul(pw[i][e - 1], abc[i]);
        }
    }
    let mut out = vec![0u32; 4];
    for (mo, c) in terms {
        let v = k.mul(k.mul(*c, pw[0][mo[0] as usize]), k.mul(pw[1][mo[1] as usize], pw[2][mo[2] as usize]));
        out[mo[3] as usize] = k.add(out[mo[3] as usize], v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_form;

    fn surface(text: &str) -> Surface {
        Surface::new(parse_form(text).unwrap()).unwrap()
    }

    /// Oracle: test every point of P³(GF(q^e)) directly.
    fn brute_force(s: &Surface, e: u32) -> Vec<ProjPoint> {
        let base = s.field();
        let k = make_field(base.characteristic(), base.degree() * e).unwrap();
        let big = Surface::over(s.form(), &k).unwrap();
        big.points().iter().filter(|p| big.is_singular_point(p)).copied().collect()
    }

    #[test]
    fn fermat_is_smooth_to_six() {
        let s = surface("domain gf 2 1\ndegree 3\n3 0 0 0 [1]\n0 3 0 0 [1]\n0 0 3 0 [1]\n0 0 0 3 [1]\n");
        let r = singular_points_up_to(&s, 6).unwrap();
        assert!(r.is_smooth());
        assert_eq!(r.bound, 6);
    }

    #[test]
    fn cone_vertex_line_found_at_degree_one() {
        let s = surface("domain gf 2 1\ndegree 3\n3 0 0 0 [1]\n0 3 0 0 [1]\n");
        let r = singular_points_up_to(&s, 2).unwrap();
        let deg1: Vec<_> = r.singular.iter().filter(|p| p.degree == 1).map(|p| p.point).collect();
        // T₀ = T₁ = 0 is the singular line; its GF(2)-points
        assert_eq!(deg1, vec![ProjPoint([0, 0, 0, 1]), ProjPoint([0, 0, 1, 0]), ProjPoint([0, 0, 1, 1])]);
        assert_eq!(deg1, brute_force(&s, 1));
    }

    #[test]
    fn fiber_scan_matches_brute_force() {
        let v1 = surface(
            "domain gf 2 1\ndegree 3\n2 1 0 0 [1]\n1 0 2 0 [1]\n1 0 1 1 [1]\n1 0 0 2 [1]\n0 0 3 0 [1]\n0 0 2 1 [1]\n0 0 0 3 [1]\n",
        );
        let r = singular_points_up_to(&v1, 3).unwrap();
        assert_eq!(r.singular.len(), 1);
        assert_eq!(r.singular[0].point, ProjPoint([0, 1, 0, 0]));
        for e in 1..=3 {
            let k = make_field(2, e).unwrap();
            let mut fiber: Vec<_> = scan_extension(
                &k,
                &[v1.terms().to_vec()]
                    .into_iter()
                    .chain((0..4).map(|i| v1.form().partial(i).field_terms().unwrap()))
                    .map(|t| {
                        let emb = Embedding::new(v1.field(), &k).unwrap();
                        t.into_iter().map(|(m, c)| (m, emb.apply(c))).collect::<Vec<_>>()
                    })
                    .collect::<Vec<_>>(),
            );
            fiber.sort();
            assert_eq!(fiber, brute_force(&v1, e));
        }
    }

    #[test]
    fn caps() {
        let s = surface("domain gf 2 2\ndegree 3\n3 0 0 0 [1]\n0 3 0 0 [1]\n0 0 3 0 [1]\n0 0 0 3 [1]\n");
        assert!(singular_points_up_to(&s, 9).is_err());
        assert!(singular_points_up_to(&s, 0).is_err());
        assert_eq!(default_smoothness_bound(2), 6);
        assert_eq!(default_smoothness_bound(4), 4);
        assert_eq!(default_smoothness_bound(16), 2);
    }
}
