use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use crate::algebra::{Domain, FieldSpec, Form, Monomial};

use super::cycle::{
    classify, discriminant, quadratic_has_rational_root, rational_roots, restrict, BinaryCubic, IntersectionCycle,
};
use super::point::{points_of_p3, ProjLine, ProjPoint};
use super::GeometryError;

pub(crate) type Terms = Vec<(Monomial, u32)>;

pub(crate) fn eval_terms(field: &FieldSpec, terms: &[(Monomial, u32)], x: &[u32; 4]) -> u32 {
    let mut pw = [[1u32; 4]; 4];
    for i in 0..4 {
        for e in 1..4 {
            pw[i][e] = field.mul(pw[i][e - 1], x[i]);
        }
    }
    terms.iter().fold(0, |acc, (m, c)| {
        let v = field.mul(
            field.mul(*c, field.mul(pw[0][m[0] as usize], pw[1][m[1] as usize])),
            field.mul(pw[2][m[2] as usize], pw[3][m[3] as usize]),
        );
        field.add(acc, v)
    })
}

/// Result of the collinearity operation on two surface points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Composition {
    /// Third point of the intersection cycle (the double point on tangency).
    Point(ProjPoint),
    /// Both points lie on a rational line contained in the surface.
    LineInSurface,
    /// Equal points: the tangent section decides.
    TangentSection,
}

/// Second- and third-order parts of the surface in plane coordinates
/// centered at a point: F(P + xU + yW) = q₂(x, y) + C(x, y).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalExpansion {
    pub plane: [u32; 4],
    pub u: [u32; 4],
    pub w: [u32; 4],
    /// Coefficients of x², xy, y².
    pub quadratic: [u32; 3],
    pub cubic: BinaryCubic,
}

impl LocalExpansion {
    pub fn direction(&self, field: &FieldSpec, x: u32, y: u32) -> [u32; 4] {
        std::array::from_fn(|k| field.add(field.mul(x, self.u[k]), field.mul(y, self.w[k])))
    }

    pub fn quadratic_at(&self, field: &FieldSpec, x: u32, y: u32) -> u32 {
        let [a, b, c] = self.quadratic;
        field
            .add(field.add(field.mul(a, field.mul(x, x)), field.mul(b, field.mul(x, y))), field.mul(c, field.mul(y, y)))
    }
}

/// Eckardt status with the squarefree flag of the local cubic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EckardtInfo {
    pub eckardt: bool,
    /// `Some` only at Eckardt points: whether the three closure lines are distinct.
    pub squarefree: Option<bool>,
}

#[derive(Clone, Debug)]
struct Chord {
    i: usize,
    j: usize,
    third: Option<usize>,
}

/// A cubic surface over a finite field with its rational points.
#[derive(Debug)]
pub struct Surface {
    form: Form,
    field: FieldSpec,
    terms: Terms,
    grad: [Terms; 4],
    points: Vec<ProjPoint>,
    index: HashMap<ProjPoint, usize>,
    smooth: OnceLock<(Vec<ProjPoint>, HashMap<ProjPoint, usize>)>,
    chords: OnceLock<Vec<Chord>>,
    lines: OnceLock<Vec<ProjLine>>,
}

impl Surface {
    /// Builds the surface of a cubic form over a finite field.
    pub fn new(form: Form) -> Result<Self, GeometryError> {
        let Domain::Field(field) = form.domain().clone() else {
            return Err(GeometryError::NotOverField);
        };
        if form.degree() != 3 {
            return Err(GeometryError::NotCubic(form.degree()));
        }
        if form.is_zero() {
            return Err(GeometryError::ZeroForm);
        }
        let terms = form.field_terms()?;
        let grad = [0, 1, 2, 3].map(|i| form.partial(i).field_terms().expect("field form"));
        let points: Vec<ProjPoint> =
            points_of_p3(&field)?.into_iter().filter(|p| eval_terms(&field, &terms, &p.0) == 0).collect();
        let index = points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        Ok(Self {
            form,
            field,
            terms,
            grad,
            points,
            index,
            smooth: OnceLock::new(),
            chords: OnceLock::new(),
            lines: OnceLock::new(),
        })
    }

    /// Reduces or embeds `form` into `field` first.
    pub fn over(form: &Form, field: &FieldSpec) -> Result<Self, GeometryError> {
        Self::new(form.reduce(field)?)
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub(crate) fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    /// All rational points in canonical order.
    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn index_of(&self, p: &ProjPoint) -> Option<usize> {
        self.index.get(p).copied()
    }

    fn smooth_data(&self) -> &(Vec<ProjPoint>, HashMap<ProjPoint, usize>) {
        self.smooth.get_or_init(|| {
            let pts: Vec<ProjPoint> = self.points.iter().filter(|p| !self.is_singular_point(p)).copied().collect();
            let idx = pts.iter().enumerate().map(|(i, p)| (*p, i)).collect();
            (pts, idx)
        })
    }

    /// Nonsingular rational points, the ground set of admissible equivalences.
    pub fn smooth_points(&self) -> &[ProjPoint] {
        &self.smooth_data().0
    }

    pub fn smooth_index_of(&self, p: &ProjPoint) -> Option<usize> {
        self.smooth_data().1.get(p).copied()
    }

    /// Rational points where the gradient vanishes.
    pub fn rational_singular_points(&self) -> Vec<ProjPoint> {
        self.points.iter().filter(|p| self.is_singular_point(p)).copied().collect()
    }

    pub fn eval(&self, x: &[u32; 4]) -> u32 {
        eval_terms(&self.field, &self.terms, x)
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.eval(&p.0) == 0
    }

    pub fn gradient_at(&self, x: &[u32; 4]) -> [u32; 4] {
        std::array::from_fn(|i| eval_terms(&self.field, &self.grad[i], x))
    }

    pub fn is_singular_point(&self, p: &ProjPoint) -> bool {
        self.contains(p) && self.gradient_at(&p.0).iter().all(|&g| g == 0)
    }

    fn require_on(&self, p: &ProjPoint) -> Result<(), GeometryError> {
        if !self.contains(p) {
            return Err(GeometryError::NotOnSurface(p.to_string()));
        }
        Ok(())
    }

    /// Tangent plane at a smooth point, normalized leftmost-1.
    pub fn tangent_plane(&self, p: &ProjPoint) -> Result<[u32; 4], GeometryError> {
        self.require_on(p)?;
        let g = self.gradient_at(&p.0);
        ProjPoint::normalize(&self.field, g).map(|n| n.0).ok_or_else(|| GeometryError::SingularPoint(p.to_string()))
    }

    /// The first polar quadric Σ Pᵢ ∂F/∂Xᵢ as a form.
    pub fn polar_quadric(&self, p: &ProjPoint) -> Result<Form, GeometryError> {
        let coords = p.0.map(crate::algebra::Scalar::Field);
        Ok(self.form.polar(&coords)?)
    }

    pub fn intersect_line(&self, line: &ProjLine) -> IntersectionCycle {
        let [a, b] = line.rows();
        let r = restrict(&self.field, &self.terms, &a, &b);
        let points = rational_roots(&self.field, &r)
            .into_iter()
            .map(|((s, t), m)| (ProjPoint::normalize(&self.field, line.combine(&self.field, s, t)).unwrap(), m))
            .collect();
        classify(r, points)
    }

    /// The restriction coefficients (c₁, c₂) of F(sP + tQ); for surface
    /// points the s³ and t³ coefficients vanish.
    fn chord_coefficients(&self, p: &ProjPoint, q: &ProjPoint) -> (u32, u32) {
        let c = restrict(&self.field, &self.terms, &p.0, &q.0);
        (c[1], c[2])
    }

    /// P ∘ Q following the three cases of the collinearity operation.
    pub fn collinear_third(&self, p: &ProjPoint, q: &ProjPoint) -> Result<Composition, GeometryError> {
        self.require_on(p)?;
        self.require_on(q)?;
        if p == q {
            return Ok(Composition::TangentSection);
        }
        let (c1, c2) = self.chord_coefficients(p, q);
        if c1 == 0 && c2 == 0 {
            return Ok(Composition::LineInSurface);
        }
        // F(sP + tQ) = st(c₁s + c₂t); the third root is (c₂ : −c₁)
        let f = &self.field;
        let v = std::array::from_fn(|k| f.sub(f.mul(c2, p.0[k]), f.mul(c1, q.0[k])));
        Ok(Composition::Point(ProjPoint::normalize(f, v).unwrap()))
    }

    /// Distinct points whose joining line is neither tangent nor contained.
    pub fn is_general_position(&self, p: &ProjPoint, q: &ProjPoint) -> bool {
        if p == q || !self.contains(p) || !self.contains(q) {
            return false;
        }
        let (c1, c2) = self.chord_coefficients(p, q);
        c1 != 0 && c2 != 0
    }

    fn chords(&self) -> &[Chord] {
        self.chords.get_or_init(|| {
            let mut out = Vec::new();
            for i in 0..self.points.len() {
                for j in i + 1..self.points.len() {
                    let third = match self.collinear_third(&self.points[i], &self.points[j]).unwrap() {
                        Composition::Point(r) => Some(self.index[&r]),
                        _ => None,
                    };
                    out.push(Chord { i, j, third });
                }
            }
            out
        })
    }

    /// Rational lines contained in the surface, sorted.
    pub fn lines(&self) -> &[ProjLine] {
        self.lines.get_or_init(|| {
            let mut set = BTreeSet::new();
            for ch in self.chords() {
                if ch.third.is_none() {
                    set.insert(ProjLine::through(&self.field, self.points[ch.i].0, self.points[ch.j].0).unwrap());
                }
            }
            set.into_iter().collect()
        })
    }

    pub fn lines_through(&self, p: &ProjPoint) -> Vec<ProjLine> {
        self.lines().iter().filter(|l| l.contains(&self.field, p)).copied().collect()
    }

    /// Local coordinates on the tangent plane centered at a smooth point.
    pub fn local_expansion(&self, p: &ProjPoint) -> Result<LocalExpansion, GeometryError> {
        let plane = self.tangent_plane(p)?;
        let f = &self.field;
        let j = plane.iter().position(|&g| g == 1).unwrap();
        // the plane is spanned by eᵢ − gᵢeⱼ (i ≠ j); P replaces one of them
        let k = (0..4).find(|&k| k != j && p.0[k] != 0).expect("point lies in its tangent plane");
        let mut basis = (0..4).filter(|&i| i != j && i != k).map(|i| {
            let mut v = [0u32; 4];
            v[i] = 1;
            v[j] = f.neg(plane[i]);
            v
        });
        let u = basis.next().unwrap();
        let w = basis.next().unwrap();
        let q2 = |d: &[u32; 4]| restrict(f, &self.terms, &p.0, d)[2];
        let uw = std::array::from_fn(|k| f.add(u[k], w[k]));
        let a = q2(&u);
        let c = q2(&w);
        let b = f.sub(f.sub(q2(&uw), a), c);
        let cubic = restrict(f, &self.terms, &u, &w);
        Ok(LocalExpansion { plane, u, w, quadratic: [a, b, c], cubic })
    }

    pub fn eckardt_info(&self, p: &ProjPoint) -> Result<EckardtInfo, GeometryError> {
        let e = self.local_expansion(p)?;
        if e.quadratic != [0, 0, 0] {
            return Ok(EckardtInfo { eckardt: false, squarefree: None });
        }
        if e.cubic == [0; 4] {
            // the whole tangent plane would lie in the surface
            return Err(GeometryError::DegenerateTangentCone(p.to_string()));
        }
        Ok(EckardtInfo { eckardt: true, squarefree: Some(discriminant(&self.field, &e.cubic) != 0) })
    }

    pub fn is_eckardt(&self, p: &ProjPoint) -> Result<bool, GeometryError> {
        Ok(self.eckardt_info(p)?.eckardt)
    }

    /// Rational points of the tangent section at P, and whether the section
    /// has a rational tangent line at P.
    pub fn tangent_section_points(&self, p: &ProjPoint) -> Result<(Vec<ProjPoint>, bool), GeometryError> {
        let e = self.local_expansion(p)?;
        if !self.lines_through(p).is_empty() {
            return Err(GeometryError::RationalLineThrough(p.to_string()));
        }
        let pts = self.points.iter().filter(|q| q.dot(&self.field, &e.plane) == 0).copied().collect();
        let flag = if e.quadratic != [0, 0, 0] {
            quadratic_has_rational_root(&self.field, e.quadratic)
        } else {
            !rational_roots(&self.field, &e.cubic).is_empty()
        };
        Ok((pts, flag))
    }

    /// Whether some rational line through P meets the surface only at P
    /// (cycle 3P), so that P ∘ P = P along it.
    pub fn has_flex_direction(&self, p: &ProjPoint) -> Result<bool, GeometryError> {
        let e = self.local_expansion(p)?;
        let f = &self.field;
        let mut dirs = vec![(1u32, 0u32)];
        dirs.extend(f.elements().map(|x| (x, 1)));
        Ok(dirs
            .into_iter()
            .any(|(x, y)| e.quadratic_at(f, x, y) == 0 && super::cycle::eval_binary(f, &e.cubic, x, y) != 0))
    }

    /// |B_P|: nonsingular points in the tangent plane at P or on the polar
    /// quadric of P.
    pub fn bad_locus_count(&self, p: &ProjPoint) -> Result<usize, GeometryError> {
        let plane = self.tangent_plane(p)?;
        let f = &self.field;
        Ok(self
            .smooth_points()
            .iter()
            .filter(|q| {
                if q.dot(f, &plane) == 0 {
                    return true;
                }
                let g = self.gradient_at(&q.0);
                p.dot(f, &g) == 0
            })
            .count())
    }

    /// All collinear triples of nonsingular points, as indices into
    /// [`Surface::smooth_points`]: cycles of rational lines (every
    /// ordering), flex tangents (P, P, P), and (A, A, A) for points of lines
    /// in the surface. Sorted and deduplicated.
    pub fn collinear_triples(&self) -> Vec<[usize; 3]> {
        let sm = |i: usize| self.smooth_index_of(&self.points[i]);
        let mut out = Vec::new();
        for ch in self.chords() {
            let Some(k) = ch.third else { continue };
            let (Some(i), Some(j), Some(k)) = (sm(ch.i), sm(ch.j), sm(k)) else { continue };
            out.extend([[i, j, k], [j, i, k], [i, k, j], [k, i, j], [j, k, i], [k, j, i]]);
        }
        for (i, p) in self.smooth_points().iter().enumerate() {
            if self.has_flex_direction(p).unwrap() {
                out.push([i, i, i]);
            }
        }
        for l in self.lines() {
            for q in l.points(&self.field) {
                if let Some(a) = self.smooth_index_of(&q) {
                    out.push([a, a, a]);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Whether `p` lies on {Q ∈ S : P₀ ∈ T_Q S}.
    pub fn on_tangency_locus(&self, p0: &ProjPoint, p: &ProjPoint) -> bool {
        self.contains(p) && p0.dot(&self.field, &self.gradient_at(&p.0)) == 0
    }

    /// Whether P is a nonsingular point of the curve {F = 0, Σ P₀ᵢ Fᵢ = 0}:
    /// the gradients of both equations at P must be independent.
    pub fn tangency_locus_check(&self, p0: &ProjPoint, p: &ProjPoint) -> Result<bool, GeometryError> {
        if !self.on_tangency_locus(p0, p) {
            return Err(GeometryError::NotOnLocus(p.to_string()));
        }
        let f = &self.field;
        let grad_f = self.gradient_at(&p.0);
        let mut grad_g = [0u32; 4];
        for i in 0..4 {
            let fi = self.form.partial(i);
            for (k, slot) in grad_g.iter_mut().enumerate() {
                let fik = fi.partial(k).field_terms()?;
                *slot = f.add(*slot, f.mul(p0.0[i], eval_terms(f, &fik, &p.0)));
            }
        }
        let independent =
            (0..4).any(|a| (a + 1..4).any(|b| f.sub(f.mul(grad_f[a], grad_g[b]), f.mul(grad_f[b], grad_g[a])) != 0));
        Ok(independent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_field, parse_form};

    fn surface(text: &str) -> Surface {
        Surface::new(parse_form(text).unwrap()).unwrap()
    }

    fn v1() -> Surface {
        surface(
            "domain gf 2 1\ndegree 3\n2 1 0 0 [1]\n1 0 2 0 [1]\n1 0 1 1 [1]\n1 0 0 2 [1]\n0 0 3 0 [1]\n0 0 2 1 [1]\n0 0 0 3 [1]\n",
        )
    }

    fn fermat2() -> Surface {
        surface("domain gf 2 1\ndegree 3\n3 0 0 0 [1]\n0 3 0 0 [1]\n0 0 3 0 [1]\n0 0 0 3 [1]\n")
    }

    fn pt(c: [u32; 4]) -> ProjPoint {
        ProjPoint(c)
    }

    #[test]
    fn v1_points_and_tangent_plane() {
        let s = v1();
        // T₁ occurs only in T₀²T₁, so (0,1,0,0) is a singular rational point
        assert_eq!(
            s.points(),
            &[pt([0, 1, 0, 0]), pt([1, 0, 0, 0]), pt([1, 0, 0, 1]), pt([1, 0, 1, 0]), pt([1, 0, 1, 1])]
        );
        assert_eq!(s.rational_singular_points(), vec![pt([0, 1, 0, 0])]);
        assert_eq!(s.smooth_points(), &[pt([1, 0, 0, 0]), pt([1, 0, 0, 1]), pt([1, 0, 1, 0]), pt([1, 0, 1, 1])]);
        assert!(s.lines().is_empty());
        assert_eq!(s.tangent_plane(&pt([1, 0, 0, 0])).unwrap(), [0, 1, 0, 0]);
        let (sec, flag) = s.tangent_section_points(&pt([1, 0, 0, 0])).unwrap();
        assert_eq!(sec.len(), 4);
        assert!(!flag);
        assert!(!s.is_eckardt(&pt([1, 0, 0, 0])).unwrap());
        assert_eq!(s.bad_locus_count(&pt([1, 0, 0, 0])).unwrap(), 4);
    }

    #[test]
    fn v1_tangent_chord() {
        let s = v1();
        let line = ProjLine::through(s.field(), [1, 0, 1, 0], [1, 0, 0, 1]).unwrap();
        let cyc = s.intersect_line(&line);
        assert_eq!(cyc.tag, super::super::CycleTag::Tangent);
        let mut pts = cyc.points.clone();
        pts.sort();
        assert_eq!(pts, vec![(pt([1, 0, 0, 1]), 2), (pt([1, 0, 1, 0]), 1)]);
        assert_eq!(
            s.collinear_third(&pt([1, 0, 1, 0]), &pt([1, 0, 0, 1])).unwrap(),
            Composition::Point(pt([1, 0, 0, 1]))
        );
        assert!(!s.is_general_position(&pt([1, 0, 1, 0]), &pt([1, 0, 0, 1])));
        assert_eq!(s.collinear_third(&pt([1, 0, 0, 0]), &pt([1, 0, 0, 0])).unwrap(), Composition::TangentSection);
        assert!(s.collinear_third(&pt([0, 0, 1, 1]), &pt([1, 0, 0, 0])).is_err());
    }

    #[test]
    fn fermat_line() {
        let s = fermat2();
        let line = ProjLine::through(s.field(), [1, 1, 0, 0], [0, 0, 1, 1]).unwrap();
        assert!(s.lines().contains(&line));
        assert_eq!(s.intersect_line(&line).tag, super::super::CycleTag::LineInSurface);
        assert_eq!(s.collinear_third(&pt([1, 1, 0, 0]), &pt([0, 0, 1, 1])).unwrap(), Composition::LineInSurface);
        assert!(s.tangent_section_points(&pt([1, 1, 0, 0])).is_err());
    }

    #[test]
    fn manin_reduction() {
        let f4 = make_field(2, 2).unwrap();
        let s = surface("domain gf 2 2\ndegree 3\n3 0 0 0 [1]\n0 3 0 0 [1]\n0 0 3 0 [1]\n0 0 0 3 [0,1]\n");
        assert_eq!(s.points().len(), 9);
        assert!(s.lines().is_empty());
        for p in s.points() {
            let info = s.eckardt_info(p).unwrap();
            assert!(info.eckardt);
            let (_, flag) = s.tangent_section_points(p).unwrap();
            assert!(!flag);
        }
        // θ = 2, θ² = 3 in the GF(4) encoding
        assert_eq!(f4.mul(2, 2), 3);
        assert!(s.is_general_position(&pt([1, 2, 0, 0]), &pt([1, 3, 0, 0])));
    }

    #[test]
    fn locus_criterion() {
        let w = surface(
            "domain gf 2 1\ndegree 3\n2 0 0 1 [1]\n1 2 0 0 [1]\n1 1 1 0 [1]\n1 0 2 0 [1]\n0 3 0 0 [1]\n0 2 1 0 [1]\n0 0 3 0 [1]\n",
        );
        assert!(w.tangency_locus_check(&pt([1, 0, 1, 0]), &pt([1, 0, 0, 0])).unwrap());
        for p in w.points() {
            assert!(w.on_tangency_locus(p, p));
        }
        // with P₀ = (0,1,0,0) the curve is F_Y = 0; no XYZ term makes P a cusp
        let cusp =
            surface("domain gf 2 1\ndegree 3\n2 0 0 1 [1]\n1 0 2 0 [1]\n0 3 0 0 [1]\n0 2 1 0 [1]\n0 0 3 0 [1]\n");
        assert!(!cusp.tangency_locus_check(&pt([0, 1, 0, 0]), &pt([1, 0, 0, 0])).unwrap());
        assert!(w.tangency_locus_check(&pt([1, 0, 1, 0]), &pt([0, 1, 0, 0])).is_err());
    }
}
