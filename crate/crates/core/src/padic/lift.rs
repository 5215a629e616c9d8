//! Hensel lifting of points, lines and collinear triples from the
//! reduction mod 2.

use std::fmt;

use crate::algebra::{make_field, FieldSpec};
use crate::geometry::{CycleTag, ProjLine, ProjPoint, Surface};

use super::cubic::{reduce_onto, PadicCubic, PadicPoint};
use super::scalar::{QuadExtScalar as Ext, Valuation};
use super::PadicError;

/// Iteration cap; doubling from 1 bit reaches 64 bits in 7 steps.
const MAX_NEWTON_STEPS: usize = 12;

fn residue_field_for(f: &PadicCubic, coords: &[u32]) -> FieldSpec {
    if f.needs_extension() || coords.iter().any(|&c| c > 1) {
        make_field(2, 2).unwrap()
    } else {
        make_field(2, 1).unwrap()
    }
}

fn full(v: Valuation, n: u32) -> bool {
    v.floor() >= n
}

/// Records a residual valuation, failing if it did not at least double.
fn check_doubling(history: &mut Vec<Valuation>, v: Valuation, n: u32) -> Result<(), PadicError> {
    if let Some(&prev) = history.last() {
        if v.floor() < (2 * prev.floor()).min(n) {
            return Err(PadicError::NewtonStall { step: history.len(), valuation: v.to_string() });
        }
    }
    history.push(v);
    Ok(())
}

#[derive(Clone, Debug)]
pub struct PointLift {
    pub point: PadicPoint,
    /// The coordinate Newton iteration solved for.
    pub solved: usize,
    /// Residual valuation before each step, ending with the final one.
    pub residuals: Vec<Valuation>,
}

impl PointLift {
    pub fn residual(&self) -> Valuation {
        *self.residuals.last().unwrap()
    }
}

/// Lifts a smooth point of the reduction to F(P) ≡ 0 mod 2^N, keeping every
/// coordinate except one unit-partial coordinate fixed at `start` (or the
/// canonical lift).
pub fn hensel_lift_point(f: &PadicCubic, pt: &ProjPoint, start: Option<[Ext; 4]>) -> Result<PointLift, PadicError> {
    let n = f.precision();
    let field = residue_field_for(f, &pt.0);
    let s = f.reduction(&field)?;
    if !s.contains(pt) {
        return Err(PadicError::NotOnReduction(pt.to_string()));
    }
    let canonical = PadicPoint::lift(pt, n);
    let mut x = match start {
        Some(v) => {
            if v.map(|c| c.reduce_mod2()) != pt.0 {
                return Err(PadicError::BadStart(pt.to_string()));
            }
            v.map(|c| c.with_precision(n))
        }
        None => canonical.coords,
    };
    let chart = canonical.chart;
    // Euler's identity forces a unit partial off the chart coordinate
    let g = f.gradient_at(&x);
    let solved =
        (0..4).find(|&i| i != chart && g[i].is_unit()).ok_or_else(|| PadicError::SingularReduction(pt.to_string()))?;
    let mut residuals = Vec::new();
    for _ in 0..MAX_NEWTON_STEPS {
        let r = f.eval(&x);
        check_doubling(&mut residuals, r.valuation(), n)?;
        if full(r.valuation(), n) {
            return Ok(PointLift { point: PadicPoint { coords: x, chart }, solved, residuals });
        }
        let d = f.partial_at(solved, &x);
        x[solved] = x[solved].sub(r.mul(d.inv()?));
    }
    Err(PadicError::NewtonStall { step: MAX_NEWTON_STEPS, valuation: f.eval(&x).valuation().to_string() })
}

/// The line {x_{p₂} = a·x_{p₀} + b·x_{p₁}, x_{p₃} = c·x_{p₀} + d·x_{p₁}}
/// for the coordinate order `perm` = (p₀, p₁, p₂, p₃).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct LineChart {
    pub perm: [usize; 4],
    pub coeffs: [Ext; 4],
}

impl LineChart {
    /// Chart of the canonical lift of a reduced line, with the pivots of its
    /// echelon form as the parameter coordinates.
    pub fn lift(line: &ProjLine, precision: u32) -> Self {
        let [p0, p1] = line.pivots();
        let rest: Vec<usize> = (0..4).filter(|&k| k != p0 && k != p1).collect();
        let [r0, r1] = line.rows();
        let l = |v: u32| Ext::lift_gf4(v, precision);
        Self {
            perm: [p0, p1, rest[0], rest[1]],
            coeffs: [l(r0[rest[0]]), l(r1[rest[0]]), l(r0[rest[1]]), l(r1[rest[1]])],
        }
    }

    /// Two spanning vectors of the line.
    pub fn rows(&self) -> [[Ext; 4]; 2] {
        let p = self.precision();
        let mut r0 = [Ext::zero(p); 4];
        let mut r1 = [Ext::zero(p); 4];
        let [p0, p1, p2, p3] = self.perm;
        let [a, b, c, d] = self.coeffs;
        r0[p0] = Ext::one(p);
        r1[p1] = Ext::one(p);
        r0[p2] = a;
        r1[p2] = b;
        r0[p3] = c;
        r1[p3] = d;
        [r0, r1]
    }

    pub fn precision(&self) -> u32 {
        self.coeffs.iter().map(|c| c.precision()).min().unwrap()
    }

    pub fn is_base(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_base())
    }

    pub fn reduce(&self) -> [[u32; 4]; 2] {
        self.rows().map(|r| r.map(|c| c.reduce_mod2()))
    }
}

impl fmt::Display for LineChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [p0, p1, p2, p3] = self.perm;
        let [a, b, c, d] = self.coeffs;
        write!(f, "x{p2} = {a}*x{p0} + {b}*x{p1}; x{p3} = {c}*x{p0} + {d}*x{p1}")
    }
}

impl fmt::Debug for LineChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Debug)]
pub struct LineLift {
    pub chart: LineChart,
    /// Minimum valuation of the four residual coefficients per step.
    pub residuals: Vec<Valuation>,
}

impl LineLift {
    pub fn residual(&self) -> Valuation {
        *self.residuals.last().unwrap()
    }
}

/// The restricted binary cubic of the chart and its Jacobian in (a, b, c, d).
fn line_system(f: &PadicCubic, chart: &LineChart) -> ([Ext; 4], [[Ext; 4]; 4]) {
    let [r0, r1] = chart.rows();
    let res = f.restrict(&r0, &r1);
    let z = f.zero();
    let q2 = f.restrict_partial(chart.perm[2], &r0, &r1);
    let q3 = f.restrict_partial(chart.perm[3], &r0, &r1);
    // ∂/∂a = s·F_{p₂}, ∂/∂b = t·F_{p₂}, ∂/∂c = s·F_{p₃}, ∂/∂d = t·F_{p₃}
    let cols = [[q2[0], q2[1], q2[2], z], [z, q2[0], q2[1], q2[2]], [q3[0], q3[1], q3[2], z], [z, q3[0], q3[1], q3[2]]];
    let jac = std::array::from_fn(|r| std::array::from_fn(|c| cols[c][r]));
    (res, jac)
}

/// Solves J·x = r by elimination with unit pivots.
fn solve4(mut j: [[Ext; 4]; 4], mut r: [Ext; 4]) -> Result<[Ext; 4], PadicError> {
    for col in 0..4 {
        let piv = (col..4).find(|&row| j[row][col].is_unit()).ok_or(PadicError::SingularJacobian)?;
        j.swap(col, piv);
        r.swap(col, piv);
        let inv = j[col][col].inv()?;
        for k in 0..4 {
            j[col][k] = j[col][k].mul(inv);
        }
        r[col] = r[col].mul(inv);
        for row in 0..4 {
            if row != col {
                let m = j[row][col];
                for k in 0..4 {
                    j[row][k] = j[row][k].sub(m.mul(j[col][k]));
                }
                r[row] = r[row].sub(m.mul(r[col]));
            }
        }
    }
    Ok(r)
}

/// Lifts a line of the reduction to a line whose restricted cubic vanishes
/// mod 2^N, by Newton iteration on the four chart coefficients.
pub fn hensel_lift_line(f: &PadicCubic, line: &ProjLine, start: Option<LineChart>) -> Result<LineLift, PadicError> {
    let n = f.precision();
    let rows = line.rows();
    let field = residue_field_for(f, &[rows[0], rows[1]].concat());
    let s = f.reduction(&field)?;
    if s.intersect_line(line).tag != CycleTag::LineInSurface {
        return Err(PadicError::LineNotOnReduction(line.format()));
    }
    let canonical = LineChart::lift(line, n);
    let mut chart = match start {
        Some(c) => {
            if c.perm != canonical.perm || c.reduce() != canonical.reduce() {
                return Err(PadicError::BadStart(line.format()));
            }
            LineChart { perm: c.perm, coeffs: c.coeffs.map(|x| x.with_precision(n)) }
        }
        None => canonical,
    };
    let mut residuals = Vec::new();
    for _ in 0..MAX_NEWTON_STEPS {
        let (res, jac) = line_system(f, &chart);
        let v = res.iter().map(|c| c.valuation()).reduce(Valuation::min).unwrap();
        check_doubling(&mut residuals, v, n)?;
        if full(v, n) {
            return Ok(LineLift { chart, residuals });
        }
        let delta = solve4(jac, res)?;
        for k in 0..4 {
            chart.coeffs[k] = chart.coeffs[k].sub(delta[k]);
        }
    }
    Err(PadicError::NewtonStall { step: MAX_NEWTON_STEPS, valuation: residuals.last().unwrap().to_string() })
}

/// The third intersection point of a line with the surface.
#[derive(Clone, Debug)]
pub struct ThirdPoint {
    pub point: PadicPoint,
    /// Bits lost when dividing out a common power of 2.
    pub loss: u32,
    /// Valuation of F at the result.
    pub residual: Valuation,
    /// The reduction coincides with the reduction of an input point.
    pub tangential: bool,
}

/// P₁ ∘ P₂ over Z₂[θ] by deflating the two known roots of the restricted
/// cubic. Nearby inputs are handled by parametrizing with the scaled
/// difference D = (P₂ − P₁)/2^v, whose roots are τ = 0, 2^v; the third
/// root follows from the sum of roots.
pub fn collinear_third_padic(f: &PadicCubic, p1: &PadicPoint, p2: &PadicPoint) -> Result<ThirdPoint, PadicError> {
    let n = f.precision().min(p1.precision()).min(p2.precision());
    let scale = p2.coords[p1.chart];
    let v3 = if scale.is_unit() {
        let inv = scale.inv()?;
        let diff: [Ext; 4] = std::array::from_fn(|k| p2.coords[k].mul(inv).sub(p1.coords[k]));
        let v = diff.iter().map(|c| c.valuation()).reduce(Valuation::min).unwrap();
        let Valuation::Exact(v) = v else {
            return Err(PadicError::Unsupported("coincident points; use the tangent section".into()));
        };
        let d = diff.map(|c| c.shr_exact(v).unwrap());
        let e = f.restrict(&p1.coords, &d);
        let two_v = Ext::one(n).shl(v);
        // τ₃ = −e₂/e₃ − 2^v, written homogeneously as (e₃ : −e₂ − 2^v·e₃)
        let t = e[2].add(two_v.mul(e[3])).neg();
        std::array::from_fn(|k| e[3].mul(p1.coords[k]).add(t.mul(d[k])))
    } else {
        // distinct reductions in different charts: chord formula
        let e = f.restrict(&p1.coords, &p2.coords);
        std::array::from_fn(|k| e[2].mul(p1.coords[k]).sub(e[1].mul(p2.coords[k])))
    };
    let (point, loss) = PadicPoint::normalize(v3)
        .map_err(|_| PadicError::PrecisionExhausted("the line lies in the surface to working precision".into()))?;
    let residual = f.eval(&point.coords).valuation();
    let r = point.reduce();
    let tangential = r == p1.reduce() || r == p2.reduce();
    Ok(ThirdPoint { point, loss, residual, tangential })
}

fn reduced_surface(f: &PadicCubic, pts: &[ProjPoint]) -> Result<Surface, PadicError> {
    let coords: Vec<u32> = pts.iter().flat_map(|p| p.0).collect();
    f.reduction(&residue_field_for(f, &coords))
}

/// Lifts a transversal collinear triple of the reduction: the first two
/// points by Hensel lifting, the third as their collinear third point.
pub fn lift_collinear_triple(f: &PadicCubic, pts: [ProjPoint; 3]) -> Result<[PadicPoint; 3], PadicError> {
    let s = reduced_surface(f, &pts)?;
    for p in &pts {
        if !s.contains(p) {
            return Err(PadicError::NotOnReduction(p.to_string()));
        }
    }
    if pts[0] == pts[1] || pts[0] == pts[2] || pts[1] == pts[2] {
        return Err(PadicError::Unsupported("coincident reductions".into()));
    }
    let line = ProjLine::through(s.field(), pts[0].0, pts[1].0)?;
    if !line.contains(s.field(), &pts[2]) {
        return Err(PadicError::Unsupported("reductions are not collinear".into()));
    }
    let cycle = s.intersect_line(&line);
    if cycle.tag != CycleTag::Transversal3Rational {
        return Err(PadicError::Unsupported(format!("{} intersection", cycle.tag.name())));
    }
    let p1 = hensel_lift_point(f, &pts[0], None)?.point;
    let p2 = hensel_lift_point(f, &pts[1], None)?.point;
    let third = collinear_third_padic(f, &p1, &p2)?;
    let p3 = third.point;
    if reduce_onto(&s, &p3)? != pts[2] {
        return Err(PadicError::Unsupported("third point does not reduce to the given point".into()));
    }
    Ok([p1, p2, p3])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_form;

    fn cubic(text: &str) -> PadicCubic {
        PadicCubic::new(&parse_form(text).unwrap(), 64).unwrap()
    }

    fn fermat() -> PadicCubic {
        cubic("domain int\ndegree 3\n3 0 0 0 1\n0 3 0 0 1\n0 0 3 0 1\n0 0 0 3 1\n")
    }

    fn manin() -> PadicCubic {
        cubic("domain padic 64\ndegree 3\n3 0 0 0 1\n0 3 0 0 1\n0 0 3 0 1\n0 0 0 3 [0,1]\n")
    }

    #[test]
    fn fermat_point_lifts_exactly() {
        let f = fermat();
        let l = hensel_lift_point(&f, &ProjPoint([1, 1, 0, 0]), None).unwrap();
        assert_eq!(l.solved, 1);
        assert_eq!(l.point.coords[1], Ext::from_i64(-1, 64));
        assert_eq!(l.residual(), Valuation::AtLeast(64));
    }

    #[test]
    fn manin_point_over_extension() {
        let f = manin();
        let pt = ProjPoint([0, 1, 2, 0]);
        let s = f.reduction(&f.residue_field()).unwrap();
        assert!(s.contains(&pt));
        let l = hensel_lift_point(&f, &pt, None).unwrap();
        assert!(full(f.eval(&l.point.coords).valuation(), 64));
        assert_eq!(l.point.reduce(), pt);
    }

    #[test]
    fn doubling_is_recorded() {
        let f = cubic("domain int\ndegree 3\n3 0 0 0 1\n0 3 0 0 1\n0 0 3 0 1\n0 0 0 3 3\n2 1 0 0 2\n");
        let l = hensel_lift_point(&f, &ProjPoint([1, 1, 0, 0]), None).unwrap();
        for w in l.residuals.windows(2) {
            assert!(w[1].floor() >= (2 * w[0].floor()).min(64));
        }
        assert!(l.residuals.len() > 2);
    }

    #[test]
    fn off_surface_and_singular_rejected() {
        let f = fermat();
        assert!(matches!(hensel_lift_point(&f, &ProjPoint([1, 0, 0, 0]), None), Err(PadicError::NotOnReduction(_))));
        let cone = cubic("domain int\ndegree 3\n3 0 0 0 1\n0 3 0 0 1\n");
        assert!(matches!(
            hensel_lift_point(&cone, &ProjPoint([0, 0, 1, 0]), None),
            Err(PadicError::SingularReduction(_))
        ));
    }

    #[test]
    fn fermat_line_lifts_exactly() {
        let f = fermat();
        let field = make_field(2, 1).unwrap();
        let line = ProjLine::through(&field, [1, 1, 0, 0], [0, 0, 1, 1]).unwrap();
        let l = hensel_lift_line(&f, &line, None).unwrap();
        assert_eq!(l.chart.perm, [0, 2, 1, 3]);
        let m1 = Ext::from_i64(-1, 64);
        let z = Ext::zero(64);
        assert_eq!(l.chart.coeffs, [m1, z, z, m1]);
        // a different start in the same residue class
        let mut start = LineChart::lift(&line, 64);
        start.coeffs[0] = start.coeffs[0].add(Ext::from_i64(6, 64));
        start.coeffs[3] = start.coeffs[3].add(Ext::from_i64(-10, 64));
        let l2 = hensel_lift_line(&f, &line, Some(start)).unwrap();
        assert_eq!(l2.chart, l.chart);
    }

    #[test]
    fn line_off_surface_rejected() {
        let f = fermat();
        let field = make_field(2, 1).unwrap();
        let line = ProjLine::through(&field, [1, 0, 0, 0], [0, 1, 0, 0]).unwrap();
        assert!(matches!(hensel_lift_line(&f, &line, None), Err(PadicError::LineNotOnReduction(_))));
    }

    #[test]
    fn third_point_reduces_like_geometry() {
        let f = cubic("domain int\ndegree 3\n3 0 0 0 1\n0 3 0 0 1\n0 0 3 0 1\n0 0 0 3 1\n1 1 1 0 1\n");
        let field = make_field(2, 1).unwrap();
        let s = f.reduction(&field).unwrap();
        let pts = s.smooth_points().to_vec();
        let mut checked = 0;
        for p in &pts {
            for q in &pts {
                if !s.is_general_position(p, q) {
                    continue;
                }
                let crate::geometry::Composition::Point(r) = s.collinear_third(p, q).unwrap() else { unreachable!() };
                let a = hensel_lift_point(&f, p, None).unwrap().point;
                let b = hensel_lift_point(&f, q, None).unwrap().point;
                let t = collinear_third_padic(&f, &a, &b).unwrap();
                assert_eq!(t.point.reduce(), r);
                assert!(full(t.residual, 64 - 3 * t.loss));
                checked += 1;
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn triple_lift_and_order() {
        let f = cubic("domain int\ndegree 3\n3 0 0 0 1\n0 3 0 0 1\n0 0 3 0 1\n0 0 0 3 1\n1 1 1 0 1\n");
        let s = f.reduction(&make_field(2, 1).unwrap()).unwrap();
        let tri = s
            .collinear_triples()
            .into_iter()
            .find(|t| t[0] != t[1] && t[1] != t[2] && t[0] != t[2])
            .expect("a transversal triple");
        let pts = tri.map(|i| s.smooth_points()[i]);
        let lifted = lift_collinear_triple(&f, pts).unwrap();
        for p in &lifted {
            assert!(full(f.eval(&p.coords).valuation(), 60));
        }
        let swapped = lift_collinear_triple(&f, [pts[1], pts[0], pts[2]]).unwrap();
        assert_eq!(swapped[0], lifted[1]);
        assert_eq!(swapped[1], lifted[0]);
        assert_eq!(swapped[2].distance_valuation(&lifted[2]).unwrap().floor(), 64);
    }

    #[test]
    fn coincident_points_rejected() {
        let f = fermat();
        let p = hensel_lift_point(&f, &ProjPoint([1, 1, 0, 0]), None).unwrap().point;
        assert!(matches!(collinear_third_padic(&f, &p, &p), Err(PadicError::Unsupported(_))));
    }
}
