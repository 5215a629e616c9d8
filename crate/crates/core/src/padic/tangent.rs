//! Secants through conjugate points approaching a base-rational point, and
//! the convergence of their third intersection points.

use crate::algebra::make_field;
use crate::geometry::ProjPoint;

use super::cubic::{PadicCubic, PadicPoint};
use super::lift::{collinear_third_padic, hensel_lift_point, LineChart};
use super::scalar::{QuadExtScalar as Ext, Valuation};
use super::PadicError;

#[derive(Clone, Debug)]
pub struct TangentLimitRow {
    pub depth: u32,
    /// min over coordinates of v(rᵢ − R).
    pub v_min: Valuation,
    /// The secant through Qᵢ and its conjugate has base-rational chart.
    pub rational_line: bool,
    pub loss_bits: u32,
}

#[derive(Clone, Debug)]
pub struct TangentLimitTable {
    pub base_point: PadicPoint,
    /// Third point of the limiting tangent line.
    pub limit: PadicPoint,
    pub free: usize,
    pub solved: usize,
    pub rows: Vec<TangentLimitRow>,
}

impl TangentLimitTable {
    pub fn is_nondecreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].v_min.floor() >= w[0].v_min.floor())
    }

    pub fn all_lines_rational(&self) -> bool {
        self.rows.iter().all(|r| r.rational_line)
    }

    /// Smallest c with v_min ≥ i − c on every row.
    pub fn offset_constant(&self) -> i64 {
        self.rows.iter().map(|r| r.depth as i64 - r.v_min.floor() as i64).max().unwrap_or(0)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("i\tv_min(r_i - R)\trational_line\tloss_bits\n");
        for r in &self.rows {
            out.push_str(&format!("{}\t{}\t{}\t{}\n", r.depth, r.v_min, r.rational_line, r.loss_bits));
        }
        out
    }
}

/// Echelon chart of the line spanned by two vectors whose reductions are
/// independent.
fn chart_through(a: [Ext; 4], b: [Ext; 4]) -> Result<LineChart, PadicError> {
    let degenerate = || PadicError::Unsupported("secant direction degenerates mod 2".into());
    let mut rows = [a, b];
    let p0 = (0..4).find(|&k| rows[0][k].is_unit() || rows[1][k].is_unit()).ok_or_else(degenerate)?;
    if !rows[0][p0].is_unit() {
        rows.swap(0, 1);
    }
    let inv = rows[0][p0].inv()?;
    rows[0] = rows[0].map(|c| c.mul(inv));
    let m = rows[1][p0];
    rows[1] = std::array::from_fn(|k| rows[1][k].sub(m.mul(rows[0][k])));
    let p1 = (0..4).find(|&k| rows[1][k].is_unit()).ok_or_else(degenerate)?;
    let inv = rows[1][p1].inv()?;
    rows[1] = rows[1].map(|c| c.mul(inv));
    let m = rows[0][p1];
    rows[0] = std::array::from_fn(|k| rows[0][k].sub(m.mul(rows[1][k])));
    // no unit precedes p₀ in either row, so p₁ > p₀
    let rest: Vec<usize> = (0..4).filter(|&k| k != p0 && k != p1).collect();
    Ok(LineChart {
        perm: [p0, p1, rest[0], rest[1]],
        coeffs: [rows[0][rest[0]], rows[1][rest[0]], rows[0][rest[1]], rows[1][rest[1]]],
    })
}

/// For i = 1..=depth, perturbs the free coordinate of the lift of `p` by
/// θ·2^i, re-solves the solved coordinate to get Qᵢ, and compares
/// rᵢ = Qᵢ ∘ conj(Qᵢ) with the third point R of the limiting tangent line.
/// The free coordinate defaults to the first one that is neither the chart
/// nor the solved coordinate.
pub fn tangent_limit_experiment(
    f: &PadicCubic,
    p: &ProjPoint,
    depth: u32,
    free: Option<usize>,
) -> Result<TangentLimitTable, PadicError> {
    let n = f.precision();
    if depth == 0 || depth > n / 2 {
        return Err(PadicError::DepthBudget { depth, precision: n });
    }
    let field = make_field(2, if f.needs_extension() || p.0.iter().any(|&c| c > 1) { 2 } else { 1 })?;
    let s = f.reduction(&field)?;
    if !s.contains(p) {
        return Err(PadicError::NotOnReduction(p.to_string()));
    }
    if s.is_singular_point(p) {
        return Err(PadicError::SingularReduction(p.to_string()));
    }
    if !s.lines_through(p).is_empty() {
        return Err(crate::geometry::GeometryError::RationalLineThrough(p.to_string()).into());
    }
    let base = hensel_lift_point(f, p, None)?;
    let bp = base.point;
    if !bp.is_base() {
        return Err(PadicError::NotBaseRational);
    }
    let solved = base.solved;
    let free = match free {
        Some(k) if k < 4 && k != bp.chart && k != solved => k,
        Some(k) => return Err(PadicError::Unsupported(format!("coordinate {k} cannot be the free one"))),
        None => (0..4).find(|&k| k != bp.chart && k != solved).unwrap(),
    };

    // limiting direction D = e_free − (F_free/F_solved)(P)·e_solved
    let g = f.gradient_at(&bp.coords);
    let mut dir = [Ext::zero(n); 4];
    dir[free] = Ext::one(n);
    dir[solved] = g[free].mul(g[solved].inv()?).neg();
    let e = f.restrict(&bp.coords, &dir);
    // F(sP + tD) = t²(e₂s + e₃t) up to the residual of P
    let r_vec = std::array::from_fn(|k| e[3].mul(bp.coords[k]).sub(e[2].mul(dir[k])));
    let (limit, _) = PadicPoint::normalize(r_vec)
        .map_err(|_| PadicError::PrecisionExhausted("limiting tangent line lies in the surface".into()))?;

    let mut rows = Vec::with_capacity(depth as usize);
    for i in 1..=depth {
        let mut start = bp.coords;
        start[free] = start[free].add(Ext::theta(n).shl(i));
        let q = hensel_lift_point(f, p, Some(start))?.point;
        let qc = q.conj();
        if f.eval(&qc.coords).valuation().floor() < n {
            return Err(PadicError::Unsupported("conjugate point is not on the surface".into()));
        }
        let third = collinear_third_padic(f, &q, &qc)?;
        // the secant is spanned by Q and (Q − conj Q)/2^v
        let diff: [Ext; 4] = std::array::from_fn(|k| q.coords[k].sub(qc.coords[k]));
        let v = diff.iter().map(|c| c.valuation().floor()).min().unwrap();
        let d = diff.map(|c| c.shr_exact(v).unwrap());
        let chart = chart_through(q.coords, d)?;
        rows.push(TangentLimitRow {
            depth: i,
            v_min: limit.distance_valuation(&third.point)?,
            rational_line: chart.is_base(),
            loss_bits: third.loss,
        });
    }
    Ok(TangentLimitTable { base_point: bp, limit, free, solved, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_form;

    fn manin() -> PadicCubic {
        let f = parse_form("domain padic 64\ndegree 3\n3 0 0 0 1\n0 3 0 0 1\n0 0 3 0 1\n0 0 0 3 [0,1]\n").unwrap();
        PadicCubic::new(&f, 64).unwrap()
    }

    #[test]
    fn manin_converges() {
        let t = tangent_limit_experiment(&manin(), &ProjPoint([1, 1, 0, 0]), 10, None).unwrap();
        assert_eq!((t.solved, t.free), (1, 2));
        assert_eq!(t.rows.len(), 10);
        assert!(t.is_nondecreasing(), "{}", t.to_tsv());
        assert!(t.all_lines_rational());
        // the limit line {T = 0, X + Y = 0} meets the surface only at P
        assert_eq!(t.limit, t.base_point);
        for r in &t.rows {
            assert!(r.v_min.floor() >= r.depth);
        }
        assert!(t.to_tsv().starts_with("i\tv_min(r_i - R)\trational_line\tloss_bits\n1\t"));
    }

    #[test]
    fn depth_budget() {
        assert!(matches!(
            tangent_limit_experiment(&manin(), &ProjPoint([1, 1, 0, 0]), 40, None),
            Err(PadicError::DepthBudget { .. })
        ));
    }

    #[test]
    fn conjugate_must_stay_on_surface() {
        // perturbing T leaves the conjugate on the conjugate surface only
        assert!(tangent_limit_experiment(&manin(), &ProjPoint([1, 1, 0, 0]), 3, Some(3)).is_err());
    }
}
