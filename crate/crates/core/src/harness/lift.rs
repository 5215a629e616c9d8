//! The `lift` command: Hensel lifts of points, lines and collinear triples,
//! and the tangent-limit table.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::algebra::{make_field, Form};
use crate::geometry::{ProjLine, ProjPoint};
use crate::padic::{
    hensel_lift_line, hensel_lift_point, lift_collinear_triple, tangent_limit_experiment, PadicCubic, PadicPoint,
    QuadExtScalar as Ext, Valuation,
};

use super::{Format, HarnessError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftMode {
    Point,
    Line,
    Triple,
    TangentLimit,
}

impl FromStr for LiftMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "point" => Ok(LiftMode::Point),
            "line" => Ok(LiftMode::Line),
            "triple" => Ok(LiftMode::Triple),
            "tangent-limit" => Ok(LiftMode::TangentLimit),
            _ => Err(format!("unknown lift mode `{s}` (point, line, triple, tangent-limit)")),
        }
    }
}

/// Parses `a,b,c,d;a,b,c,d;...` into normalized points over GF(4)
/// encodings (0, 1, θ = 2, θ² = 3).
pub fn parse_points(text: &str) -> Result<Vec<ProjPoint>, HarnessError> {
    let k = make_field(2, 2)?;
    let bad = |why: &str| HarnessError::Usage(format!("bad point list `{text}`: {why}"));
    text.split(';')
        .map(|part| {
            let c: Vec<u32> = part
                .trim()
                .trim_matches(|ch| ch == '(' || ch == ')')
                .split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|_| bad("coordinates are integers 0..3")))
                .collect::<Result<_, _>>()?;
            let v: [u32; 4] = c.try_into().map_err(|_| bad("need four coordinates"))?;
            if v.iter().any(|&x| x > 3) {
                return Err(bad("coordinates are integers 0..3"));
            }
            ProjPoint::normalize(&k, v).ok_or_else(|| bad("zero vector"))
        })
        .collect()
}

fn minor3(rows: [&[Ext; 4]; 3], cols: [usize; 3]) -> Ext {
    let e = |r: usize, c: usize| rows[r][cols[c]];
    let term = |a: usize, b: usize, c: usize| e(0, a).mul(e(1, b).mul(e(2, c)));
    term(0, 1, 2).add(term(1, 2, 0)).add(term(2, 0, 1)).sub(term(2, 1, 0)).sub(term(0, 2, 1)).sub(term(1, 0, 2))
}

/// Minimum valuation of the 3×3 minors: collinear to that precision.
pub fn collinearity_valuation(pts: &[PadicPoint; 3]) -> Valuation {
    let rows = [&pts[0].coords, &pts[1].coords, &pts[2].coords];
    [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
        .iter()
        .map(|&c| minor3(rows, c).valuation())
        .reduce(Valuation::min)
        .unwrap()
}

pub struct LiftRequest<'a> {
    pub form: &'a Form,
    pub mode: LiftMode,
    pub points: Vec<ProjPoint>,
    pub precision: u32,
    pub depth: u32,
}

pub fn run_lift(req: &LiftRequest<'_>, format: Format) -> Result<String, HarnessError> {
    let f = PadicCubic::new(req.form, req.precision)?;
    let need = |k: usize| -> Result<(), HarnessError> {
        if req.points.len() != k {
            return Err(HarnessError::Usage(format!("mode needs {k} point(s), got {}", req.points.len())));
        }
        Ok(())
    };
    let mut out = String::new();
    let mut kv = |k: &str, v: String| match format {
        Format::Text => writeln!(out, "{k}: {v}").unwrap(),
        Format::Tsv => writeln!(out, "{k}\t{v}").unwrap(),
    };
    match req.mode {
        LiftMode::Point => {
            need(1)?;
            let l = hensel_lift_point(&f, &req.points[0], None)?;
            kv("precision", req.precision.to_string());
            kv("reduction", req.points[0].to_string());
            kv("solved coordinate", l.solved.to_string());
            kv("point", l.point.to_string());
            let steps: Vec<String> = l.residuals.iter().map(|v| v.to_string()).collect();
            kv("residual per step", steps.join(" "));
            kv("residual", l.residual().to_string());
        }
        LiftMode::Line => {
            need(2)?;
            let k = f.residue_field();
            let line = ProjLine::through(&k, req.points[0].0, req.points[1].0)?;
            let l = hensel_lift_line(&f, &line, None)?;
            kv("precision", req.precision.to_string());
            kv("reduction", line.to_string());
            kv("chart", l.chart.to_string());
            kv("base rational", l.chart.is_base().to_string());
            let steps: Vec<String> = l.residuals.iter().map(|v| v.to_string()).collect();
            kv("residual per step", steps.join(" "));
            kv("residual", l.residual().to_string());
        }
        LiftMode::Triple => {
            need(3)?;
            let pts = lift_collinear_triple(&f, [req.points[0], req.points[1], req.points[2]])?;
            kv("precision", req.precision.to_string());
            for (i, p) in pts.iter().enumerate() {
                kv(&format!("P{}", i + 1), p.to_string());
                kv(&format!("P{} residual", i + 1), f.eval(&p.coords).valuation().to_string());
            }
            kv("collinearity minors", collinearity_valuation(&pts).to_string());
        }
        LiftMode::TangentLimit => {
            need(1)?;
            let t = tangent_limit_experiment(&f, &req.points[0], req.depth, None)?;
            if format == Format::Tsv {
                return Ok(t.to_tsv());
            }
            kv("precision", req.precision.to_string());
            kv("base point", t.base_point.to_string());
            kv("limit point", t.limit.to_string());
            kv("free coordinate", t.free.to_string());
            kv("solved coordinate", t.solved.to_string());
            kv("nondecreasing", t.is_nondecreasing().to_string());
            kv("all lines rational", t.all_lines_rational().to_string());
            kv("offset constant", t.offset_constant().to_string());
            out.push_str(&t.to_tsv());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::builtins;

    #[test]
    fn point_list_parsing() {
        let p = parse_points("(1,0,0,0); 0,2,2,0").unwrap();
        assert_eq!(p, vec![ProjPoint([1, 0, 0, 0]), ProjPoint([0, 1, 1, 0])]);
        assert!(parse_points("1,0,0").is_err());
        assert!(parse_points("0,0,0,0").is_err());
        assert!(parse_points("1,0,0,4").is_err());
    }

    #[test]
    fn point_on_eq2_reaches_precision() {
        let f = builtins::eq2([1, 1, 1]);
        let req = LiftRequest {
            form: &f,
            mode: LiftMode::Point,
            points: parse_points("1,0,0,0").unwrap(),
            precision: 64,
            depth: 0,
        };
        let out = run_lift(&req, Format::Text).unwrap();
        assert!(out.contains("residual: >=64\n"), "{out}");
    }

    #[test]
    fn fermat_line_and_triple() {
        let f = builtins::fermat_int();
        let req = LiftRequest {
            form: &f,
            mode: LiftMode::Line,
            points: parse_points("1,0,0,1;0,1,1,0").unwrap(),
            precision: 64,
            depth: 0,
        };
        let out = run_lift(&req, Format::Text).unwrap();
        assert!(out.contains("residual: >=64\n"), "{out}");
        let req = LiftRequest { mode: LiftMode::Point, points: vec![], ..req };
        assert_eq!(run_lift(&req, Format::Text).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn tangent_limit_tsv() {
        let f = builtins::manin_padic();
        let req = LiftRequest {
            form: &f,
            mode: LiftMode::TangentLimit,
            points: parse_points("1,1,0,0").unwrap(),
            precision: 64,
            depth: 10,
        };
        let out = run_lift(&req, Format::Tsv).unwrap();
        assert_eq!(out.lines().count(), 11);
    }
}
