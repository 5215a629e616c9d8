//! Named end-to-end checks. Each scenario backs exactly one acceptance
//! criterion and reports every assertion with an anchor describing the
//! claim it checks.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::algebra::{emit_form, hessian_vanishes_mod2, make_field, parse_form, Form};
use crate::equivalence::oracle::{brute_force_universal, MAX_ORACLE_POINTS};
use crate::equivalence::{
    build_cml, class_compose, intersect_partitions, property_equivalence, universal_equivalence, verify_cml_axioms,
    Collinearity,
};
use crate::geometry::{CycleTag, ProjPoint, Surface};
use crate::padic::{
    hensel_lift_line, hensel_lift_point, lift_collinear_triple, phi1_transform, tangent_limit_experiment, LineChart,
    PadicCubic, QuadExtScalar as Ext,
};

use super::badlocus::{run_badlocus, BADLOCUS_FIELDS};
use super::builtins;
use super::census::{census_f2, spot_check, DEFAULT_CENSUS_BOUND};
use super::lift::collinearity_valuation;
use super::HarnessError;

#[derive(Clone, Debug)]
pub struct Assertion {
    pub label: String,
    pub anchor: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct ScenarioResult {
    pub name: &'static str,
    pub criterion: u32,
    pub assertions: Vec<Assertion>,
    pub elapsed: Duration,
}

impl ScenarioResult {
    pub fn passed(&self) -> bool {
        !self.assertions.is_empty() && self.assertions.iter().all(|a| a.pass)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "scenario {} (criterion {})", self.name, self.criterion).unwrap();
        for a in &self.assertions {
            let tag = if a.pass { "PASS" } else { "FAIL" };
            writeln!(out, "  [{tag}] {} [anchor: {}] {}", a.label, a.anchor, a.detail).unwrap();
        }
        writeln!(out, "result: {}", if self.passed() { "PASS" } else { "FAIL" }).unwrap();
        out
    }
}

/// Knobs shared by all scenarios.
#[derive(Clone, Copy, Debug)]
pub struct Context {
    pub jobs: usize,
    pub seed: u64,
}

impl Default for Context {
    fn default() -> Self {
        Self { jobs: 0, seed: 20240601 }
    }
}

pub struct Scenario {
    pub name: &'static str,
    pub criterion: u32,
    pub summary: &'static str,
    run: fn(&Context, &mut Checks) -> Result<(), HarnessError>,
}

#[derive(Default)]
pub struct Checks(Vec<Assertion>);

impl Checks {
    fn check(&mut self, label: impl Into<String>, anchor: &'static str, pass: bool, detail: impl Into<String>) {
        self.0.push(Assertion { label: label.into(), anchor, pass, detail: detail.into() });
    }
}

pub const SCENARIOS: [Scenario; 10] = [
    Scenario { name: "v1-classes", criterion: 1, summary: "class table of the transformed reduction", run: v1_classes },
    Scenario {
        name: "hessian-exceptional",
        criterion: 2,
        summary: "one-point reduction with nonzero H*",
        run: hessian_exceptional,
    },
    Scenario { name: "manin-gf4", criterion: 3, summary: "Manin's cubic over GF(4)", run: manin_gf4 },
    Scenario { name: "census-f2", criterion: 4, summary: "exhaustive GF(2) census", run: census },
    Scenario { name: "bounds", criterion: 5, summary: "bad-locus and point-count bounds", run: bounds },
    Scenario { name: "hensel", criterion: 6, summary: "Hensel lifting contracts", run: hensel },
    Scenario { name: "phi1", criterion: 7, summary: "coordinate scaling transform", run: phi1 },
    Scenario { name: "tangent-limit", criterion: 8, summary: "secants converging to a tangent", run: tangent_limit },
    Scenario { name: "loop-theory", criterion: 9, summary: "loop axioms on golden surfaces", run: loop_theory },
    Scenario { name: "oracle-equivalence", criterion: 10, summary: "closure vs brute force", run: oracle_equivalence },
];

pub fn find(name: &str) -> Option<&'static Scenario> {
    SCENARIOS.iter().find(|s| s.name == name)
}

pub fn run_scenario(s: &Scenario, ctx: &Context) -> ScenarioResult {
    let start = Instant::now();
    let mut checks = Checks::default();
    if let Err(e) = (s.run)(ctx, &mut checks) {
        checks.check("scenario completed", "no error raised", false, e.to_string());
    }
    ScenarioResult { name: s.name, criterion: s.criterion, assertions: checks.0, elapsed: start.elapsed() }
}

/// Surfaces used by the structural suites, with names.
pub fn golden_surfaces() -> Result<Vec<(&'static str, Surface)>, HarnessError> {
    let gf2 = make_field(2, 1)?;
    let gf4 = make_field(2, 2)?;
    Ok(vec![
        ("v1", Surface::new(builtins::v1())?),
        ("w", Surface::new(builtins::w())?),
        ("eq2-reduction", Surface::over(&builtins::eq2([1, 1, 1]), &gf2)?),
        ("fermat-gf2", Surface::new(builtins::fermat_gf2())?),
        ("fermat-gf4", Surface::over(&builtins::fermat_gf2(), &gf4)?),
        ("manin-gf4", Surface::new(builtins::manin_gf4())?),
    ])
}

fn pts(v: &[[u32; 4]]) -> Vec<ProjPoint> {
    v.iter().map(|&p| ProjPoint(p)).collect()
}

fn v1_classes(_: &Context, c: &mut Checks) -> Result<(), HarnessError> {
    const A: &str = "class table of the transformed reduction";
    let s = Surface::new(builtins::v1())?;
    let expected = pts(&[[1, 0, 0, 0], [1, 0, 0, 1], [1, 0, 1, 0], [1, 0, 1, 1]]);
    c.check(
        "nonsingular rational points are the four listed",
        A,
        s.smooth_points() == expected.as_slice(),
        format!("{:?}", s.smooth_points().iter().map(|p| p.to_string()).collect::<Vec<_>>()),
    );
    let col = Collinearity::new(&s);
    let u = universal_equivalence(&col);
    let classes = u.classes();
    c.check("universal equivalence is {X0} ∪ {X1}", A, classes == vec![vec![0], vec![1, 2, 3]], format!("{classes:?}"));
    let x0x0 = class_compose(&col, &u, 0, 0)?;
    let x1x1 = class_compose(&col, &u, 1, 1)?;
    c.check("X0 ∘ X0 = X1", A, x0x0 == 1, format!("class {x0x0}"));
    c.check("X1 ∘ X1 = X1", A, x1x1 == 1, format!("class {x1x1}"));
    Ok(())
}

fn hessian_exceptional(_: &Context, c: &mut Checks) -> Result<(), HarnessError> {
    const A: &str = "the normalized Hessian does not vanish mod 2";
    const B: &str = "reduction has a single Eckardt point";
    let f = builtins::eq2([1, 1, 1]);
    let s = Surface::over(&f, &make_field(2, 1)?)?;
    c.check("exactly one rational point", B, s.points().len() == 1, format!("n = {}", s.points().len()));
    let eck = s.points().first().map(|p| s.is_eckardt(p)).transpose()?.unwrap_or(false);
    c.check("the point is Eckardt", B, eck, s.points().first().map(|p| p.to_string()).unwrap_or_default());
    c.check("no rational lines", B, s.lines().is_empty(), format!("{} lines", s.lines().len()));
    let vanishes = hessian_vanishes_mod2(&f)?;
    c.check("H* mod 2 is nonzero", A, !vanishes, format!("vanishes = {vanishes}"));
    Ok(())
}

fn manin_gf4(_: &Context, c: &mut Checks) -> Result<(), HarnessError> {
    const A: &str = "q = 4 with n = 9 exceptional classes";
    let s = Surface::new(builtins::manin_gf4())?;
    let n = s.points().len();
    c.check("exactly 9 rational points", A, n == 9, format!("n = {n}"));
    c.check("no rational lines", A, s.lines().is_empty(), format!("{} lines", s.lines().len()));
    let eck = s.points().iter().map(|p| s.is_eckardt(p)).collect::<Result<Vec<_>, _>>()?;
    let count = eck.iter().filter(|&&e| e).count();
    c.check("all points Eckardt", A, count == 9, format!("{count} Eckardt"));
    let col = Collinearity::new(&s);
    let u = universal_equivalence(&col);
    c.check("9 singleton classes", A, u.class_count() == 9, format!("{} classes", u.class_count()));
    let t = build_cml(&col, &u, 0)?;
    let r = verify_cml_axioms(&t);
    c.check("CML axioms hold", A, r.is_cml(), r.failures.join("; "));
    c.check("exponent 3", A, r.exponent() == 3, format!("exponent {}", r.exponent()));
    Ok(())
}

fn census(ctx: &Context, c: &mut Checks) -> Result<(), HarnessError> {
    const A: &str = "either q = 2 and n = 3, or one class";
    const B: &str = "census soundness spot-check";
    let cen = census_f2(DEFAULT_CENSUS_BOUND, ctx.jobs).map_err(HarnessError::Usage)?;
    let s = &cen.summary;
    c.check("all 2^20 forms visited", A, s.forms == 1 << 20, format!("{} forms", s.forms));
    c.check(
        "non-exceptional smooth surfaces with n >= 2 have one class",
        A,
        s.violations.is_empty(),
        format!("{} violations", s.violations.len()),
    );
    let all_three = s.exceptional_n.iter().all(|&(n, _)| n == 3);
    c.check("exceptional surfaces have n = 3 singleton classes", A, all_three, format!("{:?}", s.exceptional_n));
    c.check("an exceptional surface exists", A, s.exceptional > 0, format!("{} exceptional", s.exceptional));
    c.check(
        "point counts within [q^2 - 2q + 1, q^2 + 7q + 1]",
        "point-count window",
        s.window_violations == 0,
        format!("{} outside", s.window_violations),
    );
    let bad = spot_check(&cen, 1000, ctx.seed);
    c.check("1000 records agree with the slow path", B, bad.is_empty(), format!("{} disagreements", bad.len()));
    Ok(())
}

fn bounds(ctx: &Context, c: &mut Checks) -> Result<(), HarnessError> {
    const A: &str = "|B_P| <= 9Q + 56 sqrt(Q) + 9";
    const B: &str = "n >= Q^2 - 2Q + 1";
    const G: &str = "a general-position partner exists";
    let r = run_badlocus(&BADLOCUS_FIELDS, 100, ctx.seed)?;
    for q in BADLOCUS_FIELDS {
        let rows: Vec<_> = r.rows.iter().filter(|x| x.q == q).collect();
        let bad = rows.iter().filter(|x| !x.bound_ok()).count();
        c.check(
            format!("q = {q}: bad locus bound on {} samples", rows.len()),
            A,
            bad == 0 && rows.len() == 100,
            format!("max ratio {:.3}", r.max_ratio(q).unwrap_or(0.0)),
        );
        let low = rows.iter().filter(|x| !x.weil_ok()).count();
        let min_n = rows.iter().map(|x| x.n).min().unwrap_or(0);
        c.check(format!("q = {q}: point-count lower bound"), B, low == 0, format!("min n = {min_n}"));
    }
    let found = r.partners.iter().filter(|x| x.partner.is_some()).count();
    c.check(
        "Manin's cubic over GF(16): sampled pairs have a common partner",
        G,
        r.partners_exist() && !r.partners.is_empty(),
        format!("{found}/{}", r.partners.len()),
    );
    Ok(())
}

/// Fermat's cubic plus 2XYZ: its lines mod 2 need genuine Newton steps.
fn perturbed_fermat() -> Form {
    parse_form("domain int\ndegree 3\n3 0 0 0 1\n0 3 0 0 1\n0 0 3 0 1\n0 0 0 3 1\n1 1 1 0 2\n").expect("valid form")
}

fn hensel(_: &Context, c: &mut Checks) -> Result<(), HarnessError> {
    const A: &str = "smooth points lift with quadratic convergence";
    const L: &str = "a line of the reduction lifts uniquely";
    const T: &str = "collinear triples lift to collinear points";
    let n = 64;
    let cases: [(&str, Form, [u32; 4]); 4] = [
        ("eq2", builtins::eq2([1, 1, 1]), [1, 0, 0, 0]),
        ("fermat+2xyz", perturbed_fermat(), [1, 1, 0, 0]),
        ("manin", builtins::manin_padic(), [0, 1, 2, 0]),
        ("phi1(eq2)", phi1_transform(&builtins::eq2([1, 1, 1]))?, [1, 0, 1, 1]),
    ];
    for (name, f, p) in cases {
        let cubic = PadicCubic::new(&f, n)?;
        let l = hensel_lift_point(&cubic, &ProjPoint(p), None)?;
        let doubling = l.residuals.windows(2).all(|w| w[1].floor() >= (2 * w[0].floor()).min(n));
        let steps: Vec<String> = l.residuals.iter().map(|v| v.to_string()).collect();
        c.check(
            format!("{name} point {}: residual >= {n} with doubling", ProjPoint(p)),
            A,
            l.residual().floor() >= n && doubling,
            steps.join(" "),
        );
    }

    let cubic = PadicCubic::new(&perturbed_fermat(), n)?;
    let k = make_field(2, 1)?;
    let red = cubic.reduction(&k)?;
    let line = *red.lines().first().ok_or_else(|| HarnessError::Usage("no line on the reduction".into()))?;
    let first = hensel_lift_line(&cubic, &line, None)?;
    let mut other = LineChart::lift(&line, n);
    for (i, x) in other.coeffs.iter_mut().enumerate() {
        *x = x.add(Ext::from_i64(2 * (i as i64 + 1) + 4, n));
    }
    let second = hensel_lift_line(&cubic, &line, Some(other))?;
    c.check(
        format!("line {line}: residual >= {n}"),
        L,
        first.residual().floor() >= n && second.residual().floor() >= n,
        format!("{} / {}", first.residual(), second.residual()),
    );
    c.check(
        "two independent starts agree mod 2^64",
        L,
        first.chart.perm == second.chart.perm && first.chart.coeffs == second.chart.coeffs,
        first.chart.to_string(),
    );

    // every transversal triple of rational points on the reduction
    let mut lifted = 0;
    let mut worst: Option<String> = None;
    for l in crate::geometry::lines_in_p3(&k)?.iter() {
        let cyc = red.intersect_line(l);
        if cyc.tag != CycleTag::Transversal3Rational {
            continue;
        }
        let m = cyc.multiset();
        let t = lift_collinear_triple(&cubic, [m[0], m[1], m[2]])?;
        let prec = t.iter().map(|p| p.precision()).min().unwrap();
        let zero = t.iter().all(|p| cubic.eval(&p.coords).valuation().floor() >= prec);
        let col = collinearity_valuation(&t).floor() >= prec;
        if !(zero && col) && worst.is_none() {
            worst = Some(format!("{} {} {}", m[0], m[1], m[2]));
        }
        lifted += 1;
    }
    c.check(
        format!("{lifted} transversal triples: residuals vanish and points are collinear"),
        T,
        lifted > 0 && worst.is_none(),
        worst.unwrap_or_else(|| "all at working precision".into()),
    );
    Ok(())
}

fn phi1(_: &Context, c: &mut Checks) -> Result<(), HarnessError> {
    const A: &str = "T1 -> 8 T1', T2 -> 2 T2', T3 -> 2 T3'";
    let r = phi1_transform(&builtins::eq2([1, 1, 1]));
    c.check("division by 8 is exact", A, r.is_ok(), r.as_ref().err().map(|e| e.to_string()).unwrap_or_default());
    let f1 = r?;
    let reduced = emit_form(&f1.reduce(&make_field(2, 1)?)?);
    let expected = emit_form(&builtins::v1());
    c.check("reduction mod 2 matches byte for byte", A, reduced == expected, reduced.replace('\n', " | "));
    Ok(())
}

fn tangent_limit(_: &Context, c: &mut Checks) -> Result<(), HarnessError> {
    const A: &str = "secants converge to a tangent line";
    const B: &str = "the limit line is defined over the base";
    let cubic = PadicCubic::new(&builtins::manin_padic(), 64)?;
    let t = tangent_limit_experiment(&cubic, &ProjPoint([1, 1, 0, 0]), 10, None)?;
    let vals: Vec<String> = t.rows.iter().map(|r| r.v_min.to_string()).collect();
    c.check(
        "v_min(r_i - R) nondecreasing over i = 1..10",
        A,
        t.rows.len() == 10 && t.is_nondecreasing(),
        vals.join(" "),
    );
    c.check("every secant is base-rational", B, t.all_lines_rational(), format!("offset c = {}", t.offset_constant()));
    Ok(())
}

fn loop_theory(_: &Context, c: &mut Checks) -> Result<(), HarnessError> {
    const A: &str = "classes form a commutative Moufang loop";
    const B: &str = "U = U2 ∩ U3";
    for (name, s) in golden_surfaces()? {
        let col = Collinearity::new(&s);
        if col.is_empty() {
            continue;
        }
        let u = universal_equivalence(&col);
        for base in u.class_labels() {
            let t = build_cml(&col, &u, base)?;
            let r = verify_cml_axioms(&t);
            c.check(
                format!("{name} base {base}: identity, Latin square, commutative, Moufang"),
                A,
                r.is_cml(),
                r.failures.join("; "),
            );
            let orders: Vec<String> = r.orders.iter().map(|o| o.to_string()).collect();
            c.check(
                format!("{name} base {base}: orders divide 6 and split into 2- and 3-parts"),
                A,
                r.orders_divide_six() && r.split.is_some(),
                orders.join(" "),
            );
        }
        let u2 = property_equivalence(&col, 2)?;
        let u3 = property_equivalence(&col, 3)?;
        let meet = intersect_partitions(&u2, &u3)?;
        c.check(
            format!("{name}: U = U2 ∩ U3"),
            B,
            meet.labels() == u.labels(),
            format!("{} = {} ∩ {}", u.class_count(), u2.class_count(), u3.class_count()),
        );
    }
    Ok(())
}

fn oracle_equivalence(_: &Context, c: &mut Checks) -> Result<(), HarnessError> {
    const A: &str = "the universal equivalence is the finest admissible one";
    for (name, s) in golden_surfaces()? {
        let n = s.smooth_points().len();
        if n > MAX_ORACLE_POINTS {
            continue;
        }
        let closure = universal_equivalence(&Collinearity::new(&s));
        let brute = brute_force_universal(&s)?;
        c.check(
            format!("{name} ({n} points): closure equals brute force"),
            A,
            closure.labels() == brute.labels(),
            format!("{:?}", closure.classes()),
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_criteria_cover_one_to_ten() {
        let mut names: Vec<_> = SCENARIOS.iter().map(|s| s.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), SCENARIOS.len());
        let crit: Vec<u32> = SCENARIOS.iter().map(|s| s.criterion).collect();
        assert_eq!(crit, (1..=10).collect::<Vec<_>>());
        assert!(find("no-such").is_none());
    }

    #[test]
    fn fast_scenarios_pass() {
        let ctx = Context::default();
        for name in [
            "v1-classes",
            "hessian-exceptional",
            "manin-gf4",
            "phi1",
            "tangent-limit",
            "loop-theory",
            "oracle-equivalence",
            "hensel",
        ] {
            let r = run_scenario(find(name).unwrap(), &ctx);
            assert!(r.passed(), "{}", r.render());
        }
    }
}
