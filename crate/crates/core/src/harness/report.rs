//! The `analyze` report: everything computable about one surface over one
//! finite field.

use std::fmt::Write as _;

use crate::algebra::{hessian_vanishes_mod2, make_field, Domain, FieldSpec, Form};
use crate::equivalence::{
    base_independence_check, build_cml, property_equivalence, universal_equivalence, verify_cml_axioms, AxiomReport,
    CmlTable, Collinearity, Partition, MAX_ISOMORPHISM_CLASSES,
};
use crate::geometry::{default_smoothness_bound, singular_points_up_to, ProjPoint, Surface};

use super::{Format, HarnessError};

/// Computed analysis of a surface.
#[derive(Debug)]
pub struct Analysis {
    pub surface: Surface,
    pub bound: u32,
    pub singular: Vec<String>,
    /// `None` when H* is not defined for the input domain.
    pub hessian_vanishes: Option<bool>,
    /// (point, squarefree closure lines)
    pub eckardt: Vec<(ProjPoint, bool)>,
    pub collinearity: Collinearity,
    pub universal: Partition,
    pub u2: Partition,
    pub u3: Partition,
    pub cml: Option<(CmlTable, AxiomReport)>,
    /// `None` when there are too many classes to compare all bases.
    pub base_independent: Option<bool>,
    pub warnings: Vec<String>,
}

impl Analysis {
    /// Number of nonsingular rational points.
    pub fn n(&self) -> usize {
        self.surface.smooth_points().len()
    }

    pub fn is_smooth(&self) -> bool {
        self.singular.is_empty()
    }
}

fn is_power_of(mut x: usize, b: usize) -> bool {
    if x == 0 {
        return false;
    }
    while x % b == 0 {
        x /= b;
    }
    x == 1
}

/// The field a form is analyzed over when none is requested: its own field,
/// or the residue field for integer and 2-adic forms.
pub fn natural_field(f: &Form) -> FieldSpec {
    match f.domain() {
        Domain::Field(k) => k.clone(),
        Domain::Int => make_field(2, 1).unwrap(),
        Domain::Padic(_) => {
            crate::padic::PadicCubic::new(f, 4).map(|c| c.residue_field()).unwrap_or_else(|_| make_field(2, 1).unwrap())
        }
    }
}

/// Smoothness bound to use over `k`: the requested one capped by field
/// size, or the default for `k`.
pub fn smoothness_bound(k: &FieldSpec, requested: Option<u32>) -> u32 {
    let cap = {
        let mut e = 1;
        while e < 8 && (k.order() as u64).pow(e + 1) <= crate::algebra::MAX_ORDER {
            e += 1;
        }
        e
    };
    requested.unwrap_or_else(|| default_smoothness_bound(k.order())).min(cap)
}

pub fn analyze(f: &Form, field: Option<&FieldSpec>, bound: Option<u32>) -> Result<Analysis, HarnessError> {
    let k = field.cloned().unwrap_or_else(|| natural_field(f));
    let hessian_vanishes = match f.domain() {
        Domain::Int | Domain::Padic(_) if k.characteristic() == 2 => Some(hessian_vanishes_mod2(f)?),
        Domain::Field(fk) if fk.characteristic() == 2 && fk.degree() <= 2 => Some(hessian_vanishes_mod2(f)?),
        _ => None,
    };
    let surface = Surface::over(f, &k)?;
    let bound = smoothness_bound(&k, bound);
    let report = singular_points_up_to(&surface, bound)?;
    let singular: Vec<String> = report.singular.iter().map(|s| s.to_string()).collect();
    let mut warnings = Vec::new();
    if !singular.is_empty() {
        warnings.push(format!(
            "surface is singular; equivalences use the {} nonsingular rational points",
            surface.smooth_points().len()
        ));
    }
    let mut eckardt = Vec::new();
    for p in surface.smooth_points() {
        let info = surface.eckardt_info(p)?;
        if info.eckardt {
            let sq = info.squarefree.unwrap_or(true);
            if !sq {
                warnings.push(format!("Eckardt point {p} has a repeated closure line"));
            }
            eckardt.push((*p, sq));
        }
    }
    let c = Collinearity::new(&surface);
    let universal = universal_equivalence(&c);
    let u2 = property_equivalence(&c, 2)?;
    let u3 = property_equivalence(&c, 3)?;
    if !is_power_of(u3.class_count(), 3) && !c.is_empty() {
        warnings.push(format!("U3 has {} classes, not a power of 3", u3.class_count()));
    }
    if !is_power_of(u2.class_count(), 2) && !c.is_empty() {
        warnings.push(format!("U2 has {} classes, not a power of 2", u2.class_count()));
    }
    let (cml, base_independent) = if c.is_empty() {
        (None, None)
    } else {
        let t = build_cml(&c, &universal, universal.class_labels()[0])?;
        let r = verify_cml_axioms(&t);
        let bi = if universal.class_count() <= MAX_ISOMORPHISM_CLASSES {
            Some(base_independence_check(&c, &universal)?)
        } else {
            None
        };
        (Some((t, r)), bi)
    };
    Ok(Analysis {
        surface,
        bound,
        singular,
        hessian_vanishes,
        eckardt,
        collinearity: c,
        universal,
        u2,
        u3,
        cml,
        base_independent,
        warnings,
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn class_lines(out: &mut Vec<(String, String)>, key: &str, c: &Collinearity, p: &Partition) {
    out.push((format!("{key} classes"), p.class_count().to_string()));
    for class in p.classes() {
        let pts: Vec<String> = class.iter().map(|&i| c.points[i].to_string()).collect();
        out.push((format!("{key} class {}", class[0]), pts.join(" ")));
    }
}

/// Renders an analysis; both formats carry the same fields in the same order.
pub fn render(a: &Analysis, format: Format) -> String {
    let s = &a.surface;
    let k = s.field();
    let mut kv: Vec<(String, String)> = Vec::new();
    kv.push(("field".into(), format!("GF({})", k.order())));
    kv.push(("modulus".into(), k.modulus_string()));
    kv.push(("smoothness bound".into(), a.bound.to_string()));
    kv.push(("smooth".into(), yes(a.is_smooth()).into()));
    for sp in &a.singular {
        kv.push(("singular point".into(), sp.clone()));
    }
    kv.push((
        "hessian* mod 2".into(),
        match a.hessian_vanishes {
            Some(true) => "zero".into(),
            Some(false) => "nonzero".into(),
            None => "n/a".into(),
        },
    ));
    kv.push(("points".into(), a.n().to_string()));
    for p in s.smooth_points() {
        kv.push(("point".into(), p.to_string()));
    }
    for p in s.rational_singular_points() {
        kv.push(("singular rational point".into(), p.to_string()));
    }
    kv.push(("lines".into(), s.lines().len().to_string()));
    for l in s.lines() {
        kv.push(("line".into(), l.to_string()));
    }
    kv.push(("eckardt".into(), a.eckardt.len().to_string()));
    for (p, sq) in &a.eckardt {
        kv.push(("eckardt point".into(), format!("{p} squarefree={}", yes(*sq))));
    }
    let c = &a.collinearity;
    class_lines(&mut kv, "universal", c, &a.universal);
    class_lines(&mut kv, "U2", c, &a.u2);
    class_lines(&mut kv, "U3", c, &a.u3);
    if let Some((t, r)) = &a.cml {
        kv.push(("cml base".into(), t.labels[t.base].to_string()));
        kv.push(("cml identity".into(), yes(r.identity).into()));
        kv.push(("cml latin square".into(), yes(r.latin_square).into()));
        kv.push(("cml commutative".into(), yes(r.commutative).into()));
        kv.push(("cml moufang".into(), yes(r.moufang).into()));
        kv.push(("cml associative".into(), yes(r.associative).into()));
        kv.push(("cml exponent".into(), r.exponent().to_string()));
        let orders: Vec<String> = r.orders.iter().map(|o| o.to_string()).collect();
        kv.push(("cml orders".into(), orders.join(" ")));
        if let Some(sp) = &r.split {
            let show = |v: &[usize]| v.iter().map(|&i| t.labels[i].to_string()).collect::<Vec<_>>().join(" ");
            kv.push(("cml 2-part".into(), show(&sp.two_part)));
            kv.push(("cml 3-part".into(), show(&sp.three_part)));
        }
        for f in &r.failures {
            kv.push(("cml failure".into(), f.clone()));
        }
        if let Some(bi) = a.base_independent {
            kv.push(("cml base independent".into(), yes(bi).into()));
        }
    }
    for w in &a.warnings {
        kv.push(("warning".into(), w.clone()));
    }
    let mut out = String::new();
    match format {
        Format::Text => {
            for (key, v) in &kv {
                writeln!(out, "{key}: {v}").unwrap();
            }
            if let Some((t, _)) = &a.cml {
                out.push_str("cml table:\n");
                out.push_str(&t.to_tsv());
            }
        }
        Format::Tsv => {
            out.push_str("key\tvalue\n");
            for (key, v) in &kv {
                writeln!(out, "{key}\t{v}").unwrap();
            }
            if let Some((t, _)) = &a.cml {
                for row in t.to_tsv().lines() {
                    writeln!(out, "cml table\t{row}").unwrap();
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::builtins;

    #[test]
    fn v1_report() {
        let a = analyze(&builtins::v1(), None, None).unwrap();
        assert_eq!(a.n(), 4);
        assert_eq!(a.surface.lines().len(), 0);
        assert_eq!(a.universal.class_count(), 2);
        assert!(!a.is_smooth());
        let text = render(&a, Format::Text);
        assert!(text.contains("points: 4\n"));
        assert!(text.contains("universal classes: 2\n"));
        assert!(text.contains("universal class 1: (1,0,0,1) (1,0,1,0) (1,0,1,1)\n"), "{text}");
        assert_eq!(text, render(&analyze(&builtins::v1(), None, None).unwrap(), Format::Text));
    }

    #[test]
    fn one_point_reduction() {
        let a = analyze(&builtins::eq2([1, 1, 1]), None, None).unwrap();
        assert_eq!(a.n(), 1);
        assert_eq!(a.eckardt.len(), 1);
        assert_eq!(a.hessian_vanishes, Some(false));
        assert!(render(&a, Format::Tsv).starts_with("key\tvalue\nfield\tGF(2)\n"));
    }

    #[test]
    fn manin_report() {
        let a = analyze(&builtins::manin_gf4(), None, None).unwrap();
        assert_eq!((a.n(), a.eckardt.len(), a.universal.class_count()), (9, 9, 9));
        let (_, r) = a.cml.as_ref().unwrap();
        assert!(r.is_cml());
        assert_eq!(r.exponent(), 3);
        assert_eq!(a.base_independent, Some(true));
        assert!(a.warnings.is_empty(), "{:?}", a.warnings);
    }

    #[test]
    fn bound_is_capped() {
        let k = make_field(2, 4).unwrap();
        assert_eq!(smoothness_bound(&k, Some(8)), 4);
        assert_eq!(smoothness_bound(&k, None), 2);
    }
}
