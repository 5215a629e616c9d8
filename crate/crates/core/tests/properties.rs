//! Cross-module invariants checked on random inputs.

use proptest::prelude::*;

use cubicml::algebra::{make_field, monomials, Domain, Form, Scalar};
use cubicml::equivalence::{is_admissible, universal_equivalence, Collinearity};
use cubicml::geometry::{Composition, Surface};
use cubicml::harness::census::{form_from_mask, slow_record};
use cubicml::padic::{QuadExtScalar as Ext, Valuation};

fn field_form(q_log: u32, coeffs: &[u32]) -> Option<Form> {
    let k = make_field(2, q_log).unwrap();
    let terms: Vec<_> = monomials(3)
        .into_iter()
        .zip(coeffs)
        .filter(|(_, &c)| c % k.order() != 0)
        .map(|(m, &c)| (m, Scalar::Field(c % k.order())))
        .collect();
    if terms.is_empty() {
        return None;
    }
    Some(Form::from_terms(Domain::Field(k), 3, terms).unwrap())
}

fn ext(a: i64, b: i64) -> Ext {
    Ext::from_i64(a, 64).add(Ext::theta(64).mul(Ext::from_i64(b, 64)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_inverse_and_frobenius(m in 1u32..=8, a in 1u32..256, b in 0u32..256) {
        let k = make_field(2, m).unwrap();
        let (a, b) = (a % k.order(), b % k.order());
        prop_assume!(a != 0);
        prop_assert_eq!(k.mul(a, k.inv(a).unwrap()), 1);
        prop_assert_eq!(k.frobenius(k.mul(a, b)), k.mul(k.frobenius(a), k.frobenius(b)));
        prop_assert_eq!(k.frobenius(k.add(a, b)), k.add(k.frobenius(a), k.frobenius(b)));
    }

    #[test]
    fn padic_ring_laws(a in any::<i64>(), b in any::<i64>(), c in any::<i64>(), d in any::<i64>()) {
        let (x, y) = (ext(a, b), ext(c, d));
        prop_assert_eq!(x.mul(y), y.mul(x));
        prop_assert_eq!(x.add(y).sub(y), x);
        prop_assert_eq!(x.mul(y).conj(), x.conj().mul(y.conj()));
        if x.is_unit() {
            prop_assert_eq!(x.mul(x.inv().unwrap()), Ext::one(64));
        }
        // v(xy) = v(x) + v(y) when both are exact
        if let (Valuation::Exact(u), Valuation::Exact(v)) = (x.valuation(), y.valuation()) {
            if u + v < 64 {
                prop_assert_eq!(x.mul(y).valuation(), Valuation::Exact(u + v));
            }
        }
    }

    #[test]
    fn composition_is_symmetric(coeffs in proptest::collection::vec(0u32..4, 20)) {
        let Some(f) = field_form(2, &coeffs) else { return Ok(()) };
        let s = Surface::new(f).unwrap();
        let pts = s.points();
        for p in pts.iter().take(8) {
            for q in pts.iter().take(8) {
                let pq = s.collinear_third(p, q).unwrap();
                prop_assert_eq!(pq, s.collinear_third(q, p).unwrap());
                if let Composition::Point(r) = pq {
                    prop_assert!(s.contains(&r));
                }
            }
        }
    }

    #[test]
    fn universal_equivalence_is_admissible(coeffs in proptest::collection::vec(0u32..2, 20)) {
        let Some(f) = field_form(1, &coeffs) else { return Ok(()) };
        let s = Surface::new(f).unwrap();
        let c = Collinearity::new(&s);
        let u = universal_equivalence(&c);
        prop_assert!(is_admissible(&c, &u));
    }

    #[test]
    fn census_record_invariant(mask in 1u32..(1 << 20)) {
        let r = slow_record(mask, 3);
        let f = form_from_mask(mask);
        prop_assert_eq!(f.len() as u32, mask.count_ones());
        if r.smooth {
            prop_assert_eq!(r.exceptional, r.lines == 0 && r.all_eckardt == Some(true) && r.n >= 2);
            if r.exceptional {
                prop_assert_eq!(r.classes, Some(r.n));
            }
        } else {
            prop_assert!(r.classes.is_none());
        }
    }
}
