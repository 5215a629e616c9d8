//! Exhaustive census of cubic forms over GF(2).
//!
//! A form is a 20-bit mask over the cubic monomials in ascending
//! lexicographic order (bit k ↔ `monomials(3)[k]`). Smoothness up to
//! GF(2^bound) is decided for all masks at once by walking them in Gray-code
//! order: in characteristic 2 a point is singular exactly when all four
//! partials vanish there (Euler's identity gives F = Σ xᵢ∂ᵢF), and the packed
//! partials at a point change by a fixed XOR when one monomial is toggled.
//! Singular loci are Frobenius-stable, so one point per orbit suffices.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{make_field, monomials, Domain, FieldSpec, Form, Monomial, Scalar};
use crate::equivalence::{close_admissible, forced_merges, Collinearity};
use crate::geometry::{lines_in_p3, points_of_p3, singular_points_up_to, CycleTag, ProjPoint, Surface};

pub const CENSUS_MONOMIALS: usize = 20;
pub const DEFAULT_CENSUS_BOUND: u32 = 4;
pub const MAX_CENSUS_BOUND: u32 = 6;
const LOW_BITS: u32 = 14;

pub const CENSUS_HEADER: &str = "mask\tsmooth\tn\tlines\tall_eckardt\tclasses\texceptional";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusRecord {
    pub mask: u32,
    pub smooth: bool,
    pub n: u32,
    pub lines: u32,
    /// Only computed for smooth forms.
    pub all_eckardt: Option<bool>,
    pub classes: Option<u32>,
    pub exceptional: bool,
}

impl CensusRecord {
    pub fn tsv_row(&self) -> String {
        let opt = |o: Option<String>| o.unwrap_or_else(|| "NA".into());
        format!(
            "{:05x}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.mask,
            self.smooth as u8,
            self.n,
            self.lines,
            opt(self.all_eckardt.map(|b| (b as u8).to_string())),
            opt(self.classes.map(|c| c.to_string())),
            self.exceptional as u8
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusSummary {
    pub bound: u32,
    pub forms: u64,
    pub smooth: u64,
    /// Smooth forms with at least two points.
    pub smooth_multi: u64,
    pub one_class: u64,
    pub exceptional: u64,
    /// Point counts seen on exceptional surfaces, with multiplicity.
    pub exceptional_n: Vec<(u32, u64)>,
    /// One-point line-free all-Eckardt surfaces (the dichotomy is vacuous).
    pub vacuous_one_point: u64,
    /// Masks contradicting the dichotomy.
    pub violations: Vec<u32>,
    /// Smooth surfaces with n outside [1, 19], the q = 2 point-count window.
    pub window_violations: u64,
}

impl CensusSummary {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.exceptional > 0 && self.window_violations == 0
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "forms\t{}", self.forms).unwrap();
        writeln!(s, "smoothness bound\t{}", self.bound).unwrap();
        writeln!(s, "smooth\t{}", self.smooth).unwrap();
        writeln!(s, "smooth with n >= 2\t{}", self.smooth_multi).unwrap();
        writeln!(s, "one universal class\t{}", self.one_class).unwrap();
        writeln!(s, "exceptional\t{}", self.exceptional).unwrap();
        for (n, c) in &self.exceptional_n {
            writeln!(s, "exceptional with q = 2, n = {n}\t{c}").unwrap();
        }
        writeln!(s, "one-point line-free all-Eckardt (vacuous)\t{}", self.vacuous_one_point).unwrap();
        writeln!(s, "violations\t{}", self.violations.len()).unwrap();
        writeln!(s, "point-count window violations\t{}", self.window_violations).unwrap();
        for m in self.violations.iter().take(20) {
            writeln!(s, "violation\t{m:05x}").unwrap();
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct Census {
    pub records: Vec<CensusRecord>,
    pub summary: CensusSummary,
}

impl Census {
    pub fn records_tsv(&self) -> String {
        let mut s = String::with_capacity(self.records.len() * 24);
        s.push_str(CENSUS_HEADER);
        s.push('\n');
        for r in &self.records {
            s.push_str(&r.tsv_row());
            s.push('\n');
        }
        s
    }
}

/// The GF(2) cubic form of a census mask.
pub fn form_from_mask(mask: u32) -> Form {
    let f2 = make_field(2, 1).unwrap();
    let terms: Vec<(Monomial, Scalar)> = monomials(3)
        .into_iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, m)| (m, Scalar::Field(1)))
        .collect();
    Form::from_terms(Domain::Field(f2), 3, terms).unwrap()
}

fn eval_monomial(k: &FieldSpec, m: &Monomial, x: &[u32; 4]) -> u32 {
    (0..4).fold(1, |acc, i| k.mul(acc, k.pow(x[i], m[i] as u64)))
}

/// Packed partial derivatives of each monomial at one orbit representative
/// per Frobenius orbit of points of degree e ≤ bound.
fn smoothness_table(bound: u32) -> Vec<[u32; CENSUS_MONOMIALS]> {
    let mons = monomials(3);
    let mut table = Vec::new();
    for e in 1..=bound {
        let k = make_field(2, e).unwrap();
        for p in points_of_p3(&k).unwrap() {
            let degree = p.0.iter().map(|&c| k.minimal_degree(c)).max().unwrap();
            if degree != e {
                continue;
            }
            // keep the smallest point of each orbit
            let mut q = p;
            let mut is_rep = true;
            for _ in 1..e {
                q = ProjPoint::normalize(&k, q.0.map(|c| k.frobenius(c))).unwrap();
                if q < p {
                    is_rep = false;
                    break;
                }
            }
            if !is_rep {
                continue;
            }
            let mut row = [0u32; CENSUS_MONOMIALS];
            for (j, m) in mons.iter().enumerate() {
                let mut packed = 0u32;
                for i in 0..4 {
                    if m[i] % 2 == 1 {
                        // ∂(x^m)/∂xᵢ = mᵢ·x^(m − eᵢ), and mᵢ ≡ 1 here
                        let mut dm = *m;
                        dm[i] -= 1;
                        packed |= eval_monomial(&k, &dm, &p.0) << (e * i as u32);
                    }
                }
                row[j] = packed;
            }
            table.push(row);
        }
    }
    table
}

/// Smooth-to-bound flag for every mask with the given high bits.
fn smooth_flags(table: &[[u32; CENSUS_MONOMIALS]], high: u32) -> Vec<bool> {
    let cols: Vec<Vec<u32>> = (0..CENSUS_MONOMIALS).map(|j| table.iter().map(|r| r[j]).collect()).collect();
    let base = high << LOW_BITS;
    let mut vals: Vec<u32> = table
        .iter()
        .map(|r| (0..CENSUS_MONOMIALS).filter(|&j| base >> j & 1 == 1).fold(0, |acc, j| acc ^ r[j]))
        .collect();
    let n = 1usize << LOW_BITS;
    let mut flags = vec![false; n];
    let mut gray = 0usize;
    for step in 0..n {
        if step > 0 {
            let bit = step.trailing_zeros() as usize;
            gray ^= 1 << bit;
            let col = &cols[bit];
            for (v, c) in vals.iter_mut().zip(col) {
                *v ^= c;
            }
        }
        flags[gray] = !vals.iter().any(|&v| v == 0);
    }
    flags
}

/// Per-mask data over GF(2): points are the 4-bit vectors 1..=15 with
/// coordinate i in bit 3 − i, so numeric order is projective point order.
struct F2Tables {
    /// Bit x set when the monomial is 1 at x.
    eval: [u16; CENSUS_MONOMIALS],
    /// Gradient at every x packed 4 bits per point.
    grad: [u64; CENSUS_MONOMIALS],
}

fn vec_of(x: u32) -> [u32; 4] {
    std::array::from_fn(|i| x >> (3 - i) & 1)
}

impl F2Tables {
    fn new() -> Self {
        let k = make_field(2, 1).unwrap();
        let mons = monomials(3);
        let mut eval = [0u16; CENSUS_MONOMIALS];
        let mut grad = [0u64; CENSUS_MONOMIALS];
        for (j, m) in mons.iter().enumerate() {
            for x in 1..16u32 {
                let v = vec_of(x);
                if eval_monomial(&k, m, &v) == 1 {
                    eval[j] |= 1 << x;
                }
                let mut g = 0u64;
                for i in 0..4 {
                    if m[i] % 2 == 1 {
                        let mut dm = *m;
                        dm[i] -= 1;
                        g |= (eval_monomial(&k, &dm, &v) as u64) << (3 - i);
                    }
                }
                grad[j] |= g << (4 * x);
            }
        }
        Self { eval, grad }
    }

    fn record(&self, mask: u32, smooth: bool) -> CensusRecord {
        let mut on = 0u16;
        let mut grad = 0u64;
        for j in 0..CENSUS_MONOMIALS {
            if mask >> j & 1 == 1 {
                on ^= self.eval[j];
                grad ^= self.grad[j];
            }
        }
        // `on` holds F, so points of S are its zeros
        let on_s = |x: u32| on >> x & 1 == 0;
        let g = |x: u32| (grad >> (4 * x) & 0xf) as u32;
        let dot = |x: u32, y: u32| (x & y).count_ones() & 1;
        let pts: Vec<u32> = (1..16).filter(|&x| on_s(x)).collect();
        // F(sA + tB) = F(A)s³ + (∇F(A)·B)s²t + (∇F(B)·A)st² + F(B)t³
        let mut lines = Vec::new();
        for &a in &pts {
            for &b in pts.iter().filter(|&&b| b > a) {
                let c = a ^ b;
                if c > b && on_s(c) && dot(g(a), b) == 0 && dot(g(b), a) == 0 {
                    lines.push([a, b, c]);
                }
            }
        }
        let mut rec = CensusRecord {
            mask,
            smooth,
            n: pts.len() as u32,
            lines: lines.len() as u32,
            all_eckardt: None,
            classes: None,
            exceptional: false,
        };
        if !smooth {
            return rec;
        }
        let in_plane = |p: u32, d: u32| dot(g(p), d) == 0;
        let idx: HashMap<u32, usize> = pts.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let on_line = |p: u32| lines.iter().any(|l| l.contains(&p));

        let mut triples = Vec::new();
        let mut forced_groups: Vec<Vec<usize>> = Vec::new();
        let line_groups: Vec<Vec<usize>> = lines.iter().map(|l| l.iter().map(|x| idx[x]).collect()).collect();
        for l in &line_groups {
            for &a in l {
                triples.push([a, a, a]);
            }
        }
        forced_groups.extend(line_groups.iter().cloned());
        // chords: third point P ⊕ Q, or the double root of a tangent line
        for (i, &p) in pts.iter().enumerate() {
            for (j, &q) in pts.iter().enumerate().skip(i + 1) {
                let r = p ^ q;
                if lines.iter().any(|l| l.contains(&p) && l.contains(&q)) {
                    continue;
                }
                if !on_s(r) {
                    let k = if dot(g(p), q) == 0 { i } else { j };
                    let ks = [i, j, k];
                    for perm in [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 0, 1], [1, 2, 0], [2, 1, 0]] {
                        triples.push([ks[perm[0]], ks[perm[1]], ks[perm[2]]]);
                    }
                    continue;
                }
                let k = idx[&r];
                let ks = [i, j, k];
                for perm in [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 0, 1], [1, 2, 0], [2, 1, 0]] {
                    triples.push([ks[perm[0]], ks[perm[1]], ks[perm[2]]]);
                }
            }
        }
        let mut all_eckardt = true;
        for (i, &p) in pts.iter().enumerate() {
            let plane: Vec<u32> = (1..16).filter(|&d| in_plane(p, d)).collect();
            // q₂(D) = F(P + D) + F(D) on the tangent plane
            let q2_zero = |d: u32| on_s(d ^ p) == on_s(d);
            let eckardt = plane.iter().all(|&d| q2_zero(d));
            all_eckardt &= eckardt;
            let directions = plane.iter().filter(|&&d| d != p && q2_zero(d));
            let flex = directions.clone().any(|&d| !on_s(d));
            if flex {
                triples.push([i, i, i]);
            }
            if on_line(p) {
                continue;
            }
            let flag = !eckardt && directions.clone().next().is_some();
            let section: Vec<usize> =
                pts.iter().enumerate().filter(|&(j, &t)| in_plane(p, t) && (j != i || flag)).map(|(j, _)| j).collect();
            triples.extend(section.iter().map(|&t| [i, i, t]));
            if section.len() > 1 {
                forced_groups.push(section);
            }
        }
        triples.sort_unstable();
        triples.dedup();
        let c = Collinearity {
            points: pts.iter().map(|&x| ProjPoint(vec_of(x))).collect(),
            triples,
            line_groups,
            forced_groups,
            self_outcomes: Vec::new(),
        };
        let classes = close_admissible(&c, forced_merges(&c)).class_count() as u32;
        rec.all_eckardt = Some(all_eckardt);
        rec.classes = Some(classes);
        rec.exceptional = rec.lines == 0 && all_eckardt && rec.n >= 2;
        rec
    }
}

/// The record of one mask recomputed from scratch with the general
/// surface machinery.
pub fn slow_record(mask: u32, bound: u32) -> CensusRecord {
    let mut rec =
        CensusRecord { mask, smooth: false, n: 0, lines: 0, all_eckardt: None, classes: None, exceptional: false };
    if mask == 0 {
        return rec;
    }
    let s = Surface::new(form_from_mask(mask)).unwrap();
    rec.n = s.points().len() as u32;
    let all_lines = lines_in_p3(s.field()).unwrap();
    rec.lines = all_lines.iter().filter(|l| s.intersect_line(l).tag == CycleTag::LineInSurface).count() as u32;
    rec.smooth = singular_points_up_to(&s, bound).unwrap().is_smooth();
    if !rec.smooth {
        return rec;
    }
    let all_eckardt = s.points().iter().all(|p| s.is_eckardt(p).unwrap());
    let c = Collinearity::new(&s);
    rec.all_eckardt = Some(all_eckardt);
    rec.classes = Some(crate::equivalence::universal_equivalence(&c).class_count() as u32);
    rec.exceptional = rec.lines == 0 && all_eckardt && rec.n >= 2;
    rec
}

fn summarize(records: &[CensusRecord], bound: u32) -> CensusSummary {
    let mut s = CensusSummary { bound, forms: records.len() as u64, ..Default::default() };
    let mut exc_n: std::collections::BTreeMap<u32, u64> = Default::default();
    for r in records.iter().filter(|r| r.smooth) {
        s.smooth += 1;
        if !(1..=19).contains(&r.n) {
            s.window_violations += 1;
        }
        let classes = r.classes.unwrap();
        if r.n >= 2 {
            s.smooth_multi += 1;
        }
        if classes == 1 {
            s.one_class += 1;
        }
        if r.exceptional {
            s.exceptional += 1;
            *exc_n.entry(r.n).or_default() += 1;
            if r.n != 3 || classes != r.n {
                s.violations.push(r.mask);
            }
        } else if r.n >= 2 && classes != 1 {
            s.violations.push(r.mask);
        }
        if r.n == 1 && r.lines == 0 && r.all_eckardt == Some(true) {
            s.vacuous_one_point += 1;
        }
    }
    s.exceptional_n = exc_n.into_iter().collect();
    s
}

/// Runs the census over all 2^20 masks with `jobs` worker threads (0 uses
/// the default pool). Output does not depend on `jobs`.
pub fn census_f2(bound: u32, jobs: usize) -> Result<Census, String> {
    if bound == 0 || bound > MAX_CENSUS_BOUND {
        return Err(format!("census bound must be in 1..={MAX_CENSUS_BOUND}"));
    }
    let table = smoothness_table(bound);
    let f2 = F2Tables::new();
    let units = 1u32 << (CENSUS_MONOMIALS as u32 - LOW_BITS);
    let work = |high: u32| -> Vec<CensusRecord> {
        let flags = smooth_flags(&table, high);
        flags.iter().enumerate().map(|(low, &smooth)| f2.record(high << LOW_BITS | low as u32, smooth)).collect()
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| e.to_string())?;
    let mut records: Vec<CensusRecord> = pool.install(|| (0..units).into_par_iter().flat_map_iter(work).collect());
    records.sort_unstable_by_key(|r| r.mask);
    let summary = summarize(&records, bound);
    Ok(Census { records, summary })
}

/// Re-derives `samples` random smooth records with [`slow_record`] and
/// returns the disagreements.
pub fn spot_check(census: &Census, samples: usize, seed: u64) -> Vec<(CensusRecord, CensusRecord)> {
    let smooth: Vec<&CensusRecord> = census.records.iter().filter(|r| r.smooth).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picked: Vec<&&CensusRecord> = smooth.choose_multiple(&mut rng, samples.min(smooth.len())).collect();
    picked
        .par_iter()
        .filter_map(|r| {
            let slow = slow_record(r.mask, census.summary.bound);
            (slow != ***r).then_some((***r, slow))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_representatives() {
        // (15, 70, 570, 4284) points of degree 1..4, orbits of size e
        assert_eq!(smoothness_table(4).len(), 15 + 35 + 190 + 1071);
        assert_eq!(smoothness_table(1).len(), 15);
    }

    #[test]
    fn fast_matches_slow_on_a_sample() {
        let table = smoothness_table(3);
        let f2 = F2Tables::new();
        let high = 0b100101;
        let flags = smooth_flags(&table, high);
        for low in (0..1u32 << LOW_BITS).step_by(97) {
            let mask = high << LOW_BITS | low;
            let fast = f2.record(mask, flags[low as usize]);
            assert_eq!(fast, slow_record(mask, 3), "mask {mask:05x}");
        }
    }

    #[test]
    fn fermat_and_v1_masks() {
        let mons = monomials(3);
        let mask_of =
            |ms: &[Monomial]| ms.iter().map(|m| 1u32 << mons.iter().position(|x| x == m).unwrap()).sum::<u32>();
        let fermat = mask_of(&[[3, 0, 0, 0], [0, 3, 0, 0], [0, 0, 3, 0], [0, 0, 0, 3]]);
        let f2 = F2Tables::new();
        let r = f2.record(fermat, true);
        assert_eq!(r, slow_record(fermat, 4));
        assert_eq!(r.classes, Some(1));
        assert!(!form_from_mask(fermat).is_zero());
        assert!(!slow_record(0, 4).smooth);
    }
}
