use std::collections::HashMap;

use crate::geometry::{ProjPoint, Surface};

use super::partition::Partition;
use super::EquivalenceError;

/// The collinearity data of a surface that admissible equivalences depend
/// on, indexed by nonsingular rational points.
#[derive(Clone, Debug)]
pub struct Collinearity {
    pub points: Vec<ProjPoint>,
    /// Collinear triples (P₁, P₂, P₃) as indices.
    pub triples: Vec<[usize; 3]>,
    /// Points of each rational line in the surface.
    pub line_groups: Vec<Vec<usize>>,
    /// Classes the collinearity rules force before any closure.
    pub forced_groups: Vec<Vec<usize>>,
    /// All P ∘ P outcomes, per point.
    pub self_outcomes: Vec<Vec<usize>>,
}

impl Collinearity {
    pub fn new(s: &Surface) -> Self {
        let points = s.smooth_points().to_vec();
        let mut triples = s.collinear_triples();
        let field = s.field();
        let line_groups: Vec<Vec<usize>> = s
            .lines()
            .iter()
            .map(|l| {
                let mut g: Vec<usize> = l.points(field).iter().filter_map(|p| s.smooth_index_of(p)).collect();
                g.sort_unstable();
                g
            })
            .collect();
        let mut forced_groups = line_groups.clone();
        for (i, p) in points.iter().enumerate() {
            // points on a rational line of the surface are covered by line groups
            let Ok((section, flag)) = s.tangent_section_points(p) else { continue };
            let mut g: Vec<usize> =
                section.iter().filter(|q| *q != p || flag).filter_map(|q| s.smooth_index_of(q)).collect();
            g.sort_unstable();
            // P ∘ P may be any rational point of the section
            triples.extend(g.iter().map(|&t| [i, i, t]));
            if g.len() > 1 {
                forced_groups.push(g);
            }
        }
        triples.sort_unstable();
        triples.dedup();
        let mut self_outcomes = vec![Vec::new(); points.len()];
        for t in &triples {
            if t[0] == t[1] {
                self_outcomes[t[0]].push(t[2]);
            }
        }
        Self { points, triples, line_groups, forced_groups, self_outcomes }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Finest partition honoring lines in the surface and tangent sections.
pub fn forced_merges(c: &Collinearity) -> Partition {
    let mut p = Partition::singletons(c.len());
    for g in &c.forced_groups {
        p.union_all(g);
    }
    p
}

/// Least admissible coarsening of `start`: whenever two triples agree on
/// the classes of their first two points, their third points are merged.
/// Each pass groups triples by class pair; iteration stops after a pass
/// with no merge.
pub fn close_admissible(c: &Collinearity, start: Partition) -> Partition {
    let mut p = start;
    for g in &c.line_groups {
        p.union_all(g);
    }
    loop {
        let mut merged = false;
        let mut seen: HashMap<(usize, usize), usize> = HashMap::with_capacity(c.triples.len());
        for t in &c.triples {
            let key = (p.find(t[0]), p.find(t[1]));
            match seen.get(&key) {
                Some(&third) => merged |= p.union(third, t[2]),
                None => {
                    seen.insert(key, t[2]);
                }
            }
        }
        if !merged {
            return p;
        }
    }
}

/// The universal (finest admissible) equivalence.
pub fn universal_equivalence(c: &Collinearity) -> Partition {
    close_admissible(c, forced_merges(c))
}

/// Finest admissible equivalence with X ∘ X = X (`which = 3`) or with a
/// constant X ∘ X (`which = 2`).
pub fn property_equivalence(c: &Collinearity, which: u32) -> Result<Partition, EquivalenceError> {
    let mut p = forced_merges(c);
    match which {
        3 => {
            for (i, outs) in c.self_outcomes.iter().enumerate() {
                for &o in outs {
                    p.union(i, o);
                }
            }
        }
        2 => {
            let all: Vec<usize> = c.self_outcomes.iter().flatten().copied().collect();
            p.union_all(&all);
        }
        other => return Err(EquivalenceError::UnknownProperty(other)),
    }
    Ok(close_admissible(c, p))
}

/// The class of P₁ ∘ P₂ for P₁ ∈ class `c1`, P₂ ∈ class `c2`, checking that
/// every pair of representatives agrees.
pub fn class_compose(c: &Collinearity, a: &Partition, c1: usize, c2: usize) -> Result<usize, EquivalenceError> {
    let mut result: Option<usize> = None;
    for t in &c.triples {
        if a.find(t[0]) != c1 || a.find(t[1]) != c2 {
            continue;
        }
        let r = a.find(t[2]);
        match result {
            None => result = Some(r),
            Some(prev) if prev != r => {
                return Err(EquivalenceError::NotWellDefined { c1, c2, first: prev, second: r });
            }
            _ => {}
        }
    }
    result.ok_or(EquivalenceError::NoComposition { c1, c2 })
}

/// Whether `a` is admissible: lines of the surface are inside classes and
/// the class composition is well defined.
pub fn is_admissible(c: &Collinearity, a: &Partition) -> bool {
    if a.len() != c.len() {
        return false;
    }
    if c.line_groups.iter().any(|g| g.iter().any(|&x| a.find(x) != a.find(g[0]))) {
        return false;
    }
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    c.triples.iter().all(|t| {
        let key = (a.find(t[0]), a.find(t[1]));
        let r = a.find(t[2]);
        *seen.entry(key).or_insert(r) == r
    })
}
