//! Brute-force reference for the universal equivalence on tiny surfaces.
//!
//! Collinearity is recomputed from scratch by intersecting the surface with
//! every rational line of P³, and every set partition of the nonsingular
//! points is tested for admissibility.

use std::collections::HashMap;

use crate::geometry::{lines_in_p3, CycleTag, ProjPoint, Surface};

use super::partition::Partition;
use super::EquivalenceError;

/// Largest point count the exhaustive search accepts (Bell(10) = 115975).
pub const MAX_ORACLE_POINTS: usize = 10;

/// Constraints an admissible partition must satisfy.
#[derive(Clone, Debug)]
pub struct OracleData {
    pub triples: Vec<[usize; 3]>,
    pub line_groups: Vec<Vec<usize>>,
}

impl OracleData {
    pub fn new(s: &Surface) -> Result<Self, EquivalenceError> {
        let f = s.field();
        let all_lines = lines_in_p3(f)?;
        let pts = s.smooth_points();
        let idx = |p: &ProjPoint| s.smooth_index_of(p);
        let mut triples = Vec::new();
        let mut line_groups = Vec::new();
        let mut on_line = vec![false; pts.len()];
        for l in all_lines.iter() {
            let cyc = s.intersect_line(l);
            if cyc.tag == CycleTag::LineInSurface {
                let g: Vec<usize> = l.points(f).iter().filter_map(|p| idx(p)).collect();
                for &a in &g {
                    on_line[a] = true;
                    triples.push([a, a, a]);
                }
                line_groups.push(g);
                continue;
            }
            if cyc.rational_degree() != 3 {
                continue;
            }
            let ms = cyc.multiset();
            let Some(v) = ms.iter().map(|p| idx(p)).collect::<Option<Vec<usize>>>() else { continue };
            for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
                triples.push([v[perm[0]], v[perm[1]], v[perm[2]]]);
            }
        }
        // P ∘ P: every other rational point of the tangent section, and P
        // itself when some line of the section plane meets S to order 3 at P
        for (i, p) in pts.iter().enumerate() {
            if on_line[i] {
                continue;
            }
            let g = s.gradient_at(&p.0);
            let in_plane = |q: &ProjPoint| q.dot(f, &g) == 0;
            for (j, q) in pts.iter().enumerate() {
                if j != i && in_plane(q) {
                    triples.push([i, i, j]);
                }
            }
            let flex = all_lines.iter().any(|l| {
                l.contains(f, p)
                    && l.points(f).iter().all(in_plane)
                    && s.intersect_line(l).points.iter().any(|(q, m)| q == p && *m >= 3)
            });
            if flex {
                triples.push([i, i, i]);
            }
        }
        triples.sort_unstable();
        triples.dedup();
        Ok(Self { triples, line_groups })
    }

    pub fn admits(&self, labels: &[usize]) -> bool {
        if self.line_groups.iter().any(|g| g.iter().any(|&x| labels[x] != labels[g[0]])) {
            return false;
        }
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        self.triples.iter().all(|t| {
            let r = labels[t[2]];
            *seen.entry((labels[t[0]], labels[t[1]])).or_insert(r) == r
        })
    }
}

/// Calls `visit` with the restricted growth string of every set partition
/// of 0..n.
pub fn for_each_set_partition(n: usize, mut visit: impl FnMut(&[usize])) {
    if n == 0 {
        visit(&[]);
        return;
    }
    let mut a = vec![0usize; n];
    let mut max = vec![0usize; n];
    loop {
        visit(&a);
        // rightmost position that can still grow
        let mut i = n - 1;
        loop {
            if i == 0 {
                return;
            }
            if a[i] <= max[i - 1] {
                break;
            }
            i -= 1;
        }
        a[i] += 1;
        max[i] = max[i - 1].max(a[i]);
        for j in i + 1..n {
            a[j] = 0;
            max[j] = max[i];
        }
    }
}

/// The finest admissible partition by exhaustive search. Errors if the
/// surface has too many points or if admissible partitions have no common
/// refinement among them.
pub fn brute_force_universal(s: &Surface) -> Result<Partition, EquivalenceError> {
    let n = s.smooth_points().len();
    if n > MAX_ORACLE_POINTS {
        return Err(EquivalenceError::TooManyPoints(n, MAX_ORACLE_POINTS));
    }
    let data = OracleData::new(s)?;
    let mut admissible = Vec::new();
    for_each_set_partition(n, |labels| {
        if data.admits(labels) {
            admissible.push(Partition::from_labels(labels));
        }
    });
    let finest = admissible.iter().max_by_key(|p| p.class_count()).ok_or(EquivalenceError::NoAdmissible)?.clone();
    if admissible.iter().any(|p| !finest.refines(p)) {
        return Err(EquivalenceError::NoFinest);
    }
    Ok(finest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        for (n, bell) in [(0, 1), (1, 1), (3, 5), (5, 52), (8, 4140)] {
            let mut count = 0;
            for_each_set_partition(n, |_| count += 1);
            assert_eq!(count, bell);
        }
    }

    #[test]
    fn growth_strings_are_distinct_partitions() {
        let mut all = Vec::new();
        for_each_set_partition(4, |a| all.push(Partition::from_labels(a)));
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                assert_ne!(all[i], all[j]);
            }
        }
    }
}
