use std::fmt;

use super::EquivalenceError;

/// Equivalence classes over point indices 0..n.
///
/// Union always keeps the smaller root, so the root of a class is its
/// smallest member, which doubles as the stable class label.
#[derive(Clone)]
pub struct Partition {
    parent: Vec<usize>,
}

impl Partition {
    pub fn singletons(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub fn one_class(n: usize) -> Self {
        Self { parent: vec![0; n] }
    }

    /// Partition from a label per element (any labels; equal means same class).
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut p = Self::singletons(labels.len());
        let mut first = std::collections::HashMap::new();
        for (i, &l) in labels.iter().enumerate() {
            let r = *first.entry(l).or_insert(i);
            p.union(r, i);
        }
        p
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn find_compress(&mut self, x: usize) -> usize {
        let root = self.find(x);
        let mut y = x;
        while self.parent[y] != root {
            let next = self.parent[y];
            self.parent[y] = root;
            y = next;
        }
        root
    }

    /// Merges the classes of a and b; true if they were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find_compress(a);
        let rb = self.find_compress(b);
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Merges every element of `group` into one class.
    pub fn union_all(&mut self, group: &[usize]) -> bool {
        let mut changed = false;
        for w in group.windows(2) {
            changed |= self.union(w[0], w[1]);
        }
        changed
    }

    /// Class label (smallest member) of x.
    pub fn label(&self, x: usize) -> usize {
        self.find(x)
    }

    pub fn labels(&self) -> Vec<usize> {
        (0..self.len()).map(|x| self.find(x)).collect()
    }

    /// Classes sorted by label, members ascending.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for x in 0..self.len() {
            by_root.entry(self.find(x)).or_default().push(x);
        }
        by_root.into_values().collect()
    }

    pub fn class_labels(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.find(x) == x).collect()
    }

    pub fn class_count(&self) -> usize {
        (0..self.len()).filter(|&x| self.find(x) == x).count()
    }

    /// Whether every class of `self` lies inside a class of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.len() == other.len() && (0..self.len()).all(|x| other.find(x) == other.find(self.find(x)))
    }
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.labels() == other.labels()
    }
}

impl Eq for Partition {}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.classes())
    }
}

/// Common refinement: classes are the nonempty pairwise intersections.
pub fn intersect_partitions(a: &Partition, b: &Partition) -> Result<Partition, EquivalenceError> {
    if a.len() != b.len() {
        return Err(EquivalenceError::GroundSetMismatch(a.len(), b.len()));
    }
    let pairs: Vec<usize> = (0..a.len()).map(|x| a.find(x) * a.len() + b.find(x)).collect();
    Ok(Partition::from_labels(&pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn labels_are_smallest_members() {
        let mut p = Partition::singletons(6);
        p.union(4, 2);
        p.union(5, 4);
        p.union(3, 1);
        assert_eq!(p.labels(), vec![0, 1, 2, 1, 2, 2]);
        assert_eq!(p.classes(), vec![vec![0], vec![1, 3], vec![2, 4, 5]]);
        assert_eq!(p.class_count(), 3);
        assert!(!p.union(5, 2));
    }

    #[test]
    fn intersections() {
        let a = Partition::from_labels(&[0, 0, 0, 1, 1]);
        let b = Partition::from_labels(&[0, 1, 1, 1, 0]);
        let c = intersect_partitions(&a, &b).unwrap();
        assert_eq!(c.classes(), vec![vec![0], vec![1, 2], vec![3], vec![4]]);
        assert_eq!(intersect_partitions(&a, &a).unwrap(), a);
        let s = Partition::singletons(5);
        assert_eq!(intersect_partitions(&a, &s).unwrap(), s);
        assert!(intersect_partitions(&a, &Partition::singletons(3)).is_err());
    }

    proptest! {
        #[test]
        fn merge_order_does_not_matter(pairs in proptest::collection::vec((0usize..12, 0usize..12), 0..20)) {
            let mut fwd = Partition::singletons(12);
            let mut rev = Partition::singletons(12);
            for &(a, b) in &pairs {
                fwd.union(a, b);
            }
            for &(a, b) in pairs.iter().rev() {
                rev.union(b, a);
            }
            prop_assert_eq!(fwd.labels(), rev.labels());
            for x in 0..12 {
                prop_assert_eq!(fwd.find(fwd.find(x)), fwd.find(x));
            }
        }

        #[test]
        fn intersection_refines_both(a in proptest::collection::vec(0usize..4, 10), b in proptest::collection::vec(0usize..4, 10)) {
            let (pa, pb) = (Partition::from_labels(&a), Partition::from_labels(&b));
            let c = intersect_partitions(&pa, &pb).unwrap();
            prop_assert!(c.refines(&pa));
            prop_assert!(c.refines(&pb));
        }
    }
}
