use num_integer::Integer;

use super::closure::{class_compose, Collinearity};
use super::partition::Partition;
use super::EquivalenceError;

/// Largest class count for the bijection search in base-independence checks.
pub const MAX_ISOMORPHISM_CLASSES: usize = 9;

/// A finite commutative loop of classes with product x·y = [O] ∘ (x ∘ y).
///
/// Table indices run over classes in label order; `labels[i]` is the class
/// label (smallest member point index) of index i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmlTable {
    pub labels: Vec<usize>,
    pub base: usize,
    /// The raw collinearity table x ∘ y.
    pub compose: Vec<Vec<usize>>,
    /// The loop product.
    pub product: Vec<Vec<usize>>,
}

impl CmlTable {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Builds a loop directly from a product table with identity `base`.
    pub fn from_product(product: Vec<Vec<usize>>, base: usize) -> Self {
        let n = product.len();
        Self { labels: (0..n).collect(), base, compose: product.clone(), product }
    }

    /// TSV with class labels as row and column headers.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("*");
        for l in &self.labels {
            out.push_str(&format!("\t{l}"));
        }
        out.push('\n');
        for (i, row) in self.product.iter().enumerate() {
            out.push_str(&self.labels[i].to_string());
            for &x in row {
                out.push_str(&format!("\t{}", self.labels[x]));
            }
            out.push('\n');
        }
        out
    }
}

/// The loop of classes of an admissible partition with identity `base_label`.
pub fn build_cml(c: &Collinearity, a: &Partition, base_label: usize) -> Result<CmlTable, EquivalenceError> {
    let labels = a.class_labels();
    let pos = |l: usize| labels.iter().position(|&x| x == l);
    let base = pos(base_label).ok_or(EquivalenceError::UnknownClass(base_label))?;
    let n = labels.len();
    let mut compose = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            compose[i][j] = pos(class_compose(c, a, labels[i], labels[j])?).unwrap();
        }
    }
    let product = (0..n).map(|i| (0..n).map(|j| compose[base][compose[i][j]]).collect()).collect();
    Ok(CmlTable { labels, base, compose, product })
}

/// A constructive splitting of the loop as E₂ × E₃.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    /// Elements with x² = 1.
    pub two_part: Vec<usize>,
    /// Elements with x³ = 1.
    pub three_part: Vec<usize>,
}

/// Outcome of the exhaustive axiom checks.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub identity: bool,
    pub latin_square: bool,
    pub commutative: bool,
    pub moufang: bool,
    pub associative: bool,
    /// Order of each element (0 if the powers never return to 1).
    pub orders: Vec<usize>,
    pub split: Option<Split>,
    pub failures: Vec<String>,
}

impl AxiomReport {
    /// Identity, Latin square, commutativity and Moufang all hold.
    pub fn is_cml(&self) -> bool {
        self.identity && self.latin_square && self.commutative && self.moufang
    }

    pub fn exponent(&self) -> usize {
        self.orders.iter().fold(1, |acc, &o| if o == 0 { acc } else { acc.lcm(&o) })
    }

    pub fn orders_divide_six(&self) -> bool {
        self.orders.iter().all(|&o| o != 0 && 6 % o == 0)
    }
}

fn power_order(t: &[Vec<usize>], e: usize, x: usize) -> usize {
    let mut acc = x;
    for k in 1..=t.len() {
        if acc == e {
            return k;
        }
        acc = t[x][acc];
    }
    0
}

/// Checks identity, Latin square, commutativity and the Moufang identity
/// (x·y)·(x·z) = (x·x)·(y·z) exhaustively; reports element orders and the
/// E₂ × E₃ splitting when it exists.
pub fn verify_cml_axioms(t: &CmlTable) -> AxiomReport {
    let n = t.len();
    let m = &t.product;
    let e = t.base;
    let mut failures = Vec::new();

    let identity = (0..n).all(|x| m[e][x] == x && m[x][e] == x);
    if !identity {
        failures.push(format!("class {} is not a two-sided identity", t.labels[e]));
    }

    let mut latin_square = true;
    for i in 0..n {
        let mut row = vec![false; n];
        let mut col = vec![false; n];
        for j in 0..n {
            row[m[i][j]] = true;
            col[m[j][i]] = true;
        }
        if row.contains(&false) || col.contains(&false) {
            latin_square = false;
            failures.push(format!("row or column {} is not a permutation", t.labels[i]));
            break;
        }
    }

    let commutative = (0..n).all(|x| (0..n).all(|y| m[x][y] == m[y][x]));
    if !commutative {
        failures.push("table is not symmetric".into());
    }

    let mut moufang = true;
    let mut associative = true;
    'outer: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if moufang && m[m[x][y]][m[x][z]] != m[m[x][x]][m[y][z]] {
                    moufang = false;
                    failures
                        .push(format!("Moufang identity fails at ({}, {}, {})", t.labels[x], t.labels[y], t.labels[z]));
                }
                if m[m[x][y]][z] != m[x][m[y][z]] {
                    associative = false;
                }
                if !moufang && !associative {
                    break 'outer;
                }
            }
        }
    }

    let orders: Vec<usize> = (0..n).map(|x| power_order(m, e, x)).collect();
    let split = if identity && latin_square { find_split(m, &orders) } else { None };
    AxiomReport { identity, latin_square, commutative, moufang, associative, orders, split, failures }
}

fn find_split(m: &[Vec<usize>], orders: &[usize]) -> Option<Split> {
    let n = m.len();
    let two_part: Vec<usize> = (0..n).filter(|&x| orders[x] == 1 || orders[x] == 2).collect();
    let three_part: Vec<usize> = (0..n).filter(|&x| orders[x] == 1 || orders[x] == 3).collect();
    if two_part.len() * three_part.len() != n {
        return None;
    }
    let closed = |s: &[usize]| s.iter().all(|&a| s.iter().all(|&b| s.contains(&m[a][b])));
    if !closed(&two_part) || !closed(&three_part) {
        return None;
    }
    let mut hit = vec![false; n];
    for &a in &two_part {
        for &b in &three_part {
            if std::mem::replace(&mut hit[m[a][b]], true) {
                return None;
            }
        }
    }
    Some(Split { two_part, three_part })
}

/// Whether two loops are isomorphic, by backtracking over bijections that
/// send identity to identity.
pub fn isomorphic(a: &CmlTable, b: &CmlTable) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[a.base] = b.base;
    used[b.base] = true;
    let order: Vec<usize> = (0..n).filter(|&x| x != a.base).collect();
    extend(a, b, &order, 0, &mut map, &mut used)
}

fn consistent(a: &CmlTable, b: &CmlTable, map: &[usize]) -> bool {
    let n = a.len();
    for x in 0..n {
        if map[x] == usize::MAX {
            continue;
        }
        for y in 0..n {
            if map[y] == usize::MAX {
                continue;
            }
            let xy = a.product[x][y];
            if map[xy] != usize::MAX && map[xy] != b.product[map[x]][map[y]] {
                return false;
            }
        }
    }
    true
}

fn extend(a: &CmlTable, b: &CmlTable, order: &[usize], k: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if k == order.len() {
        return consistent(a, b, map);
    }
    let x = order[k];
    for y in 0..a.len() {
        if used[y] {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if consistent(a, b, map) && extend(a, b, order, k + 1, map, used) {
            return true;
        }
        map[x] = usize::MAX;
        used[y] = false;
    }
    false
}

/// Whether the loops for every choice of base class are isomorphic.
pub fn base_independence_check(c: &Collinearity, a: &Partition) -> Result<bool, EquivalenceError> {
    let labels = a.class_labels();
    if labels.len() > MAX_ISOMORPHISM_CLASSES {
        return Err(EquivalenceError::TooManyClasses(labels.len(), MAX_ISOMORPHISM_CLASSES));
    }
    let tables = labels.iter().map(|&l| build_cml(c, a, l)).collect::<Result<Vec<_>, _>>()?;
    Ok(tables.iter().all(|t| isomorphic(&tables[0], t)))
}
