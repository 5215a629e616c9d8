use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::FieldSpec;

use super::GeometryError;

/// Largest field whose full line set is enumerated.
pub const MAX_LINE_FIELD: u32 = 16;
/// Largest field whose P³ is scanned point by point.
pub const MAX_SCAN_FIELD: u32 = 256;

/// A point of P³ with leftmost nonzero coordinate 1. Coordinates are field
/// element encodings; the field itself is carried by the owning surface.
///
/// The derived order is lexicographic on coordinates under the encoding
/// order, which is the canonical point order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ProjPoint(pub [u32; 4]);

impl ProjPoint {
    /// Scales `v` so its leftmost nonzero coordinate is 1; `None` for 0.
    pub fn normalize(field: &FieldSpec, v: [u32; 4]) -> Option<Self> {
        let lead = *v.iter().find(|&&c| c != 0)?;
        let inv = field.inv(lead)?;
        Some(Self(v.map(|c| field.mul(c, inv))))
    }

    pub fn coords(&self) -> [u32; 4] {
        self.0
    }

    /// Dot product with a plane or linear form.
    pub fn dot(&self, field: &FieldSpec, plane: &[u32; 4]) -> u32 {
        (0..4).fold(0, |acc, i| field.add(acc, field.mul(self.0[i], plane[i])))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// All points of P³(GF(q)) in canonical order.
pub fn points_of_p3(field: &FieldSpec) -> Result<Vec<ProjPoint>, GeometryError> {
    let q = field.order();
    if q > MAX_SCAN_FIELD {
        return Err(GeometryError::FieldTooLarge { q, cap: MAX_SCAN_FIELD });
    }
    let mut out = Vec::with_capacity(((q as u64).pow(3) + (q as u64).pow(2) + q as u64 + 1) as usize);
    // leading-one position 3, 2, 1, 0 gives ascending lexicographic order
    for lead in (0..4).rev() {
        let free = 3 - lead;
        let total = (q as u64).pow(free as u32);
        for idx in 0..total {
            let mut v = [0u32; 4];
            v[lead] = 1;
            let mut r = idx;
            for k in (lead + 1..4).rev() {
                v[k] = (r % q as u64) as u32;
                r /= q as u64;
            }
            out.push(ProjPoint(v));
        }
    }
    Ok(out)
}

/// A line of P³ as a 2×4 matrix in reduced row-echelon form.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ProjLine {
    pivots: [usize; 2],
    rows: [[u32; 4]; 2],
}

impl ProjLine {
    /// Line through two distinct points (or any two independent vectors).
    pub fn through(field: &FieldSpec, a: [u32; 4], b: [u32; 4]) -> Result<Self, GeometryError> {
        let mut m = [a, b];
        let mut pivots = [0usize; 2];
        let mut row = 0;
        for col in 0..4 {
            if row == 2 {
                break;
            }
            let Some(r) = (row..2).find(|&r| m[r][col] != 0) else { continue };
            m.swap(row, r);
            let inv = field.inv(m[row][col]).unwrap();
            m[row] = m[row].map(|x| field.mul(x, inv));
            for other in 0..2 {
                if other != row && m[other][col] != 0 {
                    let f = m[other][col];
                    for k in 0..4 {
                        m[other][k] = field.sub(m[other][k], field.mul(f, m[row][k]));
                    }
                }
            }
            pivots[row] = col;
            row += 1;
        }
        if row < 2 {
            return Err(GeometryError::DegenerateLine);
        }
        Ok(Self { pivots, rows: m })
    }

    pub fn rows(&self) -> [[u32; 4]; 2] {
        self.rows
    }

    pub fn pivots(&self) -> [usize; 2] {
        self.pivots
    }

    /// Parameters (s, t) with p = s·row₀ + t·row₁, if p lies on the line.
    pub fn parameters(&self, field: &FieldSpec, p: &ProjPoint) -> Option<(u32, u32)> {
        let s = p.0[self.pivots[0]];
        let t = p.0[self.pivots[1]];
        let v = self.combine(field, s, t);
        (v == p.0).then_some((s, t))
    }

    pub fn contains(&self, field: &FieldSpec, p: &ProjPoint) -> bool {
        self.parameters(field, p).is_some()
    }

    /// s·row₀ + t·row₁.
    pub fn combine(&self, field: &FieldSpec, s: u32, t: u32) -> [u32; 4] {
        std::array::from_fn(|k| field.add(field.mul(s, self.rows[0][k]), field.mul(t, self.rows[1][k])))
    }

    /// The q + 1 rational points, in parameter order (1:0), (0:1), (1:1), ...
    pub fn points(&self, field: &FieldSpec) -> Vec<ProjPoint> {
        let mut out = vec![ProjPoint::normalize(field, self.rows[0]).unwrap()];
        for s in field.elements() {
            out.push(ProjPoint::normalize(field, self.combine(field, s, 1)).unwrap());
        }
        out
    }

    pub fn format(&self) -> String {
        let r = |v: [u32; 4]| format!("{},{},{},{}", v[0], v[1], v[2], v[3]);
        format!("[{} ; {}]", r(self.rows[0]), r(self.rows[1]))
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

fn line_cache() -> &'static Mutex<HashMap<(u32, u32), Arc<Vec<ProjLine>>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<Vec<ProjLine>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Every line of P³(GF(q)) exactly once, sorted. Cached per field.
pub fn lines_in_p3(field: &FieldSpec) -> Result<Arc<Vec<ProjLine>>, GeometryError> {
    let q = field.order();
    if q > MAX_LINE_FIELD {
        return Err(GeometryError::FieldTooLarge { q, cap: MAX_LINE_FIELD });
    }
    let key = (field.characteristic(), field.degree());
    if let Some(v) = line_cache().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            // row 0: 1 at i, 0 at j, free right of i; row 1: 1 at j, free right of j
            let free0: Vec<usize> = (i + 1..4).filter(|&k| k != j).collect();
            let free1: Vec<usize> = (j + 1..4).collect();
            let slots = free0.len() + free1.len();
            for idx in 0..(q as u64).pow(slots as u32) {
                let mut rows = [[0u32; 4]; 2];
                rows[0][i] = 1;
                rows[1][j] = 1;
                let mut r = idx;
                for &k in &free0 {
                    rows[0][k] = (r % q as u64) as u32;
                    r /= q as u64;
                }
                for &k in &free1 {
                    rows[1][k] = (r % q as u64) as u32;
                    r /= q as u64;
                }
                out.push(ProjLine { pivots: [i, j], rows });
            }
        }
    }
    out.sort();
    let out = Arc::new(out);
    line_cache().lock().unwrap().insert(key, out.clone());
    Ok(out)
}
