//! Finite fields GF(p^m) in polynomial basis.
//!
//! An element is stored as its integer encoding `Σ cᵢ·pⁱ`, where `cᵢ` is the
//! coefficient of `xⁱ` in the polynomial-basis representation. All element
//! ordering in this crate (points, classes, embeddings) is the order of these
//! encodings, i.e. lexicographic on the coefficient vector read from the top
//! degree down.
//!
//! Multiplication goes through log/antilog tables built once per field; the
//! tables are immutable after construction so a [`FieldSpec`] can be shared
//! freely between threads.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::AlgebraError;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Fixed moduli for GF(2^m), lowest coefficient first as bit masks.
/// Bit i set means the coefficient of x^i is 1.
const BINARY_MODULI: [u32; 17] = [
    0,
    0b10,                // x
    0b111,               // x^2+x+1
    0b1011,              // x^3+x+1
    0b10011,             // x^4+x+1
    0b100101,            // x^5+x^2+1
    0b1000011,           // x^6+x+1
    0b10000011,          // x^7+x+1
    0b100011011,         // x^8+x^4+x^3+x+1
    0b1000010001,        // x^9+x^4+1
    0b10000001001,       // x^10+x^3+1
    0b100000000101,      // x^11+x^2+1
    0b1000001010011,     // x^12+x^6+x^4+x+1
    0b10000000011011,    // x^13+x^4+x^3+x+1
    0b100010001000011,   // x^14+x^10+x^6+x+1
    0b1000000000000011,  // x^15+x+1
    0b10001000000001011, // x^16+x^12+x^3+x+1
];

struct FieldInner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    /// exp[i] = g^i for i in 0..2(q-1), doubled so products need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    generator: u32,
}

/// A finite field GF(p^m) with a fixed monic irreducible modulus.
///
/// Cloning is cheap (shared tables). Two specs are equal when they have the
/// same characteristic and modulus.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldInner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {}", self.0.p, self.0.m, self.modulus_string())
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_order(p: u32, m: u32) -> Result<u32, AlgebraError> {
    if !is_prime(p) {
        return Err(AlgebraError::NotPrime(p));
    }
    if m == 0 {
        return Err(AlgebraError::FieldDegree(m));
    }
    let mut q: u64 = 1;
    for _ in 0..m {
        q *= p as u64;
        if q > MAX_ORDER {
            return Err(AlgebraError::FieldTooLarge { p, m });
        }
    }
    Ok(q as u32)
}

/// Returns GF(p^m) with its canonical modulus. Results are cached, so repeated
/// calls return the same shared tables.
pub fn make_field(p: u32, m: u32) -> Result<FieldSpec, AlgebraError> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), FieldSpec>>> = OnceLock::new();
    checked_order(p, m)?;
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&(p, m)) {
        return Ok(f.clone());
    }
    let modulus = canonical_modulus(p, m);
    let field = FieldSpec::from_modulus(p, &modulus)?;
    cache.lock().unwrap().insert((p, m), field.clone());
    Ok(field)
}

/// Canonical modulus for (p, m): the fixed table for p = 2, otherwise the
/// monic irreducible polynomial of degree m whose lower coefficients have the
/// smallest integer encoding. Degree one always uses `x`.
fn canonical_modulus(p: u32, m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    if p == 2 {
        let bits = BINARY_MODULI[m as usize];
        return (0..=m).map(|i| (bits >> i) & 1).collect();
    }
    let lower = p.pow(m);
    for enc in 0..lower {
        let mut poly = digits(enc, p, m as usize);
        poly.push(1);
        if is_irreducible(p, &poly) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn digits(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v % p);
        v /= p;
    }
    out
}

fn trim(poly: &mut Vec<u32>) {
    while poly.last() == Some(&0) {
        poly.pop();
    }
}

/// Remainder of `a` modulo monic `b` over GF(p).
fn poly_rem(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, &bc) in b.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p - (lead * bc) % p) % p;
        }
        trim(&mut r);
    }
    r
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(p: u32, poly: &[u32]) -> bool {
    let deg = poly.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for enc in 0..count {
            let mut divisor = digits(enc as u32, p, d);
            divisor.push(1);
            if poly_rem(p, poly, &divisor).is_empty() {
                return false;
            }
        }
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Slow polynomial-basis arithmetic used only while building tables.
struct RawArith<'a> {
    p: u32,
    m: usize,
    modulus: &'a [u32],
}

impl RawArith<'_> {
    fn mul(&self, a: u32, b: u32) -> u32 {
        let da = digits(a, self.p, self.m);
        let db = digits(b, self.p, self.m);
        let mut prod = vec![0u32; 2 * self.m];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let r = poly_rem(self.p, &prod, self.modulus);
        r.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn pow(&self, mut base: u32, mut e: u64) -> u32 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

impl FieldSpec {
    /// Builds GF(p^m) from an explicit monic modulus (lowest coefficient first).
    pub fn from_modulus(p: u32, modulus: &[u32]) -> Result<Self, AlgebraError> {
        if modulus.len() < 2 {
            return Err(AlgebraError::FieldDegree(0));
        }
        let m = (modulus.len() - 1) as u32;
        let q = checked_order(p, m)?;
        if *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(AlgebraError::BadModulus(format!("{modulus:?}")));
        }
        if !is_irreducible(p, modulus) {
            return Err(AlgebraError::BadModulus(format!("{modulus:?} is reducible")));
        }
        let raw = RawArith { p, m: m as usize, modulus };
        let order = q - 1;
        let factors = prime_factors(order.max(1));
        let generator = if q == 2 {
            1
        } else {
            (2..q)
                .find(|&g| factors.iter().all(|&r| raw.pow(g, (order / r) as u64) != 1))
                .expect("multiplicative group is cyclic")
        };
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order as usize {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = raw.mul(x, generator);
        }
        for i in 0..order as usize {
            exp[i + order as usize] = exp[i];
        }
        Ok(FieldSpec(Arc::new(FieldInner { p, m, q, modulus: modulus.to_vec(), exp, log, generator })))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        self.0.generator
    }

    pub fn modulus_string(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.0.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(format!("{coeff}{mono}"));
        }
        terms.join("+")
    }

    /// Coefficient vector of an element, lowest degree first.
    pub fn coefficients(&self, a: u32) -> Vec<u32> {
        digits(a, self.0.p, self.0.m as usize)
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<u32, AlgebraError> {
        if coeffs.len() > self.0.m as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(AlgebraError::MalformedCoefficient(format!("{coeffs:?}")));
        }
        Ok(coeffs.iter().rev().fold(0, |acc, &c| acc * self.0.p + c))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.0.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a ^ b;
        }
        if self.0.m == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            let d = (a % p + b % p) % p;
            out += d * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            let d = (p - a % p) % p;
            out += d * place;
            place *= p;
            a /= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.0;
        inner.exp[(inner.log[a as usize] + inner.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let inner = &*self.0;
        let order = inner.q - 1;
        Some(inner.exp[((order - inner.log[a as usize]) % order) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let inner = &*self.0;
        let order = (inner.q - 1) as u64;
        let l = (inner.log[a as usize] as u64 * (e % order)) % order;
        inner.exp[l as usize]
    }

    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.0.p as u64)
    }

    /// Iterates all elements in encoding order.
    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.0.q
    }

    pub fn element(&self, value: u32) -> Result<FieldElement, AlgebraError> {
        if value >= self.0.q {
            return Err(AlgebraError::MalformedCoefficient(value.to_string()));
        }
        Ok(FieldElement { field: self.clone(), value })
    }

    /// Smallest degree d dividing m such that `a` lies in GF(p^d).
    pub fn minimal_degree(&self, a: u32) -> u32 {
        (1..=self.0.m)
            .filter(|d| self.0.m % d == 0)
            .find(|&d| self.pow(a, (self.0.p as u64).pow(d)) == a)
            .unwrap_or(self.0.m)
    }

    /// Formats an element: a plain integer in prime fields, a coefficient
    /// vector otherwise.
    pub fn format(&self, a: u32) -> String {
        if self.0.m == 1 {
            a.to_string()
        } else {
            let c: Vec<String> = self.coefficients(a).iter().map(|c| c.to_string()).collect();
            format!("[{}]", c.join(","))
        }
    }
}

/// An element bundled with its field, for checked arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldSpec,
    value: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(self.value))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(self.value))
    }
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::MixedFields);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_field(other)?;
        Ok(Self { field: self.field.clone(), value: self.field.add(self.value, other.value) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_field(other)?;
        Ok(Self { field: self.field.clone(), value: self.field.sub(self.value, other.value) })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_field(other)?;
        Ok(Self { field: self.field.clone(), value: self.field.mul(self.value, other.value) })
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        let value = self.field.inv(self.value).ok_or(AlgebraError::ZeroInverse)?;
        Ok(Self { field: self.field.clone(), value })
    }

    pub fn pow(&self, e: u64) -> Self {
        Self { field: self.field.clone(), value: self.field.pow(self.value, e) }
    }

    pub fn frobenius(&self) -> Self {
        Self { field: self.field.clone(), value: self.field.frobenius(self.value) }
    }
}

/// A fixed ring embedding GF(p^m) → GF(p^M), m | M.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: FieldSpec,
    target: FieldSpec,
    table: Arc<Vec<u32>>,
}

impl Embedding {
    /// The embedding sending the source generator `x` to the smallest root
    /// (in encoding order) of the source modulus inside the target.
    pub fn new(source: &FieldSpec, target: &FieldSpec) -> Result<Self, AlgebraError> {
        type Key = (u32, Vec<u32>, Vec<u32>);
        static CACHE: OnceLock<Mutex<HashMap<Key, Arc<Vec<u32>>>>> = OnceLock::new();

        let (p, m, big_m) = (source.characteristic(), source.degree(), target.degree());
        if p != target.characteristic() || big_m % m != 0 {
            return Err(AlgebraError::NoEmbedding { from: format!("{source:?}"), to: format!("{target:?}") });
        }
        let key = (p, source.modulus().to_vec(), target.modulus().to_vec());
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(table) = cache.lock().unwrap().get(&key) {
            return Ok(Self { source: source.clone(), target: target.clone(), table: table.clone() });
        }

        let table: Vec<u32> = if m == 1 {
            source.elements().collect()
        } else {
            let root = target
                .elements()
                .find(|&x| source.modulus().iter().rev().fold(0, |acc, &c| target.add(target.mul(acc, x), c)) == 0)
                .ok_or_else(|| AlgebraError::NoEmbedding { from: format!("{source:?}"), to: format!("{target:?}") })?;
            source
                .elements()
                .map(|a| source.coefficients(a).iter().rev().fold(0, |acc, &c| target.add(target.mul(acc, root), c)))
                .collect()
        };
        let table = Arc::new(table);
        cache.lock().unwrap().insert(key, table.clone());
        Ok(Self { source: source.clone(), target: target.clone(), table })
    }

    pub fn source(&self) -> &FieldSpec {
        &self.source
    }

    pub fn target(&self) -> &FieldSpec {
        &self.target
    }

    #[inline]
    pub fn apply(&self, a: u32) -> u32 {
        self.table[a as usize]
    }
}

/// Embeds `a` into a larger field of the same characteristic.
pub fn embed_tower(a: &FieldElement, target: &FieldSpec) -> Result<FieldElement, AlgebraError> {
    let e = Embedding::new(a.field(), target)?;
    Ok(FieldElement { field: target.clone(), value: e.apply(a.value()) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_small_fields() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]);
        assert_eq!(f2.add(1, 1), 0);
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(make_field(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(make_field(2, 8).unwrap().modulus_string(), "x^8+x^4+x^3+x+1");
    }

    #[test]
    fn gf4_is_forced_by_exhaustive_irreducibility() {
        // x^2 + a x + b over GF(2): only one of the four has no root
        let irreducible: Vec<(u32, u32)> = (0..2)
            .flat_map(|a| (0..2).map(move |b| (a, b)))
            .filter(|&(a, b)| (0..2u32).all(|x| (x * x + a * x + b) % 2 != 0))
            .collect();
        assert_eq!(irreducible, vec![(1, 1)]);
        assert_eq!(make_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
    }

    #[test]
    fn theta_identities_in_gf4() {
        let f4 = make_field(2, 2).unwrap();
        let theta = 2;
        assert_eq!(f4.mul(theta, theta), 3);
        let theta_sq = f4.mul(theta, theta);
        assert_eq!(f4.mul(theta, theta_sq), 1);
        assert_eq!(f4.inv(theta), Some(theta_sq));
    }

    #[test]
    fn cap_and_primality() {
        assert_eq!(make_field(2, 16).unwrap().order(), 65536);
        assert!(matches!(make_field(2, 17), Err(AlgebraError::FieldTooLarge { .. })));
        assert!(matches!(make_field(4, 1), Err(AlgebraError::NotPrime(4))));
        assert!(matches!(make_field(2, 0), Err(AlgebraError::FieldDegree(0))));
        assert_eq!(make_field(3, 10).unwrap().order(), 59049);
        assert!(make_field(3, 11).is_err());
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x+1)^2 over GF(2)
        assert!(matches!(FieldSpec::from_modulus(2, &[1, 0, 1]), Err(AlgebraError::BadModulus(_))));
    }

    #[test]
    fn checked_element_errors() {
        let f4 = make_field(2, 2).unwrap();
        let f8 = make_field(2, 3).unwrap();
        let a = f4.element(2).unwrap();
        let b = f8.element(2).unwrap();
        assert!(matches!(a.mul(&b), Err(AlgebraError::MixedFields)));
        assert!(matches!(f4.element(0).unwrap().inv(), Err(AlgebraError::ZeroInverse)));
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, m) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 2), (2, 8)] {
            let f = make_field(p, m).unwrap();
            let q = f.order();
            for a in f.elements() {
                assert_eq!(f.pow(a, q as u64), a, "Frobenius fixed point in {f:?}");
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
            // the full triple loop is q^3; keep it for q <= 49 and sample above
            let step = if q > 49 { 7 } else { 1 };
            for a in f.elements().step_by(step) {
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                    for c in f.elements().step_by(step) {
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                        assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn embedding_gf4_into_gf16_uses_smallest_root() {
        let f4 = make_field(2, 2).unwrap();
        let f16 = make_field(2, 4).unwrap();
        let roots: Vec<u32> = f16.elements().filter(|&x| f16.add(f16.add(f16.mul(x, x), x), 1) == 0).collect();
        assert_eq!(roots.len(), 2);
        let theta = embed_tower(&f4.element(2).unwrap(), &f16).unwrap();
        assert_eq!(theta.value(), roots[0]);
    }

    #[test]
    fn embeddings_are_ring_maps_and_coherent() {
        let f2 = make_field(2, 1).unwrap();
        let f4 = make_field(2, 2).unwrap();
        let f16 = make_field(2, 4).unwrap();
        for a in f2.elements() {
            let x = f2.element(a).unwrap();
            let via = embed_tower(&embed_tower(&x, &f4).unwrap(), &f16).unwrap();
            assert_eq!(via, embed_tower(&x, &f16).unwrap());
        }
        for (src, dst) in [(&f4, &f16), (&f2, &f4), (&make_field(2, 3).unwrap(), &make_field(2, 6).unwrap())] {
            let e = Embedding::new(src, dst).unwrap();
            assert_eq!(e.apply(0), 0);
            assert_eq!(e.apply(1), 1);
            for a in src.elements() {
                for b in src.elements() {
                    assert_eq!(e.apply(src.add(a, b)), dst.add(e.apply(a), e.apply(b)));
                    assert_eq!(e.apply(src.mul(a, b)), dst.mul(e.apply(a), e.apply(b)));
                }
            }
        }
        assert!(Embedding::new(&make_field(2, 3).unwrap(), &f16).is_err());
    }

    #[test]
    fn minimal_degree_of_subfield_elements() {
        let f16 = make_field(2, 4).unwrap();
        let e = Embedding::new(&make_field(2, 2).unwrap(), &f16).unwrap();
        assert_eq!(f16.minimal_degree(e.apply(2)), 2);
        assert_eq!(f16.minimal_degree(1), 1);
        assert_eq!(f16.minimal_degree(f16.primitive_element()), 4);
    }
}
