//! Truncated 2-adic integers and the unramified quadratic extension
//! `Z₂[θ]`, θ² + θ + 1 = 0.

use std::fmt;

use super::PadicError;

/// Largest supported absolute precision (residues live in a `u64`).
pub const MAX_PRECISION: u32 = 64;

#[inline]
fn mask(precision: u32) -> u64 {
    if precision >= 64 {
        u64::MAX
    } else {
        (1u64 << precision) - 1
    }
}

/// A residue modulo 2^precision.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicScalar {
    residue: u64,
    precision: u32,
}

/// Valuation of a truncated value: exact, or "at least the precision".
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Exact(u32),
    AtLeast(u32),
}

impl Valuation {
    /// Lower bound usable in comparisons.
    pub fn floor(self) -> u32 {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self.floor() <= other.floor() {
            self
        } else {
            other
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

impl fmt::Debug for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod 2^{})", self.residue, self.precision)
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl PadicScalar {
    pub fn new(residue: u64, precision: u32) -> Self {
        let precision = precision.min(MAX_PRECISION);
        Self { residue: residue & mask(precision), precision }
    }

    pub fn from_i64(v: i64, precision: u32) -> Self {
        Self::new(v as u64, precision)
    }

    pub fn zero(precision: u32) -> Self {
        Self::new(0, precision)
    }

    pub fn one(precision: u32) -> Self {
        Self::new(1, precision)
    }

    pub fn residue(self) -> u64 {
        self.residue
    }

    pub fn precision(self) -> u32 {
        self.precision
    }

    pub fn is_zero(self) -> bool {
        self.residue == 0
    }

    pub fn is_unit(self) -> bool {
        self.residue & 1 == 1
    }

    pub fn valuation(self) -> Valuation {
        if self.residue == 0 {
            Valuation::AtLeast(self.precision)
        } else {
            Valuation::Exact(self.residue.trailing_zeros())
        }
    }

    pub fn add(self, o: Self) -> Self {
        Self::new(self.residue.wrapping_add(o.residue), self.precision.min(o.precision))
    }

    pub fn sub(self, o: Self) -> Self {
        Self::new(self.residue.wrapping_sub(o.residue), self.precision.min(o.precision))
    }

    pub fn neg(self) -> Self {
        Self::new(self.residue.wrapping_neg(), self.precision)
    }

    pub fn mul(self, o: Self) -> Self {
        Self::new(self.residue.wrapping_mul(o.residue), self.precision.min(o.precision))
    }

    /// Inverse of a unit by Newton iteration x ← x(2 − ax).
    pub fn inv(self) -> Result<Self, PadicError> {
        if !self.is_unit() {
            return Err(PadicError::NonUnitInverse);
        }
        let a = self.residue;
        // a·a ≡ 1 mod 8 for odd a; each step doubles the correct bits
        let mut x = a;
        for _ in 0..6 {
            x = x.wrapping_mul(2u64.wrapping_sub(a.wrapping_mul(x)));
        }
        Ok(Self::new(x, self.precision))
    }

    /// Exact division by 2^k; costs k bits of precision.
    pub fn shr_exact(self, k: u32) -> Result<Self, PadicError> {
        if k == 0 {
            return Ok(self);
        }
        if k >= self.precision || self.residue & mask(k) != 0 {
            return Err(PadicError::InexactDivision(k));
        }
        Ok(Self::new(self.residue >> k, self.precision - k))
    }

    /// Truncates to a lower precision.
    pub fn with_precision(self, precision: u32) -> Self {
        Self::new(self.residue, precision.min(self.precision))
    }
}

/// An element a + bθ of Z₂[θ] with θ² = −θ − 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadExtScalar {
    pub a: PadicScalar,
    pub b: PadicScalar,
}

impl fmt::Debug for QuadExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for QuadExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "[{},{}]", self.a, self.b)
        }
    }
}

impl QuadExtScalar {
    pub fn new(a: PadicScalar, b: PadicScalar) -> Self {
        Self { a, b }
    }

    pub fn base(a: PadicScalar) -> Self {
        Self { a, b: PadicScalar::zero(a.precision()) }
    }

    pub fn from_i64(v: i64, precision: u32) -> Self {
        Self::base(PadicScalar::from_i64(v, precision))
    }

    pub fn zero(precision: u32) -> Self {
        Self::from_i64(0, precision)
    }

    pub fn one(precision: u32) -> Self {
        Self::from_i64(1, precision)
    }

    pub fn theta(precision: u32) -> Self {
        Self { a: PadicScalar::zero(precision), b: PadicScalar::one(precision) }
    }

    pub fn precision(self) -> u32 {
        self.a.precision().min(self.b.precision())
    }

    pub fn is_zero(self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_base(self) -> bool {
        self.b.is_zero()
    }

    /// Units are exactly the elements with nonzero reduction in GF(4).
    pub fn is_unit(self) -> bool {
        self.a.is_unit() || self.b.is_unit()
    }

    pub fn valuation(self) -> Valuation {
        self.a.valuation().min(self.b.valuation())
    }

    pub fn add(self, o: Self) -> Self {
        Self { a: self.a.add(o.a), b: self.b.add(o.b) }
    }

    pub fn sub(self, o: Self) -> Self {
        Self { a: self.a.sub(o.a), b: self.b.sub(o.b) }
    }

    pub fn neg(self) -> Self {
        Self { a: self.a.neg(), b: self.b.neg() }
    }

    /// (a + bθ)(c + dθ) = (ac − bd) + (ad + bc − bd)θ.
    pub fn mul(self, o: Self) -> Self {
        let bd = self.b.mul(o.b);
        Self { a: self.a.mul(o.a).sub(bd), b: self.a.mul(o.b).add(self.b.mul(o.a)).sub(bd) }
    }

    /// Galois conjugation θ ↦ θ² = −1 − θ.
    pub fn conj(self) -> Self {
        Self { a: self.a.sub(self.b), b: self.b.neg() }
    }

    /// Norm to the base ring; the θ-component of the product vanishes.
    pub fn norm(self) -> PadicScalar {
        self.mul(self.conj()).a
    }

    pub fn inv(self) -> Result<Self, PadicError> {
        let n = self.norm();
        let ninv = n.inv()?;
        let c = self.conj();
        Ok(Self { a: c.a.mul(ninv), b: c.b.mul(ninv) })
    }

    pub fn shr_exact(self, k: u32) -> Result<Self, PadicError> {
        Ok(Self { a: self.a.shr_exact(k)?, b: self.b.shr_exact(k)? })
    }

    pub fn with_precision(self, precision: u32) -> Self {
        Self { a: self.a.with_precision(precision), b: self.b.with_precision(precision) }
    }

    /// Multiplies by 2^k (exact, precision unchanged).
    pub fn shl(self, k: u32) -> Self {
        let f = |s: PadicScalar| PadicScalar::new(if k >= 64 { 0 } else { s.residue() << k }, s.precision());
        Self { a: f(self.a), b: f(self.b) }
    }

    /// Reduction modulo 2 as a GF(4) encoding (bit 0: constant, bit 1: θ).
    pub fn reduce_mod2(self) -> u32 {
        (self.a.residue() & 1) as u32 | (((self.b.residue() & 1) as u32) << 1)
    }

    /// Canonical lift of a GF(4) encoding.
    pub fn lift_gf4(v: u32, precision: u32) -> Self {
        Self { a: PadicScalar::new((v & 1) as u64, precision), b: PadicScalar::new(((v >> 1) & 1) as u64, precision) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(PadicScalar::new(8, 64).valuation(), Valuation::Exact(3));
        assert_eq!(PadicScalar::new(0, 64).valuation(), Valuation::AtLeast(64));
        assert_eq!(Valuation::AtLeast(64).to_string(), ">=64");
    }

    #[test]
    fn theta_squared() {
        let t = QuadExtScalar::theta(64);
        let sq = t.mul(t);
        assert_eq!(sq, QuadExtScalar::new(PadicScalar::from_i64(-1, 64), PadicScalar::from_i64(-1, 64)));
        // θ³ = 1
        assert_eq!(sq.mul(t), QuadExtScalar::one(64));
    }

    #[test]
    fn conjugation_is_involution_and_norm_is_base() {
        let x = QuadExtScalar::new(PadicScalar::new(12345, 64), PadicScalar::new(678, 64));
        assert_eq!(x.conj().conj(), x);
        assert!(x.mul(x.conj()).is_base());
        let y = QuadExtScalar::new(PadicScalar::new(77, 64), PadicScalar::new(2, 64));
        assert_eq!(x.mul(y).conj(), x.conj().mul(y.conj()));
        assert_eq!(x.add(y).conj(), x.conj().add(y.conj()));
    }

    #[test]
    fn inverses() {
        let a = PadicScalar::new(12347, 64);
        assert_eq!(a.mul(a.inv().unwrap()), PadicScalar::one(64));
        assert!(PadicScalar::new(6, 64).inv().is_err());
        let x = QuadExtScalar::new(PadicScalar::new(4, 64), PadicScalar::new(3, 64));
        assert_eq!(x.mul(x.inv().unwrap()), QuadExtScalar::one(64));
        assert!(QuadExtScalar::from_i64(2, 64).inv().is_err());
    }

    #[test]
    fn exact_shift_tracks_precision() {
        let a = PadicScalar::new(40, 64);
        let b = a.shr_exact(3).unwrap();
        assert_eq!(b.residue(), 5);
        assert_eq!(b.precision(), 61);
        assert!(a.shr_exact(4).is_err());
    }

    #[test]
    fn valuation_is_additive_below_cap() {
        for (x, y) in [(12u64, 40u64), (3, 96), (1 << 20, 7 << 5)] {
            let (a, b) = (PadicScalar::new(x, 64), PadicScalar::new(y, 64));
            assert_eq!(a.mul(b).valuation().floor(), a.valuation().floor() + b.valuation().floor());
        }
    }
}
