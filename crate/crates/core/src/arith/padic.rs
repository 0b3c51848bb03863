use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on `p^N` so that residues fit comfortably in a `u64`.
const MAX_MODULUS: u64 = 1 << 62;

/// p-adic valuation of a residue modulo `p^N`.
///
/// Zero has no finite valuation at working precision; it is reported as
/// [`Valuation::Saturated`], which compares greater than every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Valuation {
    Finite(u32),
    Saturated,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Saturated => None,
        }
    }

    pub fn is_saturated(self) -> bool {
        matches!(self, Valuation::Saturated)
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Saturated) => Ordering::Less,
            (Valuation::Saturated, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Saturated, Valuation::Saturated) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Saturated => write!(f, "sat"),
        }
    }
}

/// `Zp` at decision precision `N`.
///
/// Residues are stored modulo `p^M`, where `M >= N` is the largest exponent
/// with `p^M <= 2^62`. The extra digits absorb the loss from exact divisions
/// by powers of `p`; every zero test and valuation is taken modulo `p^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicRing {
    p: u64,
    precision: u32,
    guard: u32,
    internal: u32,
    modulus: u64,
    decision_modulus: u64,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PadicRing {
    pub fn new(p: u64, precision: u32, guard: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("{p} is not prime")));
        }
        if precision == 0 {
            return Err(Error::InvalidParams("precision must be positive".into()));
        }
        if guard >= precision {
            return Err(Error::InvalidParams(format!(
                "guard {guard} must be below precision {precision}"
            )));
        }
        let mut modulus: u64 = 1;
        let mut internal = 0;
        while let Some(m) = modulus.checked_mul(p).filter(|m| *m <= MAX_MODULUS) {
            modulus = m;
            internal += 1;
        }
        if precision > internal {
            return Err(Error::InvalidParams(format!(
                "{p}^{precision} exceeds the supported range"
            )));
        }
        Ok(PadicRing {
            p,
            precision,
            guard,
            internal,
            modulus,
            decision_modulus: p.pow(precision),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    /// Storage modulus `p^M`.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Digits available beyond `N` for division losses.
    pub fn headroom(&self) -> u32 {
        self.internal - self.precision
    }

    /// `p^e` as a residue (zero once `e` exceeds the storage precision).
    pub fn p_pow(&self, e: u32) -> u64 {
        if e >= self.internal {
            return 0;
        }
        self.p.pow(e)
    }

    /// The integer `p^e` for `e <= N` (used as a modulus for torsion coordinates).
    pub fn p_pow_int(&self, e: u32) -> u64 {
        debug_assert!(e <= self.internal);
        self.p.pow(e)
    }

    /// The residue modulo `p^N`.
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.decision_modulus
    }

    pub fn is_zero(&self, x: u64) -> bool {
        x.is_multiple_of(self.decision_modulus)
    }

    pub fn eq(&self, a: u64, b: u64) -> bool {
        self.is_zero(self.sub(a, b))
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        let m = self.modulus as i128;
        (x as i128).rem_euclid(m) as u64
    }

    pub fn from_u64(&self, x: u64) -> u64 {
        x % self.modulus
    }

    /// Symmetric representative of `x mod p^N` in `(-p^N/2, p^N/2]`.
    pub fn to_signed(&self, x: u64) -> i64 {
        let x = self.reduce(x);
        if x > self.decision_modulus / 2 {
            x as i64 - self.decision_modulus as i64
        } else {
            x as i64
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn valuation(&self, x: u64) -> Valuation {
        if self.is_zero(x) {
            return Valuation::Saturated;
        }
        let mut v = 0;
        let mut y = x;
        while y.is_multiple_of(self.p) {
            y /= self.p;
            v += 1;
        }
        Valuation::Finite(v)
    }

    /// True when `x` is indistinguishable from zero inside the guard band.
    pub fn is_negligible(&self, x: u64) -> bool {
        match self.valuation(x) {
            Valuation::Saturated => true,
            Valuation::Finite(v) => v >= self.precision - self.guard,
        }
    }

    pub fn unit_inverse(&self, a: u64) -> Result<u64> {
        if a.is_multiple_of(self.p) {
            return Err(Error::NotAUnit(a));
        }
        let (mut old_r, mut r) = (a as i128, self.modulus as i128);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        debug_assert_eq!(old_r, 1);
        Ok(old_s.rem_euclid(self.modulus as i128) as u64)
    }

    /// Exact division of a residue by `p^v`; the caller guarantees `v <= valuation(x)`.
    pub fn div_p_pow(&self, x: u64, v: u32) -> u64 {
        if x == 0 {
            return 0;
        }
        x / self.p.pow(v)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

/// An element of `Zp` truncated at precision `p^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicInt {
    value: u64,
    ring: PadicRing,
}

impl PadicInt {
    pub fn new(ring: PadicRing, value: i64) -> Self {
        PadicInt {
            value: ring.reduce(ring.from_i64(value)),
            ring,
        }
    }

    pub fn from_residue(ring: PadicRing, value: u64) -> Self {
        PadicInt {
            value: ring.reduce(ring.from_u64(value)),
            ring,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn ring(&self) -> PadicRing {
        self.ring
    }

    pub fn valuation(&self) -> Valuation {
        self.ring.valuation(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn add(&self, other: &PadicInt) -> PadicInt {
        debug_assert_eq!(self.ring, other.ring);
        PadicInt {
            value: self.ring.reduce(self.ring.add(self.value, other.value)),
            ring: self.ring,
        }
    }

    pub fn mul(&self, other: &PadicInt) -> PadicInt {
        debug_assert_eq!(self.ring, other.ring);
        PadicInt {
            value: self.ring.reduce(self.ring.mul(self.value, other.value)),
            ring: self.ring,
        }
    }

    pub fn unit_inverse(&self) -> Result<PadicInt> {
        Ok(PadicInt {
            value: self.ring.reduce(self.ring.unit_inverse(self.value)?),
            ring: self.ring,
        })
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.to_signed(self.value))
    }
}

pub fn padic_mul(a: &PadicInt, b: &PadicInt) -> PadicInt {
    a.mul(b)
}

pub fn padic_unit_inverse(a: &PadicInt) -> Result<PadicInt> {
    a.unit_inverse()
}
