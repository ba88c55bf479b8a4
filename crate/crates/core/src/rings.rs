//! The fixed tower of coefficient rings and their exactly-represented elements.
//!
//! Supported rings: `ZZ`, `QQ`, `GF(p)`, `GF(p)[t]`, `QQ[t]`, the monomial
//! subrings `GF(p)[t^2,t^3]` and `QQ[t^2,t^3]`, and the quadratic order
//! `ZZ[sqrt(d)]` for squarefree `d < 0` (in practice `d = -5`).

use crate::error::{Error, Result};
use crate::field::{self, Field, Fp, Qq};
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingKind {
    Integers,
    Rationals,
    PrimeField(u64),
    PolyOverPrimeField(u64),
    PolyOverRationals,
    /// `K[t^2, t^3]` over `F_p`, or over `Q` when the parameter is 0.
    MonomialSubring(u64),
    QuadraticOrder(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingSpec {
    kind: RingKind,
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    let f = Fp::new(n);
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = f.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = f.mul(&x, &x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn smallest_factor_u64(n: u64, limit: u64) -> Option<u64> {
    let mut k = 2u64;
    while k <= limit && k.saturating_mul(k) <= n {
        if n.is_multiple_of(k) {
            return Some(k);
        }
        k += 1;
    }
    None
}

fn is_squarefree(d: i64) -> bool {
    let n = d.unsigned_abs();
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

impl RingSpec {
    pub fn integers() -> Self {
        RingSpec { kind: RingKind::Integers }
    }

    pub fn rationals() -> Self {
        RingSpec { kind: RingKind::Rationals }
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        Self::check_prime(p)?;
        Ok(RingSpec { kind: RingKind::PrimeField(p) })
    }

    pub fn poly_over_prime_field(p: u64) -> Result<Self> {
        Self::check_prime(p)?;
        Ok(RingSpec { kind: RingKind::PolyOverPrimeField(p) })
    }

    pub fn poly_over_rationals() -> Self {
        RingSpec { kind: RingKind::PolyOverRationals }
    }

    /// `K[t^2, t^3]` with `K = F_p`, or `K = Q` for `p = 0`.
    pub fn monomial_subring(p: u64) -> Result<Self> {
        if p != 0 {
            Self::check_prime(p)?;
        }
        Ok(RingSpec { kind: RingKind::MonomialSubring(p) })
    }

    pub fn quadratic_order(d: i64) -> Result<Self> {
        if d >= 0 || !is_squarefree(d) || d == -1 {
            return Err(Error::InvalidRing(format!(
                "ZZ[sqrt({d})]: need a squarefree d < -1"
            )));
        }
        Ok(RingSpec { kind: RingKind::QuadraticOrder(d) })
    }

    fn check_prime(p: u64) -> Result<()> {
        if is_prime_u64(p) && p < (1 << 31) {
            Ok(())
        } else {
            Err(Error::InvalidRing(format!("{p} is not a supported prime")))
        }
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn characteristic(&self) -> u64 {
        match self.kind {
            RingKind::PrimeField(p) | RingKind::PolyOverPrimeField(p) => p,
            RingKind::MonomialSubring(p) => p,
            _ => 0,
        }
    }

    pub fn is_normal(&self) -> bool {
        match self.kind {
            RingKind::MonomialSubring(_) => false,
            // Z[sqrt(d)] is the maximal order exactly when d = 2, 3 mod 4.
            RingKind::QuadraticOrder(d) => d.rem_euclid(4) != 1,
            _ => true,
        }
    }

    pub fn is_bezout(&self) -> bool {
        !matches!(
            self.kind,
            RingKind::MonomialSubring(_) | RingKind::QuadraticOrder(_)
        )
    }

    pub fn is_field(&self) -> bool {
        matches!(self.kind, RingKind::Rationals | RingKind::PrimeField(_))
    }

    pub fn krull_dim(&self) -> u32 {
        if self.is_field() {
            0
        } else {
            1
        }
    }

    /// Rings with a polynomial coefficient variable `t`.
    pub fn has_t(&self) -> bool {
        matches!(
            self.kind,
            RingKind::PolyOverPrimeField(_)
                | RingKind::PolyOverRationals
                | RingKind::MonomialSubring(_)
        )
    }

    /// The normalization of a monomial subring.
    pub fn normalization(&self) -> Option<NormalizationData> {
        match self.kind {
            RingKind::MonomialSubring(0) => Some(NormalizationData {
                source: *self,
                target: RingSpec::poly_over_rationals(),
            }),
            RingKind::MonomialSubring(p) => Some(NormalizationData {
                source: *self,
                target: RingSpec { kind: RingKind::PolyOverPrimeField(p) },
            }),
            _ => None,
        }
    }

    pub(crate) fn fp(&self) -> Fp {
        Fp::new(self.characteristic())
    }

    fn uses_mod_poly(&self) -> bool {
        matches!(
            self.kind,
            RingKind::PolyOverPrimeField(_) | RingKind::MonomialSubring(1..)
        )
    }

    fn uses_rat_poly(&self) -> bool {
        matches!(
            self.kind,
            RingKind::PolyOverRationals | RingKind::MonomialSubring(0)
        )
    }

    fn check_sqrt(&self) -> i64 {
        match self.kind {
            RingKind::QuadraticOrder(d) => d,
            _ => unreachable!("not a quadratic order"),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::Integers => write!(f, "ZZ"),
            RingKind::Rationals => write!(f, "QQ"),
            RingKind::PrimeField(p) => write!(f, "GF({p})"),
            RingKind::PolyOverPrimeField(p) => write!(f, "GF({p})[t]"),
            RingKind::PolyOverRationals => write!(f, "QQ[t]"),
            RingKind::MonomialSubring(0) => write!(f, "QQ[t^2,t^3]"),
            RingKind::MonomialSubring(p) => write!(f, "GF({p})[t^2,t^3]"),
            RingKind::QuadraticOrder(d) => write!(f, "ZZ[sqrt({d})]"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let unknown = || Error::UnknownRing(s.to_string());
        let (head, tail) = match compact.find('[') {
            Some(i) if compact.starts_with("GF(") || !compact[..i].contains('(') => {
                // GF(p)[...] has its bracket after the closing paren.
                (&compact[..i], &compact[i..])
            }
            _ => (compact.as_str(), ""),
        };
        let base_prime = if let Some(rest) = head.strip_prefix("GF(") {
            let digits = rest.strip_suffix(')').ok_or_else(unknown)?;
            Some(digits.parse::<u64>().map_err(|_| unknown())?)
        } else {
            None
        };
        match (head, base_prime, tail) {
            ("ZZ", None, "") => Ok(RingSpec::integers()),
            ("QQ", None, "") => Ok(RingSpec::rationals()),
            ("QQ", None, "[t]") => Ok(RingSpec::poly_over_rationals()),
            ("QQ", None, "[t^2,t^3]") => RingSpec::monomial_subring(0),
            (_, Some(p), "") => RingSpec::prime_field(p),
            (_, Some(p), "[t]") => RingSpec::poly_over_prime_field(p),
            (_, Some(p), "[t^2,t^3]") => RingSpec::monomial_subring(p),
            ("ZZ", None, t) if t.starts_with("[sqrt(") && t.ends_with(")]") => {
                let d = t["[sqrt(".len()..t.len() - 2]
                    .parse::<i64>()
                    .map_err(|_| unknown())?;
                RingSpec::quadratic_order(d)
            }
            _ => Err(unknown()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Repr {
    Int(BigInt),
    Rat(BigRational),
    Mod(u64),
    /// Ascending coefficients in `t`, residues mod p.
    ModPoly(Vec<u64>),
    RatPoly(Vec<BigRational>),
    /// `u + v*sqrt(d)`.
    Quad(BigInt, BigInt),
}

/// The result of [`RingElement::gcd_bezout`]: `s*x + t*y = g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bezout {
    pub g: RingElement,
    pub s: RingElement,
    pub t: RingElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: RingSpec,
    repr: Repr,
}

impl RingElement {
    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn zero(ring: RingSpec) -> Self {
        Self::from_int(ring, 0)
    }

    pub fn one(ring: RingSpec) -> Self {
        Self::from_int(ring, 1)
    }

    /// The image of an integer under `Z -> ring`.
    pub fn from_int(ring: RingSpec, n: impl Into<BigInt>) -> Self {
        let n: BigInt = n.into();
        let repr = match ring.kind {
            RingKind::Integers => Repr::Int(n),
            RingKind::Rationals => Repr::Rat(BigRational::from_integer(n)),
            RingKind::PrimeField(p) => Repr::Mod(mod_big(&n, p)),
            _ if ring.uses_mod_poly() => {
                Repr::ModPoly(field::trimmed(&ring.fp(), vec![mod_big(&n, ring.characteristic())]))
            }
            _ if ring.uses_rat_poly() => {
                Repr::RatPoly(field::trimmed(&Qq, vec![BigRational::from_integer(n)]))
            }
            RingKind::QuadraticOrder(_) => Repr::Quad(n, BigInt::zero()),
            _ => unreachable!(),
        };
        RingElement { ring, repr }
    }

    pub fn from_rational(ring: RingSpec, q: &BigRational) -> Result<Self> {
        if q.is_integer() {
            return Ok(Self::from_int(ring, q.to_integer()));
        }
        let num = Self::from_int(ring, q.numer().clone());
        let den = Self::from_int(ring, q.denom().clone());
        let inv = den.inverse().ok_or_else(|| {
            Error::Unsupported(format!("{q} is not an element of {ring}"))
        })?;
        Ok(&num * &inv)
    }

    /// The coefficient variable `t`; absent from the monomial subrings.
    pub fn t(ring: RingSpec) -> Result<Self> {
        match ring.kind {
            RingKind::PolyOverPrimeField(_) => Ok(RingElement { ring, repr: Repr::ModPoly(vec![0, 1]) }),
            RingKind::PolyOverRationals => Ok(RingElement {
                ring,
                repr: Repr::RatPoly(vec![BigRational::zero(), BigRational::one()]),
            }),
            RingKind::MonomialSubring(_) => Err(Error::SubringEscape(format!("t is not in {ring}"))),
            _ => Err(Error::Unsupported(format!("{ring} has no variable t"))),
        }
    }

    pub fn from_mod_coeffs(ring: RingSpec, coeffs: Vec<u64>) -> Result<Self> {
        if !ring.uses_mod_poly() {
            return Err(Error::Unsupported(format!("{ring} is not a polynomial ring over GF(p)")));
        }
        let fp = ring.fp();
        let coeffs = field::trimmed(&fp, coeffs.into_iter().map(|c| c % fp.p).collect());
        let e = RingElement { ring, repr: Repr::ModPoly(coeffs) };
        e.check_subring()?;
        Ok(e)
    }

    pub fn from_rat_coeffs(ring: RingSpec, coeffs: Vec<BigRational>) -> Result<Self> {
        if !ring.uses_rat_poly() {
            return Err(Error::Unsupported(format!("{ring} is not a polynomial ring over QQ")));
        }
        let e = RingElement { ring, repr: Repr::RatPoly(field::trimmed(&Qq, coeffs)) };
        e.check_subring()?;
        Ok(e)
    }

    pub fn quad(ring: RingSpec, u: impl Into<BigInt>, v: impl Into<BigInt>) -> Result<Self> {
        match ring.kind {
            RingKind::QuadraticOrder(_) => Ok(RingElement { ring, repr: Repr::Quad(u.into(), v.into()) }),
            _ => Err(Error::Unsupported(format!("{ring} is not a quadratic order"))),
        }
    }

    fn check_subring(&self) -> Result<()> {
        if matches!(self.ring.kind, RingKind::MonomialSubring(_)) && !self.t1_free() {
            return Err(Error::SubringEscape(format!("{self} is not in {}", self.ring)));
        }
        Ok(())
    }

    /// True when the coefficient of `t^1` vanishes (vacuous for rings without `t`).
    pub fn t1_free(&self) -> bool {
        match &self.repr {
            Repr::ModPoly(c) => c.get(1).is_none_or(|x| *x == 0),
            Repr::RatPoly(c) => c.get(1).is_none_or(|x| x.is_zero()),
            _ => true,
        }
    }

    pub fn integer(&self) -> Option<&BigInt> {
        match &self.repr {
            Repr::Int(n) => Some(n),
            _ => None,
        }
    }

    pub fn rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(q) => Some(q),
            _ => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Mod(r) => Some(*r),
            _ => None,
        }
    }

    pub fn mod_coeffs(&self) -> Option<&[u64]> {
        match &self.repr {
            Repr::ModPoly(c) => Some(c),
            _ => None,
        }
    }

    pub fn rat_coeffs(&self) -> Option<&[BigRational]> {
        match &self.repr {
            Repr::RatPoly(c) => Some(c),
            _ => None,
        }
    }

    pub fn quad_parts(&self) -> Option<(&BigInt, &BigInt)> {
        match &self.repr {
            Repr::Quad(u, v) => Some((u, v)),
            _ => None,
        }
    }

    /// Degree in `t`, for the polynomial coefficient rings.
    pub fn t_degree(&self) -> Option<usize> {
        match &self.repr {
            Repr::ModPoly(c) => field::degree(c),
            Repr::RatPoly(c) => field::degree(c),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Int(n) => n.is_zero(),
            Repr::Rat(q) => q.is_zero(),
            Repr::Mod(r) => *r == 0,
            Repr::ModPoly(c) => c.is_empty(),
            Repr::RatPoly(c) => c.is_empty(),
            Repr::Quad(u, v) => u.is_zero() && v.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.ring)
    }

    pub fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.same_ring(rhs)?;
        Ok(self.add_unchecked(rhs))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_ring(rhs)?;
        Ok(self.add_unchecked(&rhs.neg_unchecked()))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.same_ring(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    pub(crate) fn same_ring(&self, rhs: &Self) -> Result<()> {
        if self.ring == rhs.ring {
            Ok(())
        } else {
            Err(Error::mixed(self.ring, rhs.ring))
        }
    }

    fn add_unchecked(&self, rhs: &Self) -> Self {
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Int(a), Repr::Int(b)) => Repr::Int(a + b),
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a + b),
            (Repr::Mod(a), Repr::Mod(b)) => Repr::Mod(self.ring.fp().add(a, b)),
            (Repr::ModPoly(a), Repr::ModPoly(b)) => Repr::ModPoly(field::add(&self.ring.fp(), a, b)),
            (Repr::RatPoly(a), Repr::RatPoly(b)) => Repr::RatPoly(field::add(&Qq, a, b)),
            (Repr::Quad(a, b), Repr::Quad(c, d)) => Repr::Quad(a + c, b + d),
            _ => panic!("{}", Error::mixed(self.ring, rhs.ring)),
        };
        RingElement { ring: self.ring, repr }
    }

    fn neg_unchecked(&self) -> Self {
        let repr = match &self.repr {
            Repr::Int(a) => Repr::Int(-a),
            Repr::Rat(a) => Repr::Rat(-a),
            Repr::Mod(a) => Repr::Mod(self.ring.fp().neg(a)),
            Repr::ModPoly(a) => Repr::ModPoly(field::neg(&self.ring.fp(), a)),
            Repr::RatPoly(a) => Repr::RatPoly(field::neg(&Qq, a)),
            Repr::Quad(a, b) => Repr::Quad(-a, -b),
        };
        RingElement { ring: self.ring, repr }
    }

    fn mul_unchecked(&self, rhs: &Self) -> Self {
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Int(a), Repr::Int(b)) => Repr::Int(a * b),
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a * b),
            (Repr::Mod(a), Repr::Mod(b)) => Repr::Mod(self.ring.fp().mul(a, b)),
            (Repr::ModPoly(a), Repr::ModPoly(b)) => Repr::ModPoly(field::mul(&self.ring.fp(), a, b)),
            (Repr::RatPoly(a), Repr::RatPoly(b)) => Repr::RatPoly(field::mul(&Qq, a, b)),
            (Repr::Quad(u, v), Repr::Quad(x, y)) => {
                let d = BigInt::from(self.ring.check_sqrt());
                Repr::Quad(u * x + d * v * y, u * y + v * x)
            }
            _ => panic!("{}", Error::mixed(self.ring, rhs.ring)),
        };
        RingElement { ring: self.ring, repr }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = Self::one(self.ring);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self / rhs` when the quotient exists in the ring.
    pub fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if self.ring != rhs.ring || rhs.is_zero() {
            return None;
        }
        let ring = self.ring;
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Int(a), Repr::Int(b)) => {
                let (q, r) = a.div_rem(b);
                if !r.is_zero() {
                    return None;
                }
                Repr::Int(q)
            }
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a / b),
            (Repr::Mod(a), Repr::Mod(b)) => {
                let fp = ring.fp();
                Repr::Mod(fp.mul(a, &fp.inv(b)?))
            }
            (Repr::ModPoly(a), Repr::ModPoly(b)) => {
                let (q, r) = field::divrem(&ring.fp(), a, b);
                if !r.is_empty() {
                    return None;
                }
                Repr::ModPoly(q)
            }
            (Repr::RatPoly(a), Repr::RatPoly(b)) => {
                let (q, r) = field::divrem(&Qq, a, b);
                if !r.is_empty() {
                    return None;
                }
                Repr::RatPoly(q)
            }
            (Repr::Quad(u, v), Repr::Quad(x, y)) => {
                let d = BigInt::from(ring.check_sqrt());
                let n = x * x - &d * y * y;
                // (u + v w)(x - y w) = (ux - d v y) + (vx - uy) w
                let a = u * x - &d * v * y;
                let b = v * x - u * y;
                if !(&a % &n).is_zero() || !(&b % &n).is_zero() {
                    return None;
                }
                Repr::Quad(a / &n, b / &n)
            }
            _ => return None,
        };
        let out = RingElement { ring, repr };
        if matches!(ring.kind, RingKind::MonomialSubring(_)) && !out.t1_free() {
            return None;
        }
        Some(out)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.exact_div(self).is_some()
    }

    pub fn inverse(&self) -> Option<Self> {
        Self::one(self.ring).exact_div(self)
    }

    /// `self = unit * associate` with `associate` canonical: nonnegative
    /// integers, monic polynomials in `t`, `1` in fields, and `u > 0` (or
    /// `u = 0, v > 0`) in quadratic orders.
    pub fn canonical_associate(&self) -> (Self, Self) {
        let one = Self::one(self.ring);
        if self.is_zero() {
            return (self.clone(), one);
        }
        let unit = match &self.repr {
            Repr::Int(n) => Self::from_int(self.ring, if n.is_negative() { -1 } else { 1 }),
            Repr::Rat(_) | Repr::Mod(_) => self.clone(),
            Repr::ModPoly(c) => RingElement {
                ring: self.ring,
                repr: Repr::ModPoly(vec![*c.last().unwrap()]),
            },
            Repr::RatPoly(c) => RingElement {
                ring: self.ring,
                repr: Repr::RatPoly(vec![c.last().unwrap().clone()]),
            },
            Repr::Quad(u, v) => {
                let positive = u.is_positive() || (u.is_zero() && v.is_positive());
                Self::from_int(self.ring, if positive { 1 } else { -1 })
            }
        };
        let assoc = self.exact_div(&unit).expect("unit divides");
        (assoc, unit)
    }

    pub fn canonical(&self) -> Self {
        self.canonical_associate().0
    }

    /// Euclidean division for `ZZ`, fields and `K[t]`.
    pub fn div_rem_euclid(&self, rhs: &Self) -> Option<(Self, Self)> {
        if self.ring != rhs.ring || rhs.is_zero() {
            return None;
        }
        let ring = self.ring;
        let wrap = |repr| RingElement { ring, repr };
        match (&self.repr, &rhs.repr) {
            (Repr::Int(a), Repr::Int(b)) => {
                let r = a.mod_floor(&b.abs());
                let q = (a - &r) / b;
                Some((wrap(Repr::Int(q)), wrap(Repr::Int(r))))
            }
            (Repr::Rat(_), Repr::Rat(_)) | (Repr::Mod(_), Repr::Mod(_)) => {
                Some((self.exact_div(rhs)?, Self::zero(ring)))
            }
            (Repr::ModPoly(a), Repr::ModPoly(b)) if ring.kind == RingKind::PolyOverPrimeField(ring.characteristic()) => {
                let (q, r) = field::divrem(&ring.fp(), a, b);
                Some((wrap(Repr::ModPoly(q)), wrap(Repr::ModPoly(r))))
            }
            (Repr::RatPoly(a), Repr::RatPoly(b)) if ring.kind == RingKind::PolyOverRationals => {
                let (q, r) = field::divrem(&Qq, a, b);
                Some((wrap(Repr::RatPoly(q)), wrap(Repr::RatPoly(r))))
            }
            _ => None,
        }
    }

    /// Canonical remainder modulo `m` in a Euclidean ring.
    pub fn rem_euclid(&self, m: &Self) -> Option<Self> {
        self.div_rem_euclid(m).map(|(_, r)| r)
    }

    /// Extended gcd over a Bezout ring, normalized so that `g` is canonical.
    pub fn gcd_bezout(x: &Self, y: &Self) -> Result<Bezout> {
        x.same_ring(y)?;
        let ring = x.ring;
        if !ring.is_bezout() {
            return Err(Error::NotBezout(ring.to_string()));
        }
        let (mut r0, mut r1) = (x.clone(), y.clone());
        let (mut s0, mut s1) = (Self::one(ring), Self::zero(ring));
        let (mut t0, mut t1) = (Self::zero(ring), Self::one(ring));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem_euclid(&r1).expect("euclidean ring");
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s2);
            (t0, t1) = (t1, t2);
        }
        let (g, unit) = r0.canonical_associate();
        let inv = unit.inverse().expect("unit");
        Ok(Bezout { g, s: &s0 * &inv, t: &t0 * &inv })
    }

    /// Map into a ring that contains this one.
    pub fn embed(&self, target: RingSpec) -> Result<Self> {
        if self.ring == target {
            return Ok(self.clone());
        }
        let bad = || Error::Unsupported(format!("no embedding {} -> {target}", self.ring));
        match (&self.repr, target.kind) {
            (Repr::Int(n), _) => Ok(Self::from_int(target, n.clone())),
            (Repr::ModPoly(c), RingKind::PolyOverPrimeField(p))
                if self.ring.kind == RingKind::MonomialSubring(p) =>
            {
                Ok(RingElement { ring: target, repr: Repr::ModPoly(c.clone()) })
            }
            (Repr::RatPoly(c), RingKind::PolyOverRationals) => {
                Ok(RingElement { ring: target, repr: Repr::RatPoly(c.clone()) })
            }
            (Repr::Mod(r), _) if target.characteristic() == self.ring.characteristic() => {
                Ok(Self::from_int(target, *r))
            }
            (Repr::Rat(q), _) if target.characteristic() == 0 => Self::from_rational(target, q),
            _ => Err(bad()),
        }
    }

    /// Inverse of [`embed`](Self::embed): succeeds when `self` lies in `target`.
    pub fn restrict(&self, target: RingSpec) -> Result<Self> {
        if self.ring == target {
            return Ok(self.clone());
        }
        let escape = || Error::SubringEscape(format!("{self} is not in {target}"));
        match (&self.repr, target.kind) {
            (Repr::ModPoly(c), RingKind::MonomialSubring(p)) if p == self.ring.characteristic() => {
                Self::from_mod_coeffs(target, c.clone()).map_err(|_| escape())
            }
            (Repr::RatPoly(c), RingKind::MonomialSubring(0)) => {
                Self::from_rat_coeffs(target, c.clone()).map_err(|_| escape())
            }
            (Repr::Rat(q), RingKind::Integers) if q.is_integer() => Ok(Self::from_int(target, q.to_integer())),
            _ => Err(escape()),
        }
    }

    /// A size measure bounding prime-factor multiplicities in a UFD:
    /// bit length for integers, `t`-degree for polynomial rings, 0 in fields.
    pub fn factor_size(&self) -> Option<u64> {
        match &self.repr {
            Repr::Int(n) => Some(n.bits()),
            Repr::Rat(_) | Repr::Mod(_) => Some(0),
            Repr::ModPoly(c) if self.ring.kind == RingKind::PolyOverPrimeField(self.ring.characteristic()) => {
                Some(field::degree(c).unwrap_or(0) as u64)
            }
            Repr::RatPoly(c) if self.ring.kind == RingKind::PolyOverRationals => {
                Some(field::degree(c).unwrap_or(0) as u64)
            }
            _ => None,
        }
    }

    /// Checks that `self` generates a nonzero prime ideal of the base ring.
    pub fn prime_check(&self) -> Result<()> {
        let not_prime = |reason: String, witness: Option<String>| Error::NotPrime { reason, witness };
        match &self.repr {
            Repr::Int(n) => {
                let m = n.abs();
                if m < BigInt::from(2) {
                    return Err(not_prime(format!("{n} is zero or a unit"), None));
                }
                let m = m.to_u64().ok_or_else(|| {
                    Error::Unsupported(format!("primality of {n} beyond 64 bits"))
                })?;
                if is_prime_u64(m) {
                    return Ok(());
                }
                let witness = smallest_factor_u64(m, 10_000_000).map(|k| format!("{k}*{}", m / k));
                Err(not_prime(format!("{n} is composite"), witness))
            }
            Repr::ModPoly(c) if self.ring.kind == RingKind::PolyOverPrimeField(self.ring.characteristic()) => {
                if c.len() < 2 {
                    return Err(not_prime(format!("{self} is zero or a unit"), None));
                }
                let fp = self.ring.fp();
                match field::irreducible_or_factor(&fp, c) {
                    Ok(()) => Ok(()),
                    Err(factor) => {
                        let witness = factor.map(|h| {
                            let other = field::divrem(&fp, &field::monic(&fp, c), &h).0;
                            let show = |v: Vec<u64>| RingElement { ring: self.ring, repr: Repr::ModPoly(v) };
                            format!("({})*({})", show(h), show(other))
                        });
                        Err(not_prime(format!("{self} is reducible"), witness))
                    }
                }
            }
            _ => Err(Error::Unsupported(format!(
                "prime elements of {} are not supported",
                self.ring
            ))),
        }
    }

    /// Signed terms `(negative, magnitude)` in display order.
    pub(crate) fn terms(&self) -> Vec<(bool, String)> {
        fn sym(r: u64, p: u64) -> (bool, u64) {
            if p > 2 && r > p / 2 {
                (true, p - r)
            } else {
                (false, r)
            }
        }
        fn power(coeff: String, k: usize) -> String {
            let var = match k {
                0 => return coeff,
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if coeff == "1" {
                var
            } else {
                format!("{coeff}*{var}")
            }
        }
        match &self.repr {
            Repr::Int(n) => vec![(n.is_negative(), n.abs().to_string())],
            Repr::Rat(q) => vec![(q.is_negative(), q.abs().to_string())],
            Repr::Mod(r) => {
                let (neg, m) = sym(*r, self.ring.characteristic());
                vec![(neg, m.to_string())]
            }
            Repr::ModPoly(c) => {
                let p = self.ring.characteristic();
                let mut out: Vec<(bool, String)> = c
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, x)| **x != 0)
                    .map(|(k, x)| {
                        let (neg, m) = sym(*x, p);
                        (neg, power(m.to_string(), k))
                    })
                    .collect();
                if out.is_empty() {
                    out.push((false, "0".into()));
                }
                out
            }
            Repr::RatPoly(c) => {
                let mut out: Vec<(bool, String)> = c
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| (x.is_negative(), power(x.abs().to_string(), k)))
                    .collect();
                if out.is_empty() {
                    out.push((false, "0".into()));
                }
                out
            }
            Repr::Quad(u, v) => {
                let d = self.ring.check_sqrt();
                let mut out = Vec::new();
                if !u.is_zero() {
                    out.push((u.is_negative(), u.abs().to_string()));
                }
                if !v.is_zero() {
                    let m = v.abs();
                    let s = if m.is_one() {
                        format!("sqrt({d})")
                    } else {
                        format!("{m}*sqrt({d})")
                    };
                    out.push((v.sign() == Sign::Minus, s));
                }
                if out.is_empty() {
                    out.push((false, "0".into()));
                }
                out
            }
        }
    }

    pub fn is_compound(&self) -> bool {
        self.terms().len() > 1
    }
}

fn mod_big(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

pub(crate) fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(bool, String)]) -> fmt::Result {
    for (i, (neg, mag)) in terms.iter().enumerate() {
        match (i, neg) {
            (0, true) => write!(f, "-{mag}")?,
            (0, false) => write!(f, "{mag}")?,
            (_, true) => write!(f, " - {mag}")?,
            (_, false) => write!(f, " + {mag}")?,
        }
    }
    Ok(())
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms())
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.add_unchecked(rhs)
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.add_unchecked(&rhs.neg_unchecked())
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.mul_unchecked(rhs)
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.neg_unchecked()
    }
}

/// The inclusion of a monomial subring into its normalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NormalizationData {
    pub source: RingSpec,
    pub target: RingSpec,
}

impl NormalizationData {
    /// Whether a normalization element lies in the subring, i.e. its
    /// `t^1` coefficient vanishes.
    pub fn subring_member(&self, e: &RingElement) -> bool {
        e.ring() == self.target && e.t1_free()
    }

    pub fn embed(&self, e: &RingElement) -> Result<RingElement> {
        e.embed(self.target)
    }

    pub fn restrict(&self, e: &RingElement) -> Result<RingElement> {
        e.restrict(self.source)
    }
}
