//! Ideals of the quadratic order `Z[w]`, `w = sqrt(d)`, `d < 0`, as rank-2
//! lattices `Z*a + Z*(b + c*w)` in Hermite normal form.

use crate::error::{Error, Result};
use crate::rings::{RingElement, RingKind, RingSpec};
use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadIdeal {
    ring: RingSpec,
    /// `a > 0`, `c > 0`, `0 <= b < a`.
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

/// `P^m = (b)` with `m` least.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionWitness {
    pub m: u32,
    pub b: RingElement,
}

fn d_of(ring: RingSpec) -> Result<i64> {
    match ring.kind() {
        RingKind::QuadraticOrder(d) => Ok(d),
        _ => Err(Error::Unsupported(format!("{ring} is not a quadratic order"))),
    }
}

fn parts(x: &RingElement) -> (BigInt, BigInt) {
    let (u, v) = x.quad_parts().expect("quadratic order element");
    (u.clone(), v.clone())
}

impl QuadIdeal {
    /// HNF of the Z-span of `vectors` (pairs `(u, v)` meaning `u + v*w`).
    /// `None` when the span has rank below 2.
    fn hnf(ring: RingSpec, vectors: &[(BigInt, BigInt)]) -> Option<Self> {
        let mut pivot: Option<(BigInt, BigInt)> = None;
        let mut a = BigInt::zero();
        for (u, v) in vectors {
            if v.is_zero() {
                a = a.gcd(u);
                continue;
            }
            match pivot.take() {
                None => pivot = Some((u.clone(), v.clone())),
                Some((pu, pv)) => {
                    let e = pv.extended_gcd(v);
                    let g = e.gcd;
                    let nu = &e.x * &pu + &e.y * u;
                    // The complementary combination has zero w-part.
                    let zu = (v / &g) * &pu - (&pv / &g) * u;
                    a = a.gcd(&zu);
                    pivot = Some((nu, g));
                }
            }
        }
        let (mut b, mut c) = pivot?;
        if a.is_zero() {
            return None;
        }
        if c.is_negative() {
            b = -b;
            c = -c;
        }
        let b = b.mod_floor(&a);
        Some(QuadIdeal { ring, a, b, c })
    }

    /// The ideal generated by the given elements.
    pub fn from_generators(ring: RingSpec, gens: &[RingElement]) -> Result<Self> {
        let d = BigInt::from(d_of(ring)?);
        let mut vectors = Vec::new();
        for g in gens {
            if g.ring() != ring {
                return Err(Error::mixed(ring, g.ring()));
            }
            let (u, v) = parts(g);
            vectors.push((&d * &v, u.clone()));
            vectors.push((u, v));
        }
        Self::hnf(ring, &vectors).ok_or(Error::ZeroIdeal)
    }

    pub fn principal(x: &RingElement) -> Result<Self> {
        Self::from_generators(x.ring(), std::slice::from_ref(x))
    }

    pub fn unit(ring: RingSpec) -> Result<Self> {
        Self::principal(&RingElement::one(ring))
    }

    /// Validates an explicit HNF basis, including closure under `w`.
    pub fn from_hnf(ring: RingSpec, a: BigInt, b: BigInt, c: BigInt) -> Result<Self> {
        d_of(ring)?;
        if !a.is_positive() || !c.is_positive() || b.is_negative() || b >= a {
            return Err(Error::Usage(format!("({a}, {b}, {c}) is not in Hermite normal form")));
        }
        let out = QuadIdeal { ring, a, b, c };
        for g in out.basis() {
            let w = RingElement::quad(ring, 0, 1)?;
            if !out.contains(&(&g * &w)) {
                return Err(Error::Usage(format!("lattice {out} is not closed under sqrt")));
            }
        }
        Ok(out)
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn hnf_entries(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c)
    }

    /// The two basis elements `a` and `b + c*w`.
    pub fn basis(&self) -> [RingElement; 2] {
        [
            RingElement::quad(self.ring, self.a.clone(), 0).expect("quad"),
            RingElement::quad(self.ring, self.b.clone(), self.c.clone()).expect("quad"),
        ]
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.c
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.norm().is_one()
    }

    pub fn contains(&self, x: &RingElement) -> bool {
        if x.ring() != self.ring {
            return false;
        }
        let (u, v) = parts(x);
        if !(&v % &self.c).is_zero() {
            return false;
        }
        let k = &v / &self.c;
        ((u - k * &self.b) % &self.a).is_zero()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.ring, rhs.ring, "mixed rings");
        let mut vectors = Vec::with_capacity(4);
        for x in self.basis() {
            for y in rhs.basis() {
                vectors.push(parts(&(&x * &y)));
            }
        }
        Self::hnf(self.ring, &vectors).expect("product of nonzero ideals is nonzero")
    }

    pub fn pow(&self, m: u32) -> Self {
        let mut acc = Self::unit(self.ring).expect("quad ring");
        for _ in 0..m {
            acc = acc.mul(self);
        }
        acc
    }

    /// A generator, found by enumerating `u^2 - d v^2 = N`.
    ///
    /// Candidates are tried with `v` increasing and the sign fixed so that
    /// `u > 0`, or `u = 0` and `v > 0`.
    pub fn is_principal(&self) -> Option<RingElement> {
        let n = self.norm();
        let md = BigInt::from(-d_of(self.ring).ok()?);
        let mut v = BigInt::zero();
        while &md * &v * &v <= n {
            let rest: BigInt = &n - &md * &v * &v;
            let u = rest.sqrt();
            if &u * &u == rest {
                let mut cands = vec![(u.clone(), v.clone())];
                if !v.is_zero() {
                    cands.push((u.clone(), -v.clone()));
                }
                for (cu, cv) in cands {
                    let x = RingElement::quad(self.ring, cu, cv).ok()?;
                    let (x, _) = x.canonical_associate();
                    if Self::principal(&x).ok().as_ref() == Some(self) {
                        return Some(x);
                    }
                }
            }
            v += 1;
        }
        None
    }

    /// Nonzero prime: prime norm, or norm `q^2` for `(q)` with `q` inert.
    pub fn is_prime(&self) -> Result<()> {
        let n = self.norm();
        let not_prime = |reason: String| Error::NotPrime { reason, witness: None };
        let nn = n
            .to_u64()
            .ok_or_else(|| Error::Unsupported(format!("norm {n} beyond 64 bits")))?;
        if nn == 1 {
            return Err(not_prime(format!("{self} is the unit ideal")));
        }
        if is_prime(nn) {
            return Ok(());
        }
        let q = nn.sqrt();
        if q * q == nn && is_prime(q) {
            let principal_q = Self::principal(&RingElement::quad(self.ring, q, 0).expect("quad"))?;
            let d = d_of(self.ring)?;
            if *self == principal_q && is_inert(d, q) {
                return Ok(());
            }
        }
        Err(not_prime(format!("{self} has composite norm {n} and is not an inert prime")))
    }

    /// Least `m <= bound` with `P^m` principal.
    pub fn torsion_witness(&self, bound: u32) -> Result<TorsionWitness> {
        self.is_prime()?;
        let mut power = Self::unit(self.ring)?;
        for m in 1..=bound {
            power = power.mul(self);
            if let Some(b) = power.is_principal() {
                return Ok(TorsionWitness { m, b });
            }
        }
        Err(Error::TorsionBoundExceeded(bound))
    }
}

impl TorsionWitness {
    /// Independent re-check by lattice equality and norms.
    pub fn holds_for(&self, p: &QuadIdeal) -> bool {
        let Ok(principal) = QuadIdeal::principal(&self.b) else { return false };
        let (u, v) = parts(&self.b);
        let d = BigInt::from(d_of(p.ring).unwrap_or(0));
        let nb = &u * &u - d * &v * &v;
        p.pow(self.m) == principal && nb == num_traits::pow(p.norm(), self.m as usize)
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && crate::rings::smallest_factor_u64(n, u64::MAX).is_none()
}

/// Whether `q` stays prime in `Z[sqrt(d)]`: `d` is a non-residue mod odd `q`.
fn is_inert(d: i64, q: u64) -> bool {
    if q == 2 {
        return false;
    }
    let r = d.rem_euclid(q as i64) as u64;
    if r == 0 {
        return false;
    }
    let f = crate::field::Fp::new(q);
    f.pow(r, (q - 1) / 2) == q - 1
}

impl fmt::Display for QuadIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y] = self.basis();
        write!(f, "qideal({x}; {y})")
    }
}
