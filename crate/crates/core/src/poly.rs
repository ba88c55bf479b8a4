//! Univariate polynomials `R[X]` over any ring of the tower.

use crate::error::{Error, Result};
use crate::rings::{write_terms, RingElement, RingSpec};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    ring: RingSpec,
    /// Ascending in X, no trailing zeros.
    coeffs: Vec<RingElement>,
}

impl UniPoly {
    pub fn new(ring: RingSpec, coeffs: Vec<RingElement>) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|c| c.ring() != ring) {
            return Err(Error::mixed(ring, c.ring()));
        }
        Ok(Self::from_coeffs(ring, coeffs))
    }

    pub(crate) fn from_coeffs(ring: RingSpec, mut coeffs: Vec<RingElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { ring, coeffs }
    }

    pub fn zero(ring: RingSpec) -> Self {
        UniPoly { ring, coeffs: Vec::new() }
    }

    pub fn one(ring: RingSpec) -> Self {
        Self::constant(RingElement::one(ring))
    }

    pub fn x(ring: RingSpec) -> Self {
        Self::monomial(RingElement::one(ring), 1)
    }

    pub fn constant(c: RingElement) -> Self {
        let ring = c.ring();
        Self::from_coeffs(ring, vec![c])
    }

    pub fn monomial(c: RingElement, k: usize) -> Self {
        let ring = c.ring();
        let mut coeffs = vec![RingElement::zero(ring); k];
        coeffs.push(c);
        Self::from_coeffs(ring, coeffs)
    }

    /// `X - a`.
    pub fn x_minus(a: &RingElement) -> Self {
        let ring = a.ring();
        Self::from_coeffs(ring, vec![-a, RingElement::one(ring)])
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RingElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| RingElement::zero(self.ring))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The constant term viewed as a ring element, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<RingElement> {
        self.is_constant().then(|| self.coeff(0))
    }

    pub fn leading(&self) -> Option<&RingElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.same_ring(rhs)?;
        Ok(self + rhs)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_ring(rhs)?;
        Ok(self - rhs)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.same_ring(rhs)?;
        Ok(self * rhs)
    }

    fn same_ring(&self, rhs: &Self) -> Result<()> {
        if self.ring == rhs.ring {
            Ok(())
        } else {
            Err(Error::mixed(self.ring, rhs.ring))
        }
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

    pub fn scale(&self, c: &RingElement) -> Self {
        Self::from_coeffs(self.ring, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Divide every coefficient by `c`, if exact.
    pub fn exact_div_scalar(&self, c: &RingElement) -> Option<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| x.exact_div(c))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::from_coeffs(self.ring, coeffs))
    }

    /// Apply a coefficient map into another ring.
    pub fn map_coeffs(
        &self,
        target: RingSpec,
        f: impl Fn(&RingElement) -> Result<RingElement>,
    ) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        UniPoly::new(target, coeffs)
    }

    pub fn embed(&self, target: RingSpec) -> Result<Self> {
        self.map_coeffs(target, |c| c.embed(target))
    }

    pub fn restrict(&self, target: RingSpec) -> Result<Self> {
        self.map_coeffs(target, |c| c.restrict(target))
    }

    /// Division with remainder by a polynomial whose leading coefficient is a unit.
    pub fn divrem_monic(&self, d: &Self) -> Result<(Self, Self)> {
        self.same_ring(d)?;
        let lc = d.leading().ok_or(Error::ZeroPolynomial)?;
        let lc_inv = lc
            .inverse()
            .ok_or_else(|| Error::Unsupported(format!("leading coefficient of {d} is not a unit")))?;
        let n = d.coeffs.len();
        let mut r = self.coeffs.clone();
        let mut q = vec![RingElement::zero(self.ring); r.len().saturating_sub(n - 1)];
        while r.len() >= n {
            let shift = r.len() - n;
            let c = r.last().unwrap() * &lc_inv;
            for (j, y) in d.coeffs.iter().enumerate() {
                r[shift + j] = &r[shift + j] - &(&c * y);
            }
            q[shift] = c;
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        Ok((Self::from_coeffs(self.ring, q), Self::from_coeffs(self.ring, r)))
    }

    /// Exact quotient `self / d` in `R[X]` for a domain `R`, or `None`.
    ///
    /// Each step divides leading coefficients exactly, which is complete in a
    /// domain: if `self = q*d` then every partial remainder's leading
    /// coefficient is a multiple of `lc(d)`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if self.ring != d.ring || d.is_zero() {
            return None;
        }
        let n = d.coeffs.len();
        let lc = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        if r.is_empty() {
            return Some(Self::zero(self.ring));
        }
        if r.len() < n {
            return None;
        }
        let mut q = vec![RingElement::zero(self.ring); r.len() - n + 1];
        while r.len() >= n {
            let shift = r.len() - n;
            let c = r.last().unwrap().exact_div(lc)?;
            for (j, y) in d.coeffs.iter().enumerate() {
                r[shift + j] = &r[shift + j] - &(&c * y);
            }
            q[shift] = c;
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        r.is_empty().then(|| Self::from_coeffs(self.ring, q))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }

    /// The coefficient content ideal, principal over Bezout rings.
    pub fn content(&self) -> ContentIdeal {
        let generators = self.coeffs.clone();
        let principal = if self.ring.is_bezout() {
            let mut g = RingElement::zero(self.ring);
            let mut witnesses: Vec<RingElement> = Vec::new();
            for b in &self.coeffs {
                let bz = RingElement::gcd_bezout(&g, b).expect("bezout ring");
                for w in &mut witnesses {
                    *w = &*w * &bz.s;
                }
                witnesses.push(bz.t);
                g = bz.g;
            }
            Some(PrincipalContent { generator: g, witnesses })
        } else {
            None
        };
        ContentIdeal { ring: self.ring, generators, principal }
    }

    /// `g = a*f` with `a` the canonical content generator and `f` primitive.
    pub fn primitive_part(&self) -> Result<PrimitivePart> {
        if !self.ring.is_bezout() {
            return Err(Error::NotBezout(self.ring.to_string()));
        }
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let content = self.content();
        let principal = content.principal.expect("bezout ring has principal content");
        let a = principal.generator;
        let primitive = self.exact_div_scalar(&a).expect("content divides every coefficient");
        Ok(PrimitivePart {
            cofactors: primitive.coeffs.clone(),
            content: a,
            primitive,
            witnesses: principal.witnesses,
        })
    }

    /// `self = unit * associate` with the leading coefficient canonical.
    pub fn canonical_associate(&self) -> (Self, RingElement) {
        match self.leading() {
            None => (self.clone(), RingElement::one(self.ring)),
            Some(lc) => {
                let (_, unit) = lc.canonical_associate();
                let inv = unit.inverse().expect("unit");
                (self.scale(&inv), unit)
            }
        }
    }

    pub fn canonical(&self) -> Self {
        self.canonical_associate().0
    }

    /// Evaluate at an element of the same ring.
    pub fn eval_at(&self, a: &RingElement) -> RingElement {
        let mut acc = RingElement::zero(a.ring());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * a) + c;
        }
        acc
    }

    pub fn eval(&self, h: &EvalHom) -> Result<RingElement> {
        h.apply(self)
    }

    pub(crate) fn fmt_in(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let ct = c.terms();
            if k == 0 {
                terms.extend(ct);
            } else if ct.len() > 1 {
                terms.push((false, format!("({c})*{mono}")));
            } else {
                let (neg, mag) = ct.into_iter().next().unwrap();
                let mag = if mag == "1" { mono } else { format!("{mag}*{mono}") };
                terms.push((neg, mag));
            }
        }
        write_terms(f, &terms)
    }

    pub(crate) fn is_compound(&self) -> bool {
        let nonzero = self.coeffs.iter().filter(|c| !c.is_zero()).count();
        nonzero > 1 || self.coeffs.iter().any(|c| c.is_compound())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_in(f, "X")
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        assert_eq!(self.ring, rhs.ring, "mixed rings");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs(self.ring, (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { ring: self.ring, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        assert_eq!(self.ring, rhs.ring, "mixed rings");
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.ring);
        }
        let mut out = vec![RingElement::zero(self.ring); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::from_coeffs(self.ring, out)
    }
}

/// `a = sum witnesses[i] * generators[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalContent {
    pub generator: RingElement,
    pub witnesses: Vec<RingElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContentIdeal {
    pub ring: RingSpec,
    pub generators: Vec<RingElement>,
    pub principal: Option<PrincipalContent>,
}

impl ContentIdeal {
    pub fn principal_generator(&self) -> Option<&RingElement> {
        self.principal.as_ref().map(|p| &p.generator)
    }

    /// Checks the stored combination and the divisibility of every generator.
    pub fn is_consistent(&self) -> bool {
        let Some(p) = &self.principal else { return true };
        let combo = self
            .generators
            .iter()
            .zip(&p.witnesses)
            .fold(RingElement::zero(self.ring), |acc, (b, d)| &acc + &(b * d));
        combo == p.generator && self.generators.iter().all(|b| p.generator.divides(b))
    }
}

/// `g = content * primitive`, and `1 = sum cofactors[i] * witnesses[i]`
/// where `cofactors` are the coefficients of `primitive`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitivePart {
    pub content: RingElement,
    pub primitive: UniPoly,
    pub witnesses: Vec<RingElement>,
    pub cofactors: Vec<RingElement>,
}

impl PrimitivePart {
    pub fn unit_identity_holds(&self) -> bool {
        let ring = self.content.ring();
        let sum = self
            .cofactors
            .iter()
            .zip(&self.witnesses)
            .fold(RingElement::zero(ring), |acc, (c, d)| &acc + &(c * d));
        sum.is_one()
    }
}

/// `R[X] -> T`, `X -> image`, for `R` contained in `T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvalHom {
    source: RingSpec,
    image: RingElement,
}

impl EvalHom {
    pub fn new(source: RingSpec, image: RingElement) -> Result<Self> {
        let target = image.ring();
        let ok = source == target || source.normalization().is_some_and(|n| n.target == target);
        if !ok {
            return Err(Error::Unsupported(format!("no evaluation map {source}[X] -> {target}")));
        }
        Ok(EvalHom { source, image })
    }

    pub fn source(&self) -> RingSpec {
        self.source
    }

    pub fn target(&self) -> RingSpec {
        self.image.ring()
    }

    pub fn image(&self) -> &RingElement {
        &self.image
    }

    pub fn apply(&self, f: &UniPoly) -> Result<RingElement> {
        if f.ring() != self.source {
            return Err(Error::mixed(f.ring(), self.source));
        }
        let lifted = f.embed(self.target())?;
        Ok(lifted.eval_at(&self.image))
    }
}

impl fmt::Display for EvalHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X -> {}", self.image)
    }
}

/// Polynomials in the extension variable `Z` with coefficients in `R[X]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZPoly {
    ring: RingSpec,
    coeffs: Vec<UniPoly>,
}

impl ZPoly {
    pub fn new(ring: RingSpec, mut coeffs: Vec<UniPoly>) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|c| c.ring() != ring) {
            return Err(Error::mixed(ring, c.ring()));
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(ZPoly { ring, coeffs })
    }

    pub fn lift(p: &UniPoly) -> Self {
        ZPoly::new(p.ring(), vec![p.clone()]).expect("same ring")
    }

    pub fn z(ring: RingSpec) -> Self {
        ZPoly::new(ring, vec![UniPoly::zero(ring), UniPoly::one(ring)]).expect("same ring")
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The coefficient of `Z^0` when nothing else is present.
    pub fn as_unipoly(&self) -> Option<UniPoly> {
        match self.coeffs.len() {
            0 => Some(UniPoly::zero(self.ring)),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = UniPoly::zero(self.ring);
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
            .collect();
        ZPoly::new(self.ring, coeffs).expect("same ring")
    }

    pub fn neg(&self) -> Self {
        ZPoly { ring: self.ring, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly { ring: self.ring, coeffs: Vec::new() };
        }
        let mut out = vec![UniPoly::zero(self.ring); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        ZPoly::new(self.ring, out).expect("same ring")
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = ZPoly::lift(&UniPoly::one(self.ring));
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "Z".to_string(),
                _ => format!("Z^{k}"),
            };
            match (k, c.is_compound()) {
                (0, _) => write!(f, "{c}")?,
                (_, true) => write!(f, "({c})*{mono}")?,
                (_, false) if *c == UniPoly::one(self.ring) => write!(f, "{mono}")?,
                (_, false) => write!(f, "{c}*{mono}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zz() -> RingSpec {
        RingSpec::integers()
    }

    fn zpoly(c: &[i64]) -> UniPoly {
        UniPoly::new(zz(), c.iter().map(|&x| RingElement::from_int(zz(), x)).collect()).unwrap()
    }

    fn fpt(p: u64, c: &[&[u64]]) -> UniPoly {
        let r = RingSpec::poly_over_prime_field(p).unwrap();
        UniPoly::new(r, c.iter().map(|t| RingElement::from_mod_coeffs(r, t.to_vec()).unwrap()).collect()).unwrap()
    }

    #[test]
    fn cube_of_x_minus_t_over_f3() {
        let f = fpt(3, &[&[0, 2], &[1]]); // X - t
        assert_eq!(f.pow(3), fpt(3, &[&[0, 0, 0, 2], &[], &[], &[1]]));
        assert_eq!(f.pow(3).to_string(), "X^3 - t^3");
    }

    #[test]
    fn integer_binomial() {
        assert_eq!(zpoly(&[1, 1]).pow(2), zpoly(&[1, 2, 1]));
        let f = zpoly(&[3, -1, 4]);
        assert_eq!(&f * &UniPoly::one(zz()), f);
        assert_eq!(zpoly(&[1, 2, 1]).to_string(), "X^2 + 2*X + 1");
        assert_eq!(zpoly(&[-3, 0, -1]).to_string(), "-X^2 - 3");
    }

    #[test]
    fn content_examples() {
        let c = zpoly(&[6, 4]).content();
        assert_eq!(c.principal_generator(), Some(&RingElement::from_int(zz(), 2)));
        assert!(c.is_consistent());
        assert!(zpoly(&[5, 7, 1]).content().principal_generator().unwrap().is_one());
        assert!(UniPoly::zero(zz()).content().principal_generator().unwrap().is_zero());
        let sub = RingSpec::monomial_subring(2).unwrap();
        assert!(UniPoly::x(sub).content().principal.is_none());
    }

    #[test]
    fn primitive_part_examples() {
        let pp = zpoly(&[6, 4]).primitive_part().unwrap();
        assert_eq!(pp.content, RingElement::from_int(zz(), 2));
        assert_eq!(pp.primitive, zpoly(&[3, 2]));
        assert!(pp.unit_identity_holds());
        let monic = zpoly(&[7, 0, 1]).primitive_part().unwrap();
        assert!(monic.content.is_one());
        let c = zpoly(&[49]).primitive_part().unwrap();
        assert_eq!((c.content, c.primitive), (RingElement::from_int(zz(), 49), UniPoly::one(zz())));
        assert_eq!(UniPoly::zero(zz()).primitive_part(), Err(Error::ZeroPolynomial));
        let q = RingSpec::quadratic_order(-5).unwrap();
        assert!(matches!(UniPoly::x(q).primitive_part(), Err(Error::NotBezout(_))));
    }

    #[test]
    fn evaluation_examples() {
        let r = RingSpec::monomial_subring(2).unwrap();
        let s = r.normalization().unwrap().target;
        let t = RingElement::t(s).unwrap();
        let h = EvalHom::new(r, t.clone()).unwrap();
        let t2 = RingElement::from_mod_coeffs(r, vec![0, 0, 1]).unwrap();
        let f = &UniPoly::monomial(RingElement::one(r), 2) - &UniPoly::constant(t2);
        assert!(h.apply(&f).unwrap().is_zero());
        assert_eq!(h.apply(&UniPoly::x(r)).unwrap(), t);

        let r3 = RingSpec::monomial_subring(3).unwrap();
        let s3 = r3.normalization().unwrap().target;
        let h3 = EvalHom::new(r3, RingElement::t(s3).unwrap()).unwrap();
        let t3 = RingElement::from_mod_coeffs(r3, vec![0, 0, 0, 1]).unwrap();
        let g = &UniPoly::monomial(RingElement::one(r3), 3) - &UniPoly::constant(t3);
        assert!(h3.apply(&g).unwrap().is_zero());
    }

    #[test]
    fn exact_division() {
        // X is not a multiple of 2X + 3 in Z[X].
        assert_eq!(zpoly(&[0, 1]).exact_div(&zpoly(&[3, 2])), None);
        let prod = &zpoly(&[3, 2]) * &zpoly(&[0, 1, 5]);
        assert_eq!(prod.exact_div(&zpoly(&[3, 2])), Some(zpoly(&[0, 1, 5])));
        let (q, r) = zpoly(&[1, 0, 0, 1]).divrem_monic(&zpoly(&[1, 1])).unwrap();
        assert_eq!(&(&q * &zpoly(&[1, 1])) + &r, zpoly(&[1, 0, 0, 1]));
    }

    fn arb_zz_poly() -> impl Strategy<Value = UniPoly> {
        prop::collection::vec(-20i64..20, 0..9).prop_map(|c| zpoly(&c))
    }

    fn arb_f3t_poly() -> impl Strategy<Value = UniPoly> {
        prop::collection::vec(prop::collection::vec(0u64..3, 0..4), 0..6).prop_map(|c| {
            let r = RingSpec::poly_over_prime_field(3).unwrap();
            UniPoly::new(r, c.into_iter().map(|t| RingElement::from_mod_coeffs(r, t).unwrap()).collect())
                .unwrap()
        })
    }

    proptest! {
        #[test]
        fn gauss_multiplicativity_zz(g in arb_zz_poly(), h in arb_zz_poly()) {
            let lhs = (&g * &h).content().principal_generator().unwrap().clone();
            let rhs = g.content().principal_generator().unwrap() * h.content().principal_generator().unwrap();
            prop_assert_eq!(lhs, rhs.canonical());
        }

        #[test]
        fn gauss_multiplicativity_f3t(g in arb_f3t_poly(), h in arb_f3t_poly()) {
            let lhs = (&g * &h).content().principal_generator().unwrap().clone();
            let rhs = g.content().principal_generator().unwrap() * h.content().principal_generator().unwrap();
            prop_assert_eq!(lhs, rhs.canonical());
        }

        #[test]
        fn primitive_part_round_trip(g in arb_f3t_poly()) {
            prop_assume!(!g.is_zero());
            let pp = g.primitive_part().unwrap();
            prop_assert_eq!(pp.primitive.scale(&pp.content), g);
            prop_assert!(pp.unit_identity_holds());
        }

        #[test]
        fn evaluation_is_a_homomorphism(f in arb_zz_poly(), g in arb_zz_poly(), a in -5i64..5) {
            let h = EvalHom::new(zz(), RingElement::from_int(zz(), a)).unwrap();
            let ev = |p: &UniPoly| h.apply(p).unwrap();
            prop_assert_eq!(ev(&(&f * &g)), &ev(&f) * &ev(&g));
            prop_assert_eq!(ev(&(&f + &g)), &ev(&f) + &ev(&g));
        }

        #[test]
        fn frobenius_on_polynomials(f in arb_f3t_poly(), g in arb_f3t_poly()) {
            prop_assert_eq!((&f + &g).pow(3), &f.pow(3) + &g.pow(3));
            // f^p has X-exponents divisible by p and coefficients c(t)^p.
            let fp = f.pow(3);
            for (k, c) in fp.coeffs().iter().enumerate() {
                if k % 3 != 0 {
                    prop_assert!(c.is_zero());
                } else {
                    prop_assert_eq!(c, &f.coeff(k / 3).pow(3));
                }
            }
        }

        #[test]
        fn pth_powers_land_in_the_monomial_subring(f in arb_f3t_poly()) {
            let r = RingSpec::monomial_subring(3).unwrap();
            let nd = r.normalization().unwrap();
            for c in f.pow(3).coeffs() {
                prop_assert!(nd.subring_member(c));
            }
            prop_assert!(f.pow(3).restrict(r).is_ok());
        }
    }
}
