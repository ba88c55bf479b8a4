//! Scalar fields and dense polynomial arithmetic over them.
//!
//! The coefficient rings `F_p[t]`, `Q[t]` and the residue fields `F_p[t]/(pi)`
//! are all built from these helpers. Polynomials are little-endian coefficient
//! vectors with no trailing zeros; the zero polynomial is the empty vector.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Debug;

pub trait Field {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Number of elements, `None` for infinite fields.
    fn order(&self) -> Option<BigUint>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

/// The prime field `F_p`, elements are residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    pub fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

impl Field for Fp {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Extended Euclid on (a, p).
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if r0 != 1 {
            return None;
        }
        Some(self.reduce_i128(t0))
    }
    fn order(&self) -> Option<BigUint> {
        Some(BigUint::from(self.p))
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Qq;

impl Field for Qq {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn order(&self) -> Option<BigUint> {
        None
    }
}

/// `F_p[t]/(modulus)` for a monic irreducible `modulus`; a prime field when
/// the modulus is `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    pub base: Fp,
    pub modulus: Vec<u64>,
}

impl FiniteField {
    pub fn new(base: Fp, modulus: Vec<u64>) -> Self {
        debug_assert!(modulus.last() == Some(&1));
        FiniteField { base, modulus }
    }

    pub fn prime(p: u64) -> Self {
        FiniteField::new(Fp::new(p), vec![0, 1])
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn embed(&self, a: &[u64]) -> Vec<u64> {
        rem(&self.base, a, &self.modulus)
    }

    /// All elements, in a fixed order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let k = self.degree();
        let p = self.base.p;
        let total = (p as u128).pow(k as u32);
        (0..total)
            .map(|mut idx| {
                let mut v = Vec::with_capacity(k);
                for _ in 0..k {
                    v.push((idx % p as u128) as u64);
                    idx /= p as u128;
                }
                trimmed(&self.base, v)
            })
            .collect()
    }
}

impl Field for FiniteField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        Vec::new()
    }
    fn one(&self) -> Vec<u64> {
        vec![1]
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.is_empty()
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        add(&self.base, a, b)
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        neg(&self.base, a)
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        rem(&self.base, &mul(&self.base, a, b), &self.modulus)
    }
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if a.is_empty() {
            return None;
        }
        let (g, s, _) = xgcd(&self.base, a, &self.modulus);
        if g != vec![1] {
            return None;
        }
        Some(rem(&self.base, &s, &self.modulus))
    }
    fn order(&self) -> Option<BigUint> {
        Some(BigUint::from(self.base.p).pow(self.degree() as u32))
    }
}

pub fn trimmed<F: Field>(f: &F, mut a: Vec<F::Elem>) -> Vec<F::Elem> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

pub fn degree<T>(a: &[T]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let zero = f.zero();
    let out = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trimmed(f, out)
}

pub fn neg<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|c| f.neg(c)).collect()
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    add(f, a, &neg(f, b))
}

pub fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
    if f.is_zero(c) {
        return Vec::new();
    }
    trimmed(f, a.iter().map(|x| f.mul(x, c)).collect())
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trimmed(f, out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let lc_inv = f.inv(b.last().unwrap()).expect("leading coefficient is invertible");
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![f.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = f.mul(r.last().unwrap(), &lc_inv);
        for (j, y) in b.iter().enumerate() {
            r[shift + j] = f.sub(&r[shift + j], &f.mul(&c, y));
        }
        q[shift] = c;
        r = trimmed(f, r);
    }
    (trimmed(f, q), r)
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.len() < b.len() {
        return a.to_vec();
    }
    divrem(f, a, b).1
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(lc) => scale(f, a, &f.inv(lc).expect("nonzero leading coefficient")),
    }
}

/// Extended Euclid: `(g, s, t)` with `s*a + t*b = g` and `g` monic (or zero).
#[allow(clippy::type_complexity)]
pub fn xgcd<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (Vec<F::Elem>, Vec<F::Elem>, Vec<F::Elem>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![f.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s2);
        (t0, t1) = (t1, t2);
    }
    match r0.last().cloned() {
        None => (r0, s0, t0),
        Some(lc) => {
            let u = f.inv(&lc).expect("nonzero");
            (scale(f, &r0, &u), scale(f, &s0, &u), scale(f, &t0, &u))
        }
    }
}

pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    while !r1.is_empty() {
        let r = rem(f, &r0, &r1);
        r0 = r1;
        r1 = r;
    }
    monic(f, &r0)
}

pub fn pow<F: Field>(f: &F, a: &[F::Elem], mut exp: u64) -> Vec<F::Elem> {
    let mut acc = vec![f.one()];
    let mut base = a.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(f, &acc, &base);
        }
        exp >>= 1;
        if exp > 0 {
            base = mul(f, &base, &base);
        }
    }
    acc
}

/// `a^exp mod m`.
pub fn powmod<F: Field>(f: &F, a: &[F::Elem], exp: &BigUint, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut acc = rem(f, &[f.one()], m);
    let base = rem(f, a, m);
    for i in (0..exp.bits()).rev() {
        acc = rem(f, &mul(f, &acc, &acc), m);
        if exp.bit(i) {
            acc = rem(f, &mul(f, &acc, &base), m);
        }
    }
    acc
}

/// Ben-Or irreducibility test over a finite field: `g` of degree `n` is
/// irreducible iff `gcd(g, X^(q^i) - X) = 1` for `1 <= i <= n/2`.
///
/// On failure returns a proper monic factor when one could be split off.
pub fn irreducible_or_factor<F: Field>(f: &F, g: &[F::Elem]) -> Result<(), Option<Vec<F::Elem>>> {
    let n = degree(g).expect("nonzero polynomial");
    if n == 0 {
        return Err(None);
    }
    let q = f.order().expect("finite field");
    let g = monic(f, g);
    let x = vec![f.zero(), f.one()];
    let mut h = x.clone();
    for i in 1..=n / 2 {
        h = powmod(f, &h, &q, &g);
        let d = gcd(f, &g, &sub(f, &h, &x));
        if d != vec![f.one()] {
            if d.len() < g.len() {
                return Err(Some(d));
            }
            // g is a squarefree product of irreducibles of degree i.
            return Err(split_equal_degree(f, &g, i, &q));
        }
    }
    Ok(())
}

/// Complete factorization into monic irreducibles, with repetition.
/// `None` if an equal-degree split could not be found.
pub fn factor<F: Field>(f: &F, g: &[F::Elem]) -> Option<Vec<Vec<F::Elem>>> {
    let g = monic(f, g);
    if g.len() <= 1 {
        return Some(Vec::new());
    }
    match irreducible_or_factor(f, &g) {
        Ok(()) => Some(vec![g]),
        Err(None) => None,
        Err(Some(h)) => {
            let (q, _) = divrem(f, &g, &h);
            let mut out = factor(f, &h)?;
            out.extend(factor(f, &q)?);
            Some(out)
        }
    }
}

/// Cantor-Zassenhaus splitting of a product of distinct degree-`i` factors,
/// driven by a fixed family of test polynomials instead of random ones.
fn split_equal_degree<F: Field>(
    f: &F,
    g: &[F::Elem],
    i: usize,
    q: &BigUint,
) -> Option<Vec<F::Elem>> {
    let n = g.len() - 1;
    let qi = q.pow(i as u32);
    let even = !q.bit(0);
    let constants = prime_subfield(f);
    for e in 1..n {
        for c in &constants {
            for lower in [None, Some(0usize)].into_iter().chain((1..e).map(Some)) {
                let mut h = vec![f.zero(); e + 1];
                h[e] = f.one();
                h[0] = f.add(&h[0], c);
                if let Some(l) = lower {
                    h[l] = f.add(&h[l], &f.one());
                }
                let h = trimmed(f, h);
                let w = if even {
                    // Absolute trace to F_2: sum of h^(2^j), j < log2(q^i).
                    let steps = qi.bits() - 1;
                    let mut acc = Vec::new();
                    let mut term = rem(f, &h, g);
                    for _ in 0..steps {
                        acc = add(f, &acc, &term);
                        term = rem(f, &mul(f, &term, &term), g);
                    }
                    acc
                } else {
                    let exp: BigUint = (&qi - 1u32) / 2u32;
                    sub(f, &powmod(f, &h, &exp, g), &[f.one()])
                };
                let s = gcd(f, g, &w);
                if s.len() > 1 && s.len() < g.len() {
                    return Some(s);
                }
            }
        }
    }
    None
}

fn prime_subfield<F: Field>(f: &F) -> Vec<F::Elem> {
    let mut out = vec![f.zero()];
    let mut cur = f.one();
    while !f.is_zero(&cur) && out.len() < 64 {
        out.push(cur.clone());
        cur = f.add(&cur, &f.one());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse() {
        let f = Fp::new(7);
        for a in 1..7 {
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn xgcd_identity_over_f2() {
        let f = Fp::new(2);
        // (t^2 + t, t) -> t
        let a = vec![0, 1, 1];
        let b = vec![0, 1];
        let (g, s, t) = xgcd(&f, &a, &b);
        assert_eq!(g, vec![0, 1]);
        assert_eq!(add(&f, &mul(&f, &s, &a), &mul(&f, &t, &b)), g);
    }

    #[test]
    fn ben_or_over_prime_field() {
        let f = Fp::new(5);
        // X^2 + 2 irreducible mod 5 (squares are 0, 1, 4).
        assert!(irreducible_or_factor(&f, &[2, 0, 1]).is_ok());
        // X^2 + 1 = (X - 2)(X + 2) mod 5.
        let factor = irreducible_or_factor(&f, &[1, 0, 1]).unwrap_err().unwrap();
        assert_eq!(factor.len(), 2);
        assert!(rem(&f, &[1, 0, 1], &factor).is_empty());
    }

    #[test]
    fn ben_or_splits_products_of_equal_degree() {
        let f = Fp::new(2);
        // X^2 + X = X (X + 1); both roots in F_2 so gcd with X^2 - X is everything.
        let factor = irreducible_or_factor(&f, &[0, 1, 1]).unwrap_err().unwrap();
        assert_eq!(factor.len(), 2);
        // Two distinct irreducible quadratics over F_3: (X^2 + 1)(X^2 + X + 2).
        let f3 = Fp::new(3);
        let prod = mul(&f3, &[1, 0, 1], &[2, 1, 1]);
        let factor = irreducible_or_factor(&f3, &prod).unwrap_err().unwrap();
        assert_eq!(factor.len(), 3);
        assert!(rem(&f3, &prod, &factor).is_empty());
    }

    #[test]
    fn extension_field_arithmetic() {
        // F_4 = F_2[t]/(t^2 + t + 1)
        let k = FiniteField::new(Fp::new(2), vec![1, 1, 1]);
        assert_eq!(k.elements().len(), 4);
        for a in k.elements().into_iter().filter(|a| !a.is_empty()) {
            let inv = k.inv(&a).unwrap();
            assert_eq!(k.mul(&a, &inv), vec![1]);
        }
        // X^2 + X + t irreducible over F_4? Its roots would satisfy r^2 + r = t.
        let poly = vec![vec![0, 1], vec![1], vec![1]];
        let roots = k
            .elements()
            .into_iter()
            .filter(|r| k.add(&k.add(&k.mul(r, r), r), &vec![0, 1]).is_empty())
            .count();
        assert_eq!(irreducible_or_factor(&k, &poly).is_ok(), roots == 0);
    }
}
