//! Irreducibility of primitive polynomials over the fraction field of the
//! coefficient ring, and reduction modulo a prime of the base.

use crate::error::{Error, Result};
use crate::field::{self, FiniteField, Fp};
use crate::poly::UniPoly;
use crate::rings::{RingElement, RingKind, RingSpec};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Irreducible { method: String },
    Reducible { factor: UniPoly, cofactor: UniPoly },
    Undecided { reason: String },
}

/// Decide irreducibility of `f` over the fraction field of its coefficient
/// ring. `f` must be nonconstant and primitive; `budget` caps the number of
/// candidate factors examined by the exhaustive fallbacks.
pub fn over_fraction_field(f: &UniPoly, budget: u64) -> Verdict {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Verdict::Undecided { reason: format!("{f} is constant") };
    }
    match f.ring().kind() {
        RingKind::PrimeField(p) => prime_field(f, p),
        RingKind::Integers => integers(f, budget),
        RingKind::Rationals => rationals(f, budget),
        RingKind::PolyOverPrimeField(p) => poly_over_fp(f, p, budget),
        _ if n == 1 => Verdict::Irreducible { method: "degree one".into() },
        _ => Verdict::Undecided {
            reason: format!("no factor search over the fraction field of {}", f.ring()),
        },
    }
}

fn prime_field(f: &UniPoly, p: u64) -> Verdict {
    let fp = Fp::new(p);
    let c: Vec<u64> = f.coeffs().iter().map(|x| x.residue().unwrap()).collect();
    match field::irreducible_or_factor(&fp, &c) {
        Ok(()) => Verdict::Irreducible { method: format!("Ben-Or test over GF({p})") },
        Err(h) => {
            let h = h.unwrap_or_else(|| field::factor(&fp, &c).expect("split")[0].clone());
            let ring = f.ring();
            let factor = UniPoly::from_coeffs(ring, h.iter().map(|&x| RingElement::from_int(ring, x)).collect());
            let cofactor = f.exact_div(&factor).expect("factor divides");
            Verdict::Reducible { factor, cofactor }
        }
    }
}

pub(crate) fn small_primes(limit: u64) -> impl Iterator<Item = u64> {
    (2..limit).filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0))
}

fn int_coeffs(f: &UniPoly) -> Vec<BigInt> {
    f.coeffs().iter().map(|c| c.integer().expect("integer coefficient").clone()).collect()
}

fn from_ints(ring: RingSpec, c: &[BigInt]) -> UniPoly {
    UniPoly::from_coeffs(ring, c.iter().map(|x| RingElement::from_int(ring, x.clone())).collect())
}

fn eval_int(c: &[BigInt], x: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, b| acc * x + b)
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            small.push(BigInt::from(k));
            if k * k != n {
                large.push(BigInt::from(n / k));
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Newton interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Vec<BigRational> {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.iter().map(|y| BigRational::from_integer(y.clone())).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let den = BigRational::from_integer(&xs[i] - &xs[i - j]);
            dd[i] = (&dd[i] - &dd[i - 1]) / den;
        }
    }
    let mut poly: Vec<BigRational> = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        // poly = poly * (X - xs[i]) + dd[i]
        let xi = BigRational::from_integer(xs[i].clone());
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * &xi;
        }
        next[0] += &dd[i];
        poly = next;
    }
    while poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
    poly
}

fn integers(f: &UniPoly, budget: u64) -> Verdict {
    let n = f.degree().unwrap();
    if n == 1 {
        return Verdict::Irreducible { method: "primitive of degree one".into() };
    }
    let c = int_coeffs(f);
    let lc = c.last().unwrap().clone();
    for p in small_primes(200) {
        if (&lc % p).is_zero() {
            continue;
        }
        let fp = Fp::new(p);
        let red: Vec<u64> = c.iter().map(|x| x.mod_floor(&BigInt::from(p)).to_u64().unwrap()).collect();
        if field::irreducible_or_factor(&fp, &red).is_ok() {
            return Verdict::Irreducible { method: format!("irreducible mod {p}") };
        }
    }
    kronecker(f, &c, budget)
}

fn kronecker(f: &UniPoly, c: &[BigInt], budget: u64) -> Verdict {
    let ring = f.ring();
    let n = c.len() - 1;
    let mut points: Vec<(BigInt, BigInt)> = Vec::new();
    let mut k = 0i64;
    while points.len() < n / 2 + 1 {
        let x = BigInt::from(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 });
        k += 1;
        let y = eval_int(c, &x);
        if y.is_zero() {
            let factor = from_ints(ring, &[-x, BigInt::one()]);
            let cofactor = f.exact_div(&factor).expect("root gives a factor");
            return Verdict::Reducible { factor, cofactor };
        }
        points.push((x, y));
    }
    let mut examined = 0u64;
    for d in 1..=n / 2 {
        let pts = &points[..=d];
        let Some(divs) = pts.iter().map(|(_, y)| divisors(y)).collect::<Option<Vec<_>>>() else {
            return Verdict::Undecided { reason: "evaluations too large to factor".into() };
        };
        let count = divs.iter().fold(1u128, |acc, v| acc.saturating_mul(2 * v.len() as u128)) / 2;
        if examined as u128 + count > budget as u128 {
            return Verdict::Undecided {
                reason: format!("Kronecker search needs {count} candidates, budget {budget}"),
            };
        }
        examined += count as u64;
        let xs: Vec<BigInt> = pts.iter().map(|(x, _)| x.clone()).collect();
        let mut idx = vec![0usize; d + 1];
        'outer: loop {
            // The first value is taken positive; the rest carry a sign.
            let ys: Vec<BigInt> = idx
                .iter()
                .enumerate()
                .map(|(i, &j)| {
                    let m = divs[i].len();
                    if i == 0 || j < m {
                        divs[i][j % m].clone()
                    } else {
                        -divs[i][j - m].clone()
                    }
                })
                .collect();
            let g = interpolate(&xs, &ys);
            if g.len() >= 2 && g.iter().all(|q| q.is_integer()) {
                let gi: Vec<BigInt> = g.iter().map(|q| q.to_integer()).collect();
                let cand = from_ints(ring, &gi);
                if let Some(cofactor) = f.exact_div(&cand) {
                    if cofactor.degree() > Some(0) {
                        let (factor, unit) = cand.canonical_associate();
                        return Verdict::Reducible { factor, cofactor: cofactor.scale(&unit) };
                    }
                }
            }
            for i in 0..=d {
                let span = if i == 0 { divs[i].len() } else { 2 * divs[i].len() };
                idx[i] += 1;
                if idx[i] < span {
                    continue 'outer;
                }
                idx[i] = 0;
            }
            break;
        }
    }
    Verdict::Irreducible { method: format!("Kronecker factor search complete to degree {}", n / 2) }
}

fn rationals(f: &UniPoly, budget: u64) -> Verdict {
    let zz = RingSpec::integers();
    let rats: Vec<BigRational> = f.coeffs().iter().map(|c| c.rational().unwrap().clone()).collect();
    let den = rats.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|q| (q * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let ints: Vec<BigInt> = ints.iter().map(|x| x / &g).collect();
    let back = |p: &UniPoly| {
        p.map_coeffs(f.ring(), |c| c.embed(f.ring())).expect("Z embeds in Q")
    };
    match integers(&from_ints(zz, &ints), budget) {
        Verdict::Reducible { factor, .. } => {
            let factor = back(&factor);
            let (q, _) = f.divrem_monic(&factor.canonical()).expect("field");
            Verdict::Reducible { factor: factor.canonical(), cofactor: q }
        }
        v => v,
    }
}

/// Monic irreducibles of `F_p[t]` of degree `1..=max_deg`, in a fixed order.
pub(crate) fn monic_irreducibles(p: u64, max_deg: usize) -> Vec<Vec<u64>> {
    let fp = Fp::new(p);
    let mut out = Vec::new();
    for k in 1..=max_deg {
        let total = p.pow(k as u32);
        for idx in 0..total {
            let mut v = Vec::with_capacity(k + 1);
            let mut r = idx;
            for _ in 0..k {
                v.push(r % p);
                r /= p;
            }
            v.push(1);
            if field::irreducible_or_factor(&fp, &v).is_ok() {
                out.push(v);
            }
        }
    }
    out
}

fn poly_over_fp(f: &UniPoly, p: u64, budget: u64) -> Verdict {
    let n = f.degree().unwrap();
    if n == 1 {
        return Verdict::Irreducible { method: "primitive of degree one".into() };
    }
    let fp = Fp::new(p);
    let cs: Vec<Vec<u64>> = f.coeffs().iter().map(|c| c.mod_coeffs().unwrap().to_vec()).collect();
    let lc = cs.last().unwrap();
    for pi in monic_irreducibles(p, if p < 5 { 3 } else { 2 }).into_iter().take(24) {
        if field::rem(&fp, lc, &pi).is_empty() {
            continue;
        }
        let ff = FiniteField::new(fp, pi.clone());
        let red: Vec<Vec<u64>> = cs.iter().map(|c| ff.embed(c)).collect();
        if field::irreducible_or_factor(&ff, &red).is_ok() {
            let shown = RingElement::from_mod_coeffs(f.ring(), pi).unwrap();
            return Verdict::Irreducible { method: format!("irreducible mod {shown}") };
        }
    }
    kronecker_substitution(f, &cs, p, budget)
}

/// Factor `f(X, X^N)` over `F_p` with `N > deg_X f`; every factor of `f`
/// maps to a product of the irreducible factors and decodes uniquely.
fn kronecker_substitution(f: &UniPoly, cs: &[Vec<u64>], p: u64, budget: u64) -> Verdict {
    let fp = Fp::new(p);
    let n = cs.len() - 1;
    let big_n = n + 1;
    let mut image = Vec::new();
    for (i, c) in cs.iter().enumerate() {
        for (j, &x) in c.iter().enumerate() {
            let k = i + big_n * j;
            if image.len() <= k {
                image.resize(k + 1, 0);
            }
            image[k] = x;
        }
    }
    let Some(factors) = field::factor(&fp, &image) else {
        return Verdict::Undecided { reason: "equal-degree splitting failed".into() };
    };
    let mut distinct: Vec<(Vec<u64>, u32)> = Vec::new();
    for h in factors {
        match distinct.iter_mut().find(|(g, _)| *g == h) {
            Some(entry) => entry.1 += 1,
            None => distinct.push((h, 1)),
        }
    }
    let count = distinct.iter().fold(1u128, |acc, (_, e)| acc.saturating_mul(*e as u128 + 1));
    if count > budget as u128 {
        return Verdict::Undecided {
            reason: format!("{count} divisor candidates after substitution, budget {budget}"),
        };
    }
    let ring = f.ring();
    let mut exps = vec![0u32; distinct.len()];
    'outer: loop {
        let mut g = vec![1u64];
        for ((h, _), &e) in distinct.iter().zip(&exps) {
            g = field::mul(&fp, &g, &field::pow(&fp, h, e as u64));
        }
        let mut coeffs: Vec<Vec<u64>> = vec![Vec::new(); big_n];
        for (k, &x) in g.iter().enumerate() {
            let (i, j) = (k % big_n, k / big_n);
            let slot = &mut coeffs[i];
            if slot.len() <= j {
                slot.resize(j + 1, 0);
            }
            slot[j] = x;
        }
        let cand = UniPoly::from_coeffs(
            ring,
            coeffs
                .into_iter()
                .map(|c| RingElement::from_mod_coeffs(ring, c).unwrap())
                .collect(),
        );
        if matches!(cand.degree(), Some(d) if d >= 1 && d < n) {
            if let Some(cofactor) = f.exact_div(&cand) {
                let (factor, unit) = cand.canonical_associate();
                return Verdict::Reducible { factor, cofactor: cofactor.scale(&unit) };
            }
        }
        for (i, (_, e)) in distinct.iter().enumerate() {
            exps[i] += 1;
            if exps[i] <= *e {
                continue 'outer;
            }
            exps[i] = 0;
        }
        break;
    }
    Verdict::Irreducible { method: format!("Kronecker substitution t = X^{big_n}, all divisors tried") }
}

/// The residue field `R/(a)` for a prime `a` of `ZZ` or `GF(p)[t]`.
pub fn residue_field(a: &RingElement) -> Result<FiniteField> {
    a.prime_check()?;
    match a.ring().kind() {
        RingKind::Integers => {
            let p = a.integer().unwrap().abs().to_u64().expect("prime fits");
            if p >= 1 << 32 {
                return Err(Error::Unsupported(format!("residue field modulo {p} is too large")));
            }
            Ok(FiniteField::prime(p))
        }
        RingKind::PolyOverPrimeField(p) => {
            let fp = Fp::new(p);
            Ok(FiniteField::new(fp, field::monic(&fp, a.mod_coeffs().unwrap())))
        }
        _ => Err(Error::Unsupported(format!("no residue fields for {}", a.ring()))),
    }
}

/// Image of a base element in the residue field.
pub fn reduce_element(x: &RingElement, ff: &FiniteField) -> Vec<u64> {
    match x.ring().kind() {
        RingKind::Integers => {
            let p = ff.base.p;
            field::trimmed(&ff.base, vec![x.integer().unwrap().mod_floor(&BigInt::from(p)).to_u64().unwrap()])
        }
        _ => ff.embed(x.mod_coeffs().expect("polynomial coefficient")),
    }
}

/// The canonical lift of a residue back to the base ring.
pub fn lift_element(ring: RingSpec, v: &[u64]) -> RingElement {
    match ring.kind() {
        RingKind::Integers => RingElement::from_int(ring, v.first().copied().unwrap_or(0)),
        _ => RingElement::from_mod_coeffs(ring, v.to_vec()).expect("polynomial ring"),
    }
}

pub fn reduce_poly(f: &UniPoly, ff: &FiniteField) -> Vec<Vec<u64>> {
    field::trimmed(ff, f.coeffs().iter().map(|c| reduce_element(c, ff)).collect())
}

pub fn lift_poly(ring: RingSpec, v: &[Vec<u64>]) -> UniPoly {
    UniPoly::from_coeffs(ring, v.iter().map(|c| lift_element(ring, c)).collect())
}
