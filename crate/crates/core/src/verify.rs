//! Independent checking of radical identities: `rad(J) = P` with explicit
//! exponents and witnesses that can be replayed by plain arithmetic.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::field::{Field, FiniteField, Fp};
use crate::ideals::{Ambient, Form, GenWitness, GeneratedIdeal, MembershipWitness, PrimeIdeal, Shape};
use crate::irreducible;
use crate::poly::{EvalHom, UniPoly, ZPoly};
use crate::rings::{RingElement, RingKind, RingSpec};
use crate::stci::Certificate;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt;

/// One side of a radical comparison.
#[derive(Clone, Copy, Debug)]
pub enum Side<'a> {
    Prime(&'a PrimeIdeal),
    Generated(&'a GeneratedIdeal),
}

impl Side<'_> {
    pub fn ring(&self) -> RingSpec {
        match self {
            Side::Prime(p) => p.ring(),
            Side::Generated(j) => j.ring(),
        }
    }

    /// Exact membership with witness; `None` when undecidable.
    pub fn member_witness(&self, e: &UniPoly) -> Option<Option<Witness>> {
        match self {
            Side::Prime(p) => p.member_witness(e).ok().map(|w| w.map(Witness::Prime)),
            Side::Generated(j) => j.member_witness(e).map(|w| w.map(Witness::Generated)),
        }
    }

    /// Elements whose radical membership on the other side decides
    /// containment of this radical, and a note when they are only a test set.
    fn radical_generators(&self) -> (Vec<UniPoly>, Option<TestSet>) {
        match self {
            Side::Prime(p) => match p.canonical_generators() {
                Some(g) => (g, None),
                None => {
                    let ts = kernel_test_set(p);
                    (ts.elements.clone(), Some(ts))
                }
            },
            Side::Generated(j) => (j.gens().to_vec(), None),
        }
    }
}

impl fmt::Display for Side<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Prime(p) => write!(f, "{p}"),
            Side::Generated(j) => write!(f, "{j}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Prime(MembershipWitness),
    Generated(GenWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RadicalMembership {
    /// `e^n` lies in the ideal.
    Found { n: u32, witness: Witness },
    /// Decisively outside the radical.
    Refuted { reason: String },
    NotProven { bound: u32, reason: String },
}

impl RadicalMembership {
    pub fn describe(&self) -> String {
        match self {
            RadicalMembership::Found { n, .. } => format!("found with n = {n}"),
            RadicalMembership::Refuted { reason } => format!("refuted: {reason}"),
            RadicalMembership::NotProven { bound, reason } => format!("not proven within n ≤ {bound}: {reason}"),
        }
    }
}

/// A prime (or a residue point) used to separate `e` from `rad(J)`.
enum Separator {
    Prime(PrimeIdeal),
    /// `g -> g(x)(tau)` into `F_p`.
    Point { hom: EvalHom, tau: u64 },
    /// `t -> tau`, `X -> xi` into an extension of `F_p`.
    FieldPoint { field: FiniteField, tau: Vec<u64>, xi: Vec<u64> },
}

fn field_value(field: &FiniteField, g: &UniPoly, tau: &[u64], xi: &[u64]) -> Vec<u64> {
    let tau = tau.to_vec();
    let xi = xi.to_vec();
    g.coeffs().iter().rev().fold(field.zero(), |acc, c| {
        let residues: Vec<u64> = match (c.residue(), c.mod_coeffs()) {
            (Some(r), _) => vec![r],
            (None, Some(cs)) => cs.to_vec(),
            (None, None) => Vec::new(),
        };
        let value = residues.iter().rev().fold(field.zero(), |v, &r| field.add(&field.mul(&v, &tau), &field.embed(&[r])));
        field.add(&field.mul(&acc, &xi), &value)
    })
}

fn show_field_element(v: &[u64]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "a".into(),
            (1, c) => format!("{c}*a"),
            (i, 1) => format!("a^{i}"),
            (i, c) => format!("{c}*a^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

impl Separator {
    fn contains(&self, g: &UniPoly) -> bool {
        match self {
            Separator::Prime(p) => p.member(g).unwrap_or(false),
            Separator::Point { hom, tau } => {
                let Ok(v) = hom.apply(g) else { return false };
                let p = v.ring().characteristic();
                let coeffs = v.mod_coeffs().unwrap_or(&[]);
                coeffs.iter().rev().fold(0u128, |acc, &c| (acc * *tau as u128 + c as u128) % p as u128) == 0
            }
            Separator::FieldPoint { field, tau, xi } => field.is_zero(&field_value(field, g, tau, xi)),
        }
    }
}

impl fmt::Display for Separator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Separator::Prime(p) => write!(f, "{p}"),
            Separator::Point { hom, tau } => write!(f, "{hom}, t -> {tau}"),
            Separator::FieldPoint { field, tau, xi } => write!(
                f,
                "ker(t -> {}, X -> {}) into GF({})[a]/({})",
                show_field_element(tau),
                show_field_element(xi),
                field.base.p,
                show_field_element(&field.modulus)
            ),
        }
    }
}

fn separators(ring: RingSpec) -> Vec<Separator> {
    let mut out = Vec::new();
    let x_minus = |c: RingElement| UniPoly::x_minus(&c);
    let cfg = Config::default();
    let mut push_prime = |r: Result<PrimeIdeal>| {
        if let Ok(p) = r {
            out.push(Separator::Prime(p));
        }
    };
    match ring.kind() {
        RingKind::Integers => {
            for c in -3..=3 {
                push_prime(PrimeIdeal::contraction_zero(&x_minus(RingElement::from_int(ring, c)), &cfg));
            }
            for q in irreducible::small_primes(14) {
                let qe = RingElement::from_int(ring, q);
                push_prime(PrimeIdeal::extended_base(&qe, Ambient::Poly));
                for c in 0..q {
                    push_prime(PrimeIdeal::maximal_pair(&qe, &x_minus(RingElement::from_int(ring, c))));
                }
            }
        }
        RingKind::PolyOverPrimeField(p) => {
            let t = RingElement::t(ring).expect("t");
            let mut points: Vec<RingElement> = (0..p).map(|c| RingElement::from_int(ring, c)).collect();
            points.push(t.clone());
            points.push(&t + &RingElement::one(ring));
            for c in &points {
                push_prime(PrimeIdeal::contraction_zero(&x_minus(c.clone()), &cfg));
            }
            for pi in irreducible::monic_irreducibles(p, 2) {
                let Ok(pe) = RingElement::from_mod_coeffs(ring, pi) else { continue };
                push_prime(PrimeIdeal::extended_base(&pe, Ambient::Poly));
                for c in &points {
                    push_prime(PrimeIdeal::maximal_pair(&pe, &x_minus(c.clone())));
                }
            }
        }
        RingKind::PolyOverRationals => {
            let t = RingElement::t(ring).expect("t");
            for c in -2..=2 {
                let ce = RingElement::from_int(ring, c);
                push_prime(PrimeIdeal::contraction_zero(&x_minus(ce.clone()), &cfg));
                push_prime(PrimeIdeal::extended_base(&(&t - &ce), Ambient::Poly));
            }
        }
        RingKind::MonomialSubring(p) if p > 0 => {
            let s = ring.normalization().expect("normalization").target;
            let k = p.min(3);
            for c0 in 0..k {
                for c1 in 0..k {
                    for c2 in 0..k {
                        let Ok(a) = RingElement::from_mod_coeffs(s, vec![c0, c1, c2]) else { continue };
                        let Ok(hom) = EvalHom::new(ring, a) else { continue };
                        out.push(Separator::Prime(PrimeIdeal::kernel(hom.clone())));
                        for tau in 0..p.min(5) {
                            out.push(Separator::Point { hom: hom.clone(), tau });
                        }
                    }
                }
            }
        }
        _ => {}
    }
    let p = match ring.kind() {
        RingKind::PrimeField(p) | RingKind::PolyOverPrimeField(p) => p,
        RingKind::MonomialSubring(p) if p > 0 => p,
        _ => return out,
    };
    // Points over GF(p^k), k = 2, 3, catch factors with no root in GF(p).
    for k in 2..=3u32 {
        if p.pow(k) > 27 {
            break;
        }
        let Some(modulus) = irreducible::monic_irreducibles(p, k as usize).into_iter().find(|m| m.len() == k as usize + 1)
        else {
            continue;
        };
        let field = FiniteField::new(Fp::new(p), modulus);
        let elements = field.elements();
        let taus = if ring.has_t() { elements.clone() } else { vec![Vec::new()] };
        for tau in &taus {
            for xi in &elements {
                out.push(Separator::FieldPoint { field: field.clone(), tau: tau.clone(), xi: xi.clone() });
            }
        }
    }
    out
}

fn separate(e: &UniPoly, j: &GeneratedIdeal) -> Option<String> {
    separators(j.ring()).into_iter().find_map(|q| {
        (!q.contains(e) && j.gens().iter().all(|g| q.contains(g)))
            .then(|| format!("the prime {q} contains every generator but not {e}"))
    })
}

/// Search `n ≤ bound` with `e^n` in the ideal. Refutation is reported only
/// when decisive: a prime target, a known radical bound, or a separating
/// prime.
pub fn radical_member(e: &UniPoly, side: &Side, bound: u32, _cfg: &Config) -> RadicalMembership {
    if e.ring() != side.ring() {
        return RadicalMembership::Refuted { reason: format!("{e} is not over {}", side.ring()) };
    }
    let j = match side {
        Side::Prime(p) => {
            return match p.member_witness(e) {
                Ok(Some(w)) => RadicalMembership::Found { n: 1, witness: Witness::Prime(w) },
                Ok(None) => RadicalMembership::Refuted { reason: format!("{p} is prime and {e} is not in it") },
                Err(err) => RadicalMembership::NotProven { bound, reason: err.to_string() },
            }
        }
        Side::Generated(j) => *j,
    };
    if *j.form() == Form::General {
        if let Some(reason) = separate(e, j) {
            return RadicalMembership::Refuted { reason };
        }
    }
    let decisive = j.radical_bound();
    let limit = decisive.map_or(bound, |nb| nb.min(bound));
    let mut power = UniPoly::one(e.ring());
    let mut undecidable = false;
    for n in 1..=limit {
        power = &power * e;
        match j.member_witness(&power) {
            Some(Some(w)) => return RadicalMembership::Found { n, witness: Witness::Generated(w) },
            Some(None) => {}
            None => {
                undecidable = true;
                break;
            }
        }
    }
    if let Some(nb) = decisive.filter(|_| !undecidable) {
        // Past the search bound, e^nb still settles refutation.
        let beyond = nb > bound && j.member(&e.pow(nb as u64)) != Some(false);
        if !beyond {
            return RadicalMembership::Refuted {
                reason: format!("({e})^{nb} is not in {j}, and {nb} bounds every radical exponent"),
            };
        }
    }
    if let Some(reason) = separate(e, j) {
        return RadicalMembership::Refuted { reason };
    }
    let reason = if undecidable {
        format!("membership in {j} is not decidable for this presentation")
    } else {
        format!("no power of {e} up to {limit} lies in {j}")
    };
    RadicalMembership::NotProven { bound, reason }
}

/// `e` with `e^n` in the ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub element: UniPoly,
    pub n: u32,
    pub witness: Witness,
}

/// A spot check in `R[X][Z]`, membership coefficientwise in `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZCheck {
    pub element: ZPoly,
    pub n: u32,
    pub witnesses: Vec<GenWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestSet {
    pub elements: Vec<UniPoly>,
    pub justification: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalProof {
    /// Each certificate generator lies in the target.
    pub inward: Vec<Check>,
    /// Each target generator (or test element) lies in the radical.
    pub outward: Vec<Check>,
    pub test_set: Option<TestSet>,
    pub spot_checks: Vec<Check>,
    pub extended_checks: Vec<ZCheck>,
    pub bound_used: u32,
}

impl RadicalProof {
    /// Recompute every power and witness identity from scratch.
    pub fn replay(&self, cert: &Certificate) -> Result<()> {
        let fail = |direction: &str, detail: String| Err(Error::VerificationFailed { direction: direction.into(), detail });
        if self.inward.len() != cert.generators.len() {
            return fail("replay", "inward check count differs from generator count".into());
        }
        for (c, g) in self.inward.iter().zip(&cert.generators) {
            let ok = c.element == *g
                && match &c.witness {
                    Witness::Prime(w) => check_prime_witness(&cert.target, &c.element.pow(c.n as u64), w),
                    Witness::Generated(_) => false,
                };
            if !ok {
                return fail("inward", format!("witness for {g} does not replay"));
            }
        }
        let j = GeneratedIdeal::new(cert.ring(), cert.generators.clone())?;
        for c in self.outward.iter().chain(&self.spot_checks) {
            let ok = c.n <= self.bound_used
                && match &c.witness {
                    Witness::Generated(w) => j.check_witness(&c.element.pow(c.n as u64), w),
                    Witness::Prime(_) => false,
                };
            if !ok {
                return fail("outward", format!("witness for ({})^{} does not replay", c.element, c.n));
            }
        }
        for zc in &self.extended_checks {
            let power = zc.element.pow(zc.n as u64);
            let ok = power.coeffs().len() == zc.witnesses.len()
                && power.coeffs().iter().zip(&zc.witnesses).all(|(c, w)| j.check_witness(c, w));
            if !ok {
                return fail("extended", format!("witness for ({})^{} does not replay", zc.element, zc.n));
            }
        }
        Ok(())
    }
}

/// Check a prime membership witness by direct arithmetic.
pub fn check_prime_witness(p: &PrimeIdeal, e: &UniPoly, w: &MembershipWitness) -> bool {
    match (p.shape(), w) {
        (_, MembershipWitness::Zero) => e.is_zero(),
        (Shape::ExtendedBase(a), MembershipWitness::Combination(v)) => v.len() == 1 && v[0].scale(a) == *e,
        (Shape::ContractionZero(f), MembershipWitness::Combination(v)) => v.len() == 1 && &v[0] * f == *e,
        (Shape::MaximalPair(a, f), MembershipWitness::Combination(v)) => {
            v.len() == 2 && &v[0].scale(a) + &(&v[1] * f) == *e
        }
        (Shape::KernelOfEval(h), MembershipWitness::EvalZero) => {
            let mut acc = RingElement::zero(h.target());
            for c in e.coeffs().iter().rev() {
                let Ok(c) = c.embed(h.target()) else { return false };
                acc = &(&acc * h.image()) + &c;
            }
            acc.is_zero()
        }
        (Shape::QuadPrime(q), MembershipWitness::Lattice) => e.coeffs().iter().all(|c| q.contains(c)),
        _ => false,
    }
}

/// Kernel elements probed by the outward check when the kernel has no
/// stored generating set.
pub fn kernel_test_set(p: &PrimeIdeal) -> TestSet {
    let Shape::KernelOfEval(h) = p.shape() else {
        return TestSet { elements: p.canonical_generators().unwrap_or_default(), justification: String::new() };
    };
    let ring = p.ring();
    let a = h.image();
    if let Ok(r) = a.restrict(ring) {
        return TestSet {
            elements: vec![UniPoly::x_minus(&r)],
            justification: format!("{a} lies in {ring}, so X - {a} generates the kernel"),
        };
    }
    let s = h.target();
    let x = UniPoly::x(s);
    let lift = |e: &RingElement| UniPoly::constant(e.clone());
    let sq = &(&x * &x) - &lift(&(a * a));
    let cube = &(&(&x * &x) * &x) - &lift(&(&(a * a) * a));
    let mut elements: Vec<UniPoly> = [sq, cube].iter().filter_map(|g| g.restrict(ring).ok()).collect();
    if elements.len() < 2 {
        // a = r + s1*t: (X - r)^2 - s1^2 t^2 and the conductor multiple t^2 (X - a).
        let t = RingElement::t(s).expect("t");
        let s1 = a.rat_coeffs().and_then(|c| c.get(1).cloned()).map(|q| RingElement::from_rational(s, &q).ok());
        let s1 = match s1 {
            Some(Some(v)) => v,
            _ => RingElement::from_int(s, a.mod_coeffs().and_then(|c| c.get(1).copied()).unwrap_or(0)),
        };
        let r = a - &(&s1 * &t);
        let monic = &UniPoly::x_minus(&r).pow(2) - &lift(&(&(&s1 * &s1) * &(&t * &t)));
        let conductor = &lift(&(&t * &t)) * &UniPoly::x_minus(a);
        elements = [monic, conductor].iter().filter_map(|g| g.restrict(ring).ok()).collect();
    }
    let justification = if ring.characteristic() > 0 {
        format!(
            "every g in ker(X -> {a}) factors as (X - {a})h over {s}, so g^p = (X - {a})^p h^p with h^p over {ring}; the test elements exercise this"
        )
    } else {
        format!("kernel elements of ker(X -> {a}); not a generating set")
    };
    TestSet { elements, justification }
}

fn random_element(ring: RingSpec, rng: &mut ChaCha8Rng) -> RingElement {
    match ring.kind() {
        RingKind::Integers => RingElement::from_int(ring, rng.gen_range(-4i64..=4)),
        RingKind::Rationals => {
            let q = BigRational::new(BigInt::from(rng.gen_range(-4i64..=4)), BigInt::from(rng.gen_range(1i64..=3)));
            RingElement::from_rational(ring, &q).expect("rational")
        }
        RingKind::PrimeField(p) => RingElement::from_int(ring, rng.gen_range(0..p)),
        RingKind::PolyOverPrimeField(p) => {
            RingElement::from_mod_coeffs(ring, (0..3).map(|_| rng.gen_range(0..p)).collect()).expect("residues")
        }
        RingKind::MonomialSubring(p) if p > 0 => {
            let c = vec![rng.gen_range(0..p), 0, rng.gen_range(0..p), rng.gen_range(0..p)];
            RingElement::from_mod_coeffs(ring, c).expect("t^1 free")
        }
        RingKind::MonomialSubring(_) => {
            let c = [rng.gen_range(-3i64..=3), 0, rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3)];
            RingElement::from_rat_coeffs(ring, c.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .expect("t^1 free")
        }
        RingKind::PolyOverRationals => RingElement::from_rat_coeffs(
            ring,
            (0..3).map(|_| BigRational::from_integer(rng.gen_range(-3i64..=3).into())).collect(),
        )
        .expect("rationals"),
        RingKind::QuadraticOrder(_) => {
            RingElement::quad(ring, rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3)).expect("quad")
        }
    }
}

fn random_poly(ring: RingSpec, deg: usize, rng: &mut ChaCha8Rng) -> UniPoly {
    UniPoly::new(ring, (0..=deg).map(|_| random_element(ring, rng)).collect()).expect("same ring")
}

/// A random element of the target prime.
fn random_member(p: &PrimeIdeal, rng: &mut ChaCha8Rng) -> Option<UniPoly> {
    let ring = p.ring();
    let deg = if p.ambient() == Ambient::Base { 0 } else { 2 };
    match p.shape() {
        Shape::KernelOfEval(h) => {
            let a = h.image();
            if let Ok(r) = a.restrict(ring) {
                return Some(&UniPoly::x_minus(&r) * &random_poly(ring, 2, rng));
            }
            let s = h.target();
            let t = RingElement::t(s).ok()?;
            let conductor = UniPoly::constant(&t * &t);
            (&(&conductor * &UniPoly::x_minus(a)) * &random_poly(s, 2, rng)).restrict(ring).ok()
        }
        Shape::QuadPrime(q) => {
            let b = q.basis();
            let pick = |rng: &mut ChaCha8Rng| RingElement::from_int(ring, rng.gen_range(-3i64..=3));
            let coeffs: Vec<RingElement> =
                (0..=deg).map(|_| &(&pick(rng) * &b[0]) + &(&pick(rng) * &b[1])).collect();
            UniPoly::new(ring, coeffs).ok()
        }
        _ => {
            let gens = p.canonical_generators()?;
            Some(gens.iter().fold(UniPoly::zero(ring), |acc, g| &acc + &(g * &random_poly(ring, deg, rng))))
        }
    }
}

fn found_or_fail(e: &UniPoly, r: RadicalMembership, direction: &str, j: &GeneratedIdeal) -> Result<Check> {
    match r {
        RadicalMembership::Found { n, witness } => Ok(Check { element: e.clone(), n, witness }),
        RadicalMembership::Refuted { reason } => Err(Error::VerificationFailed {
            direction: direction.into(),
            detail: format!("{e} is not in rad({j}): {reason}"),
        }),
        RadicalMembership::NotProven { bound, reason } => {
            Err(Error::NotProven { bound, detail: format!("{direction}: {e} in rad({j}): {reason}") })
        }
    }
}

/// Check `rad(generators) = target` for a certificate.
pub fn rad_equal(cert: &Certificate, cfg: &Config) -> Result<RadicalProof> {
    let ring = cert.ring();
    let p = &cert.target;
    if !cert.satisfies_size_law() {
        return Err(Error::VerificationFailed {
            direction: "size".into(),
            detail: format!("{} generators for a prime of height {}", cert.generators.len(), p.height()),
        });
    }
    if cert.exponent_hints.len() != cert.generators.len() {
        return Err(Error::Usage(format!(
            "{} exponent hints for {} generators",
            cert.exponent_hints.len(),
            cert.generators.len()
        )));
    }
    let mut inward = Vec::new();
    for g in &cert.generators {
        if g.ring() != ring {
            return Err(Error::mixed(g.ring(), ring));
        }
        match p.member_witness(g)? {
            Some(w) => inward.push(Check { element: g.clone(), n: 1, witness: Witness::Prime(w) }),
            None => {
                return Err(Error::VerificationFailed {
                    direction: "inward".into(),
                    detail: format!("{g} is not in {p}"),
                })
            }
        }
    }
    let j = GeneratedIdeal::new(ring, cert.generators.clone())?;
    let bound = cert.exponent_hints.iter().copied().max().unwrap_or(1).max(cfg.bound);
    let (targets, test_set) = Side::Prime(p).radical_generators();
    let side = Side::Generated(&j);
    let mut outward = Vec::new();
    for x in &targets {
        outward.push(found_or_fail(x, radical_member(x, &side, bound, cfg), "outward", &j)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut spot_checks = Vec::new();
    for _ in 0..cfg.spot_checks {
        let Some(e) = random_member(p, &mut rng) else { break };
        spot_checks.push(found_or_fail(&e, radical_member(&e, &side, bound, cfg), "spot check", &j)?);
    }
    let mut extended_checks = Vec::new();
    if p.ambient() == Ambient::Extended {
        for _ in 0..cfg.spot_checks {
            let Some(c) = random_member(p, &mut rng) else { break };
            let r = random_poly(ring, 1, &mut rng);
            let e = ZPoly::new(ring, vec![c.clone(), &c * &r])?;
            extended_checks.push(extended_check(&e, &j, bound)?);
        }
    }
    Ok(RadicalProof { inward, outward, test_set, spot_checks, extended_checks, bound_used: bound })
}

fn extended_check(e: &ZPoly, j: &GeneratedIdeal, bound: u32) -> Result<ZCheck> {
    let mut power = ZPoly::lift(&UniPoly::one(j.ring()));
    for n in 1..=bound {
        power = power.mul(e);
        let ws: Option<Vec<GenWitness>> = power.coeffs().iter().map(|c| j.member_witness(c).flatten()).collect();
        if let Some(witnesses) = ws {
            return Ok(ZCheck { element: e.clone(), n, witnesses });
        }
    }
    Err(Error::NotProven { bound, detail: format!("extended spot check {e} in rad({j})") })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideProof {
    /// Generators of the left side in the right radical.
    pub forward: Vec<Check>,
    pub backward: Vec<Check>,
    pub test_sets: Vec<TestSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equality {
    Equal(SideProof),
    NotEqual(String),
    NotProven(String),
}

fn contained(lhs: &Side, rhs: &Side, cfg: &Config, out: &mut Vec<Check>, notes: &mut Vec<TestSet>) -> Option<Equality> {
    let (gens, ts) = lhs.radical_generators();
    notes.extend(ts);
    for g in &gens {
        match radical_member(g, rhs, cfg.bound, cfg) {
            RadicalMembership::Found { n, witness } => out.push(Check { element: g.clone(), n, witness }),
            RadicalMembership::Refuted { reason } => {
                return Some(Equality::NotEqual(format!("{g} from {lhs} is not in rad({rhs}): {reason}")))
            }
            RadicalMembership::NotProven { reason, .. } => return Some(Equality::NotProven(reason)),
        }
    }
    None
}

/// `rad(lhs) = rad(rhs)` for two presentations.
pub fn rad_equal_sides(lhs: &Side, rhs: &Side, cfg: &Config) -> Equality {
    if lhs.ring() != rhs.ring() {
        return Equality::NotEqual(format!("rings differ: {} and {}", lhs.ring(), rhs.ring()));
    }
    let mut proof = SideProof { forward: Vec::new(), backward: Vec::new(), test_sets: Vec::new() };
    if let Some(e) = contained(lhs, rhs, cfg, &mut proof.forward, &mut proof.test_sets) {
        return e;
    }
    if let Some(e) = contained(rhs, lhs, cfg, &mut proof.backward, &mut proof.test_sets) {
        return e;
    }
    Equality::Equal(proof)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub enumerated: u128,
    pub lhs_count: u64,
    pub rhs_count: u64,
    /// Least enumerated element in exactly one bounded radical.
    pub disagreement: Option<UniPoly>,
}

impl OracleReport {
    pub fn agree(&self) -> bool {
        self.disagreement.is_none()
    }
}

/// Coefficient positions in `t` present in the enumeration.
fn oracle_positions(ring: RingSpec, d: u32) -> Result<(u64, Vec<usize>)> {
    let d = d as usize;
    match ring.kind() {
        RingKind::PrimeField(p) => Ok((p, vec![0])),
        RingKind::PolyOverPrimeField(p) => Ok((p, (0..=d).collect())),
        RingKind::MonomialSubring(p) if p > 0 => Ok((p, (0..=d).filter(|&i| i != 1).collect())),
        _ => Err(Error::Unsupported(format!("the brute-force oracle needs a finite residue ring, not {ring}"))),
    }
}

fn decode(ring: RingSpec, p: u64, positions: &[usize], d: u32, mut index: u128) -> UniPoly {
    let mut coeffs = Vec::with_capacity(d as usize + 1);
    for _ in 0..=d {
        let mut c = vec![0u64; positions.last().map_or(1, |m| m + 1)];
        for &pos in positions {
            c[pos] = (index % p as u128) as u64;
            index /= p as u128;
        }
        let e = match ring.kind() {
            RingKind::PrimeField(_) => RingElement::from_int(ring, c[0]),
            _ => RingElement::from_mod_coeffs(ring, c).expect("residues"),
        };
        coeffs.push(e);
    }
    UniPoly::new(ring, coeffs).expect("same ring")
}

/// `e^q` for `q` a power of the characteristic: `sum c_i(t^q) X^(i*q)`.
fn frobenius_power(e: &UniPoly, q: usize) -> UniPoly {
    let ring = e.ring();
    let mut coeffs = vec![RingElement::zero(ring); e.degree().map_or(1, |d| d * q + 1)];
    for (i, c) in e.coeffs().iter().enumerate() {
        coeffs[i * q] = match c.mod_coeffs() {
            Some(cs) if ring.has_t() => {
                let mut spread = vec![0u64; (cs.len().max(1) - 1) * q + 1];
                for (j, &v) in cs.iter().enumerate() {
                    spread[j * q] = v;
                }
                RingElement::from_mod_coeffs(ring, spread).expect("residues")
            }
            _ => c.clone(),
        };
    }
    UniPoly::new(ring, coeffs).expect("same ring")
}

/// Least power of `p` that is at least `n`.
fn frobenius_exponent(p: u64, n: u32) -> usize {
    let mut q = 1usize;
    while q < n as usize {
        q *= p as usize;
    }
    q
}

fn bounded_radical(side: &Side, e: &UniPoly, q: usize) -> Result<bool> {
    match side.member_witness(&frobenius_power(e, q)) {
        Some(w) => Ok(w.is_some()),
        None => Err(Error::Unsupported(format!("membership in {side} is not decidable"))),
    }
}

/// Enumerate every element with t- and X-degree at most `d` and compare
/// `{e : e^n ∈ I, n ≤ N}` for both sides, where `N` is the least power of
/// the characteristic with `N >= d`. Since `e^n ∈ I` implies
/// `e^N ∈ I`, one Frobenius power per element settles every `n ≤ N`.
pub fn oracle_small(lhs: &Side, rhs: &Side, d: u32, cfg: &Config) -> Result<OracleReport> {
    let ring = lhs.ring();
    if rhs.ring() != ring {
        return Err(Error::mixed(ring, rhs.ring()));
    }
    let (p, positions) = oracle_positions(ring, d)?;
    let per_coeff = (p as u128).checked_pow(positions.len() as u32);
    let needed = per_coeff.and_then(|c| c.checked_pow(d + 1)).unwrap_or(u128::MAX);
    if needed > cfg.oracle_budget {
        return Err(Error::CapTooLarge { needed, budget: cfg.oracle_budget });
    }
    let q = frobenius_exponent(p, d.max(1));
    let results: Result<Vec<(bool, bool, u128)>> = (0..needed as u64)
        .into_par_iter()
        .map(|i| {
            let e = decode(ring, p, &positions, d, i as u128);
            Ok((bounded_radical(lhs, &e, q)?, bounded_radical(rhs, &e, q)?, i as u128))
        })
        .collect();
    let results = results?;
    let lhs_count = results.iter().filter(|r| r.0).count() as u64;
    let rhs_count = results.iter().filter(|r| r.1).count() as u64;
    let disagreement = results.iter().find(|r| r.0 != r.1).map(|r| decode(ring, p, &positions, d, r.2));
    Ok(OracleReport { enumerated: needed, lhs_count, rhs_count, disagreement })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::{classify, IdealPresentation};
    use crate::stci::certify;

    fn zz() -> RingSpec {
        RingSpec::integers()
    }

    fn zp(c: &[i64]) -> UniPoly {
        UniPoly::new(zz(), c.iter().map(|&x| RingElement::from_int(zz(), x)).collect()).unwrap()
    }

    fn prime(ring: RingSpec, g: Vec<UniPoly>) -> PrimeIdeal {
        classify(&IdealPresentation::Generators { ring, ambient: Ambient::Poly, gens: g }, &Config::default()).unwrap()
    }

    fn kernel(p: u64) -> PrimeIdeal {
        let r = RingSpec::monomial_subring(p).unwrap();
        let t = RingElement::t(r.normalization().unwrap().target).unwrap();
        PrimeIdeal::kernel(EvalHom::new(r, t).unwrap())
    }

    #[test]
    fn certificates_verify_and_replay() {
        let cfg = Config::default();
        for p in [
            prime(zz(), vec![zp(&[5])]),
            prime(zz(), vec![zp(&[5]), zp(&[2, 0, 1])]),
            prime(zz(), vec![zp(&[3, 2])]),
            kernel(2),
            kernel(3),
            kernel(5),
        ] {
            let c = certify(&p, &cfg).unwrap();
            let proof = rad_equal(&c, &cfg).unwrap();
            proof.replay(&c).unwrap();
            assert_eq!(proof.spot_checks.len(), cfg.spot_checks);
        }
        let c = certify(&kernel(3), &cfg).unwrap();
        let proof = rad_equal(&c, &cfg).unwrap();
        assert!(proof.test_set.is_some());
        assert!(proof.outward.iter().all(|c| c.n <= 3));
    }

    #[test]
    fn wrong_certificates_fail() {
        let cfg = Config::default();
        let p = prime(zz(), vec![zp(&[5])]);
        let mut c = certify(&p, &cfg).unwrap();
        c.generators = vec![zp(&[3, 2])];
        match rad_equal(&c, &cfg) {
            Err(Error::VerificationFailed { direction, .. }) => assert_eq!(direction, "inward"),
            other => panic!("{other:?}"),
        }
        c.generators = vec![zp(&[25])];
        assert!(rad_equal(&c, &cfg).is_ok());
        c.generators = vec![zp(&[5]), zp(&[0, 5])];
        c.exponent_hints = vec![1, 1];
        assert!(matches!(rad_equal(&c, &cfg), Err(Error::VerificationFailed { .. })));
        c.generators = vec![zp(&[50])];
        c.exponent_hints = vec![1];
        c.target = prime(zz(), vec![zp(&[5]), zp(&[2, 0, 1])]);
        assert!(rad_equal(&c, &cfg).is_err());
    }

    #[test]
    fn tampered_witness_does_not_replay() {
        let cfg = Config::default();
        let c = certify(&kernel(2), &cfg).unwrap();
        let mut proof = rad_equal(&c, &cfg).unwrap();
        proof.outward[0].n += 1;
        assert!(proof.replay(&c).is_err());
    }

    #[test]
    fn radical_membership_examples() {
        let cfg = Config::default();
        let j = GeneratedIdeal::new(zz(), vec![zp(&[12])]).unwrap();
        let side = Side::Generated(&j);
        assert!(matches!(radical_member(&zp(&[6]), &side, 8, &cfg), RadicalMembership::Found { n: 2, .. }));
        assert!(matches!(radical_member(&zp(&[3]), &side, 8, &cfg), RadicalMembership::Refuted { .. }));
        let j = GeneratedIdeal::new(zz(), vec![zp(&[14, 7]), zp(&[21])]).unwrap();
        match radical_member(&zp(&[7]), &Side::Generated(&j), 8, &cfg) {
            RadicalMembership::Refuted { reason } => assert!(reason.contains('3'), "{reason}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn side_equality() {
        let cfg = Config::default();
        let p = prime(zz(), vec![zp(&[7])]);
        let j = GeneratedIdeal::new(zz(), vec![zp(&[49])]).unwrap();
        assert!(matches!(rad_equal_sides(&Side::Prime(&p), &Side::Generated(&j), &cfg), Equality::Equal(_)));
        assert!(matches!(rad_equal_sides(&Side::Generated(&j), &Side::Prime(&p), &cfg), Equality::Equal(_)));
        let k = GeneratedIdeal::new(zz(), vec![zp(&[14, 7]), zp(&[21])]).unwrap();
        assert!(matches!(rad_equal_sides(&Side::Generated(&k), &Side::Prime(&p), &cfg), Equality::NotEqual(_)));
    }

    #[test]
    fn oracle_agrees_on_frobenius() {
        let cfg = Config::default();
        let k = kernel(2);
        let c = certify(&k, &cfg).unwrap();
        let j = GeneratedIdeal::new(k.ring(), c.generators.clone()).unwrap();
        let r = oracle_small(&Side::Prime(&k), &Side::Generated(&j), 3, &cfg).unwrap();
        assert!(r.agree(), "{r:?}");
        let x3 = {
            let ring = k.ring();
            let t3 = RingElement::from_mod_coeffs(ring, vec![0, 0, 0, 1]).unwrap();
            &UniPoly::monomial(RingElement::one(ring), 3) - &UniPoly::constant(t3)
        };
        let j3 = GeneratedIdeal::new(k.ring(), vec![x3]).unwrap();
        let r = oracle_small(&Side::Prime(&k), &Side::Generated(&j3), 3, &cfg).unwrap();
        assert!(!r.agree());
        let tight = Config { oracle_budget: 10, ..cfg };
        assert!(matches!(oracle_small(&Side::Prime(&k), &Side::Generated(&j), 3, &tight), Err(Error::CapTooLarge { .. })));
    }

    #[test]
    fn extension_field_points_separate() {
        let r = RingSpec::monomial_subring(2).unwrap();
        let s = r.normalization().unwrap().target;
        let k = classify(&IdealPresentation::Kernel(EvalHom::new(r, RingElement::t(s).unwrap()).unwrap()), &Config::default()).unwrap();
        let f = &UniPoly::x(r).pow(3) + &UniPoly::constant(RingElement::from_mod_coeffs(r, vec![0, 0, 0, 1]).unwrap());
        let j = GeneratedIdeal::new(r, vec![f]).unwrap();
        // X^3 + t^3 = (X + t)(X^2 + tX + t^2); the quadratic factor vanishes at t = 1, X in GF(4) \ GF(2).
        let e = &UniPoly::x(r).pow(2) + &UniPoly::constant(RingElement::from_mod_coeffs(r, vec![0, 0, 1]).unwrap());
        let cfg = Config::default();
        match radical_member(&e, &Side::Generated(&j), 8, &cfg) {
            RadicalMembership::Refuted { reason } => assert!(reason.contains("GF(2)[a]"), "{reason}"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(rad_equal_sides(&Side::Prime(&k), &Side::Generated(&j), &cfg), Equality::NotEqual(_)));
    }
}
