//! Certificate construction: generator lists `(a_1, ..., a_n)` with
//! `rad(a_1, ..., a_n) = P` and `n = height(P)`.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::ideals::{Ambient, GeneratedIdeal, PrimeIdeal, Shape};
use crate::poly::{EvalHom, UniPoly};
use crate::quadlat::{QuadIdeal, TorsionWitness};
use crate::rings::{RingElement, RingKind, RingSpec};
use crate::verify::{self, RadicalMembership, Side};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub step: String,
    /// Stable key naming the argument this step realizes.
    #[serde(rename = "ref")]
    pub reference: String,
    pub detail: String,
}

impl TraceStep {
    pub fn new(step: &str, reference: &str, detail: impl Into<String>) -> Self {
        TraceStep { step: step.into(), reference: reference.into(), detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub target: PrimeIdeal,
    pub generators: Vec<UniPoly>,
    pub exponent_hints: Vec<u32>,
    pub trace: Vec<TraceStep>,
}

impl Certificate {
    pub fn ring(&self) -> RingSpec {
        self.target.ring()
    }

    fn new(target: PrimeIdeal) -> Self {
        Certificate { target, generators: Vec::new(), exponent_hints: Vec::new(), trace: Vec::new() }
    }

    fn push(&mut self, g: UniPoly, hint: u32) {
        self.generators.push(g);
        self.exponent_hints.push(hint);
    }

    fn step(&mut self, step: &str, reference: &str, detail: impl Into<String>) {
        self.trace.push(TraceStep::new(step, reference, detail));
    }

    /// Generator count equals height.
    pub fn satisfies_size_law(&self) -> bool {
        self.generators.len() as u32 == self.target.height()
    }
}

/// Route a classified prime to the construction that applies to it.
pub fn certify(p: &PrimeIdeal, cfg: &Config) -> Result<Certificate> {
    if p.ambient() == Ambient::Extended {
        let down = PrimeIdeal::clone(p);
        let base = certify(&lower(&down)?, cfg)?;
        return extend_certificate(&base);
    }
    match p.shape() {
        Shape::Zero => {
            let mut c = Certificate::new(p.clone());
            c.step("zero-ideal", "height-zero", "the zero ideal has height 0; the empty list generates it");
            Ok(c)
        }
        Shape::ExtendedBase(_) | Shape::MaximalPair(..) => certify_prime(p),
        Shape::ContractionZero(f) => certify_contraction_zero(p, f),
        Shape::KernelOfEval(h) => {
            if let Ok(a) = h.image().restrict(h.source()) {
                return kernel_of_ring_point(p, &a);
            }
            match p.ring().kind() {
                RingKind::MonomialSubring(q) if q > 0 => frobenius_descent(p),
                RingKind::MonomialSubring(_) => Err(Error::CharacteristicZero),
                _ => Err(Error::UnsupportedIdealShape(format!("kernel {h} over {}", p.ring()))),
            }
        }
        Shape::QuadPrime(q) => certify_quad_prime(p, q, cfg),
    }
}

/// The prime in `R[X]` whose extension to `R[X][Z]` is `p`.
fn lower(p: &PrimeIdeal) -> Result<PrimeIdeal> {
    let readback = p.readback();
    let cfg = Config::default();
    let mut q = crate::ideals::classify(&readback, &cfg)?;
    // classify keeps the requested ambient; rebuild at the polynomial level.
    if q.ambient() == Ambient::Extended {
        q = match readback {
            crate::ideals::IdealPresentation::Generators { ring, gens, .. } => crate::ideals::classify(
                &crate::ideals::IdealPresentation::Generators { ring, ambient: Ambient::Poly, gens },
                &cfg,
            )?,
            crate::ideals::IdealPresentation::Lattice { ring, gens, .. } => crate::ideals::classify(
                &crate::ideals::IdealPresentation::Lattice { ring, ambient: Ambient::Poly, gens },
                &cfg,
            )?,
            other => crate::ideals::classify(&other, &cfg)?,
        };
    }
    Ok(q)
}

/// `X - a` generates the kernel of `X -> a` when `a` already lies in `R`.
fn kernel_of_ring_point(p: &PrimeIdeal, a: &RingElement) -> Result<Certificate> {
    let mut c = Certificate::new(p.clone());
    let f = UniPoly::x_minus(a);
    c.step(
        "point-in-ring",
        "kernel-linear-generator",
        format!("{a} lies in {}, so the kernel of X -> {a} is generated by the monic {f}", p.ring()),
    );
    c.push(f, 1);
    Ok(c)
}

/// The base radical generator `a` with `P = rad(Ra)`, from `Rx + Ry = Ra`.
fn base_radical_generator(prime: &RingElement, c: &mut Certificate) -> Result<RingElement> {
    // In a PID every prime is principal: take x the generator and choose y
    // in P outside the other maximal ideals containing x. The generator
    // itself lies in no other maximal ideal, so y = x and a = gcd(x, y).
    let x = prime.clone();
    let y = prime.clone();
    let bz = RingElement::gcd_bezout(&x, &y)?;
    c.step(
        "base-generator",
        "bezout-gcd",
        format!(
            "x = {x}, y = {y} (no other maximal ideal contains x); Rx + Ry = Ra with a = {} = ({})*x + ({})*y",
            bz.g, bz.s, bz.t
        ),
    );
    Ok(bz.g)
}

/// Primes with nonzero contraction `P = (a)`: `{a}` when `P* = PR[X]`,
/// otherwise `{a, f}` for the monic `f` with `P* = (P, f)`.
pub fn certify_prime(p: &PrimeIdeal) -> Result<Certificate> {
    if !p.ring().is_bezout() {
        return Err(Error::NotBezout(p.ring().to_string()));
    }
    let mut c = Certificate::new(p.clone());
    c.step("contract", "contraction-dichotomy", format!("P* ∩ R = {}", p.contract()));
    match p.shape() {
        Shape::ExtendedBase(prime) => {
            let a = base_radical_generator(prime, &mut c)?;
            c.step("extended-prime", "principal-extension", format!("P* = PR[X] = rad(aR[X]) with a = {a}"));
            c.push(UniPoly::constant(a), 1);
        }
        Shape::MaximalPair(prime, f) => {
            let a = base_radical_generator(prime, &mut c)?;
            c.step(
                "height-two",
                "maximal-pair",
                format!("P* properly contains PR[X]; P* is generated by P and the monic {f}, so P* = rad(aR[X] + fR[X])"),
            );
            c.push(UniPoly::constant(a), 1);
            c.push(f.clone(), 1);
        }
        _ => {
            return Err(Error::UnsupportedIdealShape(format!(
                "{} has zero contraction; use the contraction-zero construction",
                p
            )))
        }
    }
    Ok(c)
}

/// Certificate `{f}` for a prime contracting to zero, reached from any
/// nonzero member `g`: strip the content, then strip cofactors outside `P`.
pub fn certify_contraction_zero(p: &PrimeIdeal, g: &UniPoly) -> Result<Certificate> {
    let Shape::ContractionZero(f) = p.shape() else {
        return Err(Error::UnsupportedIdealShape(format!("{p} does not contract to zero")));
    };
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.member(g)? {
        return Err(Error::NotInIdeal { element: g.to_string(), ideal: p.to_string() });
    }
    let mut c = Certificate::new(p.clone());
    c.step("contract", "contraction-dichotomy", "P* ∩ R = 0");
    c.step("generic-generator", "fraction-field-generator", format!("P*K[X] = ({f})K[X], and g = {g} lies in P*"));
    let primitive = if p.ring().is_bezout() {
        let pp = g.primitive_part()?;
        let identity: Vec<String> = pp
            .cofactors
            .iter()
            .zip(&pp.witnesses)
            .map(|(ci, di)| format!("({ci})*({di})"))
            .collect();
        c.step(
            "primitive-part",
            "content-division",
            format!("A_g = R*{}; g = a*f0 with a = {}, f0 = {}", pp.content, pp.content, pp.primitive),
        );
        c.step(
            "unit-content",
            "content-unit-identity",
            format!("1 = {}, so A_f0 = R", identity.join(" + ")),
        );
        if !pp.unit_identity_holds() {
            return Err(Error::VerificationFailed {
                direction: "construction".into(),
                detail: "content witness identity does not sum to 1".into(),
            });
        }
        pp.primitive
    } else {
        g.clone()
    };
    let mut rest = primitive;
    let mut k = 0u32;
    while let Some(q) = rest.exact_div(f) {
        rest = q;
        k += 1;
    }
    if !rest.is_constant() {
        c.step(
            "strip-cofactor",
            "fraction-field-generator",
            format!("f0 = ({f})^{k} * ({rest}); the factor {rest} is not in P* and is discarded"),
        );
    } else if k > 1 {
        c.step("strip-cofactor", "fraction-field-generator", format!("f0 = ({f})^{k} up to a unit"));
    }
    c.step(
        "unique-height-one",
        "unique-prime-over-generator",
        format!("{f} is primitive, so no PR[X] with P ≠ 0 contains it; P* is the only height one prime containing {f}, hence P* = rad(({f})R[X])"),
    );
    c.push(f.clone(), 1);
    Ok(c)
}

/// Characteristic `p` descent through the normalization: `P = rad(f^p)`.
pub fn frobenius_descent(p: &PrimeIdeal) -> Result<Certificate> {
    let Shape::KernelOfEval(h) = p.shape() else {
        return Err(Error::UnsupportedIdealShape(format!("{p} is not a kernel of evaluation")));
    };
    let ring = p.ring();
    let char_p = ring.characteristic();
    if char_p == 0 {
        return Err(Error::CharacteristicZero);
    }
    let nd = ring
        .normalization()
        .ok_or_else(|| Error::Unsupported(format!("{ring} has no stored normalization")))?;
    let a = h.image();
    if nd.subring_member(a) {
        return kernel_of_ring_point(p, &a.restrict(ring)?);
    }
    let mut c = Certificate::new(p.clone());
    let s = nd.target;
    c.step(
        "normalize",
        "normalization-pid",
        format!("the normalization of {ring} is {s}, a PID; every prime of {s}[X] is radical of a principal ideal"),
    );
    let f = UniPoly::x_minus(a);
    let q = PrimeIdeal::kernel(EvalHom::new(s, a.clone())?);
    let inner = certify(&q, &Config::default())?;
    c.step(
        "radical-in-normalization",
        "ufd-intersection",
        format!("{s}[X] is a UFD, so rad(P·{s}[X]) = rad(f) for f = {}", inner.generators[0]),
    );
    let fp = f.pow(char_p);
    for coeff in fp.coeffs() {
        if !nd.subring_member(coeff) {
            return Err(Error::SubringEscape(format!("coefficient {coeff} of {fp}")));
        }
    }
    c.step(
        "frobenius",
        "frobenius-pth-power",
        format!("f^{char_p} = {fp}: every coefficient has zero t^1 term, so f^{char_p} lies in {ring}[X] and in P"),
    );
    let restricted = fp.restrict(ring)?;
    c.step(
        "descend",
        "frobenius-radical",
        format!("every g in P has g^{char_p} = f^{char_p} * h^{char_p} with h^{char_p} in {ring}[X]; P = rad(f^{char_p})"),
    );
    c.push(restricted, char_p as u32);
    Ok(c)
}

/// `{b}` with `P^m = (b)`; then `rad(bR[X]) = PR[X]`.
fn certify_quad_prime(p: &PrimeIdeal, q: &QuadIdeal, cfg: &Config) -> Result<Certificate> {
    let w = q.torsion_witness(cfg.class_number_bound)?;
    let mut c = Certificate::new(p.clone());
    c.step(
        "torsion",
        "torsion-witness",
        format!("P^{} = ({}) as lattices, N({}) = {}^{}", w.m, w.b, w.b, q.norm(), w.m),
    );
    c.step("radical", "torsion-radical", format!("P = rad(({})), so P extends to rad({}R[X])", w.b, w.b));
    c.push(UniPoly::constant(w.b), w.m);
    Ok(c)
}

/// Reinterpret a certificate one polynomial variable up.
pub fn extend_certificate(c: &Certificate) -> Result<Certificate> {
    let target = c.target.extend()?;
    let mut out = c.clone();
    out.target = target;
    out.step(
        "extend",
        "flat-extension",
        format!(
            "P* = P·{} is the extension prime (caller's obligation); the radical identity is preserved by the flat extension",
            out.target.ambient().describe(out.ring())
        ),
    );
    Ok(out)
}

/// Result of the characteristic zero obstruction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub ring: RingSpec,
    pub element: RingElement,
    pub kernel: PrimeIdeal,
    pub forced_form: String,
    /// A monic member of the kernel, forcing the constant to be 1.
    pub monic_member: UniPoly,
    /// `(n, X^(n-1) coefficient of (X - a)^n)` for the checked range.
    pub failing_coefficients: Vec<(u32, RingElement)>,
    pub conclusion: String,
    pub trace: Vec<TraceStep>,
}

/// Replays why `ker(X -> a)` has no principal radical generator when `a`
/// is integral over a characteristic zero ring but outside it.
pub fn normality_obstruction(ring: RingSpec, a: &RingElement, n_check: u32) -> Result<ObstructionReport> {
    if ring.characteristic() != 0 {
        return Err(Error::CharacteristicP);
    }
    if ring.is_normal() {
        return Err(Error::RingIsNormal(ring.to_string()));
    }
    let nd = ring
        .normalization()
        .ok_or_else(|| Error::Unsupported(format!("{ring} has no stored normalization")))?;
    let a = a.embed(nd.target)?;
    if nd.subring_member(&a) {
        return Err(Error::ElementActuallyInRing(a.to_string()));
    }
    let s = nd.target;
    let kernel = PrimeIdeal::kernel(EvalHom::new(ring, a.clone())?);
    let mut trace = vec![
        TraceStep::new(
            "lying-over",
            "unique-prime-over",
            format!("(X - {a}) is prime in {s}[X]; P = (X - {a}){s}[X] ∩ {ring}[X] has P ∩ R = 0, so only one prime of K[X] lies over it"),
        ),
        TraceStep::new(
            "forced-form",
            "ufd-prime-divisor",
            format!("if P = rad(f) then PK[X] = (X - {a})K[X], so f = c(X - {a})^n with c in K"),
        ),
    ];
    // a = r + s1*t with r in R and s1 a constant; (X - r)^2 - s1^2 t^2 kills a.
    let coeffs = a.rat_coeffs().expect("rational polynomial").to_vec();
    let s1 = coeffs.get(1).cloned().unwrap_or_default();
    let t = RingElement::t(s)?;
    let s1e = RingElement::from_rational(s, &s1)?;
    let r = &a - &(&s1e * &t);
    let x_minus_r = UniPoly::x_minus(&r);
    let sq = UniPoly::constant(&(&s1e * &s1e) * &(&t * &t));
    let monic_member = (&x_minus_r.pow(2) - &sq).restrict(ring)?;
    if !kernel.member(&monic_member)? {
        return Err(Error::VerificationFailed {
            direction: "obstruction".into(),
            detail: format!("{monic_member} does not vanish at {a}"),
        });
    }
    trace.push(TraceStep::new(
        "monic",
        "monic-member-forces-unit",
        format!("P = ker(X -> {a}) contains the monic {monic_member}, so f is monic and c = 1"),
    ));
    let mut failing = Vec::new();
    let xa = UniPoly::x_minus(&a);
    let mut power = UniPoly::one(s);
    for n in 1..=n_check {
        power = &power * &xa;
        let coeff = power.coeff(n as usize - 1);
        let expected = -&(&RingElement::from_int(s, n) * &a);
        if coeff != expected {
            return Err(Error::VerificationFailed {
                direction: "obstruction".into(),
                detail: format!("X^{} coefficient of (X - {a})^{n} is {coeff}, expected {expected}", n - 1),
            });
        }
        if nd.subring_member(&coeff) {
            return Err(Error::VerificationFailed {
                direction: "obstruction".into(),
                detail: format!("{coeff} unexpectedly lies in {ring}"),
            });
        }
        failing.push((n, coeff));
    }
    trace.push(TraceStep::new(
        "coefficient",
        "coefficient-comparison",
        format!("the X^(n-1) coefficient of (X - {a})^n is -n*{a}; checked not in {ring} for n = 1..{n_check}"),
    ));
    trace.push(TraceStep::new(
        "invertible-n",
        "characteristic-zero-division",
        format!("n is invertible in {ring} (characteristic 0), so n*{a} in R would force {a} in R, for every n"),
    ));
    Ok(ObstructionReport {
        ring,
        element: a.clone(),
        kernel,
        forced_form: format!("f = (X - {a})^n, monic"),
        monic_member,
        failing_coefficients: failing,
        conclusion: format!("no principal radical generator exists for ker(X -> {a}) in {ring}[X]; {ring} is not normal"),
        trace,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantDescent {
    pub b: RingElement,
    /// `a^n = f*g`.
    pub n: u32,
    pub cofactor: UniPoly,
    pub torsion: Option<TorsionWitness>,
    /// `(b) = P^k` in the quadratic case.
    pub power: Option<u32>,
    pub trace: Vec<TraceStep>,
}

/// Given a claimed `rad(f) = PR[X]` and `a ∈ P`, show `f` is a constant `b`.
pub fn constant_descent(f: &UniPoly, p: &PrimeIdeal, a: &RingElement, cfg: &Config) -> Result<ConstantDescent> {
    if f.ring() != p.ring() || a.ring() != p.ring() {
        return Err(Error::mixed(f.ring(), p.ring()));
    }
    if !matches!(p.shape(), Shape::ExtendedBase(_) | Shape::QuadPrime(_)) {
        return Err(Error::UnsupportedIdealShape(format!("{p} is not the extension of a base prime")));
    }
    if !p.member(&UniPoly::constant(a.clone()))? {
        return Err(Error::NotInIdeal { element: a.to_string(), ideal: p.to_string() });
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut trace = Vec::new();
    let an = UniPoly::constant(a.clone());
    let mut power = UniPoly::one(f.ring());
    let mut found = None;
    for n in 1..=cfg.bound {
        power = &power * &an;
        if let Some(g) = power.exact_div(f) {
            found = Some((n, g));
            break;
        }
    }
    let Some((n, cofactor)) = found else {
        if !f.is_constant() {
            return Err(Error::DegreeObstruction(format!(
                "{a}^n is never a multiple of the nonconstant {f}: deg(a^n) = 0 < deg(f*g)"
            )));
        }
        return Err(Error::NotProven { bound: cfg.bound, detail: format!("no {a}^n in ({f}) for n ≤ {}", cfg.bound) });
    };
    trace.push(TraceStep::new("power", "power-in-principal", format!("{a}^{n} = ({f})*({cofactor})")));
    if !f.is_constant() {
        return Err(Error::DegreeObstruction(format!("{a}^{n} = f*g forces deg f = 0, but f = {f}")));
    }
    let b = f.coeff(0);
    trace.push(TraceStep::new("degree", "degree-comparison", format!("comparing degrees, f = b = {b} is constant")));
    let (torsion, k) = match p.shape() {
        Shape::QuadPrime(q) => {
            let w = q.torsion_witness(cfg.class_number_bound)?;
            let principal = QuadIdeal::principal(&b)?;
            let mut pk = QuadIdeal::unit(q.ring())?;
            let mut k = None;
            for e in 1..=cfg.bound {
                pk = pk.mul(q);
                if pk == principal {
                    k = Some(e);
                    break;
                }
                if pk.norm() > principal.norm() {
                    break;
                }
            }
            let Some(k) = k else {
                return Err(Error::NotRadicalEqual(format!("({b}) is not a power of {q}")));
            };
            if k % w.m != 0 {
                return Err(Error::VerificationFailed {
                    direction: "torsion".into(),
                    detail: format!("({b}) = P^{k} but the least principal power is m = {}", w.m),
                });
            }
            trace.push(TraceStep::new(
                "torsion",
                "torsion-witness",
                format!("({b}) = P^{k}; least principal power m = {} divides {k}, consistent with P^m = ({})", w.m, w.b),
            ));
            (Some(w), Some(k))
        }
        _ => {
            let bp = GeneratedIdeal::new(p.ring(), vec![UniPoly::constant(b.clone())])?;
            let gen = &p.canonical_generators().expect("finite")[0];
            match verify::radical_member(gen, &Side::Generated(&bp), cfg.bound, cfg) {
                RadicalMembership::Found { n, .. } => trace.push(TraceStep::new(
                    "radical",
                    "constant-radical",
                    format!("({gen})^{n} ∈ ({b}), so P = rad({b})"),
                )),
                other => return Err(Error::NotRadicalEqual(format!("P ≠ rad({b}): {}", other.describe()))),
            }
            (None, None)
        }
    };
    Ok(ConstantDescent { b, n, cofactor, torsion, power: k, trace })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descent {
    pub a: RingElement,
    pub contents: Vec<RingElement>,
    pub trace: Vec<TraceStep>,
}

/// From `MR[X] = rad(f_1, ..., f_n)` recover `a` with `M = rad(a)`.
pub fn descend_certificate(gens: &[UniPoly], m: &PrimeIdeal, cfg: &Config) -> Result<Descent> {
    let ring = m.ring();
    if !ring.is_bezout() {
        return Err(Error::NotBezout(ring.to_string()));
    }
    let Shape::ExtendedBase(_) = m.shape() else {
        return Err(Error::UnsupportedIdealShape(format!("{m} is not the extension of a maximal ideal")));
    };
    let m_poly = if m.ambient() == Ambient::Base { m.extend()? } else { m.clone() };
    let j = GeneratedIdeal::new(ring, gens.to_vec())?;
    match verify::rad_equal_sides(&Side::Generated(&j), &Side::Prime(&m_poly), cfg) {
        verify::Equality::Equal(_) => {}
        verify::Equality::NotEqual(why) => {
            return Err(Error::NotRadicalEqual(format!("rad({j}) ≠ {m_poly}: {why}")))
        }
        verify::Equality::NotProven(why) => {
            return Err(Error::NotProven { bound: cfg.bound, detail: format!("precondition rad({j}) = {m_poly}: {why}") })
        }
    }
    let mut trace = vec![TraceStep::new("precondition", "radical-equality", format!("rad({j}) = {m_poly} verified"))];
    let contents: Vec<RingElement> = gens
        .iter()
        .map(|g| g.content().principal_generator().cloned().expect("bezout"))
        .collect();
    let shown: Vec<String> = contents.iter().map(|c| c.to_string()).collect();
    trace.push(TraceStep::new("content", "content-principal", format!("A_f_i = R*a_i with a = ({})", shown.join(", "))));
    let mut a = RingElement::zero(ring);
    for ci in &contents {
        a = RingElement::gcd_bezout(&a, ci)?.g;
    }
    trace.push(TraceStep::new(
        "gcd",
        "content-gcd",
        format!("(a_1, ..., a_n) = Ra with a = {a}; (f_1, ..., f_n) ⊆ Σ a_i R[X] = aR[X] ⊆ MR[X]"),
    ));
    trace.push(TraceStep::new("conclude", "maximal-radical", format!("M is the only prime containing {a}, so M = rad({a})")));
    Ok(Descent { a, contents, trace })
}
