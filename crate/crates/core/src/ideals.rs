//! Prime ideals of `R` and `R[X]` in classified normal form, and ideals
//! given by generators with membership where it is decidable.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::field::{self, FiniteField};
use crate::irreducible::{self, Verdict};
use crate::poly::{EvalHom, UniPoly, ZPoly};
use crate::quadlat::QuadIdeal;
use crate::rings::{RingElement, RingKind, RingSpec};
use std::fmt;

/// Which ring an ideal lives in: `R`, `R[X]`, or `R[X][Z]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ambient {
    Base,
    Poly,
    Extended,
}

impl Ambient {
    pub fn name(self) -> &'static str {
        match self {
            Ambient::Base => "base",
            Ambient::Poly => "poly",
            Ambient::Extended => "extended",
        }
    }

    pub fn describe(self, ring: RingSpec) -> String {
        match self {
            Ambient::Base => ring.to_string(),
            Ambient::Poly => format!("{ring}[X]"),
            Ambient::Extended => format!("{ring}[X][Z]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Zero,
    /// `(a)` in `R`, or its extension `aR[X]`.
    ExtendedBase(RingElement),
    /// `fK[X] ∩ R[X]` for `f` primitive and irreducible.
    ContractionZero(UniPoly),
    /// `(a, f)`, `f` monic, reduced mod `a` and irreducible there.
    MaximalPair(RingElement, UniPoly),
    KernelOfEval(EvalHom),
    QuadPrime(QuadIdeal),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    ring: RingSpec,
    ambient: Ambient,
    shape: Shape,
}

/// Evidence for `e ∈ P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipWitness {
    Zero,
    /// `e = sum q_i * g_i` over the canonical generators `g_i`.
    Combination(Vec<UniPoly>),
    EvalZero,
    /// Every coefficient lies in the lattice.
    Lattice,
}

/// A presentation as entered, before classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealPresentation {
    Generators { ring: RingSpec, ambient: Ambient, gens: Vec<UniPoly> },
    Kernel(EvalHom),
    Lattice { ring: RingSpec, ambient: Ambient, gens: Vec<RingElement> },
}

impl IdealPresentation {
    pub fn ring(&self) -> RingSpec {
        match self {
            IdealPresentation::Generators { ring, .. } | IdealPresentation::Lattice { ring, .. } => *ring,
            IdealPresentation::Kernel(h) => h.source(),
        }
    }

    pub fn ambient(&self) -> Ambient {
        match self {
            IdealPresentation::Generators { ambient, .. } | IdealPresentation::Lattice { ambient, .. } => *ambient,
            IdealPresentation::Kernel(_) => Ambient::Poly,
        }
    }
}

impl fmt::Display for IdealPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealPresentation::Generators { gens, .. } => {
                let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
                write!(f, "ideal({})", parts.join("; "))
            }
            IdealPresentation::Kernel(h) => write!(f, "ker({h})"),
            IdealPresentation::Lattice { gens, .. } => {
                let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
                write!(f, "qideal({})", parts.join("; "))
            }
        }
    }
}

fn check_ring(ring: RingSpec, e: &UniPoly) -> Result<()> {
    if e.ring() == ring {
        Ok(())
    } else {
        Err(Error::mixed(e.ring(), ring))
    }
}

impl PrimeIdeal {
    pub fn zero(ring: RingSpec, ambient: Ambient) -> Self {
        PrimeIdeal { ring, ambient, shape: Shape::Zero }
    }

    /// `(a)` in `R` (ambient `Base`) or `aR[X]`.
    pub fn extended_base(a: &RingElement, ambient: Ambient) -> Result<Self> {
        a.prime_check()?;
        Ok(PrimeIdeal { ring: a.ring(), ambient, shape: Shape::ExtendedBase(a.canonical()) })
    }

    pub fn contraction_zero(f: &UniPoly, cfg: &Config) -> Result<Self> {
        let ring = f.ring();
        match classify_single(f, cfg)? {
            Shape::ContractionZero(f) => Ok(PrimeIdeal { ring, ambient: Ambient::Poly, shape: Shape::ContractionZero(f) }),
            _ => unreachable!(),
        }
    }

    pub fn maximal_pair(a: &RingElement, f: &UniPoly) -> Result<Self> {
        let shape = classify_pair(a, f)?;
        Ok(PrimeIdeal { ring: a.ring(), ambient: Ambient::Poly, shape })
    }

    pub fn kernel(h: EvalHom) -> Self {
        PrimeIdeal { ring: h.source(), ambient: Ambient::Poly, shape: Shape::KernelOfEval(h) }
    }

    pub fn quad_prime(q: QuadIdeal, ambient: Ambient) -> Result<Self> {
        q.is_prime()?;
        Ok(PrimeIdeal { ring: q.ring(), ambient, shape: Shape::QuadPrime(q) })
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn shape_name(&self) -> &'static str {
        match self.shape {
            Shape::Zero => "Zero",
            Shape::ExtendedBase(_) => "ExtendedBase",
            Shape::ContractionZero(_) => "ContractionZero",
            Shape::MaximalPair(..) => "MaximalPair",
            Shape::KernelOfEval(_) => "KernelOfEval",
            Shape::QuadPrime(_) => "QuadPrime",
        }
    }

    pub fn height(&self) -> u32 {
        match self.shape {
            Shape::Zero => 0,
            Shape::MaximalPair(..) => 2,
            _ => 1,
        }
    }

    /// The same prime one polynomial variable up (`R -> R[X] -> R[X][Z]`).
    pub fn extend(&self) -> Result<Self> {
        let ambient = match self.ambient {
            Ambient::Base => Ambient::Poly,
            Ambient::Poly => Ambient::Extended,
            Ambient::Extended => {
                return Err(Error::Unsupported("only one extension variable is supported".into()))
            }
        };
        Ok(PrimeIdeal { ambient, ..self.clone() })
    }

    pub fn member(&self, e: &UniPoly) -> Result<bool> {
        Ok(self.member_witness(e)?.is_some())
    }

    pub fn member_witness(&self, e: &UniPoly) -> Result<Option<MembershipWitness>> {
        check_ring(self.ring, e)?;
        if self.ambient == Ambient::Base && !e.is_constant() {
            return Err(Error::Usage(format!("{e} is not an element of {}", self.ring)));
        }
        Ok(match &self.shape {
            Shape::Zero => e.is_zero().then_some(MembershipWitness::Zero),
            Shape::ExtendedBase(a) => e.exact_div_scalar(a).map(|q| MembershipWitness::Combination(vec![q])),
            Shape::ContractionZero(f) => e.exact_div(f).map(|q| MembershipWitness::Combination(vec![q])),
            Shape::MaximalPair(a, f) => {
                let (q, r) = e.divrem_monic(f)?;
                r.exact_div_scalar(a).map(|s| MembershipWitness::Combination(vec![s, q]))
            }
            Shape::KernelOfEval(h) => h.apply(e)?.is_zero().then_some(MembershipWitness::EvalZero),
            Shape::QuadPrime(q) => e.coeffs().iter().all(|c| q.contains(c)).then_some(MembershipWitness::Lattice),
        })
    }

    /// Membership in `R[X][Z]`, coefficientwise in `Z`.
    pub fn member_z(&self, e: &ZPoly) -> Result<bool> {
        for c in e.coeffs() {
            if !self.member(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The generators the outward radical check must cover; `None` for a
    /// kernel, which has no stored finite generating set.
    pub fn canonical_generators(&self) -> Option<Vec<UniPoly>> {
        match &self.shape {
            Shape::Zero => Some(Vec::new()),
            Shape::ExtendedBase(a) => Some(vec![UniPoly::constant(a.clone())]),
            Shape::ContractionZero(f) => Some(vec![f.clone()]),
            Shape::MaximalPair(a, f) => Some(vec![UniPoly::constant(a.clone()), f.clone()]),
            Shape::KernelOfEval(_) => None,
            Shape::QuadPrime(q) => Some(q.basis().into_iter().map(UniPoly::constant).collect()),
        }
    }

    /// `P ∩ R`.
    pub fn contract(&self) -> PrimeIdeal {
        let base = |shape| PrimeIdeal { ring: self.ring, ambient: Ambient::Base, shape };
        match &self.shape {
            Shape::Zero | Shape::ContractionZero(_) | Shape::KernelOfEval(_) => base(Shape::Zero),
            Shape::ExtendedBase(a) | Shape::MaximalPair(a, _) => base(Shape::ExtendedBase(a.clone())),
            Shape::QuadPrime(q) => base(Shape::QuadPrime(q.clone())),
        }
    }

    pub fn readback(&self) -> IdealPresentation {
        match &self.shape {
            Shape::KernelOfEval(h) => IdealPresentation::Kernel(h.clone()),
            Shape::QuadPrime(q) => IdealPresentation::Lattice {
                ring: self.ring,
                ambient: self.ambient,
                gens: q.basis().to_vec(),
            },
            _ => IdealPresentation::Generators {
                ring: self.ring,
                ambient: self.ambient,
                gens: self.canonical_generators().unwrap_or_default(),
            },
        }
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            Shape::Zero => write!(f, "ideal(0)"),
            _ => write!(f, "{}", self.readback()),
        }
    }
}

fn degree_limit(f: &UniPoly, cfg: &Config) -> Result<()> {
    match f.degree() {
        Some(d) if d > cfg.max_degree => {
            Err(Error::Usage(format!("degree {d} of {f} exceeds the limit {}", cfg.max_degree)))
        }
        _ => Ok(()),
    }
}

/// Side conditions for a single nonconstant generator.
fn classify_single(g: &UniPoly, cfg: &Config) -> Result<Shape> {
    degree_limit(g, cfg)?;
    if g.is_constant() {
        return Err(Error::UnsupportedIdealShape(format!("{g} is constant")));
    }
    if g.degree() == Some(1) && g.leading().is_some_and(|c| c.is_unit()) {
        return Ok(Shape::ContractionZero(g.canonical()));
    }
    let ring = g.ring();
    if !ring.is_bezout() {
        return Err(Error::UnsupportedIdealShape(format!(
            "principal primes of {ring}[X] beyond monic linear generators"
        )));
    }
    let pp = g.primitive_part()?;
    if !pp.content.is_unit() {
        return Err(Error::NotPrime {
            reason: format!("content {} of {g} is a proper factor", pp.content),
            witness: Some(format!("{}*({})", pp.content, pp.primitive)),
        });
    }
    match irreducible::over_fraction_field(g, cfg.factor_budget) {
        Verdict::Irreducible { .. } => Ok(Shape::ContractionZero(g.canonical())),
        Verdict::Reducible { factor, cofactor } => Err(Error::NotPrime {
            reason: format!("{g} is reducible"),
            witness: Some(format!("({factor})*({cofactor})")),
        }),
        Verdict::Undecided { reason } => Err(Error::IrreducibilityUndecided(format!("{g}: {reason}"))),
    }
}

/// `(a, g)`: `a` prime, `g` reduced to a monic irreducible mod `a`.
fn classify_pair(a: &RingElement, g: &UniPoly) -> Result<Shape> {
    let a = a.canonical();
    let ff: FiniteField = irreducible::residue_field(&a)?;
    let red = irreducible::reduce_poly(g, &ff);
    match field::degree(&red) {
        None => return Ok(Shape::ExtendedBase(a)),
        Some(0) => {
            return Err(Error::NotPrime {
                reason: format!("{g} is a unit modulo {a}, so the ideal is the whole ring"),
                witness: None,
            })
        }
        Some(_) => {}
    }
    let red = field::monic(&ff, &red);
    let ring = a.ring();
    match field::irreducible_or_factor(&ff, &red) {
        Ok(()) => Ok(Shape::MaximalPair(a, irreducible::lift_poly(ring, &red))),
        Err(h) => {
            let witness = h.map(|h| {
                let other = field::divrem(&ff, &red, &h).0;
                format!(
                    "({})*({}) mod {a}",
                    irreducible::lift_poly(ring, &h),
                    irreducible::lift_poly(ring, &other)
                )
            });
            Err(Error::NotPrime { reason: format!("{g} is reducible modulo {a}"), witness })
        }
    }
}

/// Recognize a supported prime normal form, checking its side conditions.
pub fn classify(pres: &IdealPresentation, cfg: &Config) -> Result<PrimeIdeal> {
    match pres {
        IdealPresentation::Kernel(h) => Ok(PrimeIdeal::kernel(h.clone())),
        IdealPresentation::Lattice { ring, ambient, gens } => {
            let gens: Vec<_> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
            if gens.is_empty() {
                return Ok(PrimeIdeal::zero(*ring, *ambient));
            }
            PrimeIdeal::quad_prime(QuadIdeal::from_generators(*ring, &gens)?, *ambient)
        }
        IdealPresentation::Generators { ring, ambient, gens } => {
            let ring = *ring;
            let ambient = *ambient;
            for g in gens {
                check_ring(ring, g)?;
            }
            let gens: Vec<&UniPoly> = gens.iter().filter(|g| !g.is_zero()).collect();
            if gens.is_empty() {
                return Ok(PrimeIdeal::zero(ring, ambient));
            }
            let (consts, polys): (Vec<&UniPoly>, Vec<&UniPoly>) = gens.into_iter().partition(|g| g.is_constant());
            if ambient == Ambient::Base && !polys.is_empty() {
                return Err(Error::Usage(format!("{} is not an element of {ring}", polys[0])));
            }
            if let RingKind::QuadraticOrder(_) = ring.kind() {
                if !polys.is_empty() {
                    return Err(Error::UnsupportedIdealShape(format!(
                        "nonconstant generators over {ring}"
                    )));
                }
                let c: Vec<RingElement> = consts.iter().map(|g| g.coeff(0)).collect();
                return PrimeIdeal::quad_prime(QuadIdeal::from_generators(ring, &c)?, ambient);
            }
            let a = if consts.is_empty() {
                None
            } else {
                if !ring.is_bezout() {
                    return Err(Error::UnsupportedIdealShape(format!("constant generators over {ring}")));
                }
                let mut a = RingElement::zero(ring);
                for c in &consts {
                    a = RingElement::gcd_bezout(&a, &c.coeff(0))?.g;
                }
                Some(a)
            };
            let shape = match (a, polys.as_slice()) {
                (Some(a), []) => {
                    if a.is_unit() {
                        return Err(Error::NotPrime { reason: "the ideal is the whole ring".into(), witness: None });
                    }
                    a.prime_check()?;
                    Shape::ExtendedBase(a)
                }
                (None, [g]) => classify_single(g, cfg)?,
                (Some(a), [g]) => {
                    degree_limit(g, cfg)?;
                    a.prime_check()?;
                    classify_pair(&a, g)?
                }
                _ => {
                    return Err(Error::UnsupportedIdealShape(format!(
                        "{} nonconstant generators",
                        polys.len()
                    )))
                }
            };
            Ok(PrimeIdeal { ring, ambient, shape })
        }
    }
}

/// An ideal of `R[X]` given by generators, reduced to a form with
/// decidable membership when possible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedIdeal {
    ring: RingSpec,
    gens: Vec<UniPoly>,
    form: Form,
    /// `basis[i] = sum combo[i][j] * gens[j]` for the basis of `form`.
    combo: Vec<Vec<UniPoly>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Form {
    Zero,
    Principal(UniPoly),
    /// `(c, f)` with `c` a nonzero nonunit constant and `f` monic.
    ConstantAndMonic(RingElement, UniPoly),
    /// Coefficientwise membership in a lattice ideal of the quadratic order.
    Lattice(QuadIdeal),
    General,
}

/// How a member is expressed through the original generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenWitness {
    /// `e = sum w[j] * gens[j]`.
    Combination(Vec<UniPoly>),
    /// Every coefficient lies in the lattice spanned by the constants.
    Lattice,
}

type Vector = Vec<UniPoly>;

fn unit_vector(ring: RingSpec, n: usize, j: usize, c: UniPoly) -> Vector {
    let mut v = vec![UniPoly::zero(ring); n];
    v[j] = c;
    v
}

/// `a*x + b*y`.
fn combine(a: &UniPoly, x: &[UniPoly], b: &UniPoly, y: &[UniPoly]) -> Vector {
    x.iter().zip(y).map(|(xi, yi)| &(a * xi) + &(b * yi)).collect()
}

fn scale_vector(c: &UniPoly, x: &[UniPoly]) -> Vector {
    x.iter().map(|xi| c * xi).collect()
}

/// Monic gcd over a field with its cofactors.
fn tracked_field_gcd(ring: RingSpec, gens: &[UniPoly]) -> (UniPoly, Vector) {
    let n = gens.len();
    let mut g = UniPoly::zero(ring);
    let mut cg = vec![UniPoly::zero(ring); n];
    for (j, h) in gens.iter().enumerate() {
        if h.is_zero() {
            continue;
        }
        let (mut x, mut cx) = (g, cg);
        let (mut y, mut cy) = (h.clone(), unit_vector(ring, n, j, UniPoly::one(ring)));
        while !y.is_zero() {
            let (q, r) = x.divrem_monic(&y).expect("field coefficients");
            let cr = combine(&UniPoly::one(ring), &cx, &-&q, &cy);
            x = std::mem::replace(&mut y, r);
            cx = std::mem::replace(&mut cy, cr);
        }
        g = x;
        cg = cx;
    }
    let (canon, unit) = g.canonical_associate();
    let inv = UniPoly::constant(unit.inverse().expect("unit"));
    (canon, scale_vector(&inv, &cg))
}

/// Canonical gcd of the constant generators with its cofactors.
fn tracked_constant_gcd(ring: RingSpec, gens: &[UniPoly]) -> (RingElement, Vector) {
    let n = gens.len();
    let mut c = RingElement::zero(ring);
    let mut cc = vec![UniPoly::zero(ring); n];
    for (j, k) in gens.iter().enumerate() {
        if k.is_zero() || !k.is_constant() {
            continue;
        }
        let bz = RingElement::gcd_bezout(&c, &k.coeff(0)).expect("bezout");
        cc = combine(
            &UniPoly::constant(bz.s),
            &cc,
            &UniPoly::constant(bz.t),
            &unit_vector(ring, n, j, UniPoly::one(ring)),
        );
        c = bz.g;
    }
    let (canon, unit) = c.canonical_associate();
    let inv = UniPoly::constant(unit.inverse().expect("unit"));
    (canon, scale_vector(&inv, &cc))
}

impl GeneratedIdeal {
    pub fn new(ring: RingSpec, gens: Vec<UniPoly>) -> Result<Self> {
        for g in &gens {
            check_ring(ring, g)?;
        }
        let n = gens.len();
        let nz: Vec<usize> = (0..n).filter(|&j| !gens[j].is_zero()).collect();
        let one = UniPoly::one(ring);
        let (form, combo) = if nz.is_empty() {
            (Form::Zero, Vec::new())
        } else if let RingKind::QuadraticOrder(_) = ring.kind() {
            if nz.iter().all(|&j| gens[j].is_constant()) {
                let c: Vec<_> = nz.iter().map(|&j| gens[j].coeff(0)).collect();
                (Form::Lattice(QuadIdeal::from_generators(ring, &c)?), Vec::new())
            } else if nz.len() == 1 {
                (Form::Principal(gens[nz[0]].clone()), vec![unit_vector(ring, n, nz[0], one)])
            } else {
                (Form::General, Vec::new())
            }
        } else if ring.is_field() {
            let (g, cg) = tracked_field_gcd(ring, &gens);
            (Form::Principal(g), vec![cg])
        } else if nz.len() == 1 {
            let (g, unit) = gens[nz[0]].canonical_associate();
            let inv = UniPoly::constant(unit.inverse().expect("unit"));
            (Form::Principal(g), vec![unit_vector(ring, n, nz[0], inv)])
        } else if ring.is_bezout() {
            Self::bezout_form(ring, &gens, &nz)
        } else {
            (Form::General, Vec::new())
        };
        Ok(GeneratedIdeal { ring, gens, form, combo })
    }

    fn bezout_form(ring: RingSpec, gens: &[UniPoly], nz: &[usize]) -> (Form, Vec<Vector>) {
        let n = gens.len();
        let polys: Vec<usize> = nz.iter().copied().filter(|&j| !gens[j].is_constant()).collect();
        let (c, cc) = tracked_constant_gcd(ring, gens);
        let general = (Form::General, Vec::new());
        match polys.as_slice() {
            [] => (Form::Principal(UniPoly::constant(c)), vec![cc]),
            _ if c.is_unit() => {
                let inv = UniPoly::constant(c.inverse().expect("unit"));
                (Form::Principal(UniPoly::one(ring)), vec![scale_vector(&inv, &cc)])
            }
            [j] if !c.is_zero() => {
                let f = &gens[*j];
                if let Some(inv) = f.leading().and_then(|l| l.inverse()) {
                    let fv = unit_vector(ring, n, *j, UniPoly::constant(inv.clone()));
                    return (Form::ConstantAndMonic(c, f.scale(&inv)), vec![cc, fv]);
                }
                // A prime constant makes the leading coefficient invertible
                // after reduction, as in a classified pair.
                if c.prime_check().is_err() {
                    return general;
                }
                match classify_pair(&c, f) {
                    Ok(Shape::MaximalPair(a, g)) => {
                        // g = lambda*f + c*h, lambda inverting lc(f mod c).
                        let reduced: Vec<RingElement> =
                            f.coeffs().iter().map(|x| x.rem_euclid(&a).expect("euclidean")).collect();
                        let lead = reduced.iter().rev().find(|x| !x.is_zero()).expect("nonzero reduction");
                        let lambda = RingElement::gcd_bezout(lead, &a).expect("bezout").s;
                        let diff = &g - &f.scale(&lambda);
                        let Some(h) = diff.exact_div_scalar(&a) else { return general };
                        let fv = combine(
                            &UniPoly::constant(lambda),
                            &unit_vector(ring, n, *j, UniPoly::one(ring)),
                            &h,
                            &cc,
                        );
                        (Form::ConstantAndMonic(a, g), vec![cc, fv])
                    }
                    Ok(Shape::ExtendedBase(a)) => (Form::Principal(UniPoly::constant(a)), vec![cc]),
                    _ => general,
                }
            }
            _ => general,
        }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn gens(&self) -> &[UniPoly] {
        &self.gens
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    /// Exact membership, or `None` when this presentation has no decision
    /// procedure.
    pub fn member(&self, e: &UniPoly) -> Option<bool> {
        self.member_witness(e).map(|w| w.is_some())
    }

    /// Like `member`, with the expression of `e` through the generators.
    pub fn member_witness(&self, e: &UniPoly) -> Option<Option<GenWitness>> {
        if e.ring() != self.ring {
            return Some(None);
        }
        let zeros = || vec![UniPoly::zero(self.ring); self.gens.len()];
        Some(match &self.form {
            Form::Zero => e.is_zero().then(|| GenWitness::Combination(zeros())),
            Form::Principal(g) => e.exact_div(g).map(|q| GenWitness::Combination(scale_vector(&q, &self.combo[0]))),
            Form::ConstantAndMonic(c, f) => {
                let (q, r) = e.divrem_monic(f).ok()?;
                r.exact_div_scalar(c)
                    .map(|s| GenWitness::Combination(combine(&s, &self.combo[0], &q, &self.combo[1])))
            }
            Form::Lattice(q) => e.coeffs().iter().all(|c| q.contains(c)).then_some(GenWitness::Lattice),
            Form::General => {
                if e.is_zero() {
                    Some(GenWitness::Combination(zeros()))
                } else {
                    let j = self.gens.iter().position(|g| g == e)?;
                    Some(GenWitness::Combination(unit_vector(self.ring, self.gens.len(), j, UniPoly::one(self.ring))))
                }
            }
        })
    }

    /// Recheck a witness against the original generators, without the
    /// normal form.
    pub fn check_witness(&self, e: &UniPoly, w: &GenWitness) -> bool {
        match w {
            GenWitness::Combination(v) => {
                v.len() == self.gens.len()
                    && self
                        .gens
                        .iter()
                        .zip(v)
                        .fold(UniPoly::zero(self.ring), |acc, (g, c)| &acc + &(g * c))
                        == *e
            }
            GenWitness::Lattice => {
                let consts: Option<Vec<RingElement>> = self.gens.iter().map(|g| g.as_constant()).collect();
                match consts.map(|c| QuadIdeal::from_generators(self.ring, &c)) {
                    Some(Ok(q)) => e.coeffs().iter().all(|c| q.contains(c)),
                    _ => false,
                }
            }
        }
    }
    /// `N` such that `e ∈ rad(J)` implies `e^N ∈ J`, where known.
    pub fn radical_bound(&self) -> Option<u32> {
        let ufd = matches!(
            self.ring.kind(),
            RingKind::Integers
                | RingKind::Rationals
                | RingKind::PrimeField(_)
                | RingKind::PolyOverPrimeField(_)
                | RingKind::PolyOverRationals
        );
        if !ufd {
            return None;
        }
        match &self.form {
            Form::Zero => Some(1),
            Form::Principal(g) => {
                let content = g.content().principal_generator()?.clone();
                let size = content.factor_size()? as usize;
                Some(g.degree()?.max(size).max(1) as u32)
            }
            Form::ConstantAndMonic(c, f) => {
                let size = c.factor_size()?.max(1) as usize;
                Some((f.degree()?.max(1) * size) as u32)
            }
            _ => None,
        }
    }
}

impl fmt::Display for GeneratedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "ideal({})", parts.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zz() -> RingSpec {
        RingSpec::integers()
    }

    fn zp(c: &[i64]) -> UniPoly {
        UniPoly::new(zz(), c.iter().map(|&x| RingElement::from_int(zz(), x)).collect()).unwrap()
    }

    fn gens(ring: RingSpec, g: Vec<UniPoly>) -> IdealPresentation {
        IdealPresentation::Generators { ring, ambient: Ambient::Poly, gens: g }
    }

    fn cfg() -> Config {
        Config::default()
    }

    fn kernel_x_to_t(p: u64) -> PrimeIdeal {
        let r = RingSpec::monomial_subring(p).unwrap();
        let s = r.normalization().unwrap().target;
        PrimeIdeal::kernel(EvalHom::new(r, RingElement::t(s).unwrap()).unwrap())
    }

    #[test]
    fn membership_examples() {
        let p = classify(&gens(zz(), vec![zp(&[2]), zp(&[0, 1])]), &cfg()).unwrap();
        assert!(p.member(&zp(&[10])).unwrap());
        let k = kernel_x_to_t(3);
        let r = k.ring();
        let t3 = RingElement::from_mod_coeffs(r, vec![0, 0, 0, 1]).unwrap();
        let f = &UniPoly::monomial(RingElement::one(r), 3) - &UniPoly::constant(t3);
        assert!(k.member(&f).unwrap());
        let q = classify(&gens(zz(), vec![zp(&[3, 2])]), &cfg()).unwrap();
        assert!(!q.member(&zp(&[0, 1])).unwrap());
        assert!(matches!(q.member(&UniPoly::x(RingSpec::rationals())), Err(Error::MixedRings(..))));
    }

    #[test]
    fn classification_examples() {
        let p = classify(&gens(zz(), vec![zp(&[5]), zp(&[2, 0, 1])]), &cfg()).unwrap();
        assert_eq!(p.shape_name(), "MaximalPair");
        assert_eq!(p.height(), 2);
        assert_eq!(p.to_string(), "ideal(5; X^2 + 2)");
        match classify(&gens(zz(), vec![zp(&[6, 4])]), &cfg()) {
            Err(Error::NotPrime { witness, .. }) => assert_eq!(witness.as_deref(), Some("2*(2*X + 3)")),
            other => panic!("{other:?}"),
        }
        let z = classify(&gens(zz(), vec![zp(&[])]), &cfg()).unwrap();
        assert_eq!((z.shape_name(), z.height()), ("Zero", 0));
        // X^2 + 1 splits modulo 5.
        match classify(&gens(zz(), vec![zp(&[5]), zp(&[1, 0, 1])]), &cfg()) {
            Err(Error::NotPrime { witness: Some(w), .. }) => assert!(w.ends_with("mod 5")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            classify(&gens(zz(), vec![zp(&[0, 1]), zp(&[1, 1])]), &cfg()),
            Err(Error::UnsupportedIdealShape(_))
        ));
        // Reduction mod a normalizes the pair.
        let p = classify(&gens(zz(), vec![zp(&[5]), zp(&[12, 0, 6])]), &cfg()).unwrap();
        assert_eq!(p.to_string(), "ideal(5; X^2 + 2)");
    }

    #[test]
    fn contraction_examples() {
        let p = classify(&gens(zz(), vec![zp(&[5]), zp(&[2, 0, 1])]), &cfg()).unwrap();
        assert_eq!(p.contract().to_string(), "ideal(5)");
        let q = classify(&gens(zz(), vec![zp(&[3, 2])]), &cfg()).unwrap();
        assert_eq!(*q.contract().shape(), Shape::Zero);
        assert_eq!(*kernel_x_to_t(2).contract().shape(), Shape::Zero);
    }

    #[test]
    fn readback_is_idempotent() {
        let f2t = RingSpec::poly_over_prime_field(2).unwrap();
        let t = UniPoly::constant(RingElement::t(f2t).unwrap());
        let x = UniPoly::x(f2t);
        let q5 = RingSpec::quadratic_order(-5).unwrap();
        let cases = vec![
            gens(zz(), vec![zp(&[5]), zp(&[2, 0, 1])]),
            gens(zz(), vec![zp(&[-7])]),
            gens(zz(), vec![zp(&[-3, -2])]),
            gens(f2t, vec![t.clone()]),
            gens(f2t, vec![&(&x * &x) + &t]),
            IdealPresentation::Lattice {
                ring: q5,
                ambient: Ambient::Poly,
                gens: vec![RingElement::quad(q5, 3, 0).unwrap(), RingElement::quad(q5, 1, 1).unwrap()],
            },
            kernel_x_to_t(3).readback(),
        ];
        for c in cases {
            let p = classify(&c, &cfg()).unwrap();
            assert_eq!(classify(&p.readback(), &cfg()).unwrap(), p, "{c}");
        }
    }

    #[test]
    fn generated_ideals() {
        let j = GeneratedIdeal::new(zz(), vec![zp(&[0, 7, 0]), zp(&[14, 7]), zp(&[21])]).unwrap();
        assert_eq!(*j.form(), Form::General);
        let p = GeneratedIdeal::new(zz(), vec![zp(&[12]), zp(&[18])]).unwrap();
        assert_eq!(*p.form(), Form::Principal(zp(&[6])));
        assert_eq!(p.radical_bound(), Some(3));
        let m = GeneratedIdeal::new(zz(), vec![zp(&[25]), zp(&[2, 0, 1])]).unwrap();
        assert_eq!(m.member(&zp(&[10, 5])), Some(false));
        assert_eq!(m.member(&(&zp(&[5, 1]) * &zp(&[2, 0, 1]))), Some(true));
        assert_eq!(m.radical_bound(), Some(10));
        let x = GeneratedIdeal::new(zz(), vec![zp(&[0, 0, 3])]).unwrap();
        assert_eq!(x.radical_bound(), Some(2));
    }

    fn arb_zz(deg: usize) -> impl Strategy<Value = UniPoly> {
        prop::collection::vec(-6i64..6, 0..=deg + 1).prop_map(|c| zp(&c))
    }

    fn sample_primes() -> Vec<PrimeIdeal> {
        let c = cfg();
        vec![
            classify(&gens(zz(), vec![zp(&[5]), zp(&[2, 0, 1])]), &c).unwrap(),
            classify(&gens(zz(), vec![zp(&[3])]), &c).unwrap(),
            classify(&gens(zz(), vec![zp(&[3, 2])]), &c).unwrap(),
            classify(&gens(zz(), vec![zp(&[2, 0, 1])]), &c).unwrap(),
            PrimeIdeal::kernel(EvalHom::new(zz(), RingElement::from_int(zz(), 2)).unwrap()),
            PrimeIdeal::zero(zz(), Ambient::Poly),
        ]
    }

    proptest! {
        #[test]
        fn ideal_axioms(a in arb_zz(3), b in arb_zz(3), r in arb_zz(2), which in 0usize..6) {
            let p = &sample_primes()[which];
            // Build members by multiplying into the ideal.
            let gens = p.canonical_generators().unwrap_or_else(|| vec![zp(&[-2, 1])]);
            let x = gens.iter().fold(UniPoly::zero(zz()), |acc, g| &acc + &(&a * g));
            let y = gens.iter().fold(UniPoly::zero(zz()), |acc, g| &acc + &(&b * g));
            prop_assert!(p.member(&x).unwrap());
            prop_assert!(p.member(&(&x + &y)).unwrap());
            prop_assert!(p.member(&(&r * &x)).unwrap());
        }

        #[test]
        fn contraction_is_contained(c in -30i64..30, which in 0usize..6) {
            let p = &sample_primes()[which];
            let base = p.contract();
            let e = zp(&[c]);
            if base.member(&e).unwrap() {
                prop_assert!(p.member(&e).unwrap());
            }
        }

        #[test]
        fn primes_are_radical(e in arb_zz(2), n in 1u64..=5, which in 0usize..6) {
            let p = &sample_primes()[which];
            if p.member(&e.pow(n)).unwrap() {
                prop_assert!(p.member(&e).unwrap());
            }
        }
    }
}
