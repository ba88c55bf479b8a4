//! Command-line front end.

pub mod document;
pub mod expr;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::ideals::{classify, Ambient, GeneratedIdeal, IdealPresentation, PrimeIdeal};
use crate::poly::UniPoly;
use crate::rings::{RingElement, RingSpec};
use crate::stci::{self, Certificate};
use crate::verify::{self, Equality, RadicalMembership, Side};
use clap::{Args, Parser, Subcommand, ValueEnum};
use document::{to_json, CertificateDoc, ClassifyDoc, DescentDoc, EqualityDoc, ErrorDoc, ObstructionDoc, OracleDoc, WitnessDoc};
use std::fmt::Write as _;
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Certify,
    Verify,
    Classify,
    Witness,
    Obstruct,
    Descend,
    Extend,
    Oracle,
}

impl Verb {
    pub fn name(self) -> &'static str {
        match self {
            Verb::Certify => "certify",
            Verb::Verify => "verify",
            Verb::Classify => "classify",
            Verb::Witness => "witness",
            Verb::Obstruct => "obstruct",
            Verb::Descend => "descend",
            Verb::Extend => "extend",
            Verb::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum AmbientArg {
    Base,
    #[default]
    Poly,
    Extended,
}

impl From<AmbientArg> for Ambient {
    fn from(a: AmbientArg) -> Self {
        match a {
            AmbientArg::Base => Ambient::Base,
            AmbientArg::Poly => Ambient::Poly,
            AmbientArg::Extended => Ambient::Extended,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "setci", version, about = "Certificates that primes are set-theoretic complete intersections")]
struct Cli {
    #[command(subcommand)]
    verb: VerbArgs,
}

#[derive(Subcommand, Debug)]
enum VerbArgs {
    /// Classify a prime, build its certificate and verify it.
    Certify(Flags),
    /// Check a certificate file, a claimed generator list, or two ideals.
    Verify(Flags),
    /// Report the normal form and height of a prime.
    Classify(Flags),
    /// Search for n with member^n in the ideal.
    Witness(Flags),
    /// Show why ker(X -> a) has no principal radical generator.
    Obstruct(Flags),
    /// Recover a with M = rad(a) from generators whose radical is MR[X].
    Descend(Flags),
    /// Certify and reinterpret in R[X][Z].
    Extend(Flags),
    /// Compare two bounded radicals by exhaustive enumeration.
    Oracle(Flags),
}

#[derive(Args, Debug, Default)]
struct Flags {
    #[arg(long)]
    ring: Option<String>,
    #[arg(long)]
    ideal: Option<String>,
    /// Generators separated by `;`.
    #[arg(long)]
    gens: Option<String>,
    #[arg(long)]
    hints: Option<String>,
    /// Certificate JSON file.
    #[arg(long)]
    cert: Option<PathBuf>,
    #[arg(long)]
    member: Option<String>,
    #[arg(long)]
    adjoin: Option<String>,
    #[arg(long)]
    maximal: Option<String>,
    #[arg(long)]
    lhs: Option<String>,
    #[arg(long)]
    rhs: Option<String>,
    /// Degree cap of the oracle enumeration.
    #[arg(long)]
    cap: Option<u32>,
    #[arg(long, value_enum, default_value_t)]
    ambient: AmbientArg,
    #[arg(long)]
    bound: Option<u32>,
    #[arg(long = "n-check")]
    n_check: Option<u32>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    /// certify, classify, extend.
    Ideal(IdealPresentation),
    Claim { ideal: IdealPresentation, gens: Vec<UniPoly>, hints: Option<Vec<u32>> },
    CertificateFile(PathBuf),
    /// verify and oracle.
    Pair { lhs: IdealPresentation, rhs: IdealPresentation },
    Witness { ideal: IdealPresentation, member: UniPoly },
    Obstruct { adjoin: RingElement },
    Descend { gens: Vec<UniPoly>, maximal: IdealPresentation },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub ambient: Option<Ambient>,
    pub bound: Option<u32>,
    pub n_check: Option<u32>,
    pub format: Format,
    pub seed: Option<u64>,
    pub cap: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub verb: Verb,
    pub ring: Option<RingSpec>,
    pub payload: Payload,
    pub options: Options,
}

/// What a run produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn unused(verb: Verb, flags: &[(&str, bool)]) -> Result<()> {
    match flags.iter().find(|(_, present)| *present) {
        Some((name, _)) => Err(Error::Usage(format!("--{name} is not used by {}", verb.name()))),
        None => Ok(()),
    }
}

fn required<'a>(verb: Verb, name: &str, v: &'a Option<String>) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::Usage(format!("{} needs --{name}", verb.name())))
}

impl Command {
    /// Parse an argument vector without the program name.
    pub fn parse<S: AsRef<str>>(args: &[S]) -> Result<Command> {
        let argv = std::iter::once("setci").chain(args.iter().map(|s| s.as_ref()));
        let cli = Cli::try_parse_from(argv).map_err(|e| match e.kind() {
            clap::error::ErrorKind::InvalidSubcommand => {
                Error::UnknownVerb(args.first().map(|s| s.as_ref().to_string()).unwrap_or_default())
            }
            _ => Error::Usage(e.render().to_string().trim_end().to_string()),
        })?;
        let (verb, f) = match cli.verb {
            VerbArgs::Certify(f) => (Verb::Certify, f),
            VerbArgs::Verify(f) => (Verb::Verify, f),
            VerbArgs::Classify(f) => (Verb::Classify, f),
            VerbArgs::Witness(f) => (Verb::Witness, f),
            VerbArgs::Obstruct(f) => (Verb::Obstruct, f),
            VerbArgs::Descend(f) => (Verb::Descend, f),
            VerbArgs::Extend(f) => (Verb::Extend, f),
            VerbArgs::Oracle(f) => (Verb::Oracle, f),
        };
        Self::resolve(verb, f)
    }

    fn resolve(verb: Verb, f: Flags) -> Result<Command> {
        let ambient: Ambient = f.ambient.into();
        let options = Options {
            ambient: (ambient != Ambient::Poly).then_some(ambient),
            bound: f.bound,
            n_check: f.n_check,
            format: f.format,
            seed: f.seed,
            cap: f.cap,
        };
        if let (Verb::Verify, Some(cert)) = (verb, &f.cert) {
            unused(verb, &[
                ("ring", f.ring.is_some()),
                ("ideal", f.ideal.is_some()),
                ("gens", f.gens.is_some()),
                ("hints", f.hints.is_some()),
                ("lhs", f.lhs.is_some()),
                ("rhs", f.rhs.is_some()),
            ])?;
            unused(verb, &[("member", f.member.is_some()), ("adjoin", f.adjoin.is_some()), ("maximal", f.maximal.is_some()), ("cap", f.cap.is_some())])?;
            return Ok(Command { verb, ring: None, payload: Payload::CertificateFile(cert.clone()), options });
        }
        let ring: RingSpec = required(verb, "ring", &f.ring)?.parse()?;
        let ideal = |s: &str, amb: Ambient| expr::parse_ideal(ring, amb, s);
        let payload = match verb {
            Verb::Certify | Verb::Classify | Verb::Extend => {
                unused(verb, &[
                    ("gens", f.gens.is_some()),
                    ("hints", f.hints.is_some()),
                    ("cert", f.cert.is_some()),
                    ("member", f.member.is_some()),
                    ("adjoin", f.adjoin.is_some()),
                    ("maximal", f.maximal.is_some()),
                    ("lhs", f.lhs.is_some()),
                    ("rhs", f.rhs.is_some()),
                    ("cap", f.cap.is_some()),
                ])?;
                if verb == Verb::Extend && ambient != Ambient::Poly {
                    return Err(Error::Usage("extend starts from the polynomial ambient".into()));
                }
                Payload::Ideal(ideal(required(verb, "ideal", &f.ideal)?, ambient)?)
            }
            Verb::Verify => {
                unused(verb, &[("member", f.member.is_some()), ("adjoin", f.adjoin.is_some()), ("maximal", f.maximal.is_some()), ("cap", f.cap.is_some())])?;
                if f.lhs.is_some() || f.rhs.is_some() {
                    unused(verb, &[("ideal", f.ideal.is_some()), ("gens", f.gens.is_some()), ("hints", f.hints.is_some())])?;
                    Payload::Pair {
                        lhs: ideal(required(verb, "lhs", &f.lhs)?, ambient)?,
                        rhs: ideal(required(verb, "rhs", &f.rhs)?, ambient)?,
                    }
                } else {
                    let gens = expr::parse_poly_list(ring, required(verb, "gens", &f.gens)?)?;
                    let hints = f.hints.as_deref().map(expr::parse_u32_list).transpose()?;
                    Payload::Claim { ideal: ideal(required(verb, "ideal", &f.ideal)?, ambient)?, gens, hints }
                }
            }
            Verb::Witness => {
                unused(verb, &[
                    ("gens", f.gens.is_some()),
                    ("hints", f.hints.is_some()),
                    ("cert", f.cert.is_some()),
                    ("adjoin", f.adjoin.is_some()),
                    ("maximal", f.maximal.is_some()),
                    ("lhs", f.lhs.is_some()),
                    ("rhs", f.rhs.is_some()),
                    ("cap", f.cap.is_some()),
                ])?;
                Payload::Witness {
                    ideal: ideal(required(verb, "ideal", &f.ideal)?, ambient)?,
                    member: expr::parse_poly(ring, required(verb, "member", &f.member)?)?,
                }
            }
            Verb::Obstruct => {
                unused(verb, &[
                    ("ideal", f.ideal.is_some()),
                    ("gens", f.gens.is_some()),
                    ("hints", f.hints.is_some()),
                    ("cert", f.cert.is_some()),
                    ("member", f.member.is_some()),
                    ("maximal", f.maximal.is_some()),
                    ("lhs", f.lhs.is_some()),
                    ("rhs", f.rhs.is_some()),
                    ("cap", f.cap.is_some()),
                ])?;
                Payload::Obstruct { adjoin: expr::parse_element(ring, required(verb, "adjoin", &f.adjoin)?)? }
            }
            Verb::Descend => {
                unused(verb, &[
                    ("ideal", f.ideal.is_some()),
                    ("hints", f.hints.is_some()),
                    ("cert", f.cert.is_some()),
                    ("member", f.member.is_some()),
                    ("adjoin", f.adjoin.is_some()),
                    ("lhs", f.lhs.is_some()),
                    ("rhs", f.rhs.is_some()),
                    ("cap", f.cap.is_some()),
                ])?;
                Payload::Descend {
                    gens: expr::parse_poly_list(ring, required(verb, "gens", &f.gens)?)?,
                    maximal: ideal(required(verb, "maximal", &f.maximal)?, Ambient::Base)?,
                }
            }
            Verb::Oracle => {
                unused(verb, &[
                    ("ideal", f.ideal.is_some()),
                    ("gens", f.gens.is_some()),
                    ("hints", f.hints.is_some()),
                    ("cert", f.cert.is_some()),
                    ("member", f.member.is_some()),
                    ("adjoin", f.adjoin.is_some()),
                    ("maximal", f.maximal.is_some()),
                ])?;
                Payload::Pair {
                    lhs: ideal(required(verb, "lhs", &f.lhs)?, ambient)?,
                    rhs: ideal(required(verb, "rhs", &f.rhs)?, ambient)?,
                }
            }
        };
        Ok(Command { verb, ring: Some(ring), payload, options })
    }

    /// An argument vector that parses back to an equal command.
    pub fn to_args(&self) -> Vec<String> {
        let mut out = vec![self.verb.name().to_string()];
        let mut flag = |name: &str, value: String| {
            out.push(format!("--{name}"));
            out.push(value);
        };
        if let Some(r) = self.ring {
            flag("ring", r.to_string());
        }
        let join = |gens: &[UniPoly]| gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("; ");
        match &self.payload {
            Payload::Ideal(i) => flag("ideal", i.to_string()),
            Payload::Claim { ideal, gens, hints } => {
                flag("ideal", ideal.to_string());
                flag("gens", join(gens));
                if let Some(h) = hints {
                    flag("hints", h.iter().map(|n| n.to_string()).collect::<Vec<_>>().join("; "));
                }
            }
            Payload::CertificateFile(p) => flag("cert", p.display().to_string()),
            Payload::Pair { lhs, rhs } => {
                flag("lhs", lhs.to_string());
                flag("rhs", rhs.to_string());
            }
            Payload::Witness { ideal, member } => {
                flag("ideal", ideal.to_string());
                flag("member", member.to_string());
            }
            Payload::Obstruct { adjoin } => flag("adjoin", adjoin.to_string()),
            Payload::Descend { gens, maximal } => {
                flag("gens", join(gens));
                flag("maximal", maximal.to_string());
            }
        }
        let o = &self.options;
        if let Some(a) = o.ambient {
            flag("ambient", a.name().to_string());
        }
        if let Some(b) = o.bound {
            flag("bound", b.to_string());
        }
        if let Some(n) = o.n_check {
            flag("n-check", n.to_string());
        }
        if o.format == Format::Json {
            flag("format", "json".into());
        }
        if let Some(s) = o.seed {
            flag("seed", s.to_string());
        }
        if let Some(c) = o.cap {
            flag("cap", c.to_string());
        }
        out
    }

    pub fn config(&self) -> Config {
        let mut cfg = Config::from_env();
        if let Some(b) = self.options.bound {
            cfg.bound = b;
        }
        if let Some(n) = self.options.n_check {
            cfg.n_check = n;
        }
        if let Some(s) = self.options.seed {
            cfg.seed = s;
        }
        cfg
    }
}

fn classify_in(pres: &IdealPresentation, ambient: Ambient, cfg: &Config) -> Result<PrimeIdeal> {
    let mut p = classify(pres, cfg)?;
    while p.ambient() < ambient {
        p = p.extend()?;
    }
    Ok(p)
}

/// Holds either side of a comparison so it can be borrowed as a `Side`.
enum Owned {
    Prime(PrimeIdeal),
    Generated(GeneratedIdeal),
}

impl Owned {
    fn from(pres: &IdealPresentation) -> Result<Owned> {
        Ok(match pres {
            IdealPresentation::Kernel(h) => Owned::Prime(PrimeIdeal::kernel(h.clone())),
            IdealPresentation::Generators { ring, gens, .. } => Owned::Generated(GeneratedIdeal::new(*ring, gens.clone())?),
            IdealPresentation::Lattice { ring, gens, .. } => {
                Owned::Generated(GeneratedIdeal::new(*ring, gens.iter().cloned().map(UniPoly::constant).collect())?)
            }
        })
    }

    fn side(&self) -> Side<'_> {
        match self {
            Owned::Prime(p) => Side::Prime(p),
            Owned::Generated(j) => Side::Generated(j),
        }
    }
}

fn certificate_text(doc: &CertificateDoc) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "ring        {}", doc.ring);
    let _ = writeln!(s, "target      {}  [{}, height {}, ambient {}]", doc.target, doc.shape, doc.height, doc.ambient);
    if doc.generators.is_empty() {
        let _ = writeln!(s, "generators  (none)");
    }
    for (g, h) in doc.generators.iter().zip(&doc.exponent_hints) {
        let _ = writeln!(s, "generator   {g}  [exponent hint {h}]");
    }
    if !doc.trace.is_empty() {
        let _ = writeln!(s, "trace");
        for (i, t) in doc.trace.iter().enumerate() {
            let _ = writeln!(s, "  {}. {} ({}): {}", i + 1, t.step, t.reference, t.detail);
        }
    }
    if let Some(v) = &doc.verification {
        let _ = writeln!(
            s,
            "{}    bound {}, seed {}; inward {}, outward {}, spot checks {}",
            v.status,
            v.bound_used,
            v.seed,
            v.inward.len(),
            v.outward.len(),
            v.spot_checks.len() + v.extended_checks.len()
        );
        for c in &v.outward {
            let _ = writeln!(s, "  ({})^{} in the certificate ideal", c.element, c.exponent);
        }
        if let Some(t) = &v.test_set {
            let _ = writeln!(s, "  test set {}: {}", t.elements.join(", "), t.justification);
        }
    }
    s
}

struct Rendered {
    code: i32,
    text: String,
    json: String,
}

fn ok(text: String, json: String) -> Result<Rendered> {
    Ok(Rendered { code: 0, text, json })
}

fn certify_and_verify(cert: &Certificate, cfg: &Config) -> Result<Rendered> {
    let proof = verify::rad_equal(cert, cfg)?;
    proof.replay(cert)?;
    let doc = document::certificate_doc(cert, Some(&proof), cfg.seed);
    ok(certificate_text(&doc), to_json(&doc))
}

fn equality(ring: RingSpec, lhs: &IdealPresentation, rhs: &IdealPresentation, cfg: &Config) -> Result<Rendered> {
    let (l, r) = (Owned::from(lhs)?, Owned::from(rhs)?);
    let doc = EqualityDoc::new(ring, lhs, rhs);
    let (code, doc) = match verify::rad_equal_sides(&l.side(), &r.side(), cfg) {
        Equality::Equal(p) => (0, doc.with_proof(&p)),
        Equality::NotEqual(why) => (2, EqualityDoc { result: "not-equal".into(), reason: Some(why), ..doc }),
        Equality::NotProven(why) => (3, EqualityDoc { result: "not-proven".into(), reason: Some(why), ..doc }),
    };
    let mut text = format!("rad({}) vs rad({}): {}\n", doc.lhs, doc.rhs, doc.result);
    if let Some(r) = &doc.reason {
        let _ = writeln!(text, "  {r}");
    }
    for c in doc.forward.iter().chain(&doc.backward) {
        let _ = writeln!(text, "  ({})^{} lies in the other side", c.element, c.exponent);
    }
    Ok(Rendered { code, text, json: to_json(&doc) })
}

fn execute(cmd: &Command) -> Result<Rendered> {
    let cfg = cmd.config();
    let ambient = cmd.options.ambient.unwrap_or(Ambient::Poly);
    let ring = cmd.ring;
    match (&cmd.verb, &cmd.payload) {
        (Verb::Certify, Payload::Ideal(pres)) => {
            let p = classify_in(pres, ambient, &cfg)?;
            certify_and_verify(&stci::certify(&p, &cfg)?, &cfg)
        }
        (Verb::Extend, Payload::Ideal(pres)) => {
            let p = classify_in(pres, Ambient::Poly, &cfg)?;
            let base = stci::certify(&p, &cfg)?;
            certify_and_verify(&stci::extend_certificate(&base)?, &cfg)
        }
        (Verb::Classify, Payload::Ideal(pres)) => {
            let p = classify_in(pres, ambient, &cfg)?;
            let doc = ClassifyDoc {
                ring: p.ring().to_string(),
                ideal: pres.to_string(),
                ambient: p.ambient().name().into(),
                shape: p.shape_name().into(),
                height: p.height(),
                normal_form: p.to_string(),
                contraction: p.contract().to_string(),
            };
            let text = format!(
                "{} is prime in {}: {} of height {}\n  normal form {}\n  contraction {}\n",
                doc.ideal,
                p.ambient().describe(p.ring()),
                doc.shape,
                doc.height,
                doc.normal_form,
                doc.contraction
            );
            ok(text, to_json(&doc))
        }
        (Verb::Verify, Payload::CertificateFile(path)) => {
            let raw = std::fs::read_to_string(path)
                .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
            let doc = CertificateDoc::parse(&raw)?;
            certify_and_verify(&doc.to_certificate(&cfg)?, &cfg)
        }
        (Verb::Verify, Payload::Claim { ideal, gens, hints }) => {
            let target = classify_in(ideal, ambient, &cfg)?;
            let cert = Certificate {
                target,
                generators: gens.clone(),
                exponent_hints: hints.clone().unwrap_or_else(|| vec![1; gens.len()]),
                trace: Vec::new(),
            };
            certify_and_verify(&cert, &cfg)
        }
        (Verb::Verify, Payload::Pair { lhs, rhs }) => equality(ring.expect("ring"), lhs, rhs, &cfg),
        (Verb::Witness, Payload::Witness { ideal, member }) => {
            let j = Owned::from(ideal)?;
            let r = verify::radical_member(member, &j.side(), cfg.bound, &cfg);
            let doc = WitnessDoc::new(ring.expect("ring"), ideal.to_string(), member.to_string(), &r, cfg.bound);
            let code = match r {
                RadicalMembership::Found { .. } => 0,
                RadicalMembership::Refuted { .. } => 2,
                RadicalMembership::NotProven { .. } => 3,
            };
            let text = match (&doc.exponent, &doc.reason) {
                (Some(n), _) => format!("({})^{n} lies in {}\n  witness [{}]\n", doc.element, doc.ideal, doc.witness.join(", ")),
                (None, Some(why)) => format!("{} in rad({}): {}\n  {why}\n", doc.element, doc.ideal, doc.result),
                _ => String::new(),
            };
            Ok(Rendered { code, text, json: to_json(&doc) })
        }
        (Verb::Obstruct, Payload::Obstruct { adjoin }) => {
            let r = stci::normality_obstruction(ring.expect("ring"), adjoin, cfg.n_check)?;
            let doc = ObstructionDoc::from(&r);
            let mut text = format!("ring {}, a = {}, P = {}\n  {}\n  monic member {}\n", doc.ring, doc.element, doc.kernel, doc.forced_form, doc.monic_member);
            for c in &doc.failing_coefficients {
                let _ = writeln!(text, "  n = {:>2}: X^{} coefficient {} is not in the ring", c.n, c.n - 1, c.coefficient);
            }
            let _ = writeln!(text, "  {}", doc.conclusion);
            ok(text, to_json(&doc))
        }
        (Verb::Descend, Payload::Descend { gens, maximal }) => {
            let m = classify(maximal, &cfg)?;
            let d = stci::descend_certificate(gens, &m, &cfg)?;
            let doc = DescentDoc {
                ring: m.ring().to_string(),
                generators: gens.iter().map(|g| g.to_string()).collect(),
                maximal: m.to_string(),
                contents: d.contents.iter().map(|c| c.to_string()).collect(),
                a: d.a.to_string(),
                trace: d.trace.clone(),
            };
            let text = format!("{} = rad({}) in {}\n  contents {}\n", doc.maximal, doc.a, doc.ring, doc.contents.join(", "));
            ok(text, to_json(&doc))
        }
        (Verb::Oracle, Payload::Pair { lhs, rhs }) => {
            let cap = cmd.options.cap.unwrap_or(3);
            let (l, r) = (Owned::from(lhs)?, Owned::from(rhs)?);
            let report = verify::oracle_small(&l.side(), &r.side(), cap, &cfg)?;
            let doc = OracleDoc::new(ring.expect("ring"), lhs, rhs, cap, &report);
            let mut text = format!(
                "{} elements with degrees ≤ {cap}: {} in rad_{cap}({}), {} in rad_{cap}({})\n",
                doc.enumerated, doc.lhs_count, doc.lhs, doc.rhs_count, doc.rhs
            );
            match &doc.disagreement {
                None => text.push_str("  agree\n"),
                Some(d) => {
                    let _ = writeln!(text, "  disagree at {d}");
                }
            }
            Ok(Rendered { code: if report.agree() { 0 } else { 2 }, text, json: to_json(&doc) })
        }
        _ => Err(Error::Usage(format!("{} does not take this payload", cmd.verb.name()))),
    }
}

/// Run a parsed command.
pub fn run(cmd: &Command) -> Output {
    let json = cmd.options.format == Format::Json;
    match execute(cmd) {
        Ok(r) => Output { code: r.code, stdout: if json { r.json } else { r.text }, stderr: String::new() },
        Err(e) => error_output(&e, json),
    }
}

fn error_output(e: &Error, json: bool) -> Output {
    let doc = ErrorDoc::from(e);
    let mut stderr = format!("error: {e}\n");
    if let Some(w) = &doc.witness {
        let _ = writeln!(stderr, "witness: {w}");
    }
    Output { code: doc.exit_code, stdout: if json { to_json(&doc) } else { String::new() }, stderr }
}

/// Parse and run an argument vector without the program name.
pub fn main_with<S: AsRef<str>>(args: &[S]) -> Output {
    let argv = std::iter::once("setci").chain(args.iter().map(|s| s.as_ref()));
    if let Err(e) = Cli::try_parse_from(argv) {
        use clap::error::ErrorKind;
        if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
            return Output { code: 0, stdout: e.render().to_string(), stderr: String::new() };
        }
    }
    let json = args.windows(2).any(|w| w[0].as_ref() == "--format" && w[1].as_ref() == "json");
    match Command::parse(args) {
        Ok(cmd) => run(&cmd),
        Err(e) => error_output(&e, json),
    }
}
