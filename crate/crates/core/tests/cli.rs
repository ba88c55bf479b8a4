use serde_json::Value;
use setci::cli::{self, expr, Command};
use setci::ideals::Ambient;
use setci::rings::RingSpec;
use std::process;

const RINGS: &[&str] = &[
    "ZZ",
    "QQ",
    "GF(2)",
    "GF(7)",
    "GF(2)[t]",
    "GF(5)[t]",
    "GF(2)[t^2,t^3]",
    "GF(3)[t^2,t^3]",
    "QQ[t^2,t^3]",
    "ZZ[sqrt(-5)]",
    "ZZ[sqrt(-6)]",
];

/// `(ring, polynomial)` pairs, in arbitrary but valid surface syntax.
const POLYS: &[(&str, &str)] = &[
    ("ZZ", "0"),
    ("ZZ", "-7"),
    ("ZZ", "X"),
    ("ZZ", "2*X + 3"),
    ("ZZ", "X^2+2"),
    ("ZZ", "(X + 1)^3"),
    ("ZZ", "6*X^2 + 9*X"),
    ("ZZ", "-(X - 4)*(X + 4)"),
    ("ZZ", "X^4 - 10*X^2 + 1"),
    ("QQ", "X/2 + 1/3"),
    ("QQ", "(3*X - 1)/6"),
    ("GF(2)", "X^2 + X + 1"),
    ("GF(7)", "3*X - 5"),
    ("GF(2)[t]", "X^2 + t^2"),
    ("GF(2)[t]", "(t + 1)*X + t^3 + t"),
    ("GF(5)[t]", "t*X^3 - 2*t^2"),
    ("GF(3)[t^2,t^3]", "X^3 - t^3"),
    ("GF(3)[t^2,t^3]", "t^2*X + t^5"),
    ("GF(2)[t^2,t^3]", "(X + t^2)^2"),
    ("QQ[t^2,t^3]", "X^2 - t^2"),
    ("QQ[t^2,t^3]", "t^3*X/2 - t^4"),
    ("ZZ[sqrt(-5)]", "(1 + sqrt(-5))*X - 2"),
    ("ZZ[sqrt(-5)]", "sqrt(-5)^2"),
    ("ZZ[sqrt(-6)]", "X^2 - 2*sqrt(-6)*X - 6"),
];

const IDEALS: &[(&str, &str)] = &[
    ("ZZ", "ideal(0)"),
    ("ZZ", "ideal(5)"),
    ("ZZ", "ideal(5; X^2 + 2)"),
    ("ZZ", "ideal(4*X + 6)"),
    ("ZZ", "ideal(7*X + 14; 21)"),
    ("QQ", "ideal(X^2 - 2)"),
    ("GF(2)", "ideal(X^2 + X + 1)"),
    ("GF(2)[t]", "ideal(t; X)"),
    ("GF(2)[t]", "ideal(t^2 + t + 1; X + t)"),
    ("GF(5)[t]", "ideal(t*X - 1)"),
    ("GF(3)[t^2,t^3]", "ker(X -> t)"),
    ("GF(2)[t^2,t^3]", "ker(X -> t^2)"),
    ("QQ[t^2,t^3]", "ker(X -> t)"),
    ("GF(2)[t^2,t^3]", "ideal(X^2 + t^2)"),
    ("ZZ[sqrt(-5)]", "qideal(2; 1 + sqrt(-5))"),
    ("ZZ[sqrt(-5)]", "qideal(3; 1 - sqrt(-5))"),
    ("ZZ[sqrt(-5)]", "qideal(11)"),
];

const COMMANDS: &[&[&str]] = &[
    &["certify", "--ring", "ZZ", "--ideal", "ideal(5; X^2+2)"],
    &["certify", "--ring", "GF(3)[t^2,t^3]", "--ideal", "ker(X -> t)", "--format", "json", "--seed", "3"],
    &["verify", "--ring", "ZZ", "--ideal", "ideal(5)", "--gens", "2*X+3"],
    &["verify", "--ring", "GF(3)[t^2,t^3]", "--ideal", "ker(X -> t)", "--gens", "X^3 - t^3", "--hints", "3"],
    &["verify", "--ring", "GF(2)[t]", "--lhs", "ideal(t; X)", "--rhs", "ideal(t^2; X^3)", "--bound", "8"],
    &["classify", "--ring", "ZZ", "--ideal", "ideal(7)", "--ambient", "base"],
    &["witness", "--ring", "ZZ", "--ideal", "ideal(12)", "--member", "6"],
    &["obstruct", "--ring", "QQ[t^2,t^3]", "--adjoin", "t", "--n-check", "8"],
    &["descend", "--ring", "ZZ", "--gens", "49", "--maximal", "ideal(7)"],
    &["extend", "--ring", "ZZ", "--ideal", "ideal(5)"],
    &["oracle", "--ring", "GF(2)[t^2,t^3]", "--lhs", "ker(X -> t)", "--rhs", "ideal(X^2 + t^2)", "--cap", "3"],
];

fn ring(s: &str) -> RingSpec {
    s.parse().unwrap()
}

#[test]
fn spec_strings_round_trip() {
    let mut count = 0;
    for s in RINGS {
        let r = ring(s);
        assert_eq!(r.to_string(), *s);
        assert_eq!(ring(&r.to_string()), r);
        count += 1;
    }
    for (r, s) in POLYS {
        let r = ring(r);
        let p = expr::parse_poly(r, s).unwrap_or_else(|e| panic!("{s}: {e}"));
        let printed = p.to_string();
        assert_eq!(expr::parse_poly(r, &printed).unwrap(), p, "{s} printed as {printed}");
        assert_eq!(expr::parse_poly(r, &printed).unwrap().to_string(), printed);
        count += 1;
    }
    for (r, s) in IDEALS {
        let r = ring(r);
        let i = expr::parse_ideal(r, Ambient::Poly, s).unwrap_or_else(|e| panic!("{s}: {e}"));
        let printed = i.to_string();
        assert_eq!(expr::parse_ideal(r, Ambient::Poly, &printed).unwrap(), i, "{s} printed as {printed}");
        count += 1;
    }
    for args in COMMANDS {
        let c = Command::parse(args).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert_eq!(Command::parse(&c.to_args()).unwrap(), c, "{args:?}");
        count += 1;
    }
    assert!(count >= 50, "corpus has {count} strings");
}

#[test]
fn syntax_errors_report_byte_offsets() {
    for (r, s, offset) in [
        ("ZZ", "X + * 2", 4),
        ("ZZ", "(X", 2),
        ("ZZ", "X^", 2),
        ("GF(3)[t^2,t^3]", "X - t", 0),
        ("ZZ[sqrt(-5)]", "sqrt(-3)", 0),
    ] {
        match expr::parse_poly(ring(r), s) {
            Err(setci::Error::Syntax { offset: o, .. }) => assert_eq!(o, offset, "{s}"),
            other => panic!("{s}: {other:?}"),
        }
    }
}

/// Every reachable outcome maps to one of the four exit codes.
#[test]
fn exit_status_contract() {
    let cases: &[(&[&str], i32)] = &[
        (&["certify", "--ring", "ZZ", "--ideal", "ideal(5; X^2+2)"], 0),
        (&["certify", "--ring", "ZZ", "--ideal", "ideal(0)"], 0),
        (&["certify", "--ring", "ZZ[sqrt(-5)]", "--ideal", "qideal(2; 1 + sqrt(-5))"], 0),
        (&["certify", "--ring", "ZZ", "--ideal", "ideal(6*X + 4)"], 2),
        (&["certify", "--ring", "ZZ", "--ideal", "ideal(6)"], 2),
        (&["certify", "--ring", "QQ[t^2,t^3]", "--ideal", "ker(X -> t)"], 2),
        (&["verify", "--ring", "ZZ", "--ideal", "ideal(5)", "--gens", "2*X+3"], 2),
        (&["verify", "--ring", "ZZ", "--ideal", "ideal(5; X^2 + 2)", "--gens", "5; X^2 + 2"], 0),
        (&["verify", "--ring", "GF(3)[t^2,t^3]", "--ideal", "ker(X -> t)", "--gens", "X^3 - t^3", "--hints", "1", "--bound", "2"], 3),
        (&["verify", "--ring", "GF(2)[t]", "--lhs", "ideal(X)", "--rhs", "ideal(t)"], 2),
        (&["witness", "--ring", "ZZ", "--ideal", "ideal(12)", "--member", "6"], 0),
        (&["witness", "--ring", "ZZ", "--ideal", "ideal(12)", "--member", "5"], 2),
        (&["witness", "--ring", "ZZ", "--ideal", "ideal(X^2 + 1; 7*X)", "--member", "X", "--bound", "3"], 3),
        (&["obstruct", "--ring", "QQ[t^2,t^3]", "--adjoin", "t"], 0),
        (&["obstruct", "--ring", "QQ[t^2,t^3]", "--adjoin", "t^2"], 2),
        (&["obstruct", "--ring", "GF(3)[t^2,t^3]", "--adjoin", "t"], 1),
        (&["obstruct", "--ring", "ZZ", "--adjoin", "2"], 1),
        (&["descend", "--ring", "ZZ", "--gens", "49", "--maximal", "ideal(7)"], 0),
        (&["descend", "--ring", "ZZ", "--gens", "7*X + 14; 21", "--maximal", "ideal(7)"], 2),
        (&["extend", "--ring", "GF(3)[t^2,t^3]", "--ideal", "ker(X -> t)"], 0),
        (&["oracle", "--ring", "GF(2)[t^2,t^3]", "--lhs", "ker(X -> t)", "--rhs", "ideal(X^3 + t^3)", "--cap", "3"], 2),
        (&["oracle", "--ring", "GF(2)[t]", "--lhs", "ideal(X)", "--rhs", "ideal(X^2)", "--cap", "9"], 1),
        (&["frobnicate"], 1),
        (&["certify", "--ring", "ZQ", "--ideal", "ideal(1)"], 1),
        (&["certify", "--ring", "ZZ", "--ideal", "ideal(5; X^2+"], 1),
        (&["certify", "--ring", "ZZ", "--ideal", "ideal(5)", "--member", "1"], 1),
        (&["certify", "--ring", "ZZ"], 1),
        (&["verify", "--cert", "/nonexistent/certificate.json"], 1),
    ];
    for (args, code) in cases {
        let o = cli::main_with(args);
        assert_eq!(o.code, *code, "{args:?}: {o:?}");
        assert!([0, 1, 2, 3].contains(&o.code));
        if o.code == 0 {
            assert!(o.stderr.is_empty(), "{args:?}: {o:?}");
        }
    }
}

fn resolve<'a>(root: &'a Value, schema: &'a Value) -> &'a Value {
    match schema.get("$ref").and_then(Value::as_str) {
        Some(r) => {
            let name = r.strip_prefix("#/$defs/").expect("local reference");
            &root["$defs"][name]
        }
        None => schema,
    }
}

/// Checks the keywords the certificate schema uses.
fn validate(root: &Value, schema: &Value, v: &Value, path: &str) -> Result<(), String> {
    let schema = resolve(root, schema);
    if let Some(t) = schema.get("type").and_then(Value::as_str) {
        let fits = match t {
            "object" => v.is_object(),
            "array" => v.is_array(),
            "string" => v.is_string(),
            "integer" => v.is_u64() || v.is_i64(),
            other => return Err(format!("{path}: unsupported type {other}")),
        };
        if !fits {
            return Err(format!("{path}: expected {t}, got {v}"));
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(v) {
            return Err(format!("{path}: {v} not in {options:?}"));
        }
    }
    if let (Some(min), Some(n)) = (schema.get("minimum").and_then(Value::as_i64), v.as_i64()) {
        if n < min {
            return Err(format!("{path}: {n} below {min}"));
        }
    }
    if let Some(obj) = v.as_object() {
        let props = schema.get("properties").and_then(Value::as_object);
        for req in schema.get("required").and_then(Value::as_array).into_iter().flatten() {
            let req = req.as_str().unwrap();
            if !obj.contains_key(req) {
                return Err(format!("{path}: missing {req}"));
            }
        }
        for (k, value) in obj {
            match props.and_then(|p| p.get(k)) {
                Some(s) => validate(root, s, value, &format!("{path}.{k}"))?,
                None if schema.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    return Err(format!("{path}: unexpected field {k}"))
                }
                None => {}
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), v.as_array()) {
        for (i, x) in arr.iter().enumerate() {
            validate(root, items, x, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

fn schema() -> Value {
    let raw = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/certificate.schema.json")).unwrap();
    serde_json::from_str(&raw).unwrap()
}

#[test]
fn certificates_match_the_documented_schema() {
    let root = schema();
    for (r, ideal) in IDEALS {
        for verb in ["certify", "extend"] {
            let o = cli::main_with(&[verb, "--ring", r, "--ideal", ideal, "--format", "json"]);
            if o.code != 0 {
                continue;
            }
            let v: Value = serde_json::from_str(&o.stdout).unwrap();
            validate(&root, &root, &v, "$").unwrap_or_else(|e| panic!("{verb} {r} {ideal}: {e}"));
        }
    }
    let bad: Value = serde_json::json!({"ring": "ZZ", "target": "ideal(5)"});
    assert!(validate(&root, &root, &bad, "$").is_err());
}

#[test]
fn json_output_is_byte_stable() {
    for args in COMMANDS {
        let mut a: Vec<&str> = args.to_vec();
        if !a.contains(&"json") {
            a.extend(["--format", "json"]);
        }
        let first = cli::main_with(&a);
        let second = cli::main_with(&a);
        assert_eq!(first, second, "{a:?}");
        assert!(serde_json::from_str::<Value>(&first.stdout).is_ok(), "{a:?}: {}", first.stdout);
    }
}

#[test]
fn binary_certifies_and_verifies_from_a_file() {
    let bin = env!("CARGO_BIN_EXE_setci");
    let out = process::Command::new(bin)
        .args(["certify", "--ring", "GF(3)[t^2,t^3]", "--ideal", "ker(X -> t)", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let path = std::env::temp_dir().join(format!("setci-cert-{}.json", process::id()));
    std::fs::write(&path, &out.stdout).unwrap();
    let check = process::Command::new(bin).args(["verify", "--cert"]).arg(&path).output().unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(check.status.code(), Some(0), "{}", String::from_utf8_lossy(&check.stderr));

    let help = process::Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("certify"));
    let bad = process::Command::new(bin).args(["certify", "--ring", "ZZ", "--ideal", "ideal(6)"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
