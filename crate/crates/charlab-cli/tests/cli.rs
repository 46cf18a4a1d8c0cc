//! End-to-end tests of the `charlab` binary: flag handling, exit codes,
//! JSON schema conformance, byte-level determinism, and SVG output.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

mod schema {
    //! Minimal JSON Schema checker covering the subset the shipped schema
    //! uses: $ref into definitions, oneOf, type, enum, required, properties,
    //! additionalProperties, items, pattern.

    use serde_json::Value;

    pub struct Schema {
        root: Value,
    }

    impl Schema {
        pub fn load() -> Schema {
            let path = concat!(
                env!("CARGO_MANIFEST_DIR"),
                "/schema/cli_output.schema.json"
            );
            let text = std::fs::read_to_string(path).expect("schema file ships with the repo");
            Schema {
                root: serde_json::from_str(&text).expect("schema is valid JSON"),
            }
        }

        fn resolve<'a>(&'a self, schema: &'a Value) -> &'a Value {
            if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
                let name = r
                    .strip_prefix("#/definitions/")
                    .expect("only definition refs are used");
                return &self.root["definitions"][name];
            }
            schema
        }

        pub fn validate(&self, value: &Value) -> Result<(), String> {
            self.check(&self.root.clone(), value, "$")
        }

        fn check(&self, schema: &Value, value: &Value, path: &str) -> Result<(), String> {
            let schema = self.resolve(schema);

            if let Some(options) = schema.get("oneOf").and_then(Value::as_array) {
                let hits = options
                    .iter()
                    .filter(|s| self.check(s, value, path).is_ok())
                    .count();
                if hits != 1 {
                    return Err(format!("{path}: matched {hits} of the oneOf branches"));
                }
                return Ok(());
            }

            if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
                if !allowed.contains(value) {
                    return Err(format!("{path}: {value} not in enum"));
                }
                return Ok(());
            }

            match schema.get("type").and_then(Value::as_str) {
                Some("object") => {
                    let obj = value
                        .as_object()
                        .ok_or_else(|| format!("{path}: expected object"))?;
                    if let Some(required) = schema.get("required").and_then(Value::as_array) {
                        for key in required {
                            let key = key.as_str().unwrap();
                            if !obj.contains_key(key) {
                                return Err(format!("{path}: missing required key {key:?}"));
                            }
                        }
                    }
                    let props = schema.get("properties").and_then(Value::as_object);
                    for (key, val) in obj {
                        let sub = props.and_then(|p| p.get(key));
                        match sub {
                            Some(s) => self.check(s, val, &format!("{path}.{key}"))?,
                            None => match schema.get("additionalProperties") {
                                Some(Value::Bool(false)) => {
                                    return Err(format!("{path}: unexpected key {key:?}"))
                                }
                                Some(s) if s.is_object() => {
                                    self.check(s, val, &format!("{path}.{key}"))?
                                }
                                _ => {}
                            },
                        }
                    }
                    Ok(())
                }
                Some("array") => {
                    let arr = value
                        .as_array()
                        .ok_or_else(|| format!("{path}: expected array"))?;
                    if let Some(items) = schema.get("items") {
                        for (i, v) in arr.iter().enumerate() {
                            self.check(items, v, &format!("{path}[{i}]"))?;
                        }
                    }
                    Ok(())
                }
                Some("string") => {
                    let s = value
                        .as_str()
                        .ok_or_else(|| format!("{path}: expected string"))?;
                    if let Some(pat) = schema.get("pattern").and_then(Value::as_str) {
                        let re = regex::Regex::new(pat).expect("schema patterns are valid");
                        if !re.is_match(s) {
                            return Err(format!("{path}: {s:?} does not match {pat:?}"));
                        }
                    }
                    Ok(())
                }
                Some("boolean") => value
                    .as_bool()
                    .map(|_| ())
                    .ok_or_else(|| format!("{path}: expected boolean")),
                Some(other) => Err(format!("{path}: unhandled schema type {other:?}")),
                None => Ok(()),
            }
        }
    }
}

/// Checks the output is a single well-formed XML document: one prolog,
/// balanced quoted tags, no stray `<`.
fn assert_well_formed_xml(text: &str) {
    let text = text.trim();
    let rest = text
        .strip_prefix("<?xml")
        .and_then(|r| r.split_once("?>"))
        .map(|(_, r)| r)
        .expect("XML prolog");
    let mut stack: Vec<String> = Vec::new();
    let mut chars = rest.char_indices().peekable();
    while let Some((i, ch)) = chars.next() {
        if ch != '<' {
            continue;
        }
        let close = rest[i..].find('>').expect("unterminated tag") + i;
        let tag = &rest[i + 1..close];
        assert!(!tag.is_empty() && !tag.contains('<'), "malformed tag {tag:?}");
        assert_eq!(tag.matches('"').count() % 2, 0, "unbalanced quotes in {tag:?}");
        if let Some(name) = tag.strip_prefix('/') {
            let open = stack.pop().unwrap_or_else(|| panic!("orphan </{name}>"));
            assert_eq!(open, name, "mismatched close tag");
        } else if !tag.ends_with('/') {
            let name = tag.split_whitespace().next().unwrap().to_string();
            stack.push(name);
        }
        while let Some(&(j, _)) = chars.peek() {
            if j > close {
                break;
            }
            chars.next();
        }
    }
    assert!(stack.is_empty(), "unclosed tags: {stack:?}");
}

#[test]
fn eval_principal_counts_boxed_plane_partitions() {
    let out = run(&[
        "eval", "--family", "gl", "--shape", "2,2", "--vars", "4", "--principal",
    ]);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["value"], "20");
    assert_eq!(json["shape"], "2,2,0,0");
    assert_eq!(json["specialization"], "principal");
}

#[test]
fn eval_at_point() {
    let out = run(&[
        "eval", "--family", "so-odd", "--shape", "0,0", "--vars", "2", "--at", "2,3",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["value"], "1");

    let out = run(&[
        "eval", "--family", "so-odd", "--shape", "1", "--vars", "1", "--at", "2",
    ]);
    assert_eq!(stdout_json(&out)["value"], "7/2");
}

#[test]
fn eval_o_even_zero_part_is_usage_error() {
    let out = run(&[
        "eval", "--family", "o-even", "--shape", "0,0", "--vars", "2", "--principal",
    ]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("strictly positive"), "stderr: {err}");
}

#[test]
fn eval_singular_point_exits_3_with_hint() {
    let out = run(&[
        "eval", "--family", "gl", "--shape", "1,0", "--vars", "2", "--at", "3,3",
    ]);
    assert_eq!(code(&out), 3);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--principal"), "stderr: {err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn eval_negated_principal() {
    let out = run(&[
        "eval", "--family", "so-odd", "--shape", "1,1", "--vars", "2", "--principal",
        "--negate",
    ]);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["value"], "2");
    assert_eq!(json["specialization"], "principal-negated");
}

#[test]
fn verify_exit_codes_and_reports() {
    let out = run(&[
        "verify", "--identity", "thm1", "--m", "0", "--n", "3", "--mode", "symbolic",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["verdict"], "equal");

    let out = run(&[
        "verify", "--identity", "thm2", "--m", "1", "--n", "2", "--mode", "random",
        "--trials", "10", "--seed", "7",
    ]);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["verdict"], "equal");
    assert_eq!(json["trials"], "10");
}

#[test]
fn verify_thm4_boundary_carries_note() {
    let out = run(&[
        "verify", "--identity", "thm4", "--m", "0", "--n", "2", "--mode", "symbolic",
    ]);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["verdict"], "equal");
    assert!(json["note"].as_str().unwrap().contains("boundary"));
}

#[test]
fn lemma_subcommand() {
    let out = run(&["lemma", "--which", "1", "--N", "1", "--mode", "symbolic"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["identity"], "lemma1");

    let out = run(&["lemma", "--which", "3", "--N", "0", "--mode", "symbolic"]);
    assert_eq!(code(&out), 0);

    let out = run(&[
        "lemma", "--which", "2", "--N", "3", "--mode", "random", "--trials", "25",
        "--seed", "1",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["verdict"], "equal");
}

#[test]
fn count_subcommand() {
    let out = run(&[
        "count", "--family", "pp", "--m", "1", "--n", "2", "--methods",
        "bruteforce,character",
    ]);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["methods"]["bruteforce"], "20");
    assert_eq!(json["methods"]["character"], "20");
    assert_eq!(json["consistent"], true);

    let out = run(&[
        "count", "--family", "tcpp", "--m", "1", "--n", "2", "--methods",
        "bruteforce,product",
    ]);
    assert_eq!(stdout_json(&out)["methods"]["product"], "2");

    let out = run(&[
        "count", "--family", "spp-star", "--m", "0", "--n", "1", "--methods", "product",
    ]);
    assert_eq!(stdout_json(&out)["methods"]["product"], "2");
}

#[test]
fn count_guard_exceeded_reports_skipped() {
    let out = run(&[
        "count", "--family", "pp", "--m", "6", "--n", "6", "--methods", "bruteforce",
    ]);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    let brute = json["methods"]["bruteforce"].as_str().unwrap();
    assert!(brute.starts_with("skipped("), "got {brute}");
}

#[test]
fn count_rejects_inapplicable_method() {
    let out = run(&[
        "count", "--family", "spp-star", "--m", "1", "--n", "2", "--methods",
        "bruteforce",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn flag_errors_exit_2() {
    let out = run(&["verify", "--identity", "thm1", "--m", "1"]);
    assert_eq!(code(&out), 2);
    let out = run(&["eval", "--family", "nope", "--shape", "1", "--vars", "1", "--principal"]);
    assert_eq!(code(&out), 2);
    let out = run(&["eval", "--family", "gl", "--shape", "1", "--vars", "1"]);
    assert_eq!(code(&out), 2); // neither --at nor --principal
    let out = run(&["frobnicate"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn byte_identical_reruns() {
    let cases: Vec<Vec<&str>> = vec![
        vec![
            "verify", "--identity", "thm3", "--m", "1", "--n", "2", "--mode", "random",
            "--trials", "5", "--seed", "99",
        ],
        vec![
            "lemma", "--which", "2", "--N", "2", "--mode", "random", "--trials", "8",
            "--seed", "3",
        ],
        vec!["eval", "--family", "sp", "--shape", "2,1", "--vars", "2", "--at", "4,9/4"],
        vec![
            "count", "--family", "tcpp", "--m", "2", "--n", "3", "--methods",
            "bruteforce,character,product",
        ],
    ];
    for args in cases {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.stdout, second.stdout, "args: {args:?}");
        assert_eq!(code(&first), code(&second));
    }
}

#[test]
fn outputs_validate_against_shipped_schema() {
    let schema = schema::Schema::load();
    let outputs = [
        run(&["eval", "--family", "gl", "--shape", "2,2", "--vars", "4", "--principal"]),
        run(&["eval", "--family", "so-odd", "--shape", "3/2,1/2", "--vars", "2", "--at", "4,9"]),
        run(&["verify", "--identity", "uniform65", "--m", "0", "--n", "2", "--mode", "symbolic"]),
        run(&["verify", "--identity", "eq13", "--m", "1", "--n", "2", "--mode", "random", "--trials", "3", "--seed", "5"]),
        run(&["lemma", "--which", "1", "--N", "2", "--mode", "symbolic"]),
        run(&["count", "--family", "spp", "--m", "1", "--n", "2", "--methods", "bruteforce,character"]),
    ];
    for out in &outputs {
        assert_eq!(code(out), 0);
        let json = stdout_json(out);
        schema.validate(&json).unwrap_or_else(|e| panic!("{e}\nfor {json}"));
    }
}

#[test]
fn render_produces_valid_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tiling.svg");
    let path_str = path.to_str().unwrap();

    // trivial hexagon: m=0, n=1 has exactly one (empty) tiling
    let out = run(&[
        "render", "--family", "pp", "--m", "0", "--n", "1", "--index", "0", "--out",
        path_str,
    ]);
    assert_eq!(code(&out), 0);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_well_formed_xml(&svg);

    // 2x2x2 box, all-zero plane partition: floor plus two back walls
    let out = run(&[
        "render", "--family", "pp", "--m", "1", "--n", "2", "--index", "0", "--out",
        path_str,
    ]);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["rhombi"], "12"); // bc + ab + ac = 4 + 4 + 4
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_well_formed_xml(&svg);
    assert_eq!(svg.matches("<polygon").count(), 12);

    // index out of range: PP(2,2,2) = 20
    let out = run(&[
        "render", "--family", "pp", "--m", "1", "--n", "2", "--index", "20", "--out",
        path_str,
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn render_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for (path, _) in [(&a, 0), (&b, 1)] {
        let out = run(&[
            "render", "--family", "pp", "--m", "1", "--n", "2", "--index", "7", "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
