use std::io::Write as _;

use super::*;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["pcmcat"];
    argv.extend_from_slice(args);
    let code = main_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn path(f: &tempfile::NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn parse_arrow_examples() {
    let cc = build(&Product { base: "int".into(), index: "cyclic:2".into() }).unwrap();
    let (name, a) = parse_arrow("arrow a (X,U) -> (X,U)\nz0 = 2\n", &cc).unwrap();
    assert_eq!(name, "a");
    assert_eq!(a.coeffs, vec![Element::int(2), Element::int(0)]);

    let err = parse_arrow("arrow a (X,U) -> (X,U)\nz0 = 1/3\n", &cc).unwrap_err();
    assert!(matches!(err, ParseError::Scalar { line: 2, .. }), "{err}");
    let err = parse_arrow("arrow a (X,U) -> (X,U)\nz7 = 1\n", &cc).unwrap_err();
    assert_eq!(err, ParseError::UnknownIndexArrow { line: 2, name: "z7".into() });

    let k1 = build(&Product { base: "kbounded:1".into(), index: "cyclic:2".into() }).unwrap();
    let err = parse_arrow("arrow a (X,U) -> (X,U)\nz0 = 1\nz1 = 1\n", &k1).unwrap_err();
    assert!(matches!(err, ParseError::NotSummable(_)), "{err}");
    assert!(parse_arrow("arrow a (X,U) -> (X,U)\nz1 = 1\n", &k1).is_ok());
}

#[test]
fn format_arrow_round_trips() {
    let cc = build(&Product { base: "mod:5".into(), index: "cyclic:3".into() }).unwrap();
    let (_, a) = parse_arrow("arrow a (X,U) -> (X,U)\nz2 = 7 mod 5\nz0 = 1\n", &cc).unwrap();
    let text = format_arrow("a", &a, &cc).unwrap();
    assert_eq!(text, "arrow a (X,U) -> (X,U)\nz0 = 1 mod 5\nz1 = 0 mod 5\nz2 = 2 mod 5\n");
    assert_eq!(parse_arrow(&text, &cc).unwrap().1, a);
}

#[test]
fn run_examples() {
    let (code, out, _) = invoke(&["laws", "--base", "int"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("CLASS int(X,X) NONPOSITIVE"), "{out}");

    let (code, out, _) = invoke(&["laws", "--base", "kbounded:2"]);
    assert_eq!(code, EXIT_LAW_VIOLATION);
    assert!(out.lines().any(|l| l.starts_with("CHECK strong_distributivity") && l.contains("FAIL witness=")), "{out}");

    let ones = file("arrow ones (X,U) -> (X,U)\nz0 = 1\nz1 = 1\nz2 = 1\nz3 = 1\nz4 = 1\n");
    let (code, out, _) = invoke(&["substitute", "--p", "5", "--s", "1", path(&ones)]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "0.000000000000+0.000000000000i\n"));
}

#[test]
fn exit_codes() {
    let bad = file("objects U\narrow z1 U U\n");
    let (code, _, err) = invoke(&["validate", "--index", path(&bad)]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("totality"), "{err}");

    let z2 = file("objects U\narrow z1 U U\ncompose z1 z1 = id_U\n");
    let (code, out, _) = invoke(&["validate", "--index", path(&z2)]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "index 1 objects, 2 arrows\nCHECK validate PASS\n"));

    let a = file("arrow a (X,U) -> (X,U)\nz0 = 1\n");
    let (code, out, _) = invoke(&["sum", "--base", "kbounded:1", "--index", "cyclic:2", path(&a), path(&a)]);
    assert_eq!((code, out.as_str()), (EXIT_NOT_SUMMABLE, "NOT_SUMMABLE\n"));

    assert_eq!(invoke(&["laws", "--base", "nope"]).0, EXIT_INVALID);
    assert_eq!(invoke(&["laws", "--base", "int", "--tolerance", "0"]).0, EXIT_INVALID);
    assert_eq!(invoke(&["frobnicate"]).0, EXIT_INVALID);
    assert_eq!(invoke(&["--help"]).0, EXIT_OK);
}

#[test]
fn arrow_commands() {
    let a = file("arrow a (X,U) -> (X,U)\nz0 = 1\nz1 = 1\n");
    let (code, out, _) = invoke(&["convolve", "--base", "int", "--index", "cyclic:2", path(&a), path(&a)]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "arrow a.a (X,U) -> (X,U)\nz0 = 2\nz1 = 2\n"));

    let b = file("arrow b (X,U) -> (X,U)\nz1 = -4\n");
    let (code, out, _) = invoke(&["sum", "--base", "int", "--index", "cyclic:2", path(&a), path(&b)]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "arrow sum(a,b) (X,U) -> (X,U)\nz0 = 1\nz1 = -3\n"));

    let (_, out, _) = invoke(&["embed", "--which", "sigma", "--base", "int", "--index", "cyclic:2", path(&a)]);
    assert_eq!(out, "2\n");
    let (_, out, _) = invoke(&["embed", "--which", "eta", "--base", "int", "--index", "cyclic:2", "--value", "-5"]);
    assert_eq!(out, "arrow eta (X,U) -> (X,U)\nz0 = -5\nz1 = 0\n");
    let (_, out, _) = invoke(&["embed", "--which", "gamma", "--base", "int", "--index", "cyclic:2", "--arrow", "z1"]);
    assert_eq!(out, "arrow gamma (X,U) -> (X,U)\nz0 = 0\nz1 = 1\n");
    let (_, out, _) =
        invoke(&["embed", "--which", "star", "--base", "int", "--index", "cyclic:2", "--arrow", "z1", "--value", "3"]);
    assert_eq!(out, "arrow star (X,U) -> (X,U)\nz0 = 0\nz1 = 3\n");

    let (code, out, _) = invoke(&["cauchy", "describe", "--base", "int", "--index", "cyclic:2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out,
        "category int[1 objects, 2 arrows]\nobjects 1\nhom (X,U) -> (X,U) coeffs=[z0,z1]\narrow id(X,U) (X,U) -> (X,U)\nz0 = 1\nz1 = 0\n"
    );
}

#[test]
fn series_command() {
    let (code, out, _) = invoke(&["series", "--p", "1,1", "--q", "1,1", "--order", "2"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "c0 = 1\nc1 = 2\nc2 = 1\ntail_bound = 0\n"));
    let (_, out, _) = invoke(&["series", "--p", "geom:1:1/2", "--q", "geom:1:1/2", "--order", "3"]);
    assert_eq!(out, "c0 = 1\nc1 = 1\nc2 = 3/4\nc3 = 1/2\ntail_bound = 3/4\n");
    assert_eq!(invoke(&["series", "--p", "geom:1:2", "--q", "1"]).0, EXIT_INVALID);
}

#[test]
fn product_command() {
    let (code, out, _) = invoke(&["product", "--base", "mod:2", "--base", "rel:1", "--trials", "20", "--family-size", "3"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("CHECK pcm_functor[pi1]") || out.contains("pi1"), "{out}");
    assert_eq!(invoke(&["product", "--base", "int"]).0, EXIT_INVALID);
}
