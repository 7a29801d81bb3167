//! Readers for `.fincat` category files, `.arrow` coefficient files and
//! scalar literals.
//!
//! `.fincat`, one directive per line, `#` starts a comment:
//!
//! ```text
//! objects U
//! arrow z1 U U
//! compose z1 z1 = id_U
//! ```
//!
//! Identities are implicit and named `id_<object>`. Composites with an
//! identity are inferred; every other composable pair needs a `compose` line.
//!
//! `.arrow`:
//!
//! ```text
//! arrow a (X,U) -> (X,U)
//! z1 = 3
//! ```
//!
//! Unlisted index arrows get the zero coefficient.

use std::collections::BTreeMap;
use std::str::FromStr;

use num::{BigInt, BigRational, Zero};
use thiserror::Error;

use crate::cauchy::{CauchyArrow, CauchyCategory};
use crate::fincat::{validate_category, FinCategory};
use crate::pcm::{Carrier, Element, Matrix, PartialFn, Relation, Residue};
use crate::pcmcat::{Object, PcmCatError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: cannot read `{text}` as {expected}")]
    Scalar { line: usize, text: String, expected: String },
    #[error("line {line}: unknown index arrow `{name}`")]
    UnknownIndexArrow { line: usize, name: String },
    #[error("invalid category: {0}")]
    Validation(String),
    #[error("not summable: {0}")]
    NotSummable(String),
    #[error(transparent)]
    PcmCat(#[from] PcmCatError),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

/// Non-empty lines with comments removed, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || "_'.-".contains(c))
}

/// Reads and validates a `.fincat` category.
pub fn parse_fincat(text: &str) -> Result<FinCategory, ParseError> {
    let mut objects: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut composites: Vec<(String, String, String)> = Vec::new();
    for (n, line) in lines(text) {
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            ["objects", names @ ..] if !names.is_empty() => {
                for name in names {
                    if !is_name(name) {
                        return Err(syntax(n, format!("bad object name `{name}`")));
                    }
                    if objects.iter().any(|o| o == name) {
                        return Err(syntax(n, format!("object `{name}` declared twice")));
                    }
                    objects.push((*name).to_owned());
                }
            }
            ["arrow", name, src, tgt] => {
                if !is_name(name) || name.starts_with("id_") {
                    return Err(syntax(n, format!("bad arrow name `{name}`; `id_` names are reserved")));
                }
                for o in [src, tgt] {
                    if !objects.iter().any(|x| x == o) {
                        return Err(syntax(n, format!("unknown object `{o}`")));
                    }
                }
                if arrows.iter().any(|a| a.0 == *name) {
                    return Err(syntax(n, format!("arrow `{name}` declared twice")));
                }
                arrows.push(((*name).to_owned(), (*src).to_owned(), (*tgt).to_owned()));
            }
            ["compose", g, f, "=", h] => {
                for a in [g, f, h] {
                    let known = arrows.iter().any(|x| x.0 == *a)
                        || a.strip_prefix("id_").is_some_and(|o| objects.iter().any(|x| x == o));
                    if !known {
                        return Err(syntax(n, format!("unknown arrow `{a}`")));
                    }
                }
                composites.push(((*g).to_owned(), (*f).to_owned(), (*h).to_owned()));
            }
            _ => return Err(syntax(n, format!("cannot read `{line}`"))),
        }
    }
    if objects.is_empty() {
        return Err(syntax(0, "no `objects` line"));
    }
    let identities: Vec<String> = objects.iter().map(|o| format!("id_{o}")).collect();
    let mut all: Vec<(String, String, String)> = objects.iter().map(|o| (format!("id_{o}"), o.clone(), o.clone())).collect();
    all.extend(arrows);
    let c = FinCategory::from_parts(objects, all, identities, composites).map_err(|e| ParseError::Validation(e.to_string()))?;
    let report = validate_category(&c);
    if !report.passed() {
        return Err(ParseError::Validation(report.witness.unwrap_or_default()));
    }
    Ok(c)
}

/// Splits on `sep` outside of brackets.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' | '<' => depth += 1,
            ')' | ']' | '}' | '>' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn strip<'a>(s: &'a str, open: &str, close: &str) -> Option<&'a str> {
    s.trim().strip_prefix(open)?.strip_suffix(close)
}

fn rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let (n, d) = (BigInt::from_str(n.trim()).ok()?, BigInt::from_str(d.trim()).ok()?);
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => BigInt::from_str(s).ok().map(BigRational::from_integer),
    }
}

fn float(s: &str) -> Option<f64> {
    let v: f64 = match s {
        "" | "+" => 1.0,
        "-" => -1.0,
        _ => s.parse().ok()?,
    };
    v.is_finite().then_some(v)
}

fn complex(s: &str) -> Option<(f64, f64)> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('i') else { return Some((s.parse().ok().filter(|v: &f64| v.is_finite())?, 0.0)) };
    // the sign that starts the imaginary part, skipping exponent signs
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        Some(i) => Some((body[..i].parse().ok().filter(|v: &f64| v.is_finite())?, float(&body[i..])?)),
        None => Some((0.0, float(body)?)),
    }
}

fn index(s: &str, bound: usize) -> Option<usize> {
    s.trim().parse().ok().filter(|&v| v < bound)
}

/// Reads a literal of the given carrier. Literals mirror the display
/// format: `-3`, `2/3`, `4 mod 7`, `1.5-2i`, `pf(1,_,0)`, `rel{(0,1)}`,
/// `(1/2,-1/2)`, `[[1,0],[0,1]]`, `<a;b>`.
pub fn parse_element(text: &str, carrier: &Carrier) -> Option<Element> {
    let s = text.trim();
    match carrier {
        Carrier::Int => BigInt::from_str(s).ok().map(Element::Int),
        Carrier::Rational => rational(s).map(Element::Rational),
        Carrier::Residue(n) => {
            let (v, m) = match s.split_once("mod") {
                Some((v, m)) => (v.trim(), Some(m.trim().parse::<u64>().ok()?)),
                None => (s, None),
            };
            if m.is_some_and(|m| m != *n) {
                return None;
            }
            Residue::from_bigint(&BigInt::from_str(v).ok()?, *n).ok().map(Element::Residue)
        }
        Carrier::Complex => complex(s).map(|(re, im)| Element::complex(re, im)),
        Carrier::PartialFn { dom, cod, injective } => {
            let body = strip(s, "pf(", ")")?;
            let parts = if body.trim().is_empty() { vec![] } else { split_top(body, ',') };
            let map = parts
                .iter()
                .map(|p| if p.trim() == "_" { Some(None) } else { index(p, *cod).map(Some) })
                .collect::<Option<Vec<_>>>()?;
            let p = PartialFn::new(map, *cod).ok()?;
            (p.dom_size() == *dom && (!injective || p.is_injective())).then_some(Element::PartialFn(p))
        }
        Carrier::Relation { rows, cols } => {
            let body = strip(s, "rel{", "}")?;
            let mut pairs = Vec::new();
            if !body.trim().is_empty() {
                for p in split_top(body, ',') {
                    let inner = strip(p, "(", ")")?;
                    let (x, y) = inner.split_once(',')?;
                    pairs.push((index(x, *rows)?, index(y, *cols)?));
                }
            }
            Relation::new(*rows, *cols, pairs).ok().map(Element::Relation)
        }
        Carrier::Vector { dim } => {
            let body = strip(s, "(", ")")?;
            let v = split_top(body, ',').into_iter().map(rational).collect::<Option<Vec<_>>>()?;
            (v.len() == *dim).then_some(Element::Vector(v))
        }
        Carrier::Matrix { rows, cols, scalar } => {
            let body = strip(s, "[", "]")?;
            let sc = scalar.carrier();
            let mut entries = Vec::new();
            let row_texts = if *rows == 0 { vec![] } else { split_top(body, ',') };
            if row_texts.len() != *rows {
                return None;
            }
            for r in row_texts {
                let r = strip(r, "[", "]")?;
                let row: Vec<Element> = if *cols == 0 {
                    vec![]
                } else {
                    split_top(r, ',').into_iter().map(|e| parse_element(e, &sc)).collect::<Option<_>>()?
                };
                if row.len() != *cols {
                    return None;
                }
                entries.extend(row);
            }
            Matrix::new(*rows, *cols, entries).ok().map(Element::Matrix)
        }
        Carrier::Pair(a, b) => {
            let body = strip(s, "<", ">")?;
            let parts = split_top(body, ';');
            let [x, y] = parts.as_slice() else { return None };
            Some(Element::pair(parse_element(x, a)?, parse_element(y, b)?))
        }
        Carrier::Coeffs { .. } => None,
    }
}

/// Reads `(X,U)`.
fn parse_pair_object(s: &str, line: usize) -> Result<Object, ParseError> {
    let body = strip(s, "(", ")").ok_or_else(|| syntax(line, format!("expected (X,U), got `{s}`")))?;
    let parts = split_top(body, ',');
    let [x, u] = parts.as_slice() else { return Err(syntax(line, format!("expected (X,U), got `{s}`"))) };
    let (x, u) = (x.trim(), u.trim());
    if !is_name(x) || !is_name(u) {
        return Err(syntax(line, format!("bad object names in `{s}`")));
    }
    Ok(Object::pair(Object::named(x), Object::named(u)))
}

/// Reads an `.arrow` file into an arrow of `cc`, returning its name too.
pub fn parse_arrow(text: &str, cc: &CauchyCategory) -> Result<(String, CauchyArrow), ParseError> {
    let mut it = lines(text);
    let (n, header) = it.next().ok_or_else(|| syntax(0, "empty arrow file"))?;
    let rest = header.strip_prefix("arrow").filter(|r| r.starts_with(char::is_whitespace)).ok_or_else(|| {
        syntax(n, "expected `arrow <name> (X,U) -> (Y,V)`")
    })?;
    let rest = rest.trim_start();
    let (name, rest) = rest.split_once(char::is_whitespace).ok_or_else(|| syntax(n, "missing source and target"))?;
    if !is_name(name) {
        return Err(syntax(n, format!("bad arrow name `{name}`")));
    }
    let (src, tgt) = rest.split_once("->").ok_or_else(|| syntax(n, "missing `->`"))?;
    let (src, tgt) = (parse_pair_object(src, n)?, parse_pair_object(tgt, n)?);
    let ((x, u), (y, v)) = (cc.split(&src)?, cc.split(&tgt)?);
    let carrier = cc.base().hom(&x, &y)?.carrier().clone();
    let hom = cc.index().hom(u, v);
    let mut named: BTreeMap<String, Element> = BTreeMap::new();
    for (n, line) in it {
        let (a, value) = line.split_once('=').ok_or_else(|| syntax(n, format!("expected `<index-arrow> = <scalar>`, got `{line}`")))?;
        let a = a.trim();
        let id = cc.index().find_arrow(a).ok_or_else(|| ParseError::UnknownIndexArrow { line: n, name: a.to_owned() })?;
        if !hom.contains(&id) {
            return Err(syntax(n, format!("`{a}` is not an arrow {} -> {}", cc.index().object_name(u), cc.index().object_name(v))));
        }
        let e = parse_element(value, &carrier).ok_or_else(|| ParseError::Scalar {
            line: n,
            text: value.trim().to_owned(),
            expected: carrier.to_string(),
        })?;
        if named.insert(a.to_owned(), e).is_some() {
            return Err(syntax(n, format!("coefficient of `{a}` given twice")));
        }
    }
    match cc.arrow_from_names(&src, &tgt, &named) {
        Ok(arrow) => Ok((name.to_owned(), arrow)),
        Err(PcmCatError::NotSummable(m)) => Err(ParseError::NotSummable(format!("arrow {name}: {m}"))),
        Err(e) => Err(e.into()),
    }
}

/// Prints an arrow in `.arrow` syntax, listing every coefficient.
pub fn format_arrow(name: &str, a: &CauchyArrow, cc: &CauchyCategory) -> Result<String, PcmCatError> {
    let mut out = format!("arrow {name} {} -> {}\n", a.src, a.tgt);
    for (idx, c) in cc.named_coeffs(a)? {
        out.push_str(&format!("{idx} = {c}\n"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcm::ScalarKind;

    const Z2: &str = "# the cyclic group of order 2\nobjects U\narrow z1 U U\ncompose z1 z1 = id_U\n";

    #[test]
    fn fincat_files() {
        let c = parse_fincat(Z2).unwrap();
        assert_eq!((c.num_objects(), c.num_arrows()), (1, 2));
        let missing = "objects U\narrow z1 U U\n";
        let err = parse_fincat(missing).unwrap_err();
        assert!(matches!(&err, ParseError::Validation(w) if w.contains("totality")), "{err}");
        let err = parse_fincat("objects U\narrow z1 U\n").unwrap_err();
        assert_eq!(err, ParseError::Syntax { line: 2, msg: "cannot read `arrow z1 U`".into() });
        assert!(matches!(parse_fincat("objects U\narrow id_U U U\n"), Err(ParseError::Syntax { line: 2, .. })));
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_element("-12", &Carrier::Int), Some(Element::int(-12)));
        assert_eq!(parse_element("1/3", &Carrier::Int), None);
        assert_eq!(parse_element("-2/4", &Carrier::Rational), Some(Element::ratio(-1, 2)));
        assert_eq!(parse_element("1/0", &Carrier::Rational), None);
        assert_eq!(parse_element("9 mod 7", &Carrier::Residue(7)), Some(Element::residue(2, 7)));
        assert_eq!(parse_element("9 mod 5", &Carrier::Residue(7)), None);
        assert_eq!(parse_element("1.5-2i", &Carrier::Complex), Some(Element::complex(1.5, -2.0)));
        assert_eq!(parse_element("-i", &Carrier::Complex), Some(Element::complex(0.0, -1.0)));
        assert_eq!(parse_element("1e-3+1e+2i", &Carrier::Complex), Some(Element::complex(1e-3, 1e2)));
        assert_eq!(parse_element("nan", &Carrier::Complex), None);
        let pf = Carrier::PartialFn { dom: 3, cod: 2, injective: false };
        assert_eq!(parse_element("pf(1,_,0)", &pf).unwrap().to_string(), "pf(1,_,0)");
        assert_eq!(parse_element("pf(1,_,2)", &pf), None);
        let rel = Carrier::Relation { rows: 2, cols: 2 };
        assert_eq!(parse_element("rel{(0,1),(1,0)}", &rel).unwrap().to_string(), "rel{(0,1),(1,0)}");
        assert_eq!(parse_element("rel{}", &rel).unwrap().to_string(), "rel{}");
        let m = Carrier::Matrix { rows: 2, cols: 2, scalar: ScalarKind::Rational };
        assert_eq!(parse_element("[[1,0],[1/2,1]]", &m).unwrap().to_string(), "[[1,0],[1/2,1]]");
        assert_eq!(parse_element("[[1,0]]", &m), None);
        let v = Carrier::Vector { dim: 2 };
        assert_eq!(parse_element("(1/2,-1/2)", &v).unwrap().to_string(), "(1/2,-1/2)");
        let p = Carrier::Pair(Box::new(Carrier::Int), Box::new(Carrier::Residue(3)));
        assert_eq!(parse_element("<2;4 mod 3>", &p), Some(Element::pair(Element::int(2), Element::residue(1, 3))));
    }

    #[test]
    fn display_round_trips() {
        let e = Element::complex(0.5, -0.25);
        assert_eq!(parse_element(&e.to_string(), &Carrier::Complex), Some(e));
    }
}
