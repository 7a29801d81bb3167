//! Carrier elements for every shipped PCM instance.

use std::fmt;

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElementError {
    #[error("operands of different kinds: {0} and {1}")]
    Mismatch(String, String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("residue modulus must be at least 1")]
    ZeroModulus,
    #[error("relation of {0}x{1} exceeds 64 cells")]
    RelationTooLarge(usize, usize),
}

/// A residue class, always stored in `0..modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: i128, modulus: u64) -> Result<Self, ElementError> {
        if modulus == 0 {
            return Err(ElementError::ZeroModulus);
        }
        let value = value.rem_euclid(modulus as i128) as u64;
        Ok(Residue { value, modulus })
    }

    pub fn from_bigint(value: &BigInt, modulus: u64) -> Result<Self, ElementError> {
        if modulus == 0 {
            return Err(ElementError::ZeroModulus);
        }
        let m = BigInt::from(modulus);
        let r = ((value % &m) + &m) % &m;
        let v: u64 = r.try_into().expect("reduced residue fits in u64");
        Ok(Residue { value: v, modulus })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn add(self, o: Residue) -> Residue {
        let v = (self.value as u128 + o.value as u128) % self.modulus as u128;
        Residue { value: v as u64, modulus: self.modulus }
    }

    fn mul(self, o: Residue) -> Residue {
        let v = (self.value as u128 * o.value as u128) % self.modulus as u128;
        Residue { value: v as u64, modulus: self.modulus }
    }
}

/// A partial function `{0..dom} -> {0..cod}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialFn {
    cod: usize,
    map: Vec<Option<usize>>,
}

impl PartialFn {
    pub fn new(map: Vec<Option<usize>>, cod: usize) -> Result<Self, ElementError> {
        if let Some(bad) = map.iter().flatten().find(|&&y| y >= cod) {
            return Err(ElementError::ShapeMismatch(format!("image {bad} outside codomain of size {cod}")));
        }
        Ok(PartialFn { cod, map })
    }

    pub fn nowhere(dom: usize, cod: usize) -> Self {
        PartialFn { cod, map: vec![None; dom] }
    }

    pub fn identity(n: usize) -> Self {
        PartialFn { cod: n, map: (0..n).map(Some).collect() }
    }

    pub fn dom_size(&self) -> usize {
        self.map.len()
    }

    pub fn cod_size(&self) -> usize {
        self.cod
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.map.get(x).copied().flatten()
    }

    pub fn graph(&self) -> &[Option<usize>] {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod];
        for y in self.map.iter().flatten() {
            if seen[*y] {
                return false;
            }
            seen[*y] = true;
        }
        true
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &PartialFn) -> Result<PartialFn, ElementError> {
        if self.cod != g.dom_size() {
            return Err(ElementError::ShapeMismatch(format!(
                "cannot compose {}->{} after {}->{}",
                g.dom_size(),
                g.cod,
                self.dom_size(),
                self.cod
            )));
        }
        Ok(PartialFn { cod: g.cod, map: self.map.iter().map(|y| y.and_then(|y| g.apply(y))).collect() })
    }
}

/// A relation between `{0..rows}` and `{0..cols}`, as a bit matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Relation {
    rows: usize,
    cols: usize,
    bits: u64,
}

impl Relation {
    pub fn new(rows: usize, cols: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, ElementError> {
        if rows * cols > 64 {
            return Err(ElementError::RelationTooLarge(rows, cols));
        }
        let mut bits = 0u64;
        for (x, y) in pairs {
            if x >= rows || y >= cols {
                return Err(ElementError::ShapeMismatch(format!("pair ({x},{y}) outside {rows}x{cols}")));
            }
            bits |= 1 << (x * cols + y);
        }
        Ok(Relation { rows, cols, bits })
    }

    pub(crate) fn from_bits(rows: usize, cols: usize, bits: u64) -> Self {
        Relation { rows, cols, bits }
    }

    pub fn empty(rows: usize, cols: usize) -> Self {
        Relation { rows, cols, bits: 0 }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x < self.rows && y < self.cols && self.bits & (1 << (x * self.cols + y)) != 0
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows).flat_map(move |x| (0..self.cols).map(move |y| (x, y))).filter(|&(x, y)| self.contains(x, y))
    }

    pub fn union(&self, o: &Relation) -> Relation {
        Relation { rows: self.rows, cols: self.cols, bits: self.bits | o.bits }
    }

    /// `g ∘ self`: pairs `(x, z)` with some `y` such that `x self y` and `y g z`.
    pub fn then(&self, g: &Relation) -> Result<Relation, ElementError> {
        if self.cols != g.rows {
            return Err(ElementError::ShapeMismatch(format!(
                "cannot compose {}x{} after {}x{}",
                g.rows, g.cols, self.rows, self.cols
            )));
        }
        let mut out = Relation::empty(self.rows, g.cols);
        for (x, y) in self.pairs() {
            for z in 0..g.cols {
                if g.contains(y, z) {
                    out.bits |= 1 << (x * g.cols + z);
                }
            }
        }
        Ok(out)
    }
}

/// A dense row-major matrix of scalar elements.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Element>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Element>) -> Result<Self, ElementError> {
        if entries.len() != rows * cols {
            return Err(ElementError::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Element>>) -> Result<Self, ElementError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ElementError::ShapeMismatch("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn filled(rows: usize, cols: usize, value: Element) -> Self {
        Matrix { rows, cols, entries: vec![value; rows * cols] }
    }

    pub fn identity(n: usize, zero: Element, one: Element) -> Self {
        let mut m = Matrix::filled(n, n, zero);
        for i in 0..n {
            m.entries[i * n + i] = one.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Element {
        &self.entries[r * self.cols + c]
    }

    /// `self · rhs`.
    pub fn matmul(&self, rhs: &Matrix) -> Result<Matrix, ElementError> {
        if self.cols != rhs.rows {
            return Err(ElementError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = self.get(i, 0).mul(rhs.get(0, j))?;
                for k in 1..self.cols {
                    acc = acc.add(&self.get(i, k).mul(rhs.get(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(Matrix { rows: self.rows, cols: rhs.cols, entries })
    }
}

/// One element of some PCM carrier.
#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    Int(BigInt),
    Rational(BigRational),
    Residue(Residue),
    Complex(Complex64),
    PartialFn(PartialFn),
    Relation(Relation),
    Vector(Vec<BigRational>),
    Matrix(Matrix),
    Pair(Box<Element>, Box<Element>),
    /// Coefficient map of a Cauchy-product arrow, in index hom-set order.
    Coeffs(Vec<Element>),
}

impl Element {
    pub fn int(v: i64) -> Self {
        Element::Int(BigInt::from(v))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Element::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn residue(v: i128, modulus: u64) -> Self {
        Element::Residue(Residue::new(v, modulus).expect("nonzero modulus"))
    }

    pub fn complex(re: f64, im: f64) -> Self {
        Element::Complex(Complex64::new(re, im))
    }

    pub fn pair(a: Element, b: Element) -> Self {
        Element::Pair(Box::new(a), Box::new(b))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Element::Int(_) => "int",
            Element::Rational(_) => "rational",
            Element::Residue(_) => "residue",
            Element::Complex(_) => "complex",
            Element::PartialFn(_) => "partial function",
            Element::Relation(_) => "relation",
            Element::Vector(_) => "vector",
            Element::Matrix(_) => "matrix",
            Element::Pair(..) => "pair",
            Element::Coeffs(_) => "coefficient map",
        }
    }

    fn mismatch(&self, other: &Element) -> ElementError {
        ElementError::Mismatch(self.kind().into(), other.kind().into())
    }

    /// Ring/monoid addition for scalar, vector, matrix and pair elements.
    pub fn add(&self, other: &Element) -> Result<Element, ElementError> {
        Ok(match (self, other) {
            (Element::Int(a), Element::Int(b)) => Element::Int(a + b),
            (Element::Rational(a), Element::Rational(b)) => Element::Rational(a + b),
            (Element::Residue(a), Element::Residue(b)) if a.modulus == b.modulus => Element::Residue(a.add(*b)),
            (Element::Complex(a), Element::Complex(b)) => Element::Complex(a + b),
            (Element::Vector(a), Element::Vector(b)) => {
                if a.len() != b.len() {
                    return Err(ElementError::ShapeMismatch(format!("vectors of length {} and {}", a.len(), b.len())));
                }
                Element::Vector(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (Element::Matrix(a), Element::Matrix(b)) => {
                if a.rows != b.rows || a.cols != b.cols {
                    return Err(ElementError::ShapeMismatch(format!(
                        "adding {}x{} and {}x{}",
                        a.rows, a.cols, b.rows, b.cols
                    )));
                }
                let entries = a.entries.iter().zip(&b.entries).map(|(x, y)| x.add(y)).collect::<Result<_, _>>()?;
                Element::Matrix(Matrix { rows: a.rows, cols: a.cols, entries })
            }
            (Element::Pair(a1, a2), Element::Pair(b1, b2)) => Element::pair(a1.add(b1)?, a2.add(b2)?),
            _ => return Err(self.mismatch(other)),
        })
    }

    /// Ring multiplication for scalars; matrix product `self · other`.
    pub fn mul(&self, other: &Element) -> Result<Element, ElementError> {
        Ok(match (self, other) {
            (Element::Int(a), Element::Int(b)) => Element::Int(a * b),
            (Element::Rational(a), Element::Rational(b)) => Element::Rational(a * b),
            (Element::Residue(a), Element::Residue(b)) if a.modulus == b.modulus => Element::Residue(a.mul(*b)),
            (Element::Complex(a), Element::Complex(b)) => Element::Complex(a * b),
            (Element::Matrix(a), Element::Matrix(b)) => Element::Matrix(a.matmul(b)?),
            (Element::Vector(a), Element::Vector(b)) => {
                if a.len() != b.len() {
                    return Err(ElementError::ShapeMismatch(format!("vectors of length {} and {}", a.len(), b.len())));
                }
                Element::Vector(a.iter().zip(b).map(|(x, y)| x * y).collect())
            }
            _ => return Err(self.mismatch(other)),
        })
    }

    /// Additive unit of the same scalar kind as `self`.
    pub fn zero_like(&self) -> Option<Element> {
        Some(match self {
            Element::Int(_) => Element::Int(BigInt::zero()),
            Element::Rational(_) => Element::Rational(BigRational::zero()),
            Element::Residue(r) => Element::Residue(Residue { value: 0, modulus: r.modulus }),
            Element::Complex(_) => Element::complex(0.0, 0.0),
            _ => return None,
        })
    }

    /// Multiplicative unit of the same scalar kind as `self`.
    pub fn one_like(&self) -> Option<Element> {
        Some(match self {
            Element::Int(_) => Element::Int(BigInt::one()),
            Element::Rational(_) => Element::Rational(BigRational::one()),
            Element::Residue(r) => Element::Residue(Residue::new(1, r.modulus).ok()?),
            Element::Complex(_) => Element::complex(1.0, 0.0),
            _ => return None,
        })
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Element::Complex(z) => z.re.is_finite() && z.im.is_finite(),
            Element::Matrix(m) => m.entries.iter().all(Element::is_finite),
            Element::Pair(a, b) => a.is_finite() && b.is_finite(),
            Element::Coeffs(cs) => cs.iter().all(Element::is_finite),
            _ => true,
        }
    }

    /// Equality up to `eps` on complex components; exact everywhere else.
    pub fn close_to(&self, other: &Element, eps: f64) -> bool {
        match (self, other) {
            (Element::Complex(a), Element::Complex(b)) => (a.re - b.re).abs() <= eps && (a.im - b.im).abs() <= eps,
            (Element::Matrix(a), Element::Matrix(b)) => {
                a.rows == b.rows
                    && a.cols == b.cols
                    && a.entries.iter().zip(&b.entries).all(|(x, y)| x.close_to(y, eps))
            }
            (Element::Pair(a1, a2), Element::Pair(b1, b2)) => a1.close_to(b1, eps) && a2.close_to(b2, eps),
            (Element::Coeffs(a), Element::Coeffs(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.close_to(y, eps))
            }
            _ => self == other,
        }
    }
}

/// Formats a complex number as `a+bi` with 12 fractional digits and an
/// explicit sign on the imaginary part. Components that round to zero print
/// without a minus sign.
pub fn format_complex(z: Complex64) -> String {
    fn clean(x: f64) -> f64 {
        if x.abs() < 5e-13 {
            0.0
        } else {
            x
        }
    }
    format!("{:.12}{:+.12}i", clean(z.re), clean(z.im))
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Int(n) => write!(f, "{n}"),
            Element::Rational(q) => write_rational(f, q),
            Element::Residue(r) => write!(f, "{} mod {}", r.value, r.modulus),
            Element::Complex(z) => f.write_str(&format_complex(*z)),
            Element::PartialFn(p) => {
                f.write_str("pf(")?;
                for (i, y) in p.map.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    match y {
                        Some(y) => write!(f, "{y}")?,
                        None => f.write_str("_")?,
                    }
                }
                f.write_str(")")
            }
            Element::Relation(r) => {
                f.write_str("rel{")?;
                for (i, (x, y)) in r.pairs().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "({x},{y})")?;
                }
                f.write_str("}")
            }
            Element::Vector(v) => {
                f.write_str("(")?;
                for (i, q) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write_rational(f, q)?;
                }
                f.write_str(")")
            }
            Element::Matrix(m) => {
                f.write_str("[")?;
                for r in 0..m.rows {
                    if r > 0 {
                        f.write_str(",")?;
                    }
                    f.write_str("[")?;
                    for c in 0..m.cols {
                        if c > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{}", m.get(r, c))?;
                    }
                    f.write_str("]")?;
                }
                f.write_str("]")
            }
            Element::Pair(a, b) => write!(f, "<{a};{b}>"),
            Element::Coeffs(cs) => {
                f.write_str("coeffs(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}
