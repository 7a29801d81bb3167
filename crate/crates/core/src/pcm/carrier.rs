use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::element::{Element, Matrix, PartialFn, Relation};
use crate::report::Grid;

/// Scalar rings used by the one-object and matrix instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarKind {
    Int,
    Rational,
    Residue(u64),
    Complex,
}

impl ScalarKind {
    pub fn zero(&self) -> Element {
        match self {
            ScalarKind::Int => Element::Int(BigInt::zero()),
            ScalarKind::Rational => Element::Rational(BigRational::zero()),
            ScalarKind::Residue(n) => Element::residue(0, *n),
            ScalarKind::Complex => Element::complex(0.0, 0.0),
        }
    }

    pub fn one(&self) -> Element {
        match self {
            ScalarKind::Int => Element::Int(BigInt::one()),
            ScalarKind::Rational => Element::Rational(BigRational::one()),
            ScalarKind::Residue(n) => Element::residue(1, *n),
            ScalarKind::Complex => Element::complex(1.0, 0.0),
        }
    }

    pub fn from_i64(&self, v: i64) -> Element {
        match self {
            ScalarKind::Int => Element::int(v),
            ScalarKind::Rational => Element::ratio(v, 1),
            ScalarKind::Residue(n) => Element::residue(v as i128, *n),
            ScalarKind::Complex => Element::complex(v as f64, 0.0),
        }
    }

    pub fn carrier(&self) -> Carrier {
        match self {
            ScalarKind::Int => Carrier::Int,
            ScalarKind::Rational => Carrier::Rational,
            ScalarKind::Residue(n) => Carrier::Residue(*n),
            ScalarKind::Complex => Carrier::Complex,
        }
    }

    /// Small values for building matrix grids.
    fn entry_pool(&self) -> Vec<Element> {
        match self {
            ScalarKind::Complex => vec![
                Element::complex(0.0, 0.0),
                Element::complex(1.0, 0.0),
                Element::complex(-1.0, 0.0),
                Element::complex(0.0, 1.0),
                Element::complex(0.5, -0.25),
            ],
            ScalarKind::Rational => {
                vec![Element::ratio(0, 1), Element::ratio(1, 1), Element::ratio(-1, 1), Element::ratio(1, 2)]
            }
            other => vec![other.from_i64(0), other.from_i64(1), other.from_i64(-1), other.from_i64(2)],
        }
    }
}

impl fmt::Display for ScalarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarKind::Int => f.write_str("int"),
            ScalarKind::Rational => f.write_str("rational"),
            ScalarKind::Residue(n) => write!(f, "mod:{n}"),
            ScalarKind::Complex => f.write_str("complex"),
        }
    }
}

/// Shape description of a PCM carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Carrier {
    Int,
    Rational,
    Residue(u64),
    Complex,
    PartialFn { dom: usize, cod: usize, injective: bool },
    Relation { rows: usize, cols: usize },
    Vector { dim: usize },
    Matrix { rows: usize, cols: usize, scalar: ScalarKind },
    Pair(Box<Carrier>, Box<Carrier>),
    Coeffs { len: usize, base: Box<Carrier> },
}

const GRID_CAP: usize = 64;

impl Carrier {
    pub fn contains(&self, e: &Element) -> bool {
        match (self, e) {
            (Carrier::Int, Element::Int(_)) => true,
            (Carrier::Rational, Element::Rational(_)) => true,
            (Carrier::Residue(n), Element::Residue(r)) => r.modulus() == *n,
            (Carrier::Complex, Element::Complex(_)) => true,
            (Carrier::PartialFn { dom, cod, injective }, Element::PartialFn(p)) => {
                p.dom_size() == *dom && p.cod_size() == *cod && (!injective || p.is_injective())
            }
            (Carrier::Relation { rows, cols }, Element::Relation(r)) => r.rows() == *rows && r.cols() == *cols,
            (Carrier::Vector { dim }, Element::Vector(v)) => v.len() == *dim,
            (Carrier::Matrix { rows, cols, scalar }, Element::Matrix(m)) => {
                let sc = scalar.carrier();
                m.rows() == *rows && m.cols() == *cols && m.entries().iter().all(|x| sc.contains(x))
            }
            (Carrier::Pair(a, b), Element::Pair(x, y)) => a.contains(x) && b.contains(y),
            (Carrier::Coeffs { len, base }, Element::Coeffs(cs)) => {
                cs.len() == *len && cs.iter().all(|c| base.contains(c))
            }
            _ => false,
        }
    }

    /// A deterministic (given `rng`) grid of sample elements. The zero of
    /// the natural additive structure always comes first.
    pub fn grid(&self, rng: &mut ChaCha8Rng) -> Grid {
        match self {
            Carrier::Int => Grid { elements: [0, 1, -1, 2, -2, 3, -3].map(Element::int).to_vec(), exhaustive: false },
            Carrier::Rational => Grid {
                elements: [(0, 1), (1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (-2, 3), (1, 4), (-3, 4)]
                    .map(|(n, d)| Element::ratio(n, d))
                    .to_vec(),
                exhaustive: false,
            },
            Carrier::Residue(n) => {
                let n = *n;
                if n <= 8 {
                    Grid { elements: (0..n).map(|v| Element::residue(v as i128, n)).collect(), exhaustive: true }
                } else {
                    let mut vals: Vec<i128> = vec![0, 1, -1, 2, -2, 3, -3, 4];
                    vals.dedup_by_key(|v| v.rem_euclid(n as i128));
                    Grid { elements: vals.into_iter().map(|v| Element::residue(v, n)).collect(), exhaustive: false }
                }
            }
            Carrier::Complex => Grid {
                elements: [(0.0, 0.0), (1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (1.0, 1.0), (0.5, -0.25)]
                    .map(|(re, im)| Element::complex(re, im))
                    .to_vec(),
                exhaustive: false,
            },
            Carrier::PartialFn { dom, cod, injective } => {
                let exhaustive = (*cod + 1).checked_pow(*dom as u32).is_some_and(|t| t <= GRID_CAP);
                let elems: Vec<PartialFn> = if exhaustive {
                    all_partial_fns(*dom, *cod).into_iter().filter(|p| !injective || p.is_injective()).collect()
                } else {
                    sample_partial_fns(*dom, *cod, *injective, 32, rng)
                };
                Grid { elements: elems.into_iter().map(Element::PartialFn).collect(), exhaustive }
            }
            Carrier::Relation { rows, cols } => {
                let cells = rows * cols;
                if cells <= 4 {
                    Grid {
                        elements: (0..1u64 << cells)
                            .map(|b| Element::Relation(Relation::from_bits(*rows, *cols, b)))
                            .collect(),
                        exhaustive: true,
                    }
                } else {
                    let mask = if cells == 64 { u64::MAX } else { (1u64 << cells) - 1 };
                    let mut elements = vec![Element::Relation(Relation::empty(*rows, *cols))];
                    for _ in 0..15 {
                        // sparse relations keep compositions interesting
                        let b = rng.gen::<u64>() & rng.gen::<u64>() & mask;
                        elements.push(Element::Relation(Relation::from_bits(*rows, *cols, b)));
                    }
                    Grid { elements, exhaustive: false }
                }
            }
            Carrier::Vector { dim } => Grid { elements: vector_grid(*dim, rng), exhaustive: false },
            Carrier::Matrix { rows, cols, scalar } => {
                let pool = scalar.entry_pool();
                let mut elements = vec![Element::Matrix(Matrix::filled(*rows, *cols, scalar.zero()))];
                if rows == cols {
                    elements.push(Element::Matrix(Matrix::identity(*rows, scalar.zero(), scalar.one())));
                }
                while elements.len() < 7 {
                    let entries = (0..rows * cols).map(|_| pool.choose(rng).expect("nonempty").clone()).collect();
                    elements.push(Element::Matrix(Matrix::new(*rows, *cols, entries).expect("shape")));
                }
                Grid { elements, exhaustive: false }
            }
            Carrier::Pair(a, b) => {
                let ga = a.grid(rng);
                let gb = b.grid(rng);
                let mut elements = Vec::new();
                for x in ga.elements.iter().take(3) {
                    for y in gb.elements.iter().take(3) {
                        elements.push(Element::pair(x.clone(), y.clone()));
                    }
                }
                Grid { elements, exhaustive: false }
            }
            Carrier::Coeffs { len, base } => {
                let g = base.grid(rng).elements;
                let zero = g[0].clone();
                let mut elements = vec![Element::Coeffs(vec![zero.clone(); *len])];
                for _ in 0..6 {
                    let cs = (0..*len)
                        .map(|_| if rng.gen_bool(0.5) { zero.clone() } else { g.choose(rng).expect("nonempty").clone() })
                        .collect();
                    elements.push(Element::Coeffs(cs));
                }
                Grid { elements, exhaustive: false }
            }
        }
    }

    /// Uniformly random element for sampled checks, drawn from a widened pool.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Element {
        match self {
            Carrier::Int => Element::int(rng.gen_range(-5..=5)),
            Carrier::Rational => Element::ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4)),
            Carrier::Residue(n) => Element::residue(rng.gen_range(0..*n) as i128, *n),
            Carrier::Complex => {
                Element::complex(rng.gen_range(-8..=8) as f64 / 4.0, rng.gen_range(-8..=8) as f64 / 4.0)
            }
            _ => {
                let g = self.grid(rng).elements;
                g.choose(rng).expect("nonempty grid").clone()
            }
        }
    }
}

fn all_partial_fns(dom: usize, cod: usize) -> Vec<PartialFn> {
    let base = cod + 1;
    let total = base.pow(dom as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let map = (0..dom)
            .map(|_| {
                let d = c % base;
                c /= base;
                if d == 0 {
                    None
                } else {
                    Some(d - 1)
                }
            })
            .collect();
        out.push(PartialFn::new(map, cod).expect("in range"));
    }
    out
}

fn sample_partial_fns(dom: usize, cod: usize, injective: bool, count: usize, rng: &mut ChaCha8Rng) -> Vec<PartialFn> {
    let mut out = vec![PartialFn::nowhere(dom, cod)];
    let mut attempts = 0;
    while out.len() < count && attempts < count * 50 {
        attempts += 1;
        let map: Vec<Option<usize>> = (0..dom)
            .map(|_| if rng.gen_bool(0.6) { None } else { Some(rng.gen_range(0..cod)) })
            .collect();
        let p = PartialFn::new(map, cod).expect("in range");
        if (!injective || p.is_injective()) && !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn vector_grid(dim: usize, rng: &mut ChaCha8Rng) -> Vec<Element> {
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let mut out = vec![Element::Vector(vec![q(0, 1); dim])];
    if dim == 1 {
        for (n, d) in [(1, 2), (-1, 2), (1, 4), (-1, 4), (1, 1), (1, 3)] {
            out.push(Element::Vector(vec![q(n, d)]));
        }
        return out;
    }
    let mut e = vec![q(0, 1); dim];
    e[0] = q(1, 2);
    out.push(Element::Vector(e));
    let mut alt: Vec<BigRational> = (0..dim).map(|i| if i % 2 == 0 { q(1, 2) } else { q(-1, 2) }).collect();
    out.push(Element::Vector(alt.clone()));
    alt.iter_mut().for_each(|x| *x = -x.clone());
    out.push(Element::Vector(alt));
    let pool = [q(-1, 2), q(-1, 4), q(0, 1), q(1, 4), q(1, 2)];
    while out.len() < 7 {
        out.push(Element::Vector((0..dim).map(|_| pool.choose(rng).expect("nonempty").clone()).collect()));
    }
    out
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Carrier::Int => f.write_str("int"),
            Carrier::Rational => f.write_str("rational"),
            Carrier::Residue(n) => write!(f, "mod:{n}"),
            Carrier::Complex => f.write_str("complex"),
            Carrier::PartialFn { dom, cod, injective: false } => write!(f, "pfn:{dom}->{cod}"),
            Carrier::PartialFn { dom, cod, injective: true } => write!(f, "pinj:{dom}->{cod}"),
            Carrier::Relation { rows, cols } => write!(f, "rel:{rows}x{cols}"),
            Carrier::Vector { dim } => write!(f, "vec:{dim}"),
            Carrier::Matrix { rows, cols, scalar } => write!(f, "matrix:{rows}x{cols}:{scalar}"),
            Carrier::Pair(a, b) => write!(f, "({a})x({b})"),
            Carrier::Coeffs { len, base } => write!(f, "coeffs:{len}:{base}"),
        }
    }
}
