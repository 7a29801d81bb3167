use std::sync::Arc;

use super::instances::{
    matrix_category, partial_fn_category, partial_injection_category, relation_category, semiring_category,
    unit_ball_category, SemiringCategory,
};
use super::{PcmCatError, PcmCategory};
use crate::pcm::{Norm, ScalarKind};

/// Largest size parameter accepted in a descriptor. Keeps hom-set carriers
/// within the relation bit width and law checks at desk scale.
const MAX_PARAM: usize = 8;

fn bad(desc: &str, why: impl Into<String>) -> PcmCatError {
    PcmCatError::BadDescriptor(desc.to_owned(), why.into())
}

fn small(desc: &str, s: &str) -> Result<usize, PcmCatError> {
    let n: usize = s.trim().parse().map_err(|_| bad(desc, format!("`{s}` is not a positive integer")))?;
    if n == 0 || n > MAX_PARAM {
        return Err(bad(desc, format!("{n} is outside 1..={MAX_PARAM}")));
    }
    Ok(n)
}

/// Builds a shipped PCM-category from its descriptor:
/// `int`, `rational`, `mod:<n>`, `complex`, `matrix:<d1,d2,...>[:complex]`,
/// `pfn:<n>`, `pinj-overlap:<n>`, `rel:<n>`, `kbounded:<K>`,
/// `unitball:<dim>:<l1|l2|linf>`.
pub fn parse_base(desc: &str) -> Result<Arc<dyn PcmCategory>, PcmCatError> {
    let desc = desc.trim();
    let (head, rest) = match desc.split_once(':') {
        Some((h, r)) => (h, Some(r)),
        None => (desc, None),
    };
    let cat: Arc<dyn PcmCategory> = match (head, rest) {
        ("int", None) => Arc::new(semiring_category(ScalarKind::Int)?),
        ("rational", None) => Arc::new(semiring_category(ScalarKind::Rational)?),
        ("complex", None) => Arc::new(semiring_category(ScalarKind::Complex)?),
        ("mod", Some(n)) => {
            let n: u64 = n.trim().parse().map_err(|_| bad(desc, "modulus must be a positive integer"))?;
            if !(2..=1 << 32).contains(&n) {
                return Err(bad(desc, "modulus must lie in 2..=2^32"));
            }
            Arc::new(semiring_category(ScalarKind::Residue(n))?)
        }
        ("matrix", Some(spec)) => {
            let (dims, scalar) = match spec.split_once(':') {
                Some((d, "complex")) => (d, ScalarKind::Complex),
                Some((d, "rational")) => (d, ScalarKind::Rational),
                Some((_, s)) => return Err(bad(desc, format!("unknown scalar `{s}`"))),
                None => (spec, ScalarKind::Rational),
            };
            let dims = dims.split(',').map(|d| small(desc, d)).collect::<Result<Vec<_>, _>>()?;
            Arc::new(matrix_category(&dims, scalar)?)
        }
        ("pfn", Some(n)) => Arc::new(partial_fn_category(small(desc, n)?)?),
        ("pinj-overlap", Some(n)) => Arc::new(partial_injection_category(small(desc, n)?)?),
        ("rel", Some(n)) => Arc::new(relation_category(small(desc, n)?)?),
        ("kbounded", Some(k)) => {
            let k: usize = k.trim().parse().map_err(|_| bad(desc, "K must be a positive integer"))?;
            if k == 0 {
                return Err(bad(desc, "K must be positive"));
            }
            Arc::new(SemiringCategory::k_bounded(ScalarKind::Int, k)?)
        }
        ("unitball", Some(spec)) => {
            let (dim, norm) = spec.split_once(':').ok_or_else(|| bad(desc, "expected unitball:<dim>:<norm>"))?;
            let norm = match norm {
                "l1" => Norm::L1,
                "l2" => Norm::L2,
                "linf" => Norm::LInf,
                other => return Err(bad(desc, format!("unknown norm `{other}`"))),
            };
            Arc::new(unit_ball_category(small(desc, dim)?, norm)?)
        }
        _ => return Err(bad(desc, "unknown descriptor")),
    };
    Ok(cat)
}
