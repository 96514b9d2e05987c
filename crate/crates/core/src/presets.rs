//! The four algebra families used throughout: the rank-two Jordan-type
//! Nichols algebra R over GF(p), its bosonization R#kG written in the
//! generators w < x < y with w = g - 1, the 27-dimensional liftings
//! H(eps, mu, tau) over GF(3), and commutative truncated polynomial rings.
//! Spelled once here and reused by every suite and the CLI.

use std::collections::HashMap;

use thiserror::Error;

use crate::freealg::{parse_poly, Alphabet, NcPoly};
use crate::gfp::{FieldError, Fp};
use crate::rewrite::{Presentation, PresentationError};

#[derive(Debug, Error)]
pub enum PresetError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("preset requires an odd prime, got {0}")]
    EvenCharacteristic(u64),
    #[error("group order {q} must be a positive multiple of p = {p}")]
    BadGroupOrder { p: u64, q: u64 },
    #[error("eps must be 0 or 1, got {0}")]
    BadEps(u64),
    #[error("truncation exponents must be at least 2, got {0}")]
    BadExponent(usize),
    #[error("internal preset relation failed to parse: {0}")]
    Relation(String),
}

fn build(
    names: Vec<&str>,
    field: Fp,
    params: &HashMap<String, u64>,
    rels: &[String],
) -> Result<Presentation, PresetError> {
    let alphabet = Alphabet::new(names).expect("preset alphabet");
    let relations: Result<Vec<NcPoly>, _> = rels
        .iter()
        .map(|r| parse_poly(r, &alphabet, field, params))
        .collect();
    let relations = relations.map_err(|e| PresetError::Relation(e.to_string()))?;
    Ok(Presentation::new(alphabet, field, relations)?)
}

/// R = k<x,y> / (x^p, y^p, yx - xy - x^2/2), the p^2-dimensional
/// Jordan-type Nichols algebra; requires odd p.
pub fn nichols(p: u64) -> Result<Presentation, PresetError> {
    let field = Fp::new(p)?;
    if p == 2 {
        return Err(PresetError::EvenCharacteristic(p));
    }
    build(
        vec!["x", "y"],
        field,
        &HashMap::new(),
        &[
            format!("x^{}", p),
            format!("y^{}", p),
            "y*x - x*y - (1/2)*x^2".to_string(),
        ],
    )
}

/// R#kG for the cyclic group of order q (p | q), presented on w < x < y:
/// (w^q, x^p, y^p, yx - xy - x^2/2, xw - wx, yw - wy - wx - x).
pub fn bosonization(p: u64, q: u64) -> Result<Presentation, PresetError> {
    let field = Fp::new(p)?;
    if p == 2 {
        return Err(PresetError::EvenCharacteristic(p));
    }
    if q == 0 || q % p != 0 {
        return Err(PresetError::BadGroupOrder { p, q });
    }
    build(
        vec!["w", "x", "y"],
        field,
        &HashMap::new(),
        &[
            format!("w^{}", q),
            format!("x^{}", p),
            format!("y^{}", p),
            "y*x - x*y - (1/2)*x^2".to_string(),
            "x*w - w*x".to_string(),
            "y*w - w*y - w*x - x".to_string(),
        ],
    )
}

/// The 27-dimensional liftings H(eps, mu, tau) over GF(3) on w < x < y:
///   w^3 = 0,  x^3 = eps x,  y^3 = -eps y^2 - (mu eps - tau - mu^2) y,
///   yw - wy = wx + x - (mu - eps)(w^2 + w),
///   xw - wx = eps (w^2 + w),
///   yx - xy = -x^2 + (mu + eps) x + eps y - tau (w^2 - w).
pub fn h27(eps: u64, mu: u64, tau: u64) -> Result<Presentation, PresetError> {
    let field = Fp::new(3)?;
    let eps = eps % 3;
    if eps > 1 {
        return Err(PresetError::BadEps(eps));
    }
    let mut params = HashMap::new();
    params.insert("eps".to_string(), eps);
    params.insert("mu".to_string(), mu % 3);
    params.insert("tau".to_string(), tau % 3);
    build(
        vec!["w", "x", "y"],
        field,
        &params,
        &[
            "w^3".to_string(),
            "x^3 - eps*x".to_string(),
            "y^3 + eps*y^2 + (mu*eps - tau - mu^2)*y".to_string(),
            "y*w - w*y - w*x - x + (mu - eps)*(w^2 + w)".to_string(),
            "x*w - w*x - eps*(w^2 + w)".to_string(),
            "y*x - x*y + x^2 - (mu + eps)*x - eps*y + tau*(w^2 - w)".to_string(),
        ],
    )
}

/// k[w,x,y] / (w^m1, x^m2, y^m3) with commuting generators.
pub fn truncated(exps: [usize; 3], p: u64) -> Result<Presentation, PresetError> {
    let field = Fp::new(p)?;
    for &m in &exps {
        if m < 2 {
            return Err(PresetError::BadExponent(m));
        }
    }
    build(
        vec!["w", "x", "y"],
        field,
        &HashMap::new(),
        &[
            format!("w^{}", exps[0]),
            format!("x^{}", exps[1]),
            format!("y^{}", exps[2]),
            "x*w - w*x".to_string(),
            "y*w - w*y".to_string(),
            "y*x - x*y".to_string(),
        ],
    )
}
