//! The verifiable steps of the lower bound: the mod-2 congruence between
//! reverse parallels and the Kauffman polynomial, the exceptional framings,
//! the breadth bound for all other framings, the braid-index bound, and the
//! lattice length chain.

mod chain;
mod report;
mod verify;

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{DiagramError, LinkDiagram};
use crate::lattice::LatticeError;
use crate::par;
use crate::poly::{LaurentPoly2, PolyError, Ring};
use crate::skein::{SkeinEngine, SkeinError};

pub use chain::{theorem_chain, ChainReport, Chirality, KinkRecord, LowerBound, PolyRoute, SatelliteRecord};
pub use report::{BoundReport, CromwellRecord, FramingRecord, VerifyReport, CSV_HEADER};
pub use verify::{calibration_convention, run, verify_knot, Check, KnotInput, CALIBRATION_FRAMINGS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Skein(#[from] SkeinError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("extreme v-exponent {exponent} of the annulus polynomial is odd")]
    OddExtremeExponent { exponent: i32 },
    #[error("v-breadth {breadth} of a link polynomial should be even")]
    UnexpectedParity { breadth: i32 },
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("lattice embedding is not the expected knot or its mirror")]
    EmbeddingMismatch,
    #[error("satellite polynomial from the lattice disagrees with the reverse parallel of linking number {linking}")]
    SatelliteMismatch { linking: i64 },
    #[error("no lattice embedding available")]
    MissingEmbedding,
    #[error("no Kauffman convention satisfies the congruence on the calibration knot")]
    ConventionNotFound,
}

/// How the congruence reads the Kauffman polynomial and the framing: the
/// framing `f` entering the congruence equals `framing_sign` times the
/// linking number, and `F(v^{-1}, z)` replaces `F` when `invert_v` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KauffmanConvention {
    pub framing_sign: i64,
    pub invert_v: bool,
}

impl KauffmanConvention {
    /// Tried in this order when pinning.
    pub const CANDIDATES: [Self; 4] = [
        Self { framing_sign: 1, invert_v: false },
        Self { framing_sign: 1, invert_v: true },
        Self { framing_sign: -1, invert_v: false },
        Self { framing_sign: -1, invert_v: true },
    ];

    pub fn label(&self) -> String {
        let poly = if self.invert_v { "F(1/v,z)" } else { "F(v,z)" };
        let frame = if self.framing_sign > 0 { "f=lk" } else { "f=-lk" };
        format!("{poly}; {frame}")
    }

    /// Linking number of the reverse parallel with congruence framing `f`.
    pub fn linking_for(&self, f: i64) -> i64 {
        self.framing_sign * f
    }

    fn kauffman_mod2(&self, kauffman: &LaurentPoly2) -> LaurentPoly2 {
        let k = kauffman.reduce_mod2();
        if self.invert_v {
            k.invert_v()
        } else {
            k
        }
    }
}

fn require_knot(k: &LinkDiagram) -> Result<(), PipelineError> {
    match k.component_count() {
        1 => Ok(()),
        n => Err(DiagramError::NotAKnot(n).into()),
    }
}

/// `(1 + (v^{-2}+v^2)/z^2) F̃(v^{-2}, z^2)` over GF(2).
pub fn annulus_polynomial(kauffman: &LaurentPoly2, conv: &KauffmanConvention) -> LaurentPoly2 {
    conv.kauffman_mod2(kauffman).substitute_sq().mul_annulus_factor()
}

/// Both sides of the congruence for the reverse parallel with congruence
/// framing `f`, given the knot's Kauffman polynomial.
pub fn congruence_sides(
    engine: &SkeinEngine,
    knot: &LinkDiagram,
    kauffman: &LaurentPoly2,
    f: i64,
    conv: &KauffmanConvention,
) -> Result<(LaurentPoly2, LaurentPoly2), PipelineError> {
    let link = knot.reverse_parallel(conv.linking_for(f))?;
    let lhs = engine.homfly(&link)?.mul_delta_prefactor()?.reduce_mod2();
    let rhs = &annulus_polynomial(kauffman, conv).mul_monomial(1, (-2 * f) as i32, 0) + &LaurentPoly2::one(Ring::Gf2);
    Ok((lhs, rhs))
}

pub fn rudolph_check(
    engine: &SkeinEngine,
    knot: &LinkDiagram,
    f: i64,
    conv: &KauffmanConvention,
) -> Result<bool, PipelineError> {
    require_knot(knot)?;
    let kauffman = engine.kauffman(knot)?;
    let (lhs, rhs) = congruence_sides(engine, knot, &kauffman, f, conv)?;
    Ok(lhs == rhs)
}

/// The first candidate convention under which the congruence holds for
/// every framing in `framings` on `knot`.
pub fn pin_convention(
    engine: &SkeinEngine,
    knot: &LinkDiagram,
    framings: &[i64],
) -> Result<KauffmanConvention, PipelineError> {
    require_knot(knot)?;
    let kauffman = engine.kauffman(knot)?;
    for conv in KauffmanConvention::CANDIDATES {
        let mut all = true;
        for &f in framings {
            let (lhs, rhs) = congruence_sides(engine, knot, &kauffman, f, &conv)?;
            if lhs != rhs {
                all = false;
                break;
            }
        }
        if all {
            log::info!("pinned Kauffman convention {}", conv.label());
            return Ok(conv);
        }
        log::debug!("convention {} fails the congruence", conv.label());
    }
    Err(PipelineError::ConventionNotFound)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalFramings {
    pub alpha: i64,
    pub beta: i64,
    pub source_poly: LaurentPoly2,
}

pub fn exceptional_framings_from(
    kauffman: &LaurentPoly2,
    conv: &KauffmanConvention,
) -> Result<ExceptionalFramings, PipelineError> {
    let source_poly = annulus_polynomial(kauffman, conv);
    let (lo, hi) = match (source_poly.min_v(), source_poly.max_v()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(PipelineError::ZeroPolynomial),
    };
    for exponent in [lo, hi] {
        if exponent % 2 != 0 {
            return Err(PipelineError::OddExtremeExponent { exponent });
        }
    }
    Ok(ExceptionalFramings { alpha: (lo / 2) as i64, beta: (hi / 2) as i64, source_poly })
}

pub fn exceptional_framings(
    engine: &SkeinEngine,
    knot: &LinkDiagram,
    conv: &KauffmanConvention,
) -> Result<ExceptionalFramings, PipelineError> {
    require_knot(knot)?;
    exceptional_framings_from(&engine.kauffman(knot)?, conv)
}

/// Braid index lower bound `breadth_v/2 + 1`.
pub fn mfw_bound(p: &LaurentPoly2) -> Result<i64, PipelineError> {
    let breadth = p.breadth_v().map_err(|_| PipelineError::ZeroPolynomial)?;
    if breadth % 2 != 0 {
        return Err(PipelineError::UnexpectedParity { breadth });
    }
    Ok(breadth as i64 / 2 + 1)
}

/// Crossings of the reverse parallel of `knot` with linking number `lk`.
pub fn satellite_crossings(knot: &LinkDiagram, lk: i64) -> usize {
    4 * knot.crossing_count() + 2 * (lk + knot.writhe()).unsigned_abs() as usize
}

/// `[α-2, β+2]`, or `window` when given, keeping only framings whose
/// satellite fits the crossing budget.
pub fn framing_window(
    knot: &LinkDiagram,
    exc: &ExceptionalFramings,
    conv: &KauffmanConvention,
    window: Option<(i64, i64)>,
    crossing_budget: usize,
) -> Vec<i64> {
    let (lo, hi) = window.unwrap_or((exc.alpha - 2, exc.beta + 2));
    (lo..=hi).filter(|&f| satellite_crossings(knot, conv.linking_for(f)) <= crossing_budget).collect()
}

/// Computes one framing's record: satellite polynomial, breadth, MFW bound
/// and both checks.
pub fn framing_record(
    engine: &SkeinEngine,
    knot: &LinkDiagram,
    crossing_number: usize,
    kauffman: &LaurentPoly2,
    exc: &ExceptionalFramings,
    conv: &KauffmanConvention,
    f: i64,
) -> Result<FramingRecord, PipelineError> {
    let lk = conv.linking_for(f);
    let link = knot.reverse_parallel(lk)?;
    let p = engine.homfly(&link)?;
    let lhs = p.mul_delta_prefactor()?.reduce_mod2();
    let rhs = &annulus_polynomial(kauffman, conv).mul_monomial(1, (-2 * f) as i32, 0) + &LaurentPoly2::one(Ring::Gf2);
    let breadth = p.breadth_v()?;
    let exceptional = f == exc.alpha || f == exc.beta;
    let bound = 2 * crossing_number as i32 + 2;
    Ok(FramingRecord {
        framing: f,
        linking_number: lk,
        crossings: link.crossing_count(),
        breadth_v: breadth,
        mfw_bound: mfw_bound(&p)?,
        exceptional,
        lemma1_holds: (!exceptional).then_some(breadth >= bound),
        congruence_holds: lhs == rhs,
    })
}

/// Breadth bound `breadth_v(P) >= 2Cr + 2` across a window of framings, computed independently per framing
/// and returned sorted by framing.
pub fn lemma1_check(
    engine: &SkeinEngine,
    knot: &LinkDiagram,
    crossing_number: usize,
    window: RangeInclusive<i64>,
    exc: &ExceptionalFramings,
    conv: &KauffmanConvention,
) -> Result<Vec<FramingRecord>, PipelineError> {
    require_knot(knot)?;
    let kauffman = engine.kauffman(knot)?;
    let framings: Vec<i64> = window.collect();
    let records = par::map(engine.config().parallel, &framings, |&f| {
        framing_record(engine, knot, crossing_number, &kauffman, exc, conv, f)
    });
    records.into_iter().collect()
}

pub fn cromwell_check(
    engine: &SkeinEngine,
    knot: &LinkDiagram,
    crossing_number: usize,
) -> Result<CromwellRecord, PipelineError> {
    require_knot(knot)?;
    let breadth = engine.kauffman(knot)?.reduce_mod2().breadth_v()?;
    Ok(CromwellRecord { breadth_v_mod2: breadth, crossing_number, holds: breadth as i64 >= crossing_number as i64 })
}
