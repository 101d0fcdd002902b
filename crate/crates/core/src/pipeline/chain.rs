use serde::{Deserialize, Serialize};

use super::{mfw_bound, require_knot, PipelineError};
use crate::config::RunConfig;
use crate::diagram::LinkDiagram;
use crate::lattice::{
    insert_kink, measure_linking, project_with, select_special_edge, LatticeLink, LatticePolygon, Point, SpecialEdge,
    DEFAULT_DIRECTION,
};
use crate::poly::LaurentPoly2;
use crate::skein::{EngineConfig, SkeinEngine, SkeinError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chirality {
    Same,
    Mirror,
}

/// Where a satellite polynomial came from. Reverse parallels are determined
/// by their linking number, so the diagrammatic reverse parallel with the
/// measured linking number always gives the polynomial; the projected
/// lattice link is used as well whenever its skein computation fits the
/// budget, and must agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolyRoute {
    Projection,
    Diagrammatic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatelliteRecord {
    pub length: usize,
    pub linking_number: i64,
    pub projected_crossings: usize,
    pub route: PolyRoute,
    pub homfly: LaurentPoly2,
    pub breadth_v: i32,
    pub mfw_bound: i64,
}

impl SatelliteRecord {
    /// A lattice link of length `n` has braid index at most `n`.
    pub fn length_bounds_braid(&self) -> bool {
        self.length as i64 >= self.mfw_bound
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KinkRecord {
    pub sign: i64,
    pub edge: (Point, Point),
    pub linking_shift: i64,
    pub satellite: SatelliteRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub expression: String,
    pub value: f64,
}

impl LowerBound {
    fn ratio(numerator: usize, denominator: &str) -> Self {
        let d: f64 = denominator.parse().expect("constant denominators");
        Self { expression: format!("{numerator}/{denominator}"), value: numerator as f64 / d }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub lattice_length: usize,
    pub chirality: Chirality,
    pub special_edge: SpecialEdge,
    pub pushoff: SatelliteRecord,
    pub kinks: Vec<KinkRecord>,
    /// `2 Cr + 2`.
    pub breadth_target: i64,
    /// For each kink, the push-off or the kinked link reaches the target.
    pub either_or_holds: bool,
    pub kinked_length: usize,
    pub kinked_length_bounds_mfw: bool,
    pub four_l_plus_6: i64,
    /// `4ℓ + 6 ≥ Cr`.
    pub chain_holds: bool,
    /// `4ℓ + 6 ≤ 4.25ℓ`, which needs `ℓ ≥ 24`.
    pub upper_holds: bool,
    pub lower_bounds: Vec<LowerBound>,
    pub improved_lower_bounds: Option<Vec<LowerBound>>,
}

impl ChainReport {
    pub fn holds(&self) -> bool {
        self.either_or_holds && self.kinked_length_bounds_mfw && self.chain_holds && self.upper_holds
    }
}

/// Direct skein computations on projected lattice links get a reduced budget
/// so that a badly tangled projection falls back quickly.
const DIRECT_BUDGET_DIVISOR: u64 = 10;

fn satellite(
    engine: &SkeinEngine,
    direct: &SkeinEngine,
    knot: &LinkDiagram,
    link: &LatticeLink,
    config: &RunConfig,
) -> Result<SatelliteRecord, PipelineError> {
    let opts = config.projection();
    let linking_number = measure_linking(link, &opts)?;
    let homfly = engine.homfly(&knot.reverse_parallel(linking_number)?)?;
    let projected = project_with(link, DEFAULT_DIRECTION, &opts)?.simplify();
    let route = match direct.homfly(&projected) {
        Ok(p) if p == homfly => PolyRoute::Projection,
        Ok(_) => return Err(PipelineError::SatelliteMismatch { linking: linking_number }),
        Err(SkeinError::ResourceLimit { .. }) => PolyRoute::Diagrammatic,
    };
    Ok(SatelliteRecord {
        length: link.length(),
        linking_number,
        projected_crossings: projected.crossing_count(),
        route,
        breadth_v: homfly.breadth_v()?,
        mfw_bound: mfw_bound(&homfly)?,
        homfly,
    })
}

/// Runs the lattice length chain for `knot` on the embedding `polygon`.
pub fn theorem_chain(
    engine: &SkeinEngine,
    knot: &LinkDiagram,
    crossing_number: usize,
    polygon: &LatticePolygon,
    config: &RunConfig,
) -> Result<ChainReport, PipelineError> {
    require_knot(knot)?;
    let opts = config.projection();
    let ell = polygon.len();

    let embedded = project_with(&LatticeLink::knot(polygon.clone()), DEFAULT_DIRECTION, &opts)?.simplify();
    let (p_lattice, p_knot) = (engine.homfly(&embedded)?, engine.homfly(knot)?);
    let (chirality, matched) = if p_lattice == p_knot {
        (Chirality::Same, knot.clone())
    } else if p_lattice == p_knot.mirror_homfly() {
        (Chirality::Mirror, knot.mirror())
    } else {
        return Err(PipelineError::EmbeddingMismatch);
    };

    let direct = SkeinEngine::new(EngineConfig {
        node_budget: (config.node_budget / DIRECT_BUDGET_DIVISOR).max(1),
        ..config.engine()
    });
    let special_edge = select_special_edge(polygon);
    let pushoff_link = polygon.pushoff_diagonal();
    let pushoff = satellite(engine, &direct, &matched, &pushoff_link, config)?;
    let mut kinks = Vec::new();
    for sign in [1, -1] {
        let kinked = insert_kink(&pushoff_link, sign)?;
        let satellite = satellite(engine, &direct, &matched, &kinked.link, config)?;
        kinks.push(KinkRecord {
            sign,
            edge: kinked.edge,
            linking_shift: satellite.linking_number - pushoff.linking_number,
            satellite,
        });
    }

    let cr = crossing_number as i64;
    let breadth_target = 2 * cr + 2;
    let either_or_holds = kinks.iter().all(|k| {
        k.linking_shift == k.sign
            && (pushoff.breadth_v as i64 >= breadth_target || k.satellite.breadth_v as i64 >= breadth_target)
    });
    let kinked_length = 4 * ell + 8;
    let kinked_length_bounds_mfw = pushoff.length_bounds_braid()
        && kinks.iter().all(|k| k.satellite.length == kinked_length && k.satellite.length_bounds_braid());
    let l = ell as i64;
    let four_l_plus_6 = 4 * l + 6;
    let lower_bounds = vec![LowerBound::ratio(ell, "14"), LowerBound::ratio(crossing_number, "59.5")];
    let improved_lower_bounds = config
        .improved_constants
        .then(|| vec![LowerBound::ratio(ell, "12"), LowerBound::ratio(crossing_number, "51")]);
    Ok(ChainReport {
        lattice_length: ell,
        chirality,
        special_edge,
        pushoff,
        kinks,
        breadth_target,
        either_or_holds,
        kinked_length,
        kinked_length_bounds_mfw,
        four_l_plus_6,
        chain_holds: four_l_plus_6 >= cr,
        upper_holds: l >= 24 && 4 * four_l_plus_6 <= 17 * l,
        lower_bounds,
        improved_lower_bounds,
    })
}
