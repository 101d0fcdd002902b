use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    cromwell_check, exceptional_framings, framing_window, lemma1_check, pin_convention, theorem_chain, BoundReport,
    KauffmanConvention, PipelineError, VerifyReport,
};
use crate::config::RunConfig;
use crate::diagram::LinkDiagram;
use crate::lattice::LatticePolygon;
use crate::par;
use crate::skein::SkeinEngine;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Congruence,
    Lemma1,
    Theorem,
    Cromwell,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::Congruence, Check::Lemma1, Check::Theorem, Check::Cromwell];

    pub fn name(self) -> &'static str {
        match self {
            Check::Congruence => "congruence",
            Check::Lemma1 => "lemma1",
            Check::Theorem => "theorem",
            Check::Cromwell => "cromwell",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown check `{s}`"))
    }
}

#[derive(Debug, Clone)]
pub struct KnotInput {
    pub id: String,
    pub diagram: LinkDiagram,
    pub crossing_number: usize,
    pub lattice: Option<LatticePolygon>,
}

/// Framings used to pin the convention on the right-handed trefoil.
pub const CALIBRATION_FRAMINGS: [i64; 4] = [-1, 0, 1, 2];

pub fn calibration_convention(engine: &SkeinEngine) -> Result<KauffmanConvention, PipelineError> {
    let trefoil = LinkDiagram::from_dt_code(&[4, 6, 2])?;
    pin_convention(engine, &trefoil, &CALIBRATION_FRAMINGS)
}

pub fn verify_knot(
    engine: &SkeinEngine,
    check: Check,
    conv: &KauffmanConvention,
    input: &KnotInput,
    config: &RunConfig,
) -> Result<BoundReport, PipelineError> {
    let mut report = BoundReport::new(&input.id, input.crossing_number);
    let knot = &input.diagram;
    if check == Check::Cromwell {
        report.cromwell = Some(cromwell_check(engine, knot, input.crossing_number)?);
        return Ok(report);
    }
    report.kauffman_convention = Some(conv.label());
    let exc = exceptional_framings(engine, knot, conv)?;
    report.alpha = Some(exc.alpha);
    report.beta = Some(exc.beta);
    report.remark1_holds = Some(exc.beta - exc.alpha >= input.crossing_number as i64 + 2);
    match check {
        Check::Congruence | Check::Lemma1 => {
            let window = framing_window(knot, &exc, conv, config.framing_window, config.crossing_budget);
            if let (Some(&lo), Some(&hi)) = (window.first(), window.last()) {
                let mut records = lemma1_check(engine, knot, input.crossing_number, lo..=hi, &exc, conv)?;
                records.retain(|r| window.contains(&r.framing));
                if check == Check::Congruence {
                    records.iter_mut().for_each(|r| r.lemma1_holds = None);
                }
                report.framings = records;
            }
        }
        Check::Theorem => {
            let polygon = input.lattice.as_ref().ok_or(PipelineError::MissingEmbedding)?;
            report.chain = Some(theorem_chain(engine, knot, input.crossing_number, polygon, config)?);
        }
        Check::Cromwell => unreachable!("handled above"),
    }
    Ok(report)
}

/// Runs `check` on every input. Knots that fail to complete are listed in
/// the report's `incomplete` field and their errors returned alongside.
pub fn run(check: Check, inputs: &[KnotInput], config: &RunConfig) -> (VerifyReport, Vec<(String, PipelineError)>) {
    let engine = SkeinEngine::new(config.engine());
    let conv = match calibration_convention(&engine) {
        Ok(c) => c,
        Err(e) => {
            let incomplete = inputs.iter().map(|i| format!("{}: {e}", i.id)).collect();
            let errors = inputs.iter().map(|i| (i.id.clone(), e.clone())).collect();
            return (VerifyReport::new(check.name(), config.clone(), Vec::new(), incomplete), errors);
        }
    };
    let results = par::map(config.parallel, inputs, |input| verify_knot(&engine, check, &conv, input, config));
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for (input, result) in inputs.iter().zip(results) {
        match result {
            Ok(r) => reports.push(r),
            Err(e) => errors.push((input.id.clone(), e)),
        }
    }
    let incomplete = errors.iter().map(|(id, e)| format!("{id}: {e}")).collect();
    (VerifyReport::new(check.name(), config.clone(), reports, incomplete), errors)
}
