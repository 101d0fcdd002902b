use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::ChainReport;
use crate::config::RunConfig;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FramingRecord {
    /// Framing as it enters the congruence.
    pub framing: i64,
    pub linking_number: i64,
    pub crossings: usize,
    pub breadth_v: i32,
    pub mfw_bound: i64,
    pub exceptional: bool,
    /// `None` at the exceptional framings, where nothing is claimed.
    pub lemma1_holds: Option<bool>,
    pub congruence_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CromwellRecord {
    pub breadth_v_mod2: i32,
    pub crossing_number: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub knot: String,
    pub crossing_number: usize,
    pub kauffman_convention: Option<String>,
    pub alpha: Option<i64>,
    pub beta: Option<i64>,
    /// `β - α ≥ Cr + 2`.
    pub remark1_holds: Option<bool>,
    pub cromwell: Option<CromwellRecord>,
    pub framings: Vec<FramingRecord>,
    pub chain: Option<ChainReport>,
}

impl BoundReport {
    pub fn new(knot: &str, crossing_number: usize) -> Self {
        Self {
            knot: knot.to_string(),
            crossing_number,
            kauffman_convention: None,
            alpha: None,
            beta: None,
            remark1_holds: None,
            cromwell: None,
            framings: Vec::new(),
            chain: None,
        }
    }

    /// Whether every check recorded in the report passed.
    pub fn holds(&self) -> bool {
        self.remark1_holds.unwrap_or(true)
            && self.cromwell.as_ref().is_none_or(|c| c.holds)
            && self.framings.iter().all(|r| r.congruence_holds && r.lemma1_holds.unwrap_or(true))
            && self.chain.as_ref().is_none_or(ChainReport::holds)
    }

    /// Human-readable descriptions of every failed check.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let id = &self.knot;
        if self.remark1_holds == Some(false) {
            out.push(format!("{id}: beta - alpha = {} < Cr + 2", self.beta.unwrap_or(0) - self.alpha.unwrap_or(0)));
        }
        if let Some(c) = self.cromwell.as_ref().filter(|c| !c.holds) {
            out.push(format!("{id}: mod-2 Kauffman breadth {} < Cr = {}", c.breadth_v_mod2, c.crossing_number));
        }
        for r in &self.framings {
            if !r.congruence_holds {
                out.push(format!("{id}: congruence fails at framing {}", r.framing));
            }
            if r.lemma1_holds == Some(false) {
                out.push(format!("{id}: breadth {} below 2Cr+2 at framing {}", r.breadth_v, r.framing));
            }
        }
        if let Some(c) = self.chain.as_ref().filter(|c| !c.holds()) {
            out.push(format!(
                "{id}: chain fails (either-or {}, lengths bound braid index {}, 4l+6>=Cr {}, 4l+6<=4.25l {})",
                c.either_or_holds, c.kinked_length_bounds_mfw, c.chain_holds, c.upper_holds
            ));
        }
        out
    }

    /// One row per framing; a knot without framing records gets a single
    /// row with the framing columns left empty.
    fn csv_rows(&self, out: &mut String) {
        let opt = |x: Option<String>| x.unwrap_or_default();
        let knot_cols = format!(
            "{},{},{},{},{},{},{}",
            self.knot,
            self.crossing_number,
            opt(self.alpha.map(|a| a.to_string())),
            opt(self.beta.map(|b| b.to_string())),
            opt(self.remark1_holds.map(|b| b.to_string())),
            opt(self.cromwell.as_ref().map(|c| c.breadth_v_mod2.to_string())),
            opt(self.cromwell.as_ref().map(|c| c.holds.to_string())),
        );
        if self.framings.is_empty() {
            let _ = writeln!(out, "{knot_cols},,,,,,,,");
        }
        for r in &self.framings {
            let lemma = opt(r.lemma1_holds.map(|b| b.to_string()));
            let _ = writeln!(
                out,
                "{knot_cols},{},{},{},{},{},{},{},{}",
                r.framing, r.linking_number, r.crossings, r.breadth_v, r.mfw_bound, r.exceptional, lemma, r.congruence_holds
            );
        }
    }
}

pub const CSV_HEADER: &str =
    "knot,crossing_number,alpha,beta,remark1_holds,breadth_v_mod2,cromwell_holds,\
     framing,linking_number,crossings,breadth_v,mfw_bound,exceptional,lemma1_holds,congruence_holds";

/// Output of one `verify` run; knots are kept sorted by id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub check: String,
    pub config: RunConfig,
    pub reports: Vec<BoundReport>,
    /// Knots whose computation stopped early, with the reason.
    pub incomplete: Vec<String>,
}

impl VerifyReport {
    pub fn new(check: &str, config: RunConfig, mut reports: Vec<BoundReport>, incomplete: Vec<String>) -> Self {
        reports.sort_by(|a, b| crate::corpus::knot_order(&a.knot, &b.knot));
        Self { check: check.to_string(), config, reports, incomplete }
    }

    pub fn holds(&self) -> bool {
        self.incomplete.is_empty() && self.reports.iter().all(BoundReport::holds)
    }

    pub fn violations(&self) -> Vec<String> {
        self.reports.iter().flat_map(BoundReport::violations).collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.reports {
            r.csv_rows(&mut out);
        }
        out
    }
}
