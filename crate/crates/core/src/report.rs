//! Report documents: deterministic JSON for batches of analysed pairs, a
//! markdown rendering, and witness re-verification.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::lie::catalog::Pair;
use crate::lie::json::{pair_to_json, parse_pair};
use crate::obstruction::{Analysis, ConditionId, Options, PairContext};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    pub name: String,
    pub family: String,
    /// The pair in the input schema, so the report can be re-checked alone.
    pub pair: Value,
    #[serde(flatten)]
    pub analysis: Analysis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub conditions: Vec<ConditionId>,
    pub cap_override: Option<u32>,
    pub pairs: Vec<PairReport>,
}

/// Analyses the pairs in parallel; entries are sorted by pair name.
pub fn run(pairs: &[Pair], opts: &Options, timings: bool) -> Result<ReportDocument> {
    let mut reports = pairs
        .par_iter()
        .map(|p| {
            let start = Instant::now();
            let analysis = PairContext::new(p)?.analyze(opts)?;
            Ok(PairReport {
                name: p.name.clone(),
                family: p.family.clone(),
                pair: pair_to_json(p),
                analysis,
                wall_time_ms: timings.then(|| start.elapsed().as_millis() as u64),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.into(),
        conditions: opts.conditions.iter().copied().collect(),
        cap_override: opts.cap,
        pairs: reports,
    })
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text)
            .map_err(|e| Error::schema(format!("report:{}:{}", e.line(), e.column()), e.to_string()))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::schema(
                "$.schema_version",
                format!("unsupported schema version {}", doc.schema_version),
            ));
        }
        Ok(doc)
    }

    /// A table with one row per pair.
    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| pair | ranks | verdict |\n|---|---|---|\n");
        for p in &self.pairs {
            let r = &p.analysis.ranks;
            let v = &p.analysis.verdict;
            out.push_str(&format!(
                "| {} | {} − {} = {} vs {} − {} = {} | {} ({}) |\n",
                p.name,
                r.rank_g,
                r.rank_g_theta,
                v.rank_lhs,
                r.rank_h,
                r.rank_k_h,
                v.rank_rhs,
                v.label(),
                v.reason
            ));
        }
        out
    }

    /// Re-verifies every serialized witness against its embedded pair.
    pub fn verify_witnesses(&self) -> Result<Vec<WitnessCheck>> {
        let per_pair = self
            .pairs
            .par_iter()
            .enumerate()
            .map(|(i, p)| {
                let pair = parse_pair(&p.pair, None, &p.name)
                    .map_err(|e| relocate(e, &format!("$.pairs[{i}].pair")))?;
                let ctx = PairContext::new(&pair)?;
                Ok(ctx
                    .verify_witnesses(&p.analysis.conditions)?
                    .into_iter()
                    .map(|(condition, ok)| WitnessCheck {
                        pair: p.name.clone(),
                        condition,
                        ok,
                    })
                    .collect::<Vec<_>>())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(per_pair.into_iter().flatten().collect())
    }
}

fn relocate(e: Error, prefix: &str) -> Error {
    match e {
        Error::Schema { location, message } => Error::Schema {
            location: format!("{prefix}{}", location.trim_start_matches('$')),
            message,
        },
        other => other,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCheck {
    pub pair: String,
    pub condition: ConditionId,
    pub ok: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;

    fn sl2_pairs() -> Vec<Pair> {
        catalog::pairs()
            .unwrap()
            .into_iter()
            .filter(|p| p.family == "sl2")
            .collect()
    }

    #[test]
    fn json_round_trips_and_is_stable() {
        let pairs = sl2_pairs();
        let doc = run(&pairs, &Options::default(), false).unwrap();
        let text = doc.to_json();
        assert_eq!(ReportDocument::from_json(&text).unwrap(), doc);
        assert_eq!(run(&pairs, &Options::default(), false).unwrap().to_json(), text);
        assert!(!text.contains("wall_time_ms"));
        let names: Vec<&str> = doc.pairs.iter().map(|p| p.name.as_str()).collect();
        assert_eq!(names, ["sl2/0", "sl2/so11", "sl2/so2"]);
    }

    #[test]
    fn markdown_has_one_row_per_pair() {
        let doc = run(&sl2_pairs(), &Options::default(), false).unwrap();
        let md = doc.to_markdown();
        assert!(md.starts_with("| pair | ranks | verdict |"));
        assert_eq!(md.lines().count(), 2 + 3);
        assert!(md.contains("| sl2/so11 | 1 − 1 = 0 vs 1 − 0 = 1 | OBSTRUCTED (RANK_CRITERION) |"));
    }

    #[test]
    fn witnesses_round_trip_through_json() {
        let doc = run(&sl2_pairs(), &Options::default(), true).unwrap();
        let back = ReportDocument::from_json(&doc.to_json()).unwrap();
        let checks = back.verify_witnesses().unwrap();
        assert_eq!(checks.len(), 5);
        assert!(checks.iter().all(|c| c.ok && c.pair == "sl2/so11"));
    }

    #[test]
    fn wrong_schema_version_is_rejected() {
        let mut doc = run(&sl2_pairs()[..1], &Options::default(), false).unwrap();
        doc.schema_version = 99;
        let err = ReportDocument::from_json(&doc.to_json()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
