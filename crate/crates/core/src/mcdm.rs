//! Multi-criteria ranking of alternatives rated by PFNs.
//!
//! The pipeline is: build a [`DecisionProblem`], [`normalize`] cost
//! criteria by complementing their ratings, [`aggregate`] each alternative
//! with the criterion weights, then [`rank`] under the admissible order.
//! [`sweep_gamma`] repeats the pipeline over a grid of family parameters.

use std::collections::HashSet;
use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aggregate::{AggregationOp, Weights};
use crate::error::{Error, Result};
use crate::pfn::{Pfn, ScoreProfile};
use crate::tnorm::TnormFamily;

const CASE_STUDY: &str = include_str!("../fixtures/casestudy.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CriterionKind {
    Benefit,
    Cost,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Criterion {
    pub name: String,
    pub kind: CriterionKind,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Alternative {
    pub name: String,
    pub ratings: Vec<Pfn>,
}

/// Criteria list on its own, as supplied next to a CSV matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriteriaSidecar {
    pub criteria: Vec<Criterion>,
}

#[derive(Deserialize)]
struct RawProblem {
    criteria: Vec<Criterion>,
    alternatives: Vec<RawAlternative>,
}

#[derive(Deserialize)]
struct RawAlternative {
    name: String,
    ratings: Vec<[f64; 3]>,
}

/// A validated decision matrix with weighted criteria.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecisionProblem {
    criteria: Vec<Criterion>,
    alternatives: Vec<Alternative>,
    #[serde(skip)]
    weights: Weights,
}

fn unique<'a>(what: &str, names: impl Iterator<Item = &'a str>) -> Result<()> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(Error::InvalidProblem(format!("duplicate {what} name `{n}`")));
        }
    }
    Ok(())
}

impl DecisionProblem {
    pub fn new(criteria: Vec<Criterion>, alternatives: Vec<Alternative>) -> Result<Self> {
        if criteria.is_empty() {
            return Err(Error::InvalidProblem("no criteria".into()));
        }
        if alternatives.is_empty() {
            return Err(Error::InvalidProblem("no alternatives".into()));
        }
        unique("criterion", criteria.iter().map(|c| c.name.as_str()))?;
        unique("alternative", alternatives.iter().map(|a| a.name.as_str()))?;
        let weights = Weights::new(criteria.iter().map(|c| c.weight).collect())
            .map_err(|e| Error::InvalidProblem(format!("criterion weights: {e}")))?;
        for a in &alternatives {
            if a.ratings.len() != criteria.len() {
                return Err(Error::InvalidProblem(format!(
                    "alternative `{}` has {} ratings, expected {}",
                    a.name,
                    a.ratings.len(),
                    criteria.len()
                )));
            }
        }
        Ok(DecisionProblem { criteria, alternatives, weights })
    }

    fn from_raw(criteria: Vec<Criterion>, raw: Vec<RawAlternative>) -> Result<Self> {
        let mut alternatives = Vec::with_capacity(raw.len());
        for a in raw {
            let mut ratings = Vec::with_capacity(a.ratings.len());
            for (j, [mu, eta, nu]) in a.ratings.into_iter().enumerate() {
                let cell = Pfn::new(mu, eta, nu).map_err(|e| {
                    let crit = criteria.get(j).map_or_else(|| format!("#{}", j + 1), |c| c.name.clone());
                    Error::InvalidProblem(format!("alternative `{}`, criterion `{crit}`: {e}", a.name))
                })?;
                ratings.push(cell);
            }
            alternatives.push(Alternative { name: a.name, ratings });
        }
        DecisionProblem::new(criteria, alternatives)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawProblem = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        DecisionProblem::from_raw(raw.criteria, raw.alternatives)
    }

    /// Reads a matrix with header `name,G1_mu,G1_eta,G1_nu,G2_mu,...`; the
    /// column prefixes must match `criteria` in order.
    pub fn from_csv<R: Read>(reader: R, criteria: Vec<Criterion>) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let header = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?.clone();
        let mut expected = vec!["name".to_string()];
        for c in &criteria {
            for part in ["mu", "eta", "nu"] {
                expected.push(format!("{}_{part}", c.name));
            }
        }
        let got: Vec<&str> = header.iter().collect();
        if got != expected {
            return Err(Error::InvalidProblem(format!(
                "CSV header `{}` does not match criteria, expected `{}`",
                got.join(","),
                expected.join(",")
            )));
        }
        let mut raw = Vec::new();
        for (r, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| Error::Parse(e.to_string()))?;
            let mut values = Vec::with_capacity(record.len() - 1);
            for (col, field) in expected.iter().zip(record.iter()).skip(1) {
                let v = field.parse::<f64>().map_err(|_| {
                    Error::InvalidProblem(format!("row {}, column `{col}`: cannot parse `{field}`", r + 1))
                })?;
                values.push(v);
            }
            let ratings = values.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
            raw.push(RawAlternative { name: record[0].to_string(), ratings });
        }
        DecisionProblem::from_raw(criteria, raw)
    }

    /// The bundled six-alternative, four-criterion example.
    pub fn case_study() -> Self {
        DecisionProblem::from_json(CASE_STUDY).expect("bundled fixture is valid")
    }

    pub fn criteria(&self) -> &[Criterion] {
        &self.criteria
    }

    pub fn alternatives(&self) -> &[Alternative] {
        &self.alternatives
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn is_normalized(&self) -> bool {
        self.criteria.iter().all(|c| c.kind == CriterionKind::Benefit)
    }
}

/// Complements every cost-criterion rating and marks all criteria benefit.
pub fn normalize(p: &DecisionProblem) -> DecisionProblem {
    let cost: Vec<bool> = p.criteria.iter().map(|c| c.kind == CriterionKind::Cost).collect();
    let alternatives = p
        .alternatives
        .iter()
        .map(|a| Alternative {
            name: a.name.clone(),
            ratings: a.ratings.iter().zip(&cost).map(|(r, &c)| if c { r.complement() } else { *r }).collect(),
        })
        .collect();
    let criteria = p.criteria.iter().map(|c| Criterion { kind: CriterionKind::Benefit, ..c.clone() }).collect();
    DecisionProblem { criteria, alternatives, weights: p.weights.clone() }
}

/// One aggregate per alternative, in input order. Ratings are used as
/// given; call [`normalize`] first when cost criteria are present.
pub fn aggregate(p: &DecisionProblem, f: &TnormFamily, op: AggregationOp) -> Result<Vec<(String, Pfn)>> {
    p.alternatives.iter().map(|a| Ok((a.name.clone(), op.apply(f, &p.weights, &a.ratings)?))).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedAlternative {
    pub name: String,
    pub aggregated: Pfn,
    pub profile: ScoreProfile,
    pub rank: usize,
}

/// Ranked alternatives, best first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingResult {
    pub family: TnormFamily,
    pub op: AggregationOp,
    pub alternatives: Vec<RankedAlternative>,
}

impl RankingResult {
    /// `A2 > A5 > ...`
    pub fn order_line(&self) -> String {
        self.alternatives.iter().map(|a| a.name.as_str()).collect::<Vec<_>>().join(" > ")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Sorts descending under the admissible order; equal aggregates keep
/// their input order and still receive distinct ranks.
pub fn rank(aggregates: &[(String, Pfn)]) -> Result<Vec<RankedAlternative>> {
    if aggregates.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut idx: Vec<usize> = (0..aggregates.len()).collect();
    idx.sort_by(|&a, &b| aggregates[b].1.cmp_admissible(&aggregates[a].1));
    Ok(idx
        .into_iter()
        .enumerate()
        .map(|(pos, i)| {
            let (name, x) = &aggregates[i];
            RankedAlternative { name: name.clone(), aggregated: *x, profile: x.score_profile(), rank: pos + 1 }
        })
        .collect())
}

/// Normalizes, aggregates and ranks.
pub fn evaluate(p: &DecisionProblem, f: &TnormFamily, op: AggregationOp) -> Result<RankingResult> {
    let aggregates = aggregate(&normalize(p), f, op)?;
    Ok(RankingResult { family: *f, op, alternatives: rank(&aggregates)? })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub gamma: f64,
    /// Scores in input order of the alternatives.
    pub scores: Vec<f64>,
    /// Ranks in input order of the alternatives.
    pub ranks: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub family: String,
    pub op: AggregationOp,
    pub alternatives: Vec<String>,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// Score of alternative `i` at every sampled gamma.
    pub fn score_series(&self, i: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r.scores[i]).collect()
    }

    pub fn rank_series(&self, i: usize) -> Vec<usize> {
        self.rows.iter().map(|r| r.ranks[i]).collect()
    }
}

/// `steps` evenly spaced points from `lo` to `hi`, both included.
pub fn gamma_grid(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::InvalidParameter(format!("steps must be at least 2, got {steps}")));
    }
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidParameter(format!("need gamma_min < gamma_max, got [{lo}, {hi}]")));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps).map(|i| if i == steps - 1 { hi } else { lo + (hi - lo) * i as f64 / last }).collect())
}

/// Ranks the problem at each grid value of the family parameter. Points
/// are evaluated in parallel; the row order follows the grid.
pub fn sweep_gamma(
    p: &DecisionProblem,
    family: &TnormFamily,
    op: AggregationOp,
    gamma_min: f64,
    gamma_max: f64,
    steps: usize,
) -> Result<SweepTable> {
    if family.gamma().is_none() {
        return Err(Error::InvalidParameter(format!("{} has no parameter to sweep", family.name())));
    }
    let grid = gamma_grid(gamma_min, gamma_max, steps)?;
    let families = grid.iter().map(|&g| family.with_gamma(g)).collect::<Result<Vec<_>>>()?;
    let normalized = normalize(p);
    let names: Vec<String> = p.alternatives.iter().map(|a| a.name.clone()).collect();
    let rows = families
        .par_iter()
        .zip(grid.par_iter())
        .map(|(f, &gamma)| {
            let aggregates = aggregate(&normalized, f, op)?;
            let ranked = rank(&aggregates)?;
            let mut ranks = vec![0; aggregates.len()];
            for r in &ranked {
                let i = names.iter().position(|n| *n == r.name).expect("ranked names come from the problem");
                ranks[i] = r.rank;
            }
            Ok(SweepRow { gamma, scores: aggregates.iter().map(|(_, x)| x.score()).collect(), ranks })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable { family: family.name().to_string(), op, alternatives: names, rows })
}

fn csv_err(e: impl std::fmt::Display) -> Error {
    Error::Internal(format!("writing CSV: {e}"))
}

/// `rank,name,mu,eta,nu,score,h1,h2`, full precision.
pub fn write_ranking_csv<W: Write>(r: &RankingResult, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["rank", "name", "mu", "eta", "nu", "score", "h1", "h2"]).map_err(csv_err)?;
    for a in &r.alternatives {
        let [mu, eta, nu] = a.aggregated.components();
        let p = a.profile;
        let nums = [mu, eta, nu, p.s, p.h1, p.h2].map(|v| v.to_string());
        let mut rec = vec![a.rank.to_string(), a.name.clone()];
        rec.extend(nums);
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.flush().map_err(csv_err)
}

/// `gamma,<alt>_score...,<alt>_rank...`, one row per grid point.
pub fn write_sweep_csv<W: Write>(t: &SweepTable, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["gamma".to_string()];
    header.extend(t.alternatives.iter().map(|a| format!("{a}_score")));
    header.extend(t.alternatives.iter().map(|a| format!("{a}_rank")));
    w.write_record(&header).map_err(csv_err)?;
    for row in &t.rows {
        let mut rec = vec![row.gamma.to_string()];
        rec.extend(row.scores.iter().map(|s| s.to_string()));
        rec.extend(row.ranks.iter().map(|r| r.to_string()));
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.flush().map_err(csv_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(mu: f64, eta: f64, nu: f64) -> Pfn {
        Pfn::new(mu, eta, nu).unwrap()
    }

    fn crit(name: &str, kind: CriterionKind, weight: f64) -> Criterion {
        Criterion { name: name.into(), kind, weight }
    }

    #[test]
    fn case_study_aggregates_and_ranking() {
        let cs = DecisionProblem::case_study();
        assert!(cs.is_normalized());
        let aggs = aggregate(&cs, &TnormFamily::Product, AggregationOp::Pfiwa).unwrap();
        let want = [[0.6046, 0.2314, 0.1414], [0.2700, 0.2466, 0.3305]];
        for (got, want) in [aggs[1].1, aggs[5].1].iter().zip(want) {
            for (a, b) in got.components().iter().zip(want) {
                assert!((a - b).abs() <= 5e-4, "{got}");
            }
        }
        let r = evaluate(&cs, &TnormFamily::Product, AggregationOp::Pfiwa).unwrap();
        assert_eq!(r.order_line(), "A2 > A5 > A3 > A1 > A4 > A6");
        let ranks: Vec<usize> = r.alternatives.iter().map(|a| a.rank).collect();
        assert_eq!(ranks, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn normalization() {
        let cs = DecisionProblem::case_study();
        assert_eq!(normalize(&cs), cs);
        let prob = DecisionProblem::new(
            vec![crit("c", CriterionKind::Cost, 0.5), crit("b", CriterionKind::Benefit, 0.5)],
            vec![Alternative { name: "x".into(), ratings: vec![p(0.6, 0.1, 0.2), p(0.3, 0.3, 0.3)] }],
        )
        .unwrap();
        let n = normalize(&prob);
        assert_eq!(n.alternatives()[0].ratings, vec![p(0.2, 0.1, 0.6), p(0.3, 0.3, 0.3)]);
        assert!(n.is_normalized());
        assert_eq!(normalize(&n), n);
    }

    #[test]
    fn single_criterion_is_identity() {
        let prob = DecisionProblem::new(
            vec![crit("only", CriterionKind::Benefit, 1.0)],
            vec![
                Alternative { name: "a".into(), ratings: vec![p(0.3, 0.2, 0.1)] },
                Alternative { name: "b".into(), ratings: vec![p(0.5, 0.1, 0.4)] },
            ],
        )
        .unwrap();
        let aggs = aggregate(&prob, &TnormFamily::Hamacher(2.0), AggregationOp::Pfiwg).unwrap();
        for ((_, got), alt) in aggs.iter().zip(prob.alternatives()) {
            for (a, b) in got.components().iter().zip(alt.ratings[0].components()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ties_and_secondary_keys() {
        let x = p(0.3, 0.2, 0.1);
        let r = rank(&[("a".into(), x), ("b".into(), x)]).unwrap();
        assert_eq!((r[0].name.as_str(), r[0].rank, r[1].rank), ("a", 1, 2));
        // same score 0.2, larger H1 wins
        let r = rank(&[("lo".into(), p(0.3, 0.2, 0.1)), ("hi".into(), p(0.4, 0.1, 0.2))]).unwrap();
        assert_eq!(r[0].name, "hi");
        assert_eq!(rank(&[]), Err(Error::EmptyInput));
    }

    #[test]
    fn validation_messages() {
        let bad = r#"{"criteria":[{"name":"G1","kind":"benefit","weight":1}],
            "alternatives":[{"name":"A1","ratings":[[0.7,0.2,0.3]]}]}"#;
        let e = DecisionProblem::from_json(bad).unwrap_err().to_string();
        assert!(e.contains("A1") && e.contains("G1"), "{e}");
        let dup = r#"{"criteria":[{"name":"G1","kind":"benefit","weight":0.5},{"name":"G1","kind":"cost","weight":0.5}],
            "alternatives":[{"name":"A1","ratings":[[0.1,0.1,0.1],[0.1,0.1,0.1]]}]}"#;
        assert!(DecisionProblem::from_json(dup).unwrap_err().to_string().contains("duplicate"));
        let short = r#"{"criteria":[{"name":"G1","kind":"benefit","weight":1}],
            "alternatives":[{"name":"A1","ratings":[]}]}"#;
        assert!(matches!(DecisionProblem::from_json(short), Err(Error::InvalidProblem(_))));
        let weights = r#"{"criteria":[{"name":"G1","kind":"benefit","weight":0.9}],
            "alternatives":[{"name":"A1","ratings":[[0.1,0.1,0.1]]}]}"#;
        assert!(DecisionProblem::from_json(weights).unwrap_err().to_string().contains("weights"));
    }

    #[test]
    fn csv_input_matches_json() {
        let cs = DecisionProblem::case_study();
        let mut text = String::from("name");
        for c in cs.criteria() {
            text += &format!(",{0}_mu,{0}_eta,{0}_nu", c.name);
        }
        text.push('\n');
        for a in cs.alternatives() {
            text += &a.name;
            for r in &a.ratings {
                for v in r.components() {
                    text += &format!(",{v}");
                }
            }
            text.push('\n');
        }
        let parsed = DecisionProblem::from_csv(text.as_bytes(), cs.criteria().to_vec()).unwrap();
        assert_eq!(parsed, cs);
        let broken = text.replacen("0.6", "x", 1);
        let e = DecisionProblem::from_csv(broken.as_bytes(), cs.criteria().to_vec()).unwrap_err();
        assert!(e.to_string().contains("G1_mu"), "{e}");
    }

    #[test]
    fn sweep_grid_and_errors() {
        assert_eq!(gamma_grid(1.0, 10.0, 19).unwrap().len(), 19);
        let g = gamma_grid(-10.0, -1.0, 19).unwrap();
        assert_eq!((g[0], g[18]), (-10.0, -1.0));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(gamma_grid(1.0, 2.0, 1).is_err());
        let cs = DecisionProblem::case_study();
        let op = AggregationOp::Pfiwa;
        assert!(matches!(
            sweep_gamma(&cs, &TnormFamily::Frank(2.0), op, 0.5, 1.5, 3),
            Err(Error::ParamOutOfDomain { .. })
        ));
        assert!(sweep_gamma(&cs, &TnormFamily::Product, op, 1.0, 2.0, 3).is_err());
        let t = sweep_gamma(&cs, &TnormFamily::Hamacher(1.0), op, 1.0, 10.0, 19).unwrap();
        assert_eq!(t.rows.len(), 19);
        assert!(t.rank_series(1).iter().all(|&r| r == 1));
    }

    #[test]
    fn csv_writers() {
        let cs = DecisionProblem::case_study();
        let r = evaluate(&cs, &TnormFamily::Product, AggregationOp::Pfiwa).unwrap();
        let mut buf = Vec::new();
        write_ranking_csv(&r, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("rank,name,mu,eta,nu,score,h1,h2\n1,A2,"));
        let t = sweep_gamma(&cs, &TnormFamily::Dombi(1.0), AggregationOp::Pfiwg, 1.0, 2.0, 2).unwrap();
        let mut buf = Vec::new();
        write_sweep_csv(&t, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("gamma,A1_score,A2_score,A3_score,A4_score,A5_score,A6_score,A1_rank,"));
        assert_eq!(text.lines().count(), 3);
    }

    #[test]
    fn ranking_json_round_trip() {
        let r = evaluate(&DecisionProblem::case_study(), &TnormFamily::AczelAlsina(2.5), AggregationOp::Pfiowg)
            .unwrap();
        let back = RankingResult::from_json(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
        for a in &back.alternatives {
            assert_eq!(a.aggregated.score_profile(), a.profile);
        }
    }
}
