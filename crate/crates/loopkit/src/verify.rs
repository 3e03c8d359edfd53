//! Rendering of claim-suite results, with witness tables written to disk.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use loopkit_core::claims::{ClaimResult, Verdict};
use serde::Serialize;

use crate::format::write_stream;

#[derive(Debug, Clone, Serialize)]
pub struct ClaimEntry {
    #[serde(flatten)]
    pub result: ClaimResult,
    pub witness_count: usize,
    pub witness_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub max_order: usize,
    pub all_passed: bool,
    pub claims: Vec<ClaimEntry>,
}

impl SuiteReport {
    /// Builds the report; witnesses of failed claims go to
    /// `<witness_dir>/<claim_id>.tbl` when a directory is given.
    pub fn new(max_order: usize, results: Vec<ClaimResult>, witness_dir: Option<&Path>) -> io::Result<Self> {
        if let Some(dir) = witness_dir {
            fs::create_dir_all(dir)?;
        }
        let mut claims = Vec::with_capacity(results.len());
        for r in results {
            let witness_file = match witness_dir {
                Some(dir) if !r.witnesses.is_empty() => {
                    let path = dir.join(format!("{}.tbl", r.claim_id));
                    fs::write(&path, write_stream(&r.witnesses, None))?;
                    Some(path)
                }
                _ => None,
            };
            claims.push(ClaimEntry { witness_count: r.witnesses.len(), witness_file, result: r });
        }
        let all_passed = claims.iter().all(|c| c.result.verdict == Verdict::Pass);
        Ok(SuiteReport { max_order, all_passed, claims })
    }

    pub fn to_text(&self) -> String {
        let w = self.claims.iter().map(|c| c.result.claim_id.len()).max().unwrap_or(0);
        let mut s = String::new();
        for c in &self.claims {
            let r = &c.result;
            let verdict = match r.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "FAIL",
                Verdict::Skipped => "skipped",
            };
            s.push_str(&format!("{:<w$}  {:<7}  {:>6} loops  {}\n", r.claim_id, verdict, r.loops_checked, r.scope));
            s.push_str(&format!("{:<w$}    {}\n", "", r.statement));
            if let Some(note) = &r.note {
                s.push_str(&format!("{:<w$}    note: {note}\n", ""));
            }
            if let Some(p) = &c.witness_file {
                s.push_str(&format!("{:<w$}    witnesses: {}\n", "", p.display()));
            } else {
                for t in &r.witnesses {
                    for line in crate::format::write_table(t).lines() {
                        s.push_str(&format!("{:<w$}    {line}\n", ""));
                    }
                }
            }
        }
        let passed = self.claims.iter().filter(|c| c.result.verdict == Verdict::Pass).count();
        s.push_str(&format!("{passed}/{} claims passed (max order {})\n", self.claims.len(), self.max_order));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use loopkit_core::claims::{FixedModels, Harness};
    use loopkit_core::models;
    use loopkit_core::search::Limits;

    #[test]
    fn failed_claim_writes_witness_file() {
        let dir = tempfile::tempdir().unwrap();
        let fixed = FixedModels { example: models::quaternion(), heisenberg: models::heisenberg_27() };
        let mut h = Harness::with_models(3, Limits::default(), fixed);
        let r = vec![h.run_claim("ex_3_3").unwrap(), h.run_claim("rem_3_11").unwrap()];
        let rep = SuiteReport::new(3, r, Some(dir.path())).unwrap();
        assert!(!rep.all_passed);
        let path = rep.claims[0].witness_file.clone().unwrap();
        let back = crate::format::parse_table(&fs::read_to_string(path).unwrap()).unwrap();
        assert_eq!(back.table, models::quaternion());
        assert!(rep.claims[1].witness_file.is_none());
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["claims"][0]["verdict"], "fail");
        assert_eq!(json["claims"][1]["verdict"], "pass");
        assert!(rep.to_text().contains("1/2 claims passed"));
    }
}
