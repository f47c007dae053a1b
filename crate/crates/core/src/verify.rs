//! Verification suites. Each produces PASS/FAIL lines; the lines are sorted
//! before they are returned, so a report depends only on its options.

use std::str::FromStr;

use serde::Serialize;

use crate::crosscheck::{chamber_points, series_identity, verify_continuous_recursion};
use crate::eo::{verify_eo, CurveKind};
use crate::exactmath::{format_fraction, pow2};
use crate::golden;
use crate::lattice::LatticeCounter;
use crate::surface::SurfaceType;
use crate::transform::{Engine, Family};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Golden,
    Ratio,
    Leading,
    Series,
    Eo,
    Symplectic,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Golden,
        Suite::Ratio,
        Suite::Leading,
        Suite::Series,
        Suite::Eo,
        Suite::Symplectic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Golden => "golden",
            Suite::Ratio => "ratio",
            Suite::Leading => "leading",
            Suite::Series => "series",
            Suite::Eo => "eo",
            Suite::Symplectic => "symplectic",
        }
    }
}

/// A suite name or `all`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteSelection(pub Option<Suite>);

impl SuiteSelection {
    pub fn suites(self) -> Vec<Suite> {
        match self.0 {
            Some(s) => vec![s],
            None => Suite::ALL.to_vec(),
        }
    }
}

impl FromStr for SuiteSelection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(SuiteSelection(None));
        }
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .map(|x| SuiteSelection(Some(x)))
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Largest `2g − 2 + n` checked by the ratio and leading suites; the eo
    /// and symplectic suites stop at `min(level, 3)`.
    pub level: i64,
    /// Perimeter-sum bound of the series suite.
    pub max_sum: u32,
    pub trials: usize,
    pub points: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            level: 5,
            max_sum: 16,
            trials: 5,
            points: 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub status: &'static str,
    pub suite: &'static str,
    pub case: String,
    pub detail: String,
    #[serde(skip)]
    key: (Suite, SurfaceType, u8),
}

impl CheckLine {
    fn new(
        suite: Suite,
        st: SurfaceType,
        sub: u8,
        case: String,
        passed: bool,
        detail: String,
    ) -> Self {
        CheckLine {
            status: if passed { "PASS" } else { "FAIL" },
            suite: suite.name(),
            case,
            detail,
            key: (suite, st, sub),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "PASS"
    }

    pub fn text(&self) -> String {
        let mut s = format!("{} {} {}", self.status, self.suite, self.case);
        if !self.detail.is_empty() {
            s.push(' ');
            s.push_str(&self.detail);
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VerifyReport {
    pub lines: Vec<CheckLine>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(CheckLine::passed)
    }

    pub fn to_text(&self) -> String {
        self.lines.iter().map(|l| l.text() + "\n").collect()
    }

    pub fn to_json_lines(&self) -> Result<String> {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(&serde_json::to_string(l)?);
            out.push('\n');
        }
        Ok(out)
    }
}

pub fn run(
    engine: &Engine,
    counter: &LatticeCounter,
    selection: SuiteSelection,
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    let mut lines = Vec::new();
    for suite in selection.suites() {
        lines.extend(run_suite(engine, counter, suite, opts)?);
    }
    lines.sort_by_key(|a| a.key);
    Ok(VerifyReport { lines })
}

const SERIES_TYPES: [(u32, usize); 4] = [(0, 3), (1, 1), (0, 4), (1, 2)];

fn run_suite(
    engine: &Engine,
    counter: &LatticeCounter,
    suite: Suite,
    opts: &VerifyOptions,
) -> Result<Vec<CheckLine>> {
    let mut out = Vec::new();
    match suite {
        Suite::Golden => {
            for (g, n, expected) in golden::all() {
                let st = SurfaceType::new(g, n);
                let got = engine.polynomial(Family::Laplace, g, n)?;
                let ok = *got == expected;
                let detail = if ok {
                    String::new()
                } else {
                    format!("difference {}", got.sub(&expected)?)
                };
                out.push(CheckLine::new(suite, st, 0, st.to_string(), ok, detail));
            }
        }
        Suite::Ratio => {
            for st in SurfaceType::up_to_level(opts.level) {
                let k = 5 * st.g as i64 - 5 + 2 * st.n as i64;
                let (ok, detail) = match engine.kontsevich_ratio(st.g, st.n) {
                    Ok(r) => (r == pow2(k), format!("{} 2^{k}", format_fraction(&r))),
                    Err(e) => (false, e.to_string()),
                };
                out.push(CheckLine::new(suite, st, 0, st.to_string(), ok, detail));
            }
        }
        Suite::Leading => {
            for st in SurfaceType::up_to_level(opts.level) {
                let ok = engine.leading_match(st.g, st.n)?;
                out.push(CheckLine::new(
                    suite,
                    st,
                    0,
                    st.to_string(),
                    ok,
                    String::new(),
                ));
            }
        }
        Suite::Series => {
            for (g, n) in SERIES_TYPES {
                let st = SurfaceType::new(g, n);
                let r = series_identity(engine, counter, g, n, opts.max_sum)?;
                let mut detail = format!("P={} compared={}", opts.max_sum, r.compared);
                if let Some(m) = r.mismatches.first() {
                    detail.push_str(&format!(
                        " x^{:?} lattice={} series={}",
                        m.exponents,
                        format_fraction(&m.lattice_side),
                        format_fraction(&m.series_side)
                    ));
                }
                out.push(CheckLine::new(
                    suite,
                    st,
                    0,
                    st.to_string(),
                    r.passed(),
                    detail,
                ));
            }
        }
        Suite::Eo => {
            for st in SurfaceType::up_to_level(opts.level.min(3)) {
                for (ci, kind) in CurveKind::ALL.into_iter().enumerate() {
                    let r = verify_eo(engine, kind, st.g, st.n, opts.trials, opts.seed)?;
                    let mut detail = format!("seed={} trials={}", opts.seed, opts.trials);
                    if let Some(t) = r.first_failure() {
                        let vals: Vec<String> = t.values.iter().map(format_fraction).collect();
                        detail.push_str(&format!(
                            " values=[{}] residues={} expected={}",
                            vals.join(","),
                            t.residues,
                            t.expected
                        ));
                    }
                    let case = format!("{kind} {st}");
                    out.push(CheckLine::new(
                        suite,
                        st,
                        ci as u8,
                        case,
                        r.passed(),
                        detail,
                    ));
                }
            }
        }
        Suite::Symplectic => {
            for st in SurfaceType::up_to_level(opts.level.min(3)) {
                if st.level() < 2 {
                    continue;
                }
                let pts = chamber_points(st.n, opts.points, opts.seed);
                let results = verify_continuous_recursion(engine, st.g, st.n, &pts)?;
                let mut detail = format!("seed={} points={}", opts.seed, opts.points);
                let mut ok = true;
                if let Some(r) = results.iter().find(|r| !r.passed()) {
                    ok = false;
                    let p: Vec<String> = r.p.iter().map(format_fraction).collect();
                    detail.push_str(&format!(
                        " p=[{}] lhs={} rhs={}",
                        p.join(","),
                        format_fraction(&r.lhs),
                        format_fraction(&r.rhs)
                    ));
                }
                out.push(CheckLine::new(suite, st, 0, st.to_string(), ok, detail));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suites_pass_and_are_deterministic() {
        let opts = VerifyOptions {
            level: 3,
            max_sum: 8,
            trials: 1,
            points: 2,
            seed: 7,
        };
        let run_once = || {
            run(
                &Engine::new(),
                &LatticeCounter::new(),
                SuiteSelection(None),
                &opts,
            )
            .unwrap()
        };
        let a = run_once();
        assert!(a.passed(), "{}", a.to_text());
        assert_eq!(a.to_text(), run_once().to_text());
        assert!(a.to_text().starts_with("PASS golden (0,3)\n"));
        assert!(a.to_text().contains("PASS ratio (2,1) 128/1 2^7\n"));
        let json = a.to_json_lines().unwrap();
        let first: serde_json::Value = serde_json::from_str(json.lines().next().unwrap()).unwrap();
        assert_eq!(first["status"], "PASS");
        assert_eq!(first["suite"], "golden");
    }

    #[test]
    fn selection_names() {
        assert_eq!("all".parse::<SuiteSelection>().unwrap().suites().len(), 6);
        assert_eq!(
            "eo".parse::<SuiteSelection>().unwrap().suites(),
            vec![Suite::Eo]
        );
        assert!("bogus".parse::<SuiteSelection>().is_err());
    }
}
