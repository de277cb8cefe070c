//! Run reports: named verdicts with anchors, timings and artifacts, as
//! stable JSON or plain text.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::time::Instant;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    BudgetExceeded,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub name: String,
    /// Stable identifier of the checked claim.
    pub anchor: String,
    pub required: bool,
    pub outcome: Outcome,
    /// Observed value, if the check produces one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub seconds: f64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub verdicts: Vec<Verdict>,
    pub timings: BTreeMap<String, f64>,
    pub artifacts: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport { command: command.to_owned(), ..Default::default() }
    }

    pub fn param(&mut self, k: &str, v: impl ToString) -> &mut Self {
        self.parameters.insert(k.to_owned(), v.to_string());
        self
    }

    pub fn push(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    /// Exit status: 0 all required pass, 1 a required check failed,
    /// 3 a required check ran out of budget (failures take precedence).
    pub fn exit_code(&self) -> i32 {
        let req = self.verdicts.iter().filter(|v| v.required);
        let mut code = 0;
        for v in req {
            match v.outcome {
                Outcome::Fail => return 1,
                Outcome::BudgetExceeded => code = 3,
                _ => {}
            }
        }
        code
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        for (k, v) in &self.parameters {
            let _ = writeln!(s, "  {k} = {v}");
        }
        for v in &self.verdicts {
            let tag = match v.outcome {
                Outcome::Pass => "PASS",
                Outcome::Fail => "FAIL",
                Outcome::BudgetExceeded => "BUDGET",
                Outcome::Skipped => "SKIP",
            };
            let _ = write!(s, "{tag:6} {} [{}]{}", v.name, v.anchor, if v.required { "" } else { " (informational)" });
            if let Some(x) = &v.value {
                let _ = write!(s, " = {x}");
            }
            let _ = writeln!(s, " ({:.3}s)", v.seconds);
            if let Some(d) = &v.detail {
                for line in d.lines() {
                    let _ = writeln!(s, "         {line}");
                }
            }
        }
        for a in &self.artifacts {
            let _ = writeln!(s, "artifact: {a}");
        }
        s
    }
}

/// Times one check and turns its result into a verdict.
pub struct Check<'a> {
    pub name: &'a str,
    pub anchor: &'a str,
    pub required: bool,
}

/// What a check returns: pass flag, observed value, free-form detail.
pub struct Observed {
    pub ok: bool,
    pub value: Option<String>,
    pub detail: Option<String>,
}

impl Observed {
    pub fn flag(ok: bool) -> Self {
        Observed { ok, value: None, detail: None }
    }

    pub fn value(ok: bool, v: impl ToString) -> Self {
        Observed { ok, value: Some(v.to_string()), detail: None }
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

impl Check<'_> {
    pub fn run(&self, f: impl FnOnce() -> parke_taylor_core::Result<Observed>) -> Verdict {
        let t = Instant::now();
        let r = f();
        let seconds = t.elapsed().as_secs_f64();
        let (outcome, value, detail) = match r {
            Ok(o) => (if o.ok { Outcome::Pass } else { Outcome::Fail }, o.value, o.detail),
            Err(parke_taylor_core::Error::BudgetExceeded(m)) => (Outcome::BudgetExceeded, None, Some(m)),
            Err(e) => (Outcome::Fail, None, Some(e.to_string())),
        };
        Verdict {
            name: self.name.to_owned(),
            anchor: self.anchor.to_owned(),
            required: self.required,
            outcome,
            value,
            detail,
            seconds,
        }
    }

    pub fn skipped(&self, why: &str) -> Verdict {
        Verdict {
            name: self.name.to_owned(),
            anchor: self.anchor.to_owned(),
            required: self.required,
            outcome: Outcome::Skipped,
            value: None,
            detail: Some(why.to_owned()),
            seconds: 0.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use parke_taylor_core::Error;

    fn report(outcomes: &[(bool, Outcome)]) -> RunReport {
        let mut r = RunReport::new("verify");
        for &(required, outcome) in outcomes {
            let c = Check { name: "x", anchor: "a", required };
            let v = match outcome {
                Outcome::Pass => c.run(|| Ok(Observed::flag(true))),
                Outcome::Fail => c.run(|| Ok(Observed::flag(false))),
                Outcome::BudgetExceeded => c.run(|| Err(Error::BudgetExceeded("pairs".into()))),
                Outcome::Skipped => c.skipped("long"),
            };
            assert_eq!(v.outcome, outcome);
            r.push(v);
        }
        r
    }

    #[test]
    fn exit_codes() {
        use Outcome::*;
        assert_eq!(report(&[(true, Pass), (false, Fail), (true, Skipped)]).exit_code(), 0);
        assert_eq!(report(&[(true, BudgetExceeded), (true, Pass)]).exit_code(), 3);
        assert_eq!(report(&[(true, BudgetExceeded), (true, Fail)]).exit_code(), 1);
        assert_eq!(report(&[(false, BudgetExceeded)]).exit_code(), 0);
    }

    #[test]
    fn errors_other_than_budget_fail() {
        let v = Check { name: "x", anchor: "a", required: true }.run(|| Err(Error::InvalidArgument("n".into())));
        assert_eq!(v.outcome, Outcome::Fail);
        assert!(v.detail.unwrap().contains("invalid argument"));
    }

    #[test]
    fn text_and_json_carry_anchors() {
        let r = report(&[(true, Outcome::Pass)]);
        assert!(r.to_text().contains("[a]"));
        let j: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(j["verdicts"][0]["anchor"], "a");
        assert_eq!(j["verdicts"][0]["outcome"], "pass");
    }
}
