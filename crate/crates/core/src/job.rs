//! Job files, command dispatch and reports for the command-line tool.
//!
//! A job is a TOML document:
//!
//! ```toml
//! n = 2
//! k = 1
//! r = 2
//! equation = "y''"
//! variety = ["x^3 + y^2 - 1"]
//! smoothness = "smooth"
//! command = "degree"
//! mode = "both"
//! seed = 1
//! field = "rationals"
//!
//! [[user_gamma]]
//! index = 2
//! value = 1
//! ```
//!
//! `genus`, `user_gamma` and `user_cuspidal` are optional.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::counter::{count_affine, measure_degree, CountReport};
use crate::equation::{format_entries, DifferentialEquation, Entry, Provenance};
use crate::error::{Error, Result};
use crate::formula::{degree_by_theorem, degree_mod2, umbilical_equation};
use crate::invariants::{calibration_checks, compute_invariants, cusp_test, standard_tests, Coefficients, InvariantsReport, RouteCheck};
use crate::jet::JetChart;
use crate::parse::{hessian_determinant, parse_expression};
use crate::variety::{cuspidal_numbers, CuspidalNumbers, Smoothness, Variety};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Invariants,
    Cuspidal,
    Degree,
    Parity,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Theorem,
    Measure,
    #[default]
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UserEntry {
    pub index: usize,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Job {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub equation: String,
    #[serde(default)]
    pub variety: Vec<String>,
    #[serde(default = "default_smoothness")]
    pub smoothness: Smoothness,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<i64>,
    pub command: Command,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub field: Coefficients,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub user_gamma: Vec<UserEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub user_cuspidal: Vec<UserEntry>,
}

fn default_smoothness() -> Smoothness {
    Smoothness::Unknown
}

impl Job {
    pub fn from_toml(src: &str) -> Result<Self> {
        toml::from_str(src).map_err(|e| Error::Job(e.message().to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("jobs serialize")
    }

    pub fn chart(&self) -> Result<JetChart> {
        JetChart::new(self.n, self.k, self.r)
    }

    pub fn equation(&self) -> Result<DifferentialEquation> {
        let chart = self.chart()?;
        if self.equation.trim().is_empty() {
            return Err(Error::Job("the job has no equation".into()));
        }
        DifferentialEquation::new(&chart, parse_expression(&self.equation, &chart)?)
    }

    pub fn variety(&self) -> Result<Variety> {
        let chart = self.chart()?.with_order(0);
        let gens = self.variety.iter().map(|g| parse_expression(g, &chart)).collect::<Result<Vec<_>>>()?;
        if gens.is_empty() {
            return Err(Error::Job("the job has no variety".into()));
        }
        Ok(Variety::new(self.n, self.k, gens, self.smoothness)?.with_genus(self.genus))
    }

    fn user_gamma(&self) -> Vec<(usize, i64)> {
        self.user_gamma.iter().map(|u| (u.index, u.value)).collect()
    }

    /// Cuspidal numbers up to order `r`, with user entries taking
    /// precedence. Nothing is computed when the user supplies them all.
    fn cuspidal(&self, r: usize) -> Result<CuspidalNumbers> {
        let mut entries = vec![Entry::unknown(); r + 1];
        for u in &self.user_cuspidal {
            if u.index <= r {
                entries[u.index] = Entry::known(u.value, Provenance::User);
            }
        }
        if entries.iter().all(|e| e.value.is_some()) {
            return Ok(CuspidalNumbers { entries });
        }
        let computed = cuspidal_numbers(&self.variety()?, r, self.seed)?;
        for (e, c) in entries.iter_mut().zip(computed.entries) {
            if e.value.is_none() {
                *e = c;
            }
        }
        Ok(CuspidalNumbers { entries })
    }
}

/// One item of the built-in verification suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyItem {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: Option<Command>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cuspidal: Option<CuspidalNumbers>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<CountReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem_degree: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measured_degree: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verify: Vec<VerifyItem>,
}

impl Report {
    /// Whether every comparison in the report came out equal.
    pub fn consistent(&self) -> bool {
        let degrees = match (self.theorem_degree, self.measured_degree) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        };
        let checks = self.invariants.as_ref().map_or(true, |i| i.checks.iter().all(|c| c.agree));
        degrees && checks && self.verify.iter().all(|v| v.ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(c) = self.command {
            let _ = writeln!(out, "command: {}", serde_json::to_value(c).unwrap().as_str().unwrap());
        }
        let _ = writeln!(out, "seed: {}", self.seed);
        if let Some(e) = &self.equation {
            let _ = writeln!(out, "equation: {e}");
        }
        if let Some(inv) = &self.invariants {
            let _ = writeln!(out, "gamma_f: {} {}", format_entries(&inv.invariants.entries), provenances(&inv.invariants.entries));
            for t in &inv.tests {
                let _ = writeln!(out, "  test {}: cuspidal {:?}, measured {}", t.name, t.cuspidal, t.measured);
            }
            for c in &inv.checks {
                let _ = writeln!(out, "  {}", format_check(c));
            }
        }
        if let Some(c) = &self.cuspidal {
            let _ = writeln!(out, "gamma_S: {} {}", format_entries(&c.entries), provenances(&c.entries));
        }
        if let Some(c) = &self.count {
            let _ = writeln!(out, "count ({}): affine {}", c.route, c.affine_count);
            for corr in &c.corrections {
                let _ = writeln!(out, "  {:?} at {} via {}: multiplicity {}", corr.kind, corr.point, corr.chart, corr.multiplicity);
            }
        }
        if let Some(d) = self.theorem_degree {
            let _ = writeln!(out, "degree (theorem): {d}");
        }
        if let Some(d) = self.measured_degree {
            let _ = writeln!(out, "degree (measured): {d}");
        }
        if let Some(p) = &self.parity {
            let _ = writeln!(out, "parity: {p}");
        }
        if !self.verify.is_empty() {
            for v in &self.verify {
                let _ = writeln!(out, "{} {}: expected {}, got {}", if v.ok { "ok  " } else { "FAIL" }, v.name, v.expected, v.got);
            }
            let passed = self.verify.iter().filter(|v| v.ok).count();
            let _ = writeln!(out, "{passed}/{} matches", self.verify.len());
        }
        out
    }
}

fn provenances(entries: &[Entry]) -> String {
    let names: Vec<String> = entries.iter().map(|e| serde_json::to_value(e.provenance).unwrap().as_str().unwrap().to_string()).collect();
    format!("[{}]", names.join(", "))
}

fn format_check(c: &RouteCheck) -> String {
    let routes: Vec<String> = c.routes.iter().map(|(p, v)| format!("{}={v}", serde_json::to_value(p).unwrap().as_str().unwrap())).collect();
    format!("gamma_{}: {} {}", c.index, routes.join(" "), if c.agree { "agree" } else { "DISAGREE" })
}

fn theorem_degree(job: &Job, eq: &DifferentialEquation, report: &mut Report) -> Result<i64> {
    let inv = compute_invariants(eq, &job.user_gamma(), job.field, job.seed)?;
    let cusp = job.cuspidal(eq.order())?;
    let degree = match job.field {
        Coefficients::Rationals => degree_by_theorem(&inv.invariants.entries, &cusp, job.smoothness)?,
        Coefficients::Mod2 => {
            let f = inv.invariants.values().ok_or(Error::UnknownEntryNeeded(0))?;
            let s = cusp.padded(f.len(), job.smoothness).values().ok_or(Error::UnknownEntryNeeded(0))?;
            degree_mod2(&f, &s[..f.len()])?
        }
    };
    report.invariants = Some(inv);
    report.cuspidal = Some(cusp);
    Ok(degree)
}

pub fn run(job: &Job) -> Result<Report> {
    let mut report = Report { command: Some(job.command), seed: job.seed, ..Default::default() };
    match job.command {
        Command::Verify => report.verify = verify(job.seed),
        Command::Invariants => {
            let eq = job.equation()?;
            report.equation = Some(eq.to_text());
            report.invariants = Some(compute_invariants(&eq, &job.user_gamma(), job.field, job.seed)?);
        }
        Command::Cuspidal => report.cuspidal = Some(job.cuspidal(job.r)?),
        Command::Degree => {
            let eq = job.equation()?;
            report.equation = Some(eq.to_text());
            if job.mode != Mode::Measure {
                report.theorem_degree = Some(theorem_degree(job, &eq, &mut report)?);
            }
            if job.mode != Mode::Theorem {
                let count = measure_degree(&job.variety()?, &eq, job.seed)?;
                report.measured_degree = Some(job.field.reduce(count.total as i64));
                report.count = Some(count);
            }
        }
        Command::Parity => {
            let eq = if job.equation.trim().is_empty() { umbilical_equation() } else { job.equation()? };
            report.equation = Some(eq.to_text());
            let inv = compute_invariants(&eq, &job.user_gamma(), Coefficients::Mod2, job.seed)?;
            let f = inv.invariants.values().ok_or(Error::SingularSystem)?;
            // entries multiplying a zero invariant are irrelevant
            let needed: Vec<usize> = (0..f.len()).filter(|&s| f[s] != 0).collect();
            let s = if needed.is_empty() {
                vec![0; f.len()]
            } else {
                let c = job.cuspidal(eq.order())?.padded(f.len(), job.smoothness);
                let vals: Vec<i64> = c.entries.iter().map(|e| e.value.unwrap_or(0)).collect();
                if let Some(&missing) = needed.iter().find(|&&s| c.entries[s].value.is_none()) {
                    return Err(Error::UnknownEntryNeeded(missing));
                }
                report.cuspidal = Some(c);
                vals
            };
            let p = degree_mod2(&f, &s[..f.len()])?;
            report.invariants = Some(inv);
            report.parity = Some(if p == 0 { "even".into() } else { "odd".into() });
        }
    }
    Ok(report)
}

fn plane(src: &str, smoothness: Smoothness) -> Result<Variety> {
    let c = JetChart::new(2, 1, 0)?;
    Variety::new(2, 1, vec![parse_expression(src, &c)?], smoothness)
}

fn plane_eq(src: &str) -> Result<DifferentialEquation> {
    let c = JetChart::new(2, 1, 3)?;
    DifferentialEquation::new(&c, parse_expression(src, &c)?)
}

fn show(v: &[i64]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

type Check = Box<dyn Fn(u64) -> Result<String> + Send + Sync>;

fn suite() -> Vec<(&'static str, String, Check)> {
    let smooth = "x^3 + y^2 - 1";
    let cusp = "x^3 + y^2";
    let measured = |s: &'static str, sm: Smoothness, e: &'static str| -> Check { Box::new(move |seed| Ok(measure_degree(&plane(s, sm)?, &plane_eq(e)?, seed)?.total.to_string())) };
    vec![
        ("affine count S(y'')", "8".into(), Box::new(move |_| Ok(count_affine(&plane(smooth, Smoothness::Smooth)?, &plane_eq("y''")?)?.to_string())) as Check),
        ("deg S(y')", "6".into(), measured(smooth, Smoothness::Smooth, "y'")),
        ("deg S(y'')", "9".into(), measured(smooth, Smoothness::Smooth, "y''")),
        ("deg T(y')", "3".into(), measured(cusp, Smoothness::Singular, "y'")),
        ("deg T(y'')", "1".into(), measured(cusp, Smoothness::Singular, "y''")),
        ("gamma of y'", show(&[0, 1]), Box::new(|seed| invariant_values(&plane_eq("y'")?, seed))),
        ("gamma of y''", show(&[-3, 3, 1]), Box::new(|seed| invariant_values(&plane_eq("y''")?, seed))),
        ("gamma of S", show(&[3, 6, 0]), Box::new(move |seed| cuspidal_values(&plane(smooth, Smoothness::Smooth)?, seed))),
        ("gamma of T", show(&[3, 3, 1]), Box::new(move |seed| cuspidal_values(&plane(cusp, Smoothness::Singular)?, seed))),
        ("gamma of the Hessian on P^3", show(&[-4, 4, 2]), Box::new(|seed| {
            let c = JetChart::new(3, 2, 2)?;
            invariant_values(&DifferentialEquation::new(&c, hessian_determinant(&c, 1)?)?, seed)
        })),
    ]
}

fn invariant_values(eq: &DifferentialEquation, seed: u64) -> Result<String> {
    Ok(format_entries(&compute_invariants(eq, &[], Coefficients::Rationals, seed)?.invariants.entries))
}

fn cuspidal_values(s: &Variety, seed: u64) -> Result<String> {
    Ok(format_entries(&cuspidal_numbers(s, 2, seed)?.entries))
}

/// The built-in suite of worked examples, run concurrently.
pub fn verify(seed: u64) -> Vec<VerifyItem> {
    let items = suite();
    std::thread::scope(|scope| {
        let handles: Vec<_> = items.iter().map(|(_, _, check)| scope.spawn(move || check(seed))).collect();
        items
            .iter()
            .zip(handles)
            .map(|((name, expected, _), h)| {
                let got = match h.join().expect("verification task panicked") {
                    Ok(v) => v,
                    Err(e) => format!("error {}", e.code()),
                };
                VerifyItem { name: name.to_string(), ok: &got == expected, expected: expected.clone(), got }
            })
            .collect()
    })
}

/// Route agreement for an equation calibrated on the standard tests plus
/// the cuspidal cubic.
pub fn route_agreement(eq: &DifferentialEquation, seed: u64) -> Result<Vec<RouteCheck>> {
    let mut tests = standard_tests(eq, seed)?;
    if eq.chart().is_plane_curve() && eq.order() >= 2 {
        tests.push(cusp_test(eq, seed)?);
    }
    Ok(calibration_checks(eq, &tests)?.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CUBIC_JOB: &str = r#"
n = 2
k = 1
r = 2
equation = "y''"
variety = ["x^3 + y^2 - 1"]
smoothness = "smooth"
command = "degree"
mode = "both"
seed = 3
"#;

    #[test]
    fn job_round_trip() {
        let job = Job::from_toml(CUBIC_JOB).unwrap();
        let text = job.to_toml();
        let again = Job::from_toml(&text).unwrap();
        assert_eq!(again, job);
        assert_eq!(again.to_toml(), text);
        let mut with_user = job.clone();
        with_user.user_gamma.push(UserEntry { index: 2, value: 1 });
        with_user.genus = Some(1);
        assert_eq!(Job::from_toml(&with_user.to_toml()).unwrap(), with_user);
    }

    #[test]
    fn degree_job() {
        let report = run(&Job::from_toml(CUBIC_JOB).unwrap()).unwrap();
        assert_eq!(report.theorem_degree, Some(9));
        assert_eq!(report.measured_degree, Some(9));
        assert!(report.consistent());
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(json["theorem_degree"], 9);
        assert!(report.to_text().contains("degree (theorem): 9"));
    }

    #[test]
    fn parity_job() {
        let job = Job::from_toml("n = 3\nk = 2\nr = 2\ncommand = \"parity\"\n[[user_cuspidal]]\nindex = 0\nvalue = 5\n").unwrap();
        assert_eq!(run(&job).unwrap().parity.as_deref(), Some("even"));
    }

    #[test]
    fn bad_jobs() {
        assert_eq!(Job::from_toml("n = 2").unwrap_err().code(), "INVALID_JOB");
        let job = Job::from_toml(&CUBIC_JOB.replace("y''\"", "y'' +\"")).unwrap();
        assert_eq!(run(&job).unwrap_err().exit_code(), 3);
    }
}
