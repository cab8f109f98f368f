//! Named sweeps over small tournaments, each checking one identity per
//! instance.
//!
//! Report grammar, one record per line:
//!
//! ```text
//! experiment <name> n_max=<n> enumeration=<classes|labeled> backend=<b>
//! instance <key> <pass|fail|unknown> <field>=<value> ...
//! value <field>=<value> ...
//! finding <key> <message>
//! total instances=<N> pass=<P> fail=<F> unknown=<U>
//! runtime_ms=<ms>
//! ```
//!
//! Instance keys and graph fields are digraph codes (see
//! [`Digraph::to_code`]) or constructor expressions, so any line can be
//! replayed on its own. Instances are sorted by key. `runtime_ms` is left
//! out in deterministic mode so that reports compare byte for byte.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::construct::{blow_up, c3, dijoin, k_join, qn, qn_family, transitive};
use crate::digraph::{enumerate_tournaments, family_to_assignment, tournament_classes, Digraph, InversionFamily};
use crate::error::{Error, Result};
use crate::par;
use crate::solver::{inv, is_c3_tight, rank_bound, InvOutcome, InvResult, SearchOptions};

/// Largest `n` for which the `qn` sweep checks the explicit family.
pub const QN_FAMILY_LIMIT: usize = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Experiment {
    Thm13,
    Direction,
    Abnormal,
    Kjoin,
    Thm15,
    Qn,
    Bounds,
    ConjDirection,
    Rank,
}

impl Experiment {
    pub const ALL: [Experiment; 9] = [
        Experiment::Thm13,
        Experiment::Direction,
        Experiment::Abnormal,
        Experiment::Kjoin,
        Experiment::Thm15,
        Experiment::Qn,
        Experiment::Bounds,
        Experiment::ConjDirection,
        Experiment::Rank,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Thm13 => "thm13",
            Experiment::Direction => "direction",
            Experiment::Abnormal => "abnormal",
            Experiment::Kjoin => "kjoin",
            Experiment::Thm15 => "thm15",
            Experiment::Qn => "qn",
            Experiment::Bounds => "bounds",
            Experiment::ConjDirection => "conj-direction",
            Experiment::Rank => "rank",
        }
    }

    pub fn default_n_max(self) -> usize {
        match self {
            Experiment::Thm13 => 6,
            Experiment::Direction => 5,
            Experiment::Abnormal => 3,
            Experiment::Kjoin => 4,
            Experiment::Thm15 => 3,
            Experiment::Qn => 7,
            Experiment::Bounds => 5,
            Experiment::ConjDirection => 7,
            Experiment::Rank => 5,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Experiment::Thm13 => "inv(C3 => D) = inv(D) + 1 for even inv(D) >= 2; odd inv(D) >= 3 cross-checks the even-weight criterion",
            Experiment::Direction => "inv(C3 => D) = inv(D => C3)",
            Experiment::Abnormal => "inv([C3, C3, D]) = inv(C3 => D) + 1",
            Experiment::Kjoin => "inv of a k-join with all parts but one of inversion number 1",
            Experiment::Thm15 => "inv(T[C3]_n) = n + 1 for tournaments T with inv(T) = 1",
            Experiment::Qn => "exact inv(Qn) against floor((n-1)/2) and the explicit family",
            Experiment::Bounds => "inv(n) by exhaustive sweep against (n-1)/2 - log2 n <= inv(n) <= n - 3",
            Experiment::ConjDirection => "inv(L => R) = inv(R => L) for tournament pairs with |L| + |R| <= n_max",
            Experiment::Rank => "rank of each minimal witness: = inv when even, >= inv - 1 when odd",
        }
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Experiment::ALL.iter().map(|e| e.name()).collect();
                Error::usage(format!("unknown experiment {s:?} ({})", names.join(", ")))
            })
    }
}

#[derive(Clone, Debug, Default)]
pub struct ExperimentParams {
    /// Instance size bound; `None` takes the experiment's default.
    pub n_max: Option<usize>,
    /// Sweep every labelled tournament instead of one per isomorphism class.
    pub labeled: bool,
    pub opts: SearchOptions,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

impl Verdict {
    fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub key: String,
    pub verdict: Verdict,
    pub fields: Vec<(String, String)>,
}

impl Instance {
    fn new(key: impl Into<String>, verdict: Verdict) -> Self {
        Instance {
            key: key.into(),
            verdict,
            fields: Vec::new(),
        }
    }

    fn field(mut self, name: &str, value: impl ToString) -> Self {
        self.fields.push((name.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == name).map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentReport {
    pub name: String,
    pub n_max: usize,
    pub labeled: bool,
    pub opts: SearchOptions,
    pub instances: Vec<Instance>,
    /// Derived summary rows, in the order produced.
    pub values: Vec<Vec<(String, String)>>,
    pub findings: Vec<String>,
    pub runtime: Duration,
}

impl ExperimentReport {
    pub fn count(&self, verdict: Verdict) -> usize {
        self.instances.iter().filter(|i| i.verdict == verdict).count()
    }

    pub fn all_pass(&self) -> bool {
        self.count(Verdict::Fail) == 0 && self.count(Verdict::Unknown) == 0
    }

    /// 0 when every instance passes, 3 on any failure, otherwise 2 when
    /// something stayed unresolved.
    pub fn exit_code(&self) -> i32 {
        if self.count(Verdict::Fail) > 0 {
            3
        } else if self.count(Verdict::Unknown) > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "experiment {} n_max={} enumeration={} backend={}",
            self.name,
            self.n_max,
            if self.labeled { "labeled" } else { "classes" },
            self.opts.backend
        );
        for inst in &self.instances {
            let _ = write!(out, "instance {} {}", inst.key, inst.verdict.as_str());
            for (k, v) in &inst.fields {
                let _ = write!(out, " {k}={v}");
            }
            out.push('\n');
        }
        for row in &self.values {
            out.push_str("value");
            for (k, v) in row {
                let _ = write!(out, " {k}={v}");
            }
            out.push('\n');
        }
        for f in &self.findings {
            let _ = writeln!(out, "finding {f}");
        }
        let _ = writeln!(
            out,
            "total instances={} pass={} fail={} unknown={}",
            self.instances.len(),
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::Unknown)
        );
        if !self.opts.deterministic {
            let _ = writeln!(out, "runtime_ms={}", self.runtime.as_millis());
        }
        out
    }
}

/// Family on one line: sets separated by `;`, vertices by `,`.
pub fn inline_family(f: &InversionFamily) -> String {
    if f.is_empty() {
        return "none".to_string();
    }
    f.sets
        .iter()
        .map(|s| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

enum Solved {
    Exact(InvResult),
    Unknown(String),
}

/// Resource limits become `Unknown`; everything else propagates.
fn solve(d: &Digraph, opts: &SearchOptions) -> Result<Solved> {
    match inv(d, opts) {
        Ok(InvOutcome::Exact(r)) => Ok(Solved::Exact(r)),
        Ok(InvOutcome::AboveLimit { max_k, .. }) => Ok(Solved::Unknown(format!("inv>{max_k}"))),
        Err(Error::BudgetExceeded { budget }) => Ok(Solved::Unknown(format!("budget={budget}"))),
        Err(e) => Err(e),
    }
}

fn solve_value(d: &Digraph, opts: &SearchOptions) -> Result<std::result::Result<usize, String>> {
    Ok(match solve(d, opts)? {
        Solved::Exact(r) => Ok(r.value),
        Solved::Unknown(why) => Err(why),
    })
}

fn unknown(key: String, why: String) -> Instance {
    Instance::new(key, Verdict::Unknown).field("reason", why)
}

/// Tournaments of every order in `from..=n_max`.
fn tournaments(from: usize, n_max: usize, labeled: bool) -> Result<Vec<Digraph>> {
    let mut all = Vec::new();
    for n in from..=n_max {
        if labeled {
            all.extend(enumerate_tournaments(n)?);
        } else {
            all.extend(tournament_classes(n)?);
        }
    }
    Ok(all)
}

/// Runs `f` on every item (in parallel when enabled); the inner search is
/// kept sequential.
fn sweep<T: Sync>(
    items: &[T],
    opts: &SearchOptions,
    f: impl Fn(&T, &SearchOptions) -> Result<Vec<Instance>> + Sync + Send,
) -> Result<Vec<Instance>> {
    let inner = SearchOptions {
        parallel: false,
        ..opts.clone()
    };
    let results = par::map(items, opts.parallel, |_, item| f(item, &inner));
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

pub fn run(exp: Experiment, params: &ExperimentParams) -> Result<ExperimentReport> {
    let start = Instant::now();
    let n_max = params.n_max.unwrap_or(exp.default_n_max());
    let mut report = ExperimentReport {
        name: exp.name().to_string(),
        n_max,
        labeled: params.labeled,
        opts: params.opts.clone(),
        instances: Vec::new(),
        values: Vec::new(),
        findings: Vec::new(),
        runtime: Duration::ZERO,
    };
    match exp {
        Experiment::Thm13 => thm13(params, n_max, &mut report)?,
        Experiment::Direction => direction(params, n_max, &mut report)?,
        Experiment::Abnormal => abnormal(params, n_max, &mut report)?,
        Experiment::Kjoin => kjoin(params, n_max, &mut report)?,
        Experiment::Thm15 => thm15(params, n_max, &mut report)?,
        Experiment::Qn => qn_table(params, n_max, &mut report)?,
        Experiment::Bounds => bounds(params, n_max, &mut report)?,
        Experiment::ConjDirection => conj_direction(params, n_max, &mut report)?,
        Experiment::Rank => rank(params, n_max, &mut report)?,
    }
    report.instances.sort_by(|a, b| a.key.cmp(&b.key));
    for inst in &report.instances {
        if inst.verdict == Verdict::Fail {
            let detail: Vec<String> = inst.fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
            report.findings.push(format!("{} {}", inst.key, detail.join(" ")));
        }
    }
    report.runtime = start.elapsed();
    Ok(report)
}

fn histogram(report: &mut ExperimentReport, label: &str, instances: &[Instance], field: &str) {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for inst in instances {
        if let Some(v) = inst.get(field).and_then(|v| v.parse().ok()) {
            *counts.entry(v).or_default() += 1;
        }
    }
    for (v, c) in counts {
        report
            .values
            .push(vec![(label.to_string(), v.to_string()), ("count".to_string(), c.to_string())]);
    }
}

fn thm13(params: &ExperimentParams, n_max: usize, report: &mut ExperimentReport) -> Result<()> {
    let graphs = tournaments(1, n_max, params.labeled)?;
    let instances = sweep(&graphs, &params.opts, |d, opts| {
        let key = d.to_code();
        let k = match solve_value(d, opts)? {
            Ok(k) => k,
            Err(why) => return Ok(vec![unknown(key, why)]),
        };
        if k >= 2 && k % 2 == 0 {
            let joined = dijoin(&c3(), d)?;
            let inst = match solve_value(&joined, opts)? {
                Ok(v) => Instance::new(key, if v == k + 1 { Verdict::Pass } else { Verdict::Fail })
                    .field("inv_d", k)
                    .field("inv_c3_d", v)
                    .field("expected", k + 1),
                Err(why) => unknown(key, why).field("inv_d", k),
            };
            Ok(vec![inst])
        } else if k >= 3 {
            let inst = match is_c3_tight(d, opts) {
                Ok(tight) => Instance::new(key, Verdict::Pass).field("inv_d", k).field("tight", tight),
                Err(Error::InvariantViolation(msg)) => {
                    Instance::new(key, Verdict::Fail).field("inv_d", k).field("violation", msg.replace(' ', "_"))
                }
                Err(Error::BudgetExceeded { budget }) => unknown(key, format!("budget={budget}")).field("inv_d", k),
                Err(Error::Unresolved { max_k }) => unknown(key, format!("inv>{max_k}")).field("inv_d", k),
                Err(e) => return Err(e),
            };
            Ok(vec![inst])
        } else {
            Ok(Vec::new())
        }
    })?;
    histogram(report, "inv_d", &instances, "inv_d");
    report.instances = instances;
    Ok(())
}

fn direction(params: &ExperimentParams, n_max: usize, report: &mut ExperimentReport) -> Result<()> {
    let graphs = tournaments(1, n_max, params.labeled)?;
    report.instances = sweep(&graphs, &params.opts, |d, opts| {
        let key = d.to_code();
        let a = solve_value(&dijoin(&c3(), d)?, opts)?;
        let b = solve_value(&dijoin(d, &c3())?, opts)?;
        Ok(vec![match (a, b) {
            (Ok(a), Ok(b)) => Instance::new(key, if a == b { Verdict::Pass } else { Verdict::Fail })
                .field("inv_c3_d", a)
                .field("inv_d_c3", b),
            (Err(why), _) | (_, Err(why)) => unknown(key, why),
        }])
    })?;
    Ok(())
}

fn abnormal(params: &ExperimentParams, n_max: usize, report: &mut ExperimentReport) -> Result<()> {
    let graphs = tournaments(1, n_max, params.labeled)?;
    report.instances = sweep(&graphs, &params.opts, |d, opts| {
        let key = d.to_code();
        let a = solve_value(&k_join(&[c3(), c3(), d.clone()])?, opts)?;
        let b = solve_value(&dijoin(&c3(), d)?, opts)?;
        Ok(vec![match (a, b) {
            (Ok(a), Ok(b)) => Instance::new(key, if a == b + 1 { Verdict::Pass } else { Verdict::Fail })
                .field("inv_join", a)
                .field("inv_c3_d", b),
            (Err(why), _) | (_, Err(why)) => unknown(key, why),
        }])
    })?;
    Ok(())
}

/// Expected k-join value when every part except `special` has inversion
/// number 1.
fn kjoin_expected(values: &[usize], special_tight: bool) -> usize {
    let sum: usize = values.iter().sum();
    if special_tight {
        sum - 1
    } else {
        sum
    }
}

fn kjoin(params: &ExperimentParams, n_max: usize, report: &mut ExperimentReport) -> Result<()> {
    let graphs = tournaments(3, n_max, params.labeled)?;
    let inner = SearchOptions {
        parallel: false,
        ..params.opts.clone()
    };
    // Solve the parts once.
    let parts: Vec<(Digraph, usize, bool)> = par::map(&graphs, params.opts.parallel, |_, d| -> Result<_> {
        let k = solve_value(d, &inner)?;
        let direct = solve_value(&dijoin(&c3(), d)?, &inner)?;
        Ok(match (k, direct) {
            (Ok(k), Ok(v)) if k >= 1 => Some((d.clone(), k, v == k)),
            _ => None,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?
    .into_iter()
    .flatten()
    .collect();
    let ones: Vec<&(Digraph, usize, bool)> = parts.iter().filter(|p| p.1 == 1).collect();

    // (parts with their values, index of the special part, its tightness)
    type Case = (Vec<(Digraph, usize)>, usize, bool);
    let mut cases: Vec<Case> = Vec::new();
    for special in &parts {
        for one in &ones {
            let s = (special.0.clone(), special.1);
            let o = (one.0.clone(), one.1);
            cases.push((vec![s.clone(), o.clone()], 0, special.2));
            cases.push((vec![o, s], 1, special.2));
        }
        for j in 0..3 {
            let mut seq = vec![(c3(), 1); 3];
            seq[j] = (special.0.clone(), special.1);
            cases.push((seq, j, special.2));
        }
    }
    report.instances = sweep(&cases, &params.opts, |(seq, j, tight), opts| {
        let graphs: Vec<Digraph> = seq.iter().map(|p| p.0.clone()).collect();
        let key = graphs.iter().map(|g| g.to_code()).collect::<Vec<_>>().join(",");
        let values: Vec<usize> = seq.iter().map(|p| p.1).collect();
        let expected = kjoin_expected(&values, *tight);
        let joined = k_join(&graphs)?;
        Ok(vec![match solve_value(&joined, opts)? {
            Ok(v) => Instance::new(key, if v == expected { Verdict::Pass } else { Verdict::Fail })
                .field("special", j)
                .field("tight", tight)
                .field("inv", v)
                .field("expected", expected),
            Err(why) => unknown(key, why),
        }])
    })?;
    Ok(())
}

fn thm15(params: &ExperimentParams, n_max: usize, report: &mut ExperimentReport) -> Result<()> {
    let graphs = tournaments(3, n_max, params.labeled)?;
    report.instances = sweep(&graphs, &params.opts, |t, opts| {
        let key = t.to_code();
        match solve_value(t, opts)? {
            Ok(1) => {}
            Ok(_) => return Ok(Vec::new()),
            Err(why) => return Ok(vec![unknown(key, why)]),
        }
        let n = t.order();
        let blown = blow_up(t, &vec![c3(); n])?;
        Ok(vec![match solve_value(&blown, opts)? {
            Ok(v) => Instance::new(key, if v == n + 1 { Verdict::Pass } else { Verdict::Fail })
                .field("n", n)
                .field("inv_blowup", v)
                .field("expected", n + 1),
            Err(why) => unknown(key, why),
        }])
    })?;
    Ok(())
}

fn qn_table(params: &ExperimentParams, n_max: usize, report: &mut ExperimentReport) -> Result<()> {
    let sizes: Vec<usize> = (1..=n_max.max(QN_FAMILY_LIMIT)).collect();
    let instances = sweep(&sizes, &params.opts, |&n, opts| {
        let g = qn(n);
        let bound = (n.saturating_sub(1)) / 2;
        let family = qn_family(n);
        let family_ok = family.len() == bound && g.apply_family(&family)?.is_acyclic();
        let key = format!("qn({n:02})");
        let mut inst = Instance::new(key, if family_ok { Verdict::Pass } else { Verdict::Fail })
            .field("n", n)
            .field("bound", bound)
            .field("family_ok", family_ok);
        if n <= n_max {
            match solve_value(&g, opts)? {
                Ok(v) => {
                    if v > bound {
                        inst.verdict = Verdict::Fail;
                    }
                    inst = inst.field("inv", v);
                }
                Err(why) => {
                    if inst.verdict == Verdict::Pass {
                        inst.verdict = Verdict::Unknown;
                    }
                    inst = inst.field("reason", why);
                }
            }
        }
        Ok(vec![inst])
    })?;
    for inst in &instances {
        if let Some(v) = inst.get("inv") {
            report.values.push(vec![
                ("n".to_string(), inst.get("n").unwrap_or_default().to_string()),
                ("inv".to_string(), v.to_string()),
                ("bound".to_string(), inst.get("bound").unwrap_or_default().to_string()),
            ]);
        }
    }
    report.instances = instances;
    Ok(())
}

fn bounds(params: &ExperimentParams, n_max: usize, report: &mut ExperimentReport) -> Result<()> {
    let inner = SearchOptions {
        parallel: false,
        ..params.opts.clone()
    };
    for n in 1..=n_max {
        let graphs = if params.labeled {
            enumerate_tournaments(n)?.collect()
        } else {
            tournament_classes(n)?
        };
        let values = par::map(&graphs, params.opts.parallel, |_, d| solve_value(d, &inner));
        let mut best: Option<(usize, String)> = None;
        let mut unresolved = None;
        for (d, v) in graphs.iter().zip(values) {
            match v? {
                Ok(v) => {
                    if best.as_ref().is_none_or(|(b, _)| v > *b) {
                        best = Some((v, d.to_code()));
                    }
                }
                Err(why) => unresolved = Some(why),
            }
        }
        let (inv_n, witness) = best.unwrap_or((0, transitive(n).to_code()));
        let lower = (n as f64 - 1.0) / 2.0 - (n as f64).log2();
        let upper_ok = n < 4 || inv_n + 3 <= n;
        let lower_ok = n < 4 || inv_n as f64 >= lower;
        let verdict = match (upper_ok && lower_ok, &unresolved) {
            (false, _) => Verdict::Fail,
            (true, Some(_)) => Verdict::Unknown,
            (true, None) => Verdict::Pass,
        };
        let mut inst = Instance::new(format!("n={n:02}"), verdict)
            .field("inv_n", inv_n)
            .field("upper", if n >= 4 { (n - 3).to_string() } else { "-".to_string() })
            .field("lower", format!("{lower:.3}"))
            .field("witness", &witness);
        if let Some(why) = unresolved {
            inst = inst.field("reason", why);
        }
        report.values.push(vec![
            ("n".to_string(), n.to_string()),
            ("inv_n".to_string(), inv_n.to_string()),
            ("tournaments".to_string(), graphs.len().to_string()),
        ]);
        report.instances.push(inst);
    }
    Ok(())
}

fn conj_direction(params: &ExperimentParams, n_max: usize, report: &mut ExperimentReport) -> Result<()> {
    let graphs = tournaments(1, n_max.saturating_sub(1), params.labeled)?;
    let mut pairs = Vec::new();
    for (i, l) in graphs.iter().enumerate() {
        for r in &graphs[i..] {
            if l.order() + r.order() <= n_max {
                pairs.push((l.clone(), r.clone()));
            }
        }
    }
    report.instances = sweep(&pairs, &params.opts, |(l, r), opts| {
        let key = format!("{},{}", l.to_code(), r.to_code());
        let a = solve_value(&dijoin(l, r)?, opts)?;
        let b = solve_value(&dijoin(r, l)?, opts)?;
        Ok(vec![match (a, b) {
            (Ok(a), Ok(b)) => Instance::new(key, if a == b { Verdict::Pass } else { Verdict::Fail })
                .field("inv_l_r", a)
                .field("inv_r_l", b),
            (Err(why), _) | (_, Err(why)) => unknown(key, why),
        }])
    })?;
    Ok(())
}

fn rank(params: &ExperimentParams, n_max: usize, report: &mut ExperimentReport) -> Result<()> {
    let graphs = tournaments(1, n_max, params.labeled)?;
    let instances = sweep(&graphs, &params.opts, |d, opts| {
        let key = d.to_code();
        let result = match solve(d, opts)? {
            Solved::Exact(r) => r,
            Solved::Unknown(why) => return Ok(vec![unknown(key, why)]),
        };
        let assignment = family_to_assignment(&result.witness, d.order())?;
        let verdict = rank_bound(result.value, &assignment);
        Ok(vec![Instance::new(key, if verdict.holds { Verdict::Pass } else { Verdict::Fail })
            .field("inv", verdict.inv)
            .field("rank", verdict.rank)
            .field("required", verdict.required)
            .field("witness", inline_family(&result.witness))])
    })?;
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for inst in &instances {
        if let (Some(k), Some(r)) = (inst.get("inv"), inst.get("rank")) {
            if let (Ok(k), Ok(r)) = (k.parse(), r.parse()) {
                *seen.entry((k, r)).or_default() += 1;
            }
        }
    }
    for ((k, r), c) in seen {
        report.values.push(vec![
            ("inv".to_string(), k.to_string()),
            ("rank".to_string(), r.to_string()),
            ("count".to_string(), c.to_string()),
        ]);
    }
    report.instances = instances;
    Ok(())
}
