//! Command runners behind the `greenjump` binary.
//!
//! Every runner returns a [`Report`]; the binary prints it as text or JSON
//! and maps it to an exit status (0 ok, 1 falsified check, 2 input error).
//! All numbers are rendered as exact `p/q` strings.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::forest::{averaged_current, green_forest_divisors};
use crate::instance::{parse_instance, InstanceFile};
use crate::jump::{check_effectivity, height_jump, jump_bound, phi_evaluate, PhiFunction};
use crate::labelled::{LabelledGraph, TestVector};
use crate::network::{edge_currents, effective_resistance, green, power, power_pairing, Divisor};
use crate::random;
use crate::rational::{self, ratio, Rational};
use crate::symbolic::expand_phi;

#[derive(Debug, Parser)]
#[command(
    name = "greenjump",
    version,
    about = "Exact Green's functions and height jumps on labelled graphs"
)]
pub struct Cli {
    /// Emit a machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Green's function of the pullback at `m` for two named divisors.
    Green {
        file: PathBuf,
        #[arg(long)]
        m: String,
        #[arg(long)]
        d: String,
        #[arg(long)]
        e: String,
    },
    /// Effective resistance between two vertices of the pullback at `m`.
    Reff {
        file: PathBuf,
        #[arg(long)]
        m: String,
        #[arg(long)]
        i: String,
        #[arg(long)]
        j: String,
    },
    /// Height jump at `m`; divisors default to `D` and `E`.
    Jump {
        file: PathBuf,
        #[arg(long)]
        m: String,
        #[arg(long)]
        d: Option<String>,
        #[arg(long)]
        e: Option<String>,
    },
    /// `Φ` at a vector of nonnegative rationals.
    Phi {
        file: PathBuf,
        #[arg(long)]
        m: String,
        #[arg(long)]
        d: Option<String>,
        #[arg(long)]
        e: Option<String>,
        /// Also print `Φ` as an (unreduced) ratio of polynomials.
        #[arg(long)]
        expand: bool,
    },
    /// Constants of the nonlinearity bound.
    Bound {
        file: PathBuf,
        #[arg(long)]
        d: Option<String>,
        #[arg(long)]
        e: Option<String>,
    },
    /// Sweep `{1..N}^r` and the unit vectors, checking the jump theorems.
    Verify {
        file: PathBuf,
        #[arg(long)]
        grid: u64,
        /// Also sweep seeded random zero-sum divisors.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        d: Option<String>,
        #[arg(long)]
        e: Option<String>,
    },
    /// Compare the Laplacian solve with the spanning-forest formula.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        m: String,
    },
    /// Property suite on seeded random instances.
    Selftest {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        cases: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub instance: Option<String>,
    pub inputs: BTreeMap<String, Value>,
    pub result: Value,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub text: Vec<String>,
}

impl Report {
    fn new(command: &str, instance: Option<&Path>) -> Self {
        Report {
            command: command.into(),
            instance: instance.map(|p| p.display().to_string()),
            inputs: BTreeMap::new(),
            result: Value::Null,
            checks: Vec::new(),
            text: Vec::new(),
        }
    }

    fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.into(), value.into());
    }

    fn push(&mut self, tally: Tally) {
        let (status, witness) = match tally.failure {
            None => (Status::Pass, format!("{} cases", tally.cases)),
            Some(w) => (Status::Fail, w),
        };
        self.text.push(match status {
            Status::Pass => format!("{} OK ({})", tally.name, witness),
            Status::Fail => format!("{} FAILED: {}", tally.name, witness),
        });
        self.checks.push(Check {
            name: tally.name,
            status,
            witness,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            serde_json::to_string_pretty(self).expect("reports always serialize")
        } else {
            self.text.join("\n")
        }
    }
}

/// Counts cases for one named property and keeps the first failure.
struct Tally {
    name: String,
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally {
            name: name.into(),
            cases: 0,
            failure: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }
}

fn fmt(q: &Rational) -> String {
    rational::format(q)
}

fn fmt_all(qs: &[Rational]) -> Vec<String> {
    qs.iter().map(fmt).collect()
}

fn fmt_m(m: &TestVector) -> String {
    let parts: Vec<String> = m.entries().iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn parse_integers(s: &str) -> Result<TestVector> {
    let m = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidArgument(format!("`{x}` is not a nonnegative integer")))
        })
        .collect::<Result<Vec<_>>>()?;
    TestVector::new(m)
}

pub fn parse_rationals(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .map(|x| {
            rational::parse(x.trim())
                .ok_or_else(|| Error::InvalidArgument(format!("`{x}` is not a rational")))
        })
        .collect()
}

/// `d` defaults to `D`; `e` defaults to `d` when `d` was given, otherwise
/// to `E` if present and `D` if not.
fn divisor_names(inst: &InstanceFile, d: &Option<String>, e: &Option<String>) -> (String, String) {
    let dn = d.clone().unwrap_or_else(|| "D".into());
    let en = match (e, d) {
        (Some(e), _) => e.clone(),
        (None, Some(d)) => d.clone(),
        (None, None) if inst.divisors.contains_key("E") => "E".into(),
        (None, None) => "D".into(),
    };
    (dn, en)
}

fn check_rank(lg: &LabelledGraph, m: &TestVector) -> Result<()> {
    if m.len() != lg.rank() {
        return Err(Error::DimensionMismatch {
            expected: lg.rank(),
            actual: m.len(),
        });
    }
    Ok(())
}

pub fn run(command: &Command) -> Result<Report> {
    match command {
        Command::Green { file, m, d, e } => run_green(file, m, d, e),
        Command::Reff { file, m, i, j } => run_reff(file, m, i, j),
        Command::Jump { file, m, d, e } => run_jump(file, m, d, e),
        Command::Phi {
            file,
            m,
            d,
            e,
            expand,
        } => run_phi(file, m, d, e, *expand),
        Command::Bound { file, d, e } => run_bound(file, d, e),
        Command::Verify {
            file,
            grid,
            seed,
            d,
            e,
        } => run_verify(file, *grid, *seed, d, e),
        Command::Oracle { file, m } => run_oracle(file, m),
        Command::Selftest { seed, cases } => Ok(run_selftest(*seed, *cases)),
    }
}

fn run_green(file: &Path, m: &str, d: &str, e: &str) -> Result<Report> {
    let inst = parse_instance(file)?;
    let mv = parse_integers(m)?;
    let value = green(
        &inst.labelled.pullback(&mv)?,
        inst.divisor(d)?,
        inst.divisor(e)?,
    )?;
    let mut report = Report::new("green", Some(file));
    report.input("m", m);
    report.input("d", d);
    report.input("e", e);
    report.result = json!({ "value": fmt(&value) });
    report.text.push(fmt(&value));
    Ok(report)
}

fn run_reff(file: &Path, m: &str, i: &str, j: &str) -> Result<Report> {
    let inst = parse_instance(file)?;
    let mv = parse_integers(m)?;
    let value = effective_resistance(&inst.labelled.pullback(&mv)?, i, j)?;
    let mut report = Report::new("reff", Some(file));
    report.input("m", m);
    report.input("i", i);
    report.input("j", j);
    report.result = json!({ "value": fmt(&value) });
    report.text.push(fmt(&value));
    Ok(report)
}

fn run_jump(file: &Path, m: &str, d: &Option<String>, e: &Option<String>) -> Result<Report> {
    let inst = parse_instance(file)?;
    let (dn, en) = divisor_names(&inst, d, e);
    let mv = parse_integers(m)?;
    check_rank(&inst.labelled, &mv)?;
    let j = height_jump(&inst.labelled, inst.divisor(&dn)?, inst.divisor(&en)?, &mv)?;
    let mut report = Report::new("jump", Some(file));
    report.input("m", m);
    report.input("d", dn);
    report.input("e", en);
    report.result = json!({
        "value": fmt(&j.value),
        "full_term": fmt(&j.full_term),
        "slice_terms": fmt_all(&j.slice_terms),
    });
    report.text.push(fmt(&j.value));
    Ok(report)
}

fn run_phi(
    file: &Path,
    m: &str,
    d: &Option<String>,
    e: &Option<String>,
    expand: bool,
) -> Result<Report> {
    let inst = parse_instance(file)?;
    let (dn, en) = divisor_names(&inst, d, e);
    let mq = parse_rationals(m)?;
    let (dd, ee) = (inst.divisor(&dn)?.clone(), inst.divisor(&en)?.clone());
    let phi = PhiFunction::new(inst.labelled.clone(), dd.clone(), ee.clone());
    let value = phi_evaluate(&phi, &mq)?;
    let mut report = Report::new("phi", Some(file));
    report.input("m", m);
    report.input("d", dn);
    report.input("e", en);
    report.input("expand", expand);
    report.text.push(fmt(&value));
    let mut result = json!({ "value": fmt(&value) });
    if expand {
        let x = expand_phi(&inst.labelled, &dd, &ee)?;
        let names = inst.labelled.components();
        let (num, den) = (x.numerator.render(names), x.denominator.render(names));
        report.text.push(format!("numerator: {num}"));
        report.text.push(format!("denominator: {den}"));
        result["numerator"] = json!(num);
        result["denominator"] = json!(den);
        result["generic_terms"] = json!(fmt_all(&x.generic_terms));
    }
    report.result = result;
    Ok(report)
}

fn run_bound(file: &Path, d: &Option<String>, e: &Option<String>) -> Result<Report> {
    let inst = parse_instance(file)?;
    let (dn, en) = divisor_names(&inst, d, e);
    let b = jump_bound(&inst.labelled, inst.divisor(&dn)?, inst.divisor(&en)?)?;
    let mut report = Report::new("bound", Some(file));
    report.input("d", dn);
    report.input("e", en);
    report.result = json!({
        "c_prime": fmt(&b.c_prime),
        "a_max": b.a_max,
        "r": b.rank,
        "c": fmt(&b.c),
        "label_mass": b.label_mass,
    });
    report.text.push(format!("c' = {}", fmt(&b.c_prime)));
    report.text.push(format!("a_max = {}", b.a_max));
    report.text.push(format!("r = {}", b.rank));
    report.text.push(format!("c = {}", fmt(&b.c)));
    Ok(report)
}

/// Effectivity over `points` for one divisor.
fn sweep_effectivity(
    tally: &mut Tally,
    lg: &LabelledGraph,
    d: &Divisor,
    points: &[TestVector],
) -> Result<()> {
    for m in points {
        let eff = check_effectivity(lg, d, m)?;
        tally.record(eff.holds, || {
            format!("m={}: J(D,D)={}", fmt_m(m), fmt(&eff.value))
        });
    }
    Ok(())
}

fn run_verify(
    file: &Path,
    grid: u64,
    seed: Option<u64>,
    d: &Option<String>,
    e: &Option<String>,
) -> Result<Report> {
    if grid == 0 {
        return Err(Error::InvalidArgument("--grid must be at least 1".into()));
    }
    let inst = parse_instance(file)?;
    let (dn, en) = divisor_names(&inst, d, e);
    let lg = &inst.labelled;
    let (dd, ee) = (inst.divisor(&dn)?, inst.divisor(&en)?);
    let r = lg.rank();
    let points = random::grid(r, 1, grid);

    let mut report = Report::new("verify", Some(file));
    report.input("grid", grid);
    report.input("d", dn.clone());
    report.input("e", en.clone());
    if let Some(s) = seed {
        report.input("seed", s);
    }

    let mut eff = Tally::new("effectivity");
    sweep_effectivity(&mut eff, lg, dd, &points)?;

    let mut homog = Tally::new("homogeneity");
    let bound = jump_bound(lg, dd, ee)?;
    let mut within = Tally::new("bound");
    let mut values = BTreeMap::new();
    for m in &points {
        let j = height_jump(lg, dd, ee, m)?.value;
        for a in [2u64, 3] {
            let ja = height_jump(lg, dd, ee, &m.scaled(a)?)?.value;
            let want = &j * rational::int(a as i64);
            homog.record(ja == want, || {
                format!(
                    "m={}, a={a}: J(am)={} but aJ(m)={}",
                    fmt_m(m),
                    fmt(&ja),
                    fmt(&want)
                )
            });
        }
        let limit = bound.weighted_limit(m);
        within.record(j.abs() <= limit, || {
            format!(
                "m={}: |J|={} exceeds {}",
                fmt_m(m),
                fmt(&j.abs()),
                fmt(&limit)
            )
        });
        values.insert(fmt_m(m), fmt(&j));
    }

    let mut linear = Tally::new("no-linear-part");
    for i in 0..r {
        let m = TestVector::unit(r, i);
        let j = height_jump(lg, dd, ee, &m)?.value;
        linear.record(j.is_zero(), || format!("m={}: J={}", fmt_m(&m), fmt(&j)));
    }

    report.push(eff);
    report.push(homog);
    report.push(linear);
    report.push(within);

    if let Some(s) = seed {
        let mut rng = random::seeded(s);
        let mut rand_eff = Tally::new("random-divisor effectivity");
        let n = lg.graph().vertex_count();
        for _ in 0..8 {
            let d = random::zero_sum_divisor(&mut rng, n, 3);
            sweep_effectivity(&mut rand_eff, lg, &d, &points)?;
        }
        report.push(rand_eff);
    }

    report.result = json!({
        "cases": points.len(),
        "c_prime": fmt(&bound.c_prime),
        "c": fmt(&bound.c),
        "jump": values,
    });
    Ok(report)
}

fn run_oracle(file: &Path, m: &str) -> Result<Report> {
    let inst = parse_instance(file)?;
    let mv = parse_integers(m)?;
    let net = inst.labelled.pullback(&mv)?;
    let (quotient, contraction) = net.proper_quotient()?;
    let k = quotient.graph().vertex_count();
    let push = |d: &Divisor| d.push_forward(&contraction.class_of, k);
    let g = net.graph();
    let n = g.vertex_count();

    let mut tally = Tally::new("forest-formula");
    let mut dipoles = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            dipoles.push((
                format!("{}-{}", g.vertex_id(i), g.vertex_id(j)),
                Divisor::dipole_at(n, i, j),
            ));
        }
    }
    for (name, d) in &inst.divisors {
        dipoles.push((name.clone(), d.clone()));
    }
    for (dn, d) in &dipoles {
        for (en, e) in &dipoles {
            let lhs = green(&net, d, e)?;
            let rhs = green_forest_divisors(&quotient, &push(d), &push(e))?;
            tally.record(lhs == rhs, || {
                format!("g({dn},{en}): solve {} vs forests {}", fmt(&lhs), fmt(&rhs))
            });
        }
    }

    let mut report = Report::new("oracle", Some(file));
    report.input("m", m);
    report.result = json!({ "comparisons": tally.cases, "quotient_vertices": k });
    let ok = tally.failure.is_none();
    let witness = tally.failure.clone();
    report.push(tally);
    report.text = vec![if ok {
        "OK".into()
    } else {
        format!("MISMATCH {}", witness.unwrap_or_default())
    }];
    Ok(report)
}

struct Suite {
    forest: Tally,
    homogeneity: Tally,
    contraction: Tally,
    concavity: Tally,
    monotonicity: Tally,
    nonlinearity: Tally,
    least_power: Tally,
    cycle: Tally,
    averaging: Tally,
    effectivity: Tally,
    no_linear: Tally,
    jump_homogeneity: Tally,
    jump_bound: Tally,
    generic_point: Tally,
}

impl Suite {
    fn new() -> Self {
        Suite {
            forest: Tally::new("forest-formula"),
            homogeneity: Tally::new("homogeneity"),
            contraction: Tally::new("contraction-limit"),
            concavity: Tally::new("concavity"),
            monotonicity: Tally::new("monotonicity"),
            nonlinearity: Tally::new("nonlinearity-bound"),
            least_power: Tally::new("least-power"),
            cycle: Tally::new("cycle-orthogonality"),
            averaging: Tally::new("current-averaging"),
            effectivity: Tally::new("jump-effectivity"),
            no_linear: Tally::new("jump-no-linear-part"),
            jump_homogeneity: Tally::new("jump-homogeneity"),
            jump_bound: Tally::new("jump-bound"),
            generic_point: Tally::new("generic-point"),
        }
    }

    fn into_tallies(self) -> Vec<Tally> {
        vec![
            self.forest,
            self.homogeneity,
            self.contraction,
            self.concavity,
            self.monotonicity,
            self.nonlinearity,
            self.least_power,
            self.cycle,
            self.averaging,
            self.effectivity,
            self.no_linear,
            self.jump_homogeneity,
            self.jump_bound,
            self.generic_point,
        ]
    }
}

fn l1(mu: &[Rational]) -> Rational {
    mu.iter().sum()
}

fn network_case(s: &mut Suite, rng: &mut rand_chacha::ChaCha8Rng, case: usize) -> Result<()> {
    use rand::Rng;

    let net = random::proper_network(rng);
    let g = net.graph().clone();
    let n = g.vertex_count();
    let mu = net.resistances().to_vec();
    let d = random::dipole(rng, n);
    let e = random::dipole(rng, n);
    let z = random::zero_sum_divisor(rng, n, 3);
    let gde = green(&net, &d, &e)?;

    let forest = green_forest_divisors(&net, &d, &e)?;
    s.forest.record(gde == forest, || {
        format!("case {case}: {} vs {}", fmt(&gde), fmt(&forest))
    });

    for a in [rational::int(2), rational::int(3), ratio(7, 2)] {
        let ga = green(&net.scaled(&a)?, &d, &e)?;
        s.homogeneity
            .record(ga == &a * &gde, || format!("case {case}, a={}", fmt(&a)));
    }

    let zeroed = random::edge_subset(rng, g.edge_count());
    let mu_s: Vec<Rational> = (0..g.edge_count())
        .map(|c| {
            if zeroed.contains(c) {
                Rational::zero()
            } else {
                mu[c].clone()
            }
        })
        .collect();
    let limit = green(&net.with_resistances(mu_s)?, &d, &e)?;
    let (quotient, contraction) = net.contract_edges(zeroed)?;
    let k = quotient.graph().vertex_count();
    let on_quotient = green_forest_divisors(
        &quotient,
        &d.push_forward(&contraction.class_of, k),
        &e.push_forward(&contraction.class_of, k),
    )?;
    s.contraction.record(limit == on_quotient, || {
        format!("case {case}: {} vs {}", fmt(&limit), fmt(&on_quotient))
    });

    let gzz = green(&net, &z, &z)?;
    let split: Vec<Rational> = mu
        .iter()
        .map(|x| x * ratio(rng.gen_range(1..=3), 4))
        .collect();
    let rest: Vec<Rational> = mu.iter().zip(&split).map(|(a, b)| a - b).collect();
    let (n1, n2) = (net.with_resistances(split)?, net.with_resistances(rest)?);
    let (g1, g2) = (green(&n1, &z, &z)?, green(&n2, &z, &z)?);
    let mut ok = gzz >= &g1 + &g2;
    if ok && gzz == &g1 + &g2 {
        let i = edge_currents(&net, &z)?;
        ok = i == edge_currents(&n1, &z)? && i == edge_currents(&n2, &z)?;
    }
    s.concavity.record(ok, || {
        format!("case {case}: {} vs {} + {}", fmt(&gzz), fmt(&g1), fmt(&g2))
    });

    let bumped: Vec<Rational> = mu
        .iter()
        .map(|x| {
            if rng.gen_bool(0.5) {
                x + random::positive_rational(rng)
            } else {
                x.clone()
            }
        })
        .collect();
    let bigger = net.with_resistances(bumped.clone())?;
    let gb = green(&bigger, &z, &z)?;
    let mut ok = gzz <= gb;
    if ok && gzz == gb {
        let (i, ib) = (edge_currents(&net, &z)?, edge_currents(&bigger, &z)?);
        ok = (0..g.edge_count())
            .all(|c| mu[c] == bumped[c] || (i.values()[c].is_zero() && ib.values()[c].is_zero()));
    }
    s.monotonicity
        .record(ok, || format!("case {case}: {} vs {}", fmt(&gzz), fmt(&gb)));

    let parts = rng.gen_range(2..=3);
    let summands: Vec<Vec<Rational>> = (0..parts)
        .map(|_| random::resistances(rng, g.edge_count()))
        .collect();
    let total: Vec<Rational> = (0..g.edge_count())
        .map(|c| summands.iter().map(|m| &m[c]).sum())
        .collect();
    let w = random::zero_sum_divisor(rng, n, 3);
    let mut gap = green(&net.with_resistances(total)?, &z, &w)?;
    for m in &summands {
        gap -= green(&net.with_resistances(m.clone())?, &z, &w)?;
    }
    let masses: Vec<Rational> = summands.iter().map(|m| l1(m)).collect();
    let mass: Rational = masses.iter().sum();
    let loo = masses
        .iter()
        .map(|x| &mass - x)
        .min()
        .expect("at least two summands");
    let limit = z.norm() * w.norm() * loo;
    s.nonlinearity.record(gap.abs() <= limit, || {
        format!("case {case}: |{}| > {}", fmt(&gap), fmt(&limit))
    });

    let currents = edge_currents(&net, &z)?;
    let p = power(&net, &currents)?;
    s.least_power.record(p == gzz, || {
        format!("case {case}: power {} vs g {}", fmt(&p), fmt(&gzz))
    });
    for _ in 0..10 {
        let c = random::cycle_flow(rng, &g);
        let cross = power_pairing(&net, &currents, &c);
        s.cycle.record(cross.is_zero(), || {
            format!("case {case}: cross term {}", fmt(&cross))
        });
    }

    let (kv, lv) = (rng.gen_range(0..n), rng.gen_range(0..n));
    let unit = edge_currents(&net, &Divisor::dipole_at(n, kv, lv))?;
    for (c, edge) in g.edges().iter().enumerate() {
        let avg = averaged_current(
            &net,
            g.vertex_id(kv),
            g.vertex_id(lv),
            &edge.id,
            g.vertex_id(edge.ends[0]),
            g.vertex_id(edge.ends[1]),
        )?;
        s.averaging.record(avg == unit.values()[c], || {
            format!(
                "case {case}, edge {}: {} vs {}",
                edge.id,
                fmt(&avg),
                fmt(&unit.values()[c])
            )
        });
    }
    Ok(())
}

fn labelled_case(s: &mut Suite, rng: &mut rand_chacha::ChaCha8Rng, case: usize) -> Result<()> {
    let lg = random::labelled_graph(rng, 5, 6, 3, 3);
    let n = lg.graph().vertex_count();
    let r = lg.rank();
    let d = random::zero_sum_divisor(rng, n, 3);
    let e = random::zero_sum_divisor(rng, n, 3);
    let bound = jump_bound(&lg, &d, &e)?;

    for i in 0..r {
        let j = height_jump(&lg, &d, &e, &TestVector::unit(r, i))?.value;
        s.no_linear
            .record(j.is_zero(), || format!("case {case}, e_{i}: {}", fmt(&j)));
    }
    let generic: Vec<Rational> = (0..r)
        .map(|i| {
            let gp = lg.generic_point_graph(i)?;
            let k = gp.network.graph().vertex_count();
            let cls = &gp.contraction.class_of;
            green(
                &gp.network,
                &d.push_forward(cls, k),
                &e.push_forward(cls, k),
            )
        })
        .collect::<Result<_>>()?;

    for _ in 0..4 {
        let m = random::test_vector(rng, r, 4);
        let eff = check_effectivity(&lg, &d, &m)?;
        s.effectivity.record(eff.holds, || {
            format!("case {case}, m={}: {}", fmt_m(&m), fmt(&eff.value))
        });
        let jr = height_jump(&lg, &d, &e, &m)?;
        for a in [2u64, 3] {
            let ja = height_jump(&lg, &d, &e, &m.scaled(a)?)?.value;
            s.jump_homogeneity
                .record(ja == &jr.value * rational::int(a as i64), || {
                    format!("case {case}, m={}, a={a}", fmt_m(&m))
                });
        }
        let limit = bound.weighted_limit(&m);
        s.jump_bound.record(jr.value.abs() <= limit, || {
            format!(
                "case {case}, m={}: |{}| > {}",
                fmt_m(&m),
                fmt(&jr.value),
                fmt(&limit)
            )
        });
        for (i, gi) in generic.iter().enumerate() {
            let want = gi * rational::int(m.entries()[i] as i64);
            s.generic_point.record(jr.slice_terms[i] == want, || {
                format!(
                    "case {case}, m={}, i={i}: {} vs {}",
                    fmt_m(&m),
                    fmt(&jr.slice_terms[i]),
                    fmt(&want)
                )
            });
        }
    }
    Ok(())
}

/// Runs the full property suite on `cases` seeded instances. The output is
/// a pure function of `(seed, cases)`.
pub fn run_selftest(seed: u64, cases: usize) -> Report {
    let mut rng = random::seeded(seed);
    let mut suite = Suite::new();
    let mut errors = Tally::new("no-errors");
    for case in 0..cases {
        if let Err(err) = network_case(&mut suite, &mut rng, case) {
            errors.record(false, || format!("case {case}: {err}"));
        }
        if let Err(err) = labelled_case(&mut suite, &mut rng, case) {
            errors.record(false, || format!("case {case}: {err}"));
        }
    }
    let mut report = Report::new("selftest", None);
    report.input("seed", seed);
    report.input("cases", cases);
    report
        .text
        .push(format!("selftest seed={seed} cases={cases}"));
    for t in suite.into_tallies() {
        report.push(t);
    }
    if errors.cases > 0 {
        report.push(errors);
    }
    report.result = json!({ "passed": report.passed() });
    report
}
