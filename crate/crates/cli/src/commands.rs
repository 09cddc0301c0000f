use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use torus_asep::dynamics::{build_generator, reachability_tau0, restrict_ta, Generator, GeneratorMode, ReachDirection};
use torus_asep::export::{write_csv, write_json, write_state_manifest, write_triplets};
use torus_asep::mcmc::{compare_with_closed_forms, estimate_observables, simulate, Horizon, SimConfig};
use torus_asep::model::{enumerate_full, enumerate_restricted_capped};
use torus_asep::observables::{observables, partition_function_special, scott_russell_check, SpecialCase};
use torus_asep::stationary::{
    config_weight, exact_stationary, lump_and_evans, symbolic_table, verify_balance_numeric, verify_balance_symbolic,
    weight_identities,
};
use torus_asep::{state_cap_from_env, Error, RatePoint, Result};

use crate::{Command, Format, Mode, Out, Rates, Size};

/// Runs a subcommand; `Ok(false)` means a requested check failed.
pub fn run(cmd: Command) -> Result<bool> {
    let cap = state_cap_from_env();
    match cmd {
        Command::Enumerate { size, full, out } => enumerate(size, full, &out, cap),
        Command::Weights { size, full, rates, out } => weights(size, full, &rates, &out, cap),
        Command::Stationary { size, rates, out } => stationary(size, &rates, &out, cap),
        Command::Generator { size, rates, manifest, out } => generator(size, &rates, manifest.as_deref(), &out, cap),
        Command::Verify { size, rates, out } => verify(size, &rates, &out, cap),
        Command::Observables { size, rates, out } => observables_cmd(size, &rates, &out, cap),
        Command::Special { size, case, out } => special(size, case.as_deref(), &out),
        Command::Simulate { size, rates, seed, events, time, batches, check_se, wall_time, output, format } => {
            let horizon = match (events, time) {
                (_, Some(t)) => Horizon::Time(t),
                (Some(e), None) => Horizon::Events(e),
                (None, None) => Horizon::Events(1_000_000),
            };
            let sim = SimArgs { horizon, seed, batches, check_se, wall_time };
            simulate_cmd(size, &rates, sim, output.as_deref(), format)
        }
        Command::Ta { size, labels, out } => ta(size, &labels, &out, cap),
    }
}

fn load_rates(r: &Rates) -> Result<Option<RatePoint>> {
    if let Some(path) = &r.rates_file {
        return RatePoint::from_json_file(path).map(Some);
    }
    match &r.rates {
        None => Ok(None),
        Some(s) if s.contains(';') => RatePoint::parse(s).map(Some),
        Some(path) => RatePoint::from_json_file(Path::new(path)).map(Some),
    }
}

fn generator_mode(size: Size, r: &Rates) -> Result<GeneratorMode> {
    let rates = load_rates(r)?;
    if let Some(rp) = &rates {
        if rp.n() != size.n {
            return Err(Error::Parse(format!("rates are for n = {}, expected {}", rp.n(), size.n)));
        }
    }
    match (r.mode, rates) {
        (Some(Mode::Symbolic), _) | (None, None) => Ok(GeneratorMode::Symbolic),
        (Some(Mode::Numeric), None) => Err(Error::Parse("numeric mode needs --rates or --rates-file".into())),
        (_, Some(rp)) => Ok(GeneratorMode::Numeric(rp)),
    }
}

fn required_rates(size: Size, r: &Rates) -> Result<RatePoint> {
    match generator_mode(size, r)? {
        GeneratorMode::Numeric(rp) => Ok(rp),
        GeneratorMode::Symbolic => Err(Error::Parse("this subcommand needs --rates or --rates-file".into())),
    }
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Writes `doc` as JSON, or `rows` as CSV.
fn emit<R: Serialize>(out: &Out, doc: &Value, rows: &[R]) -> Result<()> {
    let mut w = sink(out.output.as_deref())?;
    match out.format {
        Format::Json => write_json(doc, &mut w)?,
        Format::Csv => write_csv(rows, &mut w)?,
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct StateRow {
    index: usize,
    state: String,
}

fn enumerate(size: Size, full: bool, out: &Out, cap: u64) -> Result<bool> {
    let states =
        if full { enumerate_full(size.l, size.n, cap)? } else { enumerate_restricted_capped(size.l, size.n, cap)? };
    let rows: Vec<StateRow> =
        states.iter().enumerate().map(|(index, w)| StateRow { index, state: w.to_string() }).collect();
    let doc = json!({
        "L": size.l,
        "n": size.n,
        "restricted": !full,
        "count": states.len(),
        "states": states.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
    });
    emit(out, &doc, &rows)?;
    Ok(true)
}

#[derive(Serialize)]
struct WeightRow {
    state: String,
    weight: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
}

fn weights(size: Size, full: bool, r: &Rates, out: &Out, cap: u64) -> Result<bool> {
    let rates = match generator_mode(size, r)? {
        GeneratorMode::Numeric(rp) => Some(rp),
        GeneratorMode::Symbolic => None,
    };
    let states =
        if full { enumerate_full(size.l, size.n, cap)? } else { enumerate_restricted_capped(size.l, size.n, cap)? };
    let rows: Vec<WeightRow> = states
        .iter()
        .map(|w| {
            let m = config_weight(w);
            WeightRow {
                state: w.to_string(),
                weight: m.to_string(),
                value: rates.as_ref().map(|rp| m.evaluate(rp).to_string()),
            }
        })
        .collect();
    let mut doc = json!({ "L": size.l, "n": size.n, "restricted": !full, "rows": rows });
    if let Some(rp) = &rates {
        doc["rates"] = rp.to_json();
    }
    emit(out, &doc, &rows)?;
    Ok(true)
}

#[derive(Serialize)]
struct TableRow {
    state: String,
    weight: String,
    probability: String,
}

fn stationary(size: Size, r: &Rates, out: &Out, cap: u64) -> Result<bool> {
    let table = match generator_mode(size, r)? {
        GeneratorMode::Symbolic => symbolic_table(size.l, size.n, cap)?,
        GeneratorMode::Numeric(rp) => {
            let Generator::Numeric(gen) = build_generator(size.l, size.n, &GeneratorMode::Numeric(rp.clone()), cap)?
            else {
                unreachable!("numeric mode builds a numeric generator")
            };
            exact_stationary(&gen, &rp)?
        }
    };
    let doc = table.to_json();
    let rows: Vec<TableRow> = doc["rows"]
        .as_array()
        .map(|a| {
            a.iter()
                .map(|v| TableRow {
                    state: v["state"].as_str().unwrap_or_default().to_string(),
                    weight: v["weight"].as_str().unwrap_or_default().to_string(),
                    probability: v["probability"].as_str().unwrap_or_default().to_string(),
                })
                .collect()
        })
        .unwrap_or_default();
    emit(out, &doc, &rows)?;
    Ok(table.proportional_to_weights())
}

fn generator(size: Size, r: &Rates, manifest: Option<&Path>, out: &Out, cap: u64) -> Result<bool> {
    let gen = build_generator(size.l, size.n, &generator_mode(size, r)?, cap)?;
    let mut w = sink(out.output.as_deref())?;
    let states = match &gen {
        Generator::Symbolic(g) => {
            write_triplets(g, &mut w)?;
            g.states()
        }
        Generator::Numeric(g) => {
            write_triplets(g, &mut w)?;
            g.states()
        }
    };
    w.flush()?;
    if let Some(path) = manifest {
        let mut m = sink(Some(path))?;
        write_state_manifest(states, &mut m)?;
        m.flush()?;
    }
    Ok(true)
}

#[derive(Serialize)]
struct CheckRow {
    check: String,
    holds: bool,
}

fn verify(size: Size, r: &Rates, out: &Out, cap: u64) -> Result<bool> {
    let (l, n) = (size.l, size.n);
    let mode = generator_mode(size, r)?;
    let mut checks: Vec<(String, bool, Value)> = Vec::new();

    let balance = match &mode {
        GeneratorMode::Symbolic => verify_balance_symbolic(l, n, cap)?,
        GeneratorMode::Numeric(rp) => verify_balance_numeric(l, n, rp, cap)?,
    };
    let restricted = enumerate_restricted_capped(l, n, cap)?.len();
    let mut bal = serde_json::to_value(&balance)?;
    bal["restricted_states"] = json!(restricted);
    checks.push(("balance".into(), balance.holds(), bal));

    let ids = weight_identities(n)?;
    checks.push(("weight_identities".into(), ids.holds(), serde_json::to_value(&ids)?));

    for dir in [ReachDirection::To, ReachDirection::From] {
        let reach = reachability_tau0(l, n, dir, cap)?;
        let name = match dir {
            ReachDirection::To => "reach_to_tau0",
            ReachDirection::From => "reach_from_tau0",
        };
        checks.push((name.into(), reach.all_reached(), serde_json::to_value(&reach)?));
    }

    match &mode {
        GeneratorMode::Symbolic => {
            let lump = lump_and_evans(l, n, cap)?;
            checks.push(("lumping".into(), lump.holds(), serde_json::to_value(&lump)?));
            let sr = scott_russell_check(l, n, cap)?;
            checks.push(("vertical_horizontal_currents".into(), sr.holds(), serde_json::to_value(&sr)?));
        }
        GeneratorMode::Numeric(rp) => {
            let Generator::Numeric(gen) = build_generator(l, n, &mode, cap)? else {
                unreachable!("numeric mode builds a numeric generator")
            };
            let ok = exact_stationary(&gen, rp)?.proportional_to_weights();
            checks.push(("null_vector_matches_weights".into(), ok, json!({ "states": gen.len() })));
        }
    }

    let all = checks.iter().all(|c| c.1);
    let rows: Vec<CheckRow> = checks.iter().map(|c| CheckRow { check: c.0.clone(), holds: c.1 }).collect();
    let mut doc = json!({ "L": l, "n": n, "all_hold": all, "checks": {} });
    for (name, holds, detail) in checks {
        doc["checks"][name] = json!({ "holds": holds, "detail": detail });
    }
    if let GeneratorMode::Numeric(rp) = &mode {
        doc["rates"] = rp.to_json();
    }
    emit(out, &doc, &rows)?;
    Ok(all)
}

fn observables_cmd(size: Size, r: &Rates, out: &Out, cap: u64) -> Result<bool> {
    let mode = generator_mode(size, r)?;
    let report = observables(size.l, size.n, &mode, cap)?;
    let rows = report.rows();
    let mut doc = json!({
        "L": size.l,
        "n": size.n,
        "mode": report.mode,
        "all_equal": report.all_equal(),
        "rows": rows,
    });
    if let GeneratorMode::Numeric(rp) = &mode {
        doc["rates"] = rp.to_json();
    }
    emit(out, &doc, &rows)?;
    Ok(report.all_equal())
}

#[derive(Serialize)]
struct SpecialRow {
    case: SpecialCase,
    form: String,
    polynomial: String,
    equal: bool,
}

fn special(size: Size, case: Option<&str>, out: &Out) -> Result<bool> {
    let cases = match case {
        Some(c) => vec![c.parse::<SpecialCase>()?],
        None => vec![SpecialCase::Identical, SpecialCase::Symmetric, SpecialCase::TotallyAsymmetric],
    };
    let certs = cases.into_iter().map(|c| partition_function_special(size.l, size.n, c)).collect::<Result<Vec<_>>>()?;
    let rows: Vec<SpecialRow> = certs
        .iter()
        .flat_map(|c| {
            c.forms.iter().map(move |f| SpecialRow {
                case: c.case,
                form: f.label.clone(),
                polynomial: f.polynomial.to_string(),
                equal: f.equal,
            })
        })
        .collect();
    let all = certs.iter().all(|c| c.holds());
    let doc = json!({ "L": size.l, "n": size.n, "all_hold": all, "certificates": certs });
    emit(out, &doc, &rows)?;
    Ok(all)
}

struct SimArgs {
    horizon: Horizon,
    seed: u64,
    batches: usize,
    check_se: Option<f64>,
    wall_time: bool,
}

fn simulate_cmd(size: Size, r: &Rates, a: SimArgs, dir: Option<&Path>, format: Format) -> Result<bool> {
    let rates = required_rates(size, r)?;
    let mut cfg = SimConfig::new(size.l, size.n, rates.clone(), a.horizon, a.seed);
    cfg.batches = a.batches;
    let clock = Instant::now();
    let outcome = simulate(cfg)?;
    let wall = a.wall_time.then(|| clock.elapsed().as_secs_f64());
    let est = estimate_observables(&outcome)?;
    let checks = compare_with_closed_forms(&est, size.l, size.n, &rates)?;
    let passed = match a.check_se {
        Some(k) => checks.iter().filter(|c| c.observable.starts_with("J_")).all(|c| c.within(k)),
        None => true,
    };
    let manifest = outcome.manifest(wall);
    match dir {
        None => {
            let doc = json!({ "manifest": manifest, "estimates": checks });
            let mut w = sink(None)?;
            write_json(&doc, &mut w)?;
            w.flush()?;
        }
        Some(d) => {
            fs::create_dir_all(d)?;
            write_json(&manifest, File::create(d.join("manifest.json"))?)?;
            outcome.ledger.write_csv(File::create(d.join("ledger.csv"))?)?;
            match format {
                Format::Json => write_json(&checks, File::create(d.join("estimates.json"))?)?,
                Format::Csv => write_csv(&checks, File::create(d.join("estimates.csv"))?)?,
            }
        }
    }
    Ok(passed)
}

#[derive(Serialize)]
struct TaRow {
    state: String,
    restricted: bool,
}

fn ta(size: Size, labels: &str, out: &Out, cap: u64) -> Result<bool> {
    let zero_q = labels
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| match s.trim().parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(Error::Parse(format!("bad label {s:?}; labels are one-based integers"))),
        })
        .collect::<Result<Vec<usize>>>()?;
    let res = restrict_ta(size.l, size.n, &zero_q, cap)?;
    let rows: Vec<TaRow> =
        res.states.iter().map(|w| TaRow { state: w.to_string(), restricted: w.is_restricted() }).collect();
    let closed = res.closure.closed();
    let doc = json!({
        "L": size.l,
        "n": size.n,
        "I": res.zero_q.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "count": res.states.len(),
        "restricted_count": res.restricted().len(),
        "states": rows,
        "closure": {
            "closed": closed,
            "transitions_checked": res.closure.transitions_checked,
            "escapes": res.closure.escapes,
            "strongly_connected": res.closure.strongly_connected,
        },
    });
    emit(out, &doc, &rows)?;
    Ok(closed)
}
