//! The five subcommands. Each returns a [`Document`] and an exit status.

use num_traits::{Signed, Zero};
use pcoulomb::frobenius::{conditional_solutions, Value};
use pcoulomb::model::{DimensionlessParams, PhysicalParams};
use pcoulomb::numeric::scalar::{fraction_string, rational_to_f64};
use pcoulomb::oracle::{fd_spectrum, hellmann_feynman_check, EnergySource, OracleError, RadialGrid};
use pcoulomb::rpm::{coupling_grid, energy_curves, rpm_spectrum, RpmConfig, RpmError};
use pcoulomb::{Rational, Scalar};
use serde_json::json;
use thiserror::Error;

use crate::args::{CheckArgs, ExactArgs, Global, RpmArgs, ScanArgs, UnitsArgs};
use crate::output::{Cell, Document, Table};
use crate::svg;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_CONVERGENCE: u8 = 3;
pub const EXIT_VERIFICATION: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Convergence(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Io(_) => EXIT_INPUT,
            CliError::Convergence(_) => EXIT_CONVERGENCE,
        }
    }
}

impl From<RpmError> for CliError {
    fn from(e: RpmError) -> Self {
        match e {
            RpmError::NotConverged { .. } => CliError::Convergence(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Rpm(r) => r.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

pub struct Outcome {
    pub doc: Document,
    pub status: u8,
}

fn q(x: &Rational) -> String {
    fraction_string(x)
}

fn value_cell<T: Scalar>(v: &Value<T>) -> Cell {
    match v {
        Value::Exact(x) => Cell::Exact(x.clone()),
        Value::Approx(x) => Cell::real(x),
    }
}

fn rpm_config(g: &Global, d: usize, exact_cap: usize) -> Result<RpmConfig, CliError> {
    if !(g.tol > 0.0 && g.tol.is_finite()) {
        return Err(CliError::Input("--tol must be positive".into()));
    }
    Ok(RpmConfig { d, d_max: g.max_d, exact_cap, tol: g.tol, ..RpmConfig::default() })
}

fn global_config(g: &Global) -> serde_json::Value {
    json!({ "precision_bits": g.precision_bits, "tol": g.tol, "max_D": g.max_d })
}

fn with_global(mut config: serde_json::Value, g: &Global) -> serde_json::Value {
    if let (Some(obj), serde_json::Value::Object(extra)) = (config.as_object_mut(), global_config(g)) {
        obj.extend(extra);
    }
    config
}

fn positive_a(a: &Rational) -> Result<(), CliError> {
    if a.is_positive() {
        Ok(())
    } else {
        Err(CliError::Input("coupling a must be positive".into()))
    }
}

pub fn exact<T: Scalar>(args: &ExactArgs, g: &Global) -> Result<Outcome, CliError> {
    positive_a(&args.a)?;
    let sweep = conditional_solutions::<T>(args.n, args.l, &args.a).map_err(|e| CliError::Input(e.to_string()))?;
    let mut table = Table::new(&["n", "i", "l", "b", "alpha", "E", "nu", "multiplicity", "exact", "residual", "poly"]);
    for s in &sweep.solutions {
        table.push(vec![
            Cell::Int(i64::from(s.n)),
            Cell::Int(s.i as i64),
            Cell::Int(i64::from(s.l)),
            value_cell(&s.b_root),
            value_cell(&s.alpha),
            value_cell(&s.energy),
            Cell::Int(s.nu as i64),
            Cell::Int(s.multiplicity as i64),
            Cell::Bool(s.b_root.exact().is_some()),
            Cell::f64(s.residual),
            Cell::List(s.poly.coefficients().iter().map(value_cell).collect()),
        ]);
    }
    let mut warnings = Vec::new();
    let d = &sweep.diagnostics;
    if d.nonreal_roots > 0 {
        warnings.push(format!("{} non-real roots of the termination polynomial skipped", d.nonreal_roots));
    }
    for b in &d.unbound_roots {
        warnings.push(format!("root b = {b} is not below a: no bound state"));
    }
    for i in &d.ambiguous_nodes {
        warnings.push(format!("node count of solution i = {i} could not be certified"));
    }
    let config = json!({ "n": args.n, "l": args.l, "a": q(&args.a) });
    Ok(Outcome { doc: Document { command: "exact", config: with_global(config, g), table, warnings, svg: None }, status: EXIT_OK })
}

pub fn rpm<T: Scalar>(args: &RpmArgs, g: &Global) -> Result<Outcome, CliError> {
    positive_a(&args.a)?;
    let cfg = rpm_config(g, args.d, args.exact_cap)?;
    let p = DimensionlessParams { a: args.a.clone(), b: args.b.clone(), l: args.l };
    let mut warnings = Vec::new();
    if !p.bound_state_rich() {
        warnings.push("a <= b: only finitely many bound states, levels may be missing".into());
    }
    let s = rpm_spectrum::<T>(&p, args.nu_max + 1, &cfg)?;
    let mut table = Table::new(&["nu", "E", "exact", "D_used", "residual", "support", "within_bounds", "converged"]);
    for lv in &s.levels {
        table.push(vec![
            Cell::Int(lv.nu as i64),
            lv.exact.clone().map_or_else(|| Cell::real(&lv.energy), Cell::Exact),
            Cell::Bool(lv.exact.is_some()),
            Cell::Int(lv.dim as i64),
            Cell::f64(lv.residual),
            Cell::Int(lv.support as i64),
            Cell::Bool(lv.within_bounds),
            Cell::Bool(true),
        ]);
    }
    for m in &s.missing {
        warnings.push(format!("level {} did not stabilise up to D = {}", m.nu, cfg.d_max));
        table.push(vec![
            Cell::Int(m.nu as i64),
            m.best_value.map_or(Cell::Empty, Cell::f64),
            Cell::Bool(false),
            m.best_dim.map_or(Cell::Empty, |d| Cell::Int(d as i64)),
            m.best_diff.map_or(Cell::Empty, Cell::f64),
            Cell::Int(0),
            Cell::Empty,
            Cell::Bool(false),
        ]);
    }
    let status = if s.missing.is_empty() { EXIT_OK } else { EXIT_CONVERGENCE };
    let config = json!({
        "a": q(&args.a), "b": q(&args.b), "l": args.l, "nu_max": args.nu_max, "d": args.d, "exact_cap": args.exact_cap,
    });
    Ok(Outcome { doc: Document { command: "rpm", config: with_global(config, g), table, warnings, svg: None }, status })
}

/// One row of the scan table.
pub struct ScanRow {
    pub kind: &'static str,
    pub l: u32,
    pub nu: usize,
    pub n: Option<u32>,
    pub i: Option<usize>,
    pub b: f64,
    pub e: Option<f64>,
}

pub fn scan<T: Scalar>(args: &ScanArgs, g: &Global, want_svg: bool) -> Result<Outcome, CliError> {
    positive_a(&args.a)?;
    if args.b_lo >= args.b_hi {
        return Err(CliError::Input("--b-lo must be below --b-hi".into()));
    }
    if args.steps == 0 {
        return Err(CliError::Input("--steps must be at least 1".into()));
    }
    let cfg = rpm_config(g, 0, RpmConfig::default().exact_cap)?;
    let grid = coupling_grid(&args.b_lo, &args.b_hi, args.steps);
    let mut table = Table::new(&["kind", "l", "nu", "n", "i", "b", "E"]);
    let mut warnings = Vec::new();
    let mut plot = Vec::new();
    for &l in &args.l {
        for curve in energy_curves::<T>(&args.a, l, &args.nu, &grid, &cfg)? {
            for (b, e) in &curve.samples {
                table.push(vec![
                    Cell::text("curve"),
                    Cell::Int(i64::from(l)),
                    Cell::Int(curve.nu as i64),
                    Cell::Empty,
                    Cell::Empty,
                    Cell::Exact(b.clone()),
                    Cell::real(e),
                ]);
                plot.push(ScanRow { kind: "curve", l, nu: curve.nu, n: None, i: None, b: rational_to_f64(b), e: Some(e.to_f64_lossy()) });
            }
            for b in &curve.gaps {
                warnings.push(format!("no converged level nu = {} at l = {l}, b = {}", curve.nu, q(b)));
                table.push(vec![
                    Cell::text("gap"),
                    Cell::Int(i64::from(l)),
                    Cell::Int(curve.nu as i64),
                    Cell::Empty,
                    Cell::Empty,
                    Cell::Exact(b.clone()),
                    Cell::Empty,
                ]);
            }
        }
    }
    let (lo, hi) = (rational_to_f64(&args.b_lo), rational_to_f64(&args.b_hi));
    for &l in &args.l {
        for n in 0..=args.n_max {
            let sweep = conditional_solutions::<T>(n, l, &args.a).map_err(|e| CliError::Input(e.to_string()))?;
            for s in sweep.in_range(lo, hi) {
                table.push(vec![
                    Cell::text("point"),
                    Cell::Int(i64::from(l)),
                    Cell::Int(s.nu as i64),
                    Cell::Int(i64::from(n)),
                    Cell::Int(s.i as i64),
                    value_cell(&s.b_root),
                    value_cell(&s.energy),
                ]);
                plot.push(ScanRow { kind: "point", l, nu: s.nu, n: Some(n), i: Some(s.i), b: s.b_root.to_f64(), e: Some(s.energy.to_f64()) });
            }
        }
    }
    let svg = want_svg.then(|| svg::render(&plot, (lo, hi), &format!("a = {}", q(&args.a))));
    let config = json!({
        "a": q(&args.a), "l": args.l, "nu": args.nu, "b_lo": q(&args.b_lo), "b_hi": q(&args.b_hi),
        "steps": args.steps, "n_max": args.n_max,
    });
    Ok(Outcome { doc: Document { command: "scan", config: with_global(config, g), table, warnings, svg }, status: EXIT_OK })
}

const RPM_VS_ORACLE: f64 = 1e-6;
const CLOSED_FORM: f64 = 1e-9;
const ORACLE_VS_CLOSED_FORM: f64 = 1e-6;
const HELLMANN_FEYNMAN: f64 = 1e-4;

struct Report {
    table: Table,
    failed: bool,
}

impl Report {
    fn row(&mut self, check: &str, nu: Option<usize>, value: Cell, threshold: Cell, pass: bool) {
        self.failed |= !pass;
        self.table.push(vec![Cell::text(check), nu.map_or(Cell::Empty, |k| Cell::Int(k as i64)), value, threshold, Cell::Bool(pass)]);
    }
}

pub fn check<T: Scalar>(args: &CheckArgs, g: &Global) -> Result<Outcome, CliError> {
    positive_a(&args.a)?;
    if !args.db.is_positive() {
        return Err(CliError::Input("--db must be positive".into()));
    }
    let cfg = rpm_config(g, 0, RpmConfig::default().exact_cap)?;
    let count = args.nu_max + 1;
    let (af, bf) = (rational_to_f64(&args.a), rational_to_f64(&args.b));
    let p = DimensionlessParams { a: args.a.clone(), b: args.b.clone(), l: args.l };
    let spectrum = rpm_spectrum::<T>(&p, count, &cfg)?;
    let grid = RadialGrid::for_levels(af, bf, args.l, count)?;
    let fd = fd_spectrum(af, bf, args.l, count, &grid)?;
    let mut report = Report { table: Table::new(&["check", "nu", "value", "threshold", "pass"]), failed: false };
    let mut warnings = Vec::new();
    let mut converged = spectrum.missing.is_empty();

    for m in &spectrum.missing {
        warnings.push(format!("rpm level {} did not stabilise", m.nu));
    }
    if fd.is_partial() {
        warnings.push(format!("finite-difference grid holds only {} bound states", fd.energies.len()));
    }
    for lv in &spectrum.levels {
        let e = lv.energy.to_f64_lossy();
        if let Some(fe) = fd.energies.get(lv.nu) {
            let delta = (e - fe).abs();
            report.row("rpm_vs_oracle", Some(lv.nu), Cell::f64(delta), Cell::f64(RPM_VS_ORACLE), delta <= RPM_VS_ORACLE);
        }
        if args.b.is_zero() {
            let n = lv.nu as i64 + i64::from(args.l) + 1;
            let closed = -(&args.a * &args.a) / Rational::from_integer((2 * n * n).into());
            let (delta, pass) = match &lv.exact {
                Some(x) => {
                    let d = (x - &closed).abs();
                    let pass = d.is_zero();
                    (Cell::Exact(d), pass)
                }
                None => {
                    let d = (e - rational_to_f64(&closed)).abs();
                    (Cell::f64(d), d <= CLOSED_FORM)
                }
            };
            report.row("rpm_vs_closed_form", Some(lv.nu), delta, Cell::f64(CLOSED_FORM), pass);
            if let Some(fe) = fd.energies.get(lv.nu) {
                let d = (fe - rational_to_f64(&closed)).abs();
                report.row("oracle_vs_closed_form", Some(lv.nu), Cell::f64(d), Cell::f64(ORACLE_VS_CLOSED_FORM), d <= ORACLE_VS_CLOSED_FORM);
            }
        }
    }
    for (k, st) in fd.states.iter().enumerate() {
        report.row("oracle_nodes", Some(k), Cell::Int(st.nodes as i64), Cell::Int(k as i64), st.nodes == k);
    }
    // exact solutions sitting at this very coupling
    for n in 0..=args.n_max {
        let sweep = conditional_solutions::<T>(n, args.l, &args.a).map_err(|e| CliError::Input(e.to_string()))?;
        for s in sweep.solutions.iter().filter(|s| s.b_root.exact() == Some(&args.b)) {
            let exact_e = s.energy.exact().expect("rational coupling gives a rational energy").clone();
            report.row("termination_residual", Some(s.nu), Cell::f64(s.residual), Cell::f64(0.0), s.residual == 0.0);
            let Some(lv) = spectrum.levels.get(s.nu) else { continue };
            match &lv.exact {
                Some(x) => {
                    let d = (x - &exact_e).abs();
                    let pass = d.is_zero();
                    report.row("exact_vs_rpm", Some(s.nu), Cell::Exact(d), Cell::f64(0.0), pass);
                }
                None => {
                    let d = (lv.energy.to_f64_lossy() - rational_to_f64(&exact_e)).abs();
                    report.row("exact_vs_rpm", Some(s.nu), Cell::f64(d), Cell::f64(cfg.tol), d <= cfg.tol);
                }
            }
        }
    }
    match hellmann_feynman_check(&args.a, &args.b, args.l, 0, &args.db, &EnergySource::Rpm(cfg.clone())) {
        Ok(hf) => {
            report.row("hellmann_feynman", Some(0), Cell::f64(hf.discrepancy), Cell::f64(HELLMANN_FEYNMAN), hf.discrepancy <= HELLMANN_FEYNMAN);
            report.row("hellmann_feynman_positive", Some(0), Cell::f64(hf.derivative.min(hf.expectation)), Cell::f64(0.0), hf.both_positive());
        }
        Err(OracleError::Rpm(e @ RpmError::NotConverged { .. })) => {
            converged = false;
            warnings.push(format!("Hellmann-Feynman check skipped: {e}"));
        }
        Err(e) => return Err(e.into()),
    }
    let status = if !converged {
        EXIT_CONVERGENCE
    } else if report.failed {
        EXIT_VERIFICATION
    } else {
        EXIT_OK
    };
    let config = json!({
        "a": q(&args.a), "b": q(&args.b), "l": args.l, "nu_max": args.nu_max, "db": q(&args.db), "n_max": args.n_max,
    });
    Ok(Outcome { doc: Document { command: "check", config: with_global(config, g), table: report.table, warnings, svg: None }, status })
}

pub fn units(args: &UnitsArgs, g: &Global) -> Result<Outcome, CliError> {
    let p = PhysicalParams { v1: args.v1.clone(), v2: args.v2.clone(), r0: args.r0.clone(), m: args.m.clone(), hbar: args.hbar.clone() };
    p.validate().map_err(|e| CliError::Input(e.to_string()))?;
    let mut table = Table::new(&["case", "a", "b", "coupling", "r0", "energy_unit", "length_unit", "error"]);
    let i = p.to_case_i(args.l).map_err(|e| CliError::Input(e.to_string()))?;
    table.push(vec![
        Cell::text("I"),
        Cell::Exact(i.params.a),
        Cell::Exact(i.params.b),
        Cell::Empty,
        Cell::Exact(args.r0.clone()),
        Cell::Exact(i.energy_unit),
        Cell::Exact(i.length_unit),
        Cell::Empty,
    ]);
    for (name, case) in [("II", p.to_case_ii()), ("III", p.to_case_iii())] {
        match case {
            Ok(c) => table.push(vec![
                Cell::text(name),
                Cell::Empty,
                Cell::Empty,
                Cell::Exact(c.coupling),
                Cell::Exact(c.r0),
                Cell::Exact(c.energy_unit),
                Cell::Exact(c.length_unit),
                Cell::Empty,
            ]),
            Err(e) => table.push(vec![
                Cell::text(name),
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::text(e.to_string()),
            ]),
        }
    }
    let config = json!({
        "v1": q(&args.v1), "v2": q(&args.v2), "r0": q(&args.r0), "m": q(&args.m), "hbar": q(&args.hbar), "l": args.l,
    });
    Ok(Outcome { doc: Document { command: "units", config: with_global(config, g), table, warnings: Vec::new(), svg: None }, status: EXIT_OK })
}
