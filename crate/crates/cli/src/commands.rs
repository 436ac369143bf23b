use std::fmt::Write as _;
use std::path::Path;

use ajc_core::dynamics::{self, Process};
use ajc_core::entanglement::entanglement_series;
use ajc_core::linalg::{hermitian_eig, KetState};
use ajc_core::model::{self, Atom};
use ajc_core::teleport::{self, ProtocolReport};
use ajc_core::verify::{self, VerifyOptions};
use ajc_core::{SystemParams, C64};

use crate::args::{BlochArgs, EntropyArgs, EvolveArgs, Format, Frame, ModelChoice, SystemArgs, TeleportArgs, VerifyArgs};
use crate::output::{emit, fmt_num, Provenance, Table};

pub enum Failure {
    /// Bad flag combination or parameters; exit code 2.
    Usage(String),
    /// Named verification checks failed; exit code 1.
    Checks(Vec<&'static str>),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

impl From<ajc_core::Error> for Failure {
    fn from(e: ajc_core::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

type CmdResult = Result<(), Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn resolve_nmax(s: &SystemArgs) -> Result<usize, Failure> {
    let need = s.n + 2;
    match s.nmax {
        None => Ok(need.max(SystemParams::DEFAULT_NMAX)),
        Some(nmax) if nmax < need => Err(usage(format!("--nmax {nmax} too small for --n {}: need at least {need}", s.n))),
        Some(nmax) => Ok(nmax),
    }
}

fn processes(choice: ModelChoice) -> &'static [Process] {
    match choice {
        ModelChoice::Ajc => &[Process::Ajc],
        ModelChoice::Jc => &[Process::Jc],
        ModelChoice::Both => &[Process::Ajc, Process::Jc],
    }
}

fn model_label(choice: ModelChoice) -> &'static str {
    match choice {
        ModelChoice::Ajc => "ajc",
        ModelChoice::Jc => "jc",
        ModelChoice::Both => "both",
    }
}

fn system_provenance(prov: &mut Provenance, s: &SystemArgs, nmax: usize) {
    prov.num("omega_over_lambda", s.omega_over_lambda);
    prov.push("n", s.n);
    prov.push("nmax", nmax);
}

fn write_table(table: &Table, prov: &Provenance, format: Format, output: Option<&Path>) -> CmdResult {
    let text = match format {
        Format::Csv => table.to_csv(prov),
        Format::JsonSummary => table.to_summary(prov),
    };
    emit(output, &text)?;
    Ok(())
}

fn write_gnuplot(script: Option<&Path>, data: Option<&Path>, body: &str) -> CmdResult {
    let Some(script) = script else { return Ok(()) };
    let Some(data) = data else {
        return Err(usage("--gnuplot needs --output so the script has a data file to read"));
    };
    let text = format!(
        "set datafile separator ','\nset key autotitle columnhead\ndata = '{}'\n{body}",
        data.display()
    );
    emit(Some(script), &text)?;
    Ok(())
}

#[derive(Clone, Copy)]
enum Curve {
    Detuning(f64),
    SumFrequency(f64),
}

pub fn bloch(a: &BlochArgs) -> CmdResult {
    let nmax = resolve_nmax(&a.system)?;
    let omega = a.system.omega_over_lambda;
    let curves: Vec<Curve> = if !a.deltabar_over_lambda.is_empty() {
        a.deltabar_over_lambda.iter().map(|&d| Curve::SumFrequency(d)).collect()
    } else if !a.delta_over_lambda.is_empty() {
        a.delta_over_lambda.iter().map(|&d| Curve::Detuning(d)).collect()
    } else {
        [1.0, 3.0, 0.0].map(Curve::Detuning).to_vec()
    };
    let samples = a.grid.samples.unwrap_or(512);

    let mut prov = Provenance::new("bloch");
    system_provenance(&mut prov, &a.system, nmax);
    match curves[0] {
        Curve::Detuning(_) => prov.list("delta_over_lambda", &a.delta_over_lambda_or_default()),
        Curve::SumFrequency(_) => prov.list("deltabar_over_lambda", &a.deltabar_over_lambda),
    }
    prov.push("model", model_label(a.model));
    prov.push("frame", if a.frame == Frame::Embedded { "embedded" } else { "subspace" });
    prov.push("samples", samples);
    prov.push("tmax", a.grid.tmax.map_or("one period per curve".to_string(), fmt_num));

    let mut table = Table::new(&["model", "delta_over_lambda", "deltabar_over_lambda", "t", "x", "y", "z"]);
    for &process in processes(a.model) {
        for &curve in &curves {
            let p = match curve {
                Curve::Detuning(d) => SystemParams::from_detuning(omega, d, nmax),
                Curve::SumFrequency(d) => SystemParams::from_sum_frequency(omega, d, nmax),
            }
            .map_err(usage)?;
            let n = a.system.n;
            let tmax = match a.grid.tmax {
                Some(t) => t,
                None => dynamics::bloch_period(&p, process, n)?,
            };
            let times = dynamics::time_grid(tmax, samples);
            let points = match a.frame {
                Frame::Embedded => dynamics::embedded_bloch(&p, process, n, &times)?,
                Frame::Subspace => dynamics::subspace_bloch(&p, process, n, &times)?,
            };
            for (t, b) in times.iter().zip(&points) {
                table.push(vec![
                    process.name().into(),
                    p.detuning().into(),
                    p.sum_frequency().into(),
                    (*t).into(),
                    b.x.into(),
                    b.y.into(),
                    b.z.into(),
                ]);
            }
        }
    }
    write_table(&table, &prov, a.out.format, a.out.output.as_deref())?;
    write_gnuplot(
        a.gnuplot.as_deref(),
        a.out.output.as_deref(),
        "set view equal xyz\nset xyplane at -1\nset xlabel 'x'\nset ylabel 'y'\nset zlabel 'z'\n\
         splot data using 5:6:7 with points pointtype 7 pointsize 0.3 notitle\n",
    )
}

impl BlochArgs {
    fn delta_over_lambda_or_default(&self) -> Vec<f64> {
        if self.delta_over_lambda.is_empty() {
            vec![1.0, 3.0, 0.0]
        } else {
            self.delta_over_lambda.clone()
        }
    }
}

pub fn entropy(a: &EntropyArgs) -> CmdResult {
    let nmax = resolve_nmax(&a.system)?;
    let p = SystemParams::from_sum_frequency(a.system.omega_over_lambda, a.deltabar_over_lambda, nmax).map_err(usage)?;
    let samples = a.grid.samples.unwrap_or(2048);
    let tmax = a.grid.tmax.unwrap_or(5.0);

    let mut prov = Provenance::new("entropy");
    system_provenance(&mut prov, &a.system, nmax);
    prov.num("deltabar_over_lambda", a.deltabar_over_lambda);
    prov.push("samples", samples);
    prov.num("tmax", tmax);

    let taus = dynamics::time_grid(tmax, samples);
    let mut table = Table::new(&["tau", "P_g", "P_e", "E"]);
    for s in entanglement_series(&p, a.system.n, &taus)? {
        table.push(vec![s.tau.into(), s.p_g.into(), s.p_e.into(), s.entanglement.into()]);
    }
    write_table(&table, &prov, a.out.format, a.out.output.as_deref())?;
    write_gnuplot(
        a.gnuplot.as_deref(),
        a.out.output.as_deref(),
        "set xlabel 'tau'\nset yrange [0:1.05]\nplot data using 1:4 with lines, '' using 1:2 with lines, '' using 1:3 with lines\n",
    )
}

/// `exp(−iHt)|start⟩` for many `t` from one eigendecomposition.
struct Propagator {
    values: Vec<f64>,
    vectors: ajc_core::ComplexMatrix,
    /// `V†|start⟩`
    coeffs: Vec<C64>,
}

impl Propagator {
    fn new(h: &ajc_core::ComplexMatrix, start: &KetState) -> Result<Self, Failure> {
        let eig = hermitian_eig(h)?;
        let coeffs = eig.vectors.adjoint().apply(start.amps());
        Ok(Self { values: eig.values, vectors: eig.vectors, coeffs })
    }

    fn at(&self, t: f64) -> Vec<C64> {
        let phased: Vec<C64> = self
            .coeffs
            .iter()
            .zip(&self.values)
            .map(|(c, &e)| c * C64::from_polar(1.0, -e * t))
            .collect();
        self.vectors.apply(&phased)
    }
}

pub fn evolve(a: &EvolveArgs) -> CmdResult {
    let nmax = resolve_nmax(&a.system)?;
    let omega = a.system.omega_over_lambda;
    let p = match a.deltabar_over_lambda {
        Some(db) => SystemParams::from_sum_frequency(omega, db, nmax),
        None => SystemParams::from_detuning(omega, a.delta_over_lambda, nmax),
    }
    .map_err(usage)?;
    let n = a.system.n;
    let samples = a.grid.samples.unwrap_or(256);

    let mut prov = Provenance::new("evolve");
    system_provenance(&mut prov, &a.system, nmax);
    prov.num("delta_over_lambda", p.detuning());
    prov.num("deltabar_over_lambda", p.sum_frequency());
    prov.push("model", model_label(a.model));
    prov.push("samples", samples);
    prov.push("tmax", a.grid.tmax.map_or("one period per model".to_string(), fmt_num));

    let mut table = Table::new(&[
        "model", "t", "P_g", "P_e", "re_a_psi", "im_a_psi", "re_a_phi", "im_a_phi", "oracle_deviation",
    ]);
    let h = model::build_hamiltonians(&p);
    for &process in processes(a.model) {
        let (gen, start) = match process {
            Process::Ajc => (&h.ajc, p.basis_ket(Atom::Ground, n)?),
            Process::Jc => (&h.jc, p.basis_ket(Atom::Excited, n)?),
        };
        let oracle = Propagator::new(gen, &start)?;
        let tmax = match a.grid.tmax {
            Some(t) => t,
            None => dynamics::bloch_period(&p, process, n)?,
        };
        for t in dynamics::time_grid(tmax, samples) {
            let (state, (pg, pe)) = match process {
                Process::Ajc => (dynamics::evolve_closed_form(&p, n, t)?, dynamics::probabilities(&p, n, t)?),
                Process::Jc => (dynamics::jc_evolve(&p, n, t)?, dynamics::jc_probabilities(&p, n, t)?),
            };
            let a_psi = state.global_phase * state.amplitude_psi;
            let a_phi = state.global_phase * state.amplitude_phi;
            let deviation = state
                .ket
                .amps()
                .iter()
                .zip(oracle.at(t))
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max);
            table.push(vec![
                process.name().into(),
                t.into(),
                pg.into(),
                pe.into(),
                a_psi.re.into(),
                a_psi.im.into(),
                a_phi.re.into(),
                a_phi.im.into(),
                deviation.into(),
            ]);
        }
    }
    write_table(&table, &prov, a.out.format, a.out.output.as_deref())
}

fn fmt_complex(z: C64) -> String {
    let im = fmt_num(z.im);
    if im.starts_with('-') {
        format!("{}{}i", fmt_num(z.re), im)
    } else {
        format!("{}+{}i", fmt_num(z.re), im)
    }
}

fn fmt_fixed(x: f64) -> String {
    let s = format!("{x:.12}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn fmt_two_qubit(k: &KetState, labels: [&str; 4]) -> String {
    labels
        .iter()
        .zip(k.amps())
        .map(|(l, a)| format!("{l}={}", fmt_complex(*a)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn teleport_text(report: &ProtocolReport, prov: &Provenance) -> String {
    let mut out = String::new();
    for (k, v) in prov.entries() {
        let _ = writeln!(out, "# {k}={v}");
    }
    let _ = writeln!(out, "resource(3,x): {}", fmt_two_qubit(&report.resource, ["e0", "e1", "g0", "g1"]));
    for b in &report.branches {
        let o = &b.outcome;
        let _ = writeln!(
            out,
            "branch={} p={} correction={}",
            o.bell_index.name(),
            fmt_fixed(o.probability),
            o.correction.label()
        );
        let _ = writeln!(out, "  post_state(3,2): {}", fmt_two_qubit(&o.post_state, ["ee", "eg", "ge", "gg"]));
        let _ = writeln!(out, "  corrected(3,2): {}", fmt_two_qubit(&b.corrected, ["ee", "eg", "ge", "gg"]));
        let _ = writeln!(
            out,
            "  entangled_fraction={} fidelity={}",
            fmt_fixed(b.entangled_fraction),
            fmt_fixed(b.fidelity)
        );
    }
    let _ = writeln!(out, "F={}", fmt_fixed(report.average_fidelity()));
    out
}

fn teleport_summary(report: &ProtocolReport, prov: &Provenance) -> String {
    let branches: Vec<_> = report
        .branches
        .iter()
        .map(|b| {
            serde_json::json!({
                "bell": b.outcome.bell_index.name(),
                "probability": b.outcome.probability,
                "correction": b.outcome.correction.label(),
                "entangled_fraction": b.entangled_fraction,
                "fidelity": b.fidelity,
            })
        })
        .collect();
    let value = serde_json::json!({
        "config": prov.to_json(),
        "branches": branches,
        "average_fidelity": report.average_fidelity(),
        "min_fidelity": report.min_fidelity(),
    });
    let mut s = serde_json::to_string_pretty(&value).expect("plain JSON values");
    s.push('\n');
    s
}

pub fn teleport(a: &TeleportArgs) -> CmdResult {
    let p = SystemParams::from_detuning(a.omega_over_lambda, a.resource_delta_over_lambda, SystemParams::DEFAULT_NMAX)
        .map_err(usage)?;
    let mut prov = Provenance::new("teleport");
    prov.num("resource_delta_over_lambda", a.resource_delta_over_lambda);
    prov.num("omega_over_lambda", a.omega_over_lambda);
    let bob = teleport::ajc_resource(&p)?;
    let report = teleport::run_protocol(&bob)?;
    let text = match a.out.format {
        Format::Csv => teleport_text(&report, &prov),
        Format::JsonSummary => teleport_summary(&report, &prov),
    };
    emit(a.out.output.as_deref(), &text)?;
    Ok(())
}

pub fn verify(a: &VerifyArgs) -> CmdResult {
    let opts = VerifyOptions { seed: a.seed, random_cases: a.random_cases, ajc_perturbation: a.perturb_ajc };
    let results = verify::run_all(&opts);
    let text = match a.out.format {
        Format::Csv => {
            let mut out = format!("# command=verify\n# seed={}\n# random_cases={}\n", a.seed, a.random_cases);
            for r in &results {
                let _ = writeln!(
                    out,
                    "[{}] {} value={} tolerance={} {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    fmt_num(r.value),
                    fmt_num(r.tolerance),
                    r.detail
                );
            }
            let passed = results.iter().filter(|r| r.passed).count();
            let _ = writeln!(out, "{passed}/{} checks passed", results.len());
            out
        }
        Format::JsonSummary => {
            let checks: Vec<_> = results
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "name": r.name,
                        "passed": r.passed,
                        "value": if r.value.is_finite() { serde_json::json!(r.value) } else { serde_json::Value::Null },
                        "tolerance": r.tolerance,
                        "detail": r.detail,
                    })
                })
                .collect();
            let value = serde_json::json!({ "seed": a.seed, "random_cases": a.random_cases, "checks": checks });
            let mut s = serde_json::to_string_pretty(&value).expect("plain JSON values");
            s.push('\n');
            s
        }
    };
    emit(a.out.output.as_deref(), &text)?;
    let failed: Vec<&'static str> = results.iter().filter(|r| !r.passed).map(|r| r.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Checks(failed))
    }
}
