use std::fmt::Write;

use lindblad2_core::asymptotics::{classify, default_horizon, verify_asymptote, AsymptoticKind};
use lindblad2_core::cpcheck::{is_completely_positive_with, CpReport, CpVerdict};
use lindblad2_core::dynamics::{build_generator, evolve_rk4, sample_expm, Method, Trajectory};
use lindblad2_core::forms::{a_to_b, b_to_l, gks_matrix, gks_minimal, l_to_m, reduce_terms};
use lindblad2_core::{DissipationMatrix, DissipatorForm, Error, FormB, FormE, Vec3};

use crate::format::{self, num, sci};
use crate::model::Model;
use crate::CliError;

pub use lindblad2_core::dynamics::DEFAULT_DT;

/// Round trips between representations must reproduce `L` this closely.
pub const ROUND_TRIP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub eps_psd: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Self { eps_psd: lindblad2_core::tol::EPS_PSD }
    }
}

/// Text for stdout and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub report: String,
    pub code: u8,
}

impl Outcome {
    fn ok(report: String) -> Self {
        Self { report, code: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    A,
    B,
    E,
    Gks,
}

fn form_name(d: &DissipatorForm) -> &'static str {
    match d {
        DissipatorForm::A(_) => "A",
        DissipatorForm::B(_) => "B",
        DissipatorForm::C(_) => "C",
        DissipatorForm::D(_) => "D",
        DissipatorForm::E(_) => "E",
    }
}

fn deviation(a: &DissipationMatrix, b: &DissipationMatrix) -> f64 {
    (*a.matrix() - *b.matrix()).max_abs()
}

fn describe(v: &CpVerdict) -> String {
    match v {
        CpVerdict::Cp => "CP".into(),
        CpVerdict::NotCp(v) => format!("{} (margin {})", v.condition, sci(v.margin)),
    }
}

fn cp_report(model: &Model, s: &Settings) -> Result<CpReport, CliError> {
    Ok(is_completely_positive_with(&model.dissipation_matrix(), s.eps_psd)?)
}

/// Form B of a completely positive model.
fn projector_form(model: &Model, s: &Settings) -> Result<FormB, CliError> {
    match &model.dissipator {
        DissipatorForm::A(fa) => Ok(a_to_b(fa)?),
        DissipatorForm::B(fb) => Ok(fb.clone()),
        _ => {
            let rep = cp_report(model, s)?;
            match (&rep.verdict, rep.certificate) {
                (CpVerdict::NotCp(_), _) => Err(CliError::NotCp(describe(&rep.verdict))),
                (_, Some((fb, _))) => Ok(fb),
                (_, None) => Err(Error::EmptyDissipator.into()),
            }
        }
    }
}

fn form_e_line(fe: &FormE) -> String {
    format!(
        "a={}, b={}, c={}, alpha={}, beta={}, gamma={}",
        num(fe.a),
        num(fe.b),
        num(fe.c),
        num(fe.alpha),
        num(fe.beta),
        num(fe.gamma)
    )
}

pub fn check(model: &Model, s: &Settings) -> Result<Outcome, CliError> {
    let l = model.dissipation_matrix();
    let rep = cp_report(model, s)?;
    let mut out = String::new();
    let _ = writeln!(out, "form: {}", form_name(&model.dissipator));
    let _ = writeln!(out, "L: {}", format::mat3(l.matrix()));
    let _ = writeln!(out, "M: {}", format::mat3(l_to_m(&l).matrix()));
    let _ = writeln!(out, "form E: {}", form_e_line(&FormE::pack(&l)));
    let _ = writeln!(out, "tolerance: {}", sci(s.eps_psd));
    let _ = writeln!(out, "min eigenvalue of M/|M|: {}", num(rep.min_eigenvalue));
    let _ = writeln!(out, "conditions (a)-(c): {}", describe(&rep.form_e));
    let _ = writeln!(out, "conditions (i)-(iii): {}", describe(&rep.verdict));
    let code = match (&rep.verdict, &rep.certificate) {
        (CpVerdict::NotCp(_), _) => {
            let _ = writeln!(out, "verdict: not CP");
            1
        }
        (CpVerdict::Cp, Some((fb, ell))) => {
            let _ = writeln!(out, "verdict: CP");
            let _ = writeln!(out, "certificate: {}, ℓ={ell}", format::terms(fb));
            0
        }
        (CpVerdict::Cp, None) => {
            let _ = writeln!(out, "verdict: CP");
            let _ = writeln!(out, "certificate: none (zero dissipator)");
            0
        }
    };
    Ok(Outcome { report: out, code })
}

pub fn convert(model: &Model, target: Target, s: &Settings) -> Result<Outcome, CliError> {
    let l = model.dissipation_matrix();
    let fb = projector_form(model, s)?;
    let mut out = String::new();
    let _ = writeln!(out, "from: {}", form_name(&model.dissipator));
    let back = match target {
        Target::A => {
            let fa = fb.to_form_a();
            let _ = writeln!(out, "to: A");
            let _ = writeln!(out, "operators: {}", fa.len());
            for (i, a) in fa.operators().iter().enumerate() {
                let _ = writeln!(out, "A{} = {}", i + 1, format::cmat2(a));
            }
            DissipatorForm::A(fa).dissipation_matrix()
        }
        Target::B => {
            let _ = writeln!(out, "to: B");
            let _ = writeln!(out, "terms: {}", fb.len());
            for t in fb.terms() {
                let _ = writeln!(out, "{}", format::term(t));
            }
            b_to_l(&fb)
        }
        Target::E => {
            let fe = FormE::pack(&l);
            let _ = writeln!(out, "to: E");
            let _ = writeln!(out, "{}", form_e_line(&fe));
            fe.unpack()
        }
        Target::Gks => {
            let c = match &model.dissipator {
                DissipatorForm::A(fa) => gks_matrix(fa.operators()),
                _ => gks_matrix(fb.to_form_a().operators()),
            };
            let _ = writeln!(out, "to: GKS (basis σ_k/√2)");
            let _ = writeln!(out, "c: {}", format::cmat3(c.entries()));
            match gks_minimal(&c)? {
                fa if fa.is_empty() => DissipationMatrix::ZERO,
                fa => DissipatorForm::A(fa).dissipation_matrix(),
            }
        }
    };
    let dev = deviation(&back, &l);
    if !(dev <= ROUND_TRIP_TOL) {
        return Err(CliError::Model(format!("round trip lost L (deviation {})", sci(dev))));
    }
    let _ = writeln!(out, "round trip: ok");
    Ok(Outcome::ok(out))
}

pub fn reduce(model: &Model, s: &Settings) -> Result<Outcome, CliError> {
    let fb = projector_form(model, s)?;
    let (red, ell) = reduce_terms(&fb)?;
    let dev = deviation(&b_to_l(&red), &b_to_l(&fb));
    if !(dev <= ROUND_TRIP_TOL) {
        return Err(CliError::Model(format!("reduction lost L (deviation {})", sci(dev))));
    }
    let mut out = String::new();
    let _ = writeln!(out, "input terms: {}", fb.len());
    let _ = writeln!(out, "minimal: {}", format::terms(&red));
    let _ = writeln!(out, "index: ℓ={ell}");
    let _ = writeln!(out, "L preserved: yes");
    Ok(Outcome::ok(out))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveArgs {
    pub t_max: f64,
    pub dt: f64,
    pub method: Method,
}

/// Trajectory plus the asymptotic Bloch vector it is measured against
/// (`None` without dissipation).
pub fn trajectory(
    model: &Model,
    args: &EvolveArgs,
    s: &Settings,
) -> Result<(Trajectory, Option<Vec3>), CliError> {
    let rho0 = model.initial()?;
    let limit = match projector_form(model, s) {
        Ok(fb) => Some(classify(&model.hamiltonian, &fb)?.limit(rho0).bloch()),
        Err(CliError::Core(Error::EmptyDissipator)) => None,
        Err(e) => return Err(e),
    };
    let g = build_generator(&model.hamiltonian, &model.dissipation_matrix());
    let traj = match args.method {
        Method::Rk4 => evolve_rk4(&g, &rho0.bloch(), args.t_max, args.dt)?,
        Method::Expm => sample_expm(&g, &rho0.bloch(), args.t_max, args.dt)?,
    };
    Ok((traj, limit))
}

pub const CSV_HEADER: [&str; 6] = ["t", "rx", "ry", "rz", "entropy", "dist_to_limit"];

pub fn write_csv<W: std::io::Write>(
    w: W,
    traj: &Trajectory,
    limit: Option<Vec3>,
) -> Result<(), CliError> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(CSV_HEADER)?;
    for s in &traj.samples {
        let dist = limit.map_or(f64::NAN, |l| lindblad2_core::linalg::distance(&s.r, &l));
        wtr.write_record([s.t, s.r[0], s.r[1], s.r[2], s.entropy, dist].map(format::full))?;
    }
    wtr.flush().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}

pub fn evolve_summary(traj: &Trajectory, limit: Option<Vec3>) -> String {
    let last = traj.last();
    let mut out = String::new();
    let _ = writeln!(out, "samples: {}", traj.samples.len());
    let _ = writeln!(out, "final: t={} r={} entropy={}", num(last.t), format::vec3(&last.r), num(last.entropy));
    match limit {
        Some(l) => {
            let _ = writeln!(out, "limit: {}", format::vec3(&l));
        }
        None => {
            let _ = writeln!(out, "limit: none (no dissipation)");
        }
    }
    out
}

pub fn asymptote(model: &Model, s: &Settings) -> Result<Outcome, CliError> {
    let rho0 = model.initial()?;
    let fb = projector_form(model, s)?;
    let v = classify(&model.hamiltonian, &fb)?;
    let horizon = default_horizon(v.spectral_gap);
    let rep = verify_asymptote(&model.hamiltonian, &fb, rho0, horizon, ROUND_TRIP_TOL)?;
    let mut out = String::new();
    match v.kind {
        AsymptoticKind::MaximallyMixed => {
            let _ = writeln!(out, "kind: maximally mixed");
        }
        AsymptoticKind::DecoheredInP(n) => {
            let n = format::canonical_axis(n.get());
            let _ = writeln!(out, "kind: decohered in P, n={}", format::vec3(&n));
        }
    }
    let _ = writeln!(out, "index: ℓ={}", v.ell);
    let _ = writeln!(out, "commuting: {}", v.commuting);
    let eig: Vec<String> = v.eigenvalues.iter().map(|&z| format::complex(z)).collect();
    let _ = writeln!(out, "eigenvalues: {}", eig.join(", "));
    let _ = writeln!(out, "spectral gap: {}", num(v.spectral_gap));
    let _ = writeln!(out, "initial: {}", format::vec3(&rho0.bloch()));
    let _ = writeln!(out, "limit: {}", format::vec3(&rep.limit_bloch));
    let _ = writeln!(out, "horizon: {}", num(horizon));
    let _ = writeln!(out, "distance at horizon: {}", sci(rep.distance));
    let _ = writeln!(out, "bound 2e^(-gT): {}", sci(rep.bound));
    let _ = writeln!(out, "within bound: {}", rep.within_bound);
    Ok(Outcome::ok(out))
}

