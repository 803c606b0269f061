//! Command dispatch. Every command parses and validates its input before any
//! computation, and reports through [`Outcome`] rather than panicking.

use std::fmt::Write as _;
use std::path::PathBuf;

use paramodular_core::exactalg::RingElt;
use paramodular_core::invariants::{
    check_sample, paramodular_euler_factor, paramodular_invariants, suite, verify_l_equality,
};
use paramodular_core::packets::{
    build_induced_parameter, build_split_parameter, check_similitude, classify_packet_with, ClassifyOptions,
    Matrix2,
};
use paramodular_core::quadfield::{omega_minus_one, splitting_type, QuadField, SplitType};
use paramodular_core::transfer::{archimedean_check, global_report, theorem_suite};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::output::{
    ArchimedeanOut, ConstituentOut, InvariantsOut, PacketOut, PlaceDataOut, PrimeOut, ReportOut, RowOut,
    SimilitudeOut, TheoremCheckOut, VerifyOut,
};
use crate::schema::{from_json, to_json, LocalInput, SchemaError, TransferInput};

pub const CONSANI_SCHOLTEN: &str = include_str!("../data/consani-scholten.json");
pub const BRANCHES: &str = include_str!("../data/branches.json");

/// Sample points of the archimedean check.
pub const ARCH_SAMPLES: [f64; 5] = [0.75, 1.5, 2.0, 3.25, 5.5];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Example {
    ConsaniScholten,
    Branches,
}

impl Example {
    pub fn source(self) -> &'static str {
        match self {
            Example::ConsaniScholten => CONSANI_SCHOLTEN,
            Example::Branches => BRANCHES,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Field { d: i64, p: u64 },
    Classify { input: PathBuf },
    Invariants { input: PathBuf },
    Transfer { input: PathBuf },
    VerifyTables,
    Example(Example),
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobOptions {
    /// Extra primes reported by `transfer`.
    pub primes: Vec<u64>,
    /// Relative tolerance of the archimedean check.
    pub tolerance: f64,
    /// Seed of the randomized similitude trials.
    pub seed: u64,
}

impl Default for JobOptions {
    fn default() -> Self {
        JobOptions {
            primes: Vec::new(),
            tolerance: 1e-9,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub command: Command,
    pub output: OutputFormat,
    pub options: JobOptions,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    /// 0 success, 1 verification failure, 2 input error.
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, passed: bool) -> Self {
        Outcome {
            exit_code: if passed { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(msg: impl Into<String>) -> Self {
        Outcome {
            exit_code: 2,
            stdout: String::new(),
            stderr: format!("error: {}\n", msg.into()),
        }
    }
}

impl From<SchemaError> for Outcome {
    fn from(e: SchemaError) -> Self {
        Outcome::input_error(format!("invalid input at {}: {}", e.path, e.message))
    }
}

pub fn run(spec: &JobSpec) -> Outcome {
    match &spec.command {
        Command::Field { d, p } => field(*d, *p, spec.output),
        Command::Classify { input } => read(input).map_or_else(|e| e, |t| classify(&t, spec.output)),
        Command::Invariants { input } => read(input).map_or_else(|e| e, |t| invariants(&t, spec.output)),
        Command::Transfer { input } => read(input).map_or_else(|e| e, |t| transfer(&t, spec)),
        Command::VerifyTables => verify_tables(spec.output, spec.options.seed),
        Command::Example(ex) => transfer(ex.source(), spec),
    }
}

fn read(path: &PathBuf) -> Result<String, Outcome> {
    std::fs::read_to_string(path).map_err(|e| Outcome::input_error(format!("{}: {e}", path.display())))
}

fn field(d: i64, p: u64, fmt: OutputFormat) -> Outcome {
    let result = QuadField::new(d).and_then(|f| {
        let data = splitting_type(&f, p)?;
        let w = match data.split_type {
            SplitType::Split => None,
            _ => Some(omega_minus_one(&f, p)?),
        };
        Ok(PlaceDataOut::new(&data, w))
    });
    let out = match result {
        Ok(o) => o,
        Err(e) => return Outcome::input_error(e.to_string()),
    };
    let text = match fmt {
        OutputFormat::Json => to_json(&out),
        OutputFormat::Text => {
            let t = paramodular_core::quadfield::SplitType::from(out.split_type);
            let mut s = format!("{t}, f={}, e={}, d={}, places={}", out.f, out.e, out.d, out.num_places);
            if let Some(w) = out.omega_minus_one {
                write!(s, ", ω(-1)={w:+}").unwrap();
            }
            s.push('\n');
            s
        }
    };
    Outcome::ok(text, true)
}

fn classify(text: &str, fmt: OutputFormat) -> Outcome {
    let job = match from_json::<LocalInput>(text).and_then(|i| i.to_core()) {
        Ok(j) => j,
        Err(e) => return e.into(),
    };
    let opts = ClassifyOptions {
        xi: job.xi,
        relations: job.relations,
    };
    let packet = match classify_packet_with(&job.data, &opts) {
        Ok(p) => p,
        Err(e) => return Outcome::input_error(e.to_string()),
    };
    let out = PacketOut {
        group_labels: packet.group_labels.iter().map(|g| g.as_str().to_string()).collect(),
        constituents: packet
            .constituents
            .iter()
            .map(|c| ConstituentOut {
                group: c.group.as_str().to_string(),
                text: c.to_string(),
            })
            .collect(),
        generic_index: packet.generic_index,
    };
    let text = match fmt {
        OutputFormat::Json => to_json(&out),
        OutputFormat::Text => {
            let mut s = format!("packet {{{}}}\n", out.group_labels.join(", "));
            for (i, c) in out.constituents.iter().enumerate() {
                let mark = if Some(i) == out.generic_index { "  (generic)" } else { "" };
                writeln!(s, "  {:<6} {}{mark}", c.group, c.text).unwrap();
            }
            s
        }
    };
    Outcome::ok(text, true)
}

fn invariants(text: &str, fmt: OutputFormat) -> Outcome {
    let job = match from_json::<LocalInput>(text).and_then(|i| i.to_core()) {
        Ok(j) => j,
        Err(e) => return e.into(),
    };
    let inv = match paramodular_invariants(&job.data) {
        Ok(i) => i,
        Err(e) => return Outcome::input_error(e.to_string()),
    };
    let q = match job.prime {
        Some(p) => paramodular_core::exactalg::QSpec::PrimePower { p, f: 1 },
        None => paramodular_core::exactalg::QSpec::Symbolic,
    };
    let rel = &job.relations;
    let (eps, lambda, mu) = (rel.apply(&inv.eps_pi), rel.apply(&inv.lambda_pi), rel.apply(&inv.mu_pi));
    let factor = match paramodular_euler_factor(inv.n_pi, &eps, &lambda, &mu, q).reduce(rel) {
        Ok(f) => f,
        Err(e) => return Outcome::input_error(e.to_string()),
    };
    let leq = match verify_l_equality(&job.data, rel) {
        Ok(l) => l,
        Err(e) => return Outcome::input_error(e.to_string()),
    };
    let out = InvariantsOut {
        row_id: inv.row_id.clone(),
        group: inv.group.as_str().to_string(),
        n: inv.n_pi,
        eps: eps.to_string(),
        lambda: lambda.to_string(),
        mu: mu.to_string(),
        euler_factor: factor.coeffs().iter().map(ToString::to_string).collect(),
        euler_factor_text: factor.to_string(),
        l_equality: leq.is_ok(),
        l_equality_witness: leq.witness_text(),
    };
    let text = match fmt {
        OutputFormat::Json => to_json(&out),
        OutputFormat::Text => {
            let mut s = String::new();
            writeln!(s, "row      {} (group {})", out.row_id, out.group).unwrap();
            writeln!(s, "N_π      {}", out.n).unwrap();
            writeln!(s, "ε_π      {}", out.eps).unwrap();
            writeln!(s, "λ_π      {}", out.lambda).unwrap();
            writeln!(s, "μ_π      {}", out.mu).unwrap();
            writeln!(s, "L^-1     {}", out.euler_factor_text).unwrap();
            match &out.l_equality_witness {
                None => writeln!(s, "L(s,Π) = L(s,φ): ok").unwrap(),
                Some(w) => writeln!(s, "L(s,Π) = L(s,φ): FAIL, difference {w}").unwrap(),
            }
            s
        }
    };
    Outcome::ok(text, out.l_equality)
}

fn transfer(text: &str, spec: &JobSpec) -> Outcome {
    let input = match from_json::<TransferInput>(text).and_then(|i| i.to_core()) {
        Ok(i) => i,
        Err(e) => return e.into(),
    };
    for (i, p) in spec.options.primes.iter().enumerate() {
        if !paramodular_core::quadfield::is_prime(*p) {
            return Outcome::input_error(format!("--primes[{i}]: {p} is not prime"));
        }
    }
    if !(spec.options.tolerance.is_finite() && spec.options.tolerance > 0.0) {
        return Outcome::input_error("--tolerance must be a positive number");
    }
    let report = match global_report(&input, &spec.options.primes) {
        Ok(r) => r,
        Err(e) => return Outcome::input_error(e.to_string()),
    };
    let arch = match archimedean_check(input.n, &ARCH_SAMPLES, spec.options.tolerance) {
        Ok(a) => a,
        Err(e) => return Outcome::input_error(e.to_string()),
    };
    let mut out = ReportOut::from_core(&report);
    out.archimedean_check = Some(ArchimedeanOut {
        samples: ARCH_SAMPLES.to_vec(),
        tolerance: spec.options.tolerance,
        constant: arch.constant,
        max_rel_dev: arch.max_rel_dev,
        ok: arch.ok,
    });
    let passed = arch.ok
        && report.global.sign_consistent
        && out
            .primes
            .iter()
            .all(|p| !matches!(p, PrimeOut::Resolved { theorem_agrees: false, .. }));
    let text = match spec.output {
        OutputFormat::Json => to_json(&out),
        OutputFormat::Text => render_report(&out),
    };
    Outcome::ok(text, passed)
}

pub fn render_report(r: &ReportOut) -> String {
    let mut s = String::new();
    writeln!(s, "weight k = {}", r.k).unwrap();
    writeln!(s, "level  N = {} = {}", r.level.text, r.level.value).unwrap();
    for p in &r.primes {
        match p {
            PrimeOut::Resolved {
                p,
                split_type,
                val_p_n,
                row_id,
                lambda,
                mu,
                eps,
                euler_factor_text,
                lambda_classical,
                mu_classical,
                classical_factor_text,
                theorem,
                theorem_agrees,
                ..
            } => {
                let t = paramodular_core::quadfield::SplitType::from(*split_type);
                writeln!(s, "p = {p} ({}, val_p(N) = {val_p_n}, row {row_id})", t.as_str()).unwrap();
                writeln!(s, "  λ_p = {lambda}").unwrap();
                writeln!(s, "  μ_p = {mu}").unwrap();
                if let Some(e) = eps {
                    writeln!(s, "  ε_p = {e}").unwrap();
                }
                writeln!(s, "  classical λ = {lambda_classical}, μ = {mu_classical}").unwrap();
                writeln!(s, "  L_p(s,π_0)^-1 = {euler_factor_text}").unwrap();
                writeln!(s, "  L_p(s,F)^-1   = {classical_factor_text}").unwrap();
                let verdict = if *theorem_agrees { "agrees" } else { "DISAGREES" };
                writeln!(s, "  closed form {}: {verdict}", theorem.branch).unwrap();
            }
            PrimeOut::Unresolved {
                p,
                split_type,
                val_p_n,
                reason,
            } => {
                let t = paramodular_core::quadfield::SplitType::from(*split_type);
                writeln!(s, "p = {p} ({}, val_p(N) = {val_p_n}): unresolved, {reason}", t.as_str()).unwrap();
            }
        }
    }
    writeln!(s, "sign = {}", r.global.sign).unwrap();
    writeln!(s, "{}", r.global.functional_equation).unwrap();
    writeln!(s, "Γ-factor {}", r.global.archimedean).unwrap();
    writeln!(s, "{}", r.global.epsilon_chain).unwrap();
    if let Some(a) = &r.archimedean_check {
        let v = if a.ok { "ok" } else { "FAIL" };
        writeln!(
            s,
            "archimedean ratio constant = {:.12e}, max deviation {:.2e}: {v}",
            a.constant, a.max_rel_dev
        )
        .unwrap();
    }
    s
}

/// Runs the row suite, the closed-form suite and randomized similitude
/// trials. Samples are checked on worker threads; output is sorted by row.
fn verify_tables(fmt: OutputFormat, seed: u64) -> Outcome {
    let samples = suite::row_suite();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(8);
    let chunk = samples.len().div_ceil(workers);
    let mut rows: Vec<RowOut> = std::thread::scope(|s| {
        let handles: Vec<_> = samples
            .chunks(chunk)
            .map(|c| s.spawn(move || c.iter().map(check_sample).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("row worker"))
            .map(|r| RowOut {
                ok: r.ok(),
                row_id: r.expected_row,
                sample: r.sample,
                matched_row: r.row_id,
                l_equality: r.l_equality,
                conductor_ok: r.conductor_ok,
                epsilon_ok: r.epsilon_ok,
                packet_ok: r.packet_ok,
                message: r.message,
            })
            .collect()
    });
    rows.sort_by(|a, b| (&a.row_id, &a.sample).cmp(&(&b.row_id, &b.sample)));
    let mut theorem: Vec<TheoremCheckOut> = theorem_suite()
        .into_iter()
        .map(|c| TheoremCheckOut {
            ok: c.ok(),
            row_id: c.row_id,
            sample: c.label,
            branch: c.branch.as_str().to_string(),
            lambda_agrees: c.lambda_agrees,
            mu_agrees: c.mu_agrees,
            literal_agrees: c.literal_agrees,
            epsilon_agrees: c.epsilon_agrees,
            message: c.message,
        })
        .collect();
    theorem.sort_by(|a, b| (&a.row_id, &a.sample).cmp(&(&b.row_id, &b.sample)));
    let similitude = similitude_trials(seed, 100);
    let ok = rows.iter().all(|r| r.ok) && theorem.iter().all(|t| t.ok) && similitude.failures.is_empty();
    let out = VerifyOut {
        rows,
        theorem,
        similitude,
        ok,
    };
    let text = match fmt {
        OutputFormat::Json => to_json(&out),
        OutputFormat::Text => render_verify(&out),
    };
    Outcome::ok(text, ok)
}

fn render_verify(v: &VerifyOut) -> String {
    let flag = |b: bool| if b { "ok  " } else { "FAIL" };
    let mut s = String::from("row identities\n");
    for r in &v.rows {
        write!(s, "  {} {:<16} {}", flag(r.ok), r.row_id, r.sample).unwrap();
        if let Some(m) = &r.message {
            write!(s, " [{m}]").unwrap();
        }
        s.push('\n');
    }
    s.push_str("closed-form eigenvalues\n");
    for t in &v.theorem {
        write!(s, "  {} {:<16} {:<13} {}", flag(t.ok), t.row_id, t.branch, t.sample).unwrap();
        if t.literal_agrees == Some(false) {
            s.push_str(" (literal statement differs)");
        }
        if let Some(m) = &t.message {
            write!(s, " [{m}]").unwrap();
        }
        s.push('\n');
    }
    writeln!(
        s,
        "similitude: {} trials, seed {}, {} failure(s)",
        v.similitude.trials,
        v.similitude.seed,
        v.similitude.failures.len()
    )
    .unwrap();
    for f in &v.similitude.failures {
        writeln!(s, "  {f}").unwrap();
    }
    let rows_ok = v.rows.iter().filter(|r| r.ok).count();
    let th_ok = v.theorem.iter().filter(|t| t.ok).count();
    writeln!(
        s,
        "{}: {rows_ok}/{} row samples, {th_ok}/{} closed-form samples",
        if v.ok { "all ok" } else { "FAILED" },
        v.rows.len(),
        v.theorem.len()
    )
    .unwrap();
    s
}

/// A random entry: a small nonzero integer, a symbol, or a product of both.
fn random_entry(rng: &mut StdRng) -> RingElt {
    let c = RingElt::from_int(rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 });
    match rng.gen_range(0..3) {
        0 => c,
        1 => RingElt::var(["x", "y", "z"][rng.gen_range(0..3)]),
        _ => &c * &RingElt::var_pow(["x", "y", "z"][rng.gen_range(0..3)], rng.gen_range(-2..=2)),
    }
}

/// A random matrix with determinant `det`: the first three entries are
/// random and the corner entry is solved for, dividing by a nonzero integer.
pub fn random_matrix_with_det(rng: &mut StdRng, det: &RingElt) -> Matrix2 {
    let a = RingElt::from_int(rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 });
    let (b, c) = (random_entry(rng), random_entry(rng));
    let inv_a = RingElt::from_rational(a.as_rational().expect("integer").recip());
    let d = &(det + &(&b * &c)) * &inv_a;
    Matrix2::new(a, b, c, d)
}

pub fn random_matrix(rng: &mut StdRng) -> Matrix2 {
    Matrix2::new(random_entry(rng), random_entry(rng), random_entry(rng), random_entry(rng))
}

/// `trials` random split and induced parameters, checked for `g^t J g = lambda J`.
pub fn similitude_trials(seed: u64, trials: usize) -> SimilitudeOut {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for t in 0..trials {
        let m1 = random_matrix(&mut rng);
        let m2 = random_matrix_with_det(&mut rng, &m1.det());
        match build_split_parameter(&m1, &m2) {
            Ok(g) if check_similitude(&g) == Some(m1.det()) => {}
            Ok(_) => failures.push(format!("trial {t}: split parameter is not a similitude")),
            Err(e) => failures.push(format!("trial {t}: {e}")),
        }
        let y = random_matrix(&mut rng);
        let conj = random_matrix_with_det(&mut rng, &y.det());
        let eta = random_entry(&mut rng);
        let g0sq = random_matrix_with_det(&mut rng, &(&eta * &eta));
        match build_induced_parameter(&y, &conj, &g0sq, &eta) {
            Ok((gy, g0)) => {
                if check_similitude(&gy) != Some(y.det()) {
                    failures.push(format!("trial {t}: induced parameter at y is not a similitude"));
                }
                if check_similitude(&g0) != Some(eta.clone()) {
                    failures.push(format!("trial {t}: induced parameter at g0 is not a similitude"));
                }
            }
            Err(e) => failures.push(format!("trial {t}: {e}")),
        }
    }
    SimilitudeOut {
        seed,
        trials,
        failures,
    }
}
