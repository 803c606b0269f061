//! Paramodular level, Atkin–Lehner sign and Hecke eigenvalues of the generic
//! member of a tempered L-packet with trivial central character.
//!
//! The row table is the primary path. [`conductor_formula`],
//! [`epsilon_formula`] and the local L-factor products are computed
//! independently and serve as cross-checks.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::exactalg::{render_poly, EulerFactor, QSpec, Relations, RingElt};
use crate::localdata::{
    atkin_lehner_epsilon, conductor, gl2_euler_factor, validate, BaseField, Char, GL2Rep, InducingData,
    LocalError, LocalExtension, SquareClass, Supercuspidal, Violation,
};
use crate::packets::Group;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantsError {
    #[error("no row matched: {0}")]
    NoRowMatched(String),
    #[error("non-tempered input: {0}")]
    NonTemperedInput(String),
    #[error("undecidable with symbolic data: {0}")]
    Undecidable(String),
    #[error("inconsistent descent data: {0}")]
    InconsistentDescent(String),
    #[error("invalid inducing data: {}", render_violations(.0))]
    Invalid(Vec<Violation>),
}

fn render_violations(v: &[Violation]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    parts.join("; ")
}

impl From<crate::exactalg::AlgebraError> for InvariantsError {
    fn from(e: crate::exactalg::AlgebraError) -> Self {
        InvariantsError::Undecidable(e.to_string())
    }
}

impl From<LocalError> for InvariantsError {
    fn from(e: LocalError) -> Self {
        InvariantsError::Undecidable(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamodularInvariants {
    pub n_pi: u32,
    pub eps_pi: RingElt,
    pub lambda_pi: RingElt,
    pub mu_pi: RingElt,
    pub row_id: String,
    pub group: Group,
}

fn q() -> RingElt {
    RingElt::q_pow(1)
}

fn q2() -> RingElt {
    RingElt::q_pow(2)
}

fn q32() -> RingElt {
    RingElt::q_half_pow(3)
}

fn int(n: i64) -> RingElt {
    RingElt::from_int(n)
}

fn sign(s: i8) -> RingElt {
    RingElt::from_int(s.into())
}

struct Row {
    id: &'static str,
    group: Group,
    n: u32,
    eps: RingElt,
    lambda: RingElt,
    mu: RingElt,
}

impl Row {
    fn new(id: &'static str, group: Group, n: u32, eps: RingElt, lambda: RingElt, mu: RingElt) -> Self {
        Row {
            id,
            group,
            n,
            eps,
            lambda,
            mu,
        }
    }

    /// Rows whose generic member has no Iwahori-fixed vectors in the
    /// relevant sense: `lambda = 0`, `mu = -q^2`.
    fn deep(id: &'static str, group: Group, n: u32, eps: RingElt) -> Self {
        Row::new(id, group, n, eps, RingElt::zero(), -q2())
    }
}

fn check_tempered(rep: &GL2Rep, path: &str) -> Result<(), InvariantsError> {
    if let GL2Rep::OneDimensional { .. } = rep {
        return Err(InvariantsError::NonTemperedInput(format!(
            "{path} is one-dimensional"
        )));
    }
    for c in rep.chars() {
        if !c.unitary {
            return Err(InvariantsError::NonTemperedInput(format!(
                "{path}: character {} is not unitary",
                c.name
            )));
        }
    }
    Ok(())
}

/// Satake trace `alpha + alpha^{-1}` over a base of residue degree `f`.
fn trace(rep: &GL2Rep, f: u32) -> RingElt {
    rep.satake_trace(f).unwrap_or_default()
}

/// `(alpha, alpha^{-1})` of an unramified principal series when available
/// explicitly.
fn satake_pair(rep: &GL2Rep) -> Option<(&RingElt, &RingElt)> {
    match rep {
        GL2Rep::PrincipalSeries { alpha1, alpha2 } => Some((&alpha1.val_at_unif, &alpha2.val_at_unif)),
        _ => None,
    }
}

fn ps_char(rep: &GL2Rep) -> Option<&Char> {
    match rep {
        GL2Rep::PrincipalSeries { alpha1, .. } => Some(alpha1),
        _ => None,
    }
}

fn st_char(rep: &GL2Rep) -> Option<&Char> {
    match rep {
        GL2Rep::SteinbergTwist { alpha } => Some(alpha),
        _ => None,
    }
}

fn kind_rank(rep: &GL2Rep) -> u8 {
    match rep {
        GL2Rep::PrincipalSeries { .. } | GL2Rep::UnramifiedHecke { .. } => 0,
        GL2Rep::OneDimensional { .. } => 1,
        GL2Rep::SteinbergTwist { .. } => 2,
        GL2Rep::Supercuspidal(_) => 3,
    }
}

fn split_row(pi1: &GL2Rep, pi2: &GL2Rep) -> Result<Row, InvariantsError> {
    let (pi1, pi2) = if kind_rank(pi1) <= kind_rank(pi2) { (pi1, pi2) } else { (pi2, pi1) };
    let unr = |p: &GL2Rep| p.is_unramified();
    let row = match (kind_rank(pi1), kind_rank(pi2)) {
        (0, 0) => {
            let (t1, t2) = (trace(pi1, 1), trace(pi2, 1));
            match (unr(pi1), unr(pi2)) {
                (true, true) => Row::new(
                    "I-unr-unr",
                    Group::I,
                    0,
                    int(1),
                    q32() * (&t1 + &t2),
                    q2() * (int(1) - RingElt::q_pow(-2) + &t1 * &t2),
                ),
                (true, false) => {
                    let b = ps_char(pi2).expect("ramified principal series");
                    Row::new("I-unr-ram", Group::I, 2 * b.cond, sign(b.val_at_minus_one), q32() * t1, int(0))
                }
                (false, true) => {
                    let a = ps_char(pi1).expect("ramified principal series");
                    Row::new("I-ram-unr", Group::I, 2 * a.cond, sign(a.val_at_minus_one), q32() * t2, int(0))
                }
                (false, false) => {
                    let (a, b) = (ps_char(pi1).expect("ps"), ps_char(pi2).expect("ps"));
                    Row::deep(
                        "I-ram-ram",
                        Group::I,
                        2 * (a.cond + b.cond),
                        sign(a.val_at_minus_one * b.val_at_minus_one),
                    )
                }
            }
        }
        (0, 2) => {
            let b = st_char(pi2).expect("Steinberg");
            let t = trace(pi1, 1);
            match (unr(pi1), b.is_unramified()) {
                (true, true) => {
                    let bv = &b.val_at_unif;
                    let mu = match satake_pair(pi1) {
                        Some((x, y)) => q32() * (x * bv + y * &bv.inverse()?),
                        None => q32() * bv * &t,
                    };
                    Row::new(
                        "IIa-unr-unr",
                        Group::IIa,
                        1,
                        -bv,
                        q32() * &t + (q() + int(1)) * bv,
                        mu,
                    )
                }
                (true, false) => Row::new(
                    "IIa-unr-ram",
                    Group::IIa,
                    2 * b.cond,
                    sign(b.val_at_minus_one),
                    q32() * t,
                    int(0),
                ),
                (false, true) => {
                    let a = ps_char(pi1).expect("ps");
                    Row::new(
                        "IIa-ram-unr",
                        Group::IIa,
                        2 * a.cond + 1,
                        -(sign(a.val_at_minus_one) * &b.val_at_unif),
                        q() * &b.val_at_unif,
                        -q2(),
                    )
                }
                (false, false) => {
                    let a = ps_char(pi1).expect("ps");
                    Row::deep(
                        "IIa-ram-ram",
                        Group::IIa,
                        2 * (a.cond + b.cond),
                        sign(a.val_at_minus_one * b.val_at_minus_one),
                    )
                }
            }
        }
        (0, 3) => {
            let GL2Rep::Supercuspidal(s) = pi2 else { unreachable!() };
            if unr(pi1) {
                Row::new("X-unr", Group::X, s.cond, sign(s.eps_half), q32() * trace(pi1, 1), int(0))
            } else {
                let a = ps_char(pi1).expect("ps");
                Row::deep("X-ram", Group::X, s.cond + 2 * a.cond, sign(a.val_at_minus_one * s.eps_half))
            }
        }
        (2, 2) => {
            let (a, b) = (st_char(pi1).expect("St"), st_char(pi2).expect("St"));
            if a.equals(b, &Relations::new())? {
                if a.is_unramified() {
                    Row::new(
                        "VIa-unr",
                        Group::VIa,
                        2,
                        int(1),
                        int(2) * q() * &a.val_at_unif,
                        -q2() + q(),
                    )
                } else {
                    Row::deep("VIa-ram", Group::VIa, 4 * a.cond, int(1))
                }
            } else {
                match (a.is_unramified(), b.is_unramified()) {
                    (true, true) => Row::new("Va-unr-unr", Group::Va, 2, int(-1), int(0), -q2() - q()),
                    (true, false) => Row::new(
                        "Va-unr-ram",
                        Group::Va,
                        2 * b.cond + 1,
                        -(&a.val_at_unif * sign(b.val_at_minus_one)),
                        &a.val_at_unif * q(),
                        -q2(),
                    ),
                    // The eigenvalue is attached to the unramified twist `beta`.
                    (false, true) => Row::new(
                        "Va-ram-unr",
                        Group::Va,
                        2 * a.cond + 1,
                        -(sign(a.val_at_minus_one) * &b.val_at_unif),
                        &b.val_at_unif * q(),
                        -q2(),
                    ),
                    (false, false) => Row::deep(
                        "Va-ram-ram",
                        Group::Va,
                        2 * a.cond + 2 * b.cond,
                        sign(a.val_at_minus_one * b.val_at_minus_one),
                    ),
                }
            }
        }
        (2, 3) => {
            let a = st_char(pi1).expect("St");
            let GL2Rep::Supercuspidal(s) = pi2 else { unreachable!() };
            if a.is_unramified() {
                Row::new(
                    "XIa-unr",
                    Group::XIa,
                    s.cond + 1,
                    -(&a.val_at_unif * sign(s.eps_half)),
                    q() * &a.val_at_unif,
                    -q2(),
                )
            } else {
                Row::deep("XIa-ram", Group::XIa, s.cond + 2 * a.cond, sign(a.val_at_minus_one * s.eps_half))
            }
        }
        (3, 3) => {
            let (GL2Rep::Supercuspidal(s1), GL2Rep::Supercuspidal(s2)) = (pi1, pi2) else {
                unreachable!()
            };
            if s1.name == s2.name {
                Row::deep("VIIIa", Group::VIIIa, 2 * s1.cond, int(1))
            } else {
                Row::deep("XIIa*", Group::XIIaStar, s1.cond + s2.cond, sign(s1.eps_half * s2.eps_half))
            }
        }
        _ => {
            return Err(InvariantsError::NoRowMatched(format!(
                "split pair ({}, {})",
                pi1.kind(),
                pi2.kind()
            )))
        }
    };
    Ok(row)
}

fn galois_invariant(c: &Char) -> Result<bool, InvariantsError> {
    match &c.galois {
        Some(g) => Ok(g.sigma_invariant),
        None if c.is_unramified() => Ok(true),
        None => Err(InvariantsError::NoRowMatched(format!(
            "Galois data missing for {}",
            c.name
        ))),
    }
}

fn descent(c: &Char) -> Option<&crate::localdata::Descent> {
    c.galois.as_ref().and_then(|g| g.descends.as_ref())
}

fn non_split_row(ext: &LocalExtension, pi0: &GL2Rep) -> Result<Row, InvariantsError> {
    let (d, f) = (ext.d, ext.f);
    let w = sign(ext.omega_minus_one);
    let row = match pi0 {
        GL2Rep::PrincipalSeries { .. } | GL2Rep::UnramifiedHecke { .. } => {
            let alpha = ps_char(pi0);
            let invariant = match alpha {
                Some(a) => galois_invariant(a)?,
                None => true,
            };
            if !invariant {
                let a = alpha.expect("non-invariant principal series has explicit characters");
                let restr = a
                    .galois
                    .as_ref()
                    .and_then(|g| g.restriction.as_deref())
                    .ok_or_else(|| {
                        InvariantsError::NoRowMatched(format!("restriction of {} to F^× missing", a.name))
                    })?;
                let omega = ext.omega();
                let is_omega =
                    restr.equals(&omega, &Relations::new())? && restr.val_at_minus_one == omega.val_at_minus_one;
                let n = 2 * d + 2 * f * a.cond;
                if is_omega {
                    Row::deep("VIIIa-ps", Group::VIIIa, n, int(1))
                } else {
                    Row::deep("VII-ps", Group::VII, n, &w * sign(a.val_at_minus_one))
                }
            } else if pi0.is_unramified() {
                if ext.is_ramified() {
                    let t = match alpha.and_then(descent) {
                        Some(h) => &h.val_at_unif + &h.val_at_unif.inverse()?,
                        None => trace(pi0, f),
                    };
                    Row::new("I-ns-unr-ram", Group::I, 2 * d, w, q32() * t, int(0))
                } else {
                    let t = trace(pi0, f);
                    Row::new("I-ns-unr-inert", Group::I, 0, int(1), int(0), -(q2() * t) - q2() - int(1))
                }
            } else {
                let a = alpha.expect("ramified principal series has explicit characters");
                Row::deep("I-ns-ram", Group::I, 2 * d + 2 * f * a.cond, w)
            }
        }
        GL2Rep::OneDimensional { .. } => {
            return Err(InvariantsError::NonTemperedInput("pi0 is one-dimensional".into()))
        }
        GL2Rep::SteinbergTwist { alpha: a } => {
            if !galois_invariant(a)? {
                Row::deep("IXa", Group::IXa, 2 * d + 2 * f * a.cond, &w * sign(a.val_at_minus_one))
            } else {
                let h = descent(a).ok_or_else(|| {
                    InvariantsError::NoRowMatched(format!("descent data missing for {}", a.name))
                })?;
                match h.square_is {
                    SquareClass::Trivial => {
                        if !a.is_unramified() {
                            Row::deep("Va-ns-ram", Group::Va, 2 * d + 2 * f * a.cond, w)
                        } else if ext.is_ramified() {
                            let v = &a.val_at_unif;
                            Row::new("Va-ns-unr-ram", Group::Va, 2 * d + 1, -(v * &w), v * q(), -q2())
                        } else {
                            Row::new("Va-ns-unr-inert", Group::Va, 2, int(-1), int(0), -q2() - q())
                        }
                    }
                    SquareClass::OmegaEF => {
                        if a.is_unramified() {
                            let v = &h.val_at_unif;
                            Row::new("IIIa-unr", Group::IIIa, 2, int(1), q() * (v + &v.inverse()?), -q2() + q())
                        } else {
                            let n = 2 * d + 2 * f * a.cond;
                            if let Some(c) = h.cond {
                                if n != 4 * c {
                                    return Err(InvariantsError::InconsistentDescent(format!(
                                        "2d + 2f a(α) = {n} but 4 a(α̂) = {}",
                                        4 * c
                                    )));
                                }
                            }
                            Row::deep("IIIa-ram", Group::IIIa, n, int(1))
                        }
                    }
                    SquareClass::Other => {
                        return Err(InvariantsError::NoRowMatched(format!(
                            "α̂^2 is neither 1 nor ω_{{E/F}} for {}",
                            a.name
                        )))
                    }
                }
            }
        }
        GL2Rep::Supercuspidal(s) => {
            let n = 2 * d + f * s.cond;
            match s.galois_invariant {
                None => {
                    return Err(InvariantsError::NoRowMatched(format!(
                        "Galois-invariance flag missing for {}",
                        s.name
                    )))
                }
                Some(false) => Row::deep("XIII*", Group::XIIIStar, n, sign(s.eps_half) * &w),
                Some(true) => {
                    let bc = s.base_change.as_ref().ok_or_else(|| {
                        InvariantsError::NoRowMatched(format!("base-change data missing for {}", s.name))
                    })?;
                    match bc.central_char_of_descent {
                        SquareClass::Trivial => Row::deep("XIIa*-ns", Group::XIIaStar, n, sign(s.eps_half) * &w),
                        SquareClass::OmegaEF => {
                            if let Some(c) = bc.descended_cond {
                                if n != 2 * c {
                                    return Err(InvariantsError::InconsistentDescent(format!(
                                        "2d + f a(π_0) = {n} but 2 a(π̂_0) = {}",
                                        2 * c
                                    )));
                                }
                            }
                            Row::deep("VII-sc", Group::VII, n, w)
                        }
                        SquareClass::Other => {
                            return Err(InvariantsError::NoRowMatched(format!(
                                "central character of the descent of {} is neither 1 nor ω_{{E/F}}",
                                s.name
                            )))
                        }
                    }
                }
            }
        }
    };
    Ok(row)
}

/// Looks up `(N, epsilon, lambda, mu)` of the generic member. `q` is the
/// residue cardinality of `F`, carried as `r^2`.
pub fn paramodular_invariants(data: &InducingData) -> Result<ParamodularInvariants, InvariantsError> {
    validate(data).map_err(InvariantsError::Invalid)?;
    let row = match data {
        InducingData::Split { pi1, pi2 } => {
            check_tempered(pi1, "pi1")?;
            check_tempered(pi2, "pi2")?;
            split_row(pi1, pi2)?
        }
        InducingData::NonSplit { ext, pi0, .. } => {
            check_tempered(pi0, "pi0")?;
            non_split_row(ext, pi0)?
        }
    };
    Ok(ParamodularInvariants {
        n_pi: row.n,
        eps_pi: row.eps,
        lambda_pi: row.lambda,
        mu_pi: row.mu,
        row_id: row.id.to_string(),
        group: row.group,
    })
}

/// `a(pi_1) + a(pi_2)` or `2d(E/F) + f(E/F) a(pi_0)`.
pub fn conductor_formula(data: &InducingData) -> u32 {
    match data {
        InducingData::Split { pi1, pi2 } => conductor(pi1) + conductor(pi2),
        InducingData::NonSplit { ext, pi0, .. } => 2 * ext.d + ext.f * conductor(pi0),
    }
}

/// `eps(1/2, pi_1) eps(1/2, pi_2)` or `eps(1/2, pi_0) omega_{E/F}(-1)`.
pub fn epsilon_formula(data: &InducingData) -> Result<RingElt, InvariantsError> {
    let al = |rep: &GL2Rep| {
        atkin_lehner_epsilon(rep)
            .ok_or_else(|| InvariantsError::NonTemperedInput(format!("{} has no newform", rep.kind())))
    };
    Ok(match data {
        InducingData::Split { pi1, pi2 } => al(pi1)? * al(pi2)?,
        InducingData::NonSplit { ext, pi0, .. } => al(pi0)? * sign(ext.omega_minus_one),
    })
}

/// `L(s, N, eps, lambda, mu)^{-1}` as a polynomial in `u = q^{-s}`.
pub fn paramodular_euler_factor(
    n: u32,
    eps: &RingElt,
    lambda: &RingElt,
    mu: &RingElt,
    q_spec: QSpec,
) -> EulerFactor {
    let r = RingElt::q_half_pow;
    let one = RingElt::one();
    let coeffs = match n {
        0 => vec![
            one.clone(),
            -(r(-3) * lambda),
            r(-4) * mu + one.clone() + r(-4),
            -(r(-3) * lambda),
            one,
        ],
        1 => vec![one.clone(), -(r(-3) * (lambda + eps)), r(-4) * mu + one, eps * r(-1)],
        _ => vec![one.clone(), -(r(-3) * lambda), r(-4) * mu + one],
    };
    EulerFactor::new(coeffs, q_spec).expect("constant term 1, degree at most 4")
}

/// `L(s, phi)^{-1}`: the product of the GL(2) factors in the split case, the
/// factor of `pi_0` in `u_E = u^f` otherwise.
pub fn parameter_euler_factor(data: &InducingData, q_spec: QSpec) -> Result<EulerFactor, InvariantsError> {
    Ok(match data {
        InducingData::Split { pi1, pi2 } => {
            let a = gl2_euler_factor(pi1, BaseField::F, q_spec)?;
            let b = gl2_euler_factor(pi2, BaseField::F, q_spec)?;
            a.mul(&b).map_err(LocalError::from)?
        }
        InducingData::NonSplit { ext, pi0, .. } => gl2_euler_factor(pi0, ext.base(), q_spec)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LEquality {
    Ok,
    Fail {
        lhs: EulerFactor,
        rhs: EulerFactor,
        /// Coefficients of `lhs - rhs`.
        witness: Vec<RingElt>,
    },
}

impl LEquality {
    pub fn is_ok(&self) -> bool {
        matches!(self, LEquality::Ok)
    }

    pub fn witness_text(&self) -> Option<String> {
        match self {
            LEquality::Ok => None,
            LEquality::Fail { witness, .. } => Some(render_poly(witness)),
        }
    }
}

/// Compares the factor built from the table row with the factor of the
/// parameter, coefficient by coefficient after applying `rel`.
pub fn verify_l_equality(data: &InducingData, rel: &Relations) -> Result<LEquality, InvariantsError> {
    let inv = paramodular_invariants(data)?;
    let lhs = paramodular_euler_factor(inv.n_pi, &inv.eps_pi, &inv.lambda_pi, &inv.mu_pi, QSpec::Symbolic);
    let rhs = parameter_euler_factor(data, QSpec::Symbolic)?;
    Ok(compare_factors(lhs, rhs, rel))
}

pub fn compare_factors(lhs: EulerFactor, rhs: EulerFactor, rel: &Relations) -> LEquality {
    let (l, r) = match (lhs.reduce(rel), rhs.reduce(rel)) {
        (Ok(l), Ok(r)) => (l, r),
        _ => (lhs.clone(), rhs.clone()),
    };
    match l.equals(&r) {
        Ok(()) => LEquality::Ok,
        Err(witness) => LEquality::Fail { lhs, rhs, witness },
    }
}

/// Outcome of one sample of the row suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowReport {
    pub row_id: String,
    pub sample: String,
    pub expected_row: String,
    pub l_equality: bool,
    pub conductor_ok: bool,
    pub epsilon_ok: bool,
    pub packet_ok: bool,
    pub message: Option<String>,
}

impl RowReport {
    pub fn ok(&self) -> bool {
        self.row_id == self.expected_row && self.l_equality && self.conductor_ok && self.epsilon_ok && self.packet_ok
    }
}

/// Runs every check on one sample: row lookup, L-equality, both composition
/// formulas, and agreement with the generic member of the L-packet.
pub fn check_sample(s: &suite::RowSample) -> RowReport {
    let mut rep = RowReport {
        row_id: String::new(),
        sample: s.label.clone(),
        expected_row: s.row_id.to_string(),
        l_equality: false,
        conductor_ok: false,
        epsilon_ok: false,
        packet_ok: false,
        message: None,
    };
    let inv = match paramodular_invariants(&s.data) {
        Ok(i) => i,
        Err(e) => {
            rep.message = Some(e.to_string());
            return rep;
        }
    };
    rep.row_id = inv.row_id.clone();
    match verify_l_equality(&s.data, &s.relations) {
        Ok(LEquality::Ok) => rep.l_equality = true,
        Ok(f) => rep.message = f.witness_text().map(|w| format!("witness {w}")),
        Err(e) => rep.message = Some(e.to_string()),
    }
    rep.conductor_ok = conductor_formula(&s.data) == inv.n_pi;
    rep.epsilon_ok = match epsilon_formula(&s.data) {
        Ok(e) => s.relations.apply(&(e - &inv.eps_pi)).is_zero(),
        Err(_) => false,
    };
    rep.packet_ok = match crate::packets::classify_packet(&s.data) {
        Ok(p) => p.generic().map(|c| c.group) == Some(inv.group),
        Err(e) => {
            rep.message.get_or_insert_with(|| e.to_string());
            false
        }
    };
    rep
}

/// Ready-made inducing data covering every row of the table.
pub mod suite {
    use super::*;
    use crate::localdata::{BaseChange, Descent, GaloisData};
    use alloc::boxed::Box;

    #[derive(Debug, Clone)]
    pub struct RowSample {
        pub row_id: &'static str,
        pub label: String,
        pub data: InducingData,
        pub relations: Relations,
    }

    /// Every row id, in table order.
    pub const ROW_IDS: [&str; 34] = [
        "I-unr-unr",
        "I-unr-ram",
        "I-ram-unr",
        "I-ram-ram",
        "IIa-unr-unr",
        "IIa-unr-ram",
        "IIa-ram-unr",
        "IIa-ram-ram",
        "X-unr",
        "X-ram",
        "Va-unr-unr",
        "Va-unr-ram",
        "Va-ram-unr",
        "Va-ram-ram",
        "VIa-unr",
        "VIa-ram",
        "XIa-unr",
        "XIa-ram",
        "VIIIa",
        "XIIa*",
        "VII-ps",
        "VIIIa-ps",
        "I-ns-unr-inert",
        "I-ns-unr-ram",
        "I-ns-ram",
        "IXa",
        "Va-ns-unr-inert",
        "Va-ns-unr-ram",
        "Va-ns-ram",
        "IIIa-unr",
        "IIIa-ram",
        "XIII*",
        "XIIa*-ns",
        "VII-sc",
    ];

    const SIGNS: [i8; 2] = [1, -1];

    pub fn unr_ps(name: &str) -> GL2Rep {
        GL2Rep::principal_series(Char::unramified_symbol(name)).expect("monomial value")
    }

    pub fn hecke(name: &str) -> GL2Rep {
        GL2Rep::UnramifiedHecke {
            lambda: RingElt::var(name),
        }
    }

    pub fn ram_char(name: &str, cond: u32, sign: i8) -> Char {
        Char::ramified(name, cond, RingElt::var(&format!("{name}_ϖ")), sign)
    }

    pub fn ram_ps(name: &str, cond: u32, sign: i8) -> GL2Rep {
        GL2Rep::principal_series(ram_char(name, cond, sign)).expect("monomial value")
    }

    pub fn st_unr(name: &str, val: RingElt) -> GL2Rep {
        GL2Rep::steinberg(Char::unramified(name, val).as_quadratic())
    }

    pub fn st_ram(name: &str, cond: u32, sign: i8, val: i64) -> GL2Rep {
        GL2Rep::steinberg(Char::ramified(name, cond, RingElt::from_int(val), sign).as_quadratic())
    }

    pub fn sc(name: &str, cond: u32, eps: i8) -> GL2Rep {
        GL2Rep::Supercuspidal(Supercuspidal::new(name, cond, eps))
    }

    fn extensions() -> Vec<LocalExtension> {
        vec![
            LocalExtension::inert(),
            LocalExtension::ramified(1, 1),
            LocalExtension::ramified(1, -1),
            LocalExtension::ramified(2, -1),
            LocalExtension::ramified(3, 1),
        ]
    }

    fn ext_label(e: &LocalExtension) -> String {
        if e.is_ramified() {
            format!("ramified d={} ω(-1)={}", e.d, e.omega_minus_one)
        } else {
            "inert".to_string()
        }
    }

    fn galois(invariant: bool, restriction: Option<Char>, descends: Option<Descent>) -> GaloisData {
        GaloisData {
            sigma_invariant: invariant,
            restriction: restriction.map(Box::new),
            descends,
        }
    }

    struct Builder {
        out: Vec<RowSample>,
    }

    impl Builder {
        fn add(&mut self, row_id: &'static str, label: String, data: InducingData, relations: Relations) {
            self.out.push(RowSample {
                row_id,
                label,
                data,
                relations,
            });
        }

        fn split(&mut self, row_id: &'static str, label: String, pi1: GL2Rep, pi2: GL2Rep) {
            self.add(row_id, label, InducingData::split(pi1, pi2), Relations::new());
        }

        fn ns(&mut self, row_id: &'static str, label: String, ext: LocalExtension, pi0: GL2Rep, rel: Relations) {
            self.add(row_id, label, InducingData::non_split(ext, pi0), rel);
        }
    }

    /// Samples for every row: free Laurent symbols for Satake parameters,
    /// `+-1` for quadratic values, `+-i` where a fourth root of unity is
    /// needed, and both signs for every value at `-1`.
    pub fn row_suite() -> Vec<RowSample> {
        let mut b = Builder { out: Vec::new() };
        let pm = |v: i8| RingElt::from_int(v.into());

        // Split family.
        b.split("I-unr-unr", "symbolic α, α'".into(), unr_ps("α"), unr_ps("α'"));
        b.split("I-unr-unr", "Hecke λ1, λ2".into(), hecke("λ1"), hecke("λ2"));
        b.split("I-unr-unr", "symbolic α, Hecke λ".into(), unr_ps("α"), hecke("λ"));
        for s in SIGNS {
            for c in [1, 2] {
                let tag = format!("a={c} sign={s}");
                b.split("I-unr-ram", tag.clone(), unr_ps("α"), ram_ps("α'", c, s));
                b.split("I-ram-unr", tag.clone(), ram_ps("α", c, s), unr_ps("α'"));
                b.split("I-ram-ram", tag.clone(), ram_ps("α", c, s), ram_ps("α'", c + 1, -1));
                b.split("IIa-unr-ram", tag.clone(), unr_ps("α"), st_ram("α'", c, s, 1));
                b.split("IIa-ram-ram", tag.clone(), ram_ps("α", c, s), st_ram("α'", 1, -1, -1));
                b.split("X-ram", tag.clone(), ram_ps("α", c, s), sc("π_2", 2 + c, -s));
                b.split("Va-ram-ram", tag.clone(), st_ram("α", c, s, 1), st_ram("β", 1, 1, -1));
                b.split("VIa-ram", tag.clone(), st_ram("α", c, s, -1), st_ram("α", c, s, -1));
                b.split("XIa-ram", tag.clone(), st_ram("α", c, s, 1), sc("π_2", 3, s));
            }
            let v = pm(s);
            b.split("IIa-unr-unr", format!("α'={s}"), unr_ps("α"), st_unr("α'", v.clone()));
            b.split("IIa-unr-unr", format!("Hecke, α'={s}"), hecke("λ"), st_unr("α'", v.clone()));
            for sa in SIGNS {
                b.split(
                    "IIa-ram-unr",
                    format!("α(-1)={sa} α'={s}"),
                    ram_ps("α", 1, sa),
                    st_unr("α'", v.clone()),
                );
                b.split(
                    "Va-unr-ram",
                    format!("α={s} β(-1)={sa}"),
                    st_unr("α", v.clone()),
                    st_ram("β", 2, sa, 1),
                );
                b.split(
                    "Va-ram-unr",
                    format!("α(-1)={sa} β={s}"),
                    st_ram("α", 2, sa, 1),
                    st_unr("β", v.clone()),
                );
                b.split(
                    "XIa-unr",
                    format!("α={s} ε(π_2)={sa}"),
                    st_unr("α", v.clone()),
                    sc("π_2", 2, sa),
                );
                let a = if s == 1 { 3 } else { 2 };
                b.split("X-unr", format!("ε(π_2)={sa} a={a}"), unr_ps("α"), sc("π_2", a, sa));
                b.split(
                    "XIIa*",
                    format!("ε={s},{sa}"),
                    sc("π_1", 2, s),
                    sc("π_2", 3, sa),
                );
            }
            b.split("Va-unr-unr", format!("α={s}"), st_unr("α", v.clone()), st_unr("β", -v.clone()));
            b.split("VIa-unr", format!("α={s}"), st_unr("α", v.clone()), st_unr("α", v.clone()));
            b.split("VIIIa", format!("ε={s}"), sc("π_1", 3, s), sc("π_1", 3, s));
        }
        // Quadratic twist left symbolic, reduced with e^2 = 1.
        b.add(
            "IIa-unr-unr",
            "α' = e with e^2 = 1".into(),
            InducingData::split(unr_ps("α"), st_unr("α'", RingElt::var("e"))),
            Relations::new().with_square("e", crate::exactalg::Rational::from_integer(1.into())),
        );

        // Non-split family.
        for ext in extensions() {
            let el = ext_label(&ext);
            let w = ext.omega();
            for c in [1, 2] {
                for s in SIGNS {
                    let chi = ram_char("χ", c, s);
                    let alpha = ram_char("α", c, s).with_galois(galois(false, Some(chi), None));
                    b.ns(
                        "VII-ps",
                        format!("{el} a(α)={c} α(-1)={s}"),
                        ext,
                        GL2Rep::principal_series(alpha).expect("monomial"),
                        Relations::new(),
                    );
                }
                let alpha = ram_char("α", c, ext.omega_minus_one).with_galois(galois(false, Some(w.clone()), None));
                b.ns(
                    "VIIIa-ps",
                    format!("{el} a(α)={c}"),
                    ext,
                    GL2Rep::principal_series(alpha).expect("monomial"),
                    Relations::new(),
                );
                let hat = Descent {
                    val_at_unif: RingElt::var("h"),
                    cond: None,
                    square_is: SquareClass::Other,
                };
                let alpha = ram_char("α", c, 1).with_galois(galois(true, None, Some(hat)));
                b.ns(
                    "I-ns-ram",
                    format!("{el} a(α)={c}"),
                    ext,
                    GL2Rep::principal_series(alpha).expect("monomial"),
                    Relations::new(),
                );
                for s in SIGNS {
                    let chi = ram_char("χ", c, s).as_quadratic();
                    let alpha = Char::ramified("α", c, RingElt::one(), s)
                        .as_quadratic()
                        .with_galois(galois(false, Some(chi), None));
                    b.ns("IXa", format!("{el} a(α)={c} α(-1)={s}"), ext, GL2Rep::steinberg(alpha), Relations::new());
                }
                let triv = Descent {
                    val_at_unif: RingElt::one(),
                    cond: None,
                    square_is: SquareClass::Trivial,
                };
                let alpha = Char::ramified("α", c, RingElt::one(), 1)
                    .as_quadratic()
                    .with_galois(galois(true, None, Some(triv)));
                b.ns("Va-ns-ram", format!("{el} a(α)={c}"), ext, GL2Rep::steinberg(alpha), Relations::new());
                for s in SIGNS {
                    let mut p0 = Supercuspidal::new("π_0", c + 1, s);
                    p0.galois_invariant = Some(false);
                    b.ns("XIII*", format!("{el} a={} ε={s}", c + 1), ext, GL2Rep::Supercuspidal(p0.clone()), Relations::new());
                    p0.galois_invariant = Some(true);
                    p0.base_change = Some(BaseChange {
                        central_char_of_descent: SquareClass::Trivial,
                        descended_cond: None,
                    });
                    b.ns("XIIa*-ns", format!("{el} a={} ε={s}", c + 1), ext, GL2Rep::Supercuspidal(p0), Relations::new());
                }
                let n = 2 * ext.d + ext.f * (c + 1);
                if n % 2 == 0 {
                    let mut p0 = Supercuspidal::new("π_0", c + 1, 1);
                    p0.galois_invariant = Some(true);
                    p0.base_change = Some(BaseChange {
                        central_char_of_descent: SquareClass::OmegaEF,
                        descended_cond: Some(n / 2),
                    });
                    b.ns("VII-sc", format!("{el} a={}", c + 1), ext, GL2Rep::Supercuspidal(p0), Relations::new());
                }
            }
            if ext.is_ramified() {
                b.ns("I-ns-unr-ram", format!("{el} symbolic α"), ext, unr_ps("α"), Relations::new());
                b.ns("I-ns-unr-ram", format!("{el} Hecke λ"), ext, hecke("λ"), Relations::new());
                let hat = Descent {
                    val_at_unif: RingElt::var("h"),
                    cond: None,
                    square_is: SquareClass::Other,
                };
                let alpha = Char::unramified("α", RingElt::var("h")).with_galois(galois(true, None, Some(hat)));
                b.ns(
                    "I-ns-unr-ram",
                    format!("{el} descended α̂ = h"),
                    ext,
                    GL2Rep::principal_series(alpha).expect("monomial"),
                    Relations::new(),
                );
                for s in SIGNS {
                    let hat = Descent {
                        val_at_unif: pm(s),
                        cond: None,
                        square_is: SquareClass::Trivial,
                    };
                    let alpha = Char::unramified("α", pm(s))
                        .as_quadratic()
                        .with_galois(galois(true, None, Some(hat)));
                    b.ns("Va-ns-unr-ram", format!("{el} α̂={s}"), ext, GL2Rep::steinberg(alpha), Relations::new());
                }
            } else {
                b.ns("I-ns-unr-inert", "symbolic α".into(), ext, unr_ps("α"), Relations::new());
                b.ns("I-ns-unr-inert", "Hecke λ".into(), ext, hecke("λ"), Relations::new());
                for s in SIGNS {
                    let hat = Descent {
                        val_at_unif: pm(s),
                        cond: None,
                        square_is: SquareClass::Trivial,
                    };
                    let alpha = Char::unramified("α", RingElt::one())
                        .as_quadratic()
                        .with_galois(galois(true, None, Some(hat)));
                    b.ns("Va-ns-unr-inert", format!("α̂={s}"), ext, GL2Rep::steinberg(alpha), Relations::new());
                    let i = RingElt::var(crate::exactalg::IMAG_UNIT);
                    let hat = Descent {
                        val_at_unif: pm(s) * i,
                        cond: None,
                        square_is: SquareClass::OmegaEF,
                    };
                    let alpha = Char::unramified("α", RingElt::from_int(-1))
                        .as_quadratic()
                        .with_galois(galois(true, None, Some(hat)));
                    b.ns(
                        "IIIa-unr",
                        format!("α̂={s}i"),
                        ext,
                        GL2Rep::steinberg(alpha),
                        Relations::new().with_imaginary_unit(),
                    );
                }
            }
            // 2d + 2f a(α) = 4 a(α̂) needs d + f a(α) even.
            for c in [1u32, 2, 3] {
                if (ext.d + ext.f * c) % 2 == 0 && ext.omega_minus_one == 1 {
                    let hat = Descent {
                        val_at_unif: RingElt::var("h"),
                        cond: Some((ext.d + ext.f * c) / 2),
                        square_is: SquareClass::OmegaEF,
                    };
                    let alpha = Char::ramified("α", c, RingElt::one(), 1)
                        .as_quadratic()
                        .with_galois(galois(true, None, Some(hat)));
                    b.ns("IIIa-ram", format!("{el} a(α)={c}"), ext, GL2Rep::steinberg(alpha), Relations::new());
                }
            }
        }
        b.out
    }
}
