//! From a Hilbert modular form over a real quadratic field to the invariants
//! of the attached Siegel paramodular newform: weight, level, Hecke
//! eigenvalues, Atkin–Lehner signs, Euler factors and the functional
//! equation.
//!
//! Per-prime values are read from the row table through local inducing
//! data. The closed-form eigenvalue expressions in terms of the GL(2)
//! eigenvalues `lambda_w` are recomputed separately and compared.
//!
//! Convention for `lambda_w`: the newform eigenvalue `lambda_tau` of
//! [`hecke_eigenvalue`]. For an unramified Steinberg twist this is
//! `alpha(varpi_E) = +-1`, and 0 for every other ramified representation.
//!
//! At a split prime the case `val_p(N) = 1` puts the weight `p` on the
//! unramified place and `p + 1` on the Steinberg place. With `val_p(N) >= 2`
//! and both places ramified, `mu_p = -p^2 + p lambda_{w1} lambda_{w2}`;
//! the second term vanishes unless both places carry unramified Steinberg
//! twists.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::exactalg::{EulerFactor, QSpec, Rational, Relations, RingElt};
use crate::invariants::{epsilon_formula, paramodular_euler_factor, paramodular_invariants, InvariantsError};
use crate::localdata::{hecke_eigenvalue, BaseField, GL2Rep, InducingData, LocalExtension};
use crate::quadfield::{
    omega_minus_one, paramodular_level, splitting_type, FactoredLevel, PlaceData, PlaceId, QuadError, QuadField,
    SplitType,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransferError {
    #[error("missing local data at {p}: {msg}")]
    MissingLocalData { p: u64, msg: String },
    #[error("the input is flagged Galois-invariant; the construction needs a non-invariant form")]
    GaloisInvariantInput,
    #[error("inconsistent local data at {p}: {msg}")]
    InconsistentLocalData { p: u64, msg: String },
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("at {p}: {source}")]
    Invariants { p: u64, source: InvariantsError },
    #[error("numerical instability: {0}")]
    NumericalInstability(String),
}

/// Data at one place `w` of `E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaceInput {
    /// `val_w(N_0)`.
    pub val_level: u32,
    /// The local component; `None` means unknown. An unknown component
    /// with `val_level = 0` defaults to an unramified one with symbolic
    /// eigenvalue.
    pub rep: Option<GL2Rep>,
}

impl PlaceInput {
    pub fn unramified(lambda: RingElt) -> Self {
        PlaceInput {
            val_level: 0,
            rep: Some(GL2Rep::UnramifiedHecke { lambda }),
        }
    }

    pub fn unknown(val_level: u32) -> Self {
        PlaceInput { val_level, rep: None }
    }

    pub fn with_rep(rep: GL2Rep) -> Self {
        PlaceInput {
            val_level: crate::localdata::conductor(&rep),
            rep: Some(rep),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertFormInput {
    pub field: QuadField,
    /// Infinity type `(2, 2n + 2)`.
    pub n: u32,
    /// Places above `p`: two for split `p`, one otherwise.
    pub local_data: BTreeMap<u64, Vec<PlaceInput>>,
    pub not_galois_invariant: bool,
}

impl HilbertFormInput {
    pub fn new(field: QuadField, n: u32) -> Self {
        HilbertFormInput {
            field,
            n,
            local_data: BTreeMap::new(),
            not_galois_invariant: true,
        }
    }

    pub fn weight(&self) -> u32 {
        self.n + 2
    }

    pub fn level_vals(&self) -> BTreeMap<PlaceId, u32> {
        let mut out = BTreeMap::new();
        for (p, places) in &self.local_data {
            for (i, w) in places.iter().enumerate() {
                if w.val_level > 0 {
                    out.insert(PlaceId::new(*p, i as u8), w.val_level);
                }
            }
        }
        out
    }

    pub fn level(&self) -> Result<FactoredLevel, TransferError> {
        Ok(paramodular_level(&self.field, &self.level_vals())?)
    }

    /// Places above `p`, filling in defaults for primes without data.
    pub fn places(&self, p: u64) -> Result<(PlaceData, Vec<PlaceInput>), TransferError> {
        let place = splitting_type(&self.field, p)?;
        let n = place.num_places as usize;
        let places = match self.local_data.get(&p) {
            Some(v) if v.len() == n => v.clone(),
            Some(v) => {
                return Err(TransferError::InconsistentLocalData {
                    p,
                    msg: format!("{} place(s) given, {} is {} with {n}", v.len(), p, place.split_type),
                })
            }
            None if n == 2 => (1..=2)
                .map(|i| PlaceInput::unramified(RingElt::var(&default_lambda(p, Some(i)))))
                .collect(),
            None => alloc::vec![PlaceInput::unramified(RingElt::var(&default_lambda(p, None)))],
        };
        Ok((place, places))
    }
}

/// Symbol used for an unknown unramified eigenvalue: `lam7_1`, `lam7_2`
/// at a split prime, `lam7` otherwise.
pub fn default_lambda(p: u64, index: Option<u32>) -> String {
    match index {
        Some(i) => format!("lam{p}_{i}"),
        None => format!("lam{p}"),
    }
}

/// Which part of the closed-form eigenvalue statement applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremBranch {
    /// `val_p(N) = 0`.
    Unramified,
    /// `val_p(N) = 1`.
    OneStep,
    DeepInert,
    DeepRamified,
    DeepSplit,
}

impl TheoremBranch {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremBranch::Unramified => "(a)",
            TheoremBranch::OneStep => "(b)",
            TheoremBranch::DeepInert => "(c) inert",
            TheoremBranch::DeepRamified => "(c) ramified",
            TheoremBranch::DeepSplit => "(c) split",
        }
    }
}

/// Closed-form `(lambda_p, mu_p)` from the `lambda_w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremValues {
    pub branch: TheoremBranch,
    pub lambda: RingElt,
    pub mu: RingElt,
    /// The statement as literally printed, where it differs from the
    /// table-consistent form: weights `p`, `p + 1` attached by level in
    /// `(b)`, and `mu_p = -p^2` in the split part of `(c)`.
    pub literal: Option<(RingElt, RingElt)>,
    pub note: Option<String>,
}

/// Evaluates the closed-form statement at a rational prime `p`.
/// `places` holds `(val_w(N_0), lambda_w)`.
pub fn theorem_values(
    p: u64,
    split_type: SplitType,
    val_p_n: u32,
    places: &[(u32, RingElt)],
) -> Result<TheoremValues, TransferError> {
    let mut out = closed_form(&RingElt::from_int(p as i64), split_type, val_p_n, places).ok_or_else(|| {
        TransferError::InconsistentLocalData {
            p,
            msg: "val_p(N) = 1 needs a split prime".into(),
        }
    })?;
    let rel = Relations::prime(p);
    out.lambda = rel.apply(&out.lambda);
    out.mu = rel.apply(&out.mu);
    Ok(out)
}

/// The closed-form statement with `p` an arbitrary ring element, so that it
/// can be evaluated with `p = r^2` symbolic. `None` when `val_p(N) = 1` at a
/// non-split prime, which the level formula excludes.
pub fn closed_form(
    pp: &RingElt,
    split_type: SplitType,
    val_p_n: u32,
    places: &[(u32, RingElt)],
) -> Option<TheoremValues> {
    let p2 = pp * pp;
    let one = RingElt::one();
    let zero = RingElt::zero;
    let out = match (val_p_n, split_type) {
        (0, SplitType::Split) => {
            let (l1, l2) = (&places[0].1, &places[1].1);
            TheoremValues {
                branch: TheoremBranch::Unramified,
                lambda: pp * &(l1 + l2),
                mu: &(&p2 + &(&(pp * l1) * l2)) - &one,
                literal: None,
                note: None,
            }
        }
        (0, _) => {
            let l = &places[0].1;
            TheoremValues {
                branch: TheoremBranch::Unramified,
                lambda: zero(),
                mu: -(&(&p2 + &(pp * l)) + &one),
                literal: None,
                note: None,
            }
        }
        (1, SplitType::Split) => {
            let (st, unr) = if places[0].0 == 1 { (0, 1) } else { (1, 0) };
            let (ls, lu) = (&places[st].1, &places[unr].1);
            let mu = &(pp * ls) * lu;
            let p1 = pp + &one;
            TheoremValues {
                branch: TheoremBranch::OneStep,
                lambda: &(pp * lu) + &(&p1 * ls),
                mu: mu.clone(),
                literal: Some((&(pp * ls) + &(&p1 * lu), mu)),
                note: Some("weight p on the unramified place, p + 1 on the Steinberg place".into()),
            }
        }
        (1, _) => return None,
        (_, SplitType::Inert) => TheoremValues {
            branch: TheoremBranch::DeepInert,
            lambda: zero(),
            mu: &(-&p2) - &(pp * &places[0].1),
            literal: None,
            note: Some("λ_w = α(ϖ_E) for an unramified Steinberg twist, 0 otherwise".into()),
        },
        (_, SplitType::Ramified) => {
            let (v, l) = (places[0].0, &places[0].1);
            TheoremValues {
                branch: TheoremBranch::DeepRamified,
                lambda: pp * l,
                mu: if v == 0 { zero() } else { -&p2 },
                literal: None,
                note: None,
            }
        }
        (_, SplitType::Split) => {
            let (a, b) = if places[0].0 <= places[1].0 { (0, 1) } else { (1, 0) };
            let (va, la, lb) = (places[a].0, &places[a].1, &places[b].1);
            let lambda = pp * &(la + lb);
            if va == 0 {
                TheoremValues {
                    branch: TheoremBranch::DeepSplit,
                    lambda,
                    mu: zero(),
                    literal: None,
                    note: None,
                }
            } else {
                TheoremValues {
                    branch: TheoremBranch::DeepSplit,
                    lambda: lambda.clone(),
                    mu: &(-&p2) + &(&(pp * la) * lb),
                    literal: Some((lambda, -&p2)),
                    note: Some("μ_p = -p² + pλ_{w1}λ_{w2} when both places are ramified".into()),
                }
            }
        }
    };
    Some(out)
}

/// Closed form against the table for one sample of local inducing data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremCheck {
    pub row_id: String,
    pub label: String,
    pub branch: TheoremBranch,
    pub lambda_agrees: bool,
    pub mu_agrees: bool,
    /// `None` where the literal statement coincides with the closed form.
    pub literal_agrees: Option<bool>,
    /// The sign from the epsilon factors equals the table sign.
    pub epsilon_agrees: bool,
    pub message: Option<String>,
}

impl TheoremCheck {
    pub fn ok(&self) -> bool {
        self.lambda_agrees && self.mu_agrees && self.epsilon_agrees && self.message.is_none()
    }
}

/// `(val_w, lambda_w)` for the GL(2) data underlying `data`.
pub fn local_eigenvalues(data: &InducingData, rel: &Relations) -> (SplitType, Vec<(u32, RingElt)>) {
    let lw = |rep: &GL2Rep, base| (crate::localdata::conductor(rep), rel.apply(&hecke_eigenvalue(rep, base)));
    match data {
        InducingData::Split { pi1, pi2 } => (SplitType::Split, alloc::vec![lw(pi1, BaseField::F), lw(pi2, BaseField::F)]),
        InducingData::NonSplit { ext, pi0, .. } => {
            let t = if ext.is_ramified() { SplitType::Ramified } else { SplitType::Inert };
            (t, alloc::vec![lw(pi0, ext.base())])
        }
    }
}

/// Runs the closed form against the table on one sample, with `p = r^2`.
pub fn check_theorem(sample: &crate::invariants::suite::RowSample) -> TheoremCheck {
    let rel = &sample.relations;
    let mut check = TheoremCheck {
        row_id: sample.row_id.to_string(),
        label: sample.label.clone(),
        branch: TheoremBranch::Unramified,
        lambda_agrees: false,
        mu_agrees: false,
        literal_agrees: None,
        epsilon_agrees: false,
        message: None,
    };
    let inv = match paramodular_invariants(&sample.data) {
        Ok(inv) => inv,
        Err(e) => {
            check.message = Some(e.to_string());
            return check;
        }
    };
    let (t, places) = local_eigenvalues(&sample.data, rel);
    let Some(cf) = closed_form(&RingElt::q_pow(1), t, inv.n_pi, &places) else {
        check.message = Some(format!("level exponent {} at a non-split prime", inv.n_pi));
        return check;
    };
    let same = |a: &RingElt, b: &RingElt| rel.apply(&(a - b)).is_zero();
    check.branch = cf.branch;
    check.lambda_agrees = same(&cf.lambda, &inv.lambda_pi);
    check.mu_agrees = same(&cf.mu, &inv.mu_pi);
    check.literal_agrees = cf
        .literal
        .as_ref()
        .map(|(l, m)| same(l, &inv.lambda_pi) && same(m, &inv.mu_pi));
    check.epsilon_agrees = match epsilon_formula(&sample.data) {
        Ok(eps) => same(&eps, &inv.eps_pi),
        Err(e) => {
            check.message = Some(e.to_string());
            false
        }
    };
    check
}

/// The closed form against the table over every sample of the row suite.
pub fn theorem_suite() -> Vec<TheoremCheck> {
    crate::invariants::suite::row_suite().iter().map(check_theorem).collect()
}

/// Per-prime invariants of the Siegel form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeRecord {
    pub p: u64,
    pub split_type: SplitType,
    pub val_p_n: u32,
    pub row_id: String,
    pub lambda_p: RingElt,
    pub mu_p: RingElt,
    /// Present iff `p | N`.
    pub eps_p: Option<RingElt>,
    /// `L_p(s, pi_0)^{-1}` in `u = p^{-s}`.
    pub euler_factor: EulerFactor,
    /// `p^{k-3} lambda_p`.
    pub lambda_classical: RingElt,
    /// `p^{2(k-3)} mu_p`.
    pub mu_classical: RingElt,
    /// `L_p(s, F)^{-1}` in `x = p^{-s}`.
    pub classical_factor: EulerFactor,
    pub theorem: TheoremValues,
    /// Table and closed form agree.
    pub theorem_agrees: bool,
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeOutcome {
    Resolved(PrimeRecord),
    /// Local components are not known; only the level exponent is.
    Unresolved { p: u64, split_type: SplitType, val_p_n: u32, reason: String },
}

impl PrimeOutcome {
    pub fn p(&self) -> u64 {
        match self {
            PrimeOutcome::Resolved(r) => r.p,
            PrimeOutcome::Unresolved { p, .. } => *p,
        }
    }

    pub fn val_p_n(&self) -> u32 {
        match self {
            PrimeOutcome::Resolved(r) => r.val_p_n,
            PrimeOutcome::Unresolved { val_p_n, .. } => *val_p_n,
        }
    }
}

/// `p^e` as an exact rational element.
pub fn p_pow(p: u64, e: i64) -> RingElt {
    let base = Rational::from_integer((p as i64).into());
    let v = if e >= 0 {
        num_traits::Pow::pow(&base, e as u32)
    } else {
        num_traits::Pow::pow(&base, (-e) as u32).recip()
    };
    RingElt::from_rational(v)
}

/// The local inducing data at `p`.
pub fn local_inducing_data(input: &HilbertFormInput, p: u64) -> Result<InducingData, TransferError> {
    let (place, places) = input.places(p)?;
    let mut reps = Vec::new();
    for (i, w) in places.iter().enumerate() {
        let rep = w.rep.clone().ok_or_else(|| TransferError::MissingLocalData {
            p,
            msg: format!("local component at place {i} with val_w = {} not given", w.val_level),
        })?;
        let a = crate::localdata::conductor(&rep);
        if a != w.val_level {
            return Err(TransferError::InconsistentLocalData {
                p,
                msg: format!("place {i}: val_w = {} but the component has conductor {a}", w.val_level),
            });
        }
        reps.push(rep);
    }
    Ok(match place.split_type {
        SplitType::Split => {
            let pi2 = reps.pop().expect("two places");
            let pi1 = reps.pop().expect("two places");
            InducingData::split(pi1, pi2)
        }
        _ => {
            let w = omega_minus_one(&input.field, p)?;
            let ext = LocalExtension::from_place(&place, w).expect("non-split");
            InducingData::non_split(ext, reps.pop().expect("one place"))
        }
    })
}

/// Eigenvalues and sign at `p`, read from the row table.
pub fn prime_invariants(input: &HilbertFormInput, p: u64) -> Result<PrimeRecord, TransferError> {
    if !input.not_galois_invariant {
        return Err(TransferError::GaloisInvariantInput);
    }
    let (place, places) = input.places(p)?;
    let data = local_inducing_data(input, p)?;
    let inv = paramodular_invariants(&data).map_err(|source| TransferError::Invariants { p, source })?;
    let level = input.level()?;
    let val_p_n = level.valuation(p);
    if inv.n_pi != val_p_n {
        return Err(TransferError::InconsistentLocalData {
            p,
            msg: format!("table level exponent {} but val_p(N) = {val_p_n}", inv.n_pi),
        });
    }
    let rel = Relations::prime(p);
    let lambda_p = rel.apply(&inv.lambda_pi);
    let mu_p = rel.apply(&inv.mu_pi);
    let eps = rel.apply(&inv.eps_pi);
    let eps_check = epsilon_formula(&data).map_err(|source| TransferError::Invariants { p, source })?;
    if !rel.apply(&(&eps_check - &eps)).is_zero() {
        return Err(TransferError::InconsistentLocalData {
            p,
            msg: format!("sign {eps} from the table but {eps_check} from the epsilon factors"),
        });
    }
    let q = QSpec::PrimePower { p, f: 1 };
    let euler_factor = paramodular_euler_factor(inv.n_pi, &eps, &lambda_p, &mu_p, q)
        .reduce(&rel)
        .map_err(|e| TransferError::InconsistentLocalData { p, msg: e.to_string() })?;
    let k = input.weight() as i64;
    let lambda_classical = &p_pow(p, k - 3) * &lambda_p;
    let mu_classical = &p_pow(p, 2 * (k - 3)) * &mu_p;
    let classical_factor = classical_euler_factor(k, val_p_n, &lambda_classical, &mu_classical, &eps, p);
    let base = match place.split_type {
        SplitType::Split => BaseField::F,
        _ => BaseField::E { f: place.f },
    };
    let lw: Vec<(u32, RingElt)> = places
        .iter()
        .map(|w| {
            let rep = w.rep.as_ref().expect("checked above");
            (w.val_level, rel.apply(&hecke_eigenvalue(rep, base)))
        })
        .collect();
    let theorem = theorem_values(p, place.split_type, val_p_n, &lw)?;
    let theorem_agrees =
        rel.apply(&(&theorem.lambda - &lambda_p)).is_zero() && rel.apply(&(&theorem.mu - &mu_p)).is_zero();
    Ok(PrimeRecord {
        p,
        split_type: place.split_type,
        val_p_n,
        row_id: inv.row_id,
        lambda_p,
        mu_p,
        eps_p: (val_p_n > 0).then_some(eps),
        euler_factor,
        lambda_classical,
        mu_classical,
        classical_factor,
        theorem,
        theorem_agrees,
    })
}

/// `L_p(s, F)^{-1}` in `x = p^{-s}` from the classical eigenvalues.
pub fn classical_euler_factor(
    k: i64,
    val_p_n: u32,
    lambda_cl: &RingElt,
    mu_cl: &RingElt,
    eps: &RingElt,
    p: u64,
) -> EulerFactor {
    let pw = |e: i64| p_pow(p, e);
    let one = RingElt::one();
    let pr = RingElt::from_int(p as i64);
    let coeffs = match val_p_n {
        0 => alloc::vec![
            one.clone(),
            -lambda_cl,
            &pr * mu_cl + pw(2 * k - 3) + pw(2 * k - 5),
            -(pw(2 * k - 3) * lambda_cl),
            pw(4 * k - 6),
        ],
        1 => alloc::vec![
            one.clone(),
            -(lambda_cl + &(pw(k - 3) * eps)),
            &pr * mu_cl + pw(2 * k - 3),
            eps * &pw(3 * k - 5),
        ],
        _ => alloc::vec![one.clone(), -lambda_cl, &pr * mu_cl + pw(2 * k - 3)],
    };
    // The constant term is 1 and the degree at most 4 by construction; a
    // vanishing top coefficient only lowers the degree.
    EulerFactor::new(coeffs, QSpec::PrimePower { p, f: 1 }).expect("well-formed classical factor")
}

/// Outcome of a polynomial identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityCheck {
    Ok,
    Fail { witness: Vec<RingElt> },
}

impl IdentityCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, IdentityCheck::Ok)
    }
}

/// `L_p(s + k - 3/2, F) = L(s, N, eps, lambda, mu)`, as polynomials: the
/// classical factor with `x -> p^{3/2-k} u` against the table factor, with
/// `r^2 = p`.
pub fn shift_identity(
    k: i64,
    val_p_n: u32,
    lambda_p: &RingElt,
    mu_p: &RingElt,
    eps: &RingElt,
    p: u64,
) -> IdentityCheck {
    let lambda_cl = p_pow(p, k - 3) * lambda_p;
    let mu_cl = p_pow(p, 2 * (k - 3)) * mu_p;
    shift_identity_classical(k, val_p_n, &lambda_cl, &mu_cl, lambda_p, mu_p, eps, p)
}

/// As [`shift_identity`], with the classical eigenvalues given separately
/// so that a mismatched normalisation can be probed.
#[allow(clippy::too_many_arguments)]
pub fn shift_identity_classical(
    k: i64,
    val_p_n: u32,
    lambda_cl: &RingElt,
    mu_cl: &RingElt,
    lambda_p: &RingElt,
    mu_p: &RingElt,
    eps: &RingElt,
    p: u64,
) -> IdentityCheck {
    let rel = Relations::prime(p);
    let classical = classical_euler_factor(k, val_p_n, lambda_cl, mu_cl, eps, p);
    let shifted = match classical.scale_variable(&RingElt::q_half_pow(3 - 2 * k)) {
        Ok(f) => f,
        Err(_) => return IdentityCheck::Fail { witness: Vec::new() },
    };
    let target = paramodular_euler_factor(val_p_n, eps, lambda_p, mu_p, QSpec::PrimePower { p, f: 1 });
    let n = shifted.coeffs().len().max(target.coeffs().len());
    let witness: Vec<RingElt> = (0..n)
        .map(|i| rel.apply(&(shifted.coeff(i) - target.coeff(i))))
        .collect();
    if witness.iter().all(RingElt::is_zero) {
        IdentityCheck::Ok
    } else {
        IdentityCheck::Fail { witness }
    }
}

/// The shift identity for the record computed at `p`.
pub fn verify_shift_identity(input: &HilbertFormInput, p: u64, k: i64) -> Result<IdentityCheck, TransferError> {
    let rec = prime_invariants(input, p)?;
    let eps = rec.eps_p.clone().unwrap_or_else(RingElt::one);
    Ok(shift_identity(k, rec.val_p_n, &rec.lambda_p, &rec.mu_p, &eps, p))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalInvariants {
    /// `(-1)^k prod eps_p`; unresolved signs enter as symbols `eps_p`.
    pub sign: RingElt,
    pub functional_equation: String,
    pub archimedean: String,
    /// `(-1)^n prod eps_p`.
    pub root_number: RingElt,
    pub epsilon_chain: String,
    /// `(-1)^k = (-1)^n`.
    pub sign_consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiegelFormReport {
    pub k: u32,
    pub level: FactoredLevel,
    pub per_prime: Vec<PrimeOutcome>,
    pub global: GlobalInvariants,
}

impl SiegelFormReport {
    pub fn level_value(&self) -> BigUint {
        self.level.to_biguint()
    }

    pub fn prime(&self, p: u64) -> Option<&PrimeOutcome> {
        self.per_prime.iter().find(|o| o.p() == p)
    }
}

/// Symbol standing for an unresolved Atkin–Lehner sign.
pub fn sign_symbol(p: u64) -> String {
    format!("ε_{p}")
}

fn render_sign(s: &RingElt) -> String {
    match s.as_sign() {
        Some(1) => "+1".into(),
        Some(-1) => "-1".into(),
        _ => format!("({s})"),
    }
}

/// Weight, level, per-prime invariants at `p | N`, at primes with local
/// data and at `extra_primes`, and the functional equation.
pub fn global_report(input: &HilbertFormInput, extra_primes: &[u64]) -> Result<SiegelFormReport, TransferError> {
    if !input.not_galois_invariant {
        return Err(TransferError::GaloisInvariantInput);
    }
    let k = input.weight();
    let level = input.level()?;
    let mut primes: BTreeSet<u64> = level.primes().collect();
    primes.extend(input.local_data.keys().copied());
    primes.extend(extra_primes.iter().copied());
    let mut per_prime = Vec::new();
    let mut eps_prod = RingElt::one();
    for p in primes {
        let outcome = match prime_invariants(input, p) {
            Ok(rec) => PrimeOutcome::Resolved(rec),
            Err(TransferError::MissingLocalData { msg, .. }) => PrimeOutcome::Unresolved {
                p,
                split_type: splitting_type(&input.field, p)?.split_type,
                val_p_n: level.valuation(p),
                reason: msg,
            },
            Err(e) => return Err(e),
        };
        if level.valuation(p) > 0 {
            let e = match &outcome {
                PrimeOutcome::Resolved(r) => r.eps_p.clone().unwrap_or_else(RingElt::one),
                PrimeOutcome::Unresolved { .. } => RingElt::var(&sign_symbol(p)),
            };
            eps_prod = eps_prod * e;
        }
        per_prime.push(outcome);
    }
    let parity = |e: u32| RingElt::from_int(if e.is_multiple_of(2) { 1 } else { -1 });
    let sign = parity(k) * &eps_prod;
    let root_number = parity(input.n) * &eps_prod;
    let nval = level.to_biguint();
    let functional_equation = format!(
        "Λ({}−s,F) = {} · {nval}^{{s−{}}} · Λ(s,F)",
        2 * k - 2,
        render_sign(&sign),
        k - 1
    );
    let archimedean = match k {
        2 => "(2π)^{-2s} Γ(s) Γ(s)".to_string(),
        _ => format!("(2π)^{{-2s}} Γ(s) Γ(s−{})", k - 2),
    };
    let epsilon_chain = format!(
        "ε(s,π_0) = (−1)^{} · {nval}^{{1/2−s}} · ∏ε_p = {} · {nval}^{{1/2−s}}",
        input.n,
        render_sign(&root_number)
    );
    Ok(SiegelFormReport {
        k,
        level,
        per_prime,
        global: GlobalInvariants {
            sign,
            functional_equation,
            archimedean,
            root_number,
            epsilon_chain,
            sign_consistent: sign_parity_check(input.n),
        },
    })
}

/// `(-1)^k = (-1)^n` with `k = n + 2`.
pub fn sign_parity_check(n: u32) -> bool {
    let k = n + 2;
    (k % 2) == (n % 2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArchimedeanOutcome {
    /// The common value of the ratio, `(2π)^{-n}` for the correct shift.
    pub constant: f64,
    /// Largest relative deviation from the ratio at the first sample.
    pub max_rel_dev: f64,
    pub ok: bool,
}

/// Ratio of the Siegel Gamma factor shifted by `k - 3/2` to the Hilbert
/// archimedean factor, checked for constancy in `s`.
pub fn archimedean_check(n: u32, samples: &[f64], tolerance: f64) -> Result<ArchimedeanOutcome, TransferError> {
    archimedean_check_with_weight(n, i64::from(n) + 2, samples, tolerance)
}

/// As [`archimedean_check`] with the weight `k` chosen freely.
pub fn archimedean_check_with_weight(
    n: u32,
    k: i64,
    samples: &[f64],
    tolerance: f64,
) -> Result<ArchimedeanOutcome, TransferError> {
    if samples.len() < 3 {
        return Err(TransferError::NumericalInstability("at least 3 sample points are needed".into()));
    }
    let two_pi_log = libm::log(2.0 * core::f64::consts::PI);
    let n = f64::from(n);
    let k = k as f64;
    let mut logs = Vec::with_capacity(samples.len());
    for &s in samples {
        let t = s + k - 1.5;
        let args = [t, t - k + 2.0, s + 0.5, s + n + 0.5];
        if args.iter().any(|a| *a <= 0.0 || !a.is_finite()) {
            return Err(TransferError::NumericalInstability(format!(
                "Gamma argument out of range at s = {s}"
            )));
        }
        let siegel = -2.0 * t * two_pi_log + libm::lgamma(args[0]) + libm::lgamma(args[1]);
        let hilbert = (-2.0 * s - n - 1.0) * two_pi_log + libm::lgamma(args[2]) + libm::lgamma(args[3]);
        let lr = siegel - hilbert;
        if !lr.is_finite() {
            return Err(TransferError::NumericalInstability(format!("non-finite ratio at s = {s}")));
        }
        logs.push(lr);
    }
    let base = libm::exp(logs[0]);
    let max_rel_dev = logs
        .iter()
        .map(|l| libm::fabs(libm::exp(l - logs[0]) - 1.0))
        .fold(0.0, f64::max);
    Ok(ArchimedeanOutcome {
        constant: base,
        max_rel_dev,
        ok: max_rel_dev <= tolerance,
    })
}
