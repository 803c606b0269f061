//! Local inducing data: characters of `F^x` or `E_w^x`, GL(2) local
//! representations, and the pairs/triples that parameterise the two families
//! of GSp(4) L-parameters.
//!
//! Characters are structural records. A character is the product of its
//! restriction to the units, identified by a [`UnitClass`], and an unramified
//! part recorded as the value at the uniformizer. Two characters agree iff
//! both pieces agree; every table condition reduces to such comparisons.
//!
//! Uniformizer convention: when `E/F` is ramified, the uniformizer of `F` is
//! taken to be the norm of a uniformizer of `E`, so `omega_{E/F}(varpi) = 1`
//! and a descended character satisfies `alpha(varpi_E) = alpha_hat(varpi)`.
//! When `E/F` is inert, `alpha(varpi_E) = alpha_hat(varpi)^2`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::exactalg::{AlgebraError, EulerFactor, QSpec, Relations, RingElt, IMAG_UNIT, SQRT_Q};
use crate::quadfield::{PlaceData, SplitType};

/// Label of the unit restriction of `omega_{E/F}`.
pub const OMEGA_LABEL: &str = "ω_{E/F}";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocalError {
    #[error("cannot decide `{0}` with symbolic data")]
    Undecidable(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Restriction of a character to the unit group, as a formal product of
/// labelled characters. Quadratic labels are reduced modulo 2.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UnitClass {
    factors: BTreeMap<String, (i64, bool)>,
}

impl UnitClass {
    pub fn trivial() -> Self {
        UnitClass::default()
    }

    pub fn label(name: &str, quadratic: bool) -> Self {
        let mut factors = BTreeMap::new();
        factors.insert(name.to_string(), (1, quadratic));
        UnitClass { factors }
    }

    /// Builds a class from `(label, exponent, quadratic)` triples.
    pub fn from_factors<'a>(it: impl IntoIterator<Item = (&'a str, i64, bool)>) -> Self {
        it.into_iter().fold(UnitClass::trivial(), |acc, (name, e, quad)| {
            let mut f = BTreeMap::new();
            f.insert(name.to_string(), (e, quad));
            acc.mul(&UnitClass { factors: f })
        })
    }

    /// `(label, exponent, quadratic)`, sorted by label.
    pub fn factors(&self) -> impl Iterator<Item = (&str, i64, bool)> {
        self.factors.iter().map(|(n, (e, q))| (n.as_str(), *e, *q))
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, other: &UnitClass) -> UnitClass {
        let mut out = self.factors.clone();
        for (name, (e, quad)) in &other.factors {
            let entry = out.entry(name.clone()).or_insert((0, *quad));
            entry.0 += e;
            entry.1 |= *quad;
            if entry.1 {
                entry.0 = entry.0.rem_euclid(2);
            }
        }
        out.retain(|_, (e, _)| *e != 0);
        UnitClass { factors: out }
    }

    pub fn inverse(&self) -> UnitClass {
        let factors = self
            .factors
            .iter()
            .map(|(n, (e, q))| (n.clone(), (if *q { *e } else { -e }, *q)))
            .collect();
        UnitClass { factors }
    }
}

/// How `alpha_hat^2` compares with `eta` (for a descended character) or how
/// the central character of a descended representation compares with `eta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareClass {
    /// Equal to `eta` (the trivial character when `eta = 1`).
    Trivial,
    /// Equal to `eta * omega_{E/F}`.
    OmegaEF,
    /// Neither.
    Other,
}

/// Descent data of a Galois-invariant character `alpha = alpha_hat o N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Descent {
    /// `alpha_hat(varpi)`.
    pub val_at_unif: RingElt,
    /// `a(alpha_hat)`, if known.
    pub cond: Option<u32>,
    pub square_is: SquareClass,
}

/// Galois data for a character of `E_w^x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisData {
    pub sigma_invariant: bool,
    /// The restriction `alpha|_{F^x}` as a character of `F^x`.
    pub restriction: Option<alloc::boxed::Box<Char>>,
    pub descends: Option<Descent>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Char {
    pub name: String,
    /// `a(chi)`.
    pub cond: u32,
    pub val_at_unif: RingElt,
    pub val_at_minus_one: i8,
    pub quadratic: bool,
    pub unitary: bool,
    pub unit_class: UnitClass,
    pub galois: Option<GaloisData>,
}

impl Char {
    pub fn unramified(name: &str, val: RingElt) -> Self {
        Char {
            name: name.to_string(),
            cond: 0,
            val_at_unif: val,
            val_at_minus_one: 1,
            quadratic: false,
            unitary: true,
            unit_class: UnitClass::trivial(),
            galois: None,
        }
    }

    /// Unramified character whose value at the uniformizer is the symbol `name`.
    pub fn unramified_symbol(name: &str) -> Self {
        Char::unramified(name, RingElt::var(name))
    }

    pub fn ramified(name: &str, cond: u32, val: RingElt, sign: i8) -> Self {
        Char {
            name: name.to_string(),
            cond,
            val_at_unif: val,
            val_at_minus_one: sign,
            quadratic: false,
            unitary: true,
            unit_class: UnitClass::label(name, false),
            galois: None,
        }
    }

    pub fn trivial() -> Self {
        Char::unramified("1", RingElt::one())
    }

    /// `nu^{k/2}`: unramified with value `q^{-k/2}`.
    pub fn nu_half(k: i64) -> Self {
        let mut c = Char::unramified(&nu_name(k), RingElt::q_half_pow(-k));
        c.unitary = k == 0;
        c
    }

    pub fn as_quadratic(mut self) -> Self {
        self.quadratic = true;
        self.unit_class = if self.cond == 0 {
            UnitClass::trivial()
        } else {
            UnitClass::label(&self.name, true)
        };
        self
    }

    pub fn with_unitary(mut self, unitary: bool) -> Self {
        self.unitary = unitary;
        self
    }

    pub fn with_galois(mut self, galois: GaloisData) -> Self {
        self.galois = Some(galois);
        self
    }

    pub fn is_unramified(&self) -> bool {
        self.cond == 0
    }

    pub fn is_trivial(&self) -> Result<bool, LocalError> {
        self.equals(&Char::trivial(), &Relations::new())
    }

    pub fn mul(&self, other: &Char) -> Char {
        let unit_class = self.unit_class.mul(&other.unit_class);
        let cond = if unit_class.is_trivial() {
            0
        } else {
            self.cond.max(other.cond)
        };
        Char {
            name: format!("{}{}", self.name, other.name),
            cond,
            val_at_unif: &self.val_at_unif * &other.val_at_unif,
            val_at_minus_one: self.val_at_minus_one * other.val_at_minus_one,
            quadratic: self.quadratic && other.quadratic,
            unitary: self.unitary && other.unitary,
            unit_class,
            galois: None,
        }
    }

    pub fn inverse(&self) -> Result<Char, LocalError> {
        let galois = match &self.galois {
            None => None,
            Some(g) => Some(GaloisData {
                sigma_invariant: g.sigma_invariant,
                restriction: match &g.restriction {
                    Some(r) => Some(alloc::boxed::Box::new(r.inverse()?)),
                    None => None,
                },
                descends: match &g.descends {
                    Some(d) => Some(Descent {
                        val_at_unif: d.val_at_unif.inverse()?,
                        cond: d.cond,
                        square_is: d.square_is,
                    }),
                    None => None,
                },
            }),
        };
        Ok(Char {
            name: format!("{}^{{-1}}", self.name),
            cond: self.cond,
            val_at_unif: self.val_at_unif.inverse()?,
            val_at_minus_one: self.val_at_minus_one,
            quadratic: self.quadratic,
            unitary: self.unitary,
            unit_class: self.unit_class.inverse(),
            galois,
        })
    }

    /// Exact equality of characters.
    pub fn equals(&self, other: &Char, rel: &Relations) -> Result<bool, LocalError> {
        if self.unit_class != other.unit_class || self.val_at_minus_one != other.val_at_minus_one {
            return Ok(false);
        }
        decide_eq(&self.val_at_unif, &other.val_at_unif, rel)
    }

    /// Whether `self = nu^{k/2}`. A unitary character is never a nonzero
    /// power of `nu`.
    pub fn is_nu_half_power(&self, k: i64, rel: &Relations) -> Result<bool, LocalError> {
        if !self.unit_class.is_trivial() {
            return Ok(false);
        }
        if self.unitary && k != 0 {
            return Ok(false);
        }
        decide_eq(&self.val_at_unif, &RingElt::q_half_pow(-k), rel)
    }
}

fn nu_name(k: i64) -> String {
    match k {
        0 => "1".to_string(),
        2 => "ν".to_string(),
        _ if k % 2 == 0 => format!("ν^{{{}}}", k / 2),
        _ => format!("ν^{{{k}/2}}"),
    }
}

/// Decides `x = y` for values of characters. The symbol `r` is treated as
/// `q^{1/2}` for an unspecified prime power `q` (or the prime fixed by `rel`),
/// and `i` as a square root of `-1` when `rel` says so; any other symbol left
/// in `x - y` makes the comparison undecidable.
pub fn decide_eq(x: &RingElt, y: &RingElt, rel: &Relations) -> Result<bool, LocalError> {
    let d = rel.apply(&(x - y));
    if d.is_zero() {
        return Ok(true);
    }
    let imag = rel.apply(&RingElt::var_pow(IMAG_UNIT, 2)) == RingElt::from_int(-1);
    let known = d
        .variables()
        .iter()
        .all(|v| v == SQRT_Q || (imag && v == IMAG_UNIT));
    if known {
        Ok(false)
    } else {
        Err(LocalError::Undecidable(format!("{x} = {y}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseChange {
    /// Central character of the descended representation, relative to `eta`.
    pub central_char_of_descent: SquareClass,
    /// `a(pi_hat)`, if known.
    pub descended_cond: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Supercuspidal {
    pub name: String,
    pub cond: u32,
    /// `epsilon(1/2, pi)` with respect to an additive character of conductor
    /// the ring of integers.
    pub eps_half: i8,
    pub galois_invariant: Option<bool>,
    pub base_change: Option<BaseChange>,
}

impl Supercuspidal {
    pub fn new(name: &str, cond: u32, eps_half: i8) -> Self {
        Supercuspidal {
            name: name.to_string(),
            cond,
            eps_half,
            galois_invariant: None,
            base_change: None,
        }
    }
}

/// Irreducible admissible representation of GL(2) over a local field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GL2Rep {
    /// `alpha1 x alpha2`.
    PrincipalSeries { alpha1: Char, alpha2: Char },
    /// Unramified tempered principal series with trivial central character,
    /// known only through its Hecke eigenvalue `lambda_tau`.
    UnramifiedHecke { lambda: RingElt },
    /// `alpha 1_{GL(2)}`.
    OneDimensional { alpha: Char },
    /// `alpha St_{GL(2)}`.
    SteinbergTwist { alpha: Char },
    Supercuspidal(Supercuspidal),
}

impl GL2Rep {
    /// `alpha x alpha^{-1}`.
    pub fn principal_series(alpha: Char) -> Result<Self, LocalError> {
        let alpha2 = alpha.inverse()?;
        Ok(GL2Rep::PrincipalSeries {
            alpha1: alpha,
            alpha2,
        })
    }

    pub fn steinberg(alpha: Char) -> Self {
        GL2Rep::SteinbergTwist { alpha }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GL2Rep::PrincipalSeries { .. } => "principal series",
            GL2Rep::UnramifiedHecke { .. } => "unramified principal series",
            GL2Rep::OneDimensional { .. } => "one-dimensional",
            GL2Rep::SteinbergTwist { .. } => "Steinberg twist",
            GL2Rep::Supercuspidal(_) => "supercuspidal",
        }
    }

    pub fn is_unramified(&self) -> bool {
        conductor(self) == 0
    }

    pub fn chars(&self) -> Vec<&Char> {
        match self {
            GL2Rep::PrincipalSeries { alpha1, alpha2 } => alloc::vec![alpha1, alpha2],
            GL2Rep::OneDimensional { alpha } | GL2Rep::SteinbergTwist { alpha } => alloc::vec![alpha],
            _ => Vec::new(),
        }
    }

    /// `alpha(varpi) + alpha(varpi)^{-1}` for an unramified principal series
    /// with trivial central character. `residue_degree` is that of the base
    /// field over `F`.
    pub fn satake_trace(&self, residue_degree: u32) -> Option<RingElt> {
        match self {
            GL2Rep::PrincipalSeries { alpha1, alpha2 } if alpha1.cond == 0 && alpha2.cond == 0 => {
                Some(&alpha1.val_at_unif + &alpha2.val_at_unif)
            }
            GL2Rep::UnramifiedHecke { lambda } => {
                Some(lambda * RingElt::q_half_pow(-(residue_degree as i64)))
            }
            _ => None,
        }
    }
}

/// Base field of a GL(2) representation: `F` itself, or a quadratic
/// extension with residue degree `f` over `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseField {
    F,
    E { f: u32 },
}

impl BaseField {
    pub fn residue_degree(self) -> u32 {
        match self {
            BaseField::F => 1,
            BaseField::E { f } => f,
        }
    }
}

/// `a(tau)`.
pub fn conductor(rep: &GL2Rep) -> u32 {
    match rep {
        GL2Rep::PrincipalSeries { alpha1, alpha2 } => alpha1.cond + alpha2.cond,
        GL2Rep::UnramifiedHecke { .. } => 0,
        GL2Rep::OneDimensional { alpha } => 2 * alpha.cond,
        GL2Rep::SteinbergTwist { alpha } => {
            if alpha.cond == 0 {
                1
            } else {
                2 * alpha.cond
            }
        }
        GL2Rep::Supercuspidal(sc) => sc.cond,
    }
}

/// Hecke eigenvalue `lambda_tau` of the newform.
///
/// Unramified principal series: `q_E^{1/2}(alpha + alpha^{-1})`; Steinberg
/// twisted by an unramified `alpha`: `alpha(varpi)`; every other ramified
/// representation: 0 (a reporting convention; never used by table lookups).
pub fn hecke_eigenvalue(rep: &GL2Rep, base: BaseField) -> RingElt {
    let f = base.residue_degree();
    match rep {
        GL2Rep::UnramifiedHecke { lambda } => lambda.clone(),
        GL2Rep::PrincipalSeries { .. } => match rep.satake_trace(f) {
            Some(t) => RingElt::q_half_pow(f as i64) * t,
            None => RingElt::zero(),
        },
        GL2Rep::SteinbergTwist { alpha } if alpha.cond == 0 => alpha.val_at_unif.clone(),
        _ => RingElt::zero(),
    }
}

/// Atkin–Lehner eigenvalue `epsilon(1/2, tau)`; `None` for the
/// one-dimensional representations, which have no newform.
pub fn atkin_lehner_epsilon(rep: &GL2Rep) -> Option<RingElt> {
    Some(match rep {
        GL2Rep::PrincipalSeries { alpha1, .. } => {
            if alpha1.cond == 0 {
                RingElt::one()
            } else {
                RingElt::from_int(alpha1.val_at_minus_one.into())
            }
        }
        GL2Rep::UnramifiedHecke { .. } => RingElt::one(),
        GL2Rep::OneDimensional { .. } => return None,
        GL2Rep::SteinbergTwist { alpha } => {
            if alpha.cond == 0 {
                -&alpha.val_at_unif
            } else {
                RingElt::from_int(alpha.val_at_minus_one.into())
            }
        }
        GL2Rep::Supercuspidal(sc) => RingElt::from_int(sc.eps_half.into()),
    })
}

/// `L(s, tau)^{-1}` as a polynomial in `u = q^{-s}` of the base field `F`;
/// over `E_w` the factor in `u_E = u^f` is embedded.
pub fn gl2_euler_factor(rep: &GL2Rep, base: BaseField, q: QSpec) -> Result<EulerFactor, LocalError> {
    let f = base.residue_degree();
    let lin = |c: RingElt| EulerFactor::new(alloc::vec![RingElt::one(), -c], q);
    let local = match rep {
        GL2Rep::PrincipalSeries { alpha1, alpha2 } => {
            let mut acc = EulerFactor::one(q);
            for a in [alpha1, alpha2] {
                if a.cond == 0 {
                    acc = acc.mul(&lin(a.val_at_unif.clone())?)?;
                }
            }
            acc
        }
        GL2Rep::UnramifiedHecke { .. } => {
            let t = rep.satake_trace(f).unwrap_or_default();
            EulerFactor::new(alloc::vec![RingElt::one(), -t, RingElt::one()], q)?
        }
        GL2Rep::OneDimensional { alpha } if alpha.cond == 0 => {
            let a = &alpha.val_at_unif;
            lin(a * RingElt::q_half_pow(-(f as i64)))?.mul(&lin(a * RingElt::q_half_pow(f as i64))?)?
        }
        GL2Rep::SteinbergTwist { alpha } if alpha.cond == 0 => {
            lin(&alpha.val_at_unif * RingElt::q_half_pow(-(f as i64)))?
        }
        _ => EulerFactor::one(q),
    };
    Ok(local.embed_base_change(f, q)?)
}

/// Local data of a quadratic extension `E/F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalExtension {
    /// Residue degree `f(E/F)`.
    pub f: u32,
    /// Discriminant valuation `d(E/F)`.
    pub d: u32,
    /// `omega_{E/F}(-1)`.
    pub omega_minus_one: i8,
}

impl LocalExtension {
    pub fn inert() -> Self {
        LocalExtension {
            f: 2,
            d: 0,
            omega_minus_one: 1,
        }
    }

    pub fn ramified(d: u32, omega_minus_one: i8) -> Self {
        LocalExtension {
            f: 1,
            d,
            omega_minus_one,
        }
    }

    /// From the place data of a non-split prime.
    pub fn from_place(place: &PlaceData, omega_minus_one: i8) -> Option<Self> {
        match place.split_type {
            SplitType::Split => None,
            SplitType::Inert => Some(LocalExtension::inert()),
            SplitType::Ramified => Some(LocalExtension::ramified(place.d, omega_minus_one)),
        }
    }

    pub fn is_ramified(&self) -> bool {
        self.d > 0
    }

    pub fn base(&self) -> BaseField {
        BaseField::E { f: self.f }
    }

    /// `omega_{E/F}` as a character of `F^x`.
    pub fn omega(&self) -> Char {
        if self.is_ramified() {
            Char {
                name: OMEGA_LABEL.to_string(),
                cond: self.d,
                val_at_unif: RingElt::one(),
                val_at_minus_one: self.omega_minus_one,
                quadratic: true,
                unitary: true,
                unit_class: UnitClass::label(OMEGA_LABEL, true),
                galois: None,
            }
        } else {
            let mut c = Char::unramified(OMEGA_LABEL, RingElt::from_int(-1));
            c.quadratic = true;
            c
        }
    }
}

/// Data parameterising a GSp(4) L-parameter: a pair of GL(2, F)
/// representations, or a triple `(E, pi_0, eta)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InducingData {
    Split { pi1: GL2Rep, pi2: GL2Rep },
    NonSplit { ext: LocalExtension, pi0: GL2Rep, eta: Char },
}

impl InducingData {
    pub fn split(pi1: GL2Rep, pi2: GL2Rep) -> Self {
        InducingData::Split { pi1, pi2 }
    }

    pub fn non_split(ext: LocalExtension, pi0: GL2Rep) -> Self {
        InducingData::NonSplit {
            ext,
            pi0,
            eta: Char::trivial(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub path: String,
    pub message: String,
}

impl core::fmt::Display for Violation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

struct Checker {
    out: Vec<Violation>,
}

impl Checker {
    fn push(&mut self, path: &str, message: impl Into<String>) {
        self.out.push(Violation {
            path: path.to_string(),
            message: message.into(),
        });
    }

    fn check_char(&mut self, path: &str, c: &Char) {
        if c.val_at_minus_one != 1 && c.val_at_minus_one != -1 {
            self.push(path, "value at -1 must be +1 or -1");
        }
        if c.cond == 0 && c.val_at_minus_one != 1 {
            self.push(path, "unramified character must be trivial on -1");
        }
        if c.val_at_unif.is_zero() {
            self.push(path, "value at the uniformizer must be nonzero");
        }
        if c.quadratic && c.val_at_unif.variables().is_empty() {
            let sq = &c.val_at_unif * &c.val_at_unif;
            if !sq.is_one() {
                self.push(path, "quadratic character must have value ±1 at the uniformizer");
            }
        }
        if let Some(g) = &c.galois {
            if let Some(r) = &g.restriction {
                self.check_char(&format!("{path}.restriction"), r);
                if r.val_at_minus_one != c.val_at_minus_one {
                    self.push(path, "restriction to F^× must agree with the character at -1");
                }
            }
            if let Some(d) = &g.descends {
                if !g.sigma_invariant {
                    self.push(path, "descended character must be Galois-invariant");
                }
                if c.val_at_minus_one != 1 {
                    self.push(path, "descended character must be trivial on -1");
                }
                if d.val_at_unif.is_zero() {
                    self.push(path, "descended value must be nonzero");
                }
            }
        }
    }

    fn check_descent_values(&mut self, path: &str, c: &Char, f: u32) {
        let Some(d) = c.galois.as_ref().and_then(|g| g.descends.as_ref()) else {
            return;
        };
        if c.cond != 0 {
            return;
        }
        let expected = match d.val_at_unif.pow(f.into()) {
            Ok(v) => v,
            Err(_) => return,
        };
        let rel = Relations::new().with_imaginary_unit();
        if let Ok(false) = decide_eq(&c.val_at_unif, &expected, &rel) {
            self.push(
                path,
                format!(
                    "value at the uniformizer of E must equal the descended value to the power f = {f}"
                ),
            );
        }
    }

    fn check_rep(&mut self, path: &str, rep: &GL2Rep) {
        match rep {
            GL2Rep::PrincipalSeries { alpha1, alpha2 } => {
                self.check_char(&format!("{path}.alpha1"), alpha1);
                self.check_char(&format!("{path}.alpha2"), alpha2);
                let prod = alpha1.mul(alpha2);
                let trivial = prod.val_at_minus_one == 1 && matches!(prod.is_trivial(), Ok(true));
                if !trivial {
                    self.push(path, "central character must be trivial (alpha2 = alpha1^{-1})");
                }
            }
            GL2Rep::UnramifiedHecke { .. } => {}
            GL2Rep::OneDimensional { alpha } => {
                self.check_char(&format!("{path}.alpha"), alpha);
                if !alpha.quadratic {
                    self.push(path, "central character must be trivial (alpha quadratic)");
                }
            }
            GL2Rep::SteinbergTwist { alpha } => {
                self.check_char(&format!("{path}.alpha"), alpha);
                if !alpha.quadratic {
                    self.push(path, "central character must be trivial (alpha quadratic)");
                }
            }
            GL2Rep::Supercuspidal(sc) => {
                if sc.cond < 2 {
                    self.push(path, "supercuspidal conductor ≥ 2 required");
                }
                if sc.eps_half != 1 && sc.eps_half != -1 {
                    self.push(path, "epsilon(1/2) must be +1 or -1");
                }
            }
        }
    }
}

/// Checks every structural invariant of the inducing data, plus `eta = 1`
/// for the non-split family. Never fails; returns the list of violations.
pub fn validate(data: &InducingData) -> Result<(), Vec<Violation>> {
    let mut ck = Checker { out: Vec::new() };
    match data {
        InducingData::Split { pi1, pi2 } => {
            ck.check_rep("pi1", pi1);
            ck.check_rep("pi2", pi2);
            for (path, rep) in [("pi1", pi1), ("pi2", pi2)] {
                if let GL2Rep::Supercuspidal(sc) = rep {
                    if sc.galois_invariant.is_some() || sc.base_change.is_some() {
                        ck.push(path, "Galois data is meaningless for a representation over F");
                    }
                }
            }
        }
        InducingData::NonSplit { ext, pi0, eta } => {
            match (ext.f, ext.d) {
                (2, 0) if ext.omega_minus_one == 1 => {}
                (2, 0) => ck.push("extension", "unramified omega is trivial on -1"),
                (1, d) if d >= 1 && (ext.omega_minus_one == 1 || ext.omega_minus_one == -1) => {}
                _ => ck.push("extension", "need f = 2, d = 0 (inert) or f = 1, d ≥ 1 (ramified)"),
            }
            ck.check_rep("pi0", pi0);
            for (i, c) in pi0.chars().into_iter().enumerate() {
                ck.check_descent_values(&format!("pi0.char{}", i + 1), c, ext.f);
            }
            ck.check_char("eta", eta);
            if !matches!(eta.is_trivial(), Ok(true)) {
                ck.push("eta", "eta = 1 is required for the tempered non-split family");
            }
            if let GL2Rep::Supercuspidal(sc) = pi0 {
                match sc.galois_invariant {
                    None => ck.push("pi0", "supercuspidal over E needs the Galois-invariance flag"),
                    Some(true) if sc.base_change.is_none() => {
                        ck.push("pi0", "Galois-invariant supercuspidal needs base-change data")
                    }
                    Some(true)
                        if matches!(
                            sc.base_change.as_ref().map(|b| b.central_char_of_descent),
                            Some(SquareClass::OmegaEF)
                        ) && sc.eps_half != 1 =>
                    {
                        ck.push(
                            "pi0",
                            "base change of a representation with central character ω_{E/F} has epsilon(1/2) = 1",
                        )
                    }
                    _ => {}
                }
            }
        }
    }
    if ck.out.is_empty() {
        Ok(())
    } else {
        Err(ck.out)
    }
}
