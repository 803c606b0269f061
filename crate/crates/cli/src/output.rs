//! Machine-readable output formats. The transfer report converts back into
//! the core [`SiegelFormReport`] losslessly.

use std::collections::BTreeMap;

use paramodular_core::exactalg::{render_poly, EulerFactor, QSpec, RingElt};
use paramodular_core::quadfield::{FactoredLevel, PlaceData};
use paramodular_core::transfer::{
    GlobalInvariants, PrimeOutcome, PrimeRecord, SiegelFormReport, TheoremBranch, TheoremValues,
};
use serde::{Deserialize, Serialize};

use crate::schema::{SchemaError, SplitTypeSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceDataOut {
    pub p: u64,
    pub split_type: SplitTypeSpec,
    pub f: u32,
    pub e: u32,
    pub d: u32,
    pub num_places: u32,
    /// `omega_{E/F}(-1)`, for non-split primes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_minus_one: Option<i8>,
}

impl PlaceDataOut {
    pub fn new(d: &PlaceData, omega_minus_one: Option<i8>) -> Self {
        PlaceDataOut {
            p: d.p,
            split_type: d.split_type.into(),
            f: d.f,
            e: d.e,
            d: d.d,
            num_places: d.num_places,
            omega_minus_one,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstituentOut {
    pub group: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PacketOut {
    pub group_labels: Vec<String>,
    pub constituents: Vec<ConstituentOut>,
    pub generic_index: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsOut {
    pub row_id: String,
    pub group: String,
    pub n: u32,
    pub eps: String,
    pub lambda: String,
    pub mu: String,
    /// Coefficients of `L(s, N, eps, lambda, mu)^{-1}` in `q^{-s}`.
    pub euler_factor: Vec<String>,
    pub euler_factor_text: String,
    /// Whether the factor equals the L-factor of the parameter.
    pub l_equality: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_equality_witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorOut {
    pub p: u64,
    pub e: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelOut {
    pub factors: Vec<FactorOut>,
    pub value: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremOut {
    pub branch: String,
    pub lambda: String,
    pub mu: String,
    /// `[lambda, mu]` as literally stated, where that differs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub literal: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PrimeOut {
    Resolved {
        p: u64,
        split_type: SplitTypeSpec,
        val_p_n: u32,
        row_id: String,
        lambda: String,
        mu: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        eps: Option<String>,
        euler_factor: Vec<String>,
        euler_factor_text: String,
        lambda_classical: String,
        mu_classical: String,
        classical_factor: Vec<String>,
        classical_factor_text: String,
        theorem: TheoremOut,
        theorem_agrees: bool,
    },
    Unresolved {
        p: u64,
        split_type: SplitTypeSpec,
        val_p_n: u32,
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalOut {
    pub sign: String,
    pub functional_equation: String,
    pub archimedean: String,
    pub root_number: String,
    pub epsilon_chain: String,
    pub sign_consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArchimedeanOut {
    pub samples: Vec<f64>,
    pub tolerance: f64,
    pub constant: f64,
    pub max_rel_dev: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportOut {
    pub k: u32,
    pub level: LevelOut,
    pub primes: Vec<PrimeOut>,
    pub global: GlobalOut,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub archimedean_check: Option<ArchimedeanOut>,
}

const BRANCHES: [TheoremBranch; 5] = [
    TheoremBranch::Unramified,
    TheoremBranch::OneStep,
    TheoremBranch::DeepInert,
    TheoremBranch::DeepRamified,
    TheoremBranch::DeepSplit,
];

fn coeffs(f: &EulerFactor) -> Vec<String> {
    f.coeffs().iter().map(ToString::to_string).collect()
}

fn elt(s: &str, path: &str) -> Result<RingElt, SchemaError> {
    s.parse().map_err(|e| SchemaError {
        path: path.into(),
        message: format!("cannot parse `{s}`: {e}"),
    })
}

fn factor(cs: &[String], p: u64, path: &str) -> Result<EulerFactor, SchemaError> {
    let v = cs
        .iter()
        .enumerate()
        .map(|(i, c)| elt(c, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    EulerFactor::new(v, QSpec::PrimePower { p, f: 1 }).map_err(|e| SchemaError {
        path: path.into(),
        message: e.to_string(),
    })
}

impl ReportOut {
    pub fn from_core(r: &SiegelFormReport) -> Self {
        let primes = r.per_prime.iter().map(prime_out).collect();
        ReportOut {
            k: r.k,
            level: LevelOut {
                factors: r.level.factors().iter().map(|(p, e)| FactorOut { p: *p, e: *e }).collect(),
                value: r.level_value().to_string(),
                text: r.level.to_string(),
            },
            primes,
            global: GlobalOut {
                sign: r.global.sign.to_string(),
                functional_equation: r.global.functional_equation.clone(),
                archimedean: r.global.archimedean.clone(),
                root_number: r.global.root_number.to_string(),
                epsilon_chain: r.global.epsilon_chain.clone(),
                sign_consistent: r.global.sign_consistent,
            },
            archimedean_check: None,
        }
    }

    pub fn to_core(&self) -> Result<SiegelFormReport, SchemaError> {
        let level = FactoredLevel::from_map(self.level.factors.iter().map(|f| (f.p, f.e)).collect::<BTreeMap<_, _>>());
        if level.to_biguint().to_string() != self.level.value || level.to_string() != self.level.text {
            return Err(SchemaError {
                path: "level".into(),
                message: "value and text disagree with the factorisation".into(),
            });
        }
        let per_prime = self
            .primes
            .iter()
            .enumerate()
            .map(|(i, p)| prime_to_core(p, &format!("primes[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SiegelFormReport {
            k: self.k,
            level,
            per_prime,
            global: GlobalInvariants {
                sign: elt(&self.global.sign, "global.sign")?,
                functional_equation: self.global.functional_equation.clone(),
                archimedean: self.global.archimedean.clone(),
                root_number: elt(&self.global.root_number, "global.root_number")?,
                epsilon_chain: self.global.epsilon_chain.clone(),
                sign_consistent: self.global.sign_consistent,
            },
        })
    }
}

fn prime_out(o: &PrimeOutcome) -> PrimeOut {
    match o {
        PrimeOutcome::Resolved(r) => PrimeOut::Resolved {
            p: r.p,
            split_type: r.split_type.into(),
            val_p_n: r.val_p_n,
            row_id: r.row_id.clone(),
            lambda: r.lambda_p.to_string(),
            mu: r.mu_p.to_string(),
            eps: r.eps_p.as_ref().map(ToString::to_string),
            euler_factor: coeffs(&r.euler_factor),
            euler_factor_text: r.euler_factor.to_string(),
            lambda_classical: r.lambda_classical.to_string(),
            mu_classical: r.mu_classical.to_string(),
            classical_factor: coeffs(&r.classical_factor),
            classical_factor_text: render_poly(r.classical_factor.coeffs()),
            theorem: TheoremOut {
                branch: r.theorem.branch.as_str().to_string(),
                lambda: r.theorem.lambda.to_string(),
                mu: r.theorem.mu.to_string(),
                literal: r.theorem.literal.as_ref().map(|(l, m)| [l.to_string(), m.to_string()]),
                note: r.theorem.note.clone(),
            },
            theorem_agrees: r.theorem_agrees,
        },
        PrimeOutcome::Unresolved {
            p,
            split_type,
            val_p_n,
            reason,
        } => PrimeOut::Unresolved {
            p: *p,
            split_type: (*split_type).into(),
            val_p_n: *val_p_n,
            reason: reason.clone(),
        },
    }
}

fn prime_to_core(o: &PrimeOut, path: &str) -> Result<PrimeOutcome, SchemaError> {
    Ok(match o {
        PrimeOut::Resolved {
            p,
            split_type,
            val_p_n,
            row_id,
            lambda,
            mu,
            eps,
            euler_factor,
            lambda_classical,
            mu_classical,
            classical_factor,
            theorem,
            theorem_agrees,
            ..
        } => {
            let branch = BRANCHES
                .iter()
                .copied()
                .find(|b| b.as_str() == theorem.branch)
                .ok_or_else(|| SchemaError {
                    path: format!("{path}.theorem.branch"),
                    message: format!("unknown branch `{}`", theorem.branch),
                })?;
            let literal = match &theorem.literal {
                Some([l, m]) => Some((
                    elt(l, &format!("{path}.theorem.literal[0]"))?,
                    elt(m, &format!("{path}.theorem.literal[1]"))?,
                )),
                None => None,
            };
            PrimeOutcome::Resolved(PrimeRecord {
                p: *p,
                split_type: (*split_type).into(),
                val_p_n: *val_p_n,
                row_id: row_id.clone(),
                lambda_p: elt(lambda, &format!("{path}.lambda"))?,
                mu_p: elt(mu, &format!("{path}.mu"))?,
                eps_p: eps.as_ref().map(|e| elt(e, &format!("{path}.eps"))).transpose()?,
                euler_factor: factor(euler_factor, *p, &format!("{path}.euler_factor"))?,
                lambda_classical: elt(lambda_classical, &format!("{path}.lambda_classical"))?,
                mu_classical: elt(mu_classical, &format!("{path}.mu_classical"))?,
                classical_factor: factor(classical_factor, *p, &format!("{path}.classical_factor"))?,
                theorem: TheoremValues {
                    branch,
                    lambda: elt(&theorem.lambda, &format!("{path}.theorem.lambda"))?,
                    mu: elt(&theorem.mu, &format!("{path}.theorem.mu"))?,
                    literal,
                    note: theorem.note.clone(),
                },
                theorem_agrees: *theorem_agrees,
            })
        }
        PrimeOut::Unresolved {
            p,
            split_type,
            val_p_n,
            reason,
        } => PrimeOutcome::Unresolved {
            p: *p,
            split_type: (*split_type).into(),
            val_p_n: *val_p_n,
            reason: reason.clone(),
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowOut {
    pub row_id: String,
    pub sample: String,
    pub matched_row: String,
    pub l_equality: bool,
    pub conductor_ok: bool,
    pub epsilon_ok: bool,
    pub packet_ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCheckOut {
    pub row_id: String,
    pub sample: String,
    pub branch: String,
    pub lambda_agrees: bool,
    pub mu_agrees: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub literal_agrees: Option<bool>,
    pub epsilon_agrees: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimilitudeOut {
    pub seed: u64,
    pub trials: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOut {
    pub rows: Vec<RowOut>,
    pub theorem: Vec<TheoremCheckOut>,
    pub similitude: SimilitudeOut,
    pub ok: bool,
}
