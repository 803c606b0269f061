//! JSON input formats and their conversion to the core types.
//!
//! Ring elements are written in the canonical text form of
//! `paramodular_core::exactalg`, and every free symbol other than `r`
//! (the square root of the residue cardinality) and `i` must be listed in
//! `symbols` first. Defaults are omitted on output, so that serializing a
//! parsed canonical file reproduces it byte for byte.

use std::collections::{BTreeMap, BTreeSet};

use paramodular_core::exactalg::{Rational, Relations, RingElt, IMAG_UNIT, SQRT_Q};
use paramodular_core::localdata::{
    BaseChange, Char, Descent, GL2Rep, GaloisData, InducingData, LocalExtension, SquareClass, Supercuspidal,
    UnitClass,
};
use paramodular_core::quadfield::{splitting_type, QuadField, SplitType};
use paramodular_core::transfer::{default_lambda, HilbertFormInput, PlaceInput};
use serde::{Deserialize, Serialize};

/// A schema violation at a JSON path such as `form.places[1].rep.cond`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{path}: {message}")]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

impl SchemaError {
    fn new(path: &str, message: impl Into<String>) -> Self {
        SchemaError {
            path: if path.is_empty() { ".".into() } else { path.into() },
            message: message.into(),
        }
    }
}

/// Parses JSON into `T`, reporting the path of the first offending field.
pub fn from_json<'de, T: Deserialize<'de>>(text: &'de str) -> Result<T, SchemaError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "?" { "" } else { path.as_str() };
        SchemaError::new(path, e.into_inner().to_string())
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn is_false(b: &bool) -> bool {
    !*b
}

fn is_true(b: &bool) -> bool {
    *b
}

fn yes() -> bool {
    true
}

fn is_zero(n: &u32) -> bool {
    *n == 0
}

fn is_zero_u8(n: &u8) -> bool {
    *n == 0
}

fn plus_one() -> i8 {
    1
}

fn is_plus_one(n: &i8) -> bool {
    *n == 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SquareClassSpec {
    Trivial,
    OmegaEf,
    Other,
}

impl From<SquareClass> for SquareClassSpec {
    fn from(s: SquareClass) -> Self {
        match s {
            SquareClass::Trivial => SquareClassSpec::Trivial,
            SquareClass::OmegaEF => SquareClassSpec::OmegaEf,
            SquareClass::Other => SquareClassSpec::Other,
        }
    }
}

impl From<SquareClassSpec> for SquareClass {
    fn from(s: SquareClassSpec) -> Self {
        match s {
            SquareClassSpec::Trivial => SquareClass::Trivial,
            SquareClassSpec::OmegaEf => SquareClass::OmegaEF,
            SquareClassSpec::Other => SquareClass::Other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitTypeSpec {
    Split,
    Inert,
    Ramified,
}

impl From<SplitType> for SplitTypeSpec {
    fn from(s: SplitType) -> Self {
        match s {
            SplitType::Split => SplitTypeSpec::Split,
            SplitType::Inert => SplitTypeSpec::Inert,
            SplitType::Ramified => SplitTypeSpec::Ramified,
        }
    }
}

impl From<SplitTypeSpec> for SplitType {
    fn from(s: SplitTypeSpec) -> Self {
        match s {
            SplitTypeSpec::Split => SplitType::Split,
            SplitTypeSpec::Inert => SplitType::Inert,
            SplitTypeSpec::Ramified => SplitType::Ramified,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitFactorSpec {
    pub label: String,
    pub exp: i64,
    #[serde(default, skip_serializing_if = "is_false")]
    pub quadratic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescentSpec {
    pub val_at_unif: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cond: Option<u32>,
    pub square_is: SquareClassSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaloisSpec {
    pub sigma_invariant: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restriction: Option<Box<CharSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descends: Option<DescentSpec>,
}

/// A character of a local field. `unit_class` defaults to the trivial class
/// for unramified characters and to the single label `name` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub cond: u32,
    pub val_at_unif: String,
    #[serde(default = "plus_one", skip_serializing_if = "is_plus_one")]
    pub val_at_minus_one: i8,
    #[serde(default, skip_serializing_if = "is_false")]
    pub quadratic: bool,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub unitary: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_class: Option<Vec<UnitFactorSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub galois: Option<GaloisSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseChangeSpec {
    pub central_char_of_descent: SquareClassSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descended_cond: Option<u32>,
}

/// A representation of GL(2) over a local field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RepSpec {
    UnramifiedHecke {
        lambda: String,
    },
    PrincipalSeries {
        alpha1: CharSpec,
        alpha2: CharSpec,
    },
    OneDimensional {
        alpha: CharSpec,
    },
    Steinberg {
        alpha: CharSpec,
    },
    Supercuspidal {
        name: String,
        cond: u32,
        eps_half: i8,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        galois_invariant: Option<bool>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        base_change: Option<BaseChangeSpec>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSpec {
    pub f: u32,
    pub d: u32,
    pub omega_minus_one: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum InducingSpec {
    Split {
        pi1: RepSpec,
        pi2: RepSpec,
    },
    NonSplit {
        extension: ExtensionSpec,
        pi0: RepSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        eta: Option<CharSpec>,
    },
}

/// Relations imposed before comparing ring elements.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationsSpec {
    /// Sets `r^2 = p`, and makes Euler factors refer to `q = p`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    /// `symbol -> value of its square`, a rational number.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub squares: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub imaginary_unit: bool,
}

impl RelationsSpec {
    pub fn is_empty(&self) -> bool {
        self == &RelationsSpec::default()
    }
}

/// Input of `classify` and `invariants`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalInput {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub symbols: Vec<String>,
    #[serde(default, skip_serializing_if = "RelationsSpec::is_empty")]
    pub relations: RelationsSpec,
    pub inducing: InducingSpec,
    /// The auxiliary quadratic character for packets of type VIII/XII.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<CharSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    #[serde(rename = "D")]
    pub d: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaceSpec {
    pub p: u64,
    /// Which of the two places above a split prime; 0 otherwise.
    #[serde(default, skip_serializing_if = "is_zero_u8")]
    pub index: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split_type: Option<SplitTypeSpec>,
    pub val_level: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep: Option<RepSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpec {
    pub n: u32,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub not_galois_invariant: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub symbols: Vec<String>,
    pub places: Vec<PlaceSpec>,
}

/// Input of `transfer`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransferInput {
    pub field: FieldSpec,
    pub form: FormSpec,
}

/// Declared symbols, used while converting to core types.
struct Scope {
    symbols: BTreeSet<String>,
}

impl Scope {
    fn new(symbols: &[String], path: &str) -> Result<Self, SchemaError> {
        let mut set = BTreeSet::new();
        for (i, s) in symbols.iter().enumerate() {
            let p = format!("{path}[{i}]");
            if s == SQRT_Q || s == IMAG_UNIT {
                return Err(SchemaError::new(&p, format!("`{s}` is reserved")));
            }
            let ok = s.parse::<RingElt>().ok().and_then(|e| {
                let v = e.variables();
                (v.len() == 1 && &v[0] == s).then_some(())
            });
            if ok.is_none() {
                return Err(SchemaError::new(&p, format!("`{s}` is not a valid symbol name")));
            }
            if !set.insert(s.clone()) {
                return Err(SchemaError::new(&p, format!("`{s}` declared twice")));
            }
        }
        Ok(Scope { symbols: set })
    }

    fn elt(&self, text: &str, path: &str) -> Result<RingElt, SchemaError> {
        let e: RingElt = text
            .parse()
            .map_err(|err| SchemaError::new(path, format!("cannot parse `{text}`: {err}")))?;
        for v in e.variables() {
            if v != SQRT_Q && v != IMAG_UNIT && !self.symbols.contains(&v) {
                return Err(SchemaError::new(path, format!("symbol `{v}` is not declared")));
            }
        }
        Ok(e)
    }
}

fn sign(v: i8, path: &str) -> Result<i8, SchemaError> {
    if v == 1 || v == -1 {
        Ok(v)
    } else {
        Err(SchemaError::new(path, format!("expected 1 or -1, got {v}")))
    }
}

fn default_char(name: &str, cond: u32, val: RingElt, minus_one: i8, quadratic: bool) -> Char {
    let c = if cond == 0 {
        Char::unramified(name, val)
    } else {
        Char::ramified(name, cond, val, minus_one)
    };
    if quadratic {
        c.as_quadratic()
    } else {
        c
    }
}

impl CharSpec {
    fn to_core(&self, sc: &Scope, path: &str) -> Result<Char, SchemaError> {
        let val = sc.elt(&self.val_at_unif, &format!("{path}.val_at_unif"))?;
        let minus_one = sign(self.val_at_minus_one, &format!("{path}.val_at_minus_one"))?;
        if self.cond == 0 && minus_one != 1 {
            return Err(SchemaError::new(
                &format!("{path}.val_at_minus_one"),
                "an unramified character is trivial on -1",
            ));
        }
        let mut c = default_char(&self.name, self.cond, val, minus_one, self.quadratic);
        c.unitary = self.unitary;
        if let Some(u) = &self.unit_class {
            c.unit_class = UnitClass::from_factors(u.iter().map(|f| (f.label.as_str(), f.exp, f.quadratic)));
        }
        if let Some(g) = &self.galois {
            let restriction = match &g.restriction {
                Some(r) => Some(Box::new(r.to_core(sc, &format!("{path}.galois.restriction"))?)),
                None => None,
            };
            let descends = match &g.descends {
                Some(d) => Some(Descent {
                    val_at_unif: sc.elt(&d.val_at_unif, &format!("{path}.galois.descends.val_at_unif"))?,
                    cond: d.cond,
                    square_is: d.square_is.into(),
                }),
                None => None,
            };
            c.galois = Some(GaloisData {
                sigma_invariant: g.sigma_invariant,
                restriction,
                descends,
            });
        }
        Ok(c)
    }

    pub fn from_core(c: &Char) -> Self {
        let default = default_char(&c.name, c.cond, c.val_at_unif.clone(), c.val_at_minus_one, c.quadratic);
        let unit_class = (default.unit_class != c.unit_class).then(|| {
            c.unit_class
                .factors()
                .map(|(label, exp, quadratic)| UnitFactorSpec {
                    label: label.to_string(),
                    exp,
                    quadratic,
                })
                .collect()
        });
        CharSpec {
            name: c.name.clone(),
            cond: c.cond,
            val_at_unif: c.val_at_unif.to_string(),
            val_at_minus_one: c.val_at_minus_one,
            quadratic: c.quadratic,
            unitary: c.unitary,
            unit_class,
            galois: c.galois.as_ref().map(|g| GaloisSpec {
                sigma_invariant: g.sigma_invariant,
                restriction: g.restriction.as_ref().map(|r| Box::new(CharSpec::from_core(r))),
                descends: g.descends.as_ref().map(|d| DescentSpec {
                    val_at_unif: d.val_at_unif.to_string(),
                    cond: d.cond,
                    square_is: d.square_is.into(),
                }),
            }),
        }
    }
}

impl RepSpec {
    fn to_core(&self, sc: &Scope, path: &str) -> Result<GL2Rep, SchemaError> {
        Ok(match self {
            RepSpec::UnramifiedHecke { lambda } => GL2Rep::UnramifiedHecke {
                lambda: sc.elt(lambda, &format!("{path}.lambda"))?,
            },
            RepSpec::PrincipalSeries { alpha1, alpha2 } => GL2Rep::PrincipalSeries {
                alpha1: alpha1.to_core(sc, &format!("{path}.alpha1"))?,
                alpha2: alpha2.to_core(sc, &format!("{path}.alpha2"))?,
            },
            RepSpec::OneDimensional { alpha } => GL2Rep::OneDimensional {
                alpha: alpha.to_core(sc, &format!("{path}.alpha"))?,
            },
            RepSpec::Steinberg { alpha } => GL2Rep::SteinbergTwist {
                alpha: alpha.to_core(sc, &format!("{path}.alpha"))?,
            },
            RepSpec::Supercuspidal {
                name,
                cond,
                eps_half,
                galois_invariant,
                base_change,
            } => {
                if *cond < 2 {
                    return Err(SchemaError::new(
                        &format!("{path}.cond"),
                        "a supercuspidal representation has conductor at least 2",
                    ));
                }
                let mut s = Supercuspidal::new(name, *cond, sign(*eps_half, &format!("{path}.eps_half"))?);
                s.galois_invariant = *galois_invariant;
                s.base_change = base_change.as_ref().map(|b| BaseChange {
                    central_char_of_descent: b.central_char_of_descent.into(),
                    descended_cond: b.descended_cond,
                });
                GL2Rep::Supercuspidal(s)
            }
        })
    }

    pub fn from_core(rep: &GL2Rep) -> Self {
        match rep {
            GL2Rep::UnramifiedHecke { lambda } => RepSpec::UnramifiedHecke {
                lambda: lambda.to_string(),
            },
            GL2Rep::PrincipalSeries { alpha1, alpha2 } => RepSpec::PrincipalSeries {
                alpha1: CharSpec::from_core(alpha1),
                alpha2: CharSpec::from_core(alpha2),
            },
            GL2Rep::OneDimensional { alpha } => RepSpec::OneDimensional {
                alpha: CharSpec::from_core(alpha),
            },
            GL2Rep::SteinbergTwist { alpha } => RepSpec::Steinberg {
                alpha: CharSpec::from_core(alpha),
            },
            GL2Rep::Supercuspidal(s) => RepSpec::Supercuspidal {
                name: s.name.clone(),
                cond: s.cond,
                eps_half: s.eps_half,
                galois_invariant: s.galois_invariant,
                base_change: s.base_change.as_ref().map(|b| BaseChangeSpec {
                    central_char_of_descent: b.central_char_of_descent.into(),
                    descended_cond: b.descended_cond,
                }),
            },
        }
    }
}

/// Local input converted to core types.
#[derive(Debug, Clone)]
pub struct LocalJob {
    pub data: InducingData,
    pub relations: Relations,
    pub prime: Option<u64>,
    pub xi: Option<Char>,
}

impl LocalInput {
    pub fn to_core(&self) -> Result<LocalJob, SchemaError> {
        let sc = Scope::new(&self.symbols, "symbols")?;
        let mut relations = match self.relations.prime {
            Some(p) if paramodular_core::quadfield::is_prime(p) => Relations::prime(p),
            Some(p) => return Err(SchemaError::new("relations.prime", format!("{p} is not prime"))),
            None => Relations::new(),
        };
        for (name, value) in &self.relations.squares {
            let path = format!("relations.squares.{name}");
            if !sc.symbols.contains(name) {
                return Err(SchemaError::new(&path, format!("symbol `{name}` is not declared")));
            }
            let v: Rational = value
                .parse()
                .map_err(|_| SchemaError::new(&path, format!("`{value}` is not a rational number")))?;
            relations = relations.with_square(name, v);
        }
        if self.relations.imaginary_unit {
            relations = relations.with_imaginary_unit();
        }
        let data = match &self.inducing {
            InducingSpec::Split { pi1, pi2 } => InducingData::Split {
                pi1: pi1.to_core(&sc, "inducing.pi1")?,
                pi2: pi2.to_core(&sc, "inducing.pi2")?,
            },
            InducingSpec::NonSplit { extension, pi0, eta } => {
                let ext = extension_to_core(extension)?;
                let pi0 = pi0.to_core(&sc, "inducing.pi0")?;
                let eta = match eta {
                    Some(c) => c.to_core(&sc, "inducing.eta")?,
                    None => Char::trivial(),
                };
                InducingData::NonSplit { ext, pi0, eta }
            }
        };
        let xi = match &self.xi {
            Some(c) => Some(c.to_core(&sc, "xi")?),
            None => None,
        };
        Ok(LocalJob {
            data,
            relations,
            prime: self.relations.prime,
            xi,
        })
    }

    /// Input text for `data`, declaring every free symbol it uses.
    pub fn from_core(data: &InducingData, relations: RelationsSpec) -> Self {
        let inducing = match data {
            InducingData::Split { pi1, pi2 } => InducingSpec::Split {
                pi1: RepSpec::from_core(pi1),
                pi2: RepSpec::from_core(pi2),
            },
            InducingData::NonSplit { ext, pi0, eta } => InducingSpec::NonSplit {
                extension: ExtensionSpec {
                    f: ext.f,
                    d: ext.d,
                    omega_minus_one: ext.omega_minus_one,
                },
                pi0: RepSpec::from_core(pi0),
                eta: (eta != &Char::trivial()).then(|| CharSpec::from_core(eta)),
            },
        };
        let mut input = LocalInput {
            symbols: Vec::new(),
            relations,
            inducing,
            xi: None,
        };
        input.symbols = collect_symbols(&serde_json::to_value(&input.inducing).expect("plain data"));
        input
    }
}

fn extension_to_core(e: &ExtensionSpec) -> Result<LocalExtension, SchemaError> {
    let w = sign(e.omega_minus_one, "inducing.extension.omega_minus_one")?;
    match (e.f, e.d) {
        (2, 0) if w == 1 => Ok(LocalExtension::inert()),
        (2, 0) => Err(SchemaError::new(
            "inducing.extension.omega_minus_one",
            "an unramified extension has omega(-1) = 1",
        )),
        (1, d @ 1..=3) => Ok(LocalExtension::ramified(d, w)),
        (f, d) => Err(SchemaError::new(
            "inducing.extension",
            format!("f = {f}, d = {d} is not a quadratic extension of a p-adic field"),
        )),
    }
}

/// Symbols in every ring-element field of a serialized input, sorted.
fn collect_symbols(v: &serde_json::Value) -> Vec<String> {
    const ELT_KEYS: [&str; 2] = ["val_at_unif", "lambda"];
    fn walk(v: &serde_json::Value, out: &mut BTreeSet<String>) {
        match v {
            serde_json::Value::Object(m) => {
                for (k, x) in m {
                    match (ELT_KEYS.contains(&k.as_str()), x.as_str()) {
                        (true, Some(s)) => {
                            if let Ok(e) = s.parse::<RingElt>() {
                                out.extend(e.variables().into_iter().filter(|n| n != SQRT_Q && n != IMAG_UNIT));
                            }
                        }
                        _ => walk(x, out),
                    }
                }
            }
            serde_json::Value::Array(a) => a.iter().for_each(|x| walk(x, out)),
            _ => {}
        }
    }
    let mut out = BTreeSet::new();
    walk(v, &mut out);
    out.into_iter().collect()
}

impl TransferInput {
    pub fn to_core(&self) -> Result<HilbertFormInput, SchemaError> {
        let field = QuadField::new(self.field.d).map_err(|e| SchemaError::new("field.D", e.to_string()))?;
        let sc = Scope::new(&self.form.symbols, "form.symbols")?;
        let mut input = HilbertFormInput::new(field, self.form.n);
        input.not_galois_invariant = self.form.not_galois_invariant;
        let mut seen = BTreeSet::new();
        for (i, pl) in self.form.places.iter().enumerate() {
            let path = format!("form.places[{i}]");
            let data = splitting_type(&field, pl.p).map_err(|e| SchemaError::new(&format!("{path}.p"), e.to_string()))?;
            if let Some(t) = pl.split_type {
                if SplitType::from(t) != data.split_type {
                    return Err(SchemaError::new(
                        &format!("{path}.split_type"),
                        format!("{} is {} in the field", pl.p, data.split_type.as_str()),
                    ));
                }
            }
            if u32::from(pl.index) >= data.num_places {
                return Err(SchemaError::new(
                    &format!("{path}.index"),
                    format!("{} has {} place(s)", pl.p, data.num_places),
                ));
            }
            if !seen.insert((pl.p, pl.index)) {
                return Err(SchemaError::new(&path, "place given twice"));
            }
            let rep = match &pl.rep {
                Some(r) => Some(r.to_core(&sc, &format!("{path}.rep"))?),
                None => None,
            };
            if let Some(r) = &rep {
                let a = paramodular_core::localdata::conductor(r);
                if a != pl.val_level {
                    return Err(SchemaError::new(
                        &format!("{path}.val_level"),
                        format!("val_level {} but the representation has conductor {a}", pl.val_level),
                    ));
                }
            }
            let entry = input.local_data.entry(pl.p).or_insert_with(|| {
                (0..data.num_places)
                    .map(|k| {
                        let idx = (data.num_places == 2).then_some(k + 1);
                        PlaceInput::unramified(RingElt::var(&default_lambda(pl.p, idx)))
                    })
                    .collect()
            });
            entry[pl.index as usize] = PlaceInput {
                val_level: pl.val_level,
                rep,
            };
        }
        Ok(input)
    }

    /// Input text for `input`, listing every place with data.
    pub fn from_core(input: &HilbertFormInput) -> Self {
        let mut places = Vec::new();
        for (p, ws) in &input.local_data {
            let t = splitting_type(&input.field, *p).ok().map(|d| d.split_type.into());
            for (i, w) in ws.iter().enumerate() {
                places.push(PlaceSpec {
                    p: *p,
                    index: i as u8,
                    split_type: t,
                    val_level: w.val_level,
                    rep: w.rep.as_ref().map(RepSpec::from_core),
                });
            }
        }
        let mut form = FormSpec {
            n: input.n,
            not_galois_invariant: input.not_galois_invariant,
            symbols: Vec::new(),
            places,
        };
        form.symbols = collect_symbols(&serde_json::to_value(&form.places).expect("plain data"));
        TransferInput {
            field: FieldSpec {
                d: input.field.radicand() as i64,
            },
            form,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_of_bad_field() {
        let text = r#"{"field": {"D": 5}, "form": {"n": 1, "places": [{"p": 2, "val_level": "x"}]}}"#;
        let err = from_json::<TransferInput>(text).unwrap_err();
        assert_eq!(err.path, "form.places[0].val_level");
    }

    #[test]
    fn undeclared_symbol() {
        let text = r#"{"inducing": {"type": "split",
            "pi1": {"kind": "unramified_hecke", "lambda": "a"},
            "pi2": {"kind": "unramified_hecke", "lambda": "b"}}, "symbols": ["a"]}"#;
        let err = from_json::<LocalInput>(text).unwrap().to_core().unwrap_err();
        assert_eq!(err.path, "inducing.pi2.lambda");
    }

    #[test]
    fn char_defaults_survive_round_trip() {
        let c = Char::ramified("χ", 2, RingElt::var("x"), -1).as_quadratic();
        let spec = CharSpec::from_core(&c);
        assert!(spec.unit_class.is_none());
        let sc = Scope::new(&["x".to_string()], "symbols").unwrap();
        assert_eq!(spec.to_core(&sc, "c").unwrap(), c);
    }
}
