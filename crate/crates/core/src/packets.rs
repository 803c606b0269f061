//! GSp(4) L-parameters built from GL(2) data, and the L-packets they
//! determine.
//!
//! The Weil–Deligne group is never modelled: a parameter is evaluated on
//! caller-supplied images of group elements, which is enough to check the
//! symplectic similitude property of the constructions.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::exactalg::{Relations, RingElt};
use crate::localdata::{Char, GL2Rep, InducingData, LocalError, SquareClass, Supercuspidal};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PacketError {
    #[error("determinant mismatch: {0} != {1}")]
    DeterminantMismatch(RingElt, RingElt),
    #[error("eta(g0) = {0} is not invertible")]
    NonInvertibleEta(RingElt),
    #[error("undecidable with symbolic data: {0}")]
    UndecidableWithSymbolicData(String),
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("no row matched: {0}")]
    NoRowMatched(String),
}

impl From<LocalError> for PacketError {
    fn from(e: LocalError) -> Self {
        PacketError::UndecidableWithSymbolicData(e.to_string())
    }
}

/// Row-major 2x2 matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix2 {
    pub entries: [RingElt; 4],
}

impl Matrix2 {
    pub fn new(a: RingElt, b: RingElt, c: RingElt, d: RingElt) -> Self {
        Matrix2 { entries: [a, b, c, d] }
    }

    pub fn identity() -> Self {
        Matrix2::new(RingElt::one(), RingElt::zero(), RingElt::zero(), RingElt::one())
    }

    pub fn diag(a: RingElt, d: RingElt) -> Self {
        Matrix2::new(a, RingElt::zero(), RingElt::zero(), d)
    }

    pub fn det(&self) -> RingElt {
        let [a, b, c, d] = &self.entries;
        a * d - b * c
    }

    pub fn mul(&self, o: &Matrix2) -> Matrix2 {
        let [a, b, c, d] = &self.entries;
        let [e, f, g, h] = &o.entries;
        Matrix2::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    }
}

/// Row-major 4x4 matrix, optionally tagged with its similitude multiplier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix4 {
    pub entries: Vec<RingElt>,
    pub similitude: Option<RingElt>,
}

impl Matrix4 {
    pub fn from_rows(rows: [[RingElt; 4]; 4]) -> Self {
        Matrix4 {
            entries: rows.into_iter().flatten().collect(),
            similitude: None,
        }
    }

    pub fn zero() -> Self {
        Matrix4 {
            entries: vec![RingElt::zero(); 16],
            similitude: None,
        }
    }

    pub fn identity() -> Self {
        let mut m = Matrix4::zero();
        for i in 0..4 {
            m.set(i, i, RingElt::one());
        }
        m
    }

    pub fn diag(d: [RingElt; 4]) -> Self {
        let mut m = Matrix4::zero();
        for (i, x) in d.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    /// `J = [[0, 1_2], [-1_2, 0]]`.
    pub fn j() -> Self {
        let mut m = Matrix4::zero();
        for i in 0..2 {
            m.set(i, i + 2, RingElt::one());
            m.set(i + 2, i, RingElt::from_int(-1));
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElt {
        &self.entries[4 * i + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElt) {
        self.entries[4 * i + j] = v;
    }

    pub fn transpose(&self) -> Matrix4 {
        let mut m = Matrix4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, o: &Matrix4) -> Matrix4 {
        let mut m = Matrix4::zero();
        for i in 0..4 {
            for j in 0..4 {
                let s: RingElt = (0..4).map(|k| self.get(i, k) * o.get(k, j)).sum();
                m.set(i, j, s);
            }
        }
        m
    }

    pub fn scale(&self, c: &RingElt) -> Matrix4 {
        Matrix4 {
            entries: self.entries.iter().map(|x| x * c).collect(),
            similitude: None,
        }
    }

    /// Equality of entries, ignoring the similitude tag.
    pub fn same_entries(&self, o: &Matrix4) -> bool {
        self.entries == o.entries
    }
}

/// Returns `lambda` iff `g^t J g = lambda J` exactly.
pub fn check_similitude(g: &Matrix4) -> Option<RingElt> {
    check_similitude_mod(g, &Relations::new())
}

/// As [`check_similitude`], comparing entries after applying `rel`.
pub fn check_similitude_mod(g: &Matrix4, rel: &Relations) -> Option<RingElt> {
    let m = g.transpose().mul(&Matrix4::j()).mul(g);
    let lambda = rel.apply(m.get(0, 2));
    let target = Matrix4::j().scale(&lambda);
    let ok = m
        .entries
        .iter()
        .zip(&target.entries)
        .all(|(x, y)| rel.apply(&(x - y)).is_zero());
    ok.then_some(lambda)
}

/// The symplectic direct sum of two GL(2) parameter images.
pub fn build_split_parameter(m1: &Matrix2, m2: &Matrix2) -> Result<Matrix4, PacketError> {
    let (d1, d2) = (m1.det(), m2.det());
    if d1 != d2 {
        return Err(PacketError::DeterminantMismatch(d1, d2));
    }
    let [a1, b1, c1, dd1] = m1.entries.clone();
    let [a2, b2, c2, dd2] = m2.entries.clone();
    let z = RingElt::zero;
    let mut g = Matrix4::from_rows([
        [a1, z(), b1, z()],
        [z(), a2, z(), b2],
        [c1, z(), dd1, z()],
        [z(), c2, z(), dd2],
    ]);
    g.similitude = Some(d1);
    Ok(g)
}

/// The induced parameter evaluated at `y` in `W'_E` and at the coset
/// representative `g0`. Inputs are `phi0(y)`, `phi0(g0 y g0^{-1})`,
/// `phi0(g0^2)` and `eta(g0)`.
pub fn build_induced_parameter(
    phi0_y: &Matrix2,
    phi0_conj: &Matrix2,
    phi0_g0sq: &Matrix2,
    eta_g0: &RingElt,
) -> Result<(Matrix4, Matrix4), PacketError> {
    let eta_inv = eta_g0
        .inverse()
        .map_err(|_| PacketError::NonInvertibleEta(eta_g0.clone()))?;
    let (dy, dc) = (phi0_y.det(), phi0_conj.det());
    if dy != dc {
        return Err(PacketError::DeterminantMismatch(dy, dc));
    }
    let d0 = phi0_g0sq.det();
    let eta_sq = eta_g0 * eta_g0;
    if d0 != eta_sq {
        return Err(PacketError::DeterminantMismatch(d0, eta_sq));
    }
    let z = RingElt::zero;
    let [a, b, c, d] = phi0_y.entries.clone();
    let [a1, b1, c1, d1] = phi0_conj.entries.clone();
    let mut gy = Matrix4::from_rows([
        [a, z(), &eta_inv * &b, z()],
        [z(), a1, z(), b1],
        [eta_g0 * &c, z(), d, z()],
        [z(), c1, z(), d1],
    ]);
    gy.similitude = Some(dy);
    let [a0, b0, c0, d0e] = phi0_g0sq.entries.clone();
    let mut g0 = Matrix4::from_rows([
        [z(), RingElt::one(), z(), z()],
        [a0, z(), &eta_inv * &b0, z()],
        [z(), z(), z(), eta_g0.clone()],
        [c0, z(), &eta_inv * &d0e, z()],
    ]);
    g0.similitude = Some(eta_g0.clone());
    Ok((gy, g0))
}

/// Group labels of the irreducible representations of GSp(4).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Group {
    I,
    IIa,
    IIb,
    IIIa,
    IIIb,
    IVc,
    IVd,
    Va,
    Vb,
    VbStar,
    Vd,
    VIa,
    VIb,
    VIc,
    VId,
    VII,
    VIIIa,
    VIIIb,
    IXa,
    IXb,
    X,
    XIa,
    XIb,
    XIbStar,
    XIIaStar,
    XIIbStar,
    XIIIStar,
}

impl Group {
    pub const ALL: [Group; 27] = [
        Group::I,
        Group::IIa,
        Group::IIb,
        Group::IIIa,
        Group::IIIb,
        Group::IVc,
        Group::IVd,
        Group::Va,
        Group::Vb,
        Group::VbStar,
        Group::Vd,
        Group::VIa,
        Group::VIb,
        Group::VIc,
        Group::VId,
        Group::VII,
        Group::VIIIa,
        Group::VIIIb,
        Group::IXa,
        Group::IXb,
        Group::X,
        Group::XIa,
        Group::XIb,
        Group::XIbStar,
        Group::XIIaStar,
        Group::XIIbStar,
        Group::XIIIStar,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Group::I => "I",
            Group::IIa => "IIa",
            Group::IIb => "IIb",
            Group::IIIa => "IIIa",
            Group::IIIb => "IIIb",
            Group::IVc => "IVc",
            Group::IVd => "IVd",
            Group::Va => "Va",
            Group::Vb => "Vb",
            Group::VbStar => "Vb*",
            Group::Vd => "Vd",
            Group::VIa => "VIa",
            Group::VIb => "VIb",
            Group::VIc => "VIc",
            Group::VId => "VId",
            Group::VII => "VII",
            Group::VIIIa => "VIIIa",
            Group::VIIIb => "VIIIb",
            Group::IXa => "IXa",
            Group::IXb => "IXb",
            Group::X => "X",
            Group::XIa => "XIa",
            Group::XIb => "XIb",
            Group::XIbStar => "XIb*",
            Group::XIIaStar => "XIIa*",
            Group::XIIbStar => "XIIb*",
            Group::XIIIStar => "XIII*",
        }
    }

    pub fn parse(s: &str) -> Option<Group> {
        Group::ALL.into_iter().find(|g| g.as_str() == s)
    }

    pub fn is_supercuspidal(self) -> bool {
        self.as_str().ends_with('*')
    }

    /// Groups whose members are generic.
    pub fn is_generic(self) -> bool {
        matches!(
            self,
            Group::I
                | Group::IIa
                | Group::IIIa
                | Group::Va
                | Group::VIa
                | Group::VII
                | Group::VIIIa
                | Group::IXa
                | Group::X
                | Group::XIa
                | Group::XIIaStar
                | Group::XIIIStar
        )
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Constructors appearing in the packet column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ctor {
    /// `a × b ⋊ c` or `a ⋊ b`.
    Induced,
    /// Langlands quotient `L(a, b)`.
    Langlands,
    /// Essentially discrete series `δ(a, b)`.
    Delta,
    TauS,
    TauT,
    /// `a 1_{GSp(4)}`.
    Twist,
    /// A supercuspidal constituent, rendered by its description.
    Supercuspidal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constituent {
    pub group: Group,
    pub ctor: Ctor,
    pub args: Vec<String>,
}

impl fmt::Display for Constituent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = &self.args;
        match self.ctor {
            Ctor::Induced => match a.len() {
                3 => write!(f, "{} × {} ⋊ {}", a[0], a[1], a[2]),
                _ => write!(f, "{} ⋊ {}", a[0], a[1]),
            },
            Ctor::Langlands => write!(f, "L({})", a.join(", ")),
            Ctor::Delta => write!(f, "δ({})", a.join(", ")),
            Ctor::TauS => write!(f, "τ(S, {})", a[0]),
            Ctor::TauT => write!(f, "τ(T, {})", a[0]),
            Ctor::Twist => write!(f, "{} 1_{{GSp(4)}}", a[0]),
            Ctor::Supercuspidal => f.write_str(&a[0]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PacketDescriptor {
    pub group_labels: Vec<Group>,
    pub constituents: Vec<Constituent>,
    /// Index of the generic constituent; `None` for packets of
    /// non-tempered representations without a generic member.
    pub generic_index: Option<usize>,
}

impl PacketDescriptor {
    fn new(constituents: Vec<Constituent>) -> Self {
        let group_labels = constituents.iter().map(|c| c.group).collect();
        let generic_index = constituents.iter().position(|c| c.group.is_generic());
        PacketDescriptor {
            group_labels,
            constituents,
            generic_index,
        }
    }

    pub fn labels(&self) -> String {
        let v: Vec<&str> = self.group_labels.iter().map(|g| g.as_str()).collect();
        v.join(", ")
    }

    pub fn generic(&self) -> Option<&Constituent> {
        self.generic_index.map(|i| &self.constituents[i])
    }
}

impl fmt::Display for PacketDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.constituents.iter().map(|c| c.to_string()).collect();
        write!(f, "{}: {}", self.labels(), parts.join(", "))
    }
}

fn one(group: Group, ctor: Ctor, args: &[String]) -> Constituent {
    Constituent {
        group,
        ctor,
        args: args.to_vec(),
    }
}

fn sc(group: Group, text: &str) -> Constituent {
    one(group, Ctor::Supercuspidal, &[text.to_string()])
}

/// Caller-supplied options for the non-split principal series rows.
#[derive(Debug, Clone, Default)]
pub struct ClassifyOptions {
    /// The quadratic character `xi != 1` with `xi pi(alpha_1) = pi(alpha_1)`.
    /// Defaults to `omega_{E/F}`, which always has this property.
    pub xi: Option<Char>,
    pub relations: Relations,
}

/// The L-packet of the parameter built from `data`, with the generic member
/// marked.
pub fn classify_packet(data: &InducingData) -> Result<PacketDescriptor, PacketError> {
    classify_packet_with(data, &ClassifyOptions::default())
}

pub fn classify_packet_with(
    data: &InducingData,
    opts: &ClassifyOptions,
) -> Result<PacketDescriptor, PacketError> {
    match data {
        InducingData::Split { pi1, pi2 } => classify_split(pi1, pi2, &opts.relations),
        InducingData::NonSplit { ext, pi0, eta } => {
            let omega = ext.omega();
            let xi = opts.xi.clone().unwrap_or_else(|| omega.clone());
            classify_non_split(pi0, eta, &omega, &xi, &opts.relations)
        }
    }
}

fn rank(rep: &GL2Rep) -> u8 {
    match rep {
        GL2Rep::PrincipalSeries { .. } | GL2Rep::UnramifiedHecke { .. } => 0,
        GL2Rep::OneDimensional { .. } => 1,
        GL2Rep::SteinbergTwist { .. } => 2,
        GL2Rep::Supercuspidal(_) => 3,
    }
}

/// The two characters of a principal series; an unramified Hecke datum is a
/// tempered principal series with unknown unitary Satake parameter.
fn ps_chars(rep: &GL2Rep, names: [&str; 2]) -> Option<(Char, Char)> {
    match rep {
        GL2Rep::PrincipalSeries { alpha1, alpha2 } => Some((alpha1.clone(), alpha2.clone())),
        GL2Rep::UnramifiedHecke { .. } => Some((
            Char::unramified_symbol(names[0]),
            Char::unramified_symbol(names[1]),
        )),
        _ => None,
    }
}

/// `0` if `c` is no power `nu^{+-k/2}`, else the sign of the matching power.
fn nu_sign(c: &Char, k: i64, rel: &Relations) -> Result<i8, PacketError> {
    if c.is_nu_half_power(k, rel)? {
        Ok(1)
    } else if c.is_nu_half_power(-k, rel)? {
        Ok(-1)
    } else {
        Ok(0)
    }
}

fn inv(c: &Char) -> String {
    match c.name.strip_suffix("^{-1}") {
        Some(base) => base.to_string(),
        None => format!("{}^{{-1}}", c.name),
    }
}

fn sc_name(s: &Supercuspidal) -> &str {
    &s.name
}

fn classify_split(pi1: &GL2Rep, pi2: &GL2Rep, rel: &Relations) -> Result<PacketDescriptor, PacketError> {
    let (pi1, pi2) = if rank(pi1) <= rank(pi2) { (pi1, pi2) } else { (pi2, pi1) };
    use Ctor::*;
    use Group::*;
    let c = match (rank(pi1), pi2) {
        (0, _) if rank(pi2) == 0 => {
            let (a1, a2) = ps_chars(pi1, ["α_1", "α_2"]).unwrap_or_else(|| unreachable!());
            let (b1, b2) = ps_chars(pi2, ["α_1'", "α_2'"]).unwrap_or_else(|| unreachable!());
            let a2i = a2.inverse()?;
            let e1 = nu_sign(&b1.mul(&a2i), 2, rel)?;
            let e2 = nu_sign(&b2.mul(&a2i), 2, rel)?;
            let (x1, x2, y1, y2) = (&a1.name, &a2.name, &b1.name, &b2.name);
            let iiib = |s: String, t: String| vec![one(IIIb, Induced, &[s, t])];
            match (e1, e2) {
                (0, 0) => vec![one(
                    I,
                    Induced,
                    &[format!("{y1}{}", inv(&a2)), format!("{y2}{}", inv(&a2)), x2.clone()],
                )],
                (0, 1) => iiib(format!("{y1}{}", inv(&a2)), format!("ν^{{1/2}}{x2} 1_{{GSp(2)}}")),
                (0, _) => iiib(format!("{y2}{}", inv(&a1)), format!("ν^{{1/2}}{x1} 1_{{GSp(2)}}")),
                (1, 0) => iiib(format!("{y2}{}", inv(&a2)), format!("ν^{{1/2}}{x2} 1_{{GSp(2)}}")),
                (1, 1) => iiib("ν".into(), format!("ν^{{1/2}}{x2} 1_{{GSp(2)}}")),
                (1, _) => iiib("ν".into(), format!("ν^{{-1/2}}{x1} 1_{{GSp(2)}}")),
                (_, 0) => iiib(format!("{y1}{}", inv(&a1)), format!("ν^{{1/2}}{x1} 1_{{GSp(2)}}")),
                (_, 1) => iiib("ν".into(), format!("ν^{{-1/2}}{x1} 1_{{GSp(2)}}")),
                (_, _) => iiib("ν".into(), format!("ν^{{1/2}}{x1} 1_{{GSp(2)}}")),
            }
        }
        (0, GL2Rep::OneDimensional { alpha }) => {
            let (_, a2) = ps_chars(pi1, ["α_1", "α_2"]).unwrap_or_else(|| unreachable!());
            if nu_sign(&alpha.mul(&a2.inverse()?), 3, rel)? != 0 {
                vec![one(IVd, Twist, core::slice::from_ref(&alpha.name))]
            } else {
                vec![one(
                    IIb,
                    Induced,
                    &[format!("{}{} 1_{{GL(2)}}", alpha.name, inv(&a2)), a2.name.clone()],
                )]
            }
        }
        (0, GL2Rep::SteinbergTwist { alpha }) => {
            let (_, a2) = ps_chars(pi1, ["α_1", "α_2"]).unwrap_or_else(|| unreachable!());
            if nu_sign(&alpha.mul(&a2.inverse()?), 3, rel)? != 0 {
                vec![one(
                    IVc,
                    Langlands,
                    &["ν^{3/2} St_{GL(2)}".into(), format!("ν^{{-3/2}}{}", alpha.name)],
                )]
            } else {
                vec![one(
                    IIa,
                    Induced,
                    &[format!("{}{} St_{{GL(2)}}", alpha.name, inv(&a2)), a2.name.clone()],
                )]
            }
        }
        (0, GL2Rep::Supercuspidal(s)) => {
            let (_, a2) = ps_chars(pi1, ["α_1", "α_2"]).unwrap_or_else(|| unreachable!());
            vec![one(X, Induced, &[format!("{} {}", inv(&a2), sc_name(s)), a2.name.clone()])]
        }
        (1, _) => {
            let GL2Rep::OneDimensional { alpha: a } = pi1 else { unreachable!() };
            let an = &a.name;
            match pi2 {
                GL2Rep::OneDimensional { alpha: b } => {
                    if a.equals(b, rel)? {
                        vec![one(VId, Langlands, &["ν".into(), format!("1_{{F^×}} ⋊ ν^{{-1/2}}{an}")])]
                    } else {
                        let ab = format!("{}{}", inv(a), b.name);
                        vec![one(Vd, Langlands, &[format!("ν{ab}"), format!("{ab} ⋊ ν^{{-1/2}}{an}")])]
                    }
                }
                GL2Rep::SteinbergTwist { alpha: b } => {
                    if a.equals(b, rel)? {
                        vec![one(VIc, Langlands, &["ν^{1/2} St_{GL(2)}".into(), format!("ν^{{-1/2}}{an}")])]
                    } else {
                        vec![one(
                            Vb,
                            Langlands,
                            &[
                                format!("ν^{{1/2}}{}{} St_{{GL(2)}}", inv(a), b.name),
                                format!("ν^{{-1/2}}{an}"),
                            ],
                        )]
                    }
                }
                GL2Rep::Supercuspidal(s) => vec![one(
                    XIb,
                    Langlands,
                    &[format!("ν^{{1/2}}{} {}", inv(a), sc_name(s)), format!("ν^{{-1/2}}{an}")],
                )],
                _ => unreachable!(),
            }
        }
        (2, _) => {
            let GL2Rep::SteinbergTwist { alpha: a } = pi1 else { unreachable!() };
            let an = &a.name;
            match pi2 {
                GL2Rep::SteinbergTwist { alpha: b } => {
                    if a.equals(b, rel)? {
                        let arg = format!("ν^{{-1/2}}{an}");
                        vec![one(VIa, TauS, core::slice::from_ref(&arg)), one(VIb, TauT, &[arg])]
                    } else {
                        let ab = format!("{}{}", inv(a), b.name);
                        vec![
                            one(Va, Delta, &[format!("[{ab}, ν{ab}]"), format!("ν^{{-1/2}}{an}")]),
                            sc(VbStar, "supercuspidal"),
                        ]
                    }
                }
                GL2Rep::Supercuspidal(s) => vec![
                    one(
                        XIa,
                        Delta,
                        &[format!("ν^{{1/2}}{} {}", inv(a), sc_name(s)), format!("ν^{{-1/2}}{an}")],
                    ),
                    sc(XIbStar, "supercuspidal"),
                ],
                _ => unreachable!(),
            }
        }
        _ => {
            let (GL2Rep::Supercuspidal(s1), GL2Rep::Supercuspidal(s2)) = (pi1, pi2) else {
                unreachable!()
            };
            if s1.name == s2.name {
                vec![
                    one(VIIIa, TauS, core::slice::from_ref(&s1.name)),
                    one(VIIIb, TauT, core::slice::from_ref(&s1.name)),
                ]
            } else {
                vec![
                    sc(XIIaStar, "two element supercuspidal L-packet"),
                    sc(XIIbStar, "two element supercuspidal L-packet"),
                ]
            }
        }
    };
    Ok(PacketDescriptor::new(c))
}

fn galois_flag(c: &Char) -> Result<bool, PacketError> {
    match &c.galois {
        Some(g) => Ok(g.sigma_invariant),
        // Unramified characters of E are Galois-invariant.
        None if c.is_unramified() => Ok(true),
        None => Err(PacketError::MissingData(format!(
            "Galois data for the character {}",
            c.name
        ))),
    }
}

fn descent_square(c: &Char) -> Result<SquareClass, PacketError> {
    c.galois
        .as_ref()
        .and_then(|g| g.descends.as_ref())
        .map(|d| d.square_is)
        .ok_or_else(|| PacketError::MissingData(format!("descent data for {}", c.name)))
}

fn hat(c: &Char) -> String {
    format!("\\hat{{{}}}", c.name)
}

fn classify_non_split(
    pi0: &GL2Rep,
    eta: &Char,
    omega: &Char,
    xi: &Char,
    rel: &Relations,
) -> Result<PacketDescriptor, PacketError> {
    use Ctor::*;
    use Group::*;
    let w = "ω_{E/F}";
    let eta_is_one = matches!(eta.is_trivial(), Ok(true));
    let eta_inv = if eta_is_one {
        String::new()
    } else {
        inv(eta)
    };
    let eta_n = if eta_is_one { String::new() } else { eta.name.clone() };
    let c = match pi0 {
        GL2Rep::PrincipalSeries { .. } | GL2Rep::UnramifiedHecke { .. } => {
            let (a1, a2) = ps_chars(pi0, ["α_1", "α_2"]).unwrap_or_else(|| unreachable!());
            if galois_flag(&a1)? {
                vec![one(
                    I,
                    Induced,
                    &[
                        format!("{w}{eta_inv}{}^2", hat(&a1)),
                        w.to_string(),
                        format!("{eta_n}{}^{{-1}}", hat(&a1)),
                    ],
                )]
            } else {
                let restr = a2
                    .galois
                    .as_ref()
                    .and_then(|g| g.restriction.as_deref())
                    .ok_or_else(|| {
                        PacketError::MissingData(format!("restriction of {} to F^×", a2.name))
                    })?;
                let c = omega.mul(&eta.inverse()?).mul(restr);
                let cname = format!("{w}{eta_inv}{}|_{{F^×}}", a2.name);
                let s = nu_sign(&c.mul(&xi.inverse()?), 2, rel)?;
                let pa1 = format!("π({})", a1.name);
                let pa2 = format!("π({})", a2.name);
                match s {
                    1 => vec![one(IXb, Langlands, &[format!("{}ν", xi.name), pa1])],
                    -1 => vec![one(IXb, Langlands, &[format!("{}ν", xi.name), pa2])],
                    _ if c.is_trivial()? && c.val_at_minus_one == 1 => {
                        vec![one(VIIIa, TauS, core::slice::from_ref(&pa2)), one(VIIIb, TauT, &[pa2])]
                    }
                    _ => vec![one(VII, Induced, &[cname, pa1])],
                }
            }
        }
        GL2Rep::OneDimensional { alpha } => {
            if !galois_flag(alpha)? {
                vec![one(
                    IXb,
                    Langlands,
                    &[
                        format!("ν{w}{eta_inv}{}|_{{F^×}}", alpha.name),
                        format!("ν^{{-1/2}}π({})", alpha.name),
                    ],
                )]
            } else {
                match descent_square(alpha)? {
                    SquareClass::Trivial => vec![one(
                        Vd,
                        Langlands,
                        &[format!("ν{w}"), format!("{w} ⋊ ν^{{-1/2}}{}", hat(alpha))],
                    )],
                    SquareClass::OmegaEF => vec![one(
                        IIIb,
                        Induced,
                        &[w.to_string(), format!("{} 1_{{GSp(2)}}", hat(alpha))],
                    )],
                    SquareClass::Other => {
                        return Err(PacketError::NoRowMatched(format!(
                            "{}^2 is neither η nor ηω_{{E/F}}",
                            hat(alpha)
                        )))
                    }
                }
            }
        }
        GL2Rep::SteinbergTwist { alpha } => {
            if !galois_flag(alpha)? {
                vec![one(
                    IXa,
                    Delta,
                    &[
                        format!("ν{w}{eta_inv}{}|_{{F^×}}", alpha.name),
                        format!("ν^{{-1/2}}π({})", alpha.name),
                    ],
                )]
            } else {
                match descent_square(alpha)? {
                    SquareClass::Trivial => vec![
                        one(
                            Va,
                            Delta,
                            &[format!("[{w}, ν{w}]"), format!("ν^{{-1/2}}{}", hat(alpha))],
                        ),
                        sc(VbStar, "supercuspidal"),
                    ],
                    SquareClass::OmegaEF => vec![one(
                        IIIa,
                        Induced,
                        &[w.to_string(), format!("{} St_{{GSp(2)}}", hat(alpha))],
                    )],
                    SquareClass::Other => {
                        return Err(PacketError::NoRowMatched(format!(
                            "{}^2 is neither η nor ηω_{{E/F}}",
                            hat(alpha)
                        )))
                    }
                }
            }
        }
        GL2Rep::Supercuspidal(s) => match s.galois_invariant {
            None => {
                return Err(PacketError::MissingData(format!(
                    "Galois-invariance flag of {}",
                    s.name
                )))
            }
            Some(false) => vec![sc(XIIIStar, "one element supercuspidal L-packet")],
            Some(true) => {
                let bc = s.base_change.as_ref().ok_or_else(|| {
                    PacketError::MissingData(format!("base-change data for {}", s.name))
                })?;
                match bc.central_char_of_descent {
                    SquareClass::OmegaEF => {
                        vec![one(VII, Induced, &[w.to_string(), format!("\\hat{{{}}}", s.name)])]
                    }
                    SquareClass::Trivial => vec![
                        sc(XIIaStar, "two element supercuspidal L-packet"),
                        sc(XIIbStar, "two element supercuspidal L-packet"),
                    ],
                    SquareClass::Other => {
                        return Err(PacketError::NoRowMatched(format!(
                            "central character of the descent of {} is neither η nor ηω_{{E/F}}",
                            s.name
                        )))
                    }
                }
            }
        },
    };
    Ok(PacketDescriptor::new(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localdata::{BaseChange, LocalExtension};

    fn v(s: &str) -> RingElt {
        RingElt::var(s)
    }

    #[test]
    fn similitude_examples() {
        assert_eq!(check_similitude(&Matrix4::identity()), Some(RingElt::one()));
        assert_eq!(check_similitude(&Matrix4::j()), Some(RingElt::one()));
        let d = Matrix4::diag([1, 1, 2, 2].map(RingElt::from_int));
        assert_eq!(check_similitude(&d), Some(RingElt::from_int(2)));
        let bad = Matrix4::diag([1, 2, 3, 4].map(RingElt::from_int));
        assert_eq!(check_similitude(&bad), None);
    }

    #[test]
    fn split_parameter_placement() {
        let g = build_split_parameter(&Matrix2::identity(), &Matrix2::identity()).unwrap();
        assert!(g.same_entries(&Matrix4::identity()));
        assert_eq!(g.similitude, Some(RingElt::one()));
        let a = Matrix2::diag(v("a"), v("a").inverse().unwrap());
        let b = Matrix2::diag(v("b"), v("b").inverse().unwrap());
        let g = build_split_parameter(&a, &b).unwrap();
        let expect = Matrix4::diag([
            v("a"),
            v("b"),
            v("a").inverse().unwrap(),
            v("b").inverse().unwrap(),
        ]);
        assert!(g.same_entries(&expect));
        assert_eq!(check_similitude(&g), Some(RingElt::one()));
    }

    #[test]
    fn split_parameter_generic_symbols() {
        // Second matrix is a conjugate of the first, so the determinants agree.
        let m1 = Matrix2::new(v("a"), v("b"), v("c"), v("d"));
        let p = Matrix2::new(RingElt::one(), v("t"), RingElt::zero(), RingElt::one());
        let p_inv = Matrix2::new(RingElt::one(), -v("t"), RingElt::zero(), RingElt::one());
        let m2 = p.mul(&m1).mul(&p_inv);
        let g = build_split_parameter(&m1, &m2).unwrap();
        assert_eq!(check_similitude(&g), Some(m1.det()));
        let bad = Matrix2::diag(v("a"), v("a"));
        assert!(matches!(
            build_split_parameter(&m1, &bad),
            Err(PacketError::DeterminantMismatch(..))
        ));
    }

    #[test]
    fn induced_parameter_identity_data() {
        let id = Matrix2::identity();
        let (gy, g0) = build_induced_parameter(&id, &id, &id, &RingElt::one()).unwrap();
        assert!(gy.same_entries(&Matrix4::identity()));
        let (z, o) = (RingElt::zero(), RingElt::one());
        let perm = Matrix4::from_rows([
            [z.clone(), o.clone(), z.clone(), z.clone()],
            [o.clone(), z.clone(), z.clone(), z.clone()],
            [z.clone(), z.clone(), z.clone(), o.clone()],
            [z.clone(), z.clone(), o.clone(), z.clone()],
        ]);
        assert!(g0.same_entries(&perm));
        assert_eq!(check_similitude(&g0), Some(RingElt::one()));
    }

    #[test]
    fn induced_parameter_symbolic() {
        let e = v("e");
        let y = Matrix2::new(v("a"), v("b"), v("c"), v("d"));
        let p = Matrix2::new(RingElt::one(), RingElt::zero(), v("t"), RingElt::one());
        let p_inv = Matrix2::new(RingElt::one(), RingElt::zero(), -v("t"), RingElt::one());
        let conj = p.mul(&y).mul(&p_inv);
        let sq = Matrix2::new(&e * v("x"), v("y"), RingElt::zero(), &e * v("x").inverse().unwrap());
        let (gy, g0) = build_induced_parameter(&y, &conj, &sq, &e).unwrap();
        assert_eq!(check_similitude(&gy), Some(y.det()));
        assert_eq!(check_similitude(&g0), Some(e.clone()));
        assert!(matches!(
            build_induced_parameter(&y, &conj, &sq, &(v("e") + RingElt::one())),
            Err(PacketError::NonInvertibleEta(_))
        ));
    }

    fn st(name: &str) -> GL2Rep {
        GL2Rep::steinberg(Char::unramified(name, RingElt::from_int(1)).as_quadratic())
    }

    #[test]
    fn ivd_row() {
        let pi1 = GL2Rep::PrincipalSeries {
            alpha1: Char::nu_half(3),
            alpha2: Char::nu_half(-3),
        };
        let mut a = Char::trivial().as_quadratic();
        a.name = "α".into();
        let pi2 = GL2Rep::OneDimensional { alpha: a };
        let p = classify_packet(&InducingData::split(pi1, pi2)).unwrap();
        assert_eq!(p.group_labels, vec![Group::IVd]);
        assert_eq!(p.constituents[0].to_string(), "α 1_{GSp(4)}");
        assert_eq!(p.generic_index, None);
    }

    #[test]
    fn vi_row() {
        let p = classify_packet(&InducingData::split(st("α"), st("α"))).unwrap();
        assert_eq!(p.group_labels, vec![Group::VIa, Group::VIb]);
        assert_eq!(p.constituents[0].to_string(), "τ(S, ν^{-1/2}α)");
        assert_eq!(p.constituents[1].to_string(), "τ(T, ν^{-1/2}α)");
        assert_eq!(p.generic_index, Some(0));
    }

    #[test]
    fn va_row() {
        let b = GL2Rep::steinberg(Char::unramified("β", RingElt::from_int(-1)).as_quadratic());
        let p = classify_packet(&InducingData::split(st("α"), b)).unwrap();
        assert_eq!(p.labels(), "Va, Vb*");
        assert_eq!(p.constituents[0].to_string(), "δ([α^{-1}β, να^{-1}β], ν^{-1/2}α)");
        assert!(p.group_labels[1].is_supercuspidal());
    }

    #[test]
    fn xiii_row() {
        let mut s = Supercuspidal::new("π_0", 3, 1);
        s.galois_invariant = Some(false);
        let data = InducingData::non_split(LocalExtension::inert(), GL2Rep::Supercuspidal(s));
        let p = classify_packet(&data).unwrap();
        assert_eq!(p.group_labels, vec![Group::XIIIStar]);
        assert_eq!(p.constituents[0].to_string(), "one element supercuspidal L-packet");
        assert_eq!(p.generic_index, Some(0));
    }

    #[test]
    fn non_split_supercuspidal_base_change() {
        let mut s = Supercuspidal::new("π_0", 2, 1);
        s.galois_invariant = Some(true);
        s.base_change = Some(BaseChange {
            central_char_of_descent: SquareClass::OmegaEF,
            descended_cond: None,
        });
        let data = InducingData::non_split(LocalExtension::inert(), GL2Rep::Supercuspidal(s.clone()));
        assert_eq!(classify_packet(&data).unwrap().group_labels, vec![Group::VII]);
        s.base_change.as_mut().unwrap().central_char_of_descent = SquareClass::Trivial;
        let data = InducingData::non_split(LocalExtension::inert(), GL2Rep::Supercuspidal(s));
        assert_eq!(classify_packet(&data).unwrap().labels(), "XIIa*, XIIb*");
    }

    #[test]
    fn tempered_principal_series_is_type_one() {
        let pi = |n: &str| GL2Rep::principal_series(Char::unramified_symbol(n)).unwrap();
        let p = classify_packet(&InducingData::split(pi("a"), pi("b"))).unwrap();
        assert_eq!(p.group_labels, vec![Group::I]);
        assert_eq!(p.constituents[0].to_string(), "ba × b^{-1}a ⋊ a^{-1}");
    }

    #[test]
    fn iiib_row() {
        let pi1 = GL2Rep::PrincipalSeries {
            alpha1: Char::nu_half(4),
            alpha2: Char::nu_half(-4),
        };
        let pi2 = GL2Rep::PrincipalSeries {
            alpha1: Char::nu_half(2),
            alpha2: Char::nu_half(-2),
        };
        let p = classify_packet(&InducingData::split(pi1, pi2)).unwrap();
        assert_eq!(p.group_labels, vec![Group::IIIb]);
        assert_eq!(p.constituents[0].to_string(), "νν^{-2}^{-1} ⋊ ν^{1/2}ν^{-2} 1_{GSp(2)}");
    }
}
