//! Exact multivariate Laurent polynomials over the rationals.
//!
//! Every eigenvalue, Satake parameter and power of the residue cardinality
//! lives in [`RingElt`]. Half-integral powers of `q` are written with the
//! designated variable [`SQRT_Q`] (`r`, standing for `q^{1/2}`), so the ring
//! stays a plain Laurent polynomial ring and equality is decided by normal
//! form. Concrete primes and adjoined roots of unity are handled by
//! [`Relations`], which rewrites `x^2 -> c` for chosen variables.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational coefficients.
pub type Rational = BigRational;

/// The variable standing for `q^{1/2}`.
pub const SQRT_Q: &str = "r";

/// The variable adjoined for a square root of `-1`.
pub const IMAG_UNIT: &str = "i";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("negative power of a non-monomial element `{0}`")]
    NegativePowerOfNonMonomial(String),
    #[error("cannot substitute a non-invertible value for `{0}`, which occurs with a negative exponent")]
    NonInvertibleSubstitution(String),
    #[error("variable `{0}` has no numeric binding")]
    UnboundVariable(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("inverse Euler factor must have constant term 1, found `{0}`")]
    ConstantTermNotOne(String),
    #[error("Euler factor of degree {0} exceeds 4")]
    DegreeTooLarge(usize),
}

/// A monomial: variables sorted by name, every exponent nonzero.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(String, i64)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str, exp: i64) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(alloc::vec![(name.to_string(), exp)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(String, i64)] {
        &self.0
    }

    pub fn exponent(&self, name: &str) -> i64 {
        self.0
            .iter()
            .find(|(v, _)| v == name)
            .map_or(0, |(_, e)| *e)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (&self.0[i], &other.0[j]);
            match a.0.cmp(&b.0) {
                core::cmp::Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    let e = a.1 + b.1;
                    if e != 0 {
                        out.push((a.0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    fn pow(&self, k: i64) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(v, e)| (v.clone(), e * k)).collect())
    }

    fn without(&self, name: &str) -> Monomial {
        Monomial(self.0.iter().filter(|(v, _)| v != name).cloned().collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, (v, e)) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Exact multivariate Laurent polynomial with rational coefficients.
///
/// The term map never stores a zero coefficient, so structural equality is
/// mathematical equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RingElt {
    terms: BTreeMap<Monomial, Rational>,
}

impl RingElt {
    pub fn zero() -> Self {
        RingElt::default()
    }

    pub fn one() -> Self {
        RingElt::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        RingElt::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        RingElt::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(c: Rational) -> Self {
        RingElt::term(c, Monomial::one())
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        RingElt { terms }
    }

    pub fn var(name: &str) -> Self {
        RingElt::var_pow(name, 1)
    }

    pub fn var_pow(name: &str, exp: i64) -> Self {
        RingElt::term(Rational::one(), Monomial::var(name, exp))
    }

    /// `q^{n/2}`, i.e. `r^n`.
    pub fn q_half_pow(n: i64) -> Self {
        RingElt::var_pow(SQRT_Q, n)
    }

    /// `q^n`.
    pub fn q_pow(n: i64) -> Self {
        RingElt::var_pow(SQRT_Q, 2 * n)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value as a rational, if the element is constant.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(&Rational, &Monomial)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (c, m))
        } else {
            None
        }
    }

    /// The value as `+1` or `-1`, if it is one of them.
    pub fn as_sign(&self) -> Option<i8> {
        let c = self.as_rational()?;
        if c.is_one() {
            Some(1)
        } else if (-c).is_one() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn variables(&self) -> Vec<String> {
        let mut vars: Vec<String> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.clone()))
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }

    pub fn contains_var(&self, name: &str) -> bool {
        self.terms.keys().any(|m| m.exponent(name) != 0)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> RingElt {
        if c.is_zero() {
            return RingElt::zero();
        }
        RingElt {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// Multiplicative inverse of a single nonzero term.
    pub fn inverse(&self) -> Result<RingElt, AlgebraError> {
        match self.as_monomial() {
            Some((c, m)) => Ok(RingElt::term(c.recip(), m.pow(-1))),
            None => Err(AlgebraError::NegativePowerOfNonMonomial(self.to_string())),
        }
    }

    pub fn pow(&self, k: i64) -> Result<RingElt, AlgebraError> {
        if k < 0 {
            return self.inverse()?.pow(-k);
        }
        let mut result = RingElt::one();
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    /// Simultaneous substitution of variables.
    pub fn substitute(&self, bindings: &BTreeMap<String, RingElt>) -> Result<RingElt, AlgebraError> {
        let mut out = RingElt::zero();
        for (m, c) in &self.terms {
            let mut acc = RingElt::term(c.clone(), Monomial::one());
            let mut rest = Monomial::one();
            for (v, e) in &m.0 {
                match bindings.get(v) {
                    Some(b) => {
                        let factor = b.pow(*e).map_err(|_| {
                            AlgebraError::NonInvertibleSubstitution(v.clone())
                        })?;
                        acc = &acc * &factor;
                    }
                    None => rest = rest.mul(&Monomial::var(v, *e)),
                }
            }
            for (m2, c2) in acc.terms {
                out.add_term(m2.mul(&rest), c2);
            }
        }
        Ok(out)
    }

    pub fn substitute_one(&self, name: &str, value: &RingElt) -> Result<RingElt, AlgebraError> {
        let mut b = BTreeMap::new();
        b.insert(name.to_string(), value.clone());
        self.substitute(&b)
    }

    /// Rewrites every power `name^m` as `value^{floor(m/2)} * name^{m mod 2}`.
    pub fn reduce_square(&self, name: &str, value: &Rational) -> RingElt {
        let mut out = RingElt::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(name);
            if e == 0 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            let (half, rem) = e.div_mod_floor(&2);
            let coeff = c * rational_pow(value, half);
            let mono = m.without(name).mul(&Monomial::var(name, rem));
            out.add_term(mono, coeff);
        }
        out
    }

    /// Specialises `r = q^{1/2}` to a concrete prime: afterwards every
    /// exponent of `r` is 0 or 1.
    pub fn reduce_sqrt(&self, p: u64) -> RingElt {
        self.reduce_square(SQRT_Q, &Rational::from_integer(BigInt::from(p)))
    }

    /// Floating-point evaluation in `f64`; relative error is that of a
    /// handful of `f64` multiplications per term. Only used off the exact path.
    pub fn evaluate_numeric(&self, bindings: &BTreeMap<String, f64>) -> Result<f64, AlgebraError> {
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.to_f64().unwrap_or(f64::NAN);
            for (v, e) in &m.0 {
                let x = bindings
                    .get(v)
                    .ok_or_else(|| AlgebraError::UnboundVariable(v.clone()))?;
                t *= libm::pow(*x, *e as f64);
            }
            total += t;
        }
        Ok(total)
    }
}

fn rational_pow(base: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

/// `Ok(())` iff `a - b` normalises to zero; otherwise the difference.
pub fn equals(a: &RingElt, b: &RingElt) -> Result<(), RingElt> {
    let d = a - b;
    if d.is_zero() {
        Ok(())
    } else {
        Err(d)
    }
}

/// A set of rewrite rules `x^2 -> c` applied together.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Relations {
    squares: BTreeMap<String, Rational>,
}

impl Relations {
    pub fn new() -> Self {
        Relations::default()
    }

    /// `r^2 = p`.
    pub fn prime(p: u64) -> Self {
        Relations::new().with_square(SQRT_Q, Rational::from_integer(BigInt::from(p)))
    }

    pub fn with_square(mut self, name: &str, value: Rational) -> Self {
        self.squares.insert(name.to_string(), value);
        self
    }

    /// `i^2 = -1`.
    pub fn with_imaginary_unit(self) -> Self {
        self.with_square(IMAG_UNIT, -Rational::one())
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    pub fn apply(&self, e: &RingElt) -> RingElt {
        self.squares
            .iter()
            .fold(e.clone(), |acc, (v, c)| acc.reduce_square(v, c))
    }
}

impl<'a> Add<&'a RingElt> for &'a RingElt {
    type Output = RingElt;
    fn add(self, rhs: &'a RingElt) -> RingElt {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a RingElt> for &'a RingElt {
    type Output = RingElt;
    fn sub(self, rhs: &'a RingElt) -> RingElt {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a RingElt> for &'a RingElt {
    type Output = RingElt;
    fn mul(self, rhs: &'a RingElt) -> RingElt {
        let mut out = RingElt::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &RingElt {
    type Output = RingElt;
    fn neg(self) -> RingElt {
        RingElt {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<RingElt> for RingElt {
            type Output = RingElt;
            fn $f(self, rhs: RingElt) -> RingElt { (&self).$f(&rhs) }
        }
        impl<'a> $tr<&'a RingElt> for RingElt {
            type Output = RingElt;
            fn $f(self, rhs: &'a RingElt) -> RingElt { (&self).$f(rhs) }
        }
        impl<'a> $tr<RingElt> for &'a RingElt {
            type Output = RingElt;
            fn $f(self, rhs: RingElt) -> RingElt { self.$f(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for RingElt {
    type Output = RingElt;
    fn neg(self) -> RingElt {
        -&self
    }
}

impl From<i64> for RingElt {
    fn from(n: i64) -> Self {
        RingElt::from_int(n)
    }
}

impl core::iter::Sum for RingElt {
    fn sum<I: Iterator<Item = RingElt>>(iter: I) -> Self {
        iter.fold(RingElt::zero(), |a, b| a + b)
    }
}

impl core::iter::Product for RingElt {
    fn product<I: Iterator<Item = RingElt>>(iter: I) -> Self {
        iter.fold(RingElt::one(), |a, b| a * b)
    }
}

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        alloc::format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical rendering: terms in monomial order, e.g. `3/2*a^-1*r^3 - x`.
impl fmt::Display for RingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl FromStr for RingElt {
    type Err = AlgebraError;

    /// Parses the canonical rendering, plus parentheses and integer powers of
    /// parenthesised groups.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn is_ident_start(ch: char) -> bool {
    ch.is_alphabetic() || ch == '_'
}

fn is_ident_continue(ch: char) -> bool {
    ch.is_alphanumeric() || ch == '_' || ch == '\''
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let ch = self.peek()?;
        self.pos += ch.len_utf8();
        Some(ch)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn eat(&mut self, ch: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(ch) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RingElt, AlgebraError> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RingElt, AlgebraError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<BigInt, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        self.src[start..self.pos]
            .parse::<BigInt>()
            .map_err(|_| self.error("bad integer"))
    }

    fn exponent(&mut self) -> Result<i64, AlgebraError> {
        if !self.eat('^') {
            return Ok(1);
        }
        let neg = self.eat('-');
        let n = self
            .integer()?
            .to_i64()
            .ok_or_else(|| self.error("exponent out of range"))?;
        Ok(if neg { -n } else { n })
    }

    fn factor(&mut self) -> Result<RingElt, AlgebraError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.eat('/') {
                    self.integer()?
                } else {
                    BigInt::one()
                };
                if den.is_zero() {
                    return Err(self.error("zero denominator"));
                }
                Ok(RingElt::from_rational(Rational::new(num, den)))
            }
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                let e = self.exponent()?;
                inner.pow(e)
            }
            Some(c) if is_ident_start(c) => {
                let start = self.pos;
                while self.peek().is_some_and(is_ident_continue) {
                    self.bump();
                }
                let name = &self.src[start..self.pos];
                let e = self.exponent()?;
                Ok(RingElt::var_pow(name, e))
            }
            _ => Err(self.error("expected number, variable or `(`")),
        }
    }
}

/// Specification of the residue cardinality an Euler factor refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QSpec {
    /// `q` left as `r^2` with `r` free.
    Symbolic,
    /// `q = p^f`.
    PrimePower { p: u64, f: u32 },
}

/// Inverse Euler factor `P(u) = c_0 + c_1 u + ... + c_d u^d` with `c_0 = 1`,
/// where `u` stands for `q^{-s}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerFactor {
    coeffs: Vec<RingElt>,
    q: QSpec,
}

pub const MAX_EULER_DEGREE: usize = 4;

impl EulerFactor {
    pub fn one(q: QSpec) -> Self {
        EulerFactor {
            coeffs: alloc::vec![RingElt::one()],
            q,
        }
    }

    pub fn new(mut coeffs: Vec<RingElt>, q: QSpec) -> Result<Self, AlgebraError> {
        while coeffs.len() > 1 && coeffs.last().is_some_and(RingElt::is_zero) {
            coeffs.pop();
        }
        match coeffs.first() {
            Some(c) if c.is_one() => {}
            Some(c) => return Err(AlgebraError::ConstantTermNotOne(c.to_string())),
            None => return Err(AlgebraError::ConstantTermNotOne("0".to_string())),
        }
        if coeffs.len() - 1 > MAX_EULER_DEGREE {
            return Err(AlgebraError::DegreeTooLarge(coeffs.len() - 1));
        }
        Ok(EulerFactor { coeffs, q })
    }

    pub fn coeffs(&self) -> &[RingElt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RingElt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn q_spec(&self) -> QSpec {
        self.q
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn mul(&self, other: &EulerFactor) -> Result<EulerFactor, AlgebraError> {
        let mut out = alloc::vec![RingElt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        EulerFactor::new(out, self.q)
    }

    /// Rewrites a factor in `u_E = u^f` as a factor in `u`.
    pub fn embed_base_change(&self, f: u32, base: QSpec) -> Result<EulerFactor, AlgebraError> {
        let f = f as usize;
        let mut out = alloc::vec![RingElt::zero(); self.degree() * f + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * f] = c.clone();
        }
        EulerFactor::new(out, base)
    }

    /// `P(u) -> P(scale * u)`.
    pub fn scale_variable(&self, scale: &RingElt) -> Result<EulerFactor, AlgebraError> {
        let mut power = RingElt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &power);
            power = &power * scale;
        }
        EulerFactor::new(out, self.q)
    }

    pub fn reduce(&self, rel: &Relations) -> Result<EulerFactor, AlgebraError> {
        EulerFactor::new(self.coeffs.iter().map(|c| rel.apply(c)).collect(), self.q)
    }

    pub fn substitute(&self, bindings: &BTreeMap<String, RingElt>) -> Result<EulerFactor, AlgebraError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.substitute(bindings))
            .collect::<Result<Vec<_>, _>>()?;
        EulerFactor::new(coeffs, self.q)
    }

    /// Coefficient-wise comparison; on mismatch returns the difference
    /// polynomial `self - other`.
    pub fn equals(&self, other: &EulerFactor) -> Result<(), Vec<RingElt>> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let diff: Vec<RingElt> = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        if diff.iter().all(RingElt::is_zero) {
            Ok(())
        } else {
            Err(diff)
        }
    }
}

/// Renders a polynomial in `u` from its coefficient list.
pub fn render_poly(coeffs: &[RingElt]) -> String {
    let mut parts = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let var = match i {
            0 => String::new(),
            1 => "u".to_string(),
            _ => alloc::format!("u^{i}"),
        };
        let part = if i == 0 {
            c.to_string()
        } else if c.is_one() {
            var
        } else if c.num_terms() == 1 {
            alloc::format!("{c}*{var}")
        } else {
            alloc::format!("({c})*{var}")
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

impl fmt::Display for EulerFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_poly(&self.coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn e(s: &str) -> RingElt {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(e("1 + x") * e("1 - x"), e("1 - x^2"));
    }

    #[test]
    fn monomial_inverse() {
        assert_eq!(e("a").pow(-1).unwrap(), e("a^-1"));
        assert_eq!(e("2*a^3").pow(-2).unwrap(), e("1/4*a^-6"));
    }

    #[test]
    fn negative_power_of_sum_is_rejected() {
        assert!(matches!(
            e("1 + a").pow(-1),
            Err(AlgebraError::NegativePowerOfNonMonomial(_))
        ));
    }

    #[test]
    fn r_squared_at_five() {
        assert_eq!((e("r") * e("r")).reduce_sqrt(5), RingElt::from_int(5));
    }

    #[test]
    fn reduce_sqrt_cases() {
        assert_eq!(e("r^4").reduce_sqrt(3), RingElt::from_int(9));
        assert_eq!(e("r^-1").reduce_sqrt(5), e("1/5*r"));
        assert_eq!(e("r").reduce_sqrt(7), e("r"));
        assert_eq!(e("r^-3 + a*r^2").reduce_sqrt(2), e("1/4*r + 2*a"));
    }

    #[test]
    fn imaginary_unit_relation() {
        let rel = Relations::new().with_imaginary_unit();
        assert_eq!(rel.apply(&e("i + i^-1")), RingElt::zero());
        assert_eq!(rel.apply(&e("i^2")), RingElt::from_int(-1));
    }

    #[test]
    fn substitution_examples() {
        let mut b = BTreeMap::new();
        b.insert("a".to_string(), RingElt::one());
        assert_eq!(e("a + a^-1").substitute(&b).unwrap(), RingElt::from_int(2));

        // q^{-3/2} * lambda with lambda = r^3 (a + a^-1)
        let mut b = BTreeMap::new();
        b.insert("l".to_string(), e("r^3*a + r^3*a^-1"));
        assert_eq!(e("r^-3*l").substitute(&b).unwrap(), e("a + a^-1"));

        assert_eq!(e("x").substitute(&BTreeMap::new()).unwrap(), e("x"));
    }

    #[test]
    fn substitution_into_negative_exponent_needs_monomial() {
        let mut b = BTreeMap::new();
        b.insert("a".to_string(), e("1 + b"));
        assert!(matches!(
            e("a^-1").substitute(&b),
            Err(AlgebraError::NonInvertibleSubstitution(v)) if v == "a"
        ));
        assert_eq!(e("a^2").substitute(&b).unwrap(), e("1 + 2*b + b^2"));
        b.insert("a".to_string(), RingElt::zero());
        assert!(e("a^-1").substitute(&b).is_err());
    }

    #[test]
    fn equality_with_witness() {
        let q = e("r^2");
        assert!(equals(&q, &RingElt::q_pow(1)).is_ok());
        let lhs = e("1 - a*u") * e("1 - a^-1*u");
        assert!(equals(&lhs, &e("1 - a*u - a^-1*u + u^2")).is_ok());
        assert_eq!(equals(&e("a"), &e("a'")), Err(e("a - a'")));
    }

    #[test]
    fn numeric_evaluation() {
        let mut b = BTreeMap::new();
        b.insert("r".to_string(), libm::sqrt(2.0));
        assert!((e("r^2").evaluate_numeric(&b).unwrap() - 2.0).abs() < 1e-12);
        b.insert("r".to_string(), libm::sqrt(5.0));
        let v = e("r^-3").evaluate_numeric(&b).unwrap();
        assert!((v - 0.089_442_719_099_991_6).abs() < 1e-12);
        let mut b = BTreeMap::new();
        b.insert("a".to_string(), 2.0);
        assert_eq!(e("a + a^-1").evaluate_numeric(&b).unwrap(), 2.5);
        assert_eq!(
            e("z").evaluate_numeric(&b),
            Err(AlgebraError::UnboundVariable("z".to_string()))
        );
    }

    #[test]
    fn canonical_rendering() {
        let x = e("r^3*a^-1*3/2");
        assert_eq!(x.to_string(), "3/2*a^-1*r^3");
        assert_eq!(e("0").to_string(), "0");
        assert_eq!(e("-x + 1").to_string(), "1 - x");
        assert_eq!(e("-x - 2*y^2").to_string(), "-x - 2*y^2");
        assert_eq!(e("α*α'").to_string(), "α*α'");
    }

    #[test]
    fn parse_errors_report_position() {
        assert!(matches!("1 + ".parse::<RingElt>(), Err(AlgebraError::Parse { .. })));
        assert!(matches!("a^".parse::<RingElt>(), Err(AlgebraError::Parse { .. })));
        assert!(matches!("1/0".parse::<RingElt>(), Err(AlgebraError::Parse { .. })));
        assert!(matches!("a b".parse::<RingElt>(), Err(AlgebraError::Parse { pos: 2, .. })));
    }

    #[test]
    fn euler_factor_normalisation() {
        let f = EulerFactor::new(vec![e("1"), e("-a - a^-1"), e("1"), e("0")], QSpec::Symbolic).unwrap();
        assert_eq!(f.degree(), 2);
        assert!(EulerFactor::new(vec![e("2")], QSpec::Symbolic).is_err());
        let big = vec![RingElt::one(); 6];
        assert!(matches!(
            EulerFactor::new(big, QSpec::Symbolic),
            Err(AlgebraError::DegreeTooLarge(5))
        ));
    }

    #[test]
    fn base_change_embedding_uses_multiples_of_f() {
        let f = EulerFactor::new(vec![e("1"), e("-a - a^-1"), e("1")], QSpec::Symbolic).unwrap();
        let g = f.embed_base_change(2, QSpec::Symbolic).unwrap();
        assert_eq!(g.coeffs(), &[e("1"), e("0"), e("-a - a^-1"), e("0"), e("1")]);
        assert_eq!(g.to_string(), "1 + (-a^-1 - a)*u^2 + u^4");
    }
}
