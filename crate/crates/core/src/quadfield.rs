//! Real quadratic fields `E = Q(sqrt D)` and their local behaviour at a
//! rational prime.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuadError {
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("D = {0} does not define a real quadratic field (need D > 1)")]
    NotRealQuadratic(i64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("inconsistent places over {p}: {msg}")]
    InconsistentPlaces { p: u64, msg: String },
    #[error("{0} splits; the quadratic character of a split prime is trivial")]
    SplitPrime(u64),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn is_squarefree(n: u64) -> bool {
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d * d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

/// `val_p(n)` for `n > 0`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Discriminant of `Q(sqrt D)`.
pub fn discriminant(d: i64) -> Result<u64, QuadError> {
    if d <= 1 {
        return Err(QuadError::NotRealQuadratic(d));
    }
    let d = d as u64;
    if !is_squarefree(d) {
        return Err(QuadError::NotSquarefree(d));
    }
    Ok(if d % 4 == 1 { d } else { 4 * d })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadField {
    radicand: u64,
    disc: u64,
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self, QuadError> {
        let disc = discriminant(d)?;
        Ok(QuadField {
            radicand: d as u64,
            disc,
        })
    }

    /// The squarefree `D`.
    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    /// `d_E`.
    pub fn discriminant(&self) -> u64 {
        self.disc
    }

    /// Primes dividing `d_E`, ascending.
    pub fn ramified_primes(&self) -> Vec<u64> {
        let mut n = self.disc;
        let mut out = Vec::new();
        let mut p = 2;
        while n > 1 {
            if n.is_multiple_of(p) {
                out.push(p);
                while n.is_multiple_of(p) {
                    n /= p;
                }
            }
            p += 1;
        }
        out
    }

    pub fn place_data(&self, p: u64) -> Result<PlaceData, QuadError> {
        splitting_type(self, p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SplitType {
    Split,
    Inert,
    Ramified,
}

impl SplitType {
    pub fn as_str(self) -> &'static str {
        match self {
            SplitType::Split => "split",
            SplitType::Inert => "inert",
            SplitType::Ramified => "ramified",
        }
    }
}

impl fmt::Display for SplitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitType::Split => "Split",
            SplitType::Inert => "Inert",
            SplitType::Ramified => "Ramified",
        })
    }
}

/// Local data of `E` above a rational prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlaceData {
    pub p: u64,
    pub split_type: SplitType,
    /// Residue degree.
    pub f: u32,
    /// Ramification index.
    pub e: u32,
    /// `val_p(d_E)`.
    pub d: u32,
    pub num_places: u32,
}

impl PlaceData {
    fn new(p: u64, split_type: SplitType, d: u32) -> Self {
        let (f, e, num_places) = match split_type {
            SplitType::Split => (1, 1, 2),
            SplitType::Inert => (2, 1, 1),
            SplitType::Ramified => (1, 2, 1),
        };
        PlaceData {
            p,
            split_type,
            f,
            e,
            d,
            num_places,
        }
    }
}

pub fn splitting_type(field: &QuadField, p: u64) -> Result<PlaceData, QuadError> {
    if !is_prime(p) {
        return Err(QuadError::NotPrime(p));
    }
    let disc = field.disc;
    if disc.is_multiple_of(p) {
        return Ok(PlaceData::new(p, SplitType::Ramified, valuation(disc, p)));
    }
    let split = if p == 2 {
        disc % 8 == 1
    } else {
        pow_mod(disc % p, (p - 1) / 2, p) == 1
    };
    let t = if split {
        SplitType::Split
    } else {
        SplitType::Inert
    };
    Ok(PlaceData::new(p, t, 0))
}

/// A place of `E` over `p`; `index` is 0 or 1 at split primes, 0 otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PlaceId {
    pub p: u64,
    pub index: u8,
}

impl PlaceId {
    pub fn new(p: u64, index: u8) -> Self {
        PlaceId { p, index }
    }
}

/// A positive integer kept as its factorisation `p -> val_p`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FactoredLevel(BTreeMap<u64, u32>);

impl FactoredLevel {
    pub fn from_map(map: BTreeMap<u64, u32>) -> Self {
        FactoredLevel(map.into_iter().filter(|(_, v)| *v > 0).collect())
    }

    pub fn valuation(&self, p: u64) -> u32 {
        self.0.get(&p).copied().unwrap_or(0)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.keys().copied()
    }

    pub fn factors(&self) -> &BTreeMap<u64, u32> {
        &self.0
    }

    pub fn to_biguint(&self) -> BigUint {
        self.0
            .iter()
            .fold(BigUint::from(1u32), |acc, (p, v)| acc * BigUint::from(*p).pow(*v))
    }
}

/// Renders as `2^2*3^2*5^4`, or `1` for the trivial level.
impl fmt::Display for FactoredLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *v == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{v}")?;
            }
        }
        Ok(())
    }
}

/// `N = d_E^2 * Norm(level)`, from the local valuations `val_w` of the level
/// ideal at the places where it is nonzero.
pub fn paramodular_level(
    field: &QuadField,
    level_vals: &BTreeMap<PlaceId, u32>,
) -> Result<FactoredLevel, QuadError> {
    let mut vals: BTreeMap<u64, u32> = BTreeMap::new();
    for p in field.ramified_primes() {
        vals.insert(p, 2 * valuation(field.disc, p));
    }
    for (place, v) in level_vals {
        let data = splitting_type(field, place.p)?;
        if u32::from(place.index) >= data.num_places {
            return Err(QuadError::InconsistentPlaces {
                p: place.p,
                msg: alloc::format!(
                    "place index {} but {} is {} with {} place(s)",
                    place.index,
                    place.p,
                    data.split_type.as_str(),
                    data.num_places
                ),
            });
        }
        *vals.entry(place.p).or_default() += data.f * v;
    }
    Ok(FactoredLevel::from_map(vals))
}

/// `omega_{E_w/Q_p}(-1)`, computed as the Hilbert symbol `(-1, d_E)_p`.
pub fn omega_minus_one(field: &QuadField, p: u64) -> Result<i8, QuadError> {
    let data = splitting_type(field, p)?;
    match data.split_type {
        SplitType::Split => Err(QuadError::SplitPrime(p)),
        SplitType::Inert => Ok(1),
        SplitType::Ramified => Ok(hilbert_minus_one(field.disc, p)),
    }
}

/// `(-1, b)_p` for a positive integer `b`.
fn hilbert_minus_one(b: u64, p: u64) -> i8 {
    let beta = valuation(b, p);
    let unit = b / p.pow(beta);
    if p == 2 {
        // (-1)^{eps(unit)}, eps(u) = (u - 1)/2 mod 2
        if unit % 4 == 1 {
            1
        } else {
            -1
        }
    } else if beta.is_multiple_of(2) || p % 4 == 1 {
        1
    } else {
        -1
    }
}

/// Exhaustive test whether `x^2 - D y^2 = -1 (mod p^k)` has a solution with
/// `x` or `y` a unit. Cost is `O(p^k)`.
pub fn norm_search_oracle(field: &QuadField, p: u64, k: u32) -> bool {
    let m = p.pow(k);
    let mut square = alloc::vec![false; m as usize];
    let mut unit_square = alloc::vec![false; m as usize];
    for x in 0..m {
        let s = ((x as u128 * x as u128) % m as u128) as usize;
        square[s] = true;
        if x % p != 0 {
            unit_square[s] = true;
        }
    }
    let dm = field.radicand % m;
    (0..m).any(|y| {
        let dy2 = ((dm as u128 * ((y as u128 * y as u128) % m as u128)) % m as u128) as u64;
        let target = ((dy2 + m - 1) % m) as usize;
        if y % p != 0 {
            square[target]
        } else {
            unit_square[target]
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(5), Ok(5));
        assert_eq!(discriminant(2), Ok(8));
        assert_eq!(discriminant(3), Ok(12));
        assert_eq!(discriminant(12), Err(QuadError::NotSquarefree(12)));
        assert_eq!(discriminant(1), Err(QuadError::NotRealQuadratic(1)));
        assert_eq!(discriminant(-3), Err(QuadError::NotRealQuadratic(-3)));
    }

    #[test]
    fn splitting_examples() {
        let e = QuadField::new(5).unwrap();
        // 4^2 = 16 = 5 mod 11
        assert_eq!(splitting_type(&e, 11).unwrap().split_type, SplitType::Split);
        let five = splitting_type(&e, 5).unwrap();
        assert_eq!(five.split_type, SplitType::Ramified);
        assert_eq!((five.f, five.e, five.d, five.num_places), (1, 2, 1, 1));
        let two = splitting_type(&e, 2).unwrap();
        assert_eq!(two.split_type, SplitType::Inert);
        assert_eq!((two.f, two.e, two.d, two.num_places), (2, 1, 0, 1));
        assert_eq!(splitting_type(&e, 9), Err(QuadError::NotPrime(9)));
    }

    #[test]
    fn ramified_prime_two_has_larger_discriminant_valuation() {
        let e = QuadField::new(2).unwrap();
        assert_eq!(splitting_type(&e, 2).unwrap().d, 3);
        let e = QuadField::new(3).unwrap();
        assert_eq!(splitting_type(&e, 2).unwrap().d, 2);
        assert_eq!(e.ramified_primes(), vec![2, 3]);
    }

    fn places(entries: &[(u64, u8, u32)]) -> BTreeMap<PlaceId, u32> {
        entries
            .iter()
            .map(|&(p, i, v)| (PlaceId::new(p, i), v))
            .collect()
    }

    #[test]
    fn level_examples() {
        let e = QuadField::new(5).unwrap();
        let n = paramodular_level(&e, &places(&[(2, 0, 1), (3, 0, 1), (5, 0, 2)])).unwrap();
        assert_eq!(n.to_biguint(), BigUint::from(22500u32));
        assert_eq!(n.to_string(), "2^2*3^2*5^4");
        let n = paramodular_level(&e, &BTreeMap::new()).unwrap();
        assert_eq!(n.to_biguint(), BigUint::from(25u32));
        let n = paramodular_level(&e, &places(&[(11, 0, 3)])).unwrap();
        assert_eq!(n.valuation(11), 3);
        assert_eq!(n.to_biguint(), BigUint::from(25u32 * 1331));
    }

    #[test]
    fn second_place_over_inert_prime_is_rejected() {
        let e = QuadField::new(5).unwrap();
        assert!(matches!(
            paramodular_level(&e, &places(&[(2, 1, 1)])),
            Err(QuadError::InconsistentPlaces { p: 2, .. })
        ));
        assert!(paramodular_level(&e, &places(&[(11, 1, 1)])).is_ok());
        assert!(paramodular_level(&e, &places(&[(11, 2, 1)])).is_err());
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega_minus_one(&QuadField::new(5).unwrap(), 5), Ok(1));
        assert_eq!(omega_minus_one(&QuadField::new(3).unwrap(), 3), Ok(-1));
        assert_eq!(omega_minus_one(&QuadField::new(5).unwrap(), 2), Ok(1));
        assert_eq!(
            omega_minus_one(&QuadField::new(5).unwrap(), 11),
            Err(QuadError::SplitPrime(11))
        );
    }

    #[test]
    fn norm_oracle_examples() {
        assert!(norm_search_oracle(&QuadField::new(5).unwrap(), 5, 6));
        assert!(!norm_search_oracle(&QuadField::new(3).unwrap(), 3, 6));
        assert!(norm_search_oracle(&QuadField::new(5).unwrap(), 2, 6));
    }
}
