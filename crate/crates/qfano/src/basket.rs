//! Terminal quotient singularity baskets.
//!
//! A terminal cyclic quotient point of a threefold has type `1/r(1,a,r-a)`
//! with `gcd(a,r) = 1`; the pairs `(r,a)` and `(r,r-a)` denote the same
//! point, and we store the canonical representative `a <= r-a`. A basket is
//! a multiset of such points, possibly *undecorated* (index `r` known, the
//! weight `a` not), as in candidate tables that list only indices.
//!
//! Basket entries are bookkeeping devices for Riemann-Roch, not physical
//! singular points; a non-cyclic terminal point contributes its virtual
//! cyclic points here.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;

use crate::rational::{rat, Rational};

/// Errors from basket construction, parsing and transforms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasketError {
    /// Index `r` must be at least 2.
    IndexTooSmall { r: u32 },
    /// Weight out of range: need `1 <= a <= r-1`.
    WeightOutOfRange { r: u32, a: u32 },
    /// `gcd(a, r) = 1` fails, so `1/r(1,a,r-a)` is not terminal.
    NotCoprime { r: u32, a: u32 },
    /// Text does not match the basket grammar `item ("," item)*`.
    Malformed(String),
    /// Operation needs weights but the basket entry is index-only.
    Undecorated { r: u32 },
    /// The requested point is not in the basket.
    PointAbsent { r: u32, a: u32 },
    /// Torsion criterion is stated for primes up to 7 only.
    BadTorsionPrime { n: u32 },
}

impl fmt::Display for BasketError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasketError::IndexTooSmall { r } => write!(f, "point index {r} is below 2"),
            BasketError::WeightOutOfRange { r, a } => {
                write!(f, "weight {a} out of range for index {r}")
            }
            BasketError::NotCoprime { r, a } => {
                write!(f, "1/{r}(1,{a},{}) is not terminal: gcd({a},{r}) > 1", r - a)
            }
            BasketError::Malformed(s) => write!(f, "malformed basket item {s:?}"),
            BasketError::Undecorated { r } => {
                write!(f, "index-{r} entry carries no weight; operation needs a decorated basket")
            }
            BasketError::PointAbsent { r, a } => write!(f, "point {r}:{a} is not in the basket"),
            BasketError::BadTorsionPrime { n } => {
                write!(f, "torsion criterion needs a prime n <= 7, got {n}")
            }
        }
    }
}

impl core::error::Error for BasketError {}

/// A terminal cyclic quotient point `1/r(1,a,r-a)`, stored with
/// `1 <= a <= r/2` and `gcd(a,r) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuotientPoint {
    r: u32,
    a: u32,
}

impl QuotientPoint {
    /// Canonicalizes `(r, a)`: reduces `a` mod `r` and folds `a -> r-a`.
    pub fn new(r: u32, a: u32) -> Result<Self, BasketError> {
        if r < 2 {
            return Err(BasketError::IndexTooSmall { r });
        }
        let a = a % r;
        if a == 0 {
            return Err(BasketError::WeightOutOfRange { r, a });
        }
        if a.gcd(&r) != 1 {
            return Err(BasketError::NotCoprime { r, a });
        }
        Ok(QuotientPoint { r, a: a.min(r - a) })
    }

    pub fn index(&self) -> u32 {
        self.r
    }

    pub fn weight(&self) -> u32 {
        self.a
    }

    /// All canonical weights for a given index, in increasing order.
    pub fn weights_for_index(r: u32) -> Vec<u32> {
        (1..=r / 2).filter(|a| a.gcd(&r) == 1).collect()
    }
}

impl fmt::Display for QuotientPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(1,{},{})", self.r, self.a, self.r - self.a)
    }
}

/// One basket entry: index always known, weight optional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasketPoint {
    r: u32,
    a: Option<u32>,
}

impl BasketPoint {
    pub fn index_only(r: u32) -> Result<Self, BasketError> {
        if r < 2 {
            return Err(BasketError::IndexTooSmall { r });
        }
        Ok(BasketPoint { r, a: None })
    }

    pub fn decorated(r: u32, a: u32) -> Result<Self, BasketError> {
        let p = QuotientPoint::new(r, a)?;
        Ok(BasketPoint { r: p.r, a: Some(p.a) })
    }

    pub fn index(&self) -> u32 {
        self.r
    }

    pub fn weight(&self) -> Option<u32> {
        self.a
    }

    /// The decorated point, when the weight is stated or forced. Indices
    /// with a single admissible weight (2, 3, 4 and 6) count as decorated
    /// even when written bare.
    pub fn quotient_point(&self) -> Option<QuotientPoint> {
        match self.a {
            Some(a) => Some(QuotientPoint { r: self.r, a }),
            None => match QuotientPoint::weights_for_index(self.r).as_slice() {
                [only] => Some(QuotientPoint { r: self.r, a: *only }),
                _ => None,
            },
        }
    }
}

impl From<QuotientPoint> for BasketPoint {
    fn from(p: QuotientPoint) -> Self {
        BasketPoint { r: p.r, a: Some(p.a) }
    }
}

/// A multiset of basket points in deterministic sorted order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Basket {
    points: Vec<BasketPoint>,
}

impl Basket {
    pub fn new(mut points: Vec<BasketPoint>) -> Self {
        points.sort();
        Basket { points }
    }

    pub fn from_quotient_points(points: &[QuotientPoint]) -> Self {
        Basket::new(points.iter().map(|&p| p.into()).collect())
    }

    /// Index-only basket from a list of indices.
    pub fn from_indices(indices: &[u32]) -> Result<Self, BasketError> {
        let points =
            indices.iter().map(|&r| BasketPoint::index_only(r)).collect::<Result<Vec<_>, _>>()?;
        Ok(Basket::new(points))
    }

    pub fn points(&self) -> &[BasketPoint] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Sorted index multiset.
    pub fn indices(&self) -> Vec<u32> {
        self.points.iter().map(|p| p.r).collect()
    }

    /// Whether every entry determines its weight (stated or forced).
    pub fn is_decorated(&self) -> bool {
        self.points.iter().all(|p| p.quotient_point().is_some())
    }

    /// All points as quotient points; errors on the first entry whose
    /// weight is neither stated nor forced.
    pub fn decorated_points(&self) -> Result<Vec<QuotientPoint>, BasketError> {
        self.points
            .iter()
            .map(|p| p.quotient_point().ok_or(BasketError::Undecorated { r: p.r }))
            .collect()
    }

    /// `sum (r - 1/r)` over the basket. The strict bound by 24 expresses
    /// positivity of `(-K).c2`.
    pub fn kawamata_sum(&self) -> Rational {
        self.points
            .iter()
            .map(|p| rat(i128::from(p.r) * i128::from(p.r) - 1, i128::from(p.r)))
            .sum()
    }

    /// `kawamata_sum < 24`, strictly.
    pub fn within_kawamata_bound(&self) -> bool {
        self.kawamata_sum() < rat(24, 1)
    }

    /// Number of exceptional divisors of discrepancy below 1: `sum (r - 1)`.
    pub fn shokurov_difficulty(&self) -> u64 {
        self.points.iter().map(|p| u64::from(p.r) - 1).sum()
    }

    /// Whether an `n`-torsion element of the class group is numerically
    /// possible: the indices divisible by `n` must sum to at least 16.
    /// Only primes `n <= 7` are admitted.
    pub fn torsion_obstruction(&self, n: u32) -> Result<bool, BasketError> {
        if !matches!(n, 2 | 3 | 5 | 7) {
            return Err(BasketError::BadTorsionPrime { n });
        }
        let sum: u64 = self.points.iter().filter(|p| p.r % n == 0).map(|p| u64::from(p.r)).sum();
        Ok(sum >= 16)
    }

    /// Least common multiple of the indices; 1 for the empty basket.
    pub fn gorenstein_index(&self) -> u64 {
        self.points.iter().fold(1u64, |n, p| n.lcm(&u64::from(p.r)))
    }

    /// Kawamata blowup of `target` with weights `(1, a, r-a)`: the point is
    /// replaced by index-only entries of indices `a` and `r-a`, dropping
    /// index-1 entries.
    pub fn kawamata_blowup_transform(&self, target: QuotientPoint) -> Result<Basket, BasketError> {
        let slot = self
            .points
            .iter()
            .position(|p| p.r == target.r && p.a == Some(target.a))
            .ok_or(BasketError::PointAbsent { r: target.r, a: target.a })?;
        let mut points = self.points.clone();
        points.remove(slot);
        for r in [target.a, target.r - target.a] {
            if r > 1 {
                points.push(BasketPoint::index_only(r)?);
            }
        }
        Ok(Basket::new(points))
    }

    /// Multiset union.
    pub fn merged(&self, other: &Basket) -> Basket {
        let mut points = self.points.clone();
        points.extend_from_slice(&other.points);
        Basket::new(points)
    }
}

/// Grammar: `item ("," item)*` with `item = r | r^k | r:a | r:a^k`.
impl FromStr for Basket {
    type Err = BasketError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut points = Vec::new();
        let text = text.trim();
        if text.is_empty() {
            return Ok(Basket::default());
        }
        for item in text.split(',') {
            let item = item.trim();
            let malformed = || BasketError::Malformed(String::from(item));
            let (body, count) = match item.split_once('^') {
                Some((body, k)) => {
                    let k: u32 = k.trim().parse().map_err(|_| malformed())?;
                    if k == 0 {
                        return Err(malformed());
                    }
                    (body.trim(), k)
                }
                None => (item, 1),
            };
            let point = match body.split_once(':') {
                Some((r, a)) => {
                    let r: u32 = r.trim().parse().map_err(|_| malformed())?;
                    let a: u32 = a.trim().parse().map_err(|_| malformed())?;
                    BasketPoint::decorated(r, a)?
                }
                None => {
                    let r: u32 = body.parse().map_err(|_| malformed())?;
                    BasketPoint::index_only(r)?
                }
            };
            for _ in 0..count {
                points.push(point);
            }
        }
        Ok(Basket::new(points))
    }
}

/// Compact canonical form: sorted, repeated entries grouped with `^`.
impl fmt::Display for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        let mut first = true;
        while i < self.points.len() {
            let p = self.points[i];
            let mut count = 1;
            while i + count < self.points.len() && self.points[i + count] == p {
                count += 1;
            }
            if !first {
                write!(f, ",")?;
            }
            first = false;
            match p.a {
                Some(a) => write!(f, "{}:{}", p.r, a)?,
                None => write!(f, "{}", p.r)?,
            }
            if count > 1 {
                write!(f, "^{count}")?;
            }
            i += count;
        }
        Ok(())
    }
}
