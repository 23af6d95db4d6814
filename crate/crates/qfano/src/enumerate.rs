//! Exhaustive enumeration of numerical Q-Fano candidates for a given index.
//!
//! A candidate is a decorated basket plus a degree `A^3 = n/N` (with `N` the
//! Gorenstein index) passing the filter ladder:
//!
//! 1. `kawamata_sum < 24` and `gcd(r, q) = 1` for every point;
//! 2. `chi(O(kA))` integral over the scan range (a finite certificate of
//!    all-`k` integrality);
//! 3. `chi(O(kA)) >= 0` for `k >= 0`;
//! 4. `chi` non-decreasing on `k >= 0` whenever `chi(O(A)) >= 1`;
//! 5. `chi(O(mA)) = 0` for `-q < m < 0` (Kawamata-Viehweg vanishing:
//!    `mA - K` is ample there and `|mA|` is empty);
//! 6. `8q A^3 <= 9 A.c2` (a Bogomolov-Miyaoka-type degree bound).
//!
//! Filters 5 and 6 go beyond non-negativity and monotonicity; both hold on
//! every actual Q-Fano threefold and both are needed to cut the search to
//! the published candidate counts, so they are exposed as flags and enabled
//! by default.
//!
//! Integrality is certified on the window `k in [0, 4N)`: `chi` is a cubic
//! polynomial plus a period-`N` correction, so for each residue `j mod N`
//! integrality at the four points `j, j+N, j+2N, j+3N` forces integrality on
//! the whole residue class by finite differences. The window conditions are
//! folded into a single arithmetic progression for `n`, and each surviving
//! `n` is then re-verified directly over the full configured scan range.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::basket::{Basket, BasketError, QuotientPoint};
use crate::rational::{rat, Rational};
use crate::rr::{inverse_mod, FanoNumerics, RrError};

/// The Q-Fano indices realizable by actual threefolds.
pub fn allowed_q_values() -> &'static [u32; 13] {
    &[1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 13, 17, 19]
}

/// Enumeration configuration. `Default` gives the calibrated ladder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterConfig {
    /// Bound on `q^3 A^3`.
    pub max_anticanonical_cube: Rational,
    /// The scan range is `|k| <= 12 N m` with `m` this multiplier.
    pub integrality_scan_multiplier: u32,
    /// Require `chi(O(kA)) >= 0` for `k >= 0`.
    pub require_nonneg: bool,
    /// Require `chi` non-decreasing on `k >= 0` when `chi(O(A)) >= 1`.
    pub require_monotone_when_effective: bool,
    /// Require `chi(O(mA)) = 0` for `-q < m < 0`.
    pub require_intermediate_vanishing: bool,
    /// Require `8 q A^3 <= 9 A.c2`.
    pub require_degree_c2_bound: bool,
}

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig {
            max_anticanonical_cube: rat(100, 1),
            integrality_scan_multiplier: 12,
            require_nonneg: true,
            require_monotone_when_effective: true,
            require_intermediate_vanishing: true,
            require_degree_c2_bound: true,
        }
    }
}

/// Errors from enumeration entry points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumError {
    Basket(BasketError),
    Rr(RrError),
    /// `kawamata_sum >= 24`.
    KawamataBound,
    /// Some point index shares a factor with `q`.
    IndexNotCoprime {
        q: u32,
        r: u32,
    },
    /// Configuration bounds must be positive.
    BadConfig(&'static str),
    /// Two status rows matched the same candidate key.
    AmbiguousStatusKey {
        indices: Vec<u32>,
        a3: Rational,
    },
}

impl fmt::Display for EnumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumError::Basket(e) => write!(f, "{e}"),
            EnumError::Rr(e) => write!(f, "{e}"),
            EnumError::KawamataBound => write!(f, "basket violates kawamata_sum < 24"),
            EnumError::IndexNotCoprime { q, r } => {
                write!(f, "point index {r} is not coprime to the Fano index {q}")
            }
            EnumError::BadConfig(what) => write!(f, "invalid filter config: {what}"),
            EnumError::AmbiguousStatusKey { indices, a3 } => {
                write!(f, "status rows are ambiguous at key ({indices:?}, {a3})")
            }
        }
    }
}

impl core::error::Error for EnumError {}

impl From<BasketError> for EnumError {
    fn from(e: BasketError) -> Self {
        EnumError::Basket(e)
    }
}

impl From<RrError> for EnumError {
    fn from(e: RrError) -> Self {
        EnumError::Rr(e)
    }
}

/// Geometric existence status, carried as data from the status asset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExistenceStatus {
    /// `+!`: realized and the varieties are completely described.
    ExistsAndClassified,
    /// `+`: examples are known.
    Exists,
    /// `-`: proved not to occur.
    Excluded,
    /// `?`: existence unknown.
    Open,
}

impl ExistenceStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExistenceStatus::ExistsAndClassified => "exists-and-classified",
            ExistenceStatus::Exists => "exists",
            ExistenceStatus::Excluded => "excluded",
            ExistenceStatus::Open => "open",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "exists-and-classified" | "+!" => ExistenceStatus::ExistsAndClassified,
            "exists" | "+" => ExistenceStatus::Exists,
            "excluded" | "-" => ExistenceStatus::Excluded,
            "open" | "?" => ExistenceStatus::Open,
            _ => return None,
        })
    }
}

impl fmt::Display for ExistenceStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One row of a shipped status table, keyed by `(indices, A^3)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatusRow {
    pub no: u32,
    pub indices: Vec<u32>,
    pub a3: Rational,
    pub genus: i64,
    pub status: ExistenceStatus,
    pub reference: String,
}

/// One enumerated candidate; a row of the candidate table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanoCandidate {
    numerics: FanoNumerics,
    genus: i64,
    dims: Vec<i64>,
    decorations: Vec<Basket>,
    status: ExistenceStatus,
    status_note: Option<String>,
}

impl FanoCandidate {
    /// Numerics with the lexicographically first decoration.
    pub fn numerics(&self) -> &FanoNumerics {
        &self.numerics
    }

    pub fn index(&self) -> u32 {
        self.numerics.index()
    }

    pub fn degree_a3(&self) -> Rational {
        self.numerics.degree_a3()
    }

    pub fn indices(&self) -> Vec<u32> {
        self.numerics.basket().indices()
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    /// `dim |kA|` for `k = 1..=q`.
    pub fn dims(&self) -> &[i64] {
        &self.dims
    }

    pub fn dim(&self, k: u32) -> Option<i64> {
        if k == 0 {
            return Some(0); // |0| is the trivial system
        }
        self.dims.get(k as usize - 1).copied()
    }

    /// All decorations producing this candidate's `(A^3, genus, dims)`.
    pub fn decorations(&self) -> &[Basket] {
        &self.decorations
    }

    pub fn status(&self) -> ExistenceStatus {
        self.status
    }

    pub fn status_note(&self) -> Option<&str> {
        self.status_note.as_deref()
    }
}

/// Scaled-integer evaluator for `chi(O(kA))` over a fixed decorated basket.
///
/// Everything is expressed with denominator `D = 12 q N`:
/// `chi(k) * D = n * q k(k+q)(2k+q) + D + k (24N - kaw N) + corr[k mod N]`.
struct ChiTable {
    q: i128,
    n_gorenstein: i128,
    denom: i128,
    linear: i128,
    corr: Vec<i128>,
}

impl ChiTable {
    fn new(q: u32, points: &[QuotientPoint]) -> Self {
        let mut n_gorenstein: i128 = 1;
        for p in points {
            n_gorenstein = n_gorenstein.lcm(&i128::from(p.index()));
        }
        let q128 = i128::from(q);
        let denom = 12 * q128 * n_gorenstein;
        let kaw_n: i128 = points
            .iter()
            .map(|p| {
                let r = i128::from(p.index());
                (r * r - 1) * (n_gorenstein / r)
            })
            .sum();
        let mut corr = vec![0i128; n_gorenstein as usize];
        for p in points {
            let r = i128::from(p.index());
            let qinv = i128::from(inverse_mod(q, p.index()).expect("gcd(q,r)=1"));
            let b = i128::from(inverse_mod(p.weight(), p.index()).expect("gcd(a,r)=1"));
            // 12r * c_P at t, built incrementally over t
            let mut f_num = vec![0i128; r as usize];
            let mut partial = 0i128;
            for t in 0..r {
                f_num[t as usize] = -t * (r * r - 1) + partial;
                let x = (t * b) % r;
                partial += 6 * x * (r - x);
            }
            let scale = q128 * (n_gorenstein / r); // 12r -> D
            for (km, slot) in corr.iter_mut().enumerate() {
                let cls = (km as i128 % r) * qinv % r;
                let t = (r - cls) % r;
                *slot += f_num[t as usize] * scale;
            }
        }
        ChiTable { q: q128, n_gorenstein, denom, linear: 24 * n_gorenstein - kaw_n, corr }
    }

    /// `chi(O(kA)) * D` for degree `n / N`.
    fn chi_num(&self, n: i128, k: i128) -> i128 {
        let poly = self.q * k * (k + self.q) * (2 * k + self.q);
        let m = k.rem_euclid(self.n_gorenstein) as usize;
        n * poly + self.denom + k * self.linear + self.corr[m]
    }
}

/// Intersects `x = res (mod modulus)` with `a x = c (mod d)`.
/// Solution sets are periodic mod `d`, so `modulus` stays bounded by `d`.
fn merge_congruence(res: i128, modulus: i128, a: i128, c: i128, d: i128) -> Option<(i128, i128)> {
    let a_step = (a * modulus).rem_euclid(d);
    let c_shift = (c - a * res).rem_euclid(d);
    let g = a_step.gcd(&d);
    if c_shift % g != 0 {
        return None;
    }
    let d_red = d / g;
    let t0 = if d_red == 1 {
        0
    } else {
        let inv = i128::extended_gcd(&(a_step / g), &d_red).x.rem_euclid(d_red);
        (c_shift / g) % d_red * inv % d_red
    };
    let new_mod = modulus * d_red;
    Some(((res + modulus * t0).rem_euclid(new_mod), new_mod))
}

fn check_preconditions(q: u32, basket: &Basket) -> Result<Vec<QuotientPoint>, EnumError> {
    if q == 0 {
        return Err(EnumError::BadConfig("index q must be positive"));
    }
    if !basket.within_kawamata_bound() {
        return Err(EnumError::KawamataBound);
    }
    let points = basket.decorated_points()?;
    for p in &points {
        if inverse_mod(q, p.index()).is_none() {
            return Err(EnumError::IndexNotCoprime { q, r: p.index() });
        }
    }
    Ok(points)
}

/// All degrees `A^3 = n/N` in `(0, bound/q^3]` passing the configured
/// filter ladder for the given decorated basket, in increasing order.
pub fn admissible_degrees(
    q: u32,
    basket: &Basket,
    cfg: &FilterConfig,
) -> Result<Vec<Rational>, EnumError> {
    if cfg.integrality_scan_multiplier == 0 {
        return Err(EnumError::BadConfig("integrality_scan_multiplier must be positive"));
    }
    if cfg.max_anticanonical_cube <= rat(0, 1) {
        return Err(EnumError::BadConfig("max_anticanonical_cube must be positive"));
    }
    let points = check_preconditions(q, basket)?;
    let table = ChiTable::new(q, &points);
    let d = table.denom;
    let n_big = table.n_gorenstein;

    // n_max = floor(bound * N / q^3)
    let q3 = i128::from(q).pow(3);
    let n_max = (cfg.max_anticanonical_cube * rat(n_big, q3)).floor().to_integer();
    if n_max < 1 {
        return Ok(Vec::new());
    }

    // fold the certificate window into a progression for n
    let mut res: i128 = 0;
    let mut modulus: i128 = 1;
    for k in 0..4 * n_big {
        let a = (table.q * k * (k + table.q) * (2 * k + table.q)).rem_euclid(d);
        let c = (-(table.chi_num(0, k))).rem_euclid(d);
        match merge_congruence(res, modulus, a, c, d) {
            Some((r2, m2)) => {
                res = r2;
                modulus = m2;
            }
            None => return Ok(Vec::new()),
        }
    }

    let mut out = Vec::new();
    let mut n = if res > 0 { res } else { res + modulus };
    while n <= n_max {
        if verify_degree(&table, q, n, cfg) {
            out.push(rat(n, n_big));
        }
        n += modulus;
    }
    Ok(out)
}

/// Direct verification of one degree over the full scan range.
fn verify_degree(table: &ChiTable, q: u32, n: i128, cfg: &FilterConfig) -> bool {
    let d = table.denom;
    if cfg.require_degree_c2_bound {
        // 8 q A^3 <= 9 A.c2  <=>  8 q^2 n <= 9 (24N - kaw N)
        if 8 * table.q * table.q * n > 9 * table.linear {
            return false;
        }
    }
    let q64 = i128::from(q);
    if cfg.require_intermediate_vanishing {
        for m in 1 - q64..0 {
            if table.chi_num(n, m) != 0 {
                return false;
            }
        }
    }
    let span = 12 * table.n_gorenstein * i128::from(cfg.integrality_scan_multiplier);
    // chi(O(A)) >= 1 in scaled units is chi_num >= D
    let monotone = cfg.require_monotone_when_effective && table.chi_num(n, 1) >= d;
    let mut prev: Option<i128> = None;
    for k in -span..=span {
        let v = table.chi_num(n, k);
        if v % d != 0 {
            return false;
        }
        if k >= 0 {
            if cfg.require_nonneg && v < 0 {
                return false;
            }
            if monotone {
                if let Some(p) = prev {
                    if v < p {
                        return false;
                    }
                }
                prev = Some(v);
            }
        }
    }
    true
}

/// Generates all index multisets (non-decreasing) with `gcd(r, q) = 1`
/// and `kawamata_sum < 24`, in lexicographic order.
fn index_multisets(q: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn recurse(q: u32, start: u32, sum: Rational, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(current.clone());
        for r in start..=24 {
            if u32::gcd(&r, &q) != 1 {
                continue;
            }
            let add = rat(i128::from(r) * i128::from(r) - 1, i128::from(r));
            if sum + add >= rat(24, 1) {
                continue;
            }
            current.push(r);
            recurse(q, r, sum + add, current, out);
            current.pop();
        }
    }
    recurse(q, 2, rat(0, 1), &mut current, &mut out);
    out
}

/// Cartesian product of canonical weights over an index multiset.
fn decorations(indices: &[u32]) -> Vec<Vec<QuotientPoint>> {
    let choices: Vec<Vec<u32>> =
        indices.iter().map(|&r| QuotientPoint::weights_for_index(r)).collect();
    let mut out = vec![Vec::new()];
    for (i, ws) in choices.iter().enumerate() {
        let mut next = Vec::with_capacity(out.len() * ws.len());
        for partial in &out {
            for &a in ws {
                let mut row = partial.clone();
                row.push(QuotientPoint::new(indices[i], a).expect("valid weight"));
                next.push(row);
            }
        }
        out = next;
    }
    out
}

/// Exhaustive enumeration for index `q` at the given configuration.
///
/// Output is deterministic: rows sorted by genus descending, then point
/// count descending, then `A^3` ascending, then indices; decorations
/// yielding identical `(A^3, genus, dims)` are merged into one row.
pub fn enumerate_candidates(q: u32, cfg: &FilterConfig) -> Vec<FanoCandidate> {
    type Key = (Vec<u32>, Rational, i64, Vec<i64>);
    let mut rows: BTreeMap<Key, Vec<Basket>> = BTreeMap::new();

    for indices in index_multisets(q) {
        for deco in decorations(&indices) {
            let basket = Basket::from_quotient_points(&deco);
            let degrees = match admissible_degrees(q, &basket, cfg) {
                Ok(ds) => ds,
                Err(_) => continue,
            };
            for a3 in degrees {
                let numerics =
                    FanoNumerics::new(q, basket.clone(), a3).expect("filtered degrees are valid");
                let dims: Vec<i64> = (1..=i64::from(q))
                    .map(|k| numerics.linear_system_dim(k).expect("integrality certified"))
                    .collect();
                let genus = dims[q as usize - 1] - 1;
                rows.entry((indices.clone(), a3, genus, dims)).or_default().push(basket.clone());
            }
        }
    }

    let mut candidates: Vec<FanoCandidate> = rows
        .into_iter()
        .map(|((_, a3, genus, dims), mut decorations)| {
            decorations.sort();
            decorations.dedup();
            let numerics = FanoNumerics::new(q, decorations[0].clone(), a3).expect("valid");
            FanoCandidate {
                numerics,
                genus,
                dims,
                decorations,
                status: ExistenceStatus::Open,
                status_note: None,
            }
        })
        .collect();

    candidates.sort_by(|x, y| {
        y.genus
            .cmp(&x.genus)
            .then_with(|| y.indices().len().cmp(&x.indices().len()))
            .then_with(|| x.degree_a3().cmp(&y.degree_a3()))
            .then_with(|| x.indices().cmp(&y.indices()))
            .then_with(|| x.decorations.cmp(&y.decorations))
    });
    candidates
}

/// Merges a status table into enumerated candidates, keyed by
/// `(index multiset, A^3)`. Returns the asset rows that matched nothing.
pub fn attach_status(
    candidates: &mut [FanoCandidate],
    rows: &[StatusRow],
) -> Result<Vec<StatusRow>, EnumError> {
    let mut unmatched = Vec::new();
    for row in rows {
        let mut hits =
            candidates.iter_mut().filter(|c| c.indices() == row.indices && c.degree_a3() == row.a3);
        match (hits.next(), hits.next()) {
            (Some(c), None) => {
                if c.status_note.is_some() {
                    return Err(EnumError::AmbiguousStatusKey {
                        indices: row.indices.clone(),
                        a3: row.a3,
                    });
                }
                c.status = row.status;
                c.status_note = Some(row.reference.clone());
            }
            (Some(_), Some(_)) => {
                return Err(EnumError::AmbiguousStatusKey {
                    indices: row.indices.clone(),
                    a3: row.a3,
                })
            }
            (None, _) => unmatched.push(row.clone()),
        }
    }
    Ok(unmatched)
}

/// One row of a high-dimension survey.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyRow {
    pub q: u32,
    pub candidates: usize,
    /// Candidates with `dim |A| >= threshold`.
    pub high_dim: usize,
    /// Minimal genus among those, when any.
    pub min_genus: Option<i64>,
}

/// Surveys candidates with `dim |A| >= threshold` for each index in the
/// range (inclusive).
pub fn high_dim_survey(q_lo: u32, q_hi: u32, threshold: i64, cfg: &FilterConfig) -> Vec<SurveyRow> {
    (q_lo..=q_hi)
        .map(|q| {
            let rows = enumerate_candidates(q, cfg);
            let high: Vec<&FanoCandidate> =
                rows.iter().filter(|c| c.dims().first().is_some_and(|&d| d >= threshold)).collect();
            SurveyRow {
                q,
                candidates: rows.len(),
                high_dim: high.len(),
                min_genus: high.iter().map(|c| c.genus()).min(),
            }
        })
        .collect()
}
