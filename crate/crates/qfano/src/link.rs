//! Diophantine analysis of Sarkisov links out of a blowup of a candidate.
//!
//! Blowing up a center on a Q-Fano `X` with `-K = qA` and running the
//! two-ray game ends in a Mori contraction onto a target `X-hat`. Writing
//! `K_tilde = f^*K + alpha E` and `M_k-tilde = f^*M_k - beta_k E` for the
//! mobile systems `M_k = |kA|`, every `k` satisfies the master relation
//!
//! ```text
//! k q-hat = q s_k + (q beta_k - k alpha) e
//! ```
//!
//! with `e, s_k` the Theta-degrees of the transforms of `E` and `M_k` on
//! the target (`q-hat` is the target index in the birational branch and the
//! anticanonical degree of a general fiber, at most 3, in the fiber
//! branch). The fractional part of `beta_k` is pinned by the local class of
//! `kA` at the center, so `beta_k = frac_k + m_k` with integer `m_k >= 0`,
//! and the whole system becomes a finite Diophantine search.
//!
//! [`solve_main_equation`] returns every solution within the caps that
//! satisfies the relation exactly, the canonical-threshold inequalities and
//! the index-range constraint. The filter ladder then eliminates solutions
//! by movability, torsion consistency, effectivity on the target, and
//! dimension comparison against the target's linear systems; survivors are
//! numerically feasible and can only be excluded by geometric arguments
//! outside this crate's scope.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::basket::Basket;
use crate::enumerate::{allowed_q_values, enumerate_candidates, FanoCandidate, FilterConfig};
use crate::rational::{rat, Rational};
use crate::rr::{local_class, RrError};

/// Errors from scenario construction and case analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkError {
    Rr(RrError),
    /// A quotient center must name an index present in the basket.
    CenterNotInBasket {
        r: u32,
    },
    /// Discrepancy must be `1/r`, or `2/3` for an index-3 center.
    BadDiscrepancy {
        r: u32,
    },
    /// Gorenstein centers have positive integer discrepancy.
    BadGorensteinDiscrepancy,
    /// The scenario lists no mobile system.
    EmptyMobileSystems,
    /// Mobile system indices must lie in `1..=q`.
    MobileOutOfRange {
        k: u32,
    },
    /// The anchor system `|k0 A|` must be non-empty on the source.
    BadMobileAnchor {
        k0: u32,
    },
    /// Dimension data for a birational target index is unavailable.
    MissingTargetTable {
        q_hat: u32,
    },
    /// `e` does not divide `d` in the torsion computation.
    TorsionNotDivisible {
        d: u32,
        e: u32,
    },
}

impl fmt::Display for LinkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkError::Rr(e) => write!(f, "{e}"),
            LinkError::CenterNotInBasket { r } => {
                write!(f, "no index-{r} point in the source basket")
            }
            LinkError::BadDiscrepancy { r } => {
                write!(f, "discrepancy for an index-{r} center must be 1/{r} (or 2/3 when r = 3)")
            }
            LinkError::BadGorensteinDiscrepancy => {
                write!(f, "Gorenstein-center discrepancy must be a positive integer")
            }
            LinkError::EmptyMobileSystems => write!(f, "scenario lists no mobile system"),
            LinkError::MobileOutOfRange { k } => {
                write!(f, "mobile system index {k} is outside 1..=q")
            }
            LinkError::BadMobileAnchor { k0 } => {
                write!(f, "threshold anchor |{k0}A| must be non-empty on the source")
            }
            LinkError::MissingTargetTable { q_hat } => {
                write!(f, "no target dimension table for index {q_hat}")
            }
            LinkError::TorsionNotDivisible { d, e } => {
                write!(f, "torsion order needs e | d, got d = {d}, e = {e}")
            }
        }
    }
}

impl core::error::Error for LinkError {}

impl From<RrError> for LinkError {
    fn from(e: RrError) -> Self {
        LinkError::Rr(e)
    }
}

/// The blowup center: a basket point with its Kawamata discrepancy (or the
/// extra `2/3` valuation over an index-3 point), or a Gorenstein center
/// (point or curve) with integer discrepancy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlowupCenter {
    QuotientPoint {
        r: u32,
        /// `1/r`, or `2/3` when `r = 3`.
        alpha: Rational,
    },
    GorensteinLocus {
        /// Positive integer discrepancy.
        alpha: u32,
    },
}

impl BlowupCenter {
    /// The Kawamata blowup of an index-`r` point: `alpha = 1/r`.
    pub fn kawamata(r: u32) -> Result<Self, LinkError> {
        if r < 2 {
            return Err(LinkError::BadDiscrepancy { r });
        }
        Ok(BlowupCenter::QuotientPoint { r, alpha: rat(1, i128::from(r)) })
    }

    /// A quotient-point center with explicit discrepancy; only `1/r` and
    /// the index-3 value `2/3` are admissible.
    pub fn quotient_with_alpha(r: u32, alpha: Rational) -> Result<Self, LinkError> {
        let ok = alpha == rat(1, i128::from(r)) || (r == 3 && alpha == rat(2, 3));
        if r < 2 || !ok {
            return Err(LinkError::BadDiscrepancy { r });
        }
        Ok(BlowupCenter::QuotientPoint { r, alpha })
    }

    pub fn gorenstein(alpha: u32) -> Result<Self, LinkError> {
        if alpha == 0 {
            return Err(LinkError::BadGorensteinDiscrepancy);
        }
        Ok(BlowupCenter::GorensteinLocus { alpha })
    }

    pub fn alpha(&self) -> Rational {
        match self {
            BlowupCenter::QuotientPoint { alpha, .. } => *alpha,
            BlowupCenter::GorensteinLocus { alpha } => rat(i128::from(*alpha), 1),
        }
    }
}

/// Fractional part of `beta_k` for the Kawamata blowup of an index-`r`
/// point: `local_class(q, k, r) / r`.
pub fn beta_fraction(q: u32, k: i64, r: u32) -> Result<Rational, LinkError> {
    let cls = local_class(q, k, r)?;
    Ok(rat(i128::from(cls), i128::from(r)))
}

/// The data of one link scenario: source numerics, a blowup center, the
/// mobile systems carried through the relation, and the canonical-threshold
/// bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkScenario {
    q: u32,
    /// `dim |kA|` on the source for `k = 1..=q`.
    source_dims: Vec<i64>,
    basket: Basket,
    center: BlowupCenter,
    /// Index of the mobile system defining the canonical threshold.
    k0: u32,
    /// The `k` values carried through the master relation.
    mobile_ks: Vec<u32>,
    /// `c <= 1/m` with `m` the largest local class of `k0 A` at a basket
    /// point (`0 < m < r`).
    threshold_m: u32,
    /// Whether the scenario presumes `(X, M_k0)` not canonical, which
    /// sharpens the threshold to `beta_k0 > alpha` strictly.
    not_canonical: bool,
}

impl LinkScenario {
    /// Builds a scenario for a source candidate. `mobile_ks` must be
    /// non-empty; the anchor `k0` names the system defining the canonical
    /// threshold (it need not be carried through the relations itself, but
    /// `|k0 A|` must be non-empty). The threshold `m` is computed from the
    /// basket; `not_canonical` adds the strict inequality `beta_k0 > alpha`.
    pub fn new(
        source: &FanoCandidate,
        center: BlowupCenter,
        k0: u32,
        mobile_ks: &[u32],
        not_canonical: bool,
    ) -> Result<Self, LinkError> {
        let q = source.index();
        let basket = source.numerics().basket().clone();
        if let BlowupCenter::QuotientPoint { r, .. } = center {
            if !basket.indices().contains(&r) {
                return Err(LinkError::CenterNotInBasket { r });
            }
        }
        if mobile_ks.is_empty() {
            return Err(LinkError::EmptyMobileSystems);
        }
        for &k in mobile_ks.iter().chain(core::iter::once(&k0)) {
            if k < 1 || k > q {
                return Err(LinkError::MobileOutOfRange { k });
            }
        }
        if source.dim(k0).is_none_or(|d| d < 0) {
            return Err(LinkError::BadMobileAnchor { k0 });
        }
        let mut mobile_ks = mobile_ks.to_vec();
        mobile_ks.sort_unstable();
        mobile_ks.dedup();

        // c <= 1/m from the basket point where k0 A has the largest
        // nontrivial local class
        let mut threshold_m = 1;
        for p in basket.points() {
            let cls = local_class(q, i64::from(k0), p.index())?;
            if cls > 0 {
                threshold_m = threshold_m.max(cls);
            }
        }

        Ok(LinkScenario {
            q,
            source_dims: source.dims().to_vec(),
            basket,
            center,
            k0,
            mobile_ks,
            threshold_m,
            not_canonical,
        })
    }

    pub fn index(&self) -> u32 {
        self.q
    }

    pub fn center(&self) -> BlowupCenter {
        self.center
    }

    pub fn mobile_ks(&self) -> &[u32] {
        &self.mobile_ks
    }

    pub fn anchor_k0(&self) -> u32 {
        self.k0
    }

    pub fn threshold_m(&self) -> u32 {
        self.threshold_m
    }

    pub fn source_dim(&self, k: u32) -> i64 {
        self.source_dims[k as usize - 1]
    }

    /// Fractional part of `beta_k` at this center. Kawamata blowups use the
    /// local class directly; the `2/3` valuation over an index-3 point
    /// doubles it (its weights are `(2,2,1)/3`); Gorenstein centers have
    /// integral multiplicities.
    pub fn frac(&self, k: u32) -> Rational {
        match self.center {
            BlowupCenter::QuotientPoint { r, alpha } => {
                let cls = local_class(self.q, i64::from(k), r).expect("validated");
                let j: u32 = if alpha == rat(2, 3) { 2 } else { 1 };
                rat(i128::from(cls * j % r), i128::from(r))
            }
            BlowupCenter::GorensteinLocus { .. } => Rational::zero(),
        }
    }

    /// Lower bound for `beta_k` from the threshold: `(k/k0) m alpha` for
    /// `k <= k0`, plus strictness at `k0` under the non-canonical premise.
    fn beta_lower_bound(&self, k: u32) -> (Rational, bool) {
        let alpha = self.center.alpha();
        let mut bound = Rational::zero();
        let mut strict = false;
        if k <= self.k0 {
            bound = rat(i128::from(k), i128::from(self.k0))
                * rat(i128::from(self.threshold_m), 1)
                * alpha;
        }
        if self.not_canonical && k == self.k0 && alpha >= bound {
            bound = alpha;
            strict = true;
        }
        (bound, strict)
    }

    /// Minimal admissible `m_k` given the threshold inequalities and, for
    /// Gorenstein centers, positivity of multiplicities along the chain.
    fn min_m(&self, k: u32) -> i64 {
        let frac = self.frac(k);
        let (bound, strict) = self.beta_lower_bound(k);
        // smallest integer m with frac + m >= bound (or > when strict)
        let diff = bound - frac;
        let mut m = diff.ceil().to_integer() as i64;
        if strict && frac + rat(m as i128, 1) == bound {
            m += 1;
        }
        if m < 0 {
            m = 0;
        }
        if let BlowupCenter::GorensteinLocus { .. } = self.center {
            // the center lies on Bs|k0 A|, which the unique members of the
            // |kA| with k | k0 sweep out, so those multiplicities are >= 1
            if k == self.k0 || (self.k0.is_multiple_of(k) && self.source_dim(k) == 0) {
                m = m.max(1);
            }
        }
        m
    }
}

/// Machine-checkable threshold inequality `beta_k >= bound` (strict when
/// `strict` is set).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdBound {
    pub k: u32,
    pub bound: Rational,
    pub strict: bool,
}

/// The inequalities `beta_k >= (k/k0) m alpha` for the listed `k <= k0`,
/// with the strict variant at `k0` under the non-canonical premise.
pub fn threshold_constraints(scenario: &LinkScenario) -> Vec<ThresholdBound> {
    scenario
        .mobile_ks
        .iter()
        .filter(|&&k| k <= scenario.k0)
        .map(|&k| {
            let (bound, strict) = scenario.beta_lower_bound(k);
            ThresholdBound { k, bound, strict }
        })
        .collect()
}

/// Search caps for the Diophantine grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchCaps {
    pub max_e: u32,
    pub max_s: i64,
    pub max_m: i64,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps { max_e: 12, max_s: 40, max_m: 12 }
    }
}

/// One `(s_k, m_k)` assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct MobileEntry {
    pub k: u32,
    pub s: i64,
    pub m: i64,
}

/// A solution of the master relation for every listed `k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinkSolution {
    pub q_hat: u32,
    pub e: u32,
    /// Fiber-type contraction (`q_hat` is the fiber anticanonical degree).
    pub fiber: bool,
    pub entries: Vec<MobileEntry>,
}

impl LinkSolution {
    pub fn entry(&self, k: u32) -> Option<MobileEntry> {
        self.entries.iter().copied().find(|t| t.k == k)
    }

    pub fn s(&self, k: u32) -> Option<i64> {
        self.entry(k).map(|t| t.s)
    }
}

impl fmt::Display for LinkSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} q-hat={} e={}",
            if self.fiber { "fiber" } else { "birational" },
            self.q_hat,
            self.e
        )?;
        for t in &self.entries {
            write!(f, " s{}={} m{}={}", t.k, t.s, t.k, t.m)?;
        }
        Ok(())
    }
}

/// All solutions of the master relation within the caps: exact equality for
/// every listed `k`, threshold inequalities, and the index-range invariant
/// (birational targets in the allowed index list, fiber degrees in 1..=3).
pub fn solve_main_equation(scenario: &LinkScenario, caps: &SearchCaps) -> Vec<LinkSolution> {
    let q = i128::from(scenario.q);
    let alpha = scenario.center.alpha();
    let mut out = Vec::new();

    for fiber in [false, true] {
        let q_hat_range: Vec<u32> =
            if fiber { alloc::vec![1, 2, 3] } else { allowed_q_values().to_vec() };
        for &q_hat in &q_hat_range {
            for e in 1..=caps.max_e {
                // per-k admissible (s, m) pairs
                let mut per_k: Vec<Vec<MobileEntry>> = Vec::new();
                let mut feasible = true;
                for &k in &scenario.mobile_ks {
                    let frac = scenario.frac(k);
                    let mut choices = Vec::new();
                    for m in scenario.min_m(k)..=caps.max_m {
                        // k q-hat = q s + (q (frac + m) - k alpha) e
                        let lhs = rat(i128::from(k) * i128::from(q_hat), 1);
                        let coeff = (rat(q, 1) * (frac + rat(m as i128, 1))
                            - rat(i128::from(k), 1) * alpha)
                            * rat(i128::from(e), 1);
                        let s_rat = (lhs - coeff) / rat(q, 1);
                        if !s_rat.is_integer() {
                            continue;
                        }
                        let s = s_rat.to_integer() as i64;
                        if s < 0 || s > caps.max_s {
                            continue;
                        }
                        choices.push(MobileEntry { k, s, m });
                    }
                    if choices.is_empty() {
                        feasible = false;
                        break;
                    }
                    per_k.push(choices);
                }
                if !feasible {
                    continue;
                }
                // cartesian product over the per-k assignments
                let mut stack: Vec<Vec<MobileEntry>> = alloc::vec![Vec::new()];
                for choices in &per_k {
                    let mut next = Vec::with_capacity(stack.len() * choices.len());
                    for partial in &stack {
                        for &c in choices {
                            let mut row = partial.clone();
                            row.push(c);
                            next.push(row);
                        }
                    }
                    stack = next;
                }
                for entries in stack {
                    out.push(LinkSolution { q_hat, e, fiber, entries });
                }
            }
        }
    }
    out.sort();
    out
}

/// Per-target dimension data: `dims[i][k-1] = dim |k Theta|` for the `i`-th
/// candidate of that index.
#[derive(Debug, Clone, Default)]
pub struct TargetTables {
    tables: BTreeMap<u32, Vec<Vec<i64>>>,
}

impl TargetTables {
    /// Enumerates candidates for each listed index and tabulates
    /// `dim |k Theta|` for `k = 1..=max_k`.
    pub fn build(indices: &[u32], cfg: &FilterConfig, max_k: u32) -> Self {
        let mut tables = BTreeMap::new();
        for &q in indices {
            let rows = enumerate_candidates(q, cfg);
            let dims: Vec<Vec<i64>> = rows
                .iter()
                .map(|c| {
                    (1..=i64::from(max_k))
                        .map(|k| c.numerics().linear_system_dim(k).expect("valid candidate"))
                        .collect()
                })
                .collect();
            tables.insert(q, dims);
        }
        TargetTables { tables }
    }

    pub fn insert(&mut self, q: u32, dims: Vec<Vec<i64>>) {
        self.tables.insert(q, dims);
    }

    pub fn get(&self, q: u32) -> Option<&[Vec<i64>]> {
        self.tables.get(&q).map(|v| v.as_slice())
    }

    fn dim(table: &[i64], s: i64) -> i64 {
        if s == 0 {
            return 0; // |0| is the trivial system
        }
        table.get(s as usize - 1).copied().unwrap_or(i64::MAX)
    }
}

/// Why a solution was eliminated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    pub solution: LinkSolution,
    pub filter: &'static str,
    pub detail: String,
}

/// A numerically feasible branch left over after all filters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Survivor {
    pub solution: LinkSolution,
    pub note: String,
}

fn movability_check(scenario: &LinkScenario, sol: &LinkSolution) -> Option<String> {
    if sol.fiber {
        return None; // vertical systems may have s_k = 0
    }
    for t in &sol.entries {
        if t.s == 0 && scenario.source_dim(t.k) >= 1 {
            return Some(format!(
                "movable |{}A| (dim {}) cannot contract to a point class: s_{} >= 1",
                t.k,
                scenario.source_dim(t.k),
                t.k
            ));
        }
    }
    None
}

fn torsion_check(scenario: &LinkScenario, sol: &LinkSolution) -> Option<String> {
    if sol.fiber || sol.e == 1 {
        return None;
    }
    // s_1 = 0 with dim |A| = 0 makes the transform of M_1 the contracted
    // divisor, so the target class group is torsion free and e = 1
    if let Some(t) = sol.entry(1) {
        if t.s == 0 && scenario.source_dim(1) == 0 {
            return Some(format!(
                "s_1 = 0 forces a torsion-free target with e = 1, got e = {}",
                sol.e
            ));
        }
    }
    None
}

/// Checks a solution against one target candidate's dimension table.
/// `full_dims` selects the dimension-comparison stage; without it only
/// effectivity and the exceptional-coincidence check run. Failures carry
/// the number of checks passed, so the most informative target is reported.
fn target_ok(
    scenario: &LinkScenario,
    sol: &LinkSolution,
    table: &[i64],
    full_dims: bool,
) -> Result<(), (usize, String)> {
    let mut score = 0;
    let fail = |score: usize, msg: String| Err((score, msg));
    let e_dim = TargetTables::dim(table, i64::from(sol.e));
    if e_dim < 0 {
        return fail(score, format!("|{}Theta| is empty but contains the transform of E", sol.e));
    }
    score += 1;
    for t in &sol.entries {
        let s_dim = TargetTables::dim(table, t.s);
        if t.s >= 1 && s_dim < 0 {
            return fail(
                score,
                format!("|{}Theta| is empty but contains the transform of |{}A|", t.s, t.k),
            );
        }
        score += 1;
        if full_dims && s_dim < scenario.source_dim(t.k) {
            return fail(
                score,
                format!(
                    "dim |{}Theta| = {} < dim |{}A| = {}",
                    t.s,
                    s_dim,
                    t.k,
                    scenario.source_dim(t.k)
                ),
            );
        }
        score += 1;
        if t.s == i64::from(sol.e) && e_dim == 0 {
            return fail(
                score,
                format!(
                    "dim |{}Theta| = 0 would force the transforms of E and |{}A| to coincide",
                    sol.e, t.k
                ),
            );
        }
        score += 1;
    }
    Ok(())
}

fn target_filter_stage(
    scenario: &LinkScenario,
    sols: Vec<LinkSolution>,
    tables: &TargetTables,
    full_dims: bool,
    filter_name: &'static str,
    eliminations: &mut Vec<Elimination>,
) -> Result<Vec<LinkSolution>, LinkError> {
    let mut kept = Vec::new();
    for sol in sols {
        if sol.fiber {
            kept.push(sol);
            continue;
        }
        let table =
            tables.get(sol.q_hat).ok_or(LinkError::MissingTargetTable { q_hat: sol.q_hat })?;
        if table.is_empty() {
            let detail = format!("no numerical candidates of index {} exist", sol.q_hat);
            eliminations.push(Elimination { solution: sol, filter: filter_name, detail });
            continue;
        }
        // a solution survives if some target candidate admits it; on full
        // rejection, report the failure of the target that got furthest
        let mut best_err: Option<(usize, String)> = None;
        let mut ok = false;
        for t in table {
            match target_ok(scenario, &sol, t, full_dims) {
                Ok(()) => {
                    ok = true;
                    break;
                }
                Err((score, msg)) => {
                    if best_err.as_ref().is_none_or(|(s, _)| score > *s) {
                        best_err = Some((score, msg));
                    }
                }
            }
        }
        if ok {
            kept.push(sol);
        } else {
            let detail = best_err.map(|(_, m)| m).unwrap_or_default();
            eliminations.push(Elimination { solution: sol, filter: filter_name, detail });
        }
    }
    Ok(kept)
}

/// The dimension filter of the ladder: a birational solution survives only
/// if some target candidate of index `q_hat` satisfies
/// `dim |s_k Theta| >= dim |kA|` for every listed `k` (with `s_k >= 1`
/// whenever `|kA|` is movable), together with effectivity of the
/// transforms of `E` and the `|kA|`. Rejections carry the violated
/// inequality.
pub fn target_dimension_filter(
    scenario: &LinkScenario,
    solutions: Vec<LinkSolution>,
    tables: &TargetTables,
) -> Result<(Vec<LinkSolution>, Vec<Elimination>), LinkError> {
    let mut eliminations = Vec::new();
    let mut kept = Vec::new();
    for sol in solutions {
        if let Some(detail) = movability_check(scenario, &sol) {
            eliminations.push(Elimination { solution: sol, filter: "movability", detail });
            continue;
        }
        kept.push(sol);
    }
    let kept = target_filter_stage(scenario, kept, tables, true, "dimension", &mut eliminations)?;
    Ok((kept, eliminations))
}

/// A full case analysis: raw solutions, the staged eliminations, and the
/// surviving branches.
#[derive(Debug, Clone)]
pub struct CaseReport {
    pub scenario: LinkScenario,
    pub caps: SearchCaps,
    pub raw_solutions: Vec<LinkSolution>,
    pub eliminations: Vec<Elimination>,
    pub survivors: Vec<Survivor>,
    pub notes: Vec<String>,
}

impl CaseReport {
    /// Solutions alive after the named ladder stage (stages run in order
    /// movability, torsion, effectivity, dimension).
    pub fn alive_after(&self, stage: &str) -> Vec<&LinkSolution> {
        let stages = ["movability", "torsion", "effectivity", "dimension"];
        let cut = stages.iter().position(|s| *s == stage).map_or(stages.len(), |i| i + 1);
        self.raw_solutions
            .iter()
            .filter(|sol| {
                !self.eliminations.iter().any(|e| {
                    e.solution == **sol
                        && stages.iter().position(|s| *s == e.filter).is_some_and(|i| i < cut)
                })
            })
            .collect()
    }
}

/// Runs the ladder: solve, then movability, torsion consistency,
/// effectivity and dimension filters, recording one elimination per kill.
/// Survivors are tagged as numerically feasible; deciding them takes
/// geometric arguments beyond the numerics.
pub fn analyze_case(
    scenario: &LinkScenario,
    caps: &SearchCaps,
    tables: &TargetTables,
) -> Result<CaseReport, LinkError> {
    let raw = solve_main_equation(scenario, caps);
    let mut eliminations = Vec::new();
    let mut notes = Vec::new();

    let mut alive = Vec::new();
    for sol in raw.clone() {
        if let Some(detail) = movability_check(scenario, &sol) {
            eliminations.push(Elimination { solution: sol, filter: "movability", detail });
        } else {
            alive.push(sol);
        }
    }
    let mut kept = Vec::new();
    for sol in alive {
        if let Some(detail) = torsion_check(scenario, &sol) {
            eliminations.push(Elimination { solution: sol, filter: "torsion", detail });
        } else {
            kept.push(sol);
        }
    }
    let kept =
        target_filter_stage(scenario, kept, tables, false, "effectivity", &mut eliminations)?;
    let kept = target_filter_stage(scenario, kept, tables, true, "dimension", &mut eliminations)?;

    if raw.is_empty() {
        notes.push(String::from(
            "no solutions: the master relation with the threshold bounds already \
             overflows the allowed target index range",
        ));
    }

    let survivors = kept
        .into_iter()
        .map(|solution| {
            let note = if solution.fiber {
                let base = if solution.q_hat <= 2 {
                    "base a curve or a Du Val surface (a surface base needs q-hat <= 2)"
                } else {
                    "base a curve (q-hat = 3 rules out a surface base)"
                };
                format!("numerically feasible fiber-type branch; {base}")
            } else {
                String::from("numerically feasible; geometric argument required to decide")
            };
            Survivor { solution, note }
        })
        .collect();

    Ok(CaseReport {
        scenario: scenario.clone(),
        caps: *caps,
        raw_solutions: raw,
        eliminations,
        survivors,
        notes,
    })
}

/// The birational relations downstream of a link, for a contracted divisor
/// `F ~ dA`: `-e q = (b e - q-hat delta) d` and
/// `-s_k q + k q-hat = (b s_k - q-hat gamma_k) d`, with torsion order
/// `n = d/e` on the target class group. At `d = e` (torsion free) they
/// reduce to `b e = q-hat delta - q` and `e gamma_k = s_k delta - k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BirationalRelations {
    pub d: u32,
    pub e: u32,
    pub delta: i64,
    pub b: Rational,
    pub gammas: Vec<(u32, Rational)>,
    /// Torsion order `d/e`, when integral.
    pub torsion_order: Option<u32>,
    /// Smooth-point contractions force all of `b`, `gamma_k` integral;
    /// non-integrality here excludes them.
    pub all_integral: bool,
}

/// Solves the relations above for `b` and the `gamma_k` at a given `delta`,
/// flagging non-integrality.
pub fn birational_relations(
    q: u32,
    q_hat: u32,
    e: u32,
    d: u32,
    s_entries: &[(u32, i64)],
    delta: i64,
) -> BirationalRelations {
    let (q, q_hat_r, e_r, d_r) = (
        rat(i128::from(q), 1),
        rat(i128::from(q_hat), 1),
        rat(i128::from(e), 1),
        rat(i128::from(d), 1),
    );
    let delta_r = rat(i128::from(delta), 1);
    // -e q = (b e - q-hat delta) d
    let b = (q_hat_r * delta_r - e_r * q / d_r) / e_r;
    // -s_k q + k q-hat = (b s_k - q-hat gamma_k) d
    let gammas: Vec<(u32, Rational)> = s_entries
        .iter()
        .map(|&(k, s)| {
            let (k_r, s_r) = (rat(i128::from(k), 1), rat(i128::from(s), 1));
            let gamma = (b * s_r - (k_r * q_hat_r - s_r * q) / d_r) / q_hat_r;
            (k, gamma)
        })
        .collect();
    let all_integral = b.is_integer() && gammas.iter().all(|(_, g)| g.is_integer());
    BirationalRelations {
        d,
        e,
        delta,
        b,
        gammas,
        torsion_order: torsion_structure(d, e).ok(),
        all_integral,
    }
}

/// `Cl(X-hat) = Z + Z_n` with `d = n e`.
pub fn torsion_structure(d: u32, e: u32) -> Result<u32, LinkError> {
    if e == 0 || !d.is_multiple_of(e) {
        return Err(LinkError::TorsionNotDivisible { d, e });
    }
    Ok(d / e)
}

/// All `delta >= 1` with `b = (q-hat delta - q)/e` a positive integer and
/// `base + b` within the source difficulty (the difficulty strictly
/// decreases under flips, so the blown-up side bounds the contracted one).
pub fn difficulty_prune(source_difficulty: u64, q: u32, q_hat: u32, e: u32, base: u64) -> Vec<i64> {
    let mut out = Vec::new();
    if base > source_difficulty {
        return out;
    }
    let budget = (source_difficulty - base) as i128;
    let mut delta: i64 = 1;
    loop {
        let num = i128::from(q_hat) * i128::from(delta) - i128::from(q);
        if num > budget * i128::from(e) {
            break;
        }
        if num > 0 && num % i128::from(e) == 0 {
            out.push(delta);
        }
        delta += 1;
    }
    out
}

/// Coprime weight pairs `(w1, w2)` with `w1 <= w2` and `w1 + w2 = b`, the
/// candidate weights of a smooth-point weighted blowup with `b` the
/// discrepancy sum.
pub fn blowup_weights(b: u32) -> Vec<(u32, u32)> {
    (1..=b / 2).filter(|&w1| w1.gcd(&(b - w1)) == 1).map(|w1| (w1, b - w1)).collect()
}
