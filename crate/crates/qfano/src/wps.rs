//! Weighted projective hypersurface numerics.
//!
//! A quasi-homogeneous hypersurface `X_d` in `P(w_0..w_m)` has Fano index
//! `sum(w) - d` and degree `A^3 = d / prod(w)` (the ambient space itself is
//! `d = 0` with fundamental degree `1 / prod(w)`). These invariants are the
//! numeric handshake between enumerated candidates and concrete model
//! varieties; singularity typing of model points is carried as annotation
//! data, never computed.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::enumerate::FanoCandidate;
use crate::rational::{rat, Rational};

/// Errors from hypersurface construction and invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WpsError {
    EmptyWeights,
    ZeroWeight,
    /// Weights share a global common factor; not well-formed.
    CommonFactor {
        gcd: u32,
    },
    /// A listed monomial does not have weighted degree `d`.
    BadMonomialDegree {
        monomial: Vec<u32>,
        weighted_degree: u32,
    },
    /// `sum(w) <= d`: not Fano.
    NotFano,
    /// Operation needs a specific dimension.
    WrongDimension {
        expected: u32,
        got: i64,
    },
    /// Operation needs the defining monomial support.
    NoMonomialSupport,
    /// Coordinate index out of range.
    BadCoordinate {
        index: usize,
    },
}

impl fmt::Display for WpsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WpsError::EmptyWeights => write!(f, "weight list is empty"),
            WpsError::ZeroWeight => write!(f, "weights must be positive"),
            WpsError::CommonFactor { gcd } => {
                write!(f, "weights share the common factor {gcd}")
            }
            WpsError::BadMonomialDegree { monomial, weighted_degree } => {
                write!(f, "monomial {monomial:?} has weighted degree {weighted_degree}, not the hypersurface degree")
            }
            WpsError::NotFano => write!(f, "sum of weights does not exceed the degree"),
            WpsError::WrongDimension { expected, got } => {
                write!(f, "expected a {expected}-fold, got dimension {got}")
            }
            WpsError::NoMonomialSupport => write!(f, "no defining monomial support recorded"),
            WpsError::BadCoordinate { index } => write!(f, "no coordinate with index {index}"),
        }
    }
}

impl core::error::Error for WpsError {}

/// Ambient weighted projective space (`degree = 0`) or a quasi-homogeneous
/// hypersurface, with optional defining monomial support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedHypersurface {
    weights: Vec<u32>,
    degree: u32,
    monomials: Option<Vec<Vec<u32>>>,
}

impl WeightedHypersurface {
    pub fn ambient(weights: &[u32]) -> Result<Self, WpsError> {
        Self::validate_weights(weights)?;
        Ok(WeightedHypersurface { weights: weights.to_vec(), degree: 0, monomials: None })
    }

    pub fn hypersurface(weights: &[u32], degree: u32) -> Result<Self, WpsError> {
        Self::validate_weights(weights)?;
        Ok(WeightedHypersurface { weights: weights.to_vec(), degree, monomials: None })
    }

    /// Hypersurface with its defining monomial support (exponent vectors of
    /// weighted degree exactly `degree`).
    pub fn with_monomials(
        weights: &[u32],
        degree: u32,
        monomials: Vec<Vec<u32>>,
    ) -> Result<Self, WpsError> {
        Self::validate_weights(weights)?;
        for mono in &monomials {
            let wd: u32 = mono.iter().zip(weights).map(|(&e, &w)| e * w).sum::<u32>()
                + if mono.len() > weights.len() { 1 } else { 0 };
            if mono.len() != weights.len() || wd != degree {
                return Err(WpsError::BadMonomialDegree {
                    monomial: mono.clone(),
                    weighted_degree: wd,
                });
            }
        }
        Ok(WeightedHypersurface { weights: weights.to_vec(), degree, monomials: Some(monomials) })
    }

    fn validate_weights(weights: &[u32]) -> Result<(), WpsError> {
        if weights.is_empty() {
            return Err(WpsError::EmptyWeights);
        }
        if weights.contains(&0) {
            return Err(WpsError::ZeroWeight);
        }
        let gcd = weights.iter().fold(0u32, |g, &w| g.gcd(&w));
        if gcd > 1 {
            return Err(WpsError::CommonFactor { gcd });
        }
        Ok(())
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_ambient(&self) -> bool {
        self.degree == 0
    }

    pub fn monomials(&self) -> Option<&[Vec<u32>]> {
        self.monomials.as_deref()
    }

    pub fn dimension(&self) -> i64 {
        self.weights.len() as i64 - 1 - i64::from(self.degree > 0)
    }

    fn weight_sum(&self) -> u32 {
        self.weights.iter().sum()
    }

    fn weight_product(&self) -> i128 {
        self.weights.iter().map(|&w| i128::from(w)).product()
    }

    /// Adjunction index `sum(w) - d`; errors when not Fano.
    pub fn fano_index(&self) -> Result<u32, WpsError> {
        let sw = self.weight_sum();
        if sw <= self.degree {
            return Err(WpsError::NotFano);
        }
        Ok(sw - self.degree)
    }

    /// `A^3 = d / prod(w)` for hypersurface threefolds, `1 / prod(w)` for
    /// ambient threefolds.
    pub fn degree_a3(&self) -> Result<Rational, WpsError> {
        if self.dimension() != 3 {
            return Err(WpsError::WrongDimension { expected: 3, got: self.dimension() });
        }
        let num = if self.is_ambient() { 1 } else { i128::from(self.degree) };
        Ok(rat(num, self.weight_product()))
    }

    /// Fundamental-class degree in any dimension (used by the surface ops).
    fn class_degree(&self) -> Rational {
        let num = if self.is_ambient() { 1 } else { i128::from(self.degree) };
        rat(num, self.weight_product())
    }

    /// `K^2 = (sum(w) - d)^2 * d / prod(w)` for surfaces; degenerates to 0
    /// at `d = sum(w)`.
    pub fn surface_k_squared(&self) -> Result<Rational, WpsError> {
        if self.dimension() != 2 {
            return Err(WpsError::WrongDimension { expected: 2, got: self.dimension() });
        }
        let index = i128::from(self.weight_sum()) - i128::from(self.degree);
        Ok(rat(index * index, 1) * self.class_degree())
    }

    /// Anticanonical degree of the coordinate section `{x_i = 0}` of a
    /// surface: `(sum(w) - d) * d * w_i / prod(w)`.
    pub fn section_anticanonical_degree(&self, coordinate: usize) -> Result<Rational, WpsError> {
        if self.dimension() != 2 {
            return Err(WpsError::WrongDimension { expected: 2, got: self.dimension() });
        }
        let w =
            *self.weights.get(coordinate).ok_or(WpsError::BadCoordinate { index: coordinate })?;
        let index = i128::from(self.weight_sum()) - i128::from(self.degree);
        Ok(rat(index * i128::from(w), 1) * self.class_degree())
    }

    /// Whether the `i`-th coordinate point lies on the hypersurface: it does
    /// unless some pure power of `x_i` occurs in the support, which is then
    /// returned as the witness.
    pub fn stratum_membership(&self, coordinate: usize) -> Result<Membership, WpsError> {
        if coordinate >= self.weights.len() {
            return Err(WpsError::BadCoordinate { index: coordinate });
        }
        let monomials = self.monomials.as_ref().ok_or(WpsError::NoMonomialSupport)?;
        for mono in monomials {
            let pure =
                mono.iter().enumerate().all(|(j, &e)| if j == coordinate { e > 0 } else { e == 0 });
            if pure {
                return Ok(Membership::Off { witness: mono.clone() });
            }
        }
        Ok(Membership::On)
    }
}

impl fmt::Display for WeightedHypersurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.is_ambient() {
            write!(f, "X{} in ", self.degree)?;
        }
        write!(f, "P(")?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// Verdict of [`WeightedHypersurface::stratum_membership`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    On,
    Off { witness: Vec<u32> },
}

/// Field-by-field comparison of a model against a candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelCheck {
    pub index_expected: u32,
    pub index_actual: Option<u32>,
    pub degree_expected: Rational,
    pub degree_actual: Option<Rational>,
    /// Basket indices are compared as an annotation only.
    pub basket_indices: Vec<u32>,
}

impl ModelCheck {
    pub fn index_ok(&self) -> bool {
        self.index_actual == Some(self.index_expected)
    }

    pub fn degree_ok(&self) -> bool {
        self.degree_actual == Some(self.degree_expected)
    }

    pub fn pass(&self) -> bool {
        self.index_ok() && self.degree_ok()
    }
}

/// Checks `fano_index = q` and `degree_a3 = A^3` against a candidate.
pub fn verify_candidate(model: &WeightedHypersurface, candidate: &FanoCandidate) -> ModelCheck {
    ModelCheck {
        index_expected: candidate.index(),
        index_actual: model.fano_index().ok(),
        degree_expected: candidate.degree_a3(),
        degree_actual: model.degree_a3().ok(),
        basket_indices: candidate.indices(),
    }
}

/// What a registry entry models.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelRole {
    /// One of the three classified index-7 varieties.
    ClassifiedThreefold,
    /// A normal form of the degree-6 threefold in `P(1,2,3,3,4)`.
    ThreefoldNormalForm,
    /// A degree-6 del Pezzo surface form in `P(1,2,3,4)`.
    SurfaceForm,
}

/// A registry entry: a model with its literature annotations.
#[derive(Debug, Clone)]
pub struct ModelEntry {
    pub name: String,
    pub role: ModelRole,
    pub hypersurface: WeightedHypersurface,
    /// Singularity typing and similar facts, carried verbatim as data.
    pub annotations: Vec<String>,
}

fn phi_times_extra_cubic() -> Vec<Vec<u32>> {
    // y3' * phi(y1,y2,y3) with phi the general weighted cubic: the support
    // is y3'y3, y3'y1y2, y3'y1^3
    vec![vec![0, 0, 1, 1, 0], vec![1, 1, 0, 1, 0], vec![3, 0, 0, 1, 0]]
}

/// The static model registry: the three classified index-7 varieties, the
/// two sextic threefold normal forms, and the two sextic del Pezzo surface
/// forms.
pub fn normal_form_registry() -> Vec<ModelEntry> {
    let w33 = [1, 2, 3, 3, 4];
    let mut form_a = vec![vec![0, 1, 0, 0, 1], vec![0, 0, 2, 0, 0], vec![6, 0, 0, 0, 0]];
    form_a.extend(phi_times_extra_cubic());
    let mut form_b = vec![vec![2, 0, 0, 0, 1], vec![0, 0, 2, 0, 0], vec![0, 3, 0, 0, 0]];
    form_b.extend(phi_times_extra_cubic());

    vec![
        ModelEntry {
            name: String::from("P(1,1,2,3)"),
            role: ModelRole::ClassifiedThreefold,
            hypersurface: WeightedHypersurface::ambient(&[1, 1, 2, 3]).unwrap(),
            annotations: vec![String::from("basket (2,3)")],
        },
        ModelEntry {
            name: String::from("X6 in P(1,2,2,3,5)"),
            role: ModelRole::ClassifiedThreefold,
            hypersurface: WeightedHypersurface::hypersurface(&[1, 2, 2, 3, 5], 6).unwrap(),
            annotations: vec![String::from("basket (2^3,5)")],
        },
        ModelEntry {
            name: String::from("X6 in P(1,2,3,3,4)"),
            role: ModelRole::ClassifiedThreefold,
            hypersurface: WeightedHypersurface::hypersurface(&[1, 2, 3, 3, 4], 6).unwrap(),
            annotations: vec![String::from("basket (2,3^2,4)")],
        },
        ModelEntry {
            name: String::from("sextic threefold form A"),
            role: ModelRole::ThreefoldNormalForm,
            hypersurface: WeightedHypersurface::with_monomials(&w33, 6, form_a).unwrap(),
            annotations: vec![String::from(
                "index-4 point is the cyclic quotient 1/4(1,1,3); an index-2 point is present",
            )],
        },
        ModelEntry {
            name: String::from("sextic threefold form B"),
            role: ModelRole::ThreefoldNormalForm,
            hypersurface: WeightedHypersurface::with_monomials(&w33, 6, form_b).unwrap(),
            annotations: vec![String::from(
                "index-4 point is a terminal singularity of type cAx/4; no index-2 point",
            )],
        },
        ModelEntry {
            name: String::from("sextic surface with A1 + A3"),
            role: ModelRole::SurfaceForm,
            hypersurface: WeightedHypersurface::with_monomials(
                &[1, 2, 3, 4],
                6,
                vec![vec![0, 1, 0, 1], vec![0, 0, 2, 0], vec![6, 0, 0, 0]],
            )
            .unwrap(),
            annotations: vec![String::from("Du Val singularities: one A1 and one A3 point")],
        },
        ModelEntry {
            name: String::from("sextic surface with D5"),
            role: ModelRole::SurfaceForm,
            hypersurface: WeightedHypersurface::with_monomials(
                &[1, 2, 3, 4],
                6,
                vec![vec![2, 0, 0, 1], vec![0, 0, 2, 0], vec![0, 3, 0, 0]],
            )
            .unwrap(),
            annotations: vec![String::from("Du Val singularities: one D5 point")],
        },
    ]
}
