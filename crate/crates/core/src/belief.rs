//! Basic belief assignments over finite frames and Dempster's rule.
//!
//! A [`Frame`] is a small frame of discernment (at most 16 atoms); focal sets
//! are encoded as bitsets over the frame's atom indices so that power-set
//! enumeration stays exact and cheap. A [`Bba`] maps non-empty focal sets to
//! masses summing to one. The module provides the three constructions the
//! rest of the crate needs: simple-support BBAs, conversion of a scalar
//! evidence feature into a simple-support BBA, and conjunctive combination
//! with conflict renormalization (Dempster's rule).

use std::collections::BTreeMap;

use thiserror::Error;

use crate::scalar::Real;

/// Largest supported frame size; focal sets are bitsets over atom indices.
pub const MAX_FRAME_LEN: usize = 16;

#[derive(Debug, Error, PartialEq)]
pub enum BeliefError {
    #[error("frame must have between 1 and {MAX_FRAME_LEN} labels")]
    InvalidFrameSize,
    #[error("duplicate frame label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown frame label `{0}`")]
    UnknownLabel(String),
    #[error("mass {0} outside [0, 1]")]
    MassOutOfRange(f64),
    #[error("focal set may not be empty")]
    EmptyFocalSet,
    #[error("focal set is not a subset of the frame")]
    FocalOutsideFrame,
    #[error("masses sum to {0}, expected 1")]
    MassSumNotOne(f64),
    #[error("cannot combine BBAs defined over different frames")]
    FrameMismatch,
    #[error("total conflict between operands (K = {0})")]
    TotalConflict(f64),
    #[error("feature value {0} is negative")]
    NegativeFeature(f64),
    #[error("feature value {value} exceeds scale maximum {max}")]
    FeatureAboveMax { value: f64, max: f64 },
    #[error("feature scale maximum must be positive, got {0}")]
    EmptyFeatureScale(f64),
}

fn as_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// A set of frame atoms, encoded as a bitset over atom indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FocalSet(u32);

impl FocalSet {
    pub const EMPTY: FocalSet = FocalSet(0);

    /// Set containing the single atom at `index`.
    pub fn singleton(index: usize) -> FocalSet {
        debug_assert!(index < MAX_FRAME_LEN);
        FocalSet(1 << index)
    }

    /// Set containing all atoms of a frame with `len` atoms.
    pub fn full(len: usize) -> FocalSet {
        debug_assert!((1..=MAX_FRAME_LEN).contains(&len));
        FocalSet(((1u64 << len) - 1) as u32)
    }

    pub fn from_indices(indices: &[usize]) -> FocalSet {
        indices.iter().fold(FocalSet::EMPTY, |s, &i| s.with(i))
    }

    pub fn with(self, index: usize) -> FocalSet {
        debug_assert!(index < MAX_FRAME_LEN);
        FocalSet(self.0 | (1 << index))
    }

    pub fn intersection(self, other: FocalSet) -> FocalSet {
        FocalSet(self.0 & other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 & (1 << index) != 0
    }

    pub fn is_subset_of(self, other: FocalSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..MAX_FRAME_LEN).filter(move |&i| self.contains(i))
    }
}

/// A frame of discernment: an ordered list of distinct atom labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    labels: Vec<String>,
}

impl Frame {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Frame, BeliefError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() || labels.len() > MAX_FRAME_LEN {
            return Err(BeliefError::InvalidFrameSize);
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(BeliefError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Frame { labels })
    }

    /// The influence/passivity frame used for edge scoring.
    pub fn influence() -> Frame {
        Frame::new(["I", "P"]).expect("static frame is valid")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full_set(&self) -> FocalSet {
        FocalSet::full(self.labels.len())
    }

    /// Builds a focal set from atom labels.
    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<FocalSet, BeliefError> {
        let mut set = FocalSet::EMPTY;
        for l in labels {
            let idx = self
                .index_of(l.as_ref())
                .ok_or_else(|| BeliefError::UnknownLabel(l.as_ref().to_string()))?;
            set = set.with(idx);
        }
        Ok(set)
    }
}

/// A basic belief assignment: masses over non-empty subsets of a frame.
///
/// Invariants (enforced at every construction site): each focal set is a
/// non-empty subset of the frame, masses are non-negative, they sum to one
/// within [`Real::SUM_TOL`], and residuals below [`Real::MASS_FLOOR`] are
/// dropped after normalization.
#[derive(Clone, Debug, PartialEq)]
pub struct Bba<T: Real> {
    frame: Frame,
    masses: BTreeMap<FocalSet, T>,
}

impl<T: Real> Bba<T> {
    /// The vacuous BBA: all mass on the full frame (total ignorance).
    pub fn vacuous(frame: Frame) -> Bba<T> {
        let mut masses = BTreeMap::new();
        masses.insert(frame.full_set(), T::one());
        Bba { frame, masses }
    }

    /// Simple-support BBA: `mass` on `focal`, the rest on the full frame.
    ///
    /// With `mass == 0` the result is vacuous; with `mass == 1` it is
    /// categorical on `focal`.
    pub fn simple_support(frame: Frame, focal: FocalSet, mass: T) -> Result<Bba<T>, BeliefError> {
        if mass < T::zero() || mass > T::one() {
            return Err(BeliefError::MassOutOfRange(as_f64(mass)));
        }
        if focal.is_empty() {
            return Err(BeliefError::EmptyFocalSet);
        }
        if !focal.is_subset_of(frame.full_set()) {
            return Err(BeliefError::FocalOutsideFrame);
        }
        let mut masses = BTreeMap::new();
        if mass > T::zero() {
            masses.insert(focal, mass);
        }
        let rest = T::one() - mass;
        if rest > T::zero() {
            *masses.entry(frame.full_set()).or_insert_with(T::zero) += rest;
        }
        Ok(Bba { frame, masses })
    }

    /// Builds a BBA from explicit focal-set masses, validating the invariants.
    pub fn from_masses(
        frame: Frame,
        entries: impl IntoIterator<Item = (FocalSet, T)>,
    ) -> Result<Bba<T>, BeliefError> {
        let full = frame.full_set();
        let mut masses: BTreeMap<FocalSet, T> = BTreeMap::new();
        for (set, mass) in entries {
            if set.is_empty() {
                return Err(BeliefError::EmptyFocalSet);
            }
            if !set.is_subset_of(full) {
                return Err(BeliefError::FocalOutsideFrame);
            }
            if mass < T::zero() || mass > T::one() {
                return Err(BeliefError::MassOutOfRange(as_f64(mass)));
            }
            *masses.entry(set).or_insert_with(T::zero) += mass;
        }
        let total: T = masses.values().copied().sum();
        if (total - T::one()).abs() > T::SUM_TOL {
            return Err(BeliefError::MassSumNotOne(as_f64(total)));
        }
        masses.retain(|_, m| *m >= T::MASS_FLOOR);
        Ok(Bba { frame, masses })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Mass assigned to exactly `set` (zero if not focal).
    pub fn mass(&self, set: FocalSet) -> T {
        self.masses.get(&set).copied().unwrap_or_else(T::zero)
    }

    /// Mass on the singleton with the given label.
    pub fn singleton_mass(&self, label: &str) -> T {
        match self.frame.index_of(label) {
            Some(i) => self.mass(FocalSet::singleton(i)),
            None => T::zero(),
        }
    }

    pub fn focal_sets(&self) -> impl Iterator<Item = (FocalSet, T)> + '_ {
        self.masses.iter().map(|(&s, &m)| (s, m))
    }

    pub fn total_mass(&self) -> T {
        self.masses.values().copied().sum()
    }

    pub fn is_vacuous(&self) -> bool {
        self.masses.len() == 1 && self.masses.contains_key(&self.frame.full_set())
    }

    /// Dempster's rule: conjunctive combination with conflict renormalization.
    ///
    /// `m(C) = Σ_{A∩B=C, C≠∅} a(A)·b(B) / (1−K)` with
    /// `K = Σ_{A∩B=∅} a(A)·b(B)`. Fails when the operands live on different
    /// frames or when the conflict is total (K within
    /// [`Real::CONFLICT_FLOOR`] of 1); the caller decides the fallback.
    pub fn combine_dempster(&self, other: &Bba<T>) -> Result<Bba<T>, BeliefError> {
        if self.frame != other.frame {
            return Err(BeliefError::FrameMismatch);
        }
        let mut combined: BTreeMap<FocalSet, T> = BTreeMap::new();
        let mut conflict = T::zero();
        for (&a, &ma) in &self.masses {
            for (&b, &mb) in &other.masses {
                let c = a.intersection(b);
                let product = ma * mb;
                if c.is_empty() {
                    conflict += product;
                } else {
                    *combined.entry(c).or_insert_with(T::zero) += product;
                }
            }
        }
        if conflict >= T::one() - T::CONFLICT_FLOOR {
            return Err(BeliefError::TotalConflict(as_f64(conflict)));
        }
        let scale = T::one() - conflict;
        for m in combined.values_mut() {
            *m = *m / scale;
        }
        combined.retain(|_, m| *m >= T::MASS_FLOOR);
        Ok(Bba {
            frame: self.frame.clone(),
            masses: combined,
        })
    }
}

/// Turns a scalar evidence feature into a simple-support BBA on the
/// influence frame: `m({I}) = value / max_value`, remainder on Ω.
///
/// `max_value <= 0` signals an empty feature column; the caller substitutes a
/// vacuous BBA in that case.
pub fn feature_to_bba<T: Real>(value: T, max_value: T) -> Result<Bba<T>, BeliefError> {
    if max_value <= T::zero() {
        return Err(BeliefError::EmptyFeatureScale(as_f64(max_value)));
    }
    if value < T::zero() {
        return Err(BeliefError::NegativeFeature(as_f64(value)));
    }
    if value > max_value {
        return Err(BeliefError::FeatureAboveMax {
            value: as_f64(value),
            max: as_f64(max_value),
        });
    }
    let frame = Frame::influence();
    let focal = FocalSet::singleton(frame.index_of("I").expect("influence frame has I"));
    Bba::simple_support(frame, focal, value / max_value)
}
