//! Supercommutative coefficient rings for cochain values.
//!
//! Two instances are provided behind one runtime descriptor: the rationals
//! (commutative, everything even) and the exterior algebra of the ambient
//! space over the rationals. Exterior elements are stored sparsely, keyed by
//! strictly increasing blade index tuples; the wedge sign comes from counting
//! inversions of the merged tuple.

use crate::rat::{Rat, Vector};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Strictly increasing list of 0-based axis indices.
pub type Blade = Vec<usize>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("ring mismatch: {0} vs {1}")]
    Mismatch(RingKind, RingKind),
}

/// Runtime descriptor of the coefficient ring of a value or a cochain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind {
    /// The rationals.
    Rational,
    /// The exterior algebra of a rational vector space of this dimension.
    Exterior(usize),
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingKind::Rational => write!(f, "Q"),
            RingKind::Exterior(n) => write!(f, "ext({n})"),
        }
    }
}

/// Parity classification of a ring element or a cochain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    pub fn join(self, other: Parity) -> Parity {
        if self == other {
            self
        } else {
            Parity::Mixed
        }
    }

    /// 0 for even, 1 for odd; `None` for mixed.
    pub fn degree(self) -> Option<u8> {
        match self {
            Parity::Even => Some(0),
            Parity::Odd => Some(1),
            Parity::Mixed => None,
        }
    }
}

/// Element of the exterior algebra over `Q^dim`.
///
/// Invariants: no stored zero coefficients, blade indices strictly increasing
/// and below `dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtElement {
    dim: usize,
    terms: BTreeMap<Blade, Rat>,
}

impl ExtElement {
    pub fn zero(dim: usize) -> Self {
        ExtElement {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, c: Rat) -> Self {
        let mut e = Self::zero(dim);
        e.add_term(Vec::new(), c);
        e
    }

    /// Grade-1 element with the given coordinates.
    pub fn from_vector(v: &[Rat]) -> Self {
        let mut e = Self::zero(v.len());
        for (i, c) in v.iter().enumerate() {
            e.add_term(vec![i], c.clone());
        }
        e
    }

    /// Single term `c * e_blade`. The blade must be strictly increasing.
    pub fn term(dim: usize, blade: Blade, c: Rat) -> Self {
        assert!(
            blade.windows(2).all(|w| w[0] < w[1]),
            "blade not increasing"
        );
        assert!(blade.iter().all(|&i| i < dim), "blade index out of range");
        let mut e = Self::zero(dim);
        e.add_term(blade, c);
        e
    }

    /// Wedge of the listed vectors, in order.
    pub fn wedge_of_vectors(dim: usize, vectors: &[Vector]) -> Self {
        let mut acc = Self::scalar(dim, Rat::one());
        for v in vectors {
            acc = acc.wedge(&Self::from_vector(v));
        }
        acc
    }

    fn add_term(&mut self, blade: Blade, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(blade) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, blade: &[usize]) -> Rat {
        self.terms.get(blade).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficient of the full blade `e_0 ^ ... ^ e_{dim-1}`.
    pub fn top_coefficient(&self) -> Rat {
        self.coefficient(&(0..self.dim).collect::<Vec<_>>())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "exterior dimension mismatch");
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ExtElement {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (b.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        ExtElement {
            dim: self.dim,
            terms: self.terms.iter().map(|(b, v)| (b.clone(), c * v)).collect(),
        }
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "exterior dimension mismatch");
        let mut out = Self::zero(self.dim);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((blade, sign)) = wedge_blades(a, b) {
                    let c = ca * cb;
                    out.add_term(blade, if sign < 0 { -c } else { c });
                }
            }
        }
        out
    }

    /// Grades present, in increasing order.
    pub fn grades(&self) -> Vec<usize> {
        let mut gs: Vec<usize> = self.terms.keys().map(Vec::len).collect();
        gs.sort_unstable();
        gs.dedup();
        gs
    }

    /// The grade when homogeneous (zero counts as any grade and reports `None`).
    pub fn homogeneous_grade(&self) -> Option<usize> {
        let gs = self.grades();
        (gs.len() == 1).then(|| gs[0])
    }

    pub fn parity(&self) -> Parity {
        self.terms
            .keys()
            .map(|b| {
                if b.len() % 2 == 0 {
                    Parity::Even
                } else {
                    Parity::Odd
                }
            })
            .reduce(Parity::join)
            .unwrap_or(Parity::Even)
    }

    /// `Some(c)` when `self == c * other` and `other` is nonzero.
    pub fn ratio_to(&self, other: &Self) -> Option<Rat> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Rat::zero());
        }
        let (b0, c0) = other.terms.iter().next().expect("nonzero");
        let ratio = &self.coefficient(b0) / c0;
        (self == &other.scale(&ratio)).then_some(ratio)
    }
}

/// Wedge of two strictly increasing blades: merged blade and sign, or `None`
/// when an index repeats.
pub fn wedge_blades(a: &[usize], b: &[usize]) -> Option<(Blade, i32)> {
    let mut inversions = 0usize;
    for x in b {
        if a.binary_search(x).is_ok() {
            return None;
        }
        inversions += a.iter().filter(|y| *y > x).count();
    }
    let mut merged: Blade = a.iter().chain(b).copied().collect();
    merged.sort_unstable();
    Some((merged, if inversions.is_multiple_of(2) { 1 } else { -1 }))
}

/// A value of one of the supported coefficient rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingElement {
    Scalar(Rat),
    Exterior(ExtElement),
}

impl RingElement {
    pub fn kind(&self) -> RingKind {
        match self {
            RingElement::Scalar(_) => RingKind::Rational,
            RingElement::Exterior(e) => RingKind::Exterior(e.dim()),
        }
    }

    pub fn zero(kind: RingKind) -> Self {
        match kind {
            RingKind::Rational => RingElement::Scalar(Rat::zero()),
            RingKind::Exterior(n) => RingElement::Exterior(ExtElement::zero(n)),
        }
    }

    pub fn one(kind: RingKind) -> Self {
        match kind {
            RingKind::Rational => RingElement::Scalar(Rat::one()),
            RingKind::Exterior(n) => RingElement::Exterior(ExtElement::scalar(n, Rat::one())),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElement::Scalar(c) => c.is_zero(),
            RingElement::Exterior(e) => e.is_zero(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        match (self, other) {
            (RingElement::Scalar(a), RingElement::Scalar(b)) => Ok(RingElement::Scalar(a + b)),
            (RingElement::Exterior(a), RingElement::Exterior(b)) if a.dim() == b.dim() => {
                Ok(RingElement::Exterior(a.add(b)))
            }
            _ => Err(RingError::Mismatch(self.kind(), other.kind())),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        match (self, other) {
            (RingElement::Scalar(a), RingElement::Scalar(b)) => Ok(RingElement::Scalar(a * b)),
            (RingElement::Exterior(a), RingElement::Exterior(b)) if a.dim() == b.dim() => {
                Ok(RingElement::Exterior(a.wedge(b)))
            }
            _ => Err(RingError::Mismatch(self.kind(), other.kind())),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            RingElement::Scalar(c) => RingElement::Scalar(-c),
            RingElement::Exterior(e) => RingElement::Exterior(e.neg()),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        match self {
            RingElement::Scalar(v) => RingElement::Scalar(c * v),
            RingElement::Exterior(e) => RingElement::Exterior(e.scale(c)),
        }
    }

    pub fn signed(&self, sign: i32) -> Self {
        match sign.signum() {
            1 => self.clone(),
            -1 => self.neg(),
            _ => RingElement::zero(self.kind()),
        }
    }

    pub fn parity(&self) -> Parity {
        match self {
            RingElement::Scalar(_) => Parity::Even,
            RingElement::Exterior(e) => e.parity(),
        }
    }
}
