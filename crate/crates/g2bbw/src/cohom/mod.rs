//! Sheaf cohomology: Borel-Bott-Weil on the proper spaces, pushforward
//! streams on the three total spaces, Ext tables, and honest long-exact-
//! sequence interval propagation for filtered sheaves.
//!
//! Cohomology of an irreducible descriptor is a single irreducible
//! representation in a single degree (or nothing at all); everything else in
//! this module is bookkeeping on top of that one fact. Where a value depends
//! on a connecting map the engine never guesses: it returns an interval that
//! is guaranteed to contain the true dimension, and collapses it to an exact
//! value the moment the bounds meet.

mod bounds;
mod ext;
mod stream;

pub use bounds::{les_propagate, BoundsOptions, LesResult};
pub use ext::{ext_pair, ext_table, ExtEntry, ExtOptions};
pub use stream::{push_coh_total, StreamCoh, TotalCohResult};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::repring::{dualize, BundleDescriptor, BundleSum, IrrepLabel, Space};
use crate::rootdata::{bbw_normalize, BbwNormalForm};

/// Multiset of irreducible representations with multiplicities.
pub type IrrepMultiset = BTreeMap<IrrepLabel, u64>;

pub(crate) fn multiset_dim(m: &IrrepMultiset) -> u64 {
    m.iter().map(|(l, mult)| l.dim() * mult).sum()
}

pub(crate) fn multiset_add(into: &mut IrrepMultiset, from: &IrrepMultiset) {
    for (l, m) in from {
        *into.entry(*l).or_insert(0) += m;
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CohomError {
    #[error("object lives on base {expected}, got a sum on {got}")]
    BaseMismatch { expected: Space, got: Space },
    #[error("filtration factor count and non-split flag count disagree")]
    MalformedFiltration,
    #[error("descriptor {0} cannot be transported to the blown-up total space (not a line bundle)")]
    NotTransportable(BundleDescriptor),
    #[error(transparent)]
    Repring(#[from] crate::repring::RepringError),
}

/// Graded cohomology on a proper space: degree -> irreducible multiset.
/// An empty map is the acyclic object.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohResult {
    degrees: BTreeMap<u8, IrrepMultiset>,
}

impl CohResult {
    pub fn acyclic() -> Self {
        CohResult::default()
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn insert(&mut self, degree: u8, label: IrrepLabel, mult: u64) {
        if mult > 0 {
            *self
                .degrees
                .entry(degree)
                .or_default()
                .entry(label)
                .or_insert(0) += mult;
        }
    }

    pub fn merge(&mut self, other: &CohResult) {
        for (deg, ms) in &other.degrees {
            multiset_add(self.degrees.entry(*deg).or_default(), ms);
        }
    }

    pub fn at(&self, degree: u8) -> Option<&IrrepMultiset> {
        self.degrees.get(&degree)
    }

    pub fn dim(&self, degree: u8) -> u64 {
        self.degrees.get(&degree).map_or(0, multiset_dim)
    }

    pub fn multiplicity(&self, degree: u8, label: IrrepLabel) -> u64 {
        self.degrees
            .get(&degree)
            .and_then(|ms| ms.get(&label))
            .copied()
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u8, &IrrepMultiset)> {
        self.degrees.iter().map(|(d, ms)| (*d, ms))
    }

    pub fn nonzero_degrees(&self) -> Vec<u8> {
        self.degrees.keys().copied().collect()
    }

    /// Alternating sum of graded dimensions; exact by construction.
    pub fn euler(&self) -> i64 {
        self.degrees
            .iter()
            .map(|(d, ms)| {
                let sign = if d % 2 == 0 { 1 } else { -1 };
                sign * multiset_dim(ms) as i64
            })
            .sum()
    }
}

/// Cohomology of a single irreducible equivariant bundle: translate to the
/// weight dictionary, normalize, and either vanish (singular weight) or
/// concentrate one irreducible in degree `l(w)`.
pub fn coh_irreducible(x: BundleDescriptor) -> CohResult {
    let mut out = CohResult::acyclic();
    match bbw_normalize(x.weight()) {
        BbwNormalForm::Singular => {}
        BbwNormalForm::Regular { length, dominant } => {
            let label = IrrepLabel::new(dominant).expect("normal form is dominant");
            out.insert(length, label, 1);
        }
    }
    out
}

/// Cohomology of a descriptor sum on its proper space.
pub fn coh_sum(e: &BundleSum) -> CohResult {
    let mut out = CohResult::acyclic();
    for (d, m) in e.terms() {
        match bbw_normalize(d.weight()) {
            BbwNormalForm::Singular => {}
            BbwNormalForm::Regular { length, dominant } => {
                out.insert(length, IrrepLabel::new(dominant).expect("dominant"), m);
            }
        }
    }
    out
}

/// Alternating sum of graded dimensions of a proper-space object.
pub fn euler_char(coh: &CohResult) -> i64 {
    coh.euler()
}

/// The Serre-dual descriptor `x^v (x) omega`, for the degreewise duality
/// self-test `h^i(x) = h^(dim - i)(serre_dual(x))`.
pub fn serre_dual(x: BundleDescriptor) -> BundleDescriptor {
    let dual = dualize(x);
    match x.space() {
        Space::G => dual.twist_line(-3),
        Space::Q => dual.twist_line(-5),
        Space::F => dual.twist_f(-2, -2),
    }
}

/// Checks degreewise Serre duality for one descriptor; returns true on pass.
pub fn serre_duality_holds(x: BundleDescriptor) -> bool {
    let n = x.space().dimension();
    let lhs = coh_irreducible(x);
    let rhs = coh_irreducible(serre_dual(x));
    (0..=n).all(|i| lhs.dim(i) == rhs.dim(n - i))
}

/// A dimension that is either pinned exactly or known to lie in `[lo, hi]`.
/// The `Interval(n, n)` form collapses eagerly to `Exact(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DimValue {
    Exact(u64),
    Interval(u64, u64),
}

impl DimValue {
    pub fn new(lo: u64, hi: u64) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        if lo == hi {
            DimValue::Exact(lo)
        } else {
            DimValue::Interval(lo, hi)
        }
    }

    pub fn exact(n: u64) -> Self {
        DimValue::Exact(n)
    }

    pub fn lo(self) -> u64 {
        match self {
            DimValue::Exact(n) => n,
            DimValue::Interval(lo, _) => lo,
        }
    }

    pub fn hi(self) -> u64 {
        match self {
            DimValue::Exact(n) => n,
            DimValue::Interval(_, hi) => hi,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, DimValue::Exact(_))
    }

    pub fn contains(self, n: u64) -> bool {
        self.lo() <= n && n <= self.hi()
    }
}

impl fmt::Display for DimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimValue::Exact(n) => write!(f, "{n}"),
            DimValue::Interval(lo, hi) => write!(f, "[{lo},{hi}]"),
        }
    }
}

/// Per-degree dimension data.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDims(pub BTreeMap<u8, DimValue>);

impl GradedDims {
    pub fn at(&self, degree: u8) -> DimValue {
        self.0.get(&degree).copied().unwrap_or(DimValue::Exact(0))
    }

    pub fn set(&mut self, degree: u8, v: DimValue) {
        self.0.insert(degree, v);
    }

    /// True when every listed degree is exactly zero.
    pub fn all_zero(&self, degrees: impl Iterator<Item = u8>) -> bool {
        degrees
            .into_iter()
            .all(|d| self.at(d) == DimValue::Exact(0))
    }
}

/// The three non-compact total spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TotalSpace {
    YPlus,
    YMinus,
    YTot,
}

impl TotalSpace {
    pub fn base(self) -> Space {
        match self {
            TotalSpace::YPlus => Space::G,
            TotalSpace::YMinus => Space::Q,
            TotalSpace::YTot => Space::F,
        }
    }

    /// The `k`-th symmetric term of the pushforward of the structure sheaf.
    pub fn sym_term(self, k: u64) -> BundleDescriptor {
        match self {
            TotalSpace::YPlus => BundleDescriptor::G { k: k as u32, twist: k as i64 },
            TotalSpace::YMinus => BundleDescriptor::Q { k: k as u32, twist: 2 * k as i64 },
            TotalSpace::YTot => BundleDescriptor::F { a: k as i64, b: k as i64 },
        }
    }
}

impl fmt::Display for TotalSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TotalSpace::YPlus => write!(f, "yplus"),
            TotalSpace::YMinus => write!(f, "yminus"),
            TotalSpace::YTot => write!(f, "ytot"),
        }
    }
}

/// Where a sheaf object lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SheafSpace {
    Proper(Space),
    Total(TotalSpace),
}

impl SheafSpace {
    pub fn base(self) -> Space {
        match self {
            SheafSpace::Proper(s) => s,
            SheafSpace::Total(t) => t.base(),
        }
    }
}

impl fmt::Display for SheafSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SheafSpace::Proper(s) => write!(f, "{s}"),
            SheafSpace::Total(t) => write!(f, "{t}"),
        }
    }
}

/// A line-bundle twist; `Line` twists by the ample generator on `G`/`Q`
/// bases, `FPair` by `O(aH + bh)` on the flag base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Twist {
    Trivial,
    Line(i64),
    FPair(i64, i64),
}

impl Twist {
    pub fn apply(self, sum: &BundleSum) -> BundleSum {
        match self {
            Twist::Trivial => sum.clone(),
            Twist::Line(t) => sum.twisted_line(t),
            Twist::FPair(a, b) => sum.twisted_f(a, b),
        }
    }
}

/// An iterated extension presented by its graded factors, subobject first,
/// with non-split markers for adjacent pairs. A single-factor filtration is
/// just the pullback of a descriptor sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilteredSheaf {
    pub space: SheafSpace,
    pub factors: Vec<BundleSum>,
    pub nonsplit: Vec<bool>,
}

impl FilteredSheaf {
    pub fn single(space: SheafSpace, sum: BundleSum) -> Self {
        FilteredSheaf { space, factors: vec![sum], nonsplit: Vec::new() }
    }

    pub fn new(
        space: SheafSpace,
        factors: Vec<BundleSum>,
        nonsplit: Vec<bool>,
    ) -> Result<Self, CohomError> {
        let f = FilteredSheaf { space, factors, nonsplit };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<(), CohomError> {
        if self.nonsplit.len() + 1 != self.factors.len() && !self.factors.is_empty() {
            return Err(CohomError::MalformedFiltration);
        }
        let base = self.space.base();
        for f in &self.factors {
            if f.space() != base {
                return Err(CohomError::BaseMismatch { expected: base, got: f.space() });
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> u64 {
        self.factors.iter().map(|f| f.rank()).sum()
    }

    /// The dual object: factors dualized in reverse order.
    pub fn dualized(&self) -> Self {
        let factors = self.factors.iter().rev().map(|f| f.dualized()).collect();
        let nonsplit = self.nonsplit.iter().rev().copied().collect();
        FilteredSheaf { space: self.space, factors, nonsplit }
    }

    pub fn twisted(&self, t: Twist) -> Self {
        FilteredSheaf {
            space: self.space,
            factors: self.factors.iter().map(|f| t.apply(f)).collect(),
            nonsplit: self.nonsplit.clone(),
        }
    }

    /// Transports a filtration on the quadric-side total space to the
    /// blown-up total space over the flag variety (line-bundle factors only):
    /// `O(b)` pulls back to `O(bh)`.
    pub fn to_ytot(&self) -> Result<FilteredSheaf, CohomError> {
        match self.space {
            SheafSpace::Total(TotalSpace::YTot) => Ok(self.clone()),
            SheafSpace::Total(TotalSpace::YMinus) => {
                let mut factors = Vec::with_capacity(self.factors.len());
                for f in &self.factors {
                    let mut out = BundleSum::zero(Space::F);
                    for (d, m) in f.terms() {
                        match d {
                            BundleDescriptor::Q { k: 0, twist } => {
                                out.add(BundleDescriptor::F { a: 0, b: twist }, m)
                            }
                            other => return Err(CohomError::NotTransportable(other)),
                        }
                    }
                    factors.push(out);
                }
                Ok(FilteredSheaf {
                    space: SheafSpace::Total(TotalSpace::YTot),
                    factors,
                    nonsplit: self.nonsplit.clone(),
                })
            }
            _ => panic!("transport is defined for the quadric-side total space"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repring::Space;
    use crate::rootdata::Weight;

    fn g(k: u32, twist: i64) -> BundleDescriptor {
        BundleDescriptor::G { k, twist }
    }
    fn q(k: u32, twist: i64) -> BundleDescriptor {
        BundleDescriptor::Q { k, twist }
    }
    fn f(a: i64, b: i64) -> BundleDescriptor {
        BundleDescriptor::F { a, b }
    }
    fn lbl(a: i64, b: i64) -> IrrepLabel {
        IrrepLabel::new(Weight::new(a, b)).unwrap()
    }

    #[test]
    fn bbw_spot_checks() {
        // Sym^3 R^v(-2) on G: one-dimensional, degree 1.
        let c = coh_irreducible(g(3, -2));
        assert_eq!(c.nonzero_degrees(), vec![1]);
        assert_eq!(c.multiplicity(1, lbl(0, 0)), 1);
        assert_eq!(c.dim(1), 1);

        // Sym^2 R^v(-3) on G: acyclic.
        assert!(coh_irreducible(g(2, -3)).is_acyclic());

        // C^v(-1) on Q: one-dimensional, degree 1.
        let c = coh_irreducible(q(1, -1));
        assert_eq!(c.nonzero_degrees(), vec![1]);
        assert_eq!(c.multiplicity(1, lbl(0, 0)), 1);

        // Sym^2 C^v on Q: the 14-dimensional representation in degree 1.
        let c = coh_irreducible(q(2, 0));
        assert_eq!(c.nonzero_degrees(), vec![1]);
        assert_eq!(c.multiplicity(1, lbl(1, 0)), 1);
        assert_eq!(c.dim(1), 14);

        // Structure sheaf of F: sections only.
        let c = coh_irreducible(f(0, 0));
        assert_eq!(c.nonzero_degrees(), vec![0]);
        assert_eq!(c.dim(0), 1);
    }

    #[test]
    fn bbw_concentration() {
        for a in -6..=6 {
            for b in -6..=6 {
                for d in [
                    Some(f(a, b)),
                    (b >= 0).then(|| g(b as u32, a)),
                    (a >= 0).then(|| q(a as u32, a + b)),
                ]
                .into_iter()
                .flatten()
                {
                    assert!(coh_irreducible(d).nonzero_degrees().len() <= 1, "{d:?}");
                }
            }
        }
    }

    #[test]
    fn two_bbw_routes_agree() {
        // A descriptor and the flag line bundle with the same weight have the
        // same cohomology outcome.
        let spot = coh_irreducible(q(2, 0));
        assert_eq!(spot, coh_irreducible(f(2, -2)));
        for k in 0..=4u32 {
            for t in -5..=5 {
                for d in [g(k, t), q(k, t)] {
                    let w = d.weight();
                    assert_eq!(coh_irreducible(d), coh_irreducible(f(w.a, w.b)), "{d:?}");
                }
            }
        }
    }

    #[test]
    fn serre_duality_sweeps() {
        for a in -8..=8 {
            for b in -8..=8 {
                assert!(serre_duality_holds(f(a, b)), "F O({a},{b})");
            }
        }
        for k in 0..=8u32 {
            for t in -8..=8 {
                assert!(serre_duality_holds(g(k, t)), "G ({k},{t})");
                assert!(serre_duality_holds(q(k, t)), "Q ({k},{t})");
            }
        }
    }

    #[test]
    fn euler_char_examples() {
        assert_eq!(euler_char(&coh_irreducible(f(2, -2))), -14);
        assert_eq!(euler_char(&coh_irreducible(g(2, -3))), 0);
        assert_eq!(euler_char(&CohResult::acyclic()), 0);
    }

    #[test]
    fn dim_value_collapse() {
        assert_eq!(DimValue::new(3, 3), DimValue::Exact(3));
        assert_eq!(DimValue::new(0, 2), DimValue::Interval(0, 2));
        assert!(DimValue::new(0, 2).contains(0));
        assert!(!DimValue::new(1, 2).contains(0));
    }

    #[test]
    fn filtration_validation() {
        let ok = FilteredSheaf::new(
            SheafSpace::Total(TotalSpace::YTot),
            vec![
                BundleSum::from_descriptor(f(0, -1)),
                BundleSum::from_descriptor(f(-1, 1)),
            ],
            vec![true],
        );
        assert!(ok.is_ok());
        let bad = FilteredSheaf::new(
            SheafSpace::Total(TotalSpace::YPlus),
            vec![BundleSum::from_descriptor(q(0, 0))],
            vec![],
        );
        assert_eq!(
            bad.unwrap_err(),
            CohomError::BaseMismatch { expected: Space::G, got: Space::Q }
        );
    }
}
