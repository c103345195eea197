//! MV-algebras on rational carriers, obtained as images of the interval
//! functor: `[0,u]` inside a rank-1 group, with `x (+) y = (x+y) /\ u` and
//! `x* = u - x`, plus finite products of such algebras.
//!
//! Descriptors are canonical: `gamma(cyclic(1/d), 1)` *is* the finite chain
//! with `d+1` elements, `gamma(rationals, 1)` *is* the rational unit
//! interval, and products are kept as flat lists of rank-1 factors. Equality
//! of algebras is equality of descriptors; isomorphism checking lives in
//! [`crate::hom`].

use std::fmt;

use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{MvError, Result};
use crate::groups::Rank1Group;
use crate::rational::Rational;

/// One rank-1 interval `[0, unit]` inside its group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rank1Carrier {
    pub group: Rank1Group,
    pub unit: Rational,
}

impl Rank1Carrier {
    fn member(&self, q: Rational) -> bool {
        !q.is_negative() && q <= self.unit && self.group.member(q)
    }

    /// Number of elements when the factor is finite (cyclic group).
    fn size(&self) -> Option<u64> {
        let step = self.group.as_cyclic()?;
        Some((self.unit / step).floor() as u64 + 1)
    }
}

impl fmt::Display for Rank1Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.unit.is_one() {
            if let Some(step) = self.group.as_cyclic() {
                if step.numer() == 1 {
                    return if step.denom() == 1 {
                        write!(f, "boolean")
                    } else {
                        write!(f, "chain({})", step.denom())
                    };
                }
            }
            if self.group.is_all() {
                return write!(f, "interval_q");
            }
        }
        write!(f, "gamma({},{})", self.group, self.unit)
    }
}

/// Element of an [`MvAlgebra`]: one rational per factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MvElement(SmallVec<[Rational; 4]>);

impl MvElement {
    pub fn rank1(q: Rational) -> Self {
        MvElement(SmallVec::from_slice(&[q]))
    }

    pub fn from_vec(values: Vec<Rational>) -> Self {
        assert!(!values.is_empty(), "element needs at least one component");
        MvElement(SmallVec::from_vec(values))
    }

    pub fn components(&self) -> &[Rational] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// The single component of a rank-1 element.
    pub fn value(&self) -> Rational {
        assert_eq!(self.0.len(), 1, "value() on a product element");
        self.0[0]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub(crate) fn map2(&self, other: &MvElement, f: impl Fn(Rational, Rational) -> Rational) -> MvElement {
        debug_assert_eq!(self.0.len(), other.0.len());
        MvElement(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        )
    }
}

impl fmt::Display for MvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "(")?;
            for (i, c) in self.0.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")
        }
    }
}

impl Serialize for MvElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Derived binary operations definable from `(+)` and `*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivedOp {
    /// `(x* (+) y)* (+) y`; max on totally ordered carriers.
    Join,
    /// `(x* \/ y*)*`; min on totally ordered carriers.
    Meet,
    /// `(x* (+) y*)*`; truncated product-side addition.
    Odot,
    /// `x (.) y*`; truncated difference.
    TruncatedMinus,
}

/// An MV-algebra descriptor: a flat, nonempty list of rank-1 factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MvAlgebra {
    factors: Vec<Rank1Carrier>,
}

impl MvAlgebra {
    /// The interval algebra `[0, unit]` of a rank-1 group.
    pub fn gamma(group: Rank1Group, unit: Rational) -> Result<Self> {
        if !unit.is_positive() {
            return Err(MvError::InvalidUnit(format!(
                "unit {unit} is not positive"
            )));
        }
        if !group.member(unit) {
            return Err(MvError::InvalidUnit(format!(
                "unit {unit} is not a member of {group}"
            )));
        }
        Ok(MvAlgebra {
            factors: vec![Rank1Carrier { group, unit }],
        })
    }

    /// The chain `{0, 1/d, ..., 1}` with `d+1` elements.
    pub fn chain(d: u64) -> Self {
        assert!(d >= 1, "chain denominator must be positive");
        MvAlgebra::gamma(Rank1Group::cyclic(Rational::new(1, d as i64)), Rational::ONE)
            .expect("1 is a multiple of 1/d")
    }

    /// The two-element algebra `{0, 1}`.
    pub fn boolean() -> Self {
        MvAlgebra::chain(1)
    }

    /// All rationals in `[0, 1]`.
    pub fn interval_q() -> Self {
        MvAlgebra::gamma(Rank1Group::all(), Rational::ONE).expect("1 is rational")
    }

    /// Componentwise product; nested products are flattened.
    pub fn product(factors: Vec<MvAlgebra>) -> Self {
        assert!(!factors.is_empty(), "product needs at least one factor");
        MvAlgebra {
            factors: factors.into_iter().flat_map(|a| a.factors).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Rank1Carrier] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &Rank1Carrier {
        &self.factors[i]
    }

    pub fn is_rank1(&self) -> bool {
        self.factors.len() == 1
    }

    /// The `(G, u)` pair stored in the descriptor (componentwise for
    /// products); exact bookkeeping, no reconstruction.
    pub fn gamma_inverse(&self) -> (Vec<Rank1Group>, Vec<Rational>) {
        (
            self.factors.iter().map(|f| f.group.clone()).collect(),
            self.factors.iter().map(|f| f.unit).collect(),
        )
    }

    pub fn zero(&self) -> MvElement {
        MvElement(self.factors.iter().map(|_| Rational::ZERO).collect())
    }

    pub fn top(&self) -> MvElement {
        MvElement(self.factors.iter().map(|f| f.unit).collect())
    }

    pub fn units(&self) -> Vec<Rational> {
        self.factors.iter().map(|f| f.unit).collect()
    }

    pub fn contains(&self, x: &MvElement) -> bool {
        x.arity() == self.arity()
            && self
                .factors
                .iter()
                .zip(x.components())
                .all(|(f, &c)| f.member(c))
    }

    pub fn require_member(&self, x: &MvElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(MvError::NotAMember {
                carrier: self.to_string(),
                value: x.to_string(),
            })
        }
    }

    /// Truncated addition `(x + y) /\ u`, checked.
    pub fn oplus(&self, x: &MvElement, y: &MvElement) -> Result<MvElement> {
        self.require_member(x)?;
        self.require_member(y)?;
        Ok(self.oplus_raw(x, y))
    }

    pub(crate) fn oplus_raw(&self, x: &MvElement, y: &MvElement) -> MvElement {
        MvElement(
            self.factors
                .iter()
                .zip(x.components().iter().zip(y.components()))
                .map(|(f, (&a, &b))| (a + b).min(f.unit))
                .collect(),
        )
    }

    /// Involution `u - x`, checked.
    pub fn neg(&self, x: &MvElement) -> Result<MvElement> {
        self.require_member(x)?;
        Ok(self.neg_raw(x))
    }

    pub(crate) fn neg_raw(&self, x: &MvElement) -> MvElement {
        MvElement(
            self.factors
                .iter()
                .zip(x.components())
                .map(|(f, &a)| f.unit - a)
                .collect(),
        )
    }

    /// Derived operation, checked.
    pub fn derived(&self, op: DerivedOp, x: &MvElement, y: &MvElement) -> Result<MvElement> {
        self.require_member(x)?;
        self.require_member(y)?;
        Ok(match op {
            DerivedOp::Join => self.join_raw(x, y),
            DerivedOp::Meet => self.meet_raw(x, y),
            DerivedOp::Odot => self.odot_raw(x, y),
            DerivedOp::TruncatedMinus => self.odot_raw(x, &self.neg_raw(y)),
        })
    }

    /// `(x* (+) y)* (+) y`, evaluated by its defining term.
    pub(crate) fn join_raw(&self, x: &MvElement, y: &MvElement) -> MvElement {
        let t = self.oplus_raw(&self.neg_raw(x), y);
        self.oplus_raw(&self.neg_raw(&t), y)
    }

    pub(crate) fn meet_raw(&self, x: &MvElement, y: &MvElement) -> MvElement {
        self.neg_raw(&self.join_raw(&self.neg_raw(x), &self.neg_raw(y)))
    }

    pub(crate) fn odot_raw(&self, x: &MvElement, y: &MvElement) -> MvElement {
        self.neg_raw(&self.oplus_raw(&self.neg_raw(x), &self.neg_raw(y)))
    }

    /// Componentwise (product) order.
    pub fn le(&self, x: &MvElement, y: &MvElement) -> bool {
        x.components()
            .iter()
            .zip(y.components())
            .all(|(a, b)| a <= b)
    }

    /// Group sum when it stays inside `[0, u]` ("x + y is defined").
    pub fn partial_add(&self, x: &MvElement, y: &MvElement) -> Option<MvElement> {
        let sum = x.map2(y, |a, b| a + b);
        if self.le(&sum, &self.top()) {
            Some(sum)
        } else {
            None
        }
    }

    /// Whether every factor is a finite chain fragment.
    pub fn is_finite(&self) -> bool {
        self.factors.iter().all(|f| f.size().is_some())
    }

    /// Exact element count, when finite.
    pub fn size(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, f| Some(acc * f.size()?))
    }

    /// Deterministic enumeration. Finite carriers enumerate exactly
    /// (`order` ignored); infinite factors use the bounded-complexity
    /// enumeration of [`Rank1Group::enumerate_interval`]. Product tuples are
    /// emitted with the first factor varying fastest.
    pub fn enumerate(&self, order: u32) -> Vec<MvElement> {
        let pools: Vec<Vec<Rational>> = self
            .factors
            .iter()
            .map(|f| f.group.enumerate_interval(Rational::ZERO, f.unit, order))
            .collect();
        let total: usize = pools.iter().map(|p| p.len()).product();
        let mut out = Vec::with_capacity(total);
        let mut idx = vec![0usize; pools.len()];
        loop {
            out.push(MvElement(
                idx.iter().zip(&pools).map(|(&i, p)| p[i]).collect(),
            ));
            let mut k = 0;
            loop {
                if k == pools.len() {
                    return out;
                }
                idx[k] += 1;
                if idx[k] < pools[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}

impl fmt::Display for MvAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.len() == 1 {
            write!(f, "{}", self.factors[0])
        } else {
            write!(f, "prod(")?;
            for (i, factor) in self.factors.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{factor}")?;
            }
            write!(f, ")")
        }
    }
}

impl Serialize for MvAlgebra {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn e(q: Rational) -> MvElement {
        MvElement::rank1(q)
    }

    #[test]
    fn gamma_identifies_canonical_carriers() {
        let chain3 = MvAlgebra::gamma(Rank1Group::cyclic(rat(1, 3)), Rational::ONE).unwrap();
        assert_eq!(chain3, MvAlgebra::chain(3));
        assert_eq!(chain3.to_string(), "chain(3)");
        let iq = MvAlgebra::gamma(Rank1Group::all(), Rational::ONE).unwrap();
        assert_eq!(iq, MvAlgebra::interval_q());
        assert_eq!(iq.to_string(), "interval_q");
        assert_eq!(MvAlgebra::boolean().to_string(), "boolean");

        let five = MvAlgebra::gamma(Rank1Group::cyclic(rat(1, 2)), rat(2, 1)).unwrap();
        assert_eq!(five.size(), Some(5));
        assert_eq!(five.to_string(), "gamma(cyclic(1/2),2)");
    }

    #[test]
    fn gamma_rejects_bad_units() {
        assert!(matches!(
            MvAlgebra::gamma(Rank1Group::cyclic(rat(1, 3)), rat(1, 2)),
            Err(MvError::InvalidUnit(_))
        ));
        assert!(matches!(
            MvAlgebra::gamma(Rank1Group::all(), rat(0, 1)),
            Err(MvError::InvalidUnit(_))
        ));
    }

    #[test]
    fn gamma_inverse_is_bookkeeping() {
        let (groups, units) = MvAlgebra::chain(6).gamma_inverse();
        assert_eq!(groups, vec![Rank1Group::cyclic(rat(1, 6))]);
        assert_eq!(units, vec![rat(1, 1)]);
        let (groups, units) = MvAlgebra::interval_q().gamma_inverse();
        assert!(groups[0].is_all());
        assert_eq!(units, vec![rat(1, 1)]);
        let p = MvAlgebra::product(vec![MvAlgebra::chain(2), MvAlgebra::chain(3)]);
        let (groups, units) = p.gamma_inverse();
        assert_eq!(
            groups,
            vec![Rank1Group::cyclic(rat(1, 2)), Rank1Group::cyclic(rat(1, 3))]
        );
        assert_eq!(units, vec![rat(1, 1), rat(1, 1)]);
    }

    #[test]
    fn oplus_truncates_at_the_unit() {
        let a = MvAlgebra::chain(3);
        assert_eq!(a.oplus(&e(rat(1, 3)), &e(rat(1, 3))).unwrap(), e(rat(2, 3)));
        assert_eq!(a.oplus(&e(rat(2, 3)), &e(rat(2, 3))).unwrap(), e(rat(1, 1)));
        let five = MvAlgebra::gamma(Rank1Group::cyclic(rat(1, 2)), rat(2, 1)).unwrap();
        assert_eq!(
            five.oplus(&e(rat(3, 2)), &e(rat(1, 1))).unwrap(),
            e(rat(2, 1))
        );
        assert!(matches!(
            a.oplus(&e(rat(1, 4)), &e(rat(1, 3))),
            Err(MvError::NotAMember { .. })
        ));
    }

    #[test]
    fn neg_is_unit_minus() {
        let a = MvAlgebra::chain(4);
        assert_eq!(a.neg(&e(rat(1, 4))).unwrap(), e(rat(3, 4)));
        assert_eq!(a.neg(&a.zero()).unwrap(), a.top());
        let iq = MvAlgebra::interval_q();
        assert_eq!(iq.neg(&e(rat(2, 7))).unwrap(), e(rat(5, 7)));
    }

    #[test]
    fn derived_operations() {
        let a = MvAlgebra::chain(6);
        assert_eq!(
            a.derived(DerivedOp::Join, &e(rat(1, 6)), &e(rat(1, 2))).unwrap(),
            e(rat(1, 2))
        );
        let iq = MvAlgebra::interval_q();
        assert_eq!(
            iq.derived(DerivedOp::Odot, &e(rat(1, 3)), &e(rat(1, 2))).unwrap(),
            e(Rational::ZERO)
        );
        for x in a.enumerate(4) {
            assert_eq!(a.derived(DerivedOp::Meet, &x, &a.top()).unwrap(), x);
        }
        assert_eq!(
            iq.derived(DerivedOp::TruncatedMinus, &e(rat(1, 2)), &e(rat(1, 3)))
                .unwrap(),
            e(rat(1, 6))
        );
    }

    #[test]
    fn enumeration_is_deterministic_and_ordered() {
        assert_eq!(
            MvAlgebra::chain(2).enumerate(0),
            vec![e(rat(0, 1)), e(rat(1, 2)), e(rat(1, 1))]
        );
        assert_eq!(
            MvAlgebra::interval_q().enumerate(3),
            vec![
                e(rat(0, 1)),
                e(rat(1, 3)),
                e(rat(1, 2)),
                e(rat(2, 3)),
                e(rat(1, 1))
            ]
        );
        let g = MvAlgebra::gamma(Rank1Group::cyclic(rat(1, 4)), Rational::ONE).unwrap();
        assert_eq!(
            g.enumerate(17),
            vec![
                e(rat(0, 1)),
                e(rat(1, 4)),
                e(rat(1, 2)),
                e(rat(3, 4)),
                e(rat(1, 1))
            ]
        );
        // Product tuples: first factor fastest.
        let p = MvAlgebra::product(vec![MvAlgebra::boolean(), MvAlgebra::boolean()]);
        let elems = p.enumerate(0);
        assert_eq!(
            elems,
            vec![
                MvElement::from_vec(vec![rat(0, 1), rat(0, 1)]),
                MvElement::from_vec(vec![rat(1, 1), rat(0, 1)]),
                MvElement::from_vec(vec![rat(0, 1), rat(1, 1)]),
                MvElement::from_vec(vec![rat(1, 1), rat(1, 1)]),
            ]
        );
    }

    #[test]
    fn products_flatten() {
        let nested = MvAlgebra::product(vec![
            MvAlgebra::chain(2),
            MvAlgebra::product(vec![MvAlgebra::chain(3), MvAlgebra::chain(4)]),
        ]);
        let flat = MvAlgebra::product(vec![
            MvAlgebra::chain(2),
            MvAlgebra::chain(3),
            MvAlgebra::chain(4),
        ]);
        assert_eq!(nested, flat);
        assert_eq!(nested.to_string(), "prod(chain(2),chain(3),chain(4))");
        assert_eq!(nested.size(), Some(60));
    }

    #[test]
    fn partial_add_respects_the_unit() {
        let a = MvAlgebra::chain(2);
        assert_eq!(
            a.partial_add(&e(rat(1, 2)), &e(rat(1, 2))),
            Some(e(rat(1, 1)))
        );
        assert_eq!(a.partial_add(&a.top(), &e(rat(1, 2))), None);
    }
}
