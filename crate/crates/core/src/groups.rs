//! Rank-1 additive subgroups and unital subrings of the rationals, their
//! quotient field, and the constructive Archimedean witness.
//!
//! Every group in scope is `scale * Z[S]` for a positive rational `scale` and
//! a set `S` of inverted primes: cyclic groups are `step * Z[{}]`, the additive
//! group of a localization is `1 * Z[S]`, and the full rationals use the
//! `AllPrimes` support. The two normal forms (lowest-terms scale with all
//! `S`-primes stripped, sorted prime set) make equality of descriptors
//! decidable, which the rest of the crate relies on.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{MvError, Result};
use crate::rational::{primes_of, Rational};

/// Denominator-prime support of a rank-1 carrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PrimeSet {
    /// Denominators restricted to products of these primes.
    Finite(BTreeSet<u64>),
    /// No restriction: the carrier spans all of the rationals.
    All,
}

impl PrimeSet {
    pub fn empty() -> Self {
        PrimeSet::Finite(BTreeSet::new())
    }

    fn contains_all(&self, primes: &[u64]) -> bool {
        match self {
            PrimeSet::All => true,
            PrimeSet::Finite(set) => primes.iter().all(|p| set.contains(p)),
        }
    }

    fn is_subset_of(&self, other: &PrimeSet) -> bool {
        match (self, other) {
            (_, PrimeSet::All) => true,
            (PrimeSet::All, PrimeSet::Finite(_)) => false,
            (PrimeSet::Finite(a), PrimeSet::Finite(b)) => a.is_subset(b),
        }
    }

    fn union(&self, other: &PrimeSet) -> PrimeSet {
        match (self, other) {
            (PrimeSet::All, _) | (_, PrimeSet::All) => PrimeSet::All,
            (PrimeSet::Finite(a), PrimeSet::Finite(b)) => {
                PrimeSet::Finite(a.union(b).copied().collect())
            }
        }
    }
}

/// A rank-1 additive subgroup of the rationals: `scale * Z[S]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rank1Group {
    scale: Rational,
    primes: PrimeSet,
}

impl Rank1Group {
    /// The cyclic group `{ k*step : k in Z }`. `step` must be positive.
    pub fn cyclic(step: Rational) -> Self {
        assert!(step.is_positive(), "cyclic step must be positive");
        Rank1Group {
            scale: step,
            primes: PrimeSet::empty(),
        }
    }

    /// The integers.
    pub fn integers() -> Self {
        Rank1Group::cyclic(Rational::ONE)
    }

    /// The full rationals.
    pub fn all() -> Self {
        Rank1Group {
            scale: Rational::ONE,
            primes: PrimeSet::All,
        }
    }

    /// `scale * Z[S]`, normalized so the scale carries no `S`-primes.
    pub fn scaled_localization(scale: Rational, primes: PrimeSet) -> Self {
        assert!(scale.is_positive(), "group scale must be positive");
        match &primes {
            PrimeSet::All => Rank1Group::all(),
            PrimeSet::Finite(set) => {
                let mut numer = scale.numer();
                let mut denom = scale.denom();
                for &p in set {
                    let p = p as i64;
                    while numer % p == 0 {
                        numer /= p;
                    }
                    while denom % p == 0 {
                        denom /= p;
                    }
                }
                Rank1Group {
                    scale: Rational::new(numer, denom),
                    primes,
                }
            }
        }
    }

    /// Rescales the group by a positive rational: `c * G`.
    pub fn scaled_by(&self, c: Rational) -> Self {
        assert!(c.is_positive(), "group scale must be positive");
        Rank1Group::scaled_localization(c * self.scale, self.primes.clone())
    }

    pub fn scale(&self) -> Rational {
        self.scale
    }

    pub fn primes(&self) -> &PrimeSet {
        &self.primes
    }

    /// The generating step when the group is cyclic.
    pub fn as_cyclic(&self) -> Option<Rational> {
        match &self.primes {
            PrimeSet::Finite(set) if set.is_empty() => Some(self.scale),
            _ => None,
        }
    }

    pub fn is_all(&self) -> bool {
        self.primes == PrimeSet::All
    }

    /// Decides `q in scale * Z[S]`.
    pub fn member(&self, q: Rational) -> bool {
        match &self.primes {
            PrimeSet::All => true,
            PrimeSet::Finite(_) => {
                let r = q / self.scale;
                self.primes.contains_all(&primes_of(r.denom() as u64))
            }
        }
    }

    /// Whether `c * self` is contained in `other`, for positive `c`.
    pub fn scaled_subset_of(&self, c: Rational, other: &Rank1Group) -> bool {
        match (&self.primes, &other.primes) {
            (_, PrimeSet::All) => true,
            (PrimeSet::All, PrimeSet::Finite(_)) => false,
            (PrimeSet::Finite(_), PrimeSet::Finite(_)) => {
                self.primes.is_subset_of(&other.primes) && other.member(c * self.scale)
            }
        }
    }

    /// Whether `self` is closed under multiplication by `ring`. On failure
    /// returns the violating pair `(ring element, group element)`.
    pub fn closed_under(&self, ring: &RationalSubring) -> std::result::Result<(), (Rational, Rational)> {
        match (&ring.primes, &self.primes) {
            (PrimeSet::Finite(rp), _) => {
                for &p in rp {
                    let r = Rational::new(1, p as i64);
                    if !self.member(r * self.scale) {
                        return Err((r, self.scale));
                    }
                }
                Ok(())
            }
            (PrimeSet::All, PrimeSet::All) => Ok(()),
            (PrimeSet::All, PrimeSet::Finite(_)) => {
                Err((Rational::new(1, 2), self.scale))
            }
        }
    }

    /// Subgroup generated by pairwise products of elements, realized for
    /// rank-1 descriptors as `(scale*scale') * Z[S union S']`.
    pub fn tensor(&self, other: &Rank1Group) -> Rank1Group {
        let primes = self.primes.union(&other.primes);
        match primes {
            PrimeSet::All => Rank1Group::all(),
            finite => Rank1Group::scaled_localization(self.scale * other.scale, finite),
        }
    }

    /// Ascending members of `[lo, hi]` with bounded representation complexity.
    ///
    /// Cyclic groups enumerate exactly (the interval holds finitely many
    /// multiples of the step, so `order` is ignored). The full rationals use
    /// the Farey-style bound `denominator <= order`. Localized groups admit
    /// denominators that are `S`-smooth numbers up to `2^order`.
    pub fn enumerate_interval(&self, lo: Rational, hi: Rational, order: u32) -> Vec<Rational> {
        if hi < lo {
            return Vec::new();
        }
        let mut found: BTreeSet<Rational> = BTreeSet::new();
        match &self.primes {
            PrimeSet::Finite(set) if set.is_empty() => {
                let step = self.scale;
                let mut k = (lo / step).ceil();
                while Rational::from_integer(k) * step <= hi {
                    found.insert(Rational::from_integer(k) * step);
                    k += 1;
                }
            }
            PrimeSet::Finite(set) => {
                let bound = 2u64.saturating_pow(order).max(1);
                for s in smooth_numbers(set, bound) {
                    let step = self.scale / Rational::from_integer(s as i64);
                    let mut k = (lo / step).ceil();
                    while Rational::from_integer(k) * step <= hi {
                        found.insert(Rational::from_integer(k) * step);
                        k += 1;
                    }
                }
            }
            PrimeSet::All => {
                for q in 1..=order.max(1) as i64 {
                    let step = Rational::new(1, q);
                    let mut k = (lo / step).ceil();
                    while Rational::from_integer(k) * step <= hi {
                        found.insert(Rational::from_integer(k) * step);
                        k += 1;
                    }
                }
            }
        }
        // Interval endpoints anchor the law checks; keep them in the pool.
        if self.member(lo) {
            found.insert(lo);
        }
        if self.member(hi) {
            found.insert(hi);
        }
        found.into_iter().collect()
    }
}

impl fmt::Display for Rank1Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.primes {
            PrimeSet::All => write!(f, "rationals"),
            PrimeSet::Finite(set) if set.is_empty() => {
                if self.scale.is_one() {
                    write!(f, "integers")
                } else {
                    write!(f, "cyclic({})", self.scale)
                }
            }
            PrimeSet::Finite(set) => {
                let n: u64 = set.iter().product();
                if self.scale.is_one() {
                    write!(f, "localized({})", n)
                } else {
                    write!(f, "scaled({},localized({}))", self.scale, n)
                }
            }
        }
    }
}

impl Serialize for Rank1Group {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// All `S`-smooth numbers up to `bound`, ascending, including 1.
fn smooth_numbers(primes: &BTreeSet<u64>, bound: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for &p in primes {
        let mut next = Vec::new();
        for &s in &out {
            let mut v = s;
            loop {
                next.push(v);
                match v.checked_mul(p) {
                    Some(w) if w <= bound => v = w,
                    _ => break,
                }
            }
        }
        next.sort_unstable();
        out = next;
    }
    out
}

/// Smallest subgroup of the rationals containing all generators.
///
/// Returns `Cyclic(g/l)` where `l` is the lcm of the generators' denominators
/// and `g` the gcd of the rescaled numerators.
pub fn subgroup_generate(gens: &[Rational]) -> Result<Rank1Group> {
    if gens.is_empty() {
        return Err(MvError::InvalidGenerator(
            "subgroup needs at least one generator".into(),
        ));
    }
    if let Some(bad) = gens.iter().find(|g| !g.is_positive()) {
        return Err(MvError::InvalidGenerator(format!(
            "generator {bad} is not positive"
        )));
    }
    let l = gens.iter().fold(1i64, |acc, g| acc.lcm(&g.denom()));
    let g = gens
        .iter()
        .map(|q| (*q * Rational::from_integer(l)).numer())
        .fold(0i64, |acc, n| acc.gcd(&n));
    Ok(Rank1Group::cyclic(Rational::new(g, l)))
}

/// Membership in the Cyclic/All semantics.
pub fn subgroup_member(group: &Rank1Group, q: Rational) -> bool {
    group.member(q)
}

/// A unital subring of the rationals: `Z[S]` or the full field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalSubring {
    primes: PrimeSet,
}

impl RationalSubring {
    /// The integers: nothing inverted.
    pub fn integers() -> Self {
        RationalSubring {
            primes: PrimeSet::empty(),
        }
    }

    /// `Z[S]` for an explicit set of primes.
    pub fn localized(primes: BTreeSet<u64>) -> Self {
        for &p in &primes {
            assert!(primes_of(p) == vec![p], "{p} is not prime");
        }
        RationalSubring {
            primes: PrimeSet::Finite(primes),
        }
    }

    /// The subring with the prime factors of `n` inverted.
    pub fn localized_at(n: u64) -> Self {
        RationalSubring {
            primes: PrimeSet::Finite(primes_of(n).into_iter().collect()),
        }
    }

    /// The full rationals as a ring.
    pub fn all() -> Self {
        RationalSubring {
            primes: PrimeSet::All,
        }
    }

    pub fn primes(&self) -> &PrimeSet {
        &self.primes
    }

    pub fn is_all(&self) -> bool {
        self.primes == PrimeSet::All
    }

    pub fn inverted_primes(&self) -> Option<&BTreeSet<u64>> {
        match &self.primes {
            PrimeSet::Finite(set) => Some(set),
            PrimeSet::All => None,
        }
    }

    /// Decides membership: every prime of the lowest-terms denominator must
    /// be inverted.
    pub fn member(&self, q: Rational) -> bool {
        self.primes.contains_all(&primes_of(q.denom() as u64))
    }

    /// The additive group of the ring.
    pub fn additive_group(&self) -> Rank1Group {
        Rank1Group::scaled_localization(Rational::ONE, self.primes.clone())
    }

    /// The quotient field `{ a/b : a, b in R, b != 0 }`; always the full
    /// rationals for subrings of the rationals, with provenance recorded.
    pub fn fraction_field(&self) -> RationalField {
        RationalField {
            from: self.clone(),
        }
    }
}

impl fmt::Display for RationalSubring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.primes {
            PrimeSet::All => write!(f, "rationals"),
            PrimeSet::Finite(set) if set.is_empty() => write!(f, "integers"),
            PrimeSet::Finite(set) => {
                let n: u64 = set.iter().product();
                write!(f, "localized({})", n)
            }
        }
    }
}

impl Serialize for RationalSubring {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Smallest unital subring of the rationals containing all generators:
/// the localization at the primes of the generators' denominators.
pub fn subring_generate(gens: &[Rational]) -> RationalSubring {
    let mut primes = BTreeSet::new();
    for g in gens {
        primes.extend(primes_of(g.denom() as u64));
    }
    RationalSubring {
        primes: PrimeSet::Finite(primes),
    }
}

pub fn subring_member(ring: &RationalSubring, q: Rational) -> bool {
    ring.member(q)
}

/// The quotient field of a rational subring: the full rationals with unit 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalField {
    from: RationalSubring,
}

impl RationalField {
    pub fn unit(&self) -> Rational {
        Rational::ONE
    }

    /// Which subring this field was constructed from.
    pub fn provenance(&self) -> &RationalSubring {
        &self.from
    }

    /// The field viewed as a subring of itself.
    pub fn as_subring(&self) -> RationalSubring {
        RationalSubring::all()
    }

    pub fn member(&self, _q: Rational) -> bool {
        true
    }

    /// Expresses a field member as a quotient `x/y` of ring members with
    /// `y != 0`; integers always belong to the ring, so `(p, q)` works.
    pub fn express_over_ring(&self, q: Rational) -> (Rational, Rational) {
        (
            Rational::from_integer(q.numer()),
            Rational::from_integer(q.denom()),
        )
    }
}

impl fmt::Display for RationalField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rationals")
    }
}

/// `fraction_field` as a free function, matching the operation vocabulary.
pub fn fraction_field(ring: &RationalSubring) -> RationalField {
    ring.fraction_field()
}

/// Least `n` with `n*a > b`, for positive `a`, `b`: the constructive
/// refutation of "`n*a <= b` for all `n`".
pub fn archimedean_witness(a: Rational, b: Rational) -> Result<u64> {
    if !a.is_positive() {
        return Err(MvError::Precondition(format!(
            "archimedean witness needs a > 0, got a = {a}"
        )));
    }
    if !b.is_positive() {
        return Err(MvError::Precondition(format!(
            "archimedean witness needs b > 0, got b = {b}"
        )));
    }
    Ok(((b / a).floor() + 1) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn subgroup_generate_gcd_of_steps() {
        let g = subgroup_generate(&[rat(1, 2), rat(1, 3)]).unwrap();
        assert_eq!(g.as_cyclic(), Some(rat(1, 6)));
        let g = subgroup_generate(&[rat(1, 1)]).unwrap();
        assert_eq!(g.as_cyclic(), Some(rat(1, 1)));
        let g = subgroup_generate(&[rat(2, 4)]).unwrap();
        assert_eq!(g.as_cyclic(), Some(rat(1, 2)));
    }

    #[test]
    fn subgroup_generate_rejects_bad_input() {
        assert!(matches!(
            subgroup_generate(&[]),
            Err(MvError::InvalidGenerator(_))
        ));
        assert!(matches!(
            subgroup_generate(&[rat(0, 1)]),
            Err(MvError::InvalidGenerator(_))
        ));
        assert!(matches!(
            subgroup_generate(&[rat(-1, 2)]),
            Err(MvError::InvalidGenerator(_))
        ));
    }

    #[test]
    fn subgroup_membership() {
        let g = Rank1Group::cyclic(rat(1, 6));
        assert!(subgroup_member(&g, rat(5, 6)));
        assert!(!subgroup_member(&g, rat(1, 4)));
        assert!(subgroup_member(&Rank1Group::all(), rat(355, 113)));
    }

    #[test]
    fn subring_generate_localizes_denominator_primes() {
        let r = subring_generate(&[rat(1, 6)]);
        assert_eq!(r, RationalSubring::localized([2, 3].into()));
        let r = subring_generate(&[]);
        assert_eq!(r, RationalSubring::integers());
        let r = subring_generate(&[rat(3, 4)]);
        assert_eq!(r, RationalSubring::localized([2].into()));
    }

    #[test]
    fn subring_membership() {
        let r = RationalSubring::localized([2, 3].into());
        assert!(subring_member(&r, rat(5, 36)));
        assert!(!subring_member(&r, rat(1, 5)));
        assert!(subring_member(&RationalSubring::integers(), rat(7, 1)));
        assert!(!subring_member(&RationalSubring::integers(), rat(1, 2)));
    }

    #[test]
    fn fraction_field_is_the_rationals() {
        for ring in [
            RationalSubring::integers(),
            RationalSubring::localized([2, 3].into()),
            RationalSubring::all(),
        ] {
            let field = fraction_field(&ring);
            assert_eq!(field.unit(), Rational::ONE);
            assert!(field.member(rat(22, 7)));
        }
        // Idempotence: the field of the full ring is the full ring's field.
        let field = fraction_field(&RationalSubring::all());
        assert_eq!(
            fraction_field(&field.as_subring()),
            RationalSubring::all().fraction_field()
        );
    }

    #[test]
    fn archimedean_witness_is_minimal() {
        assert_eq!(archimedean_witness(rat(1, 3), rat(5, 2)).unwrap(), 8);
        assert_eq!(archimedean_witness(rat(1, 1), rat(1, 1)).unwrap(), 2);
        assert_eq!(archimedean_witness(rat(3, 2), rat(1, 2)).unwrap(), 1);
        assert!(archimedean_witness(rat(0, 1), rat(1, 1)).is_err());
        assert!(archimedean_witness(rat(1, 2), rat(-1, 1)).is_err());
    }

    #[test]
    fn scaled_localization_normal_form() {
        // Z[1/2] * (1/2) is Z[1/2] itself.
        let g = Rank1Group::scaled_localization(rat(1, 2), PrimeSet::Finite([2].into()));
        let h = Rank1Group::scaled_localization(rat(1, 1), PrimeSet::Finite([2].into()));
        assert_eq!(g, h);
        // Z[1/2] * (1/3) keeps the 3 in the scale.
        let g = Rank1Group::scaled_localization(rat(1, 6), PrimeSet::Finite([2].into()));
        assert_eq!(g.scale(), rat(1, 3));
        assert!(g.member(rat(1, 12)));
        assert!(!g.member(rat(1, 9)));
    }

    #[test]
    fn tensor_of_groups() {
        let a = Rank1Group::cyclic(rat(1, 2));
        let b = Rank1Group::cyclic(rat(1, 3));
        assert_eq!(a.tensor(&b).as_cyclic(), Some(rat(1, 6)));
        assert!(Rank1Group::all().tensor(&b).is_all());
        assert_eq!(
            Rank1Group::integers().tensor(&b).as_cyclic(),
            Some(rat(1, 3))
        );
    }

    #[test]
    fn interval_enumeration() {
        let g = Rank1Group::cyclic(rat(1, 4));
        assert_eq!(
            g.enumerate_interval(Rational::ZERO, Rational::ONE, 99),
            vec![rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4), rat(1, 1)]
        );
        let f3 = Rank1Group::all().enumerate_interval(Rational::ZERO, Rational::ONE, 3);
        assert_eq!(
            f3,
            vec![rat(0, 1), rat(1, 3), rat(1, 2), rat(2, 3), rat(1, 1)]
        );
        let dyadic = Rank1Group::scaled_localization(Rational::ONE, PrimeSet::Finite([2].into()));
        let pool = dyadic.enumerate_interval(Rational::ZERO, Rational::ONE, 2);
        assert_eq!(
            pool,
            vec![rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4), rat(1, 1)]
        );
    }

    #[test]
    fn closure_under_ring() {
        let g = Rank1Group::cyclic(rat(1, 3));
        let ring = RationalSubring::localized([2].into());
        assert_eq!(g.closed_under(&ring), Err((rat(1, 2), rat(1, 3))));
        let h = Rank1Group::scaled_localization(rat(1, 3), PrimeSet::Finite([2].into()));
        assert_eq!(h.closed_under(&ring), Ok(()));
        assert_eq!(Rank1Group::all().closed_under(&RationalSubring::all()), Ok(()));
        assert!(g.closed_under(&RationalSubring::all()).is_err());
    }
}
