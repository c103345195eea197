//! Ideals, the radical, and semisimplicity.
//!
//! Ideal search is exhaustive and exact, so it is restricted to finite
//! carriers. The infinite carriers in scope are intervals of rank-1 rational
//! groups and their finite products — subalgebras of powers of `[0,1]` — and
//! carry a by-construction semisimplicity certificate instead.

use std::collections::BTreeSet;

use crate::error::{MvError, Result};
use crate::mv::{MvAlgebra, MvElement};

/// An ideal of a finite MV-algebra: contains 0, downward closed, closed
/// under truncated addition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    pub elements: BTreeSet<MvElement>,
    pub maximal: bool,
}

impl Ideal {
    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1
    }
}

fn closure(algebra: &MvAlgebra, universe: &[MvElement], seed: BTreeSet<MvElement>) -> BTreeSet<MvElement> {
    let mut set = seed;
    set.insert(algebra.zero());
    loop {
        let mut grew = false;
        let members: Vec<MvElement> = set.iter().cloned().collect();
        for x in &members {
            for y in &members {
                let s = algebra.oplus_raw(x, y);
                if set.insert(s) {
                    grew = true;
                }
            }
        }
        for z in universe {
            if set.contains(z) {
                continue;
            }
            if set.iter().any(|x| algebra.le(z, x)) {
                set.insert(z.clone());
                grew = true;
            }
        }
        if !grew {
            return set;
        }
    }
}

/// All ideals of a finite algebra, maximal ones flagged. Sorted by size,
/// then by elements, for deterministic output.
pub fn ideals_finite(algebra: &MvAlgebra) -> Result<Vec<Ideal>> {
    if !algebra.is_finite() {
        return Err(MvError::UnsupportedCarrier {
            operation: "ideals_finite",
            carrier: algebra.to_string(),
        });
    }
    let universe = algebra.enumerate(0);

    // Every ideal is the closure of a finite seed; grow the lattice by
    // adjoining single elements until no new ideal appears.
    let zero_ideal = closure(algebra, &universe, BTreeSet::new());
    let mut ideals: BTreeSet<BTreeSet<MvElement>> = BTreeSet::new();
    let mut queue = vec![zero_ideal.clone()];
    ideals.insert(zero_ideal);
    while let Some(current) = queue.pop() {
        for a in &universe {
            if current.contains(a) {
                continue;
            }
            let mut seed = current.clone();
            seed.insert(a.clone());
            let grown = closure(algebra, &universe, seed);
            if ideals.insert(grown.clone()) {
                queue.push(grown);
            }
        }
    }

    let full_len = universe.len();
    let proper: Vec<&BTreeSet<MvElement>> =
        ideals.iter().filter(|i| i.len() < full_len).collect();
    let mut out: Vec<Ideal> = ideals
        .iter()
        .map(|set| {
            let is_proper = set.len() < full_len;
            let maximal = is_proper
                && !proper
                    .iter()
                    .any(|other| other.len() > set.len() && set.is_subset(other));
            Ideal {
                elements: set.clone(),
                maximal,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        a.elements
            .len()
            .cmp(&b.elements.len())
            .then_with(|| a.elements.cmp(&b.elements))
    });
    Ok(out)
}

/// Intersection of all maximal ideals of a finite algebra.
pub fn radical(algebra: &MvAlgebra) -> Result<Ideal> {
    let ideals = ideals_finite(algebra)?;
    let maximal: Vec<&Ideal> = ideals.iter().filter(|i| i.maximal).collect();
    let mut elements: Option<BTreeSet<MvElement>> = None;
    for ideal in &maximal {
        elements = Some(match elements {
            None => ideal.elements.clone(),
            Some(acc) => acc.intersection(&ideal.elements).cloned().collect(),
        });
    }
    let elements = elements.unwrap_or_else(|| {
        let mut only_zero = BTreeSet::new();
        only_zero.insert(algebra.zero());
        only_zero
    });
    Ok(Ideal {
        elements,
        maximal: false,
    })
}

/// Semisimplicity: zero radical for finite carriers; infinite carriers in
/// scope are subalgebras of powers of `[0,1]` and are semisimple by
/// construction.
pub fn is_semisimple(algebra: &MvAlgebra) -> bool {
    if algebra.is_finite() {
        radical(algebra).map(|r| r.is_zero()).unwrap_or(false)
    } else {
        true
    }
}

/// Human-readable justification for the semisimplicity verdict, recorded in
/// reports.
pub fn semisimple_evidence(algebra: &MvAlgebra) -> String {
    if algebra.is_finite() {
        "finite carrier: radical computed as the intersection of maximal ideals".to_string()
    } else {
        "rank-1 rational carrier (or finite product): subalgebra of a power of [0,1]".to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn chain_has_two_ideals() {
        let ideals = ideals_finite(&MvAlgebra::chain(6)).unwrap();
        assert_eq!(ideals.len(), 2);
        assert!(ideals[0].is_zero());
        assert!(ideals[0].maximal);
        assert_eq!(ideals[1].elements.len(), 7);
        assert!(!ideals[1].maximal);
    }

    #[test]
    fn boolean_pair_is_simple() {
        let ideals = ideals_finite(&MvAlgebra::chain(1)).unwrap();
        assert_eq!(ideals.len(), 2);
        assert!(ideals[0].is_zero() && ideals[0].maximal);
    }

    #[test]
    fn product_of_booleans_has_four_ideals() {
        let p = MvAlgebra::product(vec![MvAlgebra::boolean(), MvAlgebra::boolean()]);
        let ideals = ideals_finite(&p).unwrap();
        assert_eq!(ideals.len(), 4);
        let maximal: Vec<&Ideal> = ideals.iter().filter(|i| i.maximal).collect();
        assert_eq!(maximal.len(), 2);
        // Each maximal ideal kills one coordinate.
        for m in maximal {
            assert_eq!(m.elements.len(), 2);
        }
    }

    #[test]
    fn radical_is_zero_on_semisimple_instances() {
        assert!(radical(&MvAlgebra::chain(6)).unwrap().is_zero());
        let p = MvAlgebra::product(vec![MvAlgebra::boolean(), MvAlgebra::boolean()]);
        let r = radical(&p).unwrap();
        assert_eq!(r.elements.len(), 1);
        assert!(r.elements.contains(&p.zero()));
    }

    #[test]
    fn radical_rejects_infinite_carriers() {
        assert!(matches!(
            radical(&MvAlgebra::interval_q()),
            Err(MvError::UnsupportedCarrier { .. })
        ));
    }

    #[test]
    fn semisimplicity() {
        assert!(is_semisimple(&MvAlgebra::chain(6)));
        assert!(is_semisimple(&MvAlgebra::interval_q()));
        let p = MvAlgebra::product(vec![MvAlgebra::chain(2), MvAlgebra::chain(2)]);
        assert!(is_semisimple(&p));
        let _ = rat(1, 2);
    }
}
