//! The law-checking engine and the MV axiom suite.
//!
//! Laws are evaluated over the deterministic enumeration of a carrier:
//! exhaustively when the carrier is finite and no larger than the budget's
//! exhaustive limit, otherwise on seeded samples drawn from the bounded
//! enumeration pool. Tuples are scanned in lexicographic enumeration order,
//! so the first counterexample of a broken law is reproducible.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::mv::{MvAlgebra, MvElement};
use crate::report::{Budget, Counterexample, LawReport, LawResult};

/// The operations the axiom checker evaluates. Implemented by [`MvAlgebra`]
/// itself; tests implement it with deliberately broken operations to verify
/// the checker catches them.
pub trait MvOps {
    fn algebra(&self) -> &MvAlgebra;
    fn oplus(&self, x: &MvElement, y: &MvElement) -> MvElement;
    fn neg(&self, x: &MvElement) -> MvElement;
}

impl MvOps for MvAlgebra {
    fn algebra(&self) -> &MvAlgebra {
        self
    }

    fn oplus(&self, x: &MvElement, y: &MvElement) -> MvElement {
        self.oplus_raw(x, y)
    }

    fn neg(&self, x: &MvElement) -> MvElement {
        self.neg_raw(x)
    }
}

/// Whether the tuple space of `pool` is walked exhaustively under `budget`.
pub(crate) fn exhaustive_for(algebra: &MvAlgebra, budget: &Budget) -> bool {
    matches!(algebra.size(), Some(n) if n as usize <= budget.exhaustive_limit)
}

/// Evaluates one law over tuples drawn from one pool per variable,
/// returning the first counterexample in scan order if any.
pub(crate) fn check_law_pools(
    name: &str,
    vars: &[&str],
    pools: &[&[MvElement]],
    exhaustive: bool,
    budget: &Budget,
    law: impl Fn(&[&MvElement]) -> bool,
) -> LawResult {
    debug_assert_eq!(vars.len(), pools.len());
    let arity = vars.len();
    let mut cases = 0u64;
    let mut counterexample: Option<Counterexample> = None;
    let mut tuple: Vec<&MvElement> = Vec::with_capacity(arity);

    let mut visit = |idx: &[usize]| -> bool {
        tuple.clear();
        tuple.extend(idx.iter().zip(pools).map(|(&i, p)| &p[i]));
        cases += 1;
        if !law(&tuple) {
            let mut assignment = Counterexample::new();
            for (v, e) in vars.iter().zip(&tuple) {
                assignment.insert((*v).to_string(), e.to_string());
            }
            counterexample = Some(assignment);
            return false;
        }
        true
    };

    if exhaustive && pools.iter().all(|p| !p.is_empty()) {
        let mut idx = vec![0usize; arity];
        'scan: loop {
            if !visit(&idx) {
                break 'scan;
            }
            // Odometer: last variable fastest, so tuples ascend
            // lexicographically in (vars[0], vars[1], ...).
            let mut k = arity;
            loop {
                if k == 0 {
                    break 'scan;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < pools[k].len() {
                    break;
                }
                idx[k] = 0;
                if k == 0 {
                    break 'scan;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ hash_name(name));
        let mut idx = vec![0usize; arity];
        for _ in 0..budget.samples {
            for (slot, p) in idx.iter_mut().zip(pools) {
                *slot = (rng.next_u64() % p.len() as u64) as usize;
            }
            if !visit(&idx) {
                break;
            }
        }
    }

    LawResult {
        law: name.to_string(),
        cases,
        exhaustive,
        pass: counterexample.is_none(),
        counterexample,
    }
}

/// Single-pool convenience wrapper around [`check_law_pools`].
pub(crate) fn check_law(
    name: &str,
    vars: &[&str],
    pool: &[MvElement],
    exhaustive: bool,
    budget: &Budget,
    law: impl Fn(&[&MvElement]) -> bool,
) -> LawResult {
    let pools: Vec<&[MvElement]> = vars.iter().map(|_| pool).collect();
    check_law_pools(name, vars, &pools, exhaustive, budget, law)
}

// Law names perturb the sampler seed so each law draws an independent,
// reproducible stream.
fn hash_name(name: &str) -> u64 {
    name.bytes().fold(0xcbf29ce484222325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100000001b3)
    })
}

/// Evaluates the MV axioms on a carrier with the canonical operations.
pub fn check_axioms(algebra: &MvAlgebra, budget: &Budget) -> LawReport {
    check_axioms_with(algebra, budget)
}

/// Evaluates the MV axioms with explicitly supplied operations.
pub fn check_axioms_with(ops: &impl MvOps, budget: &Budget) -> LawReport {
    let algebra = ops.algebra();
    let pool = algebra.enumerate(budget.order);
    let exhaustive = exhaustive_for(algebra, budget);
    let zero = algebra.zero();
    let top = ops.neg(&zero);

    let laws = vec![
        check_law("oplus_assoc", &["x", "y", "z"], &pool, exhaustive, budget, |t| {
            ops.oplus(&ops.oplus(t[0], t[1]), t[2]) == ops.oplus(t[0], &ops.oplus(t[1], t[2]))
        }),
        check_law("oplus_comm", &["x", "y"], &pool, exhaustive, budget, |t| {
            ops.oplus(t[0], t[1]) == ops.oplus(t[1], t[0])
        }),
        check_law("oplus_zero", &["x"], &pool, exhaustive, budget, |t| {
            ops.oplus(t[0], &zero) == *t[0]
        }),
        check_law("double_neg", &["x"], &pool, exhaustive, budget, |t| {
            ops.neg(&ops.neg(t[0])) == *t[0]
        }),
        check_law("lukasiewicz", &["x", "y"], &pool, exhaustive, budget, |t| {
            let lhs = ops.oplus(&ops.neg(&ops.oplus(&ops.neg(t[0]), t[1])), t[1]);
            let rhs = ops.oplus(&ops.neg(&ops.oplus(&ops.neg(t[1]), t[0])), t[0]);
            lhs == rhs
        }),
        check_law("top_absorbing", &["x"], &pool, exhaustive, budget, |t| {
            ops.oplus(t[0], &top) == top
        }),
    ];

    LawReport::new(algebra.to_string(), budget, laws)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn chain_axioms_pass_exhaustively() {
        let report = check_axioms(&MvAlgebra::chain(6), &Budget::default());
        assert!(report.passed());
        assert!(report.laws.iter().all(|l| l.exhaustive));
        // 7 elements: the ternary law sees 343 tuples.
        assert_eq!(report.law("oplus_assoc").unwrap().cases, 343);
    }

    #[test]
    fn product_axioms_pass() {
        let p = MvAlgebra::product(vec![MvAlgebra::chain(2), MvAlgebra::chain(3)]);
        let report = check_axioms(&p, &Budget::default());
        assert!(report.passed());
        assert!(report.laws.iter().all(|l| l.exhaustive));
    }

    #[test]
    fn interval_axioms_sampled() {
        let report = check_axioms(&MvAlgebra::interval_q(), &Budget::default());
        assert!(report.passed());
        assert!(report.laws.iter().all(|l| !l.exhaustive));
        assert_eq!(report.law("oplus_assoc").unwrap().cases, 1000);
    }

    /// Broken involution: `neg(x) := 0`.
    struct NegToZero(MvAlgebra);

    impl MvOps for NegToZero {
        fn algebra(&self) -> &MvAlgebra {
            &self.0
        }
        fn oplus(&self, x: &MvElement, y: &MvElement) -> MvElement {
            self.0.oplus_raw(x, y)
        }
        fn neg(&self, _x: &MvElement) -> MvElement {
            self.0.zero()
        }
    }

    #[test]
    fn mutant_neg_is_caught_with_witness() {
        let report = check_axioms_with(&NegToZero(MvAlgebra::chain(6)), &Budget::default());
        assert!(!report.passed());
        let law = report.law("double_neg").unwrap();
        assert!(!law.pass);
        let witness = law.counterexample.as_ref().unwrap();
        assert_eq!(witness.get("x").unwrap(), "1/6");
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = MvAlgebra::interval_q();
        let r1 = check_axioms(&a, &Budget::default());
        let r2 = check_axioms(&a, &Budget::default());
        assert_eq!(
            serde_json::to_string(&r1).unwrap(),
            serde_json::to_string(&r2).unwrap()
        );
    }

    #[test]
    fn first_counterexample_is_lexicographic() {
        // neg := 0 breaks top_absorbing too (top becomes 0): x (+) 0 = x != 0
        // first fails at x = 1/6, not x = 0.
        let report = check_axioms_with(&NegToZero(MvAlgebra::chain(6)), &Budget::default());
        let law = report.law("top_absorbing").unwrap();
        assert_eq!(law.counterexample.as_ref().unwrap().get("x").unwrap(), "1/6");
        assert_eq!(law.cases, 2);
        let _ = rat(1, 6);
    }
}
