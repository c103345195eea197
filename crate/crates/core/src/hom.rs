//! Homomorphisms between rational MV-algebras.
//!
//! On rank-1 carriers a homomorphism must send the unit to the unit, which
//! forces the map to be multiplication by `top(B)/top(A)`; between products,
//! each target component reads one source component through such a scalar.
//! Construction validates unit preservation and carrier inclusion
//! structurally, then replays `(+)`/`*` preservation on the enumeration.

use std::fmt;

use serde::Serialize;

use crate::error::{MvError, Result};
use crate::mv::{MvAlgebra, MvElement};
use crate::rational::Rational;
use crate::report::Budget;

/// One target component of a homomorphism: `y[j] = scalar * x[source_index]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomComponent {
    pub source_index: usize,
    pub scalar: Rational,
}

/// A validated homomorphism of MV-algebras.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MvHom {
    pub source: MvAlgebra,
    pub target: MvAlgebra,
    pub components: Vec<HomComponent>,
}

impl MvHom {
    /// Builds and validates a homomorphism from its component map.
    pub fn validated(
        source: MvAlgebra,
        target: MvAlgebra,
        components: Vec<HomComponent>,
        budget: &Budget,
    ) -> Result<MvHom> {
        if components.len() != target.arity() {
            return Err(MvError::NotAHom(format!(
                "expected {} components, got {}",
                target.arity(),
                components.len()
            )));
        }
        for (j, comp) in components.iter().enumerate() {
            if comp.source_index >= source.arity() {
                return Err(MvError::NotAHom(format!(
                    "component {j} routes from missing source factor {}",
                    comp.source_index
                )));
            }
            if !comp.scalar.is_positive() {
                return Err(MvError::NotAHom(format!(
                    "component {j} has non-positive scalar {}",
                    comp.scalar
                )));
            }
            let src = source.factor(comp.source_index);
            let tgt = target.factor(j);
            if comp.scalar * src.unit != tgt.unit {
                return Err(MvError::NotAHom(format!(
                    "component {j} maps unit {} to {}, expected {}",
                    src.unit,
                    comp.scalar * src.unit,
                    tgt.unit
                )));
            }
            if !src.group.scaled_subset_of(comp.scalar, &tgt.group) {
                return Err(MvError::NotAHom(format!(
                    "component {j}: {} * {} is not contained in {}",
                    comp.scalar, src.group, tgt.group
                )));
            }
        }
        let hom = MvHom {
            source,
            target,
            components,
        };
        hom.replay_preservation(budget)?;
        Ok(hom)
    }

    /// Replays `(+)`/`*` preservation on enumerated pairs.
    fn replay_preservation(&self, budget: &Budget) -> Result<()> {
        let pool = self.source.enumerate(budget.order);
        let pairs_budget = budget.samples.max(1);
        let mut seen = 0usize;
        'outer: for x in &pool {
            for y in &pool {
                let lhs = self.apply_raw(&self.source.oplus_raw(x, y));
                let rhs = self.target.oplus_raw(&self.apply_raw(x), &self.apply_raw(y));
                if lhs != rhs {
                    return Err(MvError::NotAHom(format!(
                        "oplus not preserved at ({x}, {y})"
                    )));
                }
                seen += 1;
                if seen >= pairs_budget {
                    break 'outer;
                }
            }
        }
        for x in &pool {
            if self.apply_raw(&self.source.neg_raw(x)) != self.target.neg_raw(&self.apply_raw(x)) {
                return Err(MvError::NotAHom(format!("neg not preserved at {x}")));
            }
        }
        if self.apply_raw(&self.source.zero()) != self.target.zero() {
            return Err(MvError::NotAHom("zero not preserved".into()));
        }
        Ok(())
    }

    pub(crate) fn apply_raw(&self, x: &MvElement) -> MvElement {
        MvElement::from_vec(
            self.components
                .iter()
                .map(|c| c.scalar * x.components()[c.source_index])
                .collect(),
        )
    }

    /// Applies the map, checking membership on both sides.
    pub fn apply(&self, x: &MvElement) -> Result<MvElement> {
        self.source.require_member(x)?;
        let image = self.apply_raw(x);
        self.target.require_member(&image)?;
        Ok(image)
    }

    pub fn identity(algebra: &MvAlgebra) -> MvHom {
        MvHom {
            source: algebra.clone(),
            target: algebra.clone(),
            components: (0..algebra.arity())
                .map(|i| HomComponent {
                    source_index: i,
                    scalar: Rational::ONE,
                })
                .collect(),
        }
    }

    /// `self` after `inner`: requires `inner.target == self.source`.
    pub fn compose(&self, inner: &MvHom) -> Result<MvHom> {
        if inner.target != self.source {
            return Err(MvError::NotComposable(format!(
                "inner target {} != outer source {}",
                inner.target, self.source
            )));
        }
        let components = self
            .components
            .iter()
            .map(|outer| {
                let mid = &inner.components[outer.source_index];
                HomComponent {
                    source_index: mid.source_index,
                    scalar: outer.scalar * mid.scalar,
                }
            })
            .collect();
        Ok(MvHom {
            source: inner.source.clone(),
            target: self.target.clone(),
            components,
        })
    }

    /// Injectivity on the enumerated carrier.
    pub fn is_injective_on(&self, order: u32) -> bool {
        let pool = self.source.enumerate(order);
        for (i, x) in pool.iter().enumerate() {
            for y in &pool[i + 1..] {
                if self.apply_raw(x) == self.apply_raw(y) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for MvHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} [", self.source, self.target)?;
        for (j, c) in self.components.iter().enumerate() {
            if j > 0 {
                write!(f, ";")?;
            }
            write!(f, "y{j}={}*x{}", c.scalar, c.source_index)?;
        }
        write!(f, "]")
    }
}

fn component_candidates(source: &MvAlgebra, target: &MvAlgebra, j: usize) -> Vec<HomComponent> {
    let tgt = target.factor(j);
    (0..source.arity())
        .filter_map(|i| {
            let src = source.factor(i);
            let scalar = tgt.unit / src.unit;
            src.group
                .scaled_subset_of(scalar, &tgt.group)
                .then_some(HomComponent {
                    source_index: i,
                    scalar,
                })
        })
        .collect()
}

/// The canonical homomorphism `A -> B` when one exists: each target
/// component takes the lowest-index source factor whose rescaling lands in
/// the target carrier.
pub fn hom_find(source: &MvAlgebra, target: &MvAlgebra, budget: &Budget) -> Option<MvHom> {
    let components: Option<Vec<HomComponent>> = (0..target.arity())
        .map(|j| component_candidates(source, target, j).into_iter().next())
        .collect();
    MvHom::validated(source.clone(), target.clone(), components?, budget).ok()
}

/// All routing/scalar homomorphisms `A -> B`, in deterministic order
/// (component 0 most significant, source indices ascending).
pub fn hom_enumerate(source: &MvAlgebra, target: &MvAlgebra, budget: &Budget) -> Vec<MvHom> {
    let per_component: Vec<Vec<HomComponent>> = (0..target.arity())
        .map(|j| component_candidates(source, target, j))
        .collect();
    if per_component.iter().any(|c| c.is_empty()) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_component.len()];
    loop {
        let components: Vec<HomComponent> = idx
            .iter()
            .zip(&per_component)
            .map(|(&i, c)| c[i].clone())
            .collect();
        if let Ok(hom) = MvHom::validated(source.clone(), target.clone(), components, budget) {
            out.push(hom);
        }
        let mut k = per_component.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < per_component[k].len() {
                break;
            }
            idx[k] = 0;
            if k == 0 {
                return out;
            }
        }
    }
}

/// Isomorphism of descriptors: a factor matching (bijective routing) whose
/// forced scalars rescale each source group exactly onto its target group.
pub fn is_isomorphic(a: &MvAlgebra, b: &MvAlgebra) -> bool {
    if a.arity() != b.arity() {
        return false;
    }
    if a.size() != b.size() {
        return false;
    }
    let n = a.arity();
    let mut used = vec![false; n];
    fn assign(a: &MvAlgebra, b: &MvAlgebra, j: usize, used: &mut [bool]) -> bool {
        if j == b.arity() {
            return true;
        }
        let tgt = b.factor(j);
        for i in 0..a.arity() {
            if used[i] {
                continue;
            }
            let src = a.factor(i);
            let scalar = tgt.unit / src.unit;
            if src.group.scaled_by(scalar) == tgt.group {
                used[i] = true;
                if assign(a, b, j + 1, used) {
                    return true;
                }
                used[i] = false;
            }
        }
        false
    }
    assign(a, b, 0, &mut used)
}
