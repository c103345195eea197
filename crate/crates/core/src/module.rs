//! MV-modules: an MV-algebra carrier acted on by a PMV-algebra of scalars
//! through componentwise rational multiplication.
//!
//! Carriers are intervals of `c * R`-submodules of the rationals (and finite
//! products of these), so closure under the scalar ring is decidable on the
//! descriptors and is validated at construction. Totally ordered scalars act
//! on product carriers diagonally; a product PMV-algebra acts componentwise
//! on a carrier of matching arity.

use crate::error::{MvError, Result};
use crate::groups::Rank1Group;
use crate::hom::{HomComponent, MvHom};
use crate::ideal;
use crate::laws::{check_law_pools, exhaustive_for};
use crate::mv::{MvAlgebra, MvElement};
use crate::pmv::{is_mv_domain, PmvAlgebra};
use crate::rational::Rational;
use crate::report::{Budget, CheckStatus, Counterexample, DomainReport, LawReport};

/// A validated MV-module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MvModule {
    scalars: PmvAlgebra,
    carrier: MvAlgebra,
}

impl MvModule {
    /// Builds the module on `gamma(group, unit)` over `scalars`.
    pub fn make(scalars: PmvAlgebra, group: Rank1Group, unit: Rational) -> Result<MvModule> {
        let carrier = MvAlgebra::gamma(group, unit)?;
        MvModule::over(scalars, carrier)
    }

    /// Validates an existing carrier as a module over `scalars`.
    pub fn over(scalars: PmvAlgebra, carrier: MvAlgebra) -> Result<MvModule> {
        if scalars.arity() != 1 && scalars.arity() != carrier.arity() {
            return Err(MvError::Precondition(format!(
                "scalar arity {} fits neither diagonally nor componentwise on carrier arity {}",
                scalars.arity(),
                carrier.arity()
            )));
        }
        let rings = scalars.ring_descriptor();
        for (j, factor) in carrier.factors().iter().enumerate() {
            let ring = if rings.len() == 1 { &rings[0] } else { &rings[j] };
            if let Err((r, g)) = factor.group.closed_under(ring) {
                return Err(MvError::NotAModule {
                    scalar: r.to_string(),
                    generator: g.to_string(),
                });
            }
        }
        if !ideal::is_semisimple(&carrier) {
            return Err(MvError::HypothesisNotMet(format!(
                "carrier {carrier} is not semisimple"
            )));
        }
        Ok(MvModule { scalars, carrier })
    }

    pub fn scalars(&self) -> &PmvAlgebra {
        &self.scalars
    }

    pub fn carrier(&self) -> &MvAlgebra {
        &self.carrier
    }

    /// Checked scalar action.
    pub fn scalar_mul(&self, alpha: &MvElement, x: &MvElement) -> Result<MvElement> {
        self.scalars.base().require_member(alpha)?;
        self.carrier.require_member(x)?;
        Ok(self.scalar_mul_raw(alpha, x))
    }

    pub(crate) fn scalar_mul_raw(&self, alpha: &MvElement, x: &MvElement) -> MvElement {
        if alpha.arity() == 1 {
            let a = alpha.value();
            MvElement::from_vec(x.components().iter().map(|&c| a * c).collect())
        } else {
            alpha.map2(x, |a, c| a * c)
        }
    }
}

impl std::fmt::Display for MvModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} over {}", self.carrier, self.scalars)
    }
}

/// The scalar action evaluated by the module-law checker. Implemented by
/// [`MvModule`]; tests substitute broken actions to verify detection.
pub trait ScalarAction {
    fn module(&self) -> &MvModule;
    fn act(&self, alpha: &MvElement, x: &MvElement) -> MvElement;
}

impl ScalarAction for MvModule {
    fn module(&self) -> &MvModule {
        self
    }

    fn act(&self, alpha: &MvElement, x: &MvElement) -> MvElement {
        self.scalar_mul_raw(alpha, x)
    }
}

/// Evaluates the module laws with the canonical action.
pub fn check_module_axioms(module: &MvModule, budget: &Budget) -> LawReport {
    check_module_axioms_with(module, budget)
}

/// Evaluates the module laws: `1x = x`, mixed associativity, the two
/// partial-addition distributivities (only where the sums are defined), and
/// isotonicity in each argument.
pub fn check_module_axioms_with(action: &impl ScalarAction, budget: &Budget) -> LawReport {
    let module = action.module();
    let p = module.scalars();
    let m = module.carrier();
    let scalar_pool = p.base().enumerate(budget.order);
    let elem_pool = m.enumerate(budget.order);
    let exhaustive = exhaustive_for(p.base(), budget) && exhaustive_for(m, budget);
    let s: &[MvElement] = &scalar_pool;
    let x: &[MvElement] = &elem_pool;
    let one = p.top();

    let laws = vec![
        check_law_pools("act_one", &["x"], &[x], exhaustive, budget, |t| {
            action.act(&one, t[0]) == *t[0]
        }),
        check_law_pools(
            "act_assoc",
            &["alpha", "beta", "x"],
            &[s, s, x],
            exhaustive,
            budget,
            |t| {
                action.act(t[0], &action.act(t[1], t[2]))
                    == action.act(&p.product_raw(t[0], t[1]), t[2])
            },
        ),
        check_law_pools(
            "dist_element_sum",
            &["alpha", "x", "y"],
            &[s, x, x],
            exhaustive,
            budget,
            |t| match m.partial_add(t[1], t[2]) {
                Some(sum) => {
                    let lhs = action.act(t[0], &sum);
                    let rhs = action.act(t[0], t[1]).map2(&action.act(t[0], t[2]), |a, b| a + b);
                    lhs == rhs
                }
                None => true,
            },
        ),
        check_law_pools(
            "dist_scalar_sum",
            &["alpha", "beta", "x"],
            &[s, s, x],
            exhaustive,
            budget,
            |t| match p.base().partial_add(t[0], t[1]) {
                Some(sum) => {
                    let lhs = action.act(&sum, t[2]);
                    let rhs = action.act(t[0], t[2]).map2(&action.act(t[1], t[2]), |a, b| a + b);
                    lhs == rhs
                }
                None => true,
            },
        ),
        check_law_pools(
            "isotone_element",
            &["alpha", "x", "y"],
            &[s, x, x],
            exhaustive,
            budget,
            |t| !m.le(t[1], t[2]) || m.le(&action.act(t[0], t[1]), &action.act(t[0], t[2])),
        ),
        check_law_pools(
            "isotone_scalar",
            &["alpha", "beta", "x"],
            &[s, s, x],
            exhaustive,
            budget,
            |t| {
                !p.base().le(t[0], t[1])
                    || m.le(&action.act(t[0], t[2]), &action.act(t[1], t[2]))
            },
        ),
    ];

    LawReport::new(module.to_string(), budget, laws)
}

/// Checks `alpha * x = 0 => alpha = 0 or x = 0` over sampled pairs, and
/// records whether the scalars satisfy the hypothesis under which the
/// statement is a theorem (totally ordered semisimple MV-domain whose ring
/// embeds in the rational field).
pub fn check_no_zero_divisors(module: &MvModule, budget: &Budget) -> DomainReport {
    let p = module.scalars();
    let m = module.carrier();
    let scalar_pool = p.base().enumerate(budget.order);
    let elem_pool = m.enumerate(budget.order);
    let exhaustive = exhaustive_for(p.base(), budget) && exhaustive_for(m, budget);
    let limit = if exhaustive {
        scalar_pool.len() * elem_pool.len()
    } else {
        budget.samples
    };

    let mut cases = 0u64;
    let mut witness = None;
    'scan: for alpha in &scalar_pool {
        for x in &elem_pool {
            cases += 1;
            let ax = module.scalar_mul_raw(alpha, x);
            if ax.is_zero() && !alpha.is_zero() && !x.is_zero() {
                let mut w = Counterexample::new();
                w.insert("alpha".into(), alpha.to_string());
                w.insert("x".into(), x.to_string());
                witness = Some(w);
                break 'scan;
            }
            if cases as usize >= limit {
                break 'scan;
            }
        }
    }

    let hypothesis_met = p.is_totally_ordered()
        && is_mv_domain(p, budget).verdict
        && ideal::is_semisimple(p.base());
    let certificate = (hypothesis_met && witness.is_none()).then(|| {
        "scalars form a totally ordered MV-domain embedding in the rationals; \
         rational multiplication has no zero divisors"
            .to_string()
    });
    DomainReport {
        instance: module.to_string(),
        property: "module_no_zero_divisors".into(),
        seed: budget.seed,
        cases,
        exhaustive,
        status: if certificate.is_some() {
            CheckStatus::Certified
        } else {
            CheckStatus::Tested
        },
        certificate,
        hypothesis_met: Some(hypothesis_met),
        witness: witness.clone(),
        verdict: witness.is_none(),
    }
}

/// The map `a -> a * top`, validated as an injective homomorphism of
/// MV-algebras from the scalars into the carrier. Requires totally ordered
/// scalars.
pub fn unit_embedding(module: &MvModule, budget: &Budget) -> Result<MvHom> {
    let p = module.scalars();
    if !p.is_totally_ordered() {
        return Err(MvError::HypothesisNotMet(format!(
            "unit embedding needs totally ordered scalars, got {p}"
        )));
    }
    let m = module.carrier();
    let components = m
        .units()
        .iter()
        .map(|&v| HomComponent {
            source_index: 0,
            scalar: v,
        })
        .collect();
    let hom = MvHom::validated(p.base().clone(), m.clone(), components, budget)?;
    if !hom.is_injective_on(budget.order) {
        return Err(MvError::NotAHom(
            "unit embedding is not injective on the enumeration".into(),
        ));
    }
    Ok(hom)
}

/// A homomorphism of MV-modules: a carrier homomorphism that commutes with
/// the scalar action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleHom {
    pub source: MvModule,
    pub target: MvModule,
    pub hom: MvHom,
}

impl ModuleHom {
    pub fn validated(
        source: &MvModule,
        target: &MvModule,
        hom: MvHom,
        budget: &Budget,
    ) -> Result<ModuleHom> {
        if source.scalars() != target.scalars() {
            return Err(MvError::NotAHom(format!(
                "modules have different scalars: {} vs {}",
                source.scalars(),
                target.scalars()
            )));
        }
        if &hom.source != source.carrier() || &hom.target != target.carrier() {
            return Err(MvError::NotAHom(
                "carrier map does not match the modules".into(),
            ));
        }
        let scalar_pool = source.scalars().base().enumerate(budget.order);
        let elem_pool = source.carrier().enumerate(budget.order);
        let mut seen = 0usize;
        'outer: for alpha in &scalar_pool {
            for x in &elem_pool {
                let lhs = hom.apply_raw(&source.scalar_mul_raw(alpha, x));
                let rhs = target.scalar_mul_raw(alpha, &hom.apply_raw(x));
                if lhs != rhs {
                    return Err(MvError::NotAHom(format!(
                        "action not preserved at ({alpha}, {x})"
                    )));
                }
                seen += 1;
                if seen >= budget.samples.max(1) {
                    break 'outer;
                }
            }
        }
        Ok(ModuleHom {
            source: source.clone(),
            target: target.clone(),
            hom,
        })
    }

    pub fn compose(&self, inner: &ModuleHom) -> Result<ModuleHom> {
        Ok(ModuleHom {
            source: inner.source.clone(),
            target: self.target.clone(),
            hom: self.hom.compose(&inner.hom)?,
        })
    }
}
