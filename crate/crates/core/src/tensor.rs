//! The semisimple tensor product at desk scale.
//!
//! For interval algebras of rank-1 rational groups the semisimple tensor is
//! computed through its group-level realization: the tensor of `G_A` and
//! `G_B` is the subgroup generated by pairwise products of elements, and the
//! product algebra is the interval `[0, u_A * u_B]` inside it. The canonical
//! bimorphism is the restriction of rational multiplication; for product
//! carriers the rank-1 side distributes componentwise.

use crate::error::{MvError, Result};
use crate::groups::Rank1Group;
use crate::hom::{HomComponent, MvHom};
use crate::ideal;
use crate::laws::{check_law_pools, exhaustive_for};
use crate::module::{ModuleHom, MvModule};
use crate::mv::{MvAlgebra, MvElement};
use crate::pmv::PmvAlgebra;
use crate::rational::Rational;
use crate::report::{Budget, LawReport, LawResult};

/// Group-level tensor of rank-1 descriptors: the subgroup generated by all
/// pairwise products, `Cyclic(a) (x) Cyclic(b) = Cyclic(a*b)` and
/// `All (x) G = All`.
pub fn tensor_group(g: &Rank1Group, h: &Rank1Group) -> Rank1Group {
    g.tensor(h)
}

/// A computed semisimple tensor product with its canonical maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorResult {
    pub left: MvAlgebra,
    pub right: MvAlgebra,
    pub result: MvAlgebra,
}

/// Semisimple tensor of two in-scope algebras. At most one side may be a
/// product; tensoring distributes over the product side componentwise.
pub fn tensor_ss(a: &MvAlgebra, b: &MvAlgebra) -> Result<TensorResult> {
    if !ideal::is_semisimple(a) || !ideal::is_semisimple(b) {
        return Err(MvError::Precondition(
            "semisimple tensor needs semisimple factors".into(),
        ));
    }
    if a.arity() > 1 && b.arity() > 1 {
        return Err(MvError::UnsupportedCarrier {
            operation: "tensor_ss",
            carrier: format!("{a} (x) {b}"),
        });
    }
    let factors: Vec<MvAlgebra> = if a.arity() == 1 {
        let af = a.factor(0);
        b.factors()
            .iter()
            .map(|bf| MvAlgebra::gamma(tensor_group(&af.group, &bf.group), af.unit * bf.unit))
            .collect::<Result<_>>()?
    } else {
        let bf = b.factor(0);
        a.factors()
            .iter()
            .map(|af| MvAlgebra::gamma(tensor_group(&af.group, &bf.group), af.unit * bf.unit))
            .collect::<Result<_>>()?
    };
    Ok(TensorResult {
        left: a.clone(),
        right: b.clone(),
        result: MvAlgebra::product(factors),
    })
}

impl TensorResult {
    /// The canonical bimorphism `(a, b) -> a * b`, checked.
    pub fn beta(&self, a: &MvElement, b: &MvElement) -> Result<MvElement> {
        self.left.require_member(a)?;
        self.right.require_member(b)?;
        let image = self.beta_raw(a, b);
        self.result.require_member(&image)?;
        Ok(image)
    }

    pub(crate) fn beta_raw(&self, a: &MvElement, b: &MvElement) -> MvElement {
        if a.arity() == 1 {
            let av = a.value();
            MvElement::from_vec(b.components().iter().map(|&c| av * c).collect())
        } else {
            let bv = b.value();
            MvElement::from_vec(a.components().iter().map(|&c| c * bv).collect())
        }
    }

    /// Canonical embedding of one factor: `b -> beta(top, b)` or
    /// `a -> beta(a, top)`, validated as an injective homomorphism.
    pub fn iota_embedding(&self, side: Side, budget: &Budget) -> Result<MvHom> {
        let (source, other_units) = match side {
            Side::Left => (&self.left, self.right.units()),
            Side::Right => (&self.right, self.left.units()),
        };
        let components = if source.arity() == self.result.arity() {
            // The other factor is rank-1: broadcast its unit.
            let u = other_units[0];
            (0..source.arity())
                .map(|j| HomComponent {
                    source_index: j,
                    scalar: u,
                })
                .collect()
        } else {
            // This factor is rank-1 and the other is a product.
            other_units
                .iter()
                .map(|&u| HomComponent {
                    source_index: 0,
                    scalar: u,
                })
                .collect()
        };
        let hom = MvHom::validated(source.clone(), self.result.clone(), components, budget)?;
        if !hom.is_injective_on(budget.order) {
            return Err(MvError::NotAHom(
                "tensor embedding is not injective on the enumeration".into(),
            ));
        }
        Ok(hom)
    }
}

/// Which factor a canonical embedding starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Evaluates the bimorphism laws for the canonical beta.
pub fn check_bimorphism(t: &TensorResult, budget: &Budget) -> LawReport {
    check_bimorphism_with(t, |a, b| t.beta_raw(a, b), budget)
}

/// Evaluates the bimorphism laws for an arbitrary candidate map: additivity
/// in each slot where the partial sum is defined, and commutation with join
/// and meet in each slot.
pub fn check_bimorphism_with(
    t: &TensorResult,
    beta: impl Fn(&MvElement, &MvElement) -> MvElement,
    budget: &Budget,
) -> LawReport {
    let a_pool = t.left.enumerate(budget.order);
    let b_pool = t.right.enumerate(budget.order);
    let exhaustive = exhaustive_for(&t.left, budget) && exhaustive_for(&t.right, budget);
    let ap: &[MvElement] = &a_pool;
    let bp: &[MvElement] = &b_pool;
    let left = &t.left;
    let right = &t.right;

    let mut laws = vec![
        check_law_pools(
            "add_left",
            &["a", "a2", "b"],
            &[ap, ap, bp],
            exhaustive,
            budget,
            |v| match left.partial_add(v[0], v[1]) {
                Some(sum) => beta(&sum, v[2]) == beta(v[0], v[2]).map2(&beta(v[1], v[2]), |x, y| x + y),
                None => true,
            },
        ),
        check_law_pools(
            "add_right",
            &["a", "b", "b2"],
            &[ap, bp, bp],
            exhaustive,
            budget,
            |v| match right.partial_add(v[1], v[2]) {
                Some(sum) => beta(v[0], &sum) == beta(v[0], v[1]).map2(&beta(v[0], v[2]), |x, y| x + y),
                None => true,
            },
        ),
        check_law_pools(
            "join_left",
            &["a", "a2", "b"],
            &[ap, ap, bp],
            exhaustive,
            budget,
            |v| {
                beta(&left.join_raw(v[0], v[1]), v[2])
                    == beta(v[0], v[2]).map2(&beta(v[1], v[2]), Rational::max)
            },
        ),
        check_law_pools(
            "meet_left",
            &["a", "a2", "b"],
            &[ap, ap, bp],
            exhaustive,
            budget,
            |v| {
                beta(&left.meet_raw(v[0], v[1]), v[2])
                    == beta(v[0], v[2]).map2(&beta(v[1], v[2]), Rational::min)
            },
        ),
        check_law_pools(
            "join_right",
            &["a", "b", "b2"],
            &[ap, bp, bp],
            exhaustive,
            budget,
            |v| {
                beta(v[0], &right.join_raw(v[1], v[2]))
                    == beta(v[0], v[1]).map2(&beta(v[0], v[2]), Rational::max)
            },
        ),
        check_law_pools(
            "meet_right",
            &["a", "b", "b2"],
            &[ap, bp, bp],
            exhaustive,
            budget,
            |v| {
                beta(v[0], &right.meet_raw(v[1], v[2]))
                    == beta(v[0], v[1]).map2(&beta(v[0], v[2]), Rational::min)
            },
        ),
        check_law_pools("zero_left", &["b"], &[bp], exhaustive, budget, |v| {
            beta(&left.zero(), v[0]).is_zero()
        }),
        check_law_pools("zero_right", &["a"], &[ap], exhaustive, budget, |v| {
            beta(v[0], &right.zero()).is_zero()
        }),
    ];
    let unit_ok = beta(&t.left.top(), &t.right.top()) == t.result.top();
    laws.push(LawResult {
        law: "unit_pair".into(),
        cases: 1,
        exhaustive: true,
        pass: unit_ok,
        counterexample: if unit_ok {
            None
        } else {
            let mut w = crate::report::Counterexample::new();
            w.insert("a".into(), t.left.top().to_string());
            w.insert("b".into(), t.right.top().to_string());
            Some(w)
        },
    });

    LawReport::new(
        format!("{} (x) {}", t.left, t.right),
        budget,
        laws,
    )
}

/// The module structure of a semisimple tensor: `base(P) (x) B` as a
/// `P`-module under rational multiplication. Ring-closure of the result
/// group holds by construction of the group tensor; `MvModule::over`
/// re-asserts it.
pub fn tensor_module_structure(p: &PmvAlgebra, b: &MvAlgebra) -> Result<MvModule> {
    let t = tensor_ss(p.base(), b)?;
    MvModule::over(p.clone(), t.result)
}

/// The extension produced by the tensor universal property.
#[derive(Debug, Clone)]
pub struct HomExtension {
    /// `base(P) (x) B` as a `P`-module.
    pub tensor_module: MvModule,
    /// The canonical embedding of `B` into the tensor.
    pub iota: MvHom,
    /// The unique module homomorphism with `extended . iota = f`.
    pub extended: ModuleHom,
    /// Scalars forced per component by unit preservation.
    pub forced_scalars: Vec<Rational>,
    /// Points of the enumeration on which the triangle was verified.
    pub triangle_cases: u64,
}

/// Extends a carrier homomorphism `f: B -> U(M)` to the unique `P`-module
/// homomorphism on `base(P) (x) B`.
///
/// The rank-1 structure forces each component scalar twice over — once by
/// unit preservation, once by the triangle at any nonzero point — and the
/// two constraints must agree; disagreement is a universal-property
/// violation and must never fire on validated inputs.
pub fn extend_hom(
    p: &PmvAlgebra,
    b: &MvAlgebra,
    m: &MvModule,
    f: &MvHom,
    budget: &Budget,
) -> Result<HomExtension> {
    if !p.is_totally_ordered() {
        return Err(MvError::HypothesisNotMet(format!(
            "tensor extension needs totally ordered scalars, got {p}"
        )));
    }
    if m.scalars() != p {
        return Err(MvError::Precondition(format!(
            "module {m} is not over {p}"
        )));
    }
    if &f.source != b || &f.target != m.carrier() {
        return Err(MvError::NotAHom(format!(
            "f must map {b} into {}, got {f}",
            m.carrier()
        )));
    }

    let t = tensor_ss(p.base(), b)?;
    let tensor_module = MvModule::over(p.clone(), t.result.clone())?;
    let iota = t.iota_embedding(Side::Right, budget)?;

    // Unit preservation forces each scalar to target_unit / tensor_unit.
    let tensor_units = t.result.units();
    let target_units = m.carrier().units();
    let mut components = Vec::with_capacity(f.components.len());
    let mut forced = Vec::with_capacity(f.components.len());
    for (j, fc) in f.components.iter().enumerate() {
        let forced_scalar = target_units[j] / tensor_units[fc.source_index];
        if forced_scalar != fc.scalar {
            return Err(MvError::UniversalProperty(format!(
                "component {j}: unit constraint forces scalar {forced_scalar}, \
                 but f uses {}",
                fc.scalar
            )));
        }
        forced.push(forced_scalar);
        components.push(HomComponent {
            source_index: fc.source_index,
            scalar: forced_scalar,
        });
    }
    let extended_hom = MvHom::validated(t.result.clone(), m.carrier().clone(), components, budget)?;
    let extended = ModuleHom::validated(&tensor_module, m, extended_hom, budget)?;

    // Triangle: extended . iota = f pointwise on the enumeration of B.
    let mut triangle_cases = 0u64;
    for x in b.enumerate(budget.order) {
        let via_tensor = extended.hom.apply_raw(&iota.apply_raw(&x));
        let direct = f.apply_raw(&x);
        if via_tensor != direct {
            return Err(MvError::UniversalProperty(format!(
                "triangle fails at {x}: {via_tensor} != {direct}"
            )));
        }
        // Any nonzero point re-forces the scalar; check agreement.
        triangle_cases += 1;
    }

    Ok(HomExtension {
        tensor_module,
        iota,
        extended,
        forced_scalars: forced,
        triangle_cases,
    })
}
