//! Subcommand dispatch: every check is surfaced as a canonical JSON report
//! on standard output, with the exit code encoding the verdict (0 pass,
//! 1 check failure, 2 usage or construction error).

use clap::{ArgAction, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use mvlab_core::adjunction::{
    check_adjunction, check_naturality, default_family, functor_l_mor, functor_l_obj, homs_among,
    lift_field, non_equivalence_witness, AdjunctionReport, Family, LinearMap, LinearSpace,
    NonEquivalenceReport, SquareCheck,
};
use mvlab_core::{
    check_axioms, check_bimorphism, check_module_axioms, hom_enumerate, ideals_finite,
    is_mv_domain, is_pmv_plus, semisimple_evidence, tensor_module_structure, tensor_ss,
    unit_embedding, Budget, DomainReport, LawReport, ModuleHom, MvError, MvHom, MvModule,
    PmvAlgebra, Verdict,
};

use crate::expr::{elaborate, parse_expr, Elaborated, ExprError};

/// Exact-arithmetic workbench for MV-algebras, their modules, tensor
/// products, and the lifting adjunction on rational carriers.
#[derive(Debug, Parser)]
#[command(name = "mvlab", version, about)]
pub struct Cli {
    /// Seed for the deterministic samplers.
    #[arg(long, global = true, env = "MVLAB_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Enumeration order for infinite carriers (Farey order).
    #[arg(long, global = true, default_value_t = 4)]
    pub order: u32,
    /// Sampled tuples per law on infinite carriers.
    #[arg(long, global = true, default_value_t = 1000)]
    pub samples: usize,
    /// Largest carrier checked exhaustively.
    #[arg(long, global = true, default_value_t = 200)]
    pub exhaustive_limit: usize,
    /// Emit canonical JSON (default); `--json=false` prints a summary line.
    #[arg(
        long,
        global = true,
        default_value_t = true,
        action = ArgAction::Set,
        num_args = 0..=1,
        default_missing_value = "true"
    )]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the MV axioms on a carrier.
    CheckAxioms { expr: String },
    /// Enumerate the ideals of a finite carrier and compute its radical.
    Radical { expr: String },
    /// Check the MV-domain quasi-identity on a PMV carrier.
    IsDomain { expr: String },
    /// Check the no-nilpotents quasi-identity on a PMV carrier.
    IsPmvPlus { expr: String },
    /// Compute the semisimple tensor product and check its bimorphism.
    Tensor { left: String, right: String },
    /// Validate a module expression and run the module-law suite.
    ModuleCheck { expr: String },
    /// Build and validate the unit embedding of a module's scalars.
    EmbedUnit { expr: String },
    /// Lift a module to its linear space over the quotient field.
    Lift { expr: String },
    /// Lift every module homomorphism between two carriers ("A -> B").
    LiftHom {
        spec: String,
        /// Scalar carrier the modules live over.
        #[arg(long, default_value = "pmv(boolean)")]
        scalars: String,
    },
    /// Run the adjunction suite on an instance family.
    AdjointCheck {
        /// `default` or a path to a JSON family file.
        #[arg(long, default_value = "default")]
        family: String,
    },
    /// Reproduce the non-equivalence witness instance.
    WitnessNonequivalence,
}

/// A finished command: canonical JSON, a one-line summary, and the verdict.
pub struct CommandOutput {
    pub json: String,
    pub plain: String,
    pub pass: bool,
}

fn output<T: Serialize>(report: &T, label: &str, pass: bool) -> Result<CommandOutput, ExprError> {
    let json = serde_json::to_string(report).map_err(|e| ExprError {
        pos: None,
        msg: format!("serialization failed: {e}"),
    })?;
    Ok(CommandOutput {
        json,
        plain: format!("{label}: {}", if pass { "pass" } else { "fail" }),
        pass,
    })
}

#[derive(Serialize)]
struct RadicalOutput {
    instance: String,
    seed: u64,
    ideal_count: usize,
    maximal: Vec<Vec<String>>,
    radical: Vec<String>,
    semisimple: bool,
    evidence: String,
    verdict: Verdict,
}

#[derive(Serialize)]
struct TensorOutput {
    left: String,
    right: String,
    result: String,
    iota_left: MvHom,
    iota_right: MvHom,
    bimorphism: LawReport,
    module_structure: Option<LawReport>,
    verdict: Verdict,
}

#[derive(Serialize)]
struct ModuleCheckOutput {
    instance: String,
    axioms: LawReport,
    no_zero_divisors: DomainReport,
    verdict: Verdict,
}

#[derive(Serialize)]
struct EmbedOutput {
    instance: String,
    embedding: MvHom,
    injective: bool,
    verdict: Verdict,
}

#[derive(Serialize)]
struct LiftOutput {
    module: String,
    scalars: String,
    ring: String,
    field: String,
    space: LinearSpace,
    verdict: Verdict,
}

#[derive(Serialize)]
struct LiftedHomEntry {
    hom: MvHom,
    lifted: LinearMap,
    naturality: SquareCheck,
}

#[derive(Serialize)]
struct LiftHomOutput {
    source: String,
    target: String,
    scalars: String,
    count: usize,
    homs: Vec<LiftedHomEntry>,
    verdict: Verdict,
}

/// JSON family file for `adjoint-check --family <path>`.
#[derive(Deserialize)]
struct FamilySpec {
    scalars: String,
    carriers: Vec<String>,
}

fn parse_elaborate(text: &str) -> Result<Elaborated, ExprError> {
    elaborate(&parse_expr(text)?)
}

fn parse_pmv(text: &str) -> Result<PmvAlgebra, ExprError> {
    parse_elaborate(text)?.into_pmv()
}

fn parse_module(text: &str) -> Result<MvModule, ExprError> {
    parse_elaborate(text)?.into_module()
}

fn domain_output(report: DomainReport, label: &str) -> Result<CommandOutput, ExprError> {
    let pass = report.verdict;
    output(&report, label, pass)
}

fn family_from_spec(path: &str, budget: &Budget) -> Result<Family, ExprError> {
    let text = std::fs::read_to_string(path).map_err(|e| ExprError {
        pos: None,
        msg: format!("cannot read family file {path}: {e}"),
    })?;
    let spec: FamilySpec = serde_json::from_str(&text).map_err(|e| ExprError {
        pos: None,
        msg: format!("invalid family file {path}: {e}"),
    })?;
    let scalars = parse_pmv(&spec.scalars)?;
    let modules = spec
        .carriers
        .iter()
        .map(|c| {
            let algebra = match parse_elaborate(c)? {
                Elaborated::Algebra(a) => a,
                Elaborated::Pmv(p) => p.base().clone(),
                Elaborated::Module(m) => m.carrier().clone(),
            };
            Ok(MvModule::over(scalars.clone(), algebra)?)
        })
        .collect::<Result<Vec<_>, ExprError>>()?;
    Ok(Family {
        name: path.to_string(),
        homs: homs_among(&modules, budget),
        extra: Vec::new(),
    })
}

/// Runs one parsed command against a budget.
pub fn dispatch(cli: &Cli) -> Result<CommandOutput, ExprError> {
    let budget = Budget {
        seed: cli.seed,
        order: cli.order,
        samples: cli.samples,
        exhaustive_limit: cli.exhaustive_limit,
    };
    match &cli.command {
        Command::CheckAxioms { expr } => {
            let carrier = parse_elaborate(expr)?.algebra().clone();
            let report = check_axioms(&carrier, &budget);
            let pass = report.passed();
            output(&report, "check-axioms", pass)
        }
        Command::Radical { expr } => {
            let carrier = parse_elaborate(expr)?.algebra().clone();
            let ideals = ideals_finite(&carrier)?;
            let radical = mvlab_core::radical(&carrier)?;
            let render =
                |i: &mvlab_core::Ideal| i.elements.iter().map(|e| e.to_string()).collect();
            let report = RadicalOutput {
                instance: carrier.to_string(),
                seed: budget.seed,
                ideal_count: ideals.len(),
                maximal: ideals.iter().filter(|i| i.maximal).map(render).collect(),
                radical: radical.elements.iter().map(|e| e.to_string()).collect(),
                semisimple: radical.is_zero(),
                evidence: semisimple_evidence(&carrier),
                verdict: Verdict::Pass,
            };
            output(&report, "radical", true)
        }
        Command::IsDomain { expr } => {
            let pmv = parse_pmv(expr)?;
            domain_output(is_mv_domain(&pmv, &budget), "is-domain")
        }
        Command::IsPmvPlus { expr } => {
            let pmv = parse_pmv(expr)?;
            domain_output(is_pmv_plus(&pmv, &budget), "is-pmv-plus")
        }
        Command::Tensor { left, right } => {
            let a = parse_elaborate(left)?.algebra().clone();
            let b = parse_elaborate(right)?.algebra().clone();
            let t = tensor_ss(&a, &b)?;
            let bimorphism = check_bimorphism(&t, &budget);
            let iota_left = t.iota_embedding(mvlab_core::Side::Left, &budget)?;
            let iota_right = t.iota_embedding(mvlab_core::Side::Right, &budget)?;
            // When the left factor carries a ring product, the tensor is a
            // module over it; validate that structure too.
            let module_structure = PmvAlgebra::from_algebra(a.clone())
                .ok()
                .map(|p| -> Result<LawReport, MvError> {
                    Ok(check_module_axioms(&tensor_module_structure(&p, &b)?, &budget))
                })
                .transpose()?;
            let pass = bimorphism.passed()
                && module_structure.as_ref().map_or(true, LawReport::passed);
            let report = TensorOutput {
                left: a.to_string(),
                right: b.to_string(),
                result: t.result.to_string(),
                iota_left,
                iota_right,
                bimorphism,
                module_structure,
                verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            };
            output(&report, "tensor", pass)
        }
        Command::ModuleCheck { expr } => {
            let module = parse_module(expr)?;
            let axioms = check_module_axioms(&module, &budget);
            let nzd = mvlab_core::check_no_zero_divisors(&module, &budget);
            // The lemma only binds when its hypothesis holds; the module
            // verdict fails on a zero divisor only in that case.
            let pass = axioms.passed() && (nzd.verdict || nzd.hypothesis_met != Some(true));
            let report = ModuleCheckOutput {
                instance: module.to_string(),
                axioms,
                no_zero_divisors: nzd,
                verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            };
            output(&report, "module-check", pass)
        }
        Command::EmbedUnit { expr } => {
            let module = parse_module(expr)?;
            let embedding = unit_embedding(&module, &budget)?;
            let injective = embedding.is_injective_on(budget.order);
            let report = EmbedOutput {
                instance: module.to_string(),
                embedding,
                injective,
                verdict: if injective { Verdict::Pass } else { Verdict::Fail },
            };
            output(&report, "embed-unit", injective)
        }
        Command::Lift { expr } => {
            let module = parse_module(expr)?;
            let space = functor_l_obj(&module)?;
            let field = lift_field(&module)?;
            let report = LiftOutput {
                module: module.carrier().to_string(),
                scalars: module.scalars().to_string(),
                ring: module.scalars().ring_descriptor()[0].to_string(),
                field: field.to_string(),
                space,
                verdict: Verdict::Pass,
            };
            output(&report, "lift", true)
        }
        Command::LiftHom { spec, scalars } => {
            let (left, right) = spec.split_once("->").ok_or_else(|| ExprError {
                pos: None,
                msg: "hom spec must be '<expr> -> <expr>'".into(),
            })?;
            let scalars = parse_pmv(scalars)?;
            let a = MvModule::over(scalars.clone(), parse_elaborate(left.trim())?.algebra().clone())?;
            let b =
                MvModule::over(scalars.clone(), parse_elaborate(right.trim())?.algebra().clone())?;
            let mut homs = Vec::new();
            for hom in hom_enumerate(a.carrier(), b.carrier(), &budget) {
                let module_hom = ModuleHom::validated(&a, &b, hom, &budget)?;
                let lifted = functor_l_mor(&module_hom, &budget)?;
                let naturality = check_naturality(&module_hom, &budget)?;
                homs.push(LiftedHomEntry {
                    hom: module_hom.hom,
                    lifted,
                    naturality,
                });
            }
            let pass = homs.iter().all(|h| h.naturality.pass);
            let report = LiftHomOutput {
                source: a.carrier().to_string(),
                target: b.carrier().to_string(),
                scalars: scalars.to_string(),
                count: homs.len(),
                homs,
                verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            };
            output(&report, "lift-hom", pass)
        }
        Command::AdjointCheck { family } => {
            let family = if family == "default" {
                default_family(&budget)?
            } else {
                family_from_spec(family, &budget)?
            };
            let report: AdjunctionReport = check_adjunction(&family, &budget)?;
            let pass = report.passed();
            output(&report, "adjoint-check", pass)
        }
        Command::WitnessNonequivalence => {
            let report: NonEquivalenceReport = non_equivalence_witness(&budget)?;
            // The expected outcome *is* non-isomorphism.
            let pass = !report.isomorphic;
            output(&report, "witness-nonequivalence", pass)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (String, bool) {
        let cli = Cli::try_parse_from(args).expect("argv parses");
        let out = dispatch(&cli).expect("command runs");
        (out.json, out.pass)
    }

    #[test]
    fn check_axioms_passes_on_chains() {
        let (json, pass) = run(&["mvlab", "check-axioms", "chain(6)"]);
        assert!(pass);
        assert!(json.contains("\"verdict\":\"pass\""));
        assert!(json.contains("\"instance\":\"chain(6)\""));
    }

    #[test]
    fn tensor_of_chains_reports_the_product_chain() {
        let (json, pass) = run(&["mvlab", "tensor", "chain(2)", "chain(3)"]);
        assert!(pass);
        assert!(json.contains("\"result\":\"chain(6)\""));
    }

    #[test]
    fn is_domain_fails_on_the_boolean_square() {
        let cli =
            Cli::try_parse_from(["mvlab", "is-domain", "pmv(prod(boolean,boolean))"]).unwrap();
        let out = dispatch(&cli).unwrap();
        assert!(!out.pass);
        assert!(out.json.contains("\"verdict\":false"));
        assert!(out.json.contains("(1,0)"));
        assert!(out.json.contains("(0,1)"));
    }

    #[test]
    fn witness_nonequivalence_passes() {
        let (json, pass) = run(&["mvlab", "witness-nonequivalence"]);
        assert!(pass);
        assert!(json.contains("\"verdict\":\"not_isomorphic\""));
        assert!(json.contains("\"field\":\"rationals\""));
    }

    #[test]
    fn radical_of_a_chain() {
        let (json, pass) = run(&["mvlab", "radical", "chain(6)"]);
        assert!(pass);
        assert!(json.contains("\"ideal_count\":2"));
        assert!(json.contains("\"semisimple\":true"));
    }

    #[test]
    fn seed_flag_is_threaded_through_reports() {
        let (json, _) = run(&["mvlab", "--seed", "7", "check-axioms", "interval_q"]);
        assert!(json.contains("\"seed\":7"));
    }

    #[test]
    fn lift_reports_the_rational_space() {
        let (json, pass) = run(&[
            "mvlab",
            "lift",
            "module(scalars=pmv(boolean),group=cyclic(1/2),unit=1)",
        ]);
        assert!(pass);
        assert!(json.contains("\"space\":\"(Q,1)\""));
        assert!(json.contains("\"field\":\"rationals\""));
    }

    #[test]
    fn lift_hom_lifts_the_inclusion() {
        let (json, pass) = run(&["mvlab", "lift-hom", "chain(2) -> chain(6)"]);
        assert!(pass);
        assert!(json.contains("\"count\":1"));
    }

    #[test]
    fn bad_expressions_are_errors_not_reports() {
        let cli = Cli::try_parse_from(["mvlab", "check-axioms", "chain(x)"]).unwrap();
        assert!(dispatch(&cli).is_err());
        let cli = Cli::try_parse_from(["mvlab", "is-domain", "pmv(chain(2))"]).unwrap();
        assert!(dispatch(&cli).is_err());
    }
}
