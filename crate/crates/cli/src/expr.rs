//! The algebra-description language: parser, printer, and elaboration into
//! validated carriers.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr     := chain(INT) | boolean | interval_q
//!           | gamma(group, rational)
//!           | prod(expr, ..., expr)
//!           | pmv(expr)
//!           | module(scalars=expr, group=group, unit=unit)
//! group    := cyclic(rational) | integers | rationals | localized(INT)
//!           | scaled(rational, group) | prod(group, ..., group)
//! unit     := rational | (rational, ..., rational)
//! rational := INT | INT/INT          (optionally negative)
//! ```
//!
//! Printing is canonical (lowercase, no spaces) and `parse . print` is the
//! identity on syntax trees.

use std::fmt;

use mvlab_core::{
    primes_of, MvAlgebra, MvError, MvModule, PmvAlgebra, Rank1Group, Rational, RationalSubring,
};

/// Group-expression syntax tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupExpr {
    Cyclic(Rational),
    Integers,
    Rationals,
    Localized(u64),
    Scaled(Rational, Box<GroupExpr>),
    Prod(Vec<GroupExpr>),
}

/// Algebra-expression syntax tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraExpr {
    Chain(u64),
    Boolean,
    IntervalQ,
    Gamma(GroupExpr, Rational),
    /// A bare group/ring literal used as a carrier: the interval at unit 1.
    Group(GroupExpr),
    Prod(Vec<AlgebraExpr>),
    Pmv(Box<AlgebraExpr>),
    Module {
        scalars: Box<AlgebraExpr>,
        group: GroupExpr,
        unit: Vec<Rational>,
    },
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Cyclic(q) => write!(f, "cyclic({q})"),
            GroupExpr::Integers => write!(f, "integers"),
            GroupExpr::Rationals => write!(f, "rationals"),
            GroupExpr::Localized(n) => write!(f, "localized({n})"),
            GroupExpr::Scaled(c, inner) => write!(f, "scaled({c},{inner})"),
            GroupExpr::Prod(items) => {
                write!(f, "prod(")?;
                for (i, g) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for AlgebraExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraExpr::Chain(d) => write!(f, "chain({d})"),
            AlgebraExpr::Boolean => write!(f, "boolean"),
            AlgebraExpr::IntervalQ => write!(f, "interval_q"),
            AlgebraExpr::Gamma(g, u) => write!(f, "gamma({g},{u})"),
            AlgebraExpr::Group(g) => write!(f, "{g}"),
            AlgebraExpr::Prod(items) => {
                write!(f, "prod(")?;
                for (i, e) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
            AlgebraExpr::Pmv(inner) => write!(f, "pmv({inner})"),
            AlgebraExpr::Module {
                scalars,
                group,
                unit,
            } => {
                write!(f, "module(scalars={scalars},group={group},unit=")?;
                if unit.len() == 1 {
                    write!(f, "{}", unit[0])?;
                } else {
                    write!(f, "(")?;
                    for (i, u) in unit.iter().enumerate() {
                        if i > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{u}")?;
                    }
                    write!(f, ")")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Parse or elaboration failure, with byte position for syntax errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError {
    pub pos: Option<usize>,
    pub msg: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pos {
            Some(p) => write!(f, "syntax error at byte {p}: {}", self.msg),
            None => write!(f, "elaboration error: {}", self.msg),
        }
    }
}

impl std::error::Error for ExprError {}

impl From<MvError> for ExprError {
    fn from(e: MvError) -> Self {
        ExprError {
            pos: None,
            msg: e.to_string(),
        }
    }
}

struct Parser<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            input,
            bytes: input.as_bytes(),
            pos: 0,
        }
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError {
            pos: Some(self.pos),
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected '{}'", c as char))
        }
    }

    fn ident(&mut self) -> Result<String, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_lowercase()
                || self.bytes[self.pos] == b'_'
                || (self.pos > start && self.bytes[self.pos].is_ascii_digit()))
        {
            self.pos += 1;
        }
        if self.pos == start {
            return self.fail("expected an identifier");
        }
        Ok(self.input[start..self.pos].to_string())
    }

    fn integer(&mut self) -> Result<i64, ExprError> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return self.fail("expected an integer");
        }
        self.input[start..self.pos]
            .parse()
            .or_else(|_| self.fail("integer literal out of range"))
    }

    fn rational(&mut self) -> Result<Rational, ExprError> {
        let numer = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let denom = self.integer()?;
            if denom <= 0 {
                return self.fail("denominator must be positive");
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    fn nonneg_int(&mut self) -> Result<u64, ExprError> {
        let n = self.integer()?;
        if n < 0 {
            return self.fail("expected a nonnegative integer");
        }
        Ok(n as u64)
    }

    fn group(&mut self) -> Result<GroupExpr, ExprError> {
        let name = self.ident()?;
        match name.as_str() {
            "cyclic" => {
                self.expect(b'(')?;
                let q = self.rational()?;
                self.expect(b')')?;
                Ok(GroupExpr::Cyclic(q))
            }
            "integers" => Ok(GroupExpr::Integers),
            "rationals" => Ok(GroupExpr::Rationals),
            "localized" => {
                self.expect(b'(')?;
                let n = self.nonneg_int()?;
                self.expect(b')')?;
                Ok(GroupExpr::Localized(n))
            }
            "scaled" => {
                self.expect(b'(')?;
                let c = self.rational()?;
                self.expect(b',')?;
                let inner = self.group()?;
                self.expect(b')')?;
                Ok(GroupExpr::Scaled(c, Box::new(inner)))
            }
            "prod" => {
                self.expect(b'(')?;
                let mut items = vec![self.group()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    items.push(self.group()?);
                }
                self.expect(b')')?;
                Ok(GroupExpr::Prod(items))
            }
            other => self.fail(format!("unknown group literal '{other}'")),
        }
    }

    fn keyword_arg(&mut self, keyword: &str) -> Result<(), ExprError> {
        let name = self.ident()?;
        if name != keyword {
            return self.fail(format!("expected '{keyword}='"));
        }
        self.expect(b'=')
    }

    fn unit(&mut self) -> Result<Vec<Rational>, ExprError> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let mut items = vec![self.rational()?];
            while self.peek() == Some(b',') {
                self.pos += 1;
                items.push(self.rational()?);
            }
            self.expect(b')')?;
            Ok(items)
        } else {
            Ok(vec![self.rational()?])
        }
    }

    fn algebra(&mut self) -> Result<AlgebraExpr, ExprError> {
        let name = self.ident()?;
        match name.as_str() {
            "chain" => {
                self.expect(b'(')?;
                let d = self.nonneg_int()?;
                self.expect(b')')?;
                Ok(AlgebraExpr::Chain(d))
            }
            "boolean" => Ok(AlgebraExpr::Boolean),
            "interval_q" => Ok(AlgebraExpr::IntervalQ),
            "gamma" => {
                self.expect(b'(')?;
                let g = self.group()?;
                self.expect(b',')?;
                let u = self.rational()?;
                self.expect(b')')?;
                Ok(AlgebraExpr::Gamma(g, u))
            }
            "prod" => {
                self.expect(b'(')?;
                let mut items = vec![self.algebra()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    items.push(self.algebra()?);
                }
                self.expect(b')')?;
                Ok(AlgebraExpr::Prod(items))
            }
            "pmv" => {
                self.expect(b'(')?;
                let inner = self.algebra()?;
                self.expect(b')')?;
                Ok(AlgebraExpr::Pmv(Box::new(inner)))
            }
            "module" => {
                self.expect(b'(')?;
                self.keyword_arg("scalars")?;
                let scalars = self.algebra()?;
                self.expect(b',')?;
                self.keyword_arg("group")?;
                let group = self.group()?;
                self.expect(b',')?;
                self.keyword_arg("unit")?;
                let unit = self.unit()?;
                self.expect(b')')?;
                Ok(AlgebraExpr::Module {
                    scalars: Box::new(scalars),
                    group,
                    unit,
                })
            }
            // Group and ring literals double as carriers: the interval
            // algebra at unit 1.
            "cyclic" | "integers" | "rationals" | "localized" | "scaled" => {
                self.pos -= name.len();
                Ok(AlgebraExpr::Group(self.group()?))
            }
            other => self.fail(format!("unknown carrier '{other}'")),
        }
    }
}

/// Parses a complete expression; trailing input is an error.
pub fn parse_expr(text: &str) -> Result<AlgebraExpr, ExprError> {
    let mut parser = Parser::new(text);
    let expr = parser.algebra()?;
    if parser.peek().is_some() {
        return parser.fail("unexpected trailing input");
    }
    Ok(expr)
}

/// A fully elaborated expression.
#[derive(Debug, Clone)]
pub enum Elaborated {
    Algebra(MvAlgebra),
    Pmv(PmvAlgebra),
    Module(MvModule),
}

fn group_factors(group: &GroupExpr) -> Result<Vec<Rank1Group>, ExprError> {
    match group {
        GroupExpr::Cyclic(step) => {
            if !step.is_positive() {
                return Err(ExprError {
                    pos: None,
                    msg: format!("cyclic step must be positive, got {step}"),
                });
            }
            Ok(vec![Rank1Group::cyclic(*step)])
        }
        GroupExpr::Integers => Ok(vec![Rank1Group::integers()]),
        GroupExpr::Rationals => Ok(vec![Rank1Group::all()]),
        GroupExpr::Localized(n) => {
            if *n == 0 {
                return Err(ExprError {
                    pos: None,
                    msg: "localized(0) has no prime factors to invert".into(),
                });
            }
            Ok(vec![RationalSubring::localized(
                primes_of(*n).into_iter().collect(),
            )
            .additive_group()])
        }
        GroupExpr::Scaled(c, inner) => {
            if !c.is_positive() {
                return Err(ExprError {
                    pos: None,
                    msg: format!("scale must be positive, got {c}"),
                });
            }
            let inner = group_factors(inner)?;
            if inner.len() != 1 {
                return Err(ExprError {
                    pos: None,
                    msg: "scaled(...) applies to a rank-1 group".into(),
                });
            }
            Ok(vec![inner[0].scaled_by(*c)])
        }
        GroupExpr::Prod(items) => {
            let mut out = Vec::new();
            for g in items {
                out.extend(group_factors(g)?);
            }
            Ok(out)
        }
    }
}

fn elaborate_algebra(expr: &AlgebraExpr) -> Result<MvAlgebra, ExprError> {
    match expr {
        AlgebraExpr::Chain(d) => {
            if *d == 0 {
                return Err(ExprError {
                    pos: None,
                    msg: "chain(0) is empty; the denominator must be positive".into(),
                });
            }
            Ok(MvAlgebra::chain(*d))
        }
        AlgebraExpr::Boolean => Ok(MvAlgebra::boolean()),
        AlgebraExpr::IntervalQ => Ok(MvAlgebra::interval_q()),
        AlgebraExpr::Gamma(group, unit) => {
            let factors = group_factors(group)?;
            let algebras = factors
                .into_iter()
                .map(|g| MvAlgebra::gamma(g, *unit))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(MvAlgebra::product(algebras))
        }
        AlgebraExpr::Group(group) => {
            let factors = group_factors(group)?;
            let algebras = factors
                .into_iter()
                .map(|g| MvAlgebra::gamma(g, Rational::ONE))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(MvAlgebra::product(algebras))
        }
        AlgebraExpr::Prod(items) => {
            let algebras = items
                .iter()
                .map(elaborate_algebra)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(MvAlgebra::product(algebras))
        }
        AlgebraExpr::Pmv(_) | AlgebraExpr::Module { .. } => Err(ExprError {
            pos: None,
            msg: format!("expected a plain algebra, got {expr}"),
        }),
    }
}

/// Elaborates a syntax tree into a validated carrier.
pub fn elaborate(expr: &AlgebraExpr) -> Result<Elaborated, ExprError> {
    match expr {
        AlgebraExpr::Pmv(inner) => {
            let base = elaborate_algebra(inner)?;
            Ok(Elaborated::Pmv(PmvAlgebra::from_algebra(base)?))
        }
        AlgebraExpr::Module {
            scalars,
            group,
            unit,
        } => {
            let scalars = match elaborate(scalars)? {
                Elaborated::Pmv(p) => p,
                Elaborated::Algebra(a) => PmvAlgebra::from_algebra(a)?,
                Elaborated::Module(_) => {
                    return Err(ExprError {
                        pos: None,
                        msg: "module scalars cannot themselves be a module".into(),
                    })
                }
            };
            let groups = group_factors(group)?;
            let units: Vec<Rational> = if unit.len() == 1 {
                vec![unit[0]; groups.len()]
            } else if unit.len() == groups.len() {
                unit.clone()
            } else {
                return Err(ExprError {
                    pos: None,
                    msg: format!(
                        "unit tuple has {} components for {} group factors",
                        unit.len(),
                        groups.len()
                    ),
                });
            };
            let carrier = MvAlgebra::product(
                groups
                    .into_iter()
                    .zip(units)
                    .map(|(g, u)| MvAlgebra::gamma(g, u))
                    .collect::<Result<Vec<_>, _>>()?,
            );
            Ok(Elaborated::Module(MvModule::over(scalars, carrier)?))
        }
        other => Ok(Elaborated::Algebra(elaborate_algebra(other)?)),
    }
}

impl Elaborated {
    /// The underlying MV-algebra, for commands that work on any carrier.
    pub fn algebra(&self) -> &MvAlgebra {
        match self {
            Elaborated::Algebra(a) => a,
            Elaborated::Pmv(p) => p.base(),
            Elaborated::Module(m) => m.carrier(),
        }
    }

    /// Coerces to a PMV-algebra, enriching a plain carrier when possible.
    pub fn into_pmv(self) -> Result<PmvAlgebra, ExprError> {
        match self {
            Elaborated::Pmv(p) => Ok(p),
            Elaborated::Algebra(a) => Ok(PmvAlgebra::from_algebra(a)?),
            Elaborated::Module(_) => Err(ExprError {
                pos: None,
                msg: "expected a PMV-algebra, got a module".into(),
            }),
        }
    }

    pub fn into_module(self) -> Result<MvModule, ExprError> {
        match self {
            Elaborated::Module(m) => Ok(m),
            other => Err(ExprError {
                pos: None,
                msg: format!(
                    "expected module(scalars=...,group=...,unit=...), got {}",
                    other.algebra()
                ),
            }),
        }
    }
}
