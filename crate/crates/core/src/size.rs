//! Three-valued size reasoning over symbolic domains.
//!
//! Leaves are declared `set` or `W`; expressions combine them and every
//! derived tag comes with the list of rule applications that produced it.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// A point of the knowledge order `Set, W ⊑ AtMostW ⊑ Unknown`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SizeTag {
    Set,
    W,
    /// Either a set or in bijection with W.
    AtMostW,
    Unknown,
}

impl SizeTag {
    /// `self ⊑ other` in the knowledge order.
    pub fn refines(self, other: SizeTag) -> bool {
        use SizeTag::*;
        self == other || other == Unknown || (other == AtMostW && matches!(self, Set | W))
    }

    /// Greatest lower bound; `None` for the incompatible pair Set, W.
    pub fn meet(self, other: SizeTag) -> Option<SizeTag> {
        if self.refines(other) {
            Some(self)
        } else if other.refines(self) {
            Some(other)
        } else {
            None
        }
    }
}

impl fmt::Display for SizeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SizeTag::Set => "Set",
            SizeTag::W => "W",
            SizeTag::AtMostW => "AtMostW",
            SizeTag::Unknown => "Unknown",
        })
    }
}

/// A tag plus the one negative fact the calculus can carry: "not a set".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Outcome {
    pub tag: SizeTag,
    pub not_set: bool,
}

impl Outcome {
    pub const fn of(tag: SizeTag) -> Outcome {
        Outcome { tag, not_set: false }
    }

    /// Knowledge order extended by the not-Set flag.
    pub fn refines(self, other: Outcome) -> bool {
        self.tag.refines(other.tag) && (self.not_set || !other.not_set || self.tag == SizeTag::W)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag)?;
        if self.not_set && self.tag != SizeTag::W {
            f.write_str(" (not Set)")?;
        }
        Ok(())
    }
}

/// Declared size of a base domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseSize {
    Set,
    W,
}

impl BaseSize {
    pub fn tag(self) -> SizeTag {
        match self {
            BaseSize::Set => SizeTag::Set,
            BaseSize::W => SizeTag::W,
        }
    }
}

impl fmt::Display for BaseSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseSize::Set => "set",
            BaseSize::W => "W",
        })
    }
}

/// User-supplied evidence on a subdomain node. Never inferred.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Evidence {
    None,
    Bounded,
    Cofinal,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SizeExpr {
    Name(String),
    Product(Box<SizeExpr>, Box<SizeExpr>),
    /// Union of fibers indexed by `index`; `cofinal` declares that the image is cofinal.
    Union {
        index: Box<SizeExpr>,
        fiber: Box<SizeExpr>,
        cofinal: bool,
    },
    FnSpace(Box<SizeExpr>, Box<SizeExpr>),
    Powerset(Box<SizeExpr>),
    Subdomain(Box<SizeExpr>, Evidence),
    Quotient(Box<SizeExpr>),
    /// Total morphism domain of a category whose objects have the given size.
    Morph(Box<SizeExpr>),
}

impl SizeExpr {
    pub fn name(n: &str) -> SizeExpr {
        SizeExpr::Name(n.to_string())
    }

    pub fn names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            SizeExpr::Name(n) => out.push(n),
            SizeExpr::Product(a, b) | SizeExpr::FnSpace(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            SizeExpr::Union { index, fiber, .. } => {
                index.collect_names(out);
                fiber.collect_names(out);
            }
            SizeExpr::Powerset(a) | SizeExpr::Subdomain(a, _) | SizeExpr::Quotient(a) | SizeExpr::Morph(a) => {
                a.collect_names(out)
            }
        }
    }
}

impl fmt::Display for SizeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SizeExpr::Name(n) => f.write_str(n),
            SizeExpr::Product(a, b) => write!(f, "product({a},{b})"),
            SizeExpr::Union { index, fiber, cofinal } => {
                write!(f, "union({index};{fiber})")?;
                if *cofinal {
                    f.write_str(" cofinal")?;
                }
                Ok(())
            }
            SizeExpr::FnSpace(a, b) => write!(f, "fnspace({a},{b})"),
            SizeExpr::Powerset(a) => write!(f, "powerset({a})"),
            SizeExpr::Subdomain(a, ev) => {
                write!(f, "subdomain({a})")?;
                match ev {
                    Evidence::None => Ok(()),
                    Evidence::Bounded => f.write_str(" bounded"),
                    Evidence::Cofinal => f.write_str(" cofinal"),
                }
            }
            SizeExpr::Quotient(a) => write!(f, "quotient({a})"),
            SizeExpr::Morph(a) => write!(f, "morph({a})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Statement {
    Declare { name: String, size: BaseSize },
    Let { name: String, expr: SizeExpr },
    Inject { from: String, to: String },
    Query { name: String },
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Declare { name, size } => write!(f, "let {name} = {size}"),
            Statement::Let { name, expr } => write!(f, "let {name} = {expr}"),
            Statement::Inject { from, to } => write!(f, "inject {from} -> {to}"),
            Statement::Query { name } => write!(f, "size {name}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SizeScript {
    pub statements: Vec<Statement>,
}

pub const RESERVED_NAMES: [&str; 2] = ["set", "W"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SizeError {
    #[error("contradiction for `{name}`: `{}` conflicts with `{}`", .facts.0, .facts.1)]
    Contradiction { name: String, facts: (String, String) },
    #[error("`{0}` is not declared")]
    Undefined(String),
    #[error("`{0}` is declared twice")]
    Duplicate(String),
    #[error("`{0}` is a reserved name")]
    Reserved(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Given,
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
    R11,
    R12,
    R13,
    R14,
    Default,
}

impl Rule {
    pub fn citation(self) -> &'static str {
        match self {
            Rule::Given => "declared",
            Rule::R1 => "product of sets",
            Rule::R2 => "set-indexed union of sets",
            Rule::R3 => "powerset of a set",
            Rule::R4 => "subdomain of a set",
            Rule::R5 => "subdomain of W, size undecidable",
            Rule::R6 => "quotient of a set",
            Rule::R7 => "W-indexed union of sets with cofinal image",
            Rule::R8 => "functions from a set into W",
            Rule::R9 => "morphisms sized like objects",
            Rule::R10 => "subdomain of a W-sized domain",
            Rule::R11 => "bounded subdomain",
            Rule::R12 => "cofinal subdomain of W",
            Rule::R13 => "injections both ways with W",
            Rule::R14 => "injection from W",
            Rule::Default => "no rule applies",
        }
    }

    /// The rule as a function of its input tags; `None` when it does not apply.
    pub fn conclude(self, inputs: &[Outcome]) -> Option<Outcome> {
        use SizeTag::*;
        let tags: Vec<SizeTag> = inputs.iter().map(|o| o.tag).collect();
        let tag = match (self, tags.as_slice()) {
            (Rule::R1 | Rule::R2, [Set, Set]) => Set,
            (Rule::R3 | Rule::R4 | Rule::R6, [Set]) => Set,
            (Rule::R5, [W]) => AtMostW,
            (Rule::R7, [W, Set]) => W,
            (Rule::R8, [Set, W]) => W,
            (Rule::R9, [t @ (Set | W)]) => *t,
            (Rule::R10, [W | AtMostW]) => AtMostW,
            (Rule::R11, [W | AtMostW]) => Set,
            (Rule::R12, [W]) => W,
            (Rule::R13, [t, W, W]) => return t.meet(W).map(Outcome::of),
            (Rule::R14, [t, W]) if *t != Set => return Some(Outcome { tag: *t, not_set: true }),
            (Rule::Default, _) => Unknown,
            _ => return None,
        };
        Some(Outcome::of(tag))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Given => f.write_str("given"),
            Rule::Default => f.write_str("default"),
            r => write!(f, "{r:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub subject: String,
    pub inputs: Vec<Outcome>,
    pub output: Outcome,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inputs = if self.inputs.is_empty() {
            "-".to_string()
        } else {
            self.inputs.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(", ")
        };
        write!(
            f,
            "{} {}: {} -> {} ({})",
            self.rule,
            self.subject,
            inputs,
            self.output,
            self.rule.citation()
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RuleTrace {
    pub steps: Vec<Step>,
}

impl RuleTrace {
    pub fn result(&self) -> Option<Outcome> {
        self.steps.last().map(|s| s.output)
    }

    /// Re-derives every step from its inputs alone.
    pub fn replay(&self) -> bool {
        self.steps.iter().all(|s| match s.rule {
            Rule::Given => s.inputs.is_empty() && matches!(s.output.tag, SizeTag::Set | SizeTag::W),
            r => r.conclude(&s.inputs) == Some(s.output),
        })
    }
}

#[derive(Debug, Clone)]
enum Binding {
    Declared(BaseSize),
    Expr(SizeExpr),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Refinement {
    /// Injections `a -> to` and `from -> a` with both ends W.
    BothWays { to: usize, from: usize },
    /// Injection `from -> a` with `from` W.
    FromW { from: usize },
}

/// A script evaluated to its fixpoint.
#[derive(Debug, Clone)]
pub struct Evaluation {
    names: Vec<String>,
    index: HashMap<String, usize>,
    bindings: Vec<Binding>,
    injections: Vec<(usize, usize)>,
    refinements: Vec<Vec<Refinement>>,
    outcomes: Vec<Outcome>,
    queries: Vec<usize>,
}

pub fn evaluate(script: &SizeScript) -> Result<Evaluation, SizeError> {
    let mut ev = Evaluation {
        names: Vec::new(),
        index: HashMap::new(),
        bindings: Vec::new(),
        injections: Vec::new(),
        refinements: Vec::new(),
        outcomes: Vec::new(),
        queries: Vec::new(),
    };
    for st in &script.statements {
        match st {
            Statement::Declare { name, .. } | Statement::Let { name, .. } => {
                if RESERVED_NAMES.contains(&name.as_str()) {
                    return Err(SizeError::Reserved(name.clone()));
                }
                if ev.index.contains_key(name) {
                    return Err(SizeError::Duplicate(name.clone()));
                }
                let binding = match st {
                    Statement::Declare { size, .. } => Binding::Declared(*size),
                    Statement::Let { expr, .. } => {
                        for n in expr.names() {
                            ev.lookup(n)?;
                        }
                        Binding::Expr(expr.clone())
                    }
                    _ => unreachable!(),
                };
                ev.index.insert(name.clone(), ev.names.len());
                ev.names.push(name.clone());
                ev.bindings.push(binding);
            }
            Statement::Inject { from, to } => {
                let pair = (ev.lookup(from)?, ev.lookup(to)?);
                ev.injections.push(pair);
            }
            Statement::Query { name } => {
                let i = ev.lookup(name)?;
                ev.queries.push(i);
            }
        }
    }
    let n = ev.names.len();
    ev.refinements = vec![Vec::new(); n];
    ev.outcomes = vec![Outcome::of(SizeTag::Unknown); n];
    loop {
        for i in 0..n {
            ev.outcomes[i] = ev.derive(i, &mut None)?;
        }
        if !ev.refine() {
            return Ok(ev);
        }
    }
}

impl Evaluation {
    fn lookup(&self, name: &str) -> Result<usize, SizeError> {
        self.index.get(name).copied().ok_or_else(|| SizeError::Undefined(name.to_string()))
    }

    fn is_w(&self, i: usize) -> bool {
        self.outcomes[i].tag == SizeTag::W
    }

    /// Adds newly applicable injection refinements; reports whether any were added.
    fn refine(&mut self) -> bool {
        let mut changed = false;
        for a in 0..self.names.len() {
            let has_both = self.outcomes[a].tag == SizeTag::W
                || self.refinements[a].iter().any(|r| matches!(r, Refinement::BothWays { .. }));
            let into_w = self.injections.iter().find(|&&(x, y)| x == a && self.is_w(y)).map(|p| p.1);
            let from_w = self.injections.iter().find(|&&(x, y)| y == a && self.is_w(x)).map(|p| p.0);
            if let (false, Some(to), Some(from)) = (has_both, into_w, from_w) {
                self.refinements[a].push(Refinement::BothWays { to, from });
                changed = true;
            } else if let (false, Some(from)) = (has_both, from_w) {
                let has_from = self.refinements[a].iter().any(|r| matches!(r, Refinement::FromW { .. }));
                if !has_from && self.outcomes[a].tag != SizeTag::W {
                    self.refinements[a].push(Refinement::FromW { from });
                    changed = true;
                }
            }
        }
        changed
    }

    fn binding_text(&self, i: usize) -> String {
        match &self.bindings[i] {
            Binding::Declared(s) => format!("let {} = {s}", self.names[i]),
            Binding::Expr(e) => format!("let {} = {e}", self.names[i]),
        }
    }

    fn derive(&self, i: usize, trace: &mut Option<(&mut Vec<Step>, &mut Vec<bool>)>) -> Result<Outcome, SizeError> {
        let mut out = match &self.bindings[i] {
            Binding::Declared(size) => {
                let o = Outcome::of(size.tag());
                push(trace, Rule::Given, &self.names[i], vec![], o);
                o
            }
            Binding::Expr(e) => self.eval_expr(e, trace)?,
        };
        for r in &self.refinements[i] {
            let name = &self.names[i];
            match *r {
                Refinement::BothWays { to, from } => {
                    let inputs = vec![out, self.outcomes[to], self.outcomes[from]];
                    let next = Rule::R13.conclude(&inputs).ok_or_else(|| SizeError::Contradiction {
                        name: name.clone(),
                        facts: (
                            self.binding_text(i),
                            format!("inject {name} -> {}; inject {} -> {name}", self.names[to], self.names[from]),
                        ),
                    })?;
                    push(trace, Rule::R13, name, inputs, next);
                    out = next;
                }
                Refinement::FromW { from } => {
                    let inputs = vec![out, self.outcomes[from]];
                    let next = Rule::R14.conclude(&inputs).ok_or_else(|| SizeError::Contradiction {
                        name: name.clone(),
                        facts: (self.binding_text(i), format!("inject {} -> {name}", self.names[from])),
                    })?;
                    push(trace, Rule::R14, name, inputs, next);
                    out = next;
                }
            }
        }
        Ok(out)
    }

    fn eval_expr(&self, e: &SizeExpr, trace: &mut Option<(&mut Vec<Step>, &mut Vec<bool>)>) -> Result<Outcome, SizeError> {
        use SizeTag::*;
        let subject = e.to_string();
        let apply = |trace: &mut Option<(&mut Vec<Step>, &mut Vec<bool>)>, rules: &[Rule], inputs: Vec<Outcome>| {
            let mut result: Option<SizeTag> = None;
            for &r in rules {
                if let Some(o) = r.conclude(&inputs) {
                    push(trace, r, &subject, inputs.clone(), o);
                    result = Some(match result {
                        None => o.tag,
                        Some(t) => t.meet(o.tag).expect("rules at one node never conflict"),
                    });
                }
            }
            match result {
                Some(t) => Outcome::of(t),
                None => {
                    let o = Outcome::of(Unknown);
                    push(trace, Rule::Default, &subject, inputs, o);
                    o
                }
            }
        };
        Ok(match e {
            SizeExpr::Name(n) => {
                let i = self.lookup(n)?;
                if let Some((_, seen)) = trace {
                    if !seen[i] {
                        seen[i] = true;
                        self.derive(i, trace)?;
                    }
                }
                self.outcomes[i]
            }
            SizeExpr::Product(a, b) => {
                let inputs = vec![self.eval_expr(a, trace)?, self.eval_expr(b, trace)?];
                apply(trace, &[Rule::R1], inputs)
            }
            SizeExpr::Union { index, fiber, cofinal } => {
                let inputs = vec![self.eval_expr(index, trace)?, self.eval_expr(fiber, trace)?];
                let rules: &[Rule] = if *cofinal { &[Rule::R2, Rule::R7] } else { &[Rule::R2] };
                apply(trace, rules, inputs)
            }
            SizeExpr::FnSpace(a, b) => {
                let inputs = vec![self.eval_expr(a, trace)?, self.eval_expr(b, trace)?];
                if inputs.iter().all(|o| o.tag == Set) {
                    // functions are a subdomain of the powerset of the product
                    let set = Outcome::of(Set);
                    push(trace, Rule::R1, &format!("product({a},{b})"), inputs, set);
                    push(trace, Rule::R3, &format!("powerset(product({a},{b}))"), vec![set], set);
                    push(trace, Rule::R4, &subject, vec![set], set);
                    set
                } else {
                    apply(trace, &[Rule::R8], inputs)
                }
            }
            SizeExpr::Powerset(a) => {
                let inputs = vec![self.eval_expr(a, trace)?];
                apply(trace, &[Rule::R3], inputs)
            }
            SizeExpr::Subdomain(a, ev) => {
                let inputs = vec![self.eval_expr(a, trace)?];
                let declared_w = match &**a {
                    SizeExpr::Name(n) => matches!(self.bindings[self.lookup(n)?], Binding::Declared(BaseSize::W)),
                    _ => false,
                };
                let mut rules = vec![Rule::R4];
                rules.push(if declared_w { Rule::R5 } else { Rule::R10 });
                match ev {
                    Evidence::None => {}
                    Evidence::Bounded => rules.push(Rule::R11),
                    Evidence::Cofinal => rules.push(Rule::R12),
                }
                apply(trace, &rules, inputs)
            }
            SizeExpr::Quotient(a) => {
                let inputs = vec![self.eval_expr(a, trace)?];
                apply(trace, &[Rule::R6], inputs)
            }
            SizeExpr::Morph(a) => {
                let inputs = vec![self.eval_expr(a, trace)?];
                apply(trace, &[Rule::R9], inputs)
            }
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn outcome(&self, name: &str) -> Option<Outcome> {
        self.index.get(name).map(|&i| self.outcomes[i])
    }

    /// Derivation of a named domain, including everything it refers to.
    pub fn trace(&self, name: &str) -> Option<RuleTrace> {
        let i = *self.index.get(name)?;
        let mut steps = Vec::new();
        let mut seen = vec![false; self.names.len()];
        seen[i] = true;
        self.derive(i, &mut Some((&mut steps, &mut seen)))
            .expect("fixpoint already succeeded");
        Some(RuleTrace { steps })
    }

    /// Size of an ad-hoc expression over the script's names.
    pub fn eval_size(&self, e: &SizeExpr) -> Result<(Outcome, RuleTrace), SizeError> {
        let mut steps = Vec::new();
        let mut seen = vec![false; self.names.len()];
        let o = self.eval_expr(e, &mut Some((&mut steps, &mut seen)))?;
        Ok((o, RuleTrace { steps }))
    }

    /// Query lines, optionally each followed by its trace.
    pub fn render(&self, with_trace: bool) -> String {
        let mut out = String::new();
        for &q in &self.queries {
            let name = &self.names[q];
            out.push_str(&format!("size {name} = {}\n", self.outcomes[q]));
            if with_trace {
                for step in self.trace(name).expect("queried name").steps {
                    out.push_str(&format!("  {step}\n"));
                }
            }
        }
        out
    }
}

fn push(trace: &mut Option<(&mut Vec<Step>, &mut Vec<bool>)>, rule: Rule, subject: &str, inputs: Vec<Outcome>, output: Outcome) {
    if let Some((steps, _)) = trace {
        steps.push(Step {
            rule,
            subject: subject.to_string(),
            inputs,
            output,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn script(lines: &[Statement]) -> SizeScript {
        SizeScript {
            statements: lines.to_vec(),
        }
    }

    fn declare(name: &str, size: BaseSize) -> Statement {
        Statement::Declare {
            name: name.into(),
            size,
        }
    }

    fn bind(name: &str, expr: SizeExpr) -> Statement {
        Statement::Let { name: name.into(), expr }
    }

    fn inject(from: &str, to: &str) -> Statement {
        Statement::Inject {
            from: from.into(),
            to: to.into(),
        }
    }

    fn b(e: SizeExpr) -> Box<SizeExpr> {
        Box::new(e)
    }

    #[test]
    fn lattice() {
        use SizeTag::*;
        assert!(Set.refines(AtMostW) && W.refines(AtMostW) && AtMostW.refines(Unknown));
        assert!(!Set.refines(W) && !W.refines(Set) && !Unknown.refines(AtMostW));
        assert_eq!(Set.meet(W), None);
        assert_eq!(AtMostW.meet(W), Some(W));
        assert_eq!(Unknown.meet(Set), Some(Set));
    }

    #[test]
    fn basic_rules() {
        let s = script(&[
            declare("a", BaseSize::Set),
            declare("w", BaseSize::W),
            bind("p", SizeExpr::Product(b(SizeExpr::name("a")), b(SizeExpr::name("a")))),
            bind("f", SizeExpr::FnSpace(b(SizeExpr::name("a")), b(SizeExpr::name("w")))),
            bind("g", SizeExpr::FnSpace(b(SizeExpr::name("w")), b(SizeExpr::name("a")))),
            bind("sw", SizeExpr::Subdomain(b(SizeExpr::name("w")), Evidence::None)),
            bind("bw", SizeExpr::Subdomain(b(SizeExpr::name("w")), Evidence::Bounded)),
            bind("ff", SizeExpr::FnSpace(b(SizeExpr::name("a")), b(SizeExpr::name("a")))),
        ]);
        let ev = evaluate(&s).unwrap();
        assert_eq!(ev.outcome("p").unwrap().tag, SizeTag::Set);
        assert_eq!(ev.outcome("f").unwrap().tag, SizeTag::W);
        assert_eq!(ev.outcome("g").unwrap().tag, SizeTag::Unknown);
        assert_eq!(ev.outcome("sw").unwrap().tag, SizeTag::AtMostW);
        assert_eq!(ev.outcome("bw").unwrap().tag, SizeTag::Set);
        let t = ev.trace("ff").unwrap();
        let rules: Vec<Rule> = t.steps.iter().map(|s| s.rule).collect();
        assert_eq!(rules, vec![Rule::Given, Rule::R1, Rule::R3, Rule::R4]);
        for n in ev.names() {
            let t = ev.trace(n).unwrap();
            assert!(t.replay());
            assert_eq!(t.result(), ev.outcome(n));
        }
    }

    #[test]
    fn injections() {
        let both = script(&[
            declare("w", BaseSize::W),
            bind("a", SizeExpr::Subdomain(b(SizeExpr::name("w")), Evidence::None)),
            inject("a", "w"),
            inject("w", "a"),
        ]);
        assert_eq!(evaluate(&both).unwrap().outcome("a").unwrap().tag, SizeTag::W);

        let one = script(&[declare("w", BaseSize::W), bind("a", SizeExpr::Powerset(b(SizeExpr::name("w")))), inject("w", "a")]);
        let o = evaluate(&one).unwrap().outcome("a").unwrap();
        assert_eq!(o.to_string(), "Unknown (not Set)");

        let bad = script(&[declare("w", BaseSize::W), declare("a", BaseSize::Set), inject("w", "a")]);
        assert_eq!(
            evaluate(&bad).unwrap_err(),
            SizeError::Contradiction {
                name: "a".into(),
                facts: ("let a = set".into(), "inject w -> a".into())
            }
        );
    }

    #[test]
    fn well_formedness() {
        assert_eq!(
            evaluate(&script(&[bind("p", SizeExpr::Powerset(b(SizeExpr::name("x"))))])).unwrap_err(),
            SizeError::Undefined("x".into())
        );
        assert_eq!(
            evaluate(&script(&[declare("a", BaseSize::Set), declare("a", BaseSize::W)])).unwrap_err(),
            SizeError::Duplicate("a".into())
        );
        assert_eq!(
            evaluate(&script(&[declare("W", BaseSize::Set)])).unwrap_err(),
            SizeError::Reserved("W".into())
        );
    }
}
