//! Concrete syntax for textual Wright.
//!
//! The tree produced here mirrors the concrete grammar faithfully, quirks
//! included: `§`/`SKIP` sugar, parenthesized sub-expressions and event data
//! markers all survive until the normalization pass in [`crate::model`].

mod lexer;
mod parser;
mod printer;

pub use lexer::tokenize;
pub use parser::{parse_configuration, parse_configuration_with_coverage};
pub use printer::print_configuration;

use crate::diag::SourceSpan;
use std::fmt;

/// Nesting limit for parenthesized process expressions.
pub const MAX_NESTING_DEPTH: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub message: String,
    pub span: SourceSpan,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.span.line, self.span.column, self.message)
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Keyword,
    Identifier,
    Symbol,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub span: SourceSpan,
}

pub const KEYWORDS: &[&str] = &[
    "Configuration",
    "Instances",
    "Attachments",
    "End",
    "Component",
    "Connector",
    "Port",
    "Role",
    "Computation",
    "Glue",
    "As",
];

/// Grammar productions, tracked for coverage-instrumented parses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Production {
    Configuration,
    Type,
    Component,
    Port,
    Connector,
    Role,
    Instance,
    ComponentInstance,
    ConnectorInstance,
    Attachment,
    ProcessExpression,
    Prefix,
    TargetPrefix,
    Parentheses,
    ProcessName,
    EventExpression,
    EventSignalled,
    EventObserved,
    InternalTraitement,
    SuccesEvent,
    Data,
}

impl Production {
    pub const ALL: [Production; 21] = [
        Production::Configuration,
        Production::Type,
        Production::Component,
        Production::Port,
        Production::Connector,
        Production::Role,
        Production::Instance,
        Production::ComponentInstance,
        Production::ConnectorInstance,
        Production::Attachment,
        Production::ProcessExpression,
        Production::Prefix,
        Production::TargetPrefix,
        Production::Parentheses,
        Production::ProcessName,
        Production::EventExpression,
        Production::EventSignalled,
        Production::EventObserved,
        Production::InternalTraitement,
        Production::SuccesEvent,
        Production::Data,
    ];
}

/// Which productions fired during a parse.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Coverage {
    fired: std::collections::BTreeSet<Production>,
}

impl Coverage {
    pub fn mark(&mut self, p: Production) {
        self.fired.insert(p);
    }

    pub fn fired(&self, p: Production) -> bool {
        self.fired.contains(&p)
    }

    pub fn union(&mut self, other: &Coverage) {
        self.fired.extend(other.fired.iter().copied());
    }

    pub fn missing(&self) -> Vec<Production> {
        Production::ALL.iter().copied().filter(|p| !self.fired(*p)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxConfiguration {
    pub name: String,
    pub name_span: SourceSpan,
    pub types: Vec<SyntaxType>,
    pub instances: Vec<SyntaxInstance>,
    pub attachments: Vec<SyntaxAttachment>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyntaxType {
    ComponentDecl {
        name: String,
        name_span: SourceSpan,
        ports: Vec<SyntaxPortOrRole>,
        computation: SyntaxProcessExpression,
    },
    ConnectorDecl {
        name: String,
        name_span: SourceSpan,
        roles: Vec<SyntaxPortOrRole>,
        glue: SyntaxProcessExpression,
    },
}

impl SyntaxType {
    pub fn name(&self) -> &str {
        match self {
            SyntaxType::ComponentDecl { name, .. } | SyntaxType::ConnectorDecl { name, .. } => name,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxPortOrRole {
    pub name: String,
    pub name_span: SourceSpan,
    pub behavior: SyntaxProcessExpression,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyntaxInstance {
    ComponentInstanceDecl {
        name: String,
        name_span: SourceSpan,
        type_name: String,
        type_span: SourceSpan,
    },
    ConnectorInstanceDecl {
        name: String,
        name_span: SourceSpan,
        type_name: String,
        type_span: SourceSpan,
    },
}

impl SyntaxInstance {
    pub fn name(&self) -> &str {
        match self {
            SyntaxInstance::ComponentInstanceDecl { name, .. }
            | SyntaxInstance::ConnectorInstanceDecl { name, .. } => name,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxAttachment {
    pub origin_instance_name: String,
    pub origin_port_name: String,
    pub target_instance_name: String,
    pub target_role_name: String,
    pub span: SourceSpan,
}

/// `right (('[]' prefix)+ | ('|~|' prefix)+)?` — at most one of the two left
/// lists is nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxProcessExpression {
    pub right: SyntaxPrefix,
    pub ec_left: Vec<SyntaxPrefix>,
    pub ic_left: Vec<SyntaxPrefix>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SugarKind {
    /// `§`
    Section,
    /// `SKIP`
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyntaxPrefix {
    EventArrow {
        event: SyntaxEvent,
        target: Box<SyntaxTarget>,
    },
    Sugar {
        kind: SugarKind,
        span: SourceSpan,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyntaxTarget {
    Parens(SyntaxProcessExpression),
    NestedPrefix(SyntaxPrefix),
    NameRef { name: String, span: SourceSpan },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyntaxEvent {
    Observed {
        name: String,
        data: Vec<SyntaxData>,
        span: SourceSpan,
    },
    Signalled {
        name: String,
        data: Vec<SyntaxData>,
        span: SourceSpan,
    },
    Internal {
        name: String,
        span: SourceSpan,
    },
    Success {
        span: SourceSpan,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataDirection {
    /// `?`
    In,
    /// `!`
    Out,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxData {
    pub direction: DataDirection,
    pub name: String,
    pub span: SourceSpan,
}

impl SyntaxConfiguration {
    /// Copy of the tree with every span zeroed, for structural comparison.
    pub fn without_spans(&self) -> SyntaxConfiguration {
        let mut c = self.clone();
        c.strip_spans();
        c
    }

    fn strip_spans(&mut self) {
        self.name_span = SourceSpan::default();
        for t in &mut self.types {
            match t {
                SyntaxType::ComponentDecl { name_span, ports, computation, .. } => {
                    *name_span = SourceSpan::default();
                    for p in ports {
                        p.name_span = SourceSpan::default();
                        strip_expr(&mut p.behavior);
                    }
                    strip_expr(computation);
                }
                SyntaxType::ConnectorDecl { name_span, roles, glue, .. } => {
                    *name_span = SourceSpan::default();
                    for r in roles {
                        r.name_span = SourceSpan::default();
                        strip_expr(&mut r.behavior);
                    }
                    strip_expr(glue);
                }
            }
        }
        for i in &mut self.instances {
            match i {
                SyntaxInstance::ComponentInstanceDecl { name_span, type_span, .. }
                | SyntaxInstance::ConnectorInstanceDecl { name_span, type_span, .. } => {
                    *name_span = SourceSpan::default();
                    *type_span = SourceSpan::default();
                }
            }
        }
        for a in &mut self.attachments {
            a.span = SourceSpan::default();
        }
    }
}

fn strip_expr(e: &mut SyntaxProcessExpression) {
    strip_prefix(&mut e.right);
    for p in e.ec_left.iter_mut().chain(e.ic_left.iter_mut()) {
        strip_prefix(p);
    }
}

fn strip_prefix(p: &mut SyntaxPrefix) {
    match p {
        SyntaxPrefix::EventArrow { event, target } => {
            strip_event(event);
            match target.as_mut() {
                SyntaxTarget::Parens(inner) => strip_expr(inner),
                SyntaxTarget::NestedPrefix(inner) => strip_prefix(inner),
                SyntaxTarget::NameRef { span, .. } => *span = SourceSpan::default(),
            }
        }
        SyntaxPrefix::Sugar { span, .. } => *span = SourceSpan::default(),
    }
}

fn strip_event(e: &mut SyntaxEvent) {
    match e {
        SyntaxEvent::Observed { data, span, .. } | SyntaxEvent::Signalled { data, span, .. } => {
            *span = SourceSpan::default();
            for d in data {
                d.span = SourceSpan::default();
            }
        }
        SyntaxEvent::Internal { span, .. } | SyntaxEvent::Success { span } => {
            *span = SourceSpan::default()
        }
    }
}
