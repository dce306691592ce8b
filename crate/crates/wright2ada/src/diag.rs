//! Diagnostics with stable rule identifiers.
//!
//! Every rule that the Wright checker, the Ada checker, the normalizer or the
//! transformation can raise is listed in [`rules`]. Diagnostics are ordered by
//! catalogue position first, then by source position, so output is stable
//! across runs.

use serde::{Deserialize, Serialize};
use std::fmt;

/// 1-based position of a token or construct in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct SourceSpan {
    pub line: u32,
    pub column: u32,
    pub length: u32,
}

impl SourceSpan {
    pub fn new(line: u32, column: u32, length: u32) -> Self {
        debug_assert!(line >= 1 && column >= 1);
        SourceSpan { line, column, length }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Error => write!(f, "error"),
            Severity::Warning => write!(f, "warning"),
        }
    }
}

/// Stable rule identifiers.
pub mod rules {
    // Wright static semantics (catalogue order).
    pub const E_IDENT: &str = "E-IDENT";
    pub const E_PORT_DUP: &str = "E-PORT-DUP";
    pub const E_ROLE_DUP: &str = "E-ROLE-DUP";
    pub const E_NAME_DUP: &str = "E-NAME-DUP";
    pub const E_EMPTY_CONFIG: &str = "E-EMPTY-CONFIG";
    pub const E_UNDECL_TYPE: &str = "E-UNDECL-TYPE";
    pub const E_UNDECL_INST: &str = "E-UNDECL-INST";
    pub const E_ATT_PORT: &str = "E-ATT-PORT";
    pub const E_ATT_ROLE: &str = "E-ATT-ROLE";
    pub const E_INST_TYPE: &str = "E-INST-TYPE";
    pub const E_EC_OBSERVED: &str = "E-EC-OBSERVED";
    pub const W_PORT_IT: &str = "W-PORT-IT";
    pub const W_ROLE_IT: &str = "W-ROLE-IT";
    pub const W_ALPHA_PORT: &str = "W-ALPHA-PORT";
    pub const W_ALPHA_ROLE: &str = "W-ALPHA-ROLE";
    pub const W_CONN_ARITY: &str = "W-CONN-ARITY";

    // Normalization.
    pub const W_DATA_IGNORED: &str = "W-DATA-IGNORED";

    // Transformation.
    pub const E_NO_ATTACH: &str = "E-NO-ATTACH";
    pub const E_UNQUALIFIED: &str = "E-UNQUALIFIED";
    pub const W_MULTI_ATTACH: &str = "W-MULTI-ATTACH";
    pub const W_NONLOCAL_NAME: &str = "W-NONLOCAL-NAME";

    // Ada static semantics (catalogue order).
    pub const A_NAME_CROSS: &str = "A-NAME-CROSS";
    pub const A_SUB_DUP: &str = "A-SUB-DUP";
    pub const A_TASK_DUP: &str = "A-TASK-DUP";
    pub const A_TASK_PAIR: &str = "A-TASK-PAIR";
    pub const A_FUN_RETURN: &str = "A-FUN-RETURN";
    pub const A_PROC_RETURN: &str = "A-PROC-RETURN";
    pub const A_SUB_ACCEPT: &str = "A-SUB-ACCEPT";
    pub const A_SUB_SELECT: &str = "A-SUB-SELECT";
    pub const A_TASK_RETURN: &str = "A-TASK-RETURN";
    pub const A_ACCEPT_OWN: &str = "A-ACCEPT-OWN";

    // Syntax level (CLI reporting only).
    pub const E_SYNTAX: &str = "E-SYNTAX";
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    #[serde(rename = "ruleId")]
    pub rule_id: String,
    pub message: String,
    pub span: Option<SourceSpan>,
}

impl Diagnostic {
    pub fn error(rule_id: &str, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            rule_id: rule_id.to_owned(),
            message: message.into(),
            span: None,
        }
    }

    pub fn warning(rule_id: &str, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            rule_id: rule_id.to_owned(),
            message: message.into(),
            span: None,
        }
    }

    pub fn with_span(mut self, span: SourceSpan) -> Self {
        self.span = Some(span);
        self
    }

    /// One line per diagnostic: `severity: file:line:col: ruleId: message`.
    /// The position is omitted when no span is attached.
    pub fn render(&self, file: &str) -> String {
        match self.span {
            Some(span) => format!(
                "{}: {}:{}:{}: {}: {}",
                self.severity, file, span.line, span.column, self.rule_id, self.message
            ),
            None => format!("{}: {}: {}: {}", self.severity, file, self.rule_id, self.message),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

/// True when at least one diagnostic is an error.
pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}
