//! Partial Ada model: parameterless subprograms, single tasks and the
//! statement forms the generator needs, plus the static checker.
//!
//! A declarative region is the declaration list of a subprogram body or task
//! body; the checker walks regions recursively. Statement traversal descends
//! into compound statements but never into nested declarations, so a return
//! inside a nested subprogram belongs to that subprogram alone.

use crate::diag::{rules, Diagnostic};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum AdaSpecification {
    ProcedureSpec {
        designator: String,
    },
    FunctionSpec {
        designator: String,
        #[serde(rename = "returnType")]
        return_type: String,
    },
}

impl AdaSpecification {
    pub fn designator(&self) -> &str {
        match self {
            AdaSpecification::ProcedureSpec { designator }
            | AdaSpecification::FunctionSpec { designator, .. } => designator,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename = "SubprogramBody")]
pub struct AdaSubprogramBody {
    pub specification: AdaSpecification,
    pub declarations: Vec<AdaDeclaration>,
    pub statements: Vec<AdaStatement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename = "SingleTaskDeclaration")]
pub struct SingleTaskDeclaration {
    pub identifier: String,
    pub entries: Vec<EntryDeclaration>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename = "EntryDeclaration")]
pub struct EntryDeclaration {
    pub identifier: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename = "TaskBody")]
pub struct TaskBody {
    pub identifier: String,
    pub declarations: Vec<AdaDeclaration>,
    pub statements: Vec<AdaStatement>,
}

/// Untagged on purpose: each payload already carries its own `kind`, and the
/// field shapes are pairwise distinct, so deserialization is unambiguous.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AdaDeclaration {
    SubprogramBody(AdaSubprogramBody),
    SingleTask(SingleTaskDeclaration),
    TaskBody(TaskBody),
    Specification(AdaSpecification),
}

// Untagged: the statement enum and the select alternative already provide
// the discriminator, a second `kind` key would collide with theirs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleAccept {
    #[serde(rename = "directName")]
    pub direct_name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename = "Condition")]
pub struct Condition {
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename = "Expression")]
pub struct Expression {
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum AdaStatement {
    NullStatement,
    ExitStatement {
        #[serde(skip_serializing_if = "Option::is_none", default)]
        condition: Option<Condition>,
    },
    ReturnStatement {
        #[serde(skip_serializing_if = "Option::is_none", default)]
        expression: Option<Expression>,
    },
    ProcedureCall {
        name: String,
    },
    /// `entry_name` is the dotted path `Task.Entry`.
    EntryCall {
        #[serde(rename = "entryName")]
        entry_name: String,
    },
    IfElse {
        condition: Condition,
        #[serde(rename = "thenStatements")]
        then_statements: Vec<AdaStatement>,
        #[serde(rename = "elseStatements")]
        else_statements: Vec<AdaStatement>,
    },
    CaseStatement {
        expression: Expression,
        alternatives: Vec<CaseAlternative>,
    },
    SimpleAccept(SimpleAccept),
    SelectOr {
        alternatives: Vec<SelectAlternative>,
    },
    SimpleLoop {
        statements: Vec<AdaStatement>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename = "CaseAlternative")]
pub struct CaseAlternative {
    /// Integer literal or `others`.
    pub choice: String,
    pub statements: Vec<AdaStatement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SelectAlternative {
    AcceptAlternative {
        accept: SimpleAccept,
        statements: Vec<AdaStatement>,
    },
    TerminateAlternative,
}

/// Pre-order walk of one executable part. Descends into compound statements,
/// never into nested declarations.
pub fn statements_recursive(statements: &[AdaStatement]) -> Vec<&AdaStatement> {
    let mut out = Vec::new();
    collect_statements(statements, &mut out);
    out
}

fn collect_statements<'a>(statements: &'a [AdaStatement], out: &mut Vec<&'a AdaStatement>) {
    for s in statements {
        out.push(s);
        match s {
            AdaStatement::IfElse { then_statements, else_statements, .. } => {
                collect_statements(then_statements, out);
                collect_statements(else_statements, out);
            }
            AdaStatement::CaseStatement { alternatives, .. } => {
                for a in alternatives {
                    collect_statements(&a.statements, out);
                }
            }
            AdaStatement::SelectOr { alternatives } => {
                for a in alternatives {
                    if let SelectAlternative::AcceptAlternative { statements, .. } = a {
                        collect_statements(statements, out);
                    }
                }
            }
            AdaStatement::SimpleLoop { statements } => collect_statements(statements, out),
            _ => {}
        }
    }
}

/// Every rendezvous accepted in the executable part, including the heads of
/// select alternatives, which are not statements themselves.
pub fn accepted_names(statements: &[AdaStatement]) -> Vec<&str> {
    let mut out = Vec::new();
    for s in statements_recursive(statements) {
        match s {
            AdaStatement::SimpleAccept(a) => out.push(a.direct_name.as_str()),
            AdaStatement::SelectOr { alternatives } => {
                for alt in alternatives {
                    if let SelectAlternative::AcceptAlternative { accept, .. } = alt {
                        out.push(accept.direct_name.as_str());
                    }
                }
            }
            _ => {}
        }
    }
    out
}

pub fn check_ada(program: &AdaSubprogramBody) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    check_subprogram(program, &mut out);
    out
}

fn check_subprogram(body: &AdaSubprogramBody, out: &mut Vec<Diagnostic>) {
    check_region(body.specification.designator(), &body.declarations, out);

    let name = body.specification.designator();
    let stmts = statements_recursive(&body.statements);
    let returns = stmts
        .iter()
        .filter(|s| matches!(s, AdaStatement::ReturnStatement { .. }))
        .count();
    match &body.specification {
        AdaSpecification::FunctionSpec { .. } if returns == 0 => {
            out.push(Diagnostic::error(
                rules::A_FUN_RETURN,
                format!("La fonction {name} doit contenir au moins une instruction return."),
            ));
        }
        AdaSpecification::ProcedureSpec { .. } if returns > 0 => {
            out.push(Diagnostic::warning(
                rules::A_PROC_RETURN,
                format!("La procédure {name} contient une (des) instruction(s) return."),
            ));
        }
        _ => {}
    }
    if stmts.iter().any(|s| matches!(s, AdaStatement::SimpleAccept(_))) {
        out.push(Diagnostic::error(
            rules::A_SUB_ACCEPT,
            format!("Le sous-programme {name} ne peut pas contenir une (des) instruction(s) accept."),
        ));
    }
    if stmts.iter().any(|s| matches!(s, AdaStatement::SelectOr { .. })) {
        out.push(Diagnostic::error(
            rules::A_SUB_SELECT,
            format!("Le sous-programme {name} ne peut pas contenir une (des) instruction(s) select."),
        ));
    }
}

fn check_task_body(task: &TaskBody, entries: Option<&[EntryDeclaration]>, out: &mut Vec<Diagnostic>) {
    check_region(&task.identifier, &task.declarations, out);

    let stmts = statements_recursive(&task.statements);
    if stmts.iter().any(|s| matches!(s, AdaStatement::ReturnStatement { .. })) {
        out.push(Diagnostic::error(
            rules::A_TASK_RETURN,
            format!("La tâche {} ne peut pas contenir une (des) instruction(s) return.", task.identifier),
        ));
    }
    // Without a paired spec A-TASK-PAIR already fired; own-entry checking
    // would only duplicate the report.
    if let Some(entries) = entries {
        for name in accepted_names(&task.statements) {
            if !entries.iter().any(|e| e.identifier == name) {
                out.push(Diagnostic::error(
                    rules::A_ACCEPT_OWN,
                    format!(
                        "La tâche {} ne peut pas accepter le rendez-vous {} non déclaré parmi ses propres entrées.",
                        task.identifier, name
                    ),
                ));
            }
        }
    }
}

fn check_region(region_name: &str, declarations: &[AdaDeclaration], out: &mut Vec<Diagnostic>) {
    let mut sub_specs: Vec<&str> = Vec::new();
    let mut sub_bodies: Vec<&str> = Vec::new();
    let mut task_specs: Vec<&SingleTaskDeclaration> = Vec::new();
    let mut task_bodies: Vec<&TaskBody> = Vec::new();
    for d in declarations {
        match d {
            AdaDeclaration::Specification(s) => sub_specs.push(s.designator()),
            AdaDeclaration::SubprogramBody(b) => sub_bodies.push(b.specification.designator()),
            AdaDeclaration::SingleTask(t) => task_specs.push(t),
            AdaDeclaration::TaskBody(t) => task_bodies.push(t),
        }
    }

    // A matching forward spec and body share a designator legally; only
    // duplicates within each group are faults.
    if has_dup(&sub_specs) || has_dup(&sub_bodies) {
        out.push(Diagnostic::error(
            rules::A_SUB_DUP,
            format!(
                "Au sein de la partie déclarative de {region_name} les identificateurs des sous-programmes doivent être différents."
            ),
        ));
    }
    let task_spec_names: Vec<&str> = task_specs.iter().map(|t| t.identifier.as_str()).collect();
    let task_body_names: Vec<&str> = task_bodies.iter().map(|t| t.identifier.as_str()).collect();
    if has_dup(&task_spec_names) || has_dup(&task_body_names) {
        out.push(Diagnostic::error(
            rules::A_TASK_DUP,
            format!(
                "Au sein de la partie déclarative de {region_name} les identificateurs des tâches doivent être différents."
            ),
        ));
    }
    let mut specs_sorted = task_spec_names.clone();
    let mut bodies_sorted = task_body_names.clone();
    specs_sorted.sort_unstable();
    bodies_sorted.sort_unstable();
    if specs_sorted != bodies_sorted {
        out.push(Diagnostic::error(
            rules::A_TASK_PAIR,
            format!(
                "Au sein de la partie déclarative de {region_name} les spécifications et les implémentations des tâches doivent se correspondre deux à deux."
            ),
        ));
    }
    let subs: std::collections::BTreeSet<&str> =
        sub_specs.iter().chain(sub_bodies.iter()).copied().collect();
    if task_spec_names.iter().chain(task_body_names.iter()).any(|t| subs.contains(t)) {
        out.push(Diagnostic::error(
            rules::A_NAME_CROSS,
            format!(
                "Au sein de la partie déclarative de {region_name} les identificateurs des tâches et des sous-programmes doivent être deux à deux différents."
            ),
        ));
    }

    let entry_map: BTreeMap<&str, &[EntryDeclaration]> = task_specs
        .iter()
        .map(|t| (t.identifier.as_str(), t.entries.as_slice()))
        .collect();
    for d in declarations {
        match d {
            AdaDeclaration::SubprogramBody(b) => check_subprogram(b, out),
            AdaDeclaration::TaskBody(t) => {
                check_task_body(t, entry_map.get(t.identifier.as_str()).copied(), out)
            }
            _ => {}
        }
    }
}

fn has_dup(names: &[&str]) -> bool {
    let set: std::collections::BTreeSet<_> = names.iter().copied().collect();
    set.len() != names.len()
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("malformed JSON document: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("invalid model: {0}")]
    Invalid(String),
}

pub fn to_json(program: &AdaSubprogramBody) -> String {
    let mut s = serde_json::to_string_pretty(program).expect("program serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<AdaSubprogramBody, LoadError> {
    let program: AdaSubprogramBody = serde_json::from_str(text)?;
    validate_body(&program.statements, &program.declarations)
        .map_err(LoadError::Invalid)?;
    Ok(program)
}

fn validate_body(statements: &[AdaStatement], declarations: &[AdaDeclaration]) -> Result<(), String> {
    if statements.is_empty() {
        return Err("executable part must contain at least one statement".to_owned());
    }
    for s in statements_recursive(statements) {
        match s {
            AdaStatement::SimpleLoop { statements } if statements.is_empty() => {
                return Err("loop body must contain at least one statement".to_owned())
            }
            AdaStatement::CaseStatement { alternatives, .. } => {
                if alternatives.is_empty() {
                    return Err("case statement must contain at least one alternative".to_owned());
                }
                let choices: std::collections::BTreeSet<_> =
                    alternatives.iter().map(|a| a.choice.as_str()).collect();
                if choices.len() != alternatives.len() {
                    return Err("case choices must be pairwise distinct".to_owned());
                }
            }
            AdaStatement::SelectOr { alternatives } => {
                if alternatives.is_empty() {
                    return Err("select statement must contain at least one alternative".to_owned());
                }
                let terminates = alternatives
                    .iter()
                    .filter(|a| matches!(a, SelectAlternative::TerminateAlternative))
                    .count();
                if terminates > 1 {
                    return Err("select statement admits at most one terminate alternative".to_owned());
                }
            }
            _ => {}
        }
    }
    for d in declarations {
        match d {
            AdaDeclaration::SubprogramBody(b) => validate_body(&b.statements, &b.declarations)?,
            AdaDeclaration::TaskBody(t) => validate_body(&t.statements, &t.declarations)?,
            _ => {}
        }
    }
    Ok(())
}
