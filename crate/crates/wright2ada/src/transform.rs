//! Configuration → Ada subprogram.
//!
//! Shape contract: the configuration becomes one parameterless procedure;
//! every instance becomes a task named `Component_`/`Connector_` plus the
//! instance name; observed events of the type's computation or glue become
//! task entries; the process tree becomes the task body inside an endless
//! loop. Condition stubs `condition_interne` (Boolean) and
//! `condition_interne1` (Integer) are declared only when some internal choice
//! needs them, internal traitements become procedures with null bodies.
//!
//! Declaration order is canonical: condition functions, traitement
//! procedures, component task specs, connector task specs, component task
//! bodies, connector task bodies. Specs precede bodies so the generated
//! source compiles as written.

use crate::ada::{
    AdaDeclaration, AdaSpecification, AdaStatement, AdaSubprogramBody, CaseAlternative, Condition,
    EntryDeclaration, Expression, SelectAlternative, SimpleAccept, SingleTaskDeclaration, TaskBody,
};
use crate::diag::{rules, Diagnostic};
use crate::model::{Attachment, Configuration, EventExpression, ProcessExpression};

/// Names the instance whose process is being translated; entry-call
/// resolution walks the configuration's attachments.
pub struct TransformContext<'a> {
    pub attachments: &'a [Attachment],
    pub instance_name: &'a str,
    /// Process names that legally loop back without a warning.
    pub local_names: Vec<&'a str>,
}

#[derive(Debug, Clone)]
pub struct Transformed {
    pub program: AdaSubprogramBody,
    pub warnings: Vec<Diagnostic>,
}

pub fn derive_entry_name(qualified_event: &str) -> String {
    qualified_event.replace('.', "_")
}

/// Distinct observed event names in first-occurrence pre-order.
pub fn collect_observed(expr: &ProcessExpression) -> Vec<String> {
    let mut out = Vec::new();
    walk_events(expr, &mut |e| {
        if let EventExpression::EventObserved { name } = e {
            if !out.iter().any(|n| n == name) {
                out.push(name.clone());
            }
        }
    });
    out
}

/// Distinct internal traitement names: component computations first, then
/// connector glues, declaration order, first occurrence wins.
pub fn collect_internal(config: &Configuration) -> Vec<String> {
    let mut out = Vec::new();
    let mut visit = |expr: &ProcessExpression| {
        walk_events(expr, &mut |e| {
            if let EventExpression::InternalTraitement { name } = e {
                if !out.iter().any(|n| n == name) {
                    out.push(name.clone());
                }
            }
        });
    };
    for c in &config.components {
        visit(&c.computation);
    }
    for c in &config.connectors {
        visit(&c.glue);
    }
    out
}

fn walk_events(expr: &ProcessExpression, f: &mut impl FnMut(&EventExpression)) {
    match expr {
        ProcessExpression::Prefix { event, target } => {
            f(event);
            walk_events(target, f);
        }
        ProcessExpression::ExternalChoice { elements } | ProcessExpression::InternalChoice { elements } => {
            for e in elements {
                walk_events(e, f);
            }
        }
        ProcessExpression::ProcessName { .. } => {}
    }
}

/// Resolves a signalled event to the entry it calls, through the
/// attachments. A port-side event calls into the connector task attached to
/// the port; a role-side event calls into the component task attached to the
/// role. First matching attachment in declaration order wins.
pub fn resolve_entry_call(
    qualified_event: &str,
    ctx: &TransformContext<'_>,
    diags: &mut Vec<Diagnostic>,
) -> Option<String> {
    let Some((prefix, suffix)) = qualified_event.split_once('.') else {
        diags.push(Diagnostic::error(
            rules::E_UNQUALIFIED,
            format!(
                "L'événement initialisé {qualified_event} de l'instance {} doit être qualifié par un nom de port ou de rôle.",
                ctx.instance_name
            ),
        ));
        return None;
    };
    let suffix = derive_entry_name(suffix);

    let origin_matches: Vec<&Attachment> = ctx
        .attachments
        .iter()
        .filter(|a| a.origin_port == prefix && a.origin_instance == ctx.instance_name)
        .collect();
    if let Some(a) = origin_matches.first() {
        if origin_matches.len() > 1 {
            diags.push(Diagnostic::warning(
                rules::W_MULTI_ATTACH,
                format!(
                    "Le port {prefix} de l'instance {} est attaché plusieurs fois; le premier attachement est retenu.",
                    ctx.instance_name
                ),
            ));
        }
        return Some(format!("Connector_{}.{}_{}", a.target_instance, a.target_role, suffix));
    }

    let target_matches: Vec<&Attachment> = ctx
        .attachments
        .iter()
        .filter(|a| a.target_role == prefix && a.target_instance == ctx.instance_name)
        .collect();
    if let Some(a) = target_matches.first() {
        if target_matches.len() > 1 {
            diags.push(Diagnostic::warning(
                rules::W_MULTI_ATTACH,
                format!(
                    "Le rôle {prefix} de l'instance {} est attaché plusieurs fois; le premier attachement est retenu.",
                    ctx.instance_name
                ),
            ));
        }
        return Some(format!("Component_{}.{}_{}", a.origin_instance, a.origin_port, suffix));
    }

    diags.push(Diagnostic::error(
        rules::E_NO_ATTACH,
        format!(
            "L'événement initialisé {qualified_event} de l'instance {} n'est relié par aucun attachement.",
            ctx.instance_name
        ),
    ));
    None
}

pub fn translate_process(
    expr: &ProcessExpression,
    ctx: &TransformContext<'_>,
    diags: &mut Vec<Diagnostic>,
) -> Vec<AdaStatement> {
    match expr {
        ProcessExpression::ProcessName { name } => {
            let local = name == "STOP"
                || ctx.local_names.iter().any(|l| l.eq_ignore_ascii_case(name))
                || name.eq_ignore_ascii_case("computation")
                || name.eq_ignore_ascii_case("glue");
            if !local {
                diags.push(Diagnostic::warning(
                    rules::W_NONLOCAL_NAME,
                    format!(
                        "Le processus {name} référencé dans l'instance {} n'est pas le processus englobant; la référence est traitée comme un rebouclage.",
                        ctx.instance_name
                    ),
                ));
            }
            Vec::new()
        }
        ProcessExpression::Prefix { event, target } => {
            let mut stmts = Vec::new();
            match event {
                EventExpression::EventObserved { name } => {
                    stmts.push(AdaStatement::SimpleAccept(SimpleAccept {
                        direct_name: derive_entry_name(name),
                    }));
                }
                EventExpression::EventSignalled { name } => {
                    if let Some(path) = resolve_entry_call(name, ctx, diags) {
                        stmts.push(AdaStatement::EntryCall { entry_name: path });
                    }
                }
                EventExpression::InternalTraitement { name } => {
                    stmts.push(AdaStatement::ProcedureCall { name: derive_entry_name(name) });
                }
                EventExpression::SuccesEvent { .. } => {
                    stmts.push(AdaStatement::ExitStatement { condition: None });
                }
            }
            stmts.extend(translate_process(target, ctx, diags));
            stmts
        }
        ProcessExpression::ExternalChoice { .. } => {
            vec![AdaStatement::SelectOr { alternatives: translate_external_choice(expr, ctx, diags) }]
        }
        ProcessExpression::InternalChoice { elements } => match elements.len() {
            2 => vec![AdaStatement::IfElse {
                condition: Condition { text: "condition_interne".to_owned() },
                then_statements: translate_process(&elements[0], ctx, diags),
                else_statements: translate_process(&elements[1], ctx, diags),
            }],
            n if n > 2 => vec![AdaStatement::CaseStatement {
                expression: Expression { text: "condition_interne1".to_owned() },
                alternatives: elements
                    .iter()
                    .enumerate()
                    .map(|(i, e)| CaseAlternative {
                        choice: (i + 1).to_string(),
                        statements: translate_process(e, ctx, diags),
                    })
                    .collect(),
            }],
            // Degenerate single-element choice: no branching to encode.
            _ => elements.iter().flat_map(|e| translate_process(e, ctx, diags)).collect(),
        },
    }
}

/// Observed prefixes become accept alternatives in source order; the success
/// prefix becomes the terminate alternative, always last.
pub fn translate_external_choice(
    choice: &ProcessExpression,
    ctx: &TransformContext<'_>,
    diags: &mut Vec<Diagnostic>,
) -> Vec<SelectAlternative> {
    let ProcessExpression::ExternalChoice { elements } = choice else {
        unreachable!("caller dispatches on ExternalChoice");
    };
    let mut accepts = Vec::new();
    let mut terminate = false;
    for e in elements {
        match e {
            ProcessExpression::Prefix { event: EventExpression::EventObserved { name }, target } => {
                accepts.push(SelectAlternative::AcceptAlternative {
                    accept: SimpleAccept { direct_name: derive_entry_name(name) },
                    statements: translate_process(target, ctx, diags),
                });
            }
            ProcessExpression::Prefix { event: EventExpression::SuccesEvent { .. }, .. } => {
                terminate = true;
            }
            _ => {
                // check_wright reports this as E-EC-OBSERVED; repeat it here
                // so direct callers cannot silently lose an element.
                diags.push(Diagnostic::error(
                    rules::E_EC_OBSERVED,
                    "Un choix externe doit être basé uniquement sur des événements observés, \
                     l'événement succès ou le processus SKIP."
                        .to_owned(),
                ));
            }
        }
    }
    if terminate {
        accepts.push(SelectAlternative::TerminateAlternative);
    }
    accepts
}

fn exist_ic(config: &Configuration, predicate: impl Fn(usize) -> bool) -> bool {
    let mut found = false;
    let mut scan = |expr: &ProcessExpression| {
        walk_choices(expr, &mut |n| {
            if predicate(n) {
                found = true;
            }
        });
    };
    for c in &config.components {
        scan(&c.computation);
    }
    for c in &config.connectors {
        scan(&c.glue);
    }
    found
}

fn walk_choices(expr: &ProcessExpression, f: &mut impl FnMut(usize)) {
    match expr {
        ProcessExpression::Prefix { target, .. } => walk_choices(target, f),
        ProcessExpression::ExternalChoice { elements } => {
            for e in elements {
                walk_choices(e, f);
            }
        }
        ProcessExpression::InternalChoice { elements } => {
            f(elements.len());
            for e in elements {
                walk_choices(e, f);
            }
        }
        ProcessExpression::ProcessName { .. } => {}
    }
}

pub fn transform(config: &Configuration) -> Result<Transformed, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let mut declarations = Vec::new();

    if exist_ic(config, |n| n == 2) {
        declarations.push(AdaDeclaration::SubprogramBody(AdaSubprogramBody {
            specification: AdaSpecification::FunctionSpec {
                designator: "condition_interne".to_owned(),
                return_type: "Boolean".to_owned(),
            },
            declarations: vec![],
            statements: vec![AdaStatement::ReturnStatement {
                expression: Some(Expression { text: "true".to_owned() }),
            }],
        }));
    }
    if exist_ic(config, |n| n > 2) {
        declarations.push(AdaDeclaration::SubprogramBody(AdaSubprogramBody {
            specification: AdaSpecification::FunctionSpec {
                designator: "condition_interne1".to_owned(),
                return_type: "Integer".to_owned(),
            },
            declarations: vec![],
            statements: vec![AdaStatement::ReturnStatement {
                expression: Some(Expression { text: "1".to_owned() }),
            }],
        }));
    }
    for name in collect_internal(config) {
        declarations.push(AdaDeclaration::SubprogramBody(AdaSubprogramBody {
            specification: AdaSpecification::ProcedureSpec { designator: derive_entry_name(&name) },
            declarations: vec![],
            statements: vec![AdaStatement::NullStatement],
        }));
    }

    // Instance, task name, type name, the process and the loop-back names.
    struct Planned<'a> {
        task: String,
        process: &'a ProcessExpression,
        instance: &'a str,
        local_names: Vec<&'a str>,
    }
    let mut planned: Vec<Planned<'_>> = Vec::new();
    for i in &config.component_instances {
        let Some(ty) = config.component(&i.type_name) else {
            diags.push(Diagnostic::error(
                rules::E_UNDECL_TYPE,
                format!(
                    "Chaque instance de composant déclarée au sein de la configuration {} \
                     doit utiliser un type composant déclaré au sein de la même configuration.",
                    config.name
                ),
            ));
            continue;
        };
        planned.push(Planned {
            task: format!("Component_{}", i.name),
            process: &ty.computation,
            instance: &i.name,
            local_names: vec![ty.name.as_str()],
        });
    }
    for i in &config.connector_instances {
        let Some(ty) = config.connector(&i.type_name) else {
            diags.push(Diagnostic::error(
                rules::E_UNDECL_TYPE,
                format!(
                    "Chaque instance de connecteur déclarée au sein d'une configuration {} \
                     doit utiliser un type connecteur déclaré au sein de la même configuration.",
                    config.name
                ),
            ));
            continue;
        };
        planned.push(Planned {
            task: format!("Connector_{}", i.name),
            process: &ty.glue,
            instance: &i.name,
            local_names: vec![ty.name.as_str()],
        });
    }

    for p in &planned {
        declarations.push(AdaDeclaration::SingleTask(SingleTaskDeclaration {
            identifier: p.task.clone(),
            entries: collect_observed(p.process)
                .iter()
                .map(|n| EntryDeclaration { identifier: derive_entry_name(n) })
                .collect(),
        }));
    }
    for p in &planned {
        let ctx = TransformContext {
            attachments: &config.attachments,
            instance_name: p.instance,
            local_names: p.local_names.clone(),
        };
        let mut body = translate_process(p.process, &ctx, &mut diags);
        if body.is_empty() {
            // A loop needs at least one statement.
            body.push(AdaStatement::NullStatement);
        }
        declarations.push(AdaDeclaration::TaskBody(TaskBody {
            identifier: p.task.clone(),
            declarations: vec![],
            statements: vec![AdaStatement::SimpleLoop { statements: body }],
        }));
    }

    let (errors, warnings): (Vec<_>, Vec<_>) =
        diags.into_iter().partition(|d| d.severity == crate::diag::Severity::Error);
    if !errors.is_empty() {
        let mut all = errors;
        all.extend(warnings);
        return Err(all);
    }
    Ok(Transformed {
        program: AdaSubprogramBody {
            specification: AdaSpecification::ProcedureSpec { designator: config.name.clone() },
            declarations,
            statements: vec![AdaStatement::NullStatement],
        },
        warnings,
    })
}
