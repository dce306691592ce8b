//! Static semantics of the Wright model.
//!
//! `check_wright` never fails; diagnostics are its output. Ordering is fixed:
//! rules run in catalogue order and, within a rule, declarations are visited
//! in source order, so the same configuration always yields the same list.
//!
//! Rule ids keep their historical `E-`/`W-` prefixes; `W-PORT-IT` and
//! `W-ROLE-IT` carry Error severity regardless of the prefix, the alphabet
//! inclusion rules are genuine warnings.

use crate::diag::{rules, Diagnostic};
use crate::model::{alphabet, Configuration, EventKind, ProcessExpression};
use std::collections::BTreeSet;

pub fn check_wright(config: &Configuration) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    check_identifiers(config, &mut out);
    check_port_role_dup(config, &mut out);
    check_name_dup(config, &mut out);
    check_empty_config(config, &mut out);
    check_declared_types(config, &mut out);
    check_attachments(config, &mut out);
    check_external_choices(config, &mut out);
    check_internal_in_interfaces(config, &mut out);
    check_alphabet_inclusion(config, &mut out);
    check_connector_arity(config, &mut out);
    out
}

fn is_identifier(name: &str, allow_dot: bool) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || (allow_dot && c == '.'))
}

fn ident_error(name: &str) -> Diagnostic {
    Diagnostic::error(
        rules::E_IDENT,
        format!("Le nom {name} n'est pas un identificateur valide au sens Wright."),
    )
}

fn check_identifiers(config: &Configuration, out: &mut Vec<Diagnostic>) {
    let mut structural: Vec<&str> = vec![&config.name];
    let mut exprs: Vec<&ProcessExpression> = Vec::new();
    for c in &config.components {
        structural.push(&c.name);
        for p in &c.ports {
            structural.push(&p.name);
            exprs.push(&p.behavior);
        }
        exprs.push(&c.computation);
    }
    for c in &config.connectors {
        structural.push(&c.name);
        for r in &c.roles {
            structural.push(&r.name);
            exprs.push(&r.behavior);
        }
        exprs.push(&c.glue);
    }
    structural.extend(config.component_instances.iter().map(|i| i.name.as_str()));
    structural.extend(config.connector_instances.iter().map(|i| i.name.as_str()));

    let mut seen = BTreeSet::new();
    for name in structural {
        if !is_identifier(name, false) && seen.insert(name.to_owned()) {
            out.push(ident_error(name));
        }
    }
    for e in exprs {
        check_expr_identifiers(e, &mut seen, out);
    }
}

fn check_expr_identifiers(
    expr: &ProcessExpression,
    seen: &mut BTreeSet<String>,
    out: &mut Vec<Diagnostic>,
) {
    match expr {
        ProcessExpression::Prefix { event, target } => {
            // Dotted names are fine for events and processes.
            if !is_identifier(event.name(), true) && seen.insert(event.name().to_owned()) {
                out.push(ident_error(event.name()));
            }
            check_expr_identifiers(target, seen, out);
        }
        ProcessExpression::ExternalChoice { elements } | ProcessExpression::InternalChoice { elements } => {
            for e in elements {
                check_expr_identifiers(e, seen, out);
            }
        }
        ProcessExpression::ProcessName { name } => {
            if !is_identifier(name, true) && seen.insert(name.clone()) {
                out.push(ident_error(name));
            }
        }
    }
}

fn check_port_role_dup(config: &Configuration, out: &mut Vec<Diagnostic>) {
    for c in &config.components {
        let names: BTreeSet<_> = c.ports.iter().map(|p| &p.name).collect();
        if names.len() != c.ports.len() {
            out.push(Diagnostic::error(
                rules::E_PORT_DUP,
                format!("Le composant {} utilise plusieurs fois le même nom pour ses ports.", c.name),
            ));
        }
    }
    for c in &config.connectors {
        let names: BTreeSet<_> = c.roles.iter().map(|r| &r.name).collect();
        if names.len() != c.roles.len() {
            out.push(Diagnostic::error(
                rules::E_ROLE_DUP,
                format!("Le connecteur {} utilise plusieurs fois le même nom pour ses rôles.", c.name),
            ));
        }
    }
}

fn check_name_dup(config: &Configuration, out: &mut Vec<Diagnostic>) {
    let types: Vec<&str> = config
        .components
        .iter()
        .map(|c| c.name.as_str())
        .chain(config.connectors.iter().map(|c| c.name.as_str()))
        .collect();
    let instances: Vec<&str> = config
        .component_instances
        .iter()
        .map(|i| i.name.as_str())
        .chain(config.connector_instances.iter().map(|i| i.name.as_str()))
        .collect();
    if has_dup(&types) {
        out.push(Diagnostic::error(
            rules::E_NAME_DUP,
            format!(
                "Dans la configuration {} les types n'ont pas des noms deux à deux différents.",
                config.name
            ),
        ));
    }
    if has_dup(&instances) {
        out.push(Diagnostic::error(
            rules::E_NAME_DUP,
            format!(
                "Dans la configuration {} les instances n'ont pas des noms deux à deux différents.",
                config.name
            ),
        ));
    }
    let type_set: BTreeSet<_> = types.iter().copied().collect();
    if instances.iter().any(|i| type_set.contains(i)) {
        out.push(Diagnostic::error(
            rules::E_NAME_DUP,
            format!(
                "Dans la configuration {} les instances et les types n'ont pas des noms deux à deux différents.",
                config.name
            ),
        ));
    }
}

fn has_dup(names: &[&str]) -> bool {
    let set: BTreeSet<_> = names.iter().copied().collect();
    set.len() != names.len()
}

fn check_empty_config(config: &Configuration, out: &mut Vec<Diagnostic>) {
    let no_types = config.components.is_empty() && config.connectors.is_empty();
    let has_members = !config.component_instances.is_empty()
        || !config.connector_instances.is_empty()
        || !config.attachments.is_empty();
    if no_types && has_members {
        out.push(Diagnostic::error(
            rules::E_EMPTY_CONFIG,
            "Une configuration privée de types n'admet ni instances ni attachement.".to_owned(),
        ));
    }
}

fn check_declared_types(config: &Configuration, out: &mut Vec<Diagnostic>) {
    for i in &config.component_instances {
        if config.component(&i.type_name).is_none() {
            out.push(Diagnostic::error(
                rules::E_UNDECL_TYPE,
                format!(
                    "Chaque instance de composant déclarée au sein de la configuration {} \
                     doit utiliser un type composant déclaré au sein de la même configuration.",
                    config.name
                ),
            ));
        }
    }
    for i in &config.connector_instances {
        if config.connector(&i.type_name).is_none() {
            out.push(Diagnostic::error(
                rules::E_UNDECL_TYPE,
                format!(
                    "Chaque instance de connecteur déclarée au sein d'une configuration {} \
                     doit utiliser un type connecteur déclaré au sein de la même configuration.",
                    config.name
                ),
            ));
        }
    }
}

fn check_attachments(config: &Configuration, out: &mut Vec<Diagnostic>) {
    for a in &config.attachments {
        match config.component_instance(&a.origin_instance) {
            None => out.push(Diagnostic::error(
                rules::E_UNDECL_INST,
                format!(
                    "Un attachement utilise une instance de composant {} non déclarée dans la configuration que lui.",
                    a.origin_instance
                ),
            )),
            Some(inst) => {
                // Missing type already reported by E-UNDECL-TYPE.
                if let Some(c) = config.component(&inst.type_name) {
                    if !c.ports.iter().any(|p| p.name == a.origin_port) {
                        out.push(Diagnostic::error(
                            rules::E_ATT_PORT,
                            format!(
                                "Un attachement n'est pas valide: le port {} ne peut pas être attaché à l'instance {}.",
                                a.origin_port, a.origin_instance
                            ),
                        ));
                    }
                }
            }
        }
        match config.connector_instance(&a.target_instance) {
            None => out.push(Diagnostic::error(
                rules::E_UNDECL_INST,
                format!(
                    "Un attachement utilise une instance de connecteur {} non déclarée dans la configuration que lui.",
                    a.target_instance
                ),
            )),
            Some(inst) => {
                if let Some(c) = config.connector(&inst.type_name) {
                    if !c.roles.iter().any(|r| r.name == a.target_role) {
                        out.push(Diagnostic::error(
                            rules::E_ATT_ROLE,
                            format!(
                                "Un attachement n'est pas valide: le rôle {} ne peut pas être attaché à l'instance {}.",
                                a.target_role, a.target_instance
                            ),
                        ));
                    }
                }
            }
        }
    }
}

fn check_external_choices(config: &Configuration, out: &mut Vec<Diagnostic>) {
    for e in all_expressions(config) {
        check_ec_expr(e, out);
    }
}

fn check_ec_expr(expr: &ProcessExpression, out: &mut Vec<Diagnostic>) {
    match expr {
        ProcessExpression::Prefix { target, .. } => check_ec_expr(target, out),
        ProcessExpression::InternalChoice { elements } => {
            for e in elements {
                check_ec_expr(e, out);
            }
        }
        ProcessExpression::ExternalChoice { elements } => {
            for e in elements {
                if let ProcessExpression::Prefix { event, .. } = e {
                    if !matches!(event.kind(), EventKind::Observed | EventKind::Success) {
                        out.push(Diagnostic::error(
                            rules::E_EC_OBSERVED,
                            "Un choix externe doit être basé uniquement sur des événements observés, \
                             l'événement succès ou le processus SKIP."
                                .to_owned(),
                        ));
                    }
                }
                check_ec_expr(e, out);
            }
        }
        ProcessExpression::ProcessName { .. } => {}
    }
}

fn check_internal_in_interfaces(config: &Configuration, out: &mut Vec<Diagnostic>) {
    for c in &config.components {
        for p in &c.ports {
            if alphabet(&p.behavior).iter().any(|(k, _)| *k == EventKind::Internal) {
                out.push(Diagnostic::error(
                    rules::W_PORT_IT,
                    format!(
                        "L'alphabet du processus associé au port {} ne doit pas inclure des événements \
                         décrivant des traitements internes.",
                        p.name
                    ),
                ));
            }
        }
    }
    for c in &config.connectors {
        for r in &c.roles {
            if alphabet(&r.behavior).iter().any(|(k, _)| *k == EventKind::Internal) {
                out.push(Diagnostic::error(
                    rules::W_ROLE_IT,
                    format!(
                        "L'alphabet du processus associé au rôle {} ne doit pas inclure des événements \
                         décrivant des traitements internes.",
                        r.name
                    ),
                ));
            }
        }
    }
}

/// Alphabet inclusion. Qualified interface events must occur in the body
/// alphabet by name; the observed/signalled kind may flip across the boundary
/// (a glue observes what a role signals), so only names are compared.
fn check_alphabet_inclusion(config: &Configuration, out: &mut Vec<Diagnostic>) {
    for c in &config.components {
        let body: BTreeSet<String> = alphabet(&c.computation)
            .into_iter()
            .filter(|(k, _)| matches!(k, EventKind::Observed | EventKind::Signalled))
            .map(|(_, n)| n)
            .collect();
        for p in &c.ports {
            for (kind, name) in alphabet(&p.behavior) {
                if !matches!(kind, EventKind::Observed | EventKind::Signalled) {
                    continue;
                }
                let qualified = format!("{}.{}", p.name, name);
                if !body.contains(&qualified) {
                    out.push(Diagnostic::warning(
                        rules::W_ALPHA_PORT,
                        format!(
                            "L'événement {qualified} du port {} n'apparaît pas dans l'alphabet \
                             du processus associé au composant {}.",
                            p.name, c.name
                        ),
                    ));
                }
            }
        }
    }
    for c in &config.connectors {
        let body: BTreeSet<String> = alphabet(&c.glue)
            .into_iter()
            .filter(|(k, _)| matches!(k, EventKind::Observed | EventKind::Signalled))
            .map(|(_, n)| n)
            .collect();
        for r in &c.roles {
            for (kind, name) in alphabet(&r.behavior) {
                if !matches!(kind, EventKind::Observed | EventKind::Signalled) {
                    continue;
                }
                let qualified = format!("{}.{}", r.name, name);
                if !body.contains(&qualified) {
                    out.push(Diagnostic::warning(
                        rules::W_ALPHA_ROLE,
                        format!(
                            "L'événement {qualified} du rôle {} n'apparaît pas dans l'alphabet \
                             du processus associé au connecteur {}.",
                            r.name, c.name
                        ),
                    ));
                }
            }
        }
    }
}

fn check_connector_arity(config: &Configuration, out: &mut Vec<Diagnostic>) {
    for c in &config.connectors {
        if c.roles.len() < 2 {
            out.push(Diagnostic::warning(
                rules::W_CONN_ARITY,
                format!("Le connecteur {} a un nombre de rôles inférieur à deux", c.name),
            ));
        }
    }
}

fn all_expressions(config: &Configuration) -> Vec<&ProcessExpression> {
    let mut exprs = Vec::new();
    for c in &config.components {
        exprs.extend(c.ports.iter().map(|p| &p.behavior));
        exprs.push(&c.computation);
    }
    for c in &config.connectors {
        exprs.extend(c.roles.iter().map(|r| &r.behavior));
        exprs.push(&c.glue);
    }
    exprs
}
