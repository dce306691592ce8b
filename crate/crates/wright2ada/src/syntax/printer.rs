//! Canonical printer for the concrete syntax tree.
//!
//! Used by the round-trip tests: any accepted tree, re-printed and re-parsed,
//! must come back structurally identical.

use super::*;
use std::fmt::Write;

pub fn print_configuration(config: &SyntaxConfiguration) -> String {
    let mut out = String::new();
    writeln!(out, "Configuration {}", config.name).unwrap();
    for t in &config.types {
        match t {
            SyntaxType::ComponentDecl { name, ports, computation, .. } => {
                writeln!(out, "Component {name}").unwrap();
                for p in ports {
                    writeln!(out, "Port {} = {}", p.name, expr(&p.behavior)).unwrap();
                }
                writeln!(out, "Computation = {}", expr(computation)).unwrap();
            }
            SyntaxType::ConnectorDecl { name, roles, glue, .. } => {
                writeln!(out, "Connector {name}").unwrap();
                for r in roles {
                    writeln!(out, "Role {} = {}", r.name, expr(&r.behavior)).unwrap();
                }
                writeln!(out, "Glue = {}", expr(glue)).unwrap();
            }
        }
    }
    writeln!(out, "Instances").unwrap();
    for i in &config.instances {
        match i {
            SyntaxInstance::ComponentInstanceDecl { name, type_name, .. } => {
                writeln!(out, "{name}: Component {type_name}").unwrap();
            }
            SyntaxInstance::ConnectorInstanceDecl { name, type_name, .. } => {
                writeln!(out, "{name}: Connector {type_name}").unwrap();
            }
        }
    }
    writeln!(out, "Attachments").unwrap();
    for a in &config.attachments {
        writeln!(
            out,
            "{}-{} As {}-{}",
            a.origin_instance_name, a.origin_port_name, a.target_instance_name, a.target_role_name
        )
        .unwrap();
    }
    out.push_str("End Configuration\n");
    out
}

fn expr(e: &SyntaxProcessExpression) -> String {
    let mut s = prefix(&e.right);
    for p in &e.ec_left {
        write!(s, " [] {}", prefix(p)).unwrap();
    }
    for p in &e.ic_left {
        write!(s, " |~| {}", prefix(p)).unwrap();
    }
    s
}

fn prefix(p: &SyntaxPrefix) -> String {
    match p {
        SyntaxPrefix::EventArrow { event, target } => {
            format!("{} -> {}", event_text(event), target_text(target))
        }
        SyntaxPrefix::Sugar { kind: SugarKind::Section, .. } => "§".to_owned(),
        SyntaxPrefix::Sugar { kind: SugarKind::Skip, .. } => "SKIP".to_owned(),
    }
}

fn target_text(t: &SyntaxTarget) -> String {
    match t {
        SyntaxTarget::Parens(inner) => format!("( {} )", expr(inner)),
        SyntaxTarget::NestedPrefix(p) => prefix(p),
        SyntaxTarget::NameRef { name, .. } => name.clone(),
    }
}

fn event_text(e: &SyntaxEvent) -> String {
    match e {
        SyntaxEvent::Observed { name, data, .. } => format!("{name}{}", data_text(data)),
        SyntaxEvent::Signalled { name, data, .. } => format!("_{name}{}", data_text(data)),
        SyntaxEvent::Internal { name, .. } => format!("-{name}"),
        SyntaxEvent::Success { .. } => "V".to_owned(),
    }
}

fn data_text(data: &[SyntaxData]) -> String {
    let mut s = String::new();
    for d in data {
        let marker = match d.direction {
            DataDirection::In => '?',
            DataDirection::Out => '!',
        };
        write!(s, " {marker}{}", d.name).unwrap();
    }
    s
}
