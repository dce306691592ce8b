//! Normalized Wright model and the concrete-syntax → model pass.
//!
//! Normalization removes everything the concrete grammar keeps for the
//! writer's convenience: parentheses vanish, `§`/`SKIP` become `V -> STOP`,
//! event data items are dropped with a warning, and the name references of
//! instances and attachments are resolved against the declared types.
//!
//! The JSON dump is the model's exchange format: every node is an object with
//! a `kind` discriminator, and cross-references are plain name strings that
//! are re-resolved on load.

use crate::diag::{rules, Diagnostic};
use crate::syntax::{
    SyntaxConfiguration, SyntaxEvent, SyntaxInstance, SyntaxPrefix,
    SyntaxProcessExpression, SyntaxTarget, SyntaxType,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum EventExpression {
    EventObserved { name: String },
    EventSignalled { name: String },
    InternalTraitement { name: String },
    SuccesEvent { name: String },
}

impl EventExpression {
    pub fn success() -> Self {
        EventExpression::SuccesEvent { name: "V".to_owned() }
    }

    pub fn name(&self) -> &str {
        match self {
            EventExpression::EventObserved { name }
            | EventExpression::EventSignalled { name }
            | EventExpression::InternalTraitement { name }
            | EventExpression::SuccesEvent { name } => name,
        }
    }

    pub fn kind(&self) -> EventKind {
        match self {
            EventExpression::EventObserved { .. } => EventKind::Observed,
            EventExpression::EventSignalled { .. } => EventKind::Signalled,
            EventExpression::InternalTraitement { .. } => EventKind::Internal,
            EventExpression::SuccesEvent { .. } => EventKind::Success,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EventKind {
    Observed,
    Signalled,
    Internal,
    Success,
}

/// CSP process tree. Choice elements are always `Prefix` nodes; the
/// normalization pass guarantees it and the JSON loader re-validates it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ProcessExpression {
    Prefix {
        event: EventExpression,
        target: Box<ProcessExpression>,
    },
    ExternalChoice {
        elements: Vec<ProcessExpression>,
    },
    InternalChoice {
        elements: Vec<ProcessExpression>,
    },
    ProcessName {
        name: String,
    },
}

impl ProcessExpression {
    pub fn name(name: impl Into<String>) -> Self {
        ProcessExpression::ProcessName { name: name.into() }
    }

    pub fn prefix(event: EventExpression, target: ProcessExpression) -> Self {
        ProcessExpression::Prefix { event, target: Box::new(target) }
    }

    /// `V -> STOP`, what `§`/`SKIP` desugar to.
    pub fn success_stop() -> Self {
        ProcessExpression::prefix(EventExpression::success(), ProcessExpression::name("STOP"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename = "Port")]
pub struct Port {
    pub name: String,
    pub behavior: ProcessExpression,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename = "Component")]
pub struct Component {
    pub name: String,
    pub ports: Vec<Port>,
    pub computation: ProcessExpression,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename = "Role")]
pub struct Role {
    pub name: String,
    pub behavior: ProcessExpression,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename = "Connector")]
pub struct Connector {
    pub name: String,
    pub roles: Vec<Role>,
    pub glue: ProcessExpression,
}

/// Instance of a declared component type; `type` is a reference by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename = "ComponentInstance")]
pub struct ComponentInstance {
    pub name: String,
    #[serde(rename = "type")]
    pub type_name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename = "ConnectorInstance")]
pub struct ConnectorInstance {
    pub name: String,
    #[serde(rename = "type")]
    pub type_name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename = "Attachment")]
pub struct Attachment {
    #[serde(rename = "originInstance")]
    pub origin_instance: String,
    #[serde(rename = "originPort")]
    pub origin_port: String,
    #[serde(rename = "targetInstance")]
    pub target_instance: String,
    #[serde(rename = "targetRole")]
    pub target_role: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename = "Configuration")]
pub struct Configuration {
    pub name: String,
    pub components: Vec<Component>,
    pub connectors: Vec<Connector>,
    #[serde(rename = "componentInstances")]
    pub component_instances: Vec<ComponentInstance>,
    #[serde(rename = "connectorInstances")]
    pub connector_instances: Vec<ConnectorInstance>,
    pub attachments: Vec<Attachment>,
}

impl Configuration {
    pub fn component(&self, name: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.name == name)
    }

    pub fn connector(&self, name: &str) -> Option<&Connector> {
        self.connectors.iter().find(|c| c.name == name)
    }

    pub fn component_instance(&self, name: &str) -> Option<&ComponentInstance> {
        self.component_instances.iter().find(|i| i.name == name)
    }

    pub fn connector_instance(&self, name: &str) -> Option<&ConnectorInstance> {
        self.connector_instances.iter().find(|i| i.name == name)
    }
}

/// Result of a successful normalization; data-drop warnings ride along.
#[derive(Debug, Clone)]
pub struct Normalized {
    pub configuration: Configuration,
    pub warnings: Vec<Diagnostic>,
}

/// Grammar tree → model. Fails (with error diagnostics) only when a name
/// reference does not resolve; data-drop warnings never abort.
pub fn normalize(syntax: &SyntaxConfiguration) -> Result<Normalized, Vec<Diagnostic>> {
    let mut warnings = Vec::new();
    let mut errors = Vec::new();

    let mut components = Vec::new();
    let mut connectors = Vec::new();
    for t in &syntax.types {
        match t {
            SyntaxType::ComponentDecl { name, ports, computation, .. } => {
                components.push(Component {
                    name: name.clone(),
                    ports: ports
                        .iter()
                        .map(|p| Port {
                            name: p.name.clone(),
                            behavior: normalize_expr(&p.behavior, &mut warnings),
                        })
                        .collect(),
                    computation: normalize_expr(computation, &mut warnings),
                });
            }
            SyntaxType::ConnectorDecl { name, roles, glue, .. } => {
                connectors.push(Connector {
                    name: name.clone(),
                    roles: roles
                        .iter()
                        .map(|r| Role {
                            name: r.name.clone(),
                            behavior: normalize_expr(&r.behavior, &mut warnings),
                        })
                        .collect(),
                    glue: normalize_expr(glue, &mut warnings),
                });
            }
        }
    }

    let mut component_instances = Vec::new();
    let mut connector_instances = Vec::new();
    for i in &syntax.instances {
        match i {
            SyntaxInstance::ComponentInstanceDecl { name, type_name, type_span, .. } => {
                if !components.iter().any(|c| c.name == *type_name) {
                    errors.push(
                        Diagnostic::error(
                            rules::E_UNDECL_TYPE,
                            format!(
                                "Chaque instance de composant déclarée au sein de la configuration {} \
                                 doit utiliser un type composant déclaré au sein de la même configuration.",
                                syntax.name
                            ),
                        )
                        .with_span(*type_span),
                    );
                }
                component_instances.push(ComponentInstance {
                    name: name.clone(),
                    type_name: type_name.clone(),
                });
            }
            SyntaxInstance::ConnectorInstanceDecl { name, type_name, type_span, .. } => {
                if !connectors.iter().any(|c| c.name == *type_name) {
                    errors.push(
                        Diagnostic::error(
                            rules::E_UNDECL_TYPE,
                            format!(
                                "Chaque instance de connecteur déclarée au sein d'une configuration {} \
                                 doit utiliser un type connecteur déclaré au sein de la même configuration.",
                                syntax.name
                            ),
                        )
                        .with_span(*type_span),
                    );
                }
                connector_instances.push(ConnectorInstance {
                    name: name.clone(),
                    type_name: type_name.clone(),
                });
            }
        }
    }

    let mut attachments = Vec::new();
    for a in &syntax.attachments {
        let origin = component_instances.iter().find(|i| i.name == a.origin_instance_name);
        let target = connector_instances.iter().find(|i| i.name == a.target_instance_name);
        match origin {
            None => errors.push(
                Diagnostic::error(
                    rules::E_UNDECL_INST,
                    format!(
                        "Un attachement utilise une instance de composant {} non déclarée dans la configuration que lui.",
                        a.origin_instance_name
                    ),
                )
                .with_span(a.span),
            ),
            Some(inst) => {
                let has_port = components
                    .iter()
                    .find(|c| c.name == inst.type_name)
                    .is_some_and(|c| c.ports.iter().any(|p| p.name == a.origin_port_name));
                if !has_port {
                    errors.push(
                        Diagnostic::error(
                            rules::E_ATT_PORT,
                            format!(
                                "Un attachement n'est pas valide: le port {} ne peut pas être attaché à l'instance {}.",
                                a.origin_port_name, a.origin_instance_name
                            ),
                        )
                        .with_span(a.span),
                    );
                }
            }
        }
        match target {
            None => errors.push(
                Diagnostic::error(
                    rules::E_UNDECL_INST,
                    format!(
                        "Un attachement utilise une instance de connecteur {} non déclarée dans la configuration que lui.",
                        a.target_instance_name
                    ),
                )
                .with_span(a.span),
            ),
            Some(inst) => {
                let has_role = connectors
                    .iter()
                    .find(|c| c.name == inst.type_name)
                    .is_some_and(|c| c.roles.iter().any(|r| r.name == a.target_role_name));
                if !has_role {
                    errors.push(
                        Diagnostic::error(
                            rules::E_ATT_ROLE,
                            format!(
                                "Un attachement n'est pas valide: le rôle {} ne peut pas être attaché à l'instance {}.",
                                a.target_role_name, a.target_instance_name
                            ),
                        )
                        .with_span(a.span),
                    );
                }
            }
        }
        attachments.push(Attachment {
            origin_instance: a.origin_instance_name.clone(),
            origin_port: a.origin_port_name.clone(),
            target_instance: a.target_instance_name.clone(),
            target_role: a.target_role_name.clone(),
        });
    }

    if !errors.is_empty() {
        errors.extend(warnings);
        return Err(errors);
    }

    Ok(Normalized {
        configuration: Configuration {
            name: syntax.name.clone(),
            components,
            connectors,
            component_instances,
            connector_instances,
            attachments,
        },
        warnings,
    })
}

fn normalize_expr(e: &SyntaxProcessExpression, warnings: &mut Vec<Diagnostic>) -> ProcessExpression {
    if !e.ec_left.is_empty() {
        let mut elements = Vec::with_capacity(1 + e.ec_left.len());
        elements.push(normalize_prefix(&e.right, warnings));
        elements.extend(e.ec_left.iter().map(|p| normalize_prefix(p, warnings)));
        ProcessExpression::ExternalChoice { elements }
    } else if !e.ic_left.is_empty() {
        let mut elements = Vec::with_capacity(1 + e.ic_left.len());
        elements.push(normalize_prefix(&e.right, warnings));
        elements.extend(e.ic_left.iter().map(|p| normalize_prefix(p, warnings)));
        ProcessExpression::InternalChoice { elements }
    } else {
        normalize_prefix(&e.right, warnings)
    }
}

fn normalize_prefix(p: &SyntaxPrefix, warnings: &mut Vec<Diagnostic>) -> ProcessExpression {
    match p {
        SyntaxPrefix::Sugar { .. } => ProcessExpression::success_stop(),
        SyntaxPrefix::EventArrow { event, target } => {
            let event = normalize_event(event, warnings);
            let target = match target.as_ref() {
                SyntaxTarget::Parens(inner) => normalize_expr(inner, warnings),
                SyntaxTarget::NestedPrefix(nested) => normalize_prefix(nested, warnings),
                SyntaxTarget::NameRef { name, .. } => ProcessExpression::name(name.clone()),
            };
            ProcessExpression::prefix(event, target)
        }
    }
}

fn normalize_event(e: &SyntaxEvent, warnings: &mut Vec<Diagnostic>) -> EventExpression {
    match e {
        SyntaxEvent::Observed { name, data, .. } => {
            warn_dropped_data(name, data, warnings);
            EventExpression::EventObserved { name: name.clone() }
        }
        SyntaxEvent::Signalled { name, data, .. } => {
            warn_dropped_data(name, data, warnings);
            EventExpression::EventSignalled { name: name.clone() }
        }
        SyntaxEvent::Internal { name, .. } => EventExpression::InternalTraitement { name: name.clone() },
        SyntaxEvent::Success { .. } => EventExpression::success(),
    }
}

fn warn_dropped_data(event_name: &str, data: &[crate::syntax::SyntaxData], warnings: &mut Vec<Diagnostic>) {
    for d in data {
        warnings.push(
            Diagnostic::warning(
                rules::W_DATA_IGNORED,
                format!("la donnée portée par l'événement {event_name} est ignorée"),
            )
            .with_span(d.span),
        );
    }
}

/// Set of all events occurring in a process tree. Process names contribute
/// nothing.
pub fn alphabet(expr: &ProcessExpression) -> BTreeSet<(EventKind, String)> {
    let mut set = BTreeSet::new();
    collect_alphabet(expr, &mut set);
    set
}

fn collect_alphabet(expr: &ProcessExpression, set: &mut BTreeSet<(EventKind, String)>) {
    match expr {
        ProcessExpression::Prefix { event, target } => {
            set.insert((event.kind(), event.name().to_owned()));
            collect_alphabet(target, set);
        }
        ProcessExpression::ExternalChoice { elements } | ProcessExpression::InternalChoice { elements } => {
            for e in elements {
                collect_alphabet(e, set);
            }
        }
        ProcessExpression::ProcessName { .. } => {}
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("malformed JSON document: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("invalid model: {}", .0.iter().map(|d| d.message.clone()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
}

pub fn to_json(config: &Configuration) -> String {
    let mut s = serde_json::to_string_pretty(config).expect("configuration serializes");
    s.push('\n');
    s
}

/// Parses a JSON dump and re-resolves every name reference; dangling
/// references are load errors carrying `E-INST-TYPE` diagnostics.
pub fn from_json(text: &str) -> Result<Configuration, LoadError> {
    let config: Configuration = serde_json::from_str(text)?;
    let mut diags = Vec::new();
    for i in &config.component_instances {
        if config.component(&i.type_name).is_none() {
            diags.push(Diagnostic::error(
                rules::E_INST_TYPE,
                format!("unresolved type {} for component instance {}", i.type_name, i.name),
            ));
        }
    }
    for i in &config.connector_instances {
        if config.connector(&i.type_name).is_none() {
            diags.push(Diagnostic::error(
                rules::E_INST_TYPE,
                format!("unresolved type {} for connector instance {}", i.type_name, i.name),
            ));
        }
    }
    for a in &config.attachments {
        match config.component_instance(&a.origin_instance) {
            None => diags.push(Diagnostic::error(
                rules::E_INST_TYPE,
                format!("unresolved component instance {}", a.origin_instance),
            )),
            Some(inst) => {
                if let Some(c) = config.component(&inst.type_name) {
                    if !c.ports.iter().any(|p| p.name == a.origin_port) {
                        diags.push(Diagnostic::error(
                            rules::E_INST_TYPE,
                            format!("unresolved port {} on instance {}", a.origin_port, a.origin_instance),
                        ));
                    }
                }
            }
        }
        match config.connector_instance(&a.target_instance) {
            None => diags.push(Diagnostic::error(
                rules::E_INST_TYPE,
                format!("unresolved connector instance {}", a.target_instance),
            )),
            Some(inst) => {
                if let Some(c) = config.connector(&inst.type_name) {
                    if !c.roles.iter().any(|r| r.name == a.target_role) {
                        diags.push(Diagnostic::error(
                            rules::E_INST_TYPE,
                            format!("unresolved role {} on instance {}", a.target_role, a.target_instance),
                        ));
                    }
                }
            }
        }
    }
    let mut exprs: Vec<&ProcessExpression> = Vec::new();
    for c in &config.components {
        exprs.push(&c.computation);
        exprs.extend(c.ports.iter().map(|p| &p.behavior));
    }
    for c in &config.connectors {
        exprs.push(&c.glue);
        exprs.extend(c.roles.iter().map(|r| &r.behavior));
    }
    for e in exprs {
        validate_expr(e, &mut diags);
    }
    if diags.is_empty() {
        Ok(config)
    } else {
        Err(LoadError::Invalid(diags))
    }
}

fn validate_expr(expr: &ProcessExpression, diags: &mut Vec<Diagnostic>) {
    match expr {
        ProcessExpression::Prefix { event, target } => {
            if let EventExpression::SuccesEvent { name } = event {
                if name != "V" {
                    diags.push(Diagnostic::error(
                        rules::E_INST_TYPE,
                        format!("success event must be named V, found {name}"),
                    ));
                }
            }
            validate_expr(target, diags);
        }
        ProcessExpression::ExternalChoice { elements } | ProcessExpression::InternalChoice { elements } => {
            for e in elements {
                if !matches!(e, ProcessExpression::Prefix { .. }) {
                    diags.push(Diagnostic::error(
                        rules::E_INST_TYPE,
                        "choice elements must be prefix expressions".to_owned(),
                    ));
                }
                validate_expr(e, diags);
            }
        }
        ProcessExpression::ProcessName { .. } => {}
    }
}
