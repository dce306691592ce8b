//! Shared helpers for the integration suites: a token-level reader for the
//! generated Ada subset, a canonicalizer that absorbs the documented
//! reference-listing permutations, a random configuration generator and
//! event counters.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use wright2ada::ada::{
    AdaDeclaration, AdaSpecification, AdaStatement, AdaSubprogramBody, CaseAlternative, Condition,
    Expression, SelectAlternative, SimpleAccept, SingleTaskDeclaration, TaskBody,
};
use wright2ada::diag::Severity;
use wright2ada::model::{
    Attachment, Component, ComponentInstance, Configuration, Connector, ConnectorInstance,
    EventExpression, Port, ProcessExpression, Role,
};
use wright2ada::syntax::{
    SyntaxAttachment, SyntaxConfiguration, SyntaxData, SyntaxEvent, SyntaxInstance,
    SyntaxPortOrRole, SyntaxPrefix, SyntaxProcessExpression, SyntaxTarget, SyntaxType,
};

pub fn corpus_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/corpus")
        .join(name)
}

pub fn golden_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

pub fn compile(text: &str) -> (Configuration, AdaSubprogramBody) {
    let tokens = wright2ada::syntax::tokenize(text).expect("lex");
    let parsed = wright2ada::syntax::parse_configuration(&tokens).expect("parse");
    let normalized = wright2ada::model::normalize(&parsed).expect("normalize");
    assert!(normalized.warnings.is_empty(), "{:?}", normalized.warnings);
    let wright_diags = wright2ada::checks::check_wright(&normalized.configuration);
    assert!(
        wright_diags.iter().all(|d| d.severity != Severity::Error),
        "{wright_diags:?}"
    );
    let transformed = wright2ada::transform::transform(&normalized.configuration).expect("transform");
    assert!(transformed.warnings.is_empty(), "{:?}", transformed.warnings);
    (normalized.configuration, transformed.program)
}

// ---------------------------------------------------------------------------
// Reader for the generated Ada subset, over normalize_tokens output.

pub fn read_program(text: &str) -> AdaSubprogramBody {
    let tokens = wright2ada::emit::normalize_tokens(text);
    let mut r = Reader { tokens: &tokens, pos: 0 };
    let program = r.subprogram();
    assert_eq!(r.pos, r.tokens.len(), "trailing tokens at {}", r.pos);
    program
}

struct Reader<'a> {
    tokens: &'a [String],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn peek(&self) -> &str {
        self.tokens.get(self.pos).map(String::as_str).unwrap_or("")
    }

    fn peek2(&self) -> &str {
        self.tokens.get(self.pos + 1).map(String::as_str).unwrap_or("")
    }

    fn next(&mut self) -> &'a str {
        let t = self.tokens.get(self.pos).map(String::as_str).unwrap_or("");
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: &str) {
        let got = self.next();
        assert_eq!(got, want, "at token {}", self.pos);
    }

    fn subprogram(&mut self) -> AdaSubprogramBody {
        let kw = self.next().to_owned();
        let name = self.next().to_owned();
        let specification = if kw == "function" {
            self.expect("return");
            AdaSpecification::FunctionSpec { designator: name.clone(), return_type: self.next().to_owned() }
        } else {
            assert_eq!(kw, "procedure");
            AdaSpecification::ProcedureSpec { designator: name.clone() }
        };
        self.expect("is");
        let declarations = self.declarations();
        self.expect("begin");
        let statements = self.statements();
        self.expect("end");
        self.expect(&name);
        self.expect(";");
        AdaSubprogramBody { specification, declarations, statements }
    }

    fn declarations(&mut self) -> Vec<AdaDeclaration> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                "procedure" | "function" => out.push(AdaDeclaration::SubprogramBody(self.subprogram())),
                "task" => out.push(self.task()),
                _ => break,
            }
        }
        out
    }

    fn task(&mut self) -> AdaDeclaration {
        self.expect("task");
        if self.peek() == "body" {
            self.next();
            let name = self.next().to_owned();
            self.expect("is");
            let declarations = self.declarations();
            self.expect("begin");
            let statements = self.statements();
            self.expect("end");
            self.expect(&name);
            self.expect(";");
            AdaDeclaration::TaskBody(TaskBody { identifier: name, declarations, statements })
        } else {
            let name = self.next().to_owned();
            let mut entries = Vec::new();
            if self.peek() == "is" {
                self.next();
                while self.peek() == "entry" {
                    self.next();
                    entries.push(wright2ada::ada::EntryDeclaration { identifier: self.next().to_owned() });
                    self.expect(";");
                }
                self.expect("end");
                self.expect(&name);
            }
            self.expect(";");
            AdaDeclaration::SingleTask(SingleTaskDeclaration { identifier: name, entries })
        }
    }

    /// Reads statements until a closer token of the enclosing construct.
    fn statements(&mut self) -> Vec<AdaStatement> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                "" | "end" | "else" | "when" | "or" => return out,
                _ => out.push(self.statement()),
            }
        }
    }

    fn until(&mut self, stop: &str) -> String {
        let mut parts = Vec::new();
        while self.peek() != stop {
            assert!(!self.peek().is_empty(), "unterminated expression");
            parts.push(self.next().to_owned());
        }
        self.next();
        parts.join(" ")
    }

    fn statement(&mut self) -> AdaStatement {
        match self.peek() {
            "null" => {
                self.next();
                self.expect(";");
                AdaStatement::NullStatement
            }
            "exit" => {
                self.next();
                let condition = if self.peek() == "when" {
                    self.next();
                    Some(Condition { text: self.until(";") })
                } else {
                    self.expect(";");
                    None
                };
                AdaStatement::ExitStatement { condition }
            }
            "return" => {
                self.next();
                let text = self.until(";");
                AdaStatement::ReturnStatement {
                    expression: (!text.is_empty()).then_some(Expression { text }),
                }
            }
            "accept" => {
                self.next();
                let name = self.next().to_owned();
                self.expect(";");
                AdaStatement::SimpleAccept(SimpleAccept { direct_name: name })
            }
            "loop" => {
                self.next();
                let statements = self.statements();
                self.expect("end");
                self.expect("loop");
                self.expect(";");
                AdaStatement::SimpleLoop { statements }
            }
            "if" => {
                self.next();
                let condition = Condition { text: self.until("then") };
                let then_statements = self.statements();
                let else_statements = if self.peek() == "else" {
                    self.next();
                    self.statements()
                } else {
                    Vec::new()
                };
                self.expect("end");
                self.expect("if");
                self.expect(";");
                AdaStatement::IfElse { condition, then_statements, else_statements }
            }
            "case" => {
                self.next();
                let expression = Expression { text: self.until("is") };
                let mut alternatives = Vec::new();
                while self.peek() == "when" {
                    self.next();
                    let choice = self.next().to_owned();
                    self.expect("=>");
                    alternatives.push(CaseAlternative { choice, statements: self.statements() });
                }
                self.expect("end");
                self.expect("case");
                self.expect(";");
                AdaStatement::CaseStatement { expression, alternatives }
            }
            "select" => {
                self.next();
                let mut alternatives = Vec::new();
                loop {
                    if self.peek() == "terminate" {
                        self.next();
                        self.expect(";");
                        alternatives.push(SelectAlternative::TerminateAlternative);
                    } else {
                        self.expect("accept");
                        let name = self.next().to_owned();
                        self.expect(";");
                        alternatives.push(SelectAlternative::AcceptAlternative {
                            accept: SimpleAccept { direct_name: name },
                            statements: self.statements(),
                        });
                    }
                    if self.peek() == "or" {
                        self.next();
                    } else {
                        break;
                    }
                }
                self.expect("end");
                self.expect("select");
                self.expect(";");
                AdaStatement::SelectOr { alternatives }
            }
            _ => {
                // Procedure or entry call: Name ('.' Name)* ';'
                let mut name = self.next().to_owned();
                while self.peek() == "." {
                    self.next();
                    name.push('.');
                    name.push_str(self.next());
                }
                self.expect(";");
                if name.contains('.') {
                    AdaStatement::EntryCall { entry_name: name }
                } else {
                    AdaStatement::ProcedureCall { name }
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Canonical form for golden comparison. Declaration order stays strict;
// inside statements the documented permutations collapse: if-branch order,
// select-alternative order, case-index assignment, entry-list order, and
// the emitter's synthetic "when others => null" alternative.

pub fn canonical(mut program: AdaSubprogramBody) -> AdaSubprogramBody {
    canon_subprogram(&mut program);
    program
}

fn canon_subprogram(p: &mut AdaSubprogramBody) {
    canon_declarations(&mut p.declarations);
    canon_statements(&mut p.statements);
}

fn canon_declarations(declarations: &mut [AdaDeclaration]) {
    for d in declarations {
        match d {
            AdaDeclaration::SingleTask(t) => t.entries.sort_by(|a, b| a.identifier.cmp(&b.identifier)),
            AdaDeclaration::SubprogramBody(b) => canon_subprogram(b),
            AdaDeclaration::TaskBody(t) => {
                canon_declarations(&mut t.declarations);
                canon_statements(&mut t.statements);
            }
            AdaDeclaration::Specification(_) => {}
        }
    }
}

fn key(statements: &[AdaStatement]) -> String {
    serde_json::to_string(statements).unwrap()
}

fn canon_statements(statements: &mut Vec<AdaStatement>) {
    for s in statements {
        match s {
            AdaStatement::SimpleLoop { statements } => canon_statements(statements),
            AdaStatement::IfElse { then_statements, else_statements, .. } => {
                canon_statements(then_statements);
                canon_statements(else_statements);
                if key(then_statements) > key(else_statements) {
                    std::mem::swap(then_statements, else_statements);
                }
            }
            AdaStatement::CaseStatement { alternatives, .. } => {
                for a in alternatives.iter_mut() {
                    canon_statements(&mut a.statements);
                }
                alternatives.retain(|a| {
                    !(a.choice == "others" && a.statements == [AdaStatement::NullStatement])
                });
                alternatives.sort_by_key(|a| key(&a.statements));
                for (i, a) in alternatives.iter_mut().enumerate() {
                    if a.choice != "others" {
                        a.choice = (i + 1).to_string();
                    }
                }
            }
            AdaStatement::SelectOr { alternatives } => {
                for a in alternatives.iter_mut() {
                    if let SelectAlternative::AcceptAlternative { statements, .. } = a {
                        canon_statements(statements);
                    }
                }
                alternatives.sort_by_key(|a| match a {
                    SelectAlternative::AcceptAlternative { accept, statements } => {
                        (0, accept.direct_name.clone(), key(statements))
                    }
                    SelectAlternative::TerminateAlternative => (1, String::new(), String::new()),
                });
            }
            _ => {}
        }
    }
}

// ---------------------------------------------------------------------------
// Event counting oracles.

#[derive(Debug, Default, PartialEq, Eq)]
pub struct EventCounts {
    pub observed: usize,
    pub signalled: usize,
    pub internal: usize,
    pub success: usize,
}

pub fn count_events(expr: &ProcessExpression) -> EventCounts {
    let mut c = EventCounts::default();
    fn walk(expr: &ProcessExpression, c: &mut EventCounts) {
        match expr {
            ProcessExpression::Prefix { event, target } => {
                match event {
                    EventExpression::EventObserved { .. } => c.observed += 1,
                    EventExpression::EventSignalled { .. } => c.signalled += 1,
                    EventExpression::InternalTraitement { .. } => c.internal += 1,
                    EventExpression::SuccesEvent { .. } => c.success += 1,
                }
                walk(target, c);
            }
            ProcessExpression::ExternalChoice { elements }
            | ProcessExpression::InternalChoice { elements } => {
                for e in elements {
                    walk(e, c);
                }
            }
            ProcessExpression::ProcessName { .. } => {}
        }
    }
    walk(expr, &mut c);
    c
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct AdaCounts {
    pub accepts: usize,
    pub entry_calls: usize,
    pub procedure_calls: usize,
    /// Exit statements plus terminate alternatives.
    pub exits: usize,
}

pub fn count_ada(statements: &[AdaStatement]) -> AdaCounts {
    let mut c = AdaCounts::default();
    for s in wright2ada::ada::statements_recursive(statements) {
        match s {
            AdaStatement::SimpleAccept(_) => c.accepts += 1,
            AdaStatement::EntryCall { .. } => c.entry_calls += 1,
            AdaStatement::ProcedureCall { .. } => c.procedure_calls += 1,
            AdaStatement::ExitStatement { .. } => c.exits += 1,
            AdaStatement::SelectOr { alternatives } => {
                for a in alternatives {
                    match a {
                        SelectAlternative::AcceptAlternative { .. } => c.accepts += 1,
                        SelectAlternative::TerminateAlternative => c.exits += 1,
                    }
                }
            }
            _ => {}
        }
    }
    c
}

// ---------------------------------------------------------------------------
// Model → concrete syntax embedding (for normalize idempotence).

pub fn embed(config: &Configuration) -> SyntaxConfiguration {
    let sp = wright2ada::diag::SourceSpan::default();
    let mut types = Vec::new();
    for c in &config.components {
        types.push(SyntaxType::ComponentDecl {
            name: c.name.clone(),
            name_span: sp,
            ports: c
                .ports
                .iter()
                .map(|p| SyntaxPortOrRole {
                    name: p.name.clone(),
                    name_span: sp,
                    behavior: embed_expr(&p.behavior),
                })
                .collect(),
            computation: embed_expr(&c.computation),
        });
    }
    for c in &config.connectors {
        types.push(SyntaxType::ConnectorDecl {
            name: c.name.clone(),
            name_span: sp,
            roles: c
                .roles
                .iter()
                .map(|r| SyntaxPortOrRole {
                    name: r.name.clone(),
                    name_span: sp,
                    behavior: embed_expr(&r.behavior),
                })
                .collect(),
            glue: embed_expr(&c.glue),
        });
    }
    let mut instances = Vec::new();
    for i in &config.component_instances {
        instances.push(SyntaxInstance::ComponentInstanceDecl {
            name: i.name.clone(),
            name_span: sp,
            type_name: i.type_name.clone(),
            type_span: sp,
        });
    }
    for i in &config.connector_instances {
        instances.push(SyntaxInstance::ConnectorInstanceDecl {
            name: i.name.clone(),
            name_span: sp,
            type_name: i.type_name.clone(),
            type_span: sp,
        });
    }
    SyntaxConfiguration {
        name: config.name.clone(),
        name_span: sp,
        types,
        instances,
        attachments: config
            .attachments
            .iter()
            .map(|a| SyntaxAttachment {
                origin_instance_name: a.origin_instance.clone(),
                origin_port_name: a.origin_port.clone(),
                target_instance_name: a.target_instance.clone(),
                target_role_name: a.target_role.clone(),
                span: sp,
            })
            .collect(),
    }
}

fn embed_expr(expr: &ProcessExpression) -> SyntaxProcessExpression {
    match expr {
        ProcessExpression::ExternalChoice { elements } => SyntaxProcessExpression {
            right: embed_prefix(&elements[0]),
            ec_left: elements[1..].iter().map(embed_prefix).collect(),
            ic_left: vec![],
        },
        ProcessExpression::InternalChoice { elements } => SyntaxProcessExpression {
            right: embed_prefix(&elements[0]),
            ec_left: vec![],
            ic_left: elements[1..].iter().map(embed_prefix).collect(),
        },
        ProcessExpression::Prefix { .. } => SyntaxProcessExpression {
            right: embed_prefix(expr),
            ec_left: vec![],
            ic_left: vec![],
        },
        ProcessExpression::ProcessName { .. } => {
            panic!("bare process name has no concrete top-level form")
        }
    }
}

fn embed_prefix(expr: &ProcessExpression) -> SyntaxPrefix {
    let ProcessExpression::Prefix { event, target } = expr else {
        panic!("choice elements are prefixes");
    };
    let sp = wright2ada::diag::SourceSpan::default();
    let data: Vec<SyntaxData> = vec![];
    let event = match event {
        EventExpression::EventObserved { name } => {
            SyntaxEvent::Observed { name: name.clone(), data, span: sp }
        }
        EventExpression::EventSignalled { name } => {
            SyntaxEvent::Signalled { name: name.clone(), data, span: sp }
        }
        EventExpression::InternalTraitement { name } => {
            SyntaxEvent::Internal { name: name.clone(), span: sp }
        }
        EventExpression::SuccesEvent { .. } => SyntaxEvent::Success { span: sp },
    };
    let target = match target.as_ref() {
        ProcessExpression::Prefix { .. } => SyntaxTarget::NestedPrefix(embed_prefix(target)),
        ProcessExpression::ProcessName { name } => {
            SyntaxTarget::NameRef { name: name.clone(), span: sp }
        }
        choice => SyntaxTarget::Parens(embed_expr(choice)),
    };
    SyntaxPrefix::EventArrow { event, target: Box::new(target) }
}

// ---------------------------------------------------------------------------
// Random well-formed configurations.
//
// Construction keeps every static check clean: all events in computations
// and glues are qualified by the owning port or role, port and role
// behaviors are derived from the body alphabet, glues signal only through
// the first role, and each component instance is attached to its partner
// connector instance's first role.

pub fn random_configuration(rng: &mut StdRng) -> Configuration {
    let pairs = rng.gen_range(1..=3);
    let letters = ["A", "B", "C"];
    let mut components = Vec::new();
    let mut connectors = Vec::new();
    let mut component_instances = Vec::new();
    let mut connector_instances = Vec::new();
    let mut attachments = Vec::new();

    for i in 0..pairs {
        let letter = letters[i];
        let computation = random_process(rng, 6, &GenOpts {
            observed_prefixes: &["p"],
            signalled_prefixes: &["p"],
            internals: true,
            recursion: "computation",
        });
        components.push(Component {
            name: format!("Comp{letter}"),
            ports: vec![Port { name: "p".to_owned(), behavior: derived_interface(&computation, "p") }],
            computation,
        });
        let glue = random_process(rng, 6, &GenOpts {
            observed_prefixes: &["r1", "r2"],
            signalled_prefixes: &["r1"],
            internals: true,
            recursion: "glue",
        });
        connectors.push(Connector {
            name: format!("Conn{letter}"),
            roles: vec![
                Role { name: "r1".to_owned(), behavior: derived_interface(&glue, "r1") },
                Role { name: "r2".to_owned(), behavior: derived_interface(&glue, "r2") },
            ],
            glue,
        });
        let ci = format!("c{}", letter.to_lowercase());
        let yi = format!("y{}", letter.to_lowercase());
        component_instances.push(ComponentInstance { name: ci.clone(), type_name: format!("Comp{letter}") });
        connector_instances.push(ConnectorInstance { name: yi.clone(), type_name: format!("Conn{letter}") });
        attachments.push(Attachment {
            origin_instance: ci,
            origin_port: "p".to_owned(),
            target_instance: yi,
            target_role: "r1".to_owned(),
        });
    }

    Configuration {
        name: "Random".to_owned(),
        components,
        connectors,
        component_instances,
        connector_instances,
        attachments,
    }
}

struct GenOpts<'a> {
    observed_prefixes: &'a [&'a str],
    signalled_prefixes: &'a [&'a str],
    internals: bool,
    recursion: &'a str,
}

fn random_process(rng: &mut StdRng, depth: usize, opts: &GenOpts<'_>) -> ProcessExpression {
    if depth == 0 {
        return random_tail(rng, opts);
    }
    match rng.gen_range(0..10) {
        0..=5 => ProcessExpression::prefix(random_event(rng, opts), random_process(rng, depth - 1, opts)),
        6 | 7 => {
            let n = rng.gen_range(2..=4);
            ProcessExpression::InternalChoice {
                elements: (0..n)
                    .map(|_| {
                        ProcessExpression::prefix(
                            random_event(rng, opts),
                            random_process(rng, depth.saturating_sub(2), opts),
                        )
                    })
                    .collect(),
            }
        }
        _ => {
            let n = rng.gen_range(1..=2);
            let mut elements: Vec<ProcessExpression> = (0..n)
                .map(|_| {
                    ProcessExpression::prefix(
                        random_observed(rng, opts),
                        random_process(rng, depth.saturating_sub(2), opts),
                    )
                })
                .collect();
            elements.push(ProcessExpression::success_stop());
            ProcessExpression::ExternalChoice { elements }
        }
    }
}

fn random_tail(rng: &mut StdRng, opts: &GenOpts<'_>) -> ProcessExpression {
    if rng.gen_bool(0.5) {
        ProcessExpression::name(opts.recursion)
    } else {
        ProcessExpression::success_stop()
    }
}

fn random_observed(rng: &mut StdRng, opts: &GenOpts<'_>) -> EventExpression {
    let prefix = opts.observed_prefixes[rng.gen_range(0..opts.observed_prefixes.len())];
    let name = ["a", "b", "c"][rng.gen_range(0..3)];
    EventExpression::EventObserved { name: format!("{prefix}.{name}") }
}

fn random_event(rng: &mut StdRng, opts: &GenOpts<'_>) -> EventExpression {
    match rng.gen_range(0..8) {
        0..=2 => random_observed(rng, opts),
        3 | 4 => {
            let prefix = opts.signalled_prefixes[rng.gen_range(0..opts.signalled_prefixes.len())];
            let name = ["s", "u"][rng.gen_range(0..2)];
            EventExpression::EventSignalled { name: format!("{prefix}.{name}") }
        }
        5 | 6 if opts.internals => {
            let name = ["t1", "t2"][rng.gen_range(0..2)];
            EventExpression::InternalTraitement { name: name.to_owned() }
        }
        _ => EventExpression::success(),
    }
}

/// Port or role behavior: a prefix chain over the body's events qualified by
/// `interface` (prefix stripped, kind kept), so the alphabet-inclusion checks
/// hold by construction.
fn derived_interface(body: &ProcessExpression, interface: &str) -> ProcessExpression {
    let mut events: Vec<EventExpression> = Vec::new();
    collect_interface(body, interface, &mut events);
    let mut expr = ProcessExpression::success_stop();
    for e in events.into_iter().rev() {
        expr = ProcessExpression::prefix(e, expr);
    }
    expr
}

fn collect_interface(expr: &ProcessExpression, interface: &str, out: &mut Vec<EventExpression>) {
    match expr {
        ProcessExpression::Prefix { event, target } => {
            let qualified = format!("{interface}.");
            match event {
                EventExpression::EventObserved { name } if name.starts_with(&qualified) => {
                    let e = EventExpression::EventObserved { name: name[qualified.len()..].to_owned() };
                    if !out.contains(&e) {
                        out.push(e);
                    }
                }
                EventExpression::EventSignalled { name } if name.starts_with(&qualified) => {
                    let e = EventExpression::EventSignalled { name: name[qualified.len()..].to_owned() };
                    if !out.contains(&e) {
                        out.push(e);
                    }
                }
                _ => {}
            }
            collect_interface(target, interface, out);
        }
        ProcessExpression::ExternalChoice { elements } | ProcessExpression::InternalChoice { elements } => {
            for e in elements {
                collect_interface(e, interface, out);
            }
        }
        ProcessExpression::ProcessName { .. } => {}
    }
}
