//! Recursive-descent parser for the Wright concrete grammar.
//!
//! The only ambiguity in the grammar sits in `TargetPrefix`: after `->`, an
//! identifier may start a nested prefix (`b -> c`) or stand alone as a process
//! name. It is resolved with bounded lookahead — if the identifier (plus any
//! data markers) is followed by `->`, a nested prefix is parsed, otherwise a
//! name reference.

use super::*;
use crate::diag::SourceSpan;

pub fn parse_configuration(tokens: &[Token]) -> Result<SyntaxConfiguration, SyntaxError> {
    parse_configuration_with_coverage(tokens).map(|(config, _)| config)
}

/// Same as [`parse_configuration`] but also reports which grammar productions
/// fired, for coverage-instrumented runs.
pub fn parse_configuration_with_coverage(
    tokens: &[Token],
) -> Result<(SyntaxConfiguration, Coverage), SyntaxError> {
    let mut p = Parser {
        tokens,
        pos: 0,
        depth: 0,
        coverage: Coverage::default(),
    };
    let config = p.configuration()?;
    if p.pos < p.tokens.len() {
        return Err(p.err_here("expected end of input"));
    }
    Ok((config, p.coverage))
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    depth: usize,
    coverage: Coverage,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn peek_at(&self, offset: usize) -> Option<&'a Token> {
        self.tokens.get(self.pos + offset)
    }

    fn bump(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(t) if t.kind == TokenKind::Keyword && t.text == kw)
    }

    fn at_symbol(&self, sym: &str) -> bool {
        matches!(self.peek(), Some(t) if t.kind == TokenKind::Symbol && t.text == sym)
    }

    fn eof_span(&self) -> SourceSpan {
        self.tokens
            .last()
            .map(|t| {
                SourceSpan::new(t.span.line, t.span.column + t.span.length, 0)
            })
            .unwrap_or_else(|| SourceSpan::new(1, 1, 0))
    }

    fn err_here(&self, expected: &str) -> SyntaxError {
        match self.peek() {
            Some(t) => SyntaxError {
                message: format!("expected {expected}, found '{}'", t.text),
                span: t.span,
            },
            None => SyntaxError {
                message: format!("expected {expected}, found end of input"),
                span: self.eof_span(),
            },
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<&'a Token, SyntaxError> {
        if self.at_keyword(kw) {
            Ok(self.bump().unwrap())
        } else {
            Err(self.err_here(&format!("'{kw}'")))
        }
    }

    fn expect_symbol(&mut self, sym: &str) -> Result<&'a Token, SyntaxError> {
        if self.at_symbol(sym) {
            Ok(self.bump().unwrap())
        } else {
            Err(self.err_here(&format!("'{sym}'")))
        }
    }

    fn expect_identifier(&mut self, what: &str) -> Result<&'a Token, SyntaxError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Identifier => Ok(self.bump().unwrap()),
            _ => Err(self.err_here(what)),
        }
    }

    fn configuration(&mut self) -> Result<SyntaxConfiguration, SyntaxError> {
        self.expect_keyword("Configuration")?;
        let name = self.expect_identifier("configuration name")?;

        let mut types = Vec::new();
        while self.at_keyword("Component") || self.at_keyword("Connector") {
            self.coverage.mark(Production::Type);
            types.push(self.type_decl()?);
        }

        self.expect_keyword("Instances")?;
        let mut instances = Vec::new();
        while matches!(self.peek(), Some(t) if t.kind == TokenKind::Identifier) {
            instances.push(self.instance()?);
        }

        self.expect_keyword("Attachments")?;
        let mut attachments = Vec::new();
        while matches!(self.peek(), Some(t) if t.kind == TokenKind::Identifier) {
            attachments.push(self.attachment()?);
        }

        self.expect_keyword("End")?;
        self.expect_keyword("Configuration")?;
        self.coverage.mark(Production::Configuration);

        Ok(SyntaxConfiguration {
            name: name.text.clone(),
            name_span: name.span,
            types,
            instances,
            attachments,
        })
    }

    fn type_decl(&mut self) -> Result<SyntaxType, SyntaxError> {
        if self.at_keyword("Component") {
            self.bump();
            let name = self.expect_identifier("component name")?;
            let mut ports = Vec::new();
            while self.at_keyword("Port") {
                ports.push(self.port_or_role("Port", "port name")?);
                self.coverage.mark(Production::Port);
            }
            if ports.is_empty() {
                return Err(self.err_here("'Port'"));
            }
            self.expect_keyword("Computation")?;
            self.expect_symbol("=")?;
            let computation = self.process_expression()?;
            self.coverage.mark(Production::Component);
            Ok(SyntaxType::ComponentDecl {
                name: name.text.clone(),
                name_span: name.span,
                ports,
                computation,
            })
        } else {
            self.expect_keyword("Connector")?;
            let name = self.expect_identifier("connector name")?;
            let mut roles = Vec::new();
            while self.at_keyword("Role") {
                roles.push(self.port_or_role("Role", "role name")?);
                self.coverage.mark(Production::Role);
            }
            if roles.is_empty() {
                return Err(self.err_here("'Role'"));
            }
            self.expect_keyword("Glue")?;
            self.expect_symbol("=")?;
            let glue = self.process_expression()?;
            self.coverage.mark(Production::Connector);
            Ok(SyntaxType::ConnectorDecl {
                name: name.text.clone(),
                name_span: name.span,
                roles,
                glue,
            })
        }
    }

    fn port_or_role(&mut self, kw: &str, what: &str) -> Result<SyntaxPortOrRole, SyntaxError> {
        self.expect_keyword(kw)?;
        let name = self.expect_identifier(what)?;
        self.expect_symbol("=")?;
        let behavior = self.process_expression()?;
        Ok(SyntaxPortOrRole {
            name: name.text.clone(),
            name_span: name.span,
            behavior,
        })
    }

    fn instance(&mut self) -> Result<SyntaxInstance, SyntaxError> {
        let name = self.expect_identifier("instance name")?;
        self.expect_symbol(":")?;
        self.coverage.mark(Production::Instance);
        if self.at_keyword("Component") {
            self.bump();
            let ty = self.expect_identifier("component type name")?;
            self.coverage.mark(Production::ComponentInstance);
            Ok(SyntaxInstance::ComponentInstanceDecl {
                name: name.text.clone(),
                name_span: name.span,
                type_name: ty.text.clone(),
                type_span: ty.span,
            })
        } else if self.at_keyword("Connector") {
            self.bump();
            let ty = self.expect_identifier("connector type name")?;
            self.coverage.mark(Production::ConnectorInstance);
            Ok(SyntaxInstance::ConnectorInstanceDecl {
                name: name.text.clone(),
                name_span: name.span,
                type_name: ty.text.clone(),
                type_span: ty.span,
            })
        } else {
            Err(self.err_here("'Component' or 'Connector'"))
        }
    }

    fn attachment(&mut self) -> Result<SyntaxAttachment, SyntaxError> {
        let origin_instance = self.expect_identifier("component instance name")?;
        self.expect_symbol("-")?;
        let origin_port = self.expect_identifier("port name")?;
        self.expect_keyword("As")?;
        let target_instance = self.expect_identifier("connector instance name")?;
        self.expect_symbol("-")?;
        let target_role = self.expect_identifier("role name")?;
        self.coverage.mark(Production::Attachment);
        Ok(SyntaxAttachment {
            origin_instance_name: origin_instance.text.clone(),
            origin_port_name: origin_port.text.clone(),
            target_instance_name: target_instance.text.clone(),
            target_role_name: target_role.text.clone(),
            span: origin_instance.span,
        })
    }

    fn process_expression(&mut self) -> Result<SyntaxProcessExpression, SyntaxError> {
        let right = self.prefix()?;
        let mut ec_left = Vec::new();
        let mut ic_left = Vec::new();
        if self.at_symbol("[]") {
            while self.at_symbol("[]") {
                self.bump();
                ec_left.push(self.prefix()?);
            }
        } else if self.at_symbol("|~|") {
            while self.at_symbol("|~|") {
                self.bump();
                ic_left.push(self.prefix()?);
            }
        }
        self.coverage.mark(Production::ProcessExpression);
        Ok(SyntaxProcessExpression { right, ec_left, ic_left })
    }

    fn prefix(&mut self) -> Result<SyntaxPrefix, SyntaxError> {
        self.coverage.mark(Production::Prefix);
        match self.peek() {
            Some(t) if t.kind == TokenKind::Symbol && t.text == "§" => {
                let span = t.span;
                self.bump();
                Ok(SyntaxPrefix::Sugar { kind: SugarKind::Section, span })
            }
            Some(t) if t.kind == TokenKind::Identifier && t.text == "SKIP" && !self.arrow_follows_event() => {
                let span = t.span;
                self.bump();
                Ok(SyntaxPrefix::Sugar { kind: SugarKind::Skip, span })
            }
            _ => {
                let event = self.event_expression()?;
                self.expect_symbol("->")?;
                let target = self.target_prefix()?;
                Ok(SyntaxPrefix::EventArrow { event, target: Box::new(target) })
            }
        }
    }

    fn event_expression(&mut self) -> Result<SyntaxEvent, SyntaxError> {
        self.coverage.mark(Production::EventExpression);
        if self.at_symbol("_") {
            let marker = self.bump().unwrap();
            let name = self.expect_identifier("event name")?;
            let data = self.data_list()?;
            self.coverage.mark(Production::EventSignalled);
            Ok(SyntaxEvent::Signalled {
                name: name.text.clone(),
                data,
                span: marker.span,
            })
        } else if self.at_symbol("-") {
            let marker = self.bump().unwrap();
            let name = self.expect_identifier("event name")?;
            self.coverage.mark(Production::InternalTraitement);
            Ok(SyntaxEvent::Internal { name: name.text.clone(), span: marker.span })
        } else {
            match self.peek() {
                Some(t) if t.kind == TokenKind::Identifier && t.text == "V" => {
                    let span = t.span;
                    self.bump();
                    self.coverage.mark(Production::SuccesEvent);
                    Ok(SyntaxEvent::Success { span })
                }
                Some(t) if t.kind == TokenKind::Identifier => {
                    let name = self.bump().unwrap();
                    let data = self.data_list()?;
                    self.coverage.mark(Production::EventObserved);
                    Ok(SyntaxEvent::Observed {
                        name: name.text.clone(),
                        data,
                        span: name.span,
                    })
                }
                _ => Err(self.err_here("event, '§', 'SKIP', '(' or process name")),
            }
        }
    }

    fn data_list(&mut self) -> Result<Vec<SyntaxData>, SyntaxError> {
        let mut data = Vec::new();
        while self.at_symbol("?") || self.at_symbol("!") {
            let marker = self.bump().unwrap();
            let direction = if marker.text == "?" { DataDirection::In } else { DataDirection::Out };
            let name = self.expect_identifier("data name")?;
            self.coverage.mark(Production::Data);
            data.push(SyntaxData {
                direction,
                name: name.text.clone(),
                span: marker.span,
            });
        }
        Ok(data)
    }

    fn target_prefix(&mut self) -> Result<SyntaxTarget, SyntaxError> {
        self.coverage.mark(Production::TargetPrefix);
        if self.at_symbol("(") {
            if self.depth >= MAX_NESTING_DEPTH {
                return Err(self.err_here("a less deeply nested expression"));
            }
            self.bump();
            self.depth += 1;
            let inner = self.process_expression()?;
            self.depth -= 1;
            self.expect_symbol(")")?;
            self.coverage.mark(Production::Parentheses);
            return Ok(SyntaxTarget::Parens(inner));
        }
        if self.at_symbol("§") || self.at_symbol("_") || self.at_symbol("-") {
            return Ok(SyntaxTarget::NestedPrefix(self.prefix()?));
        }
        match self.peek() {
            Some(t) if t.kind == TokenKind::Identifier => {
                if self.arrow_follows_event() {
                    Ok(SyntaxTarget::NestedPrefix(self.prefix()?))
                } else if t.text == "SKIP" {
                    Ok(SyntaxTarget::NestedPrefix(self.prefix()?))
                } else {
                    let name = self.bump().unwrap();
                    self.coverage.mark(Production::ProcessName);
                    Ok(SyntaxTarget::NameRef { name: name.text.clone(), span: name.span })
                }
            }
            _ => Err(self.err_here("event, '§', 'SKIP', '(' or process name")),
        }
    }

    /// Looks past the identifier at the cursor (and any `?x` / `!x` data
    /// items) to see whether `->` follows, i.e. whether the identifier starts
    /// a nested prefix.
    fn arrow_follows_event(&self) -> bool {
        let mut offset = 1;
        loop {
            match self.peek_at(offset) {
                Some(t) if t.kind == TokenKind::Symbol && (t.text == "?" || t.text == "!") => {
                    match self.peek_at(offset + 1) {
                        Some(n) if n.kind == TokenKind::Identifier => offset += 2,
                        _ => return false,
                    }
                }
                Some(t) => return t.kind == TokenKind::Symbol && t.text == "->",
                None => return false,
            }
        }
    }
}
