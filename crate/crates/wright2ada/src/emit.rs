//! Ada source printer and the token normalizer used for whitespace-blind
//! comparison of generated text against reference listings.

use crate::ada::{
    AdaDeclaration, AdaSpecification, AdaStatement, AdaSubprogramBody, CaseAlternative,
    SelectAlternative, TaskBody,
};

#[derive(Debug, Clone, Copy)]
pub struct EmitStyle {
    pub indent_width: usize,
}

impl Default for EmitStyle {
    fn default() -> Self {
        EmitStyle { indent_width: 3 }
    }
}

pub fn emit(program: &AdaSubprogramBody, style: EmitStyle) -> String {
    let mut p = Printer { out: String::new(), level: 0, width: style.indent_width.max(1) };
    p.subprogram_body(program);
    p.out
}

struct Printer {
    out: String,
    level: usize,
    width: usize,
}

impl Printer {
    fn line(&mut self, text: &str) {
        for _ in 0..self.level * self.width {
            self.out.push(' ');
        }
        self.out.push_str(text);
        self.out.push('\n');
    }

    fn indented(&mut self, f: impl FnOnce(&mut Self)) {
        self.level += 1;
        f(self);
        self.level -= 1;
    }

    fn spec_header(spec: &AdaSpecification) -> String {
        match spec {
            AdaSpecification::ProcedureSpec { designator } => format!("procedure {designator}"),
            AdaSpecification::FunctionSpec { designator, return_type } => {
                format!("function {designator} return {return_type}")
            }
        }
    }

    fn subprogram_body(&mut self, body: &AdaSubprogramBody) {
        self.line(&format!("{} is", Self::spec_header(&body.specification)));
        self.indented(|p| p.declarations(&body.declarations));
        self.line("begin");
        self.indented(|p| p.statements(&body.statements));
        self.line(&format!("end {};", body.specification.designator()));
    }

    fn declarations(&mut self, declarations: &[AdaDeclaration]) {
        for d in declarations {
            match d {
                AdaDeclaration::Specification(s) => self.line(&format!("{};", Self::spec_header(s))),
                AdaDeclaration::SubprogramBody(b) => self.subprogram_body(b),
                AdaDeclaration::SingleTask(t) => {
                    if t.entries.is_empty() {
                        self.line(&format!("task {};", t.identifier));
                    } else {
                        self.line(&format!("task {} is", t.identifier));
                        self.indented(|p| {
                            for e in &t.entries {
                                p.line(&format!("entry {};", e.identifier));
                            }
                        });
                        self.line(&format!("end {};", t.identifier));
                    }
                }
                AdaDeclaration::TaskBody(t) => self.task_body(t),
            }
        }
    }

    fn task_body(&mut self, task: &TaskBody) {
        self.line(&format!("task body {} is", task.identifier));
        self.indented(|p| p.declarations(&task.declarations));
        self.line("begin");
        self.indented(|p| p.statements(&task.statements));
        self.line(&format!("end {};", task.identifier));
    }

    fn statements(&mut self, statements: &[AdaStatement]) {
        for s in statements {
            self.statement(s);
        }
    }

    fn statement(&mut self, s: &AdaStatement) {
        match s {
            AdaStatement::NullStatement => self.line("null;"),
            AdaStatement::ExitStatement { condition } => match condition {
                Some(c) => self.line(&format!("exit when {};", c.text)),
                None => self.line("exit;"),
            },
            AdaStatement::ReturnStatement { expression } => match expression {
                Some(e) => self.line(&format!("return {};", e.text)),
                None => self.line("return;"),
            },
            AdaStatement::ProcedureCall { name } => self.line(&format!("{name};")),
            AdaStatement::EntryCall { entry_name } => self.line(&format!("{entry_name};")),
            AdaStatement::SimpleAccept(a) => self.line(&format!("accept {};", a.direct_name)),
            AdaStatement::SimpleLoop { statements } => {
                self.line("loop");
                self.indented(|p| p.statements(statements));
                self.line("end loop;");
            }
            AdaStatement::IfElse { condition, then_statements, else_statements } => {
                self.line(&format!("if {} then", condition.text));
                self.indented(|p| p.statements(then_statements));
                if !else_statements.is_empty() {
                    self.line("else");
                    self.indented(|p| p.statements(else_statements));
                }
                self.line("end if;");
            }
            AdaStatement::CaseStatement { expression, alternatives } => {
                self.line(&format!("case {} is", expression.text));
                self.indented(|p| {
                    let mut has_others = false;
                    for a in alternatives {
                        if a.choice == "others" {
                            has_others = true;
                            continue;
                        }
                        p.case_alternative(a);
                    }
                    if has_others {
                        for a in alternatives.iter().filter(|a| a.choice == "others") {
                            p.case_alternative(a);
                        }
                    } else {
                        p.line("when others => null;");
                    }
                });
                self.line("end case;");
            }
            AdaStatement::SelectOr { alternatives } => {
                self.line("select");
                // Terminate is always printed last.
                let (terminates, accepts): (Vec<_>, Vec<_>) = alternatives
                    .iter()
                    .partition(|a| matches!(a, SelectAlternative::TerminateAlternative));
                let mut first = true;
                for a in accepts.iter().chain(terminates.iter()) {
                    if !first {
                        self.line("or");
                    }
                    first = false;
                    self.indented(|p| match a {
                        SelectAlternative::AcceptAlternative { accept, statements } => {
                            p.line(&format!("accept {};", accept.direct_name));
                            p.statements(statements);
                        }
                        SelectAlternative::TerminateAlternative => p.line("terminate;"),
                    });
                }
                self.line("end select;");
            }
        }
    }

    fn case_alternative(&mut self, a: &CaseAlternative) {
        self.line(&format!("when {} =>", a.choice));
        self.indented(|p| {
            if a.statements.is_empty() {
                p.line("null;");
            } else {
                p.statements(&a.statements);
            }
        });
    }
}

/// Ada-lexical token texts in order: identifier/number runs are one token,
/// `=>` is one token, every other non-space character stands alone.
/// Comments (`--` to end of line) are dropped.
pub fn normalize_tokens(ada_text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    for line in ada_text.lines() {
        let code = match line.find("--") {
            Some(i) => &line[..i],
            None => line,
        };
        let chars: Vec<char> = code.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_alphanumeric() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                tokens.push(chars[start..i].iter().collect());
            } else if c == '=' && i + 1 < chars.len() && chars[i + 1] == '>' {
                tokens.push("=>".to_owned());
                i += 2;
            } else {
                tokens.push(c.to_string());
                i += 1;
            }
        }
    }
    tokens
}
