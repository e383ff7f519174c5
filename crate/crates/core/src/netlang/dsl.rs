use std::collections::HashMap;
use std::fmt::Write as _;

use super::{ParseError, ParseErrorKind};
use crate::circuit::{Gate, GateId, GatePool};
use crate::error::Result;
use crate::network::AutomataNetwork;
use crate::parallel::TransientNetwork;
use crate::schedule::UpdateSchedule;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Const(bool),
    Not,
    And,
    Or,
    LParen,
    RParen,
    Eq,
    LBrace,
    RBrace,
    Comma,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Const(b) => format!("`{}`", u8::from(*b)),
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eq => "`=`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    column: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Strips a `#` comment.
fn code_of(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn tokenize(line: &str, line_no: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let single = match c {
            '!' => Some(Tok::Not),
            '&' => Some(Tok::And),
            '|' => Some(Tok::Or),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '=' => Some(Tok::Eq),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = single {
            tokens.push(Token { tok, column });
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            let ident: String = chars[start..i].iter().collect();
            tokens.push(Token {
                tok: Tok::Ident(ident),
                column,
            });
        } else if (c == '0' || c == '1') && !chars.get(i + 1).is_some_and(|&d| is_ident_char(d)) {
            tokens.push(Token {
                tok: Tok::Const(c == '1'),
                column,
            });
            i += 1;
        } else {
            return Err(ParseError {
                line: line_no,
                column,
                kind: ParseErrorKind::UnexpectedChar(c),
            });
        }
    }
    Ok(tokens)
}

struct ExprParser<'a> {
    tokens: &'a [Token],
    pos: usize,
    line: usize,
    end_column: usize,
    names: &'a HashMap<&'a str, usize>,
    pool: &'a mut GatePool,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn error_here(&self, expected: &'static str) -> ParseError {
        match self.tokens.get(self.pos) {
            Some(t) => ParseError {
                line: self.line,
                column: t.column,
                kind: ParseErrorKind::Expected {
                    expected,
                    found: t.tok.describe(),
                },
            },
            None => ParseError {
                line: self.line,
                column: self.end_column,
                kind: ParseErrorKind::Expected {
                    expected,
                    found: "end of line".into(),
                },
            },
        }
    }

    fn expr(&mut self) -> Result<GateId, ParseError> {
        let mut terms = vec![self.term()?];
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms[0]
        } else {
            self.pool.or(terms)
        })
    }

    fn term(&mut self) -> Result<GateId, ParseError> {
        let mut factors = vec![self.factor()?];
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 {
            factors[0]
        } else {
            self.pool.and(factors)
        })
    }

    fn factor(&mut self) -> Result<GateId, ParseError> {
        let Some(token) = self.tokens.get(self.pos) else {
            return Err(self.error_here("an expression"));
        };
        match &token.tok {
            Tok::Not => {
                self.pos += 1;
                let inner = self.factor()?;
                Ok(self.pool.not(inner))
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error_here("`)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Tok::Const(b) => {
                self.pos += 1;
                Ok(self.pool.constant(*b))
            }
            Tok::Ident(name) => match self.names.get(name.as_str()) {
                Some(&i) => {
                    self.pos += 1;
                    Ok(self.pool.input(i))
                }
                None => Err(ParseError {
                    line: self.line,
                    column: token.column,
                    kind: ParseErrorKind::UndeclaredVariable(name.clone()),
                }),
            },
            _ => Err(self.error_here("an expression")),
        }
    }
}

fn parse_expr_tokens(
    tokens: &[Token],
    line: usize,
    end_column: usize,
    names: &HashMap<&str, usize>,
    pool: &mut GatePool,
) -> Result<GateId, ParseError> {
    let mut p = ExprParser {
        tokens,
        pos: 0,
        line,
        end_column,
        names,
        pool,
    };
    let root = p.expr()?;
    if p.pos < tokens.len() {
        return Err(p.error_here("an operator or end of line"));
    }
    Ok(root)
}

/// Parses a single expression over the given automaton names into `pool`.
pub fn parse_expression(
    text: &str,
    names: &[String],
    pool: &mut GatePool,
) -> Result<GateId, ParseError> {
    let index: HashMap<&str, usize> = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let tokens = tokenize(text, 1)?;
    parse_expr_tokens(&tokens, 1, text.chars().count() + 1, &index, pool)
}

/// Parses a DSL document into a network with one tree-shaped circuit per line.
pub fn parse_network(text: &str) -> Result<AutomataNetwork> {
    struct Decl {
        line: usize,
        end_column: usize,
        tokens: Vec<Token>,
    }
    let mut names: Vec<String> = Vec::new();
    let mut decls = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let code = code_of(raw);
        let tokens = tokenize(code, line)?;
        if tokens.is_empty() {
            continue;
        }
        let name = match &tokens[0].tok {
            Tok::Ident(name) => name.clone(),
            other => {
                return Err(ParseError {
                    line,
                    column: tokens[0].column,
                    kind: ParseErrorKind::Expected {
                        expected: "an automaton name",
                        found: other.describe(),
                    },
                }
                .into())
            }
        };
        match tokens.get(1) {
            Some(Token { tok: Tok::Eq, .. }) => {}
            Some(t) => {
                return Err(ParseError {
                    line,
                    column: t.column,
                    kind: ParseErrorKind::Expected {
                        expected: "`=`",
                        found: t.tok.describe(),
                    },
                }
                .into())
            }
            None => {
                return Err(ParseError {
                    line,
                    column: code.chars().count() + 1,
                    kind: ParseErrorKind::Expected {
                        expected: "`=`",
                        found: "end of line".into(),
                    },
                }
                .into())
            }
        }
        if index.contains_key(&name) {
            return Err(ParseError {
                line,
                column: tokens[0].column,
                kind: ParseErrorKind::DuplicateAutomaton(name),
            }
            .into());
        }
        index.insert(name.clone(), names.len());
        names.push(name);
        decls.push(Decl {
            line,
            end_column: code.chars().count() + 1,
            tokens: tokens[2..].to_vec(),
        });
    }
    let lookup: HashMap<&str, usize> = index.iter().map(|(k, &v)| (k.as_str(), v)).collect();
    let mut pool = GatePool::new();
    let mut outputs = Vec::with_capacity(decls.len());
    for d in &decls {
        outputs.push(parse_expr_tokens(
            &d.tokens,
            d.line,
            d.end_column,
            &lookup,
            &mut pool,
        )?);
    }
    AutomataNetwork::new(names, pool, outputs)
}

/// Parses `{a,b} {c} ...` against the automaton names of a network.
pub fn parse_schedule(text: &str, names: &[String]) -> Result<UpdateSchedule> {
    let index: HashMap<&str, usize> = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut current: Option<(Vec<usize>, usize, usize)> = None;
    let mut last = (1, 1);
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        for t in tokenize(code_of(raw), line)? {
            last = (line, t.column);
            let unexpected = |expected: &'static str| ParseError {
                line,
                column: t.column,
                kind: ParseErrorKind::Expected {
                    expected,
                    found: t.tok.describe(),
                },
            };
            match (&t.tok, current.as_mut()) {
                (Tok::LBrace, None) => current = Some((Vec::new(), line, t.column)),
                (Tok::Ident(name), Some((block, _, _))) => match index.get(name.as_str()) {
                    Some(&i) => block.push(i),
                    None => {
                        return Err(ParseError {
                            line,
                            column: t.column,
                            kind: ParseErrorKind::UnknownAutomaton(name.clone()),
                        }
                        .into())
                    }
                },
                (Tok::Comma, Some(_)) => {}
                (Tok::RBrace, Some(_)) => {
                    let (block, bl, bc) = current.take().expect("open block");
                    if block.is_empty() {
                        return Err(ParseError {
                            line: bl,
                            column: bc,
                            kind: ParseErrorKind::EmptyBlock,
                        }
                        .into());
                    }
                    blocks.push(block);
                }
                (_, None) => return Err(unexpected("`{`").into()),
                (_, Some(_)) => return Err(unexpected("an automaton name or `}`").into()),
            }
        }
    }
    if let Some((_, line, column)) = current {
        return Err(ParseError {
            line,
            column,
            kind: ParseErrorKind::Expected {
                expected: "`}`",
                found: "end of input".into(),
            },
        }
        .into());
    }
    if blocks.is_empty() && !names.is_empty() {
        return Err(ParseError {
            line: last.0,
            column: last.1,
            kind: ParseErrorKind::EmptySchedule,
        }
        .into());
    }
    if blocks.is_empty() {
        return Ok(UpdateSchedule::parallel(0));
    }
    UpdateSchedule::new(names.len(), blocks)
}

const PREC_OR: u8 = 1;
const PREC_AND: u8 = 2;

fn write_gate(pool: &GatePool, id: GateId, names: &[String], parent: u8, out: &mut String) {
    let gate = pool.gate(id);
    if let Some(target) = gate.wire_target() {
        return write_gate(pool, target, names, parent, out);
    }
    match gate {
        Gate::Input(i) => out.push_str(&names[*i]),
        Gate::Theta(i) => {
            let _ = write!(out, "θ{}", names[*i]);
        }
        Gate::Const(b) => out.push(if *b { '1' } else { '0' }),
        Gate::Not(c) => {
            out.push('!');
            write_gate(pool, *c, names, u8::MAX, out);
        }
        Gate::And(cs) | Gate::Or(cs) => {
            let (prec, sep) = if matches!(gate, Gate::And(_)) {
                (PREC_AND, " & ")
            } else {
                (PREC_OR, " | ")
            };
            let parens = prec <= parent;
            if parens {
                out.push('(');
            }
            for (k, &c) in cs.iter().enumerate() {
                if k > 0 {
                    out.push_str(sep);
                }
                write_gate(pool, c, names, prec, out);
            }
            if parens {
                out.push(')');
            }
        }
    }
}

/// Renders the circuit rooted at `root` as a DSL expression. Shared gates
/// are expanded, so the text can be much larger than the circuit.
pub fn emit_expression(pool: &GatePool, root: GateId, names: &[String]) -> String {
    let mut out = String::new();
    write_gate(pool, root, names, 0, &mut out);
    out
}

pub fn emit_network(net: &AutomataNetwork) -> String {
    let mut out = String::new();
    for i in 0..net.len() {
        let _ = writeln!(
            out,
            "{} = {}",
            net.name(i),
            emit_expression(net.pool(), net.outputs()[i], net.names())
        );
    }
    out
}

/// Human-readable dump of a network still holding theta placeholders.
pub fn emit_transient(net: &TransientNetwork) -> String {
    let mut out = String::new();
    for i in 0..net.len() {
        let _ = writeln!(
            out,
            "{} = {}",
            net.names()[i],
            emit_expression(net.pool(), net.outputs()[i], net.names())
        );
    }
    out
}

pub fn emit_schedule(schedule: &UpdateSchedule, names: &[String]) -> String {
    schedule
        .blocks()
        .iter()
        .map(|b| {
            let inner: Vec<&str> = b.iter().map(|&i| names[i].as_str()).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}
