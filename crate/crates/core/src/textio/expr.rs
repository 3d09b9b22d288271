use std::fmt::Write as _;
use std::sync::Arc;

use crate::tiles::{is_tile_name, typecheck, NodeId, Pipeline, PipelineBuilder, Registry, Signature, Span};

use super::error::{position, ParseError, ParseErrorKind};

/// Syntax tree of a pipeline expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineExpr {
    pub name: String,
    pub name_span: Span,
    /// Empty for a bare name.
    pub args: Vec<PipelineExpr>,
    /// The whole expression, from the name to the closing parenthesis.
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token<'t> {
    Name(&'t str),
    Open,
    Close,
    Comma,
    End,
}

struct Parser<'t> {
    text: &'t str,
    pos: usize,
}

impl<'t> Parser<'t> {
    fn error(&self, offset: usize, message: impl Into<String>) -> ParseError {
        ParseError::new(ParseErrorKind::Syntax, position(self.text, offset), message)
    }

    fn skip_whitespace(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    /// Next token and its byte range, without consuming it.
    fn peek(&mut self) -> Result<(Token<'t>, Span), ParseError> {
        self.skip_whitespace();
        let start = self.pos;
        let rest = &self.text[start..];
        let Some(c) = rest.chars().next() else { return Ok((Token::End, Span { start, end: start })) };
        let token = match c {
            '(' => Token::Open,
            ')' => Token::Close,
            ',' => Token::Comma,
            c if c.is_ascii_alphabetic() => {
                let len = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '-')).unwrap_or(rest.len());
                let name = &rest[..len];
                debug_assert!(is_tile_name(name));
                return Ok((Token::Name(name), Span { start, end: start + len }));
            }
            other => return Err(self.error(start, format!("unexpected character `{other}`"))),
        };
        Ok((token, Span { start, end: start + 1 }))
    }

    fn next(&mut self) -> Result<(Token<'t>, Span), ParseError> {
        let (token, span) = self.peek()?;
        self.pos = span.end;
        Ok((token, span))
    }

    fn describe(token: Token<'_>) -> String {
        match token {
            Token::Name(name) => format!("`{name}`"),
            Token::Open => "`(`".into(),
            Token::Close => "`)`".into(),
            Token::Comma => "`,`".into(),
            Token::End => "end of input".into(),
        }
    }

    fn expr(&mut self) -> Result<PipelineExpr, ParseError> {
        let (token, name_span) = self.next()?;
        let Token::Name(name) = token else {
            return Err(self.error(name_span.start, format!("expected a tile name, found {}", Self::describe(token))));
        };
        let mut expr = PipelineExpr { name: name.to_owned(), name_span, args: Vec::new(), span: name_span };
        if self.peek()?.0 != Token::Open {
            return Ok(expr);
        }
        self.next()?;
        loop {
            expr.args.push(self.expr()?);
            let (token, span) = self.next()?;
            match token {
                Token::Comma => {}
                Token::Close => {
                    expr.span.end = span.end;
                    return Ok(expr);
                }
                other => return Err(self.error(span.start, format!("expected `,` or `)`, found {}", Self::describe(other)))),
            }
        }
    }
}

/// Parses `expr := NAME | NAME "(" expr ("," expr)* ")"`.
pub fn parse_expr(text: &str) -> Result<PipelineExpr, ParseError> {
    let mut parser = Parser { text, pos: 0 };
    let expr = parser.expr()?;
    match parser.next()? {
        (Token::End, _) => Ok(expr),
        (token, span) => Err(parser.error(span.start, format!("unexpected {} after expression", Parser::describe(token)))),
    }
}

fn lower(expr: &PipelineExpr, text: &str, registry: &Registry, b: &mut PipelineBuilder) -> Result<NodeId, ParseError> {
    let at = |span: Span| position(text, span.start);
    let tile = registry
        .get(&expr.name)
        .ok_or_else(|| ParseError::new(ParseErrorKind::UnknownTile, at(expr.name_span), format!("unknown tile `{}`", expr.name)))?;
    let arity_error = |wanted: &str| {
        ParseError::new(
            ParseErrorKind::Arity,
            at(expr.span),
            format!("tile `{}` takes {wanted}, got {}", expr.name, expr.args.len()),
        )
    };
    match (tile.signature(), expr.args.len()) {
        (Signature::Constant(_), 0) => {}
        (Signature::Constant(_), _) => return Err(arity_error("no arguments")),
        (Signature::Pair, n) if n < 2 => return Err(arity_error("at least 2 arguments")),
        (_, 0) => return Err(arity_error("an argument")),
        _ => {}
    }
    let args = expr.args.iter().map(|a| lower(a, text, registry, b)).collect::<Result<Vec<_>, _>>()?;
    let span = Some(expr.span);
    let inputs = match (tile.signature(), args.as_slice()) {
        (Signature::Pair, _) | (_, [] | [_]) => args,
        _ => vec![b.add_with_span(registry.get("pair").unwrap_or_else(|| Arc::new(crate::tiles::pair())), args, span)],
    };
    Ok(b.add_with_span(tile, inputs, span))
}

/// Parses and typechecks a pipeline expression.
///
/// An application with several arguments feeds a `pair` node, so
/// `f(x, y)` and `f(pair(x, y))` denote the same pipeline.
pub fn parse_pipeline(text: &str, registry: &Registry) -> Result<Pipeline, ParseError> {
    let expr = parse_expr(text)?;
    let mut builder = PipelineBuilder::new();
    lower(&expr, text, registry, &mut builder)?;
    let pipeline = builder.build().expect("expression trees are single-sink DAGs");
    if let Err(type_error) = typecheck(&pipeline) {
        let offset = type_error.span.map_or(0, |s| s.start);
        let mut err = ParseError::new(ParseErrorKind::Type, position(text, offset), type_error.to_string());
        err.type_error = Some(Box::new(type_error));
        return Err(err);
    }
    Ok(pipeline)
}

/// Renders a pipeline in functional notation, unfolding shared nodes.
pub fn pretty_print(p: &Pipeline) -> String {
    fn go(p: &Pipeline, id: NodeId, out: &mut String) {
        let node = p.node(id);
        out.push_str(node.tile.name());
        let args: &[NodeId] = match node.inputs.as_slice() {
            [] => return,
            [single] if !node.is_pair() && p.node(*single).is_pair() => &p.node(*single).inputs,
            inputs => inputs,
        };
        out.push('(');
        for (i, &arg) in args.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            go(p, arg, out);
        }
        out.push(')');
    }
    let mut out = String::new();
    go(p, p.root(), &mut out);
    out
}

/// Renders the syntax tree back to text.
impl std::fmt::Display for PipelineExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name)?;
        if !self.args.is_empty() {
            f.write_char('(')?;
            for (i, arg) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{arg}")?;
            }
            f.write_char(')')?;
        }
        Ok(())
    }
}
