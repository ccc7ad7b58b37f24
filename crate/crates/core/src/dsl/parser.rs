//! Recursive-descent parser with located diagnostics and an earlier-declaration scoping rule.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::poly::{MultiPoly, Scalar, Var};

use super::ast::*;
use super::error::{DslError, DslResult, Span};
use super::lexer::{tokenize, Tok, Token};

/// `d` is ∂, `x` and `x1`, `x2`, … are λ₁, λ₂, ….
pub fn variable(name: &str) -> Option<Var> {
    if name == "d" {
        return Some(Var::Partial);
    }
    if name == "x" {
        return Some(Var::Lambda(1));
    }
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().map(Var::Lambda)
}

pub fn parse(src: &str) -> DslResult<SourceFile> {
    let mut p = Parser::new(src)?;
    let mut items = Vec::new();
    while p.peek() != &Tok::Eof {
        items.push(p.item()?);
    }
    let file = SourceFile { items };
    check_scopes(&file)?;
    Ok(file)
}

/// Parse a standalone value such as a rendered witness, e.g. `(2*x1 + d) L`.
pub fn parse_value(src: &str) -> DslResult<Value> {
    let mut p = Parser::new(src)?;
    let v = p.value()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(v)
}

/// Parse a standalone polynomial in `d` and `x1, x2, …`.
pub fn parse_poly(src: &str) -> DslResult<MultiPoly> {
    let mut p = Parser::new(src)?;
    let v = p.poly()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(v)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> DslResult<Self> {
        Ok(Parser {
            toks: tokenize(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn prev_span(&self) -> Span {
        self.toks[self.pos.saturating_sub(1)].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> DslError {
        DslError::syntax(self.span(), expected, self.peek().to_string())
    }

    fn eat(&mut self, t: Tok) -> bool {
        if *self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> DslResult<Span> {
        if *self.peek() == t {
            Ok(self.bump().span)
        } else {
            Err(self.error(&[what]))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect_keyword(&mut self, kw: &str) -> DslResult<Span> {
        if self.is_keyword(kw) {
            Ok(self.bump().span)
        } else {
            Err(self.error(&[&format!("`{kw}`")]))
        }
    }

    /// A name that is not one of the reserved variables `d`, `x`, `x1`, ….
    fn name(&mut self, what: &str) -> DslResult<Ident> {
        match self.peek().clone() {
            Tok::Ident(s) if variable(&s).is_none() => {
                let span = self.bump().span;
                Ok(Ident { name: s, span })
            }
            _ => Err(self.error(&[what])),
        }
    }

    /// A word such as `twisted-rb`: identifiers joined by `-` without spaces.
    fn word(&mut self, expected: &[&str]) -> DslResult<Ident> {
        let Tok::Ident(first) = self.peek().clone() else {
            return Err(self.error(expected));
        };
        let mut span = self.bump().span;
        let mut s = first;
        while *self.peek() == Tok::Minus && self.span().start == span.end {
            let next = &self.toks[(self.pos + 1).min(self.toks.len() - 1)];
            match &next.tok {
                Tok::Ident(w) if next.span.start == self.span().end => {
                    s.push('-');
                    s.push_str(w);
                    self.bump();
                    span = span.to(self.bump().span);
                }
                _ => break,
            }
        }
        Ok(Ident { name: s, span })
    }

    fn integer(&mut self, what: &str) -> DslResult<(BigInt, Span)> {
        match self.peek().clone() {
            Tok::Int(s) => {
                let span = self.bump().span;
                Ok((s.parse().expect("lexer yields decimal digits"), span))
            }
            _ => Err(self.error(&[what])),
        }
    }

    fn small<T: TryFrom<BigInt>>(&mut self, what: &str) -> DslResult<T> {
        let (n, span) = self.integer(what)?;
        T::try_from(n).map_err(|_| DslError::syntax(span, &[what], "an out-of-range integer"))
    }

    fn name_list(&mut self) -> DslResult<Vec<Ident>> {
        let mut out = vec![self.name("generator name")?];
        while self.eat(Tok::Comma) {
            out.push(self.name("generator name")?);
        }
        Ok(out)
    }

    fn generators_clause(&mut self) -> DslResult<Vec<Ident>> {
        self.expect_keyword("generators")?;
        self.expect(Tok::Colon, "`:`")?;
        let g = self.name_list()?;
        self.expect(Tok::Semi, "`;`")?;
        Ok(g)
    }

    fn item(&mut self) -> DslResult<Item> {
        let start = self.span();
        let kw = self.word(&["declaration or directive"])?;
        let decl = match kw.name.as_str() {
            "algebra" => self.algebra()?,
            "module" => self.module()?,
            "rep" => self.rep()?,
            "map" => self.map()?,
            "cochain" => self.cochain()?,
            "tensor" => self.tensor()?,
            "nslie" => self.nslie()?,
            "check" => self.check()?,
            "twist" => self.twist()?,
            "classify" => self.classify()?,
            "cohomology" => self.cohomology()?,
            _ => {
                return Err(DslError::UnknownDirective {
                    name: kw.name,
                    span: kw.span,
                })
            }
        };
        Ok(Item {
            decl,
            span: start.to(self.prev_span()),
        })
    }

    fn algebra(&mut self) -> DslResult<Decl> {
        let name = self.name("algebra name")?;
        if self.eat(Tok::Eq) {
            self.expect_keyword("semidirect")?;
            let module = self.name("module name")?;
            let twist = if self.eat_keyword("twisted") {
                Some(self.name("cochain name")?)
            } else {
                None
            };
            self.expect(Tok::Semi, "`;`")?;
            return Ok(Decl::Algebra {
                name,
                body: AlgebraBody::Semidirect { module, twist },
            });
        }
        self.expect(Tok::LBrace, "`{` or `=`")?;
        let generators = self.generators_clause()?;
        let mut entries = Vec::new();
        while !self.eat(Tok::RBrace) {
            entries.push(self.bracket_entry()?);
        }
        Ok(Decl::Algebra {
            name,
            body: AlgebraBody::Explicit {
                generators,
                entries,
            },
        })
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.is_keyword(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn bracket_entry(&mut self) -> DslResult<Entry> {
        let start = self.expect(Tok::LBracket, "`[` or `}`")?;
        let args = self.name_list()?;
        self.expect(Tok::RBracket, "`]`")?;
        self.finish_entry(None, args, start)
    }

    fn finish_entry(
        &mut self,
        head: Option<Ident>,
        args: Vec<Ident>,
        start: Span,
    ) -> DslResult<Entry> {
        self.expect(Tok::Eq, "`=`")?;
        let value = self.value()?;
        self.expect(Tok::Semi, "`;`")?;
        Ok(Entry {
            head,
            args,
            value,
            span: start.to(self.prev_span()),
        })
    }

    /// `head(a, b, …) = value;` with `head` one of `heads`.
    fn call_entry(&mut self, heads: &[&str]) -> DslResult<Entry> {
        let expected: Vec<String> = heads
            .iter()
            .map(|h| format!("`{h}`"))
            .chain(["`}`".to_string()])
            .collect();
        let expected: Vec<&str> = expected.iter().map(String::as_str).collect();
        let head = match self.peek() {
            Tok::Ident(s) if heads.contains(&s.as_str()) => self.name("entry head")?,
            _ => return Err(self.error(&expected)),
        };
        let start = head.span;
        self.expect(Tok::LParen, "`(`")?;
        let args = self.name_list()?;
        self.expect(Tok::RParen, "`)`")?;
        self.finish_entry(Some(head), args, start)
    }

    fn module(&mut self) -> DslResult<Decl> {
        let name = self.name("module name")?;
        self.expect_keyword("over")?;
        let over = self.name("algebra name")?;
        self.expect(Tok::LBrace, "`{`")?;
        let generators = self.generators_clause()?;
        let mut entries = Vec::new();
        while !self.eat(Tok::RBrace) {
            entries.push(self.call_entry(&["rho"])?);
        }
        Ok(Decl::Module {
            name,
            over,
            generators,
            entries,
        })
    }

    fn rep(&mut self) -> DslResult<Decl> {
        let name = self.name("representation name")?;
        self.expect(Tok::Eq, "`=`")?;
        let body = if self.eat_keyword("adjoint") {
            RepBody::Adjoint(self.name("algebra name")?)
        } else if self.eat_keyword("dual") {
            RepBody::Dual(self.name("module name")?)
        } else {
            return Err(self.error(&["`adjoint`", "`dual`"]));
        };
        self.expect(Tok::Semi, "`;`")?;
        Ok(Decl::Rep { name, body })
    }

    fn map(&mut self) -> DslResult<Decl> {
        let name = self.name("map name")?;
        self.expect(Tok::Colon, "`:`")?;
        let source = self.name("source name")?;
        self.expect(Tok::Arrow, "`->`")?;
        let target = self.name("target name")?;
        self.expect(Tok::LBrace, "`{`")?;
        let mut entries = Vec::new();
        while !self.eat(Tok::RBrace) {
            entries.push(self.call_entry(&[name.name.as_str()])?);
        }
        Ok(Decl::Map {
            name,
            source,
            target,
            entries,
        })
    }

    fn cochain(&mut self) -> DslResult<Decl> {
        let name = self.name("cochain name")?;
        self.expect(Tok::Colon, "`:`")?;
        let source = self.name("source name")?;
        self.expect(Tok::Caret, "`^`")?;
        let arity = self.small("arity")?;
        self.expect(Tok::Arrow, "`->`")?;
        let target = self.name("target name")?;
        self.expect(Tok::LBrace, "`{`")?;
        let mut entries = Vec::new();
        while !self.eat(Tok::RBrace) {
            entries.push(self.call_entry(&[name.name.as_str()])?);
        }
        Ok(Decl::Cochain {
            name,
            source,
            arity,
            target,
            entries,
        })
    }

    fn tensor(&mut self) -> DslResult<Decl> {
        let name = self.name("tensor name")?;
        self.expect_keyword("over")?;
        let over = self.name("algebra name")?;
        self.expect(Tok::LBrace, "`{`")?;
        let mut entries = Vec::new();
        while !self.eat(Tok::RBrace) {
            let start = self.expect(Tok::LParen, "`(` or `}`")?;
            let args = self.name_list()?;
            self.expect(Tok::RParen, "`)`")?;
            self.expect(Tok::Eq, "`=`")?;
            let coeff = self.poly()?;
            self.expect(Tok::Semi, "`;`")?;
            entries.push(TensorEntry {
                args,
                coeff,
                span: start.to(self.prev_span()),
            });
        }
        Ok(Decl::Tensor {
            name,
            over,
            entries,
        })
    }

    fn powers(&mut self) -> DslResult<Option<(u32, u32)>> {
        if self.eat_keyword("powers") {
            let k = self.small("power k")?;
            let l = self.small("power l")?;
            Ok(Some((k, l)))
        } else {
            Ok(None)
        }
    }

    fn nslie(&mut self) -> DslResult<Decl> {
        let name = self.name("structure name")?;
        let body = if self.eat(Tok::Eq) {
            let kind = self.word(&["`nijenhuis`", "`rota-baxter`"])?;
            let body = match kind.name.as_str() {
                "nijenhuis" => NSLieBody::Nijenhuis {
                    map: self.name("map name")?,
                    powers: self.powers()?,
                },
                "rota-baxter" => {
                    let map = self.name("map name")?;
                    let twist = if self.eat_keyword("twisted") {
                        Some(self.name("cochain name")?)
                    } else {
                        None
                    };
                    NSLieBody::RotaBaxter { map, twist }
                }
                _ => {
                    return Err(DslError::syntax(
                        kind.span,
                        &["`nijenhuis`", "`rota-baxter`"],
                        format!("`{}`", kind.name),
                    ))
                }
            };
            self.expect(Tok::Semi, "`;`")?;
            body
        } else {
            self.expect(Tok::LBrace, "`{` or `=`")?;
            let generators = self.generators_clause()?;
            let mut entries = Vec::new();
            while !self.eat(Tok::RBrace) {
                entries.push(self.call_entry(&["circ", "vee"])?);
            }
            NSLieBody::Explicit {
                generators,
                entries,
            }
        };
        Ok(Decl::NSLie { name, body })
    }

    fn check(&mut self) -> DslResult<Decl> {
        const KINDS: [&str; 8] = [
            "`lie`",
            "`module`",
            "`rb`",
            "`twisted-rb`",
            "`nijenhuis`",
            "`reynolds`",
            "`ccybe`",
            "`nslie`",
        ];
        let kind = self.word(&KINDS)?;
        let target = self.name("name")?;
        let d = match kind.name.as_str() {
            "lie" => Directive::CheckLie(target),
            "module" => Directive::CheckModule(target),
            "rb" => Directive::CheckRb(target),
            "twisted-rb" => Directive::CheckTwistedRb {
                map: target,
                cochain: self.name("cochain name")?,
            },
            "nijenhuis" => Directive::CheckNijenhuis {
                map: target,
                powers: self.powers()?,
            },
            "reynolds" => Directive::CheckReynolds(target),
            "ccybe" => Directive::CheckCcybe(target),
            "nslie" => Directive::CheckNSLie(target),
            _ => {
                return Err(DslError::UnknownDirective {
                    name: format!("check {}", kind.name),
                    span: kind.span,
                })
            }
        };
        self.expect(Tok::Semi, "`;`")?;
        Ok(Decl::Directive(d))
    }

    fn block(&mut self) -> DslResult<Block> {
        if self.eat(Tok::LBracket) {
            let g = self.name_list()?;
            self.expect(Tok::RBracket, "`]`")?;
            Ok(Block::Generators(g))
        } else if matches!(self.peek(), Tok::Ident(_)) {
            Ok(Block::Named(self.name("block name")?))
        } else {
            Err(self.error(&["`[`", "block name"]))
        }
    }

    fn blocks(&mut self) -> DslResult<(Block, Block)> {
        let b1 = self.block()?;
        self.expect(Tok::Plus, "`+`")?;
        Ok((b1, self.block()?))
    }

    fn twist(&mut self) -> DslResult<Decl> {
        let algebra = self.name("algebra name")?;
        let blocks = if self.eat_keyword("as") {
            Some(self.blocks()?)
        } else {
            None
        };
        self.expect_keyword("by")?;
        let map = self.name("map name")?;
        self.expect(Tok::Semi, "`;`")?;
        Ok(Decl::Directive(Directive::Twist {
            algebra,
            blocks,
            map,
        }))
    }

    fn classify(&mut self) -> DslResult<Decl> {
        let algebra = self.name("algebra name")?;
        self.expect_keyword("as")?;
        let blocks = self.blocks()?;
        self.expect(Tok::Semi, "`;`")?;
        Ok(Decl::Directive(Directive::Classify { algebra, blocks }))
    }

    fn cohomology(&mut self) -> DslResult<Decl> {
        let map = self.name("map name")?;
        let twist = if self.eat_keyword("twisted") {
            Some(self.name("cochain name")?)
        } else {
            None
        };
        let kw = self.word(&["`max-arity`"])?;
        if kw.name != "max-arity" {
            return Err(DslError::syntax(
                kw.span,
                &["`max-arity`"],
                format!("`{}`", kw.name),
            ));
        }
        let max_arity = self.small("arity")?;
        let element = if self.eat_keyword("element") {
            Some(self.value()?)
        } else {
            None
        };
        self.expect(Tok::Semi, "`;`")?;
        Ok(Decl::Directive(Directive::Cohomology {
            map,
            twist,
            max_arity,
            element,
        }))
    }

    /// `0` or `[-] term ((+|-) term)*`.
    fn value(&mut self) -> DslResult<Value> {
        if *self.peek() == Tok::Int("0".into()) && matches!(self.peek_at(1), Tok::Semi | Tok::Eof) {
            self.bump();
            return Ok(Value::default());
        }
        let mut terms = vec![self.term()?];
        loop {
            let negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
            let mut t = self.term()?;
            if negate {
                t.coeff = -t.coeff;
            }
            terms.push(t);
        }
        Ok(Value { terms })
    }

    fn starts_factor(&self) -> bool {
        match self.peek() {
            Tok::Int(_) | Tok::LParen => true,
            Tok::Ident(s) => variable(s).is_some(),
            _ => false,
        }
    }

    fn term(&mut self) -> DslResult<Term> {
        let negative = self.eat(Tok::Minus);
        let mut coeff = MultiPoly::one();
        while self.starts_factor() {
            coeff = coeff * self.factor()?;
            self.eat(Tok::Star);
        }
        let generator = self.name("coefficient or generator name")?;
        if negative {
            coeff = -coeff;
        }
        Ok(Term { coeff, generator })
    }

    fn poly(&mut self) -> DslResult<MultiPoly> {
        let negative = self.eat(Tok::Minus);
        let mut out = self.poly_term()?;
        if negative {
            out = -out;
        }
        loop {
            if self.eat(Tok::Plus) {
                out = out + self.poly_term()?;
            } else if self.eat(Tok::Minus) {
                out = out - self.poly_term()?;
            } else {
                return Ok(out);
            }
        }
    }

    fn poly_term(&mut self) -> DslResult<MultiPoly> {
        if !self.starts_factor() {
            return Err(self.error(&["number", "`d`", "`x1`", "`(`"]));
        }
        let mut out = self.factor()?;
        loop {
            if self.eat(Tok::Star) || self.starts_factor() {
                out = out * self.factor()?;
            } else {
                return Ok(out);
            }
        }
    }

    fn factor(&mut self) -> DslResult<MultiPoly> {
        let base = match self.peek().clone() {
            Tok::Int(_) => {
                let (n, _) = self.integer("number")?;
                if self.eat(Tok::Slash) {
                    let span = self.span();
                    let Tok::Int(_) = self.peek() else {
                        return Err(DslError::NonPolynomialCoefficient {
                            span,
                            message: "only integer literals may appear after `/`".into(),
                        });
                    };
                    let (q, _) = self.integer("denominator")?;
                    if q == BigInt::from(0) {
                        return Err(DslError::NonPolynomialCoefficient {
                            span,
                            message: "division by zero".into(),
                        });
                    }
                    MultiPoly::constant(Scalar::new(n, q))
                } else {
                    MultiPoly::constant(Scalar::from_integer(n))
                }
            }
            Tok::Ident(s) => match variable(&s) {
                Some(v) => {
                    self.bump();
                    MultiPoly::var(v)
                }
                None => return Err(self.error(&["number", "`d`", "`x1`", "`(`"])),
            },
            Tok::LParen => {
                self.bump();
                let p = self.poly()?;
                self.expect(Tok::RParen, "`)`")?;
                p
            }
            _ => return Err(self.error(&["number", "`d`", "`x1`", "`(`"])),
        };
        if self.eat(Tok::Caret) {
            if *self.peek() == Tok::Minus {
                return Err(DslError::NonPolynomialCoefficient {
                    span: self.span(),
                    message: "negative exponent".into(),
                });
            }
            let e: u32 = self.small("exponent")?;
            return Ok(base.pow(e));
        }
        if *self.peek() == Tok::Slash {
            return Err(DslError::NonPolynomialCoefficient {
                span: self.span(),
                message: "division is only allowed between integer literals".into(),
            });
        }
        Ok(base)
    }
}

fn undeclared(id: &Ident) -> DslError {
    DslError::UndeclaredName {
        name: id.name.clone(),
        span: id.span,
    }
}

fn check_generator_list(gens: &[Ident]) -> DslResult<HashMap<&str, Span>> {
    let mut seen: HashMap<&str, Span> = HashMap::new();
    for g in gens {
        if let Some(&previous) = seen.get(g.name.as_str()) {
            return Err(DslError::DuplicateName {
                name: g.name.clone(),
                span: g.span,
                previous,
            });
        }
        seen.insert(&g.name, g.span);
    }
    Ok(seen)
}

fn check_value(v: &Value, local: &HashMap<&str, Span>) -> DslResult<()> {
    for t in &v.terms {
        if !local.contains_key(t.generator.name.as_str()) {
            return Err(undeclared(&t.generator));
        }
    }
    Ok(())
}

/// Local generator scoping and duplicate entries inside an explicit body;
/// `local_args` selects which argument positions name local generators.
fn check_entries(
    entries: &[Entry],
    local: &HashMap<&str, Span>,
    local_args: &[usize],
) -> DslResult<()> {
    let mut seen: HashMap<(Option<&str>, Vec<&str>), Span> = HashMap::new();
    for e in entries {
        for &i in local_args {
            if let Some(a) = e.args.get(i) {
                if !local.contains_key(a.name.as_str()) {
                    return Err(undeclared(a));
                }
            }
        }
        check_value(&e.value, local)?;
        let key = (
            e.head.as_ref().map(|h| h.name.as_str()),
            e.args.iter().map(|a| a.name.as_str()).collect(),
        );
        if let Some(&previous) = seen.get(&key) {
            return Err(DslError::DuplicateName {
                name: super::printer::entry_lhs(e),
                span: e.span,
                previous,
            });
        }
        seen.insert(key, e.span);
    }
    Ok(())
}

fn check_scopes(file: &SourceFile) -> DslResult<()> {
    let mut declared: HashMap<String, Span> = HashMap::new();
    let use_name = |declared: &HashMap<String, Span>, id: &Ident| {
        if declared.contains_key(&id.name) {
            Ok(())
        } else {
            Err(undeclared(id))
        }
    };
    for item in &file.items {
        let mut refs: Vec<&Ident> = Vec::new();
        match &item.decl {
            Decl::Algebra { body, .. } => match body {
                AlgebraBody::Explicit {
                    generators,
                    entries,
                } => {
                    let local = check_generator_list(generators)?;
                    check_entries(entries, &local, &[0, 1])?;
                }
                AlgebraBody::Semidirect { module, twist } => {
                    refs.push(module);
                    refs.extend(twist);
                }
            },
            Decl::Module {
                over,
                generators,
                entries,
                ..
            } => {
                refs.push(over);
                let local = check_generator_list(generators)?;
                check_entries(entries, &local, &[1])?;
            }
            Decl::Rep { body, .. } => match body {
                RepBody::Adjoint(a) | RepBody::Dual(a) => refs.push(a),
            },
            Decl::Map { source, target, .. } => refs.extend([source, target]),
            Decl::Cochain { source, target, .. } => refs.extend([source, target]),
            Decl::Tensor { over, .. } => refs.push(over),
            Decl::NSLie { body, .. } => match body {
                NSLieBody::Explicit {
                    generators,
                    entries,
                } => {
                    let local = check_generator_list(generators)?;
                    check_entries(entries, &local, &[0, 1])?;
                }
                NSLieBody::Nijenhuis { map, .. } => refs.push(map),
                NSLieBody::RotaBaxter { map, twist } => {
                    refs.push(map);
                    refs.extend(twist);
                }
            },
            Decl::Directive(d) => match d {
                Directive::CheckLie(a)
                | Directive::CheckModule(a)
                | Directive::CheckRb(a)
                | Directive::CheckReynolds(a)
                | Directive::CheckCcybe(a)
                | Directive::CheckNSLie(a)
                | Directive::CheckNijenhuis { map: a, .. } => refs.push(a),
                Directive::CheckTwistedRb { map, cochain } => refs.extend([map, cochain]),
                Directive::Twist {
                    algebra,
                    blocks,
                    map,
                } => {
                    refs.extend([algebra, map]);
                    if let Some((b1, b2)) = blocks {
                        refs.extend(block_names(b1).chain(block_names(b2)));
                    }
                }
                Directive::Classify { algebra, blocks } => {
                    refs.push(algebra);
                    refs.extend(block_names(&blocks.0).chain(block_names(&blocks.1)));
                }
                Directive::Cohomology { map, twist, .. } => {
                    refs.push(map);
                    refs.extend(twist);
                }
            },
        }
        for r in refs {
            use_name(&declared, r)?;
        }
        if let Some(name) = item.decl.name() {
            if let Some(&previous) = declared.get(&name.name) {
                return Err(DslError::DuplicateName {
                    name: name.name.clone(),
                    span: name.span,
                    previous,
                });
            }
            declared.insert(name.name.clone(), name.span);
        }
    }
    Ok(())
}

fn block_names(b: &Block) -> impl Iterator<Item = &Ident> {
    match b {
        Block::Named(n) => Some(n),
        Block::Generators(_) => None,
    }
    .into_iter()
}
