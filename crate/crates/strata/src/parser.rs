//! Parser and printer for the `.slt` theory format.
//!
//! A theory file is a sequence of s-expressions, one axiom each:
//!
//! ```text
//! (axiom birds-fly :core (forall (x) (-> (bird^u x) (flies^d x))))
//! (axiom tweety :utterance (bird^u tweety))
//! ```
//!
//! Literal heads carry a strength suffix (`bird^u`, `flies^d`). Identifiers
//! are variables exactly when a surrounding `forall`/`exists` binds them;
//! everything else is a constant. `neq` and `defref` are built-in forms.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::logic::{
    Axiom, AxiomTag, Formula, Literal, Polarity, Strength, Term, Theory, DEFREF, NEQ,
    ONTOLOGY_PREDICATES,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: u32,
    pub column: u32,
    pub length: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Arity,
    UnboundVariable,
    DuplicateAxiomId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub message: String,
    pub span: SourceSpan,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.span.line, self.span.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

fn err(kind: ParseErrorKind, span: SourceSpan, message: impl Into<String>) -> ParseError {
    ParseError {
        kind,
        message: message.into(),
        span,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TokKind {
    LParen,
    RParen,
    Sym,
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokKind,
    text: String,
    span: SourceSpan,
}

fn is_symbol_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '!' | '-' | '\'' | '^' | '>' | ':' | '?' | '=')
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut line: u32 = 1;
    let mut col: u32 = 1;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let span = SourceSpan {
            line,
            column: col,
            length: 1,
        };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            ';' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            '(' | ')' => {
                chars.next();
                col += 1;
                out.push(Token {
                    kind: if c == '(' {
                        TokKind::LParen
                    } else {
                        TokKind::RParen
                    },
                    text: c.to_string(),
                    span,
                });
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            c if is_symbol_char(c) => {
                let mut text = String::new();
                while let Some(&c) = chars.peek() {
                    if is_symbol_char(c) {
                        text.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let span = SourceSpan {
                    length: text.chars().count() as u32,
                    ..span
                };
                out.push(Token {
                    kind: TokKind::Sym,
                    text,
                    span,
                });
            }
            other => {
                return Err(err(
                    ParseErrorKind::Syntax,
                    span,
                    format!("unexpected character `{other}`"),
                ));
            }
        }
    }
    Ok(out)
}

const KEYWORDS: [&str; 8] = ["axiom", "and", "or", "not", "->", "forall", "exists", NEQ];

fn is_reserved_witness_name(name: &str) -> bool {
    name.strip_prefix("xi")
        .map(|rest| !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()))
        .unwrap_or(false)
}

fn check_name(name: &str, span: SourceSpan, role: &str) -> Result<(), ParseError> {
    if name.is_empty() {
        return Err(err(
            ParseErrorKind::Syntax,
            span,
            format!("empty {role} name"),
        ));
    }
    if is_reserved_witness_name(name) {
        return Err(err(
            ParseErrorKind::Syntax,
            span,
            format!("`{name}` is reserved for quantifier witnesses"),
        ));
    }
    if name.contains('^') || name.contains(':') || name.contains('>') || name.contains('=') {
        return Err(err(
            ParseErrorKind::Syntax,
            span,
            format!("invalid {role} name `{name}`"),
        ));
    }
    Ok(())
}

struct Session {
    pred_arity: BTreeMap<String, usize>,
    fun_arity: BTreeMap<String, usize>,
    axiom_ids: BTreeSet<String>,
}

struct AxiomParser<'a> {
    toks: &'a [Token],
    pos: usize,
    session: &'a mut Session,
    /// Names bound by some binder anywhere in this axiom; used to flag
    /// out-of-scope uses instead of silently reading them as constants.
    binder_names: BTreeSet<String>,
    bound: Vec<String>,
}

impl<'a> AxiomParser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<&Token> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_span(&self) -> SourceSpan {
        self.toks.last().map(|t| t.span).unwrap_or(SourceSpan {
            line: 1,
            column: 1,
            length: 0,
        })
    }

    fn expect(&mut self, kind: TokKind, what: &str) -> Result<Token, ParseError> {
        match self.next() {
            Some(t) if t.kind == kind => Ok(t.clone()),
            Some(t) => Err(err(
                ParseErrorKind::Syntax,
                t.span,
                format!("expected {what}, found `{}`", t.text),
            )),
            None => Err(err(
                ParseErrorKind::Syntax,
                self.end_span(),
                format!("expected {what}, found end of input"),
            )),
        }
    }

    fn expect_symbol(&mut self, what: &str) -> Result<Token, ParseError> {
        self.expect(TokKind::Sym, what)
    }

    fn parse_formula(&mut self) -> Result<Formula, ParseError> {
        let open = self.expect(TokKind::LParen, "a formula")?;
        let head = self.expect_symbol("a connective or predicate")?;
        match head.text.as_str() {
            "and" | "or" => {
                let mut parts = Vec::new();
                while self.peek().map(|t| t.kind) != Some(TokKind::RParen) {
                    parts.push(self.parse_formula()?);
                }
                self.expect(TokKind::RParen, "`)`")?;
                if parts.len() < 2 {
                    return Err(err(
                        ParseErrorKind::Syntax,
                        head.span,
                        format!("`{}` takes at least two subformulas", head.text),
                    ));
                }
                Ok(if head.text == "and" {
                    Formula::And(parts)
                } else {
                    Formula::Or(parts)
                })
            }
            "not" => {
                let inner = self.parse_formula()?;
                self.expect(TokKind::RParen, "`)`")?;
                if let Formula::Lit(l) = &inner {
                    if l.meta {
                        return Err(err(
                            ParseErrorKind::Syntax,
                            head.span,
                            format!("metapredicate `{}` cannot be negated", l.predicate),
                        ));
                    }
                }
                Ok(Formula::negation(inner))
            }
            "->" => {
                let a = self.parse_formula()?;
                let b = self.parse_formula()?;
                self.expect(TokKind::RParen, "`)`")?;
                Ok(Formula::Implies(Box::new(a), Box::new(b)))
            }
            "forall" | "exists" => {
                let vars = self.parse_binder_list()?;
                let body = self.parse_formula()?;
                self.expect(TokKind::RParen, "`)`")?;
                for _ in &vars {
                    self.bound.pop();
                }
                Ok(if head.text == "forall" {
                    Formula::ForAll(vars, Box::new(body))
                } else {
                    Formula::Exists(vars, Box::new(body))
                })
            }
            NEQ => {
                let a = self.parse_term()?;
                let b = self.parse_term()?;
                self.expect(TokKind::RParen, "`)`")?;
                Ok(Formula::Lit(Literal::new(
                    NEQ,
                    vec![a, b],
                    Strength::U,
                    Polarity::Pos,
                )))
            }
            DEFREF => {
                let t = self.parse_term()?;
                self.expect(TokKind::RParen, "`)`")?;
                Ok(Formula::Lit(Literal::meta(DEFREF, vec![t])))
            }
            _ => self.parse_literal(&head, open.span),
        }
    }

    fn parse_binder_list(&mut self) -> Result<Vec<String>, ParseError> {
        let open = self.expect(TokKind::LParen, "a binder list")?;
        let mut vars = Vec::new();
        while let Some(t) = self.peek() {
            if t.kind == TokKind::RParen {
                break;
            }
            let sym = self.expect_symbol("a variable")?;
            check_name(&sym.text, sym.span, "variable")?;
            if vars.contains(&sym.text) {
                return Err(err(
                    ParseErrorKind::Syntax,
                    sym.span,
                    format!("variable `{}` bound twice in one binder", sym.text),
                ));
            }
            vars.push(sym.text.clone());
        }
        self.expect(TokKind::RParen, "`)`")?;
        if vars.is_empty() {
            return Err(err(
                ParseErrorKind::Syntax,
                open.span,
                "binder list must declare at least one variable",
            ));
        }
        for v in &vars {
            self.binder_names.insert(v.clone());
            self.bound.push(v.clone());
        }
        Ok(vars)
    }

    fn parse_literal(&mut self, head: &Token, open: SourceSpan) -> Result<Formula, ParseError> {
        let (name, strength) = match head.text.rsplit_once('^') {
            Some((name, "u")) => (name.to_string(), Strength::U),
            Some((name, "d")) => (name.to_string(), Strength::D),
            _ => {
                return Err(err(
                    ParseErrorKind::Syntax,
                    head.span,
                    format!(
                        "predicate head must carry a strength suffix, e.g. `{}^u`",
                        head.text
                    ),
                ));
            }
        };
        check_name(&name, head.span, "predicate")?;
        let mut args = Vec::new();
        while self.peek().map(|t| t.kind) != Some(TokKind::RParen) {
            args.push(self.parse_term()?);
        }
        self.expect(TokKind::RParen, "`)`")?;
        let _ = open;
        if ONTOLOGY_PREDICATES.contains(&name.as_str()) && args.len() != 1 {
            return Err(err(
                ParseErrorKind::Arity,
                head.span,
                format!("ontology predicate `{name}` is unary"),
            ));
        }
        match self.session.pred_arity.get(&name) {
            Some(&known) if known != args.len() => {
                return Err(err(
                    ParseErrorKind::Arity,
                    head.span,
                    format!(
                        "predicate `{name}` used with arity {} but previously {known}",
                        args.len()
                    ),
                ));
            }
            _ => {
                self.session.pred_arity.insert(name.clone(), args.len());
            }
        }
        Ok(Formula::Lit(Literal::new(
            name,
            args,
            strength,
            Polarity::Pos,
        )))
    }

    fn parse_term(&mut self) -> Result<Term, ParseError> {
        match self.next().cloned() {
            Some(t) if t.kind == TokKind::Sym => {
                check_name(&t.text, t.span, "term")?;
                if self.bound.contains(&t.text) {
                    Ok(Term::Variable(t.text))
                } else if self.binder_names.contains(&t.text) {
                    Err(err(
                        ParseErrorKind::UnboundVariable,
                        t.span,
                        format!("variable `{}` used outside the scope of its binder", t.text),
                    ))
                } else {
                    Ok(Term::Constant(t.text))
                }
            }
            Some(t) if t.kind == TokKind::LParen => {
                let fun = self.expect_symbol("a function symbol")?;
                if KEYWORDS.contains(&fun.text.as_str()) || fun.text == DEFREF {
                    return Err(err(
                        ParseErrorKind::Syntax,
                        fun.span,
                        format!("`{}` cannot be used as a function symbol", fun.text),
                    ));
                }
                check_name(&fun.text, fun.span, "function")?;
                let mut args = Vec::new();
                while self.peek().map(|t| t.kind) != Some(TokKind::RParen) {
                    args.push(self.parse_term()?);
                }
                self.expect(TokKind::RParen, "`)`")?;
                match self.session.fun_arity.get(&fun.text) {
                    Some(&known) if known != args.len() => {
                        return Err(err(
                            ParseErrorKind::Arity,
                            fun.span,
                            format!(
                                "function `{}` used with arity {} but previously {known}",
                                fun.text,
                                args.len()
                            ),
                        ));
                    }
                    _ => {
                        self.session.fun_arity.insert(fun.text.clone(), args.len());
                    }
                }
                Ok(Term::Apply(fun.text, args))
            }
            Some(t) => Err(err(
                ParseErrorKind::Syntax,
                t.span,
                format!("expected a term, found `{}`", t.text),
            )),
            None => Err(err(
                ParseErrorKind::Syntax,
                self.end_span(),
                "expected a term, found end of input",
            )),
        }
    }
}

/// True when some implication inside `f` has a defeasible literal in its
/// consequent; language-use axioms must be shaped this way, so that what an
/// expression presupposes is always overridable.
fn has_defeasible_consequent(f: &Formula) -> bool {
    fn contains_defeasible(f: &Formula) -> bool {
        match f {
            Formula::Lit(l) => !l.meta && l.strength == Strength::D,
            Formula::Not(f) => contains_defeasible(f),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().any(contains_defeasible),
            Formula::Implies(a, b) => contains_defeasible(a) || contains_defeasible(b),
            Formula::ForAll(_, f) | Formula::Exists(_, f) => contains_defeasible(f),
        }
    }
    match f {
        Formula::Implies(_, b) => contains_defeasible(b),
        Formula::ForAll(_, body) | Formula::Exists(_, body) | Formula::Not(body) => {
            has_defeasible_consequent(body)
        }
        Formula::And(fs) | Formula::Or(fs) => fs.iter().any(has_defeasible_consequent),
        Formula::Lit(_) => false,
    }
}

fn parse_axiom(toks: &[Token], session: &mut Session) -> Result<Axiom, ParseError> {
    let mut p = AxiomParser {
        toks,
        pos: 0,
        session,
        binder_names: prescan_binder_names(toks),
        bound: Vec::new(),
    };
    p.expect(TokKind::LParen, "`(axiom ...)`")?;
    let head = p.expect_symbol("`axiom`")?;
    if head.text != "axiom" {
        return Err(err(
            ParseErrorKind::Syntax,
            head.span,
            format!("expected `axiom`, found `{}`", head.text),
        ));
    }
    let id_tok = p.expect_symbol("an axiom id")?;
    check_name(&id_tok.text, id_tok.span, "axiom id")?;
    let tag_tok = p.expect_symbol("a tag (:core, :language-use, :utterance)")?;
    let tag = match tag_tok.text.as_str() {
        ":core" => AxiomTag::Core,
        ":language-use" => AxiomTag::LanguageUse,
        ":utterance" => AxiomTag::Utterance,
        other => {
            return Err(err(
                ParseErrorKind::Syntax,
                tag_tok.span,
                format!("unknown tag `{other}`; expected :core, :language-use, or :utterance"),
            ));
        }
    };
    let formula = p.parse_formula()?;
    p.expect(TokKind::RParen, "`)` closing the axiom")?;
    if p.pos != toks.len() {
        let t = &toks[p.pos];
        return Err(err(
            ParseErrorKind::Syntax,
            t.span,
            format!("unexpected `{}` after axiom", t.text),
        ));
    }
    if !p.session.axiom_ids.insert(id_tok.text.clone()) {
        return Err(err(
            ParseErrorKind::DuplicateAxiomId,
            id_tok.span,
            format!("axiom id `{}` is already defined", id_tok.text),
        ));
    }
    if tag == AxiomTag::LanguageUse && !has_defeasible_consequent(&formula) {
        return Err(err(
            ParseErrorKind::Syntax,
            id_tok.span,
            format!(
                "language-use axiom `{}` must have a defeasible consequent",
                id_tok.text
            ),
        ));
    }
    Ok(Axiom {
        id: id_tok.text,
        tag,
        formula,
    })
}

fn prescan_binder_names(toks: &[Token]) -> BTreeSet<String> {
    let mut names = BTreeSet::new();
    let mut i = 0;
    while i < toks.len() {
        if toks[i].kind == TokKind::Sym
            && (toks[i].text == "forall" || toks[i].text == "exists")
            && i > 0
            && toks[i - 1].kind == TokKind::LParen
            && toks.get(i + 1).map(|t| t.kind) == Some(TokKind::LParen)
        {
            let mut j = i + 2;
            while j < toks.len() && toks[j].kind == TokKind::Sym {
                names.insert(toks[j].text.clone());
                j += 1;
            }
        }
        i += 1;
    }
    names
}

fn split_top_level(toks: &[Token]) -> Result<Vec<&[Token]>, ParseError> {
    let mut groups = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, t) in toks.iter().enumerate() {
        match t.kind {
            TokKind::LParen => {
                if depth == 0 {
                    start = i;
                }
                depth += 1;
            }
            TokKind::RParen => {
                if depth == 0 {
                    return Err(err(ParseErrorKind::Syntax, t.span, "unmatched `)`"));
                }
                depth -= 1;
                if depth == 0 {
                    groups.push(&toks[start..=i]);
                }
            }
            TokKind::Sym => {
                if depth == 0 {
                    return Err(err(
                        ParseErrorKind::Syntax,
                        t.span,
                        format!("expected `(axiom ...)`, found `{}`", t.text),
                    ));
                }
            }
        }
    }
    if depth != 0 {
        let span = toks.last().map(|t| t.span).unwrap_or(SourceSpan {
            line: 1,
            column: 1,
            length: 0,
        });
        return Err(err(ParseErrorKind::Syntax, span, "unclosed `(`"));
    }
    Ok(groups)
}

/// Parses a complete theory, reporting every bad axiom rather than stopping
/// at the first one.
pub fn parse_theory(src: &str) -> Result<Theory, Vec<ParseError>> {
    let toks = lex(src).map_err(|e| vec![e])?;
    let groups = split_top_level(&toks).map_err(|e| vec![e])?;
    let mut session = Session {
        pred_arity: BTreeMap::new(),
        fun_arity: BTreeMap::new(),
        axiom_ids: BTreeSet::new(),
    };
    let mut axioms = Vec::new();
    let mut errors = Vec::new();
    for group in groups {
        match parse_axiom(group, &mut session) {
            Ok(ax) => axioms.push(ax),
            Err(e) => errors.push(e),
        }
    }
    if !errors.is_empty() {
        return Err(errors);
    }
    Theory::from_axioms(axioms).map_err(|msg| {
        vec![err(
            ParseErrorKind::Syntax,
            SourceSpan {
                line: 1,
                column: 1,
                length: 0,
            },
            msg,
        )]
    })
}

/// Parses a single closed formula, as entered at the REPL.
pub fn parse_formula(src: &str) -> Result<Formula, Vec<ParseError>> {
    let toks = lex(src).map_err(|e| vec![e])?;
    let groups = split_top_level(&toks).map_err(|e| vec![e])?;
    if groups.len() != 1 {
        let span = toks.first().map(|t| t.span).unwrap_or(SourceSpan {
            line: 1,
            column: 1,
            length: 0,
        });
        return Err(vec![err(
            ParseErrorKind::Syntax,
            span,
            "expected exactly one formula",
        )]);
    }
    let mut session = Session {
        pred_arity: BTreeMap::new(),
        fun_arity: BTreeMap::new(),
        axiom_ids: BTreeSet::new(),
    };
    let group = groups[0];
    let mut p = AxiomParser {
        toks: group,
        pos: 0,
        session: &mut session,
        binder_names: prescan_binder_names(group),
        bound: Vec::new(),
    };
    let formula = p.parse_formula().map_err(|e| vec![e])?;
    if p.pos != group.len() {
        let t = &group[p.pos];
        return Err(vec![err(
            ParseErrorKind::Syntax,
            t.span,
            format!("unexpected `{}` after formula", t.text),
        )]);
    }
    Ok(formula)
}

pub fn render_term(t: &Term) -> String {
    match t {
        Term::Constant(c) => c.clone(),
        Term::Variable(v) => v.clone(),
        Term::Witness(i) => format!("xi{i}"),
        Term::Apply(f, args) => {
            let mut s = format!("({f}");
            for a in args {
                s.push(' ');
                s.push_str(&render_term(a));
            }
            s.push(')');
            s
        }
    }
}

fn render_positive_literal(l: &Literal) -> String {
    let head = if l.meta || l.is_neq() {
        l.predicate.clone()
    } else {
        format!("{}^{}", l.predicate, l.strength)
    };
    let mut s = format!("({head}");
    for a in &l.args {
        s.push(' ');
        s.push_str(&render_term(a));
    }
    s.push(')');
    s
}

pub fn render_formula(f: &Formula) -> String {
    match f {
        Formula::Lit(l) => {
            let pos = render_positive_literal(l);
            if l.polarity == Polarity::Neg {
                format!("(not {pos})")
            } else {
                pos
            }
        }
        Formula::Not(inner) => format!("(not {})", render_formula(inner)),
        Formula::And(fs) => {
            let parts: Vec<String> = fs.iter().map(render_formula).collect();
            format!("(and {})", parts.join(" "))
        }
        Formula::Or(fs) => {
            let parts: Vec<String> = fs.iter().map(render_formula).collect();
            format!("(or {})", parts.join(" "))
        }
        Formula::Implies(a, b) => {
            format!("(-> {} {})", render_formula(a), render_formula(b))
        }
        Formula::ForAll(vars, body) => {
            format!("(forall ({}) {})", vars.join(" "), render_formula(body))
        }
        Formula::Exists(vars, body) => {
            format!("(exists ({}) {})", vars.join(" "), render_formula(body))
        }
    }
}

pub fn render_axiom(ax: &Axiom) -> String {
    format!(
        "(axiom {} :{} {})",
        ax.id,
        ax.tag,
        render_formula(&ax.formula)
    )
}

pub fn render_theory(t: &Theory) -> String {
    let mut out = String::new();
    for ax in &t.axioms {
        out.push_str(&render_axiom(ax));
        out.push('\n');
    }
    out
}
