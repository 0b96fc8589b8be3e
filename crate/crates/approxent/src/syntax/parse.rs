//! Recursive-descent parser for the two-level language.
//!
//! One entry point per level ([`parse_basic`], [`parse_outer`]) plus an
//! auto-detecting [`parse`]: input containing a `=>` token is read as an outer
//! formula, anything else as a basic expression.
//!
//! Binding strength, tightest first: basic `!`/`dle`/`dge`, basic `&`, basic
//! `|`, the graded arrow `=>{c}`, outer `!`, outer `&`, outer `|`, `->`
//! (right-associative), `<->` (right-associative). A `!` in front of a graded
//! implication is therefore outer negation; negating the left-hand side
//! requires parentheses, as in `(!a) =>{1} b`.

use super::{BasicExpr, DiamondDir, GradedImplication, LogicCtx, OuterFormula, SyntaxError};
use crate::grades::Level;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    LBrace,
    RBrace,
    Bang,
    Amp,
    Pipe,
    Arrow,    // ->
    IffArrow, // <->
    FatArrow, // =>
    Bot,      // _|_
    Ident(String),
    Rat(i64, i64),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::IffArrow => "`<->`".into(),
            Tok::FatArrow => "`=>`".into(),
            Tok::Bot => "`_|_`".into(),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Rat(n, d) => {
                if *d == 1 {
                    format!("`{n}`")
                } else {
                    format!("`{n}/{d}`")
                }
            }
        }
    }
}

fn err(pos: usize, msg: impl Into<String>) -> SyntaxError {
    SyntaxError::Parse { pos, msg: msg.into() }
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            b'{' => {
                toks.push((Tok::LBrace, i));
                i += 1;
            }
            b'}' => {
                toks.push((Tok::RBrace, i));
                i += 1;
            }
            b'!' => {
                toks.push((Tok::Bang, i));
                i += 1;
            }
            b'&' => {
                toks.push((Tok::Amp, i));
                i += 1;
            }
            b'|' => {
                toks.push((Tok::Pipe, i));
                i += 1;
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                toks.push((Tok::Arrow, i));
                i += 2;
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                toks.push((Tok::IffArrow, i));
                i += 3;
            }
            b'=' if bytes.get(i + 1) == Some(&b'>') => {
                toks.push((Tok::FatArrow, i));
                i += 2;
            }
            b'_' if bytes.get(i + 1) == Some(&b'|') && bytes.get(i + 2) == Some(&b'_') => {
                toks.push((Tok::Bot, i));
                i += 3;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let numer: i64 = input[start..i]
                    .parse()
                    .map_err(|_| err(start, "number too large"))?;
                let mut denom: i64 = 1;
                if i < bytes.len() && bytes[i] == b'/' {
                    i += 1;
                    let dstart = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if dstart == i {
                        return Err(err(dstart, "expected digits after `/`"));
                    }
                    denom = input[dstart..i]
                        .parse()
                        .map_err(|_| err(dstart, "number too large"))?;
                    if denom == 0 {
                        return Err(err(dstart, "zero denominator"));
                    }
                }
                toks.push((Tok::Rat(numer, denom), start));
            }
            _ if b.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(input[start..i].to_string()), start));
            }
            _ => {
                let ch = input[i..].chars().next().unwrap();
                return Err(err(i, format!("unexpected character `{ch}`")));
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    i: usize,
    eof: usize,
    ctx: &'a LogicCtx,
}

impl<'a> Parser<'a> {
    fn new(input: &str, ctx: &'a LogicCtx) -> Result<Parser<'a>, SyntaxError> {
        Ok(Parser { toks: lex(input)?, i: 0, eof: input.len(), ctx })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.eof, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.i).map(|(t, _)| t.clone());
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    fn eat(&mut self, want: &Tok, expected: &str) -> Result<(), SyntaxError> {
        if self.peek() == Some(want) {
            self.i += 1;
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn unexpected(&self, expected: &str) -> SyntaxError {
        let found = self
            .peek()
            .map_or("end of input".to_string(), Tok::describe);
        err(self.pos(), format!("expected {expected}, found {found}"))
    }

    fn expect_end(&self) -> Result<(), SyntaxError> {
        if self.i == self.toks.len() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn contains_fat_arrow(&self) -> bool {
        self.toks.iter().any(|(t, _)| *t == Tok::FatArrow)
    }

    // ---- basic level -----------------------------------------------------

    fn basic_expr(&mut self) -> Result<BasicExpr, SyntaxError> {
        let mut e = self.basic_conj()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.i += 1;
            e = e.or(self.basic_conj()?);
        }
        Ok(e)
    }

    fn basic_conj(&mut self) -> Result<BasicExpr, SyntaxError> {
        let mut e = self.basic_prefix()?;
        while self.peek() == Some(&Tok::Amp) {
            self.i += 1;
            e = e.and(self.basic_prefix()?);
        }
        Ok(e)
    }

    fn basic_prefix(&mut self) -> Result<BasicExpr, SyntaxError> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.i += 1;
                Ok(self.basic_prefix()?.not())
            }
            Some(Tok::Ident(name)) if name == "dle" || name == "dge" => {
                let dir = if name == "dle" { DiamondDir::Le } else { DiamondDir::Ge };
                let pos = self.pos();
                self.i += 1;
                if !self.ctx.variant.has_diamonds() {
                    return Err(err(
                        pos,
                        format!(
                            "`{}` requires the chain or product variant (active: {})",
                            dir.keyword(),
                            self.ctx.variant
                        ),
                    ));
                }
                Ok(self.basic_prefix()?.diamond(dir))
            }
            _ => self.basic_atom(),
        }
    }

    fn basic_atom(&mut self) -> Result<BasicExpr, SyntaxError> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Bot) => {
                self.i += 1;
                Ok(BasicExpr::Bot)
            }
            Some(Tok::Ident(name)) if name == "T" => {
                self.i += 1;
                Ok(BasicExpr::Top)
            }
            Some(Tok::Ident(name)) => match self.ctx.sig.var_by_name(name) {
                Some(v) => {
                    self.i += 1;
                    Ok(BasicExpr::Var(v))
                }
                None => Err(err(pos, format!("unknown variable `{name}`"))),
            },
            Some(Tok::LParen) => {
                self.i += 1;
                let e = self.basic_expr()?;
                self.eat(&Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => Err(self.unexpected("a variable, `T`, `_|_`, `!`, `dle`, `dge` or `(`")),
        }
    }

    // ---- the graded arrow ------------------------------------------------

    fn grade(&mut self) -> Result<crate::grades::Grade, SyntaxError> {
        self.eat(&Tok::LBrace, "`{`")?;
        let pos = self.pos();
        let (n, d) = match self.bump() {
            Some(Tok::Rat(n, d)) => (n, d),
            _ => {
                return Err(err(pos, "expected a grade such as `1/2` inside `{ }`"));
            }
        };
        let level = Level::new(n, d);
        let grade = self
            .ctx
            .scale
            .grade_of(level)
            .map_err(|_| SyntaxError::UnknownGrade { level })?;
        self.eat(&Tok::RBrace, "`}`")?;
        Ok(grade)
    }

    // ---- outer level -----------------------------------------------------

    fn outer_formula(&mut self) -> Result<OuterFormula, SyntaxError> {
        let l = self.outer_implies()?;
        if self.peek() == Some(&Tok::IffArrow) {
            self.i += 1;
            Ok(l.iff(self.outer_formula()?))
        } else {
            Ok(l)
        }
    }

    fn outer_implies(&mut self) -> Result<OuterFormula, SyntaxError> {
        let l = self.outer_or()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.i += 1;
            Ok(l.implies(self.outer_implies()?))
        } else {
            Ok(l)
        }
    }

    fn outer_or(&mut self) -> Result<OuterFormula, SyntaxError> {
        let mut f = self.outer_and()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.i += 1;
            f = f.or(self.outer_and()?);
        }
        Ok(f)
    }

    fn outer_and(&mut self) -> Result<OuterFormula, SyntaxError> {
        let mut f = self.outer_not()?;
        while self.peek() == Some(&Tok::Amp) {
            self.i += 1;
            f = f.and(self.outer_not()?);
        }
        Ok(f)
    }

    fn outer_not(&mut self) -> Result<OuterFormula, SyntaxError> {
        if self.peek() == Some(&Tok::Bang) {
            self.i += 1;
            Ok(self.outer_not()?.not())
        } else {
            self.outer_atom()
        }
    }

    /// An outer atom is either a graded implication or a parenthesized outer
    /// formula. Both can start with `(`, so the graded reading is tried first
    /// and rolled back if no `=>` follows the basic expression.
    fn outer_atom(&mut self) -> Result<OuterFormula, SyntaxError> {
        let start = self.i;
        let graded_err = match self.basic_expr() {
            Ok(lhs) => {
                if self.peek() == Some(&Tok::FatArrow) {
                    self.i += 1;
                    let grade = self.grade()?;
                    let rhs = self.basic_expr()?;
                    return Ok(OuterFormula::atom(GradedImplication::new(lhs, grade, rhs)));
                }
                self.unexpected("`=>`")
            }
            Err(e) => e,
        };
        self.i = start;
        if self.peek() == Some(&Tok::LParen) {
            self.i += 1;
            let f = self.outer_formula()?;
            self.eat(&Tok::RParen, "`)`")?;
            return Ok(f);
        }
        // Neither reading worked; report whichever failure reached deeper
        // into the input.
        let here = self.unexpected("a graded implication or `(`");
        Err(max_by_pos(graded_err, here))
    }
}

fn max_by_pos(a: SyntaxError, b: SyntaxError) -> SyntaxError {
    let pos = |e: &SyntaxError| match e {
        SyntaxError::Parse { pos, .. } => *pos,
        _ => usize::MAX,
    };
    if pos(&a) >= pos(&b) {
        a
    } else {
        b
    }
}

/// Result of auto-detecting [`parse`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Basic(BasicExpr),
    Outer(OuterFormula),
}

/// Parses a basic expression.
pub fn parse_basic(input: &str, ctx: &LogicCtx) -> Result<BasicExpr, SyntaxError> {
    let mut p = Parser::new(input, ctx)?;
    let e = p.basic_expr()?;
    p.expect_end()?;
    Ok(e)
}

/// Parses an outer formula.
pub fn parse_outer(input: &str, ctx: &LogicCtx) -> Result<OuterFormula, SyntaxError> {
    let mut p = Parser::new(input, ctx)?;
    let f = p.outer_formula()?;
    p.expect_end()?;
    Ok(f)
}

/// Parses either level, deciding by the presence of a `=>` token.
pub fn parse(input: &str, ctx: &LogicCtx) -> Result<Parsed, SyntaxError> {
    let mut p = Parser::new(input, ctx)?;
    if p.contains_fat_arrow() {
        let f = p.outer_formula()?;
        p.expect_end()?;
        Ok(Parsed::Outer(f))
    } else {
        let e = p.basic_expr()?;
        p.expect_end()?;
        Ok(Parsed::Basic(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grades::{Grade, GradeScale};
    use crate::syntax::{print_basic, print_outer, Signature, VarId, Variant};

    fn ctx(variant: Variant) -> LogicCtx {
        let sig = Signature::single_sort(&["a", "b", "c"]).unwrap();
        LogicCtx::new(variant, sig, GradeScale::godel_three()).unwrap()
    }

    fn v(i: u32) -> BasicExpr {
        BasicExpr::var(VarId(i))
    }

    #[test]
    fn basic_precedence_and_associativity() {
        let ctx = ctx(Variant::Laec);
        let e = parse_basic("a | b & !c", &ctx).unwrap();
        assert_eq!(e, v(0).or(v(1).and(v(2).not())));
        let e = parse_basic("a & b & c", &ctx).unwrap();
        assert_eq!(e, v(0).and(v(1)).and(v(2)));
        let e = parse_basic("dle a & b", &ctx).unwrap();
        assert_eq!(e, v(0).diamond(super::DiamondDir::Le).and(v(1)));
        let e = parse_basic("dge !a", &ctx).unwrap();
        assert_eq!(e, v(0).not().diamond(super::DiamondDir::Ge));
        let e = parse_basic("(a | b) & T", &ctx).unwrap();
        assert_eq!(e, v(0).or(v(1)).and(BasicExpr::Top));
        let e = parse_basic("_|_", &ctx).unwrap();
        assert_eq!(e, BasicExpr::Bot);
    }

    #[test]
    fn outer_connectives_and_graded_atoms() {
        let ctx = ctx(Variant::Lae);
        let gi = |g: u8| GradedImplication::new(v(0), Grade(g), v(1));
        let atom = |g: u8| OuterFormula::atom(gi(g));

        let f = parse_outer("a =>{1/2} b", &ctx).unwrap();
        assert_eq!(f, atom(1));
        let f = parse_outer("!(a =>{0} b)", &ctx).unwrap();
        assert_eq!(f, atom(0).not());
        let f = parse_outer("(a =>{0} b) -> (a =>{1/2} b) -> (a =>{1} b)", &ctx).unwrap();
        assert_eq!(f, atom(0).implies(atom(1).implies(atom(2))));
        let f = parse_outer("(a =>{0} b) & (a =>{1/2} b) | (a =>{1} b)", &ctx).unwrap();
        assert_eq!(f, atom(0).and(atom(1)).or(atom(2)));
        let f = parse_outer("(a =>{0} b) <-> (a =>{1} b)", &ctx).unwrap();
        assert_eq!(f, atom(0).iff(atom(2)));
        // `!` before a graded implication without parentheses is outer
        // negation of the whole atom.
        let f = parse_outer("!a =>{1} b", &ctx).unwrap();
        assert_eq!(f, atom(2).not());
        // Negating the left-hand side needs parentheses.
        let f = parse_outer("(!a) =>{1} b", &ctx).unwrap();
        assert_eq!(
            f,
            OuterFormula::atom(GradedImplication::new(v(0).not(), Grade(2), v(1)))
        );
    }

    #[test]
    fn compound_sides_parse_into_graded_implications() {
        let ctx = ctx(Variant::Lae);
        let f = parse_outer("(a & b) =>{1/2} (b | c)", &ctx).unwrap();
        assert_eq!(
            f,
            OuterFormula::atom(GradedImplication::new(
                v(0).and(v(1)),
                Grade(1),
                v(1).or(v(2)),
            ))
        );
    }

    #[test]
    fn auto_detection_picks_the_level() {
        let ctx = ctx(Variant::Lae);
        assert_eq!(parse("a & b", &ctx).unwrap(), Parsed::Basic(v(0).and(v(1))));
        assert_eq!(
            parse("a =>{1} b", &ctx).unwrap(),
            Parsed::Outer(OuterFormula::atom(GradedImplication::new(v(0), Grade(2), v(1))))
        );
    }

    #[test]
    fn rejects_ill_formed_input() {
        let lae = ctx(Variant::Lae);
        let laec = ctx(Variant::Laec);
        assert!(matches!(
            parse_basic("dle a", &lae).unwrap_err(),
            SyntaxError::Parse { .. }
        ));
        assert!(parse_basic("dle a", &laec).is_ok());
        assert!(matches!(
            parse_basic("x", &lae).unwrap_err(),
            SyntaxError::Parse { msg, .. } if msg.contains("unknown variable")
        ));
        assert!(matches!(
            parse_outer("a =>{2/3} b", &lae).unwrap_err(),
            SyntaxError::UnknownGrade { .. }
        ));
        // Graded implications do not nest.
        assert!(parse_outer("a =>{1} (b =>{1} c)", &lae).is_err());
        assert!(parse_outer("(a =>{1} b) =>{1} c", &lae).is_err());
        // Trailing garbage.
        assert!(parse_basic("a b", &lae).is_err());
        assert!(parse_basic("a &", &lae).is_err());
        assert!(parse_outer("a =>{1} b )", &lae).is_err());
        // Grade syntax.
        assert!(parse_outer("a => b", &lae).is_err());
        assert!(parse_outer("a =>{} b", &lae).is_err());
        assert!(parse_outer("a =>{1/0} b", &lae).is_err());
    }

    #[test]
    fn parse_then_print_round_trips() {
        let ctx = ctx(Variant::Laec);
        for s in [
            "a | b & !c",
            "!(a & b)",
            "dle (a | b) & dge !c",
            "a & (b & c)",
            "(a | b) & c",
        ] {
            let e = parse_basic(s, &ctx).unwrap();
            assert_eq!(print_basic(&e, &ctx.sig), s);
        }
        for s in [
            "a =>{1/2} (b & c)",
            "(a =>{0} b) -> !(b =>{1/2} c)",
            "!!(a =>{1} a)",
            "((a =>{0} b) -> (a =>{1/2} b)) -> (a =>{1} b)",
            "(dle a) =>{1/2} (dge b)",
        ] {
            let f = parse_outer(s, &ctx).unwrap();
            assert_eq!(print_outer(&f, &ctx.sig, &ctx.scale), s);
        }
    }
}
