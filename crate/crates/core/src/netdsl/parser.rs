use std::collections::BTreeMap;

use super::expr::{literal_position, BinOp, Expr};
use super::lexer::{tokenize, Tok, Token};
use super::{Network, Nominal, ParseError, ParseErrorKind, TransitionEdge, TransitionSpec};
use crate::matrix::LogicalMatrix;

type PResult<T> = Result<T, ParseError>;

struct Cursor {
    toks: Vec<Token>,
    pos: usize,
}

impl Cursor {
    fn new(src: &str) -> PResult<Self> {
        Ok(Cursor {
            toks: tokenize(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        let i = (self.pos + ahead).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn skip_newlines(&mut self) {
        while self.peek().tok == Tok::Newline {
            self.bump();
        }
    }

    fn at_eof(&self) -> bool {
        self.peek().tok == Tok::Eof
    }

    fn err<T>(&self, tok: &Token, kind: ParseErrorKind) -> PResult<T> {
        Err(ParseError::new(tok.line, tok.col, kind))
    }

    fn unexpected<T>(&self, expected: &str) -> PResult<T> {
        let t = self.peek();
        self.err(
            t,
            ParseErrorKind::Syntax(format!("expected {expected}, found {}", t.tok.describe())),
        )
    }

    fn expect(&mut self, tok: Tok) -> PResult<Token> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            self.unexpected(&tok.describe())
        }
    }

    fn ident(&mut self) -> PResult<(String, Token)> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                Ok((s, self.bump()))
            }
            _ => self.unexpected("identifier"),
        }
    }

    fn int(&mut self) -> PResult<(u64, Token)> {
        match self.peek().tok {
            Tok::Int(v) => Ok((v, self.bump())),
            _ => self.unexpected("integer"),
        }
    }

    fn end_of_statement(&mut self) -> PResult<()> {
        match self.peek().tok {
            Tok::Newline => {
                self.bump();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => self.unexpected("end of line"),
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    fn skip_bracket_newlines(&mut self) {
        self.skip_newlines();
    }
}

fn usize_of(v: u64, tok: &Token, what: &str) -> PResult<usize> {
    usize::try_from(v).map_err(|_| {
        ParseError::new(tok.line, tok.col, ParseErrorKind::OutOfRange(format!("{what} {v}")))
    })
}

/// `delta <rows> [i1 i2 ...]`, cursor at `delta`.
fn delta_literal(c: &mut Cursor) -> PResult<(LogicalMatrix, Token)> {
    let (_, start) = c.ident()?;
    let (rows, rows_tok) = c.int()?;
    let rows = usize_of(rows, &rows_tok, "row count")?;
    if rows == 0 {
        return c.err(&rows_tok, ParseErrorKind::OutOfRange("delta rows must be positive".into()));
    }
    c.expect(Tok::LBrack)?;
    let mut idx = Vec::new();
    loop {
        c.skip_bracket_newlines();
        match c.peek().tok {
            Tok::Int(v) => {
                let t = c.bump();
                if v == 0 || v as usize > rows {
                    return c.err(&t, ParseErrorKind::OutOfRange(format!("delta index {v} not in 1..={rows}")));
                }
                idx.push(v as usize);
            }
            Tok::Comma => {
                c.bump();
            }
            Tok::RBrack => {
                c.bump();
                break;
            }
            _ => return c.unexpected("delta index or ']'"),
        }
    }
    if idx.is_empty() {
        return c.err(&start, ParseErrorKind::Syntax("empty delta literal".into()));
    }
    let m = LogicalMatrix::delta(rows, &idx).expect("indices validated");
    Ok((m, start))
}

/// `[r11 r12 ...; r21 ...]` with rows also separable by newlines.
fn rows_literal(c: &mut Cursor) -> PResult<(Vec<Vec<bool>>, Token)> {
    let start = c.expect(Tok::LBrack)?;
    let mut rows: Vec<Vec<bool>> = vec![Vec::new()];
    loop {
        match c.peek().tok {
            Tok::Int(v) => {
                let t = c.bump();
                if v > 1 {
                    return c.err(&t, ParseErrorKind::Syntax(format!("Boolean entry must be 0 or 1, found {v}")));
                }
                rows.last_mut().expect("nonempty").push(v == 1);
            }
            Tok::Semi | Tok::Newline => {
                c.bump();
                if !rows.last().expect("nonempty").is_empty() {
                    rows.push(Vec::new());
                }
            }
            Tok::Comma => {
                c.bump();
            }
            Tok::RBrack => {
                c.bump();
                break;
            }
            _ => return c.unexpected("0, 1, ';' or ']'"),
        }
    }
    if rows.last().is_some_and(|r| r.is_empty()) {
        rows.pop();
    }
    if rows.is_empty() {
        return c.err(&start, ParseErrorKind::Syntax("empty matrix literal".into()));
    }
    let width = rows[0].len();
    if let Some(bad) = rows.iter().position(|r| r.len() != width) {
        return c.err(
            &start,
            ParseErrorKind::ArityMismatch(format!(
                "row {} has {} entries, expected {width}",
                bad + 1,
                rows[bad].len()
            )),
        );
    }
    Ok((rows, start))
}

/// Expression parsing in the scope of a fixed variable list.
struct ExprParser<'a> {
    k: usize,
    scope: &'a [String],
}

impl ExprParser<'_> {
    fn check_literal(&self, c: &Cursor, v: u64, tok: &Token) -> PResult<()> {
        if literal_position(v, self.k).is_none() {
            let allowed = if self.k == 2 {
                "0 or 1".to_string()
            } else {
                format!("1..={}", self.k)
            };
            return c.err(tok, ParseErrorKind::ArityMismatch(format!("constant {v} is not a value of the domain ({allowed})")));
        }
        Ok(())
    }

    fn check_var(&self, c: &Cursor, name: &str, tok: &Token) -> PResult<()> {
        if self.scope.iter().any(|v| v == name) {
            Ok(())
        } else {
            c.err(tok, ParseErrorKind::UndeclaredVariable(name.to_string()))
        }
    }

    /// Right-hand side: a `delta` literal over the whole scope, or an expression.
    fn rhs(&self, c: &mut Cursor, rows: Option<usize>) -> PResult<Expr> {
        if c.is_keyword("delta") {
            let (m, tok) = delta_literal(c)?;
            if let Some(r) = rows {
                if m.rows() != r {
                    return c.err(&tok, ParseErrorKind::ArityMismatch(format!("structure matrix has {} rows, network arity is {r}", m.rows())));
                }
            }
            let cols = (self.k as u128).pow(self.scope.len() as u32);
            if m.cols() as u128 != cols {
                return c.err(
                    &tok,
                    ParseErrorKind::ArityMismatch(format!(
                        "structure matrix has {} columns, expected {cols} = {}^{}",
                        m.cols(),
                        self.k,
                        self.scope.len()
                    )),
                );
            }
            return Ok(Expr::Delta(m));
        }
        self.expr(c)
    }

    fn expr(&self, c: &mut Cursor) -> PResult<Expr> {
        let lhs = self.or(c)?;
        let op = match c.peek().tok {
            Tok::Iff => BinOp::Iff,
            Tok::Arrow => BinOp::Implies,
            _ => return Ok(lhs),
        };
        let op_tok = c.bump();
        self.check_operand_follows(c, &op_tok)?;
        let rhs = self.or(c)?;
        if matches!(c.peek().tok, Tok::Iff | Tok::Arrow) {
            let t = c.peek().clone();
            return c.err(
                &t,
                ParseErrorKind::Syntax(format!(
                    "{} cannot follow {} without parentheses",
                    t.tok.describe(),
                    op_tok.tok.describe()
                )),
            );
        }
        self.binary(c, op, &op_tok, lhs, rhs)
    }

    fn binary(&self, c: &Cursor, op: BinOp, tok: &Token, a: Expr, b: Expr) -> PResult<Expr> {
        if self.k != 2 {
            return c.err(tok, ParseErrorKind::UnsupportedOperator(tok.tok.describe()));
        }
        Ok(Expr::bin(op, a, b))
    }

    fn check_operand_follows(&self, c: &Cursor, op_tok: &Token) -> PResult<()> {
        match c.peek().tok {
            Tok::Ident(_) | Tok::Int(_) | Tok::LParen | Tok::Not => Ok(()),
            _ => c.err(
                op_tok,
                ParseErrorKind::Syntax(format!(
                    "operator {} is missing its right operand",
                    op_tok.tok.describe()
                )),
            ),
        }
    }

    fn level(
        &self,
        c: &mut Cursor,
        tok: Tok,
        op: BinOp,
        next: fn(&Self, &mut Cursor) -> PResult<Expr>,
    ) -> PResult<Expr> {
        let mut lhs = next(self, c)?;
        while c.peek().tok == tok {
            let op_tok = c.bump();
            self.check_operand_follows(c, &op_tok)?;
            let rhs = next(self, c)?;
            lhs = self.binary(c, op, &op_tok, lhs, rhs)?;
        }
        Ok(lhs)
    }

    fn or(&self, c: &mut Cursor) -> PResult<Expr> {
        self.level(c, Tok::Or, BinOp::Or, Self::xor)
    }

    fn xor(&self, c: &mut Cursor) -> PResult<Expr> {
        self.level(c, Tok::Xor, BinOp::Xor, Self::and)
    }

    fn and(&self, c: &mut Cursor) -> PResult<Expr> {
        self.level(c, Tok::And, BinOp::And, Self::unary)
    }

    fn unary(&self, c: &mut Cursor) -> PResult<Expr> {
        if c.peek().tok == Tok::Not {
            let t = c.bump();
            self.check_operand_follows(c, &t)?;
            if self.k != 2 {
                return c.err(&t, ParseErrorKind::UnsupportedOperator(t.tok.describe()));
            }
            return Ok(Expr::not(self.unary(c)?));
        }
        self.atom(c)
    }

    fn atom(&self, c: &mut Cursor) -> PResult<Expr> {
        match c.peek().tok.clone() {
            Tok::Ident(name) if name == "table" && *c.peek_at(1) == Tok::LParen => self.table(c),
            Tok::Ident(name) if name == "delta" => {
                let t = c.peek().clone();
                c.err(&t, ParseErrorKind::Syntax("a delta literal must be the whole right-hand side".into()))
            }
            Tok::Ident(name) => {
                let t = c.bump();
                self.check_var(c, &name, &t)?;
                Ok(Expr::Var(name))
            }
            Tok::Int(v) => {
                let t = c.bump();
                self.check_literal(c, v, &t)?;
                Ok(Expr::Const(v))
            }
            Tok::LParen => {
                c.bump();
                let e = self.expr(c)?;
                c.expect(Tok::RParen)?;
                Ok(e)
            }
            _ => c.unexpected("operand"),
        }
    }

    fn table(&self, c: &mut Cursor) -> PResult<Expr> {
        let (_, start) = c.ident()?;
        c.expect(Tok::LParen)?;
        let mut vars: Vec<String> = Vec::new();
        loop {
            let (name, t) = c.ident()?;
            self.check_var(c, &name, &t)?;
            if vars.contains(&name) {
                return c.err(&t, ParseErrorKind::DuplicateDefinition(format!("table argument '{name}'")));
            }
            vars.push(name);
            match c.peek().tok {
                Tok::Comma => {
                    c.bump();
                }
                Tok::RParen => {
                    c.bump();
                    break;
                }
                _ => return c.unexpected("',' or ')'"),
            }
        }
        c.expect(Tok::LBrack)?;
        let mut values = Vec::new();
        loop {
            c.skip_bracket_newlines();
            match c.peek().tok {
                Tok::Int(v) => {
                    let t = c.bump();
                    self.check_literal(c, v, &t)?;
                    values.push(v);
                }
                Tok::Comma => {
                    c.bump();
                }
                Tok::RBrack => {
                    c.bump();
                    break;
                }
                _ => return c.unexpected("table value or ']'"),
            }
        }
        let expected = (self.k as u128).pow(vars.len() as u32);
        if values.len() as u128 != expected {
            return c.err(
                &start,
                ParseErrorKind::ArityMismatch(format!(
                    "table over {} variables needs {expected} values, found {}",
                    vars.len(),
                    values.len()
                )),
            );
        }
        Ok(Expr::Table { vars, values })
    }
}

#[derive(Default)]
struct NetworkBuilder {
    name: String,
    k: Option<usize>,
    states: Vec<String>,
    inputs: Vec<String>,
    disturbances: Vec<String>,
    updates: BTreeMap<String, Expr>,
    output: Option<Expr>,
    nominal: Nominal,
}

impl NetworkBuilder {
    fn k(&self) -> usize {
        self.k.unwrap_or(2)
    }

    fn declared(&self, name: &str) -> bool {
        self.states.iter().chain(&self.inputs).chain(&self.disturbances).any(|v| v == name)
    }

    fn rules_started(&self) -> bool {
        !self.updates.is_empty() || self.output.is_some() || !self.nominal.is_empty()
    }

    fn arguments(&self) -> Vec<String> {
        self.disturbances.iter().chain(&self.inputs).chain(&self.states).cloned().collect()
    }
}

const RESERVED: &[&str] = &["network", "k", "state", "input", "disturbance", "nominal", "table", "delta", "y"];

/// Parses `.bn` text into a [`Network`].
pub fn parse_network(text: &str) -> Result<Network, ParseError> {
    let mut c = Cursor::new(text)?;
    c.skip_newlines();
    if !c.is_keyword("network") {
        return c.unexpected("'network <name>' header");
    }
    c.bump();
    let (name, _) = c.ident()?;
    c.end_of_statement()?;
    let mut b = NetworkBuilder {
        name,
        ..Default::default()
    };

    loop {
        c.skip_newlines();
        if c.at_eof() {
            break;
        }
        let head = c.peek().clone();
        let Tok::Ident(word) = head.tok.clone() else {
            return c.unexpected("statement");
        };
        match (word.as_str(), c.peek_at(1).clone()) {
            ("k", Tok::Eq) => {
                c.bump();
                c.bump();
                let (v, t) = c.int()?;
                if b.k.is_some() {
                    return c.err(&head, ParseErrorKind::DuplicateDefinition("arity k".into()));
                }
                if !b.states.is_empty() || !b.inputs.is_empty() || !b.disturbances.is_empty() || b.rules_started() {
                    return c.err(&head, ParseErrorKind::Syntax("'k = ..' must precede declarations and rules".into()));
                }
                if v < 2 {
                    return c.err(&t, ParseErrorKind::ArityMismatch(format!("k must be at least 2, found {v}")));
                }
                b.k = Some(usize_of(v, &t, "arity")?);
            }
            ("state" | "input" | "disturbance", Tok::Ident(_)) => {
                c.bump();
                if b.rules_started() {
                    return c.err(&head, ParseErrorKind::Syntax("declarations must precede rules".into()));
                }
                loop {
                    let (v, t) = c.ident()?;
                    if RESERVED.contains(&v.as_str()) {
                        return c.err(&t, ParseErrorKind::Syntax(format!("'{v}' is a reserved word")));
                    }
                    if b.declared(&v) {
                        return c.err(&t, ParseErrorKind::DuplicateDefinition(format!("variable '{v}'")));
                    }
                    match word.as_str() {
                        "state" => b.states.push(v),
                        "input" => b.inputs.push(v),
                        _ => b.disturbances.push(v),
                    }
                    if c.peek().tok == Tok::Comma {
                        c.bump();
                    } else {
                        break;
                    }
                }
            }
            ("y", Tok::Eq) => {
                c.bump();
                c.bump();
                if b.output.is_some() {
                    return c.err(&head, ParseErrorKind::DuplicateDefinition("output y".into()));
                }
                let p = ExprParser { k: b.k(), scope: &b.states };
                b.output = Some(p.rhs(&mut c, None)?);
            }
            ("nominal", Tok::Ident(_)) => {
                c.bump();
                if *c.peek_at(1) == Tok::Prime {
                    let (v, t) = c.ident()?;
                    c.bump();
                    c.expect(Tok::Eq)?;
                    if !b.states.contains(&v) {
                        return c.err(&t, ParseErrorKind::UndeclaredVariable(v));
                    }
                    if b.nominal.overrides.iter().any(|(s, _)| *s == v) {
                        return c.err(&t, ParseErrorKind::DuplicateDefinition(format!("nominal rule for '{v}'")));
                    }
                    let scope: Vec<String> = b.inputs.iter().chain(&b.states).cloned().collect();
                    let p = ExprParser { k: b.k(), scope: &scope };
                    let e = p.expr(&mut c)?;
                    b.nominal.overrides.push((v, e));
                } else {
                    loop {
                        let (v, t) = c.ident()?;
                        if !b.disturbances.contains(&v) {
                            return c.err(&t, ParseErrorKind::UndeclaredVariable(v));
                        }
                        if b.nominal.assignment.iter().any(|(d, _)| *d == v) {
                            return c.err(&t, ParseErrorKind::DuplicateDefinition(format!("nominal value of '{v}'")));
                        }
                        c.expect(Tok::Eq)?;
                        let (val, vt) = c.int()?;
                        if literal_position(val, b.k()).is_none() {
                            return c.err(&vt, ParseErrorKind::ArityMismatch(format!("nominal value {val} outside the domain")));
                        }
                        b.nominal.assignment.push((v, val));
                        if c.peek().tok == Tok::Comma {
                            c.bump();
                        } else {
                            break;
                        }
                    }
                }
            }
            (_, Tok::Prime) => {
                c.bump();
                c.bump();
                c.expect(Tok::Eq)?;
                if !b.states.contains(&word) {
                    return c.err(&head, ParseErrorKind::UndeclaredVariable(word));
                }
                if b.updates.contains_key(&word) {
                    return c.err(&head, ParseErrorKind::DuplicateDefinition(format!("update rule for '{word}'")));
                }
                let args = b.arguments();
                let p = ExprParser { k: b.k(), scope: &args };
                let e = p.rhs(&mut c, Some(b.k()))?;
                b.updates.insert(word, e);
            }
            ("network", _) => {
                return c.err(&head, ParseErrorKind::DuplicateDefinition("network header".into()));
            }
            _ => return c.unexpected("declaration or rule"),
        }
        c.end_of_statement()?;
    }

    let eof = c.peek().clone();
    if b.states.is_empty() {
        return c.err(&eof, ParseErrorKind::Missing("no state variables declared".into()));
    }
    let mut updates = Vec::with_capacity(b.states.len());
    for s in &b.states {
        match b.updates.remove(s) {
            Some(e) => updates.push(e),
            None => return c.err(&eof, ParseErrorKind::Missing(format!("update rule for '{s}'"))),
        }
    }
    if !b.nominal.is_empty() && b.disturbances.is_empty() {
        return c.err(&eof, ParseErrorKind::Syntax("'nominal' lines require declared disturbances".into()));
    }
    let k = b.k();
    Ok(Network {
        name: b.name,
        k,
        state_vars: b.states,
        input_vars: b.inputs,
        disturbance_vars: b.disturbances,
        updates,
        output: b.output,
        nominal: b.nominal,
    })
}

/// Parses `.ts` text into a [`TransitionSpec`].
pub fn parse_ts(text: &str) -> Result<TransitionSpec, ParseError> {
    let mut c = Cursor::new(text)?;
    c.skip_newlines();
    if !c.is_keyword("ts") {
        return c.unexpected("'ts <name>' header");
    }
    c.bump();
    let (name, _) = c.ident()?;
    c.end_of_statement()?;

    let mut n_states: Option<usize> = None;
    let mut n_inputs: Option<usize> = None;
    let mut n_outputs: Option<usize> = None;
    let mut edges: Vec<TransitionEdge> = Vec::new();
    let mut observations: BTreeMap<usize, usize> = BTreeMap::new();
    let mut l_literal = false;
    let mut h_literal = false;

    let need_states = |c: &Cursor, n: Option<usize>, tok: &Token| -> PResult<usize> {
        match n {
            Some(n) => Ok(n),
            None => c.err(tok, ParseErrorKind::Syntax("'states <n>' must come first".into())),
        }
    };

    loop {
        c.skip_newlines();
        if c.at_eof() {
            break;
        }
        let head = c.peek().clone();
        let Tok::Ident(word) = head.tok.clone() else {
            return c.unexpected("statement");
        };
        match word.as_str() {
            "states" | "inputs" | "outputs" => {
                c.bump();
                let (v, t) = c.int()?;
                let v = usize_of(v, &t, &word)?;
                if v == 0 {
                    return c.err(&t, ParseErrorKind::OutOfRange(format!("{word} must be positive")));
                }
                let slot = match word.as_str() {
                    "states" => &mut n_states,
                    "inputs" => &mut n_inputs,
                    _ => &mut n_outputs,
                };
                if slot.is_some() {
                    return c.err(&head, ParseErrorKind::DuplicateDefinition(format!("'{word}'")));
                }
                if word != "outputs" && (!edges.is_empty() || l_literal) {
                    return c.err(&head, ParseErrorKind::Syntax(format!("'{word}' must precede transitions")));
                }
                *slot = Some(v);
            }
            "trans" => {
                c.bump();
                let n = need_states(&c, n_states, &head)?;
                let m = n_inputs.unwrap_or(1);
                if l_literal {
                    return c.err(&head, ParseErrorKind::DuplicateDefinition("transition relation (both L and trans lines)".into()));
                }
                let (state, st) = c.int()?;
                let input = if let Tok::Int(_) = c.peek().tok {
                    let (u, ut) = c.int()?;
                    if u == 0 || u as usize > m {
                        return c.err(&ut, ParseErrorKind::OutOfRange(format!("input {u} not in 1..={m}")));
                    }
                    u as usize
                } else if m == 1 {
                    1
                } else {
                    return c.unexpected("input index");
                };
                if state == 0 || state as usize > n {
                    return c.err(&st, ParseErrorKind::OutOfRange(format!("state {state} not in 1..={n}")));
                }
                c.expect(Tok::Arrow)?;
                let mut successors = Vec::new();
                while let Tok::Int(v) = c.peek().tok {
                    let t = c.bump();
                    if v == 0 || v as usize > n {
                        return c.err(&t, ParseErrorKind::OutOfRange(format!("state {v} not in 1..={n}")));
                    }
                    successors.push(v as usize);
                }
                edges.push(TransitionEdge {
                    state: state as usize,
                    input,
                    successors,
                });
            }
            "obs" => {
                c.bump();
                let n = need_states(&c, n_states, &head)?;
                if h_literal {
                    return c.err(&head, ParseErrorKind::DuplicateDefinition("observation map (both H and obs lines)".into()));
                }
                let (state, st) = c.int()?;
                if state == 0 || state as usize > n {
                    return c.err(&st, ParseErrorKind::OutOfRange(format!("state {state} not in 1..={n}")));
                }
                c.expect(Tok::Arrow)?;
                let (o, ot) = c.int()?;
                if o == 0 || n_outputs.is_some_and(|p| o as usize > p) {
                    return c.err(&ot, ParseErrorKind::OutOfRange(format!("output {o} not in 1..={}", n_outputs.unwrap_or(0))));
                }
                if observations.insert(state as usize, o as usize).is_some() {
                    return c.err(&st, ParseErrorKind::DuplicateDefinition(format!("observation of state {state}")));
                }
            }
            "L" | "H" => {
                c.bump();
                c.expect(Tok::Eq)?;
                let n = need_states(&c, n_states, &head)?;
                let m = n_inputs.unwrap_or(1);
                if word == "L" {
                    if l_literal || !edges.is_empty() {
                        return c.err(&head, ParseErrorKind::DuplicateDefinition("transition relation".into()));
                    }
                    l_literal = true;
                    let rows: Vec<Vec<bool>> = if c.is_keyword("delta") {
                        let (lm, t) = delta_literal(&mut c)?;
                        if lm.rows() != n {
                            return c.err(&t, ParseErrorKind::ArityMismatch(format!("L has {} rows, expected {n}", lm.rows())));
                        }
                        lm.to_boolean().to_rows().into_iter().map(|r| r.into_iter().map(|v| v == 1).collect()).collect()
                    } else {
                        rows_literal(&mut c)?.0
                    };
                    if rows.len() != n || rows[0].len() != n * m {
                        return c.err(
                            &head,
                            ParseErrorKind::ArityMismatch(format!(
                                "L must be {n}x{}, found {}x{}",
                                n * m,
                                rows.len(),
                                rows[0].len()
                            )),
                        );
                    }
                    for u in 0..m {
                        for x in 0..n {
                            let succ: Vec<usize> = (0..n).filter(|&i| rows[i][u * n + x]).map(|i| i + 1).collect();
                            if !succ.is_empty() {
                                edges.push(TransitionEdge {
                                    state: x + 1,
                                    input: u + 1,
                                    successors: succ,
                                });
                            }
                        }
                    }
                } else {
                    if h_literal || !observations.is_empty() {
                        return c.err(&head, ParseErrorKind::DuplicateDefinition("observation map".into()));
                    }
                    h_literal = true;
                    let (hm, t) = delta_literal(&mut c)?;
                    if hm.cols() != n {
                        return c.err(&t, ParseErrorKind::ArityMismatch(format!("H has {} columns, expected {n}", hm.cols())));
                    }
                    if let Some(p) = n_outputs {
                        if p != hm.rows() {
                            return c.err(&t, ParseErrorKind::ArityMismatch(format!("H has {} rows, 'outputs' says {p}", hm.rows())));
                        }
                    }
                    n_outputs = Some(hm.rows());
                    for (j, o) in hm.delta_indices().into_iter().enumerate() {
                        observations.insert(j + 1, o);
                    }
                }
            }
            "ts" => return c.err(&head, ParseErrorKind::DuplicateDefinition("ts header".into())),
            _ => return c.unexpected("ts statement"),
        }
        c.end_of_statement()?;
    }

    let eof = c.peek().clone();
    let Some(n) = n_states else {
        return c.err(&eof, ParseErrorKind::Missing("'states <n>'".into()));
    };
    if !observations.is_empty() {
        if let Some(s) = (1..=n).find(|s| !observations.contains_key(s)) {
            return c.err(&eof, ParseErrorKind::Missing(format!("observation for state {s}")));
        }
        if n_outputs.is_none() {
            n_outputs = observations.values().copied().max();
        }
    }
    Ok(TransitionSpec {
        name,
        n_states: n,
        n_inputs: n_inputs.unwrap_or(1),
        n_outputs,
        edges,
        observations,
    })
}
