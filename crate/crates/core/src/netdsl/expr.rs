use std::fmt;

use crate::matrix::LogicalMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    And,
    Or,
    Xor,
    Iff,
    Implies,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "&",
            BinOp::Or => "|",
            BinOp::Xor => "^",
            BinOp::Iff => "<->",
            BinOp::Implies => "->",
        }
    }

    fn apply(self, a: bool, b: bool) -> bool {
        match self {
            BinOp::And => a && b,
            BinOp::Or => a || b,
            BinOp::Xor => a != b,
            BinOp::Iff => a == b,
            BinOp::Implies => !a || b,
        }
    }
}

/// Update or output rule.
///
/// Values during evaluation are 0-based vector-form positions: for Boolean
/// networks position 0 is true (`δ_2^1`) and position 1 is false (`δ_2^2`);
/// for `k`-valued networks value `j` sits at position `j - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Var(String),
    /// Literal as written: `0`/`1` for Boolean networks, `1..=k` otherwise.
    Const(u64),
    Not(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    /// Explicit truth table over `vars`, values as literals in STP column
    /// order (first variable most significant, value `δ^1` first).
    Table { vars: Vec<String>, values: Vec<u64> },
    /// Structure matrix given directly, over every argument of the context.
    Delta(LogicalMatrix),
}

/// Vector-form position of a literal value.
pub fn literal_position(lit: u64, k: usize) -> Option<usize> {
    if k == 2 {
        match lit {
            1 => Some(0),
            0 => Some(1),
            _ => None,
        }
    } else if lit >= 1 && lit as usize <= k {
        Some(lit as usize - 1)
    } else {
        None
    }
}

/// Inverse of [`literal_position`].
pub fn position_literal(pos: usize, k: usize) -> u64 {
    if k == 2 {
        (pos == 0) as u64
    } else {
        pos as u64 + 1
    }
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn not(e: Expr) -> Expr {
        Expr::Not(Box::new(e))
    }

    pub fn bin(op: BinOp, a: Expr, b: Expr) -> Expr {
        Expr::Binary(op, Box::new(a), Box::new(b))
    }

    /// Evaluates against `values[i]` = position of `vars[i]`.
    ///
    /// Panics on references outside `vars` or on ill-formed literals; the
    /// parser rejects both before any evaluation happens.
    pub fn eval(&self, k: usize, vars: &[String], values: &[usize]) -> usize {
        let lookup = |name: &str| -> usize {
            let i = vars
                .iter()
                .position(|v| v == name)
                .unwrap_or_else(|| panic!("unbound variable {name}"));
            values[i]
        };
        match self {
            Expr::Var(name) => lookup(name),
            Expr::Const(lit) => literal_position(*lit, k).expect("validated literal"),
            Expr::Not(e) => {
                if e.eval(k, vars, values) == 0 {
                    1
                } else {
                    0
                }
            }
            Expr::Binary(op, a, b) => {
                let a = a.eval(k, vars, values) == 0;
                let b = b.eval(k, vars, values) == 0;
                if op.apply(a, b) {
                    0
                } else {
                    1
                }
            }
            Expr::Table { vars: tvars, values: table } => {
                let mut col = 0usize;
                for v in tvars {
                    col = col * k + lookup(v);
                }
                literal_position(table[col], k).expect("validated literal")
            }
            Expr::Delta(m) => {
                let mut col = 0usize;
                for &v in values {
                    col = col * k + v;
                }
                m.row_of(col)
            }
        }
    }

    /// Variables referenced anywhere in the expression.
    pub fn referenced_vars(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Var(v) => out.push(v),
            Expr::Const(_) | Expr::Delta(_) => {}
            Expr::Not(e) => e.collect_vars(out),
            Expr::Binary(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Table { vars, .. } => out.extend(vars.iter().map(String::as_str)),
        }
    }

    /// Whether the expression uses a Boolean-only connective.
    pub fn uses_named_operator(&self) -> bool {
        match self {
            Expr::Not(_) | Expr::Binary(..) => true,
            Expr::Var(_) | Expr::Const(_) | Expr::Table { .. } | Expr::Delta(_) => false,
        }
    }
}

impl fmt::Display for Expr {
    /// Fully parenthesized; the output parses back to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Not(e) => match **e {
                Expr::Binary(..) => write!(f, "!({e})"),
                _ => write!(f, "!{e}"),
            },
            Expr::Binary(op, a, b) => {
                let wrap = |e: &Expr| matches!(e, Expr::Binary(..));
                if wrap(a) {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                write!(f, " {} ", op.symbol())?;
                if wrap(b) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            Expr::Table { vars, values } => {
                write!(f, "table({}) [", vars.join(", "))?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "]")
            }
            Expr::Delta(m) => write!(f, "{m}"),
        }
    }
}
