use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

/// Expression tree. Label lists are Dynkin labels; their length is checked
/// against the rank only when evaluating.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    IrrepChar(Vec<i64>),
    TorusChar(Vec<i64>),
    SpinorPlus,
    SpinorMinus,
    Tensor(Box<Expr>, Box<Expr>),
    Dual(Box<Expr>),
    Sum(Box<Expr>, Box<Expr>),
    Diff(Box<Expr>, Box<Expr>),
    Dim(Box<Expr>),
    Mult(Box<Expr>, Vec<i64>),
    PairT(Box<Expr>, Box<Expr>),
    Ind(Vec<i64>),
}

impl Expr {
    fn is_additive(&self) -> bool {
        matches!(self, Expr::Sum(..) | Expr::Diff(..))
    }
}

struct Labels<'a>(&'a [i64]);

impl fmt::Display for Labels<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x)?;
        }
        f.write_str("]")
    }
}

struct Wrapped<'a>(&'a Expr, bool);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Prints in the concrete syntax with the fewest parentheses that reparse to
/// the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::IrrepChar(l) => write!(f, "V{}", Labels(l)),
            Expr::TorusChar(l) => write!(f, "U{}", Labels(l)),
            Expr::SpinorPlus => f.write_str("S+"),
            Expr::SpinorMinus => f.write_str("S-"),
            Expr::Tensor(a, b) => write!(
                f,
                "{}*{}",
                Wrapped(a, a.is_additive()),
                Wrapped(b, b.is_additive() || matches!(**b, Expr::Tensor(..)))
            ),
            Expr::Sum(a, b) => write!(f, "{}+{}", a, Wrapped(b, b.is_additive())),
            Expr::Diff(a, b) => write!(f, "{}-{}", a, Wrapped(b, b.is_additive())),
            Expr::Dual(e) => write!(f, "dual({})", e),
            Expr::Dim(e) => write!(f, "dim({})", e),
            Expr::Mult(e, l) => write!(f, "mult({},{})", e, Labels(l)),
            Expr::PairT(a, b) => write!(f, "pair({},{})", a, b),
            Expr::Ind(l) => write!(f, "ind({})", Labels(l)),
        }
    }
}
