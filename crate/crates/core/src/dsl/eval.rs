use alloc::format;
use alloc::string::ToString;

use super::ast::Expr;
use super::parser::parse_str;
use crate::charring::{dual, freudenthal_multiplicities, pairing_t, tensor, FormalCharacter};
use crate::error::{Error, Result};
use crate::index::{bwb_index, IndexResult};
use crate::rootsys::RootSystem;
use crate::spinor::{spinor_character, GradedCharacter, Subsystem};
use crate::weight::Weight;

/// Result of evaluating an expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Character(FormalCharacter),
    Integer(i64),
    Index(IndexResult),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Character(_) => "character",
            Value::Integer(_) => "integer",
            Value::Index(_) => "index",
        }
    }
}

/// Evaluation context for one root system. The spinor is built on first use.
#[derive(Debug, Clone)]
pub struct Evaluator<'a> {
    rs: &'a RootSystem,
    spinor: Option<GradedCharacter>,
}

fn weight_of(rs: &RootSystem, labels: &[i64]) -> Result<Weight> {
    if labels.len() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            found: labels.len(),
        });
    }
    Ok(Weight::from_ints(labels))
}

fn type_error(op: &str, a: &Value, b: &Value) -> Error {
    Error::Type(format!("cannot apply {} to {} and {}", op, a.kind(), b.kind()))
}

fn checked(v: Option<i64>) -> Result<Value> {
    v.map(Value::Integer).ok_or(Error::Overflow("integer expression"))
}

impl<'a> Evaluator<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        Evaluator { rs, spinor: None }
    }

    fn spinor(&mut self) -> Result<&GradedCharacter> {
        if self.spinor.is_none() {
            self.spinor = Some(spinor_character(self.rs, &Subsystem::torus())?);
        }
        Ok(self.spinor.as_ref().expect("initialised above"))
    }

    fn character(&mut self, e: &Expr) -> Result<FormalCharacter> {
        match self.eval(e)? {
            Value::Character(c) => Ok(c),
            other => Err(Error::Type(format!("expected a character, found {}", other.kind()))),
        }
    }

    pub fn eval(&mut self, e: &Expr) -> Result<Value> {
        let rs = self.rs;
        match e {
            Expr::IrrepChar(l) => {
                let lambda = weight_of(rs, l)?;
                if !rs.is_dominant(&lambda)? {
                    return Err(Error::NotDominant);
                }
                Ok(Value::Character(freudenthal_multiplicities(rs, &lambda)?))
            }
            Expr::TorusChar(l) => Ok(Value::Character(FormalCharacter::single(weight_of(rs, l)?))),
            Expr::SpinorPlus => Ok(Value::Character(self.spinor()?.even.clone())),
            Expr::SpinorMinus => Ok(Value::Character(self.spinor()?.odd.clone())),
            Expr::Dual(a) => Ok(Value::Character(dual(&self.character(a)?))),
            Expr::Tensor(a, b) => match (self.eval(a)?, self.eval(b)?) {
                (Value::Character(x), Value::Character(y)) => Ok(Value::Character(tensor(&x, &y)?)),
                (Value::Integer(x), Value::Integer(y)) => checked(x.checked_mul(y)),
                (x, y) => Err(type_error("'*'", &x, &y)),
            },
            Expr::Sum(a, b) => match (self.eval(a)?, self.eval(b)?) {
                (Value::Character(x), Value::Character(y)) => Ok(Value::Character(x.plus(&y)?)),
                (Value::Integer(x), Value::Integer(y)) => checked(x.checked_add(y)),
                (x, y) => Err(type_error("'+'", &x, &y)),
            },
            Expr::Diff(a, b) => match (self.eval(a)?, self.eval(b)?) {
                (Value::Character(x), Value::Character(y)) => Ok(Value::Character(x.minus(&y)?)),
                (Value::Integer(x), Value::Integer(y)) => checked(x.checked_sub(y)),
                (x, y) => Err(type_error("'-'", &x, &y)),
            },
            Expr::Dim(a) => match self.eval(a)? {
                Value::Character(c) => Ok(Value::Integer(c.mass())),
                Value::Index(IndexResult::Zero) => Ok(Value::Integer(0)),
                Value::Index(IndexResult::Irreducible { sign, dimension, .. }) => {
                    let d = i64::try_from(dimension).map_err(|_| Error::Overflow("dimension"))?;
                    Ok(Value::Integer(sign * d))
                }
                Value::Integer(_) => Err(Error::Type("dim expects a character".to_string())),
            },
            Expr::Mult(a, l) => {
                let c = self.character(a)?;
                Ok(Value::Integer(c.multiplicity(&weight_of(rs, l)?)))
            }
            Expr::PairT(a, b) => {
                let x = self.character(a)?;
                let y = self.character(b)?;
                Ok(Value::Integer(pairing_t(&x, &y)?))
            }
            Expr::Ind(l) => Ok(Value::Index(bwb_index(rs, &weight_of(rs, l)?)?)),
        }
    }
}

pub fn evaluate(rs: &RootSystem, e: &Expr) -> Result<Value> {
    Evaluator::new(rs).eval(e)
}

/// Tokenizes, parses and evaluates `src`.
pub fn eval_str(rs: &RootSystem, src: &str) -> Result<Value> {
    evaluate(rs, &parse_str(src)?)
}
