//! Rendering of library objects in the document format.

use gcgeom::isotropic::MaxIsotropic;
use gcgeom::{Coeff, GenVector, Mat, MixedForm, Poly, Qi};
use serde_json::{json, Value};

/// Coefficients that render as expressions.
pub trait Expr: Coeff {
    fn expr(&self, names: &[String]) -> String;
}

impl Expr for Qi {
    fn expr(&self, _: &[String]) -> String {
        self.to_string()
    }
}

impl Expr for Poly {
    fn expr(&self, names: &[String]) -> String {
        self.render(names)
    }
}

/// Renders with a fixed list of coordinate names.
#[derive(Clone, Debug)]
pub struct Renderer {
    pub names: Vec<String>,
}

impl Renderer {
    #[must_use]
    pub fn new(names: &[String]) -> Self {
        Self {
            names: names.to_vec(),
        }
    }

    /// Names `u1, …, ud` for parameters of a submanifold.
    #[must_use]
    pub fn parameters(d: usize) -> Self {
        Self {
            names: (1..=d).map(|i| format!("u{i}")).collect(),
        }
    }

    pub fn expr<C: Expr>(&self, c: &C) -> Value {
        Value::String(c.expr(&self.names))
    }

    pub fn vector<C: Expr>(&self, v: &[C]) -> Value {
        Value::Array(v.iter().map(|c| self.expr(c)).collect())
    }

    pub fn vectors<C: Expr>(&self, vs: &[Vec<C>]) -> Value {
        Value::Array(vs.iter().map(|v| self.vector(v)).collect())
    }

    /// Terms `{coeff, basis}` with 1-based indices.
    pub fn form<C: Expr>(&self, f: &MixedForm<C>) -> Value {
        Value::Array(
            f.terms()
                .map(|(mask, c)| {
                    let basis: Vec<usize> = (0..16)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| i + 1)
                        .collect();
                    json!({ "coeff": c.expr(&self.names), "basis": basis })
                })
                .collect(),
        )
    }

    pub fn section<C: Expr>(&self, s: &GenVector<C>) -> Value {
        json!({ "vector": self.vector(&s.vec), "covector": self.vector(&s.covec) })
    }

    pub fn sections<C: Expr>(&self, s: &[GenVector<C>]) -> Value {
        Value::Array(s.iter().map(|x| self.section(x)).collect())
    }

    pub fn matrix<C: Expr>(&self, m: &Mat<C>) -> Value {
        self.vectors(&m.to_rows())
    }

    pub fn isotropic(&self, l: &MaxIsotropic) -> Value {
        json!({
            "type": l.type_k(),
            "basis": self.sections(l.basis()),
            "delta": self.vectors(l.delta()),
            "epsilon": self.matrix(l.eps()),
            "annihilator": self.vectors(l.ann()),
        })
    }

    pub fn point(&self, p: &[Qi]) -> Value {
        self.vector(p)
    }
}
