//! Exterior calculus on polynomial forms over `R^m`.

use crate::error::{Error, Result};
use crate::form::{contract_sign, degree, MixedForm, Variance};
use crate::genvec::GenVector;
use crate::poly::Poly;
use crate::scalar::Coeff;

/// Polynomial form on a chart.
pub type PolyForm = MixedForm<Poly>;
/// Polynomial section of `T ⊕ T*`.
pub type Section = GenVector<Poly>;

/// Exterior derivative.
#[must_use]
pub fn d(phi: &PolyForm) -> PolyForm {
    let m = phi.dim();
    let mut out = MixedForm::zero(m);
    for (mask, c) in phi.terms() {
        for i in 0..m {
            if mask & (1 << i) != 0 {
                continue;
            }
            let p = c.partial(i);
            if p.is_zero() {
                continue;
            }
            let s = contract_sign(i, mask | (1 << i)).expect("bit set");
            out.add_term(mask | (1 << i), if s > 0 { p } else { p.negate() });
        }
    }
    out
}

/// A real closed three-form.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedThreeForm {
    h: PolyForm,
}

impl ClosedThreeForm {
    /// Checks degree three, realness and `dH = 0`.
    pub fn new(h: PolyForm) -> Result<Self> {
        if h.variance() != Variance::Form || h.terms().any(|(m, _)| degree(m) != 3) {
            return Err(Error::Invalid("twist must be a pure three-form".into()));
        }
        if h.terms().any(|(_, c)| *c != c.conj()) {
            return Err(Error::Invalid("twist must be real".into()));
        }
        if !d(&h).is_zero() {
            return Err(Error::NotClosed);
        }
        Ok(Self { h })
    }

    #[must_use]
    pub fn zero(m: usize) -> Self {
        Self {
            h: MixedForm::zero(m),
        }
    }

    #[must_use]
    pub fn form(&self) -> &PolyForm {
        &self.h
    }
}

/// `d_H φ = dφ + H ∧ φ` for an arbitrary three-form `H`.
#[must_use]
pub fn d_twisted(phi: &PolyForm, h: &PolyForm) -> PolyForm {
    d(phi).plus(&h.wedge_unchecked(phi))
}

#[must_use]
pub fn d_h(phi: &PolyForm, h: &ClosedThreeForm) -> PolyForm {
    d_twisted(phi, h.form())
}

/// Derivative of `f` along the vector field `x`.
#[must_use]
pub fn apply_vector(x: &[Poly], f: &Poly) -> Poly {
    x.iter().enumerate().fold(Poly::zero(), |acc, (i, xi)| {
        if xi.is_zero() {
            acc
        } else {
            acc.plus(&xi.times(&f.partial(i)))
        }
    })
}

/// Lie bracket of vector fields.
#[must_use]
pub fn lie_bracket(x: &[Poly], y: &[Poly]) -> Vec<Poly> {
    (0..x.len())
        .map(|j| apply_vector(x, &y[j]).minus(&apply_vector(y, &x[j])))
        .collect()
}

/// `L_X φ = i_X dφ + d i_X φ`.
#[must_use]
pub fn lie_derivative(x: &[Poly], phi: &PolyForm) -> PolyForm {
    d(phi).contract(x).plus(&d(&phi.contract(x)))
}

/// The one-form with components `c`.
#[must_use]
pub fn one_form(c: &[Poly]) -> PolyForm {
    MixedForm::degree_one(c.len(), Variance::Form, c)
}

/// Components of the degree-one part.
#[must_use]
pub fn components(f: &PolyForm) -> Vec<Poly> {
    (0..f.dim()).map(|i| f.get(1 << i)).collect()
}

/// Gradient `df` as covector components.
#[must_use]
pub fn gradient(f: &Poly, m: usize) -> Vec<Poly> {
    (0..m).map(|i| f.partial(i)).collect()
}

/// Contraction `i_X i_Y H` as covector components.
#[must_use]
pub fn double_contraction(x: &[Poly], y: &[Poly], h: &PolyForm) -> Vec<Poly> {
    components(&h.contract(y).contract(x))
}

/// The bracket `[X+ξ, Y+η] = [X,Y] + L_Xη - i_Y dξ + i_X i_Y H` for an
/// arbitrary three-form `H`.
#[must_use]
pub fn bracket_twisted(e1: &Section, e2: &Section, h: &PolyForm) -> Section {
    let vec = lie_bracket(&e1.vec, &e2.vec);
    let xi = one_form(&e1.covec);
    let eta = one_form(&e2.covec);
    let form = lie_derivative(&e1.vec, &eta)
        .minus(&d(&xi).contract(&e2.vec))
        .plus(&h.contract(&e2.vec).contract(&e1.vec));
    GenVector::new(vec, components(&form))
}

/// The `H`-twisted Courant (Dorfman) bracket.
#[must_use]
pub fn courant_bracket(e1: &Section, e2: &Section, h: &ClosedThreeForm) -> Section {
    bracket_twisted(e1, e2, h.form())
}

/// `[[d_H, e1·], e2·] φ` with graded commutators.
#[must_use]
pub fn derived_bracket(e1: &Section, e2: &Section, h: &PolyForm, phi: &PolyForm) -> PolyForm {
    let a = |psi: &PolyForm| d_twisted(&e1.act(psi), h).plus(&e1.act(&d_twisted(psi, h)));
    a(&e2.act(phi)).minus(&e2.act(&a(phi)))
}
