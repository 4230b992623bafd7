//! Courant algebroid axioms as exact polynomial identities.

use std::fmt;

use crate::form::{Mask, MixedForm};
use crate::poly::Poly;
use crate::scalar::Coeff;

use super::calculus::{
    apply_vector, bracket_twisted, courant_bracket, d, derived_bracket, gradient, lie_bracket,
    ClosedThreeForm, PolyForm, Section,
};

/// Identity checked on a triple of sections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// `[e1,[e2,e3]] = [[e1,e2],e3] + [e2,[e1,e3]]`.
    C1,
    /// `π[e1,e2] = [πe1, πe2]`.
    C2,
    /// `[e1, f e2] = f[e1,e2] + (πe1 f) e2`.
    C3,
    /// `πe1⟨e2,e3⟩ = ⟨[e1,e2],e3⟩ + ⟨e2,[e1,e3]⟩`.
    C4,
    /// `[e1,e1] = d⟨e1,e1⟩`.
    C5,
    /// `[[e1,e2],e3] = [e1,[e2,e3]] - [e2,[e1,e3]]`.
    Jacobi,
    /// Anomaly equals `i_{πe3} i_{πe2} i_{πe1} dH` for arbitrary `H`.
    Anomaly,
    /// `[[d_H, e1·], e2·]φ = [e1,e2]·φ` on every basis form.
    DerivedBracket,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::C1 => "C1",
            Self::C2 => "C2",
            Self::C3 => "C3",
            Self::C4 => "C4",
            Self::C5 => "C5",
            Self::Jacobi => "jacobi",
            Self::Anomaly => "anomaly",
            Self::DerivedBracket => "derived-bracket",
        };
        f.write_str(s)
    }
}

/// Axioms C1 to C5 and the Jacobi identity that fail on `(e1, e2, e3, f)`.
#[must_use]
pub fn violated_axioms(
    e1: &Section,
    e2: &Section,
    e3: &Section,
    f: &Poly,
    h: &ClosedThreeForm,
) -> Vec<Axiom> {
    let m = e1.dim();
    let br = |a: &Section, b: &Section| courant_bracket(a, b, h);
    let e12 = br(e1, e2);
    let e13 = br(e1, e3);
    let e23 = br(e2, e3);
    let mut out = Vec::new();
    let left = br(e1, &e23);
    let right = br(&e12, e3).plus(&br(e2, &e13));
    if left != right {
        out.push(Axiom::C1);
    }
    if e12.vec != lie_bracket(&e1.vec, &e2.vec) {
        out.push(Axiom::C2);
    }
    if br(e1, &e2.times(f)) != e12.times(f).plus(&e2.times(&apply_vector(&e1.vec, f))) {
        out.push(Axiom::C3);
    }
    if apply_vector(&e1.vec, &e2.inner(e3)) != e12.inner(e3).plus(&e2.inner(&e13)) {
        out.push(Axiom::C4);
    }
    if br(e1, e1) != Section::from_covector(gradient(&e1.inner(e1), m)) {
        out.push(Axiom::C5);
    }
    if br(&e12, e3) != left.minus(&br(e2, &e13)) {
        out.push(Axiom::Jacobi);
    }
    out
}

/// Jacobi anomaly of the bracket twisted by an arbitrary three-form, and
/// the expected value `i_{πe3} i_{πe2} i_{πe1} dH`.
#[must_use]
pub fn jacobi_anomaly(
    e1: &Section,
    e2: &Section,
    e3: &Section,
    h: &PolyForm,
) -> (Section, Section) {
    let m = e1.dim();
    let br = |a: &Section, b: &Section| bracket_twisted(a, b, h);
    let anomaly = br(&br(e1, e2), e3)
        .minus(&br(e1, &br(e2, e3)))
        .plus(&br(e2, &br(e1, e3)));
    let iii = d(h).contract(&e1.vec).contract(&e2.vec).contract(&e3.vec);
    let expected = Section::from_covector((0..m).map(|i| iii.get(1 << i)).collect());
    (anomaly, expected)
}

/// First basis form on which the derived bracket differs from the explicit one.
#[must_use]
pub fn derived_bracket_mismatch(e1: &Section, e2: &Section, h: &ClosedThreeForm) -> Option<Mask> {
    let m = e1.dim();
    let br = courant_bracket(e1, e2, h);
    (0..(1u16 << m)).find(|&mask| {
        let phi = MixedForm::<Poly>::basis(m, mask);
        derived_bracket(e1, e2, h.form(), &phi) != br.act(&phi)
    })
}
