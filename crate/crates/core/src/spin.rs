//! The orthogonal Lie algebra of `V ⊕ V*`, its spin representation on
//! forms, group-level B-field, β-field and GL actions, and the Mukai pairing.

use crate::error::{Error, Result};
use crate::form::{degree, MixedForm, Variance};
use crate::genvec::GenVector;
use crate::linalg::Mat;
use crate::scalar::{Coeff, Qi};

/// Element `(A, β, B)` of `so(V ⊕ V*)`.
///
/// `a` is an endomorphism of `V` acting on columns, `b` holds the
/// components `B_ij` of a two-form and `beta` the components `β^{ij}` of a
/// bivector. As an endomorphism of `V ⊕ V*` it is `[[A, β♯], [B♭, -A*]]`
/// with `β♯ξ = i_ξ β` and `B♭X = i_X B`.
#[derive(Clone, PartialEq, Debug)]
pub struct SoElement<C> {
    pub a: Mat<C>,
    pub beta: Mat<C>,
    pub b: Mat<C>,
}

impl<C: Coeff> SoElement<C> {
    #[must_use]
    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    #[must_use]
    pub fn from_a(a: Mat<C>) -> Self {
        let m = a.rows();
        Self {
            a,
            beta: Mat::zeros(m, m),
            b: Mat::zeros(m, m),
        }
    }

    #[must_use]
    pub fn from_b(b: Mat<C>) -> Self {
        let m = b.rows();
        Self {
            a: Mat::zeros(m, m),
            beta: Mat::zeros(m, m),
            b,
        }
    }

    #[must_use]
    pub fn from_beta(beta: Mat<C>) -> Self {
        let m = beta.rows();
        Self {
            a: Mat::zeros(m, m),
            beta,
            b: Mat::zeros(m, m),
        }
    }

    /// Splits a `2m × 2m` endomorphism, rejecting anything outside `so`.
    pub fn from_matrix(x: &Mat<C>) -> Result<Self> {
        if !x.is_square() || !x.rows().is_multiple_of(2) {
            return Err(Error::Invalid(format!(
                "{}x{} is not an even square matrix",
                x.rows(),
                x.cols()
            )));
        }
        let m = x.rows() / 2;
        let a = x.block(0, 0, m, m);
        let beta = x.block(0, m, m, m).transpose();
        let b = x.block(m, 0, m, m).transpose();
        let d = x.block(m, m, m, m);
        if d != a.transpose().negate() {
            return Err(Error::Invalid("lower-right block is not -A*".into()));
        }
        if !beta.is_antisymmetric() {
            return Err(Error::NotAntisymmetric("upper-right block".into()));
        }
        if !b.is_antisymmetric() {
            return Err(Error::NotAntisymmetric("lower-left block".into()));
        }
        Ok(Self { a, beta, b })
    }

    #[must_use]
    pub fn to_matrix(&self) -> Mat<C> {
        Mat::from_blocks(
            &self.a,
            &self.beta.transpose(),
            &self.b.transpose(),
            &self.a.transpose().negate(),
        )
    }

    /// The adjoint action on `V ⊕ V*`.
    #[must_use]
    pub fn act_vector(&self, v: &GenVector<C>) -> GenVector<C> {
        v.apply(&self.to_matrix())
    }

    #[must_use]
    pub fn b_form(&self) -> MixedForm<C> {
        MixedForm::from_antisymmetric(Variance::Form, &self.b)
    }

    #[must_use]
    pub fn beta_multivector(&self) -> MixedForm<C> {
        MixedForm::from_antisymmetric(Variance::Multivector, &self.beta)
    }
}

/// Spin action `-A*φ + ½Tr(A)φ - B∧φ + i_β φ`.
///
/// # Panics
/// Panics on a dimension mismatch.
#[must_use]
pub fn spin_act<C: Coeff>(x: &SoElement<C>, phi: &MixedForm<C>) -> MixedForm<C> {
    let m = x.dim();
    assert_eq!(phi.dim(), m, "dimension mismatch");
    let mut out = phi.times(&x.a.trace()).scale(&Qi::frac(1, 2));
    for j in 0..m {
        let inner = phi.contract_basis(j);
        if inner.is_zero() {
            continue;
        }
        let row: Vec<C> = (0..m).map(|i| x.a[(j, i)].negate()).collect();
        out = out.plus(&inner.wedge_one(&row));
    }
    if !x.b.is_zero() {
        out = out.minus(&x.b_form().wedge_unchecked(phi));
    }
    if !x.beta.is_zero() {
        out = out.plus(
            &phi.contract_bivector(&x.beta_multivector())
                .expect("form and bivector"),
        );
    }
    out
}

/// Spin action of `exp(B)`: wedge with `e^{-B}`.
#[must_use]
pub fn exp_b_act<C: Coeff>(b: &Mat<C>, phi: &MixedForm<C>) -> MixedForm<C> {
    let e = MixedForm::from_antisymmetric(Variance::Form, b)
        .negate()
        .exp_wedge()
        .expect("two-form");
    e.wedge_unchecked(phi)
}

/// Spin action of `exp(β)`: `Σ_k (i_β)^k φ / k!`.
#[must_use]
pub fn exp_beta_act<C: Coeff>(beta: &Mat<C>, phi: &MixedForm<C>) -> MixedForm<C> {
    let bv = MixedForm::from_antisymmetric(Variance::Multivector, beta);
    let mut out = phi.clone();
    let mut term = phi.clone();
    for k in 1..=phi.dim() {
        term = term
            .contract_bivector(&bv)
            .expect("form and bivector")
            .scale(&Qi::frac(1, k as i64));
        if term.is_zero() {
            break;
        }
        out = out.plus(&term);
    }
    out
}

/// Orthogonal action of `exp(B)`: `X + ξ ↦ X + ξ + i_X B`.
#[must_use]
pub fn exp_b_vector<C: Coeff>(b: &Mat<C>, v: &GenVector<C>) -> GenVector<C> {
    let ixb = b.transpose().apply(&v.vec);
    GenVector {
        vec: v.vec.clone(),
        covec: v.covec.iter().zip(&ixb).map(|(a, c)| a.plus(c)).collect(),
    }
}

/// Orthogonal action of `exp(β)`: `X + ξ ↦ X + i_ξ β + ξ`.
#[must_use]
pub fn exp_beta_vector<C: Coeff>(beta: &Mat<C>, v: &GenVector<C>) -> GenVector<C> {
    let ixb = beta.transpose().apply(&v.covec);
    GenVector {
        vec: v.vec.iter().zip(&ixb).map(|(a, c)| a.plus(c)).collect(),
        covec: v.covec.clone(),
    }
}

/// Matrix of `exp(B)` on `V ⊕ V*`.
#[must_use]
pub fn exp_b_matrix<C: Coeff>(b: &Mat<C>) -> Mat<C> {
    let m = b.rows();
    Mat::from_blocks(
        &Mat::identity(m),
        &Mat::zeros(m, m),
        &b.transpose(),
        &Mat::identity(m),
    )
}

/// Matrix of `exp(β)` on `V ⊕ V*`.
#[must_use]
pub fn exp_beta_matrix<C: Coeff>(beta: &Mat<C>) -> Mat<C> {
    let m = beta.rows();
    Mat::from_blocks(
        &Mat::identity(m),
        &beta.transpose(),
        &Mat::zeros(m, m),
        &Mat::identity(m),
    )
}

/// Matrix of `g ⊕ (g*)^{-1}` on `V ⊕ V*`.
pub fn gl_matrix(g: &Mat<Qi>) -> Result<Mat<Qi>> {
    let inv = g
        .inverse()
        .ok_or_else(|| Error::Singular("GL element".into()))?;
    let m = g.rows();
    Ok(Mat::from_blocks(
        g,
        &Mat::zeros(m, m),
        &Mat::zeros(m, m),
        &inv.transpose(),
    ))
}

/// Untwisted action `(g*)^{-1}φ`.
pub fn gl_pushforward(g: &Mat<Qi>, phi: &MixedForm<Qi>) -> Result<MixedForm<Qi>> {
    let inv = g
        .inverse()
        .ok_or_else(|| Error::Singular("GL element".into()))?;
    let m = g.rows();
    let images: Vec<MixedForm<Qi>> = (0..m)
        .map(|i| MixedForm::degree_one(m, Variance::Form, &inv.row(i)))
        .collect();
    let mut out = MixedForm::zero(m);
    for (mask, c) in phi.terms() {
        let mut t = MixedForm::scalar(m, c.clone());
        for (i, img) in images.iter().enumerate() {
            if mask & (1 << i) != 0 {
                t = t.wedge_unchecked(img);
            }
        }
        out = out.plus(&t);
    }
    Ok(out)
}

/// Spin action `√det g · (g*)^{-1}φ`; needs an exact square root of `det g`.
pub fn gl_spin_act(g: &Mat<Qi>, phi: &MixedForm<Qi>) -> Result<MixedForm<Qi>> {
    let det = g.det();
    let root = det
        .sqrt()
        .ok_or_else(|| Error::NoExactSquareRoot(det.to_string()))?;
    Ok(gl_pushforward(g, phi)?.scale(&root))
}

/// Group element of `Spin(V ⊕ V*)` generated by one block.
#[derive(Clone, PartialEq, Debug)]
pub enum SpinGroupElement {
    /// `exp(B)` for two-form components `B_ij`.
    BField(Mat<Qi>),
    /// `exp(β)` for bivector components `β^{ij}`.
    Beta(Mat<Qi>),
    /// An invertible `g`, acting on forms with the density twist.
    Gl(Mat<Qi>),
}

impl SpinGroupElement {
    /// Validates the block shape and antisymmetry.
    pub fn check(&self, m: usize) -> Result<()> {
        let mat = match self {
            Self::BField(x) | Self::Beta(x) | Self::Gl(x) => x,
        };
        if mat.rows() != m || mat.cols() != m {
            return Err(Error::DimensionMismatch {
                left: m,
                right: mat.rows(),
            });
        }
        match self {
            Self::BField(x) | Self::Beta(x) if !x.is_antisymmetric() => {
                Err(Error::NotAntisymmetric("transform block".into()))
            }
            Self::Gl(x) if x.det().is_zero() => Err(Error::Singular("GL element".into())),
            _ => Ok(()),
        }
    }

    /// Matrix of the orthogonal transformation of `V ⊕ V*`.
    pub fn matrix(&self) -> Result<Mat<Qi>> {
        match self {
            Self::BField(b) => Ok(exp_b_matrix(b)),
            Self::Beta(beta) => Ok(exp_beta_matrix(beta)),
            Self::Gl(g) => gl_matrix(g),
        }
    }

    pub fn act_vector(&self, v: &GenVector<Qi>) -> Result<GenVector<Qi>> {
        Ok(v.apply(&self.matrix()?))
    }
}

/// Spin action of a one-block group element on a form.
pub fn exp_spin_act(g: &SpinGroupElement, phi: &MixedForm<Qi>) -> Result<MixedForm<Qi>> {
    g.check(phi.dim())?;
    match g {
        SpinGroupElement::BField(b) => Ok(exp_b_act(b, phi)),
        SpinGroupElement::Beta(beta) => Ok(exp_beta_act(beta, phi)),
        SpinGroupElement::Gl(x) => gl_spin_act(x, phi),
    }
}

/// Mukai pairing `[sᵀ ∧ t]_top` as a top-degree form.
pub fn mukai<C: Coeff>(s: &MixedForm<C>, t: &MixedForm<C>) -> Result<MixedForm<C>> {
    Ok(s.reversed().wedge(t)?.component(s.dim()))
}

/// Coefficient of the Mukai pairing on the standard volume element.
pub fn mukai_scalar<C: Coeff>(s: &MixedForm<C>, t: &MixedForm<C>) -> Result<C> {
    Ok(mukai(s, t)?.top())
}

/// Sign relating `(s, t)` and `(t, s)`: `(-1)^{m(m-1)/2}`.
#[must_use]
pub fn mukai_symmetry_sign(m: usize) -> i8 {
    if (m * m.saturating_sub(1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Whether the degree `k` contributes to a form of the given parity.
#[must_use]
pub fn has_parity(mask: crate::form::Mask, parity: usize) -> bool {
    degree(mask) % 2 == parity
}
