//! Generalized complex structure fields on a polynomial chart: eigenbundle
//! frames, Nijenhuis tensor, bivector deformations of complex structures and
//! Hamiltonian symmetries.

use crate::error::{Error, Result};
use crate::form::{MixedForm, Variance};
use crate::gc::{j_complex, structural_defect, validate, GcStructure};
use crate::linalg::Mat;
use crate::poly::Poly;
use crate::scalar::{Coeff, Qi};
use crate::spin::{exp_beta_act, exp_beta_matrix, SoElement};

use super::calculus::{courant_bracket, gradient, ClosedThreeForm, PolyForm, Section};
use super::chart::{Chart, Symbol};
use super::frames::DiracFrame;
use super::schouten::bivector;

/// A polynomial field of orthogonal complex structures on `T ⊕ T*`.
#[derive(Clone, Debug, PartialEq)]
pub struct GcField {
    m: usize,
    j: Mat<Poly>,
}

/// Inverse of a polynomial matrix with constant nonzero determinant.
pub fn polynomial_inverse(a: &Mat<Poly>) -> Result<Mat<Poly>> {
    let n = a.rows();
    let det = a.det_poly();
    let c = det
        .as_constant()
        .ok_or_else(|| Error::Unsupported(format!("determinant {det} is not constant")))?;
    if c.is_zero() {
        return Err(Error::Singular("determinant vanishes".into()));
    }
    let inv_det = Qi::one() / c;
    let minor = |r: usize, s: usize| {
        Mat::from_fn(n - 1, n - 1, |i, j| {
            a[(i + usize::from(i >= r), j + usize::from(j >= s))].clone()
        })
        .det_poly()
    };
    Ok(Mat::from_fn(n, n, |i, j| {
        let v = if n == 1 {
            Poly::constant(Qi::one())
        } else {
            minor(j, i)
        };
        let v = v.scale(&inv_det);
        if (i + j) % 2 == 1 {
            v.negate()
        } else {
            v
        }
    }))
}

impl GcField {
    /// Checks `J² = -1`, orthogonality and realness identically.
    pub fn new(j: Mat<Poly>) -> Result<Self> {
        let m = structural_defect(&j)?;
        for r in 0..j.rows() {
            for c in 0..j.cols() {
                if j[(r, c)] != j[(r, c)].conj() {
                    return Err(Error::NotGeneralizedComplex(format!(
                        "entry ({}, {}) is not real",
                        r + 1,
                        c + 1
                    )));
                }
            }
        }
        Ok(Self { m, j })
    }

    #[must_use]
    pub fn constant(s: &GcStructure) -> Self {
        Self {
            m: s.dim(),
            j: s.matrix().lift(),
        }
    }

    /// `J_ω` for a two-form field whose matrix has constant determinant.
    pub fn symplectic(omega: &Mat<Poly>) -> Result<Self> {
        if !omega.is_antisymmetric() {
            return Err(Error::NotAntisymmetric("symplectic form".into()));
        }
        let map = omega.transpose();
        let inv = polynomial_inverse(&map)?;
        let m = omega.rows();
        Self::new(Mat::from_blocks(
            &Mat::zeros(m, m),
            &inv.negate(),
            &map,
            &Mat::zeros(m, m),
        ))
    }

    /// `J_J` for the complex structure of a fully paired chart.
    pub fn complex(chart: &Chart) -> Result<Self> {
        Self::new(j_complex(&chart.complex_structure()?.lift()))
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.m
    }

    #[must_use]
    pub fn matrix(&self) -> &Mat<Poly> {
        &self.j
    }

    pub fn at(&self, point: &[Qi]) -> Result<GcStructure> {
        validate(self.j.eval(point))
    }

    pub fn type_at(&self, point: &[Qi]) -> Result<usize> {
        Ok(self.at(point)?.type_k())
    }

    #[must_use]
    pub fn apply(&self, e: &Section) -> Section {
        e.apply(&self.j)
    }

    /// Spanning family of `L = ker(J - i)`: the columns of `J + i`.
    #[must_use]
    pub fn eigen_frame(&self) -> DiracFrame {
        let shifted = self.j.plus(&Mat::identity(2 * self.m).scale(&Qi::i()));
        let cols = (0..2 * self.m)
            .map(|c| Section::from_column(&shifted.col(c)))
            .collect();
        DiracFrame::new(self.m, cols).expect("columns of J + i are isotropic")
    }

    /// The Poisson bivector `P`.
    #[must_use]
    pub fn poisson(&self) -> PolyForm {
        let so = SoElement::from_matrix(&self.j).expect("orthogonal complex structures lie in so");
        bivector(&so.beta)
    }
}

/// A nonzero value `N(e_a, e_b)` on coordinate sections.
#[derive(Clone, Debug, PartialEq)]
pub struct NijenhuisComponent {
    pub indices: (usize, usize),
    pub value: Section,
}

/// `N(e1, e2) = [Je1, Je2] - J[Je1, e2] - J[e1, Je2] - [e1, e2]` on the
/// coordinate sections, `a < b`.
#[must_use]
pub fn nijenhuis_field(s: &GcField, h: &ClosedThreeForm) -> Vec<NijenhuisComponent> {
    let m = s.dim();
    let basis: Vec<Section> = (0..2 * m).map(|k| Section::basis(m, k)).collect();
    let images: Vec<Section> = basis.iter().map(|e| s.apply(e)).collect();
    let br = |a: &Section, b: &Section| courant_bracket(a, b, h);
    let mut out = Vec::new();
    for a in 0..2 * m {
        for b in a + 1..2 * m {
            let value = br(&images[a], &images[b])
                .minus(&s.apply(&br(&images[a], &basis[b])))
                .minus(&s.apply(&br(&basis[a], &images[b])))
                .minus(&br(&basis[a], &basis[b]));
            if !value.is_zero() {
                out.push(NijenhuisComponent {
                    indices: (a, b),
                    value,
                });
            }
        }
    }
    out
}

/// Real frame `(a + bJ)dx_i` of `D_t = exp(tJ) T*` at the circle point `(a, b)`.
pub fn circle_frame(s: &GcField, a: &Qi, b: &Qi) -> Result<DiracFrame> {
    if a * a + b * b != Qi::one() {
        return Err(Error::Invalid(format!(
            "({a}, {b}) is not on the unit circle"
        )));
    }
    let m = s.dim();
    let sections = (0..m)
        .map(|i| {
            let e = Section::basis(m, m + i);
            e.scale(a).plus(&s.apply(&e).scale(b))
        })
        .collect();
    DiracFrame::new(m, sections)
}

/// Lowest degree of `φ(p)`, the type of a pure spinor.
pub fn spinor_type_at(phi: &PolyForm, point: &[Qi]) -> Result<usize> {
    phi.eval(point)
        .lowest_degree()
        .ok_or_else(|| Error::Invalid("spinor vanishes at the sample".into()))
}

/// Result of deforming a complex structure by a `(2,0)` bivector.
#[derive(Clone, Debug, PartialEq)]
pub struct Deformation {
    /// Real components of `β` in the chart coordinates.
    pub beta: Mat<Poly>,
    pub field: GcField,
    /// `e^β·Ω` for `Ω = dz_1 ∧ ⋯ ∧ dz_n`.
    pub spinor: PolyForm,
}

/// `β` with components `holo[a][b]` in the `∂/∂z` frame, in chart coordinates.
pub fn holomorphic_bivector(chart: &Chart, holo: &Mat<Poly>) -> Result<Mat<Poly>> {
    let n = chart.complex_pairs().len();
    if holo.rows() != n || !holo.is_antisymmetric() {
        return Err(Error::NotAntisymmetric(format!(
            "β must be an antisymmetric {n}x{n} matrix"
        )));
    }
    let m = chart.dim();
    let u: Vec<Vec<Poly>> = (0..n)
        .map(|a| chart.partial(Symbol::Holomorphic(a)))
        .collect();
    Ok(Mat::from_fn(m, m, |i, j| {
        (0..n).fold(Poly::zero(), |acc, a| {
            (0..n).fold(acc, |acc, b| {
                let c = &holo[(a, b)];
                if c.is_zero() {
                    acc
                } else {
                    acc.plus(&c.times(&u[a][i]).times(&u[b][j]))
                }
            })
        })
    }))
}

/// The holomorphic volume form `dz_1 ∧ ⋯ ∧ dz_n`.
#[must_use]
pub fn holomorphic_volume(chart: &Chart) -> PolyForm {
    let m = chart.dim();
    (0..chart.complex_pairs().len())
        .rev()
        .fold(MixedForm::scalar(m, Poly::constant(Qi::one())), |acc, j| {
            acc.wedge_one(&chart.differential(Symbol::Holomorphic(j)))
        })
}

/// `J_β = e^{β+β̄} J_J e^{-(β+β̄)}` and its spinor `e^β Ω`.
pub fn deform_by_bivector(chart: &Chart, holo: &Mat<Poly>) -> Result<Deformation> {
    let base = GcField::complex(chart)?;
    let beta = holomorphic_bivector(chart, holo)?;
    let real = beta.plus(&beta.conj());
    let j = exp_beta_matrix(&real)
        .times(base.matrix())
        .times(&exp_beta_matrix(&real.negate()));
    let field = GcField::new(j)?;
    let spinor = exp_beta_act(&beta, &holomorphic_volume(chart));
    Ok(Deformation {
        beta,
        field,
        spinor,
    })
}

/// `Df` and the defects `⟨[Df, e_k], e_l⟩` over the eigenbundle frame.
#[derive(Clone, Debug, PartialEq)]
pub struct Hamiltonian {
    pub section: Section,
    pub defects: Vec<((usize, usize), Poly)>,
}

impl Hamiltonian {
    #[must_use]
    pub fn is_symmetry(&self) -> bool {
        self.defects.is_empty()
    }
}

/// `Df = d(Re f) - J d(Im f)` and whether it preserves `L`.
pub fn hamiltonian_symmetry(f: &Poly, s: &GcField, h: &ClosedThreeForm) -> Result<Hamiltonian> {
    let m = s.dim();
    if h.form().dim() != m {
        return Err(Error::DimensionMismatch {
            left: m,
            right: h.form().dim(),
        });
    }
    let re = Section::from_covector(gradient(&f.re(), m));
    let im = Section::from_covector(gradient(&f.im(), m));
    let section = re.minus(&s.apply(&im));
    let frame = s.eigen_frame();
    let es = frame.sections();
    let mut defects = Vec::new();
    for (k, e) in es.iter().enumerate() {
        let b = courant_bracket(&section, e, h);
        for (l, g) in es.iter().enumerate() {
            let v = b.inner(g);
            if !v.is_zero() {
                defects.push(((k, l), v));
            }
        }
    }
    Ok(Hamiltonian { section, defects })
}

/// The two-form matrix of a polynomial two-form.
pub fn two_form_matrix(omega: &PolyForm) -> Result<Mat<Poly>> {
    if omega.variance() != Variance::Form || omega.terms().any(|(mask, _)| mask.count_ones() != 2) {
        return Err(Error::Invalid("expected a pure two-form".into()));
    }
    Ok(omega.to_antisymmetric())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjugate_inverse() {
        let a = Mat::from_rows(vec![
            vec![Poly::constant(Qi::one()), Poly::var(0)],
            vec![Poly::zero(), Poly::constant(Qi::one())],
        ]);
        let inv = polynomial_inverse(&a).unwrap();
        assert_eq!(a.times(&inv), Mat::identity(2));
    }

    #[test]
    fn z1_deformation_spinor() {
        let chart = Chart::complex_space(2);
        let mut holo = Mat::zeros(2, 2);
        holo[(0, 1)] = chart.z(0);
        holo[(1, 0)] = chart.z(0).negate();
        let d = deform_by_bivector(&chart, &holo).unwrap();
        let expected = holomorphic_volume(&chart).plus(&MixedForm::scalar(4, chart.z(0)));
        assert_eq!(d.spinor, expected);
    }
}
