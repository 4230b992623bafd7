//! Submanifold data, generalized tangent bundles, pullback of Dirac
//! structures and compatibility of trivializations with a structure field.

use crate::error::{Error, Result};
use crate::fields::calculus::{d, gradient, ClosedThreeForm, PolyForm, Section};
use crate::fields::frames::{render_point, DiracFrame};
use crate::fields::structure::GcField;
use crate::form::{MixedForm, Variance};
use crate::genvec::GenVector;
use crate::linalg::Mat;
use crate::poly::Poly;
use crate::scalar::{Coeff, Qi};

/// A parametrized submanifold `ι: R^d → R^m` with a two-form `F` on it.
///
/// Fields on `S` are polynomials in the parameters `u_1, …, u_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubmanifoldData {
    m: usize,
    iota: Vec<Poly>,
    tangent: Vec<Vec<Poly>>,
    /// Covectors on `M` along `S` with `θ_b(∂_a ι) = δ_ab`.
    lift: Vec<Vec<Poly>>,
    conormal: Vec<Vec<Poly>>,
    f: Mat<Poly>,
    h: ClosedThreeForm,
}

fn dot(a: &[Poly], b: &[Poly]) -> Poly {
    a.iter().zip(b).fold(Poly::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc.plus(&x.times(y))
        }
    })
}

fn lift_vec(v: &[Qi]) -> Vec<Poly> {
    v.iter().cloned().map(Poly::constant).collect()
}

/// Pullback of a form on `R^m` along polynomial maps `iota` in `d` variables.
#[must_use]
pub fn pullback_form(phi: &PolyForm, iota: &[Poly], d: usize) -> PolyForm {
    let diffs: Vec<Vec<Poly>> = iota.iter().map(|p| gradient(p, d)).collect();
    let mut out = MixedForm::zero(d);
    for (mask, c) in phi.terms() {
        let base = MixedForm::scalar(d, c.compose(iota));
        let idx: Vec<usize> = (0..16).filter(|i| mask & (1 << i) != 0).collect();
        let term = idx
            .iter()
            .rev()
            .fold(base, |acc, &i| acc.wedge_one(&diffs[i]));
        out = out.plus(&term);
    }
    out
}

impl SubmanifoldData {
    #[allow(clippy::too_many_arguments)]
    fn new(
        m: usize,
        iota: Vec<Poly>,
        tangent: Vec<Vec<Poly>>,
        lift: Vec<Vec<Poly>>,
        conormal: Vec<Vec<Poly>>,
        f: Mat<Poly>,
        h: ClosedThreeForm,
    ) -> Result<Self> {
        let dd = tangent.len();
        if h.form().dim() != m {
            return Err(Error::DimensionMismatch {
                left: m,
                right: h.form().dim(),
            });
        }
        if f.rows() != dd || f.cols() != dd || !f.is_antisymmetric() {
            return Err(Error::NotAntisymmetric(format!(
                "F must be an antisymmetric {dd}x{dd} matrix"
            )));
        }
        if dd + conormal.len() != m {
            return Err(Error::Invalid(format!(
                "{dd} tangent and {} conormal directions in dimension {m}",
                conormal.len()
            )));
        }
        for (j, nu) in conormal.iter().enumerate() {
            for (a, t) in tangent.iter().enumerate() {
                if !dot(nu, t).is_zero() {
                    return Err(Error::Invalid(format!(
                        "conormal {} does not annihilate tangent {}",
                        j + 1,
                        a + 1
                    )));
                }
            }
        }
        let fm = MixedForm::from_antisymmetric(Variance::Form, &f);
        if d(&fm) != pullback_form(h.form(), &iota, dd) {
            return Err(Error::Invalid("dF differs from the pullback of H".into()));
        }
        Ok(Self {
            m,
            iota,
            tangent,
            lift,
            conormal,
            f,
            h,
        })
    }

    /// `S = origin + span(directions)`, parameters are the coefficients.
    pub fn affine(
        origin: &[Qi],
        directions: &[Vec<Qi>],
        f: Mat<Poly>,
        h: ClosedThreeForm,
    ) -> Result<Self> {
        let m = origin.len();
        let dd = directions.len();
        if directions
            .iter()
            .any(|v| v.len() != m || v.iter().any(|c| !c.is_real()))
        {
            return Err(Error::Invalid(
                "directions must be real vectors of the ambient dimension".into(),
            ));
        }
        let dm = Mat::from_rows(directions.to_vec());
        let gram = dm.times(&dm.transpose());
        let gi = gram.inverse().ok_or_else(|| Error::RankDeficient {
            expected: dd,
            found: dm.rank(),
        })?;
        let theta = gi.times(&dm);
        let iota = (0..m)
            .map(|i| {
                (0..dd).fold(Poly::constant(origin[i].clone()), |acc, a| {
                    acc.plus(&Poly::var(a).scale(&directions[a][i]))
                })
            })
            .collect();
        let tangent = directions.iter().map(|v| lift_vec(v)).collect();
        let lift = theta.to_rows().iter().map(|r| lift_vec(r)).collect();
        let conormal = if dd == 0 {
            Mat::<Qi>::identity(m).to_rows()
        } else {
            dm.kernel()
        };
        Self::new(
            m,
            iota,
            tangent,
            lift,
            conormal.iter().map(|r| lift_vec(r)).collect(),
            f,
            h,
        )
    }

    /// `S = M` with the identity parametrization.
    pub fn whole(m: usize, f: Mat<Poly>, h: ClosedThreeForm) -> Result<Self> {
        let id = Mat::<Qi>::identity(m).to_rows();
        Self::affine(&vec![Qi::zero(); m], &id, f, h)
    }

    /// The graph `x_{d+j} = g_j(x_1, …, x_d)`.
    pub fn graph(m: usize, g: &[Poly], f: Mat<Poly>, h: ClosedThreeForm) -> Result<Self> {
        let dd = m
            .checked_sub(g.len())
            .ok_or_else(|| Error::Invalid("more graph functions than coordinates".into()))?;
        let mut iota: Vec<Poly> = (0..dd).map(Poly::var).collect();
        iota.extend(g.iter().cloned());
        let unit = |i: usize| {
            (0..m)
                .map(|k| Poly::constant(if k == i { Qi::one() } else { Qi::zero() }))
                .collect::<Vec<_>>()
        };
        let tangent = (0..dd)
            .map(|a| {
                let mut t = unit(a);
                for (j, gj) in g.iter().enumerate() {
                    t[dd + j] = gj.partial(a);
                }
                t
            })
            .collect();
        let lift = (0..dd).map(unit).collect();
        let conormal = g
            .iter()
            .enumerate()
            .map(|(j, gj)| {
                let mut nu = unit(dd + j);
                for (a, slot) in nu.iter_mut().enumerate().take(dd) {
                    *slot = gj.partial(a).negate();
                }
                nu
            })
            .collect();
        Self::new(m, iota, tangent, lift, conormal, f, h)
    }

    #[must_use]
    pub fn ambient_dim(&self) -> usize {
        self.m
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.tangent.len()
    }

    #[must_use]
    pub fn parametrization(&self) -> &[Poly] {
        &self.iota
    }

    #[must_use]
    pub fn tangent(&self) -> &[Vec<Poly>] {
        &self.tangent
    }

    #[must_use]
    pub fn conormal(&self) -> &[Vec<Poly>] {
        &self.conormal
    }

    #[must_use]
    pub fn f(&self) -> &Mat<Poly> {
        &self.f
    }

    /// `ι*H`.
    #[must_use]
    pub fn pulled_back_twist(&self) -> ClosedThreeForm {
        ClosedThreeForm::new(pullback_form(self.h.form(), &self.iota, self.dim()))
            .expect("pullback of a closed real three-form")
    }

    /// An ambient polynomial restricted to `S`.
    #[must_use]
    pub fn restrict(&self, p: &Poly) -> Poly {
        p.compose(&self.iota)
    }

    fn restrict_section(&self, e: &Section) -> Section {
        e.map(|p| self.restrict(p))
    }

    /// Point of `M` at parameter `u`.
    #[must_use]
    pub fn point(&self, u: &[Qi]) -> Vec<Qi> {
        self.iota.iter().map(|p| p.eval(u)).collect()
    }

    /// `(a_b, ι*ξ)`: an ambient section with vector part tangent to `S`,
    /// written on `TS ⊕ T*S` in the parameter frame.
    fn to_s(&self, e: &Section) -> Section {
        let vec = self.lift.iter().map(|th| dot(th, &e.vec)).collect();
        let covec = self.tangent.iter().map(|t| dot(&e.covec, t)).collect();
        GenVector::new(vec, covec)
    }
}

/// Frame of `τ = {X + η ∈ TS ⊕ T*M : ι*η = i_X F}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedTangent {
    pub sections: Vec<Section>,
}

/// `∂_a ι + Σ_b F_ab θ_b` together with the conormals.
#[must_use]
pub fn generalized_tangent(s: &SubmanifoldData) -> GeneralizedTangent {
    let m = s.m;
    let dd = s.dim();
    let mut sections: Vec<Section> = (0..dd)
        .map(|a| {
            let covec = (0..m)
                .map(|i| {
                    (0..dd).fold(Poly::zero(), |acc, b| {
                        acc.plus(&s.f[(a, b)].times(&s.lift[b][i]))
                    })
                })
                .collect();
            GenVector::new(s.tangent[a].clone(), covec)
        })
        .collect();
    sections.extend(
        s.conormal
            .iter()
            .map(|nu| Section::from_covector(nu.clone())),
    );
    GeneralizedTangent { sections }
}

fn minor(a: &Mat<Poly>, rows: &[usize], cols: &[usize]) -> Poly {
    Mat::from_fn(rows.len(), cols.len(), |i, j| a[(rows[i], cols[j])].clone()).det_poly()
}

fn choose_pivots(a: &Mat<Qi>) -> (Vec<usize>, Vec<usize>) {
    let (_, cols) = a.rref();
    let (_, rows) = a.transpose().rref();
    (rows, cols)
}

/// Polynomial spanning family of `ker a` on the locus where a chosen
/// maximal minor is nonzero, by Cramer's rule.
fn cramer_kernel(a: &Mat<Poly>, at: &[Qi]) -> Vec<Vec<Poly>> {
    let n = a.cols();
    let (rows, cols) = choose_pivots(&a.eval(at));
    let det = minor(a, &rows, &cols);
    let mut out = Vec::new();
    for j in (0..n).filter(|j| !cols.contains(j)) {
        let mut v = vec![Poly::zero(); n];
        v[j] = det.clone();
        for (k, &ck) in cols.iter().enumerate() {
            let replaced = Mat::from_fn(rows.len(), cols.len(), |r, c| {
                if c == k {
                    a[(rows[r], j)].clone()
                } else {
                    a[(rows[r], cols[c])].clone()
                }
            });
            v[ck] = replaced.det_poly().negate();
        }
        out.push(v);
    }
    out
}

/// `ι*L = (L ∩ K^⊥ + K) / K` written on `TS ⊕ T*S`.
pub fn pullback_dirac(
    l: &DiracFrame,
    s: &SubmanifoldData,
    samples: &[Vec<Qi>],
) -> Result<DiracFrame> {
    if l.dim() != s.m {
        return Err(Error::DimensionMismatch {
            left: s.m,
            right: l.dim(),
        });
    }
    let first = samples
        .first()
        .ok_or_else(|| Error::Invalid("pullback needs at least one sample point".into()))?;
    let es: Vec<Section> = l.sections().iter().map(|e| s.restrict_section(e)).collect();
    let constraint = Mat::from_fn(s.conormal.len(), es.len(), |j, i| {
        dot(&s.conormal[j], &es[i].vec)
    });
    let rank = |u: &[Qi]| constraint.eval(u).rank();
    let r0 = rank(first);
    for u in samples {
        let r = rank(u);
        if r != r0 {
            return Err(Error::RankJump {
                point: render_point(u),
                expected: es.len() - r0,
                found: es.len() - r,
            });
        }
    }
    let kernel = if constraint.rows() == 0 {
        (0..es.len())
            .map(|i| {
                (0..es.len())
                    .map(|k| Poly::constant(if i == k { Qi::one() } else { Qi::zero() }))
                    .collect()
            })
            .collect()
    } else {
        cramer_kernel(&constraint, first)
    };
    for v in &kernel {
        if !constraint.apply(v).iter().all(Poly::is_zero) {
            return Err(Error::Unsupported(
                "L ∩ K^⊥ is not cut out by a single minor".into(),
            ));
        }
    }
    let sections: Vec<Section> = kernel
        .iter()
        .map(|c| {
            s.to_s(
                &es.iter()
                    .zip(c)
                    .fold(Section::zero(s.m), |acc, (e, ci)| acc.plus(&e.times(ci))),
            )
        })
        .filter(|v| !v.is_zero())
        .collect();
    let frame = DiracFrame::new(s.dim(), sections)?;
    frame.check_rank(samples)?;
    Ok(frame)
}

/// Kind of a compatible trivialization.
#[derive(Clone, Debug, PartialEq)]
pub enum BraneKind {
    /// `S = M`; `complex_structure = π ∘ J ∘ (1 + F)` on `TS`, squaring to `-1`.
    SpaceFilling { complex_structure: Mat<Poly> },
    /// Symplectic ambient, `F = 0`, `P(N*S) = TS`.
    Lagrangian,
    /// Complex ambient: `TS` is `J`-stable and `F` is of type `(1,1)`.
    Complex,
    /// General coisotropic case; `basic` reports `i_X(F + iι*ω) = 0` on the
    /// characteristic distribution when the ambient structure is symplectic.
    Coisotropic {
        characteristic_rank: usize,
        basic: Option<bool>,
    },
}

/// Outcome of the compatibility check `J(τ) = τ`.
#[derive(Clone, Debug, PartialEq)]
pub struct BraneReport {
    pub compatible: bool,
    /// Nonzero `⟨J τ_i, τ_j⟩`.
    pub defects: Vec<((usize, usize), Poly)>,
    /// Spanning family `v - iJv` of `ℓ = ker(J - i) ∩ τ ⊗ C`.
    pub ell: Vec<Section>,
    /// `π J(ν)` for the conormals `ν`, in the parameter frame of `TS`.
    pub characteristic: Vec<Vec<Poly>>,
    pub characteristic_rank: Vec<usize>,
    pub coisotropic: bool,
    pub kind: Option<BraneKind>,
}

fn symplectic_form(j: &Mat<Poly>, m: usize, at: &[Vec<Qi>]) -> Option<Mat<Poly>> {
    let upper = j.block(0, 0, m, m);
    if !upper.is_zero() {
        return None;
    }
    let lower = j.block(m, 0, m, m);
    if at.iter().any(|u| lower.eval(u).det().is_zero()) {
        return None;
    }
    Some(lower.transpose())
}

/// Checks `J(τ) = τ` along `S` and classifies compatible trivializations.
pub fn brane_check(
    field: &GcField,
    s: &SubmanifoldData,
    samples: &[Vec<Qi>],
) -> Result<BraneReport> {
    let m = s.m;
    if field.dim() != m {
        return Err(Error::DimensionMismatch {
            left: m,
            right: field.dim(),
        });
    }
    let dd = s.dim();
    let j = field.matrix().map(|p| s.restrict(p));
    let tau = generalized_tangent(s).sections;
    let jt: Vec<Section> = tau.iter().map(|v| v.apply(&j)).collect();
    let mut defects = Vec::new();
    for (a, ja) in jt.iter().enumerate() {
        for (b, tb) in tau.iter().enumerate() {
            let v = ja.inner(tb);
            if !v.is_zero() {
                defects.push(((a, b), v));
            }
        }
    }
    let characteristic: Vec<Vec<Poly>> = s
        .conormal
        .iter()
        .map(|nu| {
            let w = Section::from_covector(nu.clone()).apply(&j);
            s.lift.iter().map(|th| dot(th, &w.vec)).collect()
        })
        .collect();
    let ambient_points: Vec<Vec<Qi>> = samples.iter().map(|u| s.point(u)).collect();
    let characteristic_rank: Vec<usize> = samples
        .iter()
        .map(|u| {
            let rows: Vec<Vec<Qi>> = characteristic
                .iter()
                .map(|v| v.iter().map(|p| p.eval(u)).collect())
                .collect();
            crate::linalg::rank_of(&rows)
        })
        .collect();
    let coisotropic = samples.iter().all(|u| {
        s.conormal.iter().all(|nu| {
            let w = Section::from_covector(nu.clone()).apply(&j);
            s.conormal
                .iter()
                .all(|mu| dot(mu, &w.vec).eval(u).is_zero())
        })
    });
    let compatible = defects.is_empty();
    if !compatible {
        return Ok(BraneReport {
            compatible,
            defects,
            ell: Vec::new(),
            characteristic,
            characteristic_rank,
            coisotropic,
            kind: None,
        });
    }
    let ell: Vec<Section> = tau
        .iter()
        .zip(&jt)
        .map(|(v, w)| v.minus(&w.scale(&Qi::i())))
        .collect();
    let types: Vec<usize> = ambient_points
        .iter()
        .map(|p| field.type_at(p))
        .collect::<Result<_>>()?;
    let kind = if dd == m {
        let img: Vec<Vec<Poly>> = jt[..dd]
            .iter()
            .map(|w| s.lift.iter().map(|th| dot(th, &w.vec)).collect())
            .collect();
        let cs = Mat::from_fn(dd, dd, |b, a| img[a][b].clone());
        debug_assert_eq!(cs.times(&cs), Mat::<Poly>::identity(dd).negate());
        BraneKind::SpaceFilling {
            complex_structure: cs,
        }
    } else if types.iter().all(|&t| t == 0)
        && s.f.is_zero()
        && characteristic_rank.iter().all(|&r| r == dd)
    {
        BraneKind::Lagrangian
    } else if types.iter().all(|&t| 2 * t == m) {
        BraneKind::Complex
    } else {
        let rank = characteristic_rank.first().copied().unwrap_or(0);
        let basic = symplectic_form(&j, m, samples).map(|omega| {
            let pulled = Mat::from_fn(dd, dd, |a, b| {
                dot(&s.tangent[a], &omega.apply(&s.tangent[b]))
            });
            let g = s.f.plus(&pulled.map(|p| p.scale(&Qi::i())));
            characteristic
                .iter()
                .all(|c| g.apply(c).iter().all(Poly::is_zero))
        });
        BraneKind::Coisotropic {
            characteristic_rank: rank,
            basic,
        }
    };
    Ok(BraneReport {
        compatible,
        defects,
        ell,
        characteristic,
        characteristic_rank,
        coisotropic,
        kind: Some(kind),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pullback_of_area_form_to_parabola() {
        let area = MixedForm::monomial(2, Poly::constant(Qi::one()), &[0, 1]);
        let curve = [Poly::var(0), Poly::var(0).pow(2)];
        assert!(pullback_form(&area, &curve, 1).is_zero());
        let dy = MixedForm::monomial(2, Poly::constant(Qi::one()), &[1]);
        assert_eq!(
            pullback_form(&dy, &curve, 1),
            MixedForm::monomial(1, Poly::var(0).scale(&Qi::int(2)), &[0])
        );
    }
}
