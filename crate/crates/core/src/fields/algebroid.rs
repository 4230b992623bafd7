//! Lie algebroids of transverse Dirac structures, their differentials and the
//! Maurer-Cartan equation for deformations.

use crate::error::{Error, Result};
use crate::form::{MixedForm, Variance};
use crate::linalg::Mat;
use crate::poly::Poly;
use crate::scalar::{Coeff, Qi};

use super::calculus::{courant_bracket, ClosedThreeForm, PolyForm, Section};
use super::chart::{Chart, Symbol};
use super::frames::DiracFrame;
use super::schouten::Algebroid;

/// A Dirac structure `L` with a transverse Dirac complement identified with
/// `L*` through twice the pairing.
#[derive(Clone, Debug, PartialEq)]
pub struct DiracPair {
    pub frame: Vec<Section>,
    /// Frame of the complement with `2⟨l_i, dual_j⟩ = δ_ij`.
    pub dual: Vec<Section>,
    pub algebroid: Algebroid,
    pub dual_algebroid: Algebroid,
}

fn twice_pairing(a: &Section, b: &Section) -> Poly {
    a.inner(b).scale(&Qi::int(2))
}

fn structure(
    frame: &[Section],
    dual: &[Section],
    h: &ClosedThreeForm,
    label: &str,
) -> Result<Algebroid> {
    let r = frame.len();
    let mut c = vec![vec![vec![Poly::zero(); r]; r]; r];
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            let b = courant_bracket(&frame[i], &frame[j], h);
            let coeffs: Vec<Poly> = dual.iter().map(|d| twice_pairing(&b, d)).collect();
            let rebuilt = frame
                .iter()
                .zip(&coeffs)
                .fold(Section::zero(b.dim()), |acc, (f, k)| acc.plus(&f.times(k)));
            if rebuilt != b {
                return Err(Error::NotInvolutive(format!(
                    "bracket of {label} sections {} and {} leaves the frame",
                    i + 1,
                    j + 1
                )));
            }
            c[i][j] = coeffs;
        }
    }
    Ok(Algebroid {
        anchors: frame.iter().map(|s| s.vec.clone()).collect(),
        structure: c,
    })
}

impl DiracPair {
    /// Requires bases of rank `m` whose mutual Gram matrix is constant and
    /// invertible, and involutivity of both.
    pub fn new(l: &DiracFrame, complement: &DiracFrame, h: &ClosedThreeForm) -> Result<Self> {
        let m = l.dim();
        if l.sections().len() != m || complement.sections().len() != m {
            return Err(Error::Invalid(format!(
                "expected frames of exactly {m} sections"
            )));
        }
        let gram = Mat::from_fn(m, m, |i, j| {
            twice_pairing(&l.sections()[i], &complement.sections()[j])
        });
        let g = gram.as_constant().ok_or_else(|| {
            Error::Unsupported("pairing between the frames is not constant".into())
        })?;
        let gi = g
            .inverse()
            .ok_or_else(|| Error::NotTransverse("frames pair degenerately".into()))?;
        let k = complement.sections();
        let dual: Vec<Section> = (0..m)
            .map(|j| {
                (0..m).fold(Section::zero(m), |acc, i| {
                    acc.plus(&k[i].scale(&gi[(i, j)]))
                })
            })
            .collect();
        let frame = l.sections().to_vec();
        let algebroid = structure(&frame, &dual, h, "L")?;
        let dual_algebroid = structure(&dual, &frame, h, "complement")?;
        Ok(Self {
            frame,
            dual,
            algebroid,
            dual_algebroid,
        })
    }

    /// `L = T_{0,1} ⊕ T*_{1,0}` with complement `T_{1,0} ⊕ T*_{0,1}` on a
    /// fully paired chart, framed by `∂/∂z̄_j, dz_j` and `dz̄_j, ∂/∂z_j`.
    pub fn complex(chart: &Chart) -> Result<Self> {
        chart.complex_structure()?;
        let m = chart.dim();
        let n = chart.complex_pairs().len();
        let mut l = Vec::new();
        let mut k = Vec::new();
        for j in 0..n {
            l.push(Section::from_vector(
                chart.partial(Symbol::Antiholomorphic(j)),
            ));
            k.push(Section::from_covector(
                chart.differential(Symbol::Antiholomorphic(j)),
            ));
        }
        for j in 0..n {
            l.push(Section::from_covector(
                chart.differential(Symbol::Holomorphic(j)),
            ));
            k.push(Section::from_vector(chart.partial(Symbol::Holomorphic(j))));
        }
        Self::new(
            &DiracFrame::new(m, l)?,
            &DiracFrame::new(m, k)?,
            &ClosedThreeForm::zero(m),
        )
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.frame.len()
    }

    /// Frame of the graph `{l + ε(l)}` of `ε ∈ Λ²L*`, `eps[a][b] = ε(l_a, l_b)`.
    #[must_use]
    pub fn deformed_frame(&self, eps: &Mat<Poly>) -> Vec<Section> {
        let r = self.rank();
        (0..r)
            .map(|a| {
                (0..r).fold(self.frame[a].clone(), |acc, b| {
                    acc.plus(&self.dual[b].times(&eps[(a, b)]))
                })
            })
            .collect()
    }
}

/// `d_L μ` for `μ ∈ Λ•L*` written in the dual frame.
pub fn lie_algebroid_differential(mu: &PolyForm, pair: &DiracPair) -> Result<PolyForm> {
    pair.algebroid.differential(mu)
}

/// Outcome of the Maurer-Cartan check.
#[derive(Clone, Debug, PartialEq)]
pub struct MaurerCartan {
    /// `d_L ε + ½[ε, ε]` as a three-form on `L`.
    pub residual: PolyForm,
}

impl MaurerCartan {
    #[must_use]
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Evaluates `d_L ε + ½[ε, ε]` with the bracket of the complement.
pub fn maurer_cartan(eps: &Mat<Poly>, pair: &DiracPair) -> Result<MaurerCartan> {
    let r = pair.rank();
    if eps.rows() != r || !eps.is_antisymmetric() {
        return Err(Error::NotAntisymmetric(format!(
            "ε must be an antisymmetric {r}x{r} matrix"
        )));
    }
    let e = MixedForm::from_antisymmetric(Variance::Form, eps);
    let de = pair.algebroid.differential(&e)?;
    let ev = e.clone().with_variance(Variance::Multivector);
    let br = pair
        .dual_algebroid
        .schouten(&ev, &ev)?
        .with_variance(Variance::Form);
    Ok(MaurerCartan {
        residual: de.plus(&br.scale(&Qi::frac(1, 2))),
    })
}
