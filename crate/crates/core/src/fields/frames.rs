//! Dirac frames and the Courant involutivity tensor.

use crate::error::{Error, Result};
use crate::isotropic::{canonical_form, MaxIsotropic};
use crate::linalg::rank_of;
use crate::poly::Poly;
use crate::scalar::Qi;

use super::calculus::{courant_bracket, ClosedThreeForm, Section};

/// Polynomial sections spanning a maximal isotropic subbundle away from
/// rank drops.
#[derive(Clone, Debug, PartialEq)]
pub struct DiracFrame {
    m: usize,
    sections: Vec<Section>,
}

/// A component `⟨[e_i, e_j], e_k⟩` of the involutivity tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorComponent {
    pub indices: (usize, usize, usize),
    pub value: Poly,
}

impl DiracFrame {
    /// Checks that all pairings vanish identically.
    pub fn new(m: usize, sections: Vec<Section>) -> Result<Self> {
        for s in &sections {
            if s.dim() != m {
                return Err(Error::DimensionMismatch {
                    left: m,
                    right: s.dim(),
                });
            }
        }
        for (i, u) in sections.iter().enumerate() {
            for (j, w) in sections.iter().enumerate().skip(i) {
                let p = u.inner(w);
                if !p.is_zero() {
                    return Err(Error::NotIsotropic {
                        i,
                        j,
                        value: p.to_string(),
                    });
                }
            }
        }
        Ok(Self { m, sections })
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.m
    }

    #[must_use]
    pub fn sections(&self) -> &[Section] {
        &self.sections
    }

    /// Fibre at a point.
    pub fn at(&self, point: &[Qi]) -> Result<MaxIsotropic> {
        let vs: Vec<_> = self.sections.iter().map(|s| s.eval(point)).collect();
        canonical_form(self.m, &vs)
    }

    /// Rank of the frame at a point.
    #[must_use]
    pub fn rank_at(&self, point: &[Qi]) -> usize {
        let rows: Vec<Vec<Qi>> = self
            .sections
            .iter()
            .map(|s| s.eval(point).to_column())
            .collect();
        rank_of(&rows)
    }

    /// Requires full rank at every sample.
    pub fn check_rank(&self, samples: &[Vec<Qi>]) -> Result<()> {
        for p in samples {
            let r = self.rank_at(p);
            if r != self.m {
                return Err(Error::RankJump {
                    point: render_point(p),
                    expected: self.m,
                    found: r,
                });
            }
        }
        Ok(())
    }
}

pub(crate) fn render_point(p: &[Qi]) -> String {
    format!(
        "({})",
        p.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    )
}

/// Nonzero components `⟨[e_i, e_j]_H, e_k⟩`, `i < j < k`.
#[must_use]
pub fn involutivity_tensor(frame: &DiracFrame, h: &ClosedThreeForm) -> Vec<TensorComponent> {
    let s = frame.sections();
    let mut out = Vec::new();
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            let b = courant_bracket(&s[i], &s[j], h);
            for (k, e) in s.iter().enumerate().skip(j + 1) {
                let value = b.inner(e);
                if !value.is_zero() {
                    out.push(TensorComponent {
                        indices: (i, j, k),
                        value,
                    });
                }
            }
        }
    }
    out
}

/// Whether the frame closes under the bracket.
#[must_use]
pub fn is_involutive(frame: &DiracFrame, h: &ClosedThreeForm) -> bool {
    involutivity_tensor(frame, h).is_empty()
}

/// Frame `{X + i_X B}` of the graph of a two-form, `b[i][j] = B_ij`.
#[must_use]
pub fn graph_of_two_form(b: &crate::linalg::Mat<Poly>) -> Vec<Section> {
    let m = b.rows();
    (0..m)
        .map(|i| {
            let mut v = Section::basis(m, i);
            v.covec = b.row(i);
            v
        })
        .collect()
}

/// Frame `{ξ + i_ξ β}` of the graph of a bivector, `beta[i][j] = β^{ij}`.
#[must_use]
pub fn graph_of_bivector(beta: &crate::linalg::Mat<Poly>) -> Vec<Section> {
    let m = beta.rows();
    (0..m)
        .map(|i| {
            let mut v = Section::basis(m, m + i);
            v.vec = beta.row(i);
            v
        })
        .collect()
}

/// Frame of `Δ ⊕ Ann(Δ)` for a distribution spanned by `delta`.
pub fn distribution_frame(m: usize, delta: &[Vec<Poly>]) -> Result<Vec<Section>> {
    let mut out: Vec<Section> = delta
        .iter()
        .map(|v| Section::from_vector(v.clone()))
        .collect();
    let constant: Option<Vec<Vec<Qi>>> = delta
        .iter()
        .map(|v| v.iter().map(Poly::as_constant).collect())
        .collect();
    let constant = constant
        .ok_or_else(|| Error::Unsupported("annihilator of a non-constant distribution".into()))?;
    let ann = if constant.is_empty() {
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| if i == j { Qi::one() } else { Qi::zero() })
                    .collect()
            })
            .collect()
    } else {
        crate::linalg::Mat::from_rows(constant).kernel()
    };
    out.extend(
        ann.into_iter()
            .map(|a| Section::from_covector(a.into_iter().map(Poly::constant).collect())),
    );
    Ok(out)
}
