//! Integrability of pure spinor fields, `d_H φ = (X + ξ)·φ`, and modular
//! vector fields of Poisson structures.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::form::{Mask, MixedForm, Variance};
use crate::genvec::GenVector;
use crate::isotropic::null_space;
use crate::linalg::{Mat, SparseSolution, SparseSystem};
use crate::poly::{Monomial, Poly};
use crate::scalar::Qi;
use crate::spin::exp_beta_act;

use super::calculus::{d, d_h, ClosedThreeForm, PolyForm, Section};
use super::frames::render_point;
use super::schouten::is_poisson;

/// Outcome of an integrability check.
#[derive(Clone, Debug, PartialEq)]
pub enum IntegrabilityVerdict {
    /// `d_H φ = w·φ` holds identically.
    Integrable {
        witness: Section,
        /// Ansatz degree, `None` for a supplied witness.
        degree_bound: Option<u32>,
        /// Whether the witness lies in the conjugate of the null space.
        normalized: bool,
    },
    /// A supplied witness leaves this residual.
    WitnessRejected { residual: PolyForm },
    /// At this sample `d_H φ` is not in the image of the Clifford action, so
    /// no witness exists.
    Obstructed {
        point: Vec<Qi>,
        value: MixedForm<Qi>,
    },
    /// No polynomial witness up to the bound.
    Exhausted {
        degree_bound: u32,
        unknowns: usize,
        equations: usize,
    },
}

impl IntegrabilityVerdict {
    #[must_use]
    pub fn passed(&self) -> bool {
        matches!(self, Self::Integrable { .. })
    }
}

/// Solves `w·φ = rhs` for a polynomial section `w` whose components are
/// restricted to `allowed` and have degree at most `deg`; with `conj`, also
/// imposes `w·conj = 0`.
pub(crate) fn solve_clifford(
    phi: &PolyForm,
    rhs: &PolyForm,
    allowed: &[usize],
    deg: u32,
    conj: Option<&PolyForm>,
) -> std::result::Result<Section, (usize, usize)> {
    let m = phi.dim();
    let monos = Monomial::all_up_to(m, deg);
    let nm = monos.len();
    let unknowns = allowed.len() * nm;
    let mut eqs: BTreeMap<(u8, Mask, Monomial), BTreeMap<usize, Qi>> = BTreeMap::new();
    let mut add = |tag: u8, image: &PolyForm, base: usize| {
        for (mask, p) in image.terms() {
            for (nu, c) in p.terms() {
                for (k, mu) in monos.iter().enumerate() {
                    let e = eqs
                        .entry((tag, mask, nu.mul(mu)))
                        .or_default()
                        .entry(base + k)
                        .or_default();
                    *e = &*e + c;
                }
            }
        }
    };
    for (slot, &c) in allowed.iter().enumerate() {
        let e = GenVector::<Poly>::basis(m, c);
        add(0, &e.act(phi), slot * nm);
        if let Some(cj) = conj {
            add(1, &e.act(cj), slot * nm);
        }
    }
    let mut rhs_map: BTreeMap<(u8, Mask, Monomial), Qi> = BTreeMap::new();
    for (mask, p) in rhs.terms() {
        for (nu, c) in p.terms() {
            rhs_map.insert((0, mask, nu.clone()), c.clone());
            eqs.entry((0, mask, nu.clone())).or_default();
        }
    }
    let mut sys = SparseSystem::new(unknowns);
    for (key, row) in eqs {
        let b = rhs_map.get(&key).cloned().unwrap_or_default();
        sys.push(row, b);
    }
    let equations = sys.num_equations();
    match sys.solve() {
        SparseSolution::Inconsistent { .. } => Err((unknowns, equations)),
        SparseSolution::Solved(x) => {
            let mut w = GenVector::<Poly>::zero(m);
            for (slot, &c) in allowed.iter().enumerate() {
                let mut p = Poly::zero();
                for (k, mu) in monos.iter().enumerate() {
                    p.add_term(mu.clone(), x[slot * nm + k].clone());
                }
                if c < m {
                    w.vec[c] = p;
                } else {
                    w.covec[c - m] = p;
                }
            }
            Ok(w)
        }
    }
}

/// Default ansatz degree: coefficient degree of `φ` plus that of `H` plus one.
#[must_use]
pub fn default_degree_bound(phi: &PolyForm, h: &ClosedThreeForm) -> u32 {
    phi.coeff_degree() + h.form().coeff_degree() + 1
}

/// Pointwise solvability of `d_H φ(p) = w·φ(p)` for constant `w`.
fn pointwise_obstruction(phi: &PolyForm, dphi: &PolyForm, p: &[Qi]) -> Option<MixedForm<Qi>> {
    let m = phi.dim();
    let at = phi.eval(p);
    let target = dphi.eval(p);
    let images: Vec<MixedForm<Qi>> = (0..2 * m)
        .map(|c| GenVector::<Qi>::basis(m, c).act(&at))
        .collect();
    let mut index = BTreeMap::new();
    for f in images.iter().chain(std::iter::once(&target)) {
        for (mask, _) in f.terms() {
            let n = index.len();
            index.entry(mask).or_insert(n);
        }
    }
    if index.is_empty() {
        return None;
    }
    let cols: Vec<Vec<Qi>> = images.iter().map(|f| f.coordinates(&index)).collect();
    let a = Mat::from_fn(index.len(), 2 * m, |r, c| cols[c][r].clone());
    match a.solve(&target.coordinates(&index)) {
        Some(_) => None,
        None => Some(target),
    }
}

/// Checks `d_H φ = (X + ξ)·φ` for a spinor field pure at the samples.
pub fn check_spinor_integrability(
    phi: &PolyForm,
    h: &ClosedThreeForm,
    witness: Option<&Section>,
    degree_bound: Option<u32>,
    samples: &[Vec<Qi>],
) -> Result<IntegrabilityVerdict> {
    let m = phi.dim();
    if h.form().dim() != m {
        return Err(Error::DimensionMismatch {
            left: m,
            right: h.form().dim(),
        });
    }
    for p in samples {
        let at = phi.eval(p);
        if at.is_zero() {
            return Err(Error::Invalid(format!(
                "spinor vanishes at {}",
                render_point(p)
            )));
        }
        let ns = null_space(&at)?;
        if !ns.pure {
            return Err(Error::NotPure {
                expected: m,
                found: ns.basis.len(),
            });
        }
    }
    let dphi = d_h(phi, h);
    if let Some(w) = witness {
        if w.dim() != m {
            return Err(Error::DimensionMismatch {
                left: m,
                right: w.dim(),
            });
        }
        let residual = dphi.minus(&w.act(phi));
        return Ok(if residual.is_zero() {
            IntegrabilityVerdict::Integrable {
                witness: w.clone(),
                degree_bound: None,
                normalized: false,
            }
        } else {
            IntegrabilityVerdict::WitnessRejected { residual }
        });
    }
    for p in samples {
        if let Some(value) = pointwise_obstruction(phi, &dphi, p) {
            return Ok(IntegrabilityVerdict::Obstructed {
                point: p.clone(),
                value,
            });
        }
    }
    let deg = degree_bound.unwrap_or_else(|| default_degree_bound(phi, h));
    let all: Vec<usize> = (0..2 * m).collect();
    let conj = phi.conj();
    let found = solve_clifford(phi, &dphi, &all, deg, Some(&conj))
        .map(|w| (w, true))
        .or_else(|_| solve_clifford(phi, &dphi, &all, deg, None).map(|w| (w, false)));
    Ok(match found {
        Ok((witness, normalized)) => {
            debug_assert!(dphi.minus(&witness.act(phi)).is_zero());
            IntegrabilityVerdict::Integrable {
                witness,
                degree_bound: Some(deg),
                normalized,
            }
        }
        Err((unknowns, equations)) => IntegrabilityVerdict::Exhausted {
            degree_bound: deg,
            unknowns,
            equations,
        },
    })
}

/// The modular vector field `X` with `(d + df∧)φ = X·φ`, `φ = e^β·v`, for the
/// volume form `e^f v`.
pub fn modular_vector_field(
    beta: &PolyForm,
    v: &PolyForm,
    log_density: Option<&Poly>,
    degree_bound: Option<u32>,
) -> Result<Vec<Poly>> {
    let m = v.dim();
    if beta.dim() != m || beta.variance() != Variance::Multivector {
        return Err(Error::Invalid(
            "β must be a bivector field on the chart".into(),
        ));
    }
    if v.variance() != Variance::Form
        || v.terms().any(|(mask, _)| mask.count_ones() as usize != m)
        || v.is_zero()
    {
        return Err(Error::Invalid("v must be a nonzero top-degree form".into()));
    }
    if !is_poisson(beta)? {
        return Err(Error::NotPoisson);
    }
    let phi = exp_beta_act(&beta.to_antisymmetric(), v);
    let mut rhs = d(&phi);
    if let Some(f) = log_density {
        let df = super::calculus::one_form(&super::calculus::gradient(f, m));
        rhs = rhs.plus(&df.wedge_unchecked(&phi));
    }
    let deg = degree_bound.unwrap_or(rhs.coeff_degree() + 1);
    let allowed: Vec<usize> = (0..m).collect();
    solve_clifford(&phi, &rhs, &allowed, deg, None)
        .map(|w| w.vec)
        .map_err(|_| {
            Error::Unsupported(format!(
                "no polynomial modular field of degree at most {deg}"
            ))
        })
}
