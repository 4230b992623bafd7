//! Schouten brackets of polynomial multivector fields and of multisections
//! of a Lie algebroid given in a frame.

use crate::error::{Error, Result};
use crate::form::{degree, Mask, MixedForm, Variance};
use crate::poly::Poly;
use crate::scalar::Coeff;

use super::calculus::{apply_vector, PolyForm};

fn right_derivative(mask: Mask, i: usize) -> Option<(Mask, bool)> {
    if mask & (1 << i) == 0 {
        return None;
    }
    let above = (mask >> (i + 1)).count_ones();
    Some((mask & !(1 << i), above % 2 == 1))
}

fn homogeneous_parts(p: &PolyForm) -> Vec<(usize, PolyForm)> {
    let mut out = Vec::new();
    for k in 0..=p.dim() {
        let c = p.component(k);
        if !c.is_zero() {
            out.push((k, c));
        }
    }
    out
}

fn check_multivectors(a: &PolyForm, b: &PolyForm) -> Result<()> {
    if a.variance() != Variance::Multivector || b.variance() != Variance::Multivector {
        return Err(Error::VarianceMismatch);
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(())
}

/// `Σ_i (P ∂⃖_{θ_i}) ∧ ∂_i Q` for homogeneous `P`.
fn half(p: &PolyForm, q: &PolyForm) -> PolyForm {
    let m = p.dim();
    let mut out = MixedForm::zero_multivector(m);
    for i in 0..m {
        let mut left = MixedForm::zero_multivector(m);
        for (mask, c) in p.terms() {
            if let Some((rest, neg)) = right_derivative(mask, i) {
                left.add_term(rest, if neg { c.negate() } else { c.clone() });
            }
        }
        if left.is_zero() {
            continue;
        }
        let dq = q.map(|c| c.partial(i));
        if dq.is_zero() {
            continue;
        }
        out = out.plus(&left.wedge_unchecked(&dq));
    }
    out
}

/// Schouten bracket of multivector fields on `R^m`, extending `[X, f] = X(f)`
/// and the Lie bracket of vector fields.
pub fn schouten(a: &PolyForm, b: &PolyForm) -> Result<PolyForm> {
    check_multivectors(a, b)?;
    let mut out = MixedForm::zero_multivector(a.dim());
    for (p, pa) in homogeneous_parts(a) {
        for (q, qb) in homogeneous_parts(b) {
            let first = half(&pa, &qb);
            let second = half(&qb, &pa);
            let odd = ((p as i64 - 1) * (q as i64 - 1)).rem_euclid(2) == 1;
            out = out.plus(&first);
            out = if odd {
                out.plus(&second)
            } else {
                out.minus(&second)
            };
        }
    }
    Ok(out)
}

/// Whether `[β, β] = 0`.
pub fn is_poisson(beta: &PolyForm) -> Result<bool> {
    Ok(schouten(beta, beta)?.is_zero())
}

/// Bivector field from components `β^{ij}`.
#[must_use]
pub fn bivector(components: &crate::linalg::Mat<Poly>) -> PolyForm {
    MixedForm::from_antisymmetric(Variance::Multivector, components)
}

/// A Lie algebroid of rank `r` on `R^m` given by anchors `ρ(s_i)` and
/// structure functions `[s_i, s_j] = Σ_l c^l_ij s_l` in a frame.
#[derive(Clone, Debug, PartialEq)]
pub struct Algebroid {
    pub anchors: Vec<Vec<Poly>>,
    /// `structure[i][j][l] = c^l_ij`.
    pub structure: Vec<Vec<Vec<Poly>>>,
}

#[derive(Clone, Copy)]
enum Factor<'a> {
    Function(&'a Poly),
    Generator(usize),
}

impl Factor<'_> {
    fn degree(&self) -> usize {
        match self {
            Factor::Function(_) => 0,
            Factor::Generator(_) => 1,
        }
    }

    fn as_element(&self, r: usize) -> PolyForm {
        match self {
            Factor::Function(f) => {
                MixedForm::scalar(r, (*f).clone()).with_variance(Variance::Multivector)
            }
            Factor::Generator(i) => {
                MixedForm::<Poly>::basis(r, 1 << i).with_variance(Variance::Multivector)
            }
        }
    }
}

fn factors_of(mask: Mask, f: &Poly) -> Vec<Factor<'_>> {
    let mut out = vec![Factor::Function(f)];
    out.extend(
        (0..16)
            .filter(|i| mask & (1 << i) != 0)
            .map(Factor::Generator),
    );
    out
}

impl Algebroid {
    /// The tangent algebroid in coordinate frame.
    #[must_use]
    pub fn tangent(m: usize) -> Self {
        let anchors = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        Poly::constant(if i == j {
                            crate::Qi::one()
                        } else {
                            crate::Qi::zero()
                        })
                    })
                    .collect()
            })
            .collect();
        Self {
            anchors,
            structure: vec![vec![vec![Poly::zero(); m]; m]; m],
        }
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.anchors.len()
    }

    fn base(&self, x: Factor<'_>, y: Factor<'_>) -> PolyForm {
        let r = self.rank();
        let mut out = MixedForm::zero_multivector(r);
        match (x, y) {
            (Factor::Function(_), Factor::Function(_)) => {}
            (Factor::Generator(i), Factor::Function(g)) => {
                out.add_term(0, apply_vector(&self.anchors[i], g))
            }
            (Factor::Function(g), Factor::Generator(i)) => {
                out.add_term(0, apply_vector(&self.anchors[i], g).negate())
            }
            (Factor::Generator(i), Factor::Generator(j)) => {
                for (l, c) in self.structure[i][j].iter().enumerate() {
                    out.add_term(1 << l, c.clone());
                }
            }
        }
        out
    }

    fn product(&self, fs: &[Factor<'_>]) -> PolyForm {
        let r = self.rank();
        fs.iter().fold(
            MixedForm::scalar(r, Poly::constant(crate::Qi::one()))
                .with_variance(Variance::Multivector),
            |acc, f| acc.wedge_unchecked(&f.as_element(r)),
        )
    }

    /// `[x, F_1 ⋯ F_k]` by the graded Leibniz rule.
    fn generator_with(&self, x: Factor<'_>, fs: &[Factor<'_>]) -> PolyForm {
        let r = self.rank();
        let mut out = MixedForm::zero_multivector(r);
        let shift = x.degree() as i64 - 1;
        let mut passed = 0i64;
        for t in 0..fs.len() {
            let mid = self.base(x, fs[t]);
            if !mid.is_zero() {
                let term = self
                    .product(&fs[..t])
                    .wedge_unchecked(&mid)
                    .wedge_unchecked(&self.product(&fs[t + 1..]));
                out = if (shift * passed).rem_euclid(2) == 1 {
                    out.minus(&term)
                } else {
                    out.plus(&term)
                };
            }
            passed += fs[t].degree() as i64;
        }
        out
    }

    /// Schouten bracket on `Λ•A`, multisections written in the frame basis.
    pub fn schouten(&self, a: &PolyForm, b: &PolyForm) -> Result<PolyForm> {
        check_multivectors(a, b)?;
        if a.dim() != self.rank() {
            return Err(Error::DimensionMismatch {
                left: self.rank(),
                right: a.dim(),
            });
        }
        let r = self.rank();
        let mut out = MixedForm::zero_multivector(r);
        for (pm, pc) in a.terms() {
            let pf = factors_of(pm, pc);
            let p = degree(pm) as i64;
            for (qm, qc) in b.terms() {
                let qf = factors_of(qm, qc);
                let mut passed = 0i64;
                for t in 0..qf.len() {
                    let g = qf[t];
                    let inner = self.generator_with(g, &pf);
                    if !inner.is_zero() {
                        let swap = ((p - 1) * (g.degree() as i64 - 1)).rem_euclid(2) == 1;
                        let inner = if swap { inner } else { inner.negate() };
                        let term = self
                            .product(&qf[..t])
                            .wedge_unchecked(&inner)
                            .wedge_unchecked(&self.product(&qf[t + 1..]));
                        out = if ((p - 1) * passed).rem_euclid(2) == 1 {
                            out.minus(&term)
                        } else {
                            out.plus(&term)
                        };
                    }
                    passed += g.degree() as i64;
                }
            }
        }
        Ok(out)
    }

    /// Differential on `Λ•A*` by the Cartan formula; `mu` is a form in the
    /// dual frame.
    pub fn differential(&self, mu: &PolyForm) -> Result<PolyForm> {
        let r = self.rank();
        if mu.dim() != r || mu.variance() != Variance::Form {
            return Err(Error::Invalid("expected a form on the algebroid".into()));
        }
        let mut out = MixedForm::zero(r);
        for (mask, c) in mu.terms() {
            for j in (0..r).filter(|j| mask & (1 << j) == 0) {
                let full = mask | (1 << j);
                let pos = (full & ((1 << j) - 1)).count_ones();
                let v = apply_vector(&self.anchors[j], c);
                out.add_term(full, if pos % 2 == 1 { v.negate() } else { v });
            }
        }
        for (mask, c) in mu.terms() {
            for a in 0..r {
                for b in a + 1..r {
                    for (l, cl) in self.structure[a][b].iter().enumerate() {
                        if cl.is_zero() || mask & (1 << l) == 0 {
                            continue;
                        }
                        let rest = mask & !(1 << l);
                        if rest & ((1 << a) | (1 << b)) != 0 {
                            continue;
                        }
                        let full = rest | (1 << a) | (1 << b);
                        let pa = (full & ((1 << a) - 1)).count_ones();
                        let pb = (full & ((1 << b) - 1)).count_ones();
                        let pl = (rest & ((1 << l) - 1)).count_ones();
                        let v = c.times(cl);
                        let neg = (pa + pb + pl) % 2 == 1;
                        out.add_term(full, if neg { v.negate() } else { v });
                    }
                }
            }
        }
        Ok(out)
    }
}
