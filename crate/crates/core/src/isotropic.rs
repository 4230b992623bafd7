//! Maximal isotropic subspaces of `(V ⊕ V*) ⊗ C` and their pure spinors.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::form::{Mask, MixedForm, Variance, MAX_DIM};
use crate::genvec::GenVector;
use crate::linalg::{rank_of, Mat};
use crate::scalar::Qi;
use crate::spin::{exp_beta_act, SpinGroupElement};

/// Maximal isotropic `L = L(Δ, ε)` in canonical form.
///
/// `delta` is a row-reduced basis of `Δ = π_V L`, `eps[a][b] = ε(d_a, d_b)`
/// and `ann` is a row-reduced basis of `L ∩ V* = Ann Δ`.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxIsotropic {
    dim: usize,
    basis: Vec<GenVector<Qi>>,
    delta: Vec<Vec<Qi>>,
    delta_pivots: Vec<usize>,
    eps: Mat<Qi>,
    ann: Vec<Vec<Qi>>,
}

/// A pure spinor line, represented by one generator.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorLine {
    pub generator: MixedForm<Qi>,
}

impl SpinorLine {
    /// Whether both generators span the same line.
    #[must_use]
    pub fn same_line(&self, o: &Self) -> bool {
        self.generator.proportional(&o.generator).is_some()
    }
}

/// Dual description `L = L(F, γ)` with `F = π_{V*} L`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualDescription {
    /// Row-reduced basis `f_a` of `F`.
    pub f: Vec<Vec<Qi>>,
    /// `gamma[a][b] = f_b(X_a)` where `X_a + f_a ∈ L`.
    pub gamma: Mat<Qi>,
    /// Basis of `L ∩ V = Ann F`.
    pub kernel: Vec<Vec<Qi>>,
    /// Bivector components `β^{ij}` with `exp(β)·(f_1 ∧ … ∧ f_r)` a generator.
    pub beta: Mat<Qi>,
}

/// Null space of a form under the Clifford action.
#[derive(Clone, Debug, PartialEq)]
pub struct NullSpace {
    pub basis: Vec<GenVector<Qi>>,
    /// Whether the null space is maximal, i.e. the form is a pure spinor.
    pub pure: bool,
}

fn check_dim(m: usize) -> Result<()> {
    if m > MAX_DIM {
        return Err(Error::CapacityExceeded {
            dim: m,
            max: MAX_DIM,
        });
    }
    Ok(())
}

/// Verifies isotropy and maximality of a spanning family, then computes the
/// canonical description.
pub fn canonical_form(dim: usize, basis: &[GenVector<Qi>]) -> Result<MaxIsotropic> {
    check_dim(dim)?;
    for v in basis {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: v.dim(),
            });
        }
    }
    for (i, u) in basis.iter().enumerate() {
        for (j, w) in basis.iter().enumerate().skip(i) {
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
    let rows: Vec<Vec<Qi>> = basis.iter().map(GenVector::to_column).collect();
    let (r, pivots) = if rows.is_empty() {
        (Mat::zeros(0, 2 * dim), Vec::new())
    } else {
        Mat::from_rows(rows).rref()
    };
    if pivots.len() != dim {
        return Err(Error::RankDeficient {
            expected: dim,
            found: pivots.len(),
        });
    }
    let mut delta = Vec::new();
    let mut delta_pivots = Vec::new();
    let mut lifts = Vec::new();
    let mut ann = Vec::new();
    let mut canon = Vec::new();
    for (row, &p) in pivots.iter().enumerate() {
        let v = GenVector::from_column(&r.row(row));
        if p < dim {
            delta.push(v.vec.clone());
            delta_pivots.push(p);
            lifts.push(v.covec.clone());
        } else {
            ann.push(v.covec.clone());
        }
        canon.push(v);
    }
    let k = delta.len();
    let eps = Mat::from_fn(k, k, |a, b| dot(&lifts[a], &delta[b]));
    Ok(MaxIsotropic {
        dim,
        basis: canon,
        delta,
        delta_pivots,
        eps,
        ann,
    })
}

fn dot(a: &[Qi], b: &[Qi]) -> Qi {
    a.iter().zip(b).fold(Qi::zero(), |s, (x, y)| &s + &(x * y))
}

impl MaxIsotropic {
    #[must_use]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-reduced basis.
    #[must_use]
    pub fn basis(&self) -> &[GenVector<Qi>] {
        &self.basis
    }

    #[must_use]
    pub fn delta(&self) -> &[Vec<Qi>] {
        &self.delta
    }

    #[must_use]
    pub fn eps(&self) -> &Mat<Qi> {
        &self.eps
    }

    #[must_use]
    pub fn ann(&self) -> &[Vec<Qi>] {
        &self.ann
    }

    /// Type `k = m - dim Δ`.
    #[must_use]
    pub fn type_k(&self) -> usize {
        self.dim - self.delta.len()
    }

    #[must_use]
    pub fn parity(&self) -> usize {
        self.type_k() % 2
    }

    #[must_use]
    pub fn rows(&self) -> Vec<Vec<Qi>> {
        self.basis.iter().map(GenVector::to_column).collect()
    }

    #[must_use]
    pub fn contains(&self, v: &GenVector<Qi>) -> bool {
        crate::linalg::in_span(&self.rows(), &v.to_column())
    }

    /// Subspace equality; the stored basis is the reduced echelon form, so
    /// equal subspaces have equal bases.
    #[must_use]
    pub fn same_subspace(&self, o: &Self) -> bool {
        self.dim == o.dim && self.basis == o.basis
    }

    /// Whether `L ∩ L' = 0`.
    #[must_use]
    pub fn transverse(&self, o: &Self) -> bool {
        let joint: Vec<Vec<Qi>> = self.rows().into_iter().chain(o.rows()).collect();
        rank_of(&joint) == 2 * self.dim
    }

    #[must_use]
    pub fn conj(&self) -> Self {
        let b: Vec<GenVector<Qi>> = self.basis.iter().map(GenVector::conj).collect();
        canonical_form(self.dim, &b).expect("conjugate of a maximal isotropic")
    }

    /// `Lᵀ = {X - ξ}`.
    #[must_use]
    pub fn transposed(&self) -> Self {
        let b: Vec<GenVector<Qi>> = self.basis.iter().map(GenVector::transposed).collect();
        canonical_form(self.dim, &b).expect("transpose of a maximal isotropic")
    }

    /// Whether `L` is the complexification of a real subspace.
    #[must_use]
    pub fn is_real(&self) -> bool {
        self.same_subspace(&self.conj())
    }

    /// Generator `e^B ∧ θ_1 ∧ … ∧ θ_k` with `i*B = -ε`, `B` vanishing on the
    /// coordinate complement of the pivot directions of `Δ`.
    #[must_use]
    pub fn pure_spinor(&self) -> SpinorLine {
        let m = self.dim;
        let mut b = Mat::zeros(m, m);
        for (a, &pa) in self.delta_pivots.iter().enumerate() {
            for (c, &pc) in self.delta_pivots.iter().enumerate() {
                b[(pa, pc)] = -&self.eps[(a, c)];
            }
        }
        let mut phi = MixedForm::from_antisymmetric(Variance::Form, &b)
            .exp_wedge()
            .expect("two-form");
        for theta in &self.ann {
            phi = phi.wedge_one(theta);
        }
        SpinorLine { generator: phi }
    }

    /// The description over the cotangent directions.
    #[must_use]
    pub fn graph_over_cotangent(&self) -> DualDescription {
        let m = self.dim;
        let rows: Vec<Vec<Qi>> = self
            .basis
            .iter()
            .map(|v| v.covec.iter().chain(&v.vec).cloned().collect())
            .collect();
        let (r, pivots) = Mat::from_rows(rows).rref();
        let mut f = Vec::new();
        let mut lifts = Vec::new();
        let mut f_pivots = Vec::new();
        let mut kernel = Vec::new();
        for (row, &p) in pivots.iter().enumerate() {
            let full = r.row(row);
            if p < m {
                f.push(full[..m].to_vec());
                lifts.push(full[m..].to_vec());
                f_pivots.push(p);
            } else {
                kernel.push(full[m..].to_vec());
            }
        }
        let n = f.len();
        let gamma = Mat::from_fn(n, n, |a, b| dot(&f[b], &lifts[a]));
        let mut beta = Mat::zeros(m, m);
        for (a, &pa) in f_pivots.iter().enumerate() {
            for (b, &pb) in f_pivots.iter().enumerate() {
                beta[(pa, pb)] = gamma[(a, b)].clone();
            }
        }
        DualDescription {
            f,
            gamma,
            kernel,
            beta,
        }
    }
}

impl DualDescription {
    /// `exp(β)·(f_1 ∧ … ∧ f_r)`.
    #[must_use]
    pub fn spinor(&self) -> SpinorLine {
        let m = self.beta.rows();
        let mut det = MixedForm::scalar(m, Qi::one());
        for f in &self.f {
            det = det.wedge_one(f);
        }
        SpinorLine {
            generator: exp_beta_act(&self.beta, &det),
        }
    }
}

/// Generator of the pure spinor line of `L`.
#[must_use]
pub fn pure_spinor_line(l: &MaxIsotropic) -> SpinorLine {
    l.pure_spinor()
}

/// Null space `{v : v·φ = 0}`.
pub fn null_space(phi: &MixedForm<Qi>) -> Result<NullSpace> {
    if phi.variance() != Variance::Form {
        return Err(Error::VarianceMismatch);
    }
    if phi.is_zero() {
        return Err(Error::Invalid("the zero form has no spinor line".into()));
    }
    let m = phi.dim();
    let images: Vec<MixedForm<Qi>> = (0..2 * m)
        .map(|k| GenVector::basis(m, k).act(phi))
        .collect();
    let mut index: BTreeMap<Mask, usize> = BTreeMap::new();
    for img in &images {
        for (mask, _) in img.terms() {
            let n = index.len();
            index.entry(mask).or_insert(n);
        }
    }
    let cols: Vec<Vec<Qi>> = images.iter().map(|img| img.coordinates(&index)).collect();
    let a = Mat::from_fn(index.len(), 2 * m, |i, j| cols[j][i].clone());
    let basis: Vec<GenVector<Qi>> = if index.is_empty() {
        (0..2 * m).map(|k| GenVector::basis(m, k)).collect()
    } else {
        a.kernel()
            .iter()
            .map(|v| GenVector::from_column(v))
            .collect()
    };
    let pure = basis.len() == m;
    Ok(NullSpace { basis, pure })
}

/// Maximal isotropic annihilated by a pure spinor.
pub fn isotropic_of_spinor(phi: &MixedForm<Qi>) -> Result<MaxIsotropic> {
    let ns = null_space(phi)?;
    if !ns.pure {
        return Err(Error::NotPure {
            expected: phi.dim(),
            found: ns.basis.len(),
        });
    }
    canonical_form(phi.dim(), &ns.basis)
}

/// Image of `L` under a one-block orthogonal transformation.
pub fn transform(l: &MaxIsotropic, g: &SpinGroupElement) -> Result<MaxIsotropic> {
    g.check(l.dim())?;
    let mat = g.matrix()?;
    let b: Vec<GenVector<Qi>> = l.basis().iter().map(|v| v.apply(&mat)).collect();
    canonical_form(l.dim(), &b)
}

/// `L1 ⊠ L2 = {X + ξ + η : X + ξ ∈ L1, X + η ∈ L2}`.
pub fn tensor_product(l1: &MaxIsotropic, l2: &MaxIsotropic) -> Result<MaxIsotropic> {
    let m = l1.dim();
    if l2.dim() != m {
        return Err(Error::DimensionMismatch {
            left: m,
            right: l2.dim(),
        });
    }
    let u = l1.basis();
    let w = l2.basis();
    let a = Mat::from_fn(m, u.len() + w.len(), |i, j| {
        if j < u.len() {
            u[j].vec[i].clone()
        } else {
            -&w[j - u.len()].vec[i]
        }
    });
    let mut family = Vec::new();
    for k in a.kernel() {
        let mut x = GenVector::zero(m);
        for (j, c) in k.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j < u.len() {
                x = x.plus(&u[j].scale(c));
            } else {
                let t = &w[j - u.len()];
                let covec: Vec<Qi> = t.covec.iter().map(|e| e * c).collect();
                x = x.plus(&GenVector::from_covector(covec));
            }
        }
        family.push(x);
    }
    canonical_form(m, &family)
}

/// Standard maximal isotropics used as building blocks.
pub mod standard {
    use super::{canonical_form, MaxIsotropic};
    use crate::genvec::GenVector;
    use crate::linalg::Mat;
    use crate::scalar::Qi;
    use crate::spin::exp_b_vector;

    /// `V* ⊂ V ⊕ V*`.
    #[must_use]
    pub fn cotangent(m: usize) -> MaxIsotropic {
        let b: Vec<GenVector<Qi>> = (0..m).map(|k| GenVector::basis(m, m + k)).collect();
        canonical_form(m, &b).expect("cotangent is maximal isotropic")
    }

    /// `V ⊂ V ⊕ V*`.
    #[must_use]
    pub fn tangent(m: usize) -> MaxIsotropic {
        let b: Vec<GenVector<Qi>> = (0..m).map(|k| GenVector::basis(m, k)).collect();
        canonical_form(m, &b).expect("tangent is maximal isotropic")
    }

    /// Graph of a two-form given by components.
    #[must_use]
    pub fn graph_of_two_form(b: &Mat<Qi>) -> MaxIsotropic {
        let m = b.rows();
        let basis: Vec<GenVector<Qi>> = (0..m)
            .map(|k| exp_b_vector(b, &GenVector::basis(m, k)))
            .collect();
        canonical_form(m, &basis).expect("graph of a two-form is maximal isotropic")
    }

    /// `Δ ⊕ Ann Δ` for `Δ` spanned by the given vectors.
    #[must_use]
    pub fn distribution(m: usize, delta: &[Vec<Qi>]) -> MaxIsotropic {
        let d = Mat::from_fn(delta.len(), m, |i, j| delta[i][j].clone());
        let ann = d.kernel();
        let basis: Vec<GenVector<Qi>> = crate::linalg::span_basis(delta)
            .into_iter()
            .map(GenVector::from_vector)
            .chain(ann.into_iter().map(GenVector::from_covector))
            .collect();
        canonical_form(m, &basis).expect("distribution plus annihilator is maximal isotropic")
    }
}
