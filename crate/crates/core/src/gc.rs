//! Linear generalized complex structures: validation, eigenbundles,
//! canonical spinors, the spinor grading and the pointwise Darboux splitting.

use crate::error::{Error, Result};
use crate::form::{MixedForm, Variance, MAX_DIM};
use crate::genvec::{pairing_matrix, GenVector};
use crate::isotropic::{canonical_form, MaxIsotropic};
use crate::linalg::{rank_of, Mat};
use crate::scalar::{Coeff, Qi};
use crate::spin::{spin_act, SoElement};

/// A validated real orthogonal complex structure on `V ⊕ V*`.
#[derive(Clone, Debug, PartialEq)]
pub struct GcStructure {
    m: usize,
    j: Mat<Qi>,
}

/// Checks squareness, `J² = -1` and `JᵀGJ = G` for the pairing matrix `G`.
pub fn structural_defect<C: Coeff>(j: &Mat<C>) -> Result<usize> {
    if !j.is_square() || !j.rows().is_multiple_of(2) {
        return Err(Error::Invalid(format!(
            "{}x{} is not an even square matrix",
            j.rows(),
            j.cols()
        )));
    }
    let m = j.rows() / 2;
    if m > MAX_DIM {
        return Err(Error::CapacityExceeded {
            dim: m,
            max: MAX_DIM,
        });
    }
    let sq = j.times(j).plus(&Mat::identity(2 * m));
    if let Some((r, c)) = first_nonzero(&sq) {
        return Err(Error::NotGeneralizedComplex(format!(
            "J^2 + 1 has entry {} at ({}, {})",
            sq[(r, c)],
            r + 1,
            c + 1
        )));
    }
    let g = pairing_matrix::<C>(m);
    let orth = j.transpose().times(&g).times(j).minus(&g);
    if let Some((r, c)) = first_nonzero(&orth) {
        return Err(Error::NotGeneralizedComplex(format!(
            "J is not orthogonal: defect {} at ({}, {})",
            orth[(r, c)],
            r + 1,
            c + 1
        )));
    }
    Ok(m)
}

fn first_nonzero<C: Coeff>(a: &Mat<C>) -> Option<(usize, usize)> {
    (0..a.rows())
        .flat_map(|r| (0..a.cols()).map(move |c| (r, c)))
        .find(|&(r, c)| !a[(r, c)].is_zero())
}

/// Validates a constant structure.
pub fn validate(j: Mat<Qi>) -> Result<GcStructure> {
    let m = structural_defect(&j)?;
    if !j.is_real() {
        return Err(Error::NotGeneralizedComplex(
            "J has non-real entries".into(),
        ));
    }
    Ok(GcStructure { m, j })
}

/// `J_ω = [[0, -ω♭⁻¹], [ω♭, 0]]` for a nondegenerate two-form.
pub fn j_symplectic(omega: &Mat<Qi>) -> Result<Mat<Qi>> {
    if !omega.is_antisymmetric() {
        return Err(Error::NotAntisymmetric("symplectic form".into()));
    }
    let map = omega.transpose();
    let inv = map
        .inverse()
        .ok_or_else(|| Error::Singular("symplectic form is degenerate".into()))?;
    let m = omega.rows();
    Ok(Mat::from_blocks(
        &Mat::zeros(m, m),
        &inv.negate(),
        &map,
        &Mat::zeros(m, m),
    ))
}

/// `J_J = [[-J, 0], [0, J*]]` for a complex structure `J` on `V`.
#[must_use]
pub fn j_complex<C: Coeff>(jm: &Mat<C>) -> Mat<C> {
    let m = jm.rows();
    Mat::from_blocks(
        &jm.negate(),
        &Mat::zeros(m, m),
        &Mat::zeros(m, m),
        &jm.transpose(),
    )
}

/// Complex structure on `R^{2n}` with holomorphic coordinates
/// `z_j = x_{2j-1} + i x_{2j}`.
#[must_use]
pub fn standard_complex(n: usize) -> Mat<Qi> {
    let mut j = Mat::zeros(2 * n, 2 * n);
    for a in 0..n {
        j[(2 * a + 1, 2 * a)] = Qi::one();
        j[(2 * a, 2 * a + 1)] = Qi::int(-1);
    }
    j
}

/// Standard symplectic form `Σ dx_{2j-1} ∧ dx_{2j}` on `R^{2n}`.
#[must_use]
pub fn standard_symplectic(n: usize) -> Mat<Qi> {
    let mut w = Mat::zeros(2 * n, 2 * n);
    for a in 0..n {
        w[(2 * a, 2 * a + 1)] = Qi::one();
        w[(2 * a + 1, 2 * a)] = Qi::int(-1);
    }
    w
}

/// Direct sum of structures on `V1 ⊕ V2`, ordered `(X1, X2, ξ1, ξ2)`.
#[must_use]
pub fn direct_sum<C: Coeff>(j1: &Mat<C>, j2: &Mat<C>) -> Mat<C> {
    let (m1, m2) = (j1.rows() / 2, j2.rows() / 2);
    let m = m1 + m2;
    let place = |i: usize, first: bool| -> usize {
        match (first, i < if first { m1 } else { m2 }) {
            (true, true) => i,
            (true, false) => m + (i - m1),
            (false, true) => m1 + i,
            (false, false) => m + m1 + (i - m2),
        }
    };
    let mut out = Mat::zeros(2 * m, 2 * m);
    for r in 0..2 * m1 {
        for c in 0..2 * m1 {
            out[(place(r, true), place(c, true))] = j1[(r, c)].clone();
        }
    }
    for r in 0..2 * m2 {
        for c in 0..2 * m2 {
            out[(place(r, false), place(c, false))] = j2[(r, c)].clone();
        }
    }
    out
}

/// Standard structure of type `k` on `R^{2n}`: complex on the first `2k`
/// coordinates, symplectic on the rest.
#[must_use]
pub fn standard_of_type(n: usize, k: usize) -> Mat<Qi> {
    if k == n {
        return j_complex(&standard_complex(n));
    }
    let sym = j_symplectic(&standard_symplectic(n - k)).expect("nondegenerate");
    if k == 0 {
        return sym;
    }
    direct_sum(&j_complex(&standard_complex(k)), &sym)
}

/// Canonical spinor `φ = e^A ∧ Ω` of a structure or pure spinor.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalSpinor {
    pub k: usize,
    pub spinor: MixedForm<Qi>,
    /// Lowest-degree part `Ω = θ_1 ∧ … ∧ θ_k`.
    pub omega: MixedForm<Qi>,
    /// Basis of the covectors `θ` dividing `Ω`.
    pub theta: Vec<Vec<Qi>>,
    /// Components of the complex two-form `A = B + iω`.
    pub a: Mat<Qi>,
}

impl CanonicalSpinor {
    /// Real part `B` of `A`.
    #[must_use]
    pub fn b(&self) -> Mat<Qi> {
        self.a.map(|c| Qi::real(c.re.clone()))
    }

    /// Imaginary part `ω` of `A`.
    #[must_use]
    pub fn omega_form(&self) -> Mat<Qi> {
        self.a.map(|c| Qi::real(c.im.clone()))
    }
}

/// Splits a pure spinor as `c·e^A ∧ Ω` with `A` supported on coordinate
/// directions complementary to the pivots of `Ω`'s divisors.
pub fn extract_canonical(phi: &MixedForm<Qi>) -> Result<CanonicalSpinor> {
    let m = phi.dim();
    let k = phi
        .lowest_degree()
        .ok_or_else(|| Error::Invalid("zero spinor".into()))?;
    let omega = phi.component(k);
    let theta = divisors(&omega);
    if theta.len() != k {
        return Err(Error::NotPure {
            expected: k,
            found: theta.len(),
        });
    }
    let (_, pivots) = Mat::from_rows(if theta.is_empty() {
        vec![vec![Qi::zero(); m]]
    } else {
        theta.clone()
    })
    .rref();
    let pivots = if theta.is_empty() { Vec::new() } else { pivots };
    let comp: Vec<usize> = (0..m).filter(|j| !pivots.contains(j)).collect();
    let pairs: Vec<(usize, usize)> = comp
        .iter()
        .enumerate()
        .flat_map(|(a, &i)| comp[a + 1..].iter().map(move |&j| (i, j)))
        .collect();
    let target = phi.component(k + 2);
    let images: Vec<MixedForm<Qi>> = pairs
        .iter()
        .map(|&(i, j)| MixedForm::monomial(m, Qi::one(), &[i, j]).wedge_unchecked(&omega))
        .collect();
    let mut index = std::collections::BTreeMap::new();
    for f in images.iter().chain(std::iter::once(&target)) {
        for (mask, _) in f.terms() {
            let n = index.len();
            index.entry(mask).or_insert(n);
        }
    }
    let cols: Vec<Vec<Qi>> = images.iter().map(|f| f.coordinates(&index)).collect();
    let lhs = Mat::from_fn(index.len(), pairs.len(), |r, c| cols[c][r].clone());
    let coeffs = if pairs.is_empty() {
        Vec::new()
    } else {
        lhs.solve(&target.coordinates(&index))
            .ok_or(Error::NotPure {
                expected: m,
                found: 0,
            })?
    };
    let mut a = Mat::zeros(m, m);
    for (&(i, j), c) in pairs.iter().zip(&coeffs) {
        a[(i, j)] = c.clone();
        a[(j, i)] = -c;
    }
    let rebuilt = MixedForm::from_antisymmetric(Variance::Form, &a)
        .exp_wedge()?
        .wedge_unchecked(&omega);
    if rebuilt != *phi {
        return Err(Error::NotPure {
            expected: m,
            found: 0,
        });
    }
    Ok(CanonicalSpinor {
        k,
        spinor: phi.clone(),
        omega,
        theta,
        a,
    })
}

/// Basis of `{ξ : ξ ∧ Ω = 0}`.
#[must_use]
pub fn divisors(omega: &MixedForm<Qi>) -> Vec<Vec<Qi>> {
    let m = omega.dim();
    let images: Vec<MixedForm<Qi>> = (0..m)
        .map(|i| MixedForm::<Qi>::basis(m, 1 << i).wedge_unchecked(omega))
        .collect();
    let mut index = std::collections::BTreeMap::new();
    for f in &images {
        for (mask, _) in f.terms() {
            let n = index.len();
            index.entry(mask).or_insert(n);
        }
    }
    if index.is_empty() {
        return (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| if i == j { Qi::one() } else { Qi::zero() })
                    .collect()
            })
            .collect();
    }
    let cols: Vec<Vec<Qi>> = images.iter().map(|f| f.coordinates(&index)).collect();
    Mat::from_fn(index.len(), m, |r, c| cols[c][r].clone()).kernel()
}

/// Pointwise Darboux splitting.
#[derive(Clone, Debug, PartialEq)]
pub struct Darboux {
    pub k: usize,
    /// Real two-form `B̃` with `e^{B̃ + iω₀} ∧ Ω` spanning the canonical line.
    pub b_tilde: Mat<Qi>,
    /// Real two-form `ω₀ = Im A²⁰⁰`, nondegenerate on `Δ`.
    pub omega0: Mat<Qi>,
    pub omega: MixedForm<Qi>,
    /// Real basis of `Δ = ker(Ω ∧ Ω̄)`.
    pub delta: Vec<Vec<Qi>>,
    /// Real basis of the chosen complement `N`.
    pub normal: Vec<Vec<Qi>>,
}

impl Darboux {
    /// `e^{B̃ + iω₀} ∧ Ω`.
    #[must_use]
    pub fn spinor(&self) -> MixedForm<Qi> {
        let a = self.b_tilde.plus(&self.omega0.scale(&Qi::i()));
        MixedForm::from_antisymmetric(Variance::Form, &a)
            .exp_wedge()
            .expect("two-form")
            .wedge_unchecked(&self.omega)
    }
}

impl GcStructure {
    #[must_use]
    pub fn dim(&self) -> usize {
        self.m
    }

    #[must_use]
    pub fn matrix(&self) -> &Mat<Qi> {
        &self.j
    }

    #[must_use]
    pub fn so_element(&self) -> SoElement<Qi> {
        SoElement::from_matrix(&self.j).expect("orthogonal complex structures lie in so")
    }

    /// The `+i` eigenbundle `L`.
    #[must_use]
    pub fn eigenbundle(&self) -> MaxIsotropic {
        let shifted = self.j.minus(&Mat::identity(2 * self.m).scale(&Qi::i()));
        let basis: Vec<GenVector<Qi>> = shifted
            .kernel()
            .iter()
            .map(|v| GenVector::from_column(v))
            .collect();
        canonical_form(self.m, &basis).expect("eigenbundle of a valid structure")
    }

    /// Type `dim_C(L ∩ V*_C)`.
    #[must_use]
    pub fn type_k(&self) -> usize {
        self.eigenbundle().type_k()
    }

    pub fn canonical_spinor(&self) -> Result<CanonicalSpinor> {
        extract_canonical(&self.eigenbundle().pure_spinor().generator)
    }

    /// Upper-right block as bivector components `P^{ij}`.
    #[must_use]
    pub fn poisson(&self) -> Mat<Qi> {
        self.so_element().beta
    }

    /// Projection of `φ` to the `ik` eigenspace `U^k` of the spin action.
    pub fn grading_project(&self, phi: &MixedForm<Qi>, k: i64) -> Result<MixedForm<Qi>> {
        if phi.dim() != self.m {
            return Err(Error::DimensionMismatch {
                left: self.m,
                right: phi.dim(),
            });
        }
        let n = (self.m / 2) as i64;
        if k.abs() > n {
            return Err(Error::Invalid(format!(
                "grading index {k} outside [-{n}, {n}]"
            )));
        }
        let x = self.so_element();
        let mut out = phi.clone();
        for j in -n..=n {
            if j == k {
                continue;
            }
            let shift = &Qi::int(j) * &Qi::i();
            let denom = (&Qi::int(k - j) * &Qi::i())
                .inv()
                .expect("distinct eigenvalues");
            out = spin_act(&x, &out).minus(&out.scale(&shift)).scale(&denom);
        }
        Ok(out)
    }

    /// Pointwise Darboux splitting into a symplectic part on `Δ` and a
    /// complex part on `N`.
    pub fn darboux_point(&self) -> Result<Darboux> {
        let m = self.m;
        let cs = self.canonical_spinor()?;
        let k = cs.k;
        let real_rows: Vec<Vec<Qi>> = cs
            .theta
            .iter()
            .flat_map(|t| {
                [
                    t.iter().map(|c| Qi::real(c.re.clone())).collect(),
                    t.iter().map(|c| Qi::real(c.im.clone())).collect(),
                ]
            })
            .collect();
        let constraint = Mat::from_fn(real_rows.len(), m, |r, c| real_rows[r][c].clone());
        let delta = crate::linalg::span_basis(&constraint.kernel());
        if delta.len() + 2 * k != m {
            return Err(Error::NotGeneralizedComplex(format!(
                "Ω ∧ Ω̄ degenerate: dim Δ = {}",
                delta.len()
            )));
        }
        let pivots: Vec<usize> = if delta.is_empty() {
            Vec::new()
        } else {
            Mat::from_rows(delta.clone()).rref().1
        };
        let normal: Vec<Vec<Qi>> = (0..m)
            .filter(|j| !pivots.contains(j))
            .map(|j| {
                (0..m)
                    .map(|i| if i == j { Qi::one() } else { Qi::zero() })
                    .collect()
            })
            .collect();
        let mut coframe: Vec<Vec<Qi>> = pivots
            .iter()
            .map(|&p| {
                (0..m)
                    .map(|i| if i == p { Qi::one() } else { Qi::zero() })
                    .collect()
            })
            .collect();
        coframe.extend(cs.theta.iter().cloned());
        coframe.extend(cs.theta.iter().map(|t| t.iter().map(Qi::conj).collect()));
        let c = Mat::from_rows(coframe);
        let w = c
            .inverse()
            .ok_or_else(|| Error::NotGeneralizedComplex("Ω ∧ Ω̄ vanishes on N".into()))?;
        let at = w.transpose().times(&cs.a).times(&w);
        let nd = m - 2 * k;
        let class = |i: usize| -> u8 {
            if i < nd {
                0
            } else if i < nd + k {
                1
            } else {
                2
            }
        };
        let piece = |keep: &dyn Fn(u8, u8) -> bool| -> Mat<Qi> {
            let p = Mat::from_fn(m, m, |i, j| {
                if keep(class(i), class(j)) {
                    at[(i, j)].clone()
                } else {
                    Qi::zero()
                }
            });
            c.transpose().times(&p).times(&c)
        };
        let a200 = piece(&|x, y| x == 0 && y == 0);
        let a101 = piece(&|x, y| (x == 0 && y == 2) || (x == 2 && y == 0));
        let a002 = piece(&|x, y| x == 2 && y == 2);
        let half = Qi::frac(1, 2);
        let b_tilde = a200
            .plus(&a200.conj())
            .scale(&half)
            .plus(&a101)
            .plus(&a101.conj())
            .plus(&a002)
            .plus(&a002.conj());
        let inv_2i = (&Qi::int(2) * &Qi::i()).inv().expect("nonzero");
        let omega0 = a200.minus(&a200.conj()).scale(&inv_2i);
        let out = Darboux {
            k,
            b_tilde,
            omega0,
            omega: cs.omega.clone(),
            delta,
            normal,
        };
        if out.spinor().proportional(&cs.spinor).is_none() {
            return Err(Error::NotGeneralizedComplex(
                "Darboux spinor does not match the canonical line".into(),
            ));
        }
        Ok(out)
    }
}

/// Deformation of `J` by `ε ∈ Λ²L*`, acting through
/// `A_ε = [[1, ε̄], [ε, 1]]` on `L ⊕ L̄`.
///
/// `eps[a][b] = ε(l_a, l_b)` on the row-reduced eigenbundle basis, and `L*`
/// is identified with `L̄` through twice the pairing.
pub fn deform_graph(s: &GcStructure, eps: &Mat<Qi>) -> Result<GcStructure> {
    let m = s.dim();
    if eps.rows() != m || !eps.is_antisymmetric() {
        return Err(Error::NotAntisymmetric(format!(
            "deformation must be an antisymmetric {m}x{m} matrix"
        )));
    }
    let l = s.eigenbundle();
    let lb: Vec<GenVector<Qi>> = l.basis().iter().map(GenVector::conj).collect();
    let gram = Mat::from_fn(m, m, |i, k| l.basis()[i].inner(&lb[k]).scale(&Qi::int(2)));
    let gi = gram
        .inverse()
        .ok_or_else(|| Error::Singular("L and its conjugate are not transverse".into()))?;
    let dual: Vec<GenVector<Qi>> = (0..m)
        .map(|j| {
            (0..m).fold(GenVector::zero(m), |acc, k| {
                acc.plus(&lb[k].scale(&gi[(k, j)]))
            })
        })
        .collect();
    let graph: Vec<GenVector<Qi>> = (0..m)
        .map(|a| {
            (0..m).fold(l.basis()[a].clone(), |acc, b| {
                acc.plus(&dual[b].scale(&eps[(a, b)]))
            })
        })
        .collect();
    let cols: Vec<Vec<Qi>> = graph
        .iter()
        .map(GenVector::to_column)
        .chain(graph.iter().map(|v| v.conj().to_column()))
        .collect();
    if rank_of(&cols) != 2 * m {
        return Err(Error::Singular("A_ε is not invertible".into()));
    }
    let p = Mat::from_fn(2 * m, 2 * m, |r, c| cols[c][r].clone());
    let d = Mat::from_fn(2 * m, 2 * m, |r, c| match (r == c, r < m) {
        (true, true) => Qi::i(),
        (true, false) => -Qi::i(),
        _ => Qi::zero(),
    });
    let j = p.times(&d).times(&p.inverse().expect("full rank"));
    validate(j)
}
