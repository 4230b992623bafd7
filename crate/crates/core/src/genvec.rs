//! Elements of `V ⊕ V*`, their pairing, and the Clifford action on forms.

use crate::form::{MixedForm, Variance};
use crate::linalg::Mat;
use crate::scalar::{Coeff, Qi};

/// A generalized vector `X + ξ`.
#[derive(Clone, PartialEq, Debug)]
pub struct GenVector<C> {
    pub vec: Vec<C>,
    pub covec: Vec<C>,
}

impl<C: Coeff> GenVector<C> {
    #[must_use]
    pub fn new(vec: Vec<C>, covec: Vec<C>) -> Self {
        assert_eq!(
            vec.len(),
            covec.len(),
            "vector and covector parts differ in length"
        );
        Self { vec, covec }
    }

    #[must_use]
    pub fn zero(dim: usize) -> Self {
        Self {
            vec: vec![C::zero(); dim],
            covec: vec![C::zero(); dim],
        }
    }

    /// The `k`-th element of the standard basis `e_1..e_m, e^1..e^m`.
    #[must_use]
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zero(dim);
        if k < dim {
            v.vec[k] = C::one();
        } else {
            v.covec[k - dim] = C::one();
        }
        v
    }

    #[must_use]
    pub fn from_vector(vec: Vec<C>) -> Self {
        let n = vec.len();
        Self {
            vec,
            covec: vec![C::zero(); n],
        }
    }

    #[must_use]
    pub fn from_covector(covec: Vec<C>) -> Self {
        let n = covec.len();
        Self {
            vec: vec![C::zero(); n],
            covec,
        }
    }

    /// Stacked column `(X; ξ)` of length `2m`.
    #[must_use]
    pub fn from_column(col: &[C]) -> Self {
        let m = col.len() / 2;
        Self {
            vec: col[..m].to_vec(),
            covec: col[m..].to_vec(),
        }
    }

    #[must_use]
    pub fn to_column(&self) -> Vec<C> {
        self.vec.iter().chain(&self.covec).cloned().collect()
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.vec.len()
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.vec.iter().chain(&self.covec).all(C::is_zero)
    }

    /// `½(ξ(Y) + η(X))`.
    #[must_use]
    pub fn inner(&self, o: &Self) -> C {
        let mut s = C::zero();
        for i in 0..self.dim() {
            s = s.plus(&self.covec[i].times(&o.vec[i]));
            s = s.plus(&o.covec[i].times(&self.vec[i]));
        }
        s.scale(&Qi::frac(1, 2))
    }

    #[must_use]
    pub fn plus(&self, o: &Self) -> Self {
        Self {
            vec: self
                .vec
                .iter()
                .zip(&o.vec)
                .map(|(a, b)| a.plus(b))
                .collect(),
            covec: self
                .covec
                .iter()
                .zip(&o.covec)
                .map(|(a, b)| a.plus(b))
                .collect(),
        }
    }

    #[must_use]
    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }

    #[must_use]
    pub fn negate(&self) -> Self {
        self.map(C::negate)
    }

    #[must_use]
    pub fn times(&self, c: &C) -> Self {
        self.map(|x| x.times(c))
    }

    #[must_use]
    pub fn scale(&self, c: &Qi) -> Self {
        self.map(|x| x.scale(c))
    }

    #[must_use]
    pub fn conj(&self) -> Self {
        self.map(C::conj)
    }

    /// `X - ξ`.
    #[must_use]
    pub fn transposed(&self) -> Self {
        Self {
            vec: self.vec.clone(),
            covec: self.covec.iter().map(C::negate).collect(),
        }
    }

    #[must_use]
    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> GenVector<D> {
        GenVector {
            vec: self.vec.iter().map(&f).collect(),
            covec: self.covec.iter().map(&f).collect(),
        }
    }

    /// Image under a `2m × 2m` endomorphism acting on columns.
    #[must_use]
    pub fn apply(&self, m: &Mat<C>) -> Self {
        Self::from_column(&m.apply(&self.to_column()))
    }

    /// Clifford action `(X + ξ)·φ = i_X φ + ξ ∧ φ`.
    ///
    /// # Panics
    /// Panics if `phi` is not a form of matching dimension.
    #[must_use]
    pub fn act(&self, phi: &MixedForm<C>) -> MixedForm<C> {
        assert_eq!(
            phi.variance(),
            Variance::Form,
            "Clifford action on a multivector"
        );
        assert_eq!(phi.dim(), self.dim(), "dimension mismatch");
        phi.contract(&self.vec).plus(&phi.wedge_one(&self.covec))
    }
}

impl GenVector<Qi> {
    #[must_use]
    pub fn lift(&self) -> GenVector<crate::poly::Poly> {
        self.map(|c| crate::poly::Poly::constant(c.clone()))
    }

    #[must_use]
    pub fn is_real(&self) -> bool {
        self.vec.iter().chain(&self.covec).all(Qi::is_real)
    }
}

impl GenVector<crate::poly::Poly> {
    #[must_use]
    pub fn eval(&self, point: &[Qi]) -> GenVector<Qi> {
        self.map(|p| p.eval(point))
    }
}

/// Matrix of the pairing on `V ⊕ V*`: `½[[0, 1], [1, 0]]`.
#[must_use]
pub fn pairing_matrix<C: Coeff>(m: usize) -> Mat<C> {
    let half = C::from_qi(Qi::frac(1, 2));
    Mat::from_fn(2 * m, 2 * m, |i, j| {
        if i + m == j || j + m == i {
            half.clone()
        } else {
            C::zero()
        }
    })
}
