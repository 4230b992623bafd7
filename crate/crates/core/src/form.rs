//! Mixed-degree exterior algebra elements on a bitmask basis.
//!
//! Bit `i` of a basis mask stands for `e^i` (forms) or `e_i` (multivectors),
//! and a mask denotes the wedge of its set bits in increasing order.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Coeff, Qi};

/// Largest supported real dimension.
pub const MAX_DIM: usize = 12;

/// Basis mask of a wedge monomial.
pub type Mask = u16;

/// Whether an element lives in `Λ•V*` or `Λ•V`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Variance {
    Form,
    Multivector,
}

/// Sign of `e^a ∧ e^b` relative to `e^{a|b}`, or `None` if they overlap.
#[must_use]
pub fn wedge_sign(a: Mask, b: Mask) -> Option<i8> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (u32::from(a) >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(if swaps.is_multiple_of(2) { 1 } else { -1 })
}

/// Sign of removing index `i` from the front of `mask`, or `None` if absent.
#[must_use]
pub fn contract_sign(i: usize, mask: Mask) -> Option<i8> {
    if mask & (1 << i) == 0 {
        return None;
    }
    let below = (mask & ((1 << i) - 1)).count_ones();
    Some(if below.is_multiple_of(2) { 1 } else { -1 })
}

/// Degree of a basis mask.
#[must_use]
pub fn degree(mask: Mask) -> usize {
    mask.count_ones() as usize
}

/// Mask from a list of distinct zero-based indices together with the
/// sign of sorting them, or `None` on a repeated index.
#[must_use]
pub fn mask_of(indices: &[usize]) -> Option<(Mask, i8)> {
    let mut mask: Mask = 0;
    let mut sign = 1i8;
    for &i in indices {
        let bit = 1 << i;
        if mask & bit != 0 {
            return None;
        }
        let above = (mask >> (i + 1)).count_ones();
        if above % 2 == 1 {
            sign = -sign;
        }
        mask |= bit;
    }
    Some((mask, sign))
}

/// Sparse element of `Λ•V*` or `Λ•V` with coefficients in `C`.
#[derive(Clone, PartialEq, Debug)]
pub struct MixedForm<C> {
    dim: usize,
    variance: Variance,
    terms: BTreeMap<Mask, C>,
}

fn signed<C: Coeff>(c: &C, s: i8) -> C {
    if s < 0 {
        c.negate()
    } else {
        c.clone()
    }
}

impl<C: Coeff> MixedForm<C> {
    /// The zero element; fails beyond [`MAX_DIM`].
    pub fn new(dim: usize, variance: Variance) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::CapacityExceeded { dim, max: MAX_DIM });
        }
        Ok(Self {
            dim,
            variance,
            terms: BTreeMap::new(),
        })
    }

    /// The zero form.
    ///
    /// # Panics
    /// Panics beyond [`MAX_DIM`]; use [`MixedForm::new`] for checked input.
    #[must_use]
    pub fn zero(dim: usize) -> Self {
        Self::new(dim, Variance::Form).expect("dimension within capacity")
    }

    #[must_use]
    pub fn zero_multivector(dim: usize) -> Self {
        Self::new(dim, Variance::Multivector).expect("dimension within capacity")
    }

    #[must_use]
    pub fn scalar(dim: usize, c: C) -> Self {
        let mut f = Self::zero(dim);
        f.add_term(0, c);
        f
    }

    #[must_use]
    pub fn basis(dim: usize, mask: Mask) -> Self {
        let mut f = Self::zero(dim);
        f.add_term(mask, C::one());
        f
    }

    /// The form `c·e^{i1}∧…∧e^{ik}` for zero-based indices in any order.
    #[must_use]
    pub fn monomial(dim: usize, c: C, indices: &[usize]) -> Self {
        let mut f = Self::zero(dim);
        if let Some((mask, s)) = mask_of(indices) {
            f.add_term(mask, signed(&c, s));
        }
        f
    }

    /// The degree-one element with the given components.
    #[must_use]
    pub fn degree_one(dim: usize, variance: Variance, comps: &[C]) -> Self {
        let mut f = Self::new(dim, variance).expect("dimension within capacity");
        for (i, c) in comps.iter().enumerate() {
            f.add_term(1 << i, c.clone());
        }
        f
    }

    /// The two-form or bivector `Σ_{i<j} m_ij e^i∧e^j` of an antisymmetric matrix.
    #[must_use]
    pub fn from_antisymmetric(variance: Variance, m: &crate::linalg::Mat<C>) -> Self {
        let dim = m.rows();
        let mut f = Self::new(dim, variance).expect("dimension within capacity");
        for i in 0..dim {
            for j in i + 1..dim {
                f.add_term((1 << i) | (1 << j), m[(i, j)].clone());
            }
        }
        f
    }

    /// Component matrix `m_ij` of the degree-two part.
    #[must_use]
    pub fn to_antisymmetric(&self) -> crate::linalg::Mat<C> {
        let mut m = crate::linalg::Mat::zeros(self.dim, self.dim);
        for (mask, c) in &self.terms {
            if degree(*mask) == 2 {
                let i = mask.trailing_zeros() as usize;
                let j = (15 - mask.leading_zeros()) as usize;
                m[(i, j)] = c.clone();
                m[(j, i)] = c.negate();
            }
        }
        m
    }

    pub fn with_variance(mut self, variance: Variance) -> Self {
        self.variance = variance;
        self
    }

    pub fn add_term(&mut self, mask: Mask, c: C) {
        if c.is_zero() {
            return;
        }
        debug_assert!(
            usize::from(mask) < (1usize << self.dim),
            "mask outside dimension"
        );
        match self.terms.entry(mask) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().plus(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[must_use]
    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mask, &C)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    #[must_use]
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    #[must_use]
    pub fn get(&self, mask: Mask) -> C {
        self.terms.get(&mask).cloned().unwrap_or_else(C::zero)
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the top-degree basis element.
    #[must_use]
    pub fn top(&self) -> C {
        self.get(((1u32 << self.dim) - 1) as Mask)
    }

    #[must_use]
    pub fn component(&self, k: usize) -> Self {
        self.filter(|m| degree(m) == k)
    }

    #[must_use]
    pub fn even(&self) -> Self {
        self.filter(|m| degree(m).is_multiple_of(2))
    }

    #[must_use]
    pub fn odd(&self) -> Self {
        self.filter(|m| degree(m) % 2 == 1)
    }

    fn filter(&self, keep: impl Fn(Mask) -> bool) -> Self {
        Self {
            dim: self.dim,
            variance: self.variance,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(**m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    #[must_use]
    pub fn lowest_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| degree(*m)).min()
    }

    #[must_use]
    pub fn highest_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| degree(*m)).max()
    }

    /// Whether all terms have the same parity.
    #[must_use]
    pub fn parity(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| degree(*m) % 2);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.dim != o.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: o.dim,
            });
        }
        if self.variance != o.variance {
            return Err(Error::VarianceMismatch);
        }
        Ok(())
    }

    /// Sum.
    ///
    /// # Panics
    /// Panics on mismatched dimension or variance.
    #[must_use]
    pub fn plus(&self, o: &Self) -> Self {
        self.check(o).expect("compatible operands");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
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
    pub fn scale(&self, c: &Qi) -> Self {
        self.map(|x| x.scale(c))
    }

    #[must_use]
    pub fn times(&self, c: &C) -> Self {
        self.map(|x| x.times(c))
    }

    #[must_use]
    pub fn conj(&self) -> Self {
        self.map(C::conj)
    }

    #[must_use]
    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MixedForm<D> {
        let mut out = MixedForm {
            dim: self.dim,
            variance: self.variance,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    /// Exterior product; rejects mixed variance.
    pub fn wedge(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.wedge_unchecked(o))
    }

    pub(crate) fn wedge_unchecked(&self, o: &Self) -> Self {
        let mut out = Self {
            dim: self.dim,
            variance: self.variance,
            terms: BTreeMap::new(),
        };
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                if let Some(s) = wedge_sign(*a, *b) {
                    out.add_term(a | b, signed(&ca.times(cb), s));
                }
            }
        }
        out
    }

    /// Left wedge by the degree-one element with components `v`.
    #[must_use]
    pub fn wedge_one(&self, v: &[C]) -> Self {
        let mut out = Self {
            dim: self.dim,
            variance: self.variance,
            terms: BTreeMap::new(),
        };
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (m, c) in &self.terms {
                if m & (1 << i) != 0 {
                    continue;
                }
                let s = contract_sign(i, m | (1 << i)).expect("bit set");
                out.add_term(m | (1 << i), signed(&vi.times(c), s));
            }
        }
        out
    }

    /// Contraction by the dual degree-one element with components `v`:
    /// `i_X` on forms, `i_ξ` on multivectors.
    #[must_use]
    pub fn contract(&self, v: &[C]) -> Self {
        let mut out = Self {
            dim: self.dim,
            variance: self.variance,
            terms: BTreeMap::new(),
        };
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (m, c) in &self.terms {
                if let Some(s) = contract_sign(i, *m) {
                    out.add_term(m & !(1 << i), signed(&vi.times(c), s));
                }
            }
        }
        out
    }

    /// Contraction by a basis element `e_i` (or `e^i`).
    #[must_use]
    pub fn contract_basis(&self, i: usize) -> Self {
        let mut out = Self {
            dim: self.dim,
            variance: self.variance,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            if let Some(s) = contract_sign(i, *m) {
                out.add_term(m & !(1 << i), signed(c, s));
            }
        }
        out
    }

    /// Contraction `i_β = Σ_{i<j} β^{ij} i_{e_j} i_{e_i}` by a bivector
    /// (or by a two-form when `self` is a multivector).
    pub fn contract_bivector(&self, beta: &Self) -> Result<Self> {
        if self.dim != beta.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: beta.dim,
            });
        }
        if self.variance == beta.variance {
            return Err(Error::VarianceMismatch);
        }
        let mut out = Self {
            dim: self.dim,
            variance: self.variance,
            terms: BTreeMap::new(),
        };
        for (bm, bc) in &beta.terms {
            if degree(*bm) != 2 {
                continue;
            }
            let i = bm.trailing_zeros() as usize;
            let j = (15 - bm.leading_zeros()) as usize;
            let t = self.contract_basis(i).contract_basis(j);
            for (m, c) in &t.terms {
                out.add_term(*m, c.times(bc));
            }
        }
        Ok(out)
    }

    /// Transpose: the degree-`k` part is multiplied by `(-1)^{k(k-1)/2}`.
    #[must_use]
    pub fn reversed(&self) -> Self {
        let mut out = self.clone();
        for (m, c) in &mut out.terms {
            let k = degree(*m);
            if (k * k.saturating_sub(1) / 2) % 2 == 1 {
                *c = c.negate();
            }
        }
        out
    }

    /// Wedge exponential `Σ A^k / k!` of an even element.
    pub fn exp_wedge(&self) -> Result<Self> {
        if self.parity() == Some(1) {
            return Err(Error::Invalid("exponential of an odd element".into()));
        }
        let mut out = Self::scalar(self.dim, C::one()).with_variance(self.variance);
        let mut power = out.clone();
        let nilpotent = self.get(0).is_zero();
        if !nilpotent {
            return Err(Error::Invalid(
                "exponential of an element with a scalar part".into(),
            ));
        }
        for k in 1..=self.dim {
            power = power.wedge_unchecked(self).scale(&Qi::frac(1, k as i64));
            if power.is_zero() {
                break;
            }
            out = out.plus(&power);
        }
        Ok(out)
    }

    /// Coefficient vector over the masks listed in `index`.
    #[must_use]
    pub fn coordinates(&self, index: &BTreeMap<Mask, usize>) -> Vec<C> {
        let mut v = vec![C::zero(); index.len()];
        for (m, c) in &self.terms {
            if let Some(&k) = index.get(m) {
                v[k] = c.clone();
            }
        }
        v
    }

    /// Renders the element with one-based basis labels.
    #[must_use]
    pub fn render(&self, coeff: impl Fn(&C) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let label = match self.variance {
            Variance::Form => "e^",
            Variance::Multivector => "e_",
        };
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if *m == 0 {
                    format!("({})", coeff(c))
                } else {
                    let idx: Vec<String> = (0..self.dim)
                        .filter(|i| m & (1 << i) != 0)
                        .map(|i| (i + 1).to_string())
                        .collect();
                    format!("({}){label}{}", coeff(c), idx.join(","))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl<C: Coeff> fmt::Display for MixedForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(ToString::to_string))
    }
}

impl MixedForm<Qi> {
    /// Whether `self = c·o` for some nonzero constant `c`.
    #[must_use]
    pub fn proportional(&self, o: &Self) -> Option<Qi> {
        if self.dim != o.dim || self.is_zero() || o.is_zero() {
            return None;
        }
        let (m, c) = o.terms.iter().next()?;
        let ratio = &self.get(*m) / c;
        if ratio.is_zero() {
            return None;
        }
        (o.scale(&ratio) == *self).then_some(ratio)
    }

    #[must_use]
    pub fn lift(&self) -> MixedForm<crate::poly::Poly> {
        self.map(|c| crate::poly::Poly::constant(c.clone()))
    }
}

impl MixedForm<crate::poly::Poly> {
    #[must_use]
    pub fn eval(&self, point: &[Qi]) -> MixedForm<Qi> {
        self.map(|p| p.eval(point))
    }

    /// Largest coefficient degree.
    #[must_use]
    pub fn coeff_degree(&self) -> u32 {
        self.terms
            .values()
            .map(crate::poly::Poly::degree)
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(dim: usize, idx: &[usize]) -> MixedForm<Qi> {
        MixedForm::monomial(dim, Qi::one(), idx)
    }

    #[test]
    fn anticommuting_generators() {
        let a = e(3, &[0]);
        let b = e(3, &[2]);
        assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().negate());
        assert_eq!(e(3, &[2, 0, 1]), e(3, &[0, 1, 2]));
        assert_eq!(e(3, &[1, 0, 2]), e(3, &[0, 1, 2]).negate());
    }

    #[test]
    fn contraction_is_antiderivation() {
        let x = [Qi::int(2), Qi::int(-1), Qi::frac(1, 2), Qi::int(3)];
        let a = e(4, &[0, 1]).plus(&e(4, &[2]).scale(&Qi::int(5)));
        let b = e(4, &[1, 3]).plus(&e(4, &[0]));
        let lhs = a.wedge(&b).unwrap().contract(&x);
        let sign_a = a
            .even()
            .contract(&x)
            .wedge(&b)
            .unwrap()
            .plus(&a.even().wedge(&b.contract(&x)).unwrap());
        let sign_b = a
            .odd()
            .contract(&x)
            .wedge(&b)
            .unwrap()
            .minus(&a.odd().wedge(&b.contract(&x)).unwrap());
        assert_eq!(lhs, sign_a.plus(&sign_b));
    }

    #[test]
    fn variance_mismatch_rejected() {
        let f = e(2, &[0]);
        let v = MixedForm::<Qi>::basis(2, 1).with_variance(Variance::Multivector);
        assert_eq!(f.wedge(&v), Err(Error::VarianceMismatch));
        assert!(MixedForm::<Qi>::new(13, Variance::Form).is_err());
    }

    #[test]
    fn bivector_contraction() {
        let beta = MixedForm::<Qi>::basis(2, 0b11).with_variance(Variance::Multivector);
        let r = e(2, &[0, 1]).contract_bivector(&beta).unwrap();
        assert_eq!(r, MixedForm::scalar(2, Qi::one()));
    }
}
