//! Sparse multivariate polynomials over the Gaussian rationals.
//!
//! Variables are indexed from zero and are real chart coordinates, so
//! conjugation acts on coefficients only. Exponent vectors are stored with
//! trailing zeros trimmed, which lets constants mix freely with polynomials
//! in any number of variables.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{Coeff, Qi};

/// Exponent vector with trailing zeros removed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    #[must_use]
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Self(exps)
    }

    #[must_use]
    pub fn one() -> Self {
        Self(Vec::new())
    }

    #[must_use]
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self(e)
    }

    #[must_use]
    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    #[must_use]
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    #[must_use]
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// One more than the largest variable index present.
    #[must_use]
    pub fn span(&self) -> usize {
        self.0.len()
    }

    #[must_use]
    pub fn mul(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self((0..n).map(|i| self.exponent(i) + o.exponent(i)).collect())
    }

    /// All monomials in `nvars` variables of total degree at most `deg`.
    #[must_use]
    pub fn all_up_to(nvars: usize, deg: u32) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == cur.len() {
                out.push(Monomial::new(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, deg, &mut cur, &mut out);
        out.sort();
        out
    }
}

/// Polynomial `Σ c_α x^α` with exact Gaussian rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Qi>,
}

impl Poly {
    #[must_use]
    pub fn zero() -> Self {
        Self::default()
    }

    #[must_use]
    pub fn constant(c: Qi) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    #[must_use]
    pub fn var(i: usize) -> Self {
        Self::monomial(Monomial::var(i), Qi::one())
    }

    #[must_use]
    pub fn monomial(m: Monomial, c: Qi) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    /// Adds `c·m` in place.
    pub fn add_term(&mut self, m: Monomial, c: Qi) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Qi)> {
        self.terms.iter()
    }

    #[must_use]
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    #[must_use]
    pub fn coeff(&self, m: &Monomial) -> Qi {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; zero for the zero polynomial.
    #[must_use]
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// One more than the largest variable index used.
    #[must_use]
    pub fn span(&self) -> usize {
        self.terms.keys().map(Monomial::span).max().unwrap_or(0)
    }

    /// The value if the polynomial is constant.
    #[must_use]
    pub fn as_constant(&self) -> Option<Qi> {
        match self.terms.len() {
            0 => Some(Qi::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    #[must_use]
    pub fn mul_monomial(&self, m: &Monomial, c: &Qi) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(k.mul(m), v * c);
        }
        out
    }

    /// Formal partial derivative in variable `i`.
    #[must_use]
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let mut ex = m.exponents().to_vec();
            ex[i] -= 1;
            out.add_term(Monomial::new(ex), c * &Qi::int(i64::from(e)));
        }
        out
    }

    /// Value at a point; missing coordinates read as zero.
    #[must_use]
    pub fn eval(&self, point: &[Qi]) -> Qi {
        let mut acc = Qi::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let x = point.get(i).cloned().unwrap_or_default();
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitutes `subs[i]` for variable `i`.
    ///
    /// # Panics
    /// Panics if a variable has no substitute.
    #[must_use]
    pub fn compose(&self, subs: &[Poly]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = t.times(&subs[i]);
                }
            }
            out = out.plus(&t);
        }
        out
    }

    /// Real part, coefficientwise.
    #[must_use]
    pub fn re(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), Qi::real(c.re.clone()));
        }
        out
    }

    /// Imaginary part, coefficientwise.
    #[must_use]
    pub fn im(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), Qi::real(c.im.clone()));
        }
        out
    }

    #[must_use]
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(Qi::one());
        for _ in 0..e {
            acc = acc.times(self);
        }
        acc
    }

    /// Renders with the given variable names.
    #[must_use]
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                let name = names
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("x{}", i + 1));
                match e {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            let (neg, coef) = if c.is_real() && c.re < num_traits::Zero::zero() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            let coef_str = if c.is_real() || c.re == num_traits::Zero::zero() {
                coef.to_string()
            } else {
                format!("({coef})")
            };
            let body = if factors.is_empty() {
                coef_str
            } else if coef == Qi::one() {
                factors.join("*")
            } else {
                format!("{coef_str}*{}", factors.join("*"))
            };
            match (idx, neg) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&[]))
    }
}

impl From<Qi> for Poly {
    fn from(c: Qi) -> Self {
        Self::constant(c)
    }
}

impl Coeff for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::constant(Qi::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn minus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
    fn times(&self, o: &Self) -> Self {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
    fn negate(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
    fn from_qi(c: Qi) -> Self {
        Poly::constant(c)
    }
    fn conj(&self) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.conj()))
                .collect(),
        }
    }
    fn scale(&self, c: &Qi) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }
}
