//! Polynomial charts on `R^m` with optional holomorphic pairings.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::form::MAX_DIM;
use crate::poly::Poly;
use crate::scalar::{Coeff, Qi};

/// Holomorphic coordinate `z = x_re + i x_im`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexPair {
    pub name: String,
    pub re: usize,
    pub im: usize,
}

/// Real coordinates `x_0, …, x_{m-1}` plus holomorphic pairings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    names: Vec<String>,
    complex: Vec<ComplexPair>,
}

/// A name resolved against a chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    Real(usize),
    Holomorphic(usize),
    Antiholomorphic(usize),
}

impl Chart {
    pub fn new(names: Vec<String>, complex: Vec<ComplexPair>) -> Result<Self> {
        if names.len() > MAX_DIM {
            return Err(Error::CapacityExceeded {
                dim: names.len(),
                max: MAX_DIM,
            });
        }
        let mut seen = BTreeSet::new();
        for n in names.iter().chain(complex.iter().map(|c| &c.name)) {
            if n.is_empty() || !seen.insert(n.clone()) {
                return Err(Error::Invalid(format!(
                    "duplicate or empty coordinate name {n:?}"
                )));
            }
        }
        let mut used = BTreeSet::new();
        for c in &complex {
            if c.re >= names.len() || c.im >= names.len() || c.re == c.im {
                return Err(Error::Invalid(format!(
                    "pairing {} refers to bad coordinates",
                    c.name
                )));
            }
            if !used.insert(c.re) || !used.insert(c.im) {
                return Err(Error::Invalid(format!(
                    "pairing {} reuses a coordinate",
                    c.name
                )));
            }
        }
        for c in &complex {
            if seen.contains(&format!("{}b", c.name)) {
                return Err(Error::Invalid(format!(
                    "name {}b clashes with a conjugate",
                    c.name
                )));
            }
        }
        Ok(Self { names, complex })
    }

    /// `R^m` with coordinates `x1, …, xm`.
    #[must_use]
    pub fn flat(m: usize) -> Self {
        Self::new((1..=m).map(|i| format!("x{i}")).collect(), Vec::new()).expect("valid chart")
    }

    /// `C^n` with `z_j = x_{2j-1} + i x_{2j}`.
    #[must_use]
    pub fn complex_space(n: usize) -> Self {
        let pairs = (0..n)
            .map(|j| ComplexPair {
                name: format!("z{}", j + 1),
                re: 2 * j,
                im: 2 * j + 1,
            })
            .collect();
        Self::new((1..=2 * n).map(|i| format!("x{i}")).collect(), pairs).expect("valid chart")
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    #[must_use]
    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[must_use]
    pub fn complex_pairs(&self) -> &[ComplexPair] {
        &self.complex
    }

    /// Resolves `x`, `z` or `zb` (conjugate).
    #[must_use]
    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return Some(Symbol::Real(i));
        }
        if let Some(j) = self.complex.iter().position(|c| c.name == name) {
            return Some(Symbol::Holomorphic(j));
        }
        let base = name.strip_suffix('b')?;
        self.complex
            .iter()
            .position(|c| c.name == base)
            .map(Symbol::Antiholomorphic)
    }

    #[must_use]
    pub fn coordinate(&self, s: Symbol) -> Poly {
        match s {
            Symbol::Real(i) => Poly::var(i),
            Symbol::Holomorphic(j) => self.z(j),
            Symbol::Antiholomorphic(j) => self.z(j).conj(),
        }
    }

    /// Covector components of `d` of a coordinate.
    #[must_use]
    pub fn differential(&self, s: Symbol) -> Vec<Poly> {
        let mut v = vec![Poly::zero(); self.dim()];
        match s {
            Symbol::Real(i) => v[i] = Poly::constant(Qi::one()),
            Symbol::Holomorphic(j) | Symbol::Antiholomorphic(j) => {
                let c = &self.complex[j];
                let sign = if matches!(s, Symbol::Holomorphic(_)) {
                    Qi::i()
                } else {
                    -Qi::i()
                };
                v[c.re] = Poly::constant(Qi::one());
                v[c.im] = Poly::constant(sign);
            }
        }
        v
    }

    /// Vector components of the coordinate vector field dual to a symbol:
    /// `∂/∂z = ½(∂_re - i∂_im)` and its conjugate.
    #[must_use]
    pub fn partial(&self, s: Symbol) -> Vec<Poly> {
        let mut v = vec![Poly::zero(); self.dim()];
        match s {
            Symbol::Real(i) => v[i] = Poly::constant(Qi::one()),
            Symbol::Holomorphic(j) | Symbol::Antiholomorphic(j) => {
                let c = &self.complex[j];
                let sign = if matches!(s, Symbol::Holomorphic(_)) {
                    -Qi::i()
                } else {
                    Qi::i()
                };
                v[c.re] = Poly::constant(Qi::frac(1, 2));
                v[c.im] = Poly::constant(sign.scale(&Qi::frac(1, 2)));
            }
        }
        v
    }

    /// `z_j` as a polynomial in the real coordinates.
    #[must_use]
    pub fn z(&self, j: usize) -> Poly {
        let c = &self.complex[j];
        Poly::var(c.re).plus(&Poly::var(c.im).scale(&Qi::i()))
    }

    /// Substitutes `z_j ↦ x_re + i x_im` into a polynomial in the holomorphic
    /// variables `z_0, …, z_{n-1}`.
    #[must_use]
    pub fn holomorphic(&self, f: &Poly) -> Poly {
        let subs: Vec<Poly> = (0..self.complex.len()).map(|j| self.z(j)).collect();
        f.compose(&subs)
    }

    /// Real point from holomorphic coordinates (other coordinates zero).
    #[must_use]
    pub fn point_from_complex(&self, zs: &[Qi]) -> Vec<Qi> {
        let mut p = vec![Qi::zero(); self.dim()];
        for (c, z) in self.complex.iter().zip(zs) {
            p[c.re] = Qi::real(z.re.clone());
            p[c.im] = Qi::real(z.im.clone());
        }
        p
    }

    /// Complex structure on `T` for which the pairings are holomorphic;
    /// unpaired coordinates are rejected.
    pub fn complex_structure(&self) -> Result<crate::linalg::Mat<Qi>> {
        if 2 * self.complex.len() != self.dim() {
            return Err(Error::Invalid("chart has unpaired real coordinates".into()));
        }
        let mut j = crate::linalg::Mat::zeros(self.dim(), self.dim());
        for c in &self.complex {
            j[(c.im, c.re)] = Qi::one();
            j[(c.re, c.im)] = Qi::int(-1);
        }
        Ok(j)
    }
}

/// Deterministic sample points with small integer coordinates.
#[must_use]
pub fn default_samples(m: usize) -> Vec<Vec<Qi>> {
    let mut out = vec![vec![Qi::zero(); m], vec![Qi::one(); m]];
    for k in 0..4i64 {
        out.push(
            (0..m as i64)
                .map(|i| Qi::int((3 * i + 5 * k + 1) % 5 - 2))
                .collect(),
        );
    }
    out
}
