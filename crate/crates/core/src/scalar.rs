//! Exact scalars: rationals, Gaussian rationals, and the ring interface
//! shared with polynomial coefficients.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number.
pub type Q = BigRational;

/// Builds a rational from a numerator and a nonzero denominator.
#[must_use]
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Exact square root of a rational, when one exists.
#[must_use]
pub fn q_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer();
    let d = x.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Q::new(rn, rd))
}

/// Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Qi {
    pub re: Q,
    pub im: Q,
}

impl Qi {
    #[must_use]
    pub fn new(re: Q, im: Q) -> Self {
        Self { re, im }
    }

    #[must_use]
    pub fn real(re: Q) -> Self {
        Self { re, im: Q::zero() }
    }

    #[must_use]
    pub fn int(n: i64) -> Self {
        Self::real(Q::from_integer(BigInt::from(n)))
    }

    #[must_use]
    pub fn frac(num: i64, den: i64) -> Self {
        Self::real(q(num, den))
    }

    /// The imaginary unit.
    #[must_use]
    pub fn i() -> Self {
        Self {
            re: Q::zero(),
            im: Q::one(),
        }
    }

    #[must_use]
    pub fn zero() -> Self {
        Self::default()
    }

    #[must_use]
    pub fn one() -> Self {
        Self::int(1)
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    #[must_use]
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    #[must_use]
    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// Squared modulus `re² + im²`.
    #[must_use]
    pub fn norm_sqr(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    #[must_use]
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    /// Exact square root in the Gaussian rationals, when one exists.
    #[must_use]
    pub fn sqrt(&self) -> Option<Self> {
        if self.im.is_zero() {
            if let Some(r) = q_sqrt(&self.re) {
                return Some(Self::real(r));
            }
            return q_sqrt(&-&self.re).map(|r| Self {
                re: Q::zero(),
                im: r,
            });
        }
        let modulus = q_sqrt(&self.norm_sqr())?;
        let two = q(2, 1);
        let a = q_sqrt(&((&modulus + &self.re) / &two))?;
        if a.is_zero() {
            return None;
        }
        let b = &self.im / (&two * &a);
        Some(Self { re: a, im: b })
    }

    #[must_use]
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for Qi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_q(&self.re)),
            (true, false) => write!(f, "{}i", fmt_q(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{}{}{}i", fmt_q(&self.re), sign, fmt_q(&self.im.abs()))
            }
        }
    }
}

impl From<i64> for Qi {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl From<Q> for Qi {
    fn from(r: Q) -> Self {
        Self::real(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Qi> for &Qi {
            type Output = Qi;
            fn $m(self, o: &Qi) -> Qi {
                let f: fn(&Qi, &Qi) -> Qi = $body;
                f(self, o)
            }
        }
        impl $tr<Qi> for Qi {
            type Output = Qi;
            fn $m(self, o: Qi) -> Qi {
                (&self).$m(&o)
            }
        }
        impl $tr<&Qi> for Qi {
            type Output = Qi;
            fn $m(self, o: &Qi) -> Qi {
                (&self).$m(o)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| Qi {
    re: &a.re + &b.re,
    im: &a.im + &b.im
});
forward_binop!(Sub, sub, |a, b| Qi {
    re: &a.re - &b.re,
    im: &a.im - &b.im
});
/// Product of reduced fractions by cross-cancellation; the result is already reduced.
fn qmul(a: &Q, b: &Q) -> Q {
    if a.is_zero() || b.is_zero() {
        return Q::zero();
    }
    let g1 = a.numer().gcd(b.denom());
    let g2 = a.denom().gcd(b.numer());
    Q::new_raw(
        (a.numer() / &g1) * (b.numer() / &g2),
        (a.denom() / &g2) * (b.denom() / &g1),
    )
}

forward_binop!(Mul, mul, |a, b| match (a.im.is_zero(), b.im.is_zero()) {
    (true, true) => Qi::real(qmul(&a.re, &b.re)),
    (true, false) => Qi {
        re: qmul(&a.re, &b.re),
        im: qmul(&a.re, &b.im)
    },
    (false, true) => Qi {
        re: qmul(&a.re, &b.re),
        im: qmul(&a.im, &b.re)
    },
    (false, false) => Qi {
        re: qmul(&a.re, &b.re) - qmul(&a.im, &b.im),
        im: qmul(&a.re, &b.im) + qmul(&a.im, &b.re),
    },
});
forward_binop!(Div, div, |a, b| a * &b.inv().expect("division by zero"));

impl Neg for Qi {
    type Output = Qi;
    fn neg(self) -> Qi {
        Qi {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &Qi {
    type Output = Qi;
    fn neg(self) -> Qi {
        Qi {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

/// Commutative ring of coefficients used by forms, sections and matrices.
///
/// Implemented by [`Qi`] and by polynomials over [`Qi`].
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn from_qi(c: Qi) -> Self;
    fn conj(&self) -> Self;
    /// Multiplication by a constant.
    fn scale(&self, c: &Qi) -> Self;
}

impl Coeff for Qi {
    fn zero() -> Self {
        Qi::zero()
    }
    fn one() -> Self {
        Qi::one()
    }
    fn is_zero(&self) -> bool {
        Qi::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_qi(c: Qi) -> Self {
        c
    }
    fn conj(&self) -> Self {
        Qi::conj(self)
    }
    fn scale(&self, c: &Qi) -> Self {
        self * c
    }
}
