//! Seeded generators of small exact test data.

use rand::Rng;

use crate::form::MixedForm;
use crate::genvec::GenVector;
use crate::isotropic::{canonical_form, MaxIsotropic};
use crate::linalg::Mat;
use crate::poly::{Monomial, Poly};
use crate::scalar::Qi;
use crate::spin::{exp_b_vector, exp_beta_vector, gl_matrix};

/// Rational with numerator in `[-3, 3]` and denominator in `[1, 3]`.
pub fn rational<R: Rng>(rng: &mut R) -> Qi {
    Qi::frac(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

/// Small Gaussian rational; purely real unless `complex`.
pub fn scalar<R: Rng>(rng: &mut R, complex: bool) -> Qi {
    let re = rational(rng);
    if complex {
        &re + &(&rational(rng) * &Qi::i())
    } else {
        re
    }
}

/// Random antisymmetric matrix.
pub fn antisymmetric<R: Rng>(rng: &mut R, m: usize, complex: bool) -> Mat<Qi> {
    let mut a = Mat::zeros(m, m);
    for i in 0..m {
        for j in i + 1..m {
            let c = scalar(rng, complex);
            a[(j, i)] = -&c;
            a[(i, j)] = c;
        }
    }
    a
}

/// Random integer matrix of determinant one.
pub fn unimodular<R: Rng>(rng: &mut R, m: usize) -> Mat<Qi> {
    let mut g = Mat::identity(m);
    for _ in 0..2 * m {
        let i = rng.gen_range(0..m);
        let j = rng.gen_range(0..m);
        if i == j {
            continue;
        }
        let c = Qi::int(rng.gen_range(-2..=2));
        let mut e: Mat<Qi> = Mat::identity(m);
        e[(i, j)] = c;
        g = g.times(&e);
    }
    g
}

/// Random invertible real matrix whose determinant is a rational square.
pub fn gl_square_det<R: Rng>(rng: &mut R, m: usize) -> Mat<Qi> {
    let mut d: Mat<Qi> = Mat::identity(m);
    for i in 0..m {
        d[(i, i)] = Qi::int(if rng.gen_bool(0.5) { 1 } else { -1 });
    }
    let k = rng.gen_range(0..m);
    let s = Qi::frac(rng.gen_range(1..=3), rng.gen_range(1..=2));
    d[(k, k)] = &d[(k, k)] * &(&s * &s);
    if d.det().re < num_traits::Zero::zero() {
        d[(0, 0)] = -&d[(0, 0)];
    }
    unimodular(rng, m).times(&d).times(&unimodular(rng, m))
}

/// Random form with about `terms` terms.
pub fn form<R: Rng>(rng: &mut R, m: usize, terms: usize, complex: bool) -> MixedForm<Qi> {
    let mut f = MixedForm::zero(m);
    for _ in 0..terms {
        let mask = rng.gen_range(0..(1u32 << m)) as u16;
        f.add_term(mask, scalar(rng, complex));
    }
    f
}

/// Random generalized vector.
pub fn gen_vector<R: Rng>(rng: &mut R, m: usize, complex: bool) -> GenVector<Qi> {
    GenVector::new(
        (0..m).map(|_| scalar(rng, complex)).collect(),
        (0..m).map(|_| scalar(rng, complex)).collect(),
    )
}

/// Random maximal isotropic of type `k`: a coordinate `Δ ⊕ Ann Δ` moved by
/// random B-field and GL transformations.
pub fn isotropic_of_type<R: Rng>(rng: &mut R, m: usize, k: usize, complex: bool) -> MaxIsotropic {
    let mut basis: Vec<GenVector<Qi>> = (0..m)
        .map(|i| {
            if i < m - k {
                GenVector::basis(m, i)
            } else {
                GenVector::basis(m, m + i)
            }
        })
        .collect();
    let b = antisymmetric(rng, m, complex);
    let g = gl_matrix(&unimodular(rng, m)).expect("invertible");
    basis = basis
        .iter()
        .map(|v| exp_b_vector(&b, v).apply(&g))
        .collect();
    canonical_form(m, &basis).expect("transform of a maximal isotropic")
}

/// Random maximal isotropic, possibly also moved by a β-field.
pub fn isotropic<R: Rng>(rng: &mut R, m: usize, complex: bool) -> MaxIsotropic {
    let k = rng.gen_range(0..=m);
    let l = isotropic_of_type(rng, m, k, complex);
    if rng.gen_bool(0.5) {
        let beta = antisymmetric(rng, m, complex);
        let basis: Vec<GenVector<Qi>> = l
            .basis()
            .iter()
            .map(|v| exp_beta_vector(&beta, v))
            .collect();
        canonical_form(m, &basis).expect("beta transform")
    } else {
        l
    }
}

/// Random polynomial in `nvars` variables of degree at most `deg`.
pub fn poly<R: Rng>(rng: &mut R, nvars: usize, deg: u32, terms: usize, complex: bool) -> Poly {
    let monos = Monomial::all_up_to(nvars, deg);
    let mut p = Poly::zero();
    for _ in 0..terms {
        let m = monos[rng.gen_range(0..monos.len())].clone();
        p.add_term(m, scalar(rng, complex));
    }
    p
}

/// Random polynomial section of `T ⊕ T*` over `R^m`.
pub fn poly_section<R: Rng>(rng: &mut R, m: usize, deg: u32, complex: bool) -> GenVector<Poly> {
    let mut v = GenVector::zero(m);
    for i in 0..m {
        v.vec[i] = poly(rng, m, deg, 2, complex);
        v.covec[i] = poly(rng, m, deg, 2, complex);
    }
    v
}

/// Random polynomial form with components of degree at most `deg`.
pub fn poly_form<R: Rng>(
    rng: &mut R,
    m: usize,
    deg: u32,
    terms: usize,
    complex: bool,
) -> MixedForm<Poly> {
    let mut f = MixedForm::zero(m);
    for _ in 0..terms {
        let mask = rng.gen_range(0..(1u32 << m)) as u16;
        f.add_term(mask, poly(rng, m, deg, 2, complex));
    }
    f
}

/// Random polynomial form of a fixed degree.
pub fn poly_form_of_degree<R: Rng>(
    rng: &mut R,
    m: usize,
    k: usize,
    deg: u32,
    complex: bool,
) -> MixedForm<Poly> {
    let mut f = MixedForm::zero(m);
    for mask in 0..(1u32 << m) {
        if mask.count_ones() as usize == k {
            f.add_term(mask as u16, poly(rng, m, deg, 2, complex));
        }
    }
    f
}
