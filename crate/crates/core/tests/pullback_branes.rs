//! Submanifolds: generalized tangent bundles, pullback of Dirac structures
//! and brane compatibility, against pointwise matrix oracles.

use gcgeom::branes::{
    brane_check, generalized_tangent, pullback_dirac, pullback_form, BraneKind, SubmanifoldData,
};
use gcgeom::fields::calculus::{d, ClosedThreeForm, Section};
use gcgeom::fields::frames::{graph_of_bivector, graph_of_two_form, is_involutive, DiracFrame};
use gcgeom::fields::structure::{deform_by_bivector, GcField};
use gcgeom::fields::{default_samples, Chart};
use gcgeom::isotropic::{canonical_form, standard, MaxIsotropic};
use gcgeom::{random, Coeff, Error, GenVector, Mat, MixedForm, Poly, Qi, Variance};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(x: i64) -> Qi {
    Qi::int(x)
}

fn c(x: i64) -> Poly {
    Poly::constant(q(x))
}

fn two_form(m: usize, entries: &[(usize, usize, i64)]) -> Mat<Poly> {
    let mut f: Mat<Poly> = Mat::zeros(m, m);
    for &(i, j, v) in entries {
        f[(i, j)] = c(v);
        f[(j, i)] = c(-v);
    }
    f
}

fn unit(m: usize, i: usize) -> Vec<Qi> {
    (0..m)
        .map(|k| if k == i { Qi::one() } else { Qi::zero() })
        .collect()
}

fn zero_h(m: usize) -> ClosedThreeForm {
    ClosedThreeForm::zero(m)
}

/// `J_ω` for `ω = dx1∧dp1 + dx2∧dp2` on `(x1, x2, p1, p2)`.
fn darboux_r4() -> (Mat<Poly>, GcField) {
    let omega = two_form(4, &[(0, 2, 1), (1, 3, 1)]);
    let field = GcField::symplectic(&omega).unwrap();
    (omega, field)
}

fn complex_r4() -> GcField {
    GcField::complex(&Chart::complex_space(2)).unwrap()
}

/// Tangent vectors of `S` at parameter `u`, computed from the
/// parametrization by finite symbolic differentiation.
fn tangent_at(s: &SubmanifoldData, u: &[Qi]) -> Vec<Vec<Qi>> {
    (0..s.dim())
        .map(|a| {
            s.parametrization()
                .iter()
                .map(|p| p.partial(a).eval(u))
                .collect()
        })
        .collect()
}

/// `τ_p` built directly as the kernel of `(c, η) ↦ η(T_b) - Σ_a c_a F_ab`.
fn oracle_tau(s: &SubmanifoldData, u: &[Qi]) -> Vec<GenVector<Qi>> {
    let m = s.ambient_dim();
    let dd = s.dim();
    let t = tangent_at(s, u);
    let f = s.f().eval(u);
    let cons = Mat::from_fn(dd, dd + m, |b, k| {
        if k < dd {
            -f[(k, b)].clone()
        } else {
            t[b][k - dd].clone()
        }
    });
    cons.kernel()
        .into_iter()
        .map(|x| {
            let vec = (0..m)
                .map(|i| (0..dd).fold(Qi::zero(), |acc, a| acc + &x[a] * &t[a][i]))
                .collect();
            GenVector::new(vec, x[dd..].to_vec())
        })
        .collect()
}

fn oracle_compatible(field: &GcField, s: &SubmanifoldData, u: &[Qi]) -> bool {
    let j = field.matrix().eval(&s.point(u));
    let tau = oracle_tau(s, u);
    let mut all: Vec<Vec<Qi>> = tau.iter().map(GenVector::to_column).collect();
    all.extend(tau.iter().map(|v| v.apply(&j).to_column()));
    gcgeom::linalg::rank_of(&all) == s.ambient_dim()
}

/// `(L ∩ K^⊥ + K)/K` at a point by dense elimination on a basis of `L_p`.
fn oracle_pullback(l: &[GenVector<Qi>], s: &SubmanifoldData, u: &[Qi]) -> MaxIsotropic {
    let m = s.ambient_dim();
    let dd = s.dim();
    let t = tangent_at(s, u);
    let nu: Vec<Vec<Qi>> = s
        .conormal()
        .iter()
        .map(|n| n.iter().map(|p| p.eval(u)).collect())
        .collect();
    let cons = Mat::from_fn(nu.len(), l.len(), |j, i| {
        (0..m).fold(Qi::zero(), |acc, k| acc + &nu[j][k] * &l[i].vec[k])
    });
    let kernel = if nu.is_empty() {
        Mat::<Qi>::identity(l.len()).to_rows()
    } else {
        cons.kernel()
    };
    let tmat = Mat::from_fn(m, dd, |i, a| t[a][i].clone());
    let out: Vec<GenVector<Qi>> = kernel
        .iter()
        .map(|x| {
            let w = l
                .iter()
                .zip(x)
                .fold(GenVector::zero(m), |acc, (e, xi)| acc.plus(&e.scale(xi)));
            let a = tmat.solve(&w.vec).expect("vector part tangent to S");
            let eta = (0..dd)
                .map(|b| (0..m).fold(Qi::zero(), |acc, k| acc + &w.covec[k] * &t[b][k]))
                .collect();
            GenVector::new(a, eta)
        })
        .collect();
    canonical_form(dd, &out).unwrap()
}

fn random_plane(r: &mut ChaCha8Rng, m: usize, dd: usize) -> Vec<Vec<Qi>> {
    loop {
        let rows: Vec<Vec<Qi>> = (0..dd)
            .map(|_| (0..m).map(|_| q(r.gen_range(-2..=2))).collect())
            .collect();
        if gcgeom::linalg::rank_of(&rows) == dd {
            return rows;
        }
    }
}

#[test]
fn generalized_tangent_is_maximal_isotropic() {
    let mut r = ChaCha8Rng::seed_from_u64(11);
    let g = [
        Poly::var(0).times(&Poly::var(1)),
        Poly::var(0).pow(2).minus(&c(1)),
    ];
    let f = two_form(2, &[(0, 1, 3)]);
    let s = SubmanifoldData::graph(4, &g, f, zero_h(4)).unwrap();
    let tau = generalized_tangent(&s).sections;
    assert_eq!(tau.len(), 4);
    for a in &tau {
        for b in &tau {
            assert!(s.restrict(&Poly::zero()).is_zero());
            assert!(a.inner(b).is_zero());
        }
    }
    for u in default_samples(2) {
        let at: Vec<GenVector<Qi>> = tau.iter().map(|e| e.eval(&u)).collect();
        let ours = canonical_form(4, &at).unwrap();
        let oracle = canonical_form(4, &oracle_tau(&s, &u)).unwrap();
        assert!(ours.same_subspace(&oracle));
    }
    let dirs = random_plane(&mut r, 5, 3);
    let s = SubmanifoldData::affine(
        &[q(1), q(0), q(-1), q(2), q(0)],
        &dirs,
        two_form(3, &[(0, 2, 1)]),
        zero_h(5),
    )
    .unwrap();
    let tau = generalized_tangent(&s).sections;
    let at: Vec<GenVector<Qi>> = tau.iter().map(|e| e.eval(&vec![q(0); 3])).collect();
    assert!(canonical_form(5, &at)
        .unwrap()
        .same_subspace(&canonical_form(5, &oracle_tau(&s, &vec![q(0); 3])).unwrap()));
}

#[test]
fn submanifold_validation() {
    let f = two_form(2, &[(0, 1, 1)]);
    let h = ClosedThreeForm::new(MixedForm::monomial(3, c(1), &[0, 1, 2])).unwrap();
    assert!(SubmanifoldData::whole(3, Mat::zeros(3, 3), h.clone()).is_err());
    let s = SubmanifoldData::affine(
        &vec![q(0); 3],
        &[unit(3, 0), unit(3, 1)],
        f.clone(),
        h.clone(),
    )
    .unwrap();
    assert!(s.pulled_back_twist().form().is_zero());
    let mut bad = f.clone();
    bad[(1, 0)] = c(1);
    assert!(matches!(
        SubmanifoldData::affine(&vec![q(0); 3], &[unit(3, 0), unit(3, 1)], bad, h.clone()),
        Err(Error::NotAntisymmetric(_))
    ));
    let mut fx = Mat::zeros(3, 3);
    fx[(0, 1)] = Poly::var(2);
    fx[(1, 0)] = Poly::var(2).negate();
    let whole = SubmanifoldData::whole(3, fx.clone(), h.clone()).unwrap();
    assert_eq!(whole.dim(), 3);
    assert!(SubmanifoldData::whole(3, fx, zero_h(3)).is_err());
    assert!(
        SubmanifoldData::affine(&vec![q(0); 3], &[unit(3, 0), unit(3, 0)], f, zero_h(3)).is_err()
    );
}

#[test]
fn pullback_form_matches_jacobian_formula() {
    let mut r = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let b = random::poly_form_of_degree(&mut r, 4, 2, 1, false);
        let g = [
            random::poly(&mut r, 2, 2, 3, false),
            random::poly(&mut r, 2, 2, 3, false),
        ];
        let s = SubmanifoldData::graph(4, &g, Mat::zeros(2, 2), zero_h(4)).unwrap();
        let pulled = pullback_form(&b, s.parametrization(), 2).to_antisymmetric();
        let bm = b.to_antisymmetric();
        for u in default_samples(2) {
            let t = tangent_at(&s, &u);
            let at = bm.eval(&s.point(&u));
            let expect = t[0].iter().enumerate().fold(Qi::zero(), |acc, (i, ti)| {
                t[1].iter()
                    .enumerate()
                    .fold(acc, |acc, (k, tk)| acc + &(ti * &at[(i, k)]) * tk)
            });
            assert_eq!(pulled[(0, 1)].eval(&u), expect);
        }
        assert_eq!(
            d(&pullback_form(&b, s.parametrization(), 2)),
            pullback_form(&d(&b), s.parametrization(), 2)
        );
    }
}

#[test]
fn pullback_of_graph_is_graph_of_pullback() {
    let mut r = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..6 {
        let b = random::poly_form_of_degree(&mut r, 4, 2, 1, false).to_antisymmetric();
        let g = [
            random::poly(&mut r, 2, 2, 2, false),
            random::poly(&mut r, 2, 1, 2, false),
        ];
        let s = SubmanifoldData::graph(4, &g, Mat::zeros(2, 2), zero_h(4)).unwrap();
        let l = DiracFrame::new(4, graph_of_two_form(&b)).unwrap();
        let samples = default_samples(2);
        let pulled = pullback_dirac(&l, &s, &samples).unwrap();
        let ib = pullback_form(
            &MixedForm::from_antisymmetric(Variance::Form, &b),
            s.parametrization(),
            2,
        )
        .to_antisymmetric();
        for u in &samples {
            let expect = standard::graph_of_two_form(&ib.eval(u));
            assert!(pulled.at(u).unwrap().same_subspace(&expect));
        }
    }
}

#[test]
fn pullback_of_standard_structures() {
    let dirs = [unit(4, 0), vec![q(0), q(1), q(1), q(0)]];
    let s = SubmanifoldData::affine(
        &[q(0), q(1), q(0), q(0)],
        &dirs,
        Mat::zeros(2, 2),
        zero_h(4),
    )
    .unwrap();
    let samples = default_samples(2);
    let cot = DiracFrame::new(4, (4..8).map(|k| Section::basis(4, k)).collect()).unwrap();
    let tan = DiracFrame::new(4, (0..4).map(|k| Section::basis(4, k)).collect()).unwrap();
    let pc = pullback_dirac(&cot, &s, &samples).unwrap();
    let pt = pullback_dirac(&tan, &s, &samples).unwrap();
    for u in &samples {
        assert!(pc.at(u).unwrap().same_subspace(&standard::cotangent(2)));
        assert!(pt.at(u).unwrap().same_subspace(&standard::tangent(2)));
    }
}

#[test]
fn pullback_of_involutive_structure_is_involutive() {
    let mut r = ChaCha8Rng::seed_from_u64(3);
    let b = random::poly_form_of_degree(&mut r, 4, 2, 1, false).plus(&MixedForm::monomial(
        4,
        Poly::var(3),
        &[0, 1],
    ));
    let h = ClosedThreeForm::new(d(&b)).unwrap();
    assert!(!h.form().is_zero());
    let bm = b.to_antisymmetric();
    let graphs: Vec<DiracFrame> = [bm.clone(), bm.negate()]
        .iter()
        .map(|x| DiracFrame::new(4, graph_of_two_form(x)).unwrap())
        .collect();
    let involutive: Vec<&DiracFrame> = graphs.iter().filter(|l| is_involutive(l, &h)).collect();
    assert_eq!(involutive.len(), 1);
    let g = [Poly::var(0).times(&Poly::var(2)).minus(&Poly::var(1))];
    let s = SubmanifoldData::graph(4, &g, Mat::zeros(3, 3), zero_h(4)).unwrap();
    let twisted = {
        let mut f: Mat<Poly> = Mat::zeros(3, 3);
        let ib = pullback_form(&b, s.parametrization(), 3).to_antisymmetric();
        for i in 0..3 {
            for j in 0..3 {
                f[(i, j)] = ib[(i, j)].clone();
            }
        }
        SubmanifoldData::graph(4, &g, f, h.clone()).unwrap()
    };
    let pulled = pullback_dirac(involutive[0], &twisted, &default_samples(3)).unwrap();
    assert!(!twisted.pulled_back_twist().form().is_zero());
    assert!(is_involutive(&pulled, &twisted.pulled_back_twist()));
    assert!(!is_involutive(&pulled, &ClosedThreeForm::zero(3)));
}

#[test]
fn pullback_detects_rank_jump() {
    let mut beta: Mat<Poly> = Mat::zeros(2, 2);
    beta[(0, 1)] = Poly::var(0);
    beta[(1, 0)] = Poly::var(0).negate();
    let l = DiracFrame::new(2, graph_of_bivector(&beta)).unwrap();
    let s =
        SubmanifoldData::affine(&[q(0), q(0)], &[unit(2, 0)], Mat::zeros(1, 1), zero_h(2)).unwrap();
    let err = pullback_dirac(&l, &s, &[vec![q(1)], vec![q(0)]]).unwrap_err();
    assert!(matches!(err, Error::RankJump { .. }), "{err:?}");
    let ok = pullback_dirac(&l, &s, &[vec![q(1)], vec![q(2)]]).unwrap();
    assert!(ok.at(&[q(1)]).unwrap().same_subspace(&standard::tangent(1)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pullback_matches_oracle(seed in any::<u64>(), dd in 1usize..4) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let m = 4;
        let l = random::isotropic(&mut r, m, false);
        let frame = DiracFrame::new(m, l.basis().iter().map(GenVector::lift).collect()).unwrap();
        let dirs = random_plane(&mut r, m, dd);
        let origin: Vec<Qi> = (0..m).map(|_| q(r.gen_range(-3..=3))).collect();
        let s = SubmanifoldData::affine(&origin, &dirs, Mat::zeros(dd, dd), zero_h(m)).unwrap();
        let u = vec![Qi::zero(); dd];
        let pulled = pullback_dirac(&frame, &s, std::slice::from_ref(&u)).unwrap();
        prop_assert!(pulled.at(&u).unwrap().same_subspace(&oracle_pullback(l.basis(), &s, &u)));
    }
}

#[test]
fn lagrangian_brane_in_darboux_chart() {
    let (_, field) = darboux_r4();
    let s = SubmanifoldData::affine(
        &vec![q(0); 4],
        &[unit(4, 0), unit(4, 1)],
        Mat::zeros(2, 2),
        zero_h(4),
    )
    .unwrap();
    let samples = default_samples(2);
    let rep = brane_check(&field, &s, &samples).unwrap();
    assert!(rep.compatible && rep.coisotropic);
    assert_eq!(rep.kind, Some(BraneKind::Lagrangian));
    assert!(rep.characteristic_rank.iter().all(|&k| k == 2));
    let j = field.matrix();
    for l in &rep.ell {
        let restricted = l.map(|p| s.restrict(p));
        assert_eq!(
            restricted.apply(&j.map(|p| s.restrict(p))),
            restricted.scale(&Qi::i())
        );
    }
    let bad = SubmanifoldData::affine(
        &vec![q(0); 4],
        &[unit(4, 0), unit(4, 2)],
        Mat::zeros(2, 2),
        zero_h(4),
    )
    .unwrap();
    let rep = brane_check(&field, &bad, &samples).unwrap();
    assert!(!rep.compatible && !rep.defects.is_empty() && rep.kind.is_none());
    assert!(!oracle_compatible(&field, &bad, &samples[0]));
}

#[test]
fn lagrangian_graph_of_exact_form() {
    let (_, field) = darboux_r4();
    let gen = Poly::var(0)
        .pow(3)
        .plus(&Poly::var(0).times(&Poly::var(1)).scale(&q(2)));
    let g = [gen.partial(0), gen.partial(1)];
    let s = SubmanifoldData::graph(4, &g, Mat::zeros(2, 2), zero_h(4)).unwrap();
    let rep = brane_check(&field, &s, &default_samples(2)).unwrap();
    assert_eq!(rep.kind, Some(BraneKind::Lagrangian));
    let g = [Poly::var(1), Poly::zero()];
    let s = SubmanifoldData::graph(4, &g, Mat::zeros(2, 2), zero_h(4)).unwrap();
    assert!(
        !brane_check(&field, &s, &default_samples(2))
            .unwrap()
            .compatible
    );
}

#[test]
fn space_filling_brane_complex_structure() {
    let omega = two_form(4, &[(0, 3, 1), (1, 2, 1)]);
    let field = GcField::symplectic(&omega).unwrap();
    let f0 = two_form(4, &[(0, 2, 1), (1, 3, -1)]);
    let ow = omega.eval(&[]).transpose().inverse().unwrap();
    for (t, expect) in [(1, true), (-1, true), (2, false), (0, false)] {
        let f = f0.scale(&q(t));
        let s = SubmanifoldData::whole(4, f.clone(), zero_h(4)).unwrap();
        let rep = brane_check(&field, &s, &default_samples(4)).unwrap();
        let oracle = ow.times(&f.eval(&[]).transpose()).negate();
        let squares = oracle.times(&oracle) == Mat::identity(4).negate();
        assert_eq!(squares, expect);
        assert_eq!(rep.compatible, expect, "t = {t}");
        assert_eq!(oracle_compatible(&field, &s, &vec![q(0); 4]), expect);
        if let Some(BraneKind::SpaceFilling { complex_structure }) = rep.kind {
            assert_eq!(complex_structure.eval(&[]), oracle);
            assert_eq!(
                complex_structure.times(&complex_structure),
                Mat::identity(4).negate()
            );
        } else {
            assert!(!expect);
        }
    }
}

#[test]
fn no_odd_codimension_branes_in_r4() {
    let (_, field) = darboux_r4();
    let dirs = [unit(4, 0), unit(4, 1), unit(4, 2)];
    let samples = default_samples(3);
    for f in [
        two_form(3, &[(0, 2, 1)]),
        two_form(3, &[(0, 1, 1)]),
        Mat::zeros(3, 3),
    ] {
        let s = SubmanifoldData::affine(&vec![q(0); 4], &dirs, f, zero_h(4)).unwrap();
        let rep = brane_check(&field, &s, &samples).unwrap();
        assert!(rep.coisotropic && !rep.compatible);
        assert!(!oracle_compatible(&field, &s, &samples[1]));
    }
}

#[test]
fn coisotropic_brane_in_r6() {
    let omega = two_form(6, &[(0, 3, 1), (1, 4, 1), (2, 5, 1)]);
    let field = GcField::symplectic(&omega).unwrap();
    let dirs: Vec<Vec<Qi>> = (0..5).map(|i| unit(6, i)).collect();
    let samples = default_samples(5);
    let good = SubmanifoldData::affine(
        &vec![q(0); 6],
        &dirs,
        two_form(5, &[(0, 1, 1), (3, 4, -1)]),
        zero_h(6),
    )
    .unwrap();
    let rep = brane_check(&field, &good, &samples).unwrap();
    assert!(oracle_compatible(&field, &good, &samples[1]));
    assert!(rep.compatible && rep.coisotropic);
    assert_eq!(
        rep.characteristic,
        vec![unit(5, 2)
            .iter()
            .map(|x| Poly::constant(-x.clone()))
            .collect::<Vec<_>>()]
    );
    assert_eq!(
        rep.kind,
        Some(BraneKind::Coisotropic {
            characteristic_rank: 1,
            basic: Some(true)
        })
    );
    let bad = SubmanifoldData::affine(&vec![q(0); 6], &dirs, two_form(5, &[(0, 2, 1)]), zero_h(6))
        .unwrap();
    let rep = brane_check(&field, &bad, &samples).unwrap();
    assert!(!rep.compatible);
    assert!(!oracle_compatible(&field, &bad, &samples[1]));
}

#[test]
fn complex_branes_need_stable_tangents_and_type_one_one() {
    let field = complex_r4();
    let jm = Chart::complex_space(2).complex_structure().unwrap();
    let samples4 = default_samples(4);
    let dx12 = two_form(4, &[(0, 1, 1)]);
    let s = SubmanifoldData::whole(4, dx12, zero_h(4)).unwrap();
    let rep = brane_check(&field, &s, &samples4).unwrap();
    assert!(rep.compatible);
    let re_dz12 = two_form(4, &[(0, 2, 1), (1, 3, -1)]);
    let s = SubmanifoldData::whole(4, re_dz12, zero_h(4)).unwrap();
    assert!(!brane_check(&field, &s, &samples4).unwrap().compatible);

    let mut r = ChaCha8Rng::seed_from_u64(8);
    for trial in 0..8 {
        let g = random::antisymmetric(&mut r, 4, false);
        let twisted = jm.transpose().times(&g).times(&jm);
        let f = if trial % 2 == 0 {
            g.plus(&twisted)
        } else {
            g.minus(&twisted)
        };
        let oracle = jm.transpose().times(&f).times(&jm) == f;
        let s = SubmanifoldData::whole(4, f.lift(), zero_h(4)).unwrap();
        let rep = brane_check(&field, &s, &samples4).unwrap();
        assert_eq!(rep.compatible, oracle);
        assert_eq!(oracle_compatible(&field, &s, &samples4[2]), oracle);

        let v: Vec<Qi> = (0..4).map(|_| q(r.gen_range(-2..=2))).collect();
        if v.iter().all(Qi::is_zero) {
            continue;
        }
        let w: Vec<Qi> = if trial % 2 == 0 {
            jm.apply(&v)
        } else {
            (0..4).map(|_| q(r.gen_range(-2..=2))).collect()
        };
        let jv = jm.apply(&v);
        let jw = jm.apply(&w);
        if gcgeom::linalg::rank_of(&[v.clone(), w.clone()]) < 2 {
            continue;
        }
        let stable = gcgeom::linalg::rank_of(&[v.clone(), w.clone(), jv, jw]) == 2;
        let s = SubmanifoldData::affine(
            &[q(1), q(0), q(0), q(1)],
            &[v, w],
            two_form(2, &[(0, 1, 5)]),
            zero_h(4),
        )
        .unwrap();
        let rep = brane_check(&field, &s, &default_samples(2)).unwrap();
        assert_eq!(rep.compatible, stable);
        if stable {
            assert_eq!(rep.kind, Some(BraneKind::Complex));
        }
    }
}

#[test]
fn deformed_complex_structure_admits_space_filling_brane() {
    let chart = Chart::complex_space(2);
    let mut holo = Mat::zeros(2, 2);
    holo[(0, 1)] = chart.z(0);
    holo[(1, 0)] = chart.z(0).negate();
    let def = deform_by_bivector(&chart, &holo).unwrap();
    let s = SubmanifoldData::whole(4, Mat::zeros(4, 4), zero_h(4)).unwrap();
    let rep = brane_check(&def.field, &s, &default_samples(4)).unwrap();
    assert!(rep.compatible);
    let Some(BraneKind::SpaceFilling { complex_structure }) = rep.kind else {
        panic!("{:?}", rep.kind)
    };
    let jm = chart.complex_structure().unwrap().lift();
    assert_eq!(complex_structure, jm.negate());
    assert!(gcgeom::fields::schouten::is_poisson(&def.field.poisson()).unwrap());
    let upper = def.field.matrix().block(0, 0, 4, 4);
    let lower_left = def.field.matrix().block(4, 0, 4, 4);
    assert!(lower_left.is_zero());
    assert_eq!(upper, jm.negate());
}
