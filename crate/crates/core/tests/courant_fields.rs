//! Differential layer: brackets, Dirac frames, integrability, Schouten,
//! algebroids, deformations and symmetries.

use gcgeom::fields::calculus::{
    apply_vector, bracket_twisted, courant_bracket, d, derived_bracket, gradient, lie_bracket,
    one_form, ClosedThreeForm, PolyForm, Section,
};
use gcgeom::fields::frames::{
    distribution_frame, graph_of_bivector, involutivity_tensor, is_involutive, DiracFrame,
};
use gcgeom::fields::integrability::{
    check_spinor_integrability, modular_vector_field, IntegrabilityVerdict,
};
use gcgeom::fields::schouten::{bivector, is_poisson, schouten, Algebroid};
use gcgeom::fields::structure::{
    circle_frame, deform_by_bivector, hamiltonian_symmetry, holomorphic_volume, nijenhuis_field,
    spinor_type_at, GcField,
};
use gcgeom::fields::{default_samples, maurer_cartan, Chart, DiracPair, Symbol};
use gcgeom::gc::{j_complex, j_symplectic, standard_of_type, validate};
use gcgeom::random;
use gcgeom::spin::exp_b_vector;
use gcgeom::{Coeff, Mat, MixedForm, Poly, Qi, Variance};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn c(x: i64) -> Poly {
    Poly::constant(Qi::int(x))
}

fn x(i: usize) -> Poly {
    Poly::var(i)
}

fn closed_h(r: &mut ChaCha8Rng, m: usize) -> ClosedThreeForm {
    let b = random::poly_form_of_degree(r, m, 2, 2, false);
    ClosedThreeForm::new(d(&b)).unwrap()
}

fn section(r: &mut ChaCha8Rng, m: usize) -> Section {
    random::poly_section(r, m, 2, false)
}

fn two_form(m: usize, entries: &[(usize, usize, Poly)]) -> Mat<Poly> {
    let mut w: Mat<Poly> = Mat::zeros(m, m);
    for (i, j, p) in entries {
        w[(*i, *j)] = w[(*i, *j)].plus(p);
        w[(*j, *i)] = w[(*j, *i)].minus(p);
    }
    w
}

fn exp_i(omega: &Mat<Poly>) -> PolyForm {
    MixedForm::from_antisymmetric(Variance::Form, omega)
        .scale(&Qi::i())
        .exp_wedge()
        .unwrap()
}

// --- brackets -------------------------------------------------------------

#[test]
fn derived_bracket_agrees_with_explicit_formula() {
    let mut r = rng(1);
    let m = 3;
    for _ in 0..10 {
        let h = closed_h(&mut r, m);
        let (e1, e2) = (section(&mut r, m), section(&mut r, m));
        let br = courant_bracket(&e1, &e2, &h);
        for mask in 0..(1u16 << m) {
            let phi = MixedForm::<Poly>::basis(m, mask);
            assert_eq!(derived_bracket(&e1, &e2, h.form(), &phi), br.act(&phi));
        }
    }
}

#[test]
fn courant_axioms_hold() {
    let mut r = rng(2);
    let m = 3;
    for _ in 0..12 {
        let h = closed_h(&mut r, m);
        let (e1, e2, e3) = (section(&mut r, m), section(&mut r, m), section(&mut r, m));
        let f = random::poly(&mut r, m, 2, 3, false);
        let br = |a: &Section, b: &Section| courant_bracket(a, b, &h);
        assert_eq!(
            br(&e1, &br(&e2, &e3)),
            br(&br(&e1, &e2), &e3).plus(&br(&e2, &br(&e1, &e3))),
            "C1"
        );
        assert_eq!(br(&e1, &e2).vec, lie_bracket(&e1.vec, &e2.vec), "C2");
        let lhs = br(&e1, &e2.times(&f));
        let rhs = br(&e1, &e2)
            .times(&f)
            .plus(&e2.times(&apply_vector(&e1.vec, &f)));
        assert_eq!(lhs, rhs, "C3");
        let lhs = apply_vector(&e1.vec, &e2.inner(&e3));
        assert_eq!(
            lhs,
            br(&e1, &e2).inner(&e3).plus(&e2.inner(&br(&e1, &e3))),
            "C4"
        );
        let expected = Section::from_covector(gradient(&e1.inner(&e1), m));
        assert_eq!(br(&e1, &e1), expected, "C5");
    }
}

#[test]
fn jacobi_anomaly_is_triple_contraction_of_dh() {
    let mut r = rng(3);
    let m = 4;
    for _ in 0..5 {
        let h = random::poly_form_of_degree(&mut r, m, 3, 1, false).plus(&MixedForm::monomial(
            m,
            x(3),
            &[0, 1, 2],
        ));
        let dh = d(&h);
        assert!(!dh.is_zero());
        let (e1, e2, e3) = (section(&mut r, m), section(&mut r, m), section(&mut r, m));
        let br = |a: &Section, b: &Section| bracket_twisted(a, b, &h);
        let anomaly = br(&br(&e1, &e2), &e3)
            .minus(&br(&e1, &br(&e2, &e3)))
            .plus(&br(&e2, &br(&e1, &e3)));
        let iii = dh.contract(&e1.vec).contract(&e2.vec).contract(&e3.vec);
        let expected = Section::from_covector((0..m).map(|i| iii.get(1 << i)).collect());
        assert_eq!(anomaly, expected);
    }
}

#[test]
fn b_field_change_of_splitting_shifts_twist() {
    let mut r = rng(4);
    let m = 3;
    for _ in 0..8 {
        let h = closed_h(&mut r, m);
        let b = random::poly_form_of_degree(&mut r, m, 2, 2, false);
        let bm = b.to_antisymmetric();
        let shifted = ClosedThreeForm::new(h.form().plus(&d(&b))).unwrap();
        let (e1, e2) = (section(&mut r, m), section(&mut r, m));
        let neg = bm.negate();
        let lhs = exp_b_vector(
            &bm,
            &courant_bracket(&exp_b_vector(&neg, &e1), &exp_b_vector(&neg, &e2), &h),
        );
        assert_eq!(lhs, courant_bracket(&e1, &e2, &shifted));
    }
}

#[test]
fn closed_b_field_is_a_symmetry() {
    let m = 3;
    let b = two_form(m, &[(0, 1, x(2)), (1, 2, x(0).negate())]);
    let bf = MixedForm::from_antisymmetric(Variance::Form, &b);
    assert!(d(&bf).is_zero());
    let mut r = rng(5);
    let h = closed_h(&mut r, m);
    let (e1, e2) = (section(&mut r, m), section(&mut r, m));
    let lhs = exp_b_vector(
        &b,
        &courant_bracket(
            &exp_b_vector(&b.negate(), &e1),
            &exp_b_vector(&b.negate(), &e2),
            &h,
        ),
    );
    assert_eq!(lhs, courant_bracket(&e1, &e2, &h));
}

// --- involutivity ---------------------------------------------------------

#[test]
fn reference_dirac_frames() {
    let tangent = DiracFrame::new(3, (0..3).map(|i| Section::basis(3, i)).collect()).unwrap();
    assert!(is_involutive(&tangent, &ClosedThreeForm::zero(3)));

    let delta = vec![
        vec![c(1), c(0), c(0), c(0)],
        vec![c(0), c(1), c(0), c(0)],
        vec![c(0), c(0), c(1), c(0)],
    ];
    let frame = DiracFrame::new(4, distribution_frame(4, &delta).unwrap()).unwrap();
    let h = ClosedThreeForm::new(MixedForm::monomial(4, c(5), &[0, 1, 2])).unwrap();
    let t = involutivity_tensor(&frame, &h);
    assert_eq!(t.len(), 1);
    assert_eq!(t[0].indices, (0, 1, 2));
    assert_eq!(t[0].value.as_constant(), Some(Qi::frac(-5, 2)));
    let vanishing = ClosedThreeForm::new(MixedForm::monomial(4, c(5), &[0, 1, 3])).unwrap();
    assert!(is_involutive(&frame, &vanishing));

    let beta = two_form(2, &[(0, 1, x(0))]);
    let graph = DiracFrame::new(2, graph_of_bivector(&beta)).unwrap();
    assert!(is_involutive(&graph, &ClosedThreeForm::zero(2)));
    assert!(is_poisson(&bivector(&beta)).unwrap());
}

#[test]
fn bivector_graph_involutive_iff_poisson() {
    let mut r = rng(6);
    let m = 3;
    let mut seen = [0, 0];
    for k in 0..12 {
        let beta = if k % 2 == 0 {
            let a = random::poly(&mut r, m, 1, 2, false);
            two_form(m, &[(0, 1, a.clone()), (1, 2, a.times(&c(2)))])
        } else {
            random::poly_form_of_degree(&mut r, m, 2, 1, false).to_antisymmetric()
        };
        let graph = DiracFrame::new(m, graph_of_bivector(&beta)).unwrap();
        let poisson = is_poisson(&bivector(&beta)).unwrap();
        assert_eq!(is_involutive(&graph, &ClosedThreeForm::zero(m)), poisson);
        seen[usize::from(poisson)] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

// --- Schouten -------------------------------------------------------------

fn multivector(r: &mut ChaCha8Rng, m: usize, k: usize, deg: u32) -> PolyForm {
    random::poly_form_of_degree(r, m, k, deg, false).with_variance(Variance::Multivector)
}

fn vector_field(v: &[Poly]) -> PolyForm {
    MixedForm::degree_one(v.len(), Variance::Multivector, v)
}

#[test]
fn schouten_reference_values() {
    let m = 2;
    let px = vector_field(&[c(1), c(0)]);
    let f = x(0).times(&x(1)).plus(&x(0).pow(3));
    let fv = MixedForm::scalar(m, f.clone()).with_variance(Variance::Multivector);
    assert_eq!(
        schouten(&px, &fv).unwrap(),
        MixedForm::scalar(m, f.partial(0)).with_variance(Variance::Multivector)
    );
    let beta = bivector(&two_form(m, &[(0, 1, x(0))]));
    assert_eq!(
        schouten(&px, &beta).unwrap(),
        bivector(&two_form(m, &[(0, 1, c(1))]))
    );

    let chart = Chart::complex_space(2);
    let u1 = chart.partial(Symbol::Holomorphic(0));
    let u2 = chart.partial(Symbol::Holomorphic(1));
    let z1 = chart.z(0);
    let b = Mat::from_fn(4, 4, |i, j| {
        z1.times(&u1[i].times(&u2[j]).minus(&u2[i].times(&u1[j])))
    });
    assert!(is_poisson(&bivector(&b)).unwrap());
}

/// `(L_X P)^{ij} = X^k ∂_k P^{ij} - P^{kj} ∂_k X^i - P^{ik} ∂_k X^j`.
fn lie_derivative_bivector(xv: &[Poly], p: &Mat<Poly>) -> Mat<Poly> {
    let m = xv.len();
    Mat::from_fn(m, m, |i, j| {
        let mut v = apply_vector(xv, &p[(i, j)]);
        for k in 0..m {
            v = v
                .minus(&p[(k, j)].times(&xv[i].partial(k)))
                .minus(&p[(i, k)].times(&xv[j].partial(k)));
        }
        v
    })
}

#[test]
fn schouten_of_vector_and_bivector_is_lie_derivative() {
    let mut r = rng(7);
    let m = 3;
    for _ in 0..10 {
        let xv: Vec<Poly> = (0..m)
            .map(|_| random::poly(&mut r, m, 2, 2, false))
            .collect();
        let p = random::poly_form_of_degree(&mut r, m, 2, 2, false).to_antisymmetric();
        assert_eq!(
            schouten(&vector_field(&xv), &bivector(&p)).unwrap(),
            bivector(&lie_derivative_bivector(&xv, &p))
        );
        let y: Vec<Poly> = (0..m)
            .map(|_| random::poly(&mut r, m, 2, 2, false))
            .collect();
        assert_eq!(
            schouten(&vector_field(&xv), &vector_field(&y)).unwrap(),
            vector_field(&lie_bracket(&xv, &y))
        );
    }
}

/// `Σ_cyc P^{il} ∂_l P^{jk}`, the Jacobiator of the bracket `{f, g} = P(df, dg)`.
fn jacobiator(p: &Mat<Poly>, i: usize, j: usize, k: usize) -> Poly {
    let m = p.rows();
    let term = |a: usize, b: usize, cc: usize| {
        (0..m).fold(Poly::zero(), |acc, l| {
            acc.plus(&p[(a, l)].times(&p[(b, cc)].partial(l)))
        })
    };
    term(i, j, k).plus(&term(j, k, i)).plus(&term(k, i, j))
}

#[test]
fn schouten_square_is_twice_the_jacobiator() {
    let mut r = rng(8);
    let m = 4;
    for _ in 0..6 {
        let p = random::poly_form_of_degree(&mut r, m, 2, 2, false).to_antisymmetric();
        let pp = schouten(&bivector(&p), &bivector(&p)).unwrap();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let mask = (1u16 << i) | (1 << j) | (1 << k);
                    assert_eq!(
                        pp.get(mask),
                        jacobiator(&p, i, j, k).scale(&Qi::int(2)),
                        "({i},{j},{k})"
                    );
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tangent_algebroid_reproduces_schouten_and_d(seed in any::<u64>(), p in 0usize..4, q in 0usize..4) {
        let mut r = rng(seed);
        let m = 3;
        let a = multivector(&mut r, m, p, 2);
        let b = multivector(&mut r, m, q, 2);
        let t = Algebroid::tangent(m);
        prop_assert_eq!(t.schouten(&a, &b).unwrap(), schouten(&a, &b).unwrap());
        let mu = random::poly_form(&mut r, m, 2, 4, false);
        prop_assert_eq!(t.differential(&mu).unwrap(), d(&mu));
    }

    #[test]
    fn schouten_graded_antisymmetry(seed in any::<u64>(), p in 0usize..4, q in 0usize..4) {
        let mut r = rng(seed);
        let m = 3;
        let a = multivector(&mut r, m, p, 2);
        let b = multivector(&mut r, m, q, 2);
        let ab = schouten(&a, &b).unwrap();
        let ba = schouten(&b, &a).unwrap();
        let sign = if ((p as i64 - 1) * (q as i64 - 1)).rem_euclid(2) == 1 { ba.clone() } else { ba.negate() };
        prop_assert_eq!(ab, sign);
    }
}

// --- algebroids and Maurer-Cartan ----------------------------------------

fn complex_pair() -> (Chart, DiracPair) {
    let chart = Chart::complex_space(2);
    let pair = DiracPair::complex(&chart).unwrap();
    (chart, pair)
}

#[test]
fn algebroid_differential_squares_to_zero_and_matches_dbar() {
    let (chart, pair) = complex_pair();
    let mut r = rng(9);
    for _ in 0..5 {
        let f = random::poly(&mut r, 4, 3, 4, true);
        let fl = MixedForm::scalar(4, f.clone());
        let df = pair.algebroid.differential(&fl).unwrap();
        assert!(pair.algebroid.differential(&df).unwrap().is_zero());
        let mu = random::poly_form(&mut r, 4, 2, 5, true);
        assert!(pair
            .algebroid
            .differential(&pair.algebroid.differential(&mu).unwrap())
            .unwrap()
            .is_zero());
        let dl = (0..4).fold(Section::zero(4), |acc, a| {
            acc.plus(&pair.dual[a].times(&df.get(1 << a)))
        });
        let ham = hamiltonian_symmetry(
            &f,
            &GcField::complex(&chart).unwrap(),
            &ClosedThreeForm::zero(4),
        )
        .unwrap();
        assert_eq!(dl.plus(&dl.conj()), ham.section);
        let dbar = (0..2).fold(vec![Poly::zero(); 4], |acc, j| {
            let g = apply_vector(&chart.partial(Symbol::Antiholomorphic(j)), &f);
            let w = chart.differential(Symbol::Antiholomorphic(j));
            acc.iter()
                .zip(&w)
                .map(|(a, b)| a.plus(&g.times(b)))
                .collect()
        });
        assert_eq!(dl, Section::from_covector(dbar));
    }
    let constant = MixedForm::monomial(4, Poly::constant(Qi::frac(2, 3)), &[0, 2]);
    assert!(pair.algebroid.differential(&constant).unwrap().is_zero());
}

#[test]
fn algebroid_differential_is_derivation_of_dual_bracket() {
    let (_, pair) = complex_pair();
    let mut r = rng(10);
    for _ in 0..5 {
        let a = random::poly_form_of_degree(&mut r, 4, 1, 2, true);
        let b = random::poly_form_of_degree(&mut r, 4, 1, 2, true);
        let br = |u: &PolyForm, v: &PolyForm| {
            pair.dual_algebroid
                .schouten(
                    &u.clone().with_variance(Variance::Multivector),
                    &v.clone().with_variance(Variance::Multivector),
                )
                .unwrap()
                .with_variance(Variance::Form)
        };
        let dl = |u: &PolyForm| pair.algebroid.differential(u).unwrap();
        assert_eq!(dl(&br(&a, &b)), br(&dl(&a), &b).plus(&br(&a, &dl(&b))));
    }
}

fn eps_beta(f: Poly) -> Mat<Poly> {
    two_form(4, &[(2, 3, f)])
}

#[test]
fn maurer_cartan_reference_examples() {
    let (chart, pair) = complex_pair();
    let (z1, z2) = (chart.z(0), chart.z(1));
    let f = z1.times(&z2).plus(&z1.pow(3)).minus(&c(2));
    for eps in [
        eps_beta(f),
        eps_beta(z1.clone()),
        two_form(4, &[(0, 1, z1.conj())]),
    ] {
        assert!(maurer_cartan(&eps, &pair).unwrap().holds());
        assert!(is_involutive(
            &DiracFrame::new(4, pair.deformed_frame(&eps)).unwrap(),
            &ClosedThreeForm::zero(4)
        ));
    }
    let bad = eps_beta(z1.conj());
    assert!(!maurer_cartan(&bad, &pair).unwrap().holds());
    assert!(!is_involutive(
        &DiracFrame::new(4, pair.deformed_frame(&bad)).unwrap(),
        &ClosedThreeForm::zero(4)
    ));
}

#[test]
fn maurer_cartan_residual_is_proportional_to_graph_tensor() {
    let (_, pair) = complex_pair();
    let mut r = rng(11);
    let mut ratio: Option<Qi> = None;
    for _ in 0..8 {
        let eps = random::poly_form_of_degree(&mut r, 4, 2, 1, true).to_antisymmetric();
        let res = maurer_cartan(&eps, &pair).unwrap().residual;
        let graph = DiracFrame::new(4, pair.deformed_frame(&eps)).unwrap();
        let t = involutivity_tensor(&graph, &ClosedThreeForm::zero(4));
        for i in 0..4 {
            for j in i + 1..4 {
                for k in j + 1..4 {
                    let mask = (1u16 << i) | (1 << j) | (1 << k);
                    let tv = t
                        .iter()
                        .find(|c| c.indices == (i, j, k))
                        .map_or_else(Poly::zero, |c| c.value.clone());
                    let rv = res.get(mask);
                    if rv.is_zero() {
                        assert!(tv.is_zero());
                        continue;
                    }
                    let q = ratio
                        .get_or_insert_with(|| {
                            let (mono, coeff) = rv.terms().next().unwrap();
                            tv.coeff(mono) / coeff.clone()
                        })
                        .clone();
                    assert_eq!(tv, rv.scale(&q));
                }
            }
        }
    }
    assert_eq!(ratio, Some(Qi::frac(1, 2)));
}

// --- integrability --------------------------------------------------------

#[test]
fn type_jumping_spinor_is_integrable() {
    let chart = Chart::complex_space(2);
    let rho = MixedForm::scalar(4, chart.z(0)).plus(&holomorphic_volume(&chart));
    let witness = Section::from_vector(
        chart
            .partial(Symbol::Holomorphic(1))
            .iter()
            .map(Poly::negate)
            .collect(),
    );
    let h = ClosedThreeForm::zero(4);
    let samples = default_samples(4);
    let v = check_spinor_integrability(&rho, &h, Some(&witness), None, &samples).unwrap();
    assert!(v.passed());
    match check_spinor_integrability(&rho, &h, None, None, &samples).unwrap() {
        IntegrabilityVerdict::Integrable {
            witness: w,
            normalized,
            ..
        } => {
            assert!(normalized);
            assert_eq!(w, witness);
        }
        other => panic!("{other:?}"),
    }
    let wrong = Section::from_vector(chart.partial(Symbol::Holomorphic(0)));
    assert!(matches!(
        check_spinor_integrability(&rho, &h, Some(&wrong), None, &samples).unwrap(),
        IntegrabilityVerdict::WitnessRejected { .. }
    ));
    for a in -1..=1 {
        for b in -1..=1 {
            let p = chart.point_from_complex(&[Qi::int(a), Qi::int(b)]);
            assert_eq!(
                spinor_type_at(&rho, &p).unwrap(),
                if a == 0 { 2 } else { 0 }
            );
        }
    }
}

#[test]
fn non_closed_symplectic_spinor_is_obstructed() {
    let omega = two_form(4, &[(0, 1, x(2)), (2, 3, c(1))]);
    let phi = exp_i(&omega);
    let samples = vec![
        vec![Qi::one(); 4],
        vec![Qi::int(2), Qi::zero(), Qi::int(-1), Qi::int(3)],
    ];
    let v =
        check_spinor_integrability(&phi, &ClosedThreeForm::zero(4), None, None, &samples).unwrap();
    assert!(
        matches!(v, IntegrabilityVerdict::Obstructed { .. }),
        "{v:?}"
    );
    let constant = exp_i(&two_form(4, &[(0, 1, c(1)), (2, 3, c(1))]));
    match check_spinor_integrability(&constant, &ClosedThreeForm::zero(4), None, None, &samples)
        .unwrap()
    {
        IntegrabilityVerdict::Integrable { witness, .. } => assert!(witness.is_zero()),
        other => panic!("{other:?}"),
    }
}

struct Case {
    name: &'static str,
    field: GcField,
    spinor: PolyForm,
    samples: Vec<Vec<Qi>>,
    integrable: bool,
}

fn library() -> Vec<Case> {
    let chart = Chart::complex_space(2);
    let generic = vec![
        vec![Qi::one(), Qi::int(2), Qi::int(-1), Qi::frac(1, 2)],
        vec![Qi::int(3), Qi::int(-2), Qi::int(1), Qi::int(1)],
    ];
    let std_omega = two_form(4, &[(0, 1, c(1)), (2, 3, c(1))]);
    let bent = two_form(4, &[(0, 1, c(1)), (2, 3, c(1)), (0, 2, x(1))]);
    let mut z1 = Mat::zeros(2, 2);
    z1[(0, 1)] = chart.z(0);
    z1[(1, 0)] = chart.z(0).negate();
    let mut cubic = Mat::zeros(2, 2);
    let f = chart
        .z(0)
        .pow(3)
        .plus(&chart.z(1).times(&chart.z(0)))
        .minus(&c(1));
    cubic[(0, 1)] = f.clone();
    cubic[(1, 0)] = f.negate();
    let mut anti = Mat::zeros(2, 2);
    anti[(0, 1)] = chart.z(0).conj();
    anti[(1, 0)] = chart.z(0).conj().negate();
    let def = |b: &Mat<Poly>| deform_by_bivector(&chart, b).unwrap();
    let (d1, d2, d3) = (def(&z1), def(&cubic), def(&anti));
    let s0 = validate(standard_of_type(2, 1)).unwrap();
    vec![
        Case {
            name: "constant symplectic",
            field: GcField::symplectic(&std_omega).unwrap(),
            spinor: exp_i(&std_omega),
            samples: generic.clone(),
            integrable: true,
        },
        Case {
            name: "complex",
            field: GcField::complex(&chart).unwrap(),
            spinor: holomorphic_volume(&chart),
            samples: generic.clone(),
            integrable: true,
        },
        Case {
            name: "deformed by z1",
            field: d1.field,
            spinor: d1.spinor,
            samples: generic.clone(),
            integrable: true,
        },
        Case {
            name: "deformed by cubic",
            field: d2.field,
            spinor: d2.spinor,
            samples: generic.clone(),
            integrable: true,
        },
        Case {
            name: "non-holomorphic deformation",
            field: d3.field,
            spinor: d3.spinor,
            samples: generic.clone(),
            integrable: false,
        },
        Case {
            name: "non-closed symplectic",
            field: GcField::symplectic(&bent).unwrap(),
            spinor: exp_i(&bent),
            samples: generic.clone(),
            integrable: false,
        },
        Case {
            name: "type one constant",
            field: GcField::constant(&s0),
            spinor: s0.canonical_spinor().unwrap().spinor.lift(),
            samples: generic,
            integrable: true,
        },
    ]
}

#[test]
fn three_way_integrability_agreement() {
    let h = ClosedThreeForm::zero(4);
    for case in library() {
        let n = nijenhuis_field(&case.field, &h).is_empty();
        let t = is_involutive(&case.field.eigen_frame(), &h);
        let s = check_spinor_integrability(&case.spinor, &h, None, None, &case.samples)
            .unwrap()
            .passed();
        assert_eq!(
            (n, t, s),
            (case.integrable, case.integrable, case.integrable),
            "{}",
            case.name
        );
        for p in &case.samples {
            let l = case.field.at(p).unwrap().eigenbundle();
            let phi = case.spinor.eval(p);
            assert!(
                l.basis().iter().all(|v| v.act(&phi).is_zero()),
                "{} spinor at {p:?}",
                case.name
            );
        }
        if case.integrable {
            assert!(is_poisson(&case.field.poisson()).unwrap(), "{}", case.name);
        }
    }
}

#[test]
fn deformation_by_cubic_jumps_on_the_curve() {
    let chart = Chart::complex_space(2);
    let mut r = rng(12);
    let pair = DiracPair::complex(&chart).unwrap();
    for _ in 0..3 {
        let f = random::poly(&mut r, 2, 3, 4, true).compose(&[chart.z(0), chart.z(1)]);
        let mut holo = Mat::zeros(2, 2);
        holo[(0, 1)] = f.clone();
        holo[(1, 0)] = f.negate();
        let def = deform_by_bivector(&chart, &holo).unwrap();
        assert!(maurer_cartan(&eps_beta(f.clone()), &pair).unwrap().holds());
        assert_eq!(
            def.spinor,
            holomorphic_volume(&chart).plus(&MixedForm::scalar(4, f.clone()))
        );
        assert!(is_poisson(&def.field.poisson()).unwrap());
        for p in default_samples(4) {
            let expected = if f.eval(&p).is_zero() { 2 } else { 0 };
            assert_eq!(def.field.type_at(&p).unwrap(), expected);
            assert_eq!(spinor_type_at(&def.spinor, &p).unwrap(), expected);
        }
    }
    let zero = deform_by_bivector(&chart, &Mat::zeros(2, 2)).unwrap();
    assert_eq!(zero.field, GcField::complex(&chart).unwrap());
}

#[test]
fn deformed_poisson_is_minus_four_imaginary_part() {
    let chart = Chart::complex_space(2);
    let mut holo = Mat::zeros(2, 2);
    let f = chart.z(0).times(&chart.z(1)).plus(&c(3));
    holo[(0, 1)] = f.clone();
    holo[(1, 0)] = f.negate();
    let def = deform_by_bivector(&chart, &holo).unwrap();
    let im = def.beta.map(Poly::im).scale(&Qi::int(-4));
    assert_eq!(def.field.poisson(), bivector(&im));
}

#[test]
fn circle_family_is_involutive() {
    let chart = Chart::complex_space(2);
    let j = GcField::complex(&chart).unwrap();
    let omega = two_form(4, &[(0, 1, c(1)), (2, 3, c(1))]);
    let sym = GcField::symplectic(&omega).unwrap();
    for (a, b) in [(0, 1), (1, 0)]
        .map(|(a, b)| (Qi::int(a), Qi::int(b)))
        .into_iter()
        .chain([
            (Qi::frac(3, 5), Qi::frac(4, 5)),
            (Qi::frac(4, 5), Qi::frac(-3, 5)),
        ])
    {
        for s in [&j, &sym] {
            let frame = circle_frame(s, &a, &b).unwrap();
            frame.check_rank(&default_samples(4)).unwrap();
            assert!(is_involutive(&frame, &ClosedThreeForm::zero(4)));
        }
    }
    assert!(circle_frame(&j, &Qi::one(), &Qi::one()).is_err());
}

// --- modular field and symmetries ----------------------------------------

/// Pointwise solve of `dφ(p) = X·φ(p)` over vectors.
fn modular_at(phi: &PolyForm, rhs: &PolyForm, p: &[Qi]) -> Vec<Qi> {
    let m = phi.dim();
    let at = phi.eval(p);
    let target = rhs.eval(p);
    let cols: Vec<MixedForm<Qi>> = (0..m).map(|i| at.contract_basis(i)).collect();
    let masks: Vec<u16> = (0..1u16 << m).collect();
    let a = Mat::from_fn(masks.len(), m, |r, cc| cols[cc].get(masks[r]));
    let b: Vec<Qi> = masks.iter().map(|&mk| target.get(mk)).collect();
    a.solve(&b).unwrap()
}

#[test]
fn modular_field_of_x_dx_dy() {
    let beta = bivector(&two_form(2, &[(0, 1, x(0))]));
    let v = MixedForm::monomial(2, c(1), &[0, 1]);
    let xv = modular_vector_field(&beta, &v, None, None).unwrap();
    assert_eq!(xv, vec![c(0), c(-1)]);
    let phi = gcgeom::spin::exp_beta_act(&beta.to_antisymmetric(), &v);
    for p in default_samples(2) {
        let brute = modular_at(&phi, &d(&phi), &p);
        assert_eq!(brute, xv.iter().map(|q| q.eval(&p)).collect::<Vec<_>>());
    }
    let fx = MixedForm::scalar(2, x(0)).with_variance(Variance::Multivector);
    let shift = schouten(&beta, &fx).unwrap();
    assert_eq!(shift, vector_field(&[c(0), x(0).negate()]));
    let xs = modular_vector_field(&beta, &v, Some(&x(0)), None).unwrap();
    assert_eq!(vector_field(&xs), vector_field(&xv).plus(&shift));
    let constant = bivector(&two_form(2, &[(0, 1, c(3))]));
    assert_eq!(
        modular_vector_field(&constant, &v, None, None).unwrap(),
        vec![c(0), c(0)]
    );
}

#[test]
fn modular_rescaling_law() {
    let beta = bivector(&two_form(2, &[(0, 1, x(0))]));
    let v = MixedForm::monomial(2, c(1), &[0, 1]);
    let xv = vector_field(&modular_vector_field(&beta, &v, None, None).unwrap());
    let mut r = rng(13);
    for _ in 0..10 {
        let f = random::poly(&mut r, 2, 3, 3, false);
        let fv = MixedForm::scalar(2, f.clone()).with_variance(Variance::Multivector);
        let xs = modular_vector_field(&beta, &v, Some(&f), None).unwrap();
        assert_eq!(vector_field(&xs), xv.plus(&schouten(&beta, &fv).unwrap()));
    }
    let jac = bivector(&two_form(3, &[(0, 1, c(1)), (1, 2, x(1))]));
    let v3 = MixedForm::monomial(3, c(1), &[0, 1, 2]);
    assert!(matches!(
        modular_vector_field(&jac, &v3, None, None),
        Err(gcgeom::Error::NotPoisson)
    ));
}

#[test]
fn hamiltonian_sections() {
    let h = ClosedThreeForm::zero(4);
    let omega = two_form(4, &[(0, 1, c(1)), (2, 3, c(1)), (0, 2, c(2))]);
    let sym = GcField::symplectic(&omega).unwrap();
    let mut r = rng(14);
    let chart = Chart::complex_space(2);
    let cx = GcField::complex(&chart).unwrap();
    for _ in 0..4 {
        let f = random::poly(&mut r, 4, 2, 4, true);
        let ham = hamiltonian_symmetry(&f, &sym, &h).unwrap();
        assert!(ham.is_symmetry());
        assert_eq!(ham.section.covec, gradient(&f.re(), 4));
        let w = MixedForm::from_antisymmetric(Variance::Form, &omega);
        assert_eq!(
            one_form(&gradient(&f.im(), 4)),
            w.contract(&ham.section.vec)
        );

        let ham = hamiltonian_symmetry(&f, &cx, &h).unwrap();
        assert!(ham.is_symmetry());
        assert!(ham.section.vec.iter().all(Poly::is_zero));
        let mut expected = vec![Poly::zero(); 4];
        for j in 0..2 {
            let dbar_f = apply_vector(&chart.partial(Symbol::Antiholomorphic(j)), &f);
            let d_fbar = apply_vector(&chart.partial(Symbol::Holomorphic(j)), &f.conj());
            let (wb, wz) = (
                chart.differential(Symbol::Antiholomorphic(j)),
                chart.differential(Symbol::Holomorphic(j)),
            );
            for i in 0..4 {
                expected[i] = expected[i]
                    .plus(&dbar_f.times(&wb[i]))
                    .plus(&d_fbar.times(&wz[i]));
            }
        }
        assert_eq!(ham.section.covec, expected);
    }
    let real_constant = hamiltonian_symmetry(&c(7), &sym, &h).unwrap();
    assert!(real_constant.section.is_zero());
    let bent =
        GcField::symplectic(&two_form(4, &[(0, 1, c(1)), (2, 3, c(1)), (0, 2, x(1))])).unwrap();
    let ham = hamiltonian_symmetry(&Poly::var(0).scale(&Qi::i()), &bent, &h).unwrap();
    assert!(!ham.is_symmetry());
}

#[test]
fn field_constructors_validate() {
    let chart = Chart::complex_space(1);
    let j = j_complex(&chart.complex_structure().unwrap());
    assert_eq!(GcField::complex(&chart).unwrap().matrix(), &j.lift());
    let w = j_symplectic(&gcgeom::gc::standard_symplectic(1)).unwrap();
    assert_eq!(
        GcField::symplectic(&two_form(2, &[(0, 1, c(1))]))
            .unwrap()
            .matrix(),
        &w.lift()
    );
    let degenerate = two_form(2, &[(0, 1, x(0))]);
    assert!(GcField::symplectic(&degenerate).is_err());
    let mut r = rng(15);
    let entries: Vec<Vec<Poly>> = (0..4)
        .map(|_| {
            (0..4)
                .map(|_| random::poly(&mut r, 4, 1, 1, false))
                .collect()
        })
        .collect();
    let bad = Mat::from_rows(entries);
    assert!(GcField::new(bad).is_err());
}

/// Projection to `U^k` of a polynomial form, monomial by monomial.
fn project(s: &gcgeom::gc::GcStructure, phi: &PolyForm, k: i64) -> PolyForm {
    let m = phi.dim();
    if k.unsigned_abs() as usize > m / 2 {
        return MixedForm::zero(m);
    }
    let mut by_mono: std::collections::BTreeMap<gcgeom::Monomial, MixedForm<Qi>> =
        std::collections::BTreeMap::new();
    for (mask, p) in phi.terms() {
        for (mono, coeff) in p.terms() {
            by_mono
                .entry(mono.clone())
                .or_insert_with(|| MixedForm::zero(m))
                .add_term(mask, coeff.clone());
        }
    }
    let mut out = MixedForm::zero(m);
    for (mono, f) in by_mono {
        for (mask, coeff) in s.grading_project(&f, k).unwrap().terms() {
            out.add_term(mask, Poly::monomial(mono.clone(), coeff.clone()));
        }
    }
    out
}

#[test]
fn d_shifts_grading_by_one_for_integrable_constant_structures() {
    let mut r = rng(16);
    for k in 0..=2 {
        let s = validate(standard_of_type(2, k)).unwrap();
        for _ in 0..3 {
            let phi = random::poly_form(&mut r, 4, 2, 6, true);
            for g in -2..=2i64 {
                let part = project(&s, &phi, g);
                let dp = d(&part);
                let split = project(&s, &dp, g - 1).plus(&project(&s, &dp, g + 1));
                assert_eq!(split, dp, "type {k}, degree {g}");
            }
        }
    }
}
