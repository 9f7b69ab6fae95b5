use lyucalc::frobenius::{build_phi, fstar_matrix};
use lyucalc::groebner::{ideal_groebner_basis, ideal_normal_form};
use lyucalc::polyring::monomial::monomials_of_degree;
use lyucalc::polyring::{FreeModule, ModMatrix, Monomial, Poly, Ring};
use lyucalc::table::{krull_dimension, lyubeznik_table, TableOptions};
use lyucalc::veronese::{pull_back, veronese_ideal};
use proptest::prelude::*;

fn random_form(r: &Ring, d: i64, coeffs: &[u32]) -> Poly {
    let monos = monomials_of_degree(r.nvars(), d, r.order());
    let terms = monos.into_iter().zip(coeffs.iter().cycle()).map(|(m, &c)| (m, c % r.p())).collect();
    Poly::from_terms(r, terms)
}

/// A homogeneous matrix between free modules with the given degrees.
fn random_matrix(r: &Ring, dom: &[i64], cod: &[i64], seed: &[u32]) -> ModMatrix {
    let mut k = 0;
    let cols = dom
        .iter()
        .map(|&ds| {
            cod.iter()
                .map(|&dr| {
                    k += 1;
                    let rot: Vec<u32> = seed.iter().map(|s| s.wrapping_mul(k as u32 + 7)).collect();
                    random_form(r, ds - dr, &rot)
                })
                .collect()
        })
        .collect();
    ModMatrix::new(FreeModule::new(dom.to_vec()), FreeModule::new(cod.to_vec()), cols).unwrap()
}

fn degrees(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0i64..3, 1..=len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fstar_is_functorial(
        p in prop::sample::select(vec![2u32, 3, 5]),
        a in degrees(3), b in degrees(3), c in degrees(3),
        seed in prop::collection::vec(0u32..1000, 4..10),
    ) {
        let r = Ring::standard(p, 3).unwrap();
        // shifted so that most entries have nonnegative degree
        let b: Vec<i64> = b.iter().map(|x| x + 2).collect();
        let c: Vec<i64> = c.iter().map(|x| x + 4).collect();
        let f = random_matrix(&r, &b, &a, &seed);
        let g = random_matrix(&r, &c, &b, &seed);
        let fg = f.mul(&r, &g).unwrap();
        prop_assert_eq!(fstar_matrix(&r, &fg), fstar_matrix(&r, &f).mul(&r, &fstar_matrix(&r, &g)).unwrap());
        prop_assert_eq!(fstar_matrix(&r, &f).dom().degrees().to_vec(), b.iter().map(|x| x * p as i64).collect::<Vec<_>>());
    }
}

/// Squarefree monomial ideals in four variables, as lists of supports.
fn monomial_ideal() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..16, 1..4)
}

fn from_supports(r: &Ring, sups: &[u32]) -> Vec<Poly> {
    sups.iter()
        .map(|&s| {
            let e: Vec<u32> = (0..r.nvars()).map(|i| (s >> i) & 1).collect();
            Poly::monomial(r, Monomial::from_exponents(&e), 1)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn table_invariants_on_monomial_ideals(
        p in prop::sample::select(vec![2u32, 3]),
        sups in monomial_ideal(),
        perm in Just((0..4usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let r = Ring::standard(p, 4).unwrap();
        let gens = from_supports(&r, &sups);
        let t = lyubeznik_table(&r, &gens, &TableOptions::minimized()).unwrap();
        let d = t.dim_a;
        prop_assert!(t.get(d, d) >= 1);
        for c in &t.cells {
            prop_assert!(c.lambda <= c.dim_e0);
        }

        let images: Vec<Poly> = perm.iter().map(|&i| r.var(i)).collect();
        let relabeled: Vec<Poly> = gens.iter().map(|g| g.substitute(&r, &images, &r)).collect();
        let t2 = lyubeznik_table(&r, &relabeled, &TableOptions::minimized()).unwrap();
        prop_assert!(t.same_values(&t2));

        let raw = lyubeznik_table(&r, &gens, &TableOptions::default()).unwrap();
        prop_assert!(t.same_values(&raw));
    }

    #[test]
    fn linear_coordinate_change(
        p in prop::sample::select(vec![2u32, 3, 5]),
        shear in prop::collection::vec(0u32..5, 6),
    ) {
        // x_i -> x_i + Σ_{k>i} a_ik x_k is invertible
        let r = Ring::standard(p, 4).unwrap();
        let mut images = Vec::new();
        let mut s = shear.iter();
        for i in 0..4 {
            let mut img = r.var(i);
            for k in i + 1..4 {
                img = img.add(&r, &r.var(k).scale(&r, *s.next().unwrap() % p));
            }
            images.push(img);
        }
        for gens in [
            vec!["x0*x2", "x0*x3", "x1*x2", "x1*x3"],
            vec!["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"],
        ] {
            let g: Vec<Poly> = gens.iter().map(|s| lyucalc::polyring::parse_poly(&r, s).unwrap()).collect();
            let moved: Vec<Poly> = g.iter().map(|f| f.substitute(&r, &images, &r)).collect();
            let a = lyubeznik_table(&r, &g, &TableOptions::minimized()).unwrap();
            let b = lyubeznik_table(&r, &moved, &TableOptions::minimized()).unwrap();
            prop_assert!(a.same_values(&b));
        }
    }

    #[test]
    fn veronese_generators_lie_in_the_kernel(
        p in prop::sample::select(vec![2u32, 3]),
        sups in prop::collection::vec(1u32..8, 0..3),
        d in 1u32..=2,
    ) {
        let r = Ring::standard(p, 3).unwrap();
        let gens = from_supports(&r, &sups);
        let (t, j) = veronese_ideal(&r, &gens, d).unwrap();
        let gb = ideal_groebner_basis(&r, &gens);
        for g in pull_back(&r, &t, d, &j) {
            prop_assert!(ideal_normal_form(&r, &gb, &g).is_zero());
        }
        // the Veronese subring has the same dimension
        prop_assert_eq!(krull_dimension(&t, &j), krull_dimension(&r, &gens));
        if sups.is_empty() {
            prop_assert!(j.iter().all(|g| g.homogeneous_degree() == Some(2)));
        }
    }
}

#[test]
fn veronese_is_independent_of_variable_names() {
    let a = Ring::new(3, vec!["s".into(), "t".into()], lyucalc::polyring::MonomialOrder::Grevlex).unwrap();
    let b = Ring::standard(3, 2).unwrap();
    assert_eq!(veronese_ideal(&a, &[], 3).unwrap().1, veronese_ideal(&b, &[], 3).unwrap().1);
}

#[test]
fn stable_rank_bounded_by_dimension() {
    let r = Ring::standard(3, 4).unwrap();
    let gens: Vec<Poly> = ["x0*x2", "x0*x3", "x1*x2", "x1*x3"]
        .iter()
        .map(|s| lyucalc::polyring::parse_poly(&r, s).unwrap())
        .collect();
    for j in 0..=2 {
        for i in 0..=j {
            let phi = build_phi(&r, &gens, i, j, true).unwrap();
            assert!(phi.stable_rank() <= phi.dim0());
        }
    }
}
