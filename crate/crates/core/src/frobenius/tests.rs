use super::*;
use crate::groebner::ideal_groebner_basis;
use crate::homology::{free_resolution, homology_presentation};
use crate::polyring::{parse_poly, Monomial};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ring(p: u32, n: usize) -> Ring {
    Ring::standard(p, n).unwrap()
}

fn polys(r: &Ring, src: &[&str]) -> Vec<Poly> {
    src.iter().map(|s| parse_poly(r, s).unwrap()).collect()
}

fn resolution(r: &Ring, gens: &[&str]) -> Arc<Resolution> {
    let pres = Presentation::quotient_ring(r, &polys(r, gens)).unwrap();
    Arc::new(Resolution::compute(r, &pres, true).unwrap())
}

#[test]
fn fstar_matrix_examples() {
    let r = ring(2, 2);
    let a = ModMatrix::new(
        FreeModule::new(vec![1, 1]),
        FreeModule::new(vec![0]),
        vec![vec![r.var(0)], vec![r.var(1)]],
    )
    .unwrap();
    let fa = fstar_matrix(&r, &a);
    assert_eq!(fa.dom().degrees(), &[2, 2]);
    assert_eq!(fa.get(0, 0), &parse_poly(&r, "x0^2").unwrap());
    assert_eq!(fa.get(0, 1), &parse_poly(&r, "x1^2").unwrap());

    let f = FreeModule::new(vec![1, 3]);
    let id = fstar_matrix(&r, &ModMatrix::identity(&r, &f));
    assert_eq!(id, ModMatrix::identity(&r, &FreeModule::new(vec![2, 6])));
}

#[test]
fn fstar_complex_resolves_bracket_power() {
    let r = ring(2, 2);
    let k = resolution(&r, &["x0", "x1"]);
    let fk = fstar_complex(&r, k.complex());
    let want = free_resolution(&r, &Presentation::quotient_ring(&r, &polys(&r, &["x0^2", "x1^2"])).unwrap(), true).unwrap();
    assert_eq!(fk.ranks(), want.ranks());
    assert_eq!(fk.modules(), want.modules());

    let r3 = ring(2, 4);
    let gens = ["x0*x2", "x0*x3", "x1*x2", "x1*x3"];
    let p = resolution(&r3, &gens);
    let fp = fstar_complex(&r3, p.complex());
    let d1: Vec<Poly> = fp.maps()[0].columns().iter().map(|c| c[0].clone()).collect();
    let bracket = bracket_power(&r3, &polys(&r3, &gens), 1);
    assert_eq!(ideal_groebner_basis(&r3, &d1), ideal_groebner_basis(&r3, &bracket));
    for t in 1..fp.len() {
        let h = homology_presentation(&r3, &fp, t, true).unwrap();
        for d in 0..=6 {
            assert_eq!(h.piece_dim(d), 0, "H_{t} in degree {d}");
        }
    }
}

#[test]
fn root_map_of_principal_ideal() {
    for p in [2, 3, 5] {
        let r = ring(p, 2);
        let lift = frobenius_root_map(&r, resolution(&r, &["x0"])).unwrap();
        lift.verify(&r).unwrap();
        let c1 = &lift.maps()[1];
        assert_eq!(c1.get(0, 0), &r.var(0).pow(&r, p - 1));
    }
}

#[test]
fn root_map_of_koszul_complex() {
    let r = ring(3, 3);
    let lift = frobenius_root_map(&r, resolution(&r, &["x0", "x1", "x2"])).unwrap();
    lift.verify(&r).unwrap();
    let c1 = &lift.maps()[1];
    for a in 0..3 {
        for b in 0..3 {
            let want = if a == b { r.var(a).pow(&r, 2) } else { Poly::zero() };
            assert_eq!(c1.get(a, b), &want);
        }
    }
    // the diagonal lift is also valid
    let diag = ModMatrix::new(
        c1.dom().clone(),
        c1.cod().clone(),
        (0..3).map(|b| (0..3).map(|a| if a == b { r.var(a).pow(&r, 2) } else { Poly::zero() }).collect()).collect(),
    )
    .unwrap();
    let d1 = lift.target().complex().maps()[0].clone();
    assert_eq!(d1.mul(&r, &diag).unwrap(), lift.maps()[0].mul(&r, &lift.source().maps()[0]).unwrap());
}

#[test]
fn root_map_of_skew_lines() {
    let r = ring(2, 4);
    let lift = frobenius_root_map(&r, resolution(&r, &["x0*x2", "x0*x3", "x1*x2", "x1*x3"])).unwrap();
    lift.verify(&r).unwrap();
    assert_eq!(lift.maps().len(), 4);
}

#[test]
fn phi_for_maximal_ideal() {
    for (p, n) in [(2, 1), (2, 3), (3, 2)] {
        let r = ring(p, n);
        let m: Vec<Poly> = (0..n).map(|i| r.var(i)).collect();
        let phi = build_phi(&r, &m, 0, 0, true).unwrap();
        assert_eq!(phi.dim0(), 1);
        assert!(!phi.phi0.matrix().is_zero());
        assert_eq!(phi.stable_rank(), 1);
    }
}

#[test]
fn phi_for_polynomial_ring() {
    let r = ring(3, 2);
    let phi = build_phi(&r, &[], 2, 2, true).unwrap();
    assert_eq!(phi.dim0(), 1);
    assert_eq!(phi.stable_rank(), 1);
    for d in 0..=1 {
        phi.check_degree_scaling(d).unwrap();
    }
}

fn hasse_invariant(r: &Ring, f: &Poly) -> u32 {
    let p = r.p();
    let xyz = Monomial::from_exponents(&[p - 1, p - 1, p - 1]);
    f.pow(r, p - 1).coeff(&xyz)
}

/// u on T = Ext^1(R/f, Ω) ≅ R/f is multiplication by f^{p-1}; its (xyz)^{p-1}
/// coefficient is the Hasse invariant.
#[test]
fn inner_frobenius_of_plane_cubic() {
    for (p, supersingular) in [(5, true), (7, false)] {
        let r = ring(p, 3);
        let f = parse_poly(&r, "x1^2*x2 - x0^3 - x2^3").unwrap();
        assert_eq!(hasse_invariant(&r, &f) == 0, supersingular);
        let pipe = FrobeniusPipeline::new(&r, std::slice::from_ref(&f), true).unwrap();
        let inner = pipe.inner(&r, 2).unwrap();
        assert_eq!(inner.u.nrows(), 1);
        assert_eq!(inner.u.ncols(), 1);
        let fp = f.frobenius(&r);
        let entry = crate::groebner::ideal_normal_form(&r, std::slice::from_ref(&fp), inner.u.get(0, 0));
        let want = crate::groebner::ideal_normal_form(&r, &[fp], &f.pow(&r, p - 1));
        let c = r.field().inv(entry.leading_term().unwrap().1);
        assert_eq!(entry.scale(&r, c), want.scale(&r, r.field().inv(want.leading_term().unwrap().1)));
        let phi = inner.cell(&r, 2, true).unwrap();
        assert_eq!(phi.stable_rank(), 1);
    }
}

#[test]
fn p_linearity_and_degree_scaling() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let r = ring(2, 4);
    let gens = polys(&r, &["x0*x2", "x0*x3", "x1*x2", "x1*x3"]);
    let pipe = FrobeniusPipeline::new(&r, &gens, true).unwrap();
    for j in 0..=2 {
        let inner = pipe.inner(&r, j).unwrap();
        for i in 0..=j {
            let phi = inner.cell(&r, i, true).unwrap();
            phi.check_p_linearity(&mut rng, 10, 2).unwrap();
            for d in -1..=1 {
                phi.check_degree_scaling(d).unwrap();
            }
        }
    }
}

#[test]
fn tower_examples() {
    let r = ring(2, 4);
    let gens = polys(&r, &["x0*x2", "x0*x3", "x1*x2", "x1*x3"]);
    let phi = build_phi(&r, &gens, 2, 2, true).unwrap();
    assert_eq!(phi.dim0(), 2);
    let t0 = phi_on_bracket_tower(&r, &gens, &phi, 0, true).unwrap();
    assert_eq!(t0, DenseMatrix::identity(r.field(), 2));
    for e in 1..=2 {
        let t = phi_on_bracket_tower(&r, &gens, &phi, e, true).unwrap();
        assert_eq!(t.rank(), phi.phi0.semilinear_power(e as u64).rank());
    }
}

#[test]
fn resolution_independence() {
    let r = ring(3, 4);
    let gens = polys(&r, &["x0*x2", "x0*x3", "x1*x2", "x1*x3"]);
    for (i, j) in [(0, 1), (2, 2), (1, 2)] {
        let a = build_phi(&r, &gens, i, j, true).unwrap();
        let b = build_phi(&r, &gens, i, j, false).unwrap();
        assert_eq!(a.dim0(), b.dim0());
        assert_eq!(a.phi0.matrix().rank(), b.phi0.matrix().rank());
        assert_eq!(a.stable_rank(), b.stable_rank());
    }
}
