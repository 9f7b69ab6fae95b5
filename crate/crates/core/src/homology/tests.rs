use super::*;
use crate::groebner::Submodule;
use crate::polyring::{parse_poly, Poly};

fn ring(p: u32, n: usize) -> Ring {
    Ring::standard(p, n).unwrap()
}

fn polys(r: &Ring, src: &[&str]) -> Vec<Poly> {
    src.iter().map(|s| parse_poly(r, s).unwrap()).collect()
}

fn resolve(r: &Ring, gens: &[&str], min: bool) -> ChainComplex {
    free_resolution(r, &Presentation::quotient_ring(r, &polys(r, gens)).unwrap(), min).unwrap()
}

/// dim (R/I)_d by counting standard monomials.
fn quotient_dim(r: &Ring, gens: &[&str], d: i64) -> usize {
    let s = Submodule::ideal(r, &polys(r, gens)).unwrap();
    let lts = s.leading_terms();
    FreeModule::new(vec![0])
        .piece_basis(r, d)
        .iter()
        .filter(|(_, m)| !lts.iter().any(|(_, l)| l.divides(m)))
        .count()
}

#[test]
fn koszul_resolution() {
    let r = ring(2, 3);
    let c = resolve(&r, &["x0", "x1", "x2"], true);
    assert_eq!(c.ranks(), vec![1, 3, 3, 1]);
    let degs: Vec<Vec<i64>> = c.modules().iter().map(|m| m.degrees().to_vec()).collect();
    assert_eq!(degs, vec![vec![0], vec![1; 3], vec![2; 3], vec![3]]);
}

#[test]
fn principal_resolution() {
    let r = ring(5, 3);
    let c = resolve(&r, &["x0^3 + x1*x2^2"], true);
    assert_eq!(c.ranks(), vec![1, 1]);
    assert_eq!(c.module(1).degrees(), &[3]);
}

#[test]
fn skew_lines_betti_numbers() {
    let r = ring(3, 4);
    let gens = ["x0*x2", "x0*x3", "x1*x2", "x1*x3"];
    let c = resolve(&r, &gens, true);
    assert_eq!(c.ranks(), vec![1, 4, 4, 1]);
    for d in 0..8 {
        assert_eq!(c.euler_characteristic(&r, d), quotient_dim(&r, &gens, d) as i64);
    }
    let raw = resolve(&r, &gens, false);
    for d in 0..8 {
        assert_eq!(raw.euler_characteristic(&r, d), quotient_dim(&r, &gens, d) as i64);
    }
}

#[test]
fn resolutions_are_exact() {
    let r = ring(3, 4);
    for gens in [
        &["x0*x2", "x0*x3", "x1*x2", "x1*x3"][..],
        &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"][..],
        &["x0^2", "x1^3", "x0*x1*x2"][..],
    ] {
        for min in [false, true] {
            let c = resolve(&r, gens, min);
            for t in 1..c.len() {
                let h = homology_presentation(&r, &c, t, true).unwrap();
                for d in 0..7 {
                    assert_eq!(h.piece_dim(d), 0, "H_{t} in degree {d} for {gens:?}");
                }
            }
            for d in 0..7 {
                assert_eq!(c.euler_characteristic(&r, d), quotient_dim(&r, gens, d) as i64);
            }
        }
    }
}

fn taylor(r: &Ring) -> ChainComplex {
    let p = |s: &str| parse_poly(r, s).unwrap();
    let z = Poly::zero();
    let one = Poly::constant(r, 1);
    let f0 = FreeModule::new(vec![0]);
    let f1 = FreeModule::new(vec![1, 1, 2]);
    let f2 = FreeModule::new(vec![2, 2, 2]);
    let f3 = FreeModule::new(vec![2]);
    let d1 = ModMatrix::new(f1.clone(), f0.clone(), vec![vec![p("x0")], vec![p("x1")], vec![p("x0*x1")]]).unwrap();
    let d2 = ModMatrix::new(
        f2.clone(),
        f1.clone(),
        vec![
            vec![p("x1").neg(r), p("x0"), z.clone()],
            vec![p("x1").neg(r), z.clone(), one.clone()],
            vec![z.clone(), p("x0").neg(r), one.clone()],
        ],
    )
    .unwrap();
    let d3 = ModMatrix::new(f3.clone(), f2.clone(), vec![vec![one.clone(), one.neg(r), one.clone()]]).unwrap();
    ChainComplex::new(r, Kind::Homological, vec![f0, f1, f2, f3], vec![d1, d2, d3]).unwrap()
}

#[test]
fn minimize_examples() {
    let r = ring(5, 2);
    let t = taylor(&r);
    assert_eq!(t.ranks(), vec![1, 3, 3, 1]);
    let m = minimize(&r, &t);
    assert_eq!(m.ranks(), vec![1, 2, 1]);
    let h0 = |c: &ChainComplex, d| homology_presentation(&r, c, 0, true).unwrap().piece_dim(d);
    for d in 0..5 {
        assert_eq!(h0(&t, d), h0(&m, d));
    }

    let k = resolve(&r, &["x0", "x1"], false);
    assert_eq!(minimize(&r, &k), k);

    // splice an identity summand R(-2) -> R(-2) into the Koszul complex
    let one = Poly::constant(&r, 1);
    let z = Poly::zero();
    let f1 = FreeModule::new(vec![1, 1, 2]);
    let f2 = FreeModule::new(vec![2, 2]);
    let d1 = ModMatrix::new(f1.clone(), k.module(0), vec![vec![r.var(0)], vec![r.var(1)], vec![z.clone()]]).unwrap();
    let syz = k.maps()[1].column(0).to_vec();
    let d2 = ModMatrix::new(
        f2.clone(),
        f1.clone(),
        vec![vec![syz[0].clone(), syz[1].clone(), z.clone()], vec![z.clone(), z.clone(), one]],
    )
    .unwrap();
    let spliced = ChainComplex::new(&r, Kind::Homological, vec![k.module(0), f1, f2], vec![d1, d2]).unwrap();
    assert_eq!(minimize(&r, &spliced).ranks(), vec![1, 2, 1]);
}

#[test]
fn dualize_examples() {
    let r = ring(7, 3);
    let c = resolve(&r, &["x0^2 + x1*x2"], true);
    let d = c.dualize_into_omega(&r);
    assert_eq!(d.kind(), Kind::Cohomological);
    assert_eq!(d.module(0).degrees(), &[3]);
    assert_eq!(d.module(1).degrees(), &[1]);
    assert_eq!(d.dualize_into_omega(&r), c);

    // dual Koszul complex on two variables: homology k in the top spot only
    let r2 = ring(2, 2);
    let k = resolve(&r2, &["x0", "x1"], true).dualize_into_omega(&r2);
    for t in 0..3 {
        let h = homology_presentation(&r2, &k, t, true).unwrap();
        let dims: Vec<usize> = (-2..=2).map(|d| h.piece_dim(d)).collect();
        if t == 2 {
            assert_eq!(dims, vec![0, 0, 1, 0, 0]);
        } else {
            assert_eq!(dims, vec![0; 5]);
        }
    }
}

#[test]
fn homology_at_spot_zero_recovers_module() {
    let r = ring(3, 4);
    let gens = ["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"];
    let c = resolve(&r, &gens, true);
    let h = homology_presentation(&r, &c, 0, true).unwrap();
    for d in 0..6 {
        assert_eq!(h.piece_dim(d), quotient_dim(&r, &gens, d));
    }
}

#[test]
fn graded_piece_examples() {
    let r = ring(5, 2);
    let k = resolve(&r, &["x0", "x1"], true);
    assert_eq!(homology_presentation(&r, &k, 0, true).unwrap().piece_dim(0), 1);

    let free = FreeModule::new(vec![1]);
    let m = SubquotientPresentation::new(
        &r,
        ModMatrix::identity(&r, &free),
        ModMatrix::zero(FreeModule::zero(), free.clone()),
        true,
    )
    .unwrap();
    assert_eq!(m.piece_dim(0), 0);
    assert_eq!(m.piece_dim(1), 1);

    let c = resolve(&r, &["x0^2", "x1^2"], true);
    let h = homology_presentation(&r, &c, 0, true).unwrap();
    let piece = h.graded_piece(2);
    assert_eq!(piece.dim(), 1);
    let x0x1 = vec![parse_poly(&r, "x0*x1").unwrap()];
    assert_eq!(piece.coordinates(&x0x1).unwrap().len(), 1);
    assert_ne!(piece.coordinates(&x0x1).unwrap()[0], 0);
    assert!(piece.is_boundary(&[parse_poly(&r, "x0^2").unwrap()]).unwrap());
}
