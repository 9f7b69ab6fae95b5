//! The d-uple Veronese re-embedding of Proj(R/I).

use crate::error::{Error, Result};
use crate::groebner::{ideal_groebner_basis, Submodule};
use crate::polyring::monomial::{monomials_of_degree, MAX_VARS};
use crate::polyring::{Monomial, MonomialOrder, Poly, Ring};

/// The degree-d monomials m_α in lex order, x0^d first.
pub fn veronese_monomials(ring: &Ring, d: u32) -> Vec<Monomial> {
    monomials_of_degree(ring.nvars(), d as i64, MonomialOrder::Lex)
}

/// J = ker(k[y_α] -> R/I, y_α ↦ m_α), by elimination of the x-block from
/// I + (y_α - m_α). Returns k[y_0, ...] with grevlex and minimal generators of J.
pub fn veronese_ideal(ring: &Ring, ideal: &[Poly], d: u32) -> Result<(Ring, Vec<Poly>)> {
    if d == 0 {
        return Err(Error::Invalid("the Veronese degree must be at least 1".into()));
    }
    if let Some(g) = ideal.iter().find(|g| !g.is_homogeneous()) {
        return Err(Error::Inhomogeneous(ring.fmt_poly(g)));
    }
    let n = ring.nvars();
    let monos = veronese_monomials(ring, d);
    let m = monos.len();
    if n + m > MAX_VARS {
        return Err(Error::Invalid(format!(
            "{m} Veronese coordinates plus {n} variables exceed {MAX_VARS}"
        )));
    }
    let names = (0..n).map(|i| format!("a{i}")).chain((0..m).map(|i| format!("b{i}"))).collect();
    let big = Ring::new(ring.p(), names, MonomialOrder::Elimination(n))?;
    let embed: Vec<Poly> = (0..n).map(|i| big.var(i)).collect();
    let mut gens: Vec<Poly> = ideal.iter().map(|g| g.substitute(ring, &embed, &big)).collect();
    for (a, mono) in monos.iter().enumerate() {
        let ma = Poly::monomial(&big, *mono, 1);
        gens.push(big.var(n + a).sub(&big, &ma));
    }
    let gb = ideal_groebner_basis(&big, &gens);

    let target = Ring::new(ring.p(), (0..m).map(|i| format!("y{i}")).collect(), MonomialOrder::Grevlex)?;
    let back: Vec<Poly> = (0..n)
        .map(|_| Poly::zero())
        .chain((0..m).map(|i| target.var(i)))
        .collect();
    let kernel: Vec<Poly> = gb
        .into_iter()
        .filter(|g| g.terms().iter().all(|(mono, _)| (0..n).all(|v| mono.exp(v) == 0)))
        .map(|g| g.substitute(&big, &back, &target))
        .collect();
    if kernel.is_empty() {
        return Ok((target, kernel));
    }
    let mins = Submodule::ideal(&target, &kernel)?.minimal_generators();
    let mut out: Vec<Poly> = mins.columns().iter().map(|c| c[0].monic(&target)).collect();
    out.sort_by(|a, b| {
        a.homogeneous_degree()
            .cmp(&b.homogeneous_degree())
            .then_with(|| target.cmp(&b.leading_monomial().unwrap(), &a.leading_monomial().unwrap()))
    });
    Ok((target, out))
}

/// Substitute y_α ↦ m_α into each generator of J, for checking J ⊆ kernel.
pub fn pull_back(ring: &Ring, target: &Ring, d: u32, j: &[Poly]) -> Vec<Poly> {
    let images: Vec<Poly> = veronese_monomials(ring, d).into_iter().map(|m| Poly::monomial(ring, m, 1)).collect();
    j.iter().map(|g| g.substitute(target, &images, ring)).collect()
}
