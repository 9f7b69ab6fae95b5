//! Gröbner bases of submodules of graded free modules, syzygies, lifting,
//! elimination and Frobenius bracket powers.

pub mod buchberger;
pub mod term;

use std::sync::{Arc, OnceLock};

pub use buchberger::{buchberger, Basis, GbData, GbOptions};
pub use term::{Ctx, ModuleOrder, SVec, SchreyerFrame, Term};

use crate::error::{Error, Result};
use crate::polyring::{FreeModule, ModMatrix, Monomial, MonomialOrder, Poly, Ring, Vector};

/// A submodule of a graded free module given by homogeneous generators, with
/// lazily computed and cached Gröbner bases (top order on the ambient).
#[derive(Debug)]
pub struct Submodule {
    ring: Ring,
    gens: ModMatrix,
    gb: OnceLock<Arc<GbData>>,
    gb_cof: OnceLock<Arc<GbData>>,
}

impl Clone for Submodule {
    fn clone(&self) -> Self {
        let s = Submodule::new(&self.ring, self.gens.clone());
        if let Some(g) = self.gb.get() {
            let _ = s.gb.set(g.clone());
        }
        if let Some(g) = self.gb_cof.get() {
            let _ = s.gb_cof.set(g.clone());
        }
        s
    }
}

impl Submodule {
    pub fn new(ring: &Ring, gens: ModMatrix) -> Self {
        Submodule {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
            gb_cof: OnceLock::new(),
        }
    }

    /// Ideal of R generated by homogeneous polynomials.
    pub fn ideal(ring: &Ring, gens: &[Poly]) -> Result<Self> {
        let cols = gens.iter().map(|g| vec![g.clone()]).collect();
        let m = ModMatrix::from_columns(FreeModule::new(vec![0]), cols, 0)?;
        Ok(Submodule::new(ring, m))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ambient(&self) -> &FreeModule {
        self.gens.cod()
    }

    pub fn generators(&self) -> &ModMatrix {
        &self.gens
    }

    pub fn ctx(&self) -> Ctx {
        Ctx::top(&self.ring, self.ambient().degrees().to_vec())
    }

    fn cofactor_ctx(&self) -> Ctx {
        Ctx::top(&self.ring, self.gens.dom().degrees().to_vec())
    }

    fn inputs(&self, ctx: &Ctx) -> Vec<SVec> {
        self.gens.columns().iter().map(|c| ctx.from_vector(c)).collect()
    }

    fn options(&self, cofactors: bool) -> GbOptions {
        GbOptions {
            cofactor_ctx: cofactors.then(|| self.cofactor_ctx()),
            ideal: self.ambient().rank() == 1,
        }
    }

    /// Reduced Gröbner basis data; cached.
    pub fn gb_data(&self) -> &GbData {
        if let Some(g) = self.gb_cof.get() {
            return g;
        }
        self.gb.get_or_init(|| {
            let ctx = self.ctx();
            Arc::new(buchberger(&ctx, &self.inputs(&ctx), &self.options(false)))
        })
    }

    /// Gröbner basis with cofactors expressing each element in the generators; cached.
    pub fn gb_data_with_cofactors(&self) -> &GbData {
        self.gb_cof.get_or_init(|| {
            let ctx = self.ctx();
            Arc::new(buchberger(&ctx, &self.inputs(&ctx), &self.options(true)))
        })
    }

    fn basis(&self, data: &GbData) -> Basis {
        Basis::from_elems(self.ambient().rank(), data.elems.clone())
    }

    /// Reduced Gröbner basis as ambient vectors.
    pub fn groebner_basis(&self) -> Vec<Vector> {
        let ctx = self.ctx();
        self.gb_data()
            .elems
            .iter()
            .map(|v| ctx.to_vector(&self.ring, v))
            .collect()
    }

    pub fn gb_matrix(&self) -> ModMatrix {
        let cols = self.groebner_basis();
        ModMatrix::from_columns(self.ambient().clone(), cols, 0)
            .expect("Gröbner basis of homogeneous generators is homogeneous")
    }

    /// Leading terms (component, monomial) of the reduced Gröbner basis.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.gb_data()
            .elems
            .iter()
            .map(|v| (v[0].comp as usize, v[0].mono))
            .collect()
    }

    pub fn normal_form(&self, v: &[Poly]) -> Vector {
        let ctx = self.ctx();
        let data = self.gb_data();
        let (rem, _) = self.basis(data).reduce(&ctx, ctx.from_vector(v), None);
        ctx.to_vector(&self.ring, &rem)
    }

    pub fn contains(&self, v: &[Poly]) -> bool {
        self.normal_form(v).iter().all(Poly::is_zero)
    }

    /// Same submodule (GB equality).
    pub fn same_as(&self, other: &Submodule) -> bool {
        self.ambient() == other.ambient() && self.gb_data().elems == other.gb_data().elems
    }

    /// Generators that survive homogeneous Buchberger; a minimal generating set.
    pub fn minimal_generators(&self) -> ModMatrix {
        let idx = {
            let mut v = self.gb_data().minimal_inputs.clone();
            v.sort_unstable();
            v
        };
        self.gens.select_columns(&idx)
    }

    /// X with gens · X = B.
    pub fn lift(&self, b: &ModMatrix) -> Result<ModMatrix> {
        if b.cod() != self.ambient() {
            return Err(Error::Shape("lift: codomains differ".into()));
        }
        let ctx = self.ctx();
        let cctx = self.cofactor_ctx();
        let data = self.gb_data_with_cofactors();
        let basis = self.basis(data);
        let cofs = data.cofactors.as_ref().expect("cofactors tracked");
        let mut cols = Vec::with_capacity(b.ncols());
        for (s, col) in b.columns().iter().enumerate() {
            let (rem, steps) = basis.reduce(&ctx, ctx.from_vector(col), None);
            if !rem.is_empty() {
                return Err(Error::NotInImage(format!(
                    "column {s} of the target is not in the image"
                )));
            }
            cols.push(cctx.to_vector(&self.ring, &cctx.combine(&steps, cofs)));
        }
        ModMatrix::new(b.dom().clone(), self.gens.dom().clone(), cols)
    }

    /// Generators of the syzygy module of the generators, minimal for homogeneous input.
    pub fn syzygies(&self) -> ModMatrix {
        let ctx = self.ctx();
        let cctx = self.cofactor_ctx();
        let data = self.gb_data_with_cofactors();
        let basis = self.basis(data);
        let cofs = data.cofactors.as_ref().expect("cofactors tracked");
        let mut syz: Vec<SVec> = Vec::new();

        // e_k - Y h_k
        for (k, col) in self.gens.columns().iter().enumerate() {
            let (rem, steps) = basis.reduce(&ctx, ctx.from_vector(col), None);
            debug_assert!(rem.is_empty());
            let v = cctx.sub_mul(&cctx.unit(k), 1, &Monomial::one(), &cctx.combine(&steps, cofs));
            if !v.is_empty() {
                syz.push(v);
            }
        }

        // images of the Schreyer syzygies of the Gröbner basis
        let g = &data.elems;
        for i in 0..g.len() {
            let li = g[i][0];
            let cands: Vec<(usize, Monomial)> = (i + 1..g.len())
                .filter(|&j| g[j][0].comp == li.comp)
                .map(|j| (j, li.mono.quotient_of(&li.mono.lcm(&g[j][0].mono))))
                .collect();
            // only quotients minimal under divisibility are needed (first of equals)
            let cands: Vec<(usize, Monomial)> = cands
                .iter()
                .filter(|(j, m)| {
                    !cands
                        .iter()
                        .any(|(j2, o)| (o != m && o.divides(m)) || (o == m && j2 < j))
                })
                .copied()
                .collect();
            for (j, mi) in cands {
                let l = li.mono.mul(&mi);
                let mj = g[j][0].mono.quotient_of(&l);
                let s = ctx.sub_mul(&ctx.mul_term(&g[i], 1, &mi), 1, &mj, &g[j]);
                let (rem, steps) = basis.reduce(&ctx, s, None);
                debug_assert!(rem.is_empty());
                let lhs = cctx.sub_mul(&cctx.mul_term(&cofs[i], 1, &mi), 1, &mj, &cofs[j]);
                let v = cctx.sub_mul(&lhs, 1, &Monomial::one(), &cctx.combine(&steps, cofs));
                if !v.is_empty() {
                    syz.push(v);
                }
            }
        }

        let min = buchberger(
            &cctx,
            &syz,
            &GbOptions {
                cofactor_ctx: None,
                ideal: cctx.rank() == 1,
            },
        );
        let mut idx = min.minimal_inputs.clone();
        idx.sort_unstable();
        let cols: Vec<Vector> = idx.iter().map(|&k| cctx.to_vector(&self.ring, &syz[k])).collect();
        ModMatrix::from_columns(self.gens.dom().clone(), cols, 0)
            .expect("syzygies of homogeneous generators are homogeneous")
    }
}

/// Generators of ker(A), minimal when A is homogeneous.
pub fn syzygies(ring: &Ring, a: &ModMatrix) -> ModMatrix {
    Submodule::new(ring, a.clone()).syzygies()
}

/// X with A · X = B, or `NotInImage`.
pub fn lift(ring: &Ring, a: &ModMatrix, b: &ModMatrix) -> Result<ModMatrix> {
    Submodule::new(ring, a.clone()).lift(b)
}

/// Reduced Gröbner basis of an ideal, homogeneous or not, in the ring's order.
pub fn ideal_groebner_basis(ring: &Ring, gens: &[Poly]) -> Vec<Poly> {
    let ctx = Ctx::top(ring, vec![0]);
    let inputs: Vec<SVec> = gens.iter().map(|g| ctx.from_vector(std::slice::from_ref(g))).collect();
    let data = buchberger(
        &ctx,
        &inputs,
        &GbOptions {
            cofactor_ctx: None,
            ideal: true,
        },
    );
    data.elems
        .iter()
        .map(|v| ctx.to_vector(ring, v).pop().unwrap())
        .collect()
}

/// Normal form of f modulo a Gröbner basis `gb` of an ideal (as returned by
/// `ideal_groebner_basis` in the same ring).
pub fn ideal_normal_form(ring: &Ring, gb: &[Poly], f: &Poly) -> Poly {
    let ctx = Ctx::top(ring, vec![0]);
    let elems = gb
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| ctx.from_vector(&[g.monic(ring)]))
        .collect();
    let basis = Basis::from_elems(1, elems);
    let (rem, _) = basis.reduce(&ctx, ctx.from_vector(std::slice::from_ref(f)), None);
    ctx.to_vector(ring, &rem).pop().unwrap()
}

/// Generators of I ∩ k[kept variables], returned in `ring` (dropped variables unused).
pub fn elimination_ideal(ring: &Ring, gens: &[Poly], drop: &[usize]) -> Result<Vec<Poly>> {
    let n = ring.nvars();
    if drop.iter().any(|&d| d >= n) {
        return Err(Error::Invalid("elimination variable out of range".into()));
    }
    let mut perm: Vec<usize> = drop.to_vec();
    perm.sort_unstable();
    perm.dedup();
    let k = perm.len();
    perm.extend((0..n).filter(|i| !drop.contains(i)));
    let names = perm.iter().map(|&i| ring.names()[i].clone()).collect();
    let elim = Ring::new(ring.p(), names, MonomialOrder::Elimination(k))?;
    let to_elim: Vec<Poly> = (0..n)
        .map(|i| elim.var(perm.iter().position(|&q| q == i).unwrap()))
        .collect();
    let back: Vec<Poly> = perm.iter().map(|&i| ring.var(i)).collect();
    let mapped: Vec<Poly> = gens.iter().map(|g| g.substitute(ring, &to_elim, &elim)).collect();
    let gb = ideal_groebner_basis(&elim, &mapped);
    Ok(gb
        .into_iter()
        .filter(|g| {
            let lm = g.leading_monomial().unwrap();
            (0..k).all(|v| lm.exp(v) == 0)
        })
        .map(|g| g.substitute(&elim, &back, ring))
        .collect())
}

/// dim_k (R/I)_d, counting standard monomials of a Gröbner basis.
pub fn quotient_piece_dim(ring: &Ring, gens: &[Poly], d: i64) -> usize {
    let leads: Vec<Monomial> = ideal_groebner_basis(ring, gens)
        .iter()
        .filter_map(Poly::leading_monomial)
        .collect();
    crate::polyring::monomial::monomials_of_degree(ring.nvars(), d, ring.order())
        .iter()
        .filter(|m| !leads.iter().any(|l| l.divides(m)))
        .count()
}

/// Generators of I^{[p^e]}: the p^e-th powers of the given generators.
pub fn bracket_power(ring: &Ring, gens: &[Poly], e: u32) -> Vec<Poly> {
    gens.iter()
        .map(|g| (0..e).fold(g.clone(), |acc, _| acc.frobenius(ring)))
        .collect()
}
