//! Free resolutions by iterated Schreyer frames, and unit-pruning minimization.

use std::sync::Arc;

use super::{ChainComplex, Kind};
use crate::error::{Error, Result};
use crate::groebner::{Basis, Ctx, ModuleOrder, SVec, SchreyerFrame, Submodule, Term};
use crate::polyring::{FreeModule, ModMatrix, Monomial, Poly, Ring};

/// coker(relations: F_1 -> generators).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: FreeModule,
    relations: ModMatrix,
}

impl Presentation {
    pub fn new(generators: FreeModule, relations: ModMatrix) -> Result<Self> {
        if relations.cod() != &generators {
            return Err(Error::Shape("relations must map into the generators".into()));
        }
        Ok(Presentation {
            generators,
            relations,
        })
    }

    /// R/I for homogeneous generators of I.
    pub fn quotient_ring(ring: &Ring, gens: &[Poly]) -> Result<Self> {
        let r0 = FreeModule::new(vec![0]);
        let mut cols = Vec::new();
        for (k, g) in gens.iter().enumerate() {
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous(format!(
                    "generator {} ({}) is not homogeneous",
                    k + 1,
                    ring.fmt_poly(g)
                )));
            }
            if !g.is_zero() {
                cols.push(vec![g.clone()]);
            }
        }
        let rel = ModMatrix::from_columns(r0.clone(), cols, 0)?;
        Presentation::new(r0, rel)
    }

    pub fn free(f: FreeModule) -> Self {
        let rel = ModMatrix::zero(FreeModule::zero(), f.clone());
        Presentation {
            generators: f,
            relations: rel,
        }
    }

    pub fn generators(&self) -> &FreeModule {
        &self.generators
    }

    pub fn relations(&self) -> &ModMatrix {
        &self.relations
    }
}

/// Sort by leading component, then leading monomial lex-descending; this is the
/// ordering under which successive Schreyer frames lose one variable per level.
fn sort_level(v: &mut [SVec], nvars: usize) {
    v.sort_by(|a, b| {
        let (la, lb) = (a[0], b[0]);
        la.comp.cmp(&lb.comp).then_with(|| {
            crate::polyring::MonomialOrder::Lex
                .cmp(&lb.mono, &la.mono, nvars)
        })
    });
}

/// A free resolution F_• -> M with F_0 the presentation's generators.
///
/// Exact by Schreyer's theorem; with `minimize`, unit entries in d_t, t ≥ 2,
/// are cancelled.
pub fn free_resolution(ring: &Ring, pres: &Presentation, minimize_flag: bool) -> Result<ChainComplex> {
    let nvars = ring.nvars();
    let f0 = pres.generators.clone();
    let ctx0 = Ctx::top(ring, f0.degrees().to_vec());
    let sub = Submodule::new(ring, pres.relations.clone());
    let mut gens: Vec<SVec> = sub.gb_data().elems.clone();
    sort_level(&mut gens, nvars);

    let mut modules = vec![f0];
    let mut maps = Vec::new();
    let mut ctx_prev = ctx0;
    let mut prev_rank: Option<Vec<u32>> = None;

    while !gens.is_empty() {
        if maps.len() > nvars + 1 {
            return Err(Error::Invalid("resolution did not terminate".into()));
        }
        let degrees: Vec<i64> = gens.iter().map(|g| ctx_prev.term_degree(&g[0])).collect();
        let cols = gens.iter().map(|g| ctx_prev.to_vector(ring, g)).collect();
        let fmod = FreeModule::new(degrees.clone());
        maps.push(ModMatrix::new(fmod.clone(), modules.last().unwrap().clone(), cols)?);
        modules.push(fmod);

        // Schreyer order on the new free module
        let abs: Vec<(Monomial, u32)> = gens
            .iter()
            .map(|g| ctx_prev.order.absolute(&g[0].mono, g[0].comp))
            .collect();
        let rank: Vec<u32> = match &prev_rank {
            None => (0..gens.len() as u32).collect(),
            Some(pr) => {
                let mut idx: Vec<usize> = (0..gens.len()).collect();
                idx.sort_by_key(|&a| (pr[gens[a][0].comp as usize], a));
                let mut rank = vec![0u32; gens.len()];
                for (pos, &a) in idx.iter().enumerate() {
                    rank[a] = pos as u32;
                }
                rank
            }
        };
        let frame = SchreyerFrame {
            base: ModuleOrder::Top(ring.order()),
            abs,
            rank: rank.clone(),
        };
        let ctx_new = Ctx::new(ring, ModuleOrder::Schreyer(Arc::new(frame)), degrees);

        let basis = Basis::from_elems(ctx_prev.rank(), gens.clone());
        let mut next: Vec<SVec> = Vec::new();
        for i in 0..gens.len() {
            let li = gens[i][0];
            let cands: Vec<(usize, Monomial)> = (i + 1..gens.len())
                .filter(|&j| gens[j][0].comp == li.comp)
                .map(|j| (j, li.mono.quotient_of(&li.mono.lcm(&gens[j][0].mono))))
                .collect();
            for &(j, mi) in &cands {
                if cands
                    .iter()
                    .any(|&(j2, o)| (o != mi && o.divides(&mi)) || (o == mi && j2 < j))
                {
                    continue;
                }
                let lcm = li.mono.mul(&mi);
                let mj = gens[j][0].mono.quotient_of(&lcm);
                let s = ctx_prev.sub_mul(&ctx_prev.mul_term(&gens[i], 1, &mi), 1, &mj, &gens[j]);
                let (rem, steps) = basis.reduce(&ctx_prev, s, None);
                if !rem.is_empty() {
                    return Err(Error::NotInImage("S-vector of a Gröbner basis did not reduce to zero".into()));
                }
                let neg = |c: u32| ctx_prev.field.neg(c);
                let mut terms = vec![
                    Term { mono: mi, comp: i as u32, coeff: 1 },
                    Term { mono: mj, comp: j as u32, coeff: neg(1) },
                ];
                terms.extend(steps.iter().map(|(k, q, c)| Term {
                    mono: *q,
                    comp: *k as u32,
                    coeff: neg(*c),
                }));
                let tau = ctx_new.normalize(terms);
                debug_assert!(tau[0].comp == i as u32 && tau[0].mono == mi && tau[0].coeff == 1);
                next.push(tau);
            }
        }
        sort_level(&mut next, nvars);
        gens = next;
        ctx_prev = ctx_new;
        prev_rank = Some(rank);
    }

    let c = ChainComplex::new(ring, Kind::Homological, modules, maps)?;
    Ok(if minimize_flag { minimize(ring, &c) } else { c })
}

/// Cancel unit entries of d_t for t ≥ 2; F_0 and the image of d_1 are unchanged,
/// and the result is homotopy equivalent to the input.
pub fn minimize(ring: &Ring, c: &ChainComplex) -> ChainComplex {
    assert_eq!(c.kind(), Kind::Homological);
    let f = ring.field();
    let mut modules: Vec<Vec<i64>> = c.modules().iter().map(|m| m.degrees().to_vec()).collect();
    // maps[t-1] = d_t stored as columns
    let mut maps: Vec<Vec<Vec<Poly>>> = c.maps().iter().map(|m| m.columns().to_vec()).collect();

    loop {
        let mut found = None;
        'search: for t in 2..=maps.len() {
            for (col, v) in maps[t - 1].iter().enumerate() {
                for (row, e) in v.iter().enumerate() {
                    if let Some(u) = e.as_unit() {
                        found = Some((t, row, col, u));
                        break 'search;
                    }
                }
            }
        }
        let Some((t, r, cc, u)) = found else { break };
        let uinv = f.inv(u);
        let d = &mut maps[t - 1];
        let pivot_col = d[cc].clone();
        for (s, col) in d.iter_mut().enumerate() {
            if s == cc || col[r].is_zero() {
                continue;
            }
            let factor = col[r].scale(ring, uinv);
            for (row, pe) in pivot_col.iter().enumerate() {
                if !pe.is_zero() {
                    col[row] = col[row].sub(ring, &pe.mul(ring, &factor));
                }
            }
        }
        d.remove(cc);
        for col in d.iter_mut() {
            col.remove(r);
        }
        if t < maps.len() {
            for col in maps[t].iter_mut() {
                col.remove(cc);
            }
        }
        if t >= 2 {
            maps[t - 2].remove(r);
        }
        modules[t].remove(cc);
        modules[t - 1].remove(r);
    }

    while modules.len() > 1 && modules.last().unwrap().is_empty() {
        modules.pop();
        maps.pop();
    }
    let modules: Vec<FreeModule> = modules.into_iter().map(FreeModule::new).collect();
    let maps = maps
        .into_iter()
        .enumerate()
        .map(|(t, cols)| ModMatrix::new_unchecked(modules[t + 1].clone(), modules[t].clone(), cols))
        .collect();
    ChainComplex::new_unchecked(Kind::Homological, modules, maps)
}
