//! Division and Buchberger's algorithm on sparse module vectors.

use std::collections::BTreeSet;

use super::term::{Ctx, SVec, Term};
use crate::polyring::Monomial;

/// One division step: subtract c * m * basis[idx].
pub type Step = (usize, Monomial, u32);

/// Monic vectors indexed by the component of their leading term.
#[derive(Debug, Clone, Default)]
pub struct Basis {
    pub elems: Vec<SVec>,
    by_comp: Vec<Vec<usize>>,
    active: Vec<bool>,
}

impl Basis {
    pub fn new(rank: usize) -> Self {
        Basis {
            elems: Vec::new(),
            by_comp: vec![Vec::new(); rank],
            active: Vec::new(),
        }
    }

    /// `elems` must be monic and nonzero.
    pub fn from_elems(rank: usize, elems: Vec<SVec>) -> Self {
        let mut b = Basis::new(rank);
        for e in elems {
            b.push(e);
        }
        b
    }

    pub fn push(&mut self, v: SVec) -> usize {
        debug_assert!(v.first().is_some_and(|t| t.coeff == 1));
        let idx = self.elems.len();
        self.by_comp[v[0].comp as usize].push(idx);
        self.elems.push(v);
        self.active.push(true);
        idx
    }

    pub fn lead(&self, i: usize) -> &Term {
        &self.elems[i][0]
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn deactivate(&mut self, i: usize) {
        self.active[i] = false;
    }

    pub fn is_active(&self, i: usize) -> bool {
        self.active[i]
    }

    fn divisor(&self, t: &Term, skip: Option<usize>) -> Option<usize> {
        self.by_comp[t.comp as usize]
            .iter()
            .copied()
            .find(|&i| self.active[i] && Some(i) != skip && self.elems[i][0].mono.divides(&t.mono))
    }

    /// Full division of `v`; the remainder has no term divisible by an active lead.
    pub fn reduce(&self, ctx: &Ctx, v: SVec, skip: Option<usize>) -> (SVec, Vec<Step>) {
        self.reduce_impl(ctx, v, skip, true)
    }

    /// Division of leading terms only.
    pub fn reduce_lead(&self, ctx: &Ctx, v: SVec) -> (SVec, Vec<Step>) {
        self.reduce_impl(ctx, v, None, false)
    }

    fn reduce_impl(&self, ctx: &Ctx, v: SVec, skip: Option<usize>, full: bool) -> (SVec, Vec<Step>) {
        let mut rem = Vec::new();
        let mut steps = Vec::new();
        let mut cur = v;
        let mut pos = 0;
        while pos < cur.len() {
            let t = cur[pos];
            match self.divisor(&t, skip) {
                Some(g) => {
                    let q = self.elems[g][0].mono.quotient_of(&t.mono);
                    cur = ctx.sub_mul(&cur[pos..], t.coeff, &q, &self.elems[g]);
                    pos = 0;
                    steps.push((g, q, t.coeff));
                }
                None if full => {
                    rem.push(t);
                    pos += 1;
                }
                None => {
                    rem.extend_from_slice(&cur[pos..]);
                    break;
                }
            }
        }
        (rem, steps)
    }
}

/// Result of a Buchberger run.
#[derive(Debug, Clone)]
pub struct GbData {
    /// Reduced Gröbner basis, monic, sorted by leading term descending.
    pub elems: Vec<SVec>,
    /// `elems[l] = Σ_k cofactors[l][k] * input_k`, as vectors over the input index set.
    pub cofactors: Option<Vec<SVec>>,
    /// Inputs that did not reduce to zero when processed. For homogeneous
    /// input this is a minimal generating set.
    pub minimal_inputs: Vec<usize>,
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Options for `buchberger`.
#[derive(Debug, Clone)]
pub struct GbOptions {
    /// Context for cofactor vectors over the input index set; `None` disables tracking.
    pub cofactor_ctx: Option<Ctx>,
    /// Enables the coprime-leads criterion, which only holds in rank one.
    pub ideal: bool,
}

/// Gröbner basis of the submodule generated by `inputs`, processed by sugar.
pub fn buchberger(ctx: &Ctx, inputs: &[SVec], opts: &GbOptions) -> GbData {
    let track = opts.cofactor_ctx.as_ref();
    let mut basis = Basis::new(ctx.rank());
    let mut cofs: Vec<SVec> = Vec::new();
    let mut sugars: Vec<i64> = Vec::new();
    let mut minimal_inputs = Vec::new();

    // queue key: (sugar, kind, a, b); kind 0 = pair (a = j, b = i), 1 = input (a = index)
    let mut queue: BTreeSet<(i64, u8, usize, usize)> = BTreeSet::new();
    let mut pairs: std::collections::HashMap<(usize, usize), Pair> = Default::default();
    for (k, v) in inputs.iter().enumerate() {
        if !v.is_empty() {
            queue.insert((ctx.sugar(v), 1, k, 0));
        }
    }

    while let Some(key) = queue.pop_first() {
        let (sugar, kind, a, b) = key;
        let (v, cof) = if kind == 1 {
            let cof = track.map(|c| c.unit(a));
            (inputs[a].clone(), cof)
        } else {
            let Some(pair) = pairs.remove(&(b, a)) else {
                continue;
            };
            let (gi, gj) = (&basis.elems[pair.i], &basis.elems[pair.j]);
            let mi = gi[0].mono.quotient_of(&pair.lcm);
            let mj = gj[0].mono.quotient_of(&pair.lcm);
            let s = ctx.sub_mul(&ctx.mul_term(gi, 1, &mi), 1, &mj, gj);
            let cof = track.map(|c| {
                c.sub_mul(&c.mul_term(&cofs[pair.i], 1, &mi), 1, &mj, &cofs[pair.j])
            });
            (s, cof)
        };
        let (rem, steps) = basis.reduce(ctx, v, None);
        if rem.is_empty() {
            continue;
        }
        if kind == 1 {
            minimal_inputs.push(a);
        }
        let inv = ctx.field.inv(rem[0].coeff);
        let rem = ctx.scale(&rem, inv);
        if let (Some(c), Some(cof)) = (track, cof) {
            let red = c.combine(&steps, &cofs);
            let cof = c.sub_mul(&cof, 1, &Monomial::one(), &red);
            cofs.push(c.scale(&cof, inv));
        }
        let k = basis.push(rem);
        sugars.push(sugar);
        update_pairs(&basis, &sugars, k, opts.ideal, &mut pairs, &mut queue);
    }

    // minimalize
    let n = basis.len();
    let mut keep = vec![true; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && keep[j] {
                let (li, lj) = (basis.lead(i), basis.lead(j));
                if li.comp == lj.comp && lj.mono.divides(&li.mono) && (lj.mono != li.mono || j < i) {
                    keep[i] = false;
                    break;
                }
            }
        }
    }
    for (i, &k) in keep.iter().enumerate() {
        if !k {
            basis.deactivate(i);
        }
    }
    // tail reduction against the other minimal elements
    let mut out: Vec<(SVec, Option<SVec>)> = Vec::new();
    for i in (0..n).filter(|&i| keep[i]) {
        let (rem, steps) = basis.reduce(ctx, basis.elems[i].clone(), Some(i));
        let cof = track.map(|c| {
            let red = c.combine(&steps, &cofs);
            c.sub_mul(&cofs[i], 1, &Monomial::one(), &red)
        });
        out.push((rem, cof));
    }
    out.sort_by(|a, b| ctx.cmp(&b.0[0], &a.0[0]));
    let (elems, cofs): (Vec<SVec>, Vec<Option<SVec>>) = out.into_iter().unzip();
    GbData {
        elems,
        cofactors: track.map(|_| cofs.into_iter().map(Option::unwrap).collect()),
        minimal_inputs,
    }
}

fn update_pairs(
    basis: &Basis,
    sugars: &[i64],
    k: usize,
    ideal: bool,
    pairs: &mut std::collections::HashMap<(usize, usize), Pair>,
    queue: &mut BTreeSet<(i64, u8, usize, usize)>,
) {
    let lk = *basis.lead(k);
    // chain criterion on existing pairs
    let doomed: Vec<(usize, usize)> = pairs
        .iter()
        .filter(|(_, p)| {
            basis.lead(p.i).comp == lk.comp
                && lk.mono.divides(&p.lcm)
                && basis.lead(p.i).mono.lcm(&lk.mono) != p.lcm
                && basis.lead(p.j).mono.lcm(&lk.mono) != p.lcm
        })
        .map(|(key, _)| *key)
        .collect();
    for key in doomed {
        pairs.remove(&key);
    }

    let mut cand: Vec<(usize, Monomial, bool)> = (0..k)
        .filter(|&i| basis.lead(i).comp == lk.comp)
        .map(|i| {
            let li = basis.lead(i).mono;
            (i, li.lcm(&lk.mono), li.is_coprime(&lk.mono))
        })
        .collect();
    // keep only pairs whose lcm is minimal under divisibility
    let lcms: Vec<Monomial> = cand.iter().map(|c| c.1).collect();
    cand.retain(|(_, l, _)| !lcms.iter().any(|o| o != l && o.divides(l)));
    // one pair per lcm; an lcm carried by a coprime pair needs none
    let mut seen: Vec<Monomial> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, (i, l, _)) in cand.iter().enumerate() {
        if seen.contains(l) {
            continue;
        }
        seen.push(*l);
        let group: Vec<&(usize, Monomial, bool)> = cand[idx..].iter().filter(|c| c.1 == *l).collect();
        if ideal && group.iter().any(|c| c.2) {
            continue;
        }
        chosen.push((*i, *l));
    }
    for (i, l) in chosen {
        let di = l.degree() as i64 - basis.lead(i).mono.degree() as i64;
        let dk = l.degree() as i64 - lk.mono.degree() as i64;
        let sugar = (sugars[i] + di).max(sugars[k] + dk);
        pairs.insert((i, k), Pair { i, j: k, lcm: l });
        queue.insert((sugar, 0, k, i));
    }
}
