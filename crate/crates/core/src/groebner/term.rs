//! Sparse module vectors and module monomial orders.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::linalg::Fp;
use crate::polyring::{Monomial, MonomialOrder, Poly, Ring};

/// c * m * e_comp
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub mono: Monomial,
    pub comp: u32,
    pub coeff: u32,
}

/// A module element as terms sorted strictly descending in some module order,
/// with no zero coefficients.
pub type SVec = Vec<Term>;

/// Order on module monomials m * e_i.
#[derive(Debug, Clone)]
pub enum ModuleOrder {
    /// Monomial first, then lower component index is greater.
    Top(MonomialOrder),
    /// Lower component index first, then monomial.
    Pot(MonomialOrder),
    Schreyer(Arc<SchreyerFrame>),
}

/// Order induced on F_t by the leading terms of the columns of d_t: m e_i > n e_j
/// iff the base-order image of m * lead(e_i) beats n * lead(e_j), ties broken by
/// `rank` (smaller is greater).
#[derive(Debug, Clone)]
pub struct SchreyerFrame {
    pub base: ModuleOrder,
    /// Leading term of each generator, pushed all the way down to F_0.
    pub abs: Vec<(Monomial, u32)>,
    pub rank: Vec<u32>,
}

impl ModuleOrder {
    #[inline]
    pub fn cmp(&self, nvars: usize, a: (&Monomial, u32), b: (&Monomial, u32)) -> Ordering {
        match self {
            ModuleOrder::Top(o) => o.cmp(a.0, b.0, nvars).then(b.1.cmp(&a.1)),
            ModuleOrder::Pot(o) => b.1.cmp(&a.1).then_with(|| o.cmp(a.0, b.0, nvars)),
            ModuleOrder::Schreyer(f) => {
                let (ma, ca) = f.abs[a.1 as usize];
                let (mb, cb) = f.abs[b.1 as usize];
                f.base
                    .cmp(nvars, (&a.0.mul(&ma), ca), (&b.0.mul(&mb), cb))
                    .then_with(|| f.rank[b.1 as usize].cmp(&f.rank[a.1 as usize]))
            }
        }
    }

    /// Push a term of this module down to the base free module.
    pub fn absolute(&self, m: &Monomial, comp: u32) -> (Monomial, u32) {
        match self {
            ModuleOrder::Schreyer(f) => {
                let (am, ac) = f.abs[comp as usize];
                (m.mul(&am), ac)
            }
            _ => (*m, comp),
        }
    }
}

/// Arithmetic context for vectors in one free module.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub field: Fp,
    pub nvars: usize,
    pub mono_order: MonomialOrder,
    pub order: ModuleOrder,
    /// Generator degrees, used for sugar.
    pub shifts: Vec<i64>,
}

impl Ctx {
    pub fn new(ring: &Ring, order: ModuleOrder, shifts: Vec<i64>) -> Self {
        Ctx {
            field: ring.field(),
            nvars: ring.nvars(),
            mono_order: ring.order(),
            order,
            shifts,
        }
    }

    pub fn top(ring: &Ring, shifts: Vec<i64>) -> Self {
        Ctx::new(ring, ModuleOrder::Top(ring.order()), shifts)
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    #[inline]
    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        self.order
            .cmp(self.nvars, (&a.mono, a.comp), (&b.mono, b.comp))
    }

    #[inline]
    pub fn term_degree(&self, t: &Term) -> i64 {
        t.mono.degree() as i64 + self.shifts[t.comp as usize]
    }

    pub fn sugar(&self, v: &[Term]) -> i64 {
        v.iter().map(|t| self.term_degree(t)).max().unwrap_or(0)
    }

    pub fn from_vector(&self, v: &[Poly]) -> SVec {
        let mut out: SVec = v
            .iter()
            .enumerate()
            .flat_map(|(c, f)| {
                f.terms().iter().map(move |&(mono, coeff)| Term {
                    mono,
                    comp: c as u32,
                    coeff,
                })
            })
            .collect();
        out.sort_by(|a, b| self.cmp(b, a));
        out
    }

    pub fn to_vector(&self, ring: &Ring, v: &[Term]) -> Vec<Poly> {
        let mut parts: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); self.rank()];
        for t in v {
            parts[t.comp as usize].push((t.mono, t.coeff));
        }
        parts.into_iter().map(|ts| Poly::from_terms(ring, ts)).collect()
    }

    /// Canonicalize an unsorted term list.
    pub fn normalize(&self, mut v: Vec<Term>) -> SVec {
        v.sort_by(|a, b| self.cmp(b, a));
        let mut out: SVec = Vec::with_capacity(v.len());
        for t in v {
            match out.last_mut() {
                Some(l) if l.mono == t.mono && l.comp == t.comp => {
                    l.coeff = self.field.add(l.coeff, t.coeff)
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coeff != 0);
        out
    }

    /// a - c * m * b
    pub fn sub_mul(&self, a: &[Term], c: u32, m: &Monomial, b: &[Term]) -> SVec {
        let f = self.field;
        let nc = f.neg(c);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let shifted = |t: &Term| Term {
            mono: t.mono.mul(m),
            comp: t.comp,
            coeff: f.mul(t.coeff, nc),
        };
        while i < a.len() && j < b.len() {
            let bj = shifted(&b[j]);
            match self.cmp(&a[i], &bj) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(bj);
                    j += 1;
                }
                Ordering::Equal => {
                    let s = f.add(a[i].coeff, bj.coeff);
                    if s != 0 {
                        out.push(Term { coeff: s, ..a[i] });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(shifted));
        out
    }

    pub fn add(&self, a: &[Term], b: &[Term]) -> SVec {
        self.sub_mul(a, self.field.neg(1), &Monomial::one(), b)
    }

    pub fn scale(&self, v: &[Term], c: u32) -> SVec {
        if c == 0 {
            return Vec::new();
        }
        v.iter()
            .map(|t| Term {
                coeff: self.field.mul(t.coeff, c),
                ..*t
            })
            .collect()
    }

    pub fn mul_term(&self, v: &[Term], c: u32, m: &Monomial) -> SVec {
        if c == 0 {
            return Vec::new();
        }
        v.iter()
            .map(|t| Term {
                mono: t.mono.mul(m),
                comp: t.comp,
                coeff: self.field.mul(t.coeff, c),
            })
            .collect()
    }

    pub fn monic(&self, v: &[Term]) -> SVec {
        match v.first() {
            None => Vec::new(),
            Some(t) => self.scale(v, self.field.inv(t.coeff)),
        }
    }

    pub fn unit(&self, comp: usize) -> SVec {
        vec![Term {
            mono: Monomial::one(),
            comp: comp as u32,
            coeff: 1,
        }]
    }

    /// Sum of c * m * basis[i] over the steps.
    pub fn combine(&self, steps: &[(usize, Monomial, u32)], basis: &[SVec]) -> SVec {
        let mut acc: Vec<Term> = Vec::new();
        for (i, m, c) in steps {
            acc.extend(self.mul_term(&basis[*i], *c, m));
        }
        self.normalize(acc)
    }
}
