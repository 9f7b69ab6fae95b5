//! Subquotients span(cycles) / span(boundaries) of a free module, with cycle
//! representatives kept in the ambient module.

use std::collections::HashMap;

use super::{ChainComplex, Presentation};
use crate::error::{Error, Result};
use crate::groebner::syzygies;
use crate::linalg::SpanSolver;
use crate::polyring::monomial::monomials_of_degree;
use crate::polyring::{FreeModule, ModMatrix, Monomial, Poly, Ring, Vector};

/// M = span(cycles) / span(boundaries) inside `ambient`, presented on the cycle
/// generators by `relations`.
///
/// Invariant: boundaries ⊆ span(cycles); a vector r lies in the column span of
/// `relations` iff Σ r_k cycles_k is a boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubquotientPresentation {
    ring: Ring,
    cycles: ModMatrix,
    boundaries: ModMatrix,
    relations: ModMatrix,
}

impl SubquotientPresentation {
    /// Relations are the top block of ker[cycles | boundaries]. Generators that are
    /// boundaries are dropped; with `prune_units` every generator killed by a
    /// relation with a unit coefficient is eliminated.
    pub fn new(ring: &Ring, cycles: ModMatrix, boundaries: ModMatrix, prune_units: bool) -> Result<Self> {
        if cycles.cod() != boundaries.cod() {
            return Err(Error::Shape("cycles and boundaries live in different modules".into()));
        }
        let ncyc = cycles.ncols();
        let stacked = ModMatrix::hstack(&[&cycles, &boundaries])?;
        let syz = syzygies(ring, &stacked);
        let rel = syz.row_block(0..ncyc);
        let mut gens: Vec<i64> = cycles.dom().degrees().to_vec();
        let mut cyc: Vec<Vector> = cycles.columns().to_vec();
        let mut rels: Vec<Vector> = rel.columns().iter().filter(|c| c.iter().any(|e| !e.is_zero())).cloned().collect();

        let f = ring.field();
        loop {
            // (relation column, generator row, unit)
            let mut found = None;
            for (c, col) in rels.iter().enumerate() {
                let nz: Vec<usize> = (0..col.len()).filter(|&r| !col[r].is_zero()).collect();
                let pure = nz.len() == 1;
                for &r in &nz {
                    if let Some(u) = col[r].as_unit() {
                        if prune_units || pure {
                            found = Some((c, r, u));
                            break;
                        }
                    }
                }
                if found.is_some() {
                    break;
                }
            }
            let Some((c, r, u)) = found else { break };
            let rho = rels.remove(c);
            let uinv = f.inv(u);
            for col in rels.iter_mut() {
                let a = col[r].clone();
                if !a.is_zero() {
                    let factor = a.scale(ring, uinv);
                    for (row, pe) in rho.iter().enumerate() {
                        if !pe.is_zero() {
                            col[row] = col[row].sub(ring, &pe.mul(ring, &factor));
                        }
                    }
                }
                col.remove(r);
            }
            rels.retain(|col| col.iter().any(|e| !e.is_zero()));
            gens.remove(r);
            cyc.remove(r);
        }

        let gen_module = FreeModule::new(gens);
        let cycles = ModMatrix::new(gen_module.clone(), cycles.cod().clone(), cyc)?;
        let relations = ModMatrix::from_columns(gen_module, rels, 0)?;
        Ok(SubquotientPresentation {
            ring: ring.clone(),
            cycles,
            boundaries,
            relations,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ambient(&self) -> &FreeModule {
        self.cycles.cod()
    }

    pub fn cycles(&self) -> &ModMatrix {
        &self.cycles
    }

    pub fn boundaries(&self) -> &ModMatrix {
        &self.boundaries
    }

    pub fn relations(&self) -> &ModMatrix {
        &self.relations
    }

    /// Generator degrees of the presentation.
    pub fn gen_degrees(&self) -> &[i64] {
        self.cycles.dom().degrees()
    }

    pub fn num_gens(&self) -> usize {
        self.cycles.ncols()
    }

    pub fn is_zero(&self) -> bool {
        self.num_gens() == 0
    }

    /// The cokernel presentation on the cycle generators.
    pub fn presentation(&self) -> Presentation {
        Presentation::new(self.cycles.dom().clone(), self.relations.clone())
            .expect("relations map into the generator module")
    }

    /// Basis of the degree-d piece.
    pub fn graded_piece(&self, d: i64) -> GradedPiece {
        GradedPiece::new(self, d)
    }

    pub fn piece_dim(&self, d: i64) -> usize {
        self.graded_piece(d).dim()
    }
}

/// Homology of `c` at spot t.
pub fn homology_presentation(ring: &Ring, c: &ChainComplex, t: usize, prune_units: bool) -> Result<SubquotientPresentation> {
    let ambient = c.module(t);
    let out = c.outgoing(t);
    let cycles = if out.nrows() == 0 {
        ModMatrix::identity(ring, &ambient)
    } else {
        syzygies(ring, &out)
    };
    SubquotientPresentation::new(ring, cycles, c.incoming(t), prune_units)
}

/// A k-basis of M_d: classes of monomial multiples of cycle generators, each
/// with its ambient representative.
#[derive(Debug, Clone)]
pub struct GradedPiece {
    degree: i64,
    ambient: FreeModule,
    index: HashMap<(usize, Monomial), usize>,
    /// boundary span first, then the basis
    solver: SpanSolver,
    nboundary: usize,
    reps: Vec<Vector>,
    /// (generator, monomial) producing each representative
    labels: Vec<(usize, Monomial)>,
}

impl GradedPiece {
    fn new(m: &SubquotientPresentation, d: i64) -> Self {
        let ring = &m.ring;
        let ambient = m.ambient().clone();
        let basis = ambient.piece_basis(ring, d);
        let index: HashMap<(usize, Monomial), usize> =
            basis.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut solver = SpanSolver::new(ring.field(), basis.len());
        let mut piece = GradedPiece {
            degree: d,
            ambient,
            index,
            solver: SpanSolver::new(ring.field(), 0),
            nboundary: 0,
            reps: Vec::new(),
            labels: Vec::new(),
        };
        for (s, b) in m.boundaries.columns().iter().enumerate() {
            let e = m.boundaries.dom().degree(s);
            for mono in monomials_of_degree(ring.nvars(), d - e, ring.order()) {
                let v = piece.dense_of(&mono, b);
                solver.try_push(&v);
            }
        }
        piece.nboundary = solver.rank();
        for (k, z) in m.cycles.columns().iter().enumerate() {
            let e = m.cycles.dom().degree(k);
            for mono in monomials_of_degree(ring.nvars(), d - e, ring.order()) {
                let v = piece.dense_of(&mono, z);
                if solver.try_push(&v) {
                    let mp = Poly::monomial(ring, mono, 1);
                    piece.reps.push(z.iter().map(|f| f.mul(ring, &mp)).collect());
                    piece.labels.push((k, mono));
                }
            }
        }
        piece.solver = solver;
        piece
    }

    /// Dense coordinates of mono * v over the ambient degree-d monomial basis.
    fn dense_of(&self, mono: &Monomial, v: &[Poly]) -> Vec<u32> {
        let mut out = vec![0u32; self.index.len()];
        for (c, f) in v.iter().enumerate() {
            for (m, coeff) in f.terms() {
                let key = (c, m.mul(mono));
                out[self.index[&key]] = *coeff;
            }
        }
        out
    }

    /// Dense coordinates of a homogeneous ambient vector of this degree.
    pub fn dense(&self, v: &[Poly]) -> Result<Vec<u32>> {
        let mut out = vec![0u32; self.index.len()];
        for (c, f) in v.iter().enumerate() {
            for (m, coeff) in f.terms() {
                match self.index.get(&(c, *m)) {
                    Some(&i) => out[i] = *coeff,
                    None => {
                        return Err(Error::Shape(format!(
                            "vector is not homogeneous of degree {}",
                            self.degree
                        )))
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn ambient(&self) -> &FreeModule {
        &self.ambient
    }

    pub fn representatives(&self) -> &[Vector] {
        &self.reps
    }

    pub fn labels(&self) -> &[(usize, Monomial)] {
        &self.labels
    }

    /// Coordinates in the basis of the class of an ambient cycle of this degree;
    /// `NotInSpan` if it is not in span(cycles) + boundaries.
    pub fn coordinates(&self, v: &[Poly]) -> Result<Vec<u32>> {
        let dense = self.dense(v)?;
        let c = self.solver.solve(&dense)?;
        Ok(c[self.nboundary..].to_vec())
    }

    /// Whether an ambient vector of this degree is a boundary.
    pub fn is_boundary(&self, v: &[Poly]) -> Result<bool> {
        Ok(self.coordinates(v)?.iter().all(|&x| x == 0))
    }
}
