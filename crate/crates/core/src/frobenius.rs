//! The Frobenius pullback F^* on matrices and complexes, the root map
//! F^*P -> P over R/I^[p] -> R/I, and the p-linear structure φ on E^{i,j}(R/I).

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::ext::{ext_functorial_map, lift_chain_map, DoubleExt, ExtResult, Resolution};
use crate::groebner::{bracket_power, Submodule};
use crate::homology::{ChainComplex, GradedPiece, Presentation};
use crate::linalg::{DenseMatrix, PLinearEndo};
use crate::polyring::monomial::monomials_of_degree;
use crate::polyring::{FreeModule, ModMatrix, Poly, Ring, Vector};

/// F^* on a homogeneous matrix: entries to p-th powers, generator degrees times p.
pub fn fstar_matrix(ring: &Ring, a: &ModMatrix) -> ModMatrix {
    a.frobenius(ring)
}

/// F^* on a complex; exact by Kunz, so a resolution of R/I goes to one of R/I^[p].
pub fn fstar_complex(ring: &Ring, c: &ChainComplex) -> ChainComplex {
    c.frobenius(ring)
}

/// A chain map c_•: F^*P_• -> P_• lifting R/I^[p] -> R/I.
///
/// Invariant: d_t c_t = c_{t-1} F^*(d_t) for every t ≥ 1, c_0 the identity of R.
#[derive(Debug)]
pub struct FrobeniusLift {
    source: ChainComplex,
    target: Arc<Resolution>,
    maps: Vec<ModMatrix>,
}

impl FrobeniusLift {
    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &Arc<Resolution> {
        &self.target
    }

    pub fn maps(&self) -> &[ModMatrix] {
        &self.maps
    }

    /// c_t; zero outside the resolution.
    pub fn map(&self, t: usize) -> ModMatrix {
        self.maps
            .get(t)
            .cloned()
            .unwrap_or_else(|| ModMatrix::zero(self.source.module(t), self.target.complex().module(t)))
    }

    /// Recheck the commutation with the differentials exactly.
    pub fn verify(&self, ring: &Ring) -> Result<()> {
        let p = self.target.complex();
        for t in 1..self.maps.len() {
            let lhs = p.outgoing(t).mul(ring, &self.maps[t])?;
            let rhs = self.maps[t - 1].mul(ring, &self.source.outgoing(t))?;
            if lhs != rhs {
                return Err(Error::NotInImage(format!("root map does not commute at spot {t}")));
            }
        }
        Ok(())
    }
}

/// Lift the identity of R, read as F^*(R/I) = R/I^[p] -> R/I, along a resolution of R/I.
pub fn frobenius_root_map(ring: &Ring, res: Arc<Resolution>) -> Result<FrobeniusLift> {
    let p = res.complex();
    let r0 = FreeModule::new(vec![0]);
    if p.module(0) != r0 {
        return Err(Error::Invalid("the resolution must start with R in degree 0".into()));
    }
    let source = fstar_complex(ring, p);
    let c0 = ModMatrix::identity(ring, &r0);
    let maps = lift_chain_map(ring, &source, &res, c0, p.len().saturating_sub(1))?;
    Ok(FrobeniusLift { source, target: res, maps })
}

fn twist_error(e: Error, what: &str) -> Error {
    match e {
        Error::Shape(m) => Error::TwistMismatch(format!("{what}: {m}")),
        other => other,
    }
}

/// The Frobenius data on T = Ext^{N-j}(R/I, Ω) shared by every cell in column j.
///
/// T' = Ext^{N-j}(R/I^[p], Ω) is presented on the Frobenius images of the cycle
/// generators of T, with generator degrees p·δ - (p-1)N. `u`: T -> T' is induced
/// by the root map; `q` lifts it to Q_• -> F^*Q_•((p-1)N).
#[derive(Debug)]
pub struct InnerFrobenius {
    pub j: usize,
    pub inner: Arc<ExtResult>,
    /// (p-1)N
    pub twist: i64,
    pub u: ModMatrix,
    pub res_t: Arc<Resolution>,
    pub twisted: Arc<Resolution>,
    pub q: Vec<ModMatrix>,
}

/// How resolutions are obtained: computed directly or through a cache.
pub type Resolver<'a> = &'a (dyn Fn(&Ring, &Presentation, bool) -> Result<Resolution> + Sync);

fn compute_resolution(ring: &Ring, pres: &Presentation, minimize: bool) -> Result<Resolution> {
    Resolution::compute(ring, pres, minimize)
}

impl InnerFrobenius {
    pub fn new(ring: &Ring, root: &FrobeniusLift, j: usize, minimize: bool) -> Result<Self> {
        Self::with_resolver(ring, root, j, minimize, &compute_resolution)
    }

    pub fn with_resolver(ring: &Ring, root: &FrobeniusLift, j: usize, minimize: bool, resolve: Resolver) -> Result<Self> {
        let n = ring.nvars();
        if j > n {
            return Err(Error::Invalid(format!("index j = {j} outside 0..={n}")));
        }
        let inner = crate::ext::inner_layer(ring, root.target().clone(), j, minimize)?;
        let t = n - j;
        let twist = (ring.p() as i64 - 1) * n as i64;

        let zc = inner.module().cycles();
        let b = inner.module().boundaries();
        let cdual = root.map(t).dual_into(n as i64);
        let images = cdual.mul(ring, zc)?;
        let fzc = zc.frobenius(ring).twist(twist);
        let fb = b.frobenius(ring).twist(twist);
        if fzc.cod() != images.cod() {
            return Err(Error::TwistMismatch(format!(
                "Hom(F^*P_{t}, Ω) has degrees {:?}, the twisted Frobenius of Hom(P_{t}, Ω) has {:?}",
                images.cod().degrees(),
                fzc.cod().degrees()
            )));
        }
        let lifter = Submodule::new(ring, ModMatrix::hstack(&[&fzc, &fb])?);
        let x = lifter.lift(&images).map_err(|e| twist_error(e, "u is not degree preserving"))?;
        let u = x.row_block(0..fzc.ncols());

        let res_t = Arc::new(resolve(ring, &inner.module().presentation(), minimize)?);
        let qc = res_t.complex();
        let twisted_c = fstar_complex(ring, qc).twist(twist);
        if twisted_c.module(0) != *u.cod() {
            return Err(Error::TwistMismatch("F^*Q_0 twisted does not match the generators of T'".into()));
        }
        let twisted = Arc::new(Resolution::new(ring, twisted_c));
        let q = lift_chain_map(ring, qc, &twisted, u.clone(), qc.len().saturating_sub(1))?;
        Ok(InnerFrobenius {
            j,
            inner,
            twist,
            u,
            res_t,
            twisted,
            q,
        })
    }

    /// q_s; zero outside the resolution.
    pub fn q_map(&self, s: usize) -> ModMatrix {
        self.q.get(s).cloned().unwrap_or_else(|| {
            ModMatrix::zero(self.res_t.complex().module(s), self.twisted.complex().module(s))
        })
    }

    /// The cell (i, j): E^{i,j} with its p-linear structure.
    pub fn cell(&self, ring: &Ring, i: usize, minimize: bool) -> Result<PhiStructure> {
        let n = ring.nvars();
        if i > n {
            return Err(Error::Invalid(format!("index i = {i} outside 0..={n}")));
        }
        let base = crate::ext::outer_layer(ring, self.inner.clone(), self.res_t.clone(), i, self.j, minimize)?;
        let s = n - i;
        let q_dual = self.q_map(s).dual_into(n as i64);
        let expected = base.outer.dual().module(s).frobenius(ring.p());
        if q_dual.dom() != &expected {
            return Err(Error::TwistMismatch(format!(
                "Hom(F^*Q_{s}, Ω) has degrees {:?}, expected p times {:?}",
                q_dual.dom().degrees(),
                base.outer.dual().module(s).degrees()
            )));
        }
        let piece = base.module().graded_piece(0);
        let mut cols = Vec::with_capacity(piece.dim());
        for z in piece.representatives() {
            let img = q_dual.apply(ring, &frobenius_vector(ring, z));
            cols.push(piece.coordinates(&img)?);
        }
        let phi0 = PLinearEndo::new(DenseMatrix::from_columns(ring.field(), piece.dim(), &cols))?;
        Ok(PhiStructure {
            ring: ring.clone(),
            base,
            phi0,
            piece,
            q_dual,
            twist: self.twist,
            u: self.u.clone(),
        })
    }
}

fn frobenius_vector(ring: &Ring, z: &[Poly]) -> Vector {
    z.iter().map(|f| f.frobenius(ring)).collect()
}

/// φ on E^{i,j}(R/I) together with its chain-level witness.
#[derive(Debug)]
pub struct PhiStructure {
    ring: Ring,
    pub base: DoubleExt,
    pub phi0: PLinearEndo,
    /// the fixed basis of E^{i,j}_0
    pub piece: GradedPiece,
    /// q_s^T: Hom(F^*Q_s, Ω) = F^*Hom(Q_s, Ω) -> Hom(Q_s, Ω)
    pub q_dual: ModMatrix,
    /// (p-1)N, the shift carried by each Ω layer
    pub twist: i64,
    /// T -> T' on generators
    pub u: ModMatrix,
}

impl PhiStructure {
    pub fn i(&self) -> usize {
        self.base.i
    }

    pub fn j(&self) -> usize {
        self.base.j
    }

    /// φ at chain level on an ambient cycle of Hom(Q_{N-i}, Ω).
    pub fn apply(&self, z: &[Poly]) -> Vector {
        self.q_dual.apply(&self.ring, &frobenius_vector(&self.ring, z))
    }

    /// dim E^{i,j}_0.
    pub fn dim0(&self) -> usize {
        self.piece.dim()
    }

    pub fn stable_rank(&self) -> usize {
        self.phi0.stable_rank()
    }

    /// Images of the degree-d basis are homogeneous of degree p·d and are cycles
    /// whose classes live in E_{pd}.
    pub fn check_degree_scaling(&self, d: i64) -> Result<()> {
        let ring = &self.ring;
        let src = self.base.module().graded_piece(d);
        let target_degree = d * ring.p() as i64;
        let tgt = self.base.module().graded_piece(target_degree);
        let amb = self.base.module().ambient();
        for (k, z) in src.representatives().iter().enumerate() {
            let img = self.apply(z);
            match amb.element_degree(&img)? {
                None => {}
                Some(e) if e == target_degree => {}
                Some(e) => {
                    return Err(Error::TwistMismatch(format!(
                        "basis element {k} of degree {d} maps to degree {e}, expected {target_degree}"
                    )))
                }
            }
            tgt.coordinates(&img)?;
        }
        Ok(())
    }

    /// For random homogeneous r and random degree-0 z, φ(r z) - r^p φ(z) must be a
    /// boundary. Returns the number of checks run.
    pub fn check_p_linearity<G: Rng>(&self, rng: &mut G, trials: usize, max_degree: u32) -> Result<usize> {
        let ring = &self.ring;
        let f = ring.field();
        if self.piece.dim() == 0 {
            return Ok(0);
        }
        let amb = self.base.module().ambient().clone();
        for _ in 0..trials {
            let coeffs: Vec<u32> = (0..self.piece.dim()).map(|_| rng.gen_range(0..f.p())).collect();
            let mut z = vec![Poly::zero(); amb.rank()];
            for (c, rep) in coeffs.iter().zip(self.piece.representatives()) {
                for (k, e) in rep.iter().enumerate() {
                    z[k] = z[k].add(ring, &e.scale(ring, *c));
                }
            }
            let k = rng.gen_range(0..=max_degree) as i64;
            let monos = monomials_of_degree(ring.nvars(), k, ring.order());
            let terms = monos.into_iter().map(|m| (m, rng.gen_range(0..f.p()))).collect();
            let r = Poly::from_terms(ring, terms);
            let rz: Vector = z.iter().map(|e| e.mul(ring, &r)).collect();
            let rp = r.frobenius(ring);
            let lhs = self.apply(&rz);
            let rhs: Vector = self.apply(&z).iter().map(|e| e.mul(ring, &rp)).collect();
            let diff: Vector = lhs.iter().zip(&rhs).map(|(a, b)| a.sub(ring, b)).collect();
            if diff.iter().all(Poly::is_zero) {
                continue;
            }
            let piece = self.base.module().graded_piece(k * ring.p() as i64);
            if !piece.is_boundary(&diff)? {
                return Err(Error::NotInImage("φ(r z) - r^p φ(z) is not a boundary".into()));
            }
        }
        Ok(trials)
    }
}

/// Everything needed for φ on every cell of R/I: a resolution and its root map.
#[derive(Debug)]
pub struct FrobeniusPipeline {
    pub ideal: Vec<Poly>,
    pub root: FrobeniusLift,
    pub minimize: bool,
}

impl FrobeniusPipeline {
    pub fn new(ring: &Ring, ideal: &[Poly], minimize: bool) -> Result<Self> {
        let res = Resolution::compute(ring, &Presentation::quotient_ring(ring, ideal)?, minimize)?;
        Self::from_resolution(ring, ideal, Arc::new(res), minimize)
    }

    pub fn from_resolution(ring: &Ring, ideal: &[Poly], res: Arc<Resolution>, minimize: bool) -> Result<Self> {
        let root = frobenius_root_map(ring, res)?;
        Ok(FrobeniusPipeline {
            ideal: ideal.to_vec(),
            root,
            minimize,
        })
    }

    pub fn inner(&self, ring: &Ring, j: usize) -> Result<InnerFrobenius> {
        InnerFrobenius::new(ring, &self.root, j, self.minimize)
    }

    pub fn inner_with(&self, ring: &Ring, j: usize, resolve: Resolver) -> Result<InnerFrobenius> {
        InnerFrobenius::with_resolver(ring, &self.root, j, self.minimize, resolve)
    }
}

/// φ on E^{i,j}(R/I).
pub fn build_phi(ring: &Ring, ideal: &[Poly], i: usize, j: usize, minimize: bool) -> Result<PhiStructure> {
    let pipe = FrobeniusPipeline::new(ring, ideal, minimize)?;
    pipe.inner(ring, j)?.cell(ring, i, minimize)
}

/// The map E^{i,j}(R/I^[p^e])_0 -> E^{i,j}(R/I)_0 induced by R/I^[p^e] -> R/I,
/// with rows in the basis fixed by `phi`. Computed without φ.
pub fn phi_on_bracket_tower(ring: &Ring, ideal: &[Poly], phi: &PhiStructure, e: u32, minimize: bool) -> Result<DenseMatrix> {
    let n = ring.nvars();
    let bracket = bracket_power(ring, ideal, e);
    let res_q = Arc::new(Resolution::compute(ring, &Presentation::quotient_ring(ring, &bracket)?, minimize)?);
    let inner_q = ExtResult::from_resolution(ring, res_q, n - phi.j(), minimize)?;
    let r0 = FreeModule::new(vec![0]);
    let g = ModMatrix::identity(ring, &r0);
    let u_e = ext_functorial_map(ring, &g, &phi.base.inner, &inner_q)?;
    let res_tq = Arc::new(Resolution::compute(ring, &inner_q.module().presentation(), minimize)?);
    let outer_q = ExtResult::from_resolution(ring, res_tq, n - phi.i(), minimize)?;
    let map = ext_functorial_map(ring, &u_e.matrix, &outer_q, &phi.base.outer)?;
    map.degree_matrix(ring, &outer_q, &phi.base.outer, 0)
}

#[cfg(test)]
mod tests;
