//! Ext^t(-, Ω) of graded modules, double-Ext modules, induced maps and
//! local-cohomology dimensions via graded local duality.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::Submodule;
use crate::homology::{free_resolution, homology_presentation, ChainComplex, Presentation, SubquotientPresentation};
use crate::linalg::DenseMatrix;
use crate::polyring::{FreeModule, ModMatrix, Poly, Ring, Vector};

/// A resolution with cached Gröbner data for lifting through its differentials.
#[derive(Debug)]
pub struct Resolution {
    complex: ChainComplex,
    subs: Vec<Submodule>,
}

impl Resolution {
    pub fn new(ring: &Ring, complex: ChainComplex) -> Self {
        let subs = complex.maps().iter().map(|d| Submodule::new(ring, d.clone())).collect();
        Resolution { complex, subs }
    }

    pub fn compute(ring: &Ring, pres: &Presentation, minimize: bool) -> Result<Self> {
        Ok(Resolution::new(ring, free_resolution(ring, pres, minimize)?))
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    /// X with d_t · X = b, where b maps into spot t-1.
    pub fn lift_through(&self, t: usize, b: &ModMatrix) -> Result<ModMatrix> {
        assert!(t >= 1);
        match self.subs.get(t - 1) {
            Some(s) => s.lift(b),
            None if b.is_zero() => Ok(ModMatrix::zero(b.dom().clone(), FreeModule::zero())),
            None => Err(Error::NotInImage(format!("nothing to lift through beyond spot {}", t - 1))),
        }
    }
}

/// Comparison-theorem lift c_• : source -> target of c_0, through spot `upto`.
///
/// `source` is any homological complex, `target` a resolution; c_t satisfies
/// d_t c_t = c_{t-1} d_t.
pub fn lift_chain_map(
    ring: &Ring,
    source: &ChainComplex,
    target: &Resolution,
    c0: ModMatrix,
    upto: usize,
) -> Result<Vec<ModMatrix>> {
    let mut maps = vec![c0];
    for t in 1..=upto {
        let ds = source.outgoing(t);
        let prev = maps.last().unwrap();
        let b = prev.mul(ring, &ds)?;
        let c = target.lift_through(t, &b)?;
        maps.push(c);
    }
    Ok(maps)
}

/// Ext^t(M, Ω) as the cohomology of Hom(P_•, Ω) at spot t.
#[derive(Debug)]
pub struct ExtResult {
    t: usize,
    resolution: Arc<Resolution>,
    dual: ChainComplex,
    module: SubquotientPresentation,
    /// [cycles | boundaries], for coordinates on the generators
    lifter: Submodule,
}

impl ExtResult {
    pub fn from_resolution(ring: &Ring, resolution: Arc<Resolution>, t: usize, minimize: bool) -> Result<Self> {
        let dual = resolution.complex().dualize_into_omega(ring);
        let module = homology_presentation(ring, &dual, t, minimize)?;
        let stacked = ModMatrix::hstack(&[module.cycles(), module.boundaries()])?;
        Ok(ExtResult {
            t,
            resolution,
            dual,
            lifter: Submodule::new(ring, stacked),
            module,
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn resolution(&self) -> &Arc<Resolution> {
        &self.resolution
    }

    /// Hom(P_•, Ω).
    pub fn dual(&self) -> &ChainComplex {
        &self.dual
    }

    pub fn module(&self) -> &SubquotientPresentation {
        &self.module
    }

    /// Express ambient cycles (columns of `w`) on the generators, modulo boundaries.
    pub fn generator_coordinates(&self, w: &ModMatrix) -> Result<ModMatrix> {
        let x = self.lifter.lift(w)?;
        Ok(x.row_block(0..self.module.num_gens()))
    }

    pub fn piece_dim(&self, d: i64) -> usize {
        self.module.piece_dim(d)
    }
}

/// Ext^t(M, Ω) for a presented module.
pub fn ext_into_omega(ring: &Ring, pres: &Presentation, t: usize, minimize: bool) -> Result<ExtResult> {
    let res = Arc::new(Resolution::compute(ring, pres, minimize)?);
    ExtResult::from_resolution(ring, res, t, minimize)
}

/// E^{i,j}(R/I) = Ext^{N-i}(Ext^{N-j}(R/I, Ω), Ω), keeping both layers.
#[derive(Debug)]
pub struct DoubleExt {
    pub i: usize,
    pub j: usize,
    pub inner: Arc<ExtResult>,
    pub outer: ExtResult,
}

impl DoubleExt {
    pub fn module(&self) -> &SubquotientPresentation {
        self.outer.module()
    }
}

fn check_indices(ring: &Ring, i: usize, j: usize) -> Result<()> {
    let n = ring.nvars();
    if i > n || j > n {
        return Err(Error::Invalid(format!("indices ({i},{j}) outside 0..={n}")));
    }
    Ok(())
}

/// The inner layer T = Ext^{N-j}(R/I, Ω) from a resolution of R/I.
pub fn inner_layer(ring: &Ring, res_ri: Arc<Resolution>, j: usize, minimize: bool) -> Result<Arc<ExtResult>> {
    check_indices(ring, 0, j)?;
    Ok(Arc::new(ExtResult::from_resolution(ring, res_ri, ring.nvars() - j, minimize)?))
}

/// The outer layer Ext^{N-i}(T, Ω) from a resolution of T.
pub fn outer_layer(ring: &Ring, inner: Arc<ExtResult>, res_t: Arc<Resolution>, i: usize, j: usize, minimize: bool) -> Result<DoubleExt> {
    check_indices(ring, i, j)?;
    let outer = ExtResult::from_resolution(ring, res_t, ring.nvars() - i, minimize)?;
    Ok(DoubleExt { i, j, inner, outer })
}

pub fn double_ext(ring: &Ring, ideal: &[Poly], i: usize, j: usize, minimize: bool) -> Result<DoubleExt> {
    check_indices(ring, i, j)?;
    let res = Arc::new(Resolution::compute(ring, &Presentation::quotient_ring(ring, ideal)?, minimize)?);
    let inner = inner_layer(ring, res, j, minimize)?;
    let res_t = Arc::new(Resolution::compute(ring, &inner.module().presentation(), minimize)?);
    outer_layer(ring, inner, res_t, i, j, minimize)
}

/// The map Ext^t(N, Ω) -> Ext^t(M, Ω) induced by g: M -> N.
#[derive(Debug)]
pub struct ExtMap {
    /// c_t^T : Hom(P^N_t, Ω) -> Hom(P^M_t, Ω)
    pub chain_dual: ModMatrix,
    /// generators of Ext(N) -> generators of Ext(M)
    pub matrix: ModMatrix,
}

impl ExtMap {
    /// Apply the chain-level map to an ambient cycle.
    pub fn apply(&self, ring: &Ring, z: &[Poly]) -> Vector {
        self.chain_dual.apply(ring, z)
    }

    /// Matrix on degree-d pieces, columns indexed by the source basis.
    pub fn degree_matrix(&self, ring: &Ring, source: &ExtResult, target: &ExtResult, d: i64) -> Result<DenseMatrix> {
        let sp = source.module().graded_piece(d);
        let tp = target.module().graded_piece(d);
        let cols: Vec<Vec<u32>> = sp
            .representatives()
            .iter()
            .map(|z| tp.coordinates(&self.apply(ring, z)))
            .collect::<Result<_>>()?;
        Ok(DenseMatrix::from_columns(ring.field(), tp.dim(), &cols))
    }
}

/// Lift g (given on generators, F_0^M -> F_0^N) to the resolutions, dualize, and
/// induce on cohomology at spot `source.t()`. `source` is Ext(N), `target` Ext(M).
pub fn ext_functorial_map(ring: &Ring, g: &ModMatrix, source: &ExtResult, target: &ExtResult) -> Result<ExtMap> {
    let t = source.t();
    if target.t() != t {
        return Err(Error::Shape("Ext spots differ".into()));
    }
    let pm = target.resolution().complex();
    let pn = source.resolution();
    if g.dom() != &pm.module(0) || g.cod() != &pn.complex().module(0) {
        return Err(Error::Shape("map does not match the presentations".into()));
    }
    let c = lift_chain_map(ring, pm, pn, g.clone(), t)?;
    let chain_dual = c[t].dual_into(ring.nvars() as i64);
    let images = chain_dual.mul(ring, source.module().cycles())?;
    let matrix = target.generator_coordinates(&images)?;
    Ok(ExtMap { chain_dual, matrix })
}

/// dim H^j_m(M)_d = dim Ext^{N-j}(M, Ω)_{-d}.
pub fn local_cohomology_piece_dim(ring: &Ring, pres: &Presentation, j: usize, d: i64) -> Result<usize> {
    let n = ring.nvars();
    if j > n {
        return Ok(0);
    }
    Ok(ext_into_omega(ring, pres, n - j, true)?.piece_dim(-d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    fn ring(p: u32, n: usize) -> Ring {
        Ring::standard(p, n).unwrap()
    }

    fn quotient(r: &Ring, gens: &[&str]) -> Presentation {
        let g: Vec<Poly> = gens.iter().map(|s| parse_poly(r, s).unwrap()).collect();
        Presentation::quotient_ring(r, &g).unwrap()
    }

    fn ext_dims(r: &Ring, gens: &[&str], t: usize, degs: std::ops::RangeInclusive<i64>) -> Vec<usize> {
        let e = ext_into_omega(r, &quotient(r, gens), t, true).unwrap();
        degs.map(|d| e.piece_dim(d)).collect()
    }

    #[test]
    fn ext_of_free_module() {
        let r = ring(3, 3);
        assert_eq!(ext_dims(&r, &[], 0, 2..=4), vec![0, 1, 3]);
        for t in 1..=3 {
            assert_eq!(ext_dims(&r, &[], t, -3..=3), vec![0; 7]);
        }
    }

    #[test]
    fn ext_of_residue_field() {
        for n in 1..=3 {
            let r = ring(2, n);
            let vars: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            let v: Vec<&str> = vars.iter().map(String::as_str).collect();
            for t in 0..=n {
                let want = if t == n { vec![0, 1, 0] } else { vec![0, 0, 0] };
                assert_eq!(ext_dims(&r, &v, t, -1..=1), want, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn ext_of_hypersurface() {
        let r = ring(5, 3);
        let f = ["x1^2*x2 - x0^3 - x2^3"];
        // Ext^1 = (R/f)(d - N) = (R/f)(0)
        let quot = |d: i64| -> usize {
            if d < 0 {
                0
            } else {
                crate::polyring::monomial::count_monomials(3, d) as usize
                    - crate::polyring::monomial::count_monomials(3, d - 3) as usize
            }
        };
        let want: Vec<usize> = (-1..=4).map(quot).collect();
        assert_eq!(ext_dims(&r, &f, 1, -1..=4), want);
        assert_eq!(ext_dims(&r, &f, 0, -1..=4), vec![0; 6]);
        assert_eq!(ext_dims(&r, &f, 2, -1..=4), vec![0; 6]);
    }

    #[test]
    fn double_ext_examples() {
        let r = ring(2, 3);
        let m: Vec<Poly> = ["x0", "x1", "x2"].iter().map(|s| parse_poly(&r, s).unwrap()).collect();
        for i in 0..=3 {
            for j in 0..=3 {
                let e = double_ext(&r, &m, i, j, true).unwrap();
                let dims: Vec<usize> = (-1..=1).map(|d| e.outer.piece_dim(d)).collect();
                let want = if (i, j) == (0, 0) { vec![0, 1, 0] } else { vec![0, 0, 0] };
                assert_eq!(dims, want, "({i},{j})");
            }
        }
        let r2 = ring(3, 2);
        for i in 0..=2 {
            for j in 0..=2 {
                let e = double_ext(&r2, &[], i, j, true).unwrap();
                let dims: Vec<usize> = (0..=2).map(|d| e.outer.piece_dim(d)).collect();
                let want = if (i, j) == (2, 2) { vec![1, 2, 3] } else { vec![0, 0, 0] };
                assert_eq!(dims, want, "({i},{j})");
            }
        }
        let r3 = ring(7, 3);
        let f = vec![parse_poly(&r3, "x0*x2 - x1^2").unwrap()];
        assert_eq!(double_ext(&r3, &f, 2, 2, true).unwrap().outer.piece_dim(0), 1);
    }

    #[test]
    fn functorial_map_examples() {
        // R = F_p[x0], surjection R/(x0^2) -> R/(x0) induces multiplication by x0
        let r = ring(5, 1);
        let src = ext_into_omega(&r, &quotient(&r, &["x0"]), 1, true).unwrap();
        let tgt = ext_into_omega(&r, &quotient(&r, &["x0^2"]), 1, true).unwrap();
        let g = ModMatrix::identity(&r, &FreeModule::new(vec![0]));
        let map = ext_functorial_map(&r, &g, &src, &tgt).unwrap();
        assert_eq!(map.matrix.nrows(), 1);
        assert_eq!(map.matrix.ncols(), 1);
        let e = map.matrix.get(0, 0);
        assert_eq!(e.homogeneous_degree(), Some(1));
        assert_eq!(e.monic(&r), r.var(0));

        // identity and zero
        let id = ext_functorial_map(&r, &g, &tgt, &tgt).unwrap();
        for d in -2..=1 {
            let m = id.degree_matrix(&r, &tgt, &tgt, d).unwrap();
            assert_eq!(m, DenseMatrix::identity(r.field(), m.rows()));
        }
        let zero = ModMatrix::zero(FreeModule::new(vec![0]), FreeModule::new(vec![0]));
        let z = ext_functorial_map(&r, &zero, &tgt, &tgt).unwrap();
        assert!(z.matrix.is_zero());
    }

    #[test]
    fn functoriality_is_contravariant() {
        // R/(x0^3) -> R/(x0^2) -> R/(x0) in F_3[x0, x1]
        let r = ring(3, 2);
        let e: Vec<ExtResult> = ["x0^3", "x0^2", "x0"]
            .iter()
            .map(|g| ext_into_omega(&r, &quotient(&r, &[g]), 1, true).unwrap())
            .collect();
        let g = ModMatrix::identity(&r, &FreeModule::new(vec![0]));
        let a = ext_functorial_map(&r, &g, &e[1], &e[0]).unwrap();
        let b = ext_functorial_map(&r, &g, &e[2], &e[1]).unwrap();
        let ab = ext_functorial_map(&r, &g, &e[2], &e[0]).unwrap();
        for d in -3..=1 {
            let ma = a.degree_matrix(&r, &e[1], &e[0], d).unwrap();
            let mb = b.degree_matrix(&r, &e[2], &e[1], d).unwrap();
            let mab = ab.degree_matrix(&r, &e[2], &e[0], d).unwrap();
            assert_eq!(ma.mul(&mb).unwrap(), mab);
        }
    }

    #[test]
    fn local_cohomology_examples() {
        let r = ring(3, 3);
        let free = Presentation::free(FreeModule::new(vec![0]));
        assert_eq!(local_cohomology_piece_dim(&r, &free, 3, -3).unwrap(), 1);
        let k = quotient(&r, &["x0", "x1", "x2"]);
        assert_eq!(local_cohomology_piece_dim(&r, &k, 0, 0).unwrap(), 1);
        let r5 = ring(5, 3);
        let cubic = quotient(&r5, &["x1^2*x2 - x0^3 - x2^3"]);
        assert_eq!(local_cohomology_piece_dim(&r5, &cubic, 2, 0).unwrap(), 1);
    }
}
