//! Krull dimension and the Lyubeznik table.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::ext::Resolution;
use crate::frobenius::{FrobeniusPipeline, InnerFrobenius};
use crate::groebner::ideal_groebner_basis;
use crate::homology::Presentation;
use crate::polyring::{Poly, Ring};

/// dim R/I from the leading-term ideal: the largest set of variables containing
/// the support of no leading monomial. The unit ideal gets 0.
pub fn krull_dimension(ring: &Ring, ideal: &[Poly]) -> usize {
    let n = ring.nvars();
    let gb = ideal_groebner_basis(ring, ideal);
    let supports: Vec<u32> = gb.iter().filter_map(|g| g.leading_monomial()).map(|m| m.support()).collect();
    if supports.contains(&0) {
        return 0;
    }
    (0u32..(1u32 << n))
        .filter(|s| supports.iter().all(|sup| sup & !s != 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// λ_{i,j}: the stable rank of φ on E^{i,j}(R/I)_0.
pub fn lyubeznik_number(ring: &Ring, ideal: &[Poly], i: usize, j: usize, minimize: bool) -> Result<usize> {
    Ok(crate::frobenius::build_phi(ring, ideal, i, j, minimize)?.stable_rank())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub i: usize,
    pub j: usize,
    pub lambda: usize,
    /// dim E^{i,j}_0
    pub dim_e0: usize,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableMeta {
    pub p: u32,
    pub vars: Vec<String>,
    pub gens: Vec<String>,
    /// sha256 of the canonical ideal text
    pub ideal_hash: String,
    pub minimize: bool,
    pub shared_seconds: f64,
    pub cache_hits: usize,
}

/// λ_{i,j}(A) for 0 ≤ i ≤ j ≤ dim A. Entries hold the nonzero values, cells every
/// computed value.
#[derive(Debug, Clone, PartialEq)]
pub struct LyubeznikTable {
    pub dim_a: usize,
    pub entries: BTreeMap<(usize, usize), usize>,
    pub cells: Vec<CellReport>,
    pub meta: TableMeta,
}

impl LyubeznikTable {
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// (i, j, λ) for nonzero λ, sorted by (j, i).
    pub fn sorted_entries(&self) -> Vec<(usize, usize, usize)> {
        let mut v: Vec<_> = self.entries.iter().map(|(&(i, j), &l)| (i, j, l)).collect();
        v.sort_by_key(|&(i, j, _)| (j, i));
        v
    }

    /// Same dimension and entries.
    pub fn same_values(&self, other: &LyubeznikTable) -> bool {
        self.dim_a == other.dim_a && self.entries == other.entries
    }
}

/// Resolutions looked up or stored by the pipeline.
pub trait ResolutionStore: Sync {
    fn resolve(&self, ring: &Ring, pres: &Presentation, minimize: bool) -> Result<Resolution>;
    fn hits(&self) -> usize {
        0
    }
}

/// No persistence.
pub struct NoStore;

impl ResolutionStore for NoStore {
    fn resolve(&self, ring: &Ring, pres: &Presentation, minimize: bool) -> Result<Resolution> {
        Resolution::compute(ring, pres, minimize)
    }
}

#[derive(Debug, Clone, Default)]
pub struct TableOptions {
    pub minimize: bool,
    /// restrict to these cells; all of 0 ≤ i ≤ j ≤ dim A otherwise
    pub cells: Option<Vec<(usize, usize)>>,
    /// worker bound; LYUCALC_THREADS or the rayon default otherwise
    pub threads: Option<usize>,
}

impl TableOptions {
    pub fn minimized() -> Self {
        TableOptions {
            minimize: true,
            ..Default::default()
        }
    }
}

pub fn ideal_hash(ring: &Ring, ideal: &[Poly]) -> String {
    let mut h = Sha256::new();
    h.update(format!("p={}\nvars={}\n", ring.p(), ring.names().join(",")));
    for g in ideal {
        h.update(ring.fmt_poly(g));
        h.update("\n");
    }
    hex::encode(h.finalize())
}

fn thread_bound(opts: &TableOptions) -> Option<usize> {
    opts.threads.or_else(|| {
        std::env::var("LYUCALC_THREADS")
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
    })
}

pub fn lyubeznik_table(ring: &Ring, ideal: &[Poly], opts: &TableOptions) -> Result<LyubeznikTable> {
    lyubeznik_table_with(ring, ideal, opts, &NoStore)
}

pub fn lyubeznik_table_with(
    ring: &Ring,
    ideal: &[Poly],
    opts: &TableOptions,
    store: &dyn ResolutionStore,
) -> Result<LyubeznikTable> {
    match thread_bound(opts) {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?
            .install(|| compute_table(ring, ideal, opts, store)),
        None => compute_table(ring, ideal, opts, store),
    }
}

fn compute_table(ring: &Ring, ideal: &[Poly], opts: &TableOptions, store: &dyn ResolutionStore) -> Result<LyubeznikTable> {
    let start = Instant::now();
    let pres = Presentation::quotient_ring(ring, ideal)?;
    if ideal_groebner_basis(ring, ideal).iter().any(|g| g.as_unit().is_some()) {
        return Err(Error::Invalid("the ideal is the whole ring".into()));
    }
    let dim_a = krull_dimension(ring, ideal);
    let cells: Vec<(usize, usize)> = match &opts.cells {
        Some(c) => {
            for &(i, j) in c {
                if i > dim_a || j > dim_a {
                    return Err(Error::Invalid(format!("cell ({i},{j}) outside 0..={dim_a}")));
                }
            }
            c.clone()
        }
        None => (0..=dim_a).flat_map(|j| (0..=j).map(move |i| (i, j))).collect(),
    };
    let res = Arc::new(store.resolve(ring, &pres, opts.minimize)?);
    let pipe = FrobeniusPipeline::from_resolution(ring, ideal, res, opts.minimize)?;

    let mut js: Vec<usize> = cells.iter().map(|&(_, j)| j).collect();
    js.sort_unstable();
    js.dedup();
    let resolve = |r: &Ring, p: &Presentation, m: bool| store.resolve(r, p, m);
    let inners: Vec<InnerFrobenius> = js.par_iter().map(|&j| pipe.inner_with(ring, j, &resolve)).collect::<Result<_>>()?;
    let shared_seconds = start.elapsed().as_secs_f64();

    let mut reports: Vec<CellReport> = cells
        .par_iter()
        .map(|&(i, j)| {
            let t0 = Instant::now();
            let inner = &inners[js.binary_search(&j).expect("j collected")];
            let phi = inner.cell(ring, i, opts.minimize)?;
            Ok(CellReport {
                i,
                j,
                lambda: phi.stable_rank(),
                dim_e0: phi.dim0(),
                seconds: t0.elapsed().as_secs_f64(),
            })
        })
        .collect::<Result<_>>()?;
    reports.sort_by_key(|c| (c.j, c.i));
    let entries = reports.iter().filter(|c| c.lambda > 0).map(|c| ((c.i, c.j), c.lambda)).collect();
    Ok(LyubeznikTable {
        dim_a,
        entries,
        cells: reports,
        meta: TableMeta {
            p: ring.p(),
            vars: ring.names().to_vec(),
            gens: ideal.iter().map(|g| ring.fmt_poly(g)).collect(),
            ideal_hash: ideal_hash(ring, ideal),
            minimize: opts.minimize,
            shared_seconds,
            cache_hits: store.hits(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    fn ring(p: u32, n: usize) -> Ring {
        Ring::standard(p, n).unwrap()
    }

    fn polys(r: &Ring, src: &[&str]) -> Vec<Poly> {
        src.iter().map(|s| parse_poly(r, s).unwrap()).collect()
    }

    const SKEW: [&str; 4] = ["x0*x2", "x0*x3", "x1*x2", "x1*x3"];

    #[test]
    fn krull_dimension_examples() {
        let r = ring(2, 4);
        assert_eq!(krull_dimension(&r, &polys(&r, &["x0", "x1", "x2", "x3"])), 0);
        assert_eq!(krull_dimension(&r, &[]), 4);
        assert_eq!(krull_dimension(&r, &polys(&r, &SKEW)), 2);
        assert_eq!(krull_dimension(&r, &polys(&r, &["x0*x2 - x1^2"])), 3);
        assert_eq!(krull_dimension(&r, &polys(&r, &["x0 + x1*x1"])), 3);
    }

    #[test]
    fn tables_of_small_examples() {
        let r = ring(2, 3);
        let m = lyubeznik_table(&r, &polys(&r, &["x0", "x1", "x2"]), &TableOptions::minimized()).unwrap();
        assert_eq!(m.dim_a, 0);
        assert_eq!(m.sorted_entries(), vec![(0, 0, 1)]);

        let r2 = ring(2, 2);
        let p1 = lyubeznik_table(&r2, &[], &TableOptions::minimized()).unwrap();
        assert_eq!(p1.sorted_entries(), vec![(2, 2, 1)]);

        let r3 = ring(3, 3);
        let conic = lyubeznik_table(&r3, &polys(&r3, &["x0*x2 - x1^2"]), &TableOptions::minimized()).unwrap();
        assert_eq!(conic.sorted_entries(), vec![(2, 2, 1)]);
    }

    #[test]
    fn skew_lines_table() {
        for p in [2, 3] {
            let r = ring(p, 4);
            let t = lyubeznik_table(&r, &polys(&r, &SKEW), &TableOptions::minimized()).unwrap();
            assert_eq!(t.dim_a, 2);
            assert_eq!(t.sorted_entries(), vec![(0, 1, 1), (2, 2, 2)]);
            assert_eq!(t.cells.len(), 6);
        }
    }

    #[test]
    fn single_cell_and_thread_bound() {
        let r = ring(2, 4);
        let opts = TableOptions {
            minimize: true,
            cells: Some(vec![(2, 2)]),
            threads: Some(1),
        };
        let t = lyubeznik_table(&r, &polys(&r, &SKEW), &opts).unwrap();
        assert_eq!(t.sorted_entries(), vec![(2, 2, 2)]);
        assert!(lyubeznik_table(&r, &polys(&r, &SKEW), &TableOptions { cells: Some(vec![(3, 3)]), ..opts }).is_err());
    }

    #[test]
    fn relabeling_and_coordinate_change() {
        let r = ring(3, 4);
        let base = lyubeznik_table(&r, &polys(&r, &SKEW), &TableOptions::minimized()).unwrap();
        let perm = polys(&r, &["x3*x1", "x3*x0", "x2*x1", "x2*x0"]);
        assert!(base.same_values(&lyubeznik_table(&r, &perm, &TableOptions::minimized()).unwrap()));
        // x0 -> x0 + x1, x2 -> x2 + x3
        let lin = polys(&r, &["x0*x2 + x0*x3 + x1*x2 + x1*x3", "x0*x3 + x1*x3", "x1*x2 + x1*x3", "x1*x3"]);
        assert!(base.same_values(&lyubeznik_table(&r, &lin, &TableOptions::minimized()).unwrap()));
    }

    #[test]
    fn cells_below_the_diagonal_vanish() {
        let r = ring(2, 4);
        let gens = polys(&r, &SKEW);
        for (i, j) in [(1, 0), (2, 0), (2, 1), (3, 2), (4, 4), (3, 3)] {
            assert_eq!(lyubeznik_number(&r, &gens, i, j, true).unwrap(), 0, "({i},{j})");
        }
    }

    #[test]
    fn unit_ideal_is_rejected() {
        let r = ring(2, 2);
        assert!(lyubeznik_table(&r, &polys(&r, &["1"]), &TableOptions::minimized()).is_err());
    }
}
