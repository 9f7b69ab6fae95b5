use serde::{Deserialize, Serialize};

use super::monomial::{monomials_of_degree, Monomial};
use super::poly::{Poly, Ring};
use crate::error::{Error, Result};

/// F = ⊕ R(-d_i), stored as the generator degrees d_i.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FreeModule {
    degrees: Vec<i64>,
}

impl FreeModule {
    pub fn new(degrees: Vec<i64>) -> Self {
        FreeModule { degrees }
    }

    pub fn zero() -> Self {
        FreeModule::default()
    }

    /// R(-d)^r
    pub fn uniform(rank: usize, d: i64) -> Self {
        FreeModule::new(vec![d; rank])
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    /// F(t): generator degrees d_i - t.
    pub fn twist(&self, t: i64) -> FreeModule {
        FreeModule::new(self.degrees.iter().map(|d| d - t).collect())
    }

    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        let mut d = self.degrees.clone();
        d.extend_from_slice(&other.degrees);
        FreeModule::new(d)
    }

    /// Hom(F, R(-s)) = ⊕ R(d_i - s).
    pub fn dual_into(&self, s: i64) -> FreeModule {
        FreeModule::new(self.degrees.iter().map(|d| s - d).collect())
    }

    /// Generator degrees of F^*F: each d_i becomes p * d_i.
    pub fn frobenius(&self, p: u32) -> FreeModule {
        FreeModule::new(self.degrees.iter().map(|d| d * p as i64).collect())
    }

    pub fn select(&self, idx: &[usize]) -> FreeModule {
        FreeModule::new(idx.iter().map(|&i| self.degrees[i]).collect())
    }

    /// k-basis of F_d: generator-major, monomials descending in the ring order.
    pub fn piece_basis(&self, ring: &Ring, d: i64) -> Vec<(usize, Monomial)> {
        let mut out = Vec::new();
        for (i, &di) in self.degrees.iter().enumerate() {
            for m in monomials_of_degree(ring.nvars(), d - di, ring.order()) {
                out.push((i, m));
            }
        }
        out
    }

    pub fn piece_dim(&self, ring: &Ring, d: i64) -> usize {
        self.degrees
            .iter()
            .map(|&di| super::monomial::count_monomials(ring.nvars(), d - di) as usize)
            .sum()
    }

    /// Degree of a homogeneous element, `None` for zero, error if inhomogeneous.
    pub fn element_degree(&self, v: &[Poly]) -> Result<Option<i64>> {
        if v.len() != self.rank() {
            return Err(Error::Shape(format!(
                "element of length {} in a free module of rank {}",
                v.len(),
                self.rank()
            )));
        }
        let mut deg = None;
        for (i, f) in v.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let Some(fd) = f.homogeneous_degree() else {
                return Err(Error::Inhomogeneous(format!("component {i} is inhomogeneous")));
            };
            let d = fd as i64 + self.degrees[i];
            match deg {
                None => deg = Some(d),
                Some(e) if e == d => {}
                Some(e) => {
                    return Err(Error::Inhomogeneous(format!(
                        "components of degrees {e} and {d} in one element"
                    )))
                }
            }
        }
        Ok(deg)
    }
}

/// A module element as its coordinate vector.
pub type Vector = Vec<Poly>;

pub fn zero_vector(rank: usize) -> Vector {
    vec![Poly::zero(); rank]
}

pub fn vector_is_zero(v: &[Poly]) -> bool {
    v.iter().all(Poly::is_zero)
}

pub fn vector_add(ring: &Ring, a: &[Poly], b: &[Poly]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x.add(ring, y)).collect()
}

pub fn vector_sub(ring: &Ring, a: &[Poly], b: &[Poly]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x.sub(ring, y)).collect()
}

pub fn vector_scale(ring: &Ring, f: &Poly, v: &[Poly]) -> Vector {
    v.iter().map(|x| x.mul(ring, f)).collect()
}

/// A homogeneous (degree-preserving) map dom -> cod, stored by columns.
///
/// Entry (r, s) is zero or homogeneous of degree dom.d_s - cod.d_r.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    dom: FreeModule,
    cod: FreeModule,
    cols: Vec<Vector>,
}

impl ModMatrix {
    pub fn new(dom: FreeModule, cod: FreeModule, cols: Vec<Vector>) -> Result<Self> {
        if cols.len() != dom.rank() {
            return Err(Error::Shape(format!(
                "{} columns for a domain of rank {}",
                cols.len(),
                dom.rank()
            )));
        }
        for (s, col) in cols.iter().enumerate() {
            if col.len() != cod.rank() {
                return Err(Error::Shape(format!(
                    "column {s} has length {}, codomain rank is {}",
                    col.len(),
                    cod.rank()
                )));
            }
            for (r, f) in col.iter().enumerate() {
                if f.is_zero() {
                    continue;
                }
                let want = dom.degree(s) - cod.degree(r);
                match f.homogeneous_degree() {
                    Some(d) if d as i64 == want => {}
                    Some(d) => {
                        return Err(Error::Inhomogeneous(format!(
                            "entry ({r},{s}) has degree {d}, expected {want}"
                        )))
                    }
                    None => {
                        return Err(Error::Inhomogeneous(format!(
                            "entry ({r},{s}) is not homogeneous"
                        )))
                    }
                }
            }
        }
        Ok(ModMatrix { dom, cod, cols })
    }

    /// Build from columns, inferring domain degrees from the column degrees.
    /// Zero columns take `zero_degree`.
    pub fn from_columns(cod: FreeModule, cols: Vec<Vector>, zero_degree: i64) -> Result<Self> {
        let mut degs = Vec::with_capacity(cols.len());
        for c in &cols {
            degs.push(cod.element_degree(c)?.unwrap_or(zero_degree));
        }
        ModMatrix::new(FreeModule::new(degs), cod, cols)
    }

    pub(crate) fn new_unchecked(dom: FreeModule, cod: FreeModule, cols: Vec<Vector>) -> Self {
        debug_assert!(ModMatrix::new(dom.clone(), cod.clone(), cols.clone()).is_ok());
        ModMatrix { dom, cod, cols }
    }

    pub fn zero(dom: FreeModule, cod: FreeModule) -> Self {
        let cols = vec![zero_vector(cod.rank()); dom.rank()];
        ModMatrix { dom, cod, cols }
    }

    pub fn identity(ring: &Ring, f: &FreeModule) -> Self {
        let cols = (0..f.rank())
            .map(|i| {
                let mut v = zero_vector(f.rank());
                v[i] = Poly::constant(ring, 1);
                v
            })
            .collect();
        ModMatrix {
            dom: f.clone(),
            cod: f.clone(),
            cols,
        }
    }

    pub fn dom(&self) -> &FreeModule {
        &self.dom
    }

    pub fn cod(&self) -> &FreeModule {
        &self.cod
    }

    pub fn nrows(&self) -> usize {
        self.cod.rank()
    }

    pub fn ncols(&self) -> usize {
        self.dom.rank()
    }

    pub fn get(&self, r: usize, s: usize) -> &Poly {
        &self.cols[s][r]
    }

    pub fn column(&self, s: usize) -> &[Poly] {
        &self.cols[s]
    }

    pub fn columns(&self) -> &[Vector] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<Vector> {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| vector_is_zero(c))
    }

    /// self * v for v in dom.
    pub fn apply(&self, ring: &Ring, v: &[Poly]) -> Vector {
        let mut out = zero_vector(self.nrows());
        for (s, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (r, e) in self.cols[s].iter().enumerate() {
                if !e.is_zero() {
                    out[r] = out[r].add(ring, &e.mul(ring, coeff));
                }
            }
        }
        out
    }

    /// Composition self ∘ rhs.
    pub fn mul(&self, ring: &Ring, rhs: &ModMatrix) -> Result<ModMatrix> {
        if rhs.cod != self.dom {
            return Err(Error::Shape(format!(
                "cannot compose: inner modules {:?} and {:?} differ",
                rhs.cod.degrees(),
                self.dom.degrees()
            )));
        }
        let cols = rhs.cols.iter().map(|c| self.apply(ring, c)).collect();
        Ok(ModMatrix {
            dom: rhs.dom.clone(),
            cod: self.cod.clone(),
            cols,
        })
    }

    pub fn add(&self, ring: &Ring, rhs: &ModMatrix) -> Result<ModMatrix> {
        if self.dom != rhs.dom || self.cod != rhs.cod {
            return Err(Error::Shape("cannot add maps with different shapes".into()));
        }
        let cols = self
            .cols
            .iter()
            .zip(&rhs.cols)
            .map(|(a, b)| vector_add(ring, a, b))
            .collect();
        Ok(ModMatrix {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            cols,
        })
    }

    pub fn neg(&self, ring: &Ring) -> ModMatrix {
        ModMatrix {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(|f| f.neg(ring)).collect())
                .collect(),
        }
    }

    /// Hom(-, R(-s)) applied to the map: the transpose between dual modules.
    pub fn dual_into(&self, s: i64) -> ModMatrix {
        let mut cols = vec![zero_vector(self.ncols()); self.nrows()];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, e) in col.iter().enumerate() {
                cols[r][c] = e.clone();
            }
        }
        ModMatrix {
            dom: self.cod.dual_into(s),
            cod: self.dom.dual_into(s),
            cols,
        }
    }

    /// Plain transpose with explicitly supplied graded modules.
    pub fn transpose_with(&self, dom: FreeModule, cod: FreeModule) -> Result<ModMatrix> {
        let mut cols = vec![zero_vector(self.ncols()); self.nrows()];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, e) in col.iter().enumerate() {
                cols[r][c] = e.clone();
            }
        }
        ModMatrix::new(dom, cod, cols)
    }

    /// Entrywise Frobenius; generator degrees scale by p.
    pub fn frobenius(&self, ring: &Ring) -> ModMatrix {
        ModMatrix {
            dom: self.dom.frobenius(ring.p()),
            cod: self.cod.frobenius(ring.p()),
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(|f| f.frobenius(ring)).collect())
                .collect(),
        }
    }

    /// Same entries between F(t) and G(t).
    pub fn twist(&self, t: i64) -> ModMatrix {
        ModMatrix {
            dom: self.dom.twist(t),
            cod: self.cod.twist(t),
            cols: self.cols.clone(),
        }
    }

    /// Reinterpret the same entries with new graded modules; homogeneity rechecked.
    pub fn with_modules(&self, dom: FreeModule, cod: FreeModule) -> Result<ModMatrix> {
        ModMatrix::new(dom, cod, self.cols.clone())
    }

    /// [A | B] for maps with the same codomain.
    pub fn hstack(parts: &[&ModMatrix]) -> Result<ModMatrix> {
        let Some(first) = parts.first() else {
            return Err(Error::Shape("empty hstack".into()));
        };
        let cod = first.cod.clone();
        let mut degs = Vec::new();
        let mut cols = Vec::new();
        for m in parts {
            if m.cod != cod {
                return Err(Error::Shape("hstack with differing codomains".into()));
            }
            degs.extend_from_slice(m.dom.degrees());
            cols.extend(m.cols.iter().cloned());
        }
        Ok(ModMatrix {
            dom: FreeModule::new(degs),
            cod,
            cols,
        })
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &ModMatrix) -> ModMatrix {
        let nr = self.nrows() + other.nrows();
        let mut cols = Vec::with_capacity(self.ncols() + other.ncols());
        for c in &self.cols {
            let mut v = c.clone();
            v.resize(nr, Poly::zero());
            cols.push(v);
        }
        for c in &other.cols {
            let mut v = zero_vector(self.nrows());
            v.extend(c.iter().cloned());
            cols.push(v);
        }
        ModMatrix {
            dom: self.dom.direct_sum(&other.dom),
            cod: self.cod.direct_sum(&other.cod),
            cols,
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> ModMatrix {
        ModMatrix {
            dom: self.dom.select(idx),
            cod: self.cod.clone(),
            cols: idx.iter().map(|&i| self.cols[i].clone()).collect(),
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> ModMatrix {
        ModMatrix {
            dom: self.dom.clone(),
            cod: self.cod.select(idx),
            cols: self
                .cols
                .iter()
                .map(|c| idx.iter().map(|&i| c[i].clone()).collect())
                .collect(),
        }
    }

    /// Rows `range` as a map into the corresponding summand of the codomain.
    pub fn row_block(&self, range: std::ops::Range<usize>) -> ModMatrix {
        let idx: Vec<usize> = range.collect();
        self.select_rows(&idx)
    }

    /// Reorder polynomial terms after changing the ring's monomial order.
    pub fn reorder(&self, ring: &Ring) -> ModMatrix {
        ModMatrix {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(|f| f.reorder(ring)).collect())
                .collect(),
        }
    }

    pub fn display(&self, ring: &Ring) -> String {
        let mut rows = Vec::new();
        for r in 0..self.nrows() {
            let cells: Vec<String> = (0..self.ncols()).map(|s| ring.fmt_poly(self.get(r, s))).collect();
            rows.push(format!("[{}]", cells.join(", ")));
        }
        rows.join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse::parse_poly;
    use crate::polyring::monomial::binomial;

    #[test]
    fn piece_basis_examples() {
        let r = Ring::standard(5, 2).unwrap();
        let f = FreeModule::new(vec![0, 1]);
        let b = f.piece_basis(&r, 1);
        assert_eq!(
            b,
            vec![(0, Monomial::var(0)), (0, Monomial::var(1)), (1, Monomial::one())]
        );
        assert!(FreeModule::new(vec![2]).piece_basis(&r, 0).is_empty());
        let r3 = Ring::standard(5, 3).unwrap();
        assert_eq!(FreeModule::new(vec![0]).piece_basis(&r3, 2).len(), 6);
        for n in 1..5usize {
            let rn = Ring::standard(3, n).unwrap();
            for d in 0..6 {
                assert_eq!(
                    FreeModule::new(vec![0]).piece_basis(&rn, d).len() as u64,
                    binomial(d as u64 + n as u64 - 1, n as u64 - 1)
                );
            }
        }
    }

    #[test]
    fn twist_examples() {
        let r = Ring::standard(5, 3).unwrap();
        let f = FreeModule::new(vec![0]);
        assert_eq!(f.twist(3).piece_basis(&r, -3).len(), 1);
        assert_eq!(f.twist(0), f);
        let g = FreeModule::new(vec![1, -2, 4]);
        assert_eq!(g.twist(5).twist(-5), g);
    }

    #[test]
    fn homogeneity_is_enforced() {
        let r = Ring::standard(5, 2).unwrap();
        let x = parse_poly(&r, "x0").unwrap();
        let bad = parse_poly(&r, "x0 + 1").unwrap();
        let cod = FreeModule::new(vec![0]);
        assert!(ModMatrix::new(FreeModule::new(vec![1]), cod.clone(), vec![vec![x.clone()]]).is_ok());
        assert!(ModMatrix::new(FreeModule::new(vec![2]), cod.clone(), vec![vec![x]]).is_err());
        assert!(ModMatrix::new(FreeModule::new(vec![1]), cod, vec![vec![bad]]).is_err());
    }

    #[test]
    fn composition_and_dual() {
        let r = Ring::standard(7, 2).unwrap();
        let x0 = r.var(0);
        let x1 = r.var(1);
        let a = ModMatrix::from_columns(FreeModule::new(vec![0]), vec![vec![x0.clone()], vec![x1.clone()]], 0)
            .unwrap();
        let k = ModMatrix::from_columns(a.dom().clone(), vec![vec![x1.neg(&r), x0.clone()]], 0).unwrap();
        assert_eq!(k.dom().degrees(), &[2]);
        assert!(a.mul(&r, &k).unwrap().is_zero());
        let d = a.dual_into(2);
        assert_eq!(d.dom().degrees(), &[2]);
        assert_eq!(d.cod().degrees(), &[1, 1]);
        assert!(ModMatrix::new(d.dom().clone(), d.cod().clone(), d.columns().to_vec()).is_ok());
        let fa = a.frobenius(&r);
        assert_eq!(fa.dom().degrees(), &[7, 7]);
        assert!(ModMatrix::new(fa.dom().clone(), fa.cod().clone(), fa.columns().to_vec()).is_ok());
        assert!(k.mul(&r, &a).is_err());
    }
}
