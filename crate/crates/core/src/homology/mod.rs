//! Graded complexes of free modules, resolutions, duals into Ω and homology.

pub mod resolution;
pub mod subquotient;

pub use resolution::{free_resolution, minimize, Presentation};
pub use subquotient::{homology_presentation, GradedPiece, SubquotientPresentation};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{FreeModule, ModMatrix, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    /// maps[t] = d_{t+1}: modules[t+1] -> modules[t]
    Homological,
    /// maps[t]: modules[t] -> modules[t+1]
    Cohomological,
}

/// A bounded complex of graded free modules in spots 0..modules.len().
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    kind: Kind,
    modules: Vec<FreeModule>,
    maps: Vec<ModMatrix>,
}

impl ChainComplex {
    /// Checks shapes and d∘d = 0.
    pub fn new(ring: &Ring, kind: Kind, modules: Vec<FreeModule>, maps: Vec<ModMatrix>) -> Result<Self> {
        let c = ChainComplex { kind, modules, maps };
        c.check_shapes()?;
        for t in 1..c.maps.len() {
            let comp = match kind {
                Kind::Homological => c.maps[t - 1].mul(ring, &c.maps[t])?,
                Kind::Cohomological => c.maps[t].mul(ring, &c.maps[t - 1])?,
            };
            if !comp.is_zero() {
                return Err(Error::Shape(format!("d∘d ≠ 0 at spot {t}")));
            }
        }
        Ok(c)
    }

    pub(crate) fn new_unchecked(kind: Kind, modules: Vec<FreeModule>, maps: Vec<ModMatrix>) -> Self {
        let c = ChainComplex { kind, modules, maps };
        debug_assert!(c.check_shapes().is_ok());
        c
    }

    fn check_shapes(&self) -> Result<()> {
        if self.maps.len() + 1 != self.modules.len() && !(self.modules.is_empty() && self.maps.is_empty()) {
            return Err(Error::Shape("a complex needs one map between consecutive spots".into()));
        }
        for (t, m) in self.maps.iter().enumerate() {
            let (src, dst) = match self.kind {
                Kind::Homological => (&self.modules[t + 1], &self.modules[t]),
                Kind::Cohomological => (&self.modules[t], &self.modules[t + 1]),
            };
            if m.dom() != src || m.cod() != dst {
                return Err(Error::Shape(format!("map {t} does not match its spots")));
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Number of spots.
    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn modules(&self) -> &[FreeModule] {
        &self.modules
    }

    pub fn maps(&self) -> &[ModMatrix] {
        &self.maps
    }

    /// The module at spot t; zero outside the range.
    pub fn module(&self, t: usize) -> FreeModule {
        self.modules.get(t).cloned().unwrap_or_default()
    }

    /// Ranks of the modules.
    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(FreeModule::rank).collect()
    }

    /// Homological: d_t: F_t -> F_{t-1}; cohomological: F^t -> F^{t+1}.
    pub fn outgoing(&self, t: usize) -> ModMatrix {
        let here = self.module(t);
        match self.kind {
            Kind::Homological if t >= 1 && t - 1 < self.maps.len() => self.maps[t - 1].clone(),
            Kind::Cohomological if t < self.maps.len() => self.maps[t].clone(),
            _ => ModMatrix::zero(here, FreeModule::zero()),
        }
    }

    /// Homological: d_{t+1}: F_{t+1} -> F_t; cohomological: F^{t-1} -> F^t.
    pub fn incoming(&self, t: usize) -> ModMatrix {
        let here = self.module(t);
        match self.kind {
            Kind::Homological if t < self.maps.len() => self.maps[t].clone(),
            Kind::Cohomological if t >= 1 && t - 1 < self.maps.len() => self.maps[t - 1].clone(),
            _ => ModMatrix::zero(FreeModule::zero(), here),
        }
    }

    /// Apply Hom(-, R(-s)) to a homological complex: spot t becomes Hom(F_t, R(-s))
    /// and the maps are transposes.
    pub fn dualize_into(&self, s: i64) -> ChainComplex {
        let kind = match self.kind {
            Kind::Homological => Kind::Cohomological,
            Kind::Cohomological => Kind::Homological,
        };
        ChainComplex {
            kind,
            modules: self.modules.iter().map(|m| m.dual_into(s)).collect(),
            maps: self.maps.iter().map(|m| m.dual_into(s)).collect(),
        }
    }

    /// Hom(-, Ω) with Ω = R(-N), N the number of variables.
    pub fn dualize_into_omega(&self, ring: &Ring) -> ChainComplex {
        self.dualize_into(ring.nvars() as i64)
    }

    /// Entrywise Frobenius; generator degrees scale by p.
    pub fn frobenius(&self, ring: &Ring) -> ChainComplex {
        ChainComplex {
            kind: self.kind,
            modules: self.modules.iter().map(|m| m.frobenius(ring.p())).collect(),
            maps: self.maps.iter().map(|m| m.frobenius(ring)).collect(),
        }
    }

    /// Twist every spot by t.
    pub fn twist(&self, t: i64) -> ChainComplex {
        ChainComplex {
            kind: self.kind,
            modules: self.modules.iter().map(|m| m.twist(t)).collect(),
            maps: self.maps.iter().map(|m| m.twist(t)).collect(),
        }
    }

    /// Σ_t (-1)^t dim (F_t)_d.
    pub fn euler_characteristic(&self, ring: &Ring, d: i64) -> i64 {
        self.modules
            .iter()
            .enumerate()
            .map(|(t, m)| {
                let v = m.piece_dim(ring, d) as i64;
                if t % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum()
    }
}

#[cfg(test)]
mod tests;
