use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::error::{Error, Result};
use crate::linalg::Fp;

/// A standard-graded polynomial ring F_p[x_0, ..., x_n] with a monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ring {
    field: Fp,
    names: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new(p: u32, names: Vec<String>, order: MonomialOrder) -> Result<Self> {
        let field = Fp::new(p)?;
        if names.is_empty() {
            return Err(Error::Invalid("a ring needs at least one variable".into()));
        }
        if names.len() > MAX_VARS {
            return Err(Error::Invalid(format!(
                "at most {MAX_VARS} variables are supported, got {}",
                names.len()
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::Invalid(format!("bad variable name {name:?}")));
            }
            if names[..i].contains(name) {
                return Err(Error::Invalid(format!("duplicate variable name {name:?}")));
            }
        }
        if let MonomialOrder::Elimination(k) = order {
            if k > names.len() {
                return Err(Error::Invalid("elimination block larger than the ring".into()));
            }
        }
        Ok(Ring { field, names, order })
    }

    /// `F_p[x0, ..., x{nvars-1}]` with grevlex.
    pub fn standard(p: u32, nvars: usize) -> Result<Self> {
        Ring::new(p, (0..nvars).map(|i| format!("x{i}")).collect(), MonomialOrder::Grevlex)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Ring {
            order,
            ..self.clone()
        }
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.field.p()
    }

    /// Number of variables, n + 1.
    #[inline]
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    /// Projective dimension n of the ambient space.
    pub fn n(&self) -> usize {
        self.names.len() - 1
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b, self.names.len())
    }

    pub fn var(&self, i: usize) -> Poly {
        assert!(i < self.nvars());
        Poly::monomial(self, Monomial::var(i), 1)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, name) in self.names.iter().enumerate() {
            match m.exp(i) {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn fmt_poly(&self, f: &Poly) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let p = self.p();
        let mut out = String::new();
        for (k, (m, c)) in f.terms().iter().enumerate() {
            let (neg, mag) = if p > 2 && *c > p / 2 { (true, p - c) } else { (false, *c) };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                let _ = write!(out, "{mag}");
            } else if mag == 1 {
                out.push_str(&self.fmt_monomial(m));
            } else {
                let _ = write!(out, "{mag}*{}", self.fmt_monomial(m));
            }
        }
        out
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A polynomial in canonical form: terms sorted descending in the ring's
/// order, no zero coefficients, no repeated monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, u32)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: i64) -> Self {
        Poly::monomial(ring, Monomial::one(), ring.field().reduce_i64(c))
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: u32) -> Self {
        let c = c % ring.p();
        if c == 0 {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Canonicalize an arbitrary list of terms.
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Monomial, u32)>) -> Self {
        let f = ring.field();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % f.p();
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = f.add(*lc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Constant coefficient if the polynomial is a nonzero constant.
    pub fn as_unit(&self) -> Option<u32> {
        match self.terms.as_slice() {
            [(m, c)] if m.is_one() => Some(*c),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<(Monomial, u32)> {
        self.terms.first().copied()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Common degree of all terms; `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn add(&self, ring: &Ring, other: &Poly) -> Poly {
        merge(ring, &self.terms, &other.terms, 1)
    }

    pub fn sub(&self, ring: &Ring, other: &Poly) -> Poly {
        merge(ring, &self.terms, &other.terms, ring.p() - 1)
    }

    /// self + c * m * other
    pub fn add_scaled(&self, ring: &Ring, c: u32, m: &Monomial, other: &Poly) -> Poly {
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let shifted = other.mul_term(ring, m, c);
        merge(ring, &self.terms, &shifted.terms, 1)
    }

    pub fn neg(&self, ring: &Ring) -> Poly {
        let f = ring.field();
        Poly {
            terms: self.terms.iter().map(|&(m, c)| (m, f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, ring: &Ring, c: u32) -> Poly {
        let f = ring.field();
        let c = c % f.p();
        if c == 0 {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect(),
        }
    }

    /// Multiply by the term c * m; monomial orders are multiplicative so no resort.
    pub fn mul_term(&self, ring: &Ring, m: &Monomial, c: u32) -> Poly {
        let f = ring.field();
        if c.is_multiple_of(f.p()) {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), f.mul(*tc, c)))
                .collect(),
        }
    }

    pub fn mul(&self, ring: &Ring, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms[0];
            return other.mul_term(ring, &m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = other.terms[0];
            return self.mul_term(ring, &m, c);
        }
        let f = ring.field();
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                prods.push((ma.mul(mb), f.mul(*ca, *cb)));
            }
        }
        Poly::from_terms(ring, prods)
    }

    pub fn pow(&self, ring: &Ring, e: u32) -> Poly {
        let mut acc = Poly::constant(ring, 1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ring, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(ring, &base);
            }
        }
        acc
    }

    /// The ring Frobenius r -> r^p: exponents scale by p, coefficients are
    /// raised to the p-th power (the identity on F_p).
    pub fn frobenius(&self, ring: &Ring) -> Poly {
        let f = ring.field();
        let p = ring.p();
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.pow(p), f.frobenius(*c)))
                .collect(),
        }
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self, ring: &Ring) -> Poly {
        match self.terms.first() {
            None => Poly::zero(),
            Some(&(_, c)) => self.scale(ring, ring.field().inv(c)),
        }
    }

    /// Substitute `images[i]` (in `target`) for variable i of `source`.
    pub fn substitute(&self, source: &Ring, images: &[Poly], target: &Ring) -> Poly {
        assert_eq!(images.len(), source.nvars());
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, *c as i64);
            for (i, img) in images.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = t.mul(target, &img.pow(target, e));
                }
            }
            acc = acc.add(target, &t);
        }
        acc
    }

    /// Re-sort after a change of monomial order over the same variables.
    pub fn reorder(&self, ring: &Ring) -> Poly {
        Poly::from_terms(ring, self.terms.clone())
    }

    /// Coefficient of a given monomial.
    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms
            .iter()
            .find(|(tm, _)| tm == m)
            .map_or(0, |(_, c)| *c)
    }
}

fn merge(ring: &Ring, a: &[(Monomial, u32)], b: &[(Monomial, u32)], bscale: u32) -> Poly {
    let f = ring.field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match ring.cmp(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0, f.mul(b[j].1, bscale)));
                j += 1;
            }
            Ordering::Equal => {
                let c = f.add(a[i].1, f.mul(b[j].1, bscale));
                if c != 0 {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|&(m, c)| (m, f.mul(c, bscale))));
    Poly { terms: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32, n: usize) -> Ring {
        Ring::standard(p, n).unwrap()
    }

    #[test]
    fn product_examples() {
        let r = ring(3, 2);
        let (x0, x1) = (r.var(0), r.var(1));
        let lhs = x0.add(&r, &x1).mul(&r, &x0.sub(&r, &x1));
        let rhs = x0.mul(&r, &x0).sub(&r, &x1.mul(&r, &x1));
        assert_eq!(lhs, rhs);
        assert!(x0.mul(&r, &Poly::zero()).is_zero());

        let r2 = ring(2, 2);
        let s = r2.var(0).add(&r2, &r2.var(1));
        let sq = s.mul(&r2, &s);
        assert_eq!(r2.fmt_poly(&sq), "x0^2 + x1^2");
    }

    #[test]
    fn frobenius_examples() {
        let r = ring(2, 2);
        let f = r.var(0).add(&r, &r.var(1));
        assert_eq!(f.frobenius(&r), f.mul(&r, &f));
        let c = Poly::constant(&r, 1);
        assert_eq!(c.frobenius(&r), c);

        let r5 = ring(5, 3);
        let g = r5.var(0).pow(&r5, 3).add(&r5, &r5.var(1).mul(&r5, &r5.var(2).pow(&r5, 2)));
        assert_eq!(g.frobenius(&r5).homogeneous_degree(), Some(15));
    }

    #[test]
    fn homogeneity() {
        let r = ring(7, 2);
        let f = r.var(0).add(&r, &Poly::constant(&r, 1));
        assert_eq!(f.homogeneous_degree(), None);
        assert!(!f.is_homogeneous());
        assert!(Poly::zero().is_homogeneous());
    }

    #[test]
    fn formatting_uses_signed_coefficients() {
        let r = ring(5, 2);
        let f = r.var(0).sub(&r, &r.var(1).scale(&r, 2));
        assert_eq!(r.fmt_poly(&f), "x0 - 2*x1");
        assert_eq!(r.fmt_poly(&Poly::zero()), "0");
    }

    #[test]
    fn ring_validation() {
        assert!(Ring::new(4, vec!["x".into()], MonomialOrder::Grevlex).is_err());
        assert!(Ring::new(5, vec!["x".into(), "x".into()], MonomialOrder::Grevlex).is_err());
        assert!(Ring::new(5, vec!["1x".into()], MonomialOrder::Grevlex).is_err());
        assert!(Ring::new(2147483647, vec!["x".into()], MonomialOrder::Grevlex).is_ok());
    }

    #[test]
    fn large_prime_arithmetic() {
        let r = Ring::standard(2147483647, 1).unwrap();
        let f = Poly::constant(&r, 2147483646).mul_term(&r, &Monomial::var(0), 1);
        let sq = f.mul(&r, &f);
        assert_eq!(sq.terms()[0].1, 1);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly(p: u32) -> impl Strategy<Value = Poly> {
            proptest::collection::vec((proptest::collection::vec(0u32..3, 3), 0..p), 0..5)
                .prop_map(move |ts| {
                    let r = Ring::standard(p, 3).unwrap();
                    Poly::from_terms(
                        &r,
                        ts.into_iter()
                            .map(|(e, c)| (Monomial::from_exponents(&e), c))
                            .collect(),
                    )
                })
        }

        proptest! {
            #[test]
            fn frobenius_is_ring_map(f in poly(3), g in poly(3)) {
                let r = Ring::standard(3, 3).unwrap();
                prop_assert_eq!(f.mul(&r, &g).frobenius(&r), f.frobenius(&r).mul(&r, &g.frobenius(&r)));
                prop_assert_eq!(f.add(&r, &g).frobenius(&r), f.frobenius(&r).add(&r, &g.frobenius(&r)));
                // over F_p the Frobenius is also the p-th power map
                prop_assert_eq!(f.frobenius(&r), f.pow(&r, 3));
            }

            #[test]
            fn ring_axioms(f in poly(5), g in poly(5), h in poly(5)) {
                let r = Ring::standard(5, 3).unwrap();
                prop_assert_eq!(f.mul(&r, &g), g.mul(&r, &f));
                prop_assert_eq!(f.mul(&r, &g.add(&r, &h)), f.mul(&r, &g).add(&r, &f.mul(&r, &h)));
                prop_assert!(f.sub(&r, &f).is_zero());
            }
        }
    }
}
