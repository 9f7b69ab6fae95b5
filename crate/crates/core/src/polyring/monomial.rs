use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

/// Hard cap on the number of variables; exponent vectors are stored inline.
pub const MAX_VARS: usize = 16;

/// Dense exponent vector with cached total degree.
#[derive(Clone, Copy)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl PartialEq for Monomial {
    #[inline]
    fn eq(&self, other: &Self) -> bool {
        self.deg == other.deg && self.exps == other.exps
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "x{:?}", &self.exps[..last])
    }
}

impl Default for Monomial {
    fn default() -> Self {
        Monomial::one()
    }
}

impl Monomial {
    pub const fn one() -> Self {
        Monomial {
            exps: [0; MAX_VARS],
            deg: 0,
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::one();
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= u16::MAX as u32, "exponent overflow");
            m.exps[i] = e as u16;
            m.deg += e;
        }
        m
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::one();
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow");
        }
        out.deg = self.deg + other.deg;
        out
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::one();
        for i in 0..MAX_VARS {
            out.exps[i] = other.exps[i] - self.exps[i];
        }
        out.deg = other.deg - self.deg;
        out
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::one();
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].max(other.exps[i]);
            out.deg += out.exps[i] as u32;
        }
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn pow(&self, e: u32) -> Monomial {
        let mut out = Monomial::one();
        for i in 0..MAX_VARS {
            let v = self.exps[i] as u32 * e;
            assert!(v <= u16::MAX as u32, "exponent overflow");
            out.exps[i] = v as u16;
        }
        out.deg = self.deg * e;
        out
    }

    /// Variables with nonzero exponent.
    pub fn support(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e != 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Degree restricted to the variables `range`.
    fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().map(|&e| e as u32).sum()
    }
}

/// Monomial orders supported by the ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Block order: grevlex on the first `k` variables, ties broken by grevlex
    /// on the rest. Any polynomial whose leading monomial avoids the first
    /// block lies entirely in the remaining variables.
    Elimination(usize),
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial, nvars: usize) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex(a, b, 0..nvars, a.deg, b.deg),
            MonomialOrder::Lex => {
                for i in 0..nvars {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Elimination(k) => {
                let k = k.min(nvars);
                grevlex(a, b, 0..k, a.partial_degree(0..k), b.partial_degree(0..k)).then_with(
                    || {
                        grevlex(
                            a,
                            b,
                            k..nvars,
                            a.partial_degree(k..nvars),
                            b.partial_degree(k..nvars),
                        )
                    },
                )
            }
        }
    }
}

#[inline]
fn grevlex(a: &Monomial, b: &Monomial, range: std::ops::Range<usize>, da: u32, db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    for i in range.rev() {
        match a.exps[i].cmp(&b.exps[i]) {
            Ordering::Equal => continue,
            // smaller exponent in the last differing variable wins
            other => return other.reverse(),
        }
    }
    Ordering::Equal
}

/// All monomials of total degree `d` in `nvars` variables, descending in `order`.
pub fn monomials_of_degree(nvars: usize, d: i64, order: MonomialOrder) -> Vec<Monomial> {
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    let mut exps = vec![0u32; nvars];
    fill(&mut exps, 0, d as u32, &mut out);
    out.sort_by(|a, b| order.cmp(b, a, nvars));
    out
}

fn fill(exps: &mut [u32], i: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if i + 1 == exps.len() {
        exps[i] = remaining;
        out.push(Monomial::from_exponents(exps));
        return;
    }
    for e in (0..=remaining).rev() {
        exps[i] = e;
        fill(exps, i + 1, remaining - e, out);
    }
    exps[i] = 0;
}

/// Number of monomials of degree `d` in `nvars` variables.
pub fn count_monomials(nvars: usize, d: i64) -> u64 {
    if d < 0 {
        return 0;
    }
    if nvars == 0 {
        return u64::from(d == 0);
    }
    binomial(d as u64 + nvars as u64 - 1, nvars as u64 - 1)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::Grevlex;
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0]), 3), Ordering::Greater);
        // x0*x2 < x1^2 in grevlex
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0]), 3), Ordering::Less);
        assert_eq!(o.cmp(&m(&[0, 0, 2]), &m(&[1, 0, 0]), 3), Ordering::Greater);
    }

    #[test]
    fn lex_and_elimination() {
        let lex = MonomialOrder::Lex;
        assert_eq!(lex.cmp(&m(&[1, 0]), &m(&[0, 5]), 2), Ordering::Greater);
        let elim = MonomialOrder::Elimination(1);
        assert_eq!(elim.cmp(&m(&[1, 0, 0]), &m(&[0, 3, 3]), 3), Ordering::Greater);
        assert_eq!(elim.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 1]), 3), Ordering::Greater);
    }

    #[test]
    fn enumeration_counts() {
        for n in 1..5 {
            for d in 0..6 {
                let ms = monomials_of_degree(n, d, MonomialOrder::Grevlex);
                assert_eq!(ms.len() as u64, count_monomials(n, d));
                assert!(ms.windows(2).all(|w| MonomialOrder::Grevlex.cmp(&w[0], &w[1], n)
                    == Ordering::Greater));
            }
        }
        assert!(monomials_of_degree(3, -1, MonomialOrder::Grevlex).is_empty());
        assert_eq!(count_monomials(3, 2), 6);
    }

    #[test]
    fn divisibility() {
        let a = m(&[1, 2]);
        let b = m(&[2, 2]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), m(&[1, 0]));
        assert_eq!(a.lcm(&m(&[0, 3])), m(&[1, 3]));
        assert!(m(&[1, 0]).is_coprime(&m(&[0, 4])));
    }
}
