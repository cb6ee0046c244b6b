//! Exponent vectors. The derived `Ord` is plain lexicographic comparison of
//! exponent vectors; it is a canonical tie-breaker only, never a monomial
//! order. Monomial orders live in [`crate::order`].

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Monomial(e)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// Total degree restricted to a set of variable indices.
    pub fn degree_in(&self, vars: &[usize]) -> u64 {
        vars.iter().map(|&i| self.0[i] as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.arity(), other.arity());
        self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_into(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(
                other.0.iter().zip(&self.0).map(|(&b, &a)| b - a).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// True when the exponent is supported on a single variable (or is 1).
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut hit = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if hit.is_some() {
                    return None;
                }
                hit = Some(i);
            }
        }
        hit
    }
}

/// All monomials of exact total degree `d` in the variables `vars` of a ring
/// of the given arity, in a fixed deterministic order (lexicographic descending
/// on the exponent vector).
pub fn monomials_of_degree(arity: usize, vars: &[usize], d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; arity];
    fn rec(vars: &[usize], pos: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == vars.len() {
            current[vars[pos]] = left;
            out.push(Monomial(current.clone()));
            current[vars[pos]] = 0;
            return;
        }
        for e in (0..=left).rev() {
            current[vars[pos]] = e;
            rec(vars, pos + 1, left - e, current, out);
        }
        current[vars[pos]] = 0;
    }
    if vars.is_empty() {
        if d == 0 {
            out.push(Monomial(current));
        }
        return out;
    }
    rec(vars, 0, d, &mut current, &mut out);
    out
}
