//! Sparse multivariate polynomials over Q.
//!
//! Terms are kept strictly descending under the owning ring's monomial order
//! with no zero coefficients, so equality is structural and every operation
//! is deterministic.

use crate::monomial::Monomial;
use crate::rational::{is_zero, qi, Q};
use crate::ring::PolyRing;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    ring: PolyRing,
    terms: Vec<(Monomial, Q)>,
}

impl Poly {
    pub fn zero(ring: &PolyRing) -> Self {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &PolyRing) -> Self {
        Poly::constant(ring, Q::one())
    }

    pub fn constant(ring: &PolyRing, c: Q) -> Self {
        if is_zero(&c) {
            Poly::zero(ring)
        } else {
            Poly {
                ring: ring.clone(),
                terms: vec![(Monomial::one(ring.arity()), c)],
            }
        }
    }

    pub fn var(ring: &PolyRing, i: usize) -> Self {
        Poly {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.arity(), i), Q::one())],
        }
    }

    pub fn term(ring: &PolyRing, m: Monomial, c: Q) -> Self {
        assert_eq!(m.arity(), ring.arity());
        if is_zero(&c) {
            Poly::zero(ring)
        } else {
            Poly {
                ring: ring.clone(),
                terms: vec![(m, c)],
            }
        }
    }

    pub fn linear_form(ring: &PolyRing, coeffs: &[Q]) -> Self {
        assert_eq!(coeffs.len(), ring.arity());
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !is_zero(c))
            .map(|(i, c)| (Monomial::var(ring.arity(), i), c.clone()));
        Poly::from_terms(ring, terms)
    }

    /// Build from arbitrary terms: merges duplicates, drops zeros, sorts.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(ring: &PolyRing, it: I) -> Self {
        let mut acc: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (m, c) in it {
            debug_assert_eq!(m.arity(), ring.arity());
            let e = acc.entry(m).or_insert_with(Q::zero);
            *e += c;
        }
        Poly::from_map(ring, acc)
    }

    fn from_map(ring: &PolyRing, acc: BTreeMap<Monomial, Q>) -> Self {
        let order = ring.order();
        let mut terms: Vec<(Monomial, Q)> =
            acc.into_iter().filter(|(_, c)| !is_zero(c)).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[(Monomial, Q)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Lowest total degree among the terms (the order of vanishing at 0).
    pub fn min_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_part(&self) -> Q {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Q::zero)
    }

    fn assert_same_ring(&self, other: &Poly) {
        assert_eq!(self.ring, other.ring, "mixed rings");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_same_ring(other);
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match order.cmp(&self.terms[i].0, &other.terms[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !is_zero(&c) {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if is_zero(c) {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Multiply by a single term. Keeps sortedness (monomial orders are
    /// multiplicative), so no re-sort is needed.
    pub fn mul_term(&self, m: &Monomial, c: &Q) -> Poly {
        if is_zero(c) {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut b = ExpandBudget::unlimited();
        self.mul_budgeted(other, &mut b).expect("unlimited budget")
    }

    pub fn mul_capped(&self, other: &Poly, cap: usize) -> Result<Poly, PolyOverflow> {
        let mut b = ExpandBudget {
            term_cap: cap,
            work: u64::MAX,
        };
        self.mul_budgeted(other, &mut b)
    }

    /// Multiplication that fails once the result would exceed the term cap
    /// or the pairwise work would exhaust the budget. Used on untrusted
    /// input, where both the output size and the time to produce it must be
    /// bounded.
    pub fn mul_budgeted(
        &self,
        other: &Poly,
        budget: &mut ExpandBudget,
    ) -> Result<Poly, PolyOverflow> {
        self.assert_same_ring(other);
        let pairs = (self.terms.len() as u128) * (other.terms.len() as u128);
        if pairs > budget.work as u128 {
            return Err(PolyOverflow::Work);
        }
        budget.work -= pairs as u64;
        let mut acc: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (am, ac) in &self.terms {
            for (bm, bc) in &other.terms {
                let m = am.mul(bm);
                let e = acc.entry(m).or_insert_with(Q::zero);
                *e += ac * bc;
                if acc.len() > budget.term_cap {
                    return Err(PolyOverflow::Terms);
                }
            }
        }
        Ok(Poly::from_map(&self.ring, acc))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut b = ExpandBudget::unlimited();
        self.pow_budgeted(e, &mut b).expect("unlimited budget")
    }

    pub fn pow_capped(&self, e: u32, cap: usize) -> Result<Poly, PolyOverflow> {
        let mut b = ExpandBudget {
            term_cap: cap,
            work: u64::MAX,
        };
        self.pow_budgeted(e, &mut b)
    }

    pub fn pow_budgeted(&self, e: u32, budget: &mut ExpandBudget) -> Result<Poly, PolyOverflow> {
        let mut result = Poly::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                result = result.mul_budgeted(&base, budget)?;
            }
            e >>= 1;
            if e == 0 {
                return Ok(result);
            }
            base = base.mul_budgeted(&base, budget)?;
        }
    }

    /// Partial derivative with respect to variable `i`.
    pub fn diff(&self, i: usize) -> Poly {
        let terms = self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
            let e = m.0[i];
            let mut m2 = m.clone();
            m2.0[i] = e - 1;
            (m2, c * qi(e as i64))
        });
        Poly::from_terms(&self.ring, terms)
    }

    /// Substitute `images[i]` (in `target` ring) for variable `i`.
    pub fn subst(&self, target: &PolyRing, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.arity());
        for im in images {
            assert_eq!(im.ring(), target, "image outside target ring");
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut prod = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    prod = prod.mul(&images[i].pow(e));
                }
            }
            out = out.add(&prod);
        }
        out
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.ring.arity());
        let mut out = Q::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    v *= &point[i];
                }
            }
            out += v;
        }
        out
    }

    /// Substitute constants for a subset of variables, keeping the ring.
    pub fn specialize(&self, values: &[(usize, Q)]) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut m2 = m.clone();
            let mut c2 = c.clone();
            for (i, v) in values {
                let e = m2.0[*i];
                m2.0[*i] = 0;
                for _ in 0..e {
                    c2 *= v;
                }
            }
            (m2, c2)
        });
        Poly::from_terms(&self.ring, terms)
    }

    /// Move into a ring with the same variables but a different order.
    pub fn reorder(&self, target: &PolyRing) -> Poly {
        assert_eq!(self.ring.vars(), target.vars(), "reorder changes variables");
        Poly::from_terms(
            target,
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Embed into `target` via `var_map`: variable `i` here becomes variable
    /// `var_map[i]` there.
    pub fn embed(&self, target: &PolyRing, var_map: &[usize]) -> Poly {
        assert_eq!(var_map.len(), self.ring.arity());
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; target.arity()];
            for (i, &exp) in m.0.iter().enumerate() {
                e[var_map[i]] += exp;
            }
            (Monomial(e), c.clone())
        });
        Poly::from_terms(target, terms)
    }

    /// Embed by matching variable names; every variable appearing in a term
    /// must exist in `target`.
    pub fn embed_by_name(&self, target: &PolyRing) -> Poly {
        let map: Vec<usize> = self
            .ring
            .vars()
            .iter()
            .map(|v| {
                target
                    .var_index(v)
                    .unwrap_or_else(|| panic!("variable {v:?} missing from target ring"))
            })
            .collect();
        self.embed(target, &map)
    }

    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = Q::one() / lc;
                self.scale(&inv)
            }
        }
    }
}

/// Expansion limits for operations on untrusted input.
#[derive(Debug, Clone, Copy)]
pub struct ExpandBudget {
    /// Maximum number of terms any intermediate result may hold.
    pub term_cap: usize,
    /// Remaining pairwise multiplication steps.
    pub work: u64,
}

impl ExpandBudget {
    pub fn unlimited() -> Self {
        ExpandBudget {
            term_cap: usize::MAX,
            work: u64::MAX,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOverflow {
    Terms,
    Work,
}

impl fmt::Display for PolyOverflow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyOverflow::Terms => write!(f, "term count exceeds cap"),
            PolyOverflow::Work => write!(f, "work budget exhausted"),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &Q::zero();
            let mag = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = self.ring.monomial_to_string(m);
            if m.is_one() {
                write!(f, "{}", crate::rational::render(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", crate::rational::render(&mag))?;
            }
        }
        Ok(())
    }
}
