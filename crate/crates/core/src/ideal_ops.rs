//! Ideal calculus built on the Gröbner engine: intersections (by tag
//! elimination), products, equality, and radical membership with a
//! least-exponent search.

use crate::groebner::IdealSpec;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Poly;
use crate::rational::Q;
use crate::ring::PolyRing;
use num_traits::One;

/// Exponent bound for the radical least-exponent search.
pub const RADICAL_EXPONENT_BOUND: u32 = 64;

fn fresh_tag(ring: &PolyRing, stem: &str) -> String {
    let mut name = format!("#{stem}");
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

fn strip_first_var(p: &Poly, target: &PolyRing) -> Poly {
    Poly::from_terms(
        target,
        p.terms().iter().map(|(m, c)| {
            assert_eq!(m.0[0], 0, "tag variable survives elimination filter");
            (Monomial(m.0[1..].to_vec()), c.clone())
        }),
    )
}

/// `a ∩ b` via the standard tag construction: with a fresh variable t under
/// an elimination order, the intersection is `(t*a + (1-t)*b) ∩ R`.
pub fn ideal_intersection(a: &IdealSpec, b: &IdealSpec) -> IdealSpec {
    assert_eq!(a.ring, b.ring, "intersection across different rings");
    let ring = &a.ring;
    let tag = fresh_tag(ring, "0");
    let ext = ring.prepend_vars(vec![tag], MonomialOrder::Elim(1));
    let shift: Vec<usize> = (1..=ring.arity()).collect();

    let t = Poly::var(&ext, 0);
    let one_minus_t = Poly::one(&ext).sub(&t);
    let mut gens = Vec::new();
    for f in &a.gens {
        gens.push(t.mul(&f.embed(&ext, &shift)));
    }
    for g in &b.gens {
        gens.push(one_minus_t.mul(&g.embed(&ext, &shift)));
    }

    let gb = IdealSpec::new(ext, gens).groebner(false);
    let kept: Vec<Poly> = gb
        .elements()
        .iter()
        .map(|v| v.comp(0))
        .filter(|p| p.terms().iter().all(|(m, _)| m.0[0] == 0))
        .map(|p| strip_first_var(p, ring))
        .collect();
    IdealSpec::new(ring.clone(), kept)
}

/// `a * b`: all pairwise products of generators.
pub fn ideal_product(a: &IdealSpec, b: &IdealSpec) -> IdealSpec {
    assert_eq!(a.ring, b.ring, "product across different rings");
    let mut gens = Vec::new();
    for f in &a.gens {
        for g in &b.gens {
            let p = f.mul(g);
            if !p.is_zero() {
                gens.push(p);
            }
        }
    }
    IdealSpec::new(a.ring.clone(), gens)
}

/// Equality as ideals: mutual membership of generators.
pub fn ideals_equal(a: &IdealSpec, b: &IdealSpec) -> bool {
    let gb_a = a.groebner(false);
    let gb_b = b.groebner(false);
    a.gens
        .iter()
        .all(|f| gb_b.normal_form(&crate::groebner::Vect::from_poly(f.clone())).remainder.is_zero())
        && b.gens
            .iter()
            .all(|g| gb_a.normal_form(&crate::groebner::Vect::from_poly(g.clone())).remainder.is_zero())
}

/// Outcome of a radical membership query.
///
/// `member` is decided exactly (Rabinowitsch trick). When `member` is true,
/// `exponent` is the least e with h^e in the ideal if that e is at most
/// [`RADICAL_EXPONENT_BOUND`], and `None` when the true exponent lies beyond
/// the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalMembership {
    pub member: bool,
    pub exponent: Option<u32>,
}

pub fn radical_membership(ideal: &IdealSpec, h: &Poly) -> RadicalMembership {
    assert_eq!(h.ring(), &ideal.ring);
    if h.is_zero() {
        return RadicalMembership {
            member: true,
            exponent: Some(1),
        };
    }

    // h in rad(I)  iff  1 in I + (1 - w*h) for a fresh variable w.
    let ring = &ideal.ring;
    let tag = fresh_tag(ring, "rab");
    let ext = ring.append_vars(vec![tag], MonomialOrder::GrevLex);
    let id: Vec<usize> = (0..ring.arity()).collect();
    let w = Poly::var(&ext, ring.arity());
    let mut gens: Vec<Poly> = ideal.gens.iter().map(|g| g.embed(&ext, &id)).collect();
    gens.push(Poly::one(&ext).sub(&w.mul(&h.embed(&ext, &id))));
    let member = IdealSpec::new(ext, gens).groebner(false).contains_unit();
    if !member {
        return RadicalMembership {
            member: false,
            exponent: None,
        };
    }

    let gb = ideal.groebner(false);
    let mut power = Poly::one(ring);
    for e in 1..=RADICAL_EXPONENT_BOUND {
        power = power.mul(h);
        let nf = gb.normal_form(&crate::groebner::Vect::from_poly(power.clone()));
        if nf.remainder.is_zero() {
            return RadicalMembership {
                member: true,
                exponent: Some(e),
            };
        }
    }
    RadicalMembership {
        member: true,
        exponent: None,
    }
}

/// Convenience: plain membership of a polynomial in an ideal.
pub fn ideal_member(ideal: &IdealSpec, h: &Poly) -> bool {
    ideal
        .groebner(false)
        .normal_form(&crate::groebner::Vect::from_poly(h.clone()))
        .remainder
        .is_zero()
}

/// The unit ideal test.
pub fn is_unit_ideal(ideal: &IdealSpec) -> bool {
    ideal.groebner(false).contains_unit()
}

/// Generators of m^d for the maximal ideal at the origin (all variables).
pub fn maximal_ideal_power(ring: &PolyRing, d: u32) -> Vec<Poly> {
    let vars: Vec<usize> = (0..ring.arity()).collect();
    crate::monomial::monomials_of_degree(ring.arity(), &vars, d)
        .into_iter()
        .map(|m| Poly::term(ring, m, Q::one()))
        .collect()
}
