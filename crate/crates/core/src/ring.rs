//! Polynomial rings: an ordered list of variable names plus a monomial order.
//!
//! Rings are immutable and cheaply clonable (`Arc` inside). Two rings compare
//! equal when their variable lists and orders agree, so a polynomial can check
//! that it is being combined with peers from the same ring.

use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct PolyRing {
    inner: Arc<RingInner>,
}

#[derive(Debug, PartialEq, Eq)]
struct RingInner {
    vars: Vec<String>,
    order: MonomialOrder,
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}
impl Eq for PolyRing {}

impl PolyRing {
    pub fn new<S: Into<String>>(vars: Vec<S>, order: MonomialOrder) -> Self {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        let mut seen = std::collections::BTreeSet::new();
        for v in &vars {
            assert!(seen.insert(v.clone()), "duplicate variable name {v:?}");
        }
        if let MonomialOrder::Elim(k) = order {
            assert!(k <= vars.len(), "elimination block exceeds arity");
        }
        PolyRing {
            inner: Arc::new(RingInner { vars, order }),
        }
    }

    pub fn arity(&self) -> usize {
        self.inner.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.inner.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.inner.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.inner.vars.iter().position(|v| v == name)
    }

    pub fn order(&self) -> MonomialOrder {
        self.inner.order
    }

    /// Same variables under a different order.
    pub fn with_order(&self, order: MonomialOrder) -> PolyRing {
        PolyRing::new(self.inner.vars.clone(), order)
    }

    /// New ring with extra variables prepended (used for elimination tags;
    /// internal names start with `#` so they cannot collide with parsed
    /// input).
    pub fn prepend_vars<S: Into<String>>(&self, new: Vec<S>, order: MonomialOrder) -> PolyRing {
        let mut vars: Vec<String> = new.into_iter().map(Into::into).collect();
        vars.extend(self.inner.vars.iter().cloned());
        PolyRing::new(vars, order)
    }

    /// New ring with extra variables appended.
    pub fn append_vars<S: Into<String>>(&self, new: Vec<S>, order: MonomialOrder) -> PolyRing {
        let mut vars = self.inner.vars.clone();
        vars.extend(new.into_iter().map(Into::into));
        PolyRing::new(vars, order)
    }

    pub fn monomial_to_string(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.var_name(i).to_string()),
                _ => parts.push(format!("{}^{}", self.var_name(i), e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.inner.vars.join(", "))
    }
}
