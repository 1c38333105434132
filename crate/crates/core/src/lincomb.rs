//! Finite linear combinations with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::ExactScalar;

/// How a basis label prints inside a sum.
pub trait Label: Ord + Clone {
    fn render(&self) -> String;
}

/// `Σ c_k · k` with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq)]
pub struct LinComb<K: Label> {
    q0: u32,
    terms: BTreeMap<K, ExactScalar>,
}

impl<K: Label> LinComb<K> {
    pub fn zero(q0: u32) -> Self {
        LinComb { q0, terms: BTreeMap::new() }
    }

    pub fn basis(q0: u32, k: K) -> Self {
        Self::term(k, ExactScalar::one(q0))
    }

    pub fn term(k: K, c: ExactScalar) -> Self {
        let mut x = Self::zero(c.q0());
        x.add_term(k, c);
        x
    }

    pub fn q0(&self) -> u32 {
        self.q0
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

    pub fn iter(&self) -> impl Iterator<Item = (&K, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: &K) -> ExactScalar {
        self.terms.get(k).cloned().unwrap_or_else(|| ExactScalar::zero(self.q0))
    }

    pub fn add_term(&mut self, k: K, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &ExactScalar) {
        for (k, x) in &other.terms {
            self.add_term(k.clone(), x * c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &ExactScalar::one(self.q0));
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &ExactScalar::from_int(self.q0, -1));
        out
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = Self::zero(self.q0);
        out.add_scaled(self, c);
        out
    }

    /// Relabels every term; colliding labels are summed.
    pub fn map<L: Label>(&self, mut f: impl FnMut(&K) -> (L, ExactScalar)) -> LinComb<L> {
        let mut out = LinComb::zero(self.q0);
        for (k, c) in &self.terms {
            let (l, s) = f(k);
            out.add_term(l, c * &s);
        }
        out
    }
}

impl<K: Label> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let cs = c.to_string();
            match cs.as_str() {
                "1" => write!(f, "{}", k.render())?,
                _ if cs.contains(' ') => write!(f, "({cs}) · {}", k.render())?,
                _ => write!(f, "{cs} · {}", k.render())?,
            }
        }
        Ok(())
    }
}

impl<K: Label> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Label for crate::quiver::DimVec {
    fn render(&self) -> String {
        format!("X^{self}")
    }
}

impl<A: Label, B: Label> Label for (A, B) {
    fn render(&self) -> String {
        format!("{} ⊗ {}", self.0.render(), self.1.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::DimVec;

    #[test]
    fn cancellation_prunes_terms() {
        let x = LinComb::term(DimVec(vec![1, 0]), ExactScalar::vpow(2, 1));
        let y = x.sub(&x);
        assert!(y.is_zero());
        assert_eq!(y.to_string(), "0");
        let z = x.add(&LinComb::basis(2, DimVec(vec![0, 0])));
        assert_eq!(z.to_string(), "X^(0,0) + v · X^(1,0)");
    }
}
