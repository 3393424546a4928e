//! Sparse Laurent polynomials over the rationals.
//!
//! Variable `0..4` are the kernel parameters `q1, q2, D, K`; variable
//! `4 + i` is `z_{i+1}`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::rational::{fmt_q, Q};

pub const Q1: usize = 0;
pub const Q2: usize = 1;
pub const D: usize = 2;
pub const K: usize = 3;
pub const PARAMS: usize = 4;

/// Variable index of `z_{i+1}`.
pub const fn z(i: usize) -> usize {
    PARAMS + i
}

/// Exponent vector with trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(v: usize) -> Self {
        Self::from_exps(&[(v, 1)])
    }

    pub fn from_exps(exps: &[(usize, i32)]) -> Self {
        let mut e = Vec::new();
        for &(v, k) in exps {
            if e.len() <= v {
                e.resize(v + 1, 0);
            }
            e[v] += k;
        }
        let mut m = Self(e);
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn exp(&self, v: usize) -> i32 {
        self.0.get(v).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut e = vec![0; n];
        for (i, x) in e.iter_mut().enumerate() {
            *x = self.exp(i) + other.exp(i);
        }
        let mut m = Self(e);
        m.trim();
        m
    }

    fn with_exp(&self, v: usize, k: i32) -> Self {
        let mut e = self.0.clone();
        if e.len() <= v {
            e.resize(v + 1, 0);
        }
        e[v] = k;
        let mut m = Self(e);
        m.trim();
        m
    }

    /// Renames variables through `f`.
    pub fn rename(&self, f: &impl Fn(usize) -> usize) -> Self {
        let pairs: Vec<(usize, i32)> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &k)| k != 0)
            .map(|(v, &k)| (f(v), k))
            .collect();
        Self::from_exps(&pairs)
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        let mut acc = Q::one();
        for (v, &k) in self.0.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let x = &point[v];
            let p = num_traits::pow(x.clone(), k.unsigned_abs() as usize);
            acc *= if k > 0 { p } else { p.recip() };
        }
        acc
    }

    /// The variables with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = (usize, i32)> + '_ {
        self.0.iter().enumerate().filter(|(_, &k)| k != 0).map(|(v, &k)| (v, k))
    }
}

pub fn var_name(v: usize) -> String {
    match v {
        Q1 => "q1".into(),
        Q2 => "q2".into(),
        D => "D".into(),
        K => "K".into(),
        _ => format!("z{}", v - PARAMS + 1),
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .support()
            .map(|(v, k)| if k == 1 { var_name(v) } else { format!("{}^{k}", var_name(v)) })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(v: usize) -> Self {
        Self::term(Monomial::var(v), Q::one())
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    /// The constant value, if this polynomial has no variables.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn rename(&self, f: &impl Fn(usize) -> usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.rename(f), c.clone());
        }
        out
    }

    /// Replaces variable `v` by the polynomial `by`. Exponents of `v` must be nonnegative.
    pub fn substitute(&self, v: usize, by: &Self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let k = m.exp(v);
            assert!(k >= 0, "substitution into a negative power");
            let rest = Self::term(m.with_exp(v, 0), c.clone());
            out = out.add(&rest.mul(&by.pow(k as u32)));
        }
        out
    }

    /// Highest variable index occurring, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(|m| m.exps().len().checked_sub(1)).max()
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.exp(v) != 0)
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        self.terms.iter().map(|(m, c)| c * m.eval(point)).sum()
    }

    /// Exact quotient by `x - c` with `x` a variable and `c` a monomial
    /// free of `x`; `None` if the division leaves a remainder.
    pub fn div_linear(&self, x: usize, c: &Monomial) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut by_power: BTreeMap<i32, Self> = BTreeMap::new();
        for (m, coef) in &self.terms {
            by_power
                .entry(m.exp(x))
                .or_default()
                .add_term(m.with_exp(x, 0), coef.clone());
        }
        let low = *by_power.keys().next()?;
        let top = *by_power.keys().next_back()?;
        if low < 0 {
            return None;
        }
        // synthetic division from the top coefficient down
        let mut quotient = Self::zero();
        let mut carry = Self::zero();
        for k in (0..=top).rev() {
            let a = by_power.remove(&k).unwrap_or_default();
            let cur = a.add(&carry.mul_monomial(c, &Q::one()));
            if k == 0 {
                return cur.is_zero().then_some(quotient);
            }
            for (m, coef) in cur.terms() {
                quotient.add_term(m.with_exp(x, k - 1), coef.clone());
            }
            carry = cur;
        }
        unreachable!()
    }

    /// Terms in canonical order: by z-part then parameter part, descending.
    fn sorted_terms(&self) -> Vec<(&Monomial, &Q)> {
        let mut v: Vec<(&Monomial, &Q)> = self.terms.iter().collect();
        let key = |m: &Monomial| {
            let e = m.exps();
            let zs: Vec<i32> = e.iter().skip(PARAMS).copied().collect();
            let ps: Vec<i32> = e.iter().take(PARAMS).copied().collect();
            (zs.iter().sum::<i32>(), zs, ps)
        };
        v.sort_by_key(|a| std::cmp::Reverse(key(a.0)));
        v
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c < &Q::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&fmt_q(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_q(&mag))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    fn x(i: usize) -> Poly {
        Poly::var(z(i))
    }

    #[test]
    fn arithmetic() {
        let a = x(0).add(&x(1));
        let b = x(0).sub(&x(1));
        let prod = a.mul(&b);
        assert_eq!(prod, x(0).pow(2).sub(&x(1).pow(2)));
        assert!(a.sub(&a).is_zero());
        assert_eq!(prod.eval(&[q(0), q(0), q(0), q(0), q(3), q(2)]), q(5));
        assert_eq!(prod.to_string(), "z1^2 - z2^2");
        assert_eq!(Poly::constant(frac(-3, 2)).to_string(), "-3/2");
    }

    #[test]
    fn linear_division() {
        // (z2 - q1 z1)(z2 + z1) / (z2 - q1 z1)
        let c = Monomial::from_exps(&[(Q1, 1), (z(0), 1)]);
        let f = x(1).sub(&Poly::term(c.clone(), q(1))).mul(&x(1).add(&x(0)));
        assert_eq!(f.div_linear(z(1), &c).unwrap(), x(1).add(&x(0)));
        assert!(f.add(&Poly::one()).div_linear(z(1), &c).is_none());
        assert_eq!(Poly::zero().div_linear(z(1), &c), Some(Poly::zero()));
    }

    #[test]
    fn substitution_and_rename() {
        let f = Poly::var(K).mul(&x(0));
        let g = f.substitute(K, &Poly::var(Q1).mul(&Poly::var(Q2)));
        assert_eq!(g.to_string(), "q1*q2*z1");
        let h = x(0).mul(&x(1).pow(2)).rename(&|v| if v == z(0) { z(1) } else if v == z(1) { z(0) } else { v });
        assert_eq!(h, x(1).mul(&x(0).pow(2)));
        assert_eq!(h.max_var(), Some(z(1)));
    }
}
