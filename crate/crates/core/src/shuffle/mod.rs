//! The shuffle algebra of symmetric rational functions with the
//! `zeta`-kernel product, for the plane with its two-torus action.

mod parse;
pub mod poly;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::rational::{q, Q};

pub use parse::{parse_element, parse_poly};
pub use poly::{Monomial, Poly};

use poly::{z, D, K, PARAMS, Q1, Q2};

/// Which kernel the product uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelMode {
    /// `zeta(x) = 1 + x D / ((1 - x)(1 - x K))` with formal `D`, `K`.
    Formal,
    /// `zeta(x) = (1 - q1 x)(1 - q2 x) / ((1 - x)(1 - q1 q2 x))`.
    A2,
    /// `zeta = 1`: plain symmetrization.
    Degenerate,
}

impl std::str::FromStr for KernelMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "formal" => Ok(Self::Formal),
            "a2" => Ok(Self::A2),
            "degenerate" => Ok(Self::Degenerate),
            _ => Err(Error::Parse(format!("unknown kernel mode {s:?}"))),
        }
    }
}

/// The binomial `z_hi - mu z_lo` with `mu` a monomial in the parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub hi: usize,
    pub lo: usize,
    pub mu: Monomial,
}

impl Factor {
    /// Builds `z_hi - mu z_lo`, normalized so that `mu = 1` factors have
    /// `hi > lo`. Returns the sign picked up by the normalization.
    pub fn new(hi: usize, lo: usize, mu: Monomial) -> (Self, i32) {
        assert_ne!(hi, lo, "degenerate factor");
        if mu.is_one() && hi < lo {
            (Self { hi: lo, lo: hi, mu }, -1)
        } else {
            (Self { hi, lo, mu }, 1)
        }
    }

    pub fn to_poly(&self) -> Poly {
        Poly::var(z(self.hi)).sub(&Poly::term(self.mu.mul(&Monomial::var(z(self.lo))), Q::one()))
    }

    fn cancel_from(&self, num: &Poly) -> Option<Poly> {
        num.div_linear(z(self.hi), &self.mu.mul(&Monomial::var(z(self.lo))))
    }

    fn rename(&self, map: &[usize]) -> (Self, i32) {
        Self::new(map[self.hi], map[self.lo], self.mu.clone())
    }

    fn eval(&self, point: &[Q]) -> Q {
        &point[z(self.hi)] - self.mu.eval(point) * &point[z(self.lo)]
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mu.is_one() {
            write!(f, "(z{} - z{})", self.hi + 1, self.lo + 1)
        } else {
            write!(f, "(z{} - {}*z{})", self.hi + 1, self.mu, self.lo + 1)
        }
    }
}

/// `num / prod den` with a multiset of binomial denominators.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RatFn {
    num: Poly,
    den: BTreeMap<Factor, usize>,
}

impl RatFn {
    pub fn from_poly(num: Poly) -> Self {
        Self {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> impl Iterator<Item = (&Factor, usize)> {
        self.den.iter().map(|(f, &k)| (f, k))
    }

    fn den_poly(&self) -> Poly {
        self.den
            .iter()
            .fold(Poly::one(), |acc, (f, &k)| acc.mul(&f.to_poly().pow(k as u32)))
    }

    /// Exact equality by cross-multiplication.
    pub fn equals(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den_poly()) == other.num.mul(&self.den_poly())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut den = self.den.clone();
        for (f, k) in &other.den {
            *den.entry(f.clone()).or_default() += k;
        }
        Self {
            num: self.num.mul(&other.num),
            den,
        }
    }

    /// Renames `z_i` to `z_{map[i]}`.
    pub fn rename(&self, map: &[usize]) -> Self {
        let mut sign = 1;
        let mut den = BTreeMap::new();
        for (f, &k) in &self.den {
            let (g, s) = f.rename(map);
            if s < 0 && k % 2 == 1 {
                sign = -sign;
            }
            *den.entry(g).or_default() += k;
        }
        let num = self.num.rename(&|v| if v >= PARAMS { z(map[v - PARAMS]) } else { v });
        Self {
            num: if sign < 0 { num.neg() } else { num },
            den,
        }
    }

    /// Sum over a common denominator, then cancellation of factors that
    /// divide the numerator.
    pub fn sum(items: Vec<Self>) -> Self {
        let mut lcm: BTreeMap<Factor, usize> = BTreeMap::new();
        for it in &items {
            for (f, &k) in &it.den {
                let e = lcm.entry(f.clone()).or_default();
                *e = (*e).max(k);
            }
        }
        let mut num = Poly::zero();
        for it in items {
            let mut term = it.num;
            for (f, &k) in &lcm {
                let have = it.den.get(f).copied().unwrap_or(0);
                for _ in have..k {
                    term = term.mul(&f.to_poly());
                }
            }
            num = num.add(&term);
        }
        let mut out = Self { num, den: lcm };
        out.cancel();
        out
    }

    /// Removes denominator factors that divide the numerator exactly.
    pub fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let factors: Vec<Factor> = self.den.keys().cloned().collect();
        for f in factors {
            while self.den.get(&f).copied().unwrap_or(0) > 0 {
                match f.cancel_from(&self.num) {
                    Some(qt) => {
                        self.num = qt;
                        let k = self.den.get_mut(&f).expect("present");
                        *k -= 1;
                        if *k == 0 {
                            self.den.remove(&f);
                        }
                    }
                    None => break,
                }
            }
        }
    }

    /// Substitutes `D = (1 - q1)(1 - q2)` and `K = q1 q2`.
    pub fn specialize_a2(&self) -> Self {
        let kk = Poly::var(Q1).mul(&Poly::var(Q2));
        let dd = Poly::one().sub(&Poly::var(Q1)).mul(&Poly::one().sub(&Poly::var(Q2)));
        let num = self.num.substitute(K, &kk).substitute(D, &dd);
        let mut den = BTreeMap::new();
        for (f, &k) in &self.den {
            let kexp = f.mu.exp(K);
            assert!(f.mu.exp(D) == 0, "D never enters a denominator");
            let mut pairs: Vec<(usize, i32)> = f.mu.support().filter(|(v, _)| *v != K).collect();
            pairs.push((Q1, kexp));
            pairs.push((Q2, kexp));
            let (g, _) = Factor::new(f.hi, f.lo, Monomial::from_exps(&pairs));
            *den.entry(g).or_default() += k;
        }
        Self { num, den }
    }

    pub fn eval(&self, point: &[Q]) -> Result<Q> {
        let mut den = Q::one();
        for (f, &k) in &self.den {
            let v = f.eval(point);
            if v.is_zero() {
                return Err(Error::Pole(f.to_string()));
            }
            den *= num_traits::pow(v, k);
        }
        Ok(self.num.eval(point) / den)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(fac, &k)| if k == 1 { fac.to_string() } else { format!("{fac}^{k}") })
            .collect();
        write!(f, "({}) / ({})", self.num, den.join("*"))
    }
}

/// `zeta(z_i / z_j)` with denominators cleared into binomials.
pub fn zeta(mode: KernelMode, i: usize, j: usize) -> RatFn {
    let zi = Poly::var(z(i));
    let zj = Poly::var(z(j));
    let (d1, s1) = Factor::new(j, i, Monomial::one());
    let (num, mu) = match mode {
        KernelMode::Degenerate => return RatFn::from_poly(Poly::one()),
        KernelMode::Formal => {
            let kz = Poly::var(K).mul(&zi);
            let n = zj.sub(&zi).mul(&zj.sub(&kz)).add(&Poly::var(D).mul(&zi).mul(&zj));
            (n, Monomial::var(K))
        }
        KernelMode::A2 => {
            let a = zj.sub(&Poly::var(Q1).mul(&zi));
            let b = zj.sub(&Poly::var(Q2).mul(&zi));
            (a.mul(&b), Monomial::from_exps(&[(Q1, 1), (Q2, 1)]))
        }
    };
    let (d2, _) = Factor::new(j, i, mu);
    let mut den = BTreeMap::new();
    den.insert(d1, 1);
    den.insert(d2, 1);
    RatFn {
        num: if s1 < 0 { num.neg() } else { num },
        den,
    }
}

/// Kernel parameters and `z`-coordinates of an evaluation point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pub params: [Q; PARAMS],
    pub z: Vec<Q>,
}

impl Point {
    /// Equivariant parameters; `D` and `K` are derived from `q1`, `q2`.
    pub fn a2(q1: Q, q2: Q, z: Vec<Q>) -> Self {
        let d = (Q::one() - &q1) * (Q::one() - &q2);
        let k = &q1 * &q2;
        Self {
            params: [q1, q2, d, k],
            z,
        }
    }

    pub fn formal(d: Q, k: Q, z: Vec<Q>) -> Self {
        Self {
            params: [Q::zero(), Q::zero(), d, k],
            z,
        }
    }

    fn assignment(&self) -> Vec<Q> {
        self.params.iter().cloned().chain(self.z.iter().cloned()).collect()
    }

    fn restrict(&self, slots: &[usize]) -> Self {
        Self {
            params: self.params.clone(),
            z: slots.iter().map(|&s| self.z[s].clone()).collect(),
        }
    }
}

/// The value of `zeta(x)` at a point's parameters.
pub fn zeta_value(mode: KernelMode, x: &Q, point: &Point) -> Result<Q> {
    let one = Q::one();
    let [q1, q2, d, k] = &point.params;
    match mode {
        KernelMode::Degenerate => Ok(one),
        KernelMode::Formal => {
            let den = (&one - x) * (&one - x * k);
            if den.is_zero() {
                return Err(Error::Pole(format!("zeta at {x}")));
            }
            Ok(&one + x * d / den)
        }
        KernelMode::A2 => {
            let den = (&one - x) * (&one - x * q1 * q2);
            if den.is_zero() {
                return Err(Error::Pole(format!("zeta at {x}")));
            }
            Ok((&one - q1 * x) * (&one - q2 * x) / den)
        }
    }
}

/// A symmetric rational function in `z_1..z_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleElement {
    n: usize,
    f: RatFn,
}

impl ShuffleElement {
    /// A polynomial element of degree `n`; checked for symmetry.
    pub fn from_poly(n: usize, num: Poly) -> Result<Self> {
        if let Some(v) = num.max_var().filter(|&v| v >= z(n)) {
            return Err(Error::DegreeMismatch(n, v - PARAMS + 1));
        }
        let e = Self {
            n,
            f: RatFn::from_poly(num),
        };
        if let Some(k) = e.asymmetric_transposition() {
            return Err(Error::NotSymmetricElement(k));
        }
        Ok(e)
    }

    pub fn scalar(c: Q) -> Self {
        Self {
            n: 0,
            f: RatFn::from_poly(Poly::constant(c)),
        }
    }

    pub fn unit() -> Self {
        Self::scalar(Q::one())
    }

    /// The constant 1 in degree `n`.
    pub fn one_in(n: usize) -> Self {
        Self {
            n,
            f: RatFn::from_poly(Poly::one()),
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn ratfn(&self) -> &RatFn {
        &self.f
    }

    /// The first `k` with `f(.., z_{k+1}, z_{k+2}, ..)` not invariant under the swap.
    pub fn asymmetric_transposition(&self) -> Option<usize> {
        (0..self.n.saturating_sub(1)).find(|&k| {
            let mut map: Vec<usize> = (0..self.n).collect();
            map.swap(k, k + 1);
            !self.f.rename(&map).equals(&self.f)
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetric_transposition().is_none()
    }

    pub fn equals_exact(&self, other: &Self) -> bool {
        self.n == other.n && self.f.equals(&other.f)
    }

    /// Substitutes the equivariant values of `D` and `K`.
    pub fn specialize_a2(&self) -> Self {
        Self {
            n: self.n,
            f: self.f.specialize_a2(),
        }
    }

    pub fn eval(&self, point: &Point) -> Result<Q> {
        if point.z.len() != self.n {
            return Err(Error::DegreeMismatch(self.n, point.z.len()));
        }
        self.f.eval(&point.assignment())
    }

    /// `Sym(f(z_S) g(z_S^c) prod_{i in S, j in S^c} zeta(z_i / z_j))` over
    /// the `binomial(n + m, n)` cosets.
    pub fn mul(&self, other: &Self, mode: KernelMode) -> Self {
        let n = self.n;
        let total = n + other.n;
        let mut items = Vec::new();
        for left in combinations(total, n) {
            let right: Vec<usize> = (0..total).filter(|i| !left.contains(i)).collect();
            let mut term = self.f.rename(&left).mul(&other.f.rename(&right));
            for &i in &left {
                for &j in &right {
                    term = term.mul(&zeta(mode, i, j));
                }
            }
            items.push(term);
        }
        Self {
            n: total,
            f: RatFn::sum(items),
        }
    }
}

impl fmt::Display for ShuffleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.n, self.f)
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// A product tree evaluated pointwise, for degrees where expanding the
/// product symbolically is too costly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShuffleExpr {
    Elem(ShuffleElement),
    Mul(Box<ShuffleExpr>, Box<ShuffleExpr>),
}

impl ShuffleExpr {
    pub fn elem(e: ShuffleElement) -> Self {
        Self::Elem(e)
    }

    /// The deferred product `self * other`.
    pub fn times(self, other: Self) -> Self {
        Self::Mul(Box::new(self), Box::new(other))
    }

    pub fn degree(&self) -> usize {
        match self {
            Self::Elem(e) => e.degree(),
            Self::Mul(a, b) => a.degree() + b.degree(),
        }
    }

    pub fn eval(&self, point: &Point, mode: KernelMode) -> Result<Q> {
        match self {
            Self::Elem(e) => e.eval(point),
            Self::Mul(a, b) => {
                let total = self.degree();
                if point.z.len() != total {
                    return Err(Error::DegreeMismatch(total, point.z.len()));
                }
                let mut acc = Q::zero();
                for left in combinations(total, a.degree()) {
                    let right: Vec<usize> = (0..total).filter(|i| !left.contains(i)).collect();
                    let mut term = a.eval(&point.restrict(&left), mode)? * b.eval(&point.restrict(&right), mode)?;
                    for &i in &left {
                        for &j in &right {
                            if point.z[j].is_zero() {
                                return Err(Error::Pole(format!("z{} = 0", j + 1)));
                            }
                            term *= zeta_value(mode, &(&point.z[i] / &point.z[j]), point)?;
                        }
                    }
                    acc += term;
                }
                Ok(acc)
            }
        }
    }
}

/// A nonzero random rational with bounded height.
pub fn random_rational<R: Rng>(rng: &mut R) -> Q {
    loop {
        let n: i64 = rng.gen_range(-40..=40);
        let d: i64 = rng.gen_range(1..=12);
        if n != 0 {
            return Q::new(n.into(), d.into());
        }
    }
}

/// A random point for `mode` with `n` coordinates.
pub fn random_point<R: Rng>(rng: &mut R, mode: KernelMode, n: usize) -> Point {
    let z: Vec<Q> = (0..n).map(|_| random_rational(rng)).collect();
    match mode {
        KernelMode::Formal => Point::formal(random_rational(rng), random_rational(rng), z),
        _ => Point::a2(random_rational(rng), random_rational(rng), z),
    }
}

/// Compares two expressions at `points` random non-pole points; a pole
/// resamples, up to `retries` in total.
pub fn probably_equal<R: Rng>(
    a: &ShuffleExpr,
    b: &ShuffleExpr,
    mode: KernelMode,
    rng: &mut R,
    points: usize,
    retries: usize,
) -> Result<bool> {
    if a.degree() != b.degree() {
        return Ok(false);
    }
    let mut agreed = 0;
    let mut misses = 0;
    while agreed < points {
        let p = random_point(rng, mode, a.degree());
        match (a.eval(&p, mode), b.eval(&p, mode)) {
            (Ok(x), Ok(y)) => {
                if x != y {
                    return Ok(false);
                }
                agreed += 1;
            }
            (Err(Error::Pole(_)), _) | (_, Err(Error::Pole(_))) => {
                misses += 1;
                if misses > retries {
                    return Err(Error::SamplingExhausted(retries));
                }
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    Ok(true)
}

/// A random symmetric polynomial of degree `n` with small coefficients:
/// a combination of products of power sums.
pub fn random_element<R: Rng>(rng: &mut R, n: usize, mode: KernelMode) -> ShuffleElement {
    let power_sum = |k: u32| (0..n).fold(Poly::zero(), |acc, i| acc.add(&Poly::var(z(i)).pow(k)));
    let mut num = Poly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut term = Poly::constant(q(rng.gen_range(-3..=3)));
        if n > 0 {
            for _ in 0..rng.gen_range(0..=2) {
                term = term.mul(&power_sum(rng.gen_range(1..=2)));
            }
        }
        if rng.gen_bool(0.3) {
            let param = match mode {
                KernelMode::Formal => [D, K][rng.gen_range(0..2)],
                _ => [Q1, Q2][rng.gen_range(0..2)],
            };
            term = term.mul(&Poly::var(param));
        }
        num = num.add(&term);
    }
    if num.is_zero() {
        num = Poly::one();
    }
    ShuffleElement::from_poly(n, num).expect("power sums are symmetric")
}
