//! One-variable exact algebra: dense polynomials, reduced rational
//! functions, sparse Laurent polynomials (odd powers allowed) and dual
//! numbers for exact first derivatives.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::laurent::pow_i;
use super::rational::Rational;

/// Dense polynomial, coefficients from degree 0 upward, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c · x^k`.
    pub fn monomial(k: usize, c: Rational) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `x − a`.
    pub fn linear_root(a: &Rational) -> Self {
        Self::new(vec![-a, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.0.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(Rational::one()), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer((k as i64).into()))
                .collect(),
        )
    }

    /// Antiderivative vanishing at 0.
    pub fn antiderivative(&self) -> Self {
        let mut v = vec![Rational::zero()];
        v.extend(
            self.0
                .iter()
                .enumerate()
                .map(|(k, c)| c / Rational::from_integer((k as i64 + 1).into())),
        );
        Self::new(v)
    }

    /// `∫_lo^hi p(x) dx`.
    pub fn integrate(&self, lo: &Rational, hi: &Rational) -> Rational {
        let anti = self.antiderivative();
        anti.eval(hi) - anti.eval(lo)
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &UniPoly) -> UniPoly {
        self.0.iter().rev().fold(UniPoly::zero(), |acc, c| {
            &(&acc * q) + &UniPoly::constant(c.clone())
        })
    }

    /// Euclidean division, `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading().expect("nonzero").clone();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (i, dc) in d.0.iter().enumerate() {
                    rem[k + i] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => UniPoly::zero(),
        }
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.0.len().max(rhs.0.len());
        UniPoly::new(
            (0..n)
                .map(|k| {
                    let a = self.0.get(k).cloned().unwrap_or_else(Rational::zero);
                    match rhs.0.get(k) {
                        Some(b) => a + b,
                        None => a,
                    }
                })
                .collect(),
        )
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

/// Rational function `num/den` over ℚ in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading().expect("nonzero").recip();
        RatFunc {
            num: num.scale(&lead),
            den: den.scale(&lead),
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: UniPoly::zero(),
            den: UniPoly::constant(Rational::one()),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(UniPoly::constant(c), UniPoly::constant(Rational::one()))
    }

    pub fn poly(p: UniPoly) -> Self {
        Self::new(p, UniPoly::constant(Rational::one()))
    }

    /// The identity function `x`.
    pub fn x() -> Self {
        Self::poly(UniPoly::monomial(1, Rational::one()))
    }

    pub fn numer(&self) -> &UniPoly {
        &self.num
    }

    pub fn denom(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn powi(&self, k: i32) -> Self {
        let base = if k < 0 { self.recip() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Self::constant(Rational::one()), |acc, _| &acc * &base)
    }

    pub fn derivative(&self) -> Self {
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(top, &self.den * &self.den)
    }

    /// `f(x) ↦ f(−x)`.
    pub fn reflect(&self) -> Self {
        let flip = |p: &UniPoly| {
            UniPoly::new(
                p.0.iter()
                    .enumerate()
                    .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                    .collect(),
            )
        };
        Self::new(flip(&self.num), flip(&self.den))
    }

    /// If the denominator is a monomial `x^k`, the Laurent expansion.
    pub fn to_laurent(&self) -> Option<Laurent1> {
        let k = self.den.degree()?;
        if self.den.0[..k].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let terms = self
            .num
            .0
            .iter()
            .enumerate()
            .map(|(i, c)| (i as i32 - k as i32, c.clone()));
        Some(Laurent1::from_pairs(terms))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &RatFunc {
            num: -&rhs.num,
            den: rhs.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Sparse univariate Laurent polynomial in `t`, odd powers allowed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Laurent1 {
    terms: BTreeMap<i32, Rational>,
}

impl Laurent1 {
    pub fn from_pairs<I: IntoIterator<Item = (i32, Rational)>>(pairs: I) -> Self {
        let mut terms: BTreeMap<i32, Rational> = BTreeMap::new();
        for (k, c) in pairs {
            *terms.entry(k).or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Laurent1 { terms }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_pairs([(0, c)])
    }

    pub fn monomial(k: i32, c: Rational) -> Self {
        Self::from_pairs([(k, c)])
    }

    pub fn terms(&self) -> &BTreeMap<i32, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|k| k % 2 == 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_pairs(self.terms.iter().map(|(k, x)| (*k, x * c)))
    }

    /// `t ↦ −t`.
    pub fn reflect(&self) -> Self {
        Self::from_pairs(
            self.terms
                .iter()
                .map(|(k, c)| (*k, if k % 2 != 0 { -c } else { c.clone() })),
        )
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(k, c)| c * pow_i(t, *k))
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn eval_dual(&self, t: &Dual) -> Dual {
        self.terms
            .iter()
            .map(|(k, c)| t.powi(*k).scale(c))
            .fold(Dual::constant(Rational::zero()), |a, b| &a + &b)
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        let Some(&lo) = self.terms.keys().next() else {
            return RatFunc::zero();
        };
        let shift = lo.min(0);
        let hi = *self.terms.keys().next_back().expect("nonempty");
        let mut v = vec![Rational::zero(); (hi - shift) as usize + 1];
        for (k, c) in &self.terms {
            v[(k - shift) as usize] = c.clone();
        }
        RatFunc::new(
            UniPoly::new(v),
            UniPoly::monomial((-shift) as usize, Rational::one()),
        )
    }
}

impl Add for &Laurent1 {
    type Output = Laurent1;
    fn add(self, rhs: &Laurent1) -> Laurent1 {
        Laurent1::from_pairs(
            self.terms
                .iter()
                .chain(&rhs.terms)
                .map(|(k, c)| (*k, c.clone())),
        )
    }
}

impl Mul for &Laurent1 {
    type Output = Laurent1;
    fn mul(self, rhs: &Laurent1) -> Laurent1 {
        Laurent1::from_pairs(
            self.terms
                .iter()
                .flat_map(|(a, x)| rhs.terms.iter().map(move |(b, y)| (a + b, x * y))),
        )
    }
}

/// `re + eps·ε` with `ε² = 0`; evaluating at `a + ε` yields `(f(a), f'(a))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dual {
    pub re: Rational,
    pub eps: Rational,
}

impl Dual {
    pub fn variable(a: Rational) -> Self {
        Dual {
            re: a,
            eps: Rational::one(),
        }
    }

    pub fn constant(a: Rational) -> Self {
        Dual {
            re: a,
            eps: Rational::zero(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Dual {
            re: &self.re * c,
            eps: &self.eps * c,
        }
    }

    /// Panics on a zero real part; callers evaluate away from poles.
    pub fn recip(&self) -> Self {
        let inv = self.re.recip();
        Dual {
            eps: -&self.eps * &inv * &inv,
            re: inv,
        }
    }

    pub fn powi(&self, k: i32) -> Self {
        let base = if k < 0 { self.recip() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Dual::constant(Rational::one()), |acc, _| &acc * &base)
    }
}

impl Add for &Dual {
    type Output = Dual;
    fn add(self, rhs: &Dual) -> Dual {
        Dual {
            re: &self.re + &rhs.re,
            eps: &self.eps + &rhs.eps,
        }
    }
}

impl Mul for &Dual {
    type Output = Dual;
    fn mul(self, rhs: &Dual) -> Dual {
        Dual {
            re: &self.re * &rhs.re,
            eps: &self.re * &rhs.eps + &self.eps * &rhs.re,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::{int, rat};
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (x² − 1) = (x − 1)(x + 1)
        let (q, r) = p(&[-1, 0, 1]).div_rem(&p(&[-1, 1]));
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[2, 2])), p(&[1, 1]));
    }

    #[test]
    fn ratfunc_reduces() {
        let f = RatFunc::new(p(&[-1, 0, 1]), p(&[2, 2]));
        assert_eq!(f, RatFunc::poly(UniPoly::new(vec![rat(-1, 2), rat(1, 2)])));
        let g = &RatFunc::x().recip() + &RatFunc::x();
        assert_eq!(
            g.to_laurent().unwrap(),
            Laurent1::from_pairs([(-1, int(1)), (1, int(1))])
        );
        assert!(RatFunc::new(p(&[1]), p(&[1, 1])).to_laurent().is_none());
    }

    #[test]
    fn dual_derivative() {
        // f(t) = t³ + 1/t, f'(2) = 12 − 1/4
        let f = Laurent1::from_pairs([(3, int(1)), (-1, int(1))]);
        let d = f.eval_dual(&Dual::variable(int(2)));
        assert_eq!(d.re, rat(17, 2));
        assert_eq!(d.eps, rat(47, 4));
    }

    #[test]
    fn integrate_polynomial() {
        // ∫_0^3 x(3 − x) dx = 9/2
        assert_eq!(p(&[0, 3, -1]).integrate(&int(0), &int(3)), rat(9, 2));
        assert_eq!(p(&[1, 1]).compose(&p(&[0, 2])), p(&[1, 2]));
    }

    #[test]
    fn ratfunc_derivative_and_reflect() {
        let f = RatFunc::x().recip();
        assert_eq!(f.derivative(), RatFunc::x().powi(-2).scale_neg());
        assert_eq!(RatFunc::x().reflect(), RatFunc::poly(p(&[0, -1])));
    }

    impl RatFunc {
        fn scale_neg(&self) -> Self {
            &RatFunc::constant(int(-1)) * self
        }
    }
}
