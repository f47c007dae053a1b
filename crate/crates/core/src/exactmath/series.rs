use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::laurent::EvenLaurentPoly;
use super::rational::Rational;
use crate::{Error, Result};

/// Multivariate power series in `x_1..x_n`, truncated at total degree `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    arity: usize,
    order: u32,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl TruncatedSeries {
    pub fn zero(arity: usize, order: u32) -> Self {
        TruncatedSeries {
            arity,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c · x^exps`, silently dropping terms above the truncation order.
    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() || exps.iter().sum::<u32>() > self.order {
            return;
        }
        let slot = self
            .terms
            .entry(exps.clone())
            .or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        let mut out = TruncatedSeries::zero(self.arity, self.order.min(other.order));
        for (e, c) in self.terms.iter().chain(&other.terms) {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Univariate expansions used by the substitution `t = (x+1)/(x−1)`,
/// memoized up to a fixed order.
#[derive(Debug)]
pub struct SeriesCache {
    order: u32,
    inv_one_minus: HashMap<u32, Vec<Rational>>,
    inv_one_plus: HashMap<u32, Vec<Rational>>,
    factors: HashMap<i32, Vec<Rational>>,
}

impl SeriesCache {
    pub fn new(order: u32) -> Self {
        SeriesCache {
            order,
            inv_one_minus: HashMap::new(),
            inv_one_plus: HashMap::new(),
            factors: HashMap::new(),
        }
    }

    /// `(1 − x)^{−k}`.
    pub fn inv_one_minus(&mut self, k: u32) -> &[Rational] {
        let order = self.order as u64;
        self.inv_one_minus.entry(k).or_insert_with(|| {
            (0..=order)
                .map(|i| {
                    if k == 0 {
                        Rational::from_integer(BigInt::from((i == 0) as u8))
                    } else {
                        Rational::from_integer(binomial(k as u64 + i - 1, i))
                    }
                })
                .collect()
        })
    }

    /// `(1 + x)^{−k}`.
    pub fn inv_one_plus(&mut self, k: u32) -> &[Rational] {
        let alternating: Vec<Rational> = self
            .inv_one_minus(k)
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        self.inv_one_plus.entry(k).or_insert(alternating)
    }

    fn truncated_mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let len = self.order as usize + 1;
        let mut out = vec![Rational::zero(); len];
        for (i, x) in a.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                out[i + j] += x * y;
            }
        }
        out
    }

    /// `(x + c)^k` as a coefficient list.
    fn shifted_power(k: u32, c: i64) -> Vec<Rational> {
        (0..=k)
            .map(|i| {
                Rational::from_integer(binomial(k as u64, i as u64) * BigInt::from(c).pow(k - i))
            })
            .collect()
    }

    /// Series of `u^a · (u − 1)/2` at `u = t²`, `t = (x+1)/(x−1)`, i.e.
    /// `2x (x+1)^{2a} (x−1)^{−2a−2}`.
    pub fn factor(&mut self, a: i32) -> Vec<Rational> {
        if let Some(f) = self.factors.get(&a) {
            return f.clone();
        }
        let body = if a >= 0 {
            let k = 2 * a as u32;
            let inv = self.inv_one_minus(k + 2).to_vec();
            self.truncated_mul(&Self::shifted_power(k, 1), &inv)
        } else {
            let m = (-a) as u32;
            let inv = self.inv_one_plus(2 * m).to_vec();
            self.truncated_mul(&inv, &Self::shifted_power(2 * m - 2, -1))
        };
        let two_x = [Rational::zero(), Rational::from_integer(BigInt::from(2))];
        let f = self.truncated_mul(&two_x, &body);
        self.factors.insert(a, f.clone());
        f
    }
}

/// Expands `p(t(x)) · ∏_j (t_j² − 1)/2` with `t_j = (x_j+1)/(x_j−1)` to total
/// order `order`. Each univariate factor is analytic at `x = 0` and starts
/// at `x^1`.
pub fn laurent_to_series(p: &EvenLaurentPoly, order: u32) -> TruncatedSeries {
    let mut cache = SeriesCache::new(order);
    let n = p.arity();
    let mut out = TruncatedSeries::zero(n, order);
    for (exps, c) in p.terms() {
        let factors: Vec<Vec<Rational>> = exps.iter().map(|&a| cache.factor(a)).collect();
        let mut current = vec![0u32; n];
        expand_product(&factors, 0, order, c.clone(), &mut current, &mut out);
    }
    out
}

fn expand_product(
    factors: &[Vec<Rational>],
    slot: usize,
    budget: u32,
    acc: Rational,
    current: &mut Vec<u32>,
    out: &mut TruncatedSeries,
) {
    if slot == factors.len() {
        out.add_term(current.clone(), acc);
        return;
    }
    for (deg, c) in factors[slot].iter().enumerate().take(budget as usize + 1) {
        if c.is_zero() {
            continue;
        }
        current[slot] = deg as u32;
        expand_product(
            factors,
            slot + 1,
            budget - deg as u32,
            &acc * c,
            current,
            out,
        );
    }
    current[slot] = 0;
}

#[cfg(test)]
mod tests {
    use super::super::rational::{int, rat};
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn constant_expands_to_geometric_derivative() {
        let s = laurent_to_series(&EvenLaurentPoly::one(1), 5);
        for k in 1..=5u32 {
            assert_eq!(s.coefficient(&[k]), int(2 * k as i64));
        }
        assert_eq!(s.coefficient(&[0]), int(0));
    }

    #[test]
    fn inverse_square_expands_alternating() {
        let p = EvenLaurentPoly::univariate([(-1, int(1))]);
        let s = laurent_to_series(&p, 5);
        let expected = [0, 2, -4, 6, -8, 10];
        for (k, e) in expected.iter().enumerate() {
            assert_eq!(s.coefficient(&[k as u32]), int(*e));
        }
    }

    #[test]
    fn l03_coefficient() {
        let l03 = EvenLaurentPoly::from_terms(
            3,
            [(vec![0, 0, 0], rat(-1, 16)), (vec![-1, -1, -1], rat(1, 16))],
        )
        .unwrap();
        let s = laurent_to_series(&l03, 4);
        assert_eq!(s.coefficient(&[2, 1, 1]), int(-2));
        // odd perimeter sum vanishes
        assert_eq!(s.coefficient(&[1, 1, 1]), int(0));
    }

    #[test]
    fn cached_inverse_powers() {
        let mut c = SeriesCache::new(4);
        assert_eq!(
            c.inv_one_minus(2),
            &[int(1), int(2), int(3), int(4), int(5)]
        );
        assert_eq!(
            c.inv_one_plus(1),
            &[int(1), int(-1), int(1), int(-1), int(1)]
        );
    }

    fn arb_poly() -> impl Strategy<Value = EvenLaurentPoly> {
        prop::collection::vec((prop::collection::vec(-2i32..=2, 2), -9i64..=9), 0..5).prop_map(
            |ts| EvenLaurentPoly::from_terms(2, ts.into_iter().map(|(e, n)| (e, int(n)))).unwrap(),
        )
    }

    proptest! {
        #[test]
        fn expansion_is_linear(p in arb_poly(), q in arb_poly()) {
            let lhs = laurent_to_series(&p.add(&q).unwrap(), 7);
            let rhs = laurent_to_series(&p, 7).add(&laurent_to_series(&q, 7)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
