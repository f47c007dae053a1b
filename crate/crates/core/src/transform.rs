//! The differential recursion engine.
//!
//! One engine produces three families of even Laurent polynomials: the
//! Laplace transform `ℒ_{g,n}` of the lattice counts, the Euclidean volume
//! polynomial `V^E_{g,n}` and the symplectic volume polynomial `V^S_{g,n}`.
//! They differ only in a [`RecursionConfig`]. Slot 0 is the distinguished
//! variable `t₁`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use parking_lot::RwLock;
use rayon::prelude::*;

use crate::exactmath::{double_factorial_odd, int, pow2, rat, EvenLaurentPoly, Rational};
use crate::surface::{enumerate_splittings, SurfaceType};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `ℒ_{g,n}`
    Laplace,
    /// `V^E_{g,n}`
    Euclidean,
    /// `V^S_{g,n}`
    Symplectic,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Laplace, Family::Euclidean, Family::Symplectic];

    pub fn config(self) -> RecursionConfig {
        match self {
            Family::Laplace => RecursionConfig {
                a_factor: rat(-1, 16),
                b_factor: rat(-1, 32),
                // (u − 1)³/u
                kernel: EvenLaurentPoly::univariate([
                    (2, int(1)),
                    (1, int(-3)),
                    (0, int(3)),
                    (-1, int(-1)),
                ]),
                base_03: EvenLaurentPoly::from_terms(
                    3,
                    [(vec![0, 0, 0], rat(-1, 16)), (vec![-1, -1, -1], rat(1, 16))],
                )
                .expect("arity 3"),
                // −(1/128)(u − 1)³/u²
                base_11: EvenLaurentPoly::univariate([
                    (1, rat(-1, 128)),
                    (0, rat(3, 128)),
                    (-1, rat(-3, 128)),
                    (-2, rat(1, 128)),
                ]),
            },
            Family::Euclidean => RecursionConfig {
                a_factor: rat(-1, 16),
                b_factor: rat(-1, 32),
                kernel: EvenLaurentPoly::univariate([(2, int(1))]),
                base_03: EvenLaurentPoly::constant(3, rat(-1, 16)),
                base_11: EvenLaurentPoly::univariate([(1, rat(-1, 128))]),
            },
            Family::Symplectic => RecursionConfig {
                a_factor: rat(-1, 4),
                b_factor: rat(-1, 4),
                kernel: EvenLaurentPoly::univariate([(2, int(1))]),
                base_03: EvenLaurentPoly::constant(3, rat(-1, 8)),
                base_11: EvenLaurentPoly::univariate([(1, rat(-1, 32))]),
            },
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Family::Laplace => "L",
            Family::Euclidean => "VE",
            Family::Symplectic => "VS",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" => Ok(Family::Laplace),
            "VE" => Ok(Family::Euclidean),
            "VS" => Ok(Family::Symplectic),
            _ => Err(Error::Parse(format!(
                "unknown family {s:?}, expected L, VE or VS"
            ))),
        }
    }
}

/// Prefactors, kernel `κ(u)` and base cases of one recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionConfig {
    pub a_factor: Rational,
    pub b_factor: Rational,
    /// Univariate in `u = t²`.
    pub kernel: EvenLaurentPoly,
    pub base_03: EvenLaurentPoly,
    pub base_11: EvenLaurentPoly,
}

/// Memo of `F_{g,n}` for one configuration.
#[derive(Debug)]
pub struct PolyTable {
    config: RecursionConfig,
    memo: RwLock<HashMap<SurfaceType, Arc<EvenLaurentPoly>>>,
}

/// Surface types whose polynomials the step for `st` reads.
fn dependencies(st: SurfaceType) -> Vec<SurfaceType> {
    let (g, n) = (st.g, st.n);
    if (g, n) == (0, 3) || (g, n) == (1, 1) {
        return Vec::new();
    }
    let mut out = Vec::new();
    if n >= 2 {
        out.push(SurfaceType::new(g, n - 1));
    }
    if g >= 1 {
        out.push(SurfaceType::new(g - 1, n + 1));
    }
    let rest: Vec<usize> = (1..n).collect();
    for s in enumerate_splittings(g, &rest) {
        out.push(SurfaceType::new(s.g1, s.i.len() + 1));
    }
    out.retain(|d| d.is_stable());
    out.sort();
    out.dedup();
    out
}

impl PolyTable {
    pub fn new(config: RecursionConfig) -> Self {
        PolyTable {
            config,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn config(&self) -> &RecursionConfig {
        &self.config
    }

    /// `F_{g,n}`, computing every missing ancestor level by level; the types
    /// within one level are independent and run in parallel.
    pub fn get(&self, g: u32, n: usize) -> Result<Arc<EvenLaurentPoly>> {
        let st = SurfaceType::new(g, n);
        if !st.is_stable() {
            return Err(Error::Unstable { g, n });
        }
        if let Some(p) = self.memo.read().get(&st) {
            return Ok(p.clone());
        }
        let mut needed = BTreeSet::new();
        let mut stack = vec![st];
        while let Some(s) = stack.pop() {
            if self.memo.read().contains_key(&s) || !needed.insert(s) {
                continue;
            }
            stack.extend(dependencies(s));
        }
        let mut by_level: BTreeMap<i64, Vec<SurfaceType>> = BTreeMap::new();
        for s in needed {
            by_level.entry(s.level()).or_default().push(s);
        }
        for (_, level) in by_level {
            let results = level
                .par_iter()
                .map(|&s| self.step(s).map(|p| (s, Arc::new(p))))
                .collect::<Result<Vec<_>>>()?;
            let mut memo = self.memo.write();
            for (s, p) in results {
                memo.entry(s).or_insert(p);
            }
        }
        Ok(self.memo.read()[&st].clone())
    }

    fn cached(&self, g: u32, n: usize) -> Arc<EvenLaurentPoly> {
        self.memo.read()[&SurfaceType::new(g, n)].clone()
    }

    /// One recursion step; all dependencies must already be memoized.
    fn step(&self, st: SurfaceType) -> Result<EvenLaurentPoly> {
        let (g, n) = (st.g, st.n);
        let cfg = &self.config;
        match (g, n) {
            (0, 3) => return Ok(cfg.base_03.clone()),
            (1, 1) => return Ok(cfg.base_11.clone()),
            _ => {}
        }
        let kappa1 = cfg.kernel.substitute_variables(&[0], n)?;
        let mut total = EvenLaurentPoly::zero(n);

        if n >= 2 && SurfaceType::new(g, n - 1).is_stable() {
            let prev = self.cached(g, n - 1);
            let mut jsum = EvenLaurentPoly::zero(n);
            for j in 1..n {
                // F_{g,n−1}(t₁, t_{N∖{1,j}}) placed in slots 0 and N∖{0,j}
                let mut mapping = vec![0];
                mapping.extend((1..n).filter(|&k| k != j));
                let f = prev.substitute_variables(&mapping, n)?.mul(&kappa1)?;
                let dd = f.divided_difference(0, j)?;
                jsum = jsum.add(&dd.d_t_of_t_times(j)?)?;
            }
            total = total.add(&jsum.scale(&cfg.a_factor))?;
        }

        let mut inner = EvenLaurentPoly::zero(n);
        if g >= 1 {
            inner = inner.add(&self.cached(g - 1, n + 1).diagonal_merge(0, 1)?)?;
        }
        let rest: Vec<usize> = (1..n).collect();
        for s in enumerate_splittings(g, &rest) {
            let embed = |gg: u32, idx: &[usize]| -> Result<EvenLaurentPoly> {
                let mut mapping = vec![0];
                mapping.extend_from_slice(idx);
                self.cached(gg, idx.len() + 1)
                    .substitute_variables(&mapping, n)
            };
            inner = inner.add(&embed(s.g1, &s.i)?.mul(&embed(s.g2, &s.j)?)?)?;
        }
        if !inner.is_zero() {
            total = total.add(&inner.mul(&kappa1)?.scale(&cfg.b_factor))?;
        }
        Ok(total)
    }
}

/// The three recursion tables plus the extractors that compare them.
#[derive(Debug)]
pub struct Engine {
    laplace: PolyTable,
    euclidean: PolyTable,
    symplectic: PolyTable,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

impl Engine {
    pub fn new() -> Self {
        Engine {
            laplace: PolyTable::new(Family::Laplace.config()),
            euclidean: PolyTable::new(Family::Euclidean.config()),
            symplectic: PolyTable::new(Family::Symplectic.config()),
        }
    }

    pub fn table(&self, family: Family) -> &PolyTable {
        match family {
            Family::Laplace => &self.laplace,
            Family::Euclidean => &self.euclidean,
            Family::Symplectic => &self.symplectic,
        }
    }

    pub fn polynomial(&self, family: Family, g: u32, n: usize) -> Result<Arc<EvenLaurentPoly>> {
        self.table(family).get(g, n)
    }

    /// The scalar `c` with `V^S = c·V^E`.
    pub fn kontsevich_ratio(&self, g: u32, n: usize) -> Result<Rational> {
        let vs = self.polynomial(Family::Symplectic, g, n)?;
        let ve = self.polynomial(Family::Euclidean, g, n)?;
        vs.ratio_to(&ve).ok_or(Error::NotProportional)
    }

    /// `V^E_{g,n}` equals the top-degree part of `ℒ_{g,n}`.
    pub fn leading_match(&self, g: u32, n: usize) -> Result<bool> {
        let l = self.polynomial(Family::Laplace, g, n)?;
        let ve = self.polynomial(Family::Euclidean, g, n)?;
        Ok(l.leading_part()? == *ve)
    }

    /// Literal coefficient extraction: for each monomial `∏ t_j^{2d_j}` of
    /// `V^S_{g,n}`, the value `coef·(−1)ⁿ·∏ 2^{2d_j}/(2d_j+1)!!`.
    pub fn intersection_numbers(&self, g: u32, n: usize) -> Result<BTreeMap<Vec<u32>, Rational>> {
        let vs = self.polynomial(Family::Symplectic, g, n)?;
        let dim = SurfaceType::new(g, n).dimension();
        let sign = if n.is_multiple_of(2) { int(1) } else { int(-1) };
        let mut out = BTreeMap::new();
        for (e, c) in vs.terms() {
            let deg = EvenLaurentPoly::total_degree(e);
            if deg != dim || e.iter().any(|&a| a < 0) {
                return Err(Error::DegreeMismatch {
                    expected: dim,
                    found: deg,
                });
            }
            let mut v = c * &sign;
            for &d in e {
                v *= pow2(2 * d as i64) / Rational::from_integer(double_factorial_odd(d as u32));
            }
            out.insert(e.iter().map(|&a| a as u32).collect(), v);
        }
        Ok(out)
    }
}

/// Rebuilds `V^S` from literal intersection numbers; inverse of
/// [`Engine::intersection_numbers`].
pub fn reconstruct_symplectic(
    n: usize,
    numbers: &BTreeMap<Vec<u32>, Rational>,
) -> Result<EvenLaurentPoly> {
    let sign = if n.is_multiple_of(2) { int(1) } else { int(-1) };
    EvenLaurentPoly::from_terms(
        n,
        numbers.iter().map(|(d, v)| {
            let mut c = v * &sign;
            for &dj in d {
                c *= Rational::from_integer(double_factorial_odd(dj)) * pow2(-2 * dj as i64);
            }
            (d.iter().map(|&x| x as i32).collect(), c)
        }),
    )
}

/// One symmetric class per multiset of degrees, keyed by the degrees sorted
/// in decreasing order.
pub fn intersection_classes(
    numbers: &BTreeMap<Vec<u32>, Rational>,
) -> BTreeMap<Vec<u32>, Rational> {
    let mut out = BTreeMap::new();
    for (d, v) in numbers {
        let mut key = d.clone();
        key.sort_unstable_by(|a, b| b.cmp(a));
        out.entry(key).or_insert_with(|| v.clone());
    }
    out
}

fn double_factorial_signed(k: i64) -> BigInt {
    // (2m−1)!! for k = 2m − 1 ≥ −1
    if k <= 0 {
        return BigInt::one();
    }
    (1..=k)
        .step_by(2)
        .fold(BigInt::one(), |acc, x| acc * BigInt::from(x))
}

/// Standard Witten–Kontsevich numbers `⟨τ_{d₁}⋯τ_{d_n}⟩_g` from the
/// Virasoro (DVV) recursion with `⟨τ₀³⟩ = 1`, `⟨τ₁⟩ = 1/24`. Used only to
/// report how the literal extraction compares with the usual normalization.
#[derive(Debug, Default)]
pub struct ClassicalIntersections {
    memo: RwLock<HashMap<(u32, Vec<u32>), Rational>>,
}

impl ClassicalIntersections {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&self, g: u32, d: &[u32]) -> Rational {
        let n = d.len();
        let st = SurfaceType::new(g, n);
        if !st.is_stable() || d.iter().map(|&x| x as i64).sum::<i64>() != st.dimension() {
            return Rational::zero();
        }
        let mut key = d.to_vec();
        key.sort_unstable_by(|a, b| b.cmp(a));
        match (g, key.as_slice()) {
            (0, [0, 0, 0]) => return int(1),
            (1, [1]) => return rat(1, 24),
            _ => {}
        }
        if let Some(v) = self.memo.read().get(&(g, key.clone())) {
            return v.clone();
        }
        let v = self.recurse(g, &key);
        self.memo.write().entry((g, key)).or_insert(v).clone()
    }

    /// `d[0]` is the largest entry, hence positive.
    fn recurse(&self, g: u32, d: &[u32]) -> Rational {
        let n = d.len();
        let d1 = d[0] as i64;
        let mut total = Rational::zero();
        for j in 1..n {
            let dj = d[j] as i64;
            let mut args = vec![(d1 + dj - 1) as u32];
            args.extend(
                d[1..]
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| k + 1 != j)
                    .map(|(_, &x)| x),
            );
            let w = Rational::new(
                double_factorial_signed(2 * d1 + 2 * dj - 1),
                double_factorial_signed(2 * dj - 1),
            );
            total += w * self.value(g, &args);
        }
        let rest: Vec<usize> = (1..n).collect();
        let splittings = enumerate_splittings(g, &rest);
        let mut half = Rational::zero();
        for a in 0..=(d1 - 2).max(-1) {
            let b = d1 - 2 - a;
            if b < 0 {
                continue;
            }
            let w = Rational::from_integer(
                double_factorial_signed(2 * a + 1) * double_factorial_signed(2 * b + 1),
            );
            let mut inner = Rational::zero();
            if g >= 1 {
                let mut args = vec![a as u32, b as u32];
                args.extend_from_slice(&d[1..]);
                inner += self.value(g - 1, &args);
            }
            for s in &splittings {
                let left: Vec<u32> = std::iter::once(a as u32)
                    .chain(s.i.iter().map(|&k| d[k]))
                    .collect();
                let right: Vec<u32> = std::iter::once(b as u32)
                    .chain(s.j.iter().map(|&k| d[k]))
                    .collect();
                inner += self.value(s.g1, &left) * self.value(s.g2, &right);
            }
            half += w * inner;
        }
        total += half / int(2);
        total / Rational::from_integer(double_factorial_signed(2 * d1 + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;

    #[test]
    fn base_cases() {
        let e = Engine::new();
        assert_eq!(
            *e.polynomial(Family::Laplace, 0, 3).unwrap(),
            golden::lt03()
        );
        assert_eq!(
            *e.polynomial(Family::Laplace, 1, 1).unwrap(),
            golden::lt11()
        );
        assert_eq!(
            e.polynomial(Family::Symplectic, 1, 1).unwrap().to_string(),
            "-(1/32)·t₁²"
        );
        assert_eq!(
            e.polynomial(Family::Euclidean, 0, 3).unwrap().to_string(),
            "-1/16"
        );
        assert!(matches!(
            e.polynomial(Family::Laplace, 0, 2),
            Err(Error::Unstable { .. })
        ));
    }

    #[test]
    fn goldens() {
        let e = Engine::new();
        assert_eq!(*e.polynomial(Family::Laplace, 0, 4).unwrap(), golden::l04());
        assert_eq!(*e.polynomial(Family::Laplace, 1, 2).unwrap(), golden::l12());
        assert_eq!(*e.polynomial(Family::Laplace, 2, 1).unwrap(), golden::l21());
    }

    #[test]
    fn leading_part_of_l21() {
        let l21 = golden::l21();
        let lead = l21.leading_part().unwrap();
        assert_eq!(lead, EvenLaurentPoly::univariate([(4, rat(-105, 1 << 19))]));
    }

    #[test]
    fn ratios_and_leading_terms() {
        let e = Engine::new();
        assert_eq!(e.kontsevich_ratio(0, 3).unwrap(), int(2));
        assert_eq!(e.kontsevich_ratio(1, 1).unwrap(), int(4));
        assert_eq!(e.kontsevich_ratio(2, 1).unwrap(), int(128));
        for (g, n) in [(1, 1), (0, 3), (0, 4), (1, 2)] {
            assert!(e.leading_match(g, n).unwrap());
        }
    }

    #[test]
    fn literal_intersections() {
        let e = Engine::new();
        let m = e.intersection_numbers(1, 1).unwrap();
        assert_eq!(m[&vec![1]], rat(1, 24));
        let m = e.intersection_numbers(0, 3).unwrap();
        assert_eq!(m[&vec![0, 0, 0]], rat(1, 8));
        let m = e.intersection_numbers(2, 1).unwrap();
        assert_eq!(m[&vec![4]], rat(1, 144));
        let m = e.intersection_numbers(0, 4).unwrap();
        let classes = intersection_classes(&m);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[&vec![1, 0, 0, 0]], rat(1, 8));
        for (g, n) in [(0, 4), (1, 2), (2, 1), (0, 5)] {
            let m = e.intersection_numbers(g, n).unwrap();
            let back = reconstruct_symplectic(n, &m).unwrap();
            assert_eq!(back, *e.polynomial(Family::Symplectic, g, n).unwrap());
        }
    }

    #[test]
    fn classical_values() {
        let c = ClassicalIntersections::new();
        assert_eq!(c.value(0, &[0, 0, 0]), int(1));
        assert_eq!(c.value(0, &[1, 0, 0, 0]), int(1));
        assert_eq!(c.value(0, &[2, 0, 0, 0, 0]), int(1));
        assert_eq!(c.value(0, &[1, 1, 0, 0, 0]), int(2));
        assert_eq!(c.value(1, &[1]), rat(1, 24));
        assert_eq!(c.value(1, &[1, 1]), rat(1, 24));
        assert_eq!(c.value(1, &[2, 0]), rat(1, 24));
        assert_eq!(c.value(2, &[4]), rat(1, 1152));
        assert_eq!(c.value(3, &[7]), rat(1, 82944));
        assert_eq!(c.value(1, &[2]), int(0));
    }

    #[test]
    fn family_names() {
        for f in Family::ALL {
            assert_eq!(f.tag().parse::<Family>().unwrap(), f);
        }
        assert!("X".parse::<Family>().is_err());
    }
}
