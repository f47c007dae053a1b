//! Weighted counts `N_{g,n}(p)` of integral ribbon graphs.
//!
//! The count is computed by the edge-removal recursion: `p₁·N_{g,n}(p)` is a
//! weighted sum of counts with one fewer edge, split into the `j`-terms
//! (boundary 1 merged with boundary `j`) and the `q₁,q₂` double sum (genus
//! reduction plus all stable splittings). Results are memoized under the
//! sorted perimeter vector.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::Zero;
use parking_lot::RwLock;
use rayon::prelude::*;

use crate::exactmath::{int, rat, Rational};
use crate::surface::{enumerate_splittings, SurfaceType};
use crate::{Error, Result};

/// Memoizing evaluator of `N_{g,n}`. Safe to share between threads: lookups
/// take a read lock and inserts are idempotent.
#[derive(Debug, Default)]
pub struct LatticeCounter {
    memo: RwLock<HashMap<(u32, Vec<u32>), Rational>>,
}

impl LatticeCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// `N_{g,n}(p)` with `n = p.len()`.
    pub fn count(&self, g: u32, p: &[u32]) -> Result<Rational> {
        let st = SurfaceType::new(g, p.len());
        if !st.is_stable() {
            return Err(Error::Unstable { g, n: p.len() });
        }
        if p.contains(&0) {
            return Err(Error::NonPositivePerimeter);
        }
        Ok(self.value(g, p))
    }

    /// Number of memoized entries.
    pub fn memo_len(&self) -> usize {
        self.memo.read().len()
    }

    fn value(&self, g: u32, p: &[u32]) -> Rational {
        if p.contains(&0) {
            return Rational::zero();
        }
        if p.iter().map(|&x| x as u64).sum::<u64>() % 2 == 1 {
            return Rational::zero();
        }
        match (g, p.len()) {
            (0, 3) => return int(1),
            (1, 1) => {
                let x = p[0] as i64;
                return rat(x * x - 4, 48);
            }
            _ => {}
        }
        let mut key = p.to_vec();
        key.sort_unstable();
        let key = (g, key);
        if let Some(v) = self.memo.read().get(&key) {
            return v.clone();
        }
        let mut desc = key.1.clone();
        desc.reverse();
        let v = self.recurse(g, &desc);
        self.memo.write().entry(key).or_insert(v).clone()
    }

    /// Right-hand side of the recursion divided by `p₁ = p[0]`.
    fn recurse(&self, g: u32, p: &[u32]) -> Rational {
        let n = p.len();
        let p1 = p[0] as i64;
        let mut total = Rational::zero();

        if n >= 2 && SurfaceType::new(g, n - 1).is_stable() {
            let mut sum = BigRationalSum::default();
            for j in 1..n {
                let pj = p[j] as i64;
                let mut args: Vec<u32> = Vec::with_capacity(n - 1);
                args.push(0);
                args.extend(
                    p[1..]
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| k + 1 != j)
                        .map(|(_, &x)| x),
                );
                let mut line = |m: i64, sign: i64| {
                    for q in 1..m {
                        args[0] = q as u32;
                        let w = sign * q * (m - q);
                        sum.add_weighted(w, &self.value(g, &args));
                    }
                };
                line(p1 + pj, 1);
                if p1 > pj {
                    line(p1 - pj, 1);
                }
                if pj > p1 {
                    line(pj - p1, -1);
                }
            }
            total += sum.finish() / int(2);
        }

        let rest: Vec<usize> = (1..n).collect();
        let splittings = enumerate_splittings(g, &rest);
        if g >= 1 || !splittings.is_empty() {
            let mut sum = BigRationalSum::default();
            let mut merged: Vec<u32> = vec![0, 0];
            merged.extend_from_slice(&p[1..]);
            for q1 in 1..p1 {
                for q2 in 1..(p1 - q1) {
                    let w = q1 * q2 * (p1 - q1 - q2);
                    let mut inner = Rational::zero();
                    if g >= 1 {
                        merged[0] = q1 as u32;
                        merged[1] = q2 as u32;
                        inner += self.value(g - 1, &merged);
                    }
                    for s in &splittings {
                        let left: Vec<u32> = std::iter::once(q1 as u32)
                            .chain(s.i.iter().map(|&k| p[k]))
                            .collect();
                        let a = self.value(s.g1, &left);
                        if a.is_zero() {
                            continue;
                        }
                        let right: Vec<u32> = std::iter::once(q2 as u32)
                            .chain(s.j.iter().map(|&k| p[k]))
                            .collect();
                        inner += a * self.value(s.g2, &right);
                    }
                    sum.add_weighted(w, &inner);
                }
            }
            total += sum.finish() / int(2);
        }
        total / int(p1)
    }
}

/// Accumulates `Σ wᵢ·xᵢ` with integer weights.
#[derive(Default)]
struct BigRationalSum(Rational);

impl BigRationalSum {
    fn add_weighted(&mut self, w: i64, x: &Rational) {
        if w != 0 && !x.is_zero() {
            self.0 += x * Rational::from_integer(BigInt::from(w));
        }
    }

    fn finish(self) -> Rational {
        self.0
    }
}

/// All positive vectors of length `n` with entry sum at most `max_sum`, in
/// lexicographic order.
pub fn perimeter_vectors(n: usize, max_sum: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let remaining = (n - cur.len() - 1) as u32;
        for x in 1..=budget.saturating_sub(remaining) {
            cur.push(x);
            go(n, budget - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max_sum, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Table of `N_{g,n}(p)` for every positive `p` with `Σp ≤ max_sum`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub g: u32,
    pub n: usize,
    pub max_sum: u32,
    pub entries: BTreeMap<Vec<u32>, Rational>,
}

const CACHE_VERSION: &str = concat!("ribbon-tr census v", env!("CARGO_PKG_VERSION"));

impl Census {
    pub fn compute(counter: &LatticeCounter, g: u32, n: usize, max_sum: u32) -> Result<Census> {
        if !SurfaceType::new(g, n).is_stable() {
            return Err(Error::Unstable { g, n });
        }
        let entries = perimeter_vectors(n, max_sum)
            .into_par_iter()
            .map(|p| {
                let v = counter.value(g, &p);
                (p, v)
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        Ok(Census {
            g,
            n,
            max_sum,
            entries,
        })
    }

    pub fn get(&self, p: &[u32]) -> Option<&Rational> {
        self.entries.get(p)
    }

    /// CSV with columns `g,n,p_1..p_n,numerator,denominator`, rows sorted by `p`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["g".to_string(), "n".to_string()];
        header.extend((1..=self.n).map(|k| format!("p_{k}")));
        header.push("numerator".into());
        header.push("denominator".into());
        w.write_record(&header).map_err(csv_error)?;
        for (p, v) in &self.entries {
            let mut row = vec![self.g.to_string(), self.n.to_string()];
            row.extend(p.iter().map(|x| x.to_string()));
            row.push(v.numer().to_string());
            row.push(v.denom().to_string());
            w.write_record(&row).map_err(csv_error)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_csv(text: &str) -> Result<Census> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let mut entries = BTreeMap::new();
        let (mut g, mut n, mut max_sum) = (None, None, 0u32);
        for rec in r.records() {
            let rec = rec.map_err(csv_error)?;
            let field = |k: usize| -> Result<&str> {
                rec.get(k)
                    .ok_or_else(|| Error::Parse("short census row".into()))
            };
            let rg: u32 = parse_field(field(0)?)?;
            let rn: usize = parse_field(field(1)?)?;
            if rec.len() != rn + 4 {
                return Err(Error::Parse("census row width".into()));
            }
            let p = (0..rn)
                .map(|k| parse_field::<u32>(field(2 + k)?))
                .collect::<Result<Vec<_>>>()?;
            let num: BigInt = parse_field(field(2 + rn)?)?;
            let den: BigInt = parse_field(field(3 + rn)?)?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            max_sum = max_sum.max(p.iter().sum());
            g = Some(rg);
            n = Some(rn);
            entries.insert(p, Rational::new(num, den));
        }
        Ok(Census {
            g: g.unwrap_or(0),
            n: n.unwrap_or(0),
            max_sum,
            entries,
        })
    }

    fn cache_path(dir: &Path, g: u32, n: usize, max_sum: u32) -> PathBuf {
        dir.join(format!("census-g{g}-n{n}-P{max_sum}.csv"))
    }

    fn cache_header(g: u32, n: usize, max_sum: u32) -> String {
        format!("# {CACHE_VERSION} g={g} n={n} P={max_sum}")
    }

    /// Like [`Census::compute`], reusing a cache file in `dir` when its
    /// header matches this build exactly and writing one otherwise.
    pub fn compute_cached(
        counter: &LatticeCounter,
        dir: &Path,
        g: u32,
        n: usize,
        max_sum: u32,
    ) -> Result<Census> {
        let path = Self::cache_path(dir, g, n, max_sum);
        let header = Self::cache_header(g, n, max_sum);
        if let Some(c) = Self::read_cache(&path, &header) {
            if c.g == g && c.n == n {
                return Ok(Census { max_sum, ..c });
            }
        }
        let census = Self::compute(counter, g, n, max_sum)?;
        fs::create_dir_all(dir)?;
        let mut f = fs::File::create(&path)?;
        writeln!(f, "{header}")?;
        f.write_all(census.to_csv()?.as_bytes())?;
        Ok(census)
    }

    fn read_cache(path: &Path, header: &str) -> Option<Census> {
        let f = fs::File::open(path).ok()?;
        let mut reader = BufReader::new(f);
        let mut first = String::new();
        reader.read_line(&mut first).ok()?;
        if first.trim_end() != header {
            return None;
        }
        let mut rest = String::new();
        std::io::Read::read_to_string(&mut reader, &mut rest).ok()?;
        Census::from_csv(&rest).ok()
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

fn parse_field<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("invalid census field {s:?}")))
}

/// Direct count of `(1,1)` integral ribbon graphs of perimeter `p = 2q`: the
/// trivalent graph (three edges `a+b+c = q`, automorphisms of order 6) and
/// the two-edge graph (`a+b = q`, order 4).
pub fn oracle_n11(p: u32) -> Result<Rational> {
    if p % 2 == 1 {
        return Err(Error::OddPerimeter(p));
    }
    if p == 0 {
        return Err(Error::NonPositivePerimeter);
    }
    let q = p / 2;
    let mut three = 0i64;
    for a in 1..q {
        for b in 1..q.saturating_sub(a) {
            if q - a - b >= 1 {
                three += 1;
            }
        }
    }
    let two = (1..q).count() as i64;
    Ok(rat(three, 6) + rat(two, 4))
}

/// `N_{0,2}(p₁, p₂) = δ_{p₁p₂}/p₁`.
pub fn oracle_n02(p1: u32, p2: u32) -> Result<Rational> {
    if p1 == 0 || p2 == 0 {
        return Err(Error::NonPositivePerimeter);
    }
    Ok(if p1 == p2 {
        rat(1, p1 as i64)
    } else {
        Rational::zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn base_values() {
        let c = LatticeCounter::new();
        assert_eq!(c.count(0, &[2, 3, 5]).unwrap(), int(1));
        assert_eq!(c.count(0, &[1, 1, 1]).unwrap(), int(0));
        assert_eq!(c.count(1, &[6]).unwrap(), rat(2, 3));
        assert_eq!(c.count(1, &[2]).unwrap(), int(0));
        assert_eq!(c.count(1, &[4]).unwrap(), rat(1, 4));
    }

    #[test]
    fn recursive_values() {
        let c = LatticeCounter::new();
        assert_eq!(c.count(0, &[1, 1, 2, 2]).unwrap(), int(2));
        assert_eq!(c.count(0, &[1, 1, 1, 1]).unwrap(), int(0));
    }

    #[test]
    fn rejects_bad_input() {
        let c = LatticeCounter::new();
        assert!(matches!(c.count(0, &[1, 1]), Err(Error::Unstable { .. })));
        assert!(matches!(
            c.count(0, &[1, 0, 1]),
            Err(Error::NonPositivePerimeter)
        ));
    }

    #[test]
    fn oracles() {
        assert_eq!(oracle_n11(4).unwrap(), rat(1, 4));
        assert_eq!(oracle_n11(2).unwrap(), int(0));
        assert_eq!(oracle_n11(12).unwrap(), rat(35, 12));
        assert!(oracle_n11(5).is_err());
        assert_eq!(oracle_n02(3, 3).unwrap(), rat(1, 3));
        assert_eq!(oracle_n02(2, 5).unwrap(), int(0));
        assert_eq!(oracle_n02(1, 1).unwrap(), int(1));
    }

    #[test]
    fn n11_matches_oracle() {
        let c = LatticeCounter::new();
        for p in (2..=100).step_by(2) {
            assert_eq!(c.count(1, &[p]).unwrap(), oracle_n11(p).unwrap());
        }
    }

    #[test]
    fn census_tables() {
        let c = LatticeCounter::new();
        let t = Census::compute(&c, 0, 3, 6).unwrap();
        for (p, v) in &t.entries {
            let even = p.iter().sum::<u32>() % 2 == 0;
            assert_eq!(*v, int(even as i64));
        }
        let t = Census::compute(&c, 1, 1, 2).unwrap();
        assert_eq!(t.get(&[2]), Some(&int(0)));
        let t = Census::compute(&c, 0, 4, 6).unwrap();
        for perm in [[1, 1, 2, 2], [2, 1, 2, 1], [2, 2, 1, 1], [1, 2, 1, 2]] {
            assert_eq!(t.get(&perm), Some(&int(2)));
        }
    }

    #[test]
    fn csv_round_trip_and_cache() {
        let c = LatticeCounter::new();
        let t = Census::compute(&c, 0, 4, 8).unwrap();
        let csv = t.to_csv().unwrap();
        assert!(csv.starts_with("g,n,p_1,p_2,p_3,p_4,numerator,denominator\n"));
        assert!(csv.contains("0,4,1,1,2,2,2,1\n"));
        assert_eq!(Census::from_csv(&csv).unwrap(), t);

        let dir = tempfile::tempdir().unwrap();
        let first = Census::compute_cached(&c, dir.path(), 0, 4, 8).unwrap();
        assert_eq!(first, t);
        let second = Census::compute_cached(&LatticeCounter::new(), dir.path(), 0, 4, 8).unwrap();
        assert_eq!(second, t);

        // a stale header is ignored and overwritten
        let path = dir.path().join("census-g0-n4-P8.csv");
        let body = fs::read_to_string(&path).unwrap();
        let stale = body.replacen(CACHE_VERSION, "ribbon-tr census v0.0.0", 1);
        let poisoned = stale.replace("0,4,1,1,2,2,2,1", "0,4,1,1,2,2,7,1");
        fs::write(&path, poisoned).unwrap();
        let third = Census::compute_cached(&c, dir.path(), 0, 4, 8).unwrap();
        assert_eq!(third, t);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        // `recurse` singles out p[0]; the answer must not depend on which
        // entry plays that role. The recursion itself only holds at even
        // perimeter sum, odd sums being short-circuited to zero.
        #[test]
        fn symmetric_parity_nonnegative(
            p in prop::collection::vec(1u32..7, 4),
            rot in 1usize..4,
        ) {
            let c = LatticeCounter::new();
            let v = c.count(0, &p).unwrap();
            prop_assert!(v >= Rational::zero());
            if p.iter().sum::<u32>() % 2 == 1 {
                prop_assert!(v.is_zero());
            } else {
                let mut q = p.clone();
                q.rotate_left(rot);
                prop_assert_eq!(&v, &c.recurse(0, &q));
                prop_assert_eq!(&v, &c.recurse(0, &p));
            }
        }

        #[test]
        fn genus_one_two_point_symmetric(a in 1u32..12, b in 1u32..12) {
            let b = b + (a + b) % 2;
            let c = LatticeCounter::new();
            let v = c.count(1, &[a, b]).unwrap();
            prop_assert_eq!(&v, &c.recurse(1, &[a, b]));
            prop_assert_eq!(&v, &c.recurse(1, &[b, a]));
            prop_assert!(v >= Rational::zero());
        }
    }
}
