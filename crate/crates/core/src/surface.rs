//! Surface types `(g, n)` and the stable splittings that appear on the
//! right-hand side of every recursion.

use serde::{Deserialize, Serialize};

/// A connected oriented surface of genus `g` with `n` labeled boundaries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurfaceType {
    pub g: u32,
    pub n: usize,
}

impl SurfaceType {
    pub fn new(g: u32, n: usize) -> Self {
        SurfaceType { g, n }
    }

    /// `2g − 2 + n > 0`.
    pub fn is_stable(&self) -> bool {
        self.level() > 0
    }

    /// Complexity `2g − 2 + n`; every recursion lowers it by one.
    pub fn level(&self) -> i64 {
        2 * self.g as i64 - 2 + self.n as i64
    }

    /// `3g − 3 + n`, half the top degree of the polynomials.
    pub fn dimension(&self) -> i64 {
        3 * self.g as i64 - 3 + self.n as i64
    }

    /// All stable types with `1 ≤ level ≤ max_level`, ordered by level then `g`.
    pub fn up_to_level(max_level: i64) -> Vec<SurfaceType> {
        let mut out = Vec::new();
        for level in 1..=max_level {
            for g in 0..=((level + 2) / 2) as u32 {
                let n = level + 2 - 2 * g as i64;
                if n >= 1 {
                    out.push(SurfaceType::new(g, n as usize));
                }
            }
        }
        out
    }
}

impl std::fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.g, self.n)
    }
}

/// An ordered stable splitting `(g1, I) | (g2, J)` of `(g, N∖{1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Splitting {
    pub g1: u32,
    pub i: Vec<usize>,
    pub g2: u32,
    pub j: Vec<usize>,
}

impl Splitting {
    pub fn swapped(&self) -> Splitting {
        Splitting {
            g1: self.g2,
            i: self.j.clone(),
            g2: self.g1,
            j: self.i.clone(),
        }
    }
}

/// Every ordered pair with `g1 + g2 = g`, `I ⊔ J = rest` and both
/// `2g1 − 1 + |I| > 0` and `2g2 − 1 + |J| > 0`. Subsets keep the order of
/// `rest`.
pub fn enumerate_splittings(g: u32, rest: &[usize]) -> Vec<Splitting> {
    let k = rest.len();
    let mut out = Vec::new();
    for g1 in 0..=g {
        let g2 = g - g1;
        for mask in 0u64..(1u64 << k) {
            let (mut i, mut j) = (Vec::new(), Vec::new());
            for (bit, &idx) in rest.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    i.push(idx);
                } else {
                    j.push(idx);
                }
            }
            let stable = |gg: u32, m: usize| 2 * gg as i64 - 1 + m as i64 > 0;
            if stable(g1, i.len()) && stable(g2, j.len()) {
                out.push(Splitting { g1, i, g2, j });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn stability() {
        assert!(SurfaceType::new(0, 3).is_stable());
        assert!(!SurfaceType::new(0, 2).is_stable());
        assert!(SurfaceType::new(1, 1).is_stable());
        assert!(!SurfaceType::new(0, 1).is_stable());
    }

    #[test]
    fn small_splittings() {
        assert!(enumerate_splittings(0, &[2, 3]).is_empty());
        assert!(enumerate_splittings(1, &[]).is_empty());
        assert_eq!(
            enumerate_splittings(2, &[]),
            vec![Splitting {
                g1: 1,
                i: vec![],
                g2: 1,
                j: vec![]
            }]
        );
        // genus 0 needs |I| ≥ 2 and |J| ≥ 2
        assert!(enumerate_splittings(0, &[2, 3, 4]).is_empty());
        assert_eq!(enumerate_splittings(0, &[2, 3, 4, 5]).len(), 6);
    }

    #[test]
    fn levels() {
        let types = SurfaceType::up_to_level(2);
        assert_eq!(
            types,
            vec![
                SurfaceType::new(0, 3),
                SurfaceType::new(1, 1),
                SurfaceType::new(0, 4),
                SurfaceType::new(1, 2)
            ]
        );
    }

    proptest! {
        #[test]
        fn closed_under_swap_and_stable(g in 0u32..4, k in 0usize..6) {
            let rest: Vec<usize> = (2..2 + k).collect();
            let all = enumerate_splittings(g, &rest);
            for s in &all {
                prop_assert!(2 * s.g1 as i64 - 1 + s.i.len() as i64 > 0);
                prop_assert!(2 * s.g2 as i64 - 1 + s.j.len() as i64 > 0);
                prop_assert_eq!(s.g1 + s.g2, g);
                prop_assert_eq!(s.i.len() + s.j.len(), k);
                let sw = s.swapped();
                prop_assert!(all.contains(&sw));
            }
        }
    }
}
