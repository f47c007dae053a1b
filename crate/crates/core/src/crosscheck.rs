//! Identities that tie the modules together: the lattice counts against the
//! series expansion of `ℒ_{g,n}`, the inverse Laplace transform of `V^S`
//! to the volume polynomials `v^S(p)`, and the continuous recursion those
//! volumes satisfy.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactmath::{
    factorial, int, laurent_to_series, pow2, rat, EvenLaurentPoly, Rational, UniPoly,
};
use crate::lattice::{Census, LatticeCounter};
use crate::surface::{enumerate_splittings, SurfaceType};
use crate::transform::{Engine, Family};
use crate::{Error, Result};

/// One coefficient where the two sides of the series identity differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMismatch {
    pub exponents: Vec<u32>,
    pub lattice_side: Rational,
    pub series_side: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    pub g: u32,
    pub n: usize,
    pub max_sum: u32,
    pub compared: usize,
    pub mismatches: Vec<SeriesMismatch>,
}

impl SeriesReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares `(−1)ⁿ(∏p_j)·N_{g,n}(p)` with the coefficient of `∏x_j^{p_j}`
/// in `ℒ_{g,n}(t(x))·∏(t_j² − 1)/2` for every exponent vector of total
/// degree at most `max_sum`. Vectors with a zero entry have lattice side 0.
pub fn series_identity(
    engine: &Engine,
    counter: &LatticeCounter,
    g: u32,
    n: usize,
    max_sum: u32,
) -> Result<SeriesReport> {
    let l = engine.polynomial(Family::Laplace, g, n)?;
    let series = laurent_to_series(&l, max_sum);
    let census = Census::compute(counter, g, n, max_sum)?;
    let sign = if n.is_multiple_of(2) { int(1) } else { int(-1) };

    let keys: BTreeSet<&Vec<u32>> = series.terms().keys().chain(census.entries.keys()).collect();
    let mut mismatches = Vec::new();
    for p in &keys {
        let lattice_side = match census.get(p) {
            Some(v) => {
                let weight: BigInt = p.iter().map(|&x| BigInt::from(x)).product();
                &sign * Rational::from_integer(weight) * v
            }
            None => Rational::zero(),
        };
        let series_side = series.coefficient(p);
        if lattice_side != series_side {
            mismatches.push(SeriesMismatch {
                exponents: (*p).clone(),
                lattice_side,
                series_side,
            });
        }
    }
    Ok(SeriesReport {
        g,
        n,
        max_sum,
        compared: keys.len(),
        mismatches,
    })
}

/// A symmetric polynomial in `p_1², …, p_n²`, stored with the exponent of
/// `p_j²` in slot `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumePolynomial {
    pub g: u32,
    pub n: usize,
    pub poly: EvenLaurentPoly,
}

impl VolumePolynomial {
    pub fn eval(&self, p: &[Rational]) -> Result<Rational> {
        self.poly.eval(p)
    }
}

impl fmt::Display for VolumePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.to_string().replace('t', "p"))
    }
}

/// `2^{2a+1}/(2a+1)!`, the factor relating `t^{2a}` in `V^S` to `p^{2a}` in
/// `v^S` (from `p^{2a+1} ↔ (2a+1)!/w^{2a+2}` and `t = −2/w`).
fn laplace_factor(a: i32) -> Rational {
    pow2(2 * a as i64 + 1) / Rational::from_integer(factorial(2 * a as u32 + 1))
}

/// `v^S_{g,n}(p)` from `V^S_{g,n}(t)` monomial by monomial.
pub fn inverse_laplace_vs(engine: &Engine, g: u32, n: usize) -> Result<VolumePolynomial> {
    let vs = engine.polynomial(Family::Symplectic, g, n)?;
    inverse_laplace(&vs, g)
}

pub fn inverse_laplace(vs: &EvenLaurentPoly, g: u32) -> Result<VolumePolynomial> {
    if !vs.is_homogeneous() || vs.terms().keys().flatten().any(|&a| a < 0) {
        return Err(Error::NonHomogeneous);
    }
    let n = vs.arity();
    let sign = if n.is_multiple_of(2) { int(1) } else { int(-1) };
    let poly = EvenLaurentPoly::from_terms(
        n,
        vs.terms().iter().map(|(e, c)| {
            let k = e.iter().fold(c * &sign, |acc, &a| acc * laplace_factor(a));
            (e.clone(), k)
        }),
    )?;
    Ok(VolumePolynomial { g, n, poly })
}

/// The forward transform, inverse of [`inverse_laplace`].
pub fn forward_laplace(v: &VolumePolynomial) -> Result<EvenLaurentPoly> {
    let sign = if v.n.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    };
    EvenLaurentPoly::from_terms(
        v.n,
        v.poly.terms().iter().map(|(e, k)| {
            let c = e.iter().fold(k * &sign, |acc, &a| acc / laplace_factor(a));
            (e.clone(), c)
        }),
    )
}

/// A univariate even polynomial (exponents of `q²`) as a dense polynomial in `q`.
fn to_unipoly(p: &EvenLaurentPoly) -> UniPoly {
    let mut coeffs = Vec::new();
    for (e, c) in p.terms() {
        let k = 2 * e[0] as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Rational::zero());
        }
        coeffs[k] = c.clone();
    }
    UniPoly::new(coeffs)
}

/// `∫₀^m q(m − q)·f(q) dq`.
fn line_integral(f: &UniPoly, m: &Rational) -> Rational {
    let weight = UniPoly::new(vec![Rational::zero(), m.clone(), int(-1)]);
    (&weight * f).integrate(&Rational::zero(), m)
}

/// `∬_{q₁,q₂ ≥ 0, q₁+q₂ ≤ P} q₁q₂(P − q₁ − q₂)·G(q₁, q₂)` for `G` a
/// polynomial in `q₁², q₂²` (arity 2), by iterated antidifferentiation.
pub fn triangle_integral(g: &EvenLaurentPoly, p: &Rational) -> Rational {
    let mut total = Rational::zero();
    for (e, c) in g.terms() {
        let (i, j) = (2 * e[0] as usize, 2 * e[1] as usize);
        // inner: ∫₀^s q₂^{j+1}(s − q₂) dq₂ = s^{j+3}/((j+2)(j+3)), s = P − q₁
        let inner = rat(1, ((j + 2) * (j + 3)) as i64);
        let s = UniPoly::new(vec![p.clone(), int(-1)]).pow(j as u32 + 3);
        let outer = &UniPoly::monomial(i + 1, int(1)) * &s;
        total += c * inner * outer.integrate(&Rational::zero(), p);
    }
    total
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionPoint {
    pub p: Vec<Rational>,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl RecursionPoint {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Evaluates both sides of the continuous recursion for `v^S_{g,n}` at `p`:
/// `p₁·v(p)` against the `j`-integrals plus twice the triangle integral of
/// the genus-reduction and splitting terms.
pub fn continuous_recursion_at(
    engine: &Engine,
    g: u32,
    n: usize,
    p: &[Rational],
) -> Result<RecursionPoint> {
    let st = SurfaceType::new(g, n);
    if st.level() < 2 {
        return Err(Error::Unstable { g, n });
    }
    if p.len() != n {
        return Err(Error::ArityMismatch {
            left: n,
            right: p.len(),
        });
    }
    if p.iter().any(|x| *x <= Rational::zero()) {
        return Err(Error::NonPositivePerimeter);
    }
    let p1 = &p[0];
    if p[1..].iter().any(|x| x == p1) {
        return Err(Error::ChamberWall);
    }
    let volume = |gg: u32, nn: usize| -> Result<EvenLaurentPoly> {
        Ok(inverse_laplace_vs(engine, gg, nn)?.poly)
    };
    let lhs = p1 * volume(g, n)?.eval(p)?;

    let mut rhs = Rational::zero();
    if n >= 2 && SurfaceType::new(g, n - 1).is_stable() {
        let prev = volume(g, n - 1)?;
        for j in 1..n {
            let pj = &p[j];
            let assignments: Vec<(usize, Rational)> = (1..n)
                .filter(|&k| k != j)
                .enumerate()
                .map(|(slot, k)| (slot + 1, p[k].clone()))
                .collect();
            let f = to_unipoly(&prev.partial_eval(&assignments)?);
            rhs += line_integral(&f, &(p1 + pj));
            if p1 > pj {
                rhs += line_integral(&f, &(p1 - pj));
            } else {
                rhs -= line_integral(&f, &(pj - p1));
            }
        }
    }

    let mut inner = EvenLaurentPoly::zero(2);
    if g >= 1 {
        let assignments: Vec<(usize, Rational)> = (1..n).map(|k| (k + 1, p[k].clone())).collect();
        inner = inner.add(&volume(g - 1, n + 1)?.partial_eval(&assignments)?)?;
    }
    let rest: Vec<usize> = (1..n).collect();
    for s in enumerate_splittings(g, &rest) {
        let side = |gg: u32, idx: &[usize], slot: usize| -> Result<EvenLaurentPoly> {
            let assignments: Vec<(usize, Rational)> = idx
                .iter()
                .enumerate()
                .map(|(k, &i)| (k + 1, p[i].clone()))
                .collect();
            volume(gg, idx.len() + 1)?
                .partial_eval(&assignments)?
                .substitute_variables(&[slot], 2)
        };
        inner = inner.add(&side(s.g1, &s.i, 0)?.mul(&side(s.g2, &s.j, 1)?)?)?;
    }
    rhs += int(2) * triangle_integral(&inner, p1);

    Ok(RecursionPoint {
        p: p.to_vec(),
        lhs,
        rhs,
    })
}

/// `count` seeded points with `p₁` strictly larger than every other entry;
/// entries are halves of integers in `(0, 20]`.
pub fn chamber_points(n: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let rest: Vec<i64> = (1..n).map(|_| rng.random_range(1..=30)).collect();
            let top = rest.iter().copied().max().unwrap_or(0) + rng.random_range(1..=10);
            std::iter::once(top)
                .chain(rest)
                .map(|x| rat(x, 2))
                .collect()
        })
        .collect()
}

pub fn verify_continuous_recursion(
    engine: &Engine,
    g: u32,
    n: usize,
    points: &[Vec<Rational>],
) -> Result<Vec<RecursionPoint>> {
    points
        .iter()
        .map(|p| continuous_recursion_at(engine, g, n, p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;

    #[test]
    fn series_identity_small() {
        let e = Engine::new();
        let c = LatticeCounter::new();
        for (g, n, max_sum) in [(0, 3, 10), (1, 1, 12), (0, 4, 12)] {
            let r = series_identity(&e, &c, g, n, max_sum).unwrap();
            assert!(r.passed(), "({g},{n}): {:?}", r.mismatches.first());
        }
        let s = laurent_to_series(&golden::l04(), 6);
        assert_eq!(s.coefficient(&[1, 1, 2, 2]), int(8));
        let s = laurent_to_series(&golden::lt11(), 12);
        for q in 1..=6i64 {
            assert_eq!(
                s.coefficient(&[2 * q as u32]),
                rat(-2 * q * (q * q - 1), 12)
            );
        }
    }

    #[test]
    fn inverse_laplace_values() {
        let e = Engine::new();
        assert_eq!(
            inverse_laplace_vs(&e, 0, 3).unwrap().poly,
            EvenLaurentPoly::one(3)
        );
        assert_eq!(
            inverse_laplace_vs(&e, 1, 1).unwrap().poly,
            EvenLaurentPoly::univariate([(1, rat(1, 24))])
        );
        let v04 = inverse_laplace_vs(&e, 0, 4).unwrap();
        let sum_sq = EvenLaurentPoly::from_terms(
            4,
            (0..4).map(|j| {
                let mut ex = vec![0; 4];
                ex[j] = 1;
                (ex, int(1))
            }),
        )
        .unwrap();
        assert_eq!(v04.poly, sum_sq);
        assert_eq!(v04.to_string(), "p₁² + p₂² + p₃² + p₄²");
        for st in SurfaceType::up_to_level(4) {
            let v = inverse_laplace_vs(&e, st.g, st.n).unwrap();
            let back = forward_laplace(&v).unwrap();
            assert_eq!(back, *e.polynomial(Family::Symplectic, st.g, st.n).unwrap());
        }
        assert!(matches!(
            inverse_laplace(&golden::l04(), 0),
            Err(Error::NonHomogeneous)
        ));
    }

    /// `∬ q₁^α q₂^β (P − q₁ − q₂) = P^{α+β+3} α! β! / (α+β+3)!`.
    fn dirichlet(alpha: u32, beta: u32, p: &Rational) -> Rational {
        let top = alpha + beta + 3;
        num_traits::pow(p.clone(), top as usize)
            * Rational::new(factorial(alpha) * factorial(beta), factorial(top))
    }

    #[test]
    fn triangle_integral_matches_dirichlet() {
        let p = rat(7, 3);
        for a in 0..4 {
            for b in 0..4 {
                let mono = EvenLaurentPoly::monomial(vec![a, b], int(1));
                let expected = dirichlet(2 * a as u32 + 1, 2 * b as u32 + 1, &p);
                assert_eq!(triangle_integral(&mono, &p), expected);
            }
        }
    }

    #[test]
    fn continuous_recursion() {
        let e = Engine::new();
        let r = continuous_recursion_at(&e, 0, 4, &[int(7), int(1), int(2), int(3)]).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = continuous_recursion_at(&e, 1, 2, &[int(5), int(2)]).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(matches!(
            continuous_recursion_at(&e, 1, 2, &[int(3), int(3)]),
            Err(Error::ChamberWall)
        ));
        for st in [(0, 5), (1, 3), (2, 1), (0, 6), (2, 2)] {
            let pts = chamber_points(st.1, 3, 5);
            for r in verify_continuous_recursion(&e, st.0, st.1, &pts).unwrap() {
                assert!(r.passed(), "{st:?} {r:?}");
            }
        }
        // the other chamber: p₁ below some p_j
        let r = continuous_recursion_at(&e, 0, 4, &[int(2), int(5), int(1), rat(7, 2)]).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
