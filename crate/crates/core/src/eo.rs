//! Residue-calculus form of the recursions on three spectral curves.
//!
//! For a curve with kernel scalar `κ̂(t)` the Eynard kernel is
//! `K(t, t₁) = −t·κ̂(t)/(t² − t₁²)`, and `F_{g,n}(t₁, v)` is recovered as a
//! sum of residues of `K(t, t₁)·B(t)`, where the bracket `B` collects the
//! two-point pairings, the genus-reduction term and the stable splittings,
//! all paired through the deck transformation `t ↦ −t`.
//!
//! Spectator variables `t₂..t_n` are fixed rationals and `t₁` stays symbolic,
//! so each integrand term is `φ(t) / (∏(t − a)^k · (t² − t₁²))` with `φ` a
//! Laurent polynomial in `t`. Residues are taken at `±t₁` and at the numeric
//! poles `a`; the poles at `0` and `∞` lie outside the contour.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::exactmath::{
    int, pow2, rat, Dual, EvenLaurentPoly, Laurent1, RatFunc, Rational, UniPoly,
};
use crate::surface::{enumerate_splittings, SurfaceType};
use crate::transform::{Engine, Family};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveKind {
    Full,
    Euclidean,
    Symplectic,
}

impl CurveKind {
    pub const ALL: [CurveKind; 3] = [CurveKind::Full, CurveKind::Euclidean, CurveKind::Symplectic];

    /// The polynomial family the curve reproduces.
    pub fn family(self) -> Family {
        match self {
            CurveKind::Full => Family::Laplace,
            CurveKind::Euclidean => Family::Euclidean,
            CurveKind::Symplectic => Family::Symplectic,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CurveKind::Full => "full",
            CurveKind::Euclidean => "euclidean",
            CurveKind::Symplectic => "symplectic",
        }
    }

    pub fn spec(self) -> SpectralCurveSpec {
        let t = RatFunc::x();
        let one = RatFunc::constant(int(1));
        match self {
            CurveKind::Full => {
                // x = (t+1)/(t−1) + (t−1)/(t+1), y = (t+1)/(t−1)
                let y = &(&t + &one) * &(&t - &one).recip();
                SpectralCurveSpec {
                    kind: self,
                    x: &y + &y.recip(),
                    y,
                    kernel_scalar: Laurent1::from_pairs([
                        (4, rat(1, 32)),
                        (2, rat(-3, 32)),
                        (0, rat(3, 32)),
                        (-2, rat(-1, 32)),
                    ]),
                    cauchy_scale: int(1),
                }
            }
            CurveKind::Euclidean => SpectralCurveSpec {
                kind: self,
                x: &RatFunc::constant(int(2)) + &(&RatFunc::constant(int(4)) * &t.powi(-2)),
                y: &one + &(&RatFunc::constant(int(2)) * &t.recip()),
                kernel_scalar: Laurent1::monomial(4, rat(1, 32)),
                cauchy_scale: int(1),
            },
            CurveKind::Symplectic => SpectralCurveSpec {
                kind: self,
                x: t.powi(-2),
                y: t.recip(),
                kernel_scalar: Laurent1::monomial(4, rat(1, 4)),
                // the (0,2) pairing carries the Kontsevich factor 2^{5·0−5+2·2}
                cauchy_scale: rat(1, 2),
            },
        }
    }
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CurveKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CurveKind::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown curve {s:?}")))
    }
}

/// A spectral curve `(x(t), y(t))` with deck transformation `s(t) = −t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralCurveSpec {
    pub kind: CurveKind,
    pub x: RatFunc,
    pub y: RatFunc,
    /// `κ̂(t)` in `K(t, t₁) = −t·κ̂(t)/(t² − t₁²)`.
    pub kernel_scalar: Laurent1,
    /// Multiplier of the two-point function `1/(t ± v)²`.
    pub cauchy_scale: Rational,
}

impl SpectralCurveSpec {
    pub fn deck(&self, t: &Rational) -> Rational {
        -t
    }

    /// `(y(t) − y(s(t)))·x′(t) = −1/κ̂(t)` as rational functions.
    pub fn kernel_identity_holds(&self) -> bool {
        let lhs = &(&self.y - &self.y.reflect()) * &self.x.derivative();
        let rhs = &RatFunc::constant(int(-1)) * &self.kernel_scalar.to_ratfunc().recip();
        lhs == rhs
    }
}

/// Which two-point function pairs `t` with a spectator `v` in the
/// `j`-terms: `1/(t + v)²` or the Cauchy kernel `1/(t − v)²`. The two give
/// the same residue sum on even functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoPoint {
    Laplace,
    Cauchy,
}

impl TwoPoint {
    /// Pole location of the pairing of `σ·t` with `v`.
    fn pole(self, sigma: i32, v: &Rational) -> Rational {
        let s = int(sigma as i64);
        match self {
            TwoPoint::Laplace => -(s * v),
            TwoPoint::Cauchy => s * v,
        }
    }
}

/// `numerator(t) / ∏ (t − a)^k`, to be multiplied by the integrand's kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrandTerm {
    pub numerator: Laurent1,
    pub poles: Vec<(Rational, u32)>,
}

/// `Σ_terms kernel(t)·numerator(t)/∏(t − a)^k`, divided by `t² − t₁²` when
/// `symbolic` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueIntegrand {
    pub kernel: Laurent1,
    pub symbolic: bool,
    pub terms: Vec<IntegrandTerm>,
}

impl ResidueIntegrand {
    /// Applies the deck transformation to the bracket: every term `B(t)`
    /// becomes `B(−t)`, the kernel is unchanged.
    pub fn deck_transform(&self) -> ResidueIntegrand {
        ResidueIntegrand {
            kernel: self.kernel.clone(),
            symbolic: self.symbolic,
            terms: self
                .terms
                .iter()
                .map(|term| IntegrandTerm {
                    numerator: term.numerator.reflect(),
                    poles: term.poles.iter().map(|(a, k)| (-a, *k)).collect(),
                })
                .collect(),
        }
    }
}

fn univariate_to_laurent1(p: &EvenLaurentPoly) -> Laurent1 {
    Laurent1::from_pairs(p.terms().iter().map(|(e, c)| (2 * e[0], c.clone())))
}

/// `∏ (σT − a)^k` as a polynomial in `T`.
fn pole_poly(poles: &[(Rational, u32)], sigma: i64) -> UniPoly {
    poles.iter().fold(UniPoly::constant(int(1)), |acc, (a, k)| {
        &acc * &UniPoly::new(vec![-a, int(sigma)]).pow(*k)
    })
}

/// `(a² − T²)^{−k}` as a rational function of `T`.
fn inverse_gap(a: &Rational, k: i32) -> RatFunc {
    RatFunc::poly(UniPoly::new(vec![a * a, int(0), int(-1)])).powi(-k)
}

/// Sum of the residues of the integrand at `±t₁` and at every numeric pole,
/// as a Laurent polynomial in `t₁` (a constant when the integrand has no
/// `t₁`-dependence).
pub fn residue_sum(integrand: &ResidueIntegrand) -> Result<EvenLaurentPoly> {
    let mut total = RatFunc::zero();
    for term in &integrand.terms {
        let phi = &integrand.kernel * &term.numerator;
        if integrand.symbolic {
            // residues at t = ±T: (φ(T)/P(T) − φ(−T)/P(−T)) / (2T)
            let plus = &phi.to_ratfunc() * &RatFunc::poly(pole_poly(&term.poles, 1)).recip();
            let minus =
                &phi.reflect().to_ratfunc() * &RatFunc::poly(pole_poly(&term.poles, -1)).recip();
            let two_t = RatFunc::poly(UniPoly::monomial(1, int(2)));
            total = &total + &(&(&plus - &minus) * &two_t.recip());
        }
        for (idx, (a, k)) in term.poles.iter().enumerate() {
            if *k > 2 {
                return Err(Error::PoleOrder(*k));
            }
            // φ_a = φ / ∏_{b ≠ a} (t − b)^{k_b}, evaluated with its derivative at a
            let mut val = phi.eval_dual(&Dual::variable(a.clone()));
            for (jdx, (b, kb)) in term.poles.iter().enumerate() {
                if jdx != idx {
                    let gap = Dual::variable(a - b).powi(-(*kb as i32));
                    val = &val * &gap;
                }
            }
            let r = if integrand.symbolic {
                let mut r = &RatFunc::constant(val.re.clone()) * &inverse_gap(a, 1);
                if *k == 2 {
                    r = &(&RatFunc::constant(val.eps.clone()) * &inverse_gap(a, 1))
                        - &(&RatFunc::constant(int(2) * a * &val.re) * &inverse_gap(a, 2));
                }
                r
            } else if *k == 2 {
                RatFunc::constant(val.eps)
            } else {
                RatFunc::constant(val.re)
            };
            total = &total + &r;
        }
    }
    let laurent = total.to_laurent().ok_or(Error::NotLaurent)?;
    if !laurent.is_even() {
        return Err(Error::NotLaurent);
    }
    Ok(EvenLaurentPoly::univariate(
        laurent.terms().iter().map(|(k, c)| (k / 2, c.clone())),
    ))
}

/// Assembles the integrand whose residue sum is `F_{g,n}(t₁, values)`.
///
/// The contour is the annulus between a small circle around `0` and a large
/// one; its orientation contributes an overall minus sign, folded into the
/// stored kernel `t·κ̂(t)`.
pub fn build_rhs(
    engine: &Engine,
    curve: &SpectralCurveSpec,
    g: u32,
    n: usize,
    values: &[Rational],
    two_point: TwoPoint,
) -> Result<ResidueIntegrand> {
    let st = SurfaceType::new(g, n);
    if !st.is_stable() {
        return Err(Error::Unstable { g, n });
    }
    if values.len() + 1 != n {
        return Err(Error::ArityMismatch {
            left: n - 1,
            right: values.len(),
        });
    }
    for (i, v) in values.iter().enumerate() {
        if v.is_zero() {
            return Err(Error::Pole { slot: i + 1 });
        }
        if values[..i].iter().any(|w| w == v || *w == -v) {
            return Err(Error::CoincidentPoints);
        }
    }
    let family = curve.kind.family();
    let c = &curve.cauchy_scale;
    let poly = |gg: u32, slots: &[&Rational]| -> Result<Laurent1> {
        let f = engine.polynomial(family, gg, slots.len() + 1)?;
        let assignments: Vec<(usize, Rational)> = slots
            .iter()
            .enumerate()
            .map(|(k, v)| (k + 1, (*v).clone()))
            .collect();
        Ok(univariate_to_laurent1(&f.partial_eval(&assignments)?))
    };
    let mut terms = Vec::new();

    match (g, n) {
        (0, 3) => {
            // the single unordered pair of two-point functions
            let (v2, v3) = (&values[0], &values[1]);
            for sigma in [1, -1] {
                terms.push(IntegrandTerm {
                    numerator: Laurent1::constant(-(c * c)),
                    poles: vec![
                        (two_point.pole(sigma, v2), 2),
                        (two_point.pole(-sigma, v3), 2),
                    ],
                });
            }
        }
        (1, 1) => {
            // genus term with the Cauchy kernel on the diagonal: c/(t − (−t))²
            terms.push(IntegrandTerm {
                numerator: Laurent1::monomial(-2, -c / int(4)),
                poles: vec![],
            });
        }
        _ => {
            if n >= 2 && SurfaceType::new(g, n - 1).is_stable() {
                for j in 0..values.len() {
                    let rest: Vec<&Rational> = values
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != j)
                        .map(|(_, v)| v)
                        .collect();
                    let f = poly(g, &rest)?.scale(&-c);
                    // pairing(t, v_j)·F(s(t)) + pairing(s(t), v_j)·F(t), F even
                    for sigma in [1, -1] {
                        terms.push(IntegrandTerm {
                            numerator: f.clone(),
                            poles: vec![(two_point.pole(sigma, &values[j]), 2)],
                        });
                    }
                }
            }
            if g >= 1 {
                let f = engine
                    .polynomial(family, g - 1, n + 1)?
                    .diagonal_merge(0, 1)?;
                let assignments: Vec<(usize, Rational)> = values
                    .iter()
                    .enumerate()
                    .map(|(k, v)| (k + 1, v.clone()))
                    .collect();
                let f = univariate_to_laurent1(&f.partial_eval(&assignments)?);
                terms.push(IntegrandTerm {
                    numerator: f.scale(&int(-1)),
                    poles: vec![],
                });
            }
            let rest: Vec<usize> = (0..values.len()).collect();
            for s in enumerate_splittings(g, &rest) {
                let left: Vec<&Rational> = s.i.iter().map(|&k| &values[k]).collect();
                let right: Vec<&Rational> = s.j.iter().map(|&k| &values[k]).collect();
                let prod = &poly(s.g1, &left)? * &poly(s.g2, &right)?.reflect();
                terms.push(IntegrandTerm {
                    numerator: prod.scale(&int(-1)),
                    poles: vec![],
                });
            }
        }
    }
    let kernel = &Laurent1::monomial(1, int(1)) * &curve.kernel_scalar;
    Ok(ResidueIntegrand {
        kernel,
        symbolic: true,
        terms,
    })
}

/// `F_{g,n}(t₁, values)` straight from the engine.
pub fn direct_value(
    engine: &Engine,
    curve: &SpectralCurveSpec,
    g: u32,
    n: usize,
    values: &[Rational],
) -> Result<EvenLaurentPoly> {
    let f = engine.polynomial(curve.kind.family(), g, n)?;
    let assignments: Vec<(usize, Rational)> = values
        .iter()
        .enumerate()
        .map(|(k, v)| (k + 1, v.clone()))
        .collect();
    f.partial_eval(&assignments)
}

const SPECTATOR_PRIMES: [i64; 14] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

/// `count` values `±p/2^k` with distinct odd primes `p` and `k ∈ {0,1,2}`.
pub fn spectator_values<R: Rng>(rng: &mut R, count: usize) -> Vec<Rational> {
    let mut primes = SPECTATOR_PRIMES.to_vec();
    primes.shuffle(rng);
    primes
        .into_iter()
        .take(count)
        .map(|p| {
            let sign = if rng.random_bool(0.5) { 1 } else { -1 };
            int(sign * p) * pow2(-(rng.random_range(0..3) as i64))
        })
        .collect()
}

/// Outcome of one trial of [`verify_eo`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EoTrial {
    pub values: Vec<Rational>,
    pub expected: EvenLaurentPoly,
    pub residues: EvenLaurentPoly,
}

impl EoTrial {
    pub fn passed(&self) -> bool {
        self.expected == self.residues
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EoReport {
    pub curve: CurveKind,
    pub g: u32,
    pub n: usize,
    pub seed: u64,
    pub trials: Vec<EoTrial>,
}

impl EoReport {
    pub fn passed(&self) -> bool {
        self.trials.iter().all(EoTrial::passed)
    }

    pub fn first_failure(&self) -> Option<&EoTrial> {
        self.trials.iter().find(|t| !t.passed())
    }
}

/// Compares the residue sum with the engine's polynomial at `trials` seeded
/// spectator tuples.
pub fn verify_eo(
    engine: &Engine,
    kind: CurveKind,
    g: u32,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<EoReport> {
    let curve = kind.spec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tuples: Vec<Vec<Rational>> = (0..trials)
        .map(|_| spectator_values(&mut rng, n - 1))
        .collect();
    let trials = tuples
        .into_par_iter()
        .map(|values| {
            let integrand = build_rhs(engine, &curve, g, n, &values, TwoPoint::Laplace)?;
            Ok(EoTrial {
                residues: residue_sum(&integrand)?,
                expected: direct_value(engine, &curve, g, n, &values)?,
                values,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EoReport {
        curve: kind,
        g,
        n,
        seed,
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;

    fn integrand(terms: Vec<IntegrandTerm>, symbolic: bool) -> ResidueIntegrand {
        ResidueIntegrand {
            kernel: Laurent1::constant(int(1)),
            symbolic,
            terms,
        }
    }

    #[test]
    fn kernel_identity() {
        for kind in CurveKind::ALL {
            assert!(kind.spec().kernel_identity_holds(), "{kind}");
        }
    }

    #[test]
    fn simple_residues() {
        // 2t/(t² − t₁²)·G(t) with G = 3 + t⁻² gives 2G(t₁)
        let g = Laurent1::from_pairs([(0, int(3)), (-2, int(1))]);
        let i = integrand(
            vec![IntegrandTerm {
                numerator: &Laurent1::monomial(1, int(2)) * &g,
                poles: vec![],
            }],
            true,
        );
        let expected = EvenLaurentPoly::univariate([(0, int(6)), (-1, int(2))]);
        assert_eq!(residue_sum(&i).unwrap(), expected);

        // P(t)/(t − a)² with P = t³ gives P′(a) = 3a²
        let i = integrand(
            vec![IntegrandTerm {
                numerator: Laurent1::monomial(3, int(1)),
                poles: vec![(rat(5, 2), 2)],
            }],
            false,
        );
        assert_eq!(
            residue_sum(&i).unwrap(),
            EvenLaurentPoly::constant(1, rat(75, 4))
        );

        let i = integrand(
            vec![IntegrandTerm {
                numerator: Laurent1::constant(int(1)),
                poles: vec![(int(1), 3)],
            }],
            false,
        );
        assert!(matches!(residue_sum(&i), Err(Error::PoleOrder(3))));
    }

    #[test]
    fn base_cases_by_residues() {
        let e = Engine::new();
        let full = CurveKind::Full.spec();
        let i = build_rhs(&e, &full, 1, 1, &[], TwoPoint::Laplace).unwrap();
        assert_eq!(residue_sum(&i).unwrap(), golden::lt11());

        let values = [int(3), int(5)];
        let i = build_rhs(&e, &full, 0, 3, &values, TwoPoint::Laplace).unwrap();
        let expected = golden::lt03()
            .partial_eval(&[(1, int(3)), (2, int(5))])
            .unwrap();
        assert_eq!(residue_sum(&i).unwrap(), expected);

        let values = [int(2), int(3), int(5)];
        let i = build_rhs(&e, &full, 0, 4, &values, TwoPoint::Laplace).unwrap();
        let expected = golden::l04()
            .partial_eval(&[(1, int(2)), (2, int(3)), (3, int(5))])
            .unwrap();
        assert_eq!(residue_sum(&i).unwrap(), expected);
    }

    #[test]
    fn all_curves_low_levels() {
        let e = Engine::new();
        for kind in CurveKind::ALL {
            for st in SurfaceType::up_to_level(2) {
                let r = verify_eo(&e, kind, st.g, st.n, 2, 11).unwrap();
                assert!(r.passed(), "{kind} {st}: {:?}", r.first_failure());
            }
        }
    }

    #[test]
    fn deck_symmetry_and_cauchy_variant() {
        let e = Engine::new();
        let values = [rat(7, 2), int(-3), rat(11, 4)];
        for kind in CurveKind::ALL {
            let curve = kind.spec();
            let i = build_rhs(&e, &curve, 0, 4, &values, TwoPoint::Laplace).unwrap();
            let a = residue_sum(&i).unwrap();
            assert_eq!(residue_sum(&i.deck_transform()).unwrap(), a);
            let j = build_rhs(&e, &curve, 0, 4, &values, TwoPoint::Cauchy).unwrap();
            assert_eq!(residue_sum(&j).unwrap(), a);
        }
    }

    #[test]
    fn rejects_bad_points() {
        let e = Engine::new();
        let full = CurveKind::Full.spec();
        assert!(matches!(
            build_rhs(&e, &full, 0, 3, &[int(3), int(-3)], TwoPoint::Laplace),
            Err(Error::CoincidentPoints)
        ));
        assert!(build_rhs(&e, &full, 0, 3, &[int(0), int(2)], TwoPoint::Laplace).is_err());
    }

    #[test]
    fn seeded_values_are_reproducible() {
        let mut a = ChaCha8Rng::seed_from_u64(3);
        let mut b = ChaCha8Rng::seed_from_u64(3);
        let va = spectator_values(&mut a, 5);
        assert_eq!(va, spectator_values(&mut b, 5));
        for (i, x) in va.iter().enumerate() {
            assert!(!x.is_zero());
            assert!(va[..i].iter().all(|y| *y != *x && *y != -x));
        }
    }
}
