use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use crate::{Error, Result};

/// Sparse Laurent polynomial in the squared variables `u_j = t_j²`.
///
/// A term `c · ∏ u_j^{a_j}` is stored as `a ↦ c`; the exponents may be
/// negative. The map is a `BTreeMap`, so iteration (and therefore every
/// serialization) follows the lexicographic order of exponent vectors.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvenLaurentPoly {
    arity: usize,
    terms: BTreeMap<Vec<i32>, Rational>,
}

fn accumulate(terms: &mut BTreeMap<Vec<i32>, Rational>, exps: Vec<i32>, c: Rational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(exps) {
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

impl EvenLaurentPoly {
    pub fn zero(arity: usize) -> Self {
        EvenLaurentPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        let mut p = Self::zero(arity);
        accumulate(&mut p.terms, vec![0; arity], c);
        p
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rational::one())
    }

    /// `c · ∏ u_j^{exps[j]}`; the arity is `exps.len()`.
    pub fn monomial(exps: Vec<i32>, c: Rational) -> Self {
        let mut p = Self::zero(exps.len());
        accumulate(&mut p.terms, exps, c);
        p
    }

    /// Univariate polynomial `Σ c_k u^k` from `(k, c_k)` pairs.
    pub fn univariate<I: IntoIterator<Item = (i32, Rational)>>(coeffs: I) -> Self {
        let mut p = Self::zero(1);
        for (k, c) in coeffs {
            accumulate(&mut p.terms, vec![k], c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<i32>, Rational)>>(
        arity: usize,
        terms: I,
    ) -> Result<Self> {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            if e.len() != arity {
                return Err(Error::ArityMismatch {
                    left: arity,
                    right: e.len(),
                });
            }
            accumulate(&mut p.terms, e, c);
        }
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i32>, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[i32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        Ok(())
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j >= self.arity {
            return Err(Error::IndexOutOfRange {
                index: j,
                arity: self.arity,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            accumulate(&mut out.terms, e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                accumulate(&mut out.terms, e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        EvenLaurentPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        EvenLaurentPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), -x)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.arity);
        for _ in 0..k {
            out = out.mul(self).expect("same arity");
        }
        out
    }

    /// Multiplies by the monomial `∏ u_j^{shift[j]}`.
    pub fn shift(&self, shift: &[i32]) -> Result<Self> {
        if shift.len() != self.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: shift.len(),
            });
        }
        Ok(EvenLaurentPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        })
    }

    /// Derivative with respect to `u_j = t_j²`.
    pub fn d_square(&self, j: usize) -> Result<Self> {
        self.check_index(j)?;
        let mut out = Self::zero(self.arity);
        for (e, c) in &self.terms {
            if e[j] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[j] -= 1;
            accumulate(&mut out.terms, e2, c * Rational::from_integer(e[j].into()));
        }
        Ok(out)
    }

    /// `∂/∂t_j (t_j · p)` expressed back in the even ring: `p + 2 u_j ∂p/∂u_j`.
    pub fn d_t_of_t_times(&self, j: usize) -> Result<Self> {
        let dg = self.d_square(j)?;
        let mut shift = vec![0; self.arity];
        shift[j] = 1;
        let twice_u_dg = dg.shift(&shift)?.scale(&Rational::from_integer(2.into()));
        self.add(&twice_u_dg)
    }

    /// Moves every exponent of slot `from` onto slot `to` (which must be free).
    pub fn move_slot(&self, from: usize, to: usize) -> Result<Self> {
        self.check_index(from)?;
        self.check_index(to)?;
        if from == to {
            return Ok(self.clone());
        }
        let mut out = Self::zero(self.arity);
        for (e, c) in &self.terms {
            if e[to] != 0 {
                return Err(Error::SlotNotFree { slot: to });
            }
            let mut e2 = e.clone();
            e2[to] = e2[from];
            e2[from] = 0;
            accumulate(&mut out.terms, e2, c.clone());
        }
        Ok(out)
    }

    /// Exact division by `u_a − u_b`.
    ///
    /// The quotient is computed by synthetic division. Within a block of terms
    /// sharing the spectator exponents and the combined degree `e_a + e_b`,
    /// the block is a Laurent polynomial in `z = u_a/u_b` and the division is
    /// Horner's scheme at `z = 1`. A nonzero remainder is an error.
    pub fn divide_by_difference(&self, a: usize, b: usize) -> Result<Self> {
        self.check_index(a)?;
        self.check_index(b)?;
        if a == b {
            return Err(Error::NonzeroRemainder { a, b });
        }
        // key: exponents with slot a cleared and slot b holding e_a + e_b
        let mut blocks: BTreeMap<Vec<i32>, BTreeMap<i32, Rational>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut key = e.clone();
            key[b] = e[a] + e[b];
            key[a] = 0;
            blocks.entry(key).or_default().insert(e[a], c.clone());
        }
        let mut out = Self::zero(self.arity);
        for (key, block) in blocks {
            let total = key[b];
            let lo = *block.keys().next().expect("nonempty block");
            let hi = *block.keys().next_back().expect("nonempty block");
            // Σ c_k z^k = (z − 1) Σ q_k z^k + r, with q running from lo to hi−1
            let mut carry = Rational::zero();
            for k in (lo..=hi).rev() {
                let ck = block.get(&k).cloned().unwrap_or_else(Rational::zero);
                let acc = ck + &carry;
                if k == lo {
                    if !acc.is_zero() {
                        return Err(Error::NonzeroRemainder { a, b });
                    }
                    break;
                }
                // quotient coefficient of z^{k−1}
                let mut e = key.clone();
                e[a] = k - 1;
                e[b] = total - 1 - (k - 1);
                accumulate(&mut out.terms, e, acc.clone());
                carry = acc;
            }
        }
        Ok(out)
    }

    /// `(f(t_a) − f(t_b)) / (t_a² − t_b²)` where `f` lives in slot `a`
    /// and slot `b` is free.
    pub fn divided_difference(&self, a: usize, b: usize) -> Result<Self> {
        let swapped = self.move_slot(a, b)?;
        self.sub(&swapped)?.divide_by_difference(a, b)
    }

    /// Re-embeds into arity `new_arity`, sending slot `k` to `mapping[k]`.
    pub fn substitute_variables(&self, mapping: &[usize], new_arity: usize) -> Result<Self> {
        if mapping.len() != self.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: mapping.len(),
            });
        }
        let mut seen = vec![false; new_arity];
        for &m in mapping {
            if m >= new_arity {
                return Err(Error::IndexOutOfRange {
                    index: m,
                    arity: new_arity,
                });
            }
            if seen[m] {
                return Err(Error::NonInjective);
            }
            seen[m] = true;
        }
        let mut out = Self::zero(new_arity);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; new_arity];
            for (k, &m) in mapping.iter().enumerate() {
                e2[m] = e[k];
            }
            accumulate(&mut out.terms, e2, c.clone());
        }
        Ok(out)
    }

    /// Specializes `t_j = t_i`: the exponents of slot `j` are added onto slot
    /// `i` and slot `j` is removed.
    pub fn diagonal_merge(&self, i: usize, j: usize) -> Result<Self> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::NonInjective);
        }
        let mut out = Self::zero(self.arity - 1);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[i] += e[j];
            e2.remove(j);
            accumulate(&mut out.terms, e2, c.clone());
        }
        Ok(out)
    }

    /// Relabels variables: slot `k` of the result is slot `perm[k]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let mut inverse = vec![usize::MAX; self.arity];
        for (k, &p) in perm.iter().enumerate() {
            if p >= self.arity {
                return Err(Error::IndexOutOfRange {
                    index: p,
                    arity: self.arity,
                });
            }
            inverse[p] = k;
        }
        self.substitute_variables(&inverse, self.arity)
    }

    pub fn total_degree(exps: &[i32]) -> i64 {
        exps.iter().map(|&a| a as i64).sum()
    }

    /// Largest `Σ a_j` over the stored terms.
    pub fn top_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| Self::total_degree(e)).max()
    }

    pub fn bottom_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| Self::total_degree(e)).min()
    }

    /// Terms of maximal `Σ a_j`.
    pub fn leading_part(&self) -> Result<Self> {
        let top = self.top_degree().ok_or(Error::ZeroPolynomial)?;
        Ok(EvenLaurentPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| Self::total_degree(e) == top)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        })
    }

    pub fn is_homogeneous(&self) -> bool {
        self.top_degree() == self.bottom_degree()
    }

    /// Invariance under every permutation of variables (transpositions of
    /// adjacent slots generate the symmetric group).
    pub fn is_symmetric(&self) -> bool {
        (0..self.arity.saturating_sub(1)).all(|k| {
            let mut perm: Vec<usize> = (0..self.arity).collect();
            perm.swap(k, k + 1);
            self.permute(&perm).map(|q| &q == self).unwrap_or(false)
        })
    }

    /// `t_j ↦ 1/t_j` in every slot, i.e. negates all exponent vectors.
    pub fn invert_variables(&self) -> Self {
        EvenLaurentPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|a| -a).collect(), c.clone()))
                .collect(),
        }
    }

    /// Exact value at `t = point` (each coordinate is a `t_j`, not `t_j²`).
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: point.len(),
            });
        }
        let squares: Vec<Rational> = point.iter().map(|x| x * x).collect();
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (slot, (&a, u)) in e.iter().zip(&squares).enumerate() {
                if a < 0 && u.is_zero() {
                    return Err(Error::Pole { slot });
                }
                v *= pow_i(u, a);
            }
            total += v;
        }
        Ok(total)
    }

    /// Substitutes `t_slot = value` for the listed slots and drops them.
    pub fn partial_eval(&self, assignments: &[(usize, Rational)]) -> Result<Self> {
        let mut fixed: Vec<Option<Rational>> = vec![None; self.arity];
        for (slot, v) in assignments {
            self.check_index(*slot)?;
            fixed[*slot] = Some(v * v);
        }
        let keep: Vec<usize> = (0..self.arity).filter(|&k| fixed[k].is_none()).collect();
        let mut out = Self::zero(keep.len());
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (slot, u) in fixed.iter().enumerate() {
                if let Some(u) = u {
                    if e[slot] < 0 && u.is_zero() {
                        return Err(Error::Pole { slot });
                    }
                    v *= pow_i(u, e[slot]);
                }
            }
            accumulate(&mut out.terms, keep.iter().map(|&k| e[k]).collect(), v);
        }
        Ok(out)
    }

    /// Least common denominator of all coefficients is a power of two.
    pub fn is_dyadic(&self) -> bool {
        self.terms.values().all(super::rational::is_dyadic)
    }

    /// Common ratio `self / other` if the two are proportional term by term.
    pub fn ratio_to(&self, other: &Self) -> Option<Rational> {
        if self.arity != other.arity || self.terms.len() != other.terms.len() || other.is_zero() {
            return None;
        }
        let mut ratio: Option<Rational> = None;
        for ((ea, ca), (eb, cb)) in self.terms.iter().zip(&other.terms) {
            if ea != eb {
                return None;
            }
            let r = ca / cb;
            match &ratio {
                None => ratio = Some(r),
                Some(q) if *q == r => {}
                Some(_) => return None,
            }
        }
        ratio
    }
}

pub(crate) fn pow_i(x: &Rational, e: i32) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

const SUPERSCRIPT: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
const SUBSCRIPT: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];

fn digits(mut n: u64, table: &[char; 10]) -> String {
    let mut out = Vec::new();
    loop {
        out.push(table[(n % 10) as usize]);
        n /= 10;
        if n == 0 {
            break;
        }
    }
    out.iter().rev().collect()
}

pub(crate) fn monomial_text(exps: &[i32]) -> String {
    let mut parts = Vec::new();
    for (j, &a) in exps.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let t_exp = 2 * a as i64;
        let mut s = format!("t{}", digits(j as u64 + 1, &SUBSCRIPT));
        if t_exp < 0 {
            s.push('⁻');
        }
        s.push_str(&digits(t_exp.unsigned_abs(), &SUPERSCRIPT));
        parts.push(s);
    }
    parts.join("")
}

/// Plain text, terms in descending total degree, e.g. `-(1/32)·t₁²`.
impl fmt::Display for EvenLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Vec<i32>, &Rational)> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| {
            Self::total_degree(b)
                .cmp(&Self::total_degree(a))
                .then_with(|| b.cmp(a))
        });
        for (k, (e, c)) in ordered.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono = monomial_text(e);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else if abs.is_integer() {
                write!(f, "{abs}·{mono}")?;
            } else {
                write!(f, "({abs})·{mono}")?;
            }
        }
        Ok(())
    }
}
