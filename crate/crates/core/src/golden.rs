//! Closed forms of the first few `ℒ_{g,n}`, assembled by polynomial
//! arithmetic from their factored expressions. These are the reference
//! values the engine is checked against.

use crate::exactmath::{int, pow2, rat, EvenLaurentPoly, Rational};

fn u(n: usize, j: usize, a: i32) -> EvenLaurentPoly {
    let mut e = vec![0; n];
    e[j] = a;
    EvenLaurentPoly::monomial(e, int(1))
}

fn c(n: usize, x: Rational) -> EvenLaurentPoly {
    EvenLaurentPoly::constant(n, x)
}

fn sum<I: IntoIterator<Item = EvenLaurentPoly>>(n: usize, it: I) -> EvenLaurentPoly {
    it.into_iter().fold(EvenLaurentPoly::zero(n), |acc, p| {
        acc.add(&p).expect("same arity")
    })
}

fn prod<I: IntoIterator<Item = EvenLaurentPoly>>(n: usize, it: I) -> EvenLaurentPoly {
    it.into_iter().fold(EvenLaurentPoly::one(n), |acc, p| {
        acc.mul(&p).expect("same arity")
    })
}

/// `−(1/16)(1 − 1/(t₁²t₂²t₃²))`.
pub fn lt03() -> EvenLaurentPoly {
    let inv = prod(3, (0..3).map(|j| u(3, j, -1)));
    c(3, int(1)).sub(&inv).expect("arity 3").scale(&rat(-1, 16))
}

/// `−(1/128)(t² − 1)³/t⁴`.
pub fn lt11() -> EvenLaurentPoly {
    let t2m1 = u(1, 0, 1).sub(&c(1, int(1))).expect("arity 1");
    t2m1.pow(3)
        .mul(&u(1, 0, -2))
        .expect("arity 1")
        .scale(&rat(-1, 128))
}

/// `ℒ_{0,4}`.
pub fn l04() -> EvenLaurentPoly {
    let n = 4;
    let inv_all = prod(n, (0..n).map(|j| u(n, j, -1)));
    let sum_sq = sum(n, (0..n).map(|j| u(n, j, 1)));
    let sum_inv = sum(n, (0..n).map(|j| u(n, j, -1)));
    let pairs = sum(
        n,
        (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| u(n, i, -1).mul(&u(n, j, -1)).expect("arity"))),
    );
    sum(
        n,
        [
            sum_sq.scale(&int(3)),
            c(n, int(-9)),
            pairs.neg(),
            inv_all.scale(&int(-9)),
            inv_all.mul(&sum_inv).expect("arity").scale(&int(3)),
        ],
    )
    .scale(&pow2(-8))
}

/// `ℒ_{1,2}`.
pub fn l12() -> EvenLaurentPoly {
    let n = 2;
    let (a, b) = (u(n, 0, 1), u(n, 1, 1));
    let (ia, ib) = (u(n, 0, -1), u(n, 1, -1));
    let iab = ia.mul(&ib).expect("arity");
    let m = |p: &EvenLaurentPoly, q: &EvenLaurentPoly| p.mul(q).expect("arity");
    let s = |p: &EvenLaurentPoly, q: &EvenLaurentPoly| p.add(q).expect("arity");
    sum(
        n,
        [
            s(&a.pow(2), &b.pow(2)).scale(&int(5)),
            m(&a, &b).scale(&int(3)),
            s(&a, &b).scale(&int(-18)),
            c(n, int(27)),
            s(&ia, &ib).scale(&int(-4)),
            iab.scale(&int(27)),
            m(&iab, &s(&ia, &ib)).scale(&int(-18)),
            iab.pow(2).scale(&int(3)),
            m(&iab, &s(&ia.pow(2), &ib.pow(2))).scale(&int(5)),
        ],
    )
    .scale(&pow2(-11))
}

/// `(t² − 1)^k / t^{2k+2}` times a symmetric palindromic factor
/// `Σ c_i t^{2i}`; the shape shared by `ℒ_{2,1}` and `ℒ_{3,1}`.
fn one_point(scale: Rational, k: u32, shift: i32, factor: &[(i32, i64)]) -> EvenLaurentPoly {
    let t2m1 = u(1, 0, 1).sub(&c(1, int(1))).expect("arity 1");
    let f = EvenLaurentPoly::univariate(factor.iter().map(|&(e, x)| (e, int(x))));
    t2m1.pow(k)
        .mul(&u(1, 0, -shift))
        .and_then(|p| p.mul(&f))
        .expect("arity 1")
        .scale(&scale)
}

/// `−(21/2¹⁹)(t² − 1)⁷/t⁸ · (5t² + 6 + 5/t²)`.
pub fn l21() -> EvenLaurentPoly {
    one_point(-int(21) * pow2(-19), 7, 4, &[(1, 5), (0, 6), (-1, 5)])
}

/// `−(11/2³⁰)(t² − 1)¹¹/t¹² · (2275t⁴ + 4004t² + 4722 + 4004/t² + 2275/t⁴)`.
pub fn l31() -> EvenLaurentPoly {
    one_point(
        -int(11) * pow2(-30),
        11,
        6,
        &[(2, 2275), (1, 4004), (0, 4722), (-1, 4004), (-2, 2275)],
    )
}

/// `(g, n, ℒ_{g,n})` for every closed form above.
pub fn all() -> Vec<(u32, usize, EvenLaurentPoly)> {
    vec![
        (0, 3, lt03()),
        (1, 1, lt11()),
        (0, 4, l04()),
        (1, 2, l12()),
        (2, 1, l21()),
        (3, 1, l31()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lt03_times_product() {
        let p = prod(3, (0..3).map(|j| u(3, j, 1)));
        let expected = p.sub(&c(3, int(1))).unwrap().scale(&rat(-1, 16));
        assert_eq!(lt03().mul(&p).unwrap(), expected);
    }

    #[test]
    fn shapes() {
        assert_eq!(lt11().eval(&[int(1)]).unwrap(), int(0));
        assert_eq!(lt03().eval(&[int(1), int(1), int(1)]).unwrap(), int(0));
        assert_eq!(l04().top_degree(), Some(1));
        assert_eq!(l21().top_degree(), Some(4));
        assert_eq!(l31().top_degree(), Some(7));
        for (_, _, p) in all() {
            assert!(p.is_symmetric());
        }
        assert_eq!(
            lt11().leading_part().unwrap(),
            EvenLaurentPoly::univariate([(1, rat(-1, 128))])
        );
    }
}
