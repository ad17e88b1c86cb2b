//! Quantum integers, factorials and binomial coefficients, plus verifiers
//! for the quantum binomial theorem and the quantum Chu-Vandermonde identity.
//!
//! Binomials come from the division-free q-Pascal recursion, so they are
//! defined at roots of unity where some `(n)_q` vanish.

use num_traits::{One, Zero};

use crate::combination::Combination;
use crate::scalar::{GaussianRational, QParam};

/// `1 + q + ... + q^{n-1}`; zero for `n = 0`.
pub fn q_int(n: u32, q: &QParam) -> GaussianRational {
    (0..n).map(|j| q.pow(j as i64)).sum()
}

/// `(1)_q (2)_q ... (n)_q`.
pub fn q_factorial(n: u32, q: &QParam) -> GaussianRational {
    (1..=n).map(|j| q_int(j, q)).product()
}

/// Triangular table of `(n k)_q` for `0 ≤ k ≤ n ≤ max_n`.
#[derive(Debug, Clone)]
pub struct QBinomialTable {
    max_n: u32,
    q: QParam,
    rows: Vec<Vec<GaussianRational>>,
}

impl QBinomialTable {
    pub fn new(max_n: u32, q: &QParam) -> Self {
        let qpow: Vec<GaussianRational> = (0..=max_n).map(|k| q.pow(k as i64)).collect();
        let mut rows: Vec<Vec<GaussianRational>> = vec![vec![GaussianRational::one()]];
        for n in 1..=max_n as usize {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(GaussianRational::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &(&qpow[k] * &prev[k]));
            }
            row.push(GaussianRational::one());
            rows.push(row);
        }
        Self { max_n, q: q.clone(), rows }
    }

    pub fn max_n(&self) -> u32 {
        self.max_n
    }

    pub fn q(&self) -> &QParam {
        &self.q
    }

    /// Zero outside `0 ≤ k ≤ n`. Panics if `n > max_n`.
    pub fn get(&self, n: u32, k: i64) -> GaussianRational {
        assert!(n <= self.max_n, "q-binomial table built only up to n = {}", self.max_n);
        if k < 0 || k > n as i64 {
            return GaussianRational::zero();
        }
        self.rows[n as usize][k as usize].clone()
    }
}

pub fn q_binomial(n: u32, k: i64, q: &QParam) -> GaussianRational {
    if k < 0 || k > n as i64 {
        return GaussianRational::zero();
    }
    QBinomialTable::new(n, q).get(n, k)
}

/// `(n)!_q / ((k)!_q (n-k)!_q)`, or `None` when the denominator vanishes.
pub fn q_binomial_by_quotient(n: u32, k: u32, q: &QParam) -> Option<GaussianRational> {
    if k > n {
        return Some(GaussianRational::zero());
    }
    let den = &q_factorial(k, q) * &q_factorial(n - k, q);
    let inv = den.inv()?;
    Some(&q_factorial(n, q) * &inv)
}

/// Letters of the free algebra on two generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum XY {
    X,
    Y,
}

/// Applies `yx → q·xy` at the leftmost redex until none remain; each step
/// lowers the inversion count, so this terminates.
pub fn normalize_xy(q: &QParam, word: &[XY]) -> (GaussianRational, Vec<XY>) {
    let mut w = word.to_vec();
    let mut coeff = GaussianRational::one();
    while let Some(p) = w.windows(2).position(|pair| pair == [XY::Y, XY::X]) {
        w.swap(p, p + 1);
        coeff *= q.value();
    }
    (coeff, w)
}

/// Expands `(x+y)^n` with the rewrite system and compares the coefficient of
/// every `x^k y^{n-k}` with `(n k)_q`.
pub fn verify_quantum_binomial(n: u32, q: &QParam) -> bool {
    let mut poly: Combination<Vec<XY>> = Combination::basis(Vec::new());
    for _ in 0..n {
        let mut next = Combination::zero();
        for (w, c) in poly.iter() {
            for letter in [XY::X, XY::Y] {
                let mut word = w.clone();
                word.push(letter);
                let (s, nf) = normalize_xy(q, &word);
                next.add_term(nf, c * &s);
            }
        }
        poly = next;
    }
    let table = QBinomialTable::new(n, q);
    let mut expected = Combination::zero();
    for k in 0..=n {
        let mut word = vec![XY::X; k as usize];
        word.extend(std::iter::repeat_n(XY::Y, (n - k) as usize));
        expected.add_term(word, table.get(n, k as i64));
    }
    poly == expected
}

/// Checks `(m+n l)_q = Σ_i q^{(m-i)(l-i)} (m i)_q (n l-i)_q` over the full
/// range `0 ≤ i ≤ l`, that the restricted range gives the same sum, and that
/// every term outside the restricted range is zero.
pub fn verify_chu_vandermonde(m: u32, n: u32, l: u32, q: &QParam) -> bool {
    let table = QBinomialTable::new(m + n, q);
    let lhs = if l <= m + n { table.get(m + n, l as i64) } else { GaussianRational::zero() };
    let lo = l.saturating_sub(n);
    let hi = l.min(m);
    let mut full = GaussianRational::zero();
    let mut restricted = GaussianRational::zero();
    for i in 0..=l {
        let exp = (m as i64 - i as i64) * (l as i64 - i as i64);
        let term = &(&q.pow(exp) * &table.get(m, i as i64)) * &table.get(n, l as i64 - i as i64);
        let inside = i >= lo && i <= hi;
        if inside {
            restricted += &term;
        } else if !term.is_zero() {
            return false;
        }
        full += &term;
    }
    lhs == full && full == restricted
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::standard_test_qs;

    fn q(s: &str) -> QParam {
        s.parse().unwrap()
    }

    #[test]
    fn q_int_examples() {
        assert!(q_int(0, &q("5/7")).is_zero());
        assert_eq!(q_int(3, &q("2")), 7.into());
        assert_eq!(q_int(9, &QParam::one()), 9.into());
    }

    #[test]
    fn q_factorial_examples() {
        let x = q("3/5+4/5*i");
        assert_eq!(q_factorial(0, &x), GaussianRational::one());
        assert_eq!(q_factorial(2, &x), GaussianRational::one() + x.value());
        assert_eq!(q_factorial(3, &q("2")), 21.into());
    }

    #[test]
    fn q_binomial_examples() {
        for x in standard_test_qs() {
            let v = x.value();
            assert_eq!(q_binomial(7, 0, &x), GaussianRational::one());
            assert_eq!(q_binomial(2, 1, &x), GaussianRational::one() + v);
            let expect = GaussianRational::one() + v + &(&x.pow(2) * &2.into()) + &x.pow(3) + &x.pow(4);
            assert_eq!(q_binomial(4, 2, &x), expect);
            assert!(q_binomial(3, 4, &x).is_zero());
            assert!(q_binomial(3, -1, &x).is_zero());
        }
        assert_eq!(q_binomial(4, 2, &q("1/2")), GaussianRational::ratio(35, 16));
    }

    #[test]
    fn classical_limit_matches_pascal() {
        let one = QParam::one();
        for n in 0..=12u32 {
            for k in 0..=n {
                let c = num_integer::binomial(n as i64, k as i64);
                assert_eq!(q_binomial(n, k as i64, &one), c.into());
            }
        }
    }

    #[test]
    fn quantum_binomial_small_cases() {
        let x = q("-1");
        assert!(verify_quantum_binomial(0, &x));
        assert!(verify_quantum_binomial(2, &x));
        assert!(verify_quantum_binomial(12, &q("1/2")));
        let (c, w) = normalize_xy(&q("3"), &[XY::Y, XY::X]);
        assert_eq!((c, w), (3.into(), vec![XY::X, XY::Y]));
    }

    #[test]
    fn chu_vandermonde_examples() {
        let x = q("i");
        assert!(verify_chu_vandermonde(1, 1, 1, &x));
        assert!(verify_chu_vandermonde(1, 1, 3, &x));
        assert!(verify_chu_vandermonde(3, 4, 5, &x));
    }

    #[test]
    fn root_of_unity_degenerate_quotient() {
        // At q = -1, (2)_q = 0, so the quotient for (4 2) is undefined while
        // the recursion gives 1 + q + 2q² + q³ + q⁴ = 2.
        let x = q("-1");
        assert!(q_binomial_by_quotient(4, 2, &x).is_none());
        assert_eq!(q_binomial(4, 2, &x), 2.into());
    }
}
