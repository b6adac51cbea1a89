//! Truncated formal power series over exact rationals, and the generating
//! functions for nonconsecutive-321 and -132 avoiders built on them.
//!
//! A series of order `N` stores coefficients `0..=N`; everything above is
//! unknown. Binary operations truncate to the smaller order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::counting::{catalan_table, BigCount};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    /// Pads with zeros or truncates `coeffs` to exactly `order + 1` terms.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        PowerSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
            order,
        )
    }

    pub fn from_counts(coeffs: &[BigCount], order: usize) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|c| BigRational::from_integer(BigInt::from_biguint(Sign::Plus, c.clone())))
                .collect(),
            order,
        )
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::from_ints(&[1], order)
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::from_ints(&[0, 1], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(
            self.coeffs[..=order.min(self.order())].to_vec(),
            order.min(self.order()),
        )
    }

    pub fn scalar(&self, c: &BigRational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides by `x^k`; the dropped low coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::Domain(format!(
                "cannot divide order-{} series by x^{k}",
                self.order()
            )));
        }
        if let Some(i) = (0..k).find(|&i| !self.coeffs[i].is_zero()) {
            return Err(Error::Domain(format!(
                "division by x^{k}: coefficient {i} is {} rather than 0",
                self.coeffs[i]
            )));
        }
        Ok(PowerSeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Quotient `q` with `q * den = self` through the common order.
    pub fn div(&self, den: &PowerSeries) -> Result<Self> {
        let d0 = &den.coeffs[0];
        if d0.is_zero() {
            return Err(Error::Domain(
                "series division: denominator has zero constant term".into(),
            ));
        }
        let order = self.order().min(den.order());
        let inv_d0 = d0.recip();
        let mut q: Vec<BigRational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for i in 1..=n {
                acc -= &den.coeffs[i] * &q[n - i];
            }
            q.push(acc * &inv_d0);
        }
        Ok(PowerSeries { coeffs: q })
    }

    /// The square root with constant term 1.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Domain(format!(
                "series sqrt needs constant term 1, got {}",
                self.coeffs[0]
            )));
        }
        let half = BigRational::new(1.into(), 2.into());
        let mut r: Vec<BigRational> = vec![BigRational::one()];
        for n in 1..=self.order() {
            let mut acc = self.coeffs[n].clone();
            for i in 1..n {
                acc -= &r[i] * &r[n - i];
            }
            r.push(acc * &half);
        }
        Ok(PowerSeries { coeffs: r })
    }

    /// `self(inner(x))` by Horner's rule.
    pub fn compose(&self, inner: &PowerSeries) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Domain(
                "series composition: inner series has nonzero constant term".into(),
            ));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::zero(order);
        for c in self.coeffs[..=order].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Coefficients as nonnegative integers, or the first offending index.
    pub fn to_counts(&self) -> Result<Vec<BigCount>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if !c.is_integer() || c.is_negative() {
                    return Err(Error::Inconsistent(format!(
                        "coefficient {i} is {c}, not a nonnegative integer"
                    )));
                }
                Ok(c.to_integer().magnitude().clone())
            })
            .collect()
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] + O(x^{})", terms.join(", "), self.order() + 1)
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=order)
                .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
                .collect(),
        }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        self + &(-rhs)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;

    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;

    /// Cauchy product.
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PowerSeries { coeffs: out }
    }
}

/// `C(x) = sum C_n x^n`, seeded from exact Catalan numbers.
pub fn catalan_series(order: usize) -> PowerSeries {
    PowerSeries::from_counts(&catalan_table(order), order)
}

/// `C(x)` with `C_0` dropped.
pub fn catalan_star_series(order: usize) -> PowerSeries {
    let mut c = catalan_series(order);
    c.coeffs[0] = BigRational::zero();
    c
}

/// `(1 - sqrt(1 - 4x)) / (2x)`, through `x^order`.
pub fn catalan_series_by_sqrt(order: usize) -> Result<PowerSeries> {
    let root = PowerSeries::from_ints(&[1, -4], order + 1).sqrt()?;
    let num = (&PowerSeries::one(order + 1) - &root).shift_down(1)?;
    Ok(num.scalar(&BigRational::new(1.into(), 2.into())))
}

/// `D(x) = C*(x) / (1 + x^2 - x C*(x))` as a series through `x^order`.
pub fn d_series(order: usize) -> Result<PowerSeries> {
    let cstar = catalan_star_series(order);
    let den = &PowerSeries::from_ints(&[1, 0, 1], order) - &(&PowerSeries::x(order) * &cstar);
    cstar.div(&den)
}

/// `d_1 ..= d_n_max` read off `D(x)`.
pub fn gf_d_coefficients(n_max: usize) -> Result<Vec<BigCount>> {
    Ok(d_series(n_max)?.to_counts()?.split_off(1))
}

/// `a_1 ..= a_n_max` from `C*(x) / (1 - x/(1+x^2) C*(x))`.
pub fn gf_321_coefficients(n_max: usize) -> Result<Vec<BigCount>> {
    let order = n_max;
    let cstar = catalan_star_series(order);
    let x_over = PowerSeries::x(order).div(&PowerSeries::from_ints(&[1, 0, 1], order))?;
    let den = &PowerSeries::one(order) - &(&x_over * &cstar);
    Ok(cstar.div(&den)?.to_counts()?.split_off(1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gf132Method {
    /// `C(x + x^3)`.
    Composition,
    /// `(1 - sqrt(1 - 4x - 4x^3)) / (2(x + x^3))`.
    ClosedForm,
}

/// `e_0 ..= e_n_max` for nonconsecutive-132 avoiders.
pub fn gf_132_coefficients(n_max: usize, method: Gf132Method) -> Result<Vec<BigCount>> {
    let series = match method {
        Gf132Method::Composition => {
            let inner = PowerSeries::from_ints(&[0, 1, 0, 1], n_max);
            catalan_series(n_max).compose(&inner)?
        }
        Gf132Method::ClosedForm => {
            let order = n_max + 1;
            let root = PowerSeries::from_ints(&[1, -4, 0, -4], order).sqrt()?;
            // numerator / x, then / (2 (1 + x^2))
            let num = (&PowerSeries::one(order) - &root)
                .shift_down(1)
                .map_err(|e| {
                    Error::Inconsistent(format!("closed form numerator does not vanish at 0: {e}"))
                })?;
            num.div(&PowerSeries::from_ints(&[2, 0, 2], n_max))?
        }
    };
    series.to_counts()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{a_sequence_recurrence, catalan, count_132_formula, d_sequence};
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn ints(v: &[u64]) -> Vec<BigCount> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn arithmetic_examples() {
        let a = PowerSeries::from_ints(&[1, 1], 4);
        let b = PowerSeries::from_ints(&[1, -1], 4);
        assert_eq!(&a * &b, PowerSeries::from_ints(&[1, 0, -1], 4));
        assert_eq!(&a + &PowerSeries::zero(4), a);
        let shifted = &PowerSeries::x(8) * &catalan_star_series(8);
        for n in 2..=8 {
            assert_eq!(shifted.coeff(n).to_integer(), BigInt::from(catalan(n - 1)));
        }
        // truncation to the smaller order
        assert_eq!((&a * &PowerSeries::one(2)).order(), 2);
    }

    #[test]
    fn division_examples() {
        let geo = PowerSeries::one(6)
            .div(&PowerSeries::from_ints(&[1, -1], 6))
            .unwrap();
        assert_eq!(geo, PowerSeries::from_ints(&[1; 7], 6));
        let s = PowerSeries::from_ints(&[3, 1, 4, 1, 5], 4);
        assert_eq!(s.div(&s).unwrap(), PowerSeries::one(4));
        assert!(matches!(s.div(&PowerSeries::x(4)), Err(Error::Domain(_))));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(PowerSeries::one(5).sqrt().unwrap(), PowerSeries::one(5));
        let sq = PowerSeries::from_ints(&[1, 2, 1], 6);
        assert_eq!(sq.sqrt().unwrap(), PowerSeries::from_ints(&[1, 1], 6));
        assert!(PowerSeries::from_ints(&[4, 1], 3).sqrt().is_err());
        assert!(PowerSeries::zero(3).sqrt().is_err());
    }

    #[test]
    fn compose_examples() {
        let outer = PowerSeries::from_ints(&[2, -1, 3, 5], 6);
        assert_eq!(outer.compose(&PowerSeries::x(6)).unwrap(), outer);
        let geo = PowerSeries::one(8)
            .div(&PowerSeries::from_ints(&[1, -1], 8))
            .unwrap();
        let got = geo.compose(&PowerSeries::from_ints(&[0, 0, 1], 8)).unwrap();
        assert_eq!(got, PowerSeries::from_ints(&[1, 0, 1, 0, 1, 0, 1, 0, 1], 8));
        assert!(outer.compose(&PowerSeries::one(6)).is_err());
    }

    #[test]
    fn catalan_by_sqrt_matches_catalan_numbers() {
        let s = catalan_series_by_sqrt(30).unwrap();
        assert_eq!(s.to_counts().unwrap(), catalan_table(30));
        assert_eq!(
            catalan_series_by_sqrt(5).unwrap().to_counts().unwrap(),
            ints(&[1, 1, 2, 5, 14, 42])
        );
    }

    #[test]
    fn d_series_matches_recurrence() {
        assert_eq!(gf_d_coefficients(5).unwrap()[..4], ints(&[1, 2, 5, 16])[..]);
        assert_eq!(gf_d_coefficients(30).unwrap(), d_sequence(30));
    }

    #[test]
    fn gf_321_matches_recurrence() {
        assert_eq!(
            gf_321_coefficients(8).unwrap(),
            ints(&[1, 2, 6, 18, 56, 182, 607, 2064])
        );
        assert_eq!(
            gf_321_coefficients(30).unwrap(),
            a_sequence_recurrence(30).unwrap()
        );
    }

    #[test]
    fn gf_132_both_methods() {
        let expected = ints(&[1, 1, 2, 6, 18, 57, 190, 654, 2306]);
        for method in [Gf132Method::Composition, Gf132Method::ClosedForm] {
            assert_eq!(gf_132_coefficients(8, method).unwrap(), expected);
            let long = gf_132_coefficients(30, method).unwrap();
            let formula: Vec<_> = (0..=30).map(count_132_formula).collect();
            assert_eq!(long, formula);
        }
        assert_eq!(
            gf_132_coefficients(0, Gf132Method::ClosedForm).unwrap(),
            ints(&[1])
        );
    }

    #[test]
    fn to_counts_rejects_fractions() {
        let half = PowerSeries::new(vec![BigRational::new(1.into(), 2.into())], 0);
        assert!(matches!(half.to_counts(), Err(Error::Inconsistent(_))));
        assert!(PowerSeries::from_ints(&[-1], 0).to_counts().is_err());
    }

    fn rational() -> impl Strategy<Value = BigRational> {
        (-20i64..=20, 1i64..=6).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
    }

    fn series(order: usize) -> impl Strategy<Value = PowerSeries> {
        proptest::collection::vec(rational(), order + 1)
            .prop_map(move |c| PowerSeries::new(c, order))
    }

    /// Expands `outer(inner)` as a polynomial with no truncation until the end.
    fn naive_substitute(outer: &[BigRational], inner: &[BigRational], order: usize) -> PowerSeries {
        let poly_mul = |a: &[BigRational], b: &[BigRational]| {
            let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        };
        let mut total = vec![BigRational::zero()];
        let mut power = vec![BigRational::one()];
        for c in outer {
            let term: Vec<_> = power.iter().map(|p| p * c).collect();
            if term.len() > total.len() {
                total.resize(term.len(), BigRational::zero());
            }
            for (t, v) in total.iter_mut().zip(term) {
                *t += v;
            }
            power = poly_mul(&power, inner);
        }
        total.truncate(order + 1);
        PowerSeries::new(total, order)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn div_then_mul_recovers(num in series(16), mut den in series(16)) {
            if den.coeffs[0].is_zero() {
                den.coeffs[0] = BigRational::one();
            }
            let q = num.div(&den).unwrap();
            prop_assert_eq!(&q * &den, num);
        }

        #[test]
        fn sqrt_squares_back(mut s in series(16)) {
            s.coeffs[0] = BigRational::one();
            let r = s.sqrt().unwrap();
            prop_assert_eq!(&r * &r, s);
        }

        #[test]
        fn compose_matches_substitution(
            outer in proptest::collection::vec(rational(), 1..=9),
            inner in proptest::collection::vec(rational(), 1..=8),
        ) {
            let order = 12;
            let mut inner_full = vec![BigRational::zero()];
            inner_full.extend(inner);
            let got = PowerSeries::new(outer.clone(), order)
                .compose(&PowerSeries::new(inner_full.clone(), order))
                .unwrap();
            prop_assert_eq!(got, naive_substitute(&outer, &inner_full, order));
        }
    }
}
