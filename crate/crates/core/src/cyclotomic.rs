//! Exact arithmetic in Z[ζ_p].
//!
//! Values are kept in the integral basis 1, ζ, …, ζ^{p−2}; the relation
//! 1 + ζ + … + ζ^{p−1} = 0 eliminates ζ^{p−1}, so equality is coefficient-wise.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    p: u32,
    coeffs: Vec<i64>,
}

impl CyclotomicInt {
    fn width(p: u32) -> usize {
        (p as usize - 1).max(1)
    }

    pub fn zero(p: u32) -> Self {
        CyclotomicInt {
            p,
            coeffs: vec![0; Self::width(p)],
        }
    }

    pub fn from_int(p: u32, v: i64) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = v;
        z
    }

    /// ζ_p^k
    pub fn zeta_pow(p: u32, k: u64) -> Self {
        let mut e = vec![0i64; p as usize];
        e[(k % p as u64) as usize] = 1;
        Self::from_exponent_counts(p, &e)
    }

    /// Σ_t counts[t]·ζ^t for t in 0..p.
    pub fn from_exponent_counts<T: Copy + Into<i64>>(p: u32, counts: &[T]) -> Self {
        debug_assert_eq!(counts.len(), p as usize);
        if p == 2 {
            return Self::from_int(2, counts[0].into() - counts[1].into());
        }
        let last: i64 = counts[p as usize - 1].into();
        CyclotomicInt {
            p,
            coeffs: counts[..p as usize - 1]
                .iter()
                .map(|&c| c.into() - last)
                .collect(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// The rational integer this value equals, if it is one.
    pub fn rational(&self) -> Option<i64> {
        self.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then_some(self.coeffs[0])
    }

    pub fn is_rational(&self) -> bool {
        self.rational().is_some()
    }

    fn exponent_vector(&self) -> Vec<i64> {
        if self.p == 2 {
            return vec![self.coeffs[0], 0];
        }
        let mut e = self.coeffs.clone();
        e.push(0);
        e
    }

    /// Complex conjugate, ζ ↦ ζ^{−1}.
    pub fn conj(&self) -> Self {
        let e = self.exponent_vector();
        let p = self.p as usize;
        let mut out = vec![0i64; p];
        for (i, &c) in e.iter().enumerate() {
            out[(p - i) % p] += c;
        }
        Self::from_exponent_counts(self.p, &out)
    }

    /// |x|² = x·x̄
    pub fn norm_sq(&self) -> Self {
        self * &self.conj()
    }
}

impl Add for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn add(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.p, rhs.p);
        CyclotomicInt {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Add for CyclotomicInt {
    type Output = CyclotomicInt;
    fn add(self, rhs: CyclotomicInt) -> CyclotomicInt {
        &self + &rhs
    }
}

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn neg(self) -> CyclotomicInt {
        CyclotomicInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CyclotomicInt {
    type Output = CyclotomicInt;
    fn neg(self) -> CyclotomicInt {
        -&self
    }
}

impl Sub for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn sub(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self + &(-rhs)
    }
}

impl Sub for CyclotomicInt {
    type Output = CyclotomicInt;
    fn sub(self, rhs: CyclotomicInt) -> CyclotomicInt {
        &self - &rhs
    }
}

impl Mul for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn mul(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.p, rhs.p);
        let p = self.p as usize;
        let a = self.exponent_vector();
        let b = rhs.exponent_vector();
        let mut out = vec![0i64; p];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[(i + j) % p] += x * y;
            }
        }
        CyclotomicInt::from_exponent_counts(self.p, &out)
    }
}

impl Mul for CyclotomicInt {
    type Output = CyclotomicInt;
    fn mul(self, rhs: CyclotomicInt) -> CyclotomicInt {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb(p: u32) -> impl Strategy<Value = CyclotomicInt> {
        proptest::collection::vec(-50i64..50, p as usize)
            .prop_map(move |e| CyclotomicInt::from_exponent_counts(p, &e))
    }

    #[test]
    fn relation_reduces_to_zero() {
        for p in [2u32, 3, 5, 7] {
            let ones = vec![1i64; p as usize];
            assert_eq!(
                CyclotomicInt::from_exponent_counts(p, &ones),
                CyclotomicInt::zero(p)
            );
        }
    }

    #[test]
    fn equal_counts_are_rational() {
        // 5 + 2(ζ + ζ²) = 5 − 2 = 3 over p = 3
        let v = CyclotomicInt::from_exponent_counts(3, &[5i64, 2, 2]);
        assert_eq!(v.rational(), Some(3));
        let w = CyclotomicInt::from_exponent_counts(3, &[5i64, 2, 1]);
        assert_eq!(w.rational(), None);
    }

    #[test]
    fn zeta_norm_is_one() {
        for p in [2u32, 3, 5, 7] {
            for k in 0..p as u64 {
                assert_eq!(CyclotomicInt::zeta_pow(p, k).norm_sq().rational(), Some(1));
            }
        }
    }

    proptest! {
        #[test]
        fn ring_laws_p3(x in arb(3), y in arb(3), z in arb(3)) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert!(x.norm_sq().is_rational() || p_is_real_norm(&x));
        }

        #[test]
        fn ring_laws_p5(x in arb(5), y in arb(5)) {
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(x.conj().conj(), x.clone());
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
            // reduction is idempotent
            let again = CyclotomicInt::from_exponent_counts(5, &{
                let mut e = x.coeffs().to_vec();
                e.push(0);
                e
            });
            prop_assert_eq!(again, x);
        }
    }

    // |x|² is fixed by conjugation even when it is not rational
    fn p_is_real_norm(x: &CyclotomicInt) -> bool {
        let n = x.norm_sq();
        n.conj() == n
    }
}
