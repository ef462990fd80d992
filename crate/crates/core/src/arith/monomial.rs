use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponent vector of a monomial; one entry per ring variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub SmallVec<[u32; 12]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    /// The monomial `v^e`.
    pub fn var(nvars: usize, v: usize, e: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[v] = e;
        m
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let mut out = self.0.clone();
        for (a, &b) in out.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(b).ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial(out))
    }

    /// Product; panics on exponent overflow, which these computations never approach.
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("monomial exponent overflow")
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut out = self.0.clone();
        for (a, &b) in out.iter_mut().zip(other.0.iter()) {
            *a = a.checked_sub(b)?;
        }
        Some(Monomial(out))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(&a, &b)| a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::from_exps(&[2, 0, 1]);
        let b = Monomial::from_exps(&[1, 3, 0]);
        assert_eq!(a.lcm(&b), Monomial::from_exps(&[2, 3, 1]));
        assert_eq!(a.gcd(&b), Monomial::from_exps(&[1, 0, 0]));
        assert!(!a.divides(&b));
        assert!(a.divides(&a.lcm(&b)));
        assert_eq!(a.lcm(&b).div(&a), Some(Monomial::from_exps(&[0, 3, 0])));
        assert_eq!(a.div(&b), None);
        assert!(Monomial::from_exps(&[1, 0, 0]).is_coprime(&Monomial::from_exps(&[0, 2, 2])));
        assert_eq!(a.weighted_degree(&[4, 6, 8]), 16);
    }

    #[test]
    fn overflow_is_reported() {
        let a = Monomial::from_exps(&[u32::MAX]);
        assert_eq!(a.try_mul(&a), Err(Error::ExponentOverflow));
    }
}
