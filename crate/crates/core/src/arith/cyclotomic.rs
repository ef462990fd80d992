//! Arithmetic in the cyclotomic fields `Q[z]/(Phi_m(z))`.
//!
//! Values that happen to be rational are stored in a field-agnostic form
//! (`modulus == 0`), so that the additive and multiplicative identities and all
//! embedded rationals compare equal across fields and need no context.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::scalar::{Rational, Scalar};

/// Element of `Q(zeta_m)` in the power basis `1, z, ..., z^(phi(m)-1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicScalar {
    modulus: u32,
    coeffs: Vec<Rational>,
}

/// Coefficients (low to high) of the m-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Rational>>>>> = OnceLock::new();
    assert!(m >= 1, "cyclotomic index must be positive");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    // z^m - 1 divided by Phi_d for all proper divisors d of m
    let mut num = vec![Rational::zero(); m as usize + 1];
    num[0] = -Rational::one();
    num[m as usize] = Rational::one();
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            let (q, r) = upoly_divrem(&num, &phi_d);
            debug_assert!(r.iter().all(|c| c.is_zero()));
            num = q;
        }
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(m, p.clone());
    p
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Univariate division with remainder over Q, coefficient vectors low to high.
pub(crate) fn upoly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lead_inv = b.last().unwrap().recip();
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * &lead_inv;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        q[shift] = c;
        r = trim(r);
    }
    (q, r)
}

fn upoly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn upoly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Inverse of `a` modulo the irreducible `m`, by the extended Euclidean algorithm.
fn upoly_inverse_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
    let (mut r0, mut r1) = (trim(m.to_vec()), trim(a.to_vec()));
    let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (vec![], vec![Rational::one()]);
    if r1.is_empty() {
        return None;
    }
    while r1.len() > 1 {
        let (q, r) = upoly_divrem(&r0, &r1);
        let s = upoly_sub(&s0, &upoly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        if r1.is_empty() {
            // gcd has positive degree: not invertible
            return None;
        }
    }
    let c = r1[0].recip();
    let inv: Vec<Rational> = s1.iter().map(|x| x * &c).collect();
    Some(upoly_divrem(&inv, m).1)
}

impl CyclotomicScalar {
    fn from_parts(modulus: u32, coeffs: Vec<Rational>) -> Self {
        let coeffs = trim(coeffs);
        if coeffs.len() <= 1 {
            return CyclotomicScalar { modulus: 0, coeffs };
        }
        let deg = cyclotomic_polynomial(modulus).len() - 1;
        let mut coeffs = coeffs;
        coeffs.resize(deg, Rational::zero());
        CyclotomicScalar { modulus, coeffs }
    }

    /// Build `sum coeffs[k] z^k` in `Q(zeta_m)`, reducing modulo `Phi_m`.
    pub fn new(modulus: u32, coeffs: Vec<Rational>) -> Self {
        let phi = cyclotomic_polynomial(modulus);
        let (_, r) = upoly_divrem(&coeffs, &phi);
        Self::from_parts(modulus, r)
    }

    /// The generator `z`, a primitive m-th root of unity.
    pub fn zeta(modulus: u32) -> Self {
        Self::new(modulus, vec![Rational::zero(), Rational::one()])
    }

    /// Cyclotomic index, or 0 for a rational value.
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Coefficients in the power basis; length `phi(m)` for non-rational values.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.modulus == 0
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            e >>= 1;
        }
        acc
    }

    fn common_modulus(&self, other: &Self) -> u32 {
        match (self.modulus, other.modulus) {
            (0, m) | (m, 0) => m,
            (a, b) => {
                assert_eq!(a, b, "mixing elements of different cyclotomic fields");
                a
            }
        }
    }

    fn padded(&self, len: usize) -> Vec<Rational> {
        let mut v = self.coeffs.clone();
        v.resize(len.max(v.len()), Rational::zero());
        v
    }
}

impl Scalar for CyclotomicScalar {
    fn zero() -> Self {
        CyclotomicScalar { modulus: 0, coeffs: vec![] }
    }
    fn one() -> Self {
        CyclotomicScalar { modulus: 0, coeffs: vec![Rational::one()] }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn is_one(&self) -> bool {
        self.modulus == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
    fn from_rational(r: Rational) -> Self {
        Self::from_parts(0, vec![r])
    }
    fn to_rational(&self) -> Option<Rational> {
        match (self.modulus, self.coeffs.len()) {
            (0, 0) => Some(Rational::zero()),
            (0, _) => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }
    fn plus(&self, other: &Self) -> Self {
        let m = self.common_modulus(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = self.padded(n);
        for (i, c) in other.coeffs.iter().enumerate() {
            v[i] += c;
        }
        Self::from_parts(m, v)
    }
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }
    fn times(&self, other: &Self) -> Self {
        let m = self.common_modulus(other);
        if self.modulus == 0 || other.modulus == 0 {
            let (s, v) = if self.modulus == 0 { (self, other) } else { (other, self) };
            let Some(c) = s.coeffs.first() else { return Self::zero() };
            return Self::from_parts(m, v.coeffs.iter().map(|x| x * c).collect());
        }
        let prod = upoly_mul(&self.coeffs, &other.coeffs);
        Self::new(m, prod)
    }
    fn negated(&self) -> Self {
        CyclotomicScalar {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.modulus == 0 {
            return Some(Self::from_rational(self.coeffs[0].recip()));
        }
        let phi = cyclotomic_polynomial(self.modulus);
        upoly_inverse_mod(&self.coeffs, &phi).map(|v| Self::from_parts(self.modulus, v))
    }
    fn signed_text(&self) -> (bool, String) {
        match self.to_rational() {
            Some(r) => r.signed_text(),
            None => (false, format!("({self})")),
        }
    }
}

impl fmt::Display for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, abs) = c.signed_text();
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            let body = if mono.is_empty() {
                abs
            } else if abs == "1" {
                mono
            } else {
                format!("{abs}*{mono}")
            };
            write!(f, "{sep}{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [Q(zeta_{})]", self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::scalar::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn known_cyclotomic_polynomials() {
        let as_ints = |m: u32| -> Vec<i64> {
            cyclotomic_polynomial(m)
                .iter()
                .map(|c| c.to_integer().try_into().unwrap())
                .collect()
        };
        assert_eq!(as_ints(1), vec![-1, 1]);
        assert_eq!(as_ints(4), vec![1, 0, 1]);
        assert_eq!(as_ints(6), vec![1, -1, 1]);
        assert_eq!(as_ints(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(as_ints(10), vec![1, -1, 1, -1, 1]);
        assert_eq!(as_ints(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta_satisfies_defining_relation() {
        for q in 2..=7u32 {
            let z = CyclotomicScalar::zeta(2 * q);
            assert_eq!(z.pow(q), CyclotomicScalar::from_rational(int(-1)), "q = {q}");
            assert_eq!(z.pow(2 * q), CyclotomicScalar::one());
        }
        let i = CyclotomicScalar::zeta(4);
        assert_eq!(i.times(&i), CyclotomicScalar::from_rational(int(-1)));
    }

    #[test]
    fn rational_values_are_field_agnostic() {
        let z = CyclotomicScalar::zeta(8);
        let two = CyclotomicScalar::from_rational(int(2));
        assert!(two.is_rational());
        assert_eq!(z.minus(&z), CyclotomicScalar::zero());
        assert_eq!(z.times(&two).times(&z.inverse().unwrap()), two);
    }

    fn arb_element(m: u32) -> impl Strategy<Value = CyclotomicScalar> {
        let deg = cyclotomic_polynomial(m).len() - 1;
        prop::collection::vec((-9i64..=9, 1i64..=5), deg)
            .prop_map(move |v| CyclotomicScalar::new(m, v.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn nonzero_elements_invert(
            s in prop::sample::select(vec![4u32, 6, 8, 10, 12, 14]).prop_flat_map(arb_element)
        ) {
            if !s.is_zero() {
                let inv = s.inverse().unwrap();
                prop_assert!(s.times(&inv).is_one());
            }
        }

        #[test]
        fn multiplication_distributes(a in arb_element(10), b in arb_element(10), c in arb_element(10)) {
            let lhs = a.times(&b.plus(&c));
            let rhs = a.times(&b).plus(&a.times(&c));
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(a.times(&b), b.times(&a));
        }
    }
}
