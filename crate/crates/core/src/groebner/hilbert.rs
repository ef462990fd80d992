//! Hilbert series of monomial ideals (standard grading), Krull dimension and degree.

use crate::arith::Monomial;
use crate::error::{Error, Result};

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in gens {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    out
}

fn one_minus_t_pow(d: u64) -> Vec<i64> {
    let mut v = vec![0; d as usize + 1];
    v[0] += 1;
    v[d as usize] -= 1;
    v
}

fn numerator(gens: Vec<Monomial>) -> Vec<i64> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return vec![0];
    }
    let support = |m: &Monomial| m.exps().iter().filter(|&&e| e > 0).count();
    if gens.iter().all(|m| support(m) == 1) {
        return gens
            .iter()
            .fold(vec![1], |acc, m| poly_mul(&acc, &one_minus_t_pow(m.degree())));
    }
    // pivot on the variable occurring in the most mixed generators
    let n = gens[0].nvars();
    let v = (0..n)
        .max_by_key(|&v| (gens.iter().filter(|m| support(m) > 1 && m.exps()[v] > 0).count(), n - v))
        .unwrap();
    let x = Monomial::var(n, v, 1);
    let mut plus: Vec<Monomial> = gens.iter().filter(|m| m.exps()[v] == 0).cloned().collect();
    plus.push(x.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| {
            let mut e = m.0.clone();
            e[v] = e[v].saturating_sub(1);
            Monomial(e)
        })
        .collect();
    let a = numerator(plus);
    let b = poly_mul(&[0, 1], &numerator(colon));
    let mut out = poly_add(&a, &b);
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

/// Numerator `N(t)` of the Hilbert series `N(t) / (1 - t)^n` of `k[x_1..x_n] / (gens)`.
pub fn hilbert_numerator(nvars: usize, gens: &[Monomial]) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    debug_assert!(gens.iter().all(|m| m.nvars() == nvars));
    numerator(gens.to_vec())
}

/// Reduced Hilbert series data of `k[x_1..x_n] / (gens)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub numerator: Vec<i64>,
    pub dimension: usize,
    pub degree: u64,
}

pub fn hilbert_data(nvars: usize, gens: &[Monomial]) -> Result<HilbertData> {
    let mut num = hilbert_numerator(nvars, gens);
    if num.iter().all(|&c| c == 0) {
        return Err(Error::EmptyVariety);
    }
    let mut k = 0;
    while num.iter().sum::<i64>() == 0 {
        // divide by (1 - t)
        let mut q = Vec::with_capacity(num.len() - 1);
        let mut acc = 0;
        for c in &num[..num.len() - 1] {
            acc += c;
            q.push(acc);
        }
        num = q;
        k += 1;
    }
    let degree = num.iter().sum::<i64>();
    Ok(HilbertData { dimension: nvars - k, degree: degree as u64, numerator: hilbert_numerator(nvars, gens) })
}

/// Size of the largest variable set containing the support of no generator.
pub fn independent_set_dimension(nvars: usize, gens: &[Monomial]) -> Result<usize> {
    if gens.iter().any(|m| m.is_one()) {
        return Err(Error::EmptyVariety);
    }
    let masks: Vec<u32> = gens
        .iter()
        .map(|m| m.exps().iter().enumerate().filter(|(_, &e)| e > 0).fold(0u32, |a, (v, _)| a | 1 << v))
        .collect();
    let best = (0u32..1 << nvars)
        .filter(|s| masks.iter().all(|&m| m & !s != 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e)
    }

    fn exps_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
        if n == 1 {
            return vec![vec![d]];
        }
        (0..=d)
            .flat_map(|a| {
                exps_of_degree(n - 1, d - a).into_iter().map(move |mut rest| {
                    rest.insert(0, a);
                    rest
                })
            })
            .collect()
    }

    /// Number of degree-`d` monomials outside the ideal, by enumeration.
    fn staircase_count(n: usize, gens: &[Monomial], d: u32) -> i64 {
        exps_of_degree(n, d)
            .into_iter()
            .filter(|e| !gens.iter().any(|g| g.divides(&m(e))))
            .count() as i64
    }

    /// Coefficient of t^d in N(t) / (1 - t)^n.
    fn series_coeff(num: &[i64], n: usize, d: u32) -> i64 {
        let binom = |a: i64, b: i64| -> i64 {
            if b < 0 || a < b {
                return 0;
            }
            (0..b).fold(1i64, |acc, i| acc * (a - i) / (i + 1))
        };
        num.iter()
            .enumerate()
            .filter(|(i, _)| *i as u32 <= d)
            .map(|(i, c)| c * binom(d as i64 - i as i64 + n as i64 - 1, n as i64 - 1))
            .sum()
    }

    #[test]
    fn coordinate_subspace() {
        // (a, b) in k[a,b,c,d]: dimension 2, degree 1
        let gens = [m(&[1, 0, 0, 0]), m(&[0, 1, 0, 0])];
        let h = hilbert_data(4, &gens).unwrap();
        assert_eq!((h.dimension, h.degree), (2, 1));
        assert_eq!(independent_set_dimension(4, &gens).unwrap(), 2);
    }

    #[test]
    fn zero_dimensional_counts_monomials() {
        // (x^2, xy, y^3): staircase {1, x, y, y^2}
        let gens = [m(&[2, 0]), m(&[1, 1]), m(&[0, 3])];
        let h = hilbert_data(2, &gens).unwrap();
        assert_eq!((h.dimension, h.degree), (0, 4));
        assert_eq!(hilbert_data(2, &[m(&[0, 0])]), Err(Error::EmptyVariety));
    }

    proptest! {
        #[test]
        fn matches_staircase_enumeration(
            raw in prop::collection::vec(prop::collection::vec(0u32..4, 3), 1..5)
        ) {
            let gens: Vec<Monomial> = raw.iter().map(|e| m(e)).filter(|g| !g.is_one()).collect();
            prop_assume!(!gens.is_empty());
            let h = hilbert_data(3, &gens).unwrap();
            for d in 0..14 {
                prop_assert_eq!(series_coeff(&h.numerator, 3, d), staircase_count(3, &gens, d));
            }
            prop_assert_eq!(h.dimension, independent_set_dimension(3, &gens).unwrap());
            if h.dimension == 0 {
                let total: i64 = (0..20).map(|d| staircase_count(3, &gens, d)).sum();
                prop_assert_eq!(total as u64, h.degree);
            } else {
                // (dim-1)-th difference of the Hilbert function stabilizes at the degree
                let mut vals: Vec<i64> = (20..20 + h.dimension as u32).map(|d| staircase_count(3, &gens, d)).collect();
                while vals.len() > 1 {
                    vals = vals.windows(2).map(|w| w[1] - w[0]).collect();
                }
                prop_assert_eq!(vals[0] as u64, h.degree);
            }
        }
    }
}
