use std::cmp::Ordering;
use std::sync::Arc;

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Monomial orders used by the pipeline.
///
/// All graded orders compare the weighted degree first, using the ring weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Weighted degree, ties broken by reverse lexicographic order.
    WeightedGrevlex,
    /// Pure lexicographic order, first variable largest.
    Lex,
    /// Consecutive variable blocks of the given sizes, compared block by block
    /// (earlier blocks dominate), weighted grevlex inside each block.
    Block(Vec<usize>),
    /// Weighted degree, then *lower* standard degree first, then reverse lex.
    /// On weighted-homogeneous ideals the leading terms are leading terms of the
    /// tangent cone at the origin, which is how local multiplicities are read off.
    TangentCone,
}

impl MonomialOrder {
    pub fn name(&self) -> String {
        match self {
            MonomialOrder::WeightedGrevlex => "wgrevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Block(b) => format!(
                "block({})",
                b.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
            ),
            MonomialOrder::TangentCone => "tangent-cone".into(),
        }
    }

    /// Whether the order compares weighted degree before anything else.
    pub fn is_graded(&self) -> bool {
        !matches!(self, MonomialOrder::Lex | MonomialOrder::Block(_))
    }
}

/// Variable names, positive integer weights, and a monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
    weights: Vec<u32>,
    order: MonomialOrder,
}

pub type RingRef = Arc<PolyRing>;

fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()).rev() {
        if x != y {
            // smaller exponent in the last differing variable is larger
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

fn wdeg(a: &[u32], w: &[u32]) -> u64 {
    a.iter().zip(w).map(|(&e, &w)| e as u64 * w as u64).sum()
}

impl PolyRing {
    pub fn new(names: Vec<String>, weights: Vec<u32>, order: MonomialOrder) -> Result<RingRef> {
        if names.len() != weights.len() {
            return Err(Error::InvalidRing("names and weights differ in length".into()));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidRing("weights must be positive".into()));
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::InvalidRing("variable names must be unique".into()));
        }
        if let MonomialOrder::Block(b) = &order {
            if b.iter().sum::<usize>() != names.len() || b.contains(&0) {
                return Err(Error::InvalidRing("block sizes must partition the variables".into()));
            }
        }
        Ok(Arc::new(PolyRing { names, weights, order }))
    }

    /// Convenience constructor for string-slice names.
    pub fn with(names: &[&str], weights: &[u32], order: MonomialOrder) -> Result<RingRef> {
        Self::new(names.iter().map(|s| s.to_string()).collect(), weights.to_vec(), order)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Same variables and weights under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<RingRef> {
        Self::new(self.names.clone(), self.weights.clone(), order)
    }

    pub fn wdeg(&self, m: &Monomial) -> u64 {
        wdeg(m.exps(), &self.weights)
    }

    /// Compare two monomials; `Greater` means `a` is the larger (leading) one.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exps(), b.exps());
        match &self.order {
            MonomialOrder::WeightedGrevlex => wdeg(a, &self.weights)
                .cmp(&wdeg(b, &self.weights))
                .then_with(|| revlex(a, b)),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Block(sizes) => {
                let mut start = 0;
                for &s in sizes {
                    let r = start..start + s;
                    let w = &self.weights[r.clone()];
                    let o = wdeg(&a[r.clone()], w)
                        .cmp(&wdeg(&b[r.clone()], w))
                        .then_with(|| revlex(&a[r.clone()], &b[r.clone()]));
                    if o != Ordering::Equal {
                        return o;
                    }
                    start += s;
                }
                Ordering::Equal
            }
            MonomialOrder::TangentCone => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                wdeg(a, &self.weights)
                    .cmp(&wdeg(b, &self.weights))
                    .then_with(|| db.cmp(&da))
                    .then_with(|| revlex(a, b))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn rejects_bad_rings() {
        assert!(PolyRing::with(&["a", "a"], &[1, 1], MonomialOrder::Lex).is_err());
        assert!(PolyRing::with(&["a", "b"], &[1, 0], MonomialOrder::Lex).is_err());
        assert!(PolyRing::with(&["a", "b"], &[1, 1], MonomialOrder::Block(vec![1])).is_err());
    }

    #[test]
    fn weighted_grevlex() {
        let r = PolyRing::with(&["x", "y"], &[2, 5], MonomialOrder::WeightedGrevlex).unwrap();
        // y (5) > x^2 (4)
        assert_eq!(r.cmp(&m(&[0, 1]), &m(&[2, 0])), Ordering::Greater);
        // equal weight 10: x^5 vs y^2; y^2 has the larger last exponent so it is smaller
        assert_eq!(r.cmp(&m(&[5, 0]), &m(&[0, 2])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let r = PolyRing::with(&["x", "y", "a"], &[2, 5, 4], MonomialOrder::Block(vec![2, 1])).unwrap();
        assert_eq!(r.cmp(&m(&[1, 0, 0]), &m(&[0, 0, 9])), Ordering::Greater);
        assert_eq!(r.cmp(&m(&[1, 0, 1]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn tangent_cone_prefers_low_standard_degree() {
        let r = PolyRing::with(&["a", "b"], &[4, 6], MonomialOrder::TangentCone).unwrap();
        // a^3 and b^2 both weigh 12; b^2 has lower standard degree
        assert_eq!(r.cmp(&m(&[0, 2]), &m(&[3, 0])), Ordering::Greater);
    }
}
