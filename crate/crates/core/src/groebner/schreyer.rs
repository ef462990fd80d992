//! Schreyer frames: a (usually non-minimal) free resolution whose syzygies
//! come straight from reducing S-pairs, and the Betti numbers it determines
//! through `Tor(R/I, k) = H(F ⊗ k)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::vector::{cancel_pair, ModuleOrder, Term, Vector};
use super::Budget;
use crate::arith::{rational_rank, Monomial, Rational};
use crate::error::{Error, Result};

/// Syzygies of a Gröbner basis `g` (under `ord`), forming a Gröbner basis of
/// the syzygy module under the Schreyer order, which is returned alongside.
pub(crate) fn schreyer_syzygies(g: &[Vector], ord: &ModuleOrder, budget: &Budget) -> Result<(Vec<Vector>, ModuleOrder)> {
    let leads: Vec<(Monomial, u32)> = g.iter().map(|v| (v.lead().unwrap().mon.clone(), v.lead().unwrap().comp)).collect();
    let degs: Vec<i64> = g.iter().map(|v| v.sugar(ord)).collect();
    let next = ModuleOrder::schreyer(ord, leads.clone(), degs);
    let mut out = Vec::new();
    for i in 0..g.len() {
        let mut cands: Vec<(usize, Monomial)> = Vec::new();
        for j in i + 1..g.len() {
            if leads[j].1 == leads[i].1 {
                let l = leads[i].0.lcm(&leads[j].0);
                cands.push((j, l.div(&leads[i].0).unwrap()));
            }
        }
        for (k, (j, m)) in cands.iter().enumerate() {
            let dominated = cands
                .iter()
                .enumerate()
                .any(|(k2, (_, m2))| k2 != k && m2.divides(m) && (m2 != m || k2 < k));
            if !dominated {
                budget.check()?;
                out.push(reduce_pair(g, i, *j, m, &next, ord, budget)?);
            }
        }
    }
    Ok((out, next))
}

/// The syzygy `α m_i e_i - β m_j e_j - Σ q_k e_k` from reducing the S-pair.
fn reduce_pair(
    g: &[Vector],
    i: usize,
    j: usize,
    mi: &Monomial,
    next: &ModuleOrder,
    ord: &ModuleOrder,
    budget: &Budget,
) -> Result<Vector> {
    let (li, lj) = (g[i].lead().unwrap(), g[j].lead().unwrap());
    let mj = li.mon.mul(mi).div(&lj.mon).unwrap();
    let (alpha, beta) = cancel_pair(&li.coef, &lj.coef);
    let mut s = g[i].mul_monomial(mi);
    for t in &mut s.terms {
        t.coef *= &alpha;
    }
    s.sub_mul(&BigInt::one(), &beta, &mj, &g[j], ord);
    // S = v / c + Σ q_k g_k
    let mut c = Rational::one();
    let mut q: HashMap<(Monomial, u32), Rational> = HashMap::new();
    while let Some(t) = s.lead() {
        let Some(k) = g.iter().position(|e| {
            let l = e.lead().unwrap();
            l.comp == t.comp && l.mon.divides(&t.mon)
        }) else {
            return Err(Error::Degenerate("S-pair does not reduce to zero".into()));
        };
        let lk = g[k].lead().unwrap();
        let m = t.mon.div(&lk.mon).unwrap();
        let (a, b) = cancel_pair(&t.coef, &lk.coef);
        s.sub_mul(&a, &b, &m, &g[k], ord);
        c *= Rational::from_integer(a);
        *q.entry((m, k as u32)).or_insert_with(Rational::zero) += Rational::from_integer(b) / &c;
        let gamma = s.make_primitive();
        c /= gamma;
        budget.check()?;
    }
    let n = g[0].terms[0].mon.nvars();
    let mut terms: Vec<(Monomial, u32, Rational)> = vec![
        (mi.clone(), i as u32, Rational::from_integer(alpha)),
        (mj, j as u32, -Rational::from_integer(beta)),
    ];
    for ((m, k), r) in q {
        terms.push((m, k, -r));
    }
    let mut merged: HashMap<(Monomial, u32), Rational> = HashMap::new();
    for (m, k, r) in terms {
        *merged.entry((m, k)).or_insert_with(Rational::zero) += r;
    }
    let den = crate::arith::common_denominator(merged.values());
    let mut v = Vector {
        terms: merged
            .into_iter()
            .filter(|(_, r)| !r.is_zero())
            .map(|((mon, comp), r)| Term { mon, comp, coef: (r * Rational::from_integer(den.clone())).to_integer() })
            .collect(),
    };
    v.sort(next);
    v.make_primitive();
    debug_assert!(v.lead().map_or(false, |t| t.comp == i as u32 && t.mon == *mi && n > 0));
    Ok(v)
}

/// Rank over Q of the constant part of the map whose columns are `cols`.
fn constant_rank(cols: &[Vector], rank: usize) -> usize {
    let rows: Vec<Vec<Rational>> = cols
        .iter()
        .filter(|v| v.terms.iter().any(|t| t.mon.is_one()))
        .map(|v| {
            let mut row = vec![Rational::zero(); rank];
            for t in v.terms.iter().filter(|t| t.mon.is_one()) {
                row[t.comp as usize] = Rational::from_integer(t.coef.clone());
            }
            row
        })
        .collect();
    rational_rank(rows)
}

/// Total Betti numbers `β_1, β_2, …` of `R/I` from the Schreyer frame over a
/// homogeneous Gröbner basis `g0` of `I`.
pub(crate) fn frame_betti(g0: Vec<Vector>, ord0: &ModuleOrder, budget: &Budget) -> Result<Vec<usize>> {
    let mut levels: Vec<(Vec<Vector>, usize)> = Vec::new();
    let mut cur = g0;
    let mut ord = ord0.clone();
    let mut rank = ord0.rank();
    while !cur.is_empty() {
        let (next, next_ord) = schreyer_syzygies(&cur, &ord, budget)?;
        let n = cur.len();
        levels.push((cur, rank));
        cur = next;
        ord = next_ord;
        rank = n;
    }
    let consts: Vec<usize> = levels.iter().map(|(cols, r)| constant_rank(cols, *r)).collect();
    let mut out: Vec<usize> = (0..levels.len())
        .map(|l| levels[l].0.len() - consts[l] - consts.get(l + 1).copied().unwrap_or(0))
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use crate::arith::{parse_poly, MonomialOrder, PolyRing};
    use crate::groebner::{Budget, Ideal};

    #[test]
    fn frame_matches_minimal_resolution() {
        let r = PolyRing::with(&["a", "b", "c", "d"], &[1, 1, 1, 1], MonomialOrder::WeightedGrevlex).unwrap();
        let b = Budget::unlimited();
        for gens in [
            vec!["a*c - b^2", "b*d - c^2", "a*d - b*c"],
            vec!["a*c", "a*d", "b*c", "b*d"],
            vec!["a^2", "b^2", "c^2", "d^2", "a*b*c*d"],
            vec!["a^3 - b*c*d", "a*b - c*d", "b^2*c"],
        ] {
            let i = Ideal::new(&r, gens.iter().map(|s| parse_poly(&r, s).unwrap()).collect());
            let slow = i.minimal_resolution(&b).unwrap().betti();
            assert_eq!(i.betti(&b).unwrap(), slow, "{gens:?}");
        }
    }
}
