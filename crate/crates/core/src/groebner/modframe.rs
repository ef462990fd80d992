//! The Schreyer frame reduced modulo a word-sized prime.
//!
//! A ℚ-Gröbner basis with integer coefficients whose leading coefficients are
//! units mod p is also a Gröbner basis over ℤ₍ₚ₎, so `R/I` is the generic fibre
//! of a flat family and `β_ij(ℚ) ≤ β_ij(𝔽ₚ)` for every `i, j`. Both tables have
//! the same alternating sum in each internal degree `j`. When at most one
//! homological index carries the 𝔽ₚ-Betti numbers of each degree, the two
//! tables therefore agree and the modular frame certifies the rational one.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use smallvec::SmallVec;

use super::vector::Vector;
use super::Budget;
use crate::arith::{Monomial, MonomialOrder, RingRef};
use crate::error::{Error, Result};

const PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

/// Sort key of a term: larger keys lead. Weighted degree, then reverse
/// lexicographic on the flattened monomial, then the basis tie-break.
type Key = SmallVec<[i64; 16]>;

#[derive(Clone, Debug)]
struct ModTerm {
    key: Key,
    /// `mon` times the image of the basis element in the base ring.
    flat: Monomial,
    mon: Monomial,
    comp: u32,
    c: u64,
}

/// Basis of one free module of the frame under its induced Schreyer order.
struct Basis {
    flat: Vec<Monomial>,
    /// Position of each basis element in the tie-breaking order.
    tie: Vec<u32>,
    deg: Vec<i64>,
}

struct Frame<'a> {
    ring: &'a RingRef,
    p: u64,
}

impl Frame<'_> {
    fn key(&self, flat: &Monomial, tie: u32) -> Key {
        let mut k = Key::new();
        k.push(self.ring.wdeg(flat) as i64);
        k.extend(flat.exps().iter().rev().map(|&e| -(e as i64)));
        k.push(-(tie as i64));
        k
    }

    fn term(&self, b: &Basis, mon: Monomial, comp: u32, c: u64) -> ModTerm {
        let flat = mon.mul(&b.flat[comp as usize]);
        ModTerm { key: self.key(&flat, b.tie[comp as usize]), flat, mon, comp, c }
    }

    /// `s += c·q·g`, skipping the first `skip` terms of `g`.
    fn add_mul(&self, b: &Basis, s: &mut BTreeMap<Key, (Monomial, u32, u64)>, c: u64, q: &Monomial, g: &[ModTerm], skip: usize) {
        for t in &g[skip..] {
            let flat = t.flat.mul(q);
            let key = self.key(&flat, b.tie[t.comp as usize]);
            let add = c * t.c % self.p;
            match s.entry(key) {
                Entry::Vacant(e) => {
                    e.insert((t.mon.mul(q), t.comp, add));
                }
                Entry::Occupied(mut e) => {
                    let v = (e.get().2 + add) % self.p;
                    if v == 0 {
                        e.remove();
                    } else {
                        e.get_mut().2 = v;
                    }
                }
            }
        }
    }

    fn make_monic(&self, v: &mut [ModTerm]) {
        let inv = pow_mod(v[0].c, self.p - 2, self.p);
        for t in v {
            t.c = t.c * inv % self.p;
        }
    }

    /// Syzygies of the monic Gröbner basis `g` of a submodule of the module
    /// with basis `b`, and the basis they live in.
    fn syzygies(&self, g: &[Vec<ModTerm>], b: &Basis, budget: &Budget) -> Result<(Vec<Vec<ModTerm>>, Basis)> {
        let leads: Vec<&ModTerm> = g.iter().map(|v| &v[0]).collect();
        let mut chain: Vec<(u32, u32)> = leads.iter().enumerate().map(|(k, l)| (b.tie[l.comp as usize], k as u32)).collect();
        chain.sort_unstable();
        let mut tie = vec![0u32; g.len()];
        for (pos, &(_, k)) in chain.iter().enumerate() {
            tie[k as usize] = pos as u32;
        }
        let next = Basis {
            flat: leads.iter().map(|l| l.flat.clone()).collect(),
            tie,
            deg: leads.iter().map(|l| self.ring.wdeg(&l.flat) as i64).collect(),
        };
        let mut by_comp: HashMap<u32, Vec<usize>> = HashMap::new();
        for (k, l) in leads.iter().enumerate() {
            by_comp.entry(l.comp).or_default().push(k);
        }

        let mut out = Vec::new();
        for i in 0..g.len() {
            let cands: Vec<(usize, Monomial)> = by_comp[&leads[i].comp]
                .iter()
                .filter(|&&j| j > i)
                .map(|&j| (j, leads[i].mon.lcm(&leads[j].mon).div(&leads[i].mon).unwrap()))
                .collect();
            for (k, (j, m)) in cands.iter().enumerate() {
                let dominated = cands
                    .iter()
                    .enumerate()
                    .any(|(k2, (_, m2))| k2 != k && m2.divides(m) && (m2 != m || k2 < k));
                if dominated {
                    continue;
                }
                budget.check()?;
                let mj = leads[i].mon.mul(m).div(&leads[*j].mon).unwrap();
                let mut q: HashMap<(Monomial, u32), u64> = HashMap::new();
                q.insert((m.clone(), i as u32), 1);
                q.insert((mj.clone(), *j as u32), self.p - 1);
                let mut s = BTreeMap::new();
                self.add_mul(b, &mut s, 1, m, &g[i], 1);
                self.add_mul(b, &mut s, self.p - 1, &mj, &g[*j], 1);
                while let Some((_, (mon, comp, c))) = s.pop_last() {
                    let Some(&r) = by_comp
                        .get(&comp)
                        .and_then(|ks| ks.iter().find(|&&r| leads[r].mon.divides(&mon)))
                    else {
                        return Err(Error::Degenerate("S-pair does not reduce to zero mod p".into()));
                    };
                    let qm = mon.div(&leads[r].mon).unwrap();
                    self.add_mul(b, &mut s, self.p - c, &qm, &g[r], 1);
                    let e = q.entry((qm, r as u32)).or_insert(0);
                    *e = (*e + self.p - c) % self.p;
                }
                let mut v: Vec<ModTerm> = q
                    .into_iter()
                    .filter(|&(_, c)| c != 0)
                    .map(|((mon, comp), c)| self.term(&next, mon, comp, c))
                    .collect();
                v.sort_by(|s, t| t.key.cmp(&s.key));
                debug_assert!(v[0].comp == i as u32 && v[0].c == 1);
                out.push(v);
            }
        }
        Ok((out, next))
    }
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn residue(c: &BigInt, p: u64) -> u64 {
    let r = c % BigInt::from(p);
    let r = if r < BigInt::from(0) { r + BigInt::from(p) } else { r };
    r.to_u64().unwrap()
}

/// Rank mod p of a dense matrix.
fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][col], p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = rows[rank].clone();
        for r in rank + 1..rows.len() {
            let f = rows[r][col];
            if f != 0 {
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Ranks, per internal degree, of the constant part of a frame map.
fn constant_ranks(cols: &[Vec<ModTerm>], rows: &Basis, p: u64) -> BTreeMap<i64, usize> {
    let mut by_deg: BTreeMap<i64, Vec<Vec<u64>>> = BTreeMap::new();
    for v in cols {
        let constants: Vec<&ModTerm> = v.iter().filter(|t| t.mon.is_one()).collect();
        if let Some(t) = constants.first() {
            let mut row = vec![0; rows.flat.len()];
            for t in &constants {
                row[t.comp as usize] = t.c;
            }
            by_deg.entry(rows.deg[t.comp as usize]).or_default().push(row);
        }
    }
    by_deg.into_iter().map(|(d, m)| (d, rank_mod(m, p))).collect()
}

/// Graded Betti numbers `β_{i,j}` (i ≥ 1) of `R/I` over 𝔽ₚ, keyed by `(i, j)`.
fn graded_betti(ring: &RingRef, g0: &[Vector], p: u64, budget: &Budget) -> Result<Option<BTreeMap<(usize, i64), usize>>> {
    let f = Frame { ring, p };
    let base = Basis { flat: vec![Monomial::one(ring.nvars())], tie: vec![0], deg: vec![0] };
    let mut cur = Vec::with_capacity(g0.len());
    for v in g0 {
        if residue(&v.terms[0].coef, p) == 0 {
            return Ok(None);
        }
        let mut m: Vec<ModTerm> = v
            .terms
            .iter()
            .map(|t| f.term(&base, t.mon.clone(), t.comp, residue(&t.coef, p)))
            .filter(|t| t.c != 0)
            .collect();
        f.make_monic(&mut m);
        cur.push(m);
    }
    let mut levels: Vec<(Vec<Vec<ModTerm>>, Basis)> = Vec::new();
    let mut basis = base;
    while !cur.is_empty() {
        let (next, next_basis) = match f.syzygies(&cur, &basis, budget) {
            Ok(x) => x,
            Err(Error::BudgetExceeded) => return Err(Error::BudgetExceeded),
            Err(_) => return Ok(None),
        };
        levels.push((cur, basis));
        cur = next;
        basis = next_basis;
    }
    // levels[l] holds the columns of d_{l+1} and the basis of F_l
    let consts: Vec<BTreeMap<i64, usize>> = levels.iter().map(|(cols, rows)| constant_ranks(cols, rows, p)).collect();
    let mut betti = BTreeMap::new();
    for l in 0..levels.len() {
        let mut n: BTreeMap<i64, usize> = BTreeMap::new();
        let degs: Vec<i64> = match levels.get(l + 1) {
            Some((_, b)) => b.deg.clone(),
            None => levels[l].0.iter().map(|v| ring.wdeg(&v[0].flat) as i64).collect(),
        };
        for d in degs {
            *n.entry(d).or_default() += 1;
        }
        for (d, count) in n {
            let c = consts[l].get(&d).copied().unwrap_or(0) + consts.get(l + 1).and_then(|m| m.get(&d)).copied().unwrap_or(0);
            if count > c {
                betti.insert((l + 1, d), count - c);
            }
        }
    }
    Ok(Some(betti))
}

/// Total Betti numbers `β_1, β_2, …` of `R/I` from a homogeneous integer
/// Gröbner basis, when some prime yields a table that pins them down; `None`
/// asks for the exact computation.
pub(crate) fn certified_betti(ring: &RingRef, g0: &[Vector], budget: &Budget) -> Result<Option<Vec<usize>>> {
    if *ring.order() != MonomialOrder::WeightedGrevlex || g0.is_empty() {
        return Ok(None);
    }
    for p in PRIMES {
        let Some(table) = graded_betti(ring, g0, p, budget)? else { continue };
        if !is_pure(&table) {
            return Ok(None);
        }
        let len = table.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let mut out = vec![0; len];
        for ((i, _), b) in table {
            out[i - 1] += b;
        }
        return Ok(Some(out));
    }
    Ok(None)
}

/// Every internal degree occurs in at most one homological index.
fn is_pure(table: &BTreeMap<(usize, i64), usize>) -> bool {
    let mut seen: HashMap<i64, usize> = HashMap::new();
    table.keys().all(|&(i, j)| *seen.entry(j).or_insert(i) == i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, MonomialOrder, PolyRing};
    use crate::groebner::vector::ModuleOrder;
    use crate::groebner::Ideal;

    fn table(gens: &[&str]) -> (Option<Vec<usize>>, Vec<usize>) {
        let r = PolyRing::with(&["a", "b", "c", "d"], &[1, 1, 1, 1], MonomialOrder::WeightedGrevlex).unwrap();
        let b = Budget::unlimited();
        let i = Ideal::new(&r, gens.iter().map(|s| parse_poly(&r, s).unwrap()).collect());
        let ord = ModuleOrder::ideal(&r);
        let g0: Vec<Vector> =
            i.groebner_basis(&b).unwrap().iter().map(|p| Vector::from_polys(std::slice::from_ref(p), &ord).0).collect();
        let exact = super::super::schreyer::frame_betti(g0.clone(), &ord, &b).unwrap();
        (certified_betti(&r, &g0, &b).unwrap(), exact)
    }

    #[test]
    fn pure_tables_match_the_exact_frame() {
        for gens in [
            vec!["a*c - b^2", "b*d - c^2", "a*d - b*c"],
            vec!["a*c", "a*d", "b*c", "b*d"],
            vec!["a^2", "b^2", "c^2", "d^2"],
        ] {
            let (m, exact) = table(&gens);
            assert_eq!(m, Some(exact), "{gens:?}");
        }
    }

    #[test]
    fn mixed_tables_are_not_certified() {
        // β_{1,3} and β_{2,3} are both nonzero
        assert_eq!(table(&["a^2", "a*b", "b^3"]).0, None);
    }

    #[test]
    fn unlucky_primes_are_skipped() {
        let (m, exact) = table(&["2147483647*a*c - b^2", "b*d - c^2", "a*d - b*c"]);
        assert_eq!(m, Some(exact));
    }

    #[test]
    fn graded_table_of_the_twisted_cubic() {
        let r = PolyRing::with(&["a", "b", "c", "d"], &[1, 1, 1, 1], MonomialOrder::WeightedGrevlex).unwrap();
        let b = Budget::unlimited();
        let i = Ideal::new(
            &r,
            ["a*c - b^2", "b*d - c^2", "a*d - b*c"].iter().map(|s| parse_poly(&r, s).unwrap()).collect(),
        );
        let ord = ModuleOrder::ideal(&r);
        let g0: Vec<Vector> =
            i.groebner_basis(&b).unwrap().iter().map(|p| Vector::from_polys(std::slice::from_ref(p), &ord).0).collect();
        let t = graded_betti(&r, &g0, PRIMES[0], &b).unwrap().unwrap();
        assert_eq!(t.into_iter().collect::<Vec<_>>(), vec![((1, 2), 3), ((2, 3), 2)]);
    }

    #[test]
    fn modular_arithmetic() {
        let p = PRIMES[0];
        assert_eq!(pow_mod(3, p - 1, p), 1);
        assert_eq!(residue(&BigInt::from(-1), p), p - 1);
        assert_eq!(rank_mod(vec![vec![1, 2], vec![2, 4]], p), 1);
    }
}
