//! Buchberger's algorithm over ℚ for submodules of graded free modules.
//!
//! Pairs are processed by sugar degree (the true degree for homogeneous input)
//! with Gebauer–Möller pruning. Inputs are fed in by degree after the pairs of
//! that degree, which makes the surviving inputs a minimal generating set when
//! the input is homogeneous.

use num_bigint::BigInt;
use std::cmp::Ordering;

use super::vector::{cancel_pair, ModuleOrder, Vector};
use super::Budget;
use crate::arith::{Monomial, Rational};
use crate::error::Result;

pub(crate) struct GbOutput {
    /// Reduced basis (when requested), sorted by increasing leading term.
    pub basis: Vec<Vector>,
    /// Indices of the inputs that survived reduction against everything of
    /// lower degree; a minimal generating set for homogeneous input.
    pub minimal: Vec<usize>,
}

struct Elem {
    v: Vector,
    lm: Monomial,
    comp: u32,
    lc: BigInt,
    sugar: i64,
    redundant: bool,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    sugar: i64,
}

fn find_reducer<'a>(g: &'a [Elem], mon: &Monomial, comp: u32, skip: Option<usize>) -> Option<&'a Elem> {
    g.iter()
        .enumerate()
        .find(|(k, e)| !e.redundant && Some(*k) != skip && e.comp == comp && e.lm.divides(mon))
        .map(|(_, e)| e)
}

fn head_reduce(v: &mut Vector, g: &[Elem], ord: &ModuleOrder, budget: &Budget) -> Result<()> {
    while let Some(t) = v.lead() {
        let Some(e) = find_reducer(g, &t.mon, t.comp, None) else {
            break;
        };
        let m = t.mon.div(&e.lm).unwrap();
        let (alpha, beta) = cancel_pair(&t.coef, &e.lc);
        v.sub_mul(&alpha, &beta, &m, &e.v, ord);
        v.make_primitive();
        budget.check()?;
    }
    Ok(())
}

/// Reduce every term of `v` (except through element `skip`); returns `c` with
/// `v_before ≡ c * v_after` modulo the basis.
fn full_reduce(v: &mut Vector, g: &[Elem], skip: Option<usize>, ord: &ModuleOrder, budget: &Budget) -> Result<Rational> {
    let mut c = Rational::from_integer(1.into());
    let mut i = 0;
    while i < v.terms.len() {
        let t = &v.terms[i];
        match find_reducer(g, &t.mon, t.comp, skip) {
            None => i += 1,
            Some(e) => {
                let m = t.mon.div(&e.lm).unwrap();
                let (alpha, beta) = cancel_pair(&t.coef, &e.lc);
                v.sub_mul(&alpha, &beta, &m, &e.v, ord);
                c /= Rational::from_integer(alpha);
                c *= v.make_primitive();
                budget.check()?;
            }
        }
    }
    Ok(c)
}

fn make_elem(v: Vector, sugar: i64) -> Elem {
    let t = v.lead().unwrap();
    Elem { lm: t.mon.clone(), comp: t.comp, lc: t.coef.clone(), v, sugar, redundant: false }
}

fn spoly(a: &Elem, b: &Elem, lcm: &Monomial, ord: &ModuleOrder) -> Vector {
    let ma = lcm.div(&a.lm).unwrap();
    let mb = lcm.div(&b.lm).unwrap();
    let (alpha, beta) = cancel_pair(&a.lc, &b.lc);
    let mut s = a.v.mul_monomial(&ma);
    s.sub_mul(&alpha, &beta, &mb, &b.v, ord);
    s.make_primitive();
    s
}

/// Gebauer–Möller update after appending element `h` to `g`.
fn update(g: &mut [Elem], pairs: &mut Vec<Pair>, h: usize, ord: &ModuleOrder) {
    let rank_one = ord.rank() == 1;
    let (hm, hc) = (g[h].lm.clone(), g[h].comp);
    let cand: Vec<(usize, Monomial)> = (0..h)
        .filter(|&k| !g[k].redundant && g[k].comp == hc)
        .map(|k| (k, hm.lcm(&g[k].lm)))
        .collect();
    let coprime = |k: usize| rank_one && hm.is_coprime(&g[k].lm);

    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    for (idx, (k, l)) in cand.iter().enumerate() {
        if coprime(*k)
            || !(cand[idx + 1..].iter().any(|(_, l2)| l2.divides(l))
                || kept.iter().any(|(_, l2)| l2.divides(l)))
        {
            kept.push((*k, l.clone()));
        }
    }

    pairs.retain(|p| {
        !(p.comp == hc
            && hm.divides(&p.lcm)
            && hm.lcm(&g[p.i].lm) != p.lcm
            && hm.lcm(&g[p.j].lm) != p.lcm)
    });

    for (k, l) in kept {
        if coprime(k) {
            continue;
        }
        let sk = g[k].sugar + ord.ring.wdeg(&l.div(&g[k].lm).unwrap()) as i64;
        let sh = g[h].sugar + ord.ring.wdeg(&l.div(&hm).unwrap()) as i64;
        pairs.push(Pair { i: k, j: h, lcm: l, comp: hc, sugar: sk.max(sh) });
    }

    for e in g[..h].iter_mut() {
        if !e.redundant && e.comp == hc && hm.divides(&e.lm) {
            e.redundant = true;
        }
    }
}

fn pair_cmp(a: &Pair, b: &Pair, ord: &ModuleOrder) -> Ordering {
    a.sugar
        .cmp(&b.sugar)
        .then_with(|| ord.cmp((&a.lcm, a.comp), (&b.lcm, b.comp)))
        .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
}

pub(crate) fn groebner(inputs: &[Vector], ord: &ModuleOrder, budget: &Budget, reduce: bool) -> Result<GbOutput> {
    let mut queue: Vec<(usize, &Vector, i64)> = inputs
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| (k, v, v.sugar(ord)))
        .collect();
    queue.sort_by(|a, b| {
        a.2.cmp(&b.2)
            .then_with(|| {
                let (x, y) = (a.1.lead().unwrap(), b.1.lead().unwrap());
                ord.cmp((&x.mon, x.comp), (&y.mon, y.comp))
            })
            .then_with(|| a.0.cmp(&b.0))
    });
    let mut queue = queue.into_iter().peekable();

    let mut g: Vec<Elem> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut minimal = Vec::new();

    loop {
        budget.check()?;
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|a, b| pair_cmp(a.1, b.1, ord))
            .map(|(k, p)| (k, p.sugar));
        let next_input = queue.peek().map(|q| q.2);
        let take_pair = match (best, next_input) {
            (Some((_, ps)), Some(is)) => ps <= is,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => break,
        };
        if take_pair {
            let p = pairs.swap_remove(best.unwrap().0);
            let mut s = spoly(&g[p.i], &g[p.j], &p.lcm, ord);
            head_reduce(&mut s, &g, ord, budget)?;
            if !s.is_zero() {
                let sugar = p.sugar.max(s.sugar(ord));
                g.push(make_elem(s, sugar));
                let h = g.len() - 1;
                update(&mut g, &mut pairs, h, ord);
            }
        } else {
            let (idx, v, sugar) = queue.next().unwrap();
            let mut v = v.clone();
            v.make_primitive();
            head_reduce(&mut v, &g, ord, budget)?;
            if !v.is_zero() {
                minimal.push(idx);
                g.push(make_elem(v, sugar));
                let h = g.len() - 1;
                update(&mut g, &mut pairs, h, ord);
            }
        }
    }

    let mut keep: Vec<Elem> = g.into_iter().filter(|e| !e.redundant).collect();
    if reduce {
        for k in 0..keep.len() {
            let mut v = std::mem::take(&mut keep[k].v);
            full_reduce(&mut v, &keep, Some(k), ord, budget)?;
            keep[k].lc = v.lead().unwrap().coef.clone();
            keep[k].v = v;
        }
    }
    let mut basis: Vec<Vector> = keep.into_iter().map(|e| e.v).collect();
    basis.sort_by(|a, b| {
        let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
        ord.cmp((&x.mon, x.comp), (&y.mon, y.comp))
    });
    minimal.sort_unstable();
    Ok(GbOutput { basis, minimal })
}

/// Normal form of `v` modulo a Gröbner basis; returns `(remainder, c)` with
/// `v ≡ c * remainder`.
pub(crate) fn normal_form(v: &Vector, basis: &[Vector], ord: &ModuleOrder, budget: &Budget) -> Result<(Vector, Rational)> {
    let g: Vec<Elem> = basis.iter().map(|b| make_elem(b.clone(), 0)).collect();
    let mut v = v.clone();
    let c0 = v.make_primitive();
    let c = full_reduce(&mut v, &g, None, ord, budget)?;
    Ok((v, c0 * c))
}
