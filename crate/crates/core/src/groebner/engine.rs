//! Buchberger's algorithm over the rationals.
//!
//! Internally every polynomial is a primitive integer polynomial with a
//! positive leading coefficient; the emitted basis is monic.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder};
use super::poly::{MultiPoly, PolyRing};
use crate::arith::Rational;
use crate::error::{Error, Limit, Result};

/// Caps for one Gröbner basis computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerLimits {
    /// Total number of critical pairs formed, whether reduced or discarded
    /// by a criterion.
    pub max_spairs: usize,
    /// Largest total degree allowed for a new basis element.
    pub max_degree: u32,
}

impl Default for GroebnerLimits {
    fn default() -> Self {
        GroebnerLimits { max_spairs: 200_000, max_degree: 256 }
    }
}

type ITerm = (Monomial, BigInt);

#[derive(Clone, Debug)]
struct IPoly {
    terms: Vec<ITerm>,
    sugar: u32,
}

impl IPoly {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }
}

fn make_primitive(terms: &mut [ITerm]) {
    let mut g = BigInt::zero();
    for (_, c) in terms.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if terms.first().is_some_and(|(_, c)| c.is_negative()) {
        g = -g;
    }
    if !g.is_one() && !g.is_zero() {
        for (_, c) in terms.iter_mut() {
            *c = &*c / &g;
        }
    }
}

/// `a*x - b*q*y` for term lists sorted decreasingly.
fn combine(order: &MonomialOrder, x: &[ITerm], a: &BigInt, y: &[ITerm], b: &BigInt, q: &Monomial) -> Vec<ITerm> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    let mut yq: Option<Monomial> = y.first().map(|(m, _)| m.mul(q));
    while i < x.len() {
        let Some(ym) = yq.as_ref() else { break };
        match order.cmp(&x[i].0, ym) {
            Ordering::Greater => {
                out.push((x[i].0.clone(), a * &x[i].1));
                i += 1;
            }
            Ordering::Less => {
                out.push((yq.take().unwrap(), -(b * &y[j].1)));
                j += 1;
                yq = y.get(j).map(|(m, _)| m.mul(q));
            }
            Ordering::Equal => {
                let c = a * &x[i].1 - b * &y[j].1;
                if !c.is_zero() {
                    out.push((x[i].0.clone(), c));
                }
                i += 1;
                j += 1;
                yq = y.get(j).map(|(m, _)| m.mul(q));
            }
        }
    }
    out.extend(x[i..].iter().map(|(m, c)| (m.clone(), a * c)));
    if let Some(m) = yq {
        out.push((m, -(b * &y[j].1)));
        out.extend(y[j + 1..].iter().map(|(m, c)| (m.mul(q), -(b * c))));
    }
    out
}

struct Engine<'a> {
    order: &'a MonomialOrder,
}

impl Engine<'_> {
    fn sort(&self, terms: &mut [ITerm]) {
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
    }

    fn from_poly(&self, p: &MultiPoly) -> IPoly {
        let den = p.terms().iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut terms: Vec<ITerm> = p.terms().iter().map(|(m, c)| (m.clone(), (c * &den).to_integer())).collect();
        self.sort(&mut terms);
        make_primitive(&mut terms);
        let sugar = p.total_degree();
        IPoly { terms, sugar }
    }

    fn to_poly(&self, ring: &PolyRing, p: &IPoly) -> MultiPoly {
        let lc = Rational::from_integer(p.lc().clone());
        let terms = p.terms.iter().map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()) / &lc));
        MultiPoly::from_terms(ring, terms)
    }

    fn find_divisor<'b>(&self, m: &Monomial, basis: &[&'b IPoly]) -> Option<&'b IPoly> {
        basis.iter().find(|g| g.lm().divides(m)).copied()
    }

    /// Reduces `f` modulo `basis`; with `full` the tail is reduced as well.
    fn reduce(&self, f: IPoly, basis: &[&IPoly], full: bool) -> IPoly {
        let mut sugar = f.sugar;
        let mut done: Vec<ITerm> = Vec::new();
        let mut cur = f.terms;
        let mut pos = 0;
        let mut steps = 0u32;
        while pos < cur.len() {
            let Some(g) = self.find_divisor(&cur[pos].0, basis) else {
                if !full {
                    break;
                }
                pos += 1;
                continue;
            };
            let (m, a) = (&cur[pos].0, &cur[pos].1);
            let q = m.div(g.lm());
            sugar = sugar.max(g.sugar + q.degree());
            let d = a.gcd(g.lc());
            let fa = g.lc() / &d;
            let gb = a / &d;
            if !fa.is_one() {
                for (_, c) in done.iter_mut() {
                    *c *= &fa;
                }
            }
            done.extend(cur[..pos].iter().map(|(m, c)| (m.clone(), c * &fa)));
            cur = combine(self.order, &cur[pos + 1..], &fa, &g.terms[1..], &gb, &q);
            pos = 0;
            steps += 1;
            if steps.is_multiple_of(16) {
                let mut all: Vec<ITerm> = std::mem::take(&mut done);
                let split = all.len();
                all.append(&mut cur);
                make_primitive_keep_sign(&mut all);
                cur = all.split_off(split);
                done = all;
            }
        }
        done.append(&mut cur);
        make_primitive(&mut done);
        IPoly { terms: done, sugar }
    }

    fn spoly(&self, f: &IPoly, g: &IPoly) -> IPoly {
        let l = f.lm().lcm(g.lm());
        let qf = l.div(f.lm());
        let qg = l.div(g.lm());
        let d = f.lc().gcd(g.lc());
        let a = g.lc() / &d;
        let b = f.lc() / &d;
        // a*qf*f - b*qg*g
        let x: Vec<ITerm> = f.terms[1..].iter().map(|(m, c)| (m.mul(&qf), c.clone())).collect();
        let mut terms = combine(self.order, &x, &a, &g.terms[1..], &b, &qg);
        make_primitive(&mut terms);
        let sugar = (f.sugar + qf.degree()).max(g.sugar + qg.degree());
        IPoly { terms, sugar }
    }
}

fn make_primitive_keep_sign(terms: &mut [ITerm]) {
    let mut g = BigInt::zero();
    for (_, c) in terms.iter() {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() {
        for (_, c) in terms.iter_mut() {
            *c = &*c / &g;
        }
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Gebauer–Möller update of the pair set and the basis when `h` joins.
/// Returns the number of critical pairs formed with `h`.
fn update(polys: &[IPoly], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) -> usize {
    let hm = polys[h].lm().clone();
    let hs = polys[h].sugar;
    let mk = |g: usize| {
        let gm = polys[g].lm();
        let lcm = hm.lcm(gm);
        let sugar = (hs + lcm.degree() - hm.degree()).max(polys[g].sugar + lcm.degree() - gm.degree());
        Pair { i: g, j: h, lcm, sugar }
    };
    let c: Vec<Pair> = active.iter().map(|&g| mk(g)).collect();
    let formed = c.len();
    let coprime = |p: &Pair| polys[p.i].lm().coprime(&hm);
    // Chain criterion among the new pairs.
    let mut d: Vec<Pair> = Vec::new();
    for (k, p) in c.iter().enumerate() {
        let keep = coprime(p)
            || (!c[k + 1..].iter().any(|q| q.lcm.divides(&p.lcm)) && !d.iter().any(|q| q.lcm.divides(&p.lcm)));
        if keep {
            d.push(Pair { i: p.i, j: p.j, lcm: p.lcm.clone(), sugar: p.sugar });
        }
    }
    // Product criterion.
    let e: Vec<Pair> = d.into_iter().filter(|p| !coprime(p)).collect();
    // Chain criterion on old pairs.
    pairs.retain(|p| {
        !hm.divides(&p.lcm)
            || hm.lcm(polys[p.i].lm()) == p.lcm
            || hm.lcm(polys[p.j].lm()) == p.lcm
    });
    pairs.extend(e);
    active.retain(|&g| !hm.divides(polys[g].lm()));
    active.push(h);
    formed
}

/// Monic, inter-reduced basis under a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    ring: PolyRing,
    generators: Vec<MultiPoly>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    /// Sorted by increasing leading monomial.
    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn into_generators(self) -> Vec<MultiPoly> {
        self.generators
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        normal_form(f, self).is_zero()
    }

    /// Checks Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let engine = Engine { order: &self.order };
        let polys: Vec<IPoly> = self.generators.iter().map(|g| engine.from_poly(g)).collect();
        let refs: Vec<&IPoly> = polys.iter().collect();
        for i in 0..polys.len() {
            for j in i + 1..polys.len() {
                let s = engine.spoly(&polys[i], &polys[j]);
                if !engine.reduce(s, &refs, false).terms.is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

pub fn reduced_groebner(gens: &[MultiPoly], order: &MonomialOrder) -> Result<GroebnerBasis> {
    reduced_groebner_with(gens, order, &GroebnerLimits::default())
}

pub fn reduced_groebner_with(gens: &[MultiPoly], order: &MonomialOrder, limits: &GroebnerLimits) -> Result<GroebnerBasis> {
    let ring = match gens.first() {
        Some(g) => g.ring().clone(),
        None => return Err(Error::domain("reduced_groebner needs at least one generator to fix the ring")),
    };
    groebner_in(&ring, gens, order, limits)
}

/// Like [`reduced_groebner_with`], accepting an empty generator list.
pub fn groebner_in(ring: &PolyRing, gens: &[MultiPoly], order: &MonomialOrder, limits: &GroebnerLimits) -> Result<GroebnerBasis> {
    if !order.fits(ring.nvars()) {
        return Err(Error::domain("monomial order blocks do not cover the variables"));
    }
    if gens.iter().any(|g| g.ring() != ring) {
        return Err(Error::domain("generators live in different polynomial rings"));
    }
    let engine = Engine { order };
    let mut input: Vec<IPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| engine.from_poly(g)).collect();
    input.sort_by(|a, b| order.cmp(a.lm(), b.lm()).then(a.terms.len().cmp(&b.terms.len())));

    let mut polys: Vec<IPoly> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut formed = 0usize;
    let check = |formed: usize, basis: usize| {
        if formed > limits.max_spairs {
            Err(Error::resource(
                Limit::SPairs,
                format!("more than {} S-pairs formed (basis size {basis})", limits.max_spairs),
            ))
        } else {
            Ok(())
        }
    };

    for f in input {
        let basis: Vec<&IPoly> = active.iter().map(|&k| &polys[k]).collect();
        let h = engine.reduce(f, &basis, false);
        if h.terms.is_empty() {
            continue;
        }
        if h.lm().is_one() {
            return Ok(unit(ring, order));
        }
        polys.push(h);
        formed += update(&polys, &mut active, &mut pairs, polys.len() - 1);
        check(formed, active.len())?;
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&pairs[a], &pairs[b]);
                order.cmp(&p.lcm, &q.lcm).then(p.sugar.cmp(&q.sugar)).then((p.j, p.i).cmp(&(q.j, q.i)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        let s = engine.spoly(&polys[pair.i], &polys[pair.j]);
        let basis: Vec<&IPoly> = active.iter().map(|&k| &polys[k]).collect();
        let h = engine.reduce(s, &basis, false);
        if h.terms.is_empty() {
            continue;
        }
        if h.lm().is_one() {
            return Ok(unit(ring, order));
        }
        let deg = h.degree();
        if deg > limits.max_degree {
            return Err(Error::resource(
                Limit::Degree,
                format!("basis element of degree {deg} exceeds the cap {}", limits.max_degree),
            ));
        }
        polys.push(h);
        formed += update(&polys, &mut active, &mut pairs, polys.len() - 1);
        check(formed, active.len())?;
    }

    // Inter-reduce the minimal basis.
    let mut minimal: Vec<usize> = active;
    minimal.sort_by(|&a, &b| order.cmp(polys[a].lm(), polys[b].lm()));
    let mut reduced: Vec<IPoly> = Vec::with_capacity(minimal.len());
    for (k, &g) in minimal.iter().enumerate() {
        let others: Vec<&IPoly> = minimal.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, &o)| &polys[o]).collect();
        reduced.push(engine.reduce(polys[g].clone(), &others, true));
    }
    let generators = reduced.iter().map(|p| engine.to_poly(ring, p)).collect();
    Ok(GroebnerBasis { order: order.clone(), ring: ring.clone(), generators })
}

fn unit(ring: &PolyRing, order: &MonomialOrder) -> GroebnerBasis {
    GroebnerBasis { order: order.clone(), ring: ring.clone(), generators: vec![MultiPoly::one(ring)] }
}

/// Remainder of `f` on division by `g`, normalized to match the scale of `f`.
pub fn normal_form(f: &MultiPoly, g: &GroebnerBasis) -> MultiPoly {
    assert!(f.ring() == &g.ring, "normal_form: incompatible rings");
    division(f, &g.generators, &g.order).1
}

/// Multivariate division: returns quotients `q` and remainder `r` with
/// `f = Σ q_i·gens_i + r` and no term of `r` divisible by a leading monomial.
pub fn division(f: &MultiPoly, gens: &[MultiPoly], order: &MonomialOrder) -> (Vec<MultiPoly>, MultiPoly) {
    let ring = f.ring().clone();
    let leads: Vec<Option<(Monomial, Rational)>> = gens.iter().map(|g| g.leading(order).cloned()).collect();
    let mut quotients = vec![MultiPoly::zero(&ring); gens.len()];
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    let mut p = f.clone();
    while let Some((m, c)) = p.leading(order).cloned() {
        let hit = leads.iter().enumerate().find_map(|(k, l)| l.as_ref().filter(|(lm, _)| lm.divides(&m)).map(|l| (k, l)));
        match hit {
            Some((k, (lm, lc))) => {
                let q = m.div(lm);
                let c = &c / lc;
                quotients[k] = quotients[k].add(&MultiPoly::from_sorted_terms(&ring, vec![(q.clone(), c.clone())]));
                p = p.sub(&gens[k].mul_term(&q, &c));
            }
            None => {
                rem.push((m.clone(), c.clone()));
                p = p.sub(&MultiPoly::from_sorted_terms(&ring, vec![(m, c)]));
            }
        }
    }
    (quotients, MultiPoly::from_terms(&ring, rem))
}

/// Generators of the elimination ideal `⟨gens⟩ ∩ F[remaining variables]`,
/// returned as the reduced grevlex basis in the ring of remaining variables.
pub fn eliminate(gens: &[MultiPoly], drop: &[usize], limits: &GroebnerLimits) -> Result<Vec<MultiPoly>> {
    let ring = match gens.first() {
        Some(g) => g.ring().clone(),
        None => return Err(Error::domain("eliminate needs at least one generator")),
    };
    let n = ring.nvars();
    if drop.iter().any(|&v| v >= n) {
        return Err(Error::domain("eliminated variable outside the ring"));
    }
    let is_dropped = |v: usize| drop.contains(&v);
    let keep: Vec<usize> = (0..n).filter(|&v| !is_dropped(v)).collect();
    let out_ring = PolyRing::new(keep.iter().map(|&v| ring.name(v).to_string()));

    let mut work: Vec<MultiPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    substitute_linear(&mut work, drop);
    if work.iter().any(|g| g.is_constant()) {
        return Ok(vec![MultiPoly::one(&out_ring)]);
    }

    let live: Vec<usize> = drop.iter().copied().filter(|&v| work.iter().any(|g| g.uses_var(v))).collect();
    let mut sub_names: Vec<String> = live.iter().map(|&v| ring.name(v).to_string()).collect();
    sub_names.extend(keep.iter().map(|&v| ring.name(v).to_string()));
    let sub_ring = PolyRing::new(sub_names);
    let mut sub_map = vec![None; n];
    for (k, &v) in live.iter().chain(keep.iter()).enumerate() {
        sub_map[v] = Some(k);
    }
    let sub_gens: Vec<MultiPoly> = work.iter().map(|g| g.rename(&sub_ring, &sub_map)).collect();
    let order = if live.is_empty() { MonomialOrder::GrevLex } else { MonomialOrder::elimination(live.len(), sub_ring.nvars()) };
    let gb = groebner_in(&sub_ring, &sub_gens, &order, limits)?;

    let back: Vec<Option<usize>> = (0..sub_ring.nvars()).map(|k| k.checked_sub(live.len())).collect();
    let mut result: Vec<MultiPoly> = gb
        .generators
        .iter()
        .filter(|g| live.iter().enumerate().all(|(k, _)| !g.uses_var(k)))
        .map(|g| g.rename(&out_ring, &back))
        .collect();
    result.sort_by(|a, b| {
        let (la, lb) = (a.leading(&MonomialOrder::GrevLex), b.leading(&MonomialOrder::GrevLex));
        MonomialOrder::GrevLex.cmp(&la.unwrap().0, &lb.unwrap().0)
    });
    Ok(result)
}

/// Repeatedly removes an eliminated variable `w` occurring in a generator
/// `c·w + r` with `r` free of `w`, substituting `w = -r/c` everywhere.
fn substitute_linear(work: &mut Vec<MultiPoly>, drop: &[usize]) {
    loop {
        let mut best: Option<(usize, usize, usize, u32)> = None;
        for (gi, g) in work.iter().enumerate() {
            for &w in drop {
                let hits: Vec<_> = g.terms().iter().filter(|(m, _)| m.exps()[w] > 0).collect();
                if hits.len() != 1 || hits[0].0.degree() != 1 {
                    continue;
                }
                let key = (g.terms().len(), g.total_degree());
                if best.is_none_or(|(_, _, len, deg)| key < (len, deg)) {
                    best = Some((gi, w, key.0, key.1));
                }
            }
        }
        let Some((gi, w, _, _)) = best else { return };
        let g = work.swap_remove(gi);
        let c = g.terms().iter().find(|(m, _)| m.exps()[w] > 0).unwrap().1.clone();
        let wpoly = g.ring().var(w);
        let image = g.sub(&wpoly.scale(&c)).scale(&(-c.recip()));
        for p in work.iter_mut() {
            *p = p.substitute(w, &image);
        }
        work.retain(|p| !p.is_zero());
    }
}

/// Whether two generator lists span the same ideal.
pub fn ideal_equal(a: &[MultiPoly], b: &[MultiPoly], limits: &GroebnerLimits) -> Result<bool> {
    let ring = match (a.first(), b.first()) {
        (Some(p), _) | (None, Some(p)) => p.ring().clone(),
        (None, None) => return Ok(true),
    };
    let ga = groebner_in(&ring, a, &MonomialOrder::GrevLex, limits)?;
    let gb = groebner_in(&ring, b, &MonomialOrder::GrevLex, limits)?;
    Ok(ga.generators == gb.generators)
}
