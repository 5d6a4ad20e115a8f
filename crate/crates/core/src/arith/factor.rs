//! Factorization of rational univariate polynomials: square-free split,
//! modular factorization, Hensel lifting and naive factor recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;

use super::field::{primitive_integer_vector, Rational, Rationals};
use super::modp::{Zp, Zpoly};
use super::poly::UniPoly;

const PRIME_CANDIDATES: usize = 6;

/// Monic irreducible factors with multiplicities, in canonical order.
pub fn factor_rational(f: &UniPoly<Rational>) -> Vec<(UniPoly<Rational>, u32)> {
    let q = &Rationals;
    let mut out = Vec::new();
    for (g, mult) in f.squarefree_decomposition(q) {
        for h in factor_squarefree(&g) {
            out.push((h, mult));
        }
    }
    out.sort_by(|a, b| a.0.cmp_canonical(&b.0, q).then(a.1.cmp(&b.1)));
    out
}

/// Irreducible monic factors of a square-free polynomial.
pub(crate) fn factor_squarefree(f: &UniPoly<Rational>) -> Vec<UniPoly<Rational>> {
    let q = &Rationals;
    let deg = match f.degree() {
        None | Some(0) => return Vec::new(),
        Some(d) => d,
    };
    if deg == 1 {
        return vec![f.monic(q)];
    }
    let mut out = Vec::new();
    let mut ints: Vec<BigInt> = primitive_integer_vector(f.coeffs());
    // strip factors of x first so the constant term is nonzero
    if ints[0].is_zero() {
        out.push(UniPoly::from_ints(&[0, 1]));
        ints.remove(0);
    }
    if ints.len() > 2 {
        for g in zassenhaus(&ints) {
            out.push(to_monic_rational(&g));
        }
    } else if ints.len() == 2 {
        out.push(to_monic_rational(&ints));
    }
    out
}

fn to_monic_rational(g: &[BigInt]) -> UniPoly<Rational> {
    let q = &Rationals;
    UniPoly::new(q, g.iter().map(|c| Rational::from_integer(c.clone())).collect()).monic(q)
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn reduce_poly(zp: &Zp, f: &[BigInt]) -> Zpoly {
    let p = BigInt::from(zp.p);
    zp.trim(f.iter().map(|c| c.mod_floor(&p).to_u64().unwrap()).collect())
}

/// Factors a primitive square-free integer polynomial of degree >= 2 with
/// nonzero constant term.
fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    let lc = f[n].clone();

    // pick the admissible prime with the fewest modular factors
    let mut best: Option<(Zp, Vec<Zpoly>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if tried >= PRIME_CANDIDATES {
            break;
        }
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let zp = Zp::new(p);
        let fp = reduce_poly(&zp, f);
        if zp.gcd(&fp, &zp.derivative(&fp)).len() != 1 {
            continue;
        }
        tried += 1;
        let fm = zp.monic(&fp);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(p);
        let mut facs = Vec::new();
        for (g, d) in zp.distinct_degree(&fm) {
            zp.equal_degree(&g, d, &mut rng, &mut facs);
        }
        if facs.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((zp, facs));
        }
    }
    let (zp, mut facs) = best.expect("no admissible prime");
    facs.sort();

    // Mignotte-style bound on the coefficients of lc * (monic factor)
    let norm1: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm1;
    let p = BigInt::from(zp.p);
    let mut modulus = p.clone();
    let mut m = 1u32;
    while modulus <= bound {
        modulus *= &p;
        m += 1;
    }

    let lc_inv = mod_inverse(&lc, &modulus);
    let target: Vec<BigInt> = f.iter().map(|c| (c * &lc_inv).mod_floor(&modulus)).collect();
    let lifted = multi_lift(&zp, &target, &facs, m);
    recombine(f, lifted, &modulus)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn int_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out.iter().map(|c| c.mod_floor(m)).collect()
}

fn to_int(a: &Zpoly) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts monic factors of `target mod p` to monic factors modulo `p^m`.
fn multi_lift(zp: &Zp, target: &[BigInt], facs: &[Zpoly], m: u32) -> Vec<Vec<BigInt>> {
    let modulus = BigInt::from(zp.p).pow(m);
    if facs.len() == 1 {
        return vec![target.to_vec()];
    }
    let (left, right) = facs.split_at(facs.len() / 2);
    let prod = |fs: &[Zpoly]| fs.iter().fold(vec![1u64], |acc, g| zp.mul(&acc, g));
    let (g, h) = hensel_two(zp, target, &prod(left), &prod(right), m);
    let mut out = multi_lift(zp, &g, left, m);
    out.extend(multi_lift(zp, &h, right, m));
    debug_assert!(out.iter().all(|g| g.last().is_some_and(|c| c.is_one())));
    let _ = modulus;
    out
}

/// Linear Hensel lifting of `target = g0 * h0 (mod p)` to modulus `p^m`.
fn hensel_two(zp: &Zp, target: &[BigInt], g0: &Zpoly, h0: &Zpoly, m: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let p = BigInt::from(zp.p);
    let (_, s, t) = zp.ext_gcd(g0, h0);
    let mut g = to_int(g0);
    let mut h = to_int(h0);
    let mut pk = p.clone();
    for _ in 1..m {
        let next = &pk * &p;
        let gh = int_mul(&g, &h, &next);
        let mut e = Vec::with_capacity(target.len());
        for i in 0..target.len() {
            let d = (&target[i] - gh.get(i).cloned().unwrap_or_default()).mod_floor(&next);
            debug_assert!((&d % &pk).is_zero());
            e.push((d / &pk).mod_floor(&p).to_u64().unwrap());
        }
        let e = zp.trim(e);
        let b = zp.rem(&zp.mul(&e, &t), g0);
        let a = zp.rem(&zp.mul(&e, &s), h0);
        for (i, c) in b.iter().enumerate() {
            g[i] = (&g[i] + &pk * BigInt::from(*c)).mod_floor(&next);
        }
        for (i, c) in a.iter().enumerate() {
            h[i] = (&h[i] + &pk * BigInt::from(*c)).mod_floor(&next);
        }
        pk = next;
    }
    (g, h)
}

fn symmetric(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, a| g.gcd(a));
    let sign = if v.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    v.into_iter().map(|c| c / &g * &sign).collect()
}

/// Exact division over the integers, `None` if `b` does not divide `a`.
fn int_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    if a.len() <= db {
        return None;
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(&b[db]);
        if !rem.is_zero() {
            return None;
        }
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        q[k] = c;
    }
    r.iter().all(|c| c.is_zero()).then_some(q)
}

fn recombine(f: &[BigInt], mut lifted: Vec<Vec<BigInt>>, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    let mut rest = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let lc = rest.last().unwrap().clone();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            // cheap constant-term test before the full product
            let c0 = idx.iter().fold(lc.clone(), |acc, &i| (acc * &lifted[i][0]).mod_floor(modulus));
            let c0 = symmetric(&c0, modulus);
            if !c0.is_zero() && (&rest[0] % &c0).is_zero() {
                let mut cand = vec![lc.clone()];
                for &i in &idx {
                    cand = int_mul(&cand, &lifted[i], modulus);
                }
                let cand = primitive(cand.iter().map(|c| symmetric(c, modulus)).collect());
                if let Some(q) = int_div(&rest, &cand) {
                    rest = q;
                    out.push(cand);
                    for &i in idx.iter().rev() {
                        lifted.remove(i);
                    }
                    continue 'outer;
                }
            }
            if !next_combination(&mut idx, lifted.len()) {
                break;
            }
        }
        size += 1;
    }
    if rest.len() > 1 {
        out.push(primitive(rest));
    }
    out
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
