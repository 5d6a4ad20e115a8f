//! Dense polynomial arithmetic over a small prime field, enough for
//! distinct-degree and equal-degree factorization.

use num_bigint::BigUint;
use rand::Rng;

pub(crate) type Zpoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Zp {
    pub p: u64,
}

impl Zp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < (1 << 31));
        Zp { p }
    }


    fn mul_s(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn inv_s(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p));
        self.pow_s(a, self.p - 2)
    }

    fn pow_s(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_s(acc, a);
            }
            a = self.mul_s(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn trim(&self, mut a: Zpoly) -> Zpoly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Zpoly {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + self.p - y) % self.p
            })
            .collect();
        self.trim(v)
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Zpoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        self.trim(out)
    }

    pub fn div_rem(&self, a: &[u64], b: &[u64]) -> (Zpoly, Zpoly) {
        assert!(!b.is_empty());
        let db = b.len() - 1;
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), self.trim(r));
        }
        let li = self.inv_s(b[db]);
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mul_s(r[k + db], li);
            if c == 0 {
                continue;
            }
            for (i, &bi) in b.iter().enumerate() {
                r[k + i] = (r[k + i] + self.p - self.mul_s(c, bi)) % self.p;
            }
            q[k] = c;
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> Zpoly {
        self.div_rem(a, b).1
    }

    pub fn monic(&self, a: &[u64]) -> Zpoly {
        match a.last() {
            None => Vec::new(),
            Some(&l) => {
                let li = self.inv_s(l);
                a.iter().map(|&c| self.mul_s(c, li)).collect()
            }
        }
    }

    pub fn gcd(&self, a: &[u64], b: &[u64]) -> Zpoly {
        let (mut a, mut b) = (self.trim(a.to_vec()), self.trim(b.to_vec()));
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s*a + t*b = g` monic.
    pub fn ext_gcd(&self, a: &[u64], b: &[u64]) -> (Zpoly, Zpoly, Zpoly) {
        let (mut r0, mut r1) = (self.trim(a.to_vec()), self.trim(b.to_vec()));
        let (mut s0, mut s1): (Zpoly, Zpoly) = (vec![1], vec![]);
        let (mut t0, mut t1): (Zpoly, Zpoly) = (vec![], vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let li = self.inv_s(*r0.last().unwrap());
        let sc = |v: &Zpoly| v.iter().map(|&c| self.mul_s(c, li)).collect::<Zpoly>();
        (sc(&r0), sc(&s0), sc(&t0))
    }

    pub fn derivative(&self, a: &[u64]) -> Zpoly {
        let v = a.iter().enumerate().skip(1).map(|(i, &c)| self.mul_s(c, i as u64 % self.p)).collect();
        self.trim(v)
    }

    fn pow_mod(&self, base: &[u64], e: &BigUint, modulus: &[u64]) -> Zpoly {
        let mut acc: Zpoly = vec![1];
        let b = self.rem(base, modulus);
        for i in (0..e.bits()).rev() {
            acc = self.rem(&self.mul(&acc, &acc), modulus);
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &b), modulus);
            }
        }
        acc
    }

    /// Distinct-degree factorization of a monic square-free polynomial.
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(Zpoly, usize)> {
        let mut out = Vec::new();
        let mut f = f.to_vec();
        let x: Zpoly = vec![0, 1];
        let mut h = x.clone();
        let p = BigUint::from(self.p);
        let mut i = 0;
        while 2 * (i + 1) < f.len() {
            i += 1;
            h = self.pow_mod(&h, &p, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if g.len() > 1 {
                f = self.div_rem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, i));
            }
        }
        if f.len() > 1 {
            let d = f.len() - 1;
            out.push((self.monic(&f), d));
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a product of distinct monic
    /// irreducibles of degree `d`; `p` must be odd.
    pub fn equal_degree<R: Rng>(&self, g: &[u64], d: usize, rng: &mut R, out: &mut Vec<Zpoly>) {
        let n = g.len() - 1;
        if n == d {
            out.push(g.to_vec());
            return;
        }
        let e = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: Zpoly = self.trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let b = self.sub(&self.pow_mod(&a, &e, g), &[1]);
            let h = self.gcd(&b, g);
            if h.len() > 1 && h.len() < g.len() {
                let q = self.div_rem(g, &h).0;
                self.equal_degree(&h, d, rng, out);
                self.equal_degree(&self.monic(&q), d, rng, out);
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factors_mod_seven() {
        let z = Zp::new(7);
        // (x+1)(x+2)(x^2+1) mod 7; x^2+1 irreducible since 7 = 3 mod 4
        let f = z.mul(&z.mul(&[1, 1], &[2, 1]), &[1, 0, 1]);
        let dd = z.distinct_degree(&f);
        assert_eq!(dd.len(), 2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let mut lin = Vec::new();
        z.equal_degree(&dd[0].0, 1, &mut rng, &mut lin);
        lin.sort();
        assert_eq!(lin, vec![vec![1, 1], vec![2, 1]]);
        assert_eq!(dd[1], (vec![1, 0, 1], 2));
    }
}
