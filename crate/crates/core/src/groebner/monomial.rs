use std::cmp::Ordering;

pub type Exp = u16;

/// Exponent vector with cached total degree and a divisibility mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[Exp]>,
    degree: u32,
    mask: u64,
}

fn mask_of(exps: &[Exp]) -> u64 {
    exps.iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |m, (i, _)| m | (1u64 << (i % 64)))
}

impl Monomial {
    pub fn new(exps: Vec<Exp>) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        let mask = mask_of(&exps);
        Monomial { exps: exps.into_boxed_slice(), degree, mask }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial::new(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial::new(e)
    }

    pub fn exps(&self) -> &[Exp] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.mask & !other.mask == 0 && self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
            mask: self.mask | other.mask,
        }
    }

    /// `self / other`; the caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.mask & other.mask == 0 || self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        Monomial::new(perm.iter().map(|&i| self.exps[i]).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InnerOrder {
    GrevLex,
    Lex,
}

/// Monomial orders. Variable 0 is the largest variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
    /// Consecutive variable blocks compared lexicographically block by block,
    /// each with its own inner order. An elimination order for the leading
    /// block.
    Block(Vec<(usize, InnerOrder)>),
}

fn grevlex(a: &[Exp], b: &[Exp], da: u32, db: u32) -> Ordering {
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

fn lex(a: &[Exp], b: &[Exp]) -> Ordering {
    a.cmp(b)
}

fn deg(a: &[Exp]) -> u32 {
    a.iter().map(|&e| e as u32).sum()
}

impl MonomialOrder {
    /// Block order eliminating the first `k` of `n` variables, grevlex inside.
    pub fn elimination(k: usize, n: usize) -> Self {
        MonomialOrder::Block(vec![(k, InnerOrder::GrevLex), (n - k, InnerOrder::GrevLex)])
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => grevlex(&a.exps, &b.exps, a.degree, b.degree),
            MonomialOrder::Lex => lex(&a.exps, &b.exps),
            MonomialOrder::Block(blocks) => {
                let mut start = 0;
                for &(len, inner) in blocks {
                    let (x, y) = (&a.exps[start..start + len], &b.exps[start..start + len]);
                    let o = match inner {
                        InnerOrder::GrevLex => grevlex(x, y, deg(x), deg(y)),
                        InnerOrder::Lex => lex(x, y),
                    };
                    if o != Ordering::Equal {
                        return o;
                    }
                    start += len;
                }
                Ordering::Equal
            }
        }
    }

    /// Checks that the blocks cover exactly `nvars` variables.
    pub fn fits(&self, nvars: usize) -> bool {
        match self {
            MonomialOrder::Block(b) => b.iter().map(|(l, _)| l).sum::<usize>() == nvars,
            _ => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[Exp]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::GrevLex;
        // x*z < y^2 in grevlex with x > y > z
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[1, 1, 0]), &m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[1, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates() {
        let o = MonomialOrder::elimination(1, 3);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert!(m(&[1, 0, 2]).divides(&m(&[1, 1, 2])));
        assert!(!m(&[1, 0, 2]).divides(&m(&[0, 1, 2])));
        assert!(m(&[1, 0, 0]).coprime(&m(&[0, 3, 1])));
    }
}
