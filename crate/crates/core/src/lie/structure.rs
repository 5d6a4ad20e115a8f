use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::{LieAlgebra, MatrixSpace};
use crate::arith::{rat, Rational};
use crate::error::{Error, Result};
use crate::linalg::{is_nilpotent, is_semisimple, jordan_decomposition, kernel, Coordinates, MatrixQ};

fn combos_to_space(l: &LieAlgebra, combos: &[Vec<Rational>]) -> MatrixSpace {
    let mats: Vec<MatrixQ> = combos.iter().map(|c| l.element(c)).collect();
    MatrixSpace::span(l.n(), &mats)
}

/// The maximal solvable ideal: the trace-form orthogonal of `[L, L]`.
pub fn solvable_radical(l: &LieAlgebra) -> MatrixSpace {
    let derived = l.derived().basis();
    if derived.is_empty() {
        return l.space();
    }
    let rows: Vec<Vec<Rational>> = derived.iter().map(|y| l.basis().iter().map(|b| (b * y).trace()).collect()).collect();
    let m = MatrixQ::from_rows(rows);
    let s = combos_to_space(l, &kernel(&m));
    debug_assert!(LieAlgebra::from_space(&s).map(|a| a.is_solvable()).unwrap_or(false));
    s
}

/// `{x in L : [x, a] = 0 for all a in A}`.
pub fn centralizer(l: &LieAlgebra, a: &MatrixSpace) -> MatrixSpace {
    let ab = a.basis();
    if ab.is_empty() || l.dimension() == 0 {
        return l.space();
    }
    let n2 = l.n() * l.n();
    let brackets: Vec<Vec<MatrixQ>> = l.basis().iter().map(|b| ab.iter().map(|x| b.bracket(x)).collect()).collect();
    let rows: Vec<Vec<Rational>> = (0..ab.len())
        .flat_map(|k| (0..n2).map(move |p| (k, p)))
        .map(|(k, p)| brackets.iter().map(|bs| bs[k].flat()[p].clone()).collect())
        .collect();
    combos_to_space(l, &kernel(&MatrixQ::from_rows(rows)))
}

/// Limit of the descending chain `[H, S] ⊇ [H, [H, S]] ⊇ ...`.
pub fn fitting_one(s: &LieAlgebra, h: &MatrixSpace) -> MatrixSpace {
    let mut cur = s.space();
    loop {
        let next = h.bracket(&cur);
        if next.dimension() == cur.dimension() {
            return next;
        }
        cur = next;
    }
}

/// Generalized null space of `ad x` on `L`.
fn fitting_null(l: &LieAlgebra, x: &[Rational]) -> MatrixSpace {
    let d = l.dimension();
    let a = l.ad(x).pow(d as u32);
    combos_to_space(l, &kernel(&a))
}

fn ad_nilpotent(l: &LieAlgebra, x: &[Rational]) -> bool {
    is_nilpotent(&l.ad(x))
}

/// Coordinates of an element whose adjoint is not nilpotent, if one is found.
fn non_nilpotent_element(l: &LieAlgebra, rng: &mut ChaCha8Rng) -> Option<Vec<Rational>> {
    let d = l.dimension();
    let unit = |i: usize| (0..d).map(|k| rat((k == i) as i64)).collect::<Vec<_>>();
    for i in 0..d {
        let x = unit(i);
        if !ad_nilpotent(l, &x) {
            return Some(x);
        }
    }
    for i in 0..d {
        for j in i + 1..d {
            let x: Vec<Rational> = (0..d).map(|k| rat((k == i || k == j) as i64)).collect();
            if !ad_nilpotent(l, &x) {
                return Some(x);
            }
        }
    }
    let mut range = 3i64;
    for _ in 0..8 {
        for _ in 0..8 {
            let x: Vec<Rational> = (0..d).map(|_| rat(rng.gen_range(-range..=range))).collect();
            if !ad_nilpotent(l, &x) {
                return Some(x);
            }
        }
        range *= 4;
    }
    None
}

/// A nilpotent self-normalizing subalgebra, found by shrinking Fitting
/// null components of non-nilpotent elements.
pub fn cartan_subalgebra(l: &LieAlgebra) -> Result<MatrixSpace> {
    if l.is_nilpotent() {
        return Ok(l.space());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let fail = || Error::domain("no non-nilpotent element found in a non-nilpotent algebra");
    let mut x = non_nilpotent_element(l, &mut rng).ok_or_else(fail)?;
    loop {
        let k_space = fitting_null(l, &x);
        let k = LieAlgebra::from_space(&k_space)?;
        if k.is_nilpotent() {
            return Ok(k_space);
        }
        let ym = k.element(&non_nilpotent_element(&k, &mut rng).ok_or_else(fail)?);
        let xm = l.element(&x);
        let diff = &ym - &xm;
        let mut next = None;
        for c in 1..=(2 * l.dimension() as i64 + 2) {
            let z = &xm + &diff.scale(&rat(c));
            let zc = l.coords(&z).expect("element of the algebra");
            if fitting_null(l, &zc).dimension() < k_space.dimension() {
                next = Some(zc);
                break;
            }
        }
        x = next.ok_or_else(|| Error::domain("Cartan subalgebra iteration failed to shrink"))?;
    }
}

/// A Levi subalgebra, lifted from a complement of the radical through the
/// derived series of the radical.
pub fn levi_subalgebra(l: &LieAlgebra) -> Result<MatrixSpace> {
    let n = l.n();
    let r = solvable_radical(l);
    if r.is_zero() {
        return Ok(l.space());
    }
    if r.dimension() == l.dimension() {
        return Ok(MatrixSpace::zero(n));
    }
    let mut acc = r.clone();
    let mut x: Vec<MatrixQ> = Vec::new();
    for b in l.basis() {
        if !acc.contains(b) {
            acc = acc.sum(&MatrixSpace::span(n, std::slice::from_ref(b)));
            x.push(b.clone());
        }
    }
    let m = x.len();
    let mut full: Vec<Vec<Rational>> = x.iter().map(|b| b.flat().to_vec()).collect();
    full.extend(r.basis().iter().map(|b| b.flat().to_vec()));
    let co = Coordinates::new(&full);
    let consts: Vec<Vec<Vec<Rational>>> = (0..m)
        .map(|a| (0..m).map(|b| co.coords(x[a].bracket(&x[b]).flat()).expect("bracket inside L")[..m].to_vec()).collect())
        .collect();

    let mut series = vec![r.clone()];
    loop {
        let last = series.last().unwrap();
        let next = last.bracket(last);
        if next.dimension() == last.dimension() {
            return Err(Error::domain("radical is not solvable"));
        }
        let done = next.is_zero();
        series.push(next);
        if done {
            break;
        }
    }

    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect();
    let mut y = x;
    for w in series.windows(2) {
        let (ri, rnext) = (&w[0], &w[1]);
        let residual = |y: &[MatrixQ], a: usize, b: usize| {
            let mut g = y[a].bracket(&y[b]);
            for (c, yc) in y.iter().enumerate() {
                if !consts[a][b][c].is_zero() {
                    g = &g - &yc.scale(&consts[a][b][c]);
                }
            }
            rnext.reduce(&g)
        };
        let rhs: Vec<Rational> = pairs.iter().flat_map(|&(a, b)| residual(&y, a, b)).map(|v| -v).collect();
        if rhs.iter().all(Zero::is_zero) {
            continue;
        }
        let zb = ri.basis();
        let dz = zb.len();
        let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(m * dz);
        for c in 0..m {
            for z in &zb {
                let col: Vec<Rational> = pairs
                    .iter()
                    .flat_map(|&(a, b)| {
                        let mut t = z.scale(&-consts[a][b][c].clone());
                        if c == b {
                            t = &t + &y[a].bracket(z);
                        }
                        if c == a {
                            t = &t + &z.bracket(&y[b]);
                        }
                        rnext.reduce(&t)
                    })
                    .collect();
                columns.push(col);
            }
        }
        let mat = MatrixQ::from_fn(rhs.len(), columns.len(), |i, j| columns[j][i].clone());
        let sol = crate::linalg::matrix::solve(&mat, &rhs).ok_or_else(|| Error::domain("Levi lifting system is inconsistent"))?;
        for c in 0..m {
            for (k, z) in zb.iter().enumerate() {
                let coef = &sol[c * dz + k];
                if !coef.is_zero() {
                    y[c] = &y[c] + &z.scale(coef);
                }
            }
        }
    }
    Ok(MatrixSpace::span(n, &y))
}

/// `g = l ⊕ d ⊕ n` with `l` a Levi subalgebra, `d` a toral subalgebra
/// centralizing `l`, and `n` the ideal of nilpotent elements of the radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductiveSplit {
    pub l: MatrixSpace,
    pub d: MatrixSpace,
    pub n: MatrixSpace,
}

impl ReductiveSplit {
    /// Checks every structural property of the split against `g`.
    pub fn verify(&self, g: &LieAlgebra) -> Result<()> {
        let fail = |what: &str| Err(Error::NotAlgebraic(format!("decomposition property fails: {what}")));
        if !self.l.bracket(&self.d).is_zero() {
            return fail("[l, d] = 0");
        }
        if !self.d.bracket(&self.d).is_zero() {
            return fail("d abelian");
        }
        if !self.d.basis().iter().all(is_semisimple) {
            return fail("d consists of semisimple elements");
        }
        if !self.n.basis().iter().all(is_nilpotent) {
            return fail("n consists of nilpotent elements");
        }
        if !self.n.contains_space(&g.space().bracket(&self.n)) {
            return fail("n is an ideal");
        }
        let total = self.l.sum(&self.d).sum(&self.n);
        if self.l.dimension() + self.d.dimension() + self.n.dimension() != g.dimension() || total != g.space() {
            return fail("g = l + d + n as vector spaces");
        }
        if self.d.sum(&self.n) != solvable_radical(g) {
            return fail("d + n is the solvable radical");
        }
        Ok(())
    }
}

fn jordan_parts_in(g: &LieAlgebra, x: &MatrixQ) -> Result<(MatrixQ, MatrixQ)> {
    let j = jordan_decomposition(x)?;
    if !g.contains(&j.semisimple) || !g.contains(&j.nilpotent) {
        return Err(Error::NotAlgebraic(format!("a Jordan part of {x} lies outside the algebra")));
    }
    Ok((j.semisimple, j.nilpotent))
}

pub fn reductive_decomposition(g: &LieAlgebra) -> Result<ReductiveSplit> {
    let n = g.n();
    let s_space = solvable_radical(g);
    let l = levi_subalgebra(g)?;
    let s = LieAlgebra::from_space(&s_space)?;
    let c = LieAlgebra::from_space(&centralizer(&s, &l))?;
    let h_c = cartan_subalgebra(&c)?;
    let mut semis = Vec::new();
    for a in h_c.basis() {
        semis.push(jordan_parts_in(g, &a)?.0);
    }
    let d = MatrixSpace::span(n, &semis);
    let h = centralizer(&s, &d);
    let mut nils = Vec::new();
    for a in h.basis() {
        nils.push(jordan_parts_in(g, &a)?.1);
    }
    let nil = MatrixSpace::span(n, &nils).sum(&fitting_one(&s, &h));
    let split = ReductiveSplit { l, d, n: nil };
    split.verify(g)?;
    Ok(split)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::structure_constants;

    fn alg(b: &[MatrixQ]) -> LieAlgebra {
        structure_constants(b).unwrap()
    }

    fn e(n: usize, i: usize, j: usize) -> MatrixQ {
        MatrixQ::unit(n, i, j)
    }

    fn gl(n: usize) -> Vec<MatrixQ> {
        (0..n).flat_map(|i| (0..n).map(move |j| e(n, i, j))).collect()
    }

    fn upper2() -> Vec<MatrixQ> {
        vec![e(2, 0, 0), e(2, 0, 1), e(2, 1, 1)]
    }

    fn sl2() -> Vec<MatrixQ> {
        vec![MatrixQ::from_ints(&[&[1, 0], &[0, -1]]), e(2, 0, 1), e(2, 1, 0)]
    }

    #[test]
    fn radicals() {
        assert!(solvable_radical(&alg(&sl2())).is_zero());
        assert_eq!(solvable_radical(&alg(&upper2())).dimension(), 3);
        let r = solvable_radical(&alg(&gl(2)));
        assert_eq!(r, MatrixSpace::span(2, &[MatrixQ::identity(2)]));
    }

    #[test]
    fn levi_examples() {
        assert_eq!(levi_subalgebra(&alg(&sl2())).unwrap().dimension(), 3);
        assert!(levi_subalgebra(&alg(&upper2())).unwrap().is_zero());
        assert_eq!(levi_subalgebra(&alg(&gl(2))).unwrap(), MatrixSpace::span(2, &sl2()));
    }

    #[test]
    fn levi_of_non_split_radical() {
        // sl2 acting on its natural module: the affine algebra in gl3.
        let mut b: Vec<MatrixQ> = sl2()
            .iter()
            .map(|m| MatrixQ::from_fn(3, 3, |i, j| if i < 2 && j < 2 { m.get(i, j).clone() } else { rat(0) }))
            .collect();
        // Perturb by radical elements so the given basis is not a Levi subalgebra.
        b[1] = &b[1] + &e(3, 0, 2);
        b.push(e(3, 0, 2));
        b.push(e(3, 1, 2));
        let g = alg(&b);
        let l = levi_subalgebra(&g).unwrap();
        assert_eq!(l.dimension(), 3);
        let la = LieAlgebra::from_space(&l).unwrap();
        assert!(la.derived() == l);
    }

    #[test]
    fn cartan_examples() {
        let nil = alg(&[e(3, 0, 1), e(3, 0, 2), e(3, 1, 2)]);
        assert_eq!(cartan_subalgebra(&nil).unwrap().dimension(), 3);
        let h = cartan_subalgebra(&alg(&upper2())).unwrap();
        let ha = LieAlgebra::from_space(&h).unwrap();
        assert!(ha.is_nilpotent());
        assert_eq!(h.dimension(), 2);
        // self-normalizing
        let g = alg(&upper2());
        let normalizer: Vec<MatrixQ> = g
            .basis()
            .iter()
            .filter(|x| h.basis().iter().all(|y| h.contains(&x.bracket(y))))
            .cloned()
            .collect();
        assert!(normalizer.iter().all(|x| h.contains(x)));
        assert_eq!(cartan_subalgebra(&alg(&sl2())).unwrap().dimension(), 1);
    }

    #[test]
    fn fitting_and_centralizer() {
        let u = alg(&upper2());
        let diag = MatrixSpace::span(2, &[e(2, 0, 0), e(2, 1, 1)]);
        assert_eq!(fitting_one(&u, &diag), MatrixSpace::span(2, &[e(2, 0, 1)]));
        assert!(fitting_one(&u, &MatrixSpace::zero(2)).is_zero());
        assert!(fitting_one(&u, &u.space()).dimension() == 1);
        let s = alg(&sl2());
        let h = MatrixSpace::span(2, &sl2()[..1]);
        assert_eq!(centralizer(&s, &h), h);
        assert_eq!(centralizer(&s, &MatrixSpace::zero(2)), s.space());
    }

    #[test]
    fn decompositions() {
        let g = alg(&[e(2, 0, 1)]);
        let sp = reductive_decomposition(&g).unwrap();
        assert!(sp.l.is_zero() && sp.d.is_zero() && sp.n == g.space());

        let sp = reductive_decomposition(&alg(&upper2())).unwrap();
        assert!(sp.l.is_zero());
        assert_eq!(sp.d, MatrixSpace::span(2, &[e(2, 0, 0), e(2, 1, 1)]));
        assert_eq!(sp.n, MatrixSpace::span(2, &[e(2, 0, 1)]));

        let sp = reductive_decomposition(&alg(&gl(2))).unwrap();
        assert_eq!(sp.l, MatrixSpace::span(2, &sl2()));
        assert_eq!(sp.d, MatrixSpace::span(2, &[MatrixQ::identity(2)]));
        assert!(sp.n.is_zero());
    }

    #[test]
    fn non_algebraic_is_detected() {
        // The Jordan parts of [[1,1],[0,1]] leave its span.
        let g = alg(&[MatrixQ::from_ints(&[&[1, 1], &[0, 1]])]);
        assert!(matches!(reductive_decomposition(&g), Err(Error::NotAlgebraic(_))));
    }
}
