use forge_core::arith::{
    factor_over_field, factor_rational, rat, splitting_field, squarefree_part, Field, FieldTower, NumberFieldElement,
    Rational, Rationals, UniPoly,
};
use forge_core::groebner::{division, reduced_groebner, MonomialOrder, MultiPoly, PolyRing};
use forge_core::group::{exp_nilpotent, nilpotent_group, semisimple_group, tangent_space_at_identity, Limits};
use forge_core::lie::{fitting_one, structure_constants, LieAlgebra, MatrixSpace};
use forge_core::linalg::matrix::{determinant, rank};
use forge_core::linalg::{
    hermite_normal_form, is_nilpotent, jordan_decomposition, kernel, minimal_polynomial, saturate_lattice,
    smith_normal_form, IntMatrix, Lattice, MatrixQ,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use std::sync::OnceLock;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=5).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn cube_root_tower() -> &'static (FieldTower, Vec<NumberFieldElement>) {
    static T: OnceLock<(FieldTower, Vec<NumberFieldElement>)> = OnceLock::new();
    T.get_or_init(|| splitting_field(&UniPoly::from_ints(&[-2, 0, 0, 1]), 64).unwrap())
}

fn tower_element() -> impl Strategy<Value = Vec<Rational>> {
    let d = cube_root_tower().0.degree();
    prop::collection::vec(small_rational(), d)
}

fn int_matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec((-bound..=bound).prop_map(BigInt::from), c), r)
    })
}

fn to_q(m: &IntMatrix) -> MatrixQ {
    MatrixQ::from_rows(m.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect())
}

fn minors_gcd(b: &IntMatrix, k: usize) -> BigInt {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    let mut g = BigInt::zero();
    for rows in subsets(b.len(), k) {
        for cols in subsets(b[0].len(), k) {
            let m = MatrixQ::from_fn(k, k, |i, j| Rational::from_integer(b[rows[i]][cols[j]].clone()));
            g = g.gcd(&determinant(&m).to_integer());
        }
    }
    g
}

fn poly_product(factors: &[Vec<i64>]) -> UniPoly<Rational> {
    factors.iter().fold(UniPoly::from_ints(&[1]), |acc, f| acc.mul(&UniPoly::from_ints(f), &Rationals))
}

fn upper_triangular(n: usize) -> impl Strategy<Value = MatrixQ> {
    prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
        MatrixQ::from_fn(n, n, |i, j| if i <= j { rat(v[i * n + j]) } else { Rational::zero() })
    })
}

fn poly_in(ring: &PolyRing) -> impl Strategy<Value = MultiPoly> {
    let ring = ring.clone();
    let nv = ring.nvars();
    prop::collection::vec((prop::collection::vec(0u16..=2, nv), -4i64..=4), 1..=3).prop_map(move |terms| {
        terms.into_iter().fold(MultiPoly::zero(&ring), |acc, (exps, c)| {
            let m = exps.iter().enumerate().fold(MultiPoly::constant(&ring, rat(c)), |p, (v, &e)| p.mul(&ring.var(v).pow(e as u32)));
            acc.add(&m)
        })
    })
}

fn xyz() -> PolyRing {
    PolyRing::new(["x", "y", "z"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in tower_element(), b in tower_element(), c in tower_element()) {
        let k = &cube_root_tower().0;
        prop_assert_eq!(k.mul(&k.mul(&a, &b), &c), k.mul(&a, &k.mul(&b, &c)));
        prop_assert_eq!(k.mul(&a, &k.add(&b, &c)), k.add(&k.mul(&a, &b), &k.mul(&a, &c)));
        prop_assert_eq!(k.add(&k.add(&a, &b), &c), k.add(&a, &k.add(&b, &c)));
        if !k.is_zero(&a) {
            prop_assert!(k.is_one(&k.mul(&a, &k.inv(&a))));
        }
    }

    #[test]
    fn rational_factors_reexpand(factors in prop::collection::vec(prop::collection::vec(-5i64..=5, 2..=3), 1..=3)) {
        let f = poly_product(&factors);
        prop_assume!(!f.is_zero());
        let parts = factor_rational(&f);
        let lc = f.leading().unwrap().clone();
        let back = parts.iter().fold(UniPoly::constant(&Rationals, lc), |acc, (g, m)| acc.mul(&g.pow(*m, &Rationals), &Rationals));
        prop_assert_eq!(&back, &f);
        for (g, _) in &parts {
            prop_assert!(f.rem(g, &Rationals).is_zero());
        }
    }

    #[test]
    fn tower_factors_reexpand(c in -6i64..=6, d in -6i64..=6) {
        let (k, _) = cube_root_tower();
        let f = UniPoly::from_ints(&[c, d, 0, 1]);
        let parts = factor_over_field(&f, k).unwrap();
        let lifted = f.map(k, |q| k.from_rational(q));
        let back = parts.iter().fold(UniPoly::constant(k, k.one()), |acc, (g, m)| acc.mul(&g.pow(*m, k), k));
        prop_assert_eq!(&back, &lifted);
        for (g, _) in &parts {
            prop_assert!(lifted.rem(g, k).is_zero());
        }
    }

    #[test]
    fn splitting_field_roots(a in -5i64..=5, b in -5i64..=5, c in -5i64..=5) {
        let f = poly_product(&[vec![a, 0, 1], vec![b, c, 1]]);
        prop_assume!(f.gcd(&f.derivative(&Rationals), &Rationals).degree() == Some(0));
        let (k, roots) = splitting_field(&f, 64).unwrap();
        prop_assert_eq!(roots.len(), 4);
        let lifted = f.map(&k, |q| k.from_rational(q));
        for r in &roots {
            prop_assert!(k.is_zero(&lifted.eval(&r.coords().to_vec(), &k)));
        }
    }

    #[test]
    fn squarefree_part_properties(factors in prop::collection::vec(prop::collection::vec(-4i64..=4, 2..=3), 1..=4)) {
        let f = poly_product(&factors);
        prop_assume!(f.degree().unwrap_or(0) > 0);
        let s = squarefree_part(&f).unwrap();
        prop_assert!(f.rem(&s, &Rationals).is_zero());
        prop_assert_eq!(s.gcd(&s.derivative(&Rationals), &Rationals).degree(), Some(0));
    }

    #[test]
    fn smith_form(b in int_matrix(4, 4, 9)) {
        let f = smith_normal_form(&b);
        let pbq = forge_core::linalg::smith::int_mat_mul(&forge_core::linalg::smith::int_mat_mul(&f.p, &b), &f.q);
        prop_assert_eq!(&pbq, &f.s);
        prop_assert!(determinant(&to_q(&f.p)).abs().is_one());
        prop_assert!(determinant(&to_q(&f.q)).abs().is_one());
        let mut prev = BigInt::one();
        for (i, d) in f.divisors.iter().enumerate() {
            let g = minors_gcd(&b, i + 1);
            prop_assert_eq!(d, &(&g / &prev));
            prev = g;
        }
        prop_assert!(minors_gcd(&b, f.divisors.len() + 1).is_zero() || f.divisors.len() == b.len().min(b[0].len()));
    }

    #[test]
    fn saturation_is_idempotent(b in int_matrix(4, 5, 20)) {
        let n = b[0].len();
        prop_assume!(rank(&Rationals, &to_q(&b).to_rows()) == b.len());
        let once = saturate_lattice(&Lattice::new(n, b)).unwrap();
        let twice = saturate_lattice(&once).unwrap();
        prop_assert_eq!(hermite_normal_form(&once.basis), hermite_normal_form(&twice.basis));
    }

    #[test]
    fn jordan_parts(x in upper_triangular(4)) {
        let j = jordan_decomposition(&x).unwrap();
        prop_assert_eq!(&(&j.semisimple + &j.nilpotent), &x);
        prop_assert_eq!(&j.semisimple * &j.nilpotent, &j.nilpotent * &j.semisimple);
        prop_assert!(j.nilpotent.pow(4).is_zero());
        let m = minimal_polynomial(&j.semisimple).unwrap();
        prop_assert_eq!(m.gcd(&m.derivative(&Rationals), &Rationals).degree(), Some(0));
    }

    #[test]
    fn kernel_vectors(rows in int_matrix(4, 6, 5)) {
        let m = to_q(&rows);
        let ker = kernel(&m);
        prop_assert_eq!(ker.len(), m.cols() - rank(&Rationals, &m.to_rows()));
        for v in &ker {
            let col = MatrixQ::from_flat(v.len(), 1, v.clone());
            prop_assert!((&m * &col).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn groebner_basis_properties(gens in prop::collection::vec(poly_in(&xyz()), 1..=3)) {
        let order = MonomialOrder::GrevLex;
        let a = reduced_groebner(&gens, &order).unwrap();
        let b = reduced_groebner(&gens, &order).unwrap();
        let show = |g: &[MultiPoly]| g.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("\n");
        prop_assert_eq!(show(a.generators()), show(b.generators()));
        prop_assert!(a.satisfies_buchberger_criterion());
        for g in &gens {
            prop_assert!(a.contains(g));
        }
    }

    #[test]
    fn division_recombines(f in poly_in(&xyz()), gens in prop::collection::vec(poly_in(&xyz()), 1..=3)) {
        let gens: Vec<MultiPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let order = MonomialOrder::GrevLex;
        let (q, r) = division(&f, &gens, &order);
        let back = q.iter().zip(&gens).fold(r.clone(), |acc, (qi, g)| acc.add(&qi.mul(g)));
        prop_assert_eq!(back, f);
    }

    #[test]
    fn unipotent_sampling_closure(
        c in prop::collection::vec(-3i64..=3, 3),
        pts in prop::collection::vec(prop::collection::vec(small_rational(), 3), 4),
    ) {
        let x = MatrixQ::from_fn(3, 3, |i, j| match (i, j) {
            (0, 1) => rat(c[0]),
            (0, 2) => rat(c[1]),
            (1, 2) => rat(c[2]),
            _ => Rational::zero(),
        });
        prop_assume!(!x.is_zero());
        let basis = vec![x.clone(), MatrixQ::unit(3, 0, 2)];
        let basis = MatrixSpace::span(3, &basis).basis();
        let algebra = structure_constants(&basis).unwrap();
        prop_assume!(algebra.satisfies_jacobi() && basis.iter().all(is_nilpotent));
        let g = nilpotent_group(3, &basis, &Limits::default()).unwrap();
        prop_assert_eq!(MatrixSpace::span(3, &tangent_space_at_identity(&g).unwrap()), MatrixSpace::span(3, &basis));
        let samples: Vec<MatrixQ> = pts
            .iter()
            .map(|p| exp_nilpotent(&basis.iter().zip(p).fold(MatrixQ::zeros(3, 3), |acc, (b, s)| &acc + &b.scale(s))))
            .collect();
        for a in &samples {
            prop_assert!(g.contains(a));
            for b in &samples {
                prop_assert!(g.contains(&(a * b)));
            }
        }
    }

    #[test]
    fn diagonal_torus_contains_samples(a in -3i64..=3, b in -3i64..=3, p in 1i64..=5, q in 1i64..=5) {
        let x = MatrixQ::diag(&[rat(a), rat(b), rat(a + b)]);
        let g = semisimple_group(&x, &Limits::default()).unwrap();
        prop_assert!(g.tangent_space().unwrap().contains(&x));
        // t^a, t^b, t^(a+b) at t = p/q, when every exponent is nonnegative
        if a >= 0 && b >= 0 {
            let t = Rational::new(p.into(), q.into());
            let pw = |e: i64| (0..e).fold(Rational::one(), |acc, _| acc * &t);
            prop_assert!(g.contains(&MatrixQ::diag(&[pw(a), pw(b), pw(a + b)])));
        }
    }

    #[test]
    fn fitting_chain_stabilizes(v in prop::collection::vec(-2i64..=2, 3)) {
        let h = MatrixQ::diag(&[rat(v[0]), rat(v[1]), rat(v[2])]);
        let mut basis = vec![h.clone()];
        basis.extend((0..3).flat_map(|i| (i + 1..3).map(move |j| MatrixQ::unit(3, i, j))));
        let s = LieAlgebra::new(3, MatrixSpace::span(3, &basis).basis()).unwrap();
        let hs = MatrixSpace::span(3, &[h]);
        let one = fitting_one(&s, &hs);
        let mut chain = s.space();
        for _ in 0..=s.dimension() {
            let next = hs.bracket(&chain);
            prop_assert!(chain.contains_space(&next));
            chain = next;
        }
        prop_assert_eq!(one, chain);
    }
}
