use super::algebraic::{AlgebraicGroup, Limits, Provenance};
use super::nilpotent::nilpotent_group;
use super::semisimple::semisimple_group;
use crate::error::{Error, Limit, Result};
use crate::groebner::{eliminate, MultiPoly, PolyRing};
use crate::lie::{reductive_decomposition, LieAlgebra, MatrixSpace};
use crate::linalg::jordan_decomposition;

/// Vanishing ideal of the closure of `{a*g : a in A, g in G1}`.
pub fn product_closure_step(a: &AlgebraicGroup, g1: &AlgebraicGroup, limits: &Limits) -> Result<AlgebraicGroup> {
    let n = a.n();
    if g1.n() != n {
        return Err(Error::domain(format!("groups in GL({n}) and GL({}) cannot be multiplied", g1.n())));
    }
    let provenance = Provenance::Product { left: Box::new(a.provenance().clone()), right: Box::new(g1.provenance().clone()) };
    if a.is_trivial() {
        return Ok(g1.clone().with_provenance(provenance));
    }
    if g1.is_trivial() {
        return Ok(a.clone().with_provenance(provenance));
    }
    let n2 = n * n;
    let entry = |p: usize| (p / n + 1, p % n + 1);
    let names: Vec<String> = ["u", "v", "x"]
        .iter()
        .flat_map(|s| (0..n2).map(move |p| (s, entry(p))))
        .map(|(s, (i, j))| format!("{s}_{i}_{j}"))
        .collect();
    let ring = PolyRing::new(names);
    let shift = |k: usize| -> Vec<Option<usize>> { (0..n2).map(|p| Some(k * n2 + p)).collect() };
    let mut gens: Vec<MultiPoly> = a.ideal().iter().map(|g| g.rename(&ring, &shift(0))).collect();
    gens.extend(g1.ideal().iter().map(|g| g.rename(&ring, &shift(1))));
    for i in 0..n {
        for j in 0..n {
            let mut prod = MultiPoly::zero(&ring);
            for k in 0..n {
                prod = prod.add(&ring.var(i * n + k).mul(&ring.var(n2 + k * n + j)));
            }
            gens.push(ring.var(2 * n2 + i * n + j).sub(&prod));
        }
    }
    let drop: Vec<usize> = (0..2 * n2).collect();
    let ideal = eliminate(&gens, &drop, &limits.groebner)?;
    let xring = PolyRing::matrix(n);
    AlgebraicGroup::from_basis(n, ideal.iter().map(|g| g.embed(&xring)).collect(), provenance)
}

/// Result of a group generation run.
#[derive(Clone, Debug)]
pub struct Generation {
    pub group: AlgebraicGroup,
    /// Rounds in which the group grew.
    pub rounds: usize,
    /// One line per closure step.
    pub trace: Vec<String>,
}

fn describe(g: &AlgebraicGroup) -> String {
    let dim = g.tangent_space().map(|t| t.dimension().to_string()).unwrap_or_else(|_| "?".into());
    let polys: Vec<String> = g.ideal().iter().map(|p| p.to_string()).collect();
    format!("{} generators, tangent dimension {dim}: [{}]", polys.len(), polys.join(", "))
}

/// The smallest algebraic group containing the connected groups `g1` and
/// `g2`: starting from the trivial group, alternately close under right
/// multiplication by `g1` and `g2` until a full round changes nothing.
pub fn generated_group(g1: &AlgebraicGroup, g2: &AlgebraicGroup, limits: &Limits) -> Result<Generation> {
    let n = g1.n();
    if g2.n() != n {
        return Err(Error::domain("groups of different matrix sizes"));
    }
    let mut g = AlgebraicGroup::trivial(n);
    let mut rounds = 0;
    let mut trace = Vec::new();
    loop {
        let step = rounds + 1;
        let a = product_closure_step(&g, g1, limits)?;
        trace.push(format!("round {step}: closure with first group: {}", describe(&a)));
        let b = product_closure_step(&a, g2, limits)?;
        trace.push(format!("round {step}: closure with second group: {}", describe(&b)));
        if b == g {
            break;
        }
        rounds += 1;
        if rounds > limits.max_rounds {
            return Err(Error::resource(Limit::Rounds, format!("group still growing after {} rounds", limits.max_rounds)));
        }
        g = b;
    }
    let provenance = Provenance::Generated {
        left: Box::new(g1.provenance().clone()),
        right: Box::new(g2.provenance().clone()),
        rounds,
    };
    Ok(Generation { group: g.with_provenance(provenance), rounds, trace })
}

/// The connected algebraic group whose Lie algebra is `g`.
pub fn group_of_lie_algebra(g: &LieAlgebra, limits: &Limits) -> Result<Generation> {
    let n = g.n();
    let mut nilpotent = Vec::new();
    let mut semisimple = Vec::new();
    for b in g.basis() {
        let j = jordan_decomposition(b)?;
        for part in [&j.semisimple, &j.nilpotent] {
            if !g.contains(part) {
                return Err(Error::NotAlgebraic(format!("Jordan part {part} of {b} lies outside the algebra")));
            }
        }
        if !j.nilpotent.is_zero() {
            nilpotent.push(j.nilpotent);
        }
        if !j.semisimple.is_zero() {
            semisimple.push(j.semisimple);
        }
    }
    let mut current = AlgebraicGroup::trivial(n);
    let mut tangent = MatrixSpace::zero(n);
    let mut rounds = 0;
    let mut trace = Vec::new();
    let tagged = nilpotent.iter().map(|m| (true, m)).chain(semisimple.iter().map(|m| (false, m)));
    for (is_nil, z) in tagged {
        if tangent.contains(z) {
            trace.push(format!("skip {z}: already in the tangent space"));
            continue;
        }
        let h = if is_nil { nilpotent_group(n, std::slice::from_ref(z), limits)? } else { semisimple_group(z, limits)? };
        trace.push(format!("{} group of {z}: {}", if is_nil { "unipotent" } else { "semisimple" }, describe(&h)));
        if current.is_trivial() {
            current = h;
        } else {
            let gen = generated_group(&current, &h, limits)?;
            rounds += gen.rounds;
            trace.extend(gen.trace);
            current = gen.group;
        }
        tangent = current.tangent_space()?;
    }
    if tangent != g.space() {
        return Err(Error::NotAlgebraic(format!(
            "constructed group has tangent dimension {} but the algebra has dimension {}",
            tangent.dimension(),
            g.dimension()
        )));
    }
    let group = current.with_provenance(Provenance::LieAlgebra { basis: g.basis().to_vec() });
    Ok(Generation { group, rounds, trace })
}

/// `(H, U)`: the group of `l ⊕ d` and the unipotent radical, the group of `n`.
pub fn reductive_group_parts(g: &LieAlgebra, limits: &Limits) -> Result<(AlgebraicGroup, AlgebraicGroup)> {
    let n = g.n();
    let split = reductive_decomposition(g)?;
    let u = nilpotent_group(n, &split.n.basis(), limits)?;
    let ld = split.l.sum(&split.d);
    let h = if ld.is_zero() {
        AlgebraicGroup::trivial(n)
    } else {
        group_of_lie_algebra(&LieAlgebra::from_space(&ld)?, limits)?.group
    };
    if u.tangent_space()? != split.n {
        return Err(Error::domain("tangent space of the unipotent radical differs from n"));
    }
    if h.tangent_space()? != ld {
        return Err(Error::domain("tangent space of the reductive part differs from l + d"));
    }
    Ok((h, u))
}
