use super::ncpoly::{Alphabet, NCPoly, Word};
use super::Algebra;
use crate::error::AlgebraError;
use crate::field::{Field, FieldElement};

/// Sum of all distinct words in which generator `g` appears `m` times for
/// each `(g, m)` in `factors`; every word has coefficient 1.
pub fn star_product(
    alphabet: &Alphabet,
    field: &Field,
    factors: &[(&str, u32)],
) -> Result<NCPoly, AlgebraError> {
    if factors.is_empty() {
        return Err(AlgebraError::Empty("star product needs at least one factor"));
    }
    let mut gens = Vec::with_capacity(factors.len());
    let mut counts = Vec::with_capacity(factors.len());
    for &(name, m) in factors {
        let g = alphabet
            .index(name)
            .ok_or_else(|| AlgebraError::Precondition(format!("unknown generator {name}")))?;
        if m == 0 {
            return Err(AlgebraError::Precondition("multiplicities must be positive".into()));
        }
        match gens.iter().position(|&h| h == g) {
            Some(i) => counts[i] += m,
            None => {
                gens.push(g);
                counts.push(m);
            }
        }
    }
    let mut out = NCPoly::zero(alphabet, field);
    let mut prefix = Vec::new();
    arrangements(&gens, &mut counts, &mut prefix, &mut |w| out.add_term(Word(w.to_vec()), field.one()));
    Ok(out)
}

fn arrangements(gens: &[u8], counts: &mut [u32], prefix: &mut Vec<u8>, emit: &mut impl FnMut(&[u8])) {
    if counts.iter().all(|&c| c == 0) {
        emit(prefix);
        return;
    }
    for i in 0..gens.len() {
        if counts[i] == 0 {
            continue;
        }
        counts[i] -= 1;
        prefix.push(gens[i]);
        arrangements(gens, counts, prefix, emit);
        prefix.pop();
        counts[i] += 1;
    }
}

/// The star product of arbitrary algebra elements: the sum over all
/// arrangements of the factors, taken with multiplicity.
pub fn star_product_in<A: Algebra>(ctx: &A, factors: &[(A::Elem, u32)]) -> Result<A::Elem, AlgebraError> {
    if factors.is_empty() {
        return Err(AlgebraError::Empty("star product needs at least one factor"));
    }
    for (f, _) in factors {
        ctx.check(f)?;
    }
    let mut counts: Vec<u32> = factors.iter().map(|(_, m)| *m).collect();
    Ok(star_rec(ctx, factors, &mut counts))
}

fn star_rec<A: Algebra>(ctx: &A, factors: &[(A::Elem, u32)], counts: &mut [u32]) -> A::Elem {
    if counts.iter().all(|&c| c == 0) {
        return ctx.one();
    }
    let mut acc = ctx.zero();
    for i in 0..factors.len() {
        if counts[i] == 0 {
            continue;
        }
        counts[i] -= 1;
        let rest = star_rec(ctx, factors, counts);
        acc = ctx.add(&acc, &ctx.mul(&factors[i].0, &rest));
        counts[i] += 1;
    }
    acc
}

/// `[mu, nu]_k`, where `[mu, nu]_0 = mu` and
/// `[mu, nu]_k = nu [mu, nu]_{k-1} - [mu, nu]_{k-1} nu`.
pub fn iterated_commutator<A: Algebra>(
    ctx: &A,
    mu: &A::Elem,
    nu: &A::Elem,
    k: usize,
) -> Result<A::Elem, AlgebraError> {
    ctx.check(mu)?;
    ctx.check(nu)?;
    Ok(commutator_chain(ctx, mu, nu, k).pop().expect("chain is nonempty"))
}

/// `[mu, nu]_j` for `j = 0..=k`.
fn commutator_chain<A: Algebra>(ctx: &A, mu: &A::Elem, nu: &A::Elem, k: usize) -> Vec<A::Elem> {
    let mut out = vec![mu.clone()];
    for _ in 0..k {
        let prev = out.last().expect("chain is nonempty");
        let next = ctx.sub(&ctx.mul(nu, prev), &ctx.mul(prev, nu));
        out.push(next);
    }
    out
}

fn require_char<A: Algebra>(ctx: &A, p: u64) -> Result<(), AlgebraError> {
    let found = ctx.field().characteristic();
    if found != p || p == 0 {
        return Err(AlgebraError::Characteristic { found, requirement: format!("must equal {p}") });
    }
    Ok(())
}

fn sum<A: Algebra>(ctx: &A, items: &[A::Elem]) -> A::Elem {
    items.iter().fold(ctx.zero(), |acc, e| ctx.add(&acc, e))
}

/// Splits `y` into parts `y_k` with `y_k x = rho^k x y_k`.
///
/// Requires `x^d` to be a nonzero scalar and `rho` a primitive `d`-th root
/// of unity in a field whose characteristic does not divide `d`.
pub fn decompose_rho<A: Algebra>(
    ctx: &A,
    y: &A::Elem,
    x: &A::Elem,
    d: u32,
    rho: &FieldElement,
) -> Result<Vec<A::Elem>, AlgebraError> {
    ctx.check(y)?;
    ctx.check(x)?;
    let field = ctx.field();
    let ch = field.characteristic();
    if d == 0 || (ch != 0 && u64::from(d) % ch == 0) {
        return Err(AlgebraError::Characteristic {
            found: ch,
            requirement: format!("must not divide d = {d}"),
        });
    }
    if !(rho.pow_u128(d as u128) == field.one() && (1..d).all(|k| rho.pow_u128(k as u128) != field.one())) {
        return Err(AlgebraError::Precondition(format!("{rho} is not a primitive {d}-th root of unity")));
    }
    let c = ctx
        .as_scalar(&ctx.pow(x, d))
        .filter(|c| !c.is_zero())
        .ok_or_else(|| AlgebraError::Precondition(format!("x^{d} must be a nonzero scalar")))?;
    let x_inv = ctx.scale(&c.inverse()?, &ctx.pow(x, d - 1));

    let mut conj = Vec::with_capacity(d as usize);
    let (mut left, mut right) = (ctx.one(), ctx.one());
    for _ in 0..d {
        conj.push(ctx.mul(&ctx.mul(&left, y), &right));
        left = ctx.mul(&left, x);
        right = ctx.mul(&x_inv, &right);
    }
    let d_inv = field.from_int(d as i64).inverse()?;
    let parts: Vec<A::Elem> = (0..d)
        .map(|k| {
            let s = conj.iter().enumerate().fold(ctx.zero(), |acc, (j, cj)| {
                ctx.add(&acc, &ctx.scale(&rho.pow_u128((k * j as u32) as u128), cj))
            });
            ctx.scale(&d_inv, &s)
        })
        .collect();

    if !ctx.is_zero(&ctx.sub(&sum(ctx, &parts), y)) {
        return Err(AlgebraError::Precondition("parts do not sum to y".into()));
    }
    for (k, yk) in parts.iter().enumerate() {
        let lhs = ctx.mul(yk, x);
        let rhs = ctx.scale(&rho.pow_u128(k as u128), &ctx.mul(x, yk));
        if !ctx.is_zero(&ctx.sub(&lhs, &rhs)) {
            return Err(AlgebraError::Precondition(format!("part {k} does not rho^{k}-commute with x")));
        }
    }
    Ok(parts)
}

/// Eigen-decomposition relative to an Artin-Schreier element.
#[derive(Clone, Debug, PartialEq)]
pub struct ArtinSchreierParts<E> {
    /// `z_k` with `x z_k - z_k x = k z_k`.
    pub z: Vec<E>,
    /// `t_k = z_{p-k}`, so that `t_k x - x t_k = k t_k`.
    pub t: Vec<E>,
}

/// Splits `z` relative to `x` with `x^p - x` scalar, in characteristic `p`.
pub fn decompose_artin_schreier<A: Algebra>(
    ctx: &A,
    z: &A::Elem,
    x: &A::Elem,
    p: u64,
) -> Result<ArtinSchreierParts<A::Elem>, AlgebraError> {
    ctx.check(z)?;
    ctx.check(x)?;
    require_char(ctx, p)?;
    let pu = p as usize;
    if ctx.as_scalar(&ctx.sub(&ctx.pow(x, p as u32), x)).is_none() {
        return Err(AlgebraError::Precondition(format!("x^{p} - x must be a scalar")));
    }
    let field = ctx.field();
    let chain = commutator_chain(ctx, z, x, pu - 1);
    let mut parts = Vec::with_capacity(pu);
    parts.push(ctx.sub(z, &chain[pu - 1]));
    for k in 1..pu {
        let kf = field.from_int(k as i64);
        let s = (1..pu).fold(ctx.zero(), |acc, j| {
            ctx.add(&acc, &ctx.scale(&kf.pow_u128((pu - 1 - j) as u128), &chain[j]))
        });
        parts.push(ctx.neg(&s));
    }

    if !ctx.is_zero(&ctx.sub(&sum(ctx, &parts), z)) {
        return Err(AlgebraError::Precondition("parts do not sum to z".into()));
    }
    for (k, zk) in parts.iter().enumerate() {
        let comm = ctx.sub(&ctx.mul(x, zk), &ctx.mul(zk, x));
        if !ctx.is_zero(&ctx.sub(&comm, &ctx.scale(&field.from_int(k as i64), zk))) {
            return Err(AlgebraError::Precondition(format!("[z_{k}, x] != {k} z_{k}")));
        }
    }
    let t = (0..pu).map(|k| parts[(pu - k) % pu].clone()).collect();
    Ok(ArtinSchreierParts { z: parts, t })
}

/// Splits `z` relative to a `p`-central `y`: `[z_0, y] = 0`,
/// `[z_k, y] = z_{k-1}` and `z = z_{p-1} - z_{p-2}`.
pub fn decompose_pcentral<A: Algebra>(
    ctx: &A,
    z: &A::Elem,
    y: &A::Elem,
    p: u64,
) -> Result<Vec<A::Elem>, AlgebraError> {
    ctx.check(z)?;
    ctx.check(y)?;
    require_char(ctx, p)?;
    let pu = p as usize;
    if ctx.as_scalar(&ctx.pow(y, p as u32)).is_none() {
        return Err(AlgebraError::Precondition(format!("y^{p} must be a scalar")));
    }
    let chain = commutator_chain(ctx, z, y, pu - 1);
    let mut parts = vec![chain[pu - 1].clone()];
    for k in 1..pu {
        parts.push(sum(ctx, &chain[pu - 1 - k..]));
    }

    let bracket = |a: &A::Elem| ctx.sub(&ctx.mul(y, a), &ctx.mul(a, y));
    if !ctx.is_zero(&bracket(&parts[0])) {
        return Err(AlgebraError::Precondition("[z_0, y] != 0".into()));
    }
    for k in 1..pu {
        if !ctx.is_zero(&ctx.sub(&bracket(&parts[k]), &parts[k - 1])) {
            return Err(AlgebraError::Precondition(format!("[z_{k}, y] != z_{}", k - 1)));
        }
    }
    let top = if pu >= 2 { ctx.sub(&parts[pu - 1], &parts[pu - 2]) } else { parts[0].clone() };
    if !ctx.is_zero(&ctx.sub(&top, z)) {
        return Err(AlgebraError::Precondition("z != z_{p-1} - z_{p-2}".into()));
    }
    Ok(parts)
}
