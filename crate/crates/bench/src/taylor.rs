use cfrat::{BigInt, BigRational, Context, Result};

/// Sums the sine series of `x` through `ctx`.
///
/// Terms follow `t_0 = x`, `t_{j+1} = t_j * (-x^2) / ((2j+2)(2j+3))`, each
/// product and quotient rounded by the context. A term is added only while
/// `|t_j| >= threshold`; the first smaller term ends the sum without being
/// added.
pub fn taylor_sin(x: &BigRational, threshold: &BigRational, ctx: &mut Context<BigInt>) -> Result<BigRational> {
    let neg_x2 = -ctx.mul(x, x)?;
    let mut sum = BigRational::zero();
    let mut term = x.clone();
    let mut j: i64 = 0;
    while term.abs() >= *threshold {
        sum = ctx.add(&sum, &term)?;
        let scaled = ctx.mul(&term, &neg_x2)?;
        term = ctx.div(&scaled, &BigRational::from_integer(BigInt::from((2 * j + 2) * (2 * j + 3))))?;
        j += 1;
    }
    Ok(sum)
}
