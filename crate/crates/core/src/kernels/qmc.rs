use super::goal::GoalState;
use super::scalar::kernels_for;
use crate::channels::{EigenChannelBasis, KrausChannel, QubitDensity};
use crate::error::Result;
use crate::generators::{assemble_generator, check_window, Geometry};
use crate::linalg::{expm_action, r, unvec, DenseMatrix, C64};

/// Density block at site `i` after time `t`, starting from `rho` at `j`:
/// `unvec(B diag(P^{lambda_k}_{ij}(t)) B^* vec(rho))`.
pub fn site_block(
    basis: &EigenChannelBasis,
    g: &Geometry,
    rho: &QubitDensity,
    j: i64,
    i: i64,
    t: f64,
) -> Result<DenseMatrix> {
    site_block_vec(basis, g, &rho.vec(), j, i, t)
}

/// Same as [`site_block`] for an arbitrary vectorized 2x2 matrix.
pub(crate) fn site_block_vec(
    basis: &EigenChannelBasis,
    g: &Geometry,
    v: &[C64],
    j: i64,
    i: i64,
    t: f64,
) -> Result<DenseMatrix> {
    let p = kernels_for(&basis.lambdas, g, i, j, t)?;
    let b = &basis.basis;
    let coords = b.adjoint().matvec(v);
    let scaled: Vec<C64> = coords.iter().zip(&p).map(|(c, &pk)| c * pk).collect();
    unvec(&b.matvec(&scaled), 2, 2)
}

/// Probability of finding the walker at `i` at time `t`, having started at `j` in `rho`.
pub fn site_probability(
    basis: &EigenChannelBasis,
    g: &Geometry,
    rho: &QubitDensity,
    j: i64,
    i: i64,
    t: f64,
) -> Result<f64> {
    Ok(site_block(basis, g, rho, j, i, t)?.trace().re)
}

/// Probability of finding the walker at `i` in the goal state. Since
/// `gamma` is a projector, `Tr(gamma X gamma) = Tr(gamma X)`.
pub fn state_probability(
    basis: &EigenChannelBasis,
    g: &Geometry,
    rho: &QubitDensity,
    j: i64,
    i: i64,
    goal: &GoalState,
    t: f64,
) -> Result<f64> {
    let x = site_block(basis, g, rho, j, i, t)?;
    Ok((&goal.gamma * &x).trace().re)
}

/// One site of an evolved state.
#[derive(Debug, Clone)]
pub struct SiteBlock {
    pub site: i64,
    pub block: DenseMatrix,
}

/// Evolves `rho` placed at `j` with the exponential of the assembled block
/// generator on the truncation window.
pub fn evolve_oracle(
    ch: &KrausChannel,
    g: &Geometry,
    rho: &QubitDensity,
    j: i64,
    t: f64,
    truncation: usize,
) -> Result<Vec<SiteBlock>> {
    g.check_site(j)?;
    check_window(g, truncation, &[j], t)?;
    let op = assemble_generator(ch, g, truncation)?;
    let k = op.site_index(j).expect("site checked against the window");
    let mut v = vec![r(0.0); op.sites() * 4];
    v[4 * k..4 * k + 4].copy_from_slice(&rho.vec());
    let out = expm_action(&op, &v, t);
    (0..op.sites())
        .map(|s| Ok(SiteBlock { site: op.window.0 + s as i64, block: unvec(&out[4 * s..4 * s + 4], 2, 2)? }))
        .collect()
}

/// Total trace of an evolved state.
pub fn total_trace(blocks: &[SiteBlock]) -> f64 {
    blocks.iter().map(|b| b.block.trace().re).sum()
}
