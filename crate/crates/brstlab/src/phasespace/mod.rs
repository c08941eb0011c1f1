//! Function-algebra backends for concrete phase spaces.
//!
//! A backend packages everything the complex machinery needs from a phase
//! space: pointwise multiplication, the star product, the Poisson bracket,
//! the momentum map, restriction to and prolongation from the constraint
//! surface, and the coordinate data behind the Koszul chain homotopy. Three
//! backends are provided:
//!
//! - `torus`: the cotangent bundle of a two-torus with coordinates
//!   `(z, p, w, J)`, Fourier-polynomial functions, a product ordered so that
//!   right multiplication by the momentum `J` is undeformed, and an optional
//!   perturbation that conjugates the product by `exp(-lambda P d/dJ)` for a
//!   chosen function `P` of `p` alone;
//! - `flat`: polynomial functions on the cotangent bundle of `R^d` with `k`
//!   commuting constraints `p_{d-k+1}, ..., p_d` (standard ordering, with a
//!   Weyl-ordered variant for cross-checks);
//! - `point`: the one-point phase space with zero momentum map, pairing any
//!   Lie algebra with a trivial function algebra so the ghost sector can be
//!   exercised in isolation.
//!
//! All coefficient arithmetic is exact; every star product here terminates
//! on the monomial classes the backends admit.

mod backend;
mod function;
mod parser;

pub use backend::{flat, point, torus, torus_perturbed, Backend, BackendKind, TorusBackend};
pub use function::{Mono, PhaseFunction, Space};
pub use parser::parse_expr;

use crate::error::Result;
use crate::scalars::{Payload, Scalar, Series};
use std::sync::Arc;

/// Parse a CLI backend name: `torus`, `torus-perturbed`, `flat:<d>,<k>`,
/// `point`.
pub fn backend_from_name(name: &str) -> Result<Arc<dyn Backend>> {
    use crate::error::Error;
    if let Some(rest) = name.strip_prefix("flat:") {
        let (d, k) = rest
            .split_once(',')
            .ok_or_else(|| Error::config("flat backend needs `flat:<d>,<k>`"))?;
        let d: usize = d
            .trim()
            .parse()
            .map_err(|_| Error::config("bad dimension in flat backend"))?;
        let k: usize = k
            .trim()
            .parse()
            .map_err(|_| Error::config("bad constraint count in flat backend"))?;
        return flat(d, k);
    }
    match name {
        "torus" => Ok(torus()),
        "torus-perturbed" => Ok(torus_perturbed(PhaseFunction::coordinate(
            Space::Torus,
            2,
        ))?),
        "point" => Ok(point()),
        other => Err(Error::config(format!("unknown backend `{other}`"))),
    }
}

/// Bilinear extension of the star product to series arguments.
pub fn star_series(
    backend: &dyn Backend,
    f: &Series<PhaseFunction>,
    g: &Series<PhaseFunction>,
) -> Result<Series<PhaseFunction>> {
    if f.order() != g.order() {
        return Err(crate::error::Error::config(
            "series order mismatch in star product",
        ));
    }
    let order = f.order();
    let mut out = Series::zero(order, PhaseFunction::zero(backend.space()));
    for (r, fr) in f.coeffs().iter().enumerate() {
        if fr.is_zero() {
            continue;
        }
        for (s, gs) in g.coeffs().iter().enumerate() {
            if r + s > order || gs.is_zero() {
                continue;
            }
            out = out.add(&backend.star(fr, gs, order - r - s).raised(r + s).lambda_shift(r + s));
        }
    }
    Ok(out)
}

/// The quantum action of the a-th momentum component on a function series:
/// the graded star commutator with the momentum divided by `i*lambda`,
/// computed at one order higher internally so the result is valid at the
/// input order.
pub fn quantum_lie_action(
    backend: &dyn Backend,
    a: usize,
    f: &Series<PhaseFunction>,
) -> Result<Series<PhaseFunction>> {
    let j = Series::constant(f.order() + 1, backend.momentum(a));
    let lifted = f.raised(1);
    let comm = star_series(backend, &j, &lifted)?.sub(&star_series(backend, &lifted, &j)?);
    Ok(comm.lambda_divide()?.scale(&-Scalar::i()))
}

/// The classical action of the a-th momentum component: the Poisson bracket
/// with it, extended coefficient-wise to series.
pub fn classical_lie_action(
    backend: &dyn Backend,
    a: usize,
    f: &Series<PhaseFunction>,
) -> Series<PhaseFunction> {
    let j = backend.momentum(a);
    f.map(|c| backend.poisson(&j, c))
}
