//! The operator family of the complex: charges, differentials, and the
//! structural endomorphisms they split into.
//!
//! Each operator that the theory defines twice — once intrinsically (a
//! graded commutator, a conjugation) and once by an explicit formula — is
//! implemented twice here, and the identity suites compare the two routes.

use std::sync::Arc;

use num::One;

use crate::brst::{star_commutator, Context, SuperField};
use crate::error::Result;
use crate::grassmann::{self, Gen, GhostWord};
use crate::phasespace::{self, PhaseFunction};
use crate::scalars::{Rat, Scalar, Series};

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// The charge: cubic ghost term plus momentum map plus the ordering
/// correction `i*(1-2k)*lambda` times the trace form.
pub fn theta_kappa(ctx: &Arc<Context>, kappa: &Rat) -> SuperField {
    let order = ctx.order;
    let mut out = SuperField::from_grass(ctx, &ctx.algebra.omega(order));
    for a in 0..ctx.n() {
        let j_a = ctx.backend.momentum(a);
        out.add_term(
            GhostWord {
                ghost: 1 << a,
                anti: 0,
            },
            &Series::constant(order, j_a),
        );
    }
    let chi = SuperField::from_grass(ctx, &ctx.algebra.chi_element(order));
    let coeff = Scalar::i().scale_rat(&(rat(1) - rat(2) * kappa));
    out.add(&chi.lambda_shift(1).scale(&coeff))
}

/// The BRST differential as a graded commutator: the star commutator with
/// the charge, divided by `i*lambda`. Computed internally at one order
/// higher so the result is valid at the input order.
pub fn brst_kappa(a: &SuperField, kappa: &Rat) -> Result<SuperField> {
    let up = a.raised(1);
    let theta = theta_kappa(up.ctx(), kappa);
    let comm = star_commutator(&theta, true, &up, kappa)?;
    Ok(comm.lambda_divide()?.scale(&-Scalar::i()))
}

/// The ghost number operator, as the grading it induces.
pub fn ghost_number_op(a: &SuperField) -> SuperField {
    a.ghost_grading()
}

/// The ghost number operator as a graded commutator with the degree
/// element, divided by `i*lambda`; must agree with the grading for every
/// ordering parameter.
pub fn ghost_number_op_ad(a: &SuperField, kappa: &Rat) -> Result<SuperField> {
    let up = a.raised(1);
    let ctx = up.ctx();
    let mut gamma = SuperField::zero(ctx);
    for idx in 0..ctx.n() {
        gamma.add_term(
            GhostWord {
                ghost: 1 << idx,
                anti: 1 << idx,
            },
            &Series::constant(ctx.order, PhaseFunction::constant(ctx.space(), Scalar::from_ratio(1, 2))),
        );
    }
    let comm = star_commutator(&gamma, false, &up, kappa)?;
    Ok(comm.lambda_divide()?.scale(&-Scalar::i()))
}

/// The word-part Laplace operator, extended to fields.
pub fn laplacian_field(a: &SuperField) -> SuperField {
    let mut out = SuperField::zero(a.ctx());
    for (w, c) in a.terms() {
        let both = w.ghost & w.anti;
        for idx in 0..a.ctx().n() {
            if both & (1 << idx) == 0 {
                continue;
            }
            let (s1, w1) = grassmann::insert_left_word(Gen::Covector(idx), w).expect("bit checked");
            let (s2, w2) = grassmann::insert_left_word(Gen::Vector(idx), &w1).expect("bit survives");
            out.add_term(w2, &if s1 * s2 < 0 { c.neg() } else { c.clone() });
        }
    }
    out
}

/// The ordering equivalence `exp(2 i kappa lambda Laplace)` on fields.
pub fn s_transform(a: &SuperField, kappa: &Rat) -> SuperField {
    let mut out = a.clone();
    let mut term = a.clone();
    for k in 1..=a.order() {
        let factor = (&Scalar::from_int(2) * &Scalar::i())
            .scale_rat(&(kappa.clone() / rat(k as i64)));
        term = laplacian_field(&term).lambda_shift(1).scale(&factor);
        if term.is_zero() {
            break;
        }
        out = out.add(&term);
    }
    out
}

/// Antighost indices of a word, ascending.
fn anti_list(w: &GhostWord) -> Vec<usize> {
    w.anti_indices().collect()
}

/// Structure-constant contraction of two antighost slots, pushed back into
/// the antighost block: for slots `i < j` (1-based) the bracket factor is
/// pulled to the front with sign `(-1)^(i+j-1)` and the replacement is
/// re-sorted into canonical order.
fn bracket_pairs(
    ctx: &Context,
    w: &GhostWord,
    mut emit: impl FnMut(i8, usize, usize, GhostWord),
) {
    let list = anti_list(w);
    let l = list.len();
    for i in 0..l {
        for j in (i + 1)..l {
            let sign_ij = if (i + j + 1) % 2 == 0 { 1i8 } else { -1 };
            let rest = w.anti & !(1 << list[i]) & !(1 << list[j]);
            for c in 0..ctx.n() {
                let f = ctx.algebra.structure_const(c, list[i], list[j]);
                if f.is_zero() {
                    continue;
                }
                if rest & (1 << c) != 0 {
                    continue;
                }
                let below = (rest & ((1u32 << c) - 1)).count_ones();
                let sign_sort = if below % 2 == 0 { 1i8 } else { -1 };
                emit(
                    sign_ij * sign_sort,
                    c,
                    // the structure constant index pair is (list[i], list[j])
                    list[i] * ctx.n() + list[j],
                    GhostWord {
                        ghost: w.ghost,
                        anti: rest | (1 << c),
                    },
                );
            }
        }
    }
}

/// Antighost-lowering bracket contraction (definitional form): ghost sign
/// times the in-place commutator of two antighost slots.
pub fn op_q(a: &SuperField) -> SuperField {
    let ctx = a.ctx().clone();
    let mut out = SuperField::zero(&ctx);
    for (w, coeff) in a.terms() {
        let ghost_sign = if w.ghost_degree() % 2 == 0 { 1i8 } else { -1 };
        bracket_pairs(&ctx, w, |sign, c, pair, word| {
            let (bi, bj) = (pair / ctx.n(), pair % ctx.n());
            let f = ctx.algebra.structure_const(c, bi, bj);
            let mut term = coeff.scale(&Scalar::from_rat(f.clone()));
            if ghost_sign * sign < 0 {
                term = term.neg();
            }
            out.add_term(word, &term);
        });
    }
    out
}

/// Same operator through the basis formula
/// `-(1/2) sum f^c_ab e_c ^ i(e^a) i(e^b)`; the suites require exact
/// agreement with [`op_q`].
pub fn op_q_basis(a: &SuperField) -> SuperField {
    let ctx = a.ctx().clone();
    let n = ctx.n();
    let mut out = SuperField::zero(&ctx);
    for aa in 0..n {
        for bb in 0..n {
            for cc in 0..n {
                let f = ctx.algebra.structure_const(cc, aa, bb);
                if f.is_zero() {
                    continue;
                }
                let t = a
                    .insert(Gen::Covector(bb))
                    .insert(Gen::Covector(aa))
                    .wedge_left(GhostWord {
                        ghost: 0,
                        anti: 1 << cc,
                    })
                    .scale(&Scalar::from_rat(-f / rat(2)));
                out = out.add(&t);
            }
        }
    }
    out
}

/// Bidegree (-1,-2) contraction (definitional form): the bracket of two
/// antighost slots inserted into the ghost block.
pub fn op_c(a: &SuperField) -> SuperField {
    let ctx = a.ctx().clone();
    let mut out = SuperField::zero(&ctx);
    for (w, coeff) in a.terms() {
        let list = anti_list(w);
        let l = list.len();
        for i in 0..l {
            for j in (i + 1)..l {
                let sign_ij = if (i + j + 1) % 2 == 0 { 1i8 } else { -1 };
                let rest = w.anti & !(1 << list[i]) & !(1 << list[j]);
                for c in 0..ctx.n() {
                    let f = ctx.algebra.structure_const(c, list[i], list[j]);
                    if f.is_zero() {
                        continue;
                    }
                    let stripped = GhostWord {
                        ghost: w.ghost,
                        anti: rest,
                    };
                    if let Some((si, word)) =
                        grassmann::insert_left_word(Gen::Vector(c), &stripped)
                    {
                        let mut term = coeff.scale(&Scalar::from_rat(f.clone()));
                        if sign_ij * si < 0 {
                            term = term.neg();
                        }
                        out.add_term(word, &term);
                    }
                }
            }
        }
    }
    out
}

/// Same operator through the basis formula
/// `-(1/2) sum f^c_ab i(e_c) i(e^a) i(e^b)`.
pub fn op_c_basis(a: &SuperField) -> SuperField {
    let ctx = a.ctx().clone();
    let n = ctx.n();
    let mut out = SuperField::zero(&ctx);
    for aa in 0..n {
        for bb in 0..n {
            for cc in 0..n {
                let f = ctx.algebra.structure_const(cc, aa, bb);
                if f.is_zero() {
                    continue;
                }
                let t = a
                    .insert(Gen::Covector(bb))
                    .insert(Gen::Covector(aa))
                    .insert(Gen::Vector(cc))
                    .scale(&Scalar::from_rat(-f / rat(2)));
                out = out.add(&t);
            }
        }
    }
    out
}

/// Antighost-lowering momentum multiplication from the right:
/// `sum_a i(e^a) (x) (F * J_a)`.
pub fn op_ms(a: &SuperField) -> Result<SuperField> {
    op_m_impl(a, false)
}

/// Antighost-lowering momentum multiplication from the left:
/// `sum_a i(e^a) (x) (J_a * F)`.
pub fn op_ma(a: &SuperField) -> Result<SuperField> {
    op_m_impl(a, true)
}

fn op_m_impl(a: &SuperField, momentum_left: bool) -> Result<SuperField> {
    let ctx = a.ctx().clone();
    let mut out = SuperField::zero(&ctx);
    for idx in 0..ctx.n() {
        let j = Series::constant(ctx.order, ctx.backend.momentum(idx));
        let inserted = a.insert(Gen::Covector(idx));
        for (w, c) in inserted.terms() {
            let f = if momentum_left {
                phasespace::star_series(ctx.backend.as_ref(), &j, c)?
            } else {
                phasespace::star_series(ctx.backend.as_ref(), c, &j)?
            };
            out.add_term(*w, &f);
        }
    }
    Ok(out)
}

/// The trace-form contraction `sum_ab f^b_ab i(e^a)`; independent of the
/// ordering parameter.
pub fn op_u(a: &SuperField) -> SuperField {
    let ctx = a.ctx().clone();
    let mut out = SuperField::zero(&ctx);
    for (idx, chi) in ctx.algebra.chi().into_iter().enumerate() {
        if chi.is_zero() {
            continue;
        }
        out = out.add(
            &a.insert(Gen::Covector(idx))
                .scale(&Scalar::from_rat(chi * rat(2))),
        );
    }
    out
}

/// The trace-form contraction as a graded commutator with the trace form,
/// divided by `i*lambda` — the cross-checked route.
pub fn op_u_ad(a: &SuperField, kappa: &Rat) -> Result<SuperField> {
    let up = a.raised(1);
    let ctx = up.ctx();
    let chi = SuperField::from_grass(ctx, &ctx.algebra.chi_element(ctx.order));
    let comm = star_commutator(&chi, true, &up, kappa)?;
    Ok(comm.lambda_divide()?.scale(&-Scalar::i()))
}

/// The quantized antighost-lowering differential:
/// `m_s + i lambda ((1/2) u - q)`.
pub fn koszul_quantum(a: &SuperField) -> Result<SuperField> {
    let correction = op_u(a)
        .scale(&Scalar::from_ratio(1, 2))
        .sub(&op_q(a))
        .lambda_shift(1)
        .scale(&Scalar::i());
    Ok(op_ms(a)?.add(&correction))
}

/// Its classical limit: insertion of the momentum map, i.e.
/// `sum_a i(e^a) (x) (J_a F)` with the pointwise product.
pub fn koszul_classical(a: &SuperField) -> SuperField {
    let ctx = a.ctx().clone();
    let mut out = SuperField::zero(&ctx);
    for idx in 0..ctx.n() {
        let j = ctx.backend.momentum(idx);
        let inserted = a.insert(Gen::Covector(idx));
        for (w, c) in inserted.terms() {
            out.add_term(*w, &c.map(|f| crate::scalars::Payload::mul(f, &j)));
        }
    }
    out
}

/// Ghost-raising differential skeleton shared by the quantum and classical
/// versions and by their constraint-surface counterparts: the module action
/// on the function part is a parameter.
pub(crate) fn ce_generic(
    a: &SuperField,
    module_action: &dyn Fn(usize, &Series<PhaseFunction>) -> Result<Series<PhaseFunction>>,
) -> Result<SuperField> {
    let ctx = a.ctx().clone();
    let n = ctx.n();
    let mut out = SuperField::zero(&ctx);
    for (w, coeff) in a.terms() {
        // ghost-structure term: contract one ghost, wedge a ghost pair.
        for c in w.ghost_indices().collect::<Vec<_>>() {
            let (sc, w1) = grassmann::insert_left_word(Gen::Vector(c), w).expect("bit checked");
            for aa in 0..n {
                for bb in (aa + 1)..n {
                    let f = ctx.algebra.structure_const(c, aa, bb);
                    if f.is_zero() {
                        continue;
                    }
                    let pair = GhostWord {
                        ghost: (1 << aa) | (1 << bb),
                        anti: 0,
                    };
                    if let Some((sw, w2)) = grassmann::wedge_words(&pair, &w1) {
                        // summed over both orders of (a, b): -(1/2) * 2 = -1
                        let mut term = coeff.scale(&Scalar::from_rat(-f.clone()));
                        if sc * sw < 0 {
                            term = term.neg();
                        }
                        out.add_term(w2, &term);
                    }
                }
            }
        }
        // antighost adjoint term: replace one antighost slot by its bracket
        // with a new ghost in front.
        let list = anti_list(w);
        for (slot, &b) in list.iter().enumerate() {
            let pull = if slot % 2 == 0 { 1i8 } else { -1 }; // (-1)^(position-1), 1-based
            let rest = w.anti & !(1 << b);
            for aa in 0..n {
                for c in 0..n {
                    let f = ctx.algebra.structure_const(c, aa, b);
                    if f.is_zero() || rest & (1 << c) != 0 {
                        continue;
                    }
                    let below = (rest & ((1u32 << c) - 1)).count_ones();
                    let sort = if below % 2 == 0 { 1i8 } else { -1 };
                    let replaced = GhostWord {
                        ghost: w.ghost,
                        anti: rest | (1 << c),
                    };
                    let lead = GhostWord {
                        ghost: 1 << aa,
                        anti: 0,
                    };
                    if let Some((sw, w2)) = grassmann::wedge_words(&lead, &replaced) {
                        let mut term = coeff.scale(&Scalar::from_rat(f.clone()));
                        if pull * sort * sw < 0 {
                            term = term.neg();
                        }
                        out.add_term(w2, &term);
                    }
                }
            }
        }
        // module term: new ghost in front, action on the function part.
        for aa in 0..n {
            let lead = GhostWord {
                ghost: 1 << aa,
                anti: 0,
            };
            if let Some((sw, w2)) = grassmann::wedge_words(&lead, w) {
                let mut acted = module_action(aa, coeff)?;
                if sw < 0 {
                    acted = acted.neg();
                }
                out.add_term(w2, &acted);
            }
        }
    }
    Ok(out)
}

/// The quantized ghost-raising differential: module action is the star
/// commutator with the momentum map over `i*lambda`.
pub fn ce_quantum(a: &SuperField) -> Result<SuperField> {
    let backend = a.ctx().backend.clone();
    ce_generic(a, &move |idx, f| {
        phasespace::quantum_lie_action(backend.as_ref(), idx, f)
    })
}

/// Its classical limit: module action is the Poisson bracket with the
/// momentum map.
pub fn ce_classical(a: &SuperField) -> Result<SuperField> {
    let backend = a.ctx().backend.clone();
    ce_generic(a, &move |idx, f| {
        Ok(phasespace::classical_lie_action(backend.as_ref(), idx, f))
    })
}

/// The explicit splitting of the kappa-ordered BRST differential:
/// ghost-raising part plus twice the antighost-lowering part, each obtained
/// by conjugating the standard-ordered ones.
pub fn brst_kappa_split(a: &SuperField, kappa: &Rat) -> Result<SuperField> {
    Ok(ce_kappa_explicit(a, kappa)?.add(&koszul_kappa_explicit(a, kappa)?.scale(&Scalar::from_int(2))))
}

/// Conjugated ghost-raising differential, explicit form:
/// `ce + 4 i k L q + 2 k (m_a - m_s) - 2 i k L u + 4 k^2 L^2 c`.
pub fn ce_kappa_explicit(a: &SuperField, kappa: &Rat) -> Result<SuperField> {
    let four_ikl_q = op_q(a)
        .lambda_shift(1)
        .scale(&Scalar::i().scale_rat(&(rat(4) * kappa)));
    let ma_ms = op_ma(a)?
        .sub(&op_ms(a)?)
        .scale(&Scalar::from_rat(rat(2) * kappa));
    let ikl_u = op_u(a)
        .lambda_shift(1)
        .scale(&Scalar::i().scale_rat(&(rat(-2) * kappa)));
    let c_term = op_c(a)
        .lambda_shift(2)
        .scale(&Scalar::from_rat(rat(4) * kappa * kappa));
    Ok(ce_quantum(a)?
        .add(&four_ikl_q)
        .add(&ma_ms)
        .add(&ikl_u)
        .add(&c_term))
}

/// Conjugated antighost-lowering differential, explicit form:
/// `koszul - 2 k L^2 c`.
pub fn koszul_kappa_explicit(a: &SuperField, kappa: &Rat) -> Result<SuperField> {
    let c_term = op_c(a)
        .lambda_shift(2)
        .scale(&Scalar::from_rat(rat(-2) * kappa));
    Ok(koszul_quantum(a)?.add(&c_term))
}

/// The fully expanded kappa differential:
/// `ce + 2((1-k) m_s + k m_a) + 2 i L (2k-1) q - i L (2k-1) u - 4 k (1-k) L^2 c`.
pub fn brst_kappa_expanded(a: &SuperField, kappa: &Rat) -> Result<SuperField> {
    let ms = op_ms(a)?.scale(&Scalar::from_rat(rat(2) * (Rat::one() - kappa.clone())));
    let ma = op_ma(a)?.scale(&Scalar::from_rat(rat(2) * kappa));
    let q = op_q(a)
        .lambda_shift(1)
        .scale(&Scalar::i().scale_rat(&(rat(2) * (rat(2) * kappa - Rat::one()))));
    let u = op_u(a)
        .lambda_shift(1)
        .scale(&Scalar::i().scale_rat(&-(rat(2) * kappa - Rat::one())));
    let c = op_c(a)
        .lambda_shift(2)
        .scale(&Scalar::from_rat(rat(-4) * kappa * (Rat::one() - kappa.clone())));
    Ok(ce_quantum(a)?.add(&ms).add(&ma).add(&q).add(&u).add(&c))
}
