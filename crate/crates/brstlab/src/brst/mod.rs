//! The BRST complex proper.
//!
//! A [`SuperField`] is an element of the ghost-extended function algebra: a
//! map from exterior-algebra words to function series, tied to a context
//! pairing a Lie algebra with a phase-space backend at a fixed truncation
//! order. This module provides the graded products (wedge-pointwise and the
//! kappa-ordered star), the super Poisson bracket, the charges, and the
//! operator family; the deformed augmentation and cohomology maps live in
//! [`crate::brst::augmented`].

mod augmented;
mod ops;

pub use augmented::{AugmentedField, ComplexOps, FnOp, HomotopyVariant};
pub use ops::{
    brst_kappa, brst_kappa_split, ce_classical, ce_quantum, ghost_number_op, ghost_number_op_ad,
    koszul_classical, koszul_quantum, laplacian_field, op_c, op_c_basis, op_ms, op_ma, op_q,
    op_q_basis, op_u, op_u_ad, s_transform, theta_kappa,
};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grassmann::{self, Gen, GhostWord, GrassElement};
use crate::liealg::LieAlgebra;
use crate::phasespace::{self, Backend, BackendKind, PhaseFunction, Space};
use crate::scalars::{Payload, Rat, Scalar, Series};

/// A Lie algebra paired with a phase-space backend at a truncation order.
pub struct Context {
    pub algebra: LieAlgebra,
    pub backend: Arc<dyn Backend>,
    pub order: usize,
}

impl Context {
    /// Pair an algebra with a backend. Backends with constraints require the
    /// algebra to be abelian of matching dimension (their momentum maps
    /// commute); the point backend pairs with anything.
    pub fn new(algebra: LieAlgebra, backend: Arc<dyn Backend>, order: usize) -> Result<Arc<Self>> {
        if !algebra.validate().is_valid() {
            return Err(Error::config(format!(
                "invalid Lie algebra: {}",
                algebra.validate()
            )));
        }
        if backend.kind() != BackendKind::Point {
            if backend.constraints() != algebra.dim() {
                return Err(Error::config(format!(
                    "backend `{}` has {} constraints but the algebra has dimension {}",
                    backend.name(),
                    backend.constraints(),
                    algebra.dim()
                )));
            }
            if !algebra.is_abelian() {
                return Err(Error::config(
                    "constrained backends pair with abelian algebras only",
                ));
            }
        }
        Ok(Arc::new(Context {
            algebra,
            backend,
            order,
        }))
    }

    pub fn n(&self) -> usize {
        self.algebra.dim()
    }

    pub fn space(&self) -> Space {
        self.backend.space()
    }

    pub fn with_order(self: &Arc<Self>, order: usize) -> Arc<Context> {
        Arc::new(Context {
            algebra: self.algebra.clone(),
            backend: self.backend.clone(),
            order,
        })
    }

    pub fn zero_series(&self) -> Series<PhaseFunction> {
        Series::zero(self.order, PhaseFunction::zero(self.space()))
    }

    fn same_as(&self, other: &Context) -> bool {
        self.order == other.order
            && self.n() == other.n()
            && self.backend.name() == other.backend.name()
    }

    pub fn label(&self) -> String {
        format!(
            "{} x {} @order {}",
            self.backend.name(),
            self.algebra.name(),
            self.order
        )
    }
}

/// An element of the ghost-extended function algebra: word -> function
/// series. No zero series are stored.
#[derive(Clone)]
pub struct SuperField {
    ctx: Arc<Context>,
    terms: BTreeMap<GhostWord, Series<PhaseFunction>>,
}

impl PartialEq for SuperField {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_as(&other.ctx) && self.terms == other.terms
    }
}

impl SuperField {
    pub fn zero(ctx: &Arc<Context>) -> Self {
        SuperField {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<Context>) -> Self {
        SuperField::from_function(ctx, Series::constant(ctx.order, PhaseFunction::one(ctx.space())))
    }

    pub fn from_term(ctx: &Arc<Context>, word: GhostWord, coeff: Series<PhaseFunction>) -> Self {
        assert_eq!(coeff.order(), ctx.order, "series order must match context");
        let mut out = SuperField::zero(ctx);
        out.add_term(word, &coeff);
        out
    }

    /// A ghost-free field carrying a plain function series.
    pub fn from_function(ctx: &Arc<Context>, f: Series<PhaseFunction>) -> Self {
        SuperField::from_term(ctx, GhostWord::EMPTY, f)
    }

    /// Embed a coefficient-only exterior element, tensoring with 1.
    pub fn from_grass(ctx: &Arc<Context>, g: &GrassElement) -> Self {
        assert_eq!(g.order(), ctx.order);
        assert_eq!(g.n(), ctx.n());
        let mut out = SuperField::zero(ctx);
        for (w, s) in g.terms() {
            let f = s.map(|c| PhaseFunction::constant(ctx.space(), c.clone()));
            out.add_term(*w, &f);
        }
        out
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.ctx.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GhostWord, &Series<PhaseFunction>)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &GhostWord) -> Series<PhaseFunction> {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| self.ctx.zero_series())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: GhostWord, coeff: &Series<PhaseFunction>) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(existing) => {
                let sum = existing.add(coeff);
                if sum.is_zero() {
                    self.terms.remove(&word);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(word, coeff.clone());
            }
        }
    }

    fn check_ctx(&self, other: &SuperField) -> Result<()> {
        if !self.ctx.same_as(&other.ctx) {
            return Err(Error::config(format!(
                "context mismatch: {} vs {}",
                self.ctx.label(),
                other.ctx.label()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &SuperField) -> SuperField {
        debug_assert!(self.check_ctx(other).is_ok());
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, c);
        }
        out
    }

    pub fn sub(&self, other: &SuperField) -> SuperField {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SuperField {
        self.map_coeffs(|s| s.neg())
    }

    pub fn scale(&self, s: &Scalar) -> SuperField {
        if s.is_zero() {
            return SuperField::zero(&self.ctx);
        }
        self.map_coeffs(|c| c.scale(s))
    }

    pub fn lambda_shift(&self, k: usize) -> SuperField {
        self.map_coeffs(|c| c.lambda_shift(k))
    }

    /// Zero-pad every coefficient series to a higher order (exact for
    /// parameter-polynomial data; the internal-order contract of the
    /// operator pipelines).
    pub fn raised(&self, by: usize) -> SuperField {
        let ctx = self.ctx.with_order(self.ctx.order + by);
        let mut out = SuperField::zero(&ctx);
        for (w, c) in &self.terms {
            out.add_term(*w, &c.raised(by));
        }
        out
    }

    pub fn truncated(&self, order: usize) -> SuperField {
        let ctx = self.ctx.with_order(order);
        let mut out = SuperField::zero(&ctx);
        for (w, c) in &self.terms {
            out.add_term(*w, &c.truncated(order));
        }
        out
    }

    /// Division by the formal parameter; every term must have a vanishing
    /// classical part, otherwise the offending word is reported.
    pub fn lambda_divide(&self) -> Result<SuperField> {
        let ctx = self.ctx.with_order(
            self.ctx
                .order
                .checked_sub(1)
                .ok_or_else(|| Error::Division("cannot lower a zero-order field".into()))?,
        );
        let mut out = SuperField::zero(&ctx);
        for (w, c) in &self.terms {
            let divided = c.lambda_divide().map_err(|_| {
                Error::Division(format!(
                    "nonzero classical term on word {} in parameter division",
                    w.text()
                ))
            })?;
            out.add_term(*w, &divided);
        }
        Ok(out)
    }

    fn map_coeffs(&self, f: impl Fn(&Series<PhaseFunction>) -> Series<PhaseFunction>) -> SuperField {
        let mut out = SuperField::zero(&self.ctx);
        for (w, c) in &self.terms {
            out.add_term(*w, &f(c));
        }
        out
    }

    /// Full-word left insertion of a generator, extended linearly.
    pub fn insert(&self, g: Gen) -> SuperField {
        let mut out = SuperField::zero(&self.ctx);
        for (w, c) in &self.terms {
            if let Some((sign, w2)) = grassmann::insert_left_word(g, w) {
                out.add_term(w2, &if sign < 0 { c.neg() } else { c.clone() });
            }
        }
        out
    }

    /// Left wedge by a fixed word.
    pub fn wedge_left(&self, word: GhostWord) -> SuperField {
        let mut out = SuperField::zero(&self.ctx);
        for (w, c) in &self.terms {
            if let Some((sign, w2)) = grassmann::wedge_words(&word, w) {
                out.add_term(w2, &if sign < 0 { c.neg() } else { c.clone() });
            }
        }
        out
    }

    /// Split into even- and odd-parity parts.
    pub fn parity_split(&self) -> (SuperField, SuperField) {
        let mut even = SuperField::zero(&self.ctx);
        let mut odd = SuperField::zero(&self.ctx);
        for (w, c) in &self.terms {
            if w.is_odd() {
                odd.add_term(*w, c);
            } else {
                even.add_term(*w, c);
            }
        }
        (even, odd)
    }

    /// The part of the field at the given antighost degree.
    pub fn antighost_component(&self, i: u32) -> SuperField {
        let mut out = SuperField::zero(&self.ctx);
        for (w, c) in &self.terms {
            if w.anti_degree() == i {
                out.add_term(*w, c);
            }
        }
        out
    }

    pub fn max_antighost_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|w| w.anti_degree())
            .max()
            .unwrap_or(0)
    }

    /// Scale each term by its ghost number (the grading operator).
    pub fn ghost_grading(&self) -> SuperField {
        let mut out = SuperField::zero(&self.ctx);
        for (w, c) in &self.terms {
            let gnum = w.ghost_number();
            if gnum == 0 {
                continue;
            }
            out.add_term(*w, &c.scale(&Scalar::from_int(gnum)));
        }
        out
    }
}

/// Cauchy product of a scalar series with a function series.
fn mul_scalar_series(f: &Series<PhaseFunction>, s: &Series<Scalar>) -> Series<PhaseFunction> {
    assert_eq!(f.order(), s.order());
    let order = f.order();
    let mut out = Series::zero(order, f.coeff(0).zero_like());
    for (r, sc) in s.coeffs().iter().enumerate() {
        if sc.is_zero() {
            continue;
        }
        for (t, fc) in f.coeffs().iter().enumerate() {
            if r + t > order || fc.is_zero() {
                continue;
            }
            out = out.add(&Series::monomial(order, r + t, fc.scale(sc)));
        }
    }
    out
}

/// The kappa-ordered product: the ordered Clifford product on the word part
/// tensored with the backend star product on the function part.
pub fn star_kappa(a: &SuperField, b: &SuperField, kappa: &Rat) -> Result<SuperField> {
    a.check_ctx(b)?;
    let ctx = &a.ctx;
    let order = ctx.order;
    let n = ctx.n();
    let mut out = SuperField::zero(ctx);
    for (w1, f1) in &a.terms {
        let g1 = GrassElement::from_term(n, order, *w1, Series::scalar_one(order));
        for (w2, f2) in &b.terms {
            let g2 = GrassElement::from_term(n, order, *w2, Series::scalar_one(order));
            let cliff = grassmann::cliff(&g1, &g2, kappa);
            if cliff.is_zero() {
                continue;
            }
            let fprod = phasespace::star_series(ctx.backend.as_ref(), f1, f2)?;
            if fprod.is_zero() {
                continue;
            }
            for (w, s) in cliff.terms() {
                out.add_term(*w, &mul_scalar_series(&fprod, s));
            }
        }
    }
    Ok(out)
}

/// The classical product: wedge on words, pointwise on functions.
pub fn wedge_field(a: &SuperField, b: &SuperField) -> Result<SuperField> {
    a.check_ctx(b)?;
    let mut out = SuperField::zero(&a.ctx);
    for (w1, f1) in &a.terms {
        for (w2, f2) in &b.terms {
            if let Some((sign, w)) = grassmann::wedge_words(w1, w2) {
                let mut c = f1.mul(f2)?;
                if sign < 0 {
                    c = c.neg();
                }
                out.add_term(w, &c);
            }
        }
    }
    Ok(out)
}

/// The graded star commutator `b * x - (-1)^(|b||x|) x * b` for a
/// parity-homogeneous left entry, extended linearly over the right entry.
pub fn star_commutator(
    b: &SuperField,
    b_odd: bool,
    x: &SuperField,
    kappa: &Rat,
) -> Result<SuperField> {
    let (x_even, x_odd) = x.parity_split();
    let mut out = SuperField::zero(&x.ctx);
    if !x_even.is_zero() {
        out = out.add(&star_kappa(b, &x_even, kappa)?.sub(&star_kappa(&x_even, b, kappa)?));
    }
    if !x_odd.is_zero() {
        let right = star_kappa(&x_odd, b, kappa)?;
        let left = star_kappa(b, &x_odd, kappa)?;
        out = out.add(&if b_odd { left.add(&right) } else { left.sub(&right) });
    }
    Ok(out)
}

/// Poisson-bracket of function series, bilinear with parameter weights.
pub fn poisson_series(
    backend: &dyn Backend,
    f: &Series<PhaseFunction>,
    g: &Series<PhaseFunction>,
) -> Series<PhaseFunction> {
    assert_eq!(f.order(), g.order());
    let order = f.order();
    let mut out = Series::zero(order, f.coeff(0).zero_like());
    for (r, fr) in f.coeffs().iter().enumerate() {
        if fr.is_zero() {
            continue;
        }
        for (s, gs) in g.coeffs().iter().enumerate() {
            if r + s > order || gs.is_zero() {
                continue;
            }
            out = out.add(&Series::monomial(order, r + s, backend.poisson(fr, gs)));
        }
    }
    out
}

/// The super Poisson bracket on the extended algebra: word bracket against
/// pointwise product plus wedge against the function bracket.
pub fn super_poisson(a: &SuperField, b: &SuperField) -> Result<SuperField> {
    a.check_ctx(b)?;
    let ctx = &a.ctx;
    let order = ctx.order;
    let n = ctx.n();
    let mut out = SuperField::zero(ctx);
    for (w1, f1) in &a.terms {
        let g1 = GrassElement::from_term(n, order, *w1, Series::scalar_one(order));
        for (w2, f2) in &b.terms {
            // wedge part with the function bracket
            if let Some((sign, w)) = grassmann::wedge_words(w1, w2) {
                let mut c = poisson_series(ctx.backend.as_ref(), f1, f2);
                if sign < 0 {
                    c = c.neg();
                }
                out.add_term(w, &c);
            }
            // word bracket with the pointwise product
            let g2 = GrassElement::from_term(n, order, *w2, Series::scalar_one(order));
            let wb = grassmann::grass_poisson(&g1, &g2);
            if !wb.is_zero() {
                let fprod = f1.mul(f2)?;
                for (w, s) in wb.terms() {
                    out.add_term(*w, &mul_scalar_series(&fprod, s));
                }
            }
        }
    }
    Ok(out)
}

impl fmt::Display for SuperField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, "  +  ")?;
            }
            first = false;
            write!(f, "{} (x) [{}]", w.text(), c)?;
        }
        Ok(())
    }
}
