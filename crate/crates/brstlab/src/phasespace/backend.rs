//! The backend trait and its three implementations.

use std::sync::Arc;

use num::{BigInt, One};

use crate::error::{Error, Result};
use crate::phasespace::{Mono, PhaseFunction, Space};
use crate::scalars::{Payload, Rat, Scalar, Series};

/// Coarse backend identity, used by the reduction solver to pick the right
/// averaging projector and by reports for labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BackendKind {
    Torus { perturbed: bool },
    Flat { d: usize, k: usize, weyl: bool },
    Point,
}

/// Capability record of a phase-space backend. All operations are pure;
/// backends are immutable and freely shareable.
pub trait Backend: Send + Sync {
    fn kind(&self) -> BackendKind;

    fn name(&self) -> String;

    fn space(&self) -> Space;

    /// Number of constraint directions. The point backend reports zero and
    /// pairs with a Lie algebra of any dimension (its momentum map is zero).
    fn constraints(&self) -> usize;

    /// Structural claim used for verdict wording; the identity suites verify
    /// it rather than trusting it.
    fn is_strongly_invariant(&self) -> bool;

    /// The a-th component of the (quantum = classical) momentum map.
    fn momentum(&self, a: usize) -> PhaseFunction;

    /// The star product, truncated at `order`.
    fn star(&self, f: &PhaseFunction, g: &PhaseFunction, order: usize) -> Series<PhaseFunction>;

    /// The Poisson bracket.
    fn poisson(&self, f: &PhaseFunction, g: &PhaseFunction) -> PhaseFunction;

    /// Restriction to the constraint surface: constrained momenta go to zero.
    fn restrict(&self, f: &PhaseFunction) -> PhaseFunction;

    /// Geometric prolongation: include a function on the constraint surface
    /// as the constrained-momentum-independent function.
    fn prolong(&self, u: &PhaseFunction) -> Result<PhaseFunction>;

    /// Whether the function has zero degree in every constrained momentum.
    fn is_constraint(&self, f: &PhaseFunction) -> bool;

    /// Exponents of a monomial in the constrained momentum directions.
    fn constrained_multidegree(&self, m: &Mono) -> Vec<i64>;

    /// Lower the a-th constrained exponent by one.
    fn lower_constrained(&self, m: &Mono, a: usize) -> Mono;
}

fn factorial(k: usize) -> Rat {
    let mut acc = BigInt::one();
    for j in 2..=k {
        acc *= BigInt::from(j);
    }
    Rat::from_integer(acc)
}

/// `(-i)^k` — the scalar carried by each derivative pair in the standard
/// ordered exponentials.
fn minus_i_pow(k: usize) -> Scalar {
    match k % 4 {
        0 => Scalar::one(),
        1 => -Scalar::i(),
        2 => -Scalar::one(),
        _ => Scalar::i(),
    }
}

// ---------------------------------------------------------------------------
// torus
// ---------------------------------------------------------------------------

/// The two-torus cotangent bundle backend, optionally perturbed.
pub struct TorusBackend {
    perturbation: Option<PhaseFunction>,
}

impl TorusBackend {
    /// The equivalence operator `S = exp(-lambda P d/dJ)`, which maps the
    /// momentum to `J - lambda P`. The perturbed product is
    /// `f ~* g = S^{-1}(S f * S g)` with `*` the unperturbed product.
    pub fn equivalence_op(&self, f: &PhaseFunction, order: usize) -> Series<PhaseFunction> {
        self.exp_p_dj(&Series::constant(order, f.clone()), -1)
    }

    pub fn equivalence_op_inv(&self, f: &Series<PhaseFunction>) -> Series<PhaseFunction> {
        self.exp_p_dj(f, 1)
    }

    pub fn perturbation(&self) -> Option<&PhaseFunction> {
        self.perturbation.as_ref()
    }

    /// `exp(sign * lambda P d/dJ)` applied coefficient-wise to a series.
    fn exp_p_dj(&self, f: &Series<PhaseFunction>, sign: i64) -> Series<PhaseFunction> {
        let p = match &self.perturbation {
            Some(p) => p,
            None => return f.clone(),
        };
        let order = f.order();
        let mut out = f.clone();
        for (r, fr) in f.coeffs().iter().enumerate() {
            if fr.is_zero() {
                continue;
            }
            let mut dk = fr.clone();
            for k in 1..=(order - r) {
                dk = dk.deriv_poly(3);
                if dk.is_zero() {
                    break;
                }
                let mut coeff = Scalar::from_rat(factorial(k).recip());
                if sign < 0 && k % 2 == 1 {
                    coeff = -coeff;
                }
                let mut pk = dk.clone();
                for _ in 0..k {
                    pk = pk.mul(p);
                }
                out = out.add(&Series::monomial(order, r + k, pk.scale(&coeff)));
            }
        }
        out
    }

    /// The unperturbed product: anti-standard ordered in `(z, p)` and
    /// standard ordered in `(w, J)`, so that right multiplication by `J` is
    /// undeformed.
    fn star_std(&self, f: &PhaseFunction, g: &PhaseFunction, order: usize) -> Series<PhaseFunction> {
        let mut out = Series::zero(order, PhaseFunction::zero(Space::Torus));
        let a_max = (g.max_degree(2).max(0) as usize).min(order);
        // d/dJ^b of f dies past its J-degree; d/dphi^a and d/dpsi^b never
        // terminate on Fourier factors, so the bounds come from the paired
        // polynomial slots.
        let b_max_all = (f.max_degree(3).max(0) as usize).min(order);
        let mut f_b = f.clone(); // d/dJ^b f
        for b in 0..=b_max_all {
            if b > 0 {
                f_b = f_b.deriv_poly(3);
            }
            if f_b.is_zero() {
                break;
            }
            let mut f_ab = f_b.clone(); // d/dphi^a d/dJ^b f
            let mut g_b = g.clone(); // d/dpsi^b g
            for _ in 0..b {
                g_b = g_b.deriv_angle(1);
            }
            if g_b.is_zero() {
                continue;
            }
            let mut g_ab = g_b.clone(); // d/dp^a d/dpsi^b g
            for a in 0..=a_max.min(order - b) {
                if a > 0 {
                    f_ab = f_ab.deriv_angle(0);
                    g_ab = g_ab.deriv_poly(2);
                }
                if f_ab.is_zero() || g_ab.is_zero() {
                    break;
                }
                let k = a + b;
                let coeff =
                    minus_i_pow(k).scale_rat(&(factorial(a).recip() * factorial(b).recip()));
                let term = f_ab.mul(&g_ab).scale(&coeff);
                out = out.add(&Series::monomial(order, k, term));
            }
        }
        out
    }
}

impl Backend for TorusBackend {
    fn kind(&self) -> BackendKind {
        BackendKind::Torus {
            perturbed: self.perturbation.is_some(),
        }
    }

    fn name(&self) -> String {
        match &self.perturbation {
            None => "torus".into(),
            Some(p) => format!("torus-perturbed[P={p}]"),
        }
    }

    fn space(&self) -> Space {
        Space::Torus
    }

    fn constraints(&self) -> usize {
        1
    }

    fn is_strongly_invariant(&self) -> bool {
        self.perturbation.is_none()
    }

    fn momentum(&self, a: usize) -> PhaseFunction {
        assert_eq!(a, 0, "torus backend has a single constraint");
        PhaseFunction::coordinate(Space::Torus, 3)
    }

    fn star(&self, f: &PhaseFunction, g: &PhaseFunction, order: usize) -> Series<PhaseFunction> {
        if self.perturbation.is_none() {
            return self.star_std(f, g, order);
        }
        let sf = self.equivalence_op(f, order);
        let sg = self.equivalence_op(g, order);
        let mut prod = Series::zero(order, PhaseFunction::zero(Space::Torus));
        for (r, fr) in sf.coeffs().iter().enumerate() {
            if fr.is_zero() {
                continue;
            }
            for (s, gs) in sg.coeffs().iter().enumerate() {
                if r + s > order || gs.is_zero() {
                    continue;
                }
                prod = prod.add(
                    &self
                        .star_std(fr, gs, order - r - s)
                        .raised(r + s)
                        .lambda_shift(r + s),
                );
            }
        }
        self.equivalence_op_inv(&prod)
    }

    fn poisson(&self, f: &PhaseFunction, g: &PhaseFunction) -> PhaseFunction {
        let t1 = f.deriv_poly(2).mul(&g.deriv_angle(0));
        let t2 = f.deriv_angle(0).mul(&g.deriv_poly(2));
        let t3 = f.deriv_angle(1).mul(&g.deriv_poly(3));
        let t4 = f.deriv_poly(3).mul(&g.deriv_angle(1));
        t1.add(&t2.neg()).add(&t3).add(&t4.neg())
    }

    fn restrict(&self, f: &PhaseFunction) -> PhaseFunction {
        let mut out = PhaseFunction::zero(Space::Torus);
        for (m, c) in f.terms() {
            if m[3] == 0 {
                out.add_term(m.clone(), c);
            }
        }
        out
    }

    fn prolong(&self, u: &PhaseFunction) -> Result<PhaseFunction> {
        if !self.is_constraint(u) {
            return Err(Error::config(
                "prolongation input depends on the constrained momentum",
            ));
        }
        Ok(u.clone())
    }

    fn is_constraint(&self, f: &PhaseFunction) -> bool {
        f.terms().all(|(m, _)| m[3] == 0)
    }

    fn constrained_multidegree(&self, m: &Mono) -> Vec<i64> {
        vec![m[3]]
    }

    fn lower_constrained(&self, m: &Mono, a: usize) -> Mono {
        assert_eq!(a, 0);
        let mut out = m.clone();
        out[3] -= 1;
        out
    }
}

/// The unperturbed torus backend.
pub fn torus() -> Arc<dyn Backend> {
    Arc::new(TorusBackend { perturbation: None })
}

/// The perturbed torus backend; the perturbation must depend on the
/// unconstrained momentum `p` alone.
pub fn torus_perturbed(p: PhaseFunction) -> Result<Arc<dyn Backend>> {
    if p.space() != Space::Torus {
        return Err(Error::config("perturbation must live on the torus"));
    }
    if p.terms().any(|(m, _)| m[0] != 0 || m[1] != 0 || m[3] != 0) {
        return Err(Error::config(
            "perturbation must be a function of the momentum p alone",
        ));
    }
    Ok(Arc::new(TorusBackend {
        perturbation: Some(p),
    }))
}

// ---------------------------------------------------------------------------
// flat
// ---------------------------------------------------------------------------

/// Polynomial functions on the cotangent bundle of `R^d` with an abelian
/// rank-k constraint set `p_{d-k+1}, ..., p_d`.
pub struct FlatBackend {
    d: usize,
    k: usize,
    weyl: bool,
}

/// All multi-indices with the given per-position bounds and total bound.
fn multi_indices(bounds: &[usize], total: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &b in bounds {
        let mut next = Vec::new();
        for prefix in &out {
            let used: usize = prefix.iter().sum();
            for v in 0..=b.min(total.saturating_sub(used)) {
                let mut row = prefix.clone();
                row.push(v);
                next.push(row);
            }
        }
        out = next;
    }
    out
}

impl FlatBackend {
    fn deriv_multi(&self, f: &PhaseFunction, base: usize, gamma: &[usize]) -> PhaseFunction {
        let mut out = f.clone();
        for (j, &g) in gamma.iter().enumerate() {
            for _ in 0..g {
                out = out.deriv_poly(base + j);
                if out.is_zero() {
                    return out;
                }
            }
        }
        out
    }
}

impl Backend for FlatBackend {
    fn kind(&self) -> BackendKind {
        BackendKind::Flat {
            d: self.d,
            k: self.k,
            weyl: self.weyl,
        }
    }

    fn name(&self) -> String {
        if self.weyl {
            format!("flat:{},{} (weyl)", self.d, self.k)
        } else {
            format!("flat:{},{}", self.d, self.k)
        }
    }

    fn space(&self) -> Space {
        Space::Flat { d: self.d }
    }

    fn constraints(&self) -> usize {
        self.k
    }

    fn is_strongly_invariant(&self) -> bool {
        true
    }

    fn momentum(&self, a: usize) -> PhaseFunction {
        assert!(a < self.k);
        PhaseFunction::coordinate(self.space(), 2 * self.d - self.k + a)
    }

    fn star(&self, f: &PhaseFunction, g: &PhaseFunction, order: usize) -> Series<PhaseFunction> {
        let d = self.d;
        let space = self.space();
        let mut out = Series::zero(order, PhaseFunction::zero(space));
        let g_bounds: Vec<usize> = (0..d)
            .map(|j| (g.max_degree(d + j).max(0) as usize).min(order))
            .collect();
        if !self.weyl {
            for gamma in multi_indices(&g_bounds, order) {
                let k: usize = gamma.iter().sum();
                let df = self.deriv_multi(f, 0, &gamma);
                if df.is_zero() {
                    continue;
                }
                let dg = self.deriv_multi(g, d, &gamma);
                if dg.is_zero() {
                    continue;
                }
                let denom: Rat = gamma.iter().map(|&v| factorial(v)).product();
                let coeff = minus_i_pow(k).scale_rat(&denom.recip());
                out = out.add(&Series::monomial(order, k, df.mul(&dg).scale(&coeff)));
            }
        } else {
            let f_bounds: Vec<usize> = (0..d)
                .map(|j| (f.max_degree(d + j).max(0) as usize).min(order))
                .collect();
            let half = Rat::new(1.into(), 2.into());
            for gamma in multi_indices(&g_bounds, order) {
                let kg: usize = gamma.iter().sum();
                let df1 = self.deriv_multi(f, 0, &gamma);
                if df1.is_zero() {
                    continue;
                }
                let dg1 = self.deriv_multi(g, d, &gamma);
                if dg1.is_zero() {
                    continue;
                }
                for delta in multi_indices(&f_bounds, order - kg) {
                    let kd: usize = delta.iter().sum();
                    let df = self.deriv_multi(&df1, d, &delta);
                    if df.is_zero() {
                        continue;
                    }
                    let dg = self.deriv_multi(&dg1, 0, &delta);
                    if dg.is_zero() {
                        continue;
                    }
                    let k = kg + kd;
                    let mut denom: Rat = gamma.iter().map(|&v| factorial(v)).product();
                    denom *= delta.iter().map(|&v| factorial(v)).product::<Rat>();
                    let mut coeff = minus_i_pow(k)
                        .scale_rat(&(num::pow::pow(half.clone(), k) * denom.recip()));
                    if kd % 2 == 1 {
                        coeff = -coeff;
                    }
                    out = out.add(&Series::monomial(order, k, df.mul(&dg).scale(&coeff)));
                }
            }
        }
        out
    }

    fn poisson(&self, f: &PhaseFunction, g: &PhaseFunction) -> PhaseFunction {
        let d = self.d;
        let mut out = PhaseFunction::zero(self.space());
        for j in 0..d {
            out = out
                .add(&f.deriv_poly(d + j).mul(&g.deriv_poly(j)))
                .add(&f.deriv_poly(j).mul(&g.deriv_poly(d + j)).neg());
        }
        out
    }

    fn restrict(&self, f: &PhaseFunction) -> PhaseFunction {
        let mut out = PhaseFunction::zero(self.space());
        for (m, c) in f.terms() {
            if (0..self.k).all(|a| m[2 * self.d - self.k + a] == 0) {
                out.add_term(m.clone(), c);
            }
        }
        out
    }

    fn prolong(&self, u: &PhaseFunction) -> Result<PhaseFunction> {
        if !self.is_constraint(u) {
            return Err(Error::config(
                "prolongation input depends on a constrained momentum",
            ));
        }
        Ok(u.clone())
    }

    fn is_constraint(&self, f: &PhaseFunction) -> bool {
        f.terms()
            .all(|(m, _)| (0..self.k).all(|a| m[2 * self.d - self.k + a] == 0))
    }

    fn constrained_multidegree(&self, m: &Mono) -> Vec<i64> {
        (0..self.k).map(|a| m[2 * self.d - self.k + a]).collect()
    }

    fn lower_constrained(&self, m: &Mono, a: usize) -> Mono {
        let mut out = m.clone();
        out[2 * self.d - self.k + a] -= 1;
        out
    }
}

/// A flat backend with `1 <= k <= d` constraints.
pub fn flat(d: usize, k: usize) -> Result<Arc<dyn Backend>> {
    if d == 0 || k == 0 || k > d {
        return Err(Error::config("flat backend needs 1 <= k <= d"));
    }
    Ok(Arc::new(FlatBackend { d, k, weyl: false }))
}

/// The Weyl-ordered variant of the flat backend, for cross-checks.
pub fn flat_weyl(d: usize, k: usize) -> Result<Arc<dyn Backend>> {
    if d == 0 || k == 0 || k > d {
        return Err(Error::config("flat backend needs 1 <= k <= d"));
    }
    Ok(Arc::new(FlatBackend { d, k, weyl: true }))
}

// ---------------------------------------------------------------------------
// point
// ---------------------------------------------------------------------------

/// The one-point phase space: constants only, zero momentum map. Pairs with
/// any Lie algebra so the full nonabelian ghost sector can be tested without
/// a nonabelian Hamiltonian star product.
pub struct PointBackend;

impl Backend for PointBackend {
    fn kind(&self) -> BackendKind {
        BackendKind::Point
    }

    fn name(&self) -> String {
        "point".into()
    }

    fn space(&self) -> Space {
        Space::Point
    }

    fn constraints(&self) -> usize {
        0
    }

    fn is_strongly_invariant(&self) -> bool {
        true
    }

    fn momentum(&self, _a: usize) -> PhaseFunction {
        PhaseFunction::zero(Space::Point)
    }

    fn star(&self, f: &PhaseFunction, g: &PhaseFunction, order: usize) -> Series<PhaseFunction> {
        Series::constant(order, f.mul(g))
    }

    fn poisson(&self, _f: &PhaseFunction, _g: &PhaseFunction) -> PhaseFunction {
        PhaseFunction::zero(Space::Point)
    }

    fn restrict(&self, f: &PhaseFunction) -> PhaseFunction {
        f.clone()
    }

    fn prolong(&self, u: &PhaseFunction) -> Result<PhaseFunction> {
        Ok(u.clone())
    }

    fn is_constraint(&self, _f: &PhaseFunction) -> bool {
        true
    }

    fn constrained_multidegree(&self, _m: &Mono) -> Vec<i64> {
        vec![]
    }

    fn lower_constrained(&self, m: &Mono, _a: usize) -> Mono {
        m.clone()
    }
}

pub fn point() -> Arc<dyn Backend> {
    Arc::new(PointBackend)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> PhaseFunction {
        PhaseFunction::coordinate(Space::Torus, 0)
    }
    fn w() -> PhaseFunction {
        PhaseFunction::coordinate(Space::Torus, 1)
    }
    fn p() -> PhaseFunction {
        PhaseFunction::coordinate(Space::Torus, 2)
    }
    fn j() -> PhaseFunction {
        PhaseFunction::coordinate(Space::Torus, 3)
    }

    #[test]
    fn torus_star_values() {
        let t = torus();
        // z * p = zp + L z
        let zp = t.star(&z(), &p(), 3);
        assert_eq!(zp.coeff(0), &z().mul(&p()));
        assert_eq!(zp.coeff(1), &z());
        assert!(zp.coeff(2).is_zero());
        // J * w = Jw + L w, one-sided
        let jw = t.star(&j(), &w(), 3);
        assert_eq!(jw.coeff(0), &j().mul(&w()));
        assert_eq!(jw.coeff(1), &w());
        let wj = t.star(&w(), &j(), 3);
        assert_eq!(wj.coeff(0), &w().mul(&j()));
        assert!(wj.coeff(1).is_zero());
        // 1 * f = f
        let f = z().mul(&w()).add(&p());
        assert_eq!(
            t.star(&PhaseFunction::one(Space::Torus), &f, 2),
            Series::constant(2, f.clone())
        );
        assert_eq!(t.star(&f, &PhaseFunction::one(Space::Torus), 2), Series::constant(2, f));
    }

    #[test]
    fn torus_strong_invariance_on_monomials() {
        let t = torus();
        for f in [w(), p(), z().mul(&w().mul(&w()).mul(&w())).mul(&p()).mul(&j())] {
            let comm = t.star(&j(), &f, 3).sub(&t.star(&f, &j(), 3));
            // (1/(i L)) [J, f] = {J, f} = -d/dpsi f
            let lhs = comm.lambda_divide().unwrap().scale(&-Scalar::i());
            let expect = f.deriv_angle(1).neg();
            assert_eq!(lhs, Series::constant(2, expect.clone()));
            assert_eq!(t.poisson(&j(), &f), expect);
        }
    }

    #[test]
    fn perturbed_torus_values() {
        let tp = torus_perturbed(p()).unwrap();
        let t = match tp.kind() {
            BackendKind::Torus { perturbed } => assert!(perturbed),
            _ => panic!(),
        };
        let _ = t;
        // the equivalence operator sends J to J - L p
        let tb = TorusBackend {
            perturbation: Some(p()),
        };
        let sj = tb.equivalence_op(&j(), 2);
        assert_eq!(sj.coeff(0), &j());
        assert_eq!(sj.coeff(1), &p().neg());
        assert!(sj.coeff(2).is_zero());
        // right multiplication by J: f ~* J = f J + i L^2 d/dphi f  for P = p
        let f = z();
        let fj = tp.star(&f, &j(), 3);
        assert_eq!(fj.coeff(0), &f.mul(&j()));
        assert!(fj.coeff(1).is_zero());
        assert_eq!(fj.coeff(2), &f.deriv_angle(0).scale(&Scalar::i()));
        // perturbation must be a function of p alone
        assert!(torus_perturbed(z()).is_err());
    }

    #[test]
    fn flat_star_values() {
        let b = flat(2, 1).unwrap();
        let space = Space::Flat { d: 2 };
        let x1 = PhaseFunction::coordinate(space, 0);
        let p1 = PhaseFunction::coordinate(space, 2);
        // x1 * p1 = x1 p1 - i L
        let s = b.star(&x1, &p1, 2);
        assert_eq!(s.coeff(0), &x1.mul(&p1));
        assert_eq!(s.coeff(1), &PhaseFunction::constant(space, -Scalar::i()));
        // p1 * x1 = p1 x1 exactly (one-sided ordering)
        let s2 = b.star(&p1, &x1, 2);
        assert_eq!(s2.coeff(0), &p1.mul(&x1));
        assert!(s2.coeff(1).is_zero());
        // constraint membership: restrict(p2) = 0 for k = 1
        let p2 = PhaseFunction::coordinate(space, 3);
        assert!(b.restrict(&p2).is_zero());
        assert!(!b.is_constraint(&p2));
        assert!(b.is_constraint(&p1));
    }

    #[test]
    fn flat_weyl_strong_invariance() {
        let b = flat_weyl(2, 1).unwrap();
        let space = Space::Flat { d: 2 };
        let f = PhaseFunction::coordinate(space, 0)
            .mul(&PhaseFunction::coordinate(space, 2))
            .mul(&PhaseFunction::coordinate(space, 1));
        let jm = b.momentum(0);
        let comm = b.star(&jm, &f, 3).sub(&b.star(&f, &jm, 3));
        let lhs = comm.lambda_divide().unwrap().scale(&-Scalar::i());
        assert_eq!(lhs, Series::constant(2, b.poisson(&jm, &f)));
    }

    #[test]
    fn point_backend_is_trivial() {
        let b = point();
        let f = PhaseFunction::constant(Space::Point, Scalar::from_int(3));
        let g = PhaseFunction::constant(Space::Point, Scalar::i());
        assert_eq!(b.star(&f, &g, 2), Series::constant(2, f.mul(&g)));
        assert!(b.momentum(5).is_zero());
    }

    #[test]
    fn flat_star_associativity_spot() {
        let space = Space::Flat { d: 2 };
        for b in [flat(2, 2).unwrap(), flat_weyl(2, 2).unwrap()] {
            let f = PhaseFunction::coordinate(space, 0).mul(&PhaseFunction::coordinate(space, 2));
            let g = PhaseFunction::coordinate(space, 2).add(&PhaseFunction::coordinate(space, 1));
            let h = PhaseFunction::coordinate(space, 0).mul(&PhaseFunction::coordinate(space, 3));
            let fg_h = crate::phasespace::star_series(
                b.as_ref(),
                &b.star(&f, &g, 4),
                &Series::constant(4, h.clone()),
            )
            .unwrap();
            let f_gh = crate::phasespace::star_series(
                b.as_ref(),
                &Series::constant(4, f.clone()),
                &b.star(&g, &h, 4),
            )
            .unwrap();
            assert_eq!(fg_h, f_gh, "{}", b.name());
        }
    }
}
