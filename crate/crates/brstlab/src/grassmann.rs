//! The exterior algebra over ghosts and antighosts, with series coefficients.
//!
//! Words are bitmask pairs: a ghost mask selecting which dual-basis
//! (ghost) generators are present and an antighost mask selecting which
//! basis (antighost) generators are present. The canonical factor order is
//! ghosts before antighosts, indices strictly ascending within each block;
//! every sign is computed by transposition counting against that order.
//!
//! Sign conventions (pinned by the identity suites — associativity of the
//! ordered products, the equivalence transformation law, and the Clifford
//! relation on one-forms — and recorded here as the operator dictionary):
//! - insertions act as odd anti-derivations from the left;
//! - inserting a basis vector contracts the matching ghost generator with
//!   sign `(-1)^(number of ghost factors before it)`;
//! - inserting a dual-basis vector contracts the matching antighost
//!   generator with sign `(-1)^(ghost degree) * (-1)^(number of antighost
//!   factors before it)`;
//! - the right insertion on a degree-m word is `-(-1)^m` times the left one.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::scalars::{Rat, Scalar, Series};

/// A canonical exterior-algebra word: ghost mask and antighost mask.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct GhostWord {
    pub ghost: u32,
    pub anti: u32,
}

impl GhostWord {
    pub const EMPTY: GhostWord = GhostWord { ghost: 0, anti: 0 };

    pub fn ghost_degree(&self) -> u32 {
        self.ghost.count_ones()
    }

    pub fn anti_degree(&self) -> u32 {
        self.anti.count_ones()
    }

    pub fn degree(&self) -> u32 {
        self.ghost_degree() + self.anti_degree()
    }

    /// Ghost number: ghost degree minus antighost degree.
    pub fn ghost_number(&self) -> i64 {
        self.ghost_degree() as i64 - self.anti_degree() as i64
    }

    /// True for odd total degree.
    pub fn is_odd(&self) -> bool {
        self.degree() % 2 == 1
    }

    /// Indices (0-based, ascending) of the ghost factors.
    pub fn ghost_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..32).filter(|a| self.ghost & (1 << a) != 0)
    }

    pub fn anti_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..32).filter(|a| self.anti & (1 << a) != 0)
    }

    /// Textual form, e.g. `e^1^e^2^e_3`; the empty word prints as `1`.
    pub fn text(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for a in self.ghost_indices() {
            parts.push(format!("e^{}", a + 1));
        }
        for a in self.anti_indices() {
            parts.push(format!("e_{}", a + 1));
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("^")
        }
    }

    /// Parse the textual form. Factors are caret-separated, each `e^<a>`
    /// (ghost) or `e_<a>` (antighost) with 1-based index; repeated factors
    /// are rejected. `1` denotes the empty word.
    pub fn parse(s: &str, n: usize) -> Result<(i8, GhostWord)> {
        let s = s.trim();
        if s == "1" {
            return Ok((1, GhostWord::EMPTY));
        }
        let mut sign = 1i8;
        let mut word = GhostWord::EMPTY;
        let mut rest = s;
        loop {
            let body = rest
                .strip_prefix('e')
                .ok_or_else(|| Error::Parse(format!("expected `e` in word `{s}`")))?;
            let (is_ghost, body) = if let Some(t) = body.strip_prefix('^') {
                (true, t)
            } else if let Some(t) = body.strip_prefix('_') {
                (false, t)
            } else {
                return Err(Error::Parse(format!("expected `^` or `_` after `e` in `{s}`")));
            };
            let digits: String = body.chars().take_while(|c| c.is_ascii_digit()).collect();
            if digits.is_empty() {
                return Err(Error::Parse(format!("missing generator index in `{s}`")));
            }
            let idx: usize = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad index in `{s}`")))?;
            if idx == 0 || idx > n {
                return Err(Error::Parse(format!(
                    "generator index {idx} out of range 1..={n}"
                )));
            }
            let factor = if is_ghost {
                GhostWord {
                    ghost: 1 << (idx - 1),
                    anti: 0,
                }
            } else {
                GhostWord {
                    ghost: 0,
                    anti: 1 << (idx - 1),
                }
            };
            match wedge_words(&word, &factor) {
                Some((s2, w2)) => {
                    sign *= s2;
                    word = w2;
                }
                None => return Err(Error::Parse(format!("repeated generator in `{s}`"))),
            }
            rest = &body[digits.len()..];
            if rest.is_empty() {
                return Ok((sign, word));
            }
            rest = rest
                .strip_prefix('^')
                .ok_or_else(|| Error::Parse(format!("expected `^` separator in `{s}`")))?;
        }
    }
}

/// A basis generator of the underlying vector space or its dual.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Gen {
    /// `e_a`: basis vector (contracts the ghost `e^a`). 0-based index.
    Vector(usize),
    /// `e^a`: dual basis vector (contracts the antighost `e_a`). 0-based.
    Covector(usize),
}

/// Count of inversion pairs produced by appending the `incoming` ascending
/// run after the `existing` ascending run and resorting.
fn inversions(existing: u32, incoming: u32) -> u32 {
    let mut count = 0;
    for b in 0..32 {
        if incoming & (1 << b) != 0 {
            count += (existing >> (b + 1)).count_ones();
        }
    }
    count
}

/// Wedge of two canonical words: `None` on a repeated generator, otherwise
/// the Koszul sign and the merged word.
pub fn wedge_words(w1: &GhostWord, w2: &GhostWord) -> Option<(i8, GhostWord)> {
    if w1.ghost & w2.ghost != 0 || w1.anti & w2.anti != 0 {
        return None;
    }
    let mut swaps = inversions(w1.ghost, w2.ghost) + inversions(w1.anti, w2.anti);
    // each ghost of w2 moves past every antighost of w1
    swaps += w2.ghost.count_ones() * w1.anti.count_ones();
    let sign = if swaps % 2 == 0 { 1 } else { -1 };
    Some((
        sign,
        GhostWord {
            ghost: w1.ghost | w2.ghost,
            anti: w1.anti | w2.anti,
        },
    ))
}

/// Left insertion of a generator into a word (odd anti-derivation).
pub fn insert_left_word(g: Gen, w: &GhostWord) -> Option<(i8, GhostWord)> {
    match g {
        Gen::Vector(a) => {
            let bit = 1u32 << a;
            if w.ghost & bit == 0 {
                return None;
            }
            let crossed = (w.ghost & (bit - 1)).count_ones();
            let sign = if crossed % 2 == 0 { 1 } else { -1 };
            Some((
                sign,
                GhostWord {
                    ghost: w.ghost & !bit,
                    anti: w.anti,
                },
            ))
        }
        Gen::Covector(a) => {
            let bit = 1u32 << a;
            if w.anti & bit == 0 {
                return None;
            }
            let crossed = w.ghost.count_ones() + (w.anti & (bit - 1)).count_ones();
            let sign = if crossed % 2 == 0 { 1 } else { -1 };
            Some((
                sign,
                GhostWord {
                    ghost: w.ghost,
                    anti: w.anti & !bit,
                },
            ))
        }
    }
}

/// Right insertion: `-(-1)^m` times the left insertion on a degree-m word.
pub fn insert_right_word(g: Gen, w: &GhostWord) -> Option<(i8, GhostWord)> {
    let (s, out) = insert_left_word(g, w)?;
    let flip = if w.degree() % 2 == 0 { -1 } else { 1 };
    Some((s * flip, out))
}

/// An element of the exterior algebra with truncated-series coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct GrassElement {
    n: usize,
    order: usize,
    terms: BTreeMap<GhostWord, Series<Scalar>>,
}

impl GrassElement {
    pub fn zero(n: usize, order: usize) -> Self {
        GrassElement {
            n,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, order: usize) -> Self {
        GrassElement::from_term(n, order, GhostWord::EMPTY, Series::scalar_one(order))
    }

    pub fn generator(n: usize, order: usize, g: Gen) -> Self {
        let word = match g {
            Gen::Vector(a) => GhostWord {
                ghost: 0,
                anti: 1 << a,
            },
            Gen::Covector(a) => GhostWord {
                ghost: 1 << a,
                anti: 0,
            },
        };
        GrassElement::from_term(n, order, word, Series::scalar_one(order))
    }

    pub fn from_term(n: usize, order: usize, word: GhostWord, coeff: Series<Scalar>) -> Self {
        assert_eq!(coeff.order(), order);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        GrassElement { n, order, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GhostWord, &Series<Scalar>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &GhostWord) -> Series<Scalar> {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| Series::scalar_zero(self.order))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: GhostWord, coeff: &Series<Scalar>) {
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

    pub fn add(&self, other: &GrassElement) -> GrassElement {
        self.check_compat(other);
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, c);
        }
        out
    }

    pub fn sub(&self, other: &GrassElement) -> GrassElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GrassElement {
        self.map_coeffs(|s| s.neg())
    }

    pub fn scale(&self, s: &Scalar) -> GrassElement {
        if s.is_zero() {
            return GrassElement::zero(self.n, self.order);
        }
        self.map_coeffs(|c| c.scale(s))
    }

    pub fn scale_series(&self, s: &Series<Scalar>) -> GrassElement {
        let mut out = GrassElement::zero(self.n, self.order);
        for (w, c) in &self.terms {
            out.add_term(*w, &c.mul(s).expect("order-checked"));
        }
        out
    }

    pub fn lambda_shift(&self, k: usize) -> GrassElement {
        let mut out = GrassElement::zero(self.n, self.order);
        for (w, c) in &self.terms {
            out.add_term(*w, &c.lambda_shift(k));
        }
        out
    }

    pub fn raised(&self, by: usize) -> GrassElement {
        let mut out = GrassElement::zero(self.n, self.order + by);
        for (w, c) in &self.terms {
            out.add_term(*w, &c.raised(by));
        }
        out
    }

    pub fn truncated(&self, order: usize) -> GrassElement {
        let mut out = GrassElement::zero(self.n, order);
        for (w, c) in &self.terms {
            out.add_term(*w, &c.truncated(order));
        }
        out
    }

    fn map_coeffs(&self, f: impl Fn(&Series<Scalar>) -> Series<Scalar>) -> GrassElement {
        let mut out = GrassElement::zero(self.n, self.order);
        for (w, c) in &self.terms {
            out.add_term(*w, &f(c));
        }
        out
    }

    fn check_compat(&self, other: &GrassElement) {
        assert_eq!(self.n, other.n, "dimension mismatch");
        assert_eq!(self.order, other.order, "order mismatch");
    }

    /// True if every term has the same total-degree parity.
    pub fn is_parity_homogeneous(&self) -> Option<bool> {
        let mut parity = None;
        for w in self.terms.keys() {
            match parity {
                None => parity = Some(w.is_odd()),
                Some(p) if p != w.is_odd() => return None,
                _ => {}
            }
        }
        Some(parity.unwrap_or(false))
    }
}

/// Associative super-commutative wedge product.
pub fn wedge(a: &GrassElement, b: &GrassElement) -> GrassElement {
    a.check_compat(b);
    let mut out = GrassElement::zero(a.n, a.order);
    for (w1, s1) in &a.terms {
        for (w2, s2) in &b.terms {
            if let Some((sign, w)) = wedge_words(w1, w2) {
                let mut c = s1.mul(s2).expect("order-checked");
                if sign < 0 {
                    c = c.neg();
                }
                out.add_term(w, &c);
            }
        }
    }
    out
}

/// Left insertion, extended linearly.
pub fn insert_left(g: Gen, a: &GrassElement) -> GrassElement {
    let mut out = GrassElement::zero(a.n, a.order);
    for (w, s) in &a.terms {
        if let Some((sign, w2)) = insert_left_word(g, w) {
            out.add_term(w2, &if sign < 0 { s.neg() } else { s.clone() });
        }
    }
    out
}

/// Right insertion, extended linearly.
pub fn insert_right(g: Gen, a: &GrassElement) -> GrassElement {
    let mut out = GrassElement::zero(a.n, a.order);
    for (w, s) in &a.terms {
        if let Some((sign, w2)) = insert_right_word(g, w) {
            out.add_term(w2, &if sign < 0 { s.neg() } else { s.clone() });
        }
    }
    out
}

/// Left insertion of a rational linear combination of same-kind generators.
pub fn insert_left_lin(coeffs: &[Rat], covector: bool, a: &GrassElement) -> GrassElement {
    let mut out = GrassElement::zero(a.n(), a.order());
    for (idx, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let g = if covector {
            Gen::Covector(idx)
        } else {
            Gen::Vector(idx)
        };
        out = out.add(&insert_left(g, a).scale(&Scalar::from_rat(c.clone())));
    }
    out
}

/// The kappa-ordered Clifford product. The exponential of the pairing
/// operator is a finite sum: each application removes one factor from each
/// tensor leg and carries one power of the deformation parameter, so both
/// nilpotency and the truncation order bound the loop.
pub fn cliff(a: &GrassElement, b: &GrassElement, kappa: &Rat) -> GrassElement {
    a.check_compat(b);
    let order = a.order;
    let n = a.n;
    let kappa_s = Scalar::from_rat(kappa.clone());
    let one_minus_kappa = Scalar::from_rat(Rat::one() - kappa.clone());
    let two_i = &Scalar::from_int(2) * &Scalar::i();

    let mut out = GrassElement::zero(n, order);
    for (w1, s1) in &a.terms {
        for (w2, s2) in &b.terms {
            let s12 = s1.mul(s2).expect("order-checked");
            let mut pairs: BTreeMap<(GhostWord, GhostWord), Scalar> = BTreeMap::new();
            pairs.insert((*w1, *w2), Scalar::one());
            let mut k = 0usize;
            loop {
                for ((x, y), c) in &pairs {
                    if let Some((sign, w)) = wedge_words(x, y) {
                        let mut coeff = c.clone();
                        if sign < 0 {
                            coeff = -coeff;
                        }
                        out.add_term(w, &s12.lambda_shift(k).scale(&coeff));
                    }
                }
                k += 1;
                if k > order || pairs.is_empty() {
                    break;
                }
                // one more application of the pairing operator, divided by k
                // to build the exponential
                let step = two_i.scale_rat(&Rat::new(1.into(), (k as i64).into()));
                let mut next: BTreeMap<(GhostWord, GhostWord), Scalar> = BTreeMap::new();
                let mut push = |x: GhostWord, y: GhostWord, c: Scalar| {
                    if c.is_zero() {
                        return;
                    }
                    let e = next.entry((x, y)).or_insert_with(Scalar::zero);
                    *e += &c;
                    if e.is_zero() {
                        next.remove(&(x, y));
                    }
                };
                for ((x, y), c) in &pairs {
                    let base = c * &step;
                    for idx in 0..n {
                        // j(e_a) (x) tensor i(e^a) (y), weighted by kappa
                        if !kappa_s.is_zero() {
                            if let (Some((sx, x2)), Some((sy, y2))) = (
                                insert_right_word(Gen::Vector(idx), x),
                                insert_left_word(Gen::Covector(idx), y),
                            ) {
                                let mut co = &base * &kappa_s;
                                if sx * sy < 0 {
                                    co = -co;
                                }
                                push(x2, y2, co);
                            }
                        }
                        // j(e^a) (x) tensor i(e_a) (y), weighted by 1 - kappa
                        if !one_minus_kappa.is_zero() {
                            if let (Some((sx, x2)), Some((sy, y2))) = (
                                insert_right_word(Gen::Covector(idx), x),
                                insert_left_word(Gen::Vector(idx), y),
                            ) {
                                let mut co = &base * &one_minus_kappa;
                                if sx * sy < 0 {
                                    co = -co;
                                }
                                push(x2, y2, co);
                            }
                        }
                    }
                }
                pairs = next;
            }
        }
    }
    out
}

/// The degree-lowering Laplace operator: sum over the basis of contracting
/// one ghost against the matching antighost.
pub fn laplacian(a: &GrassElement) -> GrassElement {
    let mut out = GrassElement::zero(a.n, a.order);
    for (w, s) in &a.terms {
        let both = w.ghost & w.anti;
        for idx in 0..a.n {
            if both & (1 << idx) == 0 {
                continue;
            }
            let (s1, w1) = insert_left_word(Gen::Covector(idx), w).expect("bit checked");
            let (s2, w2) = insert_left_word(Gen::Vector(idx), &w1).expect("bit survives");
            out.add_term(w2, &if s1 * s2 < 0 { s.neg() } else { s.clone() });
        }
    }
    out
}

/// The equivalence transformation between the ordered products: the
/// exponential of `2*i*kappa*lambda` times the Laplace operator. Its inverse
/// is the same map with negated parameter.
pub fn equivalence(a: &GrassElement, kappa: &Rat) -> GrassElement {
    let mut out = a.clone();
    let mut term = a.clone();
    let mut k = 0usize;
    loop {
        k += 1;
        if k > a.order {
            break;
        }
        let factor = (&Scalar::from_int(2) * &Scalar::i())
            .scale_rat(&(kappa.clone() / Rat::from_integer((k as i64).into())));
        term = laplacian(&term).lambda_shift(1).scale(&factor);
        if term.is_zero() {
            break;
        }
        out = out.add(&term);
    }
    out
}

/// Super Poisson bracket induced by the natural pairing. The factor 2 fixes
/// the normalization of the Clifford relation on one-forms.
pub fn grass_poisson(a: &GrassElement, b: &GrassElement) -> GrassElement {
    a.check_compat(b);
    let mut out = GrassElement::zero(a.n, a.order);
    for idx in 0..a.n {
        let t1 = wedge(
            &insert_right(Gen::Vector(idx), a),
            &insert_left(Gen::Covector(idx), b),
        );
        let t2 = wedge(
            &insert_right(Gen::Covector(idx), a),
            &insert_left(Gen::Vector(idx), b),
        );
        out = out.add(&t1).add(&t2);
    }
    out.scale(&Scalar::from_int(2))
}

impl fmt::Display for GrassElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, s) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({s})*{}", w.text())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ghost(n: usize, order: usize, a: usize) -> GrassElement {
        GrassElement::generator(n, order, Gen::Covector(a))
    }

    fn anti(n: usize, order: usize, a: usize) -> GrassElement {
        GrassElement::generator(n, order, Gen::Vector(a))
    }

    #[test]
    fn wedge_kills_repeats() {
        let e1 = ghost(2, 2, 0);
        assert!(wedge(&e1, &e1).is_zero());
    }

    #[test]
    fn odd_generators_anticommute() {
        // e_2 wedge e^1 = -(e^1 wedge e_2)
        let n = 2;
        let lhs = wedge(&anti(n, 2, 1), &ghost(n, 2, 0));
        let rhs = wedge(&ghost(n, 2, 0), &anti(n, 2, 1)).neg();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_reordering_sign() {
        // (e^1 wedge e^2) wedge e_1 has coefficient +1 on the canonical word
        let n = 2;
        let w = wedge(&wedge(&ghost(n, 1, 0), &ghost(n, 1, 1)), &anti(n, 1, 0));
        let word = GhostWord { ghost: 0b11, anti: 0b01 };
        assert_eq!(w.coeff(&word), Series::scalar_one(1));
    }

    #[test]
    fn insertions_match_convention() {
        let n = 2;
        // i(e_1)(e^1 ^ e^2) = e^2
        let x = wedge(&ghost(n, 1, 0), &ghost(n, 1, 1));
        assert_eq!(insert_left(Gen::Vector(0), &x), ghost(n, 1, 1));
        // i(e^1)(e^1 ^ e_1) = -e^1
        let y = wedge(&ghost(n, 1, 0), &anti(n, 1, 0));
        assert_eq!(insert_left(Gen::Covector(0), &y), ghost(n, 1, 0).neg());
        // i(e_2)(e^1) = 0
        assert!(insert_left(Gen::Vector(1), &ghost(n, 1, 0)).is_zero());
    }

    #[test]
    fn insertions_are_nilpotent() {
        let n = 3;
        let x = wedge(
            &wedge(&ghost(n, 2, 0), &anti(n, 2, 1)),
            &anti(n, 2, 2),
        );
        for g in [Gen::Vector(0), Gen::Covector(1), Gen::Covector(2)] {
            assert!(insert_left(g, &insert_left(g, &x)).is_zero());
        }
    }

    #[test]
    fn clifford_relation_on_one_forms() {
        // e^1 o e_1 = e^1 ^ e_1 + 2 i kappa L,
        // e_1 o e^1 = -(e^1 ^ e_1) + 2 i (1-kappa) L, anticommutator 2 i L
        let n = 1;
        let order = 2;
        let kappa = Rat::new(1.into(), 4.into());
        let g = ghost(n, order, 0);
        let v = anti(n, order, 0);
        let gv = cliff(&g, &v, &kappa);
        let vg = cliff(&v, &g, &kappa);

        let word = GhostWord { ghost: 1, anti: 1 };
        let two_i_l = |r: Rat| {
            Series::monomial(
                order,
                1,
                (&Scalar::from_int(2) * &Scalar::i()).scale_rat(&r),
            )
        };
        let mut expect_gv = GrassElement::from_term(n, order, word, Series::scalar_one(order));
        expect_gv.add_term(GhostWord::EMPTY, &two_i_l(kappa.clone()));
        assert_eq!(gv, expect_gv);

        let mut expect_vg =
            GrassElement::from_term(n, order, word, Series::scalar_one(order).neg());
        expect_vg.add_term(GhostWord::EMPTY, &two_i_l(Rat::one() - kappa.clone()));
        assert_eq!(vg, expect_vg);

        let anticomm = gv.add(&vg);
        let mut expect = GrassElement::zero(n, order);
        expect.add_term(GhostWord::EMPTY, &two_i_l(Rat::one()));
        assert_eq!(anticomm, expect);
    }

    #[test]
    fn cliff_unit_and_unpaired_generators() {
        let n = 2;
        let kappa = Rat::new(1.into(), 2.into());
        let x = wedge(&ghost(n, 3, 0), &anti(n, 3, 1));
        assert_eq!(cliff(&GrassElement::one(n, 3), &x, &kappa), x);
        // e^1 o e^2 = e^1 ^ e^2: no dual pairing available
        assert_eq!(
            cliff(&ghost(n, 3, 0), &ghost(n, 3, 1), &kappa),
            wedge(&ghost(n, 3, 0), &ghost(n, 3, 1))
        );
    }

    #[test]
    fn laplacian_values() {
        let n = 2;
        assert!(laplacian(&GrassElement::one(n, 2)).is_zero());
        // on e^1 ^ e_1 the value is -1
        let x = wedge(&ghost(n, 2, 0), &anti(n, 2, 0));
        let mut expect = GrassElement::zero(n, 2);
        expect.add_term(GhostWord::EMPTY, &Series::scalar_one(2).neg());
        assert_eq!(laplacian(&x), expect);
    }

    #[test]
    fn equivalence_on_paired_word() {
        // S_kappa(e^1 ^ e_1) = e^1 ^ e_1 - 2 i kappa L
        let n = 1;
        let kappa = Rat::new(1.into(), 3.into());
        let x = wedge(&ghost(n, 2, 0), &anti(n, 2, 0));
        let out = equivalence(&x, &kappa);
        let mut expect = x.clone();
        expect.add_term(
            GhostWord::EMPTY,
            &Series::monomial(
                2,
                1,
                -(&Scalar::from_int(2) * &Scalar::i()).scale_rat(&kappa),
            ),
        );
        assert_eq!(out, expect);
    }

    #[test]
    fn poisson_dual_pair() {
        let n = 2;
        // {e^1, e_1} = 2, {1, x} = 0
        let g = ghost(n, 1, 0);
        let v = anti(n, 1, 0);
        let mut expect = GrassElement::zero(n, 1);
        expect.add_term(
            GhostWord::EMPTY,
            &Series::constant(1, Scalar::from_int(2)),
        );
        assert_eq!(grass_poisson(&g, &v), expect);
        assert!(grass_poisson(&GrassElement::one(n, 1), &g).is_zero());
    }

    #[test]
    fn word_text_round_trip() {
        let w = GhostWord {
            ghost: 0b011,
            anti: 0b100,
        };
        assert_eq!(w.text(), "e^1^e^2^e_3");
        let (sign, parsed) = GhostWord::parse("e^1^e^2^e_3", 3).unwrap();
        assert_eq!(sign, 1);
        assert_eq!(parsed, w);
        // out-of-order input picks up the Koszul sign
        let (sign, parsed) = GhostWord::parse("e_3^e^1^e^2", 3).unwrap();
        assert_eq!(parsed, w);
        assert_eq!(sign, 1); // two ghosts move past one antighost
        let (sign, _) = GhostWord::parse("e^2^e^1", 3).unwrap();
        assert_eq!(sign, -1);
    }
}
