//! Finite-dimensional real Lie algebra data: structure constants, the trace
//! form, the cubic ghost charge, and validity checks.

use std::fmt;

use num::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::grassmann::{GhostWord, GrassElement};
use crate::scalars::{Rat, Scalar, Series};

/// A Lie algebra given by rational structure constants `f[c][a][b]` for
/// `[e_a, e_b] = sum_c f^c_ab e_c`, all indices 0-based internally
/// (reported 1-based, matching the basis naming `e_1..e_n`).
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    f: Vec<Vec<Vec<Rat>>>,
}

/// Outcome of a structure-constant check. The first violated identity is
/// reported with its (1-based) indices.
#[derive(Clone, Debug, PartialEq)]
pub enum ValidationReport {
    Valid,
    Antisymmetry { c: usize, a: usize, b: usize },
    Jacobi { a: usize, b: usize, c: usize, d: usize },
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        matches!(self, ValidationReport::Valid)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationReport::Valid => write!(f, "ok"),
            ValidationReport::Antisymmetry { c, a, b } => {
                write!(f, "antisymmetry violation at ({c},{a},{b})")
            }
            ValidationReport::Jacobi { a, b, c, d } => {
                write!(f, "Jacobi violation at (a,b,c,d)=({a},{b},{c},{d})")
            }
        }
    }
}

impl LieAlgebra {
    /// Build from the nonzero entries `(c, a, b, value)` with `a < b`
    /// (0-based); antisymmetric completion is automatic.
    pub fn new(name: impl Into<String>, dim: usize, entries: &[(usize, usize, usize, Rat)]) -> Self {
        let mut f = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
        for (c, a, b, v) in entries {
            f[*c][*a][*b] = v.clone();
            f[*c][*b][*a] = -v.clone();
        }
        LieAlgebra {
            name: name.into(),
            dim,
            f,
        }
    }

    /// Build from a raw (possibly invalid) structure-constant array.
    pub fn raw(name: impl Into<String>, dim: usize, f: Vec<Vec<Vec<Rat>>>) -> Self {
        LieAlgebra {
            name: name.into(),
            dim,
            f,
        }
    }

    /// The abelian algebra of the given dimension.
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra::new(format!("abelian:{dim}"), dim, &[])
    }

    /// su(2): `f^c_ab` the totally antisymmetric symbol.
    pub fn su2() -> Self {
        let one = Rat::one();
        LieAlgebra::new(
            "su2",
            3,
            &[
                (2, 0, 1, one.clone()),
                (0, 1, 2, one.clone()),
                (1, 2, 0, one),
            ],
        )
    }

    /// The non-unimodular two-dimensional algebra with `[e_1, e_2] = e_2`.
    pub fn aff1() -> Self {
        LieAlgebra::new("aff1", 2, &[(1, 0, 1, Rat::one())])
    }

    /// Parse a CLI preset name: `abelian:<k>`, `su2`, `aff1`, or
    /// `@file.json` for a custom algebra.
    pub fn from_preset(spec: &str) -> Result<Self> {
        if let Some(path) = spec.strip_prefix('@') {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::config(format!("cannot read `{path}`: {e}")))?;
            let value: Value = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("bad JSON in `{path}`: {e}")))?;
            return Self::from_json(&value);
        }
        if let Some(k) = spec.strip_prefix("abelian:") {
            let k: usize = k
                .parse()
                .map_err(|_| Error::config(format!("bad abelian dimension `{k}`")))?;
            if k == 0 {
                return Err(Error::config("dimension must be at least 1"));
            }
            return Ok(LieAlgebra::abelian(k));
        }
        match spec {
            "su2" => Ok(LieAlgebra::su2()),
            "aff1" => Ok(LieAlgebra::aff1()),
            other => Err(Error::config(format!("unknown Lie algebra preset `{other}`"))),
        }
    }

    /// Load from JSON `{"dim": n, "f": [[c,a,b,value], ...]}` listing only
    /// nonzero entries with `a < b`, 1-based indices. Values may be JSON
    /// integers or strings `"p/q"`.
    pub fn from_json(value: &Value) -> Result<Self> {
        let dim = value
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing integer field `dim`".into()))? as usize;
        if dim == 0 {
            return Err(Error::config("dimension must be at least 1"));
        }
        let rows = value
            .get("f")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing array field `f`".into()))?;
        let mut entries = Vec::new();
        for row in rows {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Parse("each `f` entry must be [c,a,b,value]".into()))?;
            if row.len() != 4 {
                return Err(Error::Parse("each `f` entry must be [c,a,b,value]".into()));
            }
            let idx = |v: &Value, what: &str| -> Result<usize> {
                let k = v
                    .as_u64()
                    .ok_or_else(|| Error::Parse(format!("bad index for {what}")))?
                    as usize;
                if k == 0 || k > dim {
                    return Err(Error::Parse(format!(
                        "index {k} for {what} out of range 1..={dim}"
                    )));
                }
                Ok(k - 1)
            };
            let c = idx(&row[0], "c")?;
            let a = idx(&row[1], "a")?;
            let b = idx(&row[2], "b")?;
            if a >= b {
                return Err(Error::Parse("entries must have a < b".into()));
            }
            let v = match &row[3] {
                Value::Number(n) if n.is_i64() => Rat::from_integer(n.as_i64().unwrap().into()),
                Value::String(s) => crate::scalars::parse_rat_str(s)?,
                _ => return Err(Error::Parse("value must be an integer or \"p/q\"".into())),
            };
            entries.push((c, a, b, v));
        }
        Ok(LieAlgebra::new("custom", dim, &entries))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_const(&self, c: usize, a: usize, b: usize) -> &Rat {
        &self.f[c][a][b]
    }

    /// Coefficients of `[e_a, e_b]` in the basis.
    pub fn bracket(&self, a: usize, b: usize) -> Vec<Rat> {
        (0..self.dim).map(|c| self.f[c][a][b].clone()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.f
            .iter()
            .all(|m| m.iter().all(|r| r.iter().all(Rat::is_zero)))
    }

    /// Check antisymmetry and the Jacobi identity by brute force over all
    /// index tuples; the first violation is the report.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim;
        for c in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if self.f[c][a][b] != -self.f[c][b][a].clone() {
                        return ValidationReport::Antisymmetry {
                            c: c + 1,
                            a: a + 1,
                            b: b + 1,
                        };
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let mut acc = Rat::zero();
                        for e in 0..n {
                            acc += &self.f[e][a][b] * &self.f[d][e][c]
                                + &self.f[e][b][c] * &self.f[d][e][a]
                                + &self.f[e][c][a] * &self.f[d][e][b];
                        }
                        if !acc.is_zero() {
                            return ValidationReport::Jacobi {
                                a: a + 1,
                                b: b + 1,
                                c: c + 1,
                                d: d + 1,
                            };
                        }
                    }
                }
            }
        }
        ValidationReport::Valid
    }

    /// The trace form: `chi_a = (1/2) sum_b f^b_ab`.
    pub fn chi(&self) -> Vec<Rat> {
        (0..self.dim)
            .map(|a| {
                let mut acc = Rat::zero();
                for b in 0..self.dim {
                    acc += &self.f[b][a][b];
                }
                acc / Rat::from_integer(2.into())
            })
            .collect()
    }

    /// The cubic ghost charge `-(1/4) sum f^c_ab e^a ^ e^b ^ e_c`, of ghost
    /// degree 2 and antighost degree 1; zero exactly for abelian algebras.
    pub fn omega(&self, order: usize) -> GrassElement {
        let n = self.dim;
        let mut out = GrassElement::zero(n, order);
        let minus_half = Scalar::from_ratio(-1, 2);
        for a in 0..n {
            for b in (a + 1)..n {
                for c in 0..n {
                    let v = &self.f[c][a][b];
                    if v.is_zero() {
                        continue;
                    }
                    let word = GhostWord {
                        ghost: (1 << a) | (1 << b),
                        anti: 1 << c,
                    };
                    out.add_term(
                        word,
                        &Series::constant(order, minus_half.scale_rat(v)),
                    );
                }
            }
        }
        out
    }

    /// The trace form as a ghost-degree-1 element.
    pub fn chi_element(&self, order: usize) -> GrassElement {
        let mut out = GrassElement::zero(self.dim, order);
        for (a, chi_a) in self.chi().into_iter().enumerate() {
            if chi_a.is_zero() {
                continue;
            }
            out.add_term(
                GhostWord {
                    ghost: 1 << a,
                    anti: 0,
                },
                &Series::constant(order, Scalar::from_rat(chi_a)),
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::wedge_words;

    #[test]
    fn presets_validate() {
        assert!(LieAlgebra::su2().validate().is_valid());
        assert!(LieAlgebra::abelian(3).validate().is_valid());
        assert!(LieAlgebra::aff1().validate().is_valid());
    }

    #[test]
    fn constructed_antisymmetry_violation() {
        // f^1_12 = 1 and f^1_21 = 1 breaks antisymmetry at (1,1,2)
        let mut f = vec![vec![vec![Rat::zero(); 2]; 2]; 2];
        f[0][0][1] = Rat::one();
        f[0][1][0] = Rat::one();
        let alg = LieAlgebra::raw("bad", 2, f);
        assert_eq!(
            alg.validate(),
            ValidationReport::Antisymmetry { c: 1, a: 1, b: 2 }
        );
    }

    #[test]
    fn jacobi_violation_detected() {
        // [e1,e2]=e1, [e1,e3]=e2, [e2,e3]=0 fails Jacobi
        let alg = LieAlgebra::new(
            "bad",
            3,
            &[(0, 0, 1, Rat::one()), (1, 0, 2, Rat::one())],
        );
        assert!(matches!(
            alg.validate(),
            ValidationReport::Jacobi { .. }
        ));
    }

    #[test]
    fn chi_values() {
        assert!(LieAlgebra::su2().chi().iter().all(Rat::is_zero));
        let chi = LieAlgebra::aff1().chi();
        assert_eq!(chi[0], Rat::new(1.into(), 2.into()));
        assert!(chi[1].is_zero());
        assert!(LieAlgebra::abelian(4).chi().iter().all(Rat::is_zero));
    }

    #[test]
    fn chi_vanishes_on_commutators() {
        for alg in [LieAlgebra::su2(), LieAlgebra::aff1()] {
            let chi = alg.chi();
            for a in 0..alg.dim() {
                for b in 0..alg.dim() {
                    let mut acc = Rat::zero();
                    for c in 0..alg.dim() {
                        acc += alg.structure_const(c, a, b) * &chi[c];
                    }
                    assert!(acc.is_zero(), "{} at ({a},{b})", alg.name());
                }
            }
        }
    }

    #[test]
    fn omega_abelian_is_zero() {
        assert!(LieAlgebra::abelian(2).omega(3).is_zero());
    }

    #[test]
    fn omega_su2() {
        // -(1/2)(e^1^e^2^e_3 + e^2^e^3^e_1 + e^3^e^1^e_2), merged to
        // canonical order
        let omega = LieAlgebra::su2().omega(2);
        let minus_half = Series::constant(2, Scalar::from_ratio(-1, 2));
        let expect_words = [
            (GhostWord { ghost: 0b011, anti: 0b100 }, minus_half.clone()),
            (GhostWord { ghost: 0b110, anti: 0b001 }, minus_half.clone()),
            // e^3 ^ e^1 = -(e^1 ^ e^3)
            (GhostWord { ghost: 0b101, anti: 0b010 }, minus_half.neg()),
        ];
        for (w, c) in &expect_words {
            assert_eq!(&omega.coeff(w), c, "word {}", w.text());
        }
        assert_eq!(omega.terms().count(), 3);
    }

    #[test]
    fn omega_aff1() {
        // -(1/2) e^1 ^ e^2 ^ e_2
        let omega = LieAlgebra::aff1().omega(1);
        let word = GhostWord { ghost: 0b11, anti: 0b10 };
        assert_eq!(omega.coeff(&word), Series::constant(1, Scalar::from_ratio(-1, 2)));
        assert_eq!(omega.terms().count(), 1);
    }

    #[test]
    fn laplacian_of_omega_is_chi() {
        // holds for every valid algebra; checked on the presets
        for alg in [LieAlgebra::su2(), LieAlgebra::aff1(), LieAlgebra::abelian(2)] {
            let omega = alg.omega(2);
            assert_eq!(crate::grassmann::laplacian(&omega), alg.chi_element(2));
        }
    }

    #[test]
    fn json_round_trip() {
        let value: Value = serde_json::from_str(
            r#"{"dim": 2, "f": [[2, 1, 2, 1]]}"#,
        )
        .unwrap();
        let alg = LieAlgebra::from_json(&value).unwrap();
        assert!(alg.validate().is_valid());
        assert_eq!(alg.bracket(0, 1), LieAlgebra::aff1().bracket(0, 1));
    }

    #[test]
    fn wedge_words_smoke() {
        // e^2 ^ e^1 costs a sign
        let a = GhostWord { ghost: 0b10, anti: 0 };
        let b = GhostWord { ghost: 0b01, anti: 0 };
        assert_eq!(wedge_words(&a, &b), Some((-1, GhostWord { ghost: 0b11, anti: 0 })));
    }
}
