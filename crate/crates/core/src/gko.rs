//! Goddard-Kent-Olive coset scalars: the Virasoro central charge on
//! `V(λ) ⊗ V(μ)` and the `L_0` eigenvalue on a component `V(ν)`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, q, Q};
use crate::rootdata::{CartanData, Root, RootClass};
use crate::weight::{inv_form, is_wahl_triple, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    /// `m_k ≥ 1` for every `k ≥ 0`.
    AllK,
    /// `m_1 = 0` and `m_k ≥ 1` for `k = 0` and `k ≥ 2`.
    GapAtOne,
    /// Central charge and `L_0` both vanish.
    OneDimensional,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesPrediction {
    pub kind: SeriesKind,
    #[serde(with = "rational::as_string")]
    pub l0_scalar: Q,
    #[serde(with = "rational::as_string")]
    pub central_charge: Q,
}

/// `dim g̊ · (l/(l+h^∨) + m/(m+h^∨) − (l+m)/(l+m+h^∨))`.
pub fn central_charge(cd: &CartanData, l: i64, m: i64) -> Result<Q> {
    if l < 1 || m < 1 {
        return Err(Error::Unsupported(format!(
            "levels must be positive, got l={l}, m={m}"
        )));
    }
    let h = cd.dual_coxeter;
    let frac = |k: i64| Q::new(k, k + h);
    Ok(q(cd.dim_finite as i64) * (frac(l) + frac(m) - frac(l + m)))
}

/// `(x|x+2ρ)`.
fn casimir(cd: &CartanData, x: &Weight) -> Q {
    let shifted = x + &(&Weight::rho(cd) * q(2));
    inv_form(cd, x, &shifted)
}

/// `½((λ|λ+2ρ)/(l+h^∨) + (μ|μ+2ρ)/(m+h^∨) − (ν|ν+2ρ)/(l+m+h^∨))`.
pub fn l0_scalar(cd: &CartanData, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<Q> {
    let (l, m) = (lambda.level, mu.level);
    if l < 1 || m < 1 {
        return Err(Error::Unsupported(format!(
            "levels must be positive, got l={l}, m={m}"
        )));
    }
    if nu.level != l + m {
        return Err(Error::LevelMismatch {
            expected: l + m,
            got: nu.level,
        });
    }
    let h = cd.dual_coxeter;
    let v = casimir(cd, lambda) / q(l + h) + casimir(cd, mu) / q(m + h) - casimir(cd, nu) / q(l + m + h);
    Ok(v / q(2))
}

pub fn predict_series(cd: &CartanData, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<SeriesPrediction> {
    let l0 = l0_scalar(cd, lambda, mu, nu)?;
    let c = central_charge(cd, lambda.level, mu.level)?;
    let kind = if !l0.is_zero() {
        SeriesKind::AllK
    } else if !c.is_zero() {
        SeriesKind::GapAtOne
    } else {
        SeriesKind::OneDimensional
    };
    Ok(SeriesPrediction {
        kind,
        l0_scalar: l0,
        central_charge: c,
    })
}

/// `L_0` on `V(λ+μ−β)` for a Wahl triple with real `β`; must be positive.
pub fn wahl_positivity(cd: &CartanData, lambda: &Weight, mu: &Weight, beta: &Root) -> Result<Q> {
    let verdict = is_wahl_triple(cd, lambda, mu, beta);
    if !verdict.holds() {
        return Err(Error::NotWahl(format!("{verdict:?}")));
    }
    if cd.classify(beta) != RootClass::Real {
        return Err(Error::Unsupported("positivity applies to real roots".into()));
    }
    let nu = &(lambda + mu) - &Weight::from_root(cd, beta);
    let v = l0_scalar(cd, lambda, mu, &nu)?;
    if v <= Q::zero() {
        return Err(Error::Invariant(format!(
            "non-positive L0 scalar {} for a Wahl triple",
            rational::fmt_q(&v)
        )));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;
    use crate::rootdata::AffineType;
    use proptest::prelude::*;

    fn cd(s: &str) -> CartanData {
        CartanData::new(s.parse().unwrap())
    }

    #[test]
    fn central_charges() {
        assert_eq!(central_charge(&cd("A1~"), 1, 1).unwrap(), qr(1, 2));
        assert_eq!(central_charge(&cd("A2~"), 1, 2).unwrap(), qr(6, 5));
        assert!(central_charge(&cd("A2~"), 0, 2).is_err());
        for ty in AffineType::catalogue() {
            let c = CartanData::new(ty);
            for l in 1..=10 {
                for m in 1..=10 {
                    let v = central_charge(&c, l, m).unwrap();
                    assert!(v > Q::zero(), "{ty}");
                    assert_eq!(v, central_charge(&c, m, l).unwrap());
                }
            }
        }
    }

    #[test]
    fn l0_examples() {
        let a1 = cd("A1~");
        let l0 = Weight::fundamental(&a1, 0);
        let two = &l0 * q(2);
        assert_eq!(l0_scalar(&a1, &l0, &l0, &two).unwrap(), Q::zero());
        assert_eq!(predict_series(&a1, &l0, &l0, &two).unwrap().kind, SeriesKind::GapAtOne);
        for ty in AffineType::catalogue() {
            let c = CartanData::new(ty);
            let rho = Weight::rho(&c);
            let two_rho = &rho * q(2);
            let expect = inv_form(&c, &rho, &rho) / q(6 * c.dual_coxeter);
            assert_eq!(l0_scalar(&c, &rho, &rho, &two_rho).unwrap(), expect, "{ty}");
            assert_eq!(predict_series(&c, &rho, &rho, &two_rho).unwrap().kind, SeriesKind::AllK);
        }
        assert!(matches!(
            l0_scalar(&a1, &l0, &l0, &l0),
            Err(Error::LevelMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn wahl_positivity_a1() {
        let a1 = cd("A1~");
        let l0 = Weight::fundamental(&a1, 0);
        let v = wahl_positivity(&a1, &l0, &l0, &Root::simple(&a1, 0)).unwrap();
        assert_eq!(v, qr(1, 2));
        assert!(matches!(
            wahl_positivity(&a1, &l0, &l0, &Root::simple(&a1, 1)),
            Err(Error::NotWahl(_))
        ));
    }

    proptest! {
        #[test]
        fn shift_identity(t in 0usize..4, a in proptest::collection::vec(0i64..4, 3), b in proptest::collection::vec(0i64..4, 3),
                          n in proptest::collection::vec(-4i64..5, 3), k in 1i64..6) {
            let c = cd(["A1~", "A2~", "C2~", "G2~"][t]);
            let r = c.rank + 1;
            let mut a = a[..r].to_vec();
            let mut b = b[..r].to_vec();
            a[0] += 1;
            b[0] += 1;
            let lam = Weight::from_labels(&c, &a, Q::zero());
            let mu = Weight::from_labels(&c, &b, Q::zero());
            // any integral ν of level l+m
            let mut nu = Weight::from_labels(&c, &n[..r], Q::zero());
            nu.level = lam.level + mu.level;
            let base = l0_scalar(&c, &lam, &mu, &nu).unwrap();
            let shifted = &nu - &(&Weight::delta(c.rank) * q(k));
            prop_assert_eq!(l0_scalar(&c, &lam, &mu, &shifted).unwrap(), base + q(k));
            prop_assert!(l0_scalar(&c, &lam, &mu, &(&lam + &mu)).unwrap() >= Q::zero());
        }
    }
}
