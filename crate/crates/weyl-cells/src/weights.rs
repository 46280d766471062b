//! Affine weights and the shifted dot action.
//!
//! A weight is (finite part, level, delta-degree) with the finite part in
//! fundamental-weight coordinates. The delta coordinate is tracked as an
//! exact rational: length-zero rotations translate by fundamental coweights,
//! which shift delta by fractions even though every table-facing quantity
//! stays integral.

use crate::affine_weyl::WeylElement;
use crate::mat;
use crate::rootdata::RootDatum;
use num::rational::Rational64;
use num::Zero;
use serde_json::json;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WeightError {
    #[error("weight belongs to a different root datum")]
    MixedRootData,
    #[error("level {0} is critical or below; dominantization needs level > -h_dual")]
    CriticalLevel(i64),
    #[error("weight is not rho-dominant")]
    NotDominant,
    #[error("cannot parse weight literal `{0}`")]
    BadLiteral(String),
    #[error("node {0} is out of range")]
    BadNode(usize),
}

#[derive(Clone)]
pub struct AffineWeight {
    rd: Arc<RootDatum>,
    /// Fundamental-weight coordinates of the finite part.
    pub finite: Vec<i64>,
    pub level: i64,
    pub delta: Rational64,
}

impl PartialEq for AffineWeight {
    fn eq(&self, other: &Self) -> bool {
        *self.rd == *other.rd
            && self.finite == other.finite
            && self.level == other.level
            && self.delta == other.delta
    }
}
impl Eq for AffineWeight {}

impl fmt::Debug for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.rd.type_name(), format_weight(self))
    }
}

pub fn weight(
    rd: &Arc<RootDatum>,
    finite: Vec<i64>,
    level: i64,
    delta: Rational64,
) -> AffineWeight {
    assert_eq!(finite.len(), rd.rank);
    AffineWeight {
        rd: Arc::clone(rd),
        finite,
        level,
        delta,
    }
}

/// The affine fundamental weight attached to node i.
pub fn fundamental(rd: &Arc<RootDatum>, i: usize) -> Result<AffineWeight, WeightError> {
    if i > rd.rank {
        return Err(WeightError::BadNode(i));
    }
    let mut finite = vec![0i64; rd.rank];
    let level = if i == 0 {
        1
    } else {
        finite[i - 1] = 1;
        rd.comarks[i]
    };
    Ok(weight(rd, finite, level, Rational64::zero()))
}

/// rho-hat: all finite coordinates 1 at level h_dual.
pub fn rho_hat(rd: &Arc<RootDatum>) -> AffineWeight {
    weight(rd, vec![1; rd.rank], rd.h_dual, Rational64::zero())
}

/// kappa . Lambda-hat_0.
pub fn kappa_lambda0(rd: &Arc<RootDatum>, kappa: i64) -> AffineWeight {
    weight(rd, vec![0; rd.rank], kappa, Rational64::zero())
}

impl AffineWeight {
    pub fn root_datum(&self) -> &Arc<RootDatum> {
        &self.rd
    }

    /// Pairing with the simple affine coroot alpha_i^vee.
    pub fn pairing(&self, i: usize) -> i64 {
        if i == 0 {
            self.level
                - self
                    .finite
                    .iter()
                    .zip(&self.rd.theta_covector)
                    .map(|(x, c)| x * c)
                    .sum::<i64>()
        } else {
            self.finite[i - 1]
        }
    }

    pub fn is_rho_dominant(&self) -> bool {
        (0..=self.rd.rank).all(|i| self.pairing(i) >= -1)
    }

    /// Nodes pairing to exactly -1; only defined on rho-dominant weights.
    pub fn sing_set(&self) -> Result<Vec<usize>, WeightError> {
        if !self.is_rho_dominant() {
            return Err(WeightError::NotDominant);
        }
        Ok((0..=self.rd.rank).filter(|&i| self.pairing(i) == -1).collect())
    }

    /// The finite part is dominant (every coordinate nonnegative).
    pub fn has_dominant_finite_part(&self) -> bool {
        self.finite.iter().all(|&x| x >= 0)
    }

    /// Equality ignoring the delta coordinate, as module labels do.
    pub fn eq_mod_delta(&self, other: &AffineWeight) -> bool {
        *self.rd == *other.rd && self.finite == other.finite && self.level == other.level
    }

    pub fn to_json(&self) -> serde_json::Value {
        let delta = if self.delta.is_integer() {
            json!(self.delta.to_integer())
        } else {
            json!(self.delta.to_string())
        };
        json!({ "finite": self.finite, "level": self.level, "delta": delta })
    }
}

/// Unshifted action of w = t_nu . f on (finite, level, delta).
pub fn apply_weight(w: &WeylElement, wt: &AffineWeight) -> Result<AffineWeight, WeightError> {
    let rd = wt.root_datum();
    if *w.root_datum().as_ref() != *rd.as_ref() {
        return Err(WeightError::MixedRootData);
    }
    let l = rd.rank;
    let lam = mat::mat_vec(&w.weight_matrix().to_vec(), &wt.finite);
    let nu = w.translation_part();
    // nu-flat in fundamental-weight coordinates.
    let nu_flat: Vec<i64> = (0..l).map(|i| rd.root_ratio[i] * nu[i]).collect();
    // <lam, nu> and (nu-flat, nu-flat) = <nu-flat, nu> through (A^T)^{-1}.
    let pair = |x: &[i64]| -> Rational64 {
        let mut acc = Rational64::zero();
        for i in 0..l {
            for j in 0..l {
                acc += Rational64::from_integer(x[i])
                    * rd.pairing_matrix[i][j]
                    * Rational64::from_integer(nu[j]);
            }
        }
        acc
    };
    let norm = pair(&nu_flat);
    let cross = pair(&lam);
    let finite: Vec<i64> = (0..l).map(|i| lam[i] + wt.level * nu_flat[i]).collect();
    let delta = wt.delta - cross - Rational64::new(wt.level, 2) * norm;
    Ok(weight(rd, finite, wt.level, delta))
}

/// The shifted dot action w . L = w(L + rho-hat) - rho-hat.
pub fn dot_action(w: &WeylElement, wt: &AffineWeight) -> Result<AffineWeight, WeightError> {
    let rd = wt.root_datum();
    let shifted = weight(
        rd,
        wt.finite.iter().map(|x| x + 1).collect(),
        wt.level + rd.h_dual,
        wt.delta,
    );
    let moved = apply_weight(w, &shifted)?;
    Ok(weight(
        rd,
        moved.finite.iter().map(|x| x - 1).collect(),
        moved.level - rd.h_dual,
        moved.delta,
    ))
}

/// The unique shortest v with v . (kappa Lambda_0) rho-dominant, found by
/// walking up with the most negative walls; also returns kappa-plus.
pub fn min_dominant_v(
    rd: &Arc<RootDatum>,
    kappa: i64,
) -> Result<(WeylElement, AffineWeight), WeightError> {
    min_dominant_v_by(rd, kappa, false)
}

/// Pivot-order variant used to confirm the result is strategy-independent.
pub fn min_dominant_v_by(
    rd: &Arc<RootDatum>,
    kappa: i64,
    largest_first: bool,
) -> Result<(WeylElement, AffineWeight), WeightError> {
    if kappa <= -rd.h_dual {
        return Err(WeightError::CriticalLevel(kappa));
    }
    let mut v = crate::affine_weyl::identity(rd);
    let mut wt = kappa_lambda0(rd, kappa);
    loop {
        let bad = if largest_first {
            (0..=rd.rank).rev().find(|&i| wt.pairing(i) < -1)
        } else {
            (0..=rd.rank).find(|&i| wt.pairing(i) < -1)
        };
        let Some(i) = bad else {
            return Ok((v, wt));
        };
        let s = crate::affine_weyl::simple(rd, i).expect("valid node");
        wt = dot_action(&s, &wt)?;
        v = crate::affine_weyl::multiply(&s, &v).expect("same datum");
    }
}

/// Parses weight literals like `-1*L0`, `4*w2@-1`, `1*w1+3*w6@-5`, `0@-2`.
/// `c*Li` adds c times the affine fundamental weight of node i (so it
/// contributes to the level); `c*wi` adds only the finite part; `@k` adds k
/// to the level.
pub fn parse_weight(rd: &Arc<RootDatum>, s: &str) -> Result<AffineWeight, WeightError> {
    let bad = || WeightError::BadLiteral(s.to_string());
    let s = s.trim();
    let (terms_part, at_level) = match s.split_once('@') {
        Some((t, lv)) => (t, Some(lv.parse::<i64>().map_err(|_| bad())?)),
        None => (s, None),
    };
    let mut finite = vec![0i64; rd.rank];
    let mut level = at_level.unwrap_or(0);
    if terms_part != "0" {
        // Split on '+' but keep leading minus signs inside terms.
        for term in terms_part.split('+') {
            let term = term.trim();
            let (coeff_str, sym) = term.split_once('*').ok_or_else(bad)?;
            let coeff: i64 = coeff_str.trim().parse().map_err(|_| bad())?;
            let sym = sym.trim();
            let (kind, idx_str) = sym.split_at(1);
            let idx: usize = idx_str.parse().map_err(|_| bad())?;
            if idx > rd.rank {
                return Err(WeightError::BadNode(idx));
            }
            match kind {
                "L" => {
                    if idx == 0 {
                        level += coeff;
                    } else {
                        finite[idx - 1] += coeff;
                        level += coeff * rd.comarks[idx];
                    }
                }
                "w" => {
                    if idx == 0 {
                        return Err(bad());
                    }
                    finite[idx - 1] += coeff;
                }
                _ => return Err(bad()),
            }
        }
    }
    Ok(weight(rd, finite, level, Rational64::zero()))
}

/// Formats as `<finite>@<level>` with finite terms `c*wi`, `0` when zero.
pub fn format_weight(wt: &AffineWeight) -> String {
    let terms: Vec<String> = wt
        .finite
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| format!("{c}*w{}", i + 1))
        .collect();
    let finite = if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    };
    format!("{finite}@{}", wt.level)
}
