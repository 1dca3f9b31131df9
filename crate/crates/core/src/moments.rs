//! Exact expectation and variance of the crossing count.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, ratio, to_f64, Rational};
use crate::graph::Graph;
use crate::product_types::{freq_fast, FreqVector, ProductType};

/// Constants of the uniformly random linear arrangement, as `(num, den)`
/// in canonical type order.
pub struct RlaConstants;

impl RlaConstants {
    pub const DELTA: (i64, i64) = (1, 3);
    pub const ALPHA: [(i64, i64); 9] = [
        (1, 9),
        (1, 3),
        (1, 6),
        (2, 15),
        (0, 1),
        (1, 12),
        (1, 10),
        (7, 60),
        (1, 9),
    ];
    pub const GAMMA: [(i64, i64); 9] = [
        (0, 1),
        (2, 9),
        (1, 18),
        (1, 45),
        (-1, 9),
        (-1, 36),
        (-1, 90),
        (1, 180),
        (0, 1),
    ];

    pub fn delta() -> Rational {
        ratio(Self::DELTA.0, Self::DELTA.1)
    }

    /// Probability that both pairs of a product of type `t` cross.
    pub fn alpha(t: ProductType) -> Rational {
        let (a, b) = Self::ALPHA[t.index()];
        ratio(a, b)
    }

    pub fn gamma(t: ProductType) -> Rational {
        let (a, b) = Self::GAMMA[t.index()];
        ratio(a, b)
    }
}

/// Layout-specific crossing probability and per-type covariance terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayoutConstants {
    delta: Rational,
    gamma: [Rational; 9],
}

impl LayoutConstants {
    /// Rejects constants with `γ_00 ≠ 0`, `γ_01 ≠ 0` or `γ_24 ≠ δ(1 − δ)`,
    /// and `δ` outside `[0, 1]`.
    pub fn new(delta: Rational, gamma: [Rational; 9]) -> Result<Self> {
        if delta.is_negative() || delta > int(1) {
            return Err(Error::InvalidConstants(format!(
                "δ = {delta} is not a probability"
            )));
        }
        for t in [ProductType::T00, ProductType::T01] {
            if !gamma[t.index()].is_zero() {
                return Err(Error::InvalidConstants(format!(
                    "γ_{t} must be 0, got {}",
                    gamma[t.index()]
                )));
            }
        }
        let g24 = &delta * (int(1) - &delta);
        if gamma[ProductType::T24.index()] != g24 {
            return Err(Error::InvalidConstants(format!(
                "γ_24 must equal δ(1 − δ) = {g24}, got {}",
                gamma[ProductType::T24.index()]
            )));
        }
        Ok(Self { delta, gamma })
    }

    pub fn rla() -> Self {
        Self::new(
            RlaConstants::delta(),
            ProductType::ALL.map(RlaConstants::gamma),
        )
        .expect("rla constants are valid")
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn gamma(&self, t: ProductType) -> &Rational {
        &self.gamma[t.index()]
    }
}

/// `E[C] = |Q| / 3`.
pub fn expectation_rla(g: &Graph) -> Rational {
    Rational::new(g.size_q().into(), 3.into())
}

/// `E[C] = δ |Q|` for an arbitrary layout.
pub fn expectation_layout(g: &Graph, constants: &LayoutConstants) -> Rational {
    constants.delta() * int(g.size_q())
}

/// `(1/9)[2|Q| + f022/20 + f12/5 + f13/2 − (f021/10 + f04 + f03/4)]`,
/// writing `|Q|` for `f24`.
pub fn variance_from_freq(f: &FreqVector) -> Rational {
    use ProductType::*;
    let x = |t: ProductType, num: i64, den: i64| int(f[t]) * ratio(num, den);
    let positive = x(T24, 2, 1) + x(T022, 1, 20) + x(T12, 1, 5) + x(T13, 1, 2);
    let negative = x(T021, 1, 10) + x(T04, 1, 1) + x(T03, 1, 4);
    (positive - negative) * ratio(1, 9)
}

/// Variance for forests, where `f04 = 0` and its term is dropped.
pub fn tree_variance_from_freq(f: &FreqVector) -> Rational {
    use ProductType::*;
    let x = |t: ProductType, num: i64, den: i64| int(f[t]) * ratio(num, den);
    let positive = x(T24, 2, 1) + x(T022, 1, 20) + x(T12, 1, 5) + x(T13, 1, 2);
    let negative = x(T021, 1, 10) + x(T03, 1, 4);
    (positive - negative) * ratio(1, 9)
}

/// `Σ_ω f_ω γ_ω`.
pub fn variance_from_freq_layout(f: &FreqVector, constants: &LayoutConstants) -> Rational {
    f.iter().map(|(t, v)| int(v) * constants.gamma(t)).sum()
}

pub fn variance_rla(g: &Graph) -> Rational {
    variance_from_freq(&freq_fast(g))
}

pub fn variance_layout(g: &Graph, constants: &LayoutConstants) -> Rational {
    variance_from_freq_layout(&freq_fast(g), constants)
}

/// Chebyshev bound on `P(|C − E| ≥ |observed − E|)`, clamped to 1.
pub fn chebyshev_pbound(g: &Graph, observed: u64) -> Rational {
    chebyshev_from_moments(&expectation_rla(g), &variance_rla(g), observed)
}

pub fn chebyshev_from_moments(mean: &Rational, variance: &Rational, observed: u64) -> Rational {
    let d = int(observed) - mean;
    if d.is_zero() {
        return int(1);
    }
    let bound = variance / (&d * &d);
    if bound > int(1) {
        int(1)
    } else {
        bound
    }
}

/// `(observed − E[C]) / sqrt(Var[C])`.
pub fn z_score(g: &Graph, observed: u64) -> Result<f64> {
    z_from_moments(&expectation_rla(g), &variance_rla(g), observed)
}

pub fn z_from_moments(mean: &Rational, variance: &Rational, observed: u64) -> Result<f64> {
    if variance.is_zero() {
        return Err(Error::ZeroVariance);
    }
    Ok(to_f64(&(int(observed) - mean)) / to_f64(variance).sqrt())
}
