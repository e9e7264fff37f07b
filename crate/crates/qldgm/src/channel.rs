//! Pauli-family channels: parameterizations, per-qubit error sampling, and
//! Hashing-bound benchmarks.
//!
//! The entropy convention `0·log₂0 = 0` is used throughout, which makes the
//! bounds well defined at `p = 0` and in the extreme-asymmetry limits.

use crate::gf2::SymplecticVec;
use crate::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Per-qubit error probabilities of a Pauli channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PauliChannelParams {
    pub px: f64,
    pub py: f64,
    pub pz: f64,
}

impl PauliChannelParams {
    pub fn new(px: f64, py: f64, pz: f64) -> Result<Self> {
        for (name, v) in [("px", px), ("py", py), ("pz", pz)] {
            if !(0.0..=1.0).contains(&v) || v.is_nan() {
                return Err(Error::param(format!("{name} = {v} out of [0,1]")));
            }
        }
        if px + py + pz > 1.0 + 1e-12 {
            return Err(Error::param(format!(
                "px+py+pz = {} exceeds 1",
                px + py + pz
            )));
        }
        Ok(PauliChannelParams { px, py, pz })
    }

    /// Probability that a qubit is left untouched.
    pub fn p_identity(&self) -> f64 {
        1.0 - self.px - self.py - self.pz
    }

    /// Gross flip probability px+py+pz.
    pub fn gross(&self) -> f64 {
        self.px + self.py + self.pz
    }

    /// Marginal probability of an X-component flip: f_mˣ = px + py.
    pub fn marginal_x(&self) -> f64 {
        self.px + self.py
    }

    /// Marginal probability of a Z-component flip: f_mᶻ = pz + py.
    pub fn marginal_z(&self) -> f64 {
        self.pz + self.py
    }
}

/// Gross flip probability plus ratio of asymmetry α = p_z/p_x ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymmetrySpec {
    pub p: f64,
    pub alpha: f64,
}

impl AsymmetrySpec {
    pub fn new(p: f64, alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(Error::param(format!("gross probability {p} out of [0,1]")));
        }
        if alpha < 1.0 || alpha.is_nan() {
            return Err(Error::param(format!("asymmetry ratio {alpha} must be >= 1")));
        }
        Ok(AsymmetrySpec { p, alpha })
    }
}

/// Relaxation time T₁, dephasing time T₂ and gate duration t, all in the
/// same time units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelaxationSpec {
    pub t1: f64,
    pub t2: f64,
    pub t: f64,
}

impl RelaxationSpec {
    pub fn new(t1: f64, t2: f64, t: f64) -> Result<Self> {
        for (name, v) in [("t1", t1), ("t2", t2), ("t", t)] {
            if v <= 0.0 || !v.is_finite() {
                return Err(Error::param(format!("{name} = {v} must be positive")));
            }
        }
        Ok(RelaxationSpec { t1, t2, t })
    }
}

/// Depolarizing channel: X, Y and Z each with probability p/3.
pub fn depolarizing(p: f64) -> Result<PauliChannelParams> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::param(format!("depolarizing probability {p} out of [0,1]")));
    }
    PauliChannelParams::new(p / 3.0, p / 3.0, p / 3.0)
}

/// Asymmetric Pauli channel: px = py = p/(α+2), pz = α·p/(α+2), so the
/// probabilities sum to p and pz/px = α.
pub fn asymmetric(spec: AsymmetrySpec) -> Result<PauliChannelParams> {
    let share = spec.p / (spec.alpha + 2.0);
    PauliChannelParams::new(share, share, spec.alpha * share)
}

/// Channel parameters from relaxation/dephasing times. Returns
/// (α, px, py, pz); α is the exact ratio pz/px. In the short-gate limit
/// t ≪ T₁ the ratio approaches 2T₁/T₂ − 1.
pub fn from_relaxation(spec: RelaxationSpec) -> Result<(f64, f64, f64, f64)> {
    let px = (1.0 - (-spec.t / spec.t1).exp()) / 4.0;
    let pz = 0.5 - px - (-spec.t / spec.t2).exp() / 2.0;
    if pz < 0.0 {
        return Err(Error::param(format!(
            "relaxation spec yields negative pz = {pz} (T2 too large relative to T1)"
        )));
    }
    let alpha = pz / px;
    Ok((alpha, px, px, pz))
}

/// Short-gate approximation of the asymmetry ratio: α ≈ 2T₁/T₂ − 1.
pub fn short_gate_alpha(spec: RelaxationSpec) -> f64 {
    2.0 * spec.t1 / spec.t2 - 1.0
}

/// Marginal flip probability of the i.i.d. X/Z channel: f_m = 2p/3.
pub fn iid_xz_marginal(p: f64) -> f64 {
    2.0 * p / 3.0
}

/// Samples an N-qubit error: each qubit independently suffers X, Y or Z
/// with the channel probabilities.
pub fn sample_error<R: Rng + ?Sized>(
    params: &PauliChannelParams,
    n: usize,
    rng: &mut R,
) -> SymplecticVec {
    let mut e = SymplecticVec::identity(n);
    let tx = params.px;
    let ty = params.px + params.py;
    let tz = params.px + params.py + params.pz;
    for i in 0..n {
        let u: f64 = rng.random();
        if u < tx {
            e.x_part_mut().set(i, true);
        } else if u < ty {
            e.x_part_mut().set(i, true);
            e.z_part_mut().set(i, true);
        } else if u < tz {
            e.z_part_mut().set(i, true);
        }
    }
    e
}

/// Samples an i.i.d. X/Z error: both halves flip independently with
/// probability f_m.
pub fn sample_iid_xz<R: Rng + ?Sized>(f_m: f64, n: usize, rng: &mut R) -> SymplecticVec {
    let mut e = SymplecticVec::identity(n);
    for i in 0..n {
        if rng.random::<f64>() < f_m {
            e.x_part_mut().set(i, true);
        }
        if rng.random::<f64>() < f_m {
            e.z_part_mut().set(i, true);
        }
    }
    e
}

fn xlog2(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

fn binary_entropy(p: f64) -> f64 {
    -xlog2(p) - xlog2(1.0 - p)
}

/// Hashing bound of the depolarizing channel:
/// C(p) = 1 − H₂(p) − p·log₂3. May be negative at large p.
pub fn hashing_bound(p: f64) -> f64 {
    1.0 - binary_entropy(p) - p * 3f64.log2()
}

/// Hashing bound of the Pauli channel with asymmetry coefficient α:
/// C(p,α) = 1 + (1−p)log₂(1−p) + (2p/(α+2))log₂(p/(α+2))
///            + (αp/(α+2))log₂(αp/(α+2)).
pub fn asymmetric_hashing_bound(p: f64, alpha: f64) -> f64 {
    if p <= 0.0 {
        return 1.0;
    }
    let share = p / (alpha + 2.0);
    1.0 + xlog2(1.0 - p) + 2.0 * xlog2(share) + xlog2(alpha * share)
}

const NOISE_LIMIT_TOL: f64 = 1e-6;
const NOISE_LIMIT_LO: f64 = 1e-9;
const NOISE_LIMIT_HI: f64 = 0.5;

/// The noise limit p*: the channel parameter at which the Hashing bound
/// equals the target rate. Bisection on the monotone physical branch
/// (10⁻⁹, 0.5) to within 10⁻⁶.
pub fn noise_limit(rate: f64, alpha: Option<f64>) -> Result<f64> {
    if !(0.0..=1.0).contains(&rate) || rate <= 0.0 {
        return Err(Error::param(format!("target rate {rate} out of (0,1]")));
    }
    if rate >= 1.0 {
        return Ok(0.0);
    }
    let bound = |p: f64| match alpha {
        Some(a) => asymmetric_hashing_bound(p, a),
        None => hashing_bound(p),
    };
    let (mut lo, mut hi) = (NOISE_LIMIT_LO, NOISE_LIMIT_HI);
    if bound(lo) < rate || bound(hi) > rate {
        return Err(Error::param(format!(
            "no root for rate {rate} in ({NOISE_LIMIT_LO}, {NOISE_LIMIT_HI})"
        )));
    }
    while hi - lo > NOISE_LIMIT_TOL {
        let mid = 0.5 * (lo + hi);
        if bound(mid) > rate {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Distance to the Hashing bound in decibels: δ = 10·log₁₀(p*/p).
pub fn hashing_distance(p_star: f64, p: f64) -> Result<f64> {
    if p_star <= 0.0 || p <= 0.0 {
        return Err(Error::param("hashing distance needs positive probabilities"));
    }
    Ok(10.0 * (p_star / p).log10())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::domain_rng;

    #[test]
    fn depolarizing_splits_evenly() {
        let c = depolarizing(0.0).unwrap();
        assert_eq!((c.px, c.py, c.pz), (0.0, 0.0, 0.0));
        let c = depolarizing(0.05).unwrap();
        assert!((c.px - 0.05 / 3.0).abs() < 1e-15);
        assert!((c.p_identity().powi(3) - 0.857375).abs() < 1e-12);
    }

    #[test]
    fn asymmetric_reproduces_paper_values() {
        let c = asymmetric(AsymmetrySpec::new(0.075, 100.0).unwrap()).unwrap();
        assert!((c.pz - 0.0735).abs() < 5e-5);
        assert!((c.px - 7.35e-4).abs() < 5e-7);
        // α=10, p=0.0465 → f_mˣ ≈ 0.0077
        let c = asymmetric(AsymmetrySpec::new(0.0465, 10.0).unwrap()).unwrap();
        assert!((c.marginal_x() - 0.00775).abs() < 1e-10);
    }

    #[test]
    fn asymmetric_invariants() {
        for &(p, alpha) in &[(0.1, 1.0), (0.075, 100.0), (0.3, 7.5)] {
            let c = asymmetric(AsymmetrySpec::new(p, alpha).unwrap()).unwrap();
            assert!((c.gross() - p).abs() < 1e-14);
            assert!((c.pz / c.px - alpha).abs() < 1e-10);
        }
        let a = asymmetric(AsymmetrySpec::new(0.12, 1.0).unwrap()).unwrap();
        let d = depolarizing(0.12).unwrap();
        assert_eq!((a.px, a.py, a.pz), (d.px, d.py, d.pz));
    }

    #[test]
    fn relaxation_examples() {
        // T₂ = T₁, short gate → α ≈ 1.
        let spec = RelaxationSpec::new(100.0, 100.0, 1e-3).unwrap();
        assert!((short_gate_alpha(spec) - 1.0).abs() < 1e-12);
        let (alpha, _, _, _) = from_relaxation(spec).unwrap();
        assert!((alpha - 1.0).abs() < 0.01);
        // t/T₁ = 0.01 → px = (1−e^{−0.01})/4
        let spec = RelaxationSpec::new(100.0, 100.0, 1.0).unwrap();
        let (_, px, _, _) = from_relaxation(spec).unwrap();
        assert!((px - 0.0024875415627).abs() < 1e-9);
        // T₁ = 50·T₂ → α ≈ 99 in the short-gate limit.
        let spec = RelaxationSpec::new(50.0, 1.0, 1e-4).unwrap();
        assert!((short_gate_alpha(spec) - 99.0).abs() < 1e-9);
        assert!(RelaxationSpec::new(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn iid_marginal() {
        assert_eq!(iid_xz_marginal(0.03), 0.02);
        assert_eq!(iid_xz_marginal(0.0), 0.0);
        assert!((iid_xz_marginal(0.075) - 0.05).abs() < 1e-15);
    }

    #[test]
    fn zero_channel_never_errs() {
        let c = depolarizing(0.0).unwrap();
        let mut rng = domain_rng(1, 1);
        for _ in 0..50 {
            assert!(sample_error(&c, 64, &mut rng).is_identity());
        }
    }

    #[test]
    fn sampled_x_fraction_within_three_sigma() {
        let c = depolarizing(0.3).unwrap();
        let n = 100_000;
        let mut rng = domain_rng(2, 2);
        let e = sample_error(&c, n, &mut rng);
        let x_only = (0..n)
            .filter(|&i| e.x_part().get(i) && !e.z_part().get(i))
            .count() as f64;
        let p = 0.1;
        let sigma = (n as f64 * p * (1.0 - p)).sqrt();
        assert!((x_only - n as f64 * p).abs() < 3.0 * sigma);
    }

    #[test]
    fn extreme_asymmetry_suppresses_x() {
        let c = asymmetric(AsymmetrySpec::new(0.2, 1e6).unwrap()).unwrap();
        let mut rng = domain_rng(3, 3);
        let e = sample_error(&c, 50_000, &mut rng);
        let xw = e.x_part().weight() as f64;
        let zw = e.z_part().weight() as f64;
        assert!(xw / zw < 0.01);
    }

    #[test]
    fn pauli_class_frequencies_chi_square() {
        // 4-class chi-square at 10⁵ samples; 1% critical value for 3 dof.
        let c = PauliChannelParams::new(0.1, 0.2, 0.25).unwrap();
        let n = 100_000usize;
        let mut rng = domain_rng(4, 4);
        let e = sample_error(&c, n, &mut rng);
        let mut counts = [0usize; 4];
        for i in 0..n {
            counts[match (e.x_part().get(i), e.z_part().get(i)) {
                (false, false) => 0,
                (true, false) => 1,
                (true, true) => 2,
                (false, true) => 3,
            }] += 1;
        }
        let expected = [0.45, 0.1, 0.2, 0.25].map(|p| p * n as f64);
        let chi2: f64 = counts
            .iter()
            .zip(&expected)
            .map(|(&o, &e)| (o as f64 - e).powi(2) / e)
            .sum();
        assert!(chi2 < 11.345, "chi-square {chi2} exceeds 1% critical value");
    }

    #[test]
    fn hashing_bound_values() {
        assert!((hashing_bound(0.0) - 1.0).abs() < 1e-15);
        assert!((hashing_bound(0.127) - 0.25).abs() < 5e-4);
        // Cross-check against the 4-class entropy form
        // 1 + (1−p)log₂(1−p) + 3·(p/3)log₂(p/3).
        let p: f64 = 0.0825;
        let entropy_form = 1.0 + (1.0 - p) * (1.0 - p).log2() + p * (p / 3.0).log2();
        assert!((hashing_bound(p) - entropy_form).abs() < 1e-12);
    }

    #[test]
    fn asymmetric_bound_reduces_to_depolarizing() {
        for k in 1..=18 {
            let p = 0.01 * k as f64;
            assert!(
                (asymmetric_hashing_bound(p, 1.0) - hashing_bound(p)).abs() < 1e-12,
                "p = {p}"
            );
        }
        assert!((asymmetric_hashing_bound(0.0, 37.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn asymmetry_raises_capacity() {
        for &p in &[0.05, 0.1, 0.15] {
            assert!(asymmetric_hashing_bound(p, 100.0) > asymmetric_hashing_bound(p, 1.0));
        }
    }

    #[test]
    fn noise_limit_examples() {
        let p_star = noise_limit(0.25, None).unwrap();
        assert!((p_star - 0.127).abs() < 1e-3);
        assert_eq!(noise_limit(1.0, None).unwrap(), 0.0);
        let v = noise_limit(0.5, None).unwrap();
        assert!((hashing_bound(v) - 0.5).abs() < 1e-5);
    }

    #[test]
    fn noise_limit_round_trips_rate() {
        for &r in &[0.1, 0.25, 0.33, 0.5, 0.9] {
            let p = noise_limit(r, None).unwrap();
            assert!((hashing_bound(p) - r).abs() < 1e-5, "rate {r}");
        }
    }

    #[test]
    fn hashing_distance_examples() {
        assert!((hashing_distance(0.127, 0.0825).unwrap() - 1.873).abs() < 0.01);
        assert!((hashing_distance(0.127, 0.0865).unwrap() - 1.668).abs() < 0.01);
        assert_eq!(hashing_distance(0.05, 0.05).unwrap(), 0.0);
        assert!(hashing_distance(0.0, 0.1).is_err());
    }
}
