//! Point dynamics on `[0, 1]`: the intermittent map `f(x) = x + x^z (mod 1)`,
//! its piecewise-linear counterpart built from a sequence `(ε_k)`, partition
//! cells, the preimage ladder, and a finite-depth approximation of the
//! conjugacy between the two.
//!
//! Cells are half-open on the left and closed on the right exactly as the
//! branch conditions are written: `A_k = (ε_k, ε_{k-1}]`, `B_k = (x_k,
//! x_{k-1}]`, so a boundary point always resolves to the cell it closes.
//! Floating-point orbits of either map are cross-checks only; statistical
//! experiments run on the exact renewal dynamics instead.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seq::EpsilonSequence;

/// Default residual target for bisection root finding.
pub const DEFAULT_ROOT_TOL: f64 = 1e-13;

/// Applies `f(x) = x + x^z (mod 1)` with `z > 1`.
///
/// The wrap is applied only when `x + x^z` exceeds 1, so `f(x) = 1` is
/// returned as 1, keeping the image of the outermost cell equal to `(0, 1]`.
pub fn manneville_apply(z: f64, x: f64) -> Result<f64> {
    check_z(z)?;
    check_unit_interval(x)?;
    let y = x + x.powf(z);
    Ok(if y > 1.0 { y - 1.0 } else { y })
}

fn check_z(z: f64) -> Result<()> {
    if z > 1.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("map exponent z = {z} must exceed 1")))
    }
}

fn check_unit_interval(x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain(format!("point {x} outside [0, 1]")))
    }
}

/// Solves `x + x^z = target` on `[lo, hi]` by bisection.
///
/// The bracket is guaranteed for the branches used here (`g(lo) < 0 <
/// g(hi)`); bisection is preferred to Newton because the derivative
/// degenerates at the neutral fixed point.
fn solve_branch(z: f64, target: f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    debug_assert!(lo + lo.powf(z) <= target && hi + hi.powf(z) >= target);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let g = mid + mid.powf(z) - target;
        if g.abs() < tol || hi - lo <= f64::EPSILON * hi {
            return mid;
        }
        if g < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The descending preimages `x_0 > x_1 > ...` of 1 under the laminar
/// branches: `x_0 + x_0^z = 1` and `x_k + x_k^z = x_{k-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PreimageLadder {
    z: f64,
    points: Vec<f64>,
}

impl PreimageLadder {
    /// Builds the ladder down to `x_max_index`, each rung solved to the
    /// given residual.
    pub fn build(z: f64, max_index: usize, tol: f64) -> Result<Self> {
        check_z(z)?;
        if !(tol > 0.0) {
            return Err(Error::Domain(format!("tolerance {tol} must be positive")));
        }
        let mut points = Vec::with_capacity(max_index + 1);
        let mut target = 1.0;
        for _ in 0..=max_index {
            let x = solve_branch(z, target, 0.0, target.min(1.0), tol);
            if !(x > 0.0 && x < target) {
                return Err(Error::Numeric(format!("ladder rung degenerated at target {target}")));
            }
            points.push(x);
            target = x;
        }
        Ok(Self { z, points })
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// `x_k`.
    pub fn point(&self, k: usize) -> f64 {
        self.points[k]
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Cell index of `x ∈ (0, 1]`: the `i` with `x ∈ B_i = (x_i, x_{i-1}]`.
    fn cell_index(&self, x: f64) -> Result<u64> {
        if x > self.points[0] {
            return Ok(0);
        }
        // First index whose rung lies strictly below x, over a descending list.
        let idx = self.points.partition_point(|&p| p >= x);
        if idx == self.points.len() {
            return Err(Error::LadderDepth { depth: self.points.len() });
        }
        Ok(idx as u64)
    }
}

/// Applies the piecewise-linear map: affine from `A_k` onto `A_{k-1}` for
/// `k ≥ 1`, affine from `A_0` onto `(0, 1]`, and `0 ↦ 0`.
pub fn linear_apply(seq: &EpsilonSequence, x: f64) -> Result<f64> {
    check_unit_interval(x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let k = seq.first_index_below(x);
    let y = if k == 0 {
        let eps0 = seq.eps(0);
        (x - eps0) / (1.0 - eps0)
    } else {
        let k = k as f64;
        let upper = seq.eps_real(k - 1.0);
        let lower = seq.eps_real(k);
        let above = if k == 1.0 { 1.0 } else { seq.eps_real(k - 2.0) };
        (above - upper) / (upper - lower) * (x - lower) + upper
    };
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::Numeric(format!("piecewise-linear branch unresolvable at x = {x}")))
    }
}

/// One of the two map variants, ready to iterate and index cells.
#[derive(Debug, Clone)]
pub enum IntervalMap {
    Manneville { z: f64, ladder: PreimageLadder },
    PiecewiseLinear { seq: EpsilonSequence },
}

/// Default resolved depth for the intermittent map's partition.
pub const DEFAULT_LADDER_DEPTH: usize = 4096;

impl IntervalMap {
    pub fn manneville(z: f64) -> Result<Self> {
        Self::manneville_with_depth(z, DEFAULT_LADDER_DEPTH, DEFAULT_ROOT_TOL)
    }

    pub fn manneville_with_depth(z: f64, depth: usize, tol: f64) -> Result<Self> {
        Ok(Self::Manneville { z, ladder: PreimageLadder::build(z, depth, tol)? })
    }

    pub fn piecewise_linear(seq: EpsilonSequence) -> Self {
        Self::PiecewiseLinear { seq }
    }

    /// One step of the dynamics.
    pub fn apply(&self, x: f64) -> Result<f64> {
        match self {
            Self::Manneville { z, .. } => manneville_apply(*z, x),
            Self::PiecewiseLinear { seq } => linear_apply(seq, x),
        }
    }

    /// Index of the partition cell containing `x ∈ (0, 1]`.
    ///
    /// `x = 0` is the fixed point and belongs to no half-open cell; for the
    /// intermittent variant, points below the deepest resolved rung report
    /// [`Error::LadderDepth`].
    pub fn cell_index(&self, x: f64) -> Result<u64> {
        check_unit_interval(x)?;
        if x == 0.0 {
            return Err(Error::FixedPointCell);
        }
        match self {
            Self::Manneville { ladder, .. } => ladder.cell_index(x),
            Self::PiecewiseLinear { seq } => Ok(seq.first_index_below(x)),
        }
    }
}

/// Serializable map specification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MapSpec {
    Manneville { z: f64 },
    Linear { seq: EpsilonSequence },
}

impl MapSpec {
    pub fn build(&self) -> Result<IntervalMap> {
        match self {
            Self::Manneville { z } => IntervalMap::manneville(*z),
            Self::Linear { seq } => {
                seq.check_params()?;
                Ok(IntervalMap::piecewise_linear(*seq))
            }
        }
    }
}

/// Finite-depth approximation of the conjugacy `h` with `h(x_w) = ε_w` on
/// cylinder endpoints, extended by monotone piecewise-linear interpolation
/// between matched endpoints (with `h(0) = 0`, `h(1) = 1`).
#[derive(Debug, Clone)]
pub struct ConjugacyApprox {
    xs: Vec<f64>,
    hs: Vec<f64>,
}

impl ConjugacyApprox {
    /// Matches every ladder rung at depth 1 and, for each further depth,
    /// prepends `branch` cylinder indices to the previous level's endpoint
    /// words; `x`-endpoints are pulled back through the map's inverse
    /// branches by bisection, `ε`-endpoints through the affine inverses.
    pub fn build(
        seq: &EpsilonSequence,
        ladder: &PreimageLadder,
        depth: usize,
        branch: usize,
        tol: f64,
    ) -> Result<Self> {
        if depth < 1 {
            return Err(Error::Domain("conjugacy depth must be at least 1".into()));
        }
        let z = ladder.z();
        let base: Vec<(f64, f64)> = (0..ladder.len())
            .map(|k| (ladder.point(k), seq.eps(k as i64)))
            .collect();
        let mut pairs = base.clone();
        let mut frontier = base;
        let branch = branch.min(ladder.len().saturating_sub(1));
        for _ in 1..depth {
            let mut next = Vec::with_capacity(frontier.len() * branch);
            for &(xw, hw) in &frontier {
                for j in 0..branch {
                    // Pull x_w back through the turbulent branch, then j
                    // laminar branches; mirror the chain on the linear side.
                    let mut x = solve_branch(z, 1.0 + xw, ladder.point(0), 1.0, tol);
                    for m in 1..=j {
                        x = solve_branch(z, x, ladder.point(m), ladder.point(m - 1), tol);
                    }
                    let mut h = seq.eps(0) + hw * (1.0 - seq.eps(0));
                    for m in 1..=j {
                        let upper = seq.eps(m as i64 - 1);
                        let lower = seq.eps(m as i64);
                        let above = seq.eps(m as i64 - 2);
                        h = lower + (h - upper) * (upper - lower) / (above - upper);
                    }
                    next.push((x, h));
                }
            }
            pairs.extend_from_slice(&next);
            frontier = next;
        }

        pairs.push((0.0, 0.0));
        pairs.push((1.0, 1.0));
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        pairs.dedup_by(|a, b| a.0 == b.0);

        let xs: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let hs: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        // The endpoint correspondence is order-preserving; a violation here
        // means a pullback bisection landed on the wrong branch.
        if hs.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Numeric("conjugacy endpoint table is not monotone".into()));
        }
        Ok(Self { xs, hs })
    }

    /// Number of matched endpoints.
    pub fn nodes(&self) -> usize {
        self.xs.len()
    }

    /// Evaluates the interpolant; exact at every matched endpoint.
    pub fn eval(&self, x: f64) -> f64 {
        let x = x.clamp(0.0, 1.0);
        let hi = self.xs.partition_point(|&p| p < x);
        if hi == 0 {
            return self.hs[0];
        }
        if hi == self.xs.len() {
            return *self.hs.last().unwrap();
        }
        if self.xs[hi] == x {
            return self.hs[hi];
        }
        let (x0, x1) = (self.xs[hi - 1], self.xs[hi]);
        let (h0, h1) = (self.hs[hi - 1], self.hs[hi]);
        h0 + (x - x0) / (x1 - x0) * (h1 - h0)
    }
}

/// Depth-capped conjugacy evaluation with default table sizes.
pub fn conjugacy_approx(seq: &EpsilonSequence, z: f64, x: f64, depth: usize) -> Result<f64> {
    let ladder = PreimageLadder::build(z, 64, DEFAULT_ROOT_TOL)?;
    let approx = ConjugacyApprox::build(seq, &ladder, depth, 6, DEFAULT_ROOT_TOL)?;
    Ok(approx.eval(x))
}
