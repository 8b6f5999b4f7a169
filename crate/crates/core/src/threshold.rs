//! Correlation threshold `mu*(p)` at which the DFS code overtakes the
//! repetition code of the same size.

use crate::bipoly::BiPoly;
use crate::codes::CodeFamily;
use crate::error::{Error, Result};
use crate::fidelity::fidelity_polynomial;
use crate::pauli::FlipBasis;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_GRID: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdQuery {
    pub n: usize,
    pub p: f64,
    pub tolerance: f64,
}

impl ThresholdQuery {
    pub fn new(n: usize, p: f64) -> Self {
        Self {
            n,
            p,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.p > 0.0 && self.p < 0.5) {
            return Err(Error::Probability {
                name: "p",
                value: self.p,
                range: "(0, 0.5)",
            });
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::Probability {
                name: "tolerance",
                value: self.tolerance,
                range: "(0, inf)",
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    /// Smallest root in `[0, 1]`.
    pub mu_star: f64,
    /// Number of sign changes seen on the scan grid.
    pub sign_changes: usize,
}

/// Gap values this small are rounding noise from polynomial evaluation.
pub const NOISE_FLOOR: f64 = 1e-13;

fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

fn grid_sign(x: f64) -> i8 {
    if x.abs() <= NOISE_FLOOR {
        0
    } else {
        sign(x)
    }
}

/// Smallest root of `g` on `[0, 1]`: scan `grid` equispaced points for a
/// sign change, then bisect the first bracket down to `tol`. A gap that only
/// touches zero without changing sign is not a crossing.
pub fn find_crossing(g: impl Fn(f64) -> f64, grid: usize, tol: f64) -> Option<Crossing> {
    assert!(grid >= 2, "scan grid needs at least two points");
    let xs: Vec<f64> = (0..grid).map(|i| i as f64 / (grid - 1) as f64).collect();
    let nonzero: Vec<(usize, i8)> = xs
        .iter()
        .map(|&x| grid_sign(g(x)))
        .enumerate()
        .filter(|&(_, s)| s != 0)
        .collect();
    let changes: Vec<(usize, usize, i8)> = nonzero
        .windows(2)
        .filter(|w| w[0].1 != w[1].1)
        .map(|w| (w[0].0, w[1].0, w[0].1))
        .collect();
    let sign_changes = changes.len();
    let &(a, b, lo_sign) = changes.first()?;
    if b > a + 1 {
        // the gap vanishes on the grid between the two signs
        return Some(Crossing {
            mu_star: xs[a + 1],
            sign_changes,
        });
    }
    let (mut lo, mut hi) = (xs[a], xs[b]);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let s = sign(g(mid));
        if s == 0 {
            lo = mid;
            hi = mid;
            break;
        }
        if s == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(Crossing {
        mu_star: 0.5 * (lo + hi),
        sign_changes,
    })
}

/// Fidelity polynomials of both code families at one size.
#[derive(Debug, Clone)]
pub struct ThresholdSolver {
    n: usize,
    rc: BiPoly,
    dfs: BiPoly,
}

impl ThresholdSolver {
    pub fn new(n: usize) -> Result<Self> {
        Ok(Self {
            n,
            rc: fidelity_polynomial(CodeFamily::Rc, n, FlipBasis::Bit)?.poly,
            dfs: fidelity_polynomial(CodeFamily::Dfs, n, FlipBasis::Bit)?.poly,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `F_DFS(mu, p) − F_RC(mu, p)`
    pub fn gap(&self, mu: f64, p: f64) -> f64 {
        self.dfs.eval(mu, p) - self.rc.eval(mu, p)
    }

    pub fn crossing_with_grid(&self, p: f64, tol: f64, grid: usize) -> Result<Option<Crossing>> {
        ThresholdQuery {
            n: self.n,
            p,
            tolerance: tol,
        }
        .validate()?;
        Ok(find_crossing(|mu| self.gap(mu, p), grid, tol))
    }

    pub fn crossing(&self, p: f64, tol: f64) -> Result<Option<Crossing>> {
        self.crossing_with_grid(p, tol, DEFAULT_GRID)
    }
}

/// `mu*(p)` for one query; `None` when DFS and RC never swap order.
pub fn crossing(query: ThresholdQuery) -> Result<Option<Crossing>> {
    query.validate()?;
    ThresholdSolver::new(query.n)?.crossing(query.p, query.tolerance)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub p: f64,
    pub crossing: Option<Crossing>,
}

/// `mu*(p)` over a grid of error probabilities, sorted by `p`.
pub fn threshold_curve(n: usize, p_grid: &[f64], tol: f64) -> Result<Vec<CurvePoint>> {
    let solver = ThresholdSolver::new(n)?;
    let mut ps = p_grid.to_vec();
    ps.sort_by(f64::total_cmp);
    ps.into_iter()
        .map(|p| {
            Ok(CurvePoint {
                p,
                crossing: solver.crossing(p, tol)?,
            })
        })
        .collect()
}

/// Root of `F_a − F_b` in `mu` at fixed `p` for two arbitrary fidelity
/// polynomials, e.g. the point where four-qubit DFS overtakes three-qubit DFS.
pub fn crossing_between(a: &BiPoly, b: &BiPoly, p: f64, tol: f64) -> Option<Crossing> {
    find_crossing(|mu| a.eval(mu, p) - b.eval(mu, p), DEFAULT_GRID, tol)
}
