//! Tabular data behind the fidelity and threshold plots.

use crate::codes::CodeFamily;
use crate::error::Result;
use crate::fidelity::fidelity_polynomial;
use crate::pauli::FlipBasis;
use crate::threshold::{ThresholdSolver, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Repetition codes n = 3, 5, 7 against `mu` at p = 0.45.
    RepetitionVsMu,
    /// Four-qubit RC and DFS against `mu` for p in {0.45, 0.40, 0.35}.
    RcVsDfs,
    /// Threshold curve `mu*(p)` for four qubits.
    Threshold,
}

impl std::str::FromStr for Figure {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fig1" => Ok(Figure::RepetitionVsMu),
            "fig2" => Ok(Figure::RcVsDfs),
            "fig3" => Ok(Figure::Threshold),
            other => Err(format!(
                "unknown figure {other:?} (expected fig1, fig2 or fig3)"
            )),
        }
    }
}

pub const FIG1_P: f64 = 0.45;
pub const FIG2_PS: [f64; 3] = [0.45, 0.40, 0.35];
pub const MU_POINTS: usize = 101;
pub const FIG3_P_MIN: f64 = 0.01;
pub const FIG3_P_MAX: f64 = 0.49;
pub const FIG3_STEPS: usize = 49;

/// `steps` equispaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..steps)
            .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
            .collect(),
    }
}

/// Header and rows of plain numbers; `None` marks an empty cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Option<f64>>>,
}

pub fn figure_table(figure: Figure) -> Result<Table> {
    match figure {
        Figure::RepetitionVsMu => {
            let polys = [3, 5, 7]
                .map(|n| fidelity_polynomial(CodeFamily::Rc, n, FlipBasis::Bit).map(|f| f.poly));
            let [f3, f5, f7] = polys;
            let (f3, f5, f7) = (f3?, f5?, f7?);
            let rows = linspace(0.0, 1.0, MU_POINTS)
                .into_iter()
                .map(|mu| {
                    vec![
                        Some(mu),
                        Some(f3.eval(mu, FIG1_P)),
                        Some(f5.eval(mu, FIG1_P)),
                        Some(f7.eval(mu, FIG1_P)),
                    ]
                })
                .collect();
            Ok(Table {
                header: vec!["mu", "F_rc3", "F_rc5", "F_rc7"],
                rows,
            })
        }
        Figure::RcVsDfs => {
            let rc = fidelity_polynomial(CodeFamily::Rc, 4, FlipBasis::Bit)?.poly;
            let dfs = fidelity_polynomial(CodeFamily::Dfs, 4, FlipBasis::Bit)?.poly;
            let mut rows = Vec::new();
            for p in FIG2_PS {
                for mu in linspace(0.0, 1.0, MU_POINTS) {
                    rows.push(vec![
                        Some(p),
                        Some(mu),
                        Some(rc.eval(mu, p)),
                        Some(dfs.eval(mu, p)),
                    ]);
                }
            }
            Ok(Table {
                header: vec!["p", "mu", "F_rc4", "F_dfs4"],
                rows,
            })
        }
        Figure::Threshold => {
            let solver = ThresholdSolver::new(4)?;
            let mut rows = Vec::new();
            for p in linspace(FIG3_P_MIN, FIG3_P_MAX, FIG3_STEPS) {
                let c = solver.crossing(p, DEFAULT_TOLERANCE)?;
                rows.push(vec![
                    Some(p),
                    c.map(|c| c.mu_star),
                    Some(c.map_or(0, |c| c.sign_changes) as f64),
                ]);
            }
            Ok(Table {
                header: vec!["p", "mu_star", "crossings"],
                rows,
            })
        }
    }
}
