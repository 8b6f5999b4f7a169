//! Published closed forms of the entanglement fidelity.
//!
//! Rows are indexed by the power of `mu`; row `i` lists the coefficients of
//! `p^0, p^1, ...` multiplying `mu^i`. Even repetition codes share the
//! polynomial of the odd code one qubit smaller.

use crate::bipoly::BiPoly;
use crate::codes::CodeFamily;
use crate::error::{Error, Result};

const RC3: &[&[i64]] = &[&[1, 0, -3, 2], &[0, -2, 6, -4], &[0, 1, -3, 2]];

const RC5: &[&[i64]] = &[
    &[1, 0, 0, -10, 15, -6],
    &[0, 0, -12, 48, -60, 24],
    &[0, -3, 27, -78, 90, -36],
    &[0, 2, -18, 52, -60, 24],
    &[0, 0, 3, -12, 15, -6],
];

const RC7: &[&[i64]] = &[
    &[1, 0, 0, 0, -35, 84, -70, 20],
    &[0, 0, 0, -60, 300, -540, 420, -120],
    &[0, 0, -30, 270, -900, 1410, -1050, 300],
    &[0, -4, 72, -448, 1300, -1920, 1400, -400],
    &[0, 3, -54, 336, -975, 1440, -1050, 300],
    &[0, 0, 12, -108, 360, -564, 420, -120],
    &[0, 0, 0, 10, -50, 90, -70, 20],
];

const DFS3: &[&[i64]] = &[&[1, -3, 6, -4], &[0, 4, -12, 8], &[0, -2, 6, -4]];

const DFS4: &[&[i64]] = &[
    &[1, -4, 12, -16, 8],
    &[0, 6, -30, 48, -24],
    &[0, -4, 28, -48, 24],
    &[0, 2, -10, 16, -8],
];

const DFS5: &[&[i64]] = &[
    &[1, -5, 20, -40, 40, -16],
    &[0, 8, -56, 144, -160, 64],
    &[0, -6, 66, -204, 240, -96],
    &[0, 4, -44, 136, -160, 64],
    &[0, -2, 14, -36, 40, -16],
];

// As printed. Several coefficients (481, 964, 966, 97, ...) disagree with
// the polynomial derived from the channel; see `verify`.
const DFS6: &[&[i64]] = &[
    &[1, -6, 30, -80, 120, -96, 32],
    &[0, 10, -90, 320, -561, 481, -160],
    &[0, -8, 120, -546, 1078, -964, 320],
    &[0, 6, -103, 519, -1068, 966, -320],
    &[0, -4, 62, -280, 546, -484, 160],
    &[0, 2, -19, 67, -115, 97, -32],
];

/// Whether the printed polynomial is known to carry typos.
pub fn is_flagged(family: CodeFamily, n: usize) -> bool {
    family == CodeFamily::Dfs && n == 6
}

/// The published fidelity polynomial for `(family, n)`.
pub fn published_polynomial(family: CodeFamily, n: usize) -> Result<BiPoly> {
    let rows = match (family, n) {
        (CodeFamily::Rc, 3 | 4) => RC3,
        (CodeFamily::Rc, 5 | 6) => RC5,
        (CodeFamily::Rc, 7 | 8) => RC7,
        (CodeFamily::Dfs, 3) => DFS3,
        (CodeFamily::Dfs, 4) => DFS4,
        (CodeFamily::Dfs, 5) => DFS5,
        (CodeFamily::Dfs, 6) => DFS6,
        _ => {
            return Err(Error::UnsupportedFixture {
                family: family.to_string(),
                n,
            })
        }
    };
    Ok(BiPoly::from_rows(rows))
}
