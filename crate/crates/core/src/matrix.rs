//! Exact solution of finite two-player zero-sum matrix games.
//!
//! The payoff matrix is shifted to be strictly positive and the game is
//! solved as the linear program `max 1'y  s.t.  A y <= 1, y >= 0` with a
//! dense tableau simplex under Bland's rule. The column strategy is the
//! normalised primal, the row strategy the normalised dual.
//!
//! Every floating-point solution is certified: the row strategy guarantees
//! `lo`, the column strategy concedes at most `hi`, and the value lies in
//! `[lo, hi]`. When the certificate is wider than [`CERTIFICATE_TOL`], or the
//! floating-point pivots fail, the game is re-solved in exact rational
//! arithmetic. Entries of an `f64` matrix are dyadic rationals, so the
//! exact solution is the true one up to the final rounding.

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Pivot tolerance of the floating-point simplex.
const PIVOT_TOL: f64 = 1e-12;
/// Widest accepted certificate `hi - lo` for a floating-point solution.
pub const CERTIFICATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixGameSolution {
    /// Value to the row (maximising) player.
    pub value: f64,
    pub row_strategy: Vec<f64>,
    pub col_strategy: Vec<f64>,
}

/// Solve the zero-sum game with payoff `a[(i, j)]` to the row player.
///
/// Panics on an empty matrix or a non-finite entry.
pub fn solve_matrix_game(a: &DMatrix<f64>) -> MatrixGameSolution {
    let (m, n) = a.shape();
    assert!(m > 0 && n > 0, "empty payoff matrix");
    assert!(a.iter().all(|x| x.is_finite()), "non-finite payoff");
    if m == 1 || n == 1 {
        return solve_degenerate(a);
    }
    if let Some(sol) = solve_float(a) {
        let (lo, hi) = certificate(a, &sol);
        if hi - lo <= CERTIFICATE_TOL {
            // Rounding can leave `lo` a hair above `hi`.
            let value = if lo <= hi { sol.value.clamp(lo, hi) } else { 0.5 * (lo + hi) };
            return MatrixGameSolution { value, ..sol };
        }
    }
    solve_exact(a)
}

/// Guaranteed lower and upper bounds on the value from the two strategies.
pub fn certificate(a: &DMatrix<f64>, sol: &MatrixGameSolution) -> (f64, f64) {
    let (m, n) = a.shape();
    let lo = (0..n)
        .map(|j| (0..m).map(|i| sol.row_strategy[i] * a[(i, j)]).sum::<f64>())
        .fold(f64::INFINITY, f64::min);
    let hi = (0..m)
        .map(|i| (0..n).map(|j| sol.col_strategy[j] * a[(i, j)]).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

/// Floating-point tableau simplex; `None` if the pivots break down.
fn solve_float(a: &DMatrix<f64>) -> Option<MatrixGameSolution> {
    let (m, n) = a.shape();
    let shift = 1.0 - a.min();
    let width = n + m + 1;
    let mut t = vec![0.0f64; (m + 1) * width];
    for i in 0..m {
        for j in 0..n {
            t[i * width + j] = a[(i, j)] + shift;
        }
        t[i * width + n + i] = 1.0;
        t[i * width + width - 1] = 1.0;
    }
    // Objective row holds reduced costs c_j - z_j; its last entry is -z.
    for j in 0..n {
        t[m * width + j] = 1.0;
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Bland terminates in exact arithmetic well within this many pivots.
    for _ in 0..64 * (m + n) {
        let Some(enter) = (0..n + m).find(|&j| t[m * width + j] > PIVOT_TOL) else {
            let z = -t[m * width + width - 1];
            let mut col = vec![0.0; n];
            for (i, &b) in basis.iter().enumerate() {
                if b < n {
                    col[b] = t[i * width + width - 1];
                }
            }
            let row: Vec<f64> = (0..m).map(|i| -t[m * width + n + i]).collect();
            return Some(MatrixGameSolution {
                value: 1.0 / z - shift,
                row_strategy: normalise(row)?,
                col_strategy: normalise(col)?,
            });
        };
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            let coef = t[i * width + enter];
            if coef > PIVOT_TOL {
                let ratio = t[i * width + width - 1] / coef;
                let better = match leave {
                    None => true,
                    Some(l) => ratio < best || (ratio == best && basis[i] < basis[l]),
                };
                if better {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        let r = leave?;
        pivot(&mut t, width, m + 1, r, enter);
        basis[r] = enter;
    }
    None
}

fn pivot(t: &mut [f64], width: usize, rows: usize, r: usize, c: usize) {
    let p = t[r * width + c];
    for j in 0..width {
        t[r * width + j] /= p;
    }
    for i in 0..rows {
        if i == r {
            continue;
        }
        let f = t[i * width + c];
        if f != 0.0 {
            for j in 0..width {
                t[i * width + j] -= f * t[r * width + j];
            }
            t[i * width + c] = 0.0;
        }
    }
}

/// The same tableau simplex over the rationals.
fn solve_exact(a: &DMatrix<f64>) -> MatrixGameSolution {
    let (m, n) = a.shape();
    let q = |x: f64| BigRational::from_float(x).expect("finite payoff");
    let entries: Vec<BigRational> = a.iter().map(|&x| q(x)).collect();
    let min = entries.iter().min().expect("nonempty").clone();
    let shift = BigRational::one() - min;
    let width = n + m + 1;
    let zero = BigRational::zero();
    let mut t = vec![zero.clone(); (m + 1) * width];
    for i in 0..m {
        for j in 0..n {
            // nalgebra storage is column-major.
            t[i * width + j] = &entries[j * m + i] + &shift;
        }
        t[i * width + n + i] = BigRational::one();
        t[i * width + width - 1] = BigRational::one();
    }
    for j in 0..n {
        t[m * width + j] = BigRational::one();
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    while let Some(enter) = (0..n + m).find(|&j| t[m * width + j].is_positive()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            let coef = &t[i * width + enter];
            if coef.is_positive() {
                let ratio = &t[i * width + width - 1] / coef;
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (r, _) = leave.expect("bounded: the shifted matrix is positive");
        let p = t[r * width + enter].clone();
        for j in 0..width {
            t[r * width + j] = &t[r * width + j] / &p;
        }
        for i in 0..=m {
            if i == r || t[i * width + enter].is_zero() {
                continue;
            }
            let f = t[i * width + enter].clone();
            for j in 0..width {
                let d = &f * &t[r * width + j];
                t[i * width + j] -= d;
            }
        }
        basis[r] = enter;
    }
    let z = -t[m * width + width - 1].clone();
    let mut col = vec![zero.clone(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            col[b] = t[i * width + width - 1].clone();
        }
    }
    let row: Vec<BigRational> = (0..m).map(|i| -t[m * width + n + i].clone()).collect();
    let to_strategy = |v: Vec<BigRational>| -> Vec<f64> {
        let total: BigRational = v.iter().fold(BigRational::zero(), |s, x| s + x);
        v.iter().map(|x| (x / &total).to_f64().expect("probability")).collect()
    };
    let value = (BigRational::one() / z - shift).to_f64().expect("finite value");
    MatrixGameSolution { value, row_strategy: to_strategy(row), col_strategy: to_strategy(col) }
}

fn normalise(mut v: Vec<f64>) -> Option<Vec<f64>> {
    for x in v.iter_mut() {
        *x = x.max(0.0);
    }
    let s: f64 = v.iter().sum();
    if !(s > 0.0 && s.is_finite()) {
        return None;
    }
    for x in v.iter_mut() {
        *x /= s;
    }
    Some(v)
}

/// One player has a single action: the other simply optimises.
fn solve_degenerate(a: &DMatrix<f64>) -> MatrixGameSolution {
    let (m, n) = a.shape();
    let pick = |vals: Vec<f64>, maximise: bool| {
        let mut best = 0;
        for (k, &v) in vals.iter().enumerate() {
            if (maximise && v > vals[best]) || (!maximise && v < vals[best]) {
                best = k;
            }
        }
        let mut s = vec![0.0; vals.len()];
        s[best] = 1.0;
        (vals[best], s)
    };
    if m == 1 {
        let (value, col) = pick(a.row(0).iter().copied().collect(), false);
        MatrixGameSolution { value, row_strategy: vec![1.0], col_strategy: col }
    } else {
        let (value, row) = pick(a.column(0).iter().copied().collect(), true);
        MatrixGameSolution { value, row_strategy: row, col_strategy: vec![1.0; n] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_optimal(a: &DMatrix<f64>, sol: &MatrixGameSolution) {
        let (m, n) = a.shape();
        for j in 0..n {
            let guarantee: f64 = (0..m).map(|i| sol.row_strategy[i] * a[(i, j)]).sum();
            assert!(guarantee >= sol.value - 1e-12, "row strategy fails column {j}");
        }
        for i in 0..m {
            let exposure: f64 = (0..n).map(|j| sol.col_strategy[j] * a[(i, j)]).sum();
            assert!(exposure <= sol.value + 1e-12, "column strategy fails row {i}");
        }
    }

    #[test]
    fn matching_pennies() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, -1.0, -1.0, 1.0]);
        let s = solve_matrix_game(&a);
        assert!(s.value.abs() < 1e-12);
        assert!((s.row_strategy[0] - 0.5).abs() < 1e-12);
        check_optimal(&a, &s);
    }

    #[test]
    fn rock_paper_scissors_is_uniform() {
        let a = DMatrix::from_row_slice(3, 3, &[0.0, -1.0, 1.0, 1.0, 0.0, -1.0, -1.0, 1.0, 0.0]);
        let s = solve_matrix_game(&a);
        assert!(s.value.abs() < 1e-12);
        for p in s.row_strategy.iter().chain(&s.col_strategy) {
            assert!((p - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn saddle_point() {
        let a = DMatrix::from_row_slice(2, 3, &[3.0, 1.0, 4.0, 2.0, 0.5, 5.0]);
        let s = solve_matrix_game(&a);
        assert!((s.value - 1.0).abs() < 1e-12);
        check_optimal(&a, &s);
    }

    #[test]
    fn degenerate_shapes() {
        let row = DMatrix::from_row_slice(1, 3, &[2.0, -1.0, 0.0]);
        assert_eq!(solve_matrix_game(&row).value, -1.0);
        let col = DMatrix::from_row_slice(3, 1, &[2.0, -1.0, 0.0]);
        assert_eq!(solve_matrix_game(&col).value, 2.0);
    }

    #[test]
    fn known_mixed_value() {
        // Row mixes 2/5, 3/5: value 1/5.
        let a = DMatrix::from_row_slice(2, 2, &[2.0, -1.0, -1.0, 1.0]);
        let s = solve_matrix_game(&a);
        assert!((s.value - 0.2).abs() < 1e-12);
        assert!((s.row_strategy[0] - 0.4).abs() < 1e-12);
        check_optimal(&a, &s);
    }
    #[test]
    fn degenerate_stage_game_near_zero() {
        // Entries agree up to rounding noise; row 3 guarantees about 0.
        let a = DMatrix::from_row_slice(7, 4, &[5.995204332975846e-16, 3.9968028886505636e-16, -0.09999999999999958, 5.995204332975846e-16, 0.10000000000000017, -0.04110287630019529, -0.03479886177383864, 1.9984014443252818e-16, 0.10000000000000017, 0.10000000000000038, 1.9984014443252818e-16, -0.12872882913321462, 0.09999999999999938, 1.9984014443252818e-16, 5.995204332975846e-16, 1.9984014443252818e-16, 0.09999999999999998, 1.9984014443252818e-16, 5.995204332975846e-16, -0.028526471010894918, 0.10000000000000038, -0.027335703215721076, 1.9984014443252818e-16, -0.018124616197989663, -0.12531198583411826, 3.9968028886505636e-16, 1.9984014443252818e-16, 5.995204332975846e-16]);
        let s = solve_matrix_game(&a);
        assert!(s.value.abs() < 1e-12, "value {}", s.value);
        check_optimal(&a, &s);
    }

    #[test]
    fn exact_route_agrees_on_known_games() {
        let a = DMatrix::from_row_slice(2, 2, &[2.0, -1.0, -1.0, 1.0]);
        let s = solve_exact(&a);
        assert!((s.value - 0.2).abs() < 1e-15);
        assert!((s.row_strategy[0] - 0.4).abs() < 1e-15);
        let rps = DMatrix::from_row_slice(3, 3, &[0.0, -1.0, 1.0, 1.0, 0.0, -1.0, -1.0, 1.0, 0.0]);
        assert_eq!(solve_exact(&rps).value, 0.0);
    }

    #[test]
    fn random_degenerate_games() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let levels = [-0.1, -0.03, 0.0, 0.0, 0.0, 0.1];
        for k in 0..3000 {
            let (m, n) = (rng.gen_range(2..8), rng.gen_range(2..8));
            let noise = [2e-16, 1e-13, 1e-10][k % 3];
            let a = DMatrix::from_fn(m, n, |_, _| levels[rng.gen_range(0..levels.len())] + rng.gen_range(0..4) as f64 * noise);
            check_optimal(&a, &solve_matrix_game(&a));
        }
    }
}
