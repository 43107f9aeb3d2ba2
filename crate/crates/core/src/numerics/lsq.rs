use crate::error::{EosError, Result};

/// Column scaling for design rows (T, T²/2, 1) with T in the 10³ K range.
pub const CVT_COLUMN_SCALE: [f64; 3] = [1e-3, 1e-7, 1.0];

/// Condition estimate of the equilibrated normal matrix above which the
/// system is declared rank-deficient.
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LsqFit {
    /// Coefficients of the three design columns, in original units.
    pub params: [f64; 3],
    /// Euclidean norm of the residual vector.
    pub residual_norm: f64,
    /// 1-norm condition estimate of the equilibrated normal matrix.
    pub condition: f64,
}

/// Linear least squares with three unknowns via column-scaled normal equations.
///
/// Columns are multiplied by `column_scale`, the normal matrix is then
/// equilibrated by its diagonal and solved by Cholesky factorisation.
pub fn lsq_fit_3(rows: &[[f64; 3]], targets: &[f64], column_scale: [f64; 3]) -> Result<LsqFit> {
    if rows.len() != targets.len() {
        return Err(EosError::validation(format!("{} design rows but {} targets", rows.len(), targets.len())));
    }
    if rows.len() < 3 {
        return Err(EosError::validation("at least three rows are required"));
    }
    if column_scale.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
        return Err(EosError::validation("column scales must be positive"));
    }

    let mut normal = [[0.0f64; 3]; 3];
    let mut rhs = [0.0f64; 3];
    for (row, &y) in rows.iter().zip(targets) {
        let scaled = [row[0] * column_scale[0], row[1] * column_scale[1], row[2] * column_scale[2]];
        for i in 0..3 {
            rhs[i] += scaled[i] * y;
            for j in 0..3 {
                normal[i][j] += scaled[i] * scaled[j];
            }
        }
    }

    let diag: Vec<f64> = (0..3).map(|i| normal[i][i].sqrt()).collect();
    if diag.iter().any(|d| !(d.is_finite() && *d > 0.0)) {
        return Err(EosError::RankDeficiency { condition: f64::INFINITY });
    }
    let mut m = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = normal[i][j] / (diag[i] * diag[j]);
        }
    }
    let condition = condition_1(&m);
    if !(condition.is_finite() && condition <= MAX_CONDITION) {
        return Err(EosError::RankDeficiency { condition });
    }

    let b = [rhs[0] / diag[0], rhs[1] / diag[1], rhs[2] / diag[2]];
    let z = cholesky_solve(&m, b).ok_or(EosError::RankDeficiency { condition })?;
    let params = [z[0] / diag[0] * column_scale[0], z[1] / diag[1] * column_scale[1], z[2] / diag[2] * column_scale[2]];

    let residual_norm = rows
        .iter()
        .zip(targets)
        .map(|(row, y)| {
            let fit = row[0] * params[0] + row[1] * params[1] + row[2] * params[2];
            (fit - y).powi(2)
        })
        .sum::<f64>()
        .sqrt();

    Ok(LsqFit { params, residual_norm, condition })
}

fn norm_1(m: &[[f64; 3]; 3]) -> f64 {
    (0..3).map(|j| (0..3).map(|i| m[i][j].abs()).sum::<f64>()).fold(0.0, f64::max)
}

fn condition_1(m: &[[f64; 3]; 3]) -> f64 {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if det <= 0.0 || !det.is_finite() {
        return f64::INFINITY;
    }
    let cof = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    let inv = [
        [cof(1, 2, 1, 2) / det, -cof(0, 2, 1, 2) / det, cof(0, 1, 1, 2) / det],
        [-cof(1, 2, 0, 2) / det, cof(0, 2, 0, 2) / det, -cof(0, 1, 0, 2) / det],
        [cof(1, 2, 0, 1) / det, -cof(0, 2, 0, 1) / det, cof(0, 1, 0, 1) / det],
    ];
    norm_1(m) * norm_1(&inv)
}

fn cholesky_solve(m: &[[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let mut l = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let d = m[i][i] - s;
                if d <= 0.0 {
                    return None;
                }
                l[i][j] = d.sqrt();
            } else {
                l[i][j] = (m[i][j] - s) / l[j][j];
            }
        }
    }
    let mut y = [0.0f64; 3];
    for i in 0..3 {
        let s: f64 = (0..i).map(|k| l[i][k] * y[k]).sum();
        y[i] = (b[i] - s) / l[i][i];
    }
    let mut x = [0.0f64; 3];
    for i in (0..3).rev() {
        let s: f64 = (i + 1..3).map(|k| l[k][i] * x[k]).sum();
        x[i] = (y[i] - s) / l[i][i];
    }
    Some(x)
}
