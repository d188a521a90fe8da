//! Nelder–Mead simplex minimization and a Newton polish step.

/// Stopping rules for [`nelder_mead`].
#[derive(Debug, Clone, Copy)]
pub(crate) struct SimplexOptions {
    /// Largest vertex distance from the best vertex (max norm).
    pub x_tol: f64,
    /// Largest objective spread across vertices.
    pub f_tol: f64,
    pub max_iter: usize,
    /// Initial edge length along each coordinate.
    pub step: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            x_tol: 1e-8,
            f_tol: 1e-10,
            max_iter: 5000,
            step: 0.25,
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Minimum {
    pub x: Vec<f64>,
    pub fx: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Minimizes `f` from `x0`. Non-finite objective values are treated as +∞,
/// so infeasible regions simply repel the simplex.
pub(crate) fn nelder_mead<F>(f: F, x0: &[f64], opts: &SimplexOptions) -> Minimum
where
    F: Fn(&[f64]) -> f64,
{
    let eval = |x: &[f64]| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let dim = x0.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    simplex.push(x0.to_vec());
    for i in 0..dim {
        let mut v = x0.to_vec();
        v[i] += opts.step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| eval(v)).collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iter {
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let spread = values[dim] - values[0];
        let diameter = simplex[1..]
            .iter()
            .flat_map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if diameter < opts.x_tol && spread.abs() < opts.f_tol {
            converged = true;
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> = (0..dim)
            .map(|j| simplex[..dim].iter().map(|v| v[j]).sum::<f64>() / dim as f64)
            .collect();
        let toward = |coef: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[dim])
                .map(|(c, w)| c + coef * (c - w))
                .collect()
        };

        let reflected = toward(1.0);
        let f_r = eval(&reflected);
        if f_r < values[0] {
            let expanded = toward(2.0);
            let f_e = eval(&expanded);
            if f_e < f_r {
                simplex[dim] = expanded;
                values[dim] = f_e;
            } else {
                simplex[dim] = reflected;
                values[dim] = f_r;
            }
            continue;
        }
        if f_r < values[dim - 1] {
            simplex[dim] = reflected;
            values[dim] = f_r;
            continue;
        }
        let (contracted, f_c) = if f_r < values[dim] {
            let c = toward(0.5);
            let fc = eval(&c);
            (c, fc)
        } else {
            let c = toward(-0.5);
            let fc = eval(&c);
            (c, fc)
        };
        if f_c < values[dim].min(f_r) {
            simplex[dim] = contracted;
            values[dim] = f_c;
            continue;
        }
        // shrink toward the best vertex
        let best = simplex[0].clone();
        for i in 1..=dim {
            for j in 0..dim {
                simplex[i][j] = best[j] + 0.5 * (simplex[i][j] - best[j]);
            }
            values[i] = eval(&simplex[i]);
        }
    }
    let best = (0..=dim)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .unwrap_or(0);
    Minimum {
        x: simplex[best].clone(),
        fx: values[best],
        iterations,
        converged,
    }
}

/// Repeats [`nelder_mead`] from its own optimum until a restart no longer
/// improves the objective; guards against premature collapse of the simplex.
pub(crate) fn nelder_mead_restarted<F>(f: F, x0: &[f64], opts: &SimplexOptions) -> Minimum
where
    F: Fn(&[f64]) -> f64,
{
    let mut best = nelder_mead(&f, x0, opts);
    let mut total = best.iterations;
    for _ in 0..4 {
        let mut again = nelder_mead(&f, &best.x, &SimplexOptions { step: 0.05, ..*opts });
        total += again.iterations;
        let improved = again.fx < best.fx - opts.f_tol;
        if again.fx <= best.fx {
            again.iterations = total;
            best = again;
        }
        if !improved {
            break;
        }
    }
    best.iterations = total;
    best
}

/// Newton iterations on `grad = 0` with a central-difference Jacobian of
/// `grad`. A step is kept only if it lowers `f`; the input is returned
/// unchanged if no step helps.
pub(crate) fn newton_polish<F, G>(f: F, grad: G, x0: &[f64], steps: usize) -> Vec<f64>
where
    F: Fn(&[f64]) -> f64,
    G: Fn(&[f64]) -> Option<Vec<f64>>,
{
    const H: f64 = 1e-5;
    let dim = x0.len();
    let mut x = x0.to_vec();
    let mut fx = f(&x);
    for _ in 0..steps {
        let Some(g) = grad(&x) else { break };
        let mut hess = vec![vec![0.0; dim]; dim];
        for j in 0..dim {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[j] += H;
            xm[j] -= H;
            let (Some(gp), Some(gm)) = (grad(&xp), grad(&xm)) else { return x };
            for i in 0..dim {
                hess[i][j] = (gp[i] - gm[i]) / (2.0 * H);
            }
        }
        let Some(delta) = solve(hess, g.clone()) else { break };
        let candidate: Vec<f64> = x.iter().zip(&delta).map(|(a, d)| a - d).collect();
        let fc = f(&candidate);
        // near the optimum the change in f is below its rounding noise, so
        // a step is also accepted if it shrinks the gradient without a
        // measurable increase in f
        let noise = 64.0 * f64::EPSILON * fx.abs().max(1.0);
        let shrinks = grad(&candidate).is_some_and(|gc| norm(&gc) < norm(&g));
        if fc.is_finite() && (fc < fx || (fc <= fx + noise && shrinks)) {
            x = candidate;
            fx = fc.min(fx);
        } else {
            break;
        }
    }
    x
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Solves a small dense system; `None` if singular.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-300 || !a[pivot][col].is_finite() {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in col + 1..n {
            let factor = a[r][col] / a[col][col];
            for k in col..n {
                a[r][k] -= factor * a[col][k];
            }
            b[r] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| a[r][k] * x[k]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}
