//! Jacobi-preconditioned conjugate gradients on the free-node system
//! `4u_i − Σ_{free j~i} u_j = Σ_{clamped j~i} φ_j`.

use rayon::prelude::*;
use serde::Serialize;

use super::ScalarField;
use crate::error::{Error, Result};
use crate::exhaust::{NodeKind, NodeMask};
use crate::sum::dot;

pub const DEFAULT_TOL: f64 = 1e-10;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolveReport {
    pub iterations: usize,
    /// Final relative residual `‖b − Au‖ / ‖b‖`.
    pub residual: f64,
    pub tolerance: f64,
}

/// Solves the discrete Dirichlet problem with the free nodes initialised
/// from `phi`.
pub fn solve_dirichlet(mask: &NodeMask, phi: &ScalarField, tol: f64) -> Result<(ScalarField, SolveReport)> {
    solve_dirichlet_from(mask, phi, phi, tol)
}

/// Solves the discrete Dirichlet problem starting from the free-node values
/// of `initial`. Clamped nodes always take their values from `phi`.
pub fn solve_dirichlet_from(
    mask: &NodeMask,
    phi: &ScalarField,
    initial: &ScalarField,
    tol: f64,
) -> Result<(ScalarField, SolveReport)> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Parameter(format!("solver tolerance must be positive, got {tol}")));
    }
    if phi.grid != mask.grid || initial.grid != mask.grid {
        return Err(Error::GridMismatch);
    }
    mask.check_well_posed()?;

    let system = System::assemble(mask, phi);
    let x0: Vec<f64> = system.free.iter().map(|&n| initial.values[n]).collect();
    let cap = 50 * mask.grid.nx.max(mask.grid.ny);
    let (x, iterations, residual) = system.conjugate_gradients(x0, tol, cap)?;

    let mut out = phi.clone();
    for (&n, v) in system.free.iter().zip(x) {
        out.values[n] = v;
    }
    Ok((
        out,
        SolveReport {
            iterations,
            residual,
            tolerance: tol,
        },
    ))
}

struct System {
    free: Vec<usize>,
    /// Compact indices of free neighbours, `NONE` for clamped ones.
    neighbours: Vec<[u32; 4]>,
    rhs: Vec<f64>,
}

impl System {
    fn assemble(mask: &NodeMask, phi: &ScalarField) -> Self {
        let free = mask.free_indices();
        let mut compact = vec![NONE; mask.grid.len()];
        for (k, &n) in free.iter().enumerate() {
            compact[n] = k as u32;
        }
        let mut neighbours = Vec::with_capacity(free.len());
        let mut rhs = Vec::with_capacity(free.len());
        for &n in &free {
            // well-posedness was checked, so interior neighbours exist
            let nb = mask.neighbours(n).expect("free node on the grid edge");
            let mut b = 0.0;
            let mut row = [NONE; 4];
            for (slot, &m) in row.iter_mut().zip(&nb) {
                match mask.kind(m) {
                    NodeKind::Free => *slot = compact[m],
                    _ => b += phi.values[m],
                }
            }
            neighbours.push(row);
            rhs.push(b);
        }
        Self { free, neighbours, rhs }
    }

    fn apply(&self, p: &[f64], out: &mut [f64]) {
        out.par_iter_mut()
            .zip(self.neighbours.par_iter())
            .enumerate()
            .for_each(|(k, (o, nb))| {
                let mut s = 4.0 * p[k];
                for &m in nb {
                    if m != NONE {
                        s -= p[m as usize];
                    }
                }
                *o = s;
            });
    }

    fn residual(&self, x: &[f64], r: &mut [f64]) {
        self.apply(x, r);
        r.par_iter_mut()
            .zip(self.rhs.par_iter())
            .for_each(|(ri, bi)| *ri = bi - *ri);
    }

    /// Returns the solution, the iteration count and the relative residual.
    fn conjugate_gradients(&self, mut x: Vec<f64>, tol: f64, cap: usize) -> Result<(Vec<f64>, usize, f64)> {
        let n = x.len();
        if n == 0 {
            return Ok((x, 0, 0.0));
        }
        let b_norm = dot(&self.rhs, &self.rhs).sqrt();
        let scale = if b_norm > 0.0 { b_norm } else { 1.0 };

        let mut r = vec![0.0; n];
        let mut ap = vec![0.0; n];
        self.residual(&x, &mut r);
        let mut iterations = 0;

        loop {
            // Restarted from the true residual so the reported residual is
            // never a recurrence artefact.
            let mut rel = dot(&r, &r).sqrt() / scale;
            if rel <= tol {
                return Ok((x, iterations, rel));
            }
            let mut z: Vec<f64> = r.iter().map(|v| v / 4.0).collect();
            let mut p = z.clone();
            let mut rz = dot(&r, &z);
            while rel > tol {
                if iterations >= cap {
                    return Err(Error::NotConverged {
                        iterations,
                        residual: rel,
                    });
                }
                self.apply(&p, &mut ap);
                let pap = dot(&p, &ap);
                if pap.is_nan() || pap <= 0.0 {
                    return Err(Error::NotConverged {
                        iterations,
                        residual: rel,
                    });
                }
                let alpha = rz / pap;
                x.par_iter_mut()
                    .zip(r.par_iter_mut())
                    .zip(p.par_iter().zip(ap.par_iter()))
                    .for_each(|((xi, ri), (pi, api))| {
                        *xi += alpha * pi;
                        *ri -= alpha * api;
                    });
                z.par_iter_mut().zip(r.par_iter()).for_each(|(zi, ri)| *zi = ri / 4.0);
                let rz_next = dot(&r, &z);
                let beta = rz_next / rz;
                rz = rz_next;
                p.par_iter_mut().zip(z.par_iter()).for_each(|(pi, zi)| *pi = zi + beta * *pi);
                rel = dot(&r, &r).sqrt() / scale;
                iterations += 1;
            }
            self.residual(&x, &mut r);
            if iterations >= cap {
                let rel = dot(&r, &r).sqrt() / scale;
                return if rel <= tol {
                    Ok((x, iterations, rel))
                } else {
                    Err(Error::NotConverged {
                        iterations,
                        residual: rel,
                    })
                };
            }
        }
    }
}
