//! Enumeration of subspaces and subrepresentations.

use std::ops::ControlFlow;

use super::field::{Fe, Field};
use super::matrix::{Mat, Subspace};
use super::rep::{PathAlgebra, Rep};
use crate::error::{QcaError, Result};

/// Gaussian binomial `[n choose k]_q`, saturating.
pub fn gaussian_binomial(q: u64, n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul((q as u128).pow((n - i) as u32) - 1);
        den = den.saturating_mul((q as u128).pow((i + 1) as u32) - 1);
    }
    u64::try_from(num / den).unwrap_or(u64::MAX)
}

/// All `k`-dimensional subspaces of `𝔽ⁿ`, in RREF, in a fixed order.
pub fn subspaces(f: &Field, n: usize, k: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let q = f.order() as Fe;
    let mut piv: Vec<usize> = (0..k).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let piv = &piv;
                (piv[r] + 1..n)
                    .filter(move |j| !piv.contains(j))
                    .map(move |j| (r, j))
            })
            .collect();
        let mut vals = vec![0 as Fe; free.len()];
        loop {
            let mut m = Mat::zeros(k, n);
            for (r, &c) in piv.iter().enumerate() {
                m.set(r, c, 1);
            }
            for (&(r, j), &x) in free.iter().zip(&vals) {
                m.set(r, j, x);
            }
            out.push(Subspace::from_rref(m, piv.clone()));
            let mut i = 0;
            while i < vals.len() {
                vals[i] += 1;
                if vals[i] == q {
                    vals[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
            if i == vals.len() {
                break;
            }
        }
        // next combination of pivot columns
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if piv[i] < n - k + i {
                piv[i] += 1;
                for j in i + 1..k {
                    piv[j] = piv[j - 1] + 1;
                }
                break;
            }
        }
        if k == 0 {
            return out;
        }
    }
}

/// Visits every subrepresentation of `m` with dimension vector `e`, given as one subspace per vertex.
pub fn for_each_subrep(
    alg: &PathAlgebra,
    m: &Rep,
    e: &[usize],
    bound: u64,
    mut visit: impl FnMut(&[Subspace]) -> ControlFlow<()>,
) -> Result<()> {
    let f = alg.f();
    let nv = alg.vertices;
    if e.iter().zip(&m.dim).any(|(a, b)| a > b) {
        return Ok(());
    }
    let mut candidates: u64 = 1;
    for v in 0..nv {
        candidates = candidates.saturating_mul(gaussian_binomial(f.order() as u64, m.dim[v], e[v]));
    }
    if candidates > bound {
        return Err(QcaError::resource("subspace tuples", candidates, bound));
    }
    let lists: Vec<Vec<Subspace>> = (0..nv).map(|v| subspaces(f, m.dim[v], e[v])).collect();
    // arrows to check once vertex v is assigned: both endpoints ≤ v
    let checks: Vec<Vec<usize>> = (0..nv)
        .map(|v| {
            alg.arrows
                .iter()
                .enumerate()
                .filter(|(_, &(s, t))| s.max(t) == v)
                .map(|(a, _)| a)
                .collect()
        })
        .collect();
    let mut chosen: Vec<Subspace> = Vec::with_capacity(nv);
    fn rec(
        alg: &PathAlgebra,
        f: &Field,
        m: &Rep,
        lists: &[Vec<Subspace>],
        checks: &[Vec<usize>],
        chosen: &mut Vec<Subspace>,
        visit: &mut dyn FnMut(&[Subspace]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let v = chosen.len();
        if v == lists.len() {
            return visit(chosen);
        }
        for u in &lists[v] {
            chosen.push(u.clone());
            let ok = checks[v].iter().all(|&a| {
                let (s, t) = alg.arrows[a];
                let (us, ut) = (&chosen[s], &chosen[t]);
                (0..us.dim()).all(|r| ut.contains(f, &m.maps[a].mul_vec(f, us.basis.row(r))))
            });
            if ok {
                rec(alg, f, m, lists, checks, chosen, visit)?;
            }
            chosen.pop();
        }
        ControlFlow::Continue(())
    }
    let _ = rec(alg, f, m, &lists, &checks, &mut chosen, &mut visit);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_counts_match_gaussian_binomial() {
        for (p, k) in [(2, 1), (2, 2), (3, 1)] {
            let f = Field::new(p, k).unwrap();
            let q = f.order() as u64;
            for n in 0..=3 {
                for d in 0..=n {
                    let list = subspaces(&f, n, d);
                    assert_eq!(list.len() as u64, gaussian_binomial(q, n, d), "n={n} d={d} q={q}");
                    let distinct: std::collections::HashSet<_> = list.iter().map(|s| s.basis.clone()).collect();
                    assert_eq!(distinct.len(), list.len());
                }
            }
        }
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(4, 2, 1), 5);
        assert_eq!(gaussian_binomial(2, 4, 2), 35);
        assert_eq!(gaussian_binomial(9, 3, 0), 1);
    }
}
