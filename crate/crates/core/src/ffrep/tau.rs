//! Auslander–Reiten translates via the Nakayama functor on a minimal projective presentation.

use super::field::Fe;
use super::matrix::Mat;
use super::rep::{kernel_spaces, subrep, Morphism, PathAlgebra, Rep};

/// Top generators: at each vertex, vectors completing the radical `Σ im(M_a)` to the whole space.
fn top_generators(alg: &PathAlgebra, m: &Rep) -> Vec<(usize, Vec<Fe>)> {
    let f = alg.f();
    let mut gens = Vec::new();
    for v in 0..alg.vertices {
        let mut rad = Mat::zeros(m.dim[v], 0);
        for (a, _) in alg.arrows_into(v) {
            rad = rad.hstack(&m.maps[a]);
        }
        let rad = rad.column_space(f);
        let comp = rad.complement(f);
        for j in 0..comp.cols {
            gens.push((v, comp.col(j)));
        }
    }
    gens
}

/// Block layout of `⊕_g X_{v_g}` at every vertex, where `sizes(v, x)` is the dimension of `X_v` at `x`.
fn offsets(
    alg: &PathAlgebra,
    gens: &[(usize, Vec<Fe>)],
    sizes: impl Fn(usize, usize) -> usize,
) -> Vec<Vec<usize>> {
    (0..alg.vertices)
        .map(|x| {
            let mut acc = 0;
            let mut offs = Vec::with_capacity(gens.len() + 1);
            for (v, _) in gens {
                offs.push(acc);
                acc += sizes(*v, x);
            }
            offs.push(acc);
            offs
        })
        .collect()
}

/// Direct sum of projectives `P_v` over the generator list.
fn projective_sum(alg: &PathAlgebra, gens: &[(usize, Vec<Fe>)]) -> Rep {
    let parts: Vec<Rep> = gens.iter().map(|(v, _)| alg.projective(*v)).collect();
    Rep::direct_sum_all(alg, parts.iter())
}

fn injective_sum(alg: &PathAlgebra, gens: &[(usize, Vec<Fe>)]) -> Rep {
    let parts: Vec<Rep> = gens.iter().map(|(v, _)| alg.injective(*v)).collect();
    Rep::direct_sum_all(alg, parts.iter())
}

/// `τM = ker(νP₁ → νP₀)` for a minimal presentation `P₁ → P₀ → M → 0`.
///
/// Projective summands of `M` contribute nothing, so the result is `τ` of the
/// non-projective part.
pub fn tau(alg: &PathAlgebra, m: &Rep) -> Rep {
    let f = alg.f();
    let nv = alg.vertices;
    let gens0 = top_generators(alg, m);
    let p0 = projective_sum(alg, &gens0);
    let off0 = offsets(alg, &gens0, |v, x| alg.paths(v, x).len());

    // π: P₀ → M, sending the path u: v → x of generator g to M_u·g.
    let pi: Morphism = (0..nv)
        .map(|x| {
            let mut cols = Vec::new();
            for (v, g) in &gens0 {
                for u in alg.paths(*v, x) {
                    cols.push(alg.apply_path(m, u, g));
                }
            }
            Mat::from_cols(m.dim[x], &cols)
        })
        .collect();

    let kspaces = kernel_spaces(alg, &pi);
    let k = subrep(alg, &p0, &kspaces);
    // generators of K, expressed in P₀ coordinates
    let gens1: Vec<(usize, Vec<Fe>)> = top_generators(alg, &k)
        .into_iter()
        .map(|(j, w)| (j, kspaces[j].mul_vec(f, &w)))
        .collect();

    let inj1 = injective_sum(alg, &gens1);
    let off_i1 = offsets(alg, &gens1, |j, x| alg.paths(x, j).len());
    let off_i0 = offsets(alg, &gens0, |v, x| alg.paths(x, v).len());

    // ν of the presentation map: generator (j, w) with w = Σ c_u u (u: v → j) in block g0
    // induces I_j → I_v, δ_{p·u} ↦ c_u δ_p.
    let nu: Morphism = (0..nv)
        .map(|x| {
            let mut mat = Mat::zeros(off_i0[x][gens0.len()], off_i1[x][gens1.len()]);
            for (g1, (j, w)) in gens1.iter().enumerate() {
                for (g0, (v, _)) in gens0.iter().enumerate() {
                    let base = off0[*j][g0];
                    for (ui, u) in alg.paths(*v, *j).iter().enumerate() {
                        let c = w[base + ui];
                        if c == 0 {
                            continue;
                        }
                        for (pi_idx, p) in alg.paths(x, *v).iter().enumerate() {
                            let mut joined = p.arrows.clone();
                            joined.extend_from_slice(&u.arrows);
                            let col = alg
                                .paths(x, *j)
                                .iter()
                                .position(|t| t.arrows == joined)
                                .expect("concatenated path is listed");
                            let (r, cidx) = (off_i0[x][g0] + pi_idx, off_i1[x][g1] + col);
                            let cur = mat.get(r, cidx);
                            mat.set(r, cidx, f.add(cur, c));
                        }
                    }
                }
            }
            mat
        })
        .collect();

    subrep(alg, &inj1, &kernel_spaces(alg, &nu))
}

/// `τ⁻¹M = D τ_{Q^op} D M`.
pub fn tau_inv(op: &PathAlgebra, m: &Rep) -> Rep {
    tau(op, &m.dual()).dual()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::kronecker;

    #[test]
    fn tau_of_simple_source_kronecker() {
        let alg = PathAlgebra::from_context(&kronecker(2)).unwrap();
        let t = tau(&alg, &alg.simple(0));
        assert_eq!(t.dim, vec![3, 2]);
        assert!(tau(&alg, &alg.projective(0)).is_zero());
        assert!(tau(&alg, &alg.simple(1)).is_zero());
        let op = alg.opposite();
        assert_eq!(tau_inv(&op, &alg.injective(1)).dim, vec![0, 0]);
        assert_eq!(tau_inv(&op, &t).dim, vec![1, 0]);
    }
}
