//! Quiver representations, morphisms and Hom spaces.

use std::ops::ControlFlow;
use std::sync::Arc;

use super::field::{Fe, Field};
use super::matrix::Mat;
use crate::error::Result;
use crate::quiver::{DimVec, QuiverContext};

/// A directed path, as arrow indices in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

/// The path algebra of an acyclic quiver (multiple arrows expanded) over a table field.
#[derive(Debug)]
pub struct PathAlgebra {
    pub field: Arc<Field>,
    pub vertices: usize,
    /// Expanded arrows `(source, target)`.
    pub arrows: Vec<(usize, usize)>,
    /// `paths[i][j]`: all paths from `i` to `j`, in a fixed order.
    paths: Vec<Vec<Vec<Path>>>,
}

impl PathAlgebra {
    pub fn new(field: Arc<Field>, vertices: usize, arrows: Vec<(usize, usize)>) -> PathAlgebra {
        let mut paths = vec![vec![Vec::new(); vertices]; vertices];
        for (i, row) in paths.iter_mut().enumerate() {
            let mut stack = vec![Path {
                start: i,
                end: i,
                arrows: vec![],
            }];
            while let Some(p) = stack.pop() {
                for (a, &(s, t)) in arrows.iter().enumerate().rev() {
                    if s == p.end {
                        let mut q = p.clone();
                        q.arrows.push(a);
                        q.end = t;
                        stack.push(q);
                    }
                }
                row[p.end].push(p);
            }
            for list in row.iter_mut() {
                list.sort_by(|x, y| (x.arrows.len(), &x.arrows).cmp(&(y.arrows.len(), &y.arrows)));
            }
        }
        PathAlgebra {
            field,
            vertices,
            arrows,
            paths,
        }
    }

    pub fn from_context(ctx: &QuiverContext) -> Result<PathAlgebra> {
        let field = Arc::new(Field::new(ctx.q0, ctx.d as u32)?);
        let mut arrows = Vec::new();
        for &(s, t, k) in &ctx.arrows {
            for _ in 0..k {
                arrows.push((s, t));
            }
        }
        Ok(PathAlgebra::new(field, ctx.m, arrows))
    }

    /// Same vertices, every arrow reversed (arrow indices preserved).
    pub fn opposite(&self) -> PathAlgebra {
        PathAlgebra::new(
            self.field.clone(),
            self.vertices,
            self.arrows.iter().map(|&(s, t)| (t, s)).collect(),
        )
    }

    pub fn f(&self) -> &Field {
        &self.field
    }

    pub fn paths(&self, from: usize, to: usize) -> &[Path] {
        &self.paths[from][to]
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, &(_, t))| t == v)
            .map(|(a, &(s, _))| (a, s))
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, &(s, _))| s == v)
            .map(|(a, &(_, t))| (a, t))
    }

    /// Number of matrix entries of a representation of dimension `dim`.
    pub fn entry_count(&self, dim: &[usize]) -> usize {
        self.arrows.iter().map(|&(s, t)| dim[s] * dim[t]).sum()
    }

    pub fn zero_rep(&self) -> Rep {
        Rep::zero_of(self, &vec![0; self.vertices])
    }

    pub fn simple(&self, i: usize) -> Rep {
        let mut dim = vec![0; self.vertices];
        dim[i] = 1;
        Rep::zero_of(self, &dim)
    }

    /// The indecomposable projective at `i`: basis of `(P_i)_x` is the paths `i → x`.
    pub fn projective(&self, i: usize) -> Rep {
        let dim: Vec<usize> = (0..self.vertices).map(|x| self.paths[i][x].len()).collect();
        let mut rep = Rep::zero_of(self, &dim);
        for (a, &(s, t)) in self.arrows.iter().enumerate() {
            for (col, p) in self.paths[i][s].iter().enumerate() {
                let mut ext = p.arrows.clone();
                ext.push(a);
                let row = self.paths[i][t]
                    .iter()
                    .position(|q| q.arrows == ext)
                    .expect("extended path is listed");
                rep.maps[a].set(row, col, 1);
            }
        }
        rep
    }

    /// The indecomposable injective at `i`: `(I_i)_x` is dual to the paths `x → i`.
    pub fn injective(&self, i: usize) -> Rep {
        let dim: Vec<usize> = (0..self.vertices).map(|x| self.paths[x][i].len()).collect();
        let mut rep = Rep::zero_of(self, &dim);
        for (a, &(s, t)) in self.arrows.iter().enumerate() {
            for (col, p) in self.paths[s][i].iter().enumerate() {
                if p.arrows.first() == Some(&a) {
                    let rest = &p.arrows[1..];
                    let row = self.paths[t][i]
                        .iter()
                        .position(|q| q.arrows == rest)
                        .expect("path suffix is listed");
                    rep.maps[a].set(row, col, 1);
                }
            }
        }
        rep
    }

    /// Applies the arrow maps of `rep` along `path` to `v`.
    pub fn apply_path(&self, rep: &Rep, path: &Path, v: &[Fe]) -> Vec<Fe> {
        let mut cur = v.to_vec();
        for &a in &path.arrows {
            cur = rep.maps[a].mul_vec(self.f(), &cur);
        }
        cur
    }
}

/// A representation: one matrix per expanded arrow, of shape `dim[target] × dim[source]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rep {
    pub dim: Vec<usize>,
    pub maps: Vec<Mat>,
}

/// A morphism of representations: one matrix per vertex.
pub type Morphism = Vec<Mat>;

impl Rep {
    pub fn zero_of(alg: &PathAlgebra, dim: &[usize]) -> Rep {
        Rep {
            dim: dim.to_vec(),
            maps: alg
                .arrows
                .iter()
                .map(|&(s, t)| Mat::zeros(dim[t], dim[s]))
                .collect(),
        }
    }

    /// Decodes the concatenated row-major arrow matrices.
    pub fn from_code(alg: &PathAlgebra, dim: &[usize], code: &[Fe]) -> Rep {
        let mut off = 0;
        let maps = alg
            .arrows
            .iter()
            .map(|&(s, t)| {
                let len = dim[t] * dim[s];
                let m = Mat::from_vec(dim[t], dim[s], code[off..off + len].to_vec());
                off += len;
                m
            })
            .collect();
        assert_eq!(off, code.len(), "code length");
        Rep {
            dim: dim.to_vec(),
            maps,
        }
    }

    pub fn code(&self) -> Vec<Fe> {
        self.maps.iter().flat_map(|m| m.data.iter().copied()).collect()
    }

    pub fn dim_vec(&self) -> DimVec {
        DimVec::from_usize(&self.dim)
    }

    pub fn total_dim(&self) -> usize {
        self.dim.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn direct_sum(&self, o: &Rep) -> Rep {
        Rep {
            dim: self.dim.iter().zip(&o.dim).map(|(a, b)| a + b).collect(),
            maps: self
                .maps
                .iter()
                .zip(&o.maps)
                .map(|(a, b)| a.block_diag(b))
                .collect(),
        }
    }

    pub fn direct_sum_all<'a>(alg: &PathAlgebra, parts: impl IntoIterator<Item = &'a Rep>) -> Rep {
        parts
            .into_iter()
            .fold(alg.zero_rep(), |acc, r| acc.direct_sum(r))
    }

    /// The dual representation, a representation of the opposite quiver.
    pub fn dual(&self) -> Rep {
        Rep {
            dim: self.dim.clone(),
            maps: self.maps.iter().map(|m| m.transpose()).collect(),
        }
    }

    /// Checks that `f` intertwines `self → tgt`.
    pub fn is_morphism(&self, alg: &PathAlgebra, tgt: &Rep, f: &Morphism) -> bool {
        let fl = alg.f();
        alg.arrows.iter().enumerate().all(|(a, &(s, t))| {
            tgt.maps[a].mul(fl, &f[s]) == f[t].mul(fl, &self.maps[a])
        })
    }

    pub fn identity(&self) -> Morphism {
        self.dim.iter().map(|&n| Mat::identity(n)).collect()
    }
}

/// A Hom space `Hom(M, N)` with an 𝔽-basis of flattened morphisms.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub src_dim: Vec<usize>,
    pub tgt_dim: Vec<usize>,
    pub basis: Vec<Vec<Fe>>,
    offsets: Vec<usize>,
    len: usize,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn flat_len(&self) -> usize {
        self.len
    }

    pub fn unflatten(&self, flat: &[Fe]) -> Morphism {
        self.src_dim
            .iter()
            .zip(&self.tgt_dim)
            .enumerate()
            .map(|(v, (&ms, &nt))| {
                Mat::from_vec(nt, ms, flat[self.offsets[v]..self.offsets[v] + nt * ms].to_vec())
            })
            .collect()
    }

    /// Number of elements, `|𝔽|^dim`, saturating.
    pub fn size(&self, q: usize) -> u64 {
        (q as u64).saturating_pow(self.dim() as u32)
    }

    /// Visits every element of the space.
    pub fn for_each(&self, f: &Field, visit: impl FnMut(&[Fe]) -> ControlFlow<()>) {
        for_each_in_span(f, &self.basis, self.len, visit);
    }
}

/// Solves the intertwining system `N_a f_s = f_t M_a` for all arrows.
pub fn hom_space(alg: &PathAlgebra, m: &Rep, n: &Rep) -> HomSpace {
    let fl = alg.f();
    let mut offsets = Vec::with_capacity(alg.vertices);
    let mut len = 0;
    for v in 0..alg.vertices {
        offsets.push(len);
        len += n.dim[v] * m.dim[v];
    }
    let rows: usize = alg.arrows.iter().map(|&(s, t)| n.dim[t] * m.dim[s]).sum();
    let mut sys = Mat::zeros(rows, len);
    let mut row = 0;
    for (a, &(s, t)) in alg.arrows.iter().enumerate() {
        let (ms, mt, nt, ns) = (m.dim[s], m.dim[t], n.dim[t], n.dim[s]);
        let (na, ma) = (&n.maps[a], &m.maps[a]);
        for r in 0..nt {
            for c in 0..ms {
                for k in 0..ns {
                    let x = na.get(r, k);
                    if x != 0 {
                        let u = offsets[s] + k * ms + c;
                        sys.set(row, u, fl.add(sys.get(row, u), x));
                    }
                }
                for k in 0..mt {
                    let x = ma.get(k, c);
                    if x != 0 {
                        let u = offsets[t] + r * mt + k;
                        sys.set(row, u, fl.sub(sys.get(row, u), x));
                    }
                }
                row += 1;
            }
        }
    }
    let ns = sys.nullspace(fl);
    let basis = (0..ns.cols).map(|j| ns.col(j)).collect();
    HomSpace {
        src_dim: m.dim.clone(),
        tgt_dim: n.dim.clone(),
        basis,
        offsets,
        len,
    }
}

/// Visits every vector in the 𝔽-span of `basis`, each exactly once, starting with zero.
///
/// Enumerates 𝔽_p-coordinates with an odometer so each step costs one vector addition.
pub fn for_each_in_span(
    f: &Field,
    basis: &[Vec<Fe>],
    len: usize,
    mut visit: impl FnMut(&[Fe]) -> ControlFlow<()>,
) {
    let prime = f.prime_basis();
    let gens: Vec<Vec<Fe>> = basis
        .iter()
        .flat_map(|b| prime.iter().map(move |&c| b.iter().map(|&x| f.mul(c, x)).collect()))
        .collect();
    let p = f.characteristic();
    let mut digits = vec![0u32; gens.len()];
    let mut cur = vec![0 as Fe; len];
    if visit(&cur).is_break() {
        return;
    }
    loop {
        let mut i = 0;
        loop {
            if i == gens.len() {
                return;
            }
            for (x, &g) in cur.iter_mut().zip(&gens[i]) {
                *x = f.add(*x, g);
            }
            digits[i] += 1;
            if digits[i] == p {
                digits[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
        if visit(&cur).is_break() {
            return;
        }
    }
}

/// Selects `k` rows of a full-column-rank `n × k` matrix that form an invertible block,
/// returning the row indices and the inverse of that block.
fn left_inverse_rows(f: &Field, b: &Mat) -> (Vec<usize>, Mat) {
    let (_, piv) = b.transpose().rref(f);
    assert_eq!(piv.len(), b.cols, "basis columns must be independent");
    let block = b.submatrix(&piv, &(0..b.cols).collect::<Vec<_>>());
    let inv = block.inverse(f).expect("pivot block is invertible");
    (piv, inv)
}

/// The subrepresentation spanned at each vertex by the columns of `spaces[v]`.
pub fn subrep(alg: &PathAlgebra, m: &Rep, spaces: &[Mat]) -> Rep {
    let fl = alg.f();
    let dim: Vec<usize> = spaces.iter().map(|b| b.cols).collect();
    let solvers: Vec<(Vec<usize>, Mat)> = spaces.iter().map(|b| left_inverse_rows(fl, b)).collect();
    let maps = alg
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let img = m.maps[a].mul(fl, &spaces[s]);
            let (rows, inv) = &solvers[t];
            let sel = img.submatrix(rows, &(0..img.cols).collect::<Vec<_>>());
            inv.mul(fl, &sel)
        })
        .collect();
    Rep { dim, maps }
}

/// The quotient of `m` by the subrepresentation spanned by `spaces`.
pub fn quotient(alg: &PathAlgebra, m: &Rep, spaces: &[Mat]) -> Rep {
    let fl = alg.f();
    let comps: Vec<Mat> = spaces.iter().map(|b| b.complement(fl)).collect();
    let projs: Vec<Mat> = spaces
        .iter()
        .zip(&comps)
        .map(|(b, c)| {
            let full = b.hstack(c);
            let inv = full.inverse(fl).expect("basis plus complement is invertible");
            let rows: Vec<usize> = (b.cols..full.cols).collect();
            inv.submatrix(&rows, &(0..full.cols).collect::<Vec<_>>())
        })
        .collect();
    let dim: Vec<usize> = comps.iter().map(|c| c.cols).collect();
    let maps = alg
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| projs[t].mul(fl, &m.maps[a].mul(fl, &comps[s])))
        .collect();
    Rep { dim, maps }
}

pub fn kernel(alg: &PathAlgebra, m: &Rep, f: &Morphism) -> Rep {
    let fl = alg.f();
    let spaces: Vec<Mat> = f.iter().map(|fv| fv.nullspace(fl)).collect();
    subrep(alg, m, &spaces)
}

/// Kernel subspaces of `f` as column bases.
pub fn kernel_spaces(alg: &PathAlgebra, f: &Morphism) -> Vec<Mat> {
    f.iter().map(|fv| fv.nullspace(alg.f())).collect()
}

pub fn cokernel(alg: &PathAlgebra, n: &Rep, f: &Morphism) -> Rep {
    let fl = alg.f();
    let spaces: Vec<Mat> = f.iter().map(|fv| fv.column_space(fl)).collect();
    quotient(alg, n, &spaces)
}

pub fn image(alg: &PathAlgebra, n: &Rep, f: &Morphism) -> Rep {
    let fl = alg.f();
    let spaces: Vec<Mat> = f.iter().map(|fv| fv.column_space(fl)).collect();
    subrep(alg, n, &spaces)
}

/// `g ∘ f`.
pub fn compose(f: &Field, g: &Morphism, fm: &Morphism) -> Morphism {
    g.iter().zip(fm).map(|(a, b)| a.mul(f, b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::kronecker;

    fn k2() -> PathAlgebra {
        PathAlgebra::from_context(&kronecker(2)).unwrap()
    }

    #[test]
    fn standard_modules_kronecker() {
        let alg = k2();
        assert_eq!(alg.projective(0).dim, vec![1, 2]);
        assert_eq!(alg.projective(1).dim, vec![0, 1]);
        assert_eq!(alg.injective(0).dim, vec![1, 0]);
        assert_eq!(alg.injective(1).dim, vec![2, 1]);
        let p1 = alg.projective(0);
        assert_eq!(hom_space(&alg, &p1, &p1).dim(), 1);
        let (s1, s2) = (alg.simple(0), alg.simple(1));
        assert_eq!(hom_space(&alg, &s1, &s2).dim(), 0);
        assert_eq!(hom_space(&alg, &s2, &p1).dim(), 2);
        assert_eq!(hom_space(&alg, &p1, &s1).dim(), 1);
    }

    #[test]
    fn hom_basis_elements_are_morphisms() {
        let alg = k2();
        let m = alg.injective(1);
        let n = m.direct_sum(&alg.simple(0));
        let h = hom_space(&alg, &m, &n);
        for b in &h.basis {
            assert!(m.is_morphism(&alg, &n, &h.unflatten(b)));
        }
        let mut count = 0u64;
        h.for_each(alg.f(), |_| {
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, h.size(4));
    }

    #[test]
    fn kernel_and_cokernel_dimensions() {
        let alg = k2();
        let p1 = alg.projective(0);
        let s1 = alg.simple(0);
        let h = hom_space(&alg, &p1, &s1);
        let f = h.unflatten(&h.basis[0]);
        assert_eq!(kernel(&alg, &p1, &f).dim, vec![0, 2]);
        assert_eq!(cokernel(&alg, &s1, &f).dim, vec![0, 0]);
        assert_eq!(image(&alg, &s1, &f).dim, vec![1, 0]);
    }

    #[test]
    fn span_enumeration_is_exhaustive_and_distinct() {
        let f = Field::new(3, 2).unwrap();
        let basis = vec![vec![1, 0, 2], vec![0, 4, 5]];
        let mut seen = std::collections::HashSet::new();
        for_each_in_span(&f, &basis, 3, |v| {
            assert!(seen.insert(v.to_vec()));
            ControlFlow::Continue(())
        });
        assert_eq!(seen.len(), 81);
    }
}
