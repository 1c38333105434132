//! Counts over the catalog: Hom and Ext dimensions, Grassmannians, Hall numbers,
//! extension counts, and strata of morphisms by kernel and cokernel.

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::catalog::{Catalog, RepClassId};
use super::matrix::Mat;
use super::rep::{cokernel, hom_space, kernel, quotient, subrep, Rep};
use super::subspace::for_each_subrep;
use crate::error::{QcaError, Result};
use crate::quiver::DimVec;

/// Stratum of `Hom(N, τM′)`: kernel `D`, the module `A = A′ ⊕ P′` with `τA′` the
/// non-injective part of the cokernel, and the injective part as counts per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ThetaKey {
    pub d: RepClassId,
    pub a: RepClassId,
    pub inj: Vec<u32>,
}

fn first_err<T>(slot: &mut Option<QcaError>, r: Result<T>) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(e) => {
            slot.get_or_insert(e);
            None
        }
    }
}

impl Catalog {
    /// `dim_𝔽 Hom(M, N)` over the vertex field.
    pub fn hom_dim(&self, m: &RepClassId, n: &RepClassId) -> Result<usize> {
        self.memo.hom_dim.get_or((m.clone(), n.clone()), || {
            Ok(hom_space(self.algebra(), &self.rep(m)?, &self.rep(n)?).dim())
        })
    }

    /// `[M,N]⁰ = dim_k Hom(M, N)` over the base field.
    pub fn hom0(&self, m: &RepClassId, n: &RepClassId) -> Result<i64> {
        Ok(self.context().d * self.hom_dim(m, n)? as i64)
    }

    /// `[M,N]¹ = [M,N]⁰ − ⟨m, n⟩`.
    pub fn ext_count(&self, m: &RepClassId, n: &RepClassId) -> Result<i64> {
        let e = self.hom0(m, n)? - self.context().euler(&m.dim, &n.dim);
        if e < 0 {
            return Err(QcaError::Invariant(format!("negative Ext dimension for ({m}, {n})")));
        }
        Ok(e)
    }

    /// `|Hom(M, N)|`.
    pub fn hom_size(&self, m: &RepClassId, n: &RepClassId) -> Result<BigUint> {
        Ok(num_traits::pow(BigUint::from(self.q()), self.hom_dim(m, n)?))
    }

    fn subreps(&self, rep: &Rep, e: &DimVec) -> Result<Vec<Vec<Mat>>> {
        let mut out = Vec::new();
        for_each_subrep(self.algebra(), rep, &e.as_usize(), self.bounds().subspace_tuples, |us| {
            out.push(us.iter().map(|u| u.as_columns()).collect());
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }

    /// `|Gr_e M|`.
    pub fn grassmannian_count(&self, m: &RepClassId, e: &DimVec) -> Result<u64> {
        if !e.is_nonneg() || !e.le(&m.dim) {
            return Ok(0);
        }
        self.memo.grass.get_or((m.clone(), e.clone()), || {
            let rep = self.rep(m)?;
            let mut n = 0u64;
            for_each_subrep(self.algebra(), &rep, &e.as_usize(), self.bounds().subspace_tuples, |_| {
                n += 1;
                ControlFlow::Continue(())
            })?;
            Ok(n)
        })
    }

    /// Submodules `U ⊂ L` of dimension `e`, counted by `(class of L/U, class of U)`.
    pub fn sub_profile(
        &self,
        l: &RepClassId,
        e: &DimVec,
    ) -> Result<Arc<BTreeMap<(RepClassId, RepClassId), u64>>> {
        if !e.is_nonneg() || !e.le(&l.dim) {
            return Ok(Arc::new(BTreeMap::new()));
        }
        self.memo.sub_profile.get_or((l.clone(), e.clone()), || {
            let rep = self.rep(l)?;
            let mut prof = BTreeMap::new();
            for spaces in self.subreps(&rep, e)? {
                let u = self.identify(&subrep(self.algebra(), &rep, &spaces))?;
                let x = self.identify(&quotient(self.algebra(), &rep, &spaces))?;
                *prof.entry((x, u)).or_insert(0u64) += 1;
            }
            Ok(Arc::new(prof))
        })
    }

    /// `F^L_{MN}`: submodules `U ⊂ L` with `U ≅ N` and `L/U ≅ M`.
    pub fn hall_number(&self, l: &RepClassId, m: &RepClassId, n: &RepClassId) -> Result<u64> {
        if &(&m.dim + &n.dim) != &l.dim {
            return Ok(0);
        }
        Ok(self
            .sub_profile(l, &n.dim)?
            .get(&(m.clone(), n.clone()))
            .copied()
            .unwrap_or(0))
    }

    /// `ε^E_{MN} = |Ext¹(M,N)_E|` for every `E`, from `F^E_{MN}·|Hom(M,N)|·a_M·a_N / a_E`.
    pub fn ext_profile(&self, m: &RepClassId, n: &RepClassId) -> Result<Arc<BTreeMap<RepClassId, BigUint>>> {
        self.memo.ext_profile.get_or((m.clone(), n.clone()), || {
            let dim = &m.dim + &n.dim;
            let hom = self.hom_size(m, n)?;
            let am = BigUint::from(self.aut_order(m)?);
            let an = BigUint::from(self.aut_order(n)?);
            let mut out = BTreeMap::new();
            for e in self.classes(&dim)? {
                let f = self.hall_number(&e, m, n)?;
                if f == 0 {
                    continue;
                }
                let num = BigUint::from(f) * &hom * &am * &an;
                let ae = BigUint::from(self.aut_order(&e)?);
                let (eps, rem) = num.div_rem(&ae);
                if !rem.is_zero() {
                    return Err(QcaError::Invariant(format!(
                        "extension count for {e} from ({m}, {n}) is not an integer"
                    )));
                }
                out.insert(e, eps);
            }
            Ok(Arc::new(out))
        })
    }

    /// `ε^E_{MN}` for every `E`: from Hall numbers when `m + n` is classifiable,
    /// otherwise from cocycles.
    pub fn ext_counts(&self, m: &RepClassId, n: &RepClassId) -> Result<Arc<BTreeMap<RepClassId, BigUint>>> {
        if self.classifiable(&(&m.dim + &n.dim).as_usize()) {
            return self.ext_profile(m, n);
        }
        self.memo
            .ext_cocycles
            .get_or((m.clone(), n.clone()), || Ok(Arc::new(self.ext_profile_cocycles(m, n)?)))
    }

    /// `ε^E_{MN}`.
    pub fn ext_class_count(&self, m: &RepClassId, n: &RepClassId, e: &RepClassId) -> Result<BigUint> {
        Ok(self.ext_counts(m, n)?.get(e).cloned().unwrap_or_default())
    }

    /// Extension counts by enumerating cocycles `η ∈ ⊕_a Hom_𝔽(M_{s(a)}, N_{t(a)})`
    /// and classifying the middle terms `E_η`. Independent of Hall numbers.
    pub fn ext_profile_cocycles(&self, m: &RepClassId, n: &RepClassId) -> Result<BTreeMap<RepClassId, BigUint>> {
        let alg = self.algebra();
        let f = alg.f();
        let (mr, nr) = (self.rep(m)?, self.rep(n)?);
        let slots: Vec<(usize, usize, usize)> = alg
            .arrows
            .iter()
            .map(|&(s, t)| (nr.dim[t], mr.dim[s], 0))
            .collect();
        let len: usize = slots.iter().map(|&(r, c, _)| r * c).sum();
        let cocycles = self.q().checked_pow(len as u32).filter(|&x| x <= self.bounds().rep_space);
        let Some(cocycles) = cocycles else {
            return Err(QcaError::resource("cocycle space", format!("{}^{len}", self.q()), self.bounds().rep_space));
        };
        let c0: usize = (0..alg.vertices).map(|v| nr.dim[v] * mr.dim[v]).sum();
        let basis: Vec<Vec<u16>> = (0..len)
            .map(|i| {
                let mut v = vec![0u16; len];
                v[i] = 1;
                v
            })
            .collect();
        let dim: Vec<usize> = nr.dim.iter().zip(&mr.dim).map(|(a, b)| a + b).collect();
        let mut counts: BTreeMap<RepClassId, u64> = BTreeMap::new();
        let mut err = None;
        super::rep::for_each_in_span(f, &basis, len, |eta| {
            let mut off = 0;
            let maps = alg
                .arrows
                .iter()
                .enumerate()
                .map(|(a, &(s, t))| {
                    let (r, c) = (nr.dim[t], mr.dim[s]);
                    let block = Mat::from_vec(r, c, eta[off..off + r * c].to_vec());
                    off += r * c;
                    let top = nr.maps[a].hstack(&block);
                    let bottom = Mat::zeros(mr.dim[t], nr.dim[s]).hstack(&mr.maps[a]);
                    top.vstack(&bottom)
                })
                .collect();
            let rep = Rep { dim: dim.clone(), maps };
            match first_err(&mut err, self.identify(&rep)) {
                Some(id) => {
                    *counts.entry(id).or_insert(0) += 1;
                    ControlFlow::Continue(())
                }
                None => ControlFlow::Break(()),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        // each Ext class is hit by |C⁰| / |Hom(M,N)| cocycles
        let hom = self.hom_size(m, n)?;
        let c0size = num_traits::pow(BigUint::from(self.q()), c0);
        let total: u64 = counts.values().sum();
        if total != cocycles {
            return Err(QcaError::Invariant("cocycle enumeration incomplete".into()));
        }
        counts
            .into_iter()
            .map(|(id, k)| {
                let (eps, rem) = (BigUint::from(k) * &hom).div_rem(&c0size);
                if !rem.is_zero() {
                    return Err(QcaError::Invariant(format!("cocycle count for {id} is not a union of classes")));
                }
                Ok((id, eps))
            })
            .collect()
    }

    /// `|_X Hom(M,N)_Y|` keyed by `(X, Y)` = (kernel class, cokernel class).
    pub fn hom_strata(
        &self,
        m: &RepClassId,
        n: &RepClassId,
    ) -> Result<Arc<BTreeMap<(RepClassId, RepClassId), u64>>> {
        self.memo.hom_strata.get_or((m.clone(), n.clone()), || {
            let alg = self.algebra();
            let (mr, nr) = (self.rep(m)?, self.rep(n)?);
            let h = hom_space(alg, &mr, &nr);
            let size = h.size(alg.f().order());
            if size > self.bounds().hom_space {
                return Err(QcaError::resource(format!("Hom({m}, {n})"), size, self.bounds().hom_space));
            }
            let mut out = BTreeMap::new();
            let mut err = None;
            h.for_each(alg.f(), |flat| {
                let g = h.unflatten(flat);
                let k = first_err(&mut err, self.identify(&kernel(alg, &mr, &g)));
                let c = first_err(&mut err, self.identify(&cokernel(alg, &nr, &g)));
                match (k, c) {
                    (Some(k), Some(c)) => {
                        *out.entry((k, c)).or_insert(0u64) += 1;
                        ControlFlow::Continue(())
                    }
                    _ => ControlFlow::Break(()),
                }
            });
            match err {
                Some(e) => Err(e),
                None => Ok(Arc::new(out)),
            }
        })
    }

    /// Splits a cokernel `C = τA′ ⊕ I`; returns `(A′, injective counts)`.
    pub fn split_cokernel(&self, c: &RepClassId) -> Result<(RepClassId, Vec<u32>)> {
        self.memo.coker_split.get_or(c.clone(), || {
            let (rest, inj) = self.split_injective(c)?;
            let a = self.tau_inv(&rest)?;
            Ok((a, inj))
        })
    }

    /// Strata of `Hom(N, τM′)` keyed by `(D, A, I)` as in [`ThetaKey`], where `M = M′ ⊕ P′`.
    pub fn theta_strata(&self, n: &RepClassId, m: &RepClassId) -> Result<Arc<BTreeMap<ThetaKey, u64>>> {
        self.memo.theta.get_or((n.clone(), m.clone()), || {
            let alg = self.algebra();
            let (mprime, pcounts) = self.strip_projective(m)?;
            let pprime = self.projective_sum(&pcounts)?;
            let tm = self.tau(&mprime)?;
            let (nr, tr) = (self.rep(n)?, self.rep(&tm)?);
            let h = hom_space(alg, &nr, &tr);
            let size = h.size(alg.f().order());
            if size > self.bounds().hom_space {
                return Err(QcaError::resource(format!("Hom({n}, τ{mprime})"), size, self.bounds().hom_space));
            }
            let mut by_dc: BTreeMap<(RepClassId, RepClassId), u64> = BTreeMap::new();
            let mut err = None;
            h.for_each(alg.f(), |flat| {
                let g = h.unflatten(flat);
                let d = first_err(&mut err, self.identify(&kernel(alg, &nr, &g)));
                let c = first_err(&mut err, self.identify(&cokernel(alg, &tr, &g)));
                match (d, c) {
                    (Some(d), Some(c)) => {
                        *by_dc.entry((d, c)).or_insert(0) += 1;
                        ControlFlow::Continue(())
                    }
                    _ => ControlFlow::Break(()),
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
            let mut out = BTreeMap::new();
            for ((d, c), k) in by_dc {
                let (aprime, inj) = self.split_cokernel(&c)?;
                let a = self.sum(&[aprime, pprime.clone()])?;
                *out.entry(ThetaKey { d, a, inj }).or_insert(0) += k;
            }
            Ok(Arc::new(out))
        })
    }

    /// `|GL_e| / a_X` summed over the classes of a classified dimension equals the
    /// number of representations.
    pub fn orbit_sum_check(&self, dim: &DimVec) -> Result<bool> {
        let gl = self.gl_order(dim);
        let mut total = BigUint::zero();
        for c in self.classes(dim)? {
            let a = BigUint::from(self.aut_order(&c)?);
            let (orbit, rem) = gl.div_rem(&a);
            if !rem.is_zero() {
                return Ok(false);
            }
            total += orbit;
        }
        let entries = self.algebra().entry_count(&dim.as_usize());
        Ok(total == num_traits::pow(BigUint::from(self.q()), entries))
    }

    /// `|Aut|` of an indecomposable standard module from its local endomorphism ring:
    /// `|𝔽^×| · |rad End|`.
    pub fn local_aut_order(&self, id: &RepClassId) -> Result<BigUint> {
        let e = self.end_dim(id)?;
        Ok(BigUint::from(self.q() - 1) * num_traits::pow(BigUint::from(self.q()), e.saturating_sub(1)))
    }
}
