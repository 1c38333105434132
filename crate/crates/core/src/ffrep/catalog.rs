//! Isomorphism classes of representations, grown on demand per dimension vector.
//!
//! Dimension vectors whose representation space fits the enumeration bound are
//! classified completely, with ordinals in lexicographic order of canonical
//! encodings. Larger dimension vectors only receive classes as they are met
//! (for example τ-images), numbered in registration order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::ControlFlow;
use std::sync::{Arc, Mutex, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::field::{Fe, Field};
use super::matrix::Mat;
use super::rep::{hom_space, subrep, HomSpace, Morphism, PathAlgebra, Rep};
use super::tau;
use crate::error::{QcaError, Result};
use crate::quiver::{DimVec, QuiverContext};

/// Enumeration limits. Exceeding one is a reported error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bounds {
    /// Maximum number of points of a representation space to enumerate.
    pub rep_space: u64,
    /// Maximum number of elements of a Hom or End space to enumerate.
    pub hom_space: u64,
    /// Maximum number of subspace tuples to test for invariance.
    pub subspace_tuples: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            rep_space: 1 << 20,
            hom_space: 1 << 20,
            subspace_tuples: 1 << 22,
        }
    }
}

impl Bounds {
    /// Parses `rep=N,hom=N,sub=N` (any subset, others default).
    pub fn parse(s: &str) -> Result<Bounds> {
        let mut b = Bounds::default();
        for part in s.split(',').filter(|p| !p.trim().is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| QcaError::Parse(format!("bound {part:?} is not key=value")))?;
            let v: u64 = v
                .trim()
                .parse()
                .map_err(|_| QcaError::Parse(format!("bound value {v:?} is not an integer")))?;
            match k.trim() {
                "rep" => b.rep_space = v,
                "hom" => b.hom_space = v,
                "sub" => b.subspace_tuples = v,
                other => return Err(QcaError::Parse(format!("unknown bound {other:?}"))),
            }
        }
        Ok(b)
    }
}

/// Isomorphism class of a representation: dimension vector plus ordinal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RepClassId {
    pub dim: DimVec,
    pub ordinal: u32,
}

impl fmt::Display for RepClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.dim, self.ordinal)
    }
}

/// Isomorphism invariants used to avoid most intertwiner searches.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    end_dim: usize,
    ranks: Vec<usize>,
    pencil_ranks: Vec<usize>,
    socle: Vec<usize>,
    top: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ClassRecord {
    pub id: RepClassId,
    /// Canonical representative.
    pub rep: Rep,
    pub fingerprint: Fingerprint,
    pub end_dim: usize,
    /// Number of representations in the class, when the dimension was classified.
    pub orbit_size: Option<u64>,
}

#[derive(Default)]
struct DimEntry {
    complete: bool,
    classes: Vec<Arc<ClassRecord>>,
    by_fp: HashMap<Fingerprint, Vec<usize>>,
}

/// Memo table with a short-lived lock.
pub(crate) struct Memo<K, V> {
    done: Mutex<HashMap<K, V>>,
    /// Resource failures are deterministic for fixed bounds, so they are cached too.
    failed: Mutex<HashMap<K, QcaError>>,
}

impl<K: std::hash::Hash + Eq + Clone, V: Clone> Memo<K, V> {
    pub(crate) fn new() -> Self {
        Memo {
            done: Mutex::new(HashMap::new()),
            failed: Mutex::new(HashMap::new()),
        }
    }

    pub(crate) fn get(&self, k: &K) -> Option<V> {
        self.done.lock().expect("memo lock").get(k).cloned()
    }

    pub(crate) fn put(&self, k: K, v: V) -> V {
        self.done.lock().expect("memo lock").entry(k).or_insert(v).clone()
    }

    pub(crate) fn get_or(&self, k: K, f: impl FnOnce() -> Result<V>) -> Result<V> {
        if let Some(v) = self.get(&k) {
            return Ok(v);
        }
        if let Some(e) = self.failed.lock().expect("memo lock").get(&k) {
            return Err(e.clone());
        }
        match f() {
            Ok(v) => Ok(self.put(k, v)),
            Err(e) => {
                if e.is_resource() {
                    self.failed.lock().expect("memo lock").insert(k, e.clone());
                }
                Err(e)
            }
        }
    }
}

pub(crate) struct Memos {
    pub aut: Memo<RepClassId, u64>,
    pub decomposition: Memo<RepClassId, Arc<Vec<RepClassId>>>,
    pub sums: Memo<Vec<RepClassId>, RepClassId>,
    pub tau: Memo<RepClassId, RepClassId>,
    pub tau_inv: Memo<RepClassId, RepClassId>,
    pub hom_dim: Memo<(RepClassId, RepClassId), usize>,
    pub grass: Memo<(RepClassId, DimVec), u64>,
    pub sub_profile: Memo<(RepClassId, DimVec), Arc<BTreeMap<(RepClassId, RepClassId), u64>>>,
    pub ext_profile: Memo<(RepClassId, RepClassId), Arc<BTreeMap<RepClassId, BigUint>>>,
    pub ext_cocycles: Memo<(RepClassId, RepClassId), Arc<BTreeMap<RepClassId, BigUint>>>,
    pub hom_strata: Memo<(RepClassId, RepClassId), Arc<BTreeMap<(RepClassId, RepClassId), u64>>>,
    pub theta: Memo<(RepClassId, RepClassId), Arc<BTreeMap<super::counting::ThetaKey, u64>>>,
    pub coker_split: Memo<RepClassId, (RepClassId, Vec<u32>)>,
}

/// All isomorphism classes met so far for one context, with cached counts.
pub struct Catalog {
    ctx: Arc<QuiverContext>,
    alg: PathAlgebra,
    op: PathAlgebra,
    bounds: Bounds,
    dims: RwLock<HashMap<DimVec, DimEntry>>,
    register: Mutex<()>,
    pub(crate) memo: Memos,
    simples: Vec<RepClassId>,
    projectives: Vec<RepClassId>,
    injectives: Vec<RepClassId>,
    zero: RepClassId,
}

fn gl_order(q: u64, n: usize) -> BigUint {
    let q = BigUint::from(q);
    let qn = num_traits::pow(q.clone(), n);
    (0..n).fold(BigUint::one(), |acc, i| acc * (&qn - num_traits::pow(q.clone(), i)))
}

/// `count` pseudo-random elements of `h`, the same on every call.
fn sample_span(f: &Field, h: &HomSpace, count: usize) -> Vec<Vec<Fe>> {
    let mut rng = ChaCha8Rng::seed_from_u64(h.dim() as u64);
    (0..count)
        .map(|_| {
            let mut flat = vec![0 as Fe; h.flat_len()];
            for b in &h.basis {
                let c = rng.gen_range(0..f.order()) as Fe;
                for (x, &y) in flat.iter_mut().zip(b) {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
            flat
        })
        .collect()
}

/// A generator of the multiplicative group of `f`.
fn primitive_element(f: &Field) -> Fe {
    let q = f.order();
    (1..q as Fe)
        .find(|&w| {
            let mut x = w;
            let mut ord = 1;
            while x != 1 {
                x = f.mul(x, w);
                ord += 1;
            }
            ord == q - 1
        })
        .expect("finite field has a primitive element")
}

/// Generators `(vertex, g, g⁻¹)` of `∏ GL(dim_i)`: transvections over an additive
/// basis of the field, and one diagonal matrix carrying a primitive element.
fn gl_generators(f: &Field, dim: &[usize]) -> Vec<(usize, Mat, Mat)> {
    let omega = primitive_element(f);
    let mut gens = Vec::new();
    for (v, &n) in dim.iter().enumerate() {
        if n == 0 {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for b in f.prime_basis() {
                    let mut g = Mat::identity(n);
                    g.set(i, j, b);
                    let mut gi = Mat::identity(n);
                    gi.set(i, j, f.neg(b));
                    gens.push((v, g, gi));
                }
            }
        }
        if f.order() > 2 {
            let mut g = Mat::identity(n);
            g.set(0, 0, omega);
            let mut gi = Mat::identity(n);
            gi.set(0, 0, f.inv(omega));
            gens.push((v, g, gi));
        }
    }
    gens
}

impl Catalog {
    pub fn new(ctx: Arc<QuiverContext>, bounds: Bounds) -> Result<Catalog> {
        if !ctx.is_countable() {
            return Err(QcaError::Precondition(
                "counting requires equal valuations; this context is symbolic-only".into(),
            ));
        }
        let alg = PathAlgebra::from_context(&ctx)?;
        let op = alg.opposite();
        let m = ctx.m;
        let zero = RepClassId {
            dim: DimVec::zero(m),
            ordinal: 0,
        };
        let mut cat = Catalog {
            ctx,
            alg,
            op,
            bounds,
            dims: RwLock::new(HashMap::new()),
            register: Mutex::new(()),
            memo: Memos {
                aut: Memo::new(),
                decomposition: Memo::new(),
                sums: Memo::new(),
                tau: Memo::new(),
                tau_inv: Memo::new(),
                hom_dim: Memo::new(),
                grass: Memo::new(),
                sub_profile: Memo::new(),
                ext_profile: Memo::new(),
                ext_cocycles: Memo::new(),
                hom_strata: Memo::new(),
                theta: Memo::new(),
                coker_split: Memo::new(),
            },
            simples: vec![],
            projectives: vec![],
            injectives: vec![],
            zero,
        };
        cat.identify(&cat.alg.zero_rep())?;
        let mut s = Vec::new();
        let mut p = Vec::new();
        let mut i = Vec::new();
        for v in 0..m {
            s.push(cat.identify(&cat.alg.simple(v))?);
            p.push(cat.identify(&cat.alg.projective(v))?);
            i.push(cat.identify(&cat.alg.injective(v))?);
        }
        cat.simples = s;
        cat.projectives = p;
        cat.injectives = i;
        Ok(cat)
    }

    pub fn context(&self) -> &QuiverContext {
        &self.ctx
    }

    pub fn context_arc(&self) -> Arc<QuiverContext> {
        self.ctx.clone()
    }

    pub fn algebra(&self) -> &PathAlgebra {
        &self.alg
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    /// Order of the vertex field.
    pub fn q(&self) -> u64 {
        self.alg.f().order() as u64
    }

    pub fn zero(&self) -> RepClassId {
        self.zero.clone()
    }

    pub fn simple(&self, i: usize) -> RepClassId {
        self.simples[i].clone()
    }

    pub fn projective(&self, i: usize) -> RepClassId {
        self.projectives[i].clone()
    }

    pub fn injective(&self, i: usize) -> RepClassId {
        self.injectives[i].clone()
    }

    /// `S1`, `P2`, … for the standard modules.
    pub fn name(&self, id: &RepClassId) -> Option<String> {
        for (k, list) in [('S', &self.simples), ('P', &self.projectives), ('I', &self.injectives)] {
            if let Some(v) = list.iter().position(|c| c == id) {
                return Some(format!("{k}{}", v + 1));
            }
        }
        (id == &self.zero).then(|| "0".to_string())
    }

    /// Name if standard, else the summands' names when known, else the class id.
    pub fn describe(&self, id: &RepClassId) -> String {
        if let Some(n) = self.name(id) {
            return n;
        }
        if let Some(parts) = self.memo.decomposition.get(id) {
            if parts.len() > 1 {
                return parts
                    .iter()
                    .map(|p| self.name(p).unwrap_or_else(|| p.to_string()))
                    .collect::<Vec<_>>()
                    .join("+");
            }
        }
        id.to_string()
    }

    pub fn record(&self, id: &RepClassId) -> Result<Arc<ClassRecord>> {
        let dims = self.dims.read().expect("catalog lock");
        dims.get(&id.dim)
            .and_then(|e| e.classes.get(id.ordinal as usize))
            .cloned()
            .ok_or_else(|| QcaError::Precondition(format!("unknown class {id}")))
    }

    pub fn rep(&self, id: &RepClassId) -> Result<Rep> {
        Ok(self.record(id)?.rep.clone())
    }

    /// Whether every representation of dimension `dim` can be enumerated.
    pub fn classifiable(&self, dim: &[usize]) -> bool {
        self.rep_space_size(dim).is_some_and(|n| n <= self.bounds.rep_space)
    }

    fn rep_space_size(&self, dim: &[usize]) -> Option<u64> {
        let e = self.alg.entry_count(dim) as u32;
        self.q().checked_pow(e)
    }

    pub fn is_complete(&self, dim: &DimVec) -> bool {
        self.dims
            .read()
            .expect("catalog lock")
            .get(dim)
            .is_some_and(|e| e.complete)
    }

    pub fn fingerprint(&self, rep: &Rep) -> Fingerprint {
        let f = self.alg.f();
        let end_dim = hom_space(&self.alg, rep, rep).dim();
        let ranks = rep.maps.iter().map(|m| m.rank(f)).collect();
        let mut pencil_ranks = Vec::new();
        let arrows = &self.alg.arrows;
        for a in 0..arrows.len() {
            for b in a + 1..arrows.len() {
                if arrows[a] == arrows[b] {
                    for c in 1..f.order() as Fe {
                        pencil_ranks.push(rep.maps[a].add(f, &rep.maps[b].scale(f, c)).rank(f));
                    }
                }
            }
        }
        let mut socle = Vec::new();
        let mut top = Vec::new();
        for v in 0..self.alg.vertices {
            let mut out = Mat::zeros(0, rep.dim[v]);
            for (a, _) in self.alg.arrows_from(v) {
                out = out.vstack(&rep.maps[a]);
            }
            socle.push(rep.dim[v] - out.rank(f));
            let mut inc = Mat::zeros(rep.dim[v], 0);
            for (a, _) in self.alg.arrows_into(v) {
                inc = inc.hstack(&rep.maps[a]);
            }
            top.push(rep.dim[v] - inc.rank(f));
        }
        Fingerprint {
            end_dim,
            ranks,
            pencil_ranks,
            socle,
            top,
        }
    }

    /// Whether some element of `Hom(m, n)` is invertible at every vertex.
    pub fn is_isomorphic(&self, m: &Rep, n: &Rep) -> Result<bool> {
        if m.dim != n.dim {
            return Ok(false);
        }
        if self.fingerprint(m) != self.fingerprint(n) {
            return Ok(false);
        }
        self.find_iso(m, n).map(|x| x.is_some())
    }

    fn find_iso(&self, m: &Rep, n: &Rep) -> Result<Option<Morphism>> {
        let f = self.alg.f();
        let h = hom_space(&self.alg, m, n);
        let end_dim = hom_space(&self.alg, m, m).dim();
        if h.dim() != end_dim
            || hom_space(&self.alg, n, m).dim() != end_dim
            || hom_space(&self.alg, n, n).dim() != end_dim
        {
            return Ok(None);
        }
        let iso = |flat: &[Fe]| {
            let mor = h.unflatten(flat);
            mor.iter().all(|x| x.is_invertible(f)).then_some(mor)
        };
        if let Some(mor) = sample_span(f, &h, 64).iter().find_map(|flat| iso(flat)) {
            return Ok(Some(mor));
        }
        let size = h.size(f.order());
        if size > self.bounds.hom_space {
            return Err(QcaError::resource("Hom space for isomorphism test", size, self.bounds.hom_space));
        }
        let mut found = None;
        h.for_each(f, |flat| match iso(flat) {
            Some(mor) => {
                found = Some(mor);
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        });
        Ok(found)
    }

    /// Enumerates all representations of `dim` and splits them into `GL`-orbits.
    ///
    /// Each orbit is swept by breadth-first search under elementary generators of
    /// `∏ GL(dim_i)`, so no isomorphism tests are needed. Classes are numbered by
    /// the lexicographically least code in their orbit, which is the representative.
    fn classify_dim(&self, dim: &[usize]) -> Result<DimEntry> {
        let f = self.alg.f();
        let q = f.order();
        let total = self
            .rep_space_size(dim)
            .filter(|&n| n <= self.bounds.rep_space)
            .ok_or_else(|| {
                QcaError::resource(
                    format!("representation space of dimension {}", DimVec::from_usize(dim)),
                    format!("{}^{}", self.q(), self.alg.entry_count(dim)),
                    self.bounds.rep_space,
                )
            })?;
        let gens = gl_generators(f, dim);
        let index = |code: &[Fe]| code.iter().fold(0usize, |acc, &c| acc * q + c as usize);
        let decode = |mut n: usize| {
            let mut code = vec![0 as Fe; self.alg.entry_count(dim)];
            for c in code.iter_mut().rev() {
                *c = (n % q) as Fe;
                n /= q;
            }
            code
        };
        let mut visited = vec![false; total as usize];
        let mut orbits: Vec<(Rep, u64)> = Vec::new();
        let mut queue = std::collections::VecDeque::new();
        for start in 0..total as usize {
            if visited[start] {
                continue;
            }
            visited[start] = true;
            let rep = Rep::from_code(&self.alg, dim, &decode(start));
            let mut count = 1u64;
            queue.push_back(rep.clone());
            while let Some(cur) = queue.pop_front() {
                for (v, g, gi) in &gens {
                    let next = Rep {
                        dim: cur.dim.clone(),
                        maps: self
                            .alg
                            .arrows
                            .iter()
                            .zip(&cur.maps)
                            .map(|(&(s, t), m)| {
                                let m = if t == *v { g.mul(f, m) } else { m.clone() };
                                if s == *v { m.mul(f, gi) } else { m }
                            })
                            .collect(),
                    };
                    let k = index(&next.code());
                    if !visited[k] {
                        visited[k] = true;
                        count += 1;
                        queue.push_back(next);
                    }
                }
            }
            orbits.push((rep, count));
        }
        let dv = DimVec::from_usize(dim);
        let gl = dim.iter().fold(BigUint::one(), |acc, &n| acc * gl_order(self.q(), n));
        let mut entry = DimEntry {
            complete: true,
            ..DimEntry::default()
        };
        for (ordinal, (rep, count)) in orbits.into_iter().enumerate() {
            let id = RepClassId {
                dim: dv.clone(),
                ordinal: ordinal as u32,
            };
            let (aut, rem) = (&gl / count, &gl % count);
            let aut: u64 = match (rem.is_zero(), u64::try_from(aut)) {
                (true, Ok(a)) => a,
                _ => {
                    return Err(QcaError::Invariant(format!(
                        "orbit of {id} has size {count}, which does not give an automorphism group order in {gl}"
                    )))
                }
            };
            match self.count_automorphisms(&rep) {
                Ok(direct) if direct != aut => {
                    return Err(QcaError::Invariant(format!(
                        "orbit-stabilizer fails for {id}: orbit {count}, automorphisms {direct}, group {gl}"
                    )))
                }
                Err(e) if !e.is_resource() => return Err(e),
                _ => {}
            }
            self.memo.aut.put(id.clone(), aut);
            let fp = self.fingerprint(&rep);
            entry.by_fp.entry(fp.clone()).or_default().push(ordinal);
            entry.classes.push(Arc::new(ClassRecord {
                id,
                end_dim: fp.end_dim,
                fingerprint: fp,
                rep,
                orbit_size: Some(count),
            }));
        }
        Ok(entry)
    }

    fn count_automorphisms(&self, rep: &Rep) -> Result<u64> {
        let f = self.alg.f();
        let h = hom_space(&self.alg, rep, rep);
        let size = h.size(f.order());
        if size > self.bounds.hom_space {
            return Err(QcaError::resource(
                format!("End space of a representation of dimension {}", rep.dim_vec()),
                size,
                self.bounds.hom_space,
            ));
        }
        let mut count = 0u64;
        h.for_each(f, |flat| {
            if h.unflatten(flat).iter().all(|x| x.is_invertible(f)) {
                count += 1;
            }
            ControlFlow::Continue(())
        });
        Ok(count)
    }

    /// Classifies `dim` completely if it is not yet classified.
    pub fn ensure_classified(&self, dim: &DimVec) -> Result<()> {
        if self.is_complete(dim) {
            return Ok(());
        }
        let entry = self.classify_dim(&dim.as_usize())?;
        let mut dims = self.dims.write().expect("catalog lock");
        let slot = dims.entry(dim.clone()).or_default();
        if !slot.complete {
            if !slot.classes.is_empty() {
                return Err(QcaError::Invariant(format!(
                    "dimension {dim} has provisional classes but is classifiable"
                )));
            }
            *slot = entry;
        }
        Ok(())
    }

    /// All classes of dimension `dim`, classifying it if needed.
    pub fn classes(&self, dim: &DimVec) -> Result<Vec<RepClassId>> {
        self.ensure_classified(dim)?;
        let dims = self.dims.read().expect("catalog lock");
        Ok(dims[dim].classes.iter().map(|r| r.id.clone()).collect())
    }

    pub fn orbit_size(&self, id: &RepClassId) -> Result<Option<u64>> {
        Ok(self.record(id)?.orbit_size)
    }

    /// The class of `rep`, registering a new class when its dimension is too large to classify.
    pub fn identify(&self, rep: &Rep) -> Result<RepClassId> {
        let dv = rep.dim_vec();
        let fp = self.fingerprint(rep);
        if self.classifiable(&rep.dim) {
            self.ensure_classified(&dv)?;
            let cands: Vec<Arc<ClassRecord>> = {
                let dims = self.dims.read().expect("catalog lock");
                let e = &dims[&dv];
                e.by_fp
                    .get(&fp)
                    .map(|v| v.iter().map(|&i| e.classes[i].clone()).collect())
                    .unwrap_or_default()
            };
            for c in &cands {
                if cands.len() == 1 || self.find_iso(&c.rep, rep)?.is_some() {
                    return Ok(c.id.clone());
                }
            }
            return Err(QcaError::Invariant(format!(
                "representation of dimension {dv} matches no class of a classified dimension"
            )));
        }
        let _guard = self.register.lock().expect("registration lock");
        let cands: Vec<Arc<ClassRecord>> = {
            let dims = self.dims.read().expect("catalog lock");
            dims.get(&dv)
                .and_then(|e| e.by_fp.get(&fp).map(|v| v.iter().map(|&i| e.classes[i].clone()).collect()))
                .unwrap_or_default()
        };
        for c in &cands {
            if self.find_iso(&c.rep, rep)?.is_some() {
                return Ok(c.id.clone());
            }
        }
        let mut dims = self.dims.write().expect("catalog lock");
        let e = dims.entry(dv.clone()).or_default();
        let id = RepClassId {
            dim: dv,
            ordinal: e.classes.len() as u32,
        };
        e.by_fp.entry(fp.clone()).or_default().push(e.classes.len());
        e.classes.push(Arc::new(ClassRecord {
            id: id.clone(),
            rep: rep.clone(),
            end_dim: fp.end_dim,
            fingerprint: fp,
            orbit_size: None,
        }));
        Ok(id)
    }

    /// `a_X = |Aut X|`.
    pub fn aut_order(&self, id: &RepClassId) -> Result<u64> {
        self.memo
            .aut
            .get_or(id.clone(), || self.count_automorphisms(&self.rep(id)?))
    }

    pub fn end_dim(&self, id: &RepClassId) -> Result<usize> {
        Ok(self.record(id)?.end_dim)
    }

    /// Krull–Schmidt decomposition as a sorted multiset of indecomposable classes.
    ///
    /// Splits by Fitting's lemma: for an endomorphism `f` and `N` at least every vertex
    /// dimension, `M = Im fᴺ ⊕ Ker fᴺ`. `M` is indecomposable when no `f` splits it.
    pub fn decompose(&self, id: &RepClassId) -> Result<Arc<Vec<RepClassId>>> {
        if let Some(d) = self.memo.decomposition.get(id) {
            return Ok(d);
        }
        let rep = self.rep(id)?;
        let parts = if rep.is_zero() {
            vec![]
        } else {
            match self.fitting_split(&rep)? {
                None => vec![id.clone()],
                Some((a, b)) => {
                    let (ia, ib) = (self.identify(&a)?, self.identify(&b)?);
                    let mut v: Vec<RepClassId> = self.decompose(&ia)?.as_ref().clone();
                    v.extend(self.decompose(&ib)?.iter().cloned());
                    v.sort();
                    v
                }
            }
        };
        Ok(self.memo.decomposition.put(id.clone(), Arc::new(parts)))
    }

    /// A nontrivial decomposition `im gⁿ ⊕ ker gⁿ` from an endomorphism `g` that is
    /// neither nilpotent nor invertible, or `None` when `End(rep)` is local.
    fn fitting_split(&self, rep: &Rep) -> Result<Option<(Rep, Rep)>> {
        let f = self.alg.f();
        let h = hom_space(&self.alg, rep, rep);
        let n = rep.dim.iter().copied().max().unwrap_or(0).max(1);
        let split_by = |flat: &[Fe]| -> Option<(Rep, Rep)> {
            let gn: Morphism = h
                .unflatten(flat)
                .iter()
                .map(|m| {
                    let mut acc = Mat::identity(m.rows);
                    for _ in 0..n {
                        acc = acc.mul(f, m);
                    }
                    acc
                })
                .collect();
            let img: usize = gn.iter().map(|m| m.rank(f)).sum();
            (img > 0 && img < rep.total_dim()).then(|| {
                let ims: Vec<Mat> = gn.iter().map(|m| m.column_space(f)).collect();
                let kers: Vec<Mat> = gn.iter().map(|m| m.nullspace(f)).collect();
                (subrep(&self.alg, rep, &ims), subrep(&self.alg, rep, &kers))
            })
        };
        // cheap attempts first: basis elements, then a fixed sample of combinations
        for flat in h.basis.iter().chain(&sample_span(f, &h, 64)) {
            if let Some(s) = split_by(flat) {
                return Ok(Some(s));
            }
        }
        let size = h.size(f.order());
        if size > self.bounds.hom_space {
            return Err(QcaError::resource(
                format!("End space of a representation of dimension {}", rep.dim_vec()),
                size,
                self.bounds.hom_space,
            ));
        }
        let mut split = None;
        h.for_each(f, |flat| match split_by(flat) {
            Some(s) => {
                split = Some(s);
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        });
        Ok(split)
    }

    pub fn is_indecomposable(&self, id: &RepClassId) -> Result<bool> {
        Ok(self.decompose(id)?.len() == 1)
    }

    pub fn is_projective(&self, id: &RepClassId) -> Result<bool> {
        Ok(self.decompose(id)?.iter().all(|c| self.projectives.contains(c)))
    }

    pub fn is_injective(&self, id: &RepClassId) -> Result<bool> {
        Ok(self.decompose(id)?.iter().all(|c| self.injectives.contains(c)))
    }

    /// The class of a direct sum.
    pub fn sum(&self, parts: &[RepClassId]) -> Result<RepClassId> {
        let mut key: Vec<RepClassId> = parts.iter().filter(|p| !p.dim.is_zero()).cloned().collect();
        key.sort();
        match key.len() {
            0 => return Ok(self.zero()),
            1 => return Ok(key[0].clone()),
            _ => {}
        }
        self.memo.sums.get_or(key.clone(), || {
            let reps: Vec<Rep> = key.iter().map(|k| self.rep(k)).collect::<Result<_>>()?;
            self.identify(&Rep::direct_sum_all(&self.alg, reps.iter()))
        })
    }

    /// `⊕ I_v^{counts[v]}`.
    pub fn injective_sum(&self, counts: &[u32]) -> Result<RepClassId> {
        self.standard_sum(&self.injectives, counts)
    }

    /// `⊕ P_v^{counts[v]}`.
    pub fn projective_sum(&self, counts: &[u32]) -> Result<RepClassId> {
        self.standard_sum(&self.projectives, counts)
    }

    fn standard_sum(&self, list: &[RepClassId], counts: &[u32]) -> Result<RepClassId> {
        let parts: Vec<RepClassId> = counts
            .iter()
            .enumerate()
            .flat_map(|(v, &k)| std::iter::repeat(list[v].clone()).take(k as usize))
            .collect();
        self.sum(&parts)
    }

    /// Splits `M = M′ ⊕ P′` with `P′` the maximal projective summand; returns `(M′, counts of P′)`.
    pub fn strip_projective(&self, id: &RepClassId) -> Result<(RepClassId, Vec<u32>)> {
        self.split_standard(id, &self.projectives)
    }

    /// Splits `C = C′ ⊕ I` with `I` the maximal injective summand; returns `(C′, counts of I)`.
    pub fn split_injective(&self, id: &RepClassId) -> Result<(RepClassId, Vec<u32>)> {
        self.split_standard(id, &self.injectives)
    }

    fn split_standard(&self, id: &RepClassId, list: &[RepClassId]) -> Result<(RepClassId, Vec<u32>)> {
        let mut counts = vec![0u32; self.ctx.m];
        let mut rest = Vec::new();
        for c in self.decompose(id)?.iter() {
            match list.iter().position(|x| x == c) {
                Some(v) => counts[v] += 1,
                None => rest.push(c.clone()),
            }
        }
        Ok((self.sum(&rest)?, counts))
    }

    /// `τM` for `M` without projective summands.
    pub fn tau(&self, id: &RepClassId) -> Result<RepClassId> {
        let (_, p) = self.strip_projective(id)?;
        if p.iter().any(|&k| k > 0) {
            return Err(QcaError::Precondition(format!("{id} has a projective summand")));
        }
        self.memo
            .tau
            .get_or(id.clone(), || self.identify(&tau::tau(&self.alg, &self.rep(id)?)))
    }

    /// `τ⁻¹C` for `C` without injective summands.
    pub fn tau_inv(&self, id: &RepClassId) -> Result<RepClassId> {
        let (_, i) = self.split_injective(id)?;
        if i.iter().any(|&k| k > 0) {
            return Err(QcaError::Precondition(format!("{id} has an injective summand")));
        }
        self.memo
            .tau_inv
            .get_or(id.clone(), || self.identify(&tau::tau_inv(&self.op, &self.rep(id)?)))
    }

    /// Every dimension vector `0 ≤ e ≤ cap` componentwise with total at most `total_cap`.
    pub fn dims_up_to(&self, cap: usize, total_cap: Option<usize>) -> Vec<DimVec> {
        let m = self.ctx.m;
        let mut out = Vec::new();
        let mut cur = vec![0usize; m];
        loop {
            if total_cap.map_or(true, |t| cur.iter().sum::<usize>() <= t) {
                out.push(DimVec::from_usize(&cur));
            }
            let mut i = m;
            loop {
                if i == 0 {
                    out.sort_by_key(|d| (d.total(), d.clone()));
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] > cap {
                    cur[i] = 0;
                } else {
                    break;
                }
            }
        }
    }

    /// All classes with dimension vectors from [`dims_up_to`](Self::dims_up_to).
    pub fn classes_up_to(&self, cap: usize, total_cap: Option<usize>) -> Result<Vec<RepClassId>> {
        let mut out = Vec::new();
        for d in self.dims_up_to(cap, total_cap) {
            out.extend(self.classes(&d)?);
        }
        Ok(out)
    }

    /// Snapshot of all records, sorted by class id.
    pub fn snapshot(&self) -> Vec<(Arc<ClassRecord>, bool)> {
        let dims = self.dims.read().expect("catalog lock");
        let mut v: Vec<(Arc<ClassRecord>, bool)> = dims
            .values()
            .flat_map(|e| e.classes.iter().map(move |c| (c.clone(), e.complete)))
            .collect();
        v.sort_by(|a, b| a.0.id.cmp(&b.0.id));
        v
    }

    /// Installs a previously computed complete classification of one dimension vector.
    pub(crate) fn install_complete(
        &self,
        dim: DimVec,
        reps: Vec<(Rep, u64, u64)>,
    ) -> Result<()> {
        let mut entry = DimEntry {
            complete: true,
            ..DimEntry::default()
        };
        for (ordinal, (rep, orbit, aut)) in reps.into_iter().enumerate() {
            if rep.dim_vec() != dim || rep.maps.len() != self.alg.arrows.len() {
                return Err(QcaError::Parse(format!("cached class of {dim} has the wrong shape")));
            }
            let fp = self.fingerprint(&rep);
            let id = RepClassId {
                dim: dim.clone(),
                ordinal: ordinal as u32,
            };
            self.memo.aut.put(id.clone(), aut);
            entry.by_fp.entry(fp.clone()).or_default().push(ordinal);
            entry.classes.push(Arc::new(ClassRecord {
                id,
                end_dim: fp.end_dim,
                fingerprint: fp,
                rep,
                orbit_size: Some(orbit),
            }));
        }
        let mut dims = self.dims.write().expect("catalog lock");
        let slot = dims.entry(dim).or_default();
        if !slot.complete && slot.classes.is_empty() {
            *slot = entry;
        }
        Ok(())
    }

    /// Identifies the standard modules' matrices for tests and examples.
    pub fn standard_reps(&self) -> (Vec<Rep>, Vec<Rep>, Vec<Rep>) {
        let m = self.ctx.m;
        (
            (0..m).map(|v| self.alg.simple(v)).collect(),
            (0..m).map(|v| self.alg.projective(v)).collect(),
            (0..m).map(|v| self.alg.injective(v)).collect(),
        )
    }

    /// `|GL_e|` over the vertex field.
    pub fn gl_order(&self, dim: &DimVec) -> BigUint {
        dim.as_usize()
            .iter()
            .fold(BigUint::one(), |acc, &n| acc * gl_order(self.q(), n))
    }
}

impl fmt::Debug for Catalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Catalog({})", self.ctx.hash())
    }
}
