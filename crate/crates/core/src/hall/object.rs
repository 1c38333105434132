//! Basis symbols `u_{I[−1]⊕M⊕P[1]}` and their element types.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{QcaError, Result};
use crate::ffrep::{Catalog, RepClassId};
use crate::lincomb::{Label, LinComb};
use crate::quiver::DimVec;
use crate::scalar::ExactScalar;

/// `I[−1] ⊕ M ⊕ P[1]`: multiplicities of the indecomposable injectives and
/// projectives per vertex, and the class of `M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DecoratedObject {
    pub inj: Vec<u32>,
    #[serde(rename = "mod")]
    pub module: RepClassId,
    pub proj: Vec<u32>,
}

impl DecoratedObject {
    pub fn new(inj: Vec<u32>, module: RepClassId, proj: Vec<u32>) -> Self {
        assert_eq!(inj.len(), module.dim.len());
        assert_eq!(proj.len(), module.dim.len());
        DecoratedObject { inj, module, proj }
    }

    pub fn module(module: RepClassId) -> Self {
        let m = module.dim.len();
        DecoratedObject::new(vec![0; m], module, vec![0; m])
    }

    pub fn zero(cat: &Catalog) -> Self {
        DecoratedObject::module(cat.zero())
    }

    pub fn shifted_projective(cat: &Catalog, proj: Vec<u32>) -> Self {
        DecoratedObject::new(vec![0; proj.len()], cat.zero(), proj)
    }

    pub fn shifted_injective(cat: &Catalog, inj: Vec<u32>) -> Self {
        DecoratedObject::new(inj.clone(), cat.zero(), vec![0; inj.len()])
    }

    pub fn has_inj(&self) -> bool {
        self.inj.iter().any(|&k| k > 0)
    }

    pub fn has_proj(&self) -> bool {
        self.proj.iter().any(|&k| k > 0)
    }

    /// Dimension vectors `(i, m, p)` of the three parts as modules.
    pub fn part_dims(&self, cat: &Catalog) -> (DimVec, DimVec, DimVec) {
        (
            counts_dim(cat, &self.inj, false),
            self.module.dim.clone(),
            counts_dim(cat, &self.proj, true),
        )
    }

    /// `Dim = m − i − p`.
    pub fn dim(&self, cat: &Catalog) -> DimVec {
        let (i, m, p) = self.part_dims(cat);
        &(&m - &i) - &p
    }

    /// Descriptor `I:1,2;M:(1,1)#0;P:1` with 1-based vertices listed with multiplicity.
    pub fn descriptor(&self) -> String {
        let mut parts = Vec::new();
        if self.has_inj() {
            parts.push(format!("I:{}", list_vertices(&self.inj)));
        }
        if !self.module.dim.is_zero() || parts.is_empty() {
            parts.push(format!("M:{}", self.module));
        }
        if self.has_proj() {
            parts.push(format!("P:{}", list_vertices(&self.proj)));
        }
        parts.join(";")
    }

    /// Parses a descriptor; `M:` also accepts `S1`, `P2`, `I1`, `0` and `+`-separated sums of these.
    pub fn parse(cat: &Catalog, s: &str) -> Result<Self> {
        let m = cat.context().m;
        let mut inj = vec![0u32; m];
        let mut proj = vec![0u32; m];
        let mut module = cat.zero();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, val) = part
                .split_once(':')
                .ok_or_else(|| QcaError::Parse(format!("expected KEY:VALUE in {part:?}")))?;
            match key.trim() {
                "I" => parse_vertices(val, &mut inj)?,
                "P" => parse_vertices(val, &mut proj)?,
                "M" => module = parse_module(cat, val.trim())?,
                other => return Err(QcaError::Parse(format!("unknown part {other:?} in {s:?}"))),
            }
        }
        Ok(DecoratedObject::new(inj, module, proj))
    }
}

fn counts_dim(cat: &Catalog, counts: &[u32], projective: bool) -> DimVec {
    let mut out = DimVec::zero(counts.len());
    for (v, &k) in counts.iter().enumerate() {
        if k > 0 {
            let d = if projective { cat.projective(v).dim } else { cat.injective(v).dim };
            out = &out + &d.scale(k as i64);
        }
    }
    out
}

fn list_vertices(counts: &[u32]) -> String {
    counts
        .iter()
        .enumerate()
        .flat_map(|(v, &k)| std::iter::repeat((v + 1).to_string()).take(k as usize))
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_vertices(s: &str, counts: &mut [u32]) -> Result<()> {
    for t in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = t.parse().map_err(|_| QcaError::Parse(format!("bad vertex {t:?}")))?;
        if v == 0 || v > counts.len() {
            return Err(QcaError::Parse(format!("vertex {v} out of range 1..={}", counts.len())));
        }
        counts[v - 1] += 1;
    }
    Ok(())
}

fn parse_module(cat: &Catalog, s: &str) -> Result<RepClassId> {
    if s.contains('+') {
        let parts: Vec<RepClassId> = s.split('+').map(|p| parse_module(cat, p.trim())).collect::<Result<_>>()?;
        return cat.sum(&parts);
    }
    if s == "0" {
        return Ok(cat.zero());
    }
    let m = cat.context().m;
    let named = |c: char, f: &dyn Fn(usize) -> RepClassId| -> Result<Option<RepClassId>> {
        match s.strip_prefix(c).map(str::parse::<usize>) {
            Some(Ok(v)) if v >= 1 && v <= m => Ok(Some(f(v - 1))),
            Some(Ok(v)) => Err(QcaError::Parse(format!("vertex {v} out of range in {s:?}"))),
            _ => Ok(None),
        }
    };
    for (c, f) in [
        ('S', &(|v| cat.simple(v)) as &dyn Fn(usize) -> RepClassId),
        ('P', &|v| cat.projective(v)),
        ('I', &|v| cat.injective(v)),
    ] {
        if let Some(id) = named(c, f)? {
            return Ok(id);
        }
    }
    let id = parse_class_id(s)?;
    if id.dim.len() != m {
        return Err(QcaError::Parse(format!("{s:?} has {} entries, expected {m}", id.dim.len())));
    }
    if cat.classifiable(&id.dim.as_usize()) {
        cat.ensure_classified(&id.dim)?;
    }
    cat.record(&id)?;
    Ok(id)
}

/// Parses `(1,1)#0`.
pub fn parse_class_id(s: &str) -> Result<RepClassId> {
    let bad = || QcaError::Parse(format!("expected a class like (1,1)#0, got {s:?}"));
    let (dim, ord) = s.split_once('#').ok_or_else(bad)?;
    let dim = dim.trim().strip_prefix('(').and_then(|d| d.strip_suffix(')')).ok_or_else(bad)?;
    let dim: Vec<i64> = dim
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    if dim.iter().any(|&x| x < 0) {
        return Err(bad());
    }
    let ordinal = ord.trim().parse::<u32>().map_err(|_| bad())?;
    Ok(RepClassId { dim: DimVec(dim), ordinal })
}

impl fmt::Display for DecoratedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |c: &[u32]| c.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "u[I=({}); M={}; P=({})]", show(&self.inj), self.module, show(&self.proj))
    }
}

impl Label for DecoratedObject {
    fn render(&self) -> String {
        self.to_string()
    }
}

/// Element of the derived Hall algebra in the basis `u_{I[−1]⊕M⊕P[1]}`.
pub type HallElement = LinComb<DecoratedObject>;

/// Element of the tensor square.
pub type TensorElement = LinComb<(DecoratedObject, DecoratedObject)>;

#[derive(Serialize)]
struct TermJson<'a> {
    coeff: &'a ExactScalar,
    coeff_text: String,
    inj: &'a [u32],
    #[serde(rename = "mod")]
    module: &'a RepClassId,
    proj: &'a [u32],
}

/// JSON array of `{coeff, inj, mod, proj}`.
pub fn element_json(x: &HallElement) -> serde_json::Value {
    let terms: Vec<TermJson> = x
        .iter()
        .map(|(o, c)| TermJson {
            coeff: c,
            coeff_text: c.to_string(),
            inj: &o.inj,
            module: &o.module,
            proj: &o.proj,
        })
        .collect();
    serde_json::to_value(terms).expect("serializable")
}
