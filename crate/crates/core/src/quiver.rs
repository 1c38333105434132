//! Valued quivers with a compatible skew form, and the integer bilinear forms on ℤ^m.
//!
//! Vertices are 0-based internally and 1-based in context files.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{QcaError, Result};

/// An integer vector indexed by vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct DimVec(pub Vec<i64>);

impl DimVec {
    pub fn zero(m: usize) -> Self {
        DimVec(vec![0; m])
    }

    pub fn unit(m: usize, i: usize) -> Self {
        let mut v = vec![0; m];
        v[i] = 1;
        DimVec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn scale(&self, k: i64) -> Self {
        DimVec(self.0.iter().map(|x| x * k).collect())
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &DimVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn as_usize(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x.max(0) as usize).collect()
    }

    pub fn from_usize(v: &[usize]) -> Self {
        DimVec(v.iter().map(|&x| x as i64).collect())
    }
}

impl fmt::Display for DimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Index<usize> for DimVec {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &DimVec {
    type Output = DimVec;
    fn add(self, o: &DimVec) -> DimVec {
        assert_eq!(self.len(), o.len());
        DimVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DimVec {
    type Output = DimVec;
    fn sub(self, o: &DimVec) -> DimVec {
        assert_eq!(self.len(), o.len());
        DimVec(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DimVec {
    type Output = DimVec;
    fn neg(self) -> DimVec {
        DimVec(self.0.iter().map(|a| -a).collect())
    }
}

impl Add for DimVec {
    type Output = DimVec;
    fn add(self, o: DimVec) -> DimVec {
        &self + &o
    }
}

impl Sub for DimVec {
    type Output = DimVec;
    fn sub(self, o: DimVec) -> DimVec {
        &self - &o
    }
}

impl Neg for DimVec {
    type Output = DimVec;
    fn neg(self) -> DimVec {
        -&self
    }
}

/// Square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntMatrix {
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        IntMatrix {
            n,
            rows: vec![vec![0; n]; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n);
        for i in 0..n {
            m.rows[i][i] = 1;
        }
        m
    }

    pub fn diag(d: &[i64]) -> Self {
        let mut m = IntMatrix::zero(d.len());
        for (i, &x) in d.iter().enumerate() {
            m.rows[i][i] = x;
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntMatrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.rows[j][i] = self.rows[i][j];
            }
        }
        t
    }

    pub fn mul(&self, o: &IntMatrix) -> Self {
        let mut r = IntMatrix::zero(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                let a = self.rows[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..self.n {
                    r.rows[i][j] += a * o.rows[k][j];
                }
            }
        }
        r
    }

    pub fn add(&self, o: &IntMatrix) -> Self {
        let mut r = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                r.rows[i][j] += o.rows[i][j];
            }
        }
        r
    }

    pub fn sub(&self, o: &IntMatrix) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        IntMatrix {
            n: self.n,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|x| x * k).collect())
                .collect(),
        }
    }

    pub fn apply(&self, x: &DimVec) -> DimVec {
        assert_eq!(x.len(), self.n);
        DimVec(
            self.rows
                .iter()
                .map(|r| r.iter().zip(&x.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// `xᵀ · self · y`.
    pub fn form(&self, x: &DimVec, y: &DimVec) -> i64 {
        let my = self.apply(y);
        x.0.iter().zip(&my.0).map(|(a, b)| a * b).sum()
    }

    pub fn is_skew(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.rows[i][j] == -self.rows[j][i]))
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub from: usize,
    pub to: usize,
    #[serde(default = "one")]
    pub mult: usize,
}

fn one() -> usize {
    1
}

/// On-disk form of a context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub m: usize,
    pub n: usize,
    pub d: i64,
    pub arrows: Vec<ArrowSpec>,
    pub lambda: Vec<Vec<i64>>,
    pub q0: u32,
    /// Per-vertex valuations overriding `d`; contexts using them are symbolic-only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valuations: Option<Vec<i64>>,
}

/// A validated valued quiver with its derived matrices.
#[derive(Clone, Debug)]
pub struct QuiverContext {
    pub name: Option<String>,
    pub m: usize,
    pub n: usize,
    pub d: i64,
    pub valuations: Vec<i64>,
    /// Arrows as `(source, target, multiplicity)`, 0-based.
    pub arrows: Vec<(usize, usize, usize)>,
    pub q0: u32,
    pub lambda: IntMatrix,
    pub r_prime: IntMatrix,
    pub r: IntMatrix,
    pub b: IntMatrix,
    pub e: IntMatrix,
    pub e_prime: IntMatrix,
    pub dmat: IntMatrix,
    /// `E·D`, the Gram matrix of the Euler form.
    pub euler_gram: IntMatrix,
    e_inv: IntMatrix,
    /// Vertices in a topological order.
    pub topo: Vec<usize>,
}

pub const SUPPORTED_Q0: [u32; 4] = [2, 3, 5, 7];
pub const MAX_FIELD_ORDER: u64 = 343;

impl QuiverContext {
    pub fn from_json(s: &str) -> Result<Self> {
        let f: ContextFile = serde_json::from_str(s)?;
        QuiverContext::from_file(f)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let s = std::fs::read_to_string(path)
            .map_err(|e| QcaError::Io(format!("{}: {e}", path.display())))?;
        QuiverContext::from_json(&s)
    }

    pub fn from_file(f: ContextFile) -> Result<Self> {
        let bad = |s: String| Err(QcaError::InvalidContext(s));
        let m = f.m;
        if m == 0 {
            return bad("m must be positive".into());
        }
        if f.n > m {
            return bad(format!("n = {} exceeds m = {}", f.n, m));
        }
        if f.d <= 0 {
            return bad(format!("valuation d = {} must be positive", f.d));
        }
        if !SUPPORTED_Q0.contains(&f.q0) {
            return bad(format!("q0 = {} is not one of 2, 3, 5, 7", f.q0));
        }
        let valuations = match &f.valuations {
            Some(v) => {
                if v.len() != m || v.iter().any(|&x| x <= 0) {
                    return bad("valuations must list m positive integers".into());
                }
                v.clone()
            }
            None => vec![f.d; m],
        };
        let equal = valuations.iter().all(|&x| x == valuations[0]);
        if equal && (f.q0 as u64).checked_pow(valuations[0] as u32).map_or(true, |q| q > MAX_FIELD_ORDER) {
            return bad(format!(
                "field order q0^d = {}^{} exceeds {}",
                f.q0, valuations[0], MAX_FIELD_ORDER
            ));
        }

        let mut r_prime = IntMatrix::zero(m);
        let mut arrows = Vec::new();
        for a in &f.arrows {
            if a.from == 0 || a.to == 0 || a.from > m || a.to > m {
                return bad(format!("arrow {}→{} has a vertex outside 1..={m}", a.from, a.to));
            }
            if a.from == a.to {
                return bad(format!("loop at vertex {}", a.from));
            }
            if a.mult == 0 {
                return bad(format!("arrow {}→{} has multiplicity 0", a.from, a.to));
            }
            r_prime.rows[a.from - 1][a.to - 1] += a.mult as i64;
            arrows.push((a.from - 1, a.to - 1, a.mult));
        }

        let topo = match topological_order(&r_prime) {
            Some(t) => t,
            None => return bad("quiver is not acyclic: it has an oriented cycle".into()),
        };

        // r_ij = r'_ji · d_j / d_i
        let mut r = IntMatrix::zero(m);
        for i in 0..m {
            for j in 0..m {
                let num = r_prime.rows[j][i] * valuations[j];
                if num % valuations[i] != 0 {
                    return bad(format!(
                        "valuation ratio at ({}, {}) is not integral",
                        i + 1,
                        j + 1
                    ));
                }
                r.rows[i][j] = num / valuations[i];
            }
        }

        if f.lambda.len() != m || f.lambda.iter().any(|row| row.len() != m) {
            return bad(format!("lambda must be {m}×{m}"));
        }
        let lambda = IntMatrix {
            n: m,
            rows: f.lambda.clone(),
        };
        if !lambda.is_skew() {
            return bad("lambda is not skew-symmetric".into());
        }

        let id = IntMatrix::identity(m);
        let e = id.sub(&r_prime);
        let e_prime = id.sub(&r);
        let b = r_prime.sub(&r);
        let dmat = IntMatrix::diag(&valuations);
        let compat = lambda.mul(&b.scale(-1));
        for i in 0..m {
            for j in 0..m {
                if compat.rows[i][j] != dmat.rows[i][j] {
                    return bad(format!(
                        "compatibility Λ·(−B) = D fails at entry ({}, {}): got {}, expected {}",
                        i + 1,
                        j + 1,
                        compat.rows[i][j],
                        dmat.rows[i][j]
                    ));
                }
            }
        }
        let euler_gram = e.mul(&dmat);

        // E = I − R′ with R′ nilpotent, so E⁻¹ = Σ R′^k.
        let mut e_inv = IntMatrix::identity(m);
        let mut pw = IntMatrix::identity(m);
        for _ in 1..m {
            pw = pw.mul(&r_prime);
            e_inv = e_inv.add(&pw);
        }

        Ok(QuiverContext {
            name: f.name,
            m,
            n: f.n,
            d: valuations[0],
            valuations,
            arrows,
            q0: f.q0,
            lambda,
            r_prime,
            r,
            b,
            e,
            e_prime,
            dmat,
            euler_gram,
            e_inv,
            topo,
        })
    }

    /// Whether the counting engine applies (all valuations equal).
    pub fn is_countable(&self) -> bool {
        self.valuations.iter().all(|&x| x == self.d)
    }

    pub fn to_file(&self) -> ContextFile {
        let mut arrows: Vec<ArrowSpec> = self
            .arrows
            .iter()
            .map(|&(s, t, k)| ArrowSpec {
                from: s + 1,
                to: t + 1,
                mult: k,
            })
            .collect();
        arrows.sort_by_key(|a| (a.from, a.to, a.mult));
        ContextFile {
            name: None,
            m: self.m,
            n: self.n,
            d: self.d,
            arrows,
            lambda: self.lambda.rows.clone(),
            q0: self.q0,
            valuations: (!self.is_countable()).then(|| self.valuations.clone()),
        }
    }

    /// Same quiver over a different base prime.
    pub fn with_q0(&self, q0: u32) -> Result<Self> {
        let mut f = self.to_file();
        f.q0 = q0;
        f.name = self.name.clone();
        QuiverContext::from_file(f)
    }

    /// Stable hex digest of the mathematical content (the name is ignored).
    pub fn hash(&self) -> String {
        let canon = serde_json::to_string(&self.to_file()).expect("context serializes");
        let digest = Sha256::digest(canon.as_bytes());
        hex::encode(&digest[..8])
    }

    /// Order of the vertex field 𝔽_{q0^d}.
    pub fn field_order(&self) -> u64 {
        (self.q0 as u64).pow(self.d as u32)
    }

    fn check_dim(&self, x: &DimVec) {
        assert_eq!(x.len(), self.m, "vector length {} does not match m = {}", x.len(), self.m);
    }

    /// `⟨α,β⟩ = αᵀ·E·D·β`.
    pub fn euler(&self, alpha: &DimVec, beta: &DimVec) -> i64 {
        self.check_dim(alpha);
        self.check_dim(beta);
        self.euler_gram.form(alpha, beta)
    }

    /// `(α,β) = ⟨α,β⟩ + ⟨β,α⟩`.
    pub fn sym(&self, alpha: &DimVec, beta: &DimVec) -> i64 {
        self.euler(alpha, beta) + self.euler(beta, alpha)
    }

    /// `*x = E·x`.
    pub fn star_left(&self, x: &DimVec) -> DimVec {
        self.check_dim(x);
        self.e.apply(x)
    }

    /// `x* = E′·x`.
    pub fn star_right(&self, x: &DimVec) -> DimVec {
        self.check_dim(x);
        self.e_prime.apply(x)
    }

    /// `αᵀ·Λ·β`.
    pub fn lambda_form(&self, alpha: &DimVec, beta: &DimVec) -> i64 {
        self.check_dim(alpha);
        self.check_dim(beta);
        self.lambda.form(alpha, beta)
    }

    /// `−E⁻¹·E′·x`.
    pub fn coxeter(&self, x: &DimVec) -> DimVec {
        self.check_dim(x);
        -self.e_inv.apply(&self.e_prime.apply(x))
    }

    /// `−E′⁻¹·E·x`, the inverse of [`coxeter`](Self::coxeter).
    pub fn coxeter_inv(&self, x: &DimVec) -> DimVec {
        self.check_dim(x);
        let mut rt = IntMatrix::identity(self.m);
        let mut pw = IntMatrix::identity(self.m);
        for _ in 1..self.m {
            pw = pw.mul(&self.r);
            rt = rt.add(&pw);
        }
        -rt.apply(&self.e.apply(x))
    }

    pub fn unit(&self, i: usize) -> DimVec {
        DimVec::unit(self.m, i)
    }

    /// Human-readable dump of the derived matrices.
    pub fn matrices_report(&self) -> String {
        let mut s = String::new();
        for (name, mat) in [
            ("R'", &self.r_prime),
            ("R", &self.r),
            ("B", &self.b),
            ("E", &self.e),
            ("E'", &self.e_prime),
            ("D", &self.dmat),
            ("Lambda", &self.lambda),
            ("E*D", &self.euler_gram),
        ] {
            s.push_str(&format!("{name} =\n{mat}"));
        }
        if !self.is_countable() {
            s.push_str("note: unequal valuations, symbolic-only\n");
        }
        s
    }
}

fn topological_order(adj: &IntMatrix) -> Option<Vec<usize>> {
    let m = adj.n;
    let mut indeg: Vec<usize> = (0..m)
        .map(|j| (0..m).filter(|&i| adj.rows[i][j] != 0).count())
        .collect();
    let mut ready: Vec<usize> = (0..m).filter(|&j| indeg[j] == 0).rev().collect();
    let mut order = Vec::with_capacity(m);
    while let Some(v) = ready.pop() {
        order.push(v);
        for w in (0..m).rev() {
            if adj.rows[v][w] != 0 {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
    }
    (order.len() == m).then_some(order)
}

/// The Kronecker quiver with two arrows over 𝔽_{q0²}.
pub fn kronecker(q0: u32) -> QuiverContext {
    QuiverContext::from_json(&format!(
        r#"{{"name":"K2","m":2,"n":2,"d":2,"arrows":[{{"from":1,"to":2,"mult":2}}],"lambda":[[0,1],[-1,0]],"q0":{q0}}}"#
    ))
    .expect("Kronecker context is valid")
}

/// The A2 quiver `1 → 2` with valuation 2.
pub fn a2_valued(q0: u32) -> QuiverContext {
    QuiverContext::from_json(&format!(
        r#"{{"name":"A2v","m":2,"n":2,"d":2,"arrows":[{{"from":1,"to":2,"mult":1}}],"lambda":[[0,2],[-2,0]],"q0":{q0}}}"#
    ))
    .expect("A2 context is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[i64]) -> DimVec {
        DimVec(v.to_vec())
    }

    #[test]
    fn kronecker_forms() {
        let k = kronecker(2);
        let (e1, e2) = (k.unit(0), k.unit(1));
        assert_eq!(k.euler(&e1, &e2), -4);
        assert_eq!(k.euler(&e1, &e1), 2);
        assert_eq!(k.euler(&e2, &e1), 0);
        assert_eq!(k.sym(&e1, &e2), -4);
        assert_eq!(k.sym(&e2, &e1), -4);
        assert_eq!(k.star_left(&e1), dv(&[1, 0]));
        assert_eq!(k.star_left(&e2), dv(&[-2, 1]));
        assert_eq!(k.star_right(&e1), dv(&[1, -2]));
        assert_eq!(k.star_left(&DimVec::zero(2)), DimVec::zero(2));
        assert_eq!(k.lambda_form(&e1, &e2), 1);
        assert_eq!(k.lambda_form(&k.star_right(&e1), &k.star_right(&e2)), 1);
        assert_eq!(k.coxeter(&e1), dv(&[3, 2]));
        assert_eq!(k.coxeter(&e2), dv(&[-2, -1]));
        assert_eq!(k.coxeter_inv(&k.coxeter(&dv(&[5, -3]))), dv(&[5, -3]));
    }

    #[test]
    fn kronecker_matrices() {
        let k = kronecker(3);
        assert_eq!(k.e.rows, vec![vec![1, -2], vec![0, 1]]);
        assert_eq!(k.e_prime.rows, vec![vec![1, 0], vec![-2, 1]]);
        assert_eq!(k.b.rows, vec![vec![0, 2], vec![-2, 0]]);
        assert_eq!(k.euler_gram.rows, vec![vec![2, -4], vec![0, 2]]);
        assert_eq!(k.r, k.r_prime.transpose());
        assert_eq!(k.euler_gram, k.dmat.mul(&k.e));
        assert_eq!(k.field_order(), 9);
    }

    #[test]
    fn validation_rejects() {
        let cyc = r#"{"m":2,"n":2,"d":1,"arrows":[{"from":1,"to":2},{"from":2,"to":1}],"lambda":[[0,1],[-1,0]],"q0":2}"#;
        assert!(matches!(QuiverContext::from_json(cyc), Err(QcaError::InvalidContext(s)) if s.contains("not acyclic")));
        let notskew = r#"{"m":2,"n":2,"d":2,"arrows":[{"from":1,"to":2,"mult":2}],"lambda":[[0,1],[1,0]],"q0":2}"#;
        assert!(matches!(QuiverContext::from_json(notskew), Err(QcaError::InvalidContext(s)) if s.contains("skew")));
        let incompat = r#"{"m":2,"n":2,"d":2,"arrows":[{"from":1,"to":2,"mult":2}],"lambda":[[0,2],[-2,0]],"q0":2}"#;
        assert!(matches!(QuiverContext::from_json(incompat), Err(QcaError::InvalidContext(s)) if s.contains("(1, 1)")));
        let badq = r#"{"m":2,"n":2,"d":2,"arrows":[{"from":1,"to":2,"mult":2}],"lambda":[[0,1],[-1,0]],"q0":4}"#;
        assert!(QuiverContext::from_json(badq).is_err());
        let big = r#"{"m":2,"n":2,"d":4,"arrows":[{"from":1,"to":2,"mult":2}],"lambda":[[0,2],[-2,0]],"q0":7}"#;
        assert!(QuiverContext::from_json(big).is_err());
    }

    #[test]
    fn hash_ignores_name_and_tracks_q0() {
        let a = kronecker(2);
        let mut f = a.to_file();
        f.name = Some("other".into());
        let b = QuiverContext::from_file(f).unwrap();
        assert_eq!(a.hash(), b.hash());
        assert_ne!(a.hash(), kronecker(3).hash());
    }
}
