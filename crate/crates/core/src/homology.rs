//! Cohomology of finite cochain complexes, cup-product maps and the
//! long-exact-sequence predictor.

use serde::Serialize;

use crate::error::{Error, Result, ValidationCode, ValidationFailure};
use crate::exterior::{basis, right_wedge_map, Form};
use crate::par::{map_vec, Execution};
use crate::qlinalg::{to_dense, to_sparse, Matrix, SparseVec, Vector};
use crate::rational::Rational;

/// A finite complex `V_0 → V_1 → … → V_N` of exact matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    labels: Vec<String>,
    dims: Vec<usize>,
    /// `diffs[i]: V_i → V_{i+1}`.
    diffs: Vec<Matrix>,
}

impl CochainComplex {
    /// Checks shapes only; see [`CochainComplex::check_d_squared`].
    pub fn new(labels: Vec<String>, dims: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        if labels.len() != dims.len() || diffs.len() + 1 != dims.len().max(1) {
            return Err(Error::Inconsistent(format!(
                "{} labels, {} spaces and {} differentials do not form a complex",
                labels.len(),
                dims.len(),
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.shape() != (dims[i + 1], dims[i]) {
                return Err(Error::Inconsistent(format!(
                    "differential {i} has shape {:?}, expected {:?}",
                    d.shape(),
                    (dims[i + 1], dims[i])
                )));
            }
        }
        Ok(CochainComplex { labels, dims, diffs })
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn diffs(&self) -> &[Matrix] {
        &self.diffs
    }

    /// `d_i`, or `None` past the last space.
    pub fn diff(&self, i: usize) -> Option<&Matrix> {
        self.diffs.get(i)
    }

    /// First position where `d_{i+1} ∘ d_i ≠ 0`.
    pub fn d_squared_failure(&self) -> Option<usize> {
        (0..self.diffs.len().saturating_sub(1)).find(|&i| !self.diffs[i + 1].mul(&self.diffs[i]).is_zero())
    }

    pub fn check_d_squared(&self) -> Result<()> {
        match self.d_squared_failure() {
            None => Ok(()),
            Some(i) => Err(Error::Validation(ValidationFailure {
                code: ValidationCode::DSquaredNonzero,
                message: format!("d∘d ≠ 0 from position {i} ({})", self.labels[i]),
                offending: Vec::new(),
            })),
        }
    }

    /// The tail starting at position `start`.
    pub fn truncate_from(&self, start: usize) -> CochainComplex {
        let start = start.min(self.dims.len());
        CochainComplex {
            labels: self.labels[start..].to_vec(),
            dims: self.dims[start..].to_vec(),
            diffs: self.diffs[start.min(self.diffs.len())..].to_vec(),
        }
    }

    /// Σ (−1)^i dim V_i.
    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.dims)
    }
}

/// Σ (−1)^i v_i.
pub fn alternating_sum(v: &[usize]) -> i64 {
    v.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

/// Per-degree cohomology dimensions, optionally with representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub labels: Vec<String>,
    pub dims: Vec<usize>,
    /// Ranks of the outgoing differentials.
    pub ranks: Vec<usize>,
    #[serde(skip)]
    pub generators: Option<Vec<Vec<Vector>>>,
}

impl CohomologyTable {
    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.dims)
    }

    pub fn dim(&self, r: usize) -> usize {
        self.dims.get(r).copied().unwrap_or(0)
    }

    pub fn to_markdown(&self, title: &str) -> String {
        let mut s = format!("| {title} | space | dim |\n|---|---|---|\n");
        for (r, (l, d)) in self.labels.iter().zip(&self.dims).enumerate() {
            s.push_str(&format!("| {r} | {l} | {d} |\n"));
        }
        s
    }
}

/// Dimensions only.
pub fn cohomology(c: &CochainComplex) -> CohomologyTable {
    cohomology_with(c, Execution::Sequential)
}

/// Dimensions only, with the ranks computed under `exec`.
pub fn cohomology_with(c: &CochainComplex, exec: Execution) -> CohomologyTable {
    let ranks = map_vec(exec, c.diffs.iter().collect(), |d: &Matrix| d.rank());
    let dims = (0..c.len())
        .map(|i| {
            let out = ranks.get(i).copied().unwrap_or(0);
            let inc = if i == 0 { 0 } else { ranks[i - 1] };
            c.dims[i] - out - inc
        })
        .collect();
    CohomologyTable { labels: c.labels.clone(), dims, ranks, generators: None }
}

/// Echelon basis built one vector at a time, for "independent modulo" tests.
#[derive(Clone, Debug, Default)]
struct IncrementalEchelon {
    rows: Vec<SparseVec>,
    pivot_of: std::collections::HashMap<usize, usize>,
}

impl IncrementalEchelon {
    /// Reduces `v` and keeps it if it is new; returns whether it was kept.
    fn insert(&mut self, v: &[(usize, Rational)]) -> bool {
        let mut r = v.to_vec();
        while let Some((lead, coeff)) = r.first().cloned() {
            match self.pivot_of.get(&lead) {
                Some(&p) => r = crate::qlinalg::axpy(&r, &(-&coeff), &self.rows[p]),
                None => {
                    let inv = coeff.recip();
                    let scaled: SparseVec = r.iter().map(|(i, x)| (*i, x * &inv)).collect();
                    self.pivot_of.insert(lead, self.rows.len());
                    self.rows.push(scaled);
                    return true;
                }
            }
        }
        false
    }
}

/// Dimensions plus generators: kernel vectors of `d_r` (free-column order)
/// kept greedily when independent of the image of `d_{r−1}` and of the
/// generators kept so far.
pub fn cohomology_with_generators(c: &CochainComplex) -> CohomologyTable {
    let mut table = cohomology(c);
    let gens = (0..c.len())
        .map(|r| {
            let kernel = match c.diff(r) {
                Some(d) => d.kernel_basis(),
                None => Matrix::identity(c.dims[r]).to_dense(),
            };
            let mut ech = IncrementalEchelon::default();
            if r > 0 {
                for col in c.diffs[r - 1].sparse_columns() {
                    ech.insert(&col);
                }
            }
            kernel.into_iter().filter(|v| ech.insert(&to_sparse(v))).collect::<Vec<_>>()
        })
        .collect::<Vec<_>>();
    debug_assert!(gens.iter().zip(&table.dims).all(|(g, &d)| g.len() == d));
    table.generators = Some(gens);
    table
}

/// Coordinates of the class of a closed vector `v` at position `r` in the
/// table's generators.
pub fn class_coords(c: &CochainComplex, table: &CohomologyTable, r: usize, v: &[Rational]) -> Result<Vector> {
    let gens = table
        .generators
        .as_ref()
        .ok_or_else(|| Error::Inconsistent("cohomology table carries no generators".into()))?;
    let n = c.dims[r];
    if let Some(d) = c.diff(r) {
        if !d.mul_vec(v).iter().all(Rational::is_zero) {
            return Err(Error::Inconsistent(format!("vector at position {r} is not closed")));
        }
    }
    let mut cols: Vec<Vector> = gens[r].clone();
    if r > 0 {
        cols.extend(c.diffs[r - 1].sparse_columns().iter().map(|s| to_dense(s, n)));
    }
    let x = Matrix::from_columns(n, &cols)
        .solve(v)
        .ok_or_else(|| Error::NoSolution(format!("closed vector outside generators + image at {r}")))?;
    Ok(x[..gens[r].len()].to_vec())
}

/// Matrix of `[ω] ↦ [mult·ω]` from position `r` of `source` to position
/// `r_target` of `target`, in generator bases. Checks that `mult` sends
/// cocycles to cocycles and coboundaries to coboundaries.
pub fn cup_map(
    source: &CochainComplex,
    source_table: &CohomologyTable,
    target: &CochainComplex,
    target_table: &CohomologyTable,
    mult: &Matrix,
    r: usize,
    r_target: usize,
) -> Result<Matrix> {
    let src_dim = source.dims.get(r).copied().unwrap_or(0);
    let tgt_dim = target.dims.get(r_target).copied().unwrap_or(0);
    if mult.shape() != (tgt_dim, src_dim) {
        return Err(Error::Inconsistent(format!(
            "multiplication matrix has shape {:?}, expected {:?}",
            mult.shape(),
            (tgt_dim, src_dim)
        )));
    }
    let h_src = source_table.dim(r);
    let h_tgt = target_table.dim(r_target);
    if r_target >= target.len() || src_dim == 0 {
        return Ok(Matrix::zeros(h_tgt, h_src));
    }
    let gens = source_table.generators.as_ref().ok_or_else(|| Error::Inconsistent("source table carries no generators".into()))?;
    // closed goes to closed
    if let Some(d) = target.diff(r_target) {
        for g in &gens[r] {
            if !d.mul_vec(&mult.mul_vec(g)).iter().all(Rational::is_zero) {
                return Err(Error::Inconsistent("class is not closed: image of a cocycle is not closed".into()));
            }
        }
    }
    // exact goes to exact
    if r > 0 {
        let img = mult.mul(&source.diffs[r - 1]);
        let tgt_img = if r_target > 0 { target.diffs[r_target - 1].clone() } else { Matrix::zeros(tgt_dim, 0) };
        if tgt_img.hstack(&img).rank() != tgt_img.rank() {
            return Err(Error::Inconsistent("class multiplication does not preserve exact forms".into()));
        }
    }
    if h_src == 0 || h_tgt == 0 {
        return Ok(Matrix::zeros(h_tgt, h_src));
    }
    let cols = gens[r]
        .iter()
        .map(|g| {
            let y = mult.mul_vec(g);
            class_coords(target, target_table, r_target, &y)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(h_tgt, &cols))
}

/// Predicted dimensions from the exact sequence
/// `… → H^{r−p}(R) →δ H^r(ℋ⁰) → H^r → H^{r−p+1}(R) →δ H^{r+1}(ℋ⁰) → …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LesReport {
    pub class_degree: usize,
    pub betti_plain: Vec<usize>,
    pub betti_twisted: Vec<usize>,
    /// `delta_ranks[j]` = rank of δ: H^j(R) → H^{j+p}(ℋ⁰).
    pub delta_ranks: Vec<usize>,
    pub predicted: Vec<usize>,
    pub identifications: Vec<String>,
    pub direct: Option<Vec<usize>>,
    pub matches: Option<bool>,
}

/// `delta[j]`: H^j(R) → H^{j+p}(ℋ⁰) for j = 0..betti_plain.len(); the
/// prediction covers positions 0..positions.
pub fn les_predict(
    class_degree: usize,
    positions: usize,
    betti_plain: &[usize],
    betti_twisted: &[usize],
    delta: &[Matrix],
) -> Result<LesReport> {
    let p = class_degree;
    if delta.len() != betti_plain.len() {
        return Err(Error::Inconsistent(format!("{} connecting maps for {} plain degrees", delta.len(), betti_plain.len())));
    }
    let tw = |r: usize| betti_twisted.get(r).copied().unwrap_or(0);
    for (j, d) in delta.iter().enumerate() {
        if d.shape() != (tw(j + p), betti_plain[j]) {
            return Err(Error::Inconsistent(format!(
                "δ on H^{j} has shape {:?}, expected {:?}",
                d.shape(),
                (tw(j + p), betti_plain[j])
            )));
        }
    }
    let delta_ranks: Vec<usize> = delta.iter().map(Matrix::rank).collect();
    let plain = |j: isize| if j < 0 { 0 } else { betti_plain.get(j as usize).copied().unwrap_or(0) };
    let rank = |j: isize| if j < 0 { 0 } else { delta_ranks.get(j as usize).copied().unwrap_or(0) };
    let mut predicted = Vec::with_capacity(positions);
    let mut identifications = Vec::with_capacity(positions);
    for r in 0..positions as isize {
        let a = r - p as isize;
        let b = r - p as isize + 1;
        let coker = tw(r as usize) - rank(a);
        let ker = plain(b) - rank(b);
        predicted.push(coker + ker);
        identifications.push(format!(
            "H^{r} = coker(δ: H^{a} → H^{r}(ℋ⁰)) ⊕ ker(δ: H^{b} → H^{}(ℋ⁰)) = {coker} + {ker}",
            r + 1
        ));
    }
    Ok(LesReport {
        class_degree: p,
        betti_plain: betti_plain.to_vec(),
        betti_twisted: betti_twisted.to_vec(),
        delta_ranks,
        predicted,
        identifications,
        direct: None,
        matches: None,
    })
}

impl LesReport {
    /// Records a directly computed table and whether it agrees.
    pub fn compare(mut self, direct: &[usize]) -> Self {
        self.matches = Some(direct == self.predicted.as_slice());
        self.direct = Some(direct.to_vec());
        self
    }

    pub fn all_match(&self) -> bool {
        self.matches == Some(true)
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::from("| r | predicted | computed | match |\n|---|---|---|---|\n");
        for (r, p) in self.predicted.iter().enumerate() {
            let d = self.direct.as_ref().and_then(|d| d.get(r)).map(|x| x.to_string()).unwrap_or_else(|| "-".into());
            let m = self.direct.as_ref().map(|d| d.get(r) == Some(p));
            let m = match m {
                Some(true) => "yes",
                Some(false) => "NO",
                None => "-",
            };
            s.push_str(&format!("| {r} | {p} | {d} | {m} |\n"));
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("degree,dim_direct,dim_predicted,match\n");
        for (r, p) in self.predicted.iter().enumerate() {
            let d = self.direct.as_ref().and_then(|d| d.get(r).copied());
            let d_str = d.map(|x| x.to_string()).unwrap_or_default();
            s.push_str(&format!("{r},{d_str},{p},{}\n", d == Some(*p)));
        }
        s
    }
}

/// Mapping cone of `f: A → B` of degree `p − 1` in the sense that
/// `Cone^r = B^r ⊕ A^{r+1−p}` and `D(x, y) = (d_B x + f y, −d_A y)`, where
/// `chain[j]: A^j → B^{j+p}` must satisfy `d_B f = f d_A`.
pub fn mapping_cone(a: &CochainComplex, b: &CochainComplex, chain: &[Matrix], p: usize, positions: usize) -> Result<CochainComplex> {
    if chain.len() != a.len() {
        return Err(Error::Inconsistent("one chain map component per source degree expected".into()));
    }
    let bdim = |r: isize| if r < 0 { 0 } else { b.dims.get(r as usize).copied().unwrap_or(0) };
    let adim = |r: isize| if r < 0 { 0 } else { a.dims.get(r as usize).copied().unwrap_or(0) };
    let shift = |r: usize| r as isize + 1 - p as isize;
    for (j, f) in chain.iter().enumerate() {
        if f.shape() != (bdim((j + p) as isize), a.dims[j]) {
            return Err(Error::Inconsistent(format!("chain map component {j} has shape {:?}", f.shape())));
        }
        if let (Some(db), Some(da)) = (b.diff(j + p), a.diff(j)) {
            if db.mul(f) != chain[j + 1].mul(da) {
                return Err(Error::Inconsistent(format!("chain map does not commute in degree {j}")));
            }
        }
    }
    let dims: Vec<usize> = (0..positions).map(|r| bdim(r as isize) + adim(shift(r))).collect();
    let labels = (0..positions).map(|r| format!("B^{r} ⊕ A^{}", shift(r))).collect();
    let diffs = (0..positions.saturating_sub(1))
        .map(|r| {
            let (b0, a0) = (bdim(r as isize), adim(shift(r)));
            let (b1, a1) = (bdim(r as isize + 1), adim(shift(r + 1)));
            let mut rows: Vec<SparseVec> = vec![Vec::new(); b1 + a1];
            if b0 > 0 && b1 > 0 {
                let db = b.diff(r).expect("in range");
                for (i, row) in db.to_sparse_rows().iter().enumerate() {
                    rows[i].extend(row.iter().cloned());
                }
            }
            if a0 > 0 {
                let s = shift(r) as usize;
                if b1 > 0 {
                    for (i, row) in chain[s].to_sparse_rows().iter().enumerate() {
                        rows[i].extend(row.iter().map(|(j, v)| (b0 + j, v.clone())));
                    }
                }
                if a1 > 0 {
                    let da = a.diff(s).expect("in range");
                    for (i, row) in da.to_sparse_rows().iter().enumerate() {
                        rows[b1 + i].extend(row.iter().map(|(j, v)| (b0 + j, -v)));
                    }
                }
            }
            Matrix::from_sparse_rows(b1 + a1, b0 + a0, rows)
        })
        .collect();
    CochainComplex::new(labels, dims, diffs)
}

/// Cohomology of `(Λ^•, d − weight·α∧)` on a Lie-algebra model.
pub fn twisted_cohomology(model: &crate::models::LieAlgebraModel, alpha: &Form, weight: &Rational) -> Result<CohomologyTable> {
    let d_alpha = model.d(alpha);
    if !d_alpha.is_zero() {
        return Err(Error::Validation(ValidationFailure {
            code: ValidationCode::AlphaNotClosed,
            message: format!("dα = {d_alpha} ≠ 0"),
            offending: d_alpha.sorted_terms().into_iter().map(|(b, c)| (b.indices(), c)).collect(),
        }));
    }
    let complex = de_rham_complex(model, alpha, weight)?;
    Ok(cohomology_with_generators(&complex))
}

/// `(Λ^•, d − weight·α∧)` as a complex.
pub fn de_rham_complex(model: &crate::models::LieAlgebraModel, alpha: &Form, weight: &Rational) -> Result<CochainComplex> {
    let m = model.dim();
    let b = basis(m);
    let diffs = crate::builder::twisted_differential(model, alpha, weight)?;
    let labels = (0..=m).map(|k| format!("Λ^{k}")).collect();
    let dims = (0..=m).map(|k| b.len(k)).collect();
    CochainComplex::new(labels, dims, diffs[..m].to_vec())
}

/// Connecting maps δ = ·∧F: H^j(Λ, d) → H^{j+p}(Λ, d − 2α∧) for j = 0..=m.
pub fn connecting_maps(
    plain: &CochainComplex,
    plain_table: &CohomologyTable,
    twisted: &CochainComplex,
    twisted_table: &CohomologyTable,
    form: &Form,
) -> Result<Vec<Matrix>> {
    let m = form.dim();
    let p = form.homogeneous_degree(0)?;
    (0..=m)
        .map(|j| {
            if j + p > m {
                return Ok(Matrix::zeros(0, plain_table.dim(j)));
            }
            cup_map(plain, plain_table, twisted, twisted_table, &right_wedge_map(form, j)?, j, j + p)
        })
        .collect()
}

impl Matrix {
    /// Row storage as sparse vectors.
    pub fn to_sparse_rows(&self) -> Vec<SparseVec> {
        (0..self.rows()).map(|i| self.row(i).to_vec()).collect()
    }
}
