//! The extended complexes.
//!
//! Column `c` of the double complex has `Λ^c` on top, with the twisted
//! differential `D = d − 2α∧`, and `Λ^{c−p}` on the bottom with the plain
//! `d`; the two rows are joined by wedging with the calibration `F`. Its
//! total cohomology is computed by a complex `B^0 → … → B^{m+p−1}`:
//!
//! * `B^r = Λ^r / F∧Λ^{r−p}` for `r ≤ mid`, with `D` followed by projection;
//! * at `mid` the second-order zig-zag `w ↦ dσ` where `F∧σ = Dw`;
//! * then `ker(F∧)` on `Λ^q`, `q = mid+2−p, …, m`, with the plain `d`.
//!
//! Every source of differentials (Lie models, polynomial strands, symbols)
//! supplies the same two row maps through [`ColumnSource`]; coefficient spaces
//! `C_c` are attached per column and tensored on the right.

use serde::Serialize;

use crate::error::{Error, Result, ValidationCode, ValidationFailure};
use crate::exterior::{basis, binomial, wedge_map, wedge_sign, Form};
use crate::homology::CochainComplex;
use crate::models::{monomial_count, LieAlgebraModel, MonomialBasis, PolyForm};
use crate::par::{map_vec, Execution};
use crate::qlinalg::{quotient_of_rows, Matrix, SparseVec, Subquotient};
use crate::rational::Rational;
use crate::structures::{Calibration, CalibrationKind, Realization};

/// Row maps of a double complex with coefficient spaces per column.
pub trait ColumnSource: Sync {
    fn calibration(&self) -> &Calibration;

    /// dim C_c; zero for columns that carry nothing.
    fn coeff_dim(&self, column: usize) -> usize;

    /// Plain d: Λ^k ⊗ C_c → Λ^{k+1} ⊗ C_{c+1}.
    fn plain(&self, k: usize, column: usize) -> Matrix;

    /// Twisted D: Λ^k ⊗ C_c → Λ^{k+1} ⊗ C_{c+1}.
    fn twisted(&self, k: usize, column: usize) -> Matrix;
}

/// Pieces of a structure before validation.
#[derive(Clone, Debug)]
pub struct StructureInput {
    pub model: LieAlgebraModel,
    pub alpha: Form,
    pub kind: CalibrationKind,
    pub form: Form,
}

/// A validated conformally calibrated structure on a Lie-algebra model.
#[derive(Clone, Debug)]
pub struct StructureData {
    model: LieAlgebraModel,
    alpha: Form,
    cal: Calibration,
    twisted: Vec<Matrix>,
}

impl StructureData {
    pub fn model(&self) -> &LieAlgebraModel {
        &self.model
    }

    pub fn alpha(&self) -> &Form {
        &self.alpha
    }

    pub fn calibration(&self) -> &Calibration {
        &self.cal
    }

    pub fn dim(&self) -> usize {
        self.model.dim()
    }

    /// The same model and α with the calibration multiplied by `c`.
    pub fn rescaled(&self, c: &Rational) -> Result<StructureData> {
        StructureInput {
            model: self.model.clone(),
            alpha: self.alpha.clone(),
            kind: self.cal.kind(),
            form: self.cal.form().scaled(c),
        }
        .validate()
    }
}

/// One line of a validation report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: &'static str,
    pub passed: bool,
}

/// Outcome of [`validate_structure`]: checks run in order until the first
/// failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub name: String,
    pub valid: bool,
    pub checks: Vec<CheckResult>,
    pub failure: Option<ValidationFailure>,
}

fn failure(code: ValidationCode, message: String, residual: &Form) -> ValidationFailure {
    ValidationFailure {
        code,
        message,
        offending: residual.sorted_terms().into_iter().map(|(b, c)| (b.indices(), c)).collect(),
    }
}

impl StructureInput {
    fn check(&self) -> (Vec<CheckResult>, std::result::Result<StructureData, ValidationFailure>) {
        let mut checks = Vec::new();
        let m = self.model.dim();
        let pass = |check: &'static str, checks: &mut Vec<CheckResult>, ok: bool| {
            checks.push(CheckResult { check, passed: ok });
            ok
        };
        let dims_ok = self.alpha.dim() == m
            && self.form.dim() == m
            && (self.alpha.is_zero() || self.alpha.degree() == Some(1));
        if !pass("dimensions", &mut checks, dims_ok) {
            let msg = format!(
                "model dimension {m}, α on Q^{} of degree {:?}, form on Q^{}",
                self.alpha.dim(),
                self.alpha.degree(),
                self.form.dim()
            );
            return (checks, Err(failure(ValidationCode::DimensionMismatch, msg, &Form::zero(m))));
        }
        if let Some(f) = self.model.jacobi_failure() {
            pass("d_squared", &mut checks, false);
            return (checks, Err(f));
        }
        pass("d_squared", &mut checks, true);
        let d_alpha = self.model.d(&self.alpha);
        if !pass("alpha_closed", &mut checks, d_alpha.is_zero()) {
            return (checks, Err(failure(ValidationCode::AlphaNotClosed, format!("dα = {d_alpha} ≠ 0"), &d_alpha)));
        }
        let two_alpha = self.alpha.scaled(&Rational::from_int(2));
        let residual = self.model.d(&self.form).sub(&two_alpha.wedge(&self.form).expect("dimensions checked"));
        if !pass("structure_equation", &mut checks, residual.is_zero()) {
            return (
                checks,
                Err(failure(ValidationCode::StructureEquation, format!("dF − 2α∧F = {residual} ≠ 0"), &residual)),
            );
        }
        let cal = match Calibration::new(self.kind, self.form.clone()) {
            Ok(c) => c,
            Err(e) => {
                pass("calibration_profile", &mut checks, false);
                return (checks, Err(failure(ValidationCode::DegenerateCalibration, e.to_string(), &Form::zero(m))));
            }
        };
        pass("calibration_profile", &mut checks, true);
        let twisted = twisted_differential(&self.model, &self.alpha, &Rational::from_int(2)).expect("α has degree 1");
        (checks, Ok(StructureData { model: self.model.clone(), alpha: self.alpha.clone(), cal, twisted }))
    }

    /// Runs every check, in order, and returns the validated structure.
    pub fn validate(&self) -> Result<StructureData> {
        self.check().1.map_err(Error::Validation)
    }
}

/// Checks, in order: d² = 0, dα = 0, dF = 2α∧F, calibration profile.
pub fn validate_structure(input: &StructureInput) -> ValidationReport {
    let (checks, result) = input.check();
    let failure = result.err();
    ValidationReport { name: input.model.name().to_string(), valid: failure.is_none(), checks, failure }
}

/// Matrices of `ω ↦ dω − weight·α∧ω` on Λ^k for k = 0..=m.
pub fn twisted_differential(model: &LieAlgebraModel, alpha: &Form, weight: &Rational) -> Result<Vec<Matrix>> {
    let m = model.dim();
    if alpha.dim() != m {
        return Err(Error::Dimension(format!("α lives on Q^{}, model on Q^{m}", alpha.dim())));
    }
    if !alpha.is_zero() && alpha.degree() != Some(1) {
        return Err(Error::Degree(format!("α must be a 1-form, got {alpha}")));
    }
    Ok((0..=m)
        .map(|k| {
            let d = model.d_matrix(k).clone();
            if k == m || alpha.is_zero() || weight.is_zero() {
                return d;
            }
            d.sub(&wedge_map(alpha, k).expect("k < m").scaled(weight))
        })
        .collect())
}

impl ColumnSource for StructureData {
    fn calibration(&self) -> &Calibration {
        &self.cal
    }

    fn coeff_dim(&self, _column: usize) -> usize {
        1
    }

    fn plain(&self, k: usize, _column: usize) -> Matrix {
        self.model.d_matrix(k).clone()
    }

    fn twisted(&self, k: usize, _column: usize) -> Matrix {
        self.twisted[k].clone()
    }
}

/// Constant-coefficient symbol: d := ξ∧, α := 0.
#[derive(Clone, Debug)]
pub struct SymbolSource {
    cal: Calibration,
    maps: Vec<Matrix>,
}

impl SymbolSource {
    pub fn new(cal: &Calibration, xi: &Form) -> Result<Self> {
        let m = cal.dim();
        if xi.dim() != m {
            return Err(Error::Dimension(format!("ξ lives on Q^{}, calibration on Q^{m}", xi.dim())));
        }
        if xi.is_zero() {
            return Err(Error::BadParameter("symbol at ξ = 0".into()));
        }
        if xi.degree() != Some(1) {
            return Err(Error::Degree(format!("ξ must be a 1-form, got {xi}")));
        }
        let b = basis(m);
        let maps = (0..=m)
            .map(|k| if k < m { wedge_map(xi, k).expect("k < m") } else { Matrix::zeros(0, b.len(m)) })
            .collect();
        Ok(SymbolSource { cal: cal.clone(), maps })
    }
}

impl ColumnSource for SymbolSource {
    fn calibration(&self) -> &Calibration {
        &self.cal
    }

    fn coeff_dim(&self, _column: usize) -> usize {
        1
    }

    fn plain(&self, k: usize, _column: usize) -> Matrix {
        self.maps[k].clone()
    }

    fn twisted(&self, k: usize, _column: usize) -> Matrix {
        self.maps[k].clone()
    }
}

/// Polynomial forms of total homogeneity `h`: column c carries coefficients
/// of degree h − c.
#[derive(Clone, Debug)]
pub struct StrandSource {
    cal: Calibration,
    h: usize,
}

impl StrandSource {
    pub fn new(cal: &Calibration, h: usize) -> Self {
        StrandSource { cal: cal.clone(), h }
    }

    fn coeff_degree(&self, column: usize) -> Option<usize> {
        self.h.checked_sub(column)
    }
}

/// d on Λ^k ⊗ P_deg → Λ^{k+1} ⊗ P_{deg−1} over Q^m.
pub fn polynomial_d(m: usize, k: usize, deg: usize) -> Matrix {
    let b = basis(m);
    let src = MonomialBasis::new(m, deg);
    let tgt_len = if deg == 0 { 0 } else { monomial_count(m, deg as isize - 1) };
    let tgt = MonomialBasis::new(m, deg.saturating_sub(1));
    let rows = b.len(k + 1) * tgt_len;
    if k >= m || deg == 0 {
        return Matrix::zeros(rows, b.len(k) * src.len());
    }
    let mut columns = Vec::with_capacity(b.len(k) * src.len());
    for &mask in b.masks(k) {
        for e in src.exps() {
            let mut col: SparseVec = Vec::new();
            for a in 0..m {
                if e[a] == 0 {
                    continue;
                }
                let Some(s) = wedge_sign(1 << a, mask) else { continue };
                let mut e2 = e.clone();
                e2[a] -= 1;
                let idx = b.index(mask | 1 << a) * tgt.len() + tgt.index_of(&e2).expect("degree drops by one");
                col.push((idx, Rational::from_int(s * e[a] as i64)));
            }
            col.sort_by_key(|x| x.0);
            columns.push(col);
        }
    }
    Matrix::from_sparse_columns(rows, &columns)
}

impl ColumnSource for StrandSource {
    fn calibration(&self) -> &Calibration {
        &self.cal
    }

    fn coeff_dim(&self, column: usize) -> usize {
        self.coeff_degree(column).map(|d| monomial_count(self.cal.dim(), d as isize)).unwrap_or(0)
    }

    fn plain(&self, k: usize, column: usize) -> Matrix {
        let m = self.cal.dim();
        match self.coeff_degree(column) {
            Some(deg) => polynomial_d(m, k, deg),
            None => Matrix::zeros(basis(m).len(k + 1) * self.coeff_dim(column + 1), 0),
        }
    }

    fn twisted(&self, k: usize, column: usize) -> Matrix {
        self.plain(k, column)
    }
}

/// Calibration-only data shared by every complex built on it.
#[derive(Clone, Debug)]
pub struct Layout {
    cal: Calibration,
    /// Λ^r / F∧Λ^{r−p}, for r = 0..=mid.
    quotients: Vec<Subquotient>,
    /// (F∧ on Λ^q or None when it vanishes for degree reasons, free columns),
    /// for q = first_kernel..=m.
    kernels: Vec<(Option<Matrix>, Vec<usize>)>,
    /// Inverse of F∧: Λ^{split} → Λ^{split+p}.
    split_inverse: Matrix,
}

impl Layout {
    pub fn new(cal: &Calibration) -> Result<Self> {
        let m = cal.dim();
        let p = cal.degree();
        let mid = cal.middle();
        let quotients = (0..=mid)
            .map(|r| {
                Ok(if r < p {
                    quotient_of_rows(&Matrix::zeros(0, binomial(m, r)))
                } else {
                    quotient_of_rows(&wedge_map(cal.form(), r - p)?.transpose())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let kernels = (Self::first_kernel_of(cal)..=m)
            .map(|q| {
                if q + p > m {
                    return Ok((None, (0..binomial(m, q)).collect()));
                }
                let w = wedge_map(cal.form(), q)?;
                let free = w.rref().free_columns();
                Ok((Some(w), free))
            })
            .collect::<Result<Vec<_>>>()?;
        let split_inverse = wedge_map(cal.form(), cal.split_degree())?
            .inverse()
            .ok_or_else(|| Error::Degenerate("F∧ is not invertible at the split degree".into()))?;
        Ok(Layout { cal: cal.clone(), quotients, kernels, split_inverse })
    }

    fn first_kernel_of(cal: &Calibration) -> usize {
        cal.middle() + 2 - cal.degree()
    }

    pub fn calibration(&self) -> &Calibration {
        &self.cal
    }

    pub fn first_kernel(&self) -> usize {
        Self::first_kernel_of(&self.cal)
    }

    /// Number of positions, m + p.
    pub fn positions(&self) -> usize {
        self.cal.positions()
    }

    /// Form degree, realization and coefficient column at position r.
    pub fn position_data(&self, r: usize) -> (Realization, usize, usize) {
        let mid = self.cal.middle();
        if r <= mid {
            (Realization::CokernelOf(r), r, r)
        } else {
            let j = r - mid - 1;
            (Realization::KernelIn(self.first_kernel() + j), self.first_kernel() + j, mid + 2 + j)
        }
    }

    /// Dimension of the form part at position r (before coefficients).
    pub fn form_dim(&self, r: usize) -> usize {
        if r <= self.cal.middle() {
            self.quotients[r].dim()
        } else {
            self.kernels[r - self.cal.middle() - 1].1.len()
        }
    }

    fn kernel(&self, q: usize) -> &(Option<Matrix>, Vec<usize>) {
        &self.kernels[q - self.first_kernel()]
    }

    /// Basis of ker(F∧) on Λ^q as matrix columns.
    fn kernel_basis_matrix(&self, q: usize) -> Matrix {
        let m = self.cal.dim();
        match &self.kernel(q).0 {
            None => Matrix::identity(binomial(m, q)),
            Some(w) => Matrix::from_columns(binomial(m, q), &w.kernel_basis()),
        }
    }
}

/// Whether a differential is first or second order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    First,
    Second,
}

/// Bookkeeping for one position of an extended complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Position {
    pub index: usize,
    /// k in Λ_⊥^k.
    pub perp_degree: usize,
    pub realization: Realization,
    pub form_degree: usize,
    pub coeff_column: usize,
    pub dim: usize,
    /// Order of the outgoing differential; `None` at the last position.
    pub order: Option<Order>,
}

impl Position {
    pub fn label(&self, p: usize) -> String {
        match self.realization {
            Realization::CokernelOf(r) if r < p => format!("Λ^{r}"),
            Realization::CokernelOf(r) => format!("Λ^{r}/F∧Λ^{}", r - p),
            Realization::KernelIn(q) => format!("ker F∧|Λ^{q}"),
        }
    }
}

/// The complex B^• with its position data.
#[derive(Clone, Debug)]
pub struct ExtendedComplex {
    pub kind: CalibrationKind,
    pub dim: usize,
    pub form_degree: usize,
    pub middle: usize,
    pub positions: Vec<Position>,
    pub complex: CochainComplex,
}

impl ExtendedComplex {
    pub fn dims(&self) -> &[usize] {
        self.complex.dims()
    }

    /// The kernel half, starting at position mid + 1.
    pub fn second_half(&self) -> CochainComplex {
        self.complex.truncate_from(self.middle + 1)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct PositionJson<'a> {
            position: usize,
            space: String,
            perp_degree: usize,
            realization: &'static str,
            form_degree: usize,
            coeff_column: usize,
            dim: usize,
            order: Option<Order>,
            differential: Option<&'a Matrix>,
        }
        let positions: Vec<PositionJson> = self
            .positions
            .iter()
            .map(|pos| PositionJson {
                position: pos.index,
                space: pos.label(self.form_degree),
                perp_degree: pos.perp_degree,
                realization: match pos.realization {
                    Realization::CokernelOf(_) => "cokernel",
                    Realization::KernelIn(_) => "kernel",
                },
                form_degree: pos.form_degree,
                coeff_column: pos.coeff_column,
                dim: pos.dim,
                order: pos.order,
                differential: self.complex.diff(pos.index),
            })
            .collect();
        serde_json::json!({
            "kind": self.kind,
            "dim": self.dim,
            "form_degree": self.form_degree,
            "middle": self.middle,
            "positions": positions,
        })
    }
}

/// The position matrices for one source.
pub fn build_with_layout<S: ColumnSource>(layout: &Layout, src: &S, exec: Execution) -> Result<ExtendedComplex> {
    let cal = layout.calibration();
    let m = cal.dim();
    let p = cal.degree();
    let mid = cal.middle();
    let n_pos = layout.positions();
    let positions: Vec<Position> = (0..n_pos)
        .map(|r| {
            let (realization, form_degree, coeff_column) = layout.position_data(r);
            let perp_degree = match realization {
                Realization::CokernelOf(k) => k,
                Realization::KernelIn(q) => m - q,
            };
            Position {
                index: r,
                perp_degree,
                realization,
                form_degree,
                coeff_column,
                dim: layout.form_dim(r) * src.coeff_dim(coeff_column),
                order: match r {
                    _ if r + 1 == n_pos => None,
                    _ if r == mid => Some(Order::Second),
                    _ => Some(Order::First),
                },
            }
        })
        .collect();
    let diffs = map_vec(exec, (0..n_pos - 1).collect(), |r| position_differential(layout, src, &positions, r))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let labels = positions.iter().map(|pos| pos.label(p)).collect();
    let dims = positions.iter().map(|pos| pos.dim).collect();
    let complex = CochainComplex::new(labels, dims, diffs)?;
    Ok(ExtendedComplex { kind: cal.kind(), dim: m, form_degree: p, middle: mid, positions, complex })
}

/// Coordinates of Λ^q ⊗ C vectors known to lie in ker(F∧) ⊗ C: keeps the free
/// blades. Checks membership first.
fn restrict_to_kernel(layout: &Layout, q: usize, c_dim: usize, y: Matrix) -> Result<Matrix> {
    let (w, free) = layout.kernel(q);
    if let Some(w) = w {
        if !w.kron_identity(c_dim).mul(&y).is_zero() {
            return Err(Error::Inconsistent(format!("differential leaves ker F∧ on Λ^{q}")));
        }
    }
    let rows: Vec<usize> = free.iter().flat_map(|&f| (0..c_dim).map(move |mu| f * c_dim + mu)).collect();
    Ok(y.select_rows(&rows))
}

fn position_differential<S: ColumnSource>(layout: &Layout, src: &S, positions: &[Position], r: usize) -> Result<Matrix> {
    let mid = layout.calibration().middle();
    let here = &positions[r];
    let next = &positions[r + 1];
    let c_here = src.coeff_dim(here.coeff_column);
    let c_next = src.coeff_dim(next.coeff_column);
    if here.dim == 0 || next.dim == 0 {
        return Ok(Matrix::zeros(next.dim, here.dim));
    }
    if r <= mid {
        let quotient = &layout.quotients[r];
        let reps: Vec<usize> = quotient.rep_coords.iter().flat_map(|&j| (0..c_here).map(move |mu| j * c_here + mu)).collect();
        let d_reps = src.twisted(r, r).select_columns(&reps);
        if r < mid {
            return Ok(layout.quotients[r + 1].project.kron_identity(c_next).mul(&d_reps));
        }
        // zig-zag: F∧σ = Dw, then dσ
        let c_mid = src.coeff_dim(r + 1);
        let sigma = layout.split_inverse.kron_identity(c_mid).mul(&d_reps);
        let d_sigma = src.plain(layout.calibration().split_degree(), r + 1).mul(&sigma);
        return restrict_to_kernel(layout, next.form_degree, c_next, d_sigma);
    }
    let q = here.form_degree;
    let inclusion = layout.kernel_basis_matrix(q).kron_identity(c_here);
    let image = src.plain(q, here.coeff_column).mul(&inclusion);
    restrict_to_kernel(layout, q + 1, c_next, image)
}

/// Builds B^• for a validated structure and checks d∘d = 0.
pub fn build_extended_complex(s: &StructureData) -> Result<ExtendedComplex> {
    build_extended_complex_with(s, Execution::default())
}

pub fn build_extended_complex_with(s: &StructureData, exec: Execution) -> Result<ExtendedComplex> {
    let layout = Layout::new(&s.cal)?;
    let ec = build_with_layout(&layout, s, exec)?;
    ec.complex.check_d_squared()?;
    Ok(ec)
}

/// The symbol complex at ξ.
pub fn symbol_complex(cal: &Calibration, xi: &Form) -> Result<ExtendedComplex> {
    symbol_complex_with(&Layout::new(cal)?, xi)
}

pub fn symbol_complex_with(layout: &Layout, xi: &Form) -> Result<ExtendedComplex> {
    let src = SymbolSource::new(layout.calibration(), xi)?;
    build_with_layout(layout, &src, Execution::Sequential)
}

/// The extended complex on polynomial forms of total homogeneity h (α = 0,
/// constant F).
pub fn strand_complex(cal: &Calibration, h: usize, exec: Execution) -> Result<ExtendedComplex> {
    strand_complex_with(&Layout::new(cal)?, h, exec)
}

pub fn strand_complex_with(layout: &Layout, h: usize, exec: Execution) -> Result<ExtendedComplex> {
    build_with_layout(layout, &StrandSource::new(layout.calibration(), h), exec)
}

/// The polynomial de Rham complex of homogeneity h: Λ^k ⊗ P_{h−k}.
pub fn de_rham_strand(m: usize, h: usize) -> CochainComplex {
    let b = basis(m);
    let top = m.min(h);
    let dims: Vec<usize> = (0..=top).map(|k| b.len(k) * monomial_count(m, (h - k) as isize)).collect();
    let labels = (0..=top).map(|k| format!("Λ^{k}⊗P_{}", h - k)).collect();
    let diffs = (0..top).map(|k| polynomial_d(m, k, h - k)).collect();
    CochainComplex::new(labels, dims, diffs).expect("strand shapes agree")
}

/// σ with F∧σ = u, through the isomorphism at the split degree.
fn solve_split(cal: &Calibration, inverse: &Matrix, u: &Form) -> Form {
    let m = cal.dim();
    let k = cal.split_degree();
    Form::from_sparse(m, k, &inverse.mul_sparse(&u.to_sparse(k + cal.degree())))
}

/// The second-order operator on a representative w ∈ Λ^mid: dσ where
/// F∧σ = (d − 2α∧)w.
pub fn middle_operator(s: &StructureData, w: &Form) -> Result<Form> {
    let cal = &s.cal;
    let mid = cal.middle();
    if !w.is_zero() && w.degree() != Some(mid) {
        return Err(Error::Degree(format!("middle operator acts on degree {mid}, got {w}")));
    }
    let inverse = wedge_map(cal.form(), cal.split_degree())?
        .inverse()
        .ok_or_else(|| Error::Degenerate("F∧ is not invertible at the split degree".into()))?;
    let u = s.model.d(w).sub(&s.alpha.scaled(&Rational::from_int(2)).wedge(w)?);
    let sigma = solve_split(cal, &inverse, &u);
    if cal.form().wedge(&sigma)? != u {
        return Err(Error::NoSolution("F∧σ = Dw has no solution".into()));
    }
    Ok(s.model.d(&sigma))
}

/// The same operator on polynomial forms (α = 0).
pub fn middle_operator_poly(cal: &Calibration, w: &PolyForm) -> Result<PolyForm> {
    let m = cal.dim();
    let mid = cal.middle();
    if w.terms().any(|(mask, _, _)| mask.count_ones() as usize != mid) {
        return Err(Error::Degree(format!("middle operator acts on degree {mid}")));
    }
    let inverse = wedge_map(cal.form(), cal.split_degree())?
        .inverse()
        .ok_or_else(|| Error::Degenerate("F∧ is not invertible at the split degree".into()))?;
    let b = basis(m);
    let u = w.d();
    // group by monomial, solve blade-wise
    let mut by_mono: std::collections::BTreeMap<Vec<u8>, SparseVec> = std::collections::BTreeMap::new();
    for (mask, e, c) in u.terms() {
        by_mono.entry(e.to_vec()).or_default().push((b.index(mask), c.clone()));
    }
    let k = cal.split_degree();
    let mut sigma = PolyForm::zero(m);
    for (e, mut v) in by_mono {
        v.sort_by_key(|x| x.0);
        for (i, c) in inverse.mul_sparse(&v) {
            sigma.add_term(b.masks(k)[i], e.clone(), c);
        }
    }
    Ok(sigma.d())
}
