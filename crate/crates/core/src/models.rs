//! Finite-dimensional stand-ins for manifolds.
//!
//! * [`LieAlgebraModel`]: left-invariant forms, with the Chevalley–Eilenberg
//!   differential read off from structure constants.
//! * [`RingModel`]: a cohomology ring with zero differential and a chosen
//!   class acting by cup product (used for CP^n).
//! * [`PolynomialModel`]: forms on Q^m with polynomial coefficients, split
//!   into finite strands by homogeneity, for local exactness checks.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ValidationCode, ValidationFailure};
use crate::exterior::{basis, binomial, wedge_sign, Form, FormLiteral};
use crate::qlinalg::{Matrix, SparseVec};
use crate::rational::Rational;
use crate::structures::{
    standard_g2, standard_g2_form, standard_symplectic, standard_symplectic_form, Calibration, CalibrationKind,
    CalibrationLiteral,
};

/// `d e^k ∋ coeff · e^i ∧ e^j` with 1-based indices and i < j.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstant {
    pub k: usize,
    pub i: usize,
    pub j: usize,
    pub coeff: Rational,
}

/// Chevalley–Eilenberg model of a Lie algebra.
#[derive(Clone, Debug)]
pub struct LieAlgebraModel {
    name: String,
    dim: usize,
    structure: Vec<StructureConstant>,
    /// d e^k for each basis 1-form.
    d_basis: Vec<Form>,
    /// d on Λ^k for k = 0..=dim (the last one maps to the zero space).
    diffs: Vec<Matrix>,
}

impl LieAlgebraModel {
    /// Builds the model and checks d² = 0 in every degree.
    pub fn new(name: impl Into<String>, dim: usize, structure: Vec<StructureConstant>) -> Result<Self> {
        let model = Self::new_unchecked(name, dim, structure)?;
        if let Some(fail) = model.jacobi_failure() {
            return Err(Error::Validation(fail));
        }
        Ok(model)
    }

    /// Builds the model without the d² = 0 check.
    pub fn new_unchecked(name: impl Into<String>, dim: usize, structure: Vec<StructureConstant>) -> Result<Self> {
        if dim == 0 || dim > crate::exterior::MAX_DIM {
            return Err(Error::Schema(format!("model dimension {dim} out of range")));
        }
        let mut d_basis = vec![Form::zero(dim); dim];
        for s in &structure {
            if s.k == 0 || s.k > dim || s.i == 0 || s.j > dim || s.i >= s.j {
                return Err(Error::Schema(format!(
                    "structure constant (k={}, i={}, j={}) needs 1 ≤ k ≤ {dim} and 1 ≤ i < j ≤ {dim}",
                    s.k, s.i, s.j
                )));
            }
            let term = Form::monomial(dim, &[s.i, s.j], s.coeff.clone())?;
            d_basis[s.k - 1] = d_basis[s.k - 1].add(&term);
        }
        let mut model = LieAlgebraModel { name: name.into(), dim, structure, d_basis, diffs: Vec::new() };
        model.diffs = (0..=dim).map(|k| model.build_d(k)).collect();
        Ok(model)
    }

    /// Abelian algebra of the given dimension (a torus).
    pub fn abelian(name: impl Into<String>, dim: usize) -> Self {
        Self::new(name, dim, Vec::new()).expect("abelian model is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure(&self) -> &[StructureConstant] {
        &self.structure
    }

    fn d_blade(&self, mask: u32) -> Form {
        let mut out = Form::zero(self.dim);
        let mut sign = 1i64;
        for bit in 0..self.dim {
            if mask >> bit & 1 == 0 {
                continue;
            }
            // d(e_I) = Σ_s (−1)^{s−1} d(e_{i_s}) ∧ e_{I∖i_s}, d(e_i) being even
            let rest = Form::e(self.dim, &Form::mask_indices(mask & !(1 << bit)));
            let term = self.d_basis[bit].wedge(&rest).expect("same dimension");
            out = out.add(&term.scaled(&Rational::from_int(sign)));
            sign = -sign;
        }
        out
    }

    fn build_d(&self, k: usize) -> Matrix {
        let b = basis(self.dim);
        let rows = b.len(k + 1);
        let cols: Vec<SparseVec> = b.masks(k).iter().map(|&m| self.d_blade(m).to_sparse(k + 1)).collect();
        Matrix::from_sparse_columns(rows, &cols)
    }

    /// d: Λ^k → Λ^{k+1}.
    pub fn d_matrix(&self, k: usize) -> &Matrix {
        &self.diffs[k]
    }

    /// Applies d to a possibly inhomogeneous form.
    pub fn d(&self, f: &Form) -> Form {
        let mut out = Form::zero(self.dim);
        for (mask, c) in f.mask_terms() {
            out = out.add(&self.d_blade(mask).scaled(c));
        }
        out
    }

    /// First degree and blade where d² ≠ 0, if any.
    pub fn jacobi_failure(&self) -> Option<ValidationFailure> {
        let b = basis(self.dim);
        for k in 0..self.dim.saturating_sub(1) {
            for &mask in b.masks(k) {
                let dd = self.d(&self.d_blade(mask));
                if !dd.is_zero() {
                    let blade = Form::mask_indices(mask);
                    return Some(ValidationFailure {
                        code: ValidationCode::DSquaredNonzero,
                        message: format!("d² ≠ 0 in degree {k} on e{blade:?}: d²(e{blade:?}) = {dd}"),
                        offending: dd.sorted_terms().into_iter().map(|(b, c)| (b.indices(), c)).collect(),
                    });
                }
            }
        }
        None
    }
}

impl Form {
    /// 1-based indices of a blade mask.
    pub fn mask_indices(mask: u32) -> Vec<usize> {
        (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
    }
}

/// On-disk model description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub structure: Vec<StructureConstant>,
    #[serde(default)]
    pub alpha: FormLiteral,
    pub calibration: CalibrationLiteral,
}

impl ModelFile {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model files serialize")
    }

    /// The pieces of a structure, unvalidated beyond schema level.
    pub fn to_input(&self) -> Result<crate::builder::StructureInput> {
        let model = LieAlgebraModel::new_unchecked(self.name.clone(), self.dim, self.structure.clone())?;
        let alpha = Form::from_literal(self.dim, &self.alpha)?;
        let form = Form::from_literal(self.dim, &self.calibration.form)?;
        Ok(crate::builder::StructureInput { model, alpha, kind: self.calibration.kind, form })
    }
}

/// The schema form of a structure.
pub fn model_file(input: &crate::builder::StructureInput) -> ModelFile {
    ModelFile {
        name: input.model.name().to_string(),
        dim: input.model.dim(),
        structure: input.model.structure().to_vec(),
        alpha: input.alpha.to_literal(),
        calibration: CalibrationLiteral { kind: input.kind, form: input.form.to_literal() },
    }
}

/// Reads and validates (d² = 0) a model from JSON text.
pub fn parse_model(json: &str) -> Result<LieAlgebraModel> {
    let file = ModelFile::from_json(json)?;
    LieAlgebraModel::new(file.name, file.dim, file.structure)
}

/// A graded cohomology ring with zero differential and a class acting by cup
/// product.
#[derive(Clone, Debug)]
pub struct RingModel {
    pub name: String,
    /// dim A^k for k = 0..=top.
    pub dims: Vec<usize>,
    pub class_degree: usize,
    /// `cup[k]`: A^k → A^{k+p}; a 0-row matrix when k + p exceeds the top.
    pub cup: Vec<Matrix>,
}

impl RingModel {
    pub fn new(name: impl Into<String>, dims: Vec<usize>, class_degree: usize, cup: Vec<Matrix>) -> Result<Self> {
        if cup.len() != dims.len() {
            return Err(Error::Inconsistent("one cup matrix per degree expected".into()));
        }
        for (k, c) in cup.iter().enumerate() {
            let target = dims.get(k + class_degree).copied().unwrap_or(0);
            if c.shape() != (target, dims[k]) {
                return Err(Error::Inconsistent(format!("cup matrix in degree {k} has shape {:?}", c.shape())));
            }
        }
        Ok(RingModel { name: name.into(), dims, class_degree, cup })
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    /// Cup with the square of the class, A^k → A^{k+2p}.
    pub fn cup_square(&self, k: usize) -> Matrix {
        let p = self.class_degree;
        match self.cup.get(k + p) {
            Some(next) if k + p <= self.top() => next.mul(&self.cup[k]),
            _ => Matrix::zeros(self.dims.get(k + 2 * p).copied().unwrap_or(0), self.dims[k]),
        }
    }

    /// Zero differentials on every degree.
    pub fn complex(&self) -> crate::homology::CochainComplex {
        let labels = (0..self.dims.len()).map(|k| format!("A^{k}")).collect();
        let diffs = (0..self.top()).map(|k| Matrix::zeros(self.dims[k + 1], self.dims[k])).collect();
        crate::homology::CochainComplex::new(labels, self.dims.clone(), diffs).expect("zero complex is valid")
    }
}

/// The rational cohomology ring of CP^n with the Kähler class.
pub fn cpn(n: usize) -> Result<RingModel> {
    if n == 0 {
        return Err(Error::BadParameter("CP^n needs n ≥ 1".into()));
    }
    let top = 2 * n;
    let dims: Vec<usize> = (0..=top).map(|k| usize::from(k % 2 == 0)).collect();
    let cup = (0..=top)
        .map(|k| {
            let target = dims.get(k + 2).copied().unwrap_or(0);
            if target == 1 && dims[k] == 1 {
                Matrix::identity(1)
            } else {
                Matrix::zeros(target, dims[k])
            }
        })
        .collect();
    RingModel::new(format!("cp{n}"), dims, 2, cup)
}

/// Exponent vectors of degree-h monomials in m variables, in lexicographic
/// order with x1 highest.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    pub vars: usize,
    pub degree: usize,
    exps: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl MonomialBasis {
    pub fn new(vars: usize, degree: usize) -> Self {
        fn rec(i: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            let vars = cur.len();
            if i + 1 == vars {
                cur[i] = left as u8;
                out.push(cur.clone());
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as u8;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        let mut exps = Vec::new();
        if vars > 0 {
            rec(0, degree, &mut vec![0u8; vars], &mut exps);
        } else if degree == 0 {
            exps.push(Vec::new());
        }
        let index = exps.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        MonomialBasis { vars, degree, exps, index }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exps(&self) -> &[Vec<u8>] {
        &self.exps
    }

    pub fn index_of(&self, e: &[u8]) -> Option<usize> {
        self.index.get(e).copied()
    }
}

/// Number of monomials of degree h in m variables, zero for negative h.
pub fn monomial_count(m: usize, h: isize) -> usize {
    if h < 0 {
        0
    } else {
        binomial(h as usize + m - 1, m - 1)
    }
}

/// A differential form with polynomial coefficients on Q^m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyForm {
    dim: usize,
    terms: BTreeMap<(u32, Vec<u8>), Rational>,
}

impl PolyForm {
    pub fn zero(dim: usize) -> Self {
        PolyForm { dim, terms: BTreeMap::new() }
    }

    /// `coeff · x^exps · e^{indices}`.
    pub fn term(dim: usize, indices: &[usize], exps: &[u8], coeff: Rational) -> Self {
        assert_eq!(exps.len(), dim, "exponent vector length");
        let mut f = PolyForm::zero(dim);
        let mask = indices.iter().fold(0u32, |m, &i| m | 1 << (i - 1));
        f.add_term(mask, exps.to_vec(), coeff);
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add_term(&mut self, mask: u32, exps: Vec<u8>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (mask, exps);
        let e = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &PolyForm) -> PolyForm {
        let mut out = self.clone();
        for ((m, e), c) in &other.terms {
            out.add_term(*m, e.clone(), c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &[u8], &Rational)> {
        self.terms.iter().map(|((m, e), c)| (*m, e.as_slice(), c))
    }

    /// Exterior derivative Σ_a ∂_a f dx^a ∧ ·.
    pub fn d(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.dim);
        for ((mask, exps), c) in &self.terms {
            for a in 0..self.dim {
                if exps[a] == 0 {
                    continue;
                }
                let Some(s) = wedge_sign(1 << a, *mask) else { continue };
                let mut e = exps.clone();
                e[a] -= 1;
                out.add_term(mask | 1 << a, e, c * &Rational::from_int(s * exps[a] as i64));
            }
        }
        out
    }

    /// `F ∧ self` for a constant-coefficient form F.
    pub fn wedge_const_left(&self, f: &Form) -> PolyForm {
        let mut out = PolyForm::zero(self.dim);
        for ((mask, exps), c) in &self.terms {
            for (fm, fc) in f.mask_terms() {
                if let Some(s) = wedge_sign(fm, *mask) {
                    out.add_term(fm | mask, exps.clone(), &(c * fc) * &Rational::from_int(s));
                }
            }
        }
        out
    }

    /// Coordinates in Λ^k ⊗ P_h (index = blade · |P_h| + monomial).
    pub fn to_sparse(&self, k: usize, h: usize) -> SparseVec {
        let b = basis(self.dim);
        let mono = MonomialBasis::new(self.dim, h);
        let mut v: SparseVec = self
            .terms
            .iter()
            .filter(|((m, e), _)| m.count_ones() as usize == k && e.iter().map(|&x| x as usize).sum::<usize>() == h)
            .map(|((m, e), c)| (b.index(*m) * mono.len() + mono.index_of(e).expect("degree checked"), c.clone()))
            .collect();
        v.sort_by_key(|e| e.0);
        v
    }

    pub fn from_sparse(dim: usize, k: usize, h: usize, v: &[(usize, Rational)]) -> PolyForm {
        let b = basis(dim);
        let mono = MonomialBasis::new(dim, h);
        let mut f = PolyForm::zero(dim);
        for (i, c) in v {
            let (blade, mo) = (i / mono.len(), i % mono.len());
            f.add_term(b.masks(k)[blade], mono.exps()[mo].clone(), c.clone());
        }
        f
    }
}

/// Polynomial-coefficient forms on Q^m with a constant calibration and α = 0.
#[derive(Clone, Debug)]
pub struct PolynomialModel {
    pub dim: usize,
    pub max_homogeneity: usize,
    pub calibration: Calibration,
}

impl PolynomialModel {
    pub fn new(calibration: Calibration, max_homogeneity: usize) -> Self {
        PolynomialModel { dim: calibration.dim(), max_homogeneity, calibration }
    }
}

/// A structure bundled from one of the shipped examples.
#[derive(Clone, Debug)]
pub enum BuiltinModel {
    Lie(crate::builder::StructureInput),
    Ring(RingModel),
    Polynomial(PolynomialModel),
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &["torus", "torus7_g2", "hopf4", "kodaira_thurston", "cpn", "local"];

/// Parameters for [`builtin`]; `n` is the half-dimension for symplectic
/// shapes, `shape` selects the local model's calibration.
#[derive(Clone, Debug, Default)]
pub struct BuiltinParams {
    pub n: Option<usize>,
    pub max_homogeneity: Option<usize>,
    pub shape: Option<CalibrationKind>,
}

fn sc(k: usize, i: usize, j: usize, c: i64) -> StructureConstant {
    StructureConstant { k, i, j, coeff: Rational::from_int(c) }
}

/// u(1) ⊕ su(2) with basis (e0, e1, e2, e3) stored as indices 1..4:
/// d e1 = e23, d e2 = e31, d e3 = e12, Lee form α = e0 and J = −2·e01 + e23.
pub fn hopf4() -> crate::builder::StructureInput {
    let model = LieAlgebraModel::new("hopf4", 4, vec![sc(2, 3, 4, 1), sc(3, 2, 4, -1), sc(4, 2, 3, 1)])
        .expect("su(2) satisfies Jacobi");
    crate::builder::StructureInput {
        model,
        alpha: Form::e(4, &[1]),
        kind: CalibrationKind::Symplectic,
        form: Form::from_int_terms(4, &[(-2, &[1, 2]), (1, &[3, 4])]),
    }
}

/// Kodaira–Thurston nilmanifold: d e4 = e12, J = e13 + e24.
pub fn kodaira_thurston() -> crate::builder::StructureInput {
    let model = LieAlgebraModel::new("kodaira_thurston", 4, vec![sc(4, 1, 2, 1)]).expect("nilpotent model is valid");
    crate::builder::StructureInput {
        model,
        alpha: Form::zero(4),
        kind: CalibrationKind::Symplectic,
        form: Form::from_int_terms(4, &[(1, &[1, 3]), (1, &[2, 4])]),
    }
}

/// The flat torus T^{2n} with the standard symplectic form.
pub fn torus(n: usize) -> Result<crate::builder::StructureInput> {
    if n == 0 {
        return Err(Error::BadParameter("torus needs n ≥ 1".into()));
    }
    Ok(crate::builder::StructureInput {
        model: LieAlgebraModel::abelian(format!("torus{}", 2 * n), 2 * n),
        alpha: Form::zero(2 * n),
        kind: CalibrationKind::Symplectic,
        form: standard_symplectic_form(n),
    })
}

/// The flat torus T^7 with the standard G2 form.
pub fn torus7_g2() -> crate::builder::StructureInput {
    crate::builder::StructureInput {
        model: LieAlgebraModel::abelian("torus7_g2", 7),
        alpha: Form::zero(7),
        kind: CalibrationKind::G2,
        form: standard_g2_form(),
    }
}

/// Looks up a shipped example by name.
pub fn builtin(name: &str, params: &BuiltinParams) -> Result<BuiltinModel> {
    let need_n = |default: Option<usize>| {
        params.n.or(default).ok_or_else(|| Error::BadParameter(format!("builtin {name} needs --n")))
    };
    Ok(match name {
        "torus" => BuiltinModel::Lie(torus(need_n(Some(2))?)?),
        "torus7_g2" => BuiltinModel::Lie(torus7_g2()),
        "hopf4" => BuiltinModel::Lie(hopf4()),
        "kodaira_thurston" => BuiltinModel::Lie(kodaira_thurston()),
        "cpn" => BuiltinModel::Ring(cpn(need_n(Some(2))?)?),
        "local" => {
            let h = params.max_homogeneity.unwrap_or(4);
            let cal = match params.shape.unwrap_or(CalibrationKind::Symplectic) {
                CalibrationKind::Symplectic => standard_symplectic(need_n(Some(2))?)?,
                CalibrationKind::G2 => standard_g2(),
                CalibrationKind::Generic => {
                    return Err(Error::BadParameter("local models take shape symplectic or g2".into()))
                }
            };
            BuiltinModel::Polynomial(PolynomialModel::new(cal, h))
        }
        other => return Err(Error::UnknownModel(other.to_string())),
    })
}
