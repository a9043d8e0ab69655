//! Calibration forms: standard symplectic and G2 structures, their
//! non-degeneracy profiles, the trace-free spaces Λ_⊥^k in both
//! realizations, the Lepage splitting, and the top-degree pairing.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{basis, binomial, contract, contract_map, wedge_map, Bivector, Form, FormLiteral};
use crate::qlinalg::{quotient_of_rows, Matrix, Subquotient, Vector};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CalibrationKind {
    Symplectic,
    G2,
    Generic,
}

impl fmt::Display for CalibrationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CalibrationKind::Symplectic => "symplectic",
            CalibrationKind::G2 => "g2",
            CalibrationKind::Generic => "generic",
        })
    }
}

/// How `F ∧ ·: Λ^k → Λ^{k+p}` behaves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapClass {
    Injective,
    Isomorphism,
    Surjective,
    Neither,
}

impl fmt::Display for MapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapClass::Injective => "injective",
            MapClass::Isomorphism => "isomorphism",
            MapClass::Surjective => "surjective",
            MapClass::Neither => "neither",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileEntry {
    pub k: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub class: MapClass,
}

impl ProfileEntry {
    pub fn kernel_dim(&self) -> usize {
        self.source_dim - self.rank
    }

    pub fn cokernel_dim(&self) -> usize {
        self.target_dim - self.rank
    }
}

/// Exact ranks of `F ∧ ·` in every degree where the target is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnProfile {
    pub form_degree: usize,
    pub entries: Vec<ProfileEntry>,
}

impl ColumnProfile {
    pub fn classes(&self) -> Vec<MapClass> {
        self.entries.iter().map(|e| e.class).collect()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.rank).collect()
    }

    /// The unique degree where `F ∧ ·` is an isomorphism, provided the
    /// profile reads injective…, isomorphism, surjective… .
    pub fn split_degree(&self) -> Option<usize> {
        let classes = self.classes();
        let iso = classes.iter().position(|c| *c == MapClass::Isomorphism)?;
        let ok = classes[..iso].iter().all(|c| *c == MapClass::Injective)
            && classes[iso + 1..].iter().all(|c| *c == MapClass::Surjective);
        ok.then_some(iso)
    }

    pub fn to_markdown(&self) -> String {
        let p = self.form_degree;
        let mut s = String::from("| k | map | dim source | dim target | rank | class |\n|---|---|---|---|---|---|\n");
        for e in &self.entries {
            s.push_str(&format!(
                "| {} | Λ^{} → Λ^{} | {} | {} | {} | {} |\n",
                e.k,
                e.k,
                e.k + p,
                e.source_dim,
                e.target_dim,
                e.rank,
                e.class
            ));
        }
        s
    }
}

/// Classifies `F ∧ ·` on each Λ^k, 0 ≤ k ≤ m − deg F.
pub fn column_profile_of(form: &Form) -> Result<ColumnProfile> {
    let p = form.homogeneous_degree(0)?;
    let m = form.dim();
    if p > m {
        return Err(Error::Degree(format!("form degree {p} exceeds dimension {m}")));
    }
    let entries = (0..=m - p)
        .map(|k| {
            let w = wedge_map(form, k)?;
            let (target_dim, source_dim) = w.shape();
            let rank = w.rank();
            let class = match (rank == source_dim, rank == target_dim) {
                (true, true) => MapClass::Isomorphism,
                (true, false) => MapClass::Injective,
                (false, true) => MapClass::Surjective,
                (false, false) => MapClass::Neither,
            };
            Ok(ProfileEntry { k, source_dim, target_dim, rank, class })
        })
        .collect::<Result<_>>()?;
    Ok(ColumnProfile { form_degree: p, entries })
}

/// A validated non-degenerate calibration form.
#[derive(Clone, Debug)]
pub struct Calibration {
    kind: CalibrationKind,
    form: Form,
    degree: usize,
    inverse: Option<Bivector>,
    profile: ColumnProfile,
    split: usize,
}

impl Calibration {
    /// Validates `form` against the profile its kind requires.
    pub fn new(kind: CalibrationKind, form: Form) -> Result<Self> {
        let m = form.dim();
        let p = form
            .degree()
            .ok_or_else(|| Error::Degenerate(format!("calibration form must be homogeneous and nonzero, got {form}")))?;
        match kind {
            CalibrationKind::Symplectic if p != 2 || m % 2 != 0 || m == 0 => {
                return Err(Error::Degenerate(format!("symplectic form must be a 2-form in even dimension (got degree {p} on Q^{m})")));
            }
            CalibrationKind::G2 if p != 3 || m != 7 => {
                return Err(Error::Degenerate(format!("G2 form must be a 3-form on Q^7 (got degree {p} on Q^{m})")));
            }
            _ => {}
        }
        let profile = column_profile_of(&form)?;
        let split = profile.split_degree().ok_or_else(|| {
            Error::Degenerate(format!("column profile {:?} of {form} is not injective/isomorphism/surjective", profile.classes()))
        })?;
        let inverse = match kind {
            CalibrationKind::Symplectic => {
                let n = m / 2;
                if form.pow(n).is_zero() {
                    return Err(Error::Degenerate(format!("J^{n} vanishes for {form}")));
                }
                if split + 1 != n {
                    return Err(Error::Degenerate(format!("isomorphism at degree {split}, expected {}", n - 1)));
                }
                Some(Bivector::inverse_of(&form)?.ok_or_else(|| Error::Degenerate(format!("{form} has no inverse")))?)
            }
            CalibrationKind::G2 => {
                use MapClass::*;
                if profile.classes() != [Injective, Injective, Isomorphism, Surjective, Surjective] {
                    return Err(Error::Degenerate(format!("G2 profile mismatch: {:?}", profile.classes())));
                }
                None
            }
            CalibrationKind::Generic => None,
        };
        Ok(Calibration { kind, form, degree: p, inverse, profile, split })
    }

    pub fn kind(&self) -> CalibrationKind {
        self.kind
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// J^{ab} for symplectic calibrations.
    pub fn inverse(&self) -> Option<&Bivector> {
        self.inverse.as_ref()
    }

    pub fn profile(&self) -> &ColumnProfile {
        &self.profile
    }

    /// Source degree of the isomorphism `F ∧ ·: Λ^s → Λ^{s+p}`.
    pub fn split_degree(&self) -> usize {
        self.split
    }

    /// Position of the second-order operator in the extended complex
    /// (n for symplectic, 4 for G2).
    pub fn middle(&self) -> usize {
        self.split + self.degree - 1
    }

    /// Number of positions of the extended complex (2n+2 or 10).
    pub fn positions(&self) -> usize {
        self.dim() + self.degree
    }

    /// Half the dimension for symplectic calibrations.
    pub fn half_dim(&self) -> Option<usize> {
        (self.kind == CalibrationKind::Symplectic).then(|| self.dim() / 2)
    }

    /// The same structure with the form multiplied by a nonzero constant.
    pub fn rescaled(&self, c: &Rational) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::BadParameter("rescaling by zero".into()));
        }
        Calibration::new(self.kind, self.form.scaled(c))
    }

    pub fn to_literal(&self) -> CalibrationLiteral {
        CalibrationLiteral { kind: self.kind, form: self.form.to_literal() }
    }

    pub fn from_literal(dim: usize, lit: &CalibrationLiteral) -> Result<Self> {
        Calibration::new(lit.kind, Form::from_literal(dim, &lit.form)?)
    }
}

/// Serialized calibration: kind tag plus form literal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CalibrationLiteral {
    pub kind: CalibrationKind,
    pub form: FormLiteral,
}

/// J = e12 + e34 + … + e(2n−1,2n) on Q^{2n}.
pub fn standard_symplectic_form(n: usize) -> Form {
    let m = 2 * n;
    (0..n).fold(Form::zero(m), |acc, i| acc.add(&Form::e(m, &[2 * i + 1, 2 * i + 2])))
}

pub fn standard_symplectic(n: usize) -> Result<Calibration> {
    if n == 0 {
        return Err(Error::BadParameter("symplectic half-dimension must be at least 1".into()));
    }
    Calibration::new(CalibrationKind::Symplectic, standard_symplectic_form(n))
}

/// φ = e123 + e145 + e167 + e246 − e257 − e347 − e356.
pub fn standard_g2_form() -> Form {
    Form::from_int_terms(
        7,
        &[
            (1, &[1, 2, 3]),
            (1, &[1, 4, 5]),
            (1, &[1, 6, 7]),
            (1, &[2, 4, 6]),
            (-1, &[2, 5, 7]),
            (-1, &[3, 4, 7]),
            (-1, &[3, 5, 6]),
        ],
    )
}

/// The standard G2 form; the constructor re-checks its column profile.
pub fn standard_g2() -> Calibration {
    Calibration::new(CalibrationKind::G2, standard_g2_form()).expect("stored G2 convention must pass its profile")
}

pub fn column_profile(c: &Calibration) -> &ColumnProfile {
    c.profile()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PerpSide {
    Kernel,
    Cokernel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Realization {
    /// ker(F∧: Λ^q → Λ^{q+p}).
    KernelIn(usize),
    /// Λ^r / F∧Λ^{r−p}.
    CokernelOf(usize),
}

/// One realization of the trace-free space Λ_⊥^k.
#[derive(Clone, Debug)]
pub struct PerpSpace {
    pub degree_label: usize,
    pub realization: Realization,
    /// Kernel vectors, or the chosen cokernel representatives.
    pub basis: Vec<Form>,
    /// Present for the cokernel realization.
    pub subquotient: Option<Subquotient>,
}

impl PerpSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Λ_⊥^k, 0 ≤ k ≤ middle, realized as a kernel in Λ^{m−k} or as a cokernel
/// in Λ^k.
pub fn perp_space(c: &Calibration, k: usize, side: PerpSide) -> Result<PerpSpace> {
    let m = c.dim();
    if k > c.middle() {
        return Err(Error::Degree(format!("Λ_⊥^{k} is only defined for k ≤ {}", c.middle())));
    }
    match side {
        PerpSide::Cokernel => {
            let sub = image_quotient(c, k)?;
            let basis = sub.rep_basis().iter().map(|v| Form::from_vector(m, k, v)).collect();
            Ok(PerpSpace { degree_label: k, realization: Realization::CokernelOf(k), basis, subquotient: Some(sub) })
        }
        PerpSide::Kernel => {
            let q = m - k;
            let basis = kernel_in(c, q)?.iter().map(|v| Form::from_vector(m, q, v)).collect();
            Ok(PerpSpace { degree_label: k, realization: Realization::KernelIn(q), basis, subquotient: None })
        }
    }
}

/// Λ^r modulo the image of `F ∧ ·` from Λ^{r−p} (everything when r < p).
pub(crate) fn image_quotient(c: &Calibration, r: usize) -> Result<Subquotient> {
    let m = c.dim();
    let p = c.degree();
    if r > m {
        return Err(Error::Degree(format!("degree {r} exceeds dimension {m}")));
    }
    if r < p {
        return Ok(quotient_of_rows(&Matrix::zeros(0, binomial(m, r))));
    }
    Ok(quotient_of_rows(&wedge_map(c.form(), r - p)?.transpose()))
}

/// Basis of ker(F ∧ ·) on Λ^q (everything when q + p > m).
pub(crate) fn kernel_in(c: &Calibration, q: usize) -> Result<Vec<Vector>> {
    let m = c.dim();
    if q > m {
        return Err(Error::Degree(format!("degree {q} exceeds dimension {m}")));
    }
    if q + c.degree() > m {
        return Ok(Matrix::identity(binomial(m, q)).to_dense());
    }
    Ok(wedge_map(c.form(), q)?.kernel_basis())
}

/// Symplectic only: the isomorphism from the cokernel realization of Λ_⊥^k
/// to the kernel realization, [w] ↦ J^{n−k} ∧ (primitive part of w), in the
/// two chosen bases.
pub fn perp_intertwiner(c: &Calibration, k: usize) -> Result<Matrix> {
    let n = c
        .half_dim()
        .ok_or_else(|| Error::BadParameter("intertwiner is only materialized for symplectic calibrations".into()))?;
    let m = c.dim();
    let coker = perp_space(c, k, PerpSide::Cokernel)?;
    let ker = perp_space(c, k, PerpSide::Kernel)?;
    let ker_matrix = Matrix::from_columns(binomial(m, m - k), &ker.basis.iter().map(|f| f.to_vector(m - k)).collect::<Vec<_>>());
    let jp = c.form().pow(n - k);
    let cols = coker
        .basis
        .iter()
        .map(|w| {
            let prim = lepage_decompose(c, w)?.into_iter().next().expect("at least one component");
            let image = jp.wedge(&prim)?.to_vector(m - k);
            ker_matrix
                .solve(&image)
                .ok_or_else(|| Error::NoSolution("primitive image outside the kernel realization".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(ker.dim(), &cols))
}

/// Basis of the trace-free k-forms (all k-forms when k < 2).
pub fn trace_free_basis(c: &Calibration, k: usize) -> Result<Vec<Vector>> {
    let jinv = c
        .inverse()
        .ok_or_else(|| Error::BadParameter("trace needs a symplectic calibration".into()))?;
    if k < 2 {
        return Ok(Matrix::identity(binomial(c.dim(), k)).to_dense());
    }
    Ok(contract_map(jinv, k)?.kernel_basis())
}

/// Splits a k-form, k ≤ n, as w = Σ_j J^j ∧ w_j with each w_j trace-free of
/// degree k − 2j. Returns (w_0, w_1, …) without trailing zero components.
pub fn lepage_decompose(c: &Calibration, w: &Form) -> Result<Vec<Form>> {
    let n = c
        .half_dim()
        .ok_or_else(|| Error::BadParameter("Lepage decomposition needs a symplectic calibration".into()))?;
    let m = c.dim();
    let k = w.homogeneous_degree(0)?;
    if k > n {
        return Err(Error::Degree(format!("Lepage decomposition is restricted to degree ≤ {n}, got {k}")));
    }
    let mut columns: Vec<Vector> = Vec::new();
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    for j in 0..=k / 2 {
        let d = k - 2 * j;
        let jp = c.form().pow(j);
        let prim = trace_free_basis(c, d)?;
        blocks.push((d, prim.len()));
        for v in prim {
            columns.push(jp.wedge(&Form::from_vector(m, d, &v))?.to_vector(k));
        }
    }
    let a = Matrix::from_columns(binomial(m, k), &columns);
    let x = a
        .solve(&w.to_vector(k))
        .ok_or_else(|| Error::NoSolution(format!("Lepage system for {w}")))?;
    let mut out = Vec::with_capacity(blocks.len());
    let mut offset = 0;
    for (d, len) in blocks {
        let prim = trace_free_basis(c, d)?;
        let mut comp = Form::zero(m);
        for (i, v) in prim.iter().enumerate() {
            comp = comp.add(&Form::from_vector(m, d, v).scaled(&x[offset + i]));
        }
        offset += len;
        out.push(comp);
    }
    while out.len() > 1 && out.last().is_some_and(Form::is_zero) {
        out.pop();
    }
    Ok(out)
}

/// Coefficient of the top blade in (J^{n−k} ∧ a) ∧ b for trace-free a, b of
/// equal degree k ≤ n.
pub fn pairing(c: &Calibration, a: &Form, b: &Form) -> Result<Rational> {
    let n = c
        .half_dim()
        .ok_or_else(|| Error::BadParameter("pairing needs a symplectic calibration".into()))?;
    let m = c.dim();
    let k = a.homogeneous_degree(b.homogeneous_degree(0)?)?;
    let kb = b.homogeneous_degree(k)?;
    if k != kb || k > n {
        return Err(Error::Degree(format!("pairing needs equal degrees ≤ {n}, got {k} and {kb}")));
    }
    let jinv = c.inverse().expect("symplectic calibrations carry an inverse");
    if k >= 2 && (!contract(jinv, a)?.is_zero() || !contract(jinv, b)?.is_zero()) {
        return Err(Error::BadParameter("pairing arguments must be trace-free".into()));
    }
    let top = c.form().pow(n - k).wedge(a)?.wedge(b)?;
    Ok(top.coeff_mask(basis(m).masks(m)[0]))
}

/// Gram matrix of [`pairing`] on a basis of trace-free k-forms.
pub fn pairing_gram(c: &Calibration, k: usize) -> Result<Matrix> {
    let m = c.dim();
    let forms: Vec<Form> = trace_free_basis(c, k)?.iter().map(|v| Form::from_vector(m, k, v)).collect();
    let rows = forms
        .iter()
        .map(|a| forms.iter().map(|b| pairing(c, a, b)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Ok(Matrix::zeros(0, 0));
    }
    Ok(Matrix::from_dense(&rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use MapClass::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn symplectic_powers() {
        let c1 = standard_symplectic(1).unwrap();
        assert_eq!(c1.form(), &Form::e(2, &[1, 2]));
        assert_eq!(wedge_map(c1.form(), 0).unwrap().rank(), 1);
        let j2 = standard_symplectic_form(2).pow(2);
        assert_eq!(j2, Form::e(4, &[1, 2, 3, 4]).scaled(&q(2)));
        let j3 = standard_symplectic_form(3).pow(3);
        assert_eq!(j3, Form::e(6, &[1, 2, 3, 4, 5, 6]).scaled(&q(6)));
    }

    #[test]
    fn symplectic_profiles() {
        for n in 2..=4 {
            let c = standard_symplectic(n).unwrap();
            for e in &c.profile().entries {
                let expected = match e.k.cmp(&(n - 1)) {
                    std::cmp::Ordering::Less => Injective,
                    std::cmp::Ordering::Equal => Isomorphism,
                    std::cmp::Ordering::Greater => Surjective,
                };
                assert_eq!(e.class, expected, "n={n} k={}", e.k);
            }
            assert_eq!(c.middle(), n);
            assert_eq!(c.positions(), 2 * n + 2);
        }
        let c3 = standard_symplectic(3).unwrap();
        let e = &c3.profile().entries[2];
        assert_eq!((e.source_dim, e.target_dim, e.rank, e.class), (15, 15, 15, Isomorphism));
    }

    #[test]
    fn degenerate_rejected() {
        let prof = column_profile_of(&Form::e(4, &[1, 2])).unwrap();
        assert_eq!(prof.entries[1].class, Neither);
        assert!(matches!(Calibration::new(CalibrationKind::Symplectic, Form::e(4, &[1, 2])), Err(Error::Degenerate(_))));
        assert!(Calibration::new(CalibrationKind::G2, Form::e(7, &[1, 2, 3])).is_err());
        assert!(Calibration::new(CalibrationKind::Symplectic, standard_g2_form()).is_err());
    }

    #[test]
    fn g2_profile() {
        let c = standard_g2();
        assert_eq!(c.profile().classes(), vec![Injective, Injective, Isomorphism, Surjective, Surjective]);
        assert_eq!(c.profile().ranks(), vec![1, 7, 21, 7, 1]);
        assert_eq!(c.profile().entries[3].kernel_dim(), 28);
        assert_eq!(c.profile().entries[4].kernel_dim(), 34);
        assert_eq!(c.middle(), 4);
        assert_eq!(c.positions(), 10);
        // 7 + 14 and 27 + 7 + 1
        assert_eq!(binomial(7, 2), 7 + 14);
        assert_eq!(binomial(7, 3), 27 + 7 + 1);
        assert_eq!(c.profile().entries[4].kernel_dim(), 27 + 7);
        assert_eq!(c.profile().entries[3].kernel_dim(), 27 + 1);
    }

    #[test]
    fn perp_dimensions() {
        let c = standard_symplectic(2).unwrap();
        assert_eq!(perp_space(&c, 2, PerpSide::Cokernel).unwrap().dim(), 5);
        for n in 2..=4 {
            let c = standard_symplectic(n).unwrap();
            for k in 0..=n {
                let expected = binomial(2 * n, k) - if k >= 2 { binomial(2 * n, k - 2) } else { 0 };
                let co = perp_space(&c, k, PerpSide::Cokernel).unwrap();
                let ke = perp_space(&c, k, PerpSide::Kernel).unwrap();
                assert_eq!(co.dim(), expected);
                assert_eq!(ke.dim(), expected);
                for f in &ke.basis {
                    assert!(c.form().wedge(f).unwrap().is_zero());
                }
            }
            assert!(perp_space(&c, n + 1, PerpSide::Kernel).is_err());
        }
        let g = standard_g2();
        assert_eq!(perp_space(&g, 3, PerpSide::Cokernel).unwrap().dim(), 34);
        assert_eq!(perp_space(&g, 3, PerpSide::Kernel).unwrap().realization, Realization::KernelIn(4));
        assert_eq!(perp_space(&g, 3, PerpSide::Kernel).unwrap().dim(), 34);
        assert_eq!(perp_space(&g, 4, PerpSide::Kernel).unwrap().dim(), 28);
        assert_eq!(perp_space(&g, 4, PerpSide::Cokernel).unwrap().dim(), 28);
    }

    #[test]
    fn intertwiner_is_invertible() {
        for n in 2..=3 {
            let c = standard_symplectic(n).unwrap();
            for k in 0..=n {
                let t = perp_intertwiner(&c, k).unwrap();
                assert_eq!(t.rows(), t.cols());
                assert_eq!(t.rank(), t.rows(), "n={n} k={k}");
            }
        }
        assert!(perp_intertwiner(&standard_g2(), 3).is_err());
    }

    #[test]
    fn lepage_examples() {
        let c = standard_symplectic(2).unwrap();
        let prim = Form::e(4, &[1, 3]);
        assert_eq!(lepage_decompose(&c, &prim).unwrap(), vec![prim.clone()]);
        let parts = lepage_decompose(&c, c.form()).unwrap();
        assert!(parts[0].is_zero());
        assert_eq!(parts[1], Form::scalar(4, q(1)));
        assert!(lepage_decompose(&c, &Form::e(4, &[1, 2, 3])).is_err());
    }

    #[test]
    fn pairing_examples() {
        let c = standard_symplectic(2).unwrap();
        let one = Form::scalar(4, q(1));
        assert_eq!(pairing(&c, &one, &one).unwrap(), q(2));
        assert_eq!(pairing(&c, &Form::e(4, &[1, 3]), &Form::e(4, &[1, 4])).unwrap(), q(0));
        assert_eq!(pairing_gram(&c, 1).unwrap().rank(), 4);
        assert!(pairing(&c, c.form(), c.form()).is_err());
    }

    #[test]
    fn literal_roundtrip() {
        let g = standard_g2();
        let lit = g.to_literal();
        let json = serde_json::to_string(&lit).unwrap();
        let back: CalibrationLiteral = serde_json::from_str(&json).unwrap();
        let c = Calibration::from_literal(7, &back).unwrap();
        assert_eq!(c.form(), g.form());
        assert_eq!(c.kind(), CalibrationKind::G2);
    }
}
