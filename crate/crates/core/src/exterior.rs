//! The exterior algebra Λ•Q^m over the rationals.
//!
//! A basis blade e^{i1}∧…∧e^{ik} (i1 < … < ik, indices 1-based) is stored as
//! a bitmask with bit `i-1` set for each index. Same-degree blades are
//! ordered lexicographically by their index lists; that order fixes the
//! coordinates of every wedge-map matrix.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qlinalg::{Matrix, SparseVec, Vector};
use crate::rational::Rational;

/// Largest ambient dimension supported by the bitmask representation.
pub const MAX_DIM: usize = 16;

/// Binomial coefficient C(n, k), zero when k > n.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// A basis k-vector of Λ^k Q^m.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Blade {
    dim: usize,
    mask: u32,
}

impl Blade {
    /// From 1-based strictly increasing indices.
    pub fn new(dim: usize, indices: &[usize]) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::Dimension(format!("ambient dimension {dim} exceeds {MAX_DIM}")));
        }
        let mut mask = 0u32;
        let mut prev = 0usize;
        for &i in indices {
            if i == 0 || i > dim {
                return Err(Error::Dimension(format!("blade index {i} outside 1..={dim}")));
            }
            if i <= prev {
                return Err(Error::Dimension(format!("blade indices {indices:?} not strictly increasing")));
            }
            prev = i;
            mask |= 1 << (i - 1);
        }
        Ok(Blade { dim, mask })
    }

    pub fn from_mask(dim: usize, mask: u32) -> Self {
        debug_assert!(dim <= MAX_DIM && (dim == 32 || mask >> dim == 0));
        Blade { dim, mask }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn degree(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// 1-based indices, increasing.
    pub fn indices(&self) -> Vec<usize> {
        (0..self.dim).filter(|b| self.mask >> b & 1 == 1).map(|b| b + 1).collect()
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.dim, self.degree(), self.indices()).cmp(&(other.dim, other.degree(), other.indices()))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mask == 0 {
            return write!(f, "1");
        }
        let idx: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "e{}", idx.join(if self.dim > 9 { "," } else { "" }))
    }
}

/// Sign of `e_a ∧ e_b` for blade masks, or `None` when they overlap.
pub fn wedge_sign(a: u32, b: u32) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        // bits of `a` strictly above position j must move past e_j
        swaps += (a >> j >> 1).count_ones();
    }
    Some(if swaps % 2 == 0 { 1 } else { -1 })
}

/// Interior product of the basis vector with 0-based bit `a` into a blade:
/// returns the sign and remaining mask, or `None` if the index is absent.
pub fn interior_sign(a: u32, mask: u32) -> Option<(i64, u32)> {
    if mask >> a & 1 == 0 {
        return None;
    }
    let below = (mask & ((1u32 << a) - 1)).count_ones();
    Some((if below % 2 == 0 { 1 } else { -1 }, mask & !(1 << a)))
}

/// Lexicographically ordered basis of Λ^k Q^m for every k, with index lookup.
#[derive(Debug)]
pub struct ExteriorBasis {
    pub dim: usize,
    masks: Vec<Vec<u32>>,
    index_of: Vec<usize>,
}

impl ExteriorBasis {
    fn build(dim: usize) -> Self {
        let mut masks = vec![Vec::new(); dim + 1];
        fn rec(start: usize, dim: usize, cur: &mut Vec<usize>, masks: &mut Vec<Vec<u32>>) {
            masks[cur.len()].push(cur.iter().fold(0u32, |m, &i| m | 1 << i));
            for i in start..dim {
                cur.push(i);
                rec(i + 1, dim, cur, masks);
                cur.pop();
            }
        }
        rec(0, dim, &mut Vec::new(), &mut masks);
        // recursion emits each degree in lexicographic order already
        let mut index_of = vec![0usize; 1 << dim];
        for level in &masks {
            for (i, &m) in level.iter().enumerate() {
                index_of[m as usize] = i;
            }
        }
        ExteriorBasis { dim, masks, index_of }
    }

    pub fn masks(&self, k: usize) -> &[u32] {
        &self.masks[k]
    }

    pub fn len(&self, k: usize) -> usize {
        if k > self.dim {
            0
        } else {
            self.masks[k].len()
        }
    }

    pub fn is_empty(&self, k: usize) -> bool {
        self.len(k) == 0
    }

    pub fn index(&self, mask: u32) -> usize {
        self.index_of[mask as usize]
    }
}

/// Shared basis tables for ambient dimension `m`.
pub fn basis(m: usize) -> Arc<ExteriorBasis> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<ExteriorBasis>>>> = OnceLock::new();
    assert!(m <= MAX_DIM, "ambient dimension {m} exceeds {MAX_DIM}");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("basis cache poisoned");
    guard.entry(m).or_insert_with(|| Arc::new(ExteriorBasis::build(m))).clone()
}

/// All C(m,k) blades of degree k in lexicographic order.
pub fn enumerate_basis(m: usize, k: usize) -> Result<Vec<Blade>> {
    if k > m {
        return Err(Error::Dimension(format!("degree {k} exceeds ambient dimension {m}")));
    }
    if m > MAX_DIM {
        return Err(Error::Dimension(format!("ambient dimension {m} exceeds {MAX_DIM}")));
    }
    Ok(basis(m).masks(k).iter().map(|&mask| Blade { dim: m, mask }).collect())
}

/// A (possibly inhomogeneous) element of Λ•Q^m.
#[derive(Clone, PartialEq, Eq)]
pub struct Form {
    dim: usize,
    terms: BTreeMap<u32, Rational>,
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form({}: {})", self.dim, self)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.sorted_terms().iter().map(|(b, c)| format!("{c}·{b}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Form {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "ambient dimension {dim} exceeds {MAX_DIM}");
        Form { dim, terms: BTreeMap::new() }
    }

    pub fn scalar(dim: usize, c: Rational) -> Self {
        let mut f = Form::zero(dim);
        f.add_term(0, c);
        f
    }

    /// `coeff · e^{indices}` with 1-based indices.
    pub fn monomial(dim: usize, indices: &[usize], coeff: Rational) -> Result<Self> {
        let b = Blade::new(dim, indices)?;
        let mut f = Form::zero(dim);
        f.add_term(b.mask, coeff);
        Ok(f)
    }

    /// Unit blade; panics on bad indices (intended for literals in code).
    pub fn e(dim: usize, indices: &[usize]) -> Self {
        Form::monomial(dim, indices, Rational::one()).expect("valid blade literal")
    }

    /// Sum of `c · e^{idx}` over the given integer-coefficient terms.
    pub fn from_int_terms(dim: usize, terms: &[(i64, &[usize])]) -> Self {
        terms.iter().fold(Form::zero(dim), |acc, (c, idx)| {
            acc.add(&Form::e(dim, idx).scaled(&Rational::from_int(*c)))
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add_term(&mut self, mask: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(Rational::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn coeff(&self, b: &Blade) -> Rational {
        self.terms.get(&b.mask).cloned().unwrap_or_default()
    }

    pub fn coeff_mask(&self, mask: u32) -> Rational {
        self.terms.get(&mask).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Raw `(mask, coefficient)` pairs.
    pub fn mask_terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    /// Terms in canonical blade order.
    pub fn sorted_terms(&self) -> Vec<(Blade, Rational)> {
        let mut v: Vec<(Blade, Rational)> =
            self.terms.iter().map(|(m, c)| (Blade::from_mask(self.dim, *m), c.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    /// The degree when homogeneous and nonzero; zero counts as homogeneous of
    /// any degree and reports `None`.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|m| m.count_ones() as usize);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Homogeneous degree, erroring on inhomogeneous input; zero reports `default`.
    pub fn homogeneous_degree(&self, default: usize) -> Result<usize> {
        if self.is_zero() {
            return Ok(default);
        }
        self.degree().ok_or_else(|| Error::Inhomogeneous(self.to_string()))
    }

    /// Component of degree k.
    pub fn part(&self, k: usize) -> Form {
        Form {
            dim: self.dim,
            terms: self.terms.iter().filter(|(m, _)| m.count_ones() as usize == k).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Form) -> Form {
        assert_eq!(self.dim, other.dim, "ambient dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.scaled(&Rational::from_int(-1)))
    }

    pub fn scaled(&self, c: &Rational) -> Form {
        if c.is_zero() {
            return Form::zero(self.dim);
        }
        Form { dim: self.dim, terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn neg(&self) -> Form {
        self.scaled(&Rational::from_int(-1))
    }

    /// `self ∧ other`.
    pub fn wedge(&self, other: &Form) -> Result<Form> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!("wedge of forms on Q^{} and Q^{}", self.dim, other.dim)));
        }
        let mut out = Form::zero(self.dim);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some(s) = wedge_sign(*a, *b) {
                    out.add_term(a | b, &(x * y) * &Rational::from_int(s));
                }
            }
        }
        Ok(out)
    }

    /// `self ∧ … ∧ self` (k factors); `pow(0)` is 1.
    pub fn pow(&self, k: usize) -> Form {
        let mut acc = Form::scalar(self.dim, Rational::one());
        for _ in 0..k {
            acc = acc.wedge(self).expect("same dimension");
        }
        acc
    }

    /// Coordinates of the degree-k part in the lexicographic basis.
    pub fn to_vector(&self, k: usize) -> Vector {
        let b = basis(self.dim);
        let mut v = vec![Rational::zero(); b.len(k)];
        for (m, c) in &self.terms {
            if m.count_ones() as usize == k {
                v[b.index(*m)] = c.clone();
            }
        }
        v
    }

    pub fn to_sparse(&self, k: usize) -> SparseVec {
        let b = basis(self.dim);
        let mut v: SparseVec = self
            .terms
            .iter()
            .filter(|(m, _)| m.count_ones() as usize == k)
            .map(|(m, c)| (b.index(*m), c.clone()))
            .collect();
        v.sort_by_key(|e| e.0);
        v
    }

    pub fn from_vector(dim: usize, k: usize, v: &[Rational]) -> Form {
        let b = basis(dim);
        assert_eq!(v.len(), b.len(k), "coordinate vector has wrong length");
        let mut f = Form::zero(dim);
        for (i, c) in v.iter().enumerate() {
            f.add_term(b.masks(k)[i], c.clone());
        }
        f
    }

    pub fn from_sparse(dim: usize, k: usize, v: &[(usize, Rational)]) -> Form {
        let b = basis(dim);
        let mut f = Form::zero(dim);
        for (i, c) in v {
            f.add_term(b.masks(k)[*i], c.clone());
        }
        f
    }

    /// Interior product with the 1-based basis vector `e_a`.
    pub fn interior(&self, a: usize) -> Form {
        assert!(a >= 1 && a <= self.dim, "interior index out of range");
        let mut out = Form::zero(self.dim);
        for (m, c) in &self.terms {
            if let Some((s, rest)) = interior_sign((a - 1) as u32, *m) {
                out.add_term(rest, c * &Rational::from_int(s));
            }
        }
        out
    }

    pub fn to_literal(&self) -> FormLiteral {
        FormLiteral(
            self.sorted_terms()
                .into_iter()
                .map(|(b, coeff)| TermLiteral { blade: b.indices(), coeff })
                .collect(),
        )
    }

    pub fn from_literal(dim: usize, lit: &FormLiteral) -> Result<Form> {
        let mut f = Form::zero(dim);
        for t in &lit.0 {
            let b = Blade::new(dim, &t.blade)?;
            f.add_term(b.mask, t.coeff.clone());
        }
        Ok(f)
    }
}

/// One `{"blade": [..], "coeff": "p/q"}` entry of a form literal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermLiteral {
    pub blade: Vec<usize>,
    pub coeff: Rational,
}

/// Serialized form: a list of blade/coefficient terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FormLiteral(pub Vec<TermLiteral>);

/// An antisymmetric contravariant 2-tensor J^{ab}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bivector {
    dim: usize,
    entries: Vec<Vec<Rational>>,
}

impl Bivector {
    pub fn zero(dim: usize) -> Self {
        Bivector { dim, entries: vec![vec![Rational::zero(); dim]; dim] }
    }

    /// From a full matrix; rejects non-antisymmetric input.
    pub fn from_matrix(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = entries.len();
        for a in 0..dim {
            if entries[a].len() != dim {
                return Err(Error::Dimension("bivector matrix is not square".into()));
            }
            for b in 0..dim {
                if entries[a][b] != -&entries[b][a] {
                    return Err(Error::Dimension(format!("bivector not antisymmetric at ({}, {})", a + 1, b + 1)));
                }
            }
        }
        Ok(Bivector { dim, entries })
    }

    /// The inverse J^{ab} of a non-degenerate 2-form, normalized by
    /// J_{ac} J^{bc} = δ_a^b. `None` when the form is degenerate.
    pub fn inverse_of(j: &Form) -> Result<Option<Bivector>> {
        if j.homogeneous_degree(2)? != 2 {
            return Err(Error::Inhomogeneous(format!("expected a 2-form, got {j}")));
        }
        let m = j.dim();
        let mut lower = vec![vec![Rational::zero(); m]; m];
        for (mask, c) in j.mask_terms() {
            let a = mask.trailing_zeros() as usize;
            let b = (31 - mask.leading_zeros()) as usize;
            lower[a][b] = c.clone();
            lower[b][a] = -c;
        }
        // J_{ac} J^{bc} = δ  ⇔  M · Nᵀ = I  ⇔  N = (M⁻¹)ᵀ
        let Some(inv) = Matrix::from_dense(&lower).inverse() else {
            return Ok(None);
        };
        Ok(Some(Bivector { dim: m, entries: inv.transpose().to_dense() }))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// J^{ab} with 1-based indices.
    pub fn get(&self, a: usize, b: usize) -> &Rational {
        &self.entries[a - 1][b - 1]
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }
}

/// `F ∧ ·` as a matrix Λ^k → Λ^{k+p} in lexicographic bases, shape
/// C(m,k+p) × C(m,k).
pub fn wedge_map(f: &Form, k: usize) -> Result<Matrix> {
    wedge_map_side(f, k, false)
}

/// `· ∧ F` as a matrix Λ^k → Λ^{k+p}.
pub fn right_wedge_map(f: &Form, k: usize) -> Result<Matrix> {
    wedge_map_side(f, k, true)
}

fn wedge_map_side(f: &Form, k: usize, right: bool) -> Result<Matrix> {
    let p = f.homogeneous_degree(0)?;
    let m = f.dim();
    if k + p > m {
        return Err(Error::Dimension(format!("wedge map Λ^{k} → Λ^{} exceeds ambient dimension {m}", k + p)));
    }
    let b = basis(m);
    let columns: Vec<SparseVec> = b
        .masks(k)
        .iter()
        .map(|&src| {
            let mut col: SparseVec = f
                .mask_terms()
                .filter_map(|(fm, c)| {
                    let s = if right { wedge_sign(src, fm) } else { wedge_sign(fm, src) }?;
                    Some((b.index(fm | src), c * &Rational::from_int(s)))
                })
                .collect();
            col.sort_by_key(|e| e.0);
            col
        })
        .collect();
    Ok(Matrix::from_sparse_columns(b.len(k + p), &columns))
}

/// Trace of a k-form against a bivector, Σ_{a<b} J^{ab} ι_{e_b} ι_{e_a} ω.
pub fn contract(jinv: &Bivector, w: &Form) -> Result<Form> {
    if jinv.dim() != w.dim() {
        return Err(Error::Dimension("contraction across different ambient dimensions".into()));
    }
    let k = w.homogeneous_degree(2)?;
    if k < 2 {
        return Err(Error::Degree(format!("contraction needs degree ≥ 2, got {k}")));
    }
    let m = w.dim();
    let mut out = Form::zero(m);
    for a in 1..=m {
        for b in (a + 1)..=m {
            let j = jinv.get(a, b);
            if j.is_zero() {
                continue;
            }
            out = out.add(&w.interior(a).interior(b).scaled(j));
        }
    }
    Ok(out)
}

/// Matrix of `contract(jinv, ·)`: Λ^k → Λ^{k-2}.
pub fn contract_map(jinv: &Bivector, k: usize) -> Result<Matrix> {
    let m = jinv.dim();
    if k < 2 || k > m {
        return Err(Error::Degree(format!("contraction map from degree {k} undefined")));
    }
    let cols: Vec<Vector> = enumerate_basis(m, k)?
        .iter()
        .map(|b| {
            let f = Form::monomial(m, &b.indices(), Rational::one())?;
            Ok(contract(jinv, &f)?.to_vector(k - 2))
        })
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(binomial(m, k - 2), &cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn wedge_examples() {
        let e1 = Form::e(3, &[1]);
        let e2 = Form::e(3, &[2]);
        let e3 = Form::e(3, &[3]);
        assert_eq!(e1.wedge(&e2).unwrap(), Form::e(3, &[1, 2]));
        assert_eq!(e2.wedge(&e1).unwrap(), Form::e(3, &[1, 2]).neg());
        assert!(e1.add(&e3).wedge(&Form::e(3, &[1, 3])).unwrap().is_zero());
        assert!(e1.wedge(&Form::e(4, &[2])).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let b = enumerate_basis(4, 2).unwrap();
        let idx: Vec<Vec<usize>> = b.iter().map(|b| b.indices()).collect();
        assert_eq!(idx, vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]);
        assert_eq!(enumerate_basis(5, 0).unwrap().len(), 1);
        assert_eq!(enumerate_basis(7, 3).unwrap().len(), 35);
        assert!(enumerate_basis(3, 4).is_err());
    }

    #[test]
    fn sign_helpers() {
        // e2 ∧ e13 = -e123
        assert_eq!(wedge_sign(0b010, 0b101), Some(-1));
        assert_eq!(wedge_sign(0b001, 0b110), Some(1));
        assert_eq!(wedge_sign(0b011, 0b010), None);
        // ι_{e2} e123 = -e13
        assert_eq!(interior_sign(1, 0b111), Some((-1, 0b101)));
    }

    #[test]
    fn wedge_map_shapes() {
        let j = Form::from_int_terms(4, &[(1, &[1, 2]), (1, &[3, 4])]);
        let w0 = wedge_map(&j, 0).unwrap();
        assert_eq!(w0.shape(), (6, 1));
        assert_eq!(w0.rank(), 1);
        assert!(wedge_map(&j.add(&Form::e(4, &[1])), 0).is_err());
        assert!(wedge_map(&j, 3).is_err());
    }

    #[test]
    fn contract_examples() {
        for n in [2usize, 3] {
            let m = 2 * n;
            let j = (0..n).fold(Form::zero(m), |acc, i| acc.add(&Form::e(m, &[2 * i + 1, 2 * i + 2])));
            let jinv = Bivector::inverse_of(&j).unwrap().unwrap();
            assert_eq!(contract(&jinv, &j).unwrap(), Form::scalar(m, q(n as i64)));
            assert!(contract(&jinv, &Form::e(m, &[1, 3])).unwrap().is_zero());
            assert!(contract(&Bivector::zero(m), &j).unwrap().is_zero());
            assert!(contract(&jinv, &Form::e(m, &[1])).is_err());
        }
    }

    #[test]
    fn inverse_convention() {
        let j = Form::from_int_terms(4, &[(2, &[1, 2]), (-3, &[3, 4]), (1, &[1, 3])]);
        let inv = Bivector::inverse_of(&j).unwrap().unwrap();
        let mut lower = vec![vec![q(0); 4]; 4];
        for (b, c) in j.sorted_terms() {
            let i = b.indices();
            lower[i[0] - 1][i[1] - 1] = c.clone();
            lower[i[1] - 1][i[0] - 1] = -c;
        }
        for a in 0..4 {
            for b in 0..4 {
                let s: Rational = (0..4).map(|c| &lower[a][c] * inv.get(b + 1, c + 1)).sum();
                assert_eq!(s, if a == b { q(1) } else { q(0) });
            }
        }
        assert!(Bivector::inverse_of(&Form::e(4, &[1, 2])).unwrap().is_none());
    }

    fn homogeneous(m: usize, k: usize) -> impl Strategy<Value = Form> {
        proptest::collection::vec(-3i64..4, binomial(m, k))
            .prop_map(move |v| Form::from_vector(m, k, &v.into_iter().map(q).collect::<Vec<_>>()))
    }

    proptest! {
        #[test]
        fn graded_commutativity((k, l, a, b) in (0usize..4, 0usize..4).prop_flat_map(|(k, l)| {
            (Just(k), Just(l), homogeneous(6, k), homogeneous(6, l))
        })) {
            let sign = if (k * l) % 2 == 0 { q(1) } else { q(-1) };
            prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().scaled(&sign));
        }

        #[test]
        fn wedge_matches_wedge_map(a in homogeneous(5, 2), b in homogeneous(5, 2)) {
            let via_map = Form::from_vector(5, 4, &wedge_map(&a, 2).unwrap().mul_vec(&b.to_vector(2)));
            prop_assert_eq!(via_map, a.wedge(&b).unwrap());
        }

        #[test]
        fn associativity(a in homogeneous(5, 1), b in homogeneous(5, 2), c in homogeneous(5, 1)) {
            let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
            let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn lefschetz_composition() {
        for n in 2..=4usize {
            let m = 2 * n;
            let j = (0..n).fold(Form::zero(m), |acc, i| acc.add(&Form::e(m, &[2 * i + 1, 2 * i + 2])));
            for k in 0..=(m - 4) {
                let l1 = wedge_map(&j, k).unwrap();
                let l2 = wedge_map(&j, k + 2).unwrap();
                assert_eq!(l2.mul(&l1), wedge_map(&j.pow(2), k).unwrap());
            }
        }
    }

    #[test]
    fn two_primitivity_criteria_agree() {
        for n in 2..=4usize {
            let m = 2 * n;
            let j = (0..n).fold(Form::zero(m), |acc, i| acc.add(&Form::e(m, &[2 * i + 1, 2 * i + 2])));
            let jinv = Bivector::inverse_of(&j).unwrap().unwrap();
            for k in 2..=n {
                let by_trace = contract_map(&jinv, k).unwrap();
                let by_power = wedge_map(&j.pow(n - k + 1), k).unwrap();
                // equal kernels ⇔ equal row spaces ⇔ stacking adds no rank
                let r1 = by_trace.rank();
                let r2 = by_power.rank();
                let stacked = by_trace.transpose().hstack(&by_power.transpose()).rank();
                assert_eq!(r1, r2, "n={n} k={k}");
                assert_eq!(stacked, r1, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn lefschetz_kernel_and_cokernel_below_middle() {
        for n in 2..=4usize {
            let m = 2 * n;
            let j = (0..n).fold(Form::zero(m), |acc, i| acc.add(&Form::e(m, &[2 * i + 1, 2 * i + 2])));
            for k in 0..n {
                let l = wedge_map(&j, k).unwrap();
                assert_eq!(l.kernel_basis().len(), 0);
                assert_eq!(binomial(m, k + 2) - l.rank(), binomial(m, k + 2) - binomial(m, k));
            }
        }
    }
}
