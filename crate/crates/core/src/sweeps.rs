//! Randomized symbol checks and polynomial strand sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::builder::{de_rham_strand, strand_complex_with, symbol_complex_with, Layout};
use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::homology::cohomology;
use crate::par::{map_vec, try_map_vec, Execution};
use crate::rational::Rational;
use crate::structures::{standard_g2, standard_symplectic, Calibration};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_229;

/// Calibration shapes with a standard form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "shape")]
pub enum Shape {
    Symplectic { n: usize },
    G2,
}

impl Shape {
    pub fn parse(name: &str, n: Option<usize>) -> Result<Shape> {
        match name {
            "symplectic" => Ok(Shape::Symplectic { n: n.ok_or_else(|| Error::BadParameter("symplectic shape needs --n".into()))? }),
            "g2" => Ok(Shape::G2),
            other => Err(Error::BadParameter(format!("unknown shape {other}; expected symplectic or g2"))),
        }
    }

    pub fn calibration(&self) -> Result<Calibration> {
        match *self {
            Shape::Symplectic { n } => standard_symplectic(n),
            Shape::G2 => Ok(standard_g2()),
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            Shape::Symplectic { n } => 2 * n,
            Shape::G2 => 7,
        }
    }
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Shape::Symplectic { n } => write!(f, "symplectic n={n}"),
            Shape::G2 => write!(f, "g2"),
        }
    }
}

/// Integer components uniform in [−9, 9], redrawn when all vanish.
pub fn random_covector<R: Rng>(rng: &mut R, m: usize) -> Vec<i64> {
    loop {
        let xi: Vec<i64> = (0..m).map(|_| rng.gen_range(-9..=9)).collect();
        if xi.iter().any(|&x| x != 0) {
            return xi;
        }
    }
}

/// The first `samples` covectors drawn from `seed`.
pub fn covectors(m: usize, samples: usize, seed: u64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| random_covector(&mut rng, m)).collect()
}

fn covector_form(xi: &[i64]) -> Form {
    let m = xi.len();
    let mut f = Form::zero(m);
    for (a, &x) in xi.iter().enumerate() {
        f.add_term(1 << a, Rational::from_int(x));
    }
    f
}

/// A covector at which a symbol complex fails its exactness claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolFailure {
    pub xi: Vec<i64>,
    /// Positions of the full complex with nonzero cohomology.
    pub full: Vec<usize>,
    /// Positions of the kernel half, other than its first, with nonzero
    /// cohomology.
    pub half: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolSweep {
    pub shape: Shape,
    pub seed: u64,
    pub samples: usize,
    pub dims: Vec<usize>,
    /// Samples exact at every position of the full complex.
    pub exact_full: usize,
    /// Samples whose kernel half is exact past its first position.
    pub exact_half: usize,
    /// Distinct cohomology dimensions met at the first kernel position.
    pub half_defect_dims: Vec<usize>,
    pub failures: Vec<SymbolFailure>,
}

impl SymbolSweep {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Builds the symbol complex at each random ξ and checks exactness.
pub fn symbol_sweep(shape: Shape, samples: usize, seed: u64, exec: Execution) -> Result<SymbolSweep> {
    if samples == 0 {
        return Err(Error::BadParameter("sample count must be at least 1".into()));
    }
    let layout = Layout::new(&shape.calibration()?)?;
    let xis = covectors(shape.dim(), samples, seed);
    let results = try_map_vec(exec, xis, |xi| -> Result<_> {
        let ec = symbol_complex_with(&layout, &covector_form(&xi))?;
        let full = cohomology(&ec.complex).dims;
        let half = cohomology(&ec.second_half()).dims;
        Ok((xi, ec.dims().to_vec(), full, half))
    })?;
    let dims = results[0].1.clone();
    let mut sweep = SymbolSweep {
        shape,
        seed,
        samples,
        dims,
        exact_full: 0,
        exact_half: 0,
        half_defect_dims: Vec::new(),
        failures: Vec::new(),
    };
    for (xi, _, full, half) in results {
        let bad_full: Vec<usize> = (0..full.len()).filter(|&r| full[r] != 0).collect();
        let bad_half: Vec<usize> = (1..half.len()).filter(|&r| half[r] != 0).collect();
        sweep.exact_full += usize::from(bad_full.is_empty());
        sweep.exact_half += usize::from(bad_half.is_empty());
        if !sweep.half_defect_dims.contains(&half[0]) {
            sweep.half_defect_dims.push(half[0]);
        }
        if !bad_full.is_empty() || !bad_half.is_empty() {
            sweep.failures.push(SymbolFailure { xi, full: bad_full, half: bad_half });
        }
    }
    Ok(sweep)
}

/// Nonzero cohomology found in one strand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrandClass {
    pub h: usize,
    pub position: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalExactness {
    pub shape: Shape,
    pub max_homogeneity: usize,
    /// Largest space met in any strand.
    pub largest_space: usize,
    pub classes: Vec<StrandClass>,
    /// Strands of the de Rham rows alone that are not exact past position 0.
    pub de_rham_defects: Vec<StrandClass>,
}

impl LocalExactness {
    /// Total cohomology per position, summed over strands.
    pub fn per_position(&self, positions: usize) -> Vec<usize> {
        let mut out = vec![0; positions];
        for c in &self.classes {
            out[c.position] += c.dim;
        }
        out
    }
}

/// Cohomology of every strand h = 0..=max_h of the extended complex on
/// polynomial forms, plus the same sweep for the de Rham rows.
pub fn local_exactness(shape: Shape, max_h: usize, exec: Execution) -> Result<LocalExactness> {
    let cal = shape.calibration()?;
    let layout = Layout::new(&cal)?;
    let m = cal.dim();
    // largest strands first so the pool is not left waiting on them
    let hs: Vec<usize> = (0..=max_h).rev().collect();
    let mut strands = try_map_vec(exec, hs, |h| -> Result<_> {
        let ec = strand_complex_with(&layout, h, exec)?;
        ec.complex.check_d_squared()?;
        let dims = crate::homology::cohomology_with(&ec.complex, exec).dims;
        Ok((h, ec.dims().iter().copied().max().unwrap_or(0), dims))
    })?;
    strands.sort_by_key(|s| s.0);
    let largest_space = strands.iter().map(|s| s.1).max().unwrap_or(0);
    let classes = strands
        .iter()
        .flat_map(|(h, _, dims)| {
            dims.iter().enumerate().filter(|(_, &d)| d > 0).map(|(r, &d)| StrandClass { h: *h, position: r, dim: d })
        })
        .collect();
    let de_rham_defects = map_vec(exec, (0..=max_h).collect(), |h| {
        let dims = cohomology(&de_rham_strand(m, h)).dims;
        dims.into_iter()
            .enumerate()
            .filter(|&(r, d)| d > 0 && (h > 0 || r > 0))
            .map(|(r, d)| StrandClass { h, position: r, dim: d })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    Ok(LocalExactness { shape, max_homogeneity: max_h, largest_space, classes, de_rham_defects })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covectors_are_reproducible_and_nonzero() {
        let a = covectors(6, 50, 7);
        assert_eq!(a, covectors(6, 50, 7));
        assert_ne!(a, covectors(6, 50, 8));
        assert!(a.iter().all(|x| x.iter().any(|&c| c != 0) && x.iter().all(|c| (-9..=9).contains(c))));
    }

    #[test]
    fn small_symbol_sweep() {
        let s = symbol_sweep(Shape::Symplectic { n: 2 }, 10, 1, Execution::Sequential).unwrap();
        assert!(s.passed());
        assert_eq!((s.exact_full, s.exact_half), (10, 10));
        assert_eq!(s.dims, vec![1, 4, 5, 5, 4, 1]);
        assert!(symbol_sweep(Shape::G2, 0, 1, Execution::Sequential).is_err());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let a = symbol_sweep(Shape::Symplectic { n: 3 }, 8, 3, Execution::Sequential).unwrap();
        let b = symbol_sweep(Shape::Symplectic { n: 3 }, 8, 3, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn small_local_sweep() {
        let l = local_exactness(Shape::Symplectic { n: 2 }, 3, Execution::Sequential).unwrap();
        assert_eq!(l.classes, vec![StrandClass { h: 0, position: 0, dim: 1 }, StrandClass { h: 2, position: 1, dim: 1 }]);
        assert!(l.de_rham_defects.is_empty());
    }

    #[test]
    fn shape_parsing() {
        assert_eq!(Shape::parse("g2", None).unwrap(), Shape::G2);
        assert_eq!(Shape::parse("symplectic", Some(3)).unwrap(), Shape::Symplectic { n: 3 });
        assert!(Shape::parse("symplectic", None).is_err());
        assert!(Shape::parse("spin7", None).is_err());
    }
}
