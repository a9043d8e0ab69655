//! The two routes to H^r of the extended complex: directly from B^•, and
//! predicted from plain and twisted cohomology through the exact sequence.

use crate::builder::{build_extended_complex_with, ExtendedComplex, StructureData};
use crate::error::Result;
use crate::exterior::right_wedge_map;
use crate::homology::{
    cohomology, cohomology_with, cohomology_with_generators, connecting_maps, de_rham_complex, les_predict,
    mapping_cone, CochainComplex, CohomologyTable, LesReport,
};
use crate::models::RingModel;
use crate::par::Execution;
use crate::qlinalg::Matrix;
use crate::rational::Rational;

/// Direct cohomology of the built complex.
pub fn hj_direct(s: &StructureData, exec: Execution) -> Result<(ExtendedComplex, CohomologyTable)> {
    let ec = build_extended_complex_with(s, exec)?;
    let table = cohomology_with(&ec.complex, exec);
    Ok((ec, table))
}

/// Plain and weight-2 twisted complexes of the model.
pub fn plain_and_twisted(s: &StructureData) -> Result<(CochainComplex, CochainComplex)> {
    let plain = de_rham_complex(s.model(), s.alpha(), &Rational::zero())?;
    let twisted = de_rham_complex(s.model(), s.alpha(), &Rational::from_int(2))?;
    Ok((plain, twisted))
}

/// Prediction from the exact sequence, compared against the direct table.
pub fn les_structure(s: &StructureData, exec: Execution) -> Result<LesReport> {
    let cal = s.calibration();
    let (plain, twisted) = plain_and_twisted(s)?;
    let plain_table = cohomology_with_generators(&plain);
    let twisted_table = cohomology_with_generators(&twisted);
    let delta = connecting_maps(&plain, &plain_table, &twisted, &twisted_table, cal.form())?;
    let report = les_predict(cal.degree(), cal.positions(), &plain_table.dims, &twisted_table.dims, &delta)?;
    let (_, direct) = hj_direct(s, exec)?;
    Ok(report.compare(&direct.dims))
}

/// Cohomology of the mapping cone of ·∧F from the plain to the twisted
/// complex; a third route to the same numbers.
pub fn cone_structure(s: &StructureData) -> Result<CohomologyTable> {
    let cal = s.calibration();
    let (m, p) = (cal.dim(), cal.degree());
    let (plain, twisted) = plain_and_twisted(s)?;
    let chain = (0..=m)
        .map(|j| {
            if j + p > m {
                Ok(Matrix::zeros(0, plain.dims()[j]))
            } else {
                right_wedge_map(cal.form(), j)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let cone = mapping_cone(&plain, &twisted, &chain, p, cal.positions())?;
    cone.check_d_squared()?;
    Ok(cohomology(&cone))
}

/// Prediction for a ring model; the direct side is the mapping cone of the
/// cup product, which has no other realization without a form model.
pub fn les_ring(ring: &RingModel) -> Result<LesReport> {
    let p = ring.class_degree;
    let positions = ring.top() + p;
    let report = les_predict(p, positions, &ring.dims, &ring.dims, &ring.cup)?;
    let c = ring.complex();
    let cone = mapping_cone(&c, &c, &ring.cup, p, positions)?;
    cone.check_d_squared()?;
    Ok(report.compare(&cohomology(&cone).dims))
}
