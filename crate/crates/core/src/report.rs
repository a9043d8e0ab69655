//! One-shot Markdown summary of the shipped examples.

use std::fmt::Write;

use crate::error::Result;
use crate::homology::LesReport;
use crate::models::{cpn, hopf4, kodaira_thurston, torus, torus7_g2};
use crate::par::Execution;
use crate::pipeline::{les_ring, les_structure};
use crate::structures::{standard_g2, standard_symplectic};
use crate::sweeps::{symbol_sweep, Shape};

/// Options for [`report`].
#[derive(Clone, Copy, Debug)]
pub struct ReportConfig {
    pub seed: u64,
    pub samples: usize,
    pub exec: Execution,
}

/// The Markdown report and whether every comparison in it matched.
#[derive(Clone, Debug)]
pub struct Report {
    pub markdown: String,
    pub all_match: bool,
}

fn les_section(out: &mut String, title: &str, rep: &LesReport) {
    let _ = writeln!(out, "### {title}\n");
    let _ = writeln!(out, "plain Betti: {:?}  ", rep.betti_plain);
    let _ = writeln!(out, "twisted Betti: {:?}  ", rep.betti_twisted);
    let _ = writeln!(out, "rank δ: {:?}\n", rep.delta_ranks);
    out.push_str(&rep.to_markdown());
    out.push('\n');
}

pub fn report(cfg: &ReportConfig) -> Result<Report> {
    let mut out = String::from("# Extended complexes on finite models\n\n");
    let mut all_match = true;

    out.push_str("## Column profiles\n\n");
    for (title, cal) in [("symplectic n=2", standard_symplectic(2)?), ("G2", standard_g2())] {
        let _ = writeln!(out, "### {title}\n");
        out.push_str(&cal.profile().to_markdown());
        out.push('\n');
    }

    out.push_str("## Complex projective space\n\n");
    for n in [2, 3] {
        let rep = les_ring(&cpn(n)?)?;
        all_match &= rep.all_match();
        les_section(&mut out, &format!("CP^{n}"), &rep);
    }

    out.push_str("## Lie-algebra models\n\n");
    let models = [
        ("T^4", torus(2)?),
        ("T^6", torus(3)?),
        ("S^1 × S^3 (Hopf)", hopf4()),
        ("Kodaira–Thurston", kodaira_thurston()),
        ("T^7 with φ", torus7_g2()),
    ];
    for (title, input) in models {
        let s = input.validate()?;
        let rep = les_structure(&s, cfg.exec)?;
        all_match &= rep.all_match();
        les_section(&mut out, title, &rep);
    }

    let _ = writeln!(out, "## Symbol sweep\n\nseed {}, {} samples per shape\n", cfg.seed, cfg.samples);
    out.push_str("| shape | dims | exact (full) | exact (kernel half past first) | failures |\n|---|---|---|---|---|\n");
    for shape in [Shape::Symplectic { n: 2 }, Shape::Symplectic { n: 3 }, Shape::G2] {
        let sw = symbol_sweep(shape, cfg.samples, cfg.seed, cfg.exec)?;
        all_match &= sw.passed();
        let _ = writeln!(
            out,
            "| {shape} | {:?} | {}/{} | {}/{} | {} |",
            sw.dims,
            sw.exact_full,
            sw.samples,
            sw.exact_half,
            sw.samples,
            sw.failures.len()
        );
    }
    out.push('\n');
    let _ = writeln!(out, "all comparisons match: {all_match}");
    Ok(Report { markdown: out, all_match })
}
