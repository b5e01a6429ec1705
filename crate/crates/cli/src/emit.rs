//! Printers for maps, polynomials and factor words.

use clap::ValueEnum;
use tamelimits::autmap::{FactoredWord, GeneratorFactor, PolyMap};
use tamelimits::coeff::Ring;
use tamelimits::multipoly::{MultiPoly, Vars};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Latex,
}

pub fn emit<C: Ring>(map: &PolyMap<C>, format: Format) -> String {
    match format {
        Format::Text => map.to_string(),
        Format::Json => map.to_json().to_string(),
        Format::Latex => map.latex(),
    }
}

pub fn emit_poly<C: Ring>(p: &MultiPoly<C>, format: Format) -> String {
    match format {
        Format::Text => p.render(),
        Format::Json => p.to_json().to_string(),
        Format::Latex => p.latex(),
    }
}

fn render_row<C: Ring>(row: &[C]) -> String {
    let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
    format!("[{}]", cells.join(", "))
}

pub fn render_factor<C: Ring>(f: &GeneratorFactor<C>, vars: &Vars) -> String {
    match f {
        GeneratorFactor::Affine { matrix, translation } => {
            let rows: Vec<String> = matrix.iter().map(|r| render_row(r)).collect();
            format!("affine [{}] + {}", rows.join(", "), render_row(translation))
        }
        GeneratorFactor::Elementary { index, poly } => {
            let v = &vars[*index];
            format!("elementary {v} -> {v} + {}", poly.render())
        }
        GeneratorFactor::Triangular { .. } => format!("triangular {}", f.to_map(vars)),
    }
}

/// One factor per line, outermost first.
pub fn render_word<C: Ring>(word: &FactoredWord<C>) -> String {
    word.factors()
        .iter()
        .enumerate()
        .map(|(i, f)| format!("  {}: {}", i + 1, render_factor(f, word.vars())))
        .collect::<Vec<_>>()
        .join("\n")
}
