//! Distribution arguments: `uniform`, `point:<label>`, or a file with one
//! `label weight` pair per line. Blank lines and `#` comments are skipped;
//! labels not listed get weight zero.

use anyhow::{anyhow, bail, Context, Result};
use yao_core::MixedStrategy;

pub fn parse_distribution(spec: &str, labels: &[String]) -> Result<MixedStrategy> {
    if spec == "uniform" {
        return Ok(MixedStrategy::uniform(labels.to_vec())?);
    }
    if let Some(label) = spec.strip_prefix("point:") {
        return Ok(MixedStrategy::point_mass(labels.to_vec(), label)?);
    }
    let text = std::fs::read_to_string(spec).with_context(|| format!("reading distribution file {spec}"))?;
    parse_distribution_text(&text, labels).with_context(|| format!("in distribution file {spec}"))
}

pub fn parse_distribution_text(text: &str, labels: &[String]) -> Result<MixedStrategy> {
    let mut weights = vec![0.0; labels.len()];
    let mut seen = vec![false; labels.len()];
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(label), Some(weight), None) = (parts.next(), parts.next(), parts.next()) else {
            bail!("line {}: expected `label weight`", lineno + 1);
        };
        let idx = labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| anyhow!("line {}: unknown label `{label}`", lineno + 1))?;
        if std::mem::replace(&mut seen[idx], true) {
            bail!("line {}: label `{label}` listed twice", lineno + 1);
        }
        weights[idx] = weight
            .parse::<f64>()
            .map_err(|e| anyhow!("line {}: bad weight `{weight}`: {e}", lineno + 1))?;
    }
    Ok(MixedStrategy::new(labels.to_vec(), weights)?)
}
