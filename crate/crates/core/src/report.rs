//! Serializable summary of a segmentation.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::splitter::{GapDiagnostic, Mode, Segmentation, SplitConfig};

/// One row of the per-gap table. An undefined inhibitory rate is
/// serialized as the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapRow {
    pub index: usize,
    pub gap: f64,
    pub former_gap: f64,
    pub mean_gap: f64,
    pub er: f64,
    #[serde(with = "ihr_text")]
    pub ihr: f64,
    pub score: f64,
    pub split: bool,
}

impl From<&GapDiagnostic> for GapRow {
    fn from(d: &GapDiagnostic) -> Self {
        Self {
            index: d.index,
            gap: d.gap,
            former_gap: d.former_gap,
            mean_gap: d.mean_gap,
            er: d.er,
            ihr: d.ihr,
            score: d.score,
            split: d.split,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitReport {
    pub mode: Mode,
    pub k: f64,
    pub iir: f64,
    pub gaps: Vec<GapRow>,
    pub segments: Vec<Vec<f64>>,
    pub boundaries: Vec<usize>,
}

impl SplitReport {
    pub fn new(segmentation: &Segmentation, config: &SplitConfig) -> Self {
        Self {
            mode: config.mode(),
            k: config.k(),
            iir: config.iir(),
            gaps: segmentation
                .diagnostics()
                .iter()
                .map(GapRow::from)
                .collect(),
            segments: segmentation
                .segment_values()
                .into_iter()
                .map(<[f64]>::to_vec)
                .collect(),
            boundaries: segmentation.boundaries().to_vec(),
        }
    }

    /// Human-readable rendering; numbers use 15 significant digits.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "mode: {}", self.mode);
        let _ = writeln!(out, "k: {}", sig15(self.k));
        let _ = writeln!(out, "iir: {}", sig15(self.iir));
        let _ = writeln!(out, "gaps:");
        let _ = writeln!(out, "  index\tgap\tformer_gap\ter\tihr\tscore\tsplit");
        for g in &self.gaps {
            let ihr = if g.ihr.is_finite() {
                sig15(g.ihr)
            } else {
                "inf".to_owned()
            };
            let _ = writeln!(
                out,
                "  {}\t{}\t{}\t{}\t{}\t{}\t{}",
                g.index,
                sig15(g.gap),
                sig15(g.former_gap),
                sig15(g.er),
                ihr,
                sig15(g.score),
                if g.split { "yes" } else { "no" }
            );
        }
        let boundaries: Vec<String> = self.boundaries.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "boundaries: [{}]", boundaries.join(", "));
        let _ = writeln!(out, "segments: {}", self.segments.len());
        for (i, seg) in self.segments.iter().enumerate() {
            let values: Vec<String> = seg.iter().map(|&v| sig15(v)).collect();
            let _ = writeln!(out, "  {}: {}", i + 1, values.join(" "));
        }
        out
    }
}

/// Formats with at most 15 significant digits, trimming trailing zeros.
pub fn sig15(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_owned()
        } else {
            s
        }
    } else {
        format!("{x:.14e}")
    }
}

mod ihr_text {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &f64, s: S) -> Result<S::Ok, S::Error> {
        if value.is_finite() {
            s.serialize_f64(*value)
        } else {
            s.serialize_str("inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Number(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Number(v) => Ok(v),
            Repr::Text(t) if t == "inf" => Ok(f64::INFINITY),
            Repr::Text(t) => Err(serde::de::Error::custom(format!(
                "expected a number or \"inf\", got {t:?}"
            ))),
        }
    }
}
