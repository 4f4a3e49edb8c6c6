//! Machine-readable run records and their CSV views.

use std::time::Duration;

use serde::{Deserialize, Serialize};
use vcdim_core::estimator::DRecord;
use vcdim_core::{DomainSampler, SamplerKind, VcEstimate, VcValue};

pub const SAMPLER_NOTE: &str = "Estimates are relative to the sampling distribution: if sets of \
the next size are shattered only with tiny probability under it, the VC dimension is \
underestimated.";

/// Seconds, rounded to whole microseconds.
pub fn seconds(d: Duration) -> f64 {
    d.as_micros() as f64 / 1e6
}

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfiniteTag {
    #[serde(rename = "infinite")]
    Infinite,
}

/// A VC value: a number, or the string `"infinite"`.
#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(untagged)]
pub enum VcField {
    Finite(usize),
    Infinite(InfiniteTag),
}

impl From<VcValue> for VcField {
    fn from(v: VcValue) -> Self {
        match v {
            VcValue::Finite(v) => VcField::Finite(v),
            VcValue::Infinite => VcField::Infinite(InfiniteTag::Infinite),
        }
    }
}

impl std::fmt::Display for VcField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VcField::Finite(v) => write!(f, "{v}"),
            VcField::Infinite(_) => f.write_str("infinite"),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SamplerEcho {
    Box {
        lo: Vec<f64>,
        hi: Vec<f64>,
        seed: u64,
    },
    Uniform {
        cardinality: usize,
        seed: u64,
    },
    Exhaustive {
        cardinality: usize,
        cap: u64,
    },
}

impl From<&DomainSampler> for SamplerEcho {
    fn from(s: &DomainSampler) -> Self {
        match &s.kind {
            SamplerKind::UniformBox { lo, hi } => SamplerEcho::Box {
                lo: lo.clone(),
                hi: hi.clone(),
                seed: s.seed,
            },
            SamplerKind::FiniteUniform { cardinality } => SamplerEcho::Uniform {
                cardinality: *cardinality,
                seed: s.seed,
            },
            SamplerKind::Exhaustive { cardinality, cap } => SamplerEcho::Exhaustive {
                cardinality: *cardinality,
                cap: *cap,
            },
        }
    }
}

/// The flags that shape a run's results. Worker counts are left out: they
/// never change a result.
#[derive(Serialize, Deserialize, Clone, Debug, Default, PartialEq)]
pub struct ConfigEcho {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complement_symmetry: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampler: Option<SamplerEcho>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub early_break: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi: Option<f64>,
}

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq)]
pub struct CertificateEcho {
    pub epsilon: f64,
    pub delta: f64,
    pub m: u64,
}

/// Per-size statistics.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct Row {
    pub d: usize,
    /// Draws scheduled at this size.
    pub m: u64,
    pub z_m: u64,
    pub unresolved: u64,
    pub lower_bound: bool,
    pub first_shattered: Option<u64>,
    pub short_circuit: bool,
    pub elapsed_s: f64,
}

impl From<&DRecord> for Row {
    fn from(r: &DRecord) -> Self {
        Row {
            d: r.d,
            m: r.draws,
            z_m: r.unshattered,
            unresolved: r.unresolved,
            lower_bound: r.lower_bound,
            first_shattered: r.first_shattered,
            short_circuit: r.short_circuit,
            elapsed_s: seconds(r.elapsed),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct EstimateEcho {
    pub vc: VcField,
    pub certificate: CertificateEcho,
    pub rows: Vec<Row>,
    pub terminated_at_dmax: bool,
    /// Unresolved share of the draws at the stopping size.
    pub unresolved_rate: Option<f64>,
}

impl From<&VcEstimate> for EstimateEcho {
    fn from(e: &VcEstimate) -> Self {
        EstimateEcho {
            vc: e.vc.into(),
            certificate: CertificateEcho {
                epsilon: e.certificate.epsilon,
                delta: e.certificate.delta,
                m: e.certificate.sample_size,
            },
            rows: e.per_d.iter().map(Row::from).collect(),
            terminated_at_dmax: e.terminated_at_dmax,
            unresolved_rate: e
                .stopping_row()
                .filter(|r| r.draws > 0)
                .map(|r| r.unresolved as f64 / r.draws as f64),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct ShatterEcho {
    pub points: Vec<String>,
    pub shattered: bool,
    pub witness: Option<String>,
    pub erm_calls: u64,
    pub unresolved: bool,
    pub elapsed_s: f64,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct ExactEcho {
    pub vc: usize,
    pub rows: usize,
    pub cols: usize,
    pub distinct_rows: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_size: Option<usize>,
    /// First shattered subset of `witness_size` columns, if one exists.
    #[serde(default)]
    pub witness: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub vc: VcField,
    pub elapsed_s: f64,
    pub estimate: EstimateEcho,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub config: ConfigEcho,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shatter: Option<ShatterEcho>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub estimate: Option<EstimateEcho>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactEcho>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bench: Vec<BenchRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Report {
    pub fn new(command: &str, config: ConfigEcho) -> Self {
        Report {
            command: command.into(),
            config,
            shatter: None,
            estimate: None,
            exact: None,
            bench: Vec::new(),
            warnings: Vec::new(),
            note: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Copy with every wall-clock field zeroed.
    pub fn without_timing(&self) -> Report {
        fn clear(e: &mut EstimateEcho) {
            for r in &mut e.rows {
                r.elapsed_s = 0.0;
            }
        }
        let mut r = self.clone();
        if let Some(s) = &mut r.shatter {
            s.elapsed_s = 0.0;
        }
        if let Some(e) = &mut r.estimate {
            clear(e);
        }
        for b in &mut r.bench {
            b.elapsed_s = 0.0;
            clear(&mut b.estimate);
        }
        r
    }
}

fn write_csv(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
}

/// `d,m,z_m,unresolved,elapsed_s`
pub fn per_d_csv(rows: &[Row]) -> String {
    write_csv(
        &["d", "m", "z_m", "unresolved", "elapsed_s"],
        rows.iter().map(|r| {
            vec![
                r.d.to_string(),
                r.m.to_string(),
                r.z_m.to_string(),
                r.unresolved.to_string(),
                format!("{:.6}", r.elapsed_s),
            ]
        }),
    )
}

/// `n,vc,elapsed_s`
pub fn bench_csv(rows: &[BenchRow]) -> String {
    write_csv(
        &["n", "vc", "elapsed_s"],
        rows.iter().map(|r| {
            vec![
                r.n.to_string(),
                r.vc.to_string(),
                format!("{:.6}", r.elapsed_s),
            ]
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vc_field_forms() {
        assert_eq!(serde_json::to_string(&VcField::Finite(3)).unwrap(), "3");
        let inf = VcField::from(VcValue::Infinite);
        assert_eq!(serde_json::to_string(&inf).unwrap(), "\"infinite\"");
        assert_eq!(
            serde_json::from_str::<VcField>("\"infinite\"").unwrap(),
            inf
        );
        assert!(serde_json::from_str::<VcField>("\"many\"").is_err());
    }

    #[test]
    fn seconds_are_whole_microseconds() {
        assert_eq!(seconds(Duration::from_nanos(1_234_567_890)), 1.234567);
    }

    #[test]
    fn csv_layout() {
        let rows = vec![Row {
            d: 2,
            m: 738,
            z_m: 0,
            unresolved: 0,
            lower_bound: true,
            first_shattered: Some(0),
            short_circuit: false,
            elapsed_s: 0.5,
        }];
        assert_eq!(
            per_d_csv(&rows),
            "d,m,z_m,unresolved,elapsed_s\n2,738,0,0,0.500000\n"
        );
    }
}
