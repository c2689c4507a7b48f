//! Config files and result serialization.
//!
//! Reals are always written as `{:.16e}`: 17 significant digits in
//! scientific notation, which is locale-independent and round-trips every
//! `f64` exactly, so equal runs produce byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::experiments::{CellStatus, SensitivityTable, SweepResult};
use crate::metrics::MetricsRow;
use crate::model::{Link, Params};

pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Serde adapter writing an `f64` as a 17-significant-digit JSON number.
pub fn real17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if !x.is_finite() {
        return s.serialize_none();
    }
    let raw = RawValue::from_string(fmt_real(*x)).map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

/// Keys accepted in a config file; all optional.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ConfigFile {
    pub max_profiles: Option<usize>,
    pub max_network: Option<usize>,
    pub distortion: Option<f64>,
    pub max_change: Option<f64>,
    pub aff_radius: Option<f64>,
    pub people_dead: Option<usize>,
    pub steps: Option<usize>,
    pub seed: Option<u64>,
}

impl ConfigFile {
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config {
            path: path.to_owned(),
            message: e.message().to_owned(),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::parse(&text, path)
    }

    /// Overwrites the fields of `params` that this layer sets.
    pub fn apply(&self, params: &mut Params) {
        macro_rules! set {
            ($($f:ident),*) => { $(if let Some(v) = self.$f { params.$f = v; })* };
        }
        set!(max_profiles, max_network, distortion, max_change, aff_radius, people_dead, steps, seed);
    }
}

/// Defaults, then the optional config file, then command-line overrides;
/// the result must validate.
pub fn parse_config(path: Option<&Path>, overrides: &ConfigFile) -> Result<Params> {
    let mut params = Params::default();
    if let Some(path) = path {
        ConfigFile::load(path)?.apply(&mut params);
    }
    overrides.apply(&mut params);
    params.validate().map_err(Error::InvalidParams)?;
    Ok(params)
}

pub const TIMESERIES_HEADER: &str = "step,density,mean_net_size,clustering,mean_affinity,std_affinity,\
low_outliers,high_outliers,links_strongest,links_strong,links_medium,links_weak,links_weakest";

pub fn timeseries_csv(rows: &[MetricsRow]) -> String {
    let mut out = String::with_capacity(64 + rows.len() * 200);
    out.push_str(TIMESERIES_HEADER);
    out.push('\n');
    for r in rows {
        let _ = write!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.step,
            fmt_real(r.density),
            fmt_real(r.mean_net_size),
            fmt_real(r.clustering),
            fmt_real(r.mean_affinity),
            fmt_real(r.std_affinity),
            r.low_outliers,
            r.high_outliers
        );
        for c in r.tier_counts {
            let _ = write!(out, ",{c}");
        }
        out.push('\n');
    }
    out
}

pub fn edges_csv(edges: &[Link]) -> String {
    let mut out = String::from("source,target,tier\n");
    for e in edges {
        let _ = writeln!(out, "{},{},{}", e.source, e.target, e.tier);
    }
    out
}

#[derive(Serialize)]
pub struct RunReport<'a> {
    pub seed: u64,
    pub steps: usize,
    pub params: &'a Params,
    pub final_row: &'a MetricsRow,
}

pub fn summary_json(report: &RunReport<'_>) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("summary serializes");
    s.push('\n');
    s
}

/// Writes every `(file name, contents)` pair under `dir`, creating it if
/// needed. Contents go to temporary files first and are renamed into place
/// only once all of them are written, so a failure leaves no result files.
pub fn write_atomically(dir: &Path, files: &[(&str, &[u8])]) -> Result<Vec<PathBuf>> {
    let io_err = |path: &Path| {
        let path = path.to_owned();
        move |source| Error::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut staged = Vec::with_capacity(files.len());
    for (name, bytes) in files {
        let mut tmp = tempfile::Builder::new()
            .prefix(&format!(".{name}."))
            .tempfile_in(dir)
            .map_err(io_err(dir))?;
        tmp.write_all(bytes).map_err(io_err(tmp.path()))?;
        tmp.as_file().sync_all().map_err(io_err(tmp.path()))?;
        staged.push((tmp, dir.join(name)));
    }
    let mut written = Vec::with_capacity(staged.len());
    for (tmp, dest) in staged {
        tmp.persist(&dest).map_err(|e| Error::Io { path: dest.clone(), source: e.error })?;
        written.push(dest);
    }
    Ok(written)
}

pub const SWEEP_HEADER: &str = "param,value,reps,clustering_mean,clustering_std,std_affinity_mean,\
std_affinity_std,density_mean,density_std,mean_net_size_mean,mean_net_size_std";

pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = format!("{SWEEP_HEADER}\n");
    for row in &result.rows {
        let a = &row.aggregates;
        let _ = write!(out, "{},{},{}", result.param, fmt_real(row.value), result.reps);
        for agg in [a.clustering, a.std_affinity, a.density, a.mean_net_size] {
            let _ = write!(out, ",{},{}", fmt_real(agg.mean), fmt_real(agg.std));
        }
        out.push('\n');
    }
    out
}

pub const SENSITIVITY_HEADER: &str =
    "param,delta,base_value,new_value,output,base_output,new_output,coefficient,status";

pub fn sensitivity_csv(table: &SensitivityTable) -> String {
    let mut out = format!("{SENSITIVITY_HEADER}\n");
    for r in &table.rows {
        let (coefficient, status) = match r.status {
            CellStatus::Ok(s) => (fmt_real(s), "ok"),
            CellStatus::Undefined(why) => (String::new(), why.name()),
            CellStatus::Invalid => (String::new(), "invalid-param"),
        };
        let new_output = if r.new_output.is_finite() { fmt_real(r.new_output) } else { String::new() };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.param,
            fmt_real(r.delta),
            fmt_real(r.base_value),
            fmt_real(r.new_value),
            r.output.name(),
            fmt_real(r.base_output),
            new_output,
            coefficient,
            status
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_have_seventeen_digits() {
        assert_eq!(fmt_real(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt_real(0.0), "0.0000000000000000e0");
        let x = 0.1 + 0.2;
        assert_eq!(fmt_real(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn empty_config_gives_defaults() {
        let cfg = ConfigFile::parse("", Path::new("x.toml")).unwrap();
        assert_eq!(cfg, ConfigFile::default());
        let mut p = Params::default();
        cfg.apply(&mut p);
        assert_eq!(p, Params::default());
    }

    #[test]
    fn unknown_key_is_named() {
        let err = ConfigFile::parse("affinity-radius = 0.3\n", Path::new("x.toml")).unwrap_err();
        assert!(err.to_string().contains("affinity-radius"), "{err}");
    }

    #[test]
    fn bad_value_is_reported() {
        let err = ConfigFile::parse("max-network = \"many\"\n", Path::new("x.toml")).unwrap_err();
        assert!(matches!(err, Error::Config { .. }));
    }

    #[test]
    fn overrides_win_over_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.toml");
        fs::write(&path, "aff-radius = 0.3\nseed = 9\n").unwrap();
        let cli = ConfigFile { aff_radius: Some(0.1), ..Default::default() };
        let p = parse_config(Some(&path), &cli).unwrap();
        assert_eq!((p.aff_radius, p.seed), (0.1, 9));
        let p = parse_config(Some(&path), &ConfigFile::default()).unwrap();
        assert_eq!(p.aff_radius, 0.3);
    }

    #[test]
    fn invalid_result_is_rejected() {
        let cli = ConfigFile { max_network: Some(100), ..Default::default() };
        assert!(matches!(parse_config(None, &cli), Err(Error::InvalidParams(v)) if v[0].field == "max-network"));
    }

    #[test]
    fn atomic_write_places_all_files() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("nested/out");
        write_atomically(&out, &[("a.csv", b"x\n"), ("b.json", b"{}")]).unwrap();
        assert_eq!(fs::read(out.join("a.csv")).unwrap(), b"x\n");
        let names: Vec<_> = fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name()).collect();
        assert_eq!(names.len(), 2);
    }

    #[test]
    fn unwritable_destination_fails_cleanly() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("file");
        fs::write(&blocker, "").unwrap();
        assert!(write_atomically(&blocker.join("sub"), &[("a.csv", b"x")]).is_err());
    }
}
