//! TOML run configuration.
//!
//! ```toml
//! [network]
//! alpha = 4.0
//! lambda_l = 1e-3
//! lambda_e = 1e-4
//! n_e = 4
//! r_o = 1.0
//! p_t = 1.0
//! rho_db = 0.0      # or p_j = 1.0
//! eta_db = -10.0    # or eta = 0.1
//! p_c = 0.0         # optional
//!
//! [rates]
//! tau_t = 2.0       # or r_t / r_s in bits per channel use
//! tau_e = 1.0
//!
//! [constraints]
//! sigma = 0.3
//! epsilon = 0.02
//! omega_min = 0.001 # only for nsee-constrained
//! ```
//!
//! Missing keys are reported by their dotted path, e.g. `network.alpha`.

use std::path::Path;

use toml::{Table, Value};

use crate::error::{Error, Result};
use crate::params::{DuplexMode, NetworkInputs, NetworkParams, OutageConstraints, RateThresholds};

/// A parsed configuration file. Sections are decoded on demand so each
/// subcommand only requires what it uses.
#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    root: Table,
}

fn config_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Config(msg.into()))
}

/// Power ratio from decibels.
pub fn from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

struct Section<'a> {
    name: &'a str,
    table: Option<&'a Table>,
}

impl<'a> Section<'a> {
    fn path(&self, key: &str) -> String {
        format!("{}.{}", self.name, key)
    }

    fn raw(&self, key: &str) -> Option<&'a Value> {
        self.table.and_then(|t| t.get(key))
    }

    fn has(&self, key: &str) -> bool {
        self.raw(key).is_some()
    }

    fn opt_f64(&self, key: &str) -> Result<Option<f64>> {
        match self.raw(key) {
            None => Ok(None),
            Some(Value::Float(x)) => Ok(Some(*x)),
            Some(Value::Integer(i)) => Ok(Some(*i as f64)),
            Some(other) => config_err(format!("{} must be a number, got {}", self.path(key), other.type_str())),
        }
    }

    fn f64(&self, key: &str) -> Result<f64> {
        self.opt_f64(key)?.map_or_else(|| config_err(format!("missing key {}", self.path(key))), Ok)
    }

    fn opt_u64(&self, key: &str) -> Result<Option<u64>> {
        match self.raw(key) {
            None => Ok(None),
            Some(Value::Integer(i)) if *i >= 0 => Ok(Some(*i as u64)),
            Some(other) => config_err(format!("{} must be a non-negative integer, got {other}", self.path(key))),
        }
    }

    fn u64(&self, key: &str) -> Result<u64> {
        self.opt_u64(key)?.map_or_else(|| config_err(format!("missing key {}", self.path(key))), Ok)
    }

    fn opt_str(&self, key: &str) -> Result<Option<&'a str>> {
        match self.raw(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.as_str())),
            Some(other) => config_err(format!("{} must be a string, got {}", self.path(key), other.type_str())),
        }
    }

    /// A number or an array of numbers.
    fn grid(&self, key: &str) -> Result<Option<Vec<f64>>> {
        match self.raw(key) {
            None => Ok(None),
            Some(Value::Array(items)) => {
                let mut out = Vec::with_capacity(items.len());
                for item in items {
                    match item {
                        Value::Float(x) => out.push(*x),
                        Value::Integer(i) => out.push(*i as f64),
                        other => return config_err(format!("{} entries must be numbers, got {other}", self.path(key))),
                    }
                }
                if out.is_empty() {
                    return config_err(format!("{} must not be empty", self.path(key)));
                }
                Ok(Some(out))
            }
            Some(_) => Ok(Some(vec![self.f64(key)?])),
        }
    }

    /// Linear value from either `key` or `key_db`; exactly one may be set.
    fn linear_or_db(&self, key: &str) -> Result<Option<f64>> {
        let db_key = format!("{key}_db");
        match (self.opt_f64(key)?, self.opt_f64(&db_key)?) {
            (Some(_), Some(_)) => config_err(format!("set only one of {} and {}", self.path(key), self.path(&db_key))),
            (Some(x), None) => Ok(Some(x)),
            (None, Some(db)) => Ok(Some(from_db(db))),
            (None, None) => Ok(None),
        }
    }

    fn mode(&self, key: &str) -> Result<Option<DuplexMode>> {
        match self.opt_str(key)? {
            None => Ok(None),
            Some(s) => s.parse().map(Some).map_err(|_| Error::Config(format!("{} must be HD or FD, got {s:?}", self.path(key)))),
        }
    }
}

/// Grid-evaluation request for the `analytic` subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticSpec {
    pub quantities: Vec<String>,
    pub mode: DuplexMode,
    pub q: Vec<f64>,
}

/// Monte Carlo request for the `simulate` subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationSpec {
    /// `pco` or `pso`.
    pub measure: String,
    pub mode: DuplexMode,
    pub q: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub window_radius: Option<f64>,
    pub eavesdropper_radius: Option<f64>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let root: Table = text.parse().map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        Ok(RunConfig { root })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    fn section<'a>(&'a self, name: &'a str) -> Result<Section<'a>> {
        match self.root.get(name) {
            None => Ok(Section { name, table: None }),
            Some(Value::Table(t)) => Ok(Section { name, table: Some(t) }),
            Some(_) => config_err(format!("{name} must be a table")),
        }
    }

    pub fn has_section(&self, name: &str) -> bool {
        self.root.contains_key(name)
    }

    /// Optional `[run] name`, used for the output file stem.
    pub fn run_name(&self) -> Result<Option<String>> {
        Ok(self.section("run")?.opt_str("name")?.map(str::to_owned))
    }

    pub fn network(&self) -> Result<NetworkParams> {
        let s = self.section("network")?;
        let alpha = s.f64("alpha")?;
        let lambda_l = s.f64("lambda_l")?;
        let lambda_e = s.f64("lambda_e")?;
        let n_e = s.u64("n_e")?;
        let r_o = s.f64("r_o")?;
        let p_t = s.f64("p_t")?;
        let p_j = match (s.opt_f64("p_j")?, s.opt_f64("rho_db")?) {
            (Some(_), Some(_)) => return config_err("set only one of network.p_j and network.rho_db"),
            (Some(p), None) => p,
            (None, Some(db)) => p_t * from_db(db),
            (None, None) => return config_err("missing key network.p_j (or network.rho_db)"),
        };
        let eta = s
            .linear_or_db("eta")?
            .map_or_else(|| config_err("missing key network.eta (or network.eta_db)"), Ok)?;
        let p_c = s.opt_f64("p_c")?.unwrap_or(0.0);
        let n_e = u32::try_from(n_e).map_err(|_| Error::Config(format!("network.n_e too large: {n_e}")))?;
        NetworkParams::new(NetworkInputs { alpha, lambda_l, lambda_e, n_e, r_o, p_t, p_j, eta, p_c })
    }

    pub fn rates(&self) -> Result<RateThresholds> {
        let s = self.section("rates")?;
        if s.has("tau_t") || s.has("tau_e") {
            RateThresholds::from_thresholds(s.f64("tau_t")?, s.f64("tau_e")?)
        } else if s.has("r_t") || s.has("r_s") {
            RateThresholds::from_rates(s.f64("r_t")?, s.f64("r_s")?)
        } else {
            config_err("missing key rates.tau_t (or rates.r_t)")
        }
    }

    pub fn constraints(&self, params: &NetworkParams) -> Result<OutageConstraints> {
        let s = self.section("constraints")?;
        OutageConstraints::new(params, s.f64("sigma")?, s.f64("epsilon")?)
    }

    pub fn omega_min(&self) -> Result<f64> {
        self.section("constraints")?.f64("omega_min")
    }

    pub fn analytic(&self) -> Result<AnalyticSpec> {
        let s = self.section("analytic")?;
        let quantities = match s.raw("quantity") {
            None => vec!["all".to_owned()],
            Some(Value::String(q)) => vec![q.clone()],
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| match v {
                    Value::String(q) => Ok(q.clone()),
                    other => config_err(format!("analytic.quantity entries must be strings, got {other}")),
                })
                .collect::<Result<_>>()?,
            Some(other) => return config_err(format!("analytic.quantity must be a string, got {}", other.type_str())),
        };
        let mode = s.mode("mode")?.map_or_else(|| config_err("missing key analytic.mode"), Ok)?;
        let q = s.grid("q")?.map_or_else(|| config_err("missing key analytic.q"), Ok)?;
        Ok(AnalyticSpec { quantities, mode, q })
    }

    pub fn simulation(&self) -> Result<SimulationSpec> {
        let s = self.section("simulation")?;
        let measure = s.opt_str("measure")?.map_or_else(|| config_err("missing key simulation.measure"), Ok)?;
        if measure != "pco" && measure != "pso" {
            return config_err(format!("simulation.measure must be pco or pso, got {measure:?}"));
        }
        Ok(SimulationSpec {
            measure: measure.to_owned(),
            mode: s.mode("mode")?.map_or_else(|| config_err("missing key simulation.mode"), Ok)?,
            q: s.grid("q")?.map_or_else(|| config_err("missing key simulation.q"), Ok)?,
            trials: s.u64("trials")?,
            seed: s.u64("seed")?,
            window_radius: s.opt_f64("window_radius")?,
            eavesdropper_radius: s.opt_f64("eavesdropper_radius")?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const FULL: &str = r#"
[network]
alpha = 4
lambda_l = 1e-3
lambda_e = 1e-4
n_e = 4
r_o = 1.0
p_t = 1.0
rho_db = 10.0
eta_db = -10.0

[rates]
r_t = 2.0
r_s = 1.0

[constraints]
sigma = 0.3
epsilon = 0.02
omega_min = 0.001

[analytic]
quantity = ["pco_exact", "pco_upper"]
mode = "FD"
q = [0.0, 0.5, 1]

[simulation]
measure = "pco"
mode = "hd"
q = 0.5
trials = 1000
seed = 7
"#;

    #[test]
    fn full_config_round_trip() {
        let cfg = RunConfig::parse(FULL).unwrap();
        let p = cfg.network().unwrap();
        assert_relative_eq!(p.rho(), 10.0, max_relative = 1e-12);
        assert_relative_eq!(p.eta(), 0.1, max_relative = 1e-12);
        assert_eq!(p.p_c(), 0.0);
        let r = cfg.rates().unwrap();
        assert_eq!((r.tau_t(), r.tau_e()), (3.0, 1.0));
        assert!(cfg.constraints(&p).unwrap().is_feasible());
        assert_eq!(cfg.omega_min().unwrap(), 0.001);
        let a = cfg.analytic().unwrap();
        assert_eq!(a.q, vec![0.0, 0.5, 1.0]);
        assert_eq!(a.mode, DuplexMode::Fd);
        let s = cfg.simulation().unwrap();
        assert_eq!((s.mode, s.q.clone(), s.trials, s.seed), (DuplexMode::Hd, vec![0.5], 1000, 7));
    }

    #[test]
    fn empty_config_names_first_missing_field() {
        let err = RunConfig::parse("").unwrap().network().unwrap_err();
        assert!(matches!(&err, Error::Config(m) if m.contains("network.alpha")), "{err}");
        let err = RunConfig::parse("[network]\nalpha = 4\n").unwrap().network().unwrap_err();
        assert!(err.to_string().contains("network.lambda_l"));
    }

    #[test]
    fn conflicting_and_mistyped_keys() {
        let both = FULL.replace("eta_db = -10.0", "eta_db = -10.0\neta = 0.1");
        assert!(RunConfig::parse(&both).unwrap().network().is_err());
        let bad = FULL.replace("alpha = 4", "alpha = \"four\"");
        assert!(RunConfig::parse(&bad).unwrap().network().unwrap_err().to_string().contains("network.alpha"));
        assert!(matches!(RunConfig::parse("[network").unwrap_err(), Error::Config(_)));
        let domain = FULL.replace("alpha = 4", "alpha = 2");
        assert!(matches!(RunConfig::parse(&domain).unwrap().network().unwrap_err(), Error::Domain(_)));
    }
}
