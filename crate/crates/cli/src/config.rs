//! Run configuration: defaults, then an optional `key = value` file with `[section]`
//! headers, then command-line flags.
//!
//! ```text
//! [field]
//! p = 3
//! k = 2
//! ext_modulus = 2,2,1
//! element_order = natural        # natural | generator | 0,1,2,...
//! [budget]
//! max_enum = 16777216
//! node_limit = 1000000
//! [numeric]
//! tolerance = 1e-9
//! [cache]
//! dir = /tmp/ffdisc
//! [output]
//! format = json                  # csv | json
//! ```

use std::path::PathBuf;

use ffdisc::field::ElementOrder;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub p: Option<u32>,
    pub k: Option<u32>,
    pub ext_modulus: Option<Vec<u32>>,
    pub element_order: ElementOrder,
    pub max_enum: u64,
    pub node_limit: u64,
    pub tolerance: f64,
    pub cache_dir: Option<PathBuf>,
    pub format: Option<Format>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            p: None,
            k: None,
            ext_modulus: None,
            element_order: ElementOrder::Natural,
            max_enum: 1 << 24,
            node_limit: 1_000_000,
            tolerance: 1e-9,
            cache_dir: None,
            format: None,
        }
    }
}

fn parse_list(v: &str) -> Result<Vec<u32>, String> {
    v.split(',').map(|x| x.trim().parse::<u32>().map_err(|_| format!("bad list entry {x:?}"))).collect()
}

pub fn parse_order(v: &str) -> Result<ElementOrder, String> {
    match v.trim() {
        "natural" => Ok(ElementOrder::Natural),
        "generator" => Ok(ElementOrder::Generator),
        other => parse_list(other).map(ElementOrder::Explicit),
    }
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, String> {
    v.parse().map_err(|_| format!("bad value for {key}: {v:?}"))
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<RunConfig, String> {
        let mut cfg = RunConfig::default();
        let mut section = String::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                section = name.trim().to_string();
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| format!("line {}: expected key = value", i + 1))?;
            let (k, v) = (k.trim(), v.trim());
            match (section.as_str(), k) {
                ("field", "p") => cfg.p = Some(num(k, v)?),
                ("field", "k") => cfg.k = Some(num(k, v)?),
                ("field", "ext_modulus") => cfg.ext_modulus = Some(parse_list(v)?),
                ("field", "element_order") => cfg.element_order = parse_order(v)?,
                ("budget", "max_enum") => cfg.max_enum = num(k, v)?,
                ("budget", "node_limit") => cfg.node_limit = num(k, v)?,
                ("numeric", "tolerance") => cfg.tolerance = num(k, v)?,
                ("cache", "dir") => cfg.cache_dir = Some(PathBuf::from(v)),
                ("output", "format") => {
                    cfg.format = Some(match v {
                        "csv" => Format::Csv,
                        "json" => Format::Json,
                        _ => return Err(format!("line {}: format must be csv or json", i + 1)),
                    })
                }
                _ => return Err(format!("line {}: unknown key {k} in section [{section}]", i + 1)),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.max_enum == 0 || self.node_limit == 0 {
            return Err("budgets must be positive".into());
        }
        if !(1e-12..=1e-6).contains(&self.tolerance) {
            return Err(format!("tolerance {} outside [1e-12, 1e-6]", self.tolerance));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sections_and_defaults() {
        let cfg = RunConfig::parse("[field]\np = 3\nk = 2 # F_9\n[budget]\nnode_limit=10\n[output]\nformat = csv\n").unwrap();
        assert_eq!((cfg.p, cfg.k, cfg.node_limit, cfg.format), (Some(3), Some(2), 10, Some(Format::Csv)));
        assert_eq!(cfg.max_enum, 1 << 24);
        assert_eq!(RunConfig::parse("").unwrap(), RunConfig::default());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunConfig::parse("p = 3").is_err());
        assert!(RunConfig::parse("[numeric]\ntolerance = 1e-3").is_err());
        assert!(RunConfig::parse("[budget]\nmax_enum = 0").is_err());
        assert!(RunConfig::parse("[field]\ncolour = red").is_err());
    }
}
