//! Session configuration: deformation parameters, norm radii and output
//! format, assembled from (lowest to highest precedence) built-in
//! defaults, a config file, `QPADIC_*` environment variables and
//! command-line flags.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use qpadic::{Error, PadicScalar, QParams, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutputFormat::Text => write!(f, "text"),
            OutputFormat::Json => write!(f, "json"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SessionConfig {
    pub p: u64,
    /// Square root of q, as an exact rational string.
    pub u: String,
    pub e_e: i64,
    pub e_f: i64,
    pub e_k: i64,
    pub precision_floor_exp: i64,
    pub output: OutputFormat,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            p: 5,
            u: "6".into(),
            e_e: 1,
            e_f: 1,
            e_k: 0,
            precision_floor_exp: -40,
            output: OutputFormat::Text,
        }
    }
}

impl SessionConfig {
    pub fn qparams(&self) -> Result<QParams> {
        let u: PadicScalar = self.u.parse()?;
        QParams::new(self.p, u)
    }

    /// Hopf-compatible norms force R_K = 1.
    pub fn require_trivial_cartan_radius(&self) -> Result<()> {
        if self.e_k != 0 {
            return Err(Error::Config(
                "Hopf operations need eK = 0 (R_K = 1)".into(),
            ));
        }
        Ok(())
    }

    fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        let int = |v: &str| -> Result<i64> {
            v.trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad integer `{v}` for {key}")))
        };
        match key {
            "p" => {
                self.p = v_u64(value)?;
            }
            "u" => {
                let _: PadicScalar = value.trim().parse()?;
                self.u = value.trim().to_string();
            }
            "eE" => self.e_e = int(value)?,
            "eF" => self.e_f = int(value)?,
            "eK" => self.e_k = int(value)?,
            "precision_floor_exp" => self.precision_floor_exp = int(value)?,
            "output" => {
                self.output = match value.trim() {
                    "text" => OutputFormat::Text,
                    "json" => OutputFormat::Json,
                    other => {
                        return Err(Error::Config(format!(
                            "output must be `text` or `json`, got `{other}`"
                        )))
                    }
                }
            }
            other => return Err(Error::Config(format!("unknown config key `{other}`"))),
        }
        Ok(())
    }

    /// Key=value lines (with `#` comments) or a flat JSON object.
    pub fn load_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            let v: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| Error::Config(format!("bad JSON config: {e}")))?;
            let obj = v
                .as_object()
                .ok_or_else(|| Error::Config("JSON config must be an object".into()))?;
            for (k, val) in obj {
                let s = match val {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                self.apply(k, &s)?;
            }
        } else {
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = line
                    .split_once('=')
                    .ok_or_else(|| Error::Config(format!("expected key=value, got `{line}`")))?;
                self.apply(k.trim(), v)?;
            }
        }
        Ok(())
    }

    /// `QPADIC_P`, `QPADIC_U`, `QPADIC_EE`, `QPADIC_EF`, `QPADIC_EK`,
    /// `QPADIC_FLOOR`, `QPADIC_OUTPUT`.
    pub fn load_env(&mut self, env: &HashMap<String, String>) -> Result<()> {
        let pairs = [
            ("QPADIC_P", "p"),
            ("QPADIC_U", "u"),
            ("QPADIC_EE", "eE"),
            ("QPADIC_EF", "eF"),
            ("QPADIC_EK", "eK"),
            ("QPADIC_FLOOR", "precision_floor_exp"),
            ("QPADIC_OUTPUT", "output"),
        ];
        for (var, key) in pairs {
            if let Some(v) = env.get(var) {
                self.apply(key, v)?;
            }
        }
        Ok(())
    }
}

fn v_u64(v: &str) -> Result<u64> {
    v.trim()
        .parse()
        .map_err(|_| Error::Config(format!("bad prime `{v}`")))
}
