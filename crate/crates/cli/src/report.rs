//! The JSON report every subcommand prints.

use mdrg::Certificate;
use serde::Serialize;
use serde_json::{json, Map, Value};

pub struct Report {
    command: &'static str,
    inputs: Map<String, Value>,
    certificates: Vec<Certificate>,
    informational: Vec<Certificate>,
    fields: Map<String, Value>,
    failed: bool,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            inputs: Map::new(),
            certificates: Vec::new(),
            informational: Vec::new(),
            fields: Map::new(),
            failed: false,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.inputs.insert(key.into(), json!(value));
        self
    }

    /// Adds a certificate that decides the exit code.
    pub fn certificate(&mut self, cert: Certificate) -> &mut Self {
        self.failed |= !cert.passed();
        self.certificates.push(cert);
        self
    }

    /// Adds a certificate reported for reference only.
    pub fn informational(&mut self, cert: Certificate) -> &mut Self {
        self.informational.push(cert);
        self
    }

    pub fn field(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.fields.insert(key.into(), json!(value));
        self
    }

    pub fn fail(&mut self) -> &mut Self {
        self.failed = true;
        self
    }

    pub fn passed(&self) -> bool {
        !self.failed
    }

    pub fn to_json(&self) -> Value {
        let mut out = self.fields.clone();
        out.insert("command".into(), json!(self.command));
        out.insert("inputs".into(), Value::Object(self.inputs.clone()));
        out.insert("certificates".into(), json!(self.certificates));
        if !self.informational.is_empty() {
            out.insert("informational".into(), json!(self.informational));
        }
        out.insert("verdict".into(), json!(if self.failed { "fail" } else { "pass" }));
        out.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        Value::Object(out)
    }
}
