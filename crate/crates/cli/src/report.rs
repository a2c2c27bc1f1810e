use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Machine-readable outcome of one command. Contains no timings, so equal
/// inputs give byte-identical reports.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub report_version: u32,
    pub command: String,
    pub inputs_digest: String,
    pub outputs: Vec<String>,
    pub checks: Vec<Check>,
    pub result: Value,
}

impl RunReport {
    pub fn new(command: &str, inputs: &Inputs) -> RunReport {
        RunReport {
            report_version: REPORT_VERSION,
            command: command.to_owned(),
            inputs_digest: inputs.digest(),
            outputs: Vec::new(),
            checks: Vec::new(),
            result: Value::Null,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Everything a command read: its parameters and the bytes of its input
/// files, hashed in the order they were added.
#[derive(Default)]
pub struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    pub fn param(&mut self, name: &str, value: impl std::fmt::Display) {
        self.hasher.update(format!("{name}={value}\n").as_bytes());
    }

    pub fn file(&mut self, label: &str, bytes: &[u8]) {
        self.hasher.update(format!("file:{label}:{}\n", bytes.len()).as_bytes());
        self.hasher.update(bytes);
    }

    fn digest(&self) -> String {
        hex::encode(self.hasher.clone().finalize())
    }
}
