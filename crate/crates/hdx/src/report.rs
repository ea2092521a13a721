//! The JSON envelope shared by every command.
//!
//! Object keys are sorted (serde_json's default map), floats are printed by
//! the shortest round-trip rule, and wall time only appears on request, so
//! equal inputs give byte-identical output.

use hdx_core::Rational;
use serde_json::{json, Value};

pub const TOOL: &str = "hdx";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub struct Report {
    pub command: String,
    pub params: Value,
    pub caps: Value,
    pub seed: u64,
    pub result: Value,
    pub elapsed_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str, params: Value, caps: Value, seed: u64, result: Value) -> Self {
        Report { command: command.to_owned(), params, caps, seed, result, elapsed_ms: None }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "tool": TOOL,
            "version": VERSION,
            "command": self.command,
            "params": self.params,
            "caps": self.caps,
            "seed": self.seed,
            "result": self.result,
        });
        if let Some(ms) = self.elapsed_ms {
            v["elapsed_ms"] = json!(ms);
        }
        v
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

/// Exact rationals as `"a/b"` strings (or `"a"` for integers).
pub fn rational(r: Rational) -> Value {
    Value::String(r.to_string())
}

pub fn opt_rational(r: Option<Rational>) -> Value {
    r.map_or(Value::Null, rational)
}

/// Peak resident memory of this process in bytes (Linux only).
pub fn peak_rss_bytes() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_is_stable() {
        let r = Report::new("x", json!({"b": 1, "a": 0.1}), json!({}), 7, json!([1, 2]));
        let a = r.render();
        assert_eq!(a, r.render());
        assert!(a.find("\"a\"").unwrap() < a.find("\"b\"").unwrap());
        assert!(!a.contains("elapsed"));
        assert_eq!(rational(Rational::new(6, 4)), json!("3/2"));
    }
}
