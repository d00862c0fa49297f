//! JSON result envelope and exact-value encodings.

use std::collections::BTreeMap;

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::exactnum::{parse_rat, Int, Rat};

/// Largest magnitude emitted as a JSON number; beyond it doubles lose digits.
pub const JSON_SAFE_INT: u64 = 1 << 53;

/// `{command, inputs{}, outputs{}, provenance, timing_ms}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub outputs: BTreeMap<String, Value>,
    pub provenance: String,
    pub timing_ms: u64,
}

impl Envelope {
    pub fn new(command: &str, provenance: &str) -> Self {
        Self {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            provenance: provenance.to_string(),
            timing_ms: 0,
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn output(&mut self, key: &str, value: Value) {
        self.outputs.insert(key.to_string(), value);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

/// Integer as a JSON number when |x| ≤ 2^53, otherwise a decimal string.
pub fn int_value(x: &Int) -> Value {
    if x.abs() <= Int::from(JSON_SAFE_INT) {
        let v: i64 = x.try_into().expect("fits in i64");
        Value::from(v)
    } else {
        Value::String(x.to_string())
    }
}

/// Rational as a "num/den" string (den is 1 for integers).
pub fn rat_string(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn rat_value(x: &Rat) -> Value {
    Value::String(rat_string(x))
}

pub fn value_to_int(v: &Value) -> Option<Int> {
    match v {
        Value::Number(n) => n.as_i64().map(Int::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

pub fn value_to_rat(v: &Value) -> Option<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        _ => value_to_int(v).map(Rat::from_integer),
    }
}
