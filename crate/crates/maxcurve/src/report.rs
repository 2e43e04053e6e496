use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Item {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
    /// Wall time of the computation behind the item, omitted under `--no-timings`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub params: Map<String, Value>,
    pub items: Vec<Item>,
    pub pass: bool,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Collects items. An item passes iff `expected == actual` as JSON values.
#[derive(Debug, Default)]
pub struct Recorder {
    items: Vec<Item>,
    timings: bool,
    flip: Option<String>,
}

impl Recorder {
    /// `flip` names an item whose expected value is perturbed before comparison,
    /// to exercise the failure path.
    pub fn new(timings: bool, flip: Option<String>) -> Self {
        Self {
            items: Vec::new(),
            timings,
            flip,
        }
    }

    /// Runs `f` and returns its value with the elapsed milliseconds.
    pub fn time<T>(&self, f: impl FnOnce() -> T) -> (T, u64) {
        let t = Instant::now();
        let v = f();
        (v, t.elapsed().as_millis() as u64)
    }

    pub fn check(&mut self, name: impl Into<String>, expected: impl Serialize, actual: impl Serialize, ms: u64) {
        let name = name.into();
        let mut expected = serde_json::to_value(expected).expect("serializable");
        let actual = serde_json::to_value(actual).expect("serializable");
        if self.flip.as_deref() == Some(name.as_str()) {
            expected = flipped(expected);
        }
        self.items.push(Item {
            pass: expected == actual,
            name,
            expected,
            actual,
            ms: self.timings.then_some(ms),
        });
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn finish(self, command: &str, params: Map<String, Value>) -> RunReport {
        RunReport {
            command: command.to_owned(),
            params,
            pass: self.items.iter().all(|i| i.pass),
            items: self.items,
        }
    }
}

fn flipped(v: Value) -> Value {
    match v {
        Value::Bool(b) => Value::Bool(!b),
        Value::Number(n) => match n.as_u64() {
            Some(k) => Value::from(k.wrapping_add(1)),
            None => Value::Null,
        },
        Value::Null => Value::Bool(false),
        _ => Value::Null,
    }
}
