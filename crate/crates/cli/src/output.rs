//! Line-oriented `key: value` output, or a single JSON object.

use serde_json::{Map, Value};

#[derive(Default)]
pub struct Output {
    fields: Vec<(String, Value)>,
}

impl Output {
    pub fn new() -> Output {
        Output::default()
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Output {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let map: Map<String, Value> = self.fields.iter().cloned().collect();
            return format!("{}\n", Value::Object(map));
        }
        let mut s = String::new();
        for (k, v) in &self.fields {
            let v = match v {
                Value::String(t) => t.clone(),
                other => other.to_string(),
            };
            s.push_str(&format!("{k}: {v}\n"));
        }
        s
    }
}
