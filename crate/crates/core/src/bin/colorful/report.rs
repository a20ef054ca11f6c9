use serde_json::{Map, Value};

/// Ordered key=value report; rendered as text lines or one JSON object.
#[derive(Debug, Default, Clone)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.entries.push((key.to_string(), value.into()));
        self
    }

    pub fn prepend(&mut self, key: &str, value: impl Into<Value>) {
        self.entries.insert(0, (key.to_string(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let map: Map<String, Value> = self.entries.iter().cloned().collect();
            return format!("{}\n", Value::Object(map));
        }
        let mut out = String::new();
        for (k, v) in &self.entries {
            match v {
                Value::String(s) => out.push_str(&format!("{k}={s}\n")),
                other => out.push_str(&format!("{k}={other}\n")),
            }
        }
        out
    }
}
