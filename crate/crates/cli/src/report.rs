//! Ordered key/value reports, printed as `key: value` lines or as JSON.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Default)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.put("command", command);
        r
    }

    pub fn put(&mut self, key: impl Into<String>, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.entries.push((key.into(), v));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    /// Strings are printed bare; everything else as compact JSON, which
    /// also parses as a TOML value.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            match v {
                Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
                other => out.push_str(&format!("{k}: {other}\n")),
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let map: serde_json::Map<String, Value> = self.entries.iter().cloned().collect();
        serde_json::to_string_pretty(&Value::Object(map)).expect("json")
    }
}

/// Branch paths as `root`, `0`, `0.1`, ...
pub fn path_name(path: &[usize]) -> String {
    if path.is_empty() {
        "root".into()
    } else {
        path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_lines() {
        let mut r = Report::new("extend");
        r.put("classes", 2);
        r.put("class.0.image.1", vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(r.to_text(), "command: extend\nclasses: 2\nclass.0.image.1: [[1,0],[0,1]]\n");
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["classes"], 2);
        assert_eq!(path_name(&[]), "root");
        assert_eq!(path_name(&[0, 1]), "0.1");
    }
}
