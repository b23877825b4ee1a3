use serde_json::{json, Map, Value};

use sandpile_core::AbelianGroup;

/// `{"invariant_factors": [...], "order": "..."}` with every number a string.
pub fn group(g: &AbelianGroup) -> Value {
    json!({
        "invariant_factors": g.invariant_factors().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "order": g.order().to_string(),
    })
}

/// Outcome of one subcommand: the JSON document and whether every
/// comparison it made agreed.
pub struct Report {
    pub fields: Map<String, Value>,
    pub agrees: bool,
}

impl Report {
    pub fn new(command: &str, method: &str, parameters: Value) -> Self {
        let mut fields = Map::new();
        fields.insert("command".into(), command.into());
        fields.insert("method".into(), method.into());
        fields.insert("parameters".into(), parameters);
        Self {
            fields,
            agrees: true,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.into(), value.into());
    }
}
