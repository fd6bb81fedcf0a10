use serde_json::{json, Map, Value};

/// Exit codes shared by every subcommand.
pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;

/// What a command produced, printed as text or JSON.
#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub input: Value,
    pub result: Value,
    pub witness: Option<Map<String, Value>>,
    pub diagnostic: Option<String>,
    pub exit: u8,
}

impl Report {
    pub fn new(command: &str, input: impl Into<Value>, result: impl Into<Value>) -> Self {
        Report {
            command: command.into(),
            input: input.into(),
            result: result.into(),
            witness: None,
            diagnostic: None,
            exit: EXIT_OK,
        }
    }

    pub fn exit(mut self, code: u8) -> Self {
        self.exit = code;
        self
    }

    pub fn witness(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.witness
            .get_or_insert_with(Map::new)
            .insert(key.into(), value.into());
        self
    }

    pub fn diagnostic(mut self, msg: impl Into<String>) -> Self {
        self.diagnostic = Some(msg.into());
        self
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), json!(self.command));
        out.insert("input".into(), self.input.clone());
        out.insert("result".into(), self.result.clone());
        if let Some(w) = &self.witness {
            out.insert("witness".into(), Value::Object(w.clone()));
        }
        if let Some(d) = &self.diagnostic {
            out.insert("diagnostic".into(), json!(d));
        }
        Value::Object(out)
    }

    pub fn render_text(&self) -> String {
        let mut lines = vec![plain(&self.result)];
        if let Some(w) = &self.witness {
            for (k, v) in w {
                lines.push(format!("{k} = {}", plain(v)));
            }
        }
        if let Some(d) = &self.diagnostic {
            lines.push(format!("note: {d}"));
        }
        lines.join("\n")
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
