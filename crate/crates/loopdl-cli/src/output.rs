use serde_json::{Map, Value};

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn is_table(v: &Value) -> bool {
    matches!(v, Value::Array(rows) if !rows.is_empty() && rows.iter().all(Value::is_object))
}

fn write_rows(rows: &[Map<String, Value>]) -> String {
    let mut header: Vec<String> = Vec::new();
    for r in rows {
        for k in r.keys() {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).unwrap();
    for r in rows {
        w.write_record(header.iter().map(|k| r.get(k).map(cell).unwrap_or_default())).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

/// CSV view of a report: the first list of records if there is one,
/// otherwise a single row of the top-level fields. The config echo is dropped.
pub fn csv(report: &Value) -> String {
    let mut body = report.clone();
    if let Value::Object(m) = &mut body {
        m.shift_remove("config");
    }
    let rows: Vec<Map<String, Value>> = match &body {
        Value::Array(_) if is_table(&body) => body.as_array().unwrap().iter().map(|r| r.as_object().unwrap().clone()).collect(),
        Value::Object(m) => match m.values().find(|v| is_table(v)) {
            Some(t) => t.as_array().unwrap().iter().map(|r| r.as_object().unwrap().clone()).collect(),
            None => vec![m.clone()],
        },
        other => vec![Map::from_iter([("value".to_string(), other.clone())])],
    };
    write_rows(&rows)
}
