//! Number formatting shared by the report writers. Every float is written
//! with 17 significant digits so values round-trip exactly.

/// A float for CSV output; non-finite values print as `NaN`, `inf`, `-inf`.
pub fn csv_num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

/// A float as a JSON number, or `null` when it is not finite.
pub fn json_num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".to_string()
    }
}

/// A JSON string literal.
pub fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}
