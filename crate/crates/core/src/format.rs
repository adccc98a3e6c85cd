//! Plain-text number formatting shared by the CSV writers.

/// Formats with 17 significant digits, enough to round-trip any `f64`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Joins already formatted fields into one CSV line (no trailing newline).
pub fn row(fields: &[String]) -> String {
    fields.join(",")
}
