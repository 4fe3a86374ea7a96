//! Number-to-text policy shared by every emitter in the binary.

/// Shortest round-trip rendering of a float for CSV and report fields.
///
/// Rust's `Display` for `f64` already prints the shortest decimal string
/// that parses back to the identical bits, which is exactly the CSV
/// contract; the one exception is NaN, which `Display` capitalizes and
/// downstream CSV readers do not. Negative zero stays `-0` on purpose:
/// normalizing it would break bit-level round-tripping.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x}")
    }
}

/// Fixed-precision scientific rendering with 12 significant digits, for
/// the inspector outputs where aligned columns matter more than brevity.
pub fn sci12(x: f64) -> String {
    format!("{x:.11e}")
}
